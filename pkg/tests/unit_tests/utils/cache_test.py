from unittest.mock import MagicMock

from extdeg_labs.utils.cache import InMemoryKeyedObjectCache


class TestInMemoryKeyedObjectCache:
    def test_should_get_loaded_value(self):
        cache = InMemoryKeyedObjectCache[str, str]()
        result = cache.get_or_load('key_1', load_fn=lambda: 'value_1')
        assert result == 'value_1'

    def test_should_not_call_load_function_multiple_times(self):
        cache = InMemoryKeyedObjectCache[str, str]()
        load_fn = MagicMock(name='load_fn')
        load_fn.return_value = 'value_1'
        cache.get_or_load('key_1', load_fn=load_fn)
        result = cache.get_or_load('key_1', load_fn=load_fn)
        assert result == 'value_1'
        assert load_fn.call_count == 1

    def test_should_load_separately_per_key(self):
        cache = InMemoryKeyedObjectCache[str, str]()
        load_fn = MagicMock(name='load_fn')
        load_fn.side_effect = ['value_1', 'value_2']
        cache.get_or_load('key_1', load_fn=load_fn)
        result = cache.get_or_load('key_2', load_fn=load_fn)
        assert result == 'value_2'
        assert len(cache) == 2

    def test_should_reload_if_requested(self):
        cache = InMemoryKeyedObjectCache[str, str]()
        load_fn = MagicMock(name='load_fn')
        load_fn.side_effect = ['value_1', 'value_2']
        cache.get_or_load('key_1', load_fn=load_fn)
        result = cache.get_or_load('key_1', load_fn=load_fn, reload=True)
        assert result == 'value_2'
        assert load_fn.call_count == 2

    def test_should_call_load_function_again_after_clear(self):
        cache = InMemoryKeyedObjectCache[str, str]()
        load_fn = MagicMock(name='load_fn')
        load_fn.side_effect = ['value_1', 'value_2']
        cache.get_or_load('key_1', load_fn=load_fn)
        cache.clear()
        assert len(cache) == 0
        assert cache.get_or_load('key_1', load_fn=load_fn) == 'value_2'

    def test_should_evict_least_recently_used_entry(self):
        cache = InMemoryKeyedObjectCache[str, str](max_size=2)
        cache.get_or_load('key_1', load_fn=lambda: 'value_1')
        cache.get_or_load('key_2', load_fn=lambda: 'value_2')
        cache.get_or_load('key_1', load_fn=lambda: 'unused')
        cache.get_or_load('key_3', load_fn=lambda: 'value_3')
        assert len(cache) == 2
        assert cache.get_or_load('key_1', load_fn=lambda: 'reloaded') == 'value_1'
        assert cache.get_or_load('key_2', load_fn=lambda: 'reloaded') == 'reloaded'

    def test_should_keep_first_value_stored_while_loading(self):
        cache = InMemoryKeyedObjectCache[str, str]()

        def load_fn() -> str:
            cache.get_or_load('key_1', load_fn=lambda: 'value_1')
            return 'value_2'

        assert cache.get_or_load('key_1', load_fn=load_fn) == 'value_1'
