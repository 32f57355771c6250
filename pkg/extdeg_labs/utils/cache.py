import logging
from collections import OrderedDict
from threading import Lock
from typing import Callable, Generic, Hashable, Optional, TypeVar


LOGGER = logging.getLogger(__name__)


K = TypeVar('K', bound=Hashable)
T = TypeVar('T')


class InMemoryKeyedObjectCache(Generic[K, T]):
    """
    Least-recently-used keyed cache. The load function runs outside the lock,
    the first stored value for a key wins unless a reload was requested.
    """

    def __init__(self, max_size: Optional[int] = None) -> None:
        self._lock = Lock()
        self._max_size = max_size
        self._value_by_key: 'OrderedDict[K, T]' = OrderedDict()

    def __len__(self) -> int:
        return len(self._value_by_key)

    def _evict_least_recently_used(self):
        if self._max_size is None:
            return
        while len(self._value_by_key) > self._max_size:
            evicted_key, _ = self._value_by_key.popitem(last=False)
            LOGGER.debug('evicted cache entry: %r', evicted_key)

    def get_or_load(self, key: K, load_fn: Callable[[], T], reload: bool = False) -> T:
        with self._lock:
            result = self._value_by_key.get(key)
            if not reload and result is not None:
                self._value_by_key.move_to_end(key)
                return result
        result = load_fn()
        assert result is not None
        with self._lock:
            existing = self._value_by_key.get(key)
            if not reload and existing is not None:
                self._value_by_key.move_to_end(key)
                return existing
            self._value_by_key[key] = result
            self._value_by_key.move_to_end(key)
            self._evict_least_recently_used()
        return result

    def clear(self):
        with self._lock:
            LOGGER.debug('clearing cache with %d entries', len(self._value_by_key))
            self._value_by_key.clear()
