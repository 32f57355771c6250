import json
from typing import Any


def get_without_null_values(record: Any) -> Any:
    if isinstance(record, dict):
        return {
            key: get_without_null_values(value)
            for key, value in record.items()
            if value is not None
        }
    if isinstance(record, (list, tuple)):
        return [get_without_null_values(value) for value in record if value is not None]
    return record


def get_canonical_json(record: Any) -> str:
    # sorted keys and a fixed indent keep reports byte-stable
    return json.dumps(
        get_without_null_values(record),
        sort_keys=True,
        indent=2,
        ensure_ascii=False
    ) + '\n'
