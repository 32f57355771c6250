from typing import List

from extdeg_labs.linalg.field import FieldSpec, Scalar


def parse_scalar_csv(text: str, field: FieldSpec) -> List[Scalar]:
    """
    Parses a comma separated coefficient list such as `-1,0,1` or `1/2, 2`.
    """
    if not text or not text.strip():
        return []
    return [field.parse_scalar(item.strip()) for item in text.split(',')]
