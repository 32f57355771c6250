import dataclasses
import functools
import logging
import re
from fractions import Fraction
from typing import Any, Optional, Union

from sympy import isprime
from sympy.polys.domains import GF, QQ
from sympy.polys.domains.domain import Domain


LOGGER = logging.getLogger(__name__)


# canonical values: Fraction in lowest terms over the rationals, int in [0, p) over F_p
Scalar = Union[Fraction, int]


class FieldKind:
    RATIONAL = 'rational'
    PRIME = 'prime'


class InvalidFieldSpecError(ValueError):
    def __init__(self, kind: str, p: Optional[int]):
        super().__init__(f'invalid field: kind={kind!r}, p={p!r}')
        self.kind = kind
        self.p = p


class ScalarNotInFieldError(ValueError):
    def __init__(self, text: str, field_description: str):
        super().__init__(f'scalar {text!r} is not an element of {field_description}')
        self.text = text
        self.field_description = field_description


_PRIME_SCALAR_PATTERN = re.compile(r'^\s*(-?\d+)\s*mod\s*(\d+)\s*$')


@dataclasses.dataclass(frozen=True)
class FieldSpec:
    kind: str
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind == FieldKind.RATIONAL:
            if self.p is not None:
                raise InvalidFieldSpecError(self.kind, self.p)
            return
        if self.kind != FieldKind.PRIME:
            raise InvalidFieldSpecError(self.kind, self.p)
        if not isinstance(self.p, int) or self.p < 2 or not isprime(self.p):
            raise InvalidFieldSpecError(self.kind, self.p)

    @staticmethod
    def rational() -> 'FieldSpec':
        return FieldSpec(kind=FieldKind.RATIONAL)

    @staticmethod
    def prime(p: int) -> 'FieldSpec':
        return FieldSpec(kind=FieldKind.PRIME, p=p)

    @property
    def is_rational(self) -> bool:
        return self.kind == FieldKind.RATIONAL

    @property
    def description(self) -> str:
        if self.is_rational:
            return 'QQ'
        return f'GF({self.p})'

    @property
    def domain(self) -> Domain:
        return _get_domain(self)

    @property
    def zero(self) -> Scalar:
        return Fraction(0) if self.is_rational else 0

    @property
    def one(self) -> Scalar:
        return Fraction(1) if self.is_rational else 1

    def convert(self, value: Union[int, Fraction]) -> Scalar:
        if self.is_rational:
            return Fraction(value)
        assert self.p is not None
        fraction_value = Fraction(value)
        if fraction_value.denominator % self.p == 0:
            raise ScalarNotInFieldError(str(value), self.description)
        return (
            fraction_value.numerator * pow(fraction_value.denominator, -1, self.p)
        ) % self.p

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        if self.is_rational:
            return a + b
        assert self.p is not None
        return (a + b) % self.p

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        if self.is_rational:
            return a - b
        assert self.p is not None
        return (a - b) % self.p

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        if self.is_rational:
            return a * b
        assert self.p is not None
        return (a * b) % self.p

    def neg(self, a: Scalar) -> Scalar:
        return self.sub(self.zero, a)

    def inv(self, a: Scalar) -> Scalar:
        if a == 0:
            raise ZeroDivisionError(f'zero has no inverse in {self.description}')
        if self.is_rational:
            return 1 / Fraction(a)
        assert self.p is not None
        return pow(int(a), -1, self.p)

    def to_domain_element(self, value: Scalar) -> Any:
        if self.is_rational:
            return QQ(value.numerator, value.denominator)  # type: ignore[union-attr]
        return self.domain(int(value))

    def from_domain_element(self, element: Any) -> Scalar:
        if self.is_rational:
            return Fraction(int(element.numerator), int(element.denominator))
        assert self.p is not None
        return int(self.domain.to_int(element)) % self.p

    def parse_scalar(self, text: str) -> Scalar:
        if not isinstance(text, str):
            text = str(text)
        match = _PRIME_SCALAR_PATTERN.match(text)
        if match:
            if self.is_rational or int(match.group(2)) != self.p:
                raise ScalarNotInFieldError(text, self.description)
            return int(match.group(1)) % int(match.group(2))
        try:
            value = Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ScalarNotInFieldError(text, self.description) from exc
        try:
            return self.convert(value)
        except ScalarNotInFieldError as exc:
            raise ScalarNotInFieldError(text, self.description) from exc

    def format_scalar(self, value: Scalar) -> str:
        if self.is_rational:
            fraction_value = Fraction(value)
            if fraction_value.denominator == 1:
                return str(fraction_value.numerator)
            return f'{fraction_value.numerator}/{fraction_value.denominator}'
        return str(int(value))


@functools.lru_cache(maxsize=None)
def _get_domain(field: FieldSpec) -> Domain:
    if field.is_rational:
        return QQ
    LOGGER.debug('creating prime field domain: p=%r', field.p)
    return GF(field.p, symmetric=False)
