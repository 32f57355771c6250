from fractions import Fraction

import pytest

from extdeg_labs.linalg.field import FieldSpec, ScalarNotInFieldError
from extdeg_labs.utils.text import parse_scalar_csv


class TestParseScalarCsv:
    def test_should_return_empty_list_for_empty_text(self):
        assert parse_scalar_csv('', FieldSpec.rational()) == []

    def test_should_parse_rationals(self):
        assert parse_scalar_csv('0, 1 ,-1/2', FieldSpec.rational()) == [
            Fraction(0), Fraction(1), Fraction(-1, 2)
        ]

    def test_should_reduce_into_prime_field(self):
        assert parse_scalar_csv('-1,4', FieldSpec.prime(3)) == [2, 1]

    def test_should_reject_invalid_item(self):
        with pytest.raises(ScalarNotInFieldError):
            parse_scalar_csv('1,x', FieldSpec.rational())
