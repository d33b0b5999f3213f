from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

FROZEN = json.loads((Path(__file__).parent / "oracles" / "frozen.json").read_text())


def frozen(key):
    value = FROZEN[key]
    if value and isinstance(value[0], list):
        return [[Fraction(s) for s in row] for row in value]
    return [Fraction(s) for s in value]


@pytest.fixture
def oracle():
    return frozen


def rationals(lo=-5, hi=5, max_den=12, nonzero=False):
    s = st.fractions(min_value=lo, max_value=hi, max_denominator=max_den)
    return s.filter(lambda v: v != 0) if nonzero else s


def q_values():
    return st.fractions(min_value=Fraction(1, 20), max_value=Fraction(19, 20), max_denominator=20)
