import random

import pytest

from valuata.corpus import FIELD_PRESETS, FieldSpec


@pytest.fixture
def gf2_laurent():
    return FIELD_PRESETS["gf2-laurent"].build()


@pytest.fixture
def gf3_laurent():
    return FIELD_PRESETS["gf3-laurent"].build()


@pytest.fixture
def gf4_laurent():
    return FIELD_PRESETS["gf4-laurent"].build()


@pytest.fixture
def gf2y_laurent():
    return FIELD_PRESETS["gf2y-laurent"].build()


@pytest.fixture
def gf2_half():
    return FIELD_PRESETS["gf2-half-powers"].build()


@pytest.fixture
def gf2_lex2():
    return FIELD_PRESETS["gf2-lex2"].build()


@pytest.fixture
def q2():
    return FieldSpec("cyclo", p=2, m=1, precision=48).build()


@pytest.fixture
def q2_pi():
    return FieldSpec("cyclo", p=2, m=2, precision=48).build()


@pytest.fixture
def q3_zeta():
    return FieldSpec("cyclo", p=3, m=1, precision=48).build()


@pytest.fixture
def rng():
    return random.Random(20260816)
