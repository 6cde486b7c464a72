import numpy as np
import pytest

from gf import field_new
from irs import ErrorPattern, apply_errors, encode_irs, independent_rows


@pytest.fixture(scope="session")
def gf8():
    return field_new(3, 0xB)


@pytest.fixture(scope="session")
def gf16():
    return field_new(4, 0x13)


@pytest.fixture(scope="session")
def gf256():
    return field_new(8, 0x11D)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def plant():
    """Encode random (or given) information and add independent error rows on a support."""

    def _plant(spec, l, support, rng, info=None, rows=None):
        if info is None:
            info = rng.integers(0, spec.q, size=(spec.k, l))
        word = encode_irs(info, spec)
        if rows is None:
            rows = independent_rows(spec.field, len(support), l, rng)
        pattern = ErrorPattern(support=tuple(support), rows=rows)
        return word, pattern, apply_errors(word, pattern)

    return _plant
