import numpy as np
import pydantic
import pytest
from scipy import stats

from bounds import dependence_probability_exact
from errors import DimensionError, MatrixFormatError
from gf import field_new
from gf_linalg import rank
from irs import (BernoulliRows, DependentRows, ErrorPattern, FixedF, IrsWord, _nonzero_rows, apply_errors,
                 decode_matrix_bytes, dumps_matrix, encode_irs, encode_matrix_bytes, independent_rows, loads_matrix,
                 read_matrix, sample_error_pattern, write_matrix)
from rs_code import Variant, is_codeword, make_spec


def test_encode_irs_columns_are_codewords(gf16, rng):
    spec = make_spec(gf16, 5, Variant.SHORTENED, 3)
    word = encode_irs(rng.integers(0, 16, size=(5, 6)), spec)
    assert (word.n, word.l) == (12, 6)
    assert is_codeword(word.data, spec)


def test_encode_irs_shape_checked(gf8):
    spec = make_spec(gf8, 3)
    with pytest.raises(DimensionError):
        encode_irs(np.zeros((2, 4), dtype=np.int64), spec)
    with pytest.raises(DimensionError):
        encode_irs(np.zeros((3, 0), dtype=np.int64), spec)


def test_apply_errors(gf8):
    word = IrsWord(data=np.zeros((8, 2), dtype=np.int64))
    pattern = ErrorPattern(support=(1, 6), rows=np.array([[1, 0], [3, 5]]))
    received = apply_errors(word, pattern)
    assert np.array_equal(received.data, pattern.to_matrix(8))
    assert not word.data.any()

    same = apply_errors(word, ErrorPattern.empty(2))
    assert np.array_equal(same.data, word.data)

    with pytest.raises(DimensionError):
        apply_errors(word, ErrorPattern(support=(8,), rows=np.array([[1, 1]])))
    with pytest.raises(DimensionError):
        apply_errors(word, ErrorPattern(support=(0,), rows=np.array([[1, 1, 1]])))


@pytest.mark.parametrize("support, rows", [
    ((2, 1), [[1], [1]]),
    ((1, 1), [[1], [1]]),
    ((-1,), [[1]]),
    ((0,), [[0, 0]]),
    ((0, 1), [[1]]),
])
def test_error_pattern_validation(support, rows):
    with pytest.raises(DimensionError):
        ErrorPattern(support=support, rows=np.array(rows))


def test_channel_modes_validate():
    with pytest.raises(pydantic.ValidationError):
        BernoulliRows(p=1.5)
    with pytest.raises(pydantic.ValidationError):
        DependentRows(f=1)
    with pytest.raises(pydantic.ValidationError):
        FixedF(f=-1)


def test_bernoulli_extremes(gf16, rng):
    none = sample_error_pattern(12, 3, BernoulliRows(p=0.0), rng, gf16)
    assert none.f == 0
    every = sample_error_pattern(12, 3, BernoulliRows(p=1.0), rng, gf16)
    assert every.support == tuple(range(12))
    assert np.all(every.rows.any(axis=1))


def test_fixed_f_support(gf16, rng):
    counts = np.zeros(15, dtype=np.int64)
    for _ in range(3000):
        pattern = sample_error_pattern(15, 4, FixedF(f=3), rng, gf16)
        assert pattern.f == 3
        assert list(pattern.support) == sorted(set(pattern.support))
        counts[list(pattern.support)] += 1
    # every row is hit with probability 3/15
    expected = 3000 * 3 / 15
    assert np.all(np.abs(counts - expected) < 5 * np.sqrt(expected))


def test_fixed_f_too_large(gf8, rng):
    with pytest.raises(DimensionError):
        sample_error_pattern(7, 2, FixedF(f=8), rng, gf8)
    with pytest.raises(DimensionError):
        independent_rows(gf8, 3, 2, rng)


def test_independent_rows(gf8, rng):
    for _ in range(50):
        pattern = sample_error_pattern(8, 3, FixedF(f=3, independent=True), rng, gf8)
        assert rank(gf8, pattern.rows) == 3


def test_dependent_rows(gf8, rng):
    for _ in range(50):
        pattern = sample_error_pattern(8, 4, DependentRows(f=3), rng, gf8)
        assert pattern.f == 3
        assert any(np.array_equal(pattern.rows[-1], r) for r in pattern.rows[:-1])
        assert rank(gf8, pattern.rows) < 3


def test_dependence_rate_matches_exact(gf8, rng):
    draws = 20000
    dependent = sum(rank(gf8, _nonzero_rows(2, 3, 8, rng)) < 2 for _ in range(draws))
    p = float(dependence_probability_exact(8, 3, 2))
    assert p == pytest.approx(7 / 511)
    sigma = np.sqrt(p * (1 - p) / draws)
    assert abs(dependent / draws - p) < 4 * sigma


def test_nonzero_rows_uniform(rng):
    values = _nonzero_rows(63 * 200, 1, 64, rng)[:, 0]
    assert values.min() >= 1
    observed = np.bincount(values, minlength=64)[1:]
    assert stats.chisquare(observed).pvalue > 1e-4


# ----- codec -----------------------------------------------------------------

def test_text_format(gf16):
    matrix = np.array([[0, 15, 10], [1, 2, 3]])
    text = dumps_matrix(matrix, 16)
    assert text == "2 3 16\n0 f a\n1 2 3\n"
    parsed, q = loads_matrix(text)
    assert q == 16
    assert np.array_equal(parsed, matrix)


def test_text_format_tolerates_blank_lines_and_case():
    parsed, q = loads_matrix("1 2 256\n\nFF 0a\n\n")
    assert q == 256
    assert parsed.tolist() == [[255, 10]]


@pytest.mark.parametrize("text, line, column", [
    ("", 1, 0),
    ("2 2\n", 1, 0),
    ("2 x 16\n", 1, 2),
    ("1 2 12\n0 0\n", 1, 0),
    ("1 2 16\n0 0 0\n", 2, 0),
    ("2 2 16\n0 0\n0 zz\n", 3, 2),
    ("1 2 16\n0 10\n", 2, 2),
    ("2 2 16\n0 0\n", 3, 0),
])
def test_text_format_errors(text, line, column):
    with pytest.raises(MatrixFormatError) as info:
        loads_matrix(text)
    assert info.value.line == line
    assert info.value.column == column


def test_raw_format(tmp_path):
    matrix = np.array([[0, 255], [7, 128], [1, 2]])
    data = encode_matrix_bytes(matrix, 256, "raw")
    assert data.startswith(b"3 2 256\n")
    assert len(data) == len(b"3 2 256\n") + 6
    parsed, q = decode_matrix_bytes(data, "raw")
    assert q == 256
    assert np.array_equal(parsed, matrix)

    path = tmp_path / "m.raw"
    write_matrix(path, matrix, 256, "raw")
    parsed, _ = read_matrix(path, "raw")
    assert np.array_equal(parsed, matrix)


def test_raw_format_errors():
    with pytest.raises(MatrixFormatError):
        encode_matrix_bytes(np.zeros((1, 1), dtype=np.int64), 1024, "raw")
    with pytest.raises(MatrixFormatError):
        decode_matrix_bytes(b"2 2 16\n\x00\x01\x02", "raw")
    with pytest.raises(MatrixFormatError) as info:
        decode_matrix_bytes(b"1 2 16\n\x00\x10", "raw")
    assert info.value.column == 2
    with pytest.raises(MatrixFormatError):
        decode_matrix_bytes(b"1 1 16\n\x00", "json")
