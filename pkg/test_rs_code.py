import numpy as np
import pytest

from errors import CodeSpecError, DimensionError
from gf import field_new
from rs_code import (RsSpec, Variant, code_syndrome_rows, encode_column, encode_info_matrix, generator_matrix,
                     is_codeword, lift, make_spec, parity_check_matrix, syndromes_column)


def test_lengths_extended(gf8):
    spec = make_spec(gf8, 3)
    assert (spec.n, spec.k, spec.m) == (8, 3, 5)
    assert (spec.n_base, spec.k_base, spec.m_base) == (8, 3, 5)
    assert spec.offset == 0
    assert spec.t_half == 2
    assert spec.d_min == 6
    assert spec.f_max(4) == 4
    assert spec.f_max(10) == 4
    assert spec.v_base.tolist() == [0, 1, 2, 4, 3, 6, 7, 5]
    assert np.array_equal(spec.v, spec.v_base)


def test_lengths_cyclic(gf8):
    spec = make_spec(gf8, 3, Variant.CYCLIC)
    assert (spec.n, spec.m, spec.m_base) == (7, 4, 5)
    assert spec.offset == 1
    assert spec.positions.tolist() == list(range(1, 8))
    assert spec.v.tolist() == [1, 2, 4, 3, 6, 7, 5]
    assert spec.f_max(4) == 3


def test_flagship_shortened(gf256):
    spec = make_spec(gf256, 188, Variant.SHORTENED, 51)
    assert spec.n == 204
    assert spec.m == 16
    assert spec.k_base == 239
    assert spec.m_base == 17
    assert spec.f_max(16) == 15
    assert spec.t_half == 8
    assert spec.shortened_positions.tolist() == list(range(205, 256))


def test_from_params():
    spec = RsSpec.from_params(4, 0x13, 5, "shortened", 3)
    assert spec.variant == Variant.SHORTENED
    assert (spec.n, spec.k, spec.shorten) == (12, 5, 3)


@pytest.mark.parametrize("k, variant, shorten", [
    (0, Variant.EXTENDED, 0),
    (8, Variant.EXTENDED, 0),
    (7, Variant.CYCLIC, 0),
    (3, Variant.EXTENDED, 1),
    (3, Variant.SHORTENED, 4),
    (3, Variant.SHORTENED, -1),
])
def test_invalid_parameters(gf8, k, variant, shorten):
    with pytest.raises(CodeSpecError):
        make_spec(gf8, k, variant, shorten)


def test_single_parity_check_code(gf8):
    spec = make_spec(gf8, 7)
    assert spec.m == 1
    assert spec.f_max(3) == 0
    assert parity_check_matrix(spec).tolist() == [[1] * 8]


def test_generator_matrix_examples(gf8):
    ext = generator_matrix(make_spec(gf8, 2))
    assert ext.tolist() == [[1] * 8, [0, 1, 2, 4, 3, 6, 7, 5]]
    cyc = generator_matrix(make_spec(gf8, 2, Variant.CYCLIC))
    assert cyc.tolist() == [[1] * 7, [1, 2, 4, 3, 6, 7, 5]]


def test_parity_check_shape(gf16):
    h = parity_check_matrix(make_spec(gf16, 6))
    assert h.shape == (10, 16)
    assert h[0].tolist() == [1] * 16
    assert h[1:, 0].tolist() == [0] * 9


@pytest.mark.parametrize("w, poly", [(3, 0xB), (4, 0x13)])
@pytest.mark.parametrize("variant", [Variant.EXTENDED, Variant.CYCLIC])
def test_duality_all_dimensions(w, poly, variant):
    gf = field_new(w, poly)
    n = gf.q if variant == Variant.EXTENDED else gf.q - 1
    for k in range(1, n):
        spec = make_spec(gf, k, variant)
        g = generator_matrix(spec, lifted=True)
        assert not gf.matmul(g, parity_check_matrix(spec).T).any()


def test_duality_flagship(gf256):
    spec = make_spec(gf256, 188, Variant.SHORTENED, 51)
    g = generator_matrix(spec, lifted=True)
    assert g.shape == (188, 256)
    assert not gf256.matmul(g, parity_check_matrix(spec).T).any()


def test_encode_column_example(gf8):
    spec = make_spec(gf8, 2)
    # p(x) = 1 + x
    assert encode_column([1, 1], spec).symbols.tolist() == [1, 0, 3, 5, 2, 7, 6, 4]
    with pytest.raises(DimensionError):
        encode_column([1, 1, 1], spec)


def test_encode_rejects_bad_info(gf8):
    spec = make_spec(gf8, 2)
    with pytest.raises(DimensionError):
        encode_info_matrix(np.array([[1, 8], [0, 0]]), spec)
    with pytest.raises(DimensionError):
        encode_info_matrix(np.zeros((3, 2), dtype=np.int64), spec)


def test_shortened_lifted_word(gf16, rng):
    spec = make_spec(gf16, 5, Variant.SHORTENED, 3)
    info = rng.integers(0, 16, size=(5, 4))
    lifted = encode_info_matrix(info, spec, lifted=True)
    assert lifted.shape == (16, 4)
    assert not lifted[spec.shortened_positions].any()
    assert np.array_equal(lifted[0], info[0])
    assert np.array_equal(lifted[spec.positions], encode_info_matrix(info, spec))
    assert is_codeword(encode_info_matrix(info, spec), spec)


def test_syndromes(gf16, rng):
    spec = make_spec(gf16, 6)
    c = encode_info_matrix(rng.integers(0, 16, size=(6, 1)), spec)[:, 0]
    assert not syndromes_column(c, spec).any()

    y = c.copy()
    y[5] ^= 9
    s = syndromes_column(y, spec)
    expected = [gf16.mul(9, gf16.pow(int(spec.v_base[5]), r)) for r in range(spec.m_base)]
    assert s.tolist() == expected

    with pytest.raises(DimensionError):
        syndromes_column(c[:-1], spec)


def test_minimum_distance_spot_check(gf16, rng):
    spec = make_spec(gf16, 6, Variant.CYCLIC)
    for _ in range(200):
        info = rng.integers(0, 16, size=(6, 1))
        if not info.any():
            continue
        c = encode_info_matrix(info, spec)[:, 0]
        assert np.count_nonzero(c) >= spec.d_min


def test_cyclic_shift_is_codeword(gf16, rng):
    spec = make_spec(gf16, 7, Variant.CYCLIC)
    c = encode_info_matrix(rng.integers(0, 16, size=(7, 3)), spec)
    assert is_codeword(c, spec)
    assert is_codeword(np.roll(c, 1, axis=0), spec)

    broken = c.copy()
    broken[4, 1] ^= 1
    assert not is_codeword(broken, spec)


def test_lift_and_syndrome_rows(gf8):
    spec = make_spec(gf8, 3, Variant.CYCLIC)
    lifted = lift(np.arange(7) + 1, spec)
    assert lifted.tolist() == [0, 1, 2, 3, 4, 5, 6, 7]
    assert code_syndrome_rows(spec) == (1, 5)
    assert code_syndrome_rows(make_spec(gf8, 3)) == (0, 5)
    with pytest.raises(DimensionError):
        lift(np.zeros(8, dtype=np.int64), spec)
