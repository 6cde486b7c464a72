"""Reed-Solomon codes as evaluation codes: extended, cyclic and shortened.

Index convention, used throughout the package: positions are 0-based. Every
variant is decoded over the *extended* position set of q points

    v_base = (0, a^0, a^1, ..., a^(q-2))

Decoding position 0 is the evaluation at 0. The extended code transmits all
q positions. The cyclic code transmits positions 1..q-1 and treats position 0
as an untransmitted dummy row. The shortened code additionally forces the s
highest positions (q-s..q-1) to zero and does not transmit them either.

Information vectors are polynomial coefficients, lowest degree first.
"""

import dataclasses
import logging
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from errors import CodeSpecError, DimensionError
from gf import Field, field_new
from gf_linalg import inverse

logger = logging.getLogger(__name__)


class Variant(str, Enum):
    EXTENDED = "extended"
    CYCLIC = "cyclic"
    SHORTENED = "shortened"


@dataclasses.dataclass(frozen=True, eq=False)
class Codeword:
    symbols: np.ndarray


@dataclasses.dataclass(frozen=True, eq=False)
class RsSpec:
    """Parameters of an RS*(q, k), RS(q-1, k) or shortened code.

    n, k, m describe the transmitted code; n_base, k_base, m_base describe
    the extended code the decoders actually work in.
    """

    field: Field
    k: int
    variant: Variant
    shorten: int = 0
    v_base: np.ndarray = dataclasses.field(init=False, repr=False)
    positions: np.ndarray = dataclasses.field(init=False, repr=False)
    parity_check: np.ndarray = dataclasses.field(init=False, repr=False)
    _shorten_coeffs: Optional[np.ndarray] = dataclasses.field(init=False, repr=False)

    def __post_init__(self):
        q = self.field.q
        v_base = np.zeros(q, dtype=np.int64)
        v_base[1:] = self.field.exp_table[: q - 1]
        object.__setattr__(self, "v_base", v_base)
        object.__setattr__(self, "positions", np.arange(self.offset, self.offset + self.n))
        object.__setattr__(self, "parity_check", self.field.vandermonde(v_base, self.m_base))
        object.__setattr__(self, "_shorten_coeffs", self._build_shorten_coeffs())

    @classmethod
    def from_params(cls, w: int, primitive_poly: int, k: int, variant="extended", shorten: int = 0) -> "RsSpec":
        return make_spec(field_new(w, primitive_poly), k, variant, shorten)

    # ----- lengths -----------------------------------------------------------

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def offset(self) -> int:
        """Decoding position of transmitted row 0 (1 when a dummy row exists)"""
        return 0 if self.variant == Variant.EXTENDED else 1

    @property
    def n(self) -> int:
        if self.variant == Variant.EXTENDED:
            return self.q
        return self.q - 1 - self.shorten

    @property
    def n_base(self) -> int:
        return self.q

    @property
    def k_base(self) -> int:
        return self.k + self.shorten

    @property
    def m(self) -> int:
        return self.n - self.k

    @property
    def m_base(self) -> int:
        return self.n_base - self.k_base

    @property
    def t_half(self) -> int:
        return self.m // 2

    @property
    def d_min(self) -> int:
        return self.m + 1

    @property
    def v(self) -> np.ndarray:
        """Evaluation points of the transmitted rows"""
        return self.v_base[self.positions]

    @property
    def shortened_positions(self) -> np.ndarray:
        return np.arange(self.q - self.shorten, self.q)

    def f_max(self, l: int) -> int:
        """Largest number of transmitted row errors the collaborative decoder
        is guaranteed to correct; one unit goes to the dummy row if present."""
        cap = min(l, self.m_base - 1)
        return cap if self.variant == Variant.EXTENDED else cap - 1

    # ----- encoding internals -------------------------------------------------

    def _build_shorten_coeffs(self) -> Optional[np.ndarray]:
        """s x k matrix C with top coefficients = C . info.

        The information polynomial gets s extra coefficients of degree
        k..k+s-1 chosen so that it vanishes on every shortened point.
        """
        if self.shorten == 0:
            return None
        z = self.v_base[self.shortened_positions]
        powers = self.field.vandermonde(z, self.k_base).T  # s x k_base, z_j^d
        low, high = powers[:, : self.k], powers[:, self.k:]
        return self.field.matmul(inverse(self.field, high), low)

    def coefficients(self, info: np.ndarray) -> np.ndarray:
        """k_base x l polynomial coefficients for a k x l information matrix."""
        if self._shorten_coeffs is None:
            return info
        top = self.field.matmul(self._shorten_coeffs, info)
        return np.vstack([info, top])


def make_spec(field: Field, k: int, variant=Variant.EXTENDED, shorten: int = 0) -> RsSpec:
    variant = Variant(variant)
    q = field.q
    if variant == Variant.SHORTENED:
        if not 0 <= shorten < q - 1 - k:
            raise CodeSpecError(f"shortening s={shorten} out of range 0..{q - 2 - k} for k={k}")
    elif shorten:
        raise CodeSpecError(f"shortening only applies to the shortened variant, got s={shorten}")

    n = q if variant == Variant.EXTENDED else q - 1 - shorten
    if not 1 <= k < n:
        raise CodeSpecError(f"dimension k={k} out of range 1..{n - 1} for the {variant.value} code of length {n}")

    spec = RsSpec(field=field, k=k, variant=variant, shorten=shorten)
    logger.debug(f"Code spec: n={spec.n}, k={k}, m={spec.m}, variant={variant.value}, s={shorten}")
    return spec


def _check_info(info: np.ndarray, spec: RsSpec) -> np.ndarray:
    info = np.asarray(info, dtype=np.int64)
    if info.ndim != 2 or info.shape[0] != spec.k:
        raise DimensionError(f"information matrix must have {spec.k} rows, got shape {info.shape}")
    if info.size and (info.min() < 0 or info.max() >= spec.q):
        raise DimensionError(f"information symbols must lie in [0, {spec.q - 1}]")
    return info


def encode_info_matrix(info, spec: RsSpec, lifted: bool = False) -> np.ndarray:
    """Evaluate every information column at the code points (Horner).

    Returns n x l transmitted rows, or n_base x l over all decoding
    positions when lifted (dummy row = p(0), shortened rows = 0).
    """
    info = _check_info(info, spec)
    points = spec.v_base if lifted else spec.v
    return spec.field.poly_eval(spec.coefficients(info), points)


def encode_column(info, spec: RsSpec) -> Codeword:
    info = np.asarray(info, dtype=np.int64)
    if info.shape != (spec.k,):
        raise DimensionError(f"information vector must have length {spec.k}, got shape {info.shape}")
    return Codeword(symbols=encode_info_matrix(info[:, None], spec)[:, 0])


def generator_matrix(spec: RsSpec, lifted: bool = False) -> np.ndarray:
    """k x n generator matrix; row r encodes the r-th unit information vector.

    For the extended and cyclic codes row r is (v_i^r)_i.
    """
    identity = np.eye(spec.k, dtype=np.int64)
    return encode_info_matrix(identity, spec, lifted=lifted).T


def parity_check_matrix(spec: RsSpec) -> np.ndarray:
    """m_base x n_base Vandermonde matrix (v_i^r) over all decoding positions."""
    return spec.parity_check.copy()


def syndromes_column(y, spec: RsSpec) -> np.ndarray:
    y = np.asarray(y, dtype=np.int64)
    if y.shape != (spec.n_base,):
        raise DimensionError(f"received column must have length {spec.n_base}, got shape {y.shape}")
    return spec.field.matmul(spec.parity_check, y)


def lift(rows, spec: RsSpec) -> np.ndarray:
    """Place transmitted rows at their decoding positions; other rows are zero."""
    rows = np.asarray(rows, dtype=np.int64)
    if rows.shape[0] != spec.n:
        raise DimensionError(f"expected {spec.n} transmitted rows, got {rows.shape[0]}")
    out = np.zeros((spec.n_base,) + rows.shape[1:], dtype=np.int64)
    out[spec.positions] = rows
    return out


def code_syndrome_rows(spec: RsSpec) -> Tuple[int, int]:
    """Rows of H that are parity checks of the transmitted code.

    The dummy row only enters row 0 of H (0^r = 0 for r >= 1), so the
    cyclic and shortened codes are checked by rows 1..m.
    """
    return spec.offset, spec.offset + spec.m


def is_codeword(rows, spec: RsSpec) -> bool:
    """True when every transmitted column (n or n x l) is a codeword."""
    lifted = lift(rows, spec)
    start, stop = code_syndrome_rows(spec)
    return not np.any(spec.field.matmul(spec.parity_check[start:stop], lifted))
