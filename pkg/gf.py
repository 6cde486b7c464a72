"""Arithmetic in GF(2^w), 2 <= w <= 16, driven by exp/log lookup tables.

Elements are plain integers in [0, q-1]; bit i of an element is the
coefficient of x^i of its polynomial representative. The primitive element
alpha is the residue class of x, i.e. the integer 2.

Multiplication goes through the tables: for a, b != 0

    a * b = exp[log a + log b]

The exp table is stored twice over (length 2(q-1)) so that the sum of two
logarithms never needs a reduction mod q-1.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import List

import numpy as np

from errors import DimensionError, FieldError

logger = logging.getLogger(__name__)

# Conventional primitive polynomials, bit i = coefficient of x^i
DEFAULT_PRIMITIVE_POLYS = {
    2: 0x7,
    3: 0xB,
    4: 0x13,
    5: 0x25,
    6: 0x43,
    7: 0x89,
    8: 0x11D,
    9: 0x211,
    10: 0x409,
    11: 0x805,
    12: 0x1053,
    13: 0x201B,
    14: 0x4443,
    15: 0x8003,
    16: 0x1100B,
}

MIN_BITS = 2
MAX_BITS = 16


def default_primitive_poly(w: int) -> int:
    if w not in DEFAULT_PRIMITIVE_POLYS:
        raise FieldError(f"No primitive polynomial known for w={w} (expected {MIN_BITS}..{MAX_BITS})")
    return DEFAULT_PRIMITIVE_POLYS[w]


@dataclass(frozen=True, eq=False)
class Field:
    """GF(2^w) with verified-primitive exp/log tables. Immutable once built."""

    w: int
    primitive_poly: int
    exp_table: np.ndarray = field(repr=False)
    log_table: np.ndarray = field(repr=False)
    _exp: List[int] = field(repr=False)
    _log: List[int] = field(repr=False)

    @property
    def q(self) -> int:
        return 1 << self.w

    @property
    def order(self) -> int:
        """Order of the multiplicative group, q - 1"""
        return (1 << self.w) - 1

    @property
    def alpha(self) -> int:
        return 2

    @classmethod
    def default(cls) -> "Field":
        return field_new(8, 0x11D)

    def __repr__(self) -> str:
        return f"Field(GF(2^{self.w}), poly={self.primitive_poly:#x})"

    # ----- scalar arithmetic -------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        return self._exp[(self.order - self._log[a]) % self.order]

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise ZeroDivisionError("division by 0 in GF(2^w)")
        if a == 0:
            return 0
        return self._exp[(self._log[a] - self._log[b]) % self.order]

    def pow(self, a: int, e: int) -> int:
        """a^e with 0^0 = 1"""
        if e < 0:
            raise ValueError(f"negative exponent {e}")
        if e == 0:
            return 1
        if a == 0:
            return 0
        return self._exp[(self._log[a] * e) % self.order]

    # ----- vectorized arithmetic ---------------------------------------------

    def mul_arr(self, a, b) -> np.ndarray:
        """Elementwise product with numpy broadcasting."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        prod = self.exp_table[self.log_table[a] + self.log_table[b]]
        return np.where((a == 0) | (b == 0), 0, prod)

    def inv_arr(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("0 has no multiplicative inverse")
        return self.exp_table[(self.order - self.log_table[a]) % self.order]

    def pow_arr(self, a, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if e < 0:
            raise ValueError(f"negative exponent {e}")
        if e == 0:
            return np.ones_like(a)
        out = self.exp_table[(self.log_table[a] * e) % self.order]
        return np.where(a == 0, 0, out)

    def matmul(self, a, b) -> np.ndarray:
        """Matrix product over GF(2^w). A 1-D right operand is a column vector."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        vector = b.ndim == 1
        if vector:
            b = b[:, None]
        if a.ndim != 2 or a.shape[1] != b.shape[0]:
            raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")

        terms = self.exp_table[self.log_table[a][:, :, None] + self.log_table[b][None, :, :]]
        terms[(a == 0)[:, :, None] | (b == 0)[None, :, :]] = 0
        out = np.bitwise_xor.reduce(terms, axis=1)
        return out[:, 0] if vector else out

    def poly_eval(self, coeffs, points) -> np.ndarray:
        """Horner evaluation of sum_d coeffs[d] x^d at every point.

        coeffs may carry trailing axes (d, ...) to evaluate several
        polynomials at once; the result then has shape (len(points), ...).
        """
        coeffs = np.asarray(coeffs, dtype=np.int64)
        points = np.asarray(points, dtype=np.int64)
        shape = points.shape + coeffs.shape[1:]
        pts = points.reshape(points.shape + (1,) * (coeffs.ndim - 1))
        acc = np.zeros(shape, dtype=np.int64)
        for c in coeffs[::-1]:
            acc = self.mul_arr(acc, pts) ^ c
        return acc

    def vandermonde(self, points, rows: int) -> np.ndarray:
        """rows x len(points) matrix with entry (r, i) = points[i]^r, 0^0 = 1."""
        points = np.asarray(points, dtype=np.int64)
        out = np.zeros((rows, points.size), dtype=np.int64)
        if rows == 0:
            return out
        out[0] = 1
        for r in range(1, rows):
            out[r] = self.mul_arr(out[r - 1], points)
        return out


@lru_cache(maxsize=None)
def field_new(w: int, primitive_poly: int) -> Field:
    """Build GF(2^w) from a primitive polynomial.

    The tables are filled by repeated multiplication by x; the polynomial is
    rejected as soon as the cycle of x closes early or hits zero.
    """
    if not MIN_BITS <= w <= MAX_BITS:
        raise FieldError(f"extension degree w={w} out of range {MIN_BITS}..{MAX_BITS}")
    if primitive_poly >> w != 1:
        raise FieldError(f"polynomial {primitive_poly:#x} does not have degree {w}")

    q = 1 << w
    order = q - 1
    exp = [0] * (2 * order)
    log = [0] * q
    seen = [False] * q

    x = 1
    for i in range(order):
        if x == 0 or seen[x]:
            raise FieldError(
                f"polynomial {primitive_poly:#x} is not primitive over GF(2): "
                f"cycle of x has length {i} < {order}"
            )
        seen[x] = True
        exp[i] = x
        log[x] = i
        x <<= 1
        if x & q:
            x ^= primitive_poly
    for i in range(order, 2 * order):
        exp[i] = exp[i - order]

    logger.debug(f"Built GF(2^{w}) tables with poly {primitive_poly:#x}")
    return Field(
        w=w,
        primitive_poly=primitive_poly,
        exp_table=np.array(exp, dtype=np.int64),
        log_table=np.array(log, dtype=np.int64),
        _exp=exp,
        _log=log,
    )
