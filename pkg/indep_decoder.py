"""Column-by-column bounded-distance decoding (the non-collaborative baseline).

Each column is decoded on its own with the Peterson-Gorenstein-Zierler
procedure and corrects at most t_half = floor(m/2) errors. Only the m parity
checks of the transmitted code are used, so for the cyclic and shortened
codes the dummy row never enters:

    s_j = sum_i e_i X_i^(offset + j) = sum_i w_i X_i^j,   w_i = e_i X_i^offset
"""

import dataclasses
import logging
from typing import Tuple, Union

import numpy as np

from collab_decoder import DecodeOutcome, DetectedFailure, FailureReason, Success, lift_received
from errors import DimensionError
from gf_linalg import solve, try_solve
from irs import IrsWord
from rs_code import RsSpec, Variant, code_syndrome_rows

logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True, eq=False)
class Corrected:
    """Decoded column in decoding coordinates; positions/values are the removed errors."""

    column: np.ndarray
    positions: Tuple[int, ...]
    values: np.ndarray

    @property
    def ok(self) -> bool:
        return True


@dataclasses.dataclass(frozen=True)
class ColumnFailure:
    reason: str

    @property
    def ok(self) -> bool:
        return False


ColumnOutcome = Union[Corrected, ColumnFailure]


def _candidates(spec: RsSpec) -> np.ndarray:
    """Decoding positions that can carry a transmitted error"""
    if spec.variant == Variant.EXTENDED:
        return np.arange(spec.n_base)
    return np.arange(1, spec.n_base)


def decode_column(y, spec: RsSpec) -> ColumnOutcome:
    y = np.asarray(y, dtype=np.int64)
    if y.shape != (spec.n_base,):
        raise DimensionError(f"column must have length {spec.n_base}, got shape {y.shape}")

    field = spec.field
    start, stop = code_syndrome_rows(spec)
    s = field.matmul(spec.parity_check[start:stop], y)
    if not s.any():
        return Corrected(column=y.copy(), positions=(), values=np.zeros(0, dtype=np.int64))

    candidates = _candidates(spec)
    shortened = set(int(p) for p in spec.shortened_positions)

    for nu in range(spec.t_half, 0, -1):
        hankel = np.array([s[j:j + nu] for j in range(nu)], dtype=np.int64)
        lam = try_solve(field, hankel, s[nu:2 * nu])
        if lam is None:
            continue

        locator = np.append(lam, 1)
        values_at = field.poly_eval(locator, spec.v_base[candidates])
        roots = [int(p) for p in candidates[values_at == 0]]
        if len(roots) != nu:
            return ColumnFailure(f"locator of degree {nu} has {len(roots)} roots")
        if shortened.intersection(roots):
            return ColumnFailure("locator points at an untransmitted position")

        w = solve(field, spec.parity_check[:nu][:, roots], s[:nu])
        x_off = field.pow_arr(spec.v_base[roots], spec.offset)
        e = field.mul_arr(w, field.inv_arr(x_off))

        corrected = y.copy()
        corrected[roots] ^= e
        if field.matmul(spec.parity_check[start:stop], corrected).any():
            return ColumnFailure(f"{nu} corrected positions leave nonzero syndromes")

        keep = e != 0
        return Corrected(column=corrected, positions=tuple(np.asarray(roots)[keep].tolist()), values=e[keep])

    return ColumnFailure("every error-count hypothesis is singular")


def decode_columns(Y, spec: RsSpec) -> DecodeOutcome:
    """Decode every column on its own; any column failure fails the word."""
    lifted = lift_received(Y, spec).data
    corrected = lifted.copy()
    for c in range(lifted.shape[1]):
        outcome = decode_column(lifted[:, c], spec)
        if not outcome.ok:
            logger.debug(f"Column {c} failed: {outcome.reason}")
            return DetectedFailure(FailureReason.COLUMN_FAILURE, f"column {c}: {outcome.reason}")
        corrected[:, c] = outcome.column

    transmitted = corrected[spec.positions]
    errors = lifted[spec.positions] ^ transmitted
    support = tuple(int(i) for i in np.flatnonzero(errors.any(axis=1)))
    return Success(codeword=IrsWord(data=transmitted), support=support, error_rows=errors[list(support)])
