"""Collaborative decoding of interleaved RS words.

All l columns share the error positions, so the syndrome matrix S = H . Y
has rank f for f independent error rows and its first dependent row gives
the error locator directly:

    s_(f+1) = sum_j lambda_j s_j   <=>   Lambda(x) = x^f - sum_j lambda_j x^(j-1)

The dependency is read off a column-echelon reduction of S. Column
operations never change which rows depend on which, so the coefficients
in the pivot columns of the first dependent row are the lambda_j.

Decoding always happens over the q extended positions; see rs_code for the
dummy row of the cyclic and shortened codes.
"""

import dataclasses
import logging
from enum import Enum
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from errors import DimensionError
from gf import Field
from gf_linalg import solve
from irs import IrsWord, ReceivedWord
from rs_code import RsSpec, lift

logger = logging.getLogger(__name__)


class FailureReason(str, Enum):
    TOO_MANY_ERRORS = "TooManyErrors"
    RANK_MISMATCH = "RankMismatch"
    NOT_T_VALID = "NotTValid"
    INCONSISTENT = "Inconsistent"
    COLUMN_FAILURE = "ColumnFailure"


@dataclasses.dataclass(frozen=True)
class DetectedFailure:
    """The decoder declined to decide."""

    reason: FailureReason
    detail: str = ""

    @property
    def ok(self) -> bool:
        return False


@dataclasses.dataclass(frozen=True, eq=False)
class LocatorResult:
    """f_hat, lambda and the monic locator (coefficients lowest degree first).

    steps counts elimination passes (always 1 for the full elimination);
    rejected_candidates counts locators the incremental search threw away.
    """

    f_hat: int
    lam: np.ndarray
    locator: np.ndarray
    steps: int = 1
    rejected_candidates: int = 0

    @classmethod
    def from_lambda(cls, lam, steps: int = 1, rejected_candidates: int = 0) -> "LocatorResult":
        lam = np.asarray(lam, dtype=np.int64)
        locator = np.zeros(lam.size + 1, dtype=np.int64)
        locator[: lam.size] = lam
        locator[lam.size] = 1
        return cls(f_hat=int(lam.size), lam=lam, locator=locator, steps=steps,
                   rejected_candidates=rejected_candidates)


@dataclasses.dataclass(frozen=True, eq=False)
class Success:
    """Corrected transmitted word plus the errors that were removed.

    support holds transmitted row indices; a repaired dummy row is not part
    of it.
    """

    codeword: IrsWord
    support: Tuple[int, ...]
    error_rows: np.ndarray
    locator: Optional[LocatorResult] = None

    @property
    def ok(self) -> bool:
        return True

    @property
    def f_hat(self) -> int:
        return self.locator.f_hat if self.locator is not None else len(self.support)


DecodeOutcome = Union[Success, DetectedFailure]


@dataclasses.dataclass(frozen=True, eq=False)
class SyndromeMatrix:
    data: np.ndarray
    field: Field

    @property
    def m(self) -> int:
        return self.data.shape[0]

    @property
    def l(self) -> int:
        return self.data.shape[1]

    def is_zero(self) -> bool:
        return not self.data.any()


@dataclasses.dataclass(frozen=True, eq=False)
class VandermondeSystem:
    """K = first f rows of H restricted to F, mu = row f+1 of H on F."""

    field: Field
    K: np.ndarray
    mu: np.ndarray

    @classmethod
    def from_support(cls, spec: RsSpec, positions: Sequence[int]) -> "VandermondeSystem":
        positions = list(positions)
        f = len(positions)
        if f >= spec.m_base:
            raise DimensionError(f"support of size {f} needs more than the {spec.m_base} syndrome rows")
        H = spec.parity_check
        return cls(field=spec.field, K=H[:f][:, positions], mu=H[f, positions])

    def solve_lambda(self) -> np.ndarray:
        """lambda with mu = sum_j lambda_j K_j (K_j the j-th row of K)."""
        if self.K.shape[0] == 0:
            return np.zeros(0, dtype=np.int64)
        return solve(self.field, self.K.T, self.mu)


# ----- syndromes and locator -------------------------------------------------

def lift_received(raw, spec: RsSpec) -> ReceivedWord:
    """Transmitted rows -> n_base rows with zeros at the dummy and shortened positions."""
    data = raw.data if isinstance(raw, (ReceivedWord, IrsWord)) else np.asarray(raw, dtype=np.int64)
    if data.ndim != 2:
        raise DimensionError(f"received word must be a matrix, got shape {data.shape}")
    if data.shape[0] != spec.n:
        raise DimensionError(f"received word has {data.shape[0]} rows, the {spec.variant.value} code transmits {spec.n}")
    return ReceivedWord(data=lift(data, spec))


def syndrome_matrix(Y, spec: RsSpec) -> SyndromeMatrix:
    data = Y.data if isinstance(Y, (ReceivedWord, IrsWord)) else np.asarray(Y, dtype=np.int64)
    if data.ndim != 2 or data.shape[0] != spec.n_base:
        raise DimensionError(f"syndrome matrix needs {spec.n_base} x l input, got shape {data.shape}")
    return SyndromeMatrix(data=spec.field.matmul(spec.parity_check, data), field=spec.field)


def _column_reduce(field: Field, block: np.ndarray):
    """Column-echelon reduction of block, top row first.

    Returns (r, lam, reduced, free) where r is the first row lying in the
    span of the rows above it and lam its coefficients, or (None, None, ...)
    when every row is independent.
    """
    M = np.array(block, dtype=np.int64, copy=True)
    rows, cols = M.shape
    free = np.ones(cols, dtype=bool)
    pivots: List[int] = []

    for r in range(rows):
        candidates = np.flatnonzero((M[r] != 0) & free)
        if candidates.size == 0:
            return r, M[r, pivots].copy(), M, free

        c = int(candidates[0])
        M[r:, c] = field.mul_arr(M[r:, c], field.inv(int(M[r, c])))
        factors = M[r].copy()
        factors[c] = 0
        others = np.flatnonzero(factors)
        if others.size:
            # rows above r are already zero in column c
            M[r:, others] ^= field.mul_arr(M[r:, c][:, None], factors[others][None, :])
        pivots.append(c)
        free[c] = False

    return None, None, M, free


def _locate(S: SyndromeMatrix, steps: int = 1, rejected: int = 0) -> Union[LocatorResult, DetectedFailure]:
    r, lam, M, free = _column_reduce(S.field, S.data)
    if r is None:
        return DetectedFailure(FailureReason.TOO_MANY_ERRORS, f"all {S.m} syndrome rows are independent")
    if np.any(M[r + 1:][:, free]):
        return DetectedFailure(FailureReason.RANK_MISMATCH, f"row {r + 1} depends on the rows above but rank(S) > {r}")
    return LocatorResult.from_lambda(lam, steps=steps, rejected_candidates=rejected)


def find_locator(S: SyndromeMatrix) -> Union[LocatorResult, DetectedFailure]:
    if S.is_zero():
        return LocatorResult.from_lambda([])
    return _locate(S)


def chien_roots(locator, spec: RsSpec) -> Tuple[int, ...]:
    """Decoding positions i with Lambda(v_i) = 0"""
    coeffs = locator.locator if isinstance(locator, LocatorResult) else np.asarray(locator, dtype=np.int64)
    values = spec.field.poly_eval(coeffs, spec.v_base)
    return tuple(int(i) for i in np.flatnonzero(values == 0))


# ----- reconstruction --------------------------------------------------------

def reconstruct(Y, positions: Sequence[int], S: SyndromeMatrix, spec: RsSpec):
    """Solve K . E_F = S_[f] and check the remaining syndrome rows.

    Y and positions are in decoding coordinates (n_base rows). Returns
    (corrected n_base x l matrix, E_F) or DetectedFailure(Inconsistent).
    """
    data = Y.data if isinstance(Y, (ReceivedWord, IrsWord)) else np.asarray(Y, dtype=np.int64)
    positions = list(positions)
    f = len(positions)
    if f >= spec.m_base:
        raise DimensionError(f"cannot reconstruct {f} rows from {spec.m_base} syndrome rows")

    H = spec.parity_check
    field = spec.field
    if f == 0:
        e_f = np.zeros((0, S.l), dtype=np.int64)
        if not S.is_zero():
            return DetectedFailure(FailureReason.INCONSISTENT, "nonzero syndromes with an empty support")
        return data.copy(), e_f

    e_f = solve(field, H[:f][:, positions], S.data[:f])
    check = field.matmul(H[f:][:, positions], e_f)
    if np.any(check != S.data[f:]):
        bad = int(np.flatnonzero(np.any(check != S.data[f:], axis=1))[0]) + f
        return DetectedFailure(FailureReason.INCONSISTENT, f"syndrome row {bad + 1} does not match the reconstructed errors")

    corrected = data.copy()
    corrected[positions] ^= e_f
    return corrected, e_f


def _finish(lifted: ReceivedWord, S: SyndromeMatrix, loc: LocatorResult, spec: RsSpec) -> DecodeOutcome:
    """Chien search, t-validity, reconstruction and stripping to transmitted rows."""
    roots = chien_roots(loc, spec)
    if len(roots) != loc.f_hat:
        return DetectedFailure(FailureReason.NOT_T_VALID, f"locator of degree {loc.f_hat} has {len(roots)} roots")

    if spec.shorten:
        shortened = set(int(p) for p in spec.shortened_positions)
        hit = [p for p in roots if p in shortened]
        if hit:
            return DetectedFailure(FailureReason.INCONSISTENT, f"locator points at untransmitted position {hit[0]}")

    result = reconstruct(lifted, roots, S, spec)
    if isinstance(result, DetectedFailure):
        return result
    corrected, e_f = result

    keep = [j for j, p in enumerate(roots) if p >= spec.offset]
    support = tuple(roots[j] - spec.offset for j in keep)
    logger.debug(f"Decoded f_hat={loc.f_hat}, rows={list(support)}")
    return Success(
        codeword=IrsWord(data=corrected[spec.positions]),
        support=support,
        error_rows=e_f[keep],
        locator=loc,
    )


def _prepare(Y, spec: RsSpec, l: Optional[int]):
    lifted = lift_received(Y, spec)
    if l is not None and lifted.l != l:
        raise DimensionError(f"received word has {lifted.l} columns, expected l={l}")
    return lifted, syndrome_matrix(lifted, spec)


def _clean(lifted: ReceivedWord, spec: RsSpec) -> Success:
    return Success(
        codeword=IrsWord(data=lifted.data[spec.positions].copy()),
        support=(),
        error_rows=np.zeros((0, lifted.l), dtype=np.int64),
        locator=LocatorResult.from_lambda([]),
    )


def decode(Y, spec: RsSpec, l: Optional[int] = None) -> DecodeOutcome:
    lifted, S = _prepare(Y, spec, l)
    if S.is_zero():
        return _clean(lifted, spec)

    loc = _locate(S)
    if isinstance(loc, DetectedFailure):
        logger.debug(f"Decode failure: {loc.reason.value} ({loc.detail})")
        return loc
    return _finish(lifted, S, loc, spec)


def decode_incremental(Y, spec: RsSpec, l: Optional[int] = None, check_cols: int = 2) -> DecodeOutcome:
    """Grow the leading i x i block of S until its first dependent row
    survives a test on check_cols further columns.

    A surviving candidate is certified by the rank check on every column
    seen so far; the full elimination is the fallback when no candidate
    survives.
    """
    lifted, S = _prepare(Y, spec, l)
    width = S.l
    if check_cols < 0:
        raise DimensionError(f"check_cols must be >= 0, got {check_cols}")
    check_cols = min(check_cols, width)
    if S.is_zero():
        return _clean(lifted, spec)

    field = spec.field
    rejected = 0
    for i in range(1, S.m + 1):
        cols = min(i, width)
        r, lam, _, _ = _column_reduce(field, S.data[:i, :cols])
        if r is None:
            continue

        stop = min(cols + check_cols, width)
        if stop > cols:
            tested = S.data[:r, cols:stop]
            predicted = field.matmul(lam[None, :], tested)[0] if r else np.zeros(stop - cols, dtype=np.int64)
            if np.any(predicted != S.data[r, cols:stop]):
                rejected += 1
                logger.debug(f"Rejected candidate f_hat={r} at block size {i}")
                continue

        seen = SyndromeMatrix(data=S.data[:, :stop], field=field)
        loc = _locate(seen, steps=i, rejected=rejected)
        outcome = loc if isinstance(loc, DetectedFailure) else _finish(lifted, S, loc, spec)
        if outcome.ok or stop == width:
            return outcome
        # the unseen columns may still raise the rank
        rejected += 1
        logger.debug(f"Candidate at block size {i} failed on {stop} of {width} columns: {outcome.reason.value}")

    loc = _locate(S, steps=S.m, rejected=rejected)
    if isinstance(loc, DetectedFailure):
        return loc
    return _finish(lifted, S, loc, spec)
