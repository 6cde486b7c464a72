"""Failure and miscorrection bounds of collaborative IRS decoding.

Per word with f erroneous rows (interleaving depth l, field size q):

    P_f(f)  failure:        0 for f < 2, q^-(l+1-f) for 2 <= f <= f_max, else 1
    P_e(f)  miscorrection:  sum_{t=2}^{min(f-1, f_max)} P_v(t) q^-((l-t)(f-t))
    P_v(t)  fraction of degree-t monic polynomials with t distinct roots,
            C(q, t) q^-t <= 1/t!

The frame error rates average these over a binomial number of erroneous
rows among N transmitted rows, each hit with probability p_i:

    FER   = sum_t C(N, t) P_f(t) p_i^t (1 - p_i)^(N - t)
    FER_e = same with P_e(t)

The column-wise baseline decodes every column alone and cannot fail while
at most t_half = floor((n-k)/2) rows are hit, so its reference curve is

    FER_indep = P(Binomial(N, p_i) > t_half)

Everything is evaluated with logarithms; values below 1e-300 are reported
as 0 with the underflow flag set.
"""

import logging
import math
from fractions import Fraction
from typing import List, NamedTuple, Optional, Sequence

import numpy as np
import pydantic
from scipy.special import gammaln, logsumexp, xlog1py, xlogy

from rs_code import RsSpec

logger = logging.getLogger(__name__)

UNDERFLOW = 1e-300
_LOG_UNDERFLOW = math.log(UNDERFLOW)


class BoundValue(NamedTuple):
    value: float
    underflow: bool = False

    @classmethod
    def from_log(cls, log_value: float) -> "BoundValue":
        if log_value == -np.inf:
            return cls(0.0, False)
        if log_value < _LOG_UNDERFLOW:
            return cls(0.0, True)
        return cls(min(1.0, max(0.0, math.exp(log_value))), False)


class BoundsInput(pydantic.BaseModel):
    model_config = pydantic.ConfigDict(frozen=True)

    q: int = pydantic.Field(ge=2)
    l: int = pydantic.Field(ge=1)
    f_max: int = pydantic.Field(ge=0)
    N: int = pydantic.Field(ge=1)
    p_i: float = pydantic.Field(default=0.0, ge=0.0, le=1.0)
    t_half: int = pydantic.Field(default=0, ge=0)

    @classmethod
    def for_spec(cls, spec: RsSpec, l: int, p_i: float = 0.0) -> "BoundsInput":
        return cls(q=spec.q, l=l, f_max=max(0, spec.f_max(l)), N=spec.n, p_i=p_i, t_half=spec.t_half)

    @classmethod
    def for_code(cls, n: int, k: int, l: int, q: int, p_i: float = 0.0) -> "BoundsInput":
        if not 1 <= k < n:
            raise ValueError(f"need 1 <= k < n, got n={n}, k={k}")
        return cls(q=q, l=l, f_max=min(l, n - k - 1), N=n, p_i=p_i, t_half=(n - k) // 2)

    def at(self, p_i: float) -> "BoundsInput":
        return self.model_copy(update={"p_i": p_i})


# ----- per-word probabilities ------------------------------------------------

def p_dependent_bound(f: int, l: int, q: int) -> float:
    """Upper bound on P(f uniform nonzero rows of length l are dependent)."""
    if f < 2:
        raise ValueError(f"dependence bound needs f >= 2, got f={f}")
    value = q ** -(l + 1 - f) * (1 - q ** -f) / (1 - 1 / q)
    return min(1.0, value)


def dependence_probability_exact(q: int, l: int, f: int) -> Fraction:
    """P(f uniform nonzero rows of GF(q)^l are linearly dependent), exactly."""
    total = q ** l - 1
    independent = Fraction(1)
    for i in range(f):
        independent *= Fraction(q ** l - q ** i, total)
    return 1 - independent


def p_failure_bound(f: int, l: int, q: int, f_max: int) -> float:
    if f < 2:
        return 0.0
    if f <= f_max:
        return min(1.0, float(q) ** -(l + 1 - f))
    return 1.0


def _log_p_valid(t, q: int, relaxed: bool = False):
    t = np.asarray(t, dtype=np.float64)
    if relaxed:
        return -gammaln(t + 1)
    with np.errstate(invalid="ignore"):
        out = gammaln(q + 1) - gammaln(t + 1) - gammaln(q - t + 1) - t * math.log(q)
    return np.where(t > q, -np.inf, out)


def p_valid_fraction(t: int, q: int) -> float:
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    return min(1.0, float(np.exp(_log_p_valid(t, q))))


def _log_p_error(f: int, l: int, q: int, f_max: Optional[int], relaxed: bool = False) -> float:
    top = f - 1 if f_max is None else min(f - 1, f_max)
    if top < 2:
        return -np.inf
    t = np.arange(2, top + 1)
    terms = _log_p_valid(t, q, relaxed) - (l - t) * (f - t) * math.log(q)
    with np.errstate(divide="ignore"):
        return float(logsumexp(terms))


def p_error_bound(f: int, l: int, q: int, f_max: Optional[int] = None) -> float:
    """Miscorrection bound with the exact fraction of t-valid polynomials."""
    return BoundValue.from_log(_log_p_error(f, l, q, f_max)).value


def p_error_bound_relaxed(f: int, l: int, q: int, f_max: Optional[int] = None) -> float:
    """Same sum with P_v(t) replaced by 1/t!."""
    return BoundValue.from_log(_log_p_error(f, l, q, f_max, relaxed=True)).value


def p_error_approx(f: int, l: int, q: int) -> float:
    """Dominant last summand: q^-(l+1-f) / (f-1)!"""
    if f < 3:
        return 0.0
    return BoundValue.from_log(-gammaln(f) - (l + 1 - f) * math.log(q)).value


# ----- frame error rates -----------------------------------------------------

def _log_binomial_weights(N: int, p: float) -> np.ndarray:
    t = np.arange(N + 1, dtype=np.float64)
    log_choose = gammaln(N + 1) - gammaln(t + 1) - gammaln(N - t + 1)
    return log_choose + xlogy(t, p) + xlog1py(N - t, -p)


def _log_pf_vector(inp: BoundsInput) -> np.ndarray:
    t = np.arange(inp.N + 1)
    out = np.where(t <= inp.f_max, -(inp.l + 1 - t) * math.log(inp.q), 0.0)
    return np.where(t < 2, -np.inf, out)


def _log_pe_vector(inp: BoundsInput) -> np.ndarray:
    return np.array([_log_p_error(int(t), inp.l, inp.q, inp.f_max) for t in range(inp.N + 1)])


def _log_fer(inp: BoundsInput, log_per_word: np.ndarray) -> float:
    if inp.p_i == 0.0:
        return -np.inf
    with np.errstate(divide="ignore"):
        return float(logsumexp(_log_binomial_weights(inp.N, inp.p_i) + log_per_word))


def fer_bound_value(inp: BoundsInput) -> BoundValue:
    return BoundValue.from_log(_log_fer(inp, _log_pf_vector(inp)))


def fer_error_bound_value(inp: BoundsInput) -> BoundValue:
    return BoundValue.from_log(_log_fer(inp, _log_pe_vector(inp)))


def fer_bound(inp: BoundsInput) -> float:
    return fer_bound_value(inp).value


def fer_error_bound(inp: BoundsInput) -> float:
    return fer_error_bound_value(inp).value


def _log_indep_vector(N: int, t_half: int) -> np.ndarray:
    return np.where(np.arange(N + 1) > t_half, 0.0, -np.inf)


def fer_independent_value(inp: BoundsInput) -> BoundValue:
    return BoundValue.from_log(_log_fer(inp, _log_indep_vector(inp.N, inp.t_half)))


def fer_independent(N: int, t_half: int, p_i: float) -> float:
    """P(more than t_half of N rows are hit), the column-wise decoder's FER."""
    if N < 1 or t_half < 0 or not 0.0 <= p_i <= 1.0:
        raise ValueError(f"need N >= 1, t_half >= 0 and p_i in [0, 1], got N={N}, t_half={t_half}, p_i={p_i}")
    inp = BoundsInput(q=2, l=1, f_max=0, N=N, p_i=p_i, t_half=t_half)
    return fer_independent_value(inp).value


class BoundRow(NamedTuple):
    p_i: float
    fer: float
    fer_err: float
    fer_indep: float


def fer_curve(base: BoundsInput, grid: Sequence[float]) -> List[BoundRow]:
    """FER, FER_e and the column-wise FER for every grid point; the per-word terms are shared."""
    log_pf = _log_pf_vector(base)
    log_pe = _log_pe_vector(base)
    log_indep = _log_indep_vector(base.N, base.t_half)
    rows = []
    for p in grid:
        inp = base.at(float(p))
        rows.append(BoundRow(float(p), BoundValue.from_log(_log_fer(inp, log_pf)).value,
                             BoundValue.from_log(_log_fer(inp, log_pe)).value,
                             BoundValue.from_log(_log_fer(inp, log_indep)).value))
    logger.debug(f"Bound curve over {len(rows)} points (q={base.q}, l={base.l}, N={base.N})")
    return rows
