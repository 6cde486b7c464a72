"""Seeded Monte-Carlo harness for the IRS decoders.

Every trial draws its randomness from its own generator,
numpy.random.Generator(PCG64(derive_trial_seed(master_seed, index))), so a
run gives identical tallies whatever the worker count or scheduling.
derive_trial_seed is SplitMix64 of master + (index + 1) * golden gamma:

    z = (master + (index + 1) * 0x9E3779B97F4A7C15) mod 2^64
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    z =  z ^ (z >> 31)
"""

import csv
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from functools import lru_cache
from typing import Dict, List, Literal, Optional, Sequence, Tuple

import numpy as np
import pydantic
from scipy.stats import binomtest
from tqdm import tqdm

from bounds import BoundRow, BoundsInput, fer_bound, fer_curve, fer_error_bound, fer_independent_value
from collab_decoder import DetectedFailure, decode, decode_incremental
from config import config
from errors import SimulationInvariantError
from gf import field_new
from indep_decoder import decode_columns
from irs import BernoulliRows, ChannelMode, apply_errors, encode_irs, sample_error_pattern
from rs_code import RsSpec, Variant, make_spec

logger = logging.getLogger(__name__)

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB

CSV_HEADER = ["p_i", "fer_sim", "fer_ci_lo", "fer_ci_hi", "fer_bound", "fer_err_bound", "trials"]
BOUNDS_CSV_HEADER = ["p_i", "fer_bound", "fer_err_bound", "fer_indep"]
STATS_CSV_HEADER = ["trials", "successes", "detected_failures", "miscorrections",
                    "fer_sim", "fer_ci_lo", "fer_ci_hi", "failure_reasons"]


def derive_trial_seed(master_seed: int, trial_index: int) -> int:
    z = (master_seed + (trial_index + 1) * GOLDEN_GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * MIX1) & MASK64
    z = ((z ^ (z >> 27)) * MIX2) & MASK64
    return z ^ (z >> 31)


def wilson_interval(successes: int, trials: int, confidence: float = 0.95) -> Tuple[float, float]:
    if trials == 0:
        return 0.0, 1.0
    ci = binomtest(successes, trials).proportion_ci(confidence_level=confidence, method="wilson")
    return float(ci.low), float(ci.high)


# ----- configuration records -------------------------------------------------

@lru_cache(maxsize=32)
def _build_spec(w: int, primitive_poly: int, k: int, variant: str, shorten: int) -> RsSpec:
    return make_spec(field_new(w, primitive_poly), k, variant, shorten)


class CodeParams(pydantic.BaseModel):
    model_config = pydantic.ConfigDict(frozen=True)

    w: int = pydantic.Field(default=8, ge=2, le=16)
    primitive_poly: int = 0x11D
    k: int = pydantic.Field(default=188, ge=1)
    variant: Variant = Variant.SHORTENED
    shorten: int = pydantic.Field(default=51, ge=0)

    def build(self) -> RsSpec:
        return _build_spec(self.w, self.primitive_poly, self.k, self.variant.value, self.shorten)

    @classmethod
    def from_spec(cls, spec: RsSpec) -> "CodeParams":
        return cls(w=spec.field.w, primitive_poly=spec.field.primitive_poly, k=spec.k,
                   variant=spec.variant, shorten=spec.shorten)


class SimConfig(pydantic.BaseModel):
    model_config = pydantic.ConfigDict(frozen=True)

    code: CodeParams = CodeParams()
    l: int = pydantic.Field(default=16, ge=1)
    mode: ChannelMode
    trials: int = pydantic.Field(ge=1)
    master_seed: int = pydantic.Field(default=1, ge=0, lt=1 << 64)
    decoder: Literal["collab", "incremental", "indep"] = "collab"
    check_cols: int = pydantic.Field(default=2, ge=0)
    record_miscorrections: bool = True


class SimStats(pydantic.BaseModel):
    trials: int = 0
    successes: int = 0
    failures: Dict[str, int] = pydantic.Field(default_factory=dict)
    miscorrections: int = 0
    wall_time: float = 0.0
    miscorrection_trials: List[int] = pydantic.Field(default_factory=list)

    @property
    def detected_failures(self) -> int:
        return sum(self.failures.values())

    @property
    def non_successes(self) -> int:
        return self.detected_failures + self.miscorrections

    @property
    def fer(self) -> float:
        return self.non_successes / self.trials if self.trials else 0.0

    @property
    def fer_interval(self) -> Tuple[float, float]:
        return wilson_interval(self.non_successes, self.trials)

    @property
    def miscorrection_rate(self) -> float:
        return self.miscorrections / self.trials if self.trials else 0.0

    def merge(self, other: "SimStats") -> "SimStats":
        failures = dict(self.failures)
        for reason, count in other.failures.items():
            failures[reason] = failures.get(reason, 0) + count
        return SimStats(
            trials=self.trials + other.trials,
            successes=self.successes + other.successes,
            failures=failures,
            miscorrections=self.miscorrections + other.miscorrections,
            wall_time=self.wall_time + other.wall_time,
            miscorrection_trials=sorted(self.miscorrection_trials + other.miscorrection_trials),
        )

    def tallies(self) -> dict:
        """Everything except wall time; equal for equal configs."""
        return {
            "trials": self.trials,
            "successes": self.successes,
            "failures": dict(sorted(self.failures.items())),
            "miscorrections": self.miscorrections,
            "miscorrection_trials": list(self.miscorrection_trials),
        }


class SweepRow(pydantic.BaseModel):
    p_i: float
    fer_sim: float
    fer_ci_lo: float
    fer_ci_hi: float
    fer_bound: float
    fer_err_bound: float
    trials: int


# ----- trials ----------------------------------------------------------------

def _decode(sim_config: SimConfig, spec: RsSpec, received):
    if sim_config.decoder == "incremental":
        return decode_incremental(received, spec, sim_config.l, sim_config.check_cols)
    if sim_config.decoder == "indep":
        return decode_columns(received, spec)
    return decode(received, spec, sim_config.l)


def run_trial(sim_config: SimConfig, spec: RsSpec, index: int) -> Optional[str]:
    """Run one trial; returns None for success, the failure reason, or "miscorrection"."""
    rng = np.random.Generator(np.random.PCG64(derive_trial_seed(sim_config.master_seed, index)))
    info = rng.integers(0, spec.q, size=(spec.k, sim_config.l), dtype=np.int64)
    word = encode_irs(info, spec)
    pattern = sample_error_pattern(spec.n, sim_config.l, sim_config.mode, rng, spec.field)
    outcome = _decode(sim_config, spec, apply_errors(word, pattern))

    if isinstance(outcome, DetectedFailure):
        return outcome.reason.value
    if not np.array_equal(outcome.codeword.data, word.data):
        return "miscorrection"
    if outcome.support != pattern.support:
        raise SimulationInvariantError(
            f"trial {index}: correct word recovered from support {outcome.support}, planted {pattern.support}"
        )
    return None


def _run_chunk(sim_config: SimConfig, start: int, stop: int) -> SimStats:
    spec = sim_config.code.build()
    t0 = time.perf_counter()
    successes = 0
    failures: Dict[str, int] = {}
    mis_trials: List[int] = []
    for index in range(start, stop):
        verdict = run_trial(sim_config, spec, index)
        if verdict is None:
            successes += 1
        elif verdict == "miscorrection":
            mis_trials.append(index)
        else:
            failures[verdict] = failures.get(verdict, 0) + 1
    return SimStats(
        trials=stop - start,
        successes=successes,
        failures=failures,
        miscorrections=len(mis_trials),
        wall_time=time.perf_counter() - t0,
        miscorrection_trials=mis_trials if sim_config.record_miscorrections else [],
    )


def _chunks(trials: int, size: int) -> List[Tuple[int, int]]:
    return [(s, min(s + size, trials)) for s in range(0, trials, size)]


def run(sim_config: SimConfig, workers: int = 1, show_progress: Optional[bool] = None,
        chunk_size: Optional[int] = None) -> SimStats:
    if show_progress is None:
        show_progress = config.SHOW_PROGRESS and sys.stderr.isatty()
    chunk_size = chunk_size or config.CHUNK_SIZE
    chunks = _chunks(sim_config.trials, chunk_size)

    logger.info(f"Simulating {sim_config.trials} trials ({sim_config.decoder}, mode={sim_config.mode.kind}, "
                f"workers={workers})")
    t0 = time.perf_counter()
    total = SimStats()
    with tqdm(total=sim_config.trials, desc="Trials", unit="trial", file=sys.stderr,
              disable=not show_progress) as bar:
        if workers <= 1:
            for start, stop in chunks:
                total = total.merge(_run_chunk(sim_config, start, stop))
                bar.update(stop - start)
        else:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                futures = [pool.submit(_run_chunk, sim_config, start, stop) for start, stop in chunks]
                for future in as_completed(futures):
                    part = future.result()
                    total = total.merge(part)
                    bar.update(part.trials)

    total = total.model_copy(update={"wall_time": time.perf_counter() - t0})
    logger.info(f"✅ {total.trials} trials: {total.successes} successes, {total.detected_failures} detected "
                f"failures, {total.miscorrections} miscorrections ({total.wall_time:.2f}s)")
    return total


def _reference_bounds(decoder: str, inp: BoundsInput) -> Tuple[float, float]:
    # a column-wise miscorrection also needs more than t_half hit rows
    if decoder == "indep":
        indep = fer_independent_value(inp).value
        return indep, indep
    return fer_bound(inp), fer_error_bound(inp)


def sweep(sim_config: SimConfig, grid: Sequence[float], workers: int = 1,
          show_progress: Optional[bool] = None) -> List[SweepRow]:
    """One Bernoulli-row run per grid point, next to the analytical FER and FER_e
    (the column-wise curve for the indep decoder)."""
    if not isinstance(sim_config.mode, BernoulliRows):
        raise ValueError(f"sweep needs the bernoulli channel mode, got {sim_config.mode.kind}")

    spec = sim_config.code.build()
    rows = []
    for idx, p in enumerate(grid):
        point = sim_config.model_copy(update={
            "mode": BernoulliRows(p=float(p)),
            "master_seed": derive_trial_seed(sim_config.master_seed, idx),
        })
        stats = run(point, workers=workers, show_progress=show_progress)
        lo, hi = stats.fer_interval
        fer_ref, fer_err_ref = _reference_bounds(sim_config.decoder, BoundsInput.for_spec(spec, sim_config.l, float(p)))
        rows.append(SweepRow(p_i=float(p), fer_sim=stats.fer, fer_ci_lo=lo, fer_ci_hi=hi,
                             fer_bound=fer_ref, fer_err_bound=fer_err_ref, trials=stats.trials))
        logger.info(f"p_i={p:.6e}: FER {stats.fer:.6e} (bound {rows[-1].fer_bound:.6e})")
    return rows


def bounds_table(spec: RsSpec, l: int, grid: Sequence[float]):
    return fer_curve(BoundsInput.for_spec(spec, l), grid)


# ----- CSV -------------------------------------------------------------------

def _fmt(x: float) -> str:
    return "%.6e" % x


def write_csv(rows: Sequence[SweepRow], stream) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in rows:
        writer.writerow([_fmt(r.p_i), _fmt(r.fer_sim), _fmt(r.fer_ci_lo), _fmt(r.fer_ci_hi),
                         _fmt(r.fer_bound), _fmt(r.fer_err_bound), r.trials])


def write_bounds_csv(rows: Sequence[BoundRow], stream) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(BOUNDS_CSV_HEADER)
    for row in rows:
        writer.writerow([_fmt(x) for x in row])


def write_stats_csv(stats: SimStats, stream) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(STATS_CSV_HEADER)
    lo, hi = stats.fer_interval
    reasons = ";".join(f"{k}:{v}" for k, v in sorted(stats.failures.items()))
    writer.writerow([stats.trials, stats.successes, stats.detected_failures, stats.miscorrections,
                     _fmt(stats.fer), _fmt(lo), _fmt(hi), reasons])
