"""
Embedded invariant suite for the `selftest` subcommand.
Each check prints one ✅ / ❌ line; the run fails if any check fails.
"""

import itertools
import logging
import sys

import numpy as np

from bounds import BoundsInput, dependence_probability_exact, fer_curve, p_dependent_bound, p_failure_bound
from collab_decoder import VandermondeSystem, decode, decode_incremental
from gf import field_new
from gf_linalg import rank
from indep_decoder import decode_columns
from irs import ErrorPattern, apply_errors, encode_irs, independent_rows
from rs_code import Variant, generator_matrix, make_spec, parity_check_matrix

logger = logging.getLogger(__name__)


def clmul_reference(a: int, b: int, poly: int, w: int) -> int:
    """Carry-less multiply then reduce; independent of the tables."""
    product = 0
    for bit in range(w):
        if (b >> bit) & 1:
            product ^= a << bit
    for bit in range(2 * w - 2, w - 1, -1):
        if (product >> bit) & 1:
            product ^= poly << (bit - w)
    return product


def check_field_axioms(rng) -> bool:
    for w, poly in ((3, 0xB), (4, 0x13)):
        gf = field_new(w, poly)
        for a in range(gf.q):
            if a and gf.mul(a, gf.inv(a)) != 1:
                return False
            for b in range(gf.q):
                if gf.mul(a, b) != clmul_reference(a, b, poly, w):
                    return False
        a, b, c = (rng.integers(0, gf.q, 200) for _ in range(3))
        if np.any(gf.mul_arr(a, b ^ c) != gf.mul_arr(a, b) ^ gf.mul_arr(a, c)):
            return False
    return True


def check_duality() -> bool:
    for w, poly in ((3, 0xB), (4, 0x13)):
        gf = field_new(w, poly)
        for variant in (Variant.EXTENDED, Variant.CYCLIC):
            n = gf.q if variant == Variant.EXTENDED else gf.q - 1
            for k in range(1, n):
                spec = make_spec(gf, k, variant)
                product = gf.matmul(generator_matrix(spec, lifted=True), parity_check_matrix(spec).T)
                if product.any():
                    return False
    return True


def _planted(spec, l, support, rng, info=None):
    if info is None:
        info = rng.integers(0, spec.q, size=(spec.k, l))
    word = encode_irs(info, spec)
    rows = independent_rows(spec.field, len(support), l, rng)
    pattern = ErrorPattern(support=tuple(support), rows=rows)
    return word, pattern, apply_errors(word, pattern)


def check_theorem_one(rng, draws: int = 2) -> bool:
    """Every support of size 1..4 in GF(8), k=3, l=4 is corrected, with the direct lambda solve."""
    spec = make_spec(field_new(3, 0xB), 3)
    l = 4
    for f in range(1, spec.f_max(l) + 1):
        for support in itertools.combinations(range(spec.n), f):
            for _ in range(draws):
                word, pattern, received = _planted(spec, l, support, rng)
                outcome = decode(received, spec, l)
                if not outcome.ok or outcome.support != support or outcome.f_hat != f:
                    return False
                if not np.array_equal(outcome.codeword.data, word.data):
                    return False
                oracle = VandermondeSystem.from_support(spec, support).solve_lambda()
                if not np.array_equal(outcome.locator.lam, oracle):
                    return False
    return True


def check_beyond_half_distance(rng, instances: int = 20) -> bool:
    spec = make_spec(field_new(3, 0xB), 3)
    l = 4
    for _ in range(instances):
        support = tuple(sorted(rng.choice(spec.n, 4, replace=False).tolist()))
        word, pattern, received = _planted(spec, l, support, rng)
        collab = decode(received, spec, l)
        if not collab.ok or not np.array_equal(collab.codeword.data, word.data):
            return False
        beyond = (pattern.rows != 0).sum(axis=0).max() > spec.t_half
        indep = decode_columns(received, spec)
        if beyond and indep.ok and np.array_equal(indep.codeword.data, word.data):
            return False
    return True


def check_cyclic_dummy_row(rng, instances: int = 50) -> bool:
    spec = make_spec(field_new(3, 0xB), 3, Variant.CYCLIC)
    l = 4
    for _ in range(instances):
        f = int(rng.integers(1, spec.f_max(l) + 1))
        support = tuple(sorted(rng.choice(spec.n, f, replace=False).tolist()))
        while True:
            # the untransmitted evaluation p(0) = info[0] acts as one more error row
            info = rng.integers(0, spec.q, size=(spec.k, l))
            word, pattern, received = _planted(spec, l, support, rng, info)
            rows = np.vstack([info[:1], pattern.rows]) if info[0].any() else pattern.rows
            if rank(spec.field, rows) == rows.shape[0]:
                break
        outcome = decode(received, spec, l)
        if not outcome.ok or not np.array_equal(outcome.codeword.data, word.data):
            return False
    return True


def check_incremental_equivalence(rng, instances: int = 30) -> bool:
    spec = make_spec(field_new(4, 0x13), 7)
    l = 6
    for _ in range(instances):
        f = int(rng.integers(1, spec.f_max(l) + 1))
        support = tuple(sorted(rng.choice(spec.n, f, replace=False).tolist()))
        _, _, received = _planted(spec, l, support, rng)
        full = decode(received, spec, l)
        inc = decode_incremental(received, spec, l, check_cols=l)
        if full.ok != inc.ok:
            return False
        if full.ok and not np.array_equal(full.codeword.data, inc.codeword.data):
            return False
    return True


def check_bounds() -> bool:
    if abs(p_dependent_bound(2, 3, 8) - 9 / 512) > 1e-15:
        return False
    if dependence_probability_exact(8, 3, 2) * 511 != 7:
        return False
    if p_failure_bound(1, 16, 256, 15) != 0.0 or p_failure_bound(16, 16, 256, 15) != 1.0:
        return False
    curve = fer_curve(BoundsInput.for_code(204, 188, 16, 256), np.logspace(-3, -1, 7))
    fer = [row[1] for row in curve]
    return all(a <= b for a, b in zip(fer, fer[1:])) and all(row[2] <= row[1] for row in curve)


CHECKS = [
    ("Field axioms and table arithmetic", lambda rng: check_field_axioms(rng)),
    ("Duality G . H^T = 0", lambda rng: check_duality()),
    ("Collaborative decoding up to f_max, direct lambda solve", check_theorem_one),
    ("Correction beyond half the minimum distance", check_beyond_half_distance),
    ("Cyclic code with dummy row", check_cyclic_dummy_row),
    ("Incremental decoder matches full decoder", check_incremental_equivalence),
    ("Bound sanity", lambda rng: check_bounds()),
]


def run_selftest(seed: int = 1, stream=None) -> bool:
    """Run all checks and print one line per check."""
    stream = stream or sys.stdout
    rng = np.random.default_rng(seed)
    print("=" * 50, file=stream)
    print("🔍 IRS SELFTEST", file=stream)
    print("=" * 50, file=stream)

    all_ok = True
    for name, check in CHECKS:
        try:
            ok = bool(check(rng))
        except Exception as e:
            logger.error(f"Check '{name}' raised: {e}")
            ok = False
        print(f"{'✅' if ok else '❌'} {name}", file=stream)
        all_ok = all_ok and ok

    print("=" * 50, file=stream)
    print("✅ All checks passed" if all_ok else "❌ Some checks failed", file=stream)
    return all_ok
