"""Floating-point q-Pochhammer symbols and basic hypergeometric series.

Used to check the two summation/transformation lemmas and every line of the
derivation of the master identity at generic complex parameters.  All
products and sums are evaluated directly from their definitions; nothing is
simplified algebraically before evaluation.
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import DegenerateDenominator, NonConvergent

log = logging.getLogger(__name__)

__all__ = [
    "DEFAULT_FLOOR",
    "TAIL_EPS",
    "pochhammer_num",
    "phi",
    "phi_with_tail",
    "check_chu_vandermonde",
    "check_ktw",
    "ktw_sides",
    "chain_guard",
    "CHAIN_LABELS",
    "proof_chain",
    "master_sum_num",
    "master_closed_num",
    "ChainReport",
    "TrialSummary",
    "sample_chu",
    "sample_ktw",
    "sample_chain",
    "run_trials",
]

DEFAULT_FLOOR = 1e-3
TAIL_EPS = 1e-17
STREAK = 5
MAX_TERMS = 200_000
MAX_REJECTIONS = 1000
MAX_Q = 0.9

INF = math.inf


# products ---------------------------------------------------------------


def pochhammer_num(a: complex, q: complex, n: float = INF, tail_eps: float = TAIL_EPS) -> complex:
    """``(a; q)_n``; ``n`` may be ``math.inf`` (requires ``|q| < 1``).

    The infinite product stops once ``|a q^k|`` drops below ``tail_eps``; the
    remaining factors then differ from 1 by less than
    ``tail_eps / (1 - |q|)`` in total.
    """
    if n == 0 or a == 0:
        return 1.0 + 0j
    if n != INF:
        out = 1.0 + 0j
        x = complex(a)
        for _ in range(int(n)):
            out *= 1 - x
            x *= q
        return out
    if abs(q) >= 1:
        raise NonConvergent(f"infinite product needs |q| < 1, got |q| = {abs(q):.3g}")
    out = 1.0 + 0j
    x = complex(a)
    for _ in range(MAX_TERMS):
        if abs(x) < tail_eps:
            return out
        out *= 1 - x
        x *= q
    raise NonConvergent("infinite product did not reach the tail threshold")


def _guard(x: complex, q: complex, n: float, floor: float, what: str) -> None:
    """Raise if any factor ``1 - x q^k`` (k < n) is smaller than ``floor``."""
    if x == 0:
        return
    k = 0
    y = complex(x)
    while k < n:
        if abs(1 - y) < floor:
            raise DegenerateDenominator(
                f"{what}: factor 1 - ({x:.6g})*q^{k} has modulus {abs(1 - y):.3g}")
        # past this point |1 - y| >= 1 - |y| > floor
        if n == INF and abs(y) < 1 - floor:
            return
        y *= q
        k += 1


# series -----------------------------------------------------------------


def _termination_index(params: Sequence[complex], q: complex, kmax: int = 400) -> int | None:
    """Smallest N with some parameter equal to q^-N, so terms past index N vanish."""
    best = None
    for a in params:
        if a == 0:
            continue
        y = complex(a)
        for k in range(kmax):
            if abs(1 - y) <= 1e-10:
                best = k if best is None else min(best, k)
                break
            y *= q
    return best


def phi_with_tail(num: Sequence[complex], den: Sequence[complex], q: complex, z: complex,
                  tail_eps: float = TAIL_EPS, floor: float = DEFAULT_FLOOR) -> tuple[complex, float]:
    """``r+1 phi r`` with a bound on the discarded tail.

    Terminating series (a numerator parameter equal to ``q^-N``) are summed
    over exactly ``N + 1`` terms and have zero tail.  Otherwise ``|z| < 1``
    is required; summation stops once the term stays below ``tail_eps``
    relative to the partial sum for ``STREAK`` consecutive terms, and a
    geometric bound on the remainder is returned.
    """
    q, z = complex(q), complex(z)
    if not 0 < abs(q) < 1:
        raise NonConvergent(f"need 0 < |q| < 1, got {abs(q):.3g}")
    if len(num) != len(den) + 1:
        raise ValueError("phi needs exactly one more numerator than denominator parameter")
    stop = _termination_index(num, q)
    if stop is None and abs(z) >= 1:
        raise NonConvergent(f"nonterminating series with |z| = {abs(z):.3g} >= 1")

    lower = list(den) + [q]
    upper = [complex(a) for a in num]
    up_q = [complex(a) for a in upper]
    lo_q = [complex(b) for b in lower]
    term = 1.0 + 0j
    total = term
    streak = 0
    prev = abs(term)
    limit = stop if stop is not None else MAX_TERMS
    for k in range(limit):
        ratio_den = 1.0 + 0j
        for b in lo_q:
            f = 1 - b
            if abs(f) < floor:
                raise DegenerateDenominator(f"denominator factor {f:.3g} at index {k}")
            ratio_den *= f
        ratio_num = 1.0 + 0j
        for a in up_q:
            ratio_num *= 1 - a
        term = term * ratio_num / ratio_den * z
        total += term
        up_q = [a * q for a in up_q]
        lo_q = [b * q for b in lo_q]
        if stop is not None:
            continue
        mag = abs(term)
        if mag <= tail_eps * max(abs(total), 1e-300):
            streak += 1
            if streak >= STREAK:
                rho = mag / prev if prev > 0 else 0.0
                tail = mag * rho / (1 - rho) if rho < 1 else math.inf
                return total, tail
        else:
            streak = 0
        prev = mag
    if stop is not None:
        return total, 0.0
    raise NonConvergent(f"no convergence within {MAX_TERMS} terms")


def phi(num: Sequence[complex], den: Sequence[complex], q: complex, z: complex,
        tail_eps: float = TAIL_EPS, floor: float = DEFAULT_FLOOR) -> complex:
    """Basic hypergeometric series ``r+1 phi r(num; den; q, z)``."""
    return phi_with_tail(num, den, q, z, tail_eps, floor)[0]


def _rel(x: complex, y: complex) -> float:
    return abs(x - y) / max(1.0, abs(y))


# lemma checks -----------------------------------------------------------


def check_chu_vandermonde(a: complex, c: complex, q: complex, n: int,
                          floor: float = DEFAULT_FLOOR) -> float:
    """Relative error of the terminating q-Chu-Vandermonde sum.

    Compares ``2phi1(a, q^-n; c; q, c q^n / a)`` with ``(c/a; q)_n / (c; q)_n``.
    """
    if n == 0:
        return 0.0
    if a == 0:
        raise DegenerateDenominator("a = 0 makes the argument c q^n / a infinite")
    _guard(c, q, n, floor, "(c;q)_n")
    lhs = phi([a, q ** -n], [c], q, c * q ** n / a, floor=floor)
    rhs = pochhammer_num(c / a, q, n) / pochhammer_num(c, q, n)
    return _rel(lhs, rhs)


def ktw_sides(a, b, c, d, e, q, floor: float = DEFAULT_FLOOR) -> tuple[complex, complex]:
    """Both sides of the q-Kummer-Thomae-Whipple transformation."""
    for x, name in ((d, "(d;q)"), (e, "(e;q)"), (d * e / (b * c), "(de/bc;q)"),
                    (d * e / (a * b * c), "(de/abc;q)")):
        _guard(x, q, INF, floor, name)
    lhs = phi([a, b, c], [d, e], q, d * e / (a * b * c), floor=floor)
    pre = (pochhammer_num(e / a, q) * pochhammer_num(d * e / (b * c), q)
           / (pochhammer_num(e, q) * pochhammer_num(d * e / (a * b * c), q)))
    rhs = pre * phi([a, d / b, d / c], [d, d * e / (b * c)], q, e / a, floor=floor)
    return lhs, rhs


def check_ktw(a, b, c, d, e, q, floor: float = DEFAULT_FLOOR) -> float:
    """Relative error of the 3phi2 transformation at the given parameters."""
    lhs, rhs = ktw_sides(a, b, c, d, e, q, floor)
    return _rel(lhs, rhs)


# master identity ---------------------------------------------------------


def master_sum_num(alpha: complex, beta: complex, q: complex, t: int) -> complex:
    """Defining sum of S(alpha, beta; q; t), summed until the tail is negligible."""
    total = 0j
    streak = 0
    qr = complex(q)
    for r in range(1, MAX_TERMS):
        num = 1.0 + 0j
        x = alpha * qr
        for _ in range(t - 1):
            num *= 1 - x
            x *= q
        den = 1.0 + 0j
        y = beta * qr
        for _ in range(t + 1):
            den *= 1 - y
            y *= q
        term = num / den * qr
        total += term
        if abs(term) <= TAIL_EPS * max(abs(total), 1e-300):
            streak += 1
            if streak >= STREAK:
                return total
        else:
            streak = 0
        qr *= q
    raise NonConvergent("defining sum did not converge")


def master_closed_num(alpha: complex, beta: complex, q: complex, t: int) -> complex:
    """Closed form of S(alpha, beta; q; t)."""
    return (q / ((beta * q - alpha) * (1 - q ** t))
            * (pochhammer_num(alpha, q, t) / pochhammer_num(beta * q, q, t) - 1))


def _sum_until_small(term: Callable[[int], complex], start: int = 0) -> complex:
    total = 0j
    streak = 0
    for r in range(start, start + MAX_TERMS):
        x = term(r)
        total += x
        if abs(x) <= TAIL_EPS * max(abs(total), 1e-300):
            streak += 1
            if streak >= STREAK:
                return total
        else:
            streak = 0
    raise NonConvergent("series did not converge")


CHAIN_LABELS = (
    "defining sum",
    "pochhammer-ratio sum",
    "reindexed sum",
    "prefactored 3phi2",
    "after 3phi2 transformation",
    "explicit terminating series",
    "index-shifted series",
    "prefactored 2phi1",
    "closed form",
)


@dataclass
class ChainReport:
    alpha: complex
    beta: complex
    q: complex
    t: int
    values: list[complex] = field(default_factory=list)
    max_pairwise_deviation: float = 0.0
    ktw_error: float | None = None
    chu_error: float | None = None

    @property
    def labels(self) -> tuple[str, ...]:
        return CHAIN_LABELS


def _deviation(values: Sequence[complex]) -> float:
    scale = max([1.0] + [abs(v) for v in values])
    return max((abs(x - y) for i, x in enumerate(values) for y in values[i + 1:]),
               default=0.0) / scale


def chain_guard(alpha: complex, beta: complex, q: complex, t: int,
                floor: float = DEFAULT_FLOOR) -> None:
    """Reject parameters where some factor in the derivation nearly vanishes."""
    if abs(q) > 0.6 or q == 0:
        raise NonConvergent(f"derivation check needs 0 < |q| <= 0.6, got {abs(q):.3g}")
    if abs(beta) < floor:
        raise DegenerateDenominator("beta = 0: the transformed series involve alpha / beta")
    _guard(alpha, q, INF, floor, "(alpha;q)")
    _guard(beta, q, INF, floor, "(beta;q)")
    if abs(1 - alpha / (beta * q)) < floor:
        raise DegenerateDenominator("alpha too close to beta*q")


def proof_chain(alpha: complex, beta: complex, q: complex, t: int,
                floor: float = DEFAULT_FLOOR, cross_check: bool = True) -> ChainReport:
    """Evaluate each line of the derivation of the master identity independently.

    With ``cross_check`` (and ``alpha != 0``) the two lemma applications are
    also checked at the parameter values the derivation feeds them.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    chain_guard(alpha, beta, q, t, floor)
    a, b = complex(alpha), complex(beta)
    q = complex(q)
    P = pochhammer_num

    v1 = master_sum_num(a, b, q, t)

    v2 = _sum_until_small(
        lambda r: P(a, q, r + t - 1) * P(b, q, r) / (P(a, q, r) * P(b, q, r + t + 1)) * q ** r,
        start=1)

    v3 = _sum_until_small(
        lambda r: P(a, q, r + t) * P(b, q, r + 1) / (P(a, q, r + 1) * P(b, q, r + t + 2))
        * q ** (r + 1))

    pre4 = q * P(a * q, q, t - 1) / P(b * q, q, t + 1)
    v4 = pre4 * phi([q, b * q, a * q ** t], [a * q, b * q ** (t + 2)], q, q, floor=floor)

    pre5 = (pre4 * P(b * q ** (t + 1), q) * P(q * q, q)
            / (P(b * q ** (t + 2), q) * P(q, q)))
    v5 = pre5 * phi([q, a / b, q ** (1 - t)], [a * q, q * q], q, b * q ** (t + 1), floor=floor)

    pre6 = q * P(a * q, q, t - 1) / ((1 - q) * P(b * q, q, t))
    zz = b * q ** (t + 1)
    # (q^(1-t); q)_r vanishes for r >= t
    v6 = pre6 * sum(P(a / b, q, r) * P(q ** (1 - t), q, r) / (P(a * q, q, r) * P(q * q, q, r))
                    * zz ** r for r in range(t))

    pre7 = pre6 * (1 - a) * (1 - q) / (zz * (1 - a / (b * q)) * (1 - q ** -t))
    v7 = pre7 * sum(P(a / (b * q), q, r + 1) * P(q ** -t, q, r + 1)
                    / (P(a, q, r + 1) * P(q, q, r + 1)) * zz ** (r + 1) for r in range(t))

    pre8 = q / ((b * q - a) * (q ** t - 1)) * P(a, q, t) / P(b * q, q, t)
    v8 = pre8 * (phi([a / (b * q), q ** -t], [a], q, zz, floor=floor) - 1)

    v9 = master_closed_num(a, b, q, t)

    values = [v1, v2, v3, v4, v5, v6, v7, v8, v9]
    report = ChainReport(alpha, beta, q, t, values, _deviation(values))
    # at alpha = 0 the lemma instances sit at c = d = 0, a limit the lemmas do not cover
    if cross_check and a != 0:
        report.ktw_error = check_ktw(q, b * q, a * q ** t, a * q, b * q ** (t + 2), q, floor)
        report.chu_error = check_chu_vandermonde(a / (b * q), a, q, t, floor)
    return report


# seeded sampling ---------------------------------------------------------


def _rand_complex(rng: np.random.Generator, lo: float, hi: float) -> complex:
    return cmath.rect(rng.uniform(lo, hi), rng.uniform(-math.pi, math.pi))


def sample_chu(rng: np.random.Generator) -> dict:
    """Parameters for the terminating 2phi1 sum: ``|q| <= 0.6``, ``n <= 8``."""
    return {
        "a": _rand_complex(rng, 0.2, 2.0),
        "c": _rand_complex(rng, 0.2, 2.0),
        "q": _rand_complex(rng, 0.2, 0.6),
        "n": int(rng.integers(0, 9)),
    }


def sample_ktw(rng: np.random.Generator) -> dict:
    """Parameters for the 3phi2 transformation with both arguments of modulus < 0.9."""
    p = {k: _rand_complex(rng, 0.3, 1.5) for k in "abc"}
    p.update({k: _rand_complex(rng, 0.1, 0.9) for k in "de"})
    p["q"] = _rand_complex(rng, 0.1, 0.6)
    if abs(p["d"] * p["e"] / (p["a"] * p["b"] * p["c"])) >= 0.9 or abs(p["e"] / p["a"]) >= 0.9:
        raise NonConvergent("sample outside the convergence region")
    return p


def sample_chain(rng: np.random.Generator) -> dict:
    """Parameters for the derivation chain: ``|q| <= 0.6``, ``t <= 6``, ``beta != 0``."""
    return {
        "alpha": _rand_complex(rng, 0.1, 2.0),
        "beta": _rand_complex(rng, 0.1, 2.0),
        "q": _rand_complex(rng, 0.15, 0.6),
        "t": int(rng.integers(1, 7)),
    }


def _chu_error(p):
    return check_chu_vandermonde(p["a"], p["c"], p["q"], p["n"])


def _ktw_error(p):
    return check_ktw(p["a"], p["b"], p["c"], p["d"], p["e"], p["q"])


def _chain_error(p):
    rep = proof_chain(p["alpha"], p["beta"], p["q"], p["t"])
    return max(e for e in (rep.max_pairwise_deviation, rep.ktw_error, rep.chu_error)
               if e is not None)


TRIALS = {
    "chu": (sample_chu, _chu_error),
    "ktw": (sample_ktw, _ktw_error),
    "chain": (sample_chain, _chain_error),
}


@dataclass
class TrialSummary:
    kind: str
    seed: int
    errors: list[float]
    samples: list[dict]
    rejections: int

    @property
    def max_error(self) -> float:
        return max(self.errors) if self.errors else 0.0

    @property
    def worst(self) -> int:
        return int(np.argmax(self.errors)) if self.errors else -1


def run_trials(kind: str, trials: int, seed: int) -> TrialSummary:
    """Seeded batch of random checks; each sample has its own child generator.

    A sample whose draw fails a convergence or genericity guard is redrawn
    from the same child generator, at most ``MAX_REJECTIONS`` times.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    sampler, measure = TRIALS[kind]
    children = np.random.SeedSequence(seed).spawn(trials)
    errors, samples, rejected = [], [], 0
    for i, child in enumerate(children):
        rng = np.random.default_rng(child)
        for attempt in range(MAX_REJECTIONS + 1):
            try:
                p = sampler(rng)
                err = measure(p)
            except (DegenerateDenominator, NonConvergent) as exc:
                rejected += 1
                log.debug("%s sample %d attempt %d rejected: %s", kind, i, attempt, exc)
                continue
            break
        else:
            raise RuntimeError(f"{kind} sample {i}: {MAX_REJECTIONS} rejections in a row")
        errors.append(err)
        samples.append(p)
    if rejected:
        log.info("%s: %d rejected draws over %d samples", kind, rejected, trials)
    return TrialSummary(kind, seed, errors, samples, rejected)
