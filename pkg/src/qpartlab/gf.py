"""q-Pochhammer products, the master sum S and the partition generating functions.

The master sum, for a width ``t`` and base ``Q = q**d``, is

    S(alpha, beta; Q; t) = sum_{r >= 1} Q**r * prod_{j=0}^{t-2} (1 - alpha*Q**(r+j))
                                        / prod_{j=0}^{t}   (1 - beta*Q**(r+j))

and it has the closed form

    S = Q / ((beta*Q - alpha) * (1 - Q**t)) * ((alpha; Q)_t / (beta*Q; Q)_t - 1).

Here alpha and beta are restricted to monomials ``c * z**m * q**e`` so that
everything stays inside Z[z]((q)).  The closed form is checked with its
denominator ``(beta*Q - alpha)(1 - Q**t)`` cleared.

The four generating functions are built straight from their closed
forms (general inversion), while :func:`eval_S` sums term by term with
binomial division.  The two paths share only the series ring.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import InadmissibleParameters, NegativeExponentFactor
from .series import QSeries, ZPoly, invert_unit

__all__ = [
    "Monomial",
    "SParams",
    "pochhammer",
    "s_term",
    "eval_S",
    "closed_form_cleared",
    "gf_bounded_diff",
    "gf_overpartition",
    "gf_distinct",
    "gf_odd",
    "SPECIALIZATIONS",
    "master_params",
    "via_master",
    "direct_gf",
    "monomial_grid",
]


@dataclass(frozen=True)
class Monomial:
    """``c * z**z_pow * q**q_pow`` with ``c`` in {-1, 0, 1}."""

    c: int
    z_pow: int = 0
    q_pow: int = 0

    def __post_init__(self):
        if self.c not in (-1, 0, 1):
            raise ValueError(f"monomial coefficient must be -1, 0 or 1, got {self.c}")
        if self.z_pow < 0:
            raise ValueError("z exponent must be nonnegative")
        if self.c == 0:
            object.__setattr__(self, "z_pow", 0)
            object.__setattr__(self, "q_pow", 0)

    @classmethod
    def parse(cls, text: str) -> "Monomial":
        """Read forms such as ``0``, ``1``, ``-q``, ``-z*q^2``, ``q^-1``."""
        s = text.replace(" ", "")
        if s == "0":
            return cls(0)
        c = 1
        if s.startswith("-"):
            c, s = -1, s[1:]
        elif s.startswith("+"):
            s = s[1:]
        z_pow = q_pow = 0
        for factor in s.split("*"):
            if factor in ("", "1"):
                continue
            base, _, exp = factor.partition("^")
            k = int(exp) if exp else 1
            if base == "z":
                z_pow += k
            elif base == "q":
                q_pow += k
            else:
                raise ValueError(f"cannot parse monomial {text!r}")
        return cls(c, z_pow, q_pow)

    def is_zero(self) -> bool:
        return self.c == 0

    def times_q(self, k: int) -> "Monomial":
        if self.c == 0:
            return self
        return Monomial(self.c, self.z_pow, self.q_pow + k)

    def series(self, valid_to: int) -> QSeries:
        return QSeries.monomial(self.c, self.z_pow, self.q_pow, valid_to)

    def __str__(self):
        if self.c == 0:
            return "0"
        parts = []
        if self.z_pow:
            parts.append("z" if self.z_pow == 1 else f"z^{self.z_pow}")
        if self.q_pow:
            parts.append("q" if self.q_pow == 1 else f"q^{self.q_pow}")
        body = "*".join(parts) or "1"
        return ("-" if self.c < 0 else "") + body


@dataclass(frozen=True)
class SParams:
    """Arguments of the master sum: parameters alpha, beta, base q**d, width t."""

    alpha: Monomial
    beta: Monomial
    d: int = 1
    t: int = 1

    def __post_init__(self):
        if self.d < 1:
            raise InadmissibleParameters("base power d must be >= 1")
        if self.t < 1:
            raise InadmissibleParameters("width t must be >= 1")

    @property
    def admissible(self) -> bool:
        # every denominator factor 1 - beta*q^(e + d*k), k >= 1, has positive exponent
        return self.beta.is_zero() or self.beta.q_pow + self.d >= 1

    @property
    def degenerate(self) -> bool:
        """True when alpha equals beta*q**d, where the uncleared closed form is undefined."""
        return self.alpha == self.beta.times_q(self.d)

    def check(self) -> None:
        if not self.admissible:
            raise InadmissibleParameters(
                f"beta={self.beta} with d={self.d} gives a factor 1 - beta*q^k with k <= 0")

    def __str__(self):
        return f"(alpha={self.alpha}, beta={self.beta}, d={self.d}, t={self.t})"


def pochhammer(a: Monomial, d: int, n: int, order: int) -> QSeries:
    """``(a; q**d)_n`` as an exact polynomial known through ``order``."""
    out = QSeries.one(order)
    if a.is_zero():
        return out
    for k in range(n):
        e = a.q_pow + d * k
        if e < 0:
            raise NegativeExponentFactor(f"factor 1 - ({a})*q^{d * k} has negative q-power")
        out = out.times_binomial(a.c, a.z_pow, e)
    return out


def s_term(p: SParams, r: int, order: int) -> QSeries:
    """The r-th summand of the master sum, exact through ``order``."""
    p.check()
    if r < 1:
        raise ValueError("summation index starts at r = 1")
    d, a, b = p.d, p.alpha, p.beta
    out = QSeries.monomial(1, 0, d * r, order)
    if not a.is_zero():
        for j in range(p.t - 1):
            e = a.q_pow + d * (r + j)
            if e < 0:
                raise NegativeExponentFactor(
                    f"numerator factor 1 - ({a})*q^{d * (r + j)} has negative q-power")
            out = out.times_binomial(a.c, a.z_pow, e)
    if not b.is_zero():
        for j in range(p.t + 1):
            out = out.over_binomial(b.c, b.z_pow, b.q_pow + d * (r + j))
    return out


def eval_S(p: SParams, order: int) -> QSeries:
    """The master sum through ``order``.

    Each summand is divisible by q**(d*r) (numerator and denominator factors
    all have nonnegative exponents and unit constant terms), so summing
    r = 1 .. order // d is exact.
    """
    p.check()
    total = QSeries.zero(order)
    for r in range(1, order // p.d + 1):
        total = total + s_term(p, r, order)
    return total


def closed_form_cleared(p: SParams, order: int) -> tuple[QSeries, QSeries]:
    """Both sides of the master identity with denominators cleared.

    Returns ``(lhs, rhs)`` exact through ``order`` where::

        lhs = (beta*Q - alpha) * (1 - Q**t) * S
        rhs = Q * ((alpha; Q)_t / (beta*Q; Q)_t - 1)
    """
    p.check()
    d, t = p.d, p.t
    bq = p.beta.times_q(d)
    low = min([m.q_pow for m in (bq, p.alpha) if not m.is_zero()] + [0])
    extra = -low
    top = order + extra + d * t + 1
    prefactor = bq.series(top) - p.alpha.series(top)
    prefactor = prefactor.times_binomial(1, 0, d * t)
    s = eval_S(p, order + extra)
    lhs = (prefactor * s).truncate(order)

    ratio = pochhammer(p.alpha, d, t, order) * invert_unit(pochhammer(bq, d, t, order), order)
    rhs = (ratio - 1).shift(d).truncate(order)
    return lhs, rhs


def _over_one_minus_qk(s: QSeries, k: int, order: int) -> QSeries:
    one_minus = QSeries.one(order).times_binomial(1, 0, k)
    return (s * invert_unit(one_minus, order)).truncate(order)


def gf_bounded_diff(t: int, order: int) -> QSeries:
    """Partitions with largest minus smallest part at most ``t``."""
    if t < 1:
        raise ValueError("t must be >= 1")
    inv = invert_unit(pochhammer(Monomial(1, 0, 1), 1, t, order), order)
    return _over_one_minus_qk(inv - 1, t, order)


def gf_overpartition(t: int, order: int) -> QSeries:
    """Overpartitions with bounded difference; z marks overlined parts."""
    if t < 1:
        raise ValueError("t must be >= 1")
    num = pochhammer(Monomial(-1, 1, 1), 1, t, order)
    inv = invert_unit(pochhammer(Monomial(1, 0, 1), 1, t, order), order)
    return _over_one_minus_qk(num * inv - 1, t, order)


def gf_distinct(t: int, order: int) -> QSeries:
    """Partitions into distinct parts with largest minus smallest at most ``t``."""
    if t < 0:
        raise ValueError("t must be >= 0")
    prod = pochhammer(Monomial(-1, 0, 1), 1, t + 1, order)
    return _over_one_minus_qk(prod - 1, t + 1, order)


def gf_odd(t: int, order: int) -> QSeries:
    """Partitions into odd parts with largest minus smallest at most ``2t``.

    The same series counts a window of ``2t + 1``, since two odd parts
    never differ by an odd amount.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    inv = invert_unit(pochhammer(Monomial(1, 0, 1), 2, t, order), order)
    return _over_one_minus_qk(inv - 1, 2 * t, order)


# specializations of the master sum -------------------------------------

# name -> (alpha, beta, d, width offset, external factor, q-shift)
SPECIALIZATIONS = {
    "bk": (Monomial(0), Monomial(1), 1, 0, ZPoly((1,)), 0),
    "cy": (Monomial(-1, 1, 1), Monomial(1), 1, 0, ZPoly((1, 1)), 0),
    "pdt": (Monomial(-1, 0, 1), Monomial(0), 1, 1, ZPoly((1,)), 0),
    "pot": (Monomial(0), Monomial(1, 0, -1), 2, 0, ZPoly((1,)), -1),
}

_DIRECT = {
    "bk": gf_bounded_diff,
    "cy": gf_overpartition,
    "pdt": gf_distinct,
    "pot": gf_odd,
}


def master_params(name: str, t: int) -> SParams:
    alpha, beta, d, dt, _, _ = SPECIALIZATIONS[name]
    return SParams(alpha, beta, d, t + dt)


def via_master(name: str, t: int, order: int) -> QSeries:
    """A partition generating function obtained by specializing the master sum.

    ``bk``: S(0, 1; q; t).  ``cy``: (1 + z) S(-zq, 1; q; t).
    ``pdt``: S(-q, 0; q; t + 1).  ``pot``: q**-1 S(0, q**-1; q**2; t).
    """
    _, _, _, _, factor, shift = SPECIALIZATIONS[name]
    s = eval_S(master_params(name, t), order - shift)
    return s.scale(factor).shift(shift)


def direct_gf(name: str, t: int, order: int) -> QSeries:
    return _DIRECT[name](t, order)


def monomial_grid(t_values=range(1, 7), d_values=(1, 2)):
    """Admissible parameter sets over the standard test grid.

    alpha ranges over 0, +-q**a and -z*q**a (0 <= a <= 2); beta over 0, 1, q**-1.
    """
    alphas = [Monomial(0)]
    for a in range(3):
        alphas += [Monomial(1, 0, a), Monomial(-1, 0, a), Monomial(-1, 1, a)]
    betas = [Monomial(0), Monomial(1), Monomial(1, 0, -1)]
    for alpha, beta, d, t in itertools.product(alphas, betas, d_values, t_values):
        p = SParams(alpha, beta, d, t)
        if p.admissible:
            yield p
