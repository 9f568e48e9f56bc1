"""Exact truncated Laurent series in q with coefficients in Z[z].

A :class:`QSeries` stores a dense block of coefficients together with two
exponents: ``min_exp`` (everything below it is known to vanish) and
``valid_to`` (the last exponent whose coefficient is exact).  Every operation
propagates ``valid_to`` so a result never claims more precision than its
inputs support.

Internally the coefficients live in a 2-D ``numpy`` array of Python ints
(``dtype=object``): rows index powers of q, columns index powers of z.  This
keeps the arithmetic exact while letting numpy drive the inner loops.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import NotAUnit, OutOfValidRange

__all__ = [
    "ZPoly",
    "QSeries",
    "add",
    "mul",
    "invert_unit",
    "dilate",
    "coefficient",
    "first_mismatch",
]


@dataclass(frozen=True)
class ZPoly:
    """Polynomial in z with integer coefficients, ``coeffs[i]`` multiplying z**i."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = [int(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def coerce(cls, value: "ZPolyLike") -> "ZPoly":
        if isinstance(value, ZPoly):
            return value
        if isinstance(value, (int, np.integer)):
            return cls((int(value),))
        return cls(tuple(value))

    @classmethod
    def z(cls, power: int = 1) -> "ZPoly":
        return cls((0,) * power + (1,))

    @property
    def degree(self) -> int:
        """Degree in z; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other):
        other = ZPoly.coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return ZPoly(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return ZPoly(tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        return self + (-ZPoly.coerce(other))

    def __rsub__(self, other):
        return ZPoly.coerce(other) - self

    def __mul__(self, other):
        other = ZPoly.coerce(other)
        if not self.coeffs or not other.coeffs:
            return ZPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return ZPoly(tuple(out))

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, np.integer)):
            other = ZPoly((int(other),))
        if not isinstance(other, ZPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, z):
        """Evaluate at ``z`` (Horner)."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def __repr__(self):
        if not self.coeffs:
            return "ZPoly(0)"
        return f"ZPoly({_format_zpoly(self.coeffs)})"


ZPolyLike = Union[ZPoly, int, Sequence[int]]


def _format_zpoly(coeffs: Sequence[int]) -> str:
    terms = []
    for i, c in enumerate(coeffs):
        if not c:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            mon = "z" if i == 1 else f"z^{i}"
            terms.append(mon if c == 1 else f"-{mon}" if c == -1 else f"{c}*{mon}")
    return " + ".join(terms).replace("+ -", "- ")


def _zeros(rows: int, cols: int) -> np.ndarray:
    arr = np.empty((rows, max(cols, 1)), dtype=object)
    arr.fill(0)
    return arr


class QSeries:
    """Immutable truncated Laurent series in q over Z[z].

    Parameters
    ----------
    coeffs
        Coefficients of q**min_exp, q**(min_exp+1), ...; each entry is an
        int, a :class:`ZPoly`, or a sequence of ints (z-coefficients).
    min_exp
        Exponent of the first entry.
    valid_to
        Last exact exponent.  Defaults to the last entry; a larger value
        pads with zeros (the series is then an exactly known polynomial),
        a smaller one truncates.
    """

    __slots__ = ("_c", "_min", "_vt")

    def __init__(self, coeffs: Iterable[ZPolyLike] = (), min_exp: int = 0,
                 valid_to: int | None = None):
        polys = [ZPoly.coerce(c) for c in coeffs]
        if valid_to is None:
            valid_to = min_exp + len(polys) - 1
        n = max(valid_to - min_exp + 1, 0)
        polys = polys[:n]
        width = max([len(p.coeffs) for p in polys] + [1])
        arr = _zeros(n, width)
        for i, p in enumerate(polys):
            arr[i, : len(p.coeffs)] = p.coeffs
        self._set(arr, min_exp, valid_to)

    @classmethod
    def _wrap(cls, arr: np.ndarray, min_exp: int, valid_to: int) -> "QSeries":
        obj = cls.__new__(cls)
        obj._set(arr, min_exp, valid_to)
        return obj

    def _set(self, arr, min_exp, valid_to):
        n = valid_to - min_exp + 1
        if n <= 0:
            arr = _zeros(0, 1)
            min_exp = valid_to + 1
        else:
            if len(arr) < n:
                padded = _zeros(n, arr.shape[1])
                padded[: len(arr)] = arr
                arr = padded
            arr = arr[:n]
            nz_rows = np.flatnonzero(np.any(arr != 0, axis=1))
            if nz_rows.size == 0:
                arr = _zeros(0, 1)
                min_exp = valid_to + 1
            else:
                lead = int(nz_rows[0])
                nz_cols = np.flatnonzero(np.any(arr != 0, axis=0))
                arr = arr[lead:, : int(nz_cols[-1]) + 1].copy()
                min_exp += lead
        arr.flags.writeable = False
        self._c = arr
        self._min = min_exp
        self._vt = valid_to

    # constructors -------------------------------------------------------

    @classmethod
    def zero(cls, valid_to: int) -> "QSeries":
        return cls._wrap(_zeros(0, 1), valid_to + 1, valid_to)

    @classmethod
    def one(cls, valid_to: int) -> "QSeries":
        return cls.monomial(1, 0, 0, valid_to)

    @classmethod
    def monomial(cls, c: int, z_pow: int, q_pow: int, valid_to: int) -> "QSeries":
        """The exact term ``c * z**z_pow * q**q_pow`` known through ``valid_to``."""
        if c == 0 or q_pow > valid_to:
            return cls.zero(valid_to)
        arr = _zeros(valid_to - q_pow + 1, z_pow + 1)
        arr[0, z_pow] = c
        return cls._wrap(arr, q_pow, valid_to)

    # accessors ----------------------------------------------------------

    @property
    def min_exp(self) -> int:
        return self._min

    @property
    def valid_to(self) -> int:
        return self._vt

    @property
    def coeffs(self) -> tuple[ZPoly, ...]:
        return tuple(ZPoly(tuple(row)) for row in self._c)

    @property
    def z_degree(self) -> int:
        return self._c.shape[1] - 1 if len(self._c) else -1

    def is_zero(self) -> bool:
        """True when every coefficient through ``valid_to`` vanishes."""
        return len(self._c) == 0

    def coefficient(self, n: int) -> ZPoly:
        if n > self._vt:
            raise OutOfValidRange(
                f"q^{n} requested but series is exact only through q^{self._vt}")
        if n < self._min:
            return ZPoly()
        return ZPoly(tuple(self._c[n - self._min]))

    __getitem__ = coefficient

    def as_dict(self) -> dict[int, ZPoly]:
        """Nonzero coefficients keyed by exponent."""
        return {self._min + i: ZPoly(tuple(row))
                for i, row in enumerate(self._c) if any(row)}

    def int_coeffs(self, start: int, stop: int | None = None) -> list[int]:
        """Plain integer coefficients of q**start .. q**stop (z must not appear)."""
        stop = self._vt if stop is None else stop
        out = []
        for n in range(start, stop + 1):
            p = self.coefficient(n)
            if p.degree > 0:
                raise ValueError(f"coefficient of q^{n} depends on z: {p}")
            out.append(p.coeffs[0] if p.coeffs else 0)
        return out

    # arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, ZPoly)):
            other = QSeries([other], 0, self._vt)
        return add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return QSeries._wrap(-self._c, self._min, self._vt)

    def __sub__(self, other):
        if isinstance(other, (int, ZPoly)):
            other = QSeries([other], 0, self._vt)
        return add(self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, np.integer, ZPoly)):
            return self.scale(other)
        return mul(self, other)

    __rmul__ = __mul__

    def scale(self, factor: ZPolyLike) -> "QSeries":
        """Multiply by a constant of Z[z]; exact, so ``valid_to`` is unchanged."""
        p = ZPoly.coerce(factor)
        if p.is_zero() or self.is_zero():
            return QSeries.zero(self._vt)
        out = _zeros(len(self._c), self._c.shape[1] + p.degree)
        w = self._c.shape[1]
        for j, c in enumerate(p.coeffs):
            if c:
                out[:, j: j + w] += c * self._c
        return QSeries._wrap(out, self._min, self._vt)

    def shift(self, k: int) -> "QSeries":
        """Multiply by q**k."""
        return QSeries._wrap(self._c, self._min + k, self._vt + k)

    def truncate(self, valid_to: int) -> "QSeries":
        """Forget coefficients past ``valid_to`` (never extends precision)."""
        vt = min(valid_to, self._vt)
        return QSeries._wrap(self._c, self._min, vt)

    def times_binomial(self, c: int, z_pow: int, q_pow: int) -> "QSeries":
        """Multiply by the exact factor ``1 - c*z**z_pow*q**q_pow``."""
        if c == 0:
            return self
        return add(self, self.shift(q_pow).scale(ZPoly.z(z_pow) * (-c)))

    def over_binomial(self, c: int, z_pow: int, q_pow: int) -> "QSeries":
        """Divide by ``1 - c*z**z_pow*q**q_pow``; needs ``q_pow >= 1`` unless ``c == 0``.

        Solves ``b[n] = a[n] + c*z**z_pow*b[n - q_pow]`` one block of
        ``q_pow`` rows at a time.
        """
        if c == 0:
            return self
        if q_pow < 1:
            raise NotAUnit(f"1 - ({c})*z^{z_pow}*q^{q_pow} is not a unit")
        n = len(self._c)
        if n == 0:
            return self
        w0 = self._c.shape[1]
        width = w0 + z_pow * ((n - 1) // q_pow)
        out = _zeros(n, width)
        out[:, :w0] = self._c
        for start in range(q_pow, n, q_pow):
            stop = min(start + q_pow, n)
            src = out[start - q_pow: stop - q_pow, : width - z_pow]
            out[start:stop, z_pow:] += src if c == 1 else -src
        return QSeries._wrap(out, self._min, self._vt)

    # comparison / evaluation -------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return (self._min == other._min and self._vt == other._vt
                and self._c.shape == other._c.shape
                and bool(np.all(self._c == other._c)))

    def __hash__(self):
        return hash((self._min, self._vt, tuple(map(tuple, self._c))))

    def evaluate(self, q: complex, z: complex = 0.0) -> complex:
        """Numeric value of the stored partial sum at (q, z)."""
        if not len(self._c):
            return 0j
        zpow = np.array([complex(z) ** j for j in range(self._c.shape[1])])
        rows = np.array([complex(sum(complex(int(c)) * zp for c, zp in zip(row, zpow)))
                         for row in self._c])
        qpow = complex(q) ** np.arange(self._min, self._min + len(rows), dtype=float)
        return complex(np.sum(rows * qpow))

    def __repr__(self):
        body = self._pretty(limit=8)
        return f"QSeries({body}, min_exp={self._min}, valid_to={self._vt})"

    def __str__(self):
        return f"{self._pretty()} + O(q^{self._vt + 1})"

    def _pretty(self, limit: int | None = None) -> str:
        terms = []
        for n, p in self.as_dict().items():
            cf = _format_zpoly(p.coeffs)
            if " " in cf:
                cf = f"({cf})"
            mon = "" if n == 0 else "q" if n == 1 else f"q^{n}"
            if not mon:
                terms.append(cf)
            elif cf == "1":
                terms.append(mon)
            elif cf == "-1":
                terms.append(f"-{mon}")
            else:
                terms.append(f"{cf}*{mon}")
            if limit is not None and len(terms) >= limit:
                terms.append("...")
                break
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


# module-level operations ------------------------------------------------


def add(a: QSeries, b: QSeries) -> QSeries:
    vt = min(a.valid_to, b.valid_to)
    if a.is_zero() and b.is_zero():
        return QSeries.zero(vt)
    lo = min(s.min_exp for s in (a, b) if not s.is_zero())
    n = vt - lo + 1
    if n <= 0:
        return QSeries.zero(vt)
    out = _zeros(n, max(a._c.shape[1], b._c.shape[1]))
    for s in (a, b):
        off = s.min_exp - lo
        rows = min(len(s._c), n - off)
        if rows > 0:
            out[off: off + rows, : s._c.shape[1]] += s._c[:rows]
    return QSeries._wrap(out, lo, vt)


def mul(a: QSeries, b: QSeries) -> QSeries:
    lo = a.min_exp + b.min_exp
    vt = min(a.valid_to + b.min_exp, b.valid_to + a.min_exp)
    n = vt - lo + 1
    if n <= 0 or a.is_zero() or b.is_zero():
        return QSeries.zero(vt)
    # drive the loop with the sparser operand
    if np.count_nonzero(a._c != 0) > np.count_nonzero(b._c != 0):
        a, b = b, a
    ca, cb = a._c, b._c
    wb = cb.shape[1]
    out = _zeros(n, ca.shape[1] + wb - 1)
    for i, j in zip(*np.nonzero(ca[:n] != 0)):
        rows = min(len(cb), n - i)
        if rows > 0:
            out[i: i + rows, j: j + wb] += ca[i, j] * cb[:rows]
    return QSeries._wrap(out, lo, vt)


def invert_unit(a: QSeries, order: int) -> QSeries:
    """Reciprocal of a power series whose constant term is +1 or -1.

    The result is exact through ``min(order, a.valid_to)``.
    """
    if a.is_zero() or a.min_exp != 0:
        raise NotAUnit(f"series {a!r} does not start with a constant term")
    unit = a.coefficient(0)
    if unit not in (ZPoly((1,)), ZPoly((-1,))):
        raise NotAUnit(f"constant term {unit} is not +1 or -1")
    u = unit.coeffs[0]
    vt = min(order, a.valid_to)
    if vt < 0:
        return QSeries.zero(vt)
    ca = a._c
    wa = ca.shape[1]
    terms = [(int(k), int(j), ca[k, j]) for k, j in zip(*np.nonzero(ca != 0)) if 0 < k <= vt]
    width = 1 + vt * (wa - 1)
    out = _zeros(vt + 1, width)
    out[0, 0] = u
    for n in range(1, vt + 1):
        acc = _zeros(1, width)[0]
        for k, j, c in terms:
            if k > n:
                continue
            acc[j:] += c * out[n - k, : width - j]
        out[n] = -u * acc
    return QSeries._wrap(out, 0, vt)


def dilate(a: QSeries, d: int) -> QSeries:
    """Substitute q -> q**d."""
    if d < 1:
        raise ValueError("dilation factor must be a positive integer")
    vt = d * a.valid_to + (d - 1)
    if a.is_zero():
        return QSeries.zero(vt)
    out = _zeros(d * (len(a._c) - 1) + 1, a._c.shape[1])
    out[::d] = a._c
    return QSeries._wrap(out, d * a.min_exp, vt)


def coefficient(a: QSeries, n: int) -> ZPoly:
    return a.coefficient(n)


def first_mismatch(a: QSeries, b: QSeries, through: int | None = None):
    """First exponent where ``a`` and ``b`` differ, as ``(n, a_n, b_n)``, or None.

    The comparison runs through the common valid range (capped by ``through``).
    """
    top = min(a.valid_to, b.valid_to)
    if through is not None:
        top = min(top, through)
    lo = min(a.min_exp, b.min_exp)
    for n in range(lo, top + 1):
        x, y = a.coefficient(n), b.coefficient(n)
        if x != y:
            return n, x, y
    return None
