"""Identity and lemma checks packaged as serializable reports."""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from typing import Any

from . import gf, numeric, oracle
from .errors import QplError
from .series import QSeries, ZPoly, first_mismatch

IDENTITIES = ("bk", "cy", "pdt", "pot", "main")
LEMMAS = ("chu", "ktw", "chain")
DEFAULT_TOL = {"chu": 1e-10, "ktw": 1e-7, "chain": 1e-8}
DEFAULT_ORACLE_N = 60


@dataclass
class VerificationReport:
    check_id: str
    parameters: dict[str, Any]
    order_or_trials: int
    status: str = "pass"
    first_mismatch: dict[str, Any] | None = None
    elapsed_ms: int = 0
    details: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in ("pass", "fail", "error"):
            raise ValueError(f"bad status {self.status!r}")

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    @property
    def exit_code(self) -> int:
        return {"pass": 0, "fail": 1, "error": 2}[self.status]

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "VerificationReport":
        return cls(**data)

    @classmethod
    def from_json(cls, text: str) -> "VerificationReport":
        return cls.from_dict(json.loads(text))

    def to_text(self) -> str:
        params = ", ".join(f"{k}={v}" for k, v in sorted(self.parameters.items()))
        lines = [
            f"check: {self.check_id}",
            f"parameters: {params}",
            f"order_or_trials: {self.order_or_trials}",
            f"status: {self.status}",
        ]
        if self.first_mismatch is not None:
            mm = ", ".join(f"{k}={v}" for k, v in sorted(self.first_mismatch.items()))
            lines.append(f"first_mismatch: {mm}")
        for k, v in sorted(self.details.items()):
            lines.append(f"{k}: {v}")
        lines.append(f"elapsed_ms: {self.elapsed_ms}")
        return "\n".join(lines) + "\n"


def _plain(p: ZPoly) -> int | str:
    if p.degree <= 0:
        return p.coeffs[0] if p.coeffs else 0
    return str(p)[6:-1]


def _mismatch(stage: str, hit, **extra) -> dict[str, Any]:
    n, expected, actual = hit
    out = {"stage": stage, "at": n, "expected": _plain(expected), "actual": _plain(actual)}
    out.update(extra)
    return out


def _oracle_series(name: str, t: int, n_max: int) -> QSeries:
    """Oracle counts for ``n = 1 .. n_max`` packed as a series (z marks overlines)."""
    coeffs: list[Any] = [0]
    for n in range(1, n_max + 1):
        if name == "bk":
            coeffs.append(oracle.count_bounded_diff(n, t))
        elif name == "pdt":
            coeffs.append(oracle.count_distinct_bounded_diff(n, t))
        elif name == "pot":
            coeffs.append(oracle.count_odd_bounded_diff(n, 2 * t))
        elif name == "cy":
            row = oracle.count_overpartition(n, t)
            width = max(row) + 1 if row else 0
            coeffs.append(ZPoly(tuple(row.get(m, 0) for m in range(width))))
    return QSeries(coeffs, 0, n_max)


def check_identity(name: str, t: int, order: int, oracle_n: int = DEFAULT_ORACLE_N,
                   budget: int | None = None) -> dict[str, Any] | None:
    """Run the formal checks for one identity; return the first mismatch or None.

    For the four partition identities: closed form vs. the master-sum
    specialization, the cleared master identity at those parameters, and the
    oracle counts through ``min(order, oracle_n)``.  For ``main``: the cleared
    identity over the whole monomial grid at width ``t``.
    """
    if name == "main":
        for p in gf.monomial_grid(t_values=[t]):
            lhs, rhs = gf.closed_form_cleared(p, order)
            hit = first_mismatch(lhs, rhs, order)
            if hit is not None:
                return _mismatch("cleared", hit, params=str(p))
        return None

    direct = gf.direct_gf(name, t, order)
    master = gf.via_master(name, t, order)
    hit = first_mismatch(direct, master, order)
    if hit is not None:
        return _mismatch("closed-form-vs-master-sum", hit)

    lhs, rhs = gf.closed_form_cleared(gf.master_params(name, t), order)
    hit = first_mismatch(lhs, rhs, order)
    if hit is not None:
        return _mismatch("cleared", hit)

    n_max = min(order, oracle_n)
    if n_max >= 1:
        hit = first_mismatch(_oracle_series(name, t, n_max), direct, n_max)
        if hit is not None:
            return _mismatch("oracle", hit)
    return None


def verify_identity(name: str, t: int, order: int, oracle_n: int = DEFAULT_ORACLE_N,
                    budget: int | None = None, timing: bool = True) -> VerificationReport:
    if name not in IDENTITIES:
        raise ValueError(f"unknown identity {name!r}")
    min_t = 0 if name == "pdt" else 1
    if t < min_t:
        raise ValueError(f"identity {name} needs t >= {min_t}")
    if order < 0:
        raise ValueError("order must be >= 0")
    start = time.perf_counter()
    report = VerificationReport(
        check_id=f"identity:{name}",
        parameters={"identity": name, "t": t, "order": order,
                    "oracle_n": min(order, oracle_n) if name != "main" else 0},
        order_or_trials=order,
    )
    try:
        hit = check_identity(name, t, order, oracle_n, budget)
    except QplError as exc:
        report.status = "error"
        report.details["error"] = f"{type(exc).__name__}: {exc}"
    else:
        if hit is not None:
            report.status = "fail"
            report.first_mismatch = hit
    if name == "main":
        report.details["grid_size"] = sum(1 for _ in gf.monomial_grid(t_values=[t]))
    if timing:
        report.elapsed_ms = int((time.perf_counter() - start) * 1000)
    return report


def _cplx(z: complex) -> list[float]:
    return [z.real, z.imag]


def verify_lemma(lemma: str, trials: int, seed: int, tol: float | None = None,
                 timing: bool = True) -> VerificationReport:
    if lemma not in LEMMAS:
        raise ValueError(f"unknown lemma {lemma!r}")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    tol = DEFAULT_TOL[lemma] if tol is None else tol
    start = time.perf_counter()
    report = VerificationReport(
        check_id=f"lemma:{lemma}",
        parameters={"lemma": lemma, "seed": seed, "tol": tol, "trials": trials},
        order_or_trials=trials,
    )
    try:
        summary = numeric.run_trials(lemma, trials, seed)
    except (QplError, RuntimeError) as exc:
        report.status = "error"
        report.details["error"] = f"{type(exc).__name__}: {exc}"
    else:
        worst = summary.worst
        sample = summary.samples[worst]
        report.details.update({
            "max_error": summary.max_error,
            "rejections": summary.rejections,
            "worst_sample": worst,
            "worst_parameters": {k: _cplx(v) if isinstance(v, complex) else v
                                 for k, v in sorted(sample.items())},
        })
        if lemma == "chain":
            rep = numeric.proof_chain(sample["alpha"], sample["beta"], sample["q"], sample["t"])
            report.details["chain_values"] = [_cplx(v) for v in rep.values]
        if not summary.max_error < tol:
            report.status = "fail"
            report.first_mismatch = {"at": worst, "expected": f"< {tol:g}",
                                     "actual": summary.max_error}
    if timing:
        report.elapsed_ms = int((time.perf_counter() - start) * 1000)
    return report
