"""Motivic Donaldson-Thomas invariants via the plethystic logarithm.

Convention used throughout:

    Omega(x, q) := -(q^(1/2) - q^(-1/2)) * Log(A(x, q)),

reported per dimension vector as a Laurent polynomial in u = -q^(1/2)
(so the t-exponent e carries a sign (-1)^e into the u-coefficient).
Integrality and positivity of the u-coefficients are the checked
invariance statements."""

from __future__ import annotations

import time
from dataclasses import dataclass

from .report import VerificationReport
from .series import (TruncatedLaurent, exact_str, iter_multidegrees,
                     pleth_log)

DT_CONVENTION = {
    "omega": "-(q^(1/2) - q^(-1/2)) * Log(A)",
    "variable": "u = -q^(1/2)",
}


@dataclass
class DTEntry:
    """One dimension vector's invariant: u-exponent -> coefficient, plus the
    window it was computed on and whether the polynomial support is fenced
    off from both window edges by the guard band."""

    degree: tuple
    u_coeffs: dict
    window: tuple
    stable: bool

    def is_integral(self):
        return all(isinstance(c, int) for c in self.u_coeffs.values())

    def is_positive(self):
        return self.is_integral() and all(c >= 0 for c in self.u_coeffs.values())

    def to_json(self):
        return {
            "degree": list(self.degree),
            "omega": {str(e): exact_str(c) for e, c in sorted(self.u_coeffs.items())},
            "window": [self.window[0], self.window[1]],
            "stable": self.stable,
            "positive": self.is_positive(),
        }


@dataclass
class DTResult:
    vertices: tuple
    order: int
    guard: int
    entries: list

    def entry(self, degree):
        degree = tuple(degree)
        for e in self.entries:
            if e.degree == degree:
                return e
        raise KeyError(f"no DT entry for degree {degree}")

    def all_stable(self):
        return all(e.stable for e in self.entries)

    def to_json(self):
        return {
            "convention": dict(DT_CONVENTION),
            "vertices": list(self.vertices),
            "order": self.order,
            "guard": self.guard,
            "invariants": [e.to_json() for e in self.entries],
        }


def dt_extract(series, guard=5):
    """DT invariants of a motivic series with constant term 1.

    Each nonzero-degree coefficient c of Log(series) is multiplied by
    -(t - t^-1) and re-expressed in u.  A degree is marked stable when at
    least `guard` consecutive known-zero coefficients separate its support
    from both window edges, certifying (at this window) that the invariant
    is a genuine Laurent polynomial."""
    if guard < 1:
        raise ValueError("guard band must be >= 1")
    logged = pleth_log(series)  # validates the constant term
    zero_deg = (0,) * len(series.vertices)
    entries = []
    for d in iter_multidegrees(len(series.vertices), series.cap):
        if d == zero_deg:
            continue
        c = logged.terms.get(d)
        if c is None:
            # exact zero: trivially a (zero) polynomial
            entries.append(DTEntry(d, {}, logged.window, True))
            continue
        bracket = TruncatedLaurent({-1: -1, 1: 1}, -1, c.hi + 2)
        omega_t = bracket.mul(c).scale(-1)
        u_coeffs = {}
        for e, v in omega_t.coeffs.items():
            u_coeffs[e] = -v if e % 2 else v
        lo, hi = omega_t.lo, omega_t.hi
        if u_coeffs:
            support_lo = min(u_coeffs)
            support_hi = max(u_coeffs)
            stable = (support_lo - lo >= guard) and (hi - support_hi >= guard)
        else:
            stable = hi - lo + 1 >= 2 * guard
        entries.append(DTEntry(d, u_coeffs, (lo, hi), stable))
    return DTResult(series.vertices, series.cap, guard, entries)


def dt_check(result):
    """Assert integrality and nonnegativity of every u-coefficient of a
    stabilized DT result; mismatches carry the offending coefficients."""
    started = time.perf_counter()
    unstable = [e.degree for e in result.entries if not e.stable]
    if unstable:
        raise ValueError(
            f"dt_check requires a stabilized result; unstable degrees: {unstable} "
            "(recompute on a wider window)")
    mismatches = []
    for e in result.entries:
        bad = {exp: c for exp, c in e.u_coeffs.items()
               if not isinstance(c, int) or c < 0}
        if bad:
            mismatches.append({
                "degree": list(e.degree),
                "offending": {str(exp): exact_str(c) for exp, c in sorted(bad.items())},
            })
    return VerificationReport(
        name="dt-positivity",
        parameters={"order": result.order, "guard": result.guard,
                    "vertices": list(result.vertices)},
        mismatches=mismatches,
        conventions=dict(DT_CONVENTION),
        seconds=time.perf_counter() - started,
    )
