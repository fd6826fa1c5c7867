"""Exact windowed arithmetic for Laurent series in t = q^(1/2) and for
degree-truncated multivariate power series over them.

Every q-power is tracked as an integer exponent of t = q^(1/2), so an
exponent e stands for q^(e/2) and half-integer powers of q never require
fractional bookkeeping.  Coefficients are Python ints or
:class:`fractions.Fraction`; nothing is floated or rounded anywhere.

A :class:`TruncatedLaurent` with window [lo, hi] represents a series in
Q((t)) that has no terms below t^lo and whose coefficients at every exponent
<= hi are exactly the stored ones (absent exponents are zero there);
coefficients above hi are unknown, never silently assumed to vanish.  Every
operation derives the widest output window it can justify from the operand
windows and their lowest nonzero exponents, so a coefficient is never
reported outside the range on which it is provably correct.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


class SeriesError(ValueError):
    """Base class for exact-series errors."""


class TruncationUnderflow(SeriesError):
    """An operation would need coefficients beyond the known window."""


class NotInvertible(SeriesError):
    """Inversion of a series with no visible nonzero coefficient."""


def exact_str(c):
    """Render an int or Fraction as an exact decimal string like '-3' or '5/2'."""
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"{c.numerator}/{c.denominator}"
    return str(int(c))


def _intify(c):
    # Fractions with denominator 1 collapse back to int so hot loops stay on ints.
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


def _div(a, b):
    return _intify(Fraction(a, 1) / b)


class TruncatedLaurent:
    __slots__ = ("coeffs", "lo", "hi")

    def __init__(self, coeffs, lo, hi):
        if lo > hi:
            raise TruncationUnderflow(f"TruncatedLaurent: empty window [{lo}, {hi}]")
        clean = {}
        for e, c in coeffs.items():
            if c == 0:
                continue
            if not lo <= e <= hi:
                raise ValueError(
                    f"coefficient exponent {e} lies outside window [{lo}, {hi}]")
            clean[e] = _intify(c)
        self.coeffs = clean
        self.lo = lo
        self.hi = hi

    @classmethod
    def zero(cls, lo, hi):
        return cls({}, lo, hi)

    @classmethod
    def one(cls, lo, hi):
        return cls.monomial(0, 1, lo, hi)

    @classmethod
    def monomial(cls, exponent, coeff, lo, hi):
        return cls({exponent: coeff}, min(lo, exponent), hi)

    def is_zero(self):
        return not self.coeffs

    def valuation(self):
        """Exponent of the lowest nonzero known coefficient, or None if all
        known coefficients vanish."""
        return min(self.coeffs) if self.coeffs else None

    def coeff(self, exponent):
        """Coefficient at t^exponent; raises TruncationUnderflow above the window."""
        if exponent > self.hi:
            raise TruncationUnderflow(
                f"coefficient at t^{exponent} is beyond window [{self.lo}, {self.hi}]")
        return self.coeffs.get(exponent, 0)

    def window(self):
        return (self.lo, self.hi)

    # -- arithmetic ---------------------------------------------------------

    def __neg__(self):
        return TruncatedLaurent({e: -c for e, c in self.coeffs.items()}, self.lo, self.hi)

    def __add__(self, other):
        if not isinstance(other, TruncatedLaurent):
            return NotImplemented
        lo = min(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        out = {e: c for e, c in self.coeffs.items() if e <= hi}
        for e, c in other.coeffs.items():
            if e <= hi:
                out[e] = out.get(e, 0) + c
        return TruncatedLaurent(out, lo, hi)

    def __sub__(self, other):
        if not isinstance(other, TruncatedLaurent):
            return NotImplemented
        return self + (-other)

    def mul(self, other, hi_cap=None):
        """Product with the provable window: the output is correct up to
        min(hi_a + val_b, hi_b + val_a), where an all-zero operand counts as
        having valuation just above its own window.  hi_cap trims the output
        window further (a pure optimization for deep truncations)."""
        lo = self.lo + other.lo
        va = self.valuation()
        vb = other.valuation()
        va = self.hi + 1 if va is None else va
        vb = other.hi + 1 if vb is None else vb
        hi = min(self.hi + vb, other.hi + va)
        if hi_cap is not None:
            hi = min(hi, hi_cap)
        if hi < lo:
            raise TruncationUnderflow(f"laurent_mul: empty output window [{lo}, {hi}]")
        acc = {}
        exps_b = sorted(other.coeffs)
        cb = other.coeffs
        for ea, ca in self.coeffs.items():
            limit = bisect_right(exps_b, hi - ea)
            for eb in exps_b[:limit]:
                e = ea + eb
                acc[e] = acc.get(e, 0) + ca * cb[eb]
        return TruncatedLaurent(acc, lo, hi)

    def __mul__(self, other):
        if not isinstance(other, TruncatedLaurent):
            return NotImplemented
        return self.mul(other)

    def scale(self, c):
        if c == 0:
            return TruncatedLaurent({}, self.lo, self.hi)
        return TruncatedLaurent({e: v * c for e, v in self.coeffs.items()}, self.lo, self.hi)

    def shift(self, j):
        """Multiply by t^j (exact; the window shifts with the exponents)."""
        if j == 0:
            return self
        return TruncatedLaurent({e + j: c for e, c in self.coeffs.items()},
                                self.lo + j, self.hi + j)

    def truncated(self, hi):
        """Forget knowledge above t^hi."""
        if hi >= self.hi:
            return self
        return TruncatedLaurent({e: c for e, c in self.coeffs.items() if e <= hi},
                                self.lo, hi)

    def inverse(self):
        """Multiplicative inverse, valid on the window [-v, hi - 2v] where v
        is the valuation.  Requires a nonzero lowest visible coefficient."""
        v = self.valuation()
        if v is None:
            raise NotInvertible(
                "laurent_inverse: no nonzero coefficient in window "
                f"[{self.lo}, {self.hi}]")
        c0 = self.coeffs[v]
        depth = self.hi - v
        u = [0] * (depth + 1)
        for e, c in self.coeffs.items():
            if e != v:
                u[e - v] = _div(c, c0)
        w = [0] * (depth + 1)
        w[0] = 1
        for n in range(1, depth + 1):
            s = 0
            for k in range(1, n + 1):
                if u[k]:
                    s += u[k] * w[n - k]
            w[n] = -s
        coeffs = {}
        for n, wn in enumerate(w):
            if wn:
                coeffs[n - v] = _div(wn, c0)
        return TruncatedLaurent(coeffs, -v, self.hi - 2 * v)

    # -- comparison ---------------------------------------------------------

    def first_mismatch(self, other):
        """Lowest exponent (on the common known range) where the two series
        provably differ, or None.  Below a window's lo the series is zero."""
        hi = min(self.hi, other.hi)
        for e in sorted(set(self.coeffs) | set(other.coeffs)):
            if e > hi:
                break
            if self.coeffs.get(e, 0) != other.coeffs.get(e, 0):
                return e
        return None

    def agrees_with(self, other):
        return self.first_mismatch(other) is None

    def __eq__(self, other):
        if not isinstance(other, TruncatedLaurent):
            return NotImplemented
        return (self.coeffs, self.lo, self.hi) == (other.coeffs, other.lo, other.hi)

    __hash__ = None

    # -- rendering ----------------------------------------------------------

    def __repr__(self):
        inner = ", ".join(f"{e}: {c}" for e, c in sorted(self.coeffs.items()))
        return f"TruncatedLaurent({{{inner}}}, window=[{self.lo}, {self.hi}])"

    def to_q_string(self):
        """Human-readable form in q (exponent e renders as q^(e/2))."""
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in sorted(self.coeffs.items()):
            if e == 0:
                mono = "1"
            elif e == 2:
                mono = "q"
            elif e % 2 == 0:
                mono = f"q^{e // 2}"
            else:
                mono = f"q^({e}/2)"
            cs = exact_str(c)
            if mono == "1":
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append(f"-{mono}")
            else:
                parts.append(f"{cs}*{mono}")
        out = " + ".join(parts).replace("+ -", "- ")
        return out

    def to_json(self):
        return {
            "window": [self.lo, self.hi],
            "coefficients": {str(e): exact_str(c) for e, c in sorted(self.coeffs.items())},
        }


@dataclass(frozen=True)
class VertexMonomial:
    """A monomial x^exponents * q^(qpow/2) substituted for a series variable.

    exponents is indexed by the target vertex list; qpow is the integer
    t-power the substitution carries along."""

    exponents: tuple
    qpow: int = 0

    def total_degree(self):
        return sum(self.exponents)

    def times(self, other, extra_qpow=0):
        if len(self.exponents) != len(other.exponents):
            raise ValueError("monomials over different vertex sets")
        expo = tuple(a + b for a, b in zip(self.exponents, other.exponents))
        return VertexMonomial(expo, self.qpow + other.qpow + extra_qpow)

    def to_json(self, vertices=None):
        out = {"exponents": list(self.exponents), "qpow": self.qpow}
        if vertices is not None:
            out["vertices"] = list(vertices)
        return out


def iter_multidegrees(nvars, max_total):
    """All nonnegative integer vectors of length nvars with sum <= max_total,
    in graded lexicographic order."""
    if nvars == 0:
        yield ()
        return

    def exact(total, slots):
        if slots == 1:
            yield (total,)
            return
        for first in range(total + 1):
            for rest in exact(total - first, slots - 1):
                yield (first,) + rest

    for total in range(max_total + 1):
        yield from exact(total, nvars)


class MultiSeries:
    """A multivariate power series truncated at a total-degree cap, with
    TruncatedLaurent coefficients.

    terms maps multidegree tuples to coefficients.  A missing multidegree is
    an exact zero: every operation here computes all multidegrees up to the
    cap or raises, so absence is proof, not ignorance.  The default window is
    the materialization target the series was built on; individual
    coefficients carry their own provable windows.
    """

    __slots__ = ("vertices", "cap", "window", "terms")

    def __init__(self, vertices, cap, window, terms):
        if cap < 0:
            raise ValueError("degree cap must be nonnegative")
        lo, hi = window
        if lo > hi:
            raise TruncationUnderflow(f"MultiSeries: empty default window [{lo}, {hi}]")
        self.vertices = tuple(vertices)
        self.cap = cap
        self.window = (lo, hi)
        n = len(self.vertices)
        for d in terms:
            if len(d) != n or any(x < 0 for x in d) or sum(d) > cap:
                raise ValueError(f"bad multidegree {d} for cap {cap} over {n} variables")
        self.terms = dict(terms)

    @classmethod
    def zero(cls, vertices, cap, window):
        return cls(vertices, cap, window, {})

    @classmethod
    def one(cls, vertices, cap, window):
        zero_deg = (0,) * len(tuple(vertices))
        lo, hi = window
        return cls(vertices, cap, window, {zero_deg: TruncatedLaurent.one(lo, hi)})

    def coeff(self, degree):
        degree = tuple(degree)
        got = self.terms.get(degree)
        if got is not None:
            return got
        return TruncatedLaurent.zero(*self.window)

    def constant_term(self):
        return self.coeff((0,) * len(self.vertices))

    def _require_same_vertices(self, other):
        if self.vertices != other.vertices:
            raise ValueError(
                f"vertex sets differ: {self.vertices} vs {other.vertices}")

    # -- ring operations ----------------------------------------------------

    def __neg__(self):
        return MultiSeries(self.vertices, self.cap, self.window,
                           {d: -c for d, c in self.terms.items()})

    def __add__(self, other):
        if not isinstance(other, MultiSeries):
            return NotImplemented
        self._require_same_vertices(other)
        cap = min(self.cap, other.cap)
        window = (min(self.window[0], other.window[0]),
                  min(self.window[1], other.window[1]))
        out = {}
        for d, c in self.terms.items():
            if sum(d) <= cap:
                out[d] = c
        for d, c in other.terms.items():
            if sum(d) > cap:
                continue
            out[d] = out[d] + c if d in out else c
        return MultiSeries(self.vertices, cap, window, out)

    def __sub__(self, other):
        if not isinstance(other, MultiSeries):
            return NotImplemented
        return self + (-other)

    def mul(self, other, hi_cap=None):
        self._require_same_vertices(other)
        cap = min(self.cap, other.cap)
        window = (min(self.window[0], other.window[0]),
                  min(self.window[1], other.window[1]))
        items2 = [(d, sum(d), c) for d, c in other.terms.items()]
        acc = {}
        for d1, c1 in self.terms.items():
            t1 = sum(d1)
            if t1 > cap:
                continue
            budget = cap - t1
            for d2, t2, c2 in items2:
                if t2 > budget:
                    continue
                d = tuple(a + b for a, b in zip(d1, d2))
                p = c1.mul(c2, hi_cap)
                acc[d] = acc[d] + p if d in acc else p
        return MultiSeries(self.vertices, cap, window, acc)

    def __mul__(self, other):
        if not isinstance(other, MultiSeries):
            return NotImplemented
        return self.mul(other)

    def scale(self, c):
        return MultiSeries(self.vertices, self.cap, self.window,
                           {d: v.scale(c) for d, v in self.terms.items()})

    # -- structural operations ------------------------------------------------

    def psi(self, n):
        """Adams operation: x^d t^j -> x^(n d) t^(n j).  Requires n >= 1 and a
        zero constant term."""
        if n < 1:
            raise ValueError("psi index must be >= 1")
        _require_zero_constant(self, "pleth_psi")
        if n == 1:
            return self
        out = {}
        for d, c in self.terms.items():
            nd = tuple(n * x for x in d)
            if sum(nd) > self.cap:
                continue
            # t^(n*hi + n - 1) is still provable: unknown source terms land on
            # multiples of n only, and the next one sits at n*(hi+1).
            out[nd] = TruncatedLaurent({n * e: v for e, v in c.coeffs.items()},
                                       n * c.lo, n * c.hi + n - 1)
        return MultiSeries(self.vertices, self.cap, self.window, out)

    def substitute(self, vertex, monomial, out_vertices, out_cap=None):
        """Substitute x_vertex -> x^monomial.exponents * q^(qpow/2), mapping
        onto the vertex list out_vertices (which must contain every remaining
        input vertex).  The monomial must have total degree >= 1; degrees
        that land above the cap are dropped, which is sound because they sit
        beyond the truncation order."""
        try:
            vi = self.vertices.index(vertex)
        except ValueError:
            raise ValueError(f"unknown vertex {vertex!r} in substitution") from None
        out_vertices = tuple(out_vertices)
        expo = tuple(monomial.exponents)
        if len(expo) != len(out_vertices):
            raise ValueError("monomial exponent vector does not match output vertices")
        if any(x < 0 for x in expo):
            raise ValueError("monomial exponents must be nonnegative")
        deg = sum(expo)
        if deg < 1:
            raise SeriesError(
                "substitute_variable: degree-0 target would break truncation soundness")
        # Dropped input terms have total degree > cap.  When vertex is the
        # only variable they map to out-degree > cap*deg; otherwise a term
        # avoiding it entirely maps degree-preservingly, so only out-degrees
        # <= cap are provable.
        if len(self.vertices) == 1:
            max_valid = (self.cap + 1) * deg - 1
        else:
            max_valid = self.cap
        cap = max_valid if out_cap is None else out_cap
        if cap > max_valid:
            raise SeriesError(
                f"substitute_variable: requested cap {cap} exceeds provable cap {max_valid}")
        pos = {label: i for i, label in enumerate(out_vertices)}
        mapping = []
        for i, label in enumerate(self.vertices):
            if i == vi:
                mapping.append(None)
            else:
                if label not in pos:
                    raise ValueError(
                        f"vertex {label!r} missing from output vertex set {out_vertices}")
                mapping.append(pos[label])
        qpow = monomial.qpow
        acc = {}
        for d, c in self.terms.items():
            k = d[vi]
            nd = [0] * len(out_vertices)
            for i, di in enumerate(d):
                if i != vi and di:
                    nd[mapping[i]] += di
            if k:
                for j, ej in enumerate(expo):
                    if ej:
                        nd[j] += k * ej
            ndt = tuple(nd)
            if sum(ndt) > cap:
                continue
            shifted = c.shift(qpow * k)
            acc[ndt] = acc[ndt] + shifted if ndt in acc else shifted
        return MultiSeries(out_vertices, cap, self.window, acc)

    # -- comparison -----------------------------------------------------------

    def first_mismatches(self, other, limit=None):
        """Per-multidegree disagreements (up to the common cap) on the common
        known coefficient ranges.  Returns a list of (degree, lhs, rhs)."""
        self._require_same_vertices(other)
        cap = min(self.cap, other.cap)
        out = []
        degrees = sorted(set(self.terms) | set(other.terms), key=lambda d: (sum(d), d))
        for d in degrees:
            if sum(d) > cap:
                continue
            a = self.terms.get(d)
            b = other.terms.get(d)
            if a is None and b is None:
                continue
            if a is None:
                a = TruncatedLaurent.zero(b.lo, b.hi)
            if b is None:
                b = TruncatedLaurent.zero(a.lo, a.hi)
            if a.first_mismatch(b) is not None:
                out.append((d, a, b))
                if limit is not None and len(out) >= limit:
                    break
        return out

    def agrees_with(self, other):
        return not self.first_mismatches(other, limit=1)

    def __repr__(self):
        return (f"MultiSeries(vertices={self.vertices}, cap={self.cap}, "
                f"window={self.window}, terms={len(self.terms)})")

    def to_json(self):
        rows = []
        for d in sorted(self.terms, key=lambda d: (sum(d), d)):
            rows.append({"degree": list(d), "coefficient": self.terms[d].to_json()})
        return {
            "vertices": list(self.vertices),
            "order": self.cap,
            "window": [self.window[0], self.window[1]],
            "terms": rows,
        }


# -- named operations ---------------------------------------------------------

def laurent_mul(a, b):
    return a.mul(b)

def laurent_inverse(a):
    return a.inverse()

def series_mul(a, b):
    return a.mul(b)

def substitute_variable(series, vertex, monomial, out_vertices, out_cap=None):
    return series.substitute(vertex, monomial, out_vertices, out_cap)


@lru_cache(maxsize=None)
def _restricted_partition_counts(max_part, jmax):
    """Number of partitions of j into parts <= max_part, for j = 0..jmax."""
    dp = [0] * (jmax + 1)
    dp[0] = 1
    for k in range(1, max_part + 1):
        for j in range(k, jmax + 1):
            dp[j] += dp[j - k]
    return tuple(dp)


def pochhammer_inv(n, lo, hi):
    """Expansion of 1/((1 - q^-1)(1 - q^-2)...(1 - q^-n)) in nonnegative
    powers of q, on the requested window of t-exponents.

    Equals (-1)^n q^(n(n+1)/2) / ((1-q)(1-q^2)...(1-q^n)); the leading term
    sits at t^(n(n+1)) and the q-coefficients are restricted partition
    counts.  n = 0 gives 1."""
    if n < 0:
        raise ValueError("pochhammer_inv: n must be >= 0")
    if lo > hi:
        raise TruncationUnderflow(f"pochhammer_inv: empty window [{lo}, {hi}]")
    out_lo = min(lo, 0)
    if n == 0:
        if hi < 0:
            return TruncatedLaurent({}, out_lo, hi)
        return TruncatedLaurent({0: 1}, out_lo, hi)
    shift = n * (n + 1)
    jmax = (hi - shift) // 2
    if jmax < 0:
        return TruncatedLaurent({}, out_lo, hi)
    counts = _restricted_partition_counts(n, jmax)
    sign = -1 if n % 2 else 1
    coeffs = {shift + 2 * j: sign * counts[j] for j in range(jmax + 1)}
    return TruncatedLaurent(coeffs, out_lo, hi)


# -- plethystic exponential and logarithm --------------------------------------

def _require_zero_constant(series, op):
    c0 = series.constant_term()
    if c0.coeffs:
        raise SeriesError(f"{op}: series must have zero constant term")


def _require_constant_one(series, op):
    c0 = series.constant_term()
    if c0.lo > 0 or c0.hi < 0 or c0.coeffs != {0: 1}:
        raise SeriesError(f"{op}: series must have constant term 1")


def _drop_constant(series):
    zero_deg = (0,) * len(series.vertices)
    terms = {d: c for d, c in series.terms.items() if d != zero_deg}
    return MultiSeries(series.vertices, series.cap, series.window, terms)


def pleth_psi(series, n):
    return series.psi(n)


def pleth_exp(series):
    """Plethystic exponential Exp(f) = exp(sum_n psi_n(f)/n).  Requires a
    zero constant term; the result has constant term 1."""
    _require_zero_constant(series, "pleth_exp")
    cap = series.cap
    arg = MultiSeries.zero(series.vertices, cap, series.window)
    for n in range(1, cap + 1):
        arg = arg + series.psi(n).scale(Fraction(1, n))
    out = MultiSeries.one(series.vertices, cap, series.window)
    power = MultiSeries.one(series.vertices, cap, series.window)
    kfact = 1
    for k in range(1, cap + 1):
        power = power * arg
        kfact *= k
        out = out + power.scale(Fraction(1, kfact))
    return out


@lru_cache(maxsize=None)
def _mobius(n):
    if n == 1:
        return 1
    m, out = n, 1
    p = 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            out = -out
        p += 1
    if m > 1:
        out = -out
    return out


def pleth_log(series):
    """Plethystic logarithm, the inverse of pleth_exp up to the truncation
    order.  Requires constant term exactly 1 on the stored window."""
    _require_constant_one(series, "pleth_log")
    cap = series.cap
    u = _drop_constant(series)
    # ordinary log(1 + u) = sum (-1)^(k+1) u^k / k
    log = MultiSeries.zero(series.vertices, cap, series.window)
    power = None
    for k in range(1, cap + 1):
        power = u if power is None else power * u
        log = log + power.scale(Fraction((-1) ** (k + 1), k))
    out = MultiSeries.zero(series.vertices, cap, series.window)
    for n in range(1, cap + 1):
        mu = _mobius(n)
        if mu:
            out = out + log.psi(n).scale(Fraction(mu, n))
    return out
