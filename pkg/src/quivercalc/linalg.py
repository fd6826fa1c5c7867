"""Fraction-free exact row reduction over the integers.

Rows are eliminated by cross-multiplication and re-scaled by their content,
so entries stay integral; rationals appear only when reducing an external
vector against the computed pivots.  The pivot column set is canonical (it
depends only on the row space), which makes quotient bases deterministic."""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def _content_reduce(row):
    g = 0
    for x in row:
        if x:
            g = gcd(g, abs(x))
            if g == 1:
                break
    if g > 1:
        return [x // g for x in row]
    return row


def _leading(row):
    for i, x in enumerate(row):
        if x:
            return i
    return None


class IntegerEchelon:
    """Incremental integer echelon form: feed rows, read off rank, pivot
    columns, and reductions of further vectors modulo the row space."""

    def __init__(self, ncols):
        self.ncols = ncols
        self.pivots = {}  # leading column -> integer row

    def add_row(self, row):
        """Insert one integer row; returns True when the rank grew."""
        if len(row) != self.ncols:
            raise ValueError("row length mismatch")
        row = list(row)
        while True:
            lead = _leading(row)
            if lead is None:
                return False
            pivot = self.pivots.get(lead)
            if pivot is None:
                if row[lead] < 0:
                    row = [-x for x in row]
                self.pivots[lead] = _content_reduce(row)
                return True
            a = pivot[lead]
            b = row[lead]
            row = [a * r - b * p for r, p in zip(row, pivot)]
            row = _content_reduce(row)

    @property
    def rank(self):
        return len(self.pivots)

    def pivot_columns(self):
        return sorted(self.pivots)

    def reduce_vector(self, vec):
        """Eliminate all pivot columns from vec (entries may become
        Fractions); the result is the canonical representative supported on
        non-pivot columns."""
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        vec = list(vec)
        for col in sorted(self.pivots):
            c = vec[col]
            if c:
                pivot = self.pivots[col]
                factor = Fraction(c, pivot[col])
                vec = [v - factor * p for v, p in zip(vec, pivot)]
        return vec


def echelon_of_rows(rows, ncols):
    ech = IntegerEchelon(ncols)
    for row in rows:
        ech.add_row(row)
    return ech


def rank_of_rows(rows, ncols):
    """Exact rank of a matrix given as rows of ints or Fractions."""
    ech = IntegerEchelon(ncols)
    for row in rows:
        denoms = [x.denominator for x in row if isinstance(x, Fraction)]
        if denoms:
            m = 1
            for dnm in denoms:
                m = m * dnm // gcd(m, dnm)
            row = [int(x * m) for x in row]
        else:
            row = [int(x) for x in row]
        ech.add_row(row)
    return ech.rank
