"""Symmetric quivers: the incidence model, the Euler form, and the linking
and unlinking moves that trade an arrow between two vertices for a fresh
vertex."""

from __future__ import annotations

import json
from dataclasses import dataclass


class QuiverFormatError(ValueError):
    """Malformed quiver data; the message names the offending entry."""


@dataclass(frozen=True)
class Quiver:
    """A symmetric quiver: ordered distinct vertex labels and a symmetric
    matrix of nonnegative arrow counts (diagonal entries count loops)."""

    vertices: tuple
    matrix: tuple

    def __post_init__(self):
        vertices = tuple(self.vertices)
        matrix = tuple(tuple(row) for row in self.matrix)
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "matrix", matrix)
        n = len(vertices)
        for i, label in enumerate(vertices):
            if not isinstance(label, str) or not label:
                raise QuiverFormatError(f"vertices[{i}] must be a nonempty string")
        if len(set(vertices)) != n:
            raise QuiverFormatError("vertex labels must be distinct")
        if len(matrix) != n:
            raise QuiverFormatError(
                f"matrix has {len(matrix)} rows for {n} vertices")
        for i, row in enumerate(matrix):
            if len(row) != n:
                raise QuiverFormatError(f"matrix[{i}] has {len(row)} entries, expected {n}")
            for j, entry in enumerate(row):
                if not isinstance(entry, int) or isinstance(entry, bool):
                    raise QuiverFormatError(f"matrix[{i}][{j}] is not an integer")
                if entry < 0:
                    raise QuiverFormatError(f"matrix[{i}][{j}] is negative")
        for i in range(n):
            for j in range(i + 1, n):
                if matrix[i][j] != matrix[j][i]:
                    raise QuiverFormatError(
                        f"matrix[{i}][{j}] != matrix[{j}][{i}] "
                        f"({matrix[i][j]} vs {matrix[j][i]})")

    def __len__(self):
        return len(self.vertices)

    def index(self, label):
        try:
            return self.vertices.index(label)
        except ValueError:
            raise KeyError(f"unknown vertex {label!r}; have {list(self.vertices)}") from None

    def loops(self, label):
        i = self.index(label)
        return self.matrix[i][i]

    def max_loops(self):
        return max((self.matrix[i][i] for i in range(len(self))), default=0)

    def arrows(self, a, b):
        return self.matrix[self.index(a)][self.index(b)]

    # -- serialization ------------------------------------------------------

    def to_json(self):
        return {"vertices": list(self.vertices),
                "matrix": [list(row) for row in self.matrix]}

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, dict):
            raise QuiverFormatError("quiver JSON must be an object")
        for key in ("vertices", "matrix"):
            if key not in obj:
                raise QuiverFormatError(f"quiver JSON is missing {key!r}")
        vertices = obj["vertices"]
        matrix = obj["matrix"]
        if not isinstance(vertices, list):
            raise QuiverFormatError("'vertices' must be a list of labels")
        if not isinstance(matrix, list) or not all(isinstance(r, list) for r in matrix):
            raise QuiverFormatError("'matrix' must be a list of rows")
        return cls(tuple(vertices), tuple(tuple(row) for row in matrix))

    @classmethod
    def load(cls, path):
        with open(path, "r", encoding="utf-8") as fh:
            try:
                obj = json.load(fh)
            except json.JSONDecodeError as exc:
                raise QuiverFormatError(f"{path}: invalid JSON ({exc})") from None
        return cls.from_json(obj)

    def save(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json(), fh, indent=2, sort_keys=False)
            fh.write("\n")


def euler_form(quiver, d, e):
    """Euler form chi(d, e) = sum_i d_i e_i - sum_{i,j} m_ij d_i e_j, the
    arrow sum running over ordered vertex pairs weighted by arrow counts."""
    n = len(quiver)
    if len(d) != n or len(e) != n:
        raise ValueError("dimension vectors must match the vertex count")
    m = quiver.matrix
    total = 0
    for i in range(n):
        di = d[i]
        total += di * e[i]
        if di:
            row = m[i]
            for j in range(n):
                if row[j] and e[j]:
                    total -= row[j] * di * e[j]
    return total


def fresh_label(quiver, base):
    """Smallest '<base>#<n>' (n >= 1) not already a vertex label."""
    n = 1
    while f"{base}#{n}" in quiver.vertices:
        n += 1
    return f"{base}#{n}"


def _pair_indices(quiver, a, b, op):
    ia = quiver.index(a)
    ib = quiver.index(b)
    if ia == ib:
        raise ValueError(f"{op} requires two distinct vertices, got {a!r} twice")
    return ia, ib


def link(quiver, a, b):
    """Add one arrow between a and b and a fresh vertex wired so the motivic
    series is preserved under the linking substitution.

    New vertex row: m[i][new] = m[i][a] + m[i][b] for every existing vertex i
    (including a and b); loop count m[new][new] = m[a][a] + m[b][b] + 2 m[a][b]."""
    ia, ib = _pair_indices(quiver, a, b, "link")
    m = [list(row) for row in quiver.matrix]
    n = len(m)
    loop = m[ia][ia] + m[ib][ib] + 2 * m[ia][ib]
    new_row = [m[i][ia] + m[i][ib] for i in range(n)]
    m[ia][ib] += 1
    m[ib][ia] += 1
    for i in range(n):
        m[i].append(new_row[i])
    m.append(new_row + [loop])
    label = fresh_label(quiver, f"{a}+{b}")
    return Quiver(quiver.vertices + (label,), tuple(tuple(row) for row in m))


def unlink(quiver, a, b):
    """Remove one arrow between a and b (requires at least one) and add a
    fresh vertex absorbing it:

      m[a][new] = m[a][a] + m[a][b] - 1
      m[b][new] = m[b][b] + m[a][b] - 1
      m[i][new] = m[i][a] + m[i][b]            for other vertices i
      m[new][new] = m[a][a] + m[b][b] + 2 m[a][b] - 1
    """
    ia, ib = _pair_indices(quiver, a, b, "unlink")
    if quiver.matrix[ia][ib] < 1:
        raise ValueError(f"unlink requires at least one arrow between {a!r} and {b!r}")
    m = [list(row) for row in quiver.matrix]
    n = len(m)
    mab = m[ia][ib]
    loop = m[ia][ia] + m[ib][ib] + 2 * mab - 1
    new_row = []
    for i in range(n):
        if i == ia:
            new_row.append(m[ia][ia] + mab - 1)
        elif i == ib:
            new_row.append(m[ib][ib] + mab - 1)
        else:
            new_row.append(m[i][ia] + m[i][ib])
    m[ia][ib] -= 1
    m[ib][ia] -= 1
    for i in range(n):
        m[i].append(new_row[i])
    m.append(new_row + [loop])
    label = fresh_label(quiver, f"{a}*{b}")
    return Quiver(quiver.vertices + (label,), tuple(tuple(row) for row in m))


def disjoint_union(q1, q2):
    """Block-diagonal union; labels must not clash."""
    clash = set(q1.vertices) & set(q2.vertices)
    if clash:
        raise QuiverFormatError(
            f"vertex labels clash in disjoint union: {sorted(clash)}")
    n1, n2 = len(q1), len(q2)
    rows = []
    for i in range(n1):
        rows.append(tuple(q1.matrix[i]) + (0,) * n2)
    for j in range(n2):
        rows.append((0,) * n1 + tuple(q2.matrix[j]))
    return Quiver(q1.vertices + q2.vertices, tuple(rows))


def one_vertex(loops, label="v"):
    return Quiver((label,), ((loops,),))
