"""Quiver data model, Euler form, linking and unlinking case tables."""

import json
import random

import pytest

from quivercalc.quiver import (
    Quiver,
    QuiverFormatError,
    disjoint_union,
    euler_form,
    fresh_label,
    link,
    one_vertex,
    unlink,
)

A2 = Quiver(("a", "b"), ((0, 1), (1, 0)))


def rand_quiver(rng, max_n=4, max_m=3):
    n = rng.randint(1, max_n)
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = rng.randint(0, max_m)
        for j in range(i + 1, n):
            m[i][j] = m[j][i] = rng.randint(0, max_m)
    return Quiver(tuple(f"v{k}" for k in range(n)),
                  tuple(tuple(row) for row in m))


# -- validation ----------------------------------------------------------------

def test_rejects_asymmetric_matrix():
    with pytest.raises(QuiverFormatError) as exc:
        Quiver(("a", "b"), ((0, 1), (2, 0)))
    assert "matrix[0][1]" in str(exc.value)


def test_rejects_negative_and_bool_entries():
    with pytest.raises(QuiverFormatError):
        Quiver(("a",), ((-1,),))
    with pytest.raises(QuiverFormatError):
        Quiver(("a",), ((True,),))


def test_rejects_shape_and_label_problems():
    with pytest.raises(QuiverFormatError):
        Quiver(("a", "b"), ((0,),))
    with pytest.raises(QuiverFormatError):
        Quiver(("a", "a"), ((0, 0), (0, 0)))
    with pytest.raises(QuiverFormatError):
        Quiver(("a", ""), ((0, 0), (0, 0)))


def test_index_and_accessors():
    assert A2.index("b") == 1
    with pytest.raises(KeyError):
        A2.index("z")
    assert A2.loops("a") == 0
    assert A2.arrows("a", "b") == 1
    assert one_vertex(3).max_loops() == 3
    assert len(A2) == 2


# -- Euler form ----------------------------------------------------------------

def test_euler_form_values():
    assert euler_form(A2, (0, 0), (1, 1)) == 0
    assert euler_form(one_vertex(1), (2,), (2,)) == 0
    assert euler_form(A2, (1, 1), (1, 1)) == 0
    assert euler_form(A2, (1, 0), (0, 1)) == -1
    with pytest.raises(ValueError):
        euler_form(A2, (1,), (1, 1))


def test_euler_form_symmetry():
    rng = random.Random(8)
    for _ in range(120):
        q = rand_quiver(rng)
        d = tuple(rng.randint(0, 3) for _ in range(len(q)))
        e = tuple(rng.randint(0, 3) for _ in range(len(q)))
        assert euler_form(q, d, e) == euler_form(q, e, d)


# -- linking -------------------------------------------------------------------

def test_link_doubled_a2():
    linked = link(A2, "a", "b")
    assert linked.vertices == ("a", "b", "a+b#1")
    assert linked.matrix == ((0, 2, 1), (2, 0, 1), (1, 1, 2))


def test_link_isolated_pair():
    q = Quiver(("a", "b"), ((0, 0), (0, 0)))
    linked = link(q, "a", "b")
    assert linked.matrix == ((0, 1, 0), (1, 0, 0), (0, 0, 0))


def test_link_preconditions():
    with pytest.raises(ValueError):
        link(one_vertex(0, "a"), "a", "a")
    with pytest.raises(KeyError):
        link(A2, "a", "missing")


# -- unlinking -----------------------------------------------------------------

def test_unlink_doubled_a2():
    unlinked = unlink(A2, "a", "b")
    assert unlinked.vertices == ("a", "b", "a*b#1")
    assert unlinked.matrix == ((0, 0, 0), (0, 0, 0), (0, 0, 1))


def test_unlink_looped_pair():
    q = Quiver(("a", "b"), ((1, 2), (2, 0)))
    unlinked = unlink(q, "a", "b")
    assert unlinked.arrows("a", "b") == 1
    assert unlinked.arrows("a", "a*b#1") == 2
    assert unlinked.arrows("b", "a*b#1") == 1
    assert unlinked.loops("a*b#1") == 4


def test_unlink_requires_edge():
    q = Quiver(("a", "b"), ((0, 0), (0, 0)))
    with pytest.raises(ValueError) as exc:
        unlink(q, "a", "b")
    assert "arrow" in str(exc.value)


def test_link_unlink_composite_matrix():
    # link(unlink(Q)) carries m_aa + m_bb + 2m_ab - 2 at both (star,diamond)
    # and (diamond,diamond)
    rng = random.Random(99)
    quivers = [A2, Quiver(("a", "b"), ((0, 2), (2, 0))),
               Quiver(("a", "b", "c"), ((1, 1, 0), (1, 0, 2), (0, 2, 1)))]
    for _ in range(40):
        q = rand_quiver(rng, max_n=3)
        if len(q) >= 2 and q.matrix[0][1] >= 1:
            quivers.append(q)
    for q in quivers:
        a, b = q.vertices[0], q.vertices[1]
        if q.arrows(a, b) < 1:
            continue
        m = q.arrows(a, a) + q.arrows(b, b) + 2 * q.arrows(a, b) - 2
        composite = link(unlink(q, a, b), a, b)
        star, diamond = composite.vertices[-2], composite.vertices[-1]
        assert composite.arrows(star, diamond) == m
        assert composite.loops(diamond) == m
        assert composite.arrows(a, b) == q.arrows(a, b)


def test_transforms_stay_symmetric_nonnegative():
    rng = random.Random(1234)
    count = 0
    while count < 120:
        q = rand_quiver(rng)
        if len(q) < 2:
            continue
        a, b = q.vertices[0], q.vertices[1]
        out = link(q, a, b)
        if q.arrows(a, b) >= 1:
            out = unlink(out, a, b)
        n = len(out)
        for i in range(n):
            for j in range(n):
                assert out.matrix[i][j] == out.matrix[j][i]
                assert out.matrix[i][j] >= 0
        count += 1


def test_fresh_label_collision():
    q = Quiver(("a", "b", "a+b#1"), ((0, 1, 0), (1, 0, 0), (0, 0, 0)))
    assert fresh_label(q, "a+b") == "a+b#2"
    linked = link(q, "a", "b")
    assert linked.vertices[-1] == "a+b#2"


def test_disjoint_union():
    u = disjoint_union(one_vertex(1, "x"), A2)
    assert u.vertices == ("x", "a", "b")
    assert u.matrix == ((1, 0, 0), (0, 0, 1), (0, 1, 0))
    with pytest.raises(QuiverFormatError):
        disjoint_union(one_vertex(1, "a"), A2)


# -- serialization --------------------------------------------------------------

def test_json_round_trip(tmp_path):
    rng = random.Random(55)
    for _ in range(25):
        q = rand_quiver(rng)
        path = tmp_path / "q.json"
        q.save(path)
        assert Quiver.load(path) == q
    obj = A2.to_json()
    assert obj == {"vertices": ["a", "b"], "matrix": [[0, 1], [1, 0]]}
    assert Quiver.from_json(json.loads(json.dumps(obj))) == A2


def test_load_errors_name_the_problem(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"vertices": ["a", "b"], "matrix": [[0, 1], [2, 0]]}')
    with pytest.raises(QuiverFormatError) as exc:
        Quiver.load(bad)
    assert "matrix[0][1]" in str(exc.value)
    notjson = tmp_path / "notjson.json"
    notjson.write_text("{")
    with pytest.raises(QuiverFormatError):
        Quiver.load(notjson)
    with pytest.raises(QuiverFormatError):
        Quiver.from_json([1, 2])
