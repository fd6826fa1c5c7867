"""Motivic DT invariant extraction, positivity, and invariance properties."""

import pytest

from quivercalc.dt import DTEntry, DTResult, dt_check, dt_extract
from quivercalc.motivic import (
    default_window,
    link_substitution,
    motivic_series,
    unlink_substitution,
)
from quivercalc.quiver import Quiver, disjoint_union, link, one_vertex, unlink
from quivercalc.series import (
    MultiSeries,
    TruncatedLaurent,
    laurent_inverse,
    laurent_mul,
    pleth_exp,
)

A2 = Quiver(("a", "b"), ((0, 1), (1, 0)))


def dt_of(quiver, order, loops_floor=1):
    window = default_window(order, max(loops_floor, quiver.max_loops()))
    return dt_extract(motivic_series(quiver, order, window))


# -- frozen oracles --------------------------------------------------------------

def test_zero_loop_invariants():
    result = dt_of(one_vertex(0), 5)
    assert result.entry((1,)).u_coeffs == {0: 1}
    for d in range(2, 6):
        entry = result.entry((d,))
        assert entry.u_coeffs == {} and entry.stable


def test_one_loop_invariants():
    result = dt_of(one_vertex(1), 5)
    assert result.entry((1,)).u_coeffs == {1: 1}
    for d in range(2, 6):
        assert result.entry((d,)).u_coeffs == {}


def test_two_loop_first_invariant():
    result = dt_of(one_vertex(2), 3)
    assert result.entry((1,)).u_coeffs == {2: 1}
    assert dt_check(result).passed


def test_doubled_a2_invariants():
    result = dt_of(A2, 3)
    assert result.entry((1, 0)).u_coeffs == {0: 1}
    assert result.entry((0, 1)).u_coeffs == {0: 1}
    assert result.entry((1, 1)).u_coeffs == {1: 1}
    for entry in result.entries:
        if entry.degree not in ((1, 0), (0, 1), (1, 1)):
            assert entry.u_coeffs == {}, entry.degree
    assert result.all_stable()


def test_empty_quiver_passes():
    result = dt_extract(motivic_series(Quiver((), ()), 3, (-12, 12)))
    assert result.entries == []
    assert dt_check(result).passed


def test_positivity_two_and_three_loops():
    for loops in (2, 3):
        result = dt_of(one_vertex(loops), 4)
        assert result.all_stable()
        report = dt_check(result)
        assert report.passed, report.summary()


def test_negated_input_fails_with_location():
    result = dt_of(one_vertex(2), 2)
    broken = DTResult(result.vertices, result.order, result.guard, [
        DTEntry(e.degree, {k: -v for k, v in e.u_coeffs.items()},
                e.window, e.stable)
        for e in result.entries])
    report = dt_check(broken)
    assert not report.passed
    assert report.mismatches[0]["degree"] == [1]
    assert "2" in report.mismatches[0]["offending"]


def test_unstable_window_flags_not_errors():
    series = motivic_series(one_vertex(2), 2, (-6, 6))
    result = dt_extract(series)
    assert not result.all_stable()
    with pytest.raises(ValueError):
        dt_check(result)


def test_nonunit_constant_rejected():
    series = MultiSeries.zero(("a",), 2, (0, 4))
    with pytest.raises(ValueError):
        dt_extract(series)


# -- structural properties ---------------------------------------------------------

def test_exp_round_trip_reconstructs_series():
    # pleth_exp(Omega / -(t - t^-1)) must reproduce A degree by degree
    for quiver in (A2, one_vertex(2)):
        order = 3
        window = default_window(order, max(1, quiver.max_loops()))
        series = motivic_series(quiver, order, window)
        result = dt_extract(series)
        terms = {}
        for entry in result.entries:
            if not entry.u_coeffs:
                continue
            t_coeffs = {e: (-v if e % 2 else v)
                        for e, v in entry.u_coeffs.items()}
            omega_t = TruncatedLaurent(t_coeffs, *entry.window)
            neg_bracket = TruncatedLaurent({-1: 1, 1: -1}, -1, entry.window[1] + 2)
            terms[entry.degree] = laurent_mul(omega_t, laurent_inverse(neg_bracket))
        log_a = MultiSeries(result.vertices, order,
                            next(iter(terms.values())).window(), terms)
        assert pleth_exp(log_a).agrees_with(series)


def test_invariance_under_linking():
    for quiver in (A2, Quiver(("a", "b"), ((0, 2), (2, 0)))):
        order = 3
        window = default_window(order, max(1, quiver.max_loops()) + 2)
        base = dt_extract(motivic_series(quiver, order, window))
        transformed = link(quiver, "a", "b")
        big = motivic_series(transformed, order, window)
        substituted = big.substitute(transformed.vertices[-1],
                                     link_substitution(quiver, "a", "b"),
                                     quiver.vertices, out_cap=order)
        other = dt_extract(substituted)
        for entry in base.entries:
            twin = other.entry(entry.degree)
            assert entry.u_coeffs == twin.u_coeffs, entry.degree


def test_invariance_under_unlinking():
    order = 3
    quiver = A2
    window = default_window(order, 3)
    base = dt_extract(motivic_series(quiver, order, window))
    transformed = unlink(quiver, "a", "b")
    big = motivic_series(transformed, order, window)
    substituted = big.substitute(transformed.vertices[-1],
                                 unlink_substitution(quiver, "a", "b"),
                                 quiver.vertices, out_cap=order)
    other = dt_extract(substituted)
    for entry in base.entries:
        assert entry.u_coeffs == other.entry(entry.degree).u_coeffs


def test_disjoint_union_additivity():
    q1 = one_vertex(1, "x")
    q2 = one_vertex(2, "y")
    union = disjoint_union(q1, q2)
    got = dt_of(union, 3, loops_floor=2)
    part1 = dt_of(q1, 3, loops_floor=2)
    part2 = dt_of(q2, 3, loops_floor=2)
    for entry in got.entries:
        d1, d2 = entry.degree
        if d1 and d2:
            assert entry.u_coeffs == {}, entry.degree
        elif d1:
            assert entry.u_coeffs == part1.entry((d1,)).u_coeffs
        else:
            assert entry.u_coeffs == part2.entry((d2,)).u_coeffs


def test_result_json_shape():
    result = dt_of(one_vertex(1), 2)
    payload = result.to_json()
    assert payload["convention"]["variable"] == "u = -q^(1/2)"
    first = payload["invariants"][0]
    assert set(first) == {"degree", "omega", "window", "stable", "positive"}
    with pytest.raises(KeyError):
        result.entry((9, 9))
