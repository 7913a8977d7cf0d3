import pytest

from fzforce.classify import (
    ClassKind,
    classify_f_less_than_z,
    classify_oriented,
    critical_threshold,
    is_regular_tournament5,
)
from fzforce.digraph import (
    Digraph,
    complement,
    complete,
    digraph_from_code,
    directed_cycle,
    disjoint_union,
    empty,
    outjoin,
    tournament_from_bits,
    weak_cycle,
)
from fzforce.forcing import is_critical
from fzforce.solvers import failed_zero_forcing_number, zero_forcing_number


def kind(d):
    return classify_f_less_than_z(d).kind


def test_directed_cycles():
    for n in range(2, 10):
        assert kind(directed_cycle(n)) is ClassKind.DIRECTED_CYCLE


def test_empty_graphs():
    assert kind(empty(1)) is ClassKind.EMPTY_GRAPH
    assert kind(empty(5)) is ClassKind.EMPTY_GRAPH


def test_complete_outjoin_empty():
    d = outjoin(complete(5), empty(2))
    c = classify_f_less_than_z(d)
    assert c.kind is ClassKind.COMPLETE_OUTJOIN_EMPTY
    assert c.witness == {"complete_part": [0, 1, 2, 3, 4], "empty_part": [5, 6]}
    assert failed_zero_forcing_number(d).value == 5
    assert zero_forcing_number(d).value == 6


def test_complete_digraph_is_complete_minus_nothing_outjoin():
    # K_n alone: every vertex dominates, no sinks
    assert kind(complete(4)) is ClassKind.COMPLETE_OUTJOIN_EMPTY


def test_complete_minus_spanning_cycles():
    removed = disjoint_union([directed_cycle(3), directed_cycle(3)])
    d = complement(removed)
    c = classify_f_less_than_z(d)
    assert c.kind is ClassKind.COMPLETE_MINUS_SPANNING_CYCLES
    assert sorted(map(sorted, c.witness["removed_cycles"])) == [[0, 1, 2], [3, 4, 5]]
    assert failed_zero_forcing_number(d).value < zero_forcing_number(d).value


def test_two_cycles_removed_are_not_accepted():
    d = complement(disjoint_union([directed_cycle(2), directed_cycle(2)]))
    assert kind(d) is not ClassKind.COMPLETE_MINUS_SPANNING_CYCLES


def test_regular_tournament5():
    # i -> i+1, i+2 (mod 5)
    t = Digraph(5, [(i, (i + k) % 5) for i in range(5) for k in (1, 2)])
    assert is_regular_tournament5(t)
    assert kind(t) is ClassKind.REGULAR_TOURNAMENT5
    assert classify_oriented(t).kind is ClassKind.REGULAR_TOURNAMENT5
    assert failed_zero_forcing_number(t).value < zero_forcing_number(t).value


def test_regular_tournaments_count():
    regular = [b for b in range(1 << 10) if is_regular_tournament5(tournament_from_bits(5, b))]
    assert len(regular) == 24


def test_oriented_triangle_outjoin_vertex():
    d = outjoin(directed_cycle(3), empty(1))
    c = classify_oriented(d)
    assert c.kind is ClassKind.TRIANGLE_OUTJOIN_VERTEX
    assert c.witness == {"sink": 3, "triangle": [0, 1, 2]}
    assert kind(d) is ClassKind.SINK_OUTJOIN_COMPLEMENT


def test_oriented_rejects_two_cycles():
    with pytest.raises(ValueError):
        classify_oriented(weak_cycle("DFF"))


def test_loops_rejected():
    with pytest.raises(ValueError):
        classify_f_less_than_z(Digraph(1, [(0, 0)], allow_loops=True))
    assert critical_threshold(Digraph(1, [(0, 0)], allow_loops=True)) is None


def test_none_class():
    assert not classify_f_less_than_z(weak_cycle("FFB"))
    assert critical_threshold(weak_cycle("FFB")) is None


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_census_and_threshold(n):
    for code in range(1 << (n * (n - 1))):
        d = digraph_from_code(n, code)
        f = failed_zero_forcing_number(d).value
        z = zero_forcing_number(d).value
        c = classify_f_less_than_z(d)
        assert bool(c) == (f < z), code
        if c:
            k = critical_threshold(d)
            assert k == n - f
            for w in range(1, d.full + 1):
                assert is_critical(d, w) == (bin(w).count("1") >= k)
            # every out-degree is 0 or at least Z
            assert all(m == 0 or bin(m).count("1") >= z for m in d.out_masks)
