import itertools
import random

import pytest

from conftest import random_digraph
from fzforce.digraph import (
    Digraph,
    bidirected_path,
    complete,
    de_bruijn,
    digraph_from_code,
    directed_cycle,
    empty,
    members,
    popcount,
    weak_path,
)
from fzforce.forcing import closure_mask, is_critical, is_strongly_critical, is_zfs
from fzforce.solvers import (
    DEFAULT_BOUND,
    SearchBoundExceeded,
    enumerate_maximal_fzfs,
    enumerate_minimal_zfs,
    extremal_predicates,
    failed_zero_forcing_number,
    lex_key,
    max_fzfs_bruteforce,
    min_critical_set,
    zero_forcing_number,
)


def brute_min_critical(d, strong):
    test = is_strongly_critical if strong else is_critical
    best = None
    for w in range(1, d.full + 1):
        if test(d, w) and (best is None or lex_key(w) < lex_key(best)):
            best = w
    return best


def brute_z(d):
    return min(popcount(s) for s in range(d.full + 1) if closure_mask(d, s) == d.full)


def test_known_values():
    assert zero_forcing_number(directed_cycle(6)).value == 1
    assert failed_zero_forcing_number(directed_cycle(6)).value == 0
    assert zero_forcing_number(empty(4)).value == 4
    assert failed_zero_forcing_number(empty(4)).value == 3
    assert zero_forcing_number(complete(5)).value == 4
    assert failed_zero_forcing_number(complete(5)).value == 3
    assert zero_forcing_number(Digraph(1)).value == 1
    assert failed_zero_forcing_number(Digraph(1)).value == 0


def test_sources_are_in_every_zfs_witness():
    d = weak_path("FBF")  # sources 0 and 2
    sol = zero_forcing_number(d)
    assert {0, 2} <= sol.witness
    assert is_zfs(d, sol.witness)


def test_zfs_tie_break_is_size_then_lexicographic():
    # bidirected P_4: every endpoint alone is a ZFS; the first in order is {0}
    assert zero_forcing_number(bidirected_path(4)).witness == frozenset({0})
    # complete digraph: minimum ZFS are all (n-1)-sets, first is {0,...,n-2}
    assert zero_forcing_number(complete(4)).witness == frozenset({0, 1, 2})


def test_f_witness_is_a_maximum_fzfs():
    rng = random.Random(7)
    for _ in range(300):
        d = random_digraph(rng, rng.randint(1, 7), rng.choice((0.2, 0.4, 0.6)))
        sol = failed_zero_forcing_number(d)
        assert len(sol.witness) == sol.value
        assert not is_zfs(d, sol.witness)
        assert sol.checked > 0


def test_branch_and_bound_matches_brute_force():
    rng = random.Random(11)
    for _ in range(600):
        d = random_digraph(rng, rng.randint(1, 7), rng.choice((0.15, 0.3, 0.5, 0.7)))
        for strong in (False, True):
            got = min_critical_set(d, strong=strong)
            want = brute_min_critical(d, strong)
            if want is None:
                assert got is None
            else:
                assert got is not None and len(got) == popcount(want)
                assert (is_strongly_critical if strong else is_critical)(d, got)
        assert failed_zero_forcing_number(d).value == max_fzfs_bruteforce(d).value
        assert zero_forcing_number(d).value == brute_z(d)


def test_exhaustive_agreement_n4():
    for code in range(1 << 12):
        d = digraph_from_code(4, code)
        assert failed_zero_forcing_number(d).value == max_fzfs_bruteforce(d).value


def test_loop_digraphs_use_strongly_critical_sets():
    rng = random.Random(5)
    for _ in range(300):
        d = random_digraph(rng, rng.randint(1, 6), 0.35, loops=True)
        if not d.has_loops:
            continue
        sol = failed_zero_forcing_number(d)
        brute = max_fzfs_bruteforce(d)
        if zero_forcing_number(d).value == 0:
            assert sol is None and brute is None
        else:
            assert sol is not None and sol.value == brute.value


def test_loop_digraph_with_z_zero_has_undefined_f():
    d = Digraph(1, [(0, 0)], allow_loops=True)
    assert zero_forcing_number(d).value == 0
    assert failed_zero_forcing_number(d) is None
    assert min_critical_set(d, strong=True) is None


def test_de_bruijn_values():
    b, _ = de_bruijn(2, 3)
    assert failed_zero_forcing_number(b).value == 6
    assert zero_forcing_number(b).value == 4


def test_bound():
    big = empty(DEFAULT_BOUND + 1)
    with pytest.raises(SearchBoundExceeded):
        zero_forcing_number(big)
    with pytest.raises(SearchBoundExceeded):
        failed_zero_forcing_number(directed_cycle(5), bound=4)
    assert failed_zero_forcing_number(empty(22), bound=22).value == 21


def test_enumerations_bidirected_p7():
    p = bidirected_path(7)
    minimal = [sorted(s) for s in enumerate_minimal_zfs(p)]
    assert minimal == [[0], [6], [1, 2], [2, 3], [3, 4], [4, 5]]
    maximal = [sorted(s) for s in enumerate_maximal_fzfs(p)]
    assert maximal == [[1, 4], [2, 4], [2, 5], [1, 3, 5]]
    # a maximal FZFS may be smaller than F, a minimal ZFS larger than Z
    assert min(map(len, maximal)) < failed_zero_forcing_number(p).value
    assert max(map(len, minimal)) > zero_forcing_number(p).value


def test_enumerations_are_minimal_and_maximal():
    rng = random.Random(2)
    for _ in range(60):
        d = random_digraph(rng, rng.randint(1, 6), 0.4)
        for s in enumerate_minimal_zfs(d):
            assert is_zfs(d, s)
            assert all(not is_zfs(d, s - {v}) for v in s)
        for s in enumerate_maximal_fzfs(d):
            assert not is_zfs(d, s)
            assert all(is_zfs(d, s | {v}) for v in set(range(d.n)) - s)
        sizes = [len(s) for s in enumerate_minimal_zfs(d)]
        assert min(sizes) == zero_forcing_number(d).value
        fz = enumerate_maximal_fzfs(d)
        if fz:
            assert max(map(len, fz)) == failed_zero_forcing_number(d).value


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_extremal_predicates_exhaustive(n):
    for code in range(1 << (n * (n - 1))):
        d = digraph_from_code(n, code)
        f = failed_zero_forcing_number(d).value
        flags = extremal_predicates(d)
        assert (flags.f_is_n_minus_1, flags.f_is_n_minus_2, flags.f_is_n_minus_3) == (
            f == n - 1, f == n - 2, f == n - 3,
        ), code


def test_extremal_predicates_examples():
    assert extremal_predicates(weak_path("FF")).f_is_n_minus_1
    assert extremal_predicates(complete(4)).f_is_n_minus_2
    # directed C_3 has F = 0 = n - 3
    flags = extremal_predicates(directed_cycle(3))
    assert (flags.f_is_n_minus_1, flags.f_is_n_minus_2, flags.f_is_n_minus_3) == (False, False, True)
    with pytest.raises(ValueError):
        extremal_predicates(Digraph(1, [(0, 0)], allow_loops=True))


def test_lex_key_orders_by_size_then_members():
    masks = [0b100, 0b011, 0b001, 0b101]
    assert sorted(masks, key=lex_key) == [0b001, 0b100, 0b011, 0b101]
    combos = [sum(1 << v for v in c) for k in range(4) for c in itertools.combinations(range(3), k)]
    assert combos == sorted(combos, key=lex_key)
    assert members(0) == []
