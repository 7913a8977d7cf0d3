"""Invariant sweeps: closed forms and classifiers against the exact solvers.

Each suite returns a :class:`SuiteReport`.  Counterexamples are the first
failure in enumeration order (not a globally minimal one).
"""

from __future__ import annotations

import itertools
import os
import random
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import batch
from .classify import classify_f_less_than_z, classify_oriented, critical_threshold
from .closed_forms import construct_weak_cycle, f_line_digraph, f_weak_cycle, f_weak_path
from .digraph import (
    Digraph,
    de_bruijn,
    digraph_from_code,
    kautz,
    line_digraph,
    oriented_from_code,
    popcount,
    weak_cycle,
    weak_path,
)
from .minrank import sample_pattern_matrix, verify_kernel_support
from .solvers import (
    enumerate_minimal_zfs,
    extremal_flags_from_in_masks,
    failed_zero_forcing_number,
    zero_forcing_number,
)

__all__ = [
    "SuiteReport",
    "SUITES",
    "worker_count",
    "run_suite",
    "brute_f_values",
    "duality_suite",
    "extremal_suite",
    "weak_path_sweep",
    "weak_cycle_sweep",
    "constructive_cycle_sweep",
    "line_digraph_sweep",
    "formulas_suite",
    "census_suite",
    "oriented_census_suite",
    "kernel_suite",
]

THREADS_ENV = "FZFORCE_THREADS"


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


@dataclass
class SuiteReport:
    name: str
    checked: int = 0
    mismatches: int = 0
    counterexample: Digraph | None = None
    detail: str = ""
    counts: dict = field(default_factory=dict)
    elapsed: float = 0.0
    series: list = field(default_factory=list)  # (label, closed, exact) rows for plots
    unit: str = "checks"

    @property
    def ok(self) -> bool:
        return self.mismatches == 0

    def record(self, ok: bool, d: Digraph | None = None, note: str = "") -> None:
        self.checked += 1
        if not ok:
            self.mismatches += 1
            if self.counterexample is None:
                self.counterexample = d
                self.detail = note

    def merge(self, other: "SuiteReport") -> None:
        self.checked += other.checked
        self.mismatches += other.mismatches
        if self.counterexample is None and other.counterexample is not None:
            self.counterexample = other.counterexample
            self.detail = other.detail
        for k, v in other.counts.items():
            self.counts[k] = self.counts.get(k, 0) + v
        self.series.extend(other.series)

    def summary(self) -> str:
        return f"{self.checked} {self.unit}, {self.mismatches} mismatches"


# -- duality / extremal (vectorised, exhaustive) --------------------------------


def brute_f_values(out: np.ndarray) -> np.ndarray:
    """F for every row, as the size of the largest failing set in the full closure table."""
    n = out.shape[1]
    table = batch.batch_zfs_table(out)
    sizes = batch.popcounts(n)
    f = np.full(out.shape[0], -1, dtype=np.int64)
    for s in range(1 << n):
        f = np.where(~table[:, s], np.maximum(f, sizes[s]), f)
    return f


def duality_suite(max_n: int = 5) -> SuiteReport:
    """Critical <=> complement stalled, F = n - min critical, every larger set forces.

    Exhaustive over all labelled loopless digraphs with ``1 <= n <= max_n``.
    F here comes from a full table of closures, independent of the
    critical-set search.
    """
    rep = SuiteReport("duality")
    t0 = time.perf_counter()
    for n in range(1, max_n + 1):
        out = batch.code_out_masks(n)
        count = out.shape[0]
        full = (1 << n) - 1
        table = batch.batch_zfs_table(out)
        sizes = batch.popcounts(n)
        f_brute = brute_f_values(out)
        min_crit = np.full(count, n + 1, dtype=np.int64)
        dual_bad = np.zeros(count, dtype=bool)
        for w in range(1 << n):
            crit = batch.batch_is_critical(out, w)
            stalled = batch.batch_is_stalled(out, full & ~w)
            dual_bad |= crit != ((w != 0) & stalled)
            min_crit = np.where(crit, np.minimum(min_crit, sizes[w]), min_crit)
        prop_bad = f_brute != n - min_crit
        super_bad = np.zeros(count, dtype=bool)
        for s in range(1 << n):
            super_bad |= (sizes[s] > f_brute) & ~table[:, s]
        for label, bad in (("duality", dual_bad), ("F=n-mincrit", prop_bad), ("supersets", super_bad)):
            nbad = int(bad.sum())
            rep.counts[f"n={n} {label} violations"] = nbad
            rep.checked += count
            rep.mismatches += nbad
            if nbad and rep.counterexample is None:
                rep.counterexample = digraph_from_code(n, int(np.argmax(bad)))
                rep.detail = label
        rep.counts[f"n={n} digraphs"] = count
    rep.elapsed = time.perf_counter() - t0
    return rep


def extremal_suite(max_n: int = 5, with_solver: bool = False) -> SuiteReport:
    """In-neighbourhood predicates for F in {n-1, n-2, n-3} against brute-force F.

    With ``with_solver`` the critical-set solver is also run on every digraph
    and must reproduce the brute-force value (about a minute at n = 5).
    """
    rep = SuiteReport("extremal")
    t0 = time.perf_counter()
    for n in range(1, max_n + 1):
        out = batch.code_out_masks(n)
        inn = batch.in_masks_of(out)
        f_brute = brute_f_values(out)
        hist = Counter()
        for code, (row, f) in enumerate(zip(inn.tolist(), f_brute.tolist())):
            flags = extremal_flags_from_in_masks(tuple(row))
            truth = (f == n - 1, f == n - 2, f == n - 3)
            hist[truth] += 1
            if with_solver:
                d = digraph_from_code(n, code)
                solved = failed_zero_forcing_number(d).value
                rep.record(solved == f, d, f"solver F={solved}, brute F={f}")
            if flags != truth:
                rep.record(False, digraph_from_code(n, code), f"flags {flags} but F={f}")
            else:
                rep.checked += 1
        rep.counts[f"n={n} F=n-1"] = hist[(True, False, False)]
        rep.counts[f"n={n} F=n-2"] = hist[(False, True, False)]
        rep.counts[f"n={n} F=n-3"] = hist[(False, False, True)]
    rep.elapsed = time.perf_counter() - t0
    return rep


# -- closed-form oracle sweeps ----------------------------------------------------


def weak_path_sweep(max_n: int = 7) -> SuiteReport:
    """Every orientation of every path on ``1..max_n`` vertices."""
    rep = SuiteReport("weak-paths")
    for n in range(1, max_n + 1):
        for spec in itertools.product("FBD", repeat=n - 1):
            d = weak_path("".join(spec)) if n > 1 else Digraph(1)
            closed = f_weak_path(d)
            exact = failed_zero_forcing_number(d).value
            rep.record(closed == exact, d, f"path {''.join(spec)}: closed {closed}, exact {exact}")
            rep.series.append((n, closed, exact))
    return rep


def weak_cycle_sweep(max_n: int = 6, min_n: int = 3) -> SuiteReport:
    """Every orientation with at least one one-way edge; bidirected cycles solver-only."""
    rep = SuiteReport("weak-cycles")
    for n in range(min_n, max_n + 1):
        for spec in itertools.product("FBD", repeat=n):
            d = weak_cycle("".join(spec))
            exact = failed_zero_forcing_number(d).value
            if set(spec) == {"D"}:
                rep.counts[f"bidirected C_{n}"] = exact
                continue
            closed = f_weak_cycle(d)
            rep.record(closed == exact, d, f"cycle {''.join(spec)}: closed {closed}, exact {exact}")
            rep.series.append((n, closed, exact))
    return rep


def constructive_cycle_sweep(n_range=range(3, 11)) -> SuiteReport:
    rep = SuiteReport("constructive-cycles")
    for n in n_range:
        for k in range(n):
            d = construct_weak_cycle(n, k)
            exact = failed_zero_forcing_number(d).value
            rep.record(exact == k, d, f"n={n} k={k}: exact {exact}")
            rep.series.append((n, k, exact))
    return rep


def line_digraph_sweep(max_n: int = 4) -> SuiteReport:
    """Every weakly connected loopless base on ``2..max_n`` vertices, plus B(2,3) and K(2,3)."""
    rep = SuiteReport("line-digraphs")
    for n in range(2, max_n + 1):
        for code in range(1 << (n * (n - 1))):
            d = digraph_from_code(n, code)
            if not d.is_weakly_connected():
                continue
            ld, _ = line_digraph(d)
            closed = f_line_digraph(d)
            exact = failed_zero_forcing_number(ld).value
            rep.record(closed == exact, d, f"closed {closed}, exact {exact}")
    for name, (g, _) in (("B(2,3)", de_bruijn(2, 3)), ("K(2,3)", kautz(2, 3))):
        sol = failed_zero_forcing_number(g)
        value = None if sol is None else sol.value
        rep.counts[f"F({name})"] = value
        rep.record(value == g.n - 2, g, f"F({name}) = {value}, expected {g.n - 2}")
    return rep


def formulas_suite() -> SuiteReport:
    rep = SuiteReport("formulas")
    t0 = time.perf_counter()
    for sub in (weak_path_sweep(), weak_cycle_sweep(), constructive_cycle_sweep(), line_digraph_sweep()):
        rep.counts[f"{sub.name} checks"] = sub.checked
        rep.counts[f"{sub.name} mismatches"] = sub.mismatches
        for k, v in sub.counts.items():
            rep.counts[k] = v
        sub.counts = {}
        rep.merge(sub)
    rep.elapsed = time.perf_counter() - t0
    return rep


# -- F < Z census --------------------------------------------------------------------


def _census_chunk(args):
    n, lo, hi, oriented = args
    rep = SuiteReport("chunk")
    for code in range(lo, hi):
        d = oriented_from_code(n, code) if oriented else digraph_from_code(n, code)
        f = failed_zero_forcing_number(d).value
        z = zero_forcing_number(d).value
        c = classify_oriented(d) if oriented else classify_f_less_than_z(d)
        ok = bool(c) == (f < z)
        if ok and f < z and not oriented:
            # out-degree filter and the threshold corollary on every hit
            ok = all(m == 0 or popcount(m) >= z for m in d.out_masks)
            ok = ok and critical_threshold(d) == n - f
        rep.record(ok, d, f"class {c.kind.value}, F={f}, Z={z}")
        rep.counts[c.kind.value] = rep.counts.get(c.kind.value, 0) + 1
        if f < z:
            rep.counts["F<Z"] = rep.counts.get("F<Z", 0) + 1
    return rep


def _scan(n: int, total: int, oriented: bool, workers: int) -> SuiteReport:
    if workers <= 1 or total < 2000:
        return _census_chunk((n, 0, total, oriented))
    step = -(-total // (workers * 4))
    chunks = [(n, lo, min(total, lo + step), oriented) for lo in range(0, total, step)]
    rep = SuiteReport("scan")
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_census_chunk, chunks):
            rep.merge(part)
    return rep


def census_suite(n: int = 4, workers: int | None = None) -> SuiteReport:
    """All labelled loopless digraphs on ``n`` vertices: classifier hit <=> F < Z."""
    t0 = time.perf_counter()
    rep = _scan(n, 1 << (n * (n - 1)), False, worker_count() if workers is None else workers)
    rep.name = f"census{n}"
    rep.unit = "digraphs"
    rep.elapsed = time.perf_counter() - t0
    return rep


def oriented_census_suite(n: int = 5, workers: int | None = None) -> SuiteReport:
    """All labelled oriented graphs on ``n`` vertices: oriented classifier hit <=> F < Z."""
    t0 = time.perf_counter()
    rep = _scan(n, 3 ** (n * (n - 1) // 2), True, worker_count() if workers is None else workers)
    rep.name = f"oriented{n}"
    rep.unit = "digraphs"
    rep.elapsed = time.perf_counter() - t0
    return rep


# -- kernel support ----------------------------------------------------------------------


def kernel_suite(num_digraphs: int = 50, max_n: int = 6, seeds: int = 20, seed: int = 2024) -> SuiteReport:
    """Kernel vectors of pattern matrices cannot vanish on a ZFS.

    Sets checked per digraph: every minimal ZFS (the solver's minimum ZFS is
    among them) and a few random sets of order at least F + 1.
    """
    rep = SuiteReport("kernel")
    t0 = time.perf_counter()
    rng = random.Random(seed)
    for _ in range(num_digraphs):
        n = rng.randint(1, max_n)
        p = rng.choice((0.25, 0.4, 0.6))
        d = Digraph(n, [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p])
        sets = {frozenset(s) for s in enumerate_minimal_zfs(d)}
        sets.add(zero_forcing_number(d).witness)
        f = failed_zero_forcing_number(d).value
        for _ in range(3):
            k = rng.randint(f + 1, n)
            sets.add(frozenset(rng.sample(range(n), k)))
        for s in sorted(sets, key=lambda x: (len(x), sorted(x))):
            for sd in range(seeds):
                m = sample_pattern_matrix(d, sd)
                rep.record(verify_kernel_support(d, s, m), d, f"set {sorted(s)} seed {sd}")
    rep.elapsed = time.perf_counter() - t0
    return rep


SUITES = {
    "duality": duality_suite,
    "formulas": formulas_suite,
    "census3": lambda: census_suite(3),
    "census4": lambda: census_suite(4),
    "oriented5": lambda: oriented_census_suite(5),
    "kernel": kernel_suite,
    "extremal": extremal_suite,
}


def run_suite(name: str) -> SuiteReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    t0 = time.perf_counter()
    rep = SUITES[name]()
    if not rep.elapsed:
        rep.elapsed = time.perf_counter() - t0
    return rep

