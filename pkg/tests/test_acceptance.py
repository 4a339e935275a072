"""Acceptance criteria, one test each, with their tolerances and time limits.

Each test records a single PASS/FAIL line; the lines are printed in the
pytest terminal summary (and directly when run as a script).
"""

import random
import time
from fractions import Fraction
from math import factorial

import pytest

from nevbeta import staircase as st
from nevbeta.beta import (beta_n_value, f_nr, f_nr_leading, f_nr_recurrence_holds,
                          convolution_identity_check, volume_profile_linear)
from nevbeta.cohomology import h0_ideal, h0_ideal_bruteforce, linear_ideal, section_mass
from nevbeta.filtration import (INFINITY, UnboundedFiltration, filtration_dim, nevbir_upper, concavity_check,
                                triangle_b_grid)
from nevbeta.ideal import IdealConfig, autissier_check, from_generators, intersect_properly
from nevbeta.staircase import HalfSpace

from conftest import ACCEPTANCE_LINES, random_config, random_ideal

F = Fraction


def record(k, ok, detail, elapsed, limit):
    within = elapsed < limit
    status = "PASS" if ok and within else "FAIL"
    line = f"criterion {k:>2}: {status}  {detail}  [{elapsed:.1f}s, limit {limit}s]"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line
    assert within, line


def test_criterion_01_linear_beta():
    start = time.perf_counter()
    bad = [(n, r, N) for n in range(1, 6) for r in range(1, n + 1) for N in range(1, 31)
           if beta_n_value(n, linear_ideal(n, r), N) != F(r, n + 1)]
    record(1, not bad, f"beta_N = r/(n+1) for r<=n<=5, N<=30; mismatches {bad[:3]}",
           time.perf_counter() - start, 60)


def test_criterion_02_identity():
    start = time.perf_counter()
    bad = [(n, r, N) for n in range(1, 7) for r in range(1, n + 1) for N in range(31)
           if not convolution_identity_check(n, r, N)]
    record(2, not bad, f"convolution identity for n<=6, N<=30; failures {bad[:3]}",
           time.perf_counter() - start, 5)


def test_criterion_03_f_nr():
    start = time.perf_counter()
    worst = []
    ok = True
    for n, r in [(1, 1), (2, 1), (2, 2), (3, 2)]:
        dev = max(abs(F(f_nr(n, r, N)) / f_nr_leading(n, r, N) - 1) / F(10 * (n + 1), N)
                  for N in range(50, 201))
        worst.append(f"({n},{r}):{float(dev):.3f}")
        ok &= dev <= 1
        if r < n:
            ok &= all(f_nr_recurrence_holds(n, r, N) for N in range(1, 31))
    record(3, ok, f"ratio within 1 +- 10(n+1)/N on N=50..200 (worst fraction of the band "
                  f"{', '.join(worst)}); recurrence exact for N<=30",
           time.perf_counter() - start, 10)


def _grid_ideals(n):
    nv = n + 1
    base = [["x1"], ["x1", "x2"] if n > 1 else ["x1^2"], ["x1^2", "x0 x1"], ["x1^3", "x0 x1^2"],
            ["x0 x1"], ["x1^2", "x1 x0^2"]]
    if n >= 2:
        base += [["x1^3", "x1 x2", "x2^2"], ["x1 x2", "x0 x2^2", "x1^2"], ["x0 x1", "x2^3", "x1 x2"]]
    if n >= 3:
        base += [["x1", "x2 x3"], ["x1^2 x3", "x2^3", "x0 x3", "x1 x2"], ["x3^2", "x1 x2 x3"]]
    return [from_generators(nv, g) for g in base]


def test_criterion_04_oracle_equivalence():
    start = time.perf_counter()
    bad = []
    grid = 0
    for n in range(1, 4):
        for ideal in _grid_ideals(n):
            for N in range(13):
                for m in range(5):
                    grid += 1
                    if h0_ideal(n, N, ideal, m) != h0_ideal_bruteforce(n, N, ideal, m):
                        bad.append((n, str(ideal), N, m))
    rng = random.Random(404)
    for _ in range(500):
        n = rng.randint(1, 3)
        ideal = random_ideal(rng, n + 1, max_gens=4, max_deg=3)
        N, m = rng.randint(0, 12), rng.randint(0, 4)
        if h0_ideal(n, N, ideal, m) != h0_ideal_bruteforce(n, N, ideal, m):
            bad.append((n, str(ideal), N, m))
    record(4, not bad, f"h0 fast path = brute force on {grid} grid cells + 500 random; "
                       f"mismatches {bad[:3]}", time.perf_counter() - start, 120)


def _proper_configs(rng, count):
    found = []
    while len(found) < count:
        nv = rng.choice([4, 5])
        q = rng.randint(2, 3)
        order = list(range(nv))
        rng.shuffle(order)
        ideals = []
        for k in range(q):
            # mostly disjoint coordinate blocks, occasionally overlapping
            lo = k * (nv // q)
            block = order[lo:lo + max(1, nv // q - rng.randint(0, 1))]
            if rng.random() < 0.2:
                block.append(rng.randrange(nv))
            ideals.append(random_ideal(rng, nv, max_gens=2, max_deg=2, support=block))
        cfg = IdealConfig(nv, tuple(ideals))
        if intersect_properly(cfg):
            found.append(cfg)
    return found


def test_criterion_05_autissier_soundness():
    start = time.perf_counter()
    configs = _proper_configs(random.Random(505), 20)
    reports = [autissier_check(cfg, 3) for cfg in configs]
    failing = [str([str(i) for i in c.ideals]) for c, r in zip(configs, reports) if not r.holds]
    record(5, not failing, f"exchange law holds on box 3 for 20 proper configurations on P3/P4 "
                           f"({sum(r.checked for r in reports)} pairs); failing {failing[:2]}",
           time.perf_counter() - start, 300)


def test_criterion_06_filtration_routes():
    start = time.perf_counter()
    rng = random.Random(606)
    bad, done = [], 0
    while done < 100:
        n = rng.randint(1, 3)
        cfg = random_config(rng, n + 1, rng.randint(1, 3), max_gens=3, max_deg=2)
        t = tuple(F(rng.randint(1, 4), rng.randint(1, 3)) for _ in range(cfg.q))
        N = rng.randint(1, 10)
        x = F(rng.randint(0, 4 * N), rng.randint(1, 3))
        try:
            via_mu = filtration_dim(cfg, t, x, n, N)
        except UnboundedFiltration:
            continue
        done += 1
        if via_mu != filtration_dim(cfg, t, x, n, N, route="ideal"):
            bad.append((str([str(i) for i in cfg.ideals]), t, x, N))
    record(6, not bad, f"mu-route = joint-ideal route on 100 instances; mismatches {bad[:2]}",
           time.perf_counter() - start, 120)


def test_criterion_07_concavity_bound():
    start = time.perf_counter()
    rng = random.Random(707)
    N = 4
    configs = []
    while len(configs) < 10:
        n = rng.randint(2, 3)
        cfg = random_config(rng, n + 1, rng.randint(2, 3), max_gens=2, max_deg=2)
        if autissier_check(cfg, 2).holds:
            configs.append(cfg)
    points, bad, unbounded, equal = 0, [], 0, 0
    for cfg in configs:
        betas = tuple(beta_n_value(cfg.n, i, N) for i in cfg.ideals)
        if any(b == 0 for b in betas):
            continue
        c = cfg.with_betas(betas)
        for b in range(1, 7):
            for t in triangle_b_grid(betas, b):
                rep = concavity_check(c, t, cfg.n, N)
                points += 1
                unbounded += rep.lhs == INFINITY
                equal += rep.lhs == rep.rhs
                if not rep.holds:
                    bad.append((str([str(i) for i in cfg.ideals]), t))
    record(7, not bad and points > 0,
           f"F(t) >= min_i mass_i/beta_i on {points} grid points (b<=6, N={N}; "
           f"{unbounded} with F infinite, {equal} with equality); failures {bad[:2]}",
           time.perf_counter() - start, 300)


def test_criterion_08_nevbir():
    start = time.perf_counter()
    cfg = IdealConfig(2, (from_generators(2, ["x1"]),), betas=(F(1, 2),))
    exact = nevbir_upper(cfg, 10, 1, 10)
    large = [nevbir_upper(cfg, b, 1, 50) for b in (100, 1000)]
    ok = exact == F(11, 10) and all(v <= F(102, 100) for v in large)
    record(8, ok, f"bound(b=10,N=10) = {exact}; b=100,1000 at N=50: {[str(v) for v in large]}",
           time.perf_counter() - start, 30)


def test_criterion_09_riemann_limit():
    start = time.perf_counter()
    N = 40
    parts, ok = [], True
    for n in (1, 2, 3):
        ideal = linear_ideal(n, 1)
        scaled = F(section_mass(n, N, ideal), N ** (n + 1))
        prof = volume_profile_linear(n)
        gap = abs(scaled - prof.integral_I)
        limit = F(5, 100) / factorial(n + 1)
        beta_ok = prof.beta() == F(1, n + 1)
        ok &= gap <= limit and beta_ok
        parts.append(f"n={n}: gap {float(gap):.5f} vs {float(limit):.5f}, beta {prof.beta()}")
    record(9, ok, "; ".join(parts), time.perf_counter() - start, 30)


def test_criterion_10_structural_laws():
    start = time.perf_counter()
    rng = random.Random(1010)
    cases = 1000
    failures = {}

    def rand_stair(dim, hi=3, gens=3):
        return st.reduce_antichain([tuple(rng.randint(0, hi) for _ in range(dim))
                                    for _ in range(rng.randint(1, gens))], dim)

    def note(name, ok):
        if not ok:
            failures[name] = failures.get(name, 0) + 1

    for _ in range(cases):
        # scaled sets are saturated, nested, and additive
        s = rand_stair(rng.randint(1, 3), hi=2, gens=3)
        a, b = rng.randint(0, 3), rng.randint(0, 3)
        m, n = min(a, b), max(a, b)
        big, small = st.minkowski_scale(s, n), st.minkowski_scale(s, m)
        note("scale saturated", st.is_saturated_on_box(big, 6))
        note("scale nested", all(g in small for g in big.mingens))
        note("scale additive", st.minkowski_scale(s, a + b)
             == st.minkowski_sum(st.minkowski_scale(s, a), st.minkowski_scale(s, b)))

    for _ in range(cases):
        dim = rng.randint(1, 3)
        n1, n2 = rand_stair(dim), rand_stair(dim)
        inter, uni = st.intersect(n1, n2), st.union(n1, n2)
        joins = [st.join(c, d) for c in n1.mingens for d in n2.mingens]
        for e in st.box(dim, 4):
            in1, in2 = e in n1, e in n2
            note("intersection membership", (e in inter) == (in1 and in2))
            note("union membership", (e in uni) == (in1 or in2))
            note("join identity", any(st.leq(j, e) for j in joins) == (in1 and in2))

    for _ in range(cases):
        q = rng.randint(1, 3)
        t = [F(rng.randint(0, 4), rng.randint(1, 3)) for _ in range(q)]
        u = [F(rng.randint(0, 4), rng.randint(1, 3)) for _ in range(q)]
        t[0] = t[0] or F(1)
        u[-1] = u[-1] or F(1, 2)
        x, y = F(rng.randint(0, 8), rng.randint(1, 3)), F(rng.randint(0, 8), rng.randint(1, 3))
        lam = F(rng.randint(0, 6), 6)
        mixed = HalfSpace(tuple(lam * a + (1 - lam) * b for a, b in zip(t, u)), lam * x + (1 - lam) * y)
        inter = st.intersect(st.half_space_minimal(HalfSpace(tuple(t), x)),
                             st.half_space_minimal(HalfSpace(tuple(u), y)))
        note("half-space convexity", all(g in mixed for g in inter.mingens))

    record(10, not failures, f"{cases} random cases per law family; failures {failures}",
           time.perf_counter() - start, 120)


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
