"""Filtrations of H^0(P^n, O(N)) by joint ideals, and the scalars built on them.

For weights t and a threshold x, F(t)_x is spanned by the degree-N
monomials lying (as sections of the sheaf) in J(N(t, x)).  A monomial's
value mu is the largest x for which it survives; the whole filtration is
determined by the mu-table because the monomial basis is adapted to it.

On the affine chart x_k = 1 a monomial e lies in J(N(t, x)) iff some
packing of generators of the localized ideals fits under e with total
weight at least x.  A section lies in the sheaf iff it does so on every
chart, so mu is the minimum of the chart values.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import staircase as st
from .cohomology import compositions, h0_ideal, h0_total, section_mass
from .ideal import IdealConfig, autissier_check, joint_ideal, localize
from .staircase import ExpVec, HalfSpace, minimal_elements

INFINITY = float("inf")


def weight_vector(t: Sequence) -> tuple[Fraction, ...]:
    """Validate weights: nonnegative rationals, not all zero."""
    w = tuple(Fraction(v) for v in t)
    if not w or any(v < 0 for v in w) or all(v == 0 for v in w):
        raise ValueError(f"weights must be nonnegative and not all zero: {[str(v) for v in w]}")
    return w


def parse_weights(text: str) -> tuple[Fraction, ...]:
    """``"1/2,1/3"`` -> weight vector."""
    return weight_vector(Fraction(p.strip()) for p in text.split(","))


class UnboundedFiltration(ValueError):
    """F(t)_x is all of H^0 for every x, so mu and F(t) are infinite."""


class _ChartDP:
    """Best packing weight under each exponent vector, filled by degree."""

    def __init__(self, weighted_gens: list[tuple[ExpVec, Fraction]], k: int):
        self.gens = weighted_gens
        self.k = k
        self.values: dict[ExpVec, Fraction] = {}
        self.filled = -1

    def extend_to(self, degree: int) -> None:
        vals = self.values
        zero = Fraction(0)
        for d in range(self.filled + 1, degree + 1):
            for s in compositions(d, self.k):
                best = zero
                for g, w in self.gens:
                    if all(a <= b for a, b in zip(g, s)):
                        v = w + vals[tuple(b - a for a, b in zip(g, s))]
                        if v > best:
                            best = v
                vals[s] = best
        self.filled = max(self.filled, degree)

    def __call__(self, s: ExpVec) -> Fraction:
        d = sum(s)
        if d > self.filled:
            self.extend_to(d)
        return self.values[s]


@dataclass(frozen=True)
class _Chart:
    coords: tuple[int, ...]
    dp: _ChartDP

    def value(self, e: Sequence[int]) -> Fraction:
        return self.dp(tuple(e[c] for c in self.coords))


@lru_cache(maxsize=128)
def _charts(cfg: IdealConfig, t: tuple[Fraction, ...]) -> tuple[_Chart, ...]:
    if len(t) != cfg.q:
        raise ValueError(f"{len(t)} weights for {cfg.q} ideals")
    used = {k for ideal in cfg.ideals for g in ideal.mingens for k, c in enumerate(g) if c}
    free = [k for k in range(cfg.num_vars) if k not in used]
    # with an unused coordinate its chart dominates all others
    candidates = free[:1] or list(range(cfg.num_vars))
    charts = []
    for k in candidates:
        pattern = [j for j in range(cfg.num_vars) if j != k]
        weighted = []
        unbounded = False
        for ideal, w in zip(cfg.ideals, t):
            if w == 0:
                continue
            local = localize(ideal, pattern)
            if local.is_unit:
                unbounded = True
                break
            weighted.extend((g, w) for g in local.mingens)
        if unbounded:
            continue
        coords = tuple(sorted({j for g, _ in weighted for j, c in enumerate(g) if c}))
        packed = [(tuple(g[j] for j in coords), w) for g, w in weighted]
        charts.append(_Chart(coords, _ChartDP(packed, len(coords))))
    if not charts:
        raise UnboundedFiltration(
            "the positively weighted ideals have no common point on any affine chart, "
            "so F(t)_x is all of H^0 for every x and F(t) is infinite")
    return tuple(charts)


def mu_value(e: Sequence[int], cfg: IdealConfig, t: Sequence) -> Fraction:
    """Largest x with the monomial ``e`` in F(t)_x."""
    if len(e) != cfg.num_vars:
        raise ValueError(f"exponent vector of length {len(e)} for {cfg.num_vars} variables")
    charts = _charts(cfg, weight_vector(t))
    return min(ch.value(e) for ch in charts)


def mu_table(cfg: IdealConfig, t: Sequence, N: int) -> dict[ExpVec, Fraction]:
    charts = _charts(cfg, weight_vector(t))
    return {e: min(ch.value(e) for ch in charts) for e in compositions(N, cfg.num_vars)}


def filtration_dim(cfg: IdealConfig, t: Sequence, x, n: int, N: int, route: str = "mu") -> int:
    """dim F(t)_x inside H^0(P^n, O(N)).

    ``route="mu"`` counts monomials by value.  ``route="ideal"`` counts the
    degree-N sections of the joint ideal of the half-space, chart by chart;
    ``route="literal"`` builds that joint ideal in the polynomial ring and
    saturates it (same number, much slower for large thresholds).
    """
    _check_space(cfg, n)
    x = Fraction(x)
    w = weight_vector(t)
    if route == "mu":
        return sum(1 for v in mu_table(cfg, w, N).values() if v >= x)
    if route == "ideal":
        return joint_sections(cfg, st.half_space_minimal(HalfSpace(w, x)), N)
    if route == "literal":
        return h0_ideal(n, N, joint_ideal(cfg, st.half_space_minimal(HalfSpace(w, x))), 1)
    raise ValueError(f"unknown route {route!r}")


def _truncated_sum(a: list[ExpVec], b: list[ExpVec], N: int) -> list[ExpVec]:
    return minimal_elements(g for g in (st.vec_add(u, v) for u in a for v in b) if sum(g) <= N)


def joint_sections(cfg: IdealConfig, nset: st.Staircase, N: int) -> int:
    """h^0(O(N) (x) J(nset)), the degree-N sections of the joint ideal sheaf.

    On the chart x_k = 1 only local generators of degree <= N can divide a
    degree-N monomial, and products only raise degrees, so each local joint
    ideal is built with everything above degree N thrown away.
    """
    if nset.dim != cfg.q:
        raise ValueError(f"saturated set of dim {nset.dim} for {cfg.q} ideals")
    k_all = cfg.num_vars
    zero = (0,) * k_all
    local_gens = []
    for k in range(k_all):
        pattern = [j for j in range(k_all) if j != k]
        locs = [localize(ideal, pattern) for ideal in cfg.ideals]
        powers: dict[tuple[int, int], list[ExpVec]] = {}

        def power_of(i: int, m: int) -> list[ExpVec]:
            if (i, m) not in powers:
                if m == 0 or locs[i].is_unit:
                    powers[(i, m)] = [zero]
                else:
                    powers[(i, m)] = _truncated_sum(power_of(i, m - 1), list(locs[i].mingens), N)
            return powers[(i, m)]

        gens: list[ExpVec] = []
        for b in nset.mingens:
            acc = [zero]
            for i, bi in enumerate(b):
                acc = _truncated_sum(acc, power_of(i, bi), N)
                if not acc:
                    break
            gens.extend(acc)
        local_gens.append(minimal_elements(gens))
    return sum(1 for e in compositions(N, k_all)
               if all(any(st.leq(g, e) for g in gens) for gens in local_gens))


def _check_space(cfg: IdealConfig, n: int) -> None:
    if cfg.num_vars != n + 1:
        raise ValueError(f"configuration has {cfg.num_vars} variables, not a P^{n} one")


@dataclass(frozen=True)
class FiltrationProfile:
    """Step function x -> dim F(t)_x.

    ``jumps`` lists (x_j, d_j) with x_j increasing; dim F(t)_x = d_j for
    x_{j-1} < x <= x_j (x_{-1} = -oo) and 0 past the last jump.
    """

    jumps: tuple[tuple[Fraction, int], ...]
    n: int
    N: int
    q: int

    def dim_at(self, x) -> int:
        x = Fraction(x)
        for xj, dj in self.jumps:
            if x <= xj:
                return dj
        return 0

    def integral(self) -> Fraction:
        total = Fraction(0)
        prev = Fraction(0)
        for xj, dj in self.jumps:
            total += (xj - prev) * dj
            prev = xj
        return total

    def rows(self) -> list[dict]:
        return [{"x_jump": xj, "dim": dj} for xj, dj in self.jumps]


def filtration_profile(cfg: IdealConfig, t: Sequence, n: int, N: int) -> FiltrationProfile:
    _check_space(cfg, n)
    values = sorted(mu_table(cfg, t, N).values())
    jumps = []
    total = len(values)
    for v, group in itertools.groupby(values):
        jumps.append((v, total))
        total -= len(list(group))
    return FiltrationProfile(tuple(jumps), n, N, cfg.q)


def big_f(cfg: IdealConfig, t: Sequence, n: int, N: int) -> Fraction:
    """(1/h^0) * integral of dim F(t)_x, as the average mu-value."""
    _check_space(cfg, n)
    table = mu_table(cfg, t, N)
    return sum(table.values(), Fraction(0)) / h0_total(n, N)


def _local_mindeg(ideal) -> int:
    # a chart may need fewer factors than the ring ideal suggests
    k = ideal.num_vars
    degs = [loc.mindeg for loc in (localize(ideal, [j for j in range(k) if j != c]) for c in range(k))
            if not loc.is_unit]
    return min(degs)


def big_f_integral(cfg: IdealConfig, t: Sequence, n: int, N: int) -> Fraction:
    """F(t) by integrating the step function built from joint-ideal counts.

    Jumps can only sit at values t.b where each b_i generators of the
    localized I_i fit into degree N on some chart, so the step function
    is evaluated exactly there.
    """
    _check_space(cfg, n)
    w = weight_vector(t)
    ranges = []
    for ideal, wi in zip(cfg.ideals, w):
        top = N // _local_mindeg(ideal) if wi > 0 else 0
        ranges.append(range(top + 1))
    candidates = sorted({sum((wi * bi for wi, bi in zip(w, b)), Fraction(0))
                         for b in itertools.product(*ranges)} - {0})
    total = Fraction(0)
    prev = Fraction(0)
    for v in candidates:
        total += (v - prev) * filtration_dim(cfg, w, v, n, N, route="ideal")
        prev = v
    return total / h0_total(n, N)


@dataclass
class ConcavityReport:
    t: tuple[Fraction, ...]
    lhs: Fraction | float
    rhs: Fraction
    holds: bool

    def to_json(self) -> dict:
        return {"t": [str(v) for v in self.t], "lhs": str(self.lhs), "rhs": str(self.rhs),
                "holds": self.holds}


class HypothesisError(ValueError):
    """A theorem's hypothesis failed for the given data."""


def concavity_rhs(cfg: IdealConfig, n: int, N: int) -> Fraction:
    """min over i of (1/beta_i) * sum_{m>=1} h^0(O(N) (x) I_i^m) / h^0(O(N))."""
    if cfg.betas is None:
        raise ValueError("configuration carries no weights beta_i")
    total = h0_total(n, N)
    return min(Fraction(section_mass(n, N, ideal), total) / b
               for ideal, b in zip(cfg.ideals, cfg.betas))


def concavity_check(cfg: IdealConfig, t: Sequence, n: int, N: int, box: int | None = None) -> ConcavityReport:
    """Compare F(t) with the concavity lower bound at a point with sum beta_i t_i = 1.

    With ``box`` set, the exchange law is verified first on that box.
    """
    _check_space(cfg, n)
    w = weight_vector(t)
    if cfg.betas is None:
        raise ValueError("configuration carries no weights beta_i")
    if len(w) != cfg.q:
        raise ValueError(f"{len(w)} weights for {cfg.q} ideals")
    s = sum((b * ti for b, ti in zip(cfg.betas, w)), Fraction(0))
    if s != 1:
        raise ValueError(f"sum beta_i t_i = {s}, must be exactly 1")
    if box is not None and not autissier_check(cfg, box).holds:
        raise HypothesisError(f"exchange law fails on box {box}")
    rhs = concavity_rhs(cfg, n, N)
    try:
        lhs = big_f(cfg, w, n, N)
    except UnboundedFiltration:
        lhs = INFINITY
    return ConcavityReport(w, lhs, rhs, lhs >= rhs)


def convexity_check(cfg: IdealConfig, tx: tuple, uy: tuple, lam, n: int, N: int) -> bool:
    """F(t)_x & F(u)_y inside F(lam t + (1-lam) u)_{lam x + (1-lam) y}, on degree N."""
    _check_space(cfg, n)
    t, x = weight_vector(tx[0]), Fraction(tx[1])
    u, y = weight_vector(uy[0]), Fraction(uy[1])
    lam = Fraction(lam)
    if not 0 <= lam <= 1:
        raise ValueError(f"lambda = {lam} outside [0, 1]")
    mixed = tuple(lam * a + (1 - lam) * b for a, b in zip(t, u))
    z = lam * x + (1 - lam) * y
    mt, mu_, mm = mu_table(cfg, t, N), mu_table(cfg, u, N), mu_table(cfg, mixed, N)
    return all(mm[e] >= z for e in mt if mt[e] >= x and mu_[e] >= y)


def nevbir_upper(cfg: IdealConfig, b: int, n: int, N: int):
    """((b+q)/b) * (min_i (1/beta_i) sum_m h^0(O(N) (x) I_i^m) / (N h^0(O(N))))^-1.

    Returns :data:`INFINITY` if the minimum vanishes.
    """
    _check_space(cfg, n)
    if cfg.betas is None:
        raise ValueError("configuration carries no weights beta_i")
    if b < 1 or N < 1:
        raise ValueError("b and N must be positive")
    for name, ideal in zip(cfg.names, cfg.ideals):
        if h0_ideal(n, N, ideal, 1) == 0:
            raise HypothesisError(f"H^0(O({N}) (x) {name}) = 0")
    total = N * h0_total(n, N)
    least = min(Fraction(section_mass(n, N, ideal), total) / beta
                for ideal, beta in zip(cfg.ideals, cfg.betas))
    if least == 0:
        return INFINITY
    return Fraction(b + cfg.q, b) / least


def triangle_b_grid(betas: Sequence, b: int) -> list[tuple[Fraction, ...]]:
    """All a/b with a_i in (1/beta_i) N and sum beta_i a_i = b."""
    betas = [Fraction(v) for v in betas]
    if not betas or any(v <= 0 for v in betas):
        raise ValueError("betas must be positive")
    if b < 1:
        raise ValueError("b must be a positive integer")
    # a_i = k_i / beta_i with k a composition of b
    return [tuple(Fraction(k, 1) / (beta * b) for k, beta in zip(ks, betas))
            for ks in compositions(b, len(betas))]
