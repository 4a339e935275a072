"""Monomial ideals in k[x_0, ..., x_n] viewed as ideal sheaves on P^n.

An ideal is a staircase of exponent vectors.  Geometric questions (does
a point lie on Y, do the Y_i meet properly there, does the exchange law
hold there) are answered chart by chart: at a point of P^n whose
vanishing coordinates are Z, the local ideal is obtained by setting every
x_j with j not in Z to 1, i.e. zeroing those exponents.  Points sharing
the same Z are interchangeable under the torus, so finitely many patterns
cover all of P^n.
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from . import staircase as st
from .staircase import ExpVec, Staircase


@dataclass(frozen=True)
class MonomialIdeal:
    num_vars: int
    exponents: Staircase

    def __post_init__(self):
        if self.exponents.dim != self.num_vars:
            raise ValueError(
                f"staircase of dim {self.exponents.dim} for {self.num_vars} variables")

    @property
    def mingens(self) -> tuple[ExpVec, ...]:
        return self.exponents.mingens

    @property
    def is_unit(self) -> bool:
        return self.exponents.is_everything

    @property
    def mindeg(self) -> int:
        return min(sum(g) for g in self.mingens)

    def __contains__(self, e: Sequence[int]) -> bool:
        return st.contains(self.exponents, e)

    def __str__(self) -> str:
        return "(" + ", ".join(format_monomial(g) for g in self.mingens) + ")"


def unit_ideal(num_vars: int) -> MonomialIdeal:
    return MonomialIdeal(num_vars, st.full(num_vars))


def _ideal(num_vars: int, gens: Iterable[Sequence[int]]) -> MonomialIdeal:
    return MonomialIdeal(num_vars, st.reduce_antichain(gens, num_vars))


_TOKEN = re.compile(r"x(\d+)(?:\^(\d+))?")


def parse_monomial(text: str, num_vars: int) -> ExpVec:
    """Parse ``"x0^2 x3"`` (or ``"x0^2*x3"``) into an exponent vector."""
    e = [0] * num_vars
    body = text.replace("*", " ").strip()
    if body in ("", "1"):
        return tuple(e)
    for tok in body.split():
        m = _TOKEN.fullmatch(tok)
        if m is None:
            raise ValueError(f"cannot parse monomial factor {tok!r} in {text!r}")
        idx = int(m.group(1))
        if idx >= num_vars:
            raise ValueError(f"variable x{idx} out of range for {num_vars} variables")
        e[idx] += int(m.group(2) or 1)
    return tuple(e)


def format_monomial(e: Sequence[int]) -> str:
    parts = [f"x{i}" if c == 1 else f"x{i}^{c}" for i, c in enumerate(e) if c]
    return " ".join(parts) or "1"


def from_generators(num_vars: int, gens: Iterable[Sequence[int] | str]) -> MonomialIdeal:
    """Ideal of a nonempty proper closed subscheme, from monomial generators.

    Generators may be exponent vectors or strings like ``"x1^3"``.
    """
    vecs = []
    for g in gens:
        vecs.append(parse_monomial(g, num_vars) if isinstance(g, str) else tuple(g))
    if not vecs:
        raise ValueError("an ideal needs at least one generator")
    if any(not any(v) for v in vecs):
        raise ValueError("the constant monomial generates the whole ring")
    ideal = _ideal(num_vars, vecs)
    if saturate(ideal).is_unit:
        raise ValueError(f"{ideal} cuts out the empty subscheme of P^{num_vars - 1}")
    return ideal


def _check_pair(i: MonomialIdeal, j: MonomialIdeal) -> None:
    if i.num_vars != j.num_vars:
        raise ValueError(f"variable count mismatch: {i.num_vars} vs {j.num_vars}")


def power(i: MonomialIdeal, m: int) -> MonomialIdeal:
    return MonomialIdeal(i.num_vars, _power_stair(i.exponents, m))


@lru_cache(maxsize=4096)
def _power_stair(s: Staircase, m: int) -> Staircase:
    if m <= 1:
        return st.minkowski_scale(s, m)
    # I^m = I^(m-1) * I reuses the cached lower powers across calls
    return st.minkowski_sum(_power_stair(s, m - 1), s)


def product(i: MonomialIdeal, j: MonomialIdeal) -> MonomialIdeal:
    _check_pair(i, j)
    return MonomialIdeal(i.num_vars, st.minkowski_sum(i.exponents, j.exponents))


def ideal_sum(i: MonomialIdeal, j: MonomialIdeal) -> MonomialIdeal:
    _check_pair(i, j)
    return MonomialIdeal(i.num_vars, st.union(i.exponents, j.exponents))


def intersect_ideal(i: MonomialIdeal, j: MonomialIdeal) -> MonomialIdeal:
    _check_pair(i, j)
    return MonomialIdeal(i.num_vars, st.intersect(i.exponents, j.exponents))


def ideal_equal(i: MonomialIdeal, j: MonomialIdeal) -> bool:
    _check_pair(i, j)
    return i.mingens == j.mingens


def localize(i: MonomialIdeal, pattern: Iterable[int]) -> MonomialIdeal:
    """Set every variable outside ``pattern`` to 1."""
    keep = set(pattern)
    gens = (tuple(c if k in keep else 0 for k, c in enumerate(g)) for g in i.mingens)
    return _ideal(i.num_vars, gens)


def saturate(i: MonomialIdeal) -> MonomialIdeal:
    """Saturation with respect to (x_0, ..., x_n).

    Two monomial ideals give the same sheaf on P^n exactly when their
    saturations agree.  I : x_k^oo drops coordinate k, and the saturation
    is the intersection of those colon ideals over k.
    """
    n = i.num_vars
    result = localize(i, [j for j in range(n) if j != 0])
    for k in range(1, n):
        result = intersect_ideal(result, localize(i, [j for j in range(n) if j != k]))
    return result


def monomial_type_witness(i: MonomialIdeal) -> frozenset[int]:
    """Variables occurring in some minimal generator.

    A monomial ideal is of monomial type with respect to these variables,
    which form a regular sequence in the polynomial ring.
    """
    return frozenset(k for g in i.mingens for k, c in enumerate(g) if c)


@dataclass(frozen=True)
class IdealConfig:
    num_vars: int
    ideals: tuple[MonomialIdeal, ...]
    names: tuple[str, ...] = ()
    betas: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        if not self.ideals:
            raise ValueError("configuration without ideals")
        for ideal in self.ideals:
            if ideal.num_vars != self.num_vars:
                raise ValueError("all ideals must live in the same number of variables")
        names = tuple(self.names) or tuple(f"I{k + 1}" for k in range(len(self.ideals)))
        if len(names) != len(self.ideals):
            raise ValueError("one name per ideal")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate ideal names in {names}")
        object.__setattr__(self, "names", names)
        if self.betas is not None:
            betas = tuple(Fraction(b) for b in self.betas)
            if len(betas) != len(self.ideals):
                raise ValueError(f"{len(betas)} weights for {len(self.ideals)} ideals")
            if any(b <= 0 for b in betas):
                raise ValueError(f"weights must be positive: {betas}")
            object.__setattr__(self, "betas", betas)
        object.__setattr__(self, "ideals", tuple(self.ideals))

    @property
    def q(self) -> int:
        return len(self.ideals)

    @property
    def n(self) -> int:
        """Dimension of the ambient projective space."""
        return self.num_vars - 1

    def ideal(self, name: str) -> MonomialIdeal:
        try:
            return self.ideals[self.names.index(name)]
        except ValueError:
            raise KeyError(name) from None

    def with_betas(self, betas: Sequence[Fraction]) -> "IdealConfig":
        return IdealConfig(self.num_vars, self.ideals, self.names, tuple(betas))

    def subfamily(self, indices: Sequence[int]) -> "IdealConfig":
        return IdealConfig(
            self.num_vars,
            tuple(self.ideals[k] for k in indices),
            tuple(self.names[k] for k in indices),
            None if self.betas is None else tuple(self.betas[k] for k in indices),
        )


def joint_ideal(cfg: IdealConfig, n: Staircase) -> MonomialIdeal:
    """Sum of I_1^b_1 ... I_q^b_q over the minimal elements b of ``n``."""
    if n.dim != cfg.q:
        raise ValueError(f"saturated set of dim {n.dim} for {cfg.q} ideals")
    gens: list[ExpVec] = []
    for b in n.mingens:
        gens.extend(_monomial_product(cfg.ideals, b).mingens)
    return _ideal(cfg.num_vars, gens)


def _monomial_product(ideals: Sequence[MonomialIdeal], b: Sequence[int]) -> MonomialIdeal:
    num_vars = ideals[0].num_vars
    acc = st.full(num_vars)
    for ideal, bi in zip(ideals, b):
        if bi:
            acc = st.minkowski_sum(acc, _power_stair(ideal.exponents, bi))
    return MonomialIdeal(num_vars, acc)


# -- points of P^n and proper intersection ---------------------------------

def vanishing_patterns(num_vars: int, maximal_only: bool = False) -> list[tuple[int, ...]]:
    """Coordinate sets Z that vanish at some point of P^n."""
    sizes = [num_vars - 1] if maximal_only else range(num_vars)
    return [z for r in sizes for z in itertools.combinations(range(num_vars), r)]


def ideals_through(cfg: IdealConfig, pattern: Sequence[int]) -> list[int]:
    """Indices of the Y_i containing the points with vanishing set ``pattern``."""
    return [k for k, ideal in enumerate(cfg.ideals) if not localize(ideal, pattern).is_unit]


def _proper_at(cfg: IdealConfig, pattern: Sequence[int]) -> bool:
    seen: set[int] = set()
    for k in ideals_through(cfg, pattern):
        supp = monomial_type_witness(localize(cfg.ideals[k], pattern))
        if seen & supp:
            return False
        seen |= supp
    return True


def intersect_properly(cfg: IdealConfig) -> bool:
    """Proper intersection at every point of P^n.

    Locally the ideals through a point must have pairwise disjoint
    variable supports, so that the combined sequence of variables is
    regular.  Maximal patterns suffice: localizing further only shrinks
    both the family and the supports.
    """
    return all(_proper_at(cfg, z) for z in vanishing_patterns(cfg.num_vars, maximal_only=True))


def weakly_intersect_properly(cfg: IdealConfig) -> bool:
    """Proper intersection at the points lying on at least two of the Y_i."""
    return all(
        _proper_at(cfg, z)
        for z in vanishing_patterns(cfg.num_vars)
        if len(ideals_through(cfg, z)) >= 2
    )


# -- the exchange law J(N & N') = J(N) & J(N') -----------------------------

@dataclass
class AutissierReport:
    holds: bool
    box: int
    mode: str
    scope: str
    trials: int = 0
    seed: int | None = None
    checked: int = 0
    counterexample: tuple[Staircase, Staircase] | None = None
    pattern: tuple[int, ...] | None = None
    indices: tuple[int, ...] | None = None

    def to_json(self) -> dict:
        out = {
            "holds": self.holds,
            "scope": {"box": self.box, "mode": self.mode, "locality": self.scope,
                      "trials": self.trials, "seed": self.seed},
            "pairs_checked": self.checked,
            "counterexample": None,
        }
        if self.counterexample is not None:
            out["counterexample"] = {
                "N": self.counterexample[0].to_json(),
                "N_prime": self.counterexample[1].to_json(),
                "vanishing_pattern": list(self.pattern) if self.pattern is not None else None,
                "ideal_indices": list(self.indices) if self.indices is not None else None,
            }
        return out


def exchange_law_holds(cfg: IdealConfig, n1: Staircase, n2: Staircase) -> bool:
    lhs = joint_ideal(cfg, st.intersect(n1, n2))
    rhs = intersect_ideal(joint_ideal(cfg, n1), joint_ideal(cfg, n2))
    return ideal_equal(lhs, rhs)


def _principal_failure(cfg: IdealConfig, box: int) -> tuple[int, tuple[ExpVec, ExpVec] | None]:
    # The law for all saturated pairs with generators in the box reduces to
    # principal pairs: intersections of monomial ideals distribute over sums,
    # J(N) & J(N') = sum of P(c) & P(c'), while J(N & N') = sum of P(c v c').
    # P(c v c') always sits inside P(c) & P(c'), so a pair fails only if the
    # reverse inclusion fails, and comparable pairs never fail.
    cache: dict[ExpVec, MonomialIdeal] = {}

    def p(c: ExpVec) -> MonomialIdeal:
        if c not in cache:
            cache[c] = _monomial_product(cfg.ideals, c)
        return cache[c]

    checked = 0
    points = list(st.box(cfg.q, box))
    for a, c in itertools.combinations(points, 2):
        if st.leq(a, c) or st.leq(c, a):
            continue
        checked += 1
        if not ideal_equal(intersect_ideal(p(a), p(c)), p(st.join(a, c))):
            return checked, (a, c)
    return checked, None


def antichains_in_box(dim: int, bound: int) -> list[Staircase]:
    """Every saturated set whose minimal generators lie in [0, bound]^dim."""
    points = sorted(st.box(dim, bound), key=lambda p: (sum(p), p))
    out: list[Staircase] = []

    def rec(start: int, chosen: list[ExpVec]) -> None:
        if chosen:
            out.append(st.reduce_antichain(chosen, dim))
        for k in range(start, len(points)):
            p = points[k]
            if all(not st.leq(g, p) and not st.leq(p, g) for g in chosen):
                chosen.append(p)
                rec(k + 1, chosen)
                chosen.pop()

    rec(0, [])
    return out


def random_saturated(rng: random.Random, dim: int, bound: int, max_gens: int = 3) -> Staircase:
    gens = [tuple(rng.randint(0, bound) for _ in range(dim)) for _ in range(rng.randint(1, max_gens))]
    return st.reduce_antichain(gens, dim)


def _families(cfg: IdealConfig, scope: str) -> list[tuple[tuple[int, ...] | None, IdealConfig, tuple[int, ...]]]:
    if scope == "ring":
        return [(None, cfg, tuple(range(cfg.q)))]
    fams = []
    seen = set()
    for z in vanishing_patterns(cfg.num_vars):
        idx = tuple(ideals_through(cfg, z))
        if len(idx) < 2:
            continue
        local = IdealConfig(cfg.num_vars, tuple(localize(cfg.ideals[k], z) for k in idx))
        key = tuple(i.mingens for i in local.ideals)
        if key in seen:
            continue
        seen.add(key)
        fams.append((z, local, idx))
    return fams


def autissier_check(
    cfg: IdealConfig,
    box: int,
    mode: str = "exhaustive",
    trials: int = 200,
    seed: int = 0,
    scope: str = "sheaf",
) -> AutissierReport:
    """Test the exchange law on saturated sets with generators in [0, box]^q.

    ``scope="sheaf"`` checks it at every point of P^n for the ideals
    through that point (families of one ideal are trivially fine);
    ``scope="ring"`` checks it for the ideals of the polynomial ring
    themselves.  Modes: ``exhaustive`` covers every pair via the principal
    reduction, ``antichains`` literally enumerates all pairs (tiny boxes
    only), ``randomized`` samples ``trials`` pairs per family.
    """
    if box < 1:
        raise ValueError(f"box must be at least 1, got {box}")
    if mode not in ("exhaustive", "antichains", "randomized"):
        raise ValueError(f"unknown mode {mode!r}")
    if scope not in ("sheaf", "ring"):
        raise ValueError(f"unknown scope {scope!r}")
    report = AutissierReport(True, box, mode, scope,
                             trials=trials if mode == "randomized" else 0,
                             seed=seed if mode == "randomized" else None)
    if cfg.q == 1 and scope == "ring":
        return report
    for z, fam, idx in _families(cfg, scope):
        if mode == "exhaustive":
            checked, bad = _principal_failure(fam, box)
            report.checked += checked
            if bad is not None:
                pair = (st.reduce_antichain([bad[0]], fam.q), st.reduce_antichain([bad[1]], fam.q))
                return _fail(report, pair, z, idx)
        elif mode == "antichains":
            sets = antichains_in_box(fam.q, box)
            for a, b in itertools.combinations_with_replacement(sets, 2):
                report.checked += 1
                if not exchange_law_holds(fam, a, b):
                    return _fail(report, (a, b), z, idx)
        else:
            for trial in range(trials):
                rng = random.Random(f"{seed}:{trial}:{z}")
                a = random_saturated(rng, fam.q, box)
                b = random_saturated(rng, fam.q, box)
                report.checked += 1
                if not exchange_law_holds(fam, a, b):
                    return _fail(report, (a, b), z, idx)
    return report


def _fail(report: AutissierReport, pair, z, idx) -> AutissierReport:
    report.holds = False
    report.counterexample = pair
    report.pattern = z
    report.indices = idx
    return report
