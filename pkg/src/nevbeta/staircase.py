"""Saturated subsets of N^q stored as antichains of minimal generators.

A saturated set is nonempty and closed upward under the product order.
By Dickson's lemma it has finitely many minimal elements, and those are
the only thing we keep.  Exponent vectors are plain tuples of ints.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

ExpVec = tuple[int, ...]


def leq(a: Sequence[int], b: Sequence[int]) -> bool:
    """Product order: a <= b componentwise."""
    return all(x <= y for x, y in zip(a, b))


def join(a: Sequence[int], b: Sequence[int]) -> ExpVec:
    """Least upper bound (componentwise max)."""
    return tuple(max(x, y) for x, y in zip(a, b))


def vec_add(a: Sequence[int], b: Sequence[int]) -> ExpVec:
    return tuple(x + y for x, y in zip(a, b))


def minimal_elements(points: Iterable[Sequence[int]]) -> list[ExpVec]:
    """Minimal elements of a finite point set, sorted lexicographically."""
    # A dominator of p has total degree <= deg(p), so scanning by degree
    # means each kept point only needs checking against earlier ones.
    pts = sorted(set(tuple(p) for p in points), key=lambda p: (sum(p), p))
    kept: list[ExpVec] = []
    for p in pts:
        if not any(leq(g, p) for g in kept):
            kept.append(p)
    kept.sort()
    return kept


@dataclass(frozen=True)
class Staircase:
    """Up-closure of ``mingens`` in N^dim.

    Build instances with :func:`reduce_antichain`; the constructor trusts
    that ``mingens`` is already a lexicographically sorted antichain.
    """

    dim: int
    mingens: tuple[ExpVec, ...]

    def __contains__(self, e: Sequence[int]) -> bool:
        return contains(self, e)

    @property
    def is_everything(self) -> bool:
        return self.mingens == ((0,) * self.dim,)

    def to_json(self) -> dict:
        return {"dim": self.dim, "mingens": [list(g) for g in self.mingens]}

    @classmethod
    def from_json(cls, data: dict) -> "Staircase":
        return reduce_antichain([tuple(g) for g in data["mingens"]], int(data["dim"]))


def full(dim: int) -> Staircase:
    """N^dim itself."""
    return Staircase(dim, ((0,) * dim,))


def reduce_antichain(gens: Iterable[Sequence[int]], dim: int) -> Staircase:
    gens = [tuple(int(c) for c in g) for g in gens]
    if dim < 1:
        raise ValueError(f"dimension must be positive, got {dim}")
    if not gens:
        raise ValueError("a saturated set needs at least one generator")
    for g in gens:
        if len(g) != dim:
            raise ValueError(f"generator {g} has length {len(g)}, expected {dim}")
        if any(c < 0 for c in g):
            raise ValueError(f"generator {g} has a negative coordinate")
    return Staircase(dim, tuple(minimal_elements(gens)))


def _check_vec(s: Staircase, e: Sequence[int]) -> None:
    if len(e) != s.dim:
        raise ValueError(f"vector of length {len(e)} in a staircase of dim {s.dim}")


def _check_same_dim(s1: Staircase, s2: Staircase) -> None:
    if s1.dim != s2.dim:
        raise ValueError(f"dimension mismatch: {s1.dim} vs {s2.dim}")


def contains(s: Staircase, e: Sequence[int]) -> bool:
    _check_vec(s, e)
    return any(leq(g, e) for g in s.mingens)


def intersect(s1: Staircase, s2: Staircase) -> Staircase:
    """Intersection via pairwise joins of minimal generators."""
    _check_same_dim(s1, s2)
    return reduce_antichain((join(a, b) for a in s1.mingens for b in s2.mingens), s1.dim)


def union(s1: Staircase, s2: Staircase) -> Staircase:
    _check_same_dim(s1, s2)
    return reduce_antichain(s1.mingens + s2.mingens, s1.dim)


def minkowski_sum(s1: Staircase, s2: Staircase) -> Staircase:
    _check_same_dim(s1, s2)
    return reduce_antichain((vec_add(a, b) for a in s1.mingens for b in s2.mingens), s1.dim)


def minkowski_scale(s: Staircase, n: int) -> Staircase:
    """n-fold Minkowski sum of ``s`` with itself; N^q when n == 0."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    result = full(s.dim)
    base = s
    # square-and-multiply; reduction after every step keeps the lists small
    while n:
        if n & 1:
            result = minkowski_sum(result, base)
        n >>= 1
        if n:
            base = minkowski_sum(base, base)
    return result


def product(stairs: Sequence[Staircase]) -> Staircase:
    """Cartesian product, living in the concatenated coordinates."""
    dim = sum(s.dim for s in stairs)
    gens = (sum(parts, ()) for parts in itertools.product(*(s.mingens for s in stairs)))
    return reduce_antichain(gens, dim)


def m_construction(ms: Sequence[Staircase], n: Staircase) -> Staircase:
    """Union over c in ``n`` of c_1 M_1 x ... x c_q M_q.

    Only the minimal elements of ``n`` contribute, since c <= c' gives
    c' M_i inside c M_i.
    """
    if n.dim != len(ms):
        raise ValueError(f"{len(ms)} staircases but N has dimension {n.dim}")
    dim = sum(m.dim for m in ms)
    gens: list[ExpVec] = []
    for c in n.mingens:
        gens.extend(product([minkowski_scale(m, ci) for m, ci in zip(ms, c)]).mingens)
    return reduce_antichain(gens, dim)


@dataclass(frozen=True)
class HalfSpace:
    """The set {b in N^q : t . b >= x} for nonnegative rational t != 0."""

    t: tuple[Fraction, ...]
    x: Fraction

    def __post_init__(self):
        t = tuple(Fraction(v) for v in self.t)
        x = Fraction(self.x)
        if not t:
            raise ValueError("empty weight vector")
        if any(v < 0 for v in t) or all(v == 0 for v in t):
            raise ValueError(f"weights must be nonnegative and not all zero: {t}")
        if x < 0:
            raise ValueError(f"threshold must be nonnegative: {x}")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "x", x)

    def value(self, b: Sequence[int]) -> Fraction:
        return sum((ti * bi for ti, bi in zip(self.t, b)), Fraction(0))

    def __contains__(self, b: Sequence[int]) -> bool:
        return self.value(b) >= self.x


def half_space_minimal(h: HalfSpace) -> Staircase:
    """N(t, x) as a staircase whose generators are its minimal elements.

    Coordinates with zero weight are 0 in every minimal element, so the
    antichain stays finite as long as some weight is positive.
    """
    q = len(h.t)
    if h.x == 0:
        return full(q)
    active = [i for i, ti in enumerate(h.t) if ti > 0]
    found: list[ExpVec] = []
    b = [0] * q

    def rec(k: int, acc: Fraction) -> None:
        i = active[k]
        ti = h.t[i]
        if k == len(active) - 1:
            b[i] = math.ceil((h.x - acc) / ti)
            found.append(tuple(b))
            b[i] = 0
            return
        v = 0
        while acc + v * ti < h.x:
            b[i] = v
            rec(k + 1, acc + v * ti)
            v += 1
        # v is the smallest value reaching x on its own; later coords stay 0
        b[i] = v
        found.append(tuple(b))
        b[i] = 0

    rec(0, Fraction(0))
    return reduce_antichain(found, q)


def default_box_bound(*stairs: Staircase) -> int:
    """Largest generator coordinate plus 2."""
    return max((c for s in stairs for g in s.mingens for c in g), default=0) + 2


def box(dim: int, bound: int) -> Iterable[ExpVec]:
    return itertools.product(range(bound + 1), repeat=dim)


def is_saturated_on_box(s: Staircase | Iterable[Sequence[int]], bound: int, dim: int | None = None) -> bool:
    """Check upward closure inside [0, bound]^q.

    ``s`` may be a :class:`Staircase` or an explicit collection of points;
    the latter is how non-saturated sets can be exhibited at all.
    """
    if isinstance(s, Staircase):
        member = s.__contains__
        dim = s.dim
    else:
        pts = {tuple(p) for p in s}
        if dim is None:
            dim = len(next(iter(pts))) if pts else 1
        member = pts.__contains__
    for e in box(dim, bound):
        if not member(e):
            continue
        # checking the unit successors suffices for closure inside the box
        for i in range(dim):
            if e[i] < bound:
                up = e[:i] + (e[i] + 1,) + e[i + 1:]
                if not member(up):
                    return False
    return True
