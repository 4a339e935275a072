"""Counting global sections h^0(P^n, O(N) (x) I^m) for monomial ideals.

H^0(P^n, O(N) (x) I~) is spanned by the degree-N monomials of the
saturation of I, so every count here goes through :func:`saturate`.
Three independent routes exist:

* :func:`h0_ideal_bruteforce` tests every degree-N monomial (the oracle);
* :func:`h0_ideal` uses inclusion-exclusion over generator joins, or a
  coordinate sweep when there are many generators;
* :func:`order_histogram` tabulates, for each degree-N monomial, the
  largest m with the monomial in (I^m)^sat, which yields all m at once.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import comb
from typing import Iterator, Sequence

from .ideal import MonomialIdeal, power, saturate
from .staircase import ExpVec, minimal_elements

SWEEP_THRESHOLD = 20


def h0_total(n: int, N: int) -> int:
    """Dimension of H^0(P^n, O(N))."""
    if n < 1:
        raise ValueError("projective dimension must be positive")
    return comb(N + n, n) if N >= 0 else 0


def compositions(total: int, parts: int) -> Iterator[ExpVec]:
    """Exponent vectors of length ``parts`` and degree ``total``."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total, -1, -1):
        for tail in compositions(total - head, parts - 1):
            yield (head,) + tail


def _check_ideal(n: int, i: MonomialIdeal) -> None:
    if i.num_vars != n + 1:
        raise ValueError(f"ideal in {i.num_vars} variables on P^{n}")


def h0_ideal_bruteforce(n: int, N: int, i: MonomialIdeal, m: int) -> int:
    _check_ideal(n, i)
    gens = power(i, m).mingens
    reach = max(c for g in gens for c in g)

    def in_saturation(e: ExpVec) -> bool:
        # e is in J^sat iff e + reach*u_k lies in J for every coordinate k
        for k in range(n + 1):
            bumped = e[:k] + (e[k] + reach,) + e[k + 1:]
            if not any(all(a <= b for a, b in zip(g, bumped)) for g in gens):
                return False
        return True

    return sum(1 for e in compositions(N, n + 1) if in_saturation(e))


def count_in_degree(gens: Sequence[ExpVec], N: int) -> int:
    """Number of degree-N exponent vectors in the up-closure of ``gens``."""
    gens = minimal_elements(gens)
    if not gens or N < 0:
        return 0
    if len(gens) > SWEEP_THRESHOLD:
        return _sweep(tuple(gens), N)
    return _inclusion_exclusion(gens, N)


def _inclusion_exclusion(gens: Sequence[ExpVec], N: int) -> int:
    k = len(gens[0])
    # signed multiplicity of each distinct join; joins above degree N
    # contribute nothing and neither do their supersets
    table: dict[ExpVec, int] = {}
    for g in gens:
        if sum(g) > N:
            continue
        update: dict[ExpVec, int] = {g: 1}
        for j, coef in table.items():
            jj = tuple(max(a, b) for a, b in zip(j, g))
            if sum(jj) <= N:
                update[jj] = update.get(jj, 0) - coef
        for j, coef in update.items():
            c = table.get(j, 0) + coef
            if c:
                table[j] = c
            else:
                table.pop(j, None)
    return sum(coef * comb(N - sum(j) + k - 1, k - 1) for j, coef in table.items())


@lru_cache(maxsize=1 << 16)
def _sweep(gens: tuple[ExpVec, ...], N: int) -> int:
    k = len(gens[0])
    if any(not any(g) for g in gens):
        return comb(N + k - 1, k - 1)
    if k == 1:
        return 1 if N >= min(g[0] for g in gens) else 0
    total = 0
    sub: tuple[ExpVec, ...] = ()
    last_breaks = sorted({g[-1] for g in gens})
    for v in range(N + 1):
        if v in last_breaks:
            sub = tuple(minimal_elements(g[:-1] for g in gens if g[-1] <= v))
        if sub:
            total += _sweep(sub, N - v)
    return total


def h0_ideal(n: int, N: int, i: MonomialIdeal, m: int) -> int:
    _check_ideal(n, i)
    return count_in_degree(saturate(power(i, m)).mingens, N)


def linear_h0(n: int, r: int, N: int, m: int) -> int:
    """h^0 for the m-th power of a codimension-r linear subspace."""
    if not 1 <= r <= n:
        raise ValueError(f"codimension {r} out of range for P^{n}")
    if m < 0:
        raise ValueError("m must be nonnegative")
    if m > N:
        return 0
    missing = sum(comb(N - l + n - r, n - r) * comb(l + r - 1, r - 1) for l in range(m))
    return comb(N + n, n) - missing


def linear_ideal(n: int, r: int) -> MonomialIdeal:
    """The ideal (x_1, ..., x_r) on P^n."""
    from .ideal import from_generators

    if not 1 <= r <= n:
        raise ValueError(f"codimension {r} out of range for P^{n}")
    return from_generators(n + 1, [tuple(int(k == j) for k in range(n + 1)) for j in range(1, r + 1)])


# -- order function ---------------------------------------------------------

class _OrderDP:
    """ord(s) = max{m : s in I^m} over N^k, filled degree by degree."""

    def __init__(self, gens: Sequence[ExpVec]):
        self.gens = list(gens)
        self.k = len(self.gens[0])
        self.values: dict[ExpVec, int] = {}
        self.by_degree: list[list[ExpVec]] = []

    def extend_to(self, degree: int) -> None:
        vals = self.values
        gens = self.gens
        while len(self.by_degree) <= degree:
            d = len(self.by_degree)
            layer = list(compositions(d, self.k))
            for s in layer:
                best = 0
                for g in gens:
                    if all(a <= b for a, b in zip(g, s)):
                        v = 1 + vals[tuple(b - a for a, b in zip(g, s))]
                        if v > best:
                            best = v
                vals[s] = best
            self.by_degree.append(layer)

    def __call__(self, s: ExpVec) -> int:
        d = sum(s)
        if d >= len(self.by_degree):
            self.extend_to(d)
        return self.values[s]


@lru_cache(maxsize=256)
def _order_dp(gens: tuple[ExpVec, ...]) -> _OrderDP:
    return _OrderDP(gens)


def _drop(v: Sequence[int], k: int) -> ExpVec:
    return tuple(v[:k]) + tuple(v[k + 1:])


@lru_cache(maxsize=1024)
def order_histogram(i: MonomialIdeal, N: int) -> tuple[int, ...]:
    """hist[m] = number of degree-N monomials whose sheaf order along I is m.

    The order of a monomial is the largest m with the monomial in
    (I^m)^sat; then h^0(O(N) (x) I^m) is the tail sum of ``hist`` from m.
    """
    num_vars = i.num_vars
    support = sorted({k for g in i.mingens for k, c in enumerate(g) if c})
    free = num_vars - len(support)
    hist: dict[int, int] = {}
    if free:
        # some variable is unused, so I^m is already saturated and the
        # order only depends on the supported coordinates
        dp = _order_dp(tuple(tuple(g[k] for k in support) for g in i.mingens))
        dp.extend_to(N)
        for d in range(N + 1):
            weight = comb(N - d + free - 1, free - 1)
            for s in dp.by_degree[d]:
                o = dp.values[s]
                hist[o] = hist.get(o, 0) + weight
    else:
        # every variable occurs: order of e is the minimum over the
        # affine charts x_k = 1 of the chart order of e without coordinate k
        charts = []
        for k in range(num_vars):
            gens = tuple(minimal_elements(_drop(g, k) for g in i.mingens))
            if any(gens[0]):
                # I is the unit ideal on charts where it has a pure x_k power
                charts.append((k, _order_dp(gens)))
        for e in compositions(N, num_vars):
            o = min(dp(_drop(e, k)) for k, dp in charts)
            hist[o] = hist.get(o, 0) + 1
    top = max(hist)
    return tuple(hist.get(m, 0) for m in range(top + 1))


def h0_series(n: int, N: int, i: MonomialIdeal) -> list[int]:
    """[h^0(O(N) (x) I^m) for m = 0, 1, ...] up to the first zero (excluded)."""
    _check_ideal(n, i)
    hist = order_histogram(i, N)
    out = list(itertools.accumulate(reversed(hist)))
    out.reverse()
    return out


def section_mass(n: int, N: int, i: MonomialIdeal) -> int:
    """Sum over m >= 1 of h^0(O(N) (x) I^m)."""
    _check_ideal(n, i)
    return sum(m * c for m, c in enumerate(order_histogram(i, N)))


def vanishing_bound(n: int, i: MonomialIdeal, N: int) -> int:
    """Smallest m with h^0(O(N) (x) I^m) = 0."""
    if i.is_unit:
        raise ValueError("the unit ideal never kills sections")
    _check_ideal(n, i)
    return len(order_histogram(i, N))


def h0_table(n: int, i: MonomialIdeal, degrees: Sequence[int], powers: Sequence[int]) -> list[dict]:
    rows = []
    for N in degrees:
        for m in powers:
            rows.append({"n": n, "N": N, "m": m, "h0": h0_ideal(n, N, i, m)})
    return rows
