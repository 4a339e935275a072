"""Beta constants of ideal sheaves with respect to O(1) on P^n.

beta_N(Y) = sum_{m>=1} h^0(O(N) (x) I^m) / (N h^0(O(N))), and beta(Y) is its
limit in N.  Besides the finite-N values this module carries the closed
forms for linear subspaces, the double sum f_{n,r} and its asymptotics,
and the volume integral that identifies the limit for hyperplanes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from .cohomology import h0_ideal, h0_total, section_mass
from .ideal import MonomialIdeal


def beta_n_value(n: int, i: MonomialIdeal, N: int) -> Fraction:
    if N < 1:
        raise ValueError("N must be positive")
    if i.is_unit:
        raise ValueError("the unit ideal has no beta constant")
    return Fraction(section_mass(n, N, i), N * h0_total(n, N))


@dataclass
class BetaSeries:
    n: int
    name: str
    points: list[tuple[int, Fraction]]
    converged_to: Fraction | None
    max_oscillation_tail: Fraction
    tail: int
    tolerance: Fraction

    @property
    def verdict(self) -> str:
        return "unresolved" if self.converged_to is None else f"converged_to {self.converged_to}"

    def rows(self) -> list[dict]:
        return [{"N": N, "beta_N_numerator": v.numerator, "beta_N_denominator": v.denominator,
                 "beta_N_decimal": f"{float(v):.12f}"} for N, v in self.points]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "ideal": self.name,
            "points": [{"N": N, "beta_N": str(v)} for N, v in self.points],
            "verdict": {
                "converged_to": None if self.converged_to is None else str(self.converged_to),
                "max_oscillation_tail": str(self.max_oscillation_tail),
                "tail_points": self.tail,
                "tolerance": str(self.tolerance),
            },
        }


def stabilization_verdict(values: list[Fraction], tail: int = 5, tolerance=0) -> tuple[Fraction | None, Fraction]:
    """Decide whether the last ``tail`` values have settled.

    The claimed value is the last point; it is only claimed when every
    tail point is within ``tolerance`` of it and the tail is monotone or
    its successive steps do not grow.  Returns (value or None, spread).
    """
    tolerance = Fraction(tolerance)
    window = values[-tail:] if tail > 0 else []
    if len(window) < 2:
        return None, Fraction(0)
    spread = max(window) - min(window)
    last = window[-1]
    if any(abs(v - last) > tolerance for v in window):
        return None, spread
    steps = [b - a for a, b in zip(window, window[1:])]
    monotone = all(s >= 0 for s in steps) or all(s <= 0 for s in steps)
    shrinking = all(abs(b) <= abs(a) for a, b in zip(steps, steps[1:]))
    if monotone or shrinking:
        return last, spread
    return None, spread


def _beta_point(args) -> tuple[int, Fraction]:
    n, i, N = args
    return N, beta_n_value(n, i, N)


def beta_series(n: int, i: MonomialIdeal, N_min: int, N_max: int, tail: int = 5,
                tolerance=0, name: str = "I", workers: int = 1) -> BetaSeries:
    if not 1 <= N_min <= N_max:
        raise ValueError(f"need 1 <= N_min <= N_max, got {N_min}..{N_max}")
    jobs = [(n, i, N) for N in range(N_min, N_max + 1)]
    if workers > 1 and len(jobs) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            points = sorted(pool.map(_beta_point, jobs))
    else:
        points = [_beta_point(job) for job in jobs]
    value, spread = stabilization_verdict([v for _, v in points], tail, tolerance)
    return BetaSeries(n, name, points, value, spread, tail, Fraction(tolerance))


def linear_beta_closed(n: int, r: int) -> Fraction:
    """beta(O(1), Y) for a linear subspace of codimension r in P^n."""
    if not 1 <= r <= n:
        raise ValueError(f"codimension {r} out of range for P^{n}")
    return Fraction(r, n + 1)


# -- the double sum f_{n,r} -------------------------------------------------

def f_nr(n: int, r: int, N: int) -> int:
    """sum_{m=1}^N sum_{l=0}^{m-1} C(N-l+n-r, n-r) C(l+r-1, r-1)."""
    if not 0 < r <= n:
        raise ValueError(f"need 0 < r <= n, got r={r}, n={n}")
    if N < 0:
        raise ValueError("N must be nonnegative")
    # the summand does not depend on m, so the double sum collapses
    return sum((N - l) * comb(N - l + n - r, n - r) * comb(l + r - 1, r - 1) for l in range(N))


def f_nr_leading(n: int, r: int, N: int) -> Fraction:
    return Fraction((n - r + 1) * N ** (n + 1), factorial(n + 1))


def f_nr_recurrence_holds(n: int, r: int, N: int) -> bool:
    """f_{n,r}(N) - f_{n,r}(N-1) = f_{n-1,r}(N) + C(N-1+n, n), for n > r and N >= 1."""
    if not 0 < r < n or N < 1:
        raise ValueError("recurrence needs 0 < r < n and N >= 1")
    return f_nr(n, r, N) - f_nr(n, r, N - 1) == f_nr(n - 1, r, N) + comb(N - 1 + n, n)


@dataclass
class AsymptoticReport:
    n: int
    r: int
    N_values: list[int]
    ratios: list[Fraction]
    scaled_errors: list[Fraction]
    fitted_constant: Fraction
    passes: bool


def f_nr_asymptotic_check(n: int, r: int, N_max: int, N_min: int | None = None) -> AsymptoticReport:
    """Check f_{n,r}(N) = (n-r+1) N^(n+1)/(n+1)! + O(N^n) on a window.

    The constant is fitted on the first half of the window as the largest
    |f - leading| / N^n; the check passes when the second half respects
    it, i.e. the error really is of order N^n there.
    """
    if N_min is None:
        N_min = max(1, N_max // 4)
    if not 1 <= N_min < N_max:
        raise ValueError("need 1 <= N_min < N_max")
    Ns = list(range(N_min, N_max + 1))
    ratios, errs = [], []
    for N in Ns:
        lead = f_nr_leading(n, r, N)
        f = f_nr(n, r, N)
        ratios.append(f / lead)
        errs.append(abs(f - lead) / N ** n)
    half = len(Ns) // 2 or 1
    c = max(errs[:half])
    return AsymptoticReport(n, r, Ns, ratios, errs, c, all(e <= c for e in errs[half:]))


def convolution_identity_check(n: int, r: int, N: int) -> bool:
    """sum_{l=0}^N C(N-l+n-r, n-r) C(l+r-1, r-1) == C(N+n, n)."""
    if not 1 <= r <= n:
        raise ValueError(f"codimension {r} out of range for P^{n}")
    lhs = sum(comb(N - l + n - r, n - r) * comb(l + r - 1, r - 1) for l in range(N + 1))
    return lhs == comb(N + n, n)


# -- volume function and the Riemann-sum limit -----------------------------

@dataclass(frozen=True)
class VolumeProfile:
    """Piecewise polynomial x -> f(x), zero from ``support_end`` on.

    ``pieces`` holds (lo, hi, coeffs) with f(x) = sum coeffs[k] x^k on [lo, hi).
    """

    d: int
    pieces: tuple[tuple[Fraction, Fraction, tuple[Fraction, ...]], ...]
    integral_I: Fraction
    volume: Fraction = Fraction(1)

    @property
    def support_end(self) -> Fraction:
        return self.pieces[-1][1]

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        for lo, hi, coeffs in self.pieces:
            if lo <= x < hi:
                return sum((c * x ** k for k, c in enumerate(coeffs)), Fraction(0))
        return Fraction(0)

    def beta(self) -> Fraction:
        """d! I / vol(L)."""
        return factorial(self.d) * self.integral_I / self.volume


def volume_profile_linear(n: int, r: int = 1) -> VolumeProfile:
    """f(x) = (1-x)^n / n! on [0, 1] for a hyperplane in P^n."""
    if r != 1:
        raise ValueError("closed-form volume profile is only available for hyperplanes (r = 1)")
    if n < 1:
        raise ValueError("n must be positive")
    coeffs = tuple(Fraction(comb(n, k) * (-1) ** k, factorial(n)) for k in range(n + 1))
    integral = sum((c / (k + 1) for k, c in enumerate(coeffs)), Fraction(0))
    return VolumeProfile(n, ((Fraction(0), Fraction(1), coeffs),), integral)


def empirical_profile(n: int, i: MonomialIdeal, N: int, xs) -> list[tuple[Fraction, Fraction]]:
    """Estimate f(x) by h^0(O(N) (x) I^ceil(Nx)) / N^n."""
    out = []
    for x in xs:
        x = Fraction(x)
        m = -((-x * N).numerator // (x * N).denominator)
        out.append((x, Fraction(h0_ideal(n, N, i, m), N ** n)))
    return out


@dataclass
class RiemannReport:
    n: int
    rows: list[dict] = field(default_factory=list)
    integral_I: Fraction | None = None
    beta_from_volume: Fraction | None = None
    gap_shrinking: bool = True
    violations: list[int] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "integral_I": None if self.integral_I is None else str(self.integral_I),
            "beta_from_volume": None if self.beta_from_volume is None else str(self.beta_from_volume),
            "gap_shrinking": self.gap_shrinking,
            "violations": self.violations,
            "rows": [{k: (str(v) if isinstance(v, Fraction) else v) for k, v in row.items()}
                     for row in self.rows],
        }


def riemann_convergence_check(n: int, N_values, i: MonomialIdeal | None = None) -> RiemannReport:
    """Tabulate (1/N^(n+1)) sum_{m>=1} h^0(O(N) (x) I^m) against the volume integral.

    Without ``i`` the hyperplane x_1 = 0 is used and compared with its
    closed-form integral; for other ideals only the sequence and its
    successive differences are reported.
    """
    from .cohomology import linear_ideal

    ideal = i if i is not None else linear_ideal(n, 1)
    hyperplane = i is None
    report = RiemannReport(n)
    if hyperplane:
        prof = volume_profile_linear(n)
        report.integral_I = prof.integral_I
        report.beta_from_volume = prof.beta()
    prev_gap = None
    prev_val = None
    for N in sorted(N_values):
        val = Fraction(section_mass(n, N, ideal), N ** (n + 1))
        row = {"N": N, "scaled_sum": val}
        if hyperplane:
            gap = abs(val - report.integral_I)
            row["gap"] = gap
            if prev_gap is not None and gap > prev_gap:
                report.gap_shrinking = False
                report.violations.append(N)
            prev_gap = gap
        elif prev_val is not None:
            row["step"] = val - prev_val
        prev_val = val
        report.rows.append(row)
    return report
