"""Command-line front end.

Exit codes: 0 success, 2 bad input, 3 semantic error, 4 a verification
reported a failure.  Results go to files under ``--out`` (and a short
summary to stdout); progress goes to stderr.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .beta import (beta_n_value, beta_series, f_nr_recurrence_holds, convolution_identity_check,
                   linear_beta_closed)
from .cohomology import h0_table, linear_ideal
from .filtration import (HypothesisError, big_f, big_f_integral, filtration_profile,
                         nevbir_upper, parse_weights, concavity_check, triangle_b_grid)
from .formats import ConfigError, fraction_str, load_config, write_csv, write_json
from .ideal import autissier_check, intersect_properly, weakly_intersect_properly

log = logging.getLogger("nevbeta")

EXIT_OK, EXIT_INPUT, EXIT_SEMANTIC, EXIT_VERIFY = 0, 2, 3, 4


class SemanticError(Exception):
    pass


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("NEVBETA_WORKERS", "1")))
    except ValueError:
        return 1


class _Run:
    """Collects outputs and writes the manifest that they point to."""

    def __init__(self, args, command: str):
        self.command = command
        self.out = Path(args.out)
        self.out.mkdir(parents=True, exist_ok=True)
        self.stem = args.stem or command
        self.manifest_name = f"{self.stem}.manifest.json"
        self.outputs: list[str] = []
        self.params = {k: v for k, v in sorted(vars(args).items())
                       if k not in ("func", "out", "verbose", "stem", "config")}
        self.input = getattr(args, "config", None)
        self.started = time.perf_counter()

    def json(self, payload: dict) -> None:
        name = f"{self.stem}.json"
        payload = dict(payload, manifest=self.manifest_name)
        write_json(self.out / name, payload)
        self.outputs.append(name)

    def csv(self, rows, columns, suffix: str = "") -> None:
        name = f"{self.stem}{suffix}.csv"
        write_csv(self.out / name, rows, columns, manifest=self.manifest_name)
        self.outputs.append(name)

    def finish(self) -> None:
        write_json(self.out / self.manifest_name, {
            "command": self.command,
            "input": self.input,
            "parameters": self.params,
            "outputs": self.outputs,
            "tool_version": __version__,
            "elapsed_seconds": round(time.perf_counter() - self.started, 3),
        })
        for name in self.outputs:
            print(self.out / name)


def _pick_ideal(cfg, name):
    if name is None:
        if cfg.q != 1:
            raise SemanticError(f"--ideal required, choose one of {', '.join(cfg.names)}")
        return cfg.names[0], cfg.ideals[0]
    try:
        return name, cfg.ideal(name)
    except KeyError:
        raise SemanticError(f"unknown ideal {name!r}; known: {', '.join(cfg.names)}") from None


def _betas_at(cfg, N: int, from_n: bool):
    if from_n:
        return cfg.with_betas([beta_n_value(cfg.n, ideal, N) for ideal in cfg.ideals])
    if cfg.betas is None:
        raise SemanticError("configuration has no 'betas'; pass --beta-from-N")
    return cfg


def cmd_beta(args) -> int:
    cfg = load_config(args.config)
    name, ideal = _pick_ideal(cfg, args.ideal)
    if args.n_min < 1 or args.n_min > args.n_max:
        raise SemanticError(f"empty N range {args.n_min}..{args.n_max}")
    log.info("beta series for %s on P^%d, N=%d..%d", name, cfg.n, args.n_min, args.n_max)
    series = beta_series(cfg.n, ideal, args.n_min, args.n_max, tail=args.tail,
                         tolerance=Fraction(args.tolerance), name=name, workers=_workers())
    run = _Run(args, "beta")
    run.csv(series.rows(), ["N", "beta_N_numerator", "beta_N_denominator", "beta_N_decimal"])
    run.json(series.to_json())
    run.finish()
    log.info("verdict: %s", series.verdict)
    return EXIT_OK


def cmd_autissier(args) -> int:
    cfg = load_config(args.config)
    log.info("exchange-law check: %d ideals, box %d, %s", cfg.q, args.box, args.mode)
    report = autissier_check(cfg, args.box, args.mode, args.trials, args.seed, args.scope)
    run = _Run(args, "autissier")
    run.json({
        "intersect_properly": intersect_properly(cfg),
        "weakly_intersect_properly": weakly_intersect_properly(cfg),
        "q": cfg.q,
        "n": cfg.n,
        "report": report.to_json(),
    })
    run.finish()
    return EXIT_OK if report.holds else EXIT_VERIFY


def cmd_filtration(args) -> int:
    cfg = load_config(args.config)
    try:
        t = parse_weights(args.t)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad --t {args.t!r}: {exc}") from exc
    if len(t) != cfg.q:
        raise SemanticError(f"{len(t)} weights for {cfg.q} ideals")
    prof = filtration_profile(cfg, t, cfg.n, args.N)
    f_mu = big_f(cfg, t, cfg.n, args.N)
    run = _Run(args, "filtration")
    run.csv(prof.rows(), ["x_jump", "dim"])
    payload = {"t": [fraction_str(v) for v in t], "N": args.N, "n": cfg.n,
               "jumps": [{"x": fraction_str(x), "dim": d} for x, d in prof.jumps],
               "F": fraction_str(f_mu)}
    if args.cross_check:
        f_int = big_f_integral(cfg, t, cfg.n, args.N)
        payload["F_integral_route"] = fraction_str(f_int)
        if f_int != f_mu:
            run.json(payload)
            run.finish()
            log.error("F(t) routes disagree: %s vs %s", f_mu, f_int)
            return EXIT_VERIFY
    run.json(payload)
    run.finish()
    return EXIT_OK


def cmd_concavity(args) -> int:
    cfg = _betas_at(load_config(args.config), args.N, args.beta_from_N)
    if args.box:
        report = autissier_check(cfg, args.box)
        if not report.holds:
            log.error("exchange law fails on box %d; concavity bound not applicable", args.box)
            return EXIT_VERIFY
    rows = []
    for b in range(1, args.b + 1) if args.all_b else [args.b]:
        for t in triangle_b_grid(cfg.betas, b):
            rep = concavity_check(cfg, t, cfg.n, args.N)
            log.info("b=%d t=%s lhs=%s rhs=%s", b, [str(v) for v in t], rep.lhs, rep.rhs)
            rows.append({"b": b, "t": " ".join(fraction_str(v) for v in t),
                         "lhs": rep.lhs, "rhs": rep.rhs, "holds": rep.holds})
    run = _Run(args, "concavity")
    run.csv(rows, ["b", "t", "lhs", "rhs", "holds"])
    run.json({"N": args.N, "betas": [fraction_str(v) for v in cfg.betas], "rows": rows,
              "all_hold": all(r["holds"] for r in rows)})
    run.finish()
    return EXIT_OK if all(r["holds"] for r in rows) else EXIT_VERIFY


def cmd_nevbir(args) -> int:
    cfg = _betas_at(load_config(args.config), args.N, args.beta_from_N)
    rows = []
    for b in args.b:
        v = nevbir_upper(cfg, b, cfg.n, args.N)
        rows.append({"b": b, "N": args.N, "bound": v if isinstance(v, Fraction) else "inf",
                     "bound_decimal": f"{float(v):.12f}"})
    run = _Run(args, "nevbir")
    run.csv(rows, ["b", "N", "bound", "bound_decimal"])
    run.json({"betas": [fraction_str(v) for v in cfg.betas], "rows": rows})
    run.finish()
    return EXIT_OK


def cmd_identities(args) -> int:
    rows = []
    for n in range(1, args.n_max + 1):
        for r in range(1, n + 1):
            ident = all(convolution_identity_check(n, r, N) for N in range(args.N_max + 1))
            recur = (all(f_nr_recurrence_holds(n, r, N) for N in range(1, args.N_max + 1))
                     if r < n else None)
            target = linear_beta_closed(n, r)
            ideal = linear_ideal(n, r)
            lin = all(beta_n_value(n, ideal, N) == target for N in range(1, args.N_max + 1))
            rows.append({"n": n, "r": r, "convolution_identity": ident, "f_recurrence": recur,
                         "linear_beta": lin})
            log.info("n=%d r=%d done", n, r)
    ok = all(r["convolution_identity"] and r["linear_beta"] and r["f_recurrence"] is not False
             for r in rows)

    def mark(v):
        return "-" if v is None else ("pass" if v else "FAIL")

    print(f"{'n':>3} {'r':>3} {'identity':>9} {'recurrence':>11} {'beta':>6}")
    for r in rows:
        print(f"{r['n']:>3} {r['r']:>3} {mark(r['convolution_identity']):>9} "
              f"{mark(r['f_recurrence']):>11} {mark(r['linear_beta']):>6}")
    run = _Run(args, "identities")
    run.csv(rows, ["n", "r", "convolution_identity", "f_recurrence", "linear_beta"])
    run.json({"n_max": args.n_max, "N_max": args.N_max, "rows": rows, "all_pass": ok})
    run.finish()
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_h0(args) -> int:
    cfg = load_config(args.config)
    name, ideal = _pick_ideal(cfg, args.ideal)
    rows = h0_table(cfg.n, ideal, range(args.N_max + 1), range(args.m_max + 1))
    run = _Run(args, "h0")
    run.csv(rows, ["n", "N", "m", "h0"])
    run.json({"ideal": name, "rows": rows})
    run.finish()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nevbeta", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, config=True):
        if config:
            sp.add_argument("config", help="ideal configuration (JSON)")
        sp.add_argument("--out", default=".", help="output directory")
        sp.add_argument("--stem", default=None, help="basename for output files")
        sp.add_argument("-v", "--verbose", action="store_true")

    sp = sub.add_parser("beta", help="beta_N series of one ideal")
    common(sp)
    sp.add_argument("--ideal")
    sp.add_argument("--n-min", type=int, default=1)
    sp.add_argument("--n-max", type=int, default=20)
    sp.add_argument("--tail", type=int, default=5)
    sp.add_argument("--tolerance", default="0")
    sp.set_defaults(func=cmd_beta)

    sp = sub.add_parser("autissier", help="check the exchange law J(N&N') = J(N)&J(N')")
    common(sp)
    sp.add_argument("--box", type=int, default=2)
    sp.add_argument("--mode", choices=["exhaustive", "antichains", "randomized"], default="exhaustive")
    sp.add_argument("--trials", type=int, default=200)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--scope", choices=["sheaf", "ring"], default="sheaf")
    sp.set_defaults(func=cmd_autissier)

    sp = sub.add_parser("filtration", help="filtration profile and F(t)")
    common(sp)
    sp.add_argument("--t", required=True, help='weights, e.g. "1/2,1/3"')
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--cross-check", action="store_true",
                    help="also integrate the joint-ideal step function")
    sp.set_defaults(func=cmd_filtration)

    for name, func, help_ in (("concavity", cmd_concavity, "concavity bound on the grid of b"),
                              ("nevbir", cmd_nevbir, "upper bound for the Nevanlinna constant")):
        sp = sub.add_parser(name, help=help_)
        common(sp)
        sp.add_argument("--N", type=int, required=True)
        sp.add_argument("--beta-from-N", action="store_true",
                        help="use beta_N of each ideal at the same N as weights")
        if name == "concavity":
            sp.add_argument("--b", type=int, default=3)
            sp.add_argument("--all-b", action="store_true", help="every b from 1 to --b")
            sp.add_argument("--box", type=int, default=2,
                            help="verify the exchange law on this box first (0 skips)")
        else:
            sp.add_argument("--b", type=int, nargs="+", default=[10])
        sp.set_defaults(func=func)

    sp = sub.add_parser("identities", help="exhaustive checks of the linear-subspace identities")
    common(sp, config=False)
    sp.add_argument("--n-max", type=int, default=5)
    sp.add_argument("--N-max", type=int, default=25)
    sp.set_defaults(func=cmd_identities)

    sp = sub.add_parser("h0", help="table of h^0(O(N) (x) I^m)")
    common(sp)
    sp.add_argument("--ideal")
    sp.add_argument("--N-max", type=int, default=10)
    sp.add_argument("--m-max", type=int, default=4)
    sp.set_defaults(func=cmd_h0)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except HypothesisError as exc:
        print(f"hypothesis not met: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (SemanticError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC


if __name__ == "__main__":
    sys.exit(main())
