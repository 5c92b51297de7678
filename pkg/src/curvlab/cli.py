"""Command-line interface.

Exit codes: 0 on success, 1 on usage or input errors, 2 when an embedded
check fails.  ``CURVLAB_SEED`` sets the default random seed (0 otherwise).
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

from . import acceptance
from .analysis import CLI_LABELS, OPERATORS, analyze, analyze_space
from .betti import MANIFOLD_TYPES, NEARLY_G2, NEARLY_KAHLER, SPECTRAL_KEYS, betti_conditions
from .bounds import (
    EinsteinData,
    bound_hat_general,
    bound_hat_special,
    bound_intersections_nk,
    bound_ring_einstein,
    bound_ring_general,
    bound_ring_nk_plus,
)
from .errors import CurvlabError
from .homogeneous import BUILTINS, build_space, sectional_extremes
from .report import CHECK_FAILED, OK, ReportEnvelope, eigen_entry, format_value
from .structures import standard_g2, su3_from_g2, verify_g2_identities, verify_su3_identities

EXIT_OK, EXIT_USAGE, EXIT_CHECK = 0, 1, 2

THEOREMS = ("hat-general", "hat-special", "ring-general", "ring-einstein", "ring-nk-plus", "nk-intersections")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse exits with 2 by default; usage errors are 1 here
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def default_seed() -> int:
    raw = os.environ.get("CURVLAB_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"CURVLAB_SEED must be an integer, got {raw!r}") from None


def _analysis(space: str):
    return analyze(space) if space in BUILTINS else analyze_space(build_space(space))


# ---------------------------------------------------------------------------
# commands


def cmd_identities(args) -> ReportEnvelope:
    g2 = standard_g2()
    if args.structure == "g2":
        res = verify_g2_identities(g2)
    else:
        res = verify_su3_identities(su3_from_g2(g2))
    rows = [{"structure": args.structure, "identity": k, "residual": v, "pass": v == 0.0} for k, v in res.items()]
    status = OK if all(r["pass"] for r in rows) else CHECK_FAILED
    return ReportEnvelope(
        "identities",
        {"structure": args.structure},
        {"residuals": res, "count": len(res)},
        {"residual": 0.0},
        status,
        rows,
    )


def cmd_spectrum(args) -> ReportEnvelope:
    a = _analysis(args.space)
    if args.subspace is None:
        args.subspace = "omega2_full" if args.operator.endswith("hat") else "s2_full"
    try:
        spec = a.spectrum(args.operator, args.subspace, args.cluster_tol)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    entries = [eigen_entry(v, m) for v, m in spec.pairs()]
    return ReportEnvelope(
        "spectrum",
        {"space": args.space, "operator": args.operator, "subspace": args.subspace},
        {"dimension": spec.size, "eigenvalues": entries},
        {"cluster_tol": args.cluster_tol},
        OK,
        entries,
    )


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"--{' --'.join(missing)} required for theorem {args.theorem}")


def cmd_bounds(args) -> ReportEnvelope:
    d, D = args.delta, args.Delta
    if d > D:
        raise UsageError(f"--delta {d} exceeds --Delta {D}")
    t = args.theorem
    if t == "hat-general":
        _need(args, "n")
        bounds = [bound_hat_general(d, D, args.n)]
    elif t == "hat-special":
        bounds = [bound_hat_special(d, D)]
    elif t == "ring-general":
        _need(args, "n")
        bounds = list(bound_ring_general(d, D, args.n))
    elif t == "ring-einstein":
        _need(args, "n", "k")
        bounds = [bound_ring_einstein(d, D, args.n, args.k)]
    elif t == "ring-nk-plus":
        bounds = [bound_ring_nk_plus(d, D)]
    else:
        bounds = list(bound_intersections_nk(d, D))
    rows = [{"label": b.label, "lo": b.lo, "hi": b.hi} for b in bounds]
    inputs = {"theorem": t, "delta": d, "Delta": D, "n": args.n, "k": args.k}
    return ReportEnvelope("bounds", inputs, {"intervals": rows}, {}, OK, rows)


def _parse_minima(items: Sequence[str]) -> dict[str, float]:
    out = {}
    for item in items:
        key, sep, val = item.partition("=")
        if not sep:
            raise UsageError(f"--min expects KEY=VALUE, got {item!r}")
        try:
            out[key] = float(val)
        except ValueError:
            raise UsageError(f"--min value for {key} is not a number") from None
    return out


def cmd_betti(args) -> ReportEnvelope:
    inputs = {"mode": args.mode, "space": args.space}
    if args.space is not None:
        a = _analysis(args.space)
        mtype = a.manifold_type
        if mtype is None:
            raise UsageError(f"{args.space} carries no recognised structure")
        e = a.einstein
    else:
        if args.type is None or args.k is None:
            raise UsageError("without --space give --type and --k")
        mtype = args.type
        n = 7 if mtype == NEARLY_G2 else 6
        e = EinsteinData(n, args.k)
        a = None
    inputs.update({"type": mtype, "k": e.k, "n": e.n})
    spectral = sectional = None
    if args.mode == "spectral":
        spectral = _parse_minima(args.min) if args.min else (a.spectral_minima() if a else None)
        if spectral is None:
            raise UsageError(f"spectral mode needs --space or --min ({', '.join(SPECTRAL_KEYS[mtype])})")
        inputs["minima"] = spectral
    else:
        if args.delta is not None and args.Delta is not None:
            sectional = (args.delta, args.Delta)
        elif a is not None:
            ext = sectional_extremes(a.space, a.field, args.samples, args.seed)
            sectional = (ext.min_found, ext.max_found)
            inputs.update({"samples": args.samples, "seed": args.seed})
        else:
            raise UsageError("sectional mode needs --delta and --Delta (or --space)")
        inputs["delta"], inputs["Delta"] = sectional
    rep = betti_conditions(mtype, e, spectral=spectral, sectional=sectional)
    conds = [c.__dict__ for c in rep.conditions]
    rows = [{"kind": "condition", **c} for c in conds]
    rows += [{"kind": "verdict", "betti": b, "verdict": v} for b, v in rep.verdicts.items()]
    return ReportEnvelope(
        "betti",
        inputs,
        {"manifold_type": rep.manifold_type, "conditions": conds, "verdicts": rep.verdicts},
        {"threshold": 1e-9},
        OK,
        rows,
    )


def cmd_verify_all(args) -> ReportEnvelope:
    results = acceptance.run_all(seed=args.seed, samples=args.samples, corrupt=args.corrupt)
    rows = [{"id": r.id, "title": r.title, "status": r.status, "checks": r.checks, "observed": r.observed} for r in results]
    status = OK if all(r.passed for r in results) else CHECK_FAILED
    return ReportEnvelope(
        "verify-all",
        {"seed": args.seed, "samples": args.samples},
        {"criteria": rows},
        {"eigenvalue": acceptance.EIG_TOL, "identity": 0.0},
        status,
        rows,
    )


# ---------------------------------------------------------------------------
# rendering


def render_pretty(env: ReportEnvelope) -> str:
    lines = [f"{env.command}: {env.status}"]
    r = env.results
    if env.command == "identities":
        for k, v in r["residuals"].items():
            lines.append(f"  {k:12s} {v:.3g}")
    elif env.command == "spectrum":
        i = env.inputs
        lines[0] = f"{i['operator']} on {i['subspace']} ({i['space']}), dimension {r['dimension']}"
        for e in r["eigenvalues"]:
            lines.append(f"  {e['rational'] or e['value']} ×{e['multiplicity']}")
    elif env.command == "bounds":
        for b in r["intervals"]:
            lines.append(f"  {b['label']}: [{format_value(b['lo'])}, {format_value(b['hi'])}]")
    elif env.command == "betti":
        lines.append(f"  type {r['manifold_type']}")
        for c in r["conditions"]:
            mark = "holds" if c["holds"] else "fails"
            lines.append(
                f"  {c['betti']} {c['id']:16s} {c['quantity']} = {format_value(c['observed'])} "
                f"{c['relation']} {format_value(c['threshold'])}: {mark}"
            )
        for b, v in r["verdicts"].items():
            lines.append(f"  {b}: {v}")
    elif env.command == "verify-all":
        for c in r["criteria"]:
            lines.append(f"  [{c['status'].upper():7s}] {c['id']:2d}. {c['title']}")
    return "\n".join(lines) + "\n"


def render(env: ReportEnvelope, fmt: str) -> str:
    if fmt == "json":
        return env.to_json()
    if fmt == "csv":
        return env.to_csv()
    return render_pretty(env)


# ---------------------------------------------------------------------------


def build_parser() -> _Parser:
    p = _Parser(prog="curvlab", description="Curvature operators, structure identities and Betti criteria.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--format", choices=("json", "csv", "pretty"), default="json")
        sp.set_defaults(func=func)
        return sp

    sp = add("identities", cmd_identities, "check the G2 or SU(3) contraction identities")
    sp.add_argument("--structure", choices=("g2", "su3"), required=True)

    sp = add("spectrum", cmd_spectrum, "eigenvalues of a curvature operator on a subspace")
    sp.add_argument("--space", required=True, help=f"{' | '.join(BUILTINS)} | path to a JSON description")
    sp.add_argument("--operator", choices=OPERATORS, required=True)
    sp.add_argument("--subspace", choices=CLI_LABELS, help="default: the whole ambient space of the operator")
    sp.add_argument("--cluster-tol", type=float, default=1e-6)

    sp = add("bounds", cmd_bounds, "eigenvalue intervals from sectional curvature bounds")
    sp.add_argument("--theorem", choices=THEOREMS, required=True)
    sp.add_argument("--delta", type=float, required=True)
    sp.add_argument("--Delta", type=float, required=True)
    sp.add_argument("--n", type=int)
    sp.add_argument("--k", type=float)

    sp = add("betti", cmd_betti, "evaluate the Betti-number vanishing conditions")
    sp.add_argument("--mode", choices=("spectral", "sectional"), required=True)
    sp.add_argument("--space")
    sp.add_argument("--type", choices=MANIFOLD_TYPES)
    sp.add_argument("--k", type=float, help="Einstein constant (manual inputs)")
    sp.add_argument("--min", action="append", metavar="KEY=VALUE", help="spectral minimum (manual inputs)")
    sp.add_argument("--delta", type=float)
    sp.add_argument("--Delta", type=float)
    sp.add_argument("--samples", type=int, default=100_000)
    sp.add_argument("--seed", type=int)

    sp = add("verify-all", cmd_verify_all, "run every acceptance criterion")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--samples", type=int, default=100_000)
    sp.add_argument("--corrupt", action="store_true", help=argparse.SUPPRESS)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help, or a usage error already reported by the parser
        return int(exc.code or 0)
    try:
        if getattr(args, "seed", 0) is None:
            args.seed = default_seed()
        if getattr(args, "samples", 0) < 0:
            raise UsageError("--samples must be non-negative")
        env = args.func(args)
    except (UsageError, CurvlabError, ValueError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"curvlab: error: {msg}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(render(env, args.format))
    return EXIT_CHECK if env.status == CHECK_FAILED else EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
