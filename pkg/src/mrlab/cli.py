"""Command-line front end.

Usage:
    mrlab catalog list
    mrlab ring scan T2_Z2
    mrlab monoid scan N1
    mrlab check central_armendariz --ring T2_Z2 --monoid C2
    mrlab check plain_armendariz --ring Z6 --monoid NatAdd --degree 3 --support 2,2
    mrlab suite run --only remark_2_2,lem_2_14 --json
    mrlab search --target "abelian and not central_armendariz(NatAdd, d=1)" --family "subrings(M2_Z2, 2)"
    mrlab verify-witness report.json

Exit codes: 0 everything holds or passed, 1 a failure or anomaly (the report
carries the witness), 2 usage or config error, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from typing import Optional, Sequence

from . import __version__
from .catalog import Catalog, default_catalog
from .config import Config, ConfigError, load_config
from .errors import AlgebraError, BudgetExceeded
from .monoids import monoid_scan
from .properties import CLASSICAL, Bounds, Kind, Status, check_armendariz, check_classical
from .replay import iter_witnesses, recheck
from .rings import ring_scan

SCHEMA = "mrlab.report/1"
ARMENDARIZ = {"plain_armendariz": Kind.PLAIN, "central_armendariz": Kind.CENTRAL, "nil_armendariz": Kind.NIL}

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--config", help="structure definitions and budgets")
    p.add_argument("--json", action="store_true", help="emit the JSON report envelope")
    p.add_argument("--out", help="write the report to this path")
    p.add_argument("--workers", type=int, help="worker processes for large searches")
    p.add_argument("--timing", action="store_true", help="include wall-clock times (breaks byte-stability)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="mrlab", description="Finite rings, monoid rings and Armendariz-type conditions.")
    parser.add_argument("--version", action="version", version=f"mrlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    cat = sub.add_parser("catalog", help="list catalog structures")
    cat_sub = cat.add_subparsers(dest="action", required=True, parser_class=_Parser)
    cat_sub.add_parser("list", parents=[common])

    ring = sub.add_parser("ring", help="structure of a ring")
    ring_sub = ring.add_subparsers(dest="action", required=True, parser_class=_Parser)
    rs = ring_sub.add_parser("scan", parents=[common])
    rs.add_argument("name")

    mon = sub.add_parser("monoid", help="properties of a monoid")
    mon_sub = mon.add_subparsers(dest="action", required=True, parser_class=_Parser)
    ms = mon_sub.add_parser("scan", parents=[common])
    ms.add_argument("name")

    chk = sub.add_parser("check", parents=[common], help="decide one property")
    chk.add_argument("prop", choices=list(CLASSICAL) + list(ARMENDARIZ))
    chk.add_argument("--ring", required=True)
    chk.add_argument("--monoid")
    chk.add_argument("--degree", type=int, help="NatAdd degree bound d")
    chk.add_argument("--support", help="caps m,n on the number of terms of alpha and beta")
    chk.add_argument("--max-alphas", type=int)
    chk.add_argument("--no-shortcuts", action="store_true", help="enumerate even when commutativity decides the answer")

    suite = sub.add_parser("suite", help="run the theorem suite")
    suite_sub = suite.add_subparsers(dest="action", required=True, parser_class=_Parser)
    sr = suite_sub.add_parser("run", parents=[common])
    sr.add_argument("--only", nargs="+", help="entry ids (space or comma separated)")
    sr.add_argument("--degree", type=int, help="override NatAdd degree bounds")
    sr.add_argument("--support", help="override support caps m,n")

    se = sub.add_parser("search", parents=[common], help="counterexample search")
    se.add_argument("--target", required=True)
    se.add_argument("--family", default="catalog")
    se.add_argument("--monoids", default="C2", help="monoids for atoms without a monoid argument")
    se.add_argument("--max-structures", type=int, default=10_000)

    vw = sub.add_parser("verify-witness", parents=[common], help="re-check every witness in a JSON report")
    vw.add_argument("report")
    return parser


def _support(text: Optional[str]) -> Optional[tuple[int, int]]:
    if text is None:
        return None
    try:
        m, n = (int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"--support expects m,n, got {text!r}") from None
    if m < 1 or n < 1:
        raise UsageError("--support values must be positive")
    return m, n


def _positive(name: str, v: Optional[int], allow_zero: bool = False) -> None:
    if v is not None and (v < 0 or (v == 0 and not allow_zero)):
        raise UsageError(f"--{name} must be {'nonnegative' if allow_zero else 'positive'}")


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------


def _cmd_catalog(args, cat: Catalog, cfg: Optional[Config], workers: int):
    rings = []
    for name, r in cat.rings.items():
        rings.append({
            "name": name,
            "size": r.size,
            "has_identity": r.one is not None,
            "commutative": r.is_commutative,
            "field": name in cat.fields,
            "digest": r.digest,
        })
    monoids = []
    for name, m in cat.monoids.items():
        monoids.append({"name": name, "size": m.size if m.finite else None, "finite": m.finite})
    result = {"type": "catalog", "rings": rings, "monoids": monoids}
    lines = ["rings:"]
    for r in rings:
        tags = [t for t, on in (("unital", r["has_identity"]), ("commutative", r["commutative"]), ("field", r["field"])) if on]
        lines.append(f"  {r['name']:<10} {r['size']:>4}  {', '.join(tags)}")
    lines.append("monoids:")
    for m in monoids:
        lines.append(f"  {m['name']:<10} {m['size'] if m['finite'] else 'infinite':>8}")
    return EXIT_OK, [result], "\n".join(lines)


def _cmd_ring_scan(args, cat: Catalog, cfg, workers):
    try:
        R = cat.ring(args.name)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    rep = ring_scan(R)
    lab = R.label
    lines = [
        f"{R.name}: {R.size} elements, {'unital' if R.one is not None else 'no identity'}, "
        f"{'commutative' if rep.commutative else 'noncommutative'} (validation: {rep.validation})",
        f"  center       {{{', '.join(lab(x) for x in rep.center)}}}",
        f"  idempotents  {{{', '.join(lab(x) for x in rep.idempotents)}}}",
        f"  nilpotents   {{{', '.join(lab(x) for x in rep.nilpotents)}}}",
    ]
    if rep.units is not None:
        lines.append(f"  units        {{{', '.join(lab(x) for x in rep.units)}}}")
    lines.append(f"  J(R) = P(R)  {{{', '.join(lab(x) for x in rep.jacobson_radical)}}} ({rep.radical_method})")
    return EXIT_OK, [rep.to_dict()], "\n".join(lines)


def _cmd_monoid_scan(args, cat: Catalog, cfg, workers):
    try:
        M = cat.monoid(args.name)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    rep = monoid_scan(M)
    d = rep.to_dict()
    lines = [f"{rep.name}: {'infinite' if rep.size is None else str(rep.size) + ' elements'}"]
    for key in ("cancellative", "unique_product", "is_group", "torsion_free", "strict_total_order_exists"):
        lines.append(f"  {key:<26} {d[key]}")
    if rep.cancellative_witness:
        w = rep.cancellative_witness
        lab = M.label
        op = "m g = m h" if w["side"] == "left" else "g m = h m"
        lines.append(f"  cancellation fails: {op} with m={lab(w['m'])}, g={lab(w['g'])}, h={lab(w['h'])}")
    lines.extend(f"  note: {n}" for n in rep.notes)
    return EXIT_OK, [d], "\n".join(lines)


def _status_exit(status: Status) -> int:
    if status is Status.FAILS:
        return EXIT_FAIL
    if status is Status.BUDGET_EXHAUSTED:
        return EXIT_BUDGET
    return EXIT_OK


def _render_verdict(v) -> str:
    where = f" over {v.monoid}" if v.monoid else ""
    lines = [f"{v.prop} for {v.ring}{where}: {v.status.value}"]
    b = v.bound
    if b and not b.get("exhaustive", False):
        parts = [f"positions {b.get('positions')}"]
        if b.get("alpha_max_terms") is not None:
            parts.append(f"m={b['alpha_max_terms']}, n={b['beta_max_terms']}")
        lines.append("  bound: " + ", ".join(parts))
    elif b.get("exhaustive"):
        lines.append("  bound: exhaustive")
    if v.witness is not None:
        lines.append("  witness: " + v.witness.render())
    for n in v.notes:
        lines.append("  note: " + n)
    return "\n".join(lines)


def _cmd_check(args, cat: Catalog, cfg: Optional[Config], workers: int):
    try:
        R = cat.ring(args.ring)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    if args.prop in CLASSICAL:
        if args.monoid or args.degree is not None or args.support:
            raise UsageError(f"{args.prop} is a ring property; --monoid, --degree and --support do not apply")
        v = check_classical(R, args.prop)
        return _status_exit(v.status), [v.to_dict()], _render_verdict(v)
    if not args.monoid:
        raise UsageError(f"{args.prop} needs --monoid")
    try:
        M = cat.monoid(args.monoid)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    _positive("degree", args.degree, allow_zero=True)
    _positive("max-alphas", args.max_alphas)
    support = _support(args.support)
    degree = args.degree
    if cfg is not None and not M.finite:
        # config degree and support are NatAdd defaults; finite monoids stay exhaustive
        support = support or cfg.budget.support
        degree = degree if degree is not None else cfg.budget.degree
    max_alphas = args.max_alphas or (cfg.budget.max_alphas if cfg else None)
    if M.finite:
        if args.degree is not None:
            raise UsageError("--degree applies to NatAdd only")
        bounds = Bounds(alpha_terms=support[0] if support else None, beta_terms=support[1] if support else None)
    else:
        base = Bounds.nat_default()
        m, n = support if support else (base.alpha_terms, base.beta_terms)
        bounds = Bounds(degree=degree if degree is not None else base.degree, alpha_terms=m, beta_terms=n)
    if max_alphas:
        bounds = Bounds(bounds.degree, bounds.alpha_terms, bounds.beta_terms, bounds.positions, max_alphas)
    v = check_armendariz(R, M, ARMENDARIZ[args.prop], bounds, workers=workers, shortcuts=not args.no_shortcuts)
    return _status_exit(v.status), [v.to_dict()], _render_verdict(v)


def _split_ids(values: Optional[list[str]]) -> Optional[list[str]]:
    if not values:
        return None
    out = []
    for v in values:
        out.extend(x for x in v.split(",") if x)
    return out


def _cmd_suite(args, cat: Catalog, cfg: Optional[Config], workers: int):
    from .suite import ENTRIES, SuiteBounds, run_suite

    ids = _split_ids(args.only)
    for thm in ids or []:
        if thm not in ENTRIES:
            raise UsageError(f"unknown suite entry {thm!r}; known: {', '.join(ENTRIES)}")
    _positive("degree", args.degree, allow_zero=True)
    support = _support(args.support)
    degree = args.degree
    kwargs = {}
    if cfg is not None:
        support = support or cfg.budget.support
        degree = degree if degree is not None else cfg.budget.degree
        kwargs["max_alphas"] = min(cfg.budget.max_alphas, SuiteBounds().max_alphas)
    sb = SuiteBounds(degree=degree, support=support, **kwargs)
    reports = run_suite(ids, cat, sb, workers)
    timing = args.timing
    results = [r.to_dict(timing=timing) for r in reports]
    lines = []
    code = EXIT_OK
    for r in reports:
        c = r.counts
        summary = ", ".join(f"{c[k]} {k}" for k in ("pass", "fail", "vacuous", "anomaly", "budget", "inconclusive") if c[k])
        tag = " (probe)" if r.probe else ""
        lines.append(f"{r.id:<16} {r.outcome.upper():<8} {summary}{tag}")
        for inst in r.failures():
            lines.append(f"    {inst.result}: {inst.label}")
        if r.outcome in ("fail", "anomaly"):
            code = EXIT_FAIL
        elif r.outcome == "budget" and code == EXIT_OK:
            code = EXIT_BUDGET
    return code, results, "\n".join(lines)


def _cmd_search(args, cat: Catalog, cfg, workers: int):
    from .search import ExpressionError, counterexample_search

    _positive("max-structures", args.max_structures)
    monoids = [m for m in args.monoids.split(",") if m]
    try:
        res = counterexample_search(args.target, args.family, monoids, cat, max_structures=args.max_structures, workers=workers)
    except ExpressionError as exc:
        raise UsageError(str(exc)) from None
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    lines = [f"target: {res.target}", f"family: {res.family} ({res.examined} structures examined)"]
    if not res.findings:
        lines.append("no findings")
    for f in res.findings:
        lines.append(f.render())
    if res.partial:
        lines.append("partial: " + "; ".join(res.notes or ["some cases were undecided within budget"]))
    return (EXIT_BUDGET if res.partial else EXIT_OK), [res.to_dict()], "\n".join(lines)


def _cmd_verify(args, cat, cfg, workers):
    try:
        with open(args.report, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read report {args.report!r}: {exc}") from None
    checks = []
    ok_all = True
    for path, obj in iter_witnesses(data):
        ok, msg = recheck(obj)
        ok_all = ok_all and ok
        checks.append({"path": path, "type": obj.get("type"), "ok": ok, "message": msg})
    result = {"type": "witness_verification", "report": args.report, "checked": len(checks), "all_confirmed": ok_all, "checks": checks}
    lines = [f"{len(checks)} witnesses checked: {'all confirmed' if ok_all else 'DISAGREEMENT'}"]
    for c in checks:
        if not c["ok"]:
            lines.append(f"  {c['path']}: {c['message']}")
    return (EXIT_OK if ok_all else EXIT_FAIL), [result], "\n".join(lines)


COMMANDS = {
    ("catalog", "list"): _cmd_catalog,
    ("ring", "scan"): _cmd_ring_scan,
    ("monoid", "scan"): _cmd_monoid_scan,
    ("check", None): _cmd_check,
    ("suite", "run"): _cmd_suite,
    ("search", None): _cmd_search,
    ("verify-witness", None): _cmd_verify,
}

# Flags that change neither the answer nor the report body.
_PRESENTATION = {"json", "out", "workers", "timing", "config"}


def _canonical_command(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in _PRESENTATION}


def envelope(args, results: list, code: int, cfg: Optional[Config], cat: Catalog, wall: Optional[float]) -> dict:
    cmd = _canonical_command(args)
    digest_src = json.dumps(
        {"command": cmd, "config": cfg.source_digest if cfg else None, "catalog": sorted((n, r.digest) for n, r in cat.rings.items())},
        sort_keys=True,
    )
    env = {
        "schema": SCHEMA,
        "tool": {"name": "mrlab", "version": __version__},
        "command": cmd,
        "input_digest": hashlib.sha256(digest_src.encode()).hexdigest(),
        "exit_code": code,
        "results": results,
    }
    if wall is not None:
        env["wall_clock"] = wall
    return env


def dumps(env: dict) -> str:
    return json.dumps(env, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def run_command(argv: Sequence[str], config: Optional[Config] = None) -> tuple[int, Optional[dict], str]:
    """Parse and execute; returns (exit code, envelope or None, text to print)."""
    t0 = time.perf_counter()
    try:
        args = build_parser().parse_args(list(argv))
    except UsageError as exc:
        return EXIT_USAGE, None, str(exc)
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0), None, ""
    cfg = config
    try:
        if args.config:
            cfg = load_config(args.config)
    except ConfigError as exc:
        return EXIT_USAGE, None, f"config error: {exc}"
    except OSError as exc:
        return EXIT_USAGE, None, f"cannot read config: {exc}"
    cat = cfg.catalog() if cfg else default_catalog()
    workers = args.workers if args.workers is not None else (cfg.budget.workers if cfg else 1)
    if workers < 1:
        return EXIT_USAGE, None, "--workers must be positive"
    handler = COMMANDS[(args.command, getattr(args, "action", None))]
    try:
        code, results, text = handler(args, cat, cfg, workers)
    except UsageError as exc:
        return EXIT_USAGE, None, str(exc)
    except BudgetExceeded as exc:
        code, results, text = EXIT_BUDGET, [{"type": "budget_exceeded", "message": str(exc)}], f"budget exceeded: {exc}"
    except AlgebraError as exc:
        return EXIT_USAGE, None, f"error: {exc}"
    wall = round(time.perf_counter() - t0, 3) if args.timing else None
    env = envelope(args, results, code, cfg, cat, wall)
    use_json = args.json or (cfg is not None and cfg.output.format == "json")
    out_path = args.out or (cfg.output.path if cfg else None)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(dumps(env) if use_json or out_path.endswith(".json") else text + "\n")
        text = (text + "\n" if not use_json else "") + f"report written to {out_path}"
    elif use_json:
        text = dumps(env).rstrip("\n")
    return code, env, text


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, _, text = run_command(sys.argv[1:] if argv is None else argv)
    if text:
        stream = sys.stderr if code == EXIT_USAGE else sys.stdout
        print(text, file=stream)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
