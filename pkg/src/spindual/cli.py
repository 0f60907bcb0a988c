"""Command-line interface.

Subcommands: ``involutions``, ``fiber``, ``params``, ``block``, ``dualize`` and
``verify``.  Output is JSON (default), CSV or a TeX tabular and is
byte-identical across runs.  Exit codes: 0 success, 1 failure, 2 usage.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .blocks import (
    BlockError,
    Report,
    build_block,
    dual_block_of,
    fixture_table_matches,
    klv_matrices,
    load_golden,
    verify_duality,
    verify_intertwining,
)
from .gradings import GradingError, ImGrading, RealForm, parse_grading, real_form
from .korbits import FiberError, enumerate_fiber, fiber_order, mclass_label
from .params import (
    ParamError,
    canonical_rep,
    cayley_down,
    cayley_up,
    cross_param,
    dual_form_of,
    enumerate_params,
    param_count,
    param_count_chi,
    params_over,
    principal_class,
    psi,
    weyl_cross,
)
from .weylb import (
    DEFAULT_RANK_BOUND,
    IMAGINARY,
    REAL,
    InfChar,
    Involution,
    WeylError,
    class_size,
    conjugacy_invariants,
    dualize_involution,
    identity,
    integral_roots,
    list_involutions,
    minus_one,
    num_conjugacy_classes,
    parse_diagram,
    positive_roots,
    root_type,
    simple_roots,
    stats,
)

FORMATS = ("json", "csv", "tex")


class UsageError(Exception):
    """Invalid combination of otherwise well-formed options."""


# ---------------------------------------------------------------------------
# argument types
# ---------------------------------------------------------------------------


def _lambda_arg(text: str) -> InfChar:
    try:
        return InfChar.parse(text)
    except (WeylError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _pq_arg(text: str) -> RealForm:
    try:
        p, q = (int(x) for x in text.split(","))
        return RealForm(p, q)
    except (GradingError, ValueError) as exc:
        raise argparse.ArgumentTypeError(f"bad --pq {text!r}: {exc}") from exc


def _chi_arg(text: str) -> int:
    table = {"plus": 1, "+": 1, "+1": 1, "1": 1, "minus": -1, "-": -1, "-1": -1}
    if text not in table:
        raise argparse.ArgumentTypeError(f"bad --chi {text!r}; use plus or minus")
    return table[text]


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc
    if v < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=None)
    common.add_argument("--output", "-o", default=None, help="write to a file instead of stdout")
    common.add_argument("--config", default=None, help="JSON file with rank_bound, threads, format")
    common.add_argument("--threads", type=_positive_int, default=None)
    common.add_argument("--verbose", "-v", action="store_true")

    parser = argparse.ArgumentParser(prog="spindual", description="Genuine parameters of spin double covers.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("involutions", parents=[common], help="list involutions of W(B_n)")
    p.add_argument("--rank", type=_positive_int, required=True)
    p.add_argument("--count", action="store_true", help="class counts instead of the full list")

    p = sub.add_parser("fiber", parents=[common], help="fiber table over an involution")
    p.add_argument("--pq", type=_pq_arg, required=True)
    p.add_argument("--theta", required=True, help="diagram, 'identity' or 'minus-one'")
    p.add_argument("--grading", required=True)

    for name, helptext in (
        ("params", "enumerate genuine parameters"),
        ("block", "structure table of a block"),
        ("dualize", "images under the duality map"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--pq", type=_pq_arg, required=True)
        p.add_argument("--lambda", dest="lam", type=_lambda_arg, required=True)
        p.add_argument("--chi", type=_chi_arg, default=None, required=(name == "block"))

    p = sub.add_parser("verify", parents=[common], help="run the invariant and fixture suites")
    p.add_argument("--rank", type=_positive_int, default=4)
    return parser


@dataclass(frozen=True)
class CommandSpec:
    command: str
    args: argparse.Namespace
    fmt: str
    output: str | None
    threads: int
    rank_bound: int
    verbose: bool


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read config {path!r}: {exc}") from exc
    if not isinstance(data, dict):
        raise UsageError("config must be a JSON object")
    return data


def parse_args(argv: Sequence[str] | None = None) -> CommandSpec:
    """Parse and validate the command line; argparse exits with code 2 on errors."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _load_config(args.config)
    except UsageError as exc:
        parser.error(str(exc))
    threads = args.threads or cfg.get("threads") or os.cpu_count() or 1
    env = os.environ.get("SPINDUAL_THREADS")
    if env:
        try:
            threads = _positive_int(env)
        except argparse.ArgumentTypeError:
            parser.error(f"bad SPINDUAL_THREADS {env!r}")
    rank_bound = int(cfg.get("rank_bound", DEFAULT_RANK_BOUND))
    fmt = args.format or cfg.get("format", "json")
    if fmt not in FORMATS:
        parser.error(f"unknown format {fmt!r}")
    if hasattr(args, "lam") and args.lam.n != args.pq.n:
        parser.error(f"--lambda has rank {args.lam.n} but Spin{args.pq.p, args.pq.q} has rank {args.pq.n}")
    rank = getattr(args, "rank", None)
    if rank is not None and rank > rank_bound:
        parser.error(f"rank {rank} exceeds the bound {rank_bound}")
    return CommandSpec(args.command, args, fmt, args.output, int(threads), rank_bound, args.verbose)


# ---------------------------------------------------------------------------
# results and emitters
# ---------------------------------------------------------------------------


@dataclass
class Result:
    """Table-shaped output: ordered field names and rows of records."""

    fields: list
    records: list
    tex: str | None = None
    document: object = None
    ok: bool = True


def _csv_cell(v) -> str:
    if v is None:
        return "*"
    if isinstance(v, (list, tuple)):
        return ";".join(_csv_cell(x) for x in v)
    return str(v)


def _tex_escape(s: str) -> str:
    return s.replace("⊕", r"\oplus ").replace("-", "{-}")


def _tex_default(result: Result) -> str:
    cols = "|" + "c|" * len(result.fields)
    lines = [rf"\begin{{tabular}}{{{cols}}}", r"\hline"]
    lines.append(" & ".join(result.fields) + r" \\")
    lines.append(r"\hline")
    for rec in result.records:
        lines.append(" & ".join(_tex_escape(_csv_cell(rec.get(f))) for f in result.fields) + r" \\")
    lines += [r"\hline", r"\end{tabular}"]
    return "\n".join(lines) + "\n"


def emit(result: Result, fmt: str) -> bytes:
    """Serialize a result deterministically."""
    if fmt == "json":
        doc = result.document if result.document is not None else result.records
        return (json.dumps(doc, indent=2, ensure_ascii=False) + "\n").encode("utf-8")
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(result.fields)
        for rec in result.records:
            w.writerow([_csv_cell(rec.get(f)) for f in result.fields])
        return buf.getvalue().encode("utf-8")
    if fmt == "tex":
        return (result.tex or _tex_default(result)).encode("utf-8")
    raise UsageError(f"unknown format {fmt!r}")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _parse_theta(text: str, n: int) -> Involution:
    key = text.strip().lower()
    if key in ("identity", "id", "i"):
        return Involution.of(identity(n))
    if key in ("minus-one", "-identity", "-i", "-1"):
        return Involution.of(minus_one(n))
    theta = parse_diagram(text)
    if theta.n != n:
        raise UsageError(f"--theta has rank {theta.n}, expected {n}")
    return theta


def cmd_involutions(spec: CommandSpec) -> Result:
    n = spec.args.rank
    invs = list_involutions(n, bound=spec.rank_bound)
    if spec.args.count:
        classes = {}
        for th in invs:
            classes.setdefault(conjugacy_invariants(th), []).append(th)
        recs = []
        for (n_c, n_s), members in sorted(classes.items()):
            recs.append({
                "n_c": n_c, "n_s": n_s, "n_r": n - n_c - n_s,
                "size": len(members), "formula_size": class_size(n, n_c, n_s),
                "representative": str(members[0]),
            })
        doc = {"rank": n, "total": len(invs), "classes": num_conjugacy_classes(n), "class_sizes": recs}
        return Result(["n_c", "n_s", "n_r", "size", "formula_size", "representative"], recs, document=doc)
    recs = []
    for th in invs:
        st = stats(th)
        n_c, n_s = conjugacy_invariants(th)
        recs.append({
            "theta": str(th), "length": st.length, "n_s": st.n_s, "n_r": st.n_r, "n_c": st.n_c,
            "class_size": class_size(n, n_c, n_s),
        })
    return Result(["theta", "length", "n_s", "n_r", "n_c", "class_size"], recs)


def cmd_fiber(spec: CommandSpec) -> Result:
    form = spec.args.pq
    theta = _parse_theta(spec.args.theta, form.n)
    eps = parse_grading(theta, spec.args.grading)
    if real_form(theta, eps) != form:
        raise UsageError(f"grading gives {real_form(theta, eps)}, not {form}")
    table = enumerate_fiber(theta, eps)
    gens = ["".join(f"{x:+d}" for x in a) for a in table.generators]
    recs = []
    for row in table.rows:
        rec = {"orbit": row.index, "m": mclass_label(row.mclass), "grading": row.grading.render()}
        for g, img in zip(gens, row.images):
            rec[g] = img
        recs.append(rec)
    doc = {
        "theta": str(theta), "grading": eps.render(), "generators": gens,
        "order": len(table), "formula_order": fiber_order(theta, eps), "rows": recs,
    }
    return Result(["orbit", "m", "grading"] + gens, recs, document=doc)


PARAM_FIELDS = ["theta", "grading", "chi", "fiber", "pc", "kappa", "length", "real_form", "dual_form"]


def cmd_params(spec: CommandSpec) -> Result:
    form = spec.args.pq
    params = enumerate_params(form.p, form.q, spec.args.lam, spec.args.chi)
    return Result(PARAM_FIELDS, [g.to_record() for g in params])


def _label(k: int) -> str:
    return f"g{k}"


def cmd_block(spec: CommandSpec) -> Result:
    form = spec.args.pq
    block = build_block(form.p, form.q, spec.args.lam, spec.args.chi)
    cross_roots = list(block.cross_tables)
    cay_roots = list(block.cayley_tables)

    def rname(a):
        return "".join(f"{x:+d}" for x in a)

    fields = ["B", "length"] + [f"cross[{rname(a)}]" for a in cross_roots] + [f"cayley[{rname(a)}]" for a in cay_roots]
    recs = []
    for k in range(len(block)):
        rec = {"B": _label(k), "length": block.lengths[k]}
        for a in cross_roots:
            rec[f"cross[{rname(a)}]"] = _label(block.cross_tables[a][k])
        for a in cay_roots:
            cell = block.cayley_tables[a][k]
            rec[f"cayley[{rname(a)}]"] = None if cell is None else [_label(x) for x in cell]
        recs.append(rec)

    def tex_cell(v):
        if v is None:
            return "*"
        if isinstance(v, list):
            inner = ", ".join(tex_cell(x) for x in v)
            return inner if len(v) == 1 else rf"\{{{inner}\}}"
        if isinstance(v, str) and v.startswith("g"):
            return rf"$\gamma_{{{v[1:]}}}$"
        return str(v)

    head = ["B", "length"] + [rf"$s_{{{rname(a)}}}\times$" for a in cross_roots] + [f"${rname(a)}$" for a in cay_roots]
    lines = [rf"\begin{{tabular}}{{|c|c|{'c' * len(cross_roots)}|{'c' * len(cay_roots)}|}}", r"\hline"]
    lines.append(" & ".join(head) + r" \\")
    lines.append(r"\hline")
    for rec in recs:
        lines.append(" & ".join(tex_cell(rec[f]) for f in fields) + r" \\")
    lines += [r"\hline", r"\end{tabular}"]
    doc = block.to_record()
    doc["table"] = recs
    return Result(fields, recs, tex="\n".join(lines) + "\n", document=doc)


def cmd_dualize(spec: CommandSpec) -> Result:
    form = spec.args.pq
    lam = spec.args.lam
    if lam.n % 2:
        raise UsageError("the duality map needs even rank")
    recs = []
    for g in enumerate_params(form.p, form.q, lam, spec.args.chi):
        d = psi(g)
        recs.append({
            "theta": str(g.theta), "grading": g.eps.render(), "chi": g.chi, "pc": g.pc,
            "length": g.length,
            "dual_theta": str(d.theta), "dual_grading": d.eps.render(), "dual_chi": d.chi,
            "dual_pc": d.pc, "dual_length": d.length, "dual_form": [d.real_form.p, d.real_form.q],
        })
    fields = list(recs[0]) if recs else ["theta", "grading", "chi", "pc", "length", "dual_theta",
                                         "dual_grading", "dual_chi", "dual_pc", "dual_length", "dual_form"]
    return Result(fields, recs)


# ---------------------------------------------------------------------------
# verification suite
# ---------------------------------------------------------------------------


def sample_lambdas(n: int) -> list:
    """One canonical infinitesimal character per fractional pattern."""
    return [canonical_rep(p) for p in product((0, 1), repeat=n)]


def noncompact_forms(n: int) -> list:
    return [RealForm(p, 2 * n + 1 - p) for p in range(n + 1, 2 * n + 1)]


def check_counts(n: int) -> Report:
    """Closed-form counts against enumeration."""
    rep = Report()
    invs = list_involutions(n)
    classes = {}
    for th in invs:
        classes.setdefault(conjugacy_invariants(th), 0)
        classes[conjugacy_invariants(th)] += 1
    rep.record(len(classes) == num_conjugacy_classes(n), "number of involution classes")
    rep.record(sum(class_size(n, *k) for k in classes) == len(invs), "sum of class sizes")
    for k, v in classes.items():
        rep.record(class_size(n, *k) == v, f"class size {k}")
    for th in invs:
        imag = th.imaginary_coords
        for mask in range(1 << len(imag)):
            eps = ImGrading(th, frozenset(imag[i] for i in range(len(imag)) if mask >> i & 1))
            rep.record(len(enumerate_fiber(th, eps)) == fiber_order(th, eps), f"fiber order {th} {eps.render()}")
    if n % 2 == 0:
        for lam in sample_lambdas(n):
            for th in invs:
                for form in noncompact_forms(n):
                    total = params_over(th, form, lam)
                    if not total:
                        continue
                    rep.record(len(total) == param_count(th, lam), f"|P_theta| {th} {form} {lam}")
                    for chi in (1, -1):
                        k = len(params_over(th, form, lam, chi))
                        rep.record(k in (0, param_count_chi(th)), f"|P_theta,chi| {th} {form} {lam}")
    return rep


def check_numerical_duality(n: int) -> Report:
    rep = Report()
    for lam in sample_lambdas(n):
        for th in list_involutions(n):
            for form in noncompact_forms(n):
                for chi in (1, -1):
                    ps = params_over(th, form, lam, chi)
                    if not ps:
                        continue
                    dform = dual_form_of(ps[0])
                    dual = params_over(dualize_involution(th), dform, lam, -chi)
                    rep.record(len(ps) == len(dual), f"slice sizes {th} {form} {lam} chi={chi}")
    return rep


def check_principal_classes(n: int) -> Report:
    rep = Report()
    for lam in sample_lambdas(n):
        for th in list_involutions(n):
            if not stats(th).even_parity:
                continue
            for form in noncompact_forms(n):
                for chi in (1, -1):
                    ps = params_over(th, form, lam, chi)
                    labels = [principal_class(g) for g in ps]
                    rep.record(len(set(labels)) == len(labels), f"principal classes {th} {form} {lam}")
    return rep


def check_actions(n: int) -> Report:
    """Group-action axioms, Cayley round trips and central-character invariance."""
    rep = Report()
    simples = simple_roots(n)
    for lam in sample_lambdas(n):
        for form in noncompact_forms(n):
            for g in enumerate_params(form.p, form.q, lam):
                for a in simples:
                    rep.record(weyl_cross([a, a], g) == g, f"s^2 at {g}")
                for i, a in enumerate(simples):
                    for j in range(i + 1, n):
                        b = simples[j]
                        m = 2 if j > i + 1 else (4 if j == n - 1 else 3)
                        rep.record(weyl_cross([a, b] * m, g) == g, f"braid {a},{b} at {g}")
                for a in integral_roots(lam):
                    h = cross_param(a, g)
                    rep.record(h.chi == g.chi, f"chi invariance {a} at {g}")
                for a in positive_roots(n):
                    kind = root_type(g.theta, a)
                    if kind == IMAGINARY and g.eps(a) == 1:
                        for h in cayley_up(g, a):
                            rep.record(g in cayley_down(h, a), f"Cayley round trip {a} at {g}")
                    elif kind == REAL:
                        for h in cayley_down(g, a):
                            rep.record(g in cayley_up(h, a), f"inverse Cayley round trip {a} at {g}")
    return rep


def _block_task(args) -> Report:
    p, q, twice, chi = args
    lam = InfChar(tuple(twice))
    try:
        block = build_block(p, q, lam, chi)
    except BlockError:
        return Report()
    return verify_intertwining(block, dual_block_of(block))


def check_intertwining(n: int, threads: int = 1) -> Report:
    tasks = [
        (f.p, f.q, lam.twice, chi)
        for lam in sample_lambdas(n)
        for f in noncompact_forms(n)
        for chi in (1, -1)
    ]
    rep = Report()
    if threads > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(_block_task, tasks))
    else:
        parts = [_block_task(t) for t in tasks]
    for part in parts:
        rep.merge(part)
    return rep


def check_fixtures() -> Report:
    rep = Report()
    fx = load_golden("spin32_block")
    p, q, lam, chi = fx.block_key
    block = build_block(p, q, lam, chi)
    dual = dual_block_of(block)
    rep.merge(fixture_table_matches(block, fx.data["block"], fx.data["columns"]))
    rep.merge(fixture_table_matches(dual, fx.data["dual_block"], fx.data["columns"]))
    mats, dmats = klv_matrices(block), klv_matrices(dual)
    for bad in mats.check(block.lengths) + dmats.check(dual.lengths):
        rep.record(False, bad)
    rep.merge(verify_duality(block, dual, mats, dmats))
    rep.merge(verify_intertwining(block, dual))
    fib = load_golden("spin54_fiber")
    theta = parse_diagram(fib.data["theta"])
    table = enumerate_fiber(theta, parse_grading(theta, fib.data["grading"]))
    rows = fib.data["rows"]
    rep.record(len(table) == len(rows), "fiber size")
    pos = [table.index_of(tuple(r[0])) for r in rows]
    for k, (mcl, grading, imgs) in enumerate(rows):
        row = table.rows[pos[k]]
        rep.record(row.grading == parse_grading(theta, grading), f"fiber row {k} grading")
        rep.record(list(row.images) == [pos[i] for i in imgs], f"fiber row {k} images")
    return rep


def run_verification(n: int, threads: int = 1) -> dict:
    """Run every suite at rank ``n``; returns ``{suite: report}``."""
    suites = {"counts": check_counts(n)}
    if n % 2 == 0:
        suites["numerical_duality"] = check_numerical_duality(n)
        suites["principal_classes"] = check_principal_classes(n)
        suites["actions"] = check_actions(n)
        suites["intertwining"] = check_intertwining(n, threads)
    suites["fixtures"] = check_fixtures()
    return suites


def cmd_verify(spec: CommandSpec) -> Result:
    suites = run_verification(spec.args.rank, spec.threads)
    recs = [
        {"suite": name, "checks": r.checks, "violations": len(r.violations), "ok": r.ok}
        for name, r in suites.items()
    ]
    ok = all(r.ok for r in suites.values())
    doc = {
        "rank": spec.args.rank,
        "ok": ok,
        "suites": recs,
        "violations": {name: r.violations[:20] for name, r in suites.items() if r.violations},
    }
    return Result(["suite", "checks", "violations", "ok"], recs, document=doc, ok=ok)


COMMANDS = {
    "involutions": cmd_involutions,
    "fiber": cmd_fiber,
    "params": cmd_params,
    "block": cmd_block,
    "dualize": cmd_dualize,
    "verify": cmd_verify,
}


def execute(spec: CommandSpec) -> int:
    """Run a parsed command, write its output and return the exit code."""
    try:
        result = COMMANDS[spec.command](spec)
        data = emit(result, spec.fmt)
    except UsageError as exc:
        sys.stderr.write(f"spindual: error: {exc}\n")
        return 2
    except (WeylError, GradingError, FiberError, ParamError, BlockError) as exc:
        sys.stderr.write(json.dumps({"ok": False, "error": type(exc).__name__, "message": str(exc)}) + "\n")
        return 1
    try:
        if spec.output:
            with open(spec.output, "wb") as fh:
                fh.write(data)
        else:
            sys.stdout.buffer.write(data)
            sys.stdout.flush()
    except OSError as exc:
        sys.stderr.write(json.dumps({"ok": False, "error": "OSError", "message": str(exc)}) + "\n")
        return 1
    return 0 if result.ok else 1


def main(argv: Sequence[str] | None = None) -> int:
    spec = parse_args(argv)
    return execute(spec)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
