#!/usr/bin/env python3
"""
Command line for the graded Temperley-Lieb algebras: verification suites, products, renders.

Usage examples:
  python pipeline.py verify --suite xy-inverse --param N=5 --param k=2
  python pipeline.py verify --all --store
  python pipeline.py compute "star(cup(0), cup(0))"
  python pipeline.py render "2→0:{(B1,B2)}"
  python pipeline.py enumerate 4 2 --filter epi
  python pipeline.py history --suite moments --export exports/moments.csv

Exit status of `verify`: 0 when every identity holds, 1 on a failed identity, 2 on bad usage.
"""
from __future__ import annotations

import ast
import json
import logging
import math
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

import click

import basis_change
import elements
import graded
import numeric
import tower
from config import LimitExceeded, get_default_seed, get_log_level
from elements import Element
from graded import GradedElement, as_graded
from ledger import load_history, store_report
from models import Report
from render import render_element, render_pairing
from scalar import Scalar
from tl import FILTERS, Pairing, enumerate_diagrams, validate, verify_counts
from utils import dump_json, parse_params


@dataclass(frozen=True)
class Suite:
    runner: Callable[..., Report]
    defaults: Dict[str, Any]
    seeded: bool = False


SUITES: Dict[str, Suite] = {
    "xy-inverse": Suite(basis_change.verify_inverse, {"N": 5, "k": 2}),
    "homomorphism": Suite(basis_change.verify_homomorphism, {"M": 4, "k": 2}),
    "isometry": Suite(basis_change.verify_isometry, {"M": 4, "k": 2}),
    "associativity": Suite(graded.verify_associativity, {"M": 4, "k": 1, "samples": 100}, seeded=True),
    "vpq": Suite(tower.verify_vn_orthogonality, {"n": 1, "k": 1, "limit": 3}),
    "cup-action": Suite(tower.verify_cup_action, {"n": 1, "k": 1, "pmax": 3, "qmax": 3}),
    "jones": Suite(tower.verify_jones, {"kmax": 4}),
    "commutator": Suite(tower.verify_commutator, {"nmax": 4, "k": 0}),
    "moments": Suite(numeric.verify_moments, {"mmax": 8, "k": 1}),
    "gram": Suite(numeric.verify_gram, {"n": 2, "k": 1, "s0": math.sqrt(2)}),
    "binomial": Suite(basis_change.verify_binomial_cancellation, {"imax": 4}),
    "splitting": Suite(basis_change.verify_epi_splitting, {"total": 3}),
    "unitriangular": Suite(basis_change.verify_unitriangular, {"N": 4, "k": 1}),
    "spanning": Suite(tower.verify_spanning, {"nmax": 3, "k": 2}),
    "expectation": Suite(tower.verify_expectation, {"k": 1, "samples": 20}, seeded=True),
    "star-structure": Suite(graded.verify_star_structure, {"samples": 100, "k": 1}, seeded=True),
    "counts": Suite(verify_counts, {"pmax": 6, "ijmax": 6, "factor_max": 12}),
}


@dataclass
class SuiteSpec:
    name: str
    params: Dict[str, Any] = field(default_factory=dict)

    def resolved(self) -> Dict[str, Any]:
        """Defaults overlaid with the given params, checked against the suite's parameter types."""
        if self.name not in SUITES:
            raise click.UsageError(f"unknown suite {self.name!r}; choose from {', '.join(sorted(SUITES))}")
        defaults = SUITES[self.name].defaults
        out = dict(defaults)
        for key, value in self.params.items():
            if key not in defaults:
                raise click.UsageError(f"suite {self.name} has no parameter {key!r} (known: {', '.join(defaults)})")
            if isinstance(defaults[key], int) and not isinstance(value, int):
                raise click.UsageError(f"parameter {key} of {self.name} must be an integer")
            if isinstance(value, (int, float)) and value < 0:
                raise click.UsageError(f"parameter {key} of {self.name} must be nonnegative")
            if isinstance(defaults[key], float) and value <= 0:
                raise click.UsageError(f"parameter {key} of {self.name} must be positive")
            out[key] = value
        return out


def run_suite(spec: SuiteSpec, seed: Optional[int] = None, timing: bool = False) -> Report:
    params = spec.resolved()
    suite = SUITES[spec.name]
    if suite.seeded:
        params["seed"] = get_default_seed() if seed is None else seed
    start = time.perf_counter()
    try:
        report = suite.runner(**params)
    except LimitExceeded as exc:
        raise click.UsageError(f"{spec.name}: {exc}")
    except Exception as exc:
        # runner crashes are reported as failures (exit 1)
        logging.exception("suite %s raised", spec.name)
        report = Report(spec.name, params)
        report.fail({"error": type(exc).__name__}, str(exc), None)
    report.suite = spec.name
    report.params = params
    if timing:
        report.wall_ms = round((time.perf_counter() - start) * 1000.0, 3)
    logging.info("suite %s: %d cases, %d failures", spec.name, report.cases, len(report.failures))
    return report


def full_battery() -> List[SuiteSpec]:
    """Every suite over the ranges that define a complete check of the algebra."""
    specs = []
    for k in range(3):
        specs.append(SuiteSpec("xy-inverse", {"N": 5, "k": k}))
        specs.append(SuiteSpec("homomorphism", {"M": 4, "k": k}))
        specs.append(SuiteSpec("isometry", {"M": 4, "k": k}))
    for k in range(2):
        specs.append(SuiteSpec("associativity", {"M": 4, "k": k}))
    specs.append(SuiteSpec("star-structure", {}))
    specs.append(SuiteSpec("vpq", {}))
    specs.append(SuiteSpec("cup-action", {}))
    for k in range(3):
        specs.append(SuiteSpec("spanning", {"nmax": 3, "k": k}))
    specs.append(SuiteSpec("jones", {}))
    specs.append(SuiteSpec("expectation", {}))
    specs.append(SuiteSpec("commutator", {}))
    for k in range(3):
        specs.append(SuiteSpec("moments", {"mmax": 8, "k": k}))
    for s0 in (math.sqrt(2), math.sqrt(3)):
        for total in range(5):
            for k in range(total + 1):
                specs.append(SuiteSpec("gram", {"n": total - k, "k": k, "s0": s0}))
    specs.append(SuiteSpec("binomial", {}))
    specs.append(SuiteSpec("splitting", {}))
    specs.append(SuiteSpec("unitriangular", {}))
    specs.append(SuiteSpec("counts", {}))
    return specs


def format_pretty(reports: List[Report]) -> str:
    lines = []
    for r in reports:
        params = ", ".join(f"{k}={v}" for k, v in sorted(r.params.items()))
        status = "PASS" if r.passed else f"FAIL ({len(r.failures)})"
        timing = f" {r.wall_ms:.0f} ms" if r.wall_ms is not None else ""
        lines.append(f"{r.suite:<15} {params:<40} {r.cases:>7} cases  {status}{timing}")
        for failure in r.failures[:5]:
            lines.append(f"    {json.dumps(failure['input'], sort_keys=True)[:160]}")
    return "\n".join(lines)


# expression evaluation for `compute`

def _load(path):
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ValueError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path} is not JSON: {exc}") from exc
    return GradedElement.from_dict(data)


def _one(k=0):
    return GradedElement.unit(k)


FUNCTIONS: Dict[str, Callable] = {
    "star": graded.star,
    "bullet": graded.bullet,
    "X": basis_change.X,
    "Y": basis_change.Y,
    "E": tower.conditional_expectation,
    "inv": graded.involution,
    "trace": graded.trace,
    "inner": graded.inner_orth,
    "gjs": graded.inner_gjs,
    "include": tower.include_graded,
    "cup": lambda k=0: as_graded(elements.build_cup(k)),
    "jones": lambda i, k: as_graded(elements.build_jones(i, k)),
    "alpha": lambda k=0: elements.build_alpha(k),
    "xpq": lambda x, p, q: GradedElement.from_elements(
        as_graded(x).context, [elements.build_xpq(part, p, q) for part in as_graded(x).parts.values()]),
    "one": _one,
    "load": _load,
}


def evaluate_expression(text: str):
    """Evaluate a small expression language over GradedElements, Scalars and integers."""
    try:
        tree = ast.parse(text, mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse expression: {exc.msg}") from exc

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, str)) and not isinstance(node.value, bool):
            return node.value
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name):
            fn = FUNCTIONS.get(node.func.id)
            if fn is None or node.keywords:
                raise ValueError(f"unknown function {node.func.id!r}; known: {', '.join(sorted(FUNCTIONS))}")
            args = [ev(a) for a in node.args]
            try:
                return fn(*args)
            except TypeError as exc:
                raise ValueError(f"{node.func.id}: {exc}") from exc
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand)
        if isinstance(node, ast.BinOp) and isinstance(node.op, (ast.Add, ast.Sub, ast.Mult)):
            left, right = ev(node.left), ev(node.right)
            if isinstance(left, Element):
                left = as_graded(left)
            if isinstance(right, Element):
                right = as_graded(right)
            try:
                if isinstance(node.op, ast.Mult):
                    return left * right
                return left + right if isinstance(node.op, ast.Add) else left - right
            except TypeError as exc:
                raise ValueError(f"cannot combine {type(left).__name__} and {type(right).__name__}") from exc
        raise ValueError(f"unsupported syntax: {ast.dump(node)[:60]}")

    return ev(tree)


def _jsonable(value):
    if isinstance(value, GradedElement):
        return value.to_dict()
    if isinstance(value, Element):
        return as_graded(value).to_dict()
    if isinstance(value, Scalar):
        return {"scalar": str(value)}
    if isinstance(value, int):
        return {"scalar": str(Scalar.coerce(value))}
    raise ValueError(f"expression evaluated to unsupported {type(value).__name__}")


def _emit(text: str, out: Optional[str]):
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text if text.endswith("\n") else text + "\n")
        click.echo(f"Wrote {out}")
    else:
        click.echo(text, nl=not text.endswith("\n"))


@click.group()
@click.option("--log-level", default=None, help="Logging level (default from LOG_LEVEL or WARNING)")
def cli(log_level):
    """Graded Temperley-Lieb algebra CLI"""
    logging.basicConfig(level=(log_level or get_log_level()).upper(), format="%(levelname)s %(name)s: %(message)s")


@cli.command("verify")
@click.option("--suite", "suites", multiple=True, help="Suite to run (repeatable)")
@click.option("--all", "run_all", is_flag=True, default=False, help="Run the full battery")
@click.option("--param", "params", multiple=True, help="Suite parameter key=value (repeatable)")
@click.option("--seed", type=int, default=None, help="Seed for randomized suites")
@click.option("--out", "out_path", type=click.Path(dir_okay=False), help="Write the report JSON here")
@click.option("--format", "fmt", type=click.Choice(["json", "pretty"]), default="json")
@click.option("--timing", is_flag=True, default=False, help="Add wall_ms to each report")
@click.option("--store", is_flag=True, default=False, help="Record reports in the ledger database")
def verify(suites, run_all, params, seed, out_path, fmt, timing, store):
    """Run verification suites; exit 1 if any identity fails."""
    if not suites and not run_all:
        raise click.UsageError("give --suite NAME or --all")
    try:
        parsed = parse_params(params)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    specs = [SuiteSpec(name, dict(parsed)) for name in suites]
    if run_all:
        if parsed:
            raise click.UsageError("--param cannot be combined with --all")
        specs += full_battery()
    for spec in specs:
        spec.resolved()

    reports = [run_suite(spec, seed=seed, timing=timing) for spec in specs]
    if store:
        for r in reports:
            store_report(r)

    if fmt == "pretty":
        text = format_pretty(reports)
    else:
        payload = reports[0].to_dict() if len(reports) == 1 else [r.to_dict() for r in reports]
        text = dump_json(payload)
    _emit(text, out_path)
    if not all(r.passed for r in reports):
        sys.exit(1)


@cli.command("compute")
@click.argument("expression")
@click.option("--pretty", is_flag=True, default=False, help="Indent the JSON")
def compute(expression, pretty):
    """Evaluate an expression such as "star(cup(0), cup(0))" and print it as JSON."""
    try:
        value = evaluate_expression(expression)
        payload = _jsonable(value)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    click.echo(dump_json(payload, pretty=pretty))


@cli.command("render")
@click.argument("diagram", required=False)
@click.option("--expr", "expression", default=None, help="Render the value of a compute expression instead")
@click.option("--format", "fmt", type=click.Choice(["ascii", "svg"]), default="ascii")
@click.option("--out", "out_path", type=click.Path(dir_okay=False), help="Write to this file")
def render(diagram, expression, fmt, out_path):
    """Draw a diagram given as text (e.g. "2→2:{(B1,T1),(B2,T2)}") or an element."""
    if bool(diagram) == bool(expression):
        raise click.UsageError("give exactly one of DIAGRAM or --expr")
    try:
        if diagram:
            p = Pairing.from_text(diagram)
            if not validate(p):
                raise ValueError(f"{diagram} is not a noncrossing matching")
            text = render_pairing(p, fmt)
        else:
            value = evaluate_expression(expression)
            if isinstance(value, GradedElement):
                if len(value.parts) > 1:
                    raise ValueError("the expression has several grades; render one grade at a time")
                value = value.part(value.grades()[0]) if value.parts else Element.zero(0, value.context)
            if not isinstance(value, Element):
                raise ValueError("the expression does not evaluate to an element")
            text = render_element(value, fmt)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    _emit(text, out_path)


@cli.command("enumerate")
@click.argument("bottom", type=int)
@click.argument("top", type=int)
@click.option("--filter", "filter_name", type=click.Choice(FILTERS), default="all")
def enumerate_command(bottom, top, filter_name):
    """List every diagram BOTTOM→TOP passing the filter."""
    try:
        found = enumerate_diagrams(bottom, top, filter_name)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    for p in found:
        click.echo(p.to_text())
    click.echo(f"{len(found)} diagrams")


@cli.command("gram")
@click.argument("n", type=int)
@click.argument("k", type=int)
@click.option("--form", type=click.Choice(numeric.FORMS), default="orth")
@click.option("--s0", type=float, default=math.sqrt(2), help="Value of s, so delta = s0^2")
@click.option("--export", "export_path", type=click.Path(), help="Write the matrix to CSV")
def gram_command(n, k, form, s0, export_path):
    """Print a Gram matrix at s = s0 and its smallest eigenvalue."""
    try:
        g = numeric.gram(n, k, form, s0)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    df = g.to_frame()
    if export_path:
        df.to_csv(export_path)
        click.echo(f"Exported to {export_path}")
    else:
        click.echo(df.to_string())
    click.echo(f"delta = {g.delta:.6g}, min eigenvalue = {numeric.min_eigenvalue(g):.6g}")


@cli.command("history")
@click.option("--suite", default=None, help="Only this suite")
@click.option("--export", "export_path", type=click.Path(), help="Write results to CSV path")
@click.option("--max", "max_rows", default="20", help="Use 'all' or an integer")
def history(suite, export_path, max_rows):
    """Show stored verification reports, newest first."""
    if str(max_rows).lower() == "all":
        limit = None
    else:
        try:
            limit = int(max_rows)
        except ValueError:
            raise click.UsageError(f"--max takes an integer or 'all', got {max_rows!r}")
    df = load_history(suite=suite, limit=limit)
    click.echo(f"Found {len(df)} stored reports")
    if df.empty:
        return
    if export_path:
        df.to_csv(export_path, index=False)
        click.echo(f"Exported to {export_path}")
    else:
        for _, r in df.iterrows():
            status = "PASS" if r["passed"] else "FAIL"
            click.echo(f"{r['id']}\t{r['suite']}\t{status}\t{r['cases']} cases\t{json.dumps(r['params'], sort_keys=True)}")


if __name__ == "__main__":
    cli()
