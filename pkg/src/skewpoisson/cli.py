"""Command-line driver.

Subcommands::

    group        order, conjugacy classes, centralizers, symplecticity
    invariants   generator invariance, Molien vs generator spans, relations
    bracket      Poisson bracket of two polynomial expressions
    project      class projections of an ad-hoc skew element
    obstruction  the full counterexample pipeline on a scenario
    selftest     the deterministic property suites

Every command reads a scenario config (``--config PATH``; default is the
bundled counterexample) and renders a report as plain text or as canonical
JSON (``--format machine``), which is byte-identical across runs for a
fixed config and version.

Exit codes: 0 when the command decided what it set out to decide (an
obstruction verdict of feasible or infeasible-at-all-degrees counts as
decided), 1 when an obstruction run stays inconclusive beyond its degree
bound, 2 for configuration problems, 3 for internal invariant violations.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional

from ._version import __version__
from .config import ConfigError, ScenarioConfig
from .groups import is_symplectic
from .invariants import is_invariant, verify_generators, verify_relations
from .obstruction import run_counterexample
from .parse import PolyParseError
from .poly import format_poly, poisson_bracket
from .report import Report, STATUS_ERROR, STATUS_FINDING, STATUS_OK
from .selftest import DEFAULT_SEED, run_selftest, suite_names
from .skew import SkewElement, trace_vector

EXIT_OK = 0
EXIT_INCONCLUSIVE = 1
EXIT_CONFIG = 2
EXIT_INTERNAL = 3


def _load_config(args) -> ScenarioConfig:
    if args.config:
        return ScenarioConfig.from_file(args.config)
    return ScenarioConfig.bundled()


# ----------------------------------------------------------------------
# subcommand implementations


def cmd_group(config: ScenarioConfig) -> Report:
    report = Report(command="group", version=__version__)
    form = config.build_form()
    group = config.build_group()
    report.add("group", STATUS_OK, {
        "order": group.order,
        "dimension": group.dim,
        "generators": list(group.generator_names),
        "elements": [{"index": g.index, "word": g.word} for g in group.elements],
    })
    class_rows = [
        {
            "class": cls.index,
            "representative": group.elements[cls.representative].word,
            "size": cls.size,
            "members": ", ".join(group.elements[m].word for m in cls.members),
            "centralizer_order": len(cls.centralizer),
        }
        for cls in group.classes
    ]
    report.add("classes", STATUS_OK, {"count": len(group.classes),
                                      "classes": class_rows})
    flags = [
        {"element": g.word, "symplectic": is_symplectic(g, form)}
        for g in group.elements
    ]
    all_symp = all(f["symplectic"] for f in flags)
    report.add("symplectic", STATUS_OK if all_symp else STATUS_FINDING, {
        "all_symplectic": all_symp,
        "elements": flags,
    })
    report.verdict = (
        f"order {group.order}; {len(group.classes)} conjugacy classes; "
        + ("all elements symplectic" if all_symp else "NON-SYMPLECTIC elements present")
    )
    return report


def cmd_invariants(config: ScenarioConfig, up_to_degree: int = 8) -> Report:
    report = Report(command="invariants", version=__version__)
    group = config.build_group()
    gens = config.build_generator_set()
    rows = [
        {"name": n, "degree": p.total_degree(),
         "invariant": is_invariant(group, p, exhaustive=True)}
        for n, p in zip(gens.names, gens.polys)
    ]
    all_inv = all(r["invariant"] for r in rows)
    report.add("invariance", STATUS_OK if all_inv else STATUS_FINDING, {
        "all_invariant": all_inv,
        "generators": rows,
    })
    if all_inv:
        span = verify_generators(group, gens, up_to_degree)
        degree_rows = [
            {
                "degree": r.degree,
                "molien": r.molien,
                "invariant_slice": r.slice_dim,
                "generator_span": r.span_dim,
                "deficient": r.deficient,
            }
            for r in span.rows
        ]
        status = STATUS_OK if span.complete else STATUS_FINDING
        report.add("molien", status, {
            "degrees": degree_rows,
            "deficient_degrees": list(span.deficient_degrees),
        })
        span_note = (
            "generator spans fill every degree"
            if span.complete
            else f"deficient at degrees {list(span.deficient_degrees)}"
        )
    else:
        report.add("molien", STATUS_FINDING,
                   {"skipped": "generator set is not invariant"})
        span_note = "span comparison skipped"
    if config.relation_set:
        rels = config.build_relation_set()
        rel_report = verify_relations(gens, rels)
        rel_rows = [
            {"name": n, "zero": r.is_zero, "residual": format_poly(r)}
            for n, r in zip(rel_report.names, rel_report.residuals)
        ]
        status = STATUS_OK if rel_report.all_zero else STATUS_FINDING
        nonzero = len(rel_report.nonzero)
        report.add("relations", status, {"relations": rel_rows,
                                         "nonzero_residuals": nonzero})
        rel_note = ("all relation residuals vanish" if rel_report.all_zero
                    else f"{nonzero} relation(s) with NONZERO residual")
    else:
        report.add("relations", STATUS_OK, {"relations": [],
                                            "nonzero_residuals": 0})
        rel_note = "no relations configured"
    inv_note = ("all generators invariant" if all_inv
                else "NON-INVARIANT generators present")
    report.verdict = f"{inv_note}; {span_note}; {rel_note}"
    return report


def cmd_bracket(config: ScenarioConfig, first: str, second: str) -> Report:
    report = Report(command="bracket", version=__version__)
    form = config.build_form()
    p = config.polynomial_or_inline(first)
    q = config.polynomial_or_inline(second)
    result = poisson_bracket(p, q, form)
    report.add("bracket", STATUS_OK, {
        "first": format_poly(p),
        "second": format_poly(q),
        "bracket": format_poly(result),
    })
    report.verdict = format_poly(result)
    return report


def cmd_project(config: ScenarioConfig, parts: list,
                class_index: Optional[int] = None) -> Report:
    report = Report(command="project", version=__version__)
    group = config.build_group()
    assembled = {}
    for item in parts:
        word, sep, text = item.partition(":")
        if not sep:
            raise ConfigError("--part", f"expected WORD:POLY, got {item!r}")
        word = word.strip()
        if word.isdigit() and int(word) != 1:
            idx = group.element_index(int(word))
        else:
            idx = group.element_from_word(word).index
        poly = config.polynomial_or_inline(text.strip())
        assembled[idx] = assembled.get(idx, poly * 0) + poly
    element = SkewElement(group, assembled)
    vector = trace_vector(element)
    if class_index is not None:
        if not 0 <= class_index < len(group.classes):
            raise ConfigError("--class-index",
                              f"must be in 0..{len(group.classes) - 1}")
        wanted = [class_index]
    else:
        wanted = list(range(len(group.classes)))
    rows = [
        {
            "class": i,
            "representative": group.elements[group.classes[i].representative].word,
            "projection": format_poly(vector.component(i)),
        }
        for i in wanted
    ]
    report.add("projection", STATUS_OK, {
        "element": [
            {"element": group.elements[i].word, "poly": format_poly(p)}
            for i, p in element.parts()
        ],
        "components": rows,
        "trace_vector_valid": vector.validate(),
    })
    report.verdict = "; ".join(
        f"class {r['class']}: {r['projection']}" for r in rows
    )
    return report


def cmd_obstruction(config: ScenarioConfig, degree: Optional[int] = None,
                    psi: Optional[list] = None) -> Report:
    ladder = list(range(degree + 1)) if degree is not None else None
    return run_counterexample(config, degree_ladder=ladder, psi_names=psi)


def cmd_selftest(seed: int, corrupt: Optional[str] = None,
                 only: Optional[list] = None) -> Report:
    report = Report(command="selftest", version=__version__)
    if only:
        unknown = sorted(set(only) - set(suite_names()))
        if unknown:
            raise ConfigError("--suite", f"unknown suites: {unknown}")
    results = run_selftest(seed=seed, corrupt=corrupt, only=only)
    failures = 0
    for res in results:
        payload = {"cases": res.cases, "failures": res.failures}
        if res.detail:
            payload["first_failure"] = res.detail
        report.add(res.name, STATUS_OK if res.passed else STATUS_FINDING, payload)
        failures += res.failures
    total = sum(res.cases for res in results)
    report.verdict = (
        f"{len(results)} suites, {total} cases, {failures} failures (seed {seed})"
    )
    return report


# ----------------------------------------------------------------------
# argument parsing and dispatch


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skewpoisson",
        description="Exact computations in skew group algebras of finite "
                    "symplectic matrix groups.",
    )
    parser.add_argument("--version", action="version",
                        version=f"skewpoisson {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", metavar="PATH",
                        help="scenario config JSON (default: bundled counterexample)")
        sp.add_argument("--format", choices=("text", "machine"), default="text",
                        help="report rendering (default: text)")

    sp = sub.add_parser("group", help="group order, classes, centralizers, symplecticity")
    common(sp)

    sp = sub.add_parser("invariants",
                        help="generator invariance, Molien comparison, relation residuals")
    common(sp)
    sp.add_argument("--degree", type=int, default=8, metavar="D",
                    help="verify generator spans up to this degree (default 8)")

    sp = sub.add_parser("bracket", help="Poisson bracket of two polynomials")
    common(sp)
    sp.add_argument("first", help="polynomial expression or configured name")
    sp.add_argument("second", help="polynomial expression or configured name")

    sp = sub.add_parser("project", help="class projections of a skew element")
    common(sp)
    sp.add_argument("--part", action="append", required=True, metavar="WORD:POLY",
                    help="one group-algebra term, e.g. 'b:2*x1^2' (repeatable)")
    sp.add_argument("--class-index", type=int, default=None, metavar="I",
                    help="project onto one class only (default: all)")

    sp = sub.add_parser("obstruction", help="run the counterexample pipeline")
    common(sp)
    sp.add_argument("--degree", type=int, default=None, metavar="D",
                    help="replace the configured ladder with degrees 0..D")
    sp.add_argument("--psi", action="append", default=None, metavar="NAME",
                    help="sweep these polynomials instead of the configured one "
                         "(repeatable)")

    sp = sub.add_parser("selftest", help="run the deterministic property suites")
    sp.add_argument("--format", choices=("text", "machine"), default="text")
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED,
                    help=f"base seed for all suites (default {DEFAULT_SEED})")
    sp.add_argument("--corrupt", choices=("mul-table",), default=None,
                    help="diagnostic hook: sabotage an internal table and watch "
                         "the suites catch it")
    sp.add_argument("--suite", action="append", default=None, metavar="NAME",
                    help="run only the named suites (repeatable)")
    return parser


def _error_report(command: str, message: str, kind: str) -> Report:
    report = Report(command=command, version=__version__)
    report.add("config", STATUS_ERROR, {"message": message, "kind": kind})
    report.verdict = f"error: {message}"
    return report


def _obstruction_exit(report: Report) -> int:
    if report.has_errors():
        return EXIT_INTERNAL if report.error_kind() == "internal" else EXIT_CONFIG
    verdicts = [
        stage.payload.get("verdict")
        for stage in report.stages
        if stage.name.endswith(":certificate")
    ]
    if any(v == "INFEASIBLE_AT_DEGREE" for v in verdicts):
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    command = args.command
    try:
        if command == "selftest":
            report = cmd_selftest(args.seed, corrupt=args.corrupt, only=args.suite)
        else:
            config = _load_config(args)
            if command == "group":
                report = cmd_group(config)
            elif command == "invariants":
                if args.degree < 0:
                    raise ConfigError("--degree", "must be non-negative")
                report = cmd_invariants(config, up_to_degree=args.degree)
            elif command == "bracket":
                report = cmd_bracket(config, args.first, args.second)
            elif command == "project":
                report = cmd_project(config, args.part, args.class_index)
            elif command == "obstruction":
                if args.degree is not None and args.degree < 0:
                    raise ConfigError("--degree", "must be non-negative")
                report = cmd_obstruction(config, degree=args.degree, psi=args.psi)
            else:  # pragma: no cover - argparse enforces the choices
                raise RuntimeError(f"unhandled command {command!r}")
    except (ConfigError, PolyParseError) as exc:
        report = _error_report(command, str(exc), "config")
        sys.stdout.write(report.to_machine() if getattr(args, "format", "text") == "machine"
                         else report.to_text())
        return EXIT_CONFIG
    except ValueError as exc:
        report = _error_report(command, str(exc), "config")
        sys.stdout.write(report.to_machine() if getattr(args, "format", "text") == "machine"
                         else report.to_text())
        return EXIT_CONFIG
    except RuntimeError as exc:
        report = _error_report(command, str(exc), "internal")
        sys.stdout.write(report.to_machine() if getattr(args, "format", "text") == "machine"
                         else report.to_text())
        return EXIT_INTERNAL

    sys.stdout.write(report.to_machine() if args.format == "machine" else report.to_text())

    if command == "obstruction":
        return _obstruction_exit(report)
    if command == "selftest":
        return EXIT_OK if all(s.status == STATUS_OK for s in report.stages) else EXIT_INTERNAL
    if report.has_errors():
        return EXIT_INTERNAL if report.error_kind() == "internal" else EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
