"""Command-line front end: ``gentle-deq <subcommand> ...``.

Exit codes: 0 for success or an equivalent verdict, 1 for an inequivalent
verdict (or a negative answer from ``validate``/``tilt``), 2 for usage and
domain errors.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from .curves import CurveError
from .decision import (
    InvariantRecord,
    NotGentleError,
    ag_invariant,
    compare_records,
    compute_invariants,
    partition,
)
from .homology import DEFAULT_BUDGET, SearchBudgetExhausted
from .presentation import GentlePresentation, PresentationError, parse_presentation, validate_gentle
from .ribbon import RibbonError
from .surface import (
    DissectedSurface,
    DissectionError,
    build_dissected_surface,
    compute_shape,
    parse_dissection,
    regions,
)
from .surface_cut import (
    CutTriangulation,
    TriangulationError,
    cut_algebra,
    cut_equivalent,
    cut_invariants,
    parse_triangulation,
)
from .tilting import (
    GradedDissection,
    GradingObstruction,
    check_dissection,
    parse_candidates,
    silting_verdict,
    synthesize_grading,
)

SCHEMA = 1
log = logging.getLogger("gentle_deq")

DOMAIN_ERRORS = (
    PresentationError, DissectionError, NotGentleError, SearchBudgetExhausted,
    TriangulationError, CurveError, RibbonError, OSError,
)


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    inputs: tuple[str, ...]
    output_format: str = "json"
    budget: int = DEFAULT_BUDGET
    seed: Optional[int] = None


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _first_keyword(text: str) -> str:
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            return line.split()[0]
    return ""


def load_any(path: str):
    """Load a presentation, a dissection or a triangulation by its first keyword."""
    text = _read(path)
    if _first_keyword(text) == "surface":
        if any(_first_keyword(line) == "triangle" for line in text.splitlines()):
            return parse_triangulation(text)
        return parse_dissection(text)
    return parse_presentation(text)


def load_surface(path: str) -> DissectedSurface:
    obj = load_any(path)
    if isinstance(obj, GentlePresentation):
        kind = validate_gentle(obj)
        if kind.kind == "invalid":
            raise NotGentleError(f"{obj.name}: {kind}")
        return build_dissected_surface(obj)
    if isinstance(obj, CutTriangulation):
        raise DissectionError(f"{path} is a triangulation, not a dissection")
    return obj


def load_algebra(path: str) -> GentlePresentation:
    obj = load_any(path)
    if isinstance(obj, GentlePresentation):
        return obj
    if isinstance(obj, CutTriangulation):
        return cut_algebra(obj)
    from .surface import algebra_of_dissection
    return algebra_of_dissection(obj)


def _emit(payload: dict, config: RunConfig, out) -> None:
    if config.output_format == "json":
        body = {"schema": SCHEMA, "command": config.subcommand, **payload}
        out.write(json.dumps(body, sort_keys=True, indent=2) + "\n")
        return
    for key in sorted(payload):
        value = payload[key]
        if isinstance(value, (dict, list)):
            value = json.dumps(value, sort_keys=True)
        out.write(f"{key}: {value}\n")


def _record_payload(path: str, record: InvariantRecord) -> dict:
    return {"input": path, "record": record.to_json()}


def cmd_validate(config: RunConfig, out) -> int:
    p = parse_presentation(_read(config.inputs[0]))
    kind = validate_gentle(p)
    _emit({"input": config.inputs[0], "classification": kind.kind, "reason": kind.reason}, config, out)
    return 0 if kind.is_gentle else 1


def cmd_surface(config: RunConfig, out) -> int:
    d = load_surface(config.inputs[0])
    shape = compute_shape(d)
    rs = regions(d)
    _emit({
        "input": config.inputs[0],
        "shape": shape.to_json(),
        "arcs": len(d.arcs),
        "fans": [{"interior": inner, "ends": [f"{a}.{e}" for a, e in fan]}
                 for fan, inner in zip(d.fans, d.interior)],
        "regions": {"boundary": sum(r.kind == 1 for r in rs), "puncture": sum(r.kind == 2 for r in rs)},
        "dissection": d.to_text(),
    }, config, out)
    return 0


def cmd_invariants(config: RunConfig, out) -> int:
    obj = load_any(config.inputs[0])
    if isinstance(obj, CutTriangulation):
        record = cut_invariants(obj, config.budget, config.seed)
    else:
        record = compute_invariants(load_algebra(config.inputs[0]), config.budget, config.seed)
    _emit(_record_payload(config.inputs[0], record), config, out)
    return 0


def cmd_ag(config: RunConfig, out) -> int:
    pairs = ag_invariant(load_algebra(config.inputs[0]))
    _emit({"input": config.inputs[0], "ag": [list(p) for p in pairs]}, config, out)
    return 0


def cmd_compare(config: RunConfig, out) -> int:
    a, b = (compute_invariants(load_algebra(p), config.budget, config.seed) for p in config.inputs)
    verdict = compare_records(a, b)
    _emit({"inputs": list(config.inputs), **verdict.to_json(),
           "records": [a.to_json(), b.to_json()]}, config, out)
    return 0 if verdict.equivalent else 1


def cmd_cut_compare(config: RunConfig, out) -> int:
    t1, t2 = (parse_triangulation(_read(p)) for p in config.inputs)
    verdict = cut_equivalent(t1, t2, config.budget, config.seed)
    _emit({"inputs": list(config.inputs), **verdict.to_json()}, config, out)
    return 0 if verdict.equivalent else 1


def cmd_tilt(config: RunConfig, out) -> int:
    d = load_surface(config.inputs[0])
    arcs, gradings = parse_candidates(d, _read(config.inputs[1]))
    check = check_dissection(d, arcs)
    payload: dict = {"inputs": list(config.inputs), "admissible": check.admissible}
    if not check.admissible:
        payload.update(reason=check.reason, witness=list(check.witness))
        _emit(payload, config, out)
        return 1
    if gradings is None:
        try:
            graded = synthesize_grading(d, arcs)
        except GradingObstruction as exc:
            payload.update(obstruction={"cycle": [[i + 1, s] for i, s in exc.cycle],
                                        "mismatch": exc.mismatch})
            _emit(payload, config, out)
            return 1
        payload["synthesized"] = True
    else:
        graded = GradedDissection(tuple(arcs), tuple(gradings))
        payload["synthesized"] = False
    verdict = silting_verdict(d, graded)
    payload.update(gradings=list(graded.gradings), **verdict.to_json())
    _emit(payload, config, out)
    return 0 if verdict.kind != "not-silting" else 1


def _manifest_entries(path: str) -> list[str]:
    base = Path(path).parent
    entries = []
    for raw in _read(path).splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            entries.append(str(base / line))
    return entries


def cmd_batch(config: RunConfig, out) -> int:
    entries = _manifest_entries(config.inputs[0])
    keys = []
    rows = []
    for entry in entries:
        obj = load_any(entry)
        if isinstance(obj, CutTriangulation):
            record, kind = cut_invariants(obj, config.budget, config.seed), "triangulation"
        else:
            record, kind = compute_invariants(load_algebra(entry), config.budget, config.seed), "algebra"
        keys.append((kind, record))
        rows.append({"input": entry, "kind": kind, "record": record.to_json()})
    classes = partition(keys)  # type: ignore[arg-type]
    _emit({"manifest": config.inputs[0], "entries": rows,
           "classes": [[entries[i] for i in c] for c in classes]}, config, out)
    return 0


COMMANDS = {
    "validate": (cmd_validate, 1),
    "surface": (cmd_surface, 1),
    "invariants": (cmd_invariants, 1),
    "ag": (cmd_ag, 1),
    "compare": (cmd_compare, 2),
    "tilt": (cmd_tilt, 2),
    "cut-compare": (cmd_cut_compare, 2),
    "batch": (cmd_batch, 1),
}


USAGE_NOTES = """\
subcommands:
  validate FILE.alg          classify as gentle, infinite or invalid
  surface FILE               marked surface, arcs, fans and regions
  invariants FILE            complete invariant record (.alg, .dis or .tri)
  ag FILE                    AG invariant
  compare A B                derived equivalence verdict with the deciding clause
  cut-compare A.tri B.tri    same for two cut triangulations
  tilt SURFACE CANDIDATES    admissibility, grading and silting verdict
  batch MANIFEST             invariants and classes for every listed file

exit codes: 0 success or equivalent, 1 negative verdict, 2 usage or input error
"""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gentle-deq",
                                     description="Derived equivalence of gentle algebras.",
                                     epilog=USAGE_NOTES,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="spliced curves tried when searching a genus-one symplectic pair")
    parser.add_argument("--seed", type=int, default=None, help="seed for spanning-tree choices")
    parser.add_argument("--format", choices=("json", "table"), default="json", dest="output_format",
                        help="output style (default json)")
    parser.add_argument("subcommand", choices=sorted(COMMANDS))
    parser.add_argument("inputs", nargs="+")
    return parser


def parse_config(argv: Sequence[str]) -> RunConfig:
    parser = build_parser()
    ns = parser.parse_args(list(argv))
    _, arity = COMMANDS[ns.subcommand]
    if len(ns.inputs) != arity:
        parser.error(f"{ns.subcommand} takes {arity} input file(s)")
    if ns.budget < 1:
        parser.error("--budget must be at least 1")
    return RunConfig(ns.subcommand, tuple(ns.inputs), ns.output_format, ns.budget, ns.seed)


def run(argv: Sequence[str], out=None) -> int:
    out = out or sys.stdout
    level = os.environ.get("GENTLE_DEQ_LOG")
    if level:
        logging.basicConfig(level=level.upper(), stream=sys.stderr)
        # basicConfig is a no-op when the root logger is already configured
        logging.getLogger("gentle_deq").setLevel(level.upper())
    try:
        config = parse_config(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    handler, _ = COMMANDS[config.subcommand]
    try:
        return handler(config, out)
    except DOMAIN_ERRORS as exc:
        log.debug("domain error", exc_info=True)
        print(f"gentle-deq: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
