"""Command-line front end: parse inputs, run analyses, emit reports.

Input documents are JSON with a ``field`` of the form {"type": "Fp", "p": p}
or {"type": "Q"}, and exactly one of

* ``order``:  {"cycles": [n_1, ...], "partition": [[global node ids], ...]}
* ``quiver``: {"vertices": [{"id": i, "weight": d}, ...],
               "arrows": [{"src": i, "dst": j, "val": [a, b]}, ...]}

Structured output is JSON, graphs are DOT, batch summaries are CSV; all
output is UTF-8 and byte-deterministic for a fixed input and seed. Exit
codes: 0 success, 1 invalid input, 2 internal invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from .classify import classify, classify_quiver
from .errors import (
    InternalInvariantError,
    InvalidOrderError,
    InvalidQuiverError,
    NotSemisimpleError,
)
from .linalg import GroundField
from .orders import BackstromOrder
from .oracle import cross_check_dsg, cross_check_syzygy, random_order
from .singularity import hom_table, quiver_dynamics, v_lambda
from .species import ValuedArrow, ValuedQuiver, count_indec_cm, build_h
from .syzygy import StableObject, build_a_lambda, j_prime, syzygy

EXIT_OK = 0
EXIT_INVALID_INPUT = 1
EXIT_INTERNAL = 2


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_INVALID_INPUT) -> None:
        super().__init__(message)
        self.code = code


Document = Tuple[str, Union[BackstromOrder, ValuedQuiver]]


def _parse_field(data: Dict) -> GroundField:
    if not isinstance(data, dict) or "type" not in data:
        raise CliError("field must be an object with a 'type' key")
    if data["type"] == "Fp":
        if "p" not in data:
            raise CliError("field of type Fp needs a prime 'p'")
        try:
            return GroundField.prime(int(data["p"]))
        except ValueError as exc:
            raise CliError(str(exc)) from exc
    if data["type"] == "Q":
        return GroundField.rationals()
    raise CliError(f"unknown field type {data['type']!r}")


def parse_document(text: str) -> Document:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(f"not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise CliError("input document must be a JSON object")
    field = _parse_field(data.get("field", {"type": "Q"}))
    has_order = "order" in data
    has_quiver = "quiver" in data
    if has_order == has_quiver:
        raise CliError("exactly one of 'order' and 'quiver' must be present")
    if has_order:
        spec = data["order"]
        if not isinstance(spec, dict) or "cycles" not in spec or "partition" not in spec:
            raise CliError("'order' needs 'cycles' and 'partition'")
        order = BackstromOrder.of(field, spec["cycles"], spec["partition"])
        violations = order.violations()
        if violations:
            raise CliError(
                "invalid order: " + "; ".join(f"{v.code}: {v.detail}" for v in violations)
            )
        return "order", order
    spec = data["quiver"]
    if not isinstance(spec, dict) or "vertices" not in spec or "arrows" not in spec:
        raise CliError("'quiver' needs 'vertices' and 'arrows'")
    try:
        vertices = tuple(int(v["id"]) for v in spec["vertices"])
        weights = {int(v["id"]): int(v.get("weight", 1)) for v in spec["vertices"]}
        arrows = tuple(
            ValuedArrow(
                int(a["src"]),
                int(a["dst"]),
                tuple(int(x) for x in a.get("val", [1, 1])),  # type: ignore[arg-type]
            )
            for a in spec["arrows"]
        )
        quiver = ValuedQuiver(vertices, weights, arrows)
    except (KeyError, TypeError, ValueError, InvalidQuiverError) as exc:
        raise CliError(f"invalid quiver: {exc}") from exc
    return "quiver", quiver


def load_document(path: Union[str, Path]) -> Document:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read {p}: {exc}") from exc
    return parse_document(text)


def _require_order(doc: Document, command: str) -> BackstromOrder:
    kind, payload = doc
    if kind != "order":
        raise CliError(f"command {command!r} needs an order input")
    return payload  # type: ignore[return-value]


def _json_out(data, stream) -> None:
    json.dump(data, stream, indent=2, sort_keys=True)
    stream.write("\n")


# ---------------------------------------------------------------------------
# DOT emission


def _dot_quiver(q: ValuedQuiver, name: str) -> str:
    lines = [f"digraph {name} {{"]
    for v in q.vertices:
        label = f"{v}" if q.weights[v] == 1 else f"{v} ({q.weights[v]})"
        lines.append(f'  "{v}" [label="{label}"];')
    for a in q.arrows:
        if a.valuation == (1, 1):
            lines.append(f'  "{a.src}" -> "{a.dst}";')
        else:
            lines.append(
                f'  "{a.src}" -> "{a.dst}" [label="({a.valuation[0]},{a.valuation[1]})"];'
            )
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dot_h_quiver(order: BackstromOrder) -> str:
    h = build_h(order)
    lines = ["digraph H {"]
    for v in range(len(h.parts)):
        lines.append(f'  "P{v + 1}";')
    for j in h.nodes:
        lines.append(f'  "Q{order.to_global(j)}";')
    for v, j in sorted(h.arrows, key=lambda a: (a[0], order.to_global(a[1]))):
        lines.append(f'  "P{v + 1}" -> "Q{order.to_global(j)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# per-command handlers


def _cmd_validate(args) -> int:
    try:
        load_document(args.input)
    except CliError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INVALID_INPUT
    print("ok")
    return EXIT_OK


def _report_payload(doc: Document) -> Dict:
    kind, payload = doc
    if kind == "order":
        report = classify(payload).as_dict()
        count = count_indec_cm(payload)
        report["indecomposable_cm_count"] = None if count == float("inf") else count
        report["j_prime"] = sorted(payload.to_global(j) for j in j_prime(payload))
    else:
        report = classify_quiver(payload).as_dict()
        report["indecomposable_cm_count"] = None
        report["j_prime"] = None
    return report


def _cmd_classify(args) -> int:
    doc = load_document(args.input)
    _json_out(_report_payload(doc), sys.stdout)
    return EXIT_OK


def _cmd_h_quiver(args) -> int:
    order = _require_order(load_document(args.input), "h-quiver")
    sys.stdout.write(_dot_h_quiver(order))
    return EXIT_OK


def _cmd_a_quiver(args) -> int:
    kind, payload = load_document(args.input)
    q = build_a_lambda(payload).quiver if kind == "order" else payload
    sys.stdout.write(_dot_quiver(q, "A"))
    return EXIT_OK


def _cmd_cm_count(args) -> int:
    order = _require_order(load_document(args.input), "cm-count")
    count = count_indec_cm(order)
    if count == float("inf"):
        _json_out({"finite": False, "count": None}, sys.stdout)
    else:
        _json_out({"finite": True, "count": count}, sys.stdout)
    return EXIT_OK


def _cmd_syzygy(args) -> int:
    order = _require_order(load_document(args.input), "syzygy")
    node = order.to_node(args.node)
    if order.is_lambda_projective(node):
        raise CliError(f"node {args.node} is projective over the glued order")
    levels = []
    x = StableObject.simple(node)
    for i in range(args.iterate + 1):
        levels.append(
            {
                "level": i,
                "multiplicities": {
                    str(order.to_global(j)): m
                    for j, m in x.multiplicities().items()
                },
            }
        )
        x = syzygy(order, x)
    _json_out({"node": args.node, "levels": levels}, sys.stdout)
    return EXIT_OK


def _hom_rows(doc: Document) -> List[Dict]:
    kind, payload = doc
    if kind == "order":
        table = hom_table(payload)
    else:
        table = quiver_dynamics(payload).hom_table()
    rows = []
    for (a, b) in sorted(table):
        h = table[(a, b)]
        rows.append(
            {
                "a": a,
                "b": b,
                "dim": "inf" if h.dim is None else h.dim,
                "level": "" if h.level is None else h.level,
            }
        )
    return rows


def _cmd_dsg_hom(args) -> int:
    doc = load_document(args.input)
    rows = _hom_rows(doc)
    if args.pair is not None:
        a, b = args.pair
        rows = [r for r in rows if r["a"] == a and r["b"] == b]
        if not rows:
            raise CliError(f"pair ({a}, {b}) is not in the stable vertex set")
    writer = csv.DictWriter(
        sys.stdout, fieldnames=["a", "b", "dim", "level"], lineterminator="\n"
    )
    writer.writeheader()
    writer.writerows(rows)
    return EXIT_OK


def _cmd_v_structure(args) -> int:
    kind, payload = load_document(args.input)
    try:
        if kind == "order":
            data = v_lambda(payload)
        else:
            raise CliError("command 'v-structure' needs an order input")
    except NotSemisimpleError as exc:
        _json_out({"semisimple": False, "witness": exc.witness}, sys.stdout)
        return EXIT_OK
    _json_out(
        {
            "semisimple": True,
            "blocks": [
                {"vertex": b.vertex, "multiplicity": b.multiplicity, "weight": b.weight}
                for b in data.blocks
            ],
            "suspension": {str(k): v for k, v in sorted(data.suspension.items())},
            "end_dim": data.end_dim,
        },
        sys.stdout,
    )
    return EXIT_OK


def _cmd_oracle_check(args) -> int:
    seed = args.seed
    env = os.environ.get("BACKSTROM_SEED")
    if env is not None:
        seed = int(env)
    rng = random.Random(seed)
    syzygy_bad = []
    dsg_bad = []
    for trial in range(args.trials):
        order = random_order(rng)
        for m in cross_check_syzygy(order):
            syzygy_bad.append({"trial": trial, "node": str(m.node)})
        for m in cross_check_dsg(order):
            dsg_bad.append({"trial": trial, "pair": list(m.pair), "detail": m.detail})
    ok = not syzygy_bad and not dsg_bad
    _json_out(
        {
            "trials": args.trials,
            "seed": seed,
            "syzygy_mismatches": syzygy_bad,
            "dsg_mismatches": dsg_bad,
            "ok": ok,
        },
        sys.stdout,
    )
    return EXIT_OK if ok else EXIT_INTERNAL


BATCH_COLUMNS = [
    "name",
    "kind",
    "stable_vertices",
    "hereditary",
    "finite_gldim",
    "gorenstein",
    "iwanaga_gorenstein",
    "sg_hom_finite",
    "finite_cm_type",
    "cm_count",
    "end_dim",
    "error",
]


def _bool_cell(value: Optional[bool]) -> str:
    return "" if value is None else str(value).lower()


def _batch_row(path: Path) -> Dict[str, str]:
    row = {c: "" for c in BATCH_COLUMNS}
    row["name"] = path.name
    try:
        kind, payload = load_document(path)
        row["kind"] = kind
        report = _report_payload((kind, payload))
        for key in (
            "hereditary",
            "finite_gldim",
            "gorenstein",
            "iwanaga_gorenstein",
            "sg_hom_finite",
            "finite_cm_type",
        ):
            row[key] = _bool_cell(report[key])
        if kind == "order":
            row["stable_vertices"] = str(len(report["j_prime"]))
            count = report["indecomposable_cm_count"]
            row["cm_count"] = "inf" if count is None else str(count)
            table = hom_table(payload)
        else:
            row["stable_vertices"] = str(len(payload.vertices))
            table = quiver_dynamics(payload).hom_table()
        dims = [h.dim for h in table.values()]
        row["end_dim"] = "inf" if any(d is None for d in dims) else str(sum(dims))
    except (CliError, InvalidOrderError, InvalidQuiverError) as exc:
        row["error"] = str(exc)
    return row


def _cmd_batch(args) -> int:
    directory = Path(args.directory)
    if not directory.is_dir():
        raise CliError(f"not a directory: {directory}")
    paths = sorted(directory.glob("*.json"), key=lambda p: p.name)
    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        rows = list(pool.map(_batch_row, paths))
    rows.sort(key=lambda r: r["name"])
    writer = csv.DictWriter(sys.stdout, fieldnames=BATCH_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return EXIT_INVALID_INPUT if any(r["error"] for r in rows) else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="backstrom",
        description="Analyze glued orders and radical-square-zero quivers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check an input document")
    p.add_argument("input")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("classify", help="full classification report as JSON")
    p.add_argument("input")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("h-quiver", help="DOT graph of the bipartite shape quiver")
    p.add_argument("input")
    p.add_argument("--dot", action="store_true", default=True)
    p.set_defaults(func=_cmd_h_quiver)

    p = sub.add_parser("a-quiver", help="DOT graph of the trivial-extension quiver")
    p.add_argument("input")
    p.add_argument("--dot", action="store_true", default=True)
    p.set_defaults(func=_cmd_a_quiver)

    p = sub.add_parser("cm-count", help="number of indecomposable CM modules")
    p.add_argument("input")
    p.set_defaults(func=_cmd_cm_count)

    p = sub.add_parser("syzygy", help="iterated stable syzygies of one node")
    p.add_argument("input")
    p.add_argument("--node", type=int, required=True)
    p.add_argument("--iterate", type=int, default=1)
    p.set_defaults(func=_cmd_syzygy)

    p = sub.add_parser("dsg-hom", help="stable Hom dimension table as CSV")
    p.add_argument("input")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--all", action="store_true")
    group.add_argument("--pair", type=int, nargs=2, metavar=("A", "B"))
    p.set_defaults(func=_cmd_dsg_hom)

    p = sub.add_parser("v-structure", help="Wedderburn block data as JSON")
    p.add_argument("input")
    p.set_defaults(func=_cmd_v_structure)

    p = sub.add_parser("oracle-check", help="randomized cross checks, JSON verdict")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=200)
    p.set_defaults(func=_cmd_oracle_check)

    p = sub.add_parser("batch", help="CSV summary over a directory of inputs")
    p.add_argument("directory")
    p.add_argument("--jobs", type=int, default=4)
    p.set_defaults(func=_cmd_batch)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(str(exc), file=sys.stderr)
        return exc.code
    except (InvalidOrderError, InvalidQuiverError) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INVALID_INPUT
    except (InternalInvariantError, NotSemisimpleError) as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
