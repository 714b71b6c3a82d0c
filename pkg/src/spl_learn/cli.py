"""Command-line front end.

One subcommand per pipeline stage; stages talk through JSON files.

Exit codes: 0 success, 2 invalid input, 3 a learning stage failed
(coverage, fitting or convergence).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
from collections.abc import Sequence
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .basisselect import MODES, Selection, select_bases
from .clifford import classify_two_qubit, from_images, is_hermitian, standard_gate
from .coverarray import construct
from .layer import GATE_ARITY, Layer
from .learn import DEFAULT_DEPTHS, LearnConfig, LearningError, learn_end_to_end, parse_paulis, planted_model
from .model import ModelSpec, NoiseModel, generate_terms
from .pauli import format_pauli, parse

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_FAILED = 3

log = logging.getLogger("spl_learn")


class InputError(Exception):
    """Bad command-line input or configuration file."""


# ---------------------------------------------------------------------------
# Config handling


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _dumps(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def spec_from_config(cfg: dict, locality: int | None = None) -> ModelSpec:
    """Model spec from ``n`` plus ``edges`` (with ``locality``) or explicit ``supports``."""
    try:
        n = int(cfg["n"])
        if "supports" in cfg:
            return ModelSpec(n, tuple(tuple(int(q) for q in s) for s in cfg["supports"]))
        edges = [tuple(e) for e in cfg.get("edges", [])]
        return ModelSpec.from_edges(n, edges, locality or int(cfg.get("locality", 2)))
    except KeyError as exc:
        raise InputError(f"config is missing {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad topology: {exc}") from exc


def layer_from_config(cfg: dict) -> Layer:
    try:
        return Layer.from_json(int(cfg["n"]), cfg.get("layer", []))
    except KeyError as exc:
        raise InputError(f"config is missing {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad layer: {exc}") from exc


def crosstalk_from_config(cfg: dict) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(q) for q in s) for s in cfg.get("crosstalk", []))


def model_from_config(cfg: dict, spec: ModelSpec) -> NoiseModel:
    """Explicit ``model`` block, or a ``plant`` block drawing uniform rates."""
    if "model" in cfg:
        try:
            return NoiseModel.from_json(cfg["model"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad model: {exc}") from exc
    plant = cfg.get("plant", {})
    rng = np.random.default_rng(int(plant.get("seed", 0)))
    return planted_model(spec, rng, float(plant.get("low", 0.001)), float(plant.get("high", 0.02)))


# ---------------------------------------------------------------------------
# Reports


def classification_report(name: str, op) -> str:
    cls = classify_two_qubit(op)
    lines = [f"gate: {name}", f"class: {cls.class_id}",
             "roles: " + " ".join(f"{k}={v}" for k, v in cls.roles.items()),
             "", "Pauli  image  support"]
    for label, image in cls.support_map.items():
        before = tuple(i for i, ch in enumerate(label) if ch != "I")
        after = tuple(i for i, ch in enumerate(image.lstrip("+-")) if ch != "I")
        change = "kept" if before == after else f"{_support_name(before)} -> {_support_name(after)}"
        lines.append(f"{label:6} {image:6} {change}")
    return "\n".join(lines) + "\n"


def _support_name(s: tuple[int, ...]) -> str:
    return "{" + ",".join(str(q) for q in s) + "}"


def pipeline_trace(sel: Selection) -> str:
    """Graph, reduced graph, coloring, covering array and bases as plain text."""
    g, h, col, ca, bs = sel.graph, sel.reduced, sel.coloring, sel.ca, sel.bases

    def edges(graph) -> str:
        pairs = sorted(tuple(sorted(e)) for e in graph.edges)
        return " ".join(f"{_vname(graph, a)}-{_vname(graph, b)}" for a, b in pairs) or "(none)"

    lines = [f"mode: {bs.mode}", "", "learning graph",
             f"  vertices: {' '.join(_vname(g, i) for i in range(len(g.vertices)))}",
             f"  edges: {edges(g)}"]
    if h is not g:
        lines += ["", "reduced graph",
                  f"  vertices: {' '.join(f'{_vname(h, i)}[{h.symbols[i]}]' for i in range(len(h.vertices)))}",
                  f"  deleted: {' '.join(_support_name(v) for v in h.deleted) or '(none)'}",
                  f"  edges: {edges(h)}"]
    lines += ["", f"coloring: {col.kc} colors",
              "  " + " ".join(f"{_vname(h, i)}:{c}" for i, c in enumerate(col.colors))]
    lines += ["", f"covering array: CA({ca.N}; {ca.t}, {ca.k}, {ca.v}) from {ca.source}"]
    lines += ["  " + "".join(str(int(s)) for s in row) for row in ca.rows]
    lines += ["", f"bases ({len(bs.bases)}), symbols {bs.provenance['symbol_map']}, "
                  f"fill {bs.provenance['fill_letter']}"]
    lines += ["  " + b for b in bs.strings()]
    return "\n".join(lines) + "\n"


def _vname(g, i: int) -> str:
    return "".join(str(q) for q in g.vertices[i]) if len(g.vertices[i]) == 1 else _support_name(g.vertices[i])


def _digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _write_outputs(out: Path, files: dict[str, str], manifest_inputs: dict) -> None:
    out.mkdir(parents=True, exist_ok=True)
    digests = {}
    for name, text in files.items():
        data = text.encode()
        (out / name).write_bytes(data)
        digests[name] = _digest(data)
    manifest = dict(manifest_inputs)
    manifest["tool_version"] = __version__
    manifest["created"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    manifest["outputs"] = digests
    (out / "manifest.json").write_text(_dumps(manifest))


def _emit(text: str, out: str | None, name: str) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    (path / name).write_text(text)


# ---------------------------------------------------------------------------
# Commands


def cmd_classify(args: argparse.Namespace) -> int:
    target = args.gate
    if Path(target).is_file():
        data = _load_json(target)
        try:
            if "images" in data:
                op = from_images(data["images"])
                name = data.get("name", "custom")
            else:
                name = data["name"]
                op = standard_gate(name, list(range(GATE_ARITY[name])), GATE_ARITY[name])
        except (KeyError, ValueError) as exc:
            raise InputError(f"bad gate description: {exc}") from exc
    else:
        name = target.lower()
        if name not in GATE_ARITY:
            raise InputError(f"unknown gate {target!r}; known: {', '.join(sorted(GATE_ARITY))}")
        op = standard_gate(name, list(range(GATE_ARITY[name])), GATE_ARITY[name])
    if not is_hermitian(op):
        raise InputError(f"{name} is not Hermitian, so it cannot be learned by repetition")
    if op.n == 1:
        lines = [f"gate: {name}", "single-qubit Hermitian Clifford"]
        lines += [f"{L} -> {op.images[0 if L == 'X' else 1]}" for L in "XZ"]
        _emit("\n".join(lines) + "\n", args.out, "classify.txt")
        return EXIT_OK
    if op.n != 2:
        raise InputError("only one- and two-qubit gates can be classified")
    text = classification_report(name, op)
    if args.json:
        cls = classify_two_qubit(op)
        text = _dumps({"gate": name, "class": cls.class_id, "roles": cls.roles,
                       "images": dict(cls.support_map)})
    _emit(text, args.out, "classify.json" if args.json else "classify.txt")
    return EXIT_OK


def cmd_terms(args: argparse.Namespace) -> int:
    cfg = _load_json(args.config)
    spec = spec_from_config(cfg, args.locality)
    terms = [format_pauli(t) for t in generate_terms(spec)]
    _emit(_dumps({"n": spec.n, "locality": spec.locality, "supports": spec.to_json()["supports"],
                  "terms": terms}), args.out, "terms.json")
    return EXIT_OK


def cmd_select_bases(args: argparse.Namespace) -> int:
    cfg = _load_json(args.config)
    spec = spec_from_config(cfg, args.locality)
    layer = layer_from_config(cfg)
    try:
        sel = select_bases(spec, layer, args.mode, crosstalk_from_config(cfg), args.exact_color)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    data = sel.bases.to_json()
    data["graph"] = sel.graph.to_json()
    data["reduced"] = sel.reduced.to_json()
    if args.out is None:
        sys.stdout.write(pipeline_trace(sel) if args.trace else _dumps(data))
        return EXIT_OK
    _write_outputs(Path(args.out), {"bases.json": _dumps(data), "trace.txt": pipeline_trace(sel)},
                   {"command": "select-bases", "inputs": [args.config], "mode": args.mode,
                    "locality": spec.locality, "seed": None})
    return EXIT_OK


def cmd_coverarray(args: argparse.Namespace) -> int:
    try:
        ca = construct(args.t, args.k, args.v)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    _emit(ca.to_text(), args.out, f"ca_{args.t}_{args.k}_{args.v}.txt")
    return EXIT_OK


def cmd_learn(args: argparse.Namespace) -> int:
    cfg = _load_json(args.config)
    spec = spec_from_config(cfg, args.locality)
    layer = layer_from_config(cfg)
    model = model_from_config(cfg, spec)
    spam = cfg.get("spam", {})
    benchmark = tuple(parse_paulis(cfg["benchmark"])) if "benchmark" in cfg else None
    depths = tuple(args.depths) if args.depths else tuple(cfg.get("depths", DEFAULT_DEPTHS))
    try:
        config = LearnConfig(
            layer, spec, model, mode=args.mode, depths=depths,
            shots=args.shots if args.shots is not None else int(cfg.get("shots", 10_000)),
            exact=args.exact or bool(cfg.get("exact", False)),
            prep_flip=float(spam.get("prep", 0.0)), readout_flip=float(spam.get("readout", 0.0)),
            seed=args.seed, crosstalk=crosstalk_from_config(cfg), benchmark=benchmark,
        )
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    result = learn_end_to_end(config)
    rank = result.fit.rank
    if not rank.full_rank:
        print(f"warning: design matrix rank {rank.rank} of {rank.columns} ({rank.reason})", file=sys.stderr)
    files = {
        "results.json": result.dumps(),
        "decay.csv": result.decay_csv(),
        "trace.txt": pipeline_trace(result.selection),
    }
    if args.out is None:
        sys.stdout.write(files["results.json"])
    else:
        _write_outputs(Path(args.out), files, {
            "command": "learn", "inputs": [args.config], "mode": args.mode, "seed": args.seed,
            "locality": spec.locality, "depths": list(depths), "shots": None if config.is_exact else config.shots,
            "exact": config.is_exact,
        })
    print(f"residual {result.fit.residual:.3e}, max benchmark error "
          f"{result.diagnostics['max_benchmark_error']:.3e}", file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Entry point


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="spl-learn", description="Learn sparse Pauli-Lindblad noise of Clifford layers.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("-v", "--verbose", action="store_true", help="log warnings from the pipeline")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify a Hermitian one- or two-qubit Clifford")
    p.add_argument("gate", help="gate name (cz, cx, swap, ...) or a JSON file with 'name' or 'images'")
    p.add_argument("--json", action="store_true", help="print JSON instead of a table")
    p.add_argument("--out", help="output directory")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("terms", help="list the model terms of a topology")
    p.add_argument("config")
    p.add_argument("--locality", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_terms)

    p = sub.add_parser("select-bases", help="choose learning bases for a layer")
    p.add_argument("config")
    p.add_argument("--mode", choices=MODES, default="pauli")
    p.add_argument("--locality", type=int)
    p.add_argument("--exact-color", action="store_true", help="exact coloring instead of DSATUR")
    p.add_argument("--trace", action="store_true", help="print the pipeline trace instead of JSON")
    p.add_argument("--out")
    p.set_defaults(func=cmd_select_bases)

    p = sub.add_parser("coverarray", help="print a verified covering array")
    p.add_argument("t", type=int)
    p.add_argument("k", type=int)
    p.add_argument("v", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_coverarray)

    p = sub.add_parser("learn", help="simulate learning circuits and fit the model")
    p.add_argument("config")
    p.add_argument("--mode", choices=MODES, default="pauli")
    p.add_argument("--locality", type=int)
    p.add_argument("--depths", type=int, nargs="+")
    p.add_argument("--shots", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exact", action="store_true", help="exact expectations instead of sampling")
    p.add_argument("--out")
    p.set_defaults(func=cmd_learn)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING if args.verbose else logging.ERROR, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except LearningError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
