"""Choosing learning bases with graph coloring and covering arrays.

Vertices are qubits; every model support set (and every presumed crosstalk
set) becomes a clique.  In rotation mode the two qubits of each two-qubit
gate merge into one vertex, which carries two symbols for classes 3/4
(bases ``CD`` and ``AF`` on the gate) and one symbol otherwise.  One-symbol
vertices are deleted and their qubits measured in a fixed letter.  A proper
coloring assigns each vertex a column of a covering array ``CA(t, kc, v)``
and each row of the array becomes one basis.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

import numpy as np

from .clifford import conjugate
from .coverarray import CoveringArray, construct, full_factorial
from .layer import Layer
from .model import ModelSpec, generate_terms
from .pauli import PauliString, format_pauli, is_subpattern, parse
from .twirl import LayerTwirl, layer_correction

FILL_LETTER = "Z"
PLAIN_LETTERS = "XYZ"
MODES = ("pauli", "rotation")


@dataclass(frozen=True)
class LearningGraph:
    """Vertices are tuples of qubits; ``edges`` holds index pairs ``(i, j)`` with ``i < j``."""

    n: int
    vertices: tuple[tuple[int, ...], ...]
    symbols: tuple[int, ...]
    edges: frozenset[tuple[int, int]]
    deleted: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self) -> None:
        if len(self.symbols) != len(self.vertices):
            raise ValueError("one symbol count per vertex")
        for i, j in self.edges:
            if not (0 <= i < j < len(self.vertices)):
                raise ValueError(f"bad edge {(i, j)}")

    def neighbors(self, i: int) -> set[int]:
        return {b if a == i else a for a, b in self.edges if i in (a, b)}

    def degree(self, i: int) -> int:
        return sum(1 for e in self.edges if i in e)

    def vertex_of(self, qubit: int) -> int | None:
        for i, v in enumerate(self.vertices):
            if qubit in v:
                return i
        return None

    def to_json(self) -> dict:
        return {
            "vertices": [list(v) for v in self.vertices],
            "symbols": list(self.symbols),
            "edges": sorted([list(e) for e in self.edges]),
            "deleted": [list(v) for v in self.deleted],
        }


def _clique_edges(groups: Iterable[Sequence[int]]) -> set[tuple[int, int]]:
    edges = set()
    for g in groups:
        for a, b in itertools.combinations(sorted(set(g)), 2):
            edges.add((a, b))
    return edges


def build_graph(spec: ModelSpec, crosstalk: Iterable[Sequence[int]] = ()) -> LearningGraph:
    """Qubit graph with a clique on every support set and crosstalk set."""
    groups = [tuple(s) for s in spec.supports]
    for s in crosstalk:
        s = tuple(int(q) for q in s)
        if any(q < 0 or q >= spec.n for q in s):
            raise ValueError(f"crosstalk set {s} out of range for {spec.n} qubits")
        groups.append(s)
    vertices = tuple((q,) for q in range(spec.n))
    return LearningGraph(spec.n, vertices, (3,) * spec.n, frozenset(_clique_edges(groups)))


def reduce_graph(g: LearningGraph, layer: Layer) -> LearningGraph:
    """Merge the qubits of each two-qubit gate and delete one-symbol vertices."""
    if layer.n != g.n:
        raise ValueError("layer and graph sizes differ")
    if any(len(v) != 1 for v in g.vertices):
        raise ValueError("graph is already reduced")
    merged: list[tuple[int, ...]] = []
    symbols: list[int] = []
    owner: dict[int, int] = {}
    for unit in layer.units:
        if len(unit.qubits) == 2:
            cls = unit.classification
            symbols.append(2 if cls.class_id in (3, 4) else 1)
        else:
            symbols.append(1)
        for q in unit.qubits:
            owner[q] = len(merged)
        merged.append(tuple(unit.qubits))
    keep = [i for i, s in enumerate(symbols) if s > 1]
    remap = {old: new for new, old in enumerate(keep)}
    edges = set()
    for a, b in g.edges:
        va, vb = owner[g.vertices[a][0]], owner[g.vertices[b][0]]
        if va == vb or va not in remap or vb not in remap:
            continue
        i, j = sorted((remap[va], remap[vb]))
        edges.add((i, j))
    deleted = tuple(merged[i] for i in range(len(merged)) if i not in remap)
    return LearningGraph(
        g.n, tuple(merged[i] for i in keep), tuple(symbols[i] for i in keep), frozenset(edges), deleted
    )


@dataclass(frozen=True)
class Coloring:
    colors: tuple[int, ...]

    @property
    def kc(self) -> int:
        return len(set(self.colors))

    def is_proper(self, g: LearningGraph) -> bool:
        return all(self.colors[a] != self.colors[b] for a, b in g.edges)


def dsatur(g: LearningGraph) -> Coloring:
    """DSATUR coloring.

    The next vertex has the most distinct neighbor colors, then the highest
    degree, then the lowest index; it gets the smallest free color.
    """
    m = len(g.vertices)
    adj = [g.neighbors(i) for i in range(m)]
    deg = [len(a) for a in adj]
    colors = [-1] * m
    for _ in range(m):
        best = None
        for i in range(m):
            if colors[i] >= 0:
                continue
            sat = len({colors[j] for j in adj[i] if colors[j] >= 0})
            key = (-sat, -deg[i], i)
            if best is None or key < best[0]:
                best = (key, i)
        i = best[1]
        used = {colors[j] for j in adj[i]}
        c = 0
        while c in used:
            c += 1
        colors[i] = c
    return Coloring(tuple(colors))


def exact_coloring(g: LearningGraph, max_vertices: int = 24) -> Coloring:
    """Minimum coloring by branch and bound, seeded with the DSATUR bound."""
    m = len(g.vertices)
    if m > max_vertices:
        raise ValueError(f"exact coloring limited to {max_vertices} vertices")
    best = list(dsatur(g).colors)
    best_k = len(set(best)) if m else 0
    adj = [g.neighbors(i) for i in range(m)]
    order = sorted(range(m), key=lambda i: (-len(adj[i]), i))
    colors = [-1] * m

    def search(pos: int, used: int) -> None:
        nonlocal best, best_k
        if used >= best_k:
            return
        if pos == m:
            best, best_k = colors.copy(), used
            return
        i = order[pos]
        taken = {colors[j] for j in adj[i]}
        for c in range(min(used + 1, best_k - 1)):
            if c in taken:
                continue
            colors[i] = c
            search(pos + 1, max(used, c + 1))
            colors[i] = -1

    if m:
        search(0, 0)
    return Coloring(tuple(best))


def color(g: LearningGraph, exact: bool = False) -> Coloring:
    return exact_coloring(g) if exact and len(g.vertices) <= 24 else dsatur(g)


@dataclass(frozen=True)
class BasisSet:
    mode: str
    bases: tuple[PauliString, ...]
    coloring: tuple[int, ...]
    ca: dict
    provenance: dict = field(default_factory=dict, compare=False)

    def strings(self) -> list[str]:
        return [format_pauli(b) for b in self.bases]

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "bases": self.strings(),
            "coloring": list(self.coloring),
            "ca": dict(self.ca),
            "provenance": self.provenance,
        }


def covering_array_for(t: int, kc: int, v: int) -> CoveringArray:
    """``CA(t, kc, v)``; falls back to the full factorial when ``kc < t``."""
    if kc == 0:
        return CoveringArray(0, 0, v, np.zeros((1, 0), dtype=np.int64), "empty")
    if kc < t:
        return full_factorial(kc, v)
    return construct(t, kc, v)


def _rotation_letters(layer: Layer, qubits: tuple[int, ...]) -> tuple[str, str, str, str]:
    """``(C, D, A, F)`` letters of the gate on ``qubits``."""
    unit = layer.unit_of(qubits[0])
    cls = unit.classification
    A, _, C = cls.first
    D, _, F = cls.second
    return C, D, A, F


def emit_bases(
    coloring: Coloring, ca: CoveringArray, g: LearningGraph, layer: Layer | None = None, mode: str = "pauli"
) -> BasisSet:
    """Turn covering-array rows into basis strings."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    kc = coloring.kc
    if ca.k < kc:
        raise ValueError(f"covering array has {ca.k} columns but the coloring uses {kc}")
    if mode == "rotation" and layer is None:
        raise ValueError("rotation mode needs the layer")
    bases = []
    for row in ca.rows:
        letters = [FILL_LETTER] * g.n
        for i, v in enumerate(g.vertices):
            sym = int(row[coloring.colors[i]]) if kc else 0
            if mode == "pauli":
                letters[v[0]] = PLAIN_LETTERS[sym]
            else:
                C, D, A, F = _rotation_letters(layer, v)
                pair = (C, D) if sym == 0 else (A, F)
                letters[v[0]], letters[v[1]] = pair
        bases.append(parse("".join(letters)))
    provenance = {
        "fill_letter": FILL_LETTER,
        "symbol_map": "0:X 1:Y 2:Z" if mode == "pauli" else "0:CD 1:AF",
        "ca_source": ca.source,
    }
    return BasisSet(mode, tuple(bases), tuple(coloring.colors), ca.summary(), provenance)


@dataclass(frozen=True)
class Selection:
    """Every stage of a basis-selection run, for reports."""

    graph: LearningGraph
    reduced: LearningGraph
    coloring: Coloring
    ca: CoveringArray
    bases: BasisSet


def select_bases(
    spec: ModelSpec,
    layer: Layer,
    mode: str = "pauli",
    crosstalk: Iterable[Sequence[int]] = (),
    exact_color: bool = False,
) -> Selection:
    """Graph, reduction, coloring, covering array and bases in one call."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    g = build_graph(spec, crosstalk)
    h = reduce_graph(g, layer) if mode == "rotation" else g
    col = color(h, exact_color)
    v = 3 if mode == "pauli" else 2
    ca = covering_array_for(spec.locality, col.kc, v)
    return Selection(g, h, col, ca, emit_bases(col, ca, h, layer, mode))


# ---------------------------------------------------------------------------
# Coverage


def block_partner(layer: Layer, basis: PauliString, p: PauliString, mode: str) -> PauliString:
    """Pauli hit by noise on the second layer of a block when ``p`` starts it."""
    image = conjugate(layer.tableau, p).pauli
    if mode == "rotation":
        return image
    pre, _, _ = layer_correction(layer, basis)
    return conjugate(pre, image).pauli


@dataclass(frozen=True)
class Coverage:
    ok: bool
    uncovered: tuple[PauliString, ...]
    witnesses: dict = field(default_factory=dict, compare=False)

    def __bool__(self) -> bool:
        return self.ok


def verify_coverage(
    bs: BasisSet | Sequence[PauliString],
    targets: Sequence[PauliString],
    layer: Layer,
    mode: str = "pauli",
) -> Coverage:
    """Check that each target's fidelity is reachable from some basis.

    A target ``b`` is covered when a sub-pattern ``P`` of some basis has ``b``
    (in rotation mode: a member of ``b``'s averaging group) as ``P`` itself or
    as its block partner.  Checked by brute force over all sub-patterns.
    """
    bases = bs.bases if isinstance(bs, BasisSet) else tuple(bs)
    n = layer.n
    lt = LayerTwirl(layer) if mode == "rotation" else None
    reached: dict[PauliString, tuple[str, str]] = {}
    for basis in bases:
        pre = None
        if mode == "pauli":
            pre, _, _ = layer_correction(layer, basis)
        letters = [(basis.letter(q), "I") for q in range(n)]
        for choice in itertools.product(*letters):
            p = parse("".join(choice))
            if p.is_identity():
                continue
            image = conjugate(layer.tableau, p).pauli
            partner = image if pre is None else conjugate(pre, image).pauli
            for hit in (p, partner):
                reached.setdefault(hit, (format_pauli(basis), format_pauli(p)))
    uncovered = []
    witnesses = {}
    for b in targets:
        group = lt.group_of(b) if lt is not None else [b]
        hit = next((m for m in group if m in reached), None)
        if hit is None:
            uncovered.append(b)
        else:
            witnesses[format_pauli(b)] = reached[hit]
    return Coverage(not uncovered, tuple(uncovered), witnesses)


def default_targets(spec: ModelSpec) -> list[PauliString]:
    return generate_terms(spec)


def is_measurable(p: PauliString, basis: PauliString) -> bool:
    return is_subpattern(p, basis)
