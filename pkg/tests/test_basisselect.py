import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spl_learn.basisselect import (
    Coloring,
    LearningGraph,
    build_graph,
    color,
    dsatur,
    exact_coloring,
    reduce_graph,
    select_bases,
    verify_coverage,
)
from spl_learn.layer import Gate, Layer
from spl_learn.model import ModelSpec, generate_terms
from spl_learn.pauli import format_pauli, is_subpattern, parse


def chromatic_number(g: LearningGraph) -> int:
    m = len(g.vertices)
    for k in range(1, m + 1):
        for cols in itertools.product(range(k), repeat=m):
            if all(cols[a] != cols[b] for a, b in g.edges):
                return k
    return 0


def test_support_cliques_and_crosstalk_chord(line8):
    spec, _ = line8
    g = build_graph(spec, [(1, 4)])
    line_edges = {(i, i + 1) for i in range(7)}
    assert set(g.edges) == line_edges | {(1, 4)}
    assert g.symbols == (3,) * 8


def test_three_local_support_gives_triangle():
    g = build_graph(ModelSpec(3, ((0, 1, 2),)))
    assert set(g.edges) == {(0, 1), (0, 2), (1, 2)}


def test_crosstalk_out_of_range(line8):
    spec, _ = line8
    with pytest.raises(ValueError):
        build_graph(spec, [(1, 9)])


def test_reduce_merges_and_deletes(line8):
    spec, layer = line8
    h = reduce_graph(build_graph(spec, [(1, 4)]), layer)
    assert h.vertices == ((0, 1), (2, 3), (4, 5))
    assert h.symbols == (2, 2, 2)
    assert h.deleted == ((6, 7),)
    assert set(h.edges) == {(0, 1), (1, 2), (0, 2)}


def test_reduce_gives_one_symbol_to_class_one_and_idle():
    layer = Layer(4, (Gate("swap", (0, 1)),))
    spec = ModelSpec.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    h = reduce_graph(build_graph(spec), layer)
    assert h.vertices == () and len(h.deleted) == 3


@st.composite
def random_graphs(draw):
    m = draw(st.integers(1, 7))
    pairs = list(itertools.combinations(range(m), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return LearningGraph(m, tuple((i,) for i in range(m)), (3,) * m, frozenset(chosen))


@settings(max_examples=60, deadline=None)
@given(random_graphs())
def test_colorings_are_proper(g):
    d = dsatur(g)
    e = exact_coloring(g)
    assert d.is_proper(g) and e.is_proper(g)
    assert e.kc == chromatic_number(g) <= d.kc


def test_color_dispatch():
    g = LearningGraph(3, ((0,), (1,), (2,)), (3, 3, 3), frozenset({(0, 1)}))
    assert color(g).kc == color(g, exact=True).kc == 2
    assert Coloring((0, 0, 1)).kc == 2


@pytest.mark.parametrize("crosstalk,mode,kc,n_bases,ca", [
    ((1, 4), "pauli", 2, 9, (2, 2, 3)),
    ((1, 4), "rotation", 3, 4, (2, 3, 2)),
    ((1, 3), "pauli", 3, 9, (2, 3, 3)),
    ((1, 3), "rotation", 2, 4, (2, 2, 2)),
])
def test_line8_crosstalk_selection(line8, crosstalk, mode, kc, n_bases, ca):
    spec, layer = line8
    sel = select_bases(spec, layer, mode, [crosstalk])
    assert sel.coloring.kc == kc
    assert len(sel.bases.bases) == n_bases == sel.ca.N
    assert (sel.ca.t, sel.ca.k, sel.ca.v) == ca
    assert all(set(s) <= set("XYZ") and len(s) == 8 for s in sel.bases.strings())
    assert verify_coverage(sel.bases, generate_terms(spec), layer, mode)


def test_rotation_bases_use_gate_letters(line8):
    spec, layer = line8
    bases = select_bases(spec, layer, "rotation", [(1, 4)]).bases.strings()
    # CZ pairs are ZZ (C, D) or XY (A, F); CX pairs are ZX or XZ; SWAP is filled with Z
    for b in bases:
        assert b[0:2] in ("ZZ", "XY") and b[4:6] in ("ZZ", "XY")
        assert b[2:4] in ("ZX", "XZ")
        assert b[6:8] == "ZZ"


@st.composite
def line_layers(draw):
    n = draw(st.integers(2, 7))
    ring = draw(st.booleans()) and n > 2
    edges = [(i, i + 1) for i in range(n - 1)] + ([(n - 1, 0)] if ring else [])
    gates = []
    q = 0
    while q < n - 1:
        name = draw(st.sampled_from(["cz", "cx", "swap", None]))
        if name:
            gates.append(Gate(name, (q, q + 1)))
            q += 2
        else:
            q += 1
    return ModelSpec.from_edges(n, edges, 2), Layer(n, tuple(gates))


@settings(max_examples=25, deadline=None)
@given(line_layers(), st.sampled_from(["pauli", "rotation"]))
def test_selected_bases_cover_all_terms(case, mode):
    spec, layer = case
    sel = select_bases(spec, layer, mode)
    terms = generate_terms(spec)
    assert verify_coverage(sel.bases, terms, layer, mode)
    if mode == "pauli":
        # every weight <= 2 term is directly readable in some basis
        for t in terms:
            assert any(is_subpattern(t, b) for b in sel.bases.bases), format_pauli(t)


def test_coverage_reports_missing(line6):
    spec, layer = line6
    cov = verify_coverage([parse("ZZZZZZ")], generate_terms(spec), layer, "pauli")
    assert not cov and parse("XIIIII") in cov.uncovered


def test_selection_is_deterministic(line8):
    spec, layer = line8
    a = select_bases(spec, layer, "pauli", [(1, 4)]).bases.to_json()
    b = select_bases(spec, layer, "pauli", [(1, 4)]).bases.to_json()
    assert a == b


def three_local_line():
    spec = ModelSpec.from_edges(6, [(i, i + 1) for i in range(5)], 3)
    layer = Layer(6, (Gate("cz", (0, 1)), Gate("cx", (2, 3)), Gate("cz", (4, 5))))
    return spec, layer


def test_three_local_plain_mode_uses_strength_three():
    spec, layer = three_local_line()
    sel = select_bases(spec, layer, "pauli")
    assert (sel.ca.t, sel.ca.v) == (3, 3)
    assert verify_coverage(sel.bases, generate_terms(spec), layer, "pauli")


def test_three_local_rotation_mode_reports_cross_gate_gaps():
    # gate-letter bases cannot reach some weight-3 terms spanning two gates
    spec, layer = three_local_line()
    sel = select_bases(spec, layer, "rotation")
    cov = verify_coverage(sel.bases, generate_terms(spec), layer, "rotation")
    assert not cov
    for p in cov.uncovered:
        units = {layer.units.index(layer.unit_of(q)) for q in p.support}
        assert p.weight == 3 and len(units) == 2
