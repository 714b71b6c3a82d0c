"""Choosing learning bases for an 8-qubit layer with one crosstalk edge.

The layer is CZ(0,1) CX(2,3) CZ(4,5) SWAP(6,7) on a line, and qubits 1 and 4
share a crosstalk term.  Qubit supports become vertices of a graph, the
graph is colored, and a covering array over the colors fixes the bases.
Plain Pauli-twirl mode needs 9 bases; rotation twirling needs 4.
"""

from spl_learn.basisselect import select_bases, verify_coverage
from spl_learn.cli import pipeline_trace
from spl_learn.layer import Gate, Layer
from spl_learn.model import ModelSpec, generate_terms

spec = ModelSpec.from_edges(8, [(i, i + 1) for i in range(7)], 2)
layer = Layer(8, (Gate("cz", (0, 1)), Gate("cx", (2, 3)), Gate("cz", (4, 5)), Gate("swap", (6, 7))))

if __name__ == "__main__":
    for crosstalk in [(1, 4), (1, 3)]:
        for mode in ("pauli", "rotation"):
            sel = select_bases(spec, layer, mode, [crosstalk])
            ok = bool(verify_coverage(sel.bases, generate_terms(spec), layer, mode))
            print(f"crosstalk {crosstalk}, {mode:8}: {sel.coloring.kc} colors, "
                  f"{len(sel.bases.bases)} bases, all terms covered: {ok}")

    print("\nFull trace for crosstalk (1, 4) in rotation mode:\n")
    print(pipeline_trace(select_bases(spec, layer, "rotation", [(1, 4)])))
