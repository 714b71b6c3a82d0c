import functools

import numpy as np
import pytest
from hypothesis import strategies as st

from spl_learn.layer import Gate, Layer
from spl_learn.model import ModelSpec
from spl_learn.pauli import PauliString

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.diag([1.0 + 0j, -1.0])
MATS = {"I": I2, "X": X, "Y": Y, "Z": Z}


def dense(label: str) -> np.ndarray:
    """Matrix of a Pauli label; the leftmost letter is the first tensor factor."""
    return functools.reduce(np.kron, [MATS[ch] for ch in label])


@st.composite
def paulis(draw, n=None, max_n=6):
    n = n if n is not None else draw(st.integers(1, max_n))
    x = draw(st.integers(0, 2**n - 1))
    z = draw(st.integers(0, 2**n - 1))
    return PauliString(n, x, z)


@st.composite
def pauli_pairs(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    return draw(paulis(n)), draw(paulis(n))


@pytest.fixture(scope="session")
def line6():
    spec = ModelSpec.from_edges(6, [(i, i + 1) for i in range(5)], 2)
    layer = Layer(6, (Gate("cz", (0, 1)), Gate("cx", (2, 3)), Gate("cz", (4, 5))))
    return spec, layer


@pytest.fixture(scope="session")
def line8():
    spec = ModelSpec.from_edges(8, [(i, i + 1) for i in range(7)], 2)
    layer = Layer(8, (Gate("cz", (0, 1)), Gate("cx", (2, 3)), Gate("cz", (4, 5)), Gate("swap", (6, 7))))
    return spec, layer


ACCEPTANCE = pytest.StashKey[dict]()


@pytest.fixture
def acceptance(request):
    """Record one summary line per acceptance criterion."""
    lines = request.config.stash.setdefault(ACCEPTANCE, {})

    def record(criterion: int, ok: bool, detail: str) -> bool:
        line = f"criterion {criterion}: {'PASS' if ok else 'FAIL'}  {detail}"
        lines[criterion] = line
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE, {})
    if lines:
        terminalreporter.section("acceptance criteria")
        for k in sorted(lines):
            terminalreporter.write_line(lines[k])
