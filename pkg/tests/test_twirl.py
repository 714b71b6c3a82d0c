import cmath
import itertools
import math

import numpy as np
import pytest

from spl_learn.clifford import (
    class_representative,
    classify_two_qubit,
    compose,
    compose_all,
    conjugate,
    inverse,
    rotation,
    standard_gate,
)
from spl_learn.layer import Gate, Layer
from spl_learn.model import DensePauliChannel
from spl_learn.pauli import PauliString, all_paulis, format_pauli, parse
from spl_learn.twirl import (
    AveragingPartition,
    LayerTwirl,
    TwirlSet,
    averaging_partition,
    correction_schedule,
    decompose_rotation,
    feasible_rotation_twirls,
    layer_correction,
    measurable_pairs,
    pauli_twirled_gate_ptm,
    ptm_from_kraus,
    rotation_twirled_gate_ptm,
    trajectory_fidelities,
    twirl_dense,
)

SQ2 = math.sqrt(2)
E8 = cmath.exp(-1j * math.pi / 8)


def hh():
    return compose(standard_gate("h", [0], 2), standard_gate("h", [1], 2))


REPRESENTATIVES = {
    "hh": hh,
    "swap": lambda: standard_gate("swap", [0, 1], 2),
    "cz": lambda: standard_gate("cz", [0, 1], 2),
    "cx": lambda: standard_gate("cx", [0, 1], 2),
    "class4": lambda: class_representative(4),
}


# rotation decompositions: time-ordered gates and global phase
@pytest.mark.parametrize("letter,theta,seq,phase", [
    ("X", math.pi, ("x",), -1j),
    ("X", math.pi / 2, ("sx",), (1 - 1j) / SQ2),
    ("X", math.pi / 4, ("h", "t", "h"), E8),
    ("Y", math.pi, ("y",), -1j),
    ("Y", math.pi / 2, ("z", "h"), 1),
    ("Y", math.pi / 4, ("sx", "t", "sxdg"), E8),
    ("Z", math.pi, ("z",), -1j),
    ("Z", math.pi / 2, ("s",), (1 - 1j) / SQ2),
    ("Z", math.pi / 4, ("t",), E8),
])
def test_rotation_table(letter, theta, seq, phase):
    spec = decompose_rotation(letter, theta)
    assert spec.gate_seq == seq
    assert spec.phase == pytest.approx(phase)
    assert np.allclose(spec.phase * spec.sequence_unitary(), spec.unitary(), atol=1e-12)


@pytest.mark.parametrize("letter", "XYZ")
@pytest.mark.parametrize("k", [1, 2, 4])
def test_negative_angles_use_adjoint_sequence(letter, k):
    pos = decompose_rotation(letter, k * math.pi / 4)
    neg = decompose_rotation(letter, -k * math.pi / 4)
    assert len(neg.gate_seq) == len(pos.gate_seq)
    assert neg.phase == pytest.approx(pos.phase.conjugate())
    assert np.allclose(neg.phase * neg.sequence_unitary(), neg.unitary(), atol=1e-12)


@pytest.mark.parametrize("theta", [0.3, 3 * math.pi / 4, 0.0])
def test_unsupported_angle(theta):
    with pytest.raises(ValueError):
        decompose_rotation("X", theta)


def random_pauli_channel(n, rng):
    return DensePauliChannel.from_probabilities(rng.dirichlet(np.full(4**n, 0.5)), n)


def twirl_for(op, class1="full", quarter_turns=1):
    return feasible_rotation_twirls(classify_two_qubit(op), quarter_turns, class1)


@pytest.mark.parametrize("name", sorted(REPRESENTATIVES))
@pytest.mark.parametrize("class1", ["full", "minimal"])
def test_partition_matches_trajectory_oracle(name, class1):
    op = REPRESENTATIVES[name]()
    tw = twirl_for(op, class1)
    part = averaging_partition(classify_two_qubit(op), tw)
    rng = np.random.default_rng(5)
    for _ in range(3):
        ch = random_pauli_channel(2, rng)
        oracle = trajectory_fidelities(ch, op, tw)
        assert np.abs(oracle - twirl_dense(ch, part).fidelities).max() < 1e-12


def test_cz_partition_groups():
    op = standard_gate("cz", [0, 1], 2)
    part = averaging_partition(classify_two_qubit(op), twirl_for(op))
    groups = sorted(sorted(g) for g in part.as_strings())
    expected = sorted(sorted(g) for g in [
        ["XI", "YI"], ["ZI"], ["IX", "IY"], ["IZ"], ["XX", "XY", "YX", "YY"],
        ["XZ", "YZ"], ["ZX", "ZY"], ["ZZ"],
    ])
    assert groups == expected


def test_full_twirl_averages_each_qubit():
    part = averaging_partition(classify_two_qubit(hh()), twirl_for(hh()))
    sizes = sorted(len(g) for g in part.groups)
    assert sizes == [3, 3, 9]


def test_half_turn_partition_is_trivial():
    op = standard_gate("cz", [0, 1], 2)
    part = averaging_partition(classify_two_qubit(op), twirl_for(op, quarter_turns=2))
    assert all(len(g) == 1 for g in part.groups)


def test_partition_validation():
    with pytest.raises(ValueError):
        AveragingPartition(1, ((parse("X"),), (parse("Y"),)))


def random_kraus(n, k, rng):
    d = 2**n
    g = rng.normal(size=(k * d, d)) + 1j * rng.normal(size=(k * d, d))
    q, _ = np.linalg.qr(g)
    return [q[i * d:(i + 1) * d] for i in range(k)]


@pytest.mark.parametrize("name", sorted(REPRESENTATIVES))
def test_half_turn_rotation_twirl_equals_pauli_twirl(name):
    op = REPRESENTATIVES[name]()
    rng = np.random.default_rng(17)
    noise = ptm_from_kraus(random_kraus(2, 3, rng), 2)
    # every nested set {X, Y, Z} per qubit, theta = pi
    tw = TwirlSet(2, tuple(tuple(PauliString.single(L, q, 2) for L in "IXYZ") for q in (0, 1)), 2)
    rot = rotation_twirled_gate_ptm(noise, op, tw)
    pt = pauli_twirled_gate_ptm(noise, op, all_paulis(2))
    assert np.array_equal(np.round(rot, 12), np.round(pt, 12))
    assert np.abs(rot - pt).max() < 1e-14


def test_pauli_twirl_diagonalizes():
    op = standard_gate("cz", [0, 1], 2)
    noise = ptm_from_kraus(random_kraus(2, 2, np.random.default_rng(2)), 2)
    pt = pauli_twirled_gate_ptm(noise, op, all_paulis(2))
    from spl_learn.twirl import ptm_of_clifford
    residual = ptm_of_clifford(op).T @ pt  # O^-1 O Lambda_twirled
    assert np.allclose(residual, np.diag(np.diag(residual)), atol=1e-12)


BASES = ["".join(p) for p in itertools.product("XYZ", repeat=2)]


@pytest.mark.parametrize("name", ["cz", "cx", "class4"])
@pytest.mark.parametrize("basis", BASES)
def test_closing_rotation_identity(name, basis):
    op = REPRESENTATIVES[name]()
    sched = correction_schedule(op, basis)
    if sched.is_empty:
        return
    closing = compose_all([rotation(PauliString.single(L, q, 2), t)
                           for q, L, t in sched.closing_rotations(op)], 2)
    wrapped = compose(closing, compose(op, sched.pre))
    for p in all_paulis(2):
        assert conjugate(wrapped, p) == conjugate(op, p)


@pytest.mark.parametrize("name", ["cz", "cx", "class4"])
@pytest.mark.parametrize("basis", BASES)
def test_corrected_block_returns_pauli_with_plus_sign(name, basis):
    op = REPRESENTATIVES[name]()
    b = parse(basis)
    sched = correction_schedule(op, b)
    block = compose(sched.post, compose(op, compose(sched.pre, op)))
    for p in all_paulis(2):
        out = conjugate(block, p)
        assert out.pauli == p and out.sign == 1
    # the second layer's noise hits a Pauli readable in the same basis
    if conjugate(op, b).pauli.weight == 2:
        assert conjugate(sched.pre, conjugate(op, b).pauli).pauli == b


def test_cz_xx_schedule():
    op = standard_gate("cz", [0, 1], 2)
    sched = correction_schedule(op, "XX")
    assert sched.rotations == ((0, "Z", 1), (1, "Z", 1))
    assert sched.closing_rotations(op) == ((0, "Z", -1), (1, "Z", -1))


@pytest.mark.parametrize("basis,expected", [
    ("XX", [("XI", "YZ", True), ("IX", "ZY", True), ("XX", "XX", False)]),
    ("XZ", [("XI", "XZ", True), ("IZ", "IZ", False), ("XZ", "XI", True)]),
])
def test_cz_measurable_pairs(basis, expected):
    op = standard_gate("cz", [0, 1], 2)
    pairs = measurable_pairs(op, basis, correction_schedule(op, basis))
    got = sorted((format_pauli(m.first), format_pauli(m.second), m.support_changed) for m in pairs)
    assert got == sorted(expected)


def test_layer_twirl_group_is_product(line6):
    _, layer = line6
    lt = LayerTwirl(layer)
    group = lt.group_of(parse("XIIIII"))
    assert sorted(format_pauli(p) for p in group) == ["XIIIII", "YIIIII"]
    # every gate twirls its first qubit about Z here, pairing X with Y
    assert len(lt.group_of(parse("XIXIXI"))) == 8


def test_layer_correction_combines_units(line6):
    _, layer = line6
    b = parse("XXXXXX")
    pre, post, scheds = layer_correction(layer, b)
    assert len(scheds) == 3
    # CX sends XX to the weight-one XI, which is left alone
    assert [s.is_empty for s in scheds] == [False, True, False]
    image = conjugate(pre, conjugate(layer.tableau, b).pauli).pauli
    for unit, sched in zip(layer.units, scheds):
        if not sched.is_empty:
            assert image.restrict(unit.qubits) == b.restrict(unit.qubits)
    assert compose(post, compose(layer.tableau, pre)) == layer.tableau


def test_idle_and_single_qubit_units():
    layer = Layer(3, (Gate("cz", (0, 1)), Gate("h", (2,))))
    lt = LayerTwirl(layer)
    assert [u.name for u in layer.units] == ["cz", "h"]
    assert len(lt.group_of(parse("IIX"))) == 3
