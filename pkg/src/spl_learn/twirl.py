"""Pauli and Pauli-rotation twirling of Hermitian two-qubit Cliffords.

A rotation twirl replaces the noisy gate ``O L`` (noise ``L`` first) by the
average over ``j`` of ``R_{Q_j}(-s_j theta) O L R_{P_j}(theta)`` where
``O P_j O^dagger = s_j Q_j``.  Conjugating ``O`` by the rotations leaves the
ideal gate unchanged, while a Pauli channel ``L`` turns into a channel whose
fidelity on ``P`` is the mean of ``f(R_j P R_j^dagger)``.  At ``theta = pi/2``
this averages selected fidelities; at ``theta = pi`` it is the Pauli twirl.

Twirl elements are restricted to weight-one Paulis whose image under ``O`` is
also weight one, so every rotation is a single-qubit gate.  A two-qubit gate
gets independent sets ``J_1`` (first qubit) and ``J_2`` (second qubit).

Learning-circuit corrections: when a weight-two basis ``ST`` maps to another
weight-two Pauli, odd layer applications are wrapped as
``R_post O R_pre`` with ``R_post = O R_pre^dagger O`` so that the block of two
layers returns ``ST`` to itself with a ``+`` sign.
"""

from __future__ import annotations

import cmath
import functools
import itertools
import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .clifford import (
    CliffordTableau,
    GateClassification,
    classify_two_qubit,
    compose,
    compose_all,
    conjugate,
    embed,
    inverse,
    rotation,
)
from .layer import Gate, Layer
from .model import DensePauliChannel
from .pauli import PauliString, all_paulis, format_pauli, is_subpattern, parse, sp_inner

# ---------------------------------------------------------------------------
# Rotation decompositions

_SQ2 = math.sqrt(2.0)
_I2 = np.eye(2, dtype=complex)
_PAULI_MATS = {
    "I": _I2,
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}
_H = np.array([[1, 1], [1, -1]], dtype=complex) / _SQ2
_S = np.diag([1, 1j])
_T = np.diag([1, cmath.exp(1j * math.pi / 4)])
_SX = np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]], dtype=complex) / 2

GATE_UNITARIES = {
    "id": _I2,
    "x": _PAULI_MATS["X"],
    "y": _PAULI_MATS["Y"],
    "z": _PAULI_MATS["Z"],
    "h": _H,
    "s": _S,
    "sdg": _S.conj().T,
    "t": _T,
    "tdg": _T.conj().T,
    "sx": _SX,
    "sxdg": _SX.conj().T,
}

_ADJOINT = {"x": "x", "y": "y", "z": "z", "h": "h", "s": "sdg", "sdg": "s",
            "t": "tdg", "tdg": "t", "sx": "sxdg", "sxdg": "sx", "id": "id"}

# Gate sequences in time order for positive angles, with the global phase c such
# that R_P(theta) = c * (product of the gates).
_TABLE = {
    ("X", 4): (("x",), -1j),
    ("X", 2): (("sx",), (1 - 1j) / _SQ2),
    ("X", 1): (("h", "t", "h"), cmath.exp(-1j * math.pi / 8)),
    ("Y", 4): (("y",), -1j),
    ("Y", 2): (("z", "h"), 1.0 + 0j),
    ("Y", 1): (("sx", "t", "sxdg"), cmath.exp(-1j * math.pi / 8)),
    ("Z", 4): (("z",), -1j),
    ("Z", 2): (("s",), (1 - 1j) / _SQ2),
    ("Z", 1): (("t",), cmath.exp(-1j * math.pi / 8)),
}


def _eighth_turns(theta: float) -> int:
    """``theta`` in units of ``pi/4``; only ``+-1, +-2, +-4`` are supported."""
    q = theta / (math.pi / 4)
    k = int(round(q))
    if abs(q - k) > 1e-9 or abs(k) not in (1, 2, 4):
        raise ValueError(f"unsupported rotation angle {theta!r}; use +-pi, +-pi/2 or +-pi/4")
    return k


@dataclass(frozen=True)
class RotationSpec:
    """Single-qubit rotation ``R_P(theta) = exp(-i theta P / 2)`` as named gates.

    ``gate_seq`` is in time order and ``phase`` satisfies
    ``R_P(theta) = phase * U_last ... U_first``.
    """

    letter: str
    qubit: int
    theta: float
    gate_seq: tuple[str, ...]
    phase: complex

    def unitary(self) -> np.ndarray:
        return rotation_unitary(self.letter, self.theta)

    def sequence_unitary(self) -> np.ndarray:
        out = _I2
        for g in self.gate_seq:
            out = GATE_UNITARIES[g] @ out
        return out


def rotation_unitary(letter: str, theta: float) -> np.ndarray:
    P = _PAULI_MATS[letter]
    return math.cos(theta / 2) * _I2 - 1j * math.sin(theta / 2) * P


def decompose_rotation(letter: str, theta: float, qubit: int = 0) -> RotationSpec:
    """Express ``R_letter(theta)`` with basic gates.

    Negative angles use the adjoint of the positive-angle sequence: the order
    is reversed, each gate is replaced by its adjoint, and the phase conjugated.

    Examples
    --------
    >>> decompose_rotation("Z", math.pi / 2).gate_seq
    ('s',)
    >>> decompose_rotation("Y", -math.pi / 2).gate_seq
    ('h', 'z')
    """
    letter = letter.upper()
    if letter not in ("X", "Y", "Z"):
        raise ValueError(f"rotation axis must be X, Y or Z, got {letter!r}")
    k = _eighth_turns(theta)
    seq, phase = _TABLE[(letter, abs(k))]
    if k < 0:
        seq = tuple(_ADJOINT[g] for g in reversed(seq))
        phase = complex(phase).conjugate()
    return RotationSpec(letter, qubit, theta, tuple(seq), complex(phase))


def equal_up_to_phase(a: np.ndarray, b: np.ndarray, atol: float = 1e-12) -> bool:
    """True if ``a = c b`` for some unit complex ``c``."""
    idx = np.unravel_index(np.argmax(np.abs(b)), b.shape)
    if abs(b[idx]) < atol:
        return bool(np.allclose(a, b, atol=atol))
    c = a[idx] / b[idx]
    return abs(abs(c) - 1) < 1e-9 and bool(np.allclose(a, c * b, atol=atol))


# ---------------------------------------------------------------------------
# Twirl sets and averaging partitions


@dataclass(frozen=True)
class TwirlSet:
    """Nested twirl sets on a (local) register of ``n`` qubits.

    ``sets[i]`` lists the rotation axes drawn uniformly and independently for
    one qubit; an identity entry means "no rotation".  ``quarter_turns`` fixes
    ``theta = quarter_turns * pi / 2``.
    """

    n: int
    sets: tuple[tuple[PauliString, ...], ...]
    quarter_turns: int = 1

    def __post_init__(self) -> None:
        for s in self.sets:
            if not s:
                raise ValueError("empty twirl set")
            for p in s:
                if p.n != self.n or p.weight > 1:
                    raise ValueError("twirl elements must be weight <= 1 Paulis on the register")

    def combinations(self) -> list[tuple[PauliString, ...]]:
        return list(itertools.product(*self.sets))

    def element_tableau(self, combo: Sequence[PauliString]) -> CliffordTableau:
        return compose_all(
            [rotation_tableau(p, self.quarter_turns) for p in combo if not p.is_identity()], self.n
        )

    def tableaus(self) -> list[CliffordTableau]:
        """Pre-gate rotation of each combined element, in :meth:`combinations` order."""
        return [self.element_tableau(c) for c in self.combinations()]

    def to_json(self) -> dict:
        return {"theta_quarter_turns": self.quarter_turns,
                "sets": [[format_pauli(p) for p in s] for s in self.sets]}


def rotation_tableau(p: PauliString, quarter_turns: int) -> CliffordTableau:
    return rotation(p, quarter_turns)


def feasible_rotation_twirls(
    cls: GateClassification, quarter_turns: int = 1, class1: str = "full"
) -> TwirlSet:
    """Per-qubit rotation twirl sets implementable with single-qubit gates.

    Classes 1 and 2 use ``{X, Y, Z}`` on each qubit.  Classes 3 and 4 use
    ``{I, C}`` on the first qubit and ``{I, D}`` on the second.  With
    ``class1="minimal"`` a class-1 qubit that keeps exactly one letter ``L``
    fixed uses ``{I, L}`` instead of the full set.
    """
    if cls is None or cls.class_id not in (1, 2, 3, 4):
        raise ValueError("twirl sets need a classified two-qubit gate")
    if class1 not in ("full", "minimal"):
        raise ValueError(f"class1 must be 'full' or 'minimal', got {class1!r}")

    def full(q: int) -> tuple[PauliString, ...]:
        return tuple(PauliString.single(L, q, 2) for L in "XYZ")

    def pair(letter: str, q: int) -> tuple[PauliString, ...]:
        return (PauliString.identity(2), PauliString.single(letter, q, 2))

    if cls.class_id in (3, 4):
        sets = (pair(cls.first[2], 0), pair(cls.second[0], 1))
    elif cls.class_id == 1 and class1 == "minimal":
        per_q = []
        for q in (0, 1):
            fixed = cls.fixed_letters(q)
            per_q.append(pair(fixed[0], q) if len(fixed) == 1 else full(q))
        sets = tuple(per_q)
    else:
        sets = (full(0), full(1))
    tw = TwirlSet(2, sets, quarter_turns)
    if cls.tableau is not None and quarter_turns % 2:
        _check_weight_one(cls.tableau, tw)
    return tw


def single_qubit_twirl(op: CliffordTableau, quarter_turns: int = 1, minimal: bool = False) -> TwirlSet:
    """Twirl set for a single-qubit gate or idle qubit."""
    fixed = [L for L in "XYZ" if conjugate(op, parse(L)).pauli == parse(L)]
    if minimal and len(fixed) == 1:
        s = (PauliString.identity(1), parse(fixed[0]))
    else:
        s = tuple(parse(L) for L in "XYZ")
    return TwirlSet(1, (s,), quarter_turns)


def _check_weight_one(op: CliffordTableau, tw: TwirlSet) -> None:
    for s in tw.sets:
        for p in s:
            if conjugate(op, p).pauli.weight > 1:
                raise AssertionError(f"twirl element {p} maps to weight two")


@dataclass(frozen=True)
class AveragingPartition:
    """Groups of Paulis whose fidelities are replaced by their mean."""

    n: int
    groups: tuple[tuple[PauliString, ...], ...]

    def __post_init__(self) -> None:
        seen: set[PauliString] = set()
        for g in self.groups:
            for p in g:
                if p in seen:
                    raise ValueError(f"{p} appears in two groups")
                if p.is_identity() or p.n != self.n:
                    raise ValueError("groups must hold non-identity Paulis on the register")
                seen.add(p)
        if len(seen) != 4**self.n - 1:
            raise ValueError("groups must cover every non-identity Pauli")

    @functools.cached_property
    def lookup(self) -> dict[PauliString, tuple[PauliString, ...]]:
        return {p: g for g in self.groups for p in g}

    def group_of(self, p: PauliString) -> tuple[PauliString, ...]:
        if p.is_identity():
            return (p,)
        return self.lookup[p]

    def as_strings(self) -> list[list[str]]:
        return [[format_pauli(p) for p in g] for g in self.groups]


def _letter_groups(letters: set[str], quarter_turns: int) -> list[tuple[str, ...]]:
    """Per-qubit letter groups produced by averaging over rotation axes ``letters``."""
    if quarter_turns % 2 == 0 or not letters:
        return [("X",), ("Y",), ("Z",)]
    if letters == {"X", "Y", "Z"}:
        return [("X", "Y", "Z")]
    if len(letters) == 1:
        (L,) = letters
        others = tuple(m for m in "XYZ" if m != L)
        return [(L,), others]
    raise ValueError(f"no closed-form averaging for rotation axes {sorted(letters)}")


def averaging_partition(cls: GateClassification | None, tw: TwirlSet) -> AveragingPartition:
    """Analytic averaging groups of a rotation twirl.

    Each qubit's letters are grouped by its rotation set and groups on the two
    qubits combine as a product, so class 3/4 give ``{AI,BI}``, ``{IE,IF}``,
    ``{AD,BD}``, ``{CE,CF}``, ``{AE,AF,BE,BF}`` plus singletons ``CI``, ``ID``
    and ``CD``.
    """
    n = tw.n
    if len(tw.sets) != n:
        raise ValueError("twirl set needs one nested set per qubit")
    per_qubit = []
    for q, s in enumerate(tw.sets):
        letters = set()
        for p in s:
            if p.is_identity():
                continue
            if p.support != (q,):
                raise ValueError("nested set must act on its own qubit")
            letters.add(p.letter(q))
        per_qubit.append([("I",)] + _letter_groups(letters, tw.quarter_turns))
    groups = []
    for choice in itertools.product(*per_qubit):
        members = []
        for letters in itertools.product(*choice):
            text = "".join(letters)
            if set(text) != {"I"}:
                members.append(parse(text))
        if members:
            groups.append(tuple(sorted(members, key=PauliString.sort_key)))
    groups.sort(key=lambda g: g[0].sort_key())
    return AveragingPartition(n, tuple(groups))


def twirl_dense(ch: DensePauliChannel, part: AveragingPartition) -> DensePauliChannel:
    """Replace fidelities by their group means."""
    if ch.n != part.n:
        raise ValueError("partition and channel sizes differ")
    f = np.array(ch.fidelities, dtype=float, copy=True)
    for g in part.groups:
        idx = [p.index() for p in g]
        f[idx] = f[idx].mean()
    return DensePauliChannel.from_fidelities(f, ch.n)


def trajectory_fidelities(ch: DensePauliChannel, op: CliffordTableau, tw: TwirlSet) -> np.ndarray:
    """Exact expectation over twirl elements and error draws of the twirled noisy gate.

    For each input Pauli ``P`` the trajectory is rotation ``R_j``, a Pauli error
    ``E`` (probability ``alpha_E``), the gate ``O`` and the closing rotation
    ``R_Q = O R_j^dagger O``.  The returned value for ``P`` is the mean signed
    overlap of the output with ``O P O^dagger``.
    """
    n = ch.n
    paulis = all_paulis(n)
    support = [e for e in paulis if ch.probabilities[e.index()] != 0.0]
    out = np.zeros(4**n)
    elems = tw.tableaus()
    posts = [compose(op, compose(inverse(r), op)) for r in elems]
    for P in paulis:
        target = conjugate(op, P)
        acc = 0.0
        for pre, post in zip(elems, posts):
            rotated = conjugate(pre, P)
            for e in support:
                sign = -1.0 if sp_inner(e, rotated.pauli) else 1.0
                final = conjugate(post, conjugate(op, rotated))
                if final.pauli != target.pauli:
                    raise AssertionError("twirl element does not preserve the gate")
                rel = 1.0 if final.phase_exp == target.phase_exp else -1.0
                acc += ch.probabilities[e.index()] * sign * rel
        out[P.index()] = acc / len(elems)
    return out


# ---------------------------------------------------------------------------
# Pauli transfer matrices (small n)


def pauli_matrix(p: PauliString) -> np.ndarray:
    out = np.array([[1.0 + 0j]])
    for q in range(p.n):
        out = np.kron(out, _PAULI_MATS[p.letter(q)])
    return out


def ptm_from_kraus(kraus: Sequence[np.ndarray], n: int) -> np.ndarray:
    """``R[i, j] = Tr(P_i E(P_j)) / 2^n`` in dense-index order."""
    mats = [pauli_matrix(p) for p in all_paulis(n)]
    out = np.zeros((4**n, 4**n))
    for j, Pj in enumerate(mats):
        img = sum(K @ Pj @ K.conj().T for K in kraus)
        for i, Pi in enumerate(mats):
            out[i, j] = np.real(np.trace(Pi @ img)) / 2**n
    return out


def ptm_of_clifford(op: CliffordTableau) -> np.ndarray:
    """Signed permutation PTM of a Clifford from its tableau."""
    n = op.n
    out = np.zeros((4**n, 4**n))
    for p in all_paulis(n):
        img = conjugate(op, p)
        out[img.pauli.index(), p.index()] = float(img.sign)
    return out


def ptm_of_pauli(p: PauliString) -> np.ndarray:
    """Diagonal PTM of conjugation by the Pauli ``p`` (signs from commutation)."""
    signs = [(-1.0) ** sp_inner(p, b) for b in all_paulis(p.n)]
    return np.diag(signs)


def rotation_twirled_gate_ptm(noise: np.ndarray, op: CliffordTableau, tw: TwirlSet) -> np.ndarray:
    """Mean over twirl elements of ``PTM(R_Q) PTM(O) noise PTM(R_P)``."""
    gate = ptm_of_clifford(op)
    acc = np.zeros_like(noise)
    elems = tw.tableaus()
    for pre in elems:
        post = compose(op, compose(inverse(pre), op))
        acc += ptm_of_clifford(post) @ gate @ noise @ ptm_of_clifford(pre)
    return acc / len(elems)


def pauli_twirled_gate_ptm(noise: np.ndarray, op: CliffordTableau, paulis: Sequence[PauliString]) -> np.ndarray:
    """Mean over ``P`` of ``PTM(Q) PTM(O) noise PTM(P)`` with ``Q = O P O^dagger`` up to sign."""
    gate = ptm_of_clifford(op)
    acc = np.zeros_like(noise)
    for p in paulis:
        q = conjugate(op, p).pauli
        acc += ptm_of_pauli(q) @ gate @ noise @ ptm_of_pauli(p)
    return acc / len(paulis)


# ---------------------------------------------------------------------------
# Correction schedules


@dataclass(frozen=True)
class CorrectionSchedule:
    """Single-qubit rotations applied before odd layer applications for one basis.

    ``rotations`` holds ``(local_qubit, letter, quarter_turns)`` entries; empty
    means no correction.  ``pre`` is the combined rotation ``R_P`` and ``post``
    the closing rotation ``O R_P^dagger O``.
    """

    basis: PauliString
    rotations: tuple[tuple[int, str, int], ...]
    pre: CliffordTableau
    post: CliffordTableau

    @property
    def is_empty(self) -> bool:
        return not self.rotations

    def closing_rotations(self, op: CliffordTableau) -> tuple[tuple[int, str, int], ...]:
        """Closing rotations ``R_{Q}(-s theta)`` derived from each ``R_P(theta)``."""
        out = []
        for q, letter, turns in self.rotations:
            img = conjugate(op, PauliString.single(letter, q, op.n))
            if img.pauli.weight != 1:
                raise AssertionError("correction axis maps to weight two")
            (dst,) = img.pauli.support
            out.append((dst, img.pauli.letter(dst), -img.sign * turns))
        return tuple(out)

    def to_json(self) -> dict:
        return {"basis": format_pauli(self.basis),
                "rotations": [{"qubit": q, "axis": L, "quarter_turns": t} for q, L, t in self.rotations]}


def _rotations_tableau(rotations: Sequence[tuple[int, str, int]], n: int) -> CliffordTableau:
    return compose_all([rotation_tableau(PauliString.single(L, q, n), t) for q, L, t in rotations], n)


def correction_schedule(
    op: CliffordTableau | GateClassification, basis: PauliString | str
) -> CorrectionSchedule:
    """Corrections returning a weight-``n`` basis to itself after two layers.

    Classes 3/4 draw from ``R_C(+-pi/2)`` on the first qubit and
    ``R_D(+-pi/2)`` on the second.  Classes 1/2 and single-qubit gates may use
    any single-qubit ``R_L(+-pi/2)``.  The first schedule in candidate order
    (``None``, ``+pi/2``, ``-pi/2``) that restores the basis wins.
    """
    cls = op if isinstance(op, GateClassification) else None
    tab = cls.tableau if cls is not None else op
    if tab is None:
        raise ValueError("classification carries no tableau")
    if isinstance(basis, str):
        basis = parse(basis)
    n = tab.n
    if basis.n != n or basis.weight != n:
        raise ValueError("basis must have a letter on every qubit of the gate")
    identity = CliffordTableau.identity(n)
    image = conjugate(tab, basis).pauli
    if image == basis or image.weight != n:
        return CorrectionSchedule(basis, (), identity, identity)
    if n == 2 and cls is None:
        cls = classify_two_qubit(tab)
    options = []
    for q in range(n):
        if cls is not None and cls.class_id in (3, 4):
            letters = cls.first[2] if q == 0 else cls.second[0]
        else:
            letters = "XYZ"
        opts: list[tuple[int, str, int] | None] = [None]
        opts += [(q, L, t) for L in letters for t in (1, -1)]
        options.append(opts)
    for combo in itertools.product(*options):
        rots = tuple(r for r in combo if r is not None)
        if not rots:
            continue
        pre = _rotations_tableau(rots, n)
        if conjugate(pre, image).pauli != basis:
            continue
        if any(conjugate(tab, PauliString.single(L, q, n)).pauli.weight != 1 for q, L, _ in rots):
            continue
        post = compose(tab, compose(inverse(pre), tab))
        return CorrectionSchedule(basis, rots, pre, post)
    raise ValueError(f"no single-qubit correction maps {format_pauli(image)} back to {format_pauli(basis)}")


@dataclass(frozen=True)
class MeasurablePair:
    first: PauliString
    second: PauliString
    support_changed: bool


def measurable_pairs(
    op: CliffordTableau | GateClassification, basis: PauliString | str, schedule: CorrectionSchedule | None = None
) -> list[MeasurablePair]:
    """Fidelity pairs ``(P, P')`` observed per two-layer block in ``basis``.

    ``P`` ranges over the non-identity sub-patterns of the basis and
    ``P' = R_P(O P O^dagger)`` is the Pauli hit by noise on the second layer.
    A pair with ``P' == P`` gives ``f_P`` up to a sign.
    """
    tab = op.tableau if isinstance(op, GateClassification) else op
    if isinstance(basis, str):
        basis = parse(basis)
    pre = schedule.pre if schedule is not None else CliffordTableau.identity(tab.n)
    out = []
    for p in all_paulis(tab.n):
        if p.is_identity() or not is_subpattern(p, basis):
            continue
        second = conjugate(pre, conjugate(tab, p)).pauli
        out.append(MeasurablePair(p, second, p.support != second.support))
    return out


# ---------------------------------------------------------------------------
# Layer-level helpers


def unit_twirl(gate: Gate, quarter_turns: int = 1, class1: str = "full") -> TwirlSet:
    """Local twirl set of one layer unit (gate or idle qubit)."""
    if len(gate.qubits) == 2:
        return feasible_rotation_twirls(gate.classification, quarter_turns, class1)
    return single_qubit_twirl(gate.local_tableau, quarter_turns, class1 == "minimal")


def unit_partition(gate: Gate, class1: str = "full") -> AveragingPartition:
    return averaging_partition(gate.classification, unit_twirl(gate, 1, class1))


@dataclass(frozen=True)
class LayerTwirl:
    """Rotation-twirl structure of a whole layer.

    The group of an ``n``-qubit Pauli is the product of its restrictions'
    groups over the units.
    """

    layer: Layer
    class1: str = "full"

    @functools.cached_property
    def partitions(self) -> tuple[AveragingPartition, ...]:
        return tuple(unit_partition(u, self.class1) for u in self.layer.units)

    @functools.cached_property
    def twirls(self) -> tuple[TwirlSet, ...]:
        return tuple(unit_twirl(u, 1, self.class1) for u in self.layer.units)

    def group_of(self, b: PauliString) -> list[PauliString]:
        n = self.layer.n
        factors = []
        for unit, part in zip(self.layer.units, self.partitions):
            local = b.restrict(unit.qubits)
            factors.append([g.embed(unit.qubits, n) for g in part.group_of(local)])
        out = []
        for combo in itertools.product(*factors):
            x = z = 0
            for p in combo:
                x |= p.x
                z |= p.z
            out.append(PauliString(n, x, z))
        return sorted(out, key=PauliString.sort_key)


@functools.lru_cache(maxsize=4096)
def layer_correction(layer: Layer, basis: PauliString) -> tuple[CliffordTableau, CliffordTableau, tuple[CorrectionSchedule, ...]]:
    """Per-unit schedules for ``basis`` and the combined ``(pre, post)`` tableaus."""
    n = layer.n
    pre = CliffordTableau.identity(n)
    post = CliffordTableau.identity(n)
    schedules = []
    for unit in layer.units:
        local_basis = basis.restrict(unit.qubits)
        sched = correction_schedule(unit.classification or unit.local_tableau, local_basis)
        schedules.append(sched)
        if not sched.is_empty:
            pre = compose(embed(sched.pre, unit.qubits, n), pre)
            post = compose(embed(sched.post, unit.qubits, n), post)
    return pre, post, tuple(schedules)
