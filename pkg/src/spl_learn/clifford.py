"""Clifford operators as signed symplectic tableaus.

A :class:`CliffordTableau` stores the conjugation image ``O g O^dagger`` of each
generator ``g`` in ``X_0..X_{n-1}, Z_0..Z_{n-1}``.  Global phase is not
represented, so equality and Hermiticity are defined on the conjugation action.

The module also classifies two-qubit Hermitian Cliffords into the four
support-transition classes.  Letter roles ``(A, B, C)`` for the first qubit
and ``(D, E, F)`` for the second are permutations of ``XYZ`` with

* class 1: every weight-one Pauli stays on its own qubit;
* class 2: ``AI <-> IF``, ``BI <-> IE``, ``CI <-> ID``;
* class 3: ``CI``, ``ID``, ``CD`` fixed, ``{AI,BI} <-> {AD,BD}``,
  ``{IE,IF} <-> {CE,CF}``;
* class 4: ``CI <-> ID``, ``AI <-> CE``, ``BI <-> CF``, ``IE <-> AD``,
  ``IF <-> BD``, and ``CD``, ``BE``, ``AF`` fixed.

When several role assignments fit, the lexicographically smallest string
``ABCDEF`` is reported.
"""

from __future__ import annotations

import functools
import itertools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

import numpy as np

from .pauli import (
    PauliString,
    PhasedPauli,
    all_paulis,
    format_pauli,
    mul,
    parse,
    sp_inner,
)

HERMITIAN_GATES = frozenset({"id", "x", "y", "z", "h", "cz", "cx", "swap"})
GATE_ARITY = {
    "id": 1, "x": 1, "y": 1, "z": 1, "h": 1, "s": 1, "sdg": 1, "sx": 1, "sxdg": 1,
    "cz": 2, "cx": 2, "swap": 2,
}

# Images of (X, Z) for single-qubit gates and (XI, IX, ZI, IZ) for two-qubit gates.
_GATE_IMAGES = {
    "id": ("+X", "+Z"),
    "x": ("+X", "-Z"),
    "y": ("-X", "-Z"),
    "z": ("-X", "+Z"),
    "h": ("+Z", "+X"),
    "s": ("+Y", "+Z"),
    "sdg": ("-Y", "+Z"),
    "sx": ("+X", "-Y"),
    "sxdg": ("+X", "+Y"),
    "cz": ("+XZ", "+ZX", "+ZI", "+IZ"),
    "cx": ("+XX", "+IX", "+ZI", "+ZZ"),
    "swap": ("+IX", "+XI", "+IZ", "+ZI"),
}


def _phased(text: str) -> PhasedPauli:
    sign = 2 if text[0] == "-" else 0
    return PhasedPauli(parse(text.lstrip("+-")), sign)


@dataclass(frozen=True)
class CliffordTableau:
    """Signed conjugation tableau of an ``n``-qubit Clifford.

    ``images[q]`` is the image of ``X_q`` and ``images[n + q]`` the image of
    ``Z_q``.
    """

    n: int
    images: tuple[PhasedPauli, ...]

    def __post_init__(self) -> None:
        if len(self.images) != 2 * self.n:
            raise ValueError("tableau needs 2n generator images")
        for img in self.images:
            if img.n != self.n:
                raise ValueError("generator image has wrong qubit count")
            if not img.is_hermitian():
                raise ValueError("generator images must carry a real sign")

    @classmethod
    def identity(cls, n: int) -> CliffordTableau:
        xs = [PhasedPauli(PauliString(n, 1 << q, 0)) for q in range(n)]
        zs = [PhasedPauli(PauliString(n, 0, 1 << q)) for q in range(n)]
        return cls(n, tuple(xs + zs))

    def is_symplectic(self) -> bool:
        """Check that generator images keep the canonical commutation relations."""
        n = self.n
        for i in range(2 * n):
            for j in range(i + 1, 2 * n):
                expected = 1 if (j - i == n) else 0
                if sp_inner(self.images[i].pauli, self.images[j].pauli) != expected:
                    return False
        return True

    def symplectic_matrix(self) -> np.ndarray:
        """``(2n, 2n)`` uint8 matrix; row ``i`` holds the bits of generator image ``i``.

        Bit columns are ``x_0..x_{n-1}, z_0..z_{n-1}`` so a row vector of error
        bits ``e`` maps to ``e @ S mod 2``.
        """
        n = self.n
        out = np.zeros((2 * n, 2 * n), dtype=np.uint8)
        for i, img in enumerate(self.images):
            p = img.pauli
            for q in range(n):
                out[i, q] = (p.x >> q) & 1
                out[i, n + q] = (p.z >> q) & 1
        return out

    def signs(self) -> tuple[int, ...]:
        return tuple(img.sign for img in self.images)

    def __str__(self) -> str:
        rows = []
        for q in range(self.n):
            rows.append(f"X{q} -> {self.images[q]}")
        for q in range(self.n):
            rows.append(f"Z{q} -> {self.images[self.n + q]}")
        return "\n".join(rows)


def conjugate(op: CliffordTableau, p: PhasedPauli | PauliString) -> PhasedPauli:
    """Return ``O p O^dagger`` including its sign."""
    if isinstance(p, PauliString):
        p = PhasedPauli(p)
    if p.n != op.n:
        raise ValueError(f"qubit count mismatch: {p.n} != {op.n}")
    pauli = p.pauli
    # p = i^{|x&z|} X^x Z^z
    acc = PhasedPauli(PauliString.identity(op.n), p.phase_exp + bin(pauli.x & pauli.z).count("1"))
    n = op.n
    for q in range(n):
        if (pauli.x >> q) & 1:
            acc = mul(acc, op.images[q])
    for q in range(n):
        if (pauli.z >> q) & 1:
            acc = mul(acc, op.images[n + q])
    return acc


def compose(a: CliffordTableau, b: CliffordTableau) -> CliffordTableau:
    """Operator product ``a b`` (``b`` acts first)."""
    if a.n != b.n:
        raise ValueError(f"qubit count mismatch: {a.n} != {b.n}")
    return CliffordTableau(a.n, tuple(conjugate(a, img) for img in b.images))


def compose_all(ops: Iterable[CliffordTableau], n: int) -> CliffordTableau:
    """Product of ``ops`` given in time order (first element acts first)."""
    out = CliffordTableau.identity(n)
    for op in ops:
        out = compose(op, out)
    return out


def is_hermitian(op: CliffordTableau) -> bool:
    """True iff ``op`` squares to the identity on its signed conjugation action."""
    return compose(op, op) == CliffordTableau.identity(op.n)


def _f2_inverse(mat: np.ndarray) -> np.ndarray:
    m = mat.shape[0]
    aug = np.concatenate([mat.astype(np.uint8) & 1, np.eye(m, dtype=np.uint8)], axis=1)
    for col in range(m):
        pivots = np.nonzero(aug[col:, col])[0]
        if len(pivots) == 0:
            raise ValueError("matrix is singular over F2")
        piv = col + pivots[0]
        if piv != col:
            aug[[col, piv]] = aug[[piv, col]]
        rows = np.nonzero(aug[:, col])[0]
        for r in rows:
            if r != col:
                aug[r] ^= aug[col]
    return aug[:, m:]


def _pauli_from_row(row: np.ndarray, n: int) -> PauliString:
    x = sum(1 << q for q in range(n) if row[q])
    z = sum(1 << q for q in range(n) if row[n + q])
    return PauliString(n, x, z)


def inverse(op: CliffordTableau) -> CliffordTableau:
    """Tableau of ``O^dagger``."""
    n = op.n
    inv = _f2_inverse(op.symplectic_matrix())
    images = []
    gens = CliffordTableau.identity(n).images
    for i in range(2 * n):
        cand = PhasedPauli(_pauli_from_row(inv[i], n))
        got = conjugate(op, cand)
        if got.pauli != gens[i].pauli:
            raise AssertionError("inverse symplectic matrix inconsistent")
        images.append(cand if got.phase_exp == 0 else -cand)
    return CliffordTableau(n, tuple(images))


def from_images(images: Sequence[str | PhasedPauli]) -> CliffordTableau:
    """Build a tableau from ``[X_0.., Z_0..]`` image strings such as ``"+XZ"``."""
    imgs = tuple(i if isinstance(i, PhasedPauli) else _phased(i) for i in images)
    return CliffordTableau(len(imgs) // 2, imgs)


def embed(op: CliffordTableau, qubits: Sequence[int], n: int) -> CliffordTableau:
    """Act with ``op`` on ``qubits`` of an ``n``-qubit register."""
    if len(qubits) != op.n:
        raise ValueError(f"gate acts on {op.n} qubits, got {len(qubits)} indices")
    if len(set(qubits)) != len(qubits):
        raise ValueError(f"repeated qubit index in {list(qubits)}")
    if any(q < 0 or q >= n for q in qubits):
        raise ValueError(f"qubit index out of range in {list(qubits)} for n={n}")
    images = list(CliffordTableau.identity(n).images)
    for i, q in enumerate(qubits):
        for offset_src, offset_dst in ((0, 0), (op.n, n)):
            img = op.images[offset_src + i]
            images[offset_dst + q] = PhasedPauli(img.pauli.embed(qubits, n), img.phase_exp)
    return CliffordTableau(n, tuple(images))


def standard_gate(name: str, qubits: Sequence[int], n: int) -> CliffordTableau:
    """Named gate (``id x y z h s sdg sx sxdg cz cx swap``) on ``qubits``."""
    key = name.lower()
    if key not in _GATE_IMAGES:
        raise ValueError(f"unknown gate {name!r}")
    if len(qubits) != GATE_ARITY[key]:
        raise ValueError(f"gate {name!r} acts on {GATE_ARITY[key]} qubit(s)")
    imgs = _GATE_IMAGES[key]
    if GATE_ARITY[key] == 1:
        local = from_images(imgs)
    else:
        xi, ix, zi, iz = imgs
        local = from_images([xi, ix, zi, iz])
    return embed(local, list(qubits), n)


def rotation(p: PauliString, quarter_turns: int) -> CliffordTableau:
    """Tableau of ``R_P(theta) = exp(-i theta P / 2)`` with ``theta = quarter_turns * pi/2``."""
    turns = quarter_turns % 4
    n = p.n
    images = []
    for g in CliffordTableau.identity(n).images:
        if turns == 0 or sp_inner(g.pauli, p) == 0:
            images.append(g)
        elif turns == 2:
            images.append(-g)
        else:
            # R g R^dagger = -i sin(theta) P g for anticommuting g
            prod = mul(PhasedPauli(p), g)
            images.append(PhasedPauli(prod.pauli, prod.phase_exp + (3 if turns == 1 else 1)))
    return CliffordTableau(n, tuple(images))


def tensor(ops: Sequence[CliffordTableau]) -> CliffordTableau:
    """Tensor product, first factor on the lowest qubits."""
    n = sum(op.n for op in ops)
    out = CliffordTableau.identity(n)
    start = 0
    for op in ops:
        out = compose(embed(op, list(range(start, start + op.n)), n), out)
        start += op.n
    return out


# ---------------------------------------------------------------------------
# Two-qubit classification


TWO_QUBIT_LABELS = tuple(format_pauli(p) for p in all_paulis(2) if not p.is_identity())


@dataclass(frozen=True)
class GateClassification:
    """Class label and letter roles of a two-qubit Hermitian Clifford.

    ``first`` is ``(A, B, C)`` and ``second`` is ``(D, E, F)``.  ``support_map``
    maps each of the 15 non-identity two-qubit Paulis to its signed image.
    """

    class_id: int
    first: tuple[str, str, str]
    second: tuple[str, str, str]
    support_map: dict[str, str] = field(compare=False, hash=False)
    tableau: CliffordTableau | None = field(default=None, compare=False, hash=False)

    @property
    def roles(self) -> dict[str, str]:
        return dict(zip("ABCDEF", self.first + self.second))

    def image(self, label: str) -> str:
        """Unsigned image letters of a two-letter Pauli label."""
        return self.support_map[label].lstrip("+-")

    def fixed_letters(self, qubit: int) -> tuple[str, ...]:
        """Letters ``L`` whose weight-one Pauli on ``qubit`` maps to itself."""
        out = []
        for L in "XYZ":
            lab = L + "I" if qubit == 0 else "I" + L
            if self.image(lab) == lab:
                out.append(L)
        return tuple(out)


def _support_images(op: CliffordTableau) -> dict[str, str]:
    out = {}
    for label in TWO_QUBIT_LABELS:
        out[label] = str(conjugate(op, parse(label)))
    return out


def _pattern(class_id: int, roles: dict[str, str]) -> dict[str, frozenset[str]] | None:
    """Allowed unsigned images per Pauli label for a class under given roles."""
    A, B, C, D, E, F = (roles[k] for k in "ABCDEF")
    I = "I"

    def lab(a: str, b: str) -> str:
        return a + b

    if class_id == 1:
        return None
    if class_id == 2:
        pairs = [(lab(A, I), lab(I, F)), (lab(B, I), lab(I, E)), (lab(C, I), lab(I, D))]
        fixed = [lab(A, F), lab(B, E), lab(C, D)]
        table = {}
        for p, q in pairs:
            table[p] = frozenset({q})
            table[q] = frozenset({p})
        for p in fixed:
            table[p] = frozenset({p})
        return table
    if class_id == 3:
        table = {lab(C, I): frozenset({lab(C, I)}), lab(I, D): frozenset({lab(I, D)}),
                 lab(C, D): frozenset({lab(C, D)})}
        for p in (lab(A, I), lab(B, I)):
            table[p] = frozenset({lab(A, D), lab(B, D)})
        for p in (lab(A, D), lab(B, D)):
            table[p] = frozenset({lab(A, I), lab(B, I)})
        for p in (lab(I, E), lab(I, F)):
            table[p] = frozenset({lab(C, E), lab(C, F)})
        for p in (lab(C, E), lab(C, F)):
            table[p] = frozenset({lab(I, E), lab(I, F)})
        return table
    if class_id == 4:
        pairs = [(lab(C, I), lab(I, D)), (lab(A, I), lab(C, E)), (lab(B, I), lab(C, F)),
                 (lab(I, E), lab(A, D)), (lab(I, F), lab(B, D))]
        fixed = [lab(C, D), lab(B, E), lab(A, F)]
        table = {}
        for p, q in pairs:
            table[p] = frozenset({q})
            table[q] = frozenset({p})
        for p in fixed:
            table[p] = frozenset({p})
        return table
    raise ValueError(f"no class {class_id}")


def _matches(class_id: int, roles: dict[str, str], images: dict[str, str]) -> bool:
    unsigned = {k: v.lstrip("+-") for k, v in images.items()}
    if class_id == 1:
        for L in "XYZ":
            if parse(unsigned[L + "I"]).support != (0,) or parse(unsigned["I" + L]).support != (1,):
                return False
        return True
    table = _pattern(class_id, roles)
    return all(unsigned[label] in allowed for label, allowed in table.items())


def matching_classes(op: CliffordTableau) -> list[tuple[int, dict[str, str]]]:
    """Every (class, roles) pair consistent with ``op``; used for exclusivity checks."""
    images = _support_images(op)
    found = []
    for class_id in (1, 2, 3, 4):
        for first in itertools.permutations("XYZ"):
            for second in itertools.permutations("XYZ"):
                roles = dict(zip("ABCDEF", first + second))
                if _matches(class_id, roles, images):
                    found.append((class_id, roles))
    return found


def classify_two_qubit(op: CliffordTableau) -> GateClassification:
    """Classify a two-qubit Hermitian Clifford by the images of its weight-one Paulis."""
    if op.n != 2:
        raise ValueError("classification needs a two-qubit operator")
    if not is_hermitian(op):
        raise ValueError("operator is not Hermitian")
    images = _support_images(op)
    for class_id in (1, 2, 3, 4):
        for first in itertools.permutations("XYZ"):
            for second in itertools.permutations("XYZ"):
                roles = dict(zip("ABCDEF", first + second))
                if _matches(class_id, roles, images):
                    return GateClassification(class_id, first, second, images, op)
    raise AssertionError("Hermitian two-qubit Clifford fits no class")


# ---------------------------------------------------------------------------
# Enumeration and sampling of two-qubit Cliffords


@functools.lru_cache(maxsize=None)
def _two_qubit_symplectic_images() -> tuple[tuple[PauliString, ...], ...]:
    paulis = [p for p in all_paulis(2) if not p.is_identity()]
    out = []
    for x0, z0, x1, z1 in itertools.product(paulis, repeat=4):
        if sp_inner(x0, z0) != 1 or sp_inner(x1, z1) != 1:
            continue
        if sp_inner(x0, x1) or sp_inner(x0, z1) or sp_inner(z0, x1) or sp_inner(z0, z1):
            continue
        out.append((x0, x1, z0, z1))
    return tuple(out)


def all_two_qubit_cliffords() -> list[CliffordTableau]:
    """All 11520 signed two-qubit tableaus (720 symplectic maps times 16 sign patterns)."""
    out = []
    for imgs in _two_qubit_symplectic_images():
        for signs in itertools.product((0, 2), repeat=4):
            out.append(CliffordTableau(2, tuple(PhasedPauli(p, s) for p, s in zip(imgs, signs))))
    return out


@functools.lru_cache(maxsize=None)
def hermitian_two_qubit_cliffords() -> tuple[CliffordTableau, ...]:
    return tuple(op for op in all_two_qubit_cliffords() if is_hermitian(op))


def random_two_qubit_clifford(rng: np.random.Generator) -> CliffordTableau:
    """Uniform random symplectic map with uniform random signs."""
    table = _two_qubit_symplectic_images()
    imgs = table[int(rng.integers(len(table)))]
    signs = rng.integers(0, 2, size=4) * 2
    return CliffordTableau(2, tuple(PhasedPauli(p, int(s)) for p, s in zip(imgs, signs)))


def class_representative(class_id: int) -> CliffordTableau:
    """First Hermitian two-qubit Clifford (enumeration order) in ``class_id``."""
    for op in hermitian_two_qubit_cliffords():
        if classify_two_qubit(op).class_id == class_id:
            return op
    raise ValueError(f"no representative for class {class_id}")
