"""Pauli operators in symplectic form.

A Pauli string on ``n`` qubits is stored as two integer bit masks ``x`` and
``z``; bit ``q`` belongs to qubit ``q``, which is also the ``q``-th letter of
the textual form (leftmost letter is qubit 0).  Per qubit the letter is
``(0,0)=I``, ``(1,0)=X``, ``(1,1)=Y``, ``(0,1)=Z``.

Phases follow the convention ``Y = iXZ``, so a Hermitian Pauli string equals
``i^{|x & z|} X^x Z^z``.  Python integers are unbounded, so the same code path
serves any qubit count.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

LETTERS = "IXYZ"
_LETTER_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_BITS_LETTER = {bits: letter for letter, bits in _LETTER_BITS.items()}


def _popcount(v: int) -> int:
    return bin(v).count("1")


@dataclass(frozen=True)
class PauliString:
    """Unsigned ``n``-qubit Pauli string.

    Parameters
    ----------
    n : int
        Number of qubits.
    x, z : int
        Bit masks of the X and Z components.
    """

    n: int
    x: int = 0
    z: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("a Pauli string needs at least one qubit")
        limit = 1 << self.n
        if not (0 <= self.x < limit and 0 <= self.z < limit):
            raise ValueError(f"bit masks do not fit in {self.n} qubits")

    @classmethod
    def identity(cls, n: int) -> PauliString:
        return cls(n, 0, 0)

    @classmethod
    def from_bits(cls, x_bits: Sequence[int], z_bits: Sequence[int]) -> PauliString:
        if len(x_bits) != len(z_bits):
            raise ValueError("x_bits and z_bits differ in length")
        x = sum(1 << q for q, b in enumerate(x_bits) if b)
        z = sum(1 << q for q, b in enumerate(z_bits) if b)
        return cls(len(x_bits), x, z)

    @classmethod
    def single(cls, letter: str, qubit: int, n: int) -> PauliString:
        """Weight-one Pauli ``letter`` on ``qubit``."""
        bx, bz = _LETTER_BITS[letter]
        return cls(n, bx << qubit, bz << qubit)

    @property
    def x_bits(self) -> tuple[int, ...]:
        return tuple((self.x >> q) & 1 for q in range(self.n))

    @property
    def z_bits(self) -> tuple[int, ...]:
        return tuple((self.z >> q) & 1 for q in range(self.n))

    @property
    def support_mask(self) -> int:
        return self.x | self.z

    @property
    def support(self) -> tuple[int, ...]:
        m = self.x | self.z
        return tuple(q for q in range(self.n) if (m >> q) & 1)

    @property
    def weight(self) -> int:
        return _popcount(self.x | self.z)

    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0

    def letter(self, qubit: int) -> str:
        return _BITS_LETTER[((self.x >> qubit) & 1, (self.z >> qubit) & 1)]

    def restrict(self, qubits: Sequence[int]) -> PauliString:
        """Sub-string on ``qubits`` (in the given order) as a ``len(qubits)``-qubit Pauli."""
        return parse("".join(self.letter(q) for q in qubits))

    def embed(self, qubits: Sequence[int], n: int) -> PauliString:
        """Place this Pauli on ``qubits`` of an ``n``-qubit register."""
        if len(qubits) != self.n:
            raise ValueError("qubit list does not match Pauli size")
        x = z = 0
        for i, q in enumerate(qubits):
            x |= ((self.x >> i) & 1) << q
            z |= ((self.z >> i) & 1) << q
        return PauliString(n, x, z)

    def index(self) -> int:
        """Dense index ``x + (z << n)`` used by the dense channel oracle."""
        return self.x | (self.z << self.n)

    @classmethod
    def from_index(cls, index: int, n: int) -> PauliString:
        mask = (1 << n) - 1
        return cls(n, index & mask, index >> n)

    def __mul__(self, other: PauliString) -> PauliString:
        """Product ignoring phase."""
        _check_size(self, other)
        return PauliString(self.n, self.x ^ other.x, self.z ^ other.z)

    def __str__(self) -> str:
        return format_pauli(self)

    def __repr__(self) -> str:
        return f"PauliString('{format_pauli(self)}')"

    def sort_key(self) -> tuple:
        """Order on (support, letters) used for terms and matrix rows."""
        sup = self.support
        return (len(sup), sup, "".join(self.letter(q) for q in sup))


@dataclass(frozen=True)
class PhasedPauli:
    """Pauli string times ``i**phase_exp``."""

    pauli: PauliString
    phase_exp: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "phase_exp", self.phase_exp % 4)

    @property
    def n(self) -> int:
        return self.pauli.n

    @property
    def sign(self) -> int:
        """``+1``/``-1`` for Hermitian values; raises for ``±i`` phases."""
        if self.phase_exp == 0:
            return 1
        if self.phase_exp == 2:
            return -1
        raise ValueError("operator is not Hermitian")

    def is_hermitian(self) -> bool:
        return self.phase_exp in (0, 2)

    def __mul__(self, other: PhasedPauli) -> PhasedPauli:
        return mul(self, other)

    def __neg__(self) -> PhasedPauli:
        return PhasedPauli(self.pauli, self.phase_exp + 2)

    def __str__(self) -> str:
        prefix = {0: "+", 1: "+i", 2: "-", 3: "-i"}[self.phase_exp]
        return prefix + format_pauli(self.pauli)

    def __repr__(self) -> str:
        return f"PhasedPauli('{self}')"


def _check_size(a: PauliString, b: PauliString) -> None:
    if a.n != b.n:
        raise ValueError(f"qubit count mismatch: {a.n} != {b.n}")


def sp_inner(a: PauliString, b: PauliString) -> int:
    """Symplectic inner product: 0 if ``a`` and ``b`` commute, 1 otherwise."""
    _check_size(a, b)
    return _popcount((a.x & b.z) ^ (a.z & b.x)) & 1


def commutes(a: PauliString, b: PauliString) -> bool:
    return sp_inner(a, b) == 0


def mul(a: PhasedPauli, b: PhasedPauli) -> PhasedPauli:
    """Group product ``a * b`` with exact phase."""
    p, q = a.pauli, b.pauli
    _check_size(p, q)
    # P = i^{x.z} X^x Z^z; moving Z^z1 past X^x2 costs (-1)^{z1.x2}.
    x, z = p.x ^ q.x, p.z ^ q.z
    exp = (
        _popcount(p.x & p.z)
        + _popcount(q.x & q.z)
        + 2 * _popcount(p.z & q.x)
        - _popcount(x & z)
    )
    return PhasedPauli(PauliString(p.n, x, z), a.phase_exp + b.phase_exp + exp)


def parse(text: str) -> PauliString:
    """Parse a letter string such as ``"XIZ"``."""
    if not text:
        raise ValueError("empty Pauli string")
    x = z = 0
    for q, ch in enumerate(text):
        try:
            bx, bz = _LETTER_BITS[ch.upper()]
        except KeyError:
            raise ValueError(f"invalid Pauli letter {ch!r} in {text!r}") from None
        x |= bx << q
        z |= bz << q
    return PauliString(len(text), x, z)


def parse_phased(text: str) -> PhasedPauli:
    """Parse ``"+XZ"``, ``"-YY"``, ``"iX"``, ``"-iZ"``..."""
    t = text.strip()
    exp = 0
    if t.startswith("-"):
        exp, t = 2, t[1:]
    elif t.startswith("+"):
        t = t[1:]
    if t.startswith("i"):
        exp, t = exp + 1, t[1:]
    return PhasedPauli(parse(t), exp)


def format_pauli(p: PauliString) -> str:
    return "".join(p.letter(q) for q in range(p.n))


def enumerate_nonidentity(support: Iterable[int], n: int) -> list[PauliString]:
    """All ``4**|support| - 1`` non-identity Paulis acting only on ``support``."""
    qubits = sorted(set(support))
    if not qubits:
        raise ValueError("support must be non-empty")
    if qubits[0] < 0 or qubits[-1] >= n:
        raise ValueError(f"support {qubits} out of range for {n} qubits")
    out = []
    for letters in itertools.product(LETTERS, repeat=len(qubits)):
        if all(ch == "I" for ch in letters):
            continue
        x = z = 0
        for q, ch in zip(qubits, letters):
            bx, bz = _LETTER_BITS[ch]
            x |= bx << q
            z |= bz << q
        out.append(PauliString(n, x, z))
    return out


def all_paulis(n: int) -> list[PauliString]:
    """All ``4**n`` Paulis in dense-index order."""
    return [PauliString.from_index(i, n) for i in range(4**n)]


def is_subpattern(p: PauliString, basis: PauliString) -> bool:
    """True if ``p`` agrees with ``basis`` on its support (measurable in that basis)."""
    _check_size(p, basis)
    m = p.x | p.z
    return (basis.x & m) == p.x and (basis.z & m) == p.z
