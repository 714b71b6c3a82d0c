"""Layers of simultaneous gates on disjoint qubits."""

from __future__ import annotations

import functools
from collections.abc import Sequence
from dataclasses import dataclass

from .clifford import (
    GATE_ARITY,
    CliffordTableau,
    GateClassification,
    classify_two_qubit,
    compose,
    embed,
    is_hermitian,
    standard_gate,
)


@dataclass(frozen=True)
class Gate:
    name: str
    qubits: tuple[int, ...]

    def __post_init__(self) -> None:
        name = self.name.lower()
        if name not in GATE_ARITY:
            raise ValueError(f"unknown gate {self.name!r}")
        qubits = tuple(int(q) for q in self.qubits)
        if len(qubits) != GATE_ARITY[name]:
            raise ValueError(f"gate {name!r} acts on {GATE_ARITY[name]} qubit(s), got {qubits}")
        if len(set(qubits)) != len(qubits):
            raise ValueError(f"gate {name!r} repeats a qubit: {qubits}")
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "qubits", qubits)

    @functools.cached_property
    def local_tableau(self) -> CliffordTableau:
        return standard_gate(self.name, list(range(len(self.qubits))), len(self.qubits))

    @functools.cached_property
    def classification(self) -> GateClassification | None:
        """Two-qubit class, or ``None`` for single-qubit gates."""
        if len(self.qubits) != 2:
            return None
        return classify_two_qubit(self.local_tableau)

    def to_json(self) -> dict:
        return {"name": self.name, "qubits": list(self.qubits)}


@dataclass(frozen=True)
class Layer:
    """Gates acting on pairwise disjoint qubits of an ``n``-qubit register.

    Qubits without a gate are idle.  :attr:`units` lists every gate plus an
    ``id`` gate for each idle qubit, ordered by lowest qubit.
    """

    n: int
    gates: tuple[Gate, ...] = ()

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for g in self.gates:
            for q in g.qubits:
                if q < 0 or q >= self.n:
                    raise ValueError(f"qubit {q} out of range for {self.n} qubits")
                if q in seen:
                    raise ValueError(f"gates overlap on qubit {q}")
                seen.add(q)
        object.__setattr__(self, "gates", tuple(self.gates))

    @classmethod
    def from_json(cls, n: int, gates: Sequence[dict]) -> Layer:
        return cls(n, tuple(Gate(g["name"], tuple(g["qubits"])) for g in gates))

    @functools.cached_property
    def units(self) -> tuple[Gate, ...]:
        busy = {q for g in self.gates for q in g.qubits}
        idle = [Gate("id", (q,)) for q in range(self.n) if q not in busy]
        return tuple(sorted(list(self.gates) + idle, key=lambda g: min(g.qubits)))

    @functools.cached_property
    def tableau(self) -> CliffordTableau:
        out = CliffordTableau.identity(self.n)
        for g in self.gates:
            out = compose(embed(g.local_tableau, g.qubits, self.n), out)
        return out

    def is_hermitian(self) -> bool:
        return is_hermitian(self.tableau)

    def unit_of(self, qubit: int) -> Gate:
        for u in self.units:
            if qubit in u.qubits:
                return u
        raise KeyError(qubit)

    def to_json(self) -> list[dict]:
        return [g.to_json() for g in self.gates]
