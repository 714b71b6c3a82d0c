"""Sparse Pauli-Lindblad noise models and a dense Pauli-channel oracle.

A model is a list of Pauli generators ``P_k`` with rates ``lambda_k >= 0``.
The channel is the product of the commuting simple channels
``rho -> w_k rho + (1 - w_k) P_k rho P_k`` with ``w_k = (1 + exp(-2 lambda_k)) / 2``,
and the Pauli fidelity of ``P_b`` is ``exp(-2 sum_k lambda_k <b, k>)``.
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

import numpy as np

from .pauli import PauliString, enumerate_nonidentity, format_pauli, parse, sp_inner

MAX_DENSE_QUBITS = 6


@dataclass(frozen=True)
class ModelSpec:
    """Support sets of an ``ell``-local model on ``n`` qubits."""

    n: int
    supports: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        cleaned = []
        for s in self.supports:
            s = tuple(sorted(set(int(q) for q in s)))
            if not s:
                raise ValueError("support sets must be non-empty")
            if s[0] < 0 or s[-1] >= self.n:
                raise ValueError(f"support {s} out of range for {self.n} qubits")
            cleaned.append(s)
        if not cleaned:
            raise ValueError("model needs at least one support set")
        object.__setattr__(self, "supports", tuple(cleaned))

    @property
    def locality(self) -> int:
        return max(len(s) for s in self.supports)

    @classmethod
    def from_edges(
        cls, n: int, edges: Iterable[Sequence[int]], locality: int = 2
    ) -> ModelSpec:
        """Connected qubit subsets of size ``<= locality`` in the graph ``edges``.

        ``locality=1`` gives singletons only; ``locality=2`` singletons plus edges.
        """
        adj: dict[int, set[int]] = {q: set() for q in range(n)}
        for a, b in edges:
            if a == b:
                continue
            adj[a].add(b)
            adj[b].add(a)
        found: set[frozenset[int]] = {frozenset({q}) for q in range(n)}
        frontier = set(found)
        for _ in range(locality - 1):
            nxt = set()
            for s in frontier:
                for q in s:
                    for r in adj[q] - s:
                        nxt.add(s | {r})
            found |= nxt
            frontier = nxt
        ordered = sorted((tuple(sorted(s)) for s in found), key=lambda s: (len(s), s))
        return cls(n, tuple(ordered))

    def to_json(self) -> dict:
        return {"n": self.n, "supports": [list(s) for s in self.supports]}

    @classmethod
    def from_json(cls, data: dict) -> ModelSpec:
        return cls(int(data["n"]), tuple(tuple(s) for s in data["supports"]))


def generate_terms(spec: ModelSpec) -> list[PauliString]:
    """Union of all non-identity Paulis supported on each support set, sorted."""
    terms: set[PauliString] = set()
    for s in spec.supports:
        terms.update(enumerate_nonidentity(s, spec.n))
    return sorted(terms, key=PauliString.sort_key)


@dataclass(frozen=True)
class NoiseModel:
    """Generators ``terms`` with nonnegative ``rates``."""

    n: int
    terms: tuple[PauliString, ...]
    rates: tuple[float, ...]

    def __post_init__(self) -> None:
        terms = tuple(self.terms)
        rates = tuple(float(r) for r in self.rates)
        if len(terms) != len(rates):
            raise ValueError("terms and rates differ in length")
        if len(set(terms)) != len(terms):
            raise ValueError("model terms must be distinct")
        for t in terms:
            if t.n != self.n:
                raise ValueError("term qubit count does not match model")
            if t.is_identity():
                raise ValueError("identity is not a valid generator")
        if any(not np.isfinite(r) or r < 0 for r in rates):
            raise ValueError("rates must be finite and nonnegative")
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "rates", rates)

    @classmethod
    def zero(cls, terms: Sequence[PauliString]) -> NoiseModel:
        return cls(terms[0].n, tuple(terms), (0.0,) * len(terms))

    @property
    def weights(self) -> np.ndarray:
        """Probabilities ``w_k`` of *not* applying ``P_k``."""
        return (1.0 + np.exp(-2.0 * np.asarray(self.rates))) / 2.0

    def rate(self, term: PauliString) -> float:
        try:
            return self.rates[self.terms.index(term)]
        except ValueError:
            return 0.0

    def concat(self, other: NoiseModel) -> NoiseModel:
        """Model of the channel ``self`` followed by ``other`` (rates add on shared terms)."""
        merged: dict[PauliString, float] = dict(zip(self.terms, self.rates))
        for t, r in zip(other.terms, other.rates):
            merged[t] = merged.get(t, 0.0) + r
        keys = sorted(merged, key=PauliString.sort_key)
        return NoiseModel(self.n, tuple(keys), tuple(merged[k] for k in keys))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "terms": [format_pauli(t) for t in self.terms],
            "lambda": list(self.rates),
        }

    @classmethod
    def from_json(cls, data: dict) -> NoiseModel:
        terms = tuple(parse(t) for t in data["terms"])
        return cls(int(data["n"]), terms, tuple(data["lambda"]))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def fidelity(model: NoiseModel, b: PauliString) -> float:
    """Pauli fidelity of ``b`` under ``model``."""
    if b.n != model.n:
        raise ValueError("qubit count mismatch")
    total = 0.0
    for term, lam in zip(model.terms, model.rates):
        if sp_inner(b, term):
            total += lam
    return float(np.exp(-2.0 * total))


def fidelities(model: NoiseModel, paulis: Sequence[PauliString]) -> np.ndarray:
    """Vectorised :func:`fidelity` over several Paulis."""
    if not model.terms:
        return np.ones(len(paulis))
    M = np.array([[sp_inner(b, k) for k in model.terms] for b in paulis], dtype=float)
    M = M.reshape(len(paulis), len(model.terms))
    return np.exp(-2.0 * M @ np.asarray(model.rates))


def term_bit_matrix(terms: Sequence[PauliString]) -> np.ndarray:
    """``(K, 2n)`` 0/1 matrix of term bits in ``x_0..x_{n-1}, z_0..z_{n-1}`` order."""
    if not terms:
        return np.zeros((0, 0), dtype=np.uint8)
    n = terms[0].n
    out = np.zeros((len(terms), 2 * n), dtype=np.uint8)
    for i, t in enumerate(terms):
        for q in range(n):
            out[i, q] = (t.x >> q) & 1
            out[i, n + q] = (t.z >> q) & 1
    return out


def sample_error_bits(model: NoiseModel, rng: np.random.Generator, shots: int) -> np.ndarray:
    """Sample ``shots`` errors as a ``(shots, 2n)`` uint8 array of symplectic bits."""
    n = model.n
    if not model.terms:
        return np.zeros((shots, 2 * n), dtype=np.uint8)
    flip = 1.0 - model.weights
    hits = rng.random((shots, len(model.terms))) < flip
    bits = term_bit_matrix(model.terms).astype(np.float32)
    counts = hits.astype(np.float32) @ bits
    return (counts.astype(np.int64) & 1).astype(np.uint8)


def sample_error(model: NoiseModel, rng: np.random.Generator) -> PauliString:
    """One error: each ``P_k`` is included independently with probability ``1 - w_k``."""
    x = z = 0
    flip = 1.0 - model.weights
    draws = rng.random(len(model.terms))
    for term, p, u in zip(model.terms, flip, draws):
        if u < p:
            x ^= term.x
            z ^= term.z
    return PauliString(model.n, x, z)


# ---------------------------------------------------------------------------
# Dense oracle


def _swap_halves(n: int) -> np.ndarray:
    idx = np.arange(4**n)
    mask = (1 << n) - 1
    return ((idx & mask) << n) | (idx >> n)


def _walsh_hadamard(v: np.ndarray) -> np.ndarray:
    """Unnormalised Walsh-Hadamard transform over the index bits."""
    out = np.array(v, dtype=float, copy=True)
    h = 1
    size = out.shape[0]
    while h < size:
        out = out.reshape(-1, 2, h)
        a = out[:, 0, :].copy()
        b = out[:, 1, :]
        out[:, 0, :] = a + b
        out[:, 1, :] = a - b
        out = out.reshape(size)
        h *= 2
    return out


def probabilities_to_fidelities(probs: np.ndarray, n: int) -> np.ndarray:
    """``f_b = sum_i alpha_i (-1)^<b,i>`` via a fast transform."""
    swap = _swap_halves(n)
    # <b, i> = parity(b & swap(i)), so f = WHT(alpha o swap)
    return _walsh_hadamard(np.asarray(probs)[swap])


def fidelities_to_probabilities(fids: np.ndarray, n: int) -> np.ndarray:
    swap = _swap_halves(n)
    return (_walsh_hadamard(np.asarray(fids)) / 4**n)[swap]


@dataclass(frozen=True)
class DensePauliChannel:
    """Explicit Pauli channel on ``n <= 6`` qubits.

    ``fidelities`` and ``probabilities`` are indexed by :meth:`PauliString.index`.
    """

    n: int
    fidelities: np.ndarray = field(repr=False)
    probabilities: np.ndarray = field(repr=False)

    @classmethod
    def from_probabilities(cls, probs: np.ndarray, n: int) -> DensePauliChannel:
        probs = np.asarray(probs, dtype=float)
        return cls(n, probabilities_to_fidelities(probs, n), probs)

    @classmethod
    def from_fidelities(cls, fids: np.ndarray, n: int) -> DensePauliChannel:
        fids = np.asarray(fids, dtype=float)
        return cls(n, fids, fidelities_to_probabilities(fids, n))

    def fidelity(self, b: PauliString) -> float:
        return float(self.fidelities[b.index()])

    def probability(self, p: PauliString) -> float:
        return float(self.probabilities[p.index()])

    def is_valid(self, atol: float = 1e-12) -> bool:
        return bool(
            np.all(self.probabilities >= -atol)
            and abs(self.probabilities.sum() - 1.0) <= atol
            and abs(self.fidelities[0] - 1.0) <= atol
        )


def to_dense(model: NoiseModel) -> DensePauliChannel:
    """Dense channel built by composing the simple channels one by one.

    The construction works on error probabilities only, so its fidelities are an
    independent check of :func:`fidelity`.
    """
    n = model.n
    if n > MAX_DENSE_QUBITS:
        raise ValueError(f"dense oracle limited to {MAX_DENSE_QUBITS} qubits")
    probs = np.zeros(4**n)
    probs[0] = 1.0
    idx = np.arange(4**n)
    for term, w in zip(model.terms, model.weights):
        probs = w * probs + (1.0 - w) * probs[idx ^ term.index()]
    return DensePauliChannel.from_probabilities(probs, n)
