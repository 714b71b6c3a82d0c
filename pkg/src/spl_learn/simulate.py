"""Learning circuits: repeated noisy layers measured in a fixed Pauli basis.

A circuit prepares an eigenstate of ``basis``, applies the noisy layer
``depth`` times (noise first, then the ideal layer) and measures every
qubit in ``basis``.  Any sub-pattern ``P`` of the basis is read off from the
same shots.  Depth is even, so the ideal circuit maps ``P`` back to ``+P``.

In ``pauli`` mode, when a correction schedule exists for the basis, every
second layer is wrapped as ``R_post O R_pre``.  In ``rotation`` mode every
layer is rotation-twirled with elements drawn independently per shot.  The
Pauli twirl that turns general noise into Pauli noise is not simulated
because the planted noise is already a Pauli channel.

Two evaluators share one plan: an exact one that returns
``A (f_P f_P')^{depth/2}`` and a Pauli-frame Monte Carlo sampler.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from .clifford import CliffordTableau, compose, conjugate, embed, inverse
from .layer import Layer
from .model import NoiseModel, fidelities
from .pauli import PauliString, is_subpattern
from .twirl import LayerTwirl, layer_correction

MODES = ("pauli", "rotation")


@dataclass(frozen=True)
class Spam:
    """Per-qubit state-preparation and readout flip probabilities."""

    prep: tuple[float, ...]
    readout: tuple[float, ...]

    def __post_init__(self) -> None:
        for p in self.prep + self.readout:
            if not 0.0 <= p < 0.5:
                raise ValueError("flip probabilities must lie in [0, 1/2)")
        if len(self.prep) != len(self.readout):
            raise ValueError("prep and readout lists differ in length")

    @classmethod
    def uniform(cls, n: int, prep: float = 0.0, readout: float = 0.0) -> Spam:
        return cls((float(prep),) * n, (float(readout),) * n)

    def amplitude(self, p: PauliString) -> float:
        """Attenuation of ``<P>`` from independent flips on its support."""
        out = 1.0
        for q in p.support:
            out *= (1 - 2 * self.prep[q]) * (1 - 2 * self.readout[q])
        return out


@dataclass(frozen=True)
class CircuitPlan:
    """Layer, basis and the Paulis read out, with their block partners."""

    layer: Layer
    basis: PauliString
    mode: str
    observed: tuple[PauliString, ...]
    partners: tuple[PauliString, ...]
    pre: CliffordTableau | None = field(default=None, compare=False)
    post: CliffordTableau | None = field(default=None, compare=False)


def plan_circuit(layer: Layer, basis: PauliString, observed: Sequence[PauliString], mode: str) -> CircuitPlan:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if basis.weight != layer.n:
        raise ValueError("basis needs a letter on every qubit")
    for p in observed:
        if not is_subpattern(p, basis):
            raise ValueError(f"{p} is not measurable in basis {basis}")
    pre = post = None
    if mode == "pauli":
        pre, post, _ = layer_correction(layer, basis)
    partners = []
    for p in observed:
        image = conjugate(layer.tableau, p).pauli
        partners.append(conjugate(pre, image).pauli if pre is not None else image)
    return CircuitPlan(layer, basis, mode, tuple(observed), tuple(partners), pre, post)


def inverse_partner(layer: Layer, basis: PauliString, m: PauliString, mode: str) -> PauliString:
    """The ``P`` whose block partner is ``m``."""
    if mode == "pauli":
        pre, _, _ = layer_correction(layer, basis)
        m = conjugate(inverse(pre), m).pauli
    return conjugate(layer.tableau, m).pauli


def effective_fidelities(model: NoiseModel, layer: Layer, paulis: Sequence[PauliString], mode: str,
                         class1: str = "full") -> np.ndarray:
    """Fidelities seen by the learning circuit: true ones, or group means under rotation twirling."""
    if mode == "pauli":
        return fidelities(model, paulis)
    lt = LayerTwirl(layer, class1)
    return np.array([fidelities(model, lt.group_of(p)).mean() for p in paulis])


def exact_expectations(plan: CircuitPlan, model: NoiseModel, depth: int, spam: Spam | None = None,
                       class1: str = "full") -> np.ndarray:
    """``A_P (f_P f_P')^{depth/2}`` for every observed ``P``."""
    _check_depth(depth)
    f1 = effective_fidelities(model, plan.layer, plan.observed, plan.mode, class1)
    f2 = effective_fidelities(model, plan.layer, plan.partners, plan.mode, class1)
    amp = np.array([spam.amplitude(p) if spam else 1.0 for p in plan.observed])
    return amp * (f1 * f2) ** (depth // 2)


def _check_depth(depth: int) -> None:
    if depth < 0 or depth % 2:
        raise ValueError(f"depth must be a nonnegative even integer, got {depth}")


class FrameMap:
    """A Clifford's action on error frames stored as ``x | z << n`` integer codes.

    The map is linear over GF(2), so the image of a code is the XOR of
    per-byte table lookups.  Signs are dropped: they are global phases of
    the frame.
    """

    def __init__(self, tab: CliffordTableau) -> None:
        s = tab.symplectic_matrix().astype(np.uint64)
        nbits = s.shape[0]
        row_codes = (s << np.arange(nbits, dtype=np.uint64)[None, :]).sum(axis=1, dtype=np.uint64)
        self.chunks = (nbits + 7) // 8
        byte = np.arange(256, dtype=np.uint64)
        tables = np.zeros((self.chunks, 256), dtype=np.uint64)
        for c in range(self.chunks):
            for j in range(8):
                i = 8 * c + j
                if i < nbits:
                    tables[c] ^= np.where((byte >> np.uint64(j)) & np.uint64(1), row_codes[i], np.uint64(0))
        self.tables = tables

    def __call__(self, codes: np.ndarray) -> np.ndarray:
        out = np.zeros_like(codes)
        for c in range(self.chunks):
            out ^= self.tables[c][(codes >> np.uint64(8 * c)) & np.uint64(0xFF)]
        return out


def _parity_masks(paulis: Sequence[PauliString], n: int) -> np.ndarray:
    # symplectic product with P: count overlaps of the frame's x with z_P and z with x_P
    return np.array([p.z | (p.x << n) for p in paulis], dtype=np.uint64)


def _parity(codes: np.ndarray, masks: np.ndarray) -> np.ndarray:
    return np.bitwise_count(codes[:, None] & masks[None, :]) & 1


def _sample_error_codes(codes: np.ndarray, term_codes: np.ndarray, flip: np.ndarray,
                        rng: np.random.Generator) -> None:
    """XOR each term into a Binomial-sized random subset of shots, in place."""
    shots = codes.shape[0]
    counts = rng.binomial(shots, flip)
    for code, c in zip(term_codes, counts):
        if c:
            rows = rng.choice(shots, size=int(c), replace=False)
            codes[rows] ^= code


@dataclass
class _UnitTwirl:
    pre: list[FrameMap]
    post: list[FrameMap]


def _unit_twirls(layer: Layer, class1: str) -> list[_UnitTwirl]:
    n = layer.n
    out = []
    lt = LayerTwirl(layer, class1)
    for unit, tw in zip(layer.units, lt.twirls):
        op = unit.local_tableau
        pres, posts = [], []
        for r in tw.tableaus():
            pres.append(FrameMap(embed(r, unit.qubits, n)))
            posts.append(FrameMap(embed(compose(op, compose(inverse(r), op)), unit.qubits, n)))
        out.append(_UnitTwirl(pres, posts))
    return out


def _apply_twirl(codes: np.ndarray, maps: list[FrameMap], choice: np.ndarray) -> None:
    for c, fmap in enumerate(maps):
        rows = np.flatnonzero(choice == c)
        if rows.size:
            codes[rows] = fmap(codes[rows])


def sample_expectations(plan: CircuitPlan, model: NoiseModel, depth: int, shots: int,
                        rng: np.random.Generator, spam: Spam | None = None,
                        class1: str = "full", twirl_samples: int | None = None) -> np.ndarray:
    """Pauli-frame Monte Carlo estimate of ``<P>`` for every observed ``P``.

    The accumulated error of each shot is one integer code ``x | z << n``.
    """
    _check_depth(depth)
    if shots < 1:
        raise ValueError("shots must be positive")
    n = plan.layer.n
    if 2 * n > 64:
        raise ValueError("frame simulation supports at most 32 qubits")
    codes = np.zeros(shots, dtype=np.uint64)
    basis = plan.basis
    if spam is not None:
        prep = rng.random((shots, n)) < np.asarray(spam.prep)
        for q in range(n):
            # X flips a Z eigenstate, Z flips X and Y eigenstates
            bit = n + q if basis.letter(q) in "XY" else q
            codes[prep[:, q]] ^= np.uint64(1 << bit)
    layer_map = FrameMap(plan.layer.tableau)
    corrected = plan.mode == "pauli" and plan.pre is not None and plan.pre != CliffordTableau.identity(n)
    if corrected:
        pre_map = FrameMap(plan.pre)
        # R_pre acts before the noise, O then R_post after it
        layer_post_map = FrameMap(compose(plan.post, plan.layer.tableau))
    units = _unit_twirls(plan.layer, class1) if plan.mode == "rotation" else []
    term_codes = np.array([t.x | (t.z << n) for t in model.terms], dtype=np.uint64)
    flip = 1.0 - model.weights
    for i in range(depth):
        if twirl_samples is None:
            choices = [rng.integers(len(u.pre), size=shots) for u in units]
        else:
            cycle = np.arange(shots) % twirl_samples
            choices = [rng.integers(len(u.pre), size=twirl_samples)[cycle] for u in units]
        wrap = corrected and i % 2 == 1
        if wrap:
            codes = pre_map(codes)
        for u, ch in zip(units, choices):
            _apply_twirl(codes, u.pre, ch)
        _sample_error_codes(codes, term_codes, flip, rng)
        if wrap:
            codes = layer_post_map(codes)
        else:
            codes = layer_map(codes)
        for u, ch in zip(units, choices):
            _apply_twirl(codes, u.post, ch)
    parity = _parity(codes, _parity_masks(plan.observed, n))
    if spam is not None:
        flips = rng.random((shots, n)) < np.asarray(spam.readout)
        flip_codes = (flips.astype(np.uint64) << np.arange(n, dtype=np.uint64)).sum(axis=1, dtype=np.uint64)
        supp = np.array([sum(1 << q for q in p.support) for p in plan.observed], dtype=np.uint64)
        parity ^= _parity(flip_codes, supp)
    return 1.0 - 2.0 * parity.mean(axis=0)
