import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import dense
from spl_learn.model import (
    DensePauliChannel,
    ModelSpec,
    NoiseModel,
    fidelities,
    fidelities_to_probabilities,
    fidelity,
    generate_terms,
    probabilities_to_fidelities,
    sample_error,
    to_dense,
)
from spl_learn.pauli import all_paulis, format_pauli, parse


def line(n, ell):
    return ModelSpec.from_edges(n, [(i, i + 1) for i in range(n - 1)], ell)


def ring(n, ell):
    return ModelSpec.from_edges(n, [(i, (i + 1) % n) for i in range(n)], ell)


def count_terms(spec):
    # union of 4^|S| - 1 over supports, minus overlaps, counted by brute force
    seen = set()
    for s in spec.supports:
        for letters in itertools.product("IXYZ", repeat=len(s)):
            if any(c != "I" for c in letters):
                seen.add(tuple(sorted(zip(s, letters))))
    return len({tuple((q, c) for q, c in key if c != "I") for key in seen})


@pytest.mark.parametrize("spec,expected", [
    (line(6, 1), 18),
    (line(6, 2), 18 + 5 * 9),
    (ring(5, 2), 15 + 5 * 9),
    (line(4, 3), 12 + 5 * 9 + 2 * 27),  # {0,2} and {1,3} sit inside triples
])
def test_term_counts(spec, expected):
    terms = generate_terms(spec)
    assert len(terms) == len(set(terms)) == expected == count_terms(spec)


def test_supports_are_connected_subsets():
    spec = line(5, 3)
    assert (0, 2) not in spec.supports
    assert (1, 2, 3) in spec.supports
    assert spec.locality == 3


def test_bad_support_rejected():
    with pytest.raises(ValueError):
        ModelSpec(3, ((0, 5),))


def test_noise_model_validation():
    with pytest.raises(ValueError):
        NoiseModel(2, (parse("XI"),), (-0.1,))
    with pytest.raises(ValueError):
        NoiseModel(2, (parse("II"),), (0.1,))
    with pytest.raises(ValueError):
        NoiseModel(2, (parse("XI"), parse("XI")), (0.1, 0.2))


@st.composite
def small_models(draw, n=None):
    n = n or draw(st.integers(1, 3))
    spec = line(n, min(2, n))
    terms = generate_terms(spec)
    rates = draw(st.lists(st.floats(0, 0.3), min_size=len(terms), max_size=len(terms)))
    return NoiseModel(n, tuple(terms), tuple(rates))


def kraus_channel(model: NoiseModel):
    """Apply the model to a matrix by composing ``w rho + (1 - w) P rho P``."""
    def apply(rho):
        for t, w in zip(model.terms, model.weights):
            P = dense(format_pauli(t))
            rho = w * rho + (1 - w) * P @ rho @ P
        return rho
    return apply


@settings(max_examples=25, deadline=None)
@given(small_models())
def test_fidelity_matches_matrix_channel(model):
    apply = kraus_channel(model)
    for b in all_paulis(model.n):
        B = dense(format_pauli(b))
        expected = np.real(np.trace(B @ apply(B))) / 2**model.n
        assert fidelity(model, b) == pytest.approx(expected, abs=1e-12)


@settings(max_examples=25, deadline=None)
@given(small_models())
def test_fidelity_matches_dense_composition(model):
    ch = to_dense(model)
    assert ch.is_valid()
    assert np.allclose(ch.fidelities, fidelities(model, all_paulis(model.n)), atol=1e-12)


def test_fidelity_formula_example():
    m = NoiseModel(2, (parse("XI"), parse("ZZ")), (0.1, 0.2))
    # ZI anticommutes with XI only; YZ anticommutes with both
    assert fidelity(m, parse("ZI")) == pytest.approx(math.exp(-0.2))
    assert fidelity(m, parse("YZ")) == pytest.approx(math.exp(-0.2 - 0.4))
    assert fidelity(m, parse("XX")) == pytest.approx(1.0)


@given(st.integers(1, 4), st.integers(0, 2**32 - 1))
def test_transform_roundtrip(n, seed):
    p = np.random.default_rng(seed).dirichlet(np.ones(4**n))
    f = probabilities_to_fidelities(p, n)
    assert f[0] == pytest.approx(1.0)
    assert np.allclose(fidelities_to_probabilities(f, n), p)


def test_dense_channel_constructors_agree():
    p = np.random.default_rng(3).dirichlet(np.ones(16))
    a = DensePauliChannel.from_probabilities(p, 2)
    b = DensePauliChannel.from_fidelities(a.fidelities, 2)
    assert np.allclose(a.probabilities, b.probabilities)


def test_concat_multiplies_fidelities():
    terms = generate_terms(line(3, 2))
    rng = np.random.default_rng(0)
    a = NoiseModel(3, tuple(terms), tuple(rng.uniform(0, 0.05, len(terms))))
    b = NoiseModel(3, tuple(terms[:5]), tuple(rng.uniform(0, 0.05, 5)))
    ps = all_paulis(3)
    assert np.allclose(fidelities(a.concat(b), ps), fidelities(a, ps) * fidelities(b, ps))


def test_json_roundtrip():
    terms = generate_terms(line(3, 2))
    m = NoiseModel(3, tuple(terms), tuple(np.linspace(0, 0.02, len(terms))))
    assert NoiseModel.from_json(m.to_json()) == m
    spec = line(4, 2)
    assert ModelSpec.from_json(spec.to_json()) == spec


def test_sample_error_distribution():
    m = NoiseModel(2, (parse("XI"), parse("ZZ"), parse("YX")), (0.2, 0.1, 0.05))
    ch = to_dense(m)
    rng = np.random.default_rng(11)
    draws = 20000
    counts = np.zeros(16)
    for _ in range(draws):
        counts[sample_error(m, rng).index()] += 1
    expected = ch.probabilities * draws
    mask = expected > 0
    assert np.all(counts[~mask] == 0)
    z = (counts[mask] - expected[mask]) / np.sqrt(expected[mask])
    assert np.abs(z).max() < 5
