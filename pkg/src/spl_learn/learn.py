"""Learning a sparse Pauli-Lindblad model from learning-circuit data.

The pipeline is: model terms, basis selection, simulated learning circuits,
exponential decay fits, resolution of pair products into single fidelities
and a nonnegative least-squares fit of ``M(B, K) lambda = -log(f) / 2``.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from .basisselect import Selection, select_bases, verify_coverage
from .clifford import conjugate
from .layer import Layer
from .model import ModelSpec, NoiseModel, fidelities, generate_terms
from .pauli import PauliString, format_pauli, is_subpattern, parse, sp_inner
from .simulate import (
    MODES,
    CircuitPlan,
    Spam,
    exact_expectations,
    inverse_partner,
    plan_circuit,
    sample_expectations,
)
from .twirl import LayerTwirl

log = logging.getLogger(__name__)

DEFAULT_DEPTHS = (2, 4, 8, 16)


class LearningError(RuntimeError):
    """A pipeline stage failed; ``stage`` names it."""

    def __init__(self, stage: str, message: str):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage


# ---------------------------------------------------------------------------
# Design matrix


@dataclass(frozen=True)
class DesignMatrix:
    """Rows ``B``, columns ``K``.

    Without ``partners`` entry ``(b, k)`` is ``<b, k>``.  A row with partner
    ``b'`` describes the pair product ``f_b f_b'`` and holds
    ``(<b, k> + <b', k>) / 2``, so ``exp(-2 row . lambda) = sqrt(f_b f_b')``.
    """

    rows: tuple[PauliString, ...]
    cols: tuple[PauliString, ...]
    matrix: np.ndarray = field(repr=False, compare=False)
    partners: tuple[PauliString, ...] | None = None


def design_matrix(B: Sequence[PauliString], K: Sequence[PauliString],
                  partners: Sequence[PauliString] | None = None) -> DesignMatrix:
    """Binary matrix with entries ``<b, k>`` (pair rows averaged when ``partners`` is given)."""
    mat = np.array([[sp_inner(b, k) for k in K] for b in B], dtype=float).reshape(len(B), len(K))
    if partners is None:
        return DesignMatrix(tuple(B), tuple(K), mat)
    if len(partners) != len(B):
        raise ValueError("one partner per row")
    other = np.array([[sp_inner(b, k) for k in K] for b in partners], dtype=float).reshape(len(B), len(K))
    return DesignMatrix(tuple(B), tuple(K), (mat + other) / 2, tuple(partners))


@dataclass(frozen=True)
class RankReport:
    full_rank: bool
    rank: int
    columns: int
    witness: np.ndarray | None = field(default=None, compare=False)
    reason: str = ""

    def to_json(self) -> dict:
        out = {"full_rank": self.full_rank, "rank": self.rank, "columns": self.columns}
        if self.witness is not None:
            out["witness"] = [float(w) for w in self.witness]
            out["reason"] = self.reason
        return out


def rank_check(m: DesignMatrix, tol: float = 1e-9) -> RankReport:
    """Column rank over the reals with a null-space witness when deficient.

    Zero and duplicate columns are reported as ``e_i`` and ``e_i - e_j``;
    otherwise the witness is the last right-singular vector.
    """
    A = m.matrix
    ncols = A.shape[1]
    if ncols == 0:
        return RankReport(True, 0, 0)
    zero = np.flatnonzero(~A.any(axis=0))
    if zero.size:
        w = np.zeros(ncols)
        w[zero[0]] = 1.0
        return RankReport(False, int(np.linalg.matrix_rank(A, tol)), ncols, w, f"zero column {int(zero[0])}")
    seen: dict[bytes, int] = {}
    for j in range(ncols):
        key = A[:, j].tobytes()
        if key in seen:
            w = np.zeros(ncols)
            w[seen[key]], w[j] = 1.0, -1.0
            return RankReport(False, int(np.linalg.matrix_rank(A, tol)), ncols, w,
                              f"columns {seen[key]} and {j} are equal")
        seen[key] = j
    _, s, vt = np.linalg.svd(A)
    rank = int(np.sum(s > tol * max(A.shape) * (s[0] if s.size else 1.0)))
    if rank == ncols:
        return RankReport(True, rank, ncols)
    return RankReport(False, rank, ncols, vt[-1], "singular value below tolerance")


# ---------------------------------------------------------------------------
# Decay fitting


@dataclass(frozen=True)
class DecaySeries:
    """Expectation of ``pauli`` measured in ``basis`` at several even depths."""

    basis: PauliString
    pauli: PauliString
    partner: PauliString
    depths: tuple[int, ...]
    estimates: tuple[float, ...]
    shots: int | None = None

    def __post_init__(self) -> None:
        if len(self.depths) != len(self.estimates):
            raise ValueError("one estimate per depth")
        if any(d % 2 for d in self.depths):
            raise ValueError("depths must be even")
        if list(self.depths) != sorted(set(self.depths)):
            raise ValueError("depths must be strictly increasing")


@dataclass(frozen=True)
class DecayFit:
    f_pair: float
    amplitude: float
    variance: float
    depths_used: tuple[int, ...]


def _log_linear(d: np.ndarray, e: np.ndarray, w: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    X = np.stack([np.ones_like(d), d / 2], axis=1)
    XtW = X.T * w
    cov = np.linalg.inv(XtW @ X)
    return cov @ (XtW @ np.log(e)), cov


def fit_decay(series: DecaySeries, iterations: int = 50) -> DecayFit:
    """Fit ``E_k = A f_pair^(k/2)`` to a depth series.

    Exact data (no shots) is fitted in log space, where the model is linear.
    Sampled data is fitted by weighted nonlinear least squares in ``E``
    itself, with the binomial variance ``(1 - E^2) / shots`` of the *fitted*
    curve as weights, started from a log-space fit of the positive points.
    Weighting by the fitted rather than the observed values avoids the
    upward bias of favouring points that fluctuated high, and points at or
    below zero stay in the fit.  The variance of ``f_pair`` comes from the
    Gauss-Newton normal matrix at the optimum.
    """
    d = np.asarray(series.depths, dtype=float)
    e = np.asarray(series.estimates, dtype=float)
    pos = e > 0
    if pos.sum() < 2:
        raise LearningError("fit", f"fewer than two positive estimates for {format_pauli(series.pauli)}")
    if not series.shots:
        if not pos.all():
            raise LearningError("fit", f"non-positive exact expectation for {format_pauli(series.pauli)}")
        coef, _ = _log_linear(d, e, np.ones_like(d))
        f_pair = float(min(math.exp(coef[1]), 1.0))
        return DecayFit(f_pair, float(math.exp(coef[0])), 0.0, tuple(int(k) for k in d))
    shots = series.shots
    floor = 1.0 / shots
    var0 = np.maximum(1.0 - e[pos] ** 2, floor) / shots
    coef, _ = _log_linear(d[pos], e[pos], e[pos] ** 2 / var0)
    log_a, log_p = coef
    m = d / 2
    for _ in range(iterations):
        model = np.exp(log_a + m * log_p)
        w = shots / np.maximum(1.0 - model**2, floor)
        J = np.stack([model, m * model], axis=1)
        JtW = J.T * w
        H = JtW @ J
        step = np.linalg.solve(H, JtW @ (e - model))
        log_a, log_p = log_a + step[0], log_p + step[1]
        if np.abs(step).max() < 1e-12:
            break
    model = np.exp(log_a + m * log_p)
    w = shots / np.maximum(1.0 - model**2, floor)
    J = np.stack([model, m * model], axis=1)
    cov = np.linalg.inv((J.T * w) @ J)
    f_pair = float(min(math.exp(log_p), 1.0))
    variance = float(f_pair**2 * cov[1, 1])
    return DecayFit(f_pair, float(math.exp(log_a)), variance, tuple(int(k) for k in d))


# ---------------------------------------------------------------------------
# Resolution of pair products

CATEGORIES = ("direct", "pair", "other-pair")


@dataclass(frozen=True)
class Estimate:
    value: float
    variance: float
    basis: str
    partner: str
    category: str
    symmetry_resolved: bool
    strong_assumption: bool
    averaged_group: bool
    count: int = 1

    def to_json(self) -> dict:
        return {
            "value": self.value, "variance": self.variance, "basis": self.basis,
            "partner": self.partner, "category": self.category,
            "symmetry_resolved": self.symmetry_resolved,
            "strong_assumption": self.strong_assumption,
            "averaged_group": self.averaged_group, "count": self.count,
        }


@dataclass(frozen=True)
class FidelityEstimates:
    targets: tuple[PauliString, ...]
    estimates: tuple[Estimate, ...]

    def values(self) -> np.ndarray:
        return np.array([e.value for e in self.estimates])

    def variances(self) -> np.ndarray:
        return np.array([e.variance for e in self.estimates])

    def as_dict(self) -> dict[str, float]:
        return {format_pauli(b): e.value for b, e in zip(self.targets, self.estimates)}


@dataclass(frozen=True)
class PairFit:
    series: DecaySeries
    fit: DecayFit


def _units_touched(layer: Layer, p: PauliString) -> int:
    return len({layer.units.index(layer.unit_of(q)) for q in p.support})


def _combine(fits: Sequence[PairFit]) -> tuple[float, float]:
    """Inverse-variance mean of ``sqrt(f_pair)``; plain mean when variances are zero."""
    vals = np.array([math.sqrt(pf.fit.f_pair) for pf in fits])
    vars_ = np.array([pf.fit.variance / (4 * pf.fit.f_pair) if pf.fit.f_pair > 0 else math.inf
                      for pf in fits])
    if np.all(vars_ > 0) and np.all(np.isfinite(vars_)):
        w = 1.0 / vars_
        return float(np.sum(w * vals) / np.sum(w)), float(1.0 / np.sum(w))
    var = float(vars_.mean()) / len(vals) if np.all(np.isfinite(vars_)) else math.inf
    return float(vals.mean()), var


def pair_estimates(pairs: Sequence[PairFit]) -> tuple[list[PauliString], list[PauliString], np.ndarray, np.ndarray]:
    """Distinct measured pairs with combined ``sqrt(f_P f_P')`` estimates.

    Returns ``(firsts, partners, values, variances)`` in order of first
    appearance; ``(P, P')`` and ``(P', P)`` count as the same pair.
    """
    groups: dict[tuple[PauliString, PauliString], list[PairFit]] = {}
    for pf in pairs:
        a, b = pf.series.pauli, pf.series.partner
        k = (a, b) if a.index() <= b.index() else (b, a)
        groups.setdefault(k, []).append(pf)
    firsts, partners, vals, vars_ = [], [], [], []
    for (a, b), fits in groups.items():
        v, var = _combine(fits)
        firsts.append(a)
        partners.append(b)
        vals.append(v)
        vars_.append(var)
    return firsts, partners, np.array(vals), np.array(vars_)


def resolve_fidelities(
    pairs: Sequence[PairFit],
    targets: Sequence[PauliString],
    layer: Layer,
    mode: str = "pauli",
    class1: str = "full",
) -> FidelityEstimates:
    """One fidelity per target from the pair fits.

    A pair ``(P, P')`` contributes ``sqrt(f_P f_P')`` to target ``b`` when
    ``b`` is ``P`` or ``P'`` (rotation mode: up to averaging groups).  Its
    category is ``direct`` when ``P'`` equals ``P``, ``pair`` when the pair
    is ``(b, O b)`` and ``other-pair`` otherwise.  The best category
    available wins; estimates within it are combined by inverse variance.
    """
    lt = LayerTwirl(layer, class1) if mode == "rotation" else None

    def key(p: PauliString) -> PauliString:
        return lt.group_of(p)[0] if lt is not None else p

    by_key: dict[PauliString, list[tuple[PairFit, PauliString]]] = {}
    for pf in pairs:
        for member, other in ((pf.series.pauli, pf.series.partner), (pf.series.partner, pf.series.pauli)):
            by_key.setdefault(key(member), []).append((pf, other))
    out = []
    for b in targets:
        kb = key(b)
        image = key(conjugate(layer.tableau, b).pauli)
        found: dict[str, list[tuple[PairFit, PauliString]]] = {c: [] for c in CATEGORIES}
        seen = set()
        for pf, other in by_key.get(kb, []):
            if id(pf) in seen:
                continue
            seen.add(id(pf))
            ko = key(other)
            cat = "direct" if ko == kb else ("pair" if ko == image else "other-pair")
            found[cat].append((pf, other))
        cat = next((c for c in CATEGORIES if found[c]), None)
        if cat is None:
            raise LearningError("resolve", f"no measurement covers {format_pauli(b)}")
        # one partner only, so the estimate stays a single pair product
        groups: dict[PauliString, list[PairFit]] = {}
        for pf, other in found[cat]:
            groups.setdefault(key(other), []).append(pf)
        partner_key = max(groups, key=lambda k: (len(groups[k]), -groups[k][0].series.pauli.index()))
        chosen = groups[partner_key]
        value, variance = _combine(chosen)
        first = chosen[0]
        partner = first.series.partner if key(first.series.pauli) == kb else first.series.pauli
        symmetric = cat != "direct"
        strong = cat == "other-pair" or (symmetric and _units_touched(layer, b) > 1)
        grouped = lt is not None and len(lt.group_of(b)) > 1
        out.append(Estimate(value, variance, format_pauli(first.series.basis), format_pauli(partner),
                            cat, symmetric, strong, grouped, len(chosen)))
    return FidelityEstimates(tuple(targets), tuple(out))


# ---------------------------------------------------------------------------
# Nonnegative least squares


@dataclass(frozen=True)
class NNLSResult:
    x: np.ndarray
    iterations: int
    objective_history: tuple[float, ...]
    kkt_residual: float


def nnls(A: np.ndarray, y: np.ndarray, max_iter: int | None = None, tol: float = 1e-12) -> NNLSResult:
    """Lawson-Hanson active-set solver for ``min ||A x - y||^2 / 2`` with ``x >= 0``.

    Raises
    ------
    LearningError
        If the outer loop exceeds ``max_iter`` (default ``3 * ncols``).
    """
    A = np.asarray(A, dtype=float)
    y = np.asarray(y, dtype=float)
    m, ncols = A.shape
    max_iter = 3 * ncols + 10 if max_iter is None else max_iter
    x = np.zeros(ncols)
    passive = np.zeros(ncols, dtype=bool)
    scale = max(1.0, float(np.abs(A).max(initial=0.0)) * max(1.0, float(np.abs(y).max(initial=0.0))))
    eps = tol * scale * max(m, ncols)
    history = [0.5 * float(y @ y)]
    it = 0
    while True:
        w = A.T @ (y - A @ x)
        cand = np.where(~passive, w, -np.inf)
        if not (~passive).any() or cand.max() <= eps:
            break
        it += 1
        if it > max_iter:
            raise LearningError("nnls", f"no convergence after {max_iter} iterations")
        passive[int(np.argmax(cand))] = True
        while True:
            idx = np.flatnonzero(passive)
            z = np.zeros(ncols)
            z[idx] = np.linalg.lstsq(A[:, idx], y, rcond=None)[0]
            if np.all(z[idx] > 0):
                x = z
                break
            neg = idx[z[idx] <= 0]
            alpha = np.min(x[neg] / (x[neg] - z[neg]))
            x = x + alpha * (z - x)
            passive &= x > eps
            x[~passive] = 0.0
        r = A @ x - y
        history.append(0.5 * float(r @ r))
    grad = A.T @ (A @ x - y)
    kkt = float(max(np.abs(grad[x > 0]).max(initial=0.0), (-grad[x == 0]).max(initial=0.0), 0.0))
    return NNLSResult(x, it, tuple(history), kkt)


@dataclass(frozen=True)
class FitResult:
    terms: tuple[PauliString, ...]
    rates: np.ndarray = field(compare=False)
    residual: float
    rank: RankReport
    reconstruction_error: np.ndarray = field(compare=False)
    solver: NNLSResult | None = field(default=None, compare=False)

    @property
    def model(self) -> NoiseModel:
        n = self.terms[0].n
        return NoiseModel(n, self.terms, tuple(float(r) for r in self.rates))


def fit_model(m: DesignMatrix, f_hat: FidelityEstimates | np.ndarray) -> FitResult:
    """Solve the nonnegative fit for the rates."""
    f = f_hat.values() if isinstance(f_hat, FidelityEstimates) else np.asarray(f_hat, dtype=float)
    if np.any(f <= 0):
        raise LearningError("nnls", "fidelity estimates must be strictly positive")
    y = -np.log(f) / 2
    res = nnls(m.matrix, y)
    lam = res.x
    residual = float(np.linalg.norm(m.matrix @ lam - y))
    recon = np.exp(-2 * m.matrix @ lam) - f
    return FitResult(m.cols, lam, residual, rank_check(m), recon, res)


# ---------------------------------------------------------------------------
# End to end


@dataclass(frozen=True)
class LearnConfig:
    """Inputs of a simulated learning run.

    ``shots=None`` or ``exact=True`` selects the exact evaluator.  With
    ``twirl_samples`` set, each layer of a circuit draws that many random
    twirl instances and shots cycle over them; otherwise every shot draws its
    own.

    ``design`` picks the rows of the rate fit: ``"pair"`` uses one row per
    distinct measured pair ``(P, P')``, ``"symmetric"`` one row per target
    with the resolved single fidelity.  ``"auto"`` means ``pair`` in Pauli
    mode and ``symmetric`` in rotation mode.
    """

    layer: Layer
    spec: ModelSpec
    model: NoiseModel
    mode: str = "pauli"
    depths: tuple[int, ...] = DEFAULT_DEPTHS
    shots: int = 10_000
    exact: bool = False
    prep_flip: float | tuple[float, ...] = 0.0
    readout_flip: float | tuple[float, ...] = 0.0
    seed: int = 0
    crosstalk: tuple[tuple[int, ...], ...] = ()
    benchmark: tuple[PauliString, ...] | None = None
    class1: str = "full"
    exact_color: bool = False
    twirl_samples: int | None = None
    design: str = "auto"

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if self.design not in ("auto", "pair", "symmetric"):
            raise ValueError("design must be 'auto', 'pair' or 'symmetric'")
        if self.design == "pair" and self.mode == "rotation":
            raise ValueError("pair design needs Pauli mode")
        if self.twirl_samples is not None and self.twirl_samples < 1:
            raise ValueError("twirl_samples must be positive")
        if self.shots is not None and self.shots < 1:
            raise ValueError("shots must be positive")
        if len(self.depths) < 2 or any(d <= 0 or d % 2 for d in self.depths):
            raise ValueError("need at least two positive even depths")
        if self.layer.n != self.spec.n or self.model.n != self.spec.n:
            raise ValueError("layer, spec and model sizes differ")
        if not self.layer.is_hermitian():
            raise ValueError("layer must be Hermitian")
        self.spam  # validates probabilities

    @property
    def spam(self) -> Spam:
        n = self.spec.n

        def expand(p):
            return tuple(float(v) for v in p) if isinstance(p, (tuple, list)) else (float(p),) * n

        return Spam(expand(self.prep_flip), expand(self.readout_flip))

    @property
    def is_exact(self) -> bool:
        return self.exact or self.shots is None

    @property
    def design_kind(self) -> str:
        if self.design != "auto":
            return self.design
        return "pair" if self.mode == "pauli" else "symmetric"


def simulate_learning_circuit(cfg: LearnConfig, plan: CircuitPlan, depth: int,
                              rng: np.random.Generator | None = None) -> np.ndarray:
    """Expectations of ``plan.observed`` after ``depth`` noisy layers."""
    spam = cfg.spam
    if cfg.is_exact:
        return exact_expectations(plan, cfg.model, depth, spam, cfg.class1)
    if rng is None:
        raise ValueError("sampling needs an rng")
    return sample_expectations(plan, cfg.model, depth, cfg.shots, rng, spam, cfg.class1, cfg.twirl_samples)


def harvest(layer: Layer, basis: PauliString, targets: Sequence[PauliString], mode: str,
            class1: str = "full") -> list[PauliString]:
    """Sub-patterns of ``basis`` whose pair involves some target."""
    lt = LayerTwirl(layer, class1) if mode == "rotation" else None
    found: set[PauliString] = set()
    for b in targets:
        group = lt.group_of(b) if lt is not None else [b]
        cands = set(group)
        cands.update(inverse_partner(layer, basis, m, mode) for m in group)
        found.update(c for c in cands if is_subpattern(c, basis))
    return sorted(found, key=PauliString.sort_key)


@dataclass
class LearnResult:
    config: LearnConfig
    selection: Selection
    series: list[DecaySeries]
    pairs: list[PairFit]
    estimates: FidelityEstimates
    design: DesignMatrix
    fit: FitResult
    diagnostics: dict

    def to_json(self) -> dict:
        terms = [format_pauli(t) for t in self.fit.terms]
        return {
            "lambda": dict(zip(terms, (float(v) for v in self.fit.rates))),
            "fidelities": self.estimates.as_dict(),
            "residual": self.fit.residual,
            "diagnostics": self.diagnostics,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"

    def decay_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["basis", "pauli", "partner", "depth", "shots", "estimate"])
        for s in self.series:
            for d, e in zip(s.depths, s.estimates):
                w.writerow([format_pauli(s.basis), format_pauli(s.pauli), format_pauli(s.partner),
                            d, s.shots if s.shots else "exact", repr(float(e))])
        return buf.getvalue()


def learn_end_to_end(cfg: LearnConfig) -> LearnResult:
    """Run the full pipeline on simulated data."""
    terms = generate_terms(cfg.spec)
    targets = list(cfg.benchmark) if cfg.benchmark is not None else terms
    try:
        selection = select_bases(cfg.spec, cfg.layer, cfg.mode, cfg.crosstalk, cfg.exact_color)
    except ValueError as exc:
        raise LearningError("select", str(exc)) from exc
    coverage = verify_coverage(selection.bases, targets, cfg.layer, cfg.mode)
    if not coverage:
        raise LearningError("coverage", "uncovered targets: " + ", ".join(map(format_pauli, coverage.uncovered)))

    series: list[DecaySeries] = []
    shots = None if cfg.is_exact else cfg.shots
    for bi, basis in enumerate(selection.bases.bases):
        observed = harvest(cfg.layer, basis, targets, cfg.mode, cfg.class1)
        plan = plan_circuit(cfg.layer, basis, observed, cfg.mode)
        table = np.zeros((len(cfg.depths), len(observed)))
        for di, depth in enumerate(cfg.depths):
            rng = None
            if not cfg.is_exact:
                index = bi * len(cfg.depths) + di
                rng = np.random.default_rng(np.random.SeedSequence([cfg.seed, index]))
            table[di] = simulate_learning_circuit(cfg, plan, depth, rng)
        for j, (p, partner) in enumerate(zip(plan.observed, plan.partners)):
            series.append(DecaySeries(basis, p, partner, tuple(cfg.depths), tuple(table[:, j]), shots))

    pairs = []
    for s in series:
        try:
            pairs.append(PairFit(s, fit_decay(s)))
        except LearningError as exc:
            log.warning("%s", exc)
    estimates = resolve_fidelities(pairs, targets, cfg.layer, cfg.mode, cfg.class1)
    if cfg.design_kind == "pair":
        firsts, partners, values, _ = pair_estimates(pairs)
        design = design_matrix(firsts, terms, partners)
        target_design = design_matrix(targets, terms, [parse(e.partner) for e in estimates.estimates])
    else:
        values = estimates.values()
        design = design_matrix(targets, terms)
        target_design = design_matrix(targets, terms)
    fit = fit_model(design, values)
    if not fit.rank.full_rank:
        log.warning("design matrix is rank deficient (rank %d of %d): %s",
                    fit.rank.rank, fit.rank.columns, fit.rank.reason)
    benchmark_error = np.exp(-2 * target_design.matrix @ fit.rates) - estimates.values()
    diagnostics = {
        "mode": cfg.mode,
        "exact": cfg.is_exact,
        "design": cfg.design_kind,
        "design_rows": len(design.rows),
        "bases": selection.bases.to_json(),
        "rank": fit.rank.to_json(),
        "nnls_iterations": fit.solver.iterations,
        "kkt_residual": fit.solver.kkt_residual,
        "max_benchmark_error": float(np.abs(benchmark_error).max(initial=0.0)),
        "benchmark_error": {format_pauli(b): float(r) for b, r in zip(targets, benchmark_error)},
        "estimates": {format_pauli(b): e.to_json() for b, e in zip(targets, estimates.estimates)},
        "coverage": {k: list(v) for k, v in sorted(coverage.witnesses.items())},
    }
    return LearnResult(cfg, selection, series, pairs, estimates, design, fit, diagnostics)


def symmetric_fidelities(model: NoiseModel, layer: Layer, targets: Sequence[PauliString]) -> np.ndarray:
    """``sqrt(f_b f_{O b})`` for every target; the value a pair measurement resolves to."""
    images = [conjugate(layer.tableau, b).pauli for b in targets]
    return np.sqrt(fidelities(model, targets) * fidelities(model, images))


def planted_model(spec: ModelSpec, rng: np.random.Generator, low: float = 0.001, high: float = 0.02) -> NoiseModel:
    """Rates drawn uniformly from ``[low, high]`` for every term of ``spec``."""
    terms = generate_terms(spec)
    return NoiseModel(spec.n, tuple(terms), tuple(rng.uniform(low, high, len(terms))))


def parse_paulis(texts: Sequence[str]) -> list[PauliString]:
    return [parse(t) for t in texts]
