"""Covering arrays ``CA(N; t, k, v)``.

Every choice of ``t`` columns of the ``N x k`` array over ``{0..v-1}`` shows
all ``v**t`` tuples in some row.  Constructions, in order of preference:

* ``t = 2, v = 2``: the subset construction (row 0 all zeros, each column
  the indicator of a distinct ``ceil(N/2)``-subset of the other rows), which
  is optimal;
* ``t = 2, v = 3, k <= 4``: the orthogonal array of lines over GF(3);
* ``t = 3, v = 2, k <= 4``: the even-weight code;
* ``t = 3, v = 3, k <= 4``: the orthogonal array ``(a, b, c, a + b + c)`` over GF(3);
* embedded arrays found by an offline search (``data/covering_arrays.json``);
* a deterministic greedy construction for anything else.
"""

from __future__ import annotations

import functools
import itertools
import json
import math
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

SUPPORTED = frozenset({(2, 2), (2, 3), (3, 2), (3, 3)})
MAX_COLUMNS = 64


@dataclass(frozen=True)
class CoveringArray:
    """``rows`` is an ``(N, k)`` integer array; ``source`` names the construction."""

    t: int
    k: int
    v: int
    rows: np.ndarray = field(repr=False, compare=False)
    source: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        rows = np.asarray(self.rows, dtype=np.int64)
        if rows.ndim != 2 or rows.shape[1] != self.k:
            raise ValueError(f"rows must have shape (N, {self.k})")
        if rows.size and (rows.min() < 0 or rows.max() >= self.v):
            raise ValueError(f"symbols must lie in 0..{self.v - 1}")
        rows.setflags(write=False)
        object.__setattr__(self, "rows", rows)

    @property
    def N(self) -> int:
        return int(self.rows.shape[0])

    def to_text(self) -> str:
        lines = [f"{self.t} {self.k} {self.v} {self.N}"]
        lines += ["".join(str(int(s)) for s in row) for row in self.rows]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> CoveringArray:
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        t, k, v, n = (int(tok) for tok in lines[0].split())
        body = lines[1:]
        if len(body) != n:
            raise ValueError(f"header promises {n} rows, found {len(body)}")
        rows = np.array([[int(ch) for ch in ln] for ln in body], dtype=np.int64).reshape(n, k)
        return cls(t, k, v, rows, "text")

    def summary(self) -> dict:
        return {"t": self.t, "k": self.k, "v": self.v, "N": self.N}


@dataclass(frozen=True)
class Verification:
    ok: bool
    columns: tuple[int, ...] | None = None
    missing: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify(ca: CoveringArray) -> Verification:
    """Exhaustive check over every ``t``-subset of columns.

    Returns the first missing ``(columns, tuple)`` in lexicographic order.
    """
    t, v = ca.t, ca.v
    if ca.k < t:
        return Verification(False, tuple(range(ca.k)), None)
    weights = v ** np.arange(t - 1, -1, -1)
    for cols in itertools.combinations(range(ca.k), t):
        codes = ca.rows[:, cols] @ weights
        seen = np.zeros(v**t, dtype=bool)
        seen[codes] = True
        if not seen.all():
            code = int(np.flatnonzero(~seen)[0])
            tup = tuple(int(d) for d in np.unravel_index(code, (v,) * t))
            return Verification(False, cols, tup)
    return Verification(True)


# ---------------------------------------------------------------------------
# Constructions


def binary_strength_two_size(k: int) -> int:
    """Smallest ``N`` with ``C(N - 1, ceil(N / 2)) >= k``."""
    n = 2
    while math.comb(n - 1, math.ceil(n / 2)) < k:
        n += 1
    return n


def _binary_strength_two(k: int) -> np.ndarray:
    n = binary_strength_two_size(k)
    w = math.ceil(n / 2)
    rows = np.zeros((n, k), dtype=np.int64)
    for col, subset in enumerate(itertools.islice(itertools.combinations(range(1, n), w), k)):
        rows[list(subset), col] = 1
    return rows


def _ternary_orthogonal(k: int) -> np.ndarray:
    # columns a, b, a+b, a+2b over GF(3)
    a, b = np.divmod(np.arange(9), 3)
    cols = [a, b, (a + b) % 3, (a + 2 * b) % 3]
    return np.stack(cols[:k], axis=1).astype(np.int64)


def _ternary_strength_three(k: int) -> np.ndarray:
    # any three of e1, e2, e3, (1, 1, 1) are independent over GF(3)
    a, b, c = (np.array(col) for col in zip(*itertools.product(range(3), repeat=3)))
    cols = [a, b, c, (a + b + c) % 3]
    return np.stack(cols[:k], axis=1).astype(np.int64)


def _even_weight(k: int) -> np.ndarray:
    rows = [r for r in itertools.product((0, 1), repeat=k) if sum(r) % 2 == 0]
    if k == 3:
        rows = list(itertools.product((0, 1), repeat=3))
    return np.array(rows, dtype=np.int64)


@functools.lru_cache(maxsize=None)
def _embedded() -> dict[tuple[int, int, int], np.ndarray]:
    try:
        text = resources.files("spl_learn.data").joinpath("covering_arrays.json").read_text()
    except FileNotFoundError:
        return {}
    out = {}
    for entry in json.loads(text)["arrays"]:
        key = (int(entry["t"]), int(entry["k"]), int(entry["v"]))
        out[key] = np.array([[int(ch) for ch in row] for row in entry["rows"]], dtype=np.int64)
    return out


def embedded_keys() -> list[tuple[int, int, int]]:
    return sorted(_embedded())


def greedy(t: int, k: int, v: int) -> np.ndarray:
    """Deterministic one-row-at-a-time greedy construction.

    Each new row starts from the first uncovered tuple (lexicographic over
    column subsets, then symbols) and fills the remaining columns one at a
    time with the symbol covering the most new tuples among fixed columns,
    ties going to the smallest symbol.
    """
    if k < t:
        raise ValueError("need at least t columns")
    subsets = list(itertools.combinations(range(k), t))
    by_col: dict[int, list[int]] = {c: [] for c in range(k)}
    for i, s in enumerate(subsets):
        for c in s:
            by_col[c].append(i)
    weights = v ** np.arange(t - 1, -1, -1)
    covered = np.zeros((len(subsets), v**t), dtype=bool)
    rows = []
    while not covered.all():
        si, code = np.argwhere(~covered)[0]
        seed_cols = subsets[si]
        seed_syms = np.unravel_index(int(code), (v,) * t)
        row = np.full(k, -1, dtype=np.int64)
        row[list(seed_cols)] = seed_syms
        for c in range(k):
            if row[c] >= 0:
                continue
            best, best_gain = 0, -1
            for sym in range(v):
                row[c] = sym
                gain = 0
                for i in by_col[c]:
                    cols = subsets[i]
                    vals = row[list(cols)]
                    if (vals >= 0).all() and not covered[i, int(vals @ weights)]:
                        gain += 1
                if gain > best_gain:
                    best, best_gain = sym, gain
            row[c] = best
        for i, cols in enumerate(subsets):
            covered[i, int(row[list(cols)] @ weights)] = True
        rows.append(row)
    return np.array(rows, dtype=np.int64)


def construct(t: int, k: int, v: int) -> CoveringArray:
    """Smallest available verified ``CA(N; t, k, v)``.

    Raises
    ------
    ValueError
        For unsupported ``(t, v)``, ``k < t`` or ``k > 64``.
    """
    if (t, v) not in SUPPORTED:
        raise ValueError(f"unsupported covering array parameters t={t}, v={v}")
    if k < t:
        raise ValueError(f"need k >= t, got k={k}, t={t}")
    if k > MAX_COLUMNS:
        raise ValueError(f"at most {MAX_COLUMNS} columns are supported")
    if (t, v) == (2, 2):
        rows, source = _binary_strength_two(k), "subset"
    elif (t, v) == (2, 3) and k <= 4:
        rows, source = _ternary_orthogonal(k), "orthogonal-array"
    elif (t, v) == (3, 2) and k <= 4:
        rows, source = _even_weight(k), "even-weight"
    elif (t, v) == (3, 3) and k <= 4:
        rows, source = _ternary_strength_three(k), "orthogonal-array"
    elif (t, k, v) in _embedded():
        rows, source = _embedded()[(t, k, v)], "embedded"
    else:
        rows, source = greedy(t, k, v), "greedy"
    ca = CoveringArray(t, k, v, rows, source)
    check = verify(ca)
    if not check:
        raise AssertionError(f"construction {source} failed at {check.columns}: {check.missing}")
    return ca


def full_factorial(k: int, v: int) -> CoveringArray:
    """All ``v**k`` rows; a covering array of strength ``k``."""
    rows = np.array(list(itertools.product(range(v), repeat=k)), dtype=np.int64).reshape(-1, k)
    return CoveringArray(k, k, v, rows, "full-factorial")
