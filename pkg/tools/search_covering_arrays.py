"""Offline search for small covering arrays embedded in ``spl_learn/data``.

Simulated annealing over ``N x k`` arrays.  A move picks an uncovered
``(columns, tuple)``, writes the tuple into the row where that costs least and
accepts by the Metropolis rule on the number of uncovered tuples.  Every found
array is checked with :func:`spl_learn.coverarray.verify` before it is saved.

Usage::

    python tools/search_covering_arrays.py --out src/spl_learn/data/covering_arrays.json

This script needs ``numba``; the library itself does not.
"""

from __future__ import annotations

import argparse
import itertools
import json
import time

import numba
import numpy as np

from spl_learn.coverarray import CoveringArray, verify

TABLE_TARGETS = {
    (2, 3): dict(zip(range(2, 21), [9, 9, 9, 11, 12, 12, 13, 13, 14, 15, 15, 15, 15, 15, 15, 15, 15, 15, 15])),
    (3, 2): dict(zip(range(3, 21), [8, 8, 10, 12, 12, 12, 12, 12, 12, 15, 16, 16, 17, 17, 18, 18, 18, 18])),
    (3, 3): dict(zip(range(3, 21), [27, 27, 33, 33, 39, 42, 45, 45, 45, 45, 45, 45, 51, 51, 58, 59, 59, 59])),
}


@numba.njit(cache=True)
def _code(A, r, cols, v):
    code = 0
    for c in cols:
        code = code * v + A[r, c]
    return code


@numba.njit(cache=True)
def _set_cell(A, count, subsets, col_subsets, r, c, val, v):
    """Write ``val`` at ``(r, c)``; return the change in uncovered tuples."""
    delta = 0
    if A[r, c] == val:
        return 0
    for s in col_subsets[c]:
        cols = subsets[s]
        old = _code(A, r, cols, v)
        count[s, old] -= 1
        if count[s, old] == 0:
            delta += 1
    A[r, c] = val
    for s in col_subsets[c]:
        cols = subsets[s]
        new = _code(A, r, cols, v)
        if count[s, new] == 0:
            delta -= 1
        count[s, new] += 1
    return delta


@numba.njit(cache=True)
def _anneal(A, subsets, col_subsets, v, t, iters, temp0, seed):
    np.random.seed(seed)
    N, k = A.shape
    S = subsets.shape[0]
    m = v**t
    count = np.zeros((S, m), dtype=np.int32)
    for r in range(N):
        for s in range(S):
            count[s, _code(A, r, subsets[s], v)] += 1
    uncovered = 0
    for s in range(S):
        for x in range(m):
            if count[s, x] == 0:
                uncovered += 1
    tup = np.zeros(t, dtype=np.int64)
    old = np.zeros(t, dtype=np.int64)
    for it in range(iters):
        if uncovered == 0:
            return 0
        temp = temp0 * (1.0 - it / iters) + 1e-3
        # random uncovered tuple, written into a random row
        while True:
            s = np.random.randint(S)
            start = np.random.randint(m)
            found = -1
            for j in range(m):
                x = (start + j) % m
                if count[s, x] == 0:
                    found = x
                    break
            if found >= 0:
                break
        x = found
        for i in range(t - 1, -1, -1):
            tup[i] = x % v
            x //= v
        cols = subsets[s]
        r = np.random.randint(N)
        for i in range(t):
            old[i] = A[r, cols[i]]
        d = 0
        for i in range(t):
            d += _set_cell(A, count, subsets, col_subsets, r, cols[i], tup[i], v)
        if d <= 0 or np.random.random() < np.exp(-d / temp):
            uncovered += d
        else:
            for i in range(t - 1, -1, -1):
                _set_cell(A, count, subsets, col_subsets, r, cols[i], old[i], v)
    return uncovered


def search(t: int, k: int, v: int, N: int, seed: int, iters: int, restarts: int):
    subsets = np.array(list(itertools.combinations(range(k), t)), dtype=np.int64)
    col_subsets = np.array(
        [[i for i, s in enumerate(subsets) if c in s] for c in range(k)], dtype=np.int64
    )
    rng = np.random.default_rng(seed)
    for _ in range(restarts):
        A = rng.integers(0, v, size=(N, k)).astype(np.int64)
        left = _anneal(A, subsets, col_subsets, v, t, iters, 1.0, int(rng.integers(2**31)))
        if left == 0:
            ca = CoveringArray(t, k, v, A.copy(), "search")
            if verify(ca):
                return ca
    return None


def _load(path: str) -> dict:
    try:
        with open(path) as fh:
            return {(e["t"], e["k"], e["v"]): e for e in json.load(fh)["arrays"]}
    except FileNotFoundError:
        return {}


def _save(path: str, entries: dict) -> None:
    with open(path, "w") as fh:
        json.dump({"arrays": [entries[key] for key in sorted(entries)]}, fh, indent=1)
        fh.write("\n")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", required=True, help="JSON file; existing entries are kept unless beaten")
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--iters", type=int, default=2_000_000)
    ap.add_argument("--restarts", type=int, default=5)
    ap.add_argument("--family", choices=["2,3", "3,2", "3,3"], help="only search one (t, v) family")
    ap.add_argument("--kmax", type=int, default=20)
    args = ap.parse_args()
    entries = _load(args.out)
    for (t, v), targets in TABLE_TARGETS.items():
        if args.family and args.family != f"{t},{v}":
            continue
        for k, target in targets.items():
            if k <= 4 or k > args.kmax:
                continue
            have = entries.get((t, k, v))
            if have is not None and have["N"] <= target:
                continue
            start = time.time()
            found = None
            for N in (target, target + 1, target + 2):
                if have is not None and N >= have["N"]:
                    break
                found = search(t, k, v, N, args.seed + 1000 * k + N, args.iters, args.restarts)
                if found is not None:
                    break
            if found is None:
                print(f"t={t} k={k} v={v}: nothing new within +2 of {target}", flush=True)
                continue
            print(f"t={t} k={k} v={v}: N={found.N} (target {target}) in {time.time() - start:.1f}s", flush=True)
            entries[(t, k, v)] = {
                "t": t, "k": k, "v": v, "N": found.N,
                "rows": ["".join(str(int(s)) for s in row) for row in found.rows],
            }
            _save(args.out, entries)


if __name__ == "__main__":
    main()
