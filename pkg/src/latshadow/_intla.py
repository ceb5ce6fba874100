"""Batched exact integer linear algebra.

Every routine here works on stacks of small integer matrices and never
touches floating point. Arrays are ``int64`` when a Hadamard-style bound
proves no intermediate can overflow, and ``object`` (Python ints) otherwise.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations, islice
from typing import Iterator, Sequence

import numpy as np

_SAFE = 2**62
CHUNK = 100_000


def hadamard_bound(rows: Sequence[Sequence[int]], size: int) -> int:
    """Upper bound on |minor| for any ``size``-subset of ``rows``."""
    norms = sorted((math.isqrt(sum(int(v) * int(v) for v in r)) + 1 for r in rows), reverse=True)
    bound = 1
    for v in norms[:size]:
        bound *= v
    return bound


def pick_dtype(rows: Sequence[Sequence[int]], size: int) -> type | np.dtype:
    h = hadamard_bound(rows, size)
    return np.int64 if h * h * (size + 1) < _SAFE else object


def combination_chunks(m: int, r: int, chunk: int = CHUNK) -> Iterator[np.ndarray]:
    """Yield all ``r``-subsets of ``range(m)`` as index arrays, ``chunk`` rows at a time."""
    it = combinations(range(m), r)
    while True:
        block = list(islice(it, chunk))
        if not block:
            return
        yield np.array(block, dtype=np.intp).reshape(len(block), r)


def gauss_jordan(M: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Fraction-free Gauss-Jordan elimination on a stack of ``(s, s+t)`` matrices.

    Returns ``(M', ok)`` where for each non-singular square part ``M'`` equals
    ``D * [I | X]`` with ``D`` the determinant (up to sign) and ``X`` the
    solution of the systems. ``ok`` flags the non-singular members.
    Rows are divided by the previous pivot, which is exact (Bareiss).
    """
    M = M.copy()
    B, s, _ = M.shape
    ok = np.ones(B, dtype=bool)
    prev = np.ones(B, dtype=M.dtype)
    idx = np.arange(B)
    for k in range(s):
        nz = M[:, k:, k] != 0
        has = nz.any(axis=1)
        ok &= has
        p = k + nz.argmax(axis=1)
        swap = p != k
        if swap.any():
            rk = M[idx[swap], k].copy()
            M[idx[swap], k] = M[idx[swap], p[swap]]
            M[idx[swap], p[swap]] = rk
        piv = M[:, k, k].copy()
        piv[~ok] = 1
        M[~ok, k, k] = 1
        for i in range(s):
            if i == k:
                continue
            M[:, i, :] = (piv[:, None] * M[:, i, :] - M[:, i, k][:, None] * M[:, k, :]) // prev[:, None]
        prev = piv
    return M, ok


def batch_det(M: np.ndarray) -> np.ndarray:
    """Exact determinants of a stack of square integer matrices (Bareiss)."""
    M = M.copy()
    B, s, _ = M.shape
    if s == 0:
        return np.ones(B, dtype=M.dtype)
    sign = np.ones(B, dtype=M.dtype)
    dead = np.zeros(B, dtype=bool)
    prev = np.ones(B, dtype=M.dtype)
    idx = np.arange(B)
    for k in range(s - 1):
        nz = M[:, k:, k] != 0
        dead |= ~nz.any(axis=1)
        p = k + nz.argmax(axis=1)
        swap = p != k
        if swap.any():
            rk = M[idx[swap], k].copy()
            M[idx[swap], k] = M[idx[swap], p[swap]]
            M[idx[swap], p[swap]] = rk
            sign[swap] = -sign[swap]
        piv = M[:, k, k].copy()
        piv[dead] = 1
        for i in range(k + 1, s):
            M[:, i, k:] = (piv[:, None] * M[:, i, k:] - M[:, i, k][:, None] * M[:, k, k:]) // prev[:, None]
        prev = piv
    out = sign * M[:, s - 1, s - 1]
    out[dead] = 0
    return out


def cofactor_normals(D: np.ndarray) -> np.ndarray:
    """Generalized cross products: for each ``(s-1, s)`` matrix, a vector orthogonal to its rows.

    The vector is zero exactly when the rows are dependent.
    """
    B, r, s = D.shape
    out = np.empty((B, s), dtype=D.dtype)
    for j in range(s):
        minor = np.delete(D, j, axis=2)
        out[:, j] = batch_det(minor) * (1 if j % 2 == 0 else -1)
    return out


def rref(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over the rationals; returns (nonzero rows, pivot columns)."""
    A = [[Fraction(v) for v in r] for r in rows]
    if not A:
        return [], []
    ncol = len(A[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncol):
        p = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [v * inv for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    return len(rref(rows)[1])


def primitive(vec: Sequence[Fraction]) -> tuple[int, ...]:
    """Smallest integer vector positively proportional to ``vec``."""
    fr = [Fraction(v) for v in vec]
    den = 1
    for v in fr:
        den = den * v.denominator // math.gcd(den, v.denominator)
    ints = [int(v * den) for v in fr]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    if g == 0:
        return tuple(ints)
    return tuple(v // g for v in ints)
