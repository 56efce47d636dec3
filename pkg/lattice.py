"""
Integer lattice helpers.

smith_normal_form(A) returns (D, U, V) with D = U A V, U and V unimodular
and the diagonal of D non-negative with d1 | d2 | ...

solve_mod(B, r, N) decides B x = r over Z/N. It works one prime power of N
at a time by elimination over Z/p^a with pivots of least p-valuation, and
glues the local answers with the CRT. A failed system comes back with a
certificate y such that y B = 0 and y r != 0 mod N.
"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from sympy import factorint
from sympy.ntheory.modular import crt

from exceptions import ResourceCapExceeded

logger = logging.getLogger(__name__)

DEFAULT_MAX_ROWS = 6000


def as_object(a) -> np.ndarray:
    """Python-int matrix; int64 overflows once residues near 2^32 get multiplied."""
    arr = np.array(a, dtype=object)
    return np.vectorize(int, otypes=[object])(arr) if arr.size else arr


# --- Smith normal form ---

def _swap_rows(m: np.ndarray, i: int, j: int) -> None:
    if i != j:
        m[[i, j], :] = m[[j, i], :]


def _swap_cols(m: np.ndarray, i: int, j: int) -> None:
    if i != j:
        m[:, [i, j]] = m[:, [j, i]]


def smith_normal_form(a) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    A = as_object(a)
    rows, cols = A.shape
    U = as_object(np.eye(rows, dtype=np.int64))
    V = as_object(np.eye(cols, dtype=np.int64))
    D = A.copy()

    for t in range(min(rows, cols)):
        while True:
            block = D[t:, t:]
            nonzero = [(abs(block[i, j]), i, j) for i in range(block.shape[0])
                       for j in range(block.shape[1]) if block[i, j] != 0]
            if not nonzero:
                break
            _, i, j = min(nonzero)
            _swap_rows(D, t, t + i)
            _swap_rows(U, t, t + i)
            _swap_cols(D, t, t + j)
            _swap_cols(V, t, t + j)
            pivot = D[t, t]
            clean = True
            for k in range(t + 1, rows):
                f = D[k, t] // pivot
                if f:
                    D[k, :] -= f * D[t, :]
                    U[k, :] -= f * U[t, :]
                if D[k, t]:
                    clean = False
            for k in range(t + 1, cols):
                f = D[t, k] // pivot
                if f:
                    D[:, k] -= f * D[:, t]
                    V[:, k] -= f * V[:, t]
                if D[t, k]:
                    clean = False
            if not clean:
                continue
            # divisibility: fold a row with an entry not divisible by the pivot into row t
            bad = [k for k in range(t + 1, rows) if any(D[k, c] % pivot for c in range(t + 1, cols))]
            if not bad:
                break
            D[t, :] += D[bad[0], :]
            U[t, :] += U[bad[0], :]
        if D[t, t] < 0:
            D[t, :] = -D[t, :]
            U[t, :] = -U[t, :]

    if not np.array_equal(U.dot(A).dot(V), D):
        raise ArithmeticError("Smith normal form transforms do not reproduce D")
    return D, U, V


def invariant_factors_of(a) -> List[int]:
    D, _, _ = smith_normal_form(a)
    return [int(D[i, i]) for i in range(min(D.shape))]


# --- systems over Z/p^a ---

def _valuation(n: int, p: int, cap: int) -> int:
    if n == 0:
        return cap
    v = 0
    while n % p == 0 and v < cap:
        n //= p
        v += 1
    return v


@dataclass
class LocalSolution:
    x: Optional[List[int]]
    failing_row: Optional[int] = None
    rank: int = 0


def _eliminate(B: np.ndarray, r: np.ndarray, p: int, a: int, track_rows: bool):
    """Reduce B to a pivot diagonal over Z/p^a. Returns (D, r', V, U or None, pivot valuations)."""
    pa = p ** a
    D = B % pa
    rr = r % pa
    rows, cols = D.shape
    V = as_object(np.eye(cols, dtype=np.int64))
    U = as_object(np.eye(rows, dtype=np.int64)) if track_rows else None
    vals: List[int] = []
    for t in range(min(rows, cols)):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if D[i, j]:
                    v = _valuation(int(D[i, j]), p, a)
                    if best is None or v < best[0]:
                        best = (v, i, j)
                        if v == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        v, i, j = best
        _swap_rows(D, t, i)
        rr[[t, i]] = rr[[i, t]]
        if U is not None:
            _swap_rows(U, t, i)
        _swap_cols(D, t, j)
        _swap_cols(V, t, j)
        pv = p ** v
        unit = int(D[t, t]) // pv
        inv = pow(unit, -1, pa) if pa > 1 else 0
        D[t, :] = (D[t, :] * inv) % pa
        rr[t] = (rr[t] * inv) % pa
        if U is not None:
            U[t, :] = (U[t, :] * inv) % pa
        for k in range(rows):
            if k != t and D[k, t]:
                f = int(D[k, t]) // pv
                D[k, :] = (D[k, :] - f * D[t, :]) % pa
                rr[k] = (rr[k] - f * rr[t]) % pa
                if U is not None:
                    U[k, :] = (U[k, :] - f * U[t, :]) % pa
        for c in range(t + 1, cols):
            if D[t, c]:
                f = int(D[t, c]) // pv
                D[:, c] = (D[:, c] - f * D[:, t]) % pa
                V[:, c] = (V[:, c] - f * V[:, t]) % pa
        vals.append(v)
    return D, rr, V, U, vals


def _solve_local(B: np.ndarray, r: np.ndarray, p: int, a: int) -> LocalSolution:
    pa = p ** a
    D, rr, V, _, vals = _eliminate(B, r, p, a, track_rows=False)
    rank = len(vals)
    y = [0] * D.shape[1]
    for k, v in enumerate(vals):
        if int(rr[k]) % (p ** v):
            return LocalSolution(None, k, rank)
        y[k] = (int(rr[k]) // p ** v) % (p ** (a - v))
    for k in range(rank, D.shape[0]):
        if int(rr[k]) % pa:
            return LocalSolution(None, k, rank)
    x = V.dot(as_object(y)) % pa if y else as_object([])
    return LocalSolution([int(c) for c in x], None, rank)


def _local_certificate(B: np.ndarray, r: np.ndarray, p: int, a: int) -> List[int]:
    pa = p ** a
    _, rr, _, U, vals = _eliminate(B, r, p, a, track_rows=True)
    for k, v in enumerate(vals):
        if int(rr[k]) % (p ** v):
            return [int(c) for c in (U[k, :] * p ** (a - v)) % pa]
    for k in range(len(vals), B.shape[0]):
        if int(rr[k]) % pa:
            return [int(c) for c in U[k, :]]
    raise ArithmeticError("Certificate requested for a solvable local system")


@dataclass
class ModSolution:
    solvable: bool
    x: Optional[List[int]]
    certificate: Optional[List[int]]
    modulus: int
    failing_prime: Optional[int] = None
    ranks: Optional[dict] = None


def solve_mod(B, r, modulus: int, max_rows: int = DEFAULT_MAX_ROWS) -> ModSolution:
    """Least-coordinate solution of B x = r mod N (free coordinates set to 0), or a certificate."""
    B = as_object(B)
    r = as_object(r)
    if B.ndim != 2:
        B = B.reshape(len(r), -1)
    rows, cols = B.shape
    if rows > max_rows:
        raise ResourceCapExceeded("linear system rows", max_rows, rows)
    if modulus == 1 or rows == 0:
        return ModSolution(True, [0] * cols, None, modulus, ranks={})

    residues: List[List[int]] = []
    moduli: List[int] = []
    ranks = {}
    for p, a in sorted(factorint(modulus).items()):
        local = _solve_local(B, r, int(p), int(a))
        ranks[int(p)] = local.rank
        if local.x is None:
            cert = _local_certificate(B, r, int(p), int(a))
            scale = modulus // p ** a
            certificate = [(c * scale) % modulus for c in cert]
            logger.debug(f"[Lattice] Unsolvable at p={p}: {rows}x{cols} system, rank {local.rank}")
            return ModSolution(False, None, certificate, modulus, int(p), ranks)
        residues.append(local.x)
        moduli.append(int(p) ** int(a))

    x = []
    for c in range(cols):
        values = [res[c] for res in residues]
        x.append(int(crt(moduli, values)[0]) % modulus if len(moduli) > 1 else values[0] % modulus)
    logger.debug(f"[Lattice] Solved {rows}x{cols} system mod {modulus}, ranks {ranks}")
    return ModSolution(True, x, None, modulus, ranks=ranks)


def check_solution(B, r, x: Sequence[int], modulus: int) -> bool:
    B, r = as_object(B), as_object(r)
    return bool(((B.dot(as_object(x)) - r) % modulus == 0).all())


def check_certificate(B, r, y: Sequence[int], modulus: int) -> bool:
    B, r = as_object(B), as_object(r)
    y = as_object(y)
    return bool((y.dot(B) % modulus == 0).all()) and int(y.dot(r)) % modulus != 0


def kernel_mod(a, modulus: int) -> Tuple[List[int], np.ndarray]:
    """Cyclic decomposition of {x : A x = 0 mod N} for square nonsingular A whose invariant factors divide N.

    Returns (orders, generators) with generator i the column V[:, i] * (N / d_i).
    """
    D, _, V = smith_normal_form(a)
    n = D.shape[0]
    orders, columns = [], []
    for i in range(n):
        d = int(D[i, i])
        if d == 0 or modulus % d:
            raise ArithmeticError(f"Invariant factor {d} does not divide {modulus}")
        orders.append(d)
        columns.append((V[:, i] * (modulus // d)) % modulus)
    gens = np.stack(columns, axis=1) if columns else as_object(np.zeros((n, 0), dtype=np.int64))
    return orders, gens
