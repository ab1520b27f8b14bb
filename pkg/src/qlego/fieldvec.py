"""Dense linear algebra over the prime field GF(d).

Matrices are plain ``numpy`` integer arrays with entries in ``[0, d)``.
Every function takes the modulus explicitly and returns fresh arrays.
"""

from __future__ import annotations

from itertools import product

import numpy as np
import numpy.typing as npt

IntArray = npt.NDArray[np.int64]

# float64 matmul is exact while every partial sum stays below 2**53
_FLOAT_EXACT = 2**52


def is_prime(d: int) -> bool:
    if d < 2:
        return False
    f = 2
    while f * f <= d:
        if d % f == 0:
            return False
        f += 1
    return True


def check_modulus(d: int) -> int:
    """Return ``d`` if it is a prime, raise ``ValueError`` otherwise."""
    if not isinstance(d, (int, np.integer)) or not is_prime(int(d)):
        raise ValueError(f"qudit dimension must be prime, got {d!r}")
    return int(d)


def as_field(m: npt.ArrayLike, d: int) -> IntArray:
    arr = np.array(m, dtype=np.int64)
    return np.mod(arr, d)


def inverse(a: int, d: int) -> int:
    a = int(a) % d
    if a == 0:
        raise ZeroDivisionError("zero has no inverse")
    return pow(a, -1, d)


def matmul(a: npt.ArrayLike, b: npt.ArrayLike, d: int) -> IntArray:
    """Product ``a @ b`` reduced mod ``d``."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    inner = a.shape[-1] if a.ndim else 1
    if inner * (d - 1) ** 2 < _FLOAT_EXACT:
        out = np.asarray(a, dtype=np.float64) @ np.asarray(b, dtype=np.float64)
        return np.mod(np.rint(out).astype(np.int64), d)
    return np.mod(a @ b, d)


def _reduce(m: IntArray, d: int, ncols: int) -> tuple[IntArray, list[int]]:
    """In-place Gauss-Jordan on the first ``ncols`` columns of ``m``."""
    rows = m.shape[0]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == rows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            m[[r, p]] = m[[p, r]]
        lead = int(m[r, c])
        if lead != 1:
            m[r] = (m[r] * inverse(lead, d)) % d
        col = m[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            m[hit] = (m[hit] - np.outer(col[hit], m[r])) % d
        pivots.append(c)
        r += 1
    return m, pivots


def rref(m: npt.ArrayLike, d: int) -> tuple[IntArray, list[int]]:
    """Reduced row echelon form with zero rows removed, plus pivot columns."""
    a = as_field(m, d)
    if a.ndim != 2:
        raise ValueError("rref expects a 2d array")
    a, pivots = _reduce(a, d, a.shape[1])
    return a[: len(pivots)].copy(), pivots


def rref_with_transform(
    m: npt.ArrayLike, d: int
) -> tuple[IntArray, list[int], IntArray]:
    """Like :func:`rref` but also return ``t`` with ``t @ m == r`` (mod d)."""
    a = as_field(m, d)
    rows, cols = a.shape
    aug = np.concatenate([a, np.eye(rows, dtype=np.int64)], axis=1)
    aug, pivots = _reduce(aug, d, cols)
    k = len(pivots)
    return aug[:k, :cols].copy(), pivots, aug[:k, cols:].copy()


def rank(m: npt.ArrayLike, d: int) -> int:
    a = as_field(m, d)
    if a.size == 0:
        return 0
    return len(_reduce(a, d, a.shape[1])[1])


def kernel(m: npt.ArrayLike, d: int) -> IntArray:
    """Basis (as rows) of the right null space ``{v : m @ v == 0}``."""
    a = as_field(m, d)
    if a.ndim != 2:
        raise ValueError("kernel expects a 2d array")
    cols = a.shape[1]
    r, pivots = rref(a, d) if a.shape[0] else (a[:0], [])
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for row, p in enumerate(pivots):
            basis[i, p] = (-r[row, f]) % d
    return basis


def left_kernel(m: npt.ArrayLike, d: int) -> IntArray:
    """Basis of ``{c : c @ m == 0}``."""
    return kernel(np.asarray(m).T, d)


def solve(m: npt.ArrayLike, b: npt.ArrayLike, d: int) -> IntArray | None:
    """One solution ``c`` of ``c @ m == b`` or ``None`` when inconsistent."""
    a = as_field(m, d)
    rhs = as_field(b, d).reshape(-1)
    rows, cols = a.shape
    if rhs.shape[0] != cols:
        raise ValueError("right hand side has the wrong length")
    if rows == 0:
        return np.zeros(0, dtype=np.int64) if not rhs.any() else None
    r, pivots, t = rref_with_transform(a, d)
    coeff = rhs[pivots]
    if not np.array_equal(matmul(coeff, r, d), rhs):
        return None
    return matmul(coeff, t, d)


def in_row_space(basis: IntArray, pivots: list[int], v: npt.ArrayLike, d: int) -> np.ndarray:
    """Membership test of one or many vectors against an rref basis.

    ``basis`` must be the output of :func:`rref`. Works row-wise on a 2d ``v``.
    """
    vv = np.atleast_2d(np.asarray(v, dtype=np.int64)) % d
    if basis.shape[0] == 0:
        return ~vv.any(axis=1)
    recon = matmul(vv[:, pivots], basis, d)
    return np.all(recon == vv, axis=1)


def row_space_equal(a: npt.ArrayLike, b: npt.ArrayLike, d: int) -> bool:
    ra, _ = rref(a, d)
    rb, _ = rref(b, d)
    return ra.shape == rb.shape and np.array_equal(ra, rb)


def block_diag(blocks: list[IntArray]) -> IntArray:
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = np.zeros((rows, cols), dtype=np.int64)
    r = c = 0
    for b in blocks:
        out[r : r + b.shape[0], c : c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out


def enumerate_span(gens: IntArray, d: int, chunk_bits: int = 16):
    """Yield ``(coeffs, elements)`` chunks covering the whole span of ``gens``.

    Coefficients run in lexicographic order with the first generator most
    significant, so enumeration order is deterministic.
    """
    g = np.asarray(gens, dtype=np.int64)
    r, cols = g.shape
    low = 0
    while low < r and d ** (low + 1) <= 2**chunk_bits:
        low += 1
    high = r - low
    low_coeffs = np.array(list(product(range(d), repeat=low)), dtype=np.int64).reshape(-1, low)
    low_span = matmul(low_coeffs, g[high:], d) if low else np.zeros((1, cols), np.int64)
    for hc in product(range(d), repeat=high):
        hv = np.asarray(hc, dtype=np.int64)
        shift = matmul(hv, g[:high], d) if high else np.zeros(cols, np.int64)
        coeffs = np.concatenate([np.broadcast_to(hv, (low_span.shape[0], high)), low_coeffs], axis=1)
        yield coeffs, (low_span + shift) % d
