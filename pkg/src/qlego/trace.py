"""Contracting legs of stabilizer states.

Contracting leg ``a`` with leg ``b`` projects the pair onto the maximally
entangled state, whose stabilizers are ``X_a X_b`` and ``Z_a Z_b^-1``. On
check matrices this keeps exactly the group elements whose restriction to
the pair is one of those stabilizers, i.e. ``x_a = x_b`` and
``z_a = -z_b``, and then deletes both legs.

Two implementations are provided. :func:`self_trace` solves the matching
condition as a kernel problem and is used everywhere. The case analysis in
:func:`self_trace_case_analysis` follows the row-reduction argument by hand
and only serves as an independent cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import fieldvec as fv
from .fieldvec import IntArray
from .symplectic import CheckMatrix, leg_columns


class TraceError(ValueError):
    """Raised for invalid leg indices or a failed rank consistency check."""


@dataclass(frozen=True)
class TraceResult:
    """Traced state plus how its rows were built.

    ``provenance[i]`` holds the coefficients over the input rows (in the
    input's canonical order) whose combination gives output row ``i`` before
    the traced columns are deleted.
    """

    state: CheckMatrix
    provenance: IntArray
    legs: tuple[int, ...]


def direct_sum(h1: CheckMatrix, h2: CheckMatrix) -> CheckMatrix:
    if h1.d != h2.d:
        raise TraceError("cannot combine states of different qudit dimension")
    return direct_sum_many([h1, h2])


def direct_sum_many(states: Sequence[CheckMatrix]) -> CheckMatrix:
    d = states[0].d
    xs = fv.block_diag([s.x for s in states])
    zs = fv.block_diag([s.z for s in states])
    n = sum(s.n for s in states)
    return CheckMatrix(np.concatenate([xs, zs], axis=1), d, n, validate=False)


def _check_pair(n: int, a: int, b: int) -> None:
    if a == b:
        raise TraceError("cannot trace a leg with itself")
    for leg in (a, b):
        if not 0 <= leg < n:
            raise TraceError(f"leg {leg} out of range for {n} legs")


def _delete(matrix: IntArray, n: int, legs: Sequence[int]) -> IntArray:
    drop = set(leg_columns(legs, n))
    keep = [c for c in range(2 * n) if c not in drop]
    return matrix[:, keep]


def _finish(h: CheckMatrix, combos: IntArray, a: int, b: int, *, check_rank: bool = True) -> TraceResult:
    d, n = h.d, h.n
    full = fv.matmul(combos, h.matrix, d) if combos.size else np.zeros((0, 2 * n), np.int64)
    return _reduce_output(h, full, combos, a, b, check_rank=check_rank)


def _reduce_output(h: CheckMatrix, full: IntArray, combos: IntArray, a: int, b: int, *, check_rank: bool = True) -> TraceResult:
    d, n = h.d, h.n
    reduced = _delete(full, n, (a, b))
    if reduced.shape[0]:
        rows, _, t = fv.rref_with_transform(reduced, d)
        prov = fv.matmul(t, combos, d)
    else:
        rows = reduced
        prov = np.zeros((0, h.rank), dtype=np.int64)
    out = CheckMatrix._trusted(rows, d, n - 2)
    if check_rank and h.rank == n and out.rank != n - 2:
        raise TraceError(
            f"contraction of a full-rank state on {n} legs gave rank {out.rank}, expected {n - 2}"
        )
    survivors = tuple(i for i in range(n) if i not in (a, b))
    return TraceResult(out, prov, survivors)


def self_trace(h: CheckMatrix, a: int, b: int) -> TraceResult:
    """Contract legs ``a`` and ``b`` of one state."""
    _check_pair(h.n, a, b)
    d, n, r = h.d, h.n, h.rank
    m = h.matrix
    constraint = np.stack([m[:, a] - m[:, b], m[:, n + a] + m[:, n + b]]) % d
    if not r:
        return _finish(h, np.zeros((0, 0), np.int64), a, b)
    # rows that already satisfy the matching rule pass through unchanged,
    # only the others need to be combined
    touched = np.flatnonzero(constraint.any(axis=0))
    free = np.flatnonzero(~constraint.any(axis=0))
    small = fv.kernel(constraint[:, touched], d) if touched.size else np.zeros((0, 0), np.int64)
    combos = np.zeros((free.size + small.shape[0], r), dtype=np.int64)
    combos[np.arange(free.size), free] = 1
    if small.size:
        combos[free.size :, touched] = small
    full = np.concatenate([m[free], fv.matmul(small, m[touched], d) if small.size else np.zeros((0, 2 * n), np.int64)])
    return _reduce_output(h, full, combos, a, b)


def single_trace(h1: CheckMatrix, h2: CheckMatrix, a: int, b: int) -> TraceResult:
    """Contract leg ``a`` of ``h1`` with leg ``b`` of ``h2``.

    Surviving legs are ordered as those of ``h1`` followed by those of ``h2``.
    """
    if not 0 <= b < h2.n:
        raise TraceError(f"leg {b} out of range for {h2.n} legs")
    return self_trace(direct_sum(h1, h2), a, h1.n + b)


def conjoin(
    h1: CheckMatrix, h2: CheckMatrix | None, pairs: Sequence[tuple[int, int]]
) -> TraceResult:
    """Contract several leg pairs one after another.

    With ``h2`` given each pair is ``(leg of h1, leg of h2)``. Otherwise both
    legs refer to ``h1``. Provenance refers to the rows of ``h1`` followed by
    the rows of ``h2``.
    An empty ``pairs`` gives the direct sum.
    """
    if h2 is None:
        state = h1
        flat = list(pairs)
    else:
        for a, b in pairs:
            if not (0 <= a < h1.n and 0 <= b < h2.n):
                raise TraceError(f"leg pair {(a, b)} out of range")
        state = direct_sum(h1, h2)
        flat = [(a, h1.n + b) for a, b in pairs]
    used = [leg for pair in flat for leg in pair]
    if len(set(used)) != len(used):
        raise TraceError("a leg appears in more than one pair")
    labels = list(range(state.n))
    prov = np.eye(state.rank, dtype=np.int64)
    for a, b in flat:
        res = self_trace(state, labels.index(a), labels.index(b))
        prov = fv.matmul(res.provenance, prov, state.d) if res.provenance.size else res.provenance.reshape(0, prov.shape[1])
        labels = [labels[i] for i in res.legs]
        state = res.state
    return TraceResult(state, prov, tuple(labels))


# -- case analysis -----------------------------------------------------------


def _cross(u: IntArray, v: IntArray, d: int) -> IntArray:
    return np.array(
        [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]],
        dtype=np.int64,
    ) % d


def _null_3(eqs: IntArray, d: int) -> list[IntArray]:
    """Null vectors of a 2x3 system written with cross products only."""
    e1, e2 = eqs
    c = _cross(e1, e2, d)
    if c.any():
        return [c]
    nonzero = [e for e in (e1, e2) if e.any()]
    if not nonzero:
        return [np.eye(3, dtype=np.int64)[i] for i in range(3)]
    e = nonzero[0]
    found = [_cross(e, unit, d) for unit in np.eye(3, dtype=np.int64)]
    return [f for f in found if f.any()]


def _null_2(eqs: IntArray, d: int) -> list[IntArray]:
    """Null vectors of a 2x2 system; the determinant plays the role of ``f``."""
    (p, q), (r, s) = eqs
    det = (p * s - q * r) % d
    if det:
        return []
    for u, v in ((p, q), (r, s)):
        if u % d or v % d:
            return [np.array([-v % d, u % d], dtype=np.int64)]
    return [np.array([1, 0]), np.array([0, 1])]


def self_trace_case_analysis(h: CheckMatrix, a: int, b: int) -> CheckMatrix:
    """Reference contraction by explicit row reduction on the traced columns.

    Rows are reduced with the four traced columns ``x_a, x_b, z_a, z_b``
    leading. The rows without support there pass through untouched. How many
    rows carry support on the pair decides the case:

    * four rows: both legs are correctable erasures and the block is the
      identity, so the matched rows are ``r1 + r2`` and ``r3 - r4``;
    * three rows: one located error on the pair is correctable and there is a
      single matching row, given by the cross product of the two matching
      equations (``a = j' - k'``, ``b = l' - 1`` in the usual normal form);
    * two or one rows: matching combinations exist only when the small
      matching system is singular.
    """
    _check_pair(h.n, a, b)
    d, n = h.d, h.n
    cols = [a, b, n + a, n + b]
    order = cols + [c for c in range(2 * n) if c not in cols]
    m = h.matrix[:, order]
    red, pivots = fv.rref(m, d) if h.rank else (m, [])
    top = [i for i, p in enumerate(pivots) if p < 4]
    rest = [red[i] for i, p in enumerate(pivots) if p >= 4]
    block = red[top, :4]
    eqs = np.stack([block[:, 0] - block[:, 1], block[:, 2] + block[:, 3]]) % d if top else None

    count = len(top)
    if count == 4:
        coeffs = [np.array([1, 1, 0, 0]), np.array([0, 0, 1, -1])]
    elif count == 3:
        coeffs = _null_3(eqs, d)
    elif count == 2:
        coeffs = _null_2(eqs, d)
    elif count == 1:
        coeffs = [np.array([1])] if not eqs.any() else []
    else:
        coeffs = []

    matched = [fv.as_field(np.asarray(c) @ red[top], d) for c in coeffs]
    rows = np.array(rest + matched, dtype=np.int64).reshape(-1, 2 * n)
    inv = np.argsort(order)
    rows = rows[:, inv]
    return CheckMatrix(_delete(rows, n, (a, b)), d, n - 2, validate=False)
