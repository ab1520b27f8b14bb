"""Entanglement and error-correction properties of stabilizer states and codes."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Sequence

import numpy as np

from . import fieldvec as fv
from .duality import CodeReport
from .fieldvec import IntArray
from .symplectic import CheckMatrix, Pauli, format_pauli, leg_columns, symplectic_gram


class BudgetExceeded(RuntimeError):
    """Raised when an exact search would exceed its enumeration budget.

    ``lower_bound`` carries what was established before giving up, if anything.
    """

    def __init__(self, message: str, lower_bound: int | None = None):
        super().__init__(message)
        self.lower_bound = lower_bound


DEFAULT_BUDGET = 2**24


def subgroup_rank_within(state: CheckMatrix, legs: Iterable[int]) -> int:
    """Rank of the subgroup of ``state`` supported entirely on ``legs``."""
    legs = sorted(set(int(i) for i in legs))
    for i in legs:
        if not 0 <= i < state.n:
            raise IndexError(f"leg {i} out of range")
    outside = [c for c in range(2 * state.n) if c not in set(leg_columns(legs, state.n))]
    if not state.rank:
        return 0
    r_out = fv.rank(state.matrix[:, outside], state.d) if outside else 0
    return state.rank - r_out


def is_maximally_mixed(state: CheckMatrix, legs: Iterable[int]) -> bool:
    """True when no state element is supported on ``legs`` alone."""
    return subgroup_rank_within(state, legs) == 0


def entropy(state: CheckMatrix, legs: Iterable[int]) -> int:
    """Entanglement entropy of ``legs`` in units of ``log d`` for a pure state."""
    legs = list(legs)
    return len(legs) - subgroup_rank_within(state, legs)


def is_correctable_erasure(report: CodeReport, legs: Iterable[int]) -> bool:
    """Whether losing physical ``legs`` can be undone.

    Every Pauli on the region that commutes with the stabilizers must already
    be in the gauge group (the stabilizers for subspace codes).
    """
    legs = sorted(set(int(i) for i in legs))
    n, d = report.n, report.d
    for i in legs:
        if not 0 <= i < n:
            raise IndexError(f"leg {i} out of range")
    if not legs:
        return True
    stab = report.stabilizers
    region = leg_columns(legs, n)
    restricted = stab.matrix[:, region]
    centralizer_dim = 2 * len(legs) - (fv.rank(restricted, d) if stab.rank else 0)
    group = report.gauge_group()
    outside = [c for c in range(2 * n) if c not in set(region)]
    inside_dim = group.shape[0] - (fv.rank(group[:, outside], d) if group.shape[0] and outside else 0)
    return centralizer_dim == inside_dim


@dataclass(frozen=True)
class DistanceReport:
    """Minimum weight of a nontrivial logical operator.

    When ``lower_bound`` is set no logical operator of weight up to
    ``distance - 1`` exists, but none was found at ``distance`` either.
    """

    distance: int
    witness: Pauli | None
    method: str
    lower_bound: bool = False

    def __str__(self) -> str:
        if self.lower_bound:
            return f"d >= {self.distance} ({self.method})"
        return f"d = {self.distance} ({self.method}), witness {self.witness}"


def _weights(vs: IntArray, n: int) -> IntArray:
    return np.count_nonzero(vs[:, :n] | vs[:, n:], axis=1)


def _lex_key(v: IntArray, d: int) -> str:
    return format_pauli(v, d)


def _kept_logicals(report: CodeReport) -> IntArray:
    rows = [op.physical.vector for pair in report.logical_pairs for op in pair]
    return np.array(rows, dtype=np.int64).reshape(-1, 2 * report.n)


def distance(
    report: CodeReport,
    weight_cap: int | None = None,
    budget: int = DEFAULT_BUDGET,
    dressed: bool = True,
    method: str = "auto",
) -> DistanceReport:
    """Code distance by brute force.

    The whole logical span is enumerated when it fits in ``budget`` elements.
    Otherwise Paulis are enumerated by increasing weight up to ``weight_cap``.
    ``method`` forces one of the two (``"exhaustive"`` or ``"capped"``).
    For subsystem codes ``dressed`` selects the dressed distance.
    """
    if method not in ("auto", "exhaustive", "capped"):
        raise ValueError(f"unknown method {method!r}")
    n, d = report.n, report.d
    logicals = _kept_logicals(report)
    if logicals.shape[0] == 0:
        raise ValueError("code encodes no logical qudits")
    group = report.gauge_group()
    if dressed or not report.gauge:
        base = group
    else:
        base = report.stabilizers.matrix
    span_size = d ** (base.shape[0] + logicals.shape[0])
    if method == "capped":
        if weight_cap is None:
            raise ValueError("the capped search needs weight_cap")
        return _distance_capped(report, weight_cap, dressed, budget)
    if span_size <= budget or method == "exhaustive":
        return _distance_span(base, logicals, n, d)
    if weight_cap is None:
        raise BudgetExceeded(
            f"exhaustive search needs {span_size} elements, budget is {budget}; pass weight_cap",
            lower_bound=1,
        )
    return _distance_capped(report, weight_cap, dressed, budget)


def _distance_span(base: IntArray, logicals: IntArray, n: int, d: int) -> DistanceReport:
    k2 = logicals.shape[0]
    gens = np.concatenate([logicals, base], axis=0)
    best_w = 2 * n + 1
    best: list[IntArray] = []
    for coeffs, vs in fv.enumerate_span(gens, d):
        nontrivial = coeffs[:, :k2].any(axis=1)
        vs = vs[nontrivial]
        if not vs.size:
            continue
        w = _weights(vs, n)
        m = int(w.min())
        if m < best_w:
            best_w, best = m, [vs[w == m]]
        elif m == best_w:
            best.append(vs[w == m])
    cands = np.concatenate(best, axis=0)
    witness = min((c for c in cands), key=lambda c: _lex_key(c, d))
    return DistanceReport(int(best_w), Pauli(witness, d), "exhaustive")


def _paulis_of_weight(n: int, w: int, d: int):
    """Yield chunks of all Paulis with support of size exactly ``w``."""
    nonid = np.array([(x, z) for x in range(d) for z in range(d) if (x, z) != (0, 0)], dtype=np.int64)
    m = nonid.shape[0]
    local = np.array(list(product(range(m), repeat=w)), dtype=np.int64).reshape(-1, w)
    for supp in combinations(range(n), w):
        out = np.zeros((local.shape[0], 2 * n), dtype=np.int64)
        for j, q in enumerate(supp):
            out[:, q] = nonid[local[:, j], 0]
            out[:, n + q] = nonid[local[:, j], 1]
        yield out


def _distance_capped(report: CodeReport, cap: int, dressed: bool, budget: int) -> DistanceReport:
    n, d = report.n, report.d
    stab = report.stabilizers.matrix
    group = report.gauge_group()
    _, gpiv = fv.rref(group, d) if group.shape[0] else (group, [])
    commute_with = stab if (dressed or not report.gauge) else group
    from math import comb

    for w in range(1, cap + 1):
        count = comb(n, w) * (d * d - 1) ** w
        if count > budget:
            raise BudgetExceeded(f"weight {w} search needs {count} candidates, budget is {budget}", lower_bound=w)
        hits = []
        for vs in _paulis_of_weight(n, w, d):
            ok = ~symplectic_gram(vs, commute_with, d).any(axis=1) if commute_with.shape[0] else np.ones(len(vs), bool)
            vs = vs[ok]
            if not vs.size:
                continue
            inside = fv.in_row_space(group, gpiv, vs, d)
            vs = vs[~inside]
            if vs.size:
                hits.append(vs)
        if hits:
            cands = np.concatenate(hits, axis=0)
            witness = min((c for c in cands), key=lambda c: _lex_key(c, d))
            return DistanceReport(w, Pauli(witness, d), "weight-capped")
    return DistanceReport(cap + 1, None, "weight-capped", lower_bound=True)


def pure_distance(stabilizers: CheckMatrix) -> int:
    """Smallest weight of a nonzero stabilizer element (for small groups)."""
    d = stabilizers.d
    elems = np.concatenate([c[1] for c in fv.enumerate_span(stabilizers.matrix, d)], axis=0)[1:]
    return int(_weights(elems, stabilizers.n).min())


def is_k_isometry(state: CheckMatrix, legs: Sequence[int]) -> bool:
    """``legs`` map isometrically onto the remaining legs."""
    return is_maximally_mixed(state, legs)


def is_perfect(state: CheckMatrix) -> bool:
    """Every set of ``n // 2`` legs is maximally mixed."""
    half = state.n // 2
    return all(is_maximally_mixed(state, s) for s in combinations(range(state.n), half))


__all__ = [
    "BudgetExceeded",
    "DEFAULT_BUDGET",
    "DistanceReport",
    "distance",
    "entropy",
    "is_correctable_erasure",
    "is_k_isometry",
    "is_maximally_mixed",
    "is_perfect",
    "pure_distance",
    "subgroup_rank_within",
]
