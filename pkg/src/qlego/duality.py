"""Moving between codes and states.

A code with stabilizers ``S`` and logical pairs ``(Xbar_i, Zbar_i)`` becomes a
state on ``n + k`` legs by appending a leg per logical qudit: each ``Xbar``
gets ``X`` on its leg and each ``Zbar`` gets ``Z^-1``. Going back, a
contracted network state is split by leg roles into a code report.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from . import fieldvec as fv
from .fieldvec import IntArray
from .network import LOGICAL, PHYSICAL, BuiltState, Leg, leg_name
from .symplectic import CheckMatrix, Pauli, format_pauli, is_css, leg_columns, symplectic_gram


class DualityError(ValueError):
    """Bad logical operators or inconsistent report data."""


def augment(h: CheckMatrix, logical_x: Sequence[Pauli], logical_z: Sequence[Pauli]) -> CheckMatrix:
    """Stabilizer state of the encoding map with logical legs appended last."""
    d, n, k = h.d, h.n, len(logical_x)
    if len(logical_z) != k:
        raise DualityError("need as many logical Z as logical X operators")
    lx = np.array([p.vector for p in logical_x], dtype=np.int64).reshape(k, 2 * n)
    lz = np.array([p.vector for p in logical_z], dtype=np.int64).reshape(k, 2 * n)
    if k:
        if symplectic_gram(lx, h.matrix, d).any() if h.rank else False:
            raise DualityError("a logical X operator does not commute with the stabilizers")
        if symplectic_gram(lz, h.matrix, d).any() if h.rank else False:
            raise DualityError("a logical Z operator does not commute with the stabilizers")
        if symplectic_gram(lx, lx, d).any() or symplectic_gram(lz, lz, d).any():
            raise DualityError("logical operators of the same type must commute")
        if not np.array_equal(symplectic_gram(lx, lz, d), np.eye(k, dtype=np.int64)):
            raise DualityError("logical X and Z operators are not conjugate pairs")
    m = n + k
    rows = []
    for row in h.matrix:
        v = np.zeros(2 * m, dtype=np.int64)
        v[:n], v[m : m + n] = row[:n], row[n:]
        rows.append(v)
    for i in range(k):
        v = np.zeros(2 * m, dtype=np.int64)
        v[:n], v[m : m + n] = lx[i, :n], lx[i, n:]
        v[n + i] = 1
        rows.append(v)
        w = np.zeros(2 * m, dtype=np.int64)
        w[:n], w[m : m + n] = lz[i, :n], lz[i, n:]
        w[m + n + i] = d - 1
        rows.append(w)
    return CheckMatrix(np.array(rows).reshape(-1, 2 * m), d, m)


def matched(vec: IntArray, d: int) -> IntArray:
    """Operator on the far side of a contracted leg: ``(x, z) -> (x, -z)``."""
    v = np.asarray(vec, dtype=np.int64).copy()
    n = v.size // 2
    v[n:] = -v[n:]
    return v % d


@dataclass(frozen=True)
class LogicalOperator:
    """Logical action on the logical legs and one physical representative."""

    action: Pauli
    physical: Pauli

    def __str__(self) -> str:
        return f"{self.action} -> {self.physical}"


@dataclass(frozen=True)
class CodeReport:
    n: int
    apparent_k: int
    true_k: int
    stabilizers: CheckMatrix
    constraints: CheckMatrix
    logical_pairs: tuple[tuple[LogicalOperator, LogicalOperator], ...]
    physical_legs: tuple[Leg, ...]
    logical_legs: tuple[Leg, ...]
    css: bool
    self_dual: bool
    d: int = 2
    gauge: tuple[Pauli, ...] = field(default_factory=tuple)

    @property
    def r_physical(self) -> int:
        return self.stabilizers.rank

    @property
    def r_logical(self) -> int:
        return self.constraints.rank

    @property
    def is_subsystem(self) -> bool:
        return bool(self.gauge)

    def gauge_group(self) -> IntArray:
        """rref basis of the stabilizers together with the gauge generators."""
        rows = [self.stabilizers.matrix] + [np.array([g.vector for g in self.gauge]).reshape(-1, 2 * self.n)]
        m = np.concatenate(rows, axis=0)
        return fv.rref(m, self.d)[0] if m.shape[0] else m

    def to_dict(self) -> dict:
        def pauli_list(cm: CheckMatrix) -> list[str]:
            return [str(p) for p in cm.rows()]

        return {
            "d": self.d,
            "n": self.n,
            "apparent_k": self.apparent_k,
            "true_k": self.true_k,
            "r_physical": self.r_physical,
            "r_logical": self.r_logical,
            "css": self.css,
            "self_dual": self.self_dual,
            "physical_legs": [leg_name(x) for x in self.physical_legs],
            "logical_legs": [leg_name(x) for x in self.logical_legs],
            "stabilizers": pauli_list(self.stabilizers),
            "constraints": pauli_list(self.constraints),
            "logical_pairs": [
                {
                    "x_action": str(a.action),
                    "x_physical": str(a.physical),
                    "z_action": str(b.action),
                    "z_physical": str(b.physical),
                }
                for a, b in self.logical_pairs
            ],
            "gauge": [str(g) for g in self.gauge],
        }


def _restrict(m: IntArray, cols: list[int]) -> IntArray:
    return m[:, cols]


def _subgroup_within(m: IntArray, n: int, legs: list[int], d: int) -> IntArray:
    """rref rows of the row space of ``m`` supported on ``legs``, restricted."""
    inside = leg_columns(legs, n)
    outside = [c for c in range(2 * n) if c not in set(inside)]
    if not m.shape[0]:
        return np.zeros((0, len(inside)), dtype=np.int64)
    coeffs = fv.left_kernel(m[:, outside], d) if outside else np.eye(m.shape[0], dtype=np.int64)
    if not coeffs.shape[0]:
        return np.zeros((0, len(inside)), dtype=np.int64)
    sub = fv.matmul(coeffs, m[:, inside], d)
    return fv.rref(sub, d)[0]


def symplectic_pairs(candidates: list[tuple[IntArray, IntArray]], d: int) -> list[tuple[tuple[IntArray, IntArray], tuple[IntArray, IntArray]]]:
    """Symplectic Gram-Schmidt on ``(physical, action)`` pairs.

    The form is taken on the physical parts. The first candidate with a
    non-commuting partner is paired with the first such partner, which is
    rescaled so the pair has product one. Remaining candidates are projected
    off the pair. Candidates left commuting with everything are discarded.
    """
    pool = [(np.asarray(p, np.int64) % d, np.asarray(a, np.int64) % d) for p, a in candidates]
    pairs = []
    while pool:
        g = pool.pop(0)
        partner = None
        for idx, h in enumerate(pool):
            w = int(symplectic_gram(g[0], h[0], d)[0, 0])
            if w:
                partner = idx
                break
        if partner is None:
            continue
        h = pool.pop(partner)
        scale = fv.inverse(int(symplectic_gram(g[0], h[0], d)[0, 0]), d)
        h = ((h[0] * scale) % d, (h[1] * scale) % d)
        nxt = []
        for f in pool:
            wfh = int(symplectic_gram(f[0], h[0], d)[0, 0])
            wfg = int(symplectic_gram(f[0], g[0], d)[0, 0])
            fp = (f[0] - wfh * g[0] + wfg * h[0]) % d
            fa = (f[1] - wfh * g[1] + wfg * h[1]) % d
            nxt.append((fp, fa))
        pool = nxt
        pairs.append((g, h))
    return pairs


def extract(built: BuiltState, roles: dict[Leg, str] | None = None) -> CodeReport:
    """Split a contracted state into stabilizers, constraints and logicals.

    ``roles`` overrides the network's roles for selected dangling legs.
    """
    state = built.state
    d, total = state.d, state.n

    def role_of(leg: Leg) -> str:
        if roles and leg in roles:
            return roles[leg]
        return built.network.role(leg)

    for leg in built.legs:
        if role_of(leg) not in (PHYSICAL, LOGICAL):
            raise DualityError(f"leg {leg_name(leg)} has unknown role {role_of(leg)!r}")
    phys = [j for j, leg in enumerate(built.legs) if role_of(leg) == PHYSICAL]
    logi = [j for j, leg in enumerate(built.legs) if role_of(leg) == LOGICAL]
    return extract_state(state, phys, logi, tuple(built.legs))


def extract_state(state: CheckMatrix, phys: Sequence[int], logi: Sequence[int], labels: Sequence[Leg] | None = None) -> CodeReport:
    """:func:`extract` on a bare state with physical and logical columns given."""
    d, total = state.d, state.n
    phys, logi = list(phys), list(logi)
    if sorted(phys + logi) != list(range(total)):
        raise DualityError("physical and logical legs must partition the state's legs")
    labels = tuple(labels) if labels is not None else tuple(("", j) for j in range(total))
    n, k = len(phys), len(logi)
    m = state.matrix
    stab = _subgroup_within(m, total, phys, d)
    cons = _subgroup_within(m, total, logi, d)
    r_p, r_l = stab.shape[0], cons.shape[0]
    true_k = n - r_p
    if state.rank == total and true_k != k - r_l:
        raise DualityError(f"inconsistent counts: n - r_P = {true_k}, apparent_k - r_L = {k - r_l}")

    # rows whose logical part is nontrivial, in a basis led by logical columns
    pcols, lcols = leg_columns(phys, total), leg_columns(logi, total)
    order = lcols + pcols
    red, pivots = fv.rref(m[:, order], d) if m.shape[0] else (m, [])
    cand = [
        (row[len(lcols) :], matched(row[: len(lcols)], d))
        for row, p in zip(red, pivots)
        if p < len(lcols)
    ]
    raw_pairs = symplectic_pairs(cand, d)
    pairs = tuple(
        (
            LogicalOperator(Pauli(ga, d), Pauli(gp, d)),
            LogicalOperator(Pauli(ha, d), Pauli(hp, d)),
        )
        for (gp, ga), (hp, ha) in raw_pairs
    )
    if state.rank == total and len(pairs) != true_k:
        raise DualityError(f"found {len(pairs)} logical pairs, expected {true_k}")
    css, self_dual = is_css(state)
    return CodeReport(
        n=n,
        apparent_k=k,
        true_k=true_k,
        stabilizers=CheckMatrix(stab, d, n),
        constraints=CheckMatrix(cons, d, k),
        logical_pairs=pairs,
        physical_legs=tuple(labels[j] for j in phys),
        logical_legs=tuple(labels[j] for j in logi),
        css=css,
        self_dual=self_dual,
        d=d,
    )


def code_report(stabilizers: CheckMatrix) -> CodeReport:
    """Report for a code given only by its stabilizers.

    Logical pairs are chosen by symplectic Gram-Schmidt on the normalizer.
    """
    d, n = stabilizers.d, stabilizers.n
    normalizer = normalizer_basis(stabilizers)
    cand = [(row, np.zeros(0, np.int64)) for row in normalizer if not stabilizers.contains(row)]
    raw = symplectic_pairs(cand, d)
    pairs = tuple(
        (
            LogicalOperator(Pauli(np.zeros(0, np.int64), d), Pauli(gp, d)),
            LogicalOperator(Pauli(np.zeros(0, np.int64), d), Pauli(hp, d)),
        )
        for (gp, _), (hp, _) in raw
    )
    k = n - stabilizers.rank
    if len(pairs) != k:
        raise DualityError(f"found {len(pairs)} logical pairs, expected {k}")
    css, self_dual = is_css(stabilizers)
    return CodeReport(
        n=n,
        apparent_k=k,
        true_k=k,
        stabilizers=stabilizers,
        constraints=CheckMatrix(np.zeros((0, 2 * k), np.int64), d, k),
        logical_pairs=pairs,
        physical_legs=tuple(("", j) for j in range(n)),
        logical_legs=(),
        css=css,
        self_dual=self_dual,
        d=d,
    )


def normalizer_basis(stabilizers: CheckMatrix) -> IntArray:
    """Basis of all Paulis commuting with every stabilizer."""
    d, n = stabilizers.d, stabilizers.n
    if not stabilizers.rank:
        return np.eye(2 * n, dtype=np.int64)
    swapped = np.concatenate([stabilizers.z, (-stabilizers.x) % d], axis=1)
    return fv.kernel(swapped, d)


def logical_state(report: CodeReport) -> CheckMatrix:
    """Augmented state ``S`` plus the report's logical pairs on fresh legs."""
    xs = [a.physical for a, _ in report.logical_pairs]
    zs = [b.physical for _, b in report.logical_pairs]
    return augment(report.stabilizers, xs, zs)


def gauge_fix(report: CodeReport, keep: Sequence[int] | Sequence[tuple[Pauli, Pauli]]) -> CodeReport:
    """Treat every logical pair outside ``keep`` as gauge.

    ``keep`` lists pair indices, or explicit ``(Xbar, Zbar)`` physical
    operators that must lie in the normalizer. In the second form the pairs
    are rebuilt with the given operators first, so the demoted pairs are the
    symplectic complement of the kept ones.
    """
    d, n = report.d, report.n
    pairs = list(report.logical_pairs)
    if keep and isinstance(keep[0], tuple):
        ops = list(keep)  # type: ignore[arg-type]
        cands = []
        for x_op, z_op in ops:
            for op in (x_op, z_op):
                if symplectic_gram(op.vector, report.stabilizers.matrix, d).any() if report.stabilizers.rank else False:
                    raise DualityError(f"{op} does not commute with the stabilizers")
                cands.append((op.vector, _action_of(report, op)))
        for a, b in pairs:
            cands.append((a.physical.vector, a.action.vector))
            cands.append((b.physical.vector, b.action.vector))
        raw = symplectic_pairs(cands, d)
        if len(raw) != len(pairs):
            raise DualityError("kept operators are not independent logical operators")
        for i, (x_op, z_op) in enumerate(ops):
            gx, gz = raw[i]
            if not (np.array_equal(gx[0], x_op.vector % d) and np.array_equal(gz[0], z_op.vector % d)):
                raise DualityError("kept operators must form conjugate pairs that commute with each other")
        pairs = [
            (LogicalOperator(Pauli(ga, d), Pauli(gp, d)), LogicalOperator(Pauli(ha, d), Pauli(hp, d)))
            for (gp, ga), (hp, ha) in raw
        ]
        idx = list(range(len(ops)))
    else:
        idx = [int(i) for i in keep]  # type: ignore[arg-type]
        for i in idx:
            if not 0 <= i < len(pairs):
                raise DualityError(f"no logical pair with index {i}")
    kept = tuple(pairs[i] for i in idx)
    demoted = [pairs[i] for i in range(len(pairs)) if i not in set(idx)]
    gauge = tuple(report.gauge) + tuple(op.physical for pair in demoted for op in pair)
    return replace(report, logical_pairs=kept, true_k=len(kept), gauge=gauge)


def _action_of(report: CodeReport, op: Pauli) -> IntArray:
    """Logical action of a normalizer element as a combination of the pairs."""
    d = report.d
    k_legs = len(report.logical_legs)
    act = np.zeros(2 * k_legs, dtype=np.int64)
    for a, b in report.logical_pairs:
        ca = int(symplectic_gram(op.vector, b.physical.vector, d)[0, 0])
        cb = (-int(symplectic_gram(op.vector, a.physical.vector, d)[0, 0])) % d
        if a.action.vector.size == act.size:
            act = (act + ca * a.action.vector + cb * b.action.vector) % d
    return act


def describe(report: CodeReport) -> str:
    """Plain text summary, stable across runs."""
    lines = [
        f"[[{report.n},{report.true_k}]] over GF({report.d})"
        + (" subsystem" if report.gauge else ""),
        f"apparent k: {report.apparent_k}",
        f"stabilizer rank r_P: {report.r_physical}",
        f"constraint rank r_L: {report.r_logical}",
        f"css: {str(report.css).lower()}  self-dual: {str(report.self_dual).lower()}",
        "stabilizers:",
    ]
    lines += [f"  {p}" for p in report.stabilizers.rows()]
    lines.append("constraints:")
    lines += [f"  {p}" for p in report.constraints.rows()]
    lines.append("logical pairs:")
    for i, (a, b) in enumerate(report.logical_pairs):
        lines.append(f"  X{i}: {a.physical}   action {a.action}")
        lines.append(f"  Z{i}: {b.physical}   action {b.action}")
    if report.gauge:
        lines.append("gauge generators:")
        lines += [f"  {g}" for g in report.gauge]
    return "\n".join(lines)


__all__ = [
    "CodeReport",
    "DualityError",
    "LogicalOperator",
    "augment",
    "code_report",
    "describe",
    "extract",
    "extract_state",
    "format_pauli",
    "gauge_fix",
    "logical_state",
    "matched",
    "normalizer_basis",
    "symplectic_pairs",
]
