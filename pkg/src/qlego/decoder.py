"""Brute-force maximum likelihood decoding for small codes.

Everything here enumerates cosets explicitly, so it is meant for codes with a
few dozen qubits at most. Probabilities are accumulated with ``math.fsum``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from itertools import product
from statistics import NormalDist
from typing import Iterable, Sequence, TextIO

import numpy as np

from . import fieldvec as fv
from .analysis import DEFAULT_BUDGET, BudgetExceeded
from .duality import CodeReport
from .fieldvec import IntArray
from .symplectic import Pauli, format_pauli, parse_pauli, symplectic_gram


@dataclass(frozen=True)
class NoiseModel:
    """Independent noise: ``probs[q, x, z]`` is the chance of ``X^x Z^z`` on qudit ``q``."""

    probs: np.ndarray
    d: int = 2
    p: float | None = None

    def __post_init__(self) -> None:
        probs = np.asarray(self.probs, dtype=np.float64)
        if probs.ndim != 3 or probs.shape[1:] != (self.d, self.d):
            raise ValueError("probs must have shape (n, d, d)")
        if (probs < 0).any() or not np.allclose(probs.sum(axis=(1, 2)), 1.0, atol=1e-12):
            raise ValueError("each qudit needs a probability distribution")
        object.__setattr__(self, "probs", probs)

    @property
    def n(self) -> int:
        return self.probs.shape[0]

    def probability(self, errors: IntArray) -> np.ndarray:
        """Probability of each row of ``errors`` (shape ``(m, 2n)``)."""
        e = np.atleast_2d(errors)
        n = self.n
        per = self.probs[np.arange(n), e[:, :n], e[:, n:]]
        return np.prod(per, axis=1)

    def sample(self, rng: np.random.Generator, trials: int) -> IntArray:
        """Draw ``trials`` errors, one row each."""
        n, d = self.n, self.d
        flat = self.probs.reshape(n, d * d)
        cdf = np.cumsum(flat, axis=1)
        cdf[:, -1] = 1.0
        u = rng.random((trials, n))
        idx = np.empty((trials, n), dtype=np.int64)
        for q in range(n):
            idx[:, q] = np.searchsorted(cdf[q], u[:, q], side="right")
        idx = np.minimum(idx, d * d - 1)
        return np.concatenate([idx // d, idx % d], axis=1)


def depolarizing(p: float, n: int, d: int = 2) -> NoiseModel:
    """``1 - p`` for the identity and ``p / (d^2 - 1)`` for every other Pauli."""
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    one = np.full((d, d), p / (d * d - 1))
    one[0, 0] = 1 - p
    return NoiseModel(np.broadcast_to(one, (n, d, d)).copy(), d, p)


def syndrome(report: CodeReport, error: Pauli | IntArray) -> tuple[int, ...]:
    """Commutation values of ``error`` with the stabilizer generators."""
    vec = error.vector if isinstance(error, Pauli) else np.asarray(error)
    s = report.stabilizers.matrix
    if not s.shape[0]:
        return ()
    return tuple(int(v) for v in symplectic_gram(vec[None, :], s, report.d)[0])


def _pairs(report: CodeReport) -> tuple[IntArray, IntArray]:
    xs = np.array([a.physical.vector for a, _ in report.logical_pairs], dtype=np.int64).reshape(-1, 2 * report.n)
    zs = np.array([b.physical.vector for _, b in report.logical_pairs], dtype=np.int64).reshape(-1, 2 * report.n)
    return xs, zs


def pure_error(report: CodeReport, synd: Sequence[int]) -> IntArray:
    """A fixed error with the given syndrome."""
    n, d = report.n, report.d
    s = report.stabilizers.matrix
    if len(synd) != s.shape[0]:
        raise ValueError(f"syndrome has length {len(synd)}, expected {s.shape[0]}")
    if not s.shape[0]:
        return np.zeros(2 * n, dtype=np.int64)
    # omega(e, s) = e . (z_s, -x_s)
    m = np.concatenate([s[:, n:], -s[:, :n]], axis=1).T % d
    e = fv.solve(m, synd, d)
    if e is None:
        raise ValueError("syndrome is not attainable")
    return e


def logical_class(report: CodeReport, vec: IntArray) -> IntArray:
    """Coefficients ``(a | b)`` of ``vec`` on the kept logical pairs.

    ``vec`` must commute with the stabilizers. With ``X_j, Z_j`` the kept
    pairs, ``a_j = omega(v, Z_j)`` and ``b_j = -omega(v, X_j)``.
    """
    xs, zs = _pairs(report)
    d = report.d
    v = np.atleast_2d(vec)
    a = symplectic_gram(v, zs, d)
    b = (-symplectic_gram(v, xs, d)) % d
    return np.concatenate([a, b], axis=1)


def class_label(coeffs: IntArray, d: int) -> str:
    return format_pauli(np.asarray(coeffs, dtype=np.int64), d)


@dataclass(frozen=True)
class DecodeOutcome:
    syndrome: tuple[int, ...]
    chosen: str
    coset_probabilities: dict[str, float]
    correction: Pauli
    success: bool | None = None

    @property
    def sector_probability(self) -> float:
        return math.fsum(self.coset_probabilities.values())


def _coset_sums(report: CodeReport, noise: NoiseModel, e0: IntArray, budget: int) -> dict[str, float]:
    n, d = report.n, report.d
    k = len(report.logical_pairs)
    group = report.gauge_group()
    size = d ** (group.shape[0] + 2 * k)
    if size > budget:
        raise BudgetExceeded(f"coset enumeration needs {size} terms, budget is {budget}")
    xs, zs = _pairs(report)
    sums: dict[str, float] = {}
    span = [vs for _, vs in fv.enumerate_span(group, d)] if group.shape[0] else [np.zeros((1, 2 * n), np.int64)]
    for coeffs in product(range(d), repeat=2 * k):
        c = np.asarray(coeffs, dtype=np.int64)
        shift = (e0 + fv.matmul(c[:k], xs, d) + fv.matmul(c[k:], zs, d)) % d if k else e0
        total = math.fsum(math.fsum(noise.probability((vs + shift) % d)) for vs in span)
        sums[class_label(c, d)] = total
    return sums


def ml_decode(
    report: CodeReport,
    noise: NoiseModel,
    synd: Sequence[int],
    budget: int = DEFAULT_BUDGET,
) -> DecodeOutcome:
    """Most likely logical class given ``synd``.

    Class labels are relative to :func:`pure_error`. Ties within a relative
    ``1e-12`` go to the lexicographically smallest label.
    """
    if noise.n != report.n or noise.d != report.d:
        raise ValueError("noise model does not fit the code")
    synd = tuple(int(s) for s in synd)
    e0 = pure_error(report, synd)
    sums = _coset_sums(report, noise, e0, budget)
    best = max(sums.values())
    chosen = min(lab for lab, v in sums.items() if v >= best * (1 - 1e-12))
    xs, zs = _pairs(report)
    k = len(report.logical_pairs)
    c = parse_pauli(chosen, report.d).vector if k else np.zeros(0, np.int64)
    corr = e0.copy()
    if k:
        corr = (corr + fv.matmul(c[:k], xs, report.d) + fv.matmul(c[k:], zs, report.d)) % report.d
    return DecodeOutcome(synd, chosen, sums, Pauli(corr, report.d))


def decode_error(report: CodeReport, noise: NoiseModel, error: Pauli | IntArray, budget: int = DEFAULT_BUDGET) -> DecodeOutcome:
    """Decode the syndrome of ``error`` and record whether the class is right."""
    vec = error.vector if isinstance(error, Pauli) else np.asarray(error, dtype=np.int64)
    out = ml_decode(report, noise, syndrome(report, vec), budget)
    e0 = pure_error(report, out.syndrome)
    truth = class_label(logical_class(report, (vec - e0) % report.d)[0], report.d)
    return DecodeOutcome(out.syndrome, out.chosen, out.coset_probabilities, out.correction, truth == out.chosen)


def all_syndromes(report: CodeReport) -> Iterable[tuple[int, ...]]:
    return product(range(report.d), repeat=report.stabilizers.rank)


def sector_total(report: CodeReport, noise: NoiseModel, budget: int = DEFAULT_BUDGET) -> float:
    """Sum of the probabilities of every syndrome sector; equals 1."""
    return math.fsum(
        math.fsum(_coset_sums(report, noise, pure_error(report, s), budget).values()) for s in all_syndromes(report)
    )


def exact_failure_rate(report: CodeReport, noise: NoiseModel, budget: int = DEFAULT_BUDGET) -> float:
    """Probability that the ML decoder picks the wrong class, summed exactly."""
    fail = []
    for s in all_syndromes(report):
        sums = _coset_sums(report, noise, pure_error(report, s), budget)
        best = max(sums.values())
        chosen = min(lab for lab, v in sums.items() if v >= best * (1 - 1e-12))
        fail.append(math.fsum(v for lab, v in sums.items() if lab != chosen))
    return math.fsum(fail)


# -- Monte Carlo ----------------------------------------------------------------


def wilson_interval(failures: int, trials: int, confidence: float = 0.95) -> tuple[float, float]:
    if trials <= 0:
        raise ValueError("trials must be positive")
    z = NormalDist().inv_cdf(0.5 + confidence / 2)
    phat = failures / trials
    denom = 1 + z * z / trials
    centre = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, centre - half), min(1.0, centre + half)


@dataclass(frozen=True)
class MonteCarloResult:
    p: float | None
    trials: int
    failures: int
    ci_low: float
    ci_high: float
    outcomes: tuple[bool, ...] = ()

    @property
    def rate(self) -> float:
        return self.failures / self.trials

    def row(self) -> dict[str, object]:
        return {
            "p": "" if self.p is None else repr(self.p),
            "trials": self.trials,
            "failures": self.failures,
            "rate": repr(self.rate),
            "ci_low": repr(self.ci_low),
            "ci_high": repr(self.ci_high),
        }


CSV_FIELDS = ("p", "trials", "failures", "rate", "ci_low", "ci_high")


def monte_carlo(
    report: CodeReport,
    noise: NoiseModel,
    trials: int,
    seed: int,
    budget: int = DEFAULT_BUDGET,
    keep_outcomes: bool = False,
) -> MonteCarloResult:
    """Failure rate of ML decoding on sampled errors, with a 95% Wilson interval.

    All errors are drawn up front from one generator seeded with ``seed``, so
    the run is reproducible and the sample does not depend on how decoding is
    scheduled. Each distinct syndrome is decoded once.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    d = report.d
    errors = noise.sample(np.random.default_rng(seed), trials)
    s = report.stabilizers.matrix
    synd = symplectic_gram(errors, s, d) if s.shape[0] else np.zeros((trials, 0), np.int64)
    cache: dict[tuple[int, ...], tuple[str, IntArray]] = {}
    failed = np.zeros(trials, dtype=bool)
    keys = [tuple(int(v) for v in row) for row in synd]
    for key in set(keys):
        if key not in cache:
            out = ml_decode(report, noise, key, budget)
            cache[key] = (out.chosen, pure_error(report, key))
    by_key: dict[tuple[int, ...], list[int]] = {}
    for i, key in enumerate(keys):
        by_key.setdefault(key, []).append(i)
    for key, idx in by_key.items():
        chosen, e0 = cache[key]
        cls = logical_class(report, (errors[idx] - e0) % d)
        labels = [class_label(c, d) for c in cls] if cls.shape[1] else [""] * len(idx)
        failed[idx] = [lab != chosen for lab in labels]
    failures = int(failed.sum())
    lo, hi = wilson_interval(failures, trials)
    outcomes = tuple(bool(f) for f in failed) if keep_outcomes else ()
    return MonteCarloResult(noise.p, trials, failures, lo, hi, outcomes)


def write_csv(results: Iterable[MonteCarloResult], out: TextIO | None = None) -> str:
    """CSV with columns ``p, trials, failures, rate, ci_low, ci_high``."""
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in results:
        w.writerow(r.row())
    text = buf.getvalue()
    if out is not None:
        out.write(text)
    return text


# -- T(L) export ------------------------------------------------------------------

# index of a single-qubit Pauli (x, z) in the T(L) tensor
TL_INDEX = {(0, 0): 0, (1, 0): 1, (0, 1): 3, (1, 1): 2}


@dataclass(frozen=True)
class TLTensor:
    """Sparse 0/1 tensor with ``n`` indices of dimension 4.

    ``entries`` holds the index tuples set to 1. With ``logical`` equal to
    ``None`` the tensor covers every logical class at once and ``labels``
    gives the class of each entry; otherwise all entries belong to
    ``logical``.
    """

    n: int
    k: int
    logical: str | None
    entries: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.entries)

    def to_text(self) -> str:
        head = f"# T(L) n={self.n} k={self.k} logical={self.logical if self.logical is not None else 'all'}"
        lines = [head]
        for i, e in enumerate(self.entries):
            row = "".join(str(g) for g in e)
            lines.append(f"{row} {self.labels[i]}" if self.labels else row)
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_text(text: str) -> "TLTensor":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        head = dict(part.split("=", 1) for part in lines[0].lstrip("# ").split()[1:])
        entries, labels = [], []
        for ln in lines[1:]:
            parts = ln.split()
            entries.append(tuple(int(c) for c in parts[0]))
            if len(parts) > 1:
                labels.append(parts[1])
        logical = None if head["logical"] == "all" else head["logical"]
        return TLTensor(int(head["n"]), int(head["k"]), logical, tuple(entries), tuple(labels))


def tl_index_to_pauli(entry: Sequence[int]) -> Pauli:
    inv = {v: k for k, v in TL_INDEX.items()}
    xz = [inv[g] for g in entry]
    return Pauli.from_xz([a for a, _ in xz], [b for _, b in xz], 2)


def export_tl(report: CodeReport, logical: str | Pauli | None = None, budget: int = DEFAULT_BUDGET) -> TLTensor:
    """All Pauli representatives of a logical class as T(L) indices.

    ``logical`` is a Pauli on the ``k`` kept logical qubits, written in the
    pair basis (``"XI"`` is the first pair's X). Without it the full span of
    stabilizers and logical operators is emitted, ``2^(n+k)`` entries for an
    ``[[n, k]]`` code, each tagged with its class.
    """
    if report.d != 2:
        raise ValueError("T(L) export is defined for qubits only")
    if report.is_subsystem:
        raise ValueError("T(L) export needs a subspace code; gauge-fix first")
    n = report.n
    k = len(report.logical_pairs)
    xs, zs = _pairs(report)
    stab = report.stabilizers.matrix
    if logical is None:
        gens = np.concatenate([xs, zs, stab], axis=0)
    else:
        lv = logical if isinstance(logical, Pauli) else parse_pauli(logical, 2)
        if lv.n != k:
            raise ValueError(f"logical has {lv.n} qubits, code encodes {k}")
        gens = stab
        shift = (fv.matmul(lv.x, xs, 2) + fv.matmul(lv.z, zs, 2)) % 2 if k else np.zeros(2 * n, np.int64)
    if 2 ** gens.shape[0] > budget:
        raise BudgetExceeded(f"T(L) export needs {2 ** gens.shape[0]} entries, budget is {budget}")
    table = np.array([[0, 3], [1, 2]], dtype=np.int64)  # table[x, z]
    entries: list[tuple[int, ...]] = []
    labels: list[str] = []
    chunks = fv.enumerate_span(gens, 2) if gens.shape[0] else [(np.zeros((1, 0), np.int64), np.zeros((1, 2 * n), np.int64))]
    for coeffs, vs in chunks:
        if logical is not None:
            vs = (vs + shift) % 2
        idx = table[vs[:, :n], vs[:, n:]]
        entries.extend(tuple(int(g) for g in row) for row in idx)
        if logical is None:
            labels.extend(class_label(c[: 2 * k], 2) if k else "" for c in coeffs)
    order = sorted(range(len(entries)), key=lambda i: entries[i])
    ent = tuple(entries[i] for i in order)
    lab = tuple(labels[i] for i in order) if labels else ()
    tag = None if logical is None else (str(logical) if k else "")
    return TLTensor(n, k, tag, ent, lab)


__all__ = [
    "CSV_FIELDS",
    "DecodeOutcome",
    "MonteCarloResult",
    "NoiseModel",
    "TLTensor",
    "TL_INDEX",
    "all_syndromes",
    "class_label",
    "decode_error",
    "depolarizing",
    "exact_failure_rate",
    "export_tl",
    "logical_class",
    "ml_decode",
    "monte_carlo",
    "pure_error",
    "sector_total",
    "syndrome",
    "tl_index_to_pauli",
    "wilson_interval",
    "write_csv",
]
