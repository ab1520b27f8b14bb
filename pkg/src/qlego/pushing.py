"""Operator pushing through contracted networks.

Pauli pushing is linear algebra: a prescription on some dangling legs is
extended to a full stabilizer of the network state by solving against its
check matrix, and the row provenance says which generator of which lego was
inserted. Non-Pauli pushing works on opaque labels such as ``T`` or ``Sdag``
that only know their complex conjugate (the operator that matches them across
a contracted edge) and how powers of the same label combine.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping, Sequence, Union

import numpy as np

from . import fieldvec as fv
from .network import BuiltState, Leg, TensorNetwork, leg_name
from .symplectic import Pauli, format_pauli, parse_pauli


class SymbolicError(ValueError):
    """Unknown label, or a composition the label algebra does not support."""


# -- Pauli pushing -------------------------------------------------------------


def find_representation(built: BuiltState, partial: Mapping[Leg, tuple[int, int]]) -> Pauli | None:
    """A stabilizer of the network state that acts as ``partial`` prescribes.

    ``partial`` maps dangling legs to ``(x, z)`` exponents. Legs that are not
    mentioned are left free. Returns ``None`` when no stabilizer fits.
    """
    n, d = len(built.legs), built.d
    cols = []
    target = []
    for leg, (x, z) in partial.items():
        j = built.column(leg)
        cols.append(j)
        target.append((x % d, z % d))
    if not cols:
        return Pauli.identity(n, d)
    m = built.state.matrix
    sub = np.concatenate([m[:, cols], m[:, [n + j for j in cols]]], axis=1)
    rhs = [t[0] for t in target] + [t[1] for t in target]
    coeff = fv.solve(sub, rhs, d)
    if coeff is None:
        return None
    if coeff.size == 0:
        return Pauli.identity(n, d)
    return Pauli(fv.matmul(coeff, m, d), d)


@dataclass(frozen=True)
class FlowDiagram:
    """Where an operator travels inside the network.

    ``local`` holds the operator each instance contributes (only instances
    that act nontrivially), a :class:`Pauli` or, for symbolic flows, the
    per-leg labels joined by spaces. ``edges`` lists internal edges that carry a
    nontrivial pair, oriented as in the network, with the label at each end.
    ``dangling`` gives the operator on each dangling leg that is hit.
    """

    d: int
    local: dict[str, object]
    edges: tuple[tuple[Leg, Leg, str, str], ...]
    dangling: dict[Leg, str]

    @property
    def is_empty(self) -> bool:
        return not self.local

    def is_consistent(self, table: "MatchingTable | None" = None) -> bool:
        """Every internal edge carries a matching pair."""
        table = table or MatchingTable(self.d)
        for _, _, a, b in self.edges:
            try:
                pa, pb = parse_pauli(a, self.d), parse_pauli(b, self.d)
            except ValueError:
                if not table.matches(a, b):
                    return False
                continue
            if pb.vector.tolist() != [pa.vector[0], (-pa.vector[1]) % self.d]:
                return False
        return True


def _leg_label(x: int, z: int, d: int) -> str:
    return format_pauli([x, z], d)


def flow_decomposition(built: BuiltState, op: Pauli) -> FlowDiagram:
    """Expand ``op`` into the lego generators that produce it."""
    d = built.d
    n = len(built.legs)
    if op.n != n:
        raise ValueError(f"operator has {op.n} legs, network has {n} dangling legs")
    m = built.state.matrix
    coeff = fv.solve(m, op.vector, d) if m.shape[0] else (None if op.vector.any() else np.zeros(0, np.int64))
    if coeff is None:
        raise ValueError("operator is not a stabilizer of the network state")
    if coeff.size:
        base_coeff = fv.matmul(coeff, built.provenance, d)
        full = fv.matmul(base_coeff, built.base_rows, d)
    else:
        full = np.zeros(built.base_rows.shape[1], dtype=np.int64)
    nb = len(built.base_legs)
    at = {leg: (int(full[i]), int(full[nb + i])) for i, leg in enumerate(built.base_legs)}

    local: dict[str, object] = {}
    for inst, lego in built.network.instances.items():
        vec = np.array(
            [at[(inst, k)][0] for k in range(lego.n_legs)] + [at[(inst, k)][1] for k in range(lego.n_legs)],
            dtype=np.int64,
        )
        if vec.any():
            local[inst] = Pauli(vec, d)
    edges = []
    for a, b in built.network.edges:
        if at[a] != (0, 0) or at[b] != (0, 0):
            edges.append((a, b, _leg_label(*at[a], d), _leg_label(*at[b], d)))
    dangling = {leg: _leg_label(*at[leg], d) for leg in built.legs if at[leg] != (0, 0)}
    return FlowDiagram(d, local, tuple(edges), dangling)


def _q(text: str) -> str:
    return '"' + text.replace('"', r"\"") + '"'


def flow_to_dot(diagram: FlowDiagram) -> str:
    """DOT text for a flow diagram.

    One node per acting instance (labelled with its local operator), one
    directed edge per internal edge labelled ``tail/head`` with the operators
    at the two ends, and a point-shaped node per hit dangling leg reached by a
    half-edge labelled with the operator there. Lines are sorted so equal
    diagrams give identical text.
    """
    lines = ["digraph flow {", "  node [shape=box];"]
    for inst in sorted(diagram.local):
        lines.append(f"  {_q(inst)} [label={_q(inst + ': ' + str(diagram.local[inst]))}];")
    for a, b, la, lb in sorted(diagram.edges):
        lines.append(
            f"  {_q(a[0])} -> {_q(b[0])} [label={_q(la + '/' + lb)}, "
            f"taillabel={_q(str(a[1]))}, headlabel={_q(str(b[1]))}];"
        )
    for leg in sorted(diagram.dangling):
        name = leg_name(leg)
        lines.append(f"  {_q(name)} [shape=point];")
        lines.append(f"  {_q(leg[0])} -> {_q(name)} [label={_q(diagram.dangling[leg])}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- symbolic labels -----------------------------------------------------------


_LABEL = re.compile(r"^([A-Za-z]+?)(dag)?(?:\^(-?\d+))?$")


@dataclass(frozen=True)
class Label:
    """A single-leg operator ``base ** power``."""

    base: str
    power: int = 1

    def __str__(self) -> str:
        if self.power == 0 or self.base == "I":
            return "I"
        if self.power == 1:
            return self.base
        return f"{self.base}^{self.power}"


@dataclass
class MatchingTable:
    """Which label cancels which across a contracted edge.

    Each base label maps to its complex conjugate (another base label and a
    power). Powers commute with conjugation, so ``A^p`` matches
    ``conj(A)^p``. ``order`` gives the multiplicative order used to reduce
    powers. Entries added with :meth:`extend` are trusted as given.
    """

    d: int = 2
    conjugate: dict[str, tuple[str, int]] = field(default_factory=dict)
    order: dict[str, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        fv.check_modulus(self.d)
        d = self.d
        base = {"I": ("I", 1), "X": ("X", 1), "Z": ("Z", -1)}
        orders = {"I": 1, "X": d, "Z": d}
        if d == 2:
            base.update({"Y": ("Y", 1), "H": ("H", 1), "S": ("S", -1), "T": ("T", -1)})
            orders.update({"Y": 2, "H": 2, "S": 4, "T": 8})
        for k, v in base.items():
            self.conjugate.setdefault(k, v)
        for k, v in orders.items():
            self.order.setdefault(k, v)

    def extend(self, name: str, conj: str, conj_power: int = 1, order: int | None = None) -> None:
        """Declare ``conj(name) = conj ** conj_power`` (and the reverse)."""
        self.conjugate[name] = (conj, conj_power)
        if conj not in self.conjugate:
            # conj(conj(A)) = A, so conj(B) = A^(1/p); only p = +-1 is invertible in general
            if conj_power not in (1, -1):
                raise SymbolicError("the reverse of a matching must have power +-1")
            self.conjugate[conj] = (name, conj_power)
        if order is not None:
            self.order[name] = order
            self.order.setdefault(conj, order)

    def parse(self, text: str) -> Label:
        m = _LABEL.match(text.strip())
        if not m or m.group(1) not in self.conjugate:
            raise SymbolicError(f"unknown operator label {text!r}")
        power = int(m.group(3)) if m.group(3) is not None else 1
        if m.group(2):
            power = -power
        return self.normal(Label(m.group(1), power))

    def normal(self, label: Label) -> Label:
        order = self.order.get(label.base)
        p = label.power % order if order else label.power
        if p == 0 or label.base == "I":
            return Label("I", 0)
        return Label(label.base, p)

    def conj(self, label: Label) -> Label:
        if label.base == "I":
            return label
        b, p = self.conjugate[label.base]
        return self.normal(Label(b, p * label.power))

    def matches(self, a: str | Label, b: str | Label) -> bool:
        la = self.parse(a) if isinstance(a, str) else self.normal(a)
        lb = self.parse(b) if isinstance(b, str) else self.normal(b)
        return self.conj(la) == lb

    def pretty(self, label: Label) -> str:
        """Canonical text, writing inverses of ``S`` and ``T`` as ``dag``."""
        label = self.normal(label)
        order = self.order.get(label.base)
        if label.base in ("S", "T") and order and label.power == order - 1:
            return label.base + "dag"
        if label.base not in ("S", "T") and order and self.d > 2 and label.power == order - 1:
            return f"{label.base}^-1"
        return str(label)

    def pauli_of(self, label: Label) -> tuple[int, int] | None:
        """``(x, z)`` of a Pauli label, ``None`` for anything else."""
        label = self.normal(label)
        if label.base == "I":
            return (0, 0)
        if label.base == "X":
            return (label.power % self.d, 0)
        if label.base == "Z":
            return (0, label.power % self.d)
        if label.base == "Y" and self.d == 2:
            return (1, 1)
        return None


Assignment = Union[str, Sequence[str]]


def _compose(table: MatchingTable, factors: list[list[Label]]) -> list[Label]:
    """Multiply per-leg labels, accumulating powers of one base only."""
    out = []
    for per_leg in zip(*factors):
        acc = Label("I", 0)
        for lab in per_leg:
            if lab.base == "I":
                continue
            if acc.base == "I":
                acc = lab
            elif acc.base == lab.base:
                acc = table.normal(Label(acc.base, acc.power + lab.power))
            else:
                raise SymbolicError(f"cannot compose {acc} with {lab} on one leg")
        out.append(acc)
    return out


def resolve_assignment(net: TensorNetwork, inst: str, value, table: MatchingTable) -> list[Label]:
    """Per-leg labels for one instance.

    ``value`` is a catalog entry name of the lego, a list of per-leg labels,
    or a dict ``{"compose": [entry, entry, ...]}``. Explicit label lists must
    be made of Paulis (so they can be checked against the lego's stabilizer
    group); anything non-Pauli has to come from the catalog.
    """
    lego = net.instances[inst]
    if isinstance(value, str):
        if value not in lego.ups:
            if value in ("I", "identity"):
                return [Label("I", 0)] * lego.n_legs
            raise SymbolicError(f"lego {lego.name} has no entry {value!r}; known: {sorted(lego.ups)}")
        return [table.parse(s) for s in lego.ups[value]]
    if isinstance(value, Mapping):
        if set(value) != {"compose"}:
            raise SymbolicError(f"unsupported assignment {dict(value)!r}")
        return _compose(table, [resolve_assignment(net, inst, v, table) for v in value["compose"]])
    labels = [table.parse(s) for s in value]
    if len(labels) != lego.n_legs:
        raise SymbolicError(f"{inst}: {len(labels)} labels for {lego.n_legs} legs")
    xz = [table.pauli_of(lab) for lab in labels]
    if any(v is None for v in xz):
        raise SymbolicError(f"{inst}: explicit non-Pauli labels are not checked; use a catalog entry")
    vec = np.array([v[0] for v in xz] + [v[1] for v in xz], dtype=np.int64)  # type: ignore[index]
    if not lego.state.contains(vec):
        raise SymbolicError(f"{inst}: {[str(lab) for lab in labels]} does not stabilize the lego")
    return labels


def _symbolic_labels(net: TensorNetwork, assignment: Mapping[str, Assignment], table: MatchingTable) -> dict[Leg, Label]:
    net.validate()
    for inst in assignment:
        if inst not in net.instances:
            raise SymbolicError(f"unknown instance {inst!r}")
    labels: dict[Leg, Label] = {}
    for inst in net.instances:
        value = assignment.get(inst, "I")
        for k, lab in enumerate(resolve_assignment(net, inst, value, table)):
            labels[(inst, k)] = lab
    return labels


def verify_symbolic(
    net: TensorNetwork,
    assignment: Mapping[str, Assignment],
    table: MatchingTable | None = None,
) -> tuple[bool, dict[Leg, str]]:
    """Check that inserted unitaries match on every contracted edge.

    Instances missing from ``assignment`` get the identity. Returns whether
    all edges match, and the resulting operator label on every dangling leg.
    """
    table = table or MatchingTable(net.d)
    labels = _symbolic_labels(net, assignment, table)
    ok = all(table.conj(labels[a]) == labels[b] for a, b in net.edges)
    dangling = {leg: table.pretty(labels[leg]) for leg in net.dangling()}
    return ok, dangling


def symbolic_flow(
    net: TensorNetwork,
    assignment: Mapping[str, Assignment],
    table: MatchingTable | None = None,
) -> FlowDiagram:
    """Flow diagram of a symbolic assignment, whether or not it matches."""
    table = table or MatchingTable(net.d)
    labels = _symbolic_labels(net, assignment, table)
    local: dict[str, object] = {}
    for inst, lego in net.instances.items():
        per_leg = [labels[(inst, k)] for k in range(lego.n_legs)]
        if any(lab.base != "I" for lab in per_leg):
            local[inst] = " ".join(table.pretty(lab) for lab in per_leg)
    edges = tuple(
        (a, b, table.pretty(labels[a]), table.pretty(labels[b]))
        for a, b in net.edges
        if labels[a].base != "I" or labels[b].base != "I"
    )
    dangling = {leg: table.pretty(labels[leg]) for leg in net.dangling() if labels[leg].base != "I"}
    return FlowDiagram(net.d, local, edges, dangling)


__all__ = [
    "FlowDiagram",
    "Label",
    "MatchingTable",
    "SymbolicError",
    "find_representation",
    "flow_decomposition",
    "flow_to_dot",
    "resolve_assignment",
    "symbolic_flow",
    "verify_symbolic",
]
