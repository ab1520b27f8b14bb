"""Tensor networks of stabilizer legos and their contraction."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import fieldvec as fv
from .fieldvec import IntArray
from .symplectic import CheckMatrix, Pauli
from .trace import TraceError, direct_sum_many, self_trace

PHYSICAL = "physical"
LOGICAL = "logical"
ROLES = (PHYSICAL, LOGICAL)

Leg = tuple[str, int]


class NetworkError(ValueError):
    """Malformed network: unknown instance, bad leg, reused leg, bad role."""


@dataclass(frozen=True)
class Lego:
    """A stabilizer state on ``n_legs`` legs, plus optional symbolic entries.

    ``ups`` maps an entry name to one label per leg. Labels are plain strings
    understood by :mod:`qlego.pushing` (``"T"``, ``"Tdag"``, ``"X"`` ...).
    """

    name: str
    state: CheckMatrix
    ups: Mapping[str, tuple[str, ...]] = field(default_factory=dict)

    @property
    def n_legs(self) -> int:
        return self.state.n

    @property
    def d(self) -> int:
        return self.state.d

    def with_state(self, state: CheckMatrix, name: str | None = None) -> "Lego":
        return Lego(name or self.name, state, dict(self.ups))


def leg_name(leg: Leg) -> str:
    return f"{leg[0]}.{leg[1]}"


def parse_leg(text: str) -> Leg:
    inst, _, idx = text.rpartition(".")
    if not inst or not idx.isdigit():
        raise NetworkError(f"bad leg reference {text!r}, expected '<instance>.<leg>'")
    return inst, int(idx)


@dataclass
class TensorNetwork:
    """Instances of legos, edges between their legs, and dangling leg roles.

    Dangling legs without an explicit role take ``default_role``.
    """

    d: int = 2
    instances: dict[str, Lego] = field(default_factory=dict)
    edges: list[tuple[Leg, Leg]] = field(default_factory=list)
    roles: dict[Leg, str] = field(default_factory=dict)
    default_role: str = PHYSICAL

    def add(self, instance_id: str, lego: Lego) -> str:
        if instance_id in self.instances:
            raise NetworkError(f"duplicate instance id {instance_id!r}")
        if "." in instance_id and instance_id.rpartition(".")[2].isdigit():
            raise NetworkError(f"instance id {instance_id!r} is ambiguous in leg references")
        if lego.d != self.d:
            raise NetworkError(f"lego {lego.name} has dimension {lego.d}, network has {self.d}")
        self.instances[instance_id] = lego
        return instance_id

    def connect(self, a: Leg, b: Leg) -> None:
        self.edges.append((tuple(a), tuple(b)))  # type: ignore[arg-type]

    def set_role(self, leg: Leg, role: str) -> None:
        if role not in ROLES:
            raise NetworkError(f"unknown role {role!r}")
        self.roles[tuple(leg)] = role  # type: ignore[index]

    # -- structure ----------------------------------------------------------

    def all_legs(self) -> list[Leg]:
        return [(i, k) for i, lego in self.instances.items() for k in range(lego.n_legs)]

    def validate(self) -> None:
        seen: set[Leg] = set()
        for edge in self.edges:
            for leg in edge:
                self._check_leg(leg)
                if leg in seen:
                    raise NetworkError(f"leg {leg_name(leg)} is contracted more than once")
                seen.add(leg)
            if edge[0] == edge[1]:
                raise NetworkError(f"leg {leg_name(edge[0])} is contracted with itself")
        for leg, role in self.roles.items():
            self._check_leg(leg)
            if leg in seen:
                raise NetworkError(f"leg {leg_name(leg)} is contracted but also has a role")
            if role not in ROLES:
                raise NetworkError(f"unknown role {role!r} on {leg_name(leg)}")
        if self.default_role not in ROLES:
            raise NetworkError(f"unknown default role {self.default_role!r}")

    def _check_leg(self, leg: Leg) -> None:
        inst, k = leg
        if inst not in self.instances:
            raise NetworkError(f"unknown instance {inst!r}")
        if not 0 <= k < self.instances[inst].n_legs:
            raise NetworkError(f"leg {leg_name(leg)} out of range")

    def dangling(self) -> list[Leg]:
        used = {leg for e in self.edges for leg in e}
        return [leg for leg in self.all_legs() if leg not in used]

    def role(self, leg: Leg) -> str:
        return self.roles.get(leg, self.default_role)

    def build(self) -> "BuiltState":
        return build(self)

    def subnetwork(self, ids: Iterable[str]) -> "TensorNetwork":
        """Instances ``ids`` with the edges among them; cut edges dangle."""
        keep = set(ids)
        sub = TensorNetwork(self.d, default_role=self.default_role)
        for i in self.instances:
            if i in keep:
                sub.instances[i] = self.instances[i]
        sub.edges = [e for e in self.edges if e[0][0] in keep and e[1][0] in keep]
        sub.roles = {leg: r for leg, r in self.roles.items() if leg[0] in keep}
        return sub


@dataclass(frozen=True)
class BuiltState:
    """Contracted network state.

    ``legs[j]`` names the network leg behind column ``j`` (and ``n + j``).
    ``provenance`` maps each state row to coefficients over ``base_rows``, the
    rows of the direct sum of all instances, whose column labels are
    ``base_legs``.
    """

    state: CheckMatrix
    legs: tuple[Leg, ...]
    steps: tuple[IntArray, ...]
    base_rows: IntArray
    base_legs: tuple[Leg, ...]
    network: TensorNetwork

    @cached_property
    def provenance(self) -> IntArray:
        prov = np.eye(self.base_rows.shape[0], dtype=np.int64)
        for step in self.steps:
            if not step.size:
                return np.zeros((0, self.base_rows.shape[0]), dtype=np.int64)
            prov = fv.matmul(step, prov, self.d)
        return prov

    @property
    def d(self) -> int:
        return self.state.d

    def column(self, leg: Leg) -> int:
        try:
            return self.legs.index(tuple(leg))  # type: ignore[arg-type]
        except ValueError:
            raise NetworkError(f"leg {leg_name(leg)} is not a dangling leg") from None

    def legs_with_role(self, role: str) -> list[Leg]:
        return [leg for leg in self.legs if self.network.role(leg) == role]

    def pauli(self, ops: Mapping[Leg, tuple[int, int]]) -> Pauli:
        n = len(self.legs)
        v = np.zeros(2 * n, dtype=np.int64)
        for leg, (x, z) in ops.items():
            j = self.column(leg)
            v[j], v[n + j] = x, z
        return Pauli(v, self.d)


def build(net: TensorNetwork) -> BuiltState:
    """Direct sum of every instance, then one contraction per edge in order."""
    net.validate()
    if not net.instances:
        raise NetworkError("network has no instances")
    ids = list(net.instances)
    blocks = [net.instances[i].state for i in ids]
    base = direct_sum_many(blocks)
    base_legs = tuple((i, k) for i in ids for k in range(net.instances[i].n_legs))
    labels = list(base_legs)
    state = base
    steps = []
    for i, (a, b) in enumerate(net.edges):
        try:
            res = self_trace(state, labels.index(a), labels.index(b))
        except TraceError as exc:
            raise TraceError(f"edge {i} ({leg_name(a)} -- {leg_name(b)}): {exc}") from None
        steps.append(res.provenance)
        labels = [labels[i] for i in res.legs]
        state = res.state
    return BuiltState(state, tuple(labels), tuple(steps), base.matrix.copy(), base_legs, net)


# -- contraction planning ---------------------------------------------------


@dataclass(frozen=True)
class ContractionStep:
    instance: str
    contracted: tuple[tuple[Leg, Leg], ...]
    isometric: bool
    side: str  # which side carries the isometry: "new", "partial", "free" or ""


@dataclass(frozen=True)
class ContractionSchedule:
    order: tuple[str, ...]
    steps: tuple[ContractionStep, ...]

    @property
    def isometric(self) -> bool:
        return all(s.isometric for s in self.steps)


@dataclass(frozen=True)
class PlanFailure:
    """No isometric ordering was found within the step limit."""

    reason: str
    step: ContractionStep | None
    partial_order: tuple[str, ...]

    @property
    def isometric(self) -> bool:
        return False


def _maximally_mixed(state: CheckMatrix, cols: Sequence[int]) -> bool:
    if not cols:
        return True
    outside = [c for c in range(state.n) if c not in set(cols)]
    sub = state.columns(outside)
    r_out = fv.rank(sub, state.d) if sub.size else 0
    return state.rank - r_out == 0


def _step_isometric(net: TensorNetwork, partial: list[str], new: str) -> ContractionStep:
    placed = set(partial)
    cut = [e for e in net.edges if (e[0][0] == new and e[1][0] in placed) or (e[1][0] == new and e[0][0] in placed)]
    pairs = tuple((a, b) if a[0] == new else (b, a) for a, b in cut)
    if not pairs:
        return ContractionStep(new, (), True, "free")
    lego = net.instances[new]
    own_edges = [e for e in net.edges if e[0][0] == new and e[1][0] == new]
    own_contracted = {leg for e in own_edges for leg in e}
    logical_new = [k for k in range(lego.n_legs) if (new, k) not in own_contracted and net.role((new, k)) == "logical"]
    # the incoming tensor maps its logical and contracted legs isometrically
    # onto the rest exactly when that set is maximally mixed
    cols = sorted(set(logical_new) | {leg[1] for leg, _ in pairs})
    if not own_edges and _maximally_mixed(lego.state, cols):
        return ContractionStep(new, pairs, True, "new")
    # otherwise try the partially built network as the isometric side
    sub = net.subnetwork(partial)
    built = build(sub)
    part_cols = [built.column(p) for _, p in pairs]
    part_cols += [built.column(leg) for leg in built.legs if net.role(leg) == LOGICAL and leg not in {p for _, p in pairs}]
    if _maximally_mixed(built.state, sorted(set(part_cols))):
        return ContractionStep(new, pairs, True, "partial")
    return ContractionStep(new, pairs, False, "")


def plan_contraction(net: TensorNetwork, max_steps: int | None = None) -> ContractionSchedule | PlanFailure:
    """Greedy search for an ordering in which every step is an isometry.

    Each start instance is tried once (backtracking depth one). From a start
    the frontier is scanned in insertion order and the first isometric
    neighbour is added.
    """
    net.validate()
    ids = list(net.instances)
    limit = len(ids) if max_steps is None else max_steps
    worst: PlanFailure | None = None
    for start in ids:
        order = [start]
        steps = [ContractionStep(start, (), True, "free")]
        failed: ContractionStep | None = None
        while len(order) < len(ids):
            if len(order) >= limit:
                failed = None
                break
            placed = set(order)
            frontier = [i for i in ids if i not in placed and any(
                (e[0][0] == i and e[1][0] in placed) or (e[1][0] == i and e[0][0] in placed) for e in net.edges
            )]
            if not frontier:
                frontier = [i for i in ids if i not in placed][:1]
            chosen = None
            for cand in frontier:
                step = _step_isometric(net, order, cand)
                if step.isometric:
                    chosen = step
                    break
                failed = failed or step
            if chosen is None:
                break
            failed = None
            order.append(chosen.instance)
            steps.append(chosen)
        if len(order) == len(ids):
            return ContractionSchedule(tuple(order), tuple(steps))
        reason = "step limit reached" if len(order) >= limit else "no isometric step available"
        cand = PlanFailure(reason, failed, tuple(order))
        if worst is None or len(cand.partial_order) > len(worst.partial_order):
            worst = cand
    assert worst is not None
    return worst


def complexity_probe(sizes: Sequence[int], make_network) -> list[tuple[int, float]]:
    """Wall-clock build time for ``make_network(N)`` at each size."""
    out = []
    for size in sizes:
        net = make_network(size)
        t0 = time.perf_counter()
        build(net)
        out.append((size, time.perf_counter() - t0))
    return out


__all__ = [
    "BuiltState",
    "ContractionSchedule",
    "ContractionStep",
    "LOGICAL",
    "Lego",
    "NetworkError",
    "PHYSICAL",
    "PlanFailure",
    "TensorNetwork",
    "TraceError",
    "build",
    "complexity_probe",
    "leg_name",
    "parse_leg",
    "plan_contraction",
]
