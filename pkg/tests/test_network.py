import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import random_stabilizer_state
from qlego import builders
from qlego import fieldvec as fv
from qlego.analysis import is_correctable_erasure
from qlego.duality import extract
from qlego.legos import code_422, steane_713
from qlego.network import (
    LOGICAL,
    Lego,
    NetworkError,
    PlanFailure,
    TensorNetwork,
    build,
    complexity_probe,
    parse_leg,
    plan_contraction,
)
from qlego.trace import TraceError


def test_single_trace_network():
    built = build(builders.single_trace_pair())
    assert built.state.n == 10 and built.state.rank == 10
    r = extract(built)
    assert (r.n, r.apparent_k, r.true_k) == (6, 4, 4)


def test_toric_two_leg_counts():
    built = build(builders.toric(2))
    assert len(built.legs) == 16
    assert len(built.legs_with_role(LOGICAL)) == 8


def test_lone_lego_is_its_state():
    net = TensorNetwork()
    net.add("s", steane_713())
    assert build(net).state == steane_713().state


def test_validation_errors():
    net = TensorNetwork()
    net.add("a", code_422())
    with pytest.raises(NetworkError):
        net.add("a", code_422())
    with pytest.raises(NetworkError):
        net.add("b.1", code_422())
    net.connect(("a", 0), ("a", 0))
    with pytest.raises(NetworkError):
        build(net)
    net.edges = [(("a", 0), ("a", 1)), (("a", 1), ("a", 2))]
    with pytest.raises(NetworkError):
        build(net)
    net.edges = [(("a", 0), ("zz", 1))]
    with pytest.raises(NetworkError):
        net.validate()
    net.edges = [(("a", 0), ("a", 7))]
    with pytest.raises(NetworkError):
        net.validate()
    with pytest.raises(NetworkError):
        net.set_role(("a", 0), "bulk")
    with pytest.raises(NetworkError):
        build(TensorNetwork())
    with pytest.raises(NetworkError):
        parse_leg("a.x")


def test_mixed_dimensions_rejected():
    from qlego.legos import repetition

    net = TensorNetwork(3)
    with pytest.raises(NetworkError):
        net.add("a", code_422())
    net.add("r", repetition(2, d=3))


def test_trace_error_names_the_edge():
    from qlego.symplectic import CheckMatrix

    # not a valid state (its rows anticommute), so the rank check must fire
    rows = [[0, 0, 0, 1, 0, 0], [0, 0, 1, 1, 0, 1], [1, 1, 0, 0, 1, 1]]
    bad = Lego("bad", CheckMatrix(rows, 2, 3, validate=False))
    net = TensorNetwork()
    net.add("b", bad)
    net.connect(("b", 0), ("b", 1))
    with pytest.raises(TraceError, match=r"edge 0 \(b\.0 -- b\.1\)"):
        build(net)


def _shuffled(net, rng):
    other = TensorNetwork(net.d, dict(net.instances), list(net.edges), dict(net.roles), net.default_role)
    perm = rng.permutation(len(other.edges))
    other.edges = [other.edges[i] for i in perm]
    return other


@pytest.mark.parametrize("make", [lambda: builders.toric(2), lambda: builders.surface(2, 3), lambda: builders.triangle_twist(1)])
def test_edge_order_does_not_matter(make, rng):
    net = make()
    ref = build(net)
    for _ in range(3):
        other = build(_shuffled(net, rng))
        cols = [other.legs.index(leg) for leg in ref.legs]
        n = len(cols)
        perm = cols + [n + c for c in cols]
        assert fv.row_space_equal(other.state.matrix[:, perm], ref.state.matrix, 2)


@pytest.mark.parametrize("make", [builders.double_trace, lambda: builders.toric(2), lambda: builders.rm_pair(False)])
def test_provenance_reproduces_rows(make):
    built = build(make())
    full = fv.matmul(built.provenance, built.base_rows, built.d)
    n_base = len(built.base_legs)
    cols = [built.base_legs.index(leg) for leg in built.legs]
    assert np.array_equal(full[:, cols + [n_base + c for c in cols]], built.state.matrix)
    # traced columns are matched, not necessarily zero: x equal, z opposite
    for a, b in built.network.edges:
        i, j = built.base_legs.index(a), built.base_legs.index(b)
        assert np.array_equal(full[:, i], full[:, j])
        assert not ((full[:, n_base + i] + full[:, n_base + j]) % built.d).any()


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_leg_counting_duality_on_random_networks(seed):
    rng = np.random.default_rng(seed)
    d = int(rng.choice([2, 3, 5]))
    net = TensorNetwork(d)
    for i in range(int(rng.integers(2, 5))):
        net.add(f"t{i}", Lego("rand", random_stabilizer_state(int(rng.integers(2, 6)), d, rng)))
    free = net.all_legs()
    rng.shuffle(free)
    for _ in range(int(rng.integers(0, len(free) // 2))):
        a, b = free.pop(), free.pop()
        net.connect(a, b)
    for leg in free:
        if rng.random() < 0.4:
            net.set_role(leg, LOGICAL)
    if not net.dangling():
        return
    r = extract(build(net))
    assert r.n - r.r_physical == r.apparent_k - r.r_logical == r.true_k
    assert len(r.logical_pairs) == r.true_k


def test_plan_chain_is_isometric():
    sched = plan_contraction(builders.chain(5))
    assert not isinstance(sched, PlanFailure) and sched.isometric
    assert len(sched.order) == 4
    edges = {frozenset(e) for e in builders.chain(5).edges}
    used = {frozenset(pair) for step in sched.steps for pair in step.contracted}
    assert used == edges


def test_plan_flat_perfect_is_isometric():
    sched = plan_contraction(builders.flat_perfect(3))
    assert sched.isometric and not isinstance(sched, PlanFailure)
    built = build(builders.flat_perfect(3))
    assert extract(built).r_logical == 0


def test_plan_toric_fails():
    res = plan_contraction(builders.toric(2))
    assert isinstance(res, PlanFailure) and not res.isometric


def test_plan_single_lego_and_step_limit():
    net = TensorNetwork()
    net.add("s", steane_713())
    sched = plan_contraction(net)
    assert sched.order == ("s",) and sched.isometric
    res = plan_contraction(builders.chain(5), max_steps=2)
    assert isinstance(res, PlanFailure) and res.reason == "step limit reached"


def test_plan_isometric_steps_are_correctable_erasures():
    net = builders.chain(4)
    sched = plan_contraction(net)
    for k, step in enumerate(sched.steps[1:], start=1):
        if step.side != "new":
            continue
        # the legs of the incoming lego that get contracted are a correctable
        # erasure of that lego viewed as a code on its remaining legs
        lego = net.instances[step.instance]
        from qlego.duality import extract_state

        cut = [leg[1] for leg, _ in step.contracted]
        logical = [i for i in (4, 5)]
        phys = [i for i in range(lego.n_legs) if i not in logical]
        report = extract_state(lego.state, phys, logical)
        assert is_correctable_erasure(report, [phys.index(c) for c in cut])


def test_complexity_probe_runs():
    rows = complexity_probe([20, 40], builders.chain_by_legs)
    assert [n for n, _ in rows] == [20, 40] and all(t >= 0 for _, t in rows)


def test_trace_error_type_is_exported():
    assert issubclass(TraceError, ValueError)
