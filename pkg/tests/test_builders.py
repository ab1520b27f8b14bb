from itertools import permutations, product

import numpy as np
import pytest

from oracles import bell_state, pauli_matrix_qudit, physical_vector, surface_oracle
from qlego import builders
from qlego import fieldvec as fv
from qlego.analysis import distance
from qlego.duality import extract, extract_state, gauge_fix
from qlego.legos import (
    UnknownLego,
    builtin,
    catalog_names,
    code_422,
    reed_muller_15,
    steane_713,
    stopper_z,
    twist_code_4qubit,
)
from qlego.network import LOGICAL, PHYSICAL, build, leg_name
from qlego.pushing import find_representation
from qlego.symplectic import CheckMatrix, is_css, parse_pauli

HAMMING = np.array([[1, 0, 1, 0, 1, 0, 1], [0, 1, 1, 0, 0, 1, 1], [0, 0, 0, 1, 1, 1, 1]])
TEXTBOOK_STEANE = np.block([[HAMMING, np.zeros_like(HAMMING)], [np.zeros_like(HAMMING), HAMMING]])


def equal_up_to_qubit_order(stab: CheckMatrix, reference: np.ndarray) -> bool:
    n = stab.n
    for perm in permutations(range(n)):
        cols = list(perm) + [n + p for p in perm]
        if fv.row_space_equal(stab.matrix[:, cols], reference, stab.d):
            return True
    return False


# -- catalog ------------------------------------------------------------------


def test_catalog_entries_are_full_rank():
    for name in catalog_names():
        lego = builtin(name, **({"r": 2} if name == "repetition" else {}))
        assert lego.state.rank == lego.n_legs, name
    with pytest.raises(UnknownLego):
        builtin("no_such_lego")
    with pytest.raises(ValueError):
        builtin("code_422", d=3)


def test_catalog_examples():
    assert code_422().n_legs == 6
    assert stopper_z().state == CheckMatrix.from_paulis(["Z"])
    rm = reed_muller_15()
    assert rm.n_legs == 16
    r = extract_state(rm.state, list(range(15)), [15])
    assert distance(r).distance == 3
    # twist code stabilizers on its four physical legs
    tw = twist_code_4qubit()
    r = extract_state(tw.state, [0, 1, 2, 3], [4])
    assert r.stabilizers == CheckMatrix.from_paulis(["XXIX", "ZIZZ", "YYYI"])


def test_steane_lego_is_textbook():
    lego = steane_713()
    r = extract_state(lego.state, list(range(7)), [7])
    assert equal_up_to_qubit_order(r.stabilizers, TEXTBOOK_STEANE)


@pytest.mark.parametrize("d", [2, 3, 5])
def test_qudit_catalog(d):
    for name in ("repetition", "stopper_x", "stopper_z", "hadamard_rank2", "rep2_encoder_rank3"):
        params = {"r": 3} if name == "repetition" else {}
        lego = builtin(name, d=d, **params)
        assert lego.state.rank == lego.n_legs and lego.d == d


# -- constructions ---------------------------------------------------------------


def test_steane_from_422():
    r = extract(build(builders.steane_from_422()))
    assert (r.n, r.true_k) == (7, 1)
    assert equal_up_to_qubit_order(r.stabilizers, TEXTBOOK_STEANE)
    assert distance(r).distance == 3


@pytest.mark.parametrize("m", range(2, 7))
def test_chain(m):
    r = extract(build(builders.chain(m)))
    assert (r.n, r.true_k) == (2 * m, 2 * m - 2)
    assert distance(r).distance == 2


@pytest.mark.parametrize("L", [2, 3])
def test_toric_checks_in_row_space(L):
    built = build(builders.toric(L))
    r = extract(built)
    stars, plaqs = builders.toric_checks(L)
    for ring, letter in [(s, "X") for s in stars] + [(p, "Z") for p in plaqs]:
        v = physical_vector(r, {(inst, 4): letter for inst in ring})
        assert r.stabilizers.contains(v)


def test_toric_find_representation_recovers_checks():
    built = build(builders.toric(3))
    stars, plaqs = builders.toric_checks(3)
    logical = built.legs_with_role(LOGICAL)
    for ring, letter, xz in ((stars[0], "X", (1, 0)), (plaqs[0], "Z", (0, 1))):
        # fix one leg of the ring, leave the other three free, and ask for
        # the identity everywhere else
        partial = {leg: (0, 0) for leg in built.legs if leg[0] not in ring[1:] or leg[1] != 4}
        partial[(ring[0], 4)] = xz
        rep = find_representation(built, partial)
        assert rep is not None
        support = {leg_name(built.legs[j]) for j in rep.support}
        assert support == {f"{inst}.4" for inst in ring}
        assert all(rep.leg(j) == xz for j in rep.support)


def test_surface_with_stoppers_is_standard():
    r = extract(build(builders.surface(3, 3)))
    assert (r.n, r.true_k) == (13, 1)
    rows = [physical_vector(r, {(f"t{a}_{b}", 4): letter for a, b in ring}) for letter, ring in surface_oracle(3, 3)]
    assert len(rows) == 12
    assert sorted(len(ring) for _, ring in surface_oracle(3, 3)) == [3] * 8 + [4] * 4
    assert fv.row_space_equal(np.array(rows), r.stabilizers.matrix, 2)
    assert distance(r).distance == 3


def test_surface_bare_boundary_has_weight_three_checks():
    r = extract(build(builders.surface(3, 3, "bare")))
    light = [p for p in r.stabilizers.rows() if p.weight == 3]
    assert len(light) >= 8
    # each one sits on the legs of a single boundary lego
    for p in light:
        assert len({r.physical_legs[j][0] for j in p.support}) == 1


def test_surface_repetition_boundary_builds():
    r = extract(build(builders.surface(3, 3, "repetition", 2)))
    assert r.n == 23
    with pytest.raises(ValueError):
        builders.surface(3, 3, "wavy")
    with pytest.raises(ValueError):
        builders.surface(1, 3)


def test_xzzx_pattern():
    r = extract(build(builders.xzzx(3, 3)))
    assert not r.css
    assert is_css(r.stabilizers) == (False, False)
    sites = set(builders.planar_sites(3, 3))
    interior = 0
    for letter, ring in surface_oracle(3, 3):
        if len(ring) != 4:
            continue
        interior += 1
        # horizontal neighbours carry X, vertical ones Z
        (r0, c0) = ring[0][0] + 1, ring[0][1]
        ops = {}
        for a, b in ring:
            ops[(f"t{a}_{b}", 4)] = "X" if a == r0 else "Z"
        assert r.stabilizers.contains(physical_vector(r, ops))
    assert interior == 4
    assert distance(r).distance == 3


def test_xzzx_smallest_case():
    r = extract(build(builders.xzzx(2, 2)))
    assert (r.n, r.true_k) == (5, 1)


def test_triangle_twist():
    net = builders.triangle_twist(2)
    r = extract(build(net))
    assert (r.n, r.true_k) == (19, 1)
    assert not r.css
    assert any(2 in {int(p.x[j]) + int(p.z[j]) for j in p.support} for p in r.stabilizers.rows())
    small = extract(build(builders.triangle_twist(1)))
    assert (small.n, small.true_k) == (7, 1)
    assert distance(small).distance == 3


def test_bacon_shor_shares_surface_network():
    from qlego import io

    a = io.network_to_dict(builders.surface(3, 3))
    b = io.network_to_dict(builders.bacon_shor(3, 3))
    assert a["roles"] != b["roles"]
    a.pop("roles")
    b.pop("roles")
    assert a == b


def test_bacon_shor_code():
    built = build(builders.bacon_shor(3, 3))
    g = gauge_fix(extract(built), [builders.bacon_shor_logicals(3, 3, built)])
    assert (g.n, g.true_k) == (9, 1)
    assert distance(g).distance == 3
    group = CheckMatrix(g.gauge_group(), 2, 9, validate=False)
    phys = [leg for leg in built.legs if built.network.role(leg) == PHYSICAL]
    # neighbouring qubits in a row give XX, in a column ZZ (or the reverse)
    found = {"XX": 0, "ZZ": 0}
    for a in range(9):
        for b in range(a + 1, 9):
            for letter in ("X", "Z"):
                v = np.zeros(18, np.int64)
                off = 0 if letter == "X" else 9
                v[off + a] = v[off + b] = 1
                if fv.in_row_space(group.matrix, group.pivots, v, 2)[0]:
                    found[letter * 2] += 1
    assert found["XX"] >= 6 and found["ZZ"] >= 6


def test_one_d_dual():
    r = extract(build(builders.one_d_dual(3, 3)))
    assert (r.n, r.true_k) == (20, 18)
    assert r.stabilizers == CheckMatrix.from_paulis(["X" * 20, "Z" * 20])
    assert distance(r, weight_cap=2).distance == 2


def test_flat_perfect():
    r = extract(build(builders.flat_perfect(2)))
    assert r.true_k == 4 and r.r_logical == 0


def test_3d_single_vertex_is_steane():
    net = builders.three_d_steane(1, 1, 1, "open")
    r = extract(build(net))
    assert (r.n, r.true_k) == (7, 1)
    assert equal_up_to_qubit_order(r.stabilizers, TEXTBOOK_STEANE)


@pytest.mark.parametrize("size,boundary", [(2, "corner"), (2, "open"), (3, "open")])
def test_3d_cube_stabilizers(size, boundary):
    built = build(builders.three_d_steane(size, size, size, boundary))
    r = extract(built)
    cubes = builders.cube_supports(size, size, size)
    assert cubes
    for cube in cubes:
        for letter in "XZ":
            v = physical_vector(r, {(inst, 6): letter for inst in cube})
            assert r.stabilizers.contains(v)


def test_3d_tree_flow():
    built = build(builders.three_d_steane(2, 2, 2, "corner"))
    logical = built.legs_with_role(LOGICAL)
    partial = {leg: (0, 0) for leg in logical}
    partial[("v1_1_1", 7)] = (1, 0)
    rep = find_representation(built, partial)
    assert rep is not None
    touched = {built.legs[j][0] for j in rep.support}
    # the flow branches through more than one vertex
    assert len(touched) > 1


def test_3d_boundary_dict_and_errors():
    net = builders.three_d_steane(2, 2, 2, {"0,0,0:-x": "stopper_x", "0,0,0:-y": "logical"})
    assert build(net).state.rank == len(build(net).legs)
    with pytest.raises(ValueError):
        builders.three_d_steane(2, 2, 2, {"1,1,1:-x": "stopper_x"})
    with pytest.raises(ValueError):
        builders.three_d_steane(2, 2, 2, "weird")


@pytest.mark.parametrize("d", [2, 3, 5])
def test_cz_synthesis(d):
    assert builders.verify_cz_synthesis(d)


@pytest.mark.parametrize("d", [2, 3, 5])
def test_cz_choi_against_matrices(d):
    """Every row of the Choi check matrix fixes the Choi state up to phase."""
    w = np.exp(2j * np.pi / d)
    cz = np.diag([w ** (a * b) for a in range(d) for b in range(d)])
    # legs (out1, in1, out2, in2); start from |Phi>_(out1 in1) |Phi>_(out2 in2)
    phi = np.kron(bell_state(d), bell_state(d)).reshape(d, d, d, d)
    # apply the gate on the two "out" legs
    psi = np.einsum("ACac,aBcD->ABCD", cz.reshape(d, d, d, d), phi).reshape(-1)
    for row in builders.cz_choi(d).matrix:
        op = np.array([[1.0]])
        for leg in range(4):
            op = np.kron(op, pauli_matrix_qudit(int(row[leg]), int(row[4 + leg]), d))
        assert abs(np.vdot(psi, op @ psi)) == pytest.approx(1.0)


def test_rm_pair_builds():
    for variant in (False, True):
        r = extract(build(builders.rm_pair(variant)))
        assert (r.n, r.true_k) == (28, 2)
