"""The fifteen acceptance criteria, each timed against its limit.

Every test logs one PASS/FAIL line (shown in the terminal summary).
"""

from itertools import combinations

import numpy as np

from oracles import (
    code_basis,
    knill_laflamme_erasure,
    physical_vector,
    random_css_state,
    random_self_dual_state,
    random_stabilizer_state,
    surface_oracle,
)
from qlego import builders, io
from qlego import fieldvec as fv
from qlego.analysis import distance, is_correctable_erasure, is_k_isometry
from qlego.cli import main
from qlego.decoder import decode_error, depolarizing, export_tl, sector_total
from qlego.duality import extract, extract_state, gauge_fix
from qlego.legos import code_422, code_513_perfect, steane_713
from qlego.network import build
from qlego.pushing import verify_symbolic
from qlego.symplectic import CheckMatrix, is_css
from qlego.trace import self_trace, self_trace_case_analysis, single_trace

HAMMING_ROWS = ["1111000", "1100110", "1010101"]


def css_from_rows(rows):
    xs = ["".join("X" if b == "1" else "I" for b in r) for r in rows]
    return CheckMatrix.from_paulis(xs + [x.replace("X", "Z") for x in xs])


def test_c01_steane_reconstruction(criterion, tmp_path, capsys):
    with criterion(1, "Steane from two [[4,2,2]]", 1.0):
        path = tmp_path / "steane.json"
        assert main(["demo", "steane-from-422", "--out", str(path)]) == 0
        r = extract(build(io.load(path)))
        assert (r.n, r.true_k) == (7, 1)
        assert r.stabilizers == css_from_rows(HAMMING_ROWS)


def test_c02_chain_family(criterion):
    with criterion(2, "chain [[2m,2m-2,2]] for m = 2..6", 10.0) as c:
        for m in range(2, 7):
            r = extract(build(builders.chain(m)))
            assert (r.n, r.true_k) == (2 * m, 2 * m - 2)
            # every Pauli of weight <= 2 is tried
            res = distance(r, weight_cap=2, method="capped")
            assert res.distance == 2 and not res.lower_bound
        c.note = "weight <= 2 exhaustive Pauli search"


def test_c03_double_trace(criterion):
    with criterion(3, "double trace", 1.0):
        r = extract(build(builders.double_trace()))
        assert (r.n, r.true_k, r.r_logical) == (4, 2, 2)
        assert r.stabilizers == CheckMatrix.from_paulis(["XXXX", "ZZZZ"])


def test_c04_toric(criterion):
    with criterion(4, "toric code L = 2, 3, 4", 30.0):
        for L in (2, 3, 4):
            r = extract(build(builders.toric(L)))
            assert r.true_k == 2
            assert r.stabilizers.rank == 2 * L * L - 2
            stars, plaqs = builders.toric_checks(L)
            assert len(stars) == len(plaqs) == L * L
            for ring, letter in [(s, "X") for s in stars] + [(p, "Z") for p in plaqs]:
                v = physical_vector(r, {(inst, 4): letter for inst in ring})
                assert np.count_nonzero(v) == 4
                assert r.stabilizers.contains(v)


def test_c05_surface_xzzx_twist(criterion):
    with criterion(5, "surface, XZZX and twist", 120.0) as c:
        r = extract(build(builders.surface(3, 3)))
        rows = [physical_vector(r, {(f"t{a}_{b}", 4): let for a, b in ring}) for let, ring in surface_oracle(3, 3)]
        assert fv.row_space_equal(np.array(rows), r.stabilizers.matrix, 2)

        x = extract(build(builders.xzzx(3, 3)))
        interior = [ring for _, ring in surface_oracle(3, 3) if len(ring) == 4]
        assert len(interior) == 4
        for ring in interior:
            row = ring[0][0] + 1
            ops = {(f"t{a}_{b}", 4): ("X" if a == row else "Z") for a, b in ring}
            assert x.stabilizers.contains(physical_vector(x, ops))

        t = extract(build(builders.triangle_twist(2)))
        res = distance(t, weight_cap=5, method="capped")
        assert res.distance == 5 and not res.lower_bound
        c.note = f"twist [[{t.n},{t.true_k}]] capped distance {res.distance}"


def test_c06_bacon_shor(criterion):
    with criterion(6, "Bacon-Shor from the surface network", 60.0):
        a = io.network_to_dict(builders.surface(3, 3))
        b = io.network_to_dict(builders.bacon_shor(3, 3))
        assert a.pop("roles") != b.pop("roles")
        assert a == b
        built = build(builders.bacon_shor(3, 3))
        g = gauge_fix(extract(built), [builders.bacon_shor_logicals(3, 3, built)])
        assert (g.n, g.true_k) == (9, 1)
        res = distance(g, dressed=True)
        assert res.distance == 3 and not res.lower_bound
        group = g.gauge_group()
        _, piv = fv.rref(group, 2)
        pairs = []
        for i, j in combinations(range(9), 2):
            for off in (0, 9):
                v = np.zeros(18, np.int64)
                v[off + i] = v[off + j] = 1
                if fv.in_row_space(fv.rref(group, 2)[0], piv, v, 2)[0]:
                    pairs.append(v)
        # weight-2 XX and ZZ operators generate the whole gauge group
        assert fv.row_space_equal(np.array(pairs), group, 2)


def test_c07_one_d_dual(criterion):
    with criterion(7, "1d dual [[20,18,2]]", 10.0):
        r = extract(build(builders.one_d_dual(3, 3)))
        assert (r.n, r.true_k) == (20, 18)
        assert r.stabilizers == CheckMatrix.from_paulis(["X" * 20, "Z" * 20])
        res = distance(r, weight_cap=2, method="capped")
        assert res.distance == 2 and not res.lower_bound


def test_c08_transversal_t(criterion):
    with criterion(8, "transversal T through the RM pair", 1.0):
        ok, dangling = verify_symbolic(builders.rm_pair(), {"rm_a": "T", "rm_b": "Tdag"})
        assert ok
        assert [dangling[("rm_a", i)] for i in range(14)] == ["T"] * 14
        assert [dangling[("rm_b", i)] for i in range(14)] == ["Tdag"] * 14


def _random_traces(make, d, rng, count):
    """Trace pairs of random states, sometimes twice; yield each result."""
    for _ in range(count):
        h1, h2 = make(d, rng), make(d, rng)
        res = single_trace(h1, h2, int(rng.integers(h1.n)), int(rng.integers(h2.n)))
        yield h1.n + h2.n, res.state
        if res.state.n >= 2 and rng.random() < 0.5:
            a, b = (int(v) for v in rng.choice(res.state.n, 2, replace=False))
            yield res.state.n, self_trace(res.state, a, b).state


def _self_dual(d, rng):
    return random_self_dual_state(int(rng.integers(1, 3)), d, rng)


def test_c09_closure(criterion):
    rng = np.random.default_rng(9)
    makers = {
        "stabilizer": lambda d, r: random_stabilizer_state(int(r.integers(1, 6)), d, r),
        "css": lambda d, r: random_css_state(int(r.integers(1, 6)), d, r),
        "self-dual": _self_dual,
    }
    violations = {}
    with criterion(9, "closure of stabilizer, CSS and self-dual CSS", 300.0) as c:
        for kind, make in makers.items():
            for d in (2, 3, 5):
                bad = total = 0
                for n_in, state in _random_traces(make, d, rng, 500):
                    total += 1
                    ok = state.rank == n_in - 2
                    CheckMatrix(state.matrix, d, state.n)  # raises if rows do not commute
                    css, self_dual = is_css(state)
                    if kind == "css":
                        ok = ok and css
                    if kind == "self-dual":
                        ok = ok and self_dual
                    bad += not ok
                violations[(kind, d)] = (bad, total)
        failed = {k: v for k, v in violations.items() if v[0]}
        c.note = "violations: " + (
            ", ".join(f"{kind} d={d} {b}/{t}" for (kind, d), (b, t) in failed.items()) or "none"
        )
        assert not failed


def test_c10_case_analysis_oracle(criterion):
    rng = np.random.default_rng(10)
    with criterion(10, "uniform self-trace vs case analysis", 120.0):
        for i in range(500):
            d = (2, 3, 5)[i % 3]
            n = int(rng.integers(2, 9))
            h = random_stabilizer_state(n, d, rng)
            if i % 4 == 3:
                keep = np.sort(rng.choice(n, int(rng.integers(1, n + 1)), replace=False))
                h = CheckMatrix(h.matrix[keep], d, n)
            a, b = (int(v) for v in rng.choice(n, 2, replace=False))
            assert self_trace(h, a, b).state == self_trace_case_analysis(h, a, b)


def test_c11_cz_synthesis(criterion):
    with criterion(11, "CZ synthesis from atomic legos", 1.0):
        assert all(builders.verify_cz_synthesis(d) for d in (2, 3, 5))


def test_c12_isometry(criterion):
    with criterion(12, "isometry and erasure checks", 60.0) as c:
        perfect = code_513_perfect().state
        assert all(is_k_isometry(perfect, s) for s in combinations(range(6), 3))
        assert not any(is_k_isometry(perfect, s) for s in combinations(range(6), 4))
        codes = [
            extract_state(steane_713().state, list(range(7)), [7]),
            extract_state(code_513_perfect().state, list(range(5)), [5]),
            extract_state(code_422().state, list(range(4)), [4, 5]),
            extract(build(builders.single_trace_pair())),
            extract(build(builders.chain(4))),
        ]
        checked = 0
        for r in codes:
            assert r.n <= 8
            basis = code_basis(r.stabilizers.matrix, r.n)
            for size in (1, 2, 3):
                for region in combinations(range(r.n), size):
                    want = knill_laflamme_erasure(r.stabilizers.matrix, r.n, region, basis)
                    assert is_correctable_erasure(r, region) == want
                    checked += 1
        c.note = f"{checked} erasure patterns"


def test_c13_decoder(criterion):
    with criterion(13, "ML decoder and T(L)", 60.0):
        for lego, n in ((steane_713(), 7), (code_513_perfect(), 5)):
            r = extract_state(lego.state, list(range(n)), [n])
            noise = depolarizing(0.05, n)
            for q in range(n):
                for x, z in ((1, 0), (0, 1), (1, 1)):
                    e = np.zeros(2 * n, np.int64)
                    e[q], e[n + q] = x, z
                    assert decode_error(r, noise, e).success
            assert abs(sector_total(r, noise) - 1.0) <= 1e-12
            assert len(export_tl(r)) == 2 ** (r.n + r.true_k)


def test_c14_3d_code(criterion):
    with criterion(14, "3d Steane network cube stabilizers", 60.0) as c:
        r = extract(build(builders.three_d_steane(2, 2, 2, "corner")))
        cubes = builders.cube_supports(2, 2, 2)
        assert cubes
        for cube in cubes:
            assert len(cube) == 8
            for letter in "XZ":
                assert r.stabilizers.contains(physical_vector(r, {(inst, 6): letter for inst in cube}))
        c.note = f"[[{r.n},{r.true_k}]], {len(cubes)} cube(s)"


def test_c15_complexity_smoke(criterion):
    with criterion(15, "200-leg chain builds", 60.0) as c:
        net = builders.chain_by_legs(200)
        built = build(net)
        in_plane = [leg for leg in built.legs if leg[1] < 4]
        assert len(in_plane) == 200
        assert built.state.rank == len(built.legs)
        c.note = f"{len(built.legs)} dangling legs in total"
