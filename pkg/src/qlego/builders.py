"""Networks for well-known codes built from the lego catalog.

Planar layouts use a "medial" grid: a tensor at ``(r, c)`` with ``r + c`` odd
stands for a qubit on an edge of an ordinary square lattice. Its four
in-plane legs point to the diagonal neighbours ``(r +- 1, c +- 1)``. Faces
of the tensor grid sit at ``r + c`` even and alternate between X-type
(``r`` even) and Z-type (``r`` odd) checks.

For a [[4,2,2]] lego the X flow of leg 4 runs between in-plane legs 0 and 1
(or 2 and 3), and the Z flow between legs 3 and 0 (or 1 and 2). The in-plane
legs are therefore assigned so that the Z angles face the Z-type faces. On
even rows that gives legs ``NE, SE, SW, NW`` and on odd rows the same
assignment turned by a quarter, ``SE, SW, NW, NE``. Leg 4 points down and is
the physical qubit, leg 5 points up.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from . import fieldvec as fv
from .legos import (
    builtin,
    code_422,
    code_422_hadamard,
    code_513_perfect,
    hadamard_rank2,
    rep2_encoder_rank3,
    reed_muller_15,
    repetition,
    steane_713,
    stopper_x,
    stopper_z,
    twist_code_4qubit,
)
from .network import LOGICAL, PHYSICAL, Lego, TensorNetwork
from .symplectic import CheckMatrix
from .trace import conjoin

DOWN, UP = 4, 5
NE, SE, SW, NW = (-1, 1), (1, 1), (1, -1), (-1, -1)
_EVEN_ROW = {NE: 0, SE: 1, SW: 2, NW: 3}
_ODD_ROW = {SE: 0, SW: 1, NW: 2, NE: 3}


def _site(r: int, c: int) -> str:
    return f"t{r}_{c}"


def medial_leg(r: int, direction: tuple[int, int]) -> int:
    """In-plane leg index pointing in ``direction`` for a tensor on row ``r``."""
    table = _EVEN_ROW if r % 2 == 0 else _ODD_ROW
    return table[direction]


def _medial_network(sites: list[tuple[int, int]], wrap: tuple[int, int] | None, lego_for=None) -> TensorNetwork:
    net = TensorNetwork(2)
    present = set(sites)
    for r, c in sites:
        net.add(_site(r, c), lego_for(r, c) if lego_for else code_422())
    done = set()
    for r, c in sites:
        for dr, dc in (SE, SW):
            rr, cc = r + dr, c + dc
            if wrap:
                rr, cc = rr % wrap[0], cc % wrap[1]
            if (rr, cc) not in present:
                continue
            a = (_site(r, c), medial_leg(r, (dr, dc)))
            b = (_site(rr, cc), medial_leg(rr, (-dr, -dc)))
            key = frozenset((a, b))
            if key in done:
                continue
            done.add(key)
            net.connect(a, b)
    for r, c in sites:
        net.set_role((_site(r, c), UP), LOGICAL)
        net.set_role((_site(r, c), DOWN), PHYSICAL)
    return net


def toric(L: int) -> TensorNetwork:
    """Toric code on an ``L x L`` torus, one [[4,2,2]] lego per edge qubit.

    Leaves ``2 L^2`` physical (down) and ``2 L^2`` logical (up) legs.
    """
    if L < 2:
        raise ValueError("toric needs L >= 2")
    sites = [(r, c) for r in range(2 * L) for c in range(2 * L) if (r + c) % 2]
    return _medial_network(sites, (2 * L, 2 * L))


def toric_checks(L: int) -> tuple[list[list[str]], list[list[str]]]:
    """Star (X) and plaquette (Z) supports as lists of instance ids."""
    stars, plaqs = [], []
    for r in range(2 * L):
        for c in range(2 * L):
            if (r + c) % 2:
                continue
            ring = [_site((r + dr) % (2 * L), (c + dc) % (2 * L)) for dr, dc in ((-1, 0), (1, 0), (0, -1), (0, 1))]
            (stars if r % 2 == 0 else plaqs).append(ring)
    return stars, plaqs


def planar_sites(M: int, N: int) -> list[tuple[int, int]]:
    """``M`` rows of ``N`` qubits on even rows, ``M-1`` rows of ``N-1`` between."""
    if M < 2 or N < 2:
        raise ValueError("planar patches need M, N >= 2")
    sites = [(2 * i, 2 * j + 1) for i in range(M) for j in range(N)]
    sites += [(2 * i + 1, 2 * j) for i in range(M - 1) for j in range(1, N)]
    return sorted(sites)


def _boundary_legs(net: TensorNetwork, sites: list[tuple[int, int]]):
    """Dangling in-plane legs with the direction they point in."""
    present = set(sites)
    for r, c in sites:
        for dr, dc in (NE, SE, SW, NW):
            if (r + dr, c + dc) not in present:
                yield (r, c), (dr, dc)


def surface(M: int, N: int, boundary: str = "stoppers", r: int = 2, lego_for=None) -> TensorNetwork:
    """Planar surface code patch with ``M N + (M-1)(N-1)`` qubits.

    ``boundary`` is one of

    * ``"stoppers"``: legs leaving through the top or bottom get X stoppers,
      legs leaving sideways get Z stoppers, giving the usual weight-3 checks
      along the boundary;
    * ``"bare"``: boundary legs stay open as extra physical legs;
    * ``"repetition"``: each run of ``r`` consecutive boundary legs on a side
      is tied together by a repetition-code tensor whose last leg stays open.
    """
    sites = planar_sites(M, N)
    net = _medial_network(sites, None, lego_for)
    rows = 2 * M - 1
    legs = list(_boundary_legs(net, sites))
    if boundary == "bare":
        for (rr, cc), direction in legs:
            net.set_role((_site(rr, cc), medial_leg(rr, direction)), PHYSICAL)
        return net
    if boundary == "stoppers":
        for k, ((rr, cc), (dr, dc)) in enumerate(legs):
            vertical = rr + dr < 0 or rr + dr >= rows
            stopper = stopper_x() if vertical else stopper_z()
            sid = net.add(f"s{k}", stopper)
            net.connect((_site(rr, cc), medial_leg(rr, (dr, dc))), (sid, 0))
        return net
    if boundary == "repetition":
        if r < 1:
            raise ValueError("repetition boundary needs r >= 1")
        sides: dict[str, list] = {"top": [], "bottom": [], "left": [], "right": []}
        for (rr, cc), (dr, dc) in legs:
            if rr + dr < 0:
                sides["top"].append(((rr, cc), (dr, dc)))
            elif rr + dr >= rows:
                sides["bottom"].append(((rr, cc), (dr, dc)))
            elif cc + dc < cc:
                sides["left"].append(((rr, cc), (dr, dc)))
            else:
                sides["right"].append(((rr, cc), (dr, dc)))
        k = 0
        for side, group in sides.items():
            kind = "X" if side in ("top", "bottom") else "Z"
            for start in range(0, len(group), r):
                chunk = group[start : start + r]
                rid = net.add(f"rep{k}", repetition(len(chunk), kind))
                k += 1
                for j, ((rr, cc), direction) in enumerate(chunk):
                    net.connect((_site(rr, cc), medial_leg(rr, direction)), (rid, j))
                net.set_role((rid, len(chunk)), PHYSICAL)
        return net
    raise ValueError(f"unknown boundary {boundary!r}")


def xzzx(M: int, N: int) -> TensorNetwork:
    """Surface patch with a Hadamard on the physical leg of every odd-row tensor."""
    return surface(M, N, "stoppers", lego_for=lambda r, c: code_422_hadamard() if r % 2 else code_422())


def bacon_shor(M: int, N: int) -> TensorNetwork:
    """Same network as :func:`surface`; odd-row physical legs become logical."""
    net = surface(M, N, "stoppers")
    for r, c in planar_sites(M, N):
        if r % 2:
            net.set_role((_site(r, c), DOWN), LOGICAL)
    return net


def bacon_shor_logicals(M: int, N: int, built) -> tuple:
    """Weight-``M`` X along a column and weight-``N`` Z along a row.

    Returned as physical Paulis on the built state's physical legs, ready for
    :func:`qlego.duality.gauge_fix`.
    """
    from .symplectic import Pauli

    phys = [leg for leg in built.legs if built.network.role(leg) == PHYSICAL]
    n = len(phys)
    col = [phys.index((_site(2 * i, 1), DOWN)) for i in range(M)]
    row = [phys.index((_site(0, 2 * j + 1), DOWN)) for j in range(N)]
    x = np.zeros(2 * n, dtype=np.int64)
    z = np.zeros(2 * n, dtype=np.int64)
    x[col] = 1
    z[[n + q for q in row]] = 1
    return Pauli(x, 2), Pauli(z, 2)


def one_d_dual(M: int = 3, N: int = 3) -> TensorNetwork:
    """Bare patch with every up and down leg logical, boundary legs physical."""
    net = surface(M, N, "bare")
    for r, c in planar_sites(M, N):
        net.set_role((_site(r, c), DOWN), LOGICAL)
        net.set_role((_site(r, c), UP), LOGICAL)
    return net


def chain(m: int) -> TensorNetwork:
    """``m - 1`` [[4,2,2]] legos in a line, giving a [[2m, 2m-2, 2]] code."""
    if m < 2:
        raise ValueError("chain needs m >= 2")
    net = TensorNetwork(2)
    for i in range(m - 1):
        net.add(f"q{i}", code_422())
        net.set_role((f"q{i}", 4), LOGICAL)
        net.set_role((f"q{i}", 5), LOGICAL)
    for i in range(m - 2):
        net.connect((f"q{i}", 2), (f"q{i + 1}", 0))
    return net


def chain_by_legs(n_legs: int) -> TensorNetwork:
    """Chain sized so that about ``n_legs`` in-plane legs dangle."""
    return chain(max(2, n_legs // 2))


def double_trace() -> TensorNetwork:
    """Two [[4,2,2]] legos joined on two in-plane legs each."""
    net = TensorNetwork(2)
    net.add("a", code_422())
    net.add("b", code_422())
    net.connect(("a", 2), ("b", 1))
    net.connect(("a", 3), ("b", 0))
    for t in "ab":
        net.set_role((t, 4), LOGICAL)
        net.set_role((t, 5), LOGICAL)
    return net


def single_trace_pair() -> TensorNetwork:
    net = TensorNetwork(2)
    net.add("a", code_422())
    net.add("b", code_422())
    net.connect(("a", 3), ("b", 0))
    for t in "ab":
        net.set_role((t, 4), LOGICAL)
        net.set_role((t, 5), LOGICAL)
    return net


def steane_from_422() -> TensorNetwork:
    """Two [[4,2,2]] legos joined on their logical legs; one leg made logical."""
    net = TensorNetwork(2)
    net.add("a", code_422())
    net.add("b", code_422())
    net.connect(("a", 4), ("b", 4))
    net.connect(("a", 5), ("b", 5))
    net.set_role(("b", 3), LOGICAL)
    return net


def flat_perfect(L: int) -> TensorNetwork:
    """``L x L`` grid of [[5,1,3]] perfect tensors, legs 0-3 in-plane."""
    if L < 1:
        raise ValueError("flat_perfect needs L >= 1")
    net = TensorNetwork(2)
    for i, j in product(range(L), repeat=2):
        net.add(f"p{i}_{j}", code_513_perfect())
        net.set_role((f"p{i}_{j}", 5), LOGICAL)
    # legs: 0 north, 1 east, 2 south, 3 west, 4 down
    for i, j in product(range(L), repeat=2):
        if j + 1 < L:
            net.connect((f"p{i}_{j}", 1), (f"p{i}_{j + 1}", 3))
        if i + 1 < L:
            net.connect((f"p{i}_{j}", 2), (f"p{i + 1}_{j}", 0))
    return net


def rm_pair(x_variant: bool = False) -> TensorNetwork:
    """Two [[15,1,3]] legos joined on physical leg 14 of each."""
    net = TensorNetwork(2)
    net.add("rm_a", reed_muller_15(False))
    net.add("rm_b", reed_muller_15(x_variant))
    net.connect(("rm_a", 14), ("rm_b", 14))
    net.set_role(("rm_a", 15), LOGICAL)
    net.set_role(("rm_b", 15), LOGICAL)
    return net


# -- twist defect --------------------------------------------------------------

# Square grid with orthogonal neighbours. Directions in counter-clockwise order.
_E, _N, _W, _S = 0, 1, 2, 3
_STEP = {_E: (1, 0), _N: (0, 1), _W: (-1, 0), _S: (0, -1)}
_SIDE = {_E: "right", _N: "top", _W: "left", _S: "bottom"}


def _in_cone(i: int, j: int, R: int) -> bool:
    return -R <= i <= R and -R <= j <= R and not (i >= 0 and j < 0)


def _cone_step(i: int, j: int, direction: int):
    """Neighbour across ``direction`` and the direction we arrive from.

    The quadrant ``x >= 0, y < 0`` is cut out and the seam glued by a quarter
    turn, so site ``(0, -k)`` is identified with ``(k, 0)``.
    """
    di, dj = _STEP[direction]
    a, b = i + di, j + dj
    if a >= 0 and b < 0:
        if a != 0:
            return None
        return (-b, 0), (direction + 1) % 4, True
    return (a, b), direction, False


def _grid_leg(i: int, j: int, direction: int) -> int:
    # angle (0, 1) of the [[4,2,2]] lego is the X angle; it faces the
    # colour-0 face, which lies north-east of sites with even i + j
    start = _E if (i + j) % 2 == 0 else _N
    return (direction - start) % 4


def triangle_twist(R: int = 2, sides: dict | None = None) -> TensorNetwork:
    """Surface code patch with a single twist defect, distance ``2R + 1``.

    A quarter of the square grid is removed and the cut glued shut, which
    leaves one site with three neighbours. That site holds the 4-qubit twist
    code (legs 0, 1, 2 point north, east and west). The glued seam is a
    domain wall between X and Z faces and every seam edge carries a
    Hadamard lego. Dangling boundary legs get stoppers, by default X on the
    right and left sides and Z on the top and bottom. ``R = 2`` gives 19
    qubits and distance 5.
    """
    if R < 1:
        raise ValueError("triangle_twist needs R >= 1")
    kinds = {"right": "X", "top": "Z", "left": "X", "bottom": "Z"}
    kinds.update(sides or {})
    net = TensorNetwork(2)
    sites = [(i, j) for j in range(R, -R - 1, -1) for i in range(-R, R + 1) if _in_cone(i, j, R)]

    def name(v):
        return f"g{v[0]}_{v[1]}".replace("-", "m")

    def leg(v, direction):
        if v == (0, 0):
            return {_N: 0, _E: 1, _W: 2}[direction]
        return _grid_leg(*v, direction)

    for v in sites:
        if v == (0, 0):
            net.add(name(v), twist_code_4qubit())
            net.set_role((name(v), 4), LOGICAL)
        else:
            net.add(name(v), code_422())
            net.set_role((name(v), UP), LOGICAL)
    seen = set()
    n_stop = n_h = 0
    for v in sites:
        for direction in (_E, _N, _W, _S):
            if v == (0, 0) and direction == _S:
                continue
            hop = _cone_step(*v, direction)
            if hop is None:
                continue
            w, arrive, seam = hop
            if not _in_cone(*w, R):
                kind = kinds[_SIDE[direction]]
                sid = net.add(f"s{n_stop}", stopper_x() if kind == "X" else stopper_z())
                n_stop += 1
                net.connect((name(v), leg(v, direction)), (sid, 0))
                continue
            back = (arrive + 2) % 4
            if w == (0, 0) and back == _S:
                back = _E
            key = frozenset([(v, direction), (w, back)])
            if key in seen:
                continue
            seen.add(key)
            if seam:
                hid = net.add(f"h{n_h}", hadamard_rank2())
                n_h += 1
                net.connect((name(v), leg(v, direction)), (hid, 0))
                net.connect((hid, 1), (name(w), leg(w, back)))
            else:
                net.connect((name(v), leg(v, direction)), (name(w), leg(w, back)))
    return net


# -- three dimensions ---------------------------------------------------------

# Steane legs: 0..5 in-plane/vertical, 6 physical, 7 logical. With qubits
# labelled by nonzero vectors of GF(2)^3, qubit 111 is physical and the axis
# pairs are (100, 011), (010, 101), (001, 110).
_STEANE_QUBITS = ["100", "010", "001", "110", "101", "011", "111"]
_AXIS_OF = {"100": "+x", "011": "-x", "010": "+y", "101": "-y", "001": "+z", "110": "-z"}
AXES = ("+x", "-x", "+y", "-y", "+z", "-z")


def steane_3d() -> Lego:
    """Steane lego with legs ordered ``+x -x +y -y +z -z phys logical``.

    Four octants (those with an even number of minus signs) carry a weight-4
    Z and X element touching one leg per axis and the physical leg.
    """
    order = [next(q for q in _STEANE_QUBITS if _AXIS_OF.get(q) == ax) for ax in AXES] + ["111"]

    def parity(a: str, v: str) -> int:
        return sum(int(x) * int(y) for x, y in zip(a, v)) % 2

    rows = []
    for a in ("100", "010", "001"):
        supp = [parity(a, q) for q in order]
        rows.append("".join("X" if s else "I" for s in supp))
        rows.append("".join("Z" if s else "I" for s in supp))
    from .duality import augment
    from .symplectic import parse_pauli

    h = CheckMatrix.from_paulis(rows)
    return Lego("steane_3d", augment(h, [parse_pauli("X" * 7)], [parse_pauli("Z" * 7)]))


def _orient(x: int, y: int, z: int) -> dict[str, int]:
    """Map world directions to Steane legs at vertex ``(x, y, z)``.

    Tensors with odd ``x + y`` are turned a quarter counter-clockwise about the
    vertical axis, tensors with odd ``z`` are reflected top to bottom.
    """
    base = {ax: i for i, ax in enumerate(AXES)}
    world = dict(base)
    if (x + y) % 2:
        # a lego leg that pointed +x now points +y, +y -> -x, and so on
        turn = {"+x": "+y", "+y": "-x", "-x": "-y", "-y": "+x", "+z": "+z", "-z": "-z"}
        world = {turn[ax]: i for ax, i in base.items()}
    if z % 2:
        flip = {"+z": "-z", "-z": "+z"}
        world = {flip.get(ax, ax): i for ax, i in world.items()}
    return world


def three_d_steane(Lx: int = 2, Ly: int = 2, Lz: int = 2, boundary: str | dict = "corner") -> TensorNetwork:
    """Cubic lattice of Steane legos, one per vertex.

    ``boundary`` is ``"open"`` (outward legs physical), ``"corner"`` (the
    corner vertex's three outward legs get Z stoppers and the two outward legs
    nearest to it along x and y are joined), or a dict mapping
    ``"x,y,z:axis"`` to ``"stopper_x"``, ``"stopper_z"``, ``"physical"`` or
    ``"logical"``.
    """
    net = TensorNetwork(2)
    step = {"+x": (1, 0, 0), "-x": (-1, 0, 0), "+y": (0, 1, 0), "-y": (0, -1, 0), "+z": (0, 0, 1), "-z": (0, 0, -1)}
    opposite = {"+x": "-x", "-x": "+x", "+y": "-y", "-y": "+y", "+z": "-z", "-z": "+z"}
    verts = list(product(range(Lx), range(Ly), range(Lz)))
    for v in verts:
        net.add("v%d_%d_%d" % v, steane_3d())
        net.set_role(("v%d_%d_%d" % v, 7), LOGICAL)
    outward = []
    for v in verts:
        orient = _orient(*v)
        for ax in ("+x", "+y", "+z"):
            dx, dy, dz = step[ax]
            w = (v[0] + dx, v[1] + dy, v[2] + dz)
            if w[0] < Lx and w[1] < Ly and w[2] < Lz:
                net.connect(("v%d_%d_%d" % v, orient[ax]), ("v%d_%d_%d" % w, _orient(*w)[opposite[ax]]))
        for ax in AXES:
            dx, dy, dz = step[ax]
            w = (v[0] + dx, v[1] + dy, v[2] + dz)
            if not (0 <= w[0] < Lx and 0 <= w[1] < Ly and 0 <= w[2] < Lz):
                outward.append((v, ax))

    def leg(v, ax):
        return ("v%d_%d_%d" % v, _orient(*v)[ax])

    if boundary == "open":
        return net
    if boundary == "corner":
        corner = (0, 0, 0)
        k = 0
        for ax in ("-x", "-y", "-z"):
            sid = net.add(f"stop{k}", stopper_z())
            net.connect(leg(corner, ax), (sid, 0))
            k += 1
        if Lx > 1 and Ly > 1:
            net.connect(leg((1, 0, 0), "-y"), leg((0, 1, 0), "-x"))
        return net
    if isinstance(boundary, dict):
        k = 0
        for key, what in boundary.items():
            coords, _, ax = key.partition(":")
            v = tuple(int(t) for t in coords.split(","))
            if (v, ax) not in outward:
                raise ValueError(f"{key} is not an outward leg")
            if what in ("stopper_x", "stopper_z"):
                sid = net.add(f"stop{k}", stopper_x() if what == "stopper_x" else stopper_z())
                net.connect(leg(v, ax), (sid, 0))
                k += 1
            elif what in (PHYSICAL, LOGICAL):
                net.set_role(leg(v, ax), what)
            else:
                raise ValueError(f"unknown boundary treatment {what!r}")
        return net
    raise ValueError(f"unknown boundary {boundary!r}")


def cube_supports(Lx: int, Ly: int, Lz: int) -> list[list[str]]:
    """Instances at the corners of cubes whose base vertex has even parity."""
    out = []
    for x, y, z in product(range(Lx - 1), range(Ly - 1), range(Lz - 1)):
        if (x + y + z) % 2 == 0:
            out.append(["v%d_%d_%d" % (x + i, y + j, z + k) for i, j, k in product((0, 1), repeat=3)])
    return out


# -- gates -------------------------------------------------------------------


def cz_network(d: int) -> TensorNetwork:
    """Two copy tensors joined through a Fourier tensor."""
    net = TensorNetwork(d)
    net.add("r1", rep2_encoder_rank3(d))
    net.add("r2", rep2_encoder_rank3(d))
    net.add("h", hadamard_rank2(d))
    net.connect(("r1", 1), ("h", 0))
    net.connect(("r2", 1), ("h", 1))
    return net


def cz_choi(d: int) -> CheckMatrix:
    """Choi state of ``sum_j |j><j| (x) Z^j`` on legs ``out1, in1, out2, in2``."""
    m = d - 1
    # (x: o1 i1 o2 i2 | z: o1 i1 o2 i2)
    rows = [
        [1, 1, 0, 0, 0, 0, 1, 0],  # X on out1 maps to X Z
        [0, 0, 1, 1, 1, 0, 0, 0],
        [0, 0, 0, 0, 1, m, 0, 0],
        [0, 0, 0, 0, 0, 0, 1, m],
    ]
    return CheckMatrix(rows, d, 4)


def verify_cz_synthesis(d: int) -> bool:
    """Contract the CZ network and compare with the directly built Choi state."""
    built = cz_network(d).build()
    want = [("r1", 0), ("r1", 2), ("r2", 0), ("r2", 2)]
    cols = [built.legs.index(w) for w in want]
    n = built.state.n
    perm = cols + [n + c for c in cols]
    return CheckMatrix(built.state.matrix[:, perm], d, 4) == cz_choi(d)


__all__ = [
    "AXES",
    "bacon_shor",
    "bacon_shor_logicals",
    "chain",
    "chain_by_legs",
    "cube_supports",
    "cz_choi",
    "cz_network",
    "double_trace",
    "flat_perfect",
    "medial_leg",
    "one_d_dual",
    "planar_sites",
    "rm_pair",
    "single_trace_pair",
    "steane_3d",
    "steane_from_422",
    "surface",
    "three_d_steane",
    "toric",
    "toric_checks",
    "triangle_twist",
    "verify_cz_synthesis",
    "xzzx",
]
