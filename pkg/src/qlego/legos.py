"""Catalog of atomic legos.

Every lego is a stabilizer state. Code legos list the physical legs first and
the logical legs last, built with :func:`qlego.duality.augment`.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from . import fieldvec as fv
from .duality import augment, code_report
from .network import Lego
from .symplectic import CheckMatrix, Pauli, parse_pauli, paulis_to_matrix


class UnknownLego(KeyError):
    pass


def _state(paulis: list[str], d: int = 2) -> CheckMatrix:
    return CheckMatrix(paulis_to_matrix(paulis, d=d), d)


def _code(stabs: list[str], xs: list[str], zs: list[str]) -> CheckMatrix:
    h = CheckMatrix.from_paulis(stabs)
    return augment(h, [parse_pauli(p) for p in xs], [parse_pauli(p) for p in zs])


def code_422() -> Lego:
    """[[4,2,2]] as a 6-leg state: legs 0-3 physical, 4 and 5 logical.

    Logical pair one is ``XXII / ZIIZ``, pair two ``XIIX / ZZII``.
    """
    return Lego("code_422", _code(["XXXX", "ZZZZ"], ["XXII", "XIIX"], ["ZIIZ", "ZZII"]))


def code_513_perfect() -> Lego:
    """[[5,1,3]] as a 6-leg perfect tensor, logical leg last."""
    stabs = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]
    return Lego("code_513_perfect", _code(stabs, ["XXXXX"], ["ZZZZZ"]))


_HAMMING_7 = ["1111000", "1100110", "1010101"]


def steane_713() -> Lego:
    """Steane code as an 8-leg state, logical leg last."""
    xs = ["".join("X" if b == "1" else "I" for b in row) for row in _HAMMING_7]
    zs = [s.replace("X", "Z") for s in xs]
    return Lego("steane_713", _code(xs + zs, ["X" * 7], ["Z" * 7]))


def _rm_15_rows() -> tuple[list[str], list[str]]:
    cols = [format(i, "04b") for i in range(1, 16)]
    lin = ["".join(c[j] for c in cols) for j in range(4)]
    quad = []
    for a in range(4):
        for b in range(a + 1, 4):
            quad.append("".join("1" if lin[a][i] == lin[b][i] == "1" else "0" for i in range(15)))
    xs = ["".join("X" if b == "1" else "I" for b in r) for r in lin]
    zs = ["".join("Z" if b == "1" else "I" for b in r) for r in lin + quad]
    return xs, zs


def reed_muller_15(x_on_logical: bool = False) -> Lego:
    """Punctured Reed-Muller [[15,1,3]] as a 16-leg state.

    Transversal ``T`` on the 15 physical legs acts as logical ``Tdag``. On
    the state ``sum_j |j_L>|j>`` that means ``T`` on every leg, logical one
    included, is a stabilizer (entry ``"T"``); likewise for ``Tdag``. With
    ``x_on_logical`` an extra ``X`` sits on the logical leg, which swaps the
    logical labels of the two entries.
    """
    xs, zs = _rm_15_rows()
    state = _code(xs + zs, ["X" * 15], ["Z" * 15])
    name = "reed_muller_15_1_3"
    t_log, tdag_log = "T", "Tdag"
    if x_on_logical:
        # phases are not tracked, so the check matrix is unchanged; only the
        # labels on the logical leg swap since X T X = T^dag up to phase
        name = "reed_muller_15_1_3_x"
        t_log, tdag_log = tdag_log, t_log
    ups = {
        "T": ("T",) * 15 + (t_log,),
        "Tdag": ("Tdag",) * 15 + (tdag_log,),
    }
    return Lego(name, state, ups)


def repetition(r: int, kind: str = "Z", d: int = 2) -> Lego:
    """GHZ-type state on ``r + 1`` legs.

    ``kind="Z"`` gives ``sum_i |i...i>`` with ``Z_j Z_{j+1}^-1`` checks and a
    global ``X``. ``kind="X"`` is its Fourier dual.
    """
    if r < 1:
        raise ValueError("repetition needs r >= 1")
    kind = kind.upper()
    if kind not in ("X", "Z"):
        raise ValueError("kind must be 'X' or 'Z'")
    m = r + 1
    rows = []
    for j in range(r):
        v = np.zeros(2 * m, dtype=np.int64)
        off = m if kind == "Z" else 0
        v[off + j], v[off + j + 1] = 1, d - 1
        rows.append(v)
    g = np.zeros(2 * m, dtype=np.int64)
    if kind == "Z":
        g[:m] = 1
    else:
        g[m:] = 1
    rows.append(g)
    return Lego(f"repetition_{kind.lower()}_{r}", CheckMatrix(np.array(rows), d, m))


def stopper_x(d: int = 2) -> Lego:
    return Lego("stopper_x", CheckMatrix([[1, 0]], d, 1))


def stopper_z(d: int = 2) -> Lego:
    return Lego("stopper_z", CheckMatrix([[0, 1]], d, 1))


def zero_state_rank1(d: int = 2) -> Lego:
    return Lego("zero_state_rank1", CheckMatrix([[0, 1]], d, 1))


def hadamard_rank2(d: int = 2) -> Lego:
    """Choi state of the Fourier gate ``sum_kl w^kl |k><l|``.

    Pushing ``X`` through it gives ``Z`` and ``Z`` gives ``X^-1``. For qubits
    this is ``<XZ, ZX>``.
    """
    rows = [[0, 1, 1, 0], [d - 1, 0, 0, d - 1]]
    return Lego("hadamard_rank2", CheckMatrix(rows, d, 2))


def identity_rank2(d: int = 2) -> Lego:
    """Maximally entangled pair, i.e. a plain wire."""
    return Lego("identity_rank2", CheckMatrix([[1, 1, 0, 0], [0, 0, 1, d - 1]], d, 2))


def rep2_encoder_rank3(d: int = 2) -> Lego:
    """``sum_i |iii>``: copies a basis state onto two outputs."""
    rows = [[0, 0, 0, 1, d - 1, 0], [0, 0, 0, 0, 1, d - 1], [1, 1, 1, 0, 0, 0]]
    return Lego("rep2_encoder_rank3", CheckMatrix(rows, d, 3))


def twist_code_4qubit() -> Lego:
    """The 4-qubit ``<XXIX, ZIZZ, YYYI>`` code with its logical leg appended."""
    stabs = CheckMatrix.from_paulis(["XXIX", "ZIZZ", "YYYI"])
    rep = code_report(stabs)
    (lx, lz), = rep.logical_pairs
    return Lego("twist_code_4qubit", augment(stabs, [lx.physical], [lz.physical]))


def code_422_hadamard() -> Lego:
    """[[4,2,2]] lego with a Hadamard absorbed into leg 4."""
    from .trace import single_trace

    base = code_422()
    res = single_trace(base.state, hadamard_rank2().state, 4, 0)
    # surviving legs: 0 1 2 3 5 then the Hadamard's free leg; put that back at 4
    order = [0, 1, 2, 3, 5, 4]
    return Lego("code_422_hadamard", permute_legs(res.state, order))


def permute_legs(state: CheckMatrix, order: list[int]) -> CheckMatrix:
    """Move old leg ``j`` to position ``order[j]``."""
    n = state.n
    if sorted(order) != list(range(n)):
        raise ValueError("order must be a permutation of the legs")
    m = np.zeros_like(state.matrix)
    for j, target in enumerate(order):
        m[:, target] = state.matrix[:, j]
        m[:, n + target] = state.matrix[:, n + j]
    return CheckMatrix(m, state.d, n)


_CATALOG: dict[str, Callable[..., Lego]] = {
    "code_422": code_422,
    "code_422_hadamard": code_422_hadamard,
    "code_513_perfect": code_513_perfect,
    "steane_713": steane_713,
    "reed_muller_15_1_3": lambda: reed_muller_15(False),
    "reed_muller_15_1_3_x": lambda: reed_muller_15(True),
    "repetition": repetition,
    "stopper_x": stopper_x,
    "stopper_z": stopper_z,
    "zero_state_rank1": zero_state_rank1,
    "hadamard_rank2": hadamard_rank2,
    "identity_rank2": identity_rank2,
    "rep2_encoder_rank3": rep2_encoder_rank3,
    "twist_code_4qubit": twist_code_4qubit,
}

QUDIT_LEGOS = {
    "repetition",
    "stopper_x",
    "stopper_z",
    "zero_state_rank1",
    "hadamard_rank2",
    "identity_rank2",
    "rep2_encoder_rank3",
}


def builtin(name: str, d: int = 2, **params) -> Lego:
    """Look up a catalog lego by name."""
    if name not in _CATALOG:
        raise UnknownLego(f"unknown lego {name!r}; known: {', '.join(sorted(_CATALOG))}")
    fv.check_modulus(d)
    factory = _CATALOG[name]
    if name in QUDIT_LEGOS:
        return factory(d=d, **params)
    if d != 2:
        raise ValueError(f"lego {name!r} is only defined for qubits")
    if params:
        raise ValueError(f"lego {name!r} takes no parameters")
    return factory()


def catalog_names() -> list[str]:
    return sorted(_CATALOG)


__all__ = [
    "UnknownLego",
    "builtin",
    "catalog_names",
    "code_422",
    "code_422_hadamard",
    "code_513_perfect",
    "hadamard_rank2",
    "identity_rank2",
    "permute_legs",
    "reed_muller_15",
    "rep2_encoder_rank3",
    "repetition",
    "steane_713",
    "stopper_x",
    "stopper_z",
    "twist_code_4qubit",
    "zero_state_rank1",
]
