"""Phase-free Pauli operators and stabilizer check matrices over GF(d).

A Pauli on ``n`` qudits is stored as ``(x | z)`` with ``x, z`` in GF(d)^n.
Phases are never tracked. For qubits the letters ``IXZY`` are used, with
``Y = (1 | 1)``.
"""

from __future__ import annotations

import re

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
import numpy.typing as npt

from . import fieldvec as fv
from .fieldvec import IntArray


class CommutationError(ValueError):
    """Raised when a check matrix contains non-commuting rows."""


_LETTERS = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
_FROM_LETTER = {v: k for k, v in _LETTERS.items()}


def symplectic_product(a: npt.ArrayLike, b: npt.ArrayLike, d: int) -> int:
    """``sum(a.x * b.z - a.z * b.x) mod d`` for two length-2n vectors."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.shape != b.shape or a.ndim != 1 or a.size % 2:
        raise ValueError(f"cannot pair Pauli vectors of shapes {a.shape} and {b.shape}")
    n = a.shape[-1] // 2
    return int((a[:n] @ b[n:] - a[n:] @ b[:n]) % d)


def symplectic_gram(a: npt.ArrayLike, b: npt.ArrayLike, d: int) -> IntArray:
    """Matrix of pairwise symplectic products between rows of ``a`` and ``b``."""
    a = np.atleast_2d(np.asarray(a, dtype=np.int64))
    b = np.atleast_2d(np.asarray(b, dtype=np.int64))
    n = a.shape[1] // 2
    swapped = np.concatenate([b[:, n:], -b[:, :n] % d], axis=1)
    return fv.matmul(a, swapped.T, d)


@dataclass(frozen=True)
class Pauli:
    """A phase-free generalized Pauli ``X^x Z^z`` on ``n`` legs."""

    vector: IntArray
    d: int = 2

    def __post_init__(self) -> None:
        fv.check_modulus(self.d)
        v = np.mod(np.asarray(self.vector, dtype=np.int64).reshape(-1), self.d)
        if v.size % 2:
            raise ValueError("Pauli vector must have even length")
        v.setflags(write=False)
        object.__setattr__(self, "vector", v)

    @classmethod
    def from_xz(cls, x: Sequence[int], z: Sequence[int], d: int = 2) -> "Pauli":
        if len(x) != len(z):
            raise ValueError("x and z parts differ in length")
        return cls(np.concatenate([np.asarray(x), np.asarray(z)]), d)

    @classmethod
    def identity(cls, n: int, d: int = 2) -> "Pauli":
        return cls(np.zeros(2 * n, dtype=np.int64), d)

    @classmethod
    def parse(cls, text: str, d: int = 2) -> "Pauli":
        return parse_pauli(text, d)

    @property
    def n(self) -> int:
        return self.vector.size // 2

    @property
    def x(self) -> IntArray:
        return self.vector[: self.n]

    @property
    def z(self) -> IntArray:
        return self.vector[self.n :]

    def leg(self, i: int) -> tuple[int, int]:
        return int(self.x[i]), int(self.z[i])

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(int(i) for i in np.flatnonzero(self.x | self.z))

    @property
    def weight(self) -> int:
        return len(self.support)

    def is_identity(self) -> bool:
        return not self.vector.any()

    def __mul__(self, other: "Pauli") -> "Pauli":
        if self.d != other.d or self.n != other.n:
            raise ValueError("incompatible Paulis")
        return Pauli(self.vector + other.vector, self.d)

    def __pow__(self, k: int) -> "Pauli":
        return Pauli(self.vector * k, self.d)

    def inverse(self) -> "Pauli":
        return Pauli(-self.vector, self.d)

    def commutes_with(self, other: "Pauli") -> bool:
        return symplectic_product(self.vector, other.vector, self.d) == 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Pauli):
            return NotImplemented
        return self.d == other.d and np.array_equal(self.vector, other.vector)

    def __hash__(self) -> int:
        return hash((self.d, self.vector.tobytes()))

    def __str__(self) -> str:
        return format_pauli(self.vector, self.d)

    def __repr__(self) -> str:
        return f"Pauli({str(self)!r}, d={self.d})"


_TOKEN = re.compile(r"x(\d+)z(\d+)")


def format_pauli(vec: npt.ArrayLike, d: int = 2) -> str:
    """Letters ``IXYZ`` for qubits, ``x<a>z<b>`` tokens joined by ``;`` otherwise."""
    v = np.asarray(vec, dtype=np.int64) % d
    n = v.size // 2
    if d == 2:
        return "".join(_LETTERS[(int(v[i]), int(v[n + i]))] for i in range(n))
    return ";".join(f"x{int(v[i])}z{int(v[n + i])}" for i in range(n))


def parse_pauli(text: str, d: int = 2) -> Pauli:
    """Inverse of :func:`format_pauli`.

    Qubit strings may also use the qudit token form. For ``d > 2`` the letters
    ``I``, ``X`` and ``Z`` are accepted as shorthand for powers 0 and 1.
    """
    text = text.strip()
    if not text:
        raise ValueError("empty Pauli string")
    if "x" in text and "z" in text:
        xs, zs = [], []
        for tok in text.split(";"):
            m = _TOKEN.fullmatch(tok.strip())
            if not m:
                raise ValueError(f"bad qudit Pauli token {tok!r}")
            a, b = int(m.group(1)), int(m.group(2))
            if a >= d or b >= d:
                raise ValueError(f"exponent out of range in {tok!r} for d={d}")
            xs.append(a)
            zs.append(b)
        return Pauli.from_xz(xs, zs, d)
    xs, zs = [], []
    for ch in text.upper():
        if ch not in _FROM_LETTER:
            raise ValueError(f"unknown Pauli letter {ch!r}")
        if ch == "Y" and d != 2:
            raise ValueError("letter Y is only defined for qubits")
        a, b = _FROM_LETTER[ch]
        xs.append(a)
        zs.append(b)
    return Pauli.from_xz(xs, zs, d)


def paulis_to_matrix(paulis: Iterable[Pauli | str], n: int | None = None, d: int = 2) -> IntArray:
    rows = [p if isinstance(p, Pauli) else parse_pauli(p, d) for p in paulis]
    if not rows:
        if n is None:
            raise ValueError("need n for an empty generator list")
        return np.zeros((0, 2 * n), dtype=np.int64)
    return np.stack([p.vector for p in rows])


class CheckMatrix:
    """Row space of commuting Paulis, stored in canonical (rref) form.

    Two check matrices compare equal exactly when their row spaces agree.
    """

    __slots__ = ("matrix", "d", "n")

    def __init__(self, matrix: npt.ArrayLike, d: int = 2, n: int | None = None, *, validate: bool = True):
        fv.check_modulus(d)
        m = np.asarray(matrix, dtype=np.int64)
        if m.ndim == 1:
            m = m.reshape(1, -1) if m.size else m.reshape(0, 2 * (n or 0))
        if n is None:
            if m.shape[1] % 2:
                raise ValueError("check matrix needs an even number of columns")
            n = m.shape[1] // 2
        if m.shape[1] != 2 * n:
            raise ValueError(f"expected {2 * n} columns, got {m.shape[1]}")
        r, _ = fv.rref(m, d) if m.shape[0] else (m % d, [])
        if validate and r.shape[0]:
            gram = symplectic_gram(r, r, d)
            if gram.any():
                i, j = map(int, np.argwhere(gram)[0])
                raise CommutationError(
                    f"generators {format_pauli(r[i], d)} and {format_pauli(r[j], d)} do not commute"
                )
        r.setflags(write=False)
        self.matrix: IntArray = r
        self.d = d
        self.n = n

    @classmethod
    def _trusted(cls, rref_rows: IntArray, d: int, n: int) -> "CheckMatrix":
        """Wrap rows that are already in reduced form; no checks are made."""
        obj = cls.__new__(cls)
        rref_rows = np.asarray(rref_rows, dtype=np.int64)
        rref_rows.setflags(write=False)
        obj.matrix = rref_rows
        obj.d = d
        obj.n = n
        return obj

    @classmethod
    def from_paulis(cls, paulis: Iterable[Pauli | str], d: int = 2, n: int | None = None) -> "CheckMatrix":
        return cls(paulis_to_matrix(paulis, n, d), d, n)

    @property
    def rank(self) -> int:
        return self.matrix.shape[0]

    @property
    def x(self) -> IntArray:
        return self.matrix[:, : self.n]

    @property
    def z(self) -> IntArray:
        return self.matrix[:, self.n :]

    @property
    def pivots(self) -> list[int]:
        return [int(np.flatnonzero(row)[0]) for row in self.matrix]

    def rows(self) -> list[Pauli]:
        return [Pauli(row, self.d) for row in self.matrix]

    def contains(self, p: Pauli | npt.ArrayLike) -> bool:
        v = p.vector if isinstance(p, Pauli) else np.asarray(p)
        return bool(fv.in_row_space(self.matrix, self.pivots, v, self.d)[0])

    def columns(self, legs: Sequence[int]) -> IntArray:
        """Submatrix holding the x and z columns of ``legs``."""
        legs = list(legs)
        return self.matrix[:, legs + [self.n + i for i in legs]]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CheckMatrix):
            return NotImplemented
        return self.d == other.d and self.n == other.n and np.array_equal(self.matrix, other.matrix)

    def __hash__(self) -> int:
        return hash((self.d, self.n, self.matrix.tobytes()))

    def __str__(self) -> str:
        return "\n".join(format_pauli(r, self.d) for r in self.matrix)

    def __repr__(self) -> str:
        return f"CheckMatrix(n={self.n}, rank={self.rank}, d={self.d})"


def leg_columns(legs: Sequence[int], n: int) -> list[int]:
    legs = list(legs)
    return legs + [n + i for i in legs]


def is_css(h: CheckMatrix) -> tuple[bool, bool]:
    """Return ``(css, self_dual)`` for the row space of ``h``.

    The space is CSS when its pure-X and pure-Z subgroups together span it.
    Self-dual additionally asks that both subgroups have the same support
    pattern, i.e. the X-part row space equals the Z-part row space.
    """
    d = h.d
    rx = fv.rank(h.x, d) if h.rank else 0
    rz = fv.rank(h.z, d) if h.rank else 0
    css = rx + rz == h.rank
    if not css:
        return False, False
    self_dual = rx == rz and (rx == 0 or fv.row_space_equal(h.x, h.z, d))
    return True, self_dual
