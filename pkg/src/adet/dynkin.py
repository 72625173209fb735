"""ADET Dynkin diagrams, exact Cartan data, and product index sets.

Supported families: A_n (n >= 1), D_n (n >= 2), E_6/E_7/E_8, and the tadpole
T_n (n >= 1), i.e. the order-2 folding of A_{2n}.  Cartan and adjacency
matrices are exact (Fraction entries); the adjacency matrix always satisfies
I = 2*id - C, and T_n carries a single loop (one diagonal adjacency entry 1).

Vertex numbering is fixed once and for all (0-based):

  A_n, T_n : path order 0, 1, ..., n-1; the T_n loop sits at vertex n-1.
  D_n      : chain 0, ..., n-3; fork vertices n-2 and n-1 attach to n-3.
  E_n      : Bourbaki order shifted down by one: chain 0-2-3-...-(n-1),
             with vertex 1 attached to vertex 3.

The Kronecker index set I x I' is flattened row-major: (i, i') -> i*r' + i'.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import AdetError, InvalidDiagram

__all__ = [
    "DynkinDiagram",
    "RationalMatrix",
    "PairIndexing",
    "make_diagram",
    "parse_diagram",
    "adjacency_matrix",
    "cartan_matrix",
    "coxeter_number",
    "bipartition",
    "nahm_matrix",
    "pair_indexing",
]

FAMILIES = ("A", "D", "E", "T")


@dataclass(frozen=True, order=True)
class DynkinDiagram:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidDiagram(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if not isinstance(self.rank, int) or self.rank < 1:
            raise InvalidDiagram(f"rank must be a positive integer, got {self.rank!r}")
        if self.family == "E" and self.rank not in (6, 7, 8):
            raise InvalidDiagram(f"invalid rank for E: {self.rank}")
        if self.family == "D" and self.rank < 2:
            raise InvalidDiagram(f"invalid rank for D: {self.rank} (need rank >= 2)")

    @property
    def is_tadpole(self) -> bool:
        return self.family == "T"

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


def make_diagram(family: str, rank: int) -> DynkinDiagram:
    """Validated diagram constructor."""
    return DynkinDiagram(str(family).upper(), rank)


def parse_diagram(name: str) -> DynkinDiagram:
    """Parse names like "A3", "d4", "E8", "t2" (case-insensitive)."""
    s = str(name).strip()
    if len(s) < 2 or not s[1:].isdigit():
        raise InvalidDiagram(f"cannot parse diagram name {name!r} (expected e.g. 'A3', 'T2')")
    return make_diagram(s[0], int(s[1:]))


def _edges(d: DynkinDiagram) -> list[tuple[int, int]]:
    n = d.rank
    if d.family in ("A", "T"):
        return [(i, i + 1) for i in range(n - 1)]
    if d.family == "D":
        edges = [(i, i + 1) for i in range(n - 3)]
        if n >= 3:
            edges += [(n - 3, n - 2), (n - 3, n - 1)]
        return edges
    # E family: chain 0-2-3-...-(n-1) plus branch vertex 1 attached to 3.
    return [(0, 2), (1, 3)] + [(i, i + 1) for i in range(2, n - 1)]


class RationalMatrix:
    """Immutable exact matrix over the rationals (row-major Fraction entries)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        data = tuple(tuple(Fraction(v) for v in row) for row in entries)
        if not data or not data[0] or any(len(r) != len(data[0]) for r in data):
            raise ValueError("matrix entries must be a nonempty rectangular array")
        object.__setattr__(self, "entries", data)
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", len(data[0]))

    def __setattr__(self, name, value):
        raise AttributeError("RationalMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[Fraction(int(i == j)) for j in range(n)] for i in range(n)])

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int):
        return self.entries[i]

    def __eq__(self, other):
        return isinstance(other, RationalMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        body = "; ".join(" ".join(str(v) for v in row) for row in self.entries)
        return f"RationalMatrix[{self.rows}x{self.cols}: {body}]"

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        return RationalMatrix(
            [
                [sum(self.entries[i][k] * other.entries[k][j] for k in range(self.cols))
                 for j in range(other.cols)]
                for i in range(self.rows)
            ]
        )

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix([[self.entries[j][i] for j in range(self.rows)] for i in range(self.cols)])

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self.entries[i][j] == self.entries[j][i] for i in range(self.rows) for j in range(i)
        )

    def inverse(self) -> "RationalMatrix":
        """Exact inverse by Gauss-Jordan elimination."""
        if self.rows != self.cols:
            raise ValueError("only square matrices can be inverted")
        n = self.rows
        a = [list(row) for row in self.entries]
        b = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
            if pivot is None:
                raise ZeroDivisionError("matrix is singular")
            if pivot != col:
                a[col], a[pivot] = a[pivot], a[col]
                b[col], b[pivot] = b[pivot], b[col]
            p = a[col][col]
            a[col] = [v / p for v in a[col]]
            b[col] = [v / p for v in b[col]]
            for r in range(n):
                if r == col or a[r][col] == 0:
                    continue
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
                b[r] = [v - f * w for v, w in zip(b[r], b[col])]
        return RationalMatrix(b)

    def kron(self, other: "RationalMatrix") -> "RationalMatrix":
        """Kronecker product, row-major in the (i, k) pair index."""
        p, q = other.rows, other.cols
        return RationalMatrix(
            [
                [self.entries[i][j] * other.entries[k][l] for j in range(self.cols) for l in range(q)]
                for i in range(self.rows)
                for k in range(p)
            ]
        )

    def to_nested(self) -> list[list[Fraction]]:
        return [list(row) for row in self.entries]

    def to_float(self) -> np.ndarray:
        return np.array([[float(v) for v in row] for row in self.entries], dtype=float)

    def to_json_obj(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[str(v) for v in row] for row in self.entries],
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "RationalMatrix":
        m = cls([[Fraction(s) for s in row] for row in obj["entries"]])
        if m.rows != obj["rows"] or m.cols != obj["cols"]:
            raise ValueError("matrix JSON shape mismatch")
        return m


def adjacency_matrix(d: DynkinDiagram) -> RationalMatrix:
    """Adjacency matrix I(X) = 2*id - C(X); the tadpole loop adds a diagonal 1."""
    n = d.rank
    m = [[0] * n for _ in range(n)]
    for i, j in _edges(d):
        m[i][j] = m[j][i] = 1
    if d.is_tadpole:
        m[n - 1][n - 1] = 1
    return RationalMatrix(m)


def cartan_matrix(d: DynkinDiagram) -> RationalMatrix:
    """Cartan matrix C(X) = 2*id - I(X) (exact integers)."""
    adj = adjacency_matrix(d)
    n = d.rank
    return RationalMatrix(
        [[2 * int(i == j) - adj[i, j] for j in range(n)] for i in range(n)]
    )


def coxeter_number(d: DynkinDiagram) -> int:
    """Coxeter number h: h(A_n)=n+1, h(D_n)=2n-2, h(E6/7/8)=12/18/30, h(T_n)=2n+1.

    Consistency with the spectrum: the largest adjacency eigenvalue equals
    2*cos(pi/h) for every supported diagram.
    """
    if d.family == "A":
        return d.rank + 1
    if d.family == "D":
        return 2 * d.rank - 2
    if d.family == "E":
        return {6: 12, 7: 18, 8: 30}[d.rank]
    return 2 * d.rank + 1  # T_n inherits h(A_{2n})


def bipartition(d: DynkinDiagram) -> tuple[frozenset, frozenset]:
    """2-coloring (I+, I-) of the vertex set; degenerate (I+ = I- = I) for tadpoles."""
    n = d.rank
    if d.is_tadpole:
        full = frozenset(range(n))
        return full, full
    neighbors = [[] for _ in range(n)]
    for i, j in _edges(d):
        neighbors[i].append(j)
        neighbors[j].append(i)
    color = {}
    for start in range(n):
        if start in color:
            continue
        color[start] = 0
        queue = [start]
        while queue:
            v = queue.pop()
            for w in neighbors[v]:
                if w not in color:
                    color[w] = 1 - color[v]
                    queue.append(w)
    plus = frozenset(v for v in range(n) if color[v] == 0)
    minus = frozenset(v for v in range(n) if color[v] == 1)
    return plus, minus


def nahm_matrix(x: DynkinDiagram, xp: DynkinDiagram) -> RationalMatrix:
    """Exact Kronecker matrix C(X) (x) C(X')^{-1}, indexed row-major by (i, i').

    The result is checked to be symmetric exactly and positive definite
    numerically (smallest eigenvalue > 1e-12); a failure signals an internal
    wiring bug, not a user error.
    """
    a = cartan_matrix(x).kron(cartan_matrix(xp).inverse())
    if not a.is_symmetric():
        raise AdetError(f"Kronecker matrix for ({x},{xp}) is not symmetric: indexing bug")
    eigs = np.linalg.eigvalsh(a.to_float())
    if eigs.min() <= 1e-12:
        raise AdetError(
            f"Kronecker matrix for ({x},{xp}) failed the positive-definiteness check "
            f"(min eigenvalue {eigs.min():.3e})"
        )
    return a


@dataclass(frozen=True)
class PairIndexing:
    """Product index data for an ordered diagram pair (X, X').

    indices   : flattened I x I' as (i, i') tuples, row-major.
    eps       : sign +-1 per flattened index; +1 on (I+ x I'+) u (I- x I'-).
    degenerate: True when either diagram is a tadpole, in which case
                P+ = P- = I x Z (no parity restriction).
    d         : folding multiplicity on S+; 2 for tadpole-tadpole pairs, else 1.
    ix, ixp   : adjacency rows (loops included) used by the Y-system recurrence.
    """

    x: DynkinDiagram
    xp: DynkinDiagram
    h: int
    hp: int
    indices: tuple
    eps: tuple
    degenerate: bool
    d: int
    ix: tuple
    ixp: tuple

    @property
    def r(self) -> int:
        return self.x.rank

    @property
    def rp(self) -> int:
        return self.xp.rank

    @property
    def n(self) -> int:
        return len(self.indices)

    @property
    def period(self) -> int:
        return 2 * (self.h + self.hp)

    @property
    def label(self) -> str:
        return f"{self.x},{self.xp}"

    def index_of(self, i: int, ip: int) -> int:
        return i * self.rp + ip

    def in_P_plus(self, k: int, u: int) -> bool:
        if self.degenerate:
            return True
        return (self.eps[k] == 1) == (u % 2 == 0)

    def active_indices(self, u: int) -> list[int]:
        return [k for k in range(self.n) if self.in_P_plus(k, u)]

    def S_plus(self) -> tuple:
        """Window {(k, u) : 0 <= u <= 2(h+h')-1, (k, u) in P+}."""
        return tuple(
            (k, u) for u in range(self.period) for k in range(self.n) if self.in_P_plus(k, u)
        )

    def multiplicity(self, k: int, u: int) -> int:
        return self.d


def pair_indexing(x: DynkinDiagram, xp: DynkinDiagram) -> PairIndexing:
    """Build the PairIndexing for an ordered pair of ADET diagrams."""
    degenerate = x.is_tadpole or xp.is_tadpole
    indices = tuple((i, ip) for i in range(x.rank) for ip in range(xp.rank))
    if degenerate:
        eps = tuple(1 for _ in indices)
    else:
        plus_x, _ = bipartition(x)
        plus_xp, _ = bipartition(xp)
        eps = tuple(1 if (i in plus_x) == (ip in plus_xp) else -1 for i, ip in indices)
    ix = tuple(tuple(int(v) for v in row) for row in adjacency_matrix(x).entries)
    ixp = tuple(tuple(int(v) for v in row) for row in adjacency_matrix(xp).entries)
    return PairIndexing(
        x=x,
        xp=xp,
        h=coxeter_number(x),
        hp=coxeter_number(xp),
        indices=indices,
        eps=eps,
        degenerate=degenerate,
        d=2 if (x.is_tadpole and xp.is_tadpole) else 1,
        ix=ix,
        ixp=ixp,
    )
