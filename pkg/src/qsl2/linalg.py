"""Sparse exact linear algebra over a cyclotomic field.

Vectors are plain dicts ``{index: CycScalar}`` holding only nonzero entries.
Elimination splits the row/column incidence graph into connected components
and runs Gauss-Jordan on each one independently.  The reduced row echelon
form is unique, so the result does not depend on the splitting or on the
order in which components are processed.
"""

from __future__ import annotations

import json
from collections import defaultdict
from typing import Iterable

from .cyclotomic import CyclotomicField, CycScalar, field as get_field

__all__ = [
    "LinOp",
    "Subspace",
    "rref",
    "kernel",
    "image",
    "rank",
    "solve",
    "vec_add",
    "vec_scale",
    "vec_sub",
]

Vector = dict


# -- vector helpers -------------------------------------------------------


def vec_add(u: Vector, v: Vector) -> Vector:
    out = dict(u)
    for k, x in v.items():
        y = out.get(k)
        if y is None:
            out[k] = x
        else:
            y = y + x
            if y:
                out[k] = y
            else:
                del out[k]
    return out


def vec_sub(u: Vector, v: Vector) -> Vector:
    out = dict(u)
    _axpy(out, 1, v)
    return out


def vec_scale(u: Vector, c) -> Vector:
    if not c:
        return {}
    return {k: x * c for k, x in u.items()}


def _field_of(vectors):
    for v in vectors:
        for x in v.values():
            return x.field
    return None


def _axpy(row: dict, c, other: dict) -> None:
    """row -= c * other, in place."""
    for k, v in other.items():
        t = row.get(k)
        if t is None:
            row[k] = -(v * c) if c != 1 else -v
        else:
            t = t - (v * c if c != 1 else v)
            if t:
                row[k] = t
            else:
                del row[k]


# -- elimination core -----------------------------------------------------


def _components(rows: list[dict]) -> list[list[dict]]:
    parent: dict[int, int] = {}

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for row in rows:
        cols = iter(row)
        first = next(cols)
        parent.setdefault(first, first)
        rf = find(first)
        for c in cols:
            parent.setdefault(c, c)
            rc = find(c)
            if rc != rf:
                parent[rc] = rf
    groups: dict[int, list[dict]] = defaultdict(list)
    for row in rows:
        groups[find(next(iter(row)))].append(row)
    return list(groups.values())


def _gauss_jordan(rows: list[dict]) -> dict[int, dict]:
    """Reduced echelon basis of the span of ``rows`` keyed by pivot column."""
    basis: dict[int, dict] = {}
    for src in rows:
        row = dict(src)
        for p in [c for c in row if c in basis]:
            c = row.get(p)
            if c is not None:
                _axpy(row, c, basis[p])
        if not row:
            continue
        p = min(row)
        inv = row[p].inverse()
        if inv != 1:
            row = {k: v * inv for k, v in row.items()}
        for other in basis.values():
            c = other.get(p)
            if c is not None:
                _axpy(other, c, row)
        basis[p] = row
    return basis


def echelon_rows(rows: Iterable[dict]) -> list[tuple[int, dict]]:
    """Unique reduced row echelon basis of the span of ``rows``.

    Returns ``(pivot, row)`` pairs sorted by pivot column.
    """
    rows = [r for r in rows if r]
    result: dict[int, dict] = {}
    for comp in _components(rows):
        result.update(_gauss_jordan(comp))
    return sorted(result.items())


# -- operators ------------------------------------------------------------


class LinOp:
    """Sparse matrix with exact entries, stored as a list of row dicts."""

    __slots__ = ("nrows", "ncols", "rows", "field")

    def __init__(self, nrows: int, ncols: int, rows=None, field: CyclotomicField | None = None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = [dict(r) for r in rows] if rows is not None else [{} for _ in range(nrows)]
        if len(self.rows) != nrows:
            raise ValueError("row count mismatch")
        self.field = field
        if field is None:
            for r in self.rows:
                for v in r.values():
                    self.field = v.field
                    break
                if self.field is not None:
                    break

    @classmethod
    def from_columns(cls, nrows: int, columns: list[dict], field=None) -> "LinOp":
        rows = [{} for _ in range(nrows)]
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    rows[i][j] = v
        return cls(nrows, len(columns), rows, field)

    @classmethod
    def identity(cls, n: int, field: CyclotomicField) -> "LinOp":
        return cls(n, n, [{i: field.one} for i in range(n)], field)

    @classmethod
    def zero(cls, nrows: int, ncols: int, field=None) -> "LinOp":
        return cls(nrows, ncols, None, field)

    def __getitem__(self, ij):
        i, j = ij
        v = self.rows[i].get(j)
        if v is None:
            return self.field.zero if self.field is not None else 0
        return v

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def is_zero(self) -> bool:
        return not any(self.rows)

    def columns(self) -> list[dict]:
        cols = [{} for _ in range(self.ncols)]
        for i, row in enumerate(self.rows):
            for j, v in row.items():
                cols[j][i] = v
        return cols

    def column(self, j: int) -> dict:
        return {i: row[j] for i, row in enumerate(self.rows) if j in row}

    def transpose(self) -> "LinOp":
        return LinOp(self.ncols, self.nrows, self.columns(), self.field)

    T = property(transpose)

    def apply(self, v: Vector) -> Vector:
        out = {}
        for i, row in enumerate(self.rows):
            if not row:
                continue
            acc = None
            if len(row) < len(v):
                for j, a in row.items():
                    x = v.get(j)
                    if x is not None:
                        acc = a * x if acc is None else acc + a * x
            else:
                for j, x in v.items():
                    a = row.get(j)
                    if a is not None:
                        acc = a * x if acc is None else acc + a * x
            if acc:
                out[i] = acc
        return out

    def __matmul__(self, other):
        if isinstance(other, LinOp):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            rows = []
            for row in self.rows:
                acc: dict = {}
                for k, a in row.items():
                    _axpy(acc, -a, other.rows[k])
                rows.append(acc)
            return LinOp(self.nrows, other.ncols, rows, self.field or other.field)
        if isinstance(other, dict):
            return self.apply(other)
        return NotImplemented

    def __add__(self, other: "LinOp") -> "LinOp":
        self._check_same(other)
        return LinOp(self.nrows, self.ncols, [vec_add(a, b) for a, b in zip(self.rows, other.rows)],
                     self.field or other.field)

    def __sub__(self, other: "LinOp") -> "LinOp":
        self._check_same(other)
        return LinOp(self.nrows, self.ncols, [vec_sub(a, b) for a, b in zip(self.rows, other.rows)],
                     self.field or other.field)

    def __neg__(self):
        return LinOp(self.nrows, self.ncols, [vec_scale(r, -1) for r in self.rows], self.field)

    def scale(self, c) -> "LinOp":
        return LinOp(self.nrows, self.ncols, [vec_scale(r, c) for r in self.rows], self.field)

    def _check_same(self, other):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __eq__(self, other):
        if not isinstance(other, LinOp):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __repr__(self):
        return f"LinOp({self.nrows}x{self.ncols}, nnz={self.nnz()})"

    def vstack(self, other: "LinOp") -> "LinOp":
        if self.ncols != other.ncols:
            raise ValueError("column mismatch in vstack")
        return LinOp(self.nrows + other.nrows, self.ncols, self.rows + other.rows,
                     self.field or other.field)

    def hstack(self, other: "LinOp") -> "LinOp":
        if self.nrows != other.nrows:
            raise ValueError("row mismatch in hstack")
        off = self.ncols
        rows = []
        for a, b in zip(self.rows, other.rows):
            row = dict(a)
            row.update({off + j: v for j, v in b.items()})
            rows.append(row)
        return LinOp(self.nrows, self.ncols + other.ncols, rows, self.field or other.field)

    # -- serialization ---------------------------------------------------

    def entries(self):
        for i, row in enumerate(self.rows):
            for j in sorted(row):
                yield i, j, row[j]

    def to_json_obj(self) -> dict:
        return {
            "rows": self.nrows,
            "cols": self.ncols,
            "field": {"r": self.field.r if self.field is not None else None},
            "entries": [[i, j, v.to_json()] for i, j, v in self.entries()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json(cls, text) -> "LinOp":
        obj = json.loads(text) if isinstance(text, str) else text
        fld = get_field(obj["field"]["r"])
        rows = [{} for _ in range(obj["rows"])]
        for i, j, coeffs in obj["entries"]:
            v = fld.parse(coeffs)
            if v:
                rows[i][j] = v
        return cls(obj["rows"], obj["cols"], rows, fld)


def rref(M: LinOp) -> tuple[LinOp, list[int], int]:
    """Reduced row echelon form ``(R, pivots, rank)``; zero rows trail."""
    basis = echelon_rows(M.rows)
    pivots = [p for p, _ in basis]
    rows = [row for _, row in basis]
    rows += [{} for _ in range(M.nrows - len(rows))]
    return LinOp(M.nrows, M.ncols, rows, M.field), pivots, len(pivots)


def rank(M: LinOp) -> int:
    return len(echelon_rows(M.rows))


def kernel(M: LinOp) -> "Subspace":
    """Right null space ``{v : M v = 0}``."""
    basis = echelon_rows(M.rows)
    pivot_set = {p for p, _ in basis}
    fld = M.field
    one = fld.one if fld is not None else 1
    # for free column f: v_f = e_f - sum_p R[p, f] e_p
    by_free: dict[int, dict] = defaultdict(dict)
    for p, row in basis:
        for j, v in row.items():
            if j != p:
                by_free[j][p] = -v
    vectors = []
    for f in range(M.ncols):
        if f in pivot_set:
            continue
        vec = by_free.get(f, {})
        vec[f] = one
        vectors.append(vec)
    return Subspace.span(M.ncols, vectors)


def image(M: LinOp) -> "Subspace":
    """Column space of ``M``."""
    return Subspace.span(M.nrows, M.columns())


def solve(M: LinOp, b: Vector):
    """Some ``x`` with ``M x = b``, free variables set to zero; ``None`` if none exists."""
    aug = M.ncols
    rows = []
    for i, row in enumerate(M.rows):
        if i in b:
            row = dict(row)
            row[aug] = b[i]
        rows.append(row)
    bad = [i for i in b if i >= M.nrows]
    if bad:
        raise ValueError("right-hand side longer than operator")
    x = {}
    for p, row in echelon_rows(rows):
        if p == aug:
            return None
        v = row.get(aug)
        if v is not None:
            x[p] = v
    return x


# -- subspaces ------------------------------------------------------------


class Subspace:
    """Subspace of K^n held as a reduced row echelon basis."""

    __slots__ = ("ambient_dim", "basis", "pivots", "_by_pivot")

    def __init__(self, ambient_dim: int, echelon: list[tuple[int, dict]]):
        self.ambient_dim = ambient_dim
        self.pivots = [p for p, _ in echelon]
        self.basis = [row for _, row in echelon]
        self._by_pivot = dict(echelon)

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[dict]) -> "Subspace":
        vectors = list(vectors)
        for v in vectors:
            for k in v:
                if not 0 <= k < ambient_dim:
                    raise IndexError(f"coordinate {k} outside ambient dimension {ambient_dim}")
        return cls(ambient_dim, echelon_rows(vectors))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, [])

    @classmethod
    def full(cls, ambient_dim: int, field: CyclotomicField) -> "Subspace":
        return cls(ambient_dim, [(i, {i: field.one}) for i in range(ambient_dim)])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("subspaces live in different ambient spaces")

    def reduce(self, v: Vector) -> Vector:
        """Canonical coset representative of ``v`` modulo this subspace."""
        out = dict(v)
        for p in [k for k in v if k in self._by_pivot]:
            c = out.get(p)
            if c is not None:
                _axpy(out, c, self._by_pivot[p])
        return out

    def contains(self, v: Vector) -> bool:
        return not self.reduce(v)

    __contains__ = contains

    def contains_subspace(self, other: "Subspace") -> bool:
        self._check(other)
        return all(self.contains(v) for v in other.basis)

    def __le__(self, other: "Subspace") -> bool:
        return other.contains_subspace(self)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient_dim == other.ambient_dim and self.pivots == other.pivots
                and self.basis == other.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.ambient_dim, echelon_rows(self.basis + other.basis))

    sum = __add__

    def add_vectors(self, vectors: Iterable[dict]) -> "Subspace":
        return Subspace(self.ambient_dim, echelon_rows(self.basis + list(vectors)))

    def intersection(self, other: "Subspace") -> "Subspace":
        """Intersection, via the kernel of the residue map of ``self``'s basis."""
        self._check(other)
        if self.dim > other.dim:
            return other.intersection(self)
        if not self.basis:
            return Subspace.zero(self.ambient_dim)
        residues = [other.reduce(u) for u in self.basis]
        res_op = LinOp.from_columns(self.ambient_dim, residues, _field_of(self.basis))
        combos = kernel(res_op)
        vectors = []
        for y in combos.basis:
            acc: dict = {}
            for i, c in y.items():
                _axpy(acc, -c, self.basis[i])
            vectors.append(acc)
        return Subspace.span(self.ambient_dim, vectors)

    __and__ = intersection

    def complement_in(self, V: "Subspace") -> "Subspace":
        """A subspace ``C`` with ``self + C = V`` and ``self & C = 0``."""
        self._check(V)
        if not V.contains_subspace(self):
            raise ValueError("complement requires self to be contained in V")
        return Subspace.span(self.ambient_dim, [self.reduce(v) for v in V.basis])

    def quotient_dim(self, U: "Subspace") -> int:
        """dim(self / U) for ``U`` contained in ``self``."""
        self._check(U)
        if not self.contains_subspace(U):
            raise ValueError("quotient requires U to be contained in self")
        return self.dim - U.dim

    def relative_dim(self, U: "Subspace") -> int:
        """dim((self + U) / U), the dimension of the image of ``self`` in K^n / U."""
        self._check(U)
        return sum(1 for _ in echelon_rows(U.reduce(v) for v in self.basis))

    def map(self, op: LinOp) -> "Subspace":
        return Subspace.span(op.nrows, [op.apply(v) for v in self.basis])

    def preimage(self, op: LinOp, target: "Subspace") -> "Subspace":
        """``{v in self : op v in target}``."""
        if not self.basis:
            return Subspace.zero(self.ambient_dim)
        residues = [target.reduce(op.apply(v)) for v in self.basis]
        combos = kernel(LinOp.from_columns(op.nrows, residues, _field_of(self.basis)))
        vectors = []
        for y in combos.basis:
            acc: dict = {}
            for i, c in y.items():
                _axpy(acc, -c, self.basis[i])
            vectors.append(acc)
        return Subspace.span(self.ambient_dim, vectors)

    def as_rows(self) -> LinOp:
        return LinOp(self.dim, self.ambient_dim, self.basis)
