"""Sparse exact linear algebra over a field from :mod:`gradedlie.fields`.

Vectors are dicts ``{column index: nonzero scalar}``.  The central tool is
:class:`Echelon`, an incremental reduced-row-echelon builder with
deterministic pivoting (lowest column index wins, rows inserted in arrival
order), which everything else (rank, kernel, quotient bases, intersections,
solving) is built on.  Matrices are immutable after construction;
elimination always produces new objects, so independent computations can
run concurrently.
"""

from __future__ import annotations

from typing import Optional

from .fields import Field, FieldError, check_same_field


def vec_add(field: Field, u: dict, v: dict) -> dict:
    out = dict(u)
    add, is_zero = field.add, field.is_zero
    for c, x in v.items():
        if c in out:
            s = add(out[c], x)
            if is_zero(s):
                del out[c]
            else:
                out[c] = s
        else:
            out[c] = x
    return out


def vec_scale(field: Field, a, v: dict) -> dict:
    if field.is_zero(a):
        return {}
    mul = field.mul
    return {c: mul(a, x) for c, x in v.items()}


def vec_axpy(field: Field, out: dict, a, v: dict):
    """In-place out += a*v (out is a plain dict being built)."""
    add, mul, is_zero = field.add, field.mul, field.is_zero
    for c, x in v.items():
        ax = mul(a, x)
        if c in out:
            s = add(out[c], ax)
            if is_zero(s):
                del out[c]
            else:
                out[c] = s
        else:
            if not is_zero(ax):
                out[c] = ax


class Echelon:
    """Incremental reduced row echelon form over an arbitrary exact field.

    Pivot columns are chosen as the lowest index of each reduced row; the
    stored rows are fully reduced against each other (pivot entries 1, each
    pivot column cleared from all other rows), so the row set is the unique
    canonical basis of the span.
    """

    def __init__(self, field: Field):
        self.field = field
        self.rows: dict[int, dict] = {}  # pivot column -> row vector

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def reduce(self, vec: dict) -> dict:
        """Return the residue of vec modulo the current row space."""
        field = self.field
        out = dict(vec)
        rows = self.rows
        # repeatedly clear the lowest reducible coordinate
        while True:
            hit = None
            for c in out:
                if c in rows:
                    if hit is None or c < hit:
                        hit = c
            if hit is None:
                return out
            coef = field.neg(out[hit])
            vec_axpy(field, out, coef, rows[hit])
            if hit in out:  # numerical impossibility over exact fields
                del out[hit]

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def add(self, vec: dict) -> Optional[int]:
        """Insert vec; return its new pivot column, or None if dependent."""
        field = self.field
        res = self.reduce(vec)
        if not res:
            return None
        p = min(res)
        inv = field.inv(res[p])
        row = {c: field.mul(inv, x) for c, x in res.items()}
        # back-substitute into existing rows to keep the reduced form
        for q, other in self.rows.items():
            if p in other:
                coef = field.neg(other[p])
                vec_axpy(field, other, coef, row)
                other.pop(p, None)
        self.rows[p] = row
        return p

    def basis(self) -> list[dict]:
        """Canonical basis, ordered by pivot column."""
        return [dict(self.rows[p]) for p in sorted(self.rows)]

    def express(self, vec: dict):
        """Coefficients of vec over the canonical basis, or None.

        Returns ``{pivot column: coefficient}`` such that
        ``vec == sum(coeff * row)``.
        """
        field = self.field
        out = dict(vec)
        coeffs = {}
        while True:
            hit = None
            for c in out:
                if c in self.rows:
                    if hit is None or c < hit:
                        hit = c
            if hit is None:
                break
            coeffs[hit] = out[hit]
            vec_axpy(field, out, field.neg(out[hit]), self.rows[hit])
            out.pop(hit, None)
        if out:
            return None
        return coeffs


class SparseMatrix:
    """Immutable sparse matrix; entries maps (row, col) -> nonzero scalar."""

    def __init__(self, field: Field, rows: int, cols: int, entries: dict):
        self.field = field
        self.rows = rows
        self.cols = cols
        self.entries = {}
        for (r, c), v in entries.items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise ValueError(f"entry ({r},{c}) outside {rows}x{cols}")
            if not field.is_zero(v):
                self.entries[(r, c)] = v

    @classmethod
    def from_row_vectors(cls, field: Field, cols: int, row_vecs: list[dict]):
        entries = {}
        for r, vec in enumerate(row_vecs):
            for c, v in vec.items():
                entries[(r, c)] = v
        return cls(field, len(row_vecs), cols, entries)

    def row_vectors(self) -> list[dict]:
        out = [dict() for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def col_vectors(self) -> list[dict]:
        out = [dict() for _ in range(self.cols)]
        for (r, c), v in self.entries.items():
            out[c][r] = v
        return out

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(
            self.field,
            self.cols,
            self.rows,
            {(c, r): v for (r, c), v in self.entries.items()},
        )

    def rank(self) -> int:
        ech = Echelon(self.field)
        for vec in self.row_vectors():
            ech.add(vec)
        return ech.rank

    def kernel(self) -> "Subspace":
        """Canonical basis of the right null space (dim = cols - rank)."""
        field = self.field
        ech = Echelon(field)
        for vec in self.row_vectors():
            ech.add(vec)
        pivots = ech.pivots()
        pivot_set = set(pivots)
        free = [c for c in range(self.cols) if c not in pivot_set]
        basis = []
        for f in free:
            vec = {f: field.one}
            for p in pivots:
                x = ech.rows[p].get(f)
                if x is not None:
                    vec[p] = field.neg(x)
            basis.append(vec)
        return Subspace.from_vectors(field, self.cols, basis)

    def image(self) -> "Subspace":
        """Canonical column space."""
        return Subspace.from_vectors(self.field, self.rows, self.col_vectors())

    def apply(self, vec: dict) -> dict:
        """Matrix-vector product (vec indexed by columns)."""
        field = self.field
        out: dict = {}
        cols = self.col_vectors()
        for c, x in vec.items():
            vec_axpy(field, out, x, cols[c])
        return out


class Subspace:
    """A subspace of k^n in canonical reduced echelon form."""

    def __init__(self, field: Field, ambient_dim: int, echelon: Echelon):
        self.field = field
        self.ambient_dim = ambient_dim
        self._ech = echelon

    @classmethod
    def from_vectors(cls, field: Field, ambient_dim: int, vectors) -> "Subspace":
        ech = Echelon(field)
        for v in vectors:
            ech.add(v)
        return cls(field, ambient_dim, ech)

    @classmethod
    def zero(cls, field: Field, ambient_dim: int) -> "Subspace":
        return cls(field, ambient_dim, Echelon(field))

    @property
    def dim(self) -> int:
        return self._ech.rank

    @property
    def basis(self) -> list[dict]:
        return self._ech.basis()

    def pivots(self) -> list[int]:
        return self._ech.pivots()

    def contains(self, vec: dict) -> bool:
        return self._ech.contains(vec)

    def reduce(self, vec: dict) -> dict:
        return self._ech.reduce(vec)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def quotient_basis(sub: Subspace) -> list[int]:
    """Indices of standard basis vectors complementing sub (non-pivot cols)."""
    pivots = set(sub.pivots())
    return [c for c in range(sub.ambient_dim) if c not in pivots]


def sum_spaces(a: Subspace, b: Subspace) -> Subspace:
    check_same_field(a.field, b.field, "subspaces")
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    return Subspace.from_vectors(a.field, a.ambient_dim, a.basis + b.basis)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Canonical basis of the intersection (Zassenhaus-style)."""
    check_same_field(a.field, b.field, "subspaces")
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    field = a.field
    # Solve sum x_i a_i + sum y_j b_j = 0; each kernel element yields the
    # intersection vector sum x_i a_i.
    abasis = a.basis
    bbasis = b.basis
    n = a.ambient_dim
    rows = []
    for i, v in enumerate(abasis):
        rows.append(dict(v))
    for j, v in enumerate(bbasis):
        rows.append({c: field.neg(x) for c, x in v.items()})
    m = SparseMatrix.from_row_vectors(field, n, rows).transpose()
    ker = m.kernel()
    vectors = []
    for kv in ker.basis:
        vec: dict = {}
        for idx, coef in kv.items():
            if idx < len(abasis):
                vec_axpy(field, vec, coef, abasis[idx])
        vectors.append(vec)
    return Subspace.from_vectors(field, n, vectors)


class ColumnSolver:
    """Solve M x = b for a sparse matrix given by column vectors.

    Columns are echelonized with combination tracking; solutions are
    deterministic (free variables set to zero, lowest-index pivots).
    """

    def __init__(self, field: Field, columns: list[dict]):
        self.field = field
        self.columns = columns
        self._ech = Echelon(field)
        self._combos: dict[int, dict] = {}  # pivot -> combination of columns
        for j, col in enumerate(columns):
            self._insert(j, col)

    def _insert(self, j: int, col: dict):
        field = self.field
        res = dict(col)
        combo = {j: field.one}
        while True:
            hit = None
            for c in res:
                if c in self._ech.rows:
                    if hit is None or c < hit:
                        hit = c
            if hit is None:
                break
            coef = field.neg(res[hit])
            vec_axpy(field, res, coef, self._ech.rows[hit])
            res.pop(hit, None)
            vec_axpy(field, combo, coef, self._combos[hit])
        if not res:
            return
        p = min(res)
        inv = field.inv(res[p])
        row = {c: field.mul(inv, x) for c, x in res.items()}
        cmb = {c: field.mul(inv, x) for c, x in combo.items()}
        for q in self._ech.rows:
            other = self._ech.rows[q]
            if p in other:
                coef = field.neg(other[p])
                vec_axpy(field, other, coef, row)
                other.pop(p, None)
                vec_axpy(field, self._combos[q], coef, cmb)
        self._ech.rows[p] = row
        self._combos[p] = cmb

    @property
    def rank(self) -> int:
        return self._ech.rank

    def solve(self, b: dict) -> Optional[dict]:
        """A particular solution x (dict col->coeff), or None if unsolvable."""
        field = self.field
        res = dict(b)
        sol: dict = {}
        while True:
            hit = None
            for c in res:
                if c in self._ech.rows:
                    if hit is None or c < hit:
                        hit = c
            if hit is None:
                break
            coef = res[hit]
            vec_axpy(field, res, field.neg(coef), self._ech.rows[hit])
            res.pop(hit, None)
            vec_axpy(field, sol, coef, self._combos[hit])
        if res:
            return None
        return sol
