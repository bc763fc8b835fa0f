"""Exact sparse linear algebra over Q and prime fields.

Everything downstream (homology ranks, spectral pages, identity checks)
reduces to ranks, kernels and quotients computed here.  Scalars are
`fractions.Fraction` in characteristic 0 and `FpScalar` wrappers mod p;
there is no floating point anywhere.  Vectors are plain dicts mapping a
coordinate index to a nonzero scalar; matrices store nonzero entries
sparsely and carry their field.  All canonical forms are reduced row
echelon forms, so every representative choice made downstream is
deterministic and two identical runs produce bit-identical results.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


DEFAULT_DIMENSION_CAP = 200_000


class ExactLinalgError(ValueError):
    pass


class DimensionMismatch(ExactLinalgError):
    pass


class DimensionCapExceeded(ExactLinalgError):
    """Raised before building a chain space larger than the configured cap."""


def check_dimension_cap(dim, cap=DEFAULT_DIMENSION_CAP):
    if cap is not None and dim > cap:
        raise DimensionCapExceeded(
            f"chain space of dimension {dim} exceeds the cap {cap}")


class FpScalar:
    """An element of F_p, with field arithmetic through operators."""

    __slots__ = ("p", "v")

    def __init__(self, p, v):
        self.p = p
        self.v = v % p

    def __add__(self, other):
        return FpScalar(self.p, self.v + other.v)

    def __sub__(self, other):
        return FpScalar(self.p, self.v - other.v)

    def __mul__(self, other):
        return FpScalar(self.p, self.v * other.v)

    def __neg__(self):
        return FpScalar(self.p, -self.v)

    def __truediv__(self, other):
        if other.v == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return FpScalar(self.p, self.v * pow(other.v, -1, self.p))

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        return isinstance(other, FpScalar) and self.p == other.p and self.v == other.v

    def __hash__(self):
        return hash((self.p, self.v))

    def __repr__(self):
        return f"{self.v}"


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class Field:
    """Scalar arithmetic: the rationals (characteristic 0) or F_p."""

    def __init__(self, characteristic=0):
        if characteristic != 0 and not _is_prime(characteristic):
            raise ExactLinalgError(
                f"characteristic must be 0 or prime, got {characteristic}")
        self.characteristic = characteristic

    @property
    def kind(self):
        return "rationals" if self.characteristic == 0 else "prime_field"

    def of(self, n):
        """Embed an integer (or Fraction, when the denominator allows)."""
        if self.characteristic == 0:
            return Fraction(n)
        if isinstance(n, Fraction):
            if n.denominator % self.characteristic == 0:
                raise ExactLinalgError(
                    f"{n} has no image in F_{self.characteristic}")
            return FpScalar(self.characteristic, n.numerator) / FpScalar(
                self.characteristic, n.denominator)
        return FpScalar(self.characteristic, n)

    @property
    def zero(self):
        return self.of(0)

    @property
    def one(self):
        return self.of(1)

    def sign(self, i):
        """(-1)**i as a scalar."""
        return self.of(1) if i % 2 == 0 else self.of(-1)

    def parse(self, text):
        """Parse 'a' or 'a/b' into a scalar."""
        text = text.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            frac = Fraction(int(num), int(den))
        else:
            frac = Fraction(int(text))
        return self.of(frac)

    def format(self, scalar):
        return str(scalar)

    def __eq__(self, other):
        return isinstance(other, Field) and self.characteristic == other.characteristic

    def __hash__(self):
        return hash(("Field", self.characteristic))

    def __repr__(self):
        return "Q" if self.characteristic == 0 else f"F{self.characteristic}"


QQ = Field(0)
GF2 = Field(2)


# ---------------------------------------------------------------------------
# sparse vectors: dict {index: nonzero scalar}

def vec_add_into(acc, vec, coeff=None):
    """acc += coeff * vec, in place, dropping cancelled entries."""
    for k, c in vec.items():
        if coeff is not None:
            c = coeff * c
        if k in acc:
            s = acc[k] + c
            if s:
                acc[k] = s
            else:
                del acc[k]
        elif c:
            acc[k] = c


def vec_scale(vec, coeff):
    if not coeff:
        return {}
    return {k: coeff * c for k, c in vec.items()}


def vec_sub(u, v):
    out = dict(u)
    for k, c in v.items():
        if k in out:
            s = out[k] - c
            if s:
                out[k] = s
            else:
                del out[k]
        else:
            out[k] = -c
    return out


class SparseMatrix:
    """A rows x cols matrix over a field, storing only nonzero entries.

    Convention: the matrix of an operator f has entry (i, j) equal to the
    e_i-coefficient of f(e_j); `apply` evaluates f on a sparse vector.
    """

    __slots__ = ("field", "rows", "cols", "entries", "_bycol")

    def __init__(self, field, rows, cols, entries=None):
        self.field = field
        self.rows = rows
        self.cols = cols
        self.entries = {}
        self._bycol = None
        if entries:
            items = entries.items() if isinstance(entries, dict) else entries
            for (i, j), c in items:
                if not (0 <= i < rows and 0 <= j < cols):
                    raise DimensionMismatch(f"entry ({i},{j}) out of range")
                if c:
                    if (i, j) in self.entries:
                        raise ExactLinalgError(f"duplicate entry at ({i},{j})")
                    self.entries[(i, j)] = c

    @classmethod
    def from_columns(cls, field, rows, columns):
        m = cls(field, rows, len(columns))
        for j, col in enumerate(columns):
            for i, c in col.items():
                if c:
                    m.entries[(i, j)] = c
        return m

    @classmethod
    def from_row_list(cls, field, row_dicts, cols):
        m = cls(field, len(row_dicts), cols)
        for i, row in enumerate(row_dicts):
            for j, c in row.items():
                if c:
                    m.entries[(i, j)] = c
        return m

    @classmethod
    def from_dense(cls, field, dense):
        rows = len(dense)
        cols = len(dense[0]) if rows else 0
        m = cls(field, rows, cols)
        for i, row in enumerate(dense):
            for j, val in enumerate(row):
                c = val if isinstance(val, (Fraction, FpScalar)) else field.of(val)
                if c:
                    m.entries[(i, j)] = c
        return m

    @classmethod
    def identity(cls, field, n):
        m = cls(field, n, n)
        one = field.one
        for i in range(n):
            m.entries[(i, i)] = one
        return m

    @classmethod
    def zero(cls, field, rows, cols):
        return cls(field, rows, cols)

    def row_dicts(self):
        rows = [dict() for _ in range(self.rows)]
        for (i, j), c in self.entries.items():
            rows[i][j] = c
        return rows

    def columns(self):
        cols = [dict() for _ in range(self.cols)]
        for (i, j), c in self.entries.items():
            cols[j][i] = c
        return cols

    def _columns_cached(self):
        if self._bycol is None:
            bycol = {}
            for (i, j), c in self.entries.items():
                bycol.setdefault(j, {})[i] = c
            self._bycol = bycol
        return self._bycol

    def transpose(self):
        t = SparseMatrix(self.field, self.cols, self.rows)
        t.entries = {(j, i): c for (i, j), c in self.entries.items()}
        return t

    def apply(self, vec):
        """Matrix times sparse coordinate vector (keyed by column index)."""
        bycol = self._columns_cached()
        out = {}
        for j, x in vec.items():
            if not 0 <= j < self.cols:
                raise DimensionMismatch("vector index out of range")
            col = bycol.get(j)
            if col:
                vec_add_into(out, col, x)
        return out

    def compose(self, other):
        """self @ other."""
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot compose {self.rows}x{self.cols} with "
                f"{other.rows}x{other.cols}")
        out = SparseMatrix(self.field, self.rows, other.cols)
        for j, col in enumerate(other.columns()):
            for i, c in self.apply(col).items():
                out.entries[(i, j)] = c
        return out

    def add(self, other, coeff=None):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("matrix shapes differ")
        out = SparseMatrix(self.field, self.rows, self.cols)
        out.entries = dict(self.entries)
        for (i, j), c in other.entries.items():
            if coeff is not None:
                c = coeff * c
            key = (i, j)
            if key in out.entries:
                s = out.entries[key] + c
                if s:
                    out.entries[key] = s
                else:
                    del out.entries[key]
            elif c:
                out.entries[key] = c
        return out

    def scale(self, coeff):
        out = SparseMatrix(self.field, self.rows, self.cols)
        if coeff:
            out.entries = {k: coeff * c for k, c in self.entries.items()}
        return out

    def is_zero(self):
        return not self.entries

    def __eq__(self, other):
        return (isinstance(other, SparseMatrix)
                and self.rows == other.rows and self.cols == other.cols
                and self.entries == other.entries)

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols}, {len(self.entries)} nz)"


def rref(row_dicts):
    """Reduced row echelon form of a list of sparse rows.

    Returns (pivot_columns, reduced_rows) sorted by pivot column with zero
    rows dropped.  RREF depends only on the row span, which makes every
    representative chosen downstream canonical.
    """
    pivots = []  # (pivot_col, fully reduced row)
    for row in row_dicts:
        row = dict(row)
        for pcol, prow in pivots:
            if pcol in row:
                coeff = row[pcol]
                for k, c in prow.items():
                    if k in row:
                        s = row[k] - coeff * c
                        if s:
                            row[k] = s
                        else:
                            del row[k]
                    else:
                        row[k] = -(coeff * c)
        if not row:
            continue
        pcol = min(row)
        inv = row[pcol]
        row = {k: c / inv for k, c in row.items()}
        for qcol, qrow in pivots:
            if pcol in qrow:
                coeff = qrow[pcol]
                for k, c in row.items():
                    if k in qrow:
                        s = qrow[k] - coeff * c
                        if s:
                            qrow[k] = s
                        else:
                            del qrow[k]
                    else:
                        qrow[k] = -(coeff * c)
        pivots.append((pcol, row))
    pivots.sort(key=lambda pc: pc[0])
    return [p for p, _ in pivots], [r for _, r in pivots]


def mat_rank(m):
    """Rank over the matrix's field; deterministic."""
    pivots, _ = rref(m.row_dicts())
    return len(pivots)


@dataclass
class Subspace:
    """A subspace given by a canonical reduced-echelon basis (rows)."""

    ambient_dim: int
    basis: SparseMatrix

    @classmethod
    def from_vectors(cls, field, ambient_dim, vectors):
        _, rows = rref(vectors)
        return cls(ambient_dim, SparseMatrix.from_row_list(field, rows, ambient_dim))

    @classmethod
    def zero(cls, field, ambient_dim):
        return cls(ambient_dim, SparseMatrix(field, 0, ambient_dim))

    @property
    def field(self):
        return self.basis.field

    @property
    def dim(self):
        return self.basis.rows

    def pivot_columns(self):
        return [min(r) for r in self.basis.row_dicts()]

    def reduce(self, vec):
        """Subtract the projection onto this subspace along its pivots."""
        out = dict(vec)
        for row in self.basis.row_dicts():
            p = min(row)
            if p in out:
                coeff = out[p]
                for k, c in row.items():
                    if k in out:
                        s = out[k] - coeff * c
                        if s:
                            out[k] = s
                        else:
                            del out[k]
                    else:
                        out[k] = -(coeff * c)
        return out

    def contains(self, vec):
        return not self.reduce(vec)

    def sum_with(self, other):
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch("ambient dimensions differ")
        return Subspace.from_vectors(
            self.field, self.ambient_dim,
            self.basis.row_dicts() + other.basis.row_dicts())

    def coords_of(self, vec):
        """Coordinates of a member vector in the RREF basis (reads pivots)."""
        residual = dict(vec)
        coords = {}
        for t, row in enumerate(self.basis.row_dicts()):
            p = min(row)
            if p in residual:
                coeff = residual[p]
                coords[t] = coeff
                for k, c in row.items():
                    if k in residual:
                        s = residual[k] - coeff * c
                        if s:
                            residual[k] = s
                        else:
                            del residual[k]
                    else:
                        residual[k] = -(coeff * c)
        if residual:
            raise ExactLinalgError("vector is not in the subspace")
        return coords


def kernel_basis(m):
    """Canonical echelon basis of the right kernel; dim = cols - rank."""
    pivots, rows = rref(m.row_dicts())
    pivot_set = set(pivots)
    free_cols = [j for j in range(m.cols) if j not in pivot_set]
    one = m.field.one
    vectors = []
    for f in free_cols:
        v = {f: one}
        for p, row in zip(pivots, rows):
            if f in row:
                v[p] = -row[f]
        vectors.append(v)
    return Subspace.from_vectors(m.field, m.cols, vectors)


def solve_linear(m, rhs):
    """Any solution of m x = rhs, free variables set to zero; None if none.

    Inconsistency is a value, not an error.
    """
    if any(not 0 <= k < m.rows for k in rhs):
        raise DimensionMismatch("rhs length does not match row count")
    aug_col = m.cols
    rows = m.row_dicts()
    for i, c in rhs.items():
        if c:
            rows[i][aug_col] = c
    pivots, red = rref(rows)
    sol = {}
    for p, row in zip(pivots, red):
        if p == aug_col:
            return None  # pivot in the augmented column: inconsistent
        if aug_col in row:
            sol[p] = row[aug_col]
    return sol


def image_subspace(m):
    """Column space of m, as a canonical subspace of the target."""
    return Subspace.from_vectors(m.field, m.rows, m.columns())


@dataclass
class QuotientSpace:
    """ambient / denominator, with canonical representatives.

    The representatives are the standard basis vectors at the non-pivot
    coordinates of the denominator: projection reduces along the
    denominator and reads off those coordinates, and lifting is the
    tautological inclusion.
    """

    ambient_dim: int
    denominator: Subspace
    free_columns: list

    @property
    def dim(self):
        return len(self.free_columns)

    @property
    def field(self):
        return self.denominator.field

    def project(self, vec):
        reduced = self.denominator.reduce(vec)
        out = {}
        for t, f in enumerate(self.free_columns):
            if f in reduced:
                out[t] = reduced.pop(f)
        if reduced:
            raise ExactLinalgError("reduction left unexpected coordinates")
        return out

    def lift(self, coords):
        return {self.free_columns[t]: c for t, c in coords.items() if c}

    def representative_vectors(self):
        one = self.field.one
        return [{f: one} for f in self.free_columns]


def quotient_space(ambient_dim, denom):
    """Quotient with projection data; dim = ambient - dim(denominator)."""
    if denom.ambient_dim != ambient_dim:
        raise DimensionMismatch(
            f"denominator lives in dimension {denom.ambient_dim}, not {ambient_dim}")
    pivot_set = set(denom.pivot_columns())
    free_cols = [j for j in range(ambient_dim) if j not in pivot_set]
    return QuotientSpace(ambient_dim, denom, free_cols)


def full_quotient(field, ambient_dim):
    """ambient / 0, useful as the degree-zero normalization."""
    return quotient_space(ambient_dim, Subspace.zero(field, ambient_dim))


@dataclass
class NotWellDefined:
    """Marker: a map does not descend to the quotients.

    `basis_vector` is a denominator basis vector whose image fails to lie
    in the target denominator; `image` is the offending image.
    """

    basis_vector: dict
    image: dict


def induced_map(f, src, dst):
    """The map induced by f on quotients, or a NotWellDefined marker."""
    if f.cols != src.ambient_dim or f.rows != dst.ambient_dim:
        raise DimensionMismatch(
            f"map is {f.rows}x{f.cols}, quotients have ambient "
            f"{src.ambient_dim} -> {dst.ambient_dim}")
    for row in src.denominator.basis.row_dicts():
        img = f.apply(row)
        if not dst.denominator.contains(img):
            return NotWellDefined(basis_vector=row, image=img)
    one = f.field.one
    columns = [dst.project(f.apply({fcol: one})) for fcol in src.free_columns]
    return SparseMatrix.from_columns(f.field, dst.dim, columns)
