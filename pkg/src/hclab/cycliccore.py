"""Paracyclic modules, mixed complexes and their homology.

A paracyclic module is presented operationally: per-degree dimensions
plus providers sending a basis index to the sparse image under each
face, degeneracy and the cyclic rotation.  Operators are materialized
to matrices only per degree, inside rank computations.

Sign conventions, pinned once and exercised by the mixed-complex
contract (b*b = 0, B*B = 0, bB + Bb = 0 on normalized cyclic modules):

    b = sum_i (-1)^i face_i
    lambda = (-1)^n rotate           (degree n)
    N = sum_{i=0..n} lambda^i
    extra degeneracy s = rotate o degeneracy_n
    B = (1 - lambda) s N,            normalized form: s N

On a merely paracyclic module the normalized operators satisfy
bB + Bb = 1 - T with T the rotation to the (n+1)-st power; T = 1 on
cyclic modules, which recovers the contract.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactlinalg import (
    SparseMatrix,
    Subspace,
    check_dimension_cap,
    full_quotient,
    induced_map,
    mat_rank,
    quotient_space,
    vec_add_into,
)


class TensorSpace:
    """Flat indexing for a tensor product of labelled factors."""

    __slots__ = ("dims", "size", "_strides")

    def __init__(self, dims):
        self.dims = tuple(dims)
        size = 1
        strides = []
        for d in reversed(self.dims):
            strides.append(size)
            size *= d
        self.size = size
        self._strides = tuple(reversed(strides))

    def encode(self, tup):
        idx = 0
        for t, s in zip(tup, self._strides):
            idx += t * s
        return idx

    def decode(self, idx):
        out = []
        for s in self._strides:
            out.append(idx // s)
            idx %= s
        return tuple(out)


class ParacyclicModule:
    """Base class; subclasses provide dims and the operator families."""

    field = None

    def dim(self, n):
        raise NotImplementedError

    def face(self, n, i, k):
        raise NotImplementedError

    def degeneracy(self, n, i, k):
        raise NotImplementedError

    def rotate(self, n, k):
        raise NotImplementedError

    # matrix-backed modules only know finitely many degrees; provider
    # modules can answer everywhere
    def face_available(self, n):
        return n >= 1

    def degeneracy_available(self, n):
        return n >= 0

    def rotate_available(self, n):
        return n >= 0

    # -- vector-level application ------------------------------------------

    def face_vec(self, n, i, vec):
        out = {}
        for k, c in vec.items():
            vec_add_into(out, self.face(n, i, k), c)
        return out

    def degeneracy_vec(self, n, i, vec):
        out = {}
        for k, c in vec.items():
            vec_add_into(out, self.degeneracy(n, i, k), c)
        return out

    def rotate_vec(self, n, vec):
        out = {}
        for k, c in vec.items():
            vec_add_into(out, self.rotate(n, k), c)
        return out

    # -- materialized matrices ---------------------------------------------

    def _cache(self):
        if not hasattr(self, "_matrix_cache"):
            self._matrix_cache = {}
        return self._matrix_cache

    def face_matrix(self, n, i):
        cache = self._cache()
        key = ("face", n, i)
        if key not in cache:
            cols = [self.face(n, i, k) for k in range(self.dim(n))]
            cache[key] = SparseMatrix.from_columns(
                self.field, self.dim(n - 1), cols)
        return cache[key]

    def degeneracy_matrix(self, n, i):
        cache = self._cache()
        key = ("degeneracy", n, i)
        if key not in cache:
            cols = [self.degeneracy(n, i, k) for k in range(self.dim(n))]
            cache[key] = SparseMatrix.from_columns(
                self.field, self.dim(n + 1), cols)
        return cache[key]

    def rotate_matrix(self, n):
        cache = self._cache()
        key = ("rotate", n)
        if key not in cache:
            cols = [self.rotate(n, k) for k in range(self.dim(n))]
            cache[key] = SparseMatrix.from_columns(
                self.field, self.dim(n), cols)
        return cache[key]

    def boundary_matrix(self, n):
        """b = alternating sum of the faces; the zero map for n = 0."""
        cache = self._cache()
        key = ("boundary", n)
        if key not in cache:
            if n == 0:
                cache[key] = SparseMatrix.zero(self.field, 0, self.dim(0))
            else:
                m = self.face_matrix(n, 0)
                for i in range(1, n + 1):
                    m = m.add(self.face_matrix(n, i), self.field.sign(i))
                cache[key] = m
        return cache[key]

    def signed_rotation_matrix(self, n):
        return self.rotate_matrix(n).scale(self.field.sign(n))

    def norm_matrix(self, n):
        """N = 1 + lambda + ... + lambda^n."""
        lam = self.signed_rotation_matrix(n)
        acc = SparseMatrix.identity(self.field, self.dim(n))
        total = acc
        for _ in range(n):
            acc = lam.compose(acc)
            total = total.add(acc)
        return total

    def extra_degeneracy_matrix(self, n):
        """s = rotate o last degeneracy : degree n -> degree n+1."""
        return self.rotate_matrix(n + 1).compose(self.degeneracy_matrix(n, n))

    def connes_matrix(self, n):
        """The unnormalized Connes boundary (1 - lambda) s N."""
        sn = self.extra_degeneracy_matrix(n).compose(self.norm_matrix(n))
        lam = self.signed_rotation_matrix(n + 1)
        return sn.add(lam.compose(sn), self.field.sign(1))


class CyclicModuleMixin:
    """Marker for modules expected to satisfy rotate^(n+1) = id."""


@dataclass
class HomologyReport:
    degrees: list
    dims: list
    method: str

    def as_pairs(self):
        return list(zip(self.degrees, self.dims))


@dataclass
class RelationViolation:
    relation: str
    degree: int
    basis_index: int

    def __str__(self):
        return (f"{self.relation} fails in degree {self.degree} "
                f"at basis vector {self.basis_index}")


class AlgebraCyclicModule(ParacyclicModule, CyclicModuleMixin):
    """The cyclic module of a unital algebra: degree n is the (n+1)-fold
    tensor power, faces multiply adjacent tensor slots (the last face
    wraps), degeneracies insert the unit, the rotation cycles slots."""

    def __init__(self, algebra, cap=None):
        self.algebra = algebra
        self.field = algebra.field
        self._spaces = {}
        self.cap = cap

    def space(self, n):
        if n not in self._spaces:
            if self.cap is None:
                check_dimension_cap(self.algebra.dim ** (n + 1))
            else:
                check_dimension_cap(self.algebra.dim ** (n + 1), self.cap)
            self._spaces[n] = TensorSpace([self.algebra.dim] * (n + 1))
        return self._spaces[n]

    def dim(self, n):
        return self.space(n).size

    def face(self, n, i, k):
        if n < 1:
            raise ValueError("no faces in degree 0")
        src, dst = self.space(n), self.space(n - 1)
        tup = src.decode(k)
        if i < n:
            prod = self.algebra.multiply_basis(tup[i], tup[i + 1])
            rest = tup[:i] + (None,) + tup[i + 2:]
            out = {}
            for t, c in prod.items():
                slot = rest[:i] + (t,) + rest[i + 1:]
                out[dst.encode(slot)] = c
            return out
        prod = self.algebra.multiply_basis(tup[n], tup[0])
        out = {}
        for t, c in prod.items():
            out[dst.encode((t,) + tup[1:n])] = c
        return out

    def degeneracy(self, n, i, k):
        src, dst = self.space(n), self.space(n + 1)
        tup = src.decode(k)
        out = {}
        for u, c in self.algebra.unit.items():
            slot = tup[:i + 1] + (u,) + tup[i + 1:]
            out[dst.encode(slot)] = c
        return out

    def rotate(self, n, k):
        src = self.space(n)
        tup = src.decode(k)
        return {src.encode((tup[n],) + tup[:n]): self.field.one}


def algebra_cyclic_module(algebra, cap=None):
    return AlgebraCyclicModule(algebra, cap=cap)


class MatrixParacyclicModule(ParacyclicModule):
    """A paracyclic module with explicitly stored operator matrices,
    defined through a maximal degree."""

    def __init__(self, field, dims, faces, degeneracies, rotations):
        self.field = field
        self.dims = dims                    # list indexed by degree
        self.faces = faces                  # {(n, i): matrix}
        self.degeneracies = degeneracies    # {(n, i): matrix}
        self.rotations = rotations          # {n: matrix}
        self.max_degree = len(dims) - 1

    def dim(self, n):
        return self.dims[n]

    def face(self, n, i, k):
        return self.faces[(n, i)].apply({k: self.field.one})

    def degeneracy(self, n, i, k):
        return self.degeneracies[(n, i)].apply({k: self.field.one})

    def rotate(self, n, k):
        return self.rotations[n].apply({k: self.field.one})

    def face_matrix(self, n, i):
        return self.faces[(n, i)]

    def degeneracy_matrix(self, n, i):
        return self.degeneracies[(n, i)]

    def rotate_matrix(self, n):
        return self.rotations[n]

    def face_available(self, n):
        return (n, 0) in self.faces or (n >= 1 and self.dim_known(n)
                                        and self.dims[n] == 0)

    def degeneracy_available(self, n):
        return (n, 0) in self.degeneracies or (self.dim_known(n)
                                               and self.dims[n] == 0)

    def rotate_available(self, n):
        return n in self.rotations

    def dim_known(self, n):
        return 0 <= n <= self.max_degree


def check_paracyclic(module, max_degree):
    """Verify every simplicial and paracyclic relation on every basis
    vector through max_degree; None, or the first violation found.

    Relations whose composites land in degree max_degree + 1 are checked
    whenever the module has operators there (provider-backed modules
    always do; matrix-backed ones answer through their stored range).
    """
    for n in range(max_degree + 1):
        can_deg_n = module.degeneracy_available(n)
        can_deg_up = module.degeneracy_available(n + 1)
        can_face_up = module.face_available(n + 1)
        can_rot_up = module.rotate_available(n + 1)
        for k in range(module.dim(n)):
            e = {k: module.field.one}
            # faces against faces (composites land two degrees down)
            if n >= 2:
                for j in range(1, n + 1):
                    fj = module.face(n, j, k)
                    for i in range(j):
                        lhs = module.face_vec(n - 1, i, fj)
                        rhs = module.face_vec(
                            n - 1, j - 1, module.face(n, i, k))
                        if lhs != rhs:
                            return RelationViolation(
                                f"face_{i} face_{j} = face_{j-1} face_{i}",
                                n, k)
            # degeneracies against degeneracies
            if can_deg_n and can_deg_up:
                for j in range(n + 1):
                    sj = module.degeneracy(n, j, k)
                    for i in range(j + 1):
                        lhs = module.degeneracy_vec(n + 1, i, sj)
                        rhs = module.degeneracy_vec(
                            n + 1, j + 1, module.degeneracy(n, i, k))
                        if lhs != rhs:
                            return RelationViolation(
                                f"deg_{i} deg_{j} = deg_{j+1} deg_{i}", n, k)
            # faces against degeneracies
            if can_deg_n and can_face_up:
                for j in range(n + 1):
                    sj = module.degeneracy(n, j, k)
                    for i in range(n + 2):
                        img = module.face_vec(n + 1, i, sj)
                        if i == j or i == j + 1:
                            want = e
                        elif i < j:
                            want = module.degeneracy_vec(
                                n - 1, j - 1, module.face(n, i, k))
                        else:
                            want = module.degeneracy_vec(
                                n - 1, j, module.face(n, i - 1, k))
                        if img != want:
                            return RelationViolation(
                                f"face_{i} deg_{j} mismatch", n, k)
            # paracyclic relations
            t = module.rotate(n, k)
            if n >= 1:
                if module.face_vec(n, 0, t) != module.face(n, n, k):
                    return RelationViolation("face_0 rotate = face_n", n, k)
                for i in range(1, n + 1):
                    lhs = module.face_vec(n, i, t)
                    rhs = module.rotate_vec(n - 1, module.face(n, i - 1, k))
                    if lhs != rhs:
                        return RelationViolation(
                            f"face_{i} rotate = rotate face_{i-1}", n, k)
            if can_deg_n and can_rot_up:
                for i in range(1, n + 1):
                    lhs = module.degeneracy_vec(n, i, t)
                    rhs = module.rotate_vec(
                        n + 1, module.degeneracy(n, i - 1, k))
                    if lhs != rhs:
                        return RelationViolation(
                            f"deg_{i} rotate = rotate deg_{i-1}", n, k)
                lhs = module.degeneracy_vec(n, 0, t)
                rhs = module.rotate_vec(
                    n + 1,
                    module.rotate_vec(n + 1, module.degeneracy(n, n, k)))
                if lhs != rhs:
                    return RelationViolation(
                        "deg_0 rotate = rotate^2 deg_n", n, k)
    return None


def check_cyclic(module, max_degree):
    """check_paracyclic plus rotate^(n+1) = id in every degree."""
    bad = check_paracyclic(module, max_degree)
    if bad is not None:
        return bad
    for n in range(max_degree + 1):
        for k in range(module.dim(n)):
            v = {k: module.field.one}
            for _ in range(n + 1):
                v = module.rotate_vec(n, v)
            if v != {k: module.field.one}:
                return RelationViolation("rotate^(n+1) = id", n, k)
    return None


class NormalizationError(RuntimeError):
    pass


def _require_welldefined(res, what):
    from .exactlinalg import NotWellDefined
    if isinstance(res, NotWellDefined):
        raise NormalizationError(
            f"induced operator not well defined: {what}; "
            f"offending vector {res.basis_vector}")
    return res


class NormalizedComplex:
    """Degreewise quotient by the span of all degeneracy images.

    Individual faces and the rotation do not descend to this quotient
    (face_i o deg_i is the identity), so the quotient carries exactly the
    operators that do: the boundary b and the Connes operator s N, both
    machine-verified to be well defined via induced_map."""

    def __init__(self, base, max_degree):
        field = base.field
        self.base = base
        self.field = field
        self.max_degree = max_degree
        quotients = []
        for n in range(max_degree + 1):
            if n == 0:
                quotients.append(full_quotient(field, base.dim(0)))
                continue
            vectors = []
            for i in range(n):
                vectors.extend(base.degeneracy_matrix(n - 1, i).columns())
            denom = Subspace.from_vectors(field, base.dim(n), vectors)
            quotients.append(quotient_space(base.dim(n), denom))
        self.quotients = quotients
        self.dims = [q.dim for q in quotients]
        self._boundaries = {}
        self._connes = {}

    def dim(self, n):
        return self.dims[n]

    def project(self, n, vec):
        return self.quotients[n].project(vec)

    def lift(self, n, coords):
        return self.quotients[n].lift(coords)

    def boundary_matrix(self, n):
        if n not in self._boundaries:
            if n == 0:
                self._boundaries[n] = SparseMatrix.zero(
                    self.field, 0, self.dim(0))
            else:
                res = induced_map(self.base.boundary_matrix(n),
                                  self.quotients[n], self.quotients[n - 1])
                _require_welldefined(res, f"boundary in degree {n}")
                self._boundaries[n] = res
        return self._boundaries[n]

    def connes_matrix(self, n):
        """s N induced on the quotients (consults base degree n+1)."""
        if n not in self._connes:
            raw = self.base.extra_degeneracy_matrix(n).compose(
                self.base.norm_matrix(n))
            res = induced_map(raw, self.quotients[n], self.quotients[n + 1])
            _require_welldefined(res, f"Connes boundary in degree {n}")
            self._connes[n] = res
        return self._connes[n]


def normalize(module, max_degree):
    """The normalized complex of a (para)cyclic module."""
    return NormalizedComplex(module, max_degree)


def connes_boundary(module, n, normalized=True):
    """The degree-raising Connes operator in degree n.

    Both variants are exposed: the unnormalized (1 - lambda) s N on the
    module itself, and the induced s N on the normalization (the variant
    homology computations use)."""
    if not normalized:
        return module.connes_matrix(n)
    norm = module if isinstance(module, NormalizedComplex) else \
        NormalizedComplex(module, n + 1)
    return norm.connes_matrix(n)


def hochschild_homology(module, max_degree):
    """Dimensions of ker b / im b on the normalized complex."""
    norm = module if isinstance(module, NormalizedComplex) else \
        NormalizedComplex(module, max_degree + 1)
    dims = []
    for n in range(max_degree + 1):
        bn = norm.boundary_matrix(n)
        bn1 = norm.boundary_matrix(n + 1)
        kdim = norm.dim(n) - mat_rank(bn)
        dims.append(kdim - mat_rank(bn1))
    return HomologyReport(list(range(max_degree + 1)), dims, "hochschild")


@dataclass
class MixedComplex:
    """A graded space with anticommuting differentials b (degree -1) and
    B (degree +1), stored as matrices through a top degree."""

    field: object
    dims: list
    b_mats: dict    # {n: matrix C_n -> C_{n-1}}, n >= 1
    B_mats: dict    # {n: matrix C_n -> C_{n+1}}

    @property
    def max_degree(self):
        return len(self.dims) - 1

    def verify(self, max_degree):
        """b^2 = 0, B^2 = 0, bB + Bb = 0 wherever composable; None or a
        violation description."""
        for n in range(2, min(max_degree + 2, self.max_degree + 1)):
            if not self.b_mats[n - 1].compose(self.b_mats[n]).is_zero():
                return f"b b != 0 out of degree {n}"
        for n in range(0, max_degree):
            if (n + 1) in self.B_mats:
                if not self.B_mats[n + 1].compose(self.B_mats[n]).is_zero():
                    return f"B B != 0 out of degree {n}"
        for n in range(0, max_degree + 1):
            if n in self.B_mats and (n + 1) in self.b_mats:
                acc = self.b_mats[n + 1].compose(self.B_mats[n])
                if n >= 1 and (n - 1) in self.B_mats:
                    acc = acc.add(self.B_mats[n - 1].compose(self.b_mats[n]))
                if not acc.is_zero():
                    return f"bB + Bb != 0 in degree {n}"
        return None


class MixedComplexError(RuntimeError):
    pass


def mixed_complex_of_cyclic(module, max_degree):
    """The normalized mixed complex of a cyclic module, with the contract
    identities verified through max_degree."""
    norm = module if isinstance(module, NormalizedComplex) else \
        NormalizedComplex(module, max_degree + 1)
    dims = [norm.dim(n) for n in range(max_degree + 2)]
    b_mats = {n: norm.boundary_matrix(n) for n in range(1, max_degree + 2)}
    B_mats = {n: norm.connes_matrix(n) for n in range(0, max_degree + 1)}
    mx = MixedComplex(norm.field, dims, b_mats, B_mats)
    bad = mx.verify(max_degree)
    if bad is not None:
        raise MixedComplexError(bad)
    return mx


def cyclic_homology_mixed(mx, max_degree):
    """HC_n as homology of the total complex of the (b, B)-bicomplex.

    The truncation keeps all chain degrees <= max_degree + 1, which is
    exactly what HC_n for n <= max_degree reads.
    """
    if mx.max_degree < max_degree + 1:
        raise MixedComplexError(
            f"mixed complex only reaches degree {mx.max_degree}, need "
            f"{max_degree + 1}")

    def tot_components(n):
        return [n - 2 * j for j in range(n // 2 + 1) if n - 2 * j >= 0]

    def tot_dim(n):
        return sum(mx.dims[m] for m in tot_components(n))

    def differential(n):
        """Tot_n -> Tot_{n-1}."""
        src = tot_components(n)
        dst = tot_components(n - 1)
        dst_offset = {}
        off = 0
        for m in dst:
            dst_offset[m] = off
            off += mx.dims[m]
        rows = off
        out = SparseMatrix.zero(mx.field, rows, tot_dim(n))
        col_off = 0
        for m in src:
            if m >= 1 and (m - 1) in dst_offset:
                bm = mx.b_mats[m]
                ro = dst_offset[m - 1]
                for (i, j), c in bm.entries.items():
                    out.entries[(ro + i, col_off + j)] = c
            if (m + 1) in dst_offset and m in mx.B_mats:
                Bm = mx.B_mats[m]
                ro = dst_offset[m + 1]
                for (i, j), c in Bm.entries.items():
                    key = (ro + i, col_off + j)
                    s = out.entries.get(key, mx.field.zero) + c
                    if s:
                        out.entries[key] = s
                    elif key in out.entries:
                        del out.entries[key]
            col_off += mx.dims[m]
        return out

    dims = []
    for n in range(max_degree + 1):
        dn = differential(n) if n >= 1 else SparseMatrix.zero(
            mx.field, 0, tot_dim(0))
        dn1 = differential(n + 1)
        kdim = tot_dim(n) - mat_rank(dn)
        dims.append(kdim - mat_rank(dn1))
    return HomologyReport(list(range(max_degree + 1)), dims,
                          "cyclic-bicomplex")


def cyclic_homology_of_algebra(algebra, max_degree, cap=None):
    """HC of an algebra through max_degree, via its cyclic module."""
    module = AlgebraCyclicModule(algebra, cap=cap)
    mx = mixed_complex_of_cyclic(module, max_degree + 1)
    return cyclic_homology_mixed(mx, max_degree)


def hochschild_homology_of_algebra(algebra, max_degree, cap=None):
    module = AlgebraCyclicModule(algebra, cap=cap)
    return hochschild_homology(module, max_degree)
