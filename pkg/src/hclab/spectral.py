"""Pages of the cyclic-homology spectral sequence of a crossed product.

The first page is the homology of the cylinder rows, computed twice and
compared: once as row homology of the horizontally normalized cylinder,
once as Hopf-algebra homology with the twisted row coefficients.  Row
homology in a fixed column degree carries induced vertical operators
whose well-definedness is machine-verified; the rotation becomes honestly
cyclic on homology, so each column of the first page is a cyclic module
and the second page is its cyclic homology.  For a semisimple Hopf
algebra the first page is concentrated in its zeroth column, which is
also realized as the invariant subcomplex of the row coefficients, and
the collapse comparison checks the resulting cyclic homology against the
crossed product's own.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field

from .crossed import build_crossed_product
from .cycliccore import (
    MatrixParacyclicModule,
    check_cyclic,
    cyclic_homology_mixed,
    cyclic_homology_of_algebra,
    mixed_complex_of_cyclic,
)
from .cylinder.coefficients import (
    BimoduleMq,
    hopf_homology,
    twisted_left_module,
)
from .cylinder.core import BinormalizedCylinder, _components
from .exactlinalg import (
    NotWellDefined,
    SparseMatrix,
    Subspace,
    full_quotient,
    induced_map,
    kernel_basis,
    quotient_space,
    vec_add_into,
)
from .hopf import find_normalized_integral, is_semisimple


class SpectralError(RuntimeError):
    pass


@dataclass
class SpectralPage:
    page: int
    entries: dict                      # (p, q) -> dimension
    differentials: dict = dataclass_field(default_factory=dict)

    def entry(self, p, q):
        return self.entries[(p, q)]


@dataclass
class FiltrationReport:
    checked_degrees: int
    preserving: list                   # operator names mapping F^i into F^i
    shifting: list                     # operator names mapping F^i into F^(i+1)

    @property
    def ok(self):
        return True


def filtration_check(cyl, max_degree):
    """Componentwise bidegree bookkeeping of the four total-complex
    operator families on the binormalized cylinder.

    The filtration index is the coefficient degree q.  Both parts of the
    chain differential preserve it (the vertical part lowers it, the
    horizontal part fixes it), and the horizontal part of the
    degree-raising differential fixes it too; the vertical Connes
    operator raises it by exactly one, the shift the cyclic bicomplex
    absorbs through its column grading.  Any other behaviour aborts.
    """
    bn = BinormalizedCylinder(cyl, max_degree + 2)
    field = cyl.field
    for n in range(max_degree + 1):
        for (p, q) in _components(n):
            checks = []
            if q >= 1:
                checks.append(("vertical boundary",
                               bn.vertical_boundary(p, q), p, q - 1))
            if p >= 1:
                checks.append(("horizontal boundary",
                               bn.horizontal_boundary(p, q), p - 1, q))
            checks.append(("vertical Connes",
                           bn.vertical_connes(p, q), p, q + 1))
            checks.append(("twisted horizontal Connes",
                           bn.twist(p + 1, q).compose(
                               bn.horizontal_connes(p, q)), p + 1, q))
            for name, mat, tp, tq in checks:
                if mat.rows != bn.dim(tp, tq):
                    raise SpectralError(
                        f"{name} at ({p},{q}) does not land in ({tp},{tq})")
                for k in range(bn.dim(p, q)):
                    mat.apply({k: field.one})  # must not raise
    return FiltrationReport(
        checked_degrees=max_degree,
        preserving=["vertical boundary", "horizontal boundary",
                    "twisted horizontal Connes"],
        shifting=["vertical Connes"])


class RowComplexes:
    """Horizontally normalized rows with the vertical operators induced
    across the normalization (they commute with horizontal degeneracies),
    plus kernel/image data for row homology."""

    def __init__(self, cyl, max_p, max_q):
        self.cyl = cyl
        self.field = cyl.field
        self.max_p = max_p
        self.max_q = max_q
        self.quotients = {}
        self._induced = {}
        self._homology = {}
        for q in range(max_q + 1):
            for p in range(max_p + 2):
                self.quotients[(p, q)] = self._build_quotient(p, q)

    def _build_quotient(self, p, q):
        cyl = self.cyl
        if p == 0:
            return full_quotient(self.field, cyl.dim(0, q))
        vectors = []
        for i in range(p):
            for k in range(cyl.dim(p - 1, q)):
                vectors.append(cyl.hdeg(p - 1, q, i, k))
        denom = Subspace.from_vectors(self.field, cyl.dim(p, q), vectors)
        return quotient_space(cyl.dim(p, q), denom)

    def _matrix(self, fn, p, q, tp, tq):
        cols = [fn(k) for k in range(self.cyl.dim(p, q))]
        return SparseMatrix.from_columns(self.field, self.cyl.dim(tp, tq),
                                         cols)

    def induced(self, name, p, q):
        """An operator induced on the horizontally normalized spaces."""
        key = (name, p, q)
        if key in self._induced:
            return self._induced[key]
        cyl = self.cyl
        if name == "row_boundary":
            raw = self._matrix(lambda k: cyl.hface(p, q, 0, k), p, q, p - 1, q)
            for i in range(1, p + 1):
                raw = raw.add(self._matrix(
                    lambda k, i=i: cyl.hface(p, q, i, k), p, q, p - 1, q),
                    self.field.sign(i))
            res = induced_map(raw, self.quotients[(p, q)],
                              self.quotients[(p - 1, q)])
        elif name.startswith("vface_"):
            i = int(name.split("_")[1])
            raw = self._matrix(lambda k: cyl.vface(p, q, i, k), p, q, p, q - 1)
            res = induced_map(raw, self.quotients[(p, q)],
                              self.quotients[(p, q - 1)])
        elif name.startswith("vdeg_"):
            i = int(name.split("_")[1])
            raw = self._matrix(lambda k: cyl.vdeg(p, q, i, k), p, q, p, q + 1)
            res = induced_map(raw, self.quotients[(p, q)],
                              self.quotients[(p, q + 1)])
        elif name == "vrot":
            raw = self._matrix(lambda k: cyl.vrot(p, q, k), p, q, p, q)
            res = induced_map(raw, self.quotients[(p, q)],
                              self.quotients[(p, q)])
        else:
            raise ValueError(name)
        if isinstance(res, NotWellDefined):
            raise SpectralError(
                f"{name} does not descend to the normalized rows at "
                f"({p},{q})")
        self._induced[key] = res
        return res

    def homology(self, p, q):
        """(kernel subspace, quotient space of homology classes) of the
        row differential at (p, q)."""
        key = (p, q)
        if key in self._homology:
            return self._homology[key]
        if p == 0:
            ker = Subspace.from_vectors(
                self.field, self.quotients[(0, q)].dim,
                [{j: self.field.one}
                 for j in range(self.quotients[(0, q)].dim)])
        else:
            ker = kernel_basis(self.induced("row_boundary", p, q))
        img_cols = self.induced("row_boundary", p + 1, q).columns()
        img_in_ker = []
        for col in img_cols:
            if col:
                img_in_ker.append(ker.coords_of(col))
        denom = Subspace.from_vectors(self.field, ker.dim, img_in_ker)
        quot = quotient_space(ker.dim, denom)
        self._homology[key] = (ker, quot)
        return self._homology[key]

    def homology_dim(self, p, q):
        return self.homology(p, q)[1].dim

    def induced_on_homology(self, name, p, q, tq):
        """A vertical operator transported to row homology; every step is
        verified (kernel preservation, then quotient well-definedness)."""
        ker_src, quot_src = self.homology(p, q)
        ker_dst, quot_dst = self.homology(p, tq)
        mat = self.induced(name, p, q)
        cols = []
        for row in ker_src.basis.row_dicts():
            img = mat.apply(row)
            try:
                cols.append(ker_dst.coords_of(img))
            except Exception:
                raise SpectralError(
                    f"{name} does not preserve row cycles at ({p},{q})")
        on_kernels = SparseMatrix.from_columns(self.field, ker_dst.dim, cols)
        res = induced_map(on_kernels, quot_src, quot_dst)
        if isinstance(res, NotWellDefined):
            raise SpectralError(
                f"{name} is not well defined on row homology at ({p},{q})")
        return res


def compute_E1(cyl, max_p, max_q):
    """The first page, computed two independent ways that must agree:
    row homology of the normalized cylinder, and Hopf-algebra homology
    with the twisted row coefficients."""
    rows = RowComplexes(cyl, max_p, max_q)
    entries = {}
    for q in range(max_q + 1):
        bim = BimoduleMq(cyl, q)
        mod = twisted_left_module(bim)
        via_hopf = hopf_homology(cyl.hopf, mod.act, bim.dim, max_p)
        for p in range(max_p + 1):
            d_row = rows.homology_dim(p, q)
            d_hopf = via_hopf.dims[p]
            if d_row != d_hopf:
                raise SpectralError(
                    f"first-page mismatch at ({p},{q}): row homology "
                    f"{d_row}, Hopf homology {d_hopf}")
            entries[(p, q)] = d_row
    return SpectralPage(page=1, entries=entries), rows


def induced_column_cyclic(cyl, p, max_q, rows=None):
    """The p-th column of the first page as a genuine cyclic module on
    row-homology classes; cyclicity of the induced rotation is verified.
    """
    rows = rows or RowComplexes(cyl, p + 1, max_q)
    field = cyl.field
    dims = [rows.homology_dim(p, q) for q in range(max_q + 1)]
    faces, degens, rots = {}, {}, {}
    for q in range(max_q + 1):
        rots[q] = rows.induced_on_homology("vrot", p, q, q)
        if q >= 1:
            for i in range(q + 1):
                faces[(q, i)] = rows.induced_on_homology(
                    f"vface_{i}", p, q, q - 1)
        if q < max_q:
            for i in range(q + 1):
                degens[(q, i)] = rows.induced_on_homology(
                    f"vdeg_{i}", p, q, q + 1)
    module = MatrixParacyclicModule(field, dims, faces, degens, rots)
    bad = check_cyclic(module, max_q - 1 if max_q >= 1 else 0)
    if bad is not None:
        raise SpectralError(f"induced column {p} is not cyclic: {bad}")
    return module


def compute_E2(cyl, max_p, max_q):
    """The second page: cyclic homology of the induced column modules."""
    depth = max_q + 2
    rows = RowComplexes(cyl, max_p + 1, depth)
    e1, _ = compute_E1(cyl, max_p, max_q)
    entries = {}
    for p in range(max_p + 1):
        column = induced_column_cyclic(cyl, p, depth, rows=rows)
        mx = mixed_complex_of_cyclic(column, max_q + 1)
        hc = cyclic_homology_mixed(mx, max_q)
        for q in range(max_q + 1):
            dim = hc.dims[q]
            if dim > e1.entry(p, q):
                raise SpectralError(
                    f"second page exceeds the first at ({p},{q})")
            entries[(p, q)] = dim
    return SpectralPage(page=2, entries=entries)


@dataclass
class InvariantComplex:
    dims: list
    subspaces: list                    # invariant subspace per degree
    module: MatrixParacyclicModule    # restricted vertical cyclic structure


def invariant_complex_N0(cyl, max_q):
    """Invariants of the row coefficients under the twisted action, with
    the restricted vertical cyclic structure.

    Only available for semisimple Hopf algebras, where invariants and
    coinvariants agree through the averaging projection (verified); for
    anything else the degree-zero column is the coinvariant space and the
    second page should be used instead.
    """
    hopf = cyl.hopf
    field = cyl.field
    if not is_semisimple(hopf):
        raise SpectralError(
            "invariants only describe the zeroth column for a semisimple "
            "Hopf algebra; compute the second page on coinvariants instead")
    integral = find_normalized_integral(hopf)
    if integral is None:
        raise SpectralError("no normalized integral; not semisimple")

    subspaces = []
    actions = []
    for q in range(max_q + 1):
        bim = BimoduleMq(cyl, q)
        mod = twisted_left_module(bim)
        actions.append(mod)
        rows = []
        for h in range(hopf.dim):
            eps = hopf.counit[h]
            for target in range(bim.dim):
                row = {}
                for m in range(bim.dim):
                    c = mod.act(h, m).get(target, field.zero)
                    if m == target:
                        c = c - eps
                    if c:
                        row[m] = c
                rows.append(row)
        stacked = SparseMatrix.from_row_list(field, rows, bim.dim)
        subspaces.append(kernel_basis(stacked))

    # averaging projection onto invariants must hit every invariant and
    # identify them with the coinvariants
    for q in range(max_q + 1):
        mod = actions[q]
        sub = subspaces[q]
        for row in sub.basis.row_dicts():
            averaged = mod.act_vec(integral, row)
            if averaged != row:
                raise SpectralError(
                    f"averaging does not fix an invariant in degree {q}")

    faces, degens, rots = {}, {}, {}
    for q in range(max_q + 1):
        rots[q] = _restrict(cyl, subspaces, q, q,
                            lambda k: cyl.vrot(0, q, k), "rotation")
        if q >= 1:
            for i in range(q + 1):
                faces[(q, i)] = _restrict(
                    cyl, subspaces, q, q - 1,
                    lambda k, i=i: cyl.vface(0, q, i, k), f"face {i}")
        if q < max_q:
            for i in range(q + 1):
                degens[(q, i)] = _restrict(
                    cyl, subspaces, q, q + 1,
                    lambda k, i=i: cyl.vdeg(0, q, i, k), f"degeneracy {i}")
    dims = [s.dim for s in subspaces]
    module = MatrixParacyclicModule(field, dims, faces, degens, rots)
    bad = check_cyclic(module, max_q - 1 if max_q >= 1 else 0)
    if bad is not None:
        raise SpectralError(f"invariant complex is not cyclic: {bad}")
    return InvariantComplex(dims=dims, subspaces=subspaces, module=module)


def _restrict(cyl, subspaces, q, tq, op, what):
    """Matrix of a vertical operator restricted to invariants; membership
    of every image is verified."""
    src, dst = subspaces[q], subspaces[tq]
    field = cyl.field
    cols = []
    for row in src.basis.row_dicts():
        img = {}
        for k, c in row.items():
            vec_add_into(img, op(k), c)
        try:
            cols.append(dst.coords_of(img))
        except Exception:
            raise SpectralError(
                f"vertical {what} does not preserve invariants in degree {q}")
    return SparseMatrix.from_columns(field, dst.dim, cols)


@dataclass
class CollapseReport:
    direct: list
    via_invariants: list

    @property
    def passed(self):
        return self.direct == self.via_invariants


def collapse_check(cyl, max_degree):
    """Cyclic homology of the crossed product computed directly, against
    cyclic homology of the invariant complex; semisimple only."""
    cp = build_crossed_product(cyl.action, cyl.cocycle, check=False)
    direct = cyclic_homology_of_algebra(cp.product, max_degree)
    inv = invariant_complex_N0(cyl, max_degree + 2)
    mx = mixed_complex_of_cyclic(inv.module, max_degree + 1)
    via = cyclic_homology_mixed(mx, max_degree)
    return CollapseReport(direct=direct.dims, via_invariants=via.dims)


def coinvariant_dims(cyl, max_q):
    """Dimensions of the zeroth Hopf homology of each row coefficient
    module (the degree-zero column entries, for any Hopf algebra)."""
    dims = []
    for q in range(max_q + 1):
        bim = BimoduleMq(cyl, q)
        mod = twisted_left_module(bim)
        rep = hopf_homology(cyl.hopf, mod.act, bim.dim, 0)
        dims.append(rep.dims[0])
    return dims
