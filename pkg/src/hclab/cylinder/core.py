"""The cylindrical module of a crossed product, and its total complex.

Chain space at bidegree (p, q): the (p+1)-fold tensor power of the Hopf
algebra against the (q+1)-fold tensor power of the coefficient algebra,
indexed as tuples (g_0..g_p, a_0..a_q).  The vertical family
(faces/degeneracies/rotation in q) multiplies coefficient slots; its
rotation conjugates the incoming slot by the antipode of the product of
first legs.  The horizontal family (in p) merges Hopf slots at the price
of a cocycle scalar; its rotation pushes the last Hopf slot around while
acting on every coefficient slot.  Both wrap-around faces are defined as
face_0 composed with the rotation, which the paracyclic relations force;
the closed forms are exposed separately so the two can be compared.

The cylindricity contract, verified exhaustively: rows and columns are
paracyclic, the families commute slotwise, and the vertical rotation to
the (q+1)-st power composed with the horizontal rotation to the
(p+1)-st power is the identity.
"""

from __future__ import annotations

import itertools

from ..crossed import validate_cocycle, validate_weak_action
from ..cycliccore import (
    CyclicModuleMixin,
    MixedComplex,
    MixedComplexError,
    ParacyclicModule,
    TensorSpace,
    check_paracyclic,
)
from ..exactlinalg import (
    SparseMatrix,
    Subspace,
    check_dimension_cap,
    full_quotient,
    induced_map,
    quotient_space,
    vec_add_into,
)
from ..hopf import is_cocommutative


class CylinderError(RuntimeError):
    pass


class HopfCrossedCylinder:
    """Bigraded chain spaces with the two commuting operator families."""

    def __init__(self, hopf, action, cocycle, cap=None):
        self.hopf = hopf
        self.action = action
        self.algebra = action.algebra
        self.cocycle = cocycle
        self.field = hopf.field
        self.cap = cap
        self._spaces = {}

    # -- spaces --------------------------------------------------------------

    def space(self, p, q):
        key = (p, q)
        if key not in self._spaces:
            dim = self.hopf.dim ** (p + 1) * self.algebra.dim ** (q + 1)
            if self.cap is None:
                check_dimension_cap(dim)
            else:
                check_dimension_cap(dim, self.cap)
            self._spaces[key] = TensorSpace(
                [self.hopf.dim] * (p + 1) + [self.algebra.dim] * (q + 1))
        return self._spaces[key]

    def dim(self, p, q):
        return self.space(p, q).size

    def split(self, p, q, k):
        tup = self.space(p, q).decode(k)
        return tup[:p + 1], tup[p + 1:]

    # -- small helpers -------------------------------------------------------

    def _legs(self, indices, count):
        """Iterate (coefficient, list of leg tuples) over the product of
        the factors' iterated coproducts."""
        lists = [self.hopf.sweedler(i, count) for i in indices]
        for combo in itertools.product(*lists):
            coef = self.field.one
            tups = []
            for c, t in combo:
                coef = coef * c
                tups.append(t)
            yield coef, tups

    def _emit(self, out, space, coef, gs, avecs_or_tuple):
        """Accumulate coef * (gs | a-part) where the a-part may be a plain
        tuple or a list of sparse vectors to be expanded multilinearly."""
        if isinstance(avecs_or_tuple, tuple):
            key = space.encode(gs + avecs_or_tuple)
            s = out.get(key)
            s = coef if s is None else s + coef
            if s:
                out[key] = s
            elif key in out:
                del out[key]
            return
        partial = [(coef, ())]
        for piece in avecs_or_tuple:
            if isinstance(piece, int):
                partial = [(c, t + (piece,)) for c, t in partial]
                continue
            nxt = []
            for c, t in partial:
                for b, cb in piece.items():
                    nxt.append((c * cb, t + (b,)))
            partial = nxt
        for c, t in partial:
            key = space.encode(gs + t)
            s = out.get(key)
            s = c if s is None else s + c
            if s:
                out[key] = s
            elif key in out:
                del out[key]

    def _apply(self, fn, vec):
        out = {}
        for k, c in vec.items():
            vec_add_into(out, fn(k), c)
        return out

    # -- vertical family (coefficient direction, degree q) --------------------

    def vface(self, p, q, i, k):
        if q < 1:
            raise ValueError("no vertical faces in column degree 0")
        if i == q:
            # the wrap-around face is face_0 composed with the rotation
            return self._apply(lambda kk: self.vface(p, q, 0, kk),
                               self.vrot(p, q, k))
        gs, avs = self.split(p, q, k)
        tgt = self.space(p, q - 1)
        out = {}
        prod = self.algebra.multiply_basis(avs[i], avs[i + 1])
        for t, c in prod.items():
            self._emit(out, tgt, c, gs, avs[:i] + (t,) + avs[i + 2:])
        return out

    def vface_last_direct(self, p, q, k):
        """Closed form of the vertical wrap-around face; must agree with
        face_0 composed with the rotation."""
        gs, avs = self.split(p, q, k)
        tgt = self.space(p, q - 1)
        out = {}
        for coef, legs in self._legs(gs, 2):
            u = self.hopf.product_of_basis([t[0] for t in legs])
            su = self.hopf.antipode_of(u)
            w = self.action.apply(su, {avs[q]: self.field.one})
            wa0 = self.algebra.multiply(w, {avs[0]: self.field.one})
            g2 = tuple(t[1] for t in legs)
            self._emit(out, tgt, coef, g2, [wa0] + list(avs[1:q]))
        return out

    def vdeg(self, p, q, i, k):
        gs, avs = self.split(p, q, k)
        tgt = self.space(p, q + 1)
        out = {}
        for u, cu in self.algebra.unit.items():
            self._emit(out, tgt, cu, gs, avs[:i + 1] + (u,) + avs[i + 1:])
        return out

    def vrot(self, p, q, k):
        gs, avs = self.split(p, q, k)
        tgt = self.space(p, q)
        out = {}
        for coef, legs in self._legs(gs, 2):
            u = self.hopf.product_of_basis([t[0] for t in legs])
            su = self.hopf.antipode_of(u)
            w = self.action.apply(su, {avs[q]: self.field.one})
            g2 = tuple(t[1] for t in legs)
            self._emit(out, tgt, coef, g2, [w] + list(avs[:q]))
        return out

    # -- horizontal family (Hopf direction, degree p) -------------------------

    def hface(self, p, q, i, k):
        if p < 1:
            raise ValueError("no horizontal faces in row degree 0")
        if i == p:
            return self._apply(lambda kk: self.hface(p, q, 0, kk),
                               self.hrot(p, q, k))
        gs, avs = self.split(p, q, k)
        tgt = self.space(p - 1, q)
        out = {}
        for c1, (x1, x2) in self.hopf.sweedler(gs[i], 2):
            for c2, (y1, y2) in self.hopf.sweedler(gs[i + 1], 2):
                w = c1 * c2 * self.cocycle.values[x2][y2]
                if not w:
                    continue
                prod = self.hopf.algebra.multiply_basis(x1, y1)
                for t, ct in prod.items():
                    self._emit(out, tgt, w * ct,
                               gs[:i] + (t,) + gs[i + 2:], avs)
        return out

    def hface_last_direct(self, p, q, k):
        """Closed form of the horizontal wrap-around face; must agree with
        face_0 composed with the rotation."""
        gs, avs = self.split(p, q, k)
        tgt = self.space(p - 1, q)
        out = {}
        for c0, m in self.hopf.sweedler(gs[p], q + 3):
            for c1, (y1, y2) in self.hopf.sweedler(gs[0], 2):
                w = c0 * c1 * self.cocycle.values[m[q + 2]][y2]
                if not w:
                    continue
                head = self.hopf.algebra.multiply_basis(m[q + 1], y1)
                acted = [self.action.apply_basis(m[j], avs[j])
                         for j in range(q + 1)]
                for t, ct in head.items():
                    self._emit(out, tgt, w * ct,
                               (t,) + gs[1:p], acted)
        return out

    def hdeg(self, p, q, i, k):
        gs, avs = self.split(p, q, k)
        tgt = self.space(p + 1, q)
        out = {}
        for u, cu in self.hopf.algebra.unit.items():
            self._emit(out, tgt, cu, gs[:i + 1] + (u,) + gs[i + 1:], avs)
        return out

    def hrot(self, p, q, k):
        gs, avs = self.split(p, q, k)
        tgt = self.space(p, q)
        out = {}
        for c0, m in self.hopf.sweedler(gs[p], q + 2):
            acted = [self.action.apply_basis(m[j], avs[j])
                     for j in range(q + 1)]
            self._emit(out, tgt, c0, (m[q + 1],) + gs[:p], acted)
        return out

    # -- adapters ------------------------------------------------------------

    def row_module(self, q):
        return _RowModule(self, q)

    def column_module(self, p):
        return _ColumnModule(self, p)

    def diagonal_module(self):
        return DiagonalModule(self)


class _RowModule(ParacyclicModule):
    """The q-th row: degree p with the horizontal family."""

    def __init__(self, cyl, q):
        self.cyl = cyl
        self.q = q
        self.field = cyl.field

    def dim(self, n):
        return self.cyl.dim(n, self.q)

    def face(self, n, i, k):
        return self.cyl.hface(n, self.q, i, k)

    def degeneracy(self, n, i, k):
        return self.cyl.hdeg(n, self.q, i, k)

    def rotate(self, n, k):
        return self.cyl.hrot(n, self.q, k)


class _ColumnModule(ParacyclicModule):
    """The p-th column: degree q with the vertical family."""

    def __init__(self, cyl, p):
        self.cyl = cyl
        self.p = p
        self.field = cyl.field

    def dim(self, n):
        return self.cyl.dim(self.p, n)

    def face(self, n, i, k):
        return self.cyl.vface(self.p, n, i, k)

    def degeneracy(self, n, i, k):
        return self.cyl.vdeg(self.p, n, i, k)

    def rotate(self, n, k):
        return self.cyl.vrot(self.p, n, k)


class DiagonalModule(ParacyclicModule, CyclicModuleMixin):
    """(p, p) spaces with composed operators; genuinely cyclic."""

    def __init__(self, cyl):
        self.cyl = cyl
        self.field = cyl.field

    def dim(self, n):
        return self.cyl.dim(n, n)

    def space(self, n):
        return self.cyl.space(n, n)

    def face(self, n, i, k):
        step = self.cyl.hface(n, n, i, k)
        return self.cyl._apply(
            lambda kk: self.cyl.vface(n - 1, n, i, kk), step)

    def degeneracy(self, n, i, k):
        step = self.cyl.hdeg(n, n, i, k)
        return self.cyl._apply(
            lambda kk: self.cyl.vdeg(n + 1, n, i, kk), step)

    def rotate(self, n, k):
        return self.cyl._apply(
            lambda kk: self.cyl.vrot(n, n, kk), self.cyl.hrot(n, n, k))


def build_cylinder(hopf, action, cocycle, check=True, cap=None):
    """Construct the cylinder after verifying its standing hypotheses."""
    if check:
        bad = validate_weak_action(action)
        if bad is not None:
            raise CylinderError(f"weak action invalid: {bad}")
        bad = validate_cocycle(cocycle, action)
        if bad is not None:
            raise CylinderError(f"cocycle invalid: {bad}")
        if not is_cocommutative(hopf):
            raise CylinderError("the Hopf algebra is not cocommutative")
    return HopfCrossedCylinder(hopf, action, cocycle, cap=cap)


def check_cylindrical(cyl, max_p, max_q):
    """Row and column paracyclicity, slotwise commutation of the two
    families, and the joint rotation identity, all on every basis vector;
    None or the first failure, named."""
    for q in range(max_q + 1):
        bad = check_paracyclic(cyl.row_module(q), max_p)
        if bad is not None:
            return f"row {q}: {bad}"
    for p in range(max_p + 1):
        bad = check_paracyclic(cyl.column_module(p), max_q)
        if bad is not None:
            return f"column {p}: {bad}"
    for p in range(max_p + 1):
        for q in range(max_q + 1):
            bad = _check_commutation(cyl, p, q)
            if bad is not None:
                return bad
            for k in range(cyl.dim(p, q)):
                v = {k: cyl.field.one}
                for _ in range(p + 1):
                    v = cyl._apply(lambda kk: cyl.hrot(p, q, kk), v)
                for _ in range(q + 1):
                    v = cyl._apply(lambda kk: cyl.vrot(p, q, kk), v)
                if v != {k: cyl.field.one}:
                    return ("joint rotation identity fails at "
                            f"({p},{q}) basis {k}")
    return None


def _check_commutation(cyl, p, q):
    """All nine vertical/horizontal operator pairs commute at (p, q)."""
    verticals = []
    if q >= 1:
        verticals += [(f"vface_{i}", lambda k, i=i: cyl.vface(p, q, i, k),
                       lambda k, i=i: cyl.vface(p - 1, q, i, k),
                       lambda k, i=i: cyl.vface(p + 1, q, i, k))
                      for i in range(q + 1)]
    verticals += [(f"vdeg_{i}", lambda k, i=i: cyl.vdeg(p, q, i, k),
                   lambda k, i=i: cyl.vdeg(p - 1, q, i, k),
                   lambda k, i=i: cyl.vdeg(p + 1, q, i, k))
                  for i in range(q + 1)]
    verticals += [("vrot", lambda k: cyl.vrot(p, q, k),
                   lambda k: cyl.vrot(p - 1, q, k),
                   lambda k: cyl.vrot(p + 1, q, k))]
    horizontals = []
    if p >= 1:
        horizontals += [(f"hface_{j}", lambda k, j=j: cyl.hface(p, q, j, k),
                         "down") for j in range(p + 1)]
    horizontals += [(f"hdeg_{j}", lambda k, j=j: cyl.hdeg(p, q, j, k), "up")
                    for j in range(p + 1)]
    horizontals += [("hrot", lambda k: cyl.hrot(p, q, k), "same")]

    for vname, v_here, v_down, v_up in verticals:
        # the vertical operator acting at the horizontal target bidegree
        for hname, h_here, direction in horizontals:
            v_there = {"down": v_down, "up": v_up, "same": v_here}[direction]
            # the horizontal operator acting at the vertical target bidegree
            vq = q - 1 if vname.startswith("vface") else (
                q + 1 if vname.startswith("vdeg") else q)
            if hname.startswith("hface"):
                j = int(hname.split("_")[1])
                h_there = lambda k, j=j, vq=vq: cyl.hface(p, vq, j, k)
            elif hname.startswith("hdeg"):
                j = int(hname.split("_")[1])
                h_there = lambda k, j=j, vq=vq: cyl.hdeg(p, vq, j, k)
            else:
                h_there = lambda k, vq=vq: cyl.hrot(p, vq, k)
            for k in range(cyl.dim(p, q)):
                one = {k: cyl.field.one}
                lhs = cyl._apply(v_there, cyl._apply(h_here, one))
                rhs = cyl._apply(h_there, cyl._apply(v_here, one))
                if lhs != rhs:
                    return (f"{vname} and {hname} fail to commute at "
                            f"({p},{q}) basis {k}")
    return None


# ---------------------------------------------------------------------------
# binormalization and the total mixed complex


class BinormalizedCylinder:
    """Bidegreewise quotients by both families of degeneracy images, with
    the induced boundary and Connes operators of both directions.

    The twist T at each bidegree is computed literally as
    1 - (bB + Bb) of the vertical pair; it also equals the induced
    (q+1)-st power of the vertical rotation, which callers may check.
    """

    def __init__(self, cyl, top_total):
        self.cyl = cyl
        self.field = cyl.field
        self.top_total = top_total
        self.quotients = {}
        self._raw = {}
        self._ops = {}
        for total in range(top_total + 1):
            for p in range(total + 1):
                q = total - p
                self.quotients[(p, q)] = self._build_quotient(p, q)

    def _build_quotient(self, p, q):
        cyl = self.cyl
        dim = cyl.dim(p, q)
        vectors = []
        if q >= 1:
            for i in range(q):
                for k in range(cyl.dim(p, q - 1)):
                    vectors.append(cyl.vdeg(p, q - 1, i, k))
        if p >= 1:
            for i in range(p):
                for k in range(cyl.dim(p - 1, q)):
                    vectors.append(cyl.hdeg(p - 1, q, i, k))
        if not vectors:
            return full_quotient(self.field, dim)
        denom = Subspace.from_vectors(self.field, dim, vectors)
        return quotient_space(dim, denom)

    def in_range(self, p, q):
        return p >= 0 and q >= 0 and p + q <= self.top_total

    def dim(self, p, q):
        return self.quotients[(p, q)].dim

    def _matrix_of(self, fn, p, q, tp, tq):
        cols = [fn(k) for k in range(self.cyl.dim(p, q))]
        return SparseMatrix.from_columns(
            self.field, self.cyl.dim(tp, tq), cols)

    def _raw_matrix(self, kind, p, q):
        key = (kind, p, q)
        if key in self._raw:
            return self._raw[key]
        cyl = self.cyl
        if kind == "bv":
            m = self._matrix_of(lambda k: cyl.vface(p, q, 0, k), p, q, p, q - 1)
            for i in range(1, q + 1):
                m = m.add(self._matrix_of(
                    lambda k, i=i: cyl.vface(p, q, i, k), p, q, p, q - 1),
                    self.field.sign(i))
        elif kind == "bh":
            m = self._matrix_of(lambda k: cyl.hface(p, q, 0, k), p, q, p - 1, q)
            for i in range(1, p + 1):
                m = m.add(self._matrix_of(
                    lambda k, i=i: cyl.hface(p, q, i, k), p, q, p - 1, q),
                    self.field.sign(i))
        elif kind == "Bv":
            # extra degeneracy o norm, vertically
            rot = self._matrix_of(lambda k: cyl.vrot(p, q + 1, k),
                                  p, q + 1, p, q + 1)
            sdeg = self._matrix_of(lambda k: cyl.vdeg(p, q, q, k),
                                   p, q, p, q + 1)
            lam = self._matrix_of(lambda k: cyl.vrot(p, q, k), p, q, p, q)
            lam = lam.scale(self.field.sign(q))
            acc = SparseMatrix.identity(self.field, self.cyl.dim(p, q))
            total = acc
            for _ in range(q):
                acc = lam.compose(acc)
                total = total.add(acc)
            m = rot.compose(sdeg).compose(total)
        elif kind == "Bh":
            rot = self._matrix_of(lambda k: cyl.hrot(p + 1, q, k),
                                  p + 1, q, p + 1, q)
            sdeg = self._matrix_of(lambda k: cyl.hdeg(p, q, p, k),
                                   p, q, p + 1, q)
            lam = self._matrix_of(lambda k: cyl.hrot(p, q, k), p, q, p, q)
            lam = lam.scale(self.field.sign(p))
            acc = SparseMatrix.identity(self.field, self.cyl.dim(p, q))
            total = acc
            for _ in range(p):
                acc = lam.compose(acc)
                total = total.add(acc)
            m = rot.compose(sdeg).compose(total)
        else:
            raise ValueError(kind)
        self._raw[key] = m
        return m

    def _induced(self, kind, p, q, tp, tq):
        key = (kind, p, q)
        if key in self._ops:
            return self._ops[key]
        raw = self._raw_matrix(kind, p, q)
        res = induced_map(raw, self.quotients[(p, q)], self.quotients[(tp, tq)])
        from ..exactlinalg import NotWellDefined
        if isinstance(res, NotWellDefined):
            raise MixedComplexError(
                f"{kind} not well defined on the normalization at ({p},{q})")
        self._ops[key] = res
        return res

    def vertical_boundary(self, p, q):
        return self._induced("bv", p, q, p, q - 1)

    def horizontal_boundary(self, p, q):
        return self._induced("bh", p, q, p - 1, q)

    def vertical_connes(self, p, q):
        return self._induced("Bv", p, q, p, q + 1)

    def horizontal_connes(self, p, q):
        return self._induced("Bh", p, q, p + 1, q)

    def twist(self, p, q):
        """1 - (bB + Bb) of the vertical pair at (p, q)."""
        key = ("T", p, q)
        if key in self._ops:
            return self._ops[key]
        n = self.dim(p, q)
        acc = SparseMatrix.identity(self.field, n)
        bB = self.vertical_boundary(p, q + 1).compose(self.vertical_connes(p, q))
        acc = acc.add(bB, self.field.sign(1))
        if q >= 1:
            Bb = self.vertical_connes(p, q - 1).compose(
                self.vertical_boundary(p, q))
            acc = acc.add(Bb, self.field.sign(1))
        self._ops[key] = acc
        return acc

    def induced_vertical_twist(self, p, q):
        """The raw vertical rotation to the (q+1)-st power, induced."""
        cyl = self.cyl
        rot = self._matrix_of(lambda k: cyl.vrot(p, q, k), p, q, p, q)
        acc = SparseMatrix.identity(self.field, cyl.dim(p, q))
        for _ in range(q + 1):
            acc = rot.compose(acc)
        res = induced_map(acc, self.quotients[(p, q)], self.quotients[(p, q)])
        from ..exactlinalg import NotWellDefined
        if isinstance(res, NotWellDefined):
            raise MixedComplexError(
                f"vertical twist not well defined at ({p},{q})")
        return res


def _components(n):
    return [(p, n - p) for p in range(n + 1)]


def tot_mixed_complex(cyl, max_degree, binorm=None):
    """The total mixed complex on the binormalized cylinder.

    Degree n is the direct sum of the bidegrees with p + q = n (p
    ascending).  The chain differential adds the horizontal boundary with
    a sign depending on the vertical degree; the degree-raising
    differential adds the twist-corrected horizontal Connes operator.
    The mixed-complex identities are verified and a failure aborts.
    """
    bn = binorm or BinormalizedCylinder(cyl, max_degree + 2)
    field = cyl.field

    def offsets(n):
        offs, total = {}, 0
        for (p, q) in _components(n):
            offs[(p, q)] = total
            total += bn.dim(p, q)
        return offs, total

    dims = []
    b_mats = {}
    B_mats = {}
    for n in range(max_degree + 2):
        dims.append(offsets(n)[1])
    for n in range(1, max_degree + 2):
        src_offs, src_dim = offsets(n)
        dst_offs, dst_dim = offsets(n - 1)
        m = SparseMatrix.zero(field, dst_dim, src_dim)
        for (p, q) in _components(n):
            co = src_offs[(p, q)]
            if q >= 1:
                block = bn.vertical_boundary(p, q)
                ro = dst_offs[(p, q - 1)]
                for (i, j), c in block.entries.items():
                    m.entries[(ro + i, co + j)] = c
            if p >= 1:
                block = bn.horizontal_boundary(p, q).scale(field.sign(q))
                ro = dst_offs[(p - 1, q)]
                for (i, j), c in block.entries.items():
                    m.entries[(ro + i, co + j)] = c
        b_mats[n] = m
    for n in range(max_degree + 1):
        src_offs, src_dim = offsets(n)
        dst_offs, dst_dim = offsets(n + 1)
        m = SparseMatrix.zero(field, dst_dim, src_dim)
        for (p, q) in _components(n):
            co = src_offs[(p, q)]
            block = bn.vertical_connes(p, q)
            ro = dst_offs[(p, q + 1)]
            for (i, j), c in block.entries.items():
                m.entries[(ro + i, co + j)] = c
            block = bn.twist(p + 1, q).compose(
                bn.horizontal_connes(p, q)).scale(field.sign(q))
            ro = dst_offs[(p + 1, q)]
            for (i, j), c in block.entries.items():
                key = (ro + i, co + j)
                s = m.entries.get(key, field.zero) + c
                if s:
                    m.entries[key] = s
                elif key in m.entries:
                    del m.entries[key]
        B_mats[n] = m
    mx = MixedComplex(field, dims, b_mats, B_mats)
    bad = mx.verify(max_degree)
    if bad is not None:
        raise MixedComplexError(f"total complex identities fail: {bad}")
    return mx


# ---------------------------------------------------------------------------
# the chain isomorphism with the crossed product's cyclic module


def crossed_to_diagonal(cyl, cp, n):
    """Matrix of the degree-n map from the crossed product's cyclic module
    to the cylinder diagonal.

    Tensor slot i of the source, a pair (a_i, g_i), contributes its Hopf
    leg i+2 to the Hopf string; coefficient slot j receives a_j acted on
    by the antipode of the product of one leg from each of g_j .. g_n.
    """
    hopf, field = cyl.hopf, cyl.field
    dH, dA = hopf.dim, cyl.algebra.dim
    src_dim = (dA * dH) ** (n + 1)
    tgt = cyl.space(n, n)
    pair = TensorSpace([dA, dH] * (n + 1))
    cols = []
    for k in range(src_dim):
        flat = pair.decode(k)
        a_part = flat[0::2]
        g_part = flat[1::2]
        out = {}
        for coef, legs in _multi_legs(hopf, g_part,
                                      [i + 2 for i in range(n + 1)]):
            g_string = tuple(legs[i][i + 1] for i in range(n + 1))
            avecs = []
            for j in range(n + 1):
                u = hopf.product_of_basis(
                    [legs[m][m - j] for m in range(j, n + 1)])
                su = hopf.antipode_of(u)
                avecs.append(cyl.action.apply(su, {a_part[j]: field.one}))
            cyl._emit(out, tgt, coef, g_string, avecs)
        cols.append(out)
    return SparseMatrix.from_columns(field, tgt.size, cols)


def diagonal_to_crossed(cyl, cp, n):
    """Matrix of the inverse map, diagonal to crossed product."""
    hopf, field = cyl.hopf, cyl.field
    dH, dA = hopf.dim, cyl.algebra.dim
    src = cyl.space(n, n)
    tgt_dim = (dA * dH) ** (n + 1)
    pair = TensorSpace([dA, dH] * (n + 1))
    cols = []
    for k in range(src.size):
        gs = src.decode(k)[:n + 1]
        avs = src.decode(k)[n + 1:]
        out = {}
        for coef, legs in _multi_legs(hopf, gs,
                                      [i + 2 for i in range(n + 1)]):
            pieces = []
            for i in range(n + 1):
                w = hopf.product_of_basis(
                    [legs[m][i] for m in range(i, n + 1)])
                pieces.append(cyl.action.apply(w, {avs[i]: field.one}))
            partial = [(coef, ())]
            for i in range(n + 1):
                nxt = []
                hleg = legs[i][i + 1]
                for c, t in partial:
                    for b, cb in pieces[i].items():
                        nxt.append((c * cb, t + (b, hleg)))
                partial = nxt
            for c, t in partial:
                key = pair.encode(t)
                s = out.get(key, field.zero) + c
                if s:
                    out[key] = s
                elif key in out:
                    del out[key]
        cols.append(out)
    return SparseMatrix.from_columns(field, tgt_dim, cols)


def _multi_legs(hopf, indices, counts):
    lists = [hopf.sweedler(i, c) for i, c in zip(indices, counts)]
    field_one = hopf.field.one
    for combo in itertools.product(*lists):
        coef = field_one
        tups = []
        for c, t in combo:
            coef = coef * c
            tups.append(t)
        yield coef, tups


def check_diagonal_isomorphism(cyl, cp, max_degree):
    """Mutual inverses plus intertwining of every cyclic operator, as
    exact matrix identities; None or a description of the first failure."""
    from ..cycliccore import AlgebraCyclicModule
    natural = AlgebraCyclicModule(cp.product)
    diag = cyl.diagonal_module()
    for n in range(max_degree + 1):
        phi = crossed_to_diagonal(cyl, cp, n)
        psi = diagonal_to_crossed(cyl, cp, n)
        if not psi.compose(phi) == SparseMatrix.identity(cyl.field, phi.cols):
            return f"psi o phi is not the identity in degree {n}"
        if not phi.compose(psi) == SparseMatrix.identity(cyl.field, phi.rows):
            return f"phi o psi is not the identity in degree {n}"
        # rotation
        lhs = _matrix_of_module_op(diag, "rotate", n).compose(phi)
        rhs = phi.compose(_matrix_of_module_op(natural, "rotate", n))
        if lhs != rhs:
            return f"rotation intertwining fails in degree {n}"
        if n >= 1:
            phi_down = crossed_to_diagonal(cyl, cp, n - 1)
            for i in range(n + 1):
                lhs = _matrix_of_module_op(diag, "face", n, i).compose(phi)
                rhs = phi_down.compose(
                    _matrix_of_module_op(natural, "face", n, i))
                if lhs != rhs:
                    return f"face {i} intertwining fails in degree {n}"
        if n < max_degree:
            phi_up = crossed_to_diagonal(cyl, cp, n + 1)
            for i in range(n + 1):
                lhs = _matrix_of_module_op(diag, "degeneracy", n, i).compose(phi)
                rhs = phi_up.compose(
                    _matrix_of_module_op(natural, "degeneracy", n, i))
                if lhs != rhs:
                    return f"degeneracy {i} intertwining fails in degree {n}"
    return None


def _matrix_of_module_op(module, kind, n, i=None):
    if kind == "face":
        return module.face_matrix(n, i)
    if kind == "degeneracy":
        return module.degeneracy_matrix(n, i)
    return module.rotate_matrix(n)


# ---------------------------------------------------------------------------
# the shuffle map


def _shuffles(p, q):
    """(positions for the first family, complement, sign) over all
    (p, q)-shuffles of {0..p+q-1}."""
    n = p + q
    for mu in itertools.combinations(range(n), p):
        nu = tuple(sorted(set(range(n)) - set(mu)))
        inversions = sum(1 for a in mu for b in nu if a > b)
        yield mu, nu, inversions


def shuffle_map(cyl, bn, diag_norm, p, q):
    """Matrix of the shuffle map from the binormalized (p, q) component
    into the normalized diagonal in degree p + q.

    Vertical degeneracies are applied at the chosen p positions (raising
    q to p+q), horizontal ones at the complement; the sign is the
    shuffle's inversion parity with a Koszul correction (-1)^(pq) that
    matches the sign placed on the horizontal boundary in the total
    differential.  The raw map is verified to descend to the quotients.
    """
    n = p + q
    field = cyl.field
    src_q = bn.quotients[(p, q)]
    dst_q = diag_norm.quotients[n]
    cols = []
    for k in range(cyl.dim(p, q)):
        out = {}
        for mu, nu, inv in _shuffles(p, q):
            img = {k: field.one}
            # vertical degeneracies at mu positions, ascending; raise q to n
            cur_q = q
            for pos in mu:
                img = cyl._apply(
                    lambda kk, pos=pos, cq=cur_q: cyl.vdeg(p, cq, pos, kk),
                    img)
                cur_q += 1
            cur_p = p
            for pos in nu:
                img = cyl._apply(
                    lambda kk, pos=pos, cp=cur_p: cyl.hdeg(cp, n, pos, kk),
                    img)
                cur_p += 1
            vec_add_into(out, img, field.sign(inv + p * q))
        cols.append(out)
    raw = SparseMatrix.from_columns(field, cyl.dim(n, n), cols)
    res = induced_map(raw, src_q, dst_q)
    from ..exactlinalg import NotWellDefined
    if isinstance(res, NotWellDefined):
        raise MixedComplexError(
            f"shuffle map does not respect normalization at ({p},{q})")
    return res


def check_shuffle_chain_map(cyl, max_degree):
    """Verify that the shuffle map intertwines the total chain
    differential with the diagonal boundary through max_degree."""
    from ..cycliccore import NormalizedComplex
    bn = BinormalizedCylinder(cyl, max_degree + 2)
    diag = cyl.diagonal_module()
    diag_norm = NormalizedComplex(diag, max_degree + 2)
    field = cyl.field

    blocks = {}
    for n in range(max_degree + 2):
        for (p, q) in _components(n):
            blocks[(p, q)] = shuffle_map(cyl, bn, diag_norm, p, q)

    for n in range(1, max_degree + 1):
        for (p, q) in _components(n):
            # f0 after the total differential
            after = {}
            bdim = bn.dim(p, q)
            for col in range(bdim):
                vec = {col: field.one}
                acc = {}
                if q >= 1:
                    vec_add_into(acc, blocks[(p, q - 1)].apply(
                        bn.vertical_boundary(p, q).apply(vec)))
                if p >= 1:
                    vec_add_into(acc, blocks[(p - 1, q)].apply(
                        bn.horizontal_boundary(p, q).apply(vec)),
                        field.sign(q))
                after[col] = acc
            before = blocks[(p, q)]
            bmat = diag_norm.boundary_matrix(n)
            for col in range(bdim):
                lhs = bmat.apply(before.apply({col: field.one}))
                if lhs != after[col]:
                    return (f"shuffle map is not a chain map at ({p},{q}) "
                            f"column {col}")
    return None
