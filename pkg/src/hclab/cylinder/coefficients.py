"""Row coefficients: bimodules over the twisted scalar algebra.

The q-th row of the cylinder is, after rebracketing, the Hochschild
complex of the twisted scalar algebra k #_sigma H with coefficients in
the bimodule carried by H (x) A^(q+1); the identification is verified
facewise and exactly.  Any such bimodule converts to a left module over
the Hopf algebra by the antipode-conjugation action (with two inverse
cocycle corrections), and the Mac Lane chain isomorphism carries the
Hochschild complex onto the bar-type complex computing Hopf-algebra
homology with those twisted coefficients.
"""

from __future__ import annotations

import itertools

from ..cycliccore import HomologyReport, TensorSpace
from ..exactlinalg import SparseMatrix, mat_rank, vec_add_into


class ModuleLawError(RuntimeError):
    pass


class CoefficientBimodule:
    """Base: a two-sided module over the twisted scalar algebra, given on
    basis pairs; both actions extend bilinearly."""

    def left(self, h, m):
        raise NotImplementedError

    def right(self, m, h):
        raise NotImplementedError

    def left_vec(self, hvec, mvec):
        out = {}
        for h, ch in hvec.items():
            for m, cm in mvec.items():
                vec_add_into(out, self.left(h, m), ch * cm)
        return out

    def right_vec(self, mvec, hvec):
        out = {}
        for h, ch in hvec.items():
            for m, cm in mvec.items():
                vec_add_into(out, self.right(m, h), ch * cm)
        return out


class BimoduleMq(CoefficientBimodule):
    """H (x) A^(q+1) as a bimodule over the twisted scalar algebra.

    Acting on the left threads the Hopf element through every
    coefficient slot and multiplies into the H component against a
    cocycle factor; acting on the right only twists the H component.
    """

    def __init__(self, cyl, q):
        self.cyl = cyl
        self.q = q
        self.hopf = cyl.hopf
        self.algebra = cyl.algebra
        self.cocycle = cyl.cocycle
        self.field = cyl.field
        self.space = TensorSpace(
            [self.hopf.dim] + [self.algebra.dim] * (q + 1))
        self.dim = self.space.size
        self._left_cache = {}
        self._right_cache = {}

    def left(self, h, m):
        key = (h, m)
        if key in self._left_cache:
            return self._left_cache[key]
        q = self.q
        tup = self.space.decode(m)
        g, avs = tup[0], tup[1:]
        out = {}
        for c0, l in self.hopf.sweedler(h, q + 3):
            for c1, (g1, g2) in self.hopf.sweedler(g, 2):
                w = c0 * c1 * self.cocycle.values[l[q + 2]][g2]
                if not w:
                    continue
                head = self.hopf.algebra.multiply_basis(l[q + 1], g1)
                acted = [self.cyl.action.apply_basis(l[j], avs[j])
                         for j in range(q + 1)]
                for t, ct in head.items():
                    self.cyl._emit(out, self.space, w * ct, (t,), acted)
        self._left_cache[key] = out
        return out

    def right(self, m, h):
        key = (m, h)
        if key in self._right_cache:
            return self._right_cache[key]
        tup = self.space.decode(m)
        g, avs = tup[0], tup[1:]
        out = {}
        for c0, (g1, g2) in self.hopf.sweedler(g, 2):
            for c1, (h1, h2) in self.hopf.sweedler(h, 2):
                w = c0 * c1 * self.cocycle.values[g2][h2]
                if not w:
                    continue
                head = self.hopf.algebra.multiply_basis(g1, h1)
                for t, ct in head.items():
                    self.cyl._emit(out, self.space, w * ct, (t,) + avs, ())
        self._right_cache[key] = out
        return out

    def verify(self, twisted_algebra):
        """Bimodule laws over the twisted scalar algebra, exhaustively.
        None, or a description of the first failure."""
        field = self.field
        dH = self.hopf.dim
        unit = self.hopf.algebra.unit
        for m in range(self.dim):
            mv = {m: field.one}
            if self.left_vec(unit, mv) != mv:
                return f"left unit law fails at m={m}"
            if self.right_vec(mv, unit) != mv:
                return f"right unit law fails at m={m}"
        for h in range(dH):
            for l in range(dH):
                prod = twisted_algebra.multiply_basis(h, l)
                for m in range(self.dim):
                    mv = {m: field.one}
                    lhs = self.left_vec({h: field.one},
                                        self.left_vec({l: field.one}, mv))
                    rhs = self.left_vec(prod, mv)
                    if lhs != rhs:
                        return f"left associativity fails at ({h},{l},{m})"
                    lhs = self.right_vec(self.right_vec(mv, {h: field.one}),
                                         {l: field.one})
                    rhs = self.right_vec(mv, prod)
                    if lhs != rhs:
                        return f"right associativity fails at ({h},{l},{m})"
                    lhs = self.right_vec(self.left_vec({h: field.one}, mv),
                                         {l: field.one})
                    rhs = self.left_vec({h: field.one},
                                        self.right_vec(mv, {l: field.one}))
                    if lhs != rhs:
                        return f"actions fail to commute at ({h},{l},{m})"
        return None


class HochschildComplex:
    """C_p(R, M) = M (x) R^p with the standard faces: the zeroth face acts
    on the right, interior faces multiply in R, the last face wraps to a
    left action."""

    def __init__(self, ring, bimodule):
        self.ring = ring
        self.bimodule = bimodule
        self.field = ring.field
        self._spaces = {}

    def space(self, p):
        if p not in self._spaces:
            self._spaces[p] = TensorSpace(
                [self.bimodule.dim] + [self.ring.dim] * p)
        return self._spaces[p]

    def dim(self, p):
        return self.space(p).size

    def face(self, p, i, k):
        src, dst = self.space(p), self.space(p - 1)
        tup = src.decode(k)
        m, hs = tup[0], tup[1:]
        out = {}
        if i == 0:
            img = self.bimodule.right(m, hs[0])
            for mm, c in img.items():
                _acc(out, dst.encode((mm,) + hs[1:]), c)
        elif i < p:
            prod = self.ring.multiply_basis(hs[i - 1], hs[i])
            for t, c in prod.items():
                _acc(out, dst.encode((m,) + hs[:i - 1] + (t,) + hs[i + 1:]), c)
        else:
            img = self.bimodule.left(hs[p - 1], m)
            for mm, c in img.items():
                _acc(out, dst.encode((mm,) + hs[:p - 1]), c)
        return out

    def boundary_matrix(self, p):
        if p == 0:
            return SparseMatrix.zero(self.field, 0, self.dim(0))
        cols = []
        for k in range(self.dim(p)):
            acc = {}
            for i in range(p + 1):
                vec_add_into(acc, self.face(p, i, k), self.field.sign(i))
            cols.append(acc)
        return SparseMatrix.from_columns(self.field, self.dim(p - 1), cols)


def _acc(out, key, c):
    s = out.get(key)
    s = c if s is None else s + c
    if s:
        out[key] = s
    elif key in out:
        del out[key]


def check_row_identification(cyl, twisted_algebra, q, max_p):
    """The q-th cylinder row equals the Hochschild complex of the twisted
    scalar algebra with coefficients in the row bimodule, facewise, under
    the rebracketing (g_0..g_p | a_0..a_q) -> ((g_0, a_0..a_q), g_1..g_p).
    None, or the first mismatch."""
    bim = BimoduleMq(cyl, q)
    hc = HochschildComplex(twisted_algebra, bim)
    for p in range(1, max_p + 1):
        cyl_space = cyl.space(p, q)
        hc_space = hc.space(p)

        def reindex(k, p=p, cyl_space=cyl_space, hc_space=hc_space):
            tup = cyl_space.decode(k)
            gs, avs = tup[:p + 1], tup[p + 1:]
            m = bim.space.encode((gs[0],) + avs)
            return hc_space.encode((m,) + gs[1:])

        for k in range(cyl.dim(p, q)):
            for i in range(p + 1):
                lhs = {}
                for kk, c in cyl.hface(p, q, i, k).items():
                    tup = cyl.space(p - 1, q).decode(kk)
                    gs, avs = tup[:p], tup[p:]
                    m = bim.space.encode((gs[0],) + avs)
                    _acc(lhs, hc.space(p - 1).encode((m,) + gs[1:]), c)
                rhs = hc.face(p, i, reindex(k))
                if lhs != rhs:
                    return (f"face {i} disagrees at row {q}, degree {p}, "
                            f"basis {k}")
    return None


class TwistedLeftModule:
    """A bimodule converted to a left Hopf-algebra module: conjugation by
    the antipode on the two sides, corrected by an inverse cocycle value
    on the middle legs."""

    def __init__(self, bimodule):
        self.bimodule = bimodule
        self.hopf = bimodule.hopf
        self.cocycle = bimodule.cocycle
        self.field = bimodule.field
        self.dim = bimodule.dim
        self._cache = {}

    def act(self, h, m):
        key = (h, m)
        if key in self._cache:
            return self._cache[key]
        out = {}
        mv = {m: self.field.one}
        for c0, (l1, l2, l3, l4) in self.hopf.sweedler(h, 4):
            coef = c0 * self.cocycle.of(self.hopf.antipode[l2],
                                        {l3: self.field.one}, inverse=True)
            if not coef:
                continue
            moved = self.bimodule.right_vec(mv, self.hopf.antipode[l1])
            vec_add_into(out, self.bimodule.left_vec(
                {l4: self.field.one}, moved), coef)
        self._cache[key] = out
        return out

    def act_vec(self, hvec, mvec):
        out = {}
        for h, ch in hvec.items():
            for m, cm in mvec.items():
                vec_add_into(out, self.act(h, m), ch * cm)
        return out

    def verify_module_law(self):
        """1 acts as identity and the action is multiplicative; None or
        the first failing tuple."""
        field = self.field
        unit = self.hopf.algebra.unit
        for m in range(self.dim):
            mv = {m: field.one}
            if self.act_vec(unit, mv) != mv:
                return ("unit", m)
        for g in range(self.hopf.dim):
            for h in range(self.hopf.dim):
                gh = self.hopf.algebra.multiply_basis(g, h)
                for m in range(self.dim):
                    mv = {m: field.one}
                    lhs = self.act_vec({g: field.one},
                                       self.act_vec({h: field.one}, mv))
                    rhs = self.act_vec(gh, mv)
                    if lhs != rhs:
                        return (g, h, m)
        return None


def twisted_left_module(bimodule, verify=True):
    mod = TwistedLeftModule(bimodule)
    if verify:
        bad = mod.verify_module_law()
        if bad is not None:
            raise ModuleLawError(
                f"left module law fails at {bad}; the conversion needs a "
                f"cocommutative Hopf algebra")
    return mod


class HopfComplex:
    """The bar-type complex computing Hopf-algebra homology of a left
    module: degree p is H^p (x) M, the differential drops the first leg
    through the counit, merges adjacent legs with alternating signs and
    lets the last leg act on the module."""

    def __init__(self, hopf, act, carrier_dim):
        self.hopf = hopf
        self.act = act                  # act(h_index, m_index) -> vector
        self.carrier_dim = carrier_dim
        self.field = hopf.field
        self._spaces = {}

    def space(self, p):
        if p not in self._spaces:
            self._spaces[p] = TensorSpace(
                [self.hopf.dim] * p + [self.carrier_dim])
        return self._spaces[p]

    def dim(self, p):
        return self.space(p).size

    def face(self, p, i, k):
        src, dst = self.space(p), self.space(p - 1)
        tup = src.decode(k)
        hs, m = tup[:p], tup[p]
        out = {}
        if i == 0:
            c = self.hopf.counit[hs[0]]
            if c:
                _acc(out, dst.encode(hs[1:] + (m,)), c)
        elif i < p:
            prod = self.hopf.algebra.multiply_basis(hs[i - 1], hs[i])
            for t, c in prod.items():
                _acc(out, dst.encode(hs[:i - 1] + (t,) + hs[i + 1:] + (m,)), c)
        else:
            img = self.act(hs[p - 1], m)
            for mm, c in img.items():
                _acc(out, dst.encode(hs[:p - 1] + (mm,)), c)
        return out

    def boundary_matrix(self, p):
        if p == 0:
            return SparseMatrix.zero(self.field, 0, self.dim(0))
        cols = []
        for k in range(self.dim(p)):
            acc = {}
            for i in range(p + 1):
                vec_add_into(acc, self.face(p, i, k), self.field.sign(i))
            cols.append(acc)
        return SparseMatrix.from_columns(self.field, self.dim(p - 1), cols)


class HopfComplexError(RuntimeError):
    pass


def hopf_homology(hopf, act, carrier_dim, max_p):
    """Hopf-algebra homology dimensions through max_p; the differential
    is checked to square to zero first and a failure aborts."""
    cx = HopfComplex(hopf, act, carrier_dim)
    mats = {p: cx.boundary_matrix(p) for p in range(max_p + 2)}
    for p in range(2, max_p + 2):
        if not mats[p - 1].compose(mats[p]).is_zero():
            raise HopfComplexError(
                f"differential does not square to zero out of degree {p}")
    dims = []
    for p in range(max_p + 1):
        kdim = cx.dim(p) - mat_rank(mats[p])
        dims.append(kdim - mat_rank(mats[p + 1]))
    return HomologyReport(list(range(max_p + 1)), dims, "hopf")


# ---------------------------------------------------------------------------
# the Mac Lane chain isomorphism


def hochschild_to_hopf(bimodule, p):
    """Matrix of the chain isomorphism from the Hochschild complex of the
    twisted scalar algebra to the Hopf complex of the twisted module: each
    Hopf slot keeps its second leg and the string of first legs drains
    into the module by right action."""
    hopf = bimodule.hopf
    field = bimodule.field
    src = TensorSpace([bimodule.dim] + [hopf.dim] * p)
    dst = TensorSpace([hopf.dim] * p + [bimodule.dim])
    cols = []
    for k in range(src.size):
        tup = src.decode(k)
        m, hs = tup[0], tup[1:]
        out = {}
        for coef, legs in _multi_sweedler(hopf, hs, 2):
            mv = {m: field.one}
            for (l1, _l2) in legs:
                mv = bimodule.right_vec(mv, {l1: field.one})
            second = tuple(l2 for (_l1, l2) in legs)
            for mm, c in mv.items():
                _acc(out, dst.encode(second + (mm,)), coef * c)
        cols.append(out)
    return SparseMatrix.from_columns(field, dst.size, cols)


def hopf_to_hochschild(bimodule, p):
    """Matrix of the inverse: fourth legs return to the algebra string,
    antipodes of the first legs act on the module from the right in
    reverse order, and the middle legs pay inverse cocycle factors."""
    hopf = bimodule.hopf
    coc = bimodule.cocycle
    field = bimodule.field
    src = TensorSpace([hopf.dim] * p + [bimodule.dim])
    dst = TensorSpace([bimodule.dim] + [hopf.dim] * p)
    cols = []
    for k in range(src.size):
        tup = src.decode(k)
        hs, m = tup[:p], tup[p]
        out = {}
        for coef, legs in _multi_sweedler(hopf, hs, 4):
            w = coef
            for (_l1, l2, l3, _l4) in legs:
                w = w * coc.of(hopf.antipode[l2], {l3: field.one},
                               inverse=True)
                if not w:
                    break
            if not w:
                continue
            mv = {m: field.one}
            for (l1, _l2, _l3, _l4) in reversed(legs):
                mv = bimodule.right_vec(mv, hopf.antipode[l1])
            fourth = tuple(l4 for (_l1, _l2, _l3, l4) in legs)
            for mm, c in mv.items():
                _acc(out, dst.encode((mm,) + fourth), w * c)
        cols.append(out)
    return SparseMatrix.from_columns(field, dst.size, cols)


def _multi_sweedler(hopf, indices, count):
    lists = [hopf.sweedler(i, count) for i in indices]
    one = hopf.field.one
    for combo in itertools.product(*lists):
        coef = one
        tups = []
        for c, t in combo:
            coef = coef * c
            tups.append(t)
        yield coef, tups


def check_maclane(cyl, twisted_algebra, q, max_p):
    """Mutual inverses and facewise intertwining of the Mac Lane pair on
    the q-th row coefficients, through degree max_p; None or the first
    failure."""
    bim = BimoduleMq(cyl, q)
    bad = bim.verify(twisted_algebra)
    if bad is not None:
        return f"bimodule laws fail: {bad}"
    mod = twisted_left_module(bim)
    hc = HochschildComplex(twisted_algebra, bim)
    hx = HopfComplex(cyl.hopf, mod.act, bim.dim)
    field = cyl.field
    for p in range(max_p + 1):
        theta = hochschild_to_hopf(bim, p)
        inv = hopf_to_hochschild(bim, p)
        if theta.compose(inv) != SparseMatrix.identity(field, hx.dim(p)):
            return f"theta o inverse is not the identity in degree {p}"
        if inv.compose(theta) != SparseMatrix.identity(field, hc.dim(p)):
            return f"inverse o theta is not the identity in degree {p}"
        if p >= 1:
            theta_down = hochschild_to_hopf(bim, p - 1)
            for i in range(p + 1):
                for k in range(hc.dim(p)):
                    lhs = {}
                    for kk, c in hc.face(p, i, k).items():
                        vec_add_into(lhs, theta_down.apply({kk: field.one}), c)
                    rhs = {}
                    for kk, c in theta.apply({k: field.one}).items():
                        vec_add_into(rhs, hx.face(p, i, kk), c)
                    if lhs != rhs:
                        return (f"face {i} intertwining fails in degree {p} "
                                f"at basis {k}")
    return None


def coefficient_action_matrix(cyl, q):
    """The explicit closed-form left action on the row coefficients, as
    per-generator matrices; three cocycle corrections, one action leg per
    coefficient slot, and an antipode sandwich on the H component."""
    hopf = cyl.hopf
    coc = cyl.cocycle
    field = cyl.field
    bim = BimoduleMq(cyl, q)
    mats = []
    for h in range(hopf.dim):
        cols = []
        for m in range(bim.dim):
            tup = bim.space.decode(m)
            g, avs = tup[0], tup[1:]
            out = {}
            for c0, l in hopf.sweedler(h, q + 8):
                for c1, (g1, g2, g3) in hopf.sweedler(g, 3):
                    w = c0 * c1
                    w = w * coc.of(hopf.antipode[l[2]], {l[3]: field.one},
                                   inverse=True)
                    if not w:
                        continue
                    w = w * coc.values[l[q + 5]][g1]
                    if not w:
                        continue
                    prod = hopf.algebra.multiply_basis(l[q + 6], g2)
                    w = w * coc.of(prod, hopf.antipode[l[1]])
                    if not w:
                        continue
                    head = hopf.algebra.multiply(
                        hopf.algebra.multiply_basis(l[q + 7], g3),
                        hopf.antipode[l[0]])
                    acted = [cyl.action.apply_basis(l[4 + j], avs[j])
                             for j in range(q + 1)]
                    for t, ct in head.items():
                        cyl._emit(out, bim.space, w * ct, (t,), acted)
            cols.append(out)
        mats.append(SparseMatrix.from_columns(field, bim.dim, cols))
    return mats


def check_coefficient_action(cyl, q):
    """The closed form must coincide with the bimodule conversion on
    every basis pair; None or the first mismatch."""
    bim = BimoduleMq(cyl, q)
    mod = twisted_left_module(bim)
    mats = coefficient_action_matrix(cyl, q)
    for h in range(cyl.hopf.dim):
        for m in range(bim.dim):
            if mats[h].apply({m: cyl.field.one}) != mod.act(h, m):
                return (h, m)
    return None
