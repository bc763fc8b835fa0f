"""Finite-dimensional Hopf algebras with full axiom verification.

The coproduct is stored as a list of sparse tensor-square vectors (one
per basis element, keyed by leg pairs), the counit as a dense list of
scalars and the antipode as column images.  Iterated coproducts are
materialized as explicit sum-of-tensors term lists; for cocommutative
inputs the leg order of those lists is irrelevant, which is what makes
the long crossed-product formulas downstream mechanical.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Violation, ground_algebra, group_algebra
from .exactlinalg import (
    SparseMatrix, kernel_basis, solve_linear, vec_add_into,
)


class UnsupportedSemisimplicityQuery(ValueError):
    """Semisimplicity detection outside the supported cases."""


@dataclass
class SweedlerExpansion:
    """An iterated coproduct as an explicit list of (scalar, legs) terms."""

    legs: int
    terms: list  # [(coefficient, tuple of basis indices)]

    def sorted_terms(self):
        return sorted(self.terms, key=lambda t: t[1])


class HopfAlgebra:
    """An algebra with coproduct, counit and antipode tables."""

    def __init__(self, algebra, coproduct, counit, antipode, group=None):
        self.algebra = algebra
        self.field = algebra.field
        self.dim = algebra.dim
        self.coproduct = coproduct      # list of {(i, j): scalar}
        self.counit = counit            # list of scalars
        self.antipode = antipode        # list of sparse column images
        self.group = group              # set for group algebras (Maschke)
        self._sweedler_cache = {}

    # -- linear helpers ----------------------------------------------------

    def counit_of(self, vec):
        total = self.field.zero
        for i, c in vec.items():
            total = total + c * self.counit[i]
        return total

    def antipode_of(self, vec):
        out = {}
        for i, c in vec.items():
            vec_add_into(out, self.antipode[i], c)
        return out

    def multiply(self, x, y):
        return self.algebra.multiply(x, y)

    def product_of_basis(self, indices):
        """Product of a sequence of basis elements, as a sparse vector."""
        if not indices:
            return dict(self.algebra.unit)
        out = {indices[0]: self.field.one}
        for i in indices[1:]:
            out = self.algebra.multiply(out, {i: self.field.one})
        return out

    def sweedler(self, basis_index, legs):
        """Term list of the (legs-1)-fold iterated coproduct of a basis
        element; legs = 1 returns the element itself."""
        key = (basis_index, legs)
        cached = self._sweedler_cache.get(key)
        if cached is not None:
            return cached
        if legs == 1:
            terms = [(self.field.one, (basis_index,))]
        else:
            # split the first leg: legs-fold = (coproduct x 1) o (legs-1)-fold
            prev = self.sweedler(basis_index, legs - 1)
            terms = []
            for coeff, tup in prev:
                for (a, b), c in self.coproduct[tup[0]].items():
                    terms.append((coeff * c, (a, b) + tup[1:]))
        merged = {}
        for coeff, tup in terms:
            if tup in merged:
                s = merged[tup] + coeff
                if s:
                    merged[tup] = s
                else:
                    del merged[tup]
            elif coeff:
                merged[tup] = coeff
        result = [(c, t) for t, c in sorted(merged.items(), key=lambda kv: kv[0])]
        self._sweedler_cache[key] = result
        return result

    def sweedler_of_vector(self, vec, legs):
        merged = {}
        for i, x in vec.items():
            for coeff, tup in self.sweedler(i, legs):
                c = x * coeff
                if tup in merged:
                    s = merged[tup] + c
                    if s:
                        merged[tup] = s
                    else:
                        del merged[tup]
                elif c:
                    merged[tup] = c
        return [(c, t) for t, c in sorted(merged.items(), key=lambda kv: kv[0])]

    def __repr__(self):
        return f"HopfAlgebra(dim={self.dim}, field={self.field})"


def iterated_coproduct(hopf, x, n):
    """The n-fold iterated coproduct of an element, with n+1 legs."""
    if n < 1:
        raise ValueError("the iterated coproduct needs n >= 1")
    return SweedlerExpansion(n + 1, hopf.sweedler_of_vector(x, n + 1))


def counit_collapse(hopf, expansion, leg):
    """Apply the counit to one leg of an expansion (one fewer leg)."""
    merged = {}
    for coeff, tup in expansion.terms:
        c = coeff * hopf.counit[tup[leg]]
        rest = tup[:leg] + tup[leg + 1:]
        if rest in merged:
            s = merged[rest] + c
            if s:
                merged[rest] = s
            else:
                del merged[rest]
        elif c:
            merged[rest] = c
    return SweedlerExpansion(
        expansion.legs - 1,
        [(c, t) for t, c in sorted(merged.items(), key=lambda kv: kv[0])])


def _tensor_square_product(hopf, u, v):
    """Product in H (x) H of two sparse tensor-square vectors."""
    out = {}
    for (a1, b1), c1 in u.items():
        for (a2, b2), c2 in v.items():
            coeff = c1 * c2
            left = hopf.algebra.multiply_basis(a1, a2)
            right = hopf.algebra.multiply_basis(b1, b2)
            for la, ca in left.items():
                for rb, cb in right.items():
                    key = (la, rb)
                    s = out.get(key)
                    c = coeff * ca * cb
                    if s is None:
                        if c:
                            out[key] = c
                    else:
                        s = s + c
                        if s:
                            out[key] = s
                        else:
                            del out[key]
    return out


def validate_hopf(hopf):
    """None if all Hopf axioms hold on every basis vector, else the first
    Violation (named axiom and location)."""
    alg = hopf.algebra
    field = hopf.field
    bad = alg.validate()
    if bad is not None:
        return bad

    # coassociativity per basis vector
    for i in range(hopf.dim):
        left = {}
        for (a, b), c in hopf.coproduct[i].items():
            for (a1, a2), c2 in hopf.coproduct[a].items():
                key = (a1, a2, b)
                s = left.get(key, field.zero) + c * c2
                if s:
                    left[key] = s
                elif key in left:
                    del left[key]
        right = {}
        for (a, b), c in hopf.coproduct[i].items():
            for (b1, b2), c2 in hopf.coproduct[b].items():
                key = (a, b1, b2)
                s = right.get(key, field.zero) + c * c2
                if s:
                    right[key] = s
                elif key in right:
                    del right[key]
        if left != right:
            return Violation("coassociativity", (i,))

    # counit laws
    for i in range(hopf.dim):
        left, right = {}, {}
        for (a, b), c in hopf.coproduct[i].items():
            vec_add_into(left, {b: c * hopf.counit[a]})
            vec_add_into(right, {a: c * hopf.counit[b]})
        e = {i: field.one}
        if left != e:
            return Violation("counit law (left)", (i,))
        if right != e:
            return Violation("counit law (right)", (i,))

    # coproduct and counit are algebra maps
    unit_tensor = {}
    for a, ca in alg.unit.items():
        for b, cb in alg.unit.items():
            if ca * cb:
                unit_tensor[(a, b)] = ca * cb
    cop_unit = {}
    for i, c in alg.unit.items():
        for key, c2 in hopf.coproduct[i].items():
            s = cop_unit.get(key, field.zero) + c * c2
            if s:
                cop_unit[key] = s
            elif key in cop_unit:
                del cop_unit[key]
    if cop_unit != unit_tensor:
        return Violation("coproduct of the unit", ())
    if hopf.counit_of(alg.unit) != field.one:
        return Violation("counit of the unit", ())
    for i in range(hopf.dim):
        for j in range(hopf.dim):
            prod = alg.multiply_basis(i, j)
            lhs = {}
            for k, c in prod.items():
                for key, c2 in hopf.coproduct[k].items():
                    s = lhs.get(key, field.zero) + c * c2
                    if s:
                        lhs[key] = s
                    elif key in lhs:
                        del lhs[key]
            rhs = _tensor_square_product(hopf, hopf.coproduct[i], hopf.coproduct[j])
            if lhs != rhs:
                return Violation("coproduct is an algebra map", (i, j))
            if hopf.counit_of(prod) != hopf.counit[i] * hopf.counit[j]:
                return Violation("counit is an algebra map", (i, j))

    # antipode laws: m(S x 1) cop = unit . counit = m(1 x S) cop
    for i in range(hopf.dim):
        left, right = {}, {}
        for (a, b), c in hopf.coproduct[i].items():
            vec_add_into(left, alg.multiply(hopf.antipode[a], {b: field.one}), c)
            vec_add_into(right, alg.multiply({a: field.one}, hopf.antipode[b]), c)
        target = {k: hopf.counit[i] * c for k, c in alg.unit.items()
                  if hopf.counit[i] * c}
        if left != target:
            return Violation("antipode law (left)", (i,))
        if right != target:
            return Violation("antipode law (right)", (i,))
    return None


def is_cocommutative(hopf):
    """True iff flipping the legs fixes the coproduct of every basis vector."""
    for i in range(hopf.dim):
        flipped = {(b, a): c for (a, b), c in hopf.coproduct[i].items()}
        if flipped != hopf.coproduct[i]:
            return False
    return True


def group_hopf(field, group):
    """k[G] with group-like coproduct, counit 1 and antipode g -> g^-1."""
    alg = group_algebra(field, group)
    one = field.one
    coproduct = [{(i, i): one} for i in range(group.order)]
    counit = [one for _ in range(group.order)]
    antipode = [{group.inverse[i]: one} for i in range(group.order)]
    return HopfAlgebra(alg, coproduct, counit, antipode, group=group)


def trivial_hopf(field):
    """The ground field as a Hopf algebra."""
    alg = ground_algebra(field)
    one = field.one
    return HopfAlgebra(alg, [{(0, 0): one}], [one], [{0: one}])


def _left_multiplication_trace(alg, vec):
    """Trace of left multiplication by a vector."""
    total = alg.field.zero
    for k in range(alg.dim):
        img = alg.multiply(vec, {k: alg.field.one})
        if k in img:
            total = total + img[k]
    return total


def is_semisimple(hopf):
    """Characteristic 0: the trace-form radical must vanish (Dickson).
    Group algebras over F_p: Maschke, p must not divide |G|.  Anything
    else in positive characteristic is refused."""
    field = hopf.field
    if field.characteristic == 0:
        alg = hopf.algebra
        rows = []
        for i in range(alg.dim):
            row = {}
            for j in range(alg.dim):
                t = _left_multiplication_trace(alg, alg.multiply_basis(i, j))
                if t:
                    row[j] = t
            rows.append(row)
        gram = SparseMatrix.from_row_list(field, rows, alg.dim)
        return kernel_basis(gram).dim == 0
    if hopf.group is not None:
        return hopf.group.order % field.characteristic != 0
    raise UnsupportedSemisimplicityQuery(
        "semisimplicity over a prime field is only decided for group algebras")


def find_normalized_integral(hopf):
    """A two-sided-invariant element with counit 1, or None.

    Existence is equivalent to semisimplicity here; for k[G] this is the
    averaged sum of group elements.  Solves h*x = counit(h)*x for every
    basis h together with counit(x) = 1.
    """
    field = hopf.field
    rows = []
    rhs = {}
    r = 0
    for i in range(hopf.dim):
        for target in range(hopf.dim):
            row = {}
            for j in range(hopf.dim):
                img = hopf.algebra.multiply_basis(i, j)
                c = img.get(target, field.zero)
                if target == j:
                    c = c - hopf.counit[i]
                if c:
                    row[j] = c
            rows.append(row)
            r += 1
    row = {}
    for j in range(hopf.dim):
        if hopf.counit[j]:
            row[j] = hopf.counit[j]
    rows.append(row)
    rhs[r] = field.one
    m = SparseMatrix.from_row_list(field, rows, hopf.dim)
    return solve_linear(m, rhs)
