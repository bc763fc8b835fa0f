"""Exact sparse linear algebra: the substrate everything else stands on.

Every homology number in this package is a rank computed over Q or a
prime field, with no floating point anywhere.  This script walks through
ranks, kernels, quotient spaces and induced maps.
"""

from fractions import Fraction

from hclab.exactlinalg import (
    Field, QQ, SparseMatrix, Subspace, induced_map, kernel_basis, mat_rank,
    quotient_space, solve_linear,
)

# A rank over the rationals is exact: no epsilon, no tolerance.
m = SparseMatrix.from_dense(QQ, [[1, 2, 3], [2, 4, 6], [0, 1, 1]])
print("rank of a 3x3 with a repeated direction:", mat_rank(m))

# Kernels come back as canonical reduced-echelon bases, so repeated runs
# and downstream quotient constructions are reproducible bit for bit.
k = kernel_basis(m)
print("kernel dimension:", k.dim)
print("kernel basis rows:", [sorted(r.items()) for r in k.basis.row_dicts()])

# Solving is exact too; inconsistency is a value, not an exception.
print("solve [[2]] x = 1:", solve_linear(SparseMatrix.from_dense(QQ, [[2]]),
                                          {0: Fraction(1)}))
print("solve 0 x = 1:", solve_linear(SparseMatrix.zero(QQ, 1, 1),
                                     {0: Fraction(1)}))

# Prime fields use the same interfaces.
F2 = Field(2)
m2 = SparseMatrix.from_dense(F2, [[1, 1]])
print("kernel over F2 of [1 1]:", kernel_basis(m2).basis.row_dicts())

# Quotient spaces carry projection data; induced maps are only accepted
# when they are honestly well defined on the quotient.
denom = Subspace.from_vectors(QQ, 3, [{0: Fraction(1), 1: Fraction(1)}])
q = quotient_space(3, denom)
print("quotient of dim 3 by a line has dim", q.dim)
f = SparseMatrix.identity(QQ, 3)
print("identity induces", induced_map(f, q, q))
