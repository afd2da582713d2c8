"""Independent reference implementations used by the test suite.

Everything here is deliberately naive (permutation-expansion determinants,
exhaustive minor search) so that failures point at the fast code, not at
the oracle.
"""

import itertools

from dgfree import GradedElement, StructureConstantAlgebra
from dgfree.freealg import degree_basis


def det_permutation(field, rows):
    """Determinant by signed permutation expansion; rows is a list of lists."""
    n = len(rows)
    total = field.zero
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = field.coerce(sign)
        for i in range(n):
            term = field.mul(term, field.coerce(rows[i][perm[i]]))
        total = field.add(total, term)
    return total


def minor_rank(field, rows, cols, data):
    """Rank as the size of the largest nonzero minor."""
    for size in range(min(rows, cols), 0, -1):
        for ri in itertools.combinations(range(rows), size):
            for ci in itertools.combinations(range(cols), size):
                sub = [[data[i][j] for j in ci] for i in ri]
                if not field.is_zero(det_permutation(field, sub)):
                    return size
    return 0


def random_matrix_lists(rng, rows, cols, bound=3):
    return [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)]


def random_homogeneous(rng, a, d, terms=4, bound=3):
    """Random homogeneous degree-d element with small integer coefficients."""
    words = degree_basis(a.n, d)
    e = GradedElement.zero(a.field, a.n)
    for _ in range(terms):
        w = words[rng.randrange(len(words))]
        c = rng.randint(-bound, bound)
        e = e + GradedElement(a.field, a.n, {w: a.field.coerce(c)})
    return e


def two_by_two_matrix_algebra(field):
    """Full 2x2 matrix algebra on the basis e11, e12, e21, e22."""
    pairs = [(0, 0), (0, 1), (1, 0), (1, 1)]
    table = []
    for (a, b) in pairs:
        row = []
        for (c, d) in pairs:
            coords = [field.zero] * 4
            if b == c:
                coords[pairs.index((a, d))] = field.one
            row.append(tuple(coords))
        table.append(tuple(row))
    unit = (field.one, field.zero, field.zero, field.one)
    return StructureConstantAlgebra(field, 4, ("e11", "e12", "e21", "e22"),
                                    unit, tuple(table))


def split_plane_algebra(field):
    """k x k on its idempotent basis."""
    z, o = field.zero, field.one
    table = (((o, z), (z, z)), ((z, z), (z, o)))
    return StructureConstantAlgebra(field, 2, ("p", "q"), (o, o), table)
