"""Ext-algebras of semi-free modules and their algebra-level structure.

For a module with semibasis in degree 0 the degree-0 cocycles of the
endomorphism DG algebra are exactly the scalar matrices commuting with the
connection matrix: expanding A*D - D*A = 0 coefficient-wise gives a linear
system over the ground field.  The solution space is the Ext-algebra; this
module extracts its structure constants, recognizes truncated polynomial
algebras k[X]/(X^m), and searches for (symmetric) Frobenius forms.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .exact import Echelon, Matrix, reduced_row_echelon


def _commutant_rows(f):
    """Constraint rows of A*D = D*A in the unknowns A[i][j] (row-major)."""
    a = f.algebra
    m = f.rank
    field = a.field
    rows = []
    for i in range(m):
        for j in range(m):
            for t in range(1, a.n + 1):
                row = {}
                for k in range(m):
                    c = f.connection[k][j].coefficient((t,))
                    if not field.is_zero(c):
                        idx = i * m + k
                        row[idx] = field.add(row.get(idx, field.zero), c)
                    c = f.connection[i][k].coefficient((t,))
                    if not field.is_zero(c):
                        idx = k * m + j
                        row[idx] = field.sub(row.get(idx, field.zero), c)
                row = {k_: v for k_, v in row.items() if not field.is_zero(v)}
                if row:
                    rows.append(row)
    return rows


def _unknown_name(idx, m):
    return "a%d%d" % (idx // m + 1, idx % m + 1)


def _render_constraint(row, m, field):
    parts = []
    for idx in sorted(row):
        c = row[idx]
        name = _unknown_name(idx, m)
        if not parts:
            if c == field.one:
                parts.append(name)
            else:
                parts.append("%s*%s" % (field.to_json(c), name))
        else:
            neg = field.neg(c)
            if c == field.one:
                parts.append("+ %s" % name)
            elif neg == field.one:
                parts.append("- %s" % name)
            else:
                parts.append("+ %s*%s" % (field.to_json(c), name))
    return " ".join(parts) + " = 0"


def commutant_constraints(f):
    """Canonical (fully reduced) constraint equations as strings."""
    field = f.algebra.field
    m = f.rank
    rows = reduced_row_echelon(_commutant_rows(f), field)
    return [_render_constraint(row, m, field) for row in rows]


def degree_zero_endomorphism_basis(f):
    """Reduced-echelon basis of the commutant {A : A*D = D*A}.

    Each basis element is an m x m scalar matrix; the identity matrix is
    always in the span (checked).
    """
    field = f.algebra.field
    m = f.rank
    rows = _commutant_rows(f)
    ech = Echelon(field)
    for row in rows:
        ech.insert(row)
    basis = []
    for idx in range(m * m):
        if idx not in ech.pivots:
            vec = ech.kernel_vector(idx)
            entries = {}
            for pos, v in vec.items():
                entries[(pos // m, pos % m)] = v
            basis.append(Matrix(field, m, m, entries))
    for row in rows:
        s = field.zero
        for idx, c in row.items():
            if idx // m == idx % m:
                s = field.add(s, field.coerce(c))
        if not field.is_zero(s):
            raise RuntimeError("internal: identity not in the commutant")
    return basis


@dataclass(frozen=True)
class StructureConstantAlgebra:
    """Finite-dimensional unital algebra by structure constants.

    table[i][j] is the coordinate tuple of e_i * e_j; unit is a coordinate
    tuple (the unit need not be a basis vector).  Unit laws and
    associativity are checked exhaustively at construction.
    """

    field: object
    dim: int
    labels: tuple
    unit: tuple
    table: tuple

    def __post_init__(self):
        f = self.field
        if len(self.labels) != self.dim or len(self.unit) != self.dim:
            raise ValueError("label or unit length mismatch")
        if len(self.table) != self.dim or any(len(r) != self.dim for r in self.table):
            raise ValueError("structure constant table must be dim x dim")
        for i in range(self.dim):
            ei = self.basis_coords(i)
            if self.multiply(self.unit, ei) != ei or self.multiply(ei, self.unit) != ei:
                raise ValueError("unit law fails at basis index %d" % i)
        for i in range(self.dim):
            for j in range(self.dim):
                for k in range(self.dim):
                    lhs = self.multiply(self.multiply(self.basis_coords(i),
                                                      self.basis_coords(j)),
                                        self.basis_coords(k))
                    rhs = self.multiply(self.basis_coords(i),
                                        self.multiply(self.basis_coords(j),
                                                      self.basis_coords(k)))
                    if lhs != rhs:
                        raise ValueError("associativity fails at (%d,%d,%d)" % (i, j, k))

    def basis_coords(self, i):
        f = self.field
        return tuple(f.one if k == i else f.zero for k in range(self.dim))

    def multiply(self, u, v):
        f = self.field
        out = [f.zero] * self.dim
        for i, ui in enumerate(u):
            if f.is_zero(ui):
                continue
            for j, vj in enumerate(v):
                if f.is_zero(vj):
                    continue
                c = f.mul(ui, vj)
                for k, t in enumerate(self.table[i][j]):
                    if not f.is_zero(t):
                        out[k] = f.add(out[k], f.mul(c, t))
        return tuple(out)

    def power(self, u, k):
        out = self.unit
        for _ in range(k):
            out = self.multiply(out, u)
        return out

    def is_commutative(self):
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                if self.table[i][j] != self.table[j][i]:
                    return False
        return True

    def left_multiplication_matrix(self, u):
        cols = {}
        f = self.field
        for j in range(self.dim):
            col = self.multiply(u, self.basis_coords(j))
            for i, v in enumerate(col):
                if not f.is_zero(v):
                    cols[(i, j)] = v
        return Matrix(f, self.dim, self.dim, cols)

    def trace_gram_matrix(self):
        """Gram matrix of (x, y) -> trace of left multiplication by xy."""
        f = self.field
        entries = {}
        for i in range(self.dim):
            for j in range(self.dim):
                prod = self.multiply(self.basis_coords(i), self.basis_coords(j))
                tr = f.zero
                for v in range(self.dim):
                    col = self.multiply(prod, self.basis_coords(v))
                    tr = f.add(tr, col[v])
                if not f.is_zero(tr):
                    entries[(i, j)] = tr
        return Matrix(f, self.dim, self.dim, entries)

    def radical_basis(self):
        """Kernel of the trace form; equals the nilradical in the cases in
        scope (characteristic 0, or p larger than the algebra dimension)."""
        from .exact import rank_and_kernel
        _, kernel = rank_and_kernel(self.trace_gram_matrix())
        return [tuple(v) for v in kernel]

    def is_local(self):
        return self.is_commutative() and len(self.radical_basis()) == self.dim - 1


def truncated_polynomial_algebra(field, m, labels=None):
    """k[X]/(X^m) with basis 1, X, .., X^(m-1)."""
    if m < 1:
        raise ValueError("dimension must be positive")
    table = []
    for i in range(m):
        row = []
        for j in range(m):
            k = i + j
            row.append(tuple(field.one if t == k and k < m else field.zero
                             for t in range(m)))
        table.append(tuple(row))
    unit = tuple(field.one if t == 0 else field.zero for t in range(m))
    labels = tuple(labels) if labels else tuple("e%d" % (i + 1) for i in range(m))
    return StructureConstantAlgebra(field, m, labels, unit, tuple(table))


def ext_structure_constants(basis, f=None):
    """Structure constants of the commutant in its echelon basis.

    Products are expanded by reading off the coordinates at the free
    positions of the reduced-echelon basis; an exact reconstruction check
    guards against a non-closed input (impossible for a true commutant).
    """
    if not basis:
        raise ValueError("empty basis")
    field = basis[0].field
    m = basis[0].rows
    dim = len(basis)
    free_positions = []
    for b in basis:
        candidates = [(i, j) for (i, j), v in sorted(b.entries.items())
                      if v == field.one
                      and all(other.entry(i, j) == field.zero
                              for other in basis if other is not b)]
        if not candidates:
            raise RuntimeError("internal: basis is not in reduced echelon form")
        free_positions.append(candidates[0])
    table = []
    for bi in basis:
        row = []
        for bj in basis:
            prod = bi.matmul(bj)
            coords = tuple(prod.entry(*pos) for pos in free_positions)
            recon = {}
            for c, b in zip(coords, basis):
                for key, v in b.entries.items():
                    s = field.add(recon.get(key, field.zero), field.mul(c, v))
                    if field.is_zero(s):
                        recon.pop(key, None)
                    else:
                        recon[key] = s
            if recon != prod.entries:
                raise RuntimeError("internal: commutant is not closed under product")
            row.append(coords)
        table.append(tuple(row))
    unit_coords = tuple(Matrix.identity(field, m).entry(*pos) for pos in free_positions)
    labels = tuple("v%d" % (i + 1) for i in range(dim))
    return StructureConstantAlgebra(field, dim, labels, unit_coords, tuple(table))


def truncated_polynomial_recognize(alg, budget=10 ** 4):
    """A generator x with x^(m-1) != 0 = x^m and basis 1, x, .., x^(m-1),
    i.e. an isomorphism with k[X]/(X^m), or None within the search budget.

    Radical basis vectors are tried first, then integer combinations with
    coefficients in [-2, 2].  Noncommutative input is a ValueError; a
    non-local algebra returns None (no such generator can exist).
    """
    f = alg.field
    m = alg.dim
    if not alg.is_commutative():
        raise ValueError("not commutative; truncated polynomial recognition does not apply")
    if m == 1:
        return tuple(f.zero for _ in range(1)), 1
    if not alg.is_local():
        return None
    radical = alg.radical_basis()
    r = len(radical)

    def candidates():
        for v in radical:
            yield v
        import itertools
        span = [c for c in itertools.product(range(-2, 3), repeat=r)]
        span.sort(key=lambda c: (sum(abs(x) for x in c), c))
        for coeffs in span:
            nz = [c for c in coeffs if c]
            if len(nz) <= 1:
                continue  # zero and single vectors already tried
            vec = [f.zero] * m
            for c, v in zip(coeffs, radical):
                if c:
                    cc = f.coerce(c)
                    for k in range(m):
                        vec[k] = f.add(vec[k], f.mul(cc, v[k]))
            yield tuple(vec)

    tried = 0
    for x in candidates():
        tried += 1
        if tried > budget:
            return None
        powers = [alg.unit]
        ok = True
        ech = Echelon(f)
        for k in range(1, m):
            powers.append(alg.multiply(powers[-1], x))
        for vec in powers:
            row = {i: v for i, v in enumerate(vec) if not f.is_zero(v)}
            if not row or not ech.insert(row):
                ok = False
                break
        if not ok:
            continue
        top = alg.multiply(powers[-1], x)
        if any(not f.is_zero(v) for v in top):
            continue
        return x, m
    return None


def frobenius_gram(alg, functional):
    """Gram matrix of the pairing (u, v) -> functional(u*v)."""
    f = alg.field
    entries = {}
    for i in range(alg.dim):
        for j in range(alg.dim):
            prod = alg.table[i][j]
            val = f.zero
            for c, lam in zip(prod, functional):
                val = f.add(val, f.mul(c, lam))
            if not f.is_zero(val):
                entries[(i, j)] = val
    return Matrix(f, alg.dim, alg.dim, entries)


def _is_nondegenerate(gram):
    ech = Echelon(gram.field)
    for row in gram.row_dicts():
        ech.insert(row)
    return ech.rank == gram.rows


def frobenius_form(alg, seed=0, attempts=10 ** 3):
    """A functional making (u,v) -> lambda(uv) nondegenerate, with its
    symmetry flag, or None if the budget runs out (reported as not found,
    never as proven nonexistent).  Dual basis functionals are tried first,
    then seeded random integer combinations with coefficients in [-3, 3].
    """
    f = alg.field

    def check(functional):
        gram = frobenius_gram(alg, functional)
        if not _is_nondegenerate(gram):
            return None
        symmetric = gram == gram.transpose()
        return functional, symmetric

    for i in range(alg.dim):
        functional = tuple(f.one if k == i else f.zero for k in range(alg.dim))
        hit = check(functional)
        if hit:
            return hit
    rng = random.Random(seed)
    for _ in range(attempts):
        functional = tuple(f.coerce(rng.randint(-3, 3)) for _ in range(alg.dim))
        hit = check(functional)
        if hit:
            return hit
    return None


def ext_report(f, seed=0):
    """Full Ext pipeline for a module: commutant, structure constants,
    truncated-polynomial recognition (with rebasing to the power basis when
    it succeeds), and the Frobenius search."""
    basis = degree_zero_endomorphism_basis(f)
    constraints = commutant_constraints(f)
    alg = ext_structure_constants(basis, f)
    report = {
        "ext_dim": len(basis),
        "constraints": constraints,
        "commutative": alg.is_commutative(),
        "local": alg.is_local(),
    }
    recognized = None
    if alg.is_commutative():
        recognized = truncated_polynomial_recognize(alg)
    working = alg
    if recognized is not None:
        x, m = recognized
        report["recognized"] = "k[X]/(X^%d)" % m
        report["generator_in_commutant_basis"] = [alg.field.to_json(c) for c in x]
        working = truncated_polynomial_algebra(alg.field, m)
    else:
        report["recognized"] = None
    frob = frobenius_form(working, seed=seed)
    if frob is None:
        report["frobenius"] = {"found": False}
    else:
        functional, symmetric = frob
        report["frobenius"] = {
            "found": True,
            "symmetric": bool(symmetric),
            "functional": [working.field.to_json(c) for c in functional],
            "basis": list(working.labels),
        }
        if symmetric:
            report["frobenius"]["note"] = (
                "symmetric Frobenius form certifies the Calabi-Yau property "
                "(criterion taken as a given input, not derived here)")
    return report
