"""Automorphism groups of finite-dimensional commutative algebras.

Automorphisms are unital algebra endomorphisms; in the row convention used
throughout, a matrix A encodes sigma(e_i) = sum_j A[i][j] e_j, so the matrix
of a composition sigma∘tau (tau applied first) is M(tau) * M(sigma).

The defining equations (unit preservation, multiplicativity) are built once
as exact polynomials in the matrix entries.  Over a finite field they are
solved by propagation plus bounded enumeration; for truncated polynomial
algebras k[X]/(X^m) the parametric family sigma(X) = a*X + b*X^2 + ... is
constructed symbolically and certified against the same equations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .exact import QQ
from .laurent import (LaurentContext, LaurentPoly, laurent_context,
                      matrix_identity_check, sym_det, sym_matmul)


def aut_variable_names(m):
    return tuple("c%d%d" % (i + 1, j + 1) for i in range(m) for j in range(m))


def _aut_equations(alg, entry, ring_zero, const):
    """Defining equations for entry(i, j) = coefficient of e_j in sigma(e_i).

    entry returns ring elements; const lifts a field scalar into the ring.
    The returned polynomials all vanish exactly when sigma is a unital
    algebra homomorphism.
    """
    f = alg.field
    m = alg.dim
    eqs = []
    for u in range(m):
        acc = ring_zero
        for i in range(m):
            if not f.is_zero(alg.unit[i]):
                acc = acc + const(alg.unit[i]) * entry(i, u)
        eqs.append(acc - const(alg.unit[u]))
    for i in range(m):
        for j in range(m):
            prod = alg.table[i][j]
            for u in range(m):
                acc = ring_zero
                for s in range(m):
                    for t in range(m):
                        c = alg.table[s][t][u]
                        if not f.is_zero(c):
                            acc = acc + const(c) * entry(i, s) * entry(j, t)
                for v in range(m):
                    if not f.is_zero(prod[v]):
                        acc = acc - const(prod[v]) * entry(v, u)
                eqs.append(acc)
    return eqs


@dataclass(frozen=True)
class AutConstraintSystem:
    """The automorphism equations of an algebra, as polynomials in the
    matrix unknowns c_ij (each equation understood as == 0)."""

    algebra: object
    context: LaurentContext
    equations: tuple

    def constraint_strings(self):
        return [e.render() + " = 0" for e in self.equations]

    def holds_at(self, matrix):
        """Whether a concrete matrix of field scalars satisfies every
        defining equation."""
        point = _matrix_point(self.context, matrix, self.algebra.dim)
        return all(self.algebra.field.is_zero(e.evaluate(point))
                   for e in self.equations)


def _matrix_point(ctx, matrix, m):
    point = {}
    for i in range(m):
        for j in range(m):
            point["c%d%d" % (i + 1, j + 1)] = matrix[i][j]
    return point


def aut_constraints(alg):
    names = aut_variable_names(alg.dim)
    ctx = LaurentContext(alg.field, names, (False,) * len(names))
    var = {}
    for i in range(alg.dim):
        for j in range(alg.dim):
            var[(i, j)] = ctx.variable("c%d%d" % (i + 1, j + 1))
    eqs = _aut_equations(alg, lambda i, j: var[(i, j)], ctx.zero(), ctx.constant)
    return AutConstraintSystem(alg, ctx, tuple(e for e in eqs if not e.is_zero()))


def is_automorphism_matrix(alg, matrix):
    """Homomorphism equations plus invertibility for a concrete matrix."""
    if not aut_constraints(alg).holds_at(matrix):
        return False
    return not alg.field.is_zero(_det_scalar(matrix, alg.field))


def _det_scalar(matrix, f):
    m = len(matrix)
    total = f.zero
    for perm in itertools.permutations(range(m)):
        sign = 1
        for i in range(m):
            for j in range(i + 1, m):
                if perm[i] > perm[j]:
                    sign = -sign
        term = f.coerce(sign)
        for i in range(m):
            term = f.mul(term, f.coerce(matrix[i][perm[i]]))
        total = f.add(total, term)
    return total


# -- parametric family for k[X]/(X^m) ---------------------------------------

_PARAM_NAMES = ("a", "b", "c", "d")


class _TruncSeries:
    """Polynomial in X truncated at X^m, coefficients in a Laurent ring."""

    def __init__(self, ctx, m, coeffs):
        self.ctx = ctx
        self.m = m
        self.coeffs = list(coeffs[:m]) + [ctx.zero()] * max(0, m - len(coeffs))

    @classmethod
    def one(cls, ctx, m):
        return cls(ctx, m, [ctx.constant(1)])

    def __mul__(self, other):
        out = [self.ctx.zero() for _ in range(self.m)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if i + j >= self.m:
                    break
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return _TruncSeries(self.ctx, self.m, out)


def _family_rows(ctx, m, coeffs):
    """Rows of the matrix of sigma with sigma(X) = sum coeffs[k] X^(k+1):
    row i lists the coefficients of sigma(X)^i."""
    series = _TruncSeries(ctx, m, [ctx.zero()] + list(coeffs))
    rows = []
    power = _TruncSeries.one(ctx, m)
    for _ in range(m):
        rows.append(tuple(power.coeffs))
        power = power * series
    return tuple(rows)


def _compose_coeffs(ctx, m, p, q):
    """Coefficients of sigma_p ∘ sigma_q, i.e. of sum q[j] sigma_p(X)^(j+1):
    tau = sigma_q is applied first and its coefficients are evaluated on
    sigma_p(X)."""
    series_p = _TruncSeries(ctx, m, [ctx.zero()] + list(p))
    power = series_p
    acc = _TruncSeries(ctx, m, [])
    for coeff in q:
        scaled = _TruncSeries(ctx, m, [coeff * c for c in power.coeffs])
        acc = _TruncSeries(ctx, m,
                           [x + y for x, y in zip(acc.coeffs, scaled.coeffs)])
        power = power * series_p
    return tuple(acc.coeffs[1:m])


@dataclass(frozen=True)
class AutFamily:
    """sigma(X) = a*X + b*X^2 + ... with a invertible."""

    m: int
    context: LaurentContext
    params: tuple
    matrix: tuple

    def param_vars(self):
        return tuple(self.context.variable(p) for p in self.params)

    def instantiate(self, values):
        """Matrix of field scalars at a parameter point (a must be nonzero)."""
        f = self.context.field
        point = dict(zip(self.params, (f.coerce(v) for v in values)))
        if f.is_zero(point[self.params[0]]):
            raise ValueError("leading family parameter must be invertible")
        return tuple(tuple(e.evaluate(point) for e in row) for row in self.matrix)


def truncated_polynomial_aut_family(m, field=QQ):
    if m < 2:
        raise ValueError("family needs dimension at least 2")
    if m - 1 > len(_PARAM_NAMES):
        raise ValueError("family only built up to dimension %d" % (len(_PARAM_NAMES) + 1))
    params = _PARAM_NAMES[: m - 1]
    ctx = laurent_context(params, invertible=("a",), field=field)
    rows = _family_rows(ctx, m, [ctx.variable(p) for p in params])
    return AutFamily(m, ctx, params, rows)


def family_compose_params(fam, p, q):
    return _compose_coeffs(fam.context, fam.m, p, q)


def family_inverse_params(fam):
    """Symbolic inverse parameters, solved degree by degree from
    compose(params, inverse) = parameters of the identity."""
    ctx = fam.context
    a = ctx.variable("a")
    inv = [a.inverse()]
    for k in range(2, fam.m):
        # the unknown X^k coefficient t enters the composite linearly as
        # a^k * t; with t = 0 the composite coefficient is the residue
        padded = tuple(inv) + tuple(ctx.zero() for _ in range(fam.m - 1 - len(inv)))
        residue = family_compose_params(fam, fam.param_vars(), padded)[k - 1]
        inv.append(-(residue * a.power(-k)))
    check = family_compose_params(fam, fam.param_vars(), tuple(inv))
    expected = (ctx.constant(1),) + tuple(ctx.zero() for _ in range(fam.m - 2))
    if tuple(check) != expected:
        raise RuntimeError("internal: inverse parameter solving failed")
    return tuple(inv)


def _render_identity_witness(witness):
    if witness is None:
        return None
    i, j, diff = witness
    return [i, j, diff.render()]


def family_membership_check(fam, alg):
    """Exact certificate that every member of the family is an automorphism:
    substituting the parametric matrix makes each defining equation the zero
    polynomial, and the determinant is a unit monomial (so every admissible
    parameter point gives an invertible matrix)."""
    ctx = fam.context
    eqs = _aut_equations(alg, lambda i, j: fam.matrix[i][j],
                         ctx.zero(), ctx.constant)
    m = alg.dim
    labels = ["unit e%d" % (u + 1) for u in range(m)]
    labels += ["e%d*e%d coeff e%d" % (i + 1, j + 1, u + 1)
               for i in range(m) for j in range(m) for u in range(m)]
    witness = None
    for label, eq in zip(labels, eqs):
        if not eq.is_zero():
            witness = {"equation": label, "residual": eq.render()}
            break
    det = sym_det([list(r) for r in fam.matrix])
    return {
        "ok": witness is None and det.is_unit_monomial(),
        "witness": witness,
        "det": det.render(),
        "det_unit_monomial": det.is_unit_monomial(),
    }


def family_closure_check(fam):
    """Exact certificate that the family is closed under composition: the
    matrix at the composed parameters equals M(tau) * M(sigma) identically
    in two independent copies of the parameters."""
    field = fam.context.field
    primed = tuple(p + "2" for p in fam.params)
    ctx2 = laurent_context(fam.params + primed,
                           invertible=("a", "a2"), field=field)
    first = tuple(ctx2.variable(p) for p in fam.params)
    second = tuple(ctx2.variable(p) for p in primed)
    m_first = _family_rows(ctx2, fam.m, first)
    m_second = _family_rows(ctx2, fam.m, second)
    composed = _compose_coeffs(ctx2, fam.m, first, second)
    m_composed = _family_rows(ctx2, fam.m, composed)
    # sigma = first, tau = second (applied first): M(tau) * M(sigma)
    product = sym_matmul([list(r) for r in m_second], [list(r) for r in m_first])
    ok, witness = matrix_identity_check([list(r) for r in m_composed], product)
    return {
        "ok": ok,
        "witness": _render_identity_witness(witness),
        "composed_params": tuple(c.render() for c in composed),
    }


def family_inverse_check(fam):
    """Exact certificate that the symbolic inverse parameters invert the
    family matrix on both sides."""
    inv = family_inverse_params(fam)
    m_inv = _family_rows(fam.context, fam.m, inv)
    ident = [[fam.context.constant(1) if i == j else fam.context.zero()
              for j in range(fam.m)] for i in range(fam.m)]
    left = sym_matmul([list(r) for r in m_inv], [list(r) for r in fam.matrix])
    right = sym_matmul([list(r) for r in fam.matrix], [list(r) for r in m_inv])
    ok_l, wit_l = matrix_identity_check(left, ident)
    ok_r, wit_r = matrix_identity_check(right, ident)
    return {
        "ok": ok_l and ok_r,
        "witness": _render_identity_witness(wit_l or wit_r),
        "inverse_params": tuple(c.render() for c in inv),
    }


def family_symbolic_checks(fam, alg=None):
    """Bundle of exact family certificates: the automorphism equations
    vanish identically, the determinant is a unit monomial, and composition
    and inversion hold at matrix level."""
    checks = {}
    if alg is not None:
        membership = family_membership_check(fam, alg)
        checks["equations_vanish"] = membership["witness"] is None
        checks["det_unit_monomial"] = membership["det_unit_monomial"]
        checks["det"] = membership["det"]
    else:
        det = sym_det([list(r) for r in fam.matrix])
        checks["det_unit_monomial"] = det.is_unit_monomial()
        checks["det"] = det.render()
    closure = family_closure_check(fam)
    checks["closure"] = closure["ok"]
    checks["closure_params"] = closure["composed_params"]
    inverse = family_inverse_check(fam)
    checks["inverse"] = inverse["ok"]
    checks["inverse_params"] = inverse["inverse_params"]
    return checks


# -- brute force over a finite field -----------------------------------------

def _solvable_assignment(eq, ctx):
    """A variable occurring in exactly one term, there linearly and alone:
    var = -(rest)/coeff.  Falls back to the one-variable-monomial rule
    (c * v^e = 0 forces v = 0 over a field)."""
    f = ctx.field
    terms = eq.terms
    for exp, c in terms.items():
        if sum(1 for e in exp if e) == 1 and max(exp) == 1:
            k = exp.index(1)
            if all(e2[k] == 0 for e2 in terms if e2 != exp):
                rest = LaurentPoly(ctx, {e: v for e, v in terms.items() if e != exp})
                return k, rest * ctx.constant(f.neg(f.inv(c)))
    if len(terms) == 1:
        ((exp, _),) = terms.items()
        live = [k for k, e in enumerate(exp) if e]
        if len(live) == 1:
            return live[0], ctx.zero()
    return None


def field_elements(f):
    return [f.coerce(v) for v in range(f.p)]


def brute_force_aut(alg, max_enumeration=10 ** 8):
    """All automorphism matrices over a finite ground field.

    The defining equations are first simplified by propagation (solving
    single-occurrence linear unknowns, possibly to polynomial values, and
    applying the one-variable-monomial rule); the surviving unknowns are
    enumerated exhaustively, with a hard bound on the search space size.
    """
    f = alg.field
    if f is QQ:
        raise ValueError("brute force enumeration needs a finite ground field")
    sysm = aut_constraints(alg)
    ctx = sysm.context
    m = alg.dim
    eqs = list(sysm.equations)
    assignments = {}
    progress = True
    while progress:
        progress = False
        for eq in eqs:
            if eq.is_zero():
                continue
            if eq.terms and all(not any(e) for e in eq.terms):
                return []  # nonzero constant equation: no solutions at all
            hit = _solvable_assignment(eq, ctx)
            if hit is None:
                continue
            k, value = hit
            sub = {ctx.names[k]: value}
            eqs = [e.substitute(sub) for e in eqs]
            assignments = {n: v.substitute(sub) for n, v in assignments.items()}
            assignments[ctx.names[k]] = value
            progress = True
            break
    eqs = [e for e in eqs if not e.is_zero()]
    free = [n for n in ctx.names if n not in assignments]
    space = f.p ** len(free)
    if space > max_enumeration:
        raise RuntimeError("automorphism search space too large: %d points" % space)
    found = []
    for values in itertools.product(field_elements(f), repeat=len(free)):
        # evaluate() needs every variable; assigned ones no longer occur in
        # the surviving equations or assignment values, so zeros are inert
        point = {name: f.zero for name in ctx.names}
        point.update(zip(free, values))
        if any(not f.is_zero(e.evaluate(point)) for e in eqs):
            continue
        full = dict(point)
        for name, value in assignments.items():
            full[name] = value.evaluate(point)
        matrix = tuple(tuple(full["c%d%d" % (i + 1, j + 1)]
                             for j in range(m)) for i in range(m))
        if f.is_zero(_det_scalar(matrix, f)):
            continue
        if not sysm.holds_at(matrix):
            raise RuntimeError("internal: propagation produced a non-solution")
        found.append(matrix)
    return found


def group_axiom_check(matrices, f):
    """Post-hoc group axioms for a finite set of invertible matrices under
    the matrix product: identity, closure, inverses."""
    if not matrices:
        return {"identity": False, "closure": False, "inverses": False}
    m = len(matrices[0])
    ident = tuple(tuple(f.one if i == j else f.zero for j in range(m))
                  for i in range(m))
    pool = set(matrices)
    result = {"identity": ident in pool, "closure": True, "inverses": True}
    for x in matrices:
        has_inverse = False
        for y in matrices:
            prod = _mat_mul_scalar(x, y, f)
            if prod not in pool:
                result["closure"] = False
            if prod == ident:
                has_inverse = True
        if not has_inverse:
            result["inverses"] = False
    return result


def _mat_mul_scalar(x, y, f):
    m = len(x)
    out = []
    for i in range(m):
        row = []
        for j in range(m):
            s = f.zero
            for k in range(m):
                s = f.add(s, f.mul(x[i][k], y[k][j]))
            row.append(s)
        out.append(tuple(row))
    return tuple(out)


def family_matches_brute_force(alg, fam=None):
    """Set equality between the instantiated parametric family and the brute
    force enumeration, for k[X]/(X^m) over a finite field."""
    f = alg.field
    m = alg.dim
    if fam is None:
        fam = truncated_polynomial_aut_family(m, field=f)
    enumerated = set(brute_force_aut(alg))
    instantiated = set()
    elements = field_elements(f)
    nonzero = [v for v in elements if not f.is_zero(v)]
    for lead in nonzero:
        for rest in itertools.product(elements, repeat=m - 2):
            instantiated.add(fam.instantiate((lead,) + rest))
    return {
        "family_size": len(instantiated),
        "enumerated_size": len(enumerated),
        "equal": instantiated == enumerated,
        "axioms": group_axiom_check(sorted(enumerated), f),
    }
