"""Exact multivariate Laurent polynomials for symbolic identity checking.

Variables are declared once in a context, each either ordinary or
invertible; negative exponents are only allowed on invertible variables.
Polynomials are dictionaries from exponent tuples to nonzero field scalars,
so equality of canonical forms is plain dictionary equality.  Identity
checks on matrices of such polynomials are done entry-wise and can be
cross-checked by evaluation at random points.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .exact import QQ


@dataclass(frozen=True)
class LaurentContext:
    field: object
    names: tuple
    invertible: tuple

    def __post_init__(self):
        if len(self.names) != len(set(self.names)):
            raise ValueError("duplicate variable names")
        if len(self.invertible) != len(self.names):
            raise ValueError("invertible flags must match variable names")

    def index(self, name):
        return self.names.index(name)

    def variable(self, name):
        i = self.index(name)
        exp = tuple(1 if k == i else 0 for k in range(len(self.names)))
        return LaurentPoly(self, {exp: self.field.one})

    def constant(self, value):
        c = self.field.coerce(value)
        if self.field.is_zero(c):
            return LaurentPoly(self, {})
        zero_exp = (0,) * len(self.names)
        return LaurentPoly(self, {zero_exp: c})

    def zero(self):
        return LaurentPoly(self, {})


def laurent_context(names, invertible=(), field=QQ):
    inv = tuple(n in set(invertible) for n in names)
    return LaurentContext(field, tuple(names), inv)


class LaurentPoly:
    __slots__ = ("context", "terms")

    def __init__(self, context, terms):
        f = context.field
        clean = {}
        for exp, c in terms.items():
            if f.is_zero(c):
                continue
            for k, e in enumerate(exp):
                if e < 0 and not context.invertible[k]:
                    raise ValueError(
                        "negative exponent on non-invertible variable %r"
                        % context.names[k])
            clean[tuple(exp)] = c
        self.context = context
        self.terms = clean

    def is_zero(self):
        return not self.terms

    def is_one(self):
        zero_exp = (0,) * len(self.context.names)
        return self.terms == {zero_exp: self.context.field.one}

    def __eq__(self, other):
        return (isinstance(other, LaurentPoly)
                and self.context == other.context
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.context.names, tuple(sorted(self.terms.items()))))

    def __add__(self, other):
        other = self._coerce(other)
        f = self.context.field
        out = dict(self.terms)
        for exp, c in other.terms.items():
            s = f.add(out.get(exp, f.zero), c)
            if f.is_zero(s):
                out.pop(exp, None)
            else:
                out[exp] = s
        return LaurentPoly(self.context, out)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        f = self.context.field
        return LaurentPoly(self.context, {e: f.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        f = self.context.field
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                s = f.add(out.get(exp, f.zero), f.mul(c1, c2))
                if f.is_zero(s):
                    out.pop(exp, None)
                else:
                    out[exp] = s
        return LaurentPoly(self.context, out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            if other.context != self.context:
                raise ValueError("mixed Laurent contexts")
            return other
        return self.context.constant(other)

    def is_unit_monomial(self):
        """A single term whose non-invertible variables have exponent 0."""
        if len(self.terms) != 1:
            return False
        (exp,) = self.terms
        return all(e == 0 or self.context.invertible[k]
                   for k, e in enumerate(exp))

    def inverse(self):
        if not self.is_unit_monomial():
            raise ValueError("only unit monomials are invertible")
        ((exp, c),) = self.terms.items()
        f = self.context.field
        return LaurentPoly(self.context, {tuple(-e for e in exp): f.inv(c)})

    def power(self, k):
        if k < 0:
            return self.inverse().power(-k)
        out = self.context.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def substitute(self, mapping):
        """Ring homomorphism sending each named variable to the given
        polynomial; unnamed variables map to themselves.  Variables with
        negative exponents must be sent to unit monomials."""
        ctx = self.context
        images = []
        for k, name in enumerate(ctx.names):
            if name in mapping:
                img = mapping[name]
                if not isinstance(img, LaurentPoly):
                    img = ctx.constant(img)
                elif img.context != ctx:
                    raise ValueError("substitute image has a different context")
                images.append(img)
            else:
                images.append(ctx.variable(name))
        out = LaurentPoly(ctx, {})
        for exp, c in self.terms.items():
            term = ctx.constant(c)
            for k, e in enumerate(exp):
                if e:
                    term = term * images[k].power(e)
            out = out + term
        return out

    def evaluate(self, point):
        """Exact evaluation at a dict name -> scalar; invertible variables
        must receive nonzero values."""
        f = self.context.field
        vals = [f.coerce(point[name]) for name in self.context.names]
        total = f.zero
        for exp, c in self.terms.items():
            v = c
            for k, e in enumerate(exp):
                if e == 0:
                    continue
                base = vals[k]
                if e < 0:
                    base = f.inv(base)
                    e = -e
                for _ in range(e):
                    v = f.mul(v, base)
            total = f.add(total, v)
        return total

    def render(self):
        if not self.terms:
            return "0"
        f = self.context.field
        names = self.context.names

        def key(item):
            exp, _ = item
            return (-sum(exp), tuple(-e for e in exp))

        parts = []
        for exp, c in sorted(self.terms.items(), key=key):
            factors = []
            for k, e in enumerate(exp):
                if e == 1:
                    factors.append(names[k])
                elif e:
                    factors.append("%s^%d" % (names[k], e))
            coeff = f.to_json(c)
            if factors and coeff == 1:
                body = "*".join(factors)
            elif factors and coeff == -1:
                body = "-" + "*".join(factors)
            elif factors:
                body = "%s*%s" % (coeff, "*".join(factors))
            else:
                body = str(coeff)
            parts.append(body)
        text = parts[0]
        for p in parts[1:]:
            if p.startswith("-"):
                text += " - " + p[1:]
            else:
                text += " + " + p
        return text

    def __repr__(self):
        return "LaurentPoly(%s)" % self.render()


def sym_identity(ctx, n):
    one = ctx.constant(1)
    zero = LaurentPoly(ctx, {})
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def sym_matmul(a, b):
    n, mid, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = LaurentPoly(a[0][0].context, {})
            for k in range(mid):
                acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def sym_det(a):
    n = len(a)
    ctx = a[0][0].context
    total = LaurentPoly(ctx, {})
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = ctx.constant(sign)
        for i in range(n):
            term = term * a[i][perm[i]]
        total = total + term
    return total


def matrix_identity_check(a, b):
    """Entry-wise equality of canonical forms.  Returns (True, None) or
    (False, (i, j, difference polynomial)) at the first mismatch."""
    if len(a) != len(b) or any(len(r) != len(s) for r, s in zip(a, b)):
        raise ValueError("matrix shape mismatch")
    for i, (ra, rb) in enumerate(zip(a, b)):
        for j, (x, y) in enumerate(zip(ra, rb)):
            if x != y:
                return False, (i, j, x - y)
    return True, None


def random_point(ctx, rng, bound=19):
    """A random evaluation point; invertible variables get nonzero values."""
    point = {}
    for name, inv in zip(ctx.names, ctx.invertible):
        if ctx.field is QQ:
            v = rng.randint(-bound, bound)
            while inv and v == 0:
                v = rng.randint(-bound, bound)
        else:
            p = ctx.field.p
            v = rng.randrange(1 if inv else 0, p)
        point[name] = ctx.field.coerce(v)
    return point


def matrix_identity_spot_check(a, b, rng, trials=20):
    """Schwartz-Zippel style cross-check of a matrix identity at random
    points; returns False only on a genuine counterexample point."""
    ctx = a[0][0].context
    for _ in range(trials):
        point = random_point(ctx, rng)
        for ra, rb in zip(a, b):
            for x, y in zip(ra, rb):
                if x.evaluate(point) != y.evaluate(point):
                    return False
    return True
