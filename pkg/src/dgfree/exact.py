"""Exact scalars and sparse linear algebra over Q and prime fields.

Two fields are supported: the rationals (elements are
:class:`fractions.Fraction`, always normalized) and prime fields F_p with
p >= 5 (elements are plain ints in [0, p)).  Everything is exact; no
floating point appears anywhere in this package.

The workhorse is :class:`Echelon`, an incremental echelon basis for a
stream of sparse vectors.  Feeding it the rows of a matrix gives rank and
kernel; feeding it the columns gives an image basis that supports exact
coset reduction.  Over Q the elimination is fraction-free: vectors are
scaled to content-free integer form and updated by cross-multiplication,
so no rational arithmetic happens inside the elimination loop.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class RationalField:
    """The field Q."""

    kind = "rational"

    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, value):
        if isinstance(value, Fraction):
            return value
        if isinstance(value, (int, str)):
            return Fraction(value)
        raise TypeError("cannot coerce %r into Q" % (value,))

    def add(self, x, y):
        return x + y

    def sub(self, x, y):
        return x - y

    def mul(self, x, y):
        return x * y

    def neg(self, x):
        return -x

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero in Q")
        return 1 / x

    def div(self, x, y):
        if y == 0:
            raise ZeroDivisionError("division by zero in Q")
        return x / y

    def is_zero(self, x):
        return x == 0

    def to_json(self, x):
        return int(x) if x.denominator == 1 else "%d/%d" % (x.numerator, x.denominator)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rational")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


class PrimeField:
    """The field F_p for a prime p >= 5.

    Elements are ints in [0, p).  The lower bound on p exists because the
    identities verified elsewhere in the package divide by 2, 3, 4 and 8.
    """

    kind = "prime"

    def __init__(self, p):
        if not _is_prime(p):
            raise ValueError("modulus %r is not prime" % (p,))
        if p < 5:
            raise ValueError("prime fields below 5 are not supported (p=%d)" % p)
        self.p = p
        self.zero = 0
        self.one = 1

    def coerce(self, value):
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, Fraction):
            return (value.numerator % self.p) * self.inv(value.denominator % self.p) % self.p
        if isinstance(value, str):
            return self.coerce(Fraction(value))
        raise TypeError("cannot coerce %r into F_%d" % (value, self.p))

    def add(self, x, y):
        return (x + y) % self.p

    def sub(self, x, y):
        return (x - y) % self.p

    def mul(self, x, y):
        return (x * y) % self.p

    def neg(self, x):
        return (-x) % self.p

    def inv(self, x):
        if x % self.p == 0:
            raise ZeroDivisionError("inverse of zero in F_%d" % self.p)
        return pow(x, -1, self.p)

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def is_zero(self, x):
        return x % self.p == 0

    def to_json(self, x):
        return x

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime", self.p))

    def __repr__(self):
        return "GF(%d)" % self.p


_GF_CACHE = {}


def GF(p):
    if p not in _GF_CACHE:
        _GF_CACHE[p] = PrimeField(p)
    return _GF_CACHE[p]


def field_from_json(obj):
    kind = obj.get("kind")
    if kind == "rational":
        return QQ
    if kind == "prime":
        return GF(int(obj["p"]))
    raise ValueError("unknown field kind %r" % (kind,))


def field_to_json(field):
    if field.kind == "rational":
        return {"kind": "rational"}
    return {"kind": "prime", "p": field.p}


class Matrix:
    """Immutable sparse matrix; absent entries are zero."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field, rows, cols, entries):
        self.field = field
        self.rows = rows
        self.cols = cols
        clean = {}
        for (i, j), v in entries.items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise ValueError("entry (%d,%d) outside %dx%d" % (i, j, rows, cols))
            v = field.coerce(v)
            if not field.is_zero(v):
                clean[(i, j)] = v
        self.entries = clean

    @classmethod
    def from_rows(cls, field, data, cols=None):
        rows = len(data)
        if cols is None:
            cols = len(data[0]) if rows else 0
        entries = {}
        for i, row in enumerate(data):
            if len(row) != cols:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                entries[(i, j)] = v
        return cls(field, rows, cols, entries)

    @classmethod
    def identity(cls, field, n):
        return cls(field, n, n, {(i, i): field.one for i in range(n)})

    @classmethod
    def zero(cls, field, rows, cols):
        return cls(field, rows, cols, {})

    def entry(self, i, j):
        return self.entries.get((i, j), self.field.zero)

    def row_dicts(self):
        rows = [dict() for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            rows[i][j] = v
        return rows

    def column(self, j):
        return {i: v for (i, jj), v in self.entries.items() if jj == j}

    def mul_vec(self, vec):
        """Matrix times a dense vector (list of length cols)."""
        if len(vec) != self.cols:
            raise ValueError("vector length %d != %d columns" % (len(vec), self.cols))
        f = self.field
        out = [f.zero] * self.rows
        for (i, j), v in self.entries.items():
            out[i] = f.add(out[i], f.mul(v, vec[j]))
        return out

    def matmul(self, other):
        if self.cols != other.rows or self.field != other.field:
            raise ValueError("shape or field mismatch in matmul")
        f = self.field
        acc = {}
        by_row = [dict() for _ in range(other.rows)]
        for (k, j), v in other.entries.items():
            by_row[k][j] = v
        for (i, k), u in self.entries.items():
            for j, v in by_row[k].items():
                key = (i, j)
                acc[key] = f.add(acc.get(key, f.zero), f.mul(u, v))
        return Matrix(f, self.rows, other.cols, acc)

    def transpose(self):
        return Matrix(self.field, self.cols, self.rows,
                      {(j, i): v for (i, j), v in self.entries.items()})

    def to_lists(self):
        return [[self.entry(i, j) for j in range(self.cols)]
                for i in range(self.rows)]

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.field == other.field
                and self.rows == other.rows and self.cols == other.cols
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.field, self.rows, self.cols,
                     tuple(sorted(self.entries.items()))))

    def __repr__(self):
        return "Matrix(%r, %dx%d, %d nonzero)" % (
            self.field, self.rows, self.cols, len(self.entries))


def _content_strip(vec):
    g = 0
    for v in vec.values():
        g = gcd(g, v)
        if g == 1:
            return vec
    if g > 1:
        for k in vec:
            vec[k] //= g
    return vec


def _to_int_vec(vec):
    """Clear denominators and strip content; keeps only nonzero entries."""
    lcm = 1
    for v in vec.values():
        if isinstance(v, Fraction):
            d = v.denominator
            lcm = lcm // gcd(lcm, d) * d
    out = {}
    for k, v in vec.items():
        w = int(v * lcm) if isinstance(v, Fraction) else v * lcm
        if w:
            out[k] = w
    return _content_strip(out)


class Echelon:
    """Incremental echelon basis of sparse vectors (dicts index -> scalar).

    The pivot of a vector is its minimum nonzero index (first nonzero in
    index order; deterministic).  Inserted vectors are reduced against the
    existing pivots and either become a new pivot or vanish.
    """

    __slots__ = ("field", "pivots", "_rational")

    def __init__(self, field):
        self.field = field
        self.pivots = {}
        self._rational = field.kind == "rational"

    @property
    def rank(self):
        return len(self.pivots)

    def pivot_positions(self):
        return sorted(self.pivots)

    def insert(self, vec):
        """Reduce vec against the basis; returns True if it became a pivot."""
        if self._rational:
            return self._insert_q(vec)
        return self._insert_p(vec)

    def _insert_q(self, vec):
        v = _to_int_vec(vec)
        pivots = self.pivots
        while v:
            r = min(v)
            piv = pivots.get(r)
            if piv is None:
                if v[r] < 0:
                    for k in v:
                        v[k] = -v[k]
                pivots[r] = v
                return True
            a, b = piv[r], v[r]
            new = {k: a * x for k, x in v.items()}
            for k, y in piv.items():
                w = new.get(k, 0) - b * y
                if w:
                    new[k] = w
                elif k in new:
                    del new[k]
            v = _content_strip(new)
        return False

    def _insert_p(self, vec):
        f = self.field
        p = f.p
        v = {k: x % p for k, x in vec.items() if x % p}
        pivots = self.pivots
        while v:
            r = min(v)
            piv = pivots.get(r)
            if piv is None:
                inv = pow(v[r], -1, p)
                pivots[r] = {k: (x * inv) % p for k, x in v.items()}
                return True
            b = v[r]
            new = dict(v)
            for k, y in piv.items():
                w = (new.get(k, 0) - b * y) % p
                if w:
                    new[k] = w
                elif k in new:
                    del new[k]
            v = new
        return False

    def reduce(self, vec):
        """Exact reduction of vec modulo the span; kills every pivot index.

        Unlike insert this does not rescale the input, so the result is the
        unique coset representative vanishing at all pivot positions.
        """
        f = self.field
        pivots = self.pivots
        v = {k: x for k, x in vec.items() if not f.is_zero(x)}
        while True:
            hits = [k for k in v if k in pivots]
            if not hits:
                return v
            r = min(hits)
            piv = pivots[r]
            c = f.div(v[r], f.coerce(piv[r]))
            for k, y in piv.items():
                w = f.sub(v.get(k, f.zero), f.mul(c, f.coerce(y)))
                if f.is_zero(w):
                    v.pop(k, None)
                else:
                    v[k] = w
        # not reached

    def contains(self, vec):
        return not self.reduce(vec)

    def kernel_vector(self, free):
        """Treating inserted vectors as matrix rows, the unique kernel
        vector with coordinate 1 at the free index and 0 at every other
        non-pivot index."""
        f = self.field
        if free in self.pivots:
            raise ValueError("index %d is a pivot column" % free)
        v = {free: f.one}
        for p_col in sorted(self.pivots, reverse=True):
            row = self.pivots[p_col]
            s = f.zero
            for k, y in row.items():
                if k != p_col and k in v:
                    s = f.add(s, f.mul(f.coerce(y), v[k]))
            if not f.is_zero(s):
                v[p_col] = f.neg(f.div(s, f.coerce(row[p_col])))
        return v


def rank_and_kernel(m):
    """Rank of m and the reduced-echelon kernel basis of m*v = 0.

    Kernel vectors are returned as dense lists, ordered by their free
    column; each has entry 1 at its own free column and 0 at the others.
    """
    ech = Echelon(m.field)
    for row in m.row_dicts():
        if row:
            ech.insert(row)
    rank = ech.rank
    kernel = []
    f = m.field
    for j in range(m.cols):
        if j not in ech.pivots:
            vec = ech.kernel_vector(j)
            kernel.append([vec.get(c, f.zero) for c in range(m.cols)])
    return rank, kernel


def solve(m, b):
    """An exact solution v of m*v = b, or None if b is outside the column
    space (detected by an inconsistent echelon row)."""
    if len(b) != m.rows:
        raise ValueError("right-hand side length %d != %d rows" % (len(b), m.rows))
    f = m.field
    aug = m.cols  # index of the appended right-hand-side column
    ech = Echelon(f)
    rows = m.row_dicts()
    for i, row in enumerate(rows):
        bi = f.coerce(b[i])
        if not f.is_zero(bi):
            row = dict(row)
            row[aug] = bi
        if row:
            ech.insert(row)
    if aug in ech.pivots:
        return None
    v = {}
    for p_col in sorted(ech.pivots, reverse=True):
        row = ech.pivots[p_col]
        rhs = f.coerce(row.get(aug, 0))
        s = f.zero
        for k, y in row.items():
            if k not in (p_col, aug) and k in v:
                s = f.add(s, f.mul(f.coerce(y), v[k]))
        val = f.div(f.sub(rhs, s), f.coerce(row[p_col]))
        if not f.is_zero(val):
            v[p_col] = val
    return [v.get(j, f.zero) for j in range(m.cols)]


def reduced_row_echelon(vectors, field):
    """Fully reduced echelon basis (pivots 1, back-substituted) of the span
    of the given sparse vectors.  Returns rows sorted by pivot index.
    Intended for small systems where readable canonical output matters."""
    ech = Echelon(field)
    for v in vectors:
        ech.insert(v)
    rows = []
    for p in ech.pivot_positions():
        row = ech.pivots[p]
        c = field.inv(field.coerce(row[p]))
        rows.append({k: field.mul(field.coerce(x), c) for k, x in row.items()})
    # back-substitute so every pivot column is zero elsewhere
    for idx in range(len(rows) - 1, -1, -1):
        p = min(rows[idx])
        for other in range(idx):
            row = rows[other]
            if p in row:
                c = row[p]
                for k, x in rows[idx].items():
                    w = field.sub(row.get(k, field.zero), field.mul(c, x))
                    if field.is_zero(w):
                        row.pop(k, None)
                    else:
                        row[k] = w
    return rows
