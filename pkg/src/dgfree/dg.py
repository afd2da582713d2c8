"""Differentials of DG free algebras from crisscross matrix tuples.

An ordered n-tuple (M^1, ..., M^n) of n x n matrices induces a degree +1
map on generators, d(x_i) = sum_{j,k} M^i[j,k] x_j x_k, extended to the
whole free algebra by the graded Leibniz rule.  The induced map squares to
zero exactly when the tuple satisfies the crisscross condition

    sum_k [ c_j^k r_k^i - c_k^i r_j^k ] = 0   for all i, j,

where c_j^k is column j of M^k and r_k^i is row k of M^i (outer products).
Both directions are exercised exhaustively in the test suite for n = 2.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .exact import Matrix, QQ, field_from_json, field_to_json
from .freealg import GradedElement, default_names, parse, render


@dataclass(frozen=True)
class CrisscrossTuple:
    """Ordered tuple of n square matrices over one field; unvalidated."""

    field: object
    n: int
    matrices: tuple

    def __post_init__(self):
        if len(self.matrices) != self.n:
            raise ValueError("expected %d matrices, got %d" % (self.n, len(self.matrices)))
        for m in self.matrices:
            if m.rows != self.n or m.cols != self.n:
                raise ValueError("matrices must be %dx%d" % (self.n, self.n))
            if m.field != self.field:
                raise ValueError("matrix field differs from tuple field")


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    witness: object = None

    def __bool__(self):
        return self.ok


def crisscross_check(t):
    """Verify the crisscross condition; on failure the witness is the first
    (i, j) pair in lexicographic order together with the nonzero n x n sum.
    Indices in the witness are 1-based."""
    f = t.field
    n = t.n
    M = t.matrices
    for i in range(n):
        for j in range(n):
            acc = {}
            for k in range(n):
                # c_j^k r_k^i: outer product of column j of M^k and row k of M^i
                for s in range(n):
                    csj = M[k].entry(s, j)
                    if f.is_zero(csj):
                        continue
                    for t_ in range(n):
                        r = M[i].entry(k, t_)
                        if f.is_zero(r):
                            continue
                        key = (s, t_)
                        acc[key] = f.add(acc.get(key, f.zero), f.mul(csj, r))
                # c_k^i r_j^k: outer product of column k of M^i and row j of M^k
                for s in range(n):
                    cik = M[i].entry(s, k)
                    if f.is_zero(cik):
                        continue
                    for t_ in range(n):
                        r = M[k].entry(j, t_)
                        if f.is_zero(r):
                            continue
                        key = (s, t_)
                        acc[key] = f.sub(acc.get(key, f.zero), f.mul(cik, r))
            acc = {k: v for k, v in acc.items() if not f.is_zero(v)}
            if acc:
                return CheckResult(False, (i + 1, j + 1, Matrix(f, n, n, acc)))
    return CheckResult(True)


def generator_image(t, i):
    """d(x_i) for a raw tuple: the degree-2 element sum M^i[j,k] x_j x_k."""
    if not 1 <= i <= t.n:
        raise ValueError("generator index %d outside [1,%d]" % (i, t.n))
    m = t.matrices[i - 1]
    terms = {}
    for (j, k), c in m.entries.items():
        terms[(j + 1, k + 1)] = c
    return GradedElement(t.field, t.n, terms)


def apply_differential(t, e):
    """Leibniz extension of generator_image to any element (term by term:
    d(x_{a_1}..x_{a_d}) = sum_i (-1)^(i-1) x_{a_1}.. d(x_{a_i}) ..x_{a_d})."""
    if e.n != t.n or e.field != t.field:
        raise ValueError("element does not live over this tuple")
    f = t.field
    images = [generator_image(t, i) for i in range(1, t.n + 1)]
    out = {}
    for word, c in e.terms.items():
        for pos, letter in enumerate(word):
            img = images[letter - 1]
            if img.is_zero():
                continue
            sign_c = c if pos % 2 == 0 else f.neg(c)
            head, tail = word[:pos], word[pos + 1:]
            for mid, mc in img.terms.items():
                w = head + mid + tail
                s = f.add(out.get(w, f.zero), f.mul(sign_c, mc))
                if f.is_zero(s):
                    out.pop(w, None)
                else:
                    out[w] = s
    return GradedElement(f, t.n, out)


def d_squared_on_generators(t):
    """True iff d(d(x_i)) = 0 for every generator.  Because d squared is a
    derivation, this already forces d^2 = 0 globally; random elements are
    re-checked in the test suite.  On failure the witness is the first bad
    generator index (1-based) and the nonzero degree-3 element."""
    if isinstance(t, DgFreeAlgebra):
        t = t.tuple
    for i in range(1, t.n + 1):
        defect = apply_differential(t, generator_image(t, i))
        if not defect.is_zero():
            return CheckResult(False, (i, defect))
    return CheckResult(True)


class DgFreeAlgebra:
    """A validated crisscross tuple together with generator names.

    The crisscross condition is enforced at construction.  Instances cache
    per-degree elimination data for the cohomology routines; the cache is
    an implementation detail and does not affect observable state.
    """

    def __init__(self, tuple_, names=None):
        check = crisscross_check(tuple_)
        if not check.ok:
            i, j, m = check.witness
            raise ValueError("tuple is not crisscross; first failure at (i,j)=(%d,%d)" % (i, j))
        self.tuple = tuple_
        self.names = tuple(names) if names else default_names(tuple_.n)
        if len(self.names) != tuple_.n:
            raise ValueError("need %d generator names" % tuple_.n)
        self._degree_cache = {}

    @property
    def field(self):
        return self.tuple.field

    @property
    def n(self):
        return self.tuple.n

    def zero(self):
        return GradedElement.zero(self.field, self.n)

    def unit(self):
        return GradedElement.unit(self.field, self.n)

    def generator(self, i):
        return GradedElement.generator(self.field, self.n, i)

    def differential_on_generator(self, i):
        return generator_image(self.tuple, i)

    def differential(self, e):
        return apply_differential(self.tuple, e)

    def parse(self, text):
        return parse(text, self.field, self.names)

    def render(self, e):
        return render(e, self.names)

    def __eq__(self, other):
        return (isinstance(other, DgFreeAlgebra) and other.tuple == self.tuple
                and other.names == self.names)

    def __hash__(self):
        return hash((self.tuple.field, self.tuple.n, self.tuple.matrices, self.names))

    def __repr__(self):
        return "DgFreeAlgebra(n=%d, %r)" % (self.n, self.names)


_PRESET_SPECS = {
    # d(x1) = x3*x3, d(x2) = x2*x2, d(x3) = 0
    "a1": {
        "names": ("x1", "x2", "x3"),
        "matrices": [{(2, 2): 1}, {(1, 1): 1}, {}],
    },
    # d(y1) = y3*y3, d(y2) = y1*y3 + y3*y1, d(y3) = 0
    "a2": {
        "names": ("y1", "y2", "y3"),
        "matrices": [{(2, 2): 1}, {(0, 2): 1, (2, 0): 1}, {}],
    },
}


def preset_tuple(name, field=QQ):
    spec = _PRESET_SPECS.get(name)
    if spec is None:
        raise ValueError("unknown algebra preset %r" % (name,))
    n = len(spec["names"])
    mats = tuple(Matrix(field, n, n, dict(m)) for m in spec["matrices"])
    return CrisscrossTuple(field, n, mats)


def preset_algebra(name, field=QQ):
    spec = _PRESET_SPECS.get(name)
    if spec is None:
        raise ValueError("unknown algebra preset %r" % (name,))
    return DgFreeAlgebra(preset_tuple(name, field), names=spec["names"])


def algebra_preset_names():
    return sorted(_PRESET_SPECS)


def tuple_to_json(t, names=None):
    obj = {
        "field": field_to_json(t.field),
        "generators": t.n,
        "matrices": [
            [[t.field.to_json(m.entry(i, j)) for j in range(t.n)] for i in range(t.n)]
            for m in t.matrices
        ],
    }
    if names:
        obj["names"] = list(names)
    return obj


def tuple_from_json(obj):
    field = field_from_json(obj["field"])
    n = int(obj["generators"])
    raw = obj["matrices"]
    if len(raw) != n:
        raise ValueError("expected %d matrices" % n)
    mats = []
    for m in raw:
        if len(m) != n or any(len(row) != n for row in m):
            raise ValueError("matrices must be %dx%d" % (n, n))
        entries = {}
        for i, row in enumerate(m):
            for j, v in enumerate(row):
                entries[(i, j)] = field.coerce(v)
        mats.append(Matrix(field, n, n, entries))
    names = obj.get("names")
    return CrisscrossTuple(field, n, tuple(mats)), names


def load_tuple(source):
    """Resolve an algebra argument: preset name first, then a JSON path."""
    if source in _PRESET_SPECS:
        spec = _PRESET_SPECS[source]
        return preset_tuple(source), spec["names"]
    with open(source, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    return tuple_from_json(obj)


def load_algebra(source):
    t, names = load_tuple(source)
    return DgFreeAlgebra(t, names=names)
