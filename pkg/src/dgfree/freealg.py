"""The free noncommutative graded algebra on degree-1 generators.

Words are tuples of generator indices (1-based); the empty word is the
unit.  A :class:`GradedElement` is a sparse linear combination of words
with coefficients in one of the exact fields from :mod:`dgfree.exact`.
Coordinates of a homogeneous element live in the lexicographically ordered
basis of words of its degree; that order is the global convention for every
matrix in the package.
"""

from __future__ import annotations

import itertools
import re

from .exact import QQ


def degree_basis(n, d):
    """All n**d words of length d in lexicographic order.

    >>> degree_basis(3, 1)
    [(1,), (2,), (3,)]
    >>> degree_basis(2, 2)
    [(1, 1), (1, 2), (2, 1), (2, 2)]
    """
    if d < 0:
        raise ValueError("negative degree")
    return list(itertools.product(range(1, n + 1), repeat=d))


def word_index(word, n):
    """Position of a word inside degree_basis(n, len(word))."""
    idx = 0
    for letter in word:
        if not 1 <= letter <= n:
            raise ValueError("letter %r outside [1,%d]" % (letter, n))
        idx = idx * n + (letter - 1)
    return idx


def word_at(index, n, d):
    """Inverse of word_index for degree d."""
    letters = []
    for _ in range(d):
        index, r = divmod(index, n)
        letters.append(r + 1)
    return tuple(reversed(letters))


class GradedElement:
    """Sparse element of k<x_1..x_n>; terms map words to nonzero scalars."""

    __slots__ = ("field", "n", "terms")

    def __init__(self, field, n, terms=None):
        self.field = field
        self.n = n
        clean = {}
        if terms:
            for word, c in terms.items():
                c = field.coerce(c)
                if not field.is_zero(c):
                    for letter in word:
                        if not 1 <= letter <= n:
                            raise ValueError("letter %r outside [1,%d]" % (letter, n))
                    clean[tuple(word)] = c
        self.terms = clean

    @classmethod
    def zero(cls, field, n):
        return cls(field, n)

    @classmethod
    def unit(cls, field, n):
        return cls(field, n, {(): field.one})

    @classmethod
    def generator(cls, field, n, i):
        return cls(field, n, {(i,): field.one})

    def is_zero(self):
        return not self.terms

    def degrees(self):
        return sorted({len(w) for w in self.terms})

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    def degree(self):
        ds = self.degrees()
        if len(ds) != 1:
            raise ValueError("element is zero or mixed; no single degree")
        return ds[0]

    def _check_compatible(self, other):
        if not isinstance(other, GradedElement):
            raise TypeError("expected GradedElement, got %r" % (other,))
        if other.n != self.n or other.field != self.field:
            raise ValueError("generator count or field mismatch")

    def __add__(self, other):
        self._check_compatible(other)
        f = self.field
        terms = dict(self.terms)
        for w, c in other.terms.items():
            s = f.add(terms.get(w, f.zero), c)
            if f.is_zero(s):
                terms.pop(w, None)
            else:
                terms[w] = s
        return GradedElement(f, self.n, terms)

    def __neg__(self):
        f = self.field
        return GradedElement(f, self.n, {w: f.neg(c) for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        """Bilinear extension of word concatenation."""
        self._check_compatible(other)
        f = self.field
        terms = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                s = f.add(terms.get(w, f.zero), f.mul(c1, c2))
                if f.is_zero(s):
                    terms.pop(w, None)
                else:
                    terms[w] = s
        return GradedElement(f, self.n, terms)

    def scale(self, c):
        f = self.field
        c = f.coerce(c)
        return GradedElement(f, self.n, {w: f.mul(c, v) for w, v in self.terms.items()})

    def power(self, k):
        if k < 0:
            raise ValueError("negative power")
        out = GradedElement.unit(self.field, self.n)
        for _ in range(k):
            out = out * self
        return out

    def homogeneous_part(self, d):
        return GradedElement(self.field, self.n,
                             {w: c for w, c in self.terms.items() if len(w) == d})

    def coefficient(self, word):
        return self.terms.get(tuple(word), self.field.zero)

    def __eq__(self, other):
        return (isinstance(other, GradedElement) and other.field == self.field
                and other.n == self.n and other.terms == self.terms)

    def __hash__(self):
        return hash((self.field, self.n, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        return "GradedElement(%s)" % render(self)


def to_coord_dict(e, d):
    """Sparse coordinates of a homogeneous element in degree_basis(e.n, d)."""
    out = {}
    for w, c in e.terms.items():
        if len(w) != d:
            raise ValueError("element is not homogeneous of degree %d" % d)
        out[word_index(w, e.n)] = c
    return out


def to_vector(e, d):
    """Dense coordinate vector of a homogeneous degree-d element."""
    f = e.field
    vec = [f.zero] * (e.n ** d)
    for idx, c in to_coord_dict(e, d).items():
        vec[idx] = c
    return vec


def from_vector(vec, field, n, d):
    """Inverse of to_vector; accepts a dense list or a sparse index dict."""
    items = vec.items() if isinstance(vec, dict) else enumerate(vec)
    terms = {}
    for idx, c in items:
        c = field.coerce(c)
        if not field.is_zero(c):
            terms[word_at(idx, n, d)] = c
    return GradedElement(field, n, terms)


def default_names(n, prefix="x"):
    return tuple("%s%d" % (prefix, i) for i in range(1, n + 1))


def render(e, names=None):
    """Text form such as "x1*x3 + x3*x1"; the zero element renders as "0"."""
    if e.is_zero():
        return "0"
    names = names or default_names(e.n)
    f = e.field
    parts = []
    for w in sorted(e.terms, key=lambda w: (len(w), w)):
        c = e.terms[w]
        word_txt = "*".join(names[i - 1] for i in w) if w else "1"
        if f.kind == "rational":
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            coeff_txt = "" if (mag == 1 and w) else f.to_json(mag).__str__()
        else:
            sign = "+"
            coeff_txt = "" if (c == 1 and w) else str(c)
        if coeff_txt and w:
            term = "%s*%s" % (coeff_txt, word_txt)
        elif coeff_txt:
            term = coeff_txt
        else:
            term = word_txt
        parts.append((sign, term))
    first_sign, first_term = parts[0]
    text = ("-" if first_sign == "-" else "") + first_term
    for sign, term in parts[1:]:
        text += " %s %s" % (sign, term)
    return text


_TOKEN = re.compile(r"\s*([A-Za-z_]\w*|\d+|[+\-*/()])")


def _tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError("cannot tokenize %r at position %d" % (text, pos))
        out.append(m.group(1))
        pos = m.end()
    return out


def parse(text, field, names):
    """Parse the grammar produced by render: signed sums of '*'-separated
    factors, each factor a generator name or an integer (with optional
    '/denominator')."""
    names = tuple(names)
    index = {name: i + 1 for i, name in enumerate(names)}
    n = len(names)
    tokens = _tokenize(text)
    if not tokens:
        raise ValueError("empty element text")
    result = GradedElement.zero(field, n)
    pos = 0
    sign = 1
    if tokens[pos] in "+-":
        sign = -1 if tokens[pos] == "-" else 1
        pos += 1
    while pos < len(tokens):
        coeff = field.coerce(sign)
        word = []
        expect_factor = True
        while pos < len(tokens):
            tok = tokens[pos]
            if tok in "+-":
                if expect_factor:
                    raise ValueError("misplaced sign in %r" % text)
                break
            if tok == "*":
                if expect_factor:
                    raise ValueError("misplaced '*' in %r" % text)
                pos += 1
                expect_factor = True
                continue
            if not expect_factor:
                raise ValueError("missing '*' between factors in %r" % text)
            if tok.isdigit():
                num = int(tok)
                if pos + 2 < len(tokens) and tokens[pos + 1] == "/" and tokens[pos + 2].isdigit():
                    coeff = field.mul(coeff, field.coerce("%s/%s" % (num, tokens[pos + 2])))
                    pos += 3
                else:
                    coeff = field.mul(coeff, field.coerce(num))
                    pos += 1
            elif tok in index:
                word.append(index[tok])
                pos += 1
            else:
                raise ValueError("unknown factor %r in %r" % (tok, text))
            expect_factor = False
        term = GradedElement(field, n, {tuple(word): coeff})
        result = result + term
        if pos < len(tokens):
            sign = -1 if tokens[pos] == "-" else 1
            pos += 1
            if pos == len(tokens):
                raise ValueError("dangling sign in %r" % text)
    return result
