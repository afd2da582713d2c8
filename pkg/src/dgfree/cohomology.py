"""Degree-wise cohomology of a DG free algebra.

Everything is exact linear algebra in the lexicographic word bases: the
degree-d boundary matrix has the coordinates of d(w) as its column for each
word w of length d.  Ranks and kernels come from a row echelon of that
matrix; images (for coset reduction and coboundary tests) from a column
echelon.  Both are cached per algebra and degree.

Canonical representatives: a class is stored as the unique coset member
whose coordinates vanish at every pivot row of the image echelon, rescaled
so its lexicographically first nonzero coordinate is 1.  Class equality is
equality of these canonical forms.  Scalar-sensitive checks (relations and
commutation claims in ring presentations) are therefore performed on the
underlying elements via coboundary tests, never via class equality.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass

from .exact import Echelon, Matrix, solve
from .freealg import (GradedElement, from_vector, to_coord_dict, to_vector,
                      word_at, word_index)
from .dg import DgFreeAlgebra, preset_algebra

DEFAULT_MAX_DEGREE = 6
_HARD_CAP = 9
_ENV_CAP = "DGFREE_MAX_DEGREE"


def max_degree_cap():
    """Hard cap on max_degree (the degree-d component has n**d words).
    The environment variable DGFREE_MAX_DEGREE may raise it to 10."""
    raw = os.environ.get(_ENV_CAP)
    if raw is None:
        return _HARD_CAP
    try:
        value = int(raw)
    except ValueError:
        raise ValueError("%s must be an integer, got %r" % (_ENV_CAP, raw))
    if not 1 <= value <= 10:
        raise ValueError("%s must be in [1,10], got %d" % (_ENV_CAP, value))
    return value


def _boundary_columns(a, d):
    """Sparse columns of the degree-d boundary matrix: for each word index
    the dict (degree d+1 word index) -> coefficient."""
    key = ("cols", d)
    cached = a._degree_cache.get(key)
    if cached is not None:
        return cached
    f = a.field
    n = a.n
    images = []
    for i in range(1, n + 1):
        img = a.differential_on_generator(i)
        images.append(sorted(img.terms.items()))
    cols = []
    for w_idx in range(n ** d):
        word = word_at(w_idx, n, d)
        col = {}
        for pos, letter in enumerate(word):
            img = images[letter - 1]
            if not img:
                continue
            negate = pos % 2 == 1
            head, tail = word[:pos], word[pos + 1:]
            for pair, c in img:
                target = word_index(head + pair + tail, n)
                if negate:
                    c = f.neg(c)
                s = f.add(col.get(target, f.zero), c)
                if f.is_zero(s):
                    col.pop(target, None)
                else:
                    col[target] = s
        cols.append(col)
    a._degree_cache[key] = cols
    return cols


def boundary_matrix(a, d):
    """The n^(d+1) x n^d matrix of the degree-d differential."""
    cols = _boundary_columns(a, d)
    entries = {}
    for j, col in enumerate(cols):
        for i, v in col.items():
            entries[(i, j)] = v
    return Matrix(a.field, a.n ** (d + 1), a.n ** d, entries)


def _row_echelon(a, d):
    """Echelon of the rows of the degree-d boundary matrix (rank, kernel)."""
    key = ("rows", d)
    ech = a._degree_cache.get(key)
    if ech is not None:
        return ech
    rows = {}
    for j, col in enumerate(_boundary_columns(a, d)):
        for i, v in col.items():
            rows.setdefault(i, {})[j] = v
    ech = Echelon(a.field)
    for i in sorted(rows):
        ech.insert(rows[i])
    a._degree_cache[key] = ech
    return ech


def _image_echelon(a, d):
    """Column echelon of the degree-(d-1) boundary matrix: an echelon basis
    of the coboundaries inside degree d."""
    key = ("image", d)
    ech = a._degree_cache.get(key)
    if ech is not None:
        return ech
    ech = Echelon(a.field)
    if d > 0:
        for col in _boundary_columns(a, d - 1):
            if col:
                ech.insert(col)
    a._degree_cache[key] = ech
    return ech


def boundary_rank(a, d):
    if d < 0:
        return 0
    return _row_echelon(a, d).rank


def boundary_nullity(a, d):
    return a.n ** d - boundary_rank(a, d)


def cohomology_dim(a, d):
    """dim H^d = nullity of the degree-d boundary minus rank of the
    previous one."""
    return boundary_nullity(a, d) - boundary_rank(a, d - 1)


@dataclass(frozen=True)
class CohomologyClass:
    degree: int
    representative: GradedElement

    def is_zero(self):
        return self.representative.is_zero()

    def __repr__(self):
        return "CohomologyClass(deg=%d, %r)" % (self.degree, self.representative)


def _canonical_coords(a, coords, d):
    """Coset-reduce sparse degree-d coordinates modulo the coboundaries."""
    return _image_echelon(a, d).reduce(coords)


def canonical_class(a, e, degree=None):
    """The canonical class of a cocycle: coset-reduced representative with
    leading (lexicographically first) coefficient 1."""
    if degree is None:
        degree = e.degree()
    if not a.differential(e).is_zero():
        raise ValueError("element is not a cocycle")
    coords = to_coord_dict(e, degree)
    reduced = _canonical_coords(a, coords, degree)
    f = a.field
    if reduced:
        lead = f.coerce(reduced[min(reduced)])
        inv = f.inv(lead)
        reduced = {k: f.mul(inv, v) for k, v in reduced.items()}
    rep = from_vector(reduced, f, a.n, degree)
    return CohomologyClass(degree, rep)


def cohomology_basis(a, d):
    """Canonical basis classes of H^d, pairwise independent modulo
    coboundaries, found by scanning the reduced-echelon kernel basis."""
    dim = cohomology_dim(a, d)
    row_ech = _row_echelon(a, d)
    img_ech = _image_echelon(a, d)
    f = a.field
    found = []
    seen = Echelon(f)
    if dim == 0:
        return found
    for j in range(a.n ** d):
        if j in row_ech.pivots:
            continue
        z = row_ech.kernel_vector(j)
        reduced = img_ech.reduce(z)
        if not reduced:
            continue
        if not seen.insert(dict(reduced)):
            continue
        lead = f.coerce(reduced[min(reduced)])
        inv = f.inv(lead)
        canon = {k: f.mul(inv, v) for k, v in reduced.items()}
        found.append(CohomologyClass(d, from_vector(canon, f, a.n, d)))
        if len(found) == dim:
            break
    if len(found) != dim:
        raise RuntimeError("internal: expected %d classes in degree %d, found %d"
                           % (dim, d, len(found)))
    return found


def is_coboundary(a, z, strict=True):
    """A preimage w with d(w) = z, or None if z is not a coboundary.
    With strict=True a non-cocycle input is an error."""
    if z.is_zero():
        return a.zero()
    d = z.degree()
    if strict and not a.differential(z).is_zero():
        raise ValueError("input is not a cocycle")
    if d == 0:
        return None
    sol = solve(boundary_matrix(a, d - 1), to_vector(z, d))
    if sol is None:
        return None
    return from_vector(sol, a.field, a.n, d - 1)


def class_product(a, u, v):
    """Canonical class of the product of representatives; well defined on
    classes because a coboundary times a cocycle is a coboundary."""
    degree = u.degree + v.degree
    cap = max_degree_cap()
    if degree > cap:
        raise ValueError("product degree %d exceeds the cap %d" % (degree, cap))
    return canonical_class(a, u.representative * v.representative, degree)


@dataclass(frozen=True)
class RingPresentation:
    """Claimed presentation of the cohomology ring: named generator
    cocycles, relation words claimed to vanish, and commutation claims."""

    generators: tuple
    relations: tuple
    commutations: tuple

    def generator_map(self):
        return dict(self.generators)


def preset_presentation(name, a=None):
    """The claimed cohomology ring presentations for the bundled algebras:
    a polynomial generator in degree 1 and one in degree 2, with the square
    of the degree-1 generator as the only relation."""
    if a is None:
        a = preset_algebra(name)
    if name == "a1":
        u1 = a.parse("x3")
        u2 = a.parse("x1*x3 + x3*x1")
    elif name == "a2":
        u1 = a.parse("y3")
        u2 = a.parse("y1*y1 + y2*y3 + y3*y2")
    else:
        raise ValueError("no preset presentation for %r" % (name,))
    return RingPresentation(
        generators=(("u1", u1), ("u2", u2)),
        relations=(("u1", "u1"),),
        commutations=(("u1", "u2"),),
    )


def _monomial_exponents(degrees, total):
    """Exponent tuples e with sum(e_i * degrees_i) = total, in lex order."""
    if not degrees:
        return [()] if total == 0 else []
    head, rest = degrees[0], degrees[1:]
    out = []
    for e in range(total // head + 1):
        for tail in _monomial_exponents(rest, total - e * head):
            out.append((e,) + tail)
    return out


def _evaluate_word(a, gen_map, word):
    out = a.unit()
    for name in word:
        if name not in gen_map:
            raise ValueError("unknown generator %r in relation" % (name,))
        out = out * gen_map[name]
    return out


def ring_presentation_check(a, pres, max_degree=DEFAULT_MAX_DEGREE):
    """Verify a claimed presentation up to max_degree.

    Four groups of checks, all exact: generators are nonzero classes,
    relation words are coboundaries, commutation claims hold modulo
    coboundaries (with an explicit preimage as witness), and for every
    degree up to the bound the generator monomials span H^d.  Failures are
    report entries, not errors.
    """
    cap = max_degree_cap()
    if max_degree > cap:
        raise ValueError("max_degree %d exceeds the cap %d" % (max_degree, cap))
    gen_map = pres.generator_map()
    checks = []
    for name, e in pres.generators:
        cocycle = a.differential(e).is_zero()
        nonzero = False
        witness = None
        if cocycle:
            cls = canonical_class(a, e)
            nonzero = not cls.is_zero()
            witness = a.render(cls.representative)
        checks.append({
            "check": "generator",
            "name": name,
            "degree": e.degree(),
            "cocycle": cocycle,
            "nonzero_class": nonzero,
            "canonical_representative": witness,
            "pass": cocycle and nonzero,
        })
    for word in pres.relations:
        e = _evaluate_word(a, gen_map, word)
        preimage = is_coboundary(a, e) if a.differential(e).is_zero() else None
        ok = preimage is not None
        entry = {
            "check": "relation",
            "word": list(word),
            "pass": ok,
        }
        if ok:
            entry["preimage"] = a.render(preimage)
        else:
            witness = canonical_class(a, e) if a.differential(e).is_zero() else None
            entry["witness"] = a.render(witness.representative) if witness else "not a cocycle"
        checks.append(entry)
    for left, right in pres.commutations:
        u = gen_map[left]
        v = gen_map[right]
        diff = u * v - v * u
        preimage = is_coboundary(a, diff)
        ok = preimage is not None
        entry = {
            "check": "commutation",
            "pair": [left, right],
            "pass": ok,
        }
        if ok:
            entry["preimage"] = a.render(preimage)
        else:
            entry["witness"] = a.render(canonical_class(a, diff).representative)
        checks.append(entry)
    degrees = [e.degree() for _, e in pres.generators]
    names = [name for name, _ in pres.generators]
    for d in range(max_degree + 1):
        dim = cohomology_dim(a, d)
        img = _image_echelon(a, d)
        seen = Echelon(a.field)
        independent = []
        for exps in _monomial_exponents(degrees, d):
            e = a.unit()
            for (name, gen), k in zip(pres.generators, exps):
                e = e * gen.power(k)
            if e.is_zero():
                continue
            reduced = img.reduce(to_coord_dict(e, d))
            if reduced and seen.insert(dict(reduced)):
                independent.append("*".join(
                    "%s^%d" % (n_, k) for n_, k in zip(names, exps) if k) or "1")
        checks.append({
            "check": "spanning",
            "degree": d,
            "dim": dim,
            "independent_monomials": independent,
            "pass": len(independent) == dim,
        })
    return {
        "max_degree": max_degree,
        "checks": checks,
        "pass": all(c["pass"] for c in checks),
    }


def cohomology_report(a, max_degree=DEFAULT_MAX_DEGREE, presentation=None):
    """JSON-ready report: per-degree dimensions and canonical bases, plus
    presentation checks when a presentation is supplied."""
    cap = max_degree_cap()
    if max_degree > cap:
        raise ValueError("max_degree %d exceeds the cap %d" % (max_degree, cap))
    degrees = []
    for d in range(max_degree + 1):
        basis = cohomology_basis(a, d)
        degrees.append({
            "d": d,
            "dim": len(basis),
            "basis": [a.render(cls.representative) for cls in basis],
        })
    report = {"degrees": degrees, "presentation_checks": []}
    if presentation is not None:
        result = ring_presentation_check(a, presentation, max_degree)
        report["presentation_checks"] = result["checks"]
        report["presentation_pass"] = result["pass"]
    return report
