"""Semi-free DG modules with a degree-0 semibasis.

A module of rank m over a DG free algebra is described by an m x m
connection matrix D of degree-1 elements, strictly lower triangular in the
semibasis order.  The differential of a coordinate vector (a_1, .., a_m),
meaning the element sum a_i b_i, has j-th coordinate

    d(a_j) + sum_i (-1)^{deg a_i} a_i D[i][j],

so d_F(b_i) = sum_j D[i][j] b_j.  The identity d_F^2 = 0 is equivalent to
the Maurer-Cartan equation d(D[i][j]) = (D*D)[i][j], which is finite and
checked exactly (no degree truncation) at construction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .exact import Echelon
from .freealg import GradedElement, to_coord_dict, word_at, word_index
from .dg import DgFreeAlgebra, load_algebra, preset_algebra


@dataclass(frozen=True)
class ModuleElement:
    """Coordinates (one GradedElement per semibasis label)."""

    coordinates: tuple

    def is_zero(self):
        return all(c.is_zero() for c in self.coordinates)

    def degree(self):
        ds = set()
        for c in self.coordinates:
            if not c.is_zero():
                ds.update(c.degrees())
        if len(ds) != 1:
            raise ValueError("element is zero or mixed; no single degree")
        return ds.pop()


@dataclass(frozen=True)
class MaurerCartanResult:
    ok: bool
    witness: object = None  # (i, j, defect element), 1-based indices

    def __bool__(self):
        return self.ok


class SemifreeModule:
    """Rank-m semi-free module given by its connection matrix.

    Construction validates the shape (strict lower triangularity, degree-1
    entries) and the Maurer-Cartan identity; pass check=False to build an
    unvalidated instance for diagnostic runs.
    """

    def __init__(self, algebra, labels, connection, check=True):
        self.algebra = algebra
        self.labels = tuple(labels)
        self.rank = len(self.labels)
        conn = []
        for i, row in enumerate(connection):
            if len(row) != self.rank:
                raise ValueError("connection must be %dx%d" % (self.rank, self.rank))
            conn.append(tuple(row))
        if len(conn) != self.rank:
            raise ValueError("connection must be %dx%d" % (self.rank, self.rank))
        self.connection = tuple(conn)
        for i in range(self.rank):
            for j in range(self.rank):
                e = self.connection[i][j]
                if e.field != algebra.field or e.n != algebra.n:
                    raise ValueError("connection entry (%d,%d) over wrong algebra" % (i + 1, j + 1))
                if not e.is_zero() and e.degrees() != [1]:
                    raise ValueError("connection entry (%d,%d) is not degree 1" % (i + 1, j + 1))
                if j >= i and not e.is_zero():
                    raise ValueError("connection is not strictly lower triangular at (%d,%d)"
                                     % (i + 1, j + 1))
        if check:
            mc = maurer_cartan_check(self)
            if not mc.ok:
                i, j, defect = mc.witness
                raise ValueError("Maurer-Cartan fails at (%d,%d): %s"
                                 % (i, j, algebra.render(defect)))
        self._degree_cache = {}

    def zero_element(self):
        z = self.algebra.zero()
        return ModuleElement(tuple(z for _ in range(self.rank)))

    def basis_element(self, i):
        """The semibasis element with label index i (1-based), degree 0."""
        coords = [self.algebra.zero()] * self.rank
        coords[i - 1] = self.algebra.unit()
        return ModuleElement(tuple(coords))

    def element(self, coordinates):
        coords = tuple(coordinates)
        if len(coords) != self.rank:
            raise ValueError("need %d coordinates" % self.rank)
        return ModuleElement(coords)

    def __repr__(self):
        return "SemifreeModule(rank=%d, labels=%r)" % (self.rank, self.labels)


def module_differential(f, e):
    """d_F of a coordinate vector; raises degree by 1 on homogeneous input."""
    a = f.algebra
    coords = e.coordinates
    if len(coords) != f.rank:
        raise ValueError("coordinate count mismatch")
    out = []
    for j in range(f.rank):
        acc = a.differential(coords[j])
        for i in range(f.rank):
            d_ij = f.connection[i][j]
            if d_ij.is_zero() or coords[i].is_zero():
                continue
            for part_degree in coords[i].degrees():
                part = coords[i].homogeneous_part(part_degree)
                term = part * d_ij
                acc = acc + (term if part_degree % 2 == 0 else -term)
        out.append(acc)
    return ModuleElement(tuple(out))


def maurer_cartan_check(f):
    """Exact check of d(D[i][j]) = sum_k D[i][k] D[k][j] for all i, j; the
    witness is the first failing (i, j) in lexicographic order (1-based)
    with the nonzero defect."""
    a = f.algebra
    for i in range(f.rank):
        for j in range(f.rank):
            lhs = a.differential(f.connection[i][j])
            rhs = a.zero()
            for k in range(f.rank):
                rhs = rhs + f.connection[i][k] * f.connection[k][j]
            defect = lhs - rhs
            if not defect.is_zero():
                return MaurerCartanResult(False, (i + 1, j + 1, defect))
    return MaurerCartanResult(True)


def minimality_check(f):
    """True iff no connection entry has a constant (degree-0) term, i.e.
    the differential lands in the augmentation ideal times the module."""
    for row in f.connection:
        for e in row:
            if not f.algebra.field.is_zero(e.coefficient(())):
                return False
    return True


def _module_boundary_rows(f, d):
    """Row dicts of the degree-d boundary of the module.

    Degree-d coordinates are indexed label-major: (i, w) -> (i-1)*n^d + idx(w).
    """
    a = f.algebra
    n = a.n
    fdim = f.rank * n ** d
    rows = {}
    sign = 1 if d % 2 == 0 else -1
    for i in range(f.rank):
        base = i * n ** d
        for w_idx in range(n ** d):
            word = word_at(w_idx, n, d)
            col = base + w_idx
            image = {}
            e = GradedElement(a.field, n, {word: a.field.one})
            de = a.differential(e)
            for w, c in de.terms.items():
                image[(i, word_index(w, n))] = c
            for j in range(f.rank):
                d_ij = f.connection[i][j]
                if d_ij.is_zero():
                    continue
                prod = e * d_ij if sign == 1 else -(e * d_ij)
                for w, c in prod.terms.items():
                    key = (j, word_index(w, n))
                    prev = image.get(key, a.field.zero)
                    s = a.field.add(prev, c)
                    if a.field.is_zero(s):
                        image.pop(key, None)
                    else:
                        image[key] = s
            for (j, t_idx), c in image.items():
                rows.setdefault(j * n ** (d + 1) + t_idx, {})[col] = c
    return rows, fdim


def _module_echelons(f, d):
    key = ("ech", d)
    cached = f._degree_cache.get(key)
    if cached is not None:
        return cached
    rows, fdim = _module_boundary_rows(f, d)
    ech = Echelon(f.algebra.field)
    for i in sorted(rows):
        ech.insert(rows[i])
    result = (ech, fdim)
    f._degree_cache[key] = result
    return result


def homology_dims(f, max_degree):
    """Dimensions of H^d(F) for 0 <= d <= max_degree.  The degree-d
    component of F has dimension rank * n^d."""
    dims = []
    prev_rank = 0
    for d in range(max_degree + 1):
        ech, fdim = _module_echelons(f, d)
        dims.append(fdim - ech.rank - prev_rank)
        prev_rank = ech.rank
    return dims


def koszul_certificate(f, max_degree=6):
    """Certificate that F looks like a minimal semi-free resolution of the
    ground field through the given degree: Maurer-Cartan holds exactly,
    the connection is minimal, and H(F) is the ground field in degrees up
    to max_degree.  Refused (ok=False, failing check named) otherwise."""
    mc = maurer_cartan_check(f)
    if not mc.ok:
        return {"ok": False, "failed": "maurer_cartan",
                "witness": [mc.witness[0], mc.witness[1]]}
    if not minimality_check(f):
        return {"ok": False, "failed": "minimality"}
    dims = homology_dims(f, max_degree)
    expected = [1] + [0] * max_degree
    if dims != expected:
        return {"ok": False, "failed": "homology", "dims": dims}
    return {
        "ok": True,
        "rank": f.rank,
        "labels": list(f.labels),
        "checked_to_degree": max_degree,
        "homology_dims": dims,
    }


_MODULE_PRESETS = {
    "f1": {
        "algebra": "a1",
        "labels": ("1", "e_x3", "e_z"),
        "connection": [
            ["0", "0", "0"],
            ["x3", "0", "0"],
            ["x1", "x3", "0"],
        ],
    },
    "f2": {
        "algebra": "a2",
        "labels": ("1", "e_y3", "e_z", "e_r"),
        "connection": [
            ["0", "0", "0", "0"],
            ["y3", "0", "0", "0"],
            ["y1", "y3", "0", "0"],
            ["y2", "y1", "y3", "0"],
        ],
    },
}


def module_preset_names():
    return sorted(_MODULE_PRESETS)


def preset_module(name, check=True):
    spec = _MODULE_PRESETS.get(name)
    if spec is None:
        raise ValueError("unknown module preset %r" % (name,))
    a = preset_algebra(spec["algebra"])
    connection = [[a.parse(txt) for txt in row] for row in spec["connection"]]
    return SemifreeModule(a, spec["labels"], connection, check=check)


def module_from_json(obj, check=True, algebra=None):
    source = obj["algebra"]
    if algebra is None:
        algebra = load_algebra(source)
    rank = int(obj["rank"])
    labels = obj["labels"]
    if len(labels) != rank:
        raise ValueError("expected %d labels" % rank)
    raw = obj["connection"]
    if len(raw) != rank or any(len(row) != rank for row in raw):
        raise ValueError("connection must be %dx%d" % (rank, rank))
    connection = [[algebra.parse(txt) for txt in row] for row in raw]
    return SemifreeModule(algebra, labels, connection, check=check)


def load_module(source, check=True):
    """Resolve a module argument: preset name first, then a JSON path."""
    if source in _MODULE_PRESETS:
        return preset_module(source, check=check)
    with open(source, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    return module_from_json(obj, check=check)


def module_algebra_source(source):
    """The algebra a module argument is bound to ("a1", "a2", or a path)."""
    if source in _MODULE_PRESETS:
        return _MODULE_PRESETS[source]["algebra"]
    with open(source, "r", encoding="utf-8") as fh:
        return json.load(fh)["algebra"]
