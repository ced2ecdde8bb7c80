"""Orbifolds encoded as compatible triangulations with local-group labels.

Each cell of the underlying complex carries a :class:`LocalGroupLabel`
recording the order and coarse isomorphism type of the local group on its
interior.  Faces declared in ``boundary_faces`` make up the orbifold
boundary; every other codimension-one face on the topological boundary of
the underlying space is a mirror.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .complex import (
    SimplicialComplex,
    barycentric_subdivision,
    boundary_facets,
    build_complex,
    canonical_cell,
    cell_key,
    connected_components,
    facets_of,
    sort_cells,
    topological_boundary,
)
from .errors import InvalidOrbifold, NotPseudomanifold, NotSubcomplex

BASIC_KINDS = ("trivial", "cyclic", "dihedral", "reflection")


@dataclass(frozen=True)
class LocalGroupLabel:
    order: int
    kind: str = "cyclic"
    # element tokens, only kept for quotient-built orbifolds
    generators: frozenset = field(default=None, compare=False)

    def __post_init__(self):
        if not isinstance(self.order, int) or self.order < 1:
            raise ValueError(f"label order must be a positive integer, got {self.order!r}")
        kind = self.kind
        if kind not in BASIC_KINDS and not (kind.startswith("named:") and len(kind) > 6):
            raise ValueError(f"unknown label kind {kind!r}")
        if (kind == "trivial") != (self.order == 1):
            raise ValueError(f"kind {kind!r} is incompatible with order {self.order}")

    @property
    def is_trivial(self):
        return self.order == 1

    def __str__(self):
        return f"{self.order}:{self.kind}"


TRIVIAL = LocalGroupLabel(1, "trivial")
REFLECTION = LocalGroupLabel(2, "reflection")


def cyclic(n):
    return TRIVIAL if n == 1 else LocalGroupLabel(n, "cyclic")


def fmt_rational(q):
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Violation:
    rule: str
    cells: tuple
    detail: str = ""

    def __str__(self):
        cells = " ".join("[" + ",".join(map(str, c)) + "]" for c in self.cells)
        text = f"{self.rule}: {cells}"
        return f"{text} ({self.detail})" if self.detail else text


class OrbifoldComplex:
    """A compatible triangulation of a compact orbifold.

    ``labels`` maps cells to labels; unlisted cells are trivial.  ``dim`` is
    needed only for empty complexes, otherwise it defaults to the dimension
    of ``complex``.
    """

    def __init__(self, complex, labels=None, boundary_faces=(), dim=None, name=None):
        self.complex = complex
        self.labels = {c: l for c, l in (labels or {}).items() if not l.is_trivial}
        self.boundary_faces = frozenset(boundary_faces)
        self.dim = complex.dim if dim is None else dim
        self.name = name

    def label(self, cell):
        return self.labels.get(cell, TRIVIAL)

    @property
    def cells(self):
        return self.complex.cells

    def __repr__(self):
        name = f"{self.name!r}, " if self.name else ""
        return (f"OrbifoldComplex({name}dim={self.dim}, cells={len(self.complex)}, "
                f"singular={len(self.labels)}, boundary_faces={len(self.boundary_faces)})")

    def __eq__(self, other):
        if not isinstance(other, OrbifoldComplex):
            return NotImplemented
        return (self.complex == other.complex and self.labels == other.labels
                and self.boundary_faces == other.boundary_faces and self.dim == other.dim)

    __hash__ = None

    def is_empty(self):
        return self.complex.is_empty()

    @cached_property
    def boundary_closure(self):
        return SimplicialComplex.closure_of(self.boundary_faces)

    @cached_property
    def mirror_faces(self):
        return tuple(f for f in boundary_facets(self.complex) if f not in self.boundary_faces)

    @cached_property
    def violations(self):
        return tuple(_violations(self))

    @cached_property
    def chi(self):
        return chi_of_cells(self.cells, self.label)

    def singular_cells(self):
        return sort_cells(self.labels)


def build_orbifold(maximal_cells, labels=(), boundary_faces=(), dim=None, name=None):
    """Convenience constructor from raw vertex lists.

    ``labels`` is an iterable of ``(vertex list, label)`` pairs.
    """
    K = build_complex(maximal_cells)
    lab = {canonical_cell(c): l for c, l in labels}
    bf = [canonical_cell(c) for c in boundary_faces]
    return OrbifoldComplex(K, lab, bf, dim=dim, name=name)


def empty_orbifold(dim, name=None):
    return OrbifoldComplex(SimplicialComplex(), {}, (), dim=dim, name=name)


def _violations(O):
    K = O.complex
    out = []
    for c in sort_cells(O.labels):
        if c not in K:
            out.append(Violation("UnknownCell", (c,), "label on a cell outside the complex"))
    for f in sort_cells(O.boundary_faces):
        if f not in K:
            out.append(Violation("UnknownCell", (f,), "boundary face outside the complex"))
    if out:
        return out
    if K.is_empty():
        return out
    n = O.dim
    if K.dim != n:
        out.append(Violation("DimensionMismatch", (), f"declared {n}, complex has {K.dim}"))
        return out
    if not K.is_pure:
        bad = [c for c in K.maximal_cells if len(c) - 1 != n]
        out.append(Violation("NotPure", tuple(bad[:3]), f"{len(bad)} lower-dimensional maximal cells"))
        return out
    try:
        top_boundary = set(boundary_facets(K))
    except NotPseudomanifold as exc:
        out.append(Violation("NotPseudomanifold", (), str(exc)))
        return out
    for c in sort_cells(c for c in K.cells_of_dim(n) if c in O.labels):
        out.append(Violation("NonEffective", (c,), f"top cell labelled {O.label(c)}"))
    bad = []
    for c, lab in O.labels.items():  # trivial cells divide everything
        oc = lab.order
        for f in facets_of(c):
            of = O.label(f).order
            if of % oc:
                bad.append((c, f, oc, of))
    for c, f, oc, of in sorted(bad, key=lambda t: (cell_key(t[0]), cell_key(t[1]))):
        out.append(Violation("DivisibilityViolation", (c, f),
                             f"order {oc} does not divide face order {of}"))
    for f in sort_cells(O.boundary_faces):
        if f not in top_boundary:
            out.append(Violation("BoundaryFaceNotOnBoundary", (f,)))
    unmarked = [f for f in top_boundary - O.boundary_faces if O.label(f).order < 2]
    for f in sort_cells(unmarked):
        out.append(Violation("UnmarkedMirror", (f,),
                             "trivial boundary face not declared in boundary_faces"))
    return out


def validate(O):
    return list(O.violations)


def require_valid(O):
    if O.violations:
        raise InvalidOrbifold(O.violations)


def chi_of_cells(cells, label):
    """Sum of (-1)^dim / order over ``cells``."""
    counts = {}
    for c in cells:
        key = (len(c) % 2, label(c).order)
        counts[key] = counts.get(key, 0) + 1
    total = Fraction(0)
    for (odd, order), k in counts.items():
        total += Fraction(k if odd else -k, order)
    return total


def euler_char(O):
    require_valid(O)
    return O.chi


def orbifold_boundary(O):
    require_valid(O)
    K = O.boundary_closure
    labels = {c: l for c, l in O.labels.items() if c in K}
    name = f"boundary({O.name})" if O.name else None
    return OrbifoldComplex(K, labels, (), dim=O.dim - 1, name=name)


def subdivide_orbifold(O):
    """Barycentric subdivision with labels and boundary faces carried along."""
    return subdivide_with_map(O)[0]


def subdivide_with_map(O):
    """Like :func:`subdivide_orbifold`, also returning the new-cell to old-cell map."""
    require_valid(O)
    K, cell_map = barycentric_subdivision(O.complex)
    labels = {}
    bf = []
    n = O.dim
    for new, old in cell_map.items():
        lab = O.labels.get(old)
        if lab is not None:
            labels[new] = lab
        if len(new) == n and old in O.boundary_faces:
            bf.append(new)
    return OrbifoldComplex(K, labels, bf, dim=n, name=O.name), cell_map


def double(O):
    """Glue two copies of ``O`` along its orbifold boundary.

    Copy-two vertices off the boundary are renamed ``"<v>~2"``.  If the
    boundary is not a full subcomplex the orbifold is subdivided first, since
    otherwise the copies would share cells that are not boundary cells.
    """
    require_valid(O)
    bc = O.boundary_closure
    if not O.complex.is_full(bc):
        O = subdivide_orbifold(O)
        bc = O.boundary_closure
    glued = bc.vertices

    def rename(v):
        return v if v in glued else f"{v}~2"

    cells = set(O.cells)
    labels = dict(O.labels)
    for c in O.cells:
        c2 = canonical_cell([rename(v) for v in c])
        cells.add(c2)
        lab = O.labels.get(c)
        if lab is not None:
            labels[c2] = lab
    name = f"double({O.name})" if O.name else None
    return OrbifoldComplex(SimplicialComplex(cells), labels, (), dim=O.dim, name=name)


def mirror(M, name=None):
    """Reflect a manifold in its boundary: every boundary cell becomes a mirror."""
    if isinstance(M, OrbifoldComplex):
        if M.labels:
            raise ValueError("mirror() expects a manifold (all labels trivial)")
        name = name or (f"mirror({M.name})" if M.name else None)
        M = M.complex
    bd = topological_boundary(M)
    labels = {c: REFLECTION for c in bd.cells}
    return OrbifoldComplex(M, labels, (), dim=M.dim, name=name)


def manifold(K, name=None):
    """A manifold triangulation as an orbifold whose whole topological boundary is ∂."""
    return OrbifoldComplex(K, {}, boundary_facets(K), dim=K.dim, name=name)


def _check_piece(O, P, what):
    missing = P.cells - O.cells
    if missing:
        raise NotSubcomplex(f"{what} has {len(missing)} cells outside the ambient complex")
    for c in P.cells:
        if P.label(c) != O.label(c):
            raise NotSubcomplex(f"{what} relabels cell {list(c)}")


def chi_inclusion_exclusion_check(O, O1, O2):
    _check_piece(O, O1, "first piece")
    _check_piece(O, O2, "second piece")
    if O1.cells | O2.cells != O.cells:
        raise NotSubcomplex("the two pieces do not cover the complex")
    lhs = chi_of_cells(O.cells, O.label)
    rhs = (chi_of_cells(O1.cells, O.label) + chi_of_cells(O2.cells, O.label)
           - chi_of_cells(O1.cells & O2.cells, O.label))
    return lhs == rhs


def classify_1_orbifold(O):
    """Name a connected compact 1-orbifold: ``[0,1]``, ``S1``, ``M1`` or ``M2``."""
    require_valid(O)
    if O.dim != 1 or len(connected_components(O.cells)) != 1:
        raise ValueError("expected a connected 1-orbifold")
    ends = boundary_facets(O.complex)
    if not ends:
        return "S1"
    mirrors = sum(1 for e in ends if e not in O.boundary_faces)
    return ("[0,1]", "M1", "M2")[mirrors]
