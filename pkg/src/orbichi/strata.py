"""Stratification of the singular locus, the closure order, and neat decompositions.

Cells are grouped by label (order and kind) and split into connected
components under face/coface adjacency; each component is a stratum.
"""

from dataclasses import dataclass, field
from functools import cached_property

from .complex import (
    SimplicialComplex,
    boundary_facets,
    cell_key,
    connected_components,
    faces_of,
)
from .errors import (
    InvalidOrbifold,
    NotAPartition,
    NotMinimal,
    NotSubcomplex,
    SingularOnly,
)
from .orbifold import (
    OrbifoldComplex,
    Violation,
    chi_of_cells,
    require_valid,
    subdivide_with_map,
)


@dataclass(frozen=True)
class Stratum:
    id: int
    cells: frozenset
    label: object
    dim: int

    @property
    def is_singular(self):
        return self.label.order > 1

    @cached_property
    def closure(self):
        out = set()
        for c in self.cells:
            out.update(faces_of(c))
        return frozenset(out)

    def __repr__(self):
        return f"Stratum(id={self.id}, dim={self.dim}, label={self.label}, cells={len(self.cells)})"


def stratify(O):
    require_valid(O)
    groups = {}
    for c in O.cells:
        groups.setdefault(O.label(c), []).append(c)
    comps = []
    for label, cells in groups.items():
        for comp in connected_components(cells):
            dim = max(len(c) for c in comp) - 1
            comps.append((dim, cell_key(min(comp, key=cell_key)), comp, label))
    comps.sort(key=lambda t: (t[0], t[1]))
    return [Stratum(i, comp, label, dim) for i, (dim, _, comp, label) in enumerate(comps)]


@dataclass
class StrataPoset:
    strata: list
    order_pairs: set
    hasse: set = field(default_factory=set)

    def leq(self, i, j):
        return (i, j) in self.order_pairs

    def below(self, j):
        """Indices strictly below stratum ``j``."""
        return sorted(i for i, k in self.order_pairs if k == j and i != j)


def strata_poset(strata):
    seen = set()
    for s in strata:
        if not s.cells:
            raise NotAPartition(f"stratum {s.id} is empty")
        if seen & s.cells:
            raise NotAPartition(f"stratum {s.id} overlaps an earlier stratum")
        seen |= s.cells
    n = len(strata)
    pairs = set()
    for j, sj in enumerate(strata):
        cl = sj.closure
        for i, si in enumerate(strata):
            if si.cells <= cl:
                pairs.add((i, j))
    for i, j in pairs:
        if i != j and (j, i) in pairs:
            raise NotAPartition(f"strata {i} and {j} lie in each other's closure")
    return StrataPoset(list(strata), pairs, _covers(range(n), pairs))


def _covers(nodes, pairs):
    nodes = list(nodes)
    out = set()
    for i, j in pairs:
        if i == j or i not in nodes or j not in nodes:
            continue
        if not any(k not in (i, j) and (i, k) in pairs and (k, j) in pairs for k in nodes):
            out.add((i, j))
    return out


def complete_chains(P, singular_only=True):
    """All maximal chains, bottom to top, as tuples of strata.

    With ``singular_only`` the regular strata are dropped from the poset
    before chains are formed.
    """
    nodes = [i for i, s in enumerate(P.strata) if s.is_singular or not singular_only]
    covers = _covers(nodes, P.order_pairs)
    up = {i: sorted(j for a, j in covers if a == i) for i in nodes}
    has_lower = {j for _, j in covers}
    chains = []

    def walk(path):
        nxt = up[path[-1]]
        if not nxt:
            chains.append(tuple(P.strata[i] for i in path))
        for j in nxt:
            walk(path + [j])

    for i in nodes:
        if i not in has_lower:
            walk([i])
    return chains


def closure_decomposition(S, strata):
    rest = S.closure - S.cells
    return [t for t in strata if t.id != S.id and t.cells & rest]


def is_closed(S):
    return S.closure == S.cells


def is_combinatorial_manifold(cells):
    """Link test for a closed pure complex of dimension at most two."""
    K = SimplicialComplex(cells)
    if K.is_empty():
        return True
    if not K.is_pure:
        return False
    d = K.dim
    if d == 0:
        return True
    if d > 2:
        raise ValueError("manifold check is only implemented up to dimension two")
    cof = K.cofaces
    if d == 1:
        return all(len(cof[(v,)]) in (1, 2) for (v,) in K.cells_of_dim(0))
    if any(len(cof[e]) not in (1, 2) for e in K.cells_of_dim(1)):
        return False
    # vertex links must be a single arc or circle
    for (v,) in K.cells_of_dim(0):
        edges = [tuple(x for x in t if x != v) for t in K.star_cells([v]) if len(t) == 3]
        deg = {}
        for a, b in edges:
            deg[a] = deg.get(a, 0) + 1
            deg[b] = deg.get(b, 0) + 1
        if len(connected_components(edges + [(x,) for x in deg])) != 1:
            return False
        ends = sum(1 for k in deg.values() if k == 1)
        if ends not in (0, 2):
            return False
    return True


def minimal_strata(P):
    out = []
    for j, s in enumerate(P.strata):
        if P.below(j):
            continue
        if not is_closed(s):
            raise InvalidOrbifold([Violation("MinimalStratumNotClosed", (min(s.cells, key=cell_key),))])
        if s.dim <= 2 and not is_combinatorial_manifold(s.cells):
            raise InvalidOrbifold([Violation("MinimalStratumNotManifold", (min(s.cells, key=cell_key),))])
        out.append(s)
    return out


def _sub_orbifold(O, cells, boundary_faces, dim):
    labels = {c: l for c, l in O.labels.items() if c in cells}
    return OrbifoldComplex(SimplicialComplex(cells), labels, boundary_faces, dim=dim)


@dataclass
class NeatDecomposition:
    base: OrbifoldComplex
    stratum_cells: frozenset
    O1: OrbifoldComplex
    O2: OrbifoldComplex
    intersection: OrbifoldComplex

    @cached_property
    def boundary_cells(self):
        return self.base.boundary_closure.cells

    def chi_values(self):
        lab = self.base.label
        b = self.boundary_cells
        return {
            "O": chi_of_cells(self.base.cells, lab),
            "O1": chi_of_cells(self.O1.cells, lab),
            "O2": chi_of_cells(self.O2.cells, lab),
            "O1&O2": chi_of_cells(self.intersection.cells, lab),
            "dO": chi_of_cells(b, lab),
            "dO1": chi_of_cells(self.O1.boundary_closure.cells, lab),
            "dO2": chi_of_cells(self.O2.boundary_closure.cells, lab),
            "d(O1&O2)": chi_of_cells(self.intersection.boundary_closure.cells, lab),
        }

    def identities(self):
        """Exact subcomplex identities a neat decomposition must satisfy."""
        b = self.boundary_cells
        c1, c2, ci = self.O1.cells, self.O2.cells, self.intersection.cells
        d1 = self.O1.boundary_closure.cells
        d2 = self.O2.boundary_closure.cells
        di = self.intersection.boundary_closure.cells
        return {
            "cover": c1 | c2 == self.base.cells,
            "proper": not (c1 <= c2 or c2 <= c1),
            "meet_is_boundary_meet": ci == c1 & c2 == d1 & d2,
            "stratum_inside_O1": self.stratum_cells <= c1 and not (self.stratum_cells & c2),
            "valid_pieces": not (self.O1.violations or self.O2.violations
                                 or self.intersection.violations),
            "i_boundary_O1": d1 == (c1 & b) | ci,
            "i_boundary_O2": d2 == (c2 & b) | ci,
            "ii_boundary_split": b == (b & c1) | (b & c2),
            "iii_neat_meet": di == ci & b,
        }


def _piece_boundary(O, cells, frontier):
    K = SimplicialComplex(cells)
    return [f for f in boundary_facets(K) if f in O.boundary_faces or f in frontier]


def decompose_at(O, stratum_cells):
    """Split ``O`` into the closed star of ``stratum_cells`` and the rest.

    No subdivision happens here; callers must pass a sufficiently fine
    triangulation.
    """
    stratum_cells = frozenset(stratum_cells)
    verts = {v for c in stratum_cells for v in c}
    top = O.complex.cells_of_dim(O.dim)
    near = [t for t in top if verts.intersection(t)]
    far = [t for t in top if not verts.intersection(t)]
    c1 = SimplicialComplex.closure_of(near).cells
    c2 = SimplicialComplex.closure_of(far).cells
    ci = c1 & c2
    n = O.dim
    O1 = _sub_orbifold(O, c1, _piece_boundary(O, c1, ci), n)
    O2 = _sub_orbifold(O, c2, _piece_boundary(O, c2, ci), n)
    bcells = O.boundary_closure.cells
    ci_facets = [c for c in ci if len(c) == n]
    if ci_facets:
        I_bf = [f for f in boundary_facets(SimplicialComplex(ci)) if f in bcells]
    else:
        I_bf = []
    I = _sub_orbifold(O, ci, I_bf, n - 1)
    return NeatDecomposition(O, stratum_cells, O1, O2, I)


def _check_minimal_singular(O, S):
    if not S.is_singular:
        raise SingularOnly("neighbourhood extraction needs a singular stratum")
    strata = stratify(O)
    match = [t for t in strata if t.cells == S.cells]
    if not match:
        raise NotMinimal("stratum does not belong to this orbifold")
    if not is_closed(match[0]) or closure_decomposition(match[0], strata):
        raise NotMinimal(f"stratum {S.id} has smaller strata in its closure")


def extract_neat_decomposition(O, S):
    """Neat decomposition around a minimal singular stratum, after two subdivisions."""
    require_valid(O)
    _check_minimal_singular(O, S)
    fine, lifted = subdivide_twice(O, S.cells)
    return decompose_at(fine, lifted)


def subdivide_twice(O, cells=frozenset()):
    """Second barycentric subdivision, plus the cells lying in the closed set ``cells``."""
    O1, m1 = subdivide_with_map(O)
    O2, m2 = subdivide_with_map(O1)
    return O2, frozenset(c for c, o in m2.items() if m1[o] in cells)


def is_neat(O, K):
    """Whether the subcomplex ``K`` meets the orbifold boundary exactly in its own boundary.

    Codimension-one faces of ``K`` on the topological boundary of ``K`` count
    as its boundary unless they carry a nontrivial label off ``∂O`` (then
    they are mirror faces of ``K``).
    """
    cells = K.cells if isinstance(K, (SimplicialComplex, OrbifoldComplex)) else frozenset(K)
    if not cells <= O.cells:
        raise NotSubcomplex("K is not contained in the orbifold")
    sub = SimplicialComplex(cells)
    if sub.is_empty():
        return True
    if any(f not in cells for c in cells for f in faces_of(c)) or not sub.is_pure:
        raise NotSubcomplex("K must be a pure subcomplex")
    b = O.boundary_closure.cells
    own = []
    for f in boundary_facets(sub):
        if f in b:
            own.append(f)
        elif O.label(f).order < 2:
            return False
    own_closure = SimplicialComplex.closure_of(own).cells
    return own_closure == cells & b


__all__ = [
    "NeatDecomposition",
    "Stratum",
    "StrataPoset",
    "closure_decomposition",
    "complete_chains",
    "decompose_at",
    "extract_neat_decomposition",
    "is_closed",
    "is_combinatorial_manifold",
    "is_neat",
    "minimal_strata",
    "subdivide_twice",
    "strata_poset",
    "stratify",
]
