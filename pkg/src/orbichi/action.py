"""Finite permutation groups acting simplicially, and their quotient orbifolds.

A permutation is stored as a tuple of indices into the group's sorted
``domain``: ``p[i]`` is the index of the image of ``domain[i]``.
"""

from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property

from .complex import (
    SimplicialComplex,
    barycentric_subdivision,
    boundary_facets,
    canonical_cell,
    cell_token,
    euler_char_top,
    sort_cells,
    vkey,
)
from .errors import (
    BoundaryNotInvariant,
    CellNotFound,
    InvalidOrbifold,
    NotBijection,
    NotRegular,
    NotSimplicial,
)
from .orbifold import LocalGroupLabel, OrbifoldComplex


def _compose(g, h):
    """g after h."""
    return tuple(g[i] for i in h)


def _perm_from(gen, index):
    """Turn a dict or a list of cycles over vertex tokens into an index tuple."""
    n = len(index)
    img = list(range(n))
    if isinstance(gen, dict):
        pairs = list(gen.items())
    else:
        pairs = []
        seen = set()
        for cyc in gen:
            cyc = list(cyc)
            for v in cyc:
                if v in seen:
                    raise NotBijection(f"point {v!r} appears twice in {gen!r}")
                seen.add(v)
            pairs.extend(zip(cyc, cyc[1:] + cyc[:1]))
    for a, b in pairs:
        if a not in index or b not in index:
            raise NotBijection(f"{a!r} -> {b!r} leaves the vertex set")
        img[index[a]] = index[b]
    if len(set(img)) != n:
        raise NotBijection(f"generator {gen!r} is not injective")
    return tuple(img)


def _points(gen):
    if isinstance(gen, dict):
        return set(gen) | set(gen.values())
    return {v for cyc in gen for v in cyc}


class PermutationGroup:
    """A finite group of permutations of ``domain``, fully enumerated."""

    def __init__(self, domain, generators, elements):
        self.domain = tuple(domain)
        self.index = {v: i for i, v in enumerate(self.domain)}
        self.generators = tuple(generators)
        self.elements = tuple(elements)

    @property
    def order(self):
        return len(self.elements)

    @property
    def identity(self):
        return tuple(range(len(self.domain)))

    def __repr__(self):
        return f"PermutationGroup(order={self.order}, degree={len(self.domain)})"

    def apply(self, g, v):
        return self.domain[g[self.index[v]]]

    def image(self, g, cell):
        return canonical_cell(self.apply(g, v) for v in cell)

    def as_dict(self, g):
        return {v: self.domain[g[i]] for i, v in enumerate(self.domain) if g[i] != i}

    def element_order(self, g):
        k, x, e = 1, g, self.identity
        while x != e:
            x = _compose(g, x)
            k += 1
        return k

    def cycles(self, g):
        out, seen = [], set()
        for i in range(len(g)):
            if i in seen or g[i] == i:
                continue
            cyc, j = [], i
            while j not in seen:
                seen.add(j)
                cyc.append(self.domain[j])
                j = g[j]
            out.append(cyc)
        return out

    def token(self, g):
        cyc = self.cycles(g)
        if not cyc:
            return "()"
        return "".join("(" + " ".join(str(v) for v in c) + ")" for c in cyc)


def close_group(generators, domain=None):
    """Enumerate the group generated by ``generators`` breadth-first.

    Generators are dicts or lists of cycles over vertex tokens.  The domain
    defaults to the points they mention.
    """
    generators = list(generators)
    if domain is None:
        pts = set()
        for g in generators:
            pts |= _points(g)
        domain = pts
    domain = sorted(set(domain), key=vkey)
    index = {v: i for i, v in enumerate(domain)}
    gens = [_perm_from(g, index) for g in generators]
    e = tuple(range(len(domain)))
    seen = {e}
    elements = [e]
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = _compose(s, x)
            if y not in seen:
                seen.add(y)
                elements.append(y)
                queue.append(y)
    return PermutationGroup(domain, gens, elements)


@dataclass(frozen=True)
class StabilizerInfo:
    cell: tuple
    pointwise_stabilizer: frozenset
    order: int
    kind: str


class SimplicialAction:
    """A permutation group acting on the vertices of a complex by simplicial maps.

    ``cell_map`` is set on actions produced by :func:`regularize` and sends
    each cell of the current complex to the cell of the original complex
    containing its interior.
    """

    def __init__(self, group, complex, cell_map=None, subdivisions=0):
        if set(group.domain) != set(complex.vertices):
            raise NotBijection("group domain differs from the vertex set of the complex")
        for g in group.generators:
            for c in complex.cells:
                if group.image(g, c) not in complex:
                    raise NotSimplicial(f"{group.token(g)} sends {list(c)} to a non-cell")
        self.group = group
        self.complex = complex
        self.cell_map = cell_map
        self.subdivisions = subdivisions

    @classmethod
    def from_generators(cls, complex, generators):
        return cls(close_group(generators, complex.vertices), complex)

    def __repr__(self):
        return f"SimplicialAction(order={self.group.order}, complex={self.complex!r})"

    @cached_property
    def _fixed_sets(self):
        G = self.group
        return {g: frozenset(v for i, v in enumerate(G.domain) if g[i] == i) for g in G.elements}

    @cached_property
    def _reflections(self):
        """Elements of order two fixing some codimension-one cell pointwise."""
        K = self.complex
        out = set()
        for g, fixed in self._fixed_sets.items():
            if self.group.element_order(g) != 2:
                continue
            if any(fixed.issuperset(c) for c in K.cells_of_dim(K.dim - 1)):
                out.add(g)
        return out

    @cached_property
    def vertex_orbit_rep(self):
        """Map each vertex to the least vertex of its orbit."""
        G = self.group
        rep = {}
        for v in sorted(G.domain, key=vkey):
            if v in rep:
                continue
            for g in G.elements:
                rep.setdefault(G.apply(g, v), v)
        return rep

    def pointwise_stabilizer(self, cell):
        return frozenset(g for g, fixed in self._fixed_sets.items() if fixed.issuperset(cell))

    def classify(self, elements):
        return classify_subgroup(self.group, elements, self._reflections)


def classify_subgroup(G, elements, reflections=frozenset()):
    n = len(elements)
    if n == 1:
        return "trivial"
    if n == 2 and any(g in reflections for g in elements):
        return "reflection"
    orders = {g: G.element_order(g) for g in elements}
    if max(orders.values()) == n:
        return "cyclic"
    # dihedral: a cyclic subgroup of index two, every element outside it an involution
    for g, k in orders.items():
        if k == n // 2 and n % 2 == 0:
            inside = set()
            x = g
            for _ in range(k):
                inside.add(x)
                x = _compose(g, x)
            if all(orders[h] == 2 for h in elements if h not in inside):
                return "dihedral"
    counts = Counter(orders.values())
    shape = ".".join(f"{k}^{counts[k]}" for k in sorted(counts))
    return f"named:G{n}:{shape}"


def stabilizer(A, cell):
    cell = canonical_cell(cell)
    if cell not in A.complex:
        raise CellNotFound(f"cell {list(cell)} is not in the complex")
    H = A.pointwise_stabilizer(cell)
    return StabilizerInfo(cell, H, len(H), A.classify(H))


def is_regular(A):
    """Every element fixing a cell setwise fixes it pointwise."""
    G = A.group
    for g in G.elements:
        if g == G.identity:
            continue
        fixed = A._fixed_sets[g]
        for c in A.complex.cells:
            if fixed.issuperset(c):
                continue
            if G.image(g, c) == c:
                return False
    return True


def _quotient_ready(A):
    """The extra condition making the orbit space a simplicial complex.

    No cell has two vertices in one orbit, and cells with the same set of
    vertex orbits lie in one cell orbit.
    """
    rep = A.vertex_orbit_rep
    G = A.group
    seen = {}
    for c in A.complex.sorted_cells:
        image = frozenset(rep[v] for v in c)
        if len(image) != len(c):
            return False
        first = seen.setdefault(image, c)
        if first is not c and not any(G.image(g, first) == c for g in G.elements):
            return False
    return True


def is_quotient_ready(A):
    return is_regular(A) and _quotient_ready(A)


def _subdivide_action(A):
    K, cmap = barycentric_subdivision(A.complex)
    G = A.group
    new_domain = sorted(K.vertices, key=vkey)
    new_index = {v: i for i, v in enumerate(new_domain)}
    old_cells = {cell_token(c): c for c in A.complex.cells}

    def lift(g):
        return tuple(new_index[cell_token(G.image(g, old_cells[v]))] for v in new_domain)

    elements = [lift(g) for g in G.elements]
    gens = [lift(g) for g in G.generators]
    H = PermutationGroup(new_domain, gens, elements)
    if A.cell_map is not None:
        cmap = {c: A.cell_map[o] for c, o in cmap.items()}
    return SimplicialAction(H, K, cmap, A.subdivisions + 1)


def regularize(A, max_subdivisions=2):
    """Subdivide until the action is regular and its orbit space is simplicial.

    Returns ``A`` itself when no subdivision is needed.
    """
    B = A
    while not is_quotient_ready(B):
        if B.subdivisions - A.subdivisions >= max_subdivisions:
            raise NotRegular(f"still not regular after {max_subdivisions} subdivisions")
        B = _subdivide_action(B)
    return B


def _map_boundary_faces(A, faces):
    faces = {canonical_cell(f) for f in faces}
    if all(f in A.complex for f in faces):
        return faces
    if A.cell_map is None:
        missing = [list(f) for f in faces if f not in A.complex]
        raise CellNotFound(f"boundary faces not in the complex: {missing[:3]}")
    n = A.complex.dim
    return {c for c, o in A.cell_map.items() if len(c) == n and o in faces}


def quotient(A, manifold_boundary_faces=None, name=None):
    """The orbifold M/Γ.

    ``manifold_boundary_faces`` defaults to the whole topological boundary of
    the complex.  Faces of the original complex are accepted for an action
    returned by :func:`regularize`.  Quotient vertices are orbit minima.
    """
    if not is_regular(A):
        raise NotRegular("some element fixes a cell setwise but not pointwise")
    if not _quotient_ready(A):
        raise NotRegular("orbit space is not simplicial; call regularize() first")
    K = A.complex
    G = A.group
    top_boundary = set(boundary_facets(K))
    if manifold_boundary_faces is None:
        bf = top_boundary
    else:
        bf = _map_boundary_faces(A, manifold_boundary_faces)
        stray = [f for f in bf if f not in top_boundary]
        if stray:
            raise BoundaryNotInvariant(f"{list(stray[0])} is not on the topological boundary")
    for g in G.generators:
        for f in bf:
            if G.image(g, f) not in bf:
                raise BoundaryNotInvariant(f"{G.token(g)} moves {list(f)} off the boundary")
    rep = A.vertex_orbit_rep
    cells = set()
    labels = {}
    qbf = set()
    for c in K.sorted_cells:
        q = canonical_cell(rep[v] for v in c)
        if q in cells:
            continue
        cells.add(q)
        H = A.pointwise_stabilizer(c)
        if len(H) > 1:
            tokens = frozenset(G.token(g) for g in H)
            labels[q] = LocalGroupLabel(len(H), A.classify(H), tokens)
        if c in bf:
            qbf.add(q)
    O = OrbifoldComplex(SimplicialComplex(cells), labels, qbf, dim=K.dim, name=name)
    if O.violations:
        raise InvalidOrbifold(O.violations)
    return O


def covering_multiplicativity_check(A):
    """χ(M) = |Γ| · χ(M/Γ), exactly."""
    if not is_regular(A):
        raise NotRegular("some element fixes a cell setwise but not pointwise")
    Q = quotient(regularize(A))
    return euler_char_top(A.complex) == A.group.order * Q.chi


def orbit_cells(A, cell):
    """All images of ``cell``, sorted."""
    G = A.group
    return sort_cells({G.image(g, cell) for g in G.elements})


__all__ = [
    "PermutationGroup",
    "SimplicialAction",
    "StabilizerInfo",
    "classify_subgroup",
    "close_group",
    "covering_multiplicativity_check",
    "is_quotient_ready",
    "is_regular",
    "orbit_cells",
    "quotient",
    "regularize",
    "stabilizer",
]
