"""Finite abstract simplicial complexes.

A cell is a tuple of vertex ids in canonical order (see :func:`vkey`).  A
:class:`SimplicialComplex` is an immutable, face-closed set of such tuples.
Vertex ids may be ints or strings; ints sort before strings.
"""

from collections import Counter
from functools import cached_property
from itertools import combinations

from .errors import DuplicateVertexInCell, NotPseudomanifold


def vkey(v):
    if isinstance(v, int):
        return (0, v, "")
    return (1, 0, str(v))


def cell_key(cell):
    return (len(cell), tuple(vkey(v) for v in cell))


def sort_cells(cells):
    return sorted(cells, key=cell_key)


def canonical_cell(vertices):
    """Sort a vertex list into a cell tuple, rejecting repeats and empties."""
    cell = tuple(sorted(vertices, key=vkey))
    if not cell:
        raise ValueError("cells must be non-empty")
    if len(set(cell)) != len(cell):
        raise DuplicateVertexInCell(f"cell {list(vertices)!r} repeats a vertex")
    return cell


def faces_of(cell):
    """All non-empty faces of ``cell``, itself included."""
    n = len(cell)
    out = []
    for k in range(1, n + 1):
        out.extend(combinations(cell, k))
    return out


def facets_of(cell):
    """Codimension-one faces of ``cell`` (empty for a vertex)."""
    if len(cell) == 1:
        return ()
    return tuple(cell[:i] + cell[i + 1:] for i in range(len(cell)))


def cell_token(cell):
    """Vertex id given to ``cell`` when it becomes a vertex of a subdivision."""
    return "[" + ",".join(str(v) for v in cell) + "]"


class SimplicialComplex:
    """Immutable face-closed set of cells.

    The constructor trusts its input; use :func:`build_complex` or
    :meth:`closure_of` for unchecked vertex lists.
    """

    def __init__(self, cells=()):
        self._cells = frozenset(cells)

    @classmethod
    def closure_of(cls, cells):
        out = set()
        for c in cells:
            if c in out:
                continue
            out.update(faces_of(c))
        return cls(out)

    @property
    def cells(self):
        return self._cells

    def __contains__(self, cell):
        return cell in self._cells

    def __len__(self):
        return len(self._cells)

    def __iter__(self):
        return iter(self.sorted_cells)

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self._cells == other._cells

    def __hash__(self):
        return hash(self._cells)

    def __repr__(self):
        return f"SimplicialComplex(dim={self.dim}, cells={len(self)})"

    @cached_property
    def sorted_cells(self):
        return tuple(sort_cells(self._cells))

    @cached_property
    def vertices(self):
        return frozenset(c[0] for c in self._cells if len(c) == 1)

    @cached_property
    def dim(self):
        """Maximal cell dimension; -1 for the empty complex."""
        return max((len(c) for c in self._cells), default=0) - 1

    @cached_property
    def _by_dim(self):
        out = {}
        for c in self._cells:
            out.setdefault(len(c) - 1, []).append(c)
        return {k: tuple(v) for k, v in out.items()}

    def cells_of_dim(self, k):
        """The k-cells, in no particular order."""
        return self._by_dim.get(k, ())

    @cached_property
    def maximal_cells(self):
        cof = self.cofaces
        return tuple(c for c in self.sorted_cells if not cof.get(c))

    @cached_property
    def cofaces(self):
        """Map each cell to its codimension-one cofaces (unordered)."""
        out = {c: [] for c in self._cells}
        for c in self._cells:
            for f in facets_of(c):
                out[f].append(c)
        return out

    @cached_property
    def is_pure(self):
        # every d-cell must be a facet of some (d+1)-cell, below the top
        for d in range(self.dim):
            covered = {f for c in self.cells_of_dim(d + 1) for f in facets_of(c)}
            if len(covered) != len(self.cells_of_dim(d)):
                return False
        return True

    def is_empty(self):
        return not self._cells

    def star_cells(self, vertices):
        """Maximal cells sharing at least one vertex with ``vertices``."""
        vs = set(vertices)
        return [c for c in self.maximal_cells if vs.intersection(c)]

    def is_full(self, sub):
        """True if every cell spanned by vertices of ``sub`` already lies in ``sub``."""
        vs = set(v for c in sub for v in c)
        cells = sub.cells if isinstance(sub, SimplicialComplex) else set(sub)
        return all(c in cells for c in self._cells if vs.issuperset(c))


def build_complex(maximal_cells):
    """Face closure of a list of vertex lists."""
    return SimplicialComplex.closure_of(canonical_cell(c) for c in maximal_cells)


def euler_char_top(K):
    return sum(1 if len(c) % 2 else -1 for c in K.cells)


def boundary_facets(K):
    """(n-1)-cells of a pure n-pseudomanifold lying in exactly one n-cell."""
    if K.is_empty() or K.dim == 0:
        if not K.is_pure:
            raise NotPseudomanifold("complex is not pure")
        return ()
    if not K.is_pure:
        raise NotPseudomanifold("complex is not pure")
    n = K.dim
    count = Counter(f for c in K.cells_of_dim(n) for f in facets_of(c))
    out = []
    for f, k in count.items():
        if k >= 3:
            raise NotPseudomanifold(f"{n - 1}-cell {list(f)} lies in {k} {n}-cells")
        if k == 1:
            out.append(f)
    return tuple(sort_cells(out))


def topological_boundary(K):
    return SimplicialComplex.closure_of(boundary_facets(K))


def barycentric_subdivision(K):
    """Return ``(sd K, cell_map)``.

    Vertices of ``sd K`` are the :func:`cell_token` strings of the cells of
    ``K``; ``cell_map`` sends each new cell (a flag) to its largest element.
    """
    chains = {}
    for c in (c for d in range(K.dim + 1) for c in K.cells_of_dim(d)):
        acc = [(c,)]
        for f in faces_of(c)[:-1]:
            acc.extend(ch + (c,) for ch in chains[f])
        chains[c] = acc
    token = {c: cell_token(c) for c in K.cells}
    new_cells = {}
    for c, flags in chains.items():
        for flag in flags:
            new = tuple(sorted((token[s] for s in flag), key=vkey))
            new_cells[new] = c
    return SimplicialComplex(new_cells), new_cells


def connected_components(cells):
    """Partition ``cells`` under the face/coface relation restricted to ``cells``."""
    cells = list(cells)
    members = set(cells)
    parent = {c: c for c in cells}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in cells:
        for f in faces_of(c)[:-1]:
            if f in members:
                ra, rb = find(c), find(f)
                if ra != rb:
                    parent[ra] = rb
    groups = {}
    for c in cells:
        groups.setdefault(find(c), []).append(c)
    comps = [frozenset(g) for g in groups.values()]
    comps.sort(key=lambda g: cell_key(min(g, key=cell_key)))
    return comps
