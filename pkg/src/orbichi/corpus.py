"""Deterministic example orbifolds: 1-orbifolds, bad 2-orbifolds, ball quotients,
mirrors and doubles."""

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .action import SimplicialAction, close_group, quotient, regularize
from .complex import build_complex, canonical_cell, cell_token, euler_char_top, vkey
from .errors import OrderTooSmall, UnknownEntry
from .orbifold import (
    REFLECTION,
    LocalGroupLabel,
    build_orbifold,
    double,
    manifold,
    mirror,
    orbifold_boundary,
)


@dataclass
class CorpusEntry:
    name: str
    orbifold: object
    provenance: str
    expected_chi: Fraction = None
    source: str = None
    action: object = None
    is_manifold: bool = False


def _cyc(n):
    return LocalGroupLabel(n, "cyclic")


# -- dimension one ---------------------------------------------------------

def build_dim1():
    path = [[0, 1], [1, 2]]
    interval = build_orbifold(path, boundary_faces=[[0], [2]], name="interval")
    circle = build_orbifold([[0, 1], [1, 2], [0, 2]], name="s1")
    m1 = build_orbifold(path, labels=[([0], REFLECTION)], boundary_faces=[[2]], name="m1")
    m2 = build_orbifold(path, labels=[([0], REFLECTION), ([2], REFLECTION)], name="m2")
    return [
        CorpusEntry("interval", interval, "direct-labeled", Fraction(1), "QUOTED", is_manifold=True),
        CorpusEntry("s1", circle, "direct-labeled", Fraction(0), "QUOTED", is_manifold=True),
        CorpusEntry("m1", m1, "direct-labeled", Fraction(1, 2), "QUOTED"),
        CorpusEntry("m2", m2, "direct-labeled", Fraction(0), "QUOTED"),
    ]


# -- bad 2-orbifolds -------------------------------------------------------

def _suspended_triangle():
    ring = ["p0", "p1", "p2"]
    cells = []
    for i in range(3):
        a, b = ring[i], ring[(i + 1) % 3]
        cells += [["N", a, b], ["S", a, b]]
    return cells


def teardrop(n):
    if n < 2:
        raise OrderTooSmall(f"cone order {n} < 2")
    return build_orbifold(_suspended_triangle(), labels=[(["N"], _cyc(n))], name=f"teardrop{n}")


def spindle(n, m):
    if min(n, m) < 2:
        raise OrderTooSmall(f"cone orders ({n}, {m}) must be at least 2")
    labels = [(["N"], _cyc(n)), (["S"], _cyc(m))]
    return build_orbifold(_suspended_triangle(), labels=labels, name=f"spindle{n}_{m}")


def turnover(n, m, r):
    if min(n, m, r) < 2:
        raise OrderTooSmall(f"cone orders ({n}, {m}, {r}) must be at least 2")
    labels = [(["N"], _cyc(n)), (["S"], _cyc(m)), (["p0"], _cyc(r))]
    return build_orbifold(_suspended_triangle(), labels=labels, name=f"turnover{n}_{m}_{r}")


def _cone_defect(*orders):
    return sum((1 - Fraction(1, k) for k in orders), Fraction(0))


def build_bad2(n, m, r):
    return [
        CorpusEntry(f"teardrop{n}", teardrop(n), "direct-labeled", 1 + Fraction(1, n), "QUOTED"),
        CorpusEntry(f"spindle{n}_{m}", spindle(n, m), "direct-labeled", 2 - _cone_defect(n, m), "DERIVED"),
        CorpusEntry(f"turnover{n}_{m}_{r}", turnover(n, m, r), "direct-labeled",
                    2 - _cone_defect(n, m, r), "DERIVED"),
    ]


# -- manifolds -------------------------------------------------------------

def build_manifolds():
    def entry(name, cells):
        K = build_complex(cells)
        return CorpusEntry(name, manifold(K, name), "direct-labeled",
                           Fraction(euler_char_top(K)), "DERIVED", is_manifold=True)

    s3 = [[v for v in range(5) if v != i] for i in range(5)]
    return [
        entry("disk", [[0, 1, 2]]),
        entry("sphere2", [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]),
        entry("ball3", [[0, 1, 2, 3]]),
        entry("s3", s3),
    ]


# -- quotients -------------------------------------------------------------

def _quotient_entry(name, K, generators, source="DERIVED"):
    A = SimplicialAction.from_generators(K, generators)
    A = regularize(A)
    O = quotient(A, name=name)
    expected = Fraction(euler_char_top(K), A.group.order)
    return CorpusEntry(name, O, f"quotient({A.group.order})", expected, source, action=A)


def _path_z2():
    K = build_complex([[-1, 0], [0, 1]])
    return _quotient_entry("path_z2", K, [[[-1, 1]]])


def _disk_z3():
    ring = [f"q{i}" for i in range(9)]
    K = build_complex([["c", ring[i], ring[(i + 1) % 9]] for i in range(9)])
    rot = {ring[i]: ring[(i + 3) % 9] for i in range(9)}
    return _quotient_entry("disk_z3", K, [rot])


def _bipyramid_ball(k):
    ring = [f"q{i}" for i in range(k)]
    cells = []
    for i in range(k):
        a, b = ring[i], ring[(i + 1) % k]
        cells += [["c", "N", a, b], ["c", "S", a, b]]
    return build_complex(cells), ring


def ball_cyclic(n):
    """ℤ_n rotating a coned bipyramid over a 3n-gon."""
    K, ring = _bipyramid_ball(3 * n)
    k = len(ring)
    rot = {ring[i]: ring[(i + 3) % k] for i in range(k)}
    return _quotient_entry(f"d3_z{n}", K, [rot])


def ball_dihedral(n):
    """The order-2n group generated by a rotation and a reflection plane (C_nv)."""
    K, ring = _bipyramid_ball(6 * n)
    k = len(ring)
    gens = [{ring[i]: ring[-i % k] for i in range(k)}]
    if n > 1:
        gens.append({ring[i]: ring[(i + 6) % k] for i in range(k)})
    return _quotient_entry(f"d3_c{n}v", K, gens)


_TOKEN = re.compile(r"\[[^\]]*\]")


def _move_token(tok, perm):
    verts = [perm.get(int(x), int(x)) for x in tok[1:-1].split(",")]
    return cell_token(canonical_cell(verts))


def _move(v, perm):
    if v == "c":
        return v
    if v.startswith("s"):
        toks = sorted((_move_token(t, perm) for t in _TOKEN.findall(v)), key=vkey)
        return "s" + "".join(toks)
    return _move_token(v, perm)


def _sd_tetra_boundary():
    cells = []
    for face in [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]:
        for v in face:
            for e in [x for x in [(a, b) for a in face for b in face if a < b] if v in x]:
                cells.append([cell_token((v,)), cell_token(e), cell_token(face)])
    return cells


def _starred(triangles):
    out = []
    for t in triangles:
        t = canonical_cell(t)
        s = "s" + "".join(t)
        out += [[s, t[0], t[1]], [s, t[1], t[2]], [s, t[0], t[2]]]
    return out


def _coned(triangles):
    return build_complex([["c"] + list(t) for t in triangles])


def _tetra_generators(K, perms):
    return [{v: _move(v, p) for v in K.vertices} for p in perms]


T12_GENERATORS = [{1: 2, 2: 3, 3: 1}, {1: 2, 2: 1, 3: 4, 4: 3}]
T24_GENERATORS = [{1: 2, 2: 3, 3: 4, 4: 1}, {1: 2, 2: 1}]


def ball_t12():
    K = _coned(_starred(_sd_tetra_boundary()))
    return _quotient_entry("d3_t12", K, _tetra_generators(K, T12_GENERATORS), "QUOTED")


def ball_t12_plain():
    """T12 on the coned subdivided tetrahedron boundary; needs one more subdivision."""
    K = _coned(_sd_tetra_boundary())
    return _quotient_entry("d3_t12_sd", K, _tetra_generators(K, T12_GENERATORS), "QUOTED")


def ball_t24():
    K = _coned(_sd_tetra_boundary())
    return _quotient_entry("d3_t24", K, _tetra_generators(K, T24_GENERATORS), "QUOTED")


def build_disk_quotients():
    return [
        _path_z2(),
        _disk_z3(),
        ball_cyclic(2),
        ball_cyclic(3),
        ball_cyclic(5),
        ball_dihedral(1),
        ball_dihedral(2),
        ball_dihedral(3),
        ball_t12(),
        ball_t12_plain(),
        ball_t24(),
    ]


# -- mirrors and doubles ---------------------------------------------------

def build_mirrors_and_doubles(entries):
    out = []
    for e in entries:
        O = e.orbifold
        if not O.boundary_faces:
            continue
        if e.is_manifold:
            chi_b = orbifold_boundary(O).chi
            out.append(CorpusEntry(f"mirror_{e.name}", mirror(O.complex, f"mirror_{e.name}"),
                                   f"mirror({e.name})", O.chi - chi_b / 2, "DERIVED"))
    for e in entries:
        O = e.orbifold
        if not O.boundary_faces:
            continue
        D = double(O)
        D.name = f"double_{e.name}"
        chi_b = orbifold_boundary(O).chi
        out.append(CorpusEntry(D.name, D, f"double({e.name})", 2 * O.chi - chi_b, "DERIVED"))
    return out


# -- registry --------------------------------------------------------------

DOUBLED = ("interval", "m1", "disk", "ball3", "path_z2", "disk_z3", "d3_z3", "d3_c2v", "d3_t12", "d3_t24")


@lru_cache(maxsize=None)
def _registry():
    entries = build_dim1()
    for n in range(2, 13):
        entries.append(CorpusEntry(f"teardrop{n}", teardrop(n), "direct-labeled", 1 + Fraction(1, n), "QUOTED"))
    for n in range(2, 7):
        for m in range(n, 7):
            entries.append(CorpusEntry(f"spindle{n}_{m}", spindle(n, m), "direct-labeled",
                                       2 - _cone_defect(n, m), "DERIVED"))
    for t in [(2, 3, 5), (2, 3, 7), (3, 3, 3)]:
        entries.append(CorpusEntry("turnover{}_{}_{}".format(*t), turnover(*t), "direct-labeled",
                                   2 - _cone_defect(*t), "DERIVED"))
    entries += build_manifolds()
    entries += build_disk_quotients()
    base = {e.name: e for e in entries}
    entries += build_mirrors_and_doubles([base[k] for k in DOUBLED])
    return {e.name: e for e in entries}


def entry_names():
    return list(_registry())


def all_entries():
    return list(_registry().values())


def get_entry(name):
    try:
        return _registry()[name]
    except KeyError:
        raise UnknownEntry(name) from None
