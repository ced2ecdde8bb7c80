from fractions import Fraction

from hypothesis import HealthCheck, given, settings, strategies as st

from orbichi.action import SimplicialAction, covering_multiplicativity_check, quotient, regularize
from orbichi.complex import (
    SimplicialComplex,
    boundary_facets,
    build_complex,
    euler_char_top,
    faces_of,
    sort_cells,
    topological_boundary,
)
from orbichi.corpus import all_entries, entry_names, get_entry, spindle, teardrop, turnover
from orbichi.errors import NotPseudomanifold
from orbichi.orbifold import (
    OrbifoldComplex,
    REFLECTION,
    TRIVIAL,
    build_orbifold,
    chi_of_cells,
    cyclic,
    double,
    euler_char,
    mirror,
    orbifold_boundary,
    subdivide_orbifold,
    validate,
)
from orbichi.strata import (
    closure_decomposition,
    extract_neat_decomposition,
    minimal_strata,
    strata_poset,
    stratify,
)
from orbichi.verify import check_main_theorem, two_orbifold_formula

from conftest import proof_report

NAMES = entry_names()
ODD = [e.name for e in all_entries() if e.orbifold.dim % 2]
FAST = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])

names = st.sampled_from(NAMES)
orders = st.integers(2, 9)


def _primes_above(n):
    p = n + 1
    while any(p % d == 0 for d in range(2, p)):
        p += 1
    return p


@FAST
@given(names)
def test_subdivision_invariance(name):
    O = get_entry(name).orbifold
    S = subdivide_orbifold(O)
    assert validate(S) == []
    assert euler_char(S) == euler_char(O)
    assert orbifold_boundary(S).chi == orbifold_boundary(O).chi


@FAST
@given(names)
def test_divisibility_along_faces(name):
    O = get_entry(name).orbifold
    for c in O.cells:
        k = O.label(c).order
        for f in faces_of(c):
            assert O.label(f).order % k == 0


@FAST
@given(names)
def test_boundary_of_boundary_empty(name):
    B = orbifold_boundary(get_entry(name).orbifold)
    assert orbifold_boundary(B).is_empty()
    assert validate(B) == []


@FAST
@given(names)
def test_poset_is_a_partial_order(name):
    strata = stratify(get_entry(name).orbifold)
    P = strata_poset(strata)
    ids = range(len(strata))
    for i in ids:
        assert P.leq(i, i)
        for j in ids:
            if i != j and P.leq(i, j):
                assert not P.leq(j, i)
                for k in ids:
                    if P.leq(j, k):
                        assert P.leq(i, k)


@FAST
@given(names)
def test_strata_partition_the_cells(name):
    O = get_entry(name).orbifold
    strata = stratify(O)
    seen = set()
    for s in strata:
        assert not seen & s.cells
        seen |= s.cells
        assert all(O.label(c) == s.label for c in s.cells)
    assert seen == O.cells


@FAST
@given(names)
def test_minimal_strata_closed(name):
    P = strata_poset(stratify(get_entry(name).orbifold))
    for s in minimal_strata(P):
        assert s.closure == s.cells


@FAST
@given(names)
def test_order_grows_towards_the_closure(name):
    strata = stratify(get_entry(name).orbifold)
    for s in strata:
        for t in closure_decomposition(s, strata):
            assert t.label.order % s.label.order == 0
            assert t.label.order > s.label.order


@FAST
@given(st.sampled_from(ODD))
def test_decomposition_identities_on_odd_entries(name):
    rep = proof_report(name)
    for step in rep.ledger:
        for key in ("i_boundary_O1", "i_boundary_O2", "ii_boundary_split", "iii_neat_meet"):
            assert step.identities[key], (name, step.index, key)


@FAST
@given(st.integers(2, 12), st.integers(2, 6))
def test_neat_decomposition_of_bad_orbifolds(n, m):
    O = spindle(n, m)
    S = [s for s in stratify(O) if s.is_singular][0]
    D = extract_neat_decomposition(O, S)
    ids = D.identities()
    assert all(ids.values()), ids
    chi = D.chi_values()
    assert chi["O"] == chi["O1"] + chi["O2"] - chi["O1&O2"]


@FAST
@given(names, st.data())
def test_single_label_corruption_is_caught(name, data):
    O = get_entry(name).orbifold
    cells = sort_cells(c for c in O.cells if len(c) > 1)
    c = data.draw(st.sampled_from(cells))
    worst = max([1] + [lab.order for lab in O.labels.values()])
    labels = dict(O.labels)
    labels[c] = cyclic(_primes_above(worst))
    bad = OrbifoldComplex(O.complex, labels, O.boundary_faces, dim=O.dim)
    rules = {v.rule for v in validate(bad)}
    assert rules & {"DivisibilityViolation", "NonEffective"}


@FAST
@given(st.lists(orders, min_size=1, max_size=3))
def test_cone_formula_on_random_spheres(cones):
    O = [teardrop, spindle, turnover][len(cones) - 1](*cones)
    expected = 2 - sum((1 - Fraction(1, k) for k in cones), Fraction(0))
    assert euler_char(O) == two_orbifold_formula(O) == expected
    assert euler_char(subdivide_orbifold(O)) == expected


@st.composite
def one_orbifolds(draw):
    """A path or cycle with random ends: reflectors or boundary points."""
    n = draw(st.integers(2, 7))
    if draw(st.booleans()):
        return build_orbifold([[i, (i + 1) % (n + 1)] for i in range(n + 1)])
    ends = draw(st.lists(st.sampled_from(["boundary", "mirror"]), min_size=2, max_size=2))
    labels = [([v], REFLECTION) for v, e in zip((0, n), ends) if e == "mirror"]
    bf = [[v] for v, e in zip((0, n), ends) if e == "boundary"]
    return build_orbifold([[i, i + 1] for i in range(n)], labels=labels, boundary_faces=bf)


@FAST
@given(one_orbifolds())
def test_random_1_orbifolds(O):
    assert validate(O) == []
    assert check_main_theorem(O).passed
    chi, chi_b = euler_char(O), orbifold_boundary(O).chi
    assert 2 * chi == chi_b
    if O.boundary_faces:
        D = double(O)
        assert not D.boundary_faces and euler_char(D) == 2 * chi - chi_b == 0


@st.composite
def grid_disks(draw):
    """Random non-empty subsets of the triangles of a 3x3 grid."""
    tris = []
    for i in range(3):
        for j in range(3):
            a, b, c, d = (i, j), (i + 1, j), (i, j + 1), (i + 1, j + 1)
            tris += [[f"{p}" for p in (a, b, d)], [f"{p}" for p in (a, c, d)]]
    idx = draw(st.sets(st.integers(0, len(tris) - 1), min_size=1))
    return [tris[k] for k in sorted(idx)]


@FAST
@given(grid_disks(), grid_disks())
def test_inclusion_exclusion_on_random_subcomplexes(a, b):
    A = SimplicialComplex.closure_of([tuple(sorted(t)) for t in a]).cells
    B = SimplicialComplex.closure_of([tuple(sorted(t)) for t in b]).cells
    trivial = lambda c: TRIVIAL
    lhs = chi_of_cells(A | B, trivial)
    rhs = chi_of_cells(A, trivial) + chi_of_cells(B, trivial) - chi_of_cells(A & B, trivial)
    assert lhs == rhs


@FAST
@given(grid_disks())
def test_topological_boundary_is_a_mod_2_cycle(tris):
    K = build_complex(tris)
    try:
        B = topological_boundary(K)
    except NotPseudomanifold:
        return
    degree = {}
    for e in B.cells_of_dim(1):
        for v in e:
            degree[v] = degree.get(v, 0) + 1
    assert all(d % 2 == 0 for d in degree.values())


@FAST
@given(grid_disks())
def test_mirror_identity_on_random_surfaces(tris):
    K = build_complex(tris)
    try:
        boundary_facets(K)
    except NotPseudomanifold:
        return
    M = build_orbifold(tris, boundary_faces=[list(f) for f in boundary_facets(K)])
    mM = mirror(K)
    assert euler_char(mM) == euler_char(M) - orbifold_boundary(M).chi / 2


@FAST
@given(st.integers(2, 5), st.integers(1, 2))
def test_covering_multiplicativity_random_rotations(n, mult):
    k = n * mult
    ring = [f"q{i}" for i in range(3 * k)]
    cells = [["c", ring[i], ring[(i + 1) % (3 * k)]] for i in range(3 * k)]
    K = build_complex(cells)
    rot = {ring[i]: ring[(i + 3 * mult) % (3 * k)] for i in range(3 * k)}
    A = regularize(SimplicialAction.from_generators(K, [rot]))
    assert A.group.order == n
    assert covering_multiplicativity_check(A)
    Q = quotient(A)
    assert euler_char(Q) * n == euler_char_top(K)
