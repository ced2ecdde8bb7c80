"""Exact checks of the odd-dimensional Euler characteristic theorem and its oracles."""

from dataclasses import dataclass, field
from fractions import Fraction

from .complex import connected_components, euler_char_top
from .errors import EvenDimension, HasBoundary, NonTerminating, UnclassifiableSingularity
from .orbifold import chi_of_cells, fmt_rational, orbifold_boundary, require_valid
from .strata import decompose_at, is_closed, stratify, subdivide_twice, Stratum

HALF = Fraction(1, 2)


@dataclass
class Check:
    name: str
    expected: Fraction
    actual: Fraction

    @property
    def passed(self):
        return self.expected == self.actual

    def line(self):
        status = "pass" if self.passed else "FAIL"
        return f"{self.name}: expected {fmt_rational(self.expected)} actual {fmt_rational(self.actual)} {status}"


@dataclass
class LedgerStep:
    index: int
    stratum: str
    chi: dict
    checks: list
    identities: dict

    @property
    def passed(self):
        return all(c.passed for c in self.checks) and all(self.identities.values())


@dataclass
class VerificationReport:
    subject: str
    checks: list = field(default_factory=list)
    ledger: list = None

    @property
    def passed(self):
        steps = self.ledger or []
        return all(c.passed for c in self.checks) and all(s.passed for s in steps)


def _require_odd(O):
    if O.dim % 2 == 0:
        raise EvenDimension(f"dimension {O.dim} is even")


def check_main_theorem(O):
    _require_odd(O)
    require_valid(O)
    half_boundary = HALF * orbifold_boundary(O).chi
    return VerificationReport(O.name or "orbifold", [Check("chi = 1/2 chi(boundary)", half_boundary, O.chi)])


def check_satake(O):
    _require_odd(O)
    require_valid(O)
    if O.boundary_faces:
        raise HasBoundary("Satake vanishing needs an orbifold without boundary")
    return VerificationReport(O.name or "orbifold", [Check("chi = 0", Fraction(0), O.chi)])


@dataclass
class SingularData:
    cones: list
    corners: list
    mirror_points: int


def two_orbifold_data(O):
    """Cone orders and corner-reflector orders of a 2-orbifold.

    Singular vertices must be mirror points, cone points (cyclic, no mirror
    edge) or corner reflectors (dihedral, on a mirror edge); singular edges
    must be mirror edges.  Singular cells may not touch the orbifold boundary.
    """
    require_valid(O)
    if O.dim != 2:
        raise ValueError(f"expected a 2-orbifold, got dimension {O.dim}")
    boundary = O.boundary_closure.cells
    mirror_at = {}
    for c, lab in O.labels.items():
        if c in boundary:
            raise UnclassifiableSingularity(f"singular cell {list(c)} meets the orbifold boundary")
        if len(c) == 2:
            if (lab.order, lab.kind) != (2, "reflection"):
                raise UnclassifiableSingularity(f"edge {list(c)} has label {lab}")
            for v in c:
                mirror_at[v] = mirror_at.get(v, 0) + 1
    cones, corners, mirror_points = [], [], 0
    for c, lab in sorted(O.labels.items(), key=lambda t: str(t[0])):
        if len(c) != 1:
            continue
        on_mirror = mirror_at.get(c[0], 0) > 0
        if (lab.order, lab.kind) == (2, "reflection") and on_mirror:
            mirror_points += 1
        elif lab.kind == "cyclic" and not on_mirror:
            cones.append(lab.order)
        elif lab.kind == "dihedral" and on_mirror:
            corners.append(lab.order // 2)
        else:
            raise UnclassifiableSingularity(f"vertex {c[0]!r} with label {lab} is neither cone nor corner")
    return SingularData(sorted(cones), sorted(corners), mirror_points)


def two_orbifold_formula(O):
    """χ(|O|) − ½Σ(1 − 1/m) − Σ(1 − 1/n) from the detected singular data."""
    data = two_orbifold_data(O)
    chi = Fraction(euler_char_top(O.complex))
    chi -= HALF * sum((1 - Fraction(1, m) for m in data.corners), Fraction(0))
    chi -= sum((1 - Fraction(1, n) for n in data.cones), Fraction(0))
    return chi


def _singular_strata(O):
    labelled = {}
    for c, lab in O.labels.items():
        labelled.setdefault(lab, []).append(c)
    out = []
    for lab, cells in labelled.items():
        for comp in connected_components(cells):
            out.append(Stratum(len(out), comp, lab, max(len(c) for c in comp) - 1))
    return out


def _describe(S):
    return f"dim {S.dim} order {S.label.order} {S.label.kind} ({len(S.cells)} cells)"


def prove_by_decomposition(O):
    """Replay the inductive proof: peel off minimal singular strata one at a time.

    The orbifold is subdivided twice once, up front; every neighbourhood is
    then a closed star in that fixed triangulation.  Each step records the
    eight Euler characteristics of the decomposition and checks
    inclusion-exclusion, the ledger identity and the boundary identities.
    """
    _require_odd(O)
    require_valid(O)
    subject = O.name or "orbifold"
    chi_O = O.chi
    chi_dO = orbifold_boundary(O).chi
    report = VerificationReport(subject, [Check("chi = 1/2 chi(boundary)", HALF * chi_dO, chi_O)], [])
    n_singular = sum(1 for s in stratify(O) if s.is_singular)
    if n_singular == 0:
        report.checks.append(Check("manifold base case", HALF * chi_dO, chi_O))
        return report
    budget = n_singular + 1
    current, _ = subdivide_twice(O)
    removed = Fraction(0)
    while True:
        strata = _singular_strata(current)
        if not strata:
            break
        if len(report.ledger) >= budget:
            raise NonTerminating(f"more than {budget} extraction steps")
        closed = sorted((s for s in strata if is_closed(s)),
                        key=lambda s: (s.dim, -s.label.order, min(map(str, s.cells))))
        S = closed[0]
        D = decompose_at(current, S.cells)
        chi = D.chi_values()
        lab = current.label
        b = D.boundary_cells
        checks = [
            Check("inclusion-exclusion", chi["O1"] + chi["O2"] - chi["O1&O2"], chi["O"]),
            Check("boundary inclusion-exclusion",
                  chi_of_cells(b & D.O1.cells, lab) + chi_of_cells(b & D.O2.cells, lab)
                  - chi_of_cells(b & D.intersection.cells, lab), chi["dO"]),
            Check("neighbourhood: chi(O1) = 1/2 chi(dO1)", HALF * chi["dO1"], chi["O1"]),
            Check("ledger: chi(O) = 1/2 chi(dO) - 1/2 chi(d(O1&O2))",
                  HALF * chi["dO"] - HALF * chi["d(O1&O2)"], chi["O"]),
            Check("chi(d(O1&O2)) = 0", Fraction(0), chi["d(O1&O2)"]),
        ]
        report.ledger.append(LedgerStep(len(report.ledger) + 1, _describe(S), chi, checks, D.identities()))
        removed += chi["O1"] - chi["O1&O2"]
        current = D.O2
    final_chi = current.chi
    final_boundary = chi_of_cells(current.boundary_closure.cells, current.label)
    report.checks.append(Check("manifold base case", HALF * final_boundary, final_chi))
    report.checks.append(Check("reassembled chi", chi_O, removed + final_chi))
    return report


def report_lines(report):
    lines = [f"subject: {report.subject}"]
    for c in report.checks:
        lines.append(c.line())
    for step in report.ledger or []:
        lines.append(f"step {step.index}: stratum {step.stratum}")
        lines.append("  " + " ".join(f"chi({k})={fmt_rational(v)}" for k, v in step.chi.items()))
        for c in step.checks:
            lines.append("  " + c.line())
        for k, v in step.identities.items():
            lines.append(f"  {k}: {'pass' if v else 'FAIL'}")
    lines.append("result: " + ("pass" if report.passed else "FAIL"))
    return lines
