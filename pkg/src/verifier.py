"""
Case analysis behind cr(G) >= cr(K_r) for 7 <= r <= 12, the n >= 4r
regime for larger r, and subdivision certificates for K_{r+2} minus C5.

Each case composes an edge lower bound m >= a*n + b with the crossing
inequalities cr >= alpha*m - beta*n + gamma into linear forms in n, and
evaluates them exactly over every n of the case up to a window. A
nonnegative-slope form that already reaches the target at the window edge
certifies all larger n.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from bounds import (
    PRTT_4,
    BoundNotApplicable,
    BoundRule,
    BoundValue,
    CrossingInequality,
    LinearForm,
    cr_lower_crossing_lemma,
    cr_lower_linear,
    crossing_inequalities,
    edge_rule_form,
    edge_rule_linear,
    guy_f,
    known_cr_complete,
    min_edges_critical,
)
from coloring import ColoringSolver, Coloring
from graph import Edge, Graph, contains_clique, make_kr2_minus_c5
from logger import LOG

MIN_R = 7
MAX_R = 12
DEFAULT_WINDOW_MULTIPLIER = 10

# crossing rules named by the published argument for each case
ARGUED_RULES: Dict[int, Dict[str, Tuple[BoundRule, ...]]] = {
    7: {"equals": (BoundRule.BORODIN_PLUS1,), "range": (BoundRule.BORODIN_PLUS1,)},
    8: {"equals": (BoundRule.PRTT_7_3,), "range": (BoundRule.EULER, BoundRule.PRTT_7_3)},
    9: {"equals": (BoundRule.PRTT_7_3,), "range": (BoundRule.PRTT_7_3,)},
    10: {"equals": (BoundRule.PRTT_3,), "range": (BoundRule.PRTT_4,)},
    11: {"equals": (BoundRule.PRTT_4,), "range": (BoundRule.PRTT_4,)},
    12: {"equals": (BoundRule.PRTT_4,), "range": (BoundRule.PRTT_4,)},
}


@dataclass(frozen=True)
class NCondition:
    """equals(k), range(lo, hi) minus excluded orders, or tail(lo) for every n >= lo"""

    kind: str
    lo: int
    hi: Optional[int] = None
    excluded: Tuple[int, ...] = ()

    @classmethod
    def equals(cls, k: int) -> "NCondition":
        return cls("equals", k, k)

    @classmethod
    def range(cls, lo: int, hi: int, excluded: Tuple[int, ...] = ()) -> "NCondition":
        return cls("range", lo, hi, tuple(sorted(excluded)))

    @classmethod
    def tail(cls, lo: int) -> "NCondition":
        return cls("tail", lo)

    def orders(self) -> List[int]:
        if self.kind == "tail":
            raise ValueError("a tail condition has no finite order list")
        return [n for n in range(self.lo, self.hi + 1) if n not in self.excluded]

    def label(self) -> str:
        if self.kind == "equals":
            return f"n = {self.lo}"
        if self.kind == "tail":
            return f"n >= {self.lo}"
        text = f"{self.lo} <= n <= {self.hi}"
        if self.excluded:
            text += ", n not in {" + ", ".join(str(k) for k in self.excluded) + "}"
        return text

    def to_dict(self) -> dict:
        return {"kind": self.kind, "lo": self.lo, "hi": self.hi, "excluded": list(self.excluded), "label": self.label()}


@dataclass
class CaseRecord:
    n_condition: NCondition
    edge_rule: BoundValue
    cr_rule: Optional[BoundRule]
    bound_as_linear: Optional[LinearForm]
    min_over_case: Optional[int]
    binding_n: Optional[int] = None
    exact_at_binding: Optional[Fraction] = None
    cr_rules_used: Tuple[BoundRule, ...] = ()
    argued_rules: Tuple[BoundRule, ...] = ()
    tail_certificate: Optional[dict] = None
    target: Optional[int] = None
    chain: List[Fraction] = field(default_factory=list)
    verdict: Optional[str] = None
    diagnostics: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "n_condition": self.n_condition.to_dict(),
            "edge_rule": self.edge_rule.to_dict(),
            "cr_rule": self.cr_rule.value if self.cr_rule else None,
            "bound_as_linear": self.bound_as_linear.to_dict() if self.bound_as_linear else None,
            "min_over_case": self.min_over_case,
            "binding_n": self.binding_n,
            "exact_at_binding": self.exact_at_binding,
            "cr_rules_used": [rule.value for rule in self.cr_rules_used],
            "argued_rules": [rule.value for rule in self.argued_rules],
            "tail_certificate": self.tail_certificate,
            "target": self.target,
            "chain": list(self.chain),
            "verdict": self.verdict,
            "diagnostics": list(self.diagnostics),
        }


@dataclass
class AlbertsonReport:
    r: int
    window: int
    hypotheses: List[str]
    target: int
    cases: List[CaseRecord]
    certified_min: Optional[int]
    binding_case: Optional[str]
    strengthened_min: Optional[int]
    verdict: str
    diagnostics: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "window": self.window,
            "hypotheses": list(self.hypotheses),
            "target": self.target,
            "cases": [case.to_dict() for case in self.cases],
            "certified_min": self.certified_min,
            "binding_case": self.binding_case,
            "strengthened_min": self.strengthened_min,
            "verdict": self.verdict,
            "diagnostics": list(self.diagnostics),
        }


def _best_composed(edges: LinearForm, n: int, inequalities: Tuple[CrossingInequality, ...]) -> Tuple[CrossingInequality, LinearForm, Fraction]:
    best = None
    for inequality in inequalities:
        form = inequality.compose(edges)
        value = form(n)
        if best is None or value > best[2]:
            best = (inequality, form, value)
    return best


def _evaluate_finite(r: int, condition: NCondition, edge_rule: BoundRule,
                     inequalities: Tuple[CrossingInequality, ...], argued: Tuple[BoundRule, ...]) -> CaseRecord:
    orders = condition.orders()
    binding = None
    used = set()
    for n in orders:
        edges = edge_rule_linear(edge_rule, r, n)
        inequality, form, value = _best_composed(edges, n, inequalities)
        used.add(inequality.rule)
        bound = max(0, math.ceil(value))
        if binding is None or bound < binding[0]:
            binding = (bound, n, inequality, form, value)
        LOG.debug(f"r={r} n={n}: {edge_rule.value} + {inequality.rule.value} gives {value} -> {bound}")

    bound, n, inequality, form, value = binding
    return CaseRecord(
        n_condition=condition,
        edge_rule=edge_rule_form(edge_rule, r, n),
        cr_rule=inequality.rule,
        bound_as_linear=form,
        min_over_case=bound,
        binding_n=n,
        exact_at_binding=value,
        cr_rules_used=tuple(rule for rule in BoundRule if rule in used),
        argued_rules=argued,
    )


def _evaluate_tail(r: int, start: int, target: int, inequalities: Tuple[CrossingInequality, ...]) -> CaseRecord:
    condition = NCondition.tail(start)
    edge_rule = BoundRule.KOSTOCHKA_STIEBITZ
    edges = edge_rule_linear(edge_rule, r, start)
    candidates = []
    for inequality in inequalities:
        form = inequality.compose(edges)
        if form.slope >= 0:
            candidates.append((form(start), inequality, form))

    record = CaseRecord(
        n_condition=condition,
        edge_rule=edge_rule_form(edge_rule, r, start),
        cr_rule=None,
        bound_as_linear=None,
        min_over_case=None,
        target=target,
    )
    if not candidates:
        record.diagnostics.append(f"no composed bound has nonnegative slope for n >= {start}")
        return record

    value, inequality, form = max(candidates, key=lambda c: c[0])
    record.cr_rule = inequality.rule
    record.bound_as_linear = form
    record.min_over_case = max(0, math.ceil(value))
    record.binding_n = start
    record.exact_at_binding = value
    record.cr_rules_used = (inequality.rule,)
    record.tail_certificate = {
        "start": start,
        "slope": form.slope,
        "slope_sign": "positive" if form.slope > 0 else "zero",
        "value_at_start": value,
    }
    if record.min_over_case < target:
        record.diagnostics.append(
            f"best nonnegative-slope bound {value} at n = {start} is below the target {target}"
        )
    return record


def _hypotheses(r: int) -> Tuple[List[str], int]:
    hypotheses = ["G is r-critical"]
    if r in (7, 12):
        hypotheses.append("G != K_r")
    else:
        hypotheses.append("G does not contain K_r")
    hypotheses.append("n != r + 1")
    if r == 12:
        hypotheses.append("n >= r + 3 (K_{r+2} minus C5 contains a subdivision of K_r with one subdivided edge)")
        return hypotheses, r + 3
    hypotheses.append("n >= r + 2 (the only non-complete r-critical graph on r + 2 vertices is K_{r+2} minus C5)")
    return hypotheses, r + 2


def _strengthened_min(r: int, n_min: int, window: int, inequalities: Tuple[CrossingInequality, ...],
                      tail: CaseRecord) -> Optional[int]:
    values = []
    for n in range(n_min, window + 1):
        best_edges = min_edges_critical(r, n, True)
        _, value = max(((q, q.value(n, best_edges.value)) for q in inequalities), key=lambda item: item[1])
        values.append(max(0, math.ceil(value)))
    if tail.min_over_case is not None:
        values.append(tail.min_over_case)
    return min(values) if values else None


def verify_albertson(r: int, window: Optional[int] = None) -> AlbertsonReport:
    """
    Re-derive cr(G) >= cr(K_r) for r-critical G, 7 <= r <= 12.

    Args:
        r: Chromatic number
        window: Largest order checked one by one; defaults to 10r, must be >= 2r

    Raises:
        ValueError: If r is outside 7..12 or the window is too small
    """
    if not MIN_R <= r <= MAX_R:
        raise ValueError(f"case analysis covers {MIN_R} <= r <= {MAX_R}, got {r}")
    window = DEFAULT_WINDOW_MULTIPLIER * r if window is None else window
    if window < 2 * r:
        raise ValueError(f"window must be at least 2r = {2 * r}, got {window}")

    target = known_cr_complete(r)
    hypotheses, n_min = _hypotheses(r)
    inequalities = crossing_inequalities(enable_borodin=r >= 7)
    argued = ARGUED_RULES[r]
    dirac_order = 2 * r - 1

    cases: List[CaseRecord] = [
        _evaluate_finite(r, NCondition.equals(dirac_order), BoundRule.DIRAC, inequalities, argued["equals"])
    ]
    singles = (15, 16) if r == 12 else ()
    for n in singles:
        cases.append(_evaluate_finite(r, NCondition.equals(n), BoundRule.GALLAI, inequalities, argued["range"]))
    cases.append(_evaluate_finite(
        r,
        NCondition.range(max((n_min,) + tuple(k + 1 for k in singles)), window, excluded=(dirac_order,)),
        BoundRule.KOSTOCHKA_STIEBITZ,
        inequalities,
        argued["range"],
    ))
    tail = _evaluate_tail(r, window + 1, target, inequalities)
    cases.append(tail)
    cases.sort(key=lambda case: (case.n_condition.lo, case.n_condition.kind))

    diagnostics = [f"{case.n_condition.label()}: {note}" for case in cases for note in case.diagnostics]
    minima = [case.min_over_case for case in cases]
    if any(value is None for value in minima):
        certified_min, binding_case = None, None
    else:
        binding = min(cases, key=lambda case: case.min_over_case)
        certified_min, binding_case = binding.min_over_case, binding.n_condition.label()

    verdict = "PASS" if certified_min is not None and certified_min >= target else "FAIL"
    strengthened = _strengthened_min(r, n_min, window, inequalities, tail)
    LOG.info(f"r={r}: certified cr(G) >= {certified_min} against cr(K_{r}) = {target}: {verdict}")
    return AlbertsonReport(
        r=r,
        window=window,
        hypotheses=hypotheses,
        target=target,
        cases=cases,
        certified_min=certified_min,
        binding_case=binding_case,
        strengthened_min=strengthened,
        verdict=verdict,
        diagnostics=diagnostics,
    )


def verify_large_n(r: int) -> CaseRecord:
    """
    cr(G) >= cr(K_r) conjecture value for r-critical G with n >= 4r, r >= 13.

    For r = 13 the fourth linear inequality with m >= 6n already suffices.
    For r >= 14 the Crossing Lemma chain is evaluated exactly at n = 4r and
    its growth in n recorded.
    """
    if r < 13:
        raise ValueError(f"the n >= 4r regime is handled for r >= 13, got {r}")
    start = 4 * r
    target = guy_f(r)
    edges = LinearForm(Fraction(r - 1, 2), Fraction(0))
    edge_rule = BoundValue(edges(start), BoundRule.TRIVIAL_DEGREE, ("G is r-critical", f"n >= {start}"))

    if r == 13:
        form = PRTT_4.compose(edges)
        value = form(start)
        bound = max(0, math.ceil(value))
        ok = form.slope >= 0 and bound >= target
        record = CaseRecord(
            n_condition=NCondition.tail(start),
            edge_rule=edge_rule,
            cr_rule=BoundRule.PRTT_4,
            bound_as_linear=form,
            min_over_case=bound,
            binding_n=start,
            exact_at_binding=value,
            cr_rules_used=(BoundRule.PRTT_4,),
            tail_certificate={"start": start, "slope": form.slope,
                              "slope_sign": "positive" if form.slope > 0 else "zero" if form.slope == 0 else "negative",
                              "value_at_start": value},
            target=target,
            chain=[value, Fraction(target)],
            verdict="PASS" if ok else "FAIL",
        )
        LOG.info(f"r=13, n >= {start}: {value} >= {target}: {record.verdict}")
        return record

    m = int(edges(start))
    diagnostics = []
    try:
        first: Optional[Fraction] = cr_lower_crossing_lemma(start, m).value
    except BoundNotApplicable as e:
        first = None
        diagnostics.append(f"Crossing Lemma does not apply at n = {start}, m = {m}: {e}")
    # cr >= (r-1)^3 n / 248.8, linear in n with positive slope
    growth = LinearForm(Fraction((r - 1) ** 3 * 10, 2488), Fraction(0))
    links = [growth(start), Fraction((r - 1) ** 3 * r, 64), Fraction(target)]
    applies = first is not None
    if applies:
        links.insert(0, first)
    for i in range(len(links) - 1):
        if links[i] < links[i + 1]:
            diagnostics.append(f"chain link {i} fails: {links[i]} < {links[i + 1]}")

    record = CaseRecord(
        n_condition=NCondition.tail(start),
        edge_rule=edge_rule,
        cr_rule=BoundRule.CROSSING_LEMMA_31_1 if applies else None,
        bound_as_linear=growth if applies else None,
        min_over_case=math.ceil(growth(start)) if applies else None,
        binding_n=start,
        exact_at_binding=first,
        cr_rules_used=(BoundRule.CROSSING_LEMMA_31_1,) if applies else (),
        tail_certificate={"start": start, "slope": growth.slope, "slope_sign": "positive",
                          "value_at_start": growth(start)} if applies else None,
        target=target,
        chain=links,
        verdict="PASS" if not diagnostics else "FAIL",
        diagnostics=diagnostics,
    )
    LOG.debug(f"r={r}, n >= {start}: chain {[str(x) for x in links]} -> {record.verdict}")
    return record


@dataclass
class SubdivisionCertificate:
    """K_r vertex i sits at host vertex branch_vertices[i]; K_r edge (i, j) follows paths[(i, j)]"""

    branch_vertices: Dict[int, int]
    paths: Dict[Edge, Tuple[int, ...]]

    def to_dict(self) -> dict:
        return {
            "branch_vertices": {str(i): v for i, v in sorted(self.branch_vertices.items())},
            "paths": {f"{i}-{j}": list(path) for (i, j), path in sorted(self.paths.items())},
        }


@dataclass(frozen=True)
class SubdivisionCheck:
    ok: bool
    reason: str = "OK"
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        return {"ok": self.ok, "reason": self.reason, "detail": self.detail}


def build_kr_subdivision(r: int) -> SubdivisionCertificate:
    """
    Subdivision of K_r inside K_{r+2} minus C5 with a single subdivided edge.

    Two adjacent host vertices u, w of degree r-1 become the interior of the
    one path that replaces the missing K_r edge; every other K_r edge is a
    host edge.
    """
    if r < 5:
        raise ValueError(f"the subdivision needs r >= 5, got {r}")
    host = make_kr2_minus_c5(r)
    deficient = [v for v in range(host.n) if host.degree(v) == r - 1]
    u, w = next((a, b) for i, a in enumerate(deficient) for b in deficient[i + 1:] if host.has_edge(a, b))
    branch = [v for v in range(host.n) if v not in (u, w)]
    branch_vertices = {i: v for i, v in enumerate(branch)}

    paths: Dict[Edge, Tuple[int, ...]] = {}
    missing = []
    for i in range(r):
        for j in range(i + 1, r):
            a, b = branch[i], branch[j]
            if host.has_edge(a, b):
                paths[(i, j)] = (a, b)
            else:
                missing.append((i, j))
    if len(missing) != 1:
        raise ValueError(f"expected one missing K_{r} edge among branch vertices, found {len(missing)}")

    i, j = missing[0]
    a, b = branch[i], branch[j]
    for x, y in ((u, w), (w, u)):
        if host.has_edge(a, x) and host.has_edge(y, b):
            paths[(i, j)] = (a, x, y, b)
            break
    else:
        raise ValueError(f"no route for the missing edge ({a}, {b}) through {u} and {w}")
    LOG.debug(f"K_{r} subdivision: branch {branch}, subdivided edge {paths[(i, j)]}")
    return SubdivisionCertificate(branch_vertices, paths)


def check_subdivision(g: Graph, cert: SubdivisionCertificate) -> SubdivisionCheck:
    """Validate a subdivision certificate against g; failures carry a reason code"""
    r = len(cert.branch_vertices)
    if sorted(cert.branch_vertices) != list(range(r)):
        return SubdivisionCheck(False, "BAD_BRANCH_KEYS", "branch keys must be 0..r-1")
    images = list(cert.branch_vertices.values())
    if any(not 0 <= v < g.n for v in images):
        return SubdivisionCheck(False, "BRANCH_OUT_OF_RANGE", f"branch vertices {images} outside 0..{g.n - 1}")
    if len(set(images)) != r:
        return SubdivisionCheck(False, "NOT_INJECTIVE", f"branch vertices {images} repeat")

    wanted = {(i, j) for i in range(r) for j in range(i + 1, r)}
    if set(cert.paths) != wanted:
        missing = sorted(wanted - set(cert.paths))
        extra = sorted(set(cert.paths) - wanted)
        return SubdivisionCheck(False, "PATH_KEYS", f"missing {missing}, unexpected {extra}")

    branch_set = set(images)
    interior_owner: Dict[int, Edge] = {}
    for (i, j), path in sorted(cert.paths.items()):
        ends = (cert.branch_vertices[i], cert.branch_vertices[j])
        if len(path) < 2 or (path[0], path[-1]) not in (ends, ends[::-1]):
            return SubdivisionCheck(False, "BAD_ENDPOINTS", f"path for ({i}, {j}) is {list(path)}")
        if len(set(path)) != len(path):
            return SubdivisionCheck(False, "REPEATED_VERTEX", f"path for ({i}, {j}) repeats a vertex")
        for a, b in zip(path, path[1:]):
            if not g.has_edge(a, b):
                return SubdivisionCheck(False, "NON_EDGE", f"path for ({i}, {j}) uses non-edge ({a}, {b})")
        for v in path[1:-1]:
            if v in branch_set:
                return SubdivisionCheck(False, "INTERIOR_IS_BRANCH", f"path for ({i}, {j}) passes branch vertex {v}")
            if v in interior_owner:
                return SubdivisionCheck(
                    False, "SHARED_INTERIOR", f"vertex {v} is interior to paths {interior_owner[v]} and ({i}, {j})"
                )
            interior_owner[v] = (i, j)
    return SubdivisionCheck(True)


@dataclass
class AlbertsonAudit:
    n: int
    m: int
    chi: int
    target: int
    target_status: str
    certified: bool
    method: str
    lower_bound: Optional[BoundValue]
    witness_coloring: Coloring

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "chi": self.chi,
            "target": self.target,
            "target_status": self.target_status,
            "certified": self.certified,
            "method": self.method,
            "lower_bound": self.lower_bound.to_dict() if self.lower_bound else None,
            "witness_coloring": {str(v): c for v, c in sorted(self.witness_coloring.items())},
            "verdict": "CERTIFIED" if self.certified else "INCONCLUSIVE",
        }


def audit_graph_albertson(g: Graph, solver: Optional[ColoringSolver] = None) -> AlbertsonAudit:
    """
    Check cr(g) >= cr(K_chi) on a concrete graph with the available lower bounds.

    Targets above r = 12 use the conjectured value and are labeled as such.

    Raises:
        SolverBudgetExceeded: If the chromatic number is out of reach
    """
    solver = solver or ColoringSolver()
    r, witness = solver.optimal_coloring(g)
    if r == 0:
        target, status = 0, "proven"
    elif r <= MAX_R:
        target, status = known_cr_complete(r), "proven"
    else:
        target, status = guy_f(r), "conjectural"

    def result(certified: bool, method: str, bound: Optional[BoundValue]) -> AlbertsonAudit:
        LOG.info(f"Audit n={g.n} m={g.m}: chi={r}, target {target} ({status}), {method}")
        return AlbertsonAudit(g.n, g.m, r, target, status, certified, method, bound, witness)

    if target == 0:
        return result(True, "trivial", None)
    if contains_clique(g, r):
        return result(True, "contains K_r", None)

    linear = cr_lower_linear(g.n, g.m, enable_borodin=r >= 7)
    if linear.value >= target:
        return result(True, "linear crossing inequality", linear)
    try:
        lemma = cr_lower_crossing_lemma(g.n, g.m)
    except BoundNotApplicable:
        lemma = None
    if lemma is not None and lemma.ceil() >= target:
        return result(True, "Crossing Lemma", lemma)
    return result(False, "inconclusive", linear)
