"""
Edge and crossing-number bounds over exact rationals.

Every bound is returned with the rule that produced it and the hypotheses
the rule needs, so reports can be re-checked line by line. Constants are
stored as fractions (31.1 is 311/10); nothing here touches floating point.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Tuple

MAX_PROVEN_COMPLETE = 12


class BoundNotApplicable(ValueError):
    """The requested bound does not hold, or is not known, for these inputs."""


class BoundRule(str, Enum):
    TRIVIAL_DEGREE = "TRIVIAL_DEGREE"
    DIRAC = "DIRAC"
    GALLAI = "GALLAI"
    KOSTOCHKA_STIEBITZ = "KOSTOCHKA_STIEBITZ"
    EULER = "EULER"
    PRTT_7_3 = "PRTT_7_3"
    PRTT_3 = "PRTT_3"
    PRTT_4 = "PRTT_4"
    BORODIN_PLUS1 = "BORODIN_PLUS1"
    CROSSING_LEMMA_64 = "CROSSING_LEMMA_64"
    CROSSING_LEMMA_31_1 = "CROSSING_LEMMA_31_1"
    CHROMATIC_FOURTH_POWER = "CHROMATIC_FOURTH_POWER"
    EDGE_PAIRS = "EDGE_PAIRS"


@dataclass(frozen=True)
class LinearForm:
    """slope * n + intercept, with n the vertex count"""

    slope: Fraction
    intercept: Fraction

    def __call__(self, n: int) -> Fraction:
        return self.slope * n + self.intercept

    def to_dict(self) -> dict:
        return {"slope": self.slope, "intercept": self.intercept}


@dataclass(frozen=True)
class BoundValue:
    """
    A certified bound with provenance.

    value is the bound itself; exact keeps the rational before any ceiling
    was taken (None when no rounding happened).
    """

    value: Fraction
    rule: BoundRule
    assumptions: Tuple[str, ...] = ()
    exact: Optional[Fraction] = None

    def ceil(self) -> int:
        return math.ceil(self.value)

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "rule": self.rule.value,
            "assumptions": list(self.assumptions),
            "exact": self.exact if self.exact is not None else self.value,
        }


@dataclass(frozen=True)
class CrossingInequality:
    """cr(G) >= alpha*m - beta*n + gamma"""

    rule: BoundRule
    alpha: Fraction
    beta: Fraction
    gamma: Fraction
    label: str
    assumptions: Tuple[str, ...] = field(default=())

    def value(self, n: int, m) -> Fraction:
        return self.alpha * m - self.beta * n + self.gamma

    def compose(self, edges: LinearForm) -> LinearForm:
        """Substitute m >= edges(n); valid because alpha > 0"""
        return LinearForm(
            self.alpha * edges.slope - self.beta,
            self.alpha * edges.intercept + self.gamma,
        )


EULER = CrossingInequality(BoundRule.EULER, Fraction(1), Fraction(3), Fraction(6), "m - (3n - 6)")
PRTT_7_3 = CrossingInequality(
    BoundRule.PRTT_7_3, Fraction(7, 3), Fraction(25, 3), Fraction(50, 3), "(7/3)m - (25/3)(n - 2)"
)
PRTT_3 = CrossingInequality(
    BoundRule.PRTT_3, Fraction(3), Fraction(35, 3), Fraction(70, 3), "3m - (35/3)(n - 2)"
)
PRTT_4 = CrossingInequality(
    BoundRule.PRTT_4, Fraction(4), Fraction(103, 6), Fraction(103, 3), "4m - (103/6)(n - 2)"
)
BORODIN = CrossingInequality(
    BoundRule.BORODIN_PLUS1, Fraction(1), Fraction(3), Fraction(7), "m - (3n - 6) + 1",
    ("chromatic number >= 7",),
)

LINEAR_INEQUALITIES = (EULER, PRTT_7_3, PRTT_3, PRTT_4)


def crossing_inequalities(enable_borodin: bool = False) -> Tuple[CrossingInequality, ...]:
    return LINEAR_INEQUALITIES + ((BORODIN,) if enable_borodin else ())


def guy_f(n: int) -> int:
    """(1/4) floor(n/2) floor((n-1)/2) floor((n-2)/2) floor((n-3)/2)"""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if n < 4:
        return 0
    return (n // 2) * ((n - 1) // 2) * ((n - 2) // 2) * ((n - 3) // 2) // 4


def known_cr_complete(n: int) -> int:
    """
    Proven crossing number of K_n.

    Raises:
        BoundNotApplicable: For n > 12, where the value is only conjectured
    """
    if not 1 <= n <= MAX_PROVEN_COMPLETE:
        raise BoundNotApplicable(
            f"cr(K_{n}) is proven only for 1 <= n <= {MAX_PROVEN_COMPLETE}"
        )
    return guy_f(n)


def _check_critical_order(r: int, n: int) -> None:
    if r < 3:
        raise BoundNotApplicable(f"edge bounds need r >= 3, got {r}")
    if n < r:
        raise BoundNotApplicable(f"an r-critical graph has at least r vertices (r={r}, n={n})")
    if n == r + 1:
        raise BoundNotApplicable(f"no {r}-critical graph has {r + 1} vertices")


def edge_rule_form(rule: BoundRule, r: int, n: int, assume_not_complete: bool = True) -> BoundValue:
    """
    One edge lower bound for an r-critical graph on n vertices.

    The returned BoundValue carries the bound as value; the matching
    LinearForm in n is available through edge_rule_linear.

    Raises:
        BoundNotApplicable: If the rule's hypotheses fail at (r, n)
    """
    form, assumptions = _edge_rule(rule, r, n, assume_not_complete)
    return BoundValue(form(n), rule, assumptions)


def edge_rule_linear(rule: BoundRule, r: int, n: int, assume_not_complete: bool = True) -> LinearForm:
    return _edge_rule(rule, r, n, assume_not_complete)[0]


def _edge_rule(rule: BoundRule, r: int, n: int, assume_not_complete: bool) -> Tuple[LinearForm, Tuple[str, ...]]:
    half_degree = Fraction(r - 1, 2)
    if rule == BoundRule.TRIVIAL_DEGREE:
        return LinearForm(half_degree, Fraction(0)), ("G is r-critical",)
    if rule == BoundRule.DIRAC:
        if not assume_not_complete:
            raise BoundNotApplicable("Dirac's bound needs G != K_r")
        return LinearForm(half_degree, Fraction(r - 3, 2)), ("G is r-critical", "G != K_r")
    if rule == BoundRule.GALLAI:
        p = n - r
        if not assume_not_complete or not 2 <= p <= r - 2:
            raise BoundNotApplicable(f"Gallai's bound needs G != K_r and 2 <= n - r <= r - 2 (r={r}, n={n})")
        return (
            LinearForm(half_degree, Fraction(p * r - p * p - 2, 2)),
            ("G is r-critical", "G != K_r", f"p = n - r = {p}"),
        )
    if rule == BoundRule.KOSTOCHKA_STIEBITZ:
        if n < r + 2 or n == 2 * r - 1:
            raise BoundNotApplicable(f"the Kostochka-Stiebitz bound needs n >= r + 2 and n != 2r - 1 (r={r}, n={n})")
        return LinearForm(half_degree, Fraction(r - 3)), ("G is r-critical", "n >= r + 2", "n != 2r - 1")
    raise BoundNotApplicable(f"{rule.value} is not an edge rule")


EDGE_RULES = (
    BoundRule.KOSTOCHKA_STIEBITZ,
    BoundRule.GALLAI,
    BoundRule.DIRAC,
    BoundRule.TRIVIAL_DEGREE,
)


def edge_bound_forms(r: int, n: int, assume_not_complete: bool) -> List[BoundValue]:
    """Every edge rule applicable at (r, n), in tie-break priority order"""
    _check_critical_order(r, n)
    forms = []
    for rule in EDGE_RULES:
        try:
            forms.append(edge_rule_form(rule, r, n, assume_not_complete))
        except BoundNotApplicable:
            continue
    return forms


def min_edges_critical(r: int, n: int, assume_not_complete: bool) -> BoundValue:
    """
    Largest applicable lower bound on the edge count of an r-critical graph on n vertices.

    Raises:
        BoundNotApplicable: If r < 3, n < r or n == r + 1
    """
    forms = edge_bound_forms(r, n, assume_not_complete)
    best = forms[0]
    for candidate in forms[1:]:
        if candidate.value > best.value:
            best = candidate
    return best


def _check_counts(n: int, m: int) -> None:
    if n < 3:
        raise BoundNotApplicable(f"crossing inequalities need n >= 3, got {n}")
    if m < 0 or m > n * (n - 1) // 2:
        raise BoundNotApplicable(f"m={m} outside 0..{n * (n - 1) // 2} for n={n}")


def best_inequality(n: int, m, enable_borodin: bool = False) -> Tuple[CrossingInequality, Fraction]:
    """The inequality with the largest right-hand side at (n, m); first listed wins ties"""
    best, best_value = None, None
    for inequality in crossing_inequalities(enable_borodin):
        value = inequality.value(n, m)
        if best_value is None or value > best_value:
            best, best_value = inequality, value
    return best, best_value


def cr_lower_linear(n: int, m: int, enable_borodin: bool = False) -> BoundValue:
    """
    Ceiling of the best linear crossing inequality at (n, m), clamped at 0.

    Args:
        enable_borodin: Also use m - 3n + 7, valid when the chromatic number is at least 7

    Raises:
        BoundNotApplicable: If n < 3 or m is not an edge count of a simple graph on n vertices
    """
    _check_counts(n, m)
    inequality, value = best_inequality(n, m, enable_borodin)
    bound = max(0, math.ceil(value))
    return BoundValue(Fraction(bound), inequality.rule, inequality.assumptions, exact=value)


def cr_lower_crossing_lemma(n: int, m: int) -> BoundValue:
    """
    Crossing Lemma bound m^3 / (c n^2).

    Uses c = 31.1 when m >= (103/16)n and c = 64 when m >= 4n.

    Raises:
        BoundNotApplicable: Below both density thresholds
    """
    if n <= 0:
        raise BoundNotApplicable(f"the Crossing Lemma needs n >= 1, got {n}")
    if 16 * m >= 103 * n:
        value = Fraction(10 * m ** 3, 311 * n * n)
        return BoundValue(value, BoundRule.CROSSING_LEMMA_31_1, ("m >= (103/16)n",))
    if m >= 4 * n:
        value = Fraction(m ** 3, 64 * n * n)
        return BoundValue(value, BoundRule.CROSSING_LEMMA_64, ("m >= 4n",))
    raise BoundNotApplicable(f"m={m} below 4n={4 * n}; the Crossing Lemma does not apply")


def _ceil_fourth_root(x: int) -> int:
    root = math.isqrt(math.isqrt(x))
    if root ** 4 < x:
        root += 1
    return root


def chi_upper_from_cr(c: int) -> BoundValue:
    """
    Integer envelope of chi <= 1 + 4 cr^(1/4): the least k with (k-1)^4 >= 256c.

    The inequality is derived for chromatic number at least 14, and that
    hypothesis is recorded rather than asserted away.
    """
    if c < 0:
        raise BoundNotApplicable(f"crossing number must be nonnegative, got {c}")
    k = 1 + _ceil_fourth_root(256 * c)
    return BoundValue(Fraction(k), BoundRule.CHROMATIC_FOURTH_POWER, ("chromatic number r >= 14",))


def cr_lower_from_chi(r: int) -> BoundValue:
    """cr(G) >= (r-1)^4 / 256 for graphs of chromatic number r >= 14"""
    if r < 14:
        raise BoundNotApplicable(f"the fourth-power bound needs chromatic number >= 14, got {r}")
    return BoundValue(Fraction((r - 1) ** 4, 256), BoundRule.CHROMATIC_FOURTH_POWER, ("chromatic number r >= 14",))


def cr_upper_trivial(m: int) -> BoundValue:
    """binomial(m, 2): in a good drawing two edges cross at most once"""
    if m < 0:
        raise BoundNotApplicable(f"edge count must be nonnegative, got {m}")
    return BoundValue(Fraction(m * (m - 1) // 2), BoundRule.EDGE_PAIRS, ("good drawing of minimum crossings",))


@dataclass(frozen=True)
class ApplicabilityRange:
    """Region of m/(n-2) on which one inequality dominates; None is unbounded"""

    rule: BoundRule
    lower: Optional[Fraction]
    upper: Optional[Fraction]

    def contains(self, ratio: Fraction) -> bool:
        if self.lower is not None and ratio < self.lower:
            return False
        if self.upper is not None and ratio > self.upper:
            return False
        return True

    def to_dict(self) -> dict:
        return {"rule": self.rule.value, "lower": self.lower, "upper": self.upper}


def best_applicability_ranges() -> Tuple[ApplicabilityRange, ...]:
    return (
        ApplicabilityRange(BoundRule.EULER, None, Fraction(4)),
        ApplicabilityRange(BoundRule.PRTT_7_3, Fraction(4), Fraction(5)),
        ApplicabilityRange(BoundRule.PRTT_3, Fraction(5), Fraction(11, 2)),
        ApplicabilityRange(BoundRule.PRTT_4, Fraction(11, 2), None),
    )


def best_rules(n: int, m: int) -> List[BoundRule]:
    """Rules whose applicability region contains m/(n-2); boundary points name both"""
    if n < 3:
        raise BoundNotApplicable(f"applicability ranges need n >= 3, got {n}")
    ratio = Fraction(m, n - 2)
    return [entry.rule for entry in best_applicability_ranges() if entry.contains(ratio)]
