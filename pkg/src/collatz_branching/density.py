"""Exact cotree density series, their grand total, and range censuses."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from . import core
from .automorphism import cotree_spec
from .class_graph import transformation_matrix
from .core import R6
from .residues import ResidueClassSet, alignment_vector, image, rightward_map
from .tables import base_sets

TARGET = Fraction(2, 18)


def geometric_sum(a: Fraction, r: Fraction) -> Fraction:
    a, r = Fraction(a), Fraction(r)
    if not 0 <= r < 1:
        raise core.DomainError(f"ratio must satisfy 0 <= r < 1, got {r}")
    return a / (1 - r)


@dataclass(frozen=True)
class SeriesSpec:
    family: str
    members: tuple[str, ...]
    first_term: Fraction
    ratio: Fraction
    closed_form: Fraction


# cotree indices of each family; the second member measures the decay
FAMILY_MEMBERS = {
    "odd-upward": ("upward", (1, 3)),
    "even-upward": ("upward", (2, 4)),
    "rightward": ("rightward", (1, 2)),
}


def upward_decay() -> Fraction:
    """1 / theta_U2: two upward steps multiply every class by 2**(p4 + p16)."""
    p = core.derive_p_vectors().p_upward
    return Fraction(1, 2 ** sum(p))


def rightward_decay() -> Fraction:
    """Set-size growth over output-period growth for one rightward step.

    The growth factor is the ratio of consecutive class counts along the
    rightward chain; the period grows by ``3 * theta_R = 2**max(p_R)``.
    """
    sets = base_sets()
    expansion = Fraction(2 ** max(core.derive_p_vectors().p_rightward))
    c81 = sets["c81"]
    nxt = image(c81, rightward_map())
    growth = Fraction(len(nxt), len(c81))
    if Fraction(nxt.modulus, c81.modulus) != expansion:
        raise core.InternalError("rightward period growth differs from 2**max(p_R)")
    return growth / expansion


def family_series(family: str) -> SeriesSpec:
    """Geometric series of one cotree family, parameters read from enumerated specs."""
    if family not in FAMILY_MEMBERS:
        raise ValueError(f"unknown family {family!r}")
    tree_family, (first, second) = FAMILY_MEMBERS[family]
    s1, s2 = cotree_spec(tree_family, first), cotree_spec(tree_family, second)
    a = s1.density
    measured = s2.density / s1.density
    if family == "rightward":
        r = rightward_decay()
    else:
        # two cotree indices apart is exactly one U0^2 step
        r = upward_decay()
    if measured != r:
        raise core.InternalError(f"{family}: enumerated decay {measured} != derived {r}")
    return SeriesSpec(family, (s1.name, s2.name), a, r, geometric_sum(a, r))


@dataclass(frozen=True)
class GrandTotal:
    series: tuple[SeriesSpec, ...]
    total: Fraction
    common_denominator: int
    numerators: tuple[int, ...]

    @property
    def passed(self) -> bool:
        return self.total == TARGET

    @property
    def unreduced(self) -> str:
        return f"{sum(self.numerators)}/{self.common_denominator}"


def grand_total(series: list[SeriesSpec] | None = None) -> GrandTotal:
    if series is None:
        series = [family_series(f) for f in FAMILY_MEMBERS]
    total = sum((s.closed_form for s in series), Fraction(0))
    den = lcm(*(s.closed_form.denominator for s in series))
    nums = tuple(s.closed_form.numerator * (den // s.closed_form.denominator) for s in series)
    return GrandTotal(tuple(series), total, den, nums)


# ---------------------------------------------------------------------------
# set-size recursion along rightward iterations


@dataclass
class RecursionStep:
    k: int
    chain: str  # which base set the chain starts from
    predicted: list[int]  # r6 counts of the triple-expanded set
    enumerated: list[int]
    size: int
    modulus: int

    @property
    def ok(self) -> bool:
        return self.predicted == self.enumerated


def predict_next(counts: list[int]) -> list[int]:
    """One rightward step on r6 counts: weight by h_R, spread through T."""
    h = alignment_vector(rightward_map().intrinsic_periods(core.SUBCLASS_MODULUS))
    matrix = transformation_matrix()
    out = [0] * len(R6)
    for i, row in enumerate(matrix):
        for j, hit in enumerate(row):
            out[j] += counts[i] * h[i] * hit
    return out


def setsize_recursion(k: int) -> list[RecursionStep]:
    """Predicted vs. enumerated r6 counts after ``k`` rightward images.

    Two chains are followed: from c5 (giving the rightward cotrees t_1, t_2,
    ...) and from c27 (giving the nested sets c351, ...).
    """
    if not 1 <= k <= 3:
        raise core.DomainError("k must be in 1..3")
    sets = base_sets()
    R = rightward_map()
    steps = []
    for chain in ("c5", "c27"):
        current = sets[chain]
        predicted = current.rescale(3).partition_counts("r6")
        for i in range(1, k + 1):
            predicted = predict_next(predicted)
            current = image(current, R)
            enumerated = current.partition_counts("r6")
            steps.append(RecursionStep(i, chain, predicted, enumerated, len(current), current.modulus))
    return steps


# ---------------------------------------------------------------------------
# census


@dataclass(frozen=True)
class CensusRow:
    name: str
    density: Fraction
    count: int
    n: int
    size: int

    @property
    def error(self) -> Fraction:
        return self.count - self.n * self.density

    @property
    def within_bound(self) -> bool:
        return abs(self.error) <= self.size


def census_report(n: int, specs: list[tuple[str, ResidueClassSet]]) -> list[CensusRow]:
    if n < 1:
        raise core.DomainError("N must be >= 1")
    return [CensusRow(name, s.density, s.count_in_range(n), n, len(s)) for name, s in specs]


def default_census_sets(max_index: int = 2) -> list[tuple[str, ResidueClassSet]]:
    sets = base_sets()
    out = [("u2", sets["u2"]), ("c5", sets["c5"]), ("c27", sets["c27"])]
    for family in ("upward", "rightward"):
        for i in range(1, max_index + 1):
            spec = cotree_spec(family, i)
            out.append((spec.name, spec.node_classes))
    return out


def decimal(q: Fraction, digits: int = 12) -> str:
    """Fixed-point rendering for display; verdicts never use it."""
    sign = "-" if q < 0 else ""
    q = abs(q)
    scaled = q.numerator * 10**digits // q.denominator
    whole, frac = divmod(scaled, 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"

