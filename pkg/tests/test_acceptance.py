"""The ten acceptance criteria at their stated scales and tolerances.

Each test records PASS or FAIL in the terminal summary before asserting.
"""

import random
import time
from fractions import Fraction
from itertools import combinations

import pytest

from collatz_branching import core, tables
from collatz_branching.automorphism import FAMILIES, cotree_spec, subtree_spec, verify_isomorphism
from collatz_branching.checks import CONJUGATE_CASES, random_branching
from collatz_branching.core import apply_word, conj_rightward
from collatz_branching.density import census_report, default_census_sets, family_series, grand_total, setsize_recursion
from collatz_branching.residues import alignment_vector, rightward_map, upward_map
from collatz_branching.tree import verify_membership


@pytest.fixture
def record(acceptance_log):
    def _record(number, name, ok):
        acceptance_log.append((number, name, "PASS" if ok else "FAIL"))
        return ok
    return _record


def test_01_golden_sets(record):
    tables.base_sets.cache_clear()
    tables.load_golden.cache_clear()
    core.derive_p_vectors.cache_clear()
    start = time.perf_counter()
    diffs = tables.table_report()
    elapsed = time.perf_counter() - start
    listed = [d for d in diffs if d.listed]
    ok = len(listed) == 7 and all(d.ok for d in diffs) and elapsed < 1.0
    assert record(1, f"golden class sets 7/7, {elapsed:.3f}s", ok), [d for d in diffs if not d.ok]


def test_02_p_vectors(record):
    pv = core.derive_p_vectors()
    h_u = alignment_vector(upward_map().intrinsic_periods(18))
    h_r = alignment_vector(rightward_map().intrinsic_periods(54))
    ok = (
        pv.p_upward == (2, 4)
        and pv.p_rightward == (2, 3, 4, 1, 2, 1)
        and h_u == [4, 1]
        and h_r == [4, 2, 1, 8, 4, 8]
    )
    assert record(2, "p-vectors and alignment vectors", ok)


def test_03_density_identity(record):
    g = grand_total()
    firsts = {s.family: s.first_term for s in g.series}
    ok = (
        firsts == {
            "odd-upward": Fraction(1, 64),
            "even-upward": Fraction(27, 18432),
            "rightward": Fraction(81, 4608),
        }
        and [s.closed_form for s in g.series] == [Fraction(1, 63), Fraction(1, 672), Fraction(3, 32)]
        and g.total == Fraction(1, 9) == Fraction(2, 18)
    )
    assert record(3, f"density identity {g.unreduced} = {g.total}", ok)


def test_04_conjugate_arrows(record):
    got = [apply_word(n, w) for _, w, n, _ in CONJUGATE_CASES]
    want = [832, 682, 3328, 5440, 21760]
    assert record(4, "conjugate arrow golden cases", got == want), got


def test_05_oracle_sweep(record):
    r = verify_membership(10**6)
    ok = r.ok and r.branching == r.resolved == 111111
    assert record(5, f"oracle sweep n <= 10^6 ({r.resolved} resolved)", ok)


def test_06_disjoint_and_nested(record):
    cotrees = [cotree_spec(f, i) for f in FAMILIES for i in (1, 2, 3)]
    disjoint = all(a.node_classes.is_disjoint(b.node_classes) for a, b in combinations(cotrees, 2))
    nested = all(
        subtree_spec(f, 2).node_classes.is_subset(subtree_spec(f, 1).node_classes) for f in FAMILIES
    )
    assert record(6, "cotree disjointness and subtree nesting", disjoint and nested)


def test_07_set_size_recursion(record):
    steps = {(s.chain, s.k): s for s in setsize_recursion(2)}
    ok = (
        all(s.ok for s in steps.values())
        and steps["c5", 1].size == 81
        and steps["c27", 1].size == 351 == 13 * 27
        and steps["c5", 2].size == 1053 == 13 * 81
    )
    assert record(7, "set-size recursion 81, 351, 1053", ok)


@pytest.mark.parametrize("family", FAMILIES)
def test_08_isomorphism(record, family):
    r = verify_isomorphism(cotree_spec(family, 1), 10**5)
    ok = r.ok and r.arrows == r.nodes - 1
    assert record(8, f"isomorphism {r.spec_name} at 10^5 ({r.arrows} squares)", ok)


def test_09_census(record):
    rows = census_report(10**6, default_census_sets())
    ok = rows[0].count == 111111 and all(r.within_bound for r in rows)
    assert record(9, "census of [4,16]_18 in [1,10^6] = 111111", ok)


def test_10_non_commutativity(record):
    witness = core.upward(core.rightward(16)), core.rightward(core.upward(16))
    rng = random.Random(2024)
    r1 = conj_rightward(1)
    failures = 0
    for _ in range(10**4):
        n = random_branching(rng, 10**12)
        if apply_word(core.upward(n), r1) != core.upward(core.rightward(n)):
            failures += 1
    ok = witness == (160, 340) and failures == 0
    assert record(10, "non-commutativity witness and R_1 U0 = U0 R0", ok)
