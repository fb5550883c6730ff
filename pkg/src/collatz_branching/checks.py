"""The verification suite behind ``verify-all``; one function per check."""

from __future__ import annotations

import random
from fractions import Fraction

from . import core
from .automorphism import cotree_spec, verify_disjoint, verify_isomorphism
from .class_graph import build_class_graph
from .core import apply_word, conj_rightward, double_conj_upward, conj_upward
from .density import census_report, default_census_sets, grand_total, setsize_recursion
from .report import UNRESOLVED, Check
from .residues import alignment_vector, rightward_map, upward_map
from .tables import table_report
from .tree import verify_membership


def random_branching(rng: random.Random, upper: int) -> int:
    k = rng.randrange(upper // 18)
    return 18 * k + rng.choice(core.U2)


def check_tables() -> Check:
    diffs = table_report()
    listed = [d for d in diffs if d.listed]
    bad = [d.name for d in diffs if not d.ok]
    matched = sum(d.ok for d in listed)
    return Check.of(
        "golden sets", not bad,
        f"{matched}/{len(listed)} listed sets match" + (f"; mismatched {bad}" if bad else ""),
    )


def check_pvectors() -> Check:
    pv = core.derive_p_vectors()
    graph = build_class_graph().p_vectors()
    h_u = alignment_vector(upward_map().intrinsic_periods(18))
    h_r = alignment_vector(rightward_map().intrinsic_periods(54))
    ok = (
        pv.p_upward == (2, 4)
        and pv.p_rightward == (2, 3, 4, 1, 2, 1)
        and graph == pv
        and h_u == [4, 1]
        and h_r == [4, 2, 1, 8, 4, 8]
    )
    return Check.of(
        "p-vectors",
        ok,
        f"p_U={list(pv.p_upward)} p_R={list(pv.p_rightward)} h_U1={h_u} h_R={h_r}",
    )


def check_density() -> Check:
    g = grand_total()
    firsts = [s.first_term for s in g.series]
    ok = g.passed and sorted(firsts) == sorted(
        [Fraction(72, 4608), Fraction(27, 18432), Fraction(81, 4608)]
    )
    terms = " + ".join(str(s.closed_form) for s in g.series)
    return Check.of("density identity", ok, f"{terms} = {g.unreduced} = {g.total} (target 2/18)")


CONJUGATE_CASES = [
    ("R_1(160)", conj_rightward(1), 160, 832),
    ("U_1(340)", conj_upward(1), 340, 682),
    ("R_2(2560)", conj_rightward(2), 2560, 3328),
    ("U_{1;1}(160)", double_conj_upward(1), 160, 5440),
    ("U_{2;1}(2560)", double_conj_upward(2), 2560, 21760),
]


def check_conjugates() -> Check:
    wrong = []
    for name, w, n, expected in CONJUGATE_CASES:
        got = apply_word(n, w)
        if got != expected:
            wrong.append(f"{name}={got}")
    return Check.of("conjugate arrows", not wrong, ", ".join(wrong) or f"{len(CONJUGATE_CASES)} cases exact")


def check_oracle_sweep(n_max: int, threads: int = 1, budget: int = core.DEFAULT_STEP_BUDGET) -> Check:
    r = verify_membership(n_max, threads, budget)
    details = (
        f"{r.branching} branching numbers <= {n_max}, {r.resolved} resolved, "
        f"longest word {r.max_path_length} (n={r.deepest}), "
        f"word failures {len(r.word_failures)}, oracle failures "
        f"{len(r.upward_oracle_failures)}/{len(r.rightward_oracle_failures)}"
    )
    if r.unresolved and not (r.word_failures or r.upward_oracle_failures or r.rightward_oracle_failures):
        return Check("oracle sweep", UNRESOLVED, details + f", unresolved {r.unresolved[:10]}")
    return Check.of("oracle sweep", r.ok, details)


def check_disjoint(max_index: int = 3) -> Check:
    r = verify_disjoint(max_index)
    bad = [f"{a}/{b}" for a, b, ok in r.pairs if not ok] + [f"{a}<{b}" for a, b, ok in r.nesting if not ok]
    return Check.of(
        "disjointness and nesting", r.ok,
        f"{len(r.pairs)} cotree pairs, {len(r.nesting)} nestings" + (f"; failing {bad}" if bad else ""),
    )


def check_setsize() -> Check:
    steps = setsize_recursion(2)
    by = {(s.chain, s.k): s for s in steps}
    sizes = {
        "t1": by["c5", 1].size,
        "c351": by["c27", 1].size,
        "t2": by["c5", 2].size,
    }
    ok = (
        all(s.ok for s in steps)
        and sizes == {"t1": 81, "c351": 351, "t2": 1053}
        and by["c5", 2].modulus == 73728
    )
    return Check.of("set-size recursion", ok, ", ".join(f"|{k}|={v}" for k, v in sizes.items()))


def check_isomorphism(max_value: int = 10**5) -> list[Check]:
    out = []
    for family in ("upward", "rightward"):
        r = verify_isomorphism(cotree_spec(family, 1), max_value)
        out.append(Check.of(
            f"isomorphism {r.spec_name}", r.ok,
            f"{r.arrows} arrows, {len(r.open_squares)} open squares, root image {r.root_image}",
        ))
    return out


def check_census(n: int = 10**6) -> Check:
    rows = census_report(n, default_census_sets())
    u2 = rows[0]
    brute = sum(1 for m in range(1, n + 1) if core.is_branching(m))
    ok = u2.count == brute and all(r.within_bound for r in rows)
    return Check.of(
        "census", ok,
        f"[4,16]_18 count {u2.count} in [1,{n}] (direct count {brute}); {len(rows)} rows within bound",
    )


def check_noncommutative(samples: int = 10**4, seed: int = 0) -> Check:
    witness = core.upward(core.rightward(16)), core.rightward(core.upward(16))
    rng = random.Random(seed)
    r1 = conj_rightward(1)
    bad = []
    for _ in range(samples):
        n = random_branching(rng, 10**8)
        if apply_word(core.upward(n), r1) != core.upward(core.rightward(n)):
            bad.append(n)
    ok = witness == (160, 340) and not bad
    return Check.of(
        "non-commutativity and conjugacy",
        ok,
        f"U0(R0(16))={witness[0]}, R0(U0(16))={witness[1]}; R_1 U0 = U0 R0 on {samples - len(bad)}/{samples}",
    )


def run_all(n_max: int, threads: int = 1, budget: int = core.DEFAULT_STEP_BUDGET,
            max_index: int = 3, iso_max_value: int = 10**5) -> list[Check]:
    return [
        check_tables(),
        check_pvectors(),
        check_density(),
        check_conjugates(),
        check_oracle_sweep(n_max, threads, budget),
        check_disjoint(max_index),
        check_setsize(),
        *check_isomorphism(iso_max_value),
        check_census(n_max),
        check_noncommutative(),
    ]
