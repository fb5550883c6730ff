import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from collatz_branching import core
from collatz_branching.automorphism import (
    FAMILIES,
    aut_graph_dot,
    cotree_nodes,
    cotree_spec,
    literal_cotree_word,
    outer_image,
    spec_json,
    subtree_spec,
    verify_disjoint,
    verify_isomorphism,
)
from collatz_branching.core import Letter, apply_word, word
from collatz_branching.residues import branching_set, make_set

from conftest import branching_numbers

SHAPES = {
    ("cotree", "upward", 1): (4608, 72),
    ("cotree", "upward", 2): (18432, 27),
    ("cotree", "upward", 3): (294912, 72),
    ("cotree", "rightward", 1): (4608, 81),
    ("cotree", "rightward", 2): (73728, 1053),
    ("cotree", "rightward", 3): (1179648, 13689),
    ("subtree", "upward", 1): (4608, 80),
    ("subtree", "rightward", 1): (4608, 432),
}


@pytest.mark.parametrize("key", sorted(SHAPES))
def test_class_set_shapes(key):
    kind, family, i = key
    spec = (cotree_spec if kind == "cotree" else subtree_spec)(family, i)
    s = spec.node_classes
    assert (s.modulus, len(s)) == SHAPES[key]


def test_cotree_densities():
    assert cotree_spec("upward", 1).density == Fraction(1, 64)
    assert cotree_spec("upward", 2).density == Fraction(27, 18432)
    assert cotree_spec("upward", 3).density == Fraction(1, 64) ** 2
    assert cotree_spec("rightward", 1).density == Fraction(81, 4608)
    assert cotree_spec("rightward", 2).density == Fraction(81, 4608) * Fraction(13, 16)


def test_first_cotrees_equal_table_sets():
    from collatz_branching.tables import base_sets

    assert cotree_spec("upward", 1).node_classes == base_sets()["c72"]
    assert cotree_spec("rightward", 1).node_classes == base_sets()["c81"]
    assert subtree_spec("upward", 1).node_classes.same_set(
        base_sets()["c8"].union(base_sets()["c72"])
    )


def test_names_and_inner_words():
    t = cotree_spec("upward", 2)
    assert t.name == "T2"
    assert (t.inner_up_name, t.inner_right_name) == ("U_{2;1}", "R_2")
    assert subtree_spec("rightward", 3).name == "t>=3"
    assert cotree_spec("rightward", 1).outer_word == word("U R")
    assert cotree_spec("upward", 2).outer_word == word("R U U")


def test_roots():
    assert cotree_spec("upward", 1).root == 16
    assert cotree_spec("rightward", 1).root == 40
    assert subtree_spec("upward", 2).root == 256


def test_spec_errors():
    with pytest.raises(ValueError):
        cotree_spec("sideways", 1)
    with pytest.raises(core.DomainError):
        subtree_spec("upward", 0)
    with pytest.raises(core.DomainError):
        outer_image(branching_set(), (Letter.U_INV,))


@pytest.mark.parametrize("word_text", ["U", "R", "U U", "U U U", "R U U", "U R R", "R R U"])
def test_outer_image_contains_all_images(word_text):
    w = word(word_text)
    s = outer_image(branching_set(), w)
    for n in range(4, 200000, 18):
        for m in (n, n + 12):
            assert apply_word(m, w) in s


@pytest.mark.parametrize("family", FAMILIES)
@pytest.mark.parametrize("index", [1, 2, 3])
def test_every_class_member_has_a_preimage(family, index):
    spec = cotree_spec(family, index)
    s = spec.node_classes
    rng = random.Random(index)
    for _ in range(300):
        m = rng.choice(s.residues) + s.modulus * rng.randrange(1, 10**6)
        n = spec.preimage(m)
        assert core.is_branching(n)
        assert spec.outer(n) == m


@settings(max_examples=150)
@given(branching_numbers(10**9), st.sampled_from(FAMILIES), st.integers(1, 3))
def test_literal_and_cancelled_words_agree(n, family, index):
    assert apply_word(n, literal_cotree_word(family, index)) == cotree_spec(family, index).outer(n)


@settings(max_examples=150)
@given(branching_numbers(10**9), st.sampled_from(FAMILIES), st.integers(1, 3),
       st.sampled_from(["subtree", "cotree"]))
def test_conjugacy_identity(n, family, index, kind):
    spec = (cotree_spec if kind == "cotree" else subtree_spec)(family, index)
    for letter, f in ((Letter.U, core.upward), (Letter.R, core.rightward)):
        assert apply_word(spec.outer(n), spec.inner(letter)) == spec.outer(f(n))


@pytest.mark.parametrize("family", FAMILIES)
def test_isomorphism_bounded(family):
    r = verify_isomorphism(cotree_spec(family, 2), 20000)
    assert r.ok and r.arrows == r.nodes - 1


def test_cotree_nodes_arrows_stay_in_classes():
    spec = cotree_spec("rightward", 1)
    nodes = cotree_nodes(spec, 5000)
    s = spec.node_classes
    assert all(m in s for m in nodes.images.values())
    assert all(src in s and dst in s for src, _, dst in nodes.arrows)


def test_disjoint_and_nested():
    r = verify_disjoint(3)
    assert r.ok
    assert len(r.pairs) == 15 and len(r.nesting) == 4


def test_disjointness_detects_overlap():
    a = cotree_spec("upward", 1).node_classes
    assert not a.is_disjoint(a)
    assert not make_set(18, [4]).is_disjoint(a)


def test_exports():
    dot = aut_graph_dot(2)
    assert dot.count("arrowhead=normalnormal") == 4
    assert "style=dashed" in dot
    data = json.loads(spec_json(cotree_spec("upward", 2)))
    assert data["modulus"] == 18432 and len(data["residues"]) == 27
    assert data["density"] == {"num": 3, "den": 2048}
    assert data["inner_up"]["name"] == "U_{2;1}"
