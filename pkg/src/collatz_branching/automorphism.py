"""Subtrees and cotrees of the branching tree as class sets plus outer words.

Every spec carries an *outer word* that maps nodes of the full tree into the
spec's node set and two *inner words* that play the role of U0 and R0 inside
it. Subtrees:

    T>=j = U^j (T>=0)     inner arrows U0, R_j
    t>=k = R^k (T>=0)     inner arrows U_k, R0

Cotrees:

    T_j = U^j R (T>=0)    inner arrows U_{j;1}, R_j
    t_k = R^k U (T>=0)    inner arrows U_k, R_{k;1}

Words are applied first letter first, so the cotree T_j has outer word
``R, U, ..., U``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from . import core
from .core import (
    ROOT,
    Letter,
    Word,
    apply_word,
    conj_rightward,
    conj_upward,
    double_conj_rightward,
    double_conj_upward,
    format_word,
    invert_word,
    power,
)
from .residues import (
    ResidueClassSet,
    branching_set,
    image,
    rightward_map,
    union_all,
    upward_map,
    upward_square_map,
)
from .tables import base_sets
from .tree import build_tree

FAMILIES = ("upward", "rightward")


def outer_image(s: ResidueClassSet, w: Word) -> ResidueClassSet:
    """Image of a class set under a U/R word.

    A run of U letters of length m is taken as one U0 (if m is odd) followed
    by m // 2 applications of U0^2, which scales by 64 uniformly and keeps
    the output modulus at the published periods.
    """
    U, R, U2 = upward_map(), rightward_map(), upward_square_map()
    i = 0
    while i < len(w):
        letter = w[i]
        if letter is Letter.R:
            s = image(s, R)
            i += 1
        elif letter is Letter.U:
            run = 1
            while i + run < len(w) and w[i + run] is Letter.U:
                run += 1
            if run % 2:
                s = image(s, U)
            for _ in range(run // 2):
                s = image(s, U2)
            i += run
        else:
            raise core.DomainError(f"class images need U/R letters only, got {letter}")
    return s


@dataclass(frozen=True)
class TreeSpec:
    kind: str  # subtree | cotree
    family: str  # upward | rightward
    index: int
    outer_word: Word
    parts: tuple[ResidueClassSet, ...]
    inner_up: Word
    inner_right: Word
    inner_up_name: str
    inner_right_name: str

    @property
    def name(self) -> str:
        letter = "T" if self.family == "upward" else "t"
        sep = ">=" if self.kind == "subtree" else ""
        return f"{letter}{sep}{self.index}"

    @property
    def node_classes(self) -> ResidueClassSet:
        return union_all(self.parts)

    @property
    def density(self):
        return self.node_classes.density

    @property
    def root(self) -> int:
        return apply_word(ROOT, self.outer_word)

    def outer(self, n: int) -> int:
        return apply_word(n, self.outer_word)

    def preimage(self, m: int) -> int:
        """Node of the full tree mapped onto ``m`` by the outer word."""
        return apply_word(m, invert_word(self.outer_word))

    def inner(self, letter: Letter) -> Word:
        return self.inner_up if letter is Letter.U else self.inner_right

    def to_json(self) -> dict:
        s = self.node_classes
        return {
            "name": self.name,
            "kind": self.kind,
            "family": self.family,
            "index": self.index,
            "outer_word": format_word(self.outer_word),
            "inner_up": {"name": self.inner_up_name, "word": format_word(self.inner_up)},
            "inner_right": {"name": self.inner_right_name, "word": format_word(self.inner_right)},
            "modulus": s.modulus,
            "residues": list(s.residues),
            "density": {"num": s.density.numerator, "den": s.density.denominator},
        }


def _check(family: str, index: int) -> None:
    if family not in FAMILIES:
        raise ValueError(f"family must be one of {FAMILIES}, got {family!r}")
    if index < 1:
        raise core.DomainError("index must be >= 1")


@lru_cache(maxsize=None)
def subtree_spec(family: str, j: int) -> TreeSpec:
    _check(family, j)
    base = base_sets()
    if family == "upward":
        outer = power(Letter.U, j)
        return TreeSpec(
            "subtree", family, j, outer,
            (outer_image(base["c5"], outer), outer_image(base["c27"], outer)),
            (Letter.U,), conj_rightward(j), "U0", f"R_{j}",
        )
    outer = power(Letter.R, j)
    return TreeSpec(
        "subtree", family, j, outer,
        (outer_image(base["c5"], outer), outer_image(base["c27"], outer)),
        conj_upward(j), (Letter.R,), f"U_{j}", "R0",
    )


@lru_cache(maxsize=None)
def cotree_spec(family: str, index: int) -> TreeSpec:
    _check(family, index)
    u2 = branching_set()
    if family == "upward":
        outer = (Letter.R,) + power(Letter.U, index)
        return TreeSpec(
            "cotree", family, index, outer, (outer_image(u2, outer),),
            double_conj_upward(index), conj_rightward(index),
            f"U_{{{index};1}}", f"R_{index}",
        )
    outer = (Letter.U,) + power(Letter.R, index)
    return TreeSpec(
        "cotree", family, index, outer, (outer_image(u2, outer),),
        conj_upward(index), double_conj_rightward(index),
        f"U_{index}", f"R_{{{index};1}}",
    )


def literal_cotree_word(family: str, index: int) -> Word:
    """Outer word before cancellation: U^j then R_j, or R^k then U_k."""
    if family == "upward":
        return power(Letter.U, index) + conj_rightward(index)
    return power(Letter.R, index) + conj_upward(index)


# ---------------------------------------------------------------------------
# explicit bounded node sets


@dataclass
class SpecNodes:
    spec: TreeSpec
    images: dict[int, int]  # node of the full tree -> its image
    arrows: list[tuple[int, Letter, int]]  # (source, inner kind, target)


def cotree_nodes(spec: TreeSpec, max_value: int) -> SpecNodes:
    """Images of the bounded full tree with inner arrows from the conjugate words."""
    tree = build_tree(max_value)
    images = {v: spec.outer(v) for v in tree.nodes}
    arrows = []
    for parent, letter, _child in tree.arrows():
        src = images[parent]
        arrows.append((src, letter, apply_word(src, spec.inner(letter))))
    return SpecNodes(spec, images, arrows)


@dataclass
class IsomorphismReport:
    spec_name: str
    max_value: int
    nodes: int
    arrows: int
    root_image: int
    injective: bool
    outside_classes: list[int] = field(default_factory=list)
    open_squares: list[tuple[int, str, int]] = field(default_factory=list)
    path_errors: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.injective and not (self.outside_classes or self.open_squares or self.path_errors)


def verify_isomorphism(spec: TreeSpec, max_value: int) -> IsomorphismReport:
    """Transport every bounded arrow and check the commutation square.

    For an arrow ``n -> f(n)`` of the full tree the square closes when
    ``outer(f(n)) == inner_f(outer(n))``.
    """
    tree = build_tree(max_value)
    images = {v: spec.outer(v) for v in tree.nodes}
    classes = spec.node_classes
    report = IsomorphismReport(
        spec.name, max_value, len(images), 0, images[ROOT],
        injective=len(set(images.values())) == len(images),
    )
    report.outside_classes = sorted(v for v, m in images.items() if m not in classes)
    for parent, letter, child in tree.arrows():
        report.arrows += 1
        try:
            moved = apply_word(images[parent], spec.inner(letter))
        except core.PathError as err:
            report.path_errors.append(f"{parent} {letter}: {err}")
            continue
        if moved != images[child]:
            report.open_squares.append((parent, letter.value, child))
    return report


@dataclass
class DisjointReport:
    max_index: int
    pairs: list[tuple[str, str, bool]]
    nesting: list[tuple[str, str, bool]]

    @property
    def ok(self) -> bool:
        return all(ok for *_, ok in self.pairs) and all(ok for *_, ok in self.nesting)


def verify_disjoint(max_index: int) -> DisjointReport:
    if max_index < 1:
        raise core.DomainError("max_index must be >= 1")
    cotrees = [cotree_spec(f, i) for f in FAMILIES for i in range(1, max_index + 1)]
    pairs = [
        (a.name, b.name, a.node_classes.is_disjoint(b.node_classes))
        for a, b in combinations(cotrees, 2)
    ]
    nesting = []
    for family in FAMILIES:
        for j in range(1, max_index):
            inner, outer = subtree_spec(family, j + 1), subtree_spec(family, j)
            nesting.append((inner.name, outer.name, inner.node_classes.is_subset(outer.node_classes)))
    return DisjointReport(max_index, pairs, nesting)


# ---------------------------------------------------------------------------
# butterfly skeleton of the automorphism graph


def aut_graph_dot(max_index: int = 3) -> str:
    """Outer arrows between the full tree, its subtrees and cotrees.

    Double arrowheads mark subtree generation, single ones cotree generation;
    dashed arrows are conjugations, solid ones iterations.
    """
    lines = ["digraph aut {", "  rankdir=LR;", '  T0 [label="T>=0\\n[4,16]_18"];']

    def node(spec: TreeSpec) -> str:
        s = spec.node_classes
        ident = spec.name.replace(">=", "ge")
        lines.append(f'  {ident} [label="{spec.name}\\n{len(s)} classes mod {s.modulus}\\nrho={s.density}"];')
        return ident

    for family, color in (("upward", "blue"), ("rightward", "red")):
        step = "U0" if family == "upward" else "R0"
        prev = "T0"
        for i in range(1, max_index + 1):
            sub = node(subtree_spec(family, i))
            lines.append(f'  {prev} -> {sub} [color={color} arrowhead=normalnormal label="{step}"];')
            cot = cotree_spec(family, i)
            conj = cot.inner_right_name if family == "upward" else cot.inner_up_name
            c = node(cot)
            lines.append(f'  {sub} -> {c} [color={color} style=dashed label="{conj}"];')
            prev = sub
    lines.append("}")
    return "\n".join(lines) + "\n"


def spec_json(spec: TreeSpec) -> str:
    return json.dumps(spec.to_json()) + "\n"
