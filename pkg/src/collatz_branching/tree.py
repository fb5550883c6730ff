"""Bounded construction of the binary branching tree and root-path sweeps."""

from __future__ import annotations

import json
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import core
from .core import ROOT, Letter, Word, collatz_step, label_of_word, word_bits


@dataclass(frozen=True)
class TreeNode:
    value: int
    parent: int | None
    arrow: Letter | None
    word: Word
    label: str


@dataclass
class BoundedTree:
    max_value: int
    max_depth: int | None
    nodes: dict[int, TreeNode] = field(default_factory=dict)
    children: dict[int, list[int]] = field(default_factory=dict)
    # children cut off by the bounds: (parent, arrow, value)
    frontier: list[tuple[int, Letter, int]] = field(default_factory=list)
    # R0(4) = 4 is kept as a marked loop and never traversed
    root_loop: bool = True

    def __len__(self) -> int:
        return len(self.nodes)

    def __contains__(self, value: int) -> bool:
        return value in self.nodes

    def arrows(self):
        """``(parent, letter, child)`` for every tree arrow, root loop excluded."""
        for node in self.nodes.values():
            if node.parent is not None:
                yield node.parent, node.arrow, node.value

    def to_dot(self) -> str:
        lines = ["digraph T0 {", "  node [shape=ellipse];"]
        for node in self.nodes.values():
            color = {Letter.U: "blue", Letter.R: "red"}.get(node.arrow, "black")
            lines.append(f'  n{node.value} [label="{node.value} {node.label}" color={color}];')
        if self.root_loop:
            lines.append(f"  n{ROOT} -> n{ROOT} [color=red style=dashed];")
        for parent, letter, child in self.arrows():
            color = "blue" if letter is Letter.U else "red"
            lines.append(f"  n{parent} -> n{child} [color={color}];")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "root": ROOT,
            "max_value": self.max_value,
            "max_depth": self.max_depth,
            "nodes": [
                {
                    "value": n.value,
                    "parent": n.parent,
                    "arrow": None if n.arrow is None else n.arrow.value,
                    "word": word_bits(n.word),
                    "label": n.label,
                }
                for n in self.nodes.values()
            ],
            "frontier": [[p, a.value, v] for p, a, v in self.frontier],
        }

    @classmethod
    def from_json(cls, data: dict) -> BoundedTree:
        if data.get("root") != ROOT:
            raise ValueError("tree JSON must be rooted at 4")
        tree = cls(data["max_value"], data["max_depth"])
        letters = {"1": Letter.U, "0": Letter.R}
        for item in data["nodes"]:
            w = tuple(letters[b] for b in item["word"].split(",") if b)
            arrow = None if item["arrow"] is None else Letter(item["arrow"])
            node = TreeNode(item["value"], item["parent"], arrow, w, item["label"])
            tree.nodes[node.value] = node
            tree.children.setdefault(node.value, [])
            if node.parent is not None:
                tree.children[node.parent].append(node.value)
        tree.frontier = [(p, Letter(a), v) for p, a, v in data["frontier"]]
        return tree

    def __eq__(self, other):
        if not isinstance(other, BoundedTree):
            return NotImplemented
        return (
            self.max_value == other.max_value
            and self.max_depth == other.max_depth
            and list(self.nodes.values()) == list(other.nodes.values())
            and self.frontier == other.frontier
        )


def build_tree(max_value: int, max_depth: int | None = None) -> BoundedTree:
    """Breadth-first closure of ``{4}`` under U0 and R0, U-child first."""
    if max_value < ROOT:
        raise core.DomainError("max_value must be >= 4")
    tree = BoundedTree(max_value, max_depth)
    tree.nodes[ROOT] = TreeNode(ROOT, None, None, (), "s0")
    tree.children[ROOT] = []
    queue = deque([ROOT])
    while queue:
        v = queue.popleft()
        node = tree.nodes[v]
        for letter, f in ((Letter.U, core.upward), (Letter.R, core.rightward)):
            c = f(v)
            if v == ROOT and c == ROOT:
                continue
            depth = len(node.word) + 1
            if c > max_value or (max_depth is not None and depth > max_depth):
                tree.frontier.append((v, letter, c))
                continue
            if c in tree.nodes:
                raise core.InternalError(f"{c} reached twice while building the tree")
            w = node.word + (letter,)
            tree.nodes[c] = TreeNode(c, v, letter, w, label_of_word(w))
            tree.children[c] = []
            tree.children[v].append(c)
            queue.append(c)
    return tree


def export(tree: BoundedTree, fmt: str) -> str:
    if fmt == "dot":
        return tree.to_dot()
    if fmt == "json":
        return json.dumps(tree.to_json(), indent=1) + "\n"
    raise ValueError(f"unknown export format {fmt!r}; use dot or json")


# ---------------------------------------------------------------------------
# sweeps over all branching numbers in a range


class RootPathResolver:
    """Root paths with the parent links of earlier queries cached.

    A node's path is its parent's path plus one letter, so each branching
    value is walked forward at most once.
    """

    def __init__(self, budget: int = core.DEFAULT_STEP_BUDGET):
        self.budget = budget
        # value -> (parent, letter, depth, steps to root)
        self.links: dict[int, tuple[int | None, Letter | None, int, int]] = {
            ROOT: (None, None, 0, 0)
        }

    def resolve(self, n: int) -> tuple[int, int]:
        """``(depth, steps)`` of ``n``; raises UnresolvedError past the budget."""
        pending = []
        v = n
        spent = 0
        while v not in self.links:
            parent, letter, used = core.parent_step(v, self.budget - spent)
            spent += used
            pending.append((v, parent, letter, used))
            v = parent
        _, _, depth, steps = self.links[v]
        if steps + spent > self.budget:
            raise core.UnresolvedError(n, self.budget)
        for value, parent, letter, used in reversed(pending):
            depth += 1
            steps += used
            self.links[value] = (parent, letter, depth, steps)
        return depth, steps

    def word(self, n: int) -> Word:
        self.resolve(n)
        letters = []
        while n != ROOT:
            n, letter, _, _ = self.links[n]
            letters.append(letter)
        letters.reverse()
        return tuple(letters)


@dataclass
class SweepReport:
    lo: int
    hi: int
    branching: int = 0
    resolved: int = 0
    max_path_length: int = 0
    deepest: int = ROOT
    unresolved: list[int] = field(default_factory=list)
    word_failures: list[int] = field(default_factory=list)
    upward_oracle_failures: list[int] = field(default_factory=list)
    rightward_oracle_failures: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (
            self.unresolved
            or self.word_failures
            or self.upward_oracle_failures
            or self.rightward_oracle_failures
        )

    def merge(self, other: SweepReport) -> SweepReport:
        out = SweepReport(min(self.lo, other.lo), max(self.hi, other.hi))
        out.branching = self.branching + other.branching
        out.resolved = self.resolved + other.resolved
        best = max((self, other), key=lambda r: r.max_path_length)
        out.max_path_length, out.deepest = best.max_path_length, best.deepest
        for name in ("unresolved", "word_failures", "upward_oracle_failures", "rightward_oracle_failures"):
            setattr(out, name, getattr(self, name) + getattr(other, name))
        return out


def _iterate_forward(m: int, steps: int) -> int:
    for _ in range(steps):
        m = collatz_step(m)
    return m


def _first_branching_at_or_after(n: int) -> int:
    r = n % 18
    if r <= 4:
        return n - r + 4
    if r <= 16:
        return n - r + 16
    return n - r + 22


def sweep_range(lo: int, hi: int, budget: int = core.DEFAULT_STEP_BUDGET) -> SweepReport:
    """Check every branching ``n`` in ``[lo, hi]``.

    For each one: the root path resolves within ``budget`` steps, its word
    re-evaluated from 4 gives back ``n``, and forward Collatz steps undo the
    upward (``p`` steps) and rightward (``p + 1`` steps) arrows out of ``n``.
    """
    report = SweepReport(lo, hi)
    resolver = RootPathResolver(budget)
    p_up, p_right = core.derive_p_vectors().p_upward, core.derive_p_vectors().p_rightward
    n = _first_branching_at_or_after(max(lo, 1))
    while n <= hi:
        report.branching += 1
        try:
            w = resolver.word(n)
        except core.UnresolvedError:
            report.unresolved.append(n)
        else:
            report.resolved += 1
            if len(w) > report.max_path_length:
                report.max_path_length, report.deepest = len(w), n
            if core.apply_word(ROOT, w) != n:
                report.word_failures.append(n)
        pu = p_up[core.U2.index(n % 18)]
        if _iterate_forward(core.upward(n), pu) != n:
            report.upward_oracle_failures.append(n)
        pr = p_right[core.R6.index(n % 54)]
        if _iterate_forward(core.rightward(n), pr + 1) != n:
            report.rightward_oracle_failures.append(n)
        n = n + 12 if n % 18 == 4 else n + 6
    return report


def _sweep_chunk(args):
    return sweep_range(*args)


def verify_membership(n_max: int, threads: int = 1, budget: int = core.DEFAULT_STEP_BUDGET) -> SweepReport:
    """Sweep all branching numbers up to ``n_max``, split across processes."""
    if n_max < ROOT:
        raise core.DomainError("n_max must be >= 4")
    threads = max(1, threads)
    if threads == 1:
        return sweep_range(1, n_max, budget)
    step = -(-n_max // threads)
    chunks = [(lo, min(lo + step - 1, n_max), budget) for lo in range(1, n_max + 1, step)]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(_sweep_chunk, chunks))
    out = parts[0]
    for part in parts[1:]:
        out = out.merge(part)
    return out
