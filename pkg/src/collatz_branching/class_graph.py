"""The mod-18 class graph of inverse Collatz arrows and the r6 transition matrix."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import core
from .core import BRANCH_MODULUS, R6, SUBCLASS_MODULUS, U2, PVectors


@dataclass(frozen=True)
class ContractEdge:
    source: int  # class mod 18
    subclass: int  # class mod 54 realizing the contraction
    target: int  # odd class mod 18
    dashed: bool  # target divisible by 3: no branching ever follows


@dataclass
class ClassGraph:
    nodes: tuple[int, ...]
    double_edges: dict[int, int]
    contract_edges: list[ContractEdge]
    upward_labels: dict[int, int] = field(default_factory=dict)
    rightward_labels: dict[int, int] = field(default_factory=dict)

    def doubling_walk(self, start: int) -> list[int]:
        """Classes visited by double edges from ``start`` to the next branching class."""
        path = [start]
        r = self.double_edges[start]
        path.append(r)
        while r not in U2:
            r = self.double_edges[r]
            path.append(r)
            if len(path) > len(self.nodes) + 1:
                raise core.InternalError(f"class {start} never doubles into a branching class")
        return path

    def p_vectors(self) -> PVectors:
        return PVectors(
            tuple(self.upward_labels[r] for r in U2),
            tuple(self.rightward_labels[s] for s in R6),
        )

    def odd_targets(self) -> list[int]:
        return sorted({e.target for e in self.contract_edges if not e.dashed})

    def to_dot(self) -> str:
        lines = ["digraph classes {", "  node [shape=circle];"]
        for r in self.nodes:
            attrs = ' style=filled fillcolor="plum"' if r in U2 else ""
            lines.append(f'  c{r} [label="{r}"{attrs}];')
        for r, t in self.double_edges.items():
            label = f' label="p{self.upward_labels[r]}"' if r in self.upward_labels else ""
            lines.append(f"  c{r} -> c{t} [color=blue{label}];")
        for e in self.contract_edges:
            style = "dashed" if e.dashed else "solid"
            label = f"[{e.subclass}]_54"
            if not e.dashed:
                label += f" p{self.rightward_labels[e.subclass]}"
            lines.append(f'  c{e.source} -> c{e.target} [color=red style={style} label="{label}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_class_graph() -> ClassGraph:
    nodes = tuple(range(BRANCH_MODULUS))
    double_edges = {r: 2 * r % BRANCH_MODULUS for r in nodes}
    contract = []
    for r in nodes:
        # (n-1)/3 is an odd integer only for even n = 1 mod 3
        if r % 2 or r % 3 != 1:
            continue
        for k in range(SUBCLASS_MODULUS // BRANCH_MODULUS):
            s = r + k * BRANCH_MODULUS
            t = (s - 1) // 3 % BRANCH_MODULUS
            contract.append(ContractEdge(r, s, t, t % 3 == 0))
    graph = ClassGraph(nodes, double_edges, contract)
    for r in U2:
        graph.upward_labels[r] = len(graph.doubling_walk(r)) - 1
    for e in contract:
        if not e.dashed:
            graph.rightward_labels[e.subclass] = len(graph.doubling_walk(e.target)) - 1
    return graph


TransformMatrix = tuple[tuple[int, ...], ...]


def transformation_matrix(samples: int = 1000) -> TransformMatrix:
    """Reachability of r6 classes under one rightward step.

    Entry ``(i, j)`` is 1 when some sampled member of ``R6[i]`` maps into
    ``R6[j]``. Rows are the current class, columns the next.
    """
    rows = []
    for r in R6:
        hit = set()
        for k in range(samples):
            hit.add(R6.index(core.rightward(r + k * SUBCLASS_MODULUS) % SUBCLASS_MODULUS))
        rows.append(tuple(1 if j in hit else 0 for j in range(len(R6))))
    return tuple(rows)


def row_support(matrix: TransformMatrix, residue: int) -> set[int]:
    row = matrix[R6.index(residue)]
    return {R6[j] for j, v in enumerate(row) if v}


@dataclass
class FlowReport:
    n_max: int
    max_steps: int
    worst: int
    unresolved: list[int]

    @property
    def ok(self) -> bool:
        return not self.unresolved


def steps_to_branching(n: int, budget: int) -> int | None:
    steps = 0
    while not core.is_branching(n):
        if steps >= budget:
            return None
        n = n // 2 if n % 2 == 0 else 3 * n + 1
        steps += 1
    return steps


def verify_flow_to_branching(n_max: int, budget: int = core.DEFAULT_STEP_BUDGET) -> FlowReport:
    """Check every ``n <= n_max`` runs forward into a branching number."""
    if n_max < 1:
        raise core.DomainError("n_max must be >= 1")
    worst_steps, worst = 0, 1
    unresolved = []
    for n in range(1, n_max + 1):
        steps = steps_to_branching(n, budget)
        if steps is None:
            unresolved.append(n)
        elif steps > worst_steps:
            worst_steps, worst = steps, n
    return FlowReport(n_max, worst_steps, worst, unresolved)
