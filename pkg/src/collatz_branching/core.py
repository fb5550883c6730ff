"""Exact Collatz maps restricted to branching numbers.

A branching number is an even ``n`` with ``n % 18`` in ``{4, 16}``. Each one
has two branching successors in the inverse Collatz tree: the *upward* one,
reached by doublings only, and the *rightward* one, reached by a single
``(n - 1) / 3`` contraction followed by doublings. The number of doublings
depends on the residue class of ``n`` (mod 18 upward, mod 54 rightward) and
is re-derived here by brute force instead of being typed in.

Words over ``{U, R, U^-1, R^-1}`` are evaluated left to right: the first
letter is applied first. The conjugate ``g^i f g^-i`` therefore becomes the
letter sequence ``g^-i, f, g^i``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

BRANCH_MODULUS = 18
SUBCLASS_MODULUS = 54
U2 = (4, 16)
R6 = (4, 16, 22, 34, 40, 52)
ROOT = 4
DEFAULT_STEP_BUDGET = 10**6


class DomainError(ValueError):
    """An argument lies outside the domain of a map."""


class PathError(DomainError):
    """A word left the domain of its next letter."""

    def __init__(self, message: str, position: int, value: int):
        super().__init__(message)
        self.position = position
        self.value = value


class UnresolvedError(RuntimeError):
    """The step budget ran out before the trajectory reached the root.

    This is a statement about the budget, never about divergence.
    """

    def __init__(self, n: int, budget: int):
        super().__init__(f"{n}: root not reached within {budget} Collatz steps")
        self.n = n
        self.budget = budget


class InternalError(RuntimeError):
    """A derived structural fact failed to hold."""


# ---------------------------------------------------------------------------
# forward maps


def collatz_step(n: int) -> int:
    if n < 1:
        raise DomainError(f"collatz_step needs n >= 1, got {n}")
    return n // 2 if n % 2 == 0 else 3 * n + 1


class Trajectory(NamedTuple):
    values: list[int]
    reached_one: bool


def collatz_trajectory(n: int, max_steps: int) -> Trajectory:
    """Iterate the Collatz map from ``n`` until 1 or ``max_steps`` steps."""
    if n < 1:
        raise DomainError(f"trajectory needs n >= 1, got {n}")
    if max_steps < 0:
        raise DomainError("max_steps must be nonnegative")
    values = [n]
    while n != 1 and len(values) - 1 < max_steps:
        n = collatz_step(n)
        values.append(n)
    return Trajectory(values, n == 1)


def syracuse_step(n: int) -> int:
    if n < 1 or n % 2 == 0:
        raise DomainError(f"syracuse_step needs odd n >= 1, got {n}")
    m = 3 * n + 1
    while m % 2 == 0:
        m //= 2
    return m


def is_branching(n: int) -> bool:
    return n % BRANCH_MODULUS in U2


@dataclass(frozen=True)
class BranchClass:
    residue18: int
    residue54: int
    u2_index: int | None
    r6_index: int | None


def branch_class(n: int) -> BranchClass:
    if n < 1:
        raise DomainError(f"branch_class needs n >= 1, got {n}")
    r18 = n % BRANCH_MODULUS
    r54 = n % SUBCLASS_MODULUS
    return BranchClass(
        r18,
        r54,
        U2.index(r18) if r18 in U2 else None,
        R6.index(r54) if r54 in R6 else None,
    )


def _require_branching(n: int, what: str) -> None:
    if n < 1 or not is_branching(n):
        raise DomainError(f"{what} is defined on branching numbers only, got {n}")


# ---------------------------------------------------------------------------
# p-vectors


@dataclass(frozen=True)
class PVectors:
    p_upward: tuple[int, ...]
    p_rightward: tuple[int, ...]


def _doublings_until_branching(m: int, limit: int = 64) -> int:
    for p in range(1, limit + 1):
        m *= 2
        if is_branching(m):
            return p
    raise InternalError(f"no branching number within {limit} doublings")


@lru_cache(maxsize=None)
def derive_p_vectors(representatives: int = 5) -> PVectors:
    """Count doublings between branching classes from sample members.

    Every class is probed with ``representatives`` members; disagreement
    among them means the doubling counts are not class invariants.
    """
    if representatives < 3:
        raise ValueError("need at least 3 representatives per class")

    def consistent(counts: list[int], label: str) -> int:
        if len(set(counts)) != 1:
            raise InternalError(f"class {label}: doubling counts differ {counts}")
        return counts[0]

    upward = []
    for r in U2:
        counts = [
            _doublings_until_branching(r + k * BRANCH_MODULUS)
            for k in range(representatives)
        ]
        upward.append(consistent(counts, f"[{r}]_18"))
    rightward = []
    for r in R6:
        counts = [
            _doublings_until_branching((r + k * SUBCLASS_MODULUS - 1) // 3)
            for k in range(representatives)
        ]
        rightward.append(consistent(counts, f"[{r}]_54"))
    return PVectors(tuple(upward), tuple(rightward))


def _p_up() -> tuple[int, ...]:
    return derive_p_vectors().p_upward


def _p_right() -> tuple[int, ...]:
    return derive_p_vectors().p_rightward


# ---------------------------------------------------------------------------
# upward / rightward and inverses


def upward(n: int) -> int:
    _require_branching(n, "upward")
    return n << _p_up()[U2.index(n % BRANCH_MODULUS)]


def rightward(n: int) -> int:
    _require_branching(n, "rightward")
    return ((n - 1) // 3) << _p_right()[R6.index(n % SUBCLASS_MODULUS)]


def upward_inverse(m: int) -> int | None:
    """The branching ``n`` with ``upward(n) == m``, or ``None``."""
    _require_branching(m, "upward_inverse")
    found = []
    for i, p in enumerate(_p_up()):
        if m % (1 << p):
            continue
        n = m >> p
        if n % BRANCH_MODULUS == U2[i]:
            found.append(n)
    if len(found) > 1:
        raise InternalError(f"upward preimage of {m} is ambiguous: {found}")
    return found[0] if found else None


def rightward_inverse(m: int) -> int | None:
    """The branching ``n`` with ``rightward(n) == m``, or ``None``."""
    _require_branching(m, "rightward_inverse")
    p_right = _p_right()
    found = []
    for p in sorted(set(p_right)):
        if m % (1 << p):
            continue
        n = 3 * (m >> p) + 1
        if is_branching(n) and p_right[R6.index(n % SUBCLASS_MODULUS)] == p:
            found.append(n)
    if len(found) > 1:
        raise InternalError(f"rightward preimage of {m} is ambiguous: {found}")
    return found[0] if found else None


# ---------------------------------------------------------------------------
# words


class Letter(str, enum.Enum):
    U = "U"
    R = "R"
    U_INV = "U^-1"
    R_INV = "R^-1"

    @property
    def inverse(self) -> Letter:
        return _INVERSES[self]

    def __str__(self) -> str:
        return self.value


_INVERSES = {
    Letter.U: Letter.U_INV,
    Letter.R: Letter.R_INV,
    Letter.U_INV: Letter.U,
    Letter.R_INV: Letter.R,
}

Word = tuple[Letter, ...]

_APPLY = {
    Letter.U: upward,
    Letter.R: rightward,
    Letter.U_INV: upward_inverse,
    Letter.R_INV: rightward_inverse,
}


def word(letters: str | Iterable[str | Letter]) -> Word:
    """Parse a word such as ``"U R U^-1"`` or ``["U", "R"]``."""
    if isinstance(letters, str):
        letters = letters.replace(",", " ").split()
    return tuple(Letter(x) for x in letters)


def format_word(w: Sequence[Letter]) -> str:
    return " ".join(str(x) for x in w)


def invert_word(w: Sequence[Letter]) -> Word:
    return tuple(x.inverse for x in reversed(w))


def apply_word(n: int, w: Sequence[Letter]) -> int:
    """Evaluate ``w`` on ``n``, first letter first."""
    _require_branching(n, "apply_word")
    for position, letter in enumerate(w):
        out = _APPLY[letter](n)
        if out is None:
            raise PathError(
                f"letter {position} ({letter}) undefined at {n}", position, n
            )
        n = out
    return n


def power(letter: Letter, i: int) -> Word:
    """``letter^i``; negative ``i`` gives the inverse letter repeated."""
    return (letter,) * i if i >= 0 else (letter.inverse,) * -i


def conjugate(g: Letter, i: int, f: Sequence[Letter]) -> Word:
    """Word for ``g^i f g^-i`` in application order."""
    return power(g, -i) + tuple(f) + power(g, i)


def conj_rightward(j: int) -> Word:
    """R_j: rightward arrows transported into the upward subtree of index j."""
    return conjugate(Letter.U, j, (Letter.R,))


def conj_upward(k: int) -> Word:
    """U_k: upward arrows transported into the rightward subtree of index k."""
    return conjugate(Letter.R, k, (Letter.U,))


def double_conj_upward(j: int) -> Word:
    """U_{j;1} = U^j (R U R^-1) U^-j, the inner upward arrow of cotree T_j."""
    return conjugate(Letter.U, j, conj_upward(1))


def double_conj_rightward(k: int) -> Word:
    """R_{k;1} = R^k (U R U^-1) R^-k, the inner rightward arrow of cotree t_k."""
    return conjugate(Letter.R, k, conj_rightward(1))


# ---------------------------------------------------------------------------
# root paths


def parent_step(n: int, max_steps: int = DEFAULT_STEP_BUDGET) -> tuple[int, Letter, int]:
    """First branching number after ``n`` on its forward trajectory.

    Returns ``(parent, letter, steps)`` where ``letter`` says whether ``n``
    is the upward or rightward child of ``parent``.
    """
    _require_branching(n, "parent_step")
    if n == ROOT:
        raise DomainError("the root has no parent")
    m = n
    steps = 0
    while True:
        if steps >= max_steps:
            raise UnresolvedError(n, max_steps)
        m = m // 2 if m % 2 == 0 else 3 * m + 1
        steps += 1
        if m % BRANCH_MODULUS in U2:
            break
    if upward(m) == n:
        return m, Letter.U, steps
    if rightward(m) == n:
        return m, Letter.R, steps
    raise InternalError(f"{n} is neither upward nor rightward child of {m}")


def root_path_word(n: int, max_steps: int = DEFAULT_STEP_BUDGET) -> Word:
    """U/R letters leading from the root 4 down to ``n``."""
    _require_branching(n, "root_path_word")
    letters = []
    budget = max_steps
    current = n
    while current != ROOT:
        try:
            current, letter, used = parent_step(current, budget)
        except UnresolvedError:
            raise UnresolvedError(n, max_steps) from None
        budget -= used
        letters.append(letter)
    letters.reverse()
    return tuple(letters)


def word_bits(w: Sequence[Letter]) -> str:
    """Serialize a U/R word with U=1, R=0, e.g. ``"1,0,1"``."""
    bits = {Letter.U: "1", Letter.R: "0"}
    try:
        return ",".join(bits[x] for x in w)
    except KeyError:
        raise DomainError("only U/R words have a bit form") from None


def label_of_word(w: Sequence[Letter]) -> str:
    """Generation label from the trailing run of the root-path word."""
    if not w:
        return "s0"
    last = w[-1]
    run = 0
    for letter in reversed(w):
        if letter != last:
            break
        run += 1
    return f"S{run}" if last is Letter.U else f"s{run}"


def generation_label(n: int, max_steps: int = DEFAULT_STEP_BUDGET) -> str:
    return label_of_word(root_path_word(n, max_steps))


def greedy_branch(count: int) -> list[int]:
    if count < 1:
        raise DomainError("count must be >= 1")
    out = [16]
    while len(out) < count:
        out.append(rightward(out[-1]))
    return out
