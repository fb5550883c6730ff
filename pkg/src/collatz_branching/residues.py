"""Finite unions of congruence classes and their images under piecewise maps.

A :class:`ResidueClassSet` stores an explicit modulus and residue list and
never shrinks its modulus on its own, so comparisons against published
listings happen at the published moduli. Two sets with different moduli can
still represent the same integers; use :meth:`ResidueClassSet.same_set` for
that question and ``==`` for bit-exact equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from . import core
from .core import DomainError

PARTITIONS = {"u2": (core.BRANCH_MODULUS, core.U2), "r6": (core.SUBCLASS_MODULUS, core.R6)}


@dataclass(frozen=True)
class ResidueClassSet:
    modulus: int
    residues: tuple[int, ...]

    def __post_init__(self):
        if self.modulus < 1:
            raise DomainError(f"modulus must be positive, got {self.modulus}")
        prev = -1
        for r in self.residues:
            if not 0 <= r < self.modulus:
                raise DomainError(f"residue {r} outside [0, {self.modulus})")
            if r <= prev:
                raise DomainError("residues must be strictly increasing")
            prev = r

    def __len__(self) -> int:
        return len(self.residues)

    def __iter__(self):
        return iter(self.residues)

    def __contains__(self, n: int) -> bool:
        return n % self.modulus in self._lookup

    @property
    def _lookup(self) -> frozenset[int]:
        cached = self.__dict__.get("_lookup_cache")
        if cached is None:
            cached = frozenset(self.residues)
            object.__setattr__(self, "_lookup_cache", cached)
        return cached

    @property
    def density(self) -> Fraction:
        return Fraction(len(self.residues), self.modulus)

    def __str__(self) -> str:
        if len(self.residues) > 8:
            shown = ", ".join(map(str, self.residues[:8])) + ", ..."
        else:
            shown = ", ".join(map(str, self.residues))
        return f"[{shown}]_{self.modulus}"

    def rescale(self, factor: int) -> ResidueClassSet:
        if factor < 1:
            raise DomainError(f"rescale factor must be >= 1, got {factor}")
        m = self.modulus
        return ResidueClassSet(
            m * factor,
            tuple(sorted(r + k * m for k in range(factor) for r in self.residues)),
        )

    def at_modulus(self, modulus: int) -> ResidueClassSet:
        if modulus % self.modulus:
            raise DomainError(f"{modulus} is not a multiple of {self.modulus}")
        return self.rescale(modulus // self.modulus)

    def reduce(self, modulus: int) -> frozenset[int]:
        """Residues mod a divisor of the modulus."""
        if self.modulus % modulus:
            raise DomainError(f"{modulus} does not divide {self.modulus}")
        return frozenset(r % modulus for r in self.residues)

    # set operations at the lcm of the moduli

    def _aligned(self, other: ResidueClassSet):
        m = lcm(self.modulus, other.modulus)
        return m, self.at_modulus(m)._lookup, other.at_modulus(m)._lookup

    def intersect(self, other: ResidueClassSet) -> ResidueClassSet:
        m, a, b = self._aligned(other)
        return ResidueClassSet(m, tuple(sorted(a & b)))

    def union(self, other: ResidueClassSet) -> ResidueClassSet:
        m, a, b = self._aligned(other)
        return ResidueClassSet(m, tuple(sorted(a | b)))

    def difference(self, other: ResidueClassSet) -> ResidueClassSet:
        m, a, b = self._aligned(other)
        return ResidueClassSet(m, tuple(sorted(a - b)))

    def is_disjoint(self, other: ResidueClassSet) -> bool:
        # [a]_m and [b]_n meet iff a = b mod gcd(m, n)
        g = gcd(self.modulus, other.modulus)
        return self.reduce(g).isdisjoint(other.reduce(g))

    def is_subset(self, other: ResidueClassSet) -> bool:
        n = other.modulus
        m = self.modulus
        lifts = lcm(m, n) // m
        look = other._lookup
        return all(
            (r + k * m) % n in look for r in self.residues for k in range(lifts)
        )

    def same_set(self, other: ResidueClassSet) -> bool:
        return self.is_subset(other) and other.is_subset(self)

    def count_in_range(self, n_max: int) -> int:
        """Members in ``[1, n_max]`` by the floor formula."""
        if n_max < 1:
            raise DomainError("n_max must be >= 1")
        m = self.modulus
        return sum((n_max - r) // m - (-r) // m for r in self.residues)

    def partition_counts(self, by: str, rescale: bool = True) -> list[int]:
        """Count residues per branching class (``"u2"`` or ``"r6"``).

        With ``rescale`` the set is first expanded to a modulus divisible by
        the class modulus, so the counts describe whole classes. Without it
        the stored representatives are grouped as they are, which is how the
        published mod-4608 listings are blocked by mod-54 class.
        """
        class_mod, classes = PARTITIONS[by]
        s = self
        if rescale and self.modulus % class_mod:
            s = self.at_modulus(lcm(self.modulus, class_mod))
        counts = [0] * len(classes)
        for r in s.residues:
            c = r % class_mod
            if c not in classes:
                raise DomainError(f"residue {r} is not in a {by} branching class")
            counts[classes.index(c)] += 1
        return counts

    def to_json(self) -> dict:
        return {"modulus": self.modulus, "residues": list(self.residues)}

    @classmethod
    def from_json(cls, data: dict) -> ResidueClassSet:
        return make_set(data["modulus"], data["residues"])


def make_set(modulus: int, residues: Iterable[int]) -> ResidueClassSet:
    residues = list(residues)
    if modulus < 1:
        raise DomainError(f"modulus must be positive, got {modulus}")
    for r in residues:
        if not 0 <= r < modulus:
            raise DomainError(f"residue {r} outside [0, {modulus})")
    return ResidueClassSet(modulus, tuple(sorted(set(residues))))


def union_all(sets: Sequence[ResidueClassSet]) -> ResidueClassSet:
    out = sets[0]
    for s in sets[1:]:
        out = out.union(s)
    return out


def density(s: ResidueClassSet) -> Fraction:
    return s.density


def alignment_vector(periods: Sequence[int]) -> list[int]:
    if not periods:
        raise DomainError("need at least one period")
    if any(p < 1 for p in periods):
        raise DomainError(f"periods must be positive: {list(periods)}")
    m = lcm(*periods)
    return [m // p for p in periods]


# ---------------------------------------------------------------------------
# piecewise affine maps


@dataclass(frozen=True)
class Piece:
    """``n -> 2**p * (a*n + b) / c`` on the class ``guard_residue``."""

    guard_residue: int
    p: int
    a: int
    b: int
    c: int

    def __call__(self, n: int) -> int:
        q, rem = divmod(self.a * n + self.b, self.c)
        if rem:
            raise DomainError(f"{n} not divisible through piece {self}")
        return q << self.p


@dataclass(frozen=True)
class PiecewiseMap:
    name: str
    guard_modulus: int
    pieces: tuple[Piece, ...]
    _by_guard: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        by_guard = {}
        for piece in self.pieces:
            g = piece.guard_residue
            if g in by_guard:
                raise DomainError(f"{self.name}: duplicate guard {g}")
            if piece.a < 1 or piece.c < 1 or piece.p < 0:
                raise DomainError(f"{self.name}: unsupported piece {piece}")
            # divisibility must hold on the whole guard class
            if (piece.a * g + piece.b) % piece.c or (piece.a * self.guard_modulus) % piece.c:
                raise DomainError(f"{self.name}: piece {piece} is not integral on its class")
            by_guard[g] = piece
        object.__setattr__(self, "_by_guard", by_guard)

    def piece_for(self, n: int) -> Piece:
        piece = self._by_guard.get(n % self.guard_modulus)
        if piece is None:
            raise DomainError(
                f"{self.name}: residue {n % self.guard_modulus} mod {self.guard_modulus} is unguarded"
            )
        return piece

    def __call__(self, n: int) -> int:
        return self.piece_for(n)(n)

    def intrinsic_periods(self, modulus: int | None = None) -> list[int]:
        """Output period of each piece for arguments taken mod ``modulus``."""
        L = lcm(modulus or self.guard_modulus, self.guard_modulus)
        return [(piece.a * L // piece.c) << piece.p for piece in self.pieces]


def upward_map() -> PiecewiseMap:
    p = core.derive_p_vectors().p_upward
    return PiecewiseMap(
        "U0",
        core.BRANCH_MODULUS,
        tuple(Piece(r, p[i], 1, 0, 1) for i, r in enumerate(core.U2)),
    )


def rightward_map() -> PiecewiseMap:
    p = core.derive_p_vectors().p_rightward
    return PiecewiseMap(
        "R0",
        core.SUBCLASS_MODULUS,
        tuple(Piece(r, p[i], 1, -1, 3) for i, r in enumerate(core.R6)),
    )


def upward_square_map() -> PiecewiseMap:
    """Two upward steps as one map; both classes pick up the same factor."""
    p = core.derive_p_vectors().p_upward
    totals = []
    for i, r in enumerate(core.U2):
        nxt = core.U2.index((r << p[i]) % core.BRANCH_MODULUS)
        totals.append(p[i] + p[nxt])
    return PiecewiseMap(
        "U0^2",
        core.BRANCH_MODULUS,
        tuple(Piece(r, totals[i], 1, 0, 1) for i, r in enumerate(core.U2)),
    )


def identity_map() -> PiecewiseMap:
    return PiecewiseMap("id", 1, (Piece(0, 0, 1, 0, 1),))


def image(s: ResidueClassSet, f: PiecewiseMap) -> ResidueClassSet:
    """Residue classes hit by ``f`` on ``s``, at the aligned output period.

    The argument is expanded to ``L = lcm(s.modulus, guard)``; every piece in
    use then produces classes of period ``2**p * a * L / c`` and the output
    modulus is the lcm of those periods.
    """
    L = lcm(s.modulus, f.guard_modulus)
    aligned = s.at_modulus(L)
    used = []
    for r in aligned.residues:
        used.append((r, f.piece_for(r)))
    if not used:
        return ResidueClassSet(L, ())
    periods = {id(pc): (pc.a * L // pc.c) << pc.p for _, pc in used}
    out_mod = lcm(*periods.values())
    out = set()
    for r, pc in used:
        period = periods[id(pc)]
        y = pc(r) % period
        out.update(y + k * period for k in range(out_mod // period))
    return ResidueClassSet(out_mod, tuple(sorted(out)))


def branching_set() -> ResidueClassSet:
    return make_set(core.BRANCH_MODULUS, core.U2)
