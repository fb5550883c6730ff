"""Base class sets of the branching tree and comparison with stored listings."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .residues import (
    ResidueClassSet,
    branching_set,
    image,
    make_set,
    rightward_map,
    upward_map,
)


@lru_cache(maxsize=None)
def base_sets() -> dict[str, ResidueClassSet]:
    """The class sets built from ``[4,16]_18`` by one or two map images."""
    u2 = branching_set()
    U, R = upward_map(), rightward_map()
    c5 = image(u2, U)
    c27 = image(u2, R)
    return {
        "u2": u2,
        "c5": c5,
        "c27": c27,
        "3c5": c5.rescale(3),
        "3c27": c27.rescale(3),
        "c8": image(c5, U),
        "c72": image(c27, U),
        "c81": image(c5, R),
        "c351": image(c27, R),
    }


@lru_cache(maxsize=None)
def load_golden() -> tuple[dict, ...]:
    text = resources.files(__package__).joinpath("data/golden_sets.json").read_text()
    return tuple(json.loads(text)["sets"])


@dataclass
class TableDiff:
    name: str
    modulus: int
    missing: list[int]
    extra: list[int]
    counts_expected: list[int]
    counts_found: list[int]
    blocks_ok: bool | None

    @property
    def ok(self) -> bool:
        return (
            not self.missing
            and not self.extra
            and self.counts_expected == self.counts_found
            and self.blocks_ok is not False
        )

    @property
    def listed(self) -> bool:
        return self.blocks_ok is not None


def _block_class(block: list[int], by: str) -> int | None:
    mod = 18 if by == "u2" else 54
    classes = {r % mod for r in block}
    return classes.pop() if len(classes) == 1 else None


def compare_golden(entry: dict, computed: ResidueClassSet) -> TableDiff:
    by = entry["count_by"]
    mult = entry["count_multiplier"]
    expected_counts = [mult * c for c in entry["count_vector"]]
    found_counts = computed.rescale(entry["count_rescale"]).partition_counts(by)

    blocks = entry["blocks"]
    if blocks is None:
        return TableDiff(entry["name"], computed.modulus, [], [], expected_counts, found_counts, None)
    golden = make_set(entry["modulus"], [r for b in blocks for r in b])
    if computed.modulus != golden.modulus:
        raise ValueError(f"{entry['name']}: computed modulus {computed.modulus} != {golden.modulus}")
    have = set(computed.residues)
    want = set(golden.residues)
    missing = sorted(want - have)
    extra = sorted(have - want)
    # block order is not trusted; each block must be one class and the block
    # sizes must match the representative partition as a multiset
    block_classes = [_block_class(b, by) for b in blocks]
    rep_counts = computed.partition_counts(by, rescale=False)
    blocks_ok = (
        None not in block_classes
        and len(set(block_classes)) == len(block_classes)
        and sorted(len(b) for b in blocks) == sorted(c for c in rep_counts if c)
    )
    return TableDiff(entry["name"], computed.modulus, missing, extra, expected_counts, found_counts, blocks_ok)


def table_report() -> list[TableDiff]:
    sets = base_sets()
    return [compare_golden(entry, sets[entry["name"]]) for entry in load_golden()]
