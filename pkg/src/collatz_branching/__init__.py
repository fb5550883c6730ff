"""Exact arithmetic for the binary tree of branching Collatz numbers.

Branching numbers ``[4,16]_18`` are linked by an upward map (doublings only)
and a rightward map (one ``(n-1)/3`` step, then doublings). This package
builds that tree, its subtrees and cotrees as residue-class sets, and checks
their densities with exact rationals.
"""

from .core import (
    DomainError,
    Letter,
    PathError,
    UnresolvedError,
    apply_word,
    branch_class,
    collatz_step,
    collatz_trajectory,
    derive_p_vectors,
    generation_label,
    greedy_branch,
    is_branching,
    rightward,
    rightward_inverse,
    root_path_word,
    syracuse_step,
    upward,
    upward_inverse,
)
from .residues import ResidueClassSet, image, make_set

__version__ = "0.1.0"
