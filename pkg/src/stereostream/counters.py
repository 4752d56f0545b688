"""Mutable tallies of elementary matching operations.

Engines accept an optional tally and increment it at the site of each
arithmetic step with the number of element operations actually carried
out there, so reported counts reflect executed work rather than a
closed-form prediction.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass
class OpTally:
    """Per-frame counts of absolute differences, adder ops, and comparisons."""

    abs_diffs: int = 0
    additions: int = 0
    comparisons: int = 0

    def as_dict(self) -> dict:
        return {
            "abs_diffs": self.abs_diffs,
            "additions": self.additions,
            "comparisons": self.comparisons,
        }
