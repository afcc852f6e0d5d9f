"""Scalar-multiplication counter threaded through the numeric kernels.

Counts multiplications in the active field only (one complex product is one
multiplication, one rational product is one multiplication). Additions,
negations and divisions are not counted.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass
class OpCounter:
    mults: int = 0

    def add(self, count: int) -> None:
        self.mults += count
