"""The five random-move puzzle variants."""
from __future__ import annotations

import enum
from typing import Optional


class PuzzleVariant(enum.Enum):
    """Start/target specification of a puzzle.

    ``start`` is ``"random"`` (uniform over all 3**n states), ``"corner"``
    (all disks on peg 1) or ``"half"`` (largest disk on peg 2, the rest on
    peg 1).  ``target_peg`` is the required final peg, or None when any
    single-peg state ends the puzzle.
    """

    RANDOM_TO_ANY = ("rtoA", "random", None, 0)
    ONE_TO_THREE = ("1to3", "corner", 3, 0)
    ONE_TO_ANY = ("1toA", "corner", None, 1)
    HALF_TO_ANY = ("halfToA", "half", None, 0)
    RANDOM_TO_ONE = ("rto1", "random", 1, 0)

    def __init__(self, flag: str, start: str, target_peg: Optional[int], min_moves: int):
        self.flag = flag
        self.start = start
        self.target_peg = target_peg
        self.min_moves = min_moves

    @property
    def random_start(self) -> bool:
        return self.start == "random"

    @classmethod
    def parse(cls, text: str) -> PuzzleVariant:
        key = text.strip().lower()
        for v in cls:
            if key in (v.flag.lower(), v.name.lower()):
                return v
        raise ValueError(
            f"unknown variant {text!r}; expected one of {', '.join(v.flag for v in cls)}"
        )

    def __str__(self):
        return self.flag


VARIANTS = tuple(PuzzleVariant)
