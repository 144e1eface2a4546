"""Transverse mode labels and truncated mode bases."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple


class Mode(NamedTuple):
    """Transverse 2d-HO eigenstate localised in trap ``trap``."""

    trap: str
    nx: int
    ny: int

    def __str__(self):
        return f"{self.trap}({self.nx},{self.ny})"


def ladder(i: int, m: int) -> float:
    """Matrix element of ``a + a^dagger`` between HO levels ``i`` and ``m``.

    ``sqrt(m+1)`` for ``i = m+1``, ``sqrt(m)`` for ``i = m-1``, zero otherwise.
    """
    if i == m + 1:
        return math.sqrt(m + 1)
    if i == m - 1:
        return math.sqrt(m)
    return 0.0


@dataclass(frozen=True)
class ModeBasis:
    """Ordered, duplicate-free list of modes with a per-quantum-number cap."""

    modes: tuple
    max_quanta: int = 1

    def __post_init__(self):
        modes = tuple(Mode(*m) for m in self.modes)
        object.__setattr__(self, "modes", modes)
        if len(set(modes)) != len(modes):
            raise ValueError("mode basis contains duplicates")
        for m in modes:
            if m.nx < 0 or m.ny < 0 or int(m.nx) != m.nx or int(m.ny) != m.ny:
                raise ValueError(f"mode {m} must carry non-negative integer quanta")
            if m.nx > self.max_quanta or m.ny > self.max_quanta:
                raise ValueError(f"mode {m} exceeds the truncation {self.max_quanta}")

    @classmethod
    def product(cls, traps: Iterable[str], max_quanta: int = 1, total: int | None = None) -> "ModeBasis":
        """All modes with ``nx, ny <= max_quanta`` (and ``nx + ny <= total`` if given)."""
        modes = []
        for t in traps:
            for nx in range(max_quanta + 1):
                for ny in range(max_quanta + 1):
                    if total is None or nx + ny <= total:
                        modes.append(Mode(t, nx, ny))
        return cls(tuple(modes), max_quanta)

    @classmethod
    def single_wire_two_level(cls) -> "ModeBasis":
        return cls((Mode("single", 0, 0), Mode("single", 0, 1)))

    @classmethod
    def double_wire_lowest(cls) -> "ModeBasis":
        """Ground state plus the two first excited states in each trap."""
        return cls(tuple(Mode(t, nx, ny) for t in ("L", "R") for nx, ny in ((0, 0), (1, 0), (0, 1))))

    @property
    def traps(self) -> tuple:
        seen = []
        for m in self.modes:
            if m.trap not in seen:
                seen.append(m.trap)
        return tuple(seen)

    def index(self, mode) -> int:
        mode = Mode(*mode)
        try:
            return self.modes.index(mode)
        except ValueError:
            raise IndexError(f"mode {mode} is not part of the basis") from None

    def __len__(self):
        return len(self.modes)

    def __iter__(self):
        return iter(self.modes)

    def __contains__(self, mode):
        return Mode(*mode) in self.modes
