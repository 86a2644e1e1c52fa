"""Compositions, partitions, diagrams, and the descent-set encoding."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator


@dataclass(frozen=True)
class Composition:
    """A finite sequence of positive integer parts (possibly empty).

    Text form is a comma-separated list of parts, with ``()`` for the
    empty composition.  Values are immutable and hashable.
    """

    parts: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        parts = tuple(int(p) for p in self.parts)
        if any(p < 1 for p in parts):
            raise ValueError(f"composition parts must be >= 1, got {parts!r}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "Composition":
        text = text.strip()
        if text in ("", "()"):
            return cls()
        return cls(tuple(int(p) for p in text.split(",")))

    @property
    def width(self) -> int:
        return len(self.parts)

    @property
    def height(self) -> int:
        return max(self.parts, default=0)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def is_all_ones(self) -> bool:
        """True when every part equals one (vacuously true when empty)."""
        return all(p == 1 for p in self.parts)

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.parts) if self.parts else "()"

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, i: int) -> int:
        return self.parts[i]

    def to_json(self) -> list[int]:
        return list(self.parts)

    @classmethod
    def from_json(cls, data: list[int]) -> "Composition":
        return cls(tuple(data))


@dataclass(frozen=True)
class Partition:
    """A weakly decreasing composition; also used for finitely supported
    vectors of naturals (trailing zeros trimmed)."""

    parts: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        parts = tuple(int(p) for p in self.parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(p < 1 for p in parts):
            raise ValueError(f"partition parts must be >= 1, got {parts!r}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts must be weakly decreasing, got {parts!r}")
        object.__setattr__(self, "parts", parts)

    @property
    def width(self) -> int:
        return len(self.parts)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def conjugate(self) -> "Partition":
        """Transpose of the diagram; an involution."""
        if not self.parts:
            return Partition()
        return Partition(
            tuple(
                sum(1 for p in self.parts if p >= j)
                for j in range(1, self.parts[0] + 1)
            )
        )

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.parts) if self.parts else "()"

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)


@dataclass(frozen=True)
class DescentSet:
    """A subset of {1, ..., n-1} encoding a composition of n."""

    n: int
    positions: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "positions", frozenset(self.positions))
        if self.n < 0:
            raise ValueError("n must be >= 0")
        if any(not (1 <= s < self.n) for s in self.positions):
            raise ValueError(f"descents must lie in 1..{self.n - 1}")


def diagram(P: Composition) -> frozenset[tuple[int, int]]:
    """Cells (column i, row j) with 1 <= j <= p_i."""
    return frozenset((i + 1, j) for i, p in enumerate(P.parts) for j in range(1, p + 1))


def measures(P: Composition) -> tuple[int, int, int]:
    """(width, height, weight) of a composition."""
    return (P.width, P.height, P.weight)


def multiweight(P: Composition) -> Partition:
    """Sum of the staircase vectors of the parts: component m counts the
    parts of size >= m.  Always weakly decreasing."""
    out = [0] * P.height
    for p in P.parts:
        for m in range(p):
            out[m] += 1
    return Partition(tuple(out))


def mw_star(P: Composition) -> Partition:
    """The decreasing reordering of the parts; conjugate of multiweight."""
    return Partition(tuple(sorted(P.parts, reverse=True)))


def conjugate(lam: Partition) -> Partition:
    return lam.conjugate()


def descent_set(P: Composition) -> DescentSet:
    """Partial sums of all but the last part, as a subset of {1..n-1}."""
    sums = []
    acc = 0
    for p in P.parts[:-1]:
        acc += p
        sums.append(acc)
    return DescentSet(P.weight, frozenset(sums))


def composition_from_descents(D: DescentSet) -> Composition:
    """Inverse of descent_set: successive differences of the descent positions."""
    if D.n == 0:
        return Composition()
    cuts = sorted(D.positions)
    bounds = [0] + cuts + [D.n]
    return Composition(tuple(b - a for a, b in zip(bounds, bounds[1:])))


def compositions_of(n: int) -> Iterator[Composition]:
    """All 2^(n-1) compositions of n, lexicographically by parts."""
    if n < 0:
        return
    if n == 0:
        yield Composition()
        return

    def rec(m: int) -> Iterator[tuple[int, ...]]:
        if m == 0:
            yield ()
            return
        for first in range(1, m + 1):
            for rest in rec(m - first):
                yield (first,) + rest

    for parts in rec(n):
        yield Composition(parts)


def compositions_up_to(n: int) -> Iterator[Composition]:
    for m in range(n + 1):
        yield from compositions_of(m)


def partitions_of(n: int) -> Iterator[Partition]:
    def rec(m: int, cap: int) -> Iterator[tuple[int, ...]]:
        if m == 0:
            yield ()
            return
        for first in range(min(m, cap), 0, -1):
            for rest in rec(m - first, first):
                yield (first,) + rest

    for parts in rec(n, n):
        yield Partition(parts)


def young_covers_up(lam: Partition) -> list[Partition]:
    """Partitions obtained from lam by adding a single box."""
    out = []
    parts = lam.parts
    for m in range(len(parts)):
        if m == 0 or parts[m - 1] > parts[m]:
            out.append(Partition(parts[:m] + (parts[m] + 1,) + parts[m + 1 :]))
    out.append(Partition(parts + (1,)))
    return out
