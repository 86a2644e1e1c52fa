"""Composition posets as cover generators: chains, tableaux, shadows.

A poset is selected by an operator alphabet; covers of P are the results of
admissible letters.  An independent cover oracle for the full insertion
family works through permutation descent sets and zero insertion, never
touching the operator machinery.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .composition import (
    Composition,
    DescentSet,
    Partition,
    composition_from_descents,
    compositions_up_to,
    descent_set,
    mw_star,
    partitions_of,
    young_covers_up,
)
from .operators import Alphabet, Letter, Word, admissible_letters


def covers(A: Alphabet, P: Composition) -> list[tuple[Letter, Composition]]:
    """Labeled covers of P: one entry per admissible letter."""
    return admissible_letters(P, A)


def _min_perm_with_descents(n: int, descents: frozenset[int]) -> tuple[int, ...]:
    """Lexicographically smallest permutation of 1..n with the exact descent set."""
    want_descent = [(i in descents) for i in range(1, n)]
    used = [False] * (n + 1)
    out: list[int] = []

    def rec() -> bool:
        pos = len(out)
        if pos == n:
            return True
        for v in range(1, n + 1):
            if used[v]:
                continue
            if pos > 0:
                if want_descent[pos - 1] != (out[-1] > v):
                    continue
            used[v] = True
            out.append(v)
            if rec():
                return True
            used[v] = False
            out.pop()
        return False

    if not rec():
        raise ValueError(f"no permutation of 1..{n} has descent set {set(descents)}")
    return tuple(out)


def covers_via_descent_oracle(P: Composition) -> set[Composition]:
    """Covers of P in the full insertion poset, computed independently.

    Encode P by the descent set of a permutation, insert a zero at each of
    the n+1 positions, and decode the descent sets of the results.  The
    outcome does not depend on the chosen permutation; we canonically take
    the lexicographically smallest one.
    """
    n = P.weight
    pi = _min_perm_with_descents(n, descent_set(P).positions)
    found: set[Composition] = set()
    for pos in range(n + 1):
        w = pi[:pos] + (0,) + pi[pos:]
        S = frozenset(i for i in range(1, n + 1) if w[i - 1] > w[i])
        found.add(composition_from_descents(DescentSet(n + 1, S)))
    return found


def leq(A: Alphabet, P: Composition, Q: Composition) -> bool:
    """True iff Q is reachable from P by admissible letters."""
    if P == Q:
        return True
    if Q.weight <= P.weight:
        return False
    layer = {P}
    for _ in range(Q.weight - P.weight):
        layer = {res for C in layer for _, res in admissible_letters(C, A)}
        if Q in layer:
            return True
        # keep only elements that can still reach Q's width
        layer = {C for C in layer if C.width <= Q.width + (Q.weight - C.weight)}
    return False


def count_chains(A: Alphabet, P: Composition, Q: Composition) -> int:
    """Number of saturated chains from P to Q (layered multiplicity count)."""
    if Q.weight < P.weight:
        return 0
    counts: dict[Composition, int] = {P: 1}
    for _ in range(Q.weight - P.weight):
        nxt: dict[Composition, int] = {}
        for C, c in counts.items():
            for _, res in admissible_letters(C, A):
                nxt[res] = nxt.get(res, 0) + c
        counts = nxt
    return counts.get(Q, 0)


@dataclass(frozen=True)
class Chain:
    """A saturated chain: successive covers with their letters recorded."""

    steps: tuple[Composition, ...]
    labels: tuple[Letter, ...]

    def __post_init__(self) -> None:
        if len(self.steps) != len(self.labels) + 1:
            raise ValueError("a chain needs exactly one label per cover step")

    @property
    def start(self) -> Composition:
        return self.steps[0]

    @property
    def end(self) -> Composition:
        return self.steps[-1]

    @property
    def length(self) -> int:
        return len(self.labels)

    def word(self) -> Word:
        """Label word, leftmost letter applied last."""
        return tuple(reversed(self.labels))

    def __str__(self) -> str:
        return " < ".join(str(s) for s in self.steps)


def enumerate_chains(
    A: Alphabet, P: Composition, n: int, width_filter: Optional[int] = None
) -> Iterator[Chain]:
    """All saturated chains of length n from P, optionally keeping only
    endpoints of the given width.  Width never decreases along a chain, so
    the filter prunes the search."""
    steps = [P]
    labels: list[Letter] = []

    def rec(depth: int) -> Iterator[Chain]:
        if depth == n:
            if width_filter is None or steps[-1].width == width_filter:
                yield Chain(tuple(steps), tuple(labels))
            return
        for t, Q in admissible_letters(steps[-1], A):
            if width_filter is not None and Q.width > width_filter:
                continue
            steps.append(Q)
            labels.append(t)
            yield from rec(depth + 1)
            steps.pop()
            labels.pop()

    yield from rec(0)


# ---------------------------------------------------------------------------
# Tableaux


@dataclass(frozen=True)
class Tableau:
    """Box-addition record of a chain, on the diagram of its endpoint.

    columns[i][j] is the entry of the cell in column i+1, row j+1: zero for
    boxes of the starting composition, otherwise the index of the step that
    added the box.  Only insert-left/right and grow-part steps are
    representable, so splitting letters (V with size >= 2) are rejected.
    """

    columns: tuple[tuple[int, ...], ...]

    @property
    def shape(self) -> Composition:
        return Composition(tuple(len(c) for c in self.columns))

    def start_composition(self) -> Composition:
        parts = []
        for col in self.columns:
            zeros = sum(1 for e in col if e == 0)
            if zeros:
                if any(e == 0 for e in col[zeros:]):
                    raise ValueError("zero cells must sit at the bottom of a column")
                parts.append(zeros)
        return Composition(tuple(parts))

    def __str__(self) -> str:
        return "; ".join(",".join(str(e) for e in col) for col in self.columns)


def chain_to_tableau(c: Chain) -> Tableau:
    """Label the endpoint's boxes in the order the chain added them.

    Part identity is tracked through insertions: L/R/V^1 mint a new column,
    U_j adds a box on top of column j.
    """
    if any(t.kind == "V" and t.r >= 2 for t in c.labels):
        raise ValueError("tableaux are only defined without part-splitting letters")
    cols: list[list[int]] = [[0] * p for p in c.start.parts]
    for step, t in enumerate(c.labels, start=1):
        if t.kind == "L":
            cols.insert(0, [step])
        elif t.kind == "R":
            cols.append([step])
        elif t.kind == "V":
            cols.insert(t.i - 1, [step])
        else:
            cols[t.i - 1].append(step)
    tab = Tableau(tuple(tuple(col) for col in cols))
    assert tab.shape == c.end
    return tab


def tableau_to_chain(T: Tableau, A: Alphabet) -> Chain:
    """Rebuild the chain a tableau encodes, validating each step against A."""
    if A.kind not in ("N", "BBD"):
        raise ValueError("tableau reconstruction needs the N or BBD poset")
    n = max((e for col in T.columns for e in col), default=0)
    entries = {}
    for ci, col in enumerate(T.columns):
        for ri, e in enumerate(col):
            if e:
                entries.setdefault(e, (ci, ri))
    if sorted(entries) != list(range(1, n + 1)):
        raise ValueError("nonzero entries must be 1..n, each exactly once")

    active = [ci for ci, col in enumerate(T.columns) if col and col[0] == 0]
    heights = {ci: sum(1 for e in T.columns[ci] if e == 0) for ci in active}
    steps = [T.start_composition()]
    labels: list[Letter] = []
    for s in range(1, n + 1):
        ci, ri = entries[s]
        cur = steps[-1]
        if ci in heights:
            if ri != heights[ci]:
                raise ValueError(f"entry {s} does not sit on top of its column")
            j = active.index(ci) + 1
            letter = Letter("U", j)
            heights[ci] += 1
        else:
            if ri != 0:
                raise ValueError(f"entry {s} starts a column above row one")
            pos = sum(1 for a in active if a < ci) + 1
            if pos == 1:
                letter = Letter("L")
            elif A.kind == "N":
                if pos != cur.width + 1:
                    raise ValueError("interior insertion is not available here")
                letter = Letter("R")
            else:
                letter = Letter("V", pos, 1)
            active.insert(pos - 1, ci)
            heights[ci] = 1
        nxt = {res for _, res in admissible_letters(cur, A)}
        new = Composition(tuple(heights[a] for a in active))
        if new not in nxt:
            raise ValueError(f"step {s} is not a cover in this poset")
        steps.append(new)
        labels.append(letter)
    return Chain(tuple(steps), tuple(labels))


# ---------------------------------------------------------------------------
# Shadows


@dataclass(frozen=True)
class SkewTableau:
    """Standard skew tableau: box-addition record of a chain in the
    partition order, from inner shape to outer shape."""

    outer: Partition
    inner: Partition
    entries: tuple[tuple[int, int, int], ...]  # sorted (column, row, value)

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(sorted(self.entries)))
        inner = self.inner.parts
        outer = self.outer.parts
        if len(inner) > len(outer) or any(
            i > o for i, o in zip(inner, outer)
        ):
            raise ValueError("inner shape must fit inside the outer shape")
        vals = sorted(v for _, _, v in self.entries)
        if vals != list(range(1, self.outer.weight - self.inner.weight + 1)):
            raise ValueError("entries must be 1..n, each exactly once")

    def __str__(self) -> str:
        return (
            f"{self.outer}/{self.inner}: "
            + " ".join(f"({c},{r})={v}" for c, r, v in self.entries)
        )


def shadow(c: Chain) -> SkewTableau:
    """Stepwise images of the chain under decreasing reordering.

    Each cover adds one box to the reordered shape; the entry records the
    step at which the box appeared.
    """
    if any(t.kind == "V" and t.r >= 2 for t in c.labels):
        raise ValueError("shadows are only defined without part-splitting letters")
    entries = []
    prev = mw_star(c.steps[0]).parts
    for step, comp in enumerate(c.steps[1:], start=1):
        cur = mw_star(comp).parts
        padded_prev = prev + (0,) * (len(cur) - len(prev))
        spots = [m for m in range(len(cur)) if cur[m] != padded_prev[m]]
        assert len(spots) == 1, "reordered shapes must differ in one column"
        m = spots[0]
        entries.append((m + 1, cur[m], step))
        prev = cur
    return SkewTableau(mw_star(c.end), mw_star(c.start), tuple(entries))


def _multiset_orders(lam: Partition) -> Iterator[Composition]:
    seen = set()
    for perm in itertools.permutations(lam.parts):
        if perm not in seen:
            seen.add(perm)
            yield Composition(perm)


def chains_with_shadow(A: Alphabet, S: SkewTableau) -> Iterator[Chain]:
    """All chains in the poset whose shadow is exactly S (brute force over
    start compositions that reorder to the inner shape)."""
    n = S.outer.weight - S.inner.weight
    for start in _multiset_orders(S.inner):
        for chain in enumerate_chains(A, start, n):
            if mw_star(chain.end) != S.outer:
                continue
            if shadow(chain) == S:
                yield chain


def shadow_multiplicity(A: Alphabet, S: SkewTableau) -> int:
    return sum(1 for _ in chains_with_shadow(A, S))


# ---------------------------------------------------------------------------
# Multiranking verification


@dataclass
class MultirankReport:
    alphabet: Alphabet
    max_weight: int
    passed: bool
    nonrank_edges: list = field(default_factory=list)
    missing_young_covers: list = field(default_factory=list)
    unreached_partitions: list = field(default_factory=list)
    extra_edges: list = field(default_factory=list)

    def __str__(self) -> str:
        status = "pass" if self.passed else "FAIL"
        return (
            f"multiranking[{self.alphabet}, weight<={self.max_weight}]: {status}"
            f" ({len(self.extra_edges)} edges beyond the partition order)"
        )


def verify_multiranking(A: Alphabet, max_weight: int) -> MultirankReport:
    """Check that decreasing reordering sends covers to covers.

    For the posets without part-splitting letters the image edges must be
    exactly covers of the partition order and every such cover must be
    attained.  With splitting letters the image may add rank-preserving
    edges; these are collected in ``extra_edges`` and every ordinary
    partition cover must still be attained.
    """
    image_edges: set[tuple[Partition, Partition]] = set()
    nonrank = []
    for P in compositions_up_to(max_weight - 1):
        for _, Q in admissible_letters(P, A):
            lo, hi = mw_star(P), mw_star(Q)
            if hi.weight != lo.weight + 1:
                nonrank.append((P, Q))
            image_edges.add((lo, hi))

    young_edges: set[tuple[Partition, Partition]] = set()
    reached: set[Partition] = set()
    for w in range(max_weight):
        for lam in partitions_of(w):
            reached.add(lam)
            for mu in young_covers_up(lam):
                if mu.weight <= max_weight:
                    young_edges.add((lam, mu))
    for lam in partitions_of(max_weight):
        reached.add(lam)

    missing = sorted(
        (e for e in young_edges if e not in image_edges),
        key=lambda e: (e[0].weight, e[0].parts, e[1].parts),
    )
    extra = sorted(
        (e for e in image_edges if e not in young_edges),
        key=lambda e: (e[0].weight, e[0].parts, e[1].parts),
    )
    unreached = [lam for lam in reached if mw_star(Composition(lam.parts)) != lam]

    strict = A.v_size_bound() in (0, 1)  # no part-splitting letters
    passed = not nonrank and not missing and not unreached
    if strict:
        passed = passed and not extra
    return MultirankReport(
        alphabet=A,
        max_weight=max_weight,
        passed=passed,
        nonrank_edges=nonrank,
        missing_young_covers=missing,
        unreached_partitions=unreached,
        extra_edges=extra,
    )


# ---------------------------------------------------------------------------
# Export


def hasse_dot(A: Alphabet, max_weight: int) -> str:
    """DOT digraph of all compositions up to a weight bound, edges labeled
    by their letters."""
    lines = ["digraph hasse {", "  rankdir=BT;"]
    nodes = sorted(compositions_up_to(max_weight), key=lambda P: (P.weight, P.parts))
    for P in nodes:
        lines.append(f'  "{P}";')
    for P in nodes:
        if P.weight >= max_weight:
            continue
        for t, Q in admissible_letters(P, A):
            lines.append(f'  "{P}" -> "{Q}" [label="{t}"];')
    lines.append("}")
    return "\n".join(lines)
