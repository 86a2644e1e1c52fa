"""The operator alphabet, its partial action on compositions, and admissibility.

Five families of partial operations add one box to a composition:

* ``L`` prepends a part of size one,
* ``R`` appends a part of size one,
* ``U_j`` increases part j by one,
* ``V_i^1`` inserts a part of size one at position i (the preceding part
  must have size at least two),
* ``V_i^r`` (r >= 2) replaces the part before position i, of size p, by the
  pair (p - r + 1, r); it needs p - r + 1 >= 2.

Words act on the right: in the word ``W_m ... W_1`` the letter ``W_1`` is
applied first.  A letter is admissible when it is defined and no strictly
higher-priority letter of the alphabet produces the same composition.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal, Optional

from .composition import Composition

PriorityOrder = Literal["higher", "lower", "incomparable"]


@dataclass(frozen=True)
class Letter:
    kind: str  # "L" | "R" | "U" | "V"
    i: int = 0
    r: int = 0

    def __post_init__(self) -> None:
        if self.kind not in ("L", "R", "U", "V"):
            raise ValueError(f"unknown letter kind {self.kind!r}")
        if self.kind == "U" and self.i < 1:
            raise ValueError("U index must be >= 1")
        if self.kind == "V" and (self.i < 2 or self.r < 1):
            raise ValueError("V needs insertion index >= 2 and size >= 1")

    def __str__(self) -> str:
        if self.kind == "U":
            return f"U{self.i}"
        if self.kind == "V":
            return f"V{self.i}^{self.r}"
        return self.kind

    def sort_key(self) -> tuple[int, int, int]:
        order = {"L": 0, "U": 1, "V": 2, "R": 3}
        return (order[self.kind], self.i, self.r)


L = Letter("L")
R = Letter("R")


def U(j: int) -> Letter:
    return Letter("U", j)


def V(i: int, r: int = 1) -> Letter:
    return Letter("V", i, r)


def parse_letter(text: str) -> Letter:
    text = text.strip()
    if text == "L":
        return L
    if text == "R":
        return R
    if text.startswith("U"):
        return U(int(text[1:]))
    if text.startswith("V"):
        body = text[1:]
        if "^" in body:
            i, r = body.split("^")
            return V(int(i), int(r))
        return V(int(body), 1)
    raise ValueError(f"cannot parse letter {text!r}")


Word = tuple[Letter, ...]


def word_str(w: Word) -> str:
    """Leftmost letter printed first; it is the last one applied."""
    return " ".join(str(t) for t in w) if w else "(empty)"


def parse_word(text: str) -> Word:
    text = text.strip()
    if not text or text == "(empty)":
        return ()
    return tuple(parse_letter(tok) for tok in text.split())


@dataclass(frozen=True)
class Alphabet:
    """Selector for the operator set generating one of the composition posets.

    kind "N":     L, R and all U_j.
    kind "BBD":   L, all U_j, and the V_i^1 insertions.
    kind "S":     L, all U_j, and V_i^r with r < d  (d > 1; "BBD" behaves as d = 2).
    kind "Sinf":  L, all U_j, and every V_i^r.
    kind "Uonly": the U_j alone.
    """

    kind: str
    d: Optional[int] = None

    def __post_init__(self) -> None:
        if self.kind not in ("N", "BBD", "S", "Sinf", "Uonly"):
            raise ValueError(f"unknown alphabet {self.kind!r}")
        if self.kind == "S":
            if self.d is None or self.d <= 1:
                raise ValueError("S(d) needs d > 1")
        elif self.d is not None:
            raise ValueError(f"{self.kind} takes no parameter")

    @classmethod
    def parse(cls, text: str) -> "Alphabet":
        text = text.strip()
        if text in ("N", "BBD", "Uonly"):
            return cls(text)
        if text in ("Sinf", "S:inf"):
            return cls("Sinf")
        if text.startswith("S:"):
            return cls("S", int(text[2:]))
        raise ValueError(f"cannot parse poset selector {text!r}")

    def __str__(self) -> str:
        if self.kind == "S":
            return f"S:{self.d}"
        if self.kind == "Sinf":
            return "S:inf"
        return self.kind

    @property
    def has_R(self) -> bool:
        return self.kind == "N"

    @property
    def has_L(self) -> bool:
        return self.kind != "Uonly"

    def v_size_bound(self) -> int:
        """Largest admitted V size, or -1 for unbounded, 0 for none."""
        if self.kind == "N" or self.kind == "Uonly":
            return 0
        if self.kind == "BBD":
            return 1
        if self.kind == "S":
            return self.d - 1
        return -1  # Sinf

    def contains(self, t: Letter) -> bool:
        if t.kind == "L":
            return self.has_L
        if t.kind == "R":
            return self.has_R
        if t.kind == "U":
            return True
        bound = self.v_size_bound()
        return bound == -1 or t.r <= bound


N = Alphabet("N")
BBD = Alphabet("BBD")
SINF = Alphabet("Sinf")
UONLY = Alphabet("Uonly")


def S(d: int) -> Alphabet:
    return Alphabet("S", d)


def apply_letter(t: Letter, P: Composition) -> Optional[Composition]:
    """One step of the partial action; None when the letter is undefined on P.

    The weight always grows by exactly one when defined.
    """
    p = P.parts
    k = len(p)
    if t.kind == "L":
        return Composition((1,) + p)
    if t.kind == "R":
        return Composition(p + (1,))
    if t.kind == "U":
        j = t.i
        if j > k:
            return None
        return Composition(p[: j - 1] + (p[j - 1] + 1,) + p[j:])
    # V letters insert at position i; the part before it is p[i-2]
    i, r = t.i, t.r
    if i > k + 1:
        return None
    prev = p[i - 2]
    if r == 1:
        if prev < 2:
            return None
        return Composition(p[: i - 1] + (1,) + p[i - 1 :])
    if prev - r + 1 < 2:
        return None
    return Composition(p[: i - 2] + (prev - r + 1, r) + p[i - 1 :])


def _priority_rank(t: Letter) -> tuple[int, int]:
    # L and U share the top class; V's are ordered by insertion index.
    if t.kind in ("L", "U"):
        return (0, 0)
    if t.kind == "V":
        return (1, t.i)
    return (2, 0)


def priority_compare(s: Letter, t: Letter) -> PriorityOrder:
    rs, rt = _priority_rank(s), _priority_rank(t)
    if rs == rt:
        return "incomparable"
    return "higher" if rs < rt else "lower"


class AdmissibilityError(AssertionError):
    """Two incomparable letters produced the same composition (never expected)."""


def _defined_letters(P: Composition, A: Alphabet) -> list[tuple[Letter, Composition]]:
    k = P.width
    out: list[tuple[Letter, Composition]] = []
    if A.has_L:
        out.append((L, apply_letter(L, P)))
    for j in range(1, k + 1):
        out.append((U(j), apply_letter(U(j), P)))
    bound = A.v_size_bound()
    if bound:
        for i in range(2, k + 2):
            prev = P.parts[i - 2]
            # r = 1 needs prev >= 2; r >= 2 needs r <= prev - 1
            top = prev - 1 if bound == -1 else min(prev - 1, bound)
            if prev >= 2:
                out.append((V(i, 1), apply_letter(V(i, 1), P)))
            for r in range(2, top + 1):
                out.append((V(i, r), apply_letter(V(i, r), P)))
    if A.has_R:
        out.append((R, apply_letter(R, P)))
    return [(t, Q) for t, Q in out if Q is not None]


def is_admissible(t: Letter, P: Composition, A: Alphabet) -> bool:
    """Defined, and not shadowed by a strictly higher-priority letter of A."""
    result = apply_letter(t, P)
    if result is None or not A.contains(t):
        return False
    mine = _priority_rank(t)
    for s, Q in _defined_letters(P, A):
        if _priority_rank(s) < mine and Q == result:
            return False
    return True


def admissible_letters(P: Composition, A: Alphabet) -> list[tuple[Letter, Composition]]:
    """All admissible letters with their results: the labeled cover set of P.

    Results are pairwise distinct; within a group of letters producing the
    same composition exactly one has maximal priority (asserted).
    """
    groups: dict[Composition, list[Letter]] = {}
    for t, Q in _defined_letters(P, A):
        groups.setdefault(Q, []).append(t)
    out = []
    for Q, letters in groups.items():
        best = min(_priority_rank(t) for t in letters)
        top = [t for t in letters if _priority_rank(t) == best]
        if len(top) != 1:
            raise AdmissibilityError(
                f"equal-priority letters {[str(t) for t in top]} both give {Q} on {P}"
            )
        out.append((top[0], Q))
    out.sort(key=lambda pair: pair[0].sort_key())
    return out


class NotAdmissibleError(ValueError):
    """A word left the admissible language; ``step`` counts applied letters."""

    def __init__(self, word: Word, P: Composition, step: int):
        self.word = word
        self.start = P
        self.step = step
        super().__init__(
            f"word {word_str(word)} not admissible for {P}: step {step} fails"
        )


def apply_word(w: Word, P: Composition, A: Alphabet) -> Composition:
    """Apply letters right to left, each step admissible; raises
    NotAdmissibleError (carrying the failing step index) otherwise."""
    cur = P
    for step, t in enumerate(reversed(w)):
        if not A.contains(t) or not is_admissible(t, cur, A):
            raise NotAdmissibleError(w, P, step)
        cur = apply_letter(t, cur)
    return cur


def try_apply_word(w: Word, P: Composition, A: Alphabet) -> Optional[Composition]:
    try:
        return apply_word(w, P, A)
    except NotAdmissibleError:
        return None


def letters_of(ts: Iterable[str]) -> Word:
    return tuple(parse_letter(t) for t in ts)
