"""Exact multivariate polynomials, factored rational functions, and the
variable-shift / exact-degree operators that drive the width recurrences.

Rational functions keep their denominator as a multiset of factors with
constant term one, so power-series expansion always exists and cancellation
is plain trial division.  No general multivariate gcd is attempted: in this
artifact every denominator factor is a linear form 1 - sum of variables.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import mpmath

Rat = Fraction


class NotDivisibleError(ArithmeticError):
    """An exact monomial division failed; a series precondition was violated."""


class NoConvergenceError(ArithmeticError):
    """Root iteration missed its residual target; partial results attached."""

    def __init__(self, message: str, roots: list[complex]):
        super().__init__(message)
        self.roots = roots


def _trim(exps: Sequence[int]) -> tuple[int, ...]:
    exps = tuple(exps)
    while exps and exps[-1] == 0:
        exps = exps[:-1]
    return exps


class MultiPoly:
    """Polynomial in x_1, x_2, ... with exact rational coefficients, stored
    as exponent-vector -> coefficient (no zero coefficients kept)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[dict] = None):
        clean: dict[tuple[int, ...], Fraction] = {}
        for e, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                e = _trim(e)
                acc = clean.get(e)
                tot = c if acc is None else acc + c
                if tot:
                    clean[e] = tot
                elif acc is not None:
                    del clean[e]
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "MultiPoly":
        return cls()

    @classmethod
    def const(cls, c) -> "MultiPoly":
        return cls({(): Fraction(c)})

    @classmethod
    def one(cls) -> "MultiPoly":
        return cls.const(1)

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1) -> "MultiPoly":
        return cls({tuple(exps): Fraction(c)})

    @classmethod
    def variable(cls, i: int) -> "MultiPoly":
        return cls.monomial((0,) * (i - 1) + (1,))

    @classmethod
    def one_minus_vars(cls, indices: Iterable[int]) -> "MultiPoly":
        """The linear form 1 - sum of the named variables."""
        terms = {(): Fraction(1)}
        for i in indices:
            terms[(0,) * (i - 1) + (1,)] = Fraction(-1)
        return cls(terms)

    # -- basics ------------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, MultiPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.key())

    def key(self) -> tuple:
        return tuple(sorted(self.terms.items()))

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            acc = out.get(e)
            tot = c if acc is None else acc + c
            if tot:
                out[e] = tot
            elif acc is not None:
                del out[e]
        p = MultiPoly.__new__(MultiPoly)
        p.terms = out
        return p

    def __neg__(self) -> "MultiPoly":
        p = MultiPoly.__new__(MultiPoly)
        p.terms = {e: -c for e, c in self.terms.items()}
        return p

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            if not other:
                return MultiPoly.zero()
            p = MultiPoly.__new__(MultiPoly)
            p.terms = {e: c * other for e, c in self.terms.items()}
            return p
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _mul_exps(e1, e2)
                acc = out.get(e)
                tot = c1 * c2 if acc is None else acc + c1 * c2
                if tot:
                    out[e] = tot
                elif acc is not None:
                    del out[e]
        p = MultiPoly.__new__(MultiPoly)
        p.terms = out
        return p

    __rmul__ = __mul__

    @property
    def n_vars(self) -> int:
        return max((len(e) for e in self.terms), default=0)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def degree_in(self, i: int) -> int:
        return max((e[i - 1] if len(e) >= i else 0 for e in self.terms), default=0)

    def constant_term(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self.terms.get(_trim(exps), Fraction(0))

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        # graded order, earlier variables first within a degree
        return sorted(
            self.terms.items(),
            key=lambda t: (sum(t[0]), tuple(-d for d in t[0])),
        )

    # -- calculus-style operators -------------------------------------------

    def derivative(self, i: int) -> "MultiPoly":
        out = {}
        for e, c in self.terms.items():
            d = e[i - 1] if len(e) >= i else 0
            if d:
                ne = list(e)
                ne[i - 1] -= 1
                out[_trim(ne)] = c * d
        p = MultiPoly.__new__(MultiPoly)
        p.terms = out
        return p

    def substitute_zero(self, i: int) -> "MultiPoly":
        p = MultiPoly.__new__(MultiPoly)
        p.terms = {
            e: c for e, c in self.terms.items() if (len(e) < i or e[i - 1] == 0)
        }
        return p

    def shift_vars(self, j: int) -> "MultiPoly":
        """Rename x_m -> x_{m+1} for every m >= j (the shift operator)."""
        out = {}
        for e, c in self.terms.items():
            if len(e) >= j:
                e = e[: j - 1] + (0,) + e[j - 1 :]
            out[e] = c
        p = MultiPoly.__new__(MultiPoly)
        p.terms = out
        return p

    def degree_part(self, i: int, d: int) -> "MultiPoly":
        """Terms whose degree in x_i is exactly d."""
        p = MultiPoly.__new__(MultiPoly)
        p.terms = {
            e: c
            for e, c in self.terms.items()
            if (e[i - 1] if len(e) >= i else 0) == d
        }
        return p

    def truncate_total(self, N: int) -> "MultiPoly":
        p = MultiPoly.__new__(MultiPoly)
        p.terms = {e: c for e, c in self.terms.items() if sum(e) <= N}
        return p

    def mul_monomial(self, i: int, d: int) -> "MultiPoly":
        out = {}
        for e, c in self.terms.items():
            e = e + (0,) * (i - len(e)) if len(e) < i else e
            ne = list(e)
            ne[i - 1] += d
            out[tuple(ne)] = c
        p = MultiPoly.__new__(MultiPoly)
        p.terms = out
        return p

    def divide_by_monomial(self, i: int, d: int) -> "MultiPoly":
        out = {}
        for e, c in self.terms.items():
            have = e[i - 1] if len(e) >= i else 0
            if have < d:
                raise NotDivisibleError(
                    f"polynomial is not divisible by x_{i}^{d}"
                )
            ne = list(e + (0,) * (i - len(e)) if len(e) < i else e)
            ne[i - 1] -= d
            out[_trim(ne)] = c
        p = MultiPoly.__new__(MultiPoly)
        p.terms = out
        return p

    def divide_exact(self, q: "MultiPoly") -> Optional["MultiPoly"]:
        """Exact quotient self / q, or None; q must have nonzero constant term.

        Runs ascending-degree elimination: the constant of q cancels the
        current minimal term, so failure shows up as the minimal term
        outliving the quotient's degree bound.
        """
        qc = q.constant_term()
        if not qc:
            raise ValueError("divisor must have a nonzero constant term")
        if not self.terms:
            return MultiPoly.zero()
        bound = self.total_degree()
        rem = dict(self.terms)
        heap = [(sum(e), e) for e in rem]
        heapq.heapify(heap)
        quo: dict[tuple[int, ...], Fraction] = {}
        qterms = [(e, c) for e, c in q.terms.items() if e != ()]
        while heap:
            deg, e = heapq.heappop(heap)
            c = rem.get(e)
            if not c:
                continue
            if deg > bound:
                return None
            quo[e] = c
            del rem[e]
            for qe, qcf in qterms:
                ne = _mul_exps(e, qe)
                acc = rem.get(ne)
                tot = -c * qcf / qc if acc is None else acc - c * qcf / qc
                if tot:
                    if acc is None:
                        heapq.heappush(heap, (sum(ne), ne))
                    rem[ne] = tot
                elif acc is not None:
                    del rem[ne]
        out = MultiPoly.__new__(MultiPoly)
        out.terms = {e: c / qc for e, c in quo.items()}
        return out

    def substitute_all_t(self) -> "UniPoly":
        """Set every variable to t."""
        coeffs: dict[int, Fraction] = {}
        for e, c in self.terms.items():
            d = sum(e)
            coeffs[d] = coeffs.get(d, Fraction(0)) + c
        top = max(coeffs, default=0)
        return UniPoly([coeffs.get(d, Fraction(0)) for d in range(top + 1)])

    def kappa(self) -> "MultiPoly":
        """Sort every exponent vector decreasingly and merge coefficients."""
        out: dict[tuple[int, ...], Fraction] = {}
        for e, c in self.terms.items():
            ne = _trim(sorted(e, reverse=True))
            out[ne] = out.get(ne, Fraction(0)) + c
        return MultiPoly(out)

    # -- rendering / json ----------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"x{i + 1}" + (f"^{d}" if d > 1 else "")
                for i, d in enumerate(e)
                if d
            )
            if not mono:
                piece = str(c)
            elif c == 1:
                piece = mono
            elif c == -1:
                piece = f"-{mono}"
            else:
                piece = f"{c}*{mono}"
            if bits and not piece.startswith("-"):
                bits.append("+" + piece)
            else:
                bits.append(piece)
        return "".join(bits)

    def __repr__(self) -> str:
        return f"MultiPoly({self})"

    def to_json(self) -> list:
        return [
            {"exponents": list(e), "coefficient": str(c)}
            for e, c in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, data: list) -> "MultiPoly":
        return cls(
            {tuple(t["exponents"]): Fraction(t["coefficient"]) for t in data}
        )


def _mul_exps(e1: tuple[int, ...], e2: tuple[int, ...]) -> tuple[int, ...]:
    if len(e1) < len(e2):
        e1, e2 = e2, e1
    return tuple(
        a + b for a, b in itertools.zip_longest(e1, e2, fillvalue=0)
    )


# ---------------------------------------------------------------------------
# Factored rational functions


class FactoredRational:
    """num / product of factor^multiplicity, every factor with constant term 1.

    Cancellation is trial division of the numerator by stored factors, which
    yields lowest terms because the factors occurring here are irreducible
    linear forms.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: MultiPoly, den: Iterable[tuple[MultiPoly, int]] = ()):
        merged: dict[tuple, tuple[MultiPoly, int]] = {}
        for f, m in den:
            if m < 0:
                raise ValueError("multiplicities must be >= 0")
            if m == 0:
                continue
            c = f.constant_term()
            if not c:
                raise ValueError("denominator factors need a nonzero constant term")
            if c != 1:
                f = f * (1 / c)
                num = num * (1 / c) ** m  # keep the value; push constants up
            if not (f - MultiPoly.one()):
                continue
            k = f.key()
            if k in merged:
                merged[k] = (f, merged[k][1] + m)
            else:
                merged[k] = (f, m)
        self.num = num
        self.den = tuple(sorted(merged.values(), key=lambda fm: fm[0].key()))
        if not self.num:
            self.den = ()

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls) -> "FactoredRational":
        return cls(MultiPoly.zero())

    @classmethod
    def one(cls) -> "FactoredRational":
        return cls(MultiPoly.one())

    @classmethod
    def from_poly(cls, p: MultiPoly) -> "FactoredRational":
        return cls(p)

    def is_zero(self) -> bool:
        return not self.num

    # -- reduction ------------------------------------------------------------

    def reduced(self) -> "FactoredRational":
        num = self.num
        den = []
        for f, m in self.den:
            while m:
                q = num.divide_exact(f)
                if q is None:
                    break
                num = q
                m -= 1
            if m:
                den.append((f, m))
        out = FactoredRational.__new__(FactoredRational)
        out.num = num
        out.den = tuple(den) if num else ()
        return out

    # -- ring operations -------------------------------------------------------

    def __add__(self, other: "FactoredRational") -> "FactoredRational":
        return frat_sum([self, other])

    def __sub__(self, other: "FactoredRational") -> "FactoredRational":
        return frat_sum([self, -other])

    def __neg__(self) -> "FactoredRational":
        out = FactoredRational.__new__(FactoredRational)
        out.num = -self.num
        out.den = self.den
        return out

    def __mul__(self, other) -> "FactoredRational":
        if isinstance(other, (int, Fraction)):
            out = FactoredRational.__new__(FactoredRational)
            out.num = self.num * other
            out.den = self.den if out.num else ()
            return out
        den: dict[tuple, tuple[MultiPoly, int]] = {}
        for f, m in itertools.chain(self.den, other.den):
            k = f.key()
            den[k] = (f, den[k][1] + m) if k in den else (f, m)
        return FactoredRational(self.num * other.num, den.values()).reduced()

    __rmul__ = __mul__

    def mul_poly(self, p: MultiPoly) -> "FactoredRational":
        return FactoredRational(self.num * p, self.den).reduced()

    def mul_monomial(self, i: int, d: int) -> "FactoredRational":
        out = FactoredRational.__new__(FactoredRational)
        out.num = self.num.mul_monomial(i, d)
        out.den = self.den
        return out

    def over_factor(self, f: MultiPoly, m: int = 1) -> "FactoredRational":
        """Divide by factor^m (appends to the denominator, then cancels)."""
        return FactoredRational(self.num, self.den + ((f, m),)).reduced()

    def __eq__(self, other) -> bool:
        if not isinstance(other, FactoredRational):
            return NotImplemented
        a, b = self.reduced(), other.reduced()
        return a.num == b.num and a.den == b.den

    def equals_rational(self, other: "FactoredRational") -> bool:
        """Equality after clearing denominators (cross multiplication)."""
        left = self.num
        for f, m in other.den:
            for _ in range(m):
                left = left * f
        right = other.num
        for f, m in self.den:
            for _ in range(m):
                right = right * f
        return left == right

    def __hash__(self) -> int:
        r = self.reduced()
        return hash((r.num.key(), tuple((f.key(), m) for f, m in r.den)))

    # -- the shift and exact-degree operators ----------------------------------

    def shift_vars(self, j: int) -> "FactoredRational":
        out = FactoredRational.__new__(FactoredRational)
        out.num = self.num.shift_vars(j)
        out.den = tuple((f.shift_vars(j), m) for f, m in self.den)
        return out

    def derivative(self, i: int) -> "FactoredRational":
        """Partial derivative; the quotient rule over the factored denominator."""
        touch = [(f, m) for f, m in self.den if f.degree_in(i) > 0]
        rest = [(f, m) for f, m in self.den if f.degree_in(i) == 0]
        prod_touch = MultiPoly.one()
        for f, _ in touch:
            prod_touch = prod_touch * f
        num = self.num.derivative(i) * prod_touch
        for j, (fj, mj) in enumerate(touch):
            others = MultiPoly.one()
            for l, (fl, _) in enumerate(touch):
                if l != j:
                    others = others * fl
            num = num - self.num * (fj.derivative(i) * mj) * others
        den = [(f, m + 1) for f, m in touch] + rest
        return FactoredRational(num, den).reduced()

    def substitute_zero(self, i: int) -> "FactoredRational":
        num = self.num.substitute_zero(i)
        den = [(f.substitute_zero(i), m) for f, m in self.den]
        return FactoredRational(num, den)

    def delta_op(self, i: int, d: int) -> "FactoredRational":
        """Exact degree-d slice in x_i: scaled d-th derivative at x_i = 0,
        restored to degree d.  On polynomials this is the plain degree filter."""
        if d < 1:
            raise ValueError("the exact-degree operator needs d >= 1")
        f = self
        for _ in range(d):
            f = f.derivative(i)
        f = f.substitute_zero(i)
        num = (f.num * Fraction(1, math.factorial(d))).mul_monomial(i, d)
        return FactoredRational(num, f.den).reduced()

    def lambda_op(self, j: int) -> "FactoredRational":
        return self.shift_vars(j)

    def divide_by_monomial_exact(self, i: int, d: int) -> "FactoredRational":
        """Divide by x_i^d; raises NotDivisibleError if the numerator resists
        (the denominator is a series unit, so series divisibility is exactly
        numerator divisibility)."""
        if d == 0:
            return self
        out = FactoredRational.__new__(FactoredRational)
        out.num = self.num.divide_by_monomial(i, d)
        out.den = self.den
        return out

    # -- expansion --------------------------------------------------------------

    def taylor(self, N: int) -> MultiPoly:
        """Power-series expansion truncated to total degree <= N."""
        series = self.num.truncate_total(N)
        for f, m in self.den:
            s = MultiPoly.one() - f  # all terms of positive degree
            inv = MultiPoly.one()
            power = MultiPoly.one()
            for _ in range(N):
                power = (power * s).truncate_total(N)
                if not power:
                    break
                inv = inv + power
            for _ in range(m):
                series = (series * inv).truncate_total(N)
        return series

    def specialize_all(self) -> "UniRational":
        """Substitute t for every variable."""
        num = self.num.substitute_all_t()
        den = [(f.substitute_all_t(), m) for f, m in self.den]
        return UniRational(num, den).reduced()

    # -- rendering / json ---------------------------------------------------------

    def __str__(self) -> str:
        num = _render_factored_numerator(self.num)
        if not self.den:
            return num
        dens = []
        for f, m in sorted(self.den, key=lambda fm: _factor_display_key(fm[0])):
            piece = f"({f})"
            if m > 1:
                piece += f"^{m}"
            dens.append(piece)
        return f"{num}/({'*'.join(dens)})"

    def __repr__(self) -> str:
        return f"FactoredRational({self})"

    def to_json(self) -> dict:
        return {
            "numerator": self.num.to_json(),
            "denominator": [
                {"factor": f.to_json(), "power": m} for f, m in self.den
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "FactoredRational":
        return cls(
            MultiPoly.from_json(data["numerator"]),
            [
                (MultiPoly.from_json(d["factor"]), d["power"])
                for d in data["denominator"]
            ],
        )


def _factor_display_key(f: MultiPoly) -> tuple:
    vars_used = sorted(
        i + 1 for i in range(f.n_vars) if f.degree_in(i + 1) > 0
    )
    return (f.total_degree(), len(vars_used), tuple(vars_used), f.key())


def _render_factored_numerator(num: MultiPoly) -> str:
    """Pull the common monomial out of the numerator for readable output."""
    if not num:
        return "0"
    exps = list(num.terms)
    width = max(len(e) for e in exps)
    common = [min((e[i] if len(e) > i else 0) for e in exps) for i in range(width)]
    if not any(common):
        s = str(num)
        return f"({s})" if len(num.terms) > 1 else s
    rest = num
    for i, d in enumerate(common):
        if d:
            rest = rest.divide_by_monomial(i + 1, d)
    mono = "*".join(
        f"x{i + 1}" + (f"^{d}" if d > 1 else "") for i, d in enumerate(common) if d
    )
    if not (rest - MultiPoly.one()):
        return mono
    if len(rest.terms) == 1:
        return f"{mono}*{rest}"
    return f"{mono}*({rest})"


def frat_sum(items: Iterable[FactoredRational]) -> FactoredRational:
    """Sum over the least common multiple of the factored denominators."""
    items = [f for f in items if not f.is_zero()]
    if not items:
        return FactoredRational.zero()
    denmap: dict[tuple, tuple[MultiPoly, int]] = {}
    for f in items:
        for fac, m in f.den:
            k = fac.key()
            if k not in denmap or denmap[k][1] < m:
                denmap[k] = (fac, m)
    num = MultiPoly.zero()
    for f in items:
        have = {fac.key(): m for fac, m in f.den}
        part = f.num
        for k, (fac, M) in denmap.items():
            for _ in range(M - have.get(k, 0)):
                part = part * fac
        num = num + part
    return FactoredRational(num, denmap.values()).reduced()


# ---------------------------------------------------------------------------
# Univariate layer


class UniPoly:
    """Dense univariate polynomial over exact rationals."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls) -> "UniPoly":
        return cls()

    @classmethod
    def one(cls) -> "UniPoly":
        return cls([1])

    @classmethod
    def monomial(cls, d: int, c=1) -> "UniPoly":
        return cls([0] * d + [c])

    @classmethod
    def one_minus(cls, i: int) -> "UniPoly":
        """The factor 1 - i*t."""
        return cls([1, -i])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else -1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(
            [
                (self.coeffs[i] if i < len(self.coeffs) else 0)
                + (other.coeffs[i] if i < len(other.coeffs) else 0)
                for i in range(n)
            ]
        )

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other) -> "UniPoly":
        if isinstance(other, (int, Fraction)):
            return UniPoly([c * other for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if not other.coeffs:
            raise ZeroDivisionError
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(0, len(rem) - len(other.coeffs) + 1)
        d = other.degree
        lead = other.coeffs[-1]
        for i in range(len(rem) - 1, d - 1, -1):
            if not rem[i]:
                continue
            k = rem[i] / lead
            q[i - d] = k
            for j, b in enumerate(other.coeffs):
                rem[i - d + j] -= k * b
        return UniPoly(q), UniPoly(rem)

    def divide_exact(self, other: "UniPoly") -> Optional["UniPoly"]:
        q, r = self.divmod(other)
        return q if not r else None

    def __call__(self, x):
        acc = Fraction(0) if isinstance(x, (int, Fraction)) else x * 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def constant_term(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def valuation(self) -> int:
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return 0

    def shift_down(self, d: int) -> "UniPoly":
        if any(self.coeffs[i] for i in range(min(d, len(self.coeffs)))):
            raise NotDivisibleError(f"not divisible by t^{d}")
        return UniPoly(self.coeffs[d:])

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        bits = []
        for d, c in enumerate(self.coeffs):
            if not c:
                continue
            if d == 0:
                piece = str(c)
            else:
                var = "t" if d == 1 else f"t^{d}"
                if c == 1:
                    piece = var
                elif c == -1:
                    piece = f"-{var}"
                else:
                    piece = f"{c}{var}"
            if bits and not piece.startswith("-"):
                bits.append("+" + piece)
            else:
                bits.append(piece)
        return "".join(bits)

    def __repr__(self) -> str:
        return f"UniPoly({self})"


class UniRational:
    """Univariate rational function with a factored denominator whose factors
    all have constant term one."""

    __slots__ = ("num", "den")

    def __init__(self, num: UniPoly, den: Iterable[tuple[UniPoly, int]] = ()):
        merged: dict[tuple, tuple[UniPoly, int]] = {}
        for f, m in den:
            if m == 0:
                continue
            c = f.constant_term()
            if not c:
                raise ValueError("denominator factors need a nonzero constant term")
            if c != 1:
                f = f * (1 / c)
                num = num * (1 / c) ** m
            if f == UniPoly.one():
                continue
            k = f.coeffs
            merged[k] = (f, merged[k][1] + m) if k in merged else (f, m)
        self.num = num
        self.den = tuple(sorted(merged.values(), key=lambda fm: fm[0].coeffs))
        if not self.num:
            self.den = ()

    @classmethod
    def zero(cls) -> "UniRational":
        return cls(UniPoly.zero())

    def reduced(self) -> "UniRational":
        num = self.num
        den = []
        for f, m in self.den:
            while m:
                q = num.divide_exact(f)
                if q is None:
                    break
                num = q
                m -= 1
            if m:
                den.append((f, m))
        out = UniRational.__new__(UniRational)
        out.num = num
        out.den = tuple(den) if num else ()
        return out

    def __add__(self, other: "UniRational") -> "UniRational":
        denmap: dict[tuple, tuple[UniPoly, int]] = {}
        for f, m in itertools.chain(self.den, other.den):
            k = f.coeffs
            if k not in denmap or denmap[k][1] < m:
                denmap[k] = (f, m)
        num = UniPoly.zero()
        for side in (self, other):
            have = {f.coeffs: m for f, m in side.den}
            part = side.num
            for k, (f, M) in denmap.items():
                for _ in range(M - have.get(k, 0)):
                    part = part * f
            num = num + part
        return UniRational(num, denmap.values()).reduced()

    def __neg__(self) -> "UniRational":
        out = UniRational.__new__(UniRational)
        out.num = -self.num
        out.den = self.den
        return out

    def __sub__(self, other: "UniRational") -> "UniRational":
        return self + (-other)

    def __mul__(self, other) -> "UniRational":
        if isinstance(other, (int, Fraction)):
            return UniRational(self.num * other, self.den)
        den: dict[tuple, tuple[UniPoly, int]] = {}
        for f, m in itertools.chain(self.den, other.den):
            k = f.coeffs
            den[k] = (f, den[k][1] + m) if k in den else (f, m)
        return UniRational(self.num * other.num, den.values()).reduced()

    __rmul__ = __mul__

    def over_factor(self, f: UniPoly, m: int = 1) -> "UniRational":
        return UniRational(self.num, self.den + ((f, m),)).reduced()

    def __eq__(self, other) -> bool:
        if not isinstance(other, UniRational):
            return NotImplemented
        left = self.num
        for f, m in other.den:
            for _ in range(m):
                left = left * f
        right = other.num
        for f, m in self.den:
            for _ in range(m):
                right = right * f
        return left == right

    def __hash__(self) -> int:
        r = self.reduced()
        return hash((r.num.coeffs, tuple((f.coeffs, m) for f, m in r.den)))

    def den_expanded(self) -> UniPoly:
        out = UniPoly.one()
        for f, m in self.den:
            for _ in range(m):
                out = out * f
        return out

    def series_coeffs(self, n: int) -> list[Fraction]:
        """Power-series coefficients a_0..a_n from the denominator recurrence."""
        den = self.den_expanded()
        d0 = den.constant_term()
        out = []
        for m in range(n + 1):
            val = self.num.coeffs[m] if m < len(self.num.coeffs) else Fraction(0)
            for j in range(1, min(m, den.degree) + 1):
                val -= den.coeffs[j] * out[m - j]
            out.append(val / d0)
        return out

    def linear_factor_profile(self) -> dict[int, int]:
        """Multiplicity of each factor (1 - i t); other factors raise."""
        out: dict[int, int] = {}
        for f, m in self.den:
            if f.degree != 1:
                raise ValueError(f"non-linear denominator factor {f}")
            i = -f.coeffs[1]
            if f.coeffs[0] != 1 or i != int(i) or i <= 0:
                raise ValueError(f"factor {f} is not of the form 1-i*t")
            out[int(i)] = out.get(int(i), 0) + m
        return out

    def __str__(self) -> str:
        v = self.num.valuation() if self.num else 0
        body = UniPoly(self.num.coeffs[v:]) if self.num else self.num
        if not self.num:
            nums = "0"
        else:
            pieces = []
            if v:
                pieces.append("t" if v == 1 else f"t^{v}")
            if body == UniPoly.one():
                if not pieces:
                    pieces.append("1")
            elif len([c for c in body.coeffs if c]) == 1 and not pieces:
                pieces.append(str(body))
            else:
                pieces.append(f"({body})")
            nums = "*".join(pieces)
        if not self.den:
            return nums
        dens = []
        for f, m in sorted(self.den, key=lambda fm: fm[0].coeffs[1:], reverse=True):
            piece = f"({f})"
            if m > 1:
                piece += f"^{m}"
            dens.append(piece)
        return f"{nums}/({''.join(dens)})"

    def __repr__(self) -> str:
        return f"UniRational({self})"


# ---------------------------------------------------------------------------
# Numeric roots


def polish_root(coeffs, z, steps: int = 8):
    """A few Newton steps at the working precision."""
    deriv = [c * (len(coeffs) - 1 - i) for i, c in enumerate(coeffs[:-1])]
    for _ in range(steps):
        pv = _horner(coeffs, z)
        dv = _horner(deriv, z)
        if dv == 0:
            break
        step = pv / dv
        z = z - step
        if abs(step) < mpmath.mpf(10) ** (-mpmath.mp.dps + 4):
            break
    return z


def _horner(coeffs, z):
    acc = coeffs[0] * 0
    for c in coeffs:
        acc = acc * z + c
    return acc


def roots_numeric(
    p: UniPoly,
    residual_target: float = 1e-10,
    max_rounds: int = 4,
) -> list[complex]:
    """Simultaneous (Aberth) root iteration with Newton polishing.

    Residuals are |p(z)| / |leading coefficient|, evaluated at the working
    precision from the exact coefficients.  Raises NoConvergenceError with
    the partial results attached if the target is missed.
    """
    if p.degree < 1:
        raise ValueError("need degree >= 1")
    n = p.degree
    digits = max(abs(c.numerator).bit_length() + abs(c.denominator).bit_length()
                 for c in p.coeffs if c)
    dps = 30 + n + digits // 3
    last: list = []
    for _ in range(max_rounds):
        with mpmath.workdps(dps):
            coeffs = [mpmath.mpf(c.numerator) / mpmath.mpf(c.denominator)
                      for c in reversed(p.coeffs)]  # descending
            roots = _aberth(coeffs, n)
            roots = [polish_root(coeffs, z, steps=12) for z in roots]
            lead = abs(coeffs[0])
            resid = [float(abs(_horner(coeffs, z)) / lead) for z in roots]
            last = sorted(
                (complex(z.real, z.imag) for z in roots),
                key=lambda z: (z.real, z.imag),
            )
            if max(resid) < residual_target:
                return last
        dps *= 2
    raise NoConvergenceError(
        f"root residuals missed {residual_target}", last
    )


def residual(p: UniPoly, z: complex, dps: int = 60) -> float:
    with mpmath.workdps(dps):
        coeffs = [mpmath.mpf(c.numerator) / mpmath.mpf(c.denominator)
                  for c in reversed(p.coeffs)]
        zz = mpmath.mpc(z)
        return float(abs(_horner(coeffs, zz)) / abs(coeffs[0]))


def _aberth(coeffs, n, max_iter: int = 400):
    """Aberth-Ehrlich simultaneous iteration on a descending coefficient list."""
    deriv = [c * (n - i) for i, c in enumerate(coeffs[:-1])]
    # Fujiwara-style bound for the initial circle
    bound = 2 * max(
        abs(coeffs[k] / coeffs[0]) ** mpmath.mpf(1 / k)
        for k in range(1, n + 1)
        if coeffs[k] != 0
    )
    roots = [
        bound * mpmath.exp(mpmath.mpc(0, 2 * mpmath.pi * k / n + 0.4))
        for k in range(n)
    ]
    tol = mpmath.mpf(10) ** (-mpmath.mp.dps + 6)
    for _ in range(max_iter):
        moved = mpmath.mpf(0)
        for i in range(n):
            z = roots[i]
            pv = _horner(coeffs, z)
            if pv == 0:
                continue
            dv = _horner(deriv, z)
            newton = pv / dv if dv != 0 else mpmath.mpc(1)
            s = mpmath.mpc(0)
            for j in range(n):
                if j != i:
                    s += 1 / (z - roots[j])
            denom = 1 - newton * s
            step = newton / denom if denom != 0 else newton
            roots[i] = z - step
            moved = max(moved, abs(step))
        if moved < tol:
            break
    return roots
