"""Fixed-width chain generating functions and their specializations.

``f_width(A, alpha, k)`` is the exact rational function whose Taylor
coefficient at x1^q1 ... xk^qk counts the saturated chains from alpha ending
at the width-k composition (q1, ..., qk).  It is computed by clearing the
width-k terms out of a linear fixed point:

* insertion on the left contributes the shifted width-(k-1) function,
* appending on the right (only in the L/R/U poset) contributes the plain
  width-(k-1) function, minus one monomial when alpha is all-ones, because
  appending to an all-ones composition duplicates the left insertion,
* the bounded insert/split family contributes, for each position i and split
  size v, the shifted function with its low x_{i-1}-degrees removed and the
  monomial x_i^v / x_{i-1}^{v-1} applied,
* growing a part multiplies by x_1 + ... + x_k, which is the fixed point.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from typing import Optional

from .composition import Composition
from .operators import Alphabet
from .polyfrac import (
    FactoredRational,
    MultiPoly,
    NotDivisibleError,
    UniPoly,
    UniRational,
    frat_sum,
)


class StructureViolationError(ArithmeticError):
    """A computed function does not fit its proven denominator shape."""


class NonLinearFactorError(ArithmeticError):
    """A denominator factor is not of the form 1 - sum of variables."""


_CACHE: dict[tuple, FactoredRational] = {}
_CACHE_LOCK = threading.Lock()


def _v_monomial(alpha: Composition) -> MultiPoly:
    return MultiPoly.monomial(alpha.parts)


def _all_vars_monomial(k: int) -> MultiPoly:
    return MultiPoly.monomial((1,) * k)


def f_width(A: Alphabet, alpha: Composition, k: int) -> FactoredRational:
    """Generating function for saturated chains of endpoint width k from alpha.

    Defined for the L/R/U poset and the bounded insertion/split posets; the
    unbounded limit has no rational width functions and is rejected.
    """
    if A.kind == "Sinf":
        raise ValueError("width functions of the unbounded poset are not rational")
    if A.kind == "Uonly":
        raise ValueError("the grow-only poset fixes the start width; unsupported")
    if k < 0:
        raise ValueError("width must be >= 0")
    key = (A, alpha, k)
    with _CACHE_LOCK:
        if key in _CACHE:
            return _CACHE[key]
    r = alpha.width
    if k < r:
        out = FactoredRational.zero()
    elif k == r:
        den = [(MultiPoly.one_minus_vars(range(1, r + 1)), 1)] if r else []
        out = FactoredRational(_v_monomial(alpha), den)
    else:
        prev = f_width(A, alpha, k - 1)
        terms = [prev.lambda_op(1).mul_monomial(1, 1)]
        if A.kind == "N":
            terms.append(prev.mul_monomial(k, 1))
            if alpha.is_all_ones():
                terms.append(FactoredRational(-_all_vars_monomial(k)))
        else:
            bound = A.d - 1 if A.kind == "S" else 1
            for i in range(2, k + 1):
                removed = prev
                for v in range(1, bound + 1):
                    removed = removed - prev.delta_op(i - 1, v)
                    piece = (
                        removed.lambda_op(i)
                        .mul_monomial(i, v)
                        .divide_by_monomial_exact(i - 1, v - 1)
                    )
                    terms.append(piece)
        out = frat_sum(terms).over_factor(
            MultiPoly.one_minus_vars(range(1, k + 1))
        )
    with _CACHE_LOCK:
        _CACHE[key] = out
    return out


def structure_check(A: Alphabet, alpha: Composition, k: int) -> MultiPoly:
    """For the L/R/U poset: verify the denominator divides the product of the
    contiguous-window forms and return the residual numerator polynomial."""
    if A.kind != "N":
        raise ValueError("the window structure holds in the L/R/U poset")
    f = f_width(A, alpha, k)
    r = max(alpha.width, 1)
    target: dict[tuple, tuple[MultiPoly, int]] = {}
    for i in range(1, k + 1):
        for j in range(i + r - 1, k + 1):
            fac = MultiPoly.one_minus_vars(range(i, j + 1))
            key = fac.key()
            if key in target:
                target[key] = (fac, target[key][1] + 1)
            else:
                target[key] = (fac, 1)
    have = {fac.key(): m for fac, m in f.den}
    for key, m in have.items():
        if target.get(key, (None, 0))[1] < m:
            raise StructureViolationError(
                f"denominator factor outside the window product for {alpha}, k={k}"
            )
    tilde = f.num
    for key, (fac, m) in target.items():
        for _ in range(m - have.get(key, 0)):
            tilde = tilde * fac
    try:
        for i in range(1, k + 1):
            tilde = tilde.divide_by_monomial(i, 1)
    except NotDivisibleError as exc:
        raise StructureViolationError(str(exc)) from exc
    return tilde


def denominator_profile(
    A: Alphabet, alpha: Composition, k: int
) -> dict[frozenset[int], int]:
    """Exponent of each linear form 1 - sum_{i in S} x_i in the denominator,
    for every nonempty S inside {1..k}.  Raises if a factor is not linear."""
    f = f_width(A, alpha, k)
    out: dict[frozenset[int], int] = {}
    for size in range(1, k + 1):
        _fill_subsets(out, k, size)
    for fac, m in f.den:
        S = _linear_form_support(fac)
        out[S] = out.get(S, 0) + m
    return out


def _fill_subsets(out: dict, k: int, size: int) -> None:
    import itertools

    for S in itertools.combinations(range(1, k + 1), size):
        out.setdefault(frozenset(S), 0)


def _linear_form_support(fac: MultiPoly) -> frozenset[int]:
    support = set()
    for e, c in fac.terms.items():
        if e == ():
            if c != 1:
                raise NonLinearFactorError(f"factor {fac} has constant {c}")
            continue
        if sum(e) != 1 or c != -1:
            raise NonLinearFactorError(f"factor {fac} is not 1 - sum of variables")
        support.add(len(e))
    if not support:
        raise NonLinearFactorError("trivial factor")
    return frozenset(support)


# ---------------------------------------------------------------------------
# Univariate specializations


def _l_recurrence_lru(alpha: Composition, k: int) -> UniRational:
    """Diagonal specialization for the L/R/U poset by its own univariate
    recurrence; valid for every k, far beyond what the multivariate route
    can reach."""
    r = alpha.width
    N = alpha.weight
    if k < r:
        return UniRational.zero()
    cur = UniRational(UniPoly.monomial(N), [(UniPoly.one_minus(r), 1)] if r else [])
    for j in range(r + 1, k + 1):
        num = 2 * UniPoly.monomial(1)
        cur = cur * UniRational(num)
        if alpha.is_all_ones():
            cur = cur - UniRational(UniPoly.monomial(j))
        cur = cur.over_factor(UniPoly.one_minus(j))
    return cur


def L_width(A: Alphabet, alpha: Composition, k: int) -> UniRational:
    """Counting series by chain length: substitute t for every variable.

    The L/R/U poset uses its direct univariate recurrence (and the two
    routes are checked against each other for small widths in the tests);
    the other posets specialize the multivariate function.
    """
    if A.kind == "N":
        return _l_recurrence_lru(alpha, k)
    return f_width(A, alpha, k).specialize_all()


def a_nk(A: Alphabet, alpha: Composition, k: int, n: int) -> int:
    """Number of saturated chains of width k from alpha with endpoint weight n."""
    coeffs = L_width(A, alpha, k).series_coeffs(n)
    val = coeffs[n]
    if val.denominator != 1:
        raise ArithmeticError(f"non-integer chain count {val}")
    return int(val)


def closed_form_L_not_all_ones(alpha: Composition, k: int) -> UniRational:
    """2^(k-r) t^(N+k-r) over the falling product of (1 - i t), i = r..k."""
    r = alpha.width
    N = alpha.weight
    if alpha.is_all_ones():
        raise ValueError("closed form requires a part of size >= 2")
    if k < r:
        raise ValueError("width below the start width")
    num = UniPoly.monomial(N + k - r, Fraction(2) ** (k - r))
    return UniRational(num, [(UniPoly.one_minus(i), 1) for i in range(r, k + 1)])


def D_poly(r: int, k: int) -> UniPoly:
    """Numerator family of the all-ones diagonal series: D_r = 1 and
    D_k = 2 D_{k-1} - prod_{i=r}^{k-1} (1 - i t)."""
    if not (1 <= r <= k):
        raise ValueError("need 1 <= r <= k")
    D = UniPoly.one()
    prod = UniPoly.one()
    for j in range(r, k):
        prod = prod * UniPoly.one_minus(j) if j > r else UniPoly.one_minus(r)
        # prod now equals the product over i = r..j
        D = 2 * D - prod
    return D


def L_all_ones_closed(r: int, k: int) -> UniRational:
    """t^k D_k over the falling product of (1 - i t), i = r..k."""
    return UniRational(
        UniPoly.monomial(k) * D_poly(r, k),
        [(UniPoly.one_minus(i), 1) for i in range(r, k + 1)],
    )


def asymptotic_constant(alpha: Composition, k: int) -> Fraction:
    """Constant C with chain counts growing like C * k^n.

    All-ones starts evaluate the D polynomial at 1/k; other starts use the
    closed form 2^(k-r) / (k^N (k-r)!).
    """
    r = alpha.width
    N = alpha.weight
    if k <= r:
        raise ValueError("need k > start width for a unique dominant pole")
    if alpha.is_all_ones():
        val = D_poly(r, k)(Fraction(1, k))
        return val / (math.factorial(k - r) * Fraction(k) ** r)
    return Fraction(2) ** (k - r) / (Fraction(k) ** N * math.factorial(k - r))


def asymptotic_check(
    alpha: Composition, k: int, n_max: int
) -> list[tuple[int, float]]:
    """Relative errors |a_n / (C k^n) - 1| for n up to n_max."""
    C = asymptotic_constant(alpha, k)
    series = L_width(Alphabet("N"), alpha, k).series_coeffs(n_max)
    out = []
    for n in range(alpha.weight, n_max + 1):
        approx = C * Fraction(k) ** n
        err = abs(series[n] / approx - 1)
        out.append((n, float(err)))
    return out


# ---------------------------------------------------------------------------
# Shadow series


def kappa_op(p: MultiPoly) -> MultiPoly:
    """Sort every monomial's exponent vector decreasingly, merging
    coefficients; idempotent and coefficient-sum preserving."""
    return p.kappa()


def shadow_series(
    A: Alphabet, alpha: Composition, k: int, N: int
) -> MultiPoly:
    """Truncated series counting partition-order chains with multiplicity:
    the sorted image of the width-k chain series.  The start must reorder to
    a unique composition, so alpha is empty or has all parts equal."""
    if alpha.parts and len(set(alpha.parts)) != 1:
        raise ValueError("start must be empty or have all parts equal")
    return kappa_op(f_width(A, alpha, k).taylor(N))
