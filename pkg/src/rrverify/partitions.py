"""Partitions, restricted multipartitions and their 2-residue statistic.

Partitions are tuples of positive integers in weakly decreasing order;
multipartitions are tuples of partitions.  The family ``Lambda^{a,m}`` is
stored in its strict (conjugate) form: every component is strict and

    pi^(i)_1 <= len(pi^(i+1)) + [i == a]      for 1 <= i < m,

with offsets ``t_1 = ... = t_a = 0`` and ``t_{a+1} = ... = t_m = 1``.
"""

from __future__ import annotations

import os
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, NamedTuple, Sequence

from . import _kernel as K
from .errors import BadParameters, BudgetExceeded, NotStrict
from .qseries import Monomial, QSeries, poch_finite

Partition = tuple
Multipartition = tuple

DEFAULT_CEILINGS = {1: 60, 2: 30, 3: 18, 4: 14}
FALLBACK_CEILING = 10
BUDGET_ENV = "RRVERIFY_BUDGET"


class ResidueProfile(NamedTuple):
    c0: int
    c1: int
    omega: int


def as_partition(parts: Iterable[int]) -> Partition:
    lam = tuple(int(p) for p in parts)
    if any(p <= 0 for p in lam) or any(x < y for x, y in zip(lam, lam[1:])):
        raise BadParameters(f"not a partition: {lam}")
    return lam


def as_multipartition(comps: Iterable[Iterable[int]]) -> Multipartition:
    pi = tuple(as_partition(c) for c in comps)
    if not pi:
        raise BadParameters("a multipartition needs at least one component")
    return pi


# plain partitions

def partitions(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of n with parts at most ``max_part``, in reverse lex order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def strict_partitions(n: int, max_part: int | None = None) -> Iterator[Partition]:
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in strict_partitions(n - first, first - 1):
            yield (first,) + rest


def multipartitions(n: int, m: int) -> Iterator[Multipartition]:
    """All m-multipartitions of n."""
    if m == 1:
        for lam in partitions(n):
            yield (lam,)
        return
    for size in range(n + 1):
        for lam in partitions(size):
            for rest in multipartitions(n - size, m - 1):
                yield (lam,) + rest


def conjugate(lam: Sequence[int]) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > j) for j in range(lam[0]))


def is_strict(lam: Sequence[int]) -> bool:
    return all(x > y for x, y in zip(lam, lam[1:]))


def is_e_restricted(lam: Sequence[int], e: int) -> bool:
    """Successive differences (with a trailing 0) are all below e."""
    padded = tuple(lam) + (0,)
    return all(x - y < e for x, y in zip(padded, padded[1:]))


def alt_sum(lam: Sequence[int]) -> int:
    return sum(p if i % 2 == 0 else -p for i, p in enumerate(lam))


def _first(lam: Sequence[int]) -> int:
    return lam[0] if lam else 0


def _require_strict(lam):
    if not is_strict(lam):
        raise NotStrict(f"partition {tuple(lam)} has repeated parts")


def delta_sigma(pi: Sequence[int]) -> tuple[Partition, Partition]:
    """Split a strict partition as staircase plus conjugate of sigma.

    >>> delta_sigma((9, 7, 6, 3))
    ((4, 3, 2, 1), (4, 4, 3, 3, 1))
    """
    _require_strict(pi)
    ell = len(pi)
    delta = tuple(range(ell, 0, -1))
    excess = tuple(p - d for p, d in zip(pi, delta) if p - d > 0)
    return delta, conjugate(excess)


def omega_strict_formula(pi: Sequence[int]) -> int:
    """2-residue weight of a strict partition read off from sigma."""
    _require_strict(pi)
    ell = len(pi)
    if ell == 0:
        return 0
    _, sigma = delta_sigma(pi)
    sign = 1 if ell % 2 == 1 else -1
    return sign * ((ell + 1) // 2 - alt_sum(sigma))


# restriction and residues

def _normalize_a(a: int, m: int) -> int:
    if m < 1:
        raise BadParameters("m must be at least 1")
    if a < 0 or a > m:
        raise BadParameters(f"need 0 <= a <= m, got a={a}, m={m}")
    return m if a == 0 else a


def offsets(a: int, m: int) -> tuple[int, ...]:
    """Charge offsets t_s: 0 for the first a components, 1 afterwards."""
    a = _normalize_a(a, m)
    return tuple(0 if s < a else 1 for s in range(m))


def is_restricted(pi: Sequence[Sequence[int]], a: int) -> bool:
    """Membership in Lambda^{a,m} (strict form), m = number of components."""
    m = len(pi)
    a = _normalize_a(a, m)
    if not all(is_strict(c) for c in pi):
        return False
    for i in range(m - 1):
        bonus = 1 if i + 1 == a else 0
        if _first(pi[i]) > len(pi[i + 1]) + bonus:
            return False
    return True


def is_multi_e_restricted(lam: Sequence[Sequence[int]], e: int,
                          t: Sequence[int]) -> bool:
    """(e, t)-restriction in the row form: every component e-restricted and
    len(lam^(i)) + t_i <= lam^(i+1)_1 + t_{i+1}."""
    if len(t) != len(lam):
        raise BadParameters("offset vector length differs from component count")
    if not all(is_e_restricted(c, e) for c in lam):
        return False
    return all(len(lam[i]) + t[i] <= _first(lam[i + 1]) + t[i + 1]
               for i in range(len(lam) - 1))


def _component_counts(lam: Sequence[int], t: int, p: int) -> list:
    counts = [0] * p
    for i, row in enumerate(lam, start=1):
        for j in range(1, row + 1):
            counts[(j - i + t) % p] += 1
    return counts


def residue_counts(pi: Sequence[Sequence[int]], a: int, p: int = 2) -> list:
    """Number of nodes of each residue (j - i + t_s) mod p."""
    if p < 2:
        raise BadParameters("p must be at least 2")
    t = offsets(a, len(pi))
    total = [0] * p
    for comp, ts in zip(pi, t):
        for r, c in enumerate(_component_counts(comp, ts, p)):
            total[r] += c
    return total


def residue_profile(pi: Sequence[Sequence[int]], a: int) -> ResidueProfile:
    c0, c1 = residue_counts(pi, a, 2)
    return ResidueProfile(c0, c1, c0 - c1)


# enumeration of Lambda^{a,m}

def enumeration_ceiling(m: int, budget: int | None = None) -> int:
    """Largest n the enumerator accepts for m components.

    An explicit ``budget`` wins, then the RRVERIFY_BUDGET environment
    variable, then the per-m defaults.
    """
    if budget is not None:
        return int(budget)
    env = os.environ.get(BUDGET_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise BadParameters(f"{BUDGET_ENV} must be an integer, got {env!r}")
    return DEFAULT_CEILINGS.get(m, FALLBACK_CEILING)


def _check_budget(m: int, n: int, budget: int | None):
    ceiling = enumeration_ceiling(m, budget)
    if n > ceiling:
        raise BudgetExceeded(
            f"enumeration to n={n} with m={m} exceeds the ceiling {ceiling}; "
            f"raise it with --budget or {BUDGET_ENV}")


@lru_cache(maxsize=None)
def _strict_by_size(n: int) -> tuple:
    return tuple(tuple(strict_partitions(k)) for k in range(n + 1))


def iter_lambda(a: int, m: int, max_n: int, exact: bool = False,
                budget: int | None = None) -> Iterator[Multipartition]:
    """Yield every member of Lambda^{a,m} of size <= max_n (or == max_n).

    Candidates are all m-tuples of strict partitions; each is filtered
    through :func:`is_restricted`.
    """
    a = _normalize_a(a, m)
    _check_budget(m, max_n, budget)
    by_size = _strict_by_size(max_n)

    def rec(i, room):
        if i == m:
            yield ()
            return
        for size in range(room + 1):
            for comp in by_size[size]:
                for rest in rec(i + 1, room - size):
                    yield (comp,) + rest

    for pi in rec(0, max_n):
        if exact and sum(map(sum, pi)) != max_n:
            continue
        if is_restricted(pi, a):
            yield pi


def count_lambda(a: int, m: int, n: int, omega: int | None = None,
                 budget: int | None = None) -> int:
    """|Lambda^{a,m}(n)|, or its omega-slice when ``omega`` is given."""
    if n < 0:
        return 0
    total = 0
    for pi in iter_lambda(a, m, n, exact=True, budget=budget):
        if omega is None or residue_profile(pi, a).omega == omega:
            total += 1
    return total


def lambda_counts(a: int, m: int, max_n: int, budget: int | None = None) -> dict:
    """``{(n, omega): count}`` over Lambda^{a,m}(n) for n <= max_n."""
    out: dict = {}
    for pi in iter_lambda(a, m, max_n, budget=budget):
        key = (sum(map(sum, pi)), residue_profile(pi, a).omega)
        out[key] = out.get(key, 0) + 1
    return out


def gf_lambda(a: int, m: int, order: int, budget: int | None = None) -> QSeries:
    """sum over Lambda^{a,m} of x^omega q^|pi|, truncated at q^order."""
    counts = lambda_counts(a, m, order, budget)
    return QSeries({(n, w): c for (n, w), c in counts.items()}, order)


def count_table(a: int, m: int, max_n: int, by_omega: bool = False,
                budget: int | None = None) -> list[dict]:
    """Rows ``{"n", "count"}`` or ``{"n", "omega", "count"}``."""
    counts = lambda_counts(a, m, max_n, budget)
    if by_omega:
        return [{"n": n, "omega": w, "count": c} for (n, w), c in sorted(counts.items())]
    totals = [0] * (max_n + 1)
    for (n, _), c in counts.items():
        totals[n] += c
    return [{"n": n, "count": c} for n, c in enumerate(totals)]


# odd/even-indexed statistics

def odd_part_positions(lam: Sequence[int]) -> tuple[int, int]:
    """(odd parts at odd positions, odd parts at even positions), 1-based."""
    i = sum(1 for pos, p in enumerate(lam) if pos % 2 == 0 and p % 2)
    j = sum(1 for pos, p in enumerate(lam) if pos % 2 == 1 and p % 2)
    return i, j


def _distinct_parts(N: int) -> Iterator[Partition]:
    for size in range(N + 1):
        for combo in combinations(range(N, 0, -1), size):
            yield combo


def d_count(N: int, i: int, j: int, n: int) -> int:
    """Partitions of n into distinct parts <= N with the given odd-part split."""
    if min(N, i, j, n) < 0:
        raise BadParameters("d_count arguments must be nonnegative")
    return sum(1 for lam in _distinct_parts(N)
               if sum(lam) == n and odd_part_positions(lam) == (i, j))


def _f_brute(N: int, order: int) -> QSeries:
    terms: dict = {}
    for lam in _distinct_parts(N):
        size = sum(lam)
        if size > order:
            continue
        i, j = odd_part_positions(lam)
        terms[(size, i - j)] = terms.get((size, i - j), 0) + 1
    return QSeries(terms, order)


def _b_closed(N: int, k: int, order: int) -> QSeries:
    half = N // 2
    dense = K.shifted(K.gauss_dense(N, half + k, 2, order), 2 * k * k - k, order)
    return K.to_series(dense, order)


def B_series(N: int, k: int, order: int) -> tuple[QSeries, QSeries]:
    """(brute force, closed form) for sum_{j,n} d_N(j+k, j, n) q^n."""
    if N < 0:
        raise BadParameters("N must be nonnegative")
    return _f_brute(N, order).x_slice(k), _b_closed(N, k, order)


def f_series(N: int, order: int, method: str = "closed") -> QSeries:
    """sum_k B_N(k, q) x^k, from the closed form or by brute force."""
    if N < 0:
        raise BadParameters("N must be nonnegative")
    if method == "brute":
        return _f_brute(N, order)
    if method != "closed":
        raise BadParameters(f"unknown method {method!r}")
    half = N // 2
    out = QSeries.zero(order)
    for k in range(-half, N - half + 1):
        out = out + _b_closed(N, k, order).shift(0, k)
    return out


def _g_brute(N: int, order: int) -> QSeries:
    terms: dict = {}

    def rec(max_part, room, size, alt, sign):
        key = (size, alt)
        terms[key] = terms.get(key, 0) + 1
        for p in range(min(max_part, room), 0, -1):
            rec(p, room - p, size + p, alt + sign * p, -sign)

    rec(N, order, 0, 0, 1)
    return QSeries(terms, order)


def _inv_q2(N: int, order: int) -> QSeries:
    return K.to_series(K.inv_poch(2, 2, N, order), order)


def g_closed_a(N: int, order: int) -> QSeries:
    half, v = divmod(N, 2)
    total = QSeries.zero(order)
    for i in range(half + 1):
        gauss = K.to_series(K.gauss_dense(half, i, 4, order), order)
        term = gauss.shift(2 * i, 2 * i)
        term = term * poch_finite(Monomial(-1, 1, 1), 4, half - i + v, order)
        term = term * poch_finite(Monomial(-1, -1, 1), 4, i, order)
        total = total + term
    return total * _inv_q2(N, order)


def g_closed_b(N: int, order: int) -> QSeries:
    total = QSeries.zero(order)
    for j in range(N + 1):
        gauss = K.to_series(K.gauss_dense(N, j, 2, order), order)
        total = total + gauss.shift(j, j)
    return total * _inv_q2(N, order)


def g_series(N: int, order: int) -> tuple[QSeries, QSeries, QSeries]:
    """(brute, closed form A, closed form B) for sum x^{|l|_a} q^{|l|}, parts <= N."""
    if N < 0:
        raise BadParameters("N must be nonnegative")
    return _g_brute(N, order), g_closed_a(N, order), g_closed_b(N, order)


def rogers_szego_sides(n: int) -> tuple[QSeries, QSeries]:
    """Both finite forms of sum_j x^j [n choose j]_q as exact polynomials."""
    if n < 0:
        raise BadParameters("n must be nonnegative")
    order = n * n + n + 1
    lhs = QSeries.zero(order)
    for j in range(n + 1):
        lhs = lhs + K.to_series(K.gauss_dense(n, j, 1, order), order).shift(0, j)
    half, up = n // 2, (n + 1) // 2
    rhs = QSeries.zero(order)
    for r in range(half + 1):
        term = K.to_series(K.gauss_dense(half, r, 2, order), order).shift(0, 2 * r)
        term = term * poch_finite(Monomial(-1, -1, 1), 2, r, order)
        term = term * poch_finite(Monomial(-1, 1, 0), 2, up - r, order)
        rhs = rhs + term
    return lhs, rhs


def rogers_szego_check(n: int, order: int | None = None) -> bool:
    lhs, rhs = rogers_szego_sides(n)
    if order is not None:
        lhs, rhs = lhs.truncate(order), rhs.truncate(order)
    return lhs == rhs
