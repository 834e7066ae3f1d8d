"""Gaussian polynomials and the q-binomial multisums.

Most sums here are chains

    sum_{N_1..N_b >= 0} q^{sum binom(N_i + k_i, 2)} F(N_b) / (q;q)_{N_1}
        * prod_i [N_i + s_i choose N_{i+1}]

with per-link shifts ``s_i`` in {0, 1}.  They are evaluated by a transfer
pass from the last index to the first, so the cost is quadratic in the
index bound instead of exponential in the chain length.  A direct
tuple-by-tuple evaluator is kept as an oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb, isqrt
from typing import Callable, Sequence

from . import _kernel as K
from .errors import BadParameters
from .partitions import f_series, g_closed_b
from .qseries import Monomial, QSeries, poch_finite, poch_multi, q


# Gaussian polynomials

@dataclass(frozen=True)
class GaussPoly:
    """[N choose M] in the variable q^base_step, stored densely in q."""

    N: int
    M: int
    base_step: int
    coeffs: tuple

    @property
    def degree(self) -> int | None:
        return len(self.coeffs) - 1 if self.coeffs else None

    def series(self, order: int) -> QSeries:
        return K.to_series(list(self.coeffs[:order + 1]), order)

    @property
    def value(self) -> QSeries:
        return self.series(max(len(self.coeffs) - 1, 0))

    def is_zero(self) -> bool:
        return not self.coeffs


def gauss_binom(N: int, M: int, r: int = 1) -> GaussPoly:
    """Gaussian polynomial [N choose M]_{q^r}; zero outside 0 <= M <= N."""
    if r < 1:
        raise BadParameters("base step must be positive")
    base = K.gauss(N, M) if N >= 0 else ()
    if not base:
        return GaussPoly(N, M, r, ())
    return GaussPoly(N, M, r, tuple(K.dilate(base, r, r * (len(base) - 1))))


# weight families

@dataclass(frozen=True)
class SeriesFamily:
    """A rule N -> F(N) with a declared lower bound on the q-valuation."""

    name: str
    func: Callable[[int, int], QSeries]
    low: Callable[[int], int] = field(default=lambda N: 0)

    def __call__(self, N: int, order: int) -> QSeries:
        return self.func(N, order)

    def dense(self, N: int, n: int) -> list:
        return K.from_series(self.func(N, n), n)


ONE = SeriesFamily("one", lambda N, order: QSeries.one(order))
ZERO = SeriesFamily("zero", lambda N, order: QSeries.zero(order), lambda N: 10**9)
TRIANGULAR = SeriesFamily(
    "triangular",
    lambda N, order: K.to_series(K.monomial(comb(N + 1, 2), order), order),
    lambda N: comb(N + 1, 2),
)
FAMILIES = {f.name: f for f in (ONE, ZERO, TRIANGULAR)}


def _index_bound(k: int, n: int, slack: int = 0) -> int:
    # largest N with binom(N + k, 2) <= n
    N = 0
    while comb(N + 1 + k, 2) <= n:
        N += 1
    return N + slack


@lru_cache(maxsize=None)
def _inv_qq(N: int, n: int) -> tuple:
    if N == 0:
        return (1,) + (0,) * n
    prev = list(_inv_qq(N - 1, n))
    for k in range(N, n + 1):
        prev[k] += prev[k - N]
    return tuple(prev)


def _check_chain(ks: Sequence[int], shifts: Sequence[int] | None):
    ks = tuple(int(k) for k in ks)
    if not ks:
        raise BadParameters("a chain needs at least one index")
    if any(k < 0 for k in ks):
        raise BadParameters("k entries must be nonnegative")
    shifts = tuple(shifts) if shifts is not None else (0,) * (len(ks) - 1)
    if len(shifts) != len(ks) - 1:
        raise BadParameters("need one shift per link")
    return ks, shifts


def chain_sum(ks: Sequence[int], order: int, shifts: Sequence[int] | None = None,
              family: SeriesFamily = ONE, slack: int = 0) -> QSeries:
    """Evaluate the shifted q-binomial chain (see module docstring)."""
    ks, shifts = _check_chain(ks, shifts)
    n = order
    bounds = [_index_bound(k, n, slack) for k in ks]

    kb = ks[-1]
    T: list = []
    for N in range(bounds[-1] + 1):
        w = comb(N + kb, 2)
        room = n - w
        if room < 0 or (not slack and room < family.low(N)):
            T.append(None)
            continue
        T.append(K.shifted(family.dense(N, room), w, n))

    for i in range(len(ks) - 2, -1, -1):
        s, k = shifts[i], ks[i]
        nxt: list = []
        for N in range(bounds[i] + 1):
            w = comb(N + k, 2)
            room = n - w
            if room < 0:
                nxt.append(None)
                continue
            acc = [0] * (room + 1)
            hit = False
            for M in range(min(N + s, len(T) - 1) + 1):
                t = T[M]
                if t is None:
                    continue
                K.add_into(acc, K.mul(K.gauss(N + s, M), t, room))
                hit = True
            nxt.append(K.shifted(acc, w, n) if hit else None)
        T = nxt

    total = [0] * (n + 1)
    for N, t in enumerate(T):
        if t is not None:
            K.add_into(total, K.mul(t, _inv_qq(N, n), n))
    return K.to_series(total, order)


def chain_sum_bruteforce(ks: Sequence[int], order: int,
                         shifts: Sequence[int] | None = None,
                         family: SeriesFamily = ONE, slack: int = 0) -> QSeries:
    """Tuple-by-tuple evaluation of the same chain; slow, used as an oracle."""
    ks, shifts = _check_chain(ks, shifts)
    n = order
    bounds = [_index_bound(k, n, slack) for k in ks]
    total = [0] * (n + 1)
    for tup in itertools.product(*(range(b + 1) for b in bounds)):
        w = sum(comb(N + k, 2) for N, k in zip(tup, ks))
        if w > n:
            continue
        room = n - w
        term = list(_inv_qq(tup[0], room)[:room + 1])
        for i, s in enumerate(shifts):
            g = K.gauss(tup[i] + s, tup[i + 1])
            if not g:
                break
            term = K.mul(term, g, room)
        else:
            term = K.mul(term, family.dense(tup[-1], room), room)
            K.add_into(total, term, w)
    return K.to_series(total, order)


def S_sum(k: Sequence[int], F: SeriesFamily = ONE, order: int = 0,
          slack: int = 0) -> QSeries:
    """The k-shifted chain sum with plain links [N_i choose N_{i+1}]."""
    return chain_sum(k, order, None, F, slack)


# the generating multisum and its relatives

def _check_am(a: int, m: int):
    if m < 1 or not 0 <= a <= m:
        raise BadParameters(f"need m >= 1 and 0 <= a <= m, got a={a}, m={m}")


def multisum_gen(a: int, m: int, order: int, slack: int = 0) -> QSeries:
    """sum q^{sum binom(N_i+1,2)} / (q;q)_{N_m} prod [N_{i+1} + d(a+1,i+1) choose N_i]."""
    _check_am(a, m)
    # link i joins N_i and N_{i+1}; the +1 sits on link i = a
    links = [1 if i == a else 0 for i in range(1, m)]
    # the chain evaluator wants the (q;q) index first, so read indices m..1
    return chain_sum([1] * m, order, links[::-1], ONE, slack)


def multisum_reversed(a: int, m: int, order: int, slack: int = 0) -> QSeries:
    """sum q^{sum binom(N_i+1,2)} / (q;q)_{N_1} prod [N_i + d(m-a,i) choose N_{i+1}]."""
    _check_am(a, m)
    links = [1 if i == m - a else 0 for i in range(1, m)]
    return chain_sum([1] * m, order, links, ONE, slack)


def gen1_sum(a: int, m: int, order: int) -> QSeries:
    """The form obtained after summing out N_1 with the q-binomial theorem.

    Indices N_2..N_m are enumerated directly (N_1 = 0); the single shifted
    link contributes (1 - q^{N_{a+1}+1}) / (q;q)_{N_{a+1}-N_a+1}.
    """
    _check_am(a, m)
    n = order
    if m == 1:
        return K.to_series(K.poch(1, 1, n + 1, n, sign=1), order)
    cap = _index_bound(1, n)
    lead = 1 if a == 1 else 0
    special = 2 <= a <= m - 1
    total = [0] * (n + 1)

    def rec(idx, prev, exp, tup):
        # idx is the 1-based index being chosen; prev = N_{idx-1}
        if idx > m:
            emit(tup, exp)
            return
        lo = prev
        if special and idx == a + 1:
            lo = max(prev - 1, 0)
        for N in range(lo, cap + 1):
            e = exp + comb(N + 1, 2)
            if e > n:
                break
            rec(idx + 1, N, e, tup + (N,))

    def emit(tup, exp):
        room = n - exp
        Ns = (0,) + tup  # N_1 .. N_m
        term = K.poch(1, 1, Ns[1] + lead, room, sign=1)
        for i in range(2, m + 1):
            gap = Ns[i - 1] - Ns[i - 2]
            if special and i == a + 1:
                term = K.mul(term, _inv_qq(gap + 1, room), room)
                term = K.mul(term, K.poch(Ns[i - 1] + 1, 1, 1, room), room)
            else:
                term = K.mul(term, _inv_qq(gap, room), room)
        K.add_into(total, term, exp)

    rec(2, 0, 0, ())
    return K.to_series(total, order)


def andrews_kimyee_sum(a: int, L: int, order: int, slack: int = 0) -> QSeries:
    """sum q^{sum_{i<=L} binom(N_i+1,2) - sum_{i<=a} N_{2i}} / (q;q)_{N_1} prod [N_i choose N_{i+1}]."""
    if L < 1 or not 0 <= a <= L // 2:
        raise BadParameters(f"need L >= 1 and 0 <= a <= L//2, got a={a}, L={L}")
    # binom(N+1,2) - N = binom(N,2)
    ks = [0 if (i % 2 == 0 and i <= 2 * a) else 1 for i in range(1, L + 1)]
    return chain_sum(ks, order, None, ONE, slack)


def symmetry_sides(a: int, m: int, order: int) -> tuple[QSeries, QSeries]:
    """Chains with the single +1 shift on link a and on link m - a."""
    if m < 2 or not 1 <= a <= m - 1:
        raise BadParameters(f"need 1 <= a <= m-1, got a={a}, m={m}")
    left = [1 if i == a else 0 for i in range(1, m)]
    right = [1 if i == m - a else 0 for i in range(1, m)]
    return (chain_sum([1] * m, order, left),
            chain_sum([1] * m, order, right))


def transformation_sides(a: int, F: SeriesFamily, order: int,
                         slack: int = 0) -> tuple[QSeries, QSeries]:
    """2a-index chain with a +1 on link a, against the unshifted chain whose
    even indices carry binom(N, 2) instead of binom(N+1, 2)."""
    if a < 1:
        raise BadParameters("a must be at least 1")
    b = 2 * a
    links = [1 if i == a else 0 for i in range(1, b)]
    lhs = chain_sum([1] * b, order, links, F, slack)
    ks = [0 if i % 2 == 0 else 1 for i in range(1, b + 1)]
    rhs = chain_sum(ks, order, None, F, slack)
    return lhs, rhs


def transformation_base(F: SeriesFamily, order: int) -> QSeries:
    """sum_N q^{N^2} (-q^{N+1};q)_inf F(N) / (q;q)_N."""
    n = order
    total = [0] * (n + 1)
    N = 0
    while N * N <= n:
        room = n - N * N
        term = K.mul(K.poch(N + 1, 1, room + 1, room, sign=1), _inv_qq(N, room), room)
        term = K.mul(term, F.dense(N, room), room)
        K.add_into(total, term, N * N)
        N += 1
    return K.to_series(total, order)


# bilateral sums

def _box(order: int, omega: int, slack: int) -> range:
    R = isqrt(order + abs(omega) + 1) + 2 + slack
    return range(-R, R + 1)


def bilateral_H(sign: int, omega: int, order: int, slack: int = 0) -> QSeries:
    """sum_{r,s} (sign)^{r+s} q^{r^2+r+s^2+s+w} / (q^2;q^2)_{r+s}
    [r+s choose r+w]_{q^2} [r+s+1 choose r]_{q^2}."""
    if sign not in (1, -1):
        raise BadParameters("sign must be +1 or -1")
    n = order
    total = [0] * (n + 1)
    box = _box(n, omega, slack)
    for r in box:
        for s in box:
            t = r + s
            if t < 0 or not 0 <= r + omega <= t or not 0 <= r <= t + 1:
                continue
            e = r * r + r + s * s + s + omega
            if e > n:
                continue
            if e < 0:
                raise ArithmeticError("negative exponent in a bilateral term")
            room = n - e
            term = K.mul(K.inv_poch(2, 2, t, room), K.gauss_dense(t, r + omega, 2, room), room)
            term = K.mul(term, K.gauss_dense(t + 1, r, 2, room), room)
            K.add_into(total, term, e, sign ** (t % 2))
    return K.to_series(total, order)


def bilateral_I(sign: int, omega: int, order: int, slack: int = 0) -> QSeries:
    """sum_{r,s} (sign)^{r+s} q^{r^2+s^2+2s+w} / (q^2;q^2)_{r+s}
    [r+s choose r-w]_{q^2} [r+s choose r]_{q^2}."""
    if sign not in (1, -1):
        raise BadParameters("sign must be +1 or -1")
    n = order
    total = [0] * (n + 1)
    box = _box(n, omega, slack)
    for r in box:
        for s in box:
            t = r + s
            if t < 0 or not 0 <= r - omega <= t or not 0 <= r <= t:
                continue
            e = r * r + s * s + 2 * s + omega
            if e > n:
                continue
            if e < 0:
                raise ArithmeticError("negative exponent in a bilateral term")
            room = n - e
            term = K.mul(K.inv_poch(2, 2, t, room), K.gauss_dense(t, r - omega, 2, room), room)
            term = K.mul(term, K.gauss_dense(t, r, 2, room), room)
            K.add_into(total, term, e, sign ** (t % 2))
    return K.to_series(total, order)


def S1M_S2M(M: int, order: int) -> tuple[QSeries, QSeries, QSeries]:
    """The two finite sums over r + s = M and their common closed form."""
    if M < 1:
        raise BadParameters("M must be at least 1")
    n = order
    s1 = [0] * (n + 1)
    s2 = [0] * (n + 1)
    for r in range(M + 1):
        s = M - r
        e = r * r + r + s * s + 2 * s
        if e <= n:
            room = n - e
            term = K.mul(K.inv_poch(2, 2, r, room), K.inv_poch(1, 2, r, room), room)
            term = K.mul(term, K.inv_poch(2, 2, s, room), room)
            term = K.mul(term, K.inv_poch(1, 2, s, room), room)
            K.add_into(s1, term, e)
        if s == 0:
            continue  # 1/(q^2;q^2)_{-1} = 0
        e = r * r + 2 * r + s * s + s
        if e <= n:
            room = n - e
            term = K.mul(K.inv_poch(2, 2, r, room), K.inv_poch(1, 2, r + 1, room), room)
            term = K.mul(term, K.inv_poch(2, 2, s - 1, room), room)
            term = K.mul(term, K.inv_poch(1, 2, s, room), room)
            K.add_into(s2, term, e)
    closed = [0] * (n + 1)
    e = M * (M + 3) // 2
    if e <= n:
        room = n - e
        term = K.mul(K.poch(1, 1, M - 1, room, sign=1), K.inv_poch(1, 2, M, room), room)
        term = K.mul(term, K.inv_poch(1, 1, M, room), room)
        K.add_into(closed, term, e)
    return K.to_series(s1, order), K.to_series(s2, order), K.to_series(closed, order)


def double_sum_a1(order: int) -> QSeries:
    """sum_{r,s} q^{r^2+s^2+r+s} (q^2;q^2)_{r+s+1} / ((q^2;q^2)_r^2 (q^2;q^2)_s (q^2;q^2)_{s+1})."""
    n = order
    total = [0] * (n + 1)
    r = 0
    while r * r + r <= n:
        s = 0
        while r * r + r + s * s + s <= n:
            e = r * r + r + s * s + s
            room = n - e
            term = K.mul(K.poch(2, 2, r + s + 1, room), K.inv_poch(2, 2, r, room), room)
            term = K.mul(term, K.inv_poch(2, 2, r, room), room)
            term = K.mul(term, K.inv_poch(2, 2, s, room), room)
            term = K.mul(term, K.inv_poch(2, 2, s + 1, room), room)
            K.add_into(total, term, e)
            s += 1
        r += 1
    return K.to_series(total, order)


def double_sum_a2(order: int) -> QSeries:
    """The two-part double sum whose total is (-q;q^2)_inf / (q^2;q^2)_inf."""
    n = order
    total = [0] * (n + 1)
    for r in range(isqrt(n) + 1):
        for s in range(isqrt(n) + 1):
            e = r * r + s * s + 2 * s
            if e <= n:
                room = n - e
                term = K.mul(K.poch(2, 2, r + s, room), K.inv_poch(2, 2, r, room), room)
                term = K.mul(term, K.inv_poch(2, 2, r, room), room)
                term = K.mul(term, K.inv_poch(2, 2, s, room), room)
                term = K.mul(term, K.inv_poch(2, 2, s, room), room)
                K.add_into(total, term, e)
            e = r * r + s * s + 2 * r + 2 * s + 2
            if e <= n:
                room = n - e
                term = K.mul(K.poch(2, 2, r + s + 1, room), K.inv_poch(2, 2, r, room), room)
                term = K.mul(term, K.inv_poch(2, 2, r + 1, room), room)
                term = K.mul(term, K.inv_poch(2, 2, s, room), room)
                term = K.mul(term, K.inv_poch(2, 2, s + 1, room), room)
                K.add_into(total, term, e)
    return K.to_series(total, order)


# bivariate triple sums

def _check_a12(a: int):
    if a not in (1, 2):
        raise BadParameters("a must be 1 or 2")


def triple_sum_bivariate(a: int, order: int) -> QSeries:
    """x-graded generating function of Lambda^{a,2} assembled from g_N and f_N."""
    _check_a12(a)
    total = QSeries.zero(order)
    n = 0
    while n * (2 * n + 1) <= order:
        e1, e2 = n * (2 * n + 1), (n + 1) * (2 * n + 1)
        if a == 1:
            total = total + (g_closed_b(2 * n, order).x_inverse()
                             * f_series(2 * n + 1, order)).shift(e1, n)
            if e2 <= order:
                total = total + (g_closed_b(2 * n + 1, order)
                                 * f_series(2 * n + 2, order)).shift(e2, -(n + 1))
        else:
            total = total + (g_closed_b(2 * n, order)
                             * f_series(2 * n, order)).shift(e1, -n)
            if e2 <= order:
                total = total + (g_closed_b(2 * n + 1, order).x_inverse()
                                 * f_series(2 * n + 1, order)).shift(e2, n + 1)
        n += 1
    total = total.truncate(order)
    w = isqrt(order)
    w = w + (w * w < order) + 2
    return total.x_window(-w, w)


def coeff_formula(a: int, omega: int, order: int) -> QSeries:
    """The explicit double sums for the coefficient of x^omega."""
    _check_a12(a)
    n_ = order
    total = [0] * (n_ + 1)

    def add(e, base, g1, g2):
        if e > n_:
            return
        if not K.gauss(*g1) or not K.gauss(*g2):
            return
        if e < 0:
            raise ArithmeticError("negative exponent in coefficient formula")
        room = n_ - e
        term = K.mul(K.inv_poch(2, 2, base, room), K.gauss_dense(*g1, 2, room), room)
        term = K.mul(term, K.gauss_dense(*g2, 2, room), room)
        K.add_into(total, term, e)

    n = 0
    while 2 * n * n <= n_ + abs(omega):
        for k in range(-n - 2, n + 3):
            if a == 2:
                add(2 * (n * n + n + k * k - k) + omega, 2 * n,
                    (2 * n, n - k + omega), (2 * n, n + k))
                add(2 * ((n + 1) ** 2 + k * k) - omega, 2 * n + 1,
                    (2 * n + 1, n - k + omega), (2 * n + 1, n + k))
            else:
                # the omega signs here are derived from the triple sum
                add(2 * (n * n + n + k * k) - omega, 2 * n,
                    (2 * n, n + k - omega), (2 * n + 1, n + k))
                add(2 * ((n + 1) ** 2 + k * k - k) + omega, 2 * n + 1,
                    (2 * n + 1, n + k - omega), (2 * n + 2, n + 1 + k))
        n += 1
    return K.to_series(total, order)


# well-poised 2phi1

def wellpoised_sides(alpha: int, beta: int, order: int) -> tuple[QSeries, QSeries]:
    """Both sides of the cleared identity with a = q^{2 alpha}, b = q^{-beta}:

    2 * 2phi1(a, b; a q^2 / b; q^2, q / b) * (a q^2/b, q/b; q^2)_inf
        = (q;q^2)_inf [(-q^alpha, q^{1+alpha+beta}; q)_inf + (q^alpha, -q^{1+alpha+beta}; q)_inf]
    """
    if alpha < 1 or beta < 1:
        raise BadParameters("alpha and beta must be at least 1")
    depth = sum(beta - 2 * i for i in range((beta + 1) // 2))
    work = order + depth
    c = 2 * alpha + 2 + beta
    z = 1 + beta
    series = QSeries.zero(work)
    n = 0
    while n * z - depth <= order:
        if beta % 2 == 0 and n > beta // 2:
            break  # (q^{-beta}; q^2)_n vanishes
        num = poch_finite(q(2 * alpha), 2, n, work) * poch_finite(q(-beta), 2, n, work)
        den = poch_finite(q(2), 2, n, work) * poch_finite(q(c), 2, n, work)
        series = series + (num * den.invert()).shift(n * z)
        n += 1
    lhs = (series * poch_multi([q(c), q(z)], 2, work)) * 2
    a1 = poch_multi([Monomial(-1, 0, alpha), q(1 + alpha + beta)], 1, order)
    a2 = poch_multi([q(alpha), Monomial(-1, 0, 1 + alpha + beta)], 1, order)
    rhs = poch_multi([q(1)], 2, order) * (a1 + a2)
    if lhs.order < order:
        raise ArithmeticError("well-poised left side lost precision")
    return lhs.truncate(order), rhs


def wellpoised_check(alpha: int, beta: int, order: int) -> bool:
    lhs, rhs = wellpoised_sides(alpha, beta, order)
    return lhs.agrees(rhs, order)


# decomposition lemma ladder; every helper returns (lhs, rhs)

def _S(ks, F, order):
    return chain_sum(ks, order, None, F)


def _sum(series, order):
    total = QSeries.zero(order)
    for s in series:
        total = total + s
    return total


def S_decomposition(prefix: Sequence[int], tail: Sequence[int], F: SeriesFamily,
                    order: int) -> tuple[QSeries, QSeries]:
    """Raising the index after prefix splits into two chains.

    With prefix = (k_1..k_{a-1}), compares
    S(k_1..k_{a-1}, k_{a-1}+1, tail) against
    S(k_1..k_{a-2}, k_{a-1}+1, k_{a-1}, tail) + S(k_1+1..k_{a-1}+1, k_{a-1}+1, tail).
    """
    prefix, tail = list(prefix), list(tail)
    if not prefix:
        raise BadParameters("prefix needs at least one entry")
    k = prefix[-1]
    lhs = _S(prefix + [k + 1] + tail, F, order)
    r1 = _S(prefix[:-1] + [k + 1, k] + tail, F, order)
    r2 = _S([x + 1 for x in prefix] + [k + 1] + tail, F, order)
    return lhs, r1 + r2


def lemma_first_step(m: int, a: int, tail: Sequence[int], F: SeriesFamily,
                     order: int) -> tuple[QSeries, QSeries]:
    """S(m^a, m+1, tail) - S(m^{a-1}, m+1, m, tail) = S((m+1)^{a+1}, tail)."""
    if a < 1 or m < 0:
        raise BadParameters("need a >= 1 and m >= 0")
    tail = list(tail)
    lhs = (_S([m] * a + [m + 1] + tail, F, order)
           - _S([m] * (a - 1) + [m + 1, m] + tail, F, order))
    return lhs, _S([m + 1] * (a + 1) + tail, F, order)


def lemma_shift_difference(m: int, a: int, i: int, tail: Sequence[int],
                           F: SeriesFamily, order: int) -> tuple[QSeries, QSeries]:
    """Moving a block of m+1 entries from position a+1 down to position i
    preserves the difference with its one-step-left neighbour (2 <= i <= a)."""
    if not 2 <= i <= a or m < 0:
        raise BadParameters("need 2 <= i <= a and m >= 0")
    tail, lo, hi = list(tail), m, m + 1
    lhs = (_S([lo] * a + [hi] * i + tail, F, order)
           - _S([lo] * (a - 1) + [hi] * i + [lo] + tail, F, order))
    rhs = (_S([lo] * (i - 1) + [hi] * (a + 1) + tail, F, order)
           - _S([lo] * (i - 2) + [hi] * (a + 1) + [lo] + tail, F, order))
    return lhs, rhs


def lemma_block_sums(m: int, a: int, i: int, tail: Sequence[int],
                     F: SeriesFamily, order: int) -> tuple[QSeries, QSeries]:
    """Sum over growing m+1 blocks starting at a+1 (i terms) against blocks
    starting at i (a+1 terms), for 1 <= i <= a."""
    if not 1 <= i <= a or m < 0:
        raise BadParameters("need 1 <= i <= a and m >= 0")
    tail, lo, hi = list(tail), m, m + 1
    lhs = _sum((_S([lo] * a + [hi] * (1 + t) + [lo] * (i - 1 - t) + tail, F, order)
                for t in range(i)), order)
    rhs = _sum((_S([lo] * (i - 1) + [hi] * (1 + t) + [lo] * (a - t) + tail, F, order)
                for t in range(a + 1)), order)
    return lhs, rhs


def block_shift_sides(b: int, F: SeriesFamily, order: int) -> tuple[QSeries, QSeries]:
    """2b-index chains with an extra N_i + 1 in the exponent for i in [start, j]:
    summed over j = b..2b-2 with start b, against start b-1 and j = b-1..2b-2."""
    if b < 2:
        raise BadParameters("b must be at least 2")

    def ks(start, j):
        return [2 if start <= i <= j else 1 for i in range(1, 2 * b + 1)]

    lhs = _sum((_S(ks(b, j), F, order) for j in range(b, 2 * b - 1)), order)
    rhs = _sum((_S(ks(b - 1, j), F, order) for j in range(b - 1, 2 * b - 1)), order)
    return lhs, rhs


def raise_step_kernel(N: int, M: int) -> tuple[QSeries, QSeries]:
    """q^M [N choose M] against q^N [N choose M] + q^M [N-1 choose M] (1 - q^N).

    This is the coefficientwise step behind :func:`S_decomposition`.
    """
    if not 0 <= M <= N:
        raise BadParameters("need 0 <= M <= N")
    n = N * N + N + 1
    top = gauss_binom(N, M).series(n)
    lower = gauss_binom(N - 1, M).series(n) if N >= 1 else QSeries.zero(n)
    lhs = top.shift(M).truncate(n)
    rhs = top.shift(N) + lower.shift(M) - lower.shift(M + N)
    return lhs, rhs.truncate(n)
