"""Dense univariate power-series helpers (integer coefficients, q^0 .. q^n).

Lists index coefficients by exponent.  Every function truncates its output
at degree ``n``.  These sit underneath the multisum evaluators, where the
same few shapes get multiplied thousands of times.
"""

from __future__ import annotations

from functools import lru_cache

from .qseries import QSeries


def zeros(n: int) -> list:
    return [0] * (n + 1)


def mul(a: list, b: list, n: int) -> list:
    out = [0] * (n + 1)
    if not a or not b:
        return out
    nb = len(b) - 1
    for i, ca in enumerate(a):
        if i > n:
            break
        if not ca:
            continue
        top = min(nb, n - i)
        for j in range(top + 1):
            cb = b[j]
            if cb:
                out[i + j] += ca * cb
    return out


def add_into(acc: list, a: list, shift: int = 0, scale: int = 1) -> None:
    """acc += scale * q^shift * a (in place, truncated at len(acc)-1)."""
    n = len(acc) - 1
    for i, c in enumerate(a):
        k = i + shift
        if k > n:
            break
        if c and k >= 0:
            acc[k] += scale * c
    return None


def shifted(a: list, shift: int, n: int) -> list:
    out = [0] * (n + 1)
    add_into(out, a, shift)
    return out


def monomial(k: int, n: int, c: int = 1) -> list:
    out = [0] * (n + 1)
    if 0 <= k <= n:
        out[k] = c
    return out


def dilate(a: tuple | list, r: int, n: int) -> list:
    out = [0] * (n + 1)
    for i, c in enumerate(a):
        if i * r > n:
            break
        out[i * r] = c
    return out


@lru_cache(maxsize=None)
def gauss(big: int, small: int) -> tuple:
    """Coefficients of the Gaussian polynomial [big choose small]_q (exact)."""
    if small < 0 or small > big:
        return ()
    if small == 0 or small == big:
        return (1,)
    # [N, M] = [N-1, M-1] + q^M [N-1, M]
    a = gauss(big - 1, small - 1)
    b = gauss(big - 1, small)
    deg = small * (big - small)
    out = [0] * (deg + 1)
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i + small] += c
    return tuple(out)


def gauss_dense(big: int, small: int, r: int, n: int) -> list:
    """[big choose small]_{q^r} truncated at degree n."""
    return dilate(gauss(big, small), r, n)


def poch(first: int, step: int, count: int, n: int, sign: int = -1) -> list:
    """prod_{i<count} (1 + sign * q^{first + step*i}), truncated."""
    out = [0] * (n + 1)
    out[0] = 1
    for i in range(count):
        e = first + step * i
        if e > n:
            break
        for k in range(n, e - 1, -1):
            if out[k - e]:
                out[k] += sign * out[k - e]
    return out


def inv_poch(first: int, step: int, count: int | None, n: int) -> list:
    """1 / prod_{i<count} (1 - q^{first + step*i}); count None means infinite."""
    if first < 1:
        raise ValueError("dense inverse Pochhammer needs positive exponents")
    out = [0] * (n + 1)
    out[0] = 1
    i = 0
    while count is None or i < count:
        e = first + step * i
        if e > n:
            break
        for k in range(e, n + 1):
            if out[k - e]:
                out[k] += out[k - e]
        i += 1
    return out


def to_series(a: list, order: int) -> QSeries:
    return QSeries._make({(k, 0): c for k, c in enumerate(a) if c and k <= order},
                         order, 0)


def from_series(s: QSeries, n: int) -> list:
    """Dense copy of a univariate series with no negative exponents."""
    if not s.is_univariate():
        raise ValueError("dense kernel needs a univariate series")
    if s.order < n:
        raise ValueError(f"series known to q^{s.order}, needed q^{n}")
    out = [0] * (n + 1)
    for k, _, c in s.items():
        if k < 0:
            raise ValueError("dense kernel needs nonnegative exponents")
        if k <= n:
            out[k] = c
    return out
