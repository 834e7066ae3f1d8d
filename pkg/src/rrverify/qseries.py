"""Exact truncated bivariate Laurent series in q with coefficients in Q[x, 1/x].

A :class:`QSeries` stores the coefficient of ``x^j q^k`` for every
``min_exp <= k <= order``.  Everything is exact (``fractions.Fraction`` or
plain ``int``); results never claim more precision than their inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Iterator, Mapping

from .errors import BadParameters, DivergentProduct, NotInvertible

Rational = Fraction


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"num/den"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    if isinstance(value, _RationalABC):
        return Fraction(value.numerator, value.denominator)
    raise TypeError(f"not an exact rational: {value!r}")


def _norm(c):
    # keep integral values as int; int arithmetic is much cheaper than Fraction
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def rational_str(c) -> str:
    c = as_rational(c)
    return f"{c.numerator}/{c.denominator}"


class XPoly:
    """Laurent polynomial in x with exact rational coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, object] | None = None):
        clean = {}
        for j, c in (terms or {}).items():
            c = _norm(as_rational(c))
            if c:
                clean[int(j)] = c
        self._terms = clean

    @classmethod
    def _raw(cls, terms):
        obj = cls.__new__(cls)
        obj._terms = terms
        return obj

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def __getitem__(self, j: int):
        return self._terms.get(j, 0)

    def __iter__(self):
        return iter(sorted(self._terms))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def __add__(self, other: "XPoly") -> "XPoly":
        out = dict(self._terms)
        for j, c in other._terms.items():
            v = out.get(j, 0) + c
            if v:
                out[j] = _norm(v)
            else:
                out.pop(j, None)
        return XPoly._raw(out)

    def __neg__(self):
        return XPoly._raw({j: -c for j, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, XPoly):
            out = {}
            for j1, c1 in self._terms.items():
                for j2, c2 in other._terms.items():
                    out[j1 + j2] = out.get(j1 + j2, 0) + c1 * c2
            return XPoly._raw({j: _norm(c) for j, c in out.items() if c})
        c = as_rational(other)
        if not c:
            return XPoly()
        return XPoly._raw({j: _norm(v * c) for j, v in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, XPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def at_one(self):
        """Value at x = 1."""
        return _norm(sum(self._terms.values(), Fraction(0)))

    def __repr__(self):
        if not self._terms:
            return "XPoly(0)"
        return "XPoly(" + " + ".join(f"{c}*x^{j}" for j, c in self.items()) + ")"


@dataclass(frozen=True)
class Monomial:
    """``coeff * x^x_exp * q^q_exp`` with a nonzero exact coefficient."""

    coeff: object = 1
    x_exp: int = 0
    q_exp: int = 0

    def __post_init__(self):
        c = as_rational(self.coeff)
        if not c:
            raise BadParameters("Monomial coefficient must be nonzero")
        object.__setattr__(self, "coeff", _norm(c))

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(self.coeff * other.coeff, self.x_exp + other.x_exp,
                        self.q_exp + other.q_exp)

    def inverse(self) -> "Monomial":
        return Monomial(1 / as_rational(self.coeff), -self.x_exp, -self.q_exp)

    def __pow__(self, n: int) -> "Monomial":
        base = self if n >= 0 else self.inverse()
        return Monomial(as_rational(base.coeff) ** abs(n), base.x_exp * abs(n),
                        base.q_exp * abs(n))

    def __neg__(self):
        return Monomial(-self.coeff, self.x_exp, self.q_exp)

    def shift_q(self, k: int) -> "Monomial":
        return Monomial(self.coeff, self.x_exp, self.q_exp + k)

    def series(self, order: int) -> "QSeries":
        return QSeries({(self.q_exp, self.x_exp): self.coeff}, order)


def q(k: int = 1, coeff=1) -> Monomial:
    """Shorthand for the monomial ``coeff * q^k``."""
    return Monomial(coeff, 0, k)


def xq(j: int, k: int, coeff=1) -> Monomial:
    """Shorthand for ``coeff * x^j * q^k``."""
    return Monomial(coeff, j, k)


class QSeries:
    """Truncated Laurent series in q over Q[x, 1/x].

    Parameters
    ----------
    terms : mapping ``(q_exp, x_exp) -> coefficient``, or iterable of pairs
        Terms above ``order`` are discarded (truncation), repeated keys add up.
    order : int
        Highest tracked q-exponent.
    min_exp : int, optional
        Lowest tracked q-exponent.  Defaults to ``min(0, lowest exponent)``.
    """

    __slots__ = ("_t", "order", "min_exp")

    def __init__(self, terms=(), order: int = 0, min_exp: int | None = None):
        items = terms.items() if isinstance(terms, Mapping) else terms
        data: dict = {}
        for (k, j), c in items:
            k, j = int(k), int(j)
            if k > order:
                continue
            data[(k, j)] = data.get((k, j), 0) + as_rational(c)
        data = {key: _norm(c) for key, c in data.items() if c}
        lo = min((k for k, _ in data), default=0)
        if min_exp is None:
            min_exp = min(0, lo)
        elif lo < min_exp:
            raise BadParameters(f"term at q^{lo} lies below min_exp {min_exp}")
        self._t = data
        self.order = int(order)
        self.min_exp = int(min_exp)

    @classmethod
    def _make(cls, data: dict, order: int, min_exp: int) -> "QSeries":
        obj = cls.__new__(cls)
        obj._t = data
        obj.order = order
        obj.min_exp = min_exp
        return obj

    # constructors

    @classmethod
    def zero(cls, order: int) -> "QSeries":
        return cls._make({}, order, 0)

    @classmethod
    def one(cls, order: int) -> "QSeries":
        return cls._make({(0, 0): 1} if order >= 0 else {}, order, 0)

    @classmethod
    def from_coeffs(cls, coeffs: Iterable, order: int | None = None,
                    start: int = 0) -> "QSeries":
        """Univariate series from a coefficient list beginning at ``q^start``."""
        coeffs = list(coeffs)
        if order is None:
            order = start + len(coeffs) - 1
        return cls({(start + i, 0): c for i, c in enumerate(coeffs)}, order,
                   min(0, start))

    @classmethod
    def from_nested(cls, nested: Mapping[int, Mapping[int, object]], order: int,
                    min_exp: int | None = None) -> "QSeries":
        """Build from ``{q_exp: {x_exp: coeff}}`` (or ``{q_exp: XPoly}``)."""
        flat = {}
        for k, poly in nested.items():
            terms = poly.terms if isinstance(poly, XPoly) else poly
            for j, c in terms.items():
                flat[(k, j)] = c
        return cls(flat, order, min_exp)

    # access

    def coeff(self, k: int) -> XPoly:
        return XPoly._raw({j: c for (kk, j), c in self._t.items() if kk == k})

    __getitem__ = coeff

    def get(self, k: int, j: int = 0):
        return self._t.get((k, j), 0)

    def items(self) -> list:
        """Sorted list of ``(q_exp, x_exp, coeff)``."""
        return [(k, j, c) for (k, j), c in sorted(self._t.items())]

    def terms(self) -> dict:
        return dict(self._t)

    def coeffs(self) -> dict:
        """``{q_exp: XPoly}`` view of the stored terms."""
        out: dict = {}
        for (k, j), c in self._t.items():
            out.setdefault(k, {})[j] = c
        return {k: XPoly._raw(v) for k, v in sorted(out.items())}

    def is_univariate(self) -> bool:
        return all(j == 0 for _, j in self._t)

    def to_list(self, x_exp: int = 0) -> list:
        """Coefficients of ``x^x_exp q^k`` for ``k = 0..order``."""
        return [self._t.get((k, x_exp), 0) for k in range(self.order + 1)]

    def valuation(self) -> int | None:
        return min((k for k, _ in self._t), default=None)

    def x_range(self) -> tuple[int, int] | None:
        js = [j for _, j in self._t]
        return (min(js), max(js)) if js else None

    def is_zero(self) -> bool:
        return not self._t

    # arithmetic

    def __add__(self, other):
        if not isinstance(other, QSeries):
            other = QSeries({(0, 0): other}, self.order)
        out = dict(self._t)
        order = min(self.order, other.order)
        for key, c in other._t.items():
            v = out.get(key, 0) + c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        out = {key: _norm(c) for key, c in out.items() if key[0] <= order}
        return QSeries._make(out, order, min(self.min_exp, other.min_exp))

    __radd__ = __add__

    def __neg__(self):
        return QSeries._make({key: -c for key, c in self._t.items()}, self.order,
                             self.min_exp)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, QSeries):
            return self._mul_series(other)
        if isinstance(other, Monomial):
            return self.shift(other.q_exp, other.x_exp, other.coeff)
        c = as_rational(other)
        if not c:
            return QSeries._make({}, self.order, self.min_exp)
        c = _norm(c)
        return QSeries._make({key: _norm(v * c) for key, v in self._t.items()},
                             self.order, self.min_exp)

    __rmul__ = __mul__

    def _mul_series(self, other: "QSeries") -> "QSeries":
        # a negative min_exp on one side pulls unknown high terms of the other
        # side down into the window, so the exact order shrinks accordingly
        order = min(self.order + min(other.min_exp, 0),
                    other.order + min(self.min_exp, 0))
        min_exp = self.min_exp + other.min_exp
        if not self._t or not other._t:
            return QSeries._make({}, order, min_exp)
        a, b = self, other
        if len(a._t) > len(b._t):
            a, b = b, a
        rows: dict = {}
        for (k, j), c in b._t.items():
            rows.setdefault(k, []).append((j, c))
        brows = sorted(rows.items())
        out: dict = {}
        get = out.get
        for (ka, ja), ca in a._t.items():
            lim = order - ka
            for kb, row in brows:
                if kb > lim:
                    break
                kk = ka + kb
                for jb, cb in row:
                    key = (kk, ja + jb)
                    out[key] = get(key, 0) + ca * cb
        out = {key: _norm(c) for key, c in out.items() if c}
        return QSeries._make(out, order, min_exp)

    def __pow__(self, n: int) -> "QSeries":
        if n < 0:
            return self.invert() ** (-n)
        result = QSeries.one(self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, dq: int = 0, dx: int = 0, coeff=1) -> "QSeries":
        """Multiply by the monomial ``coeff * x^dx * q^dq`` (exact, order moves)."""
        c = _norm(as_rational(coeff))
        data = {(k + dq, j + dx): _norm(v * c) for (k, j), v in self._t.items()}
        return QSeries._make(data, self.order + dq, self.min_exp + dq)

    def truncate(self, order: int) -> "QSeries":
        order = min(order, self.order)
        return QSeries._make({key: c for key, c in self._t.items() if key[0] <= order},
                             order, min(self.min_exp, order))

    def invert(self) -> "QSeries":
        """Multiplicative inverse; the lowest coefficient must be one x-monomial."""
        if not self._t:
            raise NotInvertible("series is zero to its truncation order")
        v = min(k for k, _ in self._t)
        low = [(j, c) for (k, j), c in self._t.items() if k == v]
        if len(low) != 1:
            raise NotInvertible(f"lowest coefficient (q^{v}) is not a monomial in x")
        j0, c0 = low[0]
        inv_c0 = 1 / as_rational(c0)
        # u = self / (c0 x^j0 q^v) - 1, known for q-exponents 1..order-v
        rel = self.order - v
        unit = {}
        for (k, j), c in self._t.items():
            if k > v:
                unit[(k - v, j - j0)] = c * inv_c0
        rows: dict = {}
        for (k, j), c in unit.items():
            rows.setdefault(k, []).append((j, c))
        # solve (1 + u) * w = 1 degree by degree
        w_rows: dict = {0: {0: Fraction(1)}}
        for n in range(1, rel + 1):
            acc: dict = {}
            for k, row in rows.items():
                if k > n:
                    continue
                prev = w_rows.get(n - k)
                if not prev:
                    continue
                for ju, cu in row:
                    for jw, cw in prev.items():
                        acc[ju + jw] = acc.get(ju + jw, 0) - cu * cw
            w_rows[n] = {j: c for j, c in acc.items() if c}
        data = {}
        for n, row in w_rows.items():
            for j, c in row.items():
                data[(n - v, j - j0)] = _norm(c * inv_c0)
        return QSeries._make(data, rel - v, min(0, -v))

    def __truediv__(self, other):
        if isinstance(other, QSeries):
            return self * other.invert()
        return self * (1 / as_rational(other))

    # substitutions

    def neg_q(self) -> "QSeries":
        """Substitute q -> -q."""
        return QSeries._make({(k, j): (-c if k & 1 else c) for (k, j), c in self._t.items()},
                             self.order, self.min_exp)

    def dilate(self, r: int) -> "QSeries":
        """Substitute q -> q^r (r >= 1)."""
        if r < 1:
            raise BadParameters("dilation factor must be positive")
        return QSeries._make({(k * r, j): c for (k, j), c in self._t.items()},
                             self.order * r, self.min_exp * r)

    def x_inverse(self) -> "QSeries":
        """Substitute x -> 1/x."""
        return QSeries._make({(k, -j): c for (k, j), c in self._t.items()},
                             self.order, self.min_exp)

    def x_collapse(self) -> "QSeries":
        """Substitute x -> 1."""
        out: dict = {}
        for (k, _), c in self._t.items():
            out[(k, 0)] = out.get((k, 0), 0) + c
        return QSeries._make({key: _norm(c) for key, c in out.items() if c},
                             self.order, self.min_exp)

    def x_slice(self, j: int) -> "QSeries":
        """Coefficient of x^j as a univariate series."""
        return QSeries._make({(k, 0): c for (k, jj), c in self._t.items() if jj == j},
                             self.order, self.min_exp)

    def x_window(self, lo: int, hi: int) -> "QSeries":
        return QSeries._make({(k, j): c for (k, j), c in self._t.items() if lo <= j <= hi},
                             self.order, self.min_exp)

    def q_parity(self, parity: int) -> "QSeries":
        """Keep the terms whose q-exponent has the given parity."""
        return QSeries._make({(k, j): c for (k, j), c in self._t.items()
                              if (k - parity) % 2 == 0}, self.order, self.min_exp)

    # comparison

    def first_difference(self, other: "QSeries", order: int | None = None):
        """Lowest ``(q_exp, x_exp, mine, theirs)`` where the two differ, or None."""
        if order is None:
            order = min(self.order, other.order)
        keys = {key for key in self._t if key[0] <= order}
        keys |= {key for key in other._t if key[0] <= order}
        for key in sorted(keys):
            a, b = self._t.get(key, 0), other._t.get(key, 0)
            if a != b:
                return key[0], key[1], a, b
        return None

    def agrees(self, other: "QSeries", order: int | None = None) -> bool:
        return self.first_difference(other, order) is None

    def __eq__(self, other):
        if isinstance(other, QSeries):
            return self.order == other.order and self._t == other._t
        return NotImplemented

    __hash__ = None

    # serialization

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "min_exp": self.min_exp,
            "terms": [[k, j, rational_str(c)] for k, j, c in self.items()],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "QSeries":
        terms = {(int(k), int(j)): as_rational(c) for k, j, c in obj["terms"]}
        return cls(terms, int(obj["order"]), int(obj["min_exp"]))

    def __repr__(self):
        if not self._t:
            body = "0"
        else:
            parts = []
            for k, j, c in self.items()[:12]:
                mono = "".join(
                    s for s in ((f"x^{j}" if j else ""), (f"q^{k}" if k else "")) if s)
                parts.append(f"{c}{'*' + mono if mono else ''}")
            body = " + ".join(parts)
            if len(self._t) > 12:
                body += " + ..."
        return f"QSeries({body} + O(q^{self.order + 1}))"

    def __iter__(self) -> Iterator:
        return iter(self.items())


def qs_add(a: QSeries, b: QSeries) -> QSeries:
    return a + b


def qs_mul(a: QSeries, b: QSeries) -> QSeries:
    return a * b


def qs_invert(a: QSeries) -> QSeries:
    return a.invert()


def product_of_binomials(factors: Iterable[Monomial], order: int) -> QSeries:
    """Exact ``prod (1 - u)`` over the given monomials, kept up to ``q^order``.

    Factors may carry negative q-exponents; terms are pruned only once no
    remaining factor can pull them back into the window.
    """
    factors = list(factors)
    neg_tail = [0] * (len(factors) + 1)
    for i in range(len(factors) - 1, -1, -1):
        neg_tail[i] = neg_tail[i + 1] + min(factors[i].q_exp, 0)
    acc = {(0, 0): 1}
    for i, u in enumerate(factors):
        cap = order - neg_tail[i + 1]
        uq, ux, uc = u.q_exp, u.x_exp, u.coeff
        new = {key: c for key, c in acc.items() if key[0] <= cap}
        for (k, j), c in acc.items():
            kk = k + uq
            if kk > cap:
                continue
            key = (kk, j + ux)
            new[key] = new.get(key, 0) - c * uc
        acc = {key: _norm(c) for key, c in new.items() if c}
    return QSeries._make({key: c for key, c in acc.items() if key[0] <= order},
                         order, min(0, neg_tail[0]))


def _poch_factors(a: Monomial, r: int, count: int):
    return [a.shift_q(r * i) for i in range(count)]


def _negative_mass(a: Monomial, r: int) -> int:
    # total of the negative q-exponents among the factors of (a; q^r)_inf
    total, e = 0, a.q_exp
    while e < 0:
        total += e
        e += r
    return total


def _infinite_factor_count(a: Monomial, r: int, order: int, neg_total: int) -> int:
    # factor i can touch the window iff a.q + r*i <= order - (all negative mass)
    if r < 1:
        raise DivergentProduct(f"step {r} <= 0 gives a divergent product")
    limit = order - neg_total
    if a.q_exp > limit:
        return 0
    return (limit - a.q_exp) // r + 1


def poch_finite(a: Monomial, r: int, n: int, order: int) -> QSeries:
    """``(a; q^r)_n = prod_{i<n} (1 - a q^{r i})`` truncated at ``q^order``."""
    if n < 0:
        raise BadParameters("poch_finite needs n >= 0")
    if r < 1:
        raise BadParameters("poch_finite needs a positive step")
    return product_of_binomials(_poch_factors(a, r, n), order)


def poch_infinite(a: Monomial, r: int, order: int) -> QSeries:
    """``(a; q^r)_inf`` truncated at ``q^order``."""
    if r < 1:
        raise DivergentProduct(f"step {r} <= 0 gives a divergent product")
    n = _infinite_factor_count(a, r, order, _negative_mass(a, r))
    return product_of_binomials(_poch_factors(a, r, n), order)


def poch_multi(args: Iterable[Monomial], r: int, order: int, n: int | None = None) -> QSeries:
    """``(a_1, ..., a_s; q^r)_n`` (infinite when ``n`` is None)."""
    args = list(args)
    if r < 1:
        raise DivergentProduct(f"step {r} <= 0 gives a divergent product")
    factors = []
    if n is None:
        neg = sum(_negative_mass(a, r) for a in args)
        for a in args:
            factors += _poch_factors(a, r, _infinite_factor_count(a, r, order, neg))
    else:
        for a in args:
            factors += _poch_factors(a, r, n)
    factors.sort(key=lambda u: u.q_exp)
    return product_of_binomials(factors, order)


def qpoch_ratio(num: Iterable[Monomial], den: Iterable[Monomial], r: int,
                order: int) -> QSeries:
    """``(num; q^r)_inf / (den; q^r)_inf`` for denominators with unit leading term."""
    top = poch_multi(num, r, order)
    bottom = poch_multi(den, r, order)
    return top * bottom.invert()


def jacobi_triple(z: Monomial, r: int, order: int) -> tuple[QSeries, QSeries]:
    """Both sides of the triple product ``(q^r, z, q^r/z; q^r)_inf``.

    Returns ``(product, bilateral_sum)`` where the sum is
    ``sum_n (-1)^n z^n q^{r n(n-1)/2}``.
    """
    if r < 1:
        raise DivergentProduct(f"step {r} <= 0 gives a divergent product")
    other = z.inverse().shift_q(r)
    product = poch_multi([q(r), z, other], r, order)

    c = as_rational(z.coeff)

    def expo(n):
        return r * n * (n - 1) // 2 + z.q_exp * n

    # exponent is convex in n; walk outwards from the vertex
    vertex = Fraction(1, 2) - Fraction(z.q_exp, r)
    start = -((-vertex.numerator) // vertex.denominator)
    terms = {}
    for direction, n in ((1, start), (-1, start - 1)):
        while expo(n) <= order:
            key = (expo(n), z.x_exp * n)
            terms[key] = terms.get(key, 0) + (-1) ** (n % 2) * c ** n
            n += direction
    lo = min((k for k, _ in terms), default=0)
    return product, QSeries(terms, order, min(0, lo, product.min_exp))


def product_ariki_mathas(a: int, m: int, order: int) -> QSeries:
    """``prod_{n>=1} (1-q^{(m+2)n})(1-q^{(m+2)(n-1)+a+1})(1-q^{(m+2)n-a-1})``
    divided by ``(1-q^n)(1-q^{2n-1})``."""
    if m < 1 or not 0 <= a <= m:
        raise BadParameters(f"need m >= 1 and 0 <= a <= m, got a={a}, m={m}")
    step = m + 2
    num = poch_multi([q(a + 1), q(m + 1 - a), q(step)], step, order)
    den = poch_infinite(q(1), 1, order) * poch_infinite(q(1), 2, order)
    return num * den.invert()
