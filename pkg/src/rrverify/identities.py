"""Named catalog of identities, each with two independently built sides.

``verify`` builds both sides at a requested order and compares them
coefficient by coefficient.  Entries that consume the partition enumerator
are marked ``enumerative`` and propagate :class:`BudgetExceeded` instead of
silently lowering the order.
"""

from __future__ import annotations

import enum
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Mapping

from . import _kernel as K
from . import multisums as MS
from .errors import BadParameters, BudgetExceeded, RRVerifyError, UnknownIdentity
from .partitions import (
    B_series, enumeration_ceiling, gf_lambda, g_series, rogers_szego_sides,
)
from .qseries import (
    Monomial, QSeries, as_rational, jacobi_triple, poch_finite, poch_infinite,
    poch_multi, product_ariki_mathas, q, rational_str, xq,
)

Builder = Callable[[dict, int, "int | None"], QSeries]


class Status(str, enum.Enum):
    MATCH = "MATCH"
    MISMATCH = "MISMATCH"
    ERROR = "ERROR"


@dataclass(frozen=True)
class Param:
    default: int
    lo: int
    hi: int
    doc: str = ""


@dataclass(frozen=True)
class IdentitySpec:
    id: str
    lhs: Builder
    rhs: Builder
    default_order: int
    tags: tuple
    params: Mapping[str, Param] = field(default_factory=dict)
    summary: str = ""
    enumerative: bool = False
    check: Callable[[dict], str | None] | None = None
    oracle: Builder | None = None  # enumeration-side recomputation of the lhs
    oracle_m: Callable[[dict], int] = lambda p: 2  # components, for the budget

    def resolve(self, params: Mapping[str, object] | None) -> dict:
        params = dict(params or {})
        unknown = set(params) - set(self.params)
        if unknown:
            raise BadParameters(f"{self.id}: unknown parameter(s) {sorted(unknown)}")
        out = {}
        for name, spec in self.params.items():
            raw = params.get(name, spec.default)
            try:
                value = int(raw)
            except (TypeError, ValueError):
                raise BadParameters(f"{self.id}: {name} must be an integer, got {raw!r}")
            if not spec.lo <= value <= spec.hi:
                raise BadParameters(
                    f"{self.id}: {name}={value} outside [{spec.lo}, {spec.hi}]")
            out[name] = value
        if self.check is not None:
            problem = self.check(out)
            if problem:
                raise BadParameters(f"{self.id}: {problem}")
        return out

    def describe(self) -> dict:
        return {
            "id": self.id,
            "summary": self.summary,
            "default_order": self.default_order,
            "tags": list(self.tags),
            "enumerative": self.enumerative,
            "params": {k: {"default": p.default, "range": [p.lo, p.hi], "doc": p.doc}
                       for k, p in self.params.items()},
        }


def _coeff_json(c):
    return None if c is None else rational_str(c)


@dataclass
class IdentityReport:
    id: str
    params: dict
    order: int
    status: Status
    first_mismatch: tuple | None = None
    elapsed: float = 0.0
    message: str = ""

    @property
    def ok(self) -> bool:
        return self.status is Status.MATCH

    def to_dict(self) -> dict:
        fm = None
        if self.first_mismatch is not None:
            k, j, lhs, rhs = self.first_mismatch
            fm = {"q_exp": k, "x_exp": j, "lhs": _coeff_json(lhs), "rhs": _coeff_json(rhs)}
        return {
            "id": self.id,
            "params": dict(self.params),
            "order": self.order,
            "status": self.status.value,
            "first_mismatch": fm,
            "elapsed": round(self.elapsed, 6),
            "message": self.message,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, obj: Mapping) -> "IdentityReport":
        fm = obj.get("first_mismatch")
        if fm is not None:
            fm = (int(fm["q_exp"]), int(fm["x_exp"]),
                  as_rational(fm["lhs"]), as_rational(fm["rhs"]))
        return cls(obj["id"], dict(obj["params"]), int(obj["order"]),
                   Status(obj["status"]), fm, float(obj["elapsed"]),
                   obj.get("message", ""))

    @classmethod
    def from_json(cls, text: str) -> "IdentityReport":
        return cls.from_dict(json.loads(text))

    def text_row(self) -> str:
        params = ",".join(f"{k}={v}" for k, v in self.params.items()) or "-"
        line = f"{self.status.value:<8} {self.id:<28} {params:<24} order={self.order:<4} {self.elapsed:7.3f}s"
        if self.first_mismatch is not None:
            k, j, a, b = self.first_mismatch
            line += f"  first diff q^{k} x^{j}: {rational_str(a)} != {rational_str(b)}"
        if self.message:
            line += f"  {self.message}"
        return line


# small builders shared by several entries (qseries primitives only)

def _neg(k: int) -> Monomial:
    return Monomial(-1, 0, k)


def _poch(args, r, n):
    return poch_multi(args, r, n)


def _ratio(num, den, r, n):
    return poch_multi(num, r, n) * poch_multi(den, r, n).invert()


def _collapse(a, m, n, budget):
    return gf_lambda(a, m, n, budget).x_collapse()


def _stack(parts: Mapping[int, QSeries], order: int) -> QSeries:
    """Tag each series with its own x-power so one comparison covers all."""
    total = QSeries.zero(order)
    for j, s in parts.items():
        total = total + s.truncate(order).shift(0, j)
    return total


def _sign(w: int) -> int:
    return 1 if w % 2 == 0 else -1


FAMILY_CHOICES = (MS.ONE, MS.TRIANGULAR)


def _family(p):
    return FAMILY_CHOICES[p.get("family", 0)]


# bivariate products

def lambda12_product(order: int) -> QSeries:
    """(-q^2;q^2) (-xq, -q/x, q^2; q^2) / (q^2;q^2)."""
    jtp = poch_multi([xq(1, 1, -1), xq(-1, 1, -1), q(2)], 2, order)
    return jtp * _ratio([_neg(2)], [q(2)], 2, order)


def lambda22_product_doubled(order: int) -> QSeries:
    """Twice the Lambda^{2,2} product side, clearing the 1/2."""
    plus = (poch_multi([_neg(1)], 2, order)
            * poch_multi([xq(1, 0, -1), xq(-1, 2, -1), q(2)], 2, order))
    minus = (poch_multi([q(1)], 2, order)
             * poch_multi([xq(1, 0), xq(-1, 2), q(2)], 2, order))
    return (plus + minus) * poch_multi([q(2)], 2, order).invert()


def _slice_product(a: int, w: int, order: int) -> QSeries:
    if a == 1:
        body = _ratio([_neg(2)], [q(2)], 2, order)
        return body.shift(w * w).truncate(order)
    # only the q-parity class matching omega survives
    body = _ratio([_neg(1)], [q(2)], 2, order).q_parity(w % 2)
    return body.shift(w * w - w).truncate(order)


def slice_product_literal(w: int, order: int) -> QSeries:
    """q^{w^2-w} (-q;q^2)/(q^2;q^2) without the parity projection."""
    return _ratio([_neg(1)], [q(2)], 2, order).shift(w * w - w).truncate(order)


# tagged monomials for the classical checks

JTP_CHOICES = ((Monomial(-1, 0, 1), 1), (xq(-1, 2), 2), (xq(1, 0), 2), (xq(1, 1, -1), 2))
QBIN_Z = (q(1), xq(1, 0), q(2, -1), xq(1, 1))
QSER_A = (q(1), q(1, -1), xq(1, 0))
QSER_Z = (q(1), xq(1, 1), q(2))


def _qbin_lhs(p, n, budget):
    return poch_finite(QBIN_Z[p["z"]], 1, p["N"], n)


def _qbin_rhs(p, n, budget):
    z, N = QBIN_Z[p["z"]], p["N"]
    total = QSeries.zero(n)
    for k in range(N + 1):
        g = K.to_series(K.gauss_dense(N, k, 1, n), n)
        zk = z ** k
        total = total + (g * (_sign(k) * as_rational(zk.coeff))).shift(
            zk.q_exp + k * (k - 1) // 2, zk.x_exp)
    return total.truncate(n)


def _qser_lhs(p, n, budget):
    a, z = QSER_A[p["a"]], QSER_Z[p["z"]]
    total = QSeries.zero(n)
    k = 0
    while k * z.q_exp <= n:
        term = poch_finite(a, 1, k, n) * K.to_series(K.inv_poch(1, 1, k, n), n)
        zk = z ** k
        total = total + (term * as_rational(zk.coeff)).shift(zk.q_exp, zk.x_exp)
        k += 1
    return total.truncate(n)


def _qser_rhs(p, n, budget):
    a, z = QSER_A[p["a"]], QSER_Z[p["z"]]
    return poch_infinite(a * z, 1, n) * poch_infinite(z, 1, n).invert()


# entry construction helpers

REGISTRY: dict[str, IdentitySpec] = {}


def _register(spec: IdentitySpec) -> None:
    if spec.id in REGISTRY:
        raise ValueError(f"duplicate identity {spec.id}")
    REGISTRY[spec.id] = spec


def _am_check(p):
    if p["a"] > p["m"]:
        return "need a <= m"
    return None


AM = {"a": Param(1, 0, 8, "residue offset"), "m": Param(2, 1, 8, "components")}


def _enum_am_check(p):
    if not 1 <= p["a"] <= p["m"]:
        return "need 1 <= a <= m"
    return None


_register(IdentitySpec(
    "ariki_mathas_enum",
    lambda p, n, b: _collapse(p["a"], p["m"], n, b),
    lambda p, n, b: product_ariki_mathas(p["a"], p["m"], n),
    22, ("enumeration", "product", "generating-function"),
    {"a": Param(1, 1, 6), "m": Param(2, 1, 6)},
    "|Lambda^{a,m}(n)| generating function equals the theta-quotient product",
    enumerative=True, check=_enum_am_check))

_register(IdentitySpec(
    "ariki_mathas_multisum",
    lambda p, n, b: MS.multisum_gen(p["a"], p["m"], n),
    lambda p, n, b: product_ariki_mathas(p["a"], p["m"], n),
    50, ("multisum", "product"), AM,
    "q-binomial multisum equals the product", check=_am_check,
    oracle=lambda p, n, b: _collapse(p["a"], p["m"], n, b), oracle_m=lambda p: p["m"]))

_register(IdentitySpec(
    "ariki_mathas_reversed",
    lambda p, n, b: MS.multisum_reversed(p["a"], p["m"], n),
    lambda p, n, b: product_ariki_mathas(p["a"], p["m"], n),
    50, ("multisum", "product"), AM,
    "index-reversed multisum equals the product", check=_am_check))

_register(IdentitySpec(
    "multisum_vs_enum",
    lambda p, n, b: MS.multisum_gen(p["a"], p["m"], n),
    lambda p, n, b: _collapse(p["a"], p["m"], n, b),
    20, ("multisum", "enumeration"),
    {"a": Param(1, 1, 6), "m": Param(2, 1, 6)},
    "multisum equals the enumerated generating function",
    enumerative=True, check=_enum_am_check))

_register(IdentitySpec(
    "gen1_form",
    lambda p, n, b: MS.gen1_sum(p["a"], p["m"], n),
    lambda p, n, b: MS.multisum_gen(p["a"], p["m"], n),
    30, ("multisum",), AM,
    "form with the first index summed out equals the full multisum", check=_am_check))

_register(IdentitySpec(
    "bivariate_12",
    lambda p, n, b: gf_lambda(1, 2, n, b),
    lambda p, n, b: lambda12_product(n),
    24, ("enumeration", "bivariate", "product"), {},
    "x-graded Lambda^{1,2} generating function equals its product", enumerative=True))

_register(IdentitySpec(
    "bivariate_22",
    lambda p, n, b: gf_lambda(2, 2, n, b) * 2,
    lambda p, n, b: lambda22_product_doubled(n),
    24, ("enumeration", "bivariate", "product"), {},
    "x-graded Lambda^{2,2} generating function (doubled) equals its product",
    enumerative=True))

for _a in (1, 2):
    _register(IdentitySpec(
        f"corollary_14_a{_a}",
        (lambda a: lambda p, n, b: gf_lambda(a, 2, n, b).x_slice(p["omega"]))(_a),
        (lambda a: lambda p, n, b: _slice_product(a, p["omega"], n))(_a),
        24, ("enumeration", "slice", "product"),
        {"omega": Param(1, -6, 6, "x exponent")},
        f"omega-slice of Lambda^{{{_a},2}} is a shifted product", enumerative=True))

_register(IdentitySpec(
    "special_g1",
    lambda p, n, b: _collapse(1, 2, n, b),
    lambda p, n, b: poch_infinite(_neg(1), 1, n) * poch_infinite(_neg(1), 2, n),
    24, ("enumeration", "product"), {},
    "|Lambda^{1,2}(n)| generating function is (-q;q)(-q;q^2)", enumerative=True))

_register(IdentitySpec(
    "special_g2",
    lambda p, n, b: _collapse(2, 2, n, b),
    lambda p, n, b: poch_infinite(_neg(1), 1, n) * poch_infinite(_neg(2), 2, n),
    24, ("enumeration", "product"), {},
    "|Lambda^{2,2}(n)| generating function is (-q;q)(-q^2;q^2)", enumerative=True))


def _parity_rhs(a, parity, n):
    base = _ratio([_neg(2)], [q(2)], 2, n)
    if a == 1 and parity == 0:
        return base * poch_infinite(_neg(4), 8, n) ** 2 * poch_infinite(q(8), 8, n)
    if a == 1:
        return (base * poch_infinite(q(16), 16, n) ** 2
                * poch_infinite(q(8), 8, n).invert()).shift(1, 0, 2).truncate(n)
    if parity == 0:
        return base * poch_multi([_neg(6), _neg(10), q(16)], 16, n)
    return (base * poch_multi([_neg(2), _neg(14), q(16)], 16, n)).shift(1).truncate(n)


for _a in (1, 2):
    for _par, _name in ((0, "even"), (1, "odd")):
        _register(IdentitySpec(
            f"parity_a{_a}_{_name}",
            (lambda a, par: lambda p, n, b: _collapse(a, 2, n, b).q_parity(par))(_a, _par),
            (lambda a, par: lambda p, n, b: _parity_rhs(a, par, n))(_a, _par),
            24, ("enumeration", "dissection", "product"), {},
            f"{_name}-n part of |Lambda^{{{_a},2}}(n)| as a single product",
            enumerative=True))


def _phi_sum(p, n, b):
    terms = {}
    k = 0
    while k * k <= n:
        for s in {k, -k}:
            terms[(k * k, 0)] = terms.get((k * k, 0), 0) + _sign(s)
        k += 1
    return QSeries(terms, n)


def _phi_dissected(p, n, b):
    even = (poch_infinite(q(8), 8, n) ** 5
            * (poch_infinite(q(4), 4, n) ** 2 * poch_infinite(q(16), 16, n) ** 2).invert())
    odd = poch_infinite(q(16), 16, n) ** 2 * poch_infinite(q(8), 8, n).invert()
    return even - odd.shift(1, 0, 2).truncate(n)


_register(IdentitySpec(
    "dissection_phi", _phi_sum, _phi_dissected,
    60, ("dissection", "theta", "product"), {},
    "two-dissection of sum (-1)^n q^{n^2}"))


def _qq_dissected(p, n, b):
    first = poch_multi([q(12), q(20)], 32, n) * poch_multi([q(2), q(14), q(16)], 16, n)
    second = poch_multi([q(4), q(28)], 32, n) * poch_multi([q(6), q(10), q(16)], 16, n)
    return first - second.shift(1).truncate(n)


_register(IdentitySpec(
    "dissection_qq",
    lambda p, n, b: poch_infinite(q(1), 1, n), _qq_dissected,
    60, ("dissection", "product"), {},
    "two-dissection of (q;q)_inf"))

_register(IdentitySpec(
    "corollary_double_sum_1",
    lambda p, n, b: MS.double_sum_a1(n),
    lambda p, n, b: _ratio([_neg(2)], [q(2)], 2, n),
    60, ("double-sum", "product"), {},
    "double q-Pochhammer sum equals (-q^2;q^2)/(q^2;q^2)",
    oracle=lambda p, n, b: gf_lambda(1, 2, n, b).x_slice(0)))

_register(IdentitySpec(
    "corollary_double_sum_2",
    lambda p, n, b: MS.double_sum_a2(n),
    lambda p, n, b: _ratio([_neg(1)], [q(2)], 2, n),
    60, ("double-sum", "product"), {},
    "two double sums together equal (-q;q^2)/(q^2;q^2)",
    oracle=lambda p, n, b: (lambda g: g.x_slice(0) + g.x_slice(1))(gf_lambda(2, 2, n, b))))

for _a in (1, 2):
    _register(IdentitySpec(
        f"triple_sum_{_a}",
        (lambda a: lambda p, n, b: MS.triple_sum_bivariate(a, n))(_a),
        (lambda a: lambda p, n, b: gf_lambda(a, 2, n, b))(_a),
        20, ("triple-sum", "enumeration", "bivariate"), {},
        f"triple sum built from g_N and f_N equals the Lambda^{{{_a},2}} enumeration",
        enumerative=True))

_register(IdentitySpec(
    "coeff_extract",
    lambda p, n, b: MS.coeff_formula(p["a"], p["omega"], n),
    lambda p, n, b: MS.triple_sum_bivariate(p["a"], n).x_slice(p["omega"]),
    36, ("triple-sum", "slice"),
    {"a": Param(1, 1, 2), "omega": Param(1, -6, 6)},
    "explicit double sum for [x^omega] equals the triple-sum slice",
    oracle=lambda p, n, b: gf_lambda(p["a"], 2, n, b).x_slice(p["omega"])))


# bilateral relations, stacked over |omega| <= omega_max

OMEGA_MAX = {"omega_max": Param(4, 0, 8, "checks every |omega| <= omega_max")}


def _omegas(p):
    return range(-p["omega_max"], p["omega_max"] + 1)


_register(IdentitySpec(
    "H_plus_relation",
    lambda p, n, b: _stack({w: MS.bilateral_H(1, w, n) + MS.bilateral_H(1, -w, n)
                            for w in _omegas(p)}, n),
    lambda p, n, b: _stack({w: (_ratio([_neg(2)], [q(2)], 2, n) * 2).shift(w * w)
                            for w in _omegas(p)}, n),
    40, ("bilateral", "product"), OMEGA_MAX,
    "H+_w + H+_{-w} = 2 q^{w^2} (-q^2;q^2)/(q^2;q^2)"))

_register(IdentitySpec(
    "H_minus_symmetry",
    lambda p, n, b: _stack({w: MS.bilateral_H(-1, w, n) for w in _omegas(p)}, n),
    lambda p, n, b: _stack({w: MS.bilateral_H(-1, -w, n) for w in _omegas(p)}, n),
    40, ("bilateral",), OMEGA_MAX, "H-_w = H-_{-w}"))

_register(IdentitySpec(
    "I_minus_relation",
    lambda p, n, b: _stack({w: MS.bilateral_I(-1, w, n) - MS.bilateral_I(-1, 1 - w, n)
                            for w in _omegas(p)}, n),
    lambda p, n, b: _stack({w: (_ratio([q(1)], [q(2)], 2, n) * _sign(w)).shift(w * w - w)
                            for w in _omegas(p)}, n),
    40, ("bilateral", "product"), OMEGA_MAX,
    "I-_w - I-_{1-w} = (-1)^w q^{w^2-w} (q;q^2)/(q^2;q^2)"))

_register(IdentitySpec(
    "I_plus_relation",
    lambda p, n, b: _stack({w: MS.bilateral_I(1, w, n) + MS.bilateral_I(1, 1 - w, n)
                            for w in _omegas(p)}, n),
    lambda p, n, b: _stack({w: _ratio([_neg(1)], [q(2)], 2, n).shift(w * w - w)
                            for w in _omegas(p)}, n),
    40, ("bilateral", "product"), OMEGA_MAX,
    "I+_w + I+_{1-w} = q^{w^2-w} (-q;q^2)/(q^2;q^2)"))

_register(IdentitySpec(
    "I_sign_flip",
    lambda p, n, b: _stack({w: MS.bilateral_I(1, w, n) for w in _omegas(p)}, n),
    lambda p, n, b: _stack({w: MS.bilateral_I(-1, w, n).neg_q() * _sign(w)
                            for w in _omegas(p)}, n),
    40, ("bilateral",), OMEGA_MAX, "I+_w(q) = (-1)^w I-_w(-q)"))

_register(IdentitySpec(
    "S1M_S2M_closed",
    lambda p, n, b: (lambda s: _stack({0: s[0], 1: s[1]}, n))(MS.S1M_S2M(p["M"], n)),
    lambda p, n, b: (lambda c: _stack({0: c, 1: c}, n))(_s_closed(p["M"], n)),
    60, ("finite-sum", "closed-form"), {"M": Param(3, 1, 20)},
    "both finite sums over r + s = M equal the closed form"))


def _s_closed(M, n):
    e = M * (M + 3) // 2
    body = (poch_finite(_neg(1), 1, M - 1, n)
            * (poch_finite(q(1), 2, M, n) * poch_finite(q(1), 1, M, n)).invert())
    return body.shift(e).truncate(n)


_register(IdentitySpec(
    "symmetry",
    lambda p, n, b: MS.symmetry_sides(p["a"], p["m"], n)[0],
    lambda p, n, b: MS.symmetry_sides(p["m"] - p["a"], p["m"], n)[0],
    40, ("multisum", "symmetry"),
    {"a": Param(1, 1, 7), "m": Param(3, 2, 8)},
    "the shifted chain is invariant under a -> m - a",
    check=lambda p: None if p["a"] < p["m"] else "need a < m"))

FAMILY = {"family": Param(0, 0, 1, "0: F = 1, 1: F(N) = q^{N(N+1)/2}")}

_register(IdentitySpec(
    "transformation",
    lambda p, n, b: MS.transformation_sides(p["a"], _family(p), n)[0],
    lambda p, n, b: MS.transformation_sides(p["a"], _family(p), n)[1],
    40, ("multisum", "transformation"),
    {"a": Param(1, 1, 4), **FAMILY},
    "shifted 2a-chain equals the chain with binom(N,2) at even indices"))

_register(IdentitySpec(
    "transformation_base",
    lambda p, n, b: MS.transformation_sides(1, _family(p), n)[1],
    lambda p, n, b: MS.transformation_base(_family(p), n),
    40, ("multisum", "transformation"), FAMILY,
    "two-index chain summed by the q-binomial theorem"))

_register(IdentitySpec(
    "andrews",
    lambda p, n, b: MS.andrews_kimyee_sum(p["a"], 2 * p["m"], n),
    lambda p, n, b: product_ariki_mathas(p["a"], 2 * p["m"], n),
    40, ("multisum", "product"),
    {"a": Param(1, 0, 4), "m": Param(2, 1, 4)},
    "even-length chain with a binom(N,2) exponents equals the modulus 2m+2 product",
    check=_am_check))

_register(IdentitySpec(
    "kimyee",
    lambda p, n, b: MS.andrews_kimyee_sum(p["a"], 2 * p["m"] - 1, n),
    lambda p, n, b: product_ariki_mathas(p["a"], 2 * p["m"] - 1, n),
    40, ("multisum", "product"),
    {"a": Param(1, 0, 4), "m": Param(2, 1, 4)},
    "odd-length chain with a binom(N,2) exponents equals the modulus 2m+1 product",
    check=lambda p: None if p["a"] + 1 <= p["m"] else "need a + 1 <= m"))


def _decomp(p, n):
    prefix = [p["k"]] * (p["a"] - 1)
    return MS.S_decomposition(prefix, [1] * p["tail"], _family(p), n)


_register(IdentitySpec(
    "S_decomposition",
    lambda p, n, b: _decomp(p, n)[0],
    lambda p, n, b: _decomp(p, n)[1],
    30, ("lemma", "multisum"),
    {"a": Param(2, 2, 5), "k": Param(1, 0, 3), "tail": Param(0, 0, 3), **FAMILY},
    "raising the index after a constant prefix splits the chain in two"))

_register(IdentitySpec(
    "lemma_first_step",
    lambda p, n, b: MS.lemma_first_step(p["m"], p["a"], [1, 1], _family(p), n)[0],
    lambda p, n, b: MS.lemma_first_step(p["m"], p["a"], [1, 1], _family(p), n)[1],
    30, ("lemma", "multisum"),
    {"m": Param(0, 0, 2), "a": Param(2, 1, 4), **FAMILY},
    "difference of adjacent raised chains is the fully raised chain"))

_register(IdentitySpec(
    "lemma_shift_difference",
    lambda p, n, b: MS.lemma_shift_difference(p["m"], p["a"], p["i"], [1, 1], _family(p), n)[0],
    lambda p, n, b: MS.lemma_shift_difference(p["m"], p["a"], p["i"], [1, 1], _family(p), n)[1],
    30, ("lemma", "multisum"),
    {"m": Param(0, 0, 2), "a": Param(2, 2, 4), "i": Param(2, 2, 4), **FAMILY},
    "moving a raised block keeps its difference with the left neighbour",
    check=lambda p: None if p["i"] <= p["a"] else "need i <= a"))

_register(IdentitySpec(
    "lemma_block_sums",
    lambda p, n, b: MS.lemma_block_sums(p["m"], p["a"], p["i"], [1, 1], _family(p), n)[0],
    lambda p, n, b: MS.lemma_block_sums(p["m"], p["a"], p["i"], [1, 1], _family(p), n)[1],
    30, ("lemma", "multisum"),
    {"m": Param(0, 0, 2), "a": Param(2, 1, 4), "i": Param(1, 1, 4), **FAMILY},
    "sums of growing raised blocks from two starting points agree",
    check=lambda p: None if p["i"] <= p["a"] else "need i <= a"))

_register(IdentitySpec(
    "block_shift",
    lambda p, n, b: MS.block_shift_sides(p["b"], _family(p), n)[0],
    lambda p, n, b: MS.block_shift_sides(p["b"], _family(p), n)[1],
    30, ("lemma", "multisum"),
    {"b": Param(2, 2, 4), **FAMILY},
    "raised-block sums starting at b and at b - 1 agree"))

_register(IdentitySpec(
    "jtp",
    lambda p, n, b: jacobi_triple(*JTP_CHOICES[p["z"]], n)[0],
    lambda p, n, b: jacobi_triple(*JTP_CHOICES[p["z"]], n)[1],
    40, ("classical", "theta"),
    {"z": Param(0, 0, len(JTP_CHOICES) - 1, "0: -q (r=1), 1: q^2/x, 2: x, 3: -xq (r=2)")},
    "triple product equals its bilateral sum"))

_register(IdentitySpec(
    "wellpoised",
    lambda p, n, b: MS.wellpoised_sides(p["alpha"], p["beta"], n)[0],
    lambda p, n, b: MS.wellpoised_sides(p["alpha"], p["beta"], n)[1],
    30, ("classical", "hypergeometric"),
    {"alpha": Param(1, 1, 5), "beta": Param(1, 1, 6)},
    "specialized well-poised 2phi1 evaluation"))

_register(IdentitySpec(
    "qbin_theorem", _qbin_lhs, _qbin_rhs,
    40, ("classical", "q-binomial"),
    {"N": Param(6, 0, 12), "z": Param(0, 0, len(QBIN_Z) - 1, "0: q, 1: x, 2: -q^2, 3: xq")},
    "finite q-binomial theorem"))

_register(IdentitySpec(
    "qbin_series", _qser_lhs, _qser_rhs,
    30, ("classical", "q-binomial"),
    {"a": Param(0, 0, len(QSER_A) - 1, "0: q, 1: -q, 2: x"),
     "z": Param(0, 0, len(QSER_Z) - 1, "0: q, 1: xq, 2: q^2")},
    "infinite q-binomial theorem"))

_register(IdentitySpec(
    "rogers_szego",
    lambda p, n, b: rogers_szego_sides(p["n"])[0].truncate(n),
    lambda p, n, b: rogers_szego_sides(p["n"])[1].truncate(n),
    60, ("classical", "polynomial"), {"n": Param(5, 0, 10)},
    "two finite forms of the Rogers-Szego polynomial"))

_register(IdentitySpec(
    "odd_position_closed",
    lambda p, n, b: B_series(p["N"], p["k"], n)[0],
    lambda p, n, b: B_series(p["N"], p["k"], n)[1],
    36, ("partition-statistic", "closed-form"),
    {"N": Param(6, 0, 10), "k": Param(1, -10, 10)},
    "distinct parts <= N with odd-position excess k: brute force vs Gaussian form"))

_register(IdentitySpec(
    "alternating_sum_closed",
    lambda p, n, b: g_series(p["N"], n)[0],
    lambda p, n, b: g_series(p["N"], n)[1],
    36, ("partition-statistic", "closed-form", "bivariate"),
    {"N": Param(6, 0, 10)},
    "partitions with parts <= N weighted by alternating sum: brute force vs closed form"))

_register(IdentitySpec(
    "alternating_sum_forms",
    lambda p, n, b: g_series(p["N"], n)[1],
    lambda p, n, b: g_series(p["N"], n)[2],
    36, ("partition-statistic", "closed-form", "bivariate"),
    {"N": Param(6, 0, 10)},
    "two closed forms of the alternating-sum generating function agree"))


# public API

def list_identities() -> list[dict]:
    return [spec.describe() for spec in REGISTRY.values()]


def get(identity: str) -> IdentitySpec:
    try:
        return REGISTRY[identity]
    except KeyError:
        raise UnknownIdentity(identity) from None


def _perturbed(s: QSeries, order: int) -> QSeries:
    return s + QSeries({(order, 0): 1}, order)


def verify(identity: str, params: Mapping | None = None, order: int | None = None,
           perturb: bool = False, oracle: bool = False,
           budget: int | None = None) -> IdentityReport:
    """Build both sides and compare them exactly.

    ``perturb`` adds q^order to the right side (independence audit).
    ``oracle`` also recomputes the left side by enumeration where an
    enumeration counterpart exists, up to the enumeration ceiling.
    """
    spec = get(identity)
    p = spec.resolve(params)
    order = spec.default_order if order is None else int(order)
    if order < 0:
        raise BadParameters("order must be nonnegative")
    start = time.perf_counter()
    lhs = spec.lhs(p, order, budget)
    rhs = spec.rhs(p, order, budget)
    if perturb:
        rhs = _perturbed(rhs, order)
    diff = lhs.first_difference(rhs, order)
    message = ""
    if diff is None and oracle and spec.oracle is not None:
        o = min(order, enumeration_ceiling(spec.oracle_m(p), budget))
        diff = spec.oracle(p, o, budget).first_difference(lhs, o)
        message = f"oracle checked to q^{o}" if diff is None else "oracle disagrees"
    elapsed = time.perf_counter() - start
    status = Status.MATCH if diff is None else Status.MISMATCH
    return IdentityReport(spec.id, p, order, status, diff, elapsed, message)


def _safe_verify(args) -> IdentityReport:
    identity, params, order, oracle, budget = args
    start = time.perf_counter()
    try:
        return verify(identity, params, order, oracle=oracle, budget=budget)
    except RRVerifyError as exc:
        return IdentityReport(identity, dict(params or {}), order or 0, Status.ERROR,
                              None, time.perf_counter() - start,
                              f"{type(exc).__name__}: {exc}")


def run_all(order: int | None = None, jobs: int = 1, oracle: bool = False,
            budget: int | None = None, ids=None) -> list[IdentityReport]:
    """Verify every entry with default parameters; reports come back in registry order.

    Errors (for example an order beyond the enumeration budget) become
    ERROR reports instead of stopping the batch.
    """
    tasks = []
    for spec in REGISTRY.values():
        if ids is not None and spec.id not in ids:
            continue
        n = spec.default_order if order is None else order
        tasks.append((spec.id, None, n, oracle, budget))
    if jobs <= 1:
        return [_safe_verify(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_safe_verify, tasks))


__all__ = [
    "IdentityReport", "IdentitySpec", "Param", "REGISTRY", "Status",
    "get", "lambda12_product", "lambda22_product_doubled", "list_identities",
    "run_all", "verify",
]
