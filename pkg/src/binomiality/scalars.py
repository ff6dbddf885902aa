"""Exact coefficient fields: rationals and rational functions in named parameters.

Rationals are plain :class:`fractions.Fraction` values.  Rational functions are
:class:`RatFun` instances whose numerator and denominator are :class:`ParamPoly`
objects.  Every arithmetic result that turns out to be constant is demoted back
to a ``Fraction``, so ``x == 0`` is a valid zero test for any scalar.

Parameters are treated as algebraically independent, so every nonzero
``ParamPoly`` is invertible.
"""

from __future__ import annotations

import functools
import re
from fractions import Fraction
from typing import Union

__all__ = [
    "Fraction",
    "ParamPoly",
    "RatFun",
    "Scalar",
    "ScalarDivisionError",
    "as_scalar",
    "gcd_reduction",
    "is_scalar",
    "param",
    "ratfun_reduce",
    "scalar_str",
    "set_gcd_reduction",
]

# a parameter monomial: tuple of (name, exponent) pairs sorted by name
PKey = tuple


class ScalarDivisionError(ZeroDivisionError):
    """Raised when dividing by an exactly-zero scalar."""


_GCD = {"enabled": True}


def set_gcd_reduction(enabled: bool) -> None:
    """Switch full multivariate gcd reduction of rational functions on or off."""
    _GCD["enabled"] = bool(enabled)


def gcd_reduction() -> bool:
    return _GCD["enabled"]


def _natural_key(name: str):
    return tuple(int(t) if t.isdigit() else t for t in re.split(r"(\d+)", name) if t)


@functools.total_ordering
class _LexKey:
    """Lexicographic comparison of sparse parameter monomials.

    Parameters are ranked by natural name order (``k2`` before ``k10``); the
    monomial with the larger exponent at the first differing parameter wins.
    """

    __slots__ = ("exps",)

    def __init__(self, key: PKey):
        self.exps = dict(key)

    def __eq__(self, other):
        return self.exps == other.exps

    def __lt__(self, other):
        names = sorted(set(self.exps) | set(other.exps), key=_natural_key)
        for n in names:
            a, b = self.exps.get(n, 0), other.exps.get(n, 0)
            if a != b:
                return a < b
        return False


def _pkey_order(key: PKey):
    return (sum(e for _, e in key), _LexKey(key))


def _pkey_mul(a: PKey, b: PKey) -> PKey:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for n, e in b:
        d[n] = d.get(n, 0) + e
    return tuple(sorted(d.items()))


class ParamPoly:
    """Sparse polynomial in named parameters with rational coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        self.terms: dict[PKey, Fraction] = {}
        if terms:
            for k, c in terms.items():
                if c:
                    self.terms[k] = Fraction(c)
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "ParamPoly":
        p = cls.__new__(cls)
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c) -> "ParamPoly":
        return cls._raw({(): Fraction(c)} if c else {})

    @classmethod
    def symbol(cls, name: str) -> "ParamPoly":
        return cls._raw({((name, 1),): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def constant_value(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def names(self) -> set:
        return {n for k in self.terms for n, _ in k}

    def leading(self):
        """(key, coeff) of the greatest term under graded lex."""
        k = max(self.terms, key=_pkey_order)
        return k, self.terms[k]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _pkey_order(kv[0]), reverse=True)

    def __eq__(self, other):
        if isinstance(other, ParamPoly):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __neg__(self):
        return ParamPoly._raw({k: -c for k, c in self.terms.items()})

    def __add__(self, other: "ParamPoly") -> "ParamPoly":
        if len(self.terms) < len(other.terms):
            self, other = other, self
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k)
            if v is None:
                out[k] = c
            else:
                v += c
                if v:
                    out[k] = v
                else:
                    del out[k]
        return ParamPoly._raw(out)

    def __sub__(self, other: "ParamPoly") -> "ParamPoly":
        return self + (-other)

    def __mul__(self, other: "ParamPoly") -> "ParamPoly":
        out: dict = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                k = _pkey_mul(ka, kb)
                v = out.get(k, 0) + ca * cb
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
        return ParamPoly._raw(out)

    def scale(self, c: Fraction) -> "ParamPoly":
        if not c:
            return ParamPoly._raw({})
        return ParamPoly._raw({k: v * c for k, v in self.terms.items()})

    def __pow__(self, n: int) -> "ParamPoly":
        out = ParamPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def monomial_content(self) -> dict:
        """Largest parameter monomial dividing every term, as name -> exponent."""
        it = iter(self.terms)
        common = dict(next(it))
        for k in it:
            d = dict(k)
            common = {n: min(e, d[n]) for n, e in common.items() if n in d}
            if not common:
                break
        return common

    def divide_monomial(self, mono: dict) -> "ParamPoly":
        if not mono:
            return self
        out = {}
        for k, c in self.terms.items():
            d = dict(k)
            for n, e in mono.items():
                d[n] -= e
            out[tuple(sorted((n, e) for n, e in d.items() if e))] = c
        return ParamPoly._raw(out)

    def to_str(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for i, (k, c) in enumerate(self.sorted_terms()):
            sign = "-" if c < 0 else "+"
            body = _term_str(abs(c), k)
            if i == 0:
                parts.append(body if sign == "+" else "-" + body)
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    __str__ = to_str

    def __repr__(self):
        return f"ParamPoly({self.to_str()!r})"


def _term_str(c: Fraction, key: PKey) -> str:
    mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in sorted(key, key=lambda p: _natural_key(p[0])))
    if not mono:
        return str(c)
    if c == 1:
        return mono
    return f"{c}*{mono}"


# --- gcd via sympy's sparse polynomial rings -------------------------------

@functools.lru_cache(maxsize=256)
def _sympy_ring(names: tuple):
    from sympy import QQ
    from sympy.polys.rings import ring

    return ring(",".join(names), QQ)[0]


def _to_sympy(p: ParamPoly, names: tuple, R):
    from sympy import QQ

    idx = {n: i for i, n in enumerate(names)}
    d = {}
    for k, c in p.terms.items():
        e = [0] * len(names)
        for n, x in k:
            e[idx[n]] = x
        d[tuple(e)] = QQ(c.numerator, c.denominator)
    return R.from_dict(d)


def _from_sympy(q, names: tuple) -> ParamPoly:
    out = {}
    for e, c in q.items():
        k = tuple((names[i], x) for i, x in enumerate(e) if x)
        out[tuple(sorted(k))] = Fraction(int(c.numerator), int(c.denominator))
    return ParamPoly._raw(out)


def _poly_cofactors(a: ParamPoly, b: ParamPoly):
    names = tuple(sorted(a.names() | b.names()))
    R = _sympy_ring(names)
    _, ca, cb = _to_sympy(a, names, R).cofactors(_to_sympy(b, names, R))
    return _from_sympy(ca, names), _from_sympy(cb, names)


def _proportional(a: ParamPoly, b: ParamPoly):
    """Return c with a == c*b, or None."""
    if len(a.terms) != len(b.terms):
        return None
    c = None
    for k, v in a.terms.items():
        w = b.terms.get(k)
        if w is None:
            return None
        r = v / w
        if c is None:
            c = r
        elif r != c:
            return None
    return c


class RatFun:
    """Quotient of two ParamPolys, kept in canonical form.

    Canonical form: common monomial content removed, the denominator's
    leading coefficient (graded lex) equals 1, and, when gcd reduction is on,
    numerator and denominator are coprime.  Instances never represent a
    constant; use :func:`ratfun_reduce` or the arithmetic operators, which
    demote constants to ``Fraction``.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: ParamPoly, den: ParamPoly | None = None):
        # trusted constructor; call ratfun_reduce for canonical form
        self.num = num
        self.den = den if den is not None else ParamPoly.const(1)
        self._hash = None

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, RatFun):
            if self.den == other.den:
                return _make(self.num + other.num, self.den)
            return _make(self.num * other.den + other.num * self.den, self.den * other.den)
        if isinstance(other, (int, Fraction)):
            if not other:
                return self
            return _make(self.num + self.den.scale(Fraction(other)), self.den, reduce=False)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return RatFun(-self.num, self.den)

    def __sub__(self, other):
        if isinstance(other, (RatFun, int, Fraction)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, RatFun):
            return _make(self.num * other.num, self.den * other.den)
        if isinstance(other, (int, Fraction)):
            if not other:
                return Fraction(0)
            return RatFun(self.num.scale(Fraction(other)), self.den)
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self):
        return _make(self.den, self.num)

    def __truediv__(self, other):
        if isinstance(other, RatFun):
            return _make(self.num * other.den, self.den * other.num)
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ScalarDivisionError("division by zero scalar")
            return RatFun(self.num.scale(1 / Fraction(other)), self.den)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = Fraction(1)
        for _ in range(n):
            out = out * self
        return out

    def __bool__(self):
        return True

    def __eq__(self, other):
        if isinstance(other, RatFun):
            if self.num == other.num and self.den == other.den:
                return True
            if gcd_reduction():
                return False
            return (self.num * other.den - other.num * self.den).is_zero()
        if isinstance(other, (int, Fraction)):
            if gcd_reduction():
                return False
            return (self.num - self.den.scale(Fraction(other))).is_zero()
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def names(self) -> set:
        return self.num.names() | self.den.names()

    def sign(self) -> int:
        return 1 if self.num.leading()[1] > 0 else -1

    def to_str(self) -> str:
        n = self.num.to_str()
        if self.den.is_constant():
            return n
        if len(self.num.terms) > 1:
            n = f"({n})"
        return f"{n}/({self.den.to_str()})"

    __str__ = to_str

    def __repr__(self):
        return f"RatFun({self.to_str()!r})"


Scalar = Union[Fraction, RatFun]


def ratfun_reduce(num: ParamPoly, den: ParamPoly, reduce: bool = True) -> Scalar:
    """Bring num/den to canonical form; constants come back as Fraction."""
    if den.is_zero():
        raise ScalarDivisionError("rational function with zero denominator")
    if num.is_zero():
        return Fraction(0)
    if den.is_constant():
        c = den.constant_value()
        if num.is_constant():
            return num.constant_value() / c
        return RatFun(num.scale(1 / c), ParamPoly.const(1))
    common = num.monomial_content()
    if common:
        dc = den.monomial_content()
        common = {n: min(e, dc[n]) for n, e in common.items() if n in dc}
        if common:
            num = num.divide_monomial(common)
            den = den.divide_monomial(common)
    ratio = _proportional(num, den)
    if ratio is not None:
        return ratio
    if reduce and gcd_reduction() and len(num.terms) > 1 and len(den.terms) > 1:
        num, den = _poly_cofactors(num, den)
    if den.is_constant():
        c = den.constant_value()
        if num.is_constant():
            return num.constant_value() / c
        return RatFun(num.scale(1 / c), ParamPoly.const(1))
    lc = den.leading()[1]
    if lc != 1:
        num, den = num.scale(1 / lc), den.scale(1 / lc)
    return RatFun(num, den)


def _make(num: ParamPoly, den: ParamPoly, reduce: bool = True) -> Scalar:
    return ratfun_reduce(num, den, reduce=reduce)


def param(name: str) -> RatFun:
    return RatFun(ParamPoly.symbol(name))


def is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction, RatFun)) and not isinstance(x, bool)


def as_scalar(x) -> Scalar:
    if isinstance(x, RatFun):
        return x
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    raise TypeError(f"not a scalar: {x!r}")


def scalar_inverse(x: Scalar) -> Scalar:
    if isinstance(x, RatFun):
        return x.inverse()
    if not x:
        raise ScalarDivisionError("inverse of zero")
    return 1 / Fraction(x)


def scalar_sign(x: Scalar) -> int:
    if isinstance(x, RatFun):
        return x.sign()
    return (x > 0) - (x < 0)


def scalar_str(x: Scalar) -> str:
    return x.to_str() if isinstance(x, RatFun) else str(Fraction(x))


def needs_parens(x: Scalar) -> bool:
    """True when the printed scalar must be wrapped to act as a factor."""
    if isinstance(x, RatFun):
        return len(x.num.terms) > 1 or not x.den.is_constant()
    return Fraction(x).denominator != 1
