"""Sparse multivariate polynomials over the scalar fields, plus polynomial systems.

Monomials are dense exponent tuples.  A :class:`PolyRing` fixes the variable
names and the monomial order; every :class:`Polynomial` points at its ring.
"""

from __future__ import annotations

import itertools
import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .scalars import RatFun, Scalar, needs_parens, scalar_sign, scalar_str

Monomial = tuple

ORDERS = ("grevlex", "grlex", "lex")
ORDER_ENV = "BINOMIALITY_ORDER"


def default_order() -> str:
    order = os.environ.get(ORDER_ENV, "grevlex")
    if order not in ORDERS:
        raise ValueError(f"{ORDER_ENV}={order!r} is not one of {ORDERS}")
    return order


def _grevlex_key(m):
    return (sum(m), tuple(-e for e in reversed(m)))


def _grlex_key(m):
    return (sum(m), m)


def _lex_key(m):
    return m


_KEYS = {"grevlex": _grevlex_key, "grlex": _grlex_key, "lex": _lex_key}


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True if a divides b."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomials_of_degree(n: int, d: int) -> Iterable[Monomial]:
    """All exponent vectors of length n and total degree d."""
    if n == 0:
        if d == 0:
            yield ()
        return
    for bars in itertools.combinations(range(d + n - 1), n - 1):
        prev = -1
        exps = []
        for b in bars:
            exps.append(b - prev - 1)
            prev = b
        exps.append(d + n - 2 - prev)
        yield tuple(exps)


@dataclass(frozen=True)
class PolyRing:
    variables: tuple
    order: str = "grevlex"

    def __post_init__(self):
        if self.order not in ORDERS:
            raise ValueError(f"unknown monomial order {self.order!r}")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def key(self, m: Monomial):
        return _KEYS[self.order](m)

    def sort_desc(self, monos: Iterable[Monomial]) -> list:
        return sorted(monos, key=self.key, reverse=True)

    def one(self) -> Monomial:
        return (0,) * self.nvars

    def var_mono(self, i: int) -> Monomial:
        return tuple(1 if j == i else 0 for j in range(self.nvars))

    def gen(self, name: str) -> "Polynomial":
        return Polynomial(self, {self.var_mono(self.variables.index(name)): Fraction(1)})

    def gens(self) -> list:
        return [self.gen(v) for v in self.variables]

    def const(self, c) -> "Polynomial":
        return Polynomial(self, {self.one(): c})

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def monomial(self, m: Monomial, c=1) -> "Polynomial":
        return Polynomial(self, {tuple(m): c})

    def monomials_of_degree(self, d: int) -> list:
        """Degree-d monomials in ascending order."""
        return sorted(monomials_of_degree(self.nvars, d), key=self.key)

    def mono_str(self, m: Monomial) -> str:
        parts = [v if e == 1 else f"{v}^{e}" for v, e in zip(self.variables, m) if e]
        return "*".join(parts) if parts else "1"

    def with_order(self, order: str) -> "PolyRing":
        return PolyRing(self.variables, order)

    def parse(self, text: str, params: Sequence[str] = ()) -> "Polynomial":
        from .parsing import parse_polynomial

        return parse_polynomial(text, self, params)


class Polynomial:
    """Immutable sparse polynomial: map from monomial to nonzero scalar."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms=None):
        self.ring = ring
        clean = {}
        if terms:
            for m, c in terms.items():
                if not isinstance(c, RatFun):
                    c = Fraction(c)
                if c != 0:
                    clean[tuple(m)] = c
        self.terms: dict = clean

    @classmethod
    def _raw(cls, ring, terms) -> "Polynomial":
        p = cls.__new__(cls)
        p.ring = ring
        p.terms = terms
        return p

    # -- structure ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) <= 1

    def is_binomial(self) -> bool:
        return len(self.terms) <= 2

    def degree(self):
        if not self.terms:
            return None
        return max(sum(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def monomials(self) -> list:
        """Monomials in descending order."""
        return self.ring.sort_desc(self.terms)

    def sorted_terms(self) -> list:
        return [(m, self.terms[m]) for m in self.monomials()]

    def lm(self) -> Monomial:
        return max(self.terms, key=self.ring.key)

    def lc(self) -> Scalar:
        return self.terms[self.lm()]

    def coeff(self, m: Monomial) -> Scalar:
        return self.terms.get(tuple(m), Fraction(0))

    def param_names(self) -> set:
        out = set()
        for c in self.terms.values():
            if isinstance(c, RatFun):
                out |= c.names()
        return out

    # -- arithmetic -----------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError("polynomials from different rings")
            return other
        return self.ring.const(other)

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        a, b = (self, other) if len(self.terms) >= len(other.terms) else (other, self)
        out = dict(a.terms)
        for m, c in b.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v == 0:
                    del out[m]
                else:
                    out[m] = v
        return Polynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(other)
        other = self._coerce(other)
        out: dict = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = mono_mul(ma, mb)
                v = out.get(m)
                v = ca * cb if v is None else v + ca * cb
                if v == 0:
                    out.pop(m, None)
                else:
                    out[m] = v
        return Polynomial._raw(self.ring, out)

    def __rmul__(self, other) -> "Polynomial":
        return self.scale(other)

    def __truediv__(self, c) -> "Polynomial":
        return self.scale(1 / c if not isinstance(c, RatFun) else c.inverse())

    def __pow__(self, n: int) -> "Polynomial":
        out = self.ring.const(1)
        for _ in range(n):
            out = out * self
        return out

    def scale(self, c) -> "Polynomial":
        if c == 0:
            return Polynomial._raw(self.ring, {})
        if c == 1:
            return self
        return Polynomial._raw(self.ring, {m: v * c for m, v in self.terms.items()})

    def mul_monomial(self, m: Monomial, c=1) -> "Polynomial":
        """Multiply by the term c*x^m."""
        if c == 0:
            return Polynomial._raw(self.ring, {})
        return Polynomial._raw(self.ring, {mono_mul(m, k): v * c for k, v in self.terms.items()})

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        lc = self.lc()
        return self.scale(1 / lc if not isinstance(lc, RatFun) else lc.inverse())

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            if self.ring.variables != other.ring.variables or len(self.terms) != len(other.terms):
                return False
            for m, c in self.terms.items():
                d = other.terms.get(m)
                if d is None or c != d:
                    return False
            return True
        if isinstance(other, (int, Fraction, RatFun)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring.variables, frozenset(self.terms)))

    # -- substitutions --------------------------------------------------
    def subs_one(self, var: int) -> "Polynomial":
        """Set variable index `var` to 1 (dehomogenization)."""
        out: dict = {}
        for m, c in self.terms.items():
            k = m[:var] + (0,) + m[var + 1:]
            v = out.get(k)
            v = c if v is None else v + c
            if v == 0:
                out.pop(k, None)
            else:
                out[k] = v
        return Polynomial._raw(self.ring, out)

    def change_ring(self, ring: PolyRing, mapping: Sequence[int] | None = None) -> "Polynomial":
        """Move to another ring.  `mapping[i]` is the target index of variable i."""
        if mapping is None:
            mapping = [ring.variables.index(v) for v in self.ring.variables]
        out = {}
        for m, c in self.terms.items():
            e = [0] * ring.nvars
            for i, x in enumerate(m):
                if x:
                    if mapping[i] is None:
                        raise ValueError(f"variable {self.ring.variables[i]} missing from target ring")
                    e[mapping[i]] += x
            out[tuple(e)] = c
        return Polynomial._raw(ring, out)

    # -- text -----------------------------------------------------------
    def to_str(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            neg = scalar_sign(c) < 0
            if neg:
                c = -c
            mono = self.ring.mono_str(m)
            if mono == "1":
                body = f"({scalar_str(c)})" if isinstance(c, RatFun) and needs_parens(c) else scalar_str(c)
            elif c == 1:
                body = mono
            else:
                cs = scalar_str(c)
                if needs_parens(c) and isinstance(c, RatFun):
                    cs = f"({cs})"
                body = f"{cs}*{mono}"
            if i == 0:
                parts.append("-" + body if neg else body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    __str__ = to_str

    def __repr__(self):
        return f"Polynomial({self.to_str()!r})"


def same_up_to_scaling(p: Polynomial, q: Polynomial) -> bool:
    """True when p = c*q for a nonzero scalar c."""
    if len(p.terms) != len(q.terms) or set(p.terms) != set(q.terms):
        return False
    if not p.terms:
        return True
    return p.monic() == q.monic()


def mono_to_poly(ring: PolyRing, m: Monomial) -> Polynomial:
    return Polynomial._raw(ring, {tuple(m): Fraction(1)})


@dataclass(frozen=True)
class PolySystem:
    """An ordered list of generators over a common variable/parameter context."""

    ring: PolyRing
    params: tuple = ()
    generators: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "params", tuple(self.params))
        for g in self.generators:
            if g.ring.variables != self.ring.variables:
                raise ValueError("generator ring does not match system ring")

    @classmethod
    def from_strings(cls, variables, gens: Iterable[str], params=(), order=None) -> "PolySystem":
        ring = PolyRing(tuple(variables), order or default_order())
        return cls(ring, tuple(params), tuple(ring.parse(g, params) for g in gens))

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __getitem__(self, i):
        return self.generators[i]

    def normalized(self) -> "PolySystem":
        """Drop zero generators."""
        return self.with_generators([g for g in self.generators if not g.is_zero()])

    def with_generators(self, gens) -> "PolySystem":
        return PolySystem(self.ring, self.params, tuple(gens))

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def is_binomial_system(self) -> bool:
        return all(g.is_binomial() for g in self.generators)

    def degrees(self) -> list:
        return [g.degree() for g in self.generators]

    def homogenize(self, var: str) -> "PolySystem":
        return homogenize(self, var)

    def dehomogenize(self, var: str) -> "PolySystem":
        return dehomogenize(self, var)

    def to_text(self) -> str:
        lines = [f"vars: {', '.join(self.ring.variables)}"]
        if self.params:
            lines.append(f"params: {', '.join(self.params)}")
        lines.append(f"order: {self.ring.order}")
        lines.extend(g.to_str() for g in self.generators)
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "vars": list(self.ring.variables),
            "params": list(self.params),
            "order": self.ring.order,
            "generators": [g.to_str() for g in self.generators],
        }

    @classmethod
    def from_json(cls, data) -> "PolySystem":
        if isinstance(data, str):
            data = json.loads(data)
        return cls.from_strings(data["vars"], data["generators"], data.get("params", ()), data.get("order"))


def homogenize(system: PolySystem, var: str) -> PolySystem:
    """Homogenize each generator with a fresh last variable `var`."""
    if var in system.ring.variables:
        raise ValueError(f"homogenizing variable {var!r} already present")
    ring = PolyRing(system.ring.variables + (var,), system.ring.order)
    gens = []
    for g in system.generators:
        d = g.degree()
        gens.append(Polynomial._raw(ring, {m + (d - sum(m),): c for m, c in g.terms.items()}))
    return PolySystem(ring, system.params, tuple(gens))


def dehomogenize_poly(p: Polynomial, var: str, ring: PolyRing | None = None) -> Polynomial:
    i = p.ring.variables.index(var)
    if ring is None:
        ring = PolyRing(p.ring.variables[:i] + p.ring.variables[i + 1:], p.ring.order)
    out: dict = {}
    for m, c in p.terms.items():
        k = m[:i] + m[i + 1:]
        v = out.get(k)
        v = c if v is None else v + c
        if v == 0:
            out.pop(k, None)
        else:
            out[k] = v
    return Polynomial._raw(ring, out)


def dehomogenize(system: PolySystem, var: str) -> PolySystem:
    """Substitute 1 for `var` and drop it from the ring."""
    if var not in system.ring.variables:
        raise ValueError(f"unknown variable {var!r}")
    i = system.ring.variables.index(var)
    ring = PolyRing(system.ring.variables[:i] + system.ring.variables[i + 1:], system.ring.order)
    return PolySystem(ring, system.params, tuple(dehomogenize_poly(g, var, ring) for g in system.generators))


def fresh_variable(ring: PolyRing, base: str = "h") -> str:
    if base not in ring.variables:
        return base
    i = 0
    while f"{base}{i}" in ring.variables:
        i += 1
    return f"{base}{i}"
