"""Plain Buchberger algorithm, used only as a cross-check at desk scale.

Nothing on the detection path depends on this module.  Every entry point
refuses instances outside a small size guard unless the caller overrides it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .certificates import Certificate, add_into
from .polynomial import Polynomial, PolySystem, mono_div, mono_divides, mono_lcm
from .scalars import scalar_inverse


class GuardExceeded(RuntimeError):
    """The instance is too large for the oracle."""


@dataclass(frozen=True)
class Guard:
    max_vars: int = 6
    max_generators: int = 10
    max_degree: int = 4

    def check(self, system: PolySystem) -> None:
        gens = [g for g in system.generators if not g.is_zero()]
        if system.ring.nvars > self.max_vars:
            raise GuardExceeded(f"{system.ring.nvars} variables > {self.max_vars}")
        if len(gens) > self.max_generators:
            raise GuardExceeded(f"{len(gens)} generators > {self.max_generators}")
        deg = max((g.degree() for g in gens), default=0)
        if deg > self.max_degree:
            raise GuardExceeded(f"degree {deg} > {self.max_degree}")


DEFAULT_GUARD = Guard()
NO_GUARD = None


@dataclass
class GroebnerBasis:
    elements: list
    order: str
    certificate: Optional[Certificate] = None

    def is_binomial(self) -> bool:
        return all(g.is_binomial() for g in self.elements)


def _lead(p: Polynomial):
    m = p.lm()
    return m, p.terms[m]


def normal_form(f: Polynomial, basis: list, track: bool = False):
    """Full reduction of f by basis.  Returns (remainder, quotients)."""
    ring = f.ring
    leads = [_lead(g) for g in basis]
    quotients: dict = {}
    rem_terms: dict = {}
    p = f
    while not p.is_zero():
        m, c = _lead(p)
        for k, (lm, lc) in enumerate(leads):
            if mono_divides(lm, m):
                q = c * scalar_inverse(lc)
                w = mono_div(m, lm)
                p = p - basis[k].mul_monomial(w, q)
                if track:
                    add_into(quotients, k, Polynomial._raw(ring, {w: q}))
                break
        else:
            rem_terms[m] = c
            p = Polynomial._raw(ring, {k: v for k, v in p.terms.items() if k != m})
    return Polynomial._raw(ring, rem_terms), quotients


def _spoly(f: Polynomial, g: Polynomial):
    (mf, cf), (mg, cg) = _lead(f), _lead(g)
    lcm = mono_lcm(mf, mg)
    a, b = mono_div(lcm, mf), mono_div(lcm, mg)
    ia, ib = scalar_inverse(cf), scalar_inverse(cg)
    return f.mul_monomial(a, ia) - g.mul_monomial(b, ib), (a, ia), (b, ib)


def buchberger(system: PolySystem, order: str | None = None, guard: Guard | None = DEFAULT_GUARD,
               track: bool = False) -> GroebnerBasis:
    """Reduced Groebner basis; with ``track`` also a certificate over the inputs."""
    if guard is not None:
        guard.check(system)
    ring = system.ring if order is None else system.ring.with_order(order)
    inputs = [g.change_ring(ring, list(range(ring.nvars))) for g in system.generators]
    basis: list = []
    cofs: list = []  # basis[k] == sum cofs[k][i] * inputs[i]
    for i, g in enumerate(inputs):
        if not g.is_zero():
            basis.append(g)
            cofs.append({i: ring.const(1)})
    pairs = [(i, j) for j in range(len(basis)) for i in range(j)]
    while pairs:
        pairs.sort(key=lambda ij: ring.key(mono_lcm(basis[ij[0]].lm(), basis[ij[1]].lm())))
        i, j = pairs.pop(0)
        mi, mj = basis[i].lm(), basis[j].lm()
        if all(a == 0 or b == 0 for a, b in zip(mi, mj)):
            continue  # coprime leading monomials: S-polynomial reduces to zero
        s, (a, ia), (b, ib) = _spoly(basis[i], basis[j])
        r, quot = normal_form(s, basis, track)
        if r.is_zero():
            continue
        if track:
            cof: dict = {}
            for k, p in ((i, Polynomial._raw(ring, {a: ia})), (j, Polynomial._raw(ring, {b: -ib}))):
                for src, q in cofs[k].items():
                    add_into(cof, src, p * q)
            for k, qk in quot.items():
                for src, q in cofs[k].items():
                    add_into(cof, src, -(qk * q))
            cofs.append(cof)
        else:
            cofs.append({})
        basis.append(r)
        n = len(basis) - 1
        pairs.extend((k, n) for k in range(n))
    elements, el_cofs = _reduce_basis(basis, cofs, track)
    cert = None
    if track:
        backward = []
        for f in inputs:
            r, quot = normal_form(f, elements, True)
            assert r.is_zero()
            backward.append(quot)
        cert = Certificate(ring, system.params, inputs, elements, el_cofs, backward, label="groebner")
    return GroebnerBasis(elements, ring.order, cert)


def _reduce_basis(basis: list, cofs: list, track: bool):
    ring = basis[0].ring if basis else None
    idx = list(range(len(basis)))
    # minimal: drop elements whose leading monomial is divisible by another's
    keep = []
    for k in idx:
        mk = basis[k].lm()
        dominated = False
        for j in idx:
            if j == k:
                continue
            mj = basis[j].lm()
            if mono_divides(mj, mk) and (mj != mk or j < k):
                dominated = True
                break
        if not dominated:
            keep.append(k)
    minimal = [basis[k] for k in keep]
    minimal_cofs = [cofs[k] for k in keep]
    out, out_cofs = [], []
    for t, g in enumerate(minimal):
        others = minimal[:t] + minimal[t + 1:]
        lc = g.lc()
        head = Polynomial._raw(ring, {g.lm(): lc})
        tail_rem, quot = normal_form(g - head, others, track)
        r = head + tail_rem
        inv = scalar_inverse(lc)
        out.append(r.scale(inv))
        if track:
            cof: dict = {}
            for src, q in minimal_cofs[t].items():
                add_into(cof, src, q.scale(inv))
            other_ids = [u for u in range(len(minimal)) if u != t]
            for k, qk in quot.items():
                for src, q in minimal_cofs[other_ids[k]].items():
                    add_into(cof, src, -(qk * q).scale(inv))
            out_cofs.append(cof)
        else:
            out_cofs.append({})
    order = sorted(range(len(out)), key=lambda k: ring.key(out[k].lm()), reverse=True)
    return [out[k] for k in order], [out_cofs[k] for k in order]


def is_binomial_ideal_oracle(system: PolySystem, guard: Guard | None = DEFAULT_GUARD) -> bool:
    """True iff the reduced Groebner basis consists of binomials."""
    return buchberger(system, guard=guard).is_binomial()


def quotient_dimension_oracle(system: PolySystem, d: int, guard: Guard | None = DEFAULT_GUARD) -> int:
    """Number of degree-d standard monomials of a homogeneous ideal."""
    if not system.is_homogeneous():
        raise ValueError("quotient_dimension_oracle expects homogeneous generators")
    if system.ring.order == "lex":
        raise ValueError("standard monomials by degree need a graded order")
    gb = buchberger(system, guard=guard)
    leads = [g.lm() for g in gb.elements]
    return sum(1 for m in system.ring.monomials_of_degree(d) if not any(mono_divides(l, m) for l in leads))
