"""Binomiality detection for homogeneous generators, degree by degree.

For each degree d (ascending) the generators of degree d are mapped into
k[x]/<B>, where B holds the binomials found so far, by summing coefficients
over monomial classes.  If the reduced row echelon form of the resulting class
matrix has a row with three or more entries the ideal is not binomial.
Otherwise every RREF row lifts to a binomial (or monomial) through the class
representatives and joins B.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .certificates import Certificate, add_into
from .linalg import rref_rows
from .polynomial import Polynomial, PolySystem
from .quotient import NormalizedBinomial, QuotientStructure, reduce_to_classes, reduction_cofactors
from .scalars import scalar_inverse, scalar_str


class NotHomogeneousError(ValueError):
    """Raised when the detector is given an inhomogeneous generator."""


@dataclass
class Witness:
    """A degree-d element of the ideal with >= 3 terms modulo the lower-degree binomials."""

    degree: int
    row: list  # list of (representative monomial, coefficient), descending
    polynomial: Polynomial

    def to_json(self) -> dict:
        ring = self.polynomial.ring
        return {
            "degree": self.degree,
            "row": [[ring.mono_str(m), scalar_str(c)] for m, c in self.row],
            "polynomial": self.polynomial.to_str(),
        }


@dataclass
class TraceEntry:
    degree: int
    generators: int  # |F_min|
    rank: int
    binomials_found: int
    absorbed: list = field(default_factory=list)  # input indices that vanished modulo B

    def to_json(self) -> dict:
        return {"degree": self.degree, "generators": self.generators, "rank": self.rank,
                "binomials_found": self.binomials_found, "absorbed": list(self.absorbed)}

    @classmethod
    def from_json(cls, d) -> "TraceEntry":
        return cls(d["degree"], d["generators"], d["rank"], d["binomials_found"], list(d["absorbed"]))


@dataclass
class DetectionResult:
    verdict: str  # "Yes" | "No"
    system: PolySystem
    binomials: list = field(default_factory=list)
    witness: Optional[Witness] = None
    trace: list = field(default_factory=list)
    certificate: Optional[Certificate] = None

    @property
    def is_binomial(self) -> bool:
        return self.verdict == "Yes"

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "system": self.system.to_json(),
            "binomials": [b.to_str() for b in self.binomials],
            "witness": self.witness.to_json() if self.witness else None,
            "trace": [t.to_json() for t in self.trace],
            "certificates": [self.certificate.to_json()] if self.certificate else [],
        }

    @classmethod
    def from_json(cls, d) -> "DetectionResult":
        system = PolySystem.from_json(d["system"])
        ring, params = system.ring, system.params
        w = d.get("witness")
        witness = None
        if w:
            row = []
            for ms, cs in w["row"]:
                row.append((next(iter(ring.parse(ms, params).terms)), ring.parse(cs, params).coeff(ring.one())))
            witness = Witness(w["degree"], row, ring.parse(w["polynomial"], params))
        certs = d.get("certificates") or []
        return cls(d["verdict"], system, [ring.parse(b, params) for b in d["binomials"]], witness,
                   [TraceEntry.from_json(t) for t in d["trace"]],
                   Certificate.from_json(certs[0]) if certs else None)


def detect_binomial_homogeneous(system: PolySystem) -> DetectionResult:
    """Decide whether the ideal of homogeneous generators is binomial."""
    ring = system.ring
    gens = list(system.generators)
    for i, g in enumerate(gens):
        if not g.is_homogeneous():
            raise NotHomogeneousError(f"generator {i} is not homogeneous: {g}")
    live = [i for i, g in enumerate(gens) if not g.is_zero()]
    q = QuotientStructure(ring)
    b_polys: list = []  # normalized binomials, same indexing as q.binomials
    b_forward: list = []  # b_polys[j] == sum b_forward[j][i] * gens[i]
    backward: dict = {i: {} for i in range(len(gens))}  # gens[i] == sum backward[i][j] * b_polys[j]
    trace = []
    by_degree = {}
    for i in live:
        by_degree.setdefault(gens[i].degree(), []).append(i)

    for d in sorted(by_degree):
        fmin = by_degree[d]
        cm = q.classes(d)
        # class columns ordered by representative, largest first
        col_of = {}
        reps = sorted(range(cm.num_classes()), key=lambda c: ring.key(cm.rep(c)), reverse=True)
        for pos, cid in enumerate(reps):
            col_of[cid] = pos
        vectors = [reduce_to_classes(q, gens[i]) for i in fmin]
        rows = [{col_of[c]: v for c, v in vec.entries.items()} for vec in vectors]
        red, pivots, transform = rref_rows(rows, len(reps), track=True)
        absorbed = [fmin[k] for k, r in enumerate(rows) if not r]

        for r in red:
            if len(r) >= 3:
                row = [(cm.rep(reps[j]), r[j]) for j in sorted(r)]
                poly = Polynomial._raw(ring, {m: c for m, c in row})
                trace.append(TraceEntry(d, len(fmin), len(red), 0, absorbed))
                return DetectionResult("No", system, [], Witness(d, row, poly), trace)

        # cofactors of each F_min element modulo the current B
        red_cofs = [reduction_cofactors(q, gens[i]) for i in fmin]
        new_index = []
        for k, r in enumerate(red):
            lifted = Polynomial._raw(ring, {cm.rep(reps[j]): c for j, c in r.items()})
            nb = NormalizedBinomial.from_polynomial(lifted)
            poly = nb.polynomial(ring)
            # lifted == sum_t T[k][t] * (gens[fmin[t]] - R_t) ; poly == lifted / lc(lifted)
            inv = scalar_inverse(lifted.lc())
            fwd: dict = {}
            for t, coef in transform[k].items():
                c = coef * inv
                add_into(fwd, fmin[t], ring.const(c))
                for j, p in red_cofs[t].items():
                    for i, pp in b_forward[j].items():
                        add_into(fwd, i, (p * pp).scale(-c))
            j_new = q.add(nb)
            b_polys.append(poly)
            b_forward.append(fwd)
            new_index.append((j_new, lifted.lc()))
        # each F_min element: f = sum_k v[pivot_k] * lifted_k + sum_j R_j B_j
        for t, i in enumerate(fmin):
            acc = backward[i]
            for j, p in red_cofs[t].items():
                add_into(acc, j, p)
            for k, piv in enumerate(pivots):
                coef = rows[t].get(piv)
                if coef is None:
                    continue
                j_new, lc = new_index[k]
                add_into(acc, j_new, ring.const(coef * lc))
        trace.append(TraceEntry(d, len(fmin), len(red), len(red), absorbed))

    assert len(trace) <= len(by_degree)
    cert = Certificate(ring, system.params, gens, list(b_polys), [dict(f) for f in b_forward],
                       [backward[i] for i in range(len(gens))], label="detect")
    return DetectionResult("Yes", system, list(b_polys), None, trace, cert)


def extend_with_monomial_multiples(system: PolySystem, bound: int) -> PolySystem:
    """Append x^a * f_i for every monomial x^a keeping total degree <= bound."""
    degs = [g.degree() for g in system.generators if not g.is_zero()]
    if degs and bound < max(degs):
        raise ValueError("degree bound below the largest generator degree")
    ring = system.ring
    out = list(system.generators)
    seen = {_key(g) for g in out}
    for g in system.generators:
        if g.is_zero():
            continue
        for e in range(1, bound - g.degree() + 1):
            for m in ring.monomials_of_degree(e):
                h = g.mul_monomial(m)
                k = _key(h)
                if k not in seen:
                    seen.add(k)
                    out.append(h)
    return system.with_generators(out)


def _key(p: Polynomial):
    return frozenset(p.terms.items())
