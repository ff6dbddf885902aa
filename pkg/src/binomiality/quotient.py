"""Quotients of a polynomial ring by homogeneous binomials, one degree at a time.

Modulo a set B of homogeneous binomials every degree-d monomial is either zero
or a nonzero multiple of a class representative.  The classes are the
connected components of the graph whose edges are the monomial multiples
``w*lead - lam*w*tail`` of the binomials in B.  A component is zero when it
contains a multiple of a pure monomial in B, or when two paths assign
different scales to the same monomial.

Every relation ``m == scale * rep (mod B)`` comes with explicit cofactors, so
reductions can be replayed without Groebner bases.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .polynomial import Monomial, Polynomial, PolyRing, mono_mul, monomials_of_degree
from .scalars import Scalar, scalar_inverse, scalar_str

ZERO = None  # class map value for monomials that vanish in the quotient


@dataclass(frozen=True)
class NormalizedBinomial:
    """lead - lam * tail, or the pure monomial lead when tail is None."""

    lead: Monomial
    tail: Optional[Monomial] = None
    lam: Scalar = Fraction(0)

    def degree(self) -> int:
        return sum(self.lead)

    def polynomial(self, ring: PolyRing) -> Polynomial:
        terms = {self.lead: Fraction(1)}
        if self.tail is not None:
            terms[self.tail] = -self.lam
        return Polynomial._raw(ring, terms)

    @classmethod
    def from_polynomial(cls, p: Polynomial) -> "NormalizedBinomial":
        if p.is_zero() or len(p) > 2:
            raise ValueError(f"not a nonzero binomial: {p}")
        ms = p.monomials()
        if len(ms) == 1:
            return cls(ms[0])
        lead, tail = ms
        lam = -p.terms[tail] * scalar_inverse(p.terms[lead])
        return cls(lead, tail, lam)


class ClassMap:
    """Degree-d classes: monomial -> (class id, scale) or ZERO.

    ``scale`` means ``m == scale * rep(class)`` in the quotient.
    """

    def __init__(self, quotient: "QuotientStructure", degree: int):
        self.q = quotient
        self.degree = degree
        self.ring = quotient.ring
        self.map: dict = {}
        self.reps: list = []  # class id -> representative
        self.members: list = []  # class id -> list of monomials (BFS order)
        self.zero_members: list = []
        # BFS bookkeeping for cofactors
        self._parent: dict = {}  # m -> (parent, edge) ; edge = (u', v', lam, bidx, w)
        self._root_scale: dict = {}  # m -> scale relative to BFS root
        self._root_of: dict = {}
        self._root_zero: dict = {}  # root -> ('conflict', a, b, edge) | ('kill', m, bidx, w)
        self._cof_cache: dict = {}
        self._build()

    # -- construction ---------------------------------------------------
    def _build(self):
        ring, d = self.ring, self.degree
        monos = ring.monomials_of_degree(d)
        adj: dict = {m: [] for m in monos}
        killed: dict = {}
        for bidx, b in enumerate(self.q.binomials):
            db = b.degree()
            if db > d:
                continue
            for w in monomials_of_degree(ring.nvars, d - db):
                u = mono_mul(w, b.lead)
                if b.tail is None:
                    killed.setdefault(u, (bidx, w))
                    continue
                v = mono_mul(w, b.tail)
                edge = (u, v, b.lam, bidx, w)
                adj[u].append(edge)
                adj[v].append(edge)
        for root in reversed(monos):  # descending: first unseen monomial is its component's greatest
            if root in self._root_of:
                continue
            self._explore(root, adj, killed)

    def _explore(self, root, adj, killed):
        scale = self._root_scale
        scale[root] = Fraction(1)
        self._root_of[root] = root
        comp = [root]
        zero = None
        queue = deque([root])
        while queue:
            a = queue.popleft()
            if zero is None and a in killed:
                bidx, w = killed[a]
                zero = ("kill", a, bidx, w)
            for edge in adj[a]:
                u, v, lam, bidx, w = edge
                # a == mu * b for the neighbour b
                if a == u:
                    b, mu = v, lam
                else:
                    b, mu = u, scalar_inverse(lam)
                expected = scale[a] * scalar_inverse(mu)
                if b not in scale:
                    scale[b] = expected
                    self._root_of[b] = root
                    self._parent[b] = (a, edge)
                    comp.append(b)
                    queue.append(b)
                elif zero is None and scale[b] != expected:
                    zero = ("conflict", a, b, edge)
        if zero is not None:
            self._root_zero[root] = zero
            for m in comp:
                self.map[m] = ZERO
            self.zero_members.extend(comp)
            return
        cid = len(self.reps)
        rep = root
        self.reps.append(rep)
        self.members.append(comp)
        for m in comp:
            self.map[m] = (cid, scale[m])

    # -- queries --------------------------------------------------------
    def __getitem__(self, m):
        return self.map[tuple(m)]

    def num_classes(self) -> int:
        return len(self.reps)

    def classes(self) -> list:
        """List of member sets, one per nonzero class, in class-id order."""
        return [set(ms) for ms in self.members]

    def rep(self, cid: int) -> Monomial:
        return self.reps[cid]

    # -- cofactors ------------------------------------------------------
    def _cof_to_root(self, m) -> dict:
        """Cofactors c with m - s_m * root == sum_j c[j] * B_j."""
        if m in self._cof_cache:
            return self._cof_cache[m]
        ring = self.ring
        chain = []
        cur = m
        while cur in self._parent and cur not in self._cof_cache:
            chain.append(cur)
            cur = self._parent[cur][0]
        cof = self._cof_cache.get(cur, {})
        for node in reversed(chain):
            a, edge = self._parent[node]
            u, v, lam, bidx, w = edge
            wp = Polynomial._raw(ring, {w: Fraction(1)})
            if a == u:
                # node = v = (a - w*B)/lam
                inv = scalar_inverse(lam)
                new = {j: p.scale(inv) for j, p in cof.items()}
                _add_cof(new, bidx, wp.scale(-inv))
            else:
                # node = u = lam*a + w*B
                new = {j: p.scale(lam) for j, p in cof.items()}
                _add_cof(new, bidx, wp)
            self._cof_cache[node] = new
            cof = new
        self._cof_cache.setdefault(m, cof)
        return cof

    def _root_zero_cof(self, root) -> dict:
        """Cofactors expressing the component root itself as an element of <B>."""
        key = ("root", root)
        if key in self._cof_cache:
            return self._cof_cache[key]
        ring = self.ring
        info = self._root_zero[root]
        s = self._root_scale
        if info[0] == "kill":
            _, m, bidx, w = info
            # m = w*B_j and m - s_m*root = C  =>  root = (w*B_j - C)/s_m
            out = {j: -p for j, p in self._cof_to_root(m).items()}
            _add_cof(out, bidx, Polynomial._raw(ring, {w: Fraction(1)}))
            inv = scalar_inverse(s[m])
        else:
            _, a, b, edge = info
            u, v, lam, bidx, w = edge
            # u - lam*v = w*B_j ; u = s_u*root + C_u ; v = s_v*root + C_v
            # => (s_u - lam*s_v) root = w*B_j - C_u + lam*C_v
            out = {j: -p for j, p in self._cof_to_root(u).items()}
            for j, p in self._cof_to_root(v).items():
                _add_cof(out, j, p.scale(lam))
            _add_cof(out, bidx, Polynomial._raw(ring, {w: Fraction(1)}))
            gap = s[u] - lam * s[v]
            assert gap != 0
            inv = scalar_inverse(gap)
        out = {j: p.scale(inv) for j, p in out.items() if not p.is_zero()}
        self._cof_cache[key] = out
        return out

    def cofactors(self, m) -> dict:
        """Cofactors for ``m - scale*rep`` (nonzero class) or ``m`` (zero class)."""
        m = tuple(m)
        root = self._root_of[m]
        base = self._cof_to_root(m)
        if self.map[m] is ZERO:
            out = {j: p for j, p in base.items()}
            for j, p in self._root_zero_cof(root).items():
                _add_cof(out, j, p.scale(self._root_scale[m]))
            return {j: p for j, p in out.items() if not p.is_zero()}
        return base

    def zero_certificate(self, root_member) -> dict:
        """Cofactors showing a zero-class monomial lies in <B>."""
        if self.map[tuple(root_member)] is not ZERO:
            raise ValueError("monomial is not in a zero class")
        return self.cofactors(root_member)

    def dump(self) -> str:
        ring = self.ring
        lines = [f"degree {self.degree}"]
        for cid, rep in enumerate(self.reps):
            mem = ",".join(f"{ring.mono_str(m)}:{scalar_str(self.map[m][1])}" for m in self.members[cid])
            lines.append(f"class {cid}: rep={ring.mono_str(rep)} members={{{mem}}}")
        lines.append("ZERO " + "{" + ",".join(ring.mono_str(m) for m in self.zero_members) + "}")
        return "\n".join(lines) + "\n"


def _add_cof(cof: dict, j: int, p: Polynomial) -> None:
    if j in cof:
        s = cof[j] + p
        if s.is_zero():
            del cof[j]
        else:
            cof[j] = s
    elif not p.is_zero():
        cof[j] = p


class QuotientStructure:
    """k[x]/<B> for homogeneous binomials B, with per-degree class maps."""

    def __init__(self, ring: PolyRing, binomials=()):
        self.ring = ring
        self.binomials: list = []
        self._cache: dict = {}
        for b in binomials:
            self.add(b)

    def add(self, b) -> int:
        if isinstance(b, Polynomial):
            if not b.is_homogeneous():
                raise ValueError(f"inhomogeneous binomial rejected: {b}")
            b = NormalizedBinomial.from_polynomial(b)
        if b.tail is not None and (sum(b.tail) != sum(b.lead) or b.tail == b.lead):
            raise ValueError("binomials in a quotient structure must be homogeneous")
        self.binomials.append(b)
        d = b.degree()
        for k in [k for k in self._cache if k >= d]:
            del self._cache[k]
        return len(self.binomials) - 1

    def polynomials(self) -> list:
        return [b.polynomial(self.ring) for b in self.binomials]

    def classes(self, d: int) -> ClassMap:
        if d not in self._cache:
            self._cache[d] = ClassMap(self, d)
        return self._cache[d]


def enumerate_classes(q: QuotientStructure, d: int) -> ClassMap:
    return q.classes(d)


@dataclass
class ClassVector:
    degree: int
    entries: dict  # class id -> nonzero scalar


def reduce_to_classes(q: QuotientStructure, f: Polynomial) -> ClassVector:
    """Image of a homogeneous polynomial as a vector over the degree-d classes."""
    if f.is_zero():
        return ClassVector(0, {})
    if not f.is_homogeneous():
        raise ValueError(f"reduce_to_classes needs a homogeneous polynomial, got {f}")
    d = f.degree()
    cm = q.classes(d)
    out: dict = {}
    for m, c in f.terms.items():
        ref = cm[m]
        if ref is ZERO:
            continue
        cid, s = ref
        v = out.get(cid, 0) + c * s
        if v == 0:
            out.pop(cid, None)
        else:
            out[cid] = v
    return ClassVector(d, out)


def reduction_cofactors(q: QuotientStructure, f: Polynomial) -> dict:
    """Cofactors c with f - lift(reduce_to_classes(f)) == sum_j c[j] * B_j."""
    out: dict = {}
    if f.is_zero():
        return out
    cm = q.classes(f.degree())
    for m, c in f.terms.items():
        for j, p in cm.cofactors(m).items():
            _add_cof(out, j, p.scale(c))
    return out


def lift_class_vector(q: QuotientStructure, vec: ClassVector) -> Polynomial:
    """Preimage built from class representatives."""
    cm = q.classes(vec.degree) if vec.entries else None
    terms = {cm.rep(cid): c for cid, c in vec.entries.items()} if cm else {}
    return Polynomial._raw(q.ring, terms)


def lift_class_binomial(q: QuotientStructure, vec: ClassVector) -> Polynomial:
    if len(vec.entries) > 2:
        raise ValueError("class vector has more than two entries")
    return lift_class_vector(q, vec)
