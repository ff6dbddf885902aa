"""Heuristics for generators that are not homogeneous.

The recipe runs four stages and stops at the first one that settles the
question:

1. linear algebra: the RREF of the coefficient matrix; a partitioning kernel
   basis means the ideal is binomial;
2. homogenize the generators, run the detector, dehomogenize on success;
3. term substitution with known binomials, searching over which monomial of
   each binomial gets eliminated, then homogenize again;
4. optionally, a Groebner basis at desk scale.

Every stage keeps two-way cofactor tables against the input, so a Binomial
verdict always ships a certificate.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .certificates import Certificate, Presentation, add_into
from .detector import DetectionResult, detect_binomial_homogeneous
from .linalg import linearize, prune_redundant_generators, rref_rows
from .polynomial import (Monomial, Polynomial, PolySystem, dehomogenize_poly, fresh_variable, homogenize,
                         mono_div, mono_divides, mono_mul)
from .scalars import Scalar, scalar_inverse, scalar_str

BINOMIAL = "Binomial"
NOT_BINOMIAL = "NotBinomialProven"
INCONCLUSIVE = "Inconclusive"

POLICIES = ("lower-degree", "larger")


# -- rewrite rules --------------------------------------------------------

@dataclass(frozen=True)
class RewriteRule:
    """source -> lam * target, read off generator ``provenance``.

    A rule with no target says the source monomial itself is a generator.
    """

    source: Monomial
    target: Optional[Monomial]
    lam: Scalar
    provenance: int

    def admissible(self) -> bool:
        return self.target is None or not mono_divides(self.source, self.target)

    def describe(self, ring) -> str:
        if self.target is None:
            return f"{ring.mono_str(self.source)} -> 0"
        return f"{ring.mono_str(self.source)} -> {scalar_str(self.lam)}*{ring.mono_str(self.target)}"


def rule_from_binomial(p: Polynomial, provenance: int, eliminate: Monomial | None = None) -> RewriteRule:
    """Orient a binomial a*u + b*v as u -> (-b/a)*v; ``eliminate`` picks u."""
    if p.is_zero() or len(p) > 2:
        raise ValueError(f"not a nonzero binomial: {p}")
    ms = p.monomials()
    if len(ms) == 1:
        return RewriteRule(ms[0], None, Fraction(0), provenance)
    u = ms[0] if eliminate is None else tuple(eliminate)
    if u not in p.terms:
        raise ValueError("eliminated monomial does not occur in the binomial")
    v = ms[1] if u == ms[0] else ms[0]
    return RewriteRule(u, v, -p.terms[v] * scalar_inverse(p.terms[u]), provenance)


def _rewrite_term(m, c, rule: RewriteRule, a, cof: dict):
    """Rewrite c*m by one rule until the source no longer divides it.

    Records the monomial multipliers of the source binomial in ``cof``
    (monomial -> coefficient) and returns the surviving term or None.
    """
    inv = scalar_inverse(a)
    while mono_divides(rule.source, m):
        w = mono_div(m, rule.source)
        q = c * inv
        old = cof.get(w)
        s = q if old is None else old + q
        if s == 0:
            cof.pop(w, None)
        else:
            cof[w] = s
        if rule.target is None:
            return None
        m, c = mono_mul(w, rule.target), c * rule.lam
    return m, c


def rewrite_polynomial(g: Polynomial, rules, gens) -> tuple:
    """One simultaneous pass: each term is rewritten by the first rule whose
    source divides it.  Returns ``(g', cof)`` with g' == g - sum cof[j]*gens[j]."""
    ring = g.ring
    out: dict = {}
    mults: dict = {}  # provenance -> {monomial: coefficient}
    for m, c in g.terms.items():
        rule = next((r for r in rules if mono_divides(r.source, m)), None)
        if rule is None:
            res = (m, c)
        else:
            a = gens[rule.provenance].terms[rule.source]
            res = _rewrite_term(m, c, rule, a, mults.setdefault(rule.provenance, {}))
        if res is not None:
            mm, cc = res
            v = out.get(mm)
            v = cc if v is None else v + cc
            if v == 0:
                out.pop(mm, None)
            else:
                out[mm] = v
    cof = {j: Polynomial._raw(ring, t) for j, t in mults.items() if t}
    return Polynomial._raw(ring, out), cof


def _check_rule(system_gens, rule: RewriteRule) -> None:
    if not 0 <= rule.provenance < len(system_gens):
        raise ValueError("rule provenance is not a generator index")
    b = system_gens[rule.provenance]
    if rule.source not in b.terms or len(b) > 2:
        raise ValueError("rule is not derived from its provenance generator")
    if not rule.admissible():
        raise ValueError("rule target is divisible by its source; rewriting would not terminate")


def substitute_presentation(pres: Presentation, rule: RewriteRule) -> Presentation:
    """Apply one rule to every other generator, to a fixpoint, with cofactors."""
    gens = list(pres.generators)
    _check_rule(gens, rule)
    ring = pres.ring
    new, fwd, bwd = [], [], []
    for i, g in enumerate(gens):
        if i == rule.provenance:
            h, cof = g, {}
        else:
            h, cof = rewrite_polynomial(g, [rule], gens)
        new.append(h)
        f = {i: ring.const(1)}
        b = {i: ring.const(1)}
        for j, p in cof.items():
            add_into(f, j, -p)
            add_into(b, j, p)
        fwd.append(f)
        bwd.append(b)
    return pres.apply(new, fwd, bwd)


def substitute(system: PolySystem, rule: RewriteRule) -> PolySystem:
    """Rewrite every other generator with ``rule``; the source binomial is kept."""
    return substitute_presentation(Presentation.start(system), rule).system


# -- linear algebra steps ------------------------------------------------

def _score(gens) -> tuple:
    nb = [g for g in gens if not g.is_binomial()]
    return (len(nb), sum(len(g) for g in gens))


def _rref_step(gens, idx, ring):
    """RREF of gens[idx]; returns (rows, fwd over idx positions, bwd) in local numbering."""
    mat = linearize([gens[i] for i in idx], ring)
    red, pivots, transform = rref_rows(mat.rows, len(mat.legend), track=True)
    rows = [Polynomial._raw(ring, {mat.legend[j]: c for j, c in r.items()}) for r in red]
    back = []
    for t in range(len(idx)):
        src = mat.rows[t]
        back.append({k: src[p] for k, p in enumerate(pivots) if p in src})
    return rows, transform, back


def linear_pass_presentation(pres: Presentation) -> Presentation:
    """Replace the generators by the nonzero RREF rows of their coefficient matrix."""
    ring = pres.ring
    gens = list(pres.generators)
    rows, transform, back = _rref_step(gens, list(range(len(gens))), ring)
    fwd = [{i: ring.const(c) for i, c in t.items()} for t in transform]
    bwd = [{k: ring.const(c) for k, c in b.items()} for b in back]
    return pres.apply(rows, fwd, bwd)


def linear_pass(system: PolySystem) -> PolySystem:
    return linear_pass_presentation(Presentation.start(system)).system


def _prune_order(gens, born) -> list:
    n = len(gens)
    return sorted(range(n), key=lambda i: (not gens[i].is_binomial(),
                                           born[i] if gens[i].is_binomial() else len(gens[i]), i))


def binomials_first_order(system: PolySystem) -> list:
    """Scan order for pruning that keeps binomials whenever it can."""
    gens = list(system.generators)
    return _prune_order(gens, [0] * len(gens))


def prune_presentation(pres: Presentation, born=None):
    """Drop generators that are scalar combinations of others.

    Binomials are kept in preference to non-binomials, older binomials before
    newer ones, sparse non-binomials before dense ones.
    """
    ring = pres.ring
    gens = list(pres.generators)
    born = born or [0] * len(gens)
    pruned, relations, kept = prune_redundant_generators(pres.system, _prune_order(gens, born))
    pos = {i: k for k, i in enumerate(kept)}
    fwd = [{i: ring.const(1)} for i in kept]
    bwd = [None] * len(gens)
    for i in kept:
        bwd[i] = {pos[i]: ring.const(1)}
    for rel in relations:
        bwd[rel.dropped] = {pos[j]: ring.const(c) for j, c in rel.coeffs.items()}
    return pres.apply(list(pruned.generators), fwd, bwd), [born[i] for i in kept]


# -- homogenization -------------------------------------------------------

@dataclass
class HomogenizedDetection:
    """Detector run on homogenized generators, mapped back when it succeeds."""

    variable: str
    detection: DetectionResult
    binomials: list  # dehomogenized, empty unless the detector said Yes
    certificate: Optional[Certificate]  # over the un-homogenized input

    @property
    def verdict(self) -> str:
        return BINOMIAL if self.detection.verdict == "Yes" else INCONCLUSIVE


def _dehom_table(rows, var, ring):
    return [{k: dehomogenize_poly(p, var, ring) for k, p in r.items()} for r in rows]


def homogenize_and_detect(system: PolySystem, var: str | None = None) -> HomogenizedDetection:
    """Homogenize with a fresh last variable and run the detector.

    A Yes dehomogenizes to a binomial generating set of the original ideal.
    A No says nothing about the original ideal.
    """
    ring = system.ring
    var = var or fresh_variable(ring, "h")
    hsys = homogenize(system, var)
    res = detect_binomial_homogeneous(hsys)
    if res.verdict != "Yes":
        return HomogenizedDetection(var, res, [], None)
    cert = res.certificate
    derived = [dehomogenize_poly(b, var, ring) for b in cert.derived]
    back = Certificate(ring, system.params, list(system.generators), derived,
                       _dehom_table(cert.forward, var, ring), _dehom_table(cert.backward, var, ring),
                       label="homogenize-detect")
    return HomogenizedDetection(var, res, derived, back)


# -- substitution search -------------------------------------------------

@dataclass(frozen=True)
class Orientation:
    """Which monomial each binomial eliminates: a policy plus explicit flips."""

    policy: str = "lower-degree"
    flipped: frozenset = frozenset()  # binomial supports whose choice is reversed

    def eliminated(self, p: Polynomial) -> Monomial:
        u = _policy_elim(p, self.policy)
        if _pair(p) in self.flipped:
            u = next(m for m in p.terms if m != u)
        return u


@dataclass
class _Node:
    gens: list
    born: list
    orient: Orientation
    depth: int
    cost: int
    seq: int
    parent: Optional["_Node"] = None
    step: Optional[list] = None  # (new_gens, fwd, bwd) tables leading here from the parent
    log: list = field(default_factory=list)

    def __post_init__(self):
        self.score = _score(self.gens)
        self.goal = self.score[0] == 0
        self.weight = sum(g.degree() for g in self.gens) if self.goal else 0

    def key(self):
        # among complete binomial presentations prefer the lowest degrees;
        # otherwise the fewest departures from the default orientation
        return (self.score, self.depth, self.weight, self.cost, self.seq)


def _pair(p: Polynomial):
    return frozenset(p.terms)


def _policy_elim(p: Polynomial, policy: str) -> Monomial:
    ms = p.monomials()
    if len(ms) == 1 or policy == "larger":
        return ms[0]
    a, b = ms
    if sum(a) != sum(b):
        return a if sum(a) < sum(b) else b
    return a


def _rules_for(gens, orient: Orientation) -> list:
    """Rules from every binomial; on a shared source, flipped choices win."""
    idx = [j for j, g in enumerate(gens) if not g.is_zero() and g.is_binomial()]
    idx.sort(key=lambda j: _pair(gens[j]) not in orient.flipped)
    rules, taken = [], set()
    for j in idx:
        g = gens[j]
        rule = rule_from_binomial(g, j, orient.eliminated(g))
        if rule.source in taken or not rule.admissible():
            continue
        taken.add(rule.source)
        rules.append(rule)
    return rules


def _round(node: _Node, orient: dict, ring):
    """One substitution round into the non-binomials, then the linear steps."""
    gens = node.gens
    rules = _rules_for(gens, orient)
    if not rules:
        return None
    new, fwd, bwd, born = [], [], [], list(node.born)
    changed = False
    for i, g in enumerate(gens):
        f = {i: ring.const(1)}
        b = {i: ring.const(1)}
        if g.is_binomial():
            new.append(g)
        else:
            h, cof = rewrite_polynomial(g, rules, gens)
            if h != g:
                changed = True
                born[i] = node.depth + 1
            new.append(h)
            for j, p in cof.items():
                add_into(f, j, -p)
                add_into(b, j, p)
        fwd.append(f)
        bwd.append(b)
    if not changed:
        return None
    steps = [(new, fwd, bwd)]
    gens, born = _tidy(new, born, steps, ring, node.depth + 1)
    return gens, born, steps, [r.describe(ring) for r in rules]


def _tidy(gens, born, steps, ring, depth):
    """Linear clean-up after a round; appends the tables it uses to ``steps``."""
    # drop zeros
    keep = [i for i, g in enumerate(gens) if not g.is_zero()]
    if len(keep) < len(gens):
        pos = {i: k for k, i in enumerate(keep)}
        steps.append(([gens[i] for i in keep], [{i: ring.const(1)} for i in keep],
                      [{pos[i]: ring.const(1)} if i in pos else {} for i in range(len(gens))]))
        gens, born = [gens[i] for i in keep], [born[i] for i in keep]
    # cancel terms of non-binomials against binomials while that shortens them
    gens, born = _sparsify(gens, born, steps, ring, depth)
    # echelonize the non-binomial part if that does not make things worse
    nb = [i for i, g in enumerate(gens) if not g.is_binomial()]
    if len(nb) > 1:
        rows, transform, back = _rref_step(gens, nb, ring)
        trial = [g for i, g in enumerate(gens) if i not in set(nb)] + rows
        if _score(trial) <= _score(gens):
            slot = {i: k for k, i in enumerate(nb)}
            out, f, b, nborn = [], [], [None] * len(gens), []
            newpos = {}
            for i, g in enumerate(gens):
                if i in slot:
                    k = slot[i]
                    if k < len(rows):
                        newpos[k] = len(out)
                        out.append(rows[k])
                        f.append({nb[t]: ring.const(c) for t, c in transform[k].items()})
                        nborn.append(depth)
                else:
                    b[i] = {len(out): ring.const(1)}
                    out.append(g)
                    f.append({i: ring.const(1)})
                    nborn.append(born[i])
            for t, i in enumerate(nb):
                b[i] = {newpos[k]: ring.const(c) for k, c in back[t].items()}
            steps.append((out, f, b))
            gens, born = out, nborn
    # drop linear dependencies, keeping binomials
    pruned, relations, kept = prune_redundant_generators(
        PolySystem(ring, (), tuple(gens)), _prune_order(gens, born))
    if relations:
        pos = {i: k for k, i in enumerate(kept)}
        b = [None] * len(gens)
        for i in kept:
            b[i] = {pos[i]: ring.const(1)}
        for rel in relations:
            b[rel.dropped] = {pos[j]: ring.const(c) for j, c in rel.coeffs.items()}
        steps.append((list(pruned.generators), [{i: ring.const(1)} for i in kept], b))
        gens, born = list(pruned.generators), [born[i] for i in kept]
    # a partitioning kernel basis finishes the job
    if any(not g.is_binomial() for g in gens):
        rows, transform, back = _rref_step(gens, list(range(len(gens))), ring)
        if all(r.is_binomial() for r in rows):
            steps.append((rows, [{i: ring.const(c) for i, c in t.items()} for t in transform],
                          [{k: ring.const(c) for k, c in bk.items()} for bk in back]))
            gens, born = rows, [depth] * len(rows)
    return gens, born


def _sparsify(gens, born, steps, ring, depth):
    gens = list(gens)
    fwd = [{i: ring.const(1)} for i in range(len(gens))]
    bwd = [{i: ring.const(1)} for i in range(len(gens))]
    touched = False
    bins = [j for j, g in enumerate(gens) if g.is_binomial() and len(g) == 2]
    for i, g in enumerate(gens):
        if g.is_binomial():
            continue
        improved = True
        while improved and not g.is_binomial():
            improved = False
            for j in bins:
                b = gens[j]
                for m in b.terms:
                    if m not in g.terms:
                        continue
                    c = g.terms[m] * scalar_inverse(b.terms[m])
                    h = g - b.scale(c)
                    if len(h) < len(g):
                        g = h
                        add_into(fwd[i], j, ring.const(-c))
                        add_into(bwd[i], j, ring.const(c))
                        improved = touched = True
                        break
                if improved:
                    break
        if gens[i] is not g:
            gens[i] = g
            born = born[:i] + [depth] + born[i + 1:]
    if touched:
        steps.append((list(gens), fwd, bwd))
    return gens, born


def _state_key(gens):
    return frozenset(g.monic() for g in gens)


@dataclass
class SearchOutcome:
    presentation: Presentation
    rounds: list  # rule descriptions, one list per round on the best path
    explored: int
    depth: int


def _presentation_of(node: _Node, start: Presentation) -> Presentation:
    chain = []
    while node is not None and node.step is not None:
        chain.append(node.step)
        node = node.parent
    pres = start
    for steps in reversed(chain):
        for new, fwd, bwd in steps:
            pres = pres.apply(new, fwd, bwd)
    return pres


def _children(node: _Node):
    """Orientations to try from ``node``: keep, switch policy, one flip."""
    cur = node.orient
    out = [("keep", cur, 0)]
    for policy in POLICIES:
        if policy != cur.policy:
            out.append((f"policy {policy}", Orientation(policy), 1))
    for g in node.gens:
        if g.is_binomial() and len(g) == 2:
            k = _pair(g)
            out.append((f"flip {g.to_str()}", Orientation(cur.policy, cur.flipped ^ {k}), 1))
    return out


def search_presentation(start: Presentation, max_depth: int = 8, branch: int = 16,
                        policy: str = "lower-degree") -> SearchOutcome:
    """Bounded best-first search over rule orientations.

    Levels are expanded breadth-first; at each level the ``branch`` best new
    states survive, ranked by (non-binomials, terms), then depth, then total
    degree for all-binomial states, then the number of orientation changes.  The search
    stops at the first level that reaches an all-binomial state, or when a
    level brings no improvement over the best state seen.
    """
    if max_depth < 1 or branch < 1:
        raise ValueError("search bounds must be at least 1")
    ring = start.ring
    gens = list(start.generators)
    root = _Node(gens, [0] * len(gens), Orientation(policy), 0, 0, 0)
    best = root
    seen = {_state_key(gens)}
    frontier = [root]
    seq = 1
    explored = 0
    for depth in range(1, max_depth + 1):
        if best.score[0] == 0:
            break
        level = []
        for node in frontier:
            for label, orient, cost in _children(node):
                res = _round(node, orient, ring)
                explored += 1
                if res is None:
                    continue
                ngens, nborn, steps, rules = res
                k = _state_key(ngens)
                if k in seen:
                    continue
                seen.add(k)
                child = _Node(ngens, nborn, orient, depth, node.cost + cost, seq, node, steps,
                              node.log + [rules])
                seq += 1
                level.append(child)
        if not level:
            break
        level.sort(key=lambda n: n.key())
        frontier = level[:branch]
        if frontier[0].score < best.score:
            best = frontier[0]
        else:
            break
    return SearchOutcome(_presentation_of(best, start), best.log, explored, best.depth)


# -- reports and the recipe ----------------------------------------------

@dataclass
class StageOutcome:
    stage: str
    outcome: str  # a verdict, or "skipped"
    detail: str = ""

    def to_json(self) -> dict:
        return {"stage": self.stage, "outcome": self.outcome, "detail": self.detail}

    @classmethod
    def from_json(cls, d) -> "StageOutcome":
        return cls(d["stage"], d["outcome"], d.get("detail", ""))


@dataclass
class PipelineReport:
    verdict: str
    system: PolySystem
    generators: list
    stages: list = field(default_factory=list)
    certificates: list = field(default_factory=list)
    rounds: list = field(default_factory=list)

    @property
    def binomials(self) -> list:
        return [g for g in self.generators if g.is_binomial()]

    @property
    def non_binomials(self) -> list:
        return [g for g in self.generators if not g.is_binomial()]

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "system": self.system.to_json(),
            "binomials": [g.to_str() for g in self.binomials],
            "non_binomials": [g.to_str() for g in self.non_binomials],
            "generators": [g.to_str() for g in self.generators],
            "stages": [s.to_json() for s in self.stages],
            "rounds": [list(r) for r in self.rounds],
            "certificates": [c.to_json() for c in self.certificates],
        }

    @classmethod
    def from_json(cls, d) -> "PipelineReport":
        if isinstance(d, str):
            d = json.loads(d)
        system = PolySystem.from_json(d["system"])
        ring, params = system.ring, system.params
        return cls(d["verdict"], system, [ring.parse(g, params) for g in d["generators"]],
                   [StageOutcome.from_json(s) for s in d["stages"]],
                   [Certificate.from_json(c) for c in d["certificates"]],
                   [list(r) for r in d.get("rounds", [])])


@dataclass(frozen=True)
class RecipeOptions:
    max_depth: int = 8
    branch: int = 16
    enable_gb_oracle: bool = False
    homogenize_retry: bool = True
    policy: str = "lower-degree"


def substitution_search(system: PolySystem, max_depth: int = 8, branch: int = 16,
                        policy: str = "lower-degree") -> PipelineReport:
    """Search substitution rounds from ``system``; Binomial only if every
    generator of the best state is a binomial."""
    start = Presentation.start(system)
    if system.is_binomial_system():
        stage = StageOutcome("substitution", BINOMIAL, "input already binomial")
        return PipelineReport(BINOMIAL, system, list(system.generators), [stage], [start.certificate("identity")])
    out = search_presentation(start, max_depth, branch, policy)
    gens = list(out.presentation.generators)
    verdict = BINOMIAL if all(g.is_binomial() for g in gens) else INCONCLUSIVE
    detail = f"depth {out.depth}, {out.explored} rounds tried"
    return PipelineReport(verdict, system, gens, [StageOutcome("substitution", verdict, detail)],
                          [out.presentation.certificate("substitution")], out.rounds)


def _finish(verdict, system, pres: Presentation, stages, label, rounds=()) -> PipelineReport:
    return PipelineReport(verdict, system, list(pres.generators), stages, [pres.certificate(label)], list(rounds))


def _detect_step(pres: Presentation, stages, stage: str):
    """Homogeneous generators: run the detector.  Returns (verdict, presentation)."""
    res = detect_binomial_homogeneous(pres.system)
    if res.verdict == "Yes":
        cert = res.certificate
        stages.append(StageOutcome(stage, BINOMIAL, "generators homogeneous, detector Yes"))
        return BINOMIAL, pres.apply(cert.derived, cert.forward, cert.backward)
    stages.append(StageOutcome(stage, NOT_BINOMIAL,
                               f"generators homogeneous, detector No at degree {res.witness.degree}"))
    return NOT_BINOMIAL, pres


def _homogenize_step(pres: Presentation, stages, stage: str):
    if pres.system.is_homogeneous():
        return _detect_step(pres, stages, stage)
    hd = homogenize_and_detect(pres.system)
    if hd.verdict == BINOMIAL:
        c = hd.certificate
        stages.append(StageOutcome(stage, BINOMIAL, f"homogenized with {hd.variable}, detector Yes"))
        return BINOMIAL, pres.apply(c.derived, c.forward, c.backward)
    stages.append(StageOutcome(stage, INCONCLUSIVE, f"homogenized with {hd.variable}, detector No"))
    return INCONCLUSIVE, pres


def run_recipe(system: PolySystem, options: RecipeOptions | None = None) -> PipelineReport:
    """Run the four stages in order, stopping at the first conclusive one."""
    from .groebner import DEFAULT_GUARD, GuardExceeded, buchberger

    opts = options or RecipeOptions()
    stages: list = []
    start = Presentation.start(system)

    # 1. linear algebra
    lin = linear_pass_presentation(start)
    if all(g.is_binomial() for g in lin.generators):
        stages.append(StageOutcome("linear", BINOMIAL, "RREF has a partitioning kernel basis"))
        return _finish(BINOMIAL, system, lin, stages, "linear")
    stages.append(StageOutcome("linear", INCONCLUSIVE, "RREF has a row with three or more terms"))

    # 2. homogenize and detect
    verdict, pres = _homogenize_step(lin, stages, "homogenize")
    if verdict != INCONCLUSIVE:
        return _finish(verdict, system, pres, stages, "homogenize")

    # 3. term substitution, then homogenize again
    out = search_presentation(start, opts.max_depth, opts.branch, opts.policy)
    best = out.presentation
    rounds = out.rounds
    if all(g.is_binomial() for g in best.generators):
        stages.append(StageOutcome("substitution", BINOMIAL, f"all binomial after {out.depth} rounds"))
        return _finish(BINOMIAL, system, best, stages, "substitution", rounds)
    nb = sum(not g.is_binomial() for g in best.generators)
    stages.append(StageOutcome("substitution", INCONCLUSIVE, f"{nb} non-binomial generators remain"))
    if opts.homogenize_retry:
        verdict, pres = _homogenize_step(best, stages, "homogenize-retry")
        if verdict != INCONCLUSIVE:
            return _finish(verdict, system, pres, stages, "homogenize-retry", rounds)
    else:
        stages.append(StageOutcome("homogenize-retry", "skipped", "disabled"))

    # 4. Groebner basis, only on request and only for small inputs
    if not opts.enable_gb_oracle:
        stages.append(StageOutcome("groebner", "skipped", "not enabled"))
        return _finish(INCONCLUSIVE, system, best, stages, "substitution", rounds)
    try:
        gb = buchberger(system, guard=DEFAULT_GUARD, track=True)
    except GuardExceeded as exc:
        stages.append(StageOutcome("groebner", "skipped", f"instance too large: {exc}"))
        return _finish(INCONCLUSIVE, system, best, stages, "substitution", rounds)
    if gb.is_binomial():
        c = gb.certificate
        stages.append(StageOutcome("groebner", BINOMIAL, "reduced Groebner basis is binomial"))
        return _finish(BINOMIAL, system, start.apply(c.derived, c.forward, c.backward), stages, "groebner", rounds)
    stages.append(StageOutcome("groebner", NOT_BINOMIAL, "reduced Groebner basis has a term-rich element"))
    return _finish(NOT_BINOMIAL, system, best, stages, "substitution", rounds)
