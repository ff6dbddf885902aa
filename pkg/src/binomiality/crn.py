"""Mass-action reaction networks and their steady-state polynomials.

Network file, one reaction per line::

    # comment
    species: A, B, C          (optional; fixes the variable order)
    A + 2 B -> C ; k1
    C <-> A ; k2, k3          (reversible: forward and reverse constants)
    0 -> A ; k4               ('0' is the empty complex)

Species become variables x1..xn in order of declaration, or of first
appearance when there is no ``species:`` line.  Rate constants become
parameters.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .parsing import IDENT_RE, ParseError
from .polynomial import PolyRing, Polynomial, PolySystem, default_order
from .scalars import param

_ARROW_RE = re.compile(r"<->|->")
_COEF_RE = re.compile(r"\s*(?:(\d+)\s*\*?\s*)?([A-Za-z][A-Za-z0-9_]*)\s*$")


@dataclass(frozen=True)
class Reaction:
    reactants: dict  # species -> stoichiometry
    products: dict
    rate: str

    def __post_init__(self):
        for side in (self.reactants, self.products):
            for s, n in side.items():
                if not isinstance(n, int) or n < 0:
                    raise ValueError(f"bad stoichiometry {n!r} for {s}")
        if not IDENT_RE.fullmatch(self.rate):
            raise ValueError(f"bad rate constant name {self.rate!r}")

    def describe(self) -> str:
        return f"{_complex_str(self.reactants)} -> {_complex_str(self.products)} ; {self.rate}"


def _complex_str(c: dict) -> str:
    if not c:
        return "0"
    return " + ".join(s if n == 1 else f"{n} {s}" for s, n in c.items())


@dataclass
class ReactionNetwork:
    species: list
    reactions: list = field(default_factory=list)

    def __post_init__(self):
        if not self.species:
            raise ValueError("a reaction network needs at least one species")
        if len(set(self.species)) != len(self.species):
            raise ValueError("species names repeat")
        rates = [r.rate for r in self.reactions]
        if len(set(rates)) != len(rates):
            raise ValueError("rate constant names must be unique per reaction")
        known = set(self.species)
        for r in self.reactions:
            missing = (set(r.reactants) | set(r.products)) - known
            if missing:
                raise ValueError(f"undeclared species {sorted(missing)}")
        clash = known & set(rates)
        if clash:
            raise ValueError(f"names used both as species and rate constant: {sorted(clash)}")

    def variable_names(self) -> list:
        return [f"x{i}" for i in range(1, len(self.species) + 1)]

    def name_map(self) -> dict:
        """Species name -> variable name."""
        return dict(zip(self.species, self.variable_names()))

    def stoichiometric_matrix(self) -> list:
        """Rows are species, columns reactions; entry is net production."""
        return [[r.products.get(s, 0) - r.reactants.get(s, 0) for r in self.reactions] for s in self.species]

    def to_text(self) -> str:
        lines = [f"species: {', '.join(self.species)}"]
        lines.extend(r.describe() for r in self.reactions)
        return "\n".join(lines) + "\n"


def _parse_complex(text: str, lineno: int, col: int) -> dict:
    out: dict = {}
    if text.strip() in ("0", ""):
        if not text.strip():
            raise ParseError("empty complex (write 0 for the empty complex)", lineno, col)
        return out
    offset = 0
    for part in text.split("+"):
        m = _COEF_RE.fullmatch(part)
        if not m:
            raise ParseError(f"cannot read species term {part.strip()!r}", lineno, col + offset)
        n = int(m.group(1)) if m.group(1) else 1
        out[m.group(2)] = out.get(m.group(2), 0) + n
        offset += len(part) + 1
    return out


def parse_network(text: str) -> ReactionNetwork:
    """Parse the ``.crn`` format described in the module docstring."""
    declared = None
    order: list = []
    reactions: list = []
    rate_lines: dict = {}

    def note(species):
        for s in species:
            if s not in order:
                order.append(s)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        m = re.match(r"\s*species\s*:(.*)$", line)
        if m:
            declared = [n for n in re.split(r"[,\s]+", m.group(1).strip()) if n]
            for n in declared:
                if not IDENT_RE.fullmatch(n):
                    raise ParseError(f"bad species name {n!r}", lineno, m.start(1) + 1)
            continue
        if ";" not in line:
            raise ParseError("missing '; rate' after the reaction", lineno, len(line.rstrip()) + 1)
        lhs_rhs, rates_txt = line.split(";", 1)
        arrows = list(_ARROW_RE.finditer(lhs_rhs))
        if len(arrows) != 1:
            raise ParseError("expected exactly one '->' or '<->'", lineno, 1)
        arrow = arrows[0]
        left = _parse_complex(lhs_rhs[:arrow.start()], lineno, 1)
        right = _parse_complex(lhs_rhs[arrow.end():], lineno, arrow.end() + 1)
        rate_col = len(lhs_rhs) + 2
        rates = [r.strip() for r in rates_txt.split(",")]
        want = 2 if arrow.group() == "<->" else 1
        if len(rates) != want or not all(IDENT_RE.fullmatch(r) for r in rates):
            raise ParseError(f"expected {want} rate constant name(s)", lineno, rate_col)
        for r in rates:
            if r in rate_lines:
                raise ParseError(f"rate constant {r} already used on line {rate_lines[r]}", lineno, rate_col)
            rate_lines[r] = lineno
        note(left)
        note(right)
        reactions.append(Reaction(left, right, rates[0]))
        if want == 2:
            reactions.append(Reaction(right, left, rates[1]))
    species = declared if declared is not None else order
    try:
        return ReactionNetwork(list(species), reactions)
    except ValueError as exc:
        raise ParseError(str(exc), 1, 1) from None


def load_network(path) -> ReactionNetwork:
    with open(path) as fh:
        return parse_network(fh.read())


def steady_state_system(net: ReactionNetwork, order: str | None = None) -> PolySystem:
    """One mass-action right-hand side per species, in species order."""
    ring = PolyRing(tuple(net.variable_names()), order or default_order())
    index = {s: i for i, s in enumerate(net.species)}
    gens = [ring.zero() for _ in net.species]
    for r in net.reactions:
        mono = [0] * ring.nvars
        for s, n in r.reactants.items():
            mono[index[s]] += n
        k = param(r.rate)
        for s in set(r.reactants) | set(r.products):
            net_change = r.products.get(s, 0) - r.reactants.get(s, 0)
            if net_change:
                i = index[s]
                gens[i] = gens[i] + Polynomial(ring, {tuple(mono): k * Fraction(net_change)})
    params = tuple(r.rate for r in net.reactions)
    return PolySystem(ring, params, tuple(gens))
