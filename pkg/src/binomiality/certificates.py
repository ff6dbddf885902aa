"""Replayable proofs that two generating sets span the same ideal.

A :class:`Certificate` stores, for every derived generator, polynomial
cofactors over the original generators (``forward``), and for every original
generator, cofactors over the derived ones (``backward``).  Checking it is
plain polynomial arithmetic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from .polynomial import Polynomial, PolyRing, PolySystem

Cofactors = dict  # int -> Polynomial


def add_into(acc: dict, j: int, p: Polynomial) -> None:
    if p.is_zero():
        return
    q = acc.get(j)
    if q is None:
        acc[j] = p
    else:
        s = q + p
        if s.is_zero():
            del acc[j]
        else:
            acc[j] = s


def compose(outer: Sequence[dict], inner: Sequence[dict]) -> list:
    """(outer o inner)[a] = sum_b outer[a][b] * inner[b]."""
    out = []
    for row in outer:
        acc: dict = {}
        for b, p in row.items():
            for c, q in inner[b].items():
                add_into(acc, c, p * q)
        out.append(acc)
    return out


def combination(cofs: dict, gens: Sequence[Polynomial], ring: PolyRing) -> Polynomial:
    total = ring.zero()
    for j, p in cofs.items():
        total = total + p * gens[j]
    return total


@dataclass
class Certificate:
    ring: PolyRing
    params: tuple
    originals: list
    derived: list
    forward: list  # derived[j] == sum forward[j][i] * originals[i]
    backward: list  # originals[i] == sum backward[i][j] * derived[j]
    label: str = ""

    def failures(self) -> list:
        """Descriptions of identities that do not hold (empty means valid)."""
        bad = []
        if len(self.forward) != len(self.derived) or len(self.backward) != len(self.originals):
            return ["cofactor table shape mismatch"]
        for j, g in enumerate(self.derived):
            if any(i >= len(self.originals) for i in self.forward[j]):
                bad.append(f"derived[{j}]: cofactor index out of range")
            elif combination(self.forward[j], self.originals, self.ring) != g:
                bad.append(f"derived[{j}] is not the claimed combination of the originals")
        for i, f in enumerate(self.originals):
            if any(j >= len(self.derived) for j in self.backward[i]):
                bad.append(f"original[{i}]: cofactor index out of range")
            elif combination(self.backward[i], self.derived, self.ring) != f:
                bad.append(f"original[{i}] is not the claimed combination of the derived set")
        return bad

    def verify(self) -> bool:
        return not self.failures()

    def to_json(self) -> dict:
        def table(rows):
            return [{str(k): p.to_str() for k, p in sorted(r.items())} for r in rows]

        return {
            "label": self.label,
            "vars": list(self.ring.variables),
            "params": list(self.params),
            "order": self.ring.order,
            "originals": [g.to_str() for g in self.originals],
            "derived": [g.to_str() for g in self.derived],
            "forward": table(self.forward),
            "backward": table(self.backward),
        }

    @classmethod
    def from_json(cls, data) -> "Certificate":
        if isinstance(data, str):
            data = json.loads(data)
        ring = PolyRing(tuple(data["vars"]), data.get("order", "grevlex"))
        params = tuple(data.get("params", ()))

        def parse(s):
            return ring.parse(s, params)

        def table(rows):
            return [{int(k): parse(v) for k, v in r.items()} for r in rows]

        return cls(ring, params, [parse(s) for s in data["originals"]], [parse(s) for s in data["derived"]],
                   table(data["forward"]), table(data["backward"]), data.get("label", ""))


def certify_file(path) -> list:
    """Replay every certificate stored in a JSON file; return failure strings."""
    with open(path) as fh:
        data = json.load(fh)
    items = data if isinstance(data, list) else data.get("certificates", [data])
    bad = []
    for k, item in enumerate(items):
        try:
            cert = Certificate.from_json(item)
        except Exception as exc:  # malformed entry counts as a failed replay
            bad.append(f"certificate {k}: unreadable ({exc})")
            continue
        bad.extend(f"certificate {k}: {msg}" for msg in cert.failures())
    if not items:
        bad.append("no certificates found")
    return bad


def _unit(i: int, ring: PolyRing) -> dict:
    return {i: ring.const(1)}


@dataclass
class Presentation:
    """Current generators of an ideal together with two-way cofactor tables."""

    system: PolySystem
    originals: list
    forward: list = field(default_factory=list)
    backward: list = field(default_factory=list)

    @classmethod
    def start(cls, system: PolySystem) -> "Presentation":
        ring = system.ring
        gens = list(system.generators)
        n = len(gens)
        return cls(system, gens, [_unit(i, ring) for i in range(n)], [_unit(i, ring) for i in range(n)])

    @property
    def ring(self) -> PolyRing:
        return self.system.ring

    @property
    def generators(self) -> tuple:
        return self.system.generators

    def apply(self, new_gens: Sequence[Polynomial], fwd: Sequence[dict], bwd: Sequence[dict]) -> "Presentation":
        """Move to new_gens, where new[j] = sum fwd[j][k] cur[k] and cur[k] = sum bwd[k][j] new[j]."""
        return Presentation(
            self.system.with_generators(new_gens),
            self.originals,
            compose(fwd, self.forward),
            compose(self.backward, bwd),
        )

    def scalar_step(self, new_gens, fwd_scalars, bwd_scalars) -> "Presentation":
        ring = self.ring

        def lift(rows):
            return [{k: ring.const(c) for k, c in r.items() if c != 0} for r in rows]

        return self.apply(new_gens, lift(fwd_scalars), lift(bwd_scalars))

    def certificate(self, label: str = "") -> Certificate:
        return Certificate(self.ring, self.system.params, list(self.originals), list(self.system.generators),
                           [dict(r) for r in self.forward], [dict(r) for r in self.backward], label)
