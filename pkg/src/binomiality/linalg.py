"""Sparse exact matrices over scalars: RREF, partitioning kernel bases, pruning.

Rows are dicts ``column -> nonzero scalar``.  Columns are indexed by position
in the matrix legend, which lists monomials in descending monomial order, so
"leftmost" always means "largest monomial".
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .polynomial import Polynomial, PolyRing, PolySystem
from .scalars import scalar_inverse, scalar_str

Row = dict


@dataclass(frozen=True)
class CoefficientMatrix:
    """Matrix A with column legend Psi so that the system reads A * Psi."""

    rows: tuple
    legend: tuple
    ring: Optional[PolyRing] = None

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(dict(r) for r in self.rows))
        object.__setattr__(self, "legend", tuple(self.legend))
        if len(set(self.legend)) != len(self.legend):
            raise ValueError("duplicate monomials in column legend")

    @property
    def shape(self):
        return (len(self.rows), len(self.legend))

    def dense(self) -> list:
        return [[r.get(j, Fraction(0)) for j in range(len(self.legend))] for r in self.rows]

    def row_polynomial(self, i: int) -> Polynomial:
        return row_to_polynomial(self.rows[i], self.legend, self.ring)

    def polynomials(self) -> list:
        return [self.row_polynomial(i) for i in range(len(self.rows))]

    def dump(self) -> str:
        """Legend line, then sparse ``row col value`` triples."""
        ring = self.ring
        names = [ring.mono_str(m) if ring else repr(m) for m in self.legend]
        lines = ["legend: " + " ".join(names)]
        for i, r in enumerate(self.rows):
            for j in sorted(r):
                lines.append(f"{i} {j} {scalar_str(r[j])}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_dense(cls, dense, legend, ring=None) -> "CoefficientMatrix":
        rows = [{j: Fraction(v) if not hasattr(v, "num") else v for j, v in enumerate(r) if v != 0} for r in dense]
        return cls(tuple(rows), tuple(legend), ring)


def load_matrix_dump(text: str, ring: PolyRing, params=()) -> CoefficientMatrix:
    from .parsing import parse_polynomial, parse_scalar

    lines = [ln for ln in text.splitlines() if ln.strip()]
    head = lines[0]
    if not head.startswith("legend:"):
        raise ValueError("matrix dump must start with 'legend:'")
    legend = []
    for tok in head[len("legend:"):].split():
        p = parse_polynomial(tok, ring, params)
        legend.append(next(iter(p.terms)))
    rows: dict = {}
    for ln in lines[1:]:
        i, j, v = ln.split(None, 2)
        rows.setdefault(int(i), {})[int(j)] = parse_scalar(v, params)
    n = max(rows) + 1 if rows else 0
    return CoefficientMatrix(tuple(rows.get(i, {}) for i in range(n)), tuple(legend), ring)


def row_to_polynomial(row: Row, legend: Sequence, ring: PolyRing) -> Polynomial:
    return Polynomial._raw(ring, {legend[j]: c for j, c in row.items()})


def linearize(system: PolySystem | Sequence[Polynomial], ring: PolyRing | None = None) -> CoefficientMatrix:
    """Coefficient matrix of the generators over the union of their monomials."""
    gens = list(system.generators) if isinstance(system, PolySystem) else list(system)
    if ring is None:
        ring = system.ring if isinstance(system, PolySystem) else (gens[0].ring if gens else PolyRing(()))
    monos = set()
    for g in gens:
        monos.update(g.terms)
    legend = ring.sort_desc(monos)
    col = {m: j for j, m in enumerate(legend)}
    rows = tuple({col[m]: c for m, c in g.terms.items()} for g in gens)
    return CoefficientMatrix(rows, tuple(legend), ring)


def _axpy(target: Row, factor, source: Row) -> None:
    """target -= factor * source, in place, pruning zeros."""
    for j, v in source.items():
        w = target.get(j)
        if w is None:
            target[j] = -factor * v
        else:
            w = w - factor * v
            if w == 0:
                del target[j]
            else:
                target[j] = w


@dataclass
class RREFResult:
    matrix: CoefficientMatrix
    pivots: list
    # transform[k][i]: coefficient of input row i in output row k
    transform: list = field(default_factory=list)


def rref_rows(rows: Sequence[Row], ncols: int | None = None, track: bool = False):
    """Gauss-Jordan elimination on sparse rows.

    Pivot choice: leftmost column, then the sparsest eligible row.  Returns
    ``(rows, pivots, transform)`` with zero rows dropped and rows sorted by
    pivot column.  ``transform`` is empty unless ``track`` is set.
    """
    work = [dict(r) for r in rows]
    trans = [{i: Fraction(1)} for i in range(len(rows))] if track else None
    active = [i for i, r in enumerate(work) if r]
    pivot_rows = []  # (col, row index)
    while active:
        col = min(min(work[i]) for i in active)
        cands = [i for i in active if col in work[i]]
        p = min(cands, key=lambda i: (len(work[i]), i))
        inv = scalar_inverse(work[p][col])
        if inv != 1:
            work[p] = {j: v * inv for j, v in work[p].items()}
            if track:
                trans[p] = {j: v * inv for j, v in trans[p].items()}
        prow = work[p]
        for i in itertools.chain(active, (r for _, r in pivot_rows)):
            if i == p:
                continue
            f = work[i].get(col)
            if f is None:
                continue
            _axpy(work[i], f, prow)
            if track:
                _axpy(trans[i], f, trans[p])
        pivot_rows.append((col, p))
        active = [i for i in active if i != p and work[i]]
    pivot_rows.sort()
    out_rows = [work[i] for _, i in pivot_rows]
    pivots = [c for c, _ in pivot_rows]
    transform = [trans[i] for _, i in pivot_rows] if track else []
    return out_rows, pivots, transform


def rref(matrix: CoefficientMatrix, track: bool = False) -> RREFResult:
    rows, pivots, transform = rref_rows(matrix.rows, len(matrix.legend), track)
    return RREFResult(CoefficientMatrix(tuple(rows), matrix.legend, matrix.ring), pivots, transform)


def rank(matrix: CoefficientMatrix) -> int:
    return len(rref_rows(matrix.rows)[1])


@dataclass
class PartitionBasis:
    """Kernel basis with pairwise disjoint supports, plus coloop columns."""

    blocks: list  # list of dict column -> scalar
    coloops: set


@dataclass
class PKBFailure:
    """The first RREF row with three or more nonzero entries."""

    row_index: int
    row: dict
    monomials: list

    def polynomial(self, ring: PolyRing) -> Polynomial:
        return Polynomial._raw(ring, {m: self.row[j] for j, m in zip(sorted(self.row), self.monomials)})


def pkb_test(matrix: CoefficientMatrix, reduced: RREFResult | None = None):
    """Return a PartitionBasis if every RREF row has at most two entries,
    else a PKBFailure naming the first offending row."""
    red = reduced or rref(matrix)
    rows, pivots = red.matrix.rows, red.pivots
    for k, r in enumerate(rows):
        if len(r) > 2:
            cols = sorted(r)
            return PKBFailure(k, dict(r), [matrix.legend[j] for j in cols])
    pivot_set = set(pivots)
    coloops = {pivots[k] for k, r in enumerate(rows) if len(r) == 1}
    blocks = []
    for c in range(len(matrix.legend)):
        if c in pivot_set:
            continue
        vec = {c: Fraction(1)}
        for k, r in enumerate(rows):
            a = r.get(c)
            if a is not None:
                vec[pivots[k]] = -a
        blocks.append(vec)
    return PartitionBasis(blocks, coloops)


def check_partition_basis(matrix: CoefficientMatrix, basis: PartitionBasis) -> bool:
    """Independent re-verification: vectors in ker(A), disjoint, right count."""
    seen: set = set()
    for b in basis.blocks:
        if not b or set(b) & seen:
            return False
        seen |= set(b)
        for r in matrix.rows:
            s = 0
            for j, v in b.items():
                a = r.get(j)
                if a is not None:
                    s = s + a * v
            if s != 0:
                return False
    if seen & basis.coloops:
        return False
    return len(basis.blocks) == len(matrix.legend) - rank(matrix)


def binomials_from_pkb(matrix: CoefficientMatrix, basis: PartitionBasis | None = None,
                       reduced: RREFResult | None = None) -> list:
    """One binomial (or monomial) per RREF row of a matrix that has a PKB."""
    red = reduced or rref(matrix)
    if basis is None:
        basis = pkb_test(matrix, red)
    if isinstance(basis, PKBFailure):
        raise ValueError("matrix has no partitioning kernel basis")
    return [row_to_polynomial(r, matrix.legend, matrix.ring) for r in red.matrix.rows]


@dataclass
class LinearRelation:
    """generators[dropped] == sum(coeffs[i] * generators[i]) over kept indices i."""

    dropped: int
    coeffs: dict

    def to_json(self):
        return {"dropped": self.dropped, "coeffs": {str(i): scalar_str(c) for i, c in self.coeffs.items()}}


class IncrementalBasis:
    """Echelon basis that grows one row at a time, tracking combinations."""

    def __init__(self):
        self.pivot_rows: dict = {}  # pivot col -> (row, combo over inserted ids)

    def reduce(self, row: Row, ident) -> tuple:
        row = dict(row)
        combo = {ident: Fraction(1)}
        while row:
            hit = None
            for j in sorted(row):
                if j in self.pivot_rows:
                    hit = j
                    break
            if hit is None:
                break
            prow, pcombo = self.pivot_rows[hit]
            f = row[hit]
            _axpy(row, f, prow)
            _axpy(combo, f, pcombo)
        return row, combo

    def insert(self, row: Row, ident) -> Optional[dict]:
        """Add row; if dependent return its relation over earlier ids, else None."""
        red, combo = self.reduce(row, ident)
        if not red:
            # 0 = row + sum(combo[other]); so row = -sum(combo[other]*other)
            return {i: -c for i, c in combo.items() if i != ident}
        j = min(red)
        inv = scalar_inverse(red[j])
        self.pivot_rows[j] = ({k: v * inv for k, v in red.items()}, {k: v * inv for k, v in combo.items()})
        return None


def prune_redundant_generators(system: PolySystem, order: Sequence[int] | None = None):
    """Keep a maximal linearly independent subset of the generators.

    Generators are scanned in `order` (default: as given); a generator that is
    a scalar combination of ones already kept is dropped and its relation
    recorded.  Returns ``(pruned_system, relations, kept_indices)``.
    """
    gens = system.generators
    mat = linearize(system)
    basis = IncrementalBasis()
    kept, relations = [], []
    for i in (order if order is not None else range(len(gens))):
        if gens[i].is_zero():
            relations.append(LinearRelation(i, {}))
            continue
        rel = basis.insert(mat.rows[i], i)
        if rel is None:
            kept.append(i)
        else:
            relations.append(LinearRelation(i, {k: v for k, v in rel.items() if v != 0}))
    kept_sorted = sorted(kept)
    return system.with_generators([gens[i] for i in kept_sorted]), relations, kept_sorted


def rank_of_columns(rows: Sequence[Row], drop: set) -> int:
    return len(rref_rows([{j: v for j, v in r.items() if j not in drop} for r in rows])[1])


def sparse_vector_in_rowspace(matrix: CoefficientMatrix, bound: int = 2) -> Optional[dict]:
    """Search the row space for a nonzero vector supported on <= bound columns.

    Exhaustive over column subsets of size `bound`: a subset S admits such a
    vector iff deleting the columns in S lowers the rank.  Only ``bound`` of 1
    or 2 is supported.
    """
    if bound not in (1, 2):
        raise ValueError("support bound must be 1 or 2")
    rows = [r for r in matrix.rows if r]
    if not rows:
        return None
    full = len(rref_rows(rows)[1])
    ncols = len(matrix.legend)
    used = sorted({j for r in rows for j in r})
    for size in range(1, bound + 1):
        for subset in itertools.combinations(used, size):
            drop = set(subset)
            if rank_of_columns(rows, drop) < full:
                return _vector_on(rows, subset, ncols)
    return None


def _vector_on(rows, subset, ncols) -> dict:
    # push the chosen columns to the far right; rows whose pivot lands there
    # are supported on the subset only
    others = [j for j in range(ncols) if j not in subset]
    perm = others + list(subset)
    pos = {j: k for k, j in enumerate(perm)}
    permuted = [{pos[j]: v for j, v in r.items()} for r in rows]
    red, pivots, _ = rref_rows(permuted)
    cut = len(others)
    for r, p in zip(red, pivots):
        if p >= cut:
            return {perm[k]: v for k, v in r.items()}
    raise AssertionError("rank drop without a supported row")
