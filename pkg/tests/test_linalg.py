import itertools
import random
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from binomiality import PolySystem, linearize, load_system, prune_redundant_generators, rref, sparse_vector_in_rowspace
from binomiality.linalg import (CoefficientMatrix, PartitionBasis, PKBFailure, binomials_from_pkb,
                                check_partition_basis, load_matrix_dump, pkb_test, rank, rref_rows)
from binomiality.polynomial import PolyRing

F = Fraction


def absorbed_system():
    return PolySystem.from_strings("xyzw", ["x - y", "z - w", "x^2 - x*y + x*z - x*w"])


def test_linearize_example_matrix():
    A = linearize(absorbed_system())
    ring = A.ring
    # degree-2 columns come first in the descending legend
    assert [ring.mono_str(m) for m in A.legend] == ["x^2", "x*y", "x*z", "x*w", "x", "y", "z", "w"]
    assert A.dense() == [[0, 0, 0, 0, 1, -1, 0, 0], [0, 0, 0, 0, 0, 0, 1, -1], [1, -1, 1, -1, 0, 0, 0, 0]]


def test_linearize_edge_cases():
    assert linearize(PolySystem.from_strings("x", [])).shape == (0, 0)
    A = linearize(PolySystem.from_strings("x", ["2*x"]))
    assert A.dense() == [[2]]


def test_example_matrix_is_already_reduced_and_fails_pkb():
    A = linearize(absorbed_system())
    red = rref(A)
    assert sorted(red.matrix.rows, key=min) == sorted(A.rows, key=min)
    fail = pkb_test(A)
    assert isinstance(fail, PKBFailure)
    assert len(fail.row) == 4


def test_identity():
    I = CoefficientMatrix.from_dense([[1, 0], [0, 1]], [(1, 0), (0, 1)], PolyRing(("x", "y")))
    assert rref(I).matrix.dense() == I.dense()
    basis = pkb_test(I)
    assert isinstance(basis, PartitionBasis)
    assert basis.blocks == [] and basis.coloops == {0, 1}
    assert [p.to_str() for p in binomials_from_pkb(I)] == ["x", "y"]


def test_single_binomial_row():
    A = CoefficientMatrix.from_dense([[1, -1]], [(1, 0), (0, 1)], PolyRing(("x", "y")))
    assert [p.to_str() for p in binomials_from_pkb(A)] == ["x - y"]


def test_hand_elimination_example():
    # legend ab, x, y, 1 ; rows of {ab - x, ab - y, x + y + 1}
    ring = PolyRing(("a", "b", "x", "y"))
    legend = [(1, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (0, 0, 0, 0)]
    A = CoefficientMatrix.from_dense([[1, -1, 0, 0], [1, 0, -1, 0], [0, 1, 1, 1]], legend, ring)
    red = rref(A)
    half = F(1, 2)
    assert red.matrix.dense() == [[1, 0, 0, half], [0, 1, 0, half], [0, 0, 1, half]]
    basis = pkb_test(A)
    assert isinstance(basis, PartitionBasis) and len(basis.blocks) == 1
    assert check_partition_basis(A, basis)
    assert [p.to_str() for p in binomials_from_pkb(A)] == ["a*b + 1/2", "x + 1/2", "y + 1/2"]


def test_prune_duplicate():
    S = PolySystem.from_strings("xy", ["x*y - x", "-x*y + x"])
    P, rel, kept = prune_redundant_generators(S)
    assert len(P) == 1 and kept == [0]
    assert rel[0].dropped == 1 and rel[0].coeffs == {0: -1}


def test_prune_erk_seven_relations(fixture_path):
    S = load_system(fixture_path("erk.sys"))
    P, rel, kept = prune_redundant_generators(S)
    assert len(P) == 22 and len(rel) == 7
    assert rank(linearize(P)) == 22
    gens = S.generators
    for r in rel:
        combo = sum((gens[i].scale(c) for i, c in r.coeffs.items()), S.ring.zero())
        assert combo == gens[r.dropped]
    # f2 = -f3: one of the pair survives
    assert (1 in kept) != (2 in kept)


def test_sparse_vector_examples():
    S = PolySystem.from_strings("xyzw", ["x - y", "z - w"])
    v = sparse_vector_in_rowspace(linearize(S))
    assert v is not None and len(v) <= 2


def _slice_of_sphere(d):
    ring = PolyRing(("x", "y", "z"))
    f = ring.parse("x^2 + y^2 + z^2")
    return linearize([f.mul_monomial(m) for m in ring.monomials_of_degree(d - 2)], ring)


def test_sphere_slice_has_no_binomial():
    assert sparse_vector_in_rowspace(_slice_of_sphere(4)) is None


def _brute_force_pair(rows, ncols):
    full = rank(CoefficientMatrix(tuple(rows), tuple((j,) for j in range(ncols))))
    for pair in itertools.combinations(range(ncols), 2):
        red = [{j: v for j, v in r.items() if j not in pair} for r in rows]
        if len(rref_rows(red)[1]) < full:
            return True
    return False


def test_random_two_by_three_always_has_pair(rng):
    for _ in range(50):
        while True:
            dense = [[F(rng.randint(-4, 4)) for _ in range(3)] for _ in range(2)]
            A = CoefficientMatrix.from_dense(dense, [(2,), (1,), (0,)])
            if rank(A) == 2:
                break
        v = sparse_vector_in_rowspace(A)
        assert v is not None and len(v) <= 2
        assert _brute_force_pair(A.rows, 3)
        # v lies in the row space
        assert rank(CoefficientMatrix(A.rows + (v,), A.legend)) == 2


def test_matrix_dump_round_trip():
    A = linearize(absorbed_system())
    B = load_matrix_dump(A.dump(), A.ring)
    assert B.rows == A.rows and B.legend == A.legend


small = st.fractions(min_value=-3, max_value=3, max_denominator=3)


@st.composite
def matrices(draw):
    m = draw(st.integers(1, 5))
    n = draw(st.integers(1, 6))
    dense = draw(st.lists(st.lists(st.one_of(st.just(F(0)), small), min_size=n, max_size=n), min_size=m, max_size=m))
    return CoefficientMatrix.from_dense(dense, [(j,) for j in range(n)])


def _kernel_vectors(A, r: random.Random, count=5):
    red = rref(A)
    pivots = red.pivots
    free = [j for j in range(len(A.legend)) if j not in pivots]
    out = []
    for _ in range(count):
        vec = {j: F(r.randint(-3, 3)) for j in free}
        for row, p in zip(red.matrix.rows, pivots):
            vec[p] = -sum((row[j] * vec[j] for j in row if j != p), F(0))
        out.append(vec)
    return out


def _apply(A, vec):
    return [sum((v * vec.get(j, 0) for j, v in row.items()), F(0)) for row in A.rows]


@settings(max_examples=300, deadline=None)
@given(matrices(), st.randoms(use_true_random=False))
def test_rref_invariants(A, r):
    red = rref(A, track=True)
    M = red.matrix
    # idempotent
    again = rref(M)
    assert again.matrix.rows == M.rows
    # reduced: pivot entries are 1 and pivot columns are otherwise empty
    for k, (row, p) in enumerate(zip(M.rows, red.pivots)):
        assert row[p] == 1 and min(row) == p
        assert all(p not in other for i, other in enumerate(M.rows) if i != k)
    # transform reproduces each output row
    for row, t in zip(M.rows, red.transform):
        combo = {}
        for i, c in t.items():
            for j, v in A.rows[i].items():
                combo[j] = combo.get(j, 0) + c * v
        assert {j: v for j, v in combo.items() if v != 0} == row
    # same kernel
    for vec in _kernel_vectors(A, r):
        assert all(x == 0 for x in _apply(A, vec))


@settings(max_examples=300, deadline=None)
@given(matrices())
def test_pkb_success_is_a_real_partition(A):
    res = pkb_test(A)
    if isinstance(res, PartitionBasis):
        assert check_partition_basis(A, res)
        assert all(len(r) <= 2 for r in rref(A).matrix.rows)
    else:
        assert len(res.row) >= 3


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_prune_keeps_full_rank(A):
    ring = PolyRing(tuple(f"v{j}" for j in range(len(A.legend))))
    legend = [tuple(1 if i == j else 0 for i in range(ring.nvars)) for j in range(ring.nvars)]
    gens = [ring.parse("0") + sum((ring.monomial(legend[j], v) for j, v in row.items()), ring.zero()) for row in A.rows]
    S = PolySystem(ring, (), tuple(gens))
    P, rel, kept = prune_redundant_generators(S)
    assert rank(linearize(P)) == len(P) == rank(A)
    assert len(kept) + len(rel) == len(gens)
