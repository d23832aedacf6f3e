"""Field-level linear algebra against exhaustive and hand-checked oracles."""

import random
from itertools import permutations, product

import pytest

from glsemi.errors import ConfigurationError, NoPreimageError, PreconditionError
from glsemi.gf_linalg import (
    Subspace,
    all_vectors,
    check_modulus,
    enumerate_complements,
    extend_basis,
    full_space,
    general_linear,
    gl_order,
    identity_mat,
    image,
    is_complement,
    kernel,
    linear_map,
    mat_inverse,
    mat_mul,
    preimage_vector,
    rref_canonical,
    vec_mat,
    zero_space,
)

from helpers import (
    all_subspace_vector_sets,
    naive_kernel_vectors,
    naive_mat_mul,
    naive_span,
    naive_vec_mat,
)


def all_matrices(p, n):
    for entries in product(range(p), repeat=n * n):
        yield tuple(entries[i * n : (i + 1) * n] for i in range(n))


def test_check_modulus():
    for p in (2, 3, 5, 7, 11, 13):
        check_modulus(p)
    for bad in (1, 4, 9, 15, 17, 0, -3):
        with pytest.raises(ConfigurationError):
            check_modulus(bad)


def test_mat_mul_identity_is_neutral():
    m = ((1, 0), (1, 1))
    ident = identity_mat(2)
    assert mat_mul(2, ident, m) == m
    assert mat_mul(2, m, ident) == m


def test_mat_mul_hand_checked_squares():
    m = ((1, 0), (1, 1))
    assert mat_mul(2, m, m) == identity_mat(2)
    m3 = ((2, 0), (0, 1))
    assert mat_mul(3, m3, m3) == identity_mat(2)


def test_mat_mul_matches_naive_and_associates():
    rng = random.Random(7)
    for p in (2, 3, 5):
        mats = [tuple(tuple(rng.randrange(p) for _ in range(3)) for _ in range(3)) for _ in range(12)]
        for a, b in zip(mats, mats[1:]):
            assert mat_mul(p, a, b) == naive_mat_mul(p, a, b)
        for a, b, c in zip(mats, mats[1:], mats[2:]):
            assert mat_mul(p, mat_mul(p, a, b), c) == mat_mul(p, a, mat_mul(p, b, c))


def test_mat_mul_dimension_mismatch():
    with pytest.raises(ConfigurationError):
        mat_mul(2, ((1, 0),), ((1,), (0,), (1,)))


def test_vec_mat_matches_naive():
    rng = random.Random(3)
    for p in (2, 3):
        for _ in range(20):
            v = tuple(rng.randrange(p) for _ in range(3))
            m = tuple(tuple(rng.randrange(p) for _ in range(3)) for _ in range(3))
            assert vec_mat(p, v, m) == naive_vec_mat(p, v, m)


def test_rref_hand_checked():
    assert rref_canonical(2, 2, [(0, 0)]) == zero_space(2, 2)
    assert rref_canonical(2, 2, [(1, 1), (0, 1)]).basis == ((1, 0), (0, 1))
    assert rref_canonical(3, 2, [(2, 2)]).basis == ((1, 1),)


def test_rref_idempotent_and_span_invariant_exhaustive_gf2():
    for n in (2, 3):
        for m in all_matrices(2, n):
            sub = rref_canonical(2, n, m)
            assert rref_canonical(2, n, sub.basis) == sub
            assert naive_span(2, n, sub.basis) == naive_span(2, n, m)
            for perm in permutations(m):
                assert rref_canonical(2, n, perm) == sub


def test_rref_span_invariant_randomized_gf3():
    rng = random.Random(11)
    for _ in range(300):
        n = rng.choice((2, 3))
        rows = [tuple(rng.randrange(3) for _ in range(n)) for _ in range(rng.randrange(1, 4))]
        sub = rref_canonical(3, n, rows)
        assert naive_span(3, n, sub.basis) == naive_span(3, n, rows)
        scaled = [tuple((2 * x) % 3 for x in row) for row in reversed(rows)]
        assert rref_canonical(3, n, scaled) == sub


def test_image_and_kernel_hand_checked():
    assert image(2, ((0, 0), (0, 0))) == zero_space(2, 2)
    assert image(2, identity_mat(2)) == full_space(2, 2)
    assert image(2, ((1, 0), (1, 0))).basis == ((1, 0),)
    assert kernel(2, identity_mat(2)) == zero_space(2, 2)
    assert kernel(2, ((0, 0), (0, 0))) == full_space(2, 2)
    assert kernel(2, ((1, 0), (1, 0))).basis == ((1, 1),)


def test_rank_nullity_exhaustive_gf2():
    for n in (2, 3):
        for m in all_matrices(2, n):
            img = image(2, m)
            ker = kernel(2, m)
            assert img.dim + ker.dim == n
            assert naive_kernel_vectors(2, m) == naive_span(2, n, ker.basis)
            assert naive_span(2, n, m) == naive_span(2, n, img.basis)


def test_kernel_matches_exhaustion_gf3():
    rng = random.Random(5)
    for _ in range(150):
        m = tuple(tuple(rng.randrange(3) for _ in range(3)) for _ in range(3))
        assert naive_kernel_vectors(3, m) == naive_span(3, 3, kernel(3, m).basis)


def test_subspace_membership_and_coordinates():
    sub = rref_canonical(3, 3, [(1, 0, 2), (0, 1, 1)])
    for v in sub.vectors():
        coeffs = sub.coordinates(v)
        rebuilt = [0, 0, 0]
        for c, row in zip(coeffs, sub.basis):
            for j, x in enumerate(row):
                rebuilt[j] = (rebuilt[j] + c * x) % 3
        assert tuple(rebuilt) == v
    assert not sub.contains((1, 1, 1))
    with pytest.raises(PreconditionError):
        sub.coordinates((1, 1, 1))


def test_complements_trivial_cases():
    assert enumerate_complements(full_space(2, 2)) == [zero_space(2, 2)]
    assert enumerate_complements(zero_space(2, 2)) == [full_space(2, 2)]


def test_complements_hand_checked_lines():
    u = rref_canonical(2, 2, [(1, 0)])
    got = {w.basis for w in enumerate_complements(u)}
    assert got == {((0, 1),), ((1, 1),)}
    u3 = rref_canonical(3, 2, [(1, 0)])
    assert len(enumerate_complements(u3)) == 3


@pytest.mark.parametrize("p,n,k", [(2, 2, 1), (2, 3, 1), (2, 3, 2), (3, 2, 1), (2, 4, 2)])
def test_complement_count_and_validity(p, n, k):
    u = Subspace(p, n, identity_mat(n)[:k])
    comps = enumerate_complements(u)
    assert len(comps) == p ** (k * (n - k))
    assert len(set(comps)) == len(comps)
    for w in comps:
        assert w.dim + u.dim == n
        assert is_complement(w, u)


@pytest.mark.parametrize("p,n,k", [(2, 3, 1), (2, 3, 2), (3, 2, 1)])
def test_complements_match_filter_oracle(p, n, k):
    u = Subspace(p, n, identity_mat(n)[:k])
    u_vectors = naive_span(p, n, u.basis)
    expected = {
        space
        for space in all_subspace_vector_sets(p, n, n - k)
        if space & u_vectors == {(0,) * n}
    }
    got = {naive_span(p, n, w.basis) for w in enumerate_complements(u)}
    assert got == expected


def test_extend_basis_deterministic():
    v = full_space(2, 2)
    assert extend_basis([(1, 0), (0, 1)], v) == []
    assert extend_basis([(1, 1)], v) == [(0, 1)]
    u = rref_canonical(2, 3, [(1, 0, 1), (0, 1, 1)])
    appended = extend_basis([], u)
    assert set(appended) == set(u.basis)
    with pytest.raises(PreconditionError):
        extend_basis([(1, 0), (1, 0)], v)
    with pytest.raises(PreconditionError):
        extend_basis([(1, 0, 1)], rref_canonical(2, 3, [(1, 0, 0)]))


def test_preimage_vector():
    assert preimage_vector(2, identity_mat(2), (1, 1)) == (1, 1)
    m = ((1, 0), (1, 0))
    # solutions of v*m = (1,0) are {(0,1), (1,0)}; lexicographic least wins
    assert preimage_vector(2, m, (1, 0)) == (0, 1)
    with pytest.raises(NoPreimageError):
        preimage_vector(2, m, (0, 1))


def test_preimage_is_lex_least_by_exhaustion():
    rng = random.Random(13)
    for p in (2, 3):
        for _ in range(60):
            m = tuple(tuple(rng.randrange(p) for _ in range(3)) for _ in range(3))
            target = naive_vec_mat(p, tuple(rng.randrange(p) for _ in range(3)), m)
            expected = min(v for v in all_vectors(p, 3) if naive_vec_mat(p, v, m) == target)
            assert preimage_vector(p, m, target) == expected


def test_mat_inverse_and_linear_map():
    for p, n in ((2, 2), (3, 2), (2, 3)):
        for m in general_linear(p, n):
            assert mat_mul(p, m, mat_inverse(p, m)) == identity_mat(n)
    with pytest.raises(PreconditionError):
        mat_inverse(2, ((1, 0), (1, 0)))
    basis = ((1, 1), (0, 1))
    images = ((0, 1), (1, 0))
    built = linear_map(2, basis, images)
    for b, t in zip(basis, images):
        assert vec_mat(2, b, built) == t
    with pytest.raises(PreconditionError):
        linear_map(2, ((1, 0), (1, 0)), images)


def test_general_linear_sizes():
    assert len(general_linear(2, 1)) == gl_order(2, 1) == 1
    assert len(general_linear(2, 2)) == gl_order(2, 2) == 6
    assert len(general_linear(3, 1)) == gl_order(3, 1) == 2
    assert len(general_linear(3, 2)) == gl_order(3, 2) == 48
    assert general_linear(5, 0) == ((),)
    assert gl_order(5, 0) == 1
