import itertools

import numpy as np
import pytest

from frobalg import cstar
from frobalg import frobenius as fr
from frobalg import linalg as la
from frobalg.cstar import (StarAlgebra, change_basis, dual_numbers, group_algebra, matrix_algebra,
                           realize, realize_with_basis, regular_trace_gram, rescale, star_direct_sum,
                           wedderburn)
from frobalg.endo import end_monoid
from frobalg.errors import InvalidAlgebra, NonpositiveScale, NotCStar
from frobalg.frobenius import basis_monoid, classify
from frobalg.groupoid import cyclic_table, symmetric3_table
from frobalg.involution import AntilinearInvolution, InvolutionMonoid, validate


def s3_block_oracle():
    """Irrep dimensions of S3 from counting alone: #classes, abelianization, sum of squares."""
    T = symmetric3_table()
    n = len(T)
    e = next(g for g in range(n) if all(T[g][h] == h for h in range(n)))
    inv = [next(h for h in range(n) if T[g][h] == e) for g in range(n)]
    classes = {frozenset(T[T[h][g]][inv[h]] for h in range(n)) for g in range(n)}
    commutators = {T[T[g][h]][T[inv[g]][inv[h]]] for g in range(n) for h in range(n)}
    linear = n // len(commutators)                 # number of 1-dim irreps
    rest = len(classes) - linear
    for dims in itertools.combinations_with_replacement(range(2, n), rest):
        if linear + sum(d * d for d in dims) == n:
            return sorted([1] * linear + list(dims))
    raise AssertionError("no consistent dimension list")


def random_invertible(n, seed):
    rng = np.random.default_rng(seed)
    while True:
        P = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        if np.linalg.cond(P) < 50:
            return P


def test_gram_of_group_algebra_z2():
    assert np.allclose(regular_trace_gram(group_algebra(cyclic_table(2))).G, 2 * np.eye(2))


def test_gram_of_dual_numbers_is_degenerate():
    G = regular_trace_gram(dual_numbers())
    assert np.isclose(G.G[1, 1], 0)
    assert not G.positive_definite


def test_gram_of_mat2():
    assert np.allclose(regular_trace_gram(matrix_algebra(2)).G, 2 * np.eye(4))


def test_gram_blockwise_normalization():
    # on Mat(n) the regular trace of c is n Tr(c)
    for n in (1, 2, 3):
        assert np.allclose(regular_trace_gram(matrix_algebra(n)).G, n * np.eye(n * n))
    A = star_direct_sum(matrix_algebra(2), group_algebra([[0]]))
    assert np.allclose(np.diag(regular_trace_gram(A).G), [2, 2, 2, 2, 1])


def test_gram_rejects_wrong_unit():
    A = group_algebra(cyclic_table(2))
    with pytest.raises(InvalidAlgebra):
        regular_trace_gram(StarAlgebra(A.mult, [0, 1], A.star))


def test_from_monoid_on_composite_word():
    M = end_monoid(la.word(2, "3*"))
    A = StarAlgebra.from_monoid(InvolutionMonoid(M, fr.right_involution(M)))
    assert cstar.check_algebra(A).ok
    # the realized form is 6 Tr(a^dag b) on Mat(6), i.e. 6 times the raw inner product
    assert np.allclose(regular_trace_gram(A).G, 6 * np.eye(36))


def test_realize_mat2_is_raw_end_rescaled():
    IM = realize(matrix_algebra(2))
    rep = classify(IM.M)
    assert rep.dagger_frobenius and rep["special"] and rep["unitary"] and not rep["commutative"]
    ref = rescale(end_monoid(2).flatten(), 2)
    assert np.allclose(IM.M.m.data, ref.m.data)
    assert np.allclose(IM.M.u.data, ref.u.data)


def test_realize_group_algebra_z3_is_commutative_special():
    IM = realize(group_algebra(cyclic_table(3)))
    rep = classify(IM.M)
    assert all(rep.flags.values())
    assert validate(IM).ok


def test_realize_rejects_dual_numbers():
    with pytest.raises(NotCStar) as info:
        realize(dual_numbers())
    assert abs(info.value.eigenvalue) < 1e-12


def test_realize_rejects_sign_flipped_star():
    # C[Z2] with g* = -g is a *-algebra, but g* g = -1 has negative trace
    A = group_algebra(cyclic_table(2))
    bad = StarAlgebra(A.mult, A.unit, AntilinearInvolution(np.diag([1, -1])))
    with pytest.raises(NotCStar) as info:
        realize(bad)
    assert np.isclose(info.value.eigenvalue, -2)


def test_realized_basis_change_squares_to_gram():
    r = realize_with_basis(group_algebra(symmetric3_table()))
    T = r.basis_change
    assert np.allclose(T.conj().T @ T, r.gram.G)


def test_rerealizing_gives_identity_gram():
    IM = realize(star_direct_sum(matrix_algebra(2), group_algebra(cyclic_table(2))))
    assert np.allclose(regular_trace_gram(StarAlgebra.from_monoid(IM)).G, np.eye(6), atol=1e-10)


def test_realized_unit_norm_is_dimension():
    IM = realize(matrix_algebra(2))
    assert np.isclose(np.vdot(IM.M.unit_vector, IM.M.unit_vector), 4)


def test_rescale_by_one_is_identity():
    M = end_monoid(2)
    R = rescale(M, 1)
    assert np.allclose(R.m.data, M.m.data) and np.allclose(R.u.data, M.u.data)


def test_rescaled_end2_is_special():
    M = rescale(end_monoid(2), 2)
    assert np.allclose((M.m @ M.m.dag).data, np.eye(4))
    assert classify(M)["special"]


def test_rescale_round_trip():
    M = end_monoid(3)
    back = rescale(rescale(M, 4), 0.25)
    assert np.allclose(back.m.data, M.m.data) and np.allclose(back.u.data, M.u.data)


@pytest.mark.parametrize("alpha", [0, -1.5])
def test_rescale_rejects_nonpositive(alpha):
    with pytest.raises(NonpositiveScale):
        rescale(basis_monoid(2), alpha)


@pytest.mark.parametrize("alpha", [0.5, 2.0, 10.0])
@pytest.mark.parametrize("n_in,n_out", [(0, 1), (1, 1), (2, 1), (1, 3), (2, 0)])
def test_scaled_adjoint_matches_gram_oracle(alpha, n_in, n_out):
    d = 2
    rng = np.random.default_rng(n_in * 10 + n_out)
    f = la.random_morphism(la.word(*([d] * n_in)), la.word(*([d] * n_out)), rng)
    G_in = alpha ** n_in * np.eye(d ** n_in)
    G_out = alpha ** n_out * np.eye(d ** n_out)
    want = cstar.adjoint_under_gram(f, G_in, G_out)
    assert np.max(np.abs(cstar.scaled_adjoint(f, alpha, n_in, n_out) - want)) < 1e-9


def test_adjoint_under_gram_defining_property():
    rng = np.random.default_rng(5)
    f = la.random_morphism(3, 2, rng)
    B = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    C = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    G1, G2 = B.conj().T @ B + np.eye(3), C.conj().T @ C + np.eye(2)
    g = cstar.adjoint_under_gram(f, G1, G2)
    x, y = rng.standard_normal(3), rng.standard_normal(2) + 1j
    assert np.isclose(np.vdot(f.data @ x, G2 @ y), np.vdot(x, G1 @ (g @ y)))


def test_center_of_mat2_is_scalars():
    Z = cstar.center_basis(realize(matrix_algebra(2)).M)
    assert Z.shape == (4, 1)


def test_center_of_s3_is_three_dimensional():
    assert cstar.center_basis(realize(group_algebra(symmetric3_table())).M).shape[1] == 3


def test_central_idempotents_sum_to_unit_and_are_orthogonal():
    M = realize(group_algebra(symmetric3_table())).M
    ps = cstar.central_idempotents(M, seed=3)
    assert np.allclose(sum(ps), M.unit_vector)
    for i, p in enumerate(ps):
        for j, q in enumerate(ps):
            assert np.allclose(M.multiply(p, q), p if i == j else 0, atol=1e-9)


def test_wedderburn_s3_matches_character_oracle():
    w = wedderburn(realize(group_algebra(symmetric3_table())))
    assert sorted(w.block_dims) == s3_block_oracle() == [1, 1, 2]


def test_wedderburn_examples():
    assert wedderburn(realize(matrix_algebra(2))).block_dims == [2]
    assert wedderburn(realize(group_algebra(cyclic_table(3)))).block_dims == [1, 1, 1]
    both = star_direct_sum(matrix_algebra(2), group_algebra(cyclic_table(2)))
    assert sorted(wedderburn(realize(both)).block_dims) == [1, 1, 2]


def test_wedderburn_requires_special_unitary():
    M = end_monoid(2)
    with pytest.raises(InvalidAlgebra):
        wedderburn(InvolutionMonoid(M, fr.right_involution(M)))


@pytest.mark.parametrize("seed", range(20))
def test_scrambled_basis_gives_same_blocks_and_equivalent_monoid(seed):
    A = group_algebra(symmetric3_table())
    P = random_invertible(A.dim, seed)
    B = change_basis(A, P)
    r0, r1 = realize_with_basis(A), realize_with_basis(B)
    assert sorted(wedderburn(r1.monoid, seed=seed).block_dims) == [1, 1, 2]
    # new coordinates of a are T1 P^-1 x where x are the old raw coordinates
    U = r1.basis_change @ np.linalg.inv(P) @ np.linalg.inv(r0.basis_change)
    assert np.allclose(U.conj().T @ U, np.eye(6), atol=1e-9)
    M0, M1 = r0.monoid.M, r1.monoid.M
    Uw = la.Morphism(M0.obj, M1.obj, U)
    assert np.allclose((Uw @ M0.m).data, (M1.m @ la.tensor(Uw, Uw)).data, atol=1e-9)


def test_star_algebra_that_is_not_cstar():
    # C[Z3] with g* = g: a valid *-algebra (it is commutative) whose trace form is indefinite
    A = group_algebra(cyclic_table(3))
    other = StarAlgebra(A.mult, A.unit, AntilinearInvolution(np.eye(3)))
    assert cstar.check_algebra(other).ok
    assert np.allclose(np.sort(regular_trace_gram(other).eigenvalues), [-3, 3, 3])
    with pytest.raises(NotCStar):
        realize(other)


def test_check_algebra_flags_non_involutive_star():
    A = group_algebra(cyclic_table(2))
    rep = cstar.check_algebra(StarAlgebra(A.mult, A.unit, AntilinearInvolution(2 * np.eye(2))))
    assert not rep.ok
