import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from frobalg import linalg as la
from frobalg import spectral as sp
from frobalg.cstar import group_algebra, realize
from frobalg.endo import end_monoid
from frobalg.errors import NotCommutative, NotHomomorphism, NotNormal, ShapeMismatch
from frobalg.frobenius import basis_monoid, classify, transport
from frobalg.groupoid import cyclic_table
from frobalg.involution import is_monoid_hom
from frobalg.spectral import FinSetMap


def random_unitary(n, seed):
    rng = np.random.default_rng(seed)
    q, _ = np.linalg.qr(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
    return q


def test_spectrum_of_basis_monoid_is_standard_basis_in_order():
    S = sp.spectrum(basis_monoid(3))
    assert len(S) == 3
    assert np.allclose(S.matrix, np.eye(3))
    assert np.allclose(S.coordinates([5, 6, 7]), [5, 6, 7])


def test_spectrum_of_realized_z2():
    M = realize(group_algebra(cyclic_table(2))).M
    S = sp.spectrum(M)
    assert len(S) == 2
    for i, p in enumerate(S.points):
        assert np.allclose(M.m.dag.data @ p.vector(), np.kron(p.vector(), p.vector()))
        for j, c in enumerate(S.characters):
            assert np.isclose((c @ p).item(), float(i == j))


def test_spectrum_of_unitary_copy_recovers_rotated_basis():
    U = random_unitary(3, 2)
    S = sp.spectrum(transport(basis_monoid(3), U))
    # each point is a column of U, in some order
    overlap = np.abs(U.conj().T @ S.matrix)
    assert np.allclose(np.sort(overlap, axis=0)[-1], 1)


def test_spectrum_rejects_noncommutative():
    with pytest.raises(NotCommutative):
        sp.spectrum(end_monoid(2))


def test_free_examples():
    assert sp.free(0).dim == 0
    assert np.allclose(sp.free(3).m.data, basis_monoid(3).m.data)
    with pytest.raises(ValueError):
        sp.free(-1)


def test_free_map_identity_and_constant():
    assert np.array_equal(sp.free_map(FinSetMap.identity(3)).data, np.eye(3))
    const = sp.free_map(FinSetMap(2, 1, (0, 0)))
    assert const.dom == la.word(1) and const.cod == la.word(2)
    assert np.array_equal(const.data, [[1], [1]])


def test_finset_map_validation_and_composition():
    with pytest.raises(ShapeMismatch):
        FinSetMap(2, 2, (0,))
    with pytest.raises(ShapeMismatch):
        FinSetMap(2, 2, (0, 2))
    f, g = FinSetMap(3, 2, (0, 1, 1)), FinSetMap(2, 3, (2, 0))
    assert f.then(g).table == (2, 0, 0)


def all_functions(max_size=3):
    for s in range(max_size + 1):
        for t in range(max_size + 1):
            for table in itertools.product(range(t), repeat=s):
                yield FinSetMap(s, t, table)


def test_free_is_contravariant_functor():
    maps = [f for f in all_functions(2)]
    for f in maps:
        for g in maps:
            if f.target == g.source:
                lhs = sp.free_map(f.then(g)).data
                rhs = sp.free_map(f).data @ sp.free_map(g).data
                assert np.array_equal(lhs, rhs)


def test_function_round_trip_is_exact():
    for f in all_functions(3):
        if f.source == 0 or f.target == 0:
            continue
        back = sp.transport_function(sp.free_map(f), sp.free(f.source), sp.free(f.target))
        assert back == f


def test_homomorphism_round_trip_on_zero_one_matrices():
    # every 0/1 matrix that passes the homomorphism check is free_map of its function
    for s, t in itertools.product(range(1, 4), repeat=2):
        A, B = sp.free(s), sp.free(t)
        for bits in itertools.product((0, 1), repeat=s * t):
            h = la.Morphism(la.word(t), la.word(s), np.array(bits, dtype=float).reshape(s, t))
            if not is_monoid_hom(h, B, A).ok:
                continue
            f = sp.transport_function(h, A, B)
            assert np.array_equal(sp.free_map(f).data, h.data)


def test_transport_function_through_a_rotated_copy():
    U = random_unitary(3, 4)
    A = transport(basis_monoid(3), U)
    h = la.Morphism(la.word(2), la.word(3), U @ sp.delta_matrix(FinSetMap(3, 2, (1, 0, 1))).T)
    f = sp.transport_function(h, A, sp.free(2))
    # A's points are U e_i in the spectrum order; map indices back through the overlap
    S = sp.spectrum(A)
    idx = [int(np.argmax(np.abs(U.conj().T @ p.vector()))) for p in S.points]
    assert tuple(f.table) == tuple((1, 0, 1)[i] for i in idx)


def test_transport_function_rejects_non_unital_map():
    h = la.Morphism(la.word(2), la.word(2), np.zeros((2, 2)))
    with pytest.raises(NotHomomorphism):
        sp.transport_function(h, sp.free(2), sp.free(2))


def test_free_map_preserves_involution():
    f = FinSetMap(3, 2, (0, 1, 1))
    assert sp.preserves_involution(sp.free_map(f), sp.free(3), sp.free(2)).ok


def test_is_compatible_examples():
    M = basis_monoid(3)
    assert sp.is_compatible(la.Morphism(M.obj, M.obj, np.diag([1, 2j, -3])), M)
    assert not sp.is_compatible(la.Morphism(M.obj, M.obj, np.roll(np.eye(3), 1, axis=0)), M)
    with pytest.raises(ShapeMismatch):
        sp.is_compatible(la.identity(2), M)


def test_diagonalize_diagonal_matrix_gives_basis_monoid():
    f = la.Morphism(la.word(3), la.word(3), np.diag([1, 2, 3]))
    M, phi = sp.internal_diagonalize(f)
    assert np.allclose(M.m.data, basis_monoid(3).m.data)
    assert np.allclose(np.sort(phi.vector().real), [1, 2, 3])


def test_diagonalize_rejects_nilpotent():
    with pytest.raises(NotNormal):
        sp.internal_diagonalize(la.Morphism(la.word(2), la.word(2), [[0, 1], [0, 0]]))


def test_diagonalize_pauli_x():
    f = la.Morphism(la.word(2), la.word(2), [[0, 1], [1, 0]])
    M, phi = sp.internal_diagonalize(f)
    assert classify(M)["special"] and classify(M)["commutative"]
    assert np.allclose(sp.action(M, phi).data, f.data)
    assert sp.is_compatible(f, M)


def test_diagonalize_degenerate_spectrum():
    U = random_unitary(4, 9)
    f = la.Morphism(la.word(4), la.word(4), U @ np.diag([2, 2, 2, -1j]) @ U.conj().T)
    M, phi = sp.internal_diagonalize(f)
    assert classify(M).dagger_frobenius
    assert np.max(np.abs(sp.action(M, phi).data - f.data)) < 1e-8


@settings(max_examples=25, deadline=None)
@given(n=st.integers(1, 4), seed=st.integers(0, 10_000))
def test_action_of_any_element_is_normal(n, seed):
    M = transport(basis_monoid(n), random_unitary(n, seed))
    rng = np.random.default_rng(seed)
    phi = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    assert la.is_normal(sp.action(M, phi))


@settings(max_examples=25, deadline=None)
@given(n=st.integers(1, 6), seed=st.integers(0, 10_000))
def test_diagonalize_reconstructs_random_normal(n, seed):
    rng = np.random.default_rng(seed)
    U = random_unitary(n, seed)
    d = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    f = la.Morphism(la.word(n), la.word(n), U @ np.diag(d) @ U.conj().T)
    M, phi = sp.internal_diagonalize(f)
    rep = classify(M)
    assert rep.dagger_frobenius and rep["special"] and rep["commutative"]
    assert sp.is_compatible(f, M)
    assert np.max(np.abs(sp.action(M, phi).data - f.data)) < 1e-8
