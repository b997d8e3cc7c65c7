"""
Endomorphism monoids ``End(A) = (A* (x) A, 1 (x) eta (x) 1, epsilon)``.

Coordinates: for a single-factor object ``A = [n]`` a state of ``[n*, n]`` is
identified with an n x n matrix by ``name(X) = sum_ij X[i, j] e_i (x) e_j``
(row-major vectorization). With this choice the End multiplication is the
ordinary matrix product, ``m(name(X) (x) name(Y)) = name(X @ Y)``, and the
unit is ``name(1)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg as la
from .errors import InvalidInvolution, ShapeMismatch
from .frobenius import Monoid, require_frobenius, right_action
from .involution import InvolutionMonoid, Report, validate
from .linalg import DEFAULT_TOL, Morphism, Tolerance


def end_monoid(A) -> Monoid:
    """``End(A)`` for an object given as a dimension or a wire word."""
    A = la.as_word(A)
    one = la.identity(A)
    m = la.tensor(la.identity(A.dual()), la.cap(A), one)
    return Monoid(A.dual() + A, m, la.cup(A))


def end_involution(A) -> InvolutionMonoid:
    """End(A) with its (identity) canonical involution."""
    M = end_monoid(A)
    return InvolutionMonoid(M, la.identity(M.obj))


def name(X) -> Morphism:
    X = np.asarray(X, dtype=complex)
    n = X.shape[0]
    return la.state(X.reshape(-1), la.word(f"{n}*", n))


def unname(alpha) -> np.ndarray:
    vec = alpha.vector() if isinstance(alpha, Morphism) else np.asarray(alpha)
    n = int(round(np.sqrt(vec.size)))
    if n * n != vec.size:
        raise ShapeMismatch(f"{vec.size} coordinates do not form a square matrix")
    return vec.reshape(n, n)


def end_product(x, y, A) -> np.ndarray:
    """End(A) multiplication of two coordinate vectors without building m.

    Pairs the A-leg of ``x`` against the A*-leg of ``y`` through the word
    reversal, so it agrees with ``end_monoid(A).multiply`` for any word.
    """
    A = la.as_word(A)
    N = A.total
    X = np.asarray(x).reshape(N, N)
    Y = np.asarray(y).reshape(N, N)
    r = la.reversal_index(A)
    # eta pairs e_b in A with e_c in A* where r[c] = b
    P = np.zeros((N, N))
    P[r, np.arange(N)] = 1.0
    return (X @ P @ Y).reshape(-1)


def embed(M: Monoid) -> Morphism:
    """The right-action embedding ``h = (1 (x) m) o (epsilon (x) 1) : A -> A* (x) A``."""
    A = M.obj
    return la.compose_all(la.tensor(la.cup(A), la.identity(A)),
                          la.tensor(la.identity(A.dual()), M.m))


def retraction(M: Monoid) -> Morphism:
    """``u* (x) 1``, a left inverse of :func:`embed`."""
    return la.tensor(la.dual(M.u), la.identity(M.obj))


def embedding_report(M: Monoid, s: Morphism | None = None,
                     tol: Tolerance = DEFAULT_TOL) -> Report:
    """Monic, multiplicative, unital and (given ``s``) involution-preserving.

    Multiplicativity is checked on all basis pairs with :func:`end_product`,
    which avoids materialising the End(A) multiplication of size N^2 x N^4.
    """
    A = M.obj
    N = M.dim
    h = embed(M)
    rep = Report()
    rep.add("monic", retraction(M) @ h, la.identity(A), tol)
    H = np.asarray(h.data)                       # columns are h(e_i)
    T = M.tensor3
    lhs = np.einsum("xk,kij->xij", H, T)         # h(e_i e_j)
    rhs = np.empty_like(lhs)
    for i in range(N):
        for j in range(N):
            rhs[:, i, j] = end_product(H[:, i], H[:, j], A)
    rep.add("multiplicative", lhs, rhs, tol)
    rep.add("unital", h @ M.u, la.cup(A), tol)
    if s is not None:
        # End(A) has identity involution: 1 o h = h_* o s
        rep.add("involution_preserving", h, la.conjugate(h) @ s, tol)
    return rep


def cstar_norm(IM: InvolutionMonoid, alpha, tol: Tolerance = DEFAULT_TOL) -> float:
    """Operator norm of the image of ``alpha`` in End(A).

    ``h(alpha)`` is the name of the right action R_alpha, so its operator
    norm as a matrix is ``||R_alpha||``.
    """
    require_frobenius(IM.M, tol)
    rep = validate(IM, tol)
    if not rep.ok:
        raise InvalidInvolution(f"invalid involution monoid: {rep.deviations}")
    return la.operator_norm(right_action(IM.M, alpha))


def name_of_image(M: Monoid, alpha) -> np.ndarray:
    """``h(alpha)`` reinterpreted as an N x N matrix; equals ``R_alpha`` transposed.

    Rows are indexed by the basis of A (the A* leg is re-indexed through the
    word reversal), columns by the basis of A.
    """
    h = embed(M)
    vec = h.data @ np.asarray(alpha.vector() if isinstance(alpha, Morphism) else alpha)
    N = M.dim
    out = np.empty((N, N), dtype=complex)
    out[la.reversal_index(M.obj), :] = vec.reshape(N, N)
    return out
