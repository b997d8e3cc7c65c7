"""
From a basis-free *-algebra to a special unitary dagger-Frobenius monoid.

The canonical inner product is the regular trace form

    G(a, b) = Tr(L_{t(a) b}),

the trace of left multiplication by ``a* b`` on the algebra itself. On a
matrix block Mat(n) the left-regular trace of ``c`` is ``n Tr(c)``, so this
is exactly the blockwise ``n Tr(a^dag b)`` normalization that makes End(C^n)
special; the regular form gets there without decomposing first. It is
positive-definite precisely when the *-algebra is a C*-algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import linalg as la
from .errors import DegenerateSplit, InvalidAlgebra, NonpositiveScale, NotCStar, ShapeMismatch
from .frobenius import Monoid, classify, require_frobenius, star_element, transport
from .involution import (AntilinearInvolution, InvolutionMonoid, Report,
                         antilinear_from_linear, check_antilinear, linear_from_antilinear)
from .linalg import DEFAULT_TOL, Morphism, Tolerance

PD_RELATIVE = 1e-8
NULL_THRESHOLD = 1e-10
GAP_THRESHOLD = 1e-6
RETRIES = 8


@dataclass(frozen=True, eq=False)
class StarAlgebra:
    """Structure constants ``e_i e_j = sum_k mult[i, j, k] e_k`` plus a star."""
    mult: np.ndarray
    unit: np.ndarray
    star: AntilinearInvolution

    def __post_init__(self):
        c = np.array(self.mult, dtype=complex)
        n = c.shape[0]
        if c.shape != (n, n, n):
            raise ShapeMismatch(f"structure constants must be n x n x n, got {c.shape}")
        u = np.array(self.unit, dtype=complex).reshape(-1)
        if u.size != n or self.star.S.shape != (n, n):
            raise ShapeMismatch("unit and star must match the algebra dimension")
        c.flags.writeable = False
        u.flags.writeable = False
        object.__setattr__(self, "mult", c)
        object.__setattr__(self, "unit", u)

    @property
    def dim(self) -> int:
        return self.mult.shape[0]

    def monoid(self) -> Monoid:
        """The algebra as a monoid on C^n with the standard inner product."""
        n = self.dim
        t = self.mult.transpose(2, 0, 1)
        return Monoid.from_arrays(t.reshape(n, n * n), self.unit)

    @classmethod
    def from_monoid(cls, IM: InvolutionMonoid) -> "StarAlgebra":
        M = IM.M.flatten()
        # re-index the A* leg: flat [n*] pairs index K with basis element K
        order = np.argsort(la.reversal_index(IM.M.obj))
        s = Morphism(M.obj, M.obj.dual(), np.asarray(IM.s.data)[order])
        return cls(M.tensor3.transpose(1, 2, 0), M.unit_vector, antilinear_from_linear(s))


def check_algebra(A: StarAlgebra, tol: Tolerance = DEFAULT_TOL) -> Report:
    M = A.monoid()
    T = M.tensor3
    n = A.dim
    rep = Report()
    rep.add("associative", np.einsum("lpk,pij->lijk", T, T), np.einsum("lip,pjk->lijk", T, T), tol)
    eye = np.eye(n)
    rep.add("unital", np.stack([np.einsum("kij,i->kj", T, A.unit), np.einsum("kij,j->ki", T, A.unit)]),
            np.stack([eye, eye]), tol)
    star = check_antilinear(M, A.star, tol)
    for k in star.checks:
        rep.checks["star_" + k] = star.checks[k]
        rep.deviations["star_" + k] = star.deviations[k]
    return rep


@dataclass(frozen=True, eq=False)
class GramForm:
    G: np.ndarray

    @property
    def eigenvalues(self) -> np.ndarray:
        if self.G.size == 0:
            return np.zeros(0)
        return np.linalg.eigvalsh((self.G + self.G.conj().T) / 2)

    @property
    def hermitian_defect(self) -> float:
        return Tolerance.deviation(self.G, self.G.conj().T)

    @property
    def positive_definite(self) -> bool:
        ev = self.eigenvalues
        if ev.size == 0:
            return True
        return bool(ev.max() > 0 and ev.min() > PD_RELATIVE * ev.max())


def regular_trace_gram(A: StarAlgebra, tol: Tolerance = DEFAULT_TOL) -> GramForm:
    rep = check_algebra(A, tol)
    if not rep.ok:
        bad = {k: v for k, v in rep.deviations.items() if not rep.checks[k]}
        raise InvalidAlgebra(f"not a *-algebra: {bad}")
    T = A.monoid().tensor3
    trace_of_left = np.einsum("bkb->k", T)          # Tr(L_{e_k})
    # G[i, j] = Tr(L_{t(e_i) e_j}), t(e_i) = S[:, i]
    G = np.einsum("ai,kaj,k->ij", A.star.S, T, trace_of_left)
    return GramForm(G)


def hermitian_sqrt(G: np.ndarray) -> np.ndarray:
    w, V = np.linalg.eigh((G + G.conj().T) / 2)
    return (V * np.sqrt(np.clip(w, 0, None))) @ V.conj().T


class Realization(NamedTuple):
    monoid: InvolutionMonoid
    basis_change: np.ndarray   # T with T^dag T = G; new coordinates are T x
    gram: GramForm


def realize_with_basis(A: StarAlgebra, tol: Tolerance = DEFAULT_TOL) -> Realization:
    gram = regular_trace_gram(A, tol)
    if not gram.positive_definite:
        ev = gram.eigenvalues
        lo = float(ev.min()) if ev.size else 0.0
        raise NotCStar(f"regular trace form is not positive-definite "
                       f"(min eigenvalue {lo:.6g}, max {float(ev.max()):.6g})", eigenvalue=lo)
    T = hermitian_sqrt(gram.G)
    M = transport(A.monoid(), T)
    S = T @ A.star.S @ np.linalg.inv(T).conj()
    s = linear_from_antilinear(AntilinearInvolution(S), M.obj, Tolerance(1e-7, 1e-7))
    return Realization(InvolutionMonoid(M, s), T, gram)


def realize(A: StarAlgebra, tol: Tolerance = DEFAULT_TOL) -> InvolutionMonoid:
    """Special unitary dagger-Frobenius involution monoid carrying ``A``."""
    return realize_with_basis(A, tol).monoid


def rescale(M: Monoid, alpha: float) -> Monoid:
    """Express ``M`` in orthonormal coordinates for the inner product
    ``alpha <-, ->``: ``m -> m / sqrt(alpha)``, ``u -> sqrt(alpha) u``."""
    if not alpha > 0:
        raise NonpositiveScale(f"scale must be positive, got {alpha}")
    r = np.sqrt(alpha)
    return Monoid(M.obj, M.m * (1 / r), M.u * r)


def adjoint_under_gram(f: Morphism, G_dom: np.ndarray, G_cod: np.ndarray) -> np.ndarray:
    """Adjoint of ``f`` when domain and codomain carry Gram matrices
    ``G_dom``, ``G_cod``: the unique ``g`` with ``<f x, y>_cod = <x, g y>_dom``."""
    return np.linalg.solve(G_dom, f.data.conj().T @ G_cod)


def scaled_adjoint(f: Morphism, alpha: float, n_in: int, n_out: int) -> np.ndarray:
    """Adjoint of ``f : A^n_in -> A^n_out`` after scaling A's inner product by alpha."""
    return alpha ** (n_out - n_in) * f.data.conj().T


# --- center and its minimal idempotents ---------------------------------

def center_basis(M: Monoid) -> np.ndarray:
    """Orthonormal basis (columns) of ``{x : x b = b x for all b}``."""
    n = M.dim
    if n == 0:
        return np.zeros((0, 0), dtype=complex)
    T = M.tensor3
    # rows indexed by (basis element b, output k): (L_b - R_b) x
    K = (T.transpose(1, 0, 2) - T.transpose(2, 0, 1)).reshape(n * n, n)
    # the cutoff is set by the size of m, not of K: for a commutative monoid
    # K is pure rounding noise and a relative cutoff would keep it
    scale = max(1.0, float(np.abs(T).max()))
    _, sv, Vh = np.linalg.svd(K)
    rank = int(np.sum(sv > NULL_THRESHOLD * scale))
    return Vh[rank:].conj().T


def _left_mult(M: Monoid, z) -> np.ndarray:
    return np.einsum("kij,i->kj", M.tensor3, z)


def _split(M: Monoid, Z: np.ndarray, rng, tol: Tolerance):
    n = M.dim
    k = Z.shape[1]
    z = Z @ (rng.standard_normal(k) + 1j * rng.standard_normal(k))
    z = (z + star_element(M, z).vector()) / 2          # self-adjoint central element
    L = _left_mult(M, z)
    C = Z.conj().T @ L @ Z
    lam = np.linalg.eigvals(C)
    if k > 1:
        gaps = np.abs(lam[:, None] - lam[None, :])
        np.fill_diagonal(gaps, np.inf)
        if gaps.min() < GAP_THRESHOLD:
            return None
    u = M.unit_vector
    out = []
    for i in range(k):
        p = u.copy()
        for j in range(k):
            if j != i:
                p = (L @ p - lam[j] * p) / (lam[i] - lam[j])
        out.append(p)
    # verify: orthogonal idempotents summing to the unit
    P = np.array(out)
    prods = np.einsum("kab,ia,jb->ijk", M.tensor3, P, P)
    want = np.einsum("ij,ik->ijk", np.eye(k), P)
    check = Tolerance(1e-7, 1e-7)
    if not (check.close(prods, want) and check.close(P.sum(axis=0), u)):
        return None
    return out


def central_idempotents(M: Monoid, seed: int = 0, retries: int = RETRIES,
                        tol: Tolerance = DEFAULT_TOL) -> list[np.ndarray]:
    """Minimal central idempotents by diagonalizing a random self-adjoint
    central element; retries with seeds ``seed, seed+1, ...``."""
    require_frobenius(M, tol)
    if M.dim == 0:
        return []
    Z = center_basis(M)
    if Z.shape[1] == 1:
        return [M.unit_vector.copy()]
    for attempt in range(retries + 1):
        rng = np.random.default_rng(seed + attempt)
        out = _split(M, Z, rng, tol)
        if out is not None:
            return out
    raise DegenerateSplit(f"center split failed after {retries} retries (seed {seed})")


class Wedderburn(NamedTuple):
    idempotents: list       # states of A
    block_dims: list


def wedderburn(IM: InvolutionMonoid, seed: int = 0, retries: int = RETRIES,
               tol: Tolerance = DEFAULT_TOL) -> Wedderburn:
    """Central idempotents and matrix-block sizes of a special unitary
    dagger-Frobenius involution monoid."""
    M = IM.M
    rep = classify(M, tol)
    if not (rep.dagger_frobenius and rep["special"] and rep["unitary"]):
        raise InvalidAlgebra("wedderburn needs a special unitary dagger-Frobenius monoid")
    ps = central_idempotents(M, seed, retries, tol)
    T = M.tensor3
    blocks = []
    for p in ps:
        Rp = np.einsum("kij,j->ki", T, p)
        size = float(np.trace(Rp).real)
        d = int(round(np.sqrt(max(size, 0.0))))
        if d < 1 or abs(d * d - size) > 1e-6:
            raise DegenerateSplit(f"block of dimension {size:.6g} is not a square")
        blocks.append(d)
    order = sorted(range(len(ps)), key=lambda i: (blocks[i], int(np.argmax(np.abs(ps[i]) > 1e-9))))
    return Wedderburn([la.state(ps[i], M.obj) for i in order], [blocks[i] for i in order])


# --- standard *-algebras -------------------------------------------------

def group_algebra(table, inverse=None) -> StarAlgebra:
    """C[G] from a multiplication table ``table[g][h] = gh``; star ``g* = g^-1``."""
    table = np.asarray(table, dtype=int)
    n = table.shape[0]
    c = np.zeros((n, n, n), dtype=complex)
    for g in range(n):
        for h in range(n):
            c[g, h, table[g, h]] = 1.0
    e = next(g for g in range(n) if all(table[g, h] == h for h in range(n)))
    if inverse is None:
        inverse = [next(h for h in range(n) if table[g, h] == e) for g in range(n)]
    S = np.zeros((n, n), dtype=complex)
    S[inverse, np.arange(n)] = 1.0
    unit = np.zeros(n)
    unit[e] = 1.0
    return StarAlgebra(c, unit, AntilinearInvolution(S))


def matrix_algebra(n: int) -> StarAlgebra:
    """Mat(n) in the matrix-unit basis ``E_ij`` (index ``i*n + j``), star = adjoint."""
    N = n * n
    c = np.zeros((N, N, N), dtype=complex)
    S = np.zeros((N, N), dtype=complex)
    for i in range(n):
        for j in range(n):
            S[j * n + i, i * n + j] = 1.0
            for l in range(n):
                c[i * n + j, j * n + l, i * n + l] = 1.0
    return StarAlgebra(c, np.eye(n).reshape(-1), AntilinearInvolution(S))


def dual_numbers() -> StarAlgebra:
    """C[x]/x^2 with x* = x: a *-algebra that is not C*."""
    c = np.zeros((2, 2, 2), dtype=complex)
    c[0, 0, 0] = c[0, 1, 1] = c[1, 0, 1] = 1.0
    return StarAlgebra(c, [1, 0], AntilinearInvolution(np.eye(2)))


def star_direct_sum(*algebras: StarAlgebra) -> StarAlgebra:
    n = sum(A.dim for A in algebras)
    c = np.zeros((n, n, n), dtype=complex)
    u = np.zeros(n, dtype=complex)
    S = np.zeros((n, n), dtype=complex)
    off = 0
    for A in algebras:
        sl = slice(off, off + A.dim)
        c[sl, sl, sl] = A.mult
        u[sl] = A.unit
        S[sl, sl] = A.star.S
        off += A.dim
    return StarAlgebra(c, u, AntilinearInvolution(S))


def change_basis(A: StarAlgebra, P: np.ndarray) -> StarAlgebra:
    """Re-express ``A`` in the basis given by the columns of invertible ``P``."""
    P = np.asarray(P, dtype=complex)
    Pi = np.linalg.inv(P)
    M = transport(A.monoid(), Pi)
    S = Pi @ A.star.S @ P.conj()
    n = A.dim
    return StarAlgebra(M.tensor3.transpose(1, 2, 0), M.unit_vector, AntilinearInvolution(S))
