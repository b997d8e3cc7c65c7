"""
Classical structures: spectra of commutative dagger-Frobenius monoids, the
free functor from finite sets, and internal diagonalization of normal maps.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import linalg as la
from .cstar import RETRIES, central_idempotents
from .errors import NotCommutative, NotHomomorphism, ShapeMismatch
from .frobenius import Monoid, basis_monoid, classify, require_frobenius, right_involution
from .involution import InvolutionMonoid, Report, is_involution_hom, is_monoid_hom
from .linalg import DEFAULT_TOL, Morphism, Tolerance


@dataclass(frozen=True, eq=False)
class Spectrum:
    points: list          # states e_i with e_i e_j = delta_ij e_i
    characters: list      # effects chi_i with chi_i(e_j) = delta_ij

    def __len__(self):
        return len(self.points)

    @property
    def matrix(self) -> np.ndarray:
        """Points as columns."""
        if not self.points:
            return np.zeros((0, 0), dtype=complex)
        return np.column_stack([p.vector() for p in self.points])

    def coordinates(self, alpha) -> np.ndarray:
        """``chi_i(alpha)`` for every point."""
        v = alpha.vector() if isinstance(alpha, Morphism) else np.asarray(alpha)
        return np.array([(c.data @ v).item() for c in self.characters])


@dataclass(frozen=True)
class FinSetMap:
    source: int
    target: int
    table: tuple

    def __post_init__(self):
        table = tuple(int(x) for x in self.table)
        if len(table) != self.source:
            raise ShapeMismatch(f"table has {len(table)} entries for a source of size {self.source}")
        if any(not 0 <= x < self.target for x in table):
            raise ShapeMismatch(f"table {table} leaves the target of size {self.target}")
        object.__setattr__(self, "table", table)

    def __call__(self, i: int) -> int:
        return self.table[i]

    def then(self, g: "FinSetMap") -> "FinSetMap":
        """``g o self``."""
        if g.source != self.target:
            raise ShapeMismatch("maps are not composable")
        return FinSetMap(self.source, g.target, tuple(g(x) for x in self.table))

    @classmethod
    def identity(cls, n: int) -> "FinSetMap":
        return cls(n, n, tuple(range(n)))


def _probe(n: int) -> np.ndarray:
    # distinct, decreasing weights; the imaginary part breaks real ties
    k = np.arange(n)
    return (n - k) + 1e-3j * (k + 1) / (n + 1)


def spectrum(M: Monoid, tol: Tolerance = DEFAULT_TOL, seed: int = 0,
             retries: int = RETRIES) -> Spectrum:
    """Copyable points of a commutative dagger-Frobenius monoid.

    Points are the minimal idempotents of the algebra, obtained by the same
    randomized center split as the block decomposition (the center is the
    whole algebra here). They are ordered by ``chi_i(probe)``, descending
    in real then imaginary part, where ``probe`` has coordinates
    ``n, n-1, ..., 1`` plus a small imaginary tilt; for the basis monoid
    this reproduces ``e_0, e_1, ...``.
    """
    rep = require_frobenius(M, tol)
    if not rep["commutative"]:
        raise NotCommutative(f"monoid is not commutative "
                             f"(deviation {rep.deviations['commutative']:.3e})")
    ps = central_idempotents(M, seed, retries, tol)
    chars = []
    for p in ps:
        chars.append(p.conj() / np.vdot(p, p).real)
    probe = _probe(M.dim)
    vals = [complex(c @ probe) for c in chars]
    order = sorted(range(len(ps)), key=lambda i: (-round(vals[i].real, 9), -round(vals[i].imag, 9)))
    return Spectrum([la.state(ps[i], M.obj) for i in order],
                    [la.effect(chars[i], M.obj) for i in order])


def free(k: int) -> Monoid:
    """The copying monoid with ``k`` orthonormal copyable points."""
    if k < 0:
        raise ValueError("set size must be nonnegative")
    return basis_monoid(k)


def delta_matrix(f: FinSetMap) -> np.ndarray:
    d = np.zeros((f.target, f.source), dtype=complex)
    d[list(f.table), list(range(f.source))] = 1.0
    return d


def free_map(f: FinSetMap) -> Morphism:
    """``(delta_f)^dag : free(target) -> free(source)``, a monoid homomorphism."""
    return Morphism(la.word(f.target), la.word(f.source), delta_matrix(f).conj().T)


def transport_function(h: Morphism, A: Monoid, B: Monoid, tol: Tolerance = DEFAULT_TOL,
                       seed: int = 0) -> FinSetMap:
    """The function spectrum(A) -> spectrum(B) underlying ``h : B -> A``.

    ``h`` pulls each point of B back to the sum of the points of A over it,
    so ``chi^A_s(h(b_t))`` is 1 exactly when ``s`` maps to ``t``.
    """
    rep = is_monoid_hom(h, B, A, tol)
    if not rep.ok:
        bad = {k: v for k, v in rep.deviations.items() if not rep.checks[k]}
        raise NotHomomorphism(f"not a monoid homomorphism: {bad}")
    SA = spectrum(A, tol, seed)
    SB = spectrum(B, tol, seed)
    W = np.array([[(c.data @ h.data @ b.data).item() for b in SB.points] for c in SA.characters])
    W = W.reshape(len(SA), len(SB))
    table = []
    for s in range(len(SA)):
        row = W[s]
        hits = np.flatnonzero(np.abs(row - 1) <= 1e-6)
        if len(hits) != 1 or not np.all(np.abs(np.delete(row, hits)) <= 1e-6):
            raise NotHomomorphism(f"point {s} is not sent to a single point: {np.round(row, 6)}")
        table.append(int(hits[0]))
    return FinSetMap(len(SA), len(SB), tuple(table))


def preserves_involution(h: Morphism, A: Monoid, B: Monoid,
                         tol: Tolerance = DEFAULT_TOL) -> Report:
    """Homomorphism report including preservation of the Frobenius involutions.

    For commutative finite-dimensional C*-algebras every homomorphism
    preserves the star; this check is kept as evidence rather than assumed.
    """
    return is_involution_hom(h, InvolutionMonoid(B, right_involution(B)),
                             InvolutionMonoid(A, right_involution(A)), tol)


def is_compatible(f: Morphism, M: Monoid, tol: Tolerance = DEFAULT_TOL) -> bool:
    """``m (f (x) 1) = f m = m (1 (x) f)``."""
    if f.dom != M.obj or f.cod != M.obj:
        raise ShapeMismatch(f"expected an endomorphism of {M.obj}, got {f.cod} <- {f.dom}")
    one = la.identity(M.obj)
    mid = f @ M.m
    return (tol.close((M.m @ la.tensor(f, one)).data, mid.data)
            and tol.close((M.m @ la.tensor(one, f)).data, mid.data))


def copying_monoid(vectors: Sequence[np.ndarray], obj=None) -> Monoid:
    """``sum_i a_i (a_i^dag (x) a_i^dag)`` with unit ``sum_i a_i``."""
    A = np.column_stack(vectors) if len(vectors) else np.zeros((0, 0), dtype=complex)
    n = A.shape[0]
    obj = la.word(n) if obj is None else la.as_word(obj)
    m = np.zeros((n, n * n), dtype=complex)
    for a in A.T:
        m += np.outer(a, np.kron(a.conj(), a.conj()))
    return Monoid.from_arrays(m, A.sum(axis=1) if n else np.zeros(0), obj)


def _fix_phase(v: np.ndarray) -> np.ndarray:
    k = int(np.argmax(np.abs(v) > np.abs(v).max() * (1 - 1e-9)))
    return v * (abs(v[k]) / v[k])


def internal_diagonalize(f: Morphism, tol: Tolerance = DEFAULT_TOL) -> tuple[Monoid, Morphism]:
    """Write a normal ``f`` as the action ``m (phi (x) 1)`` of a classical structure.

    The eigenbasis comes from the complex Schur form; each vector's phase is
    fixed so its first largest coordinate is real positive, which makes the
    standard basis the answer for diagonal input. For repeated eigenvalues
    the basis, and hence the monoid, is one valid choice among many.
    """
    pairs = la.eig_normal(f, tol)
    vecs = [_fix_phase(v.vector()) for _, v in pairs]
    M = copying_monoid(vecs, f.dom)
    phi = f @ M.u
    return M, phi


def action(M: Monoid, phi) -> Morphism:
    """``m o (phi (x) 1)``."""
    phi = phi if isinstance(phi, Morphism) else la.state(phi, M.obj)
    return M.m @ la.tensor(phi, la.identity(M.obj))
