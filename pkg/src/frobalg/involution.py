"""
Involution monoids: a monoid with a linear ``s : A -> A*`` standing in for
the antilinear star of a *-algebra.

Antilinear maps are stored by their matrix against conjugation: the map
``t(v) = S conj(v)`` is held as ``S``. Under this encoding

    t1 o t2  has matrix  S1 conj(S2)   (and is linear),

so ``t o t = id`` reads ``S conj(S) = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .errors import InvalidInvolution, ShapeMismatch
from .frobenius import Monoid, left_involution, require_frobenius, right_involution
from .linalg import DEFAULT_TOL, Morphism, Tolerance


@dataclass(frozen=True, eq=False)
class InvolutionMonoid:
    M: Monoid
    s: Morphism

    def __post_init__(self):
        A = self.M.obj
        if self.s.dom != A or self.s.cod != A.dual():
            raise ShapeMismatch(f"involution must be {A} -> {A.dual()}, "
                                f"got {self.s.dom} -> {self.s.cod}")

    @classmethod
    def from_arrays(cls, M: Monoid, s) -> "InvolutionMonoid":
        return cls(M, Morphism(M.obj, M.obj.dual(), np.asarray(s, dtype=complex)))

    @property
    def dim(self) -> int:
        return self.M.dim


@dataclass(frozen=True, eq=False)
class AntilinearInvolution:
    S: np.ndarray

    def __post_init__(self):
        S = np.array(self.S, dtype=complex)
        if S.ndim != 2 or S.shape[0] != S.shape[1]:
            raise ShapeMismatch(f"S must be square, got shape {S.shape}")
        S.flags.writeable = False
        object.__setattr__(self, "S", S)

    def __call__(self, v) -> np.ndarray:
        return self.S @ np.conj(np.asarray(v))

    def then(self, other: "AntilinearInvolution") -> np.ndarray:
        """Linear matrix of ``other o self``."""
        return other.S @ self.S.conj()


@dataclass
class Report:
    checks: dict = field(default_factory=dict)
    deviations: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def add(self, name, lhs, rhs, tol):
        lhs = lhs.data if isinstance(lhs, Morphism) else lhs
        rhs = rhs.data if isinstance(rhs, Morphism) else rhs
        self.checks[name] = tol.close(lhs, rhs)
        self.deviations[name] = Tolerance.deviation(lhs, rhs)

    def to_dict(self):
        return {"ok": self.ok, "checks": dict(self.checks), "deviations": dict(self.deviations)}


def conjugate_monoid(M: Monoid) -> Monoid:
    """``(A*, m_*, u_*)``."""
    return Monoid(M.obj.dual(), la.conjugate(M.m), la.conjugate(M.u))


def validate(IM: InvolutionMonoid, tol: Tolerance = DEFAULT_TOL) -> Report:
    """Involution condition ``s_* s = 1`` and the homomorphism equations
    ``s m = m_* (s (x) s)``, ``s u = u_*``."""
    M, s = IM.M, IM.s
    C = conjugate_monoid(M)
    rep = Report()
    rep.add("involution", la.conjugate(s) @ s, la.identity(M.obj), tol)
    rep.add("multiplicative", s @ M.m, C.m @ la.tensor(s, s), tol)
    rep.add("unital", s @ M.u, C.u, tol)
    return rep


def _flip(w) -> np.ndarray:
    return la.reversal_index(w)


def linear_from_antilinear(t: AntilinearInvolution, A=None, tol: Tolerance = DEFAULT_TOL) -> Morphism:
    """``s o phi := (t(phi))_*``; as a matrix, a conjugated and reindexed S."""
    n = t.S.shape[0]
    A = la.word(n) if A is None else la.as_word(A)
    if A.total != n:
        raise ShapeMismatch(f"S is {n}x{n} but the object has dimension {A.total}")
    if not tol.close(t.S @ t.S.conj(), np.eye(n)):
        raise InvalidInvolution("t o t != id (S conj(S) != 1)")
    r = _flip(A)
    return Morphism(A, A.dual(), t.S.conj()[r, :])


def antilinear_from_linear(s: Morphism, tol: Tolerance = DEFAULT_TOL) -> AntilinearInvolution:
    """``t(phi) := (s o phi)_*``; inverse of :func:`linear_from_antilinear`."""
    A = s.dom
    if s.cod != A.dual():
        raise ShapeMismatch(f"expected {A} -> {A.dual()}, got {s.dom} -> {s.cod}")
    if not tol.close((la.conjugate(s) @ s).data, np.eye(A.total)):
        raise InvalidInvolution("s_* o s != id")
    r = _flip(A)
    S = np.empty_like(s.data)
    S[r, :] = s.data.conj()
    return AntilinearInvolution(S)


def check_antilinear(M: Monoid, t: AntilinearInvolution, tol: Tolerance = DEFAULT_TOL) -> Report:
    """t involutive, order-reversing on products, and fixes the unit."""
    n = M.dim
    rep = Report()
    rep.add("involutive", t.S @ t.S.conj(), np.eye(n), tol)
    T = M.tensor3
    # t(e_i e_j) = sum_k conj(T[k,i,j]) S e_k ; t(e_j) t(e_i) = m(S e_j, S e_i)
    lhs = np.einsum("lk,kij->lij", t.S, T.conj())
    rhs = np.einsum("lab,aj,bi->lij", T, t.S, t.S)
    rep.add("order_reversing", lhs, rhs, tol)
    rep.add("unit", t(M.unit_vector), M.unit_vector, tol)
    return rep


def is_monoid_hom(f: Morphism, A: Monoid, B: Monoid, tol: Tolerance = DEFAULT_TOL,
                  rep: Report | None = None) -> Report:
    if f.dom != A.obj or f.cod != B.obj:
        raise ShapeMismatch(f"expected {A.obj} -> {B.obj}, got {f.dom} -> {f.cod}")
    rep = Report() if rep is None else rep
    rep.add("multiplicative", f @ A.m, B.m @ la.tensor(f, f), tol)
    rep.add("unital", f @ A.u, B.u, tol)
    return rep


def is_involution_hom(f: Morphism, A: InvolutionMonoid, B: InvolutionMonoid,
                      tol: Tolerance = DEFAULT_TOL) -> Report:
    """Monoid-hom equations plus ``s_B f = f_* s_A``."""
    rep = is_monoid_hom(f, A.M, B.M, tol)
    rep.add("involution_preserving", B.s @ f, la.conjugate(f) @ A.s, tol)
    return rep


def frobenius_right_involution(M: Monoid, tol: Tolerance = DEFAULT_TOL) -> InvolutionMonoid:
    require_frobenius(M, tol)
    return InvolutionMonoid(M, right_involution(M))


def frobenius_left_involution(M: Monoid, tol: Tolerance = DEFAULT_TOL) -> InvolutionMonoid:
    require_frobenius(M, tol)
    return InvolutionMonoid(M, left_involution(M))


def is_isometry(f: Morphism, tol: Tolerance = DEFAULT_TOL) -> bool:
    return tol.close((la.dagger(f) @ f).data, np.eye(f.dom.total))


def preserves_counit(f: Morphism, A: Monoid, B: Monoid, tol: Tolerance = DEFAULT_TOL) -> bool:
    """``v^dag o f = u^dag`` for ``f : (A, m, u) -> (B, n, v)``."""
    return tol.close((la.dagger(B.u) @ f).data, la.dagger(A.u).data)


def restrict(B: InvolutionMonoid, p: Morphism, tol: Tolerance = DEFAULT_TOL) -> InvolutionMonoid:
    """Involution monoid induced on the source of an isometric embedding.

    ``p : A -> B`` must be an isometry whose image contains the unit and is
    closed under multiplication and the involution. The induced structure is
    ``m = p^dag n (p (x) p)``, ``u = p^dag v``, ``s = p^* t p``.
    """
    if p.cod != B.M.obj:
        raise ShapeMismatch(f"embedding lands in {p.cod}, expected {B.M.obj}")
    if not is_isometry(p, tol):
        raise InvalidInvolution("embedding is not an isometry")
    proj = p @ la.dagger(p)
    prod = B.M.m @ la.tensor(p, p)
    if not tol.close((proj @ prod).data, prod.data):
        raise InvalidInvolution("image is not closed under multiplication")
    if not tol.close((proj @ B.M.u).data, B.M.u.data):
        raise InvalidInvolution("image does not contain the unit")
    s = la.dual(p) @ B.s @ p
    # closure under the involution: t p = p_* s
    if not tol.close((B.s @ p).data, (la.conjugate(p) @ s).data):
        raise InvalidInvolution("image is not closed under the involution")
    A = Monoid(p.dom, la.dagger(p) @ prod, la.dagger(p) @ B.M.u)
    return InvolutionMonoid(A, s)
