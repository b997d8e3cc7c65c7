"""
Monoids in Hilb and their dagger-Frobenius theory.

A monoid is stored as its multiplication ``m : A (x) A -> A`` and unit
``u : I -> A``; the comonoid ``(m^dag, u^dag)`` is always derived. All
predicates are numeric and tolerance based, with deviations reported so a
passing check still says how close it was.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .errors import NotFrobenius, ShapeMismatch
from .linalg import DEFAULT_TOL, Morphism, Tolerance, WireWord

PREDICATES = ("associative", "unital", "frobenius", "special",
              "commutative", "balanced_symmetric", "unitary")


@dataclass(frozen=True, eq=False)
class Monoid:
    obj: WireWord
    m: Morphism
    u: Morphism

    def __post_init__(self):
        obj = la.as_word(self.obj)
        object.__setattr__(self, "obj", obj)
        if self.m.dom != obj + obj or self.m.cod != obj:
            raise ShapeMismatch(f"multiplication must be {obj}{obj} -> {obj}, got "
                                f"{self.m.dom} -> {self.m.cod}")
        if self.u.dom != la.UNIT or self.u.cod != obj:
            raise ShapeMismatch(f"unit must be [] -> {obj}, got {self.u.dom} -> {self.u.cod}")

    @classmethod
    def from_arrays(cls, m, u, obj=None) -> "Monoid":
        u = np.asarray(u, dtype=complex).reshape(-1)
        obj = la.word(len(u)) if obj is None else la.as_word(obj)
        return cls(obj, Morphism(obj + obj, obj, np.asarray(m, dtype=complex)),
                   la.state(u, obj))

    @property
    def dim(self) -> int:
        return self.obj.total

    @property
    def tensor3(self) -> np.ndarray:
        """``m`` as an array ``T[k, i, j] = <e_k, m(e_i (x) e_j)>``."""
        n = self.dim
        return np.asarray(self.m.data).reshape(n, n, n)

    @property
    def unit_vector(self) -> np.ndarray:
        return np.asarray(self.u.data[:, 0])

    @property
    def comultiplication(self) -> Morphism:
        return la.dagger(self.m)

    @property
    def counit(self) -> Morphism:
        return la.dagger(self.u)

    def multiply(self, a, b) -> np.ndarray:
        """Product of two coordinate vectors."""
        return np.einsum("kij,i,j->k", self.tensor3, np.asarray(a), np.asarray(b))

    def flatten(self) -> "Monoid":
        """Same monoid on the single-factor word ``[n]``."""
        return Monoid.from_arrays(self.m.data, self.unit_vector)

    def perturbed(self, entry=None, delta=1e-3) -> "Monoid":
        """Copy with one entry of ``m`` shifted.

        The default entry is ``(0, 1)``, off the diagonal: shifting
        ``m[0, 0]`` of a copying monoid only reweights a copyable point and
        leaves it Frobenius. One-dimensional monoids fall back to ``(0, 0)``.
        """
        data = np.array(self.m.data)
        if entry is None:
            entry = (0, 1) if data.shape[1] > 1 else (0, 0)
        data[entry] += delta
        return Monoid(self.obj, Morphism(self.m.dom, self.m.cod, data), self.u)


def basis_monoid(n: int) -> Monoid:
    """The copying monoid on C^n: ``e_i e_j = delta_ij e_i``, unit ``sum e_i``."""
    t = np.zeros((n, n, n), dtype=complex)
    for i in range(n):
        t[i, i, i] = 1.0
    return Monoid.from_arrays(t.reshape(n, n * n), np.ones(n))


def transport(M: Monoid, T: np.ndarray) -> Monoid:
    """Push a monoid through the linear isomorphism ``x -> T x``."""
    T = np.asarray(T, dtype=complex)
    Ti = np.linalg.inv(T)
    m = T @ np.asarray(M.m.data) @ np.kron(Ti, Ti)
    return Monoid.from_arrays(m, T @ M.unit_vector)


def direct_sum(*monoids: Monoid) -> Monoid:
    """Block direct sum, flattened onto a single-factor word."""
    dims = [M.dim for M in monoids]
    n = sum(dims)
    t = np.zeros((n, n, n), dtype=complex)
    u = np.zeros(n, dtype=complex)
    off = 0
    for M, d in zip(monoids, dims):
        sl = slice(off, off + d)
        t[sl, sl, sl] = M.tensor3
        u[sl] = M.unit_vector
        off += d
    return Monoid.from_arrays(t.reshape(n, n * n), u)


@dataclass
class PropertyReport:
    flags: dict = field(default_factory=dict)
    deviations: dict = field(default_factory=dict)

    def __getitem__(self, key):
        return self.flags[key]

    @property
    def dagger_frobenius(self) -> bool:
        return self.flags["associative"] and self.flags["unital"] and self.flags["frobenius"]

    def to_dict(self) -> dict:
        return {"flags": dict(self.flags), "deviations": dict(self.deviations),
                "dagger_frobenius": self.dagger_frobenius}


def _laws(M: Monoid) -> dict:
    """Pairs (lhs, rhs) for each predicate, evaluated by index contraction."""
    t = M.tensor3
    tc = t.conj()
    n = M.dim
    u = M.unit_vector
    eye = np.eye(n)
    # m(m (x) 1) vs m(1 (x) m), indices [out, i, j, k]
    assoc = (np.einsum("lpk,pij->lijk", t, t), np.einsum("lip,pjk->lijk", t, t))
    left_unit = np.einsum("kij,i->kj", t, u)
    right_unit = np.einsum("kij,j->ki", t, u)
    unital = (np.stack([left_unit, right_unit]), np.stack([eye, eye]))
    # Frobenius, indices [a, b, i, j]: (1 (x) m)(m^dag (x) 1), m^dag m, (m (x) 1)(1 (x) m^dag)
    f1 = np.einsum("iap,bpj->abij", tc, t)
    f0 = np.einsum("qab,qij->abij", tc, t)
    f2 = np.einsum("aip,jpb->abij", t, tc)
    frob = (np.stack([f1, f2]), np.stack([f0, f0]))
    special = (np.einsum("kij,lij->kl", t, tc), eye)
    commutative = (t, t.transpose(0, 2, 1))
    pairing = np.einsum("k,kij->ij", u.conj(), t)
    balanced = (pairing.T, pairing)
    sl = left_involution(M).data
    unitary = (np.stack([sl.conj().T @ sl, sl @ sl.conj().T]), np.stack([eye, eye]))
    return {"associative": assoc, "unital": unital, "frobenius": frob,
            "special": special, "commutative": commutative,
            "balanced_symmetric": balanced, "unitary": unitary}


def classify(M: Monoid, tol: Tolerance = DEFAULT_TOL) -> PropertyReport:
    """Evaluate all seven structural predicates on ``M``.

    In Hilb the balancing loop is the identity, so balanced symmetry is
    checked as ``u^dag m sigma = u^dag m``. Unitarity is tested on the left
    involution for any monoid, Frobenius or not.
    """
    report = PropertyReport()
    for name, (lhs, rhs) in _laws(M).items():
        report.flags[name] = tol.close(lhs, rhs)
        report.deviations[name] = Tolerance.deviation(lhs, rhs)
    return report


def is_dagger_frobenius(M: Monoid, tol: Tolerance = DEFAULT_TOL) -> bool:
    return classify(M, tol).dagger_frobenius


def require_frobenius(M: Monoid, tol: Tolerance = DEFAULT_TOL) -> PropertyReport:
    report = classify(M, tol)
    if not report.dagger_frobenius:
        bad = [k for k in ("associative", "unital", "frobenius") if not report[k]]
        raise NotFrobenius("monoid fails " + ", ".join(
            f"{k} (deviation {report.deviations[k]:.3e})" for k in bad))
    return report


def pairing(M: Monoid) -> Morphism:
    """The Frobenius form ``u^dag o m : A (x) A -> I``."""
    return la.compose(la.dagger(M.u), M.m)


def left_involution(M: Monoid) -> Morphism:
    """``s_L = ((u^dag m) (x) 1_{A*}) o (1_A (x) epsilon_{A*})``."""
    A = M.obj
    return la.compose_all(la.tensor(la.identity(A), la.cup(A.dual())),
                          la.tensor(pairing(M), la.identity(A.dual())))


def right_involution(M: Monoid) -> Morphism:
    """``s_R = (1_{A*} (x) (u^dag m)) o (epsilon_A (x) 1_A)``."""
    A = M.obj
    return la.compose_all(la.tensor(la.cup(A), la.identity(A)),
                          la.tensor(la.identity(A.dual()), pairing(M)))


def involution_equations(M: Monoid) -> dict:
    """The six identities relating s_L and s_R, each as a list of
    (lhs, rhs) morphism pairs.

    Inverses are expressed through composites so no matrix inversion is
    involved: ``s_* = s^-1`` becomes ``s_* s = 1`` together with ``s s_* = 1``.
    """
    sL, sR = left_involution(M), right_involution(M)
    A = M.obj
    one, one_d = la.identity(A), la.identity(A.dual())
    c, d, dag = la.conjugate, la.dual, la.dagger

    def inverse_pair(x, y):
        # y = x^-1 for x : A -> A*
        return [(y @ x, one), (x @ y, one_d)]

    return {
        "sL* = sR": [(d(sL), sR)],
        "sR* = sL": [(d(sR), sL)],
        "(sL)_* = sL^-1": inverse_pair(sL, c(sL)),
        "(sR)_* = sR^-1": inverse_pair(sR, c(sR)),
        "sL^-1 = sR^dag": inverse_pair(sL, dag(sR)),
        "sR^-1 = sL^dag": inverse_pair(sR, dag(sL)),
    }


def involution_deviations(M: Monoid) -> dict:
    return {k: max(Tolerance.deviation(a.data, b.data) for a, b in pairs)
            for k, pairs in involution_equations(M).items()}


@dataclass(frozen=True)
class DimensionReport:
    dim: complex                 # epsilon^dag epsilon
    comult_unit_norm2: complex   # u^dag m m^dag u
    unit_norm2: complex          # u^dag u


def dimension(M: Monoid) -> DimensionReport:
    u = M.u
    mdu = la.compose(la.dagger(M.m), u)
    return DimensionReport(
        dim=la.dimension(M.obj),
        comult_unit_norm2=la.compose(la.dagger(mdu), mdu).item(),
        unit_norm2=la.compose(la.dagger(u), u).item(),
    )


def _as_state(M: Monoid, alpha) -> Morphism:
    if isinstance(alpha, Morphism):
        if alpha.dom != la.UNIT or alpha.cod != M.obj:
            raise ShapeMismatch(f"expected a state of {M.obj}, got {alpha.cod} <- {alpha.dom}")
        return alpha
    vec = np.asarray(alpha, dtype=complex).reshape(-1)
    if vec.size != M.dim:
        raise ShapeMismatch(f"expected {M.dim} coordinates, got {vec.size}")
    return la.state(vec, M.obj)


def right_action(M: Monoid, alpha) -> Morphism:
    """``R_alpha = m o (1 (x) alpha)``."""
    a = _as_state(M, alpha)
    return la.compose(M.m, la.tensor(la.identity(M.obj), a))


def left_action(M: Monoid, alpha) -> Morphism:
    a = _as_state(M, alpha)
    return la.compose(M.m, la.tensor(a, la.identity(M.obj)))


def star_element(M: Monoid, alpha) -> Morphism:
    """``alpha' = (1 (x) alpha^dag) o m^dag o u``; for dagger-Frobenius M,
    ``R_alpha' = (R_alpha)^dag``."""
    a = _as_state(M, alpha)
    return la.compose_all(M.u, la.dagger(M.m), la.tensor(la.identity(M.obj), la.dagger(a)))


def genus_invariant(M: Monoid, g: int, tol: Tolerance = DEFAULT_TOL) -> complex:
    """Closed-surface amplitude ``u^dag m H^g m^dag u`` with handle ``H = m m^dag``."""
    if g < 0:
        raise ValueError("genus must be nonnegative")
    require_frobenius(M, tol)
    v = la.compose(la.dagger(M.m), M.u)
    for _ in range(g):
        v = la.compose(la.dagger(M.m), la.compose(M.m, v))
    return la.compose_all(v, M.m, la.dagger(M.u)).item()
