"""
Typed complex matrices modelling the monoidal dagger-category Hilb.

A :class:`Morphism` is a dense complex matrix whose rows are indexed by the
codomain wire word and whose columns are indexed by the domain wire word.
Tensor products flatten with the LEFT factor as the major index, so the
index of ``a (x) b`` is ``a * dim(b) + b``.

Duals are structural: the dual of a word reverses the factor order and flips
every dual flag, ``(A (x) B)* = B* (x) A*``. Cups and caps are the canonical
``sum_i e_i (x) e_i`` forms, which makes ``dim(A)`` the plain dimension.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import NamedTuple, Sequence

import numpy as np
import scipy.linalg

from .errors import NotNormal, ShapeMismatch

__all__ = [
    "Factor", "WireWord", "Morphism", "Tolerance", "DEFAULT_TOL",
    "word", "identity", "state", "effect", "scalar",
    "compose", "tensor", "dagger", "conjugate", "dual",
    "cup", "cap", "swap", "eig_normal", "operator_norm", "is_normal",
    "reversal_index",
]


class Factor(NamedTuple):
    dim: int
    dual: bool = False

    def __str__(self):
        return f"{self.dim}*" if self.dual else str(self.dim)


@dataclass(frozen=True)
class WireWord:
    factors: tuple[Factor, ...] = ()

    def __post_init__(self):
        fs = tuple(Factor(int(f[0]), bool(f[1])) for f in self.factors)
        for f in fs:
            if f.dim < 0:
                raise ShapeMismatch(f"negative dimension in wire word: {f.dim}")
        object.__setattr__(self, "factors", fs)

    @property
    def total(self) -> int:
        return reduce(lambda a, b: a * b, (f.dim for f in self.factors), 1)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(f.dim for f in self.factors)

    def dual(self) -> "WireWord":
        return WireWord(tuple(Factor(f.dim, not f.dual) for f in reversed(self.factors)))

    def __add__(self, other: "WireWord") -> "WireWord":
        return WireWord(self.factors + other.factors)

    def __len__(self):
        return len(self.factors)

    def __str__(self):
        return "[" + ",".join(str(f) for f in self.factors) + "]"

    __repr__ = __str__


def word(*specs) -> WireWord:
    """Build a word from ints, ``"3*"`` strings, Factors, or another word.

    >>> str(word(2, "3*"))
    '[2,3*]'
    """
    factors = []
    for s in specs:
        if isinstance(s, WireWord):
            factors.extend(s.factors)
        elif isinstance(s, Factor):
            factors.append(s)
        elif isinstance(s, str):
            s = s.strip()
            if s.endswith("*"):
                factors.append(Factor(int(s[:-1]), True))
            else:
                factors.append(Factor(int(s), False))
        elif isinstance(s, tuple):
            factors.append(Factor(int(s[0]), bool(s[1])))
        else:
            factors.append(Factor(int(s), False))
    return WireWord(tuple(factors))


def as_word(w) -> WireWord:
    if isinstance(w, WireWord):
        return w
    if isinstance(w, (list, tuple)):
        return word(*w)
    return word(w)


UNIT = WireWord()


def reversal_index(w: WireWord) -> np.ndarray:
    """Index map between ``w`` and its dual.

    Entry ``r[J]`` is the flat index in ``w`` of the basis vector whose
    counterpart in ``w.dual()`` has flat index ``J``.
    """
    dims = w.dims
    n = w.total
    if len(dims) <= 1:
        return np.arange(n)
    return np.arange(n).reshape(dims).transpose(tuple(reversed(range(len(dims))))).reshape(-1)


@dataclass(frozen=True)
class Tolerance:
    atol: float = 1e-9
    rtol: float = 1e-9

    def __post_init__(self):
        if self.atol < 0 or self.rtol < 0:
            raise ValueError("tolerances must be nonnegative")

    def close(self, x, y) -> bool:
        x = np.asarray(x)
        y = np.asarray(y)
        if x.size == 0:
            return True
        bound = self.atol + self.rtol * np.maximum(np.abs(x), np.abs(y))
        return bool(np.all(np.abs(x - y) <= bound))

    @staticmethod
    def deviation(x, y) -> float:
        x = np.asarray(x)
        y = np.asarray(y)
        if x.size == 0:
            return 0.0
        return float(np.max(np.abs(x - y)))


DEFAULT_TOL = Tolerance()
STRICT = Tolerance(0.0, 0.0)


@dataclass(frozen=True, eq=False)
class Morphism:
    dom: WireWord
    cod: WireWord
    data: np.ndarray

    def __post_init__(self):
        dom = as_word(self.dom)
        cod = as_word(self.cod)
        data = np.array(self.data, dtype=complex)
        if data.ndim != 2 and data.size == cod.total * dom.total:
            data = data.reshape(cod.total, dom.total)
        if data.shape != (cod.total, dom.total):
            raise ShapeMismatch(
                f"matrix shape {data.shape} does not match {cod} <- {dom} "
                f"({cod.total}x{dom.total})")
        data.flags.writeable = False
        object.__setattr__(self, "dom", dom)
        object.__setattr__(self, "cod", cod)
        object.__setattr__(self, "data", data)

    @property
    def shape(self):
        return self.data.shape

    # composition sugar: g @ f is g after f
    def __matmul__(self, other: "Morphism") -> "Morphism":
        return compose(self, other)

    def __mul__(self, c):
        return Morphism(self.dom, self.cod, self.data * c)

    __rmul__ = __mul__

    def __add__(self, other: "Morphism") -> "Morphism":
        _check_parallel(self, other)
        return Morphism(self.dom, self.cod, self.data + other.data)

    def __sub__(self, other: "Morphism") -> "Morphism":
        _check_parallel(self, other)
        return Morphism(self.dom, self.cod, self.data - other.data)

    def __neg__(self):
        return Morphism(self.dom, self.cod, -self.data)

    @property
    def dag(self) -> "Morphism":
        return dagger(self)

    def vector(self) -> np.ndarray:
        """Column of a state (dom = I) as a flat array."""
        return np.asarray(self.data[:, 0]) if self.dom.total == 1 else self.data.reshape(-1)

    def item(self) -> complex:
        if self.data.shape != (1, 1):
            raise ShapeMismatch(f"not a scalar: {self.cod} <- {self.dom}")
        return complex(self.data[0, 0])

    def __repr__(self):
        return f"Morphism({self.cod} <- {self.dom}, shape={self.data.shape})"


def _check_parallel(f, g):
    if f.dom != g.dom or f.cod != g.cod:
        raise ShapeMismatch(f"not parallel: {f.cod}<-{f.dom} vs {g.cod}<-{g.dom}")


def identity(w) -> Morphism:
    w = as_word(w)
    return Morphism(w, w, np.eye(w.total, dtype=complex))


def state(vec, w=None) -> Morphism:
    vec = np.asarray(vec, dtype=complex).reshape(-1)
    w = word(len(vec)) if w is None else as_word(w)
    return Morphism(UNIT, w, vec.reshape(-1, 1))


def effect(vec, w=None) -> Morphism:
    vec = np.asarray(vec, dtype=complex).reshape(-1)
    w = word(len(vec)) if w is None else as_word(w)
    return Morphism(w, UNIT, vec.reshape(1, -1))


def scalar(c) -> Morphism:
    return Morphism(UNIT, UNIT, np.array([[c]], dtype=complex))


def compose(g: Morphism, f: Morphism) -> Morphism:
    """``g o f``: first f, then g."""
    if f.cod != g.dom:
        raise ShapeMismatch(f"cannot compose: cod(f)={f.cod} but dom(g)={g.dom}")
    return Morphism(f.dom, g.cod, g.data @ f.data)


def compose_all(*fs: Morphism) -> Morphism:
    """Compose in data-flow order: ``compose_all(f, g, h) = h o g o f``."""
    return reduce(lambda acc, nxt: compose(nxt, acc), fs)


def tensor(f: Morphism, g: Morphism, *more: Morphism) -> Morphism:
    out = Morphism(f.dom + g.dom, f.cod + g.cod, np.kron(f.data, g.data))
    for h in more:
        out = tensor(out, h)
    return out


def dagger(f: Morphism) -> Morphism:
    return Morphism(f.cod, f.dom, f.data.conj().T)


def conjugate(f: Morphism) -> Morphism:
    """``f_*``: entrywise conjugate, A* -> B*.

    Order-reversing on words like the duality functor, so that
    ``f_* = (f*)^dag = (f^dag)*`` holds exactly.
    """
    rd = reversal_index(f.dom)
    rc = reversal_index(f.cod)
    return Morphism(f.dom.dual(), f.cod.dual(), f.data.conj()[np.ix_(rc, rd)])


def dual(f: Morphism) -> Morphism:
    """``f*``: transpose, B* -> A*, with the factor-order reversal of words."""
    rd = reversal_index(f.dom)
    rc = reversal_index(f.cod)
    return Morphism(f.cod.dual(), f.dom.dual(), f.data.T[np.ix_(rd, rc)])


def cup(w) -> Morphism:
    """Left duality unit ``epsilon_A : I -> A* (x) A``."""
    w = as_word(w)
    n = w.total
    r = reversal_index(w)
    vec = np.zeros(n * n, dtype=complex)
    vec[np.arange(n) * n + r] = 1.0
    return Morphism(UNIT, w.dual() + w, vec.reshape(-1, 1))


def cap(w) -> Morphism:
    """Left duality counit ``eta_A : A (x) A* -> I``."""
    w = as_word(w)
    n = w.total
    r = reversal_index(w)
    vec = np.zeros(n * n, dtype=complex)
    vec[r * n + np.arange(n)] = 1.0
    return Morphism(w + w.dual(), UNIT, vec.reshape(1, -1))


def right_cup(w) -> Morphism:
    """``epsilon^R_A = (eta_A)^dag : I -> A (x) A*``."""
    return dagger(cap(w))


def right_cap(w) -> Morphism:
    """``eta^R_A = (epsilon_A)^dag : A* (x) A -> I``."""
    return dagger(cup(w))


def swap(a, b) -> Morphism:
    """Braiding ``a (x) b -> b (x) a``."""
    a = as_word(a)
    b = as_word(b)
    na, nb = a.total, b.total
    i, j = np.meshgrid(np.arange(na), np.arange(nb), indexing="ij")
    data = np.zeros((na * nb, na * nb), dtype=complex)
    data[(j * na + i).ravel(), (i * nb + j).ravel()] = 1.0
    return Morphism(a + b, b + a, data)


def dimension(w) -> complex:
    c = cup(w)
    return compose(dagger(c), c).item()


def operator_norm(f: Morphism) -> float:
    if f.data.size == 0:
        return 0.0
    return float(np.linalg.norm(f.data, 2))


def normality_defect(f: Morphism) -> float:
    a = f.data
    return Tolerance.deviation(a @ a.conj().T, a.conj().T @ a)


def is_normal(f: Morphism, tol: Tolerance = DEFAULT_TOL) -> bool:
    a = f.data
    scale = max(operator_norm(f), 1.0) ** 2
    return normality_defect(f) <= tol.atol * scale + tol.rtol * scale


def eig_normal(f: Morphism, tol: Tolerance = DEFAULT_TOL) -> list[tuple[complex, Morphism]]:
    """Orthonormal eigenpairs of a normal endomorphism.

    Uses the complex Schur form ``f = Z T Z^dag``; for a normal matrix T is
    diagonal, so the columns of Z are an orthonormal eigenbasis even when
    eigenvalues repeat. The choice of basis inside a degenerate eigenspace
    is not canonical.
    """
    if f.dom != f.cod:
        raise ShapeMismatch(f"not an endomorphism: {f.cod} <- {f.dom}")
    if not is_normal(f, tol):
        raise NotNormal(f"commutator norm {normality_defect(f):.3e} exceeds tolerance")
    n = f.dom.total
    if n == 0:
        return []
    t, z = scipy.linalg.schur(np.asarray(f.data), output="complex")
    return [(complex(t[i, i]), state(z[:, i], f.dom)) for i in range(n)]


def random_morphism(dom, cod, rng) -> Morphism:
    dom, cod = as_word(dom), as_word(cod)
    shape = (cod.total, dom.total)
    return Morphism(dom, cod, rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


def allclose(f: Morphism, g: Morphism, tol: Tolerance = DEFAULT_TOL) -> bool:
    _check_parallel(f, g)
    return tol.close(f.data, g.data)


def block_diag(mats: Sequence[np.ndarray]) -> np.ndarray:
    return scipy.linalg.block_diag(*mats) if mats else np.zeros((0, 0))
