"""
Finite groupoids, their unitary representations, and the correspondence
between equivariant classical structures and finite G-sets.

Composition is recorded as ``compose[(g, h)] = g o h`` (first ``h``, then
``g``), defined exactly when ``tgt(h) == src(g)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .errors import InvalidGroupoid, NotPermutation, ShapeMismatch
from .frobenius import Monoid, classify
from .involution import Report
from .linalg import DEFAULT_TOL, Morphism, Tolerance
from .spectral import free, spectrum

MATCH_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class Groupoid:
    objects: tuple
    morphisms: dict            # id -> (src, tgt)
    compose: dict              # (g, h) -> g o h
    inverses: dict             # id -> id
    identities: dict = field(default_factory=dict)   # object -> id

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(str(o) for o in self.objects))
        object.__setattr__(self, "morphisms",
                           {str(k): (str(s), str(t)) for k, (s, t) in self.morphisms.items()})
        object.__setattr__(self, "compose",
                           {(str(g), str(h)): str(r) for (g, h), r in self.compose.items()})
        object.__setattr__(self, "inverses", {str(k): str(v) for k, v in self.inverses.items()})
        if not self.identities:
            ids = {}
            for g, (s, t) in self.morphisms.items():
                if s == t and all(self.compose.get((g, h)) == h
                                  for h, (_, th) in self.morphisms.items() if th == s):
                    ids.setdefault(s, g)
            object.__setattr__(self, "identities", ids)
        else:
            object.__setattr__(self, "identities",
                               {str(k): str(v) for k, v in self.identities.items()})

    def src(self, g):
        return self.morphisms[g][0]

    def tgt(self, g):
        return self.morphisms[g][1]

    def composable(self):
        """All pairs ``(g, h)`` with ``g o h`` defined."""
        return [(g, h) for g in self.morphisms for h in self.morphisms if self.tgt(h) == self.src(g)]

    def non_identities(self):
        ids = set(self.identities.values())
        return [g for g in self.morphisms if g not in ids]

    def validate(self):
        """Raise :class:`InvalidGroupoid` unless every law holds."""
        for o in self.objects:
            if o not in self.identities:
                raise InvalidGroupoid(f"object {o} has no identity")
        for g, (s, t) in self.morphisms.items():
            if s not in self.objects or t not in self.objects:
                raise InvalidGroupoid(f"morphism {g} has unknown endpoints")
        pairs = self.composable()
        for g, h in pairs:
            r = self.compose.get((g, h))
            if r is None:
                raise InvalidGroupoid(f"{g} o {h} is not defined")
            if self.morphisms[r] != (self.src(h), self.tgt(g)):
                raise InvalidGroupoid(f"{g} o {h} = {r} has the wrong endpoints")
        for key in self.compose:
            if key not in set(pairs):
                raise InvalidGroupoid(f"{key[0]} o {key[1]} given for non-composable pair")
        c = self.compose
        for g, h in pairs:
            for k in self.morphisms:
                if self.tgt(k) == self.src(h) and c[(c[(g, h)], k)] != c[(g, c[(h, k)])]:
                    raise InvalidGroupoid(f"associativity fails at ({g}, {h}, {k})")
        for g, (s, t) in self.morphisms.items():
            if c[(g, self.identities[s])] != g or c[(self.identities[t], g)] != g:
                raise InvalidGroupoid(f"identity law fails for {g}")
            gi = self.inverses.get(g)
            if gi is None or c.get((gi, g)) != self.identities[s] or c.get((g, gi)) != self.identities[t]:
                raise InvalidGroupoid(f"inverse law fails for {g}")
        return self

    def to_dict(self) -> dict:
        return {"objects": list(self.objects),
                "morphisms": [{"id": g, "src": s, "tgt": t} for g, (s, t) in self.morphisms.items()],
                "compose": [[g, h, r] for (g, h), r in self.compose.items()],
                "inverses": [[g, gi] for g, gi in self.inverses.items()]}

    @classmethod
    def from_dict(cls, d: dict) -> "Groupoid":
        return cls(tuple(d["objects"]),
                   {str(m["id"]): (m["src"], m["tgt"]) for m in d["morphisms"]},
                   {(str(g), str(h)): str(r) for g, h, r in d["compose"]},
                   {str(g): str(gi) for g, gi in d["inverses"]}).validate()


def from_group(table, obj: str = "*") -> Groupoid:
    """One-object groupoid from a group table ``table[g][h] = gh``."""
    table = np.asarray(table, dtype=int)
    n = table.shape[0]
    morph = {f"g{i}": (obj, obj) for i in range(n)}
    comp = {(f"g{i}", f"g{j}"): f"g{table[i, j]}" for i in range(n) for j in range(n)}
    e = next(i for i in range(n) if all(table[i, j] == j for j in range(n)))
    inv = {f"g{i}": f"g{next(j for j in range(n) if table[i, j] == e)}" for i in range(n)}
    return Groupoid((obj,), morph, comp, inv, {obj: f"g{e}"}).validate()


def cyclic_table(n: int) -> np.ndarray:
    i = np.arange(n)
    return (i[:, None] + i[None, :]) % n


def symmetric3_table() -> np.ndarray:
    perms = list(itertools.permutations(range(3)))
    index = {p: k for k, p in enumerate(perms)}
    return np.array([[index[tuple(p[q[x]] for x in range(3))] for q in perms] for p in perms])


def cyclic(n: int) -> Groupoid:
    return from_group(cyclic_table(n))


def trivial() -> Groupoid:
    return cyclic(1)


def isomorphism_pair() -> Groupoid:
    """Two objects joined by a single isomorphism ``f : a -> b``."""
    morph = {"1a": ("a", "a"), "1b": ("b", "b"), "f": ("a", "b"), "f-1": ("b", "a")}
    comp = {("1a", "1a"): "1a", ("1b", "1b"): "1b",
            ("f", "1a"): "f", ("1b", "f"): "f",
            ("f-1", "1b"): "f-1", ("1a", "f-1"): "f-1",
            ("f-1", "f"): "1a", ("f", "f-1"): "1b"}
    inv = {"1a": "1a", "1b": "1b", "f": "f-1", "f-1": "f"}
    return Groupoid(("a", "b"), morph, comp, inv, {"a": "1a", "b": "1b"}).validate()


# --- representations ------------------------------------------------------

@dataclass(frozen=True, eq=False)
class UnitaryRep:
    dims: dict     # object -> int
    maps: dict     # morphism id -> Morphism

    def space(self, obj):
        return la.word(self.dims[obj])


@dataclass(frozen=True, eq=False)
class EquivariantClassicalStructure:
    monoids: dict  # object -> Monoid


@dataclass(frozen=True)
class GSet:
    sizes: dict    # object -> int
    perms: dict    # morphism id -> tuple, x -> g.x

    def key(self):
        return (tuple(sorted(self.sizes.items())),
                tuple(sorted((g, tuple(p)) for g, p in self.perms.items())))

    def __eq__(self, other):
        return isinstance(other, GSet) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    @property
    def total(self) -> int:
        return sum(self.sizes.values())


def validate_rep(G: Groupoid, R: UnitaryRep, tol: Tolerance = DEFAULT_TOL) -> Report:
    rep = Report()
    for g, (s, t) in G.morphisms.items():
        A = R.maps[g]
        if A.dom != R.space(s) or A.cod != R.space(t):
            raise ShapeMismatch(f"A({g}) is {A.cod} <- {A.dom}, expected {R.space(t)} <- {R.space(s)}")
        rep.add(f"unitary[{g}]", A.dag @ A, la.identity(A.dom), tol)
        rep.add(f"dagger[{g}]", R.maps[G.inverses[g]], A.dag, tol)
    for o, e in G.identities.items():
        rep.add(f"identity[{o}]", R.maps[e], la.identity(R.space(o)), tol)
    for g, h in G.composable():
        rep.add(f"functor[{g},{h}]", R.maps[G.compose[(g, h)]], R.maps[g] @ R.maps[h], tol)
    return rep


def check_classical_structure(G: Groupoid, R: UnitaryRep, C: EquivariantClassicalStructure,
                              tol: Tolerance = DEFAULT_TOL) -> Report:
    """Every monoid is a classical structure and every ``A(g)`` is a monoid map."""
    rep = Report()
    for o in G.objects:
        M = C.monoids[o]
        flags = classify(M, tol)
        for k in ("associative", "unital", "frobenius", "commutative"):
            rep.checks[f"{k}[{o}]"] = flags[k]
            rep.deviations[f"{k}[{o}]"] = flags.deviations[k]
    for g, (s, t) in G.morphisms.items():
        A, Ms, Mt = R.maps[g], C.monoids[s], C.monoids[t]
        rep.add(f"intertwiner_m[{g}]", A @ Ms.m, Mt.m @ la.tensor(A, A), tol)
        rep.add(f"intertwiner_u[{g}]", A @ Ms.u, Mt.u, tol)
    return rep


def validate_gset(G: Groupoid, X: GSet) -> bool:
    for g, (s, t) in G.morphisms.items():
        p = X.perms[g]
        if X.sizes[s] != X.sizes[t] or sorted(p) != list(range(X.sizes[t])):
            return False
    for o, e in G.identities.items():
        if tuple(X.perms[e]) != tuple(range(X.sizes[o])):
            return False
    for g, h in G.composable():
        pg, ph = X.perms[g], X.perms[h]
        if tuple(X.perms[G.compose[(g, h)]]) != tuple(pg[x] for x in ph):
            return False
    return True


def extract_gset(G: Groupoid, R: UnitaryRep, C: EquivariantClassicalStructure,
                 tol: Tolerance = DEFAULT_TOL, seed: int = 0) -> GSet:
    """Read off the G-set: points are spectra, ``A(g)`` permutes them."""
    spectra = {o: spectrum(C.monoids[o], tol, seed) for o in G.objects}
    perms = {}
    for g, (s, t) in G.morphisms.items():
        src, dst = spectra[s].matrix, spectra[t].matrix
        image = R.maps[g].data @ src
        if src.shape[1] != dst.shape[1]:
            raise NotPermutation(f"A({g}) joins spectra of sizes {src.shape[1]} and {dst.shape[1]}")
        table = []
        for i in range(image.shape[1]):
            d = np.linalg.norm(dst - image[:, [i]], axis=0)
            j = int(np.argmin(d))
            if d[j] > MATCH_TOL:
                raise NotPermutation(f"A({g}) sends point {i} of {s} off the spectrum "
                                     f"(nearest distance {d[j]:.3e})")
            table.append(j)
        if len(set(table)) != len(table):
            raise NotPermutation(f"A({g}) identifies two points: {table}")
        perms[g] = tuple(table)
    X = GSet({o: len(spectra[o]) for o in G.objects}, perms)
    if not validate_gset(G, X):
        raise NotPermutation("extracted permutations are not functorial")
    return X


def permutation_matrix(p) -> np.ndarray:
    n = len(p)
    P = np.zeros((n, n), dtype=complex)
    P[list(p), list(range(n))] = 1.0
    return P


def linearize_gset(G: Groupoid, X: GSet) -> tuple[UnitaryRep, EquivariantClassicalStructure]:
    dims = {o: X.sizes[o] for o in G.objects}
    maps = {g: Morphism(la.word(dims[s]), la.word(dims[t]), permutation_matrix(X.perms[g]))
            for g, (s, t) in G.morphisms.items()}
    return UnitaryRep(dims, maps), EquivariantClassicalStructure({o: free(dims[o]) for o in G.objects})


# --- enumeration ----------------------------------------------------------

def _size_assignments(G: Groupoid, max_total: int):
    for sizes in itertools.product(range(max_total + 1), repeat=len(G.objects)):
        if sum(sizes) <= max_total:
            yield dict(zip(G.objects, sizes))


def _close(G: Groupoid, assign: dict) -> dict | None:
    """Extend a partial action by composition; ``None`` on a conflict."""
    assign = dict(assign)
    pairs = G.composable()
    changed = True
    while changed:
        changed = False
        for g, h in pairs:
            if g in assign and h in assign:
                val = tuple(assign[g][x] for x in assign[h])
                r = G.compose[(g, h)]
                if r not in assign:
                    assign[r] = val
                    changed = True
                elif assign[r] != val:
                    return None
    return assign


def enumerate_gsets(G: Groupoid, max_total: int):
    """Every G-set with total size at most ``max_total``.

    Backtracking over permutations, closing each partial assignment under
    composition so only generators are really guessed.
    """
    out = []
    for sizes in _size_assignments(G, max_total):
        if any(sizes[G.src(g)] != sizes[G.tgt(g)] for g in G.morphisms):
            continue
        base = _close(G, {e: tuple(range(sizes[o])) for o, e in G.identities.items()})

        def search(assign):
            todo = [g for g in G.morphisms if g not in assign]
            if not todo:
                X = GSet(sizes, assign)
                if validate_gset(G, X):
                    out.append(X)
                return
            g = todo[0]
            for p in itertools.permutations(range(sizes[G.src(g)])):
                nxt = _close(G, {**assign, g: p})
                if nxt is not None:
                    search(nxt)

        search(base)
    return out


def gset_isomorphic(G: Groupoid, X: GSet, Y: GSet) -> bool:
    """Search per-object bijections commuting with the actions."""
    if X.sizes != Y.sizes:
        return False
    objs = list(G.objects)
    for combo in itertools.product(*[itertools.permutations(range(X.sizes[o])) for o in objs]):
        phi = dict(zip(objs, combo))
        if all(phi[t][X.perms[g][x]] == Y.perms[g][phi[s][x]]
               for g, (s, t) in G.morphisms.items() for x in range(X.sizes[s])):
            return True
    return False


def structures_equivalent(G: Groupoid, R1: UnitaryRep, C1: EquivariantClassicalStructure,
                          R2: UnitaryRep, C2: EquivariantClassicalStructure,
                          tol: Tolerance = DEFAULT_TOL, seed: int = 0) -> bool:
    """Is there a unitary intertwiner ``R1 -> R2`` that is also a monoid isomorphism?

    A monoid isomorphism between classical structures must send copyable
    points to copyable points, so candidates are ``U = sum_i b_sigma(i) a_i^dag``
    (scaled to preserve norms) over all point bijections ``sigma``.
    """
    if R1.dims != R2.dims:
        return False
    objs = list(G.objects)
    spec1 = {o: spectrum(C1.monoids[o], tol, seed) for o in objs}
    spec2 = {o: spectrum(C2.monoids[o], tol, seed) for o in objs}
    if any(len(spec1[o]) != len(spec2[o]) for o in objs):
        return False
    for combo in itertools.product(*[itertools.permutations(range(len(spec1[o]))) for o in objs]):
        U = {}
        for o, sigma in zip(objs, combo):
            a, b = spec1[o].matrix, spec2[o].matrix
            chars = np.array([c.vector() for c in spec1[o].characters]).reshape(len(sigma), -1)
            U[o] = Morphism(R1.space(o), R2.space(o), b[:, list(sigma)] @ chars)
        if not all(tol.close((U[o].dag @ U[o]).data, np.eye(R1.dims[o])) for o in objs):
            continue
        if not all(tol.close((U[o] @ C1.monoids[o].m).data,
                             (C2.monoids[o].m @ la.tensor(U[o], U[o])).data) for o in objs):
            continue
        if all(tol.close((U[t] @ R1.maps[g]).data, (R2.maps[g] @ U[s]).data)
               for g, (s, t) in G.morphisms.items()):
            return True
    return False


def count_classes(items, equivalent) -> int:
    reps = []
    for x in items:
        if not any(equivalent(x, y) for y in reps):
            reps.append(x)
    return len(reps)
