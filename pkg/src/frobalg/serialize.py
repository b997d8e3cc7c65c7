"""
JSON encodings for every value the command line reads or writes.

Complex numbers are ``[re, im]`` pairs (plain reals are accepted on input).
Floats are written with 17 significant digits so a dump/load cycle
reproduces every bit.
"""

from __future__ import annotations

import json
import math

import numpy as np

from . import linalg as la
from .cstar import StarAlgebra
from .frobenius import Monoid
from .groupoid import EquivariantClassicalStructure, GSet, Groupoid, UnitaryRep
from .involution import AntilinearInvolution, InvolutionMonoid
from .linalg import Factor, Morphism, WireWord
from .spectral import FinSetMap, Spectrum


class SchemaError(ValueError):
    """Input JSON does not match the expected layout."""


# --- text -----------------------------------------------------------------

def _fmt(x) -> str:
    if isinstance(x, bool) or x is None:
        return json.dumps(x)
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if not math.isfinite(x):
            raise ValueError(f"cannot encode non-finite number {x}")
        return "%.17g" % x
    if isinstance(x, str):
        return json.dumps(x)
    if isinstance(x, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_fmt(v)}" for k, v in x.items()) + "}"
    if isinstance(x, (list, tuple)):
        return "[" + ", ".join(_fmt(v) for v in x) + "]"
    raise TypeError(f"cannot encode {type(x).__name__}")


def dumps(obj) -> str:
    return _fmt(obj)


def loads(text: str):
    return json.loads(text)


# --- numbers and arrays ---------------------------------------------------

def encode_complex(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def encode_array(a) -> list:
    a = np.asarray(a)
    if a.ndim == 0:
        return encode_complex(a)
    return [encode_array(x) for x in a]


def decode_array(x, ndim: int) -> np.ndarray:
    """Nested lists with ``[re, im]`` or real leaves into a complex array."""
    try:
        arr = np.asarray(x, dtype=float)
    except (TypeError, ValueError) as e:
        raise SchemaError(f"not a numeric array: {e}") from e
    if arr.ndim == ndim + 1 and arr.shape[-1] == 2:
        return arr[..., 0] + 1j * arr[..., 1]
    if arr.ndim == ndim:
        return arr.astype(complex)
    if arr.size == 0:
        return np.zeros((0,) * ndim, dtype=complex)
    raise SchemaError(f"expected a {ndim}-dimensional array of numbers or [re, im] pairs")


# --- core values ----------------------------------------------------------

def encode_word(w: WireWord) -> list:
    return [{"dim": f.dim, "dual": f.dual} for f in w.factors]


def decode_word(x) -> WireWord:
    try:
        return WireWord(tuple(Factor(int(f["dim"]), bool(f.get("dual", False))) for f in x))
    except (TypeError, KeyError) as e:
        raise SchemaError(f"bad wire word: {x!r}") from e


def encode_morphism(f: Morphism) -> dict:
    return {"dom": encode_word(f.dom), "cod": encode_word(f.cod), "data": encode_array(f.data)}


def decode_morphism(x) -> Morphism:
    if isinstance(x, list):
        data = decode_array(x, 2)
        return Morphism(la.word(data.shape[1]), la.word(data.shape[0]), data)
    try:
        dom, cod = decode_word(x["dom"]), decode_word(x["cod"])
        return Morphism(dom, cod, decode_array(x["data"], 2).reshape(cod.total, dom.total))
    except KeyError as e:
        raise SchemaError(f"morphism is missing {e}") from e


def decode_state(x) -> np.ndarray:
    """A state as a Morphism JSON or a bare coordinate list."""
    if isinstance(x, dict):
        return decode_morphism(x).vector()
    return decode_array(x, 1)


def encode_monoid(M: Monoid) -> dict:
    d = {"dim": M.dim, "m": encode_array(M.m.data), "u": encode_array(M.unit_vector)}
    if M.obj != la.word(M.dim):
        d["object"] = encode_word(M.obj)
    return d


def decode_monoid(x) -> Monoid:
    try:
        u = decode_array(x["u"], 1)
        m = decode_array(x["m"], 2)
    except KeyError as e:
        raise SchemaError(f"monoid is missing {e}") from e
    n = int(x.get("dim", u.size))
    if u.size != n or m.shape != (n, n * n):
        raise SchemaError(f"monoid of dim {n} needs m of shape ({n}, {n * n}) and u of length {n}")
    obj = decode_word(x["object"]) if "object" in x else None
    return Monoid.from_arrays(m, u, obj)


def encode_involution_monoid(IM: InvolutionMonoid) -> dict:
    d = encode_monoid(IM.M)
    d["s"] = encode_array(IM.s.data)
    return d


def decode_involution_monoid(x, default=None) -> InvolutionMonoid:
    M = decode_monoid(x)
    if "s" not in x:
        if default is None:
            raise SchemaError("involution monoid is missing 's'")
        return InvolutionMonoid(M, default(M))
    return InvolutionMonoid.from_arrays(M, decode_array(x["s"], 2))


def encode_star_algebra(A: StarAlgebra) -> dict:
    return {"dim": A.dim, "mult": encode_array(A.mult), "unit": encode_array(A.unit),
            "star": {"S": encode_array(A.star.S)}}


def decode_star_algebra(x) -> StarAlgebra:
    try:
        return StarAlgebra(decode_array(x["mult"], 3), decode_array(x["unit"], 1),
                           AntilinearInvolution(decode_array(x["star"]["S"], 2)))
    except KeyError as e:
        raise SchemaError(f"star algebra is missing {e}") from e


def encode_spectrum(S: Spectrum) -> dict:
    return {"size": len(S), "points": [encode_array(p.vector()) for p in S.points],
            "characters": [encode_array(c.vector()) for c in S.characters]}


def encode_finset_map(f: FinSetMap) -> dict:
    return {"source": f.source, "target": f.target, "table": list(f.table)}


def decode_finset_map(x) -> FinSetMap:
    return FinSetMap(int(x["source"]), int(x["target"]), tuple(x["table"]))


# --- groupoids ------------------------------------------------------------

def encode_groupoid(G: Groupoid) -> dict:
    return G.to_dict()


def decode_groupoid(x) -> Groupoid:
    try:
        return Groupoid.from_dict(x)
    except KeyError as e:
        raise SchemaError(f"groupoid is missing {e}") from e


def encode_rep(R: UnitaryRep) -> dict:
    return {"dims": dict(R.dims), "maps": {g: encode_array(A.data) for g, A in R.maps.items()}}


def decode_rep(x, G: Groupoid) -> UnitaryRep:
    dims = {str(o): int(n) for o, n in x["dims"].items()}
    maps = {}
    for g, (s, t) in G.morphisms.items():
        data = decode_array(x["maps"][g], 2).reshape(dims[t], dims[s])
        maps[g] = Morphism(la.word(dims[s]), la.word(dims[t]), data)
    return UnitaryRep(dims, maps)


def encode_structure(C: EquivariantClassicalStructure) -> dict:
    return {"monoids": {o: encode_monoid(M) for o, M in C.monoids.items()}}


def decode_structure(x) -> EquivariantClassicalStructure:
    return EquivariantClassicalStructure({str(o): decode_monoid(M) for o, M in x["monoids"].items()})


def encode_gset(X: GSet) -> dict:
    return {"sizes": dict(X.sizes), "perms": {g: list(p) for g, p in X.perms.items()}}


def decode_gset(x) -> GSet:
    return GSet({str(o): int(n) for o, n in x["sizes"].items()},
                {str(g): tuple(int(i) for i in p) for g, p in x["perms"].items()})


def decode_env(x) -> dict:
    """Name -> Morphism. A monoid document becomes ``{m, u}`` (plus ``s``)."""
    if isinstance(x, dict) and "m" in x and "u" in x and "dim" in x:
        M = decode_monoid(x)
        env = {"m": M.m, "u": M.u}
        if "s" in x:
            env["s"] = la.Morphism(M.obj, M.obj.dual(), decode_array(x["s"], 2))
        return env
    if not isinstance(x, dict):
        raise SchemaError("environment must be an object mapping names to morphisms")
    return {str(k): decode_morphism(v) for k, v in x.items()}
