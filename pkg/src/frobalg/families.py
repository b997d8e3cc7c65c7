"""
Named example monoids with their expected structural flags.

Expected flags are stated from the construction, never by running
``classify``: copying monoids have every property; raw End(C^n) has
``m m^dag = n``; realized C*-algebras are special and unitary; a direct sum
has a property exactly when every summand does.
"""

from __future__ import annotations

import numpy as np

from . import linalg as la
from .cstar import group_algebra, matrix_algebra, realize, rescale, star_direct_sum
from .endo import end_monoid
from .frobenius import PREDICATES, Monoid, basis_monoid, direct_sum, right_involution, transport
from .groupoid import cyclic_table, symmetric3_table
from .involution import InvolutionMonoid


def flags(special: bool, commutative: bool, unitary: bool = True) -> dict:
    return {"associative": True, "unital": True, "frobenius": True,
            "special": special, "commutative": commutative,
            "balanced_symmetric": unitary, "unitary": unitary}


def _sum_flags(*fs: dict) -> dict:
    return {k: all(f[k] for f in fs) for k in PREDICATES}


def weighted_matrix_monoid(q=(1.0, 2.0)) -> Monoid:
    """Mat(2) with inner product ``<a, b> = Tr(Q a^dag b)``, ``Q = diag(q)``.

    Orthonormal coordinates are ``x = vec(a sqrt(Q))``. Right multiplications
    satisfy ``R_c^dag = R_{Q c^dag Q^-1}``, so the monoid is dagger-Frobenius,
    but its Frobenius form ``Tr(Q^-1 ...)`` is not tracial unless Q is
    scalar, so it is neither balanced-symmetric nor unitary.
    """
    n = len(q)
    base = end_monoid(n).flatten()
    root = np.sqrt(np.asarray(q, dtype=float))
    T = np.kron(np.eye(n), np.diag(root))      # vec(a) -> vec(a sqrt(Q)), row-major
    return transport(base, T)


def asymmetric_involution_monoid(q=(1.0, 2.0)) -> InvolutionMonoid:
    """The weighted Mat(2) with its right involution ``s = s_R``.

    Here ``s* = s_L``, which differs from ``s_R`` because the monoid is not
    unitary: an involution that is not equal to its own dual. (On End(C^n)
    or on a commutative algebra every involution equals its dual.)
    """
    M = weighted_matrix_monoid(q)
    return InvolutionMonoid(M, right_involution(M))


def acceptance_family() -> list[tuple[str, Monoid, dict]]:
    """(name, monoid, expected flags) for the axiom suite."""
    out = []
    for n in range(1, 9):
        out.append((f"basis{n}", basis_monoid(n), flags(True, True)))
    for n in range(1, 5):
        out.append((f"end{n}", end_monoid(n), flags(n == 1, n == 1)))
        out.append((f"end{n}_rescaled", rescale(end_monoid(n), n), flags(True, n == 1)))
    z2 = realize(group_algebra(cyclic_table(2))).M
    z3 = realize(group_algebra(cyclic_table(3))).M
    s3 = realize(group_algebra(symmetric3_table())).M
    m2c = realize(star_direct_sum(matrix_algebra(2), group_algebra([[0]]))).M
    out += [("C[Z2]", z2, flags(True, True)), ("C[Z3]", z3, flags(True, True)),
            ("C[S3]", s3, flags(True, False)), ("Mat2+C", m2c, flags(True, False))]
    sums = [("basis2+end2", ["basis2", "end2"]),
            ("end2_rescaled+C[Z2]", ["end2_rescaled", "C[Z2]"]),
            ("C[Z3]+basis1", ["C[Z3]", "basis1"]),
            ("basis1+end1+C[Z2]", ["basis1", "end1", "C[Z2]"]),
            ("Mat2+C+end3_rescaled", ["Mat2+C", "end3_rescaled"])]
    by_name = {name: (M, f) for name, M, f in out}
    for name, parts in sums:
        ms = [by_name[p][0] for p in parts]
        out.append((name, direct_sum(*ms), _sum_flags(*[by_name[p][1] for p in parts])))
    return out


def frobenius_family() -> list[tuple[str, Monoid, dict]]:
    """The acceptance family plus a non-unitary dagger-Frobenius member."""
    return acceptance_family() + [("weighted_mat2", weighted_matrix_monoid(),
                                   flags(False, False, unitary=False))]
