"""Structure-transfer functors between the finite algebra containers.

Every functor materializes its output as explicit tables and never checks
the hypotheses that make the output satisfy its axioms; run the matching
suite from :mod:`dialgebra_forge.verify` for that.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import ClassVar

from .algebras import FiniteAlgebra, StructureAlgebra, apply_table, table_from_function, vec_sub


@dataclass(frozen=True, eq=True)
class TridendriformAlgebra(FiniteAlgebra):
    KIND: ClassVar[str] = "tridendriform"
    PRODUCTS: ClassVar[tuple[str, ...]] = ("prec", "succ", "dot")


@dataclass(frozen=True, eq=True)
class LieDialgebra(FiniteAlgebra):
    KIND: ClassVar[str] = "liedialgebra"
    PRODUCTS: ClassVar[tuple[str, ...]] = ("b1", "b2")


@dataclass(frozen=True, eq=True)
class PostLieAlgebra(FiniteAlgebra):
    KIND: ClassVar[str] = "postlie"
    PRODUCTS: ClassVar[tuple[str, ...]] = ("circ", "bracket")


def _basis(A):
    return A.basis_vector


def tridendriform_of(A: StructureAlgebra) -> TridendriformAlgebra:
    """``x≺y = x⊣P(y)``, ``x≻y = P(x)⊣y``, ``x·y = x⊢y``."""
    P = A.P
    e = _basis(A)
    prec = table_from_function(A.dim, lambda i, j: apply_table(A.left, e(i), P(e(j))))
    succ = table_from_function(A.dim, lambda i, j: apply_table(A.left, P(e(i)), e(j)))
    return TridendriformAlgebra(
        basis=A.basis,
        products={"prec": prec, "succ": succ, "dot": A.right},
        operators={"P": P},
    )


def commutator(table, dim):
    return table_from_function(dim, lambda i, j: vec_sub(table.get((i, j), {}), table.get((j, i), {})))


def commutator_lie(A: StructureAlgebra) -> LieDialgebra:
    """``[x,y]₁ = x⊣y - y⊣x`` and ``[x,y]₂ = x⊢y - y⊢x``; operators carried over."""
    return LieDialgebra(
        basis=A.basis,
        products={"b1": commutator(A.left, A.dim), "b2": commutator(A.right, A.dim)},
        operators=A.operators,
    )


def postlie_of(L: LieDialgebra) -> PostLieAlgebra:
    """``x∘y = [P(x), y]₁`` and ``[x,y] = [x,y]₂``."""
    P = L.P
    e = _basis(L)
    b1 = L.products["b1"]
    circ = table_from_function(L.dim, lambda i, j: apply_table(b1, P(e(i)), e(j)))
    return PostLieAlgebra(basis=L.basis, products={"circ": circ, "bracket": L.products["b2"]}, operators={"P": P})


def postlie_of_tridendriform(T: TridendriformAlgebra) -> PostLieAlgebra:
    """``x∘y = x≻y - y≺x`` and ``[x,y] = x·y - y·x``."""
    succ, prec = T.products["succ"], T.products["prec"]
    circ = table_from_function(T.dim, lambda i, j: vec_sub(succ.get((i, j), {}), prec.get((j, i), {})))
    return PostLieAlgebra(
        basis=T.basis,
        products={"circ": circ, "bracket": commutator(T.products["dot"], T.dim)},
        operators={"P": T.P} if T.has_operator("P") else {},
    )
