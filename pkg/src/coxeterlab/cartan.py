"""Generalized Cartan matrices, symmetrizers, and definiteness of the form."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .diagrams import BicoloredPartition, Diagram, DiagramError, bicolor, gcm_matrix

FINITE = "finite"
AFFINE = "affine"
INDEFINITE_DEGENERATE = "indefinite-degenerate"
INDEFINITE_NONDEGENERATE = "indefinite-nondegenerate"


class SymmetrizationError(DiagramError):
    pass


@dataclass(frozen=True)
class CartanData:
    K: tuple[tuple[int, ...], ...]
    U: tuple[Fraction, ...]  # diagonal of the symmetrizer
    B: tuple[tuple[Fraction, ...], ...]  # symmetric matrix with K = U B
    kind: str
    ker_b_dim: int

    @property
    def n(self) -> int:
        return len(self.K)


def _symmetrizer(diagram: Diagram, k) -> list[Fraction]:
    """Diagonal u with u_j k_ij = u_i k_ji, normalized u_0 = 1.

    Solved along a spanning tree; every non-tree edge is checked for
    consistency, which is exactly symmetrizability around cycles.
    """
    n = diagram.n
    u: list[Fraction | None] = [None] * n
    u[0] = Fraction(1)
    queue = [0]
    adj: dict[int, list[int]] = {v: diagram.neighbors(v) for v in diagram.vertices()}
    while queue:
        i = queue.pop(0)
        for j in adj[i]:
            required = u[i] * Fraction(k[j][i], k[i][j])
            if u[j] is None:
                u[j] = required
                queue.append(j)
            elif u[j] != required:
                raise SymmetrizationError(
                    "weight pattern around a cycle is not symmetrizable"
                )
    return u  # type: ignore[return-value]


def cartan_matrix(diagram: Diagram) -> CartanData:
    """Cartan matrix with symmetrizer, Tits form, and definiteness class."""
    k = gcm_matrix(diagram)
    u = _symmetrizer(diagram, k)
    n = diagram.n
    b = [[Fraction(k[i][j]) / u[i] for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if b[i][j] != b[j][i]:
                raise SymmetrizationError("symmetrizer failed to symmetrize")
    pos, zero, neg = linalg.symmetric_inertia(b)
    if neg == 0 and zero == 0:
        kind = FINITE
    elif neg == 0 and zero == 1:
        kind = AFFINE
    elif neg == 0:
        raise SymmetrizationError("unexpected signature for a connected diagram")
    else:
        kind = INDEFINITE_DEGENERATE if zero else INDEFINITE_NONDEGENERATE
    return CartanData(
        K=tuple(tuple(row) for row in k),
        U=tuple(u),
        B=tuple(tuple(row) for row in b),
        kind=kind,
        ker_b_dim=zero,
    )


@dataclass(frozen=True)
class BlockDecomposition:
    """Off-diagonal blocks of K in bicolored order: K = [[2I, 2D], [2F, 2I]]."""

    D: tuple[tuple[Fraction, ...], ...]
    F: tuple[tuple[Fraction, ...], ...]
    ordering: tuple[int, ...]
    partition: BicoloredPartition


def block_decomposition(diagram: Diagram) -> BlockDecomposition:
    part = bicolor(diagram)
    k = gcm_matrix(diagram)
    d = tuple(
        tuple(Fraction(k[i][j], 2) for j in part.part_s2) for i in part.part_s1
    )
    f = tuple(
        tuple(Fraction(k[j][i], 2) for i in part.part_s1) for j in part.part_s2
    )
    return BlockDecomposition(D=d, F=f, ordering=part.order, partition=part)


def kernel_of_b(cartan: CartanData) -> list[list[Fraction]]:
    """Exact rational basis of ker B (equals ker K)."""
    return linalg.nullspace([list(row) for row in cartan.B])


def cartan_to_json_rows(matrix) -> list[list[str]]:
    """Row-major exact rational serialization ("p/q" strings)."""
    return [[str(Fraction(x)) for x in row] for row in matrix]
