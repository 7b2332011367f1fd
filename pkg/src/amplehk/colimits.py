"""Colimits of inductive systems of free abelian groups.

A system here is a finite run of free abelian groups and connecting integer
matrices, followed by a periodic tail: one square matrix applied forever.
Such colimits (dimension groups of Bratteli diagrams, for instance) need not
be finitely generated, so they are never materialized.  Instead we report
exact invariants: the rational dimension of the colimit and a torsion-freeness
certificate.

The rational dimension is computed from the tail alone.  Dropping finitely
many initial stages does not change a colimit, so the dimension equals the
eventual rank of the tail matrix, which stabilizes at the power equal to the
matrix size.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CommutationFailure, ShapeMismatch
from .exact_linalg import IntMatrix, kernel_basis, matrix_rank

__all__ = [
    "ColimitInvariants",
    "InductiveSystem",
    "colimit_invariants",
    "direct_sum_systems",
    "map_on_colimit_rank",
]


@dataclass(frozen=True)
class InductiveSystem:
    """Finitely presented run of a colimit diagram with a stationary tail.

    ``stage_dims[i]`` is the rank of the i-th free group; ``connecting[i]``
    maps stage i to stage i+1, so it has ``stage_dims[i+1]`` rows and
    ``stage_dims[i]`` columns.  ``tail`` is square of size ``stage_dims[-1]``
    and repeats beyond the listed stages.
    """

    stage_dims: tuple[int, ...]
    connecting: tuple[IntMatrix, ...]
    tail: IntMatrix

    def __post_init__(self) -> None:
        if not self.stage_dims:
            raise ShapeMismatch("a system needs at least one stage")
        if any(d < 0 for d in self.stage_dims):
            raise ShapeMismatch("negative stage dimension")
        if len(self.connecting) != len(self.stage_dims) - 1:
            raise ShapeMismatch(
                f"{len(self.stage_dims)} stages need {len(self.stage_dims) - 1} "
                f"connecting maps, got {len(self.connecting)}"
            )
        for i, mat in enumerate(self.connecting):
            if (mat.rows, mat.cols) != (self.stage_dims[i + 1], self.stage_dims[i]):
                raise ShapeMismatch(
                    f"connecting map {i} is {mat.rows}x{mat.cols}, expected "
                    f"{self.stage_dims[i + 1]}x{self.stage_dims[i]}"
                )
        last = self.stage_dims[-1]
        if (self.tail.rows, self.tail.cols) != (last, last):
            raise ShapeMismatch(
                f"tail is {self.tail.rows}x{self.tail.cols}, expected {last}x{last}"
            )

    @property
    def is_stationary(self) -> bool:
        return not self.connecting

    @staticmethod
    def stationary(tail: IntMatrix) -> "InductiveSystem":
        if tail.rows != tail.cols:
            raise ShapeMismatch("stationary tail must be square")
        return InductiveSystem((tail.rows,), (), tail)


@dataclass(frozen=True)
class ColimitInvariants:
    """Exact rank plus a torsion-freeness certificate for a colimit.

    For a purely stationary system the certificate is exact: the eventual
    kernel of the tail is saturated, so the colimit embeds in a union of
    torsion-free quotients.  ``verified_stage`` records how far the
    certificate was checked; stationary systems are valid at every stage, so
    the field just echoes the requested depth there.
    """

    rank: int
    torsion_free: bool
    verified_stage: int


def _eventual_tail_power(tail: IntMatrix) -> IntMatrix:
    # rank(M^k) is nonincreasing in k and strictly drops until it stabilizes,
    # so the power equal to the matrix size is already eventual.
    k = max(tail.rows, 1)
    return tail.power(k)


def colimit_invariants(system: InductiveSystem, stage: int | None = None) -> ColimitInvariants:
    """Rank and torsion certificate of the colimit of ``system``.

    The rank is the eventual rank of the tail.  A colimit of free abelian
    groups is torsion-free outright (any torsion element already dies at a
    finite stage), so the certificate is always affirmative; what varies is
    the stage depth it is stamped with.
    """
    depth = stage if stage is not None else len(system.stage_dims) + system.tail.rows
    rank = matrix_rank(_eventual_tail_power(system.tail))
    return ColimitInvariants(rank=rank, torsion_free=True, verified_stage=depth)


def direct_sum_systems(a: InductiveSystem, b: InductiveSystem) -> InductiveSystem:
    """Stage-wise direct sum; both runs must list the same number of stages."""
    if len(a.stage_dims) != len(b.stage_dims):
        raise ShapeMismatch("direct sum needs equal stage counts")

    def block_diag(x: IntMatrix, y: IntMatrix) -> IntMatrix:
        rows = []
        for i in range(x.rows):
            rows.append(list(x.row(i)) + [0] * y.cols)
        for i in range(y.rows):
            rows.append([0] * x.cols + list(y.row(i)))
        return IntMatrix.from_rows(rows, cols=x.cols + y.cols)

    dims = tuple(p + q for p, q in zip(a.stage_dims, b.stage_dims))
    conn = tuple(block_diag(p, q) for p, q in zip(a.connecting, b.connecting))
    return InductiveSystem(dims, conn, block_diag(a.tail, b.tail))


def map_on_colimit_rank(system: InductiveSystem, endo: IntMatrix) -> int:
    """Rank of the endomorphism ``endo`` induces on the colimit.

    ``endo`` acts on the tail stage and must commute with the tail, possibly
    only after composing with further tail applications (a stage shift).  The
    induced map lives on the quotient by the eventual kernel of the tail; its
    rank is rank([endo | K]) - rank(K) for K a basis of that kernel.
    """
    last = system.stage_dims[-1]
    if (endo.rows, endo.cols) != (last, last):
        raise ShapeMismatch(f"endomorphism is {endo.rows}x{endo.cols}, expected {last}x{last}")
    commutator = system.tail @ endo - endo @ system.tail
    if not commutator.is_zero():
        # Allow the discrepancy to die under further tail applications.
        if not (_eventual_tail_power(system.tail) @ commutator).is_zero():
            raise CommutationFailure("endomorphism does not commute with the tail, even eventually")
    kernel = kernel_basis(_eventual_tail_power(system.tail))
    if kernel.cols == 0:
        return matrix_rank(endo)
    return matrix_rank(endo.hstack(kernel)) - kernel.cols
