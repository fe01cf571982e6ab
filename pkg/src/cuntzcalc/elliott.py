"""Elliott invariants at finite trace resolution and the induced model maps.

An invariant bundles ordered K0 data with its trace pairing, a K1 group
carried along untouched, and the trace simplex.  A morphism is a triple
(theta0, theta1, gamma): a K0 lattice map, a K1 homomorphism, and a map of
trace simplices given on extreme points by convex coefficients.  The
compatibility square ties gamma^T against the state matrices.

The functor G sends an invariant to its Cuntz semigroup model and a
morphism to the pair (projection part theta0, soft part gamma^T).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .linalg import (
    identity,
    int_matrix,
    int_vector,
    matmul,
    matrix,
    matvec,
    transpose,
    vector,
)
from .wmodel import FINITE, CuntzClass, K0Model, TraceSimplex, WModel


@dataclass(frozen=True)
class AbelianGroupData:
    """A finitely generated abelian group in invariant-factor form."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __init__(self, free_rank: int, torsion=()):
        free_rank = int(free_rank)
        if free_rank < 0:
            raise ValueError("free rank cannot be negative")
        torsion = tuple(int(t) for t in torsion)
        if any(t < 2 for t in torsion):
            raise ValueError("torsion orders must be at least 2")
        for a, b in zip(torsion, torsion[1:]):
            if b % a != 0:
                raise ValueError("torsion orders must form a divisibility chain")
        object.__setattr__(self, "free_rank", free_rank)
        object.__setattr__(self, "torsion", torsion)

    @property
    def generator_count(self) -> int:
        return len(self.torsion) + self.free_rank


@dataclass(frozen=True)
class AbelianGroupHom:
    """A homomorphism between AbelianGroupData, as an integer matrix.

    Columns index source generators (torsion first, then free), rows index
    target generators.  Well-formedness demands each source torsion
    generator map to an element killed by its order: free components zero,
    torsion components annihilated modulo the target order.
    """

    source: AbelianGroupData
    target: AbelianGroupData
    mat: tuple[tuple[int, ...], ...]

    def __init__(self, source: AbelianGroupData, target: AbelianGroupData, mat):
        mat = int_matrix(mat)
        rows = target.generator_count
        cols = source.generator_count
        if len(mat) != rows or any(len(r) != cols for r in mat):
            raise ValueError("homomorphism matrix has the wrong shape")
        st = len(source.torsion)
        tt = len(target.torsion)
        for j in range(st):
            order = source.torsion[j]
            for i in range(rows):
                entry = mat[i][j]
                if i < tt:
                    if (order * entry) % target.torsion[i] != 0:
                        raise ValueError(
                            "torsion generator image must be killed by its order"
                        )
                elif entry != 0:
                    raise ValueError("torsion cannot map to a free generator")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "mat", mat)

    @classmethod
    def identity_on(cls, group: AbelianGroupData) -> "AbelianGroupHom":
        return cls(group, group, identity(group.generator_count))

    def compose(self, other: "AbelianGroupHom") -> "AbelianGroupHom":
        """self after other."""
        if other.target != self.source:
            raise ValueError("homomorphisms do not compose")
        if not self.mat or not other.mat:
            return AbelianGroupHom(other.source, self.target,
                                   [[0] * other.source.generator_count
                                    for _ in range(self.target.generator_count)])
        return AbelianGroupHom(other.source, self.target, matmul(self.mat, other.mat))


@dataclass(frozen=True)
class ElliottInvariant:
    """Ordered K0 with trace pairing, K1, and the trace simplex."""

    k0: K0Model
    k1: AbelianGroupData
    traces: TraceSimplex

    def __init__(self, k0: K0Model, k1: AbelianGroupData, traces: TraceSimplex):
        if k0.trace_count != traces.n:
            raise ValueError("trace pairing rows must match the trace count")
        object.__setattr__(self, "k0", k0)
        object.__setattr__(self, "k1", k1)
        object.__setattr__(self, "traces", traces)


@dataclass(frozen=True)
class InvariantMorphism:
    """(theta0, theta1, gamma) between invariants.

    gamma has one row per source trace and one column per target trace;
    each column lists convex coefficients, reading the target trace as a
    convex combination of source traces.
    """

    theta0: tuple[tuple[int, ...], ...]
    theta1: AbelianGroupHom
    gamma: tuple[tuple[Fraction, ...], ...]

    def __init__(self, theta0, theta1: AbelianGroupHom, gamma):
        object.__setattr__(self, "theta0", int_matrix(theta0))
        object.__setattr__(self, "theta1", theta1)
        object.__setattr__(self, "gamma", matrix(gamma))


def validate_invariant(inv: ElliottInvariant) -> list[str]:
    """Structural checks beyond what the constructors enforce."""
    problems = []
    if not inv.k0.cone_member(inv.k0.unit):
        problems.append("unit outside the K0 cone")
    for i, row in enumerate(inv.k0.state_matrix):
        value = sum(r * u for r, u in zip(row, inv.k0.unit))
        if value != 1:
            problems.append(f"state {i} takes value {value} on the unit")
    return problems


def validate_morphism(
    mor: InvariantMorphism, source: ElliottInvariant, target: ElliottInvariant
) -> list[str]:
    """Check shapes, unit, convexity, the state square, and cone positivity.

    Returns a list of human-readable violations; empty means valid.
    """
    problems = []
    ka, kb = source.k0.rank, target.k0.rank
    na, nb = source.traces.n, target.traces.n
    if len(mor.theta0) != kb or any(len(r) != ka for r in mor.theta0):
        problems.append("theta0 must be (target K0 rank) x (source K0 rank)")
        return problems
    if len(mor.gamma) != na or any(len(r) != nb for r in mor.gamma):
        problems.append("gamma must be (source traces) x (target traces)")
        return problems
    if mor.theta1.source != source.k1 or mor.theta1.target != target.k1:
        problems.append("theta1 endpoints do not match the invariants' K1 groups")
    for j in range(nb):
        col = [mor.gamma[i][j] for i in range(na)]
        if any(c < 0 for c in col):
            problems.append(f"gamma column {j} has a negative coefficient")
        if sum(col) != 1:
            problems.append(f"gamma column {j} does not sum to 1")
    if matvec(mor.theta0, source.k0.unit) != tuple(target.k0.unit):
        problems.append("theta0 does not send unit to unit")
    lhs = matmul(transpose(mor.gamma), source.k0.state_matrix)
    rhs = matmul(target.k0.state_matrix, mor.theta0)
    if lhs != rhs:
        problems.append("state square fails: gamma^T R_source != R_target theta0")
    # positivity on a deterministic cone sample
    samples = [tuple(source.k0.unit)]
    for i in range(ka):
        e = tuple(1 if j == i else 0 for j in range(ka))
        if source.k0.cone_member(e):
            samples.append(e)
        samples.append(tuple(u + ei for u, ei in zip(source.k0.unit, e)))
    for v in samples:
        if source.k0.cone_member(v) and not target.k0.cone_member(matvec(mor.theta0, v)):
            problems.append(f"theta0 maps cone element {v} outside the target cone")
            break
    return problems


def identity_morphism(inv: ElliottInvariant) -> InvariantMorphism:
    return InvariantMorphism(
        identity(inv.k0.rank),
        AbelianGroupHom.identity_on(inv.k1),
        identity(inv.traces.n),
    )


def compose_morphisms(
    later: InvariantMorphism, first: InvariantMorphism
) -> InvariantMorphism:
    """Composite of first: A -> B then later: B -> C."""
    return InvariantMorphism(
        matmul(later.theta0, first.theta0),
        later.theta1.compose(first.theta1),
        matmul(first.gamma, later.gamma),
    )


@dataclass(frozen=True)
class WModelMorphism:
    """Induced map of models: theta0 on projections, gamma^T on soft parts."""

    source: WModel
    target: WModel
    theta0: tuple[tuple[int, ...], ...]
    gamma: tuple[tuple[Fraction, ...], ...]

    def apply(self, x: CuntzClass) -> CuntzClass:
        self.source.validate_class(x)
        if x.is_proj:
            return CuntzClass.proj(matvec(self.theta0, x.values))
        return CuntzClass.soft(matvec(transpose(self.gamma), x.values))


def functor_g_obj(inv: ElliottInvariant) -> WModel:
    """Model of an invariant: its K0 data over its traces, finite variant."""
    problems = validate_invariant(inv)
    if problems:
        raise ValueError("; ".join(problems))
    return WModel(inv.k0, inv.traces, FINITE)


def functor_g_mor(
    mor: InvariantMorphism, source: ElliottInvariant, target: ElliottInvariant
) -> WModelMorphism:
    problems = validate_morphism(mor, source, target)
    if problems:
        raise ValueError("; ".join(problems))
    return WModelMorphism(
        functor_g_obj(source), functor_g_obj(target), mor.theta0, mor.gamma
    )


def compose_w_morphisms(later: WModelMorphism, first: WModelMorphism) -> WModelMorphism:
    if later.source != first.target:
        raise ValueError("model morphisms do not compose")
    return WModelMorphism(
        first.source,
        later.target,
        matmul(later.theta0, first.theta0),
        matmul(first.gamma, later.gamma),
    )


def apply_w_morphism(mor: WModelMorphism, x: CuntzClass) -> CuntzClass:
    return mor.apply(x)


@dataclass(frozen=True)
class AugmentedInvariant:
    """The model paired with the invariant it came from, K1 included."""

    model: WModel
    invariant: ElliottInvariant


def functor_g(inv: ElliottInvariant) -> AugmentedInvariant:
    return AugmentedInvariant(functor_g_obj(inv), inv)
