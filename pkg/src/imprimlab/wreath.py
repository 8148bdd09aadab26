"""Wreath products H wr K as explicit matrix groups, and the exceptional
census of their line systems.

The base-group generators are embedded at every block position, so the
closure is exactly H^k extended by the block permutations of K; the order
|H|^k * |K| then certifies the construction.  In the exceptional shape
(1-dimensional blocks, |H| = 2, even degree, K preserving a pair partition)
the nonrefinable systems are classified by the invariant pair partitions of
K together with a scalar whose square is +-1; expected_exceptional_systems
builds that census explicitly so an exhaustive scan can be checked against
it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import HypothesisViolation, NotExceptional
from .groups import (
    DEFAULT_CAP_ELEMENTS,
    BlockSystem,
    MatrixGroup,
    PermGroup,
    Permutation,
    block_systems,
    has_pair_partition,
)
from .imprim import ImprimitivitySystem, coordinate_system
from .linalg import Matrix, Subspace
from .reprs import is_irreducible, is_primitive_linear


@dataclass(frozen=True)
class WreathSpec:
    """Block group h of degree d and point group k on k points; n = d*k."""

    h: MatrixGroup
    k: PermGroup

    @property
    def block_dim(self) -> int:
        return self.h.n

    @property
    def block_count(self) -> int:
        return self.k.degree

    @property
    def degree(self) -> int:
        return self.h.n * self.k.degree

    @property
    def p(self) -> int:
        return self.h.p


def block_permutation_matrix(perm: Permutation, d: int, p: int) -> Matrix:
    """Matrix sending block-coordinate slot i to slot perm(i), row action."""
    k = perm.degree
    n = d * k
    out = np.zeros((n, n), dtype=np.int64)
    for i in range(k):
        j = perm(i)
        for s in range(d):
            out[i * d + s, j * d + s] = 1
    return Matrix(out, p)


def embed_at_block(m: Matrix, block: int, count: int) -> Matrix:
    n = m.rows * count
    out = np.eye(n, dtype=np.int64)
    lo = block * m.rows
    hi = lo + m.rows
    out[lo:hi, lo:hi] = m.a
    return Matrix(out, m.p)


def wreath_product(spec: WreathSpec, cap: int = DEFAULT_CAP_ELEMENTS) -> MatrixGroup:
    """H wr K as a matrix group of degree d*k over GF(p)."""
    d, k = spec.block_dim, spec.block_count
    gens = []
    for i in range(k):
        for a in spec.h.gens:
            gens.append(embed_at_block(a, i, k))
    for perm in spec.k.gens:
        gens.append(block_permutation_matrix(perm, d, spec.p))
    return MatrixGroup(gens, cap=cap)


def check_hypotheses(spec: WreathSpec):
    """Validate the uniqueness-statement hypotheses, naming any failure."""
    if spec.block_count < 2:
        raise HypothesisViolation("k > 1")
    if spec.h.order < 2:
        raise HypothesisViolation("H nontrivial")
    if not is_irreducible(spec.h):
        raise HypothesisViolation("H irreducible")
    if not is_primitive_linear(spec.h):
        raise HypothesisViolation("H primitive")
    if not spec.k.is_transitive():
        raise HypothesisViolation("K transitive")


def is_exceptional(spec: WreathSpec) -> bool:
    """d = 1, even point degree, |H| = 2, and K preserves a pair partition."""
    check_hypotheses(spec)
    if spec.block_dim != 1:
        return False
    if spec.block_count % 2 != 0:
        return False
    if spec.h.order != 2:
        return False
    return has_pair_partition(spec.k)


@dataclass
class ExceptionalCensus:
    """Predicted nonrefinable line systems of an exceptional wreath product."""

    p: int
    pair_systems: list[BlockSystem]
    lambdas: list[int]
    systems: list[ImprimitivitySystem] = field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.systems)


def _lambda_classes(p: int) -> list[int]:
    """Scalars with square +-1, one per {x, -x} class, smallest member."""
    out = [1]
    if p % 4 == 1:
        root = next(x for x in range(2, p) if x * x % p == p - 1)
        out.append(min(root, p - root))
    return out


def expected_exceptional_systems(spec: WreathSpec) -> ExceptionalCensus:
    """Standard line system plus one system per (pair partition, scalar).

    For a pair partition {{a,b}, ...} and a scalar s with s^2 = +-1 the
    system has parts <e_a + s e_b> and <e_a - s e_b> for every pair; s and
    -s give the same system, so one representative per class is used and
    the result is deduplicated defensively.
    """
    if not is_exceptional(spec):
        raise NotExceptional("instance is not in the exceptional shape")
    n, p = spec.degree, spec.p
    pair_systems = block_systems(spec.k, 2)
    lambdas = _lambda_classes(p)
    eye = np.eye(n, dtype=np.int64)
    found = {}
    standard = coordinate_system(n, 1, p)
    found[standard.key] = standard
    for partition in pair_systems:
        for lam in lambdas:
            parts = []
            for a, b in partition.blocks:
                plus = (eye[a] + lam * eye[b]) % p
                minus = (eye[a] - lam * eye[b]) % p
                parts.append(Subspace.span([plus], n, p))
                parts.append(Subspace.span([minus], n, p))
            system = ImprimitivitySystem(parts)
            found.setdefault(system.key, system)
    return ExceptionalCensus(
        p=p,
        pair_systems=pair_systems,
        lambdas=lambdas,
        systems=sorted(found.values()),
    )
