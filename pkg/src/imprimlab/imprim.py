"""Systems of imprimitivity: enumeration, refinement order, nonrefinability.

all_systems is the exhaustive oracle of the package: for every divisor d of
n it walks every d-dimensional subspace, computes its orbit under the
generators, and keeps the orbits that partition the space into a direct
sum.  Orbits of a transitive part action are exactly the systems, so each
subspace is visited once and deduplication is automatic.

Nonrefinability is decided by two independent routes: brute force (no other
enumerated system properly refines it) and the stabilizer criterion (the
setwise stabilizer of a part acts irreducibly and primitively on it).
"""

from __future__ import annotations

import numpy as np

from .errors import (
    AmbientMismatch,
    EnumerationCapExceeded,
    NotTransitiveOnParts,
    ValidationError,
)
from .groups import MatrixGroup
from .linalg import (
    Matrix,
    Subspace,
    all_subspaces,
    direct_sum_check,
    divisors,
    gaussian_binomial,
)
from .reprs import is_primitive_linear, restrict_to_block

DEFAULT_CAP_SUBSPACES = 10**6


class ImprimitivitySystem:
    """A direct-sum decomposition whose summand set a group permutes.

    Parts are stored sorted in the canonical subspace order, so system
    equality is set equality of the parts.
    """

    __slots__ = ("ambient", "p", "parts", "_key")

    def __init__(self, parts):
        parts = sorted(parts)
        if len(parts) < 2:
            raise ValidationError("a system needs at least two parts")
        ambient, p = parts[0].ambient, parts[0].p
        for w in parts:
            if w.ambient != ambient or w.p != p:
                raise AmbientMismatch("parts live in different ambient spaces")
        if len({w.key for w in parts}) != len(parts):
            raise ValidationError("parts must be pairwise distinct")
        if not direct_sum_check(parts):
            raise ValidationError("parts do not decompose the full space")
        self.ambient = ambient
        self.p = p
        self.parts = tuple(parts)
        self._key = tuple(w.key for w in parts)

    @property
    def component_count(self) -> int:
        return len(self.parts)

    @property
    def component_dim(self):
        dims = {w.rank for w in self.parts}
        return dims.pop() if len(dims) == 1 else None

    @property
    def key(self):
        return self._key

    def __eq__(self, other):
        return (
            isinstance(other, ImprimitivitySystem)
            and self.p == other.p
            and self.ambient == other.ambient
            and self._key == other._key
        )

    def __hash__(self):
        return hash((self.p, self.ambient, self._key))

    def __lt__(self, other):
        return (self.component_count, self._key) < (
            other.component_count,
            other._key,
        )

    def to_rows(self) -> list[list[list[int]]]:
        return [w.basis.tolist() for w in self.parts]

    def __repr__(self):
        return (
            f"ImprimitivitySystem({self.component_count} parts, "
            f"dim={self.component_dim}, ambient={self.ambient}, p={self.p})"
        )


def subspace_orbit(g: MatrixGroup, w: Subspace) -> list[Subspace]:
    """Closure of {w} under the generator action, in discovery order."""
    seen = {w.key: w}
    frontier = [w]
    while frontier:
        new = []
        for s in frontier:
            for gen in g.gens:
                t = s.apply(gen)
                if t.key not in seen:
                    seen[t.key] = t
                    new.append(t)
        frontier = new
    return list(seen.values())


def is_system(g: MatrixGroup, parts) -> bool:
    """True iff the parts decompose V and every generator permutes them."""
    parts = list(parts)
    if not parts:
        raise ValidationError("no parts given")
    for w in parts:
        if w.ambient != g.n or w.p != g.p:
            raise AmbientMismatch("parts do not match the group's space")
    if len(parts) < 2:
        return False
    if not direct_sum_check(parts):
        return False
    part_keys = {w.key for w in parts}
    if len(part_keys) != len(parts):
        return False
    for gen in g.gens:
        if {w.apply(gen).key for w in parts} != part_keys:
            return False
    return True


def all_systems(g: MatrixGroup, cap_subspaces: int = DEFAULT_CAP_SUBSPACES,
                stats: dict | None = None) -> list[ImprimitivitySystem]:
    """Every system of imprimitivity of g whose parts form a single orbit.

    For irreducible g the part action of any system is transitive, so this
    is the complete list.  Fails fast with EnumerationCapExceeded when some
    candidate dimension has too many subspaces to scan.
    """
    n = g.n
    candidate_dims = [d for d in divisors(n) if d < n]
    for d in candidate_dims:
        count = gaussian_binomial(n, d, g.p)
        if count > cap_subspaces:
            raise EnumerationCapExceeded(d, count)
    scanned = 0
    systems = []
    for d in candidate_dims:
        target = n // d
        visited = set()
        for w in all_subspaces(n, d, g.p):
            scanned += 1
            if w.key in visited:
                continue
            orbit = subspace_orbit(g, w)
            visited.update(s.key for s in orbit)
            if len(orbit) == target and direct_sum_check(orbit):
                systems.append(ImprimitivitySystem(orbit))
    if stats is not None:
        stats["subspaces_scanned"] = stats.get("subspaces_scanned", 0) + scanned
        stats["systems_found"] = len(systems)
    return sorted(systems)


def is_refinement(delta: ImprimitivitySystem, gamma: ImprimitivitySystem) -> bool:
    """True iff every part of gamma is the direct sum of parts of delta."""
    if delta.ambient != gamma.ambient or delta.p != gamma.p:
        raise AmbientMismatch("systems live in different ambient spaces")
    used = 0
    for w in gamma.parts:
        inside = [z for z in delta.parts if w.contains(z)]
        if sum(z.rank for z in inside) != w.rank:
            return False
        used += len(inside)
    return used == delta.component_count


def nonrefinable_systems(g: MatrixGroup, cap_subspaces: int = DEFAULT_CAP_SUBSPACES,
                         stats: dict | None = None) -> list[ImprimitivitySystem]:
    """Systems admitting no proper refinement among all enumerated systems."""
    systems = all_systems(g, cap_subspaces=cap_subspaces, stats=stats)
    out = []
    for gamma in systems:
        if not any(
            delta != gamma and is_refinement(delta, gamma) for delta in systems
        ):
            out.append(gamma)
    return out


def part_stabilizer_elements(g: MatrixGroup, w: Subspace) -> list[Matrix]:
    """All group elements fixing w setwise, from the full enumeration."""
    return [
        e for e in g.elements if w.contains_rows((w.basis @ e.a) % g.p)
    ]


def nonrefinable_via_stabilizer(g: MatrixGroup, gamma: ImprimitivitySystem) -> bool:
    """Stabilizer criterion: the part stabilizer acts primitively on a part.

    Requires the group to act transitively on the parts; rejects systems
    with several part orbits rather than guessing a convention for them.
    """
    part_keys = {w.key for w in gamma.parts}
    orbit = subspace_orbit(g, gamma.parts[0])
    if {s.key for s in orbit} != part_keys:
        raise NotTransitiveOnParts("the parts fall into several orbits")
    w1 = gamma.parts[0]
    stab = part_stabilizer_elements(g, w1)
    restriction = restrict_to_block(stab, w1)
    return is_primitive_linear(restriction)


def coordinate_system(n: int, d: int, p: int) -> ImprimitivitySystem:
    """The standard decomposition into consecutive d-coordinate blocks."""
    if n % d != 0 or n // d < 2:
        raise ValidationError(f"{d} does not split dimension {n} into blocks")
    eye = np.eye(n, dtype=np.int64)
    parts = [
        Subspace.span(eye[i * d : (i + 1) * d], n, p) for i in range(n // d)
    ]
    return ImprimitivitySystem(parts)
