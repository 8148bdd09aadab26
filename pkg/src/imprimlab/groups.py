"""Finite matrix groups and permutation groups given by generators.

Enumeration is an explicit breadth-first closure under left multiplication,
capped so runaway inputs fail fast instead of eating memory.  The closure
doubles as the membership, containment, and solvability oracle: everything
here is checked on the full element list, never inferred structurally.

Permutations are stored 0-based and compose left to right:
(s * t)(i) = t(s(i)), matching the row-vector right action used elsewhere.
"""

from __future__ import annotations

import itertools
from functools import cached_property

import numpy as np

from .errors import (
    CapExceeded,
    OddDegree,
    ValidationError,
)
from .linalg import Matrix, is_prime

DEFAULT_CAP_ELEMENTS = 2**20


def mulclose(gens, identity, cap: int = DEFAULT_CAP_ELEMENTS):
    """Breadth-first closure of the generators, identity first.

    Returns the elements as a dict keyed by element.key in discovery order
    (dicts preserve insertion order, which keeps every downstream choice of
    "first element" deterministic).  Raises CapExceeded as soon as the
    closure outgrows the cap.
    """
    elems = {identity.key: identity}
    frontier = [identity]
    while frontier:
        new = []
        for a in frontier:
            for g in gens:
                b = g * a
                if b.key not in elems:
                    elems[b.key] = b
                    if len(elems) > cap:
                        raise CapExceeded(cap)
                    new.append(b)
        frontier = new
    return elems


class MatrixGroup:
    """A subgroup of GL_n(p) given by invertible generators."""

    def __init__(self, gens, cap: int = DEFAULT_CAP_ELEMENTS):
        gens = list(gens)
        if not gens:
            raise ValidationError("a matrix group needs at least one generator")
        p, n = gens[0].p, gens[0].rows
        for g in gens:
            if g.p != p or g.rows != n or g.cols != n:
                raise ValidationError("generators must share modulus and degree")
            if not g.is_invertible():
                raise ValidationError("generators must be invertible")
        self.gens = tuple(gens)
        self.p = p
        self.n = n
        self.cap = cap

    @property
    def identity(self) -> Matrix:
        return Matrix.identity(self.n, self.p)

    @cached_property
    def _element_map(self):
        return mulclose(self.gens, self.identity, self.cap)

    @property
    def elements(self) -> tuple[Matrix, ...]:
        return tuple(self._element_map.values())

    @property
    def element_keys(self):
        return self._element_map.keys()

    @property
    def order(self) -> int:
        return len(self._element_map)

    def contains(self, m: Matrix) -> bool:
        if m.p != self.p or m.rows != self.n or m.cols != self.n:
            raise ValidationError("element has the wrong modulus or degree")
        return m.key in self._element_map

    def is_subgroup_of(self, other: "MatrixGroup") -> bool:
        """True iff every generator of self lies in other's element set."""
        if self.p != other.p or self.n != other.n:
            return False
        return all(other.contains(g) for g in self.gens)

    def derived_subgroup(self) -> "MatrixGroup":
        comms = _commutator_generators(self.elements, self.p)
        return MatrixGroup(comms, cap=self.cap) if comms else MatrixGroup(
            [self.identity], cap=self.cap
        )

    def derived_series_orders(self) -> list[int]:
        """Orders along the derived series, computed until stabilization."""
        orders = [self.order]
        current = self
        while True:
            nxt = current.derived_subgroup()
            if nxt.order == current.order:
                break
            orders.append(nxt.order)
            current = nxt
            if current.order == 1:
                break
        return orders

    def is_solvable(self) -> bool:
        return self.derived_series_orders()[-1] == 1

    def __repr__(self):
        return f"MatrixGroup(degree={self.n}, p={self.p}, gens={len(self.gens)})"


def _commutator_generators(elements, p):
    """Distinct commutators a^-1 b^-1 a b over all element pairs.

    Batched in numpy: for each a we form a^-1 @ B^-1 @ a @ B for the whole
    stacked element array at once, then deduplicate by raw bytes.
    """
    elems = list(elements)
    n = elems[0].rows
    stack = np.stack([e.a for e in elems])
    inv_stack = np.stack([e.inv().a for e in elems])
    seen = {}
    for a, ainv in zip(stack, inv_stack):
        t = (ainv[None] @ inv_stack) % p
        t = (t @ a[None]) % p
        t = np.matmul(t, stack) % p
        for row in t:
            key = row.tobytes()
            if key not in seen:
                seen[key] = row
    identity_key = np.eye(n, dtype=np.int64).tobytes()
    seen.pop(identity_key, None)
    return [Matrix(m, p) for m in seen.values()]


def enumerate_group(gens, cap: int = DEFAULT_CAP_ELEMENTS):
    """Closure of matrix generators; returns (elements tuple, order)."""
    g = MatrixGroup(gens, cap=cap)
    return g.elements, g.order


def group_contains(g: MatrixGroup, m: Matrix) -> bool:
    return g.contains(m)


def is_subgroup(g1: MatrixGroup, g2: MatrixGroup) -> bool:
    return g1.is_subgroup_of(g2)


def is_solvable(g: MatrixGroup) -> bool:
    return g.is_solvable()


def primitive_root(p: int) -> int:
    """Smallest primitive root mod p."""
    if not is_prime(p):
        raise ValidationError(f"{p} is not prime")
    if p == 2:
        return 1
    for g in range(2, p):
        x, order = g, 1
        while x != 1:
            x = x * g % p
            order += 1
        if order == p - 1:
            return g
    raise ValidationError(f"no primitive root found mod {p}")


def general_linear_group(n: int, p: int, cap: int = DEFAULT_CAP_ELEMENTS) -> MatrixGroup:
    """GL_n(p) from a diagonal unit, a coordinate cycle, and a transvection."""
    zeta = primitive_root(p)
    diag = np.eye(n, dtype=np.int64)
    diag[0, 0] = zeta
    gens = [Matrix(diag, p)]
    if n > 1:
        cycle = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            cycle[i, (i + 1) % n] = 1
        trans = np.eye(n, dtype=np.int64)
        trans[0, 1] = 1
        gens += [Matrix(cycle, p), Matrix(trans, p)]
    return MatrixGroup(gens, cap=cap)


def general_linear_order(n: int, q: int) -> int:
    order = 1
    for i in range(n):
        order *= q**n - q**i
    return order


class Permutation:
    """A permutation of {0..k-1}; composition is left to right."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise ValidationError(f"{images} is not a permutation of 0..{len(images)-1}")
        self.images = images

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(degree))

    @classmethod
    def from_one_based(cls, images) -> "Permutation":
        return cls([i - 1 for i in images])

    @property
    def degree(self) -> int:
        return len(self.images)

    @property
    def key(self):
        return self.images

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.degree != other.degree:
            raise ValidationError("degrees differ")
        return Permutation(tuple(other.images[i] for i in self.images))

    def inv(self) -> "Permutation":
        out = [0] * self.degree
        for i, j in enumerate(self.images):
            out[j] = i
        return Permutation(out)

    def relabel(self, sigma: "Permutation") -> "Permutation":
        """Conjugate by a point relabeling: new(sigma(i)) = sigma(self(i))."""
        out = [0] * self.degree
        for i in range(self.degree):
            out[sigma.images[i]] = sigma.images[self.images[i]]
        return Permutation(out)

    def one_based(self) -> list[int]:
        return [i + 1 for i in self.images]

    def __hash__(self):
        return hash(self.images)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __repr__(self):
        return f"Permutation({list(self.images)})"


class PermGroup:
    """A permutation group on {0..k-1} given by generators."""

    def __init__(self, gens, cap: int = DEFAULT_CAP_ELEMENTS):
        gens = list(gens)
        if not gens:
            raise ValidationError("a permutation group needs at least one generator")
        degree = gens[0].degree
        if any(g.degree != degree for g in gens):
            raise ValidationError("generators must share degree")
        self.gens = tuple(gens)
        self.degree = degree
        self.cap = cap

    @cached_property
    def _element_map(self):
        return mulclose(self.gens, Permutation.identity(self.degree), self.cap)

    @property
    def elements(self) -> tuple[Permutation, ...]:
        return tuple(self._element_map.values())

    @property
    def order(self) -> int:
        return len(self._element_map)

    def contains(self, perm: Permutation) -> bool:
        return perm.degree == self.degree and perm.key in self._element_map

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        if self.degree != other.degree:
            return False
        return all(other.contains(g) for g in self.gens)

    def orbit(self, point: int) -> set[int]:
        seen = {point}
        frontier = [point]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.gens:
                    y = g(x)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return seen

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree

    def block_systems(self, block_size: int) -> list["BlockSystem"]:
        return block_systems(self, block_size)

    def has_pair_partition(self) -> bool:
        return has_pair_partition(self)

    def setwise_stabilizer(self, block) -> list[Permutation]:
        """All elements mapping the block to itself as a set."""
        block = frozenset(block)
        return [
            g for g in self.elements if frozenset(g(i) for i in block) == block
        ]

    def block_action(self, partition: "BlockSystem") -> "PermGroup":
        """Induced action of the generators on the sorted blocks."""
        blocks = partition.blocks
        index = {b: i for i, b in enumerate(blocks)}
        gens = []
        for g in self.gens:
            images = [index[_image_block(g, b, blocks)] for b in blocks]
            gens.append(Permutation(images))
        return PermGroup(_dedupe(gens) or [Permutation.identity(len(blocks))], cap=self.cap)

    def stabilizer_block_action(self, block) -> "PermGroup":
        """Action of the setwise stabilizer of a block on that block."""
        pts = sorted(block)
        pos = {x: i for i, x in enumerate(pts)}
        gens = []
        for g in self.setwise_stabilizer(block):
            gens.append(Permutation([pos[g(x)] for x in pts]))
        return PermGroup(_dedupe(gens) or [Permutation.identity(len(pts))], cap=self.cap)

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, gens={len(self.gens)})"


def _dedupe(perms):
    seen = {}
    for g in perms:
        seen.setdefault(g.key, g)
    return list(seen.values())


def _image_block(g: Permutation, block, blocks):
    member = g(block[0])
    for b in blocks:
        if member in b:
            return b
    raise ValidationError("generator does not permute the blocks")


class BlockSystem:
    """A partition of {0..k-1} into equal-size blocks, canonically sorted."""

    __slots__ = ("degree", "blocks", "block_size")

    def __init__(self, blocks, degree: int):
        blocks = tuple(sorted(tuple(sorted(b)) for b in blocks))
        covered = [x for b in blocks for x in b]
        if sorted(covered) != list(range(degree)):
            raise ValidationError("blocks must partition the point set")
        sizes = {len(b) for b in blocks}
        if len(sizes) != 1:
            raise ValidationError("blocks must have equal size")
        self.degree = degree
        self.blocks = blocks
        self.block_size = len(blocks[0])

    @property
    def count(self) -> int:
        return len(self.blocks)

    def preserved_by(self, g: Permutation) -> bool:
        block_set = set(self.blocks)
        return all(
            tuple(sorted(g(x) for x in b)) in block_set for b in self.blocks
        )

    def one_based(self) -> list[list[int]]:
        return [[x + 1 for x in b] for b in self.blocks]

    def __eq__(self, other):
        return isinstance(other, BlockSystem) and self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __lt__(self, other):
        return self.blocks < other.blocks

    def __repr__(self):
        return f"BlockSystem({[list(b) for b in self.blocks]})"


def _equal_partitions(points, block_size):
    """All partitions of the points into blocks of the given size."""
    points = list(points)
    if not points:
        yield []
        return
    first, rest = points[0], points[1:]
    for companions in itertools.combinations(rest, block_size - 1):
        block = (first,) + companions
        remaining = [x for x in rest if x not in companions]
        for tail in _equal_partitions(remaining, block_size):
            yield [block] + tail


def _block_systems_exhaustive(group: PermGroup, block_size: int) -> list[BlockSystem]:
    out = []
    for blocks in _equal_partitions(range(group.degree), block_size):
        system = BlockSystem(blocks, group.degree)
        if all(system.preserved_by(g) for g in group.gens):
            out.append(system)
    return sorted(out)


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        self.parent[ry] = rx
        return True

    def partition(self, degree):
        classes = {}
        for x in range(degree):
            classes.setdefault(self.find(x), []).append(x)
        return tuple(sorted(tuple(c) for c in classes.values()))


def _minimal_congruence(group: PermGroup, a: int, b: int):
    """Finest generator-invariant partition merging a and b (Atkinson)."""
    uf = _UnionFind(group.degree)
    uf.union(a, b)
    queue = [(a, b)]
    while queue:
        x, y = queue.pop()
        for g in group.gens:
            gx, gy = g(x), g(y)
            if uf.union(gx, gy):
                queue.append((gx, gy))
    return uf.partition(group.degree)


def _join_partitions(p1, p2, degree):
    uf = _UnionFind(degree)
    for part in itertools.chain(p1, p2):
        for x in part[1:]:
            uf.union(part[0], x)
    return uf.partition(degree)


def _block_systems_seeded(group: PermGroup, block_size: int) -> list[BlockSystem]:
    """Pair-seeded minimal congruences closed under joins, then filtered.

    For a transitive group every invariant partition is a join of the
    partitions generated by merging point 0 with another point, so the join
    closure of those seeds is the complete congruence lattice.
    """
    seeds = set()
    for j in range(1, group.degree):
        seeds.add(_minimal_congruence(group, 0, j))
    closure = set(seeds)
    frontier = set(seeds)
    while frontier:
        new = set()
        for a in frontier:
            for b in closure:
                joined = _join_partitions(a, b, group.degree)
                if joined not in closure:
                    new.add(joined)
        closure |= new
        frontier = new
    out = []
    for partition in closure:
        sizes = {len(b) for b in partition}
        if sizes == {block_size}:
            out.append(BlockSystem(partition, group.degree))
    return sorted(out)


EXHAUSTIVE_BLOCK_DEGREE = 12


def block_systems(group: PermGroup, block_size: int) -> list[BlockSystem]:
    """All equal-size block systems of the group with the given block size.

    Exhausts every partition for degree <= 12 (the brute-force oracle) and
    switches to pair-seeded congruence closure above that; the seeded route
    requires transitivity, so intransitive large-degree inputs fall back to
    exhaustion.
    """
    k = group.degree
    if block_size < 1 or k % block_size != 0:
        raise ValidationError(
            f"block size {block_size} does not divide degree {k}"
        )
    if block_size == 1:
        return [BlockSystem([(i,) for i in range(k)], k)]
    if block_size == k:
        return [BlockSystem([tuple(range(k))], k)]
    if k <= EXHAUSTIVE_BLOCK_DEGREE or not group.is_transitive():
        return _block_systems_exhaustive(group, block_size)
    return _block_systems_seeded(group, block_size)


def has_pair_partition(group: PermGroup) -> bool:
    """True iff the points admit an invariant partition into pairs."""
    if group.degree % 2 != 0:
        raise OddDegree(f"degree {group.degree} is odd")
    return bool(block_systems(group, 2))


def perm_is_transitive(group: PermGroup) -> bool:
    return group.is_transitive()


def cyclic_group(k: int) -> PermGroup:
    return PermGroup([Permutation([(i + 1) % k for i in range(k)])])


def symmetric_group(k: int) -> PermGroup:
    if k == 1:
        return PermGroup([Permutation.identity(1)])
    swap = list(range(k))
    swap[0], swap[1] = 1, 0
    cycle = [(i + 1) % k for i in range(k)]
    return PermGroup([Permutation(swap), Permutation(cycle)])


def perm_wreath(x: PermGroup, y: PermGroup, cap: int = DEFAULT_CAP_ELEMENTS) -> PermGroup:
    """Imprimitive wreath action on x.degree * y.degree points.

    Points are grouped into consecutive blocks of size x.degree; the x
    generators act inside each block and the y generators permute blocks.
    """
    s, ell = x.degree, y.degree
    degree = s * ell
    gens = []
    for g in x.gens:
        for j in range(ell):
            images = list(range(degree))
            for t in range(s):
                images[j * s + t] = j * s + g(t)
            gens.append(Permutation(images))
    for g in y.gens:
        images = [g(i // s) * s + (i % s) for i in range(degree)]
        gens.append(Permutation(images))
    return PermGroup(_dedupe(gens), cap=cap)
