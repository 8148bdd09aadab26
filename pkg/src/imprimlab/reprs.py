"""Representation-theoretic operations on matrix groups.

Irreducibility is decided by spinning: a group is irreducible iff every
nonzero vector generates the full space, and it suffices to spin one
representative per 1-dimensional subspace.  Induced modules are built from
a linear character of a subgroup via an explicit coset table; the images
are monomial matrices over the (possibly different) target field.
"""

from __future__ import annotations

import itertools

import numpy as np

from .errors import (
    InconsistentCharacter,
    LengthMismatch,
    NotASubgroup,
    NotStabilized,
    ValidationError,
    ZeroVector,
)
from .groups import DEFAULT_CAP_ELEMENTS, MatrixGroup
from .linalg import Matrix, Subspace, all_subspaces, rref


def spin(g: MatrixGroup, v) -> Subspace:
    """Smallest g-invariant subspace containing the vector v."""
    v = np.asarray(v, dtype=np.int64) % g.p
    if not v.any():
        raise ZeroVector("cannot spin the zero vector")
    sub = Subspace.span([v], g.n, g.p)
    changed = True
    while changed and sub.rank < g.n:
        changed = False
        for gen in g.gens:
            images = (sub.basis @ gen.a) % g.p
            fresh = [row for row in images if not sub.contains_vector(row)]
            if fresh:
                sub = Subspace.span(
                    np.concatenate([sub.basis, np.array(fresh)]), g.n, g.p
                )
                changed = True
    return sub


def projective_representatives(n: int, p: int):
    """One vector per line of GF(p)^n: first nonzero coordinate 1, lex order."""
    for lead in range(n):
        tail = n - lead - 1
        for rest in itertools.product(range(p), repeat=tail):
            vec = np.zeros(n, dtype=np.int64)
            vec[lead] = 1
            vec[lead + 1 :] = rest
            yield vec


def is_irreducible(g: MatrixGroup) -> bool:
    """True iff no proper nonzero subspace is invariant under g."""
    for v in projective_representatives(g.n, g.p):
        if spin(g, v).rank < g.n:
            return False
    return True


def is_primitive_linear(g: MatrixGroup) -> bool:
    """Irreducible with no system of imprimitivity (degree 1 is primitive)."""
    if not is_irreducible(g):
        return False
    from .imprim import all_systems  # deferred: imprim imports this module

    return not all_systems(g)


def hom_dimension(gens_a, gens_b, p: int) -> int:
    """Dimension of the space of matrices intertwining two matched actions.

    The generator lists describe the same abstract generators in two
    representations; counts X with a_i @ X = X @ b_i for every i, via the
    kernel of the stacked row-major linear system.
    """
    gens_a, gens_b = list(gens_a), list(gens_b)
    if len(gens_a) != len(gens_b):
        raise LengthMismatch("generator lists must be matched")
    na = gens_a[0].rows
    nb = gens_b[0].rows
    blocks = []
    for a, b in zip(gens_a, gens_b):
        # row-major vec: vec(A X) = (A kron I) x, vec(X B) = (I kron B^T) x
        left = np.kron(a.a, np.eye(nb, dtype=np.int64))
        right = np.kron(np.eye(na, dtype=np.int64), b.a.T)
        blocks.append((left - right) % p)
    stacked = np.concatenate(blocks)
    rank = rref(stacked, p)[1]
    return na * nb - rank


class Character:
    """A multiplicative character of a matrix group into GF(q)^x.

    Values are assigned on the generators and extended along the Cayley
    graph; every (element, generator) edge is checked, so construction
    fails with InconsistentCharacter unless the extension is well defined.
    """

    def __init__(self, group: MatrixGroup, values, modulus: int):
        values = [int(v) % modulus for v in values]
        if len(values) != len(group.gens):
            raise LengthMismatch("one value per generator required")
        if any(v == 0 for v in values):
            raise ValidationError("character values must be nonzero units")
        self.group = group
        self.values = tuple(values)
        self.modulus = modulus
        self._table = self._extend()

    def _extend(self):
        identity = self.group.identity
        table = {identity.key: 1}
        frontier = [identity]
        gen_values = list(zip(self.group.gens, self.values))
        while frontier:
            new = []
            for a in frontier:
                va = table[a.key]
                for g, vg in gen_values:
                    b = g * a
                    vb = vg * va % self.modulus
                    known = table.get(b.key)
                    if known is None:
                        table[b.key] = vb
                        new.append(b)
                    elif known != vb:
                        raise InconsistentCharacter(
                            "generator values do not extend to the group"
                        )
            frontier = new
        return table

    def __call__(self, element: Matrix) -> int:
        value = self._table.get(element.key)
        if value is None:
            raise ValidationError("element is not in the character's group")
        return value


class InducedRep:
    """A monomial representation induced from a linear subgroup character.

    Coset representatives are taken in enumeration order with the identity
    first; image(x) is defined for every element of the ambient group, and
    the generator images are packaged as a MatrixGroup over the target
    field.
    """

    def __init__(self, source: MatrixGroup, subgroup: MatrixGroup, character: Character,
                 cap: int = DEFAULT_CAP_ELEMENTS):
        if character.group is not subgroup:
            raise ValidationError("character must be defined on the subgroup")
        if subgroup.p != source.p or subgroup.n != source.n:
            raise NotASubgroup("subgroup lives in a different ambient group")
        for e in subgroup.elements:
            if not source.contains(e):
                raise NotASubgroup("subgroup element outside the ambient group")
        self.source = source
        self.subgroup = subgroup
        self.character = character
        self.modulus = character.modulus
        self.reps, self._coset_index = self._coset_table()
        self.degree = len(self.reps)
        self._rep_invs = [t.inv() for t in self.reps]
        images = [self.image(g) for g in source.gens]
        self.group = MatrixGroup(images, cap=cap)
        self._check_homomorphism()

    def _coset_table(self):
        sub_elems = self.subgroup.elements
        reps = []
        index = {}
        for x in self.source.elements:
            if x.key in index:
                continue
            j = len(reps)
            reps.append(x)
            for kappa in sub_elems:
                index[(kappa * x).key] = j
        if len(reps) * self.subgroup.order != self.source.order:
            raise NotASubgroup("cosets do not partition the ambient group")
        return reps, index

    def image(self, x: Matrix) -> Matrix:
        """Monomial image of any ambient element over the target field."""
        m = self.degree
        out = np.zeros((m, m), dtype=np.int64)
        for i, t in enumerate(self.reps):
            u = t * x
            j = self._coset_index.get(u.key)
            if j is None:
                raise ValidationError("element is not in the ambient group")
            out[i, j] = self.character(u * self._rep_invs[j])
        return Matrix(out, self.modulus)

    def _check_homomorphism(self):
        for a, b in itertools.product(self.source.gens, repeat=2):
            if self.image(a) * self.image(b) != self.image(a * b):
                raise InconsistentCharacter("induced map is not a homomorphism")


def induced_module(source: MatrixGroup, subgroup: MatrixGroup, character: Character,
                   cap: int = DEFAULT_CAP_ELEMENTS) -> InducedRep:
    return InducedRep(source, subgroup, character, cap=cap)


def is_monomial(m: Matrix) -> bool:
    nz = m.a != 0
    return bool((nz.sum(axis=0) == 1).all() and (nz.sum(axis=1) == 1).all())


def restrict_matrix(g: Matrix, w: Subspace) -> Matrix:
    """The action of one stabilizing matrix on w, in w's echelon coordinates."""
    images = (w.basis @ g.a) % w.p
    if not w.contains_rows(images):
        raise NotStabilized("the matrix moves the subspace")
    # RREF coordinates of a member are its pivot-column entries
    return Matrix(images[:, list(w.pivots)], w.p)


def restrict_to_block(stab_gens, w: Subspace) -> MatrixGroup:
    """Action of stabilizing generators on w, as a rank(w)-degree group."""
    deduped = {}
    for g in stab_gens:
        m = restrict_matrix(g, w)
        deduped.setdefault(m.key, m)
    return MatrixGroup(list(deduped.values()))


def invariant_subspaces(gens, n: int, p: int, dims=None) -> list[Subspace]:
    """All proper nonzero invariant subspaces, by exhaustive scan.

    dims restricts the scan to the given dimensions; default is 1..n-1.
    """
    gens = list(gens)
    if dims is None:
        dims = range(1, n)
    found = []
    for d in dims:
        for sub in all_subspaces(n, d, p):
            if all(sub.contains_rows((sub.basis @ g.a) % p) for g in gens):
                found.append(sub)
    return found
