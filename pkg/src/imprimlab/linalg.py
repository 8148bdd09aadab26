"""Exact linear algebra over prime fields GF(p).

Conventions used by the whole package:

  * scalars are plain Python ints fully reduced into [0, p);
  * vectors are rows and groups act on the right (v -> v @ g);
  * a subspace is identified with the unique reduced row echelon basis of
    its row space, which makes subspace equality an entrywise comparison.

Matrices are small dense numpy int64 arrays.  Intermediate products must fit
in 64 bits, so construction rejects moduli where n * (p-1)^2 would overflow;
in practice every instance here has p < 100.
"""

from __future__ import annotations

import itertools

import numpy as np

from .errors import (
    AmbientMismatch,
    ModulusMismatch,
    ShapeMismatch,
    Singular,
    ValidationError,
    ZeroInverse,
)

MAX_MODULUS = 2**31 - 1


_PRIME_CACHE: dict[int, bool] = {}


def is_prime(n: int) -> bool:
    cached = _PRIME_CACHE.get(n)
    if cached is not None:
        return cached
    if n < 2:
        result = False
    elif n % 2 == 0:
        result = n == 2
    else:
        result = True
        d = 3
        while d * d <= n:
            if n % d == 0:
                result = False
                break
            d += 2
    _PRIME_CACHE[n] = result
    return result


def ff_inv(a: int, p: int) -> int:
    """Multiplicative inverse of a mod p (p prime)."""
    a %= p
    if a == 0:
        raise ZeroInverse(f"0 has no inverse mod {p}")
    return pow(a, p - 2, p)


def _check_modulus(p: int) -> int:
    p = int(p)
    if not is_prime(p):
        raise ValidationError(f"modulus {p} is not prime")
    if p > MAX_MODULUS:
        raise ValidationError(f"modulus {p} exceeds 2^31 - 1")
    return p


def rref(a: np.ndarray, p: int) -> tuple[np.ndarray, int, tuple[int, ...]]:
    """Reduced row echelon form over GF(p).

    Returns (R, rank, pivot_columns).  R is a fresh array with pivot entries
    1, pivots the only nonzero entries in their columns, and pivot columns
    strictly increasing; zero rows sink to the bottom.  The result is the
    unique RREF of the row space, hence idempotent and constant on
    row-equivalent inputs.
    """
    a = np.array(a, dtype=np.int64) % p
    m, n = a.shape
    row = 0
    pivots = []
    for col in range(n):
        if row >= m:
            break
        hit = None
        for r in range(row, m):
            if a[r, col]:
                hit = r
                break
        if hit is None:
            continue
        if hit != row:
            a[[row, hit]] = a[[hit, row]]
        a[row] = (a[row] * ff_inv(int(a[row, col]), p)) % p
        for r in range(m):
            if r != row and a[r, col]:
                a[r] = (a[r] - a[r, col] * a[row]) % p
        pivots.append(col)
        row += 1
    return a, row, tuple(pivots)


class Matrix:
    """An exact matrix over GF(p), hashable by its reduced entries."""

    __slots__ = ("p", "a", "_key", "_hash")

    def __init__(self, entries, p: int):
        p = _check_modulus(p)
        a = np.array(entries, dtype=np.int64)
        if a.ndim != 2:
            raise ShapeMismatch("matrix entries must be two-dimensional")
        if a.shape[1] * (p - 1) ** 2 >= 2**62:
            raise ValidationError("modulus too large for 64-bit products")
        self.p = p
        self.a = a % p
        self.a.flags.writeable = False
        self._key = (p, self.a.shape, self.a.tobytes())
        self._hash = hash(self._key)

    @classmethod
    def identity(cls, n: int, p: int) -> "Matrix":
        return cls(np.eye(n, dtype=np.int64), p)

    @classmethod
    def diagonal(cls, diag, p: int) -> "Matrix":
        return cls(np.diag(np.array(diag, dtype=np.int64)), p)

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def key(self):
        return self._key

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return isinstance(other, Matrix) and self._key == other._key

    def __mul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.p != other.p:
            raise ModulusMismatch(f"moduli differ: {self.p} vs {other.p}")
        if self.cols != other.rows:
            raise ShapeMismatch(
                f"cannot multiply {self.a.shape} by {other.a.shape}"
            )
        return Matrix(self.a @ other.a, self.p)

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.p != other.p:
            raise ModulusMismatch(f"moduli differ: {self.p} vs {other.p}")
        if self.a.shape != other.a.shape:
            raise ShapeMismatch("shapes differ")
        return Matrix(self.a - other.a, self.p)

    def inv(self) -> "Matrix":
        """Gauss-Jordan inverse; raises Singular when rank < n."""
        if self.rows != self.cols:
            raise Singular("only square matrices can be inverted")
        n = self.rows
        aug = np.concatenate(
            [self.a, np.eye(n, dtype=np.int64)], axis=1
        )
        r, rank, _ = rref(aug, self.p)
        if rank < n or not np.array_equal(r[:, :n], np.eye(n, dtype=np.int64)):
            raise Singular("matrix is singular")
        return Matrix(r[:, n:], self.p)

    def is_identity(self) -> bool:
        return self.rows == self.cols and np.array_equal(
            self.a, np.eye(self.rows, dtype=np.int64)
        )

    def is_invertible(self) -> bool:
        if self.rows != self.cols:
            return False
        return rref(self.a, self.p)[1] == self.rows

    def transpose(self) -> "Matrix":
        return Matrix(self.a.T, self.p)

    def rref(self) -> tuple["Matrix", int]:
        r, rank, _ = rref(self.a, self.p)
        return Matrix(r, self.p), rank

    def __repr__(self):
        return f"Matrix({self.a.tolist()}, p={self.p})"


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    return a * b


def mat_inv(m: Matrix) -> Matrix:
    return m.inv()


def nullspace_rows(a: np.ndarray, p: int) -> np.ndarray:
    """Basis (as rows) of {x : a @ x = 0} for an m x n matrix a."""
    a = np.asarray(a, dtype=np.int64)
    m, n = a.shape
    r, rank, pivots = rref(a, p)
    pivot_set = set(pivots)
    free = [j for j in range(n) if j not in pivot_set]
    rows = np.zeros((len(free), n), dtype=np.int64)
    for idx, f in enumerate(free):
        rows[idx, f] = 1
        for i, c in enumerate(pivots):
            rows[idx, c] = (-r[i, f]) % p
    return rows


class Subspace:
    """A subspace of GF(p)^n in canonical reduced-row-echelon form.

    Equality, hashing, and ordering all go through the (rank, flattened
    basis entries) key, so subspaces can serve as set members and sort
    deterministically.
    """

    __slots__ = ("p", "ambient", "basis", "rank", "pivots", "_pivot_arr", "_key", "_hash")

    def __init__(self, basis: np.ndarray, pivots: tuple[int, ...], p: int, ambient: int):
        # trusted constructor: basis must already be RREF with no zero rows
        self.p = p
        self.ambient = ambient
        self.basis = basis
        self.basis.flags.writeable = False
        self.rank = basis.shape[0]
        self.pivots = pivots
        self._pivot_arr = np.array(pivots, dtype=np.intp)
        self._key = None
        self._hash = None

    @classmethod
    def span(cls, rows, ambient: int, p: int) -> "Subspace":
        """Canonical subspace spanned by the given row vectors."""
        p = _check_modulus(p)
        arr = np.array(list(rows), dtype=np.int64)
        if arr.size == 0:
            arr = arr.reshape(0, ambient)
        if arr.shape[1] != ambient:
            raise ShapeMismatch(
                f"rows of length {arr.shape[1]} in ambient dimension {ambient}"
            )
        r, rank, pivots = rref(arr, p)
        return cls(r[:rank].copy(), pivots, p, ambient)

    @classmethod
    def zero(cls, ambient: int, p: int) -> "Subspace":
        return cls.span([], ambient, p)

    @classmethod
    def full(cls, ambient: int, p: int) -> "Subspace":
        return cls.span(np.eye(ambient, dtype=np.int64), ambient, p)

    @property
    def key(self):
        # computed lazily: enumeration scans build many short-lived subspaces
        if self._key is None:
            self._key = (self.rank,) + tuple(int(x) for x in self.basis.ravel())
        return self._key

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.p, self.ambient, self.key))
        return self._hash

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.p == other.p
            and self.ambient == other.ambient
            and self.rank == other.rank
            and np.array_equal(self.basis, other.basis)
        )

    def __lt__(self, other):
        return self.key < other.key

    def is_zero(self) -> bool:
        return self.rank == 0

    def contains_vector(self, v) -> bool:
        v = np.asarray(v, dtype=np.int64) % self.p
        if self.rank == 0:
            return not v.any()
        # RREF basis: coordinates of a member are its pivot-column entries
        coeffs = v[self._pivot_arr]
        residual = (v - coeffs @ self.basis) % self.p
        return not residual.any()

    def contains_rows(self, rows) -> bool:
        """Vectorized membership test for a stack of row vectors."""
        rows = np.asarray(rows, dtype=np.int64) % self.p
        if self.rank == 0:
            return not rows.any()
        residual = (rows - rows[:, self._pivot_arr] @ self.basis) % self.p
        return not residual.any()

    def contains(self, other: "Subspace") -> bool:
        self._check_compatible(other)
        return self.contains_rows(other.basis)

    def apply(self, g: Matrix) -> "Subspace":
        """Image subspace under the right action v -> v @ g."""
        if g.p != self.p:
            raise ModulusMismatch("matrix modulus differs from subspace modulus")
        return Subspace.span((self.basis @ g.a) % self.p, self.ambient, self.p)

    def sum(self, other: "Subspace") -> "Subspace":
        self._check_compatible(other)
        return Subspace.span(
            np.concatenate([self.basis, other.basis]), self.ambient, self.p
        )

    def intersect(self, other: "Subspace") -> "Subspace":
        """Canonical intersection via the kernel of the stacked bases."""
        self._check_compatible(other)
        if self.rank == 0 or other.rank == 0:
            return Subspace.zero(self.ambient, self.p)
        stacked = np.concatenate([self.basis, (-other.basis) % self.p])
        # u @ stacked = 0  <=>  u[:r1] @ B1 = u[r1:] @ B2
        kernel = nullspace_rows(stacked.T, self.p)
        rows = (kernel[:, : self.rank] @ self.basis) % self.p
        return Subspace.span(rows, self.ambient, self.p)

    def coordinates(self, v) -> np.ndarray:
        """Coefficients of a member vector in the RREF basis."""
        v = np.asarray(v, dtype=np.int64) % self.p
        return v[self._pivot_arr]

    def _check_compatible(self, other: "Subspace"):
        if self.ambient != other.ambient or self.p != other.p:
            raise AmbientMismatch(
                f"subspaces live in GF({self.p})^{self.ambient} "
                f"and GF({other.p})^{other.ambient}"
            )

    def __repr__(self):
        return f"Subspace({self.basis.tolist()}, p={self.p}, ambient={self.ambient})"


def subspace_span(rows, ambient: int, p: int) -> Subspace:
    return Subspace.span(rows, ambient, p)


def subspace_intersect(w1: Subspace, w2: Subspace) -> Subspace:
    return w1.intersect(w2)


def direct_sum_check(parts) -> bool:
    """True iff the parts are independent and together decompose GF(p)^n."""
    parts = list(parts)
    if not parts:
        return False
    ambient, p = parts[0].ambient, parts[0].p
    for w in parts:
        if w.ambient != ambient or w.p != p:
            raise AmbientMismatch("parts live in different ambient spaces")
    total = sum(w.rank for w in parts)
    if total != ambient:
        return False
    stacked = np.concatenate([w.basis for w in parts])
    return rref(stacked, p)[1] == total


def fixed_space(g: Matrix) -> Subspace:
    """Subspace of row vectors fixed by g, i.e. the kernel of (g - I)."""
    if g.rows != g.cols:
        raise ShapeMismatch("fixed space needs a square matrix")
    n = g.rows
    delta = (g.a - np.eye(n, dtype=np.int64)) % g.p
    # v @ (g - I) = 0  <=>  (g - I)^T @ v^T = 0
    rows = nullspace_rows(delta.T, g.p)
    return Subspace.span(rows, n, g.p)


def gaussian_binomial(n: int, k: int, p: int) -> int:
    """Number of k-dimensional subspaces of GF(p)^n, exactly."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= p ** (n - i) - 1
        den *= p ** (i + 1) - 1
    return num // den


def all_subspaces(n: int, d: int, p: int):
    """Yield every d-dimensional subspace of GF(p)^n, deterministically.

    Enumerates echelon bases directly: pivot columns run through
    combinations in lexicographic order and the free cells (right of each
    pivot, outside pivot columns) run through all field values.
    """
    p = _check_modulus(p)
    if d == 0:
        yield Subspace.zero(n, p)
        return
    if d > n:
        return
    for pivots in itertools.combinations(range(n), d):
        pivot_set = set(pivots)
        free_cells = [
            (i, j)
            for i in range(d)
            for j in range(pivots[i] + 1, n)
            if j not in pivot_set
        ]
        base = np.zeros((d, n), dtype=np.int64)
        for i, c in enumerate(pivots):
            base[i, c] = 1
        if not free_cells:
            yield Subspace(base.copy(), pivots, p, n)
            continue
        for values in itertools.product(range(p), repeat=len(free_cells)):
            mat = base.copy()
            for (i, j), v in zip(free_cells, values):
                mat[i, j] = v
            yield Subspace(mat, pivots, p, n)


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]
