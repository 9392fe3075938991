"""Exact dense linear algebra over prime fields GF(p).

Matrices are plain numpy int64 arrays with entries reduced into [0, p).
Subspaces are kept in reduced row echelon form, which doubles as the
equality normal form: two subspaces are equal iff their RREF bases are.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "is_prime",
    "validate_prime",
    "as_matrix",
    "as_vector",
    "rref",
    "kernel",
    "solve",
    "all_vectors",
    "projective_vectors",
    "Subspace",
]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def validate_prime(p: int) -> int:
    if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
        raise ValueError(f"modulus must be a prime integer, got {p!r}")
    return int(p)


def as_matrix(rows, p: int, cols: int | None = None) -> np.ndarray:
    """Coerce to a 2-d int64 array reduced mod p; `cols` fixes the width of
    an empty matrix."""
    m = np.array(rows, dtype=np.int64)
    if m.ndim == 1:
        m = m.reshape(1, -1) if m.size else m.reshape(0, cols or 0)
    if m.size == 0:
        m = m.reshape(m.shape[0], cols if cols is not None else m.shape[-1] if m.ndim == 2 else 0)
    return m % p


def as_vector(v, p: int) -> np.ndarray:
    a = np.array(v, dtype=np.int64).reshape(-1)
    return a % p


def rref(m: np.ndarray, p: int) -> tuple[np.ndarray, int, list[int]]:
    """Reduced row echelon form of m over GF(p).

    Returns (r, rank, pivot_columns); r has the same shape as m and is the
    unique RREF of its row space padded with zero rows.
    """
    r = np.array(m, dtype=np.int64) % p
    if r.ndim != 2:
        raise ValueError("rref expects a 2-d matrix")
    nrows, ncols = r.shape
    pivots: list[int] = []
    pr = 0
    for c in range(ncols):
        if pr == nrows:
            break
        k = -1
        for i in range(pr, nrows):
            if r[i, c]:
                k = i
                break
        if k < 0:
            continue
        if k != pr:
            r[[pr, k]] = r[[k, pr]]
        inv = pow(int(r[pr, c]), p - 2, p)
        r[pr] = (r[pr] * inv) % p
        for i in range(nrows):
            if i != pr and r[i, c]:
                r[i] = (r[i] - r[i, c] * r[pr]) % p
        pivots.append(c)
        pr += 1
    return r, pr, pivots


def kernel(m: np.ndarray, p: int) -> "Subspace":
    """Right null space {x : m @ x = 0 mod p} as a Subspace of GF(p)^cols."""
    m = np.asarray(m, dtype=np.int64)
    nrows, ncols = m.shape
    if ncols == 0:
        return Subspace.zero(0, p)
    if nrows == 0:
        return Subspace.full(ncols, p)
    r, rank, pivots = rref(m, p)
    free = [c for c in range(ncols) if c not in pivots]
    rows = np.zeros((len(free), ncols), dtype=np.int64)
    for t, f in enumerate(free):
        rows[t, f] = 1
        for i, c in enumerate(pivots):
            rows[t, c] = (-r[i, f]) % p
    return Subspace.from_rows(rows, p, ambient=ncols)


def solve(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """One solution x of a @ x = b mod p, or None when inconsistent."""
    a = np.asarray(a, dtype=np.int64) % p
    b = as_vector(b, p)
    nrows, ncols = a.shape
    if b.shape[0] != nrows:
        raise ValueError("dimension mismatch in solve")
    aug = np.hstack([a, b.reshape(-1, 1)])
    r, rank, pivots = rref(aug, p)
    if ncols in pivots:
        return None
    x = np.zeros(ncols, dtype=np.int64)
    for i, c in enumerate(pivots):
        x[c] = r[i, ncols]
    return x


def all_vectors(n: int, p: int):
    """All p**n vectors of GF(p)^n in little-endian counting order."""
    v = np.zeros(n, dtype=np.int64)
    yield v.copy()
    total = p**n
    for _ in range(total - 1):
        i = 0
        while True:
            v[i] += 1
            if v[i] < p:
                break
            v[i] = 0
            i += 1
        yield v.copy()


def projective_vectors(n: int, p: int):
    """One representative per scalar line of GF(p)^n: first nonzero coord 1."""
    for lead in range(n):
        head = np.zeros(lead + 1, dtype=np.int64)
        head[lead] = 1
        for tail in all_vectors(n - lead - 1, p):
            v = np.concatenate([head, tail])
            yield v


@dataclass(frozen=True)
class Subspace:
    """A subspace of GF(p)^ambient, stored as an RREF basis (rows)."""

    p: int
    ambient: int
    basis: np.ndarray = field(repr=False)
    pivots: tuple[int, ...] = ()

    @staticmethod
    def from_rows(rows, p: int, ambient: int | None = None) -> "Subspace":
        m = as_matrix(rows, p, cols=ambient)
        if ambient is None:
            ambient = m.shape[1]
        if m.shape[1] != ambient:
            raise ValueError("row width does not match ambient dimension")
        r, rank, pivots = rref(m, p)
        b = r[:rank].copy()
        b.setflags(write=False)
        return Subspace(p, ambient, b, tuple(pivots))

    @staticmethod
    def zero(ambient: int, p: int) -> "Subspace":
        b = np.zeros((0, ambient), dtype=np.int64)
        b.setflags(write=False)
        return Subspace(p, ambient, b, ())

    @staticmethod
    def full(ambient: int, p: int) -> "Subspace":
        b = np.eye(ambient, dtype=np.int64)
        b.setflags(write=False)
        return Subspace(p, ambient, b, tuple(range(ambient)))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def is_zero(self) -> bool:
        return self.dim == 0

    @property
    def is_full(self) -> bool:
        return self.dim == self.ambient

    def key(self) -> tuple:
        return (self.p, self.ambient, self.basis.tobytes())

    def __eq__(self, other) -> bool:
        return isinstance(other, Subspace) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def reduce(self, v) -> np.ndarray:
        """Residual of v after elimination against the basis; zero iff v is
        in the subspace."""
        r = as_vector(v, self.p)
        if r.shape[0] != self.ambient:
            raise ValueError("vector does not match ambient dimension")
        for i, c in enumerate(self.pivots):
            if r[c]:
                r = (r - r[c] * self.basis[i]) % self.p
        return r

    def contains(self, v) -> bool:
        return not self.reduce(v).any()

    def contains_space(self, other: "Subspace") -> bool:
        if other.ambient != self.ambient:
            raise ValueError("ambient dimension mismatch")
        return all(self.contains(row) for row in other.basis)

    def coords(self, v) -> np.ndarray | None:
        """Coefficients of v in the RREF basis, or None if v is outside."""
        if not self.contains(v):
            return None
        return as_vector(v, self.p)[list(self.pivots)] if self.dim else np.zeros(0, dtype=np.int64)

    def add(self, other: "Subspace") -> "Subspace":
        if other.ambient != self.ambient or other.p != self.p:
            raise ValueError("subspace sum requires equal ambient space")
        stacked = np.vstack([self.basis, other.basis])
        return Subspace.from_rows(stacked, self.p, ambient=self.ambient)

    def intersect(self, other: "Subspace") -> "Subspace":
        if other.ambient != self.ambient or other.p != self.p:
            raise ValueError("subspace intersection requires equal ambient space")
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient, self.p)
        # Pairs (a, b) with a @ U = b @ V give the common vectors a @ U.
        m = np.hstack([self.basis.T, (-other.basis.T) % self.p])
        ker = kernel(m, self.p)
        rows = (ker.basis[:, : self.dim] @ self.basis) % self.p if ker.dim else np.zeros((0, self.ambient), dtype=np.int64)
        return Subspace.from_rows(rows, self.p, ambient=self.ambient)

    def complement_columns(self) -> tuple[int, ...]:
        """Coordinates not used as pivots; unit vectors there span a
        complement."""
        pset = set(self.pivots)
        return tuple(c for c in range(self.ambient) if c not in pset)

    def vectors(self):
        """All p**dim member vectors (desk-scale enumeration)."""
        for c in all_vectors(self.dim, self.p):
            yield (c @ self.basis) % self.p if self.dim else np.zeros(self.ambient, dtype=np.int64)
