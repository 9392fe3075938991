"""Finite-dimensional associative algebras over GF(p) via structure constants.

An algebra of dimension d is the data mul[i, j, k] with
b_i * b_j = sum_k mul[i, j, k] * b_k, together with the coordinates of the
identity element. Ideals are coordinate subspaces closed under the
appropriate multiplications.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import Subspace, as_vector, validate_prime

__all__ = [
    "Algebra",
    "Ideal",
    "validate_algebra",
    "is_ideal",
    "ideal_generated",
    "quotient_algebra",
    "product_algebra",
]


@dataclass(frozen=True)
class Algebra:
    p: int
    dim: int
    mul: np.ndarray = field(repr=False)  # (d, d, d) structure constants
    one: np.ndarray = field(repr=False)  # (d,) identity coordinates
    name: str = ""
    basis_names: tuple[str, ...] | None = None

    def __post_init__(self):
        validate_prime(self.p)
        mul = np.asarray(self.mul, dtype=np.int64) % self.p
        one = as_vector(self.one, self.p)
        d = self.dim
        if mul.shape != (d, d, d):
            raise ValueError(f"structure constants must have shape ({d},{d},{d})")
        if one.shape != (d,):
            raise ValueError("identity coordinates must have length dim")
        mul.setflags(write=False)
        one.setflags(write=False)
        object.__setattr__(self, "mul", mul)
        object.__setattr__(self, "one", one)

    def multiply(self, x, y) -> np.ndarray:
        x = as_vector(x, self.p)
        y = as_vector(y, self.p)
        return np.einsum("i,j,ijk->k", x, y, self.mul) % self.p

    def left_mult_matrix(self, x) -> np.ndarray:
        """Matrix of y -> x*y on coordinate columns."""
        x = as_vector(x, self.p)
        return np.einsum("i,ijk->kj", x, self.mul) % self.p

    def right_mult_matrix(self, x) -> np.ndarray:
        """Matrix of y -> y*x on coordinate columns."""
        x = as_vector(x, self.p)
        return np.einsum("i,jik->kj", x, self.mul) % self.p

    def basis_vector(self, i: int) -> np.ndarray:
        e = np.zeros(self.dim, dtype=np.int64)
        e[i] = 1
        return e

    def basis_name(self, i: int) -> str:
        if self.basis_names and i < len(self.basis_names):
            return self.basis_names[i]
        return f"b{i}"

    def element_str(self, v) -> str:
        v = as_vector(v, self.p)
        terms = [
            (f"{int(c)}*" if c != 1 else "") + self.basis_name(i)
            for i, c in enumerate(v)
            if c
        ]
        return " + ".join(terms) if terms else "0"


def validate_algebra(a: Algebra) -> list[str]:
    """Every violated associativity/identity constraint; empty iff valid."""
    report: list[str] = []
    d, p, lam = a.dim, a.p, a.mul
    if d == 0:
        report.append("zero-dimensional algebra has no identity element")
        return report
    left = np.einsum("ijm,mkl->ijkl", lam, lam) % p
    right = np.einsum("jkm,iml->ijkl", lam, lam) % p
    bad = np.argwhere(left != right)
    for i, j, k, _l in bad[:64]:
        report.append(
            f"associativity fails at ({a.basis_name(i)}*{a.basis_name(j)})*{a.basis_name(k)}"
        )
    if len(bad) > 64:
        report.append(f"... and {len(bad) - 64} more associativity violations")
    lm = a.left_mult_matrix(a.one)
    rm = a.right_mult_matrix(a.one)
    eye = np.eye(d, dtype=np.int64)
    if (lm != eye).any():
        report.append("identity element fails to act as identity on the left")
    if (rm != eye).any():
        report.append("identity element fails to act as identity on the right")
    return report


@dataclass(frozen=True)
class Ideal:
    algebra: Algebra
    subspace: Subspace
    sided: str = "two-sided"  # 'left' | 'two-sided'

    def __post_init__(self):
        if self.sided not in ("left", "two-sided"):
            raise ValueError("sided must be 'left' or 'two-sided'")
        if self.subspace.ambient != self.algebra.dim:
            raise ValueError("ideal subspace must live in the algebra's coordinate space")

    @property
    def dim(self) -> int:
        return self.subspace.dim

    @property
    def is_zero(self) -> bool:
        return self.subspace.is_zero

    @property
    def is_whole(self) -> bool:
        return self.subspace.is_full

    def contains(self, v) -> bool:
        return self.subspace.contains(v)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Ideal)
            and self.subspace == other.subspace
            and self.algebra is other.algebra
        )

    def __hash__(self) -> int:
        return hash(self.subspace.key())


def is_ideal(a: Algebra, s: Subspace, sided: str = "two-sided") -> bool:
    for row in s.basis:
        for i in range(a.dim):
            e = a.basis_vector(i)
            if not s.contains(a.multiply(e, row)):
                return False
            if sided == "two-sided" and not s.contains(a.multiply(row, e)):
                return False
    return True


def ideal_generated(a: Algebra, gens, sided: str = "two-sided") -> Ideal:
    """Least subspace containing gens closed under the required
    multiplications (spin-up to fixpoint)."""
    sub = Subspace.zero(a.dim, a.p)
    work = [as_vector(g, a.p) for g in gens]
    while work:
        v = work.pop()
        r = sub.reduce(v)
        if not r.any():
            continue
        sub = sub.add(Subspace.from_rows(r, a.p, ambient=a.dim))
        for i in range(a.dim):
            e = a.basis_vector(i)
            work.append(a.multiply(e, r))
            if sided == "two-sided":
                work.append(a.multiply(r, e))
    return Ideal(a, sub, sided)


def quotient_algebra(a: Algebra, ideal: Ideal) -> tuple[Algebra, np.ndarray]:
    """Quotient by a proper two-sided ideal.

    Returns (quotient, projection) where projection is the (d_q, d) matrix of
    the canonical algebra map; its kernel is exactly the ideal. The quotient
    basis is the image of the unit vectors at the ideal's non-pivot
    coordinates.
    """
    if ideal.sided != "two-sided":
        raise ValueError("can only quotient by a two-sided ideal")
    if ideal.is_whole:
        raise ValueError("quotient by the whole algebra is not represented")
    if not is_ideal(a, ideal.subspace, "two-sided"):
        raise ValueError("subspace is not a two-sided ideal")
    comp = ideal.subspace.complement_columns()
    dq = len(comp)
    proj = np.zeros((dq, a.dim), dtype=np.int64)
    for j in range(a.dim):
        res = ideal.subspace.reduce(a.basis_vector(j))
        proj[:, j] = res[list(comp)]
    lam = np.zeros((dq, dq, dq), dtype=np.int64)
    for s in range(dq):
        for t in range(dq):
            prod = a.multiply(a.basis_vector(comp[s]), a.basis_vector(comp[t]))
            lam[s, t] = ideal.subspace.reduce(prod)[list(comp)]
    names = tuple(a.basis_name(c) + "~" for c in comp)
    one_q = (proj @ a.one) % a.p
    quot = Algebra(a.p, dq, lam, one_q, name=f"{a.name}/I" if a.name else "quotient", basis_names=names)
    return quot, proj


def product_algebra(parts: list[Algebra], name: str = "") -> Algebra:
    """Direct product with block-diagonal structure constants."""
    if not parts:
        raise ValueError("product of an empty list of algebras is not represented")
    p = parts[0].p
    if any(q.p != p for q in parts):
        raise ValueError("product factors must share the prime field")
    d = sum(q.dim for q in parts)
    lam = np.zeros((d, d, d), dtype=np.int64)
    one = np.zeros(d, dtype=np.int64)
    names = []
    off = 0
    for idx, q in enumerate(parts):
        s = slice(off, off + q.dim)
        lam[s, s, s] = q.mul
        one[s] = q.one
        names.extend(f"{q.basis_name(i)}@{idx}" for i in range(q.dim))
        off += q.dim
    return Algebra(p, d, lam, one, name=name or " x ".join(q.name or "?" for q in parts), basis_names=tuple(names))
