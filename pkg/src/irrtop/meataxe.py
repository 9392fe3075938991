"""Randomized irreducibility testing and composition factors for matrix
modules over GF(p), plus the Schur-lemma isomorphism test and the radical.

The split test: sample a singular element theta of the acting algebra's
image. If every vector in ker(theta) generates the whole module, then the
image of theta contains every maximal submodule (theta is onto each of
them), so any nonzero functional vanishing on theta's image generates a
proper dual submodule whenever a proper submodule exists at all. Hence one
spin of a transposed-kernel vector under the transposed action settles
irreducibility. Failures of either spin hand back an explicit proper
submodule.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import Algebra, Ideal
from .linalg import Subspace, kernel, projective_vectors, rref
from .modules import ModuleRep, annihilator, regular_module, spin, spin_matrices, sub_quotient

__all__ = [
    "MeatAxeError",
    "SplitResult",
    "split",
    "brute_force_split",
    "composition_factors",
    "is_isomorphic_simple",
    "group_factors",
    "jacobson_radical",
    "is_semiprimitive",
]

RETRY_BUDGET = 64
BRUTE_CAP = 4096
KERNEL_LINE_CAP = 512


class MeatAxeError(RuntimeError):
    """Raised when no certificate could be produced within the budgets."""


@dataclass(frozen=True)
class SplitResult:
    irreducible: bool
    submodule: Subspace | None
    method: str
    tries: int = 0

    def __post_init__(self):
        if self.irreducible == (self.submodule is not None):
            raise ValueError("split result must carry a submodule iff reducible")


def _line_count(k: int, p: int) -> int:
    return (p**k - 1) // (p - 1)


def _random_theta(m: ModuleRep, rng: np.random.Generator) -> np.ndarray:
    """Uniform combination of the action matrices plus up to 3 degree-2 words."""
    p, d = m.p, m.algebra.dim
    theta = m.act(rng.integers(0, p, size=d))
    for _ in range(int(rng.integers(0, 4))):
        x = m.act(rng.integers(0, p, size=d))
        y = m.act(rng.integers(0, p, size=d))
        theta = (theta + x @ y) % p
    return theta


def _perp(s: Subspace) -> Subspace:
    if s.dim == 0:
        return Subspace.full(s.ambient, s.p)
    return kernel(s.basis, s.p)


def brute_force_split(m: ModuleRep) -> SplitResult:
    """Spin every scalar line of the module; exact but exponential."""
    p, n = m.p, m.n
    if n < 1:
        raise ValueError("cannot split the zero module")
    if p**n > BRUTE_CAP:
        raise MeatAxeError(f"brute-force split refused: {p}^{n} states exceed {BRUTE_CAP}")
    for v in projective_vectors(n, p):
        s = spin(m, [v])
        if s.dim < n:
            return SplitResult(False, s, "brute")
    return SplitResult(True, None, "brute")


def split(m: ModuleRep, seed: int = 0) -> SplitResult:
    """Certify irreducibility or return a proper nonzero submodule.

    Deterministic for a fixed seed. Falls back to the brute-force scan when
    sampling fails and p**n <= 4096; otherwise raises MeatAxeError.
    """
    rng = np.random.default_rng(seed)
    return _split(m, rng)


def _split(m: ModuleRep, rng: np.random.Generator) -> SplitResult:
    p, n = m.p, m.n
    if n < 1:
        raise ValueError("cannot split the zero module")
    if n == 1:
        return SplitResult(True, None, "dim1")
    for attempt in range(1, RETRY_BUDGET + 1):
        theta = _random_theta(m, rng)
        if not theta.any():
            continue
        ker = kernel(theta, p)
        if ker.dim == 0 or _line_count(ker.dim, p) > KERNEL_LINE_CAP:
            continue
        for c in projective_vectors(ker.dim, p):
            v = (c @ ker.basis) % p
            s = spin(m, [v])
            if s.dim < n:
                return SplitResult(False, s, "meataxe-kernel", attempt)
        kert = kernel(theta.T % p, p)
        w = kert.basis[0]
        dual = spin_matrices([m.action[i].T % p for i in range(m.algebra.dim)], [w], p, n)
        if dual.dim < n:
            sub = _perp(dual)
            return SplitResult(False, sub, "meataxe-dual", attempt)
        return SplitResult(True, None, "meataxe", attempt)
    if p**n <= BRUTE_CAP:
        return brute_force_split(m)
    raise MeatAxeError(
        f"no singular algebra element with a small kernel found in {RETRY_BUDGET} tries "
        f"and {p}^{n} states exceed the brute-force cap"
    )


def composition_factors(m: ModuleRep, seed: int = 0) -> list[ModuleRep]:
    """Simple factors of any composition series, with multiplicity.

    The factor multiset is unique up to isomorphism and order
    (Jordan-Hoelder); the returned order follows the recursive splitting.
    """
    rng = np.random.default_rng(seed)
    out: list[ModuleRep] = []
    stack = [m]
    while stack:
        cur = stack.pop()
        if cur.n == 0:
            continue
        res = _split(cur, rng)
        if res.irreducible:
            out.append(cur)
            continue
        sub, quot = sub_quotient(cur, res.submodule)
        stack.append(quot)
        stack.append(sub)
    total = sum(f.n for f in out)
    if total != m.n:
        raise AssertionError("composition factor dimensions do not sum to the module dimension")
    return out


def is_isomorphic_simple(m1: ModuleRep, m2: ModuleRep) -> np.ndarray | None:
    """Invertible intertwiner X with act1[i] @ X = X @ act2[i] for all i, or
    None. Meaningful only for simple inputs (any nonzero solution is then
    invertible)."""
    if m1.algebra is not m2.algebra:
        raise ValueError("isomorphism test requires modules over the same algebra")
    if m1.n != m2.n:
        return None
    n, p, d = m1.n, m1.p, m1.algebra.dim
    if n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    eye = np.eye(n, dtype=np.int64)
    blocks = [
        (np.kron(m1.action[i], eye) - np.kron(eye, m2.action[i].T)) % p
        for i in range(d)
    ]
    ker = kernel(np.vstack(blocks), p)
    for row in ker.basis:
        x = row.reshape(n, n)
        _, rank, _ = rref(x, p)
        if rank == n:
            return x
    return None


def group_factors(factors: list[ModuleRep]) -> list[tuple[ModuleRep, int]]:
    """Group a factor list by isomorphism, keeping first-found order."""
    groups: list[tuple[ModuleRep, int]] = []
    for f in factors:
        for i, (rep, cnt) in enumerate(groups):
            if is_isomorphic_simple(rep, f) is not None:
                groups[i] = (rep, cnt + 1)
                break
        else:
            groups.append((f, 1))
    return groups


def jacobson_radical(a: Algebra, seed: int = 0) -> Ideal:
    """Intersection of the annihilators of the regular module's composition
    factors (which exhaust the simple modules of an Artinian algebra)."""
    factors = composition_factors(regular_module(a), seed)
    sub = Subspace.full(a.dim, a.p)
    for f in factors:
        sub = sub.intersect(annihilator(a, f).subspace)
    return Ideal(a, sub, "two-sided")


def is_semiprimitive(a: Algebra, ideal: Ideal, seed: int = 0) -> bool:
    """True iff the ideal is an intersection of simple-module annihilators;
    the empty intersection is the whole algebra."""
    factors = composition_factors(regular_module(a), seed)
    anns = []
    for rep, _ in group_factors(factors):
        anns.append(annihilator(a, rep).subspace)
    meet = Subspace.full(a.dim, a.p)
    for s in anns:
        if s.contains_space(ideal.subspace):
            meet = meet.intersect(s)
    return meet == ideal.subspace
