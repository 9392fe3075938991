"""Constructive embeddings of an algebra (or a quotient) into finite
products of modules, with full traces.

Two constructions are implemented. The staged construction clears an
expanding filtration of the algebra: at stage n it assembles, from fresh
factors, an element whose annihilator meets the span of the first n basis
vectors trivially; the last stage therefore certifies a zero annihilator.
The chain construction walks the factors once, intersecting element
annihilators along a strictly descending chain of left ideals until it
reaches zero. Both return a verified witness or an explicit obstruction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .algebra import Algebra, Ideal, quotient_algebra
from .linalg import Subspace, all_vectors, as_vector, projective_vectors
from .meataxe import composition_factors, group_factors, jacobson_radical
from .modules import (
    ModuleRep,
    annihilator,
    direct_sum,
    regular_module,
    spin,
    vector_annihilator,
)

__all__ = [
    "ProductFamily",
    "EmbeddingWitness",
    "ann_of_vector",
    "DeletionReport",
    "deletion_stability",
    "SearchOutcome",
    "find_embedding",
    "StagePick",
    "StageRecord",
    "StagedTrace",
    "staged_product_embedding",
    "ChainStep",
    "ChainTrace",
    "chain_product_embedding",
    "chain_bound",
    "submodule_lattice",
    "longest_submodule_chain",
    "SufficiencyReport",
    "sufficiency_check",
]

EXHAUSTIVE_CAP = 4096
CANDIDATE_CAP = 256
SAMPLE_BUDGET = 64


@dataclass(frozen=True)
class ProductFamily:
    """An ordered finite family of modules over one algebra. Factors may
    repeat and need not be simple."""

    algebra: Algebra
    factors: tuple[ModuleRep, ...]
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        if any(f.algebra is not self.algebra for f in self.factors):
            raise ValueError("all factors must live over the family's algebra")
        if not self.labels:
            object.__setattr__(
                self,
                "labels",
                tuple(f.label or f"factor{i}" for i, f in enumerate(self.factors)),
            )
        if len(self.labels) != len(self.factors):
            raise ValueError("one label per factor")

    def __len__(self) -> int:
        return len(self.factors)

    @property
    def total_dim(self) -> int:
        return sum(f.n for f in self.factors)

    def state_count(self) -> int:
        return self.algebra.p ** self.total_dim


def ann_of_vector(fam: ProductFamily, components) -> Ideal:
    """Left annihilator of an element of the product, one component vector
    per factor; computed as the meet of the per-factor element
    annihilators."""
    if len(components) != len(fam.factors):
        raise ValueError("one component per factor required")
    a = fam.algebra
    sub = Subspace.full(a.dim, a.p)
    for f, v in zip(fam.factors, components):
        sub = sub.intersect(vector_annihilator(f, v))
    return Ideal(a, sub, "left")


@dataclass(frozen=True)
class EmbeddingWitness:
    """Element x of the product with ann(x) equal to the target ideal; the
    cyclic module it generates is then a copy of the quotient by the
    target."""

    family: ProductFamily
    components: tuple
    ann: Ideal
    target: Ideal
    orbit_dim: int

    @property
    def valid(self) -> bool:
        return (
            self.ann.subspace == self.target.subspace
            and self.orbit_dim == self.family.algebra.dim - self.target.dim
        )


def _witness(fam: ProductFamily, components, target: Ideal) -> EmbeddingWitness:
    comps = tuple(as_vector(v, fam.algebra.p) for v in components)
    ann = ann_of_vector(fam, comps)
    big = direct_sum(fam.algebra, list(fam.factors))
    x = np.concatenate([c for c in comps]) if comps else np.zeros(0, dtype=np.int64)
    orbit = spin(big, [x]) if big.n else Subspace.zero(0, fam.algebra.p)
    return EmbeddingWitness(fam, comps, ann, target, orbit.dim)


@dataclass(frozen=True)
class DeletionReport:
    """Annihilator stability of the product under deleting up to t factors.

    At finite index sets the literal cofinality requirement of the infinite
    theory is vacuous; the deletion budget t is this laboratory's finite
    stand-in and is labeled as such in reports.
    """

    ok: bool
    t: int
    target_dim: int
    checked: int
    failures: tuple  # (deleted index tuple, annihilator dim)


def deletion_stability(fam: ProductFamily, target: Ideal, t: int) -> DeletionReport:
    if t >= len(fam.factors) and len(fam.factors) > 0:
        raise ValueError("deletion budget must be smaller than the factor count")
    a = fam.algebra
    anns = [annihilator(a, f).subspace for f in fam.factors]
    failures = []
    checked = 0
    idx = range(len(fam.factors))
    for k in range(t + 1):
        for deleted in itertools.combinations(idx, k):
            keep = [i for i in idx if i not in deleted]
            sub = Subspace.full(a.dim, a.p)
            for i in keep:
                sub = sub.intersect(anns[i])
            checked += 1
            if sub != target.subspace:
                failures.append((deleted, sub.dim))
    return DeletionReport(not failures, t, target.dim, checked, tuple(failures))


@dataclass(frozen=True)
class SearchOutcome:
    """'found' carries a witness; 'none' asserts nonexistence (exhaustive
    scans only); 'unknown' reports an exhausted sampling budget."""

    status: str
    witness: EmbeddingWitness | None
    tried: int


def find_embedding(
    fam: ProductFamily, target: Ideal, seed: int = 0, budget: int = 5000
) -> SearchOutcome:
    """Search for an element of the product whose annihilator is exactly the
    target ideal. Exhaustive when the product has at most 4096 elements;
    otherwise seeded random sampling up to the budget."""
    a = fam.algebra
    prod_ann = Subspace.full(a.dim, a.p)
    for f in fam.factors:
        prod_ann = prod_ann.intersect(annihilator(a, f).subspace)
    if not prod_ann.contains_space(target.subspace):
        raise ValueError("target ideal must annihilate the whole product")
    if fam.state_count() <= EXHAUSTIVE_CAP:
        tried = 0
        for comps in itertools.product(*[list(all_vectors(f.n, a.p)) for f in fam.factors]):
            tried += 1
            w = _witness(fam, comps, target)
            if w.valid:
                return SearchOutcome("found", w, tried)
        return SearchOutcome("none", None, tried)
    rng = np.random.default_rng(seed)
    for tried in range(1, budget + 1):
        comps = [rng.integers(0, a.p, size=f.n) for f in fam.factors]
        w = _witness(fam, comps, target)
        if w.valid:
            return SearchOutcome("found", w, tried)
    return SearchOutcome("unknown", None, budget)


@dataclass(frozen=True)
class StagePick:
    factor: int
    vector: tuple
    blocked_dim_after: int


@dataclass(frozen=True)
class StageRecord:
    stage: int
    start_dim: int
    picks: tuple[StagePick, ...]
    stalled: bool = False
    blocking_vector: tuple = ()


@dataclass(frozen=True)
class StagedTrace:
    stages: tuple[StageRecord, ...]
    outcome: str  # 'witness' | 'stall'
    note: str = ""


def _candidate_vectors(n: int, p: int, rng: np.random.Generator):
    if n == 0:
        return
    if p**n <= CANDIDATE_CAP:
        first = True
        for v in all_vectors(n, p):
            if first:
                first = False
                continue
            yield v
        return
    for c in range(n):
        e = np.zeros(n, dtype=np.int64)
        e[c] = 1
        yield e
    for _ in range(SAMPLE_BUDGET):
        v = rng.integers(0, p, size=n)
        if v.any():
            yield v


def staged_product_embedding(
    fam: ProductFamily,
    target: Ideal | None = None,
    basis_order: tuple[int, ...] | None = None,
    seed: int = 0,
) -> tuple[EmbeddingWitness | None, StagedTrace]:
    """Stage-by-stage construction of a product element with the target
    annihilator.

    A nonzero target first passes to the quotient algebra, over which the
    goal becomes a zero annihilator. Stage n works inside the span of the
    first n basis vectors (in the requested order): it repeatedly takes the
    first reduced basis vector v of the current blocked subspace, scans the
    unused factors in order for one on which v acts nontrivially, and picks
    a vector there that shrinks the blocked subspace the most. A stage with
    a blocking v that no unused factor can see stalls the construction;
    the trace records it.
    """
    a = fam.algebra
    rng = np.random.default_rng(seed)
    if target is None:
        target = Ideal(a, Subspace.zero(a.dim, a.p), "two-sided")
    if target.is_zero:
        work_alg = a
        work_factors = list(fam.factors)
    else:
        qa, proj = quotient_algebra(a, target)
        comp = target.subspace.complement_columns()
        work_factors = []
        for f in fam.factors:
            for row in target.subspace.basis:
                if f.act(row).any():
                    raise ValueError("target ideal does not annihilate every factor")
            qact = np.stack([f.act(a.basis_vector(c)) for c in comp]) if f.n else np.zeros((qa.dim, 0, 0), dtype=np.int64)
            work_factors.append(ModuleRep(qa, f.n, qact, label=f.label))
        work_alg = qa
    d = work_alg.dim
    order = tuple(basis_order) if basis_order is not None else tuple(range(d))
    if sorted(order) != list(range(d)):
        raise ValueError("basis order must be a permutation of the working basis indices")
    used = [False] * len(work_factors)
    chosen: dict[int, np.ndarray] = {}
    records: list[StageRecord] = []
    for stage in range(1, d + 1):
        slab_rows = np.stack([np.eye(d, dtype=np.int64)[order[i]] for i in range(stage)])
        slab = Subspace.from_rows(slab_rows, work_alg.p, ambient=d)
        accum = Subspace.full(d, work_alg.p)
        blocked = slab
        picks: list[StagePick] = []
        while blocked.dim > 0:
            v = blocked.basis[0]
            pick = None
            for idx, f in enumerate(work_factors):
                if used[idx] or f.n == 0:
                    continue
                mat = f.act(v)
                if not mat.any():
                    continue
                best = None
                for y in _candidate_vectors(f.n, work_alg.p, rng):
                    if not ((mat @ y) % work_alg.p).any():
                        continue
                    cand = accum.intersect(vector_annihilator(f, y)).intersect(slab)
                    if best is None or cand.dim < best[0]:
                        best = (cand.dim, y, accum.intersect(vector_annihilator(f, y)))
                    if cand.dim == 0:
                        break
                if best is not None:
                    pick = (idx, best)
                    break
            if pick is None:
                records.append(
                    StageRecord(stage, slab.dim, tuple(picks), stalled=True, blocking_vector=tuple(int(t) for t in v))
                )
                trace = StagedTrace(tuple(records), "stall", note=f"stage {stage} blocked")
                return None, trace
            idx, (new_dim, y, new_accum) = pick
            if new_dim >= blocked.dim:
                raise AssertionError("stage made no progress on the blocked subspace")
            used[idx] = True
            chosen[idx] = np.array(y, dtype=np.int64)
            accum = new_accum
            blocked = accum.intersect(slab)
            picks.append(StagePick(idx, tuple(int(t) for t in y), blocked.dim))
        records.append(StageRecord(stage, slab.dim, tuple(picks)))
    comps = [
        chosen.get(i, np.zeros(f.n, dtype=np.int64)) for i, f in enumerate(fam.factors)
    ]
    witness = _witness(fam, comps, target)
    if not witness.valid:
        raise AssertionError("staged construction produced an invalid witness")
    return witness, StagedTrace(tuple(records), "witness")


@dataclass(frozen=True)
class ChainStep:
    factor: int
    accepted: bool
    driver: tuple  # the nonzero left-ideal element steering the step
    vector: tuple = ()
    l_dim_after: int = 0


@dataclass(frozen=True)
class ChainTrace:
    steps: tuple[ChainStep, ...]
    outcome: str  # 'witness' | 'failure'
    final_l_dim: int
    final_l: Subspace | None = None


def chain_product_embedding(fam: ProductFamily, seed: int = 0) -> tuple[EmbeddingWitness | None, ChainTrace]:
    """Walk the factors once, shrinking the running left ideal of common
    annihilators until it hits zero.

    At each factor, take the first reduced basis vector r of the running
    intersection; if the factor sees r (r acts nonzero on it), pick a vector
    there moved by r whose annihilator shrinks the running ideal the most.
    Factors blind to r are skipped and recorded. Success means the running
    ideal reached zero, so the accumulated components have zero annihilator.
    """
    a = fam.algebra
    rng = np.random.default_rng(seed)
    kill = Subspace.full(a.dim, a.p)
    steps: list[ChainStep] = []
    comps = [np.zeros(f.n, dtype=np.int64) for f in fam.factors]
    for idx, f in enumerate(fam.factors):
        if kill.dim == 0:
            break
        r = kill.basis[0]
        mat = f.act(r) if f.n else np.zeros((0, 0), dtype=np.int64)
        if not mat.any():
            steps.append(ChainStep(idx, False, tuple(int(t) for t in r), l_dim_after=kill.dim))
            continue
        best = None
        for y in _candidate_vectors(f.n, a.p, rng):
            if not ((mat @ y) % a.p).any():
                continue
            cand = kill.intersect(vector_annihilator(f, y))
            if best is None or cand.dim < best[0]:
                best = (cand.dim, np.array(y, dtype=np.int64), cand)
            if cand.dim == 0:
                break
        new_dim, y, new_kill = best
        if new_dim >= kill.dim:
            raise AssertionError("accepted chain step failed to shrink the running ideal")
        comps[idx] = y
        kill = new_kill
        steps.append(ChainStep(idx, True, tuple(int(t) for t in r), tuple(int(t) for t in y), kill.dim))
    if kill.dim == 0:
        target = Ideal(a, Subspace.zero(a.dim, a.p), "two-sided")
        witness = _witness(fam, comps, target)
        if not witness.valid:
            raise AssertionError("chain construction produced an invalid witness")
        return witness, ChainTrace(tuple(steps), "witness", 0, kill)
    return None, ChainTrace(tuple(steps), "failure", kill.dim, kill)


def chain_bound(m: ModuleRep, seed: int = 0) -> int:
    """Composition length plus two: one more than the number of terms in the
    longest strictly descending chain of submodules."""
    return len(composition_factors(m, seed)) + 2


def submodule_lattice(m: ModuleRep, state_cap: int = 4096) -> list[Subspace]:
    """All submodules: cyclic spins of every scalar line, closed under
    sums."""
    p, n = m.p, m.n
    if p**n > state_cap:
        raise ValueError(f"submodule enumeration refused beyond {state_cap} states")
    found: dict = {}
    zero = Subspace.zero(n, p)
    found[zero.key()] = zero
    cyclics = []
    for v in projective_vectors(n, p):
        s = spin(m, [v])
        if s.key() not in found:
            found[s.key()] = s
            cyclics.append(s)
    work = list(found.values())
    while work:
        s = work.pop()
        for c in cyclics:
            u = s.add(c)
            if u.key() not in found:
                found[u.key()] = u
                work.append(u)
    return sorted(found.values(), key=lambda s: (s.dim, s.key()))


def longest_submodule_chain(m: ModuleRep) -> int:
    """Number of terms in the longest strictly descending submodule chain
    (oracle by exhaustive lattice enumeration)."""
    subs = submodule_lattice(m)
    best = [1] * len(subs)
    for i, s in enumerate(subs):
        for j in range(i):
            t = subs[j]
            if t.dim < s.dim and s.contains_space(t):
                best[i] = max(best[i], best[j] + 1)
    return max(best) if best else 1


@dataclass(frozen=True)
class SufficiencyReport:
    faithful_count: int
    bound: int
    guaranteed: bool
    algebra_simple: bool
    note: str


def sufficiency_check(a: Algebra, fam: ProductFamily, seed: int = 0) -> SufficiencyReport:
    """Compare the number of faithful factors against the descent bound of
    the regular module; at or above the bound the chain construction cannot
    run out of useful factors."""
    faithful = sum(1 for f in fam.factors if annihilator(a, f).is_zero)
    bound = chain_bound(regular_module(a), seed)
    rad = jacobson_radical(a, seed)
    classes = group_factors(composition_factors(regular_module(a), seed))
    simple = rad.is_zero and len(classes) == 1
    note = ""
    if simple:
        note = "simple algebra: every nonzero module is faithful"
    return SufficiencyReport(faithful, bound, faithful >= bound, simple, note)
