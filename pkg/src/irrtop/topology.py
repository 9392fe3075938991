"""The space of isomorphism classes of simple modules of a
finite-dimensional algebra, its Zariski topology of annihilator vanishing
sets, and the refined closure operator driven by composition factors of
finite products.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import Algebra, Ideal
from .linalg import Subspace
from .meataxe import composition_factors, group_factors, is_isomorphic_simple
from .modules import ModuleRep, annihilator, direct_sum, regular_module

__all__ = [
    "IrrPoint",
    "IrrSpace",
    "ZClosed",
    "enumerate_irr",
    "vanishing_set",
    "semiprimitive_subspaces",
    "zariski_closed_family",
    "refined_closure",
    "FormReport",
    "verify_closed_form",
]

ZARISKI_POINT_CAP = 16
CLOSURE_POINT_CAP = 8


@dataclass(frozen=True)
class IrrPoint:
    id: int
    rep: ModuleRep
    ann: Ideal

    @property
    def dim(self) -> int:
        return self.rep.n


@dataclass(frozen=True)
class IrrSpace:
    algebra: Algebra
    points: tuple[IrrPoint, ...]

    def __len__(self) -> int:
        return len(self.points)

    def all_ids(self) -> frozenset[int]:
        return frozenset(pt.id for pt in self.points)

    def ann_meet(self, ids) -> Subspace:
        """Intersection of the annihilators over a point set; the empty
        intersection is the whole algebra."""
        sub = Subspace.full(self.algebra.dim, self.algebra.p)
        for i in ids:
            sub = sub.intersect(self.points[i].ann.subspace)
        return sub

    def identify(self, simple: ModuleRep) -> int:
        """Point id of a certified-simple module, by isomorphism."""
        for pt in self.points:
            if pt.dim == simple.n and is_isomorphic_simple(pt.rep, simple) is not None:
                return pt.id
        raise ValueError("simple module matches no enumerated class")


def enumerate_irr(a: Algebra, seed: int = 0) -> IrrSpace:
    """Isomorphism classes of simple modules: deduplicated composition
    factors of the regular module, ordered by dimension then first found."""
    factors = composition_factors(regular_module(a), seed)
    reps = [rep for rep, _ in group_factors(factors)]
    reps.sort(key=lambda f: f.n)  # stable: preserves first-found order per dim
    points = tuple(
        IrrPoint(i, rep.relabel(f"simple#{i}"), annihilator(a, rep))
        for i, rep in enumerate(reps)
    )
    return IrrSpace(a, points)


@dataclass(frozen=True)
class ZClosed:
    """A Zariski closed set in canonical form: its point set together with
    the recanonicalized defining ideal (the meet of the member
    annihilators)."""

    space: IrrSpace
    ideal_subspace: Subspace
    point_ids: frozenset[int]

    @property
    def ideal(self) -> Ideal:
        return Ideal(self.space.algebra, self.ideal_subspace, "two-sided")

    def __eq__(self, other) -> bool:
        return isinstance(other, ZClosed) and self.point_ids == other.point_ids and self.space is other.space

    def __hash__(self) -> int:
        return hash(self.point_ids)


def vanishing_set(space: IrrSpace, ideal: Ideal) -> ZClosed:
    """Points whose simple module is killed by the ideal."""
    ids = frozenset(
        pt.id for pt in space.points if pt.ann.subspace.contains_space(ideal.subspace)
    )
    return ZClosed(space, space.ann_meet(ids), ids)


def semiprimitive_subspaces(space: IrrSpace) -> dict[Subspace, frozenset[int]]:
    """All meets of point annihilators (including the empty meet, the whole
    algebra), each mapped to its vanishing point set."""
    if len(space) > ZARISKI_POINT_CAP:
        raise ValueError(f"semiprimitive lattice capped at {ZARISKI_POINT_CAP} points")
    found: dict[Subspace, frozenset[int]] = {}
    full = Subspace.full(space.algebra.dim, space.algebra.p)
    work = [full]
    while work:
        sub = work.pop()
        if sub in found:
            continue
        ids = frozenset(pt.id for pt in space.points if pt.ann.subspace.contains_space(sub))
        found[sub] = ids
        for pt in space.points:
            work.append(sub.intersect(pt.ann.subspace))
    return found


def zariski_closed_family(space: IrrSpace) -> list[ZClosed]:
    """All Zariski closed sets, deduplicated; asserts the family is closed
    under union and intersection."""
    lattice = semiprimitive_subspaces(space)
    by_points: dict[frozenset[int], Subspace] = {}
    for sub, ids in lattice.items():
        prev = by_points.get(ids)
        if prev is None or sub.contains_space(prev):
            by_points[ids] = sub
    family = [ZClosed(space, space.ann_meet(ids), ids) for ids in by_points]
    family.sort(key=lambda z: (len(z.point_ids), sorted(z.point_ids)))
    sets = {z.point_ids for z in family}
    for x in sets:
        for y in sets:
            if x | y not in sets or x & y not in sets:
                raise AssertionError("Zariski closed family is not a lattice of sets")
    return family


def refined_closure(space: IrrSpace, ids, seed: int = 0) -> frozenset[int]:
    """Least superset closed under taking classes of composition factors of
    the product of one representative per member class."""
    current = frozenset(int(i) for i in ids)
    if not current <= space.all_ids():
        raise ValueError("point selection outside the space")
    rng_seed = seed
    for _ in range(len(space) + 1):
        reps = [space.points[i].rep for i in sorted(current)]
        prod = direct_sum(space.algebra, reps)
        factors = composition_factors(prod, rng_seed)
        grown = current | {space.identify(f) for f in factors}
        if grown == current:
            return current
        current = grown
    raise AssertionError("refined closure failed to stabilize within the point count")


@dataclass(frozen=True)
class FormReport:
    """Decomposition of a refined-closed set as a vanishing set plus a
    finite remainder."""

    space: IrrSpace
    selection: frozenset[int]
    is_refined_closed: bool
    closure: frozenset[int]
    found: bool = False
    ideal_subspace: Subspace | None = None
    v_points: frozenset[int] = field(default_factory=frozenset)
    finite_part: frozenset[int] = field(default_factory=frozenset)
    ideal_semiprimitive: bool = False


def verify_closed_form(space: IrrSpace, ids, seed: int = 0) -> FormReport:
    """Check a point set is refined-closed and decompose it as
    vanishing-set-plus-finite-set, minimizing the finite part."""
    selection = frozenset(int(i) for i in ids)
    closure = refined_closure(space, selection, seed)
    if closure != selection:
        return FormReport(space, selection, False, closure)
    candidates = {vpts for vpts in semiprimitive_subspaces(space).values() if vpts <= selection}
    best: tuple | None = None
    for vpts in candidates:
        f = selection - vpts
        key = (len(f), sorted(f), sorted(space.all_ids() - vpts))
        if best is None or key < best[0]:
            best = (key, vpts, f)
    if best is None:
        return FormReport(space, selection, True, closure, found=False)
    _, vpts, f = best
    sub = space.ann_meet(vpts)
    meet = Subspace.full(space.algebra.dim, space.algebra.p)
    for pt in space.points:
        if pt.ann.subspace.contains_space(sub):
            meet = meet.intersect(pt.ann.subspace)
    return FormReport(
        space,
        selection,
        True,
        closure,
        found=True,
        ideal_subspace=sub,
        v_points=vpts,
        finite_part=frozenset(f),
        ideal_semiprimitive=meet == sub,
    )
