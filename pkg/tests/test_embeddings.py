"""Embedding constructions: element annihilators, deletion stability,
witness search, the staged and chain constructions with their traces, and
the descent bound against the lattice oracle."""

import numpy as np
import pytest

from irrtop.algebra import Algebra, Ideal
from irrtop.embeddings import (
    ProductFamily,
    ann_of_vector,
    chain_bound,
    chain_product_embedding,
    deletion_stability,
    find_embedding,
    longest_submodule_chain,
    staged_product_embedding,
    submodule_lattice,
    sufficiency_check,
)
from irrtop.linalg import Subspace
from irrtop.meataxe import jacobson_radical
from irrtop.modules import regular_module, zero_module
from irrtop.presets import gallery, matrix_algebra, truncated_polynomial, upper_triangular
from irrtop.topology import enumerate_irr


def ut2_setup():
    a = upper_triangular(2, 2)
    sp = enumerate_irr(a, 0)
    s1 = sp.points[0].rep  # annihilated by span{e12, e22}
    s2 = sp.points[1].rep
    return a, s1, s2, regular_module(a)


def zero_ideal(a):
    return Ideal(a, Subspace.zero(a.dim, a.p), "two-sided")


def test_ann_of_zero_vector_is_whole():
    a, s1, s2, reg = ut2_setup()
    fam = ProductFamily(a, (s1, reg))
    ann = ann_of_vector(fam, [np.zeros(1, dtype=np.int64), np.zeros(3, dtype=np.int64)])
    assert ann.is_whole and ann.sided == "left"


def test_ann_of_identity_in_regular_is_zero():
    a, s1, s2, reg = ut2_setup()
    fam = ProductFamily(a, (reg,))
    assert ann_of_vector(fam, [a.one]).is_zero


def test_ann_of_s1_vector_matches_module_annihilator():
    a, s1, s2, reg = ut2_setup()
    fam = ProductFamily(a, (s1,))
    ann = ann_of_vector(fam, [np.array([1])])
    assert ann.subspace == Subspace.from_rows([[0, 1, 0], [0, 0, 1]], 2)


def test_deletion_stability_t0_checks_full_product():
    a, s1, s2, reg = ut2_setup()
    fam = ProductFamily(a, (s1, s2))
    rad = jacobson_radical(a, 0)
    rep = deletion_stability(fam, rad, 0)
    assert rep.ok and rep.checked == 1


def test_deletion_stability_faithful_copies():
    a, s1, s2, reg = ut2_setup()
    fam = ProductFamily(a, (reg, reg, reg, reg))
    rep = deletion_stability(fam, zero_ideal(a), 3)
    assert rep.ok


def test_deletion_stability_ut2_counterexample():
    a, s1, s2, reg = ut2_setup()
    fam = ProductFamily(a, (s1, s2))
    rad = jacobson_radical(a, 0)
    rep = deletion_stability(fam, rad, 1)
    assert not rep.ok
    assert len(rep.failures) == 2  # deleting either single factor fails


def test_find_embedding_regular_identity():
    a, s1, s2, reg = ut2_setup()
    out = find_embedding(ProductFamily(a, (reg,)), zero_ideal(a), 0)
    assert out.status == "found" and out.witness.valid
    assert out.witness.orbit_dim == 3


def test_find_embedding_none_exists_for_single_simple():
    a, s1, s2, reg = ut2_setup()
    out = find_embedding(ProductFamily(a, (s1,)), zero_ideal(a), 0)
    assert out.status == "none"


def test_find_embedding_mixed_family():
    a, s1, s2, reg = ut2_setup()
    out = find_embedding(ProductFamily(a, (s1, s2, reg)), zero_ideal(a), 0)
    assert out.status == "found" and out.witness.valid


def test_find_embedding_target_must_annihilate():
    a, s1, s2, reg = ut2_setup()
    rad = jacobson_radical(a, 0)
    with pytest.raises(ValueError):
        find_embedding(ProductFamily(a, (reg,)), rad, 0)


def test_find_embedding_radical_target():
    a, s1, s2, reg = ut2_setup()
    fam = ProductFamily(a, (s1, s2))
    rad = jacobson_radical(a, 0)
    out = find_embedding(fam, rad, 0)
    assert out.status == "found"
    w = out.witness
    assert w.ann.subspace == rad.subspace
    assert w.orbit_dim == a.dim - rad.dim


def test_staged_field_single_stage():
    lam = np.ones((1, 1, 1), dtype=np.int64)
    a = Algebra(2, 1, lam, np.array([1]), name="field")
    m = regular_module(a)
    w, trace = staged_product_embedding(ProductFamily(a, (m,)), seed=0)
    assert trace.outcome == "witness" and w.valid
    assert len(trace.stages) == 1


def test_staged_ut2_success_and_trace_descent():
    a, s1, s2, reg = ut2_setup()
    fam = ProductFamily(a, (s1, s2, reg, reg))
    w, trace = staged_product_embedding(fam, seed=0)
    assert trace.outcome == "witness"
    assert w.valid and w.ann.is_zero and w.orbit_dim == 3
    for rec in trace.stages:
        dims = [rec.start_dim] + [p.blocked_dim_after for p in rec.picks]
        assert all(x > y for x, y in zip(dims, dims[1:]))
        assert dims[-1] == 0


def test_staged_stall_on_radical_blind_family():
    a, s1, s2, reg = ut2_setup()
    w, trace = staged_product_embedding(ProductFamily(a, (s1, s1, s1)), seed=0)
    assert w is None and trace.outcome == "stall"
    blocking = np.array(trace.stages[-1].blocking_vector)
    # The blocking element lies in the annihilator of every factor.
    assert Subspace.from_rows([[0, 1, 0], [0, 0, 1]], 2).contains(blocking)


def test_staged_agrees_with_search_when_it_succeeds():
    a, s1, s2, reg = ut2_setup()
    for factors in [(reg,), (s1, reg, reg), (s1, s2, reg, reg)]:
        fam = ProductFamily(a, factors)
        w, trace = staged_product_embedding(fam, seed=0)
        if trace.outcome == "witness":
            assert find_embedding(fam, zero_ideal(a), 0).status == "found"


def test_staged_nonzero_target_passes_to_quotient():
    a, s1, s2, reg = ut2_setup()
    rad = jacobson_radical(a, 0)
    # Each stage consumes fresh factors, so both classes appear twice.
    fam = ProductFamily(a, (s1, s2, s1, s2))
    w, trace = staged_product_embedding(fam, rad, seed=0)
    assert trace.outcome == "witness"
    assert w.valid and w.ann.subspace == rad.subspace
    assert w.orbit_dim == a.dim - rad.dim


def test_staged_rejects_non_killed_factor():
    a, s1, s2, reg = ut2_setup()
    rad = jacobson_radical(a, 0)
    with pytest.raises(ValueError):
        staged_product_embedding(ProductFamily(a, (reg,)), rad, seed=0)


def test_staged_respects_basis_order():
    a = matrix_algebra(2, 2)
    s = enumerate_irr(a, 0).points[0].rep
    fam = ProductFamily(a, tuple([s] * 6))
    w, trace = staged_product_embedding(fam, basis_order=(0, 2, 1, 3), seed=0)
    assert trace.outcome == "witness" and w.valid and w.orbit_dim == 4


def test_chain_regular_copies_succeed_within_dimension():
    for a in [upper_triangular(2, 2), matrix_algebra(2, 2), truncated_polynomial(3, 2)]:
        reg = regular_module(a)
        fam = ProductFamily(a, tuple([reg] * (a.dim + 1)))
        w, trace = chain_product_embedding(fam, 0)
        assert trace.outcome == "witness" and w.valid
        accepted = [s for s in trace.steps if s.accepted]
        assert len(accepted) <= a.dim
        dims = [s.l_dim_after for s in accepted]
        assert all(x > y for x, y in zip(dims, dims[1:]))


def test_chain_single_faithful_factor():
    a, s1, s2, reg = ut2_setup()
    w, trace = chain_product_embedding(ProductFamily(a, (reg,)), 0)
    assert trace.outcome == "witness" and w.ann.is_zero


def test_chain_fails_without_faithful_supply():
    a, s1, s2, reg = ut2_setup()
    w, trace = chain_product_embedding(ProductFamily(a, (s1, s1, s1)), 0)
    assert w is None and trace.outcome == "failure"
    # The running ideal can never drop below the factor annihilator.
    assert trace.final_l == Subspace.from_rows([[0, 1, 0], [0, 0, 1]], 2)
    skipped = [s for s in trace.steps if not s.accepted]
    assert skipped, "non-contributing factors are recorded"


def test_chain_bound_zero_module():
    a = upper_triangular(2, 2)
    assert chain_bound(zero_module(a), 0) == 2


def test_chain_bound_simple_module():
    a, s1, s2, reg = ut2_setup()
    assert chain_bound(s1, 0) == 3


def test_chain_bound_ut2_regular():
    a, s1, s2, reg = ut2_setup()
    assert chain_bound(reg, 0) == 5


def test_chain_bound_matches_lattice_oracle():
    for a in gallery():
        reg = regular_module(a)
        if a.p**reg.n > 256:
            continue
        assert chain_bound(reg, 0) == longest_submodule_chain(reg) + 1, a.name


def test_submodule_lattice_of_chain_algebra():
    a = truncated_polynomial(3, 2)
    subs = submodule_lattice(regular_module(a))
    assert sorted(s.dim for s in subs) == [0, 1, 2, 3]  # uniserial


def test_sufficiency_guarantee_realized():
    for a in [upper_triangular(2, 2), matrix_algebra(2, 2), truncated_polynomial(3, 2)]:
        reg = regular_module(a)
        bound = chain_bound(reg, 0)
        fam = ProductFamily(a, tuple([reg] * bound))
        rep = sufficiency_check(a, fam, 0)
        assert rep.guaranteed
        w, trace = chain_product_embedding(fam, 0)
        assert trace.outcome == "witness" and w.valid


def test_sufficiency_empty_family():
    a = upper_triangular(2, 2)
    fam = ProductFamily(a, ())
    rep = sufficiency_check(a, fam, 0)
    assert not rep.guaranteed
    w, trace = chain_product_embedding(fam, 0)
    assert w is None and trace.outcome == "failure"


def test_sufficiency_simple_algebra_note():
    a = matrix_algebra(2, 2)
    s = enumerate_irr(a, 0).points[0].rep
    rep = sufficiency_check(a, ProductFamily(a, (s, s)), 0)
    assert rep.algebra_simple and "faithful" in rep.note
    assert rep.faithful_count == 2


def test_witness_invariants_everywhere():
    a, s1, s2, reg = ut2_setup()
    cases = [
        find_embedding(ProductFamily(a, (reg,)), zero_ideal(a), 0).witness,
        staged_product_embedding(ProductFamily(a, (s1, s2, reg, reg)), seed=0)[0],
        chain_product_embedding(ProductFamily(a, (reg, reg, reg, reg)), 0)[0],
    ]
    for w in cases:
        assert w is not None and w.valid
        assert w.ann.subspace == w.target.subspace
        assert w.orbit_dim == a.dim - w.target.dim
