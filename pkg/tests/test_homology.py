"""Resolutions, Ext, extension realization, pushouts, dimensions."""

from __future__ import annotations

import numpy as np
import pytest

from quiverglue import homology as hgy
from quiverglue.modcat import (
    cokernel,
    direct_sum,
    dualize,
    hom_basis,
    identity_morphism,
    injective,
    is_isomorphic,
    projective,
    simple,
    zero_morphism,
)


def test_projective_cover_of_simple(bound_a3):
    cover = hgy.projective_cover(simple(bound_a3, "3"))
    assert cover.source.dim_vector() == (1, 1, 0)
    assert cover.is_surjective()


def test_syzygies_of_simple(bound_a3):
    s3 = simple(bound_a3, "3")
    assert hgy.syzygy(projective(bound_a3, "3"), 1).is_zero()
    assert is_isomorphic(hgy.syzygy(s3, 1), simple(bound_a3, "4")) is not None
    assert is_isomorphic(hgy.syzygy(s3, 2), simple(bound_a3, "5")) is not None
    assert hgy.syzygy(s3, 3).is_zero()


def test_cosyzygy_through_duality(bound_a3):
    s5 = simple(bound_a3, "5")
    sig = hgy.cosyzygy(s5, 1)
    # the envelope of S(5) is the interval [4,5]; the cosyzygy is S(4)
    assert is_isomorphic(sig, simple(bound_a3, "4")) is not None


def test_ext_examples(bound_a3):
    s3, s4, s5 = (simple(bound_a3, v) for v in "345")
    assert hgy.ext(s3, s4, 1).dimension == 1
    assert hgy.ext(s3, s5, 2).dimension == 1
    assert hgy.ext(s3, s5, 1).dimension == 0
    for v in "345":
        assert hgy.ext(projective(bound_a3, v), s4, 1).dimension == 0
        assert hgy.ext(s4, injective(bound_a3, v), 1).dimension == 0


def test_dimension_shift_both_routes(workspace):
    universe = workspace.universe_b
    picks = ["(S(1)|S(3))", "(0|S(4))", "(P(1)|S(4))", "(0|P(3))"]
    for a_name in picks:
        for b_name in picks:
            m, n = universe.module(a_name), universe.module(b_name)
            for i in range(1, 5):
                via_omega = hgy.ext(m, n, i).dimension
                via_sigma = hgy.ext_dim_via_cosyzygy(m, n, i)
                assert via_omega == via_sigma


def test_ext_duality(workspace):
    universe = workspace.universe_b
    for a_name, _ in universe.members[:6]:
        for b_name, _ in universe.members[:6]:
            m, n = universe.module(a_name), universe.module(b_name)
            for i in (1, 2, 3):
                assert (
                    hgy.ext(m, n, i).dimension
                    == hgy.ext(dualize(n), dualize(m), i).dimension
                )


def test_realize_extension_nonzero_class(bound_a3):
    s3, s4 = simple(bound_a3, "3"), simple(bound_a3, "4")
    group = hgy.ext(s3, s4, 1)
    assert group.dimension == 1
    ses = hgy.realize_extension(group.cocycles[0], s3)
    assert is_isomorphic(ses.mid, projective(bound_a3, "3")) is not None
    # the connecting class of the realized sequence is again nonzero
    cls = hgy.extension_class(ses)
    assert not cls.is_zero()


def test_realize_extension_zero_class_splits(a2):
    s1, s2 = simple(a2, "1"), simple(a2, "2")
    group = hgy.ext(s1, s2, 1)
    assert group.dimension == 1
    nonzero = hgy.realize_extension(group.cocycles[0], s1)
    assert is_isomorphic(nonzero.mid, projective(a2, "1")) is not None
    split = hgy.realize_extension(group.cocycles[0].scale(0), s1)
    assert is_isomorphic(split.mid, direct_sum(a2, [s2, s1])) is not None


def test_pushout_identity_legs(a2):
    p1 = projective(a2, "1")
    ident = identity_morphism(p1)
    p, leg_b, leg_c = hgy.pushout(ident, ident)
    assert is_isomorphic(p, p1) is not None
    assert leg_b.is_surjective()


def test_pushout_of_zero_maps_is_direct_sum(a2):
    s1, s2 = simple(a2, "1"), simple(a2, "2")
    from quiverglue.modcat import zero_module

    z = zero_module(a2)
    p, _, _ = hgy.pushout(zero_morphism(z, s1), zero_morphism(z, s2))
    assert is_isomorphic(p, direct_sum(a2, [s1, s2])) is not None


@pytest.mark.parametrize("seed", [5, 6])
def test_pushout_along_inclusion_preserves_cokernel(bound_a3, seed):
    # for random small morphisms between bundled modules: coker(leg) = coker(f)
    import numpy as np

    rng = np.random.default_rng(seed)
    mods = [projective(bound_a3, v) for v in "345"] + [simple(bound_a3, v) for v in "345"]
    for _ in range(8):
        a = mods[rng.integers(0, len(mods))]
        b = mods[rng.integers(0, len(mods))]
        c = mods[rng.integers(0, len(mods))]
        homs_ab = hom_basis(a, b)
        homs_ac = hom_basis(a, c)
        if not homs_ab or not homs_ac:
            continue
        f = homs_ab[int(rng.integers(0, len(homs_ab)))]
        g = homs_ac[int(rng.integers(0, len(homs_ac)))]
        p, leg_b, leg_c = hgy.pushout(f, g)
        coker_f, _ = cokernel(f)
        coker_leg, _ = cokernel(leg_c)
        assert coker_f.total_dim == coker_leg.total_dim
        assert is_isomorphic(coker_f, coker_leg) is not None


def test_pullback_dual_of_pushout(a2):
    p1, s1 = projective(a2, "1"), simple(a2, "1")
    (proj,) = hom_basis(p1, s1)
    pb, leg_b, leg_c = hgy.pullback(proj, proj)
    # pullback of a surjection against itself has total dim = dim p1 + dim ker
    assert pb.total_dim == p1.total_dim + 1
    assert proj.compose(leg_b).to_vector().tolist() == proj.compose(leg_c).to_vector().tolist()


def test_pd_id_gldim(a2, bound_a3):
    assert hgy.pd(projective(bound_a3, "4")) == 0
    assert hgy.pd(simple(bound_a3, "3")) == 2
    assert hgy.global_dimension(bound_a3) == 2
    assert hgy.global_dimension(a2) == 1
    assert hgy.injdim(simple(bound_a3, "5")) == 2
    assert hgy.injdim(simple(a2, "1")) == 0


def test_pd_cap_returns_none():
    from quiverglue import PrimeField, Quiver, build_algebra, relation
    from quiverglue.modcat import simple as simple_mod

    quiver = Quiver(["1"], [("l", "1", "1")])
    algebra = build_algebra(quiver, [relation(quiver, [(1, ["l", "l"])])], field=PrimeField(101))
    # the self-loop algebra has infinite global dimension; the cap reports None
    assert hgy.pd(simple_mod(algebra, "1"), cap=6) is None
    assert hgy.global_dimension(algebra, cap=4) is None


def test_long_exact_sequence_euler_check(bound_a3):
    # 0 -> S(4) -> P(3) -> S(3) -> 0 against each bundled test object:
    # alternating sum of hom/ext dims vanishes when pd is finite
    s3, s4 = simple(bound_a3, "3"), simple(bound_a3, "4")
    p3 = projective(bound_a3, "3")
    for t in [s3, s4, p3, projective(bound_a3, "4"), simple(bound_a3, "5")]:
        def euler(x):
            from quiverglue.modcat import hom_dim

            total = hom_dim(t, x)
            sign = -1
            for i in range(1, 5):
                total += sign * hgy.ext(t, x, i).dimension
                sign = -sign
            return total

        assert euler(s4) + euler(s3) == euler(p3)


def test_injective_resolution_dual_route(bound_a3):
    s5 = simple(bound_a3, "5")
    res = hgy.injective_resolution(s5, 3)
    assert res.kind == "injective"
    assert [t.dim_vector() for t in res.terms[:3]] == [(0, 1, 1), (1, 1, 0), (1, 0, 0)]
    assert res.augmentation.is_injective()
    assert res.differentials[0].compose(res.augmentation).is_zero()
    assert res.terms[3].is_zero()


def test_ext_duality_specific_pair(bound_a3):
    s3, s4 = simple(bound_a3, "3"), simple(bound_a3, "4")
    assert hgy.ext(s3, s4, 1).dimension == hgy.ext(dualize(s4), dualize(s3), 1).dimension == 1


def test_resolution_minimality_image_in_radical(bound_a3):
    from quiverglue.modcat import radical_submodule

    res = hgy.projective_resolution(simple(bound_a3, "3"), 2)
    field = bound_a3.field
    for k, diff in enumerate(res.differentials):
        target = res.terms[k]
        _, rad_incl = radical_submodule(target)
        for v in target.dims:
            stacked = field.rank(rad_incl.blocks[v])
            joined = field.rank(np.hstack([rad_incl.blocks[v], diff.blocks[v]]))
            assert joined == stacked  # differential image inside the radical


def test_minimal_resolution_terms(bound_a3):
    res = hgy.projective_resolution(simple(bound_a3, "3"), 3)
    dims = [term.dim_vector() for term in res.terms]
    assert dims[0] == (1, 1, 0)  # P(3)
    assert dims[1] == (0, 1, 1)  # P(4)
    assert dims[2] == (0, 0, 1)  # P(5)
    assert res.terms[3].is_zero()
    # consecutive composites vanish
    assert res.augmentation.compose(res.differentials[0]).is_zero()
    assert res.differentials[0].compose(res.differentials[1]).is_zero()
