from itertools import product

import pytest

from cycdend import trees as tr
from cycdend import treecat as tc


def brute_hom(s, t):
    """Oracle: all involutive arc maps filtered by the tree-map conditions."""
    orbits = []
    seen = set()
    for a in sorted(s.arcs, key=repr):
        if a in seen:
            continue
        seen.add(a)
        seen.add(s.dagger(a))
        orbits.append(a)
    out = []
    for choice in product(sorted(t.arcs, key=repr), repeat=len(orbits)):
        m = {}
        for a, b in zip(orbits, choice):
            m[a] = b
            m[s.dagger(a)] = t.dagger(b)
        f = tc.TreeMap(s, t, m)
        if not f.validate():
            out.append(f)
    return out


EDGE = tr.make_edge()
L1 = tr.make_linear(1)
L2 = tr.make_linear(2)
S2 = tr.make_star(2)
S3 = tr.make_star(3)


def test_hom_edge_edge():
    assert len(tc.hom(EDGE, EDGE)) == 2


def test_hom_from_edge_counts_arcs():
    for t in [EDGE, L1, L2, S3]:
        assert len(tc.hom(EDGE, t)) == len(t.arcs)
    assert len(tc.hom(EDGE, L1)) == 4


def test_hom_star2_edge():
    maps = tc.hom(S2, EDGE)
    assert len(maps) == 2
    for f in maps:
        c = tc.classify(f)
        assert c.negative and c.codimension == -1


def test_hom_matches_brute_force():
    small = [EDGE, tr.make_star(1), S2, L2]
    for s in small:
        for t in small:
            got = {f for f in tc.hom(s, t)}
            want = {f for f in brute_hom(s, t)}
            assert got == want, (s, t)


def test_hom_against_star3():
    got = {f for f in tc.hom(S3, S3)}
    want = {f for f in brute_hom(S3, S3)}
    assert got == want
    # automorphisms of the 3-star: all 6 are invertible
    assert len(got) == 6
    assert all(tc.is_isomorphism(f) for f in got)


def test_compose_identity_and_closure():
    for t in [EDGE, L1, L2]:
        for f in tc.hom(L1, t):
            assert tc.compose(f, tc.identity(L1)) == f
            assert tc.compose(tc.identity(t), f) == f


def test_composition_closed_at_bounds():
    cat = tc.TreeCategory(2, 2)
    for s in cat.objects:
        for t in cat.objects:
            for u in cat.objects:
                target = {repr(sorted(h.arc_map.items(), key=repr)) for h in cat.hom(s, u)}
                for f in cat.hom(s, t):
                    for g in cat.hom(t, u):
                        gf = tc.compose(g, f)
                        assert not gf.validate()
                        assert repr(sorted(gf.arc_map.items(), key=repr)) in target


def test_classify_identity():
    c = tc.classify(tc.identity(L2))
    assert c.active and c.inert and c.positive and c.negative
    assert c.codimension == 0


def test_maps_out_of_edge_are_inert():
    for t in [EDGE, L1, L2, S3]:
        for f in tc.hom(EDGE, t):
            assert tc.classify(f).inert


def test_classify_functorial_on_signs():
    cat = tc.TreeCategory(2, 2)
    for s in cat.objects:
        for t in cat.objects:
            for u in cat.objects:
                for f in cat.hom(s, t):
                    cf = tc.classify(f)
                    for g in cat.hom(t, u):
                        cg = tc.classify(g)
                        cgf = tc.classify(tc.compose(g, f))
                        if cf.positive and cg.positive:
                            assert cgf.positive
                        if cf.negative and cg.negative:
                            assert cgf.negative


def test_degree_monotonicity():
    cat = tc.TreeCategory(2, 3)
    for f in cat.all_maps():
        c = tc.classify(f)
        iso = tc.is_isomorphism(f)
        if iso:
            assert c.codimension == 0
        else:
            if c.positive:
                assert c.codimension > 0
            if c.negative:
                assert c.codimension < 0


def test_factor_active_inert_examples():
    # an inert map factors as (iso, itself-ish); an active one as (itself, iso)
    inc = tc.TreeMap(EDGE, L2, {0: 1, ~0: ~1})
    act, ine = tc.factor_active_inert(inc)
    assert tc.classify(act).active and tc.classify(ine).inert
    assert tc.compose(ine, act) == inc
    assert act.target.arcs == frozenset({1, ~1})
    for f in tc.hom(L1, EDGE):  # active codegeneracies
        act, ine = tc.factor_active_inert(f)
        assert tc.is_isomorphism(ine)
        assert tc.compose(ine, act) == f


def test_factor_active_inert_unique_middle_iso():
    cat = tc.TreeCategory(2, 2)
    for s in cat.objects:
        for t in cat.objects:
            for f in cat.hom(s, t):
                act, ine = tc.factor_active_inert(f)
                assert tc.compose(ine, act) == f
                mid = act.target
                # any other factorization through an enumerated middle is
                # related by exactly one middle isomorphism
                for m2 in cat.objects:
                    for a2 in cat.hom(s, m2):
                        if not tc.classify(a2).active:
                            continue
                        for i2 in cat.hom(m2, t):
                            if not tc.classify(i2).inert:
                                continue
                            if tc.compose(i2, a2) != f:
                                continue
                            links = [
                                m
                                for m in tr.isomorphisms(mid, m2)
                                if tc.compose(tc.TreeMap(mid, m2, m), act) == a2
                                and tc.compose(i2, tc.TreeMap(mid, m2, m)) == ine
                            ]
                            assert len(links) == 1


def test_factor_reedy_examples():
    inc = tc.TreeMap(EDGE, L2, {0: 1, ~0: ~1})  # positive
    neg, pos = tc.factor_reedy(inc)
    assert tc.is_isomorphism(neg)
    sigma = tc.hom(L1, EDGE)[0]  # a codegeneracy
    neg, pos = tc.factor_reedy(sigma)
    assert tc.is_isomorphism(pos)
    assert tc.compose(pos, neg) == sigma


def test_factor_reedy_all_small_maps():
    cat = tc.TreeCategory(2, 2)
    for f in cat.all_maps():
        neg, pos = tc.factor_reedy(f)
        assert tc.compose(pos, neg) == f
        assert tc.classify(neg).negative and tc.classify(pos).positive


def test_cofaces_into_linear2():
    cfs = tc.cofaces(L2)
    kinds = sorted(kind for _, kind in cfs)
    assert kinds == ["inner", "outer", "outer"]
    for delta, kind in cfs:
        c = tc.classify(delta)
        assert c.positive and c.codimension == 1
        assert (kind == "inner") == c.active


def test_cofaces_into_edge_none():
    assert tc.cofaces(EDGE) == []


def test_codegeneracies_linear1():
    out = tc.codegeneracies(L1)
    assert len(out) == 1
    assert tc.classify(out[0]).negative


def test_coface_completeness_against_brute_force():
    # every positive codimension-1 map into T is isomorphic over T to
    # exactly one enumerated coface class
    for t in [L1, L2, S3, tr.make_star(2)]:
        cands = tr.enumerate_trees(
            max(len(t.vertices) - 1, 0), max((t.valence(v) for v in t.vertices), default=1) * 2
        )
        cfs = tc.cofaces(t)
        for s in cands:
            if len(s.vertices) != len(t.vertices) - 1:
                continue
            for f in tc.hom(s, t):
                c = tc.classify(f)
                if not (c.positive and c.codimension == 1):
                    continue
                matches = [d for d, _ in cfs if tc.same_coface_class(f, d)]
                assert len(matches) == 1


def test_codegeneracy_completeness():
    for t in [L1, L2, tr.make_linear(3)]:
        sigmas = tc.codegeneracies(t)
        cands = tr.enumerate_trees(len(t.vertices) - 1, 3)
        found = []
        for u in cands:
            for f in tc.hom(t, u):
                c = tc.classify(f)
                if c.negative and c.codimension == -1:
                    found.append(f)
        # each brute map is iso-over-t (post-composition) to exactly one sigma
        for f in found:
            matches = []
            for sg in sigmas:
                for m in tr.isomorphisms(sg.target, f.target):
                    if tc.compose(tc.TreeMap(sg.target, f.target, m), sg) == f:
                        matches.append(sg)
                        break
            assert len(matches) == 1


def test_simplicial_identities_on_linear_trees():
    # composites of a coface after a codegeneracy are valid maps, and the
    # matching index pairs compose to the identity
    sigmas = tc.codegeneracies(L2)
    deltas = [d for d, _ in tc.cofaces(L2)]
    identities = 0
    for sg in sigmas:
        for d in deltas:
            if d.source != sg.target:
                continue
            comp = tc.compose(sg, d)
            assert not comp.validate()
            if tc.is_identity(comp):
                identities += 1
    assert identities >= 1


def test_two_cofaces_compose_positive():
    for d1, _ in tc.cofaces(L1):
        for d2, _ in tc.cofaces(L2):
            if d2.source == d1.target:
                comp = tc.compose(d2, d1)
                assert not comp.validate()
                c = tc.classify(comp)
                assert c.positive and c.codimension == 2


def test_active_iff_no_outer_coface_factor():
    cat = tc.TreeCategory(2, 3)
    for s in cat.objects:
        for t in cat.objects:
            outers = [d for d, kind in tc.cofaces(t) if kind == "outer"]
            for f in cat.hom(s, t):
                factors = False
                for d in outers:
                    for g in tc.hom(s, d.source):
                        if tc.compose(d, g) == f:
                            factors = True
                            break
                    if factors:
                        break
                assert tc.classify(f).active == (not factors)


def test_lift_identity_edge():
    rooted = tc.lift(tc.identity(EDGE), 0)
    assert rooted.source_root == 0 and rooted.target_root == 0
    assert not rooted.validate()


def test_lift_edge_swap():
    swap = tc.TreeMap(EDGE, EDGE, {0: ~0, ~0: 0})
    rooted = tc.lift(swap, 0)
    assert rooted.source_root == ~0


def test_lift_active_by_source():
    # the inner coface linear(1) -> linear(2): active
    delta = next(d for d, kind in tc.cofaces(L2) if kind == "inner")
    r0 = next(iter(delta.source.boundary))
    rooted = tc.lift_active_by_source(delta, r0)
    assert rooted.target_root == delta.arc_map[r0]


def test_discrete_fibration_exhaustive_small():
    cat = tc.TreeCategory(2, 3)
    for s in cat.objects:
        for t in cat.objects:
            for f in cat.hom(s, t):
                for root_t in t.boundary:
                    lifts = [
                        r
                        for r in s.boundary
                        if tc.preserves_orientation(f, r, root_t)
                    ]
                    assert len(lifts) == 1


def test_rooted_hom_composition_closed():
    objs = [(EDGE, 0), (L1, 1), (L2, 2)]
    for (s, rs) in objs:
        for (t, rt) in objs:
            for (u, ru) in objs:
                hsu = tc.rooted_hom(s, rs, u, ru)
                for f in tc.rooted_hom(s, rs, t, rt):
                    for g in tc.rooted_hom(t, rt, u, ru):
                        comp = tc.compose(g.map, f.map)
                        rcomp = tc.RootedTreeMap(comp, rs, ru)
                        assert not rcomp.validate()
                        assert rcomp in hsu


def test_ez_check_small():
    report = tc.ez_check(2, 3)
    assert report["pass"], report
    for k in (1, 2, 3, 4):
        assert report["properties"][k]["pass"]


def test_ez_sections_of_the_two_codegeneracies():
    sigmas = tc.codegeneracies(L2)
    # linear(2) has two 2-valent vertices, hence two codegeneracy classes
    assert len(sigmas) == 2
    secs = []
    for sg in sigmas:
        secs.append(
            frozenset(
                g
                for g in tc.hom(sg.target, L2)
                if tc.is_identity(tc.compose(sg, g))
            )
        )
        assert secs[-1]
    assert secs[0] != secs[1]
