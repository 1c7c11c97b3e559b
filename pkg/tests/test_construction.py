import itertools
import math

import numpy as np
import pytest

from _instances import worked_example, random_path_instance
from pmeprcodes.construction import (
    CosetRepSpec,
    analyze_graph,
    brute_force_rep_count,
    build_complementary_set,
    canonical_perms,
    coset_rep,
    enumerate_reps,
    golay_census,
    golay_pair,
    iter_reps,
    path_form,
    rep_count,
    unrank_rep,
    verify_witness,
)
from pmeprcodes.correlation import is_complementary_set, pmepr
from pmeprcodes.errors import HypothesisError, ParameterError
from pmeprcodes.gbf import (
    RestrictionSpec,
    effective_degree,
    make_function,
    monomial,
    restrict,
    to_polyphase,
)


def test_analyze_graph_path():
    info = analyze_graph(make_function(3, 4, [(0b011, 2), (0b110, 2)]))
    assert info.is_quadratic and info.is_path
    assert info.end_vertices == (0, 2) and info.visiting_order == (0, 1, 2)
    assert info.edge_labels == {(0, 1): 2, (1, 2): 2}


def test_analyze_graph_rejections():
    cycle = analyze_graph(make_function(3, 4, [(0b011, 2), (0b110, 2), (0b101, 2)]))
    assert cycle.is_quadratic and not cycle.is_path
    assert not analyze_graph(make_function(3, 4, [(0b011, 1), (0b110, 2)])).is_path
    assert not analyze_graph(make_function(3, 2, [(0b111, 1)])).is_quadratic
    disconnected = make_function(4, 2, [(0b0011, 1), (0b1100, 1)])
    assert not analyze_graph(disconnected).is_path
    assert not analyze_graph(make_function(3, 2, [(0b011, 1)]), (0, 1, 2)).is_path


def test_analyze_graph_affine_terms_do_not_matter():
    f = path_form(4, 8, (2, 0, 3, 1), 4) + make_function(4, 8, [(0, 5), (0b0100, 3)])
    info = analyze_graph(f)
    assert info.is_path and info.end_vertices == (1, 2) and info.visiting_order == (1, 3, 0, 2)


def test_single_vertex_is_a_path():
    info = analyze_graph(make_function(3, 2, [(0b010, 1)]), (1,))
    assert info.is_path and info.end_vertices == (1, 1)


def test_worked_example_restrictions_are_paths():
    f = worked_example()
    for d in (0, 1):
        info = analyze_graph(restrict(f, RestrictionSpec((0,), (d,))), (1, 2, 3))
        assert info.is_path and len(info.visiting_order) == 3


def test_golay_pair_k0():
    f = make_function(2, 2, [(0b11, 1)])
    a, b = golay_pair(f, (), ())
    assert np.allclose(b.entries, to_polyphase(f + monomial(2, 2, [0], 1)).entries)
    assert is_complementary_set([a, b]).complementary


def test_golay_pair_worked_example():
    f = worked_example()
    for end in (1, 3):
        a, b = golay_pair(f, (0,), (1,), end_vertex=end)
        assert a.support.sum() == 8 and b.support.sum() == 8
        assert is_complementary_set([a, b]).complementary
    with pytest.raises(HypothesisError):
        golay_pair(f, (0,), (1,), end_vertex=2)


def test_golay_pair_names_failing_restriction():
    f = make_function(3, 2, [(0b111, 1)])
    assert is_complementary_set(golay_pair(f, (0,), (1,))).complementary
    with pytest.raises(HypothesisError, match=r"\{0: 0\}"):
        golay_pair(f, (0,), (0,))


def test_golay_census():
    census = golay_census(3, 2)
    assert len(census.sequences) == 48 == census.predicted
    assert census.all_complementary and census.max_pmepr <= 2 + 1e-6


def test_worked_example_witness():
    f = worked_example()
    w = build_complementary_set(f, (0,))
    assert len(w.members) == 4
    assert w.members[0] == (((0,), 0), f)
    assert [key for key, _ in w.members] == [((0,), 0), ((0,), 1), ((1,), 0), ((1,), 1)]
    assert w.end_vertex_choice == {(0,): 1, (1,): 1}
    assert verify_witness(w).complementary
    for seq in w.sequences():
        assert pmepr(seq.entries) <= 4 + 1e-6


def test_witness_selector_restrictions():
    f = worked_example()
    w = build_complementary_set(f, (0,), {(0,): 2, (1,): 3})
    for d, a in w.end_vertex_choice.items():
        assert restrict(w.selector, RestrictionSpec((0,), d)) == monomial(4, 2, [a])
    assert verify_witness(w).complementary


def test_k0_witness_is_golay_pair():
    f = path_form(3, 4, (1, 0, 2), 2)
    w = build_complementary_set(f, ())
    assert len(w.members) == 2 and verify_witness(w).complementary


def test_witness_hypothesis_errors():
    with pytest.raises(HypothesisError, match=r"\{0: 1\}"):
        build_complementary_set(make_function(3, 2, [(0b110, 1), (0b111, 1)]), (0,))
    with pytest.raises(HypothesisError):
        build_complementary_set(make_function(3, 3, [(0b011, 1)]), ())
    with pytest.raises(ParameterError):
        build_complementary_set(make_function(2, 2, [(0b11, 1)]), (0, 1))


@pytest.mark.parametrize("q,m,k", [(4, 5, 2), (2, 4, 1), (8, 5, 3), (2, 6, 2)])
def test_random_path_instances(rng, q, m, k):
    for _ in range(3):
        f, variables, ends = random_path_instance(rng, q, m, k)
        w = build_complementary_set(f, variables, ends)
        assert len(w.members) == 2 ** (k + 1)
        assert verify_witness(w).complementary
        assert all(pmepr(s.entries) <= 2 ** (k + 1) + 1e-6 for s in w.sequences())


def test_swapping_end_vertices(rng):
    for _ in range(5):
        f, variables, ends = random_path_instance(rng, 4, 5, 2)
        w = build_complementary_set(f, variables, ends)
        swapped = {}
        for d, a in ends.items():
            info = analyze_graph(restrict(f, RestrictionSpec(variables, d)), [v for v in range(5) if v not in variables])
            swapped[d] = info.end_vertices[1] if a == info.end_vertices[0] else info.end_vertices[0]
        assert verify_witness(build_complementary_set(f, variables, swapped)).complementary
        assert verify_witness(w).complementary


def test_coset_rep_examples():
    assert coset_rep(CosetRepSpec(3, 0, 1, {(): (0, 1, 2)})) == make_function(3, 2, [(0b011, 1), (0b110, 1)])
    ident = CosetRepSpec(3, 1, 1, {(0,): (0, 1), (1,): (0, 1)})
    assert coset_rep(ident) == make_function(3, 2, [(0b011, 1)])
    spec = CosetRepSpec(4, 1, 2, {(0,): (0, 1, 2), (1,): (1, 0, 2)})
    g = coset_rep(spec)
    for d, order in spec.perms.items():
        info = analyze_graph(restrict(g, RestrictionSpec((3,), d)), (0, 1, 2))
        assert info.is_path and info.visiting_order in (order, order[::-1])


def test_coset_rep_spec_validation():
    with pytest.raises(ParameterError):
        CosetRepSpec(3, 2, 1, {(0, 0): (0,), (0, 1): (0,), (1, 0): (0,), (1, 1): (0,)})
    with pytest.raises(ParameterError):
        CosetRepSpec(4, 1, 1, {(0,): (0, 1, 2)})
    with pytest.raises(ParameterError):
        CosetRepSpec(4, 1, 1, {(0,): (0, 1, 1), (1,): (0, 1, 2)})


def test_coset_rep_spec_json():
    spec = CosetRepSpec(5, 2, 2, {d: (2, 0, 1) for d in itertools.product((0, 1), repeat=2)})
    doc = spec.to_json()
    assert list(doc["perms"]) == ["00", "01", "10", "11"]
    assert CosetRepSpec.from_json(doc) == spec


def test_rep_restrictions_are_paths(rng):
    for m, k, h in [(4, 1, 1), (5, 2, 2), (6, 2, 3), (5, 1, 1)]:
        perms = list(itertools.permutations(range(m - k)))
        table = {d: perms[int(rng.integers(len(perms)))] for d in itertools.product((0, 1), repeat=k)}
        g = coset_rep(CosetRepSpec(m, k, h, table))
        tail = tuple(range(m - k, m))
        for d in table:
            info = analyze_graph(restrict(g, RestrictionSpec(tail, d)), range(m - k))
            assert info.is_path


def test_canonical_perms():
    assert canonical_perms(3) == ((0, 1, 2), (0, 2, 1), (1, 0, 2))
    assert len(canonical_perms(5)) == 60
    assert canonical_perms(1) == ((0,),)


@pytest.mark.parametrize("m,k,h,r,count", [(4, 1, 1, 2, 3), (4, 1, 1, 3, 9), (5, 2, 2, 2, 9)])
def test_enumerate_reps_examples(m, k, h, r, count):
    reps, predicted = enumerate_reps(m, k, h, r)
    assert predicted == count == len(reps) == len(set(reps))
    assert all(effective_degree(g) <= r for g in reps)


def test_enumerate_reps_is_subset_of_brute_force():
    m, k, h, r = 4, 1, 1, 2
    perms = list(itertools.permutations(range(m - k)))
    admissible = set()
    for table in itertools.product(perms, repeat=2):
        g = coset_rep(CosetRepSpec(m, k, h, dict(zip([(0,), (1,)], table))))
        if effective_degree(g) <= r:
            admissible.add(g)
    reps, _ = enumerate_reps(m, k, h, r)
    assert set(reps) <= admissible and len(admissible) == brute_force_rep_count(m, k, h, r)


@pytest.mark.parametrize("m,k,h,r", [(4, 1, 1, 2), (4, 1, 1, 3), (5, 2, 1, 2), (5, 2, 2, 2), (5, 2, 1, 3), (5, 2, 2, 3)])
def test_brute_force_never_below_prediction(m, k, h, r):
    assert brute_force_rep_count(m, k, h, r) >= rep_count(m, k, h, r)


def test_full_family_when_degree_is_unconstrained():
    # r >= k + 3 - h leaves every slot free
    m, k, h = 5, 1, 2
    r = k + 3 - h
    reps, predicted = enumerate_reps(m, k, h, r)
    assert predicted == (math.factorial(m - k) // 2) ** (1 << k) == len(set(reps))


def test_unrank_matches_iteration():
    specs = list(iter_reps(5, 2, 2, 2))
    assert [unrank_rep(5, 2, 2, 2, i) for i in range(len(specs))] == specs
    with pytest.raises(ParameterError):
        unrank_rep(5, 2, 2, 2, len(specs))


def test_rep_hypotheses():
    with pytest.raises(HypothesisError):
        rep_count(3, 2, 1, 2)
    with pytest.raises(HypothesisError):
        rep_count(4, 1, 1, 1)
