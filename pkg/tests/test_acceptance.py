"""Acceptance criteria, one test per criterion.

Each test prints one PASS line on success; a failing assertion fails the
test and with it the criterion.  All tolerances are exact (set equality,
zero disagreements); runtimes stay well inside the stated budgets.
"""

import itertools
import random

from selfsim import (
    GroupWord,
    apply_word,
    build_graph_automaton,
    builtin,
    check_acyclic_no_positive_identity,
    check_cycle_torsion,
    check_reducible,
    commutator,
    dichotomy,
    dual,
    dual_path,
    elements_equal,
    embed_in_product,
    enriched_dual,
    equivalent,
    exponent_sums,
    fragile_member,
    inverse_symbol,
    is_identity,
    is_invertible,
    is_reduced,
    line_graph_complement,
    nucleus,
    parse_word,
    presentation_from_tree,
    projections_equal,
    restrict_word,
    semigroup_eq_via_action,
    shortest_representative,
    stabilizes_level,
    sym_quotient_order,
    trace_word,
    verify_loop_shortening,
    virtual_endo,
    wp_fragile,
    wreath,
)
from selfsim import FiniteAction, build_reducible_automaton, decorated_schreier_graph
from selfsim.action import iter_reduced_words
from selfsim.tracemonoid import normal_form

from test_mealy import FIG3_ROWS, make_star


def ok(number, message):
    print("ACCEPTANCE %d: PASS - %s" % (number, message))


def test_criterion_01_fixture_fidelity(star):
    assert build_graph_automaton(builtin("star3")) == make_star()
    d = dual(star)
    assert d.states == ("0", "1", "2", "3")
    assert d.alphabet == ("a", "b", "c", "id")
    for (x, s), (nxt, out) in FIG3_ROWS.items():
        assert (d.next(x, s), d.out(x, s)) == (nxt, out)
    ed = enriched_dual(star)
    assert len(ed.states) == 4 and len(ed.alphabet) == 8
    a_inv, id_inv = inverse_symbol("a"), inverse_symbol("id")
    assert (ed.next("0", "a"), ed.out("0", "a")) == ("1", "a")
    assert (ed.next("0", a_inv), ed.out("0", a_inv)) == ("1", id_inv)
    assert (ed.next("1", "a"), ed.out("1", "a")) == ("0", "id")
    assert (ed.next("1", a_inv), ed.out("1", a_inv)) == ("0", a_inv)
    ok(1, "star transition tables and dual constructions match the references")


def test_criterion_02_dual_path_worked_example(fig5):
    path = dual_path(fig5, "1", "e2 e1 e1 e4")
    assert path.vertices == ("1", "1", "2", "1", "5")
    assert path.outputs == ("id", "e1", "id", "e4")
    assert path.condensed == ("1", "2", "1", "5")
    ok(2, "dual walk of e2 e1 e1 e4 from vertex 1 condenses to 1 2 1 5")


def test_criterion_03_wp_method_agreement(star):
    gens = [s for s in star.states if s != star.sink]
    disagreements = 0
    identities = 0
    total = 0
    for ls in iter_reduced_words(gens, 6):
        total += 1
        by_closure = is_identity(star, ls).identity
        by_fragile = wp_fragile(star, ls, 8).identity
        if by_closure != by_fragile:
            disagreements += 1
        identities += by_closure
    assert disagreements == 0
    ok(3, "closure and level methods agree on %d words (%d identities)"
       % (total, identities))


def test_criterion_04_commutation_criterion(fig5, fig5_graph):
    independent = set(map(frozenset, line_graph_complement(fig5_graph)))
    for e, f in itertools.combinations(fig5_graph.edge_names(), 2):
        w = commutator(parse_word(e, fig5), parse_word(f, fig5))
        assert is_identity(fig5, w).identity == (frozenset((e, f)) in independent)
    ok(4, "edge generators commute exactly on the non-incident pairs")


def test_criterion_05_exponent_sum_theorem(fig5):
    gens = [s for s in fig5.states if s != fig5.sink]
    identities = 0
    total = 0
    for ls in iter_reduced_words(gens, 6, include_empty=False):
        total += 1
        sums = exponent_sums(ls, gens)
        verdict = is_identity(fig5, ls).identity
        if any(sums):
            assert not verdict
        if verdict:
            identities += 1
            assert not any(sums)
    assert identities > 0
    ok(5, "all %d words respect the zero-exponent-sum law (%d identities)"
       % (total, identities))


def _trace_partitions(aut, graph, max_len):
    pres = presentation_from_tree(graph)
    letters = pres.letters
    words = [ws for n in range(max_len + 1)
             for ws in itertools.product(letters, repeat=n)]
    classes = {}
    for ws in words:
        classes.setdefault(normal_form(trace_word(pres, ws)).letters, []).append(ws)
    # one class representative per normal form
    reps = sorted(classes)
    # within each class every member matches its representative on all oracles
    for nf, members in classes.items():
        rep_word = trace_word(pres, nf)
        for ws in members:
            w = trace_word(pres, ws)
            assert equivalent(w, rep_word)
            assert projections_equal(w, rep_word)
            assert semigroup_eq_via_action(aut, ws, nf).equal
    # distinct representatives are distinct for all oracles; cheap level
    # signatures split almost everything, the exact oracle settles collisions
    probes = [u for n in range(3) for u in itertools.product(aut.alphabet, repeat=n)]
    buckets = {}
    for nf in reps:
        sig = tuple(apply_word(aut, [(x, 1) for x in nf], u) for u in probes)
        buckets.setdefault(sig, []).append(nf)
    for bucket in buckets.values():
        for u_l, v_l in itertools.combinations(bucket, 2):
            assert not semigroup_eq_via_action(aut, u_l, v_l).equal
            u, v = trace_word(pres, u_l), trace_word(pres, v_l)
            assert not projections_equal(u, v)
    return len(words), len(reps)


def test_criterion_06_trace_monoid_theorem(fig5, fig5_graph, star, star_graph):
    words1, classes1 = _trace_partitions(fig5, fig5_graph, 4)
    words2, classes2 = _trace_partitions(star, star_graph, 4)
    ok(6, "normal form, action and projection oracles agree: "
          "%d words in %d classes and %d words in %d classes"
       % (words1, classes1, words2, classes2))


def test_criterion_07_orientation_sensitivity(triangle_acyclic, triangle_cyclic):
    report = check_acyclic_no_positive_identity(triangle_acyclic, 6)
    assert report.status == "Pass"
    assert check_cycle_torsion(triangle_cyclic, "a1 a2 a3", 3)
    assert not is_identity(triangle_cyclic, "a1 a2 a3").identity
    ok(7, "acyclic orientation has no positive identities up to length 6; "
          "the oriented cycle squares to the identity")


def test_criterion_08_symmetric_quotient(star, fig5):
    assert sym_quotient_order(star) == 24
    assert sym_quotient_order(fig5) == 720
    ok(8, "level-one quotients have orders 24 and 720")


def test_criterion_09_nucleus(adding, star):
    nuc = nucleus(adding)
    expected = {GroupWord(), parse_word("e", adding), parse_word("e^-1", adding)}
    assert set(nuc.elements) == expected
    for u, v in itertools.combinations(nuc.elements, 2):
        assert not elements_equal(adding, u, v)
    star_nuc = nucleus(star)
    assert len(star_nuc) >= 7
    for rep in star_nuc.elements:
        short = shortest_representative(star, rep, 4)
        assert short is not None and len(short) <= 4
        for section in star_nuc.sections[rep].values():
            assert section in star_nuc.perms
    ok(9, "adding machine nucleus is {1, e, e^-1}; the star nucleus (%d elements) "
          "stabilizes with representatives of length <= 4" % len(star_nuc))


def test_criterion_10_fixed_vertex_shortening(fig5):
    gens = [s for s in fig5.states if s != fig5.sink]
    checked = 0
    for ls in iter_reduced_words(gens, 5, include_empty=False):
        w = GroupWord(ls)
        for x in fig5.alphabet:
            if apply_word(fig5, w, (x,)) == (x,):
                assert len(restrict_word(fig5, w, (x,))) < len(w)
                checked += 1
    assert checked > 0
    ok(10, "every word of length <= 5 fixing a vertex shortens there (%d checks)"
       % checked)


def test_criterion_11_reducibility(star, fig5, basilica, demo):
    assert check_reducible(star, 5, 8).status == "Pass"
    assert check_reducible(fig5, 5, 8).status == "Pass"
    assert check_reducible(basilica, 4, 4).status == "Pass"
    report = check_reducible(demo, 3, 6)
    assert report.status == "Counterexample"
    assert report.counterexample == (parse_word("s", demo), "2")
    ok(11, "reducibility scan passes on the star, the tree and basilica, "
           "and exhibits the demo counterexample")


def test_criterion_12_schreier_pipeline():
    action = FiniteAction(["a"], 3, {"a": (1, 2, 0)}, basepoint=0)
    aut = build_reducible_automaton(action)
    assert is_invertible(aut)
    assert enriched_dual(aut) == decorated_schreier_graph(action)
    report = verify_loop_shortening(aut, 6)
    assert report.status == "Pass"
    assert is_reduced(aut)
    assert check_reducible(aut, 4, 8).status == "Pass"
    ok(12, "triangle coset machine is invertible, round-trips exactly and "
           "shortens all loops up to length 6")


def test_criterion_13_fragile_algebra(star, fig5):
    rng = random.Random(97)

    def stabilizer_words(aut, count, max_len=6):
        gens = [s for s in aut.states if s != aut.sink]
        found = []
        while len(found) < count:
            letters = tuple((rng.choice(gens), rng.choice((1, -1)))
                            for _ in range(rng.randrange(2, max_len + 1)))
            w = GroupWord(letters)
            if stabilizes_level(aut, w, 1):
                found.append(w)
        return found

    for aut in (star, fig5):
        singles = stabilizer_words(aut, 100)
        pairs = list(zip(singles[0::2], singles[1::2]))
        # kernel law: all components trivial exactly for level-1 members
        for w in singles:
            components = embed_in_product(aut, w, 1)
            assert all(c.is_empty() for c in components.values()) \
                == fragile_member(aut, w, 1)
        # multiplicativity of the residual maps on the stabilizer
        for w1, w2 in pairs:
            for x in aut.alphabet:
                assert virtual_endo(aut, (x,), w1 * w2) \
                    == virtual_endo(aut, (x,), w1) * virtual_endo(aut, (x,), w2)
        # membership is monotone in the level
        gens = [s for s in aut.states if s != aut.sink]
        for _ in range(100):
            letters = tuple((rng.choice(gens), rng.choice((1, -1)))
                            for _ in range(rng.randrange(7)))
            w = GroupWord(letters)
            if fragile_member(aut, w, 1):
                assert fragile_member(aut, w, 2)
            if fragile_member(aut, w, 2):
                assert fragile_member(aut, w, 3)
    ok(13, "kernel law, multiplicativity and level monotonicity hold on "
           "100 sampled stabilizer pairs and 100 words per machine")


def test_criterion_14_dichotomy(star):
    commuting = [(parse_word("a"), parse_word("b")),
                 (parse_word("a a"), parse_word("b b b")),
                 (parse_word(""), parse_word("b^-1"))]
    assert dichotomy(commuting).kind == "Abelian"
    b2 = parse_word("b b", star)
    c2 = parse_word("c c", star)
    assert stabilizes_level(star, b2, 1) and stabilizes_level(star, c2, 1)
    assert not is_identity(star, commutator(b2, c2)).identity
    rows = [tuple(embed_in_product(star, w, 1).values()) for w in (b2, c2)]
    result = dichotomy(rows)
    assert result.kind == "FreePair"
    assert result.pair == (0, 1)
    ok(14, "commuting tuples classified abelian; star stabilizer squares "
           "embed to a free pair in component %d" % result.component)


def test_criterion_15_bounded_center(star):
    gens = [s for s in star.states if s != star.sink]
    words = 0
    for ls in iter_reduced_words(gens, 3, include_empty=False):
        w = GroupWord(ls)
        if is_identity(star, w).identity:
            continue
        words += 1
        assert any(
            not is_identity(star, commutator(w, parse_word(g, star))).identity
            for g in gens)
    assert words == 186
    ok(15, "all %d nontrivial words of length <= 3 fail to commute with "
           "some generator" % words)
