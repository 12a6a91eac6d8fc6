#include "support.hpp"
#include "treeca/error.hpp"

#include <doctest.h>

using namespace treeca;
using namespace treeca::testing;

TEST_CASE("post on BOOL2") {
    const Bta a = load_bta_fixture("bool2.bta");
    const Tree t = T("and(or(T,F),and(T,T))");
    CHECK(post_tree(a, t, S(a, {"q0", "q1"})) == S(a, {"q1"}));
    CHECK(post_tree(a, t, S(a, {"q0"})).empty());
    CHECK(post_tree(a, t) == S(a, {"q1"}));
    CHECK(accepts(a, T("and(or(T,F),T)")));
    CHECK_FALSE(accepts(a, T("or(F,F)")));
    CHECK(accepts(load_bta_fixture("and1.bta"), T("T")));
    CHECK_THROWS_AS(accepts(a, T("xor(T,F)")), RankError);
    CHECK_THROWS_AS(accepts(a, T("and(T)")), RankError);
}

TEST_CASE("seeded runs and weak pre") {
    const Bta a = load_bta_fixture("bool2.bta");
    CHECK(seeded_post(a, C("or(and(T,F),<>)"), a.state("q1")) == S(a, {"q1"}));
    CHECK(seeded_post(a, C("and(or(F,F),<>)"), a.state("q0")) == S(a, {"q0"}));
    CHECK(seeded_post(a, C("and(or(F,F),<>)"), a.state("q1")) == S(a, {"q0"}));
    CHECK(seeded_post(a, Context::hole(), a.state("q0")) == S(a, {"q0"}));

    const Bta abc = load_bta_fixture("abc.bta");
    CHECK(wpre(abc, C("f(<>,a)"), abc.final_states()) == S(abc, {"qa", "q_dot"}));
    CHECK(wpre(abc, C("f(<>,b)"), abc.final_states()) == S(abc, {"qb", "q_dot"}));
    CHECK(wpre(abc, C("f(c,<>)"), abc.final_states()) == S(abc, {"qc", "q_dot"}));
    CHECK(wpre(abc, Context::hole(), abc.final_states()) == S(abc, {"qf"}));
    CHECK(wpre(abc, C("f(f(a,a),<>)"), abc.final_states()).empty());
    CHECK_THROWS_AS(wpre(abc, Context::hole(), StateSet{9}), UnknownStateError);
}

TEST_CASE("structure is canonical") {
    const Bta x = BtaBuilder(bool_alphabet())
                      .rule("T", {}, "p")
                      .rule("F", {}, "n")
                      .rule("and", {"p", "p"}, "p")
                      .final("p")
                      .build();
    const Bta y = BtaBuilder(bool_alphabet())
                      .final("p")
                      .rule("and", {"p", "p"}, "p")
                      .rule("F", {}, "n")
                      .rule("T", {}, "p")
                      .rule("T", {}, "p")
                      .build();
    CHECK(x == y);
    CHECK(x.state_names() == std::vector<std::string>{"n", "p"});
    CHECK(x.initial_states() == S(x, {"n", "p"}));
    CHECK_THROWS_AS(BtaBuilder(bool_alphabet()).rule("and", {"p"}, "p").build(), RankError);
    CHECK_THROWS_AS(BtaBuilder(bool_alphabet()).rule("or", {"p", "p"}, "p").build(), RankError);
    CHECK_THROWS_AS(x.state("zz"), UnknownStateError);
}

TEST_CASE("state names") {
    CHECK(is_state_name("q0"));
    CHECK(is_state_name("{q0,q1}"));
    CHECK(is_state_name("({a,b},m)"));
    CHECK(is_state_name("{}"));
    CHECK_FALSE(is_state_name("q0 q1"));
    CHECK_FALSE(is_state_name("{q0,"));
    CHECK_FALSE(is_state_name(""));
    CHECK(subset_name({"q1", "q0"}) == "{q0,q1}");
    CHECK(subset_name({}) == "{}");
    CHECK(pair_name("{a}", "m") == "({a},m)");
}

TEST_CASE("trimming") {
    const Bta star = load_bta_fixture("and1_star.bta");
    CHECK(has_unreachable_states(star));
    CHECK(reachable_states(star) == S(star, {"q0", "q1"}));
    const Bta expected = BtaBuilder({{"F", 0}, {"T", 0}, {"and", 2}, {"star", 2}})
                             .rule("T", {}, "q1")
                             .rule("F", {}, "q0")
                             .rule("and", {"q0", "q0"}, "q0")
                             .rule("and", {"q0", "q1"}, "q0")
                             .rule("and", {"q1", "q0"}, "q0")
                             .rule("and", {"q1", "q1"}, "q1")
                             .final("q1")
                             .build();
    CHECK(trim_unreachable(star) == expected);

    const Bta and1 = load_bta_fixture("and1.bta");
    CHECK_FALSE(has_unreachable_states(and1));
    CHECK(useful_states(and1) == S(and1, {"q1"}));
    CHECK(trim_empty(and1).state_names() == std::vector<std::string>{"q1"});
    CHECK(trim_unreachable(and1) == and1);
}

TEST_CASE("determinism predicates") {
    const Bta bool2 = load_bta_fixture("bool2.bta");
    CHECK(is_deterministic(bool2));
    CHECK_FALSE(is_codeterministic(bool2));
    CHECK(is_complete(bool2));
    const Bta abc = load_bta_fixture("abc.bta");
    CHECK_FALSE(is_deterministic(abc));
    CHECK_FALSE(is_complete(abc));
    CHECK(is_codeterministic(load_bta_fixture("abc_hd.bta")));
    CHECK(is_codeterministic(load_bta_fixture("and1_hd.bta")));
    CHECK_FALSE(is_codeterministic(load_bta_fixture("abc_wpre_hd.bta")));
    CHECK(is_deterministic(load_tta_fixture("and1r.tta")) == false);
}

TEST_CASE("top-down acceptance") {
    const Tta r = load_tta_fixture("bool2r.tta");
    CHECK(tta_accepts(r, T("or(and(T,T),F)")));
    CHECK_FALSE(tta_accepts(r, T("or(F,F)")));
    CHECK(tta_pre_tree(r, T("or(and(T,T),F)"), r.all_states()) == S(r, {"q1"}));
    CHECK(tta_pre_tree(r, T("and(T,F)"), r.all_states()) == S(r, {"q0"}));
}

TEST_CASE("post agrees with a direct run") {
    Rng rng(11);
    for (int round = 0; round < 40; ++round) {
        const Bta a = random_bta(rng, mixed_alphabet(), 1 + round % 4);
        PostCache cache(a);
        for (const Tree& t : enumerate_trees(a.alphabet(), 3)) {
            CHECK(cache.post(t) == naive_post(a, t));
            CHECK(post_tree(a, t, a.final_states()) == naive_post(a, t, a.final_states()));
        }
    }
}

TEST_CASE("trimming preserves the language") {
    Rng rng(12);
    for (int round = 0; round < 40; ++round) {
        const Bta a = random_bta(rng, binary_alphabet(), 1 + round % 4);
        const Bta u = trim_unreachable(a);
        const Bta e = trim_empty(a);
        CHECK_FALSE(has_unreachable_states(u));
        CHECK(useful_states(e) == e.all_states());
        const Bta both = trim_empty(u);
        CHECK(useful_states(both) == both.all_states());
        CHECK(reachable_states(both) == both.all_states());
        for (const Tree& t : enumerate_trees(a.alphabet(), 4)) {
            const bool in = accepts(a, t);
            CHECK(accepts(u, t) == in);
            CHECK(accepts(e, t) == in);
            CHECK(tta_accepts(reverse_bta(a), t) == in);
        }
    }
}
