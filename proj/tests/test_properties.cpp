#include "lemmas.hpp"

#include <doctest.h>

using namespace treeca;
using namespace treeca::testing;

// Fewer instances than the acceptance run; the same checks.
namespace {

constexpr std::size_t kInstances = 12;

void expect_clean(const LemmaReport& rep) {
    INFO(rep.first);
    CHECK(rep.checks > 0);
    CHECK(rep.violations == 0);
}

} // namespace

TEST_CASE("down languages follow the rules") {
    Rng rng(101);
    LemmaReport rep;
    for (std::size_t i = 0; i < kInstances; ++i)
        lemma_down_languages(random_bta(rng, lemma_alphabet(i), 1 + i % 4), rep);
    expect_clean(rep);
}

TEST_CASE("upward quotients") {
    Rng rng(102);
    LemmaReport rep;
    for (std::size_t i = 0; i < kInstances; ++i)
        lemma_up_quotient(random_bta(rng, lemma_alphabet(i), 1 + i % 4), rep);
    expect_clean(rep);
}

TEST_CASE("downward quotients") {
    Rng rng(103);
    LemmaReport rep;
    for (std::size_t i = 0; i < kInstances; ++i)
        lemma_down_quotient(random_path_closed(rng, lemma_alphabet(i)), rep);
    lemma_down_quotient(load_bta_fixture("and1.bta"), rep);
    lemma_down_quotient(load_bta_fixture("abc.bta"), rep);
    expect_clean(rep);
}

TEST_CASE("post recursion") {
    Rng rng(104);
    LemmaReport rep;
    for (std::size_t i = 0; i < kInstances; ++i)
        lemma_post_recursion(random_bta(rng, lemma_alphabet(i), 1 + i % 4), rng, rep);
    expect_clean(rep);
}

TEST_CASE("pre composition") {
    Rng rng(105);
    LemmaReport rep;
    for (std::size_t i = 0; i < kInstances; ++i)
        lemma_pre_composition(random_path_closed(rng, lemma_alphabet(i)), rep);
    lemma_pre_composition(load_bta_fixture("and1.bta"), rep);
    lemma_pre_composition(load_bta_fixture("abc.bta"), rep);
    expect_clean(rep);
}

TEST_CASE("upward congruence") {
    Rng rng(106);
    LemmaReport rep;
    for (std::size_t i = 0; i < kInstances; ++i)
        lemma_up_congruence(random_bta(rng, lemma_alphabet(i), 1 + i % 4), rng, rep);
    expect_clean(rep);
}

TEST_CASE("downward congruence") {
    Rng rng(107);
    LemmaReport rep;
    for (std::size_t i = 0; i < kInstances; ++i)
        lemma_down_congruence(random_path_closed(rng, lemma_alphabet(i)), rng, rep);
    lemma_down_congruence(load_bta_fixture("and1.bta"), rng, rep);
    lemma_down_congruence(load_bta_fixture("abc.bta"), rng, rep);
    expect_clean(rep);
}

TEST_CASE("block characterizations") {
    Rng rng(108);
    LemmaReport rep;
    for (std::size_t i = 0; i < kInstances; ++i)
        lemma_blocks(random_trimmed_bta(rng, lemma_alphabet(i)), rep);
    lemma_blocks(load_bta_fixture("bool2.bta"), rep);
    expect_clean(rep);
}
