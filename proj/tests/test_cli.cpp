#include "support.hpp"
#include "treeca/cli.hpp"
#include "treeca/minimize.hpp"
#include "treeca/oracle.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <sstream>

using namespace treeca;
using namespace treeca::testing;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

// File arguments of the form "@name" resolve to fixtures.
Outcome run(std::vector<std::string> args) {
    for (auto& a : args)
        if (!a.empty() && a[0] == '@')
            a = fixture_path(a.substr(1));
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("treeca_cli_" + name)).string();
}

const std::vector<std::string> kBtaFixtures = {"bool2.bta", "bool2_hu.bta", "bool2_split.bta", "and1.bta",
                                               "and1_hd.bta", "abc.bta", "abc_hd.bta", "abc_wpre_hd.bta",
                                               "and1_star.bta"};

} // namespace

TEST_CASE("cli predicates") {
    auto r = run({"is-path-closed", "@bool2.bta"});
    CHECK(r.code == cli::kFalse);
    CHECK(r.out == "not path-closed\n");
    r = run({"is-path-closed", "@bool2.bta", "--witness"});
    CHECK(r.out == "not path-closed\noutside the language but every path occurs in it: or(F,F)\n");
    CHECK(run({"is-path-closed", "@and1.bta"}).code == cli::kTrue);

    r = run({"member", "@and1.bta", "-t", "and(T,T)"});
    CHECK(r.code == cli::kTrue);
    CHECK(r.out == "accepted\n");
    r = run({"member", "@bool2r.tta", "-t", "or(F,F)"});
    CHECK(r.code == cli::kFalse);
    CHECK(r.out == "rejected\n");

    CHECK(run({"equiv", "@bool2.bta", "@bool2_hu.bta"}).out == "equivalent\n");
    CHECK(run({"isomorphic", "@and1.bta"}).code == cli::kUsageError);
    CHECK(run({"isomorphic", "@and1_hd.bta", "@and1_hd.bta"}).code == cli::kTrue);
    r = run({"rtp-equiv", "@bool2.bta", "-c", "or(<>,T)", "-c", "or(T,<>)"});
    CHECK(r.code == cli::kFalse);
    CHECK(r.out == "not equivalent\n");
    CHECK(run({"rtp-equiv", "@bool2.bta", "-c", "or(or(T,F),<>)", "-c", "or(or(T,T),<>)"}).code == cli::kTrue);
}

TEST_CASE("cli equivalence witness") {
    const std::string path = temp_file("codet_bool2.bta");
    REQUIRE(run({"codeterminize", "@bool2.bta", "-o", path}).code == cli::kTrue);
    auto r = run({"equiv", "@bool2.bta", path, "--witness"});
    CHECK(r.code == cli::kFalse);
    const auto lib = check_equivalence(load_bta_fixture("bool2.bta"), std::get<Bta>(load_automaton(path)));
    CHECK(r.out == "not equivalent\n" + lib.reason + "\n");
    CHECK(r.out.find("or(F,F)") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("cli set queries") {
    CHECK(run({"pre", "@bool2.bta", "-c", "or(and(T,F),<>)"}).out == "q0 q1\n");
    CHECK(run({"pre", "@abc.bta", "-c", "f(f(a,a),<>)"}).out == "\n");
    CHECK(run({"wpre", "@abc.bta", "-c", "f(<>,a)"}).out == "q_dot qa\n");
    CHECK(run({"post", "@bool2.bta", "-t", "or(F,T)"}).out == "q1\n");
    CHECK(run({"post", "@bool2.bta", "-t", "and(or(T,F),and(T,T))", "-s", "q0"}).out == "\n");

    auto r = run({"pre", "@and1_star.bta", "-c", "and(T,<>)"});
    CHECK(r.out == "q1\n");
    CHECK(r.err.find("unreachable") != std::string::npos);

    CHECK(run({"classes-down", "@and1.bta", "--height", "2"}).out ==
          "{q1}: <> and(<>,T) and(T,<>)\n{}: and(<>,F) and(F,<>)\n");
    CHECK(run({"oracle-classes-up", "@abc.bta", "--height", "2"}).out ==
          "a b c\nf(a,a) f(a,b) f(a,c) f(b,a) f(b,b) f(b,c) f(c,a) f(c,b) f(c,c)\n");
    CHECK(run({"language-upto", "@and1.bta", "--height", "2"}).out == "T\nand(T,T)\n");
    CHECK(run({"enumerate", "@and1.bta", "--height", "1", "--contexts"}).out == "<>\n");
    CHECK(run({"enumerate", "@and1.bta", "--height", "1"}).out == "F\nT\n");
}

TEST_CASE("cli generalized Brzozowski checks") {
    auto r = run({"check-brz-u", "@bool2_split.bta", "--witness"});
    CHECK(r.code == cli::kFalse);
    CHECK(r.out == "determinization is not minimal\nwitness: q=q1a m={q1a} S={q1a} S'={q1b}\n");
    CHECK(run({"check-brz-u", "@bool2.bta"}).out == "determinization is minimal\n");
    CHECK(run({"check-brz-d", "@and1.bta"}).code == cli::kTrue);
}

TEST_CASE("cli transformations match the library") {
    for (const auto& name : kBtaFixtures) {
        const Bta a = load_bta_fixture(name);
        const std::string f = "@" + name;
        CAPTURE(name);
        CHECK(run({"determinize", f}).out == serialize(determinize(a)));
        CHECK(run({"codeterminize", f}).out == serialize(codeterminize(a)));
        CHECK(run({"reverse", f}).out == serialize(reverse_bta(a)));
        CHECK(run({"minimize", f}).out == serialize(minimize_bta(a)));
        CHECK(run({"minimize", f, "--strip-dead"}).out == serialize(minimize_bta(a, {true})));
        if (is_deterministic(a) && !has_unreachable_states(a))
            CHECK(run({"canonical", f}).out == serialize(canonical_form(a)));
        else
            CHECK(run({"canonical", f}).code == cli::kDomainError);
        const bool closed = is_path_closed(a);
        CHECK(run({"is-path-closed", f}).code == (closed ? cli::kTrue : cli::kFalse));
        if (closed) {
            CHECK(run({"min-codet", f}).out == serialize(min_codbta(a)));
            CHECK(run({"brzozowski", f}).out == serialize(brzozowski(a)));
        } else {
            CHECK(run({"min-codet", f}).code == cli::kDomainError);
        }
        CHECK(run({"check-brz-u", f}).code == (check_gen_det_u(a) ? cli::kTrue : cli::kFalse));
        for (const Tree& t : enumerate_trees(a.alphabet(), 2))
            CHECK(run({"member", f, "-t", t.to_string()}).code == (accepts(a, t) ? cli::kTrue : cli::kFalse));
    }
    CHECK(run({"reverse", "@bool2r.tta"}).out == serialize(load_bta_fixture("bool2.bta")));
    CHECK(run({"tdeterminize", "@bool2r.tta"}).out == serialize(tta_determinize(load_tta_fixture("bool2r.tta"))));
    CHECK(run({"complete", "@abc_hd.bta"}).out == serialize(complete(load_bta_fixture("abc_hd.bta"))));
    CHECK(run({"codeterminize", "@and1_star.bta", "--no-pretrim"}).out ==
          serialize(codeterminize(load_bta_fixture("and1_star.bta"), {false})));
}

TEST_CASE("cli output file") {
    const std::string path = temp_file("min_bool2.bta");
    auto r = run({"minimize", "@bool2.bta", "-o", path});
    CHECK(r.code == cli::kTrue);
    CHECK(r.out.empty());
    CHECK(std::get<Bta>(load_automaton(path)) == minimize_bta(load_bta_fixture("bool2.bta")));
    std::remove(path.c_str());
}

TEST_CASE("cli errors") {
    CHECK(run({}).code == cli::kUsageError);
    auto r = run({"frobnicate"});
    CHECK(r.code == cli::kUsageError);
    CHECK(r.err.find("unknown verb 'frobnicate'") != std::string::npos);
    CHECK(run({"member", "@and1.bta"}).code == cli::kUsageError);
    CHECK(run({"member", "@and1.bta", "-t", "or(T,T)"}).code == cli::kUsageError);
    CHECK(run({"pre", "@bool2.bta", "-c", "or(T,F)"}).code == cli::kUsageError);
    CHECK(run({"equiv", "@bool2.bta"}).code == cli::kUsageError);
    CHECK(run({"determinize", "@missing.bta"}).code == cli::kUsageError);
    CHECK(run({"tdeterminize", "@bool2.bta"}).code == cli::kUsageError);
    CHECK(run({"--height", "0", "enumerate", "@and1.bta"}).code == cli::kUsageError);

    r = run({"min-codet", "@bool2.bta"});
    CHECK(r.code == cli::kDomainError);
    CHECK(r.err.find("not path-closed") != std::string::npos);
    CHECK(run({"check-brz-d", "@bool2.bta"}).code == cli::kDomainError);
    CHECK(run({"complete", "@abc.bta"}).code == cli::kDomainError);

    CHECK(run({"determinize", "@abc.bta", "--budget", "2"}).code == cli::kBudgetError);
    CHECK(run({"enumerate", "@bool2.bta", "--height", "6", "--budget", "100"}).code == cli::kBudgetError);
    CHECK(run({"--help"}).code == 0);
}
