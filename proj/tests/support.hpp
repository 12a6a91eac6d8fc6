#pragma once
// Fixture loading, random automata and brute-force reference computations
// shared by the unit tests and the acceptance binary.

#include "treeca/analysis.hpp"
#include "treeca/automaton.hpp"
#include "treeca/io.hpp"
#include "treeca/transforms.hpp"
#include "treeca/trees.hpp"

#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace treeca::testing {

inline std::string fixture_path(const std::string& name) { return std::string(TREECA_FIXTURES) + "/" + name; }

inline Bta load_bta_fixture(const std::string& name) { return std::get<Bta>(load_automaton(fixture_path(name))); }
inline Tta load_tta_fixture(const std::string& name) { return std::get<Tta>(load_automaton(fixture_path(name))); }

inline Tree T(const char* text) { return parse_tree(text); }
inline Context C(const char* text) { return parse_context(text); }

inline StateSet S(const AutomatonBase& a, const std::vector<std::string>& names) { return a.states(names); }

// Small alphabets keep exhaustive enumeration cheap: 1446 trees of height <= 4
// and 61 contexts of height <= 3 over {a,b,f}.
inline RankedAlphabet binary_alphabet() { return {{"a", 0}, {"b", 0}, {"f", 2}}; }
inline RankedAlphabet bool_alphabet() { return {{"F", 0}, {"T", 0}, {"and", 2}}; }
inline RankedAlphabet mixed_alphabet() { return {{"a", 0}, {"b", 0}, {"g", 1}, {"f", 2}}; }
inline RankedAlphabet monadic_alphabet() { return {{"a", 0}, {"b", 0}, {"g", 1}, {"h", 1}}; }

using Rng = std::mt19937;

inline std::vector<std::string> state_names(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i)
        out.push_back("q" + std::to_string(i));
    return out;
}

// Calls fn on every tuple in {0..n-1}^arity.
template <class Fn>
void for_each_tuple(std::size_t n, unsigned arity, Fn&& fn) {
    std::vector<State> tuple(arity, 0);
    if (n == 0 && arity > 0)
        return;
    while (true) {
        fn(tuple);
        std::size_t i = 0;
        while (i < arity && ++tuple[i] == n)
            tuple[i++] = 0;
        if (i == arity)
            return;
    }
}

// Each (symbol, tuple) gets each target with probability `density`.
inline Bta random_bta(Rng& rng, const RankedAlphabet& sigma, std::size_t n, double density = 0.3) {
    std::bernoulli_distribution coin(density);
    std::uniform_int_distribution<State> pick(0, static_cast<State>(n - 1));
    std::vector<Rule> rules;
    for (std::size_t s = 0; s < sigma.size(); ++s)
        for_each_tuple(n, sigma.arity(s), [&](const std::vector<State>& tuple) {
            for (State q = 0; q < n; ++q)
                if (coin(rng))
                    rules.push_back({s, tuple, q});
        });
    rules.push_back({sigma.symbols_of_arity(0).front(), {}, pick(rng)});
    std::vector<State> final;
    for (State q = 0; q < n; ++q)
        if (coin(rng))
            final.push_back(q);
    if (final.empty())
        final.push_back(pick(rng));
    return Bta(sigma, state_names(n), rules, StateSet(final));
}

// Deterministic top-down automaton with a single initial state.
inline Tta random_dtta(Rng& rng, const RankedAlphabet& sigma, std::size_t n, double density = 0.6) {
    std::bernoulli_distribution coin(density);
    std::uniform_int_distribution<State> pick(0, static_cast<State>(n - 1));
    std::vector<Rule> rules;
    for (State q = 0; q < n; ++q)
        for (std::size_t s = 0; s < sigma.size(); ++s) {
            if (!coin(rng))
                continue;
            std::vector<State> children(sigma.arity(s));
            for (auto& c : children)
                c = pick(rng);
            rules.push_back({s, children, q});
        }
    return Tta(sigma, state_names(n), rules, StateSet{0});
}

// Trimmed BTA with a nonempty path-closed language: the reverse of a random DTTA.
inline Bta random_path_closed(Rng& rng, const RankedAlphabet& sigma, std::size_t max_states = 4) {
    std::uniform_int_distribution<std::size_t> size(1, max_states);
    while (true) {
        Bta a = trim_empty(trim_unreachable(reverse_tta(random_dtta(rng, sigma, size(rng)))));
        if (!a.final_states().empty())
            return a;
    }
}

// Random BTA with no unreachable states and a nonempty language.
inline Bta random_trimmed_bta(Rng& rng, const RankedAlphabet& sigma, std::size_t max_states = 4,
                              double density = 0.3) {
    std::uniform_int_distribution<std::size_t> size(1, max_states);
    while (true) {
        Bta a = trim_empty(trim_unreachable(random_bta(rng, sigma, size(rng), density)));
        if (!a.final_states().empty())
            return a;
    }
}

// -- Reference semantics computed straight from the rule list -----------------

// delta applied to a tuple of sets.
inline StateSet delta_of_sets(const Bta& a, std::size_t symbol, const std::vector<StateSet>& sets) {
    std::vector<State> out;
    for (const Rule& r : a.rules()) {
        if (r.symbol != symbol)
            continue;
        bool fits = true;
        for (std::size_t i = 0; i < sets.size() && fits; ++i)
            fits = sets[i].contains(r.children[i]);
        if (fits)
            out.push_back(r.target);
    }
    return StateSet(std::move(out));
}

// Bottom-up run; leaves are restricted to `leaves`, the hole is labelled by `hole`.
inline StateSet naive_post(const Bta& a, const Tree& t, const StateSet& leaves, const StateSet& hole = {}) {
    if (t.is_hole())
        return hole;
    std::vector<StateSet> kids;
    for (const Tree& c : t.children())
        kids.push_back(naive_post(a, c, leaves, hole));
    StateSet r = delta_of_sets(a, *a.alphabet().find(t.label()), kids);
    return t.is_leaf() ? (r & leaves) : r;
}

inline StateSet naive_post(const Bta& a, const Tree& t) { return naive_post(a, t, a.all_states()); }

inline bool naive_accepts(const Bta& a, const Tree& t) { return naive_post(a, t).intersects(a.final_states()); }

// Memoizes every hole-free subtree of the contexts, so plugging into them
// only recomputes the spine.
inline void warm(PostCache& cache, const std::vector<Context>& contexts) {
    std::vector<const Tree*> stack;
    for (const Context& x : contexts) {
        stack.push_back(&x.tree());
        while (!stack.empty()) {
            const Tree* t = stack.back();
            stack.pop_back();
            if (t->hole_count() == 0)
                cache.post(*t);
            else
                for (const Tree& c : t->children())
                    stack.push_back(&c);
        }
    }
}

// x in the upward language of q with respect to S.
inline bool naive_in_up(const Bta& a, const Context& x, State q, const StateSet& s) {
    return naive_post(a, x.tree(), a.all_states(), StateSet{q}).intersects(s);
}

// One tree for every subset that is the post set of some tree; saturated, so exact.
inline std::vector<Tree> post_representatives(const Bta& a) {
    std::map<StateSet, Tree> reps;
    for (std::size_t s : a.alphabet().symbols_of_arity(0)) {
        Tree t(a.alphabet().name(s));
        reps.emplace(naive_post(a, t), t);
    }
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Tree> current;
        for (const auto& [k, t] : reps)
            current.push_back(t);
        for (std::size_t s = 0; s < a.alphabet().size(); ++s) {
            const unsigned n = a.alphabet().arity(s);
            if (n == 0)
                continue;
            for_each_tuple(current.size(), n, [&](const std::vector<State>& idx) {
                std::vector<Tree> kids;
                for (State i : idx)
                    kids.push_back(current[i]);
                Tree t(a.alphabet().name(s), kids);
                if (reps.emplace(naive_post(a, t), t).second)
                    grew = true;
            });
        }
    }
    std::vector<Tree> out;
    for (const auto& [k, t] : reps)
        out.push_back(t);
    return out;
}

// Every context with the spine of x whose siblings are drawn from `pool`.
inline std::vector<Context> same_spine_contexts(const RankedAlphabet& sigma, const Spine& spine,
                                                const std::vector<Tree>& pool) {
    std::vector<Tree> below{Tree::hole()};
    for (auto step = spine.rbegin(); step != spine.rend(); ++step) {
        const unsigned n = sigma.arity(*sigma.find(step->symbol));
        std::vector<Tree> above;
        for (const Tree& inner : below)
            for_each_tuple(pool.size(), n - 1, [&](const std::vector<State>& idx) {
                std::vector<Tree> kids;
                std::size_t k = 0;
                for (std::size_t i = 1; i <= n; ++i)
                    kids.push_back(i == step->index ? inner : pool[idx[k++]]);
                above.emplace_back(step->symbol, kids);
            });
        below = std::move(above);
    }
    std::vector<Context> out;
    for (Tree& t : below)
        out.emplace_back(std::move(t));
    return out;
}

// pre straight from its definition: q is in pre_x(S) when some context with
// the spine of x, and reaching S iff x does, is in the upward language of q.
inline StateSet brute_pre(const Bta& a, const Context& x, const StateSet& s, const std::vector<Tree>& reps) {
    auto reaches = [&](const Context& y) {
        for (State q = 0; q < a.num_states(); ++q)
            if (naive_in_up(a, y, q, s))
                return true;
        return false;
    };
    const bool x_reaches = reaches(x);
    if (!x_reaches)
        return {};
    std::vector<State> out;
    for (const Context& y : same_spine_contexts(a.alphabet(), x.spine(), reps))
        for (State q = 0; q < a.num_states(); ++q)
            if (naive_in_up(a, y, q, s))
                out.push_back(q);
    return StateSet(std::move(out));
}

// Paths of accepted trees up to a height.
inline std::set<Path> language_paths(const Bta& a, std::size_t max_height) {
    std::set<Path> out;
    for (const Tree& t : enumerate_trees(a.alphabet(), max_height))
        if (naive_accepts(a, t))
            for (auto& p : path_language(t))
                out.insert(p);
    return out;
}

// A rejected tree of height <= h all of whose paths occur in accepted trees of
// height <= h + radius. Any hit proves the language is not path-closed.
inline std::optional<Tree> path_closure_counterexample(const Bta& a, std::size_t h, std::size_t radius) {
    const auto paths = language_paths(a, h + radius);
    for (const Tree& t : enumerate_trees(a.alphabet(), h)) {
        if (naive_accepts(a, t))
            continue;
        bool covered = true;
        for (const auto& p : path_language(t))
            if (!paths.count(p)) {
                covered = false;
                break;
            }
        if (covered)
            return t;
    }
    return std::nullopt;
}

} // namespace treeca::testing
