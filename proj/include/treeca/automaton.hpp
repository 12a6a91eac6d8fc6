#pragma once

#include "treeca/state_set.hpp"
#include "treeca/trees.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace treeca {

// f[children] -> target for a Bta; target -> f[children] for a Tta.
struct Rule {
    std::size_t symbol;
    std::vector<State> children;
    State target;

    friend auto operator<=>(const Rule&, const Rule&) = default;
};

// State names are identifiers, subsets "{a,b}" or pairs "(a,b)", nested freely.
bool is_state_name(std::string_view name);
// End of the state name starting at pos, or npos.
std::size_t state_name_end(std::string_view s, std::size_t pos);
// "{a,b}" with members in name order.
std::string subset_name(std::vector<std::string> members);
std::string pair_name(const std::string& left, const std::string& right);

// Sorted, duplicate-free rule list indexed by symbol.
class Transitions {
public:
    Transitions() = default;
    Transitions(std::vector<Rule> rules, std::size_t symbol_count);

    const std::vector<Rule>& all() const noexcept { return rules_; }
    std::span<const Rule> of_symbol(std::size_t symbol) const;
    std::size_t size() const noexcept { return rules_.size(); }

    StateSet targets(std::size_t symbol, const std::vector<State>& children) const;
    // Union of targets over all child tuples drawn from the given sets.
    StateSet apply(std::size_t symbol, const std::vector<StateSet>& child_sets) const;

    friend bool operator==(const Transitions& a, const Transitions& b) { return a.rules_ == b.rules_; }

private:
    std::vector<Rule> rules_;
    std::vector<std::size_t> offsets_;
};

// Shared state bookkeeping for both automaton directions.
class AutomatonBase {
public:
    const RankedAlphabet& alphabet() const noexcept { return alphabet_; }
    std::size_t num_states() const noexcept { return names_.size(); }
    const std::vector<std::string>& state_names() const noexcept { return names_; }
    const std::string& state_name(State q) const { return names_.at(q); }
    std::optional<State> find_state(std::string_view name) const;
    State state(std::string_view name) const;  // throws UnknownStateError
    StateSet states(const std::vector<std::string>& names) const;
    std::vector<std::string> names(const StateSet& s) const;
    // Space-separated names in order.
    std::string format(const StateSet& s) const;
    StateSet all_states() const { return StateSet::all(num_states()); }
    const Transitions& transitions() const noexcept { return delta_; }
    const std::vector<Rule>& rules() const noexcept { return delta_.all(); }

protected:
    AutomatonBase() = default;
    // Sorts states by name and remaps rules and the distinguished set.
    AutomatonBase(RankedAlphabet alphabet, std::vector<std::string> names, std::vector<Rule> rules,
                  StateSet& distinguished);

    friend bool operator==(const AutomatonBase&, const AutomatonBase&) = default;

    RankedAlphabet alphabet_;
    std::vector<std::string> names_;
    Transitions delta_;
};

// Bottom-up automaton.
class Bta : public AutomatonBase {
public:
    Bta() = default;
    Bta(RankedAlphabet alphabet, std::vector<std::string> names, std::vector<Rule> rules, StateSet final);

    const StateSet& final_states() const noexcept { return final_; }
    // Targets of leaf rules.
    StateSet initial_states() const;

    friend bool operator==(const Bta&, const Bta&) = default;

private:
    StateSet final_;
};

// Top-down automaton.
class Tta : public AutomatonBase {
public:
    Tta() = default;
    Tta(RankedAlphabet alphabet, std::vector<std::string> names, std::vector<Rule> rules, StateSet initial);

    const StateSet& initial_states() const noexcept { return initial_; }
    // States with a leaf rule.
    StateSet final_states() const;

    friend bool operator==(const Tta&, const Tta&) = default;

private:
    StateSet initial_;
};

// Name-based construction; states are declared on first use.
class BtaBuilder {
public:
    explicit BtaBuilder(RankedAlphabet alphabet) : alphabet_(std::move(alphabet)) {}

    BtaBuilder& state(const std::string& name);
    BtaBuilder& final(const std::string& name);
    BtaBuilder& rule(const std::string& symbol, const std::vector<std::string>& children, const std::string& target);
    Bta build() const;

private:
    State intern(const std::string& name);

    RankedAlphabet alphabet_;
    std::vector<std::string> names_;
    std::unordered_map<std::string, State> index_;
    std::vector<Rule> rules_;
    std::vector<State> final_;
};

class TtaBuilder {
public:
    explicit TtaBuilder(RankedAlphabet alphabet) : alphabet_(std::move(alphabet)) {}

    TtaBuilder& state(const std::string& name);
    TtaBuilder& initial(const std::string& name);
    TtaBuilder& rule(const std::string& source, const std::string& symbol, const std::vector<std::string>& children);
    Tta build() const;

private:
    State intern(const std::string& name);

    RankedAlphabet alphabet_;
    std::vector<std::string> names_;
    std::unordered_map<std::string, State> index_;
    std::vector<Rule> rules_;
    std::vector<State> initial_;
};

// Memoized bottom-up run. Leaf rules are restricted to `leaf_filter`.
// The automaton must outlive the cache.
class PostCache {
public:
    explicit PostCache(const Bta& a);
    PostCache(const Bta& a, StateSet leaf_filter);

    const StateSet& post(const Tree& t);
    bool accepts(const Tree& t) { return post(t).intersects(a_->final_states()); }
    // Uses the memo but stores nothing new; for throwaway trees such as plugs.
    StateSet peek(const Tree& t);
    bool peek_accepts(const Tree& t) { return peek(t).intersects(a_->final_states()); }

private:
    std::size_t symbol_of(const Tree& t) const;

    const Bta* a_;
    StateSet filter_;
    std::unordered_map<const void*, std::pair<Tree, StateSet>> memo_;
};

StateSet post_tree(const Bta& a, const Tree& t, const StateSet& s);
StateSet post_tree(const Bta& a, const Tree& t);
bool accepts(const Bta& a, const Tree& t);

// Root states of runs on x whose hole is labelled by a seed state.
StateSet seeded_post(const Bta& a, const Context& x, const StateSet& seeds);
StateSet seeded_post(const Bta& a, const Context& x, State q);
StateSet wpre(const Bta& a, const Context& x, const StateSet& s);

// States with a nonempty downward language.
StateSet reachable_states(const Bta& a);
// States with a nonempty upward language.
StateSet useful_states(const Bta& a);
bool has_unreachable_states(const Bta& a);

// Restriction to a state subset; rules touching other states are dropped.
Bta restrict_states(const Bta& a, const StateSet& keep);
Bta trim_unreachable(const Bta& a);
Bta trim_empty(const Bta& a);

bool is_deterministic(const Bta& a);
bool is_codeterministic(const Bta& a);
// Every symbol and state tuple has a target.
bool is_complete(const Bta& a);

bool is_deterministic(const Tta& t);
bool tta_accepts(const Tta& t, const Tree& tree);
// States q whose downward language, with leaves restricted to s, contains the tree.
StateSet tta_pre_tree(const Tta& t, const Tree& tree, const StateSet& s);

} // namespace treeca
