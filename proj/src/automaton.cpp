#include "treeca/automaton.hpp"

#include "treeca/error.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

namespace treeca {

// ---------------------------------------------------------------------------
// State names

std::size_t state_name_end(std::string_view s, std::size_t pos) {
    if (pos >= s.size())
        return std::string_view::npos;
    char c = s[pos];
    if (c == '{' || c == '(') {
        const char close = c == '{' ? '}' : ')';
        ++pos;
        if (c == '{' && pos < s.size() && s[pos] == '}')
            return pos + 1;
        std::size_t members = 0;
        while (true) {
            pos = state_name_end(s, pos);
            if (pos == std::string_view::npos)
                return pos;
            ++members;
            if (pos < s.size() && s[pos] == ',') {
                ++pos;
                continue;
            }
            if (pos < s.size() && s[pos] == close) {
                if (c == '(' && members != 2)
                    return std::string_view::npos;
                return pos + 1;
            }
            return std::string_view::npos;
        }
    }
    std::size_t start = pos;
    while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
        ++pos;
    return pos == start ? std::string_view::npos : pos;
}

bool is_state_name(std::string_view name) { return state_name_end(name, 0) == name.size(); }

std::string subset_name(std::vector<std::string> members) {
    std::sort(members.begin(), members.end());
    std::string out = "{";
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (i)
            out += ',';
        out += members[i];
    }
    return out + "}";
}

std::string pair_name(const std::string& left, const std::string& right) {
    return "(" + left + "," + right + ")";
}

// ---------------------------------------------------------------------------
// Transitions

Transitions::Transitions(std::vector<Rule> rules, std::size_t symbol_count) : rules_(std::move(rules)) {
    std::sort(rules_.begin(), rules_.end());
    rules_.erase(std::unique(rules_.begin(), rules_.end()), rules_.end());
    offsets_.assign(symbol_count + 1, 0);
    for (const auto& r : rules_)
        ++offsets_[r.symbol + 1];
    std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
}

std::span<const Rule> Transitions::of_symbol(std::size_t symbol) const {
    if (symbol + 1 >= offsets_.size())
        return {};
    return std::span<const Rule>(rules_.data() + offsets_[symbol], offsets_[symbol + 1] - offsets_[symbol]);
}

StateSet Transitions::targets(std::size_t symbol, const std::vector<State>& children) const {
    auto rules = of_symbol(symbol);
    auto lo = std::lower_bound(rules.begin(), rules.end(), children,
                               [](const Rule& r, const std::vector<State>& c) { return r.children < c; });
    std::vector<State> out;
    for (auto it = lo; it != rules.end() && it->children == children; ++it)
        out.push_back(it->target);
    return StateSet(std::move(out));
}

StateSet Transitions::apply(std::size_t symbol, const std::vector<StateSet>& child_sets) const {
    for (const auto& s : child_sets)
        if (s.empty())
            return {};
    std::vector<State> out;
    for (const auto& r : of_symbol(symbol)) {
        bool ok = true;
        for (std::size_t i = 0; ok && i < r.children.size(); ++i)
            ok = child_sets[i].contains(r.children[i]);
        if (ok)
            out.push_back(r.target);
    }
    return StateSet(std::move(out));
}

// ---------------------------------------------------------------------------
// AutomatonBase

AutomatonBase::AutomatonBase(RankedAlphabet alphabet, std::vector<std::string> names, std::vector<Rule> rules,
                             StateSet& distinguished)
    : alphabet_(std::move(alphabet)) {
    if (!alphabet_.has_leaf())
        throw RankError("the alphabet needs at least one nullary symbol");
    const std::size_t n = names.size();
    for (const auto& name : names)
        if (!is_state_name(name))
            throw Error("invalid state name '" + name + "'");

    std::vector<State> order(n);
    std::iota(order.begin(), order.end(), State{0});
    std::sort(order.begin(), order.end(), [&](State a, State b) { return names[a] < names[b]; });
    std::vector<State> remap(n);
    names_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0 && names[order[i]] == names[order[i - 1]])
            throw Error("duplicate state '" + names[order[i]] + "'");
        remap[order[i]] = static_cast<State>(i);
        names_.push_back(std::move(names[order[i]]));
    }

    for (auto& r : rules) {
        if (r.symbol >= alphabet_.size())
            throw RankError("rule uses a symbol outside the alphabet");
        if (r.children.size() != alphabet_.arity(r.symbol))
            throw RankError("rule for '" + alphabet_.name(r.symbol) + "' has " + std::to_string(r.children.size()) +
                            " children, arity is " + std::to_string(alphabet_.arity(r.symbol)));
        if (r.target >= n)
            throw UnknownStateError("rule refers to a state index out of range");
        r.target = remap[r.target];
        for (auto& c : r.children) {
            if (c >= n)
                throw UnknownStateError("rule refers to a state index out of range");
            c = remap[c];
        }
    }
    delta_ = Transitions(std::move(rules), alphabet_.size());

    std::vector<State> d;
    for (State q : distinguished) {
        if (q >= n)
            throw UnknownStateError("distinguished state index out of range");
        d.push_back(remap[q]);
    }
    distinguished = StateSet(std::move(d));
}

std::optional<State> AutomatonBase::find_state(std::string_view name) const {
    auto it = std::lower_bound(names_.begin(), names_.end(), name);
    if (it == names_.end() || *it != name)
        return std::nullopt;
    return static_cast<State>(it - names_.begin());
}

State AutomatonBase::state(std::string_view name) const {
    if (auto q = find_state(name))
        return *q;
    throw UnknownStateError("unknown state '" + std::string(name) + "'");
}

StateSet AutomatonBase::states(const std::vector<std::string>& names) const {
    std::vector<State> out;
    for (const auto& n : names)
        out.push_back(state(n));
    return StateSet(std::move(out));
}

std::vector<std::string> AutomatonBase::names(const StateSet& s) const {
    std::vector<std::string> out;
    for (State q : s)
        out.push_back(state_name(q));
    return out;
}

std::string AutomatonBase::format(const StateSet& s) const {
    std::string out;
    for (State q : s) {
        if (!out.empty())
            out += ' ';
        out += state_name(q);
    }
    return out;
}

Bta::Bta(RankedAlphabet alphabet, std::vector<std::string> names, std::vector<Rule> rules, StateSet final)
    : AutomatonBase(std::move(alphabet), std::move(names), std::move(rules), final), final_(std::move(final)) {}

StateSet Bta::initial_states() const {
    std::vector<State> out;
    for (std::size_t s : alphabet_.symbols_of_arity(0))
        for (const auto& r : delta_.of_symbol(s))
            out.push_back(r.target);
    return StateSet(std::move(out));
}

Tta::Tta(RankedAlphabet alphabet, std::vector<std::string> names, std::vector<Rule> rules, StateSet initial)
    : AutomatonBase(std::move(alphabet), std::move(names), std::move(rules), initial),
      initial_(std::move(initial)) {}

StateSet Tta::final_states() const {
    std::vector<State> out;
    for (std::size_t s : alphabet_.symbols_of_arity(0))
        for (const auto& r : delta_.of_symbol(s))
            out.push_back(r.target);
    return StateSet(std::move(out));
}

// ---------------------------------------------------------------------------
// Builders

namespace {

std::size_t symbol_for_rule(const RankedAlphabet& alphabet, const std::string& symbol, std::size_t n) {
    auto s = alphabet.find(symbol);
    if (!s)
        throw RankError("unknown symbol '" + symbol + "'");
    if (alphabet.arity(*s) != n)
        throw RankError("symbol '" + symbol + "' has arity " + std::to_string(alphabet.arity(*s)) + ", got " +
                        std::to_string(n) + " children");
    return *s;
}

} // namespace

State BtaBuilder::intern(const std::string& name) {
    auto [it, inserted] = index_.try_emplace(name, static_cast<State>(names_.size()));
    if (inserted)
        names_.push_back(name);
    return it->second;
}

BtaBuilder& BtaBuilder::state(const std::string& name) {
    intern(name);
    return *this;
}

BtaBuilder& BtaBuilder::final(const std::string& name) {
    final_.push_back(intern(name));
    return *this;
}

BtaBuilder& BtaBuilder::rule(const std::string& symbol, const std::vector<std::string>& children,
                             const std::string& target) {
    Rule r{symbol_for_rule(alphabet_, symbol, children.size()), {}, intern(target)};
    for (const auto& c : children)
        r.children.push_back(intern(c));
    rules_.push_back(std::move(r));
    return *this;
}

Bta BtaBuilder::build() const { return Bta(alphabet_, names_, rules_, StateSet(final_)); }

State TtaBuilder::intern(const std::string& name) {
    auto [it, inserted] = index_.try_emplace(name, static_cast<State>(names_.size()));
    if (inserted)
        names_.push_back(name);
    return it->second;
}

TtaBuilder& TtaBuilder::state(const std::string& name) {
    intern(name);
    return *this;
}

TtaBuilder& TtaBuilder::initial(const std::string& name) {
    initial_.push_back(intern(name));
    return *this;
}

TtaBuilder& TtaBuilder::rule(const std::string& source, const std::string& symbol,
                             const std::vector<std::string>& children) {
    Rule r{symbol_for_rule(alphabet_, symbol, children.size()), {}, intern(source)};
    for (const auto& c : children)
        r.children.push_back(intern(c));
    rules_.push_back(std::move(r));
    return *this;
}

Tta TtaBuilder::build() const { return Tta(alphabet_, names_, rules_, StateSet(initial_)); }

// ---------------------------------------------------------------------------
// Runs

PostCache::PostCache(const Bta& a) : a_(&a), filter_(a.all_states()) {}

PostCache::PostCache(const Bta& a, StateSet leaf_filter) : a_(&a), filter_(std::move(leaf_filter)) {
    for (State q : filter_)
        if (q >= a.num_states())
            throw UnknownStateError("state index out of range");
}

std::size_t PostCache::symbol_of(const Tree& t) const {
    auto s = a_->alphabet().find(t.label());
    if (!s)
        throw RankError("symbol '" + t.label() + "' is not in the alphabet");
    if (a_->alphabet().arity(*s) != t.arity())
        throw RankError("symbol '" + t.label() + "' has arity " + std::to_string(a_->alphabet().arity(*s)) +
                        " but is applied to " + std::to_string(t.arity()) + " children");
    return *s;
}

const StateSet& PostCache::post(const Tree& t) {
    if (auto it = memo_.find(t.id()); it != memo_.end())
        return it->second.second;
    const std::size_t s = symbol_of(t);
    StateSet result;
    if (t.is_leaf()) {
        result = a_->transitions().targets(s, {}) & filter_;
    } else {
        std::vector<StateSet> child_sets;
        child_sets.reserve(t.arity());
        for (const auto& c : t.children())
            child_sets.push_back(post(c));
        result = a_->transitions().apply(s, child_sets);
    }
    return memo_.emplace(t.id(), std::make_pair(t, std::move(result))).first->second.second;
}

StateSet PostCache::peek(const Tree& t) {
    if (auto it = memo_.find(t.id()); it != memo_.end())
        return it->second.second;
    const std::size_t s = symbol_of(t);
    if (t.is_leaf())
        return a_->transitions().targets(s, {}) & filter_;
    std::vector<StateSet> child_sets;
    child_sets.reserve(t.arity());
    for (const auto& c : t.children())
        child_sets.push_back(peek(c));
    return a_->transitions().apply(s, child_sets);
}

StateSet post_tree(const Bta& a, const Tree& t, const StateSet& s) {
    PostCache cache(a, s);
    return cache.post(t);
}

StateSet post_tree(const Bta& a, const Tree& t) { return post_tree(a, t, a.all_states()); }

bool accepts(const Bta& a, const Tree& t) { return post_tree(a, t).intersects(a.final_states()); }

namespace {

StateSet seeded_run(const Bta& a, const Context& x, const StateSet& seeds, PostCache& cache) {
    std::vector<const Tree*> spine_nodes;
    const Tree* cur = &x.tree();
    for (std::size_t i : x.pivot().steps()) {
        spine_nodes.push_back(cur);
        cur = &cur->children()[i - 1];
    }
    StateSet r = seeds;
    const auto& steps = x.pivot().steps();
    for (std::size_t d = spine_nodes.size(); d-- > 0;) {
        const Tree& node = *spine_nodes[d];
        auto s = a.alphabet().find(node.label());
        if (!s || a.alphabet().arity(*s) != node.arity())
            throw RankError("context is not well-ranked at symbol '" + node.label() + "'");
        std::vector<StateSet> child_sets;
        for (std::size_t j = 0; j < node.arity(); ++j)
            child_sets.push_back(j + 1 == steps[d] ? r : cache.post(node.children()[j]));
        r = a.transitions().apply(*s, child_sets);
    }
    return r;
}

void check_states(const Bta& a, const StateSet& s) {
    if (!s.empty() && s.items().back() >= a.num_states())
        throw UnknownStateError("state index out of range");
}

} // namespace

StateSet seeded_post(const Bta& a, const Context& x, const StateSet& seeds) {
    check_states(a, seeds);
    PostCache cache(a);
    return seeded_run(a, x, seeds, cache);
}

StateSet seeded_post(const Bta& a, const Context& x, State q) { return seeded_post(a, x, StateSet{q}); }

StateSet wpre(const Bta& a, const Context& x, const StateSet& s) {
    check_states(a, s);
    PostCache cache(a);
    std::vector<State> out;
    for (State q = 0; q < a.num_states(); ++q)
        if (seeded_run(a, x, StateSet{q}, cache).intersects(s))
            out.push_back(q);
    return StateSet(std::move(out));
}

// ---------------------------------------------------------------------------
// Reachability and trimming

StateSet reachable_states(const Bta& a) {
    std::vector<bool> seen(a.num_states(), false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : a.rules()) {
            if (seen[r.target])
                continue;
            if (std::all_of(r.children.begin(), r.children.end(), [&](State c) { return seen[c]; })) {
                seen[r.target] = true;
                changed = true;
            }
        }
    }
    std::vector<State> out;
    for (State q = 0; q < a.num_states(); ++q)
        if (seen[q])
            out.push_back(q);
    return StateSet(std::move(out));
}

StateSet useful_states(const Bta& a) {
    const StateSet reach = reachable_states(a);
    std::vector<bool> useful(a.num_states(), false);
    for (State q : a.final_states())
        useful[q] = true;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : a.rules()) {
            if (!useful[r.target])
                continue;
            std::size_t missing = 0;
            for (State c : r.children)
                missing += reach.contains(c) ? 0 : 1;
            for (State c : r.children) {
                if (useful[c])
                    continue;
                // every sibling must have a tree to stand in for it
                if (missing == 0 || (missing == 1 && !reach.contains(c))) {
                    useful[c] = true;
                    changed = true;
                }
            }
        }
    }
    std::vector<State> out;
    for (State q = 0; q < a.num_states(); ++q)
        if (useful[q])
            out.push_back(q);
    return StateSet(std::move(out));
}

bool has_unreachable_states(const Bta& a) { return reachable_states(a).size() != a.num_states(); }

Bta restrict_states(const Bta& a, const StateSet& keep) {
    std::vector<State> remap(a.num_states(), static_cast<State>(-1));
    std::vector<std::string> names;
    for (State q : keep) {
        remap[q] = static_cast<State>(names.size());
        names.push_back(a.state_name(q));
    }
    std::vector<Rule> rules;
    for (const auto& r : a.rules()) {
        if (remap[r.target] == static_cast<State>(-1))
            continue;
        Rule nr{r.symbol, {}, remap[r.target]};
        bool ok = true;
        for (State c : r.children) {
            ok = ok && remap[c] != static_cast<State>(-1);
            nr.children.push_back(remap[c]);
        }
        if (ok)
            rules.push_back(std::move(nr));
    }
    std::vector<State> final;
    for (State q : a.final_states())
        if (remap[q] != static_cast<State>(-1))
            final.push_back(remap[q]);
    return Bta(a.alphabet(), std::move(names), std::move(rules), StateSet(std::move(final)));
}

Bta trim_unreachable(const Bta& a) { return restrict_states(a, reachable_states(a)); }

Bta trim_empty(const Bta& a) { return restrict_states(a, useful_states(a)); }

// ---------------------------------------------------------------------------
// Shape predicates

bool is_deterministic(const Bta& a) {
    const auto& rules = a.rules();
    for (std::size_t i = 1; i < rules.size(); ++i)
        if (rules[i].symbol == rules[i - 1].symbol && rules[i].children == rules[i - 1].children)
            return false;
    return true;
}

namespace {

// At most one child tuple per (state, symbol) for symbols of positive arity.
bool unique_expansions(const AutomatonBase& a) {
    std::set<std::pair<State, std::size_t>> seen;
    for (const auto& r : a.rules())
        if (!r.children.empty() && !seen.emplace(r.target, r.symbol).second)
            return false;
    return true;
}

} // namespace

bool is_codeterministic(const Bta& a) { return a.final_states().size() == 1 && unique_expansions(a); }

bool is_complete(const Bta& a) {
    const std::size_t n = a.num_states();
    for (std::size_t s = 0; s < a.alphabet().size(); ++s) {
        // rules are duplicate-free, so counting distinct child tuples suffices
        std::size_t tuples = 1;
        for (unsigned i = 0; i < a.alphabet().arity(s); ++i)
            tuples *= n;
        std::size_t distinct = 0;
        auto rules = a.transitions().of_symbol(s);
        for (std::size_t i = 0; i < rules.size(); ++i)
            if (i == 0 || rules[i].children != rules[i - 1].children)
                ++distinct;
        if (distinct != tuples)
            return false;
    }
    return true;
}

bool is_deterministic(const Tta& t) { return t.initial_states().size() == 1 && unique_expansions(t); }

namespace {

// Bottom-up evaluation of downward membership, read off the top-down rules.
StateSet tta_pre_rec(const Tta& t, const Tree& tree, const StateSet& s) {
    auto sym = t.alphabet().find(tree.label());
    if (!sym || t.alphabet().arity(*sym) != tree.arity())
        throw RankError("symbol '" + tree.label() + "' does not fit the alphabet");
    std::vector<StateSet> below;
    for (const auto& c : tree.children())
        below.push_back(tta_pre_rec(t, c, s));
    std::vector<State> out;
    for (State q = 0; q < t.num_states(); ++q) {
        if (tree.is_leaf() && !s.contains(q))
            continue;
        for (const auto& r : t.transitions().of_symbol(*sym)) {
            if (r.target != q)
                continue;
            bool ok = true;
            for (std::size_t i = 0; ok && i < r.children.size(); ++i)
                ok = below[i].contains(r.children[i]);
            if (ok) {
                out.push_back(q);
                break;
            }
        }
    }
    return StateSet(std::move(out));
}

} // namespace

StateSet tta_pre_tree(const Tta& t, const Tree& tree, const StateSet& s) { return tta_pre_rec(t, tree, s); }

bool tta_accepts(const Tta& t, const Tree& tree) {
    Bta b(t.alphabet(), t.state_names(), t.rules(), t.initial_states());
    return accepts(b, tree);
}

} // namespace treeca
