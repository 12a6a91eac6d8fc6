#include "treeca/transforms.hpp"

#include "treeca/error.hpp"

#include <algorithm>
#include <map>

namespace treeca {

namespace {

// Interns subsets of a source automaton's states as new states.
class SubsetTable {
public:
    SubsetTable(const AutomatonBase& source, std::size_t max_states) : source_(source), max_(max_states) {}

    State intern(const StateSet& s) {
        auto [it, inserted] = index_.try_emplace(s, static_cast<State>(sets_.size()));
        if (inserted) {
            if (sets_.size() >= max_)
                throw BudgetError("subset construction exceeds the budget of " + std::to_string(max_) + " states");
            sets_.push_back(s);
        }
        return it->second;
    }

    bool contains(const StateSet& s) const { return index_.count(s) != 0; }
    std::size_t size() const noexcept { return sets_.size(); }
    const StateSet& operator[](State q) const { return sets_[q]; }

    std::vector<std::string> names() const {
        std::vector<std::string> out;
        out.reserve(sets_.size());
        for (const auto& s : sets_)
            out.push_back(subset_name(source_.names(s)));
        return out;
    }

private:
    const AutomatonBase& source_;
    std::size_t max_;
    std::vector<StateSet> sets_;
    std::map<StateSet, State> index_;
};

template <class F>
void for_each_tuple(unsigned n, std::size_t bound, F&& f) {
    std::vector<State> idx(n, 0);
    if (n > 0 && bound == 0)
        return;
    while (true) {
        f(idx);
        std::size_t k = n;
        while (k > 0) {
            if (++idx[k - 1] < bound)
                break;
            idx[k - 1] = 0;
            --k;
        }
        if (k == 0)
            return;
    }
}

// For each symbol, position and state q: the position-i children of rules with parent q.
using Projections = std::vector<std::vector<std::vector<StateSet>>>;

Projections child_projections(const AutomatonBase& a) {
    const auto& alphabet = a.alphabet();
    Projections proj(alphabet.size());
    for (std::size_t s = 0; s < alphabet.size(); ++s) {
        proj[s].assign(alphabet.arity(s), std::vector<StateSet>(a.num_states()));
        for (const auto& r : a.transitions().of_symbol(s))
            for (std::size_t i = 0; i < r.children.size(); ++i)
                proj[s][i][r.target].insert(r.children[i]);
    }
    return proj;
}

// Shared core of bottom-up co-determinization and top-down determinization.
// Rules of the result are parent-to-children, as in the source.
struct CoSubsetResult {
    std::vector<std::string> names;
    std::vector<Rule> rules;
    State start;
};

CoSubsetResult cosubset(const AutomatonBase& a, const StateSet& start, std::size_t max_states) {
    const auto& alphabet = a.alphabet();
    const Projections proj = child_projections(a);
    SubsetTable table(a, max_states);
    std::vector<Rule> rules;
    const State s0 = table.intern(start);
    for (State cur = 0; cur < table.size(); ++cur) {
        const StateSet r = table[cur];
        for (std::size_t s = 0; s < alphabet.size(); ++s) {
            const unsigned n = alphabet.arity(s);
            if (n == 0) {
                bool hit = false;
                for (const auto& rule : a.transitions().of_symbol(s))
                    hit = hit || r.contains(rule.target);
                if (hit)
                    rules.push_back({s, {}, cur});
                continue;
            }
            std::vector<StateSet> parts(n);
            for (unsigned i = 0; i < n; ++i)
                for (State q : r)
                    parts[i] = parts[i] | proj[s][i][q];
            // an empty component has no tree below it, so such a rule never fires
            if (parts[0].empty())
                continue;
            Rule rule{s, {}, cur};
            for (const auto& p : parts)
                rule.children.push_back(table.intern(p));
            rules.push_back(std::move(rule));
        }
    }
    return {table.names(), std::move(rules), s0};
}

} // namespace

Bta determinize(const Bta& a, std::size_t max_states) {
    const auto& alphabet = a.alphabet();
    SubsetTable table(a, max_states);
    std::vector<Rule> rules;
    for (std::size_t s : alphabet.symbols_of_arity(0))
        rules.push_back({s, {}, table.intern(a.transitions().targets(s, {}))});

    std::size_t done = 0;  // tuples over states below `done` are already expanded
    while (done < table.size()) {
        const std::size_t bound = table.size();
        for (std::size_t s = 0; s < alphabet.size(); ++s) {
            const unsigned n = alphabet.arity(s);
            if (n == 0)
                continue;
            for_each_tuple(n, bound, [&](const std::vector<State>& idx) {
                if (*std::max_element(idx.begin(), idx.end()) < done)
                    return;
                std::vector<StateSet> sets;
                sets.reserve(n);
                for (State i : idx)
                    sets.push_back(table[i]);
                rules.push_back({s, idx, table.intern(a.transitions().apply(s, sets))});
            });
        }
        done = bound;
    }

    std::vector<State> final;
    for (State q = 0; q < table.size(); ++q)
        if (table[q].intersects(a.final_states()))
            final.push_back(q);
    return Bta(alphabet, table.names(), std::move(rules), StateSet(std::move(final)));
}

Bta codeterminize(const Bta& a, CodeterminizeOptions options) {
    const Bta source = options.pretrim ? trim_unreachable(a) : a;
    auto r = cosubset(source, source.final_states(), options.max_states);
    return trim_empty(Bta(source.alphabet(), std::move(r.names), std::move(r.rules), StateSet{r.start}));
}

Tta reverse_bta(const Bta& a) { return Tta(a.alphabet(), a.state_names(), a.rules(), a.final_states()); }

Bta reverse_tta(const Tta& t) { return Bta(t.alphabet(), t.state_names(), t.rules(), t.initial_states()); }

Bta complete(const Bta& d) {
    if (!is_deterministic(d))
        throw PreconditionError("complete needs a deterministic automaton");
    if (is_complete(d))
        return d;
    std::string dead = kDeadStateName;
    for (int k = 1; d.find_state(dead); ++k)
        dead = std::string(kDeadStateName) + std::to_string(k);

    std::vector<std::string> names = d.state_names();
    const State sink = static_cast<State>(names.size());
    names.push_back(dead);
    std::vector<Rule> rules = d.rules();
    const auto& alphabet = d.alphabet();
    for (std::size_t s = 0; s < alphabet.size(); ++s) {
        for_each_tuple(alphabet.arity(s), names.size(), [&](const std::vector<State>& idx) {
            bool uses_sink = std::find(idx.begin(), idx.end(), sink) != idx.end();
            if (uses_sink || d.transitions().targets(s, idx).empty())
                rules.push_back({s, idx, sink});
        });
    }
    return Bta(alphabet, std::move(names), std::move(rules), d.final_states());
}

Tta tta_determinize(const Tta& t, std::size_t max_states) {
    if (has_unreachable_states(reverse_tta(t)))
        throw PreconditionError("top-down determinization needs every state to have a nonempty language");
    auto r = cosubset(t, t.initial_states(), max_states);
    return Tta(t.alphabet(), std::move(r.names), std::move(r.rules), StateSet{r.start});
}

} // namespace treeca
