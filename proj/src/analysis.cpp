#include "treeca/analysis.hpp"

#include "treeca/error.hpp"
#include "treeca/minimize.hpp"
#include "treeca/transforms.hpp"

#include <map>

namespace treeca {

Spine spine_of(const Context& x) { return x.spine(); }

bool root_to_pivot_equiv(const Bta& a, const Context& x, const Context& y, const StateSet& s) {
    return spine_of(x) == spine_of(y) && wpre(a, x, s).empty() == wpre(a, y, s).empty();
}

namespace {

// pre on an automaton whose states all have trees.
StateSet pre_trimmed(const Bta& t, const Context& x, const StateSet& s) {
    if (wpre(t, x, s).empty())
        return {};
    StateSet r = s;
    for (const auto& step : x.spine()) {
        const std::size_t sym = *t.alphabet().find(step.symbol);
        std::vector<State> next;
        for (const auto& rule : t.transitions().of_symbol(sym))
            if (r.contains(rule.target))
                next.push_back(rule.children[step.index - 1]);
        r = StateSet(std::move(next));
    }
    return r;
}

StateSet translate(const Bta& from, const Bta& to, const StateSet& s) {
    std::vector<State> out;
    for (State q : s)
        if (auto p = to.find_state(from.state_name(q)))
            out.push_back(*p);
    return StateSet(std::move(out));
}

} // namespace

StateSet pre_context(const Bta& a, const Context& x, const StateSet& s) {
    if (!s.empty() && s.items().back() >= a.num_states())
        throw UnknownStateError("state index out of range");
    if (!has_unreachable_states(a))
        return pre_trimmed(a, x, s);
    const Bta t = trim_unreachable(a);
    return translate(t, a, pre_trimmed(t, x, translate(a, t, s)));
}

bool is_path_closed(const Bta& a) {
    const Bta t = trim_unreachable(a);
    return equivalent(t, codeterminize(t));
}

bool check_gen_det_u(const Bta& a) { return isomorphic(determinize(a), minimize_bta(a)); }

ProductCheck check_gen_det_u_product(const Bta& a) {
    const Bta m = minimize_bta(a);
    const auto& alphabet = a.alphabet();

    std::map<std::pair<StateSet, State>, std::size_t> index;
    std::vector<std::pair<StateSet, State>> pairs;
    auto visit = [&](StateSet s, State q) {
        auto key = std::make_pair(std::move(s), q);
        if (index.emplace(key, pairs.size()).second)
            pairs.push_back(std::move(key));
    };
    auto m_target = [&](std::size_t sym, const std::vector<State>& children) {
        return m.transitions().targets(sym, children).items().front();
    };

    for (std::size_t s : alphabet.symbols_of_arity(0))
        visit(a.transitions().targets(s, {}), m_target(s, {}));
    std::size_t done = 0;
    while (done < pairs.size()) {
        const std::size_t bound = pairs.size();
        for (std::size_t s = 0; s < alphabet.size(); ++s) {
            const unsigned n = alphabet.arity(s);
            if (n == 0)
                continue;
            std::vector<std::size_t> idx(n, 0);
            while (true) {
                bool fresh = false;
                for (std::size_t i : idx)
                    fresh = fresh || i >= done;
                if (fresh) {
                    std::vector<StateSet> sets;
                    std::vector<State> ms;
                    for (std::size_t i : idx) {
                        sets.push_back(pairs[i].first);
                        ms.push_back(pairs[i].second);
                    }
                    visit(a.transitions().apply(s, sets), m_target(s, ms));
                }
                std::size_t k = n;
                while (k > 0 && ++idx[k - 1] == bound)
                    idx[--k] = 0;
                if (k == 0)
                    break;
            }
        }
        done = bound;
    }

    // first subset seen with each minimal state
    std::map<State, const StateSet*> first;
    for (const auto& [s, q] : pairs) {
        auto [it, inserted] = first.emplace(q, &s);
        if (inserted || *it->second == s)
            continue;
        const StateSet diff = (*it->second - s) | (s - *it->second);
        const State witness_state = diff.items().front();
        const StateSet& with = it->second->contains(witness_state) ? *it->second : s;
        const StateSet& without = it->second->contains(witness_state) ? s : *it->second;
        ProductCheck r;
        r.holds = false;
        r.witness = GenDetWitness{a.state_name(witness_state), m.state_name(q), subset_name(a.names(with)),
                                  subset_name(a.names(without))};
        return r;
    }
    return {};
}

bool check_gen_det_d(const Bta& a) {
    const Bta t = trim_unreachable(a);
    if (!is_path_closed(t))
        throw DomainError("the language is not path-closed, so it has no co-deterministic automaton");
    return isomorphic(codeterminize(t), min_codbta(t));
}

std::vector<StateClass<Tree>> bta_congruence_up(const Bta& a, std::size_t max_height, std::size_t budget) {
    std::vector<StateClass<Tree>> out;
    std::map<StateSet, std::size_t> index;
    PostCache cache(a);
    for (const auto& t : enumerate_trees(a.alphabet(), max_height, budget)) {
        const StateSet& key = cache.post(t);
        auto [it, inserted] = index.try_emplace(key, out.size());
        if (inserted)
            out.push_back({key, {}});
        out[it->second].members.push_back(t);
    }
    return out;
}

std::vector<StateClass<Context>> bta_congruence_down(const Bta& a, std::size_t max_height, std::size_t budget) {
    const bool trimmed = !has_unreachable_states(a);
    const Bta t = trimmed ? a : trim_unreachable(a);
    const StateSet f = t.final_states();
    std::vector<StateClass<Context>> out;
    std::map<StateSet, std::size_t> index;
    for (const auto& x : enumerate_contexts(a.alphabet(), max_height, budget)) {
        StateSet key = pre_trimmed(t, x, f);
        if (!trimmed)
            key = translate(t, a, key);
        auto [it, inserted] = index.try_emplace(key, out.size());
        if (inserted)
            out.push_back({key, {}});
        out[it->second].members.push_back(x);
    }
    return out;
}

} // namespace treeca
