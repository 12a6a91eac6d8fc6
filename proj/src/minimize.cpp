#include "treeca/minimize.hpp"

#include "treeca/analysis.hpp"
#include "treeca/error.hpp"
#include "treeca/transforms.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace treeca {

// ---------------------------------------------------------------------------
// Partition

Partition::Partition(const std::vector<std::size_t>& block_of) {
    std::map<std::size_t, std::size_t> renumber;
    block_of_.reserve(block_of.size());
    for (std::size_t q = 0; q < block_of.size(); ++q) {
        auto [it, inserted] = renumber.try_emplace(block_of[q], blocks_.size());
        if (inserted)
            blocks_.emplace_back();
        block_of_.push_back(it->second);
        blocks_[it->second].insert(static_cast<State>(q));
    }
}

bool Partition::refines(const Partition& coarser) const {
    if (block_of_.size() != coarser.block_of_.size())
        return false;
    for (const auto& b : blocks_)
        for (State q : b)
            if (coarser.block_of(q) != coarser.block_of(b.items().front()))
                return false;
    return true;
}

// ---------------------------------------------------------------------------
// Moore refinement

namespace {

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

// Dense transition table of a complete DBTA: targets in lexicographic tuple order.
struct DenseTable {
    std::size_t n = 0;
    std::vector<std::vector<State>> targets;  // per symbol

    explicit DenseTable(const Bta& d) : n(d.num_states()), targets(d.alphabet().size()) {
        for (std::size_t s = 0; s < d.alphabet().size(); ++s)
            for (const auto& r : d.transitions().of_symbol(s))
                targets[s].push_back(r.target);
    }

    State at(std::size_t s, const std::vector<State>& tuple) const {
        std::size_t rank = 0;
        for (State q : tuple)
            rank = rank * n + q;
        return targets[s][rank];
    }
};

} // namespace

Partition moore_partition(const Bta& d, std::vector<Partition>* history) {
    if (!is_deterministic(d) || !is_complete(d))
        throw PreconditionError("Moore refinement needs a complete deterministic automaton");
    const DenseTable table(d);
    const auto& alphabet = d.alphabet();
    const std::size_t n = d.num_states();

    std::vector<std::size_t> init(n);
    for (State q = 0; q < n; ++q)
        init[q] = d.final_states().contains(q) ? 0 : 1;
    Partition p(init);
    if (history)
        history->push_back(p);

    while (true) {
        std::map<std::vector<std::size_t>, std::size_t> ids;
        std::vector<std::size_t> next(n);
        for (State q = 0; q < n; ++q) {
            std::vector<std::size_t> sig{p.block_of(q)};
            for (std::size_t s = 0; s < alphabet.size(); ++s) {
                const unsigned k = alphabet.arity(s);
                for (unsigned pos = 0; pos < k; ++pos) {
                    for_each_tuple(k - 1, n, [&](const std::vector<State>& others) {
                        std::vector<State> tuple;
                        tuple.reserve(k);
                        for (unsigned i = 0, j = 0; i < k; ++i)
                            tuple.push_back(i == pos ? q : others[j++]);
                        sig.push_back(p.block_of(table.at(s, tuple)));
                    });
                }
            }
            next[q] = ids.try_emplace(std::move(sig), ids.size()).first->second;
        }
        Partition refined(next);
        const bool stable = refined.num_blocks() == p.num_blocks();
        p = std::move(refined);
        if (history && !stable)
            history->push_back(p);
        if (stable)
            return p;
    }
}

// ---------------------------------------------------------------------------
// Minimization

Bta minimize_dbta(const Bta& d, MinimizeOptions options) {
    if (!is_deterministic(d))
        throw PreconditionError("minimize_dbta needs a deterministic automaton");
    const Bta c = trim_unreachable(complete(d));
    const Partition p = moore_partition(c);
    const auto& alphabet = c.alphabet();

    std::vector<std::string> names;
    std::vector<State> rep;
    for (const auto& b : p.blocks()) {
        rep.push_back(b.items().front());
        names.push_back(c.state_name(b.items().front()));
    }
    std::vector<Rule> rules;
    const DenseTable table(c);
    for (std::size_t s = 0; s < alphabet.size(); ++s) {
        for_each_tuple(alphabet.arity(s), p.num_blocks(), [&](const std::vector<State>& blocks) {
            std::vector<State> reps;
            for (State b : blocks)
                reps.push_back(rep[b]);
            rules.push_back({s, blocks, static_cast<State>(p.block_of(table.at(s, reps)))});
        });
    }
    std::vector<State> final;
    for (std::size_t b = 0; b < p.num_blocks(); ++b)
        if (c.final_states().contains(rep[b]))
            final.push_back(static_cast<State>(b));
    Bta m(alphabet, std::move(names), std::move(rules), StateSet(std::move(final)));
    return options.strip_dead ? trim_empty(m) : m;
}

Bta minimize_bta(const Bta& a, MinimizeOptions options) { return minimize_dbta(determinize(a), options); }

Bta min_codbta(const Bta& a) {
    if (!is_path_closed(a))
        throw DomainError("the language is not path-closed, so it has no co-deterministic automaton");
    return codeterminize(determinize(a));
}

Bta brzozowski(const Bta& a) {
    if (!is_path_closed(a))
        throw DomainError("the language is not path-closed, so double reversal does not apply");
    const Bta t = trim_unreachable(a);
    return determinize(reverse_tta(tta_determinize(reverse_bta(t))));
}

// ---------------------------------------------------------------------------
// Canonical forms

namespace {

Bta renamed(const Bta& a, const std::vector<State>& order) {
    std::vector<State> canon(a.num_states());
    for (std::size_t i = 0; i < order.size(); ++i)
        canon[order[i]] = static_cast<State>(i);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < order.size(); ++i)
        names.push_back(std::to_string(i));
    std::vector<Rule> rules;
    for (const auto& r : a.rules()) {
        Rule nr{r.symbol, {}, canon[r.target]};
        for (State c : r.children)
            nr.children.push_back(canon[c]);
        rules.push_back(std::move(nr));
    }
    std::vector<State> final;
    for (State q : a.final_states())
        final.push_back(canon[q]);
    return Bta(a.alphabet(), std::move(names), std::move(rules), StateSet(std::move(final)));
}

} // namespace

Bta canonical_form(const Bta& d) {
    if (!is_deterministic(d))
        throw PreconditionError("canonical_form needs a deterministic automaton");
    const auto& alphabet = d.alphabet();
    const State none = static_cast<State>(-1);
    std::vector<State> order, canon(d.num_states(), none);
    auto visit = [&](const StateSet& t) {
        if (!t.empty() && canon[t.items().front()] == none) {
            canon[t.items().front()] = static_cast<State>(order.size());
            order.push_back(t.items().front());
        }
    };
    for (std::size_t s : alphabet.symbols_of_arity(0))
        visit(d.transitions().targets(s, {}));
    std::size_t done = 0;
    while (done < order.size()) {
        const std::size_t bound = order.size();
        for (std::size_t s = 0; s < alphabet.size(); ++s) {
            const unsigned n = alphabet.arity(s);
            if (n == 0)
                continue;
            for_each_tuple(n, bound, [&](const std::vector<State>& idx) {
                if (*std::max_element(idx.begin(), idx.end()) < done)
                    return;
                std::vector<State> tuple;
                for (State i : idx)
                    tuple.push_back(order[i]);
                visit(d.transitions().targets(s, tuple));
            });
        }
        done = bound;
    }
    if (order.size() != d.num_states())
        throw PreconditionError("canonical_form needs every state to be reachable");
    return renamed(d, order);
}

std::optional<Bta> canonical_codet_form(const Bta& a) {
    if (!is_codeterministic(a))
        return std::nullopt;
    const auto& alphabet = a.alphabet();
    std::map<std::pair<State, std::size_t>, const Rule*> expansion;
    for (const auto& r : a.rules())
        if (!r.children.empty())
            expansion[{r.target, r.symbol}] = &r;
    const State none = static_cast<State>(-1);
    std::vector<State> order{a.final_states().items().front()}, canon(a.num_states(), none);
    canon[order[0]] = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const State q = order[k];
        for (std::size_t s = 0; s < alphabet.size(); ++s) {
            auto it = expansion.find({q, s});
            if (it == expansion.end())
                continue;
            for (State c : it->second->children) {
                if (canon[c] == none) {
                    canon[c] = static_cast<State>(order.size());
                    order.push_back(c);
                }
            }
        }
    }
    if (order.size() != a.num_states())
        return std::nullopt;
    return renamed(a, order);
}

// ---------------------------------------------------------------------------
// Isomorphism

namespace {

std::vector<std::vector<std::size_t>> degree_signatures(const Bta& a) {
    const auto& alphabet = a.alphabet();
    std::vector<std::size_t> offset(alphabet.size() + 1, 1);
    for (std::size_t s = 0; s < alphabet.size(); ++s)
        offset[s + 1] = offset[s] + 1 + alphabet.arity(s);
    std::vector<std::vector<std::size_t>> sig(a.num_states(), std::vector<std::size_t>(offset.back(), 0));
    for (State q : a.final_states())
        sig[q][0] = 1;
    for (const auto& r : a.rules()) {
        ++sig[r.target][offset[r.symbol]];
        for (std::size_t i = 0; i < r.children.size(); ++i)
            ++sig[r.children[i]][offset[r.symbol] + 1 + i];
    }
    return sig;
}

bool backtracking_isomorphic(const Bta& a, const Bta& b) {
    const std::size_t n = a.num_states();
    const auto sa = degree_signatures(a);
    const auto sb = degree_signatures(b);
    std::vector<std::vector<State>> candidates(n);
    for (State q = 0; q < n; ++q)
        for (State p = 0; p < n; ++p)
            if (sa[q] == sb[p])
                candidates[q].push_back(p);

    const std::set<Rule> brules(b.rules().begin(), b.rules().end());
    std::vector<std::vector<const Rule*>> touching(n);
    for (const auto& r : a.rules()) {
        std::set<State> involved(r.children.begin(), r.children.end());
        involved.insert(r.target);
        for (State q : involved)
            touching[q].push_back(&r);
    }

    const State none = static_cast<State>(-1);
    std::vector<State> map(n, none);
    std::vector<bool> used(n, false);
    std::function<bool(State)> assign = [&](State q) -> bool {
        if (q == n)
            return true;
        for (State p : candidates[q]) {
            if (used[p])
                continue;
            map[q] = p;
            used[p] = true;
            bool ok = true;
            for (const Rule* r : touching[q]) {
                if (map[r->target] == none ||
                    std::any_of(r->children.begin(), r->children.end(), [&](State c) { return map[c] == none; }))
                    continue;
                Rule mr{r->symbol, {}, map[r->target]};
                for (State c : r->children)
                    mr.children.push_back(map[c]);
                if (!brules.count(mr)) {
                    ok = false;
                    break;
                }
            }
            if (ok && assign(q + 1))
                return true;
            used[p] = false;
            map[q] = none;
        }
        return false;
    };
    return assign(0);
}

} // namespace

bool isomorphic(const Bta& a, const Bta& b) {
    if (a.alphabet() != b.alphabet() || a.num_states() != b.num_states() || a.rules().size() != b.rules().size() ||
        a.final_states().size() != b.final_states().size())
        return false;
    if (is_deterministic(a) && is_deterministic(b) && !has_unreachable_states(a) && !has_unreachable_states(b))
        return canonical_form(a) == canonical_form(b);
    if (is_codeterministic(a) && is_codeterministic(b)) {
        auto ca = canonical_codet_form(a);
        auto cb = canonical_codet_form(b);
        if (ca && cb)
            return *ca == *cb;
    }
    return backtracking_isomorphic(a, b);
}

// ---------------------------------------------------------------------------
// Equivalence

std::optional<Tree> separating_tree(const Bta& a, const Bta& b, std::size_t max_states) {
    if (a.alphabet() != b.alphabet())
        throw PreconditionError("separating_tree needs a shared alphabet");
    const Bta da = determinize(a, max_states);
    const Bta db = determinize(b, max_states);
    const auto& alphabet = a.alphabet();

    std::map<std::pair<State, State>, State> index;
    std::vector<std::pair<State, State>> pairs;
    std::vector<Tree> witness;
    std::optional<Tree> found;
    auto visit = [&](std::pair<State, State> p, const Tree& t) {
        if (index.count(p))
            return;
        if (pairs.size() >= max_states)
            throw BudgetError("product search exceeds the budget of " + std::to_string(max_states) + " states");
        index.emplace(p, static_cast<State>(pairs.size()));
        pairs.push_back(p);
        witness.push_back(t);
        if (!found && da.final_states().contains(p.first) != db.final_states().contains(p.second))
            found = t;
    };
    auto target = [](const Bta& d, std::size_t s, const std::vector<State>& children) {
        return d.transitions().targets(s, children).items().front();
    };

    for (std::size_t s : alphabet.symbols_of_arity(0))
        visit({target(da, s, {}), target(db, s, {})}, Tree(alphabet.name(s)));
    std::size_t done = 0;
    while (!found && done < pairs.size()) {
        const std::size_t bound = pairs.size();
        for (std::size_t s = 0; s < alphabet.size() && !found; ++s) {
            const unsigned n = alphabet.arity(s);
            if (n == 0)
                continue;
            for_each_tuple(n, bound, [&](const std::vector<State>& idx) {
                if (found || *std::max_element(idx.begin(), idx.end()) < done)
                    return;
                std::vector<State> left, right;
                std::vector<Tree> children;
                for (State i : idx) {
                    left.push_back(pairs[i].first);
                    right.push_back(pairs[i].second);
                    children.push_back(witness[i]);
                }
                visit({target(da, s, left), target(db, s, right)}, Tree(alphabet.name(s), std::move(children)));
            });
        }
        done = bound;
    }
    return found;
}

EquivalenceResult check_equivalence(const Bta& a, const Bta& b) {
    EquivalenceResult r;
    if (a.alphabet() != b.alphabet()) {
        r.reason = "alphabets differ: " + a.alphabet().to_string() + " vs " + b.alphabet().to_string();
        return r;
    }
    r.equivalent = canonical_form(minimize_bta(a)) == canonical_form(minimize_bta(b));
    if (!r.equivalent) {
        r.witness = separating_tree(a, b);
        if (!r.witness)
            throw Error("internal error: minimal automata differ but no separating tree exists");
        r.reason = "separating tree " + r.witness->to_string();
    }
    return r;
}

bool equivalent(const Bta& a, const Bta& b) { return check_equivalence(a, b).equivalent; }

} // namespace treeca
