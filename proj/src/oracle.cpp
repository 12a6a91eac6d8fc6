#include "treeca/oracle.hpp"

#include "treeca/error.hpp"

#include <map>

namespace treeca {

std::vector<Tree> language_upto(const Bta& a, std::size_t max_height, std::size_t budget) {
    PostCache cache(a);
    std::vector<Tree> out;
    for (const auto& t : enumerate_trees(a.alphabet(), max_height, budget))
        if (cache.accepts(t))
            out.push_back(t);
    return out;
}

namespace {

template <class T, class Row>
std::vector<std::vector<T>> group_by_row(const std::vector<T>& items, Row&& row) {
    std::vector<std::vector<T>> out;
    std::map<std::vector<bool>, std::size_t> index;
    for (const auto& item : items) {
        auto [it, inserted] = index.try_emplace(row(item), out.size());
        if (inserted)
            out.emplace_back();
        out[it->second].push_back(item);
    }
    return out;
}

void check_product_budget(std::size_t rows, std::size_t cols, std::size_t budget) {
    if (rows != 0 && cols > budget * 64 / rows)
        throw BudgetError("oracle table exceeds the budget");
}

void warm(PostCache& cache, const std::vector<Tree>& trees, const std::vector<Context>& contexts) {
    for (const auto& t : trees)
        cache.post(t);
    for (const auto& x : contexts) {
        const Tree* cur = &x.tree();
        for (std::size_t i : x.pivot().steps()) {
            for (std::size_t j = 0; j < cur->arity(); ++j)
                if (j + 1 != i)
                    cache.post(cur->children()[j]);
            cur = &cur->children()[i - 1];
        }
    }
}

} // namespace

std::vector<std::vector<Tree>> nerode_classes_up(const Bta& a, std::size_t tree_height, std::size_t context_height,
                                                 std::size_t budget) {
    const auto trees = enumerate_trees(a.alphabet(), tree_height, budget);
    const auto contexts = enumerate_contexts(a.alphabet(), context_height, budget);
    check_product_budget(trees.size(), contexts.size(), budget);
    PostCache cache(a);
    warm(cache, trees, contexts);
    return group_by_row(trees, [&](const Tree& t) {
        std::vector<bool> row;
        row.reserve(contexts.size());
        for (const auto& x : contexts)
            row.push_back(cache.peek_accepts(plug(x, t)));
        return row;
    });
}

std::vector<std::vector<Context>> nerode_classes_down(const Bta& a, std::size_t context_height,
                                                      std::size_t tree_height, std::size_t budget) {
    const auto contexts = enumerate_contexts(a.alphabet(), context_height, budget);
    const auto trees = enumerate_trees(a.alphabet(), tree_height, budget);
    check_product_budget(trees.size(), contexts.size(), budget);
    PostCache cache(a);
    warm(cache, trees, contexts);
    return group_by_row(contexts, [&](const Context& x) {
        std::vector<bool> row;
        row.reserve(trees.size());
        for (const auto& t : trees)
            row.push_back(cache.peek_accepts(plug(x, t)));
        return row;
    });
}

bool quotient_member_up(const Bta& a, const Tree& t, const Context& x) { return accepts(a, plug(x, t)); }

bool quotient_member_down(const Bta& a, const Context& x, const Tree& t) { return accepts(a, plug(x, t)); }

bool bounded_equal(const Bta& a, const Bta& b, std::size_t max_height, std::size_t budget) {
    if (a.alphabet() != b.alphabet())
        return false;
    PostCache ca(a), cb(b);
    for (const auto& t : enumerate_trees(a.alphabet(), max_height, budget))
        if (ca.accepts(t) != cb.accepts(t))
            return false;
    return true;
}

} // namespace treeca
