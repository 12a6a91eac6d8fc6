#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <vector>

namespace treeca {

// Index into an automaton's (name-sorted) state list.
using State = std::uint32_t;

// Sorted set of state indices.
class StateSet {
public:
    StateSet() = default;
    StateSet(std::initializer_list<State> states) : items_(states) { normalize(); }
    explicit StateSet(std::vector<State> states) : items_(std::move(states)) { normalize(); }

    static StateSet all(std::size_t n) {
        StateSet s;
        s.items_.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            s.items_[i] = static_cast<State>(i);
        return s;
    }

    bool empty() const noexcept { return items_.empty(); }
    std::size_t size() const noexcept { return items_.size(); }
    auto begin() const noexcept { return items_.begin(); }
    auto end() const noexcept { return items_.end(); }
    const std::vector<State>& items() const noexcept { return items_; }

    bool contains(State q) const { return std::binary_search(items_.begin(), items_.end(), q); }

    void insert(State q) {
        auto it = std::lower_bound(items_.begin(), items_.end(), q);
        if (it == items_.end() || *it != q)
            items_.insert(it, q);
    }

    bool intersects(const StateSet& o) const {
        auto a = items_.begin(), b = o.items_.begin();
        while (a != items_.end() && b != o.items_.end()) {
            if (*a == *b)
                return true;
            if (*a < *b)
                ++a;
            else
                ++b;
        }
        return false;
    }

    bool is_subset_of(const StateSet& o) const {
        return std::includes(o.items_.begin(), o.items_.end(), items_.begin(), items_.end());
    }

    friend StateSet operator|(const StateSet& a, const StateSet& b) {
        StateSet r;
        std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r.items_));
        return r;
    }
    friend StateSet operator&(const StateSet& a, const StateSet& b) {
        StateSet r;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r.items_));
        return r;
    }
    friend StateSet operator-(const StateSet& a, const StateSet& b) {
        StateSet r;
        std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r.items_));
        return r;
    }

    friend bool operator==(const StateSet&, const StateSet&) = default;
    friend auto operator<=>(const StateSet&, const StateSet&) = default;

private:
    void normalize() {
        std::sort(items_.begin(), items_.end());
        items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
    }

    std::vector<State> items_;
};

} // namespace treeca
