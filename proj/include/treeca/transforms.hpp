#pragma once

#include "treeca/automaton.hpp"

#include <cstddef>

namespace treeca {

inline constexpr std::size_t kDefaultSubsetBudget = std::size_t{1} << 16;

// Subset construction over reachable subsets. The empty subset is a state
// whenever some tree has no run, so the result is always complete.
Bta determinize(const Bta& a, std::size_t max_states = kDefaultSubsetBudget);

struct CodeterminizeOptions {
    bool pretrim = true;  // drop unreachable states first
    std::size_t max_states = kDefaultSubsetBudget;
};

// Co-subset construction explored from the final set, with empty states removed.
Bta codeterminize(const Bta& a, CodeterminizeOptions options = {});

Tta reverse_bta(const Bta& a);
Bta reverse_tta(const Tta& t);

inline constexpr const char* kDeadStateName = "__dead";

// Adds a sink for missing transitions; identity on complete inputs.
Bta complete(const Bta& d);

// Top-down subset construction from the initial set. Requires every state
// to have a nonempty downward language.
Tta tta_determinize(const Tta& t, std::size_t max_states = kDefaultSubsetBudget);

} // namespace treeca
