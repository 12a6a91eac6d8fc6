#pragma once

#include "treeca/automaton.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace treeca {

Spine spine_of(const Context& x);

// Same spine, and both or neither context reaches s.
bool root_to_pivot_equiv(const Bta& a, const Context& x, const Context& y, const StateSet& s);

// Co-determinization steps from s along the spine of x, or the empty set when
// x reaches no state of s at all. States without trees are removed first; the
// result is expressed in the states of `a`.
StateSet pre_context(const Bta& a, const Context& x, const StateSet& s);

bool is_path_closed(const Bta& a);

// Determinizing yields the minimal DBTA.
bool check_gen_det_u(const Bta& a);

struct GenDetWitness {
    std::string q;        // state of the input
    std::string m;        // state of the minimal DBTA
    std::string s;        // subsets reached together with m,
    std::string s_prime;  // one containing q and one not
};

struct ProductCheck {
    bool holds = true;
    std::optional<GenDetWitness> witness;
};

// Same question answered on the product of the subset automaton and the
// minimal DBTA: membership of each input state must be constant per minimal state.
ProductCheck check_gen_det_u_product(const Bta& a);

// Co-determinizing yields the minimal co-DBTA. Unreachable states are removed
// first; the language must be path-closed.
bool check_gen_det_d(const Bta& a);

template <class T>
struct StateClass {
    StateSet key;
    std::vector<T> members;
};

// Enumerated trees grouped by their post set from the initial states.
std::vector<StateClass<Tree>> bta_congruence_up(const Bta& a, std::size_t max_height,
                                                std::size_t budget = kDefaultEnumerationBudget);
// Enumerated contexts grouped by pre from the final states.
std::vector<StateClass<Context>> bta_congruence_down(const Bta& a, std::size_t max_height,
                                                     std::size_t budget = kDefaultEnumerationBudget);

} // namespace treeca
