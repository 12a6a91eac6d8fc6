#pragma once

// Brute-force checks over bounded enumerations. Everything here goes through
// plug and accepts only, so it can stand in judgement of the symbolic code.

#include "treeca/automaton.hpp"

#include <vector>

namespace treeca {

std::vector<Tree> language_upto(const Bta& a, std::size_t max_height,
                                std::size_t budget = kDefaultEnumerationBudget);

// Trees grouped by which enumerated contexts accept them.
std::vector<std::vector<Tree>> nerode_classes_up(const Bta& a, std::size_t tree_height, std::size_t context_height,
                                                 std::size_t budget = kDefaultEnumerationBudget);
// Contexts grouped by which enumerated trees they accept.
std::vector<std::vector<Context>> nerode_classes_down(const Bta& a, std::size_t context_height,
                                                      std::size_t tree_height,
                                                      std::size_t budget = kDefaultEnumerationBudget);

// x belongs to the quotient of L by t.
bool quotient_member_up(const Bta& a, const Tree& t, const Context& x);
// t belongs to the quotient of L by x.
bool quotient_member_down(const Bta& a, const Context& x, const Tree& t);

// Same accepted trees up to the given height.
bool bounded_equal(const Bta& a, const Bta& b, std::size_t max_height,
                   std::size_t budget = kDefaultEnumerationBudget);

} // namespace treeca
