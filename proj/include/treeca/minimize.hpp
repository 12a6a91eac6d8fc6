#pragma once

#include "treeca/automaton.hpp"

#include <optional>
#include <string>
#include <vector>

namespace treeca {

// Blocks are numbered by their least member.
class Partition {
public:
    Partition() = default;
    explicit Partition(const std::vector<std::size_t>& block_of);

    std::size_t num_blocks() const noexcept { return blocks_.size(); }
    std::size_t block_of(State q) const { return block_of_.at(q); }
    const std::vector<StateSet>& blocks() const noexcept { return blocks_; }
    // Every block of *this lies inside a block of `coarser`.
    bool refines(const Partition& coarser) const;

    friend bool operator==(const Partition&, const Partition&) = default;

private:
    std::vector<std::size_t> block_of_;
    std::vector<StateSet> blocks_;
};

// Coarsest congruence of a complete DBTA that separates final from non-final states.
// `history`, when given, receives every intermediate partition.
Partition moore_partition(const Bta& d, std::vector<Partition>* history = nullptr);

struct MinimizeOptions {
    bool strip_dead = false;  // also drop the class with an empty upward language
};

// Minimal complete DBTA; blocks are named after their least member.
Bta minimize_dbta(const Bta& d, MinimizeOptions options = {});
Bta minimize_bta(const Bta& a, MinimizeOptions options = {});
// Minimal co-DBTA; the language must be path-closed.
Bta min_codbta(const Bta& a);
// Double-reversal minimization; the language must be path-closed.
Bta brzozowski(const Bta& a);

// States renamed 0..n-1 in the order a breadth-first run discovers them.
// Requires a deterministic automaton without unreachable states.
Bta canonical_form(const Bta& d);
// Same for a co-deterministic automaton, discovered top-down from its final state.
// Empty when some state is not discovered.
std::optional<Bta> canonical_codet_form(const Bta& a);

bool isomorphic(const Bta& a, const Bta& b);

// Smallest-height tree accepted by exactly one of the two automata.
std::optional<Tree> separating_tree(const Bta& a, const Bta& b, std::size_t max_states = std::size_t{1} << 16);

struct EquivalenceResult {
    bool equivalent = false;
    std::optional<Tree> witness;
    std::string reason;
};

EquivalenceResult check_equivalence(const Bta& a, const Bta& b);
bool equivalent(const Bta& a, const Bta& b);

} // namespace treeca
