#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace treeca {

inline constexpr std::string_view kHoleLabel = "<>";
inline constexpr std::size_t kDefaultEnumerationBudget = 1000000;

bool is_symbol_name(std::string_view name);

// Symbols are kept sorted by name; a symbol's index is its rank in that order.
class RankedAlphabet {
public:
    RankedAlphabet() = default;
    RankedAlphabet(std::initializer_list<std::pair<std::string, unsigned>> symbols);

    void add(const std::string& name, unsigned arity);

    std::size_t size() const noexcept { return symbols_.size(); }
    bool empty() const noexcept { return symbols_.empty(); }
    const std::string& name(std::size_t symbol) const { return symbols_.at(symbol).first; }
    unsigned arity(std::size_t symbol) const { return symbols_.at(symbol).second; }
    std::optional<std::size_t> find(std::string_view name) const;
    bool contains(std::string_view name) const { return find(name).has_value(); }

    unsigned max_arity() const noexcept;
    bool has_leaf() const noexcept;
    std::vector<std::size_t> symbols_of_arity(unsigned arity) const;

    // "F/0 T/0 and/2"
    std::string to_string() const;

    friend bool operator==(const RankedAlphabet&, const RankedAlphabet&) = default;

private:
    std::vector<std::pair<std::string, unsigned>> symbols_;
};

// 1-based child indices from the root; the empty address is the root.
class Address {
public:
    Address() = default;
    explicit Address(std::vector<std::size_t> steps);

    const std::vector<std::size_t>& steps() const noexcept { return steps_; }
    std::size_t length() const noexcept { return steps_.size(); }
    bool is_root() const noexcept { return steps_.empty(); }
    Address child(std::size_t index) const;
    bool is_prefix_of(const Address& other) const;
    std::string to_string() const;

    friend auto operator<=>(const Address&, const Address&) = default;

private:
    std::vector<std::size_t> steps_;
};

// Immutable tree with shared subtrees; copies are cheap.
class Tree {
public:
    explicit Tree(std::string label, std::vector<Tree> children = {});

    static Tree hole();

    const std::string& label() const noexcept { return node_->label; }
    const std::vector<Tree>& children() const noexcept { return node_->children; }
    const Tree& child(std::size_t index) const;  // 1-based
    std::size_t arity() const noexcept { return node_->children.size(); }
    bool is_leaf() const noexcept { return node_->children.empty(); }
    bool is_hole() const noexcept { return node_->label == kHoleLabel; }
    std::size_t height() const noexcept { return node_->height; }
    std::size_t size() const noexcept { return node_->size; }
    std::size_t hole_count() const noexcept { return node_->holes; }

    // Identity of the shared node, stable while any copy is alive.
    const void* id() const noexcept { return node_.get(); }

    std::string to_string() const;

    friend bool operator==(const Tree& a, const Tree& b);
    // Height first, then root label, then children left to right.
    friend std::strong_ordering operator<=>(const Tree& a, const Tree& b);

private:
    struct Node {
        std::string label;
        std::vector<Tree> children;
        std::size_t height;
        std::size_t size;
        std::size_t holes;
    };
    std::shared_ptr<const Node> node_;
};

struct SpineStep {
    std::string symbol;
    std::size_t index;  // 1-based

    friend auto operator<=>(const SpineStep&, const SpineStep&) = default;
};
using Spine = std::vector<SpineStep>;

// Tree over the alphabet plus a single hole leaf.
class Context {
public:
    explicit Context(Tree tree);

    static Context hole();

    const Tree& tree() const noexcept { return tree_; }
    const Address& pivot() const noexcept { return pivot_; }
    std::size_t hole_height() const noexcept { return pivot_.length() + 1; }
    std::size_t height() const noexcept { return tree_.height(); }
    bool is_hole() const noexcept { return tree_.is_hole(); }
    // Symbols and child indices from the root down to the pivot.
    Spine spine() const;

    std::string to_string() const { return tree_.to_string(); }

    friend bool operator==(const Context& a, const Context& b) { return a.tree_ == b.tree_; }
    friend std::strong_ordering operator<=>(const Context& a, const Context& b) {
        return a.tree_ <=> b.tree_;
    }

private:
    Tree tree_;
    Address pivot_;
};

// Parses a term possibly containing holes.
Tree parse_term(std::string_view text);
Tree parse_tree(std::string_view text);
Context parse_context(std::string_view text);

bool is_well_ranked(const Tree& t, const RankedAlphabet& alphabet);
// Throws RankError naming the first offending node.
void check_well_ranked(const Tree& t, const RankedAlphabet& alphabet);
bool is_well_ranked(const Context& x, const RankedAlphabet& alphabet);

std::vector<Address> nodes(const Tree& t);
bool has_node(const Tree& t, const Address& v);
const Tree& subtree_at(const Tree& t, const Address& v);
const std::string& label_at(const Tree& t, const Address& v);

Tree substitute(const Tree& t, const Address& v, const Tree& replacement);
Tree plug(const Context& x, const Tree& t);
Context plug(const Context& x, const Context& y);
Context puncture(const Tree& t, const Address& v);

// Alternating symbol and child-index tokens ending in a leaf symbol.
using Path = std::vector<std::string>;
std::string path_to_string(const Path& p);
std::set<Path> path_language(const Tree& t);

std::vector<Tree> enumerate_trees(const RankedAlphabet& alphabet, std::size_t max_height,
                                  std::size_t budget = kDefaultEnumerationBudget);
std::vector<Context> enumerate_contexts(const RankedAlphabet& alphabet, std::size_t max_height,
                                        std::size_t budget = kDefaultEnumerationBudget);

} // namespace treeca
