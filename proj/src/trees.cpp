#include "treeca/trees.hpp"

#include "treeca/error.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>

namespace treeca {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line), column_(column) {}

bool is_symbol_name(std::string_view name) {
    if (name.empty())
        return false;
    return std::all_of(name.begin(), name.end(), [](unsigned char c) {
        return std::isalnum(c) != 0 || c == '_';
    });
}

// ---------------------------------------------------------------------------
// RankedAlphabet

RankedAlphabet::RankedAlphabet(std::initializer_list<std::pair<std::string, unsigned>> symbols) {
    for (const auto& [name, arity] : symbols)
        add(name, arity);
}

void RankedAlphabet::add(const std::string& name, unsigned arity) {
    if (!is_symbol_name(name))
        throw RankError("invalid symbol name '" + name + "'");
    auto it = std::lower_bound(symbols_.begin(), symbols_.end(), name,
                               [](const auto& entry, const std::string& n) { return entry.first < n; });
    if (it != symbols_.end() && it->first == name)
        throw RankError("duplicate alphabet entry '" + name + "'");
    symbols_.insert(it, {name, arity});
}

std::optional<std::size_t> RankedAlphabet::find(std::string_view name) const {
    auto it = std::lower_bound(symbols_.begin(), symbols_.end(), name,
                               [](const auto& entry, std::string_view n) { return entry.first < n; });
    if (it == symbols_.end() || it->first != name)
        return std::nullopt;
    return static_cast<std::size_t>(it - symbols_.begin());
}

unsigned RankedAlphabet::max_arity() const noexcept {
    unsigned m = 0;
    for (const auto& s : symbols_)
        m = std::max(m, s.second);
    return m;
}

bool RankedAlphabet::has_leaf() const noexcept {
    return std::any_of(symbols_.begin(), symbols_.end(), [](const auto& s) { return s.second == 0; });
}

std::vector<std::size_t> RankedAlphabet::symbols_of_arity(unsigned arity) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < symbols_.size(); ++i)
        if (symbols_[i].second == arity)
            out.push_back(i);
    return out;
}

std::string RankedAlphabet::to_string() const {
    std::string out;
    for (const auto& [name, arity] : symbols_) {
        if (!out.empty())
            out += ' ';
        out += name + "/" + std::to_string(arity);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Address

Address::Address(std::vector<std::size_t> steps) : steps_(std::move(steps)) {
    for (std::size_t s : steps_)
        if (s == 0)
            throw AddressError("child indices are 1-based");
}

Address Address::child(std::size_t index) const {
    auto steps = steps_;
    steps.push_back(index);
    return Address(std::move(steps));
}

bool Address::is_prefix_of(const Address& other) const {
    return steps_.size() <= other.steps_.size() &&
           std::equal(steps_.begin(), steps_.end(), other.steps_.begin());
}

std::string Address::to_string() const {
    if (steps_.empty())
        return "e";
    std::string out;
    for (std::size_t i = 0; i < steps_.size(); ++i) {
        if (i)
            out += '.';
        out += std::to_string(steps_[i]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Tree

Tree::Tree(std::string label, std::vector<Tree> children) {
    if (label.empty())
        throw Error("empty tree label");
    const bool hole = label == kHoleLabel;
    if (hole && !children.empty())
        throw MalformedContextError("the hole must be a leaf");
    std::size_t height = 0, size = 1, holes = hole ? 1 : 0;
    for (const auto& c : children) {
        height = std::max(height, c.height());
        size += c.size();
        holes += c.hole_count();
    }
    node_ = std::make_shared<const Node>(Node{std::move(label), std::move(children), height + 1, size, holes});
}

Tree Tree::hole() {
    static const Tree h{std::string(kHoleLabel)};
    return h;
}

const Tree& Tree::child(std::size_t index) const {
    if (index == 0 || index > arity())
        throw AddressError("child " + std::to_string(index) + " of '" + label() + "' does not exist");
    return node_->children[index - 1];
}

namespace {

void print(const Tree& t, std::string& out) {
    out += t.label();
    if (t.is_leaf())
        return;
    out += '(';
    bool first = true;
    for (const auto& c : t.children()) {
        if (!first)
            out += ',';
        first = false;
        print(c, out);
    }
    out += ')';
}

} // namespace

std::string Tree::to_string() const {
    std::string out;
    print(*this, out);
    return out;
}

bool operator==(const Tree& a, const Tree& b) {
    if (a.node_ == b.node_)
        return true;
    if (a.size() != b.size() || a.height() != b.height() || a.label() != b.label())
        return false;
    return a.children() == b.children();
}

std::strong_ordering operator<=>(const Tree& a, const Tree& b) {
    if (a.node_ == b.node_)
        return std::strong_ordering::equal;
    if (auto c = a.height() <=> b.height(); c != 0)
        return c;
    if (auto c = a.label().compare(b.label()); c != 0)
        return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    return std::lexicographical_compare_three_way(a.children().begin(), a.children().end(),
                                                  b.children().begin(), b.children().end());
}

// ---------------------------------------------------------------------------
// Context

namespace {

Address find_hole(const Tree& t) {
    std::vector<std::size_t> steps;
    const Tree* cur = &t;
    while (!cur->is_hole()) {
        std::size_t i = 0;
        while (cur->children()[i].hole_count() == 0)
            ++i;
        steps.push_back(i + 1);
        cur = &cur->children()[i];
    }
    return Address(std::move(steps));
}

} // namespace

Context::Context(Tree tree) : tree_(std::move(tree)) {
    if (tree_.hole_count() != 1)
        throw MalformedContextError("a context needs exactly one hole, '" + tree_.to_string() + "' has " +
                                    std::to_string(tree_.hole_count()));
    pivot_ = find_hole(tree_);
}

Context Context::hole() { return Context(Tree::hole()); }

Spine Context::spine() const {
    Spine out;
    const Tree* cur = &tree_;
    for (std::size_t i : pivot_.steps()) {
        out.push_back({cur->label(), i});
        cur = &cur->children()[i - 1];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class TermParser {
public:
    explicit TermParser(std::string_view text) : text_(text) {}

    Tree parse_all() {
        Tree t = term();
        skip_ws();
        if (pos_ != text_.size())
            fail("unexpected '" + std::string(1, text_[pos_]) + "' after term");
        return t;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(1, pos_ + 1, what); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Tree term() {
        skip_ws();
        if (text_.substr(pos_, kHoleLabel.size()) == kHoleLabel) {
            pos_ += kHoleLabel.size();
            return Tree::hole();
        }
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        if (start == pos_)
            fail(pos_ < text_.size() ? "expected a symbol, got '" + std::string(1, text_[pos_]) + "'"
                                     : "expected a symbol, got end of input");
        std::string label(text_.substr(start, pos_ - start));
        std::vector<Tree> children;
        if (eat('(')) {
            if (!eat(')')) {
                do {
                    children.push_back(term());
                } while (eat(','));
                if (!eat(')'))
                    fail("expected ',' or ')'");
            }
        }
        return Tree(std::move(label), std::move(children));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

Tree parse_term(std::string_view text) { return TermParser(text).parse_all(); }

Tree parse_tree(std::string_view text) {
    Tree t = parse_term(text);
    if (t.hole_count() != 0)
        throw MalformedContextError("a tree may not contain a hole");
    return t;
}

Context parse_context(std::string_view text) { return Context(parse_term(text)); }

// ---------------------------------------------------------------------------
// Ranking and addressing

namespace {

const Tree* first_ill_ranked(const Tree& t, const RankedAlphabet& alphabet, bool allow_hole) {
    if (t.is_hole())
        return allow_hole ? nullptr : &t;
    auto s = alphabet.find(t.label());
    if (!s || alphabet.arity(*s) != t.arity())
        return &t;
    for (const auto& c : t.children())
        if (const Tree* bad = first_ill_ranked(c, alphabet, allow_hole))
            return bad;
    return nullptr;
}

} // namespace

bool is_well_ranked(const Tree& t, const RankedAlphabet& alphabet) {
    return first_ill_ranked(t, alphabet, false) == nullptr;
}

bool is_well_ranked(const Context& x, const RankedAlphabet& alphabet) {
    return first_ill_ranked(x.tree(), alphabet, true) == nullptr;
}

void check_well_ranked(const Tree& t, const RankedAlphabet& alphabet) {
    const Tree* bad = first_ill_ranked(t, alphabet, true);
    if (!bad)
        return;
    auto s = alphabet.find(bad->label());
    if (!s)
        throw RankError("unknown symbol '" + bad->label() + "'");
    throw RankError("symbol '" + bad->label() + "' has arity " + std::to_string(alphabet.arity(*s)) +
                    " but is applied to " + std::to_string(bad->arity()) + " children");
}

namespace {

void collect_nodes(const Tree& t, std::vector<std::size_t>& prefix, std::vector<Address>& out) {
    out.emplace_back(prefix);
    for (std::size_t i = 0; i < t.arity(); ++i) {
        prefix.push_back(i + 1);
        collect_nodes(t.children()[i], prefix, out);
        prefix.pop_back();
    }
}

Tree replace_at(const Tree& t, const std::vector<std::size_t>& steps, std::size_t depth, const Tree& r) {
    if (depth == steps.size())
        return r;
    std::size_t i = steps[depth];
    if (i == 0 || i > t.arity())
        throw AddressError("address does not exist in '" + t.to_string() + "'");
    std::vector<Tree> children = t.children();
    children[i - 1] = replace_at(children[i - 1], steps, depth + 1, r);
    return Tree(t.label(), std::move(children));
}

void collect_paths(const Tree& t, Path& prefix, std::set<Path>& out) {
    prefix.push_back(t.label());
    if (t.is_leaf()) {
        out.insert(prefix);
    } else {
        for (std::size_t i = 0; i < t.arity(); ++i) {
            prefix.push_back(std::to_string(i + 1));
            collect_paths(t.children()[i], prefix, out);
            prefix.pop_back();
        }
    }
    prefix.pop_back();
}

} // namespace

std::vector<Address> nodes(const Tree& t) {
    std::vector<Address> out;
    std::vector<std::size_t> prefix;
    collect_nodes(t, prefix, out);
    return out;
}

bool has_node(const Tree& t, const Address& v) {
    const Tree* cur = &t;
    for (std::size_t i : v.steps()) {
        if (i > cur->arity())
            return false;
        cur = &cur->children()[i - 1];
    }
    return true;
}

const Tree& subtree_at(const Tree& t, const Address& v) {
    const Tree* cur = &t;
    for (std::size_t i : v.steps())
        cur = &cur->child(i);
    return *cur;
}

const std::string& label_at(const Tree& t, const Address& v) { return subtree_at(t, v).label(); }

Tree substitute(const Tree& t, const Address& v, const Tree& replacement) {
    return replace_at(t, v.steps(), 0, replacement);
}

Tree plug(const Context& x, const Tree& t) { return substitute(x.tree(), x.pivot(), t); }

Context plug(const Context& x, const Context& y) { return Context(substitute(x.tree(), x.pivot(), y.tree())); }

Context puncture(const Tree& t, const Address& v) {
    if (t.hole_count() != 0)
        throw MalformedContextError("cannot puncture a tree that already has a hole");
    return Context(substitute(t, v, Tree::hole()));
}

std::string path_to_string(const Path& p) {
    std::string out;
    for (const auto& tok : p)
        out += tok;
    return out;
}

std::set<Path> path_language(const Tree& t) {
    std::set<Path> out;
    Path prefix;
    collect_paths(t, prefix, out);
    return out;
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

constexpr std::size_t kSaturated = std::numeric_limits<std::size_t>::max();

std::size_t sat_add(std::size_t a, std::size_t b) { return a > kSaturated - b ? kSaturated : a + b; }

std::size_t sat_mul(std::size_t a, std::size_t b) {
    if (a == 0 || b == 0)
        return 0;
    return a > kSaturated / b ? kSaturated : a * b;
}

std::size_t sat_pow(std::size_t a, unsigned n) {
    std::size_t r = 1;
    for (unsigned i = 0; i < n; ++i)
        r = sat_mul(r, a);
    return r;
}

// Number of trees of height at most h, for h = 0..max_height.
std::vector<std::size_t> tree_counts(const RankedAlphabet& alphabet, std::size_t max_height) {
    std::vector<std::size_t> upto(max_height + 1, 0);
    for (std::size_t h = 1; h <= max_height; ++h) {
        std::size_t n = 0;
        for (std::size_t s = 0; s < alphabet.size(); ++s)
            n = sat_add(n, sat_pow(upto[h - 1], alphabet.arity(s)));
        upto[h] = n;
    }
    return upto;
}

[[noreturn]] void over_budget(std::size_t budget, const char* what) {
    throw BudgetError(std::string("enumerating ") + what + " exceeds the budget of " +
                      std::to_string(budget));
}

// Calls f on every tuple of indices in [0, bound)^n, in lexicographic order.
template <class F>
void for_each_tuple(unsigned n, std::size_t bound, F&& f) {
    std::vector<std::size_t> idx(n, 0);
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

} // namespace

std::vector<Tree> enumerate_trees(const RankedAlphabet& alphabet, std::size_t max_height, std::size_t budget) {
    if (max_height == 0)
        return {};
    auto counts = tree_counts(alphabet, max_height);
    if (counts[max_height] > budget)
        over_budget(budget, "trees");

    std::vector<Tree> out;
    out.reserve(counts[max_height]);
    for (std::size_t s : alphabet.symbols_of_arity(0))
        out.emplace_back(alphabet.name(s));
    std::size_t level_start = 0;  // first index of the previous height
    for (std::size_t h = 2; h <= max_height; ++h) {
        const std::size_t bound = out.size();
        for (std::size_t s = 0; s < alphabet.size(); ++s) {
            unsigned n = alphabet.arity(s);
            if (n == 0)
                continue;
            for_each_tuple(n, bound, [&](const std::vector<std::size_t>& idx) {
                if (*std::max_element(idx.begin(), idx.end()) < level_start)
                    return;
                std::vector<Tree> children;
                children.reserve(n);
                for (std::size_t i : idx)
                    children.push_back(out[i]);
                out.emplace_back(alphabet.name(s), std::move(children));
            });
        }
        level_start = bound;
    }
    return out;
}

std::vector<Context> enumerate_contexts(const RankedAlphabet& alphabet, std::size_t max_height,
                                        std::size_t budget) {
    if (max_height == 0)
        return {};
    auto tcounts = tree_counts(alphabet, max_height);
    // ctx[h] = number of contexts of height at most h.
    std::vector<std::size_t> ccounts(max_height + 1, 0);
    ccounts[1] = 1;
    for (std::size_t h = 2; h <= max_height; ++h) {
        std::size_t n = 1;
        for (std::size_t s = 0; s < alphabet.size(); ++s) {
            unsigned a = alphabet.arity(s);
            if (a > 0)
                n = sat_add(n, sat_mul(a, sat_mul(ccounts[h - 1], sat_pow(tcounts[h - 1], a - 1))));
        }
        ccounts[h] = n;
    }
    if (ccounts[max_height] > budget)
        over_budget(budget, "contexts");

    const std::vector<Tree> trees = enumerate_trees(alphabet, max_height - 1, budget);
    std::vector<Context> out{Context::hole()};
    std::size_t ctx_level_start = 0;
    auto trees_upto = [&](std::size_t h) { return tcounts[h]; };
    for (std::size_t h = 2; h <= max_height; ++h) {
        const std::size_t cbound = out.size();
        const std::size_t tbound = trees_upto(h - 1);
        const std::size_t tree_level_start = trees_upto(h - 2);
        std::vector<Context> level;
        for (std::size_t s = 0; s < alphabet.size(); ++s) {
            unsigned n = alphabet.arity(s);
            for (unsigned pos = 0; pos < n; ++pos) {
                for (std::size_t ci = 0; ci < cbound; ++ci) {
                    for_each_tuple(n - 1, tbound, [&](const std::vector<std::size_t>& idx) {
                        bool tall = ci >= ctx_level_start;
                        for (std::size_t i : idx)
                            tall = tall || i >= tree_level_start;
                        if (!tall)
                            return;
                        std::vector<Tree> children;
                        children.reserve(n);
                        for (unsigned k = 0, j = 0; k < n; ++k)
                            children.push_back(k == pos ? out[ci].tree() : trees[idx[j++]]);
                        level.emplace_back(Tree(alphabet.name(s), std::move(children)));
                    });
                }
            }
        }
        std::sort(level.begin(), level.end());
        out.insert(out.end(), level.begin(), level.end());
        ctx_level_start = cbound;
    }
    return out;
}

} // namespace treeca
