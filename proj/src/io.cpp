#include "treeca/io.hpp"

#include "treeca/error.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace treeca {

namespace {

class Cursor {
public:
    Cursor(std::string_view text, std::size_t line) : text_(text), line_(line) {}

    [[noreturn]] void fail(const std::string& what) const { fail_at(pos_, what); }
    [[noreturn]] void fail_at(std::size_t pos, const std::string& what) const {
        throw ParseError(line_, pos + 1, what);
    }

    std::size_t pos() const noexcept { return pos_; }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool at_end() {
        skip_ws();
        return pos_ == text_.size();
    }

    bool eat(std::string_view tok) {
        skip_ws();
        if (text_.substr(pos_, tok.size()) == tok) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }

    void expect(std::string_view tok) {
        if (!eat(tok))
            fail("expected '" + std::string(tok) + "'");
    }

    // Whitespace-delimited word.
    std::string word() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    std::string symbol() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        if (start == pos_)
            fail("expected a symbol");
        return std::string(text_.substr(start, pos_ - start));
    }

    std::string state() {
        skip_ws();
        std::size_t end = state_name_end(text_, pos_);
        if (end == std::string_view::npos)
            fail("expected a state name");
        std::string out(text_.substr(pos_, end - pos_));
        pos_ = end;
        return out;
    }

private:
    std::string_view text_;
    std::size_t line_;
    std::size_t pos_ = 0;
};

struct Line {
    std::string text;
    std::size_t number;
};

std::vector<Line> content_lines(std::string_view text) {
    std::vector<Line> out;
    std::size_t number = 0, start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        ++number;
        std::string line(text.substr(start, end - start));
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (std::any_of(line.begin(), line.end(), [](unsigned char c) { return !std::isspace(c); }))
            out.push_back({std::move(line), number});
        start = end + 1;
    }
    return out;
}

class FileParser {
public:
    AnyAutomaton parse(std::string_view text) {
        auto lines = content_lines(text);
        if (lines.empty())
            throw ParseError(1, 1, "missing header: expected 'bta' or 'tta'");
        {
            Cursor c(lines[0].text, lines[0].number);
            std::string header = c.word();
            if (header != "bta" && header != "tta")
                c.fail_at(0, "missing header: expected 'bta' or 'tta', got '" + header + "'");
            top_down_ = header == "tta";
            if (!c.at_end())
                c.fail("unexpected text after header");
        }
        for (std::size_t i = 1; i < lines.size(); ++i)
            parse_line(lines[i]);
        if (!have_alphabet_)
            throw ParseError(lines.back().number, 1, "missing 'alphabet' line");
        if (!alphabet_.has_leaf())
            throw ParseError(alphabet_line_, 1, "the alphabet needs at least one nullary symbol");
        if (top_down_)
            return Tta(alphabet_, names_, rules_, StateSet(distinguished_));
        return Bta(alphabet_, names_, rules_, StateSet(distinguished_));
    }

private:
    void parse_line(const Line& line) {
        Cursor c(line.text, line.number);
        c.skip_ws();
        const std::size_t start = c.pos();
        std::string first = c.word();
        if (first == "alphabet") {
            alphabet_line_ = line.number;
            parse_alphabet(c);
        } else if (first == "states") {
            while (!c.at_end()) {
                std::size_t at = c.pos();
                std::string q = c.state();
                if (!index_.try_emplace(q, static_cast<State>(names_.size())).second)
                    c.fail_at(at, "duplicate state '" + q + "'");
                names_.push_back(q);
            }
        } else if (first == (top_down_ ? "initial" : "final")) {
            while (!c.at_end())
                distinguished_.push_back(declared(c));
        } else if (first == (top_down_ ? "final" : "initial")) {
            c.fail_at(start, std::string("'") + first + "' is not allowed in a " + (top_down_ ? "tta" : "bta") +
                                 " file");
        } else {
            Cursor r(line.text, line.number);
            if (top_down_)
                parse_tta_rule(r);
            else
                parse_bta_rule(r);
        }
    }

    void parse_alphabet(Cursor& c) {
        have_alphabet_ = true;
        while (!c.at_end()) {
            std::size_t at = c.pos();
            std::string entry = c.word();
            auto slash = entry.find('/');
            if (slash == std::string::npos || slash == 0 || slash + 1 == entry.size())
                c.fail_at(at, "alphabet entries look like name/arity, got '" + entry + "'");
            std::string name = entry.substr(0, slash);
            std::string arity = entry.substr(slash + 1);
            if (!is_symbol_name(name))
                c.fail_at(at, "invalid symbol name '" + name + "'");
            if (!std::all_of(arity.begin(), arity.end(), [](unsigned char ch) { return std::isdigit(ch); }) ||
                arity.size() > 4)
                c.fail_at(at + slash + 1, "invalid arity '" + arity + "'");
            if (alphabet_.contains(name))
                c.fail_at(at, "duplicate alphabet entry '" + name + "'");
            alphabet_.add(name, static_cast<unsigned>(std::stoul(arity)));
        }
    }

    State declared(Cursor& c) {
        c.skip_ws();
        std::size_t at = c.pos();
        std::string q = c.state();
        auto it = index_.find(q);
        if (it == index_.end())
            c.fail_at(at, "undeclared state '" + q + "'");
        return it->second;
    }

    // SYMBOL [ '(' [state (',' state)*] ')' ]
    std::pair<std::size_t, std::vector<State>> term(Cursor& c) {
        if (!have_alphabet_)
            c.fail("transitions must follow the 'alphabet' line");
        c.skip_ws();
        std::size_t at = c.pos();
        std::string sym = c.symbol();
        auto s = alphabet_.find(sym);
        if (!s)
            c.fail_at(at, "unknown symbol '" + sym + "'");
        std::vector<State> children;
        if (c.eat("(")) {
            if (!c.eat(")")) {
                do {
                    children.push_back(declared(c));
                } while (c.eat(","));
                c.expect(")");
            }
        }
        if (children.size() != alphabet_.arity(*s))
            c.fail_at(at, "arity mismatch for '" + sym + "': expected " + std::to_string(alphabet_.arity(*s)) +
                              ", got " + std::to_string(children.size()));
        return {*s, std::move(children)};
    }

    void parse_bta_rule(Cursor& c) {
        auto [s, children] = term(c);
        c.expect("->");
        State target = declared(c);
        if (!c.at_end())
            c.fail("unexpected text after transition");
        rules_.push_back({s, std::move(children), target});
    }

    void parse_tta_rule(Cursor& c) {
        State source = declared(c);
        c.expect("->");
        auto [s, children] = term(c);
        if (!c.at_end())
            c.fail("unexpected text after transition");
        rules_.push_back({s, std::move(children), source});
    }

    bool top_down_ = false;
    bool have_alphabet_ = false;
    std::size_t alphabet_line_ = 1;
    RankedAlphabet alphabet_;
    std::vector<std::string> names_;
    std::unordered_map<std::string, State> index_;
    std::vector<Rule> rules_;
    std::vector<State> distinguished_;
};

std::string term_text(const AutomatonBase& a, const Rule& r) {
    std::string out = a.alphabet().name(r.symbol) + "(";
    for (std::size_t i = 0; i < r.children.size(); ++i) {
        if (i)
            out += ',';
        out += a.state_name(r.children[i]);
    }
    return out + ")";
}

std::string header_text(const char* kind, const AutomatonBase& a, const char* set_name, const StateSet& set) {
    std::string out = std::string(kind) + "\n";
    out += "alphabet " + a.alphabet().to_string() + "\n";
    out += "states";
    for (const auto& n : a.state_names())
        out += " " + n;
    out += "\n";
    out += set_name;
    for (State q : set)
        out += " " + a.state_name(q);
    out += "\n";
    return out;
}

} // namespace

AnyAutomaton parse_automaton(std::string_view text) { return FileParser().parse(text); }

Bta parse_bta(std::string_view text) {
    auto a = parse_automaton(text);
    if (auto* b = std::get_if<Bta>(&a))
        return *b;
    throw ParseError(1, 1, "expected a bta file, got a tta");
}

Tta parse_tta(std::string_view text) {
    auto a = parse_automaton(text);
    if (auto* t = std::get_if<Tta>(&a))
        return *t;
    throw ParseError(1, 1, "expected a tta file, got a bta");
}

std::string serialize(const Bta& a) {
    std::string out = header_text("bta", a, "final", a.final_states());
    for (const auto& r : a.rules())
        out += term_text(a, r) + " -> " + a.state_name(r.target) + "\n";
    return out;
}

std::string serialize(const Tta& t) {
    std::string out = header_text("tta", t, "initial", t.initial_states());
    std::vector<const Rule*> rules;
    for (const auto& r : t.rules())
        rules.push_back(&r);
    std::stable_sort(rules.begin(), rules.end(), [](const Rule* x, const Rule* y) { return x->target < y->target; });
    for (const Rule* r : rules)
        out += t.state_name(r->target) + " -> " + term_text(t, *r) + "\n";
    return out;
}

std::string serialize(const AnyAutomaton& a) {
    return std::visit([](const auto& x) { return serialize(x); }, a);
}

AnyAutomaton load_automaton(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_automaton(buf.str());
    } catch (const ParseError& e) {
        throw Error(path + ": " + e.what());
    }
}

void save_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot write '" + path + "'");
    out << text;
}

} // namespace treeca
