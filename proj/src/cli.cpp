#include "treeca/cli.hpp"

#include "treeca/analysis.hpp"
#include "treeca/error.hpp"
#include "treeca/io.hpp"
#include "treeca/minimize.hpp"
#include "treeca/oracle.hpp"
#include "treeca/transforms.hpp"

#include <CLI11.hpp>

#include <functional>
#include <map>
#include <ostream>
#include <sstream>

namespace treeca::cli {

namespace {

struct Options {
    std::string verb;
    std::vector<std::string> files;
    std::string output;
    std::string term;
    std::vector<std::string> contexts;
    std::string states;
    std::size_t height = 3;
    std::size_t context_height = 0;  // 0: same as --height
    std::size_t budget = 0;          // 0: defaults
    bool witness = false;
    bool strip_dead = false;
    bool no_pretrim = false;
    bool enumerate_contexts = false;
};

struct Io {
    std::ostream& out;
    std::ostream& err;
};

using Handler = std::function<int(const Options&, Io&)>;

void need_files(const Options& o, std::size_t n) {
    if (o.files.size() != n)
        throw Error("'" + o.verb + "' takes " + std::to_string(n) + " automaton file" + (n == 1 ? "" : "s") +
                    ", got " + std::to_string(o.files.size()));
}

Bta load_bta(const std::string& path) {
    auto a = load_automaton(path);
    if (auto* b = std::get_if<Bta>(&a))
        return *b;
    throw Error(path + ": expected a bta file, got a tta");
}

Tta load_tta(const std::string& path) {
    auto a = load_automaton(path);
    if (auto* t = std::get_if<Tta>(&a))
        return *t;
    throw Error(path + ": expected a tta file, got a bta");
}

std::size_t subset_budget(const Options& o) { return o.budget ? o.budget : kDefaultSubsetBudget; }
std::size_t enum_budget(const Options& o) { return o.budget ? o.budget : kDefaultEnumerationBudget; }

void emit(const Options& o, Io& io, const std::string& text) {
    if (o.output.empty())
        io.out << text;
    else
        save_text(o.output, text);
}

int emit_bta(const Options& o, Io& io, const Bta& a) {
    emit(o, io, serialize(a));
    return kTrue;
}

int verdict(Io& io, bool value, const std::string& yes, const std::string& no) {
    io.out << (value ? yes : no) << "\n";
    return value ? kTrue : kFalse;
}

Tree term_arg(const Options& o, const RankedAlphabet& alphabet) {
    if (o.term.empty())
        throw Error("'" + o.verb + "' needs a tree: -t TERM");
    Tree t = parse_tree(o.term);
    check_well_ranked(t, alphabet);
    return t;
}

Context context_arg(const std::string& text, const RankedAlphabet& alphabet) {
    Context x = parse_context(text);
    check_well_ranked(x.tree(), alphabet);
    return x;
}

Context single_context(const Options& o, const RankedAlphabet& alphabet) {
    if (o.contexts.size() != 1)
        throw Error("'" + o.verb + "' needs one context: -c CONTEXT");
    return context_arg(o.contexts[0], alphabet);
}

StateSet states_arg(const Options& o, const AutomatonBase& a, const StateSet& fallback) {
    if (o.states.empty())
        return fallback;
    std::vector<std::string> names;
    std::string cur;
    std::istringstream in(o.states);
    while (in >> cur)
        names.push_back(cur);
    return a.states(names);
}

void print_states(Io& io, const AutomatonBase& a, const StateSet& s) { io.out << a.format(s) << "\n"; }

template <class T>
void print_row(Io& io, const std::vector<T>& items) {
    for (std::size_t i = 0; i < items.size(); ++i)
        io.out << (i ? " " : "") << items[i].to_string();
    io.out << "\n";
}

template <class T>
void print_keyed(Io& io, const Bta& a, const std::vector<StateClass<T>>& classes) {
    for (const auto& c : classes) {
        io.out << subset_name(a.names(c.key)) << ":";
        for (const auto& m : c.members)
            io.out << " " << m.to_string();
        io.out << "\n";
    }
}

const std::map<std::string, Handler>& handlers() {
    static const std::map<std::string, Handler> table = {
        {"determinize",
         [](const Options& o, Io& io) {
             need_files(o, 1);
             return emit_bta(o, io, determinize(load_bta(o.files[0]), subset_budget(o)));
         }},
        {"codeterminize",
         [](const Options& o, Io& io) {
             need_files(o, 1);
             return emit_bta(o, io, codeterminize(load_bta(o.files[0]), {!o.no_pretrim, subset_budget(o)}));
         }},
        {"reverse",
         [](const Options& o, Io& io) {
             need_files(o, 1);
             auto a = load_automaton(o.files[0]);
             if (auto* b = std::get_if<Bta>(&a))
                 emit(o, io, serialize(reverse_bta(*b)));
             else
                 emit(o, io, serialize(reverse_tta(std::get<Tta>(a))));
             return kTrue;
         }},
        {"complete",
         [](const Options& o, Io& io) {
             need_files(o, 1);
             return emit_bta(o, io, complete(load_bta(o.files[0])));
         }},
        {"tdeterminize",
         [](const Options& o, Io& io) {
             need_files(o, 1);
             emit(o, io, serialize(tta_determinize(load_tta(o.files[0]), subset_budget(o))));
             return kTrue;
         }},
        {"minimize",
         [](const Options& o, Io& io) {
             need_files(o, 1);
             return emit_bta(o, io, minimize_bta(load_bta(o.files[0]), {o.strip_dead}));
         }},
        {"min-codet",
         [](const Options& o, Io& io) {
             need_files(o, 1);
             return emit_bta(o, io, min_codbta(load_bta(o.files[0])));
         }},
        {"brzozowski",
         [](const Options& o, Io& io) {
             need_files(o, 1);
             return emit_bta(o, io, brzozowski(load_bta(o.files[0])));
         }},
        {"canonical",
         [](const Options& o, Io& io) {
             need_files(o, 1);
             return emit_bta(o, io, canonical_form(load_bta(o.files[0])));
         }},
        {"equiv",
         [](const Options& o, Io& io) {
             need_files(o, 2);
             auto r = check_equivalence(load_bta(o.files[0]), load_bta(o.files[1]));
             int code = verdict(io, r.equivalent, "equivalent", "not equivalent");
             if (o.witness && !r.equivalent)
                 io.out << r.reason << "\n";
             return code;
         }},
        {"isomorphic",
         [](const Options& o, Io& io) {
             need_files(o, 2);
             return verdict(io, isomorphic(load_bta(o.files[0]), load_bta(o.files[1])), "isomorphic",
                            "not isomorphic");
         }},
        {"member",
         [](const Options& o, Io& io) {
             need_files(o, 1);
             auto a = load_automaton(o.files[0]);
             bool yes;
             if (auto* b = std::get_if<Bta>(&a)) {
                 yes = accepts(*b, term_arg(o, b->alphabet()));
             } else {
                 const Tta& t = std::get<Tta>(a);
                 yes = tta_accepts(t, term_arg(o, t.alphabet()));
             }
             return verdict(io, yes, "accepted", "rejected");
         }},
        {"post",
         [](const Options& o, Io& io) {
             need_files(o, 1);
             Bta a = load_bta(o.files[0]);
             print_states(io, a, post_tree(a, term_arg(o, a.alphabet()), states_arg(o, a, a.all_states())));
             return kTrue;
         }},
        {"pre",
         [](const Options& o, Io& io) {
             need_files(o, 1);
             Bta a = load_bta(o.files[0]);
             if (has_unreachable_states(a))
                 io.err << "warning: removing unreachable states before computing pre\n";
             print_states(io, a, pre_context(a, single_context(o, a.alphabet()), states_arg(o, a, a.final_states())));
             return kTrue;
         }},
        {"wpre",
         [](const Options& o, Io& io) {
             need_files(o, 1);
             Bta a = load_bta(o.files[0]);
             print_states(io, a, wpre(a, single_context(o, a.alphabet()), states_arg(o, a, a.final_states())));
             return kTrue;
         }},
        {"rtp-equiv",
         [](const Options& o, Io& io) {
             need_files(o, 1);
             Bta a = load_bta(o.files[0]);
             if (o.contexts.size() != 2)
                 throw Error("'rtp-equiv' needs two contexts: -c X -c Y");
             return verdict(io,
                            root_to_pivot_equiv(a, context_arg(o.contexts[0], a.alphabet()),
                                                context_arg(o.contexts[1], a.alphabet()),
                                                states_arg(o, a, a.final_states())),
                            "equivalent", "not equivalent");
         }},
        {"is-path-closed",
         [](const Options& o, Io& io) {
             need_files(o, 1);
             Bta a = load_bta(o.files[0]);
             const bool closed = is_path_closed(a);
             int code = verdict(io, closed, "path-closed", "not path-closed");
             if (o.witness && !closed) {
                 const Bta t = trim_unreachable(a);
                 if (auto w = separating_tree(t, codeterminize(t)))
                     io.out << "outside the language but every path occurs in it: " << w->to_string() << "\n";
             }
             return code;
         }},
        {"check-brz-u",
         [](const Options& o, Io& io) {
             need_files(o, 1);
             Bta a = load_bta(o.files[0]);
             const bool iso = check_gen_det_u(a);
             const ProductCheck prod = check_gen_det_u_product(a);
             if (iso != prod.holds)
                 throw Error("internal error: isomorphism and product checks disagree");
             int code = verdict(io, iso, "determinization is minimal", "determinization is not minimal");
             if (o.witness && prod.witness) {
                 const auto& w = *prod.witness;
                 io.out << "witness: q=" << w.q << " m=" << w.m << " S=" << w.s << " S'=" << w.s_prime << "\n";
             }
             return code;
         }},
        {"check-brz-d",
         [](const Options& o, Io& io) {
             need_files(o, 1);
             Bta a = load_bta(o.files[0]);
             if (has_unreachable_states(a))
                 io.err << "note: unreachable states removed first\n";
             return verdict(io, check_gen_det_d(a), "co-determinization is minimal",
                            "co-determinization is not minimal");
         }},
        {"classes-up",
         [](const Options& o, Io& io) {
             need_files(o, 1);
             Bta a = load_bta(o.files[0]);
             print_keyed(io, a, bta_congruence_up(a, o.height, enum_budget(o)));
             return kTrue;
         }},
        {"classes-down",
         [](const Options& o, Io& io) {
             need_files(o, 1);
             Bta a = load_bta(o.files[0]);
             if (has_unreachable_states(a))
                 io.err << "warning: removing unreachable states before computing pre\n";
             print_keyed(io, a, bta_congruence_down(a, o.height, enum_budget(o)));
             return kTrue;
         }},
        {"language-upto",
         [](const Options& o, Io& io) {
             need_files(o, 1);
             for (const auto& t : language_upto(load_bta(o.files[0]), o.height, enum_budget(o)))
                 io.out << t.to_string() << "\n";
             return kTrue;
         }},
        {"oracle-classes-up",
         [](const Options& o, Io& io) {
             need_files(o, 1);
             const std::size_t ch = o.context_height ? o.context_height : o.height;
             for (const auto& c : nerode_classes_up(load_bta(o.files[0]), o.height, ch, enum_budget(o)))
                 print_row(io, c);
             return kTrue;
         }},
        {"oracle-classes-down",
         [](const Options& o, Io& io) {
             need_files(o, 1);
             const std::size_t ch = o.context_height ? o.context_height : o.height;
             for (const auto& c : nerode_classes_down(load_bta(o.files[0]), ch, o.height, enum_budget(o)))
                 print_row(io, c);
             return kTrue;
         }},
        {"enumerate",
         [](const Options& o, Io& io) {
             need_files(o, 1);
             auto a = load_automaton(o.files[0]);
             const RankedAlphabet& alphabet = std::visit([](const auto& x) -> const RankedAlphabet& {
                 return x.alphabet();
             }, a);
             if (o.enumerate_contexts) {
                 for (const auto& x : treeca::enumerate_contexts(alphabet, o.height, enum_budget(o)))
                     io.out << x.to_string() << "\n";
             } else {
                 for (const auto& t : enumerate_trees(alphabet, o.height, enum_budget(o)))
                     io.out << t.to_string() << "\n";
             }
             return kTrue;
         }},
    };
    return table;
}

std::string verb_list() {
    std::string out;
    for (const auto& [name, h] : handlers())
        out += (out.empty() ? "" : ", ") + name;
    return out;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app("Ranked tree automata: determinization, minimization and congruences.", "treeca");
    app.add_option("verb", o.verb, "one of: " + verb_list())->required();
    app.add_option("files", o.files, "automaton files");
    app.add_option("-o,--output", o.output, "write the resulting automaton here");
    app.add_option("-t,--term", o.term, "tree, e.g. and(T,or(F,T))");
    app.add_option("-c,--context", o.contexts, "context with one hole <>, e.g. or(T,<>)");
    app.add_option("-s,--states", o.states, "state set, space separated (default: i(A) for post, F otherwise)");
    app.add_option("--height", o.height, "enumeration height")->check(CLI::PositiveNumber);
    app.add_option("--context-height", o.context_height, "context height for the oracle verbs");
    app.add_option("--budget", o.budget, "cap on enumerated terms or constructed states");
    app.add_flag("--witness", o.witness, "print a witness when the answer is negative");
    app.add_flag("--strip-dead", o.strip_dead, "drop the dead class after minimization");
    app.add_flag("--no-pretrim", o.no_pretrim, "co-determinize without removing unreachable states first");
    app.add_flag("--contexts", o.enumerate_contexts, "enumerate contexts instead of trees");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : kUsageError;
    }

    auto it = handlers().find(o.verb);
    if (it == handlers().end()) {
        err << "treeca: unknown verb '" << o.verb << "'; expected one of: " << verb_list() << "\n";
        return kUsageError;
    }
    Io io{out, err};
    try {
        return it->second(o, io);
    } catch (const BudgetError& e) {
        err << "treeca: " << e.what() << "\n";
        return kBudgetError;
    } catch (const PreconditionError& e) {
        err << "treeca: " << e.what() << "\n";
        return kDomainError;
    } catch (const DomainError& e) {
        err << "treeca: " << e.what() << "\n";
        return kDomainError;
    } catch (const std::exception& e) {
        err << "treeca: " << e.what() << "\n";
        return kUsageError;
    }
}

} // namespace treeca::cli
