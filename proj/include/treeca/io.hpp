#pragma once

#include "treeca/automaton.hpp"

#include <string>
#include <string_view>
#include <variant>

namespace treeca {

using AnyAutomaton = std::variant<Bta, Tta>;

// Line-oriented text format; see README for the grammar.
AnyAutomaton parse_automaton(std::string_view text);
Bta parse_bta(std::string_view text);
Tta parse_tta(std::string_view text);

// Canonical text: sorted alphabet, states and transitions.
std::string serialize(const Bta& a);
std::string serialize(const Tta& t);
std::string serialize(const AnyAutomaton& a);

AnyAutomaton load_automaton(const std::string& path);
void save_text(const std::string& path, const std::string& text);

} // namespace treeca
