#include "pts/sequent.hpp"

#include <algorithm>

namespace pts {

Sequent::Sequent(std::vector<Formula> gamma, Formula a)
    : premises(std::move(gamma)), conclusion(std::move(a)) {
  std::sort(premises.begin(), premises.end());
  premises.erase(std::unique(premises.begin(), premises.end()), premises.end());
}

AtomSet Sequent::atoms() const {
  AtomSet out = atoms_of(conclusion);
  for (const auto& g : premises) {
    AtomSet more = atoms_of(g);
    out.insert(more.begin(), more.end());
  }
  return out;
}

Sequent parse_sequent(std::string_view text) {
  const auto turnstile = text.find("|-");
  if (turnstile == std::string_view::npos) throw ParseError("expected '|-'", text.size());

  std::vector<Formula> gamma;
  const std::string_view left = text.substr(0, turnstile);
  std::size_t start = 0;
  if (left.find_first_not_of(" \t\r\n") != std::string_view::npos) {
    while (true) {
      const auto comma = left.find(',', start);
      const std::string_view piece =
          left.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
      try {
        gamma.push_back(parse_formula(piece));
      } catch (const ParseError& e) {
        throw ParseError(std::string(e.what()).substr(0, std::string(e.what()).rfind(" at position")),
                         start + e.position());
      }
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  }
  const std::size_t offset = turnstile + 2;
  try {
    return Sequent(std::move(gamma), parse_formula(text.substr(offset)));
  } catch (const ParseError& e) {
    throw ParseError(std::string(e.what()).substr(0, std::string(e.what()).rfind(" at position")),
                     offset + e.position());
  }
}

std::string to_string(const Sequent& s) {
  std::string out;
  for (std::size_t i = 0; i < s.premises.size(); ++i) {
    if (i) out += ", ";
    out += s.premises[i].text();
  }
  if (!out.empty()) out += " ";
  return out + "|- " + s.conclusion.text();
}

nlohmann::json to_json(const Sequent& s) {
  nlohmann::json gamma = nlohmann::json::array();
  for (const auto& g : s.premises) gamma.push_back(g.text());
  return {{"premises", gamma}, {"conclusion", s.conclusion.text()}};
}

}  // namespace pts
