#include "qri/parse.hpp"

#include <cctype>
#include <unordered_map>

namespace qri {

namespace {

struct Cursor {
  std::string_view s;
  std::size_t i = 0;

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++i;
      return true;
    }
    return false;
  }
};

std::string read_int(Cursor& c) {
  c.skip_ws();
  std::string out;
  while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i])))
    out += c.s[c.i++];
  if (out.empty()) throw parse_error("expected integer at '" + std::string(c.s.substr(c.i)) + "'");
  return out;
}

std::string read_name(Cursor& c) {
  c.skip_ws();
  std::string out;
  if (c.i < c.s.size() && std::isalpha(static_cast<unsigned char>(c.s[c.i]))) {
    out += c.s[c.i++];
    while (c.i < c.s.size() &&
           (std::isalnum(static_cast<unsigned char>(c.s[c.i])) || c.s[c.i] == '_'))
      out += c.s[c.i++];
  }
  return out;
}

}  // namespace

MultiPoly parse_poly(const Field& field, const std::vector<std::string>& vars,
                     std::string_view text) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < vars.size(); ++i) index[vars[i]] = i;

  MultiPoly result(field, vars);
  Cursor c{text};
  if (c.done()) throw parse_error("empty polynomial");

  bool first = true;
  while (!c.done()) {
    bool negative = false;
    if (c.accept('-'))
      negative = true;
    else if (c.accept('+')) {
      if (first) throw parse_error("leading '+'");
    } else if (!first) {
      throw parse_error("expected '+' or '-' before term");
    }
    first = false;

    FieldElement coeff = FieldElement::one(field);
    Monomial mono(vars.size(), 0);
    bool saw_factor = false;
    while (true) {
      c.skip_ws();
      if (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) {
        std::string num = read_int(c);
        std::string lit = num;
        if (c.accept('/')) lit += "/" + read_int(c);
        coeff *= FieldElement::parse(field, lit);
        saw_factor = true;
      } else {
        std::string name = read_name(c);
        if (name.empty()) {
          if (!saw_factor) throw parse_error("expected term");
          break;
        }
        auto it = index.find(name);
        if (it == index.end()) throw parse_error("unknown variable '" + name + "'");
        unsigned exp = 1;
        if (c.accept('^')) exp = static_cast<unsigned>(std::stoul(read_int(c)));
        mono[it->second] += exp;
        saw_factor = true;
      }
      if (!c.accept('*')) break;
    }
    if (negative) coeff = -coeff;
    result.add_term(mono, coeff);
  }
  return result;
}

}  // namespace qri
