#include "plsf/polynomial.hpp"

#include <sstream>

namespace plsf {

namespace {

void append_power(std::string& out, const std::string& name, int e, bool& first_factor) {
  if (e == 0) return;
  if (!first_factor) out += "*";
  first_factor = false;
  out += name;
  if (e != 1) {
    out += "^";
    out += std::to_string(e);
  }
}

}  // namespace

std::string to_string(const Polynomial& p, const std::vector<std::string>& names) {
  if (static_cast<int>(names.size()) != p.dim())
    throw std::invalid_argument("to_string: name count mismatch");
  if (p.is_zero()) return "0";

  std::string out;
  bool first_term = true;
  for (const auto& [m, c] : p.terms()) {
    Rational a = c.abs();
    if (first_term) {
      if (c.sign() < 0) out += "-";
    } else {
      out += c.sign() < 0 ? " - " : " + ";
    }
    first_term = false;

    bool trivial_mono = m.eps == 0;
    for (int e : m.spatial) trivial_mono = trivial_mono && e == 0;

    bool first_factor = true;
    if (!a.is_one() || trivial_mono) {
      out += a.to_string();
      first_factor = false;
    }
    append_power(out, "eps", m.eps, first_factor);
    for (size_t i = 0; i < names.size(); ++i)
      append_power(out, names[i], m.spatial[i], first_factor);
  }
  return out;
}

}  // namespace plsf
