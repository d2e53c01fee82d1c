#include "shapxp/rational.hpp"

#include <algorithm>
#include <string>

#include "shapxp/errors.hpp"
#include "shapxp/feature_set.hpp"

namespace shapxp {

std::string to_fraction_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_decimal_string(const Rational& q, int places) {
  Integer scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  Integer num = abs(q.get_num()) * scale;
  const Integer& den = q.get_den();
  // round half away from zero
  Integer scaled = (2 * num + den) / (2 * den);
  const bool negative = sgn(q) < 0 && scaled != 0;

  std::string digits = scaled.get_str();
  if (static_cast<int>(digits.size()) <= places)
    digits.insert(0, static_cast<std::size_t>(places + 1) - digits.size(), '0');
  std::string out = negative ? "-" : "";
  out += digits.substr(0, digits.size() - static_cast<std::size_t>(places));
  if (places > 0) out += "." + digits.substr(digits.size() - static_cast<std::size_t>(places));
  return out;
}

std::string to_dual_string(const Rational& q, int places) {
  return to_fraction_string(q) + "=" + to_decimal_string(q, places);
}

Rational parse_rational(const std::string& text) {
  Rational q;
  if (text.empty() || q.set_str(text, 10) != 0 || q.get_den() == 0)
    throw InputError("not a rational number: '" + text + "'");
  q.canonicalize();
  return q;
}

Integer factorial(unsigned n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

std::vector<int> FeatureSet::indices() const {
  std::vector<int> out;
  for_each([&](int f) { out.push_back(f); });
  return out;
}

std::vector<int> FeatureSet::one_based() const {
  std::vector<int> out;
  for_each([&](int f) { out.push_back(f + 1); });
  return out;
}

bool lex_less(FeatureSet a, FeatureSet b) {
  std::uint64_t x = a.bits();
  std::uint64_t y = b.bits();
  while (x != 0 && y != 0) {
    const int fx = std::countr_zero(x);
    const int fy = std::countr_zero(y);
    if (fx != fy) return fx < fy;
    x &= x - 1;
    y &= y - 1;
  }
  return x == 0 && y != 0;
}

void sort_lex(std::vector<FeatureSet>& sets) {
  std::sort(sets.begin(), sets.end(), lex_less);
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
}

std::string to_string(FeatureSet s) {
  std::string out = "{";
  bool first = true;
  s.for_each([&](int f) {
    if (!first) out += ",";
    out += std::to_string(f + 1);
    first = false;
  });
  return out + "}";
}

} // namespace shapxp
