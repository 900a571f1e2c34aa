#include "vw/lincomb.hpp"

namespace vw {

void LinComb::add(const Diagram& d, const mpz_class& c) {
  if (c == 0) return;
  auto it = terms_.find(d);
  if (it == terms_.end()) {
    terms_.emplace(d, c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

void LinComb::add(Diagram&& d, const mpz_class& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(std::move(d), c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

LinComb& LinComb::operator+=(const LinComb& o) {
  for (const auto& [d, c] : o.terms_) add(d, c);
  return *this;
}

LinComb& LinComb::operator-=(const LinComb& o) {
  for (const auto& [d, c] : o.terms_) add(d, -c);
  return *this;
}

LinComb& LinComb::operator*=(const mpz_class& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [d, v] : terms_) v *= c;
  return *this;
}

mpz_class LinComb::coefficient(const Diagram& d) const {
  auto it = terms_.find(d);
  return it == terms_.end() ? mpz_class(0) : it->second;
}

LinComb LinComb::reduced_mod(const mpz_class& m) const {
  LinComb out;
  for (const auto& [d, c] : terms_) {
    mpz_class r = c % m;
    if (r < 0) r += m;
    if (2 * r > m) r -= m;
    out.add(d, r);
  }
  return out;
}

std::string to_string(const LinComb& x) {
  if (x.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [d, c] : x) {
    if (!first) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    first = false;
    mpz_class a = abs(c);
    out += a.get_str() + "*[" + serialize(d) + "]";
  }
  return out;
}

}  // namespace vw
