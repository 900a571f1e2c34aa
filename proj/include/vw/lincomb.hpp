#pragma once

#include <gmpxx.h>

#include <map>
#include <string>

#include "vw/monomial.hpp"

namespace vw {

/// Finite formal sum of canonical diagrams with integer coefficients. Zero
/// coefficients are never stored.
class LinComb {
 public:
  using Map = std::map<Diagram, mpz_class>;

  LinComb() = default;
  explicit LinComb(const Diagram& d, const mpz_class& c = 1) { add(d, c); }
  explicit LinComb(const SignedDiagram& s) { add(s.diagram, s.sign); }

  void add(const Diagram& d, const mpz_class& c);
  void add(const SignedDiagram& s, const mpz_class& c = 1) { add(s.diagram, c * s.sign); }
  void add(Diagram&& d, const mpz_class& c);

  LinComb& operator+=(const LinComb& o);
  LinComb& operator-=(const LinComb& o);
  LinComb& operator*=(const mpz_class& c);
  friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
  friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
  friend LinComb operator*(const mpz_class& c, LinComb a) { return a *= c; }
  LinComb operator-() const { return mpz_class(-1) * *this; }

  mpz_class coefficient(const Diagram& d) const;
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Map& terms() const { return terms_; }
  Map::const_iterator begin() const { return terms_.begin(); }
  Map::const_iterator end() const { return terms_.end(); }

  /// Drops coefficients divisible by m (m > 0) and reduces the rest into
  /// the symmetric range.
  LinComb reduced_mod(const mpz_class& m) const;

  bool operator==(const LinComb& o) const { return terms_ == o.terms_; }

 private:
  Map terms_;
};

/// `c*[serialization] + ...`, in key order; "0" for the zero sum.
std::string to_string(const LinComb& x);

}  // namespace vw
