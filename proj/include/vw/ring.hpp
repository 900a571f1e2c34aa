#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace vw {

/// Coefficient domain for homology and rank computations.
struct Ring {
  enum class Kind : std::uint8_t { Integers, Rationals, PrimeField };
  Kind kind = Kind::Integers;
  std::uint32_t p = 0;  // prime, PrimeField only

  static Ring integers() { return {}; }
  static Ring rationals() { return {Kind::Rationals, 0}; }
  static Ring prime_field(std::uint32_t p);

  bool is_field() const { return kind != Kind::Integers; }
  /// 0 for Z and Q.
  std::uint32_t characteristic() const { return kind == Kind::PrimeField ? p : 0; }

  bool operator==(const Ring&) const = default;
};

/// "Z", "Q" or "Fp:<p>".
std::string to_string(const Ring& r);
Ring parse_ring(std::string_view s);

bool is_prime(std::uint64_t n);

}  // namespace vw
