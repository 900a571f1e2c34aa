#include "vw/ring.hpp"

#include <charconv>

#include "vw/error.hpp"

namespace vw {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q = 2; q * q <= n; ++q)
    if (n % q == 0) return false;
  return true;
}

Ring Ring::prime_field(std::uint32_t p) {
  if (!is_prime(p) || p > (1u << 30)) throw ArgumentError("Fp needs a prime below 2^30, got " + std::to_string(p));
  return {Kind::PrimeField, p};
}

std::string to_string(const Ring& r) {
  switch (r.kind) {
    case Ring::Kind::Integers: return "Z";
    case Ring::Kind::Rationals: return "Q";
    case Ring::Kind::PrimeField: return "Fp:" + std::to_string(r.p);
  }
  return "?";
}

Ring parse_ring(std::string_view s) {
  if (s == "Z") return Ring::integers();
  if (s == "Q") return Ring::rationals();
  if (s.substr(0, 3) == "Fp:") {
    std::uint32_t p = 0;
    auto rest = s.substr(3);
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), p);
    if (ec != std::errc() || ptr != rest.data() + rest.size()) throw ParseError("bad prime in '" + std::string(s) + "'");
    return Ring::prime_field(p);
  }
  throw ParseError("unknown ring '" + std::string(s) + "' (expected Z, Q or Fp:<p>)");
}

}  // namespace vw
