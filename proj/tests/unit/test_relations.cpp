#include "doctest.h"
#include "vw/error.hpp"
#include "vw/relations.hpp"

#include <random>

using namespace vw;

namespace {

Diagram forest3(std::vector<Chord> c) {
  Diagram d(3);
  d.chords = std::move(c);
  d.sort_chords();
  return d;
}

}  // namespace

TEST_CASE("quantum binomial") {
  CHECK(quantum_binomial(1, 1, -1) == 0);
  CHECK(quantum_binomial(2, 2, -1) == 2);
  CHECK(quantum_binomial(2, 1, 1) == 3);
  CHECK(quantum_binomial(3, 2, -1) == 2);
  CHECK(quantum_binomial(0, 5, -1) == 1);
  // signed shuffle count by brute force
  for (int k = 0; k <= 5; ++k)
    for (int n = 0; n <= 5; ++n) {
      long total = 0;
      for (unsigned mask = 0; mask < (1u << (k + n)); ++mask) {
        if (__builtin_popcount(mask) != k) continue;
        // inversions: pairs (b before a) with b from the second block
        int inv = 0, seen_b = 0;
        for (int pos = 0; pos < k + n; ++pos) {
          if (mask >> pos & 1u) inv += seen_b;
          else ++seen_b;
        }
        total += (inv & 1) ? -1 : 1;
      }
      CHECK(quantum_binomial(k, n, -1) == total);
    }
}

TEST_CASE("admissibility") {
  CHECK_FALSE(is_admissible(forest3({{0, 2}, {1, 2}})));
  CHECK(is_admissible(forest3({{0, 1}, {1, 2}})));
  Diagram zhat(4);
  zhat.chords = {{0, 1}, {0, 2}, {0, 3}};
  CHECK(is_admissible(zhat));
}

TEST_CASE("one Arnold rewrite") {
  for (Parity p : {Parity::Even, Parity::Odd}) {
    LinComb x(forest3({{0, 2}, {1, 2}}));
    LinComb r = arnold_reduce(x, p);
    CHECK(r.size() == 2);
    CHECK(abs(r.coefficient(forest3({{0, 1}, {1, 2}}))) == 1);
    CHECK(abs(r.coefficient(forest3({{0, 1}, {0, 2}}))) == 1);
    LinComb adm(forest3({{0, 1}, {1, 2}}));
    CHECK(arnold_reduce(adm, p) == adm);
  }
}

TEST_CASE("reduction is linear and schedule independent") {
  std::mt19937_64 rng(11);
  Diagram d(5);
  d.chords = {{0, 4}, {1, 4}, {2, 4}, {3, 4}};
  Diagram e(5);
  e.chords = {{0, 3}, {1, 3}, {2, 4}, {3, 4}};
  for (Parity p : {Parity::Even, Parity::Odd}) {
    LinComb x = LinComb(d, 3) + LinComb(e, -2);
    LinComb r = arnold_reduce(x, p);
    CHECK(r == mpz_class(3) * arnold_reduce(LinComb(d), p) - mpz_class(2) * arnold_reduce(LinComb(e), p));
    for (int t = 0; t < 20; ++t) CHECK(arnold_reduce_random(x, p, rng) == r);
  }
}

TEST_CASE("span rank oracle") {
  std::vector<Diagram> all = {forest3({{0, 1}, {1, 2}}), forest3({{0, 1}, {0, 2}}), forest3({{0, 2}, {1, 2}})};
  for (Parity p : {Parity::Even, Parity::Odd}) {
    CHECK(span_rank_oracle(all, p, Ring::rationals()) == 2);
    CHECK(span_rank_oracle({}, p, Ring::rationals()) == 0);
    CHECK(span_rank_oracle({all[0]}, p, Ring::prime_field(3)) == 1);
    CHECK_THROWS_AS(span_rank_oracle(all, p, Ring::integers()), FieldRequired);
  }
}
