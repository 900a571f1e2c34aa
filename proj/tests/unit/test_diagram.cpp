#include "doctest.h"
#include "vw/diagram.hpp"
#include "vw/error.hpp"
#include "vw/monomial.hpp"

#include <algorithm>
#include <random>

using namespace vw;

namespace {

Diagram chord_pair() {
  Diagram d(2);
  d.chords = {{0, 1}};
  return d;
}

}  // namespace

TEST_CASE("serialization round trip") {
  Diagram d(3);
  d.chords = {{0, 2}};
  d.bottom = 0b010;
  d.top = {1, 0, 2};
  std::string s = serialize(d);
  CHECK(s == "3;chords=1-3;bottom=2;top=1,0,2");
  CHECK(parse_diagram(s) == d);
  CHECK(serialize(Diagram(0)) == "0;chords=;bottom=;top=");
  CHECK_THROWS_AS(parse_diagram("2;chords=1-5;bottom=;top=0,0"), ParseError);
}

TEST_CASE("canonicalize with the canonical monomial is the identity") {
  Diagram d(3);
  d.chords = {{0, 1}, {1, 2}};
  d.top = {1, 0, 0};
  for (Parity p : {Parity::Even, Parity::Odd}) {
    auto s = canonicalize(d, canonical_monomial(d), p);
    CHECK(s.diagram == d);
    CHECK(s.sign == 1);
  }
}

TEST_CASE("chord flip costs (-1)^d") {
  Diagram raw(2);
  raw.chords = {{1, 0}};
  Monomial m = {Token::point(0), Token::point(1), Token::chord(1, 0)};
  auto even = canonicalize(raw, m, Parity::Even);
  CHECK(even.diagram == chord_pair());
  CHECK(even.sign == 1);
  CHECK(canonicalize(raw, m, Parity::Odd).sign == -1);
}

TEST_CASE("swapping two chord tokens follows their degree") {
  Diagram d(3);
  d.chords = {{0, 1}, {1, 2}};
  Monomial m = canonical_monomial(d);
  std::swap(m[3], m[4]);
  CHECK(canonicalize(d, m, Parity::Even).sign == -1);
  CHECK(canonicalize(d, m, Parity::Odd).sign == 1);
}

TEST_CASE("token mismatch") {
  Diagram d = chord_pair();
  Monomial m = {Token::point(0), Token::point(1)};
  CHECK_THROWS_AS(canonicalize(d, m, Parity::Odd), TokenMismatch);
  m = {Token::point(0), Token::point(1), Token::chord(0, 1), Token::bottom(0)};
  CHECK_THROWS_AS(canonicalize(d, m, Parity::Odd), TokenMismatch);
}

TEST_CASE("koszul sign") {
  CHECK(koszul_sign({0, 1, 2}, {true, true, false}) == 1);
  CHECK(koszul_sign({1, 0}, {true, true}) == -1);
  CHECK(koszul_sign({1, 0}, {true, false}) == 1);
  CHECK_THROWS_AS(koszul_sign({1, 0}, {true}), ArgumentError);
}

TEST_CASE("canonicalize commutes with permutations of the monomial") {
  std::mt19937_64 rng(7);
  Diagram d(4);
  d.chords = {{0, 2}, {1, 2}};
  d.bottom = 0b1000;
  d.top = {2, 0, 0, 1};
  for (Parity p : {Parity::Even, Parity::Odd}) {
    Monomial m = canonical_monomial(d);
    std::vector<bool> odd;
    for (const auto& t : m) odd.push_back(t.odd(p));
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<int> perm(m.size());
      for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = static_cast<int>(k);
      std::shuffle(perm.begin(), perm.end(), rng);
      Monomial shuffled;
      for (int k : perm) shuffled.push_back(m[k]);
      auto s = canonicalize(d, shuffled, p);
      CHECK(s.diagram == d);
      CHECK(s.sign == koszul_sign(perm, odd));
    }
  }
}

TEST_CASE("validate") {
  Diagram tri(3);
  tri.chords = {{0, 1}, {1, 2}, {0, 2}};
  CHECK_FALSE(validate(tri, ComplexVariant::Tss));
  Diagram star(1);
  star.bottom = 1;
  CHECK(validate(star, ComplexVariant::Ts));
  CHECK_FALSE(validate(star, ComplexVariant::T));
  CHECK_FALSE(validate(chord_pair(), ComplexVariant::T0));
  CHECK(validate(chord_pair(), ComplexVariant::T));
  Diagram bare(1);
  CHECK_FALSE(validate(bare, ComplexVariant::Tss));
  CHECK(validate(bare, ComplexVariant::Tss, {.generalized = true}));
  Diagram z(1);
  z.top = {3};
  CHECK(validate(z, ComplexVariant::Z));
  CHECK_FALSE(validate(z, ComplexVariant::Ts));
}

TEST_CASE("bigrading") {
  auto b0 = bigrading(Diagram(0), Parity::Odd);
  CHECK(b0.i == 0);
  CHECK(b0.j == 0);
  // five points, two chords, two bottom and five top asterisks
  Diagram d(5);
  d.chords = {{0, 3}, {2, 3}};
  d.bottom = 0b00011;
  d.top = {0, 0, 2, 0, 3};
  auto b = bigrading(d, Parity::Odd);
  CHECK(b.i == 9);
  CHECK(b.j == 10);
  CHECK(b.p == -9);
  CHECK(b.q(3) == 17);
  for (int k = 1; k <= 5; ++k) {
    Diagram zk(1);
    zk.top = {static_cast<std::uint8_t>(k)};
    auto bz = bigrading(zk, Parity::Even);
    CHECK(bz.i == k);
    CHECK(bz.j == k + 1);
  }
}
