#include "doctest.h"
#include "vw/complexes.hpp"
#include "vw/error.hpp"

using namespace vw;

namespace {

const ComplexVariant kAll[] = {ComplexVariant::Tss, ComplexVariant::Tss_h, ComplexVariant::Ts,
                               ComplexVariant::T,   ComplexVariant::T0,    ComplexVariant::Z};

}  // namespace

TEST_CASE("small slices") {
  auto s = enumerate_slice(ComplexVariant::T, Parity::Odd, 1, 2);
  REQUIRE(s.dimension() == 1);
  CHECK(serialize(s.diagrams[0]) == "2;chords=1-2;bottom=;top=0,0");
  for (int i = 1; i <= 4; ++i) {
    CHECK(enumerate_slice(ComplexVariant::T, Parity::Odd, i, i).dimension() == 0);
    CHECK(enumerate_slice(ComplexVariant::T, Parity::Odd, i, 2 * i + 1).dimension() == 0);
    auto z = enumerate_slice(ComplexVariant::Z, Parity::Even, i, i + 1);
    REQUIRE(z.dimension() == 1);
    CHECK(z.diagrams[0].n == 1);
    CHECK(z.diagrams[0].top[0] == i);
  }
}

TEST_CASE("admissible enumeration agrees with filtered forest enumeration") {
  for (ComplexVariant v : {ComplexVariant::Tss, ComplexVariant::Ts, ComplexVariant::T, ComplexVariant::Z})
    for (int i = 1; i <= 4; ++i) {
      auto [lo, hi] = j_range(v, i);
      for (int j = lo; j <= hi; ++j) {
        auto adm = enumerate_admissible(v, i, j);
        std::vector<Diagram> filtered;
        for (auto& d : enumerate_forests(v, i, j))
          if (is_admissible(d)) filtered.push_back(d);
        CHECK(adm == filtered);
        for (const auto& d : adm) {
          CHECK(validate(d, v));
          CHECK(d.complexity() == i);
          CHECK(d.distinct_points() == j);
        }
      }
    }
}

TEST_CASE("d_h examples") {
  Diagram d(2);
  d.chords = {{0, 1}};
  d.top = {2, 1};
  for (Parity p : {Parity::Even, Parity::Odd}) {
    LinComb r = d_h(d, p);
    Diagram merged(1);
    merged.bottom = 1;
    merged.top = {3};
    REQUIRE(r.size() == 1);
    CHECK(abs(r.coefficient(merged)) == quantum_binomial(2, 1, sign_d(p)));
  }
  Diagram single(1);
  single.top = {3};
  CHECK(d_h(single, Parity::Odd).is_zero());
}

TEST_CASE("d_v zero rule") {
  Diagram d(1);
  d.bottom = 1;
  d.top = {1};
  CHECK(d_v(d, Parity::Odd).is_zero());
  CHECK(d_v(d, Parity::Even).is_zero());
  Diagram plain(2);
  plain.chords = {{0, 1}};
  CHECK(d_v(plain, Parity::Even).is_zero());
}

TEST_CASE("differential squares to zero at small complexity") {
  for (ComplexVariant v : kAll)
    for (Parity p : {Parity::Even, Parity::Odd}) {
      ComplexBuilder b(v, p);
      for (int i = 1; i <= 3; ++i) {
        auto [lo, hi] = j_range(v, i);
        for (int j = lo + 1; j <= hi; ++j) {
          const auto& m1 = b.matrix(i, j).entries;
          const auto& m0 = b.matrix(i, j - 1).entries;
          CHECK_MESSAGE(multiply(m0, m1).is_zero(), to_string(v), " ", to_string(p), " ", i, ",", j);
        }
      }
    }
}

TEST_CASE("T quotient drops gluings that create asterisks") {
  Diagram d(3);
  d.chords = {{0, 1}, {0, 2}};
  LinComb r = differential(ComplexVariant::T, LinComb(d), Parity::Odd);
  for (const auto& [e, c] : r) CHECK_FALSE(e.has_asterisks());
}

TEST_CASE("matrix into an empty slice") {
  auto m = differential_matrix(ComplexVariant::T, Parity::Odd, 1, 2);
  CHECK(m.entries.rows == 0);
  CHECK(m.entries.cols == 1);
}
