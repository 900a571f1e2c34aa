#include "doctest.h"
#include "vw/linalg.hpp"

#include <algorithm>
#include <random>

using namespace vw;

namespace {

SparseMatrix dense(std::vector<std::vector<long>> rows) {
  std::vector<std::vector<mpz_class>> m;
  for (auto& r : rows) {
    m.emplace_back();
    for (long v : r) m.back().emplace_back(v);
  }
  return SparseMatrix::from_dense(m);
}

std::vector<long> factors(const SNFResult& r) {
  std::vector<long> out;
  for (const auto& f : r.invariant_factors) out.push_back(f.get_si());
  return out;
}

}  // namespace

TEST_CASE("smith normal form examples") {
  CHECK(smith_normal_form(SparseMatrix(3, 2)).rank == 0);
  CHECK(factors(smith_normal_form(dense({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}))) == std::vector<long>{1, 1, 1});
  CHECK(factors(smith_normal_form(dense({{2, 4}, {6, 8}}))) == std::vector<long>{2, 4});
  CHECK(factors(smith_normal_form(dense({{2, 0}, {0, 3}}))) == std::vector<long>{1, 6});
  CHECK(factors(smith_normal_form(dense({{4, 6}, {6, 9}}))) == std::vector<long>{1});
}

TEST_CASE("smith normal form is permutation invariant") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> val(-4, 4);
  for (int t = 0; t < 40; ++t) {
    int r = 2 + t % 5, c = 3 + t % 4;
    std::vector<std::vector<long>> m(r, std::vector<long>(c));
    for (auto& row : m)
      for (auto& v : row) v = (val(rng) % 3 == 0) ? val(rng) : 0;
    auto base = factors(smith_normal_form(dense(m)));
    auto pm = m;
    std::shuffle(pm.begin(), pm.end(), rng);
    std::vector<int> cols(c);
    for (int k = 0; k < c; ++k) cols[k] = k;
    std::shuffle(cols.begin(), cols.end(), rng);
    for (auto& row : pm) {
      auto copy = row;
      for (int k = 0; k < c; ++k) row[k] = copy[cols[k]];
    }
    CHECK(factors(smith_normal_form(dense(pm))) == base);
    for (std::uint32_t p : {2u, 3u, 5u}) {
      int expect = 0;
      for (long f : base)
        if (f % p != 0) ++expect;
      CHECK(rank_mod_p(dense(m), p) == expect);
    }
  }
}

TEST_CASE("integer image membership") {
  auto m = dense({{2, 0}, {0, 3}, {0, 0}});
  CHECK(in_integer_image(m, {{0, 4}, {1, 3}}));
  CHECK_FALSE(in_integer_image(m, {{0, 1}}));
  CHECK_FALSE(in_integer_image(m, {{2, 1}}));
}

TEST_CASE("lattice coordinates") {
  Lattice lat;
  lat.insert({{0, 2}, {1, 1}});
  lat.insert({{0, 3}, {2, 1}});
  CHECK(lat.rank() == 2);
  auto c = lat.coordinates({{0, 5}, {1, 1}, {2, 1}});
  REQUIRE(c);
  // recombine
  SparseVec back;
  auto basis = lat.basis();
  for (const auto& [k, v] : *c) axpy(back, v, basis[k]);
  CHECK(back == SparseVec{{0, 5}, {1, 1}, {2, 1}});
  CHECK_FALSE(lat.coordinates({{0, 1}}));
}
