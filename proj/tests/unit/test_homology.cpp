#include "doctest.h"
#include "vw/error.hpp"
#include "vw/homology.hpp"

using namespace vw;

namespace {

using Dense = std::vector<std::vector<mpz_class>>;  // rows

// Plain dense Smith form: repeated pivoting on the smallest entry.
std::vector<mpz_class> dense_invariants(Dense a) {
  std::vector<mpz_class> out;
  const std::size_t m = a.size(), n = m ? a[0].size() : 0;
  std::size_t t = 0;
  while (t < m && t < n) {
    std::size_t pr = m, pc = n;
    for (std::size_t r = t; r < m; ++r)
      for (std::size_t c = t; c < n; ++c)
        if (a[r][c] != 0 && (pr == m || abs(a[r][c]) < abs(a[pr][pc]))) pr = r, pc = c;
    if (pr == m) break;
    std::swap(a[t], a[pr]);
    for (auto& row : a) std::swap(row[t], row[pc]);
    bool clean = true;
    for (std::size_t r = t + 1; r < m; ++r) {
      mpz_class q = a[r][t] / a[t][t];
      for (std::size_t c = t; c < n; ++c) a[r][c] -= q * a[t][c];
      clean = clean && a[r][t] == 0;
    }
    for (std::size_t c = t + 1; c < n; ++c) {
      mpz_class q = a[t][c] / a[t][t];
      for (std::size_t r = t; r < m; ++r) a[r][c] -= q * a[r][t];
      clean = clean && a[t][c] == 0;
    }
    if (!clean) continue;
    bool divides = true;
    for (std::size_t r = t + 1; r < m && divides; ++r)
      for (std::size_t c = t + 1; c < n && divides; ++c)
        if (a[r][c] % a[t][t] != 0) {
          for (std::size_t k = t; k < n; ++k) a[t][k] += a[r][k];
          divides = false;
        }
    if (!divides) continue;
    out.push_back(abs(a[t][t]));
    ++t;
  }
  return out;
}

int dense_rank_mod(Dense a, long p) {
  int rank = 0;
  const std::size_t m = a.size(), n = m ? a[0].size() : 0;
  for (auto& row : a)
    for (auto& x : row) x = ((x % p) + p) % p;
  for (std::size_t c = 0; c < n && rank < static_cast<int>(m); ++c) {
    std::size_t r = rank;
    while (r < m && a[r][c] == 0) ++r;
    if (r == m) continue;
    std::swap(a[rank], a[r]);
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), a[rank][c].get_mpz_t(), mpz_class(p).get_mpz_t());
    for (auto& x : a[rank]) x = (x * inv) % p;
    for (std::size_t k = 0; k < m; ++k)
      if (k != static_cast<std::size_t>(rank) && a[k][c] != 0) {
        mpz_class f = a[k][c];
        for (std::size_t cc = 0; cc < n; ++cc) a[k][cc] = (((a[k][cc] - f * a[rank][cc]) % p) + p) % p;
      }
    ++rank;
  }
  return rank;
}

HomologyGroup oracle_homology(VariantComplex& c, int i, int j) {
  const SparseMatrix& out = c.boundary(i, j);
  const SparseMatrix& in = c.boundary(i, j + 1);
  auto f_out = dense_invariants(out.dense());
  auto f_in = dense_invariants(in.dense());
  HomologyGroup g;
  g.free_rank = static_cast<long>(c.dimension(i, j)) - static_cast<long>(f_out.size()) - static_cast<long>(f_in.size());
  std::vector<mpz_class> orders;
  for (const auto& f : f_in)
    if (f > 1) orders.push_back(f);
  return normalize_group(g.free_rank, orders);
}

}  // namespace

TEST_CASE("upper-diagonal examples") {
  CHECK(to_string(homology_group(ComplexVariant::T, Parity::Odd, 1, 2, Ring::integers())) == "Z");
  HomologyGroup g = homology_group(ComplexVariant::T, Parity::Even, 2, 3, Ring::integers());
  CHECK(g.free_rank == 0);
  REQUIRE(g.torsion.size() == 1);
  CHECK(g.torsion[0] == 2);
  for (Parity p : {Parity::Even, Parity::Odd})
    for (int i = 2; i <= 4; ++i) CHECK(homology_group(ComplexVariant::T0, p, i, i + 1, Ring::integers()).is_zero());
}

TEST_CASE("dual homology examples") {
  CHECK(dual_homology_group(ComplexVariant::T, Parity::Odd, 1, 2, Ring::rationals()).free_rank == 1);
  CHECK(dual_homology_group(ComplexVariant::Ts, Parity::Odd, 1, 2, Ring::rationals()).free_rank == 0);
  CHECK(dual_homology_group(ComplexVariant::T, Parity::Odd, 1, 2, Ring::integers()) == HomologyGroup{1, {}});
}

TEST_CASE("normalize_group rewrites cyclic orders as invariant factors") {
  CHECK(to_string(normalize_group(0, {2, 3})) == "Z/6");
  CHECK(normalize_group(0, {2, 2}).torsion == std::vector<mpz_class>{2, 2});
  CHECK(normalize_group(1, {4, 6}).torsion == std::vector<mpz_class>{2, 12});
  CHECK(normalize_group(2, {0, 1}).free_rank == 3);
  CHECK(normalize_group(0, {}).is_zero());
}

TEST_CASE("integral homology agrees with a dense Smith-form oracle") {
  for (ComplexVariant v : {ComplexVariant::T, ComplexVariant::Ts, ComplexVariant::T0, ComplexVariant::Z})
    for (Parity p : {Parity::Even, Parity::Odd}) {
      VariantComplex c(v, p);
      HomologyEngine h(c);
      for (int i = 1; i <= 4; ++i) {
        auto [lo, hi] = c.support(i);
        for (int j = lo; j <= hi; ++j) {
          INFO(to_string(v), " ", to_string(p), " (", i, ",", j, ")");
          CHECK(h.homology(i, j, Ring::integers()) == oracle_homology(c, i, j));
        }
      }
    }
}

TEST_CASE("homology over F_p agrees with dense elimination") {
  for (Parity p : {Parity::Even, Parity::Odd}) {
    VariantComplex c(ComplexVariant::T, p);
    HomologyEngine h(c);
    for (long q : {2L, 3L, 5L})
      for (int i = 1; i <= 4; ++i)
        for (int j = i + 1; j <= 2 * i; ++j) {
          long expect = static_cast<long>(c.dimension(i, j)) - dense_rank_mod(c.boundary(i, j).dense(), q) -
                        dense_rank_mod(c.boundary(i, j + 1).dense(), q);
          CHECK(h.homology(i, j, Ring::prime_field(q)).free_rank == expect);
        }
  }
}

TEST_CASE("Zhat_i generates the nonzero upper-diagonal groups of T") {
  for (Parity p : {Parity::Even, Parity::Odd}) {
    VariantComplex t(ComplexVariant::T, p);
    HomologyEngine h(t);
    for (int i = 1; i <= 4; ++i) {
      ZhatClass z = zhat_class(t, h, i);
      bool zero = h.homology(i, i + 1, Ring::integers()).is_zero();
      CHECK(z.nonzero == !zero);
      CHECK(z.generates);
    }
  }
}

TEST_CASE("Kunneth combination matches H(T) over Z") {
  for (const auto& row : kunneth_compare(Parity::Odd, 3, Ring::integers())) {
    INFO("(", row.i, ",", row.j, ") ", to_string(row.direct), " vs ", to_string(row.combined));
    CHECK(row.match);
  }
}

TEST_CASE("named maps induce isomorphisms and a broken map is rejected") {
  for (NamedMap m : {NamedMap::Projection, NamedMap::Inclusion, NamedMap::IsoI, NamedMap::IsoIHat}) {
    auto nm = make_named_map(m, Parity::Odd);
    CHECK(induced_map_on_homology(nm.map, 2).isomorphism);
    CHECK(parse_named_map(to_string(m)) == m);
  }
  CHECK_THROWS_AS(parse_named_map("identity"), ArgumentError);

  auto nm = make_named_map(NamedMap::Projection, Parity::Odd);
  auto inner = nm.map.matrix;
  nm.map.matrix = [inner](int i, int j) {
    SparseMatrix m = inner(i, j);
    if (j == 4)
      for (auto& col : m.columns)
        for (auto& e : col) e.second *= 2;
    return m;
  };
  bool thrown = false;
  for (int j = 3; j <= 5; ++j) try {
      check_chain_map(nm.map, 2, j);
    } catch (const NotAChainMap&) {
      thrown = true;
    }
  CHECK(thrown);
}

TEST_CASE("tensor complex squares to zero") {
  for (Parity p : {Parity::Even, Parity::Odd}) {
    TensorComplex zt(p);
    for (int i = 1; i <= 3; ++i) {
      auto [lo, hi] = zt.support(i);
      for (int j = lo + 1; j <= hi; ++j) CHECK(multiply(zt.boundary(i, j - 1), zt.boundary(i, j)).is_zero());
    }
  }
}
