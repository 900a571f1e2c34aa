#include "doctest.h"
#include "vw/complexes.hpp"
#include "vw/error.hpp"
#include "vw/hopf.hpp"

using namespace vw;

namespace {

const Parity kBoth[] = {Parity::Even, Parity::Odd};

LinComb full(const LinComb& x, Parity p) { return differential(ComplexVariant::Tss, x, p); }

Diagram chord_pair() {
  Diagram d(2);
  d.chords = {{0, 1}};
  return d;
}

}  // namespace

TEST_CASE("named families") {
  for (Parity p : kBoth)
    for (int k = 1; k <= 4; ++k) {
      for (const LinComb& x : {make_Z(k, p), make_Zhat(k, p)}) {
        REQUIRE(x.size() == 1);
        const Diagram& d = x.begin()->first;
        CHECK(d.complexity() == k);
        CHECK(d.distinct_points() == k + 1);
        CHECK(validate(d, ComplexVariant::Tss));
      }
    }
  CHECK(make_star().begin()->first.complexity() == 1);
  CHECK(validate(make_bare_point().begin()->first, ComplexVariant::Tss, {.generalized = true}));
}

TEST_CASE("shuffle product") {
  Diagram top1(1);
  top1.top = {1};
  for (Parity p : kBoth) {
    LinComb r = shuffle_product(LinComb(chord_pair()), LinComb(top1), p);
    CHECK(r.size() == 3);
    CHECK(shuffle_product(unit(), LinComb(chord_pair()), p) == LinComb(chord_pair()));
  }
}

TEST_CASE("divided product splits the shuffle product") {
  Diagram a(1);
  a.top = {2};
  Diagram b(2);
  b.chords = {{0, 1}};
  b.bottom = 0b10;
  for (Parity p : kBoth) {
    LinComb A(a), B(b);
    int sign = (a.degree_odd(p) && b.degree_odd(p)) ? -1 : 1;
    CHECK(divided_product({A, B}, p) + mpz_class(sign) * divided_product({B, A}, p) == shuffle_product(A, B, p));
    CHECK(divided_product({A}, p) == A);
  }
}

TEST_CASE("vdash on named families") {
  for (Parity p : kBoth)
    for (int a = 1; a <= 3; ++a)
      for (int b = 1; a + b <= 4; ++b) {
        mpz_class q = quantum_binomial(a, b, sign_d(p));
        CHECK(vdash(make_Z(a, p), make_Z(b, p), p) == q * make_Z(a + b, p));
        CHECK(vdash(make_Zhat(a, p), make_Zhat(b, p), p) == q * make_Zhat(a + b, p));
      }
  for (Parity p : kBoth) {
    CHECK(vdash(make_star(), make_star(), p).is_zero());
    CHECK(vdash(make_bare_point(), make_bare_point(), p) == make_bare_point());
  }
}

TEST_CASE("differentials of named families") {
  for (Parity p : kBoth)
    for (int k = 1; k <= 4; ++k) {
      CHECK(d_h(make_Z(k, p), p).is_zero());
      int s3 = (p == Parity::Odd && (k & 1)) ? -1 : 1;
      CHECK(full(make_Z(k, p), p) == mpz_class(s3) * vdash(make_Z(k - 1, p), make_star(), p));
      int s5 = p == Parity::Odd ? 1 : -1;
      CHECK(full(make_Zhat(k, p), p) == mpz_class(s5) * vdash(make_star(), make_Zhat(k - 1, p), p));
    }
}

TEST_CASE("bracket over") {
  for (Parity p : kBoth) {
    LinComb a(chord_pair());
    CHECK(bracket_over({a}, Diagram(1), p) == a);
    Diagram star(1);
    star.bottom = 1;
    CHECK(bracket_over({make_star()}, star, p).is_zero());
    CHECK_THROWS_AS(bracket_over({a, a}, star, p), ArityMismatch);
    Diagram z(1);
    z.top = {1};
    CHECK_THROWS_AS(bracket_over({a}, z, p), TopAsterisksOnD);
  }
}

TEST_CASE("iso I on small examples") {
  for (Parity p : kBoth) {
    LinComb expect = make_Z(2, p) + vdash(make_Z(1, p), make_Zhat(1, p), p) + make_Zhat(2, p);
    CHECK(iso_I(make_Z(2, p), p) == expect);
    CHECK(iso_I_inv(make_Z(1, p), p) == make_Z(1, p) - make_Zhat(1, p));
    LinComb t(chord_pair());
    CHECK(iso_I(t, p) == t);
    CHECK(iso_I_inv(t, p) == t);
    for (int k = 1; k <= 4; ++k) CHECK(iso_I_inv(iso_I(make_Z(k, p), p), p) == make_Z(k, p));
  }
}

TEST_CASE("iso I hat on units") {
  for (Parity p : kBoth)
    for (int k = 1; k <= 3; ++k) {
      CHECK(iso_I_hat(make_Z(k, p), unit(), p) == make_Zhat(k, p));
      Diagram t(4);
      t.chords = {{0, 2}, {1, 3}};
      CHECK(iso_I_hat(unit(), LinComb(t), p) == LinComb(t));
      CHECK_THROWS_AS(iso_I_hat(LinComb(t), unit(), p), VariantMismatch);
    }
}

TEST_CASE("coproduct") {
  // six points, chords inside the first four and the last two
  Diagram d(6);
  d.chords = {{0, 2}, {1, 3}, {4, 5}};
  for (Parity p : kBoth) {
    auto cp = coproduct(d, p);
    REQUIRE(cp.size() == 3);
    CHECK(cp[0].left.n == 0);
    CHECK(cp[1].left.n == 4);
    CHECK(cp[2].right.n == 0);
    auto u = coproduct(Diagram(0), p);
    CHECK(u.size() == 1);
  }
}

TEST_CASE("divided powers") {
  Diagram c = chord_pair();
  // total degree of the 1-chord diagram is (d-1) - 2: even exactly when d is odd
  CHECK(divided_power(LinComb(c), 0, Parity::Odd) == unit());
  CHECK_THROWS_AS(divided_power(LinComb(c), 2, Parity::Even), OddDegree);
  CHECK_NOTHROW(divided_power(LinComb(c), 2, Parity::Even, Ring::prime_field(2)));
  LinComb x(c);
  LinComb sq = shuffle_product(x, x, Parity::Odd);
  CHECK(sq == mpz_class(2) * divided_power(x, 2, Parity::Odd));
  CHECK_THROWS_AS(total_degree_odd(LinComb(c) + make_star(), Parity::Odd), NonHomogeneous);
}
