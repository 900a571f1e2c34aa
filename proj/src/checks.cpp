#include "vw/checks.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <random>
#include <tuple>

#include "vw/chord_oracle.hpp"
#include "vw/error.hpp"
#include "vw/homology.hpp"
#include "vw/hopf.hpp"

namespace vw {

bool SuiteReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

namespace {

const ComplexVariant kVariants[] = {ComplexVariant::Tss, ComplexVariant::Tss_h, ComplexVariant::Ts,
                                    ComplexVariant::T,   ComplexVariant::T0,    ComplexVariant::Z};

// Counts cases of one identity and keeps the first failure.
class Tally {
 public:
  explicit Tally(std::string name) { r_.name = std::move(name); }
  void expect(bool ok, const std::function<std::string()>& what) {
    ++r_.cases;
    if (ok) return;
    if (r_.pass) first_ = what();
    ++failures_;
    r_.pass = false;
  }
  void note(const std::string& s) {
    if (r_.pass) r_.detail = s;
  }
  CheckResult done() const {
    CheckResult out = r_;
    if (!out.pass)
      out.detail = std::to_string(failures_) + " of " + std::to_string(out.cases) + " failed; first: " + first_;
    else if (out.detail.empty())
      out.detail = std::to_string(out.cases) + " cases";
    return out;
  }

 private:
  CheckResult r_;
  long failures_ = 0;
  std::string first_;
};

class Suite {
 public:
  Suite(std::string name, const SuiteOptions& opts) : opts_(opts), start_(std::chrono::steady_clock::now()) {
    rep_.suite = std::move(name);
  }
  void add(CheckResult r) {
    if (opts_.progress) opts_.progress(r);
    rep_.checks.push_back(std::move(r));
  }
  // Runs body, turning engine errors into a failed check.
  void run(const std::string& name, const std::function<void(Tally&)>& body) {
    Tally t(name);
    try {
      body(t);
    } catch (const ResourceLimit&) {
      throw;
    } catch (const std::exception& e) {
      t.expect(false, [&] { return std::string("exception: ") + e.what(); });
    }
    add(t.done());
  }
  SuiteReport finish() {
    rep_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return rep_;
  }

 private:
  const SuiteOptions& opts_;
  std::chrono::steady_clock::time_point start_;
  SuiteReport rep_;
};

std::string tag(Parity p) { return std::string("parity ") + to_string(p); }

std::string at(int i, int j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

LinComb full(const LinComb& x, Parity p) { return arnold_reduce(d_h(x, p) + d_v(x, p), p); }
LinComb horiz(const LinComb& x, Parity p) { return arnold_reduce(d_h(x, p), p); }

mpz_class sgn(bool odd) { return odd ? -1 : 1; }

bool deg(const LinComb& x, Parity p);

// |= built from d_h alone.
LinComb vdash_h(const LinComb& a, const LinComb& b, Parity p) {
  bool odd_a = deg(a, p);
  LinComb r = horiz(divided_product({a, b}, p), p) - divided_product({horiz(a, p), b}, p) -
              sgn(odd_a) * divided_product({a, horiz(b, p)}, p);
  return sgn(!odd_a) * arnold_reduce(r, p);
}

bool deg(const LinComb& x, Parity p) { return total_degree_odd(x, p); }

// Tss basis diagrams with at most max_points points and complexity at most i_max.
std::vector<Diagram> pool(Parity, int i_max, int max_points, bool with_bare_point) {
  std::vector<Diagram> out;
  if (with_bare_point) out.push_back(Diagram(1));
  for (int i = 1; i <= i_max; ++i) {
    auto [lo, hi] = j_range(ComplexVariant::Tss, i);
    for (int j = lo; j <= hi; ++j)
      for (auto& d : enumerate_admissible(ComplexVariant::Tss, i, j))
        if (d.n <= max_points) out.push_back(d);
  }
  return out;
}

template <class T>
const T& pick(const std::vector<T>& v, std::mt19937_64& rng) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

using Triple = std::map<std::tuple<Diagram, Diagram, Diagram>, mpz_class>;

void add3(Triple& t, const Diagram& a, const Diagram& b, const Diagram& c, const mpz_class& v) {
  auto key = std::make_tuple(a, b, c);
  auto it = t.find(key);
  if (it == t.end()) {
    if (v != 0) t.emplace(key, v);
    return;
  }
  it->second += v;
  if (it->second == 0) t.erase(it);
}

LinComb lift(const Diagram& d) { return LinComb(d); }

}  // namespace

// ---------------------------------------------------------------- d-squared

SuiteReport verify_d_squared(const SuiteOptions& opts) {
  Suite s("d-squared", opts);
  for (ComplexVariant v : kVariants)
    for (Parity p : opts.parities)
      s.run("d o d = 0, " + to_string(v) + ", " + tag(p), [&](Tally& t) {
        ComplexBuilder b(v, p, opts.caps);
        for (int i = 1; i <= opts.i_max; ++i) {
          auto [lo, hi] = j_range(v, i);
          for (int j = lo; j <= hi; ++j) {
            const SparseMatrix& m1 = b.matrix(i, j).entries;
            const SparseMatrix& m0 = b.matrix(i, j - 1).entries;
            SparseMatrix sq = multiply(m0, m1);
            for (int c = 0; c < sq.cols; ++c)
              t.expect(sq.columns[c].empty(), [&] { return "basis element " + std::to_string(c) + " at " + at(i, j); });
          }
        }
      });
  for (Parity p : opts.parities)
    s.run("d_h and d_v commute with Arnold reduction, " + tag(p), [&](Tally& t) {
      ArnoldReducer red(p);
      for (int i = 1; i <= std::min(opts.i_max, 3); ++i) {
        auto [lo, hi] = j_range(ComplexVariant::Tss, i);
        for (int j = lo; j <= hi; ++j)
          for (const auto& d : enumerate_forests(ComplexVariant::Tss, i, j, opts.caps)) {
            if (is_admissible(d)) continue;
            LinComb x(d);
            LinComb nx = red.reduce(x);
            t.expect(red.reduce(d_h(x, p)) == red.reduce(d_h(nx, p)), [&] { return "d_h on " + serialize(d); });
            t.expect(red.reduce(d_v(x, p)) == red.reduce(d_v(nx, p)), [&] { return "d_v on " + serialize(d); });
          }
      }
    });
  for (Parity p : opts.parities)
    s.run("bigrading contract and split squares on Tss, " + tag(p), [&](Tally& t) {
      for (int i = 1; i <= opts.i_max; ++i) {
        auto [lo, hi] = j_range(ComplexVariant::Tss, i);
        for (int j = lo; j <= hi; ++j)
          for (const auto& d : enumerate_admissible(ComplexVariant::Tss, i, j, opts.caps)) {
            LinComb x(d);
            LinComb dx = d_h(x, p) + d_v(x, p);
            for (const auto& [e, c] : dx)
              t.expect(e.complexity() == i && e.distinct_points() == j - 1, [&] { return "term " + serialize(e); });
            // split by the change in the number of top asterisks
            LinComb hh = arnold_reduce(d_h(d_h(x, p), p), p);
            LinComb vv = arnold_reduce(d_v(d_v(x, p), p), p);
            LinComb mixed = arnold_reduce(d_h(d_v(x, p), p) + d_v(d_h(x, p), p), p);
            t.expect(hh.is_zero() && vv.is_zero() && mixed.is_zero(), [&] { return serialize(d); });
          }
      }
    });
  return s.finish();
}

// ---------------------------------------------------------------- iso-I

SuiteReport verify_iso_I(const SuiteOptions& opts) {
  Suite s("iso-I", opts);
  for (Parity p : opts.parities) {
    std::vector<std::pair<Diagram, std::pair<int, int>>> basis;
    for (int i = 1; i <= opts.i_max; ++i) {
      auto [lo, hi] = j_range(ComplexVariant::Tss, i);
      for (int j = lo; j <= hi; ++j)
        for (auto& d : enumerate_admissible(ComplexVariant::Tss, i, j, opts.caps)) basis.push_back({d, {i, j}});
    }
    s.run("I o d_h = d o I, " + tag(p), [&](Tally& t) {
      for (const auto& [d, ij] : basis) {
        LinComb x(d);
        t.expect(iso_I(horiz(x, p), p) == full(iso_I(x, p), p), [&] { return serialize(d); });
      }
    });
    s.run("I^-1 o I = id = I o I^-1, " + tag(p), [&](Tally& t) {
      for (const auto& [d, ij] : basis) {
        LinComb x(d);
        t.expect(iso_I_inv(iso_I(x, p), p) == x, [&] { return "I^-1 I on " + serialize(d); });
        t.expect(iso_I(iso_I_inv(x, p), p) == x, [&] { return "I I^-1 on " + serialize(d); });
      }
    });
    s.run("I unitriangular in top-asterisk count, " + tag(p), [&](Tally& t) {
      for (const auto& [d, ij] : basis) {
        LinComb r = iso_I(LinComb(d), p) - LinComb(d);
        bool ok = r.coefficient(d) == 0;
        for (const auto& [e, c] : r) ok = ok && e.top_total() < d.top_total();
        t.expect(ok, [&] { return serialize(d); });
      }
    });
    s.run("I is a chain map on matrices, " + tag(p), [&](Tally& t) {
      auto nm = make_named_map(NamedMap::IsoI, p, opts.caps);
      for (int i = 1; i <= opts.i_max; ++i) {
        auto [lo, hi] = j_range(ComplexVariant::Tss, i);
        for (int j = lo; j <= hi + 1; ++j) {
          bool ok = true;
          try {
            check_chain_map(nm.map, i, j);
          } catch (const NotAChainMap&) {
            ok = false;
          }
          t.expect(ok, [&] { return at(i, j); });
        }
      }
    });
    std::vector<Diagram> small = pool(p, 2, 2, true);
    s.run("I respects product, coproduct and |=, " + tag(p), [&](Tally& t) {
      for (const auto& a : small)
        for (const auto& b : small) {
          LinComb A(a), B(b);
          LinComb IA = iso_I(A, p), IB = iso_I(B, p);
          t.expect(iso_I(shuffle_product(A, B, p), p) == arnold_reduce(shuffle_product(IA, IB, p), p),
                   [&] { return "product " + serialize(a) + " * " + serialize(b); });
          t.expect(iso_I(vdash(A, B, p), p) == vdash(IA, IB, p),
                   [&] { return "|= " + serialize(a) + " , " + serialize(b); });
        }
      for (const auto& a : pool(p, 3, 3, false)) {
        TensorComb lhs = coproduct(iso_I(LinComb(a), p), p);
        TensorComb rhs;
        for (const auto& tp : coproduct(a, p)) {
          LinComb l = iso_I(LinComb(tp.left), p), r = iso_I(LinComb(tp.right), p);
          for (const auto& [dl, cl] : l)
            for (const auto& [dr, cr] : r) add_term(rhs, dl, dr, cl * cr * tp.sign);
        }
        t.expect(lhs == rhs, [&] { return "coproduct of " + serialize(a); });
      }
      for (const auto& a : small) {
        LinComb A(a);
        if (a.n == 0 || deg(A, p)) continue;
        t.expect(iso_I(divided_power(A, 2, p), p) == arnold_reduce(divided_power(iso_I(A, p), 2, p), p),
                 [&] { return "divided square of " + serialize(a); });
      }
    });
  }
  return s.finish();
}

// ---------------------------------------------------------------- hopf

SuiteReport verify_hopf_axioms(const SuiteOptions& opts) {
  Suite s("hopf-axioms", opts);
  for (Parity p : opts.parities) {
    std::mt19937_64 rng(opts.seed + static_cast<int>(p));
    const std::vector<Diagram> tiny = pool(p, 1, 2, true);
    const std::vector<Diagram> small = pool(p, 2, 2, true);
    const std::vector<Diagram> three = pool(p, 3, 3, true);
    const int n_random = opts.random_cases;

    auto product_checks = [&](Tally& t, const Diagram& a, const Diagram& b, const Diagram& c) {
      LinComb A(a), B(b), C(c);
      t.expect(shuffle_product(shuffle_product(A, B, p), C, p) == shuffle_product(A, shuffle_product(B, C, p), p),
               [&] { return "associativity " + serialize(a) + " " + serialize(b) + " " + serialize(c); });
    };
    s.run("shuffle product: unit and associativity, " + tag(p), [&](Tally& t) {
      for (const auto& a : three) {
        t.expect(shuffle_product(unit(), lift(a), p) == lift(a) && shuffle_product(lift(a), unit(), p) == lift(a),
                 [&] { return "unit with " + serialize(a); });
      }
      for (const auto& a : tiny)
        for (const auto& b : tiny)
          for (const auto& c : tiny) product_checks(t, a, b, c);
      for (int k = 0; k < n_random; ++k) product_checks(t, pick(three, rng), pick(three, rng), pick(three, rng));
    });
    s.run("shuffle product: graded commutativity, " + tag(p), [&](Tally& t) {
      for (const auto& a : small)
        for (const auto& b : small) {
          LinComb A(a), B(b);
          t.expect(shuffle_product(A, B, p) == sgn(deg(A, p) && deg(B, p)) * shuffle_product(B, A, p),
                   [&] { return serialize(a) + " " + serialize(b); });
        }
    });
    s.run("divided product splits the shuffle product, " + tag(p), [&](Tally& t) {
      auto one = [&](const Diagram& a, const Diagram& b) {
        LinComb A(a), B(b);
        t.expect(divided_product({A, B}, p) + sgn(deg(A, p) && deg(B, p)) * divided_product({B, A}, p) ==
                     shuffle_product(A, B, p),
                 [&] { return serialize(a) + " " + serialize(b); });
      };
      for (const auto& a : small)
        for (const auto& b : small) one(a, b);
      for (int k = 0; k < n_random; ++k) one(pick(three, rng), pick(three, rng));
    });
    s.run("coassociativity and counit, " + tag(p), [&](Tally& t) {
      std::vector<Diagram> ds = three;
      for (int i = 1; i <= 3; ++i) {
        auto [lo, hi] = j_range(ComplexVariant::T, i);
        for (int j = lo; j <= hi; ++j)
          for (auto& d : enumerate_admissible(ComplexVariant::T, i, j)) ds.push_back(d);
      }
      for (const auto& d : ds) {
        Triple left, right;
        bool counit_l = false, counit_r = false;
        for (const auto& tp : coproduct(d, p)) {
          if (tp.left.n == 0 && tp.right == d && tp.sign == 1) counit_l = true;
          if (tp.right.n == 0 && tp.left == d && tp.sign == 1) counit_r = true;
          for (const auto& u : coproduct(tp.left, p)) add3(left, u.left, u.right, tp.right, tp.sign * u.sign);
          for (const auto& u : coproduct(tp.right, p)) add3(right, tp.left, u.left, u.right, tp.sign * u.sign);
        }
        t.expect(left == right, [&] { return "coassociativity on " + serialize(d); });
        t.expect(counit_l && counit_r, [&] { return "counit on " + serialize(d); });
      }
    });
    s.run("bialgebra compatibility, " + tag(p), [&](Tally& t) {
      auto one = [&](const Diagram& a, const Diagram& b) {
        LinComb A(a), B(b);
        t.expect(coproduct(shuffle_product(A, B, p), p) == tensor_product(coproduct(A, p), coproduct(B, p), p),
                 [&] { return serialize(a) + " " + serialize(b); });
      };
      for (const auto& a : small)
        for (const auto& b : small) one(a, b);
      for (int k = 0; k < n_random; ++k) one(pick(three, rng), pick(three, rng));
    });
    s.run("|= graded commutativity and associativity, " + tag(p), [&](Tally& t) {
      std::map<std::pair<Diagram, Diagram>, LinComb> memo;
      auto vd = [&](const Diagram& a, const Diagram& b) -> const LinComb& {
        auto key = std::make_pair(a, b);
        auto it = memo.find(key);
        if (it == memo.end()) it = memo.emplace(key, vdash(lift(a), lift(b), p)).first;
        return it->second;
      };
      for (const auto& a : small)
        for (const auto& b : small) {
          bool e = !deg(lift(a), p) && !deg(lift(b), p);  // (|A|-1)(|B|-1) odd
          t.expect(vd(a, b) == sgn(e) * vd(b, a), [&] { return "commutativity " + serialize(a) + " " + serialize(b); });
        }
      auto assoc = [&](const Diagram& a, const Diagram& b, const Diagram& c) {
        LinComb ab = vd(a, b);
        LinComb lhs, rhs;
        if (!ab.is_zero()) lhs = vdash(ab, lift(c), p);
        LinComb bc = vd(b, c);
        if (!bc.is_zero()) rhs = vdash(lift(a), bc, p);
        t.expect(lhs == rhs, [&] { return "associativity " + serialize(a) + " " + serialize(b) + " " + serialize(c); });
      };
      for (const auto& a : tiny)
        for (const auto& b : tiny)
          for (const auto& c : tiny) assoc(a, b, c);
      for (int k = 0; k < n_random; ++k) assoc(pick(small, rng), pick(small, rng), pick(small, rng));
    });
    s.run("|= is the gluing of left-most points, " + tag(p), [&](Tally& t) {
      for (const auto& a : small)
        for (const auto& b : small) {
          LinComb r = vdash(lift(a), lift(b), p);
          for (const auto& [e, c] : r)
            t.expect(e.n == a.n + b.n - 1 && e.complexity() == a.complexity() + b.complexity(),
                     [&] { return serialize(a) + " |= " + serialize(b) + " -> " + serialize(e); });
        }
    });

    // Leibniz rule for divided products, under d and under d_h.
    auto leibniz = [&](Tally& t, const std::vector<Diagram>& as, bool horizontal) {
      auto D = [&](const LinComb& x) { return horizontal ? horiz(x, p) : full(x, p); };
      std::vector<LinComb> A;
      for (const auto& a : as) A.push_back(lift(a));
      LinComb lhs = D(divided_product(A, p));
      LinComb rhs;
      bool prefix = false;
      for (std::size_t k = 0; k < A.size(); ++k) {
        std::vector<LinComb> f = A;
        f[k] = D(A[k]);
        if (!f[k].is_zero()) rhs += sgn(prefix) * divided_product(f, p);
        prefix ^= deg(A[k], p);
        if (k + 1 < A.size()) {
          LinComb g = horizontal ? vdash_h(A[k], A[k + 1], p) : vdash(A[k], A[k + 1], p);
          if (g.is_zero()) continue;
          std::vector<LinComb> h(A.begin(), A.begin() + k);
          h.push_back(g);
          h.insert(h.end(), A.begin() + k + 2, A.end());
          rhs += sgn(!prefix) * divided_product(h, p);
        }
      }
      rhs = arnold_reduce(rhs, p);
      t.expect(lhs == rhs, [&] {
        std::string w;
        for (const auto& a : as) w += serialize(a) + " ";
        return w;
      });
    };
    for (bool horizontal : {false, true})
      s.run(std::string("Leibniz rule for divided products") + (horizontal ? " under d_h, " : ", ") + tag(p),
            [&](Tally& t) {
              for (const auto& a : small)
                for (const auto& b : small) leibniz(t, {a, b}, horizontal);
              for (int k = 0; k < n_random; ++k)
                leibniz(t, {pick(three, rng), pick(small, rng), pick(small, rng)}, horizontal);
            });

    s.run("gluing identity for <A_1..A_l | D>, " + tag(p), [&](Tally& t) {
      // receiving diagrams: generalized, no top asterisks, up to three points
      std::vector<Diagram> receivers;
      for (int n = 1; n <= 3; ++n) {
        std::vector<Chord> all;
        for (int a = 0; a < n; ++a)
          for (int b = a + 1; b < n; ++b) all.push_back({static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)});
        for (unsigned cm = 0; cm < (1u << all.size()); ++cm)
          for (unsigned bm = 0; bm < (1u << n); ++bm) {
            Diagram d(n);
            for (std::size_t k = 0; k < all.size(); ++k)
              if (cm >> k & 1u) d.chords.push_back(all[k]);
            d.bottom = bm;
            if (is_admissible(d) && validate(d, ComplexVariant::Ts, {.generalized = true})) receivers.push_back(d);
          }
      }
      auto one = [&](const std::vector<Diagram>& as, const Diagram& d, bool horizontal) {
        auto Dd = [&](const LinComb& x) { return horizontal ? horiz(x, p) : full(x, p); };
        std::vector<LinComb> A;
        for (const auto& a : as) A.push_back(lift(a));
        LinComb lhs = Dd(bracket_over(A, d, p));
        LinComb rhs;
        bool prefix = false;
        for (std::size_t k = 0; k < A.size(); ++k) {
          std::vector<LinComb> f = A;
          f[k] = Dd(A[k]);
          if (!f[k].is_zero()) rhs += sgn(prefix) * bracket_over(f, d, p);
          prefix ^= deg(A[k], p);
          if (k + 1 < A.size()) {
            LinComb g = horizontal ? vdash_h(A[k], A[k + 1], p) : vdash(A[k], A[k + 1], p);
            LinComb dk = d_h_at(d, static_cast<int>(k), p);
            if (g.is_zero() || dk.is_zero()) continue;
            std::vector<LinComb> h(A.begin(), A.begin() + k);
            h.push_back(g);
            h.insert(h.end(), A.begin() + k + 2, A.end());
            // d_h_at carries (-1)^k; the identity uses the bare gluing
            for (const auto& [e, c] : dk) rhs += mpz_class(c * sgn(!prefix ^ (k & 1))) * bracket_over(h, e, p);
          }
        }
        rhs = arnold_reduce(rhs, p);
        t.expect(lhs == rhs, [&] {
          std::string w;
          for (const auto& a : as) w += serialize(a) + " ";
          return w + "| " + serialize(d) + (horizontal ? " (d_h)" : "");
        });
      };
      for (const auto& d : receivers) {
        if (d.n == 1)
          for (const auto& a : small) one({a}, d, false);
        if (d.n == 2)
          for (const auto& a : tiny)
            for (const auto& b : tiny) {
              one({a, b}, d, false);
              one({a, b}, d, true);
            }
      }
      std::vector<Diagram> r3;
      for (const auto& d : receivers)
        if (d.n == 3) r3.push_back(d);
      for (int k = 0; k < n_random; ++k)
        one({pick(small, rng), pick(tiny, rng), pick(small, rng)}, pick(r3, rng), k & 1);
    });

    s.run("divided-power axioms, " + tag(p), [&](Tally& t) {
      std::vector<LinComb> evens;
      for (const auto& a : small)
        if (a.n > 0 && !a.degree_odd(p)) evens.push_back(lift(a));
      std::vector<LinComb> xs = evens;
      for (std::size_t k = 0; k + 1 < evens.size(); k += 3) xs.push_back(evens[k] + mpz_class(2) * evens[k + 1]);
      for (const auto& x : xs) {
        LinComb power = unit();
        mpz_class fact = 1;
        for (int l = 1; l <= 3; ++l) {
          power = shuffle_product(power, x, p);
          fact *= l;
          LinComb dp = divided_power(x, l, p);
          t.expect(fact * dp == power, [&] { return "l! x^<l> = x^l, l=" + std::to_string(l) + " x=" + to_string(x); });
          LinComb lhs = full(dp, p);
          LinComb rhs = arnold_reduce(shuffle_product(full(x, p), divided_power(x, l - 1, p), p), p);
          t.expect(lhs == rhs, [&] { return "d x^<l> = dx x^<l-1>, l=" + std::to_string(l) + " x=" + to_string(x); });
        }
        t.expect(vdash(x, x, p).is_zero(), [&] { return "x |= x = 0 for x=" + to_string(x); });
      }
      for (int k = 0; k < std::min<int>(n_random, 100) && evens.size() > 1; ++k) {
        const LinComb& x = pick(evens, rng);
        const LinComb& y = pick(evens, rng);
        for (int l = 1; l <= 2; ++l) {
          LinComb rhs;
          for (int a = 0; a <= l; ++a) rhs += shuffle_product(divided_power(x, a, p), divided_power(y, l - a, p), p);
          t.expect(divided_power(x + y, l, p) == rhs, [&] { return "(x+y)^<l> for " + to_string(x) + " , " + to_string(y); });
        }
      }
    });
  }
  return s.finish();
}

// ---------------------------------------------------------------- quasi-iso

SuiteReport verify_quasi_iso(const SuiteOptions& opts, const std::vector<std::string>& maps) {
  Suite s("quasi-iso", opts);
  std::vector<NamedMap> which;
  if (maps.empty()) which = {NamedMap::Projection, NamedMap::Inclusion, NamedMap::IsoI, NamedMap::IsoIHat};
  for (const auto& m : maps) which.push_back(parse_named_map(m));
  for (NamedMap m : which)
    for (Parity p : opts.parities) {
      auto nm = make_named_map(m, p, opts.caps);
      for (int i = 1; i <= opts.i_max; ++i)
        s.run(to_string(m) + " induces isomorphisms on H(-;Z), i=" + std::to_string(i) + ", " + tag(p), [&](Tally& t) {
          InducedMapReport r = induced_map_on_homology(nm.map, i);
          std::string groups;
          for (const auto& [j, g] : r.target) {
            if (g.is_zero() && r.source.at(j).is_zero()) continue;
            groups += " j=" + std::to_string(j) + ":" + to_string(r.source.at(j)) + "->" + to_string(g);
          }
          t.note(groups.empty() ? "all groups zero" : groups.substr(1));
          t.expect(r.isomorphism, [&] { return "mapping cone not acyclic;" + groups; });
        });
    }
  return s.finish();
}

// ---------------------------------------------------------------- kunneth

SuiteReport verify_kunneth(const SuiteOptions& opts, const std::vector<Ring>& rings_in) {
  Suite s("kunneth", opts);
  std::vector<Ring> rings = rings_in;
  if (rings.empty()) rings = {Ring::integers(), Ring::prime_field(2), Ring::prime_field(3)};
  for (Parity p : opts.parities)
    for (const Ring& ring : rings)
      s.run("H(T) = Kunneth(H(Z), H(T0)) over " + to_string(ring) + ", " + tag(p), [&](Tally& t) {
        for (const auto& row : kunneth_compare(p, opts.i_max, ring, opts.caps))
          t.expect(row.match, [&] {
            return at(row.i, row.j) + " direct " + to_string(row.direct) + " vs " + to_string(row.combined);
          });
      });
  for (Parity p : opts.parities)
    s.run("universal coefficients on T, " + tag(p), [&](Tally& t) {
      VariantComplex c(ComplexVariant::T, p, opts.caps);
      HomologyEngine h(c, opts.caps.linalg);
      for (std::uint32_t q : {2u, 3u, 5u})
        for (int i = 1; i <= opts.i_max; ++i) {
          auto [lo, hi] = c.support(i);
          for (int j = lo; j <= hi; ++j) {
            HomologyGroup z = h.homology(i, j, Ring::integers());
            HomologyGroup zm = h.homology(i, j - 1, Ring::integers());
            long expect = z.free_rank;
            for (const auto& f : z.torsion) expect += (f % q == 0);
            for (const auto& f : zm.torsion) expect += (f % q == 0);
            long got = h.homology(i, j, Ring::prime_field(q)).free_rank;
            t.expect(got == expect, [&] { return "F_" + std::to_string(q) + " at " + at(i, j); });
          }
        }
    });
  return s.finish();
}

// ---------------------------------------------------------------- chord-split

SuiteReport verify_chord_split(const SuiteOptions& opts) {
  Suite s("chord-split", opts);
  const Ring Q = Ring::rationals();
  auto lower = [&](ComplexVariant v, Parity p, int n) {
    VariantComplex c(v, p, opts.caps);
    HomologyEngine h(c, opts.caps.linalg);
    std::vector<long> dims{1};
    for (int i = 1; i <= n; ++i) dims.push_back(h.dual_homology(i, 2 * i, Q).free_rank);
    return dims;
  };
  auto show = [](const std::vector<long>& v) {
    std::string s;
    for (long x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
    return s;
  };
  const int n_odd = opts.order_max;
  const int n_even = std::max(0, opts.order_max - 1);
  bool odd = std::find(opts.parities.begin(), opts.parities.end(), Parity::Odd) != opts.parities.end();
  bool even = std::find(opts.parities.begin(), opts.parities.end(), Parity::Even) != opts.parities.end();
  if (odd) {
    std::vector<long> B = lower(ComplexVariant::T, Parity::Odd, n_odd);
    std::vector<long> B0 = lower(ComplexVariant::Ts, Parity::Odd, n_odd);
    s.run("dim B_i = sum_k dim (B0)_{i-k}, parity odd", [&](Tally& t) {
      t.note("B=" + show(B) + " B0=" + show(B0));
      for (int i = 0; i <= n_odd; ++i) {
        long sum = 0;
        for (int k = 0; k <= i; ++k) sum += B0[i - k];
        t.expect(B[i] == sum, [&] { return "i=" + std::to_string(i) + " B=" + show(B) + " B0=" + show(B0); });
      }
    });
    s.run("lower diagonal of T equals the 4T oracle, parity odd", [&](Tally& t) {
      auto four = chord_space_dims(n_odd, ChordRelations::FourT, Q, std::max(6, n_odd));
      auto one = chord_space_dims(n_odd, ChordRelations::FourTOneT, Q, std::max(6, n_odd));
      for (int i = 0; i <= n_odd; ++i) {
        t.expect(static_cast<long>(four[i]) == B[i], [&] { return "B_" + std::to_string(i); });
        t.expect(static_cast<long>(one[i]) == B0[i], [&] { return "B0_" + std::to_string(i); });
      }
    });
  }
  if (even) {
    std::vector<long> B = lower(ComplexVariant::T, Parity::Even, n_even);
    std::vector<long> B0 = lower(ComplexVariant::Ts, Parity::Even, n_even);
    s.run("dim B_i = dim (B0)_i + dim (B0)_{i-1}, parity even", [&](Tally& t) {
      t.note("B=" + show(B) + " B0=" + show(B0));
      for (int i = 0; i <= n_even; ++i) {
        long sum = B0[i] + (i > 0 ? B0[i - 1] : 0);
        t.expect(B[i] == sum, [&] { return "i=" + std::to_string(i) + " B=" + show(B) + " B0=" + show(B0); });
      }
    });
  }
  return s.finish();
}

// ---------------------------------------------------------------- families

SuiteReport verify_families(const SuiteOptions& opts) {
  Suite s("families", opts);
  for (Parity p : opts.parities) {
    s.run("named families are valid with the expected bigrading, " + tag(p), [&](Tally& t) {
      for (int k = 1; k <= opts.k_max; ++k) {
        const Diagram z = make_Z(k, p).begin()->first;
        const Diagram zh = make_Zhat(k, p).begin()->first;
        t.expect(validate(z, ComplexVariant::Z) && z.complexity() == k && z.distinct_points() == k + 1,
                 [&] { return "Z_" + std::to_string(k); });
        t.expect(validate(zh, ComplexVariant::T) && is_admissible(zh) && zh.complexity() == k &&
                     zh.distinct_points() == k + 1,
                 [&] { return "Zhat_" + std::to_string(k); });
      }
      const Diagram st = make_star().begin()->first;
      t.expect(validate(st, ComplexVariant::Ts) && st.complexity() == 1 && st.distinct_points() == 1,
               [] { return std::string("star"); });
    });
    s.run("d_h Z_k = 0, " + tag(p), [&](Tally& t) {
      for (int k = 1; k <= opts.k_max; ++k)
        t.expect(d_h(make_Z(k, p), p).is_zero(), [&] { return "k=" + std::to_string(k); });
    });
    s.run("d Z_k = (-1)^{dk} Z_{k-1} |= star, " + tag(p), [&](Tally& t) {
      for (int k = 1; k <= opts.k_max; ++k) {
        LinComb lhs = full(make_Z(k, p), p);
        t.expect(lhs == arnold_reduce(d_v(make_Z(k, p), p), p), [&] { return "d = d_v, k=" + std::to_string(k); });
        mpz_class sign = (p == Parity::Odd && (k & 1)) ? -1 : 1;
        t.expect(lhs == sign * vdash(make_Z(k - 1, p), make_star(), p), [&] { return "k=" + std::to_string(k); });
      }
    });
    s.run("d Zhat_k = (-1)^{d-1} star |= Zhat_{k-1}, " + tag(p), [&](Tally& t) {
      for (int k = 1; k <= opts.k_max; ++k) {
        mpz_class sign = p == Parity::Odd ? 1 : -1;
        t.expect(full(make_Zhat(k, p), p) == sign * vdash(make_star(), make_Zhat(k - 1, p), p),
                 [&] { return "k=" + std::to_string(k); });
      }
    });
    s.run("Z_a |= Z_b and Zhat_a |= Zhat_b are quantum binomial multiples, " + tag(p), [&](Tally& t) {
      for (int a = 0; a <= opts.ab_max; ++a)
        for (int b = 0; a + b <= opts.ab_max; ++b) {
          mpz_class q = quantum_binomial(a, b, sign_d(p));
          t.expect(vdash(make_Z(a, p), make_Z(b, p), p) == q * make_Z(a + b, p),
                   [&] { return "Z_" + std::to_string(a) + " |= Z_" + std::to_string(b); });
          t.expect(vdash(make_Zhat(a, p), make_Zhat(b, p), p) == q * make_Zhat(a + b, p),
                   [&] { return "Zhat_" + std::to_string(a) + " |= Zhat_" + std::to_string(b); });
        }
    });
    s.run("I(Z_k) is a cycle, " + tag(p), [&](Tally& t) {
      for (int k = 1; k <= opts.k_max; ++k)
        t.expect(full(iso_I_Z(k, p), p).is_zero(), [&] { return "k=" + std::to_string(k); });
    });
  }
  return s.finish();
}

// ---------------------------------------------------------------- arnold

SuiteReport verify_arnold(const SuiteOptions& opts) {
  Suite s("arnold", opts);
  for (Parity p : opts.parities) {
    s.run("normal forms independent of the rewrite schedule, " + tag(p), [&](Tally& t) {
      std::mt19937_64 rng(opts.seed + 17 + static_cast<int>(p));
      std::vector<Diagram> forests;
      for (int i = 2; i <= 5; ++i) {
        auto [lo, hi] = j_range(ComplexVariant::Tss, i);
        for (int j = lo; j <= hi; ++j)
          for (auto& d : enumerate_forests(ComplexVariant::T, i, j, opts.caps))
            if (!is_admissible(d)) forests.push_back(d);
      }
      std::vector<Diagram> with_asterisks;
      for (int j = 3; j <= 6; ++j)
        for (auto& d : enumerate_forests(ComplexVariant::Tss, 4, j, opts.caps))
          if (!is_admissible(d)) with_asterisks.push_back(d);
      ArnoldReducer red(p);
      for (int k = 0; k < opts.random_cases; ++k) {
        const Diagram& d = (k & 1) ? pick(with_asterisks, rng) : pick(forests, rng);
        LinComb x(d);
        if (k % 5 == 0) x += mpz_class(3) * LinComb(pick(forests, rng));
        LinComb ref = red.reduce(x);
        t.expect(arnold_reduce_random(x, p, rng) == ref, [&] { return to_string(x); });
      }
    });
    s.run("admissible-basis dimensions equal the rank oracle over Q, " + tag(p), [&](Tally& t) {
      for (ComplexVariant v : {ComplexVariant::Tss, ComplexVariant::Ts, ComplexVariant::T})
        for (int i = 1; i <= opts.i_max; ++i) {
          auto [lo, hi] = j_range(v, i);
          for (int j = lo; j <= hi; ++j) {
            auto all = enumerate_forests(v, i, j, opts.caps);
            std::size_t adm = enumerate_admissible(v, i, j, opts.caps).size();
            std::size_t rank = span_rank_oracle(all, p, Ring::rationals());
            t.expect(rank == adm, [&] {
              return to_string(v) + " " + at(i, j) + ": oracle " + std::to_string(rank) + " admissible " +
                     std::to_string(adm);
            });
          }
        }
    });
  }
  s.run("Arnold instances are all forests or all cyclic", [&](Tally& t) {
    for (int n = 3; n <= 6; ++n) {
      std::vector<Chord> edges;
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) edges.push_back({static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)});
      // remainders: forests with up to n-3 chords
      std::function<void(std::size_t, std::vector<Chord>&)> rec = [&](std::size_t k, std::vector<Chord>& rest) {
        for (int a = 0; a < n; ++a)
          for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c) {
              Chord ab{static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)};
              Chord bc{static_cast<std::uint8_t>(b), static_cast<std::uint8_t>(c)};
              Chord ac{static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(c)};
              bool uses = false;
              for (const auto& e : rest) uses = uses || e == ab || e == bc || e == ac;
              if (uses) continue;
              auto with = [&](Chord x, Chord y) {
                auto cs = rest;
                cs.push_back(x);
                cs.push_back(y);
                return chords_form_forest(n, cs);
              };
              bool f1 = with(ab, bc), f2 = with(bc, ac), f3 = with(ac, ab);
              t.expect(f1 == f2 && f2 == f3, [&] { return "n=" + std::to_string(n); });
            }
        if (static_cast<int>(rest.size()) >= n - 3) return;
        for (std::size_t e = k; e < edges.size(); ++e) {
          rest.push_back(edges[e]);
          if (chords_form_forest(n, rest)) rec(e + 1, rest);
          rest.pop_back();
        }
      };
      std::vector<Chord> rest;
      rec(0, rest);
    }
  });
  return s.finish();
}

// ---------------------------------------------------------------- registry

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"d-squared", "iso-I",    "hopf-axioms", "quasi-iso",
                                                 "kunneth",   "chord-split", "families",  "arnold"};
  return names;
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& opts) {
  if (name == "d-squared") return verify_d_squared(opts);
  if (name == "iso-I") return verify_iso_I(opts);
  if (name == "hopf-axioms") return verify_hopf_axioms(opts);
  if (name == "quasi-iso") return verify_quasi_iso(opts);
  if (name == "kunneth") return verify_kunneth(opts);
  if (name == "chord-split") return verify_chord_split(opts);
  if (name == "families") return verify_families(opts);
  if (name == "arnold") return verify_arnold(opts);
  throw ArgumentError("unknown suite: " + name);
}

}  // namespace vw
