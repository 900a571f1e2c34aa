#include "vw/relations.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "vw/error.hpp"
#include "vw/linalg.hpp"

namespace vw {

std::size_t DiagramHash::operator()(const Diagram& d) const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  mix(d.n);
  for (const auto& c : d.chords) mix((static_cast<std::uint64_t>(c.a) << 8) | c.b | 0x10000);
  mix(d.bottom);
  for (auto k : d.top) mix(0x20000 | k);
  return static_cast<std::size_t>(h);
}

mpz_class quantum_binomial(int k, int n, int q) {
  if (k < 0 || n < 0) throw ArgumentError("quantum_binomial: negative argument");
  if (q != 1 && q != -1) throw ArgumentError("quantum_binomial: q must be +1 or -1");
  mpz_class r;
  if (q == 1) {
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(k + n), static_cast<unsigned long>(k));
    return r;
  }
  if ((k & 1) && (n & 1)) return 0;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>((k + n) / 2), static_cast<unsigned long>(k / 2));
  return r;
}

bool is_admissible(const Diagram& d) {
  std::uint32_t heads = 0;
  for (const auto& c : d.chords) {
    if (c.a >= c.b) return false;
    if (heads >> c.b & 1u) return false;
    heads |= 1u << c.b;
  }
  return true;
}

LinComb arnold_step(const Diagram& d, int v, int a, int b, Parity parity) {
  Monomial m = canonical_monomial(d);
  auto pos = [&](int x, int y) {
    for (std::size_t k = 0; k < m.size(); ++k)
      if (m[k].kind == TokenKind::Chord && m[k].x == x && m[k].y == y) return static_cast<int>(k);
    throw ArgumentError("arnold_step: chord not present");
  };
  int p = pos(a, v), q = pos(b, v);
  if (p > q) throw ArgumentError("arnold_step: expected a < b");
  // bring alpha_bv next to alpha_av
  int sign = (asterisk_degree_odd(parity) && ((q - p - 1) & 1)) ? -1 : 1;
  Token moved = m[q];
  m.erase(m.begin() + q);
  m.insert(m.begin() + p + 1, moved);
  // alpha_av alpha_bv = alpha_ab alpha_bv + alpha_va alpha_ab
  LinComb out;
  Monomial t1 = m;
  t1[p] = Token::chord(a, b);
  t1[p + 1] = Token::chord(b, v);
  if (auto s = assemble(d.n, t1, parity)) out.add(s->diagram, sign * s->sign);
  Monomial t2 = m;
  t2[p] = Token::chord(v, a);
  t2[p + 1] = Token::chord(a, b);
  if (auto s = assemble(d.n, t2, parity)) out.add(s->diagram, sign * s->sign);
  return out;
}

namespace {

// Smallest point heading two chords and its two smallest tails.
bool find_double_head(const Diagram& d, int& v, int& a, int& b) {
  std::array<int, 32> first;
  first.fill(-1);
  int best_v = 1 << 30;
  for (const auto& c : d.chords) {
    if (first[c.b] < 0) {
      first[c.b] = c.a;
    } else if (c.b < best_v) {
      best_v = c.b;
    }
  }
  if (best_v == (1 << 30)) return false;
  v = best_v;
  std::vector<int> tails;
  for (const auto& c : d.chords)
    if (c.b == v) tails.push_back(c.a);
  std::sort(tails.begin(), tails.end());
  a = tails[0];
  b = tails[1];
  return true;
}

}  // namespace

const LinComb& ArnoldReducer::normal_form(const Diagram& d) {
  auto it = cache_.find(d);
  if (it != cache_.end()) return it->second;
  int v, a, b;
  if (!find_double_head(d, v, a, b)) return cache_.emplace(d, LinComb(d)).first->second;
  if (++rewrites_ > max_rewrites_) throw NonTermination("Arnold reduction exceeded the rewrite bound");
  LinComb step = arnold_step(d, v, a, b, parity_);
  LinComb out;
  for (const auto& [t, c] : step) {
    const LinComb& nf = normal_form(t);
    for (const auto& [u, e] : nf) out.add(u, c * e);
  }
  return cache_.emplace(d, std::move(out)).first->second;
}

LinComb ArnoldReducer::reduce(const LinComb& x) {
  LinComb out;
  for (const auto& [d, c] : x) {
    if (is_admissible(d)) {
      out.add(d, c);
      continue;
    }
    for (const auto& [u, e] : normal_form(d)) out.add(u, c * e);
  }
  return out;
}

LinComb arnold_reduce(const LinComb& x, Parity parity) {
  ArnoldReducer r(parity);
  return r.reduce(x);
}

LinComb arnold_reduce_random(const LinComb& x, Parity parity, std::mt19937_64& rng) {
  LinComb pending = x, out;
  std::size_t steps = 0;
  while (!pending.is_zero()) {
    // pick a random pending term
    std::uniform_int_distribution<std::size_t> pick(0, pending.size() - 1);
    auto it = std::next(pending.begin(), static_cast<long>(pick(rng)));
    Diagram d = it->first;
    mpz_class c = it->second;
    pending.add(d, -c);
    std::map<int, std::vector<int>> tails;
    for (const auto& ch : d.chords) tails[ch.b].push_back(ch.a);
    std::vector<int> heads;
    for (const auto& [h, ts] : tails)
      if (ts.size() >= 2) heads.push_back(h);
    if (heads.empty()) {
      out.add(d, c);
      continue;
    }
    if (++steps > 50'000'000) throw NonTermination("randomized Arnold reduction exceeded the rewrite bound");
    int v = heads[std::uniform_int_distribution<std::size_t>(0, heads.size() - 1)(rng)];
    auto& ts = tails[v];
    std::shuffle(ts.begin(), ts.end(), rng);
    int a = std::min(ts[0], ts[1]), b = std::max(ts[0], ts[1]);
    for (const auto& [t, e] : arnold_step(d, v, a, b, parity)) pending.add(t, c * e);
  }
  return out;
}

namespace {

// Sign of sorting a token sequence into positional order, where chords are
// compared by their unordered endpoints. Written independently of the
// canonicalizer so that the oracle does not share its bookkeeping.
int oracle_sort_sign(const Monomial& m, Parity parity) {
  auto key = [](const Token& t) {
    int x = t.x, y = t.y;
    if (t.kind == TokenKind::Chord && x > y) std::swap(x, y);
    return std::array<int, 3>{static_cast<int>(t.kind), x, y};
  };
  int sign = 1;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      if (m[i].odd(parity) && m[j].odd(parity) && key(m[j]) < key(m[i])) sign = -sign;
  return sign;
}

Diagram oriented_key(const Diagram& base, const std::vector<Chord>& oriented) {
  Diagram k = base;
  k.chords = oriented;
  std::sort(k.chords.begin(), k.chords.end(), [](const Chord& x, const Chord& y) {
    auto lo = [](const Chord& c) { return std::pair(std::min(c.a, c.b), std::max(c.a, c.b)); };
    return lo(x) < lo(y);
  });
  return k;
}

}  // namespace

std::size_t span_rank_oracle(const std::vector<Diagram>& diagrams, Parity parity, const Ring& field) {
  if (!field.is_field()) throw FieldRequired("span_rank_oracle needs a field (Q or Fp:<p>)");
  if (diagrams.empty()) return 0;
  std::map<Diagram, int> index;
  std::vector<Diagram> gens;
  for (const auto& d : diagrams) {
    std::size_t c = d.chords.size();
    for (std::uint32_t mask = 0; mask < (1u << c); ++mask) {
      std::vector<Chord> o = d.chords;
      for (std::size_t k = 0; k < c; ++k)
        if (mask >> k & 1u) std::swap(o[k].a, o[k].b);
      Diagram g = oriented_key(d, o);
      if (index.emplace(g, static_cast<int>(gens.size())).second) gens.push_back(g);
    }
  }
  const int flip = sign_d(parity);
  SparseMatrix rel(static_cast<int>(gens.size()), 0);
  auto push = [&](std::map<int, mpz_class> col) {
    SparseVec v;
    for (auto& [r, x] : col)
      if (x != 0) v.emplace_back(r, x);
    if (!v.empty()) rel.append_column(std::move(v));
  };
  // chord flips
  for (std::size_t g = 0; g < gens.size(); ++g) {
    for (std::size_t k = 0; k < gens[g].chords.size(); ++k) {
      std::vector<Chord> o = gens[g].chords;
      std::swap(o[k].a, o[k].b);
      int h = index.at(oriented_key(gens[g], o));
      std::map<int, mpz_class> col;
      col[static_cast<int>(g)] += 1;
      col[h] -= flip;
      push(std::move(col));
    }
  }
  // Arnold instances on every path of length two
  for (const auto& d : diagrams) {
    for (std::size_t e1 = 0; e1 < d.chords.size(); ++e1)
      for (std::size_t e2 = e1 + 1; e2 < d.chords.size(); ++e2) {
        const Chord c1 = d.chords[e1], c2 = d.chords[e2];
        int v = -1;
        if (c1.a == c2.a || c1.a == c2.b) v = c1.a;
        if (c1.b == c2.a || c1.b == c2.b) v = c1.b;
        if (v < 0) continue;
        int x = c1.a == v ? c1.b : c1.a;
        int y = c2.a == v ? c2.b : c2.a;
        Diagram rest = d;
        rest.chords.clear();
        for (std::size_t k = 0; k < d.chords.size(); ++k)
          if (k != e1 && k != e2) rest.chords.push_back(d.chords[k]);
        Monomial base = canonical_monomial(rest);
        std::array<int, 3> tri{x, v, y};
        std::sort(tri.begin(), tri.end());
        do {
          int i = tri[0], j = tri[1], k = tri[2];
          const std::array<std::array<int, 4>, 3> terms{{{i, j, j, k}, {j, k, k, i}, {k, i, i, j}}};
          std::map<int, mpz_class> col;
          bool inside = true;
          for (const auto& t : terms) {
            Monomial m = base;
            m.push_back(Token::chord(t[0], t[1]));
            m.push_back(Token::chord(t[2], t[3]));
            std::vector<Chord> o = rest.chords;
            o.push_back({static_cast<std::uint8_t>(t[0]), static_cast<std::uint8_t>(t[1])});
            o.push_back({static_cast<std::uint8_t>(t[2]), static_cast<std::uint8_t>(t[3])});
            auto it = index.find(oriented_key(rest, o));
            if (it == index.end()) {
              inside = false;
              break;
            }
            col[it->second] += oracle_sort_sign(m, parity);
          }
          if (inside) push(std::move(col));
        } while (std::next_permutation(tri.begin(), tri.end()));
      }
  }
  int r = rank_over(rel, field);
  return gens.size() - static_cast<std::size_t>(r);
}

}  // namespace vw
