#include "vw/hopf.hpp"

#include <functional>
#include <mutex>
#include <tuple>

#include "vw/complexes.hpp"
#include "vw/error.hpp"

namespace vw {

namespace {

using Positions = std::vector<std::vector<int>>;

// Order-preserving placements of blocks into 0..N-1. With `divided` the
// first point of block r must precede the first point of block r+1.
void interleavings(const std::vector<int>& sizes, bool divided, const std::function<void(const Positions&)>& emit) {
  const int r = static_cast<int>(sizes.size());
  int total = 0;
  for (int s : sizes) total += s;
  Positions pos(r);
  for (int b = 0; b < r; ++b) pos[b].reserve(sizes[b]);
  std::function<void(int)> rec = [&](int p) {
    if (p == total) {
      emit(pos);
      return;
    }
    for (int b = 0; b < r; ++b) {
      int placed = static_cast<int>(pos[b].size());
      if (placed == sizes[b]) continue;
      if (divided && placed == 0 && b > 0 && pos[b - 1].empty()) continue;
      pos[b].push_back(p);
      rec(p + 1);
      pos[b].pop_back();
    }
  };
  rec(0);
}

Token relabel(const Token& t, const std::vector<int>& to) {
  switch (t.kind) {
    case TokenKind::Point: return Token::point(to[t.x]);
    case TokenKind::HalfLine: return Token::half_line(to[t.x], t.y);
    case TokenKind::Chord: return Token::chord(to[t.x], to[t.y]);
    case TokenKind::Bottom: return Token::bottom(to[t.x]);
    case TokenKind::Top: return Token::top(to[t.x], t.y);
  }
  return t;
}

// Calls f on every choice of one term from each factor with the product of
// the coefficients.
void for_each_term_tuple(const std::vector<LinComb>& factors,
                         const std::function<void(const std::vector<const Diagram*>&, const mpz_class&)>& f) {
  std::vector<const Diagram*> pick(factors.size());
  std::function<void(std::size_t, const mpz_class&)> rec = [&](std::size_t k, const mpz_class& c) {
    if (k == factors.size()) {
      f(pick, c);
      return;
    }
    for (const auto& [d, e] : factors[k]) {
      pick[k] = &d;
      rec(k + 1, c * e);
    }
  };
  rec(0, 1);
}

LinComb interleaved_product(const std::vector<LinComb>& factors, bool divided, Parity parity) {
  LinComb out;
  for_each_term_tuple(factors, [&](const std::vector<const Diagram*>& ds, const mpz_class& c) {
    std::vector<int> sizes;
    std::vector<Monomial> ms;
    int total = 0;
    for (const Diagram* d : ds) {
      if (divided && d->n == 0) throw ArgumentError("divided product of the unit diagram");
      sizes.push_back(d->n);
      ms.push_back(canonical_monomial(*d));
      total += d->n;
    }
    interleavings(sizes, divided, [&](const Positions& pos) {
      Monomial t;
      for (std::size_t b = 0; b < ms.size(); ++b)
        for (const auto& tok : ms[b]) t.push_back(relabel(tok, pos[b]));
      if (auto s = assemble(total, t, parity)) out.add(std::move(s->diagram), c * s->sign);
    });
  });
  return out;
}

LinComb full_d(const LinComb& x, Parity parity) { return d_h(x, parity) + d_v(x, parity); }

LinComb from_monomial(const Diagram& shape, const Monomial& m, Parity parity) {
  return LinComb(canonicalize(shape, m, parity));
}

}  // namespace

LinComb make_Z(int k, Parity parity) {
  if (k < 0) throw ArgumentError("negative index");
  Diagram d(1);
  d.top = {static_cast<std::uint8_t>(k)};
  Monomial m = {Token::point(0)};
  for (int r = 1; r <= k; ++r) {
    m.push_back(Token::top(0, r));
    m.push_back(Token::half_line(0, r));
  }
  return from_monomial(d, m, parity);
}

LinComb make_Zhat(int k, Parity parity) {
  if (k < 0) throw ArgumentError("negative index");
  Diagram d(k + 1);
  Monomial m = {Token::point(0)};
  for (int r = 1; r <= k; ++r) {
    d.chords.push_back({0, static_cast<std::uint8_t>(r)});
    m.push_back(Token::chord(0, r));
    m.push_back(Token::point(r));
  }
  return from_monomial(d, m, parity);
}

LinComb make_star() {
  Diagram d(1);
  d.bottom = 1;
  return LinComb(d);
}

LinComb make_bare_point() { return LinComb(Diagram(1)); }

LinComb unit() { return LinComb(Diagram(0)); }

bool total_degree_odd(const LinComb& x, Parity parity) {
  bool seen = false, odd = false;
  for (const auto& [d, c] : x) {
    bool o = d.degree_odd(parity);
    if (seen && o != odd) throw NonHomogeneous("sum mixes even and odd degrees");
    seen = true;
    odd = o;
  }
  return odd;
}

LinComb shuffle_product(const LinComb& a, const LinComb& b, Parity parity) {
  return interleaved_product({a, b}, false, parity);
}

LinComb divided_product(const std::vector<LinComb>& factors, Parity parity) {
  if (factors.empty()) return unit();
  return interleaved_product(factors, true, parity);
}

LinComb vdash(const LinComb& a, const LinComb& b, Parity parity) {
  const bool a_odd = total_degree_odd(a, parity);
  total_degree_odd(b, parity);
  LinComb r = full_d(divided_product({a, b}, parity), parity);
  r -= divided_product({full_d(a, parity), b}, parity);
  LinComb last = divided_product({a, full_d(b, parity)}, parity);
  if (a_odd) r += last;
  else r -= last;
  if (!a_odd) r *= -1;
  return arnold_reduce(r, parity);
}

LinComb divided_power(const LinComb& x, int ell, Parity parity, const Ring& ring) {
  if (ell < 0) throw ArgumentError("negative divided power");
  if (total_degree_odd(x, parity) && ring.characteristic() != 2)
    throw OddDegree("divided powers need an even-degree element outside characteristic 2");
  if (ell == 0) return unit();
  return divided_product(std::vector<LinComb>(ell, x), parity);
}

LinComb bracket_over(const std::vector<LinComb>& factors, const Diagram& d, Parity parity) {
  const int ell = static_cast<int>(factors.size());
  if (d.n != ell) throw ArityMismatch("diagram has " + std::to_string(d.n) + " points for " + std::to_string(ell) + " factors");
  if (d.top_total() != 0) throw TopAsterisksOnD("the receiving diagram carries top asterisks");
  Monomial rest;
  for (const auto& tok : canonical_monomial(d))
    if (tok.kind != TokenKind::Point) rest.push_back(tok);
  if (ell == 0) return unit();
  LinComb out;
  for_each_term_tuple(factors, [&](const std::vector<const Diagram*>& ds, const mpz_class& c) {
    std::vector<int> sizes;
    std::vector<Monomial> ms;
    int total = 0;
    for (const Diagram* a : ds) {
      if (a->n == 0) throw ArgumentError("bracket over the unit diagram");
      sizes.push_back(a->n);
      ms.push_back(canonical_monomial(*a));
      total += a->n;
    }
    interleavings(sizes, true, [&](const Positions& pos) {
      Monomial t;
      for (std::size_t b = 0; b < ms.size(); ++b)
        for (const auto& tok : ms[b]) t.push_back(relabel(tok, pos[b]));
      std::vector<int> first(ell);
      for (int r = 0; r < ell; ++r) first[r] = pos[r][0];
      for (const auto& tok : rest) t.push_back(relabel(tok, first));
      if (auto s = assemble(total, t, parity)) out.add(std::move(s->diagram), c * s->sign);
    });
  });
  return out;
}

void add_term(TensorComb& t, const Diagram& l, const Diagram& r, const mpz_class& c) {
  if (c == 0) return;
  auto key = std::make_pair(l, r);
  auto it = t.find(key);
  if (it == t.end()) {
    t.emplace(std::move(key), c);
    return;
  }
  it->second += c;
  if (it->second == 0) t.erase(it);
}

std::vector<TensorPair> coproduct(const Diagram& d, Parity parity) {
  std::vector<TensorPair> out;
  const Monomial m = canonical_monomial(d);
  std::vector<bool> odd;
  for (const auto& tok : m) odd.push_back(tok.odd(parity));
  for (int c = 0; c <= d.n; ++c) {
    bool crossed = false;
    for (const auto& ch : d.chords)
      if (ch.a < c && ch.b >= c) crossed = true;
    if (crossed) continue;
    std::vector<int> perm;
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t k = 0; k < m.size(); ++k)
        if ((m[k].x < c) == (pass == 0)) perm.push_back(static_cast<int>(k));
    TensorPair tp{Diagram(c), Diagram(d.n - c), koszul_sign(perm, odd)};
    for (const auto& ch : d.chords) {
      if (ch.b < c) tp.left.chords.push_back(ch);
      else tp.right.chords.push_back({static_cast<std::uint8_t>(ch.a - c), static_cast<std::uint8_t>(ch.b - c)});
    }
    for (int p = 0; p < d.n; ++p) {
      if (p < c) {
        tp.left.top[p] = d.top[p];
        if (d.has_bottom(p)) tp.left.bottom |= 1u << p;
      } else {
        tp.right.top[p - c] = d.top[p];
        if (d.has_bottom(p)) tp.right.bottom |= 1u << (p - c);
      }
    }
    out.push_back(std::move(tp));
  }
  return out;
}

TensorComb coproduct(const LinComb& x, Parity parity) {
  TensorComb out;
  for (const auto& [d, c] : x)
    for (const auto& tp : coproduct(d, parity)) add_term(out, tp.left, tp.right, c * tp.sign);
  return out;
}

TensorComb tensor_product(const TensorComb& a, const TensorComb& b, Parity parity) {
  TensorComb out;
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b) {
      const bool flip = ka.second.degree_odd(parity) && kb.first.degree_odd(parity);
      LinComb l = shuffle_product(LinComb(ka.first), LinComb(kb.first), parity);
      LinComb r = shuffle_product(LinComb(ka.second), LinComb(kb.second), parity);
      mpz_class c = ca * cb * (flip ? -1 : 1);
      for (const auto& [dl, el] : l)
        for (const auto& [dr, er] : r) add_term(out, dl, dr, c * el * er);
    }
  return out;
}

TensorComb twist(const TensorComb& t, Parity parity) {
  TensorComb out;
  for (const auto& [k, c] : t) {
    const bool flip = k.first.degree_odd(parity) && k.second.degree_odd(parity);
    add_term(out, k.second, k.first, flip ? mpz_class(-c) : c);
  }
  return out;
}

TopDecomposition decompose_tops(const Diagram& d, Parity parity) {
  TopDecomposition dec;
  dec.bottom = d;
  for (int p = 0; p < d.n; ++p) {
    dec.k.push_back(d.top[p]);
    dec.bottom.top[p] = 0;
  }
  std::vector<LinComb> zs;
  for (int k : dec.k) zs.push_back(make_Z(k, parity));
  LinComb b = bracket_over(zs, dec.bottom, parity);
  mpz_class s = b.coefficient(d);
  if (b.size() != 1 || abs(s) != 1) throw InvariantFailure("top decomposition does not reproduce " + serialize(d));
  dec.sign = static_cast<int>(s.get_si());
  return dec;
}

namespace {

const LinComb& cached_iso_Z(int k, Parity parity, bool inverse) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, bool>, LinComb> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(k, static_cast<int>(parity), inverse);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  LinComb sum;
  if (k == 0) {
    sum = make_bare_point();
  } else {
    for (int i = 0; i <= k; ++i) {
      LinComb term = vdash(make_Z(k - i, parity), make_Zhat(i, parity), parity);
      if (inverse) {
        int e = i + (parity == Parity::Odd ? (i * (i - 1) / 2) : 0);
        if (e & 1) term *= -1;
      }
      sum += term;
    }
  }
  return cache.emplace(key, std::move(sum)).first->second;
}

LinComb apply_on_tops(const LinComb& x, Parity parity, bool inverse) {
  LinComb out;
  for (const auto& [d, c] : x) {
    if (d.top_total() == 0) {
      out.add(d, c);
      continue;
    }
    TopDecomposition dec = decompose_tops(d, parity);
    std::vector<LinComb> fs;
    for (int k : dec.k) fs.push_back(cached_iso_Z(k, parity, inverse));
    out += mpz_class(c * dec.sign) * bracket_over(fs, dec.bottom, parity);
  }
  return arnold_reduce(out, parity);
}

}  // namespace

LinComb iso_I_Z(int k, Parity parity) { return cached_iso_Z(k, parity, false); }
LinComb iso_I_inv_Z(int k, Parity parity) { return cached_iso_Z(k, parity, true); }

LinComb iso_I(const LinComb& x, Parity parity) { return apply_on_tops(x, parity, false); }
LinComb iso_I_inv(const LinComb& x, Parity parity) { return apply_on_tops(x, parity, true); }

LinComb iso_I_hat(const LinComb& z, const LinComb& t, Parity parity) {
  for (const auto& [d, c] : z)
    if (d.n != 0 && !validate(d, ComplexVariant::Z))
      throw VariantMismatch("left factor is not a Z diagram: " + serialize(d));
  for (const auto& [d, c] : t)
    if (d.n != 0 && !validate(d, ComplexVariant::T))
      throw VariantMismatch("right factor is not a T diagram: " + serialize(d));
  LinComb hats;
  for (const auto& [d, c] : z) {
    if (d.n == 0) {
      hats.add(d, c);
      continue;
    }
    std::vector<LinComb> zs, zh;
    for (int p = 0; p < d.n; ++p) {
      zs.push_back(make_Z(d.top[p], parity));
      zh.push_back(make_Zhat(d.top[p], parity));
    }
    mpz_class s = divided_product(zs, parity).coefficient(d);
    if (abs(s) != 1) throw InvariantFailure("Z diagram is not a divided product of Z_k: " + serialize(d));
    hats += mpz_class(c * s) * divided_product(zh, parity);
  }
  LinComb prod = shuffle_product(hats, t, parity);
  LinComb kept;
  for (const auto& [d, c] : prod)
    if (!d.has_asterisks()) kept.add(d, c);
  return arnold_reduce(kept, parity);
}

}  // namespace vw
