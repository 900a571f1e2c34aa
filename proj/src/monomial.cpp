#include "vw/monomial.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "vw/error.hpp"

namespace vw {

namespace {

// Sort key of a token in canonical order; chords by their unordered pair.
std::uint32_t token_key(const Token& t) {
  std::uint32_t x = t.x, y = t.y;
  if (t.kind == TokenKind::Chord && x > y) std::swap(x, y);
  return (static_cast<std::uint32_t>(t.kind) << 16) | (x << 8) | y;
}

}  // namespace

Monomial canonical_monomial(const Diagram& d) {
  Monomial m;
  m.reserve(d.n + 2 * d.top_total() + d.chords.size() + d.bottom_count());
  for (int p = 0; p < d.n; ++p) m.push_back(Token::point(p));
  for (int p = 0; p < d.n; ++p)
    for (int r = 1; r <= d.top[p]; ++r) m.push_back(Token::half_line(p, r));
  for (const auto& c : d.chords) m.push_back(Token::chord(c.a, c.b));
  for (int p = 0; p < d.n; ++p)
    if (d.has_bottom(p)) m.push_back(Token::bottom(p));
  for (int p = 0; p < d.n; ++p)
    for (int r = 1; r <= d.top[p]; ++r) m.push_back(Token::top(p, r));
  return m;
}

int koszul_sign(const std::vector<int>& perm, const std::vector<bool>& odd) {
  if (perm.size() != odd.size()) throw ArgumentError("koszul_sign: length mismatch");
  int sign = 1;
  for (std::size_t k = 0; k < perm.size(); ++k) {
    if (!odd[perm[k]]) continue;
    for (std::size_t l = k + 1; l < perm.size(); ++l)
      if (odd[perm[l]] && perm[k] > perm[l]) sign = -sign;
  }
  return sign;
}

std::optional<SignedDiagram> assemble(int n, const Monomial& tokens, Parity parity) {
  if (n < 0 || n > Diagram::kMaxPoints) throw TokenMismatch("point count out of range");
  Diagram d(n);
  int sign = 1;
  const int flip = sign_d(parity);

  std::uint32_t seen_points = 0;
  std::vector<std::uint32_t> half(n, 0), tops(n, 0);
  bool zero = false;
  for (const auto& t : tokens) {
    if (t.x >= n) throw TokenMismatch("token refers to point beyond the diagram");
    switch (t.kind) {
      case TokenKind::Point:
        if (seen_points >> t.x & 1u) throw TokenMismatch("repeated point token");
        seen_points |= 1u << t.x;
        break;
      case TokenKind::HalfLine:
      case TokenKind::Top: {
        auto& mask = t.kind == TokenKind::HalfLine ? half[t.x] : tops[t.x];
        if (t.y < 1 || t.y > 31 || (mask >> t.y & 1u)) throw TokenMismatch("bad or repeated top asterisk token");
        mask |= 1u << t.y;
        break;
      }
      case TokenKind::Chord: {
        if (t.y >= n || t.x == t.y) throw TokenMismatch("bad chord token");
        Chord c{t.x, t.y};
        if (c.a > c.b) {
          std::swap(c.a, c.b);
          sign *= flip;
        }
        d.chords.push_back(c);
        break;
      }
      case TokenKind::Bottom:
        if (d.has_bottom(t.x)) zero = true;
        d.bottom |= 1u << t.x;
        break;
    }
  }
  std::uint32_t all = n == 32 ? ~0u : ((1u << n) - 1u);
  if (seen_points != all) throw TokenMismatch("point tokens do not cover the diagram");
  for (int p = 0; p < n; ++p) {
    if (half[p] != tops[p]) throw TokenMismatch("half-line and top tokens disagree");
    int k = std::popcount(half[p]);
    if (half[p] != (((1u << k) - 1u) << 1)) throw TokenMismatch("top asterisk labels are not 1..k");
    d.top[p] = static_cast<std::uint8_t>(k);
  }
  if (zero) return std::nullopt;
  d.sort_chords();
  if (std::adjacent_find(d.chords.begin(), d.chords.end()) != d.chords.end()) return std::nullopt;
  if (!chords_form_forest(n, d.chords)) return std::nullopt;

  // Koszul sign of sorting into canonical order: inversions among odd tokens.
  std::vector<std::uint32_t> odd_keys;
  odd_keys.reserve(tokens.size());
  for (const auto& t : tokens)
    if (t.odd(parity)) odd_keys.push_back(token_key(t));
  std::size_t inversions = 0;
  for (std::size_t k = 0; k < odd_keys.size(); ++k)
    for (std::size_t l = k + 1; l < odd_keys.size(); ++l)
      if (odd_keys[k] > odd_keys[l]) ++inversions;
  if (inversions & 1) sign = -sign;
  return SignedDiagram{std::move(d), sign};
}

SignedDiagram canonicalize(const Diagram& raw, const Monomial& monomial, Parity parity) {
  Diagram norm = raw;
  for (auto& c : norm.chords)
    if (c.a > c.b) std::swap(c.a, c.b);
  norm.sort_chords();
  auto report = validate(norm, ComplexVariant::Tss, {.generalized = true});
  if (!report) throw InvalidDiagram("canonicalize: " + report.violations.front());
  // the monomial must carry exactly the generators of raw
  Monomial expected = canonical_monomial(norm);
  auto sorted_keys = [](const Monomial& m) {
    std::vector<std::uint32_t> k;
    for (const auto& t : m) k.push_back(token_key(t));
    std::sort(k.begin(), k.end());
    return k;
  };
  if (sorted_keys(expected) != sorted_keys(monomial)) throw TokenMismatch("monomial does not match the diagram's generators");
  auto out = assemble(raw.n, monomial, parity);
  if (!out) throw InvalidDiagram("canonicalize: diagram is degenerate");
  return *out;
}

}  // namespace vw
