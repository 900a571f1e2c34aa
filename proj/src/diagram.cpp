#include "vw/diagram.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <numeric>
#include <sstream>

#include "vw/error.hpp"

namespace vw {

std::string to_string(Parity p) { return p == Parity::Odd ? "odd" : "even"; }

Parity parse_parity(std::string_view s) {
  if (s == "odd") return Parity::Odd;
  if (s == "even") return Parity::Even;
  throw ParseError("unknown parity '" + std::string(s) + "'");
}

std::string to_string(ComplexVariant v) {
  switch (v) {
    case ComplexVariant::Tss: return "Tss";
    case ComplexVariant::Tss_h: return "Tss_h";
    case ComplexVariant::Ts: return "Ts";
    case ComplexVariant::T: return "T";
    case ComplexVariant::T0: return "T0";
    case ComplexVariant::Z: return "Z";
  }
  return "?";
}

ComplexVariant parse_variant(std::string_view s) {
  if (s == "Tss") return ComplexVariant::Tss;
  if (s == "Tss_h") return ComplexVariant::Tss_h;
  if (s == "Ts") return ComplexVariant::Ts;
  if (s == "T") return ComplexVariant::T;
  if (s == "T0") return ComplexVariant::T0;
  if (s == "Z") return ComplexVariant::Z;
  throw ParseError("unknown complex '" + std::string(s) + "'");
}

Diagram::Diagram(int points) {
  if (points < 0 || points > kMaxPoints) throw InvalidDiagram("point count out of range");
  n = static_cast<std::uint8_t>(points);
  top.assign(n, 0);
}

int Diagram::bottom_count() const { return std::popcount(bottom); }

int Diagram::top_total() const { return std::accumulate(top.begin(), top.end(), 0); }

bool Diagram::degree_odd(Parity p) const {
  // i(d-1) - j mod 2
  int i = complexity(), j = distinct_points();
  int dm1 = p == Parity::Odd ? 0 : 1;
  return ((i * dm1 + j) & 1) != 0;
}

void Diagram::sort_chords() { std::sort(chords.begin(), chords.end()); }

namespace {

void append_list(std::string& out, const std::vector<int>& xs) {
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(xs[k]);
  }
}

int parse_int(std::string_view s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw ParseError("bad integer '" + std::string(s) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  if (s.empty()) return out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

std::string serialize(const Diagram& d) {
  std::string out = std::to_string(d.n) + ";chords=";
  for (std::size_t k = 0; k < d.chords.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(d.chords[k].a + 1) + "-" + std::to_string(d.chords[k].b + 1);
  }
  out += ";bottom=";
  std::vector<int> b;
  for (int p = 0; p < d.n; ++p)
    if (d.has_bottom(p)) b.push_back(p + 1);
  append_list(out, b);
  out += ";top=";
  append_list(out, std::vector<int>(d.top.begin(), d.top.end()));
  return out;
}

Diagram parse_diagram(std::string_view text) {
  auto parts = split(text, ';');
  if (parts.size() != 4) throw ParseError("expected 4 ';'-separated fields in '" + std::string(text) + "'");
  int n = parse_int(parts[0]);
  if (n < 0 || n > Diagram::kMaxPoints) throw ParseError("point count out of range");
  Diagram d(n);
  auto field = [&](std::string_view part, std::string_view name) {
    if (part.substr(0, name.size()) != name) throw ParseError("expected field '" + std::string(name) + "'");
    return part.substr(name.size());
  };
  auto idx = [&](std::string_view s) {
    int v = parse_int(s);
    if (v < 1 || v > n) throw ParseError("point index out of range in '" + std::string(text) + "'");
    return v - 1;
  };
  for (auto c : split(field(parts[1], "chords="), ',')) {
    auto ab = split(c, '-');
    if (ab.size() != 2) throw ParseError("bad chord '" + std::string(c) + "'");
    int a = idx(ab[0]), b = idx(ab[1]);
    if (a == b) throw ParseError("loop chord");
    if (a > b) std::swap(a, b);
    d.chords.push_back({static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)});
  }
  d.sort_chords();
  for (auto s : split(field(parts[2], "bottom="), ',')) d.bottom |= 1u << idx(s);
  auto tops = split(field(parts[3], "top="), ',');
  if (static_cast<int>(tops.size()) != n) throw ParseError("top list must have n entries");
  for (int p = 0; p < n; ++p) {
    int k = parse_int(tops[p]);
    if (k < 0 || k > 255) throw ParseError("top count out of range");
    d.top[p] = static_cast<std::uint8_t>(k);
  }
  return d;
}

Bigrading bigrading(const Diagram& d, Parity parity) {
  Bigrading g;
  g.i = d.complexity();
  g.j = d.distinct_points();
  g.p = -g.i;
  g.q_d_coefficient = g.i;
  g.q_constant = -g.j;
  g.total_degree_odd = d.degree_odd(parity);
  return g;
}

bool chords_form_forest(int n, const std::vector<Chord>& chords) {
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& c : chords) {
    int ra = find(c.a), rb = find(c.b);
    if (ra == rb) return false;
    parent[ra] = rb;
  }
  return true;
}

ValidityReport validate(const Diagram& d, ComplexVariant variant, ValidateOptions opts) {
  ValidityReport r;
  auto fail = [&](std::string msg) {
    r.ok = false;
    r.violations.push_back(std::move(msg));
  };
  if (static_cast<int>(d.top.size()) != d.n) fail("top list length differs from point count");
  if (d.n < 32 && (d.bottom >> d.n) != 0) fail("bottom asterisk on a nonexistent point");

  std::vector<int> degree(d.n, 0);
  bool chords_ok = true;
  for (const auto& c : d.chords) {
    if (c.a >= d.n || c.b >= d.n || c.a == c.b) {
      fail("chord endpoint out of range");
      chords_ok = false;
      continue;
    }
    if (c.a > c.b) fail("chord not in normalized orientation");
    ++degree[c.a];
    ++degree[c.b];
  }
  if (!chords_ok) return r;
  std::vector<Chord> norm;
  for (auto c : d.chords) norm.push_back(c.a < c.b ? c : Chord{c.b, c.a});
  std::sort(norm.begin(), norm.end());
  if (std::adjacent_find(norm.begin(), norm.end()) != norm.end()) fail("multiple edge");
  else if (!chords_form_forest(d.n, norm)) fail("cycle found");

  if (!opts.generalized && static_cast<int>(d.top.size()) == d.n) {
    for (int p = 0; p < d.n; ++p)
      if (degree[p] == 0 && !d.has_bottom(p) && d.top[p] == 0)
        fail("isolated point " + std::to_string(p + 1));
  }

  switch (variant) {
    case ComplexVariant::Tss:
    case ComplexVariant::Tss_h:
      break;
    case ComplexVariant::Ts:
      if (d.top_total() != 0) fail("variant Ts forbids top asterisks");
      break;
    case ComplexVariant::T:
    case ComplexVariant::T0:
      if (d.has_asterisks()) fail("variant " + to_string(variant) + " forbids asterisks");
      if (variant == ComplexVariant::T0)
        for (const auto& c : norm)
          if (c.b == c.a + 1) fail("neighbor chord " + std::to_string(c.a + 1) + "-" + std::to_string(c.b + 1));
      break;
    case ComplexVariant::Z:
      if (!d.chords.empty()) fail("variant Z forbids chords");
      if (d.bottom != 0) fail("variant Z forbids bottom asterisks");
      for (int p = 0; p < d.n && p < static_cast<int>(d.top.size()); ++p)
        if (d.top[p] == 0 && !opts.generalized) fail("variant Z needs a top asterisk on every point");
      break;
  }
  return r;
}

}  // namespace vw
