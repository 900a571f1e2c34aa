#include "vw/complexes.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <numeric>

#include "vw/error.hpp"

namespace vw {

void Caps::check_time(const std::string& what) const {
  if (deadline && std::chrono::steady_clock::now() > *deadline) throw ResourceLimit("time budget exceeded while " + what);
}

std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::pair<int, int> j_range(ComplexVariant v, int i) {
  if (i <= 0) return {0, 0};
  switch (v) {
    case ComplexVariant::T:
    case ComplexVariant::T0:
    case ComplexVariant::Z:
      return {i + 1, 2 * i};
    default:
      return {1, 2 * i};
  }
}

namespace {

bool allows_tops(ComplexVariant v) {
  return v == ComplexVariant::Tss || v == ComplexVariant::Tss_h || v == ComplexVariant::Z;
}

bool allows_bottoms(ComplexVariant v) {
  return v == ComplexVariant::Tss || v == ComplexVariant::Tss_h || v == ComplexVariant::Ts;
}

struct SliceSink {
  ComplexVariant variant;
  int i, j;
  const Caps& caps;
  std::vector<Diagram> out;

  void push(Diagram d) {
    if (out.size() >= caps.max_slice)
      throw ResourceLimit("slice " + to_string(variant) + " (" + std::to_string(i) + "," + std::to_string(j) +
                          ") exceeds the basis-size cap of " + std::to_string(caps.max_slice));
    out.push_back(std::move(d));
  }
};

// Places bottom and top asterisks on a fixed chord set so that the result
// has bigrading (i, j) and every point is covered.
void distribute(int n, const std::vector<Chord>& chords, SliceSink& sink) {
  const ComplexVariant v = sink.variant;
  const int c = static_cast<int>(chords.size());
  const int K = sink.j - n;
  const int B = sink.i - c - K;
  if (K < 0 || B < 0 || B > n) return;
  if (K > 0 && !allows_tops(v)) return;
  if (B > 0 && !allows_bottoms(v)) return;
  if (v == ComplexVariant::Z && c > 0) return;
  if (v == ComplexVariant::T0)
    for (const auto& ch : chords)
      if (ch.b == ch.a + 1) return;
  std::uint32_t covered = 0;
  for (const auto& ch : chords) covered |= (1u << ch.a) | (1u << ch.b);

  Diagram base(n);
  base.chords = chords;
  std::sort(base.chords.begin(), base.chords.end());

  // bottom subsets of size B
  std::vector<int> pick(B);
  std::function<void(int, int, std::uint32_t)> bottoms = [&](int start, int depth, std::uint32_t mask) {
    if (depth == B) {
      std::uint32_t cov = covered | mask;
      int uncovered = 0;
      for (int p = 0; p < n; ++p)
        if (!(cov >> p & 1u)) ++uncovered;
      const bool all_need = v == ComplexVariant::Z;
      if (all_need ? K < n : K < uncovered) return;
      Diagram d = base;
      d.bottom = mask;
      // compositions of K over n points with the coverage minimum
      std::function<void(int, int)> tops = [&](int p, int left) {
        if (p == n) {
          if (left == 0) sink.push(d);
          return;
        }
        int lo = (all_need || !(cov >> p & 1u)) ? 1 : 0;
        // points after p still need their minimum
        int need_after = 0;
        for (int q = p + 1; q < n; ++q)
          if (all_need || !(cov >> q & 1u)) ++need_after;
        for (int k = lo; k <= left - need_after; ++k) {
          d.top[p] = static_cast<std::uint8_t>(k);
          tops(p + 1, left - k);
        }
        d.top[p] = 0;
      };
      tops(0, K);
      return;
    }
    for (int p = start; p <= n - (B - depth); ++p) bottoms(p + 1, depth + 1, mask | (1u << p));
  };
  bottoms(0, 0, 0);
}

// Forests in which every point heads at most one chord, given by a parent
// function p(v) < v. `slack` bounds the number of points left uncovered.
void admissible_forests(int n, int c, int slack, const std::function<void(const std::vector<Chord>&)>& emit,
                        const Caps& caps) {
  std::vector<Chord> chords;
  std::vector<char> has_parent(n, 0), has_child(n, 0);
  std::function<void(int, int)> rec = [&](int v, int uncovered) {
    int r = c - static_cast<int>(chords.size());
    int remaining = n - v;
    if (r > remaining) return;
    if (uncovered + remaining - 2 * r > slack) return;
    if (v == n) {
      emit(chords);
      return;
    }
    if ((v & 7) == 0) caps.check_time("enumerating forests");
    // v without parent
    if (remaining > r) rec(v + 1, uncovered + 1);
    if (r == 0) return;
    for (int p = 0; p < v; ++p) {
      bool was_uncovered = !has_parent[p] && !has_child[p];
      chords.push_back({static_cast<std::uint8_t>(p), static_cast<std::uint8_t>(v)});
      has_parent[v] = 1;
      char old = has_child[p];
      has_child[p] = 1;
      rec(v + 1, uncovered - (was_uncovered ? 1 : 0));
      has_child[p] = old;
      has_parent[v] = 0;
      chords.pop_back();
    }
  };
  rec(0, 0);
}

void all_forests(int n, int c, const std::function<void(const std::vector<Chord>&)>& emit, const Caps& caps) {
  std::vector<Chord> edges;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) edges.push_back({static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)});
  std::vector<Chord> chosen;
  std::function<void(std::size_t, std::vector<int>)> rec = [&](std::size_t k, std::vector<int> comp) {
    if (static_cast<int>(chosen.size()) == c) {
      emit(chosen);
      return;
    }
    if (edges.size() - k < static_cast<std::size_t>(c) - chosen.size()) return;
    if ((k & 15) == 0) caps.check_time("enumerating forests");
    for (std::size_t e = k; e < edges.size(); ++e) {
      int ra = comp[edges[e].a], rb = comp[edges[e].b];
      if (ra == rb) continue;
      std::vector<int> next = comp;
      for (auto& x : next)
        if (x == rb) x = ra;
      chosen.push_back(edges[e]);
      rec(e + 1, std::move(next));
      chosen.pop_back();
    }
  };
  std::vector<int> comp(n);
  std::iota(comp.begin(), comp.end(), 0);
  rec(0, comp);
}

std::vector<Diagram> sorted_by_serialization(std::vector<Diagram> ds) {
  std::vector<std::pair<std::string, std::size_t>> keys;
  keys.reserve(ds.size());
  for (std::size_t k = 0; k < ds.size(); ++k) keys.emplace_back(serialize(ds[k]), k);
  std::sort(keys.begin(), keys.end());
  std::vector<Diagram> out;
  out.reserve(ds.size());
  for (const auto& [s, k] : keys) out.push_back(std::move(ds[k]));
  return out;
}

template <class Gen>
std::vector<Diagram> enumerate_with(ComplexVariant v, int i, int j, const Caps& caps, Gen&& gen) {
  SliceSink sink{v, i, j, caps, {}};
  if (i < 0 || j < 0) return {};
  if (i == 0) {
    if (j == 0) sink.push(Diagram(0));
    return sink.out;
  }
  for (int n = 1; n <= j && n <= Diagram::kMaxPoints; ++n) {
    const int K = j - n;
    if (K > 0 && !allows_tops(v)) continue;
    for (int c = 0; c <= n - 1; ++c) {
      const int B = i - c - K;
      if (B < 0) break;
      if (B > 0 && !allows_bottoms(v)) continue;
      if (B > n) continue;
      if (v == ComplexVariant::Z && c > 0) break;
      gen(n, c, B + K, [&](const std::vector<Chord>& chords) { distribute(n, chords, sink); });
    }
  }
  return sorted_by_serialization(std::move(sink.out));
}

}  // namespace

std::vector<Diagram> enumerate_admissible(ComplexVariant v, int i, int j, const Caps& caps) {
  return enumerate_with(v, i, j, caps, [&](int n, int c, int slack, const auto& emit) {
    admissible_forests(n, c, slack, emit, caps);
  });
}

std::vector<Diagram> enumerate_forests(ComplexVariant v, int i, int j, const Caps& caps) {
  return enumerate_with(v, i, j, caps, [&](int n, int c, int, const auto& emit) { all_forests(n, c, emit, caps); });
}

LinComb d_h_at(const Diagram& d, int i, Parity parity) {
  LinComb out;
  if (i < 0 || i + 1 >= d.n) return out;
  const bool bi = d.has_bottom(i), bj = d.has_bottom(i + 1);
  const bool short_chord = std::binary_search(d.chords.begin(), d.chords.end(),
                                              Chord{static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(i + 1)});
  if (short_chord ? (bi || bj) : (bi && bj)) return out;
  mpz_class coef = quantum_binomial(d.top[i], d.top[i + 1], sign_d(parity));
  if (coef == 0) return out;
  const int ki = d.top[i];
  auto rp = [i](int p) { return p <= i ? p : p - 1; };
  Monomial t;
  for (const auto& tok : canonical_monomial(d)) {
    switch (tok.kind) {
      case TokenKind::Point:
        if (tok.x != i) t.push_back(Token::point(rp(tok.x)));
        break;
      case TokenKind::HalfLine:
        t.push_back(tok.x == i + 1 ? Token::half_line(i, tok.y + ki) : Token::half_line(rp(tok.x), tok.y));
        break;
      case TokenKind::Top:
        t.push_back(tok.x == i + 1 ? Token::top(i, tok.y + ki) : Token::top(rp(tok.x), tok.y));
        break;
      case TokenKind::Chord:
        if (tok.x == i && tok.y == i + 1) t.push_back(Token::bottom(i));
        else t.push_back(Token::chord(rp(tok.x), rp(tok.y)));
        break;
      case TokenKind::Bottom:
        t.push_back(Token::bottom(rp(tok.x)));
        break;
    }
  }
  // t_i is moved to the front past t_1..t_{i-1}, then removed
  const int sign = (i & 1) ? -1 : 1;
  if (auto s = assemble(d.n - 1, t, parity)) out.add(std::move(s->diagram), coef * (sign * s->sign));
  return out;
}

LinComb d_h(const Diagram& d, Parity parity) {
  LinComb out;
  for (int i = 0; i + 1 < d.n; ++i) out += d_h_at(d, i, parity);
  return out;
}

LinComb d_h(const LinComb& x, Parity parity) {
  LinComb out;
  for (const auto& [d, c] : x)
    for (const auto& [e, k] : d_h(d, parity)) out.add(e, c * k);
  return out;
}

LinComb d_v(const Diagram& d, Parity parity) {
  LinComb out;
  const Monomial m = canonical_monomial(d);
  for (int p = 0; p < d.n; ++p) {
    const int k = d.top[p];
    if (k == 0 || d.has_bottom(p)) continue;
    Monomial t;
    t.reserve(m.size() - 1);
    int odd_before = 0;
    bool found = false;
    for (const auto& tok : m) {
      if (tok.kind == TokenKind::HalfLine && tok.x == p && tok.y == k) {
        found = true;
        continue;
      }
      if (!found && tok.odd(parity)) ++odd_before;
      if (tok.kind == TokenKind::Top && tok.x == p && tok.y == k) t.push_back(Token::bottom(p));
      else t.push_back(tok);
    }
    const int sign = (odd_before & 1) ? -1 : 1;
    if (auto s = assemble(d.n, t, parity)) out.add(std::move(s->diagram), sign * s->sign);
  }
  return out;
}

LinComb d_v(const LinComb& x, Parity parity) {
  LinComb out;
  for (const auto& [d, c] : x)
    for (const auto& [e, k] : d_v(d, parity)) out.add(e, c * k);
  return out;
}

LinComb differential(ComplexVariant v, const LinComb& x, ArnoldReducer& reducer) {
  const Parity parity = reducer.parity();
  LinComb raw = d_h(x, parity);
  if (v == ComplexVariant::Tss) raw += d_v(x, parity);
  if (v == ComplexVariant::T || v == ComplexVariant::T0) {
    LinComb kept;
    for (const auto& [d, c] : raw)
      if (!d.has_asterisks()) kept.add(d, c);
    raw = std::move(kept);
  }
  LinComb out = reducer.reduce(raw);
  if (v == ComplexVariant::Ts || v == ComplexVariant::Z) {
    for (const auto& [d, c] : out) {
      auto rep = validate(d, v);
      if (!rep) throw ClosureViolation("differential of " + to_string(v) + " leaves the complex: " + serialize(d));
    }
  }
  return out;
}

LinComb differential(ComplexVariant v, const LinComb& x, Parity parity) {
  ArnoldReducer r(parity);
  return differential(v, x, r);
}

int SliceBasis::index_of(const Diagram& d) const {
  auto it = index.find(d);
  return it == index.end() ? -1 : it->second;
}

LinComb SliceBasis::element(std::size_t k) const {
  if (!sublattice) return LinComb(diagrams.at(k));
  LinComb out;
  for (const auto& [idx, c] : lattice.at(k)) out.add(diagrams[idx], c);
  return out;
}

std::optional<SparseVec> SliceBasis::coordinates(const LinComb& x) const {
  SparseVec v;
  v.reserve(x.size());
  for (const auto& [d, c] : x) {
    int k = index_of(d);
    if (k < 0) return std::nullopt;
    v.emplace_back(k, c);
  }
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  if (!sublattice) return v;
  return solver->coordinates(std::move(v));
}

std::string SliceBasis::hash() const {
  std::string s = to_string(variant) + "|" + to_string(parity) + "|" + std::to_string(i) + "|" + std::to_string(j) + "\n";
  for (const auto& d : diagrams) s += serialize(d) + "\n";
  if (sublattice) {
    s += "lattice\n";
    for (const auto& g : lattice) {
      for (const auto& [k, c] : g) s += std::to_string(k) + ":" + c.get_str() + " ";
      s += "\n";
    }
  }
  return fnv1a_hex(s);
}

ComplexBuilder::ComplexBuilder(ComplexVariant v, Parity parity, Caps caps)
    : variant_(v), parity_(parity), caps_(caps), reducer_(parity) {}

SliceBasis ComplexBuilder::build_slice(int i, int j) {
  SliceBasis s;
  s.variant = variant_;
  s.parity = parity_;
  s.i = i;
  s.j = j;
  if (variant_ != ComplexVariant::T0) {
    s.diagrams = enumerate_admissible(variant_, i, j, caps_);
    for (std::size_t k = 0; k < s.diagrams.size(); ++k) s.index.emplace(s.diagrams[k], static_cast<int>(k));
    return s;
  }
  if (!ambient_) {
    ambient_ = std::make_unique<ComplexBuilder>(ComplexVariant::T, parity_, caps_);
  }
  const SliceBasis& amb = ambient_->slice(i, j);
  s.diagrams = amb.diagrams;
  s.index = amb.index;
  auto lat = std::make_shared<Lattice>();
  // admissible generators first: they are unit vectors
  std::vector<Diagram> forests = enumerate_forests(ComplexVariant::T0, i, j, caps_);
  std::stable_partition(forests.begin(), forests.end(), [](const Diagram& d) { return is_admissible(d); });
  std::size_t count = 0;
  for (const auto& f : forests) {
    if ((++count & 255) == 0) caps_.check_time("building the T0 lattice");
    LinComb nf = reducer_.reduce(LinComb(f));
    auto v = s.coordinates(nf);
    if (!v) throw ClosureViolation("T0 generator reduces outside the T slice: " + serialize(f));
    lat->insert(std::move(*v));
  }
  s.lattice = lat->basis();
  s.solver = std::move(lat);
  s.sublattice = true;
  return s;
}

const SliceBasis& ComplexBuilder::slice(int i, int j) {
  auto key = std::make_pair(i, j);
  auto it = slices_.find(key);
  if (it != slices_.end()) return *it->second;
  auto s = std::make_unique<SliceBasis>(build_slice(i, j));
  return *slices_.emplace(key, std::move(s)).first->second;
}

const DifferentialMatrix& ComplexBuilder::matrix(int i, int j) {
  auto key = std::make_pair(i, j);
  auto it = matrices_.find(key);
  if (it != matrices_.end()) return *it->second;
  const SliceBasis& src = slice(i, j);
  const SliceBasis& dst = slice(i, j - 1 < 0 ? 0 : j - 1);
  const bool empty_target = j - 1 < 0;
  auto m = std::make_unique<DifferentialMatrix>();
  m->variant = variant_;
  m->parity = parity_;
  m->i = i;
  m->j = j;
  m->source_hash = src.hash();
  m->target_hash = empty_target ? fnv1a_hex("empty") : dst.hash();
  const int rows = empty_target ? 0 : static_cast<int>(dst.dimension());
  m->entries = SparseMatrix(rows, 0);
  for (std::size_t k = 0; k < src.dimension(); ++k) {
    if ((k & 63) == 0) caps_.check_time("building differential matrices");
    LinComb img = differential(variant_, src.element(k), reducer_);
    if (empty_target) {
      if (!img.is_zero()) throw ClosureViolation("nonzero differential into an empty slice");
      m->entries.append_column({});
      continue;
    }
    auto col = dst.coordinates(img);
    if (!col)
      throw ClosureViolation("differential of " + to_string(variant_) + " slice (" + std::to_string(i) + "," +
                             std::to_string(j) + ") element " + std::to_string(k) + " leaves the target span");
    m->entries.append_column(std::move(*col));
  }
  return *matrices_.emplace(key, std::move(m)).first->second;
}

SliceBasis enumerate_slice(ComplexVariant v, Parity parity, int i, int j, const Caps& caps) {
  ComplexBuilder b(v, parity, caps);
  return b.slice(i, j);
}

DifferentialMatrix differential_matrix(ComplexVariant v, Parity parity, int i, int j, const Caps& caps) {
  ComplexBuilder b(v, parity, caps);
  return b.matrix(i, j);
}

}  // namespace vw
