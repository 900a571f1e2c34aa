#include "vw/homology.hpp"

#include <algorithm>

#include "vw/error.hpp"
#include "vw/hopf.hpp"

namespace vw {

std::string to_string(const HomologyGroup& g) {
  std::string s;
  if (g.free_rank > 0) s = g.free_rank == 1 ? "Z" : "Z^" + std::to_string(g.free_rank);
  for (const auto& t : g.torsion) {
    if (!s.empty()) s += " + ";
    s += "Z/" + t.get_str();
  }
  return s.empty() ? "0" : s;
}

HomologyGroup normalize_group(long free_rank, const std::vector<mpz_class>& cyclic_orders) {
  HomologyGroup g;
  g.free_rank = free_rank;
  std::vector<mpz_class> finite;
  for (const auto& c : cyclic_orders) {
    if (c == 0) ++g.free_rank;
    else if (abs(c) != 1) finite.push_back(abs(c));
  }
  if (finite.empty()) return g;
  SparseMatrix diag(static_cast<int>(finite.size()), 0);
  for (std::size_t k = 0; k < finite.size(); ++k) diag.append_column({{static_cast<int>(k), finite[k]}});
  for (const auto& f : smith_normal_form(diag).invariant_factors)
    if (f != 1) g.torsion.push_back(f);
  return g;
}

VariantComplex::VariantComplex(ComplexVariant v, Parity parity, Caps caps) : builder_(v, parity, caps) {}

std::size_t VariantComplex::dimension(int i, int j) {
  if (j < 0) return 0;
  return builder_.slice(i, j).dimension();
}

const SparseMatrix& VariantComplex::boundary(int i, int j) { return builder_.matrix(i, std::max(j, 0)).entries; }

TensorComplex::TensorComplex(Parity parity, Caps caps)
    : parity_(parity), z_(ComplexVariant::Z, parity, caps), t0_(ComplexVariant::T0, parity, caps) {}

std::pair<int, int> TensorComplex::support(int i) const { return j_range(ComplexVariant::T, i); }

const std::vector<TensorComplex::Block>& TensorComplex::blocks(int i, int j) {
  auto key = std::make_pair(i, j);
  auto it = blocks_.find(key);
  if (it != blocks_.end()) return it->second;
  std::vector<Block> out;
  std::size_t offset = 0;
  for (int i1 = 0; i1 <= i; ++i1) {
    const int i2 = i - i1;
    auto [lo1, hi1] = j_range(ComplexVariant::Z, i1);
    for (int j1 = lo1; j1 <= hi1; ++j1) {
      const int j2 = j - j1;
      auto [lo2, hi2] = j_range(ComplexVariant::T0, i2);
      if (j2 < lo2 || j2 > hi2) continue;
      std::size_t a = z_.slice(i1, j1).dimension();
      std::size_t b = t0_.slice(i2, j2).dimension();
      if (a == 0 || b == 0) continue;
      out.push_back({i1, j1, i2, j2, offset, a, b});
      offset += a * b;
    }
  }
  return blocks_.emplace(key, std::move(out)).first->second;
}

std::size_t TensorComplex::dimension(int i, int j) {
  std::size_t n = 0;
  for (const auto& b : blocks(i, j)) n += b.left_dim * b.right_dim;
  return n;
}

const SparseMatrix& TensorComplex::boundary(int i, int j) {
  auto key = std::make_pair(i, j);
  auto it = matrices_.find(key);
  if (it != matrices_.end()) return *it->second;
  const auto& src = blocks(i, j);
  const auto& dst = blocks(i, j - 1);
  auto find_block = [&](int i1, int j1) -> const Block* {
    for (const auto& b : dst)
      if (b.i1 == i1 && b.j1 == j1) return &b;
    return nullptr;
  };
  auto m = std::make_unique<SparseMatrix>(static_cast<int>(dimension(i, j - 1)), 0);
  for (const auto& b : src) {
    const SparseMatrix& dz = z_.matrix(b.i1, b.j1).entries;
    const SparseMatrix& dt = t0_.matrix(b.i2, b.j2).entries;
    const Block* bz = find_block(b.i1, b.j1 - 1);
    const Block* bt = find_block(b.i1, b.j1);
    const bool z_odd = ((b.i1 * (parity_ == Parity::Even ? 1 : 0)) + b.j1) & 1;
    for (std::size_t a = 0; a < b.left_dim; ++a)
      for (std::size_t c = 0; c < b.right_dim; ++c) {
        SparseVec col;
        if (bz)
          for (const auto& [r, v] : dz.columns[a]) col.emplace_back(static_cast<int>(bz->offset + r * bz->right_dim + c), v);
        if (bt)
          for (const auto& [r, v] : dt.columns[c])
            col.emplace_back(static_cast<int>(bt->offset + a * bt->right_dim + r), z_odd ? mpz_class(-v) : v);
        std::sort(col.begin(), col.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        m->append_column(std::move(col));
      }
  }
  return *matrices_.emplace(key, std::move(m)).first->second;
}

const SNFResult& HomologyEngine::snf(int i, int j) {
  auto key = std::make_pair(i, j);
  auto it = snf_.find(key);
  if (it != snf_.end()) return it->second;
  return snf_.emplace(key, smith_normal_form(c_.boundary(i, j), limits_)).first->second;
}

int HomologyEngine::rank(int i, int j, const Ring& ring) {
  if (ring.kind != Ring::Kind::PrimeField) return snf(i, j).rank;
  auto key = std::make_tuple(i, j, static_cast<int>(ring.p));
  auto it = rank_.find(key);
  if (it != rank_.end()) return it->second;
  return rank_.emplace(key, rank_mod_p(c_.boundary(i, j), ring.p)).first->second;
}

HomologyGroup HomologyEngine::homology(int i, int j, const Ring& ring) {
  HomologyGroup g;
  const long n = static_cast<long>(c_.dimension(i, j));
  if (n == 0) return g;
  g.free_rank = n - rank(i, j, ring) - rank(i, j + 1, ring);
  if (ring.kind == Ring::Kind::Integers)
    for (const auto& f : snf(i, j + 1).invariant_factors)
      if (f != 1) g.torsion.push_back(f);
  return g;
}

HomologyGroup HomologyEngine::dual_homology(int i, int j, const Ring& ring) {
  HomologyGroup g;
  const long n = static_cast<long>(c_.dimension(i, j));
  if (n == 0) return g;
  g.free_rank = n - rank(i, j, ring) - rank(i, j + 1, ring);
  if (ring.kind == Ring::Kind::Integers)
    for (const auto& f : snf(i, j).invariant_factors)
      if (f != 1) g.torsion.push_back(f);
  return g;
}

HomologyGroup homology_group(ComplexVariant v, Parity parity, int i, int j, const Ring& ring, const Caps& caps) {
  VariantComplex c(v, parity, caps);
  HomologyEngine h(c, caps.linalg);
  return h.homology(i, j, ring);
}

HomologyGroup dual_homology_group(ComplexVariant v, Parity parity, int i, int j, const Ring& ring,
                                  const Caps& caps) {
  VariantComplex c(v, parity, caps);
  HomologyEngine h(c, caps.linalg);
  return h.dual_homology(i, j, ring);
}

ZhatClass zhat_class(VariantComplex& t, HomologyEngine& h, int i) {
  ZhatClass out;
  const int j = i + 1;
  const SliceBasis& s = t.builder().slice(i, j);
  auto e = s.coordinates(arnold_reduce(make_Zhat(i, t.parity()), t.parity()));
  if (!e) throw InvariantFailure("Zhat_" + std::to_string(i) + " is not in the slice");
  const SparseMatrix& d_in = t.boundary(i, j + 1);
  out.nonzero = !in_integer_image(d_in, *e);
  SparseMatrix aug = d_in;
  aug.append_column(*e);
  SNFResult r = smith_normal_form(aug);
  const long n = static_cast<long>(s.dimension());
  const bool units = std::all_of(r.invariant_factors.begin(), r.invariant_factors.end(),
                                 [](const mpz_class& f) { return f == 1; });
  out.generates = units && r.rank == n - h.rank(i, j, Ring::integers());
  return out;
}

std::string to_string(NamedMap m) {
  switch (m) {
    case NamedMap::Projection: return "projection";
    case NamedMap::Inclusion: return "inclusion";
    case NamedMap::IsoI: return "iso-I";
    case NamedMap::IsoIHat: return "iso-I-hat";
  }
  return "?";
}

NamedMap parse_named_map(const std::string& s) {
  for (NamedMap m : {NamedMap::Projection, NamedMap::Inclusion, NamedMap::IsoI, NamedMap::IsoIHat})
    if (to_string(m) == s) return m;
  throw ArgumentError("unknown map: " + s);
}

namespace {

SparseVec require_coordinates(const SliceBasis& s, const LinComb& x, const std::string& what) {
  auto v = s.coordinates(x);
  if (!v) throw NotAChainMap(what + " leaves the target slice (" + std::to_string(s.i) + "," + std::to_string(s.j) + ")");
  return *v;
}

}  // namespace

NamedChainMap make_named_map(NamedMap m, Parity parity, const Caps& caps) {
  NamedChainMap out;
  out.map.name = to_string(m);
  switch (m) {
    case NamedMap::Projection: {
      auto src = std::make_unique<VariantComplex>(ComplexVariant::Tss, parity, caps);
      auto dst = std::make_unique<VariantComplex>(ComplexVariant::T, parity, caps);
      VariantComplex *s = src.get(), *t = dst.get();
      out.map.matrix = [s, t](int i, int j) {
        const SliceBasis& a = s->builder().slice(i, j);
        const SliceBasis& b = t->builder().slice(i, j);
        SparseMatrix f(static_cast<int>(b.dimension()), 0);
        for (const auto& d : a.diagrams) {
          SparseVec col;
          if (!d.has_asterisks()) col.emplace_back(b.index_of(d), 1);
          f.append_column(std::move(col));
        }
        return f;
      };
      out.source = std::move(src);
      out.target = std::move(dst);
      break;
    }
    case NamedMap::Inclusion: {
      auto src = std::make_unique<VariantComplex>(ComplexVariant::T0, parity, caps);
      auto dst = std::make_unique<VariantComplex>(ComplexVariant::Ts, parity, caps);
      VariantComplex *s = src.get(), *t = dst.get();
      out.map.matrix = [s, t](int i, int j) {
        const SliceBasis& a = s->builder().slice(i, j);
        const SliceBasis& b = t->builder().slice(i, j);
        SparseMatrix f(static_cast<int>(b.dimension()), 0);
        for (std::size_t k = 0; k < a.dimension(); ++k) f.append_column(require_coordinates(b, a.element(k), "inclusion"));
        return f;
      };
      out.source = std::move(src);
      out.target = std::move(dst);
      break;
    }
    case NamedMap::IsoI: {
      auto src = std::make_unique<VariantComplex>(ComplexVariant::Tss_h, parity, caps);
      auto dst = std::make_unique<VariantComplex>(ComplexVariant::Tss, parity, caps);
      VariantComplex *s = src.get(), *t = dst.get();
      out.map.matrix = [s, t, parity](int i, int j) {
        const SliceBasis& a = s->builder().slice(i, j);
        const SliceBasis& b = t->builder().slice(i, j);
        SparseMatrix f(static_cast<int>(b.dimension()), 0);
        for (const auto& d : a.diagrams) f.append_column(require_coordinates(b, iso_I(LinComb(d), parity), "I"));
        return f;
      };
      out.source = std::move(src);
      out.target = std::move(dst);
      break;
    }
    case NamedMap::IsoIHat: {
      auto src = std::make_unique<TensorComplex>(parity, caps);
      auto dst = std::make_unique<VariantComplex>(ComplexVariant::T, parity, caps);
      TensorComplex* s = src.get();
      VariantComplex* t = dst.get();
      out.map.matrix = [s, t, parity](int i, int j) {
        const SliceBasis& b = t->builder().slice(i, j);
        SparseMatrix f(static_cast<int>(b.dimension()), 0);
        for (const auto& blk : s->blocks(i, j)) {
          const SliceBasis& zs = s->left().slice(blk.i1, blk.j1);
          const SliceBasis& ts = s->right().slice(blk.i2, blk.j2);
          for (std::size_t a = 0; a < blk.left_dim; ++a)
            for (std::size_t c = 0; c < blk.right_dim; ++c)
              f.append_column(require_coordinates(b, iso_I_hat(zs.element(a), ts.element(c), parity), "I-hat"));
        }
        return f;
      };
      out.source = std::move(src);
      out.target = std::move(dst);
      break;
    }
  }
  out.map.source = out.source.get();
  out.map.target = out.target.get();
  return out;
}

void check_chain_map(ChainMap& f, int i, int j) {
  SparseMatrix top = multiply(f.target->boundary(i, j), f.matrix(i, j));
  SparseMatrix bottom = multiply(f.matrix(i, j - 1), f.source->boundary(i, j));
  if (top.columns != bottom.columns)
    throw NotAChainMap(f.name + " does not commute with the differentials at (" + std::to_string(i) + "," +
                       std::to_string(j) + ")");
}

namespace {

// Differential of the mapping cone, Cone_j = C_{j-1} + C'_j.
SparseMatrix cone_boundary(ChainMap& f, std::map<int, SparseMatrix>& fm, int i, int j) {
  auto F = [&](int jj) -> const SparseMatrix& {
    auto it = fm.find(jj);
    if (it == fm.end()) it = fm.emplace(jj, f.matrix(i, jj)).first;
    return it->second;
  };
  const int n_src_jm2 = static_cast<int>(f.source->dimension(i, j - 2));
  const int n_tgt_jm1 = static_cast<int>(f.target->dimension(i, j - 1));
  SparseMatrix d(n_src_jm2 + n_tgt_jm1, 0);
  const int n_src_jm1 = static_cast<int>(f.source->dimension(i, j - 1));
  const int n_tgt_j = static_cast<int>(f.target->dimension(i, j));
  if (n_src_jm1 > 0) {
    const SparseMatrix& a = f.source->boundary(i, j - 1);
    const SparseMatrix& fj = F(j - 1);
    for (int k = 0; k < n_src_jm1; ++k) {
      SparseVec col;
      if (n_src_jm2 > 0)
        for (const auto& [r, v] : a.columns[k]) col.emplace_back(r, -v);
      for (const auto& [r, v] : fj.columns[k]) col.emplace_back(n_src_jm2 + r, v);
      d.append_column(std::move(col));
    }
  }
  if (n_tgt_j > 0) {
    const SparseMatrix& b = f.target->boundary(i, j);
    for (int k = 0; k < n_tgt_j; ++k) {
      SparseVec col;
      if (n_tgt_jm1 > 0)
        for (const auto& [r, v] : b.columns[k]) col.emplace_back(n_src_jm2 + r, v);
      d.append_column(std::move(col));
    }
  }
  return d;
}

}  // namespace

InducedMapReport induced_map_on_homology(ChainMap& f, int i) {
  InducedMapReport rep;
  rep.i = i;
  auto [lo_s, hi_s] = f.source->support(i);
  auto [lo_t, hi_t] = f.target->support(i);
  const int lo = std::min(lo_s, lo_t), hi = std::max(hi_s, hi_t);
  for (int j = lo; j <= hi + 1; ++j) check_chain_map(f, i, j);
  HomologyEngine hs(*f.source), ht(*f.target);
  for (int j = lo; j <= hi; ++j) {
    rep.source[j] = hs.homology(i, j, Ring::integers());
    rep.target[j] = ht.homology(i, j, Ring::integers());
  }
  std::map<int, SparseMatrix> fm;
  std::map<int, SparseMatrix> dm;
  for (int j = lo; j <= hi + 2; ++j) dm[j] = cone_boundary(f, fm, i, j);
  rep.isomorphism = true;
  for (int j = lo; j <= hi + 1; ++j) {
    const long n = static_cast<long>(f.source->dimension(i, j - 1) + f.target->dimension(i, j));
    SNFResult out = smith_normal_form(dm[j]);
    SNFResult in = smith_normal_form(dm[j + 1]);
    HomologyGroup g;
    g.free_rank = n - out.rank - in.rank;
    for (const auto& x : in.invariant_factors)
      if (x != 1) g.torsion.push_back(x);
    if (!g.is_zero()) rep.isomorphism = false;
    rep.cone[j] = g;
  }
  return rep;
}

HomologyGroup kunneth_combination(HomologyEngine& z, HomologyEngine& t0, int i, int j, const Ring& ring) {
  long free = 0;
  std::vector<mpz_class> cyclic;
  const bool integral = ring.kind == Ring::Kind::Integers;
  for (int i1 = 0; i1 <= i; ++i1) {
    const int i2 = i - i1;
    auto [lo1, hi1] = z.complex().support(i1);
    auto [lo2, hi2] = t0.complex().support(i2);
    for (int j1 = lo1; j1 <= hi1; ++j1) {
      // tensor part
      int j2 = j - j1;
      if (j2 >= lo2 && j2 <= hi2) {
        HomologyGroup a = z.homology(i1, j1, ring), b = t0.homology(i2, j2, ring);
        free += a.free_rank * b.free_rank;
        if (integral) {
          for (const auto& t : b.torsion)
            for (long k = 0; k < a.free_rank; ++k) cyclic.push_back(t);
          for (const auto& t : a.torsion)
            for (long k = 0; k < b.free_rank; ++k) cyclic.push_back(t);
          for (const auto& s : a.torsion)
            for (const auto& t : b.torsion) cyclic.push_back(gcd(s, t));
        }
      }
      // Tor part, one degree up
      j2 = j - 1 - j1;
      if (integral && j2 >= lo2 && j2 <= hi2) {
        HomologyGroup a = z.homology(i1, j1, ring), b = t0.homology(i2, j2, ring);
        for (const auto& s : a.torsion)
          for (const auto& t : b.torsion) cyclic.push_back(gcd(s, t));
      }
    }
  }
  return normalize_group(free, cyclic);
}

std::vector<KunnethRow> kunneth_compare(Parity parity, int i_max, const Ring& ring, const Caps& caps) {
  VariantComplex t(ComplexVariant::T, parity, caps), z(ComplexVariant::Z, parity, caps),
      t0(ComplexVariant::T0, parity, caps);
  HomologyEngine ht(t, caps.linalg), hz(z, caps.linalg), h0(t0, caps.linalg);
  std::vector<KunnethRow> rows;
  for (int i = 1; i <= i_max; ++i) {
    auto [lo, hi] = t.support(i);
    for (int j = lo; j <= hi; ++j) {
      KunnethRow r;
      r.i = i;
      r.j = j;
      r.direct = ht.homology(i, j, ring);
      r.combined = kunneth_combination(hz, h0, i, j, ring);
      r.match = r.direct == r.combined;
      rows.push_back(std::move(r));
    }
  }
  return rows;
}

}  // namespace vw
