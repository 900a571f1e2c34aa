#include "vw/linalg.hpp"

#include <algorithm>
#include <queue>

#include "vw/error.hpp"

namespace vw {

void axpy(SparseVec& y, const mpz_class& a, const SparseVec& x) {
  if (a == 0 || x.empty()) return;
  SparseVec out;
  out.reserve(y.size() + x.size());
  std::size_t i = 0, k = 0;
  while (i < y.size() || k < x.size()) {
    if (k == x.size() || (i < y.size() && y[i].first < x[k].first)) {
      out.push_back(std::move(y[i++]));
    } else if (i == y.size() || x[k].first < y[i].first) {
      out.emplace_back(x[k].first, a * x[k].second);
      ++k;
    } else {
      mpz_class v = y[i].second + a * x[k].second;
      if (v != 0) out.emplace_back(y[i].first, std::move(v));
      ++i;
      ++k;
    }
  }
  y = std::move(out);
}

std::size_t SparseMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto& c : columns) n += c.size();
  return n;
}

SparseMatrix SparseMatrix::transposed() const {
  SparseMatrix t(cols, rows);
  for (int c = 0; c < cols; ++c)
    for (const auto& [r, v] : columns[c]) t.columns[r].emplace_back(c, v);
  return t;
}

void SparseMatrix::append_column(SparseVec col) {
  for (const auto& e : col)
    if (e.first < 0 || e.first >= rows) throw ArgumentError("append_column: row index out of range");
  columns.push_back(std::move(col));
  ++cols;
}

std::vector<std::vector<mpz_class>> SparseMatrix::dense() const {
  std::vector<std::vector<mpz_class>> out(rows, std::vector<mpz_class>(cols, 0));
  for (int c = 0; c < cols; ++c)
    for (const auto& [r, v] : columns[c]) out[r][c] = v;
  return out;
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<mpz_class>>& rws) {
  int r = static_cast<int>(rws.size());
  int c = r ? static_cast<int>(rws[0].size()) : 0;
  SparseMatrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rws[i].size()) != c) throw ArgumentError("from_dense: ragged rows");
    for (int j = 0; j < c; ++j)
      if (rws[i][j] != 0) m.columns[j].emplace_back(i, rws[i][j]);
  }
  return m;
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols != b.rows) throw ArgumentError("multiply: dimension mismatch");
  SparseMatrix out(a.rows, b.cols);
  for (int j = 0; j < b.cols; ++j) {
    std::map<int, mpz_class> acc;
    for (const auto& [k, v] : b.columns[j])
      for (const auto& [r, w] : a.columns[k]) acc[r] += v * w;
    for (auto& [r, v] : acc)
      if (v != 0) out.columns[j].emplace_back(r, std::move(v));
  }
  return out;
}

namespace {

struct IntOps {
  using Value = mpz_class;
  std::size_t max_bits;
  bool is_zero(const Value& v) const { return v == 0; }
  bool is_unit(const Value& v) const { return v == 1 || v == -1; }
  Value inverse(const Value& v) const { return v; }  // units only
  Value from(const mpz_class& v) const { return v; }
  // a - f*b
  Value sub_mul(const Value& a, const Value& f, const Value& b) const {
    Value r = a - f * b;
    if (mpz_sizeinbase(r.get_mpz_t(), 2) > max_bits) throw ResourceLimit("integer elimination: entry size cap exceeded");
    return r;
  }
  Value neg_mul(const Value& f, const Value& b) const { return -(f * b); }
  Value mul(const Value& a, const Value& b) const { return a * b; }
};

struct ModOps {
  using Value = std::uint32_t;
  std::uint64_t p;
  bool is_zero(Value v) const { return v == 0; }
  bool is_unit(Value v) const { return v != 0; }
  Value inverse(Value v) const {
    std::uint64_t r = 1, b = v, e = p - 2;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return static_cast<Value>(r);
  }
  Value from(const mpz_class& v) const {
    mpz_class r = v % static_cast<unsigned long>(p);
    if (r < 0) r += static_cast<unsigned long>(p);
    return static_cast<Value>(r.get_ui());
  }
  Value sub_mul(Value a, Value f, Value b) const {
    std::uint64_t fb = static_cast<std::uint64_t>(f) * b % p;
    return static_cast<Value>((a + p - fb) % p);
  }
  Value neg_mul(Value f, Value b) const { return static_cast<Value>((p - static_cast<std::uint64_t>(f) * b % p) % p); }
  Value mul(Value a, Value b) const { return static_cast<Value>(static_cast<std::uint64_t>(a) * b % p); }
};

// Sparse elimination restricted to unit pivots, Markowitz-style choice of
// the sparsest column first. Over a field every nonzero entry is a unit and
// this computes the rank; over Z it peels off invariant factors equal to 1.
template <class Ops>
class Eliminator {
 public:
  using V = typename Ops::Value;
  using Row = std::vector<std::pair<int, V>>;

  Eliminator(const SparseMatrix& m, Ops ops) : ops_(ops), rows_(m.rows), col_rows_(m.cols), col_count_(m.cols, 0) {
    for (int c = 0; c < m.cols; ++c)
      for (const auto& [r, v] : m.columns[c]) {
        V x = ops_.from(v);
        if (ops_.is_zero(x)) continue;
        rows_[r].emplace_back(c, x);
        col_rows_[c].push_back(r);
        ++col_count_[c];
      }
  }

  void run() {
    using Item = std::pair<int, int>;  // (count, column)
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    for (int c = 0; c < static_cast<int>(col_count_.size()); ++c)
      if (col_count_[c] > 0) heap.emplace(col_count_[c], c);
    heap_ = &heap;
    while (true) {
      std::vector<int> deferred;
      bool progress = false;
      while (!heap.empty()) {
        auto [cnt, c] = heap.top();
        heap.pop();
        if (col_count_[c] == 0) continue;
        if (cnt != col_count_[c]) {
          heap.emplace(col_count_[c], c);
          continue;
        }
        int best = -1;
        std::size_t best_len = 0;
        for (int r : col_rows_[c]) {
          const V* v = find(r, c);
          if (!v || !ops_.is_unit(*v)) continue;
          if (best < 0 || rows_[r].size() < best_len) {
            best = r;
            best_len = rows_[r].size();
          }
        }
        if (best < 0) {
          deferred.push_back(c);
          continue;
        }
        eliminate(best, c);
        progress = true;
      }
      if (!progress || deferred.empty()) break;
      for (int c : deferred)
        if (col_count_[c] > 0) heap.emplace(col_count_[c], c);
    }
    heap_ = nullptr;
  }

  int pivots() const { return pivots_; }

  /// Remaining nonzero rows as (column, value) lists.
  std::vector<Row> remainder() const {
    std::vector<Row> out;
    for (const auto& r : rows_)
      if (!r.empty()) out.push_back(r);
    return out;
  }

 private:
  const V* find(int r, int c) const {
    const auto& row = rows_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& e, int col) { return e.first < col; });
    return (it != row.end() && it->first == c) ? &it->second : nullptr;
  }

  void touch(int c) {
    if (heap_ && col_count_[c] > 0) heap_->emplace(col_count_[c], c);
  }

  void eliminate(int pr, int pc) {
    Row pivot = std::move(rows_[pr]);
    rows_[pr].clear();
    V pv{};
    for (const auto& [c, v] : pivot)
      if (c == pc) pv = v;
    V inv = ops_.inverse(pv);
    for (const auto& [c, v] : pivot) --col_count_[c];

    std::vector<int> targets = std::move(col_rows_[pc]);
    col_rows_[pc].clear();
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    for (int r : targets) {
      if (r == pr) continue;
      const V* e = find(r, pc);
      if (!e) continue;
      V f = ops_.mul(*e, inv);
      Row& row = rows_[r];
      Row out;
      out.reserve(row.size() + pivot.size());
      std::size_t i = 0, k = 0;
      while (i < row.size() || k < pivot.size()) {
        if (k == pivot.size() || (i < row.size() && row[i].first < pivot[k].first)) {
          out.push_back(std::move(row[i++]));
        } else if (i == row.size() || pivot[k].first < row[i].first) {
          int c = pivot[k].first;
          out.emplace_back(c, ops_.neg_mul(f, pivot[k].second));
          ++col_count_[c];
          col_rows_[c].push_back(r);
          touch(c);
          ++k;
        } else {
          int c = row[i].first;
          V v = ops_.sub_mul(row[i].second, f, pivot[k].second);
          if (ops_.is_zero(v)) {
            --col_count_[c];
            touch(c);
          } else {
            out.emplace_back(c, std::move(v));
          }
          ++i;
          ++k;
        }
      }
      row = std::move(out);
    }
    for (const auto& [c, v] : pivot) touch(c);
    ++pivots_;
  }

  Ops ops_;
  std::vector<Row> rows_;
  std::vector<std::vector<int>> col_rows_;
  std::vector<int> col_count_;
  int pivots_ = 0;
  std::priority_queue<std::pair<int, int>, std::vector<std::pair<int, int>>, std::greater<>>* heap_ = nullptr;
};

// Diagonalizes a dense integer matrix by unimodular row and column operations
// and returns the nonzero diagonal.
std::vector<mpz_class> dense_diagonalize(std::vector<std::vector<mpz_class>> a, const LinalgLimits& limits) {
  std::vector<mpz_class> diag;
  const std::size_t R = a.size();
  const std::size_t C = R ? a[0].size() : 0;
  std::size_t t = 0;
  auto check = [&](const mpz_class& v) {
    if (mpz_sizeinbase(v.get_mpz_t(), 2) > limits.max_entry_bits) throw ResourceLimit("dense Smith form: entry size cap exceeded");
  };
  while (t < R && t < C) {
    // smallest nonzero entry of the trailing block as pivot
    std::size_t pr = R, pc = C;
    for (std::size_t i = t; i < R; ++i)
      for (std::size_t j = t; j < C; ++j)
        if (a[i][j] != 0 && (pr == R || abs(a[i][j]) < abs(a[pr][pc]))) {
          pr = i;
          pc = j;
          if (abs(a[pr][pc]) == 1) goto found;
        }
  found:
    if (pr == R) break;
    std::swap(a[t], a[pr]);
    for (std::size_t i = t; i < R; ++i) std::swap(a[i][t], a[i][pc]);
    while (true) {
      bool clean = true;
      for (std::size_t i = t + 1; i < R; ++i) {
        if (a[i][t] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
        for (std::size_t j = t; j < C; ++j) {
          if (a[t][j] != 0) {
            a[i][j] -= q * a[t][j];
            check(a[i][j]);
          }
        }
        if (a[i][t] != 0) {
          clean = false;
          if (abs(a[i][t]) < abs(a[t][t])) std::swap(a[i], a[t]);
        }
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        if (a[t][j] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
        for (std::size_t i = t; i < R; ++i) {
          if (a[i][t] != 0) {
            a[i][j] -= q * a[i][t];
            check(a[i][j]);
          }
        }
        if (a[t][j] != 0) {
          clean = false;
          if (abs(a[t][j]) < abs(a[t][t]))
            for (std::size_t i = t; i < R; ++i) std::swap(a[i][t], a[i][j]);
        }
      }
      if (clean) break;
    }
    diag.push_back(abs(a[t][t]));
    ++t;
  }
  return diag;
}

void normalize_chain(std::vector<mpz_class>& d) {
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      if (d[j] % d[i] == 0) continue;
      mpz_class g = gcd(d[i], d[j]);
      mpz_class l = d[i] / g * d[j];
      d[i] = g;
      d[j] = l;
    }
}

}  // namespace

SNFResult smith_normal_form(const SparseMatrix& m, const LinalgLimits& limits) {
  Eliminator<IntOps> el(m, IntOps{limits.max_entry_bits});
  el.run();
  SNFResult res;
  res.invariant_factors.assign(el.pivots(), 1);
  auto rest = el.remainder();
  if (!rest.empty()) {
    std::vector<int> cols;
    for (const auto& r : rest)
      for (const auto& e : r) cols.push_back(e.first);
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    if (rest.size() * cols.size() > limits.max_dense_entries)
      throw ResourceLimit("Smith form: dense remainder " + std::to_string(rest.size()) + "x" + std::to_string(cols.size()) + " exceeds cap");
    std::vector<std::vector<mpz_class>> dense(rest.size(), std::vector<mpz_class>(cols.size(), 0));
    for (std::size_t i = 0; i < rest.size(); ++i)
      for (const auto& [c, v] : rest[i]) dense[i][std::lower_bound(cols.begin(), cols.end(), c) - cols.begin()] = v;
    auto d = dense_diagonalize(std::move(dense), limits);
    normalize_chain(d);
    for (auto& v : d) res.invariant_factors.push_back(std::move(v));
  }
  res.rank = static_cast<int>(res.invariant_factors.size());
  return res;
}

int rank_mod_p(const SparseMatrix& m, std::uint32_t p) {
  if (!is_prime(p)) throw ArgumentError("rank_mod_p: modulus is not prime");
  Eliminator<ModOps> el(m, ModOps{p});
  el.run();
  return el.pivots();
}

int rank_over(const SparseMatrix& m, const Ring& ring, const LinalgLimits& limits) {
  if (ring.kind == Ring::Kind::PrimeField) return rank_mod_p(m, ring.p);
  return smith_normal_form(m, limits).rank;
}

bool in_integer_image(const SparseMatrix& m, const SparseVec& v, const LinalgLimits& limits) {
  if (v.empty()) return true;
  SparseMatrix ext = m;
  ext.append_column(v);
  auto a = smith_normal_form(m, limits);
  auto b = smith_normal_form(ext, limits);
  return a.invariant_factors == b.invariant_factors;
}

void Lattice::insert(SparseVec v) {
  ordinal_valid_ = false;
  while (!v.empty()) {
    int p = v.front().first;
    auto it = basis_.find(p);
    if (it == basis_.end()) {
      if (v.front().second < 0)
        for (auto& e : v) e.second = -e.second;
      basis_.emplace(p, std::move(v));
      return;
    }
    SparseVec& g = it->second;
    const mpz_class a = g.front().second;
    const mpz_class b = v.front().second;
    if (b % a == 0) {
      axpy(v, -(b / a), g);
      continue;
    }
    mpz_class h, s, t;
    mpz_gcdext(h.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    SparseVec ng;
    axpy(ng, s, g);
    axpy(ng, t, v);
    SparseVec nv;
    axpy(nv, a / h, v);
    axpy(nv, -(b / h), g);
    if (ng.front().second < 0)
      for (auto& e : ng) e.second = -e.second;
    g = std::move(ng);
    v = std::move(nv);
  }
}

std::vector<SparseVec> Lattice::basis() const {
  std::vector<SparseVec> out;
  out.reserve(basis_.size());
  for (const auto& [p, v] : basis_) out.push_back(v);
  return out;
}

std::optional<SparseVec> Lattice::coordinates(SparseVec v) const {
  if (!ordinal_valid_) {
    ordinal_.clear();
    int k = 0;
    for (const auto& e : basis_) ordinal_[e.first] = k++;
    ordinal_valid_ = true;
  }
  SparseVec coords;
  while (!v.empty()) {
    int p = v.front().first;
    auto it = basis_.find(p);
    if (it == basis_.end()) return std::nullopt;
    const SparseVec& g = it->second;
    if (v.front().second % g.front().second != 0) return std::nullopt;
    mpz_class q = v.front().second / g.front().second;
    coords.emplace_back(ordinal_.at(p), q);
    axpy(v, -q, g);
  }
  std::sort(coords.begin(), coords.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return coords;
}

}  // namespace vw
