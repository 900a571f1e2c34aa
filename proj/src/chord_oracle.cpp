#include "vw/chord_oracle.hpp"

#include <map>

#include "vw/error.hpp"
#include "vw/linalg.hpp"

namespace vw {

namespace {

using Word = std::vector<int>;

Word relabel(const Word& w) {
  std::map<int, int> to;
  Word out;
  out.reserve(w.size());
  for (int c : w) {
    auto it = to.find(c);
    if (it == to.end()) it = to.emplace(c, static_cast<int>(to.size())).first;
    out.push_back(it->second);
  }
  return out;
}

void matchings(Word& w, int next, std::vector<Word>& out) {
  int first = -1;
  for (std::size_t k = 0; k < w.size(); ++k)
    if (w[k] < 0) {
      first = static_cast<int>(k);
      break;
    }
  if (first < 0) {
    out.push_back(w);
    return;
  }
  w[first] = next;
  for (std::size_t k = first + 1; k < w.size(); ++k) {
    if (w[k] >= 0) continue;
    w[k] = next;
    matchings(w, next + 1, out);
    w[k] = -1;
  }
  w[first] = -1;
}

bool has_isolated_chord(const Word& w) {
  const int n = static_cast<int>(w.size());
  std::vector<int> lo(n / 2, -1), hi(n / 2, -1);
  for (int k = 0; k < n; ++k) (lo[w[k]] < 0 ? lo[w[k]] : hi[w[k]]) = k;
  for (int c = 0; c < n / 2; ++c) {
    bool crossed = false;
    for (int e = 0; e < n / 2 && !crossed; ++e)
      if (e != c && ((lo[e] > lo[c] && lo[e] < hi[c]) != (hi[e] > lo[c] && hi[e] < hi[c]))) crossed = true;
    if (!crossed) return true;
  }
  return false;
}

int partner(const Word& w, int p) {
  for (int k = 0; k < static_cast<int>(w.size()); ++k)
    if (k != p && w[k] == w[p]) return k;
  return -1;
}

// Moves the endpoint at position `from` so that it sits immediately left
// (side = 0) or right (side = 1) of position `anchor`.
Word move_endpoint(const Word& w, int from, int anchor, int side) {
  Word rest;
  int anchor_after = -1;
  for (int k = 0; k < static_cast<int>(w.size()); ++k) {
    if (k == from) continue;
    if (k == anchor) anchor_after = static_cast<int>(rest.size());
    rest.push_back(w[k]);
  }
  rest.insert(rest.begin() + anchor_after + side, w[from]);
  return relabel(rest);
}

}  // namespace

std::vector<std::vector<int>> chord_diagrams(int order) {
  std::vector<Word> out;
  Word w(2 * order, -1);
  matchings(w, 0, out);
  return out;
}

std::vector<std::size_t> chord_space_dims(int order_max, ChordRelations rel, const Ring& field, int order_cap) {
  if (!field.is_field()) throw FieldRequired("chord_space_dims needs a field");
  if (order_max > order_cap) throw ResourceLimit("order " + std::to_string(order_max) + " exceeds the cap " + std::to_string(order_cap));
  std::vector<std::size_t> dims;
  for (int order = 0; order <= order_max; ++order) {
    std::vector<Word> ds = chord_diagrams(order);
    std::map<Word, int> index;
    for (std::size_t k = 0; k < ds.size(); ++k) index.emplace(ds[k], static_cast<int>(k));
    SparseMatrix rels(static_cast<int>(ds.size()), 0);
    auto add_relation = [&](std::map<int, mpz_class> acc) {
      SparseVec col;
      for (auto& [r, v] : acc)
        if (v != 0) col.emplace_back(r, v);
      if (!col.empty()) rels.append_column(std::move(col));
    };
    for (const auto& d : ds) {
      if (rel == ChordRelations::FourTOneT && has_isolated_chord(d)) add_relation({{index.at(d), 1}});
      for (int p = 0; p + 1 < 2 * order; ++p) {
        if (d[p] == d[p + 1]) continue;
        // c1 ends at p, c2 at p+1; c2's endpoint travels to the other end of c1
        const int q1 = partner(d, p);
        Word swapped = d;
        std::swap(swapped[p], swapped[p + 1]);
        std::map<int, mpz_class> acc;
        acc[index.at(d)] += 1;
        acc[index.at(relabel(swapped))] -= 1;
        acc[index.at(move_endpoint(d, p + 1, q1, 1))] += 1;
        acc[index.at(move_endpoint(d, p + 1, q1, 0))] -= 1;
        add_relation(std::move(acc));
      }
    }
    dims.push_back(ds.size() - static_cast<std::size_t>(rank_over(rels, field)));
  }
  return dims;
}

}  // namespace vw
