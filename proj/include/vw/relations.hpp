#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <unordered_map>
#include <vector>

#include "vw/lincomb.hpp"
#include "vw/ring.hpp"

namespace vw {

struct DiagramHash {
  std::size_t operator()(const Diagram& d) const noexcept;
};

/// Signed shuffle count: C(k+n, k) for q = +1; for q = -1 zero when k and n
/// are both odd, else C(floor((k+n)/2), floor(k/2)).
mpz_class quantum_binomial(int k, int n, int q);

/// Every point heads at most one chord (chords in normalized orientation).
bool is_admissible(const Diagram& d);

/// One Arnold rewrite at a point v heading chords (a,v), (b,v), a < b.
/// Returns the two signed terms (either may be absent when degenerate).
LinComb arnold_step(const Diagram& d, int v, int a, int b, Parity parity);

/// Reduction onto the admissible basis, memoized per instance. Not
/// thread-safe; use one instance per thread.
class ArnoldReducer {
 public:
  explicit ArnoldReducer(Parity parity, std::size_t max_rewrites = 50'000'000)
      : parity_(parity), max_rewrites_(max_rewrites) {}

  const LinComb& normal_form(const Diagram& d);
  LinComb reduce(const LinComb& x);
  Parity parity() const { return parity_; }
  std::size_t cache_size() const { return cache_.size(); }

 private:
  Parity parity_;
  std::size_t max_rewrites_;
  std::size_t rewrites_ = 0;
  std::unordered_map<Diagram, LinComb, DiagramHash> cache_;
};

LinComb arnold_reduce(const LinComb& x, Parity parity);

/// Reduction with rewrite sites picked at random, no memoization. Used to
/// check that normal forms do not depend on the rewrite schedule.
LinComb arnold_reduce_random(const LinComb& x, Parity parity, std::mt19937_64& rng);

/// Dimension of the span of `diagrams` (all chord orientations) modulo chord
/// flips and every Arnold instance that stays inside the span, by direct row
/// reduction over a field.
std::size_t span_rank_oracle(const std::vector<Diagram>& diagrams, Parity parity, const Ring& field);

}  // namespace vw
