#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "vw/complexes.hpp"
#include "vw/ring.hpp"

namespace vw {

/// Z^free (+) Z/t_1 (+) ... ; over a field only free_rank (the dimension) is used.
struct HomologyGroup {
  long free_rank = 0;
  std::vector<mpz_class> torsion;  // invariant factors > 1

  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  bool operator==(const HomologyGroup&) const = default;
};

std::string to_string(const HomologyGroup& g);

/// Rewrites a list of cyclic orders (0 for Z) as invariant factors.
HomologyGroup normalize_group(long free_rank, const std::vector<mpz_class>& cyclic_orders);

/// A bigraded complex of free abelian groups whose differential lowers j.
class GradedComplex {
 public:
  virtual ~GradedComplex() = default;
  virtual std::string name() const = 0;
  virtual Parity parity() const = 0;
  virtual std::size_t dimension(int i, int j) = 0;
  /// Matrix of (i, j) -> (i, j-1).
  virtual const SparseMatrix& boundary(int i, int j) = 0;
  /// Range of j outside of which every slice at complexity i vanishes.
  virtual std::pair<int, int> support(int i) const = 0;
};

class VariantComplex : public GradedComplex {
 public:
  VariantComplex(ComplexVariant v, Parity parity, Caps caps = {});
  std::string name() const override { return to_string(builder_.variant()); }
  Parity parity() const override { return builder_.parity(); }
  std::size_t dimension(int i, int j) override;
  const SparseMatrix& boundary(int i, int j) override;
  std::pair<int, int> support(int i) const override { return j_range(builder_.variant(), i); }
  ComplexBuilder& builder() { return builder_; }

 private:
  ComplexBuilder builder_;
};

/// Z (x) T0 with d(z (x) t) = dz (x) t + (-1)^{|z|} z (x) dt.
class TensorComplex : public GradedComplex {
 public:
  struct Block {
    int i1, j1, i2, j2;
    std::size_t offset, left_dim, right_dim;
  };

  TensorComplex(Parity parity, Caps caps = {});
  std::string name() const override { return "Z(x)T0"; }
  Parity parity() const override { return parity_; }
  std::size_t dimension(int i, int j) override;
  const SparseMatrix& boundary(int i, int j) override;
  std::pair<int, int> support(int i) const override;
  const std::vector<Block>& blocks(int i, int j);
  ComplexBuilder& left() { return z_; }
  ComplexBuilder& right() { return t0_; }

 private:
  Parity parity_;
  ComplexBuilder z_;
  ComplexBuilder t0_;
  std::map<std::pair<int, int>, std::vector<Block>> blocks_;
  std::map<std::pair<int, int>, std::unique_ptr<SparseMatrix>> matrices_;
};

/// Homology at (i, j) over the ring, with cached Smith forms and ranks.
class HomologyEngine {
 public:
  explicit HomologyEngine(GradedComplex& c, LinalgLimits limits = {}) : c_(c), limits_(limits) {}
  HomologyGroup homology(int i, int j, const Ring& ring);
  /// Homology of the transposed complex (the differential raises j).
  HomologyGroup dual_homology(int i, int j, const Ring& ring);
  const SNFResult& snf(int i, int j);
  int rank(int i, int j, const Ring& ring);
  GradedComplex& complex() { return c_; }

 private:
  GradedComplex& c_;
  LinalgLimits limits_;
  std::map<std::pair<int, int>, SNFResult> snf_;
  std::map<std::tuple<int, int, int>, int> rank_;
};

HomologyGroup homology_group(ComplexVariant v, Parity parity, int i, int j, const Ring& ring, const Caps& caps = {});
HomologyGroup dual_homology_group(ComplexVariant v, Parity parity, int i, int j, const Ring& ring,
                                  const Caps& caps = {});

/// Class of Zhat_i in H_{(i, i+1)}(T; Z).
struct ZhatClass {
  bool nonzero = false;
  bool generates = false;
};
ZhatClass zhat_class(VariantComplex& t, HomologyEngine& h, int i);

/// Matrices (i, j) -> (i, j) of a map between graded complexes.
struct ChainMap {
  std::string name;
  GradedComplex* source = nullptr;
  GradedComplex* target = nullptr;
  std::function<SparseMatrix(int, int)> matrix;
};

enum class NamedMap { Projection, Inclusion, IsoI, IsoIHat };
std::string to_string(NamedMap m);
NamedMap parse_named_map(const std::string& s);

/// Owns the complexes a named map runs between.
struct NamedChainMap {
  std::unique_ptr<GradedComplex> source;
  std::unique_ptr<GradedComplex> target;
  ChainMap map;
};
NamedChainMap make_named_map(NamedMap m, Parity parity, const Caps& caps = {});

/// Throws NotAChainMap unless d' F = F d on (i, j).
void check_chain_map(ChainMap& f, int i, int j);

struct InducedMapReport {
  int i = 0;
  std::map<int, HomologyGroup> source;  // by j
  std::map<int, HomologyGroup> target;
  std::map<int, HomologyGroup> cone;
  bool isomorphism = false;
};

/// Checks the chain map at every j of complexity i and decides whether it
/// is a quasi-isomorphism over Z through the homology of its mapping cone.
InducedMapReport induced_map_on_homology(ChainMap& f, int i);

/// Kunneth combination of H(Z) and H(T0) at (i, j).
HomologyGroup kunneth_combination(HomologyEngine& z, HomologyEngine& t0, int i, int j, const Ring& ring);

struct KunnethRow {
  int i = 0, j = 0;
  HomologyGroup direct;
  HomologyGroup combined;
  bool match = false;
};
std::vector<KunnethRow> kunneth_compare(Parity parity, int i_max, const Ring& ring, const Caps& caps = {});

}  // namespace vw
