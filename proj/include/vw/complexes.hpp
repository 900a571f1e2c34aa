#pragma once

#include <chrono>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "vw/linalg.hpp"
#include "vw/relations.hpp"

namespace vw {

struct Caps {
  std::size_t max_slice = 200'000;
  std::optional<std::chrono::steady_clock::time_point> deadline;
  LinalgLimits linalg;

  /// Throws ResourceLimit once the deadline has passed.
  void check_time(const std::string& what) const;
};

/// Ordered basis of one bigraded piece. For T0 the piece is a sublattice of
/// the T slice: `diagrams` is then the ambient T basis and `lattice` holds
/// the generators in ambient coordinates.
struct SliceBasis {
  ComplexVariant variant = ComplexVariant::T;
  Parity parity = Parity::Odd;
  int i = 0;
  int j = 0;
  std::vector<Diagram> diagrams;
  std::vector<SparseVec> lattice;
  std::shared_ptr<const Lattice> solver;
  bool sublattice = false;
  std::unordered_map<Diagram, int, DiagramHash> index;

  std::size_t dimension() const { return sublattice ? lattice.size() : diagrams.size(); }
  int index_of(const Diagram& d) const;
  /// Element k of the basis as a formal sum.
  LinComb element(std::size_t k) const;
  /// Coordinates of a reduced sum in this basis; nothing if outside the span.
  std::optional<SparseVec> coordinates(const LinComb& x) const;
  /// Stable hex digest of the ordered basis.
  std::string hash() const;
};

/// Matrix of the differential from the (i, j) slice to the (i, j-1) slice.
struct DifferentialMatrix {
  ComplexVariant variant = ComplexVariant::T;
  Parity parity = Parity::Odd;
  int i = 0;
  int j = 0;
  std::string source_hash;
  std::string target_hash;
  SparseMatrix entries;  // rows: target, columns: source
};

/// Range of j for which the (i, j) slice of the variant can be nonempty.
std::pair<int, int> j_range(ComplexVariant v, int i);

/// Admissible diagrams of the variant at (i, j), sorted by serialization.
/// For T0 these are the admissible T diagrams without neighbor chords (which
/// do not span the T0 lattice; see SliceBasis).
std::vector<Diagram> enumerate_admissible(ComplexVariant v, int i, int j, const Caps& caps = {});

/// All valid diagrams of the variant at (i, j), chords in normalized
/// orientation, admissible or not; sorted by serialization.
std::vector<Diagram> enumerate_forests(ComplexVariant v, int i, int j, const Caps& caps = {});

/// Horizontal part: gluings of neighbor points.
LinComb d_h(const Diagram& d, Parity parity);
LinComb d_h(const LinComb& x, Parity parity);
/// The single gluing of points i and i+1 (0-based).
LinComb d_h_at(const Diagram& d, int i, Parity parity);
/// Vertical part: the lowest top asterisk of a half-line lands on the line.
LinComb d_v(const Diagram& d, Parity parity);
LinComb d_v(const LinComb& x, Parity parity);

/// The variant's differential followed by Arnold reduction.
LinComb differential(ComplexVariant v, const LinComb& x, Parity parity);
LinComb differential(ComplexVariant v, const LinComb& x, ArnoldReducer& reducer);

/// Caches slices and matrices of one complex.
class ComplexBuilder {
 public:
  ComplexBuilder(ComplexVariant v, Parity parity, Caps caps = {});

  const SliceBasis& slice(int i, int j);
  const DifferentialMatrix& matrix(int i, int j);
  ArnoldReducer& reducer() { return reducer_; }
  ComplexVariant variant() const { return variant_; }
  Parity parity() const { return parity_; }
  const Caps& caps() const { return caps_; }

 private:
  SliceBasis build_slice(int i, int j);
  ComplexVariant variant_;
  Parity parity_;
  Caps caps_;
  ArnoldReducer reducer_;
  std::map<std::pair<int, int>, std::unique_ptr<SliceBasis>> slices_;
  std::map<std::pair<int, int>, std::unique_ptr<DifferentialMatrix>> matrices_;
  std::unique_ptr<ComplexBuilder> ambient_;  // T, for the T0 lattice
};

SliceBasis enumerate_slice(ComplexVariant v, Parity parity, int i, int j, const Caps& caps = {});
DifferentialMatrix differential_matrix(ComplexVariant v, Parity parity, int i, int j, const Caps& caps = {});

/// Stable 64-bit FNV-1a digest as 16 hex digits.
std::string fnv1a_hex(const std::string& s);

}  // namespace vw
