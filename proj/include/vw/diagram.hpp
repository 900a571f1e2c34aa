#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace vw {

/// Parity of the ambient dimension d. Only d mod 2 ever enters a sign or
/// degree computation.
enum class Parity : std::uint8_t { Even, Odd };

/// (-1)^d
inline int sign_d(Parity p) { return p == Parity::Even ? 1 : -1; }

/// Generators of degree d-1 (chords, bottom and top asterisks) are odd
/// exactly when d is even.
inline bool asterisk_degree_odd(Parity p) { return p == Parity::Even; }

std::string to_string(Parity p);
Parity parse_parity(std::string_view s);

/// The complexes of the engine. Each fixes an admissible diagram set and a
/// differential.
enum class ComplexVariant : std::uint8_t {
  Tss,    // all diagrams, d_h + d_v
  Tss_h,  // all diagrams, d_h only
  Ts,     // no top asterisks
  T,      // no asterisks at all, quotient
  T0,     // T without chords joining neighbour points, subcomplex
  Z,      // only top asterisks, d_h
};

std::string to_string(ComplexVariant v);
ComplexVariant parse_variant(std::string_view s);

/// A chord between points a < b (0-based). Orientation is normalized; the
/// sign of a flip is accounted for when the diagram is canonicalized.
struct Chord {
  std::uint8_t a = 0;
  std::uint8_t b = 0;
  auto operator<=>(const Chord&) const = default;
};

/// A (generalized) diagram: n active points on the line, chords between
/// them, at most one bottom asterisk per point and a count of top asterisks
/// on every half-line. Points are 0-based internally and 1-based in the text
/// form.
struct Diagram {
  std::uint8_t n = 0;
  std::vector<Chord> chords;      // sorted, a < b unless built raw
  std::uint32_t bottom = 0;       // bit p set: point p carries a bottom asterisk
  std::vector<std::uint8_t> top;  // size n

  static constexpr int kMaxPoints = 30;

  Diagram() = default;
  explicit Diagram(int points);

  bool has_bottom(int p) const { return (bottom >> p) & 1u; }
  int bottom_count() const;
  int top_total() const;
  bool has_asterisks() const { return bottom != 0 || top_total() != 0; }

  /// Complexity i and number of geometrically distinct points j.
  int complexity() const { return static_cast<int>(chords.size()) + bottom_count() + top_total(); }
  int distinct_points() const { return n + top_total(); }

  /// Parity of the total degree i(d-1) - j.
  bool degree_odd(Parity p) const;

  /// Sorts chords; does not flip orientation.
  void sort_chords();

  auto operator<=>(const Diagram&) const = default;
  bool operator==(const Diagram&) const = default;
};

/// Text form `n;chords=a-b,...;bottom=i,...;top=k1,...,kn` with 1-based
/// point indices.
std::string serialize(const Diagram& d);
Diagram parse_diagram(std::string_view text);

struct Bigrading {
  int i = 0;  // complexity
  int j = 0;  // geometrically distinct points
  int p = 0;  // spectral sequence p = -i
  // q = i*d - j and the total degree i(d-1) - j, kept symbolic in d.
  int q_d_coefficient = 0;
  int q_constant = 0;
  bool total_degree_odd = false;

  int q(int d) const { return q_d_coefficient * d + q_constant; }
  int total_degree(int d) const { return i * (d - 1) - j; }
};

Bigrading bigrading(const Diagram& d, Parity parity);

struct ValidityReport {
  bool ok = true;
  std::vector<std::string> violations;
  explicit operator bool() const { return ok; }
};

struct ValidateOptions {
  /// Allow active points without chords and asterisks.
  bool generalized = false;
};

ValidityReport validate(const Diagram& d, ComplexVariant variant, ValidateOptions opts = {});

/// True when the chord graph is acyclic and has no multiple edges.
bool chords_form_forest(int n, const std::vector<Chord>& chords);

}  // namespace vw
