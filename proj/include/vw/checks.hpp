#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "vw/complexes.hpp"

namespace vw {

struct CheckResult {
  std::string name;
  bool pass = true;
  long cases = 0;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  double seconds = 0;
  bool pass() const;
};

struct SuiteOptions {
  int i_max = 3;
  std::vector<Parity> parities{Parity::Even, Parity::Odd};
  int order_max = 5;
  int k_max = 5;   // largest index of the named families
  int ab_max = 6;  // bound on a+b for the |= identities
  int random_cases = 500;
  std::uint64_t seed = 0x5eed;
  Caps caps;
  /// Called after each finished check.
  std::function<void(const CheckResult&)> progress;
};

/// d-squared, iso-I, hopf-axioms, quasi-iso, kunneth, chord-split, plus
/// families and arnold.
const std::vector<std::string>& suite_names();
SuiteReport run_suite(const std::string& name, const SuiteOptions& opts);

SuiteReport verify_d_squared(const SuiteOptions& opts);
SuiteReport verify_iso_I(const SuiteOptions& opts);
SuiteReport verify_hopf_axioms(const SuiteOptions& opts);
/// opts.i_max bounds the complexity; maps restricts the named maps checked
/// (empty: all four).
SuiteReport verify_quasi_iso(const SuiteOptions& opts, const std::vector<std::string>& maps = {});
/// Compares H(T) with the Kunneth combination over each ring listed
/// (default Z, F_2, F_3) and checks universal coefficients on T.
SuiteReport verify_kunneth(const SuiteOptions& opts, const std::vector<Ring>& rings = {});
/// Lower-diagonal splitting over Q: odd parity up to opts.order_max, even
/// parity up to opts.order_max - 1, plus the 4T oracle comparison.
SuiteReport verify_chord_split(const SuiteOptions& opts);
/// Differentials of the named families and the |= identities among them.
SuiteReport verify_families(const SuiteOptions& opts);
/// Schedule independence of Arnold reduction, forest closure of Arnold
/// instances, and admissible-basis dimensions against the rank oracle.
SuiteReport verify_arnold(const SuiteOptions& opts);

}  // namespace vw
