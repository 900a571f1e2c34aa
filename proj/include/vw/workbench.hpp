#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vw/complexes.hpp"
#include "vw/homology.hpp"
#include "vw/ring.hpp"

namespace vw {

/// Bumping this invalidates every cache entry.
inline constexpr const char* kEngineVersion = "vw-engine/1";

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitResource = 2, kExitInvariant = 3 };

/// Everything that determines one CLI computation.
struct JobSpec {
  std::string command;  // homology | verify | basis
  std::vector<ComplexVariant> variants{ComplexVariant::T};
  std::vector<Parity> parities{Parity::Odd};
  int i_min = 1;
  int i_max = 3;
  std::optional<int> j;
  Ring ring;
  std::size_t max_slice = Caps{}.max_slice;
  double time_budget = 0;  // seconds, 0 for none
  std::string format;  // empty: the command default (json for homology, text otherwise)
  std::string out;  // empty: standard output

  // verify
  std::vector<std::string> suites;
  int order_max = 5;
  int random_cases = 500;
  std::uint64_t seed = 0x5eed;

  // execution only; never part of a cache key
  std::string cache_dir;
  bool no_cache = false;
  int jobs = 1;
  std::string dump_matrices;  // directory, empty for none
  bool audit = false;
  double audit_rate = 0.05;

  Caps caps() const;
  /// Canonical text of the result-determining fields.
  std::string canonical() const;
};

/// Cache directory: --cache-dir, else VW_CACHE_DIR, else the user cache dir.
std::filesystem::path resolve_cache_dir(const JobSpec& spec);

struct HomologyRow {
  ComplexVariant complex = ComplexVariant::T;
  Parity parity = Parity::Odd;
  int i = 0;
  int j = 0;
  Ring ring;
  HomologyGroup group;
  /// Present on (i, i+1) entries of T.
  std::optional<ZhatClass> zhat;

  bool operator==(const HomologyRow& o) const;
};

std::string rows_to_json(const std::vector<HomologyRow>& rows);
std::string rows_to_csv(const std::vector<HomologyRow>& rows);
std::vector<HomologyRow> rows_from_json(const std::string& text);

/// Content-addressed store of immutable entries, written atomically.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}
  static std::string key(const std::string& canonical);
  std::optional<std::string> get(const std::string& key) const;
  /// Leaves an existing entry untouched.
  void put(const std::string& key, const std::string& payload) const;
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
};

/// Homology rows of one complexity: every j of the support, or only *j.
std::vector<HomologyRow> homology_rows(VariantComplex& c, HomologyEngine& h, int i, std::optional<int> j,
                                       const Ring& ring);

/// Writes the matrix with a header naming both basis hashes.
void write_matrix_dump(const DifferentialMatrix& m, std::ostream& os);

struct RunStats {
  long hits = 0;
  long misses = 0;
  long audited = 0;
};

int cmd_homology(const JobSpec& spec, std::ostream& out, std::ostream& log, RunStats* stats = nullptr);
int cmd_verify(const JobSpec& spec, std::ostream& out, std::ostream& log);
int cmd_basis(const JobSpec& spec, std::ostream& out, std::ostream& log);

/// Runs a command, mapping ResourceLimit to 2 and invariant failures to 3.
int run_guarded(const std::function<int()>& body, std::ostream& log);

}  // namespace vw
