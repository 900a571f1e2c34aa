#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "vw/error.hpp"
#include "vw/workbench.hpp"

using namespace vw;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  fs::path d = fs::temp_directory_path() / ("vw-test-" + name + "-" + std::to_string(::getpid()));
  fs::remove_all(d);
  return d;
}

JobSpec homology_spec(const std::string& complex, const std::string& parity, int i_max) {
  JobSpec s;
  s.command = "homology";
  s.variants = {parse_variant(complex)};
  s.parities = parity == "both" ? std::vector<Parity>{Parity::Even, Parity::Odd} : std::vector{parse_parity(parity)};
  s.i_max = i_max;
  s.no_cache = true;
  return s;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);)
    if (!l.empty()) out.push_back(l);
  return out;
}

// Admissible T diagrams at (i, j) from all chord subsets, without the slice enumerator.
std::size_t brute_force_T(int i, int j) {
  std::vector<Chord> pairs;
  for (int a = 0; a < j; ++a)
    for (int b = a + 1; b < j; ++b) pairs.push_back({static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)});
  std::size_t count = 0;
  for (unsigned mask = 0; mask < (1u << pairs.size()); ++mask) {
    if (__builtin_popcount(mask) != i) continue;
    Diagram d(j);
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if (mask >> k & 1u) d.chords.push_back(pairs[k]);
    if (validate(d, ComplexVariant::T) && is_admissible(d)) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("homology table: upper-diagonal entries and Zhat flag") {
  std::ostringstream out, log;
  JobSpec s = homology_spec("T", "odd", 4);
  s.format = "csv";
  CHECK(cmd_homology(s, out, log) == kExitOk);
  auto ls = lines(out.str());
  CHECK(ls[0] == "complex,parity,i,j,ring,free_rank,torsion,zhat_nonzero,zhat_generates");
  CHECK(std::find(ls.begin(), ls.end(), "T,odd,4,5,Z,0,2,true,true") != ls.end());
  CHECK(std::find(ls.begin(), ls.end(), "T,odd,3,4,Z,0,,false,true") != ls.end());
}

TEST_CASE("homology table: T0 upper diagonal vanishes, Z has one generator") {
  std::ostringstream out, log;
  JobSpec s = homology_spec("T0", "both", 5);
  CHECK(cmd_homology(s, out, log) == kExitOk);
  for (const auto& r : rows_from_json(out.str()))
    if (r.j == r.i + 1 && r.i >= 2) CHECK(r.group.is_zero());

  std::ostringstream zout;
  CHECK(cmd_homology(homology_spec("Z", "even", 1), zout, log) == kExitOk);
  auto rows = rows_from_json(zout.str());
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].j == 2);
  CHECK(rows[0].group == HomologyGroup{1, {}});
}

TEST_CASE("JSON schema and round trip") {
  HomologyRow r;
  r.complex = ComplexVariant::T;
  r.parity = Parity::Odd;
  r.i = 4;
  r.j = 5;
  r.group.torsion = {2};
  std::string text = rows_to_json({r});
  CHECK(text.find("\"complex\": \"T\"") != std::string::npos);
  CHECK(text.find("\"free_rank\": 0") != std::string::npos);
  CHECK(text.find("\"complex\"") < text.find("\"torsion\""));
  CHECK(rows_from_json(text) == std::vector<HomologyRow>{r});
  r.group.torsion = {mpz_class("123456789012345678901234567890")};
  r.zhat = ZhatClass{true, false};
  CHECK(rows_from_json(rows_to_json({r})) == std::vector<HomologyRow>{r});
  CHECK_THROWS_AS(rows_from_json("{"), ParseError);
}

TEST_CASE("cache: hits, determinism, and audits") {
  fs::path dir = fresh_dir("cache");
  JobSpec s = homology_spec("T", "both", 3);
  s.no_cache = false;
  s.cache_dir = dir.string();
  std::ostringstream a, b, log;
  RunStats st;
  cmd_homology(s, a, log, &st);
  CHECK(st.misses == 6);
  CHECK(st.hits == 0);
  s.audit = true;
  s.audit_rate = 1.0;
  cmd_homology(s, b, log, &st);
  CHECK(st.hits == 6);
  CHECK(st.audited == 6);
  CHECK(a.str() == b.str());

  // a tampered entry is caught by the audit
  for (const auto& e : fs::directory_iterator(dir)) {
    std::ifstream in(e.path());
    std::stringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    auto pos = text.find("\"free_rank\": 1");
    if (pos == std::string::npos) continue;
    text.replace(pos, 14, "\"free_rank\": 7");
    in.close();
    std::ofstream(e.path()) << text;
    break;
  }
  std::ostringstream c;
  CHECK(run_guarded([&] { return cmd_homology(s, c, log); }, log) == kExitInvariant);
  fs::remove_all(dir);
}

TEST_CASE("cache entries are immutable and keyed by the job") {
  fs::path dir = fresh_dir("immutable");
  ResultCache cache(dir);
  std::string k = ResultCache::key("job-a");
  CHECK(k != ResultCache::key("job-b"));
  CHECK(k.size() == 16);
  CHECK(!cache.get(k));
  cache.put(k, "first");
  cache.put(k, "second");
  CHECK(cache.get(k) == std::optional<std::string>("first"));
  for (const auto& e : fs::directory_iterator(dir)) CHECK(e.path().extension() == ".json");
  fs::remove_all(dir);

  JobSpec s1 = homology_spec("T", "odd", 3), s2 = s1;
  s2.jobs = 4;
  s2.out = "elsewhere.json";
  CHECK(s1.canonical() == s2.canonical());
  s2.ring = Ring::prime_field(2);
  CHECK(s1.canonical() != s2.canonical());
}

TEST_CASE("cache directory resolution") {
  JobSpec s;
  s.cache_dir = "/tmp/explicit";
  CHECK(resolve_cache_dir(s) == fs::path("/tmp/explicit"));
  s.cache_dir.clear();
  ::setenv("VW_CACHE_DIR", "/tmp/from-env", 1);
  CHECK(resolve_cache_dir(s) == fs::path("/tmp/from-env"));
  ::unsetenv("VW_CACHE_DIR");
}

TEST_CASE("parallel runs give identical tables") {
  JobSpec s = homology_spec("T", "both", 4);
  s.variants = {ComplexVariant::T, ComplexVariant::Ts, ComplexVariant::T0};
  std::ostringstream a, b, log;
  cmd_homology(s, a, log);
  s.jobs = 3;
  cmd_homology(s, b, log);
  CHECK(a.str() == b.str());
}

TEST_CASE("basis listings") {
  auto basis = [](const std::string& v, const std::string& p, int i, int j) {
    JobSpec s;
    s.command = "basis";
    s.variants = {parse_variant(v)};
    s.parities = {parse_parity(p)};
    s.i_max = i;
    s.j = j;
    std::ostringstream out, log;
    CHECK(cmd_basis(s, out, log) == kExitOk);
    auto ls = lines(out.str());
    CHECK(ls.at(0).rfind("# ", 0) == 0);
    return std::vector<std::string>(ls.begin() + 1, ls.end());
  };
  auto t12 = basis("T", "odd", 1, 2);
  REQUIRE(t12.size() == 1);
  CHECK(t12[0] == "2;chords=1-2;bottom=;top=0,0");
  auto z34 = basis("Z", "even", 3, 4);
  REQUIRE(z34.size() == 1);
  CHECK(z34[0] == "1;chords=;bottom=;top=3");
  for (auto [i, j] : {std::pair{2, 3}, {2, 4}, {3, 5}, {3, 6}, {4, 6}})
    CHECK(basis("T", "odd", i, j).size() == brute_force_T(i, j));
}

TEST_CASE("verify reports and exit codes") {
  JobSpec s;
  s.command = "verify";
  s.suites = {"families"};
  s.parities = {Parity::Even, Parity::Odd};
  std::ostringstream out, log;
  CHECK(cmd_verify(s, out, log) == kExitOk);
  CHECK(out.str().rfind("PASS families", 0) == 0);
  s.suites = {"no-such-suite"};
  CHECK(run_guarded([&] { return cmd_verify(s, out, log); }, log) == kExitUsage);

  JobSpec slow = homology_spec("T", "odd", 8);
  slow.time_budget = 0.05;
  std::ostringstream err;
  CHECK(run_guarded([&] { return cmd_homology(slow, out, err); }, err) == kExitResource);
  CHECK(err.str().find("T parity odd i=") != std::string::npos);
}

TEST_CASE("matrix dump header names both bases") {
  ComplexBuilder b(ComplexVariant::T, Parity::Odd);
  const DifferentialMatrix& m = b.matrix(2, 4);
  std::ostringstream os;
  write_matrix_dump(m, os);
  auto ls = lines(os.str());
  CHECK(ls[1] == "# source " + m.source_hash + " dim " + std::to_string(m.entries.cols));
  CHECK(ls[2] == "# target " + m.target_hash + " dim " + std::to_string(m.entries.rows));
  CHECK(ls.size() == 4 + m.entries.nnz());
  CHECK(m.source_hash == b.slice(2, 4).hash());
}
