#include "vw/workbench.hpp"

#include <json.hpp>

#include <atomic>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "vw/checks.hpp"
#include "vw/error.hpp"
#include "vw/hopf.hpp"
#include "vw/relations.hpp"

namespace vw {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

// ---------------------------------------------------------------- jobs

Caps JobSpec::caps() const {
  Caps c;
  c.max_slice = max_slice;
  if (time_budget > 0)
    c.deadline = std::chrono::steady_clock::now() +
                 std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(time_budget));
  return c;
}

std::string JobSpec::canonical() const {
  json v = json::array(), p = json::array();
  for (auto x : variants) v.push_back(to_string(x));
  for (auto x : parities) p.push_back(to_string(x));
  json o = {{"version", kEngineVersion}, {"command", command}, {"complex", v},     {"parity", p},
            {"i_min", i_min},            {"i_max", i_max},     {"ring", to_string(ring)}};
  o["j"] = j ? json(*j) : json(nullptr);
  if (command == "verify") {
    o["suites"] = suites;
    o["order_max"] = order_max;
    o["random_cases"] = random_cases;
    o["seed"] = seed;
  }
  return o.dump();
}

fs::path resolve_cache_dir(const JobSpec& spec) {
  if (!spec.cache_dir.empty()) return spec.cache_dir;
  if (const char* env = std::getenv("VW_CACHE_DIR"); env && *env) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return fs::path(xdg) / "vassiliev-workbench";
  if (const char* home = std::getenv("HOME"); home && *home) return fs::path(home) / ".cache" / "vassiliev-workbench";
  return fs::temp_directory_path() / "vassiliev-workbench";
}

// ---------------------------------------------------------------- rows

bool HomologyRow::operator==(const HomologyRow& o) const {
  auto zh = [](const std::optional<ZhatClass>& z) {
    return z ? std::make_pair(int(z->nonzero), int(z->generates)) : std::make_pair(-1, -1);
  };
  return complex == o.complex && parity == o.parity && i == o.i && j == o.j && ring == o.ring && group == o.group &&
         zh(zhat) == zh(o.zhat);
}

namespace {

json big(const mpz_class& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

mpz_class from_big(const json& v) {
  if (v.is_string()) return mpz_class(v.get<std::string>());
  return mpz_class(v.get<long>());
}

json row_json(const HomologyRow& r) {
  json t = json::array();
  for (const auto& f : r.group.torsion) t.push_back(big(f));
  json o = {{"complex", to_string(r.complex)}, {"parity", to_string(r.parity)}, {"i", r.i},        {"j", r.j},
            {"ring", to_string(r.ring)},       {"free_rank", r.group.free_rank},  {"torsion", t}};
  if (r.zhat) {
    o["zhat_nonzero"] = r.zhat->nonzero;
    o["zhat_generates"] = r.zhat->generates;
  }
  return o;
}

HomologyRow row_from(const json& o) {
  HomologyRow r;
  r.complex = parse_variant(o.at("complex").get<std::string>());
  r.parity = parse_parity(o.at("parity").get<std::string>());
  r.i = o.at("i").get<int>();
  r.j = o.at("j").get<int>();
  r.ring = parse_ring(o.at("ring").get<std::string>());
  r.group.free_rank = o.at("free_rank").get<long>();
  for (const auto& f : o.at("torsion")) r.group.torsion.push_back(from_big(f));
  if (o.contains("zhat_nonzero"))
    r.zhat = ZhatClass{o.at("zhat_nonzero").get<bool>(), o.at("zhat_generates").get<bool>()};
  return r;
}

}  // namespace

std::string rows_to_json(const std::vector<HomologyRow>& rows) {
  json a = json::array();
  for (const auto& r : rows) a.push_back(row_json(r));
  return a.dump(1) + "\n";
}

std::string rows_to_csv(const std::vector<HomologyRow>& rows) {
  std::ostringstream os;
  os << "complex,parity,i,j,ring,free_rank,torsion,zhat_nonzero,zhat_generates\n";
  for (const auto& r : rows) {
    os << to_string(r.complex) << ',' << to_string(r.parity) << ',' << r.i << ',' << r.j << ',' << to_string(r.ring)
       << ',' << r.group.free_rank << ',';
    for (std::size_t k = 0; k < r.group.torsion.size(); ++k) os << (k ? " " : "") << r.group.torsion[k].get_str();
    os << ',';
    if (r.zhat) os << (r.zhat->nonzero ? "true" : "false") << ',' << (r.zhat->generates ? "true" : "false");
    else os << ',';
    os << '\n';
  }
  return os.str();
}

std::vector<HomologyRow> rows_from_json(const std::string& text) {
  std::vector<HomologyRow> out;
  try {
    for (const auto& o : json::parse(text)) out.push_back(row_from(o));
  } catch (const json::exception& e) {
    throw ParseError(std::string("homology table: ") + e.what());
  }
  return out;
}

// ---------------------------------------------------------------- cache

std::string ResultCache::key(const std::string& canonical) { return fnv1a_hex(canonical); }

std::optional<std::string> ResultCache::get(const std::string& key) const {
  std::ifstream in(dir_ / (key + ".json"), std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void ResultCache::put(const std::string& key, const std::string& payload) const {
  const fs::path target = dir_ / (key + ".json");
  if (fs::exists(target)) return;
  fs::create_directories(dir_);
  std::ostringstream tmpname;
  tmpname << key << ".tmp." << std::hex << std::random_device{}() << std::this_thread::get_id();
  const fs::path tmp = dir_ / tmpname.str();
  {
    std::ofstream out(tmp, std::ios::binary);
    out << payload;
    if (!out) throw Error("cannot write cache entry " + tmp.string());
  }
  fs::rename(tmp, target);
}

// ---------------------------------------------------------------- homology

namespace {

ZhatClass zhat_over_field(VariantComplex& t, HomologyEngine& h, int i, const Ring& ring) {
  const SliceBasis& s = t.builder().slice(i, i + 1);
  auto e = s.coordinates(arnold_reduce(make_Zhat(i, t.parity()), t.parity()));
  if (!e) throw InvariantFailure("Zhat_" + std::to_string(i) + " is not in the slice");
  const SparseMatrix& d_in = t.boundary(i, i + 2);
  SparseMatrix aug = d_in;
  aug.append_column(*e);
  ZhatClass z;
  z.nonzero = rank_over(aug, ring) > h.rank(i, i + 2, ring);
  z.generates = z.nonzero && h.homology(i, i + 1, ring).free_rank == 1;
  return z;
}

std::string slice_name(ComplexVariant v, Parity p, int i) {
  return to_string(v) + " parity " + to_string(p) + " i=" + std::to_string(i);
}

}  // namespace

std::vector<HomologyRow> homology_rows(VariantComplex& c, HomologyEngine& h, int i, std::optional<int> j,
                                       const Ring& ring) {
  const ComplexVariant v = c.builder().variant();
  auto [lo, hi] = c.support(i);
  if (j) lo = hi = *j;
  std::vector<HomologyRow> rows;
  for (int jj = lo; jj <= hi; ++jj) {
    HomologyRow r;
    r.complex = v;
    r.parity = c.parity();
    r.i = i;
    r.j = jj;
    r.ring = ring;
    r.group = h.homology(i, jj, ring);
    if (v == ComplexVariant::T && i >= 1 && jj == i + 1)
      r.zhat = ring == Ring::integers() ? zhat_class(c, h, i) : zhat_over_field(c, h, i, ring);
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_matrix_dump(const DifferentialMatrix& m, std::ostream& os) {
  os << "# " << to_string(m.variant) << " parity " << to_string(m.parity) << " d: (" << m.i << "," << m.j << ") -> ("
     << m.i << "," << m.j - 1 << ")\n";
  os << "# source " << m.source_hash << " dim " << m.entries.cols << "\n";
  os << "# target " << m.target_hash << " dim " << m.entries.rows << "\n";
  os << "# row col value, nnz " << m.entries.nnz() << "\n";
  for (int c = 0; c < m.entries.cols; ++c)
    for (const auto& [r, x] : m.entries.columns[c]) os << r << ' ' << c << ' ' << x.get_str() << '\n';
}

namespace {

void write_output(const JobSpec& spec, const std::string& text, std::ostream& out) {
  if (spec.out.empty()) {
    out << text;
    return;
  }
  fs::path p(spec.out);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  fs::path tmp = p;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary);
    f << text;
    if (!f) throw Error("cannot write " + spec.out);
  }
  fs::rename(tmp, p);
}

// Runs fn(k) for k in [0, n) on up to `jobs` threads; rethrows the first
// failure in index order.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next++) < n;) {
      try {
        fn(k);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const int t = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
  std::vector<std::thread> pool;
  for (int k = 1; k < t; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

template <class E>
[[noreturn]] void rethrow_named(const E& e, const std::string& where) {
  throw E(where + ": " + e.what());
}

}  // namespace

int cmd_homology(const JobSpec& spec, std::ostream& out, std::ostream& log, RunStats* stats_out) {
  if (spec.i_min < 0 || spec.i_max < spec.i_min) throw ArgumentError("empty complexity range");
  const std::string format = spec.format.empty() ? "json" : spec.format;
  if (format != "json" && format != "csv") throw ArgumentError("unknown format: " + format);

  std::optional<ResultCache> cache;
  if (!spec.no_cache) cache.emplace(resolve_cache_dir(spec));
  if (!spec.dump_matrices.empty()) fs::create_directories(spec.dump_matrices);

  std::vector<std::pair<ComplexVariant, Parity>> units;
  for (auto v : spec.variants)
    for (auto p : spec.parities) units.push_back({v, p});
  std::vector<std::vector<HomologyRow>> results(units.size());
  RunStats stats;
  std::mutex mu;

  parallel_for(units.size(), spec.jobs, [&](std::size_t u) {
    const auto [v, p] = units[u];
    const Caps caps = spec.caps();
    VariantComplex c(v, p, caps);
    HomologyEngine h(c, caps.linalg);
    std::mt19937_64 rng(std::random_device{}());
    std::bernoulli_distribution audit_draw(std::clamp(spec.audit_rate, 0.0, 1.0));
    for (int i = spec.i_min; i <= spec.i_max; ++i) {
      const std::string where = slice_name(v, p, i);
      JobSpec unit = spec;
      unit.command = "homology";
      unit.variants = {v};
      unit.parities = {p};
      unit.i_min = unit.i_max = i;
      const std::string key = ResultCache::key(unit.canonical());
      std::vector<HomologyRow> rows;
      bool hit = false;
      if (cache && spec.dump_matrices.empty()) {
        if (auto payload = cache->get(key)) {
          rows = rows_from_json(json::parse(*payload).at("rows").dump());
          hit = true;
        }
      }
      try {
        if (!hit || (spec.audit && audit_draw(rng))) {
          auto fresh = homology_rows(c, h, i, spec.j, spec.ring);
          if (hit) {
            std::lock_guard lock(mu);
            ++stats.audited;
            if (fresh != rows) throw InvariantFailure("cache entry " + key + " disagrees with a fresh computation");
          }
          rows = std::move(fresh);
        }
        if (!spec.dump_matrices.empty()) {
          auto [lo, hi] = c.support(i);
          for (int j = lo; j <= hi + 1; ++j) {
            const DifferentialMatrix& m = c.builder().matrix(i, j);
            std::ofstream f(fs::path(spec.dump_matrices) / (to_string(v) + "_" + to_string(p) + "_i" +
                                                             std::to_string(i) + "_j" + std::to_string(j) + ".txt"));
            write_matrix_dump(m, f);
          }
        }
      } catch (const ResourceLimit& e) {
        rethrow_named(e, where);
      } catch (const InvariantFailure& e) {
        rethrow_named(InvariantFailure(e.what()), where);
      }
      if (!hit && cache) {
        json payload = {{"key", key}, {"job", json::parse(unit.canonical())}, {"rows", json::parse(rows_to_json(rows))}};
        cache->put(key, payload.dump(1) + "\n");
      }
      std::lock_guard lock(mu);
      ++(hit ? stats.hits : stats.misses);
      results[u].insert(results[u].end(), rows.begin(), rows.end());
    }
  });

  std::vector<HomologyRow> all;
  for (auto& r : results) all.insert(all.end(), r.begin(), r.end());
  write_output(spec, format == "json" ? rows_to_json(all) : rows_to_csv(all), out);
  if (cache)
    log << "cache " << cache->dir().string() << ": " << stats.hits << " hits, " << stats.misses << " computed, "
        << stats.audited << " audited\n";
  if (stats_out) *stats_out = stats;
  return kExitOk;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const JobSpec& spec, std::ostream& out, std::ostream& log) {
  std::vector<std::string> suites = spec.suites;
  if (suites.empty() || (suites.size() == 1 && suites[0] == "all")) suites = suite_names();
  for (const auto& s : suites)
    if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
      throw ArgumentError("unknown suite: " + s);
  const std::string format = spec.format.empty() ? "text" : spec.format;
  if (format != "text" && format != "json") throw ArgumentError("verify writes text or json");

  SuiteOptions opts;
  opts.i_max = spec.i_max;
  opts.parities = spec.parities;
  opts.order_max = spec.order_max;
  opts.random_cases = spec.random_cases;
  opts.seed = spec.seed;
  opts.caps = spec.caps();
  opts.caps.max_slice = spec.max_slice;
  opts.progress = [&](const CheckResult& r) { log << (r.pass ? "  ok   " : "  FAIL ") << r.name << "\n"; };

  std::vector<SuiteReport> reports(suites.size());
  parallel_for(suites.size(), spec.jobs, [&](std::size_t k) {
    SuiteOptions o = opts;
    if (spec.jobs > 1) o.progress = nullptr;
    reports[k] = run_suite(suites[k], o);
  });

  bool pass = true;
  std::ostringstream os;
  json doc = json::array();
  for (const auto& r : reports) {
    pass = pass && r.pass();
    if (format == "text") {
      os << (r.pass() ? "PASS " : "FAIL ") << r.suite << " (i<=" << spec.i_max << ", " << std::fixed
         << std::setprecision(2) << r.seconds << "s)\n";
      for (const auto& c : r.checks)
        os << "  " << (c.pass ? "ok   " : "FAIL ") << c.name << " [" << c.cases << "] " << c.detail << "\n";
    } else {
      json checks = json::array();
      for (const auto& c : r.checks)
        checks.push_back({{"name", c.name}, {"pass", c.pass}, {"cases", c.cases}, {"detail", c.detail}});
      doc.push_back({{"suite", r.suite}, {"pass", r.pass()}, {"i_max", spec.i_max}, {"checks", checks}});
    }
  }
  write_output(spec, format == "text" ? os.str() : doc.dump(1) + "\n", out);
  return pass ? kExitOk : kExitInvariant;
}

// ---------------------------------------------------------------- basis

int cmd_basis(const JobSpec& spec, std::ostream& out, std::ostream&) {
  if (spec.variants.size() != 1 || spec.parities.size() != 1) throw ArgumentError("basis takes one complex and one parity");
  if (!spec.j) throw ArgumentError("basis needs --j");
  const std::string format = spec.format.empty() ? "text" : spec.format;
  if (format != "text" && format != "json") throw ArgumentError("basis writes text or json");
  const ComplexVariant v = spec.variants[0];
  const Parity p = spec.parities[0];
  const int i = spec.i_max, j = *spec.j;
  ComplexBuilder b(v, p, spec.caps());
  const SliceBasis* s = nullptr;
  try {
    s = &b.slice(i, j);
  } catch (const ResourceLimit& e) {
    rethrow_named(e, slice_name(v, p, i) + " j=" + std::to_string(j));
  }
  std::vector<std::string> lines;
  for (std::size_t k = 0; k < s->dimension(); ++k)
    lines.push_back(s->sublattice ? to_string(s->element(k)) : serialize(s->diagrams[k]));
  std::ostringstream os;
  if (format == "text") {
    os << "# " << to_string(v) << " parity " << to_string(p) << " (i,j)=(" << i << "," << j << ") dim "
       << s->dimension() << " hash " << s->hash() << "\n";
    for (const auto& l : lines) os << l << "\n";
  } else {
    json o = {{"complex", to_string(v)}, {"parity", to_string(p)}, {"i", i},          {"j", j},
              {"dim", s->dimension()},   {"hash", s->hash()},      {"basis", lines}};
    os << o.dump(1) << "\n";
  }
  write_output(spec, os.str(), out);
  return kExitOk;
}

int run_guarded(const std::function<int()>& body, std::ostream& log) {
  try {
    return body();
  } catch (const ResourceLimit& e) {
    log << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const InvariantFailure& e) {
    log << "invariant failure: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const ArgumentError& e) {
    log << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    log << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    log << "invariant failure: " << e.what() << "\n";
    return kExitInvariant;
  }
}

}  // namespace vw
