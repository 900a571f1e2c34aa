// vw: homology tables, verification suites and basis listings for the
// diagram complexes.
#include <CLI11.hpp>

#include <iostream>

#include "vw/checks.hpp"
#include "vw/error.hpp"
#include "vw/workbench.hpp"

namespace {

struct Raw {
  std::vector<std::string> complexes{"T"};
  std::string parity = "odd";
  std::string ring = "Z";
  int i_max = 3;
  int i_min = 1;
  std::optional<int> i;
  std::optional<int> j;
};

void add_range(CLI::App* c, Raw& raw, vw::JobSpec& spec) {
  c->add_option("--complex", raw.complexes, "Tss, Tss_h, Ts, T, T0, Z (repeatable) or all")->delimiter(',');
  c->add_option("--parity", raw.parity, "parity of d")->check(CLI::IsMember({"odd", "even", "both"}));
  c->add_option("--i-max", raw.i_max, "largest complexity")->check(CLI::NonNegativeNumber);
  c->add_option("--i-min", raw.i_min, "smallest complexity")->check(CLI::NonNegativeNumber);
  c->add_option("--i", raw.i, "single complexity")->check(CLI::NonNegativeNumber);
  c->add_option("--j", raw.j, "single number of distinct points");
  c->add_option("--time-budget", spec.time_budget, "seconds before a resource-limit exit, 0 for none");
  c->add_option("--max-slice", spec.max_slice, "largest slice enumerated");
  c->add_option("--out", spec.out, "output file instead of standard output");
  c->add_option("--jobs", spec.jobs, "worker threads")->check(CLI::PositiveNumber);
}

void finish(const Raw& raw, vw::JobSpec& spec) {
  spec.variants.clear();
  for (const auto& c : raw.complexes) {
    if (c == "all") {
      spec.variants = {vw::ComplexVariant::Tss, vw::ComplexVariant::Tss_h, vw::ComplexVariant::Ts,
                       vw::ComplexVariant::T,   vw::ComplexVariant::T0,    vw::ComplexVariant::Z};
      break;
    }
    spec.variants.push_back(vw::parse_variant(c));
  }
  if (raw.parity == "both") spec.parities = {vw::Parity::Even, vw::Parity::Odd};
  else spec.parities = {vw::parse_parity(raw.parity)};
  spec.ring = vw::parse_ring(raw.ring);
  spec.i_min = raw.i_min;
  spec.i_max = raw.i_max;
  if (raw.i) spec.i_min = spec.i_max = *raw.i;
  spec.j = raw.j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact homology of the Vassiliev diagram complexes"};
  app.require_subcommand(1);
  vw::JobSpec spec;
  Raw raw;

  auto* hom = app.add_subcommand("homology", "homology table over Z, Q or F_p");
  add_range(hom, raw, spec);
  hom->add_option("--ring", raw.ring, "Z, Q or Fp:<p>");
  hom->add_option("--format", spec.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  hom->add_option("--cache-dir", spec.cache_dir, "result cache (default: VW_CACHE_DIR or the user cache)");
  hom->add_flag("--no-cache", spec.no_cache, "neither read nor write the cache");
  hom->add_option("--dump-matrices", spec.dump_matrices, "directory for row/col/value matrix dumps");
  hom->add_flag("--audit", spec.audit, "recompute a random share of cache hits and compare");
  hom->add_option("--audit-rate", spec.audit_rate, "share of hits audited")->check(CLI::Range(0.0, 1.0));

  auto* ver = app.add_subcommand("verify", "property suites; nonzero exit on any failure");
  add_range(ver, raw, spec);
  ver->add_option("suite", spec.suites, "suite names or all")->expected(0, -1);
  ver->add_option("--order-max", spec.order_max, "chord order bound for chord-split");
  ver->add_option("--random-cases", spec.random_cases, "randomized cases per identity");
  ver->add_option("--seed", spec.seed, "seed of the randomized cases");
  ver->add_option("--format", spec.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  ver->add_flag("--list", "print the suite names");

  auto* bas = app.add_subcommand("basis", "admissible basis of one slice");
  add_range(bas, raw, spec);
  bas->add_option("--format", spec.format, "text or json")->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : vw::kExitUsage;
  }

  return vw::run_guarded(
      [&] {
        if (ver->parsed() && ver->count("--list")) {
          for (const auto& s : vw::suite_names()) std::cout << s << "\n";
          return int(vw::kExitOk);
        }
        if (bas->parsed() && !raw.i) throw vw::ArgumentError("basis needs --i");
        if (ver->parsed() && raw.parity == "odd" && !ver->count("--parity")) raw.parity = "both";
        finish(raw, spec);
        if (hom->parsed()) {
          spec.command = "homology";
          return vw::cmd_homology(spec, std::cout, std::cerr);
        }
        if (ver->parsed()) {
          spec.command = "verify";
          return vw::cmd_verify(spec, std::cout, std::cerr);
        }
        spec.command = "basis";
        return vw::cmd_basis(spec, std::cout, std::cerr);
      },
      std::cerr);
}
