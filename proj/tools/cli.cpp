#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "primroot/combiner.hpp"
#include "primroot/conditions.hpp"
#include "primroot/divisor_lab.hpp"
#include "primroot/error.hpp"
#include "primroot/jacobsthal.hpp"
#include "primroot/poisson_model.hpp"
#include "primroot/report.hpp"
#include "primroot/residue.hpp"

namespace primroot::cli {

namespace {

enum class Format { csv, json };

struct Common {
  int threads = 0;
  std::string out_path;
  Format format = Format::csv;
  BoundConstants constants;
};

void add_threads(CLI::App* cmd, Common& c) {
  cmd->add_option("--threads", c.threads, "Worker threads (default: machine parallelism)")
      ->check(CLI::PositiveNumber);
}

void add_output(CLI::App* cmd, Common& c, bool with_format) {
  cmd->add_option("--out", c.out_path, "Output file (default: stdout)");
  if (with_format) {
    cmd->add_option("--format", c.format, "csv or json")
        ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"csv", Format::csv}, {"json", Format::json}}));
  }
}

void add_constants(CLI::App* cmd, Common& c) {
  cmd->add_option("--c", c.constants.c_C, "Constant C");
  cmd->add_option("--c-prime", c.constants.c_Cp, "Constant C'");
  cmd->add_option("--c-double-prime", c.constants.c_Cpp, "Constant C''");
  cmd->add_option("--c-triple-prime", c.constants.c_Cppp, "Constant C'''");
}

// PRIMROOT_THREADS wins over --threads.
int effective_threads(int flag) {
  if (const char* env = std::getenv("PRIMROOT_THREADS"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1) throw CLI::ValidationError("PRIMROOT_THREADS", "must be a positive integer");
    return static_cast<int>(v);
  }
  return flag;
}

void emit(const Common& c, const std::string& text, std::ostream& out) {
  if (c.out_path.empty()) {
    out << text;
  } else {
    write_file_atomic(c.out_path, text);
  }
}

std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"primroot: least primitive roots, nonresidue chains and prime anatomy"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  Common common;

  // scan
  u64 x_min = 0, x_max = 0;
  double delta = 0.0, xi = 1.0;
  auto* scan = app.add_subcommand("scan", "Per-prime condition report over [x-min, x-max]");
  scan->add_option("--x-min", x_min)->required();
  scan->add_option("--x-max", x_max)->required();
  scan->add_option("--delta", delta)->required();
  scan->add_option("--xi", xi);
  add_threads(scan, common);
  add_output(scan, common, true);
  add_constants(scan, common);

  // gp
  u64 p = 0;
  auto* gp = app.add_subcommand("gp", "Least primitive root and least q-nonresidues of p");
  gp->add_option("p", p)->required();
  add_output(gp, common, false);

  // chain
  unsigned r = 1;
  double chain_delta = 0.0, chain_xi = 1.0;
  auto* chain = app.add_subcommand("chain", "Nonresidue combination plan for p at level r");
  chain->add_option("p", p)->required();
  chain->add_option("--r", r)->required();
  chain->add_option("--delta", chain_delta, "Also report theta under this delta");
  chain->add_option("--xi", chain_xi);
  add_output(chain, common, false);
  add_constants(chain, common);

  // jacobsthal
  u64 m = 0;
  auto* jac = app.add_subcommand("jacobsthal", "Jacobsthal function J(m) with a witness window");
  jac->add_option("m", m)->required();
  add_output(jac, common, false);

  // divisor-exceptions
  u64 x = 0;
  unsigned t = 0;
  double c = 0.0;
  auto* dex = app.add_subcommand("divisor-exceptions", "Count n <= x lacking t well-spaced divisors");
  dex->add_option("--x", x)->required();
  dex->add_option("--t", t)->required();
  dex->add_option("--c", c)->required();
  add_threads(dex, common);
  add_output(dex, common, true);

  // wstar
  u64 b = 0;
  double sigma = 0.0;
  auto* ws = app.add_subcommand("wstar", "Ordered divisor pairs of b within log-distance sigma");
  ws->add_option("b", b)->required();
  ws->add_option("--sigma", sigma)->required();
  add_output(ws, common, false);

  // poisson
  unsigned j = 1;
  auto* poi = app.add_subcommand("poisson", "Histogram of W_j over primes p <= x against Poisson(lambda_j)");
  poi->add_option("--j", j)->required();
  poi->add_option("--x", x)->required();
  add_threads(poi, common);
  add_output(poi, common, true);

  // lil
  double eta = 0.0, epsilon = 0.0;
  u64 trials = 0, seed = 0;
  unsigned j_max = 200;
  auto* lil = app.add_subcommand("lil", "Monte-Carlo estimate in the unit-Poisson model");
  lil->add_option("--eta", eta)->required();
  lil->add_option("--epsilon", epsilon)->required();
  lil->add_option("--trials", trials)->required();
  lil->add_option("--seed", seed)->required();
  lil->add_option("--j-max", j_max);
  add_threads(lil, common);
  add_output(lil, common, false);

  // sum-recip
  double R = 0.0;
  auto* srs = app.add_subcommand("sum-recip", "Primes whose smallest q_i have a large reciprocal sum");
  srs->add_option("--x", x)->required();
  srs->add_option("--R", R)->required();
  srs->add_option("--xi", xi)->required();
  add_threads(srs, common);
  add_output(srs, common, true);

  // density
  auto* den = app.add_subcommand("density", "Fraction of primes failing condition (i) or (ii)");
  den->add_option("--x", x)->required();
  den->add_option("--delta", delta)->required();
  den->add_option("--xi", xi);
  add_threads(den, common);
  add_output(den, common, true);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
    common.threads = effective_threads(common.threads);
    if (*scan && x_min > x_max) throw CLI::ValidationError("--x-min", "must not exceed --x-max");
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    const bool json = common.format == Format::json;
    if (*scan) {
      validate_delta(delta);
      BoundConfig config;
      config.delta = delta;
      config.xi = xi;
      config.constants = common.constants;
      const auto rows = condition_scan(x_min, x_max, delta, xi, config, common.threads);
      if (json) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& row : rows) arr.push_back(to_json(row));
        emit(common, dump(arr), out);
      } else {
        emit(common, condition_csv(rows), out);
      }
    } else if (*gp) {
      const auto profile = residue_profile(factorize_shifted(p));
      out << fmt::format("g({}) = {}\n", p, profile.g);
      emit(common, dump(to_json(profile)), out);
    } else if (*chain) {
      const auto record = factorize_shifted(p);
      const auto plan = build_chain(record, r);
      auto doc = to_json(plan);
      if (chain_delta > 0.0) {
        BoundConfig config;
        config.delta = chain_delta;
        config.xi = chain_xi;
        config.constants = common.constants;
        config = evaluate_bounds(record, r, config);
        doc["beta"] = config.beta;
        doc["alpha"] = config.alpha;
        doc["theta"] = theta_estimate(plan, config);
      }
      out << fmt::format("g({}) <= {}\n", p, plan.combined_residue);
      emit(common, dump(doc), out);
    } else if (*jac) {
      const auto v = jacobsthal(m);
      out << fmt::format("J({}) = {}\n", m, v.J);
      if (v.witness_start && v.J >= 2) {
        out << fmt::format("witness: {}..{} share a factor with {}\n", *v.witness_start + 1,
                           *v.witness_start + v.J - 1, m);
      }
      emit(common, dump(to_json(v)), out);
    } else if (*dex) {
      const auto s = exception_scan(x, t, c, common.threads);
      emit(common, json ? dump(to_json(s)) : exception_scan_csv(s), out);
    } else if (*ws) {
      const u64 count = wstar(b, sigma);
      nlohmann::ordered_json doc = {{"b", b}, {"sigma", sigma}, {"count", count}};
      out << fmt::format("W*({}, {}) = {}\n", b, format_double(sigma), count);
      emit(common, dump(doc), out);
    } else if (*poi) {
      const auto s = empirical_Wj(j, x, {}, common.threads);
      emit(common, json ? dump(to_json(s)) : histogram_csv(s), out);
    } else if (*lil) {
      const auto res = simulate_lil(eta, epsilon, trials, seed, common.threads, j_max);
      emit(common, dump(to_json(res)), out);
    } else if (*srs) {
      const auto s = sum_recip_scan(x, R, xi, common.threads);
      emit(common, json ? dump(to_json(s)) : sum_recip_csv(s), out);
    } else if (*den) {
      const auto s = exceptional_density(x, delta, xi, common.threads);
      emit(common, json ? dump(to_json(s)) : density_csv(s), out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace primroot::cli
