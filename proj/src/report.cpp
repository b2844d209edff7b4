#include "primroot/report.hpp"

#include <charconv>
#include <fstream>
#include <fmt/format.h>

#include "primroot/error.hpp"

namespace primroot {

namespace {

const char* flag(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw Error(ErrorKind::internal, "double formatting failed");
  return std::string(buf, end);
}

nlohmann::ordered_json to_json(const ResidueProfile& profile) {
  nlohmann::ordered_json t = nlohmann::ordered_json::object();
  for (const auto& [q, tq] : profile.t_q_map) t[std::to_string(q)] = tq;
  return {{"p", profile.p}, {"t_q_map", t}, {"g", profile.g}};
}

nlohmann::ordered_json to_json(const JacobsthalValue& value) {
  nlohmann::ordered_json j = {{"m", value.m}, {"J", value.J}};
  j["witness_start"] = value.witness_start ? nlohmann::ordered_json(*value.witness_start) : nullptr;
  return j;
}

nlohmann::ordered_json to_json(const ChainPlan& plan) {
  nlohmann::ordered_json groups = nlohmann::ordered_json::array();
  for (const auto& g : plan.groups) groups.push_back({{"s", g.s}, {"primes", g.primes}});
  return {{"p", plan.p},
          {"r", plan.r},
          {"groups", groups},
          {"h", plan.h},
          {"degenerate", plan.degenerate},
          {"Q_sets", plan.Q_sets},
          {"bases", plan.bases},
          {"moduli", plan.moduli},
          {"jacobsthal_values", plan.jacobsthal_values},
          {"exponents", plan.exponents},
          {"combined_residue", plan.combined_residue},
          {"log_size", plan.log_size},
          {"log_upper_bound", plan.log_upper_bound}};
}

nlohmann::ordered_json to_json(const ConditionReport& r) {
  nlohmann::ordered_json j = {{"p", r.p},         {"omega", r.omega}, {"delta", r.delta},
                              {"xi", r.xi},       {"eta", r.eta},     {"sum_i", r.sum_i},
                              {"cond_i", r.cond_i}};
  j["r_found"] = r.r_found ? nlohmann::ordered_json(*r.r_found) : nullptr;
  j["tail_at_r"] = r.tail_at_r;
  j["cond_ii"] = r.cond_ii;
  j["in_S"] = r.in_S;
  j["g"] = r.g;
  j["bound"] = r.bound;
  j["holds"] = r.holds;
  return j;
}

nlohmann::ordered_json to_json(const ExceptionScan& s) {
  return {{"x", s.x},
          {"t", s.t},
          {"c", s.c},
          {"delta", s.delta},
          {"exceptions", s.exceptions},
          {"fraction", s.fraction},
          {"paper_comparison", s.paper_comparison}};
}

nlohmann::ordered_json to_json(const SumRecipScan& s) {
  return {{"x", s.x},         {"R", s.R},           {"xi", s.xi},
          {"threshold", s.threshold}, {"primes", s.primes}, {"count", s.count},
          {"fraction", s.fraction}};
}

nlohmann::ordered_json to_json(const DensityScan& s) {
  return {{"x", s.x},
          {"delta", s.delta},
          {"xi", s.xi},
          {"primes", s.primes},
          {"fail_i", s.fail_i},
          {"fail_ii", s.fail_ii},
          {"fail_any", s.fail_any},
          {"combined_fraction", s.combined_fraction},
          {"asymptotic_bound", s.asymptotic_bound}};
}

nlohmann::ordered_json to_json(const PoissonStats& s) {
  return {{"j", s.j},
          {"t_j", s.t_j},
          {"t_j1", s.t_j1},
          {"lambda_j", s.lambda_j},
          {"x", s.x},
          {"histogram", s.histogram},
          {"sample_size", s.sample_size},
          {"mean", s.mean},
          {"tv_distance", s.tv_distance}};
}

nlohmann::ordered_json to_json(const LilResult& r) {
  return {{"eta", r.eta},
          {"epsilon", r.epsilon},
          {"trials", r.trials},
          {"seed", r.seed},
          {"estimate", r.estimate},
          {"stderr", r.stderr_},
          {"truncation_mass", r.truncation_mass},
          {"truncation_mass_log10", r.truncation_mass_log10},
          {"estimate_A", r.estimate_A},
          {"estimate_B", r.estimate_B},
          {"count_A", r.count_A},
          {"count_B", r.count_B},
          {"count_AB", r.count_AB},
          {"K1", r.K1},
          {"K2", r.K2},
          {"D", r.D},
          {"j_max", r.j_max}};
}

std::string condition_csv(const std::vector<ConditionReport>& rows) {
  std::string out = "p,omega,sum_i,cond_i,r_found,tail_at_r,cond_ii,g,bound,holds\r\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{}\r\n", r.p, r.omega, format_double(r.sum_i),
                       flag(r.cond_i), r.r_found ? std::to_string(*r.r_found) : std::string(),
                       format_double(r.tail_at_r), flag(r.cond_ii), r.g, format_double(r.bound),
                       flag(r.holds));
  }
  return out;
}

std::string exception_scan_csv(const ExceptionScan& s) {
  return fmt::format("x,t,c,delta,exceptions,fraction,paper_comparison\r\n{},{},{},{},{},{},{}\r\n", s.x,
                     s.t, format_double(s.c), format_double(s.delta), s.exceptions,
                     format_double(s.fraction), format_double(s.paper_comparison));
}

std::string histogram_csv(const PoissonStats& s) {
  std::string out = "k,count,empirical_prob,poisson_prob\r\n";
  for (std::size_t k = 0; k < s.histogram.size(); ++k) {
    const double emp = s.sample_size == 0 ? 0.0
                                          : static_cast<double>(s.histogram[k]) / static_cast<double>(s.sample_size);
    out += fmt::format("{},{},{},{}\r\n", k, s.histogram[k], format_double(emp),
                       format_double(poisson_pmf(s.lambda_j, static_cast<std::int64_t>(k))));
  }
  return out;
}

std::string sum_recip_csv(const SumRecipScan& s) {
  return fmt::format("x,R,xi,threshold,primes,count,fraction\r\n{},{},{},{},{},{},{}\r\n", s.x,
                     format_double(s.R), format_double(s.xi), format_double(s.threshold), s.primes,
                     s.count, format_double(s.fraction));
}

std::string density_csv(const DensityScan& s) {
  return fmt::format(
      "x,delta,xi,primes,fail_i,fail_ii,fail_any,combined_fraction,asymptotic_bound\r\n"
      "{},{},{},{},{},{},{},{},{}\r\n",
      s.x, format_double(s.delta), format_double(s.xi), s.primes, s.fail_i, s.fail_ii, s.fail_any,
      format_double(s.combined_fraction), format_double(s.asymptotic_bound));
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorKind::invalid_argument, fmt::format("cannot open {}", tmp.string()));
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw Error(ErrorKind::internal, fmt::format("write to {} failed", tmp.string()));
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace primroot
