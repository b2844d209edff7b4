#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "primroot/combiner.hpp"
#include "primroot/conditions.hpp"
#include "primroot/divisor_lab.hpp"
#include "primroot/jacobsthal.hpp"
#include "primroot/poisson_model.hpp"
#include "primroot/residue.hpp"

namespace primroot {

// Shortest round-trip decimal form; identical bytes on every run.
std::string format_double(double v);

nlohmann::ordered_json to_json(const ResidueProfile& profile);
nlohmann::ordered_json to_json(const JacobsthalValue& value);
nlohmann::ordered_json to_json(const ChainPlan& plan);
nlohmann::ordered_json to_json(const ConditionReport& report);
nlohmann::ordered_json to_json(const ExceptionScan& scan);
nlohmann::ordered_json to_json(const SumRecipScan& scan);
nlohmann::ordered_json to_json(const DensityScan& scan);
nlohmann::ordered_json to_json(const PoissonStats& stats);
nlohmann::ordered_json to_json(const LilResult& result);

// Header: p,omega,sum_i,cond_i,r_found,tail_at_r,cond_ii,g,bound,holds
std::string condition_csv(const std::vector<ConditionReport>& rows);
// Header: x,t,c,delta,exceptions,fraction,paper_comparison
std::string exception_scan_csv(const ExceptionScan& scan);
// Header: k,count,empirical_prob,poisson_prob
std::string histogram_csv(const PoissonStats& stats);
// Header: x,R,xi,threshold,primes,count,fraction
std::string sum_recip_csv(const SumRecipScan& scan);
// Header: x,delta,xi,primes,fail_i,fail_ii,fail_any,combined_fraction,asymptotic_bound
std::string density_csv(const DensityScan& scan);

// Writes to a sibling temporary file, then renames over path.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace primroot
