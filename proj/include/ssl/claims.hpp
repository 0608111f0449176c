#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ssl/constructions.hpp"
#include "ssl/systole.hpp"

namespace ssl {

/// Upper estimate of the supremal systolic ratio in genus gamma:
/// min(cap, coef * log(gamma)^2 / gamma) for gamma >= 2, else cap.
/// An infinite coef leaves only the cap.
struct SRBoundFunction {
  double cap = 4.0 / 3.0;
  double coef = 0.31830988618379067;  // 1/pi, asymptotic only

  double operator()(double gamma) const;
};

/// True iff area(F) < L^2 / 2pi.
bool check_membership(const FillingInstance& f);

/// Threshold on sys(M) for genus g and boundary length L: log(g) / (2 pi sqrt(g)) * L.
double systole_threshold(int genus, double boundary_length);

enum class ClaimStatus { Pass, Fail, Info };
const char* status_name(ClaimStatus s);

struct ClaimEntry {
  std::string id;
  std::string description;
  double lhs = 0.0;
  double rhs = 0.0;
  std::optional<double> mid;  // middle term of a chained inequality
  std::string relation;       // "==", "<=", ">=", "<", ">", "<=<="
  ClaimStatus status = ClaimStatus::Info;
  double tolerance = 0.0;
  bool required = false;
  std::string note;
};

struct ClaimReport {
  int genus = 0;
  double boundary_length = 0.0;
  double area = 0.0;
  double systole = 0.0;
  double systolic_ratio = 0.0;
  double refinement = 0.0;  // longest boundary segment
  double s = 0.0;
  bool s_clamped = false;
  bool member = false;
  std::vector<ClaimEntry> claims;

  bool required_passed() const;
  const ClaimEntry* find(const std::string& id) const;
};

struct SuiteOptions {
  std::optional<double> s;  // gluing parameter; automatic when absent
  int cap_resolution = 64;
  SRBoundFunction bound;
  int threads = 0;
};

/// Evaluates every claim on one filling. Construction failures become
/// FAIL entries carrying the error text; every id appears exactly once.
ClaimReport run_claim_suite(const FillingInstance& f, const SuiteOptions& options = {});

/// Smallest g in [2, g_max] from which bound(g+1) <= log(g)^2 / (pi g)
/// holds for every g' up to g_max.
std::optional<long long> estimate_g0(const SRBoundFunction& bound, long long g_max);

enum class ReportFormat { Json, Csv };

nlohmann::ordered_json report_to_json(const ClaimReport& r);
std::string format_report(const ClaimReport& r, ReportFormat format);
void emit_report(const ClaimReport& r, ReportFormat format, const std::string& path);

}  // namespace ssl
