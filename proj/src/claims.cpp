#include "ssl/claims.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

#include "ssl/cover.hpp"

namespace ssl {

using nlohmann::ordered_json;

double SRBoundFunction::operator()(double gamma) const {
  if (gamma < 2.0 || std::isinf(coef)) return cap;
  double l = std::log(gamma);
  return std::min(cap, coef * l * l / gamma);
}

bool check_membership(const FillingInstance& f) {
  const double l = f.boundary.length;
  return area(f.surface) < l * l / (2 * std::numbers::pi);
}

double systole_threshold(int genus, double boundary_length) {
  return std::log(static_cast<double>(genus)) / (2 * std::numbers::pi * std::sqrt(static_cast<double>(genus))) *
         boundary_length;
}

const char* status_name(ClaimStatus s) {
  switch (s) {
    case ClaimStatus::Pass: return "PASS";
    case ClaimStatus::Fail: return "FAIL";
    case ClaimStatus::Info: return "INFO";
  }
  return "?";
}

bool ClaimReport::required_passed() const {
  for (const ClaimEntry& c : claims)
    if (c.required && c.status != ClaimStatus::Pass) return false;
  return true;
}

const ClaimEntry* ClaimReport::find(const std::string& id) const {
  for (const ClaimEntry& c : claims)
    if (c.id == id) return &c;
  return nullptr;
}

namespace {

/// Holds relation `lhs rel rhs` with relative slack `tol`.
bool holds(double lhs, const std::string& rel, double rhs, double tol) {
  const double slack = tol * std::max(std::abs(lhs), std::abs(rhs));
  if (rel == "==") return std::abs(lhs - rhs) <= slack;
  if (rel == "<=") return lhs <= rhs + slack;
  if (rel == ">=") return lhs + slack >= rhs;
  if (rel == "<") return lhs < rhs;
  if (rel == ">") return lhs > rhs;
  return false;
}

ClaimEntry entry(std::string id, std::string description, std::string relation, double tolerance, bool required) {
  ClaimEntry c;
  c.id = std::move(id);
  c.description = std::move(description);
  c.relation = std::move(relation);
  c.tolerance = tolerance;
  c.required = required;
  return c;
}

/// Sets lhs/rhs and a PASS status when the relation holds; otherwise FAIL
/// for required claims and INFO for audits.
void settle(ClaimEntry& c, double lhs, double rhs) {
  c.lhs = lhs;
  c.rhs = rhs;
  bool ok = holds(lhs, c.relation, rhs, c.tolerance);
  c.status = ok ? ClaimStatus::Pass : (c.required ? ClaimStatus::Fail : ClaimStatus::Info);
}

void fail(ClaimEntry& c, const std::string& cause) {
  c.status = ClaimStatus::Fail;
  c.note = cause;
  c.lhs = std::nan("");
  c.rhs = std::nan("");
}

std::string describe(const std::exception& e) {
  if (auto* err = dynamic_cast<const Error*>(&e)) return std::string(error_name(err->code())) + ": " + err->what();
  return e.what();
}

/// Runs `step`; on failure marks the listed claims failed and returns false.
bool attempt(const std::function<void()>& step, std::vector<ClaimEntry*> dependents) {
  try {
    step();
    return true;
  } catch (const std::exception& e) {
    for (ClaimEntry* c : dependents) fail(*c, describe(e));
    return false;
  }
}

}  // namespace

ClaimReport run_claim_suite(const FillingInstance& f, const SuiteOptions& options) {
  ClaimReport r;
  const MetricSurface& m = f.surface;
  const double total = f.boundary.length;
  r.genus = f.genus;
  r.boundary_length = total;
  r.area = area(m);
  for (int k = 0; k < f.boundary.size(); ++k) r.refinement = std::max(r.refinement, f.boundary.segment_length(m, k));
  r.member = check_membership(f);
  SystoleOptions sys_options;
  sys_options.threads = options.threads;

  ClaimEntry c1 = entry("C1", "area of the orientable gluing equals area(M)", "==", 1e-12, true);
  ClaimEntry c2 = entry("C2", "SR of the orientable gluing equals SR(M)", "==", 1e-9, false);
  ClaimEntry c3 = entry("C3", "SR of the non-orientable gluing equals SR(M)", "==", 1e-9, false);
  ClaimEntry c4 = entry("C4", "sys(double cover) >= 2 sys(non-orientable gluing)", ">=", 1e-9, false);
  ClaimEntry c4b = entry("C4b", "sys(double cover) >= sys(non-orientable gluing)", ">=", 1e-9, true);
  ClaimEntry c5 = entry("C5", "SR(M) <= SRbound(g+1) / 2", "<=", 0.0, false);
  ClaimEntry c6 = entry("C6", "2 area(M) <= area(capped) <= L^2/pi", "<=<=", 1e-2, r.member);
  ClaimEntry c6a = entry("C6a", "area(capped) equals area(M) + area(cap)", "==", 1e-12, true);
  ClaimEntry c7 = entry("C7", "sys(M) < L", "<", 0.0, false);
  ClaimEntry c8 = entry("C8", "sys(M) > log(g) / (2 pi sqrt(g)) * L", ">", 0.0, false);
  ClaimEntry c9 = entry("C9", "genus of the double cover of the non-orientable gluing vs g+1", "==", 0.0, false);

  SystoleResult sys_m;
  bool have_sys = attempt([&] { sys_m = systole(m, sys_options); }, {&c2, &c3, &c5, &c7, &c8});
  if (have_sys) {
    r.systole = sys_m.length;
    r.systolic_ratio = systolic_ratio(sys_m, r.area);
  }

  if (options.s) {
    r.s = *options.s;
  } else if (have_sys) {
    r.s = auto_gluing_spec(sys_m.length, total, &r.s_clamped).s;
  } else {
    r.s = total / 4;
    r.s_clamped = true;
  }

  GlueResult plus;
  if (attempt([&] { plus = glue_orientable(f, {r.s}); }, {&c1, &c2})) {
    settle(c1, area(plus.surface), r.area);
    if (have_sys) {
      attempt([&] {
        SystoleResult sp = systole(plus.surface, sys_options);
        settle(c2, systolic_ratio(sp, area(plus.surface)), r.systolic_ratio);
        c2.note = "sys(G+) = " + std::to_string(sp.length) + ", sys(M) = " + std::to_string(sys_m.length);
      }, {&c2});
    }
  }

  GlueResult minus;
  if (attempt([&] { minus = glue_nonorientable(f, {r.s}); }, {&c3, &c4, &c4b, &c9})) {
    SystoleResult sm;
    bool have_minus = attempt([&] { sm = systole(minus.surface, sys_options); }, {&c3, &c4, &c4b});
    if (have_minus && have_sys) {
      settle(c3, systolic_ratio(sm, area(minus.surface)), r.systolic_ratio);
      c3.note = "sys(G-) = " + std::to_string(sm.length) + ", sys(M) = " + std::to_string(sys_m.length);
    }
    attempt([&] {
      DoubleCover dc = double_cover(minus.surface);
      TopologySummary t = topology(dc.cover);
      c9.lhs = t.genus;
      c9.rhs = f.genus + 1;
      c9.status = ClaimStatus::Info;
      c9.note = "cover euler characteristic " + std::to_string(t.euler_char);
      if (have_minus) {
        SystoleResult sc = systole(dc.cover, sys_options);
        settle(c4, sc.length, 2 * sm.length);
        settle(c4b, sc.length, sm.length);
      }
    }, {&c4, &c4b, &c9});
  }

  if (have_sys) {
    const SRBoundFunction& bound = options.bound;
    settle(c5, r.systolic_ratio, bound(f.genus + 1) / 2);
    c5.note = "bound cap " + std::to_string(bound.cap) + ", coefficient " + std::to_string(bound.coef);
    settle(c7, sys_m.length, total);
    if (!r.member) c7.status = ClaimStatus::Info, c7.note = "filling is not in the class; informational only";
    if (f.genus >= 1) {
      settle(c8, sys_m.length, systole_threshold(f.genus, total));
      c8.status = ClaimStatus::Info;
      c8.note = c8.lhs > c8.rhs ? "above threshold" : "at or below threshold";
    } else {
      c8.lhs = sys_m.length;
      c8.rhs = std::nan("");
      c8.status = ClaimStatus::Info;
      c8.note = "threshold undefined for genus 0";
    }
  }

  attempt([&] {
    CapResult cap = cap_with_hemisphere(f, options.cap_resolution);
    const double capped = area(cap.surface);
    settle(c6a, capped, r.area + cap.cap_area);
    c6.lhs = 2 * r.area;
    c6.mid = capped;
    c6.rhs = total * total / std::numbers::pi;
    bool ok = holds(c6.lhs, "<=", capped, c6.tolerance) && holds(capped, "<=", c6.rhs, c6.tolerance);
    c6.status = ok ? ClaimStatus::Pass : (c6.required ? ClaimStatus::Fail : ClaimStatus::Info);
    if (!r.member) c6.note = "filling is not in the class; first inequality not expected";
    if (cap.refined) c6a.note = "filling boundary refined before capping";
  }, {&c6, &c6a});

  r.claims = {c1, c2, c3, c4, c4b, c5, c6, c6a, c7, c8, c9};
  return r;
}

std::optional<long long> estimate_g0(const SRBoundFunction& bound, long long g_max) {
  if (g_max < 2) return std::nullopt;
  auto condition = [&](long long g) {
    double l = std::log(static_cast<double>(g));
    return bound(static_cast<double>(g + 1)) <= l * l / (std::numbers::pi * static_cast<double>(g));
  };
  std::optional<long long> g0;
  for (long long g = g_max; g >= 2 && condition(g); --g) g0 = g;
  return g0;
}

namespace {

ordered_json number(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

std::string csv_number(double x) {
  if (!std::isfinite(x)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

ordered_json report_to_json(const ClaimReport& r) {
  ordered_json doc;
  doc["instance"] = {{"genus", r.genus},          {"boundary_length", number(r.boundary_length)},
                     {"area", number(r.area)},    {"systole", number(r.systole)},
                     {"systolic_ratio", number(r.systolic_ratio)},
                     {"refinement", number(r.refinement)},
                     {"s", number(r.s)},          {"s_clamped", r.s_clamped},
                     {"member", r.member}};
  ordered_json claims = ordered_json::array();
  for (const ClaimEntry& c : r.claims) {
    ordered_json j;
    j["id"] = c.id;
    j["description"] = c.description;
    j["lhs"] = number(c.lhs);
    if (c.mid) j["mid"] = number(*c.mid);
    j["rhs"] = number(c.rhs);
    j["relation"] = c.relation;
    j["status"] = status_name(c.status);
    j["tolerance"] = c.tolerance;
    j["required"] = c.required;
    j["note"] = c.note;
    claims.push_back(std::move(j));
  }
  doc["claims"] = std::move(claims);
  doc["required_passed"] = r.required_passed();
  return doc;
}

std::string format_report(const ClaimReport& r, ReportFormat format) {
  if (format == ReportFormat::Json) return report_to_json(r).dump(2) + "\n";
  std::ostringstream out;
  out << "id,description,lhs,mid,rhs,relation,status,tolerance,required,note\n";
  for (const ClaimEntry& c : r.claims) {
    out << c.id << ',' << csv_field(c.description) << ',' << csv_number(c.lhs) << ','
        << (c.mid ? csv_number(*c.mid) : "") << ',' << csv_number(c.rhs) << ',' << csv_field(c.relation) << ','
        << status_name(c.status) << ',' << csv_number(c.tolerance) << ',' << (c.required ? "true" : "false") << ','
        << csv_field(c.note) << '\n';
  }
  return out.str();
}

void emit_report(const ClaimReport& r, ReportFormat format, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IOFailure, "cannot open " + path);
  out << format_report(r, format);
  if (!out) throw Error(ErrorCode::IOFailure, "write failed for " + path);
}

}  // namespace ssl
