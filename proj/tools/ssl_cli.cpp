#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "ssl/claims.hpp"
#include "ssl/constructions.hpp"
#include "ssl/pi1.hpp"
#include "ssl/surface_io.hpp"
#include "ssl/systole.hpp"

namespace {

using nlohmann::ordered_json;

void print(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

ordered_json topology_json(const ssl::TopologySummary& t) {
  return {{"euler_char", t.euler_char},
          {"orientable", t.orientable},
          {"boundary_count", t.boundary_count},
          {"genus", t.genus}};
}

ordered_json systole_json(const ssl::MetricSurface& s, const ssl::SystoleResult& r) {
  ordered_json edges = ordered_json::array();
  for (const auto& d : r.loop.edges) edges.push_back({{"edge", d.edge}, {"forward", d.forward}});
  return {{"length", r.length},
          {"base_vertex", r.base_vertex},
          {"loop", edges},
          {"vertices", ssl::loop_vertices(s, r.loop)},
          {"method", r.certificate.method},
          {"witness", r.certificate.witness}};
}

ssl::FillingInstance read_filling(const std::string& path) { return ssl::make_filling(ssl::read_surface(path)); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Systolic audits of piecewise-flat surfaces and isometric fillings"};
  app.require_subcommand(1);

  std::string input;
  std::string output;

  auto* validate = app.add_subcommand("validate", "Check that a surface file is valid");
  validate->add_option("file", input, "Surface file")->required();

  auto* info = app.add_subcommand("info", "Topology, area and boundary data");
  info->add_option("file", input, "Surface file")->required();

  bool brute = false;
  double cap = std::numeric_limits<double>::infinity();
  auto* sys = app.add_subcommand("systole", "Shortest non-contractible edge loop");
  sys->add_option("file", input, "Surface file")->required();
  sys->add_flag("--brute-force", brute, "Use the exhaustive oracle");
  sys->add_option("--cap", cap, "Length cap for the exhaustive oracle");

  std::string mode = "orientable";
  std::string s_text = "auto";
  auto* glue = app.add_subcommand("glue", "Glue antipodal boundary arcs of a filling");
  glue->add_option("file", input, "Filling surface file")->required();
  glue->add_option("--mode", mode, "orientable or nonorientable")
      ->check(CLI::IsMember({"orientable", "nonorientable"}));
  glue->add_option("--s", s_text, "Arc length s, or auto");
  glue->add_option("-o,--output", output, "Output surface file")->required();

  int n = 64;
  auto* capcmd = app.add_subcommand("cap", "Close a filling with a hemisphere");
  capcmd->add_option("file", input, "Filling surface file")->required();
  capcmd->add_option("-n", n, "Hemisphere resolution");
  capcmd->add_option("-o,--output", output, "Output surface file")->required();

  double length = 2 * 3.14159265358979323846;
  double height = 0.0;
  int handles = 1;
  double scale = 0.05;
  std::string kind;
  auto* gen = app.add_subcommand("generate", "Write a generated filling");
  gen->add_option("kind", kind, "hemisphere, cylinder or handles")
      ->required()
      ->check(CLI::IsMember({"hemisphere", "cylinder", "handles"}));
  gen->add_option("-L,--length", length, "Boundary length");
  gen->add_option("-n", n, "Hemisphere resolution");
  gen->add_option("--height", height, "Cylinder height");
  gen->add_option("-g,--handles", handles, "Number of handles");
  gen->add_option("--scale", scale, "Handle size");
  gen->add_option("-o,--output", output, "Output surface file")->required();

  std::string report;
  std::string verify_s = "auto";
  auto* verify = app.add_subcommand("verify", "Run the claim suite on a filling");
  verify->add_option("file", input, "Filling surface file")->required();
  verify->add_option("--report", report, "Write report (.json or .csv)");
  verify->add_option("--s", verify_s, "Arc length s, or auto");
  verify->add_option("-n", n, "Cap resolution");

  ssl::SRBoundFunction bound;
  long long g_max = 1000000;
  auto* g0 = app.add_subcommand("g0", "Estimate the genus beyond which the class is empty");
  g0->add_option("--cap", bound.cap, "Cap of the bound function");
  g0->add_option("--coef", bound.coef, "Asymptotic coefficient (inf for cap only)");
  g0->add_option("--gmax", g_max, "Largest genus scanned");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate) {
      ssl::MetricSurface s = ssl::read_surface(input);
      ssl::TopologySummary t = ssl::topology(s);
      std::cout << "valid: F=" << s.face_count() << " E=" << s.edge_count() << " V=" << s.vertex_count()
                << " chi=" << t.euler_char << "\n";
    } else if (*info) {
      ssl::MetricSurface s = ssl::read_surface(input);
      ssl::TopologySummary t = ssl::topology(s);
      ordered_json j = {{"faces", s.face_count()},
                        {"edges", s.edge_count()},
                        {"vertices", s.vertex_count()},
                        {"topology", topology_json(t)},
                        {"area", ssl::area(s)}};
      if (t.boundary_count == 1) {
        ssl::BoundaryParam bp = ssl::boundary_param(s);
        j["boundary_length"] = bp.length;
        j["boundary_vertices"] = bp.size();
        if (t.orientable) j["member"] = ssl::check_membership(ssl::make_filling(s));
      }
      print(j);
    } else if (*sys) {
      ssl::MetricSurface s = ssl::read_surface(input);
      ssl::SystoleResult r;
      if (brute) r = ssl::brute_force_systole(s, cap);
      else r = ssl::systole(s);
      ordered_json j = systole_json(s, r);
      j["systolic_ratio"] = ssl::systolic_ratio(r, ssl::area(s));
      print(j);
    } else if (*glue) {
      ssl::FillingInstance f = read_filling(input);
      ssl::GluingSpec spec;
      bool clamped = false;
      if (s_text == "auto") spec = ssl::auto_gluing_spec(ssl::systole(f.surface).length, f.boundary.length, &clamped);
      else spec.s = std::stod(s_text);
      auto m = mode == "orientable" ? ssl::GluingMode::Orientable : ssl::GluingMode::NonOrientable;
      ssl::GlueResult g = ssl::glue(f, spec, m);
      ssl::write_surface(g.surface, output);
      print({{"s", g.s},
             {"clamped", clamped},
             {"topology", topology_json(ssl::topology(g.surface))},
             {"pq_loop_length", g.pq_loop.length}});
    } else if (*capcmd) {
      ssl::CapResult c = ssl::cap_with_hemisphere(read_filling(input), n);
      ssl::write_surface(c.surface, output);
      print({{"filling_area", c.filling_area},
             {"cap_area", c.cap_area},
             {"area", ssl::area(c.surface)},
             {"refined", c.refined},
             {"topology", topology_json(ssl::topology(c.surface))}});
    } else if (*gen) {
      ssl::FillingInstance f;
      if (kind == "hemisphere") f = ssl::hemisphere_mesh(length, n);
      else if (kind == "cylinder") f = ssl::cylinder_hemisphere_filling(length, height, n);
      else f = ssl::attach_handles(ssl::hemisphere_mesh(length, n), handles, scale).filling;
      ssl::write_surface(f.surface, output);
      print({{"genus", f.genus}, {"area", ssl::area(f.surface)}, {"boundary_length", f.boundary.length}});
    } else if (*verify) {
      ssl::SuiteOptions options;
      options.cap_resolution = n;
      if (verify_s != "auto") options.s = std::stod(verify_s);
      ssl::ClaimReport r = ssl::run_claim_suite(read_filling(input), options);
      if (report.empty()) {
        std::cout << ssl::format_report(r, ssl::ReportFormat::Json);
      } else {
        bool csv = report.size() >= 4 && report.substr(report.size() - 4) == ".csv";
        ssl::emit_report(r, csv ? ssl::ReportFormat::Csv : ssl::ReportFormat::Json, report);
        for (const auto& c : r.claims)
          std::cout << c.id << " " << ssl::status_name(c.status) << (c.required ? " (required)" : "") << "\n";
      }
      return r.required_passed() ? 0 : 1;
    } else if (*g0) {
      auto g = ssl::estimate_g0(bound, g_max);
      ordered_json j = {{"cap", bound.cap}, {"coef", bound.coef}, {"g_max", g_max}};
      if (g) j["g0"] = *g;
      else j["g0"] = "NotFound";
      print(j);
    }
  } catch (const ssl::Error& e) {
    std::cerr << "error: " << ssl::error_name(e.code()) << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
