// Command line entry point: verification suites, capacity tables, flow
// integration, billiard scans, and point-wise cut-map evaluation.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "orbitcap/billiard.hpp"
#include "orbitcap/capacity.hpp"
#include "orbitcap/dynamics.hpp"
#include "orbitcap/io.hpp"
#include "orbitcap/verify.hpp"

namespace {

using namespace orbitcap;

std::vector<double> parse_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  if (out.empty()) throw CLI::ValidationError("--s/--eps list is empty");
  return out;
}

bool apply_tolerances(const std::vector<std::string>& overrides) {
  for (const auto& kv : overrides) {
    auto pos = kv.find('=');
    if (pos == std::string::npos) {
      std::cerr << "bad --tol override (expected KEY=VAL): " << kv << "\n";
      return false;
    }
    std::string key = kv.substr(0, pos);
    double val = std::stod(kv.substr(pos + 1));
    if (!Tolerances::active().set(key, val)) {
      std::cerr << "unknown tolerance key: " << key << "\n";
      return false;
    }
  }
  return true;
}

int cmd_verify(int n, std::uint64_t seed, bool light) {
  verify::Options opt;
  opt.n = n;
  opt.seed = seed;
  opt.heavy = !light;
  auto results = verify::run_all(opt);
  bool all_pass = true;
  std::printf("%-34s %-12s %-10s %s\n", "invariant", "residual", "tolerance", "status");
  for (const auto& r : results) {
    all_pass = all_pass && r.pass;
    std::printf("%-34s %-12.3e %-10.1e %s%s%s\n", r.name.c_str(), r.worst, r.tolerance,
                r.pass ? "PASS" : "FAIL", r.note.empty() ? "" : "  # ", r.note.c_str());
  }
  if (!all_pass) {
    for (const auto& r : results)
      if (!r.pass) std::cerr << "failing invariant: " << r.name << "\n";
    return 1;
  }
  return 0;
}

int cmd_capacity(const std::string& space, const std::string& s_list, double eps, int n,
                 std::uint64_t seed, const std::string& output, bool csv,
                 const std::string& plot) {
  calib::Space sp = (space == "rp") ? calib::Space::RP : calib::Space::CP;
  std::vector<double> svals = parse_list(s_list);
  capacity::LowerBoundOptions opt;
  opt.n = n;
  opt.seed = static_cast<unsigned>(seed);
  auto table = capacity::capacity_table(sp, svals, eps, opt);
  std::string body = csv ? io::reports_to_csv(table) : io::reports_to_json(table);
  if (output.empty())
    std::cout << body;
  else
    io::write_file(output, body);
  if (!plot.empty() && svals.size() >= 2) {
    std::vector<double> uppers, lowers;
    for (const auto& r : table) {
      uppers.push_back(r.upper);
      lowers.push_back(r.lower);
    }
    io::write_file(plot, io::svg_curve_plot(svals, {uppers, lowers}, {"upper", "lower"},
                                            "capacity bounds (l units) vs twist"));
  }
  return 0;
}

int cmd_flow(int n, double s, double speed, double t_end, double dt, std::uint64_t seed,
             const std::string& output) {
  RandomStream rng(seed);
  orbit::OrbitPoint x = orbit::random_point(n, rng);
  orbit::TangentPair p{x, orbit::random_tangent(x, rng, speed), 1.0};
  auto rec = dynamics::integrate(p, s, t_end, dt);
  dynamics::write_trajectory_csv(output, rec);
  std::cout << "steps=" << rec.times.size() - 1 << " energy_drift=" << rec.energy_drift()
            << " moment_drift=" << rec.moment_drift() << "\n";
  return 0;
}

int cmd_billiard(const std::string& eps_list, double cap, const std::string& output,
                 const std::string& plot) {
  std::vector<double> eps_values = parse_list(eps_list);
  for (double eps : eps_values)
    if (!(eps > 0.0 && eps <= 0.2))
      throw CLI::ValidationError("--eps values must lie in (0, 0.2]");
  std::vector<billiard::ScanResult> results;
  for (double eps : eps_values) {
    auto res = billiard::billiard_min_period(eps, cap);
    std::cout << "eps=" << eps << " min_period=" << res.min_period << " bound=" << res.bound
              << " probed=" << res.probed << " periodic=" << res.periodic
              << " excluded=" << res.excluded << "\n";
    if (!(res.min_period > res.bound)) {
      std::cerr << "failing invariant: billiard_period_bound at eps=" << eps << "\n";
      return 1;
    }
    results.push_back(res);
  }
  if (!output.empty()) billiard::write_scan_csv(output, eps_values, results);
  if (!plot.empty()) {
    std::vector<double> mins, bounds;
    for (const auto& r : results) {
      mins.push_back(r.min_period);
      bounds.push_back(r.bound);
    }
    io::write_file(plot, io::svg_curve_plot(eps_values, {mins, bounds},
                                            {"min period", "2pi(1-sqrt(eps))"},
                                            "billiard minimum period vs eps"));
  }
  return 0;
}

int cmd_map(const std::string& space, const std::string& direction, double s,
            const std::string& input, const std::string& output) {
  nlohmann::json in = nlohmann::json::parse(io::read_file(input));
  nlohmann::json out;
  auto radii = cutmaps::TwistRadii::from_twist(s);
  if (space == "cp") {
    if (direction == "fwd") {
      auto p = io::pair_from_json(in);
      auto [a, b] = cutmaps::forward_cp(p, radii);
      out = {{"a", io::point_to_json(a)}, {"b", io::point_to_json(b)}};
    } else {
      auto a = io::point_from_json(in.at("a"));
      auto b = io::point_from_json(in.at("b"));
      out = io::pair_to_json(cutmaps::inverse_cp(a, b, radii));
    }
  } else {
    if (direction == "fwd") {
      auto p = io::pair_from_json(in);
      out = {{"p", io::point_to_json(cutmaps::forward_rp(p))}};
    } else {
      auto p = io::point_from_json(in.contains("p") ? in.at("p") : in);
      out = io::pair_to_json(cutmaps::inverse_rp(p));
    }
  }
  std::string body = out.dump(2) + "\n";
  if (output.empty())
    std::cout << body;
  else
    io::write_file(output, body);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adjoint-orbit models of CP^n/RP^n, cut-map symplectomorphisms, "
               "Hamiltonian flows, and Hofer-Zehnder capacity certification"};
  app.require_subcommand(1);

  std::vector<std::string> tol_overrides;
  app.add_option("--tol", tol_overrides, "tolerance override KEY=VAL (repeatable)");

  int n = 2;
  std::uint64_t seed = 1;
  double s = 0.0, eps = 0.01, dt = 1e-3, t_end = 5.0, speed = 0.7, cap = 0.95;
  std::string space = "cp", s_list = "0", eps_list = "0.1", direction = "fwd";
  std::string output, input, plot;
  bool light = false, csv = false;

  auto* cverify = app.add_subcommand("verify", "run all module invariant suites");
  cverify->add_option("--n", n, "dimension index")->check(CLI::PositiveNumber);
  cverify->add_option("--seed", seed, "random seed");
  cverify->add_flag("--light", light, "skip the finite-difference pullback suites");

  auto* ccap = app.add_subcommand("capacity", "write a capacity report table");
  ccap->add_option("--space", space, "cp or rp")->check(CLI::IsMember({"cp", "rp"}));
  ccap->add_option("--s", s_list, "comma list of twist strengths");
  ccap->add_option("--eps", eps, "profile/scan eps")->check(CLI::Range(1e-12, 0.2));
  ccap->add_option("--n", n, "dimension index")->check(CLI::PositiveNumber);
  ccap->add_option("--seed", seed, "random seed for the certification flows");
  ccap->add_option("--output", output, "output path (stdout if omitted)");
  ccap->add_flag("--csv", csv, "CSV instead of JSON");
  ccap->add_option("--plot", plot, "write an SVG plot of the bounds");

  auto* cflow = app.add_subcommand("flow", "integrate a magnetic geodesic and write CSV");
  cflow->add_option("--n", n, "dimension index")->check(CLI::PositiveNumber);
  cflow->add_option("--s", s, "twist strength");
  cflow->add_option("--speed", speed, "initial |v|")->check(CLI::PositiveNumber);
  cflow->add_option("--t-end", t_end, "integration time")->check(CLI::PositiveNumber);
  cflow->add_option("--dt", dt, "step size")->check(CLI::PositiveNumber);
  cflow->add_option("--seed", seed, "random seed for the initial condition");
  cflow->add_option("--output", output, "trajectory CSV path")->required();

  auto* cbil = app.add_subcommand("billiard", "minimum-period scan vs eps");
  cbil->add_option("--eps", eps_list, "comma list of eps values");
  cbil->add_option("--cap", cap, "energy cap")->check(CLI::PositiveNumber);
  cbil->add_option("--output", output, "CSV path");
  cbil->add_option("--plot", plot, "write an SVG plot of the scan");

  auto* cmap = app.add_subcommand("map", "apply a cut map to a point file");
  cmap->add_option("--space", space, "cp or rp")->check(CLI::IsMember({"cp", "rp"}));
  cmap->add_option("--direction", direction, "fwd or inv")
      ->check(CLI::IsMember({"fwd", "inv"}));
  cmap->add_option("--s", s, "twist strength (cp only)");
  cmap->add_option("--input", input, "input JSON")->required();
  cmap->add_option("--output", output, "output JSON (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage error contract
  }

  if (!apply_tolerances(tol_overrides)) return 2;

  try {
    if (cverify->parsed()) return cmd_verify(n, seed, light);
    if (ccap->parsed()) return cmd_capacity(space, s_list, eps, n, seed, output, csv, plot);
    if (cflow->parsed()) return cmd_flow(n, s, speed, t_end, dt, seed, output);
    if (cbil->parsed()) return cmd_billiard(eps_list, cap, output, plot);
    if (cmap->parsed()) return cmd_map(space, direction, s, input, output);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
