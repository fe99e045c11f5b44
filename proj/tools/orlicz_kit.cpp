#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "orlicz/acsob.hpp"
#include "orlicz/builtin.hpp"
#include "orlicz/errors.hpp"
#include "orlicz/scenario.hpp"

namespace {

using namespace orlicz;

int cmd_run(const std::string& target, const std::string& report_override) {
  ScenarioResult res;
  if (builtin::is_scenario_name(target))
    res = run_scenario_text(builtin::scenario_config(target));
  else
    res = run_scenario_file(target);
  std::string path = !report_override.empty() ? report_override : res.report_path;
  std::string text = res.report.dump(2) + "\n";
  if (!path.empty()) {
    write_text_file(path, text);
    std::cout << "report written to " << path << "\n";
  } else {
    std::cout << text;
  }
  for (const auto& f : res.failures) std::cerr << "expectation missed: " << f << "\n";
  return res.exit_code;
}

Box grid_spec_box(const std::string& spec, BoxGrid& grid_out) {
  // "<dim>:<m1>x<m2>:<a1>,<b1>,<a2>,<b2>"
  auto fail = [&]() -> Box { throw InputError("bad grid spec '" + spec + "' (want dim:m1xm2:a1,b1,a2,b2)"); };
  auto c1 = spec.find(':');
  auto c2 = spec.find(':', c1 == std::string::npos ? 0 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos) return fail();
  int dim = std::stoi(spec.substr(0, c1));
  if (dim < 1 || dim > 3) return fail();
  std::array<int, 3> counts{1, 1, 1};
  {
    std::string ms = spec.substr(c1 + 1, c2 - c1 - 1);
    std::size_t pos = 0;
    for (int k = 0; k < dim; ++k) {
      auto x = ms.find('x', pos);
      std::string tok = x == std::string::npos ? ms.substr(pos) : ms.substr(pos, x - pos);
      counts[static_cast<std::size_t>(k)] = std::stoi(tok);
      pos = x == std::string::npos ? ms.size() : x + 1;
    }
  }
  Box box;
  box.dim = dim;
  {
    std::string bs = spec.substr(c2 + 1);
    std::size_t pos = 0;
    for (int k = 0; k < 2 * dim; ++k) {
      auto comma = bs.find(',', pos);
      std::string tok = comma == std::string::npos ? bs.substr(pos) : bs.substr(pos, comma - pos);
      double v = std::stod(tok);
      auto ks = static_cast<std::size_t>(k / 2);
      if (k % 2 == 0) box.lo[ks] = v;
      else box.hi[ks] = v;
      pos = comma == std::string::npos ? bs.size() : comma + 1;
    }
  }
  grid_out = BoxGrid(dim, counts, box);
  return box;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orlicz-kit: numerics for generalized Orlicz spaces"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run a scenario config (path or builtin name)");
  std::string run_target, run_report;
  run->add_option("config", run_target, "config file path or builtin scenario name")->required();
  run->add_option("--report", run_report, "override report output path");

  auto* list = app.add_subcommand("list", "list builtin scenarios");

  auto* norm = app.add_subcommand("norm", "Luxemburg norm of a field");
  std::string norm_phi, norm_field;
  double norm_tol = 1e-8;
  norm->add_option("--phi", norm_phi, "integrand descriptor, e.g. power:2 or ramp")->required();
  norm->add_option("--field", norm_field, "fieldv1 file")->required();
  norm->add_option("--tol", norm_tol, "relative bisection tolerance");

  auto* mod = app.add_subcommand("modulus", "modulus estimates for a curve family");
  std::string mod_phi, mod_curves, mod_grid, mod_density_out;
  mod->add_option("--phi", mod_phi, "integrand descriptor (must be convex)")->required();
  mod->add_option("--curves", mod_curves, "curvev1 file")->required();
  mod->add_option("--grid", mod_grid, "density grid spec dim:m1xm2:a1,b1,a2,b2")->required();
  mod->add_option("--density-out", mod_density_out, "write the norm-route extremal density (fieldv1)");

  auto* acl = app.add_subcommand("acl", "two-resolution ACL diagnostic");
  std::string acl_field, acl_fine;
  double acl_jump_tol = 1e-9;
  acl->add_option("--field", acl_field, "fieldv1 file at resolution h")->required();
  acl->add_option("--field-fine", acl_fine, "fieldv1 file at resolution h/2")->required();
  acl->add_option("--jump-tol", acl_jump_tol, "jump tolerance floor");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(run_target, run_report);
    if (*list) {
      for (const auto& name : orlicz::builtin::scenario_names()) std::cout << name << "\n";
      return 0;
    }
    if (*norm) {
      ScalarField f = read_fieldv1_file(norm_field);
      PhiFunction phi = parse_phi(norm_phi, f.grid().box());
      NormOptions opts;
      opts.tol = norm_tol;
      NormResult r = luxemburg_norm(phi, f, opts);
      std::cout << to_json(r).dump(2) << "\n";
      return 0;
    }
    if (*mod) {
      BoxGrid grid;
      Box box = grid_spec_box(mod_grid, grid);
      PhiFunction phi = parse_phi(mod_phi, box);
      CurveFamily fam = read_curvev1_file(mod_curves);
      Json out;
      out["modular_route"] = to_json(estimate_modulus_modular(phi, fam, grid));
      ModulusResult nr = estimate_modulus_norm(phi, fam, grid);
      out["norm_route"] = to_json(nr);
      if (!mod_density_out.empty()) write_fieldv1_file(mod_density_out, nr.density);
      std::cout << out.dump(2) << "\n";
      return 0;
    }
    if (*acl) {
      ScalarField coarse = read_fieldv1_file(acl_field);
      ScalarField fine = read_fieldv1_file(acl_fine);
      ACReport r = acl_check(coarse, fine, acl_jump_tol);
      std::cout << to_json(r, true).dump(2) << "\n";
      return 0;
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
