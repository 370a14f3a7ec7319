#pragma once

// Command-line front end. Exit codes: 0 success, 2 bad arguments or specs,
// 3 a valid request the library rejected.

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cangeo/critical.hpp"
#include "cangeo/oracle.hpp"
#include "cangeo/pointspec.hpp"
#include "cangeo/report_json.hpp"
#include "cangeo/roulette.hpp"
#include "cangeo/solver.hpp"

namespace cangeo {

namespace detail {

/// Re-expresses a path's charts in a frame sharing its origin.
inline GeodesicPath in_frame(GeodesicPath path, const Frame& ref) {
  if (path.frame.mirrored == ref.mirrored) return path;
  const bool can = path.surface.is_can();
  for (auto& seg : path.segments) {
    if (seg.face == Face::Side && can) {
      seg.from.x = -seg.from.x;
      seg.to.x = -seg.to.x;
    } else {
      seg.from.y = -seg.from.y;
      seg.to.y = -seg.to.y;
    }
  }
  path.frame = ref;
  return path;
}

/// Flat model of a report, with each disk tangent where the first path
/// crossing its rim does.
inline std::string report_svg(const SolveReport& rep) {
  std::vector<GeodesicPath> paths;
  Frame ref = rep.paths.empty() ? Frame{} : rep.paths.front().path.frame;
  for (const auto& p : rep.paths) paths.push_back(in_frame(p.path, ref));
  std::vector<RimTangency> tangencies;
  auto tangency = [&](Face rim) {
    for (const auto& p : rep.paths)
      for (const auto& c : p.path.crossings)
        if (c.face == rim) return RimTangency{rim, ref.to_local(c.angle)};
    return RimTangency{rim, 0.0};
  };
  tangencies.push_back(tangency(Face::Rim1));
  if (rep.surface.is_can()) tangencies.push_back(tangency(Face::Rim2));
  return to_svg(unroll(rep.surface, tangencies), paths);
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
  f << text;
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimal paths on a soup can or a conical cup"};
  app.require_subcommand(1);

  std::string surface_spec, a_spec, b_spec, svg_path, obj_path;
  int grid = 512, mesh_res = 128;
  double tol = 1e-12, tie_tol = 1e-9;
  bool degrees = false, json = false;
  std::string convention = "from-b";

  auto common_surface = [&](CLI::App* c) { c->add_option("--surface", surface_spec, "can:h=<f> | cup:s=<f>")->required(); };
  auto common_points = [&](CLI::App* c) {
    c->add_option("--a", a_spec, "point spec of A")->required();
    c->add_option("--b", b_spec, "point spec of B")->required();
    c->add_flag("--degrees", degrees, "angles in point specs are degrees");
  };

  CLI::App* solve_cmd = app.add_subcommand("solve", "all minimal paths between two points");
  common_surface(solve_cmd);
  common_points(solve_cmd);
  solve_cmd->add_option("--grid", grid, "grid points per family parameter")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--tol", tol, "minimizer tolerance")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--tie-tol", tie_tol, "length tolerance for ties")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--lid-base", convention, "lid-to-base parametrization")
      ->check(CLI::IsMember({"from-a", "from-b"}));
  solve_cmd->add_flag("--json", json, "JSON report (always on)");
  solve_cmd->add_option("--svg", svg_path, "write the flat model with all paths");

  CLI::App* crit = app.add_subcommand("critical", "critical configurations");
  crit->require_subcommand(1);
  double c_depth = 0.0, s_val = 2.0, a_val = 1.5, bp = 1.0;
  CLI::App* sd = crit->add_subcommand("side-diaxial", "can height for a four-way tie");
  sd->add_option("--c", c_depth, "depth of A below the lid")->required();
  CLI::App* cp = crit->add_subcommand("cup-partner", "partner slant for a three-way tie");
  cp->add_option("--s", s_val, "slant height")->required();
  cp->add_option("--a", a_val, "slant of A")->required();
  CLI::App* rc = crit->add_subcommand("rim-chord", "root of theta - sin(theta) = BP (1 - cos(theta))");
  rc->add_option("--bp", bp, "BP")->required();

  CLI::App* oracle_cmd = app.add_subcommand("oracle", "graph distance on a lattice mesh");
  common_surface(oracle_cmd);
  common_points(oracle_cmd);
  oracle_cmd->add_option("--mesh-resolution", mesh_res, "lattice points per unit length")
      ->check(CLI::Range(8, 4096));
  oracle_cmd->add_option("--obj", obj_path, "write the mesh as OBJ");

  CLI::App* flat_cmd = app.add_subcommand("flatmodel", "flat model drawing");
  common_surface(flat_cmd);
  double tangency = 0.0;
  flat_cmd->add_option("--tangency", tangency, "angle at which the disks touch the side");
  flat_cmd->add_option("--svg", svg_path, "write the flat model");

  CLI::App* roul = app.add_subcommand("roulette", "epicycloid of a rim point (cycloid without --radius)");
  std::optional<double> radius;
  std::optional<double> roll;
  roul->add_option("--radius", radius, "fixed circle radius")->check(CLI::PositiveNumber);
  roul->add_option("--t", roll, "roll parameter to evaluate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  Json result;
  try {
    if (solve_cmd->parsed()) {
      const Surface surface = parse_surface(surface_spec);
      const SurfacePoint a = parse_point_on(a_spec, surface, degrees);
      const SurfacePoint b = parse_point_on(b_spec, surface, degrees);
      SolveConfig cfg;
      cfg.grid_n = grid;
      cfg.tol = tol;
      cfg.tie_tol = tie_tol;
      cfg.families.lid_base = convention == "from-a" ? LidBaseConvention::FromA : LidBaseConvention::FromB;
      const SolveReport rep = solve(surface, a, b, cfg);
      if (!svg_path.empty()) detail::write_file(svg_path, detail::report_svg(rep));
      result = to_json(rep, cfg);
    } else if (crit->parsed()) {
      if (sd->parsed()) {
        result["h"] = critical_height_side_diaxial(c_depth).h;
      } else if (cp->parsed()) {
        const double b = cup_three_path_partner(s_val, a_val);
        result["s"] = s_val;
        result["a"] = a_val;
        result["b"] = b;
        result["threshold"] = cup_three_path_threshold(s_val);
        result["length"] = 2.0 * s_val + 2.0 - a_val - b;
      } else {
        const RimChordRoot r = solve_rim_chord_theta(bp);
        result["bp"] = bp;
        result["theta"] = r.theta;
        result["residual"] = r.residual;
        result["h"] = r.has_height ? Json(r.h) : Json(nullptr);
        result["beyond_pi"] = r.beyond_pi;
      }
    } else if (oracle_cmd->parsed()) {
      const Surface surface = parse_surface(surface_spec);
      const SurfacePoint a = parse_point_on(a_spec, surface, degrees);
      const SurfacePoint b = parse_point_on(b_spec, surface, degrees);
      const SurfaceMesh mesh = build_mesh(surface, mesh_res);
      if (!obj_path.empty()) {
        std::ofstream f(obj_path);
        if (!f) throw Error(ErrorCode::ParseError, "cannot write '" + obj_path + "'");
        write_obj(mesh, f);
      }
      const MeshDistance d = mesh_distance(mesh, a, b);
      result["surface"] = to_json(surface);
      result["A"] = to_json(a, surface);
      result["B"] = to_json(b, surface);
      result["resolution"] = mesh_res;
      result["vertices"] = mesh.vertex_count();
      result["mesh_distance"] = d.length;
      result["snap_error"] = d.snap_error;
      result["settled"] = d.settled;
    } else if (flat_cmd->parsed()) {
      const Surface surface = parse_surface(surface_spec);
      std::vector<RimTangency> t{{Face::Rim1, tangency}};
      if (surface.is_can()) t.push_back({Face::Rim2, tangency});
      const FlatModel model = unroll(surface, t);
      if (!svg_path.empty()) detail::write_file(svg_path, to_svg(model));
      result["surface"] = to_json(surface);
      result["side_width"] = model.side_width();
      Json disks = Json::array();
      for (const auto& d : model.disks)
        disks.push_back({{"face", to_string(d.disk)}, {"tangency", d.tangency}, {"center", to_json(d.center)}});
      result["disks"] = disks;
    } else if (roul->parsed()) {
      const RouletteTrace trace = radius ? RouletteTrace::epicycloid(*radius) : RouletteTrace::cycloid();
      result["base"] = radius ? "circle" : "line";
      if (radius) {
        result["radius"] = *radius;
        result["r_max"] = max_radius_of_curvature(*radius);
      }
      result["period"] = trace.period();
      if (roll) {
        result["t"] = *roll;
        result["point"] = to_json(trace_point(trace, *roll));
        result["curvature"] = roulette_curvature(trace, *roll);
        result["normal_line_defect"] = normal_line_defect(trace, *roll);
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::ParseError ? 2 : 3;
  }
  out << result.dump(2) << '\n';
  return 0;
}

}  // namespace cangeo
