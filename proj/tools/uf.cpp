#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "uf/geometry.hpp"
#include "uf/json_io.hpp"
#include "uf/potential.hpp"
#include "uf/region.hpp"
#include "uf/svg.hpp"
#include "uf/unfolded.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;   // a checked inclusion failed
constexpr int kExitSchema = 2;      // bad input files or specs
constexpr int kExitComputation = 3;

std::string levels_json(const uf::CapLevelProfile& prof, const uf::ConvexPolygon& outer,
                        int directions, const std::string& extra) {
  std::string out = "{\"directions\":" + std::to_string(directions);
  if (!extra.empty()) out += "," + extra;
  out += ",\"levels\":[";
  for (std::size_t i = 0; i < prof.entries.size(); ++i) {
    const uf::CapLevel& e = prof.entries[i];
    if (i) out += ",";
    out += "{\"angle\":" + uf::format_double(e.v.angle()) +
           ",\"lower\":" + uf::format_double(e.lower) +
           ",\"upper\":" + uf::format_double(e.upper) + "}";
  }
  out += "],\"outer_polygon\":[";
  for (std::size_t i = 0; i < outer.vertices().size(); ++i) {
    if (i) out += ",";
    out += uf::format_point(outer.vertices()[i].x(), outer.vertices()[i].y());
  }
  out += "]}\n";
  return out;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    uf::write_text_file(out_path, text);
  }
}

uf::Direction parse_direction(const std::string& spec) {
  const auto comma = spec.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("expected --v ux,uy");
  std::size_t u1 = 0, u2 = 0;
  const std::string a = spec.substr(0, comma);
  const std::string b = spec.substr(comma + 1);
  const double ux = std::stod(a, &u1);
  const double uy = std::stod(b, &u2);
  if (u1 != a.size() || u2 != b.size()) throw std::invalid_argument("expected --v ux,uy");
  return uf::Direction::of(uf::Vec2(ux, uy));
}

struct CommonArgs {
  std::string region_path;
  int m = 720;
  double tol = 1e-9;
  std::string out_path;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"minimal unfolded regions of compact planar sets"};
  app.require_subcommand(1);

  CommonArgs common;
  std::string svg_path;
  std::string v_spec = "0,1";
  std::string kernel_spec = "log";
  std::string mode_spec = "min";
  double delta = 0.0;
  double level_b = 0.0;
  double pitch_h = 1e-3;
  bool expect_equality = false;

  auto add_region = [&](CLI::App* cmd) {
    cmd->add_option("--region", common.region_path, "region JSON file")->required();
    cmd->add_option("--out", common.out_path, "write the report JSON here instead of stdout");
  };

  CLI::App* compute = app.add_subcommand("compute", "outer approximation of Uf(region)");
  add_region(compute);
  compute->add_option("--m", common.m, "uniform direction count (>= 8)");
  compute->add_option("--tol", common.tol, "cap-level tolerance");
  compute->add_option("--svg", svg_path, "also draw region, hull, Uf and centroid");

  CLI::App* cap = app.add_subcommand("cap-level", "cap level in one direction");
  add_region(cap);
  cap->add_option("--v", v_spec, "direction ux,uy")->required();
  cap->add_option("--tol", common.tol, "cap-level tolerance");

  CLI::App* check = app.add_subcommand("check", "inclusion checks");
  check->require_subcommand(1);
  CLI::App* chull = check->add_subcommand("convex-hull", "Uf(conv) inside Uf(region)");
  add_region(chull);
  chull->add_option("--m", common.m, "uniform direction count");
  chull->add_option("--tol", common.tol, "inclusion tolerance");
  CLI::App* cpar = check->add_subcommand("parallel", "Uf(region_delta) inside Uf(region)");
  add_region(cpar);
  cpar->add_option("--delta", delta, "parallel body radius")->required();
  cpar->add_option("--m", common.m, "uniform direction count");
  cpar->add_option("--tol", common.tol, "inclusion tolerance");
  cpar->add_flag("--expect-equality", expect_equality,
                 "fail unless the levels agree two-sidedly (convex input)");
  CLI::App* ccap = check->add_subcommand("conv-cap", "conv(cap) inside cap(conv)");
  add_region(ccap);
  ccap->add_option("--v", v_spec, "cap direction ux,uy")->required();
  ccap->add_option("--b", level_b, "cap level")->required();

  CLI::App* pot = app.add_subcommand("potential", "potential extremum report");
  add_region(pot);
  pot->add_option("--kernel", kernel_spec, "log | riesz:<alpha> | poisson:<t>")->required();
  pot->add_option("--mode", mode_spec, "min | max")->check(CLI::IsMember({"min", "max"}));
  pot->add_option("--m", common.m, "uniform direction count for the Uf test");

  CLI::App* oracle = app.add_subcommand("oracle", "brute-force cap-level sweep");
  oracle->set_help_flag("--help", "print help");  // frees --h for the pitch
  add_region(oracle);
  oracle->add_option("--h", pitch_h, "line sampling pitch")->required();
  oracle->add_option("--m", common.m, "uniform direction count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitSchema;
  }

  try {
    const uf::Region region = uf::load_region(common.region_path);

    if (compute->parsed()) {
      const uf::UfApproximation uf_approx = uf::unfolded_region(region, common.m, common.tol);
      emit(levels_json(uf_approx.profile, uf_approx.outer, uf_approx.directions, ""),
           common.out_path);
      if (!svg_path.empty()) {
        uf::FigureSpec fig;
        fig.region = &region;
        const uf::HullSandwich hull = uf::region_convex_hull(region);
        fig.hull = &hull.outer;
        fig.unfolded = &uf_approx.outer;
        std::optional<uf::Vec2> c;
        try {
          c = region.centroid();
        } catch (const std::domain_error&) {
        }
        fig.centroid = c;
        uf::write_figure(svg_path, fig);
      }
      return kExitOk;
    }

    if (cap->parsed()) {
      const uf::Direction v = parse_direction(v_spec);
      const uf::CapLevel level = uf::cap_level_exact(region, v, common.tol);
      std::string out = "{\"v\":" + uf::format_point(v.x(), v.y()) +
                        ",\"angle\":" + uf::format_double(v.angle()) +
                        ",\"lower\":" + uf::format_double(level.lower) +
                        ",\"upper\":" + uf::format_double(level.upper) +
                        ",\"support\":" + uf::format_double(region.support(v)) + "}\n";
      emit(out, common.out_path);
      return kExitOk;
    }

    if (chull->parsed()) {
      const uf::TheoremReport rep = uf::check_theorem_convex_hull(region, common.m, common.tol);
      std::string out = std::string("{\"check\":\"convex-hull\",\"holds\":") +
                        (rep.holds ? "true" : "false") +
                        ",\"min_margin\":" + uf::format_double(rep.min_margin) +
                        ",\"directions\":" + std::to_string(rep.per_direction.size()) + "}\n";
      emit(out, common.out_path);
      return rep.holds ? kExitOk : kExitViolation;
    }

    if (cpar->parsed()) {
      const uf::TheoremReport rep =
          uf::check_theorem_parallel_body(region, delta, common.m, common.tol);
      bool ok = rep.holds;
      if (expect_equality && !(rep.convex_equality && *rep.convex_equality)) ok = false;
      std::string out = std::string("{\"check\":\"parallel\",\"holds\":") +
                        (rep.holds ? "true" : "false") +
                        ",\"min_margin\":" + uf::format_double(rep.min_margin) +
                        ",\"max_equality_gap\":" + uf::format_double(rep.max_equality_gap);
      if (rep.convex_equality) {
        out += std::string(",\"convex_equality\":") + (*rep.convex_equality ? "true" : "false");
      }
      out += ",\"directions\":" + std::to_string(rep.per_direction.size()) + "}\n";
      emit(out, common.out_path);
      return ok ? kExitOk : kExitViolation;
    }

    if (ccap->parsed()) {
      const uf::Direction v = parse_direction(v_spec);
      const uf::ConvCapReport rep = uf::check_conv_cap_inclusion(region, v, level_b);
      std::string out = std::string("{\"check\":\"conv-cap\",\"subset_holds\":") +
                        (rep.subset_holds ? "true" : "false") +
                        ",\"strict\":" + (rep.strict ? "true" : "false") +
                        ",\"area_conv_of_cap\":" + uf::format_double(rep.area_conv_of_cap) +
                        ",\"area_cap_of_conv\":" + uf::format_double(rep.area_cap_of_conv) +
                        ",\"margin\":" + uf::format_double(rep.margin) + "}\n";
      emit(out, common.out_path);
      return rep.subset_holds ? kExitOk : kExitViolation;
    }

    if (pot->parsed()) {
      const uf::Kernel kernel = uf::Kernel::parse(kernel_spec);
      const uf::ExtremumMode mode =
          mode_spec == "min" ? uf::ExtremumMode::kMin : uf::ExtremumMode::kMax;
      const uf::UfApproximation uf_approx = uf::unfolded_region(region, common.m, 1e-9);
      uf::QuadratureSpec quad;
      const uf::ExtremumReport rep = uf::find_extremum(region, kernel, mode, quad, &uf_approx);
      std::string out = "{\"kernel\":\"" + kernel_spec + "\",\"mode\":\"" + mode_spec +
                        "\",\"point\":" + uf::format_point(rep.point.x(), rep.point.y()) +
                        ",\"value\":" + uf::format_double(rep.value) + ",\"in_uf\":" +
                        (rep.in_uf ? "true" : "false") +
                        ",\"margin\":" + uf::format_double(rep.margin) +
                        ",\"on_hull_boundary\":" + (rep.on_hull_boundary ? "true" : "false") +
                        "}\n";
      emit(out, common.out_path);
      return (rep.in_uf || rep.on_hull_boundary) ? kExitOk : kExitViolation;
    }

    if (oracle->parsed()) {
      if (!(pitch_h > 0.0)) throw std::invalid_argument("pitch must be positive");
      if (common.m < 8) throw std::invalid_argument("m must be >= 8");
      std::vector<double> angles;
      for (int k = 0; k < common.m; ++k) {
        angles.push_back(2.0 * 3.14159265358979323846 * k / common.m);
      }
      uf::CapLevelProfile prof;
      prof.direction_count = common.m;
      for (double a : angles) {
        prof.entries.push_back(uf::cap_level_oracle(region, uf::Direction::from_angle(a), pitch_h));
      }
      std::vector<uf::HalfPlane> planes;
      for (const uf::CapLevel& e : prof.entries) planes.emplace_back(e.v, e.upper);
      const auto outer = uf::halfplane_intersection(planes);
      if (!outer) throw std::runtime_error("oracle outer approximation is empty");
      emit(levels_json(prof, *outer, common.m, "\"h\":" + uf::format_double(pitch_h)),
           common.out_path);
      return kExitOk;
    }
  } catch (const uf::RegionSchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitComputation;
  }
  return kExitComputation;
}
