#pragma once

#include <optional>
#include <string>
#include <vector>

#include "uf/geometry.hpp"
#include "uf/region.hpp"
#include "uf/unfolded.hpp"

namespace uf {

// Kernels monotone in the distance: K(r) integrated over the region.
struct Kernel {
  enum Kind { kLog, kRiesz, kPoisson } kind = kLog;
  double alpha = 0.0;  // Riesz exponent, > 0
  double t = 0.0;      // Poisson parameter, > 0

  static Kernel log_kernel() { return Kernel{kLog, 0.0, 0.0}; }
  static Kernel riesz(double alpha);
  static Kernel poisson(double t);
  // Spec format: log | riesz:<alpha> | poisson:<t>
  static Kernel parse(const std::string& spec);
  std::string describe() const;

  double operator()(double r) const;
  bool singular_at_zero() const { return kind == kLog || (kind == kRiesz && alpha < 1.0); }
};

struct QuadratureSpec {
  int degree = 7;                     // >= 3
  double max_cell_diameter = 0.0;     // 0: auto (diameter / 24)
  double singular_split_radius = 0.0; // 0: auto (diameter / 1e4)
  int disc_segments = 256;            // polygonization of disc primitives

  void validate() const;
};

struct PotentialValue {
  double value = 0.0;
  double error_estimate = 0.0;  // absolute, from adaptive refinement
  double area_defect = 0.0;     // polygonized domain area minus exact area
};

// Integral of kernel(|x - y|) dy over the region (quadrature over the
// polygonized union; the log singularity is split out and refined).
PotentialValue potential_value(const Region& region, const Kernel& kernel, const Vec2& x,
                               const QuadratureSpec& quad = {});

enum class ExtremumMode { kMin, kMax };

struct ExtremumReport {
  Vec2 point = Vec2::Zero();
  double value = 0.0;
  ExtremumMode mode = ExtremumMode::kMin;
  bool in_uf = false;
  double margin = 0.0;  // signed distance of point into the Uf approximation
  bool on_hull_boundary = false;
};

// Coarse grid over the outer convex hull followed by simplex refinement.
// Pass the Uf approximation when available; otherwise it is computed at
// m = 720.
ExtremumReport find_extremum(const Region& region, const Kernel& kernel, ExtremumMode mode,
                             const QuadratureSpec& quad = {},
                             const UfApproximation* uf = nullptr);

// Reusable quadrature mesh over the polygonized union.
class QuadratureDomain {
 public:
  QuadratureDomain(const Region& region, const QuadratureSpec& spec);

  double integrate(const Kernel& kernel, const Vec2& x, double* error_estimate = nullptr) const;
  // Fixed-node evaluation, no singular refinement; used for grid scoring.
  double integrate_fast(const Kernel& kernel, const Vec2& x) const;
  double area_defect() const { return area_defect_; }
  double polygon_area() const { return polygon_area_; }

 private:
  struct Tri {
    Vec2 a, b, c;
  };
  std::vector<Tri> tris_;
  Eigen::MatrixX2d nodes_;
  Eigen::VectorXd weights_;
  QuadratureSpec spec_;
  double area_defect_ = 0.0;
  double polygon_area_ = 0.0;
  double diameter_ = 0.0;
};

}  // namespace uf
