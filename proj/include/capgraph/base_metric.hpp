// Base Riemannian metrics on model domains: Euclidean space (Cartesian
// chart), the hyperbolic plane (polar chart), and flat products (t, x).
// Supplies the metric, Christoffel symbols and the Ricci lower-bound
// constant kappa with Ric >= -(dim-1) kappa^2.
#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "capgraph/common.hpp"
#include "capgraph/linalg.hpp"

namespace capgraph {

enum class MetricKind { euclidean, hyperbolic, product_line };

inline constexpr int kMaxDim = 3;
inline constexpr double kPolarInnerCutoff = 1e-8;  // excludes the r=0 coordinate singularity

struct MetricData {
  int dim = 2;
  double sigma[kMaxDim][kMaxDim] = {};         // sigma_ij
  double sigma_inv[kMaxDim][kMaxDim] = {};     // sigma^ij
  double gamma[kMaxDim][kMaxDim][kMaxDim] = {};  // gamma[k][i][j] = gamma^k_ij
  double sqrt_det = 1.0;
};

struct BaseMetric {
  int dim = 2;
  MetricKind kind = MetricKind::euclidean;
  double kappa = 0.0;  // hyperbolic curvature is -kappa^2

  static BaseMetric euclidean(int m) {
    if (m < 2 || m > kMaxDim) throw data_error("euclidean: dim must be in [2," + std::to_string(kMaxDim) + "]");
    return {m, MetricKind::euclidean, 0.0};
  }
  // Hyperbolic plane, polar chart (r, theta), metric diag(1, (sinh(kr)/k)^2).
  static BaseMetric hyperbolic(double kappa, int m = 2) {
    if (m != 2) throw data_error("hyperbolic: only the 2-d polar chart is supported");
    if (!(kappa > 0.0)) throw data_error("hyperbolic: kappa must be positive");
    return {2, MetricKind::hyperbolic, kappa};
  }
  // Flat product I x R with coordinates (t, x).
  static BaseMetric product_line() { return {2, MetricKind::product_line, 0.0}; }

  double ricci_lower_bound() const { return kind == MetricKind::hyperbolic ? kappa : 0.0; }
};

inline MetricData metric_eval(const BaseMetric& metric, const double* point) {
  MetricData out;
  out.dim = metric.dim;
  switch (metric.kind) {
    case MetricKind::euclidean:
    case MetricKind::product_line:
      for (int i = 0; i < metric.dim; ++i) {
        out.sigma[i][i] = 1.0;
        out.sigma_inv[i][i] = 1.0;
      }
      out.sqrt_det = 1.0;
      return out;
    case MetricKind::hyperbolic: {
      const double r = point[0];
      if (!(r >= kPolarInnerCutoff)) throw data_error("metric_eval: polar chart needs r >= 1e-8");
      const double k = metric.kappa;
      const double f = std::sinh(k * r) / k;
      const double fp = std::cosh(k * r);
      out.sigma[0][0] = 1.0;
      out.sigma[1][1] = f * f;
      out.sigma_inv[0][0] = 1.0;
      out.sigma_inv[1][1] = 1.0 / (f * f);
      out.gamma[0][1][1] = -f * fp;          // gamma^r_{theta theta}
      out.gamma[1][0][1] = fp / f;           // gamma^theta_{r theta}
      out.gamma[1][1][0] = fp / f;
      out.sqrt_det = f;
      return out;
    }
  }
  throw data_error("metric_eval: unknown metric kind");
}

inline MetricData metric_eval(const BaseMetric& metric, const std::vector<double>& point) {
  if (static_cast<int>(point.size()) != metric.dim)
    throw data_error("metric_eval: point dimension mismatch");
  return metric_eval(metric, point.data());
}

enum class DomainShape { slab, ball, strip, half_space };

struct BoundaryComponent {
  std::string label;
  int axis = 0;   // chart axis whose level set carries the component
  int side = -1;  // -1: outward normal is -e_axis (lower end), +1: upper end
};

// A model domain: the base metric plus one of the supported shapes and
// its labeled boundary components with outward normal descriptors.
struct ModelDomain {
  BaseMetric base;
  DomainShape shape = DomainShape::strip;
  double extent0 = 0.0;  // slab/strip: T; ball: radius R
  std::vector<BoundaryComponent> boundary;

  static ModelDomain slab(const BaseMetric& b, double T) {
    if (!(T > 0.0)) throw data_error("slab: T must be positive");
    ModelDomain d{b, DomainShape::slab, T, {}};
    d.boundary.push_back({"t=0", 0, -1});
    d.boundary.push_back({"t=T", 0, +1});
    return d;
  }
  static ModelDomain strip(const BaseMetric& b, double T) {
    ModelDomain d = slab(b, T);
    d.shape = DomainShape::strip;
    return d;
  }
  static ModelDomain ball(const BaseMetric& b, double R) {
    if (!(R > 0.0)) throw data_error("ball: radius must be positive");
    ModelDomain d{b, DomainShape::ball, R, {}};
    d.boundary.push_back({"r=R", 0, +1});
    return d;
  }
  static ModelDomain half_space(const BaseMetric& b) {
    ModelDomain d{b, DomainShape::half_space, kInf, {}};
    d.boundary.push_back({"t=0", 0, -1});
    return d;
  }
};

}  // namespace capgraph
