// One-dimensional capillary split profiles: closed-form solutions of
// (u'/sqrt(1+u'^2))' = H on [0, t_max) with u(0) = b1, u'(0) = -c1,
// their tilted two-variable embeddings, and an independent slope-ODE
// integration used to cross-validate the closed forms.
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "capgraph/common.hpp"
#include "capgraph/rk45.hpp"

namespace capgraph {

struct ProfilePoint {
  double u = 0.0;
  double du = 0.0;  // u'(t)
  double W = 1.0;   // sqrt(1 + u'^2)
};

// u(t) = b1 - c1 t                                  if H = 0  (c1 < 0)
// u(t) = b1 + (1/H)(1/sqrt(1+c1^2) - sqrt(1-w^2)),  w(t) = H t - c1/sqrt(1+c1^2)
// The natural domain ends where the radicand 1-w^2 reaches zero (H > 0)
// or where the slope vanishes (H < 0).
struct CapillaryProfile {
  double H = 0.0;
  double b1 = 0.0;
  double c1 = -1.0;
  double t_max = kInf;
  double gamma = 0.0;  // contact angle, tan(gamma) = |c1|

  CapillaryProfile(double H_, double b1_, double c1_) : H(H_), b1(b1_), c1(c1_) {
    if (H == 0.0 && !(c1 < 0.0)) throw data_error("profile: H = 0 requires c1 < 0");
    if (H < 0.0 && !(c1 < 0.0)) throw data_error("profile: H < 0 requires c1 < 0");
    if (H > 0.0 && c1 > 0.0) throw data_error("profile: H > 0 requires c1 <= 0");
    const double wc = c1 / std::sqrt(1.0 + c1 * c1);
    if (H > 0.0)
      t_max = (1.0 + wc) / H;
    else if (H < 0.0)
      t_max = -wc / -H;  // slope hits zero: w(t) = 0
    else
      t_max = kInf;
    gamma = std::atan(std::abs(c1));
  }
};

// Analytic continuation of the closed form to a neighborhood of [0, t_max];
// needed when a grid's ghost layer extends past the profile's chart.
inline ProfilePoint profile_eval_extended(const CapillaryProfile& p, double t) {
  ProfilePoint out;
  if (p.H == 0.0) {
    out.u = p.b1 - p.c1 * t;
    out.du = -p.c1;
    out.W = std::sqrt(1.0 + p.c1 * p.c1);
    return out;
  }
  const double w0 = -p.c1 / std::sqrt(1.0 + p.c1 * p.c1);
  const double w = p.H * t + w0;
  if (!(std::abs(w) < 1.0)) throw data_error("profile_eval_extended: t past the chart of the profile");
  const double rad = std::sqrt(1.0 - w * w);
  out.u = p.b1 + (std::sqrt(1.0 - w0 * w0) - rad) / p.H;
  out.du = w / rad;
  out.W = 1.0 / rad;
  return out;
}

inline ProfilePoint profile_eval(const CapillaryProfile& p, double t) {
  if (!(t >= 0.0) || !(t <= p.t_max)) throw data_error("profile_eval: t outside [0, t_max]");
  ProfilePoint out;
  if (p.H == 0.0) {
    out.u = p.b1 - p.c1 * t;
    out.du = -p.c1;
    out.W = std::sqrt(1.0 + p.c1 * p.c1);
    return out;
  }
  const double w0 = -p.c1 / std::sqrt(1.0 + p.c1 * p.c1);
  const double w = p.H * t + w0;
  const double rad = std::sqrt(std::max(0.0, 1.0 - w * w));
  out.u = p.b1 + (std::sqrt(1.0 - w0 * w0) - rad) / p.H;
  out.du = w / rad;  // +-inf at the H > 0 endpoint
  out.W = 1.0 / rad;
  return out;
}

// Max residual of (u'/W)' - H over n_samples points of [0, 0.999 min(t_max, t_cap)],
// with the flux u'/W reconstructed from the closed form and differentiated
// by a five-point stencil.
inline double profile_residual(const CapillaryProfile& p, int n_samples, double t_cap = 10.0) {
  if (n_samples < 2) throw data_error("profile_residual: need n_samples >= 2");
  const double cap = std::min(p.t_max, t_cap);
  const double span = 0.999 * cap;
  double worst = 0.0;
  for (int k = 0; k < n_samples; ++k) {
    const double t = span * (k + 0.5) / n_samples;
    double h = 2e-3 * span;
    h = std::min(h, 0.4 * t);
    h = std::min(h, 0.4 * (cap - t));
    double w[5];
    for (int j = 0; j < 5; ++j) {
      const ProfilePoint v = profile_eval(p, t + (j - 2) * h);
      w[j] = v.du / v.W;
    }
    const double d1 = (w[0] - 8 * w[1] + 8 * w[3] - w[4]) / (12 * h);
    worst = std::max(worst, std::abs(d1 - p.H));
  }
  return worst;
}

struct OdeProfile {
  std::vector<double> t, u, beta;  // beta = u'
  double t_max = kInf;
  bool singular_start = false;
};

// Integrates the slope equation d beta/du = H (1+beta^2)^{3/2} / beta
// together with dt/du = 1/beta from u = b1, beta = |c1|; the endpoint
// singularities (beta -> infinity for H > 0, beta -> 0 for H < 0) are
// handled by switching the independent variable, which pins down t_max.
inline OdeProfile profile_from_ode(double H, double b1, double c1) {
  CapillaryProfile guard(H, b1, c1);  // validates the sign constraints
  OdeProfile out;

  if (H == 0.0) {
    const double beta = -c1;
    out.t_max = kInf;
    for (int k = 0; k <= 400; ++k) {
      const double t = 10.0 * k / 400.0;
      out.t.push_back(t);
      out.u.push_back(b1 + beta * t);
      out.beta.push_back(beta);
    }
    return out;
  }

  double u0 = b1, beta0 = std::abs(c1), t0 = 0.0;
  if (c1 == 0.0) {
    // H > 0 start from zero slope: beta^2 = 2H s + 3 H^2 s^2 + O(s^3), s = u - b1.
    out.singular_start = true;
    const double s = 1e-9 / std::max(1.0, H);
    beta0 = std::sqrt(2.0 * H * s + 3.0 * H * H * s * s);
    t0 = std::sqrt(2.0 * s / H) - 0.5 * std::sqrt(H / 2.0) * std::pow(s, 1.5);
    u0 = b1 + s;
  }

  const double beta_hi = 1e6, beta_lo = 1e-4;
  const double u_stop_guard = u0 + 1e6;
  auto rhs = [H](double, const std::array<double, 2>& y) {
    const double b = y[0];
    const double c = std::pow(1.0 + b * b, 1.5);
    return std::array<double, 2>{H * c / b, 1.0 / b};
  };
  auto stop = [&](double, const std::array<double, 2>& y) {
    return H > 0.0 ? y[0] >= beta_hi : y[0] <= beta_lo;
  };
  auto path = rk45_integrate<2>(rhs, u0, std::array<double, 2>{beta0, t0}, u_stop_guard,
                                1e-10, 1e-12, stop);
  if (!path.stopped_early) throw convergence_error("profile_from_ode: slope never reached the swap threshold");
  for (size_t k = 0; k < path.x.size(); ++k) {
    out.u.push_back(path.x[k]);
    out.beta.push_back(path.y[k][0]);
    out.t.push_back(path.y[k][1]);
  }

  const double u_end = path.x.back();
  const double beta_end = path.y.back()[0];
  const double t_end = path.y.back()[1];
  if (H < 0.0) {
    // Tail in beta: ds/dbeta = beta / (H (1+b^2)^{3/2}), dt/dbeta = 1/(H (1+b^2)^{3/2}).
    auto tail = [H](double b, const std::array<double, 2>&) {
      const double c = H * std::pow(1.0 + b * b, 1.5);
      return std::array<double, 2>{b / c, 1.0 / c};
    };
    auto tp = rk45_integrate<2>(tail, beta_end, std::array<double, 2>{u_end, t_end}, 0.0, 1e-10, 1e-14);
    for (size_t k = 1; k < tp.x.size(); ++k) {
      out.beta.push_back(tp.x[k]);
      out.u.push_back(tp.y[k][0]);
      out.t.push_back(tp.y[k][1]);
    }
    out.t_max = tp.y.back()[1];
  } else {
    // Tail in psi = 1/beta down to 0: ds/dpsi = -1/(H (psi^2+1)^{3/2}),
    // dt/dpsi = -psi/(H (psi^2+1)^{3/2}).
    auto tail = [H](double psi, const std::array<double, 2>&) {
      const double c = H * std::pow(psi * psi + 1.0, 1.5);
      return std::array<double, 2>{-1.0 / c, -psi / c};
    };
    auto tp = rk45_integrate<2>(tail, 1.0 / beta_end, std::array<double, 2>{u_end, t_end}, 0.0,
                                1e-10, 1e-14);
    for (size_t k = 1; k < tp.x.size(); ++k) {
      const double psi = tp.x[k];
      out.beta.push_back(psi > 0.0 ? 1.0 / psi : kInf);
      out.u.push_back(tp.y[k][0]);
      out.t.push_back(tp.y[k][1]);
    }
    out.t_max = tp.y.back()[1];
  }
  return out;
}

enum class TiltVariant { epigraph, slab };

// Two-variable tilted solutions over the region above / between lines
// tau = a0 s + a1 (+ width): u(tau, s) = profile(t) with
// t = (tau - a0 s - a1)/sqrt(1 + a0^2).
struct TiltedProfile {
  double b = 0.0;
  double c = -1.0;
  double a0 = 0.0;
  double a1 = 0.0;
  double H = 0.0;
  TiltVariant variant = TiltVariant::epigraph;
  double width = kInf;  // slab variant: t ranges over [0, width]

  CapillaryProfile straight() const { return CapillaryProfile(H, b, c); }
};

struct TiltedPoint {
  double u = 0.0;
  double u_tau = 0.0;
  double u_s = 0.0;
  double W = 1.0;
  double t = 0.0;  // profile coordinate of (tau, s)
};

inline TiltedPoint tilted_eval(const TiltedProfile& p, double tau, double s) {
  const double q = std::sqrt(1.0 + p.a0 * p.a0);
  const double t = (tau - p.a0 * s - p.a1) / q;
  const CapillaryProfile line = p.straight();
  const double t_hi = p.variant == TiltVariant::slab ? std::min(p.width, line.t_max) : line.t_max;
  if (!(t >= 0.0) || !(t <= t_hi)) throw data_error("tilted_eval: point outside region");
  const ProfilePoint pt = profile_eval(line, t);
  TiltedPoint out;
  out.u = pt.u;
  out.u_tau = pt.du / q;
  out.u_s = -p.a0 * pt.du / q;
  out.W = pt.W;  // |Du|^2 = u_tau^2 + u_s^2 = du^2
  out.t = t;
  return out;
}

}  // namespace capgraph
