// Damped Newton solver for div(Du / sqrt(1+|Du|^2)) = H with Dirichlet
// data on 1-D slabs and on balls (radially symmetric reduction
// (r^{m-1} u'/W)' = H r^{m-1}), plus the gradient-estimate verdict
// sup_interior W e^{-Cu} <= max(A, boundary max) on solved fields.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "capgraph/base_metric.hpp"
#include "capgraph/common.hpp"
#include "capgraph/fd.hpp"
#include "capgraph/linalg.hpp"
#include "capgraph/parameter_gate.hpp"

namespace capgraph {

enum class OperatorForm { divergence, expanded };

struct BvpSpec {
  ModelDomain domain;      // slab(0,T) or ball(R)
  int m = 2;               // ambient dimension
  double H = 0.0;
  double bc0 = 0.0;        // slab: u(0); unused for ball
  double bc1 = 0.0;        // slab: u(T); ball: u(R)
  int grid_n = 64;
  OperatorForm form = OperatorForm::divergence;

  void validate() const {
    if (grid_n < 16) throw data_error("BvpSpec: grid_n must be >= 16");
    if (m < 2) throw data_error("BvpSpec: m must be >= 2");
    if (domain.shape != DomainShape::slab && domain.shape != DomainShape::ball)
      throw data_error("BvpSpec: solver supports slab and ball domains");
  }
};

struct GradientBoundReport {
  double z_interior_max = 0.0;
  double z_boundary_max = 0.0;
  double A_used = 1.0;
  double C_used = 0.0;
  double slack = 0.0;  // max(A, boundary) + tol - interior
  bool verdict = false;
};

struct SolveReport {
  std::vector<double> coord;  // t or r per node
  std::vector<double> u;
  bool converged = false;
  int newton_iters = 0;
  double final_residual = kInf;
  std::vector<double> convergence_history;
  std::string failure_reason;
  int m = 2;
  double H = 0.0;
  DomainShape shape = DomainShape::slab;
};

namespace solver_detail {

inline double flux(double p) { return p / std::sqrt(1.0 + p * p); }
inline double flux_d(double p) { return std::pow(1.0 + p * p, -1.5); }

// Residual F(u) and tridiagonal Jacobian over the unknown nodes.
// Slab: unknowns are nodes 1..n-2. Ball: unknowns are 0..n-2 with the
// r = 0 symmetry cell and Dirichlet data at r = R.
struct System {
  const BvpSpec& spec;
  double h;
  int n;
  int lo;  // first unknown node index

  explicit System(const BvpSpec& s) : spec(s) {
    n = s.grid_n;
    const double len = s.domain.extent0;
    h = len / (n - 1);
    lo = s.domain.shape == DomainShape::slab ? 1 : 0;
  }

  double coord(int i) const { return i * h; }

  void residual(const std::vector<double>& u, std::vector<double>& F) const {
    const int m = spec.m;
    F.assign(n, 0.0);
    if (spec.domain.shape == DomainShape::slab) {
      if (spec.form == OperatorForm::divergence) {
        for (int i = 1; i <= n - 2; ++i) {
          const double pp = (u[i + 1] - u[i]) / h;
          const double pm = (u[i] - u[i - 1]) / h;
          F[i] = (flux(pp) - flux(pm)) / h - spec.H;
        }
      } else {
        for (int i = 1; i <= n - 2; ++i) {
          const double d1 = (u[i + 1] - u[i - 1]) / (2 * h);
          const double d2 = (u[i + 1] - 2 * u[i] + u[i - 1]) / (h * h);
          F[i] = d2 * std::pow(1.0 + d1 * d1, -1.5) - spec.H;
        }
      }
      return;
    }
    // ball, radial reduction
    if (spec.form == OperatorForm::divergence) {
      for (int i = 0; i <= n - 2; ++i) {
        const double rp = (i + 0.5) * h;
        if (i == 0) {
          // cell [0, h/2]: boundary flux r^{m-1} f(u') over cell volume r^m / m
          const double pp = (u[1] - u[0]) / h;
          F[0] = m * flux(pp) / rp - spec.H;
          continue;
        }
        const double rm = (i - 0.5) * h;
        const double pp = (u[i + 1] - u[i]) / h;
        const double pm = (u[i] - u[i - 1]) / h;
        const double wp = std::pow(rp, m - 1), wm = std::pow(rm, m - 1);
        const double vol = (std::pow(rp, m) - std::pow(rm, m)) / m;  // = h * rbar^{m-1}
        F[i] = (wp * flux(pp) - wm * flux(pm)) / vol - spec.H;
      }
      return;
    }
    for (int i = 0; i <= n - 2; ++i) {
      if (i == 0) {
        // ghost symmetry u[-1] = u[1]: div = m u''(0) at the center
        F[0] = 2.0 * m * (u[1] - u[0]) / (h * h) - spec.H;
        continue;
      }
      const double d1 = (u[i + 1] - u[i - 1]) / (2 * h);
      const double d2 = (u[i + 1] - 2 * u[i] + u[i - 1]) / (h * h);
      const double W2 = 1.0 + d1 * d1;
      F[i] = d2 * std::pow(W2, -1.5) + (m - 1) * d1 / (coord(i) * std::sqrt(W2)) - spec.H;
    }
  }

  // Tridiagonal Jacobian rows for unknowns lo..n-2 (a: sub, b: diag, c: super).
  void jacobian(const std::vector<double>& u, std::vector<double>& a, std::vector<double>& b,
                std::vector<double>& c) const {
    const int m = spec.m;
    const int k = n - 1 - lo;  // unknown count
    a.assign(k, 0.0);
    b.assign(k, 0.0);
    c.assign(k, 0.0);
    auto row = [&](int i) { return i - lo; };
    if (spec.domain.shape == DomainShape::slab) {
      for (int i = 1; i <= n - 2; ++i) {
        if (spec.form == OperatorForm::divergence) {
          const double pp = (u[i + 1] - u[i]) / h;
          const double pm = (u[i] - u[i - 1]) / h;
          const double dp = flux_d(pp) / (h * h), dm = flux_d(pm) / (h * h);
          a[row(i)] = dm;
          b[row(i)] = -dp - dm;
          c[row(i)] = dp;
        } else {
          const double d1 = (u[i + 1] - u[i - 1]) / (2 * h);
          const double d2 = (u[i + 1] - 2 * u[i] + u[i - 1]) / (h * h);
          const double W2 = 1.0 + d1 * d1;
          const double A2 = std::pow(W2, -1.5);
          const double dd1 = -3.0 * d2 * d1 * std::pow(W2, -2.5);
          a[row(i)] = A2 / (h * h) - dd1 / (2 * h);
          b[row(i)] = -2.0 * A2 / (h * h);
          c[row(i)] = A2 / (h * h) + dd1 / (2 * h);
        }
      }
      return;
    }
    for (int i = 0; i <= n - 2; ++i) {
      if (i == 0) {
        if (spec.form == OperatorForm::divergence) {
          const double rp = 0.5 * h;
          const double pp = (u[1] - u[0]) / h;
          const double d = m * flux_d(pp) / (rp * h);
          b[0] = -d;
          c[0] = d;
        } else {
          b[0] = -2.0 * m / (h * h);
          c[0] = 2.0 * m / (h * h);
        }
        continue;
      }
      if (spec.form == OperatorForm::divergence) {
        const double rp = (i + 0.5) * h, rm = (i - 0.5) * h;
        const double pp = (u[i + 1] - u[i]) / h;
        const double pm = (u[i] - u[i - 1]) / h;
        const double wp = std::pow(rp, m - 1), wm = std::pow(rm, m - 1);
        const double vol = (std::pow(rp, m) - std::pow(rm, m)) / m;
        const double dp = wp * flux_d(pp) / (vol * h), dm = wm * flux_d(pm) / (vol * h);
        a[row(i)] = dm;
        b[row(i)] = -dp - dm;
        c[row(i)] = dp;
      } else {
        const double d1 = (u[i + 1] - u[i - 1]) / (2 * h);
        const double d2 = (u[i + 1] - 2 * u[i] + u[i - 1]) / (h * h);
        const double W2 = 1.0 + d1 * d1;
        const double A2 = std::pow(W2, -1.5);
        const double r = coord(i);
        const double dF_dd1 = -3.0 * d2 * d1 * std::pow(W2, -2.5) +
                              (m - 1) / r * (1.0 / std::sqrt(W2) - d1 * d1 * std::pow(W2, -1.5));
        a[row(i)] = A2 / (h * h) - dF_dd1 / (2 * h);
        b[row(i)] = -2.0 * A2 / (h * h);
        c[row(i)] = A2 / (h * h) + dF_dd1 / (2 * h);
      }
    }
  }
};

inline double max_abs(const std::vector<double>& v, int lo, int hi) {
  double m = 0.0;
  for (int i = lo; i <= hi; ++i) m = std::max(m, std::abs(v[i]));
  return m;
}

}  // namespace solver_detail

inline SolveReport solve(const BvpSpec& spec, double tol = 1e-12, int max_iters = 100) {
  using namespace solver_detail;
  spec.validate();
  if (!(tol > 0.0)) throw data_error("solve: tol must be positive");

  SolveReport rep;
  rep.m = spec.m;
  rep.H = spec.H;
  rep.shape = spec.domain.shape;
  const int n = spec.grid_n;
  System sys(spec);
  rep.coord.resize(n);
  for (int i = 0; i < n; ++i) rep.coord[i] = sys.coord(i);

  const double len = spec.domain.extent0;
  if (spec.domain.shape == DomainShape::ball && std::abs(spec.H) * len >= spec.m) {
    rep.failure_reason = "no solution: |H| R >= m (spherical-cap existence bound)";
    return rep;
  }
  if (spec.domain.shape == DomainShape::slab && std::abs(spec.H) * len >= 2.0) {
    rep.failure_reason = "no solution: |H| T >= 2 (flux range exhausted)";
    return rep;
  }

  std::vector<double>& u = rep.u;
  u.resize(n);
  if (spec.domain.shape == DomainShape::slab) {
    for (int i = 0; i < n; ++i) u[i] = spec.bc0 + (spec.bc1 - spec.bc0) * i / (n - 1);
  } else {
    std::fill(u.begin(), u.end(), spec.bc1);
  }
  u[n - 1] = spec.bc1;
  if (spec.domain.shape == DomainShape::slab) u[0] = spec.bc0;

  // The assembled residual differences rounded u-values twice and divides by
  // h^2, so its evaluation in doubles carries noise of order eps*|u|/h^2: no
  // iterate can be certified below that level, whatever tol was requested.
  const double eps = std::numeric_limits<double>::epsilon();
  const auto roundoff_floor = [&](const std::vector<double>& w) {
    return 8.0 * eps * max_abs(w, 0, n - 1) / (sys.h * sys.h);
  };

  std::vector<double> F, a, b, c, delta;
  sys.residual(u, F);
  double fnorm = max_abs(F, sys.lo, n - 2);
  rep.convergence_history.push_back(fnorm);
  bool at_floor = false;

  for (int it = 0; it < max_iters; ++it) {
    if (fnorm <= std::max(tol, roundoff_floor(u))) break;
    sys.jacobian(u, a, b, c);
    const int k = n - 1 - sys.lo;
    delta.assign(k, 0.0);
    for (int i = 0; i < k; ++i) delta[i] = -F[sys.lo + i];
    solve_tridiag(a, b, c, delta);

    double lambda = 1.0;
    std::vector<double> trial(u);
    double trial_norm = kInf;
    while (lambda >= 1.0 / 1024.0) {
      for (int i = 0; i < k; ++i) trial[sys.lo + i] = u[sys.lo + i] + lambda * delta[i];
      sys.residual(trial, F);
      trial_norm = max_abs(F, sys.lo, n - 2);
      if (std::isfinite(trial_norm) && trial_norm <= (1.0 - 0.25 * lambda) * fnorm) break;
      lambda *= 0.5;
    }
    const bool progress = std::isfinite(trial_norm) && trial_norm < fnorm * (1.0 - 1e-3);
    if (!progress) {
      // The search direction buys nothing: either we are grinding against the
      // evaluation noise of the residual (success), or Newton is stuck on a
      // genuinely bad problem (failure). A wider cap than the break above is
      // justified here because the failed line search is extra evidence.
      if (fnorm <= 64.0 * eps * (1.0 + max_abs(u, 0, n - 1)) / (sys.h * sys.h)) {
        at_floor = true;
        break;
      }
      rep.failure_reason = "newton stalled: no descent step";
      rep.newton_iters = it;
      rep.final_residual = fnorm;
      return rep;
    }
    u = trial;
    fnorm = trial_norm;
    rep.convergence_history.push_back(fnorm);
    rep.newton_iters = it + 1;
  }
  rep.final_residual = fnorm;
  rep.converged = at_floor || fnorm <= std::max(tol, roundoff_floor(u));
  if (!rep.converged && rep.failure_reason.empty())
    rep.failure_reason = "newton did not reach tolerance within max_iters";
  return rep;
}

// Nodal W from one-sided/central differences of the solved field.
inline std::vector<double> solution_W(const SolveReport& rep) {
  const int n = static_cast<int>(rep.u.size());
  const double h = rep.coord[1] - rep.coord[0];
  std::vector<double> W(n);
  for (int i = 0; i < n; ++i) {
    const double d = fd_d1(rep.u.data(), i, n, 1, h);
    W[i] = std::sqrt(1.0 + d * d);
  }
  return W;
}

inline GradientBoundReport verify_gradient_bound(const SolveReport& rep, double kappa, double C,
                                                 double A, double num_tol = 1e-6) {
  if (!rep.converged) throw precondition_error("verify_gradient_bound: solve did not converge");
  if (!check_gate(rep.m, kappa, rep.H, C, A).ok || !check_hp(rep.m, kappa, rep.H, C))
    throw precondition_error("verify_gradient_bound: (C, A) fails the admissibility gate");
  const int n = static_cast<int>(rep.u.size());
  const std::vector<double> W = solution_W(rep);

  GradientBoundReport out;
  out.A_used = A;
  out.C_used = C;
  double zi = 0.0, zb = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = W[i] * std::exp(-C * rep.u[i]);
    const bool boundary = (i == n - 1) || (rep.shape == DomainShape::slab && i == 0);
    if (boundary)
      zb = std::max(zb, z);
    else
      zi = std::max(zi, z);
  }
  out.z_interior_max = zi;
  out.z_boundary_max = zb;
  out.slack = std::max(A, zb) + num_tol - zi;
  out.verdict = out.slack >= 0.0;
  return out;
}

}  // namespace capgraph
