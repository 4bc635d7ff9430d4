// Decision procedure for admissible gradient-estimate parameters (C, A)
// given (m, kappa, H):
//   hypothesis   H^2/m + C^2 - (m-1) kappa^2 >= 0   (strict when H > 0)
//   gate         H^2/m - C H / t + (C^2 - (m-1) kappa^2)(t^2-1)/t^2 >= 0
//                for every t >= A.
// Substituting s = 1/t turns the gate into P(s) >= 0 on (0, 1/A] for the
// quadratic P(s) = H^2/m - C H s + (C^2 - (m-1) kappa^2)(1 - s^2), decided
// exactly from endpoint and vertex values.
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "capgraph/common.hpp"

namespace capgraph {

enum class GateCase {
  H_nonpos,
  H_pos_C_large,
  H_pos_C_small_generic,
  H_pos_C_small_discriminant
};

inline const char* gate_case_name(GateCase c) {
  switch (c) {
    case GateCase::H_nonpos: return "H_nonpos";
    case GateCase::H_pos_C_large: return "H_pos_C_large";
    case GateCase::H_pos_C_small_generic: return "H_pos_C_small_generic";
    case GateCase::H_pos_C_small_discriminant: return "H_pos_C_small_discriminant";
  }
  return "?";
}

struct GateResult {
  bool ok = false;
  double min_slack = 0.0;  // inf of P over (0, 1/A]
};

struct ClassifyResult {
  GateCase label = GateCase::H_nonpos;
  bool verdict = false;
};

struct ParamCertificate {
  int m = 2;
  double kappa = 0.0, H = 0.0, C = 0.0, A = 1.0;
  bool hp_ok = false;
  bool gate_ok = false;
  GateCase case_label = GateCase::H_nonpos;
  double gate_slack = 0.0;
};

struct PerturbResult {
  double A1 = 1.0, C1 = 0.0, C2 = 0.0;
  double infimum = 0.0;  // certified inf of the perturbed gate over t >= A1
};

struct MenuEntry {
  std::string label;
  double A = 1.0;
  double C = 0.0;
};

namespace gate_detail {

struct QuadCoeffs {
  double c0, c1, c2;  // Q(s) = c0 + c1 s + c2 s^2
  double at(double s) const { return c0 + s * (c1 + s * c2); }
};

// Q(s) = H^2/m - C_lin H s + (C_quad^2 - (m-1) kappa^2)(1 - s^2).
inline QuadCoeffs gate_poly(int m, double kappa, double H, double c_lin, double c_quad) {
  const double E = c_quad * c_quad - (m - 1) * kappa * kappa;
  return {H * H / m + E, -c_lin * H, -E};
}

// Minimum over the closed interval [0, smax]; for a continuous quadratic
// this equals the infimum over (0, smax].
inline double min_on(const QuadCoeffs& q, double smax) {
  double best = std::min(q.at(0.0), q.at(smax));
  if (q.c2 > 0.0) {
    const double sv = -q.c1 / (2.0 * q.c2);
    if (sv > 0.0 && sv < smax) best = std::min(best, q.at(sv));
  }
  return best;
}

inline void require_inputs(int m, double kappa, double C) {
  if (m < 2) throw precondition_error("parameter gate: m must be >= 2");
  if (!(kappa >= 0.0)) throw precondition_error("parameter gate: kappa must be >= 0");
  if (!(C >= 0.0)) throw precondition_error("parameter gate: C must be >= 0");
}

}  // namespace gate_detail

// H^2/m + C^2 - (m-1) kappa^2 >= 0, strict for H > 0.
inline bool check_hp(int m, double kappa, double H, double C) {
  gate_detail::require_inputs(m, kappa, C);
  const double v = H * H / m + C * C - (m - 1) * kappa * kappa;
  return H > 0.0 ? v > kStrictTol : v >= -kTieTol;
}

inline GateResult check_gate(int m, double kappa, double H, double C, double A) {
  gate_detail::require_inputs(m, kappa, C);
  if (!(A >= 1.0)) throw precondition_error("check_gate: A must be >= 1");
  const auto q = gate_detail::gate_poly(m, kappa, H, C, C);
  const double slack = gate_detail::min_on(q, 1.0 / A);
  return {slack >= -kTieTol, slack};
}

// Branch analysis: reproduces the case split behind the feasibility
// characterization, including the discriminant exception under which the
// gate holds for every A >= 1.
inline ClassifyResult classify(int m, double kappa, double H, double C, double A) {
  if (!check_hp(m, kappa, H, C)) throw precondition_error("classify: hypothesis on (m,kappa,H,C) fails");
  if (!(A >= 1.0)) throw precondition_error("classify: A must be >= 1");

  if (H <= 0.0) return {GateCase::H_nonpos, true};

  const double gamma2 = (m - 1) * kappa * kappa;
  const auto q = gate_detail::gate_poly(m, kappa, H, C, C);
  if (C * C - gamma2 >= -kTieTol) {
    // P non-increasing on s >= 0: the endpoint alone decides.
    return {GateCase::H_pos_C_large, q.at(1.0 / A) >= -kTieTol};
  }

  // a > 0 below; P is convex with vertex at s* = C H / (2a).
  const double a = gamma2 - C * C;
  const double denom = a - 0.25 * m * C * C;
  if (denom > kStrictTol && H * H / m >= a * a / denom - kTieTol) {
    // Discriminant of P is <= 0: P >= 0 on all of R.
    return {GateCase::H_pos_C_small_discriminant, true};
  }
  const bool endpoint = q.at(1.0 / A) >= -kTieTol;
  const bool slope = C * H * A + 2.0 * (C * C - gamma2) >= -kTieTol;  // P'(1/A) <= 0
  return {GateCase::H_pos_C_small_generic, endpoint && slope};
}

inline ParamCertificate certify(int m, double kappa, double H, double C, double A) {
  ParamCertificate cert;
  cert.m = m;
  cert.kappa = kappa;
  cert.H = H;
  cert.C = C;
  cert.A = A;
  cert.hp_ok = check_hp(m, kappa, H, C);
  const GateResult g = check_gate(m, kappa, H, C, A);
  cert.gate_ok = g.ok && cert.hp_ok;
  cert.gate_slack = g.min_slack;
  if (cert.hp_ok) {
    cert.case_label = classify(m, kappa, H, C, A).label;
  } else {
    cert.case_label = H <= 0.0 ? GateCase::H_nonpos
                               : (C * C >= (m - 1) * kappa * kappa ? GateCase::H_pos_C_large
                                                                   : GateCase::H_pos_C_small_generic);
  }
  return cert;
}

// Strict version of the gate: finds A < A1 < A+eps, C < C2 < C1 < C+eps
// with a certified positive infimum of
//   H^2/m - C1 H / t + (C2^2 - (m-1) kappa^2)(t^2-1)/t^2  over t >= A1.
// Constructive schedule: H <= 0 admits any enlargement; H > 0 shrinks the
// enlargement until the strict bound survives, then a wide-step fallback
// handles near-degenerate inputs whose gate polynomial almost touches zero
// inside the interval.
inline PerturbResult perturb(int m, double kappa, double H, double C, double A, double eps) {
  using namespace gate_detail;
  if (!(eps > 0.0)) throw std::invalid_argument("perturb: eps must be positive");
  if (!check_hp(m, kappa, H, C)) throw precondition_error("perturb: hypothesis fails for (m,kappa,H,C)");
  if (!check_gate(m, kappa, H, C, A).ok) throw precondition_error("perturb: gate fails for (C, A)");

  auto certified = [&](double A1, double C1, double C2) {
    return min_on(gate_poly(m, kappa, H, C1, C2), 1.0 / A1);
  };

  const double A1 = A + 0.5 * eps;
  if (H <= 0.0) {
    PerturbResult r{A1, C + 0.5 * eps, C + 0.25 * eps, 0.0};
    r.infimum = certified(r.A1, r.C1, r.C2);
    if (r.infimum > kStrictTol) return r;
    throw convergence_error("perturb: strict infimum not achieved (H <= 0 branch)");
  }

  double delta = 0.5 * eps;
  for (int iter = 0; iter < 60; ++iter) {
    const double inf = certified(A1, C + delta, C + 0.5 * delta);
    if (inf > kStrictTol) return {A1, C + delta, C + 0.5 * delta, inf};
    delta *= 0.5;
  }
  // Wide enlargement with C2 pushed toward C1: rescues inputs where the
  // gate polynomial has an interior double root, for eps large enough.
  for (int j = 1; j <= 40; ++j) {
    const double d = eps * (1.0 - std::ldexp(1.0, -j));
    const double theta = 1.0 - std::ldexp(1.0, -j - 2);
    const double a1 = A + eps * (1.0 - std::ldexp(1.0, -j - 2));
    const double inf = certified(a1, C + d, C + theta * d);
    if (inf > kStrictTol) return {a1, C + d, C + theta * d, inf};
  }
  throw convergence_error(
      "perturb: no strictly positive infimum exists within eps; the gate polynomial "
      "attains zero inside (0, 1/A1] (interior double root) and eps is too small to "
      "clear it");
}

// The admissible choices menu: every row applicable to (m, kappa, H),
// each of which passes check_gate.
inline std::vector<MenuEntry> admissible_menu(int m, double kappa, double H) {
  gate_detail::require_inputs(m, kappa, 0.0);
  std::vector<MenuEntry> rows;
  const double gamma = std::sqrt(static_cast<double>(m - 1)) * kappa;
  if (kappa == 0.0) rows.push_back({"kappa_zero", 1.0, 0.0});
  if (H == 0.0) rows.push_back({"zero_mean_curvature", 1.0, gamma});
  if (kappa > 0.0 && std::abs(H) > std::sqrt(static_cast<double>(m) * (m - 1)) * kappa)
    rows.push_back({"supercritical_H", 1.0, 0.0});
  if (kappa > 0.0 && H <= 0.0 && H >= -std::sqrt(static_cast<double>(m) * (m - 1)) * kappa) {
    const double c2 = (m - 1) * kappa * kappa - H * H / m;
    rows.push_back({"subcritical_nonpositive_H", 1.0, std::sqrt(std::max(0.0, c2))});
  }
  if (kappa > 0.0 && H >= 0.0) {
    const double A = 1.0 + std::sqrt(H / gamma);
    rows.push_back({"nonnegative_H", A, A * gamma});
  }
  rows.push_back({"universal", std::sqrt(1.0 + m / 3.0), 2.0 * gamma});
  return rows;
}

}  // namespace capgraph
