// CSV emission for sampled profiles and graph fields. Plain header row,
// one record per line, doubles at full precision.
#pragma once

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "capgraph/common.hpp"
#include "capgraph/exact_profiles.hpp"
#include "capgraph/graph_calculus.hpp"
#include "capgraph/json_writer.hpp"

namespace capgraph {

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_row(const std::vector<double>& row) {
    if (row.size() != columns.size()) throw data_error("csv row width mismatch");
    rows.push_back(row);
  }

  std::string dump() const {
    std::string out;
    for (size_t k = 0; k < columns.size(); ++k) {
      out += columns[k];
      if (k + 1 < columns.size()) out += ',';
    }
    out += '\n';
    char buf[40];
    for (const auto& row : rows) {
      for (size_t k = 0; k < row.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.17g", row[k]);
        out += buf;
        if (k + 1 < row.size()) out += ',';
      }
      out += '\n';
    }
    return out;
  }
};

inline CsvTable profile_table(const CapillaryProfile& p, int n_samples, double t_cap = 10.0) {
  if (n_samples < 2) throw data_error("profile_table: need at least two samples");
  CsvTable t;
  t.columns = {"t", "u", "du", "W"};
  const double hi = std::min(p.t_max, t_cap);
  for (int k = 0; k < n_samples; ++k) {
    const double tk = hi * k / (n_samples - 1);
    const ProfilePoint v = profile_eval(p, tk);
    t.add_row({tk, v.u, v.du, v.W});
  }
  return t;
}

inline CsvTable ode_profile_table(const OdeProfile& p) {
  CsvTable t;
  t.columns = {"t", "u", "slope"};
  for (size_t k = 0; k < p.t.size(); ++k) t.add_row({p.t[k], p.u[k], p.beta[k]});
  return t;
}

inline CsvTable field_table(const GraphField& field) {
  CsvTable t;
  t.columns = {"x0", "x1", "u", "W", "H"};
  const Grid2& g = field.grid;
  for (int i = 1; i < g.nx - 1; ++i)
    for (int j = 1; j < g.ny - 1; ++j) {
      const int c = g.idx(i, j);
      t.add_row({g.x(i), g.y(j), field.u[c], field.tensors.W[c], field.tensors.H[c]});
    }
  return t;
}

}  // namespace capgraph
