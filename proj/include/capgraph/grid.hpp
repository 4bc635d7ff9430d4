#pragma once

#include <vector>

#include "capgraph/common.hpp"

namespace capgraph {

// Uniform rectangular lattice. Row-major storage: node (i, j) at flat
// index i*ny + j, coordinates (x0 + i hx, y0 + j hy).
struct Grid2 {
  int nx = 0, ny = 0;
  double x0 = 0.0, y0 = 0.0;
  double hx = 0.0, hy = 0.0;

  Grid2() = default;
  Grid2(int nx_, int ny_, double x0_, double x1_, double y0_, double y1_)
      : nx(nx_), ny(ny_), x0(x0_), y0(y0_) {
    if (nx < 5 || ny < 5) throw data_error("Grid2: need at least 5 nodes per axis");
    hx = (x1_ - x0_) / (nx - 1);
    hy = (y1_ - y0_) / (ny - 1);
    if (!(hx > 0.0) || !(hy > 0.0)) throw data_error("Grid2: degenerate extent");
  }

  int idx(int i, int j) const { return i * ny + j; }
  double x(int i) const { return x0 + i * hx; }
  double y(int j) const { return y0 + j * hy; }
  int size() const { return nx * ny; }
};

}  // namespace capgraph
