#pragma once

#include "capgraph/base_metric.hpp"
#include "capgraph/common.hpp"
#include "capgraph/config.hpp"
#include "capgraph/csv_writer.hpp"
#include "capgraph/exact_profiles.hpp"
#include "capgraph/fd.hpp"
#include "capgraph/fields.hpp"
#include "capgraph/graph_calculus.hpp"
#include "capgraph/grid.hpp"
#include "capgraph/identity_lab.hpp"
#include "capgraph/json_writer.hpp"
#include "capgraph/linalg.hpp"
#include "capgraph/parabolicity.hpp"
#include "capgraph/parameter_gate.hpp"
#include "capgraph/pde_solver.hpp"
#include "capgraph/rk45.hpp"
#include "capgraph/scenario.hpp"
