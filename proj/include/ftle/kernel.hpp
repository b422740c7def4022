#pragma once

#include <vector>

#include "ftle/kernel_math.hpp"
#include "ftle/mesh.hpp"

namespace ftle {

using PointRecord = BasicPointRecord<double>;

struct Jacobian {
  int dim = 2;
  double m[3][3] = {};
};

struct CauchyGreen {
  int dim = 2;
  double m[3][3] = {};
};

// Per-point scalar FTLE output, NaN where undefined.
struct FtleField {
  std::vector<double> values;
};

// Builds the streaming record for point p: 2*dim index reads from the
// neighbor list, then the gathered coordinate/flow-map data. Absent
// neighbors (-1) fall back to the point's own values.
PointRecord gather_record(std::int64_t p, const NeighborList& nl,
                          const SimplicialMesh& mesh, const FlowMap& fm);

Jacobian gradient(const PointRecord& rec);
CauchyGreen cauchy_green(const Jacobian& jac);
double max_eigen_sym2(const CauchyGreen& cg);
double max_eigen_sym3(const CauchyGreen& cg);
double ftle_from_lambda(double lambda_max, double t_horizon);

// Single forward pass over points in index order using the precomputed
// neighbor list. threads <= 1 runs serial; the output is identical either way.
FtleField compute_ftle_decoupled(const SimplicialMesh& mesh, const FlowMap& fm,
                                 const NeighborList& nl, int threads = 1);

// Reference oracle: determines neighbors on the fly by scanning adjacency per
// point with the same selection rule, then runs the identical numeric path.
FtleField compute_ftle_naive(const SimplicialMesh& mesh, const FlowMap& fm,
                             int threads = 1);

}  // namespace ftle
