#include "ftle/kernel.hpp"

#include "ftle/parallel.hpp"

namespace ftle {

namespace {

void check_shapes(const SimplicialMesh& mesh, const FlowMap& fm) {
  if (fm.dim != mesh.dim || fm.n_points != mesh.n_points ||
      fm.values.size() != static_cast<std::size_t>(fm.n_points) * fm.dim) {
    throw ValidationError("flow map shape does not match mesh");
  }
  if (fm.t_horizon == 0.0) throw ValidationError("t_horizon must be nonzero");
}

PointRecord record_from_indexes(const std::int32_t* idx, std::int64_t p,
                                const SimplicialMesh& mesh, const FlowMap& fm) {
  PointRecord rec;
  rec.dim = mesh.dim;
  for (int axis = 0; axis < mesh.dim; ++axis) {
    const std::int32_t qm = idx[2 * axis + 0];
    const std::int32_t qp = idx[2 * axis + 1];
    const std::int64_t src_m = qm == NeighborList::kAbsent ? p : qm;
    const std::int64_t src_p = qp == NeighborList::kAbsent ? p : qp;
    rec.coord_minus[axis] = mesh.coord(src_m, axis);
    rec.coord_plus[axis] = mesh.coord(src_p, axis);
    for (int c = 0; c < mesh.dim; ++c) {
      rec.fm_minus[axis][c] = fm.value(src_m, c);
      rec.fm_plus[axis][c] = fm.value(src_p, c);
    }
  }
  return rec;
}

}  // namespace

PointRecord gather_record(std::int64_t p, const NeighborList& nl,
                          const SimplicialMesh& mesh, const FlowMap& fm) {
  return record_from_indexes(nl.entries.data() + p * 2 * nl.dim, p, mesh, fm);
}

Jacobian gradient(const PointRecord& rec) {
  Jacobian jac;
  jac.dim = rec.dim;
  gradient_columns(rec, jac.m);
  return jac;
}

CauchyGreen cauchy_green(const Jacobian& jac) {
  CauchyGreen cg;
  cg.dim = jac.dim;
  cauchy_green_from_jacobian(jac.dim, jac.m, cg.m);
  return cg;
}

double max_eigen_sym2(const CauchyGreen& cg) { return max_eigenvalue_sym2(cg.m); }

double max_eigen_sym3(const CauchyGreen& cg) { return max_eigenvalue_sym3(cg.m); }

double ftle_from_lambda(double lambda_max, double t_horizon) {
  return ftle_value(lambda_max, t_horizon);
}

FtleField compute_ftle_decoupled(const SimplicialMesh& mesh, const FlowMap& fm,
                                 const NeighborList& nl, int threads) {
  check_shapes(mesh, fm);
  if (nl.dim != mesh.dim || nl.n_points != mesh.n_points ||
      nl.entries.size() != static_cast<std::size_t>(nl.n_points) * 2 * nl.dim) {
    throw ValidationError("neighbor list shape does not match mesh");
  }
  FtleField field;
  field.values.resize(static_cast<std::size_t>(mesh.n_points));
  parallel_for(mesh.n_points, threads, [&](std::int64_t p) {
    const PointRecord rec = gather_record(p, nl, mesh, fm);
    field.values[p] = ftle_from_record(rec, fm.t_horizon);
  });
  return field;
}

FtleField compute_ftle_naive(const SimplicialMesh& mesh, const FlowMap& fm, int threads) {
  check_shapes(mesh, fm);
  const AdjacencyList adj = build_adjacency(mesh);
  FtleField field;
  field.values.resize(static_cast<std::size_t>(mesh.n_points));
  parallel_for(mesh.n_points, threads, [&](std::int64_t p) {
    const auto idx = select_axis_neighbors(mesh, adj, p);
    const PointRecord rec = record_from_indexes(idx.data(), p, mesh, fm);
    field.values[p] = ftle_from_record(rec, fm.t_horizon);
  });
  return field;
}

}  // namespace ftle
