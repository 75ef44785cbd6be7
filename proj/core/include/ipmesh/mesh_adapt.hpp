#pragma once

#include <functional>

#include "ipmesh/mesh.hpp"
#include "ipmesh/types.hpp"

namespace ipmesh {

struct MonitorConfig {
    double k = 1.0;            // arc-length weight; k = 1 is plain arc length
    int smoothing_passes = 1;  // (1,2,1)/4 filter passes
    int deboor_iterations = 3;

    void validate() const;
};

/// Generalized arc-length monitor sqrt(1 + k^2 u_x^2) at every mesh point.
///
/// Slopes are one-sided per interval and averaged to the nodes (periodic wrap
/// on periodic meshes, one-sided at the ends otherwise). `u` holds M + 1 values,
/// or M for a periodic mesh. Returns M + 1 values, all >= 1.
Vector monitor_arclength(const Vector& u, const Mesh1D& mesh, double k);

/// Applies `passes` rounds of w_i <- (w_{i-1} + 2 w_i + w_{i+1}) / 4.
///
/// Periodic input is treated as a cycle of omega.size() distinct values.
/// Otherwise the end values are copied from their interior neighbours.
Vector smooth_monitor(const Vector& omega, int passes, bool periodic);

/// Smoothing of a nodal monitor over all M + 1 points of a mesh; for periodic
/// meshes the merged node 0 == M is smoothed once as part of the cycle.
Vector smooth_nodal_monitor(const Vector& omega, const Mesh1D& mesh, int passes);

/// One exact de Boor pass: the monitor is the piecewise-constant density
/// `cell_density[e]` on interval e of `mesh_old`. Its cumulative integral is
/// piecewise linear and is inverted exactly to split the total mass into M
/// equal parts.
Mesh1D equidistribute_cells(const Vector& cell_density, const Mesh1D& mesh_old, Index M);

/// de Boor regridding for a nodal monitor on `mesh_old` (M_old + 1 values).
///
/// Each pass uses interval averages of the nodal monitor (trapezoid cumulative
/// integral). Between passes the monitor is re-sampled at the new points by
/// linear interpolation of the original nodal data.
Mesh1D equidistribute_deboor(const Vector& omega, const Mesh1D& mesh_old, Index M, int iterations = 3);

/// max_e | trapezoid integral of omega over interval e - (total)/M |.
double equidistribution_residual(const Vector& omega, const Mesh1D& mesh);

/// Same measure for a piecewise-constant density on `density_mesh`, integrated
/// exactly over the intervals of `mesh`.
double cell_density_residual(const Vector& cell_density, const Mesh1D& density_mesh, const Mesh1D& mesh);

/// Monitor -> smoothing -> de Boor, keeping the number of intervals.
Mesh1D adapt_mesh(const Vector& u, const Mesh1D& mesh, const MonitorConfig& config);

/// Mesh equidistributed against the monitor of a known function, built by
/// repeated sampling on the current mesh.
Mesh1D equidistributed_mesh(const std::function<double(double)>& f, const Mesh1D& start,
                            const MonitorConfig& config, int rounds = 5);

}  // namespace ipmesh
