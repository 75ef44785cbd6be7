#pragma once

#include <functional>

#include "ipmesh/mesh.hpp"

namespace ipmesh {

/// || u_I - exact ||_{L2(a, b)} with u_I the piecewise-linear interpolant of the
/// nodal values `u` (M + 1 values, or M on a periodic mesh); 4-point Gauss per
/// interval.
double error_l2(const Mesh1D& mesh, const Vector& u, const std::function<double(double)>& exact);

/// Sub-cell location of the maximum: vertex of the parabola through the
/// largest node and its two neighbours (wrapped on periodic meshes). Throws
/// MetricError for flat data.
double peak_location(const Mesh1D& mesh, const Vector& u);

/// Distance error c t - x* of a KdV soliton, unwrapped into [-L, L) on the
/// periodic domain of length 2L.
double error_phase(const Mesh1D& mesh, const Vector& u, double c, double t);

/// L2 distance to the exact soliton re-centred at the numerical peak x*.
double error_shape(const Mesh1D& mesh, const Vector& u, double c);

}  // namespace ipmesh
