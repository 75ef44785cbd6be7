#pragma once

#include <span>

#include "ipmesh/discrete_gradient.hpp"
#include "ipmesh/kdv.hpp"
#include "ipmesh/mesh.hpp"
#include "ipmesh/newton.hpp"

namespace ipmesh {

enum class InterpKind { Linear, Cubic };

/// Piecewise-linear interpolant of nodal data on `mesh_old` evaluated at `x`.
/// `u_old` has M + 1 values, or M on a periodic mesh. Periodic meshes wrap the
/// queries; otherwise a query outside [a, b] throws RangeError.
Vector interp_linear(const Mesh1D& mesh_old, const Vector& u_old, std::span<const double> x);

/// Monotone piecewise-cubic Hermite (pchip) interpolant. Interior slopes use
/// the Fritsch-Carlson weighted harmonic mean and vanish at local extrema and
/// flat pairs; ends use the shape-preserving three-point rule, or wrap around
/// on periodic meshes.
Vector interp_cubic_monotone(const Mesh1D& mesh_old, const Vector& u_old, std::span<const double> x);

/// pchip node slopes (M + 1 values) used by interp_cubic_monotone.
Vector pchip_slopes(const Mesh1D& mesh, const Vector& u_full);

/// Interpolates a nodal field onto the nodes of `mesh_new` and returns it in
/// the layout of `mesh_new` (M values when periodic).
Vector transfer_nodal(const Mesh1D& mesh_old, const Vector& u_old, const Mesh1D& mesh_new, InterpKind kind);

/// Field-by-field transfer of a stacked state [f_1; ...; f_k], each block in
/// the layout of its mesh.
Vector interpolate_state(const Mesh1D& mesh_old, const Vector& state, const Mesh1D& mesh_new, InterpKind kind,
                         Index fields);

struct TransferResult {
    Vector u;
    double lambda = 0.0;
    int iterations = 0;
};

/// Integral-preserving transfer for finite differences: solves
///   u - u_bar - lambda grad I(u) = 0,   I(u) = I_target
/// by Newton from (u_bar, 0), i.e. the Euclidean projection of u_bar onto the
/// level set. Throws TransferError when Newton fails.
TransferResult transfer_preserving_fdm(const Vector& u_bar, const DiscreteIntegral& integral_new, double I_target,
                                       const SolverConfig& config);

/// Interpolates u_old from mesh_old to mesh_new, then applies the preserving
/// correction above.
TransferResult transfer_preserving_fdm(const Mesh1D& mesh_old, const Vector& u_old, const Mesh1D& mesh_new,
                                       Index fields, const DiscreteIntegral& integral_new, double I_target,
                                       const SolverConfig& config, InterpKind kind = InterpKind::Cubic);

/// C_ij = int phi_new_i phi_old_j for hat bases on two meshes of the same
/// domain, integrated exactly over the union of both partitions.
SparseMatrix cross_mass_matrix(const Mesh1D& mesh_new, const Mesh1D& mesh_old);

/// Integral-preserving L2 transfer for hat bases: solves
///   A_new u - C u_old - lambda grad I(u) = 0,   I(u) = I_target
/// by Newton from (A_new^{-1} C u_old, 0). With `constrained` false the result
/// is the plain L2 projection A_new^{-1} C u_old.
TransferResult transfer_preserving_pum(const FemOperators& ops_new, const SparseMatrix& C, const Vector& u_old,
                                       const DiscreteIntegral& integral_new, double I_target,
                                       const SolverConfig& config, bool constrained = true);

}  // namespace ipmesh
