#pragma once

#include <span>
#include <vector>

#include "ipmesh/types.hpp"

namespace ipmesh {

/// Ordered grid x_0 < x_1 < ... < x_M on [a, b].
///
/// For periodic meshes node M is identified with node 0, so a nodal field
/// carries M degrees of freedom instead of M + 1.
class Mesh1D {
public:
    Mesh1D(std::vector<double> points, bool periodic);

    static Mesh1D uniform(double a, double b, Index intervals, bool periodic);

    Index intervals() const noexcept { return static_cast<Index>(points_.size()) - 1; }
    Index dofs() const noexcept { return periodic_ ? intervals() : intervals() + 1; }
    bool periodic() const noexcept { return periodic_; }

    double a() const noexcept { return points_.front(); }
    double b() const noexcept { return points_.back(); }
    double length() const noexcept { return b() - a(); }

    double operator[](Index i) const { return points_[static_cast<std::size_t>(i)]; }
    std::span<const double> points() const noexcept { return points_; }
    double spacing(Index e) const { return (*this)[e + 1] - (*this)[e]; }
    double min_spacing() const;

    /// Index e of the interval [x_e, x_{e+1}] containing x (clamped to the mesh).
    Index locate(double x) const;

    /// Maps x into [a, b) for periodic meshes; identity otherwise.
    double wrap(double x) const;

    bool operator==(const Mesh1D&) const = default;

private:
    std::vector<double> points_;
    bool periodic_;
};

/// Expands a nodal field to all M + 1 mesh points. Accepts either M + 1 values
/// or, for periodic meshes, the M merged values (node M copied from node 0).
Vector full_nodal(const Mesh1D& mesh, const Vector& u);

/// Inverse of full_nodal for periodic meshes: drops node M.
Vector merged_nodal(const Mesh1D& mesh, const Vector& u_full);

}  // namespace ipmesh
