#include "ipmesh/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ipmesh/errors.hpp"

namespace ipmesh {

Mesh1D::Mesh1D(std::vector<double> points, bool periodic)
    : points_(std::move(points)), periodic_(periodic) {
    if (points_.size() < 3) {
        throw DomainError("Mesh1D: need at least 2 intervals, got " +
                          std::to_string(points_.size() == 0 ? 0 : points_.size() - 1));
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!std::isfinite(points_[i])) {
            throw DomainError("Mesh1D: non-finite point at index " + std::to_string(i));
        }
        if (i > 0 && !(points_[i] > points_[i - 1])) {
            throw DomainError("Mesh1D: points not strictly increasing at index " + std::to_string(i));
        }
    }
}

Mesh1D Mesh1D::uniform(double a, double b, Index intervals, bool periodic) {
    if (intervals < 2 || !(b > a)) {
        throw DomainError("Mesh1D::uniform: need b > a and at least 2 intervals");
    }
    std::vector<double> pts(static_cast<std::size_t>(intervals) + 1);
    const double h = (b - a) / static_cast<double>(intervals);
    for (Index i = 0; i <= intervals; ++i) {
        pts[static_cast<std::size_t>(i)] = a + h * static_cast<double>(i);
    }
    pts.back() = b;
    return Mesh1D(std::move(pts), periodic);
}

double Mesh1D::min_spacing() const {
    double h = spacing(0);
    for (Index e = 1; e < intervals(); ++e) h = std::min(h, spacing(e));
    return h;
}

Index Mesh1D::locate(double x) const {
    auto it = std::upper_bound(points_.begin(), points_.end(), x);
    Index e = static_cast<Index>(it - points_.begin()) - 1;
    return std::clamp<Index>(e, 0, intervals() - 1);
}

double Mesh1D::wrap(double x) const {
    if (!periodic_) return x;
    const double len = length();
    double y = std::fmod(x - a(), len);
    if (y < 0) y += len;
    if (y >= len) y -= len;
    return a() + y;
}

Vector full_nodal(const Mesh1D& mesh, const Vector& u) {
    const Index M = mesh.intervals();
    if (u.size() == M + 1) return u;
    if (mesh.periodic() && u.size() == M) {
        Vector full(M + 1);
        full.head(M) = u;
        full[M] = u[0];
        return full;
    }
    throw DimensionError("nodal field has " + std::to_string(u.size()) + " values, mesh has " +
                         std::to_string(M) + " intervals");
}

Vector merged_nodal(const Mesh1D& mesh, const Vector& u_full) {
    const Index M = mesh.intervals();
    if (mesh.periodic() && u_full.size() == M) return u_full;
    if (u_full.size() != M + 1) {
        throw DimensionError("merged_nodal: expected " + std::to_string(M + 1) + " values");
    }
    return mesh.periodic() ? Vector(u_full.head(M)) : u_full;
}

}  // namespace ipmesh
