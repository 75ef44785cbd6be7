#include "ipmesh/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "ipmesh/discrete_gradient.hpp"
#include "ipmesh/errors.hpp"
#include "ipmesh/kdv.hpp"

namespace ipmesh {

double error_l2(const Mesh1D& mesh, const Vector& u, const std::function<double(double)>& exact) {
    const Vector uf = full_nodal(mesh, u);
    const QuadratureRule gauss = gauss_legendre_01(4);
    double sum = 0.0;
    for (Index e = 0; e < mesh.intervals(); ++e) {
        const double h = mesh.spacing(e);
        for (std::size_t g = 0; g < gauss.nodes.size(); ++g) {
            const double s = gauss.nodes[g];
            const double diff = (1.0 - s) * uf[e] + s * uf[e + 1] - exact(mesh[e] + s * h);
            sum += gauss.weights[g] * h * diff * diff;
        }
    }
    return std::sqrt(sum);
}

double peak_location(const Mesh1D& mesh, const Vector& u) {
    const Vector uf = full_nodal(mesh, u);
    const Index M = mesh.intervals();
    const Index n = mesh.periodic() ? M : M + 1;  // distinct nodes
    Index imax = 0;
    for (Index i = 1; i < n; ++i) {
        if (uf[i] > uf[imax]) imax = i;
    }
    const double span = uf.head(n).maxCoeff() - uf.head(n).minCoeff();
    if (!(span > 1e-14 * (1.0 + std::abs(uf[imax])))) throw MetricError("peak_location: flat data has no peak");

    if (!mesh.periodic() && (imax == 0 || imax == M)) return mesh[imax];
    // neighbours in unwrapped coordinates
    const Index il = imax == 0 ? M - 1 : imax - 1;
    const Index ir = imax + 1;
    const double hl = imax == 0 ? mesh.spacing(M - 1) : mesh.spacing(imax - 1);
    const double hr = mesh.spacing(imax);
    const double x0 = -hl;
    const double x2 = hr;
    const double f0 = uf[il];
    const double f1 = uf[imax];
    const double f2 = uf[ir];
    // vertex of the interpolating parabola through (x0, f0), (0, f1), (x2, f2)
    const double num = f0 * x2 * x2 - f2 * x0 * x0 - f1 * (x2 * x2 - x0 * x0);
    const double den = f0 * x2 - f2 * x0 - f1 * (x2 - x0);
    double offset = 0.0;
    if (den != 0.0) offset = 0.5 * num / den;
    offset = std::clamp(offset, x0, x2);
    return mesh.wrap(mesh[imax] + offset);
}

double error_phase(const Mesh1D& mesh, const Vector& u, double c, double t) {
    const double x_star = peak_location(mesh, u);
    const double len = mesh.length();
    double d = c * t - x_star;
    if (mesh.periodic()) d -= len * std::floor(d / len + 0.5);
    return d;
}

double error_shape(const Mesh1D& mesh, const Vector& u, double c) {
    if (!(c > 0.0)) throw DomainError("error_shape: c must be positive");
    const double x_star = peak_location(mesh, u);
    const double L = 0.5 * mesh.length();
    const double centre = 0.5 * (mesh.a() + mesh.b());
    // exact solution at time x*/c has its peak at x*
    return error_l2(mesh, u, [&](double x) { return kdv_exact_periodic(x - centre, (x_star - centre) / c, c, L); });
}

}  // namespace ipmesh
