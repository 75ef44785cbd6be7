#pragma once

#include <Eigen/SparseCholesky>
#include <memory>
#include <vector>

#include "ipmesh/discrete_gradient.hpp"
#include "ipmesh/mesh.hpp"
#include "ipmesh/semidiscrete.hpp"

namespace ipmesh {

/// KdV u_t + u_xxx + 6 u u_x = 0 on the periodic domain [-L, L].
struct KdvParams {
    Mesh1D mesh;
    double L;
    double c;  // soliton speed, c > 0

    void validate() const;
    static KdvParams uniform(double L, Index M, double c);
};

/// Fully symmetric sparse 3-tensor D_ijk = int phi_i phi_j phi_k, stored once
/// per index multiset (i <= j <= k). Contractions expand the distinct
/// permutations of each stored entry.
class CubicTensor {
public:
    struct Entry {
        Index i, j, k;
        double value;
    };

    CubicTensor() = default;
    CubicTensor(Index dim, std::vector<Entry> entries);

    Index dim() const { return dim_; }
    const std::vector<Entry>& entries() const { return entries_; }

    /// D_ijk for any index order.
    double operator()(Index i, Index j, Index k) const;

    /// sum_{ijk} D_ijk u_i u_j u_k
    double contract3(const Vector& u) const;
    /// Q(a, b)_i = sum_{jk} D_ijk a_j b_k
    Vector contract2(const Vector& a, const Vector& b) const;
    /// (sum_k D_ijk a_k)_{ij}
    SparseMatrix contract1(const Vector& a) const;

private:
    Index dim_ = 0;
    std::vector<Entry> entries_;
};

/// Piecewise-linear periodic finite element operators:
///   A_ij = int phi_i phi_j,  B_ji = int phi_i phi_j',  E_ij = int phi_i' phi_j',
///   D_ijk = int phi_i phi_j phi_k.
struct FemOperators {
    SparseMatrix A;
    SparseMatrix B;
    SparseMatrix E;
    CubicTensor D;
};

/// Element-by-element assembly with 3-point Gauss quadrature (exact for every
/// integrand here). Throws AssemblyError for non-periodic or degenerate meshes.
FemOperators assemble_operators(const Mesh1D& mesh);

/// H_p(u) = 1/2 u^T E u - sum D_jkl u_j u_k u_l.
double kdv_hamiltonian(const FemOperators& ops, const Vector& u);
Vector kdv_gradient(const FemOperators& ops, const Vector& u);
/// Closed-form AVF discrete gradient of the cubic Hamiltonian.
Vector kdv_avf_gradient(const FemOperators& ops, const Vector& u_n, const Vector& u_np1);
/// -A^{-1} B A^{-1} w (factorizes A on every call; KdvSystem caches it).
Vector kdv_apply_skew(const FemOperators& ops, const Vector& w);

class KdvHamiltonian final : public DiscreteIntegral {
public:
    explicit KdvHamiltonian(std::shared_ptr<const FemOperators> ops) : ops_(std::move(ops)) {}

    Index dim() const override { return ops_->A.rows(); }
    double value(const Vector& u) const override { return kdv_hamiltonian(*ops_, u); }
    Vector gradient(const Vector& u) const override { return kdv_gradient(*ops_, u); }
    SparseMatrix hessian(const Vector& u) const override;

private:
    std::shared_ptr<const FemOperators> ops_;
};

/// Galerkin semidiscretization du/dt = -A^{-1} B A^{-1} grad H_p(u).
class KdvSystem final : public SemidiscreteSystem {
public:
    explicit KdvSystem(const Mesh1D& mesh);

    const DiscreteIntegral& integral() const override { return hamiltonian_; }
    const FemOperators& operators() const { return *ops_; }
    std::shared_ptr<const FemOperators> shared_operators() const { return ops_; }
    const Mesh1D& mesh() const { return mesh_; }

    Vector apply_skew(const Vector& w) const override;
    Vector avf(const Vector& v, const Vector& u) const override;
    SparseMatrix avf_jacobian(const Vector& v, const Vector& u) const override;
    Vector apply_weight_inverse(const Vector& g) const override;
    std::unique_ptr<LinearSolver> factor_step_matrix(double dt, const SparseMatrix& K, double mu,
                                                     CorrectionKind kind) const override;

    Vector solve_mass(const Vector& b) const;

private:
    Mesh1D mesh_;
    std::shared_ptr<const FemOperators> ops_;
    KdvHamiltonian hamiltonian_;
    Eigen::SimplicialLDLT<SparseMatrix> mass_;
};

/// Right-moving soliton (c / 2) sech^2( sqrt(c) / 2 (x - c t) ).
double kdv_exact(double x, double t, double c);

/// Soliton with its centre wrapped periodically into [-L, L).
double kdv_exact_periodic(double x, double t, double c, double L);

/// Soliton sampled at the M distinct nodes of a periodic mesh.
Vector kdv_exact_state(const Mesh1D& mesh, double t, double c);

}  // namespace ipmesh
