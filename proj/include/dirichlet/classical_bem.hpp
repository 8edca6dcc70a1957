#ifndef DIRICHLET_CLASSICAL_BEM_HPP
#define DIRICHLET_CLASSICAL_BEM_HPP

#include <Eigen/Core>

#include "dirichlet/boundary_calculus.hpp"
#include "dirichlet/geometry.hpp"

/*
 * Reference boundary-element solver (Nystrom collocation at the mesh nodes).
 *
 * With G = ln|r - r'| / (2 pi) (laplacian G = delta), a harmonic phi with
 * boundary values f and outward flux q = d phi / dn satisfies
 *
 *     phi(x)     = int [ f dG/dn' - G q ] dsigma'          x inside
 *     phi(x) / 2 = int [ f dG/dn' - G q ] dsigma'          x on a smooth boundary
 *
 * The second line is solved for q:
 *
 *     sum_j G(r_i, r_j) dsigma_j q_j = -f_i / 2 + sum_j dG/dn'(r_i, r_j) dsigma_j f_j.
 *
 * Diagonal terms: the single layer uses the punctured-midpoint log weight, the
 * double layer the smooth-curve limit kappa_i dsigma_i / (4 pi).
 *
 * The first-kind single-layer operator annihilates constants on curves of unit
 * logarithmic capacity (the unit circle). The system is therefore augmented
 * with the interior compatibility row sum_j q_j dsigma_j = 0. That row is
 * imposed exactly: q is restricted to the null space of the row (one
 * Householder reflection) and the N collocation equations are solved in the
 * least-squares sense over the remaining N - 1 unknowns by column-pivoted QR.
 */

namespace dirichlet::bem {

struct BemSystem {
    Eigen::MatrixXd matrix;
    Eigen::VectorXd rhs;
    Eigen::VectorXd constraint_row;
    MeshPtr mesh;
};

/// Minimum mesh size for assembly.
inline constexpr std::size_t kMinNodes = 16;

BemSystem assemble(const BoundaryField& f, unsigned threads = 1);

/// Outward normal derivative samples.
struct NeumannData {
    BoundaryField q;
};

/// Throws RankDeficientSystem when the constrained system is numerically rank deficient.
NeumannData solve_neumann(const BemSystem& system);

/// Representation-formula value at an interior point at least the default band away from the curve.
/// Throws std::domain_error for near-boundary or exterior points.
double evaluate_interior(const BoundaryField& f, const NeumannData& q, const Vec2& r);

/// Same sum without the region check.
double representation_sum(const BoundaryField& f, const NeumannData& q, const Vec2& r);

}  // namespace dirichlet::bem

#endif
