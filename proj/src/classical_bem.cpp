#include "dirichlet/classical_bem.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "dirichlet/errors.hpp"
#include "dirichlet/kernels.hpp"
#include "dirichlet/parallel.hpp"

namespace dirichlet::bem {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

}  // namespace

BemSystem assemble(const BoundaryField& f, unsigned threads)
{
    const BoundaryMesh& mesh = *f.mesh;
    const std::size_t n = mesh.size();
    if (n < kMinNodes)
        throw std::invalid_argument("boundary-element assembly needs at least " + std::to_string(kMinNodes) +
                                    " nodes");
    const auto conv = KernelConvention::planar();
    const auto size = Eigen::Index(n);

    BemSystem sys;
    sys.mesh = f.mesh;
    sys.matrix.resize(size, size);
    sys.rhs.resize(size);
    sys.constraint_row.resize(size);
    for (std::size_t j = 0; j < n; ++j)
        sys.constraint_row(Eigen::Index(j)) = mesh.weights[j];

    parallel_for(n, threads, [&](std::size_t i) {
        const auto row = Eigen::Index(i);
        double rhs = -0.5 * f.values[i];
        for (std::size_t j = 0; j < n; ++j) {
            const double w = mesh.weights[j];
            if (i == j) {
                sys.matrix(row, row) = punctured_log_self_weight(w);
                rhs += mesh.curvature[i] / kFourPi * w * f.values[j];
            } else {
                sys.matrix(row, Eigen::Index(j)) = green(conv, mesh.nodes[i], mesh.nodes[j]) * w;
                rhs += green_dnormal(conv, mesh.nodes[i], mesh.nodes[j], mesh.normals[j]) * w * f.values[j];
            }
        }
        sys.rhs(row) = rhs;
    });
    return sys;
}

NeumannData solve_neumann(const BemSystem& system)
{
    const Eigen::Index n = system.matrix.cols();
    const Eigen::VectorXd& c = system.constraint_row;

    // Householder reflection H with H c = -sign(c_0) |c| e_0; columns 1.. of H span c's null space.
    Eigen::VectorXd v = c;
    v(0) += std::copysign(c.norm(), c(0));
    const double vv = v.squaredNorm();
    const Eigen::VectorXd av = system.matrix * v;
    const Eigen::MatrixXd reduced =
        system.matrix.rightCols(n - 1) - (2.0 / vv) * av * v.tail(n - 1).transpose();

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(reduced);
    qr.setThreshold(1e-13);
    if (qr.rank() < n - 1)
        throw RankDeficientSystem("constrained boundary-element system has rank " + std::to_string(qr.rank()) +
                                  " < " + std::to_string(n - 1));
    Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
    z.tail(n - 1) = qr.solve(system.rhs);
    const Eigen::VectorXd q = z - (2.0 * v.dot(z) / vv) * v;
    return {BoundaryField(system.mesh, std::vector<double>(q.data(), q.data() + q.size()))};
}

double representation_sum(const BoundaryField& f, const NeumannData& q, const Vec2& r)
{
    const BoundaryMesh& mesh = *f.mesh;
    const auto conv = KernelConvention::planar();
    double sum = 0.0;
    for (std::size_t j = 0; j < mesh.size(); ++j) {
        const double dl = green_dnormal(conv, r, mesh.nodes[j], mesh.normals[j]);
        const double sl = green(conv, r, mesh.nodes[j]);
        sum += (f.values[j] * dl - sl * q.q.values[j]) * mesh.weights[j];
    }
    return sum;
}

double evaluate_interior(const BoundaryField& f, const NeumannData& q, const Vec2& r)
{
    const BoundaryMesh& mesh = *f.mesh;
    const Region region = classify_point(mesh.source_curve, r, mesh.default_band());
    if (region != Region::inside)
        throw std::domain_error(std::string("boundary-element representation needs an interior point, got ") +
                                region_name(region));
    return representation_sum(f, q, r);
}

}  // namespace dirichlet::bem
