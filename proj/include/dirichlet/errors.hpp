#ifndef DIRICHLET_ERRORS_HPP
#define DIRICHLET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dirichlet {

/// A solver could not produce a result for well-formed input.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The calibration system for (C1, C2) is singular.
class DegenerateCalibration : public SolverError {
public:
    explicit DegenerateCalibration(const std::string& what)
        : SolverError(what + "; pick other collocation points, use least-squares calibration, "
                             "or check that the boundary data is not constant (zero density)")
    {
    }
};

/// The augmented boundary-element system is numerically rank deficient.
class RankDeficientSystem : public SolverError {
public:
    explicit RankDeficientSystem(const std::string& what)
        : SolverError(what + "; the mesh may be degenerate, or rescale the domain away from unit "
                             "logarithmic capacity")
    {
    }
};

}  // namespace dirichlet

#endif
