#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace reciprel {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Default max-norm residual accepted when reading group or algebra
/// coordinates back out of a matrix.
inline constexpr double kDecompositionTol = 1e-9;

/// Default absolute tolerance on ds^2 for the null classification.
inline constexpr double kNullTol = 1e-10;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

/// An argument is outside the domain of the operation (nonpositive scale,
/// odd matrix dimension, zero dilation, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

class SymplecticViolation : public Error {
public:
    using Error::Error;
};

/// A matrix failed to decompose into the expected block pattern.
class DecompositionError : public Error {
public:
    DecompositionError(const std::string& what, double residual)
        : Error(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// Conjugation by a matrix left the Weyl-Heisenberg group.
class NotAnAutomorphism : public DecompositionError {
public:
    using DecompositionError::DecompositionError;
};

/// The state lies on or outside the null hypersurface, so the time
/// dilation factor is undefined.
class NonTimelikeState : public Error {
public:
    NonTimelikeState(const std::string& what, double denominator)
        : Error(what), denominator_(denominator) {}
    double denominator() const noexcept { return denominator_; }

private:
    double denominator_;
};

class NoNullVelocity : public Error {
public:
    using Error::Error;
};

class SuperluminalError : public Error {
public:
    using Error::Error;
};

/// A matrix offered as a group element does not satisfy the group's
/// defining invariants.
class GroupMembershipError : public Error {
public:
    GroupMembershipError(const std::string& what, double residual)
        : Error(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline void require_positive(double x, const char* name) {
    if (!(x > 0.0)) {
        throw DomainError(std::string(name) + " must be strictly positive");
    }
}

}  // namespace reciprel
