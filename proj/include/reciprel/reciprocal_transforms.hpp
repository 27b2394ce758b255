#pragma once

// Transformations between noninertial states: the Born-metric preserving
// group U(1,n), its Lorentz subgroup, the Hamilton group, and the
// b -> infinity and c -> infinity contractions that connect them.
//
// All matrices act on displacement vectors in (t, q, e, p) order. The n = 1
// transformation parameterized by velocity v, force f and power r,
//
//   dt~ = g (dt + v/c^2 dq + f/b^2 dp - r/(b^2 c^2) de)
//   dq~ = g (dq + v dt + r/b^2 dp - f/b^2 de)
//   dp~ = g (dp + f dt - r/c^2 dq + v/c^2 de)
//   de~ = g (de + v dp - f dq + r dt)
//
// with g = gamma_factor(v, f, r), is the primitive; group matrices for it
// are read off by applying it to basis displacements.

#include "reciprel/common.hpp"
#include "reciprel/phase_space_metrics.hpp"

#include <cstdint>
#include <vector>

namespace reciprel {

/// Default tolerance for group-membership checks on constructed matrices.
inline constexpr double kGroupTol = 1e-10;

/// eta = diag(1, -1/c^2 1_n) on (t, q).
Matrix minkowski_eta(int n, double c);

/// max |L^t eta L - eta|.
double lorentz_residual(const Matrix& L, double c);

/// Boost with velocity v; t' = g (t + v.q/c^2), q' = q + (g-1)(v^.q)v^ + g v t.
/// Throws SuperluminalError when |v| >= c.
Matrix lorentz_boost(const Vector& v, double c);

/// max |Gamma^t G Gamma - G| for the Born metric G(c, b).
double born_metric_residual(const Matrix& Gamma, double c, double b);

/// max |Gamma^t Omega Gamma - Omega| for the 2-form -de^dt + dp^dq.
double omega_residual(const Matrix& Gamma);

/// A matrix acting on extended-phase-space displacements that preserves
/// both the Born metric and the symplectic 2-form, i.e. an element of
/// U(1,n) = Sp(2n+2) intersected with O(2,2n).
class UnitaryElement {
public:
    /// Throws GroupMembershipError when either invariance residual exceeds
    /// `tol`.
    static UnitaryElement from_matrix(Matrix Gamma, double c, double b, double tol = kGroupTol);

    static UnitaryElement identity(int n, double c, double b);

    int n() const noexcept { return static_cast<int>(Gamma_.rows() / 2 - 1); }
    const Matrix& matrix() const noexcept { return Gamma_; }
    double c() const noexcept { return c_; }
    double b() const noexcept { return b_; }

    Displacement apply(const Displacement& d) const;
    UnitaryElement inverse() const;

private:
    UnitaryElement(Matrix Gamma, double c, double b) : Gamma_(std::move(Gamma)), c_(c), b_(b) {}

    Matrix Gamma_;
    double c_;
    double b_;
};

/// Gamma(Lambda, 0): Lambda on (t, q) and the same Lorentz matrix on the
/// energy-momentum 4-vector (e/c^2, p), re-expressed on (e, p). Throws
/// GroupMembershipError for non-Lorentz input.
UnitaryElement unitary_from_lorentz(const Matrix& Lambda, double c, double b);

/// The n = 1 transformation above. Throws DimensionError for n != 1 and
/// NonTimelikeState when the state is not timelike.
Displacement explicit_transform(const KinematicState& s, const Displacement& d, double c,
                                double b);

/// 4x4 matrix of explicit_transform, columns are images of basis vectors.
Matrix transform_matrix(const KinematicState& s, double c, double b);

UnitaryElement unitary_from_state(const KinematicState& s, double c, double b);

/// Largest |ds^2(explicit_transform(d)) - ds^2(d)| over `trials` random
/// displacements with components in [-1, 1), drawn from Rng(seed).
double born_invariance_residual(const KinematicState& s, double c, double b, int trials,
                                std::uint64_t seed = 0);

/// True iff the energy-momentum/spacetime mixing blocks vanish and the
/// spacetime block is eta-orthogonal, both within `tol`.
bool is_lorentz_subgroup(const UnitaryElement& u, double tol = kGroupTol);
bool is_lorentz_subgroup(const Matrix& Gamma, double c, double tol = kGroupTol);

// Contractions

/// b -> infinity limit of transform_matrix: block lower triangular
/// [[Lambda, 0], [M, Lambda]] with the special-relativity gamma.
/// Throws SuperluminalError when |v| >= c.
Matrix contraction_limit_matrix(const KinematicState& s, double c);

struct ContractionSample {
    double scale;
    Displacement image;
    /// max |image - limit image|
    double deviation;
    /// max |Gamma(scale) - Gamma_limit|
    double matrix_deviation;
};

struct ContractionReport {
    std::vector<ContractionSample> samples;
    Displacement limit;
    Matrix limit_matrix;
    /// matrix_deviation is non-increasing along the sweep.
    bool monotone = false;
    /// Least-squares slope of log(matrix_deviation) against log(scale); NaN
    /// when any deviation is zero.
    double slope = 0.0;
};

/// Evaluates the transformation at each b and compares with the b -> infinity
/// limit. Throws DomainError unless b_values is strictly increasing and
/// positive.
ContractionReport contract_b(const KinematicState& s, const Displacement& d, double c,
                             const std::vector<double>& b_values);

/// Evaluates the b -> infinity form at each c and compares with the Hamilton
/// group element (R = 1, v, f, r) it contracts to as c -> infinity.
ContractionReport contract_c(const KinematicState& s, const Displacement& d,
                             const std::vector<double>& c_values);

struct LineElementGap {
    double scale;
    double gap;
};

/// |ds^2_Born(c, b) - ds^2_Minkowski(c)| for each b.
std::vector<LineElementGap> born_minkowski_gap(const Displacement& d, double c,
                                               const std::vector<double>& b_values);

/// |ds^2_Minkowski(c) - ds^2_Newton| for each c.
std::vector<LineElementGap> minkowski_newton_gap(const Displacement& d,
                                                 const std::vector<double>& c_values);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// Hamilton group

class HamiltonGroupElement {
public:
    /// Throws GroupMembershipError unless R^t R = 1 and det R = 1 within tol.
    HamiltonGroupElement(Matrix R, Vector v, Vector f, double r, double tol = kGroupTol);

    /// Inertial (Euclidean) element: f = 0, r = 0.
    static HamiltonGroupElement euclidean(Matrix R, Vector v);

    int n() const noexcept { return static_cast<int>(R_.rows()); }
    const Matrix& R() const noexcept { return R_; }
    const Vector& v() const noexcept { return v_; }
    const Vector& f() const noexcept { return f_; }
    double r() const noexcept { return r_; }

private:
    Matrix R_;
    Vector v_;
    Vector f_;
    double r_;
};

/// dt~ = dt, dq~ = R dq + v dt, dp~ = R dp + f dt, de~ = de + v.dp - f.dq + r dt.
Displacement hamilton_transform(const HamiltonGroupElement& g, const Displacement& d);
Matrix hamilton_matrix(const HamiltonGroupElement& g);

}  // namespace reciprel
