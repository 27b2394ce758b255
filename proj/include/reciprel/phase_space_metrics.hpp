#pragma once

// Line elements on extended phase space and the causal structure of the
// Born metric.
//
// Coordinates are always laid out as (t, q^1..q^n, e, p^1..p^n). The Born
// metric in that order is
//     G = diag(1, -1/c^2 1_n, 1/(b^2 c^2), -1/b^2 1_n),
// the Minkowski and Newton line elements are its degenerate b -> infinity
// and c -> infinity limits, padded with zeros on the energy-momentum block.

#include "reciprel/common.hpp"

#include <vector>

namespace reciprel {

enum class MetricKind { Born, Minkowski, Newton };

class MetricSpec {
public:
    static MetricSpec born(int n, double c, double b);
    static MetricSpec minkowski(int n, double c);
    static MetricSpec newton(int n);
    /// c = b = 1.
    static MetricSpec natural_born(int n) { return born(n, 1.0, 1.0); }

    MetricKind kind() const noexcept { return kind_; }
    int n() const noexcept { return n_; }
    double c() const noexcept { return c_; }
    double b() const noexcept { return b_; }

    /// (2n+2)x(2n+2) diagonal matrix in (t, q, e, p) order.
    Matrix matrix() const;

private:
    MetricSpec(MetricKind kind, int n, double c, double b) : kind_(kind), n_(n), c_(c), b_(b) {}

    MetricKind kind_;
    int n_;
    double c_;
    double b_;
};

struct Displacement {
    double dt = 0.0;
    Vector dq;
    double de = 0.0;
    Vector dp;

    Displacement() = default;
    Displacement(double dt_, Vector dq_, double de_, Vector dp_);

    static Displacement zero(int n);
    /// Inverse of to_vector; the vector length must be 2n+2 with n >= 1.
    static Displacement from_vector(const Vector& v);

    int n() const noexcept { return static_cast<int>(dq.size()); }
    Vector to_vector() const;
};

/// Velocity dq/dt, force dp/dt and power de/dt of a worldline.
struct KinematicState {
    Vector v;
    Vector f;
    double r = 0.0;

    KinematicState() = default;
    KinematicState(Vector v_, Vector f_, double r_);

    /// Convenience for n = 1.
    static KinematicState scalar(double v, double f, double r);
    static KinematicState rest(int n);

    int n() const noexcept { return static_cast<int>(v.size()); }
};

/// Matrix Omega of the symplectic 2-form -de^dt + dp_i^dq^i, so that
/// omega(d1, d2) = d1^t Omega d2 in (t, q, e, p) order.
Matrix omega_matrix(int n);

enum class IntervalClass { Timelike, Null, Spacelike };

const char* to_string(IntervalClass c) noexcept;

double line_element(const MetricSpec& m, const Displacement& d);

IntervalClass interval_class(const MetricSpec& m, const Displacement& d, double tol = kNullTol);

/// Minkowski proper time dt^2 - dq^2/c^2.
double proper_time_squared(const Displacement& d, double c);

/// Mass line element d(mu)^2, defined by c^2 d(mu)^2 = de^2/c^2 - dp^2.
double mass_line_element(const Displacement& d, double c);

/// 1 - v^2/c^2 - f^2/b^2 + r^2/(c^2 b^2); zero exactly on the null
/// hypersurface.
double null_surface_residual(const KinematicState& s, double c, double b);

/// 1/sqrt(null_surface_residual). Throws NonTimelikeState when the
/// denominator is not strictly positive.
double gamma_factor(const KinematicState& s, double c, double b);

/// (d mu/dt)^2 = (r^2/c^2 - f^2)/c^2. Signed: negative values are valid
/// off-shell states, so callers take the square root only when >= 0.
double mass_rate_squared(const KinematicState& s, double c);

struct NullVelocity {
    double plus;
    double minus;
};

/// Speeds +/- c sqrt(1 - f^2/b^2 + r^2/(c^2 b^2)) at which a state with force
/// magnitude f_mag and power r lies on the null hypersurface. Throws
/// NoNullVelocity when the radicand is negative.
///
/// At f = 0, r = 2bc this gives +/- sqrt(5) c; +/- 2c does not satisfy the
/// null condition there.
NullVelocity null_velocity(double f_mag, double r, double c, double b);

struct NullConePoint {
    double angle;
    double v;
    double f;
    double residual;
};

/// `count` points on the ellipse v^2/c^2 + f^2/b^2 = 1 + r^2/(c^2 b^2),
/// at angles 2 pi k / count. Angles that are multiples of a quarter turn
/// evaluate their cosine and sine exactly.
std::vector<NullConePoint> null_cone_sample(double r, double c, double b, int count);

}  // namespace reciprel
