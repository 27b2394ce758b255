#include "reciprel/phase_space_metrics.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace reciprel {

namespace {

void require_n(int n) {
    if (n < 1) throw DimensionError("spatial dimension must be at least 1");
}

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) throw DomainError(std::string(what) + " must be finite");
}

void require_finite(const Vector& x, const char* what) {
    if (!x.allFinite()) throw DomainError(std::string(what) + " must be finite");
}

// cos and sin of 2*pi*k/count, exact on quarter turns.
std::pair<double, double> cos_sin_turn(int k, int count) {
    if ((4LL * k) % count == 0) {
        switch (static_cast<int>((4LL * k / count) % 4)) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, -1.0};
        }
    }
    const double a = 2.0 * std::numbers::pi * k / count;
    return {std::cos(a), std::sin(a)};
}

}  // namespace

MetricSpec MetricSpec::born(int n, double c, double b) {
    require_n(n);
    require_positive(c, "c");
    require_positive(b, "b");
    return {MetricKind::Born, n, c, b};
}

MetricSpec MetricSpec::minkowski(int n, double c) {
    require_n(n);
    require_positive(c, "c");
    return {MetricKind::Minkowski, n, c, 0.0};
}

MetricSpec MetricSpec::newton(int n) {
    require_n(n);
    return {MetricKind::Newton, n, 0.0, 0.0};
}

Matrix MetricSpec::matrix() const {
    const int dim = 2 * n_ + 2;
    Vector diag = Vector::Zero(dim);
    diag(0) = 1.0;
    if (kind_ != MetricKind::Newton) {
        diag.segment(1, n_).setConstant(-1.0 / (c_ * c_));
    }
    if (kind_ == MetricKind::Born) {
        diag(n_ + 1) = 1.0 / (b_ * b_ * c_ * c_);
        diag.tail(n_).setConstant(-1.0 / (b_ * b_));
    }
    return diag.asDiagonal();
}

Displacement::Displacement(double dt_, Vector dq_, double de_, Vector dp_)
    : dt(dt_), dq(std::move(dq_)), de(de_), dp(std::move(dp_)) {
    require_n(static_cast<int>(dq.size()));
    if (dq.size() != dp.size()) throw DimensionError("Displacement: dq and dp lengths differ");
    require_finite(dt, "dt");
    require_finite(de, "de");
    require_finite(dq, "dq");
    require_finite(dp, "dp");
}

Displacement Displacement::zero(int n) {
    require_n(n);
    return {0.0, Vector::Zero(n), 0.0, Vector::Zero(n)};
}

Displacement Displacement::from_vector(const Vector& v) {
    if (v.size() < 4 || v.size() % 2 != 0) {
        throw DimensionError("displacement vector must have length 2n+2 with n >= 1");
    }
    const int n = static_cast<int>(v.size() / 2 - 1);
    return {v(0), v.segment(1, n), v(n + 1), v.tail(n)};
}

Vector Displacement::to_vector() const {
    const int k = n();
    Vector out(2 * k + 2);
    out << dt, dq, de, dp;
    return out;
}

KinematicState::KinematicState(Vector v_, Vector f_, double r_)
    : v(std::move(v_)), f(std::move(f_)), r(r_) {
    require_n(static_cast<int>(v.size()));
    if (v.size() != f.size()) throw DimensionError("KinematicState: v and f lengths differ");
    require_finite(v, "velocity");
    require_finite(f, "force");
    require_finite(r, "power");
}

KinematicState KinematicState::scalar(double v, double f, double r) {
    return {Vector::Constant(1, v), Vector::Constant(1, f), r};
}

KinematicState KinematicState::rest(int n) {
    require_n(n);
    return {Vector::Zero(n), Vector::Zero(n), 0.0};
}

Matrix omega_matrix(int n) {
    require_n(n);
    Matrix om = Matrix::Zero(2 * n + 2, 2 * n + 2);
    const int e = n + 1;
    om(0, e) = 1.0;
    om(e, 0) = -1.0;
    for (int i = 0; i < n; ++i) {
        om(e + 1 + i, 1 + i) = 1.0;
        om(1 + i, e + 1 + i) = -1.0;
    }
    return om;
}

const char* to_string(IntervalClass c) noexcept {
    switch (c) {
        case IntervalClass::Timelike: return "timelike";
        case IntervalClass::Null: return "null";
        case IntervalClass::Spacelike: return "spacelike";
    }
    return "unknown";
}

double line_element(const MetricSpec& m, const Displacement& d) {
    if (m.n() != d.n()) throw DimensionError("line_element: metric and displacement dimensions differ");
    double s = d.dt * d.dt;
    if (m.kind() == MetricKind::Newton) return s;
    const double c2 = m.c() * m.c();
    s -= d.dq.squaredNorm() / c2;
    if (m.kind() == MetricKind::Minkowski) return s;
    const double b2 = m.b() * m.b();
    return s + d.de * d.de / (b2 * c2) - d.dp.squaredNorm() / b2;
}

IntervalClass interval_class(const MetricSpec& m, const Displacement& d, double tol) {
    const double s = line_element(m, d);
    if (std::abs(s) <= tol) return IntervalClass::Null;
    return s > 0.0 ? IntervalClass::Timelike : IntervalClass::Spacelike;
}

double proper_time_squared(const Displacement& d, double c) {
    require_positive(c, "c");
    return d.dt * d.dt - d.dq.squaredNorm() / (c * c);
}

double mass_line_element(const Displacement& d, double c) {
    require_positive(c, "c");
    const double c2 = c * c;
    return (d.de * d.de / c2 - d.dp.squaredNorm()) / c2;
}

double null_surface_residual(const KinematicState& s, double c, double b) {
    require_positive(c, "c");
    require_positive(b, "b");
    const double c2 = c * c;
    const double b2 = b * b;
    return 1.0 - s.v.squaredNorm() / c2 - s.f.squaredNorm() / b2 + s.r * s.r / (c2 * b2);
}

double gamma_factor(const KinematicState& s, double c, double b) {
    const double D = null_surface_residual(s, c, b);
    if (!(D > 0.0)) {
        throw NonTimelikeState("state is not timelike: 1 - v^2/c^2 - f^2/b^2 + r^2/(c^2 b^2) = " +
                                   std::to_string(D),
                               D);
    }
    return 1.0 / std::sqrt(D);
}

double mass_rate_squared(const KinematicState& s, double c) {
    require_positive(c, "c");
    const double c2 = c * c;
    return (s.r * s.r / c2 - s.f.squaredNorm()) / c2;
}

NullVelocity null_velocity(double f_mag, double r, double c, double b) {
    require_positive(c, "c");
    require_positive(b, "b");
    const double radicand = 1.0 - f_mag * f_mag / (b * b) + r * r / (c * c * b * b);
    if (radicand < 0.0) {
        throw NoNullVelocity("no real null velocity: 1 - f^2/b^2 + r^2/(c^2 b^2) = " +
                             std::to_string(radicand));
    }
    const double v = c * std::sqrt(radicand);
    return {v, -v};
}

std::vector<NullConePoint> null_cone_sample(double r, double c, double b, int count) {
    require_positive(c, "c");
    require_positive(b, "b");
    if (count < 1) throw DomainError("null_cone_sample: count must be >= 1");
    const double scale = std::sqrt(1.0 + r * r / (c * c * b * b));
    std::vector<NullConePoint> out;
    out.reserve(count);
    for (int k = 0; k < count; ++k) {
        const auto [cs, sn] = cos_sin_turn(k, count);
        const double v = c * scale * cs;
        const double f = b * scale * sn;
        const double angle = 2.0 * std::numbers::pi * k / count;
        const double residual =
            null_surface_residual(KinematicState::scalar(v, f, r), c, b);
        out.push_back({angle, v, f, residual});
    }
    return out;
}

}  // namespace reciprel
