#include "reciprel/reciprocal_transforms.hpp"

#include "reciprel/random.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace reciprel {

namespace {

int n_from_side(const Matrix& m) {
    if (m.rows() != m.cols() || m.rows() < 4 || m.rows() % 2 != 0) {
        throw DimensionError("expected a square matrix of size 2n+2 with n >= 1");
    }
    return static_cast<int>(m.rows() / 2 - 1);
}

Displacement apply_matrix(const Matrix& m, const Displacement& d) {
    if (m.rows() != 2 * d.n() + 2) throw DimensionError("matrix does not match displacement");
    return Displacement::from_vector(m * d.to_vector());
}

void require_increasing(const std::vector<double>& xs, const char* what) {
    if (xs.empty()) throw DomainError(std::string(what) + ": empty sweep");
    for (std::size_t i = 0; i < xs.size(); ++i) {
        require_positive(xs[i], what);
        if (i > 0 && !(xs[i] > xs[i - 1])) {
            throw DomainError(std::string(what) + ": values must be strictly increasing");
        }
    }
}

void finish_report(ContractionReport& report) {
    report.monotone = true;
    std::vector<double> xs, ys;
    bool any_zero = false;
    for (std::size_t i = 0; i < report.samples.size(); ++i) {
        const auto& s = report.samples[i];
        if (i > 0 && s.matrix_deviation > report.samples[i - 1].matrix_deviation) {
            report.monotone = false;
        }
        any_zero = any_zero || !(s.matrix_deviation > 0.0);
        xs.push_back(s.scale);
        ys.push_back(s.matrix_deviation);
    }
    report.slope = (any_zero || xs.size() < 2) ? std::numeric_limits<double>::quiet_NaN()
                                               : loglog_slope(xs, ys);
}

}  // namespace

Matrix minkowski_eta(int n, double c) {
    require_positive(c, "c");
    Matrix eta = Matrix::Identity(n + 1, n + 1);
    eta.bottomRightCorner(n, n) *= -1.0 / (c * c);
    return eta;
}

double lorentz_residual(const Matrix& L, double c) {
    if (L.rows() != L.cols() || L.rows() < 2) throw DimensionError("Lorentz matrix must be square");
    const Matrix eta = minkowski_eta(static_cast<int>(L.rows() - 1), c);
    return max_abs(L.transpose() * eta * L - eta);
}

Matrix lorentz_boost(const Vector& v, double c) {
    require_positive(c, "c");
    const int n = static_cast<int>(v.size());
    if (n < 1) throw DimensionError("lorentz_boost: empty velocity");
    const double speed2 = v.squaredNorm();
    if (!(speed2 < c * c)) throw SuperluminalError("lorentz_boost: |v| >= c");
    const double g = 1.0 / std::sqrt(1.0 - speed2 / (c * c));

    Matrix L = Matrix::Identity(n + 1, n + 1);
    L(0, 0) = g;
    L.block(0, 1, 1, n) = g * v.transpose() / (c * c);
    L.block(1, 0, n, 1) = g * v;
    if (speed2 > 0.0) {
        L.bottomRightCorner(n, n) += (g - 1.0) * v * v.transpose() / speed2;
    }
    return L;
}

double born_metric_residual(const Matrix& Gamma, double c, double b) {
    const Matrix G = MetricSpec::born(n_from_side(Gamma), c, b).matrix();
    return max_abs(Gamma.transpose() * G * Gamma - G);
}

double omega_residual(const Matrix& Gamma) {
    const Matrix Om = omega_matrix(n_from_side(Gamma));
    return max_abs(Gamma.transpose() * Om * Gamma - Om);
}

UnitaryElement UnitaryElement::from_matrix(Matrix Gamma, double c, double b, double tol) {
    n_from_side(Gamma);
    const double metric = born_metric_residual(Gamma, c, b);
    if (!(metric <= tol)) {
        throw GroupMembershipError("matrix does not preserve the Born metric (residual " +
                                       std::to_string(metric) + ")",
                                   metric);
    }
    const double form = omega_residual(Gamma);
    if (!(form <= tol)) {
        throw GroupMembershipError("matrix does not preserve the symplectic form (residual " +
                                       std::to_string(form) + ")",
                                   form);
    }
    return {std::move(Gamma), c, b};
}

UnitaryElement UnitaryElement::identity(int n, double c, double b) {
    require_positive(c, "c");
    require_positive(b, "b");
    return {Matrix::Identity(2 * n + 2, 2 * n + 2), c, b};
}

Displacement UnitaryElement::apply(const Displacement& d) const { return apply_matrix(Gamma_, d); }

UnitaryElement UnitaryElement::inverse() const { return {Gamma_.inverse(), c_, b_}; }

UnitaryElement unitary_from_lorentz(const Matrix& Lambda, double c, double b) {
    const double res = lorentz_residual(Lambda, c);
    if (!(res <= kGroupTol)) {
        throw GroupMembershipError("not a Lorentz matrix (residual " + std::to_string(res) + ")",
                                   res);
    }
    const int n = static_cast<int>(Lambda.rows() - 1);
    // (e, p) = S (e/c^2, p) with S = diag(c^2, 1_n).
    Vector s = Vector::Ones(n + 1);
    s(0) = c * c;
    const Matrix energy_block = s.asDiagonal() * Lambda * s.cwiseInverse().asDiagonal();

    Matrix Gamma = Matrix::Zero(2 * n + 2, 2 * n + 2);
    Gamma.topLeftCorner(n + 1, n + 1) = Lambda;
    Gamma.bottomRightCorner(n + 1, n + 1) = energy_block;
    return UnitaryElement::from_matrix(std::move(Gamma), c, b);
}

Displacement explicit_transform(const KinematicState& s, const Displacement& d, double c,
                                double b) {
    if (s.n() != 1 || d.n() != 1) {
        throw DimensionError("explicit_transform is defined for n = 1 only");
    }
    const double g = gamma_factor(s, c, b);
    const double v = s.v(0);
    const double f = s.f(0);
    const double r = s.r;
    const double c2 = c * c;
    const double b2 = b * b;
    const double dt = d.dt, dq = d.dq(0), de = d.de, dp = d.dp(0);

    const double t_img = g * (dt + v / c2 * dq + f / b2 * dp - r / (b2 * c2) * de);
    const double q_img = g * (dq + v * dt + r / b2 * dp - f / b2 * de);
    const double p_img = g * (dp + f * dt - r / c2 * dq + v / c2 * de);
    const double e_img = g * (de + v * dp - f * dq + r * dt);
    return {t_img, Vector::Constant(1, q_img), e_img, Vector::Constant(1, p_img)};
}

Matrix transform_matrix(const KinematicState& s, double c, double b) {
    Matrix m(4, 4);
    for (int j = 0; j < 4; ++j) {
        m.col(j) = explicit_transform(s, Displacement::from_vector(Vector::Unit(4, j)), c, b)
                       .to_vector();
    }
    return m;
}

UnitaryElement unitary_from_state(const KinematicState& s, double c, double b) {
    return UnitaryElement::from_matrix(transform_matrix(s, c, b), c, b);
}

double born_invariance_residual(const KinematicState& s, double c, double b, int trials,
                                std::uint64_t seed) {
    if (trials < 1) throw DomainError("born_invariance_residual: trials must be >= 1");
    const MetricSpec G = MetricSpec::born(1, c, b);
    // Validates the state up front so the error does not depend on trials.
    gamma_factor(s, c, b);
    Rng rng(seed);
    double worst = 0.0;
    for (int k = 0; k < trials; ++k) {
        const Displacement d = random_displacement(1, rng);
        const double diff =
            std::abs(line_element(G, explicit_transform(s, d, c, b)) - line_element(G, d));
        worst = std::max(worst, diff);
    }
    return worst;
}

bool is_lorentz_subgroup(const Matrix& Gamma, double c, double tol) {
    const int n = n_from_side(Gamma);
    const int k = n + 1;
    if (max_abs(Gamma.topRightCorner(k, k)) > tol) return false;
    if (max_abs(Gamma.bottomLeftCorner(k, k)) > tol) return false;
    return lorentz_residual(Gamma.topLeftCorner(k, k), c) <= tol;
}

bool is_lorentz_subgroup(const UnitaryElement& u, double tol) {
    return is_lorentz_subgroup(u.matrix(), u.c(), tol);
}

Matrix contraction_limit_matrix(const KinematicState& s, double c) {
    if (s.n() != 1) throw DimensionError("contraction_limit_matrix is defined for n = 1 only");
    require_positive(c, "c");
    const double v = s.v(0);
    const double f = s.f(0);
    const double r = s.r;
    const double c2 = c * c;
    if (!(v * v < c2)) throw SuperluminalError("contraction limit needs |v| < c");
    const double g = 1.0 / std::sqrt(1.0 - v * v / c2);
    Matrix m(4, 4);
    // columns: dt, dq, de, dp
    m << 1.0, v / c2, 0.0, 0.0,
         v,   1.0,    0.0, 0.0,
         r,   -f,     1.0, v,
         f,   -r / c2, v / c2, 1.0;
    return g * m;
}

ContractionReport contract_b(const KinematicState& s, const Displacement& d, double c,
                             const std::vector<double>& b_values) {
    require_increasing(b_values, "b");
    ContractionReport report;
    report.limit_matrix = contraction_limit_matrix(s, c);
    report.limit = apply_matrix(report.limit_matrix, d);
    const Vector limit = report.limit.to_vector();
    for (double b : b_values) {
        const Matrix m = transform_matrix(s, c, b);
        Displacement image = apply_matrix(m, d);
        const double dev = max_abs(image.to_vector() - limit);
        report.samples.push_back({b, std::move(image), dev, max_abs(m - report.limit_matrix)});
    }
    finish_report(report);
    return report;
}

ContractionReport contract_c(const KinematicState& s, const Displacement& d,
                             const std::vector<double>& c_values) {
    require_increasing(c_values, "c");
    const HamiltonGroupElement h(Matrix::Identity(1, 1), s.v, s.f, s.r);
    ContractionReport report;
    report.limit_matrix = hamilton_matrix(h);
    report.limit = hamilton_transform(h, d);
    const Vector limit = report.limit.to_vector();
    for (double c : c_values) {
        const Matrix m = contraction_limit_matrix(s, c);
        Displacement image = apply_matrix(m, d);
        const double dev = max_abs(image.to_vector() - limit);
        report.samples.push_back({c, std::move(image), dev, max_abs(m - report.limit_matrix)});
    }
    finish_report(report);
    return report;
}

std::vector<LineElementGap> born_minkowski_gap(const Displacement& d, double c,
                                               const std::vector<double>& b_values) {
    require_increasing(b_values, "b");
    const double mink = line_element(MetricSpec::minkowski(d.n(), c), d);
    std::vector<LineElementGap> out;
    for (double b : b_values) {
        out.push_back({b, std::abs(line_element(MetricSpec::born(d.n(), c, b), d) - mink)});
    }
    return out;
}

std::vector<LineElementGap> minkowski_newton_gap(const Displacement& d,
                                                 const std::vector<double>& c_values) {
    require_increasing(c_values, "c");
    const double newton = line_element(MetricSpec::newton(d.n()), d);
    std::vector<LineElementGap> out;
    for (double c : c_values) {
        out.push_back({c, std::abs(line_element(MetricSpec::minkowski(d.n(), c), d) - newton)});
    }
    return out;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw DomainError("loglog_slope: need at least two paired samples");
    }
    const auto n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        require_positive(x[i], "loglog_slope x");
        require_positive(y[i], "loglog_slope y");
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

HamiltonGroupElement::HamiltonGroupElement(Matrix R, Vector v, Vector f, double r, double tol)
    : R_(std::move(R)), v_(std::move(v)), f_(std::move(f)), r_(r) {
    const auto n = R_.rows();
    if (n < 1 || R_.cols() != n || v_.size() != n || f_.size() != n) {
        throw DimensionError("HamiltonGroupElement: R must be n x n with v, f of length n");
    }
    const double orth = max_abs(R_.transpose() * R_ - Matrix::Identity(n, n));
    const double det = std::abs(R_.determinant() - 1.0);
    if (!(orth <= tol) || !(det <= tol)) {
        throw GroupMembershipError("R is not a rotation", std::max(orth, det));
    }
}

HamiltonGroupElement HamiltonGroupElement::euclidean(Matrix R, Vector v) {
    const auto n = v.size();
    return {std::move(R), std::move(v), Vector::Zero(n), 0.0};
}

Displacement hamilton_transform(const HamiltonGroupElement& g, const Displacement& d) {
    if (g.n() != d.n()) throw DimensionError("hamilton_transform: dimension mismatch");
    return {d.dt, g.R() * d.dq + g.v() * d.dt, d.de + g.v().dot(d.dp) - g.f().dot(d.dq) + g.r() * d.dt,
            g.R() * d.dp + g.f() * d.dt};
}

Matrix hamilton_matrix(const HamiltonGroupElement& g) {
    const int n = g.n();
    const int e = n + 1;
    Matrix m = Matrix::Zero(2 * n + 2, 2 * n + 2);
    m(0, 0) = 1.0;
    m.block(1, 0, n, 1) = g.v();
    m.block(1, 1, n, n) = g.R();
    m(e, 0) = g.r();
    m.block(e, 1, 1, n) = -g.f().transpose();
    m(e, e) = 1.0;
    m.block(e, e + 1, 1, n) = g.v().transpose();
    m.block(e + 1, 0, n, 1) = g.f();
    m.block(e + 1, e + 1, n, n) = g.R();
    return m;
}

}  // namespace reciprel
