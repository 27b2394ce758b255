#include "reciprel/hamilton_flow.hpp"

#include "reciprel/random.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace reciprel {

namespace {

void require_valid_n(int n) {
    if (n < 1) throw DimensionError("dimension n must be at least 1");
}

double fd_step(double x) { return kGradientStep * std::max(1.0, std::abs(x)); }

double ipow(double x, int k) {
    double out = 1.0;
    for (int i = 0; i < k; ++i) out *= x;
    return out;
}

}  // namespace

ExtendedState::ExtendedState(double t_, Vector q_, double e_, Vector p_)
    : t(t_), q(std::move(q_)), e(e_), p(std::move(p_)) {
    require_valid_n(static_cast<int>(q.size()));
    if (p.size() != q.size()) throw DimensionError("q and p must have the same length");
}

ExtendedState ExtendedState::scalar(double t, double q, double e, double p) {
    return {t, Vector::Constant(1, q), e, Vector::Constant(1, p)};
}

ExtendedState ExtendedState::from_vector(const Vector& z) {
    if (z.size() < 4 || z.size() % 2 != 0) {
        throw DimensionError("extended state vector must have even length 2n+2 >= 4");
    }
    const int n = static_cast<int>(z.size() / 2 - 1);
    return {z(0), z.segment(1, n), z(n + 1), z.segment(n + 2, n)};
}

Vector ExtendedState::to_vector() const {
    const int k = n();
    Vector z(2 * k + 2);
    z << t, q, e, p;
    return z;
}

HamiltonianSystem::HamiltonianSystem(int n, EnergyFn energy, GradientFn gradient, std::string name)
    : n_(n), energy_(std::move(energy)), gradient_(std::move(gradient)), name_(std::move(name)) {
    require_valid_n(n);
    if (!energy_) throw DomainError("energy function is required");
}

HamiltonianSystem HamiltonianSystem::zero(int n) {
    return {n, [](const Vector&, const Vector&, double) { return 0.0; },
            [n](const Vector&, const Vector&, double) {
                return EnergyGradient{Vector::Zero(n), Vector::Zero(n), 0.0};
            },
            "zero"};
}

HamiltonianSystem HamiltonianSystem::free_particle(int n) {
    return {n, [](const Vector& p, const Vector&, double) { return 0.5 * p.squaredNorm(); },
            [n](const Vector& p, const Vector&, double) {
                return EnergyGradient{p, Vector::Zero(n), 0.0};
            },
            "free"};
}

HamiltonianSystem HamiltonianSystem::harmonic(int n) {
    return {n,
            [](const Vector& p, const Vector& q, double) {
                return 0.5 * (p.squaredNorm() + q.squaredNorm());
            },
            [](const Vector& p, const Vector& q, double) { return EnergyGradient{p, q, 0.0}; },
            "harmonic"};
}

HamiltonianSystem HamiltonianSystem::driven(int n, double coupling) {
    return {n,
            [coupling](const Vector& p, const Vector& q, double t) {
                return 0.5 * (p.squaredNorm() + q.squaredNorm()) + coupling * q.sum() * t;
            },
            [coupling](const Vector& p, const Vector& q, double t) {
                Vector dq = q.array() + coupling * t;
                return EnergyGradient{p, dq, coupling * q.sum()};
            },
            "driven"};
}

double HamiltonianSystem::energy(const Vector& p, const Vector& q, double t) const {
    if (p.size() != n_ || q.size() != n_) throw DimensionError("state dimension mismatch");
    return energy_(p, q, t);
}

EnergyGradient HamiltonianSystem::gradient(const Vector& p, const Vector& q, double t) const {
    if (!gradient_) return fd_gradient(p, q, t);
    if (p.size() != n_ || q.size() != n_) throw DimensionError("state dimension mismatch");
    return gradient_(p, q, t);
}

EnergyGradient HamiltonianSystem::fd_gradient(const Vector& p, const Vector& q, double t) const {
    if (p.size() != n_ || q.size() != n_) throw DimensionError("state dimension mismatch");
    EnergyGradient g{Vector(n_), Vector(n_), 0.0};
    for (int i = 0; i < n_; ++i) {
        const double h = fd_step(p(i));
        Vector hi = p, lo = p;
        hi(i) += h;
        lo(i) -= h;
        g.dH_dp(i) = (energy_(hi, q, t) - energy_(lo, q, t)) / (hi(i) - lo(i));
    }
    for (int i = 0; i < n_; ++i) {
        const double h = fd_step(q(i));
        Vector hi = q, lo = q;
        hi(i) += h;
        lo(i) -= h;
        g.dH_dq(i) = (energy_(p, hi, t) - energy_(p, lo, t)) / (hi(i) - lo(i));
    }
    const double h = fd_step(t);
    g.dH_dt = (energy_(p, q, t + h) - energy_(p, q, t - h)) / ((t + h) - (t - h));
    return g;
}

double gradient_consistency(const HamiltonianSystem& sys, int probes, std::uint64_t seed) {
    if (!sys.has_analytic_gradient()) return 0.0;
    Rng rng(seed);
    const int n = sys.n();
    double worst = 0.0;
    auto rel = [](double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); };
    for (int k = 0; k < probes; ++k) {
        const Vector p = rng.uniform_vector(n, -2.0, 2.0);
        const Vector q = rng.uniform_vector(n, -2.0, 2.0);
        const double t = rng.uniform(-2.0, 2.0);
        const EnergyGradient a = sys.gradient(p, q, t);
        const EnergyGradient d = sys.fd_gradient(p, q, t);
        for (int i = 0; i < n; ++i) {
            worst = std::max({worst, rel(a.dH_dp(i), d.dH_dp(i)), rel(a.dH_dq(i), d.dH_dq(i))});
        }
        worst = std::max(worst, rel(a.dH_dt, d.dH_dt));
    }
    return worst;
}

PolynomialHamiltonian::PolynomialHamiltonian(std::vector<Term> terms) : terms_(std::move(terms)) {
    for (const Term& t : terms_) {
        if (t.p_degree < 0 || t.q_degree < 0 || t.t_degree < 0) {
            throw DomainError("polynomial degrees must be nonnegative");
        }
        if (!std::isfinite(t.coeff)) throw DomainError("polynomial coefficients must be finite");
    }
}

PolynomialHamiltonian PolynomialHamiltonian::from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw DomainError(std::string("polynomial file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw DomainError("polynomial file must be a JSON object");

    std::vector<Term> terms;
    for (const auto& [key, value] : doc.items()) {
        std::string cleaned;
        for (char ch : key) {
            if (ch == '[' || ch == ']' || ch == '(' || ch == ')' || ch == ' ') continue;
            cleaned.push_back(ch == ',' ? ' ' : ch);
        }
        std::istringstream in(cleaned);
        int a = 0, b = 0, c = 0;
        std::string rest;
        if (!(in >> a >> b >> c) || (in >> rest)) {
            throw DomainError("polynomial key '" + key + "' is not an exponent triple a,b,c");
        }
        if (!value.is_number()) {
            throw DomainError("coefficient for '" + key + "' must be a number");
        }
        terms.push_back({a, b, c, value.get<double>()});
    }
    return PolynomialHamiltonian(std::move(terms));
}

double PolynomialHamiltonian::evaluate(double p, double q, double t) const {
    double h = 0.0;
    for (const Term& k : terms_) {
        h += k.coeff * ipow(p, k.p_degree) * ipow(q, k.q_degree) * ipow(t, k.t_degree);
    }
    return h;
}

EnergyGradient PolynomialHamiltonian::gradient(double p, double q, double t) const {
    double gp = 0.0, gq = 0.0, gt = 0.0;
    for (const Term& k : terms_) {
        const double pp = ipow(p, k.p_degree), qq = ipow(q, k.q_degree), tt = ipow(t, k.t_degree);
        if (k.p_degree > 0) gp += k.coeff * k.p_degree * ipow(p, k.p_degree - 1) * qq * tt;
        if (k.q_degree > 0) gq += k.coeff * k.q_degree * pp * ipow(q, k.q_degree - 1) * tt;
        if (k.t_degree > 0) gt += k.coeff * k.t_degree * pp * qq * ipow(t, k.t_degree - 1);
    }
    return {Vector::Constant(1, gp), Vector::Constant(1, gq), gt};
}

HamiltonianSystem PolynomialHamiltonian::system(std::string name) const {
    PolynomialHamiltonian self = *this;
    return {1,
            [self](const Vector& p, const Vector& q, double t) {
                return self.evaluate(p(0), q(0), t);
            },
            [self](const Vector& p, const Vector& q, double t) {
                return self.gradient(p(0), q(0), t);
            },
            std::move(name)};
}

VectorField hamiltonian_field(const HamiltonianSystem& sys) {
    return [sys](const Vector& z) {
        const int n = sys.n();
        if (z.size() != 2 * n + 2) throw DimensionError("state dimension mismatch");
        const Vector q = z.segment(1, n);
        const Vector p = z.segment(n + 2, n);
        const EnergyGradient g = sys.gradient(p, q, z(0));
        Vector dz(2 * n + 2);
        dz << 1.0, g.dH_dp, g.dH_dt, -g.dH_dq;
        return dz;
    };
}

Vector integrate_field(const VectorField& field, const Vector& z0, double duration, int steps) {
    if (steps < 1) throw DomainError("steps must be at least 1");
    if (!std::isfinite(duration)) throw DomainError("duration must be finite");
    if (!z0.allFinite()) throw DomainError("initial state must be finite");
    const double dt = duration / steps;
    Vector z = z0;
    for (int k = 0; k < steps; ++k) {
        const Vector k1 = field(z);
        const Vector k2 = field(z + 0.5 * dt * k1);
        const Vector k3 = field(z + 0.5 * dt * k2);
        const Vector k4 = field(z + dt * k3);
        Vector next = z + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!next.allFinite()) {
            throw IntegrationFailure("non-finite state after step " + std::to_string(k + 1),
                                     ExtendedState::from_vector(z));
        }
        z = std::move(next);
    }
    return z;
}

ExtendedState integrate_flow(const HamiltonianSystem& sys, const ExtendedState& z0, double t1,
                             int steps) {
    if (z0.n() != sys.n()) throw DimensionError("state dimension mismatch");
    return ExtendedState::from_vector(
        integrate_field(hamiltonian_field(sys), z0.to_vector(), t1, steps));
}

namespace {

Matrix central_jacobian(const VectorField& field, const Vector& z0, double t1, int steps,
                        double h) {
    const Eigen::Index m = z0.size();
    Matrix J(m, m);
    for (Eigen::Index j = 0; j < m; ++j) {
        Vector hi = z0, lo = z0;
        hi(j) += h;
        lo(j) -= h;
        J.col(j) = (integrate_field(field, hi, t1, steps) - integrate_field(field, lo, t1, steps)) /
                   (hi(j) - lo(j));
    }
    return J;
}

}  // namespace

FlowJacobian flow_jacobian(const VectorField& field, const ExtendedState& z0, double t1, int steps,
                           double h, bool richardson) {
    require_positive(h, "h");
    const Vector base = z0.to_vector();
    FlowJacobian out;
    out.J = central_jacobian(field, base, t1, steps, h);
    if (richardson) {
        const Matrix half = central_jacobian(field, base, t1, steps, 0.5 * h);
        out.J = (4.0 * half - out.J) / 3.0;
    }
    out.base = z0;
    out.mid = ExtendedState::from_vector(integrate_field(field, base, 0.5 * t1, std::max(1, steps / 2)));
    out.end = ExtendedState::from_vector(integrate_field(field, base, t1, steps));
    out.elapsed = t1;
    out.steps = steps;
    return out;
}

FlowJacobian flow_jacobian(const HamiltonianSystem& sys, const ExtendedState& z0, double t1,
                           int steps, double h, bool richardson) {
    if (z0.n() != sys.n()) throw DimensionError("state dimension mismatch");
    return flow_jacobian(hamiltonian_field(sys), z0, t1, steps, h, richardson);
}

double symplectic_two_form(const Displacement& d1, const Displacement& d2) {
    if (d1.n() != d2.n()) throw DimensionError("displacement dimension mismatch");
    return -(d1.de * d2.dt - d1.dt * d2.de) + d1.dp.dot(d2.dq) - d1.dq.dot(d2.dp);
}

HspReport check_hsp_membership(const Matrix& J, double tol) {
    if (J.rows() != J.cols() || J.rows() < 4 || J.rows() % 2 != 0) {
        throw DimensionError("Jacobian must be square with even size 2n+2 >= 4");
    }
    const int n = static_cast<int>(J.rows() / 2 - 1);
    const Matrix Om = omega_matrix(n);
    const double symp = max_abs(J.transpose() * Om * J - Om);
    Vector row = Vector::Zero(J.cols());
    row(0) = 1.0;
    const double time_row = max_abs(J.row(0).transpose() - row);
    return {symp, time_row, symp <= tol && time_row <= tol};
}

HspReport check_hsp_membership(const FlowJacobian& J, double tol) {
    return check_hsp_membership(J.J, tol);
}

double hsp_tolerance(double h, int steps) {
    const double s = static_cast<double>(steps);
    return std::max(1e-5, 100.0 * h * h + 10.0 / (s * s * s * s));
}

const char* to_string(StructureVerdict v) noexcept {
    switch (v) {
        case StructureVerdict::Pass: return "pass";
        case StructureVerdict::Fail: return "fail";
        case StructureVerdict::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

HamiltonStructureReport verify_hamilton_structure(const FlowJacobian& J,
                                                  const HamiltonianSystem& sys, double tol) {
    const int n = sys.n();
    if (J.base.n() != n || J.J.rows() != 2 * n + 2) {
        throw DimensionError("Jacobian dimension does not match the system");
    }
    if (!(J.elapsed != 0.0)) throw DomainError("elapsed time must be nonzero");
    const Vector z0 = J.base.to_vector();
    const double dt = J.elapsed;

    const Vector secant = (J.end.to_vector() - z0) / dt;
    const Vector half = (J.mid.to_vector() - z0) / (0.5 * dt);

    HamiltonStructureReport out;
    out.v_slot = secant.segment(1, n);
    out.r_slot = secant(n + 1);
    out.f_slot = secant.segment(n + 2, n);

    const EnergyGradient g = sys.fd_gradient(J.base.p, J.base.q, J.base.t);
    out.expected_v = g.dH_dp;
    out.expected_f = -g.dH_dq;
    out.expected_r = g.dH_dt;

    out.generator_error = std::max({max_abs(out.v_slot - out.expected_v),
                                    max_abs(out.f_slot - out.expected_f),
                                    std::abs(out.r_slot - out.expected_r),
                                    std::abs(secant(0) - 1.0)});

    const Eigen::Index e = n + 1;
    double zp = std::abs(J.J(e, e) - 1.0);
    zp = std::max(zp, max_abs(J.J.col(e).segment(1, n)));
    zp = std::max(zp, max_abs(J.J.col(e).segment(n + 2, n)));
    Vector row = Vector::Zero(2 * n + 2);
    row(0) = 1.0;
    zp = std::max(zp, max_abs(J.J.row(0).transpose() - row));
    out.zero_pattern_residual = zp;

    out.curvature = max_abs(secant - half);

    if (out.zero_pattern_residual > tol) {
        out.verdict = StructureVerdict::Fail;
    } else if (out.generator_error <= tol) {
        out.verdict = StructureVerdict::Pass;
    } else if (out.curvature > tol) {
        out.verdict = StructureVerdict::Inconclusive;
    } else {
        out.verdict = StructureVerdict::Fail;
    }
    return out;
}

}  // namespace reciprel
