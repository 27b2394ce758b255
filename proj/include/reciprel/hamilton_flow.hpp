#pragma once

// Numerical check that Hamiltonian flows on extended phase space have
// Jacobians preserving both the symplectic 2-form -de^dt + dp^dq and the
// degenerate time line element dt^2.
//
// The flow of H(p, q, t) is realized on (t, q, e, p) as
//     dt/ds = 1,  dq/ds = dH/dp,  de/ds = dH/dt,  dp/ds = -dH/dq,
// so e - H is conserved along trajectories and e is constant whenever H does
// not depend on t. This is the Hamiltonian flow of K = H - e for the 2-form
// above, hence its Jacobian is symplectic.

#include "reciprel/common.hpp"
#include "reciprel/phase_space_metrics.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace reciprel {

/// Base step for central-difference gradients of H; scaled per coordinate by
/// max(1, |x|).
inline constexpr double kGradientStep = 1e-6;

/// Default central-difference step for flow Jacobians.
inline constexpr double kJacobianStep = 1e-5;

struct ExtendedState {
    double t = 0.0;
    Vector q;
    double e = 0.0;
    Vector p;

    ExtendedState() = default;
    ExtendedState(double t_, Vector q_, double e_, Vector p_);

    /// Convenience for n = 1.
    static ExtendedState scalar(double t, double q, double e, double p);
    static ExtendedState from_vector(const Vector& z);

    int n() const noexcept { return static_cast<int>(q.size()); }
    Vector to_vector() const;
};

struct EnergyGradient {
    Vector dH_dp;
    Vector dH_dq;
    double dH_dt = 0.0;
};

class HamiltonianSystem {
public:
    using EnergyFn = std::function<double(const Vector& p, const Vector& q, double t)>;
    using GradientFn = std::function<EnergyGradient(const Vector& p, const Vector& q, double t)>;

    /// `energy` and `gradient` must be pure functions of their arguments.
    HamiltonianSystem(int n, EnergyFn energy, GradientFn gradient = {}, std::string name = "custom");

    static HamiltonianSystem zero(int n);
    /// p^2 / 2
    static HamiltonianSystem free_particle(int n);
    /// (p^2 + q^2) / 2
    static HamiltonianSystem harmonic(int n);
    /// (p^2 + q^2) / 2 + coupling * (sum q) * t
    static HamiltonianSystem driven(int n, double coupling = 0.1);

    int n() const noexcept { return n_; }
    const std::string& name() const noexcept { return name_; }
    bool has_analytic_gradient() const noexcept { return static_cast<bool>(gradient_); }

    double energy(const Vector& p, const Vector& q, double t) const;

    /// Analytic gradient when one was supplied, otherwise fd_gradient.
    EnergyGradient gradient(const Vector& p, const Vector& q, double t) const;

    /// Central differences with step kGradientStep * max(1, |x_i|).
    EnergyGradient fd_gradient(const Vector& p, const Vector& q, double t) const;

private:
    int n_;
    EnergyFn energy_;
    GradientFn gradient_;
    std::string name_;
};

/// Largest relative mismatch between the analytic and finite-difference
/// gradients at `probes` random points with coordinates in [-2, 2).
/// Zero when the system has no analytic gradient.
double gradient_consistency(const HamiltonianSystem& sys, int probes, std::uint64_t seed = 0);

/// Sum of coeff * p^a q^b t^c for n = 1. The file form is a JSON object
/// whose keys are exponent triples "a,b,c" (p-degree, q-degree, t-degree)
/// and whose values are real coefficients, e.g.
///     {"2,0,0": 0.5, "0,2,0": 0.5, "0,1,1": 0.1}
class PolynomialHamiltonian {
public:
    struct Term {
        int p_degree;
        int q_degree;
        int t_degree;
        double coeff;
    };

    explicit PolynomialHamiltonian(std::vector<Term> terms);

    /// Throws DomainError on malformed keys, negative degrees or non-numeric
    /// coefficients.
    static PolynomialHamiltonian from_json(const std::string& text);

    const std::vector<Term>& terms() const noexcept { return terms_; }
    double evaluate(double p, double q, double t) const;
    EnergyGradient gradient(double p, double q, double t) const;
    HamiltonianSystem system(std::string name = "polynomial") const;

private:
    std::vector<Term> terms_;
};

/// Vector field on (t, q, e, p) coordinates.
using VectorField = std::function<Vector(const Vector& z)>;

/// (1, dH/dp, dH/dt, -dH/dq) at z.
VectorField hamiltonian_field(const HamiltonianSystem& sys);

class IntegrationFailure : public Error {
public:
    IntegrationFailure(const std::string& what, ExtendedState last_good)
        : Error(what), last_good_(std::move(last_good)) {}
    const ExtendedState& last_good() const noexcept { return last_good_; }

private:
    ExtendedState last_good_;
};

/// Classical fixed-step fourth-order Runge-Kutta over an elapsed time
/// `duration` (which may be negative). Throws IntegrationFailure when a
/// non-finite value appears.
Vector integrate_field(const VectorField& field, const Vector& z0, double duration, int steps);

/// Advances z0 by elapsed time t1 along the flow of sys.
ExtendedState integrate_flow(const HamiltonianSystem& sys, const ExtendedState& z0, double t1,
                             int steps);

struct FlowJacobian {
    /// d(end)/d(base), (2n+2)x(2n+2) in (t, q, e, p) order.
    Matrix J;
    ExtendedState base;
    /// Flow of base over elapsed / 2 and over elapsed.
    ExtendedState mid;
    ExtendedState end;
    double elapsed = 0.0;
    int steps = 0;
};

/// Central differences of the time-t1 flow with respect to every coordinate
/// of z0, step h. With `richardson`, combines steps h and h/2 to cancel the
/// O(h^2) term.
FlowJacobian flow_jacobian(const HamiltonianSystem& sys, const ExtendedState& z0, double t1,
                           int steps, double h = kJacobianStep, bool richardson = false);
FlowJacobian flow_jacobian(const VectorField& field, const ExtendedState& z0, double t1,
                           int steps, double h = kJacobianStep, bool richardson = false);

/// omega(d1, d2) = -(de1 dt2 - dt1 de2) + sum_i (dp1_i dq2_i - dq1_i dp2_i).
double symplectic_two_form(const Displacement& d1, const Displacement& d2);

struct HspReport {
    double symplectic_residual;
    double time_row_residual;
    bool pass;
};

/// symplectic_residual = max |J^t Omega J - Omega|; time_row_residual =
/// max |row_t(J) - (1, 0, ..., 0)|.
HspReport check_hsp_membership(const Matrix& J, double tol);
HspReport check_hsp_membership(const FlowJacobian& J, double tol);

/// max(1e-5, 100 h^2 + 10 / steps^4).
double hsp_tolerance(double h, int steps);

enum class StructureVerdict { Pass, Fail, Inconclusive };

const char* to_string(StructureVerdict v) noexcept;

/// Generator slots of a short-time flow compared with the gradient of H.
///
/// For elapsed time dt the displacement z(dt) - z(0) divided by dt is the
/// image of a unit time step, (1, v, r, f) in (t, q, e, p) order. It is read
/// from the flow that produced J (J.base, J.end), and its slots are checked
/// against v = dH/dp, f = -dH/dq and r = dH/dt of `sys`, evaluated by finite
/// differences at the base state. The Jacobian's zero pattern
/// (dq~/de = 0, dp~/de = 0, de~/de = 1, time row (1, 0, ..., 0)) is checked
/// alongside. `curvature` is the gap between the secants over dt and dt / 2
/// (J.mid); a large gap means dt is too long to read the generator.
struct HamiltonStructureReport {
    Vector v_slot;
    Vector f_slot;
    double r_slot = 0.0;
    Vector expected_v;
    Vector expected_f;
    double expected_r = 0.0;
    /// max over all slots of |slot - expected|
    double generator_error = 0.0;
    double zero_pattern_residual = 0.0;
    /// |secant over dt - secant over dt/2|; large values mean dt is too long
    /// for the first-order reading and the verdict becomes Inconclusive.
    double curvature = 0.0;
    StructureVerdict verdict = StructureVerdict::Fail;
};

HamiltonStructureReport verify_hamilton_structure(const FlowJacobian& J,
                                                  const HamiltonianSystem& sys, double tol);

}  // namespace reciprel
