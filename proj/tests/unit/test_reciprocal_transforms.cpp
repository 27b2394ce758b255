#include "reciprel/random.hpp"
#include "reciprel/reciprocal_transforms.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace reciprel;

namespace {

Displacement d1(double dt, double dq, double de, double dp) {
    return {dt, Vector::Constant(1, dq), de, Vector::Constant(1, dp)};
}

// The n = 1 transformation written out term by term.
Vector transform_oracle(double v, double f, double r, const Vector& x, double c, double b) {
    const double g = 1.0 / std::sqrt(1.0 - v * v / (c * c) - f * f / (b * b) +
                                     r * r / (c * c * b * b));
    const double dt = x(0), dq = x(1), de = x(2), dp = x(3);
    Vector y(4);
    y(0) = g * (dt + v / (c * c) * dq + f / (b * b) * dp - r / (b * b * c * c) * de);
    y(1) = g * (dq + v * dt + r / (b * b) * dp - f / (b * b) * de);
    y(2) = g * (de + v * dp - f * dq + r * dt);
    y(3) = g * (dp + f * dt - r / (c * c) * dq + v / (c * c) * de);
    return y;
}

double born(const Vector& x, double c, double b) {
    return x(0) * x(0) - x(1) * x(1) / (c * c) + x(2) * x(2) / (b * b * c * c) - x(3) * x(3) / (b * b);
}

}  // namespace

TEST(LorentzBoost, Examples) {
    EXPECT_EQ(lorentz_boost(Vector::Zero(1), 1.0), Matrix::Identity(2, 2));
    const Matrix L = lorentz_boost(Vector::Constant(1, 0.6), 1.0);
    EXPECT_DOUBLE_EQ(L(0, 0), 1.25);
    EXPECT_DOUBLE_EQ(L(1, 1), 1.25);
    EXPECT_LE(lorentz_residual(L, 1.0), 1e-12);
    EXPECT_THROW(lorentz_boost(Vector::Constant(1, 1.0), 1.0), SuperluminalError);
}

TEST(LorentzBoost, RandomBoostsPreserveEta) {
    Rng rng(41);
    for (int k = 0; k < 100; ++k) {
        const int n = 1 + k % 3;
        Vector v = rng.uniform_vector(n, -1, 1);
        v *= 0.95 * rng.uniform() / std::max(1.0, v.norm());
        EXPECT_LE(lorentz_residual(lorentz_boost(2.0 * v, 2.0), 2.0), 1e-12);
    }
}

TEST(UnitaryFromLorentz, IdentityAndBoost) {
    EXPECT_EQ(unitary_from_lorentz(Matrix::Identity(2, 2), 1, 1).matrix(), Matrix::Identity(4, 4));
    const auto u = unitary_from_lorentz(lorentz_boost(Vector::Constant(1, 0.6), 1), 1, 1);
    const auto img = u.apply(d1(1, 0, 0, 0));
    EXPECT_DOUBLE_EQ(img.dt, 1.25);
    EXPECT_DOUBLE_EQ(img.dq(0), 0.75);
    EXPECT_EQ(img.de, 0.0);
    EXPECT_EQ(img.dp(0), 0.0);
    EXPECT_LE(born_metric_residual(u.matrix(), 1, 1), 1e-12);
    EXPECT_TRUE(is_lorentz_subgroup(u));
}

TEST(UnitaryFromLorentz, RandomBoostsPreserveBornMetric) {
    Rng rng(42);
    for (int k = 0; k < 50; ++k) {
        const int n = 1 + k % 3;
        const double c = rng.uniform(0.5, 3), b = rng.uniform(0.5, 3);
        Vector v = rng.uniform_vector(n, -1, 1);
        v *= 0.9 * c / std::max(1.0, v.norm());
        const auto u = unitary_from_lorentz(lorentz_boost(v, c), c, b);
        EXPECT_LE(born_metric_residual(u.matrix(), c, b), 1e-12);
        EXPECT_LE(omega_residual(u.matrix()), 1e-12);
    }
}

TEST(UnitaryElement, RejectsNonMembers) {
    EXPECT_THROW(UnitaryElement::from_matrix(2.0 * Matrix::Identity(4, 4), 1, 1), GroupMembershipError);
}

TEST(ExplicitTransform, Examples) {
    const auto d = d1(0.3, -0.4, 1.1, 0.8);
    const auto same = explicit_transform(KinematicState::rest(1), d, 1, 1);
    EXPECT_EQ(same.to_vector(), d.to_vector());

    const auto boost = explicit_transform(KinematicState::scalar(0.6, 0, 0), d1(1, 0, 0, 0), 1, 1);
    EXPECT_DOUBLE_EQ(boost.dt, 1.25);
    EXPECT_DOUBLE_EQ(boost.dq(0), 0.75);
    EXPECT_EQ(boost.de, 0.0);
    EXPECT_EQ(boost.dp(0), 0.0);

    const auto force = explicit_transform(KinematicState::scalar(0, 0.6, 0), d1(1, 0, 0, 0), 1, 1);
    EXPECT_DOUBLE_EQ(force.dt, 1.25);
    EXPECT_EQ(force.dq(0), 0.0);
    EXPECT_EQ(force.de, 0.0);
    EXPECT_DOUBLE_EQ(force.dp(0), 0.75);
}

TEST(ExplicitTransform, MatchesTermByTermOracle) {
    Rng rng(43);
    for (int k = 0; k < 200; ++k) {
        const double c = rng.uniform(0.5, 3), b = rng.uniform(0.5, 3);
        const double v = 0.5 * c * rng.uniform(-1, 1), f = 0.5 * b * rng.uniform(-1, 1);
        const double r = 0.5 * b * c * rng.uniform(-1, 1);
        const auto d = random_displacement(1, rng);
        const Vector got = explicit_transform(KinematicState::scalar(v, f, r), d, c, b).to_vector();
        EXPECT_LE(max_abs(got - transform_oracle(v, f, r, d.to_vector(), c, b)), 1e-13);
    }
}

TEST(ExplicitTransform, RejectsNonTimelikeAndHigherDimension) {
    EXPECT_THROW(explicit_transform(KinematicState::scalar(1.2, 0, 0), d1(1, 0, 0, 0), 1, 1),
                 NonTimelikeState);
    EXPECT_THROW(explicit_transform(KinematicState::rest(2), Displacement::zero(2), 1, 1),
                 DimensionError);
}

TEST(ExplicitTransform, InertialCaseIsLorentzBoost) {
    const double c = 3.0;
    const Matrix L = lorentz_boost(Vector::Constant(1, 1.7), c);
    const Matrix G = transform_matrix(KinematicState::scalar(1.7, 0, 0), c, 2.0);
    EXPECT_LE(max_abs(G.topLeftCorner(2, 2) - L), 1e-12 * L.cwiseAbs().maxCoeff());
}

TEST(BornInvariance, PureSlicesAndMixedState) {
    for (const auto& s : {KinematicState::scalar(0.7, 0, 0), KinematicState::scalar(0, 0.7, 0),
                          KinematicState::scalar(0, 0, 0.7), KinematicState::scalar(0.4, 0.5, 0),
                          KinematicState::scalar(0.3, 0.2, 0.1)}) {
        EXPECT_LE(born_invariance_residual(s, 1, 1, 1000, 7), 1e-12);
    }
}

TEST(BornInvariance, OracleAgreesOnQuadraticForm) {
    Rng rng(44);
    for (int k = 0; k < 200; ++k) {
        const Vector x = rng.uniform_vector(4, -1, 1);
        const Vector y = transform_oracle(0.3, -0.4, 0.5, x, 1.5, 2.0);
        EXPECT_NEAR(born(y, 1.5, 2.0), born(x, 1.5, 2.0), 1e-12);
    }
}

TEST(UnitaryFromState, PreservesBothInvariants) {
    const auto u = unitary_from_state(KinematicState::scalar(0.3, 0.2, 0.1), 1.3, 0.8);
    EXPECT_LE(born_metric_residual(u.matrix(), 1.3, 0.8), 1e-10);
    EXPECT_LE(omega_residual(u.matrix()), 1e-10);
}

TEST(UnitaryFromState, InverseRoundTrip) {
    Rng rng(45);
    const auto u = unitary_from_state(KinematicState::scalar(0.3, -0.5, 0.2), 1, 1);
    for (int k = 0; k < 50; ++k) {
        const auto d = random_displacement(1, rng);
        EXPECT_LE(max_abs(u.inverse().apply(u.apply(d)).to_vector() - d.to_vector()), 1e-10);
    }
}

TEST(LorentzSubgroup, Membership) {
    EXPECT_TRUE(is_lorentz_subgroup(UnitaryElement::identity(1, 1, 1)));
    EXPECT_FALSE(is_lorentz_subgroup(transform_matrix(KinematicState::scalar(0, 0.3, 0), 1, 1), 1));
}

TEST(Contraction, LimitIsLowerBlockTriangular) {
    const Matrix L = contraction_limit_matrix(KinematicState::scalar(0.4, 0.3, 0.2), 1.0);
    EXPECT_EQ(max_abs(L.topRightCorner(2, 2)), 0.0);
    EXPECT_LE(lorentz_residual(L.topLeftCorner(2, 2), 1.0), 1e-15);
}

TEST(Contraction, InertialStateIsIndependentOfB) {
    const auto rep = contract_b(KinematicState::scalar(0.5, 0, 0), d1(1, 0.2, 0.3, 0.4), 1.0,
                                {1e2, 1e3, 1e4});
    for (const auto& s : rep.samples) EXPECT_LE(s.matrix_deviation, 1e-15);
}

TEST(Contraction, DeviationShrinksHundredfoldPerDecade) {
    const auto rep = contract_b(KinematicState::scalar(0.5, 0.3, 0), d1(1, 0.2, 0.3, 0.4), 1.0,
                                {1e2, 1e3, 1e4});
    ASSERT_EQ(rep.samples.size(), 3u);
    for (std::size_t i = 1; i < rep.samples.size(); ++i) {
        const double ratio = rep.samples[i - 1].deviation / rep.samples[i].deviation;
        EXPECT_NEAR(ratio, 100.0, 2.0);
    }
    EXPECT_TRUE(rep.monotone);
    EXPECT_NEAR(rep.slope, -2.0, 0.1);
}

TEST(Contraction, SpeedOfLightSweepApproachesHamiltonGroup) {
    const auto rep = contract_c(KinematicState::scalar(0.3, 0.2, 0.1), d1(0.5, -0.3, 0.7, 0.2),
                                {1e1, 1e2, 1e3, 1e4});
    EXPECT_TRUE(rep.monotone);
    EXPECT_NEAR(rep.slope, -2.0, 0.1);
    const HamiltonGroupElement g(Matrix::Identity(1, 1), Vector::Constant(1, 0.3),
                                 Vector::Constant(1, 0.2), 0.1);
    EXPECT_EQ(rep.limit_matrix, hamilton_matrix(g));
}

TEST(Contraction, RejectsUnsortedScales) {
    EXPECT_THROW(contract_b(KinematicState::rest(1), d1(1, 0, 0, 0), 1.0, {1e3, 1e2}), DomainError);
}

TEST(LineElementGaps, DecayMonotonically) {
    const auto d = d1(0.4, 0.5, 0.6, 0.7);
    const auto bg = born_minkowski_gap(d, 1.0, {1e1, 1e2, 1e3});
    const auto cg = minkowski_newton_gap(d, {1e1, 1e2, 1e3});
    for (std::size_t i = 1; i < 3; ++i) {
        EXPECT_LT(bg[i].gap, bg[i - 1].gap);
        EXPECT_LT(cg[i].gap, cg[i - 1].gap);
    }
    std::vector<double> x, y;
    for (const auto& g : bg) {
        x.push_back(g.scale);
        y.push_back(g.gap);
    }
    EXPECT_NEAR(loglog_slope(x, y), -2.0, 1e-6);
}

TEST(HamiltonGroup, Examples) {
    const auto id = HamiltonGroupElement::euclidean(Matrix::Identity(3, 3), Vector::Zero(3));
    EXPECT_EQ(hamilton_matrix(id), Matrix::Identity(8, 8));

    const HamiltonGroupElement g(Matrix::Identity(3, 3), Vector::Unit(3, 0), Vector::Zero(3), 0.0);
    const Displacement d(1.0, Vector::Zero(3), 0.0, Vector::Unit(3, 0) * 2.0);
    const auto out = hamilton_transform(g, d);
    EXPECT_EQ(out.dq, Vector::Unit(3, 0));
    EXPECT_EQ(out.de, 2.0);
    EXPECT_EQ(out.dt, 1.0);
}

TEST(HamiltonGroup, EuclideanElementsFollowInertialForm) {
    Rng rng(46);
    for (int k = 0; k < 20; ++k) {
        const Matrix R = random_rotation(3, rng);
        const Vector v = rng.uniform_vector(3, -1, 1);
        const auto g = HamiltonGroupElement::euclidean(R, v);
        const auto d = random_displacement(3, rng);
        const auto out = hamilton_transform(g, d);
        EXPECT_LE(max_abs(out.dq - (R * d.dq + v * d.dt)), 1e-14);
        EXPECT_LE(max_abs(out.dp - R * d.dp), 1e-14);
        EXPECT_NEAR(out.de, d.de + v.dot(d.dp), 1e-14);
        EXPECT_EQ(out.dt, d.dt);
        EXPECT_LE(max_abs(hamilton_matrix(g) * d.to_vector() - out.to_vector()), 1e-14);
    }
}

TEST(HamiltonGroup, RejectsNonRotation) {
    EXPECT_THROW(HamiltonGroupElement(2.0 * Matrix::Identity(2, 2), Vector::Zero(2), Vector::Zero(2), 0),
                 GroupMembershipError);
    Matrix reflect = Matrix::Identity(2, 2);
    reflect(0, 0) = -1;
    EXPECT_THROW(HamiltonGroupElement(reflect, Vector::Zero(2), Vector::Zero(2), 0), GroupMembershipError);
}
