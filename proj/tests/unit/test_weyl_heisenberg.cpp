#include "reciprel/random.hpp"
#include "reciprel/weyl_heisenberg.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace reciprel;

namespace {

// Built entry by entry from the block layout, independent of wh_matrix.
Matrix oracle_matrix(const Vector& p, const Vector& q, double iota) {
    const int n = static_cast<int>(p.size());
    Matrix m = Matrix::Identity(2 * n + 2, 2 * n + 2);
    for (int i = 0; i < n; ++i) {
        m(i, 2 * n + 1) = q(i);
        m(n + i, 2 * n + 1) = p(i);
        m(2 * n, i) = p(i);
        m(2 * n, n + i) = -q(i);
    }
    m(2 * n, 2 * n + 1) = 2.0 * iota;
    return m;
}

Matrix oracle_matrix(const HeisenbergElement& g) { return oracle_matrix(g.p(), g.q(), g.iota()); }

// The realization is affine in (p, q, iota), so its tangent matrices are
// oracle_matrix(...) - 1. P_i sits in the q slot, Q_i in the p slot.
Matrix oracle_generator(int n, char which, int i) {
    Vector p = Vector::Zero(n), q = Vector::Zero(n);
    double iota = 0.0;
    if (which == 'P') q(i) = 1.0;
    if (which == 'Q') p(i) = 1.0;
    if (which == 'I') iota = 1.0;
    return oracle_matrix(p, q, iota) - Matrix::Identity(2 * n + 2, 2 * n + 2);
}

Vector vec(std::initializer_list<double> xs) {
    Vector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v(i++) = x;
    return v;
}

double coord_distance(const HeisenbergElement& a, const HeisenbergElement& b) {
    return std::max({max_abs(a.p() - b.p()), max_abs(a.q() - b.q()), std::abs(a.iota() - b.iota())});
}

}  // namespace

TEST(WhMatrix, IdentityElementIsIdentityMatrix) {
    EXPECT_EQ(wh_matrix(HeisenbergElement::identity(1)), Matrix::Identity(4, 4));
}

TEST(WhMatrix, UnitPPlacesEntriesInLayout) {
    const Matrix m = wh_matrix(HeisenbergElement(vec({1}), vec({0}), 0.0));
    Matrix expected = Matrix::Identity(4, 4);
    expected(1, 3) = 1.0;
    expected(2, 0) = 1.0;
    EXPECT_EQ(m, expected);
}

TEST(WhMatrix, TwoDimensionalBottomRow) {
    const Matrix m = wh_matrix(HeisenbergElement(vec({1, 2}), vec({3, 4}), 5.0));
    EXPECT_EQ(Vector(m.row(4).transpose()), vec({1, 2, -3, -4, 1, 10}));
}

TEST(WhMatrix, AgreesWithOracleOnRandomElements) {
    Rng rng(11);
    for (int n = 1; n <= 3; ++n) {
        for (int k = 0; k < 20; ++k) {
            const auto g = random_heisenberg(n, rng);
            EXPECT_EQ(wh_matrix(g), oracle_matrix(g));
        }
    }
}

TEST(WhCompose, IdentityIsNeutral) {
    const HeisenbergElement x(vec({0.3, -1.2}), vec({2.0, 0.5}), 0.7);
    EXPECT_EQ(coord_distance(wh_compose(HeisenbergElement::identity(2), x), x), 0.0);
}

TEST(WhCompose, UnitPTimesUnitQHasHalfIota) {
    const auto r = wh_compose(HeisenbergElement(vec({1}), vec({0}), 0.0),
                              HeisenbergElement(vec({0}), vec({1}), 0.0));
    EXPECT_EQ(r.p()(0), 1.0);
    EXPECT_EQ(r.q()(0), 1.0);
    EXPECT_EQ(r.iota(), 0.5);
}

TEST(WhCompose, MatchesMatrixProductOracle) {
    Rng rng(12);
    for (int n = 1; n <= 3; ++n) {
        for (int k = 0; k < 100; ++k) {
            const auto a = random_heisenberg(n, rng);
            const auto b = random_heisenberg(n, rng);
            const auto d = wh_decompose(oracle_matrix(a) * oracle_matrix(b));
            ASSERT_LE(d.residual, 1e-15);
            EXPECT_LE(coord_distance(wh_compose(a, b), d.value), 1e-12);
        }
    }
}

TEST(WhCompose, Associative) {
    Rng rng(13);
    for (int k = 0; k < 200; ++k) {
        const int n = 1 + k % 3;
        const auto a = random_heisenberg(n, rng);
        const auto b = random_heisenberg(n, rng);
        const auto c = random_heisenberg(n, rng);
        EXPECT_LE(coord_distance(wh_compose(wh_compose(a, b), c), wh_compose(a, wh_compose(b, c))),
                  1e-12);
    }
}

TEST(WhCompose, RejectsDimensionMismatch) {
    EXPECT_THROW(wh_compose(HeisenbergElement::identity(1), HeisenbergElement::identity(2)),
                 DimensionError);
}

TEST(WhInverse, FlipsAllSigns) {
    const auto r = wh_inverse(HeisenbergElement(vec({1}), vec({2}), 3.0));
    EXPECT_EQ(r.p()(0), -1.0);
    EXPECT_EQ(r.q()(0), -2.0);
    EXPECT_EQ(r.iota(), -3.0);
}

TEST(WhInverse, IsTwoSidedInverse) {
    Rng rng(14);
    for (int k = 0; k < 50; ++k) {
        const auto a = random_heisenberg(2, rng);
        const auto id = HeisenbergElement::identity(2);
        EXPECT_LE(coord_distance(wh_compose(a, wh_inverse(a)), id), 1e-15);
        EXPECT_LE(coord_distance(wh_compose(wh_inverse(a), a), id), 1e-15);
        EXPECT_LE(max_abs(oracle_matrix(a) * oracle_matrix(wh_inverse(a)) -
                          Matrix::Identity(6, 6)),
                  1e-15);
    }
}

TEST(WhSubgroups, PureQAndPurePElementsAreClosed) {
    Rng rng(15);
    for (int k = 0; k < 50; ++k) {
        const Vector z = Vector::Zero(2);
        const HeisenbergElement a(z, rng.uniform_vector(2, -1, 1), rng.uniform(-1, 1));
        const HeisenbergElement b(z, rng.uniform_vector(2, -1, 1), rng.uniform(-1, 1));
        EXPECT_EQ(max_abs(wh_compose(a, b).p()), 0.0);
        const HeisenbergElement c(rng.uniform_vector(2, -1, 1), z, rng.uniform(-1, 1));
        const HeisenbergElement d(rng.uniform_vector(2, -1, 1), z, rng.uniform(-1, 1));
        EXPECT_EQ(max_abs(wh_compose(c, d).q()), 0.0);
    }
}

TEST(WhDecompose, RejectsMatricesOutsideTheGroup) {
    Matrix m = Matrix::Identity(4, 4);
    m(0, 1) = 0.5;
    EXPECT_THROW(wh_from_matrix(m), DecompositionError);
}

TEST(Algebra, GeneratorMatricesMatchTangentOracle) {
    for (int n = 1; n <= 3; ++n) {
        for (int i = 0; i < n; ++i) {
            EXPECT_EQ(algebra_matrix(HeisenbergAlgebraElement::P(n, i)), oracle_generator(n, 'P', i));
            EXPECT_EQ(algebra_matrix(HeisenbergAlgebraElement::Q(n, i)), oracle_generator(n, 'Q', i));
        }
        EXPECT_EQ(algebra_matrix(HeisenbergAlgebraElement::I(n)), oracle_generator(n, 'I', 0));
    }
}

TEST(Commutator, PWithItselfIsZero) {
    const auto c = wh_commutator(HeisenbergAlgebraElement::P(1, 0), HeisenbergAlgebraElement::P(1, 0));
    EXPECT_EQ(algebra_matrix(c), Matrix::Zero(4, 4));
}

TEST(Commutator, QPIsPlusCentralUnit) {
    const auto c = wh_commutator(HeisenbergAlgebraElement::Q(1, 0), HeisenbergAlgebraElement::P(1, 0));
    EXPECT_EQ(c.iota_coeff(), 1.0);
    EXPECT_EQ(max_abs(c.p_coeff()), 0.0);
    EXPECT_EQ(max_abs(c.q_coeff()), 0.0);
}

// Regression: with the realization's own generator matrices the bracket
// [P, Q] is -I. The textbook form [P_i, Q_j] = +delta_ij I is the other sign.
TEST(Commutator, PQIsMinusCentralUnitContraryToTextbookSign) {
    const auto c = wh_commutator(HeisenbergAlgebraElement::P(1, 0), HeisenbergAlgebraElement::Q(1, 0));
    EXPECT_EQ(c.iota_coeff(), -1.0);
    EXPECT_NE(c.iota_coeff(), +1.0);
}

TEST(Commutator, TableMatchesMatrixOracleExactly) {
    for (int n = 1; n <= 3; ++n) {
        const Matrix I = oracle_generator(n, 'I', 0);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const Matrix Q = oracle_generator(n, 'Q', i);
                const Matrix P = oracle_generator(n, 'P', j);
                const Matrix expected = (i == j ? 1.0 : 0.0) * I;
                EXPECT_EQ(Matrix(Q * P - P * Q), expected);
                const auto c = wh_commutator(HeisenbergAlgebraElement::Q(n, i),
                                             HeisenbergAlgebraElement::P(n, j));
                EXPECT_EQ(algebra_matrix(c), expected) << "n=" << n << " i=" << i << " j=" << j;
            }
        }
    }
}

TEST(Commutator, P1Q2VanishesForNTwo) {
    const auto c = wh_commutator(HeisenbergAlgebraElement::P(2, 0), HeisenbergAlgebraElement::Q(2, 1));
    EXPECT_EQ(algebra_matrix(c), Matrix::Zero(6, 6));
}

TEST(Commutator, CentralElementCommutesWithEverything) {
    Rng rng(16);
    for (int k = 0; k < 20; ++k) {
        const HeisenbergAlgebraElement x(rng.uniform_vector(2, -1, 1), rng.uniform_vector(2, -1, 1),
                                         rng.uniform(-1, 1));
        const auto c = wh_commutator(x, HeisenbergAlgebraElement::I(2));
        EXPECT_EQ(max_abs(algebra_matrix(c)), 0.0);
    }
}

TEST(Commutator, JacobiIdentityHoldsAtMatrixLevel) {
    Rng rng(17);
    for (int k = 0; k < 50; ++k) {
        const int n = 1 + k % 3;
        auto draw = [&] {
            return HeisenbergAlgebraElement(rng.uniform_vector(n, -1, 1), rng.uniform_vector(n, -1, 1),
                                            rng.uniform(-1, 1));
        };
        const auto x = draw(), y = draw(), z = draw();
        const Matrix sum = algebra_matrix(wh_commutator(wh_commutator(x, y), z)) +
                           algebra_matrix(wh_commutator(wh_commutator(y, z), x)) +
                           algebra_matrix(wh_commutator(wh_commutator(z, x), y));
        EXPECT_EQ(max_abs(sum), 0.0);
    }
}

TEST(Commutator, GroupIotaShiftIsHalfTheAlgebraBracket) {
    Rng rng(18);
    for (int k = 0; k < 50; ++k) {
        const auto a = random_heisenberg(2, rng);
        const auto b = random_heisenberg(2, rng);
        const double shift = wh_compose(a, b).iota() - a.iota() - b.iota();
        const auto c = wh_commutator(algebra_element_for(a), algebra_element_for(b));
        EXPECT_NEAR(shift, 0.5 * c.iota_coeff(), 1e-15);
    }
}

TEST(Exp, IsOnePlusTangentMatrix) {
    Rng rng(19);
    const HeisenbergAlgebraElement x(rng.uniform_vector(2, -1, 1), rng.uniform_vector(2, -1, 1), 0.4);
    EXPECT_EQ(wh_matrix(wh_exp(x)), Matrix(Matrix::Identity(6, 6) + algebra_matrix(x)));
}

TEST(CentralExtension, DimensionCounts) {
    EXPECT_EQ(central_extension_dimension(1), 0);
    EXPECT_EQ(central_extension_dimension(4), 6);
    long long pairs = 0;
    for (int i = 0; i < 8; ++i)
        for (int j = i + 1; j < 8; ++j) ++pairs;
    EXPECT_EQ(central_extension_dimension(8), pairs);
    EXPECT_EQ(pairs, 28);
    EXPECT_THROW(central_extension_dimension(0), DomainError);
}

TEST(Symplectic, Examples) {
    EXPECT_TRUE(is_symplectic(Matrix::Identity(2, 2), 1e-14));
    const double th = 0.7;
    Matrix R(2, 2);
    R << std::cos(th), std::sin(th), -std::sin(th), std::cos(th);
    EXPECT_TRUE(is_symplectic(R, 1e-14));
    const Matrix twice = 2.0 * Matrix::Identity(2, 2);
    EXPECT_FALSE(is_symplectic(twice, 1e-14));
    EXPECT_EQ(Matrix(twice.transpose() * zeta(1) * twice), Matrix(4.0 * zeta(1)));
    EXPECT_THROW(symplectic_residual(Matrix::Identity(3, 3)), DomainError);
}

TEST(Automorphism, RejectsNonSymplecticA) {
    EXPECT_THROW(AutomorphismElement(2.0 * Matrix::Identity(2, 2), Vector::Zero(2), 0.0, 1.0, 1),
                 SymplecticViolation);
}

TEST(Automorphism, IdentityDataGivesIdentityMatrix) {
    EXPECT_EQ(aut_matrix(AutomorphismElement::identity(2)), Matrix::Identity(6, 6));
}

TEST(Automorphism, DilationMatrixAndAction) {
    const AutomorphismElement u(Matrix::Identity(2, 2), Vector::Zero(2), 0.0, 2.0, 1);
    Matrix expected = Matrix::Identity(4, 4);
    expected(0, 0) = expected(1, 1) = 2.0;
    expected(2, 2) = 4.0;
    EXPECT_EQ(aut_matrix(u), expected);

    const auto g = aut_apply(u, HeisenbergElement(vec({0.3}), vec({-0.7}), 0.25));
    EXPECT_NEAR(g.p()(0), 0.6, 1e-15);
    EXPECT_NEAR(g.q()(0), -1.4, 1e-15);
    EXPECT_NEAR(g.iota(), 1.0, 1e-15);
}

TEST(Automorphism, QuarterTurnRotatesTranslation) {
    Matrix A(2, 2);
    A << 0.0, 1.0, -1.0, 0.0;
    const AutomorphismElement u(A, Vector::Zero(2), 0.0, 1.0, 1);
    const auto g = aut_apply(u, HeisenbergElement(vec({1}), vec({0}), 0.0));
    EXPECT_NEAR(std::hypot(g.p()(0), g.q()(0)), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(g.q()(0)), 1.0, 1e-15);
    EXPECT_NEAR(g.iota(), 0.0, 1e-15);
}

TEST(Automorphism, RandomElementsAreInvertibleHomomorphisms) {
    Rng rng(20);
    for (int k = 0; k < 100; ++k) {
        const int n = 1 + k % 3;
        const auto u = random_automorphism(n, rng);
        const Matrix U = aut_matrix(u);
        EXPECT_GT(std::abs(U.determinant()), 0.0);
        const auto a = random_heisenberg(n, rng);
        const auto b = random_heisenberg(n, rng);
        const auto lhs = aut_apply(u, wh_compose(a, b));
        const auto rhs = wh_compose(aut_apply(u, a), aut_apply(u, b));
        EXPECT_LE(coord_distance(lhs, rhs), 1e-10);
        EXPECT_LE(coord_distance(conjugate(U.inverse(), aut_apply(u, a)), a), 1e-10);
        EXPECT_TRUE(commutator_preserved(u, 1e-10));
    }
}

TEST(Automorphism, ClosureUnderMatrixProduct) {
    Rng rng(21);
    for (int k = 0; k < 50; ++k) {
        const int n = 1 + k % 3;
        const Matrix U = aut_matrix(random_automorphism(n, rng)) * aut_matrix(random_automorphism(n, rng));
        EXPECT_TRUE(commutator_preserved(U, 1e-10));
    }
}

TEST(Automorphism, NonSymplecticPerturbationsFail) {
    Rng rng(22);
    int failures = 0;
    for (int k = 0; k < 50; ++k) {
        const int n = 1 + k % 3;
        Matrix U = aut_matrix(random_automorphism(n, rng));
        U.topLeftCorner(2 * n, 2 * n) += rng.uniform_matrix(2 * n, 2 * n, -0.5, 0.5);
        failures += commutator_preserved(U, 1e-10) ? 0 : 1;
    }
    EXPECT_EQ(failures, 50);
}

TEST(Automorphism, RandomGeneralLinearMatrixFails) {
    Rng rng(23);
    const Matrix U = rng.uniform_matrix(4, 4, -1, 1);
    EXPECT_FALSE(commutator_preserved(U, 1e-10));
    EXPECT_THROW(conjugate(U, HeisenbergElement(vec({1}), vec({0.5}), 0.2)), NotAnAutomorphism);
}
