#pragma once

// Weyl-Heisenberg group H(n) in its (2n+2)x(2n+2) real matrix realization,
// its Lie algebra, and matrix-level automorphisms.
//
// Matrix layout for an element with coordinates (p, q, iota):
//
//     | 1_n   0     0  q      |
//     | 0     1_n   0  p      |
//     | p^t  -q^t   1  2 iota |
//     | 0     0     0  1      |
//
// Sign convention. The algebra generators P_i, Q_i, I are the matrices
// obtained by differentiating the realization above. With those matrices
// the commutator that evaluates to +I is [Q_i, P_j] = delta_ij I, so
// [P_i, Q_j] = -delta_ij I. The matrices are treated as ground truth; the
// frequently quoted form [P_i, Q_j] = +delta_ij I has the opposite sign.

#include "reciprel/common.hpp"

#include <vector>

namespace reciprel {

class HeisenbergElement {
public:
    HeisenbergElement(Vector p, Vector q, double iota);

    static HeisenbergElement identity(int n);

    int n() const noexcept { return static_cast<int>(p_.size()); }
    const Vector& p() const noexcept { return p_; }
    const Vector& q() const noexcept { return q_; }
    double iota() const noexcept { return iota_; }

private:
    Vector p_;
    Vector q_;
    double iota_;
};

/// Element of the Heisenberg Lie algebra written in the generator basis,
///     Z = sum_i p_coeff_i P_i + q_coeff_i Q_i + iota_coeff I.
/// In the matrix, P_i occupies the q-column slot and Q_i the p-column slot.
class HeisenbergAlgebraElement {
public:
    HeisenbergAlgebraElement(Vector p_coeff, Vector q_coeff, double iota_coeff);

    static HeisenbergAlgebraElement zero(int n);
    static HeisenbergAlgebraElement P(int n, int i);
    static HeisenbergAlgebraElement Q(int n, int i);
    static HeisenbergAlgebraElement I(int n);

    int n() const noexcept { return static_cast<int>(p_coeff_.size()); }
    const Vector& p_coeff() const noexcept { return p_coeff_; }
    const Vector& q_coeff() const noexcept { return q_coeff_; }
    double iota_coeff() const noexcept { return iota_coeff_; }

private:
    Vector p_coeff_;
    Vector q_coeff_;
    double iota_coeff_;
};

/// Automorphism data (A, z, iota, delta, epsilon). A must be symplectic with
/// respect to zeta = [[0, 1_n], [-1_n, 0]]; z is stored q-part first.
class AutomorphismElement {
public:
    /// Throws SymplecticViolation when A^t zeta A deviates from zeta by more
    /// than `tol` in max norm.
    AutomorphismElement(Matrix A, Vector z, double iota, double delta, int epsilon,
                        double tol = kDecompositionTol);

    static AutomorphismElement identity(int n);

    int n() const noexcept { return static_cast<int>(A_.rows() / 2); }
    const Matrix& A() const noexcept { return A_; }
    const Vector& z() const noexcept { return z_; }
    Vector z_q() const { return z_.head(n()); }
    Vector z_p() const { return z_.tail(n()); }
    double iota() const noexcept { return iota_; }
    double delta() const noexcept { return delta_; }
    int epsilon() const noexcept { return epsilon_; }

private:
    Matrix A_;
    Vector z_;
    double iota_;
    double delta_;
    int epsilon_;
};

template <typename T>
struct Decomposed {
    T value;
    double residual;
};

// Group

Matrix wh_matrix(const HeisenbergElement& g);

/// Reads (p, q, iota) back from a matrix and reports the max-norm distance
/// between the matrix and the realization of the decoded element.
Decomposed<HeisenbergElement> wh_decompose(const Matrix& m);

/// As wh_decompose, but throws DecompositionError above `tol`.
HeisenbergElement wh_from_matrix(const Matrix& m, double tol = kDecompositionTol);

HeisenbergElement wh_compose(const HeisenbergElement& a, const HeisenbergElement& b);
HeisenbergElement wh_inverse(const HeisenbergElement& a);

// Algebra

Matrix algebra_matrix(const HeisenbergAlgebraElement& x);
Decomposed<HeisenbergAlgebraElement> algebra_decompose(const Matrix& m);

/// Algebra element whose matrix has the same (p, q, iota) slots as g, i.e.
/// Z = q^i P_i + p^i Q_i + iota I.
HeisenbergAlgebraElement algebra_element_for(const HeisenbergElement& g);

/// exp(Z) = 1 + Z because Z^2 = 0 in this realization.
HeisenbergElement wh_exp(const HeisenbergAlgebraElement& x);

/// Matrix commutator XY - YX, decomposed. The result is always central; its
/// iota coefficient is x.q . y.p - x.p . y.q. Throws DecompositionError if the
/// commutator leaves the algebra pattern.
HeisenbergAlgebraElement wh_commutator(const HeisenbergAlgebraElement& x,
                                       const HeisenbergAlgebraElement& y);

/// Generators in the order P_1..P_n, Q_1..Q_n, I.
std::vector<HeisenbergAlgebraElement> generators(int n);

/// Dimension m(m-1)/2 of the maximal central extension of the abelian
/// algebra on m generators.
long long central_extension_dimension(long long m);

// Symplectic structure

/// zeta = [[0, 1_n], [-1_n, 0]].
Matrix zeta(int n);

/// max |A^t zeta A - zeta|. Throws DomainError unless A is square and of
/// even dimension.
double symplectic_residual(const Matrix& A);
bool is_symplectic(const Matrix& A, double tol);

// Automorphisms

Matrix aut_matrix(const AutomorphismElement& u);

/// U g U^{-1}, decoded back into group coordinates. Throws NotAnAutomorphism
/// when the conjugate is not in H(n) within `tol` or U is singular.
HeisenbergElement conjugate(const Matrix& U, const HeisenbergElement& g,
                            double tol = kDecompositionTol);
HeisenbergElement aut_apply(const AutomorphismElement& u, const HeisenbergElement& g,
                            double tol = kDecompositionTol);

/// True iff every generator conjugated by U stays in the algebra and, for
/// every generator pair, U [X_a, X_b] U^{-1} equals the commutator of the
/// conjugated generators, both within `tol`.
bool commutator_preserved(const Matrix& U, double tol);
bool commutator_preserved(const AutomorphismElement& u, double tol);

}  // namespace reciprel
