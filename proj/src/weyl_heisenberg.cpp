#include "reciprel/weyl_heisenberg.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace reciprel {

namespace {

void require_same_dim(int a, int b, const char* what) {
    if (a != b) {
        throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                             " vs " + std::to_string(b) + ")");
    }
}

void require_valid_n(int n) {
    if (n < 1) throw DimensionError("dimension n must be at least 1");
}

// Matrix size for dimension n.
int side(int n) { return 2 * n + 2; }

int n_from_side(const Matrix& m) {
    if (m.rows() != m.cols() || m.rows() < 4 || m.rows() % 2 != 0) {
        throw DimensionError("expected a square matrix of size 2n+2 with n >= 1");
    }
    return static_cast<int>(m.rows() / 2 - 1);
}

// Fills the (p, q, iota) slots shared by the group and algebra patterns.
void fill_slots(Matrix& m, const Vector& p, const Vector& q, double iota) {
    const int n = static_cast<int>(p.size());
    const int last = 2 * n + 1;
    m.block(0, last, n, 1) = q;
    m.block(n, last, n, 1) = p;
    m.block(2 * n, 0, 1, n) = p.transpose();
    m.block(2 * n, n, 1, n) = -q.transpose();
    m(2 * n, last) = 2.0 * iota;
}

struct Slots {
    Vector p;
    Vector q;
    double iota;
};

Slots read_slots(const Matrix& m) {
    const int n = n_from_side(m);
    const int last = 2 * n + 1;
    return {m.block(n, last, n, 1), m.block(0, last, n, 1), 0.5 * m(2 * n, last)};
}

}  // namespace

HeisenbergElement::HeisenbergElement(Vector p, Vector q, double iota)
    : p_(std::move(p)), q_(std::move(q)), iota_(iota) {
    require_valid_n(static_cast<int>(p_.size()));
    require_same_dim(static_cast<int>(p_.size()), static_cast<int>(q_.size()), "HeisenbergElement");
}

HeisenbergElement HeisenbergElement::identity(int n) {
    require_valid_n(n);
    return {Vector::Zero(n), Vector::Zero(n), 0.0};
}

HeisenbergAlgebraElement::HeisenbergAlgebraElement(Vector p_coeff, Vector q_coeff,
                                                   double iota_coeff)
    : p_coeff_(std::move(p_coeff)), q_coeff_(std::move(q_coeff)), iota_coeff_(iota_coeff) {
    require_valid_n(static_cast<int>(p_coeff_.size()));
    require_same_dim(static_cast<int>(p_coeff_.size()), static_cast<int>(q_coeff_.size()),
                     "HeisenbergAlgebraElement");
}

HeisenbergAlgebraElement HeisenbergAlgebraElement::zero(int n) {
    require_valid_n(n);
    return {Vector::Zero(n), Vector::Zero(n), 0.0};
}

HeisenbergAlgebraElement HeisenbergAlgebraElement::P(int n, int i) {
    require_valid_n(n);
    if (i < 0 || i >= n) throw DimensionError("generator index out of range");
    Vector c = Vector::Zero(n);
    c(i) = 1.0;
    return {c, Vector::Zero(n), 0.0};
}

HeisenbergAlgebraElement HeisenbergAlgebraElement::Q(int n, int i) {
    require_valid_n(n);
    if (i < 0 || i >= n) throw DimensionError("generator index out of range");
    Vector c = Vector::Zero(n);
    c(i) = 1.0;
    return {Vector::Zero(n), c, 0.0};
}

HeisenbergAlgebraElement HeisenbergAlgebraElement::I(int n) {
    require_valid_n(n);
    return {Vector::Zero(n), Vector::Zero(n), 1.0};
}

AutomorphismElement::AutomorphismElement(Matrix A, Vector z, double iota, double delta,
                                         int epsilon, double tol)
    : A_(std::move(A)), z_(std::move(z)), iota_(iota), delta_(delta), epsilon_(epsilon) {
    if (A_.rows() != A_.cols() || A_.rows() < 2 || A_.rows() % 2 != 0) {
        throw DimensionError("automorphism block A must be 2n x 2n");
    }
    require_same_dim(static_cast<int>(A_.rows()), static_cast<int>(z_.size()),
                     "AutomorphismElement z");
    if (delta_ == 0.0 || !std::isfinite(delta_)) {
        throw DomainError("dilation delta must be finite and nonzero");
    }
    if (epsilon_ != 1 && epsilon_ != -1) throw DomainError("epsilon must be +1 or -1");
    const double res = symplectic_residual(A_);
    if (!(res <= tol)) {
        throw SymplecticViolation("A is not symplectic: max|A^t zeta A - zeta| = " +
                                  std::to_string(res));
    }
}

AutomorphismElement AutomorphismElement::identity(int n) {
    require_valid_n(n);
    return {Matrix::Identity(2 * n, 2 * n), Vector::Zero(2 * n), 0.0, 1.0, 1};
}

Matrix wh_matrix(const HeisenbergElement& g) {
    Matrix m = Matrix::Identity(side(g.n()), side(g.n()));
    fill_slots(m, g.p(), g.q(), g.iota());
    return m;
}

Decomposed<HeisenbergElement> wh_decompose(const Matrix& m) {
    auto s = read_slots(m);
    HeisenbergElement g(std::move(s.p), std::move(s.q), s.iota);
    const double residual = max_abs(m - wh_matrix(g));
    return {std::move(g), residual};
}

HeisenbergElement wh_from_matrix(const Matrix& m, double tol) {
    auto d = wh_decompose(m);
    if (!(d.residual <= tol)) {
        throw DecompositionError("matrix is not in the Weyl-Heisenberg pattern (residual " +
                                     std::to_string(d.residual) + ")",
                                 d.residual);
    }
    return std::move(d.value);
}

HeisenbergElement wh_compose(const HeisenbergElement& a, const HeisenbergElement& b) {
    require_same_dim(a.n(), b.n(), "wh_compose");
    const double shift = 0.5 * (a.p().dot(b.q()) - a.q().dot(b.p()));
    return {a.p() + b.p(), a.q() + b.q(), a.iota() + b.iota() + shift};
}

HeisenbergElement wh_inverse(const HeisenbergElement& a) { return {-a.p(), -a.q(), -a.iota()}; }

Matrix algebra_matrix(const HeisenbergAlgebraElement& x) {
    Matrix m = Matrix::Zero(side(x.n()), side(x.n()));
    // P_i sits in the q slot, Q_i in the p slot.
    fill_slots(m, x.q_coeff(), x.p_coeff(), x.iota_coeff());
    return m;
}

Decomposed<HeisenbergAlgebraElement> algebra_decompose(const Matrix& m) {
    auto s = read_slots(m);
    HeisenbergAlgebraElement x(std::move(s.q), std::move(s.p), s.iota);
    const double residual = max_abs(m - algebra_matrix(x));
    return {std::move(x), residual};
}

HeisenbergAlgebraElement algebra_element_for(const HeisenbergElement& g) {
    return {g.q(), g.p(), g.iota()};
}

HeisenbergElement wh_exp(const HeisenbergAlgebraElement& x) {
    return wh_from_matrix(Matrix::Identity(side(x.n()), side(x.n())) + algebra_matrix(x));
}

HeisenbergAlgebraElement wh_commutator(const HeisenbergAlgebraElement& x,
                                       const HeisenbergAlgebraElement& y) {
    require_same_dim(x.n(), y.n(), "wh_commutator");
    const Matrix X = algebra_matrix(x);
    const Matrix Y = algebra_matrix(y);
    auto d = algebra_decompose(X * Y - Y * X);
    if (!(d.residual <= kDecompositionTol)) {
        throw DecompositionError("commutator left the Heisenberg algebra pattern", d.residual);
    }
    return std::move(d.value);
}

std::vector<HeisenbergAlgebraElement> generators(int n) {
    std::vector<HeisenbergAlgebraElement> out;
    out.reserve(2 * n + 1);
    for (int i = 0; i < n; ++i) out.push_back(HeisenbergAlgebraElement::P(n, i));
    for (int i = 0; i < n; ++i) out.push_back(HeisenbergAlgebraElement::Q(n, i));
    out.push_back(HeisenbergAlgebraElement::I(n));
    return out;
}

long long central_extension_dimension(long long m) {
    if (m < 1) throw DomainError("central_extension_dimension: m must be >= 1");
    return m * (m - 1) / 2;
}

Matrix zeta(int n) {
    require_valid_n(n);
    Matrix z = Matrix::Zero(2 * n, 2 * n);
    z.topRightCorner(n, n).setIdentity();
    z.bottomLeftCorner(n, n) = -Matrix::Identity(n, n);
    return z;
}

double symplectic_residual(const Matrix& A) {
    if (A.rows() != A.cols() || A.rows() == 0 || A.rows() % 2 != 0) {
        throw DomainError("symplectic check needs a square matrix of even dimension");
    }
    const Matrix Z = zeta(static_cast<int>(A.rows() / 2));
    return max_abs(A.transpose() * Z * A - Z);
}

bool is_symplectic(const Matrix& A, double tol) { return symplectic_residual(A) <= tol; }

Matrix aut_matrix(const AutomorphismElement& u) {
    const int n = u.n();
    const int s = side(n);
    const double delta = u.delta();
    const double eps = u.epsilon();
    Matrix U = Matrix::Zero(s, s);
    U.topLeftCorner(2 * n, 2 * n) = delta * u.A();
    U.block(0, s - 1, 2 * n, 1) = u.z();
    Vector row(2 * n);
    row << u.z_p(), -u.z_q();
    U.block(2 * n, 0, 1, 2 * n) = row.transpose() * u.A();
    U(2 * n, 2 * n) = delta * delta * eps;
    U(2 * n, s - 1) = u.iota();
    U(s - 1, s - 1) = eps;
    return U;
}

HeisenbergElement conjugate(const Matrix& U, const HeisenbergElement& g, double tol) {
    if (U.rows() != side(g.n()) || U.cols() != side(g.n())) {
        throw DimensionError("conjugate: matrix size does not match element dimension");
    }
    Eigen::FullPivLU<Matrix> lu(U);
    if (!lu.isInvertible()) {
        throw NotAnAutomorphism("conjugating matrix is singular",
                                std::numeric_limits<double>::infinity());
    }
    auto d = wh_decompose(U * wh_matrix(g) * lu.inverse());
    if (!(d.residual <= tol)) {
        throw NotAnAutomorphism("conjugation left the Weyl-Heisenberg group (residual " +
                                    std::to_string(d.residual) + ")",
                                d.residual);
    }
    return std::move(d.value);
}

HeisenbergElement aut_apply(const AutomorphismElement& u, const HeisenbergElement& g,
                            double tol) {
    if (u.n() != g.n()) throw DimensionError("aut_apply: dimension mismatch");
    return conjugate(aut_matrix(u), g, tol);
}

bool commutator_preserved(const Matrix& U, double tol) {
    const int n = n_from_side(U);
    Eigen::FullPivLU<Matrix> lu(U);
    if (!lu.isInvertible()) return false;
    const Matrix Uinv = lu.inverse();

    const auto gens = generators(n);
    std::vector<Matrix> raw;
    std::vector<HeisenbergAlgebraElement> conj;
    for (const auto& x : gens) {
        raw.push_back(algebra_matrix(x));
        auto d = algebra_decompose(U * raw.back() * Uinv);
        if (!(d.residual <= tol)) return false;
        conj.push_back(std::move(d.value));
    }
    for (std::size_t a = 0; a < gens.size(); ++a) {
        for (std::size_t b = a + 1; b < gens.size(); ++b) {
            const Matrix bracket = raw[a] * raw[b] - raw[b] * raw[a];
            auto lhs = algebra_decompose(U * bracket * Uinv);
            if (!(lhs.residual <= tol)) return false;
            const Matrix rhs = algebra_matrix(wh_commutator(conj[a], conj[b]));
            if (!(max_abs(algebra_matrix(lhs.value) - rhs) <= tol)) return false;
        }
    }
    return true;
}

bool commutator_preserved(const AutomorphismElement& u, double tol) {
    return commutator_preserved(aut_matrix(u), tol);
}

}  // namespace reciprel
