#include "reciprel/random.hpp"

namespace reciprel {

Matrix random_symplectic(int n, Rng& rng) {
    auto symmetric = [&] {
        Matrix s = rng.uniform_matrix(n, n, -1.0, 1.0);
        return Matrix(0.5 * (s + s.transpose()));
    };
    Matrix upper = Matrix::Identity(2 * n, 2 * n);
    upper.topRightCorner(n, n) = symmetric();
    Matrix lower = Matrix::Identity(2 * n, 2 * n);
    lower.bottomLeftCorner(n, n) = symmetric();

    // Diagonally dominant, hence invertible.
    Matrix B = Matrix::Identity(n, n) + rng.uniform_matrix(n, n, -0.3, 0.3) / n;
    Matrix scale = Matrix::Zero(2 * n, 2 * n);
    scale.topLeftCorner(n, n) = B;
    scale.bottomRightCorner(n, n) = B.inverse().transpose();
    return lower * upper * scale;
}

Matrix random_rotation(int n, Rng& rng) {
    Matrix m = rng.uniform_matrix(n, n, -1.0, 1.0) + 2.0 * Matrix::Identity(n, n);
    // Modified Gram-Schmidt on columns.
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < j; ++k) m.col(j) -= m.col(k).dot(m.col(j)) * m.col(k);
        m.col(j).normalize();
    }
    if (m.determinant() < 0.0) m.col(0) = -m.col(0);
    return m;
}

HeisenbergElement random_heisenberg(int n, Rng& rng) {
    Vector p = rng.uniform_vector(n, -1.0, 1.0);
    Vector q = rng.uniform_vector(n, -1.0, 1.0);
    const double iota = rng.uniform(-1.0, 1.0);
    return {std::move(p), std::move(q), iota};
}

AutomorphismElement random_automorphism(int n, Rng& rng) {
    Matrix A = random_symplectic(n, rng);
    Vector z = rng.uniform_vector(2 * n, -1.0, 1.0);
    const double iota = rng.uniform(-1.0, 1.0);
    const int delta_sign = rng.sign();
    const double delta = delta_sign * rng.uniform(0.5, 2.0);
    const int epsilon = rng.sign();
    return {std::move(A), std::move(z), iota, delta, epsilon};
}

Displacement random_displacement(int n, Rng& rng, double scale) {
    const double dt = rng.uniform(-scale, scale);
    Vector dq = rng.uniform_vector(n, -scale, scale);
    const double de = rng.uniform(-scale, scale);
    Vector dp = rng.uniform_vector(n, -scale, scale);
    return {dt, std::move(dq), de, std::move(dp)};
}

}  // namespace reciprel
