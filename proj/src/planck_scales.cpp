#include "reciprel/planck_scales.hpp"

#include <algorithm>
#include <cmath>

namespace reciprel {

namespace {

double rel(double lhs, double rhs) { return std::abs(lhs - rhs) / std::abs(rhs); }

}  // namespace

void ScaleConstants::validate() const {
    require_positive(c, "c");
    require_positive(hbar, "hbar");
    if (b) require_positive(*b, "b");
    if (G) require_positive(*G, "G");
    if (alpha_G) require_positive(*alpha_G, "alpha_G");
    if (!b && !G) throw DomainError("one of b or G is required");
    if (b && G && alpha_G) {
        const double implied = *alpha_G * c * c * c * c / *b;
        if (rel(implied, *G) > 1e-12) {
            throw DomainError("inconsistent constants: G != alpha_G c^4 / b");
        }
    }
}

double ScaleConstants::force_scale() const {
    validate();
    if (b) return *b;
    return coupling() * c * c * c * c / *G;
}

PlanckScales planck_from_cbh(double c, double b, double hbar) {
    require_positive(c, "c");
    require_positive(b, "b");
    require_positive(hbar, "hbar");
    return {std::sqrt(hbar / (b * c)), std::sqrt(hbar * c / b), std::sqrt(hbar * b / c),
            std::sqrt(hbar * b * c)};
}

PlanckScales planck_from_cGh(double c, double G, double hbar) {
    require_positive(c, "c");
    require_positive(G, "G");
    require_positive(hbar, "hbar");
    const double c3 = c * c * c;
    const double c5 = c3 * c * c;
    return {std::sqrt(G * hbar / c5), std::sqrt(hbar * G / c3), std::sqrt(hbar * c3 / G),
            std::sqrt(hbar * c5 / G)};
}

PlanckScales planck_from_constants(const ScaleConstants& k) {
    return planck_from_cbh(k.c, k.force_scale(), k.hbar);
}

double IdentityResiduals::max() const { return *std::max_element(values.begin(), values.end()); }

IdentityResiduals verify_identities(const PlanckScales& s, double c, double force_scale,
                                    double hbar) {
    IdentityResiduals out;
    out.values = {rel(s.lambda_q / s.lambda_t, c),
                  rel(s.lambda_e / s.lambda_p, c),
                  rel(s.lambda_q * s.lambda_p, hbar),
                  rel(s.lambda_t * s.lambda_e, hbar),
                  rel(s.lambda_p / s.lambda_t, force_scale),
                  rel(s.lambda_e / s.lambda_q, force_scale)};
    return out;
}

}  // namespace reciprel
