#pragma once

#include "reciprel/common.hpp"

#include <array>
#include <optional>
#include <string_view>

namespace reciprel {

/// Dimensional constants. The force scale b and Newton's G are related by
/// G = alpha_G c^4 / b; either may be given, and alpha_G defaults to 1.
struct ScaleConstants {
    double c = 1.0;
    double hbar = 1.0;
    std::optional<double> b;
    std::optional<double> G;
    std::optional<double> alpha_G;

    /// Throws DomainError on nonpositive values, when neither b nor G is set,
    /// or when b, G and alpha_G are all set but disagree beyond 1e-12
    /// relative.
    void validate() const;

    double coupling() const { return alpha_G.value_or(1.0); }

    /// b if given, otherwise alpha_G c^4 / G.
    double force_scale() const;
};

struct PlanckScales {
    double lambda_t;
    double lambda_q;
    double lambda_p;
    double lambda_e;
};

/// sqrt(hbar/(b c)), sqrt(hbar c/b), sqrt(hbar b/c), sqrt(hbar b c).
PlanckScales planck_from_cbh(double c, double b, double hbar);

/// sqrt(G hbar/c^5), sqrt(hbar G/c^3), sqrt(hbar c^3/G), sqrt(hbar c^5/G).
PlanckScales planck_from_cGh(double c, double G, double hbar);

PlanckScales planck_from_constants(const ScaleConstants& k);

/// Relative residuals |lhs - rhs| / |rhs| of the six identities, in order:
///   lq/lt = c, le/lp = c, lq lp = hbar, lt le = hbar,
///   lp/lt = force_scale, le/lq = force_scale.
struct IdentityResiduals {
    static constexpr std::array<std::string_view, 6> names = {
        "lambda_q/lambda_t=c",          "lambda_e/lambda_p=c",
        "lambda_q*lambda_p=hbar",       "lambda_t*lambda_e=hbar",
        "lambda_p/lambda_t=force",      "lambda_e/lambda_q=force"};

    std::array<double, 6> values{};

    double max() const;
};

IdentityResiduals verify_identities(const PlanckScales& s, double c, double force_scale,
                                    double hbar);

}  // namespace reciprel
