#pragma once

namespace repsucc {

// Standard normal density, CDF, upper tail and quantile.
//
// The CDF and survival function are evaluated through std::erfc, which keeps
// full relative precision in both tails. The quantile uses Acklam's rational
// approximation (relative error < 1.15e-9) followed by one Newton step.

double std_normal_pdf(double x) noexcept;
double std_normal_cdf(double x) noexcept;
/// 1 - Phi(x) without cancellation.
double std_normal_sf(double x) noexcept;
/// Inverse of std_normal_cdf. Throws DomainError unless 0 < p < 1.
double std_normal_quantile(double p);
/// Quantile of the upper tail: the z with 1 - Phi(z) = q. Throws DomainError
/// unless 0 < q < 1.
double std_normal_upper_quantile(double q);

/// Distribution of s * X where X is non-central chi-squared with one degree
/// of freedom and non-centrality lambda.
struct ScaledNoncentralChiSq1 {
    double noncentrality = 0.0;
    double scale = 1.0;

    /// Throws DomainError unless noncentrality >= 0 and scale > 0.
    ScaledNoncentralChiSq1(double noncentrality, double scale = 1.0);
};

/// P(s X <= x). For one degree of freedom this reduces to two normal CDFs:
/// Phi(sqrt(x/s) - sqrt(lambda)) - Phi(-sqrt(x/s) - sqrt(lambda)).
double noncentral_chisq1_cdf(double x, const ScaledNoncentralChiSq1& dist) noexcept;

/// P(s X > x), evaluated from the upper tails directly.
double noncentral_chisq1_sf(double x, const ScaledNoncentralChiSq1& dist) noexcept;

}  // namespace repsucc
