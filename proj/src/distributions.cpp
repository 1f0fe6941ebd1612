#include "repsucc/distributions.hpp"

#include <array>
#include <cmath>

#include "repsucc/errors.hpp"

namespace repsucc {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Acklam's approximation for the lower half, p in (0, 0.5].
double acklam_lower(double p) noexcept {
    constexpr std::array<double, 6> a{-3.969683028665376e+01, 2.209460984245205e+02,
                                      -2.759285104469687e+02, 1.383577518672690e+02,
                                      -3.066479806614716e+01, 2.506628277459239e+00};
    constexpr std::array<double, 5> b{-5.447609879822406e+01, 1.615858368580409e+02,
                                      -1.556989798598866e+02, 6.680131188771972e+01,
                                      -1.328068155288572e+01};
    constexpr std::array<double, 6> c{-7.784894002430293e-03, -3.223964580411365e-01,
                                      -2.400758277161838e+00, -2.549732539343734e+00,
                                      4.374664141464968e+00,  2.938163982698783e+00};
    constexpr std::array<double, 4> d{7.784695709041462e-03, 3.224671290700398e-01,
                                      2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

// Quantile for p in (0, 0.5]; the residual Phi(x) - p is computed in the
// lower tail where erfc has full relative accuracy.
double lower_quantile(double p) noexcept {
    double x = acklam_lower(p);
    const double pdf = std_normal_pdf(x);
    if (pdf > 0.0) {
        x -= (std_normal_cdf(x) - p) / pdf;
    }
    return x;
}

}  // namespace

double std_normal_pdf(double x) noexcept {
    constexpr double inv_sqrt_2pi = 0.39894228040143267794;
    return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

double std_normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x * kInvSqrt2); }

double std_normal_sf(double x) noexcept { return 0.5 * std::erfc(x * kInvSqrt2); }

double std_normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("std_normal_quantile: p must lie in (0, 1)");
    }
    if (p <= 0.5) {
        return lower_quantile(p);
    }
    // 1 - p is exact for p in [0.5, 1).
    return -lower_quantile(1.0 - p);
}

double std_normal_upper_quantile(double q) {
    if (!(q > 0.0 && q < 1.0)) {
        throw DomainError("std_normal_upper_quantile: q must lie in (0, 1)");
    }
    if (q <= 0.5) {
        return -lower_quantile(q);
    }
    return lower_quantile(1.0 - q);
}

ScaledNoncentralChiSq1::ScaledNoncentralChiSq1(double noncentrality_, double scale_)
    : noncentrality(noncentrality_), scale(scale_) {
    if (!(noncentrality >= 0.0) || !std::isfinite(noncentrality)) {
        throw DomainError("ScaledNoncentralChiSq1: noncentrality must be >= 0");
    }
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw DomainError("ScaledNoncentralChiSq1: scale must be > 0");
    }
}

double noncentral_chisq1_cdf(double x, const ScaledNoncentralChiSq1& dist) noexcept {
    if (!(x > 0.0)) {
        return 0.0;
    }
    const double root = std::sqrt(x / dist.scale);
    const double shift = std::sqrt(dist.noncentrality);
    // Phi(root - shift) - Phi(-root - shift), written as a difference of upper
    // tails when the mass below is small so the subtraction does not cancel.
    if (root - shift > 0.0) {
        return 1.0 - std_normal_sf(root - shift) - std_normal_cdf(-root - shift);
    }
    return std_normal_cdf(root - shift) - std_normal_cdf(-root - shift);
}

double noncentral_chisq1_sf(double x, const ScaledNoncentralChiSq1& dist) noexcept {
    if (!(x > 0.0)) {
        return 1.0;
    }
    const double root = std::sqrt(x / dist.scale);
    const double shift = std::sqrt(dist.noncentrality);
    return std_normal_sf(root - shift) + std_normal_sf(root + shift);
}

}  // namespace repsucc
