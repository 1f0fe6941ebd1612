#include "repsucc/sceptical.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "repsucc/distributions.hpp"
#include "repsucc/errors.hpp"
#include "repsucc/sidedness.hpp"

namespace repsucc {

void TestPair::validate() const {
    if (!std::isfinite(t_o) || !std::isfinite(t_r)) {
        throw DomainError("test statistics must be finite");
    }
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw DomainError("variance ratio c must be positive");
    }
}

double z_s_squared(double t_o_sq, double t_r_sq, double c) {
    if (!(t_o_sq >= 0.0) || !(t_r_sq >= 0.0) || !std::isfinite(t_o_sq) ||
        !std::isfinite(t_r_sq)) {
        throw DomainError("squared test statistics must be finite and non-negative");
    }
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw DomainError("variance ratio c must be positive");
    }
    const double sum = t_o_sq + t_r_sq;
    if (t_o_sq == 0.0 || t_r_sq == 0.0) {
        return 0.0;
    }
    const double arith = 0.5 * sum;
    const double harm = 2.0 * t_o_sq * t_r_sq / sum;
    // arith >= harm, so the radicand stays non-negative for every c > 0.
    const double radicand = arith * (arith + (c - 1.0) * harm);
    return arith * harm / (arith + std::sqrt(std::max(radicand, 0.0)));
}

double sceptical_p_two_sided(const TestPair& pair) {
    pair.validate();
    const double z2 = z_s_squared(pair.t_o * pair.t_o, pair.t_r * pair.t_r, pair.c);
    return 2.0 * std_normal_sf(std::sqrt(z2));
}

double sceptical_p_one_sided(const TestPair& pair, bool direction_agrees) {
    const double p = sceptical_p_two_sided(pair);
    return direction_agrees ? 0.5 * p : 1.0 - 0.5 * p;
}

ScepticalOutcome sceptical_outcome(const TestPair& pair) {
    pair.validate();
    ScepticalOutcome out;
    out.z_s_squared = z_s_squared(pair.t_o * pair.t_o, pair.t_r * pair.t_r, pair.c);
    const double half = std_normal_sf(std::sqrt(out.z_s_squared));
    out.p_two_sided = 2.0 * half;
    out.direction_agrees = pair.direction_agrees();
    out.p_one_sided = out.direction_agrees ? half : 1.0 - half;
    return out;
}

double matthews_limit_z_sq(double t_o_sq, double d) {
    if (!(d >= 0.0) || !(t_o_sq >= 0.0)) {
        throw DomainError("matthews_limit_z_sq: arguments must be non-negative");
    }
    // (sqrt(d(d+4)) - d)/2 == 2d / (sqrt(d(d+4)) + d), stable for large d.
    if (d == 0.0) {
        return 0.0;
    }
    return 2.0 * d / (std::sqrt(d * (d + 4.0)) + d) * t_o_sq;
}

double intrinsic_credibility_p(double t_o) noexcept {
    return 2.0 * std_normal_sf(std::abs(t_o) / std::numbers::sqrt2);
}

double intrinsic_threshold(double alpha) {
    const double z = critical_value(alpha, Sided::two);
    return 2.0 * std_normal_sf(std::numbers::sqrt2 * z);
}

}  // namespace repsucc
