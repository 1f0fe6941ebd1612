#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "repsucc/distributions.hpp"
#include "repsucc/sidedness.hpp"

namespace repsucc {

/// Design prior for the true effect when planning the replication.
///  - point:  theta = theta_o (conditional power)
///  - normal: theta ~ N(theta_o, sigma_o^2) (predictive power)
enum class DesignPrior { point, normal };

enum class DesignTarget { significance, success };

/// Everything is expressed through t_o and c = n_r / n_o; the per-observation
/// variance cancels and is not represented.
struct DesignQuery {
    double t_o = 0.0;
    double c = 1.0;
    double alpha = 0.05;
    Sided sided = Sided::two;
    DesignPrior prior = DesignPrior::point;
    DesignTarget target = DesignTarget::significance;

    /// Throws DomainError unless 0 < alpha < 1, c > 0 and t_o is finite.
    void validate() const;
};

/// Smallest and largest relative sample sizes considered by the search.
inline constexpr double kMinRelativeSampleSize = 1e-3;
inline constexpr double kMaxRelativeSampleSize = 1e3;

struct SampleSizeResult {
    /// Empty when the target power is not reached for any c up to
    /// kMaxRelativeSampleSize.
    std::optional<double> c_required;
    /// Power at c_required, or at kMaxRelativeSampleSize when not achievable.
    double power_at_c = 0.0;

    bool achievable() const noexcept { return c_required.has_value(); }
};

struct CurveRow {
    double p_o = 0.0;
    std::optional<double> value;

    std::string_view status() const noexcept { return value ? "ok" : "not_achievable"; }
};

/// Two-sided p-value <-> |t| conversions used for the p_o axis.
double t_from_two_sided_p(double p);
double two_sided_p_from_t(double t) noexcept;

/// Law of t_r^2 under the design prior: scale 1 + c and noncentrality
/// t_o^2 / (1 + 1/c) for the normal prior; scale 1 and noncentrality c t_o^2
/// for the point prior.
ScaledNoncentralChiSq1 replication_t_squared_distribution(double t_o, double c,
                                                          DesignPrior prior);

/// Probability that the replication is significant in the direction of the
/// original estimate (one-sided: at z_alpha; two-sided: at z_{alpha/2}). With
/// t_o = 0 there is no direction and both tails count.
double power_significance(const DesignQuery& query);

/// Minimal t_r^2 for replication success: z^2 (1 + c / (t_o^2 / z^2 - 1)).
/// Empty when t_o^2 <= z^2, i.e. success is impossible.
std::optional<double> success_threshold(double t_o_sq, double c, double critical);

/// Probability of replication success. Two-sided: Pr(t_r^2 >= threshold),
/// counting both signs of t_r. One-sided: Pr(t_r >= sqrt(threshold)) in the
/// direction of the original estimate. Zero when the original is not
/// significant at the requested level.
double power_replication_success(const DesignQuery& query);

/// Dispatches on query.target.
double power(const DesignQuery& query);

/// Smallest c in [kMinRelativeSampleSize, kMaxRelativeSampleSize] whose power
/// reaches target_power. query.c is ignored. Not achievable when the power at
/// kMaxRelativeSampleSize stays below the target.
SampleSizeResult required_relative_sample_size(const DesignQuery& query, double target_power);

/// Power over a grid of two-sided original p-values; t_o is taken positive.
std::vector<CurveRow> power_curve(std::span<const double> p_o_grid, const DesignQuery& query);

/// Required c over a grid of two-sided original p-values.
std::vector<CurveRow> sample_size_curve(std::span<const double> p_o_grid,
                                        const DesignQuery& query, double target_power);

}  // namespace repsucc
