#include "repsucc/design.hpp"

#include <cmath>

#include "repsucc/errors.hpp"

namespace repsucc {

namespace {

// Standard deviation of t_r under the design prior.
double replication_t_sd(double c, DesignPrior prior) noexcept {
    return prior == DesignPrior::point ? 1.0 : std::sqrt(1.0 + c);
}

// Finds a crossing of power(c) = target in [lo, hi] (log scale) assuming
// power(lo) < target <= power(hi); returns the upper end of the final bracket.
template <class F>
double bisect_log(F&& power_at, double lo, double hi, double target) {
    double log_lo = std::log(lo);
    double log_hi = std::log(hi);
    while (log_hi - log_lo > 1e-12) {
        const double mid = 0.5 * (log_lo + log_hi);
        if (power_at(std::exp(mid)) >= target) {
            log_hi = mid;
        } else {
            log_lo = mid;
        }
    }
    return std::exp(log_hi);
}

// First grid interval (g[i-1], g[i]] with power(g[i]) >= target. Sets
// `monotone` to whether the scanned powers were non-decreasing.
template <class F>
std::optional<std::pair<double, double>> first_crossing(F&& power_at, int points,
                                                        double target, bool& monotone) {
    const double log_lo = std::log(kMinRelativeSampleSize);
    const double step = (std::log(kMaxRelativeSampleSize) - log_lo) / (points - 1);
    monotone = true;
    double prev_c = kMinRelativeSampleSize;
    double prev_power = power_at(prev_c);
    if (prev_power >= target) {
        return std::pair{prev_c, prev_c};
    }
    std::optional<std::pair<double, double>> found;
    for (int i = 1; i < points; ++i) {
        const double c = i + 1 == points ? kMaxRelativeSampleSize : std::exp(log_lo + i * step);
        const double p = power_at(c);
        if (p < prev_power) {
            monotone = false;
        }
        if (!found && p >= target) {
            found = std::pair{prev_c, c};
        }
        prev_c = c;
        prev_power = p;
    }
    return found;
}

}  // namespace

void DesignQuery::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw DomainError("alpha must lie in (0, 1)");
    }
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw DomainError("relative sample size c must be positive");
    }
    if (!std::isfinite(t_o)) {
        throw DomainError("t_o must be finite");
    }
}

double t_from_two_sided_p(double p) {
    if (!(p > 0.0 && p <= 1.0)) {
        throw DomainError("p-value must lie in (0, 1]");
    }
    if (p == 1.0) {
        return 0.0;
    }
    return std_normal_upper_quantile(0.5 * p);
}

double two_sided_p_from_t(double t) noexcept { return 2.0 * std_normal_sf(std::abs(t)); }

ScaledNoncentralChiSq1 replication_t_squared_distribution(double t_o, double c,
                                                          DesignPrior prior) {
    if (!(c > 0.0)) {
        throw DomainError("relative sample size c must be positive");
    }
    const double t_o_sq = t_o * t_o;
    if (prior == DesignPrior::point) {
        return {c * t_o_sq, 1.0};
    }
    return {t_o_sq * c / (1.0 + c), 1.0 + c};
}

double power_significance(const DesignQuery& query) {
    query.validate();
    const double z = critical_value(query.alpha, query.sided);
    const double mean = std::sqrt(query.c) * std::abs(query.t_o);
    const double sd = replication_t_sd(query.c, query.prior);
    const double same_direction = std_normal_sf((z - mean) / sd);
    if (query.t_o == 0.0 && query.sided == Sided::two) {
        return 2.0 * same_direction;
    }
    return same_direction;
}

std::optional<double> success_threshold(double t_o_sq, double c, double critical) {
    if (!(c > 0.0)) {
        throw DomainError("relative sample size c must be positive");
    }
    if (!(critical > 0.0)) {
        throw DomainError("critical value must be positive");
    }
    const double z_sq = critical * critical;
    const double excess = t_o_sq / z_sq - 1.0;
    if (!(excess > 0.0)) {
        return std::nullopt;
    }
    return z_sq * (1.0 + c / excess);
}

double power_replication_success(const DesignQuery& query) {
    query.validate();
    const double z = critical_value(query.alpha, query.sided);
    const auto threshold = success_threshold(query.t_o * query.t_o, query.c, z);
    if (!threshold) {
        return 0.0;
    }
    if (query.sided == Sided::two) {
        return noncentral_chisq1_sf(
            *threshold, replication_t_squared_distribution(query.t_o, query.c, query.prior));
    }
    const double mean = std::sqrt(query.c) * std::abs(query.t_o);
    const double sd = replication_t_sd(query.c, query.prior);
    return std_normal_sf((std::sqrt(*threshold) - mean) / sd);
}

double power(const DesignQuery& query) {
    return query.target == DesignTarget::significance ? power_significance(query)
                                                      : power_replication_success(query);
}

SampleSizeResult required_relative_sample_size(const DesignQuery& query, double target_power) {
    if (!(target_power > 0.0 && target_power < 1.0)) {
        throw DomainError("target power must lie in (0, 1)");
    }
    DesignQuery q = query;
    q.c = 1.0;
    q.validate();
    auto power_at = [&q](double c) {
        q.c = c;
        return power(q);
    };

    SampleSizeResult out;
    const double at_max = power_at(kMaxRelativeSampleSize);
    if (at_max < target_power) {
        out.power_at_c = at_max;
        return out;
    }

    bool monotone = true;
    auto bracket = first_crossing(power_at, 50, target_power, monotone);
    if (!monotone) {
        bracket = first_crossing(power_at, 5000, target_power, monotone);
    }
    // at_max >= target means the last grid point crosses; guard anyway.
    if (!bracket) {
        out.power_at_c = at_max;
        return out;
    }
    const auto [lo, hi] = *bracket;
    const double c = lo == hi ? lo : bisect_log(power_at, lo, hi, target_power);
    out.c_required = c;
    out.power_at_c = power_at(c);
    return out;
}

std::vector<CurveRow> power_curve(std::span<const double> p_o_grid, const DesignQuery& query) {
    std::vector<CurveRow> rows;
    rows.reserve(p_o_grid.size());
    DesignQuery q = query;
    for (const double p_o : p_o_grid) {
        q.t_o = t_from_two_sided_p(p_o);
        rows.push_back({p_o, power(q)});
    }
    return rows;
}

std::vector<CurveRow> sample_size_curve(std::span<const double> p_o_grid,
                                        const DesignQuery& query, double target_power) {
    std::vector<CurveRow> rows;
    rows.reserve(p_o_grid.size());
    DesignQuery q = query;
    for (const double p_o : p_o_grid) {
        q.t_o = t_from_two_sided_p(p_o);
        rows.push_back({p_o, required_relative_sample_size(q, target_power).c_required});
    }
    return rows;
}

}  // namespace repsucc
