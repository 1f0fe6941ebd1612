#include "repsucc/credibility.hpp"

#include <cmath>

#include "repsucc/distributions.hpp"
#include "repsucc/errors.hpp"

namespace repsucc {

double critical_value(double alpha, Sided sided) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw DomainError("alpha must lie in (0, 1)");
    }
    return std_normal_upper_quantile(sided == Sided::two ? alpha / 2.0 : alpha);
}

StudySummary summary_from_interval(const ConfidenceInterval& ci) {
    if (!(ci.level > 0.0 && ci.level < 1.0)) {
        throw DomainError("confidence level must lie in (0, 1)");
    }
    if (!(ci.lower < ci.upper)) {
        throw DomainError("confidence interval needs lower < upper");
    }
    const double z = critical_value(1.0 - ci.level, Sided::two);
    return {0.5 * (ci.lower + ci.upper), (ci.upper - ci.lower) / (2.0 * z)};
}

double scepticism_limit(const ConfidenceInterval& ci) {
    if (!(ci.lower * ci.upper > 0.0)) {
        throw NotSignificant("confidence interval includes zero: no sufficiently sceptical prior");
    }
    if (ci.lower > ci.upper) {
        throw DomainError("confidence interval needs lower <= upper");
    }
    double lo = ci.lower;
    double hi = ci.upper;
    if (hi < 0.0) {
        lo = -ci.upper;
        hi = -ci.lower;
    }
    const double width = hi - lo;
    return width * width / (4.0 * std::sqrt(hi * lo));
}

double sceptical_prior_variance(double sigma_o, double t_o, double critical) {
    if (!(sigma_o > 0.0)) {
        throw DomainError("standard error must be positive");
    }
    if (!(critical > 0.0)) {
        throw DomainError("critical value must be positive");
    }
    const double ratio = (t_o * t_o) / (critical * critical);
    if (!(ratio > 1.0)) {
        throw NotSignificant("original study is not significant at the requested level");
    }
    return sigma_o * sigma_o / (ratio - 1.0);
}

BoxAssessment box_assessment(double replication_estimate, double replication_se,
                             double prior_variance) {
    if (!(replication_se > 0.0)) {
        throw DomainError("replication standard error must be positive");
    }
    if (!(prior_variance > 0.0)) {
        throw DomainError("prior variance must be positive");
    }
    const double t_box =
        replication_estimate /
        std::sqrt(prior_variance + replication_se * replication_se);
    return {t_box, 2.0 * std_normal_sf(std::abs(t_box))};
}

CredibilityResult replication_success_at_level(const StudySummary& original,
                                               const StudySummary& replication, double alpha,
                                               Sided sided) {
    const double z = critical_value(alpha, sided);
    const double t_o = original.test_statistic();

    CredibilityResult out;
    out.sceptical_prior_variance = sceptical_prior_variance(original.standard_error, t_o, z);
    // Limits of the sufficiently sceptical prior's 1 - alpha interval.
    out.scepticism_limit = z * std::sqrt(out.sceptical_prior_variance);

    const auto box = box_assessment(replication.estimate, replication.standard_error,
                                    out.sceptical_prior_variance);
    out.box_statistic = box.statistic;
    if (sided == Sided::two) {
        out.box_tail_probability = box.tail_probability;
    } else {
        const double oriented = std::signbit(original.estimate) ? -box.statistic : box.statistic;
        out.box_tail_probability = std_normal_sf(oriented);
    }
    out.success = out.box_tail_probability <= alpha;
    return out;
}

}  // namespace repsucc
