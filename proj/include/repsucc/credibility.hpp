#pragma once

#include "repsucc/sidedness.hpp"

namespace repsucc {

/// Effect estimate on an approximately normal scale with its standard error.
struct StudySummary {
    double estimate = 0.0;
    double standard_error = 1.0;

    double test_statistic() const noexcept { return estimate / standard_error; }
};

/// Confidence interval [lower, upper] at confidence level `level` (e.g. 0.95).
struct ConfidenceInterval {
    double lower = 0.0;
    double upper = 0.0;
    double level = 0.95;
};

/// Converts a symmetric two-sided normal confidence interval into estimate and
/// standard error, sigma = (U - L) / (2 z_{alpha/2}).
StudySummary summary_from_interval(const ConfidenceInterval& ci);

struct CredibilityResult {
    double scepticism_limit = 0.0;
    double sceptical_prior_variance = 0.0;
    double box_statistic = 0.0;
    double box_tail_probability = 1.0;
    bool success = false;
};

struct BoxAssessment {
    double statistic = 0.0;
    /// Two-sided upper tail Pr(chi2(1) >= t_Box^2).
    double tail_probability = 1.0;
};

/// Half-width S = (U - L)^2 / (4 sqrt(U L)) of the sufficiently sceptical
/// prior's credible interval. Intervals on the negative half-line are
/// reflected. Throws NotSignificant when the interval covers zero.
double scepticism_limit(const ConfidenceInterval& ci);

/// tau^2 = sigma_o^2 / (t_o^2 / z^2 - 1). `critical` is z_{alpha/2} for a
/// two-sided or z_{alpha} for a one-sided assessment. Throws NotSignificant
/// unless t_o^2 > z^2.
double sceptical_prior_variance(double sigma_o, double t_o, double critical);

/// Prior-predictive conflict between the replication estimate and a
/// zero-mean prior with variance tau^2.
BoxAssessment box_assessment(double replication_estimate, double replication_se,
                             double prior_variance);

/// Reverse-Bayes assessment of replication success at level alpha.
///
/// Two-sided: success iff p_Box <= alpha. One-sided (alpha is the one-sided
/// level, not halved here): success iff t_Box, oriented along the sign of the
/// original estimate, is at least z_alpha; p_Box is then reported as the
/// corresponding one-sided tail so that success <=> p_Box <= alpha in both
/// modes.
CredibilityResult replication_success_at_level(const StudySummary& original,
                                               const StudySummary& replication, double alpha,
                                               Sided sided = Sided::two);

}  // namespace repsucc
