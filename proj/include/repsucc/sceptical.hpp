#pragma once

namespace repsucc {

/// Test statistics of an (original, replication) pair and their variance
/// ratio c = sigma_o^2 / sigma_r^2 (the relative effective sample size).
struct TestPair {
    double t_o = 0.0;
    double t_r = 0.0;
    double c = 1.0;

    /// Throws DomainError unless c > 0 and both statistics are finite.
    void validate() const;

    /// Whether the two estimates point the same way. A zero statistic counts
    /// as agreeing.
    bool direction_agrees() const noexcept { return t_o * t_r >= 0.0; }
};

struct ScepticalOutcome {
    double z_s_squared = 0.0;
    double p_two_sided = 1.0;
    double p_one_sided = 0.5;
    bool direction_agrees = true;
};

/// Squared sceptical z-value: the root of
///   (c - 1) z^4 + 2 z^2 tA^2 = tA^2 tH^2
/// in [0, min(t_o^2, t_r^2)), where tA^2 and tH^2 are the arithmetic and
/// harmonic means of t_o^2 and t_r^2. Evaluated as
///   tA^2 tH^2 / (tA^2 + sqrt(tA^2 (tA^2 + (c - 1) tH^2)))
/// which is the same root rationalized, and continuous through c = 1.
double z_s_squared(double t_o_sq, double t_r_sq, double c);

double sceptical_p_two_sided(const TestPair& pair);

/// Half the two-sided value when the directions agree, 1 - p_S/2 otherwise.
double sceptical_p_one_sided(const TestPair& pair, bool direction_agrees);

/// z_s_squared, both p-values and the agreement flag in one pass, with the
/// direction taken from the signs of t_o and t_r.
ScepticalOutcome sceptical_outcome(const TestPair& pair);

/// Limit of z_s_squared as the replication variance vanishes:
/// ((sqrt(d (d + 4)) - d) / 2) t_o^2 with d = theta_r^2 / theta_o^2.
double matthews_limit_z_sq(double t_o_sq, double d);

/// p-value for intrinsic credibility, 2 (1 - Phi(|t_o| / sqrt 2)).
double intrinsic_credibility_p(double t_o) noexcept;

/// Two-sided p_o threshold at which an original study becomes intrinsically
/// credible at level alpha: 2 (1 - Phi(sqrt 2 z_{alpha/2})).
double intrinsic_threshold(double alpha);

}  // namespace repsucc
