#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace repsucc {

/// Counter-based generator: the k-th output of stream s under a given seed is
/// a pure function of (seed, s, k), so any partition of the streams over
/// threads reproduces the same numbers.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) noexcept : seed_(seed) {}

    std::uint64_t bits(std::uint64_t stream, std::uint64_t counter) const noexcept;
    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform(std::uint64_t stream, std::uint64_t counter) const noexcept;
    /// Standard normal via the inverse CDF.
    double normal(std::uint64_t stream, std::uint64_t counter) const;

private:
    std::uint64_t seed_;
};

/// The (t_o, t_r) pair of the given draw index under H0. Exposed so tests can
/// reproduce individual draws of simulate_null.
std::pair<double, double> null_draw(std::uint64_t seed, std::uint64_t index);

struct NullSimConfig {
    double c = 1.0;
    std::uint64_t n_samples = 1'000'000;
    std::uint64_t seed = 1;
    std::vector<double> alpha_grid{0.05};
    std::size_t histogram_bins = 200;
    /// 0 picks std::thread::hardware_concurrency(). Does not affect results.
    unsigned workers = 0;

    /// Throws DomainError on c <= 0, n_samples == 0, zero bins or an alpha
    /// grid that is not strictly increasing inside (0, 1).
    void validate() const;
};

struct TailEstimate {
    double alpha = 0.0;
    std::uint64_t count = 0;
    double estimate = 0.0;
    /// Binomial Monte Carlo standard error sqrt(p (1 - p) / n).
    double standard_error = 0.0;
};

struct Histogram {
    /// bins + 1 equally spaced edges on [0, 1].
    std::vector<double> edges;
    std::vector<std::uint64_t> counts;
};

struct NullSimReport {
    double c = 1.0;
    std::uint64_t n_samples = 0;
    std::uint64_t seed = 0;
    std::vector<TailEstimate> tail_estimates;
    Histogram histogram;
};

/// Simulates t_o, t_r independent standard normal (no effect) and tabulates
/// the two-sided sceptical p-value at variance ratio c.
NullSimReport simulate_null(const NullSimConfig& config);

/// alpha^2: Pr(max(p_o, p_r) <= alpha) for independent uniform p-values,
/// the c -> 0 limit and an upper bound of Pr(p_S <= alpha | H0).
double null_tail_bound(double alpha);

/// Density of the intrinsic-credibility p-value under H0,
/// 2 sqrt(pi) phi(Phi^{-1}(1 - p/2)), for p in (0, 1].
double density_p_ic(double p);

}  // namespace repsucc
