#include "repsucc/nullsim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "repsucc/distributions.hpp"
#include "repsucc/errors.hpp"
#include "repsucc/sceptical.hpp"

namespace repsucc {

namespace {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// Draws per chunk; chunks are the unit of work handed to threads.
constexpr std::uint64_t kChunk = 1 << 16;

struct Tally {
    std::vector<std::uint64_t> tails;
    std::vector<std::uint64_t> bins;
};

void run_chunk(const NullSimConfig& cfg, std::uint64_t begin, std::uint64_t end, Tally& tally) {
    const double bins = static_cast<double>(cfg.histogram_bins);
    for (std::uint64_t i = begin; i < end; ++i) {
        const auto [t_o, t_r] = null_draw(cfg.seed, i);
        const double z2 = z_s_squared(t_o * t_o, t_r * t_r, cfg.c);
        const double p = 2.0 * std_normal_sf(std::sqrt(z2));
        for (std::size_t k = 0; k < cfg.alpha_grid.size(); ++k) {
            if (p <= cfg.alpha_grid[k]) {
                ++tally.tails[k];
            }
        }
        const auto bin = std::min(static_cast<std::size_t>(p * bins), cfg.histogram_bins - 1);
        ++tally.bins[bin];
    }
}

}  // namespace

std::uint64_t CounterRng::bits(std::uint64_t stream, std::uint64_t counter) const noexcept {
    return mix64(mix64(seed_ + kGolden * (stream + 1)) ^ (counter * kGolden + 0x632be59bd9b4e019ULL));
}

double CounterRng::uniform(std::uint64_t stream, std::uint64_t counter) const noexcept {
    return (static_cast<double>(bits(stream, counter) >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal(std::uint64_t stream, std::uint64_t counter) const {
    return std_normal_quantile(uniform(stream, counter));
}

std::pair<double, double> null_draw(std::uint64_t seed, std::uint64_t index) {
    const CounterRng rng(seed);
    return {rng.normal(index, 0), rng.normal(index, 1)};
}

void NullSimConfig::validate() const {
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw DomainError("variance ratio c must be positive");
    }
    if (n_samples == 0) {
        throw DomainError("n_samples must be at least 1");
    }
    if (histogram_bins == 0) {
        throw DomainError("histogram needs at least one bin");
    }
    double prev = 0.0;
    for (const double a : alpha_grid) {
        if (!(a > prev && a < 1.0)) {
            throw DomainError("alpha grid must be strictly increasing inside (0, 1)");
        }
        prev = a;
    }
}

NullSimReport simulate_null(const NullSimConfig& config) {
    config.validate();

    const std::uint64_t n_chunks = (config.n_samples + kChunk - 1) / kChunk;
    unsigned workers = config.workers ? config.workers : std::thread::hardware_concurrency();
    workers = static_cast<unsigned>(
        std::clamp<std::uint64_t>(workers == 0 ? 1 : workers, 1, n_chunks));

    std::vector<Tally> tallies(workers, Tally{std::vector<std::uint64_t>(config.alpha_grid.size()),
                                              std::vector<std::uint64_t>(config.histogram_bins)});
    auto work = [&](unsigned w) {
        for (std::uint64_t chunk = w; chunk < n_chunks; chunk += workers) {
            const std::uint64_t begin = chunk * kChunk;
            const std::uint64_t end = std::min(begin + kChunk, config.n_samples);
            run_chunk(config, begin, end, tallies[w]);
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work, w);
        }
    }

    NullSimReport report;
    report.c = config.c;
    report.n_samples = config.n_samples;
    report.seed = config.seed;
    const double n = static_cast<double>(config.n_samples);
    for (std::size_t k = 0; k < config.alpha_grid.size(); ++k) {
        TailEstimate est;
        est.alpha = config.alpha_grid[k];
        for (const auto& t : tallies) {
            est.count += t.tails[k];
        }
        est.estimate = static_cast<double>(est.count) / n;
        est.standard_error = std::sqrt(est.estimate * (1.0 - est.estimate) / n);
        report.tail_estimates.push_back(est);
    }
    report.histogram.counts.assign(config.histogram_bins, 0);
    for (const auto& t : tallies) {
        for (std::size_t b = 0; b < config.histogram_bins; ++b) {
            report.histogram.counts[b] += t.bins[b];
        }
    }
    report.histogram.edges.resize(config.histogram_bins + 1);
    for (std::size_t b = 0; b <= config.histogram_bins; ++b) {
        report.histogram.edges[b] =
            static_cast<double>(b) / static_cast<double>(config.histogram_bins);
    }
    return report;
}

double null_tail_bound(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw DomainError("alpha must lie in (0, 1]");
    }
    return alpha * alpha;
}

double density_p_ic(double p) {
    if (!(p > 0.0 && p <= 1.0)) {
        throw DomainError("density_p_ic: p must lie in (0, 1]");
    }
    const double t = p == 1.0 ? 0.0 : std_normal_upper_quantile(0.5 * p);
    return 2.0 * std::sqrt(std::numbers::pi) * std_normal_pdf(t);
}

}  // namespace repsucc
