// Acceptance suite. Usage: acceptance <1-9|all>
// Prints one PASS/FAIL line per check and a summary line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "repsucc/credibility.hpp"
#include "repsucc/dataset.hpp"
#include "repsucc/design.hpp"
#include "repsucc/distributions.hpp"
#include "repsucc/errors.hpp"
#include "repsucc/nullsim.hpp"
#include "repsucc/sceptical.hpp"

using namespace repsucc;

namespace {

using Clock = std::chrono::steady_clock;

class Criterion {
public:
    explicit Criterion(int id) : id_(id) {}

    void check(const std::string& name, bool ok, const std::string& detail) {
        std::printf("  %s  [%d] %s: %s\n", ok ? "PASS" : "FAIL", id_, name.c_str(), detail.c_str());
        ok_ = ok_ && ok;
    }

    void within(const std::string& name, double value, double expected, double tol) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "got %.6g, want %.6g +/- %.3g", value, expected, tol);
        check(name, std::isfinite(value) && std::abs(value - expected) <= tol, buf);
    }

    void below(const std::string& name, double value, double limit, const char* unit = "") {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%.6g%s (limit %.6g%s)", value, unit, limit, unit);
        check(name, value < limit, buf);
    }

    bool finish(const char* title) const {
        std::printf("%s criterion %d: %s\n", ok_ ? "PASS" : "FAIL", id_, title);
        return ok_;
    }

private:
    int id_;
    bool ok_ = true;
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

double z_crit(double alpha) { return std::abs(critical_value(alpha, Sided::two)); }

bool criterion_1() {
    Criterion cr(1);
    const ConfidenceInterval ci_o{0.25, 0.89};
    const ConfidenceInterval ci_r{0.01, 0.65};
    const StudySummary orig{0.57, summary_from_interval(ci_o).standard_error};
    const StudySummary repl{0.33, summary_from_interval(ci_r).standard_error};

    cr.within("scepticism limit S", scepticism_limit(ci_o), 0.22, 0.005);
    cr.within("p_Box at alpha=0.05",
              replication_success_at_level(orig, repl, 0.05).box_tail_probability, 0.098, 0.005);
    cr.within("p_Box at alpha=0.10",
              replication_success_at_level(orig, repl, 0.10).box_tail_probability, 0.078, 0.005);
    const TestPair pair{orig.test_statistic(), repl.test_statistic(),
                        std::pow(orig.standard_error / repl.standard_error, 2)};
    const auto outcome = sceptical_outcome(pair);
    cr.within("z_S^2", outcome.z_s_squared, 3.00, 0.02);
    cr.within("p_S", outcome.p_two_sided, 0.083, 0.002);

    constexpr int reps = 1000;
    volatile double sink = 0.0;
    const auto start = Clock::now();
    for (int i = 0; i < reps; ++i) {
        const StudySummary o{0.57, summary_from_interval(ci_o).standard_error};
        const StudySummary r{0.33, summary_from_interval(ci_r).standard_error};
        sink = sink + scepticism_limit(ci_o) +
               replication_success_at_level(o, r, 0.05).box_tail_probability +
               replication_success_at_level(o, r, 0.10).box_tail_probability +
               sceptical_outcome({o.test_statistic(), r.test_statistic(),
                                  std::pow(o.standard_error / r.standard_error, 2)})
                   .p_two_sided;
    }
    cr.below("runtime per end-to-end run", 1e3 * seconds_since(start) / reps, 1.0, " ms");
    return cr.finish("intro example end-to-end");
}

bool criterion_2() {
    Criterion cr(2);
    const double t = t_from_two_sided_p(0.01);
    cr.within("c=1", sceptical_p_two_sided({t, t, 1.0}), 0.069, 0.002);
    cr.within("c=4", sceptical_p_two_sided({t, t, 4.0}), 0.14, 0.002);
    cr.within("c=1/4", sceptical_p_two_sided({t, t, 0.25}), 0.035, 0.002);
    return cr.finish("two-sided grid at p_o = p_r = 0.01");
}

bool criterion_3() {
    Criterion cr(3);
    const double t = std_normal_upper_quantile(0.01);
    cr.within("c=1", sceptical_p_one_sided({t, t, 1.0}, true), 0.05, 0.002);
    cr.within("c=4", sceptical_p_one_sided({t, t, 4.0}, true), 0.09, 0.002);
    cr.within("c=1/4", sceptical_p_one_sided({t, t, 0.25}, true), 0.029, 0.002);
    return cr.finish("one-sided grid at p_o = p_r = 0.01");
}

bool criterion_4() {
    Criterion cr(4);
    cr.within("alpha_IC(0.05)", intrinsic_threshold(0.05), 0.0056, 0.0001);
    cr.within("alpha_IC(0.10)", intrinsic_threshold(0.10), 0.020, 0.0005);
    cr.within("z_M^2(d=1)/t_o^2", matthews_limit_z_sq(1.0, 1.0), 0.618, 0.001);
    return cr.finish("intrinsic credibility");
}

bool criterion_5() {
    Criterion cr(5);
    DesignQuery q;
    q.t_o = t_from_two_sided_p(intrinsic_threshold(0.05));
    q.target = DesignTarget::success;
    q.prior = DesignPrior::point;
    cr.within("success power, point prior (%)", 100 * power(q), 50.00001, 0.001);
    q.prior = DesignPrior::normal;
    cr.within("success power, normal prior (%)", 100 * power(q), 50.00459, 0.001);

    q.t_o = t_from_two_sided_p(0.05);
    q.target = DesignTarget::significance;
    q.prior = DesignPrior::point;
    cr.within("significance power at p_o=0.05, point prior (%)", 100 * power(q), 50.0, 0.01);
    q.prior = DesignPrior::normal;
    cr.within("significance power at p_o=0.05, normal prior (%)", 100 * power(q), 50.0, 0.01);
    return cr.finish("power anchors");
}

bool achievable(double p_o, DesignPrior prior, Sided sided) {
    DesignQuery q;
    q.t_o = t_from_two_sided_p(p_o);
    q.prior = prior;
    q.sided = sided;
    q.target = DesignTarget::success;
    return required_relative_sample_size(q, 0.8).achievable();
}

bool criterion_6() {
    Criterion cr(6);
    auto c_for = [](double p_o, DesignPrior prior) {
        DesignQuery q;
        q.t_o = t_from_two_sided_p(p_o);
        q.prior = prior;
        const auto res = required_relative_sample_size(q, 0.8);
        return res.c_required.value_or(NAN);
    };
    cr.within("conditional c(p_o=0.0001)", c_for(0.0001, DesignPrior::point), 0.52, 0.02);
    cr.within("conditional c(p_o=0.05)", c_for(0.05, DesignPrior::point), 2.0, 0.05);
    cr.within("predictive c(p_o=0.0001)", c_for(0.0001, DesignPrior::normal), 0.61, 0.02);
    cr.within("predictive c(p_o=0.05)", c_for(0.05, DesignPrior::normal), 3.7, 0.1);

    struct Boundary {
        const char* name;
        DesignPrior prior;
        Sided sided;
        double expected;
    };
    const Boundary boundaries[] = {
        {"conditional, two-sided", DesignPrior::point, Sided::two, 0.012},
        {"predictive, two-sided", DesignPrior::normal, Sided::two, 0.005},
        {"conditional, one-sided", DesignPrior::point, Sided::one, 0.035},
        {"predictive, one-sided", DesignPrior::normal, Sided::one, 0.017},
    };
    for (const auto& b : boundaries) {
        const auto start = Clock::now();
        double lo = 1e-4, hi = 0.2;
        const bool bracketed = achievable(lo, b.prior, b.sided) && !achievable(hi, b.prior, b.sided);
        while (bracketed && hi - lo > 1e-5) {
            const double mid = 0.5 * (lo + hi);
            (achievable(mid, b.prior, b.sided) ? lo : hi) = mid;
        }
        const double elapsed = seconds_since(start);
        const std::string name = std::string("achievability boundary, ") + b.name;
        if (!bracketed) {
            cr.check(name, false, "no sign change of achievability on [1e-4, 0.2]");
            continue;
        }
        cr.within(name, 0.5 * (lo + hi), b.expected, 0.003);
        cr.below(name + " runtime", elapsed, 1.0, " s");
    }
    return cr.finish("sample-size anchors");
}

bool criterion_7() {
    Criterion cr(7);
    const auto start = Clock::now();
    for (double c : {0.25, 1.0, 4.0}) {
        NullSimConfig cfg;
        cfg.c = c;
        cfg.n_samples = 5'000'000;
        cfg.seed = 20190601;
        cfg.workers = 1;
        const auto rep = simulate_null(cfg);
        const auto& tail = rep.tail_estimates.front();
        char label[64];
        std::snprintf(label, sizeof label, "c=%g tail <= alpha^2 + 3 MCSE", c);
        cr.below(label, tail.estimate, null_tail_bound(0.05) + 3 * tail.standard_error);
        if (c == 1.0) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "got %.6g, want in [5e-5, 2e-4]", tail.estimate);
            cr.check("c=1 Pr(p_S <= 0.05)", tail.estimate >= 5e-5 && tail.estimate <= 2e-4, buf);
        }
    }
    cr.below("single-threaded runtime for 3 x 5e6 draws", seconds_since(start), 60.0, " s");

    const double integral = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        density_p_ic, 0.0, 0.05, 15, 1e-12);
    cr.within("integral of p_IC density over (0, 0.05]", integral, 0.0056, 0.0001);
    return cr.finish("null simulation");
}

// Parses a printed table cell. "<x" and ">x" map to x; the flag records the bound.
struct Printed {
    double value = NAN;
    int bound = 0;  // -1 for "<", +1 for ">"
};

Printed parse_printed(const std::string& s) {
    Printed p;
    std::string body = s;
    if (!body.empty() && (body[0] == '<' || body[0] == '>')) {
        p.bound = body[0] == '<' ? -1 : 1;
        body.erase(0, 1);
    }
    p.value = std::stod(body);
    return p;
}

bool matches(double value, const Printed& printed, double tol) {
    if (printed.bound < 0) return value <= printed.value + tol;
    if (printed.bound > 0) return value >= printed.value - tol;
    return std::abs(value - printed.value) <= tol;
}

std::vector<std::vector<std::string>> read_plain_csv(const std::string& path) {
    std::vector<std::vector<std::string>> out;
    std::FILE* f = std::fopen(path.c_str(), "r");
    if (!f) return out;
    std::string line;
    for (int ch; (ch = std::fgetc(f)) != EOF;) {
        if (ch != '\n') {
            line.push_back(static_cast<char>(ch));
            continue;
        }
        std::vector<std::string> fields(1);
        for (char x : line) {
            if (x == ',') fields.emplace_back();
            else if (x != '\r') fields.back().push_back(x);
        }
        out.push_back(std::move(fields));
        line.clear();
    }
    std::fclose(f);
    return out;
}

bool criterion_8() {
    Criterion cr(8);
    const std::string pairs_path = std::string(REPSUCC_TEST_DATA_DIR) + "/study_pairs_24.csv";
    const auto raw = read_plain_csv(pairs_path);
    const auto parsed = load_dataset_csv(pairs_path);
    cr.check("table rows loaded", parsed.rows.size() == 24 && raw.size() == 25,
             std::to_string(parsed.rows.size()) + " rows");

    std::size_t ps_ok = 0, power_ok = 0;
    for (std::size_t i = 0; i < parsed.rows.size() && i + 1 < raw.size(); ++i) {
        const auto& fields = raw[i + 1];
        const auto s = analyze_row(parsed.rows[i]);
        const Printed printed_power = parse_printed(fields.at(7));
        const Printed printed_ps = parse_printed(fields.at(8));
        const bool ps_match = matches(s.p_s, printed_ps, 0.01);
        const bool power_match = matches(100 * s.power_success, printed_power, 2.5);
        ps_ok += ps_match;
        power_ok += power_match;
        if (!ps_match || !power_match) {
            char buf[200];
            std::snprintf(buf, sizeof buf, "p_s %.4f vs %s, power %.2f%% vs %s",
                          s.p_s, fields[8].c_str(), 100 * s.power_success, fields[7].c_str());
            cr.check(parsed.rows[i].study_id, false, buf);
        }
    }
    cr.check("every p_S within 0.01", ps_ok == parsed.rows.size(),
             std::to_string(ps_ok) + "/" + std::to_string(parsed.rows.size()));
    cr.check("every power within 2.5 points", power_ok == parsed.rows.size(),
             std::to_string(power_ok) + "/" + std::to_string(parsed.rows.size()));

    const std::string full = REPSUCC_FULL_DATASET_PATH;
    if (!std::filesystem::exists(full)) {
        cr.check("73-row summary counts", false, "input file not found: " + full);
    } else {
        const auto data = load_dataset_csv(full);
        const auto res = analyze_dataset(data.rows, 0.05, {0.05, 0.15});
        const auto& sum = res.summary;
        char buf[200];
        std::snprintf(buf, sizeof buf, "rows %zu, non-significant originals %zu, significant "
                      "replications %zu, p_s<=0.05 %zu, p_s<=0.15 %zu (want 73/8/21/11/24)",
                      sum.analyzed, sum.original_not_significant, sum.replication_significant,
                      sum.success_at[0].count, sum.success_at[1].count);
        cr.check("73-row summary counts",
                 sum.analyzed == 73 && sum.original_not_significant == 8 &&
                     sum.replication_significant == 21 && sum.success_at[0].count == 11 &&
                     sum.success_at[1].count == 24,
                 buf);
    }
    return cr.finish("dataset reproduction");
}

bool criterion_9() {
    Criterion cr(9);
    constexpr int pairs = 20000;
    std::mt19937_64 gen(424242);
    std::uniform_real_distribution<double> t_dist(-6.0, 6.0);
    std::uniform_real_distribution<double> log_c(std::log(0.01), std::log(100.0));

    std::size_t ordering = 0, bound = 0, mono_c = 0, mono_o = 0, mono_r = 0, quartic = 0;
    std::size_t box_pairs = 0, box_agree = 0;
    double worst_residual = 0.0;
    for (int i = 0; i < pairs; ++i) {
        double t_o = t_dist(gen), t_r = t_dist(gen);
        if (t_o == 0.0) t_o = 1.0;
        if (t_r == 0.0) t_r = 1.0;
        const double c = std::exp(log_c(gen));
        const double to2 = t_o * t_o, tr2 = t_r * t_r;
        const double z2 = z_s_squared(to2, tr2, c);
        const double p_s = sceptical_p_two_sided({t_o, t_r, c});
        ordering += p_s > std::max(two_sided_p_from_t(t_o), two_sided_p_from_t(t_r));
        bound += z2 < std::min(to2, tr2);
        mono_c += z_s_squared(to2, tr2, c * 1.01) < z2;
        mono_o += z_s_squared(to2 * 1.01, tr2, c) > z2;
        mono_r += z_s_squared(to2, tr2 * 1.01, c) > z2;

        const double ta = 0.5 * (to2 + tr2);
        const double th = 2.0 / (1.0 / to2 + 1.0 / tr2);
        const double residual = std::abs((c - 1) * z2 * z2 + 2 * z2 * ta - ta * th) /
                                (ta * std::max(1.0, th));
        worst_residual = std::max(worst_residual, residual);
        quartic += residual <= 1e-8;

        const double alpha = 0.05;
        if (to2 > std::pow(z_crit(alpha), 2)) {
            ++box_pairs;
            const double sigma_o = 1.0, sigma_r = 1.0 / std::sqrt(c);
            const StudySummary o{t_o * sigma_o, sigma_o}, r{t_r * sigma_r, sigma_r};
            const bool box = replication_success_at_level(o, r, alpha).box_tail_probability <= alpha;
            box_agree += box == (p_s <= alpha);
        }
    }
    auto count_line = [&](const char* name, std::size_t n, std::size_t of) {
        cr.check(name, n == of, std::to_string(n) + "/" + std::to_string(of));
    };
    count_line("p_S > max(p_o, p_r)", ordering, pairs);
    count_line("z_S^2 < min(t_o^2, t_r^2)", bound, pairs);
    count_line("z_S^2 decreasing in c", mono_c, pairs);
    count_line("z_S^2 increasing in t_o^2", mono_o, pairs);
    count_line("z_S^2 increasing in t_r^2", mono_r, pairs);
    count_line("quartic residual <= 1e-8 relative", quartic, pairs);
    count_line("(p_Box <= alpha) iff (p_S <= alpha)", box_agree, box_pairs);

    // Limit sequences.
    double err_c0 = 0.0, err_so = 0.0, err_sr = 0.0;
    for (auto [t_o, t_r] : {std::pair{2.5, 3.1}, {4.0, 1.7}, {-2.2, 2.9}}) {
        const double to2 = t_o * t_o, tr2 = t_r * t_r;
        err_c0 = std::max(err_c0, std::abs(z_s_squared(to2, tr2, 1e-10) / std::min(to2, tr2) - 1));
    }
    const double est_o = 0.4, est_r = 0.3, se_o = 0.15, se_r = 0.12;
    for (double shrink = 1.0; shrink >= 1e-9; shrink /= 10) {
        const double so = se_o * shrink;
        const TestPair a{est_o / so, est_r / se_r, std::pow(so / se_r, 2)};
        err_so = std::abs(sceptical_p_two_sided(a) / two_sided_p_from_t(a.t_r) - 1);

        const double sr = se_r * shrink;
        const double t_o = est_o / se_o;
        const double z2 = z_s_squared(t_o * t_o, std::pow(est_r / sr, 2), std::pow(se_o / sr, 2));
        const double zm = matthews_limit_z_sq(t_o * t_o, std::pow(est_r / est_o, 2));
        err_sr = std::abs(z2 / zm - 1);
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "relative error %.3g", err_c0);
    cr.check("limit c -> 0 gives min(t_o^2, t_r^2)", err_c0 <= 1e-5, buf);
    std::snprintf(buf, sizeof buf, "relative error %.3g", err_so);
    cr.check("limit sigma_o -> 0 gives p_S = p_r", err_so <= 1e-5, buf);
    std::snprintf(buf, sizeof buf, "relative error %.3g", err_sr);
    cr.check("limit sigma_r -> 0 gives Matthews limit", err_sr <= 1e-5, buf);

    // Analytic power against Monte Carlo.
    struct Spot {
        double p_o, c;
        DesignPrior prior;
    };
    const Spot spots[] = {{0.001, 1.0, DesignPrior::point},
                          {0.005, 2.0, DesignPrior::normal},
                          {0.0001, 0.5, DesignPrior::normal}};
    std::normal_distribution<double> norm;
    constexpr int draws = 400000;
    for (const auto& s : spots) {
        DesignQuery q;
        q.t_o = t_from_two_sided_p(s.p_o);
        q.c = s.c;
        q.prior = s.prior;
        q.target = DesignTarget::success;
        const double analytic = power(q);
        const double z2 = std::pow(z_crit(q.alpha), 2);
        long hits = 0;
        for (int i = 0; i < draws; ++i) {
            const double theta = s.prior == DesignPrior::point ? q.t_o : q.t_o + norm(gen);
            const double t_r = std::sqrt(s.c) * theta + norm(gen);
            hits += z_s_squared(q.t_o * q.t_o, t_r * t_r, s.c) >= z2;
        }
        const double mc = static_cast<double>(hits) / draws;
        const double mcse = std::sqrt(mc * (1 - mc) / draws);
        char name[96], detail[128];
        std::snprintf(name, sizeof name, "power MC p_o=%g c=%g %s", s.p_o, s.c,
                      s.prior == DesignPrior::point ? "point" : "normal");
        std::snprintf(detail, sizeof detail, "analytic %.5f, MC %.5f, 3 MCSE %.5f", analytic, mc,
                      3 * mcse);
        cr.check(name, std::abs(analytic - mc) <= 3 * mcse, detail);
    }
    return cr.finish("property suites");
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::function<bool()>> criteria{criterion_1, criterion_2, criterion_3,
                                                      criterion_4, criterion_5, criterion_6,
                                                      criterion_7, criterion_8, criterion_9};
    const std::string which = argc > 1 ? argv[1] : "all";
    bool ok = true;
    try {
        if (which == "all") {
            for (const auto& run : criteria) ok = run() && ok;
        } else {
            const int n = std::stoi(which);
            if (n < 1 || n > static_cast<int>(criteria.size())) {
                std::fprintf(stderr, "usage: acceptance <1-9|all>\n");
                return 2;
            }
            ok = criteria[n - 1]();
        }
    } catch (const std::exception& e) {
        std::printf("FAIL error: %s\n", e.what());
        return 1;
    }
    return ok ? 0 : 1;
}
