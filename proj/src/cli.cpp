#include "repsucc/cli.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "repsucc/credibility.hpp"
#include "repsucc/dataset.hpp"
#include "repsucc/design.hpp"
#include "repsucc/distributions.hpp"
#include "repsucc/errors.hpp"
#include "repsucc/nullsim.hpp"
#include "repsucc/report.hpp"
#include "repsucc/sceptical.hpp"

namespace repsucc::cli {

namespace {

struct CommonOptions {
    double alpha = 0.05;
    int sided = 2;
    std::string format = "table";

    Sided sidedness() const { return sided == 1 ? Sided::one : Sided::two; }
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--alpha", opts.alpha, "Significance level (one-sided level when --sided 1)")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--sided", opts.sided, "1 or 2")->check(CLI::IsMember({1, 2}));
    cmd->add_option("--format", opts.format, "table, json or csv")
        ->check(CLI::IsMember({"table", "json", "csv"}));
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> grid;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.find_first_not_of(" \t") == std::string::npos) {
            continue;
        }
        try {
            std::size_t used = 0;
            grid.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) {
                throw std::invalid_argument(item);
            }
        } catch (const std::logic_error&) {
            throw CLI::ValidationError("grid", "not a number: '" + item + "'");
        }
    }
    return grid;
}

// ---------------------------------------------------------------------------
// analyze

struct AnalyzeOptions {
    CommonOptions common;
    std::optional<double> t_o, t_r, c;
    std::optional<double> est_o, se_o, est_r, se_r;
};

int cmd_analyze(const AnalyzeOptions& o, std::ostream& out) {
    TestPair pair;
    const bool t_form = o.t_o || o.t_r || o.c;
    const bool est_form = o.est_o || o.se_o || o.est_r || o.se_r;
    if (t_form == est_form) {
        throw CLI::ValidationError("analyze",
                                   "give either --to/--tr/--c or --est-o/--se-o/--est-r/--se-r");
    }
    if (t_form) {
        if (!o.t_o || !o.t_r || !o.c) {
            throw CLI::ValidationError("analyze", "--to, --tr and --c are all required");
        }
        pair = {*o.t_o, *o.t_r, *o.c};
    } else {
        if (!o.est_o || !o.se_o || !o.est_r || !o.se_r) {
            throw CLI::ValidationError("analyze",
                                       "--est-o, --se-o, --est-r and --se-r are all required");
        }
        if (!(*o.se_o > 0.0) || !(*o.se_r > 0.0)) {
            throw DomainError("standard errors must be positive");
        }
        pair = {*o.est_o / *o.se_o, *o.est_r / *o.se_r, (*o.se_o * *o.se_o) / (*o.se_r * *o.se_r)};
    }
    const auto res = sceptical_outcome(pair);
    const bool one = o.common.sidedness() == Sided::one;
    const double p_o = one ? std_normal_sf(std::abs(pair.t_o)) : 2.0 * std_normal_sf(std::abs(pair.t_o));
    const double oriented_r = std::signbit(pair.t_o) ? -pair.t_r : pair.t_r;
    const double p_r = one ? std_normal_sf(oriented_r) : 2.0 * std_normal_sf(std::abs(pair.t_r));

    Report r;
    r.single = true;
    r.columns = {"t_o", "t_r", "c", "sided", "p_o", "p_r", "z_s_squared", "p_s", "direction_agrees"};
    r.add_row({pair.t_o, pair.t_r, pair.c, static_cast<long long>(o.common.sided), p_o, p_r,
               res.z_s_squared, one ? res.p_one_sided : res.p_two_sided, res.direction_agrees});
    render(r, parse_output_format(o.common.format), out);
    return 0;
}

// ---------------------------------------------------------------------------
// credibility

struct StudyFlags {
    std::optional<double> est, se, lower, upper;
};

struct CredibilityOptions {
    CommonOptions common;
    StudyFlags original, replication;
    double level = 0.95;
};

StudySummary resolve_study(const StudyFlags& f, double level, const char* which) {
    const bool has_ci = f.lower || f.upper;
    if (has_ci) {
        if (!f.lower || !f.upper) {
            throw CLI::ValidationError(which, "both interval limits are required");
        }
        StudySummary s = summary_from_interval({*f.lower, *f.upper, level});
        if (f.est) {
            s.estimate = *f.est;
        }
        return s;
    }
    if (!f.est || !f.se) {
        throw CLI::ValidationError(which, "give an estimate with its standard error or an interval");
    }
    if (!(*f.se > 0.0)) {
        throw DomainError("standard errors must be positive");
    }
    return {*f.est, *f.se};
}

int cmd_credibility(const CredibilityOptions& o, std::ostream& out) {
    const StudySummary orig = resolve_study(o.original, o.level, "original");
    const StudySummary repl = resolve_study(o.replication, o.level, "replication");
    const auto res = replication_success_at_level(orig, repl, o.common.alpha, o.common.sidedness());

    Report r;
    r.single = true;
    r.columns = {"alpha", "sided", "t_o", "t_r", "scepticism_limit", "sceptical_prior_variance",
                 "t_box", "p_box", "success"};
    r.add_row({o.common.alpha, static_cast<long long>(o.common.sided), orig.test_statistic(),
               repl.test_statistic(), res.scepticism_limit, res.sceptical_prior_variance,
               res.box_statistic, res.box_tail_probability, res.success});
    render(r, parse_output_format(o.common.format), out);
    return 0;
}

// ---------------------------------------------------------------------------
// power / samplesize

struct DesignOptions {
    CommonOptions common;
    std::string prior = "point";
    std::string target = "significance";
    std::optional<double> p_o, t_o;
    double c = 1.0;
    double power = 0.8;
    std::string curve;
};

DesignQuery make_query(const DesignOptions& o) {
    DesignQuery q;
    q.alpha = o.common.alpha;
    q.sided = o.common.sidedness();
    q.prior = o.prior == "normal" ? DesignPrior::normal : DesignPrior::point;
    q.target = o.target == "success" ? DesignTarget::success : DesignTarget::significance;
    q.c = o.c;
    return q;
}

std::vector<double> resolve_grid(const DesignOptions& o) {
    if (!o.curve.empty()) {
        if (o.p_o || o.t_o) {
            throw CLI::ValidationError("--curve", "cannot be combined with --po or --to");
        }
        return parse_grid(o.curve);
    }
    if (o.p_o.has_value() == o.t_o.has_value()) {
        throw CLI::ValidationError("design", "give exactly one of --po, --to or --curve");
    }
    return {};
}

Report curve_report(const std::vector<CurveRow>& rows) {
    Report r;
    r.columns = {"p_o", "value", "status"};
    for (const auto& row : rows) {
        r.add_row({row.p_o, row.value ? Cell{*row.value} : Cell{},
                   std::string(row.status())});
    }
    return r;
}

int cmd_power(const DesignOptions& o, std::ostream& out) {
    DesignQuery q = make_query(o);
    const auto format = parse_output_format(o.common.format);
    const auto grid = resolve_grid(o);
    if (!o.curve.empty()) {
        render(curve_report(power_curve(grid, q)), format, out);
        return 0;
    }
    q.t_o = o.t_o ? *o.t_o : t_from_two_sided_p(*o.p_o);
    Report r;
    r.single = true;
    r.columns = {"p_o", "t_o", "c", "alpha", "sided", "prior", "target", "power"};
    r.add_row({two_sided_p_from_t(q.t_o), q.t_o, q.c, q.alpha,
               static_cast<long long>(o.common.sided), o.prior, o.target, power(q)});
    render(r, format, out);
    return 0;
}

int cmd_samplesize(const DesignOptions& o, std::ostream& out) {
    DesignQuery q = make_query(o);
    const auto format = parse_output_format(o.common.format);
    const auto grid = resolve_grid(o);
    if (!o.curve.empty()) {
        render(curve_report(sample_size_curve(grid, q, o.power)), format, out);
        return 0;
    }
    q.t_o = o.t_o ? *o.t_o : t_from_two_sided_p(*o.p_o);
    const auto res = required_relative_sample_size(q, o.power);
    Report r;
    r.single = true;
    r.columns = {"p_o",    "t_o",          "alpha",      "sided", "prior",
                 "target", "target_power", "c_required", "power_at_c", "status"};
    r.add_row({two_sided_p_from_t(q.t_o), q.t_o, q.alpha, static_cast<long long>(o.common.sided),
               o.prior, o.target, o.power,
               res.c_required ? Cell{*res.c_required} : Cell{}, res.power_at_c,
               std::string(res.achievable() ? "ok" : "not_achievable")});
    render(r, format, out);
    return 0;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateOptions {
    std::string format = "table";
    double c = 1.0;
    std::uint64_t n = 1'000'000;
    std::uint64_t seed = 0;
    std::string alphas = "0.05";
    std::size_t bins = 200;
    unsigned threads = 0;
    std::string histogram_path;
};

void write_histogram_csv(const Histogram& h, std::ostream& out) {
    out << "bin_lo,bin_hi,count\n";
    for (std::size_t b = 0; b < h.counts.size(); ++b) {
        out << format_full(h.edges[b]) << ',' << format_full(h.edges[b + 1]) << ','
            << h.counts[b] << '\n';
    }
}

int cmd_simulate(const SimulateOptions& o, std::ostream& out) {
    NullSimConfig cfg;
    cfg.c = o.c;
    cfg.n_samples = o.n;
    cfg.seed = o.seed;
    cfg.alpha_grid = parse_grid(o.alphas);
    cfg.histogram_bins = o.bins;
    cfg.workers = o.threads;
    const auto report = simulate_null(cfg);

    if (!o.histogram_path.empty()) {
        std::ofstream file(o.histogram_path);
        if (!file) {
            throw InputError("cannot write histogram to '" + o.histogram_path + "'");
        }
        write_histogram_csv(report.histogram, file);
    }

    const auto format = parse_output_format(o.format);
    if (format == OutputFormat::csv) {
        write_histogram_csv(report.histogram, out);
        return 0;
    }
    if (format == OutputFormat::json) {
        nlohmann::ordered_json j;
        j["c"] = report.c;
        j["n_samples"] = report.n_samples;
        j["seed"] = report.seed;
        j["tail_estimates"] = nlohmann::ordered_json::array();
        for (const auto& t : report.tail_estimates) {
            j["tail_estimates"].push_back({{"alpha", t.alpha},
                                           {"count", t.count},
                                           {"estimate", t.estimate},
                                           {"standard_error", t.standard_error},
                                           {"bound", null_tail_bound(t.alpha)}});
        }
        out << j.dump(2) << '\n';
        return 0;
    }
    Report r;
    r.columns = {"alpha", "count", "estimate", "standard_error", "bound"};
    for (const auto& t : report.tail_estimates) {
        r.add_row({t.alpha, static_cast<long long>(t.count), t.estimate, t.standard_error,
                   null_tail_bound(t.alpha)});
    }
    out << "c = " << format_4sig(report.c) << ", n = " << report.n_samples
        << ", seed = " << report.seed << '\n';
    render(r, format, out);
    return 0;
}

// ---------------------------------------------------------------------------
// dataset

struct DatasetOptions {
    CommonOptions common;
    std::string input;
};

int cmd_dataset(const DatasetOptions& o, std::ostream& out, std::ostream& err) {
    if (o.common.sided != 2) {
        throw CLI::ValidationError("--sided", "dataset analysis is two-sided only");
    }
    const auto parsed = load_dataset_csv(o.input);
    auto analysis = analyze_dataset(parsed.rows, o.common.alpha);
    analysis.rejected.insert(analysis.rejected.begin(), parsed.rejected.begin(),
                             parsed.rejected.end());
    for (const auto& rej : analysis.rejected) {
        err << "warning: skipped row " << rej.study_id << ": " << rej.reason << '\n';
    }

    Report r;
    r.columns = {"study_id", "n_o", "r_o", "p_o", "n_r", "r_r", "p_r", "c", "power_success",
                 "p_s", "success"};
    for (const auto& s : analysis.studies) {
        r.add_row({s.row.study_id, static_cast<long long>(s.row.n_o), s.row.r_o, s.p_o,
                   static_cast<long long>(s.row.n_r), s.row.r_r, s.p_r, s.c, s.power_success,
                   s.p_s, s.replication_success});
    }
    const auto format = parse_output_format(o.common.format);
    if (format == OutputFormat::json) {
        std::ostringstream rows;
        render(r, format, rows);
        const auto& sum = analysis.summary;
        nlohmann::ordered_json j;
        j["summary"] = {{"alpha", sum.alpha},
                        {"analyzed", sum.analyzed},
                        {"original_significant", sum.original_significant},
                        {"original_not_significant", sum.original_not_significant},
                        {"replication_significant", sum.replication_significant},
                        {"replication_success", sum.replication_success}};
        j["summary"]["success_at"] = nlohmann::ordered_json::array();
        for (const auto& t : sum.success_at) {
            j["summary"]["success_at"].push_back({{"threshold", t.threshold}, {"count", t.count}});
        }
        j["studies"] = nlohmann::ordered_json::parse(rows.str());
        j["rejected"] = nlohmann::ordered_json::array();
        for (const auto& rej : analysis.rejected) {
            j["rejected"].push_back({{"study_id", rej.study_id}, {"reason", rej.reason}});
        }
        out << j.dump(2) << '\n';
        return 0;
    }
    render(r, format, out);
    if (format == OutputFormat::table) {
        const auto& sum = analysis.summary;
        out << '\n'
            << "analyzed: " << sum.analyzed << '\n'
            << "original significant: " << sum.original_significant << " (not significant: "
            << sum.original_not_significant << ")\n"
            << "significant replications among significant originals: "
            << sum.replication_significant << '\n'
            << "replication success at alpha = " << format_4sig(sum.alpha) << ": "
            << sum.replication_success << '\n';
        for (const auto& t : sum.success_at) {
            out << "p_s <= " << format_4sig(t.threshold) << ": " << t.count << '\n';
        }
    }
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Replication success: sceptical p-values, reverse-Bayes credibility, "
                 "power and sample size"};
    app.name("repsucc");
    app.require_subcommand(1);

    AnalyzeOptions analyze;
    auto* analyze_cmd = app.add_subcommand("analyze", "Sceptical p-value of a study pair");
    add_common(analyze_cmd, analyze.common);
    analyze_cmd->add_option("--to", analyze.t_o, "Original test statistic");
    analyze_cmd->add_option("--tr", analyze.t_r, "Replication test statistic");
    analyze_cmd->add_option("--c", analyze.c, "Variance ratio sigma_o^2 / sigma_r^2");
    analyze_cmd->add_option("--est-o", analyze.est_o, "Original estimate");
    analyze_cmd->add_option("--se-o", analyze.se_o, "Original standard error");
    analyze_cmd->add_option("--est-r", analyze.est_r, "Replication estimate");
    analyze_cmd->add_option("--se-r", analyze.se_r, "Replication standard error");

    CredibilityOptions cred;
    auto* cred_cmd =
        app.add_subcommand("credibility", "Box assessment against the sufficiently sceptical prior");
    add_common(cred_cmd, cred.common);
    cred_cmd->add_option("--est-o", cred.original.est, "Original estimate");
    cred_cmd->add_option("--se-o", cred.original.se, "Original standard error");
    cred_cmd->add_option("--lower-o", cred.original.lower, "Original interval lower limit");
    cred_cmd->add_option("--upper-o", cred.original.upper, "Original interval upper limit");
    cred_cmd->add_option("--est-r", cred.replication.est, "Replication estimate");
    cred_cmd->add_option("--se-r", cred.replication.se, "Replication standard error");
    cred_cmd->add_option("--lower-r", cred.replication.lower, "Replication interval lower limit");
    cred_cmd->add_option("--upper-r", cred.replication.upper, "Replication interval upper limit");
    cred_cmd->add_option("--level", cred.level, "Confidence level of the given intervals")
        ->check(CLI::Range(0.0, 1.0));

    DesignOptions pow;
    DesignOptions ss;
    auto add_design = [](CLI::App* cmd, DesignOptions& d) {
        add_common(cmd, d.common);
        cmd->add_option("--prior", d.prior, "point (conditional) or normal (predictive)")
            ->check(CLI::IsMember({"point", "normal"}));
        cmd->add_option("--target", d.target, "significance or success")
            ->check(CLI::IsMember({"significance", "success"}));
        cmd->add_option("--po", d.p_o, "Two-sided p-value of the original study")
            ->check(CLI::Range(0.0, 1.0));
        cmd->add_option("--to", d.t_o, "Original test statistic");
        cmd->add_option("--curve", d.curve, "Comma-separated grid of p_o values");
    };
    auto* power_cmd = app.add_subcommand("power", "Power of the replication study");
    add_design(power_cmd, pow);
    power_cmd->add_option("--c", pow.c, "Relative sample size n_r / n_o")
        ->check(CLI::PositiveNumber);
    auto* ss_cmd = app.add_subcommand("samplesize", "Required relative sample size n_r / n_o");
    add_design(ss_cmd, ss);
    ss_cmd->add_option("--power", ss.power, "Target power")->check(CLI::Range(0.0, 1.0));

    SimulateOptions sim;
    auto* sim_cmd = app.add_subcommand("simulate", "Null distribution of the sceptical p-value");
    sim_cmd->add_option("--c", sim.c, "Variance ratio")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--n", sim.n, "Number of draws")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--seed", sim.seed, "RNG seed")->required();
    sim_cmd->add_option("--alphas", sim.alphas, "Comma-separated levels for tail estimates");
    sim_cmd->add_option("--bins", sim.bins, "Histogram bins")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--threads", sim.threads, "Worker threads (0 = all cores)");
    sim_cmd->add_option("--histogram", sim.histogram_path, "Write the histogram CSV here");
    sim_cmd->add_option("--format", sim.format, "table, json or csv")
        ->check(CLI::IsMember({"table", "json", "csv"}));

    DatasetOptions data;
    auto* data_cmd = app.add_subcommand("dataset", "Batch analysis of correlation-form data");
    add_common(data_cmd, data.common);
    data_cmd->add_option("--input", data.input, "CSV with study_id,n_o,r_o,n_r,r_r")
        ->required();

    std::vector<const char*> argv{"repsucc"};
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        if (*analyze_cmd) return cmd_analyze(analyze, out);
        if (*cred_cmd) return cmd_credibility(cred, out);
        if (*power_cmd) return cmd_power(pow, out);
        if (*ss_cmd) return cmd_samplesize(ss, out);
        if (*sim_cmd) return cmd_simulate(sim, out);
        if (*data_cmd) return cmd_dataset(data, out, err);
        return 2;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        const CLI::App* sub = nullptr;
        for (const auto* cmd : app.get_subcommands()) {
            sub = cmd;
        }
        err << (sub ? sub->help() : app.help());
        return 2;
    } catch (const NotSignificant& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace repsucc::cli
