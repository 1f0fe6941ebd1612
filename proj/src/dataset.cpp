#include "repsucc/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <string_view>

#include "repsucc/design.hpp"
#include "repsucc/distributions.hpp"
#include "repsucc/errors.hpp"
#include "repsucc/sceptical.hpp"

namespace repsucc {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (ch == '"') {
                quoted = false;
            } else {
                field += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.emplace_back(trim(field));
            field.clear();
        } else {
            field += ch;
        }
    }
    fields.emplace_back(trim(field));
    return fields;
}

template <class T>
std::optional<T> parse_number(std::string_view text) {
    T value{};
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        return std::nullopt;
    }
    return value;
}

}  // namespace

double fisher_z(double rho) {
    if (!(std::abs(rho) < 1.0)) {
        throw DomainError("fisher_z: correlation must satisfy |rho| < 1");
    }
    return std::atanh(rho);
}

void validate_row(const RawStudyRow& row) {
    if (row.n_o <= 3 || row.n_r <= 3) {
        throw InputError("sample sizes must exceed 3");
    }
    if (!(std::abs(row.r_o) < 1.0) || !(std::abs(row.r_r) < 1.0)) {
        throw InputError("correlations must satisfy |r| < 1");
    }
}

AnalyzedStudy analyze_row(const RawStudyRow& row, double alpha) {
    validate_row(row);
    AnalyzedStudy s;
    s.row = row;
    s.theta_o = fisher_z(row.r_o);
    s.theta_r = fisher_z(row.r_r);
    const double eff_o = static_cast<double>(row.n_o - 3);
    const double eff_r = static_cast<double>(row.n_r - 3);
    s.se_o = 1.0 / std::sqrt(eff_o);
    s.se_r = 1.0 / std::sqrt(eff_r);
    s.t_o = s.theta_o / s.se_o;
    s.t_r = s.theta_r / s.se_r;
    s.c = eff_r / eff_o;
    s.p_o = two_sided_p_from_t(s.t_o);
    s.p_r = two_sided_p_from_t(s.t_r);
    s.p_s = sceptical_p_two_sided({s.t_o, s.t_r, s.c});

    DesignQuery q;
    q.t_o = s.t_o;
    q.c = s.c;
    q.alpha = alpha;
    q.sided = Sided::two;
    q.prior = DesignPrior::normal;
    q.target = DesignTarget::success;
    s.power_success = power_replication_success(q);

    s.original_significant = s.p_o <= alpha;
    s.replication_significant = s.p_r <= alpha;
    s.replication_success = s.p_s <= alpha;
    return s;
}

DatasetAnalysis analyze_dataset(const std::vector<RawStudyRow>& rows, double alpha,
                                const std::vector<double>& thresholds) {
    if (rows.empty()) {
        throw InputError("dataset contains no rows");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw DomainError("alpha must lie in (0, 1)");
    }
    DatasetAnalysis out;
    out.studies.reserve(rows.size());
    for (const auto& row : rows) {
        try {
            out.studies.push_back(analyze_row(row, alpha));
        } catch (const InputError& e) {
            out.rejected.push_back({row.study_id, e.what()});
        }
    }
    std::sort(out.studies.begin(), out.studies.end(),
              [](const AnalyzedStudy& a, const AnalyzedStudy& b) {
                  if (a.p_s != b.p_s) {
                      return a.p_s < b.p_s;
                  }
                  return a.row.study_id < b.row.study_id;
              });

    auto& sum = out.summary;
    sum.alpha = alpha;
    sum.analyzed = out.studies.size();
    for (const auto& s : out.studies) {
        if (s.original_significant) {
            ++sum.original_significant;
            if (s.replication_significant) {
                ++sum.replication_significant;
            }
        } else {
            ++sum.original_not_significant;
        }
        if (s.replication_success) {
            ++sum.replication_success;
        }
    }
    for (const double t : thresholds) {
        const auto n = std::count_if(out.studies.begin(), out.studies.end(),
                                     [t](const AnalyzedStudy& s) { return s.p_s <= t; });
        sum.success_at.push_back({t, static_cast<std::size_t>(n)});
    }
    return out;
}

ParsedDataset parse_dataset_csv(std::istream& in) {
    std::string line;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        if (!trim(line).empty()) {
            header = split_csv_line(line);
            break;
        }
    }
    if (header.empty()) {
        throw InputError("dataset CSV is empty");
    }
    // Strip a UTF-8 byte order mark.
    if (header[0].starts_with("\xEF\xBB\xBF")) {
        header[0].erase(0, 3);
    }
    auto column = [&header](std::string_view name) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) {
            throw InputError("dataset CSV is missing column '" + std::string(name) + "'");
        }
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t id_col = column("study_id");
    const std::size_t no_col = column("n_o");
    const std::size_t ro_col = column("r_o");
    const std::size_t nr_col = column("n_r");
    const std::size_t rr_col = column("r_r");
    const std::size_t needed = std::max({id_col, no_col, ro_col, nr_col, rr_col}) + 1;

    ParsedDataset out;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        const auto fields = split_csv_line(line);
        const std::string id =
            id_col < fields.size() && !fields[id_col].empty() ? fields[id_col]
                                                              : "line " + std::to_string(line_no);
        if (fields.size() < needed) {
            out.rejected.push_back({id, "too few columns"});
            continue;
        }
        const auto n_o = parse_number<long>(fields[no_col]);
        const auto r_o = parse_number<double>(fields[ro_col]);
        const auto n_r = parse_number<long>(fields[nr_col]);
        const auto r_r = parse_number<double>(fields[rr_col]);
        if (!n_o || !r_o || !n_r || !r_r) {
            out.rejected.push_back({id, "non-numeric field"});
            continue;
        }
        out.rows.push_back({id, *n_o, *r_o, *n_r, *r_r});
    }
    return out;
}

ParsedDataset load_dataset_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open dataset file '" + path + "'");
    }
    return parse_dataset_csv(in);
}

}  // namespace repsucc
