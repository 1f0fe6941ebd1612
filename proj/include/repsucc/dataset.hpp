#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace repsucc {

/// One replication-project row in correlation form.
struct RawStudyRow {
    std::string study_id;
    long n_o = 0;
    double r_o = 0.0;
    long n_r = 0;
    double r_r = 0.0;
};

struct AnalyzedStudy {
    RawStudyRow row;
    double theta_o = 0.0;
    double theta_r = 0.0;
    double se_o = 0.0;
    double se_r = 0.0;
    double t_o = 0.0;
    double t_r = 0.0;
    double c = 0.0;
    double p_o = 1.0;
    double p_r = 1.0;
    double p_s = 1.0;
    /// Predictive (normal design prior) two-sided power for replication
    /// success at the analysis level.
    double power_success = 0.0;
    bool original_significant = false;
    bool replication_significant = false;
    bool replication_success = false;
};

struct RejectedRow {
    std::string study_id;
    std::string reason;
};

struct ThresholdCount {
    double threshold = 0.0;
    std::size_t count = 0;
};

struct DatasetSummary {
    double alpha = 0.05;
    std::size_t analyzed = 0;
    std::size_t original_significant = 0;
    std::size_t original_not_significant = 0;
    /// Significant replications among significant originals.
    std::size_t replication_significant = 0;
    std::size_t replication_success = 0;
    /// Number of studies with p_s <= threshold, for each entry of the
    /// threshold list passed to analyze_dataset.
    std::vector<ThresholdCount> success_at;
};

struct DatasetAnalysis {
    /// Ascending in p_s, ties broken by study_id.
    std::vector<AnalyzedStudy> studies;
    std::vector<RejectedRow> rejected;
    DatasetSummary summary;
};

inline const std::vector<double> kDefaultSuccessThresholds{0.005, 0.01, 0.05, 0.10, 0.15};

/// Fisher's z-transform artanh(rho). Throws DomainError unless |rho| < 1.
double fisher_z(double rho);

/// Throws InputError naming the violated invariant (n <= 3, |r| >= 1, ...).
void validate_row(const RawStudyRow& row);

/// Standard errors 1/sqrt(n - 3) on the Fisher-z scale, normal p-values,
/// sceptical p-value with c = (n_r - 3)/(n_o - 3) and predictive power.
AnalyzedStudy analyze_row(const RawStudyRow& row, double alpha = 0.05);

/// Analyzes every valid row and ranks by p_s. Invalid rows are skipped and
/// listed in `rejected`. Throws InputError on an empty input.
DatasetAnalysis analyze_dataset(const std::vector<RawStudyRow>& rows, double alpha = 0.05,
                                const std::vector<double>& thresholds = kDefaultSuccessThresholds);

struct ParsedDataset {
    std::vector<RawStudyRow> rows;
    std::vector<RejectedRow> rejected;
};

/// Reads CSV with header `study_id,n_o,r_o,n_r,r_r` (columns in any order,
/// extra columns ignored). Lines that fail to parse are reported in
/// `rejected`; a missing header or column throws InputError.
ParsedDataset parse_dataset_csv(std::istream& in);
ParsedDataset load_dataset_csv(const std::string& path);

}  // namespace repsucc
