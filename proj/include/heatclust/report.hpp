#pragma once

#include <json.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "heatclust/spectral.hpp"

namespace heatclust {

// Everything cmd_cluster reports about a run. Timings are informational and
// excluded from the determinism guarantees.
struct RunReport {
    double r_hat = 0.0;
    Index r_hat_index = -1;  // 0-based grid index; -1 when no curve was evaluated
    Index beta0 = 0;
    Index n = 0;
    std::vector<Index> cluster_sizes;
    std::vector<double> unit_eigenvalues;
    bool elbow_warning = false;
    Index ambiguous_count = 0;
    std::vector<std::string> warnings;
    nlohmann::ordered_json config;
    std::map<std::string, double> timings_ms;
};

inline RunReport make_report(const ClusterRun& run, Index n, nlohmann::ordered_json config) {
    RunReport report;
    report.r_hat = run.result.r_hat;
    report.r_hat_index = run.r_hat_index;
    report.beta0 = run.result.beta0;
    report.n = n;
    report.cluster_sizes.assign(static_cast<std::size_t>(run.result.beta0), 0);
    for (int label : run.result.labels) ++report.cluster_sizes[static_cast<std::size_t>(label - 1)];
    report.unit_eigenvalues.assign(run.unit_eigenvalues.begin(), run.unit_eigenvalues.end());
    report.elbow_warning = run.result.no_elbow_warning;
    report.ambiguous_count = static_cast<Index>(run.result.ambiguous_points.size());
    report.warnings = run.result.warnings;
    report.config = std::move(config);
    return report;
}

inline nlohmann::ordered_json to_json(const RunReport& report) {
    nlohmann::ordered_json j;
    j["r_hat"] = report.r_hat;
    j["r_hat_index"] = report.r_hat_index;
    j["beta0"] = report.beta0;
    j["n"] = report.n;
    j["cluster_sizes"] = report.cluster_sizes;
    j["unit_eigenvalues"] = report.unit_eigenvalues;
    j["elbow_warning"] = report.elbow_warning;
    j["ambiguous_count"] = report.ambiguous_count;
    j["warnings"] = report.warnings;
    j["config"] = report.config;
    j["timings_ms"] = report.timings_ms;
    return j;
}

}  // namespace heatclust
