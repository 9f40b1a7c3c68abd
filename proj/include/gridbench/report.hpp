#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gridbench/dataset_io.hpp"
#include "gridbench/eval.hpp"

namespace gridbench {

// Human-readable matrix: one row per model, column groups = the four
// cognitive levels (three families each) plus per-level averages, then a
// per-task appendix in "(Accuracy [%] / Variance)" form and a directional
// move/symmetry breakdown. Percentages with two decimals.
std::string report_markdown(const std::vector<MetricsReport>& models);

// Machine output: raw fractions, full per-value stats.
nlohmann::json report_json(const std::vector<MetricsReport>& models);

// Complexity-curve rows: model_id,task_id,variable_value,accuracy.
std::string curves_csv(const std::vector<MetricsReport>& models);

struct ReportFiles {
    std::filesystem::path markdown;
    std::filesystem::path json;
    std::filesystem::path curves;
};

ReportFiles write_report(const std::vector<MetricsReport>& models,
                         const std::filesystem::path& out_dir);

}  // namespace gridbench
