#include "gridbench/report.hpp"

#include <cstdio>
#include <fstream>

#include "gridbench/taxonomy.hpp"

namespace gridbench {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string pct(double fraction) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", fraction * 100.0);
    return buf;
}

std::string var4(double variance) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", variance);
    return buf;
}

const std::array<Level, 4> kLevels = {Level::attribute, Level::spatial,
                                      Level::sequential, Level::conceptual};

std::vector<Family> families_of_level(Level level) {
    std::vector<Family> out;
    for (int f = 0; f < kFamilyCount; ++f) {
        if (level_of(Family(f)) == level) out.push_back(Family(f));
    }
    return out;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for write: " + path.string());
    out << text;
    if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace

std::string report_markdown(const std::vector<MetricsReport>& models) {
    std::string md = "# Evaluation report\n\n";
    md += "Accuracy values are percentages (exact-match rate, trials averaged "
          "first). Variance is the population variance of the per-value "
          "accuracies within a task, on raw fractions.\n\n";

    // Level x family matrix, one row per model.
    md += "## Accuracy by level and family\n\n";
    std::string head = "| Model |", rule = "| --- |";
    for (Level level : kLevels) {
        for (Family family : families_of_level(level)) {
            head += " " + to_string(family) + " |";
            rule += " ---: |";
        }
        head += " " + to_string(level) + " avg |";
        rule += " ---: |";
    }
    head += " overall |";
    rule += " ---: |";
    md += head + "\n" + rule + "\n";
    for (const auto& model : models) {
        std::string row = "| " + model.model_id + " |";
        for (Level level : kLevels) {
            for (Family family : families_of_level(level)) {
                auto it = model.per_family.find(to_string(family));
                row += it == model.per_family.end() ? " - |" : " " + pct(it->second) + " |";
            }
            auto it = model.per_level.find(to_string(level));
            row += it == model.per_level.end() ? " - |" : " " + pct(it->second) + " |";
        }
        row += " " + pct(model.overall) + " |";
        md += row + "\n";
    }

    // Per-task appendix: (Accuracy [%] / Variance) pairs.
    md += "\n## Per-task results (Accuracy [%] / Variance)\n\n";
    md += "| Task |";
    for (const auto& model : models) md += " " + model.model_id + " |";
    md += "\n| --- |";
    for (std::size_t i = 0; i < models.size(); ++i) md += " ---: |";
    md += "\n";
    for (const TaskSpec& task : catalog()) {
        std::string row = "| " + task.task_id + " |";
        bool any = false;
        for (const auto& model : models) {
            auto it = model.per_task.find(task.task_id);
            if (it == model.per_task.end()) {
                row += " - |";
            } else {
                any = true;
                row += " " + pct(it->second.mean_accuracy) + " / " +
                       var4(it->second.variance) + " |";
            }
        }
        if (any) md += row + "\n";
    }

    // Directional view over the move and symmetry variants.
    md += "\n## Directional breakdown (move / symmetry variants)\n\n";
    std::vector<const TaskSpec*> directional;
    for (Family family : {Family::move, Family::symmetry}) {
        for (const TaskSpec* task : tasks_of_family(family)) directional.push_back(task);
    }
    md += "| Model |";
    for (const TaskSpec* task : directional) md += " " + task->variant + " |";
    md += "\n| --- |";
    for (std::size_t i = 0; i < directional.size(); ++i) md += " ---: |";
    md += "\n";
    for (const auto& model : models) {
        std::string row = "| " + model.model_id + " |";
        for (const TaskSpec* task : directional) {
            auto it = model.per_task.find(task->task_id);
            row += it == model.per_task.end() ? " - |"
                                              : " " + pct(it->second.mean_accuracy) + " |";
        }
        md += row + "\n";
    }
    return md;
}

json report_json(const std::vector<MetricsReport>& models) {
    json out = json::array();
    for (const auto& model : models) {
        json per_task = json::object();
        for (const auto& [task_id, stats] : model.per_task) {
            json per_value = json::object();
            for (const auto& [value, vs] : stats.per_value) {
                per_value[std::to_string(value)] = {{"accuracy", vs.accuracy},
                                                    {"attempted", vs.attempted},
                                                    {"correct", vs.correct}};
            }
            per_task[task_id] = {{"mean_accuracy", stats.mean_accuracy},
                                 {"variance", stats.variance},
                                 {"per_value", std::move(per_value)}};
        }
        out.push_back({{"model_id", model.model_id},
                       {"overall", model.overall},
                       {"record_count", model.record_count},
                       {"per_level", model.per_level},
                       {"per_family", model.per_family},
                       {"per_task", std::move(per_task)},
                       {"variance_kind", "population"}});
    }
    return out;
}

std::string curves_csv(const std::vector<MetricsReport>& models) {
    std::string csv = "model_id,task_id,variable_value,accuracy\n";
    for (const auto& model : models) {
        for (const auto& [task_id, stats] : model.per_task) {
            for (const auto& [value, vs] : stats.per_value) {
                char buf[64];
                std::snprintf(buf, sizeof(buf), "%d,%.6f\n", value, vs.accuracy);
                csv += model.model_id + "," + task_id + "," + buf;
            }
        }
    }
    return csv;
}

ReportFiles write_report(const std::vector<MetricsReport>& models,
                         const fs::path& out_dir) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
    ReportFiles files{out_dir / "report.md", out_dir / "report.json",
                      out_dir / "curves.csv"};
    write_text(files.markdown, report_markdown(models));
    write_text(files.json, report_json(models).dump(2) + "\n");
    write_text(files.curves, curves_csv(models));
    return files;
}

}  // namespace gridbench
