#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gridbench/report.hpp"
#include "gridbench/taxonomy.hpp"

using namespace gridbench;
namespace fs = std::filesystem;

namespace {

// All-correct metrics over every catalog task, two values each.
MetricsReport uniform_report(const std::string& model_id, double accuracy) {
    MetricsReport report;
    report.model_id = model_id;
    for (const auto& task : catalog()) {
        TaskStats stats;
        for (int v : {task.variable.min, task.variable.max}) {
            stats.per_value[v] = ValueStats{3, int(3 * accuracy), accuracy};
        }
        stats.mean_accuracy = accuracy;
        stats.variance = 0.0;
        report.per_task[task.task_id] = stats;
        report.per_family[to_string(task.family)] = accuracy;
        report.per_level[to_string(task.level())] = accuracy;
    }
    report.overall = accuracy;
    report.record_count = int(catalog().size()) * 6;
    return report;
}

}  // namespace

TEST_CASE("markdown report reproduces the matrix shape") {
    const std::string md = report_markdown({uniform_report("oracle", 1.0)});

    // 4 level groups x 3 family columns + level averages + overall
    for (const char* col :
         {"size", "count", "shape", "attribute avg", "move", "rotation", "symmetry",
          "spatial avg", "categorization", "sort", "planning", "sequential avg",
          "gravity", "reflection", "expansion", "conceptual avg", "overall"}) {
        CAPTURE(col);
        CHECK(md.find(col) != std::string::npos);
    }

    // per-task (Accuracy [%] / Variance) pairs
    CHECK(md.find("(Accuracy [%] / Variance)") != std::string::npos);
    CHECK(md.find("| size.crop | 100.00 / 0.0000 |") != std::string::npos);

    // directional move/symmetry breakdown
    CHECK(md.find("Directional breakdown") != std::string::npos);
    for (const char* variant : {"up", "down", "left", "right", "upper_right",
                                "horizontal", "vertical", "diagonal"}) {
        CAPTURE(variant);
        CHECK(md.find(variant) != std::string::npos);
    }

    // population-variance convention stated in the header
    CHECK(md.find("population variance") != std::string::npos);

    // oracle row is all 100.00
    std::istringstream lines(md);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.rfind("| oracle |", 0) == 0) {
            CHECK(line.find("0.00 /") == std::string::npos);
            std::size_t cells = 0, pos = 0;
            while ((pos = line.find("100.00", pos)) != std::string::npos) {
                ++cells;
                pos += 6;
            }
            CHECK(cells == 17);  // 12 families + 4 level averages + overall
            break;
        }
    }
}

TEST_CASE("machine outputs carry raw fractions and full curves") {
    auto models = {uniform_report("a", 1.0), uniform_report("b", 0.5)};
    const auto j = report_json(models);
    REQUIRE(j.size() == 2);
    CHECK(j[0].at("overall").get<double>() == doctest::Approx(1.0));
    CHECK(j[1].at("per_task").at("move.up").at("mean_accuracy").get<double>() ==
          doctest::Approx(0.5));
    CHECK(j[0].at("variance_kind") == "population");

    const std::string csv = curves_csv(models);
    // header + (2 values per task) x tasks x 2 models
    const auto rows = std::count(csv.begin(), csv.end(), '\n');
    CHECK(rows == 1 + 2 * 2 * std::ptrdiff_t(catalog().size()));
    CHECK(csv.rfind("model_id,task_id,variable_value,accuracy\n", 0) == 0);
}

TEST_CASE("write_report emits the three files") {
    const fs::path dir = fs::temp_directory_path() / "gridbench_report";
    fs::remove_all(dir);
    const ReportFiles files = write_report({uniform_report("m", 0.75)}, dir);
    CHECK(fs::exists(files.markdown));
    CHECK(fs::exists(files.json));
    CHECK(fs::exists(files.curves));
    CHECK(fs::file_size(files.markdown) > 100);
    fs::remove_all(dir);
}
