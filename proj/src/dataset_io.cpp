#include "gridbench/dataset_io.hpp"

#include <fstream>

#include "gridbench/rng.hpp"
#include "gridbench/taxonomy.hpp"

namespace gridbench {

namespace fs = std::filesystem;
using nlohmann::json;

json grid_to_json(const Grid& grid) {
    json rows = json::array();
    for (int r = 0; r < grid.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < grid.cols(); ++c) row.push_back(int(grid.at(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Grid grid_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("grid must be a non-empty array");
    std::vector<std::vector<int>> rows;
    for (const auto& jr : j) {
        if (!jr.is_array() || jr.empty()) throw ParseError("grid row must be a non-empty array");
        std::vector<int> row;
        for (const auto& cell : jr) {
            if (!cell.is_number_integer()) throw ParseError("grid cell must be an integer");
            row.push_back(cell.get<int>());
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw ParseError("ragged grid rows");
        }
        rows.push_back(std::move(row));
    }
    return Grid::from_rows(rows);  // throws InvariantViolation on bad cells/dims
}

std::string grid_checksum(const Grid& grid) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(grid.to_string())));
    return buf;
}

namespace {

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for write: " + path.string());
    out << text;
    if (!out) throw IoError("write failed: " + path.string());
}

std::string episode_to_canonical_json(const Episode& ep) {
    json doc;
    json train = json::array();
    for (const auto& [in, out] : ep.train_pairs) {
        train.push_back({{"input", grid_to_json(in)}, {"output", grid_to_json(out)}});
    }
    doc["train"] = std::move(train);
    doc["test"] = json::array({{{"input", grid_to_json(ep.test_input)}}});
    return doc.dump() + "\n";
}

}  // namespace

fs::path write_episode(const Episode& episode, const fs::path& root) {
    const fs::path dir = root / "episodes";
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
    const fs::path path = dir / (episode.episode_id() + ".json");
    write_text(path, episode_to_canonical_json(episode));
    return path;
}

Episode read_episode(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    if (!doc.contains("train") || !doc.contains("test")) {
        throw ParseError(path.string() + ": missing train/test sections");
    }
    Episode ep;
    ep.task_id = path.stem().string();
    // Recover (task_id, value, index) from the "-vNN-iNNNN" id suffix so
    // episode_id() round-trips through disk.
    {
        const std::string stem = ep.task_id;
        int value = 0, index = 0;
        const auto vi = stem.rfind("-v");
        if (vi != std::string::npos &&
            std::sscanf(stem.c_str() + vi, "-v%d-i%d", &value, &index) == 2) {
            ep.task_id = stem.substr(0, vi);
            ep.variable_value = value;
            ep.index = index;
        }
    }
    for (const auto& pair : doc["train"]) {
        ep.train_pairs.emplace_back(grid_from_json(pair.at("input")),
                                    grid_from_json(pair.at("output")));
    }
    if (!doc["test"].is_array() || doc["test"].size() != 1) {
        throw ParseError(path.string() + ": test section must hold one entry");
    }
    ep.test_input = grid_from_json(doc["test"][0].at("input"));
    return ep;
}

namespace {

json row_to_json(const ManifestRow& row) {
    return json{{"episode_id", row.episode_id},
                {"task_id", row.task_id},
                {"level", row.level},
                {"family", row.family},
                {"variant", row.variant},
                {"variable_name", row.variable_name},
                {"variable_value", row.variable_value},
                {"seed", row.seed},
                {"path", row.path},
                {"answer_checksum", row.answer_checksum}};
}

ManifestRow row_from_json(const json& j) {
    ManifestRow row;
    row.episode_id = j.at("episode_id").get<std::string>();
    row.task_id = j.at("task_id").get<std::string>();
    row.level = j.at("level").get<std::string>();
    row.family = j.at("family").get<std::string>();
    row.variant = j.at("variant").get<std::string>();
    row.variable_name = j.at("variable_name").get<std::string>();
    row.variable_value = j.at("variable_value").get<int>();
    row.seed = j.at("seed").get<std::uint64_t>();
    row.path = j.at("path").get<std::string>();
    row.answer_checksum = j.at("answer_checksum").get<std::string>();
    return row;
}

}  // namespace

DatasetWriteResult write_dataset(const fs::path& root, const BudgetConfig& config,
                                 std::uint64_t master_seed, int n_train) {
    std::error_code ec;
    fs::create_directories(root, ec);
    if (ec) throw IoError("cannot create " + root.string() + ": " + ec.message());

    DatasetWriteResult result;
    result.manifest.header.master_seed = master_seed;
    result.manifest.header.scale = config.scale;
    result.manifest.header.n_train = n_train;
    {
        std::string cfg = "scale=" + std::to_string(config.scale) +
                          ";n_train=" + std::to_string(n_train);
        char buf[17];
        std::snprintf(buf, sizeof(buf), "%016llx",
                      static_cast<unsigned long long>(fnv1a64(cfg)));
        result.manifest.header.config_hash = buf;
    }

    std::ofstream answers(root / "answers.jsonl", std::ios::binary);
    if (!answers) throw IoError("cannot open answers.jsonl for write");

    result.summary = generate_dataset(config, master_seed, n_train, [&](const Episode& ep) {
        const fs::path path = write_episode(ep, root);
        const TaskSpec& task = task_by_id(ep.task_id);
        ManifestRow row;
        row.episode_id = ep.episode_id();
        row.task_id = task.task_id;
        row.level = to_string(task.level());
        row.family = to_string(task.family);
        row.variant = task.variant;
        row.variable_name = task.variable.name;
        row.variable_value = ep.variable_value;
        row.seed = ep.derived_seed;
        row.path = fs::relative(path, root).generic_string();
        row.answer_checksum = grid_checksum(ep.test_output);
        result.manifest.rows.push_back(row);

        answers << json{{"episode_id", row.episode_id},
                        {"test_output", grid_to_json(ep.test_output)}}
                       .dump()
                << "\n";
    });
    if (!answers) throw IoError("write failed: answers.jsonl");
    answers.close();

    std::ofstream manifest(root / "manifest.jsonl", std::ios::binary);
    if (!manifest) throw IoError("cannot open manifest.jsonl for write");
    manifest << json{{"type", "manifest"},
                     {"format_version", 1},
                     {"master_seed", master_seed},
                     {"scale", config.scale},
                     {"n_train", n_train},
                     {"config_hash", result.manifest.header.config_hash}}
                    .dump()
             << "\n";
    for (const auto& row : result.manifest.rows) {
        manifest << row_to_json(row).dump() << "\n";
    }
    if (!manifest) throw IoError("write failed: manifest.jsonl");
    return result;
}

Manifest load_manifest(const fs::path& root) {
    std::ifstream in(root / "manifest.jsonl", std::ios::binary);
    if (!in) throw IoError("cannot open manifest.jsonl under " + root.string());
    Manifest manifest;
    std::string line;
    bool first = true;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            throw ParseError("manifest.jsonl line " + std::to_string(lineno) + ": " +
                             e.what());
        }
        if (first) {
            first = false;
            if (j.value("type", "") == "manifest") {
                manifest.header.master_seed = j.value("master_seed", std::uint64_t{0});
                manifest.header.scale = j.value("scale", 1.0);
                manifest.header.n_train = j.value("n_train", kDefaultTrainPairs);
                manifest.header.config_hash = j.value("config_hash", "");
                continue;
            }
        }
        manifest.rows.push_back(row_from_json(j));
    }
    return manifest;
}

std::map<std::string, Grid> load_answers(const fs::path& root) {
    std::ifstream in(root / "answers.jsonl", std::ios::binary);
    if (!in) throw IoError("cannot open answers.jsonl under " + root.string());
    std::map<std::string, Grid> answers;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            throw ParseError("answers.jsonl line " + std::to_string(lineno) + ": " +
                             e.what());
        }
        answers.emplace(j.at("episode_id").get<std::string>(),
                        grid_from_json(j.at("test_output")));
    }
    return answers;
}

}  // namespace gridbench
