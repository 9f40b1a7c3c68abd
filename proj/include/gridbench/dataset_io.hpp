#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gridbench/generator.hpp"
#include "gridbench/grid.hpp"

namespace gridbench {

nlohmann::json grid_to_json(const Grid& grid);
Grid grid_from_json(const nlohmann::json& j);

// FNV-1a over the canonical serialization, as 16 hex digits.
std::string grid_checksum(const Grid& grid);

struct ManifestRow {
    std::string episode_id;
    std::string task_id;
    std::string level;
    std::string family;
    std::string variant;
    std::string variable_name;
    int variable_value = 0;
    std::uint64_t seed = 0;
    std::string path;  // relative to the dataset root
    std::string answer_checksum;
};

struct ManifestHeader {
    std::uint64_t master_seed = 0;
    double scale = 1.0;
    int n_train = kDefaultTrainPairs;
    std::string config_hash;
};

struct Manifest {
    ManifestHeader header;
    std::vector<ManifestRow> rows;
};

// Writes the model-facing episode file (train pairs + test input, never the
// test output) under root/episodes/. Canonical serialization: sorted keys,
// no whitespace variance, newline-terminated.
std::filesystem::path write_episode(const Episode& episode,
                                    const std::filesystem::path& root);

// Loads and validates an episode file. The answer, when wanted, comes from
// the answers sidecar via load_answers.
Episode read_episode(const std::filesystem::path& path);

// Streams a whole dataset to disk: episode files plus manifest.jsonl and
// answers.jsonl. Returns the generation summary.
struct DatasetWriteResult {
    DatasetSummary summary;
    Manifest manifest;
};
DatasetWriteResult write_dataset(const std::filesystem::path& root,
                                 const BudgetConfig& config,
                                 std::uint64_t master_seed, int n_train);

Manifest load_manifest(const std::filesystem::path& root);
std::map<std::string, Grid> load_answers(const std::filesystem::path& root);

}  // namespace gridbench
