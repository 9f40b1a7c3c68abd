#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "gridbench/grid.hpp"
#include "gridbench/taxonomy.hpp"

namespace gridbench {

inline constexpr int kGenerationAttemptCap = 1000;
inline constexpr int kDefaultTrainPairs = 3;

struct Episode {
    std::string task_id;
    int variable_value = 0;
    std::uint64_t master_seed = 0;
    std::uint64_t derived_seed = 0;
    int index = 0;
    std::vector<std::pair<Grid, Grid>> train_pairs;
    Grid test_input;
    Grid test_output;

    std::string episode_id() const;
};

// One constraint-satisfying input grid for (task, value). Deterministic in
// the seed; rejection-sampled with the attempt cap, each candidate checked
// against the task constraints and a trial solver run.
Grid generate_input(const TaskSpec& task, int variable_value, std::uint64_t seed);

// Full episode: n_train distinct train pairs plus the test pair, outputs
// produced by the paired solver.
Episode generate_episode(const TaskSpec& task, int variable_value,
                         std::uint64_t master_seed, std::uint64_t derived_seed,
                         int index, int n_train = kDefaultTrainPairs);

struct DatasetSummary {
    std::map<Family, int> per_family;
    int total = 0;
    // task_id -> failed (value, index) pairs; generation continues past them.
    std::map<std::string, std::vector<std::pair<int, int>>> failures;
};

using EpisodeSink = std::function<void(const Episode&)>;

// Streams every episode of the configured distribution in catalog order,
// values ascending, indices ascending. Byte-identical content for identical
// (config, master_seed, n_train).
DatasetSummary generate_dataset(const BudgetConfig& config, std::uint64_t master_seed,
                                int n_train, const EpisodeSink& sink);

}  // namespace gridbench
