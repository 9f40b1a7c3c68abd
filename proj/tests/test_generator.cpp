#include <doctest.h>

#include <map>
#include <set>

#include "gridbench/generator.hpp"
#include "gridbench/rng.hpp"
#include "gridbench/solver.hpp"

using namespace gridbench;

TEST_CASE("generate_input honors constraints") {
    // move.right at max distance forces a wide canvas
    const TaskSpec& right = task_by_id("move.right");
    Grid g = generate_input(right, 30, derive_seed(5, right.task_id, 30, 0));
    CHECK(g.cols() >= 31);
    CHECK_NOTHROW(validate_input(right, 30, g));

    // count.all with value 3 has exactly 3 components (flood-fill oracle)
    const TaskSpec& count = task_by_id("count.all");
    Grid c = generate_input(count, 3, derive_seed(5, count.task_id, 3, 0));
    CHECK(connected_components(c, Connectivity::four_neighbor, false).size() == 3);

    CHECK_THROWS_AS(generate_input(right, 31, 1), VariableOutOfRange);
    CHECK_THROWS_AS(generate_input(count, 1, 1), VariableOutOfRange);
}

TEST_CASE("generate_episode structure and determinism") {
    const TaskSpec& task = task_by_id("symmetry.vertical");
    const std::uint64_t seed = derive_seed(9, task.task_id, 4, 2);
    Episode a = generate_episode(task, 4, 9, seed, 2);
    Episode b = generate_episode(task, 4, 9, seed, 2);

    CHECK(a.train_pairs.size() == 3);
    CHECK(a.episode_id() == "symmetry.vertical-v04-i0002");
    for (std::size_t i = 0; i < a.train_pairs.size(); ++i) {
        CHECK(equals_exact(a.train_pairs[i].first, b.train_pairs[i].first));
        CHECK(equals_exact(a.train_pairs[i].second, b.train_pairs[i].second));
    }
    CHECK(equals_exact(a.test_input, b.test_input));
    CHECK(equals_exact(a.test_output, b.test_output));

    // every output is the paired solver applied to its input
    for (const auto& [in, out] : a.train_pairs) {
        CHECK(equals_exact(solve(task, 4, in), out));
    }
    CHECK(equals_exact(solve(task, 4, a.test_input), a.test_output));

    // train inputs pairwise distinct and distinct from the test input
    std::set<std::string> inputs;
    for (const auto& [in, out] : a.train_pairs) inputs.insert(in.to_string());
    inputs.insert(a.test_input.to_string());
    CHECK(inputs.size() == 4);
}

TEST_CASE("generate_episode supports the train-count ablation") {
    const TaskSpec& task = task_by_id("gravity.blocks");
    for (int k : {1, 2, 3, 4}) {
        Episode ep = generate_episode(task, 3, 1, derive_seed(1, task.task_id, 3, 0), 0, k);
        CHECK(int(ep.train_pairs.size()) == k);
        for (const auto& [in, out] : ep.train_pairs) {
            CHECK(equals_exact(solve(task, 3, in), out));
        }
    }
}

TEST_CASE("generation feasibility across the catalog") {
    // A slice of seeds per (task, boundary value); the full-rate property
    // is exercised by the acceptance run over the complete dataset.
    for (const auto& task : catalog()) {
        for (int value : {task.variable.min, task.variable.max}) {
            for (int index = 0; index < 5; ++index) {
                const std::uint64_t seed = derive_seed(77, task.task_id, value, index);
                Grid g = generate_input(task, value, seed);
                CHECK_NOTHROW(validate_input(task, value, g));
                CHECK_NOTHROW(solve(task, value, g));
            }
        }
    }
}

TEST_CASE("generate_dataset counts and ordering") {
    BudgetConfig config{0.004};
    std::vector<Episode> episodes;
    DatasetSummary summary =
        generate_dataset(config, 3, 3, [&](const Episode& ep) { episodes.push_back(ep); });
    CHECK(summary.failures.empty());
    CHECK(summary.total == int(episodes.size()));
    CHECK(summary.total == total_budget(config));

    std::map<Family, int> per_family;
    std::set<std::string> ids;
    for (const auto& ep : episodes) {
        per_family[task_by_id(ep.task_id).family]++;
        ids.insert(ep.episode_id());
    }
    CHECK(ids.size() == episodes.size());
    for (const auto& [family, n] : per_family) {
        CHECK(n == budget_for(family, config));
    }
    CHECK(per_family.size() == kFamilyCount);

    // catalog order, values ascending, indices ascending
    std::size_t k = 0;
    for (const auto& task : catalog()) {
        for (int v = task.variable.min; v <= task.variable.max; ++v) {
            for (int i = 0; i < instances_for(task, v, config); ++i, ++k) {
                REQUIRE(k < episodes.size());
                CHECK(episodes[k].task_id == task.task_id);
                CHECK(episodes[k].variable_value == v);
                CHECK(episodes[k].index == i);
            }
        }
    }
}
