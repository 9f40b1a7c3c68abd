#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gridbench/dataset_io.hpp"
#include "gridbench/generator.hpp"
#include "gridbench/grid.hpp"
#include "gridbench/model_client.hpp"

namespace gridbench {

struct PromptTemplate {
    std::string preamble =
        "You are solving an abstract reasoning puzzle. Each example below "
        "shows an input grid and the output grid produced by the same hidden "
        "transformation. Grids are written as lists of rows; every cell is an "
        "integer from 0 to 9, where 0 is the background.";
    std::string example_label = "Example";
    std::string input_label = "Input:";
    std::string output_label = "Output:";
    std::string test_label = "Test input:";
    std::string instruction =
        "Infer the transformation from the examples and apply it to the test "
        "input. Reply with the output grid only, as a bracketed list of "
        "comma-separated rows like [[...],[...]], with no other text.";
};

// Renders all train pairs plus the test input; never the test output.
std::string build_prompt(const Episode& episode, const PromptTemplate& tmpl = {});

enum class ParseFailureReason { no_grid, ragged, bad_cell };
std::string to_string(ParseFailureReason reason);

struct ParseFailure {
    ParseFailureReason reason = ParseFailureReason::no_grid;
};

using ParseResult = std::variant<Grid, ParseFailure>;

// Extracts the LAST well-formed grid (bracketed rows of integers 0-9,
// rectangular) from free-form model output; code fences and prose around
// it are fine. Failure is a value, never an exception.
ParseResult parse_grid(const std::string& response);

// True iff pred is a grid and exactly matches truth in shape and cells.
bool score(const ParseResult& pred, const Grid& truth);

struct EvalRecord {
    std::string episode_id;
    std::string model_id;
    int trial = 0;  // 0-based
    std::string raw_response;
    std::optional<Grid> parsed;
    std::optional<ParseFailureReason> parse_failure;
    std::optional<std::string> transport_error;
    bool correct = false;
    double latency_ms = 0.0;
    int attempts = 1;
};

void save_records(const std::vector<EvalRecord>& records,
                  const std::filesystem::path& path);
std::vector<EvalRecord> load_records(const std::filesystem::path& path);

struct EvalOptions {
    int trials = 3;
    int concurrency = 1;
    PromptTemplate prompt;
};

// Runs trials x episodes queries against the transport. Per-episode
// transport errors become failed records, never aborts. Previously
// completed (episode_id, trial, model_id) keys in `resume_from` are kept
// as-is and skipped. Output is sorted by (episode_id, trial) regardless of
// completion order.
std::vector<EvalRecord> run_eval(const std::filesystem::path& dataset_root,
                                 const Manifest& manifest,
                                 const std::map<std::string, Grid>& answers,
                                 Transport& transport, const std::string& model_id,
                                 const EvalOptions& options,
                                 const std::vector<EvalRecord>& resume_from = {});

struct ValueStats {
    int attempted = 0;
    int correct = 0;
    double accuracy = 0.0;  // trials averaged first
};

struct TaskStats {
    std::map<int, ValueStats> per_value;
    double mean_accuracy = 0.0;  // mean of per-value accuracies
    double variance = 0.0;       // population variance of per-value accuracies
};

struct MetricsReport {
    std::string model_id;
    std::map<std::string, TaskStats> per_task;
    std::map<std::string, double> per_family;  // unweighted mean over tasks
    std::map<std::string, double> per_level;   // unweighted mean over families
    double overall = 0.0;                      // mean of level averages
    int record_count = 0;
};

// Joins records to manifest rows; throws UnjoinableRecord when an episode
// id has no manifest row. Per-value accuracy averages the per-trial
// accuracies; variance is the population variance across values.
MetricsReport aggregate(const std::vector<EvalRecord>& records,
                        const Manifest& manifest);

// Reference transports for harness validation.
std::unique_ptr<Transport> make_oracle_transport(std::map<std::string, Grid> answers);
std::unique_ptr<Transport> make_random_grid_transport(std::uint64_t seed);
std::unique_ptr<Transport> make_constant_grid_transport(Grid grid);
std::unique_ptr<Transport> make_echo_input_transport();

// Built-in reference model by name (oracle|random|constant|echo), or null.
std::unique_ptr<Transport> make_reference_transport(
    const std::string& name, const std::map<std::string, Grid>& answers,
    std::uint64_t seed);

}  // namespace gridbench
