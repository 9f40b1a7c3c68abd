#include "gridbench/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>

#include <nlohmann/json.hpp>

#include "gridbench/rng.hpp"

namespace gridbench {

using nlohmann::json;

std::string build_prompt(const Episode& episode, const PromptTemplate& tmpl) {
    std::string out = tmpl.preamble + "\n\n";
    int i = 1;
    for (const auto& [in, truth] : episode.train_pairs) {
        out += tmpl.example_label + " " + std::to_string(i++) + ":\n";
        out += tmpl.input_label + "\n" + in.to_string() + "\n";
        out += tmpl.output_label + "\n" + truth.to_string() + "\n\n";
    }
    out += tmpl.test_label + "\n" + episode.test_input.to_string() + "\n\n";
    out += tmpl.instruction + "\n";
    return out;
}

std::string to_string(ParseFailureReason reason) {
    switch (reason) {
        case ParseFailureReason::no_grid: return "no_grid";
        case ParseFailureReason::ragged: return "ragged";
        case ParseFailureReason::bad_cell: return "bad_cell";
    }
    return "unknown";
}

namespace {

struct Scanner {
    const std::string& text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    std::optional<long> number() {
        skip_ws();
        std::size_t p = pos;
        bool neg = false;
        if (p < text.size() && text[p] == '-') {
            neg = true;
            ++p;
        }
        std::size_t digits = p;
        long v = 0;
        while (p < text.size() && std::isdigit(static_cast<unsigned char>(text[p]))) {
            v = v * 10 + (text[p] - '0');
            if (v > 1000000) v = 1000001;  // clamp, value is invalid anyway
            ++p;
        }
        if (p == digits) return std::nullopt;
        pos = p;
        return neg ? -v : v;
    }
};

// Tries to read a [[..],[..]] structure at `start`. Returns rows on
// structural success (content may still be invalid), nullopt otherwise.
std::optional<std::vector<std::vector<long>>> scan_candidate(const std::string& text,
                                                             std::size_t start,
                                                             std::size_t& end) {
    Scanner s{text, start};
    if (!s.eat('[')) return std::nullopt;
    std::vector<std::vector<long>> rows;
    for (;;) {
        if (!s.eat('[')) return std::nullopt;
        std::vector<long> row;
        s.skip_ws();
        if (s.pos < text.size() && text[s.pos] == ']') {
            ++s.pos;  // empty row: structurally fine, invalid later
        } else {
            for (;;) {
                auto v = s.number();
                if (!v) return std::nullopt;
                row.push_back(*v);
                if (s.eat(',')) continue;
                if (s.eat(']')) break;
                return std::nullopt;
            }
        }
        rows.push_back(std::move(row));
        s.eat(',');  // optional separator between rows
        s.skip_ws();
        if (s.pos < text.size() && text[s.pos] == ']') {
            ++s.pos;
            end = s.pos;
            return rows;
        }
        if (s.pos >= text.size() || text[s.pos] != '[') return std::nullopt;
    }
}

std::optional<ParseFailureReason> validate_rows(
    const std::vector<std::vector<long>>& rows) {
    if (rows.empty()) return ParseFailureReason::no_grid;
    for (const auto& row : rows) {
        if (row.size() != rows.front().size() || row.empty())
            return ParseFailureReason::ragged;
    }
    if (static_cast<int>(rows.size()) > kMaxDim ||
        static_cast<int>(rows.front().size()) > kMaxDim)
        return ParseFailureReason::bad_cell;
    for (const auto& row : rows)
        for (long v : row)
            if (v < 0 || v > kMaxColor) return ParseFailureReason::bad_cell;
    return std::nullopt;
}

}  // namespace

ParseResult parse_grid(const std::string& response) {
    std::optional<Grid> last_good;
    std::optional<ParseFailureReason> last_reason;
    std::size_t i = 0;
    while (i < response.size()) {
        if (response[i] != '[') {
            ++i;
            continue;
        }
        std::size_t end = i;
        auto rows = scan_candidate(response, i, end);
        if (!rows) {
            ++i;
            continue;
        }
        if (auto reason = validate_rows(*rows)) {
            last_reason = reason;
            i = end;
            continue;
        }
        std::vector<std::vector<int>> cells;
        for (const auto& row : *rows) cells.emplace_back(row.begin(), row.end());
        last_good = Grid::from_rows(cells);
        i = end;
    }
    if (last_good) return *last_good;
    return ParseFailure{last_reason.value_or(ParseFailureReason::no_grid)};
}

bool score(const ParseResult& pred, const Grid& truth) {
    if (const Grid* g = std::get_if<Grid>(&pred)) return equals_exact(*g, truth);
    return false;
}

void save_records(const std::vector<EvalRecord>& records,
                  const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for write: " + path.string());
    for (const auto& rec : records) {
        json j{{"episode_id", rec.episode_id},
               {"model_id", rec.model_id},
               {"trial", rec.trial},
               {"raw_response", rec.raw_response},
               {"correct", rec.correct},
               {"latency_ms", rec.latency_ms},
               {"attempts", rec.attempts}};
        j["parsed"] = rec.parsed ? grid_to_json(*rec.parsed) : json(nullptr);
        j["parse_failure"] =
            rec.parse_failure ? json(to_string(*rec.parse_failure)) : json(nullptr);
        j["transport_error"] =
            rec.transport_error ? json(*rec.transport_error) : json(nullptr);
        out << j.dump() << "\n";
    }
    if (!out) throw IoError("write failed: " + path.string());
}

std::vector<EvalRecord> load_records(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path.string());
    std::vector<EvalRecord> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            throw ParseError(path.string() + " line " + std::to_string(lineno) + ": " +
                             e.what());
        }
        EvalRecord rec;
        rec.episode_id = j.at("episode_id").get<std::string>();
        rec.model_id = j.at("model_id").get<std::string>();
        rec.trial = j.at("trial").get<int>();
        rec.raw_response = j.at("raw_response").get<std::string>();
        rec.correct = j.at("correct").get<bool>();
        rec.latency_ms = j.at("latency_ms").get<double>();
        rec.attempts = j.value("attempts", 1);
        if (!j.at("parsed").is_null()) rec.parsed = grid_from_json(j["parsed"]);
        if (!j.at("parse_failure").is_null()) {
            const std::string r = j["parse_failure"].get<std::string>();
            rec.parse_failure = r == "ragged"     ? ParseFailureReason::ragged
                                : r == "bad_cell" ? ParseFailureReason::bad_cell
                                                  : ParseFailureReason::no_grid;
        }
        if (!j.at("transport_error").is_null())
            rec.transport_error = j["transport_error"].get<std::string>();
        out.push_back(std::move(rec));
    }
    return out;
}

std::vector<EvalRecord> run_eval(const std::filesystem::path& dataset_root,
                                 const Manifest& manifest,
                                 const std::map<std::string, Grid>& answers,
                                 Transport& transport, const std::string& model_id,
                                 const EvalOptions& options,
                                 const std::vector<EvalRecord>& resume_from) {
    if (options.trials < 1 || options.concurrency < 1) {
        throw ConfigError("trials and concurrency must be >= 1");
    }

    std::set<std::pair<std::string, int>> done;
    std::vector<EvalRecord> results;
    for (const auto& rec : resume_from) {
        if (rec.model_id != model_id) continue;
        if (done.emplace(rec.episode_id, rec.trial).second) results.push_back(rec);
    }

    struct Job {
        const ManifestRow* row;
        int trial;
    };
    std::vector<Job> jobs;
    std::map<std::string, Episode> episodes;
    for (const auto& row : manifest.rows) {
        if (!answers.count(row.episode_id)) {
            throw UnjoinableRecord("no answer for episode " + row.episode_id);
        }
        episodes.emplace(row.episode_id, read_episode(dataset_root / row.path));
        for (int t = 0; t < options.trials; ++t) {
            if (!done.count({row.episode_id, t})) jobs.push_back({&row, t});
        }
    }

    std::mutex results_mutex;
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t k = next.fetch_add(1);
            if (k >= jobs.size()) return;
            const Job& job = jobs[k];
            const Episode& ep = episodes.at(job.row->episode_id);
            const Grid& truth = answers.at(job.row->episode_id);

            EvalRecord rec;
            rec.episode_id = job.row->episode_id;
            rec.model_id = model_id;
            rec.trial = job.trial;
            try {
                Completion completion =
                    transport.complete(rec.episode_id, build_prompt(ep, options.prompt));
                rec.raw_response = completion.text;
                rec.latency_ms = completion.latency_ms;
                rec.attempts = completion.attempts;
                ParseResult parsed = parse_grid(completion.text);
                if (const Grid* g = std::get_if<Grid>(&parsed)) {
                    rec.parsed = *g;
                } else {
                    rec.parse_failure = std::get<ParseFailure>(parsed).reason;
                }
                rec.correct = score(parsed, truth);
            } catch (const TransportError& e) {
                rec.transport_error = e.kind;
                rec.attempts = e.attempts;
                rec.parse_failure = ParseFailureReason::no_grid;
            }
            std::lock_guard lock(results_mutex);
            results.push_back(std::move(rec));
        }
    };

    std::vector<std::thread> threads;
    const int nthreads = std::min<int>(options.concurrency,
                                       std::max<std::size_t>(jobs.size(), 1));
    for (int i = 0; i < nthreads; ++i) threads.emplace_back(worker);
    for (auto& t : threads) t.join();

    std::sort(results.begin(), results.end(), [](const EvalRecord& a, const EvalRecord& b) {
        return std::tie(a.episode_id, a.trial) < std::tie(b.episode_id, b.trial);
    });
    return results;
}

MetricsReport aggregate(const std::vector<EvalRecord>& records,
                        const Manifest& manifest) {
    std::map<std::string, const ManifestRow*> by_episode;
    for (const auto& row : manifest.rows) by_episode[row.episode_id] = &row;

    // (task_id, value, trial) -> attempted / correct
    struct TrialTally {
        int attempted = 0;
        int correct = 0;
    };
    std::map<std::tuple<std::string, int, int>, TrialTally> tallies;
    MetricsReport report;
    for (const auto& rec : records) {
        auto it = by_episode.find(rec.episode_id);
        if (it == by_episode.end()) {
            throw UnjoinableRecord("record for unknown episode " + rec.episode_id);
        }
        if (!report.model_id.empty() && rec.model_id != report.model_id) {
            throw UnjoinableRecord("mixed model ids in one aggregation");
        }
        report.model_id = rec.model_id;
        auto& tally = tallies[{it->second->task_id, it->second->variable_value,
                               rec.trial}];
        ++tally.attempted;
        if (rec.correct) ++tally.correct;
        ++report.record_count;
    }

    // Per-value accuracy: mean of the per-trial accuracies.
    std::map<std::pair<std::string, int>, std::vector<double>> trial_accs;
    std::map<std::pair<std::string, int>, std::pair<int, int>> totals;
    for (const auto& [key, tally] : tallies) {
        const auto& [task_id, value, trial] = key;
        trial_accs[{task_id, value}].push_back(double(tally.correct) /
                                               double(tally.attempted));
        totals[{task_id, value}].first += tally.attempted;
        totals[{task_id, value}].second += tally.correct;
    }
    for (const auto& [key, accs] : trial_accs) {
        double sum = 0;
        for (double a : accs) sum += a;
        ValueStats vs;
        vs.accuracy = sum / double(accs.size());
        vs.attempted = totals[key].first;
        vs.correct = totals[key].second;
        report.per_task[key.first].per_value[key.second] = vs;
    }
    for (auto& [task_id, stats] : report.per_task) {
        double sum = 0;
        for (const auto& [value, vs] : stats.per_value) sum += vs.accuracy;
        stats.mean_accuracy = sum / double(stats.per_value.size());
        double var = 0;
        for (const auto& [value, vs] : stats.per_value) {
            const double d = vs.accuracy - stats.mean_accuracy;
            var += d * d;
        }
        stats.variance = var / double(stats.per_value.size());
    }

    // Family and level roll-ups (unweighted means).
    std::map<std::string, std::pair<std::string, std::string>> task_group;
    for (const auto& row : manifest.rows) {
        task_group[row.task_id] = {row.family, row.level};
    }
    std::map<std::string, std::vector<double>> family_accs;
    std::map<std::string, std::string> family_level;
    for (const auto& [task_id, stats] : report.per_task) {
        const auto& [family, level] = task_group.at(task_id);
        family_accs[family].push_back(stats.mean_accuracy);
        family_level[family] = level;
    }
    std::map<std::string, std::vector<double>> level_accs;
    for (const auto& [family, accs] : family_accs) {
        double sum = 0;
        for (double a : accs) sum += a;
        report.per_family[family] = sum / double(accs.size());
        level_accs[family_level[family]].push_back(report.per_family[family]);
    }
    double overall_sum = 0;
    for (const auto& [level, accs] : level_accs) {
        double sum = 0;
        for (double a : accs) sum += a;
        report.per_level[level] = sum / double(accs.size());
        overall_sum += report.per_level[level];
    }
    if (!level_accs.empty()) report.overall = overall_sum / double(level_accs.size());
    return report;
}

namespace {

class OracleTransport : public Transport {
public:
    explicit OracleTransport(std::map<std::string, Grid> answers)
        : answers_(std::move(answers)) {}
    Completion complete(const std::string& episode_id, const std::string&) override {
        auto it = answers_.find(episode_id);
        if (it == answers_.end()) {
            throw TransportError("no_answer", 1, "oracle has no answer for " + episode_id);
        }
        return {it->second.to_string(), 0.0, 1, std::nullopt, std::nullopt};
    }

private:
    std::map<std::string, Grid> answers_;
};

class RandomGridTransport : public Transport {
public:
    explicit RandomGridTransport(std::uint64_t seed) : rng_(seed) {}
    Completion complete(const std::string&, const std::string&) override {
        std::lock_guard lock(mutex_);
        Grid g(rng_.range(1, 10), rng_.range(1, 10));
        for (int r = 0; r < g.rows(); ++r)
            for (int c = 0; c < g.cols(); ++c)
                g.set(r, c, static_cast<CellValue>(rng_.range(0, 9)));
        return {g.to_string(), 0.0, 1, std::nullopt, std::nullopt};
    }

private:
    Rng rng_;
    std::mutex mutex_;
};

class ConstantGridTransport : public Transport {
public:
    explicit ConstantGridTransport(Grid grid) : text_(grid.to_string()) {}
    Completion complete(const std::string&, const std::string&) override {
        return {text_, 0.0, 1, std::nullopt, std::nullopt};
    }

private:
    std::string text_;
};

class EchoInputTransport : public Transport {
public:
    Completion complete(const std::string&, const std::string& prompt) override {
        // The test input is the last grid rendered into the prompt.
        ParseResult parsed = parse_grid(prompt);
        if (const Grid* g = std::get_if<Grid>(&parsed)) {
            return {g->to_string(), 0.0, 1, std::nullopt, std::nullopt};
        }
        return {"", 0.0, 1, std::nullopt, std::nullopt};
    }
};

}  // namespace

std::unique_ptr<Transport> make_oracle_transport(std::map<std::string, Grid> answers) {
    return std::make_unique<OracleTransport>(std::move(answers));
}
std::unique_ptr<Transport> make_random_grid_transport(std::uint64_t seed) {
    return std::make_unique<RandomGridTransport>(seed);
}
std::unique_ptr<Transport> make_constant_grid_transport(Grid grid) {
    return std::make_unique<ConstantGridTransport>(std::move(grid));
}
std::unique_ptr<Transport> make_echo_input_transport() {
    return std::make_unique<EchoInputTransport>();
}

std::unique_ptr<Transport> make_reference_transport(
    const std::string& name, const std::map<std::string, Grid>& answers,
    std::uint64_t seed) {
    if (name == "oracle") return make_oracle_transport(answers);
    if (name == "random") return make_random_grid_transport(seed);
    if (name == "constant") return make_constant_grid_transport(Grid(1, 1));
    if (name == "echo") return make_echo_input_transport();
    return nullptr;
}

}  // namespace gridbench
