#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gridbench/dataset_io.hpp"
#include "gridbench/eval.hpp"
#include "gridbench/render.hpp"
#include "gridbench/report.hpp"
#include "gridbench/rng.hpp"
#include "gridbench/taxonomy.hpp"

namespace fs = std::filesystem;
using namespace gridbench;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitPartial = 2;

std::string file_hash(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return "";
    std::string data((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(data)));
    return buf;
}

// TOML-like model roster: one [name] section per model, key = value lines.
std::map<std::string, ModelHandle> parse_models_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open models file: " + path.string());
    std::map<std::string, ModelHandle> handles;
    std::string line, section;
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r\"");
        const auto b = s.find_last_not_of(" \t\r\"");
        return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
    };
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            handles[section].model_id = section;
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos || section.empty()) {
            throw ConfigError(path.string() + " line " + std::to_string(lineno) +
                              ": expected [section] or key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        ModelHandle& h = handles[section];
        try {
            if (key == "model_id") h.model_id = value;
            else if (key == "endpoint") h.endpoint = value;
            else if (key == "auth_env") h.auth_env = value;
            else if (key == "temperature") h.temperature = std::stod(value);
            else if (key == "max_tokens") h.max_tokens = std::stoi(value);
            else if (key == "timeout_s") h.timeout_s = std::stod(value);
            else if (key == "rpm") h.rpm = std::stod(value);
            else if (key == "max_retries") h.max_retries = std::stoi(value);
            else throw ConfigError("unknown model key: " + key);
        } catch (const std::invalid_argument&) {
            throw ConfigError(path.string() + " line " + std::to_string(lineno) +
                              ": bad value for " + key);
        }
    }
    return handles;
}

std::unique_ptr<Transport> make_transport(const std::string& model,
                                          const fs::path& models_file,
                                          const std::map<std::string, Grid>& answers,
                                          std::uint64_t seed) {
    if (auto ref = make_reference_transport(model, answers, seed)) return ref;
    if (models_file.empty()) {
        throw ConfigError("model '" + model +
                          "' is not a reference model and no --models file was given");
    }
    auto handles = parse_models_file(models_file);
    auto it = handles.find(model);
    if (it == handles.end()) {
        throw ConfigError("model '" + model + "' not found in " + models_file.string());
    }
    return std::make_unique<HttpTransport>(it->second);
}

double overall_accuracy(const std::vector<EvalRecord>& records) {
    if (records.empty()) return 0.0;
    int correct = 0;
    for (const auto& r : records) correct += r.correct ? 1 : 0;
    return double(correct) / double(records.size());
}

int cmd_generate(const fs::path& out, std::uint64_t seed, double scale, int n_train) {
    const fs::path manifest_path = out / "manifest.jsonl";
    const std::string before = file_hash(manifest_path);

    const DatasetWriteResult result =
        write_dataset(out, BudgetConfig{scale}, seed, n_train);

    std::string summary;
    for (const auto& [family, count] : result.summary.per_family) {
        summary += to_string(family) + "=" + std::to_string(count) + " ";
    }
    summary += "total=" + std::to_string(result.summary.total);
    std::cout << summary << "\n";

    const std::string after = file_hash(manifest_path);
    std::cout << "manifest_hash=" << after
              << (before == after && !before.empty() ? " (identical manifest hash)"
                                                     : "")
              << "\n";

    if (!result.summary.failures.empty()) {
        int missed = 0;
        for (const auto& [task_id, cells] : result.summary.failures) {
            missed += int(cells.size());
            std::cerr << "generation failures for " << task_id << ": " << cells.size()
                      << " instances\n";
        }
        std::cerr << "budget shortfall: " << missed << " episodes\n";
        return kExitPartial;
    }
    return kExitOk;
}

int cmd_eval(const fs::path& data, const std::string& model, const fs::path& models_file,
             fs::path records_path, int trials, int concurrency, std::uint64_t seed,
             const std::string& preamble) {
    const Manifest manifest = load_manifest(data);
    const auto answers = load_answers(data);
    if (records_path.empty()) records_path = data / ("records-" + model + ".jsonl");

    std::vector<EvalRecord> resume;
    if (fs::exists(records_path)) {
        resume = load_records(records_path);
        std::cout << "resuming from " << records_path.string() << " (" << resume.size()
                  << " records)\n";
    }

    auto transport = make_transport(model, models_file, answers, mix_seed(seed, 0xe7a1));
    EvalOptions options;
    options.trials = trials;
    options.concurrency = concurrency;
    if (!preamble.empty()) options.prompt.preamble = preamble;

    const auto records =
        run_eval(data, manifest, answers, *transport, model, options, resume);
    save_records(records, records_path);

    int transport_failures = 0;
    for (const auto& r : records) transport_failures += r.transport_error ? 1 : 0;
    std::printf("records=%zu accuracy=%.4f transport_failures=%d -> %s\n",
                records.size(), overall_accuracy(records), transport_failures,
                records_path.string().c_str());
    return transport_failures > 0 ? kExitPartial : kExitOk;
}

int cmd_score(const fs::path& data, const fs::path& records_path) {
    const auto answers = load_answers(data);
    auto records = load_records(records_path);
    for (auto& rec : records) {
        auto it = answers.find(rec.episode_id);
        if (it == answers.end()) throw UnjoinableRecord("no answer for " + rec.episode_id);
        ParseResult parsed = parse_grid(rec.raw_response);
        if (const Grid* g = std::get_if<Grid>(&parsed)) {
            rec.parsed = *g;
            rec.parse_failure.reset();
        } else {
            rec.parsed.reset();
            rec.parse_failure = std::get<ParseFailure>(parsed).reason;
        }
        rec.correct = score(parsed, it->second);
    }
    save_records(records, records_path);
    std::printf("records=%zu accuracy=%.4f\n", records.size(),
                overall_accuracy(records));
    return kExitOk;
}

int cmd_report(const fs::path& data, const std::vector<fs::path>& record_files,
               const fs::path& out) {
    const Manifest manifest = load_manifest(data);
    std::vector<MetricsReport> models;
    for (const auto& path : record_files) {
        models.push_back(aggregate(load_records(path), manifest));
    }
    const ReportFiles files = write_report(models, out);
    std::cout << files.markdown.string() << "\n"
              << files.json.string() << "\n"
              << files.curves.string() << "\n";
    return kExitOk;
}

int cmd_render(const fs::path& data, const fs::path& out, const std::string& layout,
               int cell_px, int limit) {
    const Manifest manifest = load_manifest(data);
    RenderStyle style;
    style.cell_px = cell_px;
    style.layout =
        layout == "single" ? RenderLayout::single_image : RenderLayout::multi_image;
    style.canonical_layout = manifest.header.n_train == kDefaultTrainPairs;
    int done = 0, files = 0;
    for (const auto& row : manifest.rows) {
        if (limit > 0 && done >= limit) break;
        const Episode ep = read_episode(data / row.path);
        files += int(render_episode(ep, style, out).size());
        ++done;
    }
    std::printf("episodes=%d files=%d -> %s\n", done, files, out.string().c_str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Grid-reasoning benchmark toolkit: seeded dataset generation, "
                 "model evaluation, scoring, reports, and rendering"};
    app.set_config("--config", "", "TOML-like key=value config; flags override it");
    app.require_subcommand(1);

    std::uint64_t seed = 1;
    double scale = 1.0;
    int n_train = kDefaultTrainPairs;
    int trials = 3;
    int concurrency = 1;
    fs::path data = "dataset";
    app.add_option("--seed", seed, "master seed")->capture_default_str();

    auto* generate = app.add_subcommand("generate", "generate a dataset");
    generate->add_option("--out", data, "dataset root")->capture_default_str();
    generate->add_option("--scale", scale, "budget scaling factor")
        ->capture_default_str();
    generate->add_option("--n-train", n_train, "train pairs per episode")
        ->check(CLI::Range(1, 10))
        ->capture_default_str();

    std::string model = "oracle";
    fs::path models_file, records_path, out_dir = "report";
    std::string preamble;
    auto* eval = app.add_subcommand("eval", "run a model over a dataset");
    eval->add_option("--data", data, "dataset root")->capture_default_str();
    eval->add_option("--model", model,
                     "reference model (oracle|random|constant|echo) or models-file "
                     "section")
        ->capture_default_str();
    eval->add_option("--models", models_file, "TOML-like model roster file");
    eval->add_option("--records", records_path, "records output (default inside data)");
    eval->add_option("--trials", trials, "trials per episode")
        ->check(CLI::Range(1, 100))
        ->capture_default_str();
    eval->add_option("--concurrency", concurrency, "parallel requests")
        ->check(CLI::Range(1, 256))
        ->capture_default_str();
    eval->add_option("--preamble", preamble, "override the prompt preamble");

    auto* score_cmd = app.add_subcommand("score", "re-score stored records");
    score_cmd->add_option("--data", data, "dataset root")->capture_default_str();
    score_cmd->add_option("--records", records_path, "records file")->required();

    std::vector<fs::path> record_files;
    auto* report = app.add_subcommand("report", "write report.md/json + curves.csv");
    report->add_option("--data", data, "dataset root")->capture_default_str();
    report->add_option("--records", record_files, "one or more records files")
        ->required();
    report->add_option("--out", out_dir, "report directory")->capture_default_str();

    std::string layout = "multi";
    int cell_px = 10, limit = 0;
    auto* render = app.add_subcommand("render", "render episodes to PNG");
    render->add_option("--data", data, "dataset root")->capture_default_str();
    render->add_option("--out", out_dir, "image directory")->capture_default_str();
    render->add_option("--layout", layout, "single|multi")
        ->check(CLI::IsMember({"single", "multi"}))
        ->capture_default_str();
    render->add_option("--cell-px", cell_px, "cell size in pixels")
        ->check(CLI::Range(1, 64))
        ->capture_default_str();
    render->add_option("--limit", limit, "render only the first N episodes");

    auto* catalog_cmd = app.add_subcommand("catalog", "dump the task catalog as JSON");
    catalog_cmd->add_option("--scale", scale, "budget scaling factor")
        ->capture_default_str();

    // Let `bench generate --seed N` work: unmatched subcommand flags fall
    // through to the parent parser.
    for (CLI::App* sub : app.get_subcommands([](CLI::App*) { return true; })) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (generate->parsed()) return cmd_generate(data, seed, scale, n_train);
        if (eval->parsed())
            return cmd_eval(data, model, models_file, records_path, trials, concurrency,
                            seed, preamble);
        if (score_cmd->parsed()) return cmd_score(data, records_path);
        if (report->parsed()) return cmd_report(data, record_files, out_dir);
        if (render->parsed()) return cmd_render(data, out_dir, layout, cell_px, limit);
        if (catalog_cmd->parsed()) {
            std::cout << catalog_json(BudgetConfig{scale});
            return kExitOk;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const AuthError& e) {
        std::cerr << "auth error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPartial;
    }
    return kExitConfig;
}
