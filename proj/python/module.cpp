#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gridbench/dataset_io.hpp"
#include "gridbench/eval.hpp"
#include "gridbench/generator.hpp"
#include "gridbench/render.hpp"
#include "gridbench/rng.hpp"
#include "gridbench/solver.hpp"
#include "gridbench/taxonomy.hpp"

namespace py = pybind11;
using namespace gridbench;

namespace {

using PyGrid = std::vector<std::vector<int>>;

PyGrid to_py(const Grid& grid) {
    PyGrid rows(grid.rows(), std::vector<int>(grid.cols()));
    for (int r = 0; r < grid.rows(); ++r)
        for (int c = 0; c < grid.cols(); ++c) rows[r][c] = grid.at(r, c);
    return rows;
}

Grid from_py(const PyGrid& rows) { return Grid::from_rows(rows); }

py::dict episode_to_py(const Episode& ep) {
    py::list train;
    for (const auto& [in, out] : ep.train_pairs) {
        train.append(py::make_tuple(to_py(in), to_py(out)));
    }
    py::dict d;
    d["episode_id"] = ep.episode_id();
    d["task_id"] = ep.task_id;
    d["variable_value"] = ep.variable_value;
    d["seed"] = ep.derived_seed;
    d["train"] = train;
    d["test_input"] = to_py(ep.test_input);
    d["test_output"] = to_py(ep.test_output);
    return d;
}

Episode episode_from_py(const py::dict& d) {
    Episode ep;
    ep.task_id = d["task_id"].cast<std::string>();
    if (d.contains("variable_value"))
        ep.variable_value = d["variable_value"].cast<int>();
    for (auto item : d["train"].cast<py::list>()) {
        auto pair = item.cast<py::tuple>();
        ep.train_pairs.emplace_back(from_py(pair[0].cast<PyGrid>()),
                                    from_py(pair[1].cast<PyGrid>()));
    }
    ep.test_input = from_py(d["test_input"].cast<PyGrid>());
    if (d.contains("test_output"))
        ep.test_output = from_py(d["test_output"].cast<PyGrid>());
    return ep;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Seeded grid-reasoning benchmark: generators, solvers, parsing, "
              "scoring, and rendering";

    py::register_exception<Error>(m, "BenchmarkError", PyExc_RuntimeError);

    m.def("catalog", [] {
        py::list out;
        for (const TaskSpec& task : catalog()) {
            py::dict d;
            d["task_id"] = task.task_id;
            d["level"] = to_string(task.level());
            d["family"] = to_string(task.family);
            d["variant"] = task.variant;
            d["variable_name"] = task.variable.name;
            d["variable_min"] = task.variable.min;
            d["variable_max"] = task.variable.max;
            d["description"] = task.description;
            out.append(d);
        }
        return out;
    }, "All concrete tasks with their variable ranges.");

    m.def("total_budget",
          [](double scale) { return total_budget(BudgetConfig{scale}); },
          py::arg("scale") = 1.0);
    m.def("budget_for",
          [](const std::string& family, double scale) {
              return budget_for(family_from_string(family), BudgetConfig{scale});
          },
          py::arg("family"), py::arg("scale") = 1.0);
    m.def("instances_for",
          [](const std::string& task_id, int value, double scale) {
              return instances_for(task_by_id(task_id), value, BudgetConfig{scale});
          },
          py::arg("task_id"), py::arg("value"), py::arg("scale") = 1.0);

    m.def("generate_episode",
          [](const std::string& task_id, int value, std::uint64_t master_seed,
             int index, int n_train) {
              const TaskSpec& task = task_by_id(task_id);
              const std::uint64_t derived =
                  derive_seed(master_seed, task_id, value, index);
              return episode_to_py(
                  generate_episode(task, value, master_seed, derived, index, n_train));
          },
          py::arg("task_id"), py::arg("value"), py::arg("master_seed") = 1,
          py::arg("index") = 0, py::arg("n_train") = kDefaultTrainPairs,
          "Deterministic episode for (task, value, seed, index).");

    m.def("solve",
          [](const std::string& task_id, int value, const PyGrid& grid) {
              return to_py(solve(task_by_id(task_id), value, from_py(grid)));
          },
          py::arg("task_id"), py::arg("value"), py::arg("grid"),
          "Apply the task's latent rule to an input grid.");

    m.def("build_prompt",
          [](const py::dict& episode) { return build_prompt(episode_from_py(episode)); },
          py::arg("episode"));

    m.def("parse_grid",
          [](const std::string& text) -> py::object {
              ParseResult result = parse_grid(text);
              if (const Grid* g = std::get_if<Grid>(&result)) {
                  return py::cast(to_py(*g));
              }
              return py::none();
          },
          py::arg("text"),
          "Last well-formed grid in free-form model output, or None.");
    m.def("parse_failure_reason",
          [](const std::string& text) -> py::object {
              ParseResult result = parse_grid(text);
              if (std::holds_alternative<Grid>(result)) return py::none();
              return py::cast(to_string(std::get<ParseFailure>(result).reason));
          },
          py::arg("text"));

    m.def("score",
          [](const PyGrid& pred, const PyGrid& truth) {
              return score(ParseResult{from_py(pred)}, from_py(truth));
          },
          py::arg("pred"), py::arg("truth"), "Exact match in shape and cells.");

    m.def("render_grid",
          [](const PyGrid& grid, int cell_px) {
              RenderStyle style;
              style.cell_px = cell_px;
              const auto bytes = render_grid(from_py(grid), style);
              return py::bytes(reinterpret_cast<const char*>(bytes.data()),
                               bytes.size());
          },
          py::arg("grid"), py::arg("cell_px") = 10,
          "Deterministic PNG bytes for one grid.");

    m.def("write_dataset",
          [](const std::string& root, double scale, std::uint64_t master_seed,
             int n_train) {
              const auto result =
                  write_dataset(root, BudgetConfig{scale}, master_seed, n_train);
              py::dict per_family;
              for (const auto& [family, count] : result.summary.per_family) {
                  per_family[py::str(to_string(family))] = count;
              }
              py::dict out;
              out["total"] = result.summary.total;
              out["per_family"] = per_family;
              out["failures"] = int(result.summary.failures.size());
              return out;
          },
          py::arg("root"), py::arg("scale") = 1.0, py::arg("master_seed") = 1,
          py::arg("n_train") = kDefaultTrainPairs,
          "Generate a dataset on disk; returns the per-family summary.");
}
