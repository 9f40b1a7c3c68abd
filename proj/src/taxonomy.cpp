#include "gridbench/taxonomy.hpp"

#include <array>
#include <cmath>
#include <map>

#include <nlohmann/json.hpp>

namespace gridbench {

namespace {

struct FamilyInfo {
    Family family;
    Level level;
    const char* name;
    int default_budget;
};

// Canonical per-family instance totals; they sum to 3955.
constexpr std::array<FamilyInfo, kFamilyCount> kFamilies = {{
    {Family::size, Level::attribute, "size", 629},
    {Family::count, Level::attribute, "count", 570},
    {Family::shape, Level::attribute, "shape", 450},
    {Family::move, Level::spatial, "move", 1500},
    {Family::rotation, Level::spatial, "rotation", 108},
    {Family::symmetry, Level::spatial, "symmetry", 75},
    {Family::categorization, Level::sequential, "categorization", 65},
    {Family::sort, Level::sequential, "sort", 240},
    {Family::planning, Level::sequential, "planning", 105},
    {Family::gravity, Level::conceptual, "gravity", 63},
    {Family::reflection, Level::conceptual, "reflection", 100},
    {Family::expansion, Level::conceptual, "expansion", 50},
}};

const FamilyInfo& info(Family f) {
    for (const auto& fi : kFamilies)
        if (fi.family == f) return fi;
    throw UnknownFamily("unknown family");
}

std::vector<TaskSpec> build_catalog() {
    std::vector<TaskSpec> tasks;
    auto add = [&](Family fam, const std::string& variant, VariableSpec var,
                   const std::string& desc) {
        TaskSpec t;
        t.task_id = to_string(fam) + "." + variant;
        t.family = fam;
        t.variant = variant;
        t.variable = std::move(var);
        t.description = desc;
        tasks.push_back(std::move(t));
    };

    VariableSpec size_var{"size", 10, 30, "canvas side length in cells"};
    add(Family::size, "crop", size_var, "crop the object to its bounding box");
    add(Family::size, "frame", size_var, "paint the outer border in the object color");
    add(Family::size, "largest", size_var, "crop the largest object to its bounding box");

    VariableSpec count_var{"number", 2, 10, "number of items to count"};
    add(Family::count, "color", count_var,
        "count components of the marked color into a 1xN bar");
    add(Family::count, "all", count_var,
        "count all components into a 1xN gray bar");
    add(Family::count, "cells", count_var,
        "count the cells of the single object into a 1xN bar");

    VariableSpec shape_var{"shape", 1, 10, "index into the 10-shape library"};
    add(Family::shape, "fill_bbox", shape_var, "fill the object's bounding box");
    add(Family::shape, "outline", shape_var,
        "replace the object with its bounding-box outline");
    add(Family::shape, "duplicate", shape_var,
        "append a copy of the object to its right");

    VariableSpec move_var{"distance", 1, 30, "move distance in cells"};
    for (const char* dir : {"up", "down", "left", "right", "upper_right"}) {
        add(Family::move, dir, move_var,
            std::string("move the object ") + dir + " by the given distance");
    }

    VariableSpec rot_var{"angle", 1, 3, "clockwise quarter turns (90 deg each)"};
    add(Family::rotation, "endpoint", rot_var,
        "rotate the object about its lexicographically smallest cell");
    add(Family::rotation, "center", rot_var,
        "rotate the object about its bounding-box center");

    VariableSpec sym_var{"number", 1, 8, "objects to symmetrize"};
    add(Family::symmetry, "horizontal", sym_var,
        "mirror every object across the middle row");
    add(Family::symmetry, "vertical", sym_var,
        "mirror every object across the middle column");
    add(Family::symmetry, "diagonal", sym_var,
        "mirror every object across the main diagonal");

    VariableSpec cat_var{"category", 1, 5, "categories to distinguish"};
    add(Family::categorization, "by_color", cat_var,
        "recolor each object to the next color in the palette cycle");
    add(Family::categorization, "by_size", cat_var,
        "recolor objects by their size rank");
    add(Family::categorization, "by_shape", cat_var,
        "recolor objects by their library shape index");

    VariableSpec sort_var{"order", 1, 9, "elements to sort"};
    add(Family::sort, "height_asc", sort_var,
        "rearrange bars by ascending height, left to right");
    add(Family::sort, "height_desc", sort_var,
        "rearrange bars by descending height, left to right");
    add(Family::sort, "width_asc", sort_var,
        "rearrange horizontal bars by ascending width, top to bottom");

    VariableSpec plan_var{"step", 1, 9, "planning steps on the unique shortest path"};
    add(Family::planning, "open", plan_var, "trace the unique path on an open field");
    add(Family::planning, "scatter", plan_var,
        "trace the unique path through scattered walls");
    add(Family::planning, "rooms", plan_var,
        "trace the unique path through wall segments");

    VariableSpec grav_var{"number", 1, 8, "physics-rule applications / airborne objects"};
    add(Family::gravity, "blocks", grav_var, "rectangular blocks fall to rest");
    add(Family::gravity, "shapes", grav_var, "library shapes fall to rest");
    add(Family::gravity, "mixed", grav_var, "mixed blocks and shapes fall to rest");

    VariableSpec refl_var{"number", 1, 8, "wall reflections of the ray"};
    add(Family::reflection, "wide", refl_var, "ray bounces in a wide box");
    add(Family::reflection, "tall", refl_var, "ray bounces in a tall box");
    add(Family::reflection, "square", refl_var, "ray bounces in a square box");

    VariableSpec exp_var{"number", 1, 8, "expansion rings applied"};
    add(Family::expansion, "point", exp_var, "a point source expands until obstructed");
    add(Family::expansion, "bar", exp_var, "a bar source expands until obstructed");
    add(Family::expansion, "pair", exp_var, "two sources expand until obstructed");

    return tasks;
}

}  // namespace

Level level_of(Family family) { return info(family).level; }

std::string to_string(Level level) {
    switch (level) {
        case Level::attribute: return "attribute";
        case Level::spatial: return "spatial";
        case Level::sequential: return "sequential";
        case Level::conceptual: return "conceptual";
    }
    throw Error("unreachable");
}

std::string to_string(Family family) { return info(family).name; }

Family family_from_string(const std::string& name) {
    for (const auto& fi : kFamilies)
        if (name == fi.name) return fi.family;
    throw UnknownFamily("unknown family: " + name);
}

const std::vector<TaskSpec>& catalog() {
    static const std::vector<TaskSpec> tasks = build_catalog();
    return tasks;
}

const TaskSpec& task_by_id(const std::string& task_id) {
    for (const auto& t : catalog())
        if (t.task_id == task_id) return t;
    throw UnknownFamily("unknown task: " + task_id);
}

std::vector<const TaskSpec*> tasks_of_family(Family family) {
    std::vector<const TaskSpec*> out;
    for (const auto& t : catalog())
        if (t.family == family) out.push_back(&t);
    return out;
}

namespace {

// Default (unscaled) count for the cell_index-th (task, value) cell of a
// family; remainder cells come first so earlier tasks/values absorb it.
int default_cell_count(Family family, int cell_index) {
    const auto tasks = tasks_of_family(family);
    int cells = 0;
    for (const auto* t : tasks) cells += t->variable.distinct_values();
    const int budget = info(family).default_budget;
    const int base = budget / cells;
    const int remainder = budget % cells;
    return base + (cell_index < remainder ? 1 : 0);
}

int cell_index_of(const TaskSpec& task, int variable_value) {
    const auto tasks = tasks_of_family(task.family);
    int index = 0;
    for (const auto* t : tasks) {
        if (t->task_id == task.task_id) {
            return index + (variable_value - t->variable.min);
        }
        index += t->variable.distinct_values();
    }
    throw UnknownFamily("task not in catalog: " + task.task_id);
}

}  // namespace

int instances_for(const TaskSpec& task, int variable_value,
                  const BudgetConfig& config) {
    if (!task.variable.contains(variable_value)) {
        throw VariableOutOfRange(task.task_id + ": value " +
                                 std::to_string(variable_value) + " outside [" +
                                 std::to_string(task.variable.min) + "," +
                                 std::to_string(task.variable.max) + "]");
    }
    const int base = default_cell_count(task.family, cell_index_of(task, variable_value));
    if (config.scale == 1.0) return base;
    return std::max(1, static_cast<int>(std::floor(base * config.scale)));
}

int budget_for(Family family, const BudgetConfig& config) {
    if (config.scale == 1.0) return info(family).default_budget;
    int total = 0;
    for (const auto* t : tasks_of_family(family)) {
        for (int v = t->variable.min; v <= t->variable.max; ++v) {
            total += instances_for(*t, v, config);
        }
    }
    return total;
}

int total_budget(const BudgetConfig& config) {
    int total = 0;
    for (const auto& fi : kFamilies) total += budget_for(fi.family, config);
    return total;
}

std::string catalog_json(const BudgetConfig& config) {
    nlohmann::json doc = nlohmann::json::array();
    for (const auto& t : catalog()) {
        nlohmann::json entry;
        entry["task_id"] = t.task_id;
        entry["level"] = to_string(t.level());
        entry["family"] = to_string(t.family);
        entry["variant"] = t.variant;
        entry["description"] = t.description;
        entry["variable"] = {{"name", t.variable.name},
                             {"min", t.variable.min},
                             {"max", t.variable.max},
                             {"semantics", t.variable.semantics}};
        nlohmann::json budgets = nlohmann::json::array();
        int task_total = 0;
        for (int v = t.variable.min; v <= t.variable.max; ++v) {
            int n = instances_for(t, v, config);
            budgets.push_back(n);
            task_total += n;
        }
        entry["instances_per_value"] = budgets;
        entry["instances_total"] = task_total;
        doc.push_back(std::move(entry));
    }
    return doc.dump(2) + "\n";
}

}  // namespace gridbench
