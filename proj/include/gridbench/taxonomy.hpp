#pragma once

#include <string>
#include <vector>

#include "gridbench/errors.hpp"

namespace gridbench {

enum class Level { attribute = 1, spatial = 2, sequential = 3, conceptual = 4 };

enum class Family {
    size,
    count,
    shape,
    move,
    rotation,
    symmetry,
    categorization,
    sort,
    planning,
    gravity,
    reflection,
    expansion,
};

inline constexpr int kFamilyCount = 12;

Level level_of(Family family);
std::string to_string(Level level);
std::string to_string(Family family);
Family family_from_string(const std::string& name);

struct VariableSpec {
    std::string name;
    int min = 0;
    int max = 0;
    std::string semantics;
    bool contains(int v) const { return v >= min && v <= max; }
    int distinct_values() const { return max - min + 1; }
};

// One concrete task: a rule family plus a variant (move direction, rotation
// pivot, symmetry axis, scenario flavor) and its dynamic variable.
struct TaskSpec {
    std::string task_id;
    Family family = Family::size;
    std::string variant;
    VariableSpec variable;
    std::string description;
    Level level() const { return level_of(family); }
};

// Scales the per-(task, value) instance counts. scale == 1 reproduces the
// default distribution exactly; otherwise counts floor to at least 1.
struct BudgetConfig {
    double scale = 1.0;
};

// Complete, immutable task list in stable task_id order.
const std::vector<TaskSpec>& catalog();

const TaskSpec& task_by_id(const std::string& task_id);

std::vector<const TaskSpec*> tasks_of_family(Family family);

// Family instance total under the config (default: the canonical counts,
// summing to 3955 across all families).
int budget_for(Family family, const BudgetConfig& config = {});

// Episode count for one (task, variable value) cell. The family budget is
// spread over its (task x value) cells in catalog order, values ascending,
// with the remainder going to earlier cells.
int instances_for(const TaskSpec& task, int variable_value,
                  const BudgetConfig& config = {});

int total_budget(const BudgetConfig& config = {});

// Catalog as a JSON document string (task_id, level, family, variant,
// variable name/range, per-value budget).
std::string catalog_json(const BudgetConfig& config = {});

}  // namespace gridbench
