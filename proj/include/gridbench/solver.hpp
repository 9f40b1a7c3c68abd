#pragma once

#include "gridbench/grid.hpp"
#include "gridbench/taxonomy.hpp"

namespace gridbench {

// Fixed color conventions shared by generators and solvers. Constant across
// all episodes of a task so the latent rule stays inferable from train pairs.
namespace colors {
inline constexpr CellValue wall = 5;
inline constexpr CellValue obstacle = 5;
inline constexpr CellValue agent = 2;
inline constexpr CellValue goal = 3;
inline constexpr CellValue trail = 4;
inline constexpr CellValue emitter = 2;
inline constexpr CellValue ray_marker = 3;
inline constexpr CellValue ray = 4;
inline constexpr CellValue count_target = 3;
inline constexpr CellValue count_all_bar = 5;
}  // namespace colors

enum class MoveDirection { up, down, left, right, upper_right };
enum class RotationPivot { endpoint, center };
enum class SortKey { height, width };
enum class SortDirection { ascending, descending };

MoveDirection move_direction_from_variant(const std::string& variant);
Coord move_step(MoveDirection dir);

// Family-specific solver payload; `value` is the task's dynamic variable.
struct SolverParams {
    int value = 0;
};

// --- family solvers (pure functions; preconditions are generator-enforced
// and rechecked by the dispatching solve()) ---

Grid solve_move(const Grid& input, MoveDirection direction, int distance);
Grid solve_rotation(const Grid& input, RotationPivot pivot, int quarter_turns);
Grid solve_symmetry(const Grid& input, MirrorAxis axis);
Grid solve_size(const Grid& input, const std::string& variant);
Grid solve_count(const Grid& input, const std::string& variant);
Grid solve_shape(const Grid& input, const std::string& variant);
Grid solve_categorization(const Grid& input, const std::string& variant);
Grid solve_sort(const Grid& input, SortKey key, SortDirection direction);
Grid solve_planning(const Grid& input, int step_count);
Grid solve_gravity(const Grid& input, int applications);
Grid solve_reflection(const Grid& input, int bounces);
Grid solve_expansion(const Grid& input, int applications);

// Checks the task's constraint set; throws ConstraintViolated with the
// failed predicate named.
void validate_input(const TaskSpec& task, int variable_value, const Grid& input);

// Validates, then dispatches to the family solver.
Grid solve(const TaskSpec& task, int variable_value, const Grid& input);

// The single nonzero component of a grid (any-color connectivity).
// Throws ConstraintViolated unless exactly one exists.
GridObject single_object(const Grid& grid);

}  // namespace gridbench
