#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

// Small dense LP/IP toolkit sized for distance models (tens of rows, a few
// hundred columns). All problem data is integral; solutions are exact
// rationals, doubles, or integers depending on the entry point.
namespace irvm::lp {

inline constexpr std::int64_t kInfinity = std::numeric_limits<std::int64_t>::max();

enum class Sense { LessEqual, Equal, GreaterEqual };

struct Column {
  std::string name;
  std::int64_t cost = 0;
  std::int64_t lower = 0;
  std::int64_t upper = kInfinity;
};

struct Term {
  int column;
  std::int64_t coef;
};

struct Row {
  std::string name;
  std::vector<Term> terms;
  Sense sense = Sense::LessEqual;
  std::int64_t rhs = 0;
};

/// minimize cost.x subject to the rows and lower <= x <= upper.
struct Problem {
  std::vector<Column> columns;
  std::vector<Row> rows;

  int add_column(std::string name, std::int64_t cost, std::int64_t lower, std::int64_t upper);
  void add_row(Row row) { rows.push_back(std::move(row)); }

  /// Exact check of bounds and every row.
  bool is_feasible(std::span<const std::int64_t> x) const;
  std::int64_t objective(std::span<const std::int64_t> x) const;

  /// CPLEX-style LP text (objective, constraints, bounds).
  std::string to_text(const std::string& comment = {}) const;
};

enum class Status { Optimal, Infeasible, Unbounded };

struct ExactSolution {
  Status status = Status::Infeasible;
  mpq_class objective;
  std::vector<mpq_class> values;
  std::vector<mpq_class> duals;
  int iterations = 0;
};

struct FloatSolution {
  Status status = Status::Infeasible;
  double objective = 0.0;
  std::vector<double> values;
  std::vector<double> duals;
  int iterations = 0;
};

/// Two-phase bounded simplex over GMP rationals.
ExactSolution solve_exact(const Problem& problem);

/// Same algorithm in double precision.
FloatSolution solve_float(const Problem& problem);

/// Lagrangian bound y.b + sum_j min_{x_j in [l_j,u_j]} (c_j - y.A_j) x_j,
/// evaluated exactly after projecting `duals` onto their sign constraints.
/// Valid for any input multipliers; nullopt when it is -infinity.
std::optional<mpq_class> dual_bound(const Problem& problem, std::span<const double> duals);

enum class Arithmetic {
  Exact,      ///< rational simplex everywhere
  Certified,  ///< floating simplex, bound certified by an exact dual bound,
              ///< rational simplex whenever the two disagree
  Float,      ///< floating simplex, ceil(z - 1e-6)
};

struct Counters {
  std::int64_t lp_solves = 0;
  std::int64_t exact_fallbacks = 0;
  std::int64_t branch_nodes = 0;
};

/// Ceiling of the LP relaxation optimum; nullopt if infeasible. Requires
/// integral costs for the ceiling to be meaningful as an integer bound.
std::optional<std::int64_t> relaxation_ceiling(const Problem& problem, Arithmetic arithmetic,
                                               Counters* counters = nullptr);

struct IntegerSolution {
  std::int64_t objective = 0;
  std::vector<std::int64_t> values;
};

/// Depth-first branch and bound on every column. Returns the optimum if it is
/// strictly below `cutoff`, nullopt otherwise (including infeasible).
std::optional<IntegerSolution> solve_integer(const Problem& problem, Arithmetic arithmetic,
                                             std::int64_t cutoff = kInfinity,
                                             Counters* counters = nullptr);

}  // namespace irvm::lp
