#pragma once

#include <cstddef>
#include <vector>

namespace racmod {

// minimize sum_j x_j^p  subject to  sum_{j in row_i} x_j >= 1,  x >= 0.
// Rows hold distinct variable indices. p = 1 is a linear program.
struct PowerProgram {
  std::size_t variables = 0;
  std::vector<std::vector<int>> rows;
  double p = 2.0;
};

struct IpmOptions {
  double tolerance = 1e-12;
  int max_iterations = 300;
};

struct IpmResult {
  std::vector<double> x;
  std::vector<double> y;       // multipliers of the row constraints
  double objective = 0.0;      // sum x^p at x
  double dual_bound = 0.0;     // Lagrangian dual value at a feasible rescaling of y
  int iterations = 0;
  bool converged = false;
};

// Infeasible primal-dual path following with a Mehrotra corrector. Each
// Newton step is reduced to the rows-by-rows normal equations.
IpmResult solve_power_program(const PowerProgram& program, const IpmOptions& options = {});

}  // namespace racmod
