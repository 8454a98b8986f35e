#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cgpx {

// One univariate regression benchmark: a target function sampled uniformly
// over a fixed domain.
struct ProblemSpec {
  std::string name;
  std::string formula;
  double lo = 0.0;
  double hi = 0.0;
  int n_points = 0;
  double (*target)(double) = nullptr;
};

// The built-in benchmark suite (Koza 1-3, Nguyen 4-7, Ackley, Rastrigin, Levy).
const std::vector<ProblemSpec>& problem_suite();

// nullptr when the name is unknown.
const ProblemSpec* find_problem(std::string_view name);

// Throws std::invalid_argument on unknown names.
double target_value(std::string_view problem, double x);

struct Dataset {
  std::string problem;
  std::uint64_t seed = 0;
  std::vector<double> train_x, train_y;
  std::vector<double> test_x, test_y;
};

// Samples n_points x-values uniformly from the problem domain; the last
// ceil(0.33 * n) points form the held-out test split. y is the exact target.
Dataset make_dataset(std::string_view problem, std::uint64_t seed);

}  // namespace cgpx
