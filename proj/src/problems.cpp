#include "cgpx/problems.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cgpx/rng.hpp"

namespace cgpx {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double koza1(double x) {
  const double x2 = x * x;
  return x2 * x2 + x2 * x + x2 + x;
}

double koza2(double x) {
  const double x2 = x * x;
  const double x3 = x2 * x;
  return x3 * x2 - 2.0 * x3 + x;
}

double koza3(double x) {
  const double x2 = x * x;
  const double x4 = x2 * x2;
  return x4 * x2 - 2.0 * x4 + x2;
}

double nguyen4(double x) {
  const double x2 = x * x;
  const double x3 = x2 * x;
  return x3 * x3 + x3 * x2 + x2 * x2 + x3 + x2 + x;
}

double nguyen5(double x) { return std::sin(x * x) * std::cos(x) - 1.0; }

double nguyen6(double x) { return std::sin(x) + std::sin(x + x * x); }

double nguyen7(double x) { return std::log(x + 1.0) + std::log(x * x + 1.0); }

// As printed in the source table: -20 exp(-0.2 x^2), no square root.
double ackley(double x) {
  return -20.0 * std::exp(-0.2 * x * x) - std::exp(std::cos(kTwoPi * x)) +
         20.0 + std::exp(1.0);
}

double rastrigin(double x) {
  return 10.0 + x * x - 10.0 * std::cos(kTwoPi * x);
}

// 1-D Levy in the w-substitution form, w = 1 + (x - 1)/4.
double levy(double x) {
  const double w = 1.0 + (x - 1.0) / 4.0;
  const double s1 = std::sin(std::numbers::pi * w);
  const double s2 = std::sin(2.0 * std::numbers::pi * w);
  return s1 * s1 + (w - 1.0) * (w - 1.0) * (1.0 + s2 * s2);
}

const std::vector<ProblemSpec> kSuite = {
    {"koza1", "x^4 + x^3 + x^2 + x", -1.0, 1.0, 30, koza1},
    {"koza2", "x^5 - 2x^3 + x", -1.0, 1.0, 30, koza2},
    {"koza3", "x^6 - 2x^4 + x^2", -1.0, 1.0, 30, koza3},
    {"nguyen4", "x^6 + x^5 + x^4 + x^3 + x^2 + x", -1.0, 1.0, 30, nguyen4},
    {"nguyen5", "sin(x^2) cos(x) - 1", -1.0, 1.0, 30, nguyen5},
    {"nguyen6", "sin(x) + sin(x + x^2)", -1.0, 1.0, 30, nguyen6},
    {"nguyen7", "ln(x + 1) + ln(x^2 + 1)", 0.0, 2.0, 30, nguyen7},
    {"ackley", "-20 exp(-0.2 x^2) - exp(cos(2 pi x)) + 20 + e", -32.768,
     32.768, 60, ackley},
    {"rastrigin", "10 + x^2 - 10 cos(2 pi x)", -5.12, 5.12, 60, rastrigin},
    {"levy", "sin^2(pi w) + (w - 1)^2 (1 + sin^2(2 pi w)), w = 1 + (x - 1)/4",
     -10.0, 10.0, 60, levy},
};

}  // namespace

const std::vector<ProblemSpec>& problem_suite() { return kSuite; }

const ProblemSpec* find_problem(std::string_view name) {
  for (const ProblemSpec& spec : kSuite) {
    if (spec.name == name) return &spec;
  }
  return nullptr;
}

double target_value(std::string_view problem, double x) {
  const ProblemSpec* spec = find_problem(problem);
  if (spec == nullptr) {
    throw std::invalid_argument("unknown problem: " + std::string(problem));
  }
  return spec->target(x);
}

Dataset make_dataset(std::string_view problem, std::uint64_t seed) {
  const ProblemSpec* spec = find_problem(problem);
  if (spec == nullptr) {
    throw std::invalid_argument("unknown problem: " + std::string(problem));
  }
  Rng rng(seed);
  const int n = spec->n_points;
  const int n_test = static_cast<int>(std::ceil(0.33 * n));
  const int n_train = n - n_test;
  Dataset ds;
  ds.problem = spec->name;
  ds.seed = seed;
  ds.train_x.reserve(n_train);
  ds.test_x.reserve(n_test);
  for (int k = 0; k < n; ++k) {
    const double x = rng.uniform(spec->lo, spec->hi);
    if (k < n_train) {
      ds.train_x.push_back(x);
      ds.train_y.push_back(spec->target(x));
    } else {
      ds.test_x.push_back(x);
      ds.test_y.push_back(spec->target(x));
    }
  }
  return ds;
}

}  // namespace cgpx
