#ifndef GENDIRECT_PROBLEMS_HPP
#define GENDIRECT_PROBLEMS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "gendirect/engine.hpp"

namespace gendirect {

/// A benchmark objective with its known optimum and classification tags.
struct TestProblem {
    std::string name;
    Objective objective;
    int n = 0;
    std::vector<double> a, b;
    double f_star = 0.0;
    std::vector<double> x_star;
    bool separable = false;
    bool multimodal = false;
    bool scalable = false;

    OptProblem to_opt_problem() const;
};

/// Names of all built-in problems.
std::vector<std::string> problem_names();

/// Instantiates a built-in problem; n = 0 takes the problem's default
/// dimension; scalable problems accept any n >= 1. The known optimum is
/// re-verified (f(x*) = f* within 1e-9) on every instantiation.
TestProblem make_problem(const std::string& name, int n = 0);

/// All built-ins matching a tag filter: "", "all", "separable", "multimodal",
/// "scalable", "unimodal". Unknown keys are an error.
std::vector<TestProblem> builtin_suite(const std::string& filter = "");

/// Deterministic description of one randomized shift.
struct ShiftSpec {
    std::uint64_t seed = 0;
    std::vector<double> direction;  // unit-normalized
    std::vector<double> rates;      // per-dimension, in [0, 0.1]
    double step = 0.0;              // largest feasible step along direction
};

/// Largest lambda with a <= x_star + lambda * v <= b, in closed form.
/// Coordinates with v_j = 0 contribute no constraint.
double max_step(const std::vector<double>& x_star, const std::vector<double>& v,
                const std::vector<double>& a, const std::vector<double>& b);

ShiftSpec draw_shift(const TestProblem& p, std::uint64_t seed);

/// Applies the shift: the returned problem evaluates the original objective
/// at the clamped pre-image, so its minimizer moves to x* + rates*(step*v)
/// while the optimal value stays f*.
TestProblem apply_shift(const TestProblem& p, const ShiftSpec& spec);

TestProblem shift_problem(const TestProblem& p, std::uint64_t seed);

}  // namespace gendirect

#endif  // GENDIRECT_PROBLEMS_HPP
