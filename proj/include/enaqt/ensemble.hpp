#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "enaqt/model.hpp"

namespace enaqt {

// Parameters a sweep axis may vary. Disorder and interaction are given in
// units of t; rates in s^-1.
enum class SweepParameter {
  GammaDeph,
  GammaInj,
  GammaExt,
  WOverT,
  UOverT,
  BarrierHeightOverT,
  IExt,
};

std::string to_string(SweepParameter p);
std::optional<SweepParameter> parse_sweep_parameter(const std::string& name);

struct SweepAxis {
  SweepParameter parameter = SweepParameter::GammaDeph;
  std::vector<double> values;
};

std::vector<double> log_grid(double lo, double hi, int points);
std::vector<double> linear_grid(double lo, double hi, int points);

// Applies one axis value to a chain (W_over_t and U_over_t use the chain's t).
void apply_axis_value(ChainSpec& spec, SweepParameter p, double value);

struct SweepSpec {
  std::string name = "sweep";
  ChainSpec base;
  SweepAxis axis1;
  std::optional<SweepAxis> axis2;
  int realizations = 1;
  std::uint64_t master_seed = 1;

  void validate() const;
};

struct Stat {
  double mean = 0.0;
  double std_error = 0.0;
};

struct SweepPoint {
  double axis1 = 0.0;
  std::optional<double> axis2;
  int realizations = 0;  // successful solves
  int failures = 0;      // solver errors (degenerate kernel, positivity)
  bool failed = false;   // failures exceed 1% of attempts
  Stat J, N_total, delta_n, ipr;
  std::vector<Stat> populations;     // per site
  std::vector<Stat> eigen_pops;      // per eigenstate, n_max = 1 only
  std::vector<Stat> state_diagonal;  // per Fock state
};

/// Grid of disorder-averaged observables. Points are ordered with axis2 as
/// the outer loop and axis1 as the inner loop.
struct SweepResult {
  SweepSpec spec;
  std::vector<SweepPoint> points;

  const SweepPoint& at(std::size_t i1, std::size_t i2 = 0) const;
  bool any_failed() const;
};

constexpr double kMaxFailureFraction = 0.01;

/// Runs every (grid point, realization) solve on `jobs` worker threads.
/// Realization r of every grid point uses disorder drawn from
/// (master_seed, r), so points share their disorder samples. Reduction runs in
/// a fixed order after all solves finish: results are bit-identical for any
/// worker count.
SweepResult run_sweep(const SweepSpec& spec, int jobs = 1);

}  // namespace enaqt
