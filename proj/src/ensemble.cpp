#include "enaqt/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "enaqt/errors.hpp"
#include "enaqt/lindblad.hpp"
#include "enaqt/observables.hpp"
#include "enaqt/solver.hpp"

namespace enaqt {

std::string to_string(SweepParameter p) {
  switch (p) {
    case SweepParameter::GammaDeph: return "gamma_deph";
    case SweepParameter::GammaInj: return "gamma_inj";
    case SweepParameter::GammaExt: return "gamma_ext";
    case SweepParameter::WOverT: return "W_over_t";
    case SweepParameter::UOverT: return "U_over_t";
    case SweepParameter::BarrierHeightOverT: return "barrier_height_over_t";
    case SweepParameter::IExt: return "i_ext";
  }
  return "unknown";
}

std::optional<SweepParameter> parse_sweep_parameter(const std::string& name) {
  for (auto p : {SweepParameter::GammaDeph, SweepParameter::GammaInj, SweepParameter::GammaExt,
                 SweepParameter::WOverT, SweepParameter::UOverT,
                 SweepParameter::BarrierHeightOverT, SweepParameter::IExt})
    if (to_string(p) == name) return p;
  return std::nullopt;
}

std::vector<double> log_grid(double lo, double hi, int points) {
  if (!(lo > 0) || !(hi > lo) || points < 2)
    throw ArgumentError("log_grid: need 0 < lo < hi and at least 2 points");
  std::vector<double> grid(points);
  const double a = std::log10(lo), b = std::log10(hi);
  for (int k = 0; k < points; ++k) grid[k] = std::pow(10.0, a + (b - a) * k / (points - 1));
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

std::vector<double> linear_grid(double lo, double hi, int points) {
  if (!(hi > lo) || points < 2)
    throw ArgumentError("linear_grid: need lo < hi and at least 2 points");
  std::vector<double> grid(points);
  for (int k = 0; k < points; ++k) grid[k] = lo + (hi - lo) * k / (points - 1);
  grid.back() = hi;
  return grid;
}

void apply_axis_value(ChainSpec& spec, SweepParameter p, double value) {
  switch (p) {
    case SweepParameter::GammaDeph: spec.gamma_deph = value; break;
    case SweepParameter::GammaInj: spec.gamma_inj = value; break;
    case SweepParameter::GammaExt: spec.gamma_ext = value; break;
    case SweepParameter::WOverT: spec.W = value * spec.t; break;
    case SweepParameter::UOverT: spec.U = value * spec.t; break;
    case SweepParameter::BarrierHeightOverT: {
      Barrier b = spec.barrier.value_or(Barrier{});
      b.height = value * spec.t;
      spec.barrier = b;
      break;
    }
    case SweepParameter::IExt: {
      const double rounded = std::round(value);
      if (rounded != value) throw ArgumentError("i_ext axis values must be integers");
      spec.i_ext = static_cast<int>(rounded);
      break;
    }
  }
}

void SweepSpec::validate() const {
  base.validate();
  if (realizations < 1) throw ArgumentError("SweepSpec: realizations must be >= 1");
  auto check_axis = [&](const SweepAxis& axis, const char* which) {
    if (axis.values.empty()) throw ArgumentError(std::string("SweepSpec: ") + which + " grid is empty");
    bool increasing = true, decreasing = true;
    for (std::size_t k = 1; k < axis.values.size(); ++k) {
      increasing = increasing && axis.values[k] > axis.values[k - 1];
      decreasing = decreasing && axis.values[k] < axis.values[k - 1];
    }
    if (!increasing && !decreasing)
      throw ArgumentError(std::string("SweepSpec: ") + which + " grid must be strictly monotone");
    for (double v : axis.values) {
      ChainSpec probe = base;
      apply_axis_value(probe, axis.parameter, v);
      probe.validate();
    }
  };
  check_axis(axis1, "axis1");
  if (axis2) {
    if (axis2->parameter == axis1.parameter)
      throw ArgumentError("SweepSpec: axis1 and axis2 vary the same parameter");
    check_axis(*axis2, "axis2");
  }
}

const SweepPoint& SweepResult::at(std::size_t i1, std::size_t i2) const {
  return points.at(i2 * spec.axis1.values.size() + i1);
}

bool SweepResult::any_failed() const {
  return std::any_of(points.begin(), points.end(), [](const SweepPoint& p) { return p.failed; });
}

namespace {

struct Sample {
  bool ok = false;
  double J = 0.0, N_total = 0.0, delta_n = 0.0, ipr = 0.0;
  Eigen::VectorXd n, eigen_pops, diag;
};

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

template <typename Get>
Stat reduce(const std::vector<Sample>& samples, Get get) {
  CompensatedSum sum;
  int count = 0;
  for (const auto& s : samples)
    if (s.ok) {
      sum.add(get(s));
      ++count;
    }
  if (count == 0) return {std::nan(""), std::nan("")};
  const double mean = sum.value() / count;
  if (count == 1) return {mean, 0.0};
  CompensatedSum sq;
  for (const auto& s : samples)
    if (s.ok) {
      const double dev = get(s) - mean;
      sq.add(dev * dev);
    }
  return {mean, std::sqrt(sq.value() / (count - 1) / count)};
}

std::vector<Stat> reduce_vector(const std::vector<Sample>& samples, Eigen::Index size,
                                Eigen::VectorXd Sample::*field) {
  std::vector<Stat> out;
  for (Eigen::Index k = 0; k < size; ++k)
    out.push_back(reduce(samples, [&](const Sample& s) { return (s.*field)[k]; }));
  return out;
}

SweepPoint reduce_point(const std::vector<Sample>& samples, const FockBasis& basis) {
  SweepPoint p;
  for (const auto& s : samples) (s.ok ? p.realizations : p.failures) += 1;
  p.failed = p.failures > kMaxFailureFraction * static_cast<double>(samples.size());
  p.J = reduce(samples, [](const Sample& s) { return s.J; });
  p.N_total = reduce(samples, [](const Sample& s) { return s.N_total; });
  p.delta_n = reduce(samples, [](const Sample& s) { return s.delta_n; });
  p.ipr = reduce(samples, [](const Sample& s) { return s.ipr; });
  p.populations = reduce_vector(samples, basis.n_sites(), &Sample::n);
  if (basis.n_max() == 1) p.eigen_pops = reduce_vector(samples, basis.n_sites(), &Sample::eigen_pops);
  p.state_diagonal =
      reduce_vector(samples, static_cast<Eigen::Index>(basis.dim()), &Sample::diag);
  return p;
}

Sample solve_one(const ChainSpec& spec, const FockBasis& basis, std::uint64_t master_seed,
                 std::uint64_t realization) {
  const DisorderRealization real = sample_disorder(spec, master_seed, realization);
  const EigenStructure eig = eigen_decompose(spec, real);
  Sample s;
  s.ipr = ipr(eig);
  try {
    const OperatorMatrix h = build_hamiltonian(spec, real, basis);
    const auto diss = build_dissipators(spec, basis);
    const SteadyState ss = steady_state(build_liouvillian(h, diss));
    const ObservableSet obs = compute_observables(ss.rho, basis, diss, eig);
    s.ok = true;
    s.J = obs.J;
    s.N_total = obs.N_total;
    s.delta_n = obs.delta_n;
    s.n = obs.n;
    s.eigen_pops = obs.eigen_pops;
    s.diag = obs.state_diagonal;
  } catch (const NumericError&) {
    s.ok = false;
  }
  return s;
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec, int jobs) {
  spec.validate();
  const FockBasis basis(spec.base.L, spec.base.n_max);

  const std::size_t n1 = spec.axis1.values.size();
  const std::size_t n2 = spec.axis2 ? spec.axis2->values.size() : 1;
  const std::size_t n_points = n1 * n2;
  const auto R = static_cast<std::size_t>(spec.realizations);

  std::vector<ChainSpec> chains(n_points, spec.base);
  for (std::size_t i2 = 0; i2 < n2; ++i2)
    for (std::size_t i1 = 0; i1 < n1; ++i1) {
      ChainSpec& c = chains[i2 * n1 + i1];
      if (spec.axis2) apply_axis_value(c, spec.axis2->parameter, spec.axis2->values[i2]);
      apply_axis_value(c, spec.axis1.parameter, spec.axis1.values[i1]);
    }

  // Work is split into chunks of realizations; the thread completing the last
  // chunk of a point reduces it and releases its samples.
  constexpr std::size_t kChunk = 32;
  const std::size_t chunks_per_point = (R + kChunk - 1) / kChunk;
  const std::size_t n_items = n_points * chunks_per_point;

  std::vector<std::vector<Sample>> samples(n_points);
  std::vector<std::once_flag> allocated(n_points);
  std::vector<std::atomic<std::size_t>> remaining(n_points);
  for (auto& r : remaining) r.store(chunks_per_point);

  SweepResult result;
  result.spec = spec;
  result.points.resize(n_points);

  std::atomic<std::size_t> next{0};
  std::atomic<bool> abort{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t item = next.fetch_add(1);
      if (item >= n_items || abort.load()) return;
      const std::size_t point = item / chunks_per_point;
      const std::size_t first = (item % chunks_per_point) * kChunk;
      const std::size_t last = std::min(R, first + kChunk);
      try {
        std::call_once(allocated[point], [&] { samples[point].resize(R); });
        for (std::size_t r = first; r < last; ++r)
          samples[point][r] = solve_one(chains[point], basis, spec.master_seed, r);
        if (remaining[point].fetch_sub(1) == 1) {
          SweepPoint& p = result.points[point];
          p = reduce_point(samples[point], basis);
          p.axis1 = spec.axis1.values[point % n1];
          if (spec.axis2) p.axis2 = spec.axis2->values[point / n1];
          std::vector<Sample>().swap(samples[point]);
        }
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        abort.store(true);
        return;
      }
    }
  };

  const int n_threads = std::max(1, jobs);
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int k = 0; k < n_threads; ++k) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
  return result;
}

}  // namespace enaqt
