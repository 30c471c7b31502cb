#include "core/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "core/errors.hpp"

namespace clab::measures {

FiniteDistribution FiniteDistribution::validate_and_build(std::vector<double> probs) {
  if (probs.empty()) fail(errc::not_normalizable, "empty probability vector");
  double sum = 0.0;
  for (double p : probs) {
    if (p < -1e-12) fail(errc::negative_mass, "entry " + std::to_string(p) + " < 0");
    sum += p;
  }
  if (sum <= 0.0) fail(errc::not_normalizable, "all-zero probability vector");
  if (std::abs(sum - 1.0) > 1e-9) {
    fail(errc::not_normalizable,
         "mass " + std::to_string(sum) + " deviates from 1 by more than 1e-9");
  }
  for (double& p : probs) p = std::max(p, 0.0) / sum;
  return FiniteDistribution(std::move(probs));
}

FiniteDistribution FiniteDistribution::uniform(std::size_t alphabet_size) {
  if (alphabet_size == 0) fail(errc::not_normalizable, "empty alphabet");
  return FiniteDistribution(std::vector<double>(alphabet_size, 1.0 / static_cast<double>(alphabet_size)));
}

FiniteDistribution FiniteDistribution::point_mass(std::size_t atom, std::size_t alphabet_size) {
  if (atom >= alphabet_size) fail(errc::symbol_out_of_range, "point mass atom outside alphabet");
  std::vector<double> p(alphabet_size, 0.0);
  p[atom] = 1.0;
  return FiniteDistribution(std::move(p));
}

FiniteDistribution FiniteDistribution::binary(double p_of_one) {
  if (p_of_one < 0.0 || p_of_one > 1.0) fail(errc::out_of_range, "binary parameter outside [0,1]");
  return FiniteDistribution({1.0 - p_of_one, p_of_one});
}

double FiniteDistribution::min_prob() const {
  return *std::min_element(probs_.begin(), probs_.end());
}

FiniteDistribution empirical_distribution(const std::vector<int>& sequence,
                                          std::size_t alphabet_size) {
  if (sequence.empty()) fail(errc::not_normalizable, "empty sequence");
  std::vector<double> counts(alphabet_size, 0.0);
  for (int s : sequence) {
    if (s < 0 || static_cast<std::size_t>(s) >= alphabet_size) {
      fail(errc::symbol_out_of_range,
           "symbol " + std::to_string(s) + " outside alphabet of size " + std::to_string(alphabet_size));
    }
    counts[static_cast<std::size_t>(s)] += 1.0;
  }
  const double n = static_cast<double>(sequence.size());
  for (double& c : counts) c /= n;
  return FiniteDistribution::validate_and_build(std::move(counts));
}

FiniteChannel FiniteChannel::from_rows(std::vector<std::vector<double>> rows) {
  if (rows.empty()) fail(errc::dimension_mismatch, "channel with no rows");
  std::vector<FiniteDistribution> built;
  built.reserve(rows.size());
  const std::size_t ny = rows[0].size();
  for (auto& r : rows) {
    if (r.size() != ny) fail(errc::dimension_mismatch, "ragged channel rows");
    built.push_back(FiniteDistribution::validate_and_build(std::move(r)));
  }
  return FiniteChannel(std::move(built));
}

FiniteChannel FiniteChannel::from_flat(const std::vector<double>& entries,
                                       std::size_t input_size, std::size_t output_size) {
  if (entries.size() != input_size * output_size) {
    fail(errc::dimension_mismatch, "flat channel entries do not match dimensions");
  }
  std::vector<std::vector<double>> rows(input_size);
  for (std::size_t x = 0; x < input_size; ++x) {
    rows[x].assign(entries.begin() + static_cast<std::ptrdiff_t>(x * output_size),
                   entries.begin() + static_cast<std::ptrdiff_t>((x + 1) * output_size));
  }
  return from_rows(std::move(rows));
}

FiniteChannel FiniteChannel::identity(std::size_t alphabet_size) {
  std::vector<std::vector<double>> rows(alphabet_size, std::vector<double>(alphabet_size, 0.0));
  for (std::size_t x = 0; x < alphabet_size; ++x) rows[x][x] = 1.0;
  return from_rows(std::move(rows));
}

FiniteChannel FiniteChannel::binary_symmetric(double crossover) {
  if (crossover < 0.0 || crossover > 1.0) fail(errc::out_of_range, "crossover outside [0,1]");
  return from_rows({{1.0 - crossover, crossover}, {crossover, 1.0 - crossover}});
}

FiniteDistribution FiniteChannel::push_forward(const FiniteDistribution& p_x) const {
  if (p_x.alphabet_size() != input_size()) fail(errc::dimension_mismatch, "input law does not match channel");
  std::vector<double> out(output_size(), 0.0);
  for (std::size_t x = 0; x < input_size(); ++x) {
    const double px = p_x[x];
    if (px == 0.0) continue;
    for (std::size_t y = 0; y < output_size(); ++y) out[y] += px * rows_[x][y];
  }
  return FiniteDistribution::validate_and_build(std::move(out));
}

FiniteChannel FiniteChannel::memoryless_extension(int n) const {
  if (n < 1) fail(errc::out_of_range, "blocklength must be >= 1");
  std::size_t nx = 1, ny = 1;
  for (int i = 0; i < n; ++i) {
    nx *= input_size();
    ny *= output_size();
    if (nx > kDenseCap || ny > kDenseCap) fail(errc::alphabet_too_large, "product alphabet exceeds dense cap");
  }
  std::vector<std::vector<double>> rows(nx, std::vector<double>(ny, 1.0));
  for (std::size_t xi = 0; xi < nx; ++xi) {
    // digits of xi, most significant first
    std::vector<int> xd(static_cast<std::size_t>(n));
    std::size_t rem = xi;
    for (int i = n - 1; i >= 0; --i) {
      xd[static_cast<std::size_t>(i)] = static_cast<int>(rem % input_size());
      rem /= input_size();
    }
    for (std::size_t yi = 0; yi < ny; ++yi) {
      std::size_t yrem = yi;
      double v = 1.0;
      for (int i = n - 1; i >= 0; --i) {
        const int yd = static_cast<int>(yrem % output_size());
        yrem /= output_size();
        v *= rows_[static_cast<std::size_t>(xd[static_cast<std::size_t>(i)])][static_cast<std::size_t>(yd)];
      }
      rows[xi][yi] = v;
    }
  }
  return from_rows(std::move(rows));
}

double FiniteChannel::sup_density_ratio(const FiniteDistribution& nu) const {
  if (nu.alphabet_size() != output_size()) fail(errc::dimension_mismatch, "reference measure does not match output");
  double alpha = 0.0;
  for (std::size_t x = 0; x < input_size(); ++x) {
    for (std::size_t y = 0; y < output_size(); ++y) {
      const double w = rows_[x][y];
      if (w == 0.0) continue;
      if (nu[y] == 0.0) return std::numeric_limits<double>::infinity();
      alpha = std::max(alpha, w / nu[y]);
    }
  }
  return std::max(alpha, 1.0);
}

BoundedDensityRatio make_bounded_density_ratio(const FiniteChannel& channel,
                                               const FiniteDistribution& nu) {
  return BoundedDensityRatio{channel.sup_density_ratio(nu), nu};
}

bool density_ratio_consistent(const BoundedDensityRatio& ratio, const FiniteChannel& channel) {
  const double recomputed = channel.sup_density_ratio(ratio.reference);
  if (std::isinf(ratio.alpha) && std::isinf(recomputed)) return true;
  return std::abs(recomputed - ratio.alpha) <= 1e-12 * std::max(1.0, std::abs(ratio.alpha));
}

std::uint64_t count_types(int n, int alphabet_size) {
  // C(n + k - 1, k - 1), saturating at uint64 max.
  std::uint64_t result = 1;
  const std::uint64_t cap = std::numeric_limits<std::uint64_t>::max();
  for (int i = 1; i <= alphabet_size - 1; ++i) {
    const std::uint64_t num = static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(i);
    if (result > cap / num) return cap;
    result = result * num / static_cast<std::uint64_t>(i);
  }
  return result;
}

namespace {

double log_multinomial(int n, const std::vector<int>& counts) {
  double v = std::lgamma(static_cast<double>(n) + 1.0);
  for (int c : counts) v -= std::lgamma(static_cast<double>(c) + 1.0);
  return v;
}

void enumerate_rec(int remaining, int slot, std::vector<int>& counts,
                   std::vector<TypeClass>& out, int n) {
  if (slot + 1 == static_cast<int>(counts.size())) {
    counts[static_cast<std::size_t>(slot)] = remaining;
    out.push_back(TypeClass{counts, log_multinomial(n, counts)});
    return;
  }
  for (int c = 0; c <= remaining; ++c) {
    counts[static_cast<std::size_t>(slot)] = c;
    enumerate_rec(remaining - c, slot + 1, counts, out, n);
  }
}

}  // namespace

std::vector<TypeClass> enumerate_types(int n, int alphabet_size, std::uint64_t max_types) {
  if (n < 1 || alphabet_size < 1) fail(errc::out_of_range, "need n >= 1 and alphabet_size >= 1");
  const std::uint64_t total = count_types(n, alphabet_size);
  if (total > max_types) {
    fail(errc::too_many_types,
         std::to_string(total) + " types exceeds cap " + std::to_string(max_types));
  }
  std::vector<TypeClass> out;
  out.reserve(static_cast<std::size_t>(total));
  std::vector<int> counts(static_cast<std::size_t>(alphabet_size), 0);
  enumerate_rec(n, 0, counts, out, n);
  return out;
}

std::size_t TestFunction::dense_size(int n, int output_size) {
  if (n < 1 || output_size < 1) fail(errc::out_of_range, "need n >= 1 and output_size >= 1");
  std::size_t size = 1;
  for (int i = 0; i < n; ++i) {
    if (size > kDenseCap / static_cast<std::size_t>(output_size)) {
      fail(errc::alphabet_too_large, "|Y|^n exceeds the dense cap 2^26");
    }
    size *= static_cast<std::size_t>(output_size);
  }
  return size;
}

TestFunction::TestFunction(std::vector<double> values, int n, int output_size)
    : values_(std::move(values)), n_(n), output_size_(output_size) {
  const std::size_t expected = dense_size(n, output_size);
  if (values_.size() != expected) {
    fail(errc::dimension_mismatch, "dense array length does not equal |Y|^n");
  }
  for (double v : values_) {
    if (!(v >= 0.0 && v <= 1.0)) fail(errc::out_of_range, "test function value outside [0,1]");
  }
}

TestFunction TestFunction::constant(double value, int n, int output_size) {
  return TestFunction(std::vector<double>(dense_size(n, output_size), value), n, output_size);
}

bool TestFunction::is_indicator() const {
  for (double v : values_) {
    if (v != 0.0 && v != 1.0) return false;
  }
  return true;
}

int TestFunction::digit(std::size_t idx, int coordinate) const {
  std::size_t div = 1;
  for (int i = n_ - 1; i > coordinate; --i) div *= static_cast<std::size_t>(output_size_);
  return static_cast<int>((idx / div) % static_cast<std::size_t>(output_size_));
}

GaussianPair make_gaussian_pair(double rho, double sigma_x, double sigma_y) {
  if (!(std::abs(rho) < 1.0)) fail(errc::out_of_range, "|rho| must be < 1");
  if (!(sigma_x > 0.0 && sigma_y > 0.0)) fail(errc::out_of_range, "sigmas must be positive");
  return GaussianPair{rho, sigma_x, sigma_y};
}

}  // namespace clab::measures
