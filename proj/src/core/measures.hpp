#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace clab::measures {

// Probability vector over a finite alphabet. Entries are nonnegative and sum
// to one within 1e-12 after construction. Immutable.
class FiniteDistribution {
 public:
  // Validates and normalizes. Rejects entries below -1e-12 and inputs whose
  // sum deviates from 1 by more than 1e-9 before renormalization.
  static FiniteDistribution validate_and_build(std::vector<double> probs);

  static FiniteDistribution uniform(std::size_t alphabet_size);
  static FiniteDistribution point_mass(std::size_t atom, std::size_t alphabet_size);
  static FiniteDistribution binary(double p_of_one);

  std::size_t alphabet_size() const { return probs_.size(); }
  double operator[](std::size_t a) const { return probs_[a]; }
  const std::vector<double>& probs() const { return probs_; }

  double min_prob() const;

  bool operator==(const FiniteDistribution& other) const { return probs_ == other.probs_; }

 private:
  explicit FiniteDistribution(std::vector<double> probs) : probs_(std::move(probs)) {}
  std::vector<double> probs_;
};

// Empirical measure of a symbol sequence: count(a) / n.
FiniteDistribution empirical_distribution(const std::vector<int>& sequence,
                                          std::size_t alphabet_size);

// Row-stochastic matrix, rows indexed by the input symbol.
class FiniteChannel {
 public:
  static FiniteChannel from_rows(std::vector<std::vector<double>> rows);
  static FiniteChannel from_flat(const std::vector<double>& entries,
                                 std::size_t input_size, std::size_t output_size);
  static FiniteChannel identity(std::size_t alphabet_size);
  static FiniteChannel binary_symmetric(double crossover);

  std::size_t input_size() const { return rows_.size(); }
  std::size_t output_size() const { return rows_.empty() ? 0 : rows_[0].alphabet_size(); }
  double operator()(std::size_t x, std::size_t y) const { return rows_[x][y]; }
  const FiniteDistribution& row(std::size_t x) const { return rows_[x]; }

  // Output law of the channel under input law p_x.
  FiniteDistribution push_forward(const FiniteDistribution& p_x) const;

  // n-fold memoryless extension viewed over product alphabets, row-major in
  // both coordinates (coordinate 1 most significant). Refuses products whose
  // alphabet exceeds the dense-storage cap.
  FiniteChannel memoryless_extension(int n) const;

  // sup_x || dQ_{Y|X=x} / d nu ||_inf; +inf when the support is violated.
  double sup_density_ratio(const FiniteDistribution& nu) const;

 private:
  explicit FiniteChannel(std::vector<FiniteDistribution> rows) : rows_(std::move(rows)) {}
  std::vector<FiniteDistribution> rows_;
};

// Value of alpha together with the reference measure it was computed against.
struct BoundedDensityRatio {
  double alpha;
  FiniteDistribution reference;
};

// Recomputes alpha from the channel and checks it matches within 1e-12.
BoundedDensityRatio make_bounded_density_ratio(const FiniteChannel& channel,
                                               const FiniteDistribution& nu);
bool density_ratio_consistent(const BoundedDensityRatio& ratio, const FiniteChannel& channel);

// One composition of n into alphabet_size parts with its log multinomial
// coefficient ln C(n; counts).
struct TypeClass {
  std::vector<int> counts;
  double log_coefficient;
};

// All compositions of n into alphabet_size parts. Refuses enumerations larger
// than max_types.
std::vector<TypeClass> enumerate_types(int n, int alphabet_size,
                                       std::uint64_t max_types = 10'000'000);

std::uint64_t count_types(int n, int alphabet_size);

// Dense [0,1]-valued function on Y^n, row-major with coordinate 1 most
// significant. Dense storage is refused past 2^26 entries.
class TestFunction {
 public:
  TestFunction(std::vector<double> values, int n, int output_size);

  static TestFunction constant(double value, int n, int output_size);

  int n() const { return n_; }
  int output_size() const { return output_size_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t idx) const { return values_[idx]; }
  const std::vector<double>& values() const { return values_; }

  bool is_indicator() const;

  // Digit of idx at the given coordinate (0-based; coordinate 0 is the most
  // significant).
  int digit(std::size_t idx, int coordinate) const;

  static std::size_t dense_size(int n, int output_size);

 private:
  std::vector<double> values_;
  int n_;
  int output_size_;
};

inline constexpr std::size_t kDenseCap = std::size_t{1} << 26;

// Bivariate Gaussian parameters for the side-information source.
struct GaussianPair {
  double rho;
  double sigma_x;
  double sigma_y;
};

GaussianPair make_gaussian_pair(double rho, double sigma_x, double sigma_y);

}  // namespace clab::measures
