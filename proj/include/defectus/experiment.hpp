#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "defectus/bounds.hpp"
#include "defectus/classifier.hpp"

namespace defectus {

enum class Mode { monte_carlo, census };

struct ExperimentConfig {
  BoundInputs inputs;
  Mode mode = Mode::monte_carlo;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
  /// Seed of the modulus search when q is not prime.
  std::uint64_t field_seed = 0;
  unsigned threads = 1;
  double confidence = 0.99;
  std::uint64_t budget = 0;  // 0: enumeration_budget()
  bool randomized = false;
  /// Witness search on certified-irreducible systems too.
  bool audit = false;
  /// Census only: one CSV row per system when nonempty.
  std::string csv_path;
};

/// Per-outcome counts; merging is commutative and associative.
struct Tally {
  std::uint64_t total = 0;
  std::uint64_t in_B0 = 0;
  std::uint64_t in_B1 = 0;
  std::uint64_t in_B2_lower = 0;
  std::uint64_t in_B2_upper = 0;
  std::uint64_t regular_sequence = 0;
  std::uint64_t ideal_theoretic_ci = 0;
  std::uint64_t certified_irreducible = 0;
  std::uint64_t certified_reducible = 0;
  std::uint64_t undetermined = 0;
  std::uint64_t in_L = 0;
  std::vector<std::uint64_t> degree_drop;  // per i
  std::uint64_t in_piW_rs = 0;
  std::uint64_t in_piW_rs1 = 0;
  /// full degrees, not B_0, fiber_dim <= r-s-1, yet not ITCI
  std::uint64_t cover_violations_B1 = 0;
  /// full degrees, not B_0, fiber_dim <= r-s-2, yet not ITCI or a witness
  std::uint64_t cover_violations_B2 = 0;
  /// randomized subtests: wrong answers in the forced direction, and
  /// threshold disagreements with the exact fiber dimension
  std::uint64_t randomized_forced_violations = 0;
  std::uint64_t randomized_disagreements = 0;
  std::uint64_t randomized_checks = 0;

  void add(const ClassificationReport& rep);
  Tally& operator+=(const Tally& other);
  friend bool operator==(const Tally&, const Tally&) = default;
  nlohmann::json to_json() const;
};

struct Interval {
  double lower = 0;
  double upper = 1;
};

/// Exact binomial intervals for x successes in n trials.
Interval clopper_pearson(std::uint64_t x, std::uint64_t n, double confidence);
/// One-sided upper bound: P(X <= x | p = upper) = 1 - confidence.
double clopper_pearson_upper(std::uint64_t x, std::uint64_t n, double confidence);

enum class Verdict { PASS, FAIL, VACUOUS_PASS, INAPPLICABLE };
std::string to_string(Verdict v);

struct EstimateReport {
  ExperimentConfig config;
  std::string field;
  BoundReport bounds;
  Tally tally;
  /// Census: exact fractions; Monte Carlo: point estimates.
  Rational p1_hat;
  Rational p2_lower;
  Rational p2_upper;
  Interval p1_interval;     // two-sided
  double p1_upper = 1;      // one-sided, used for the verdict
  double p2_upper_bound = 1; // one-sided upper on the p2 upper bracket
  Verdict verdict_B1 = Verdict::INAPPLICABLE;
  Verdict verdict_B2 = Verdict::INAPPLICABLE;
  double wall_seconds = 0;

  nlohmann::json to_json(bool with_meta = true) const;
};

Field field_for(const ExperimentConfig& config);

/// Every coefficient of every monomial of degree <= d_i, uniform and
/// independent; monomials in descending grevlex, F_1 first.
PolySystem sample_system(const BoundInputs& inputs, const Field& field, std::mt19937_64& rng);

/// The census ordering: coefficient vector of system `index` read in base q,
/// first coefficient most significant.
PolySystem census_system(const BoundInputs& inputs, const Field& field, std::uint64_t index);

EstimateReport run_monte_carlo(const ExperimentConfig& config);
EstimateReport run_census(const ExperimentConfig& config);
EstimateReport run_experiment(const ExperimentConfig& config);

struct LinearOracle {
  BigInt total;          // q^{s(r+1)}
  BigInt rank_deficient; // s x r coefficient matrices of rank < s
  BigInt in_B1;          // rank_deficient * q^s
  BigInt in_B2;          // equal to in_B1 in the linear case
};

/// Counts for all-linear caps from Gaussian binomials, independent of the
/// Gröbner machinery.
LinearOracle linear_census_oracle(const BoundInputs& inputs);

}  // namespace defectus
