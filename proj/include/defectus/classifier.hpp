#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "defectus/groebner.hpp"
#include "defectus/poly.hpp"

namespace defectus {

enum class Irreducibility { CertifiedIrreducible, CertifiedReducible, Undetermined };

std::string to_string(Irreducibility v);

struct RegularSequenceResult {
  bool regular = false;
  /// 1-based index of the first F_i that is zero, a zero divisor, or makes
  /// the ideal improper.
  std::optional<unsigned> failing_index;
};

/// F_index = g * h with both factors outside the ideal, so
/// V = V(I + g) ∪ V(I + h) splits into two proper closed subsets.
struct ReducibilityWitness {
  unsigned index = 0;  // 1-based
  Poly g;
  Poly h;
};

struct ClassificationReport {
  unsigned r = 0;
  unsigned s = 0;
  std::vector<bool> degree_full;
  bool in_L = false;
  bool in_B0 = false;
  bool regular_sequence = false;
  std::optional<unsigned> failing_index;
  bool set_theoretic_ci = false;
  bool ideal_theoretic_ci = false;
  /// Affine dimension of V(F_s); -1 when empty.
  int affine_dim = -1;
  int fiber_dim = -1;
  bool in_piW_rs = false;
  bool in_piW_rs1 = false;
  Irreducibility irreducibility = Irreducibility::Undetermined;
  std::optional<ReducibilityWitness> witness;
  bool in_B1 = false;
  bool in_B2_lower = false;
  bool in_B2_upper = false;

  /// Randomized cross-checks, present only when requested.
  struct Randomized {
    bool kollar_piW_rs = false;
    bool kollar_piW_rs1 = false;
    int combo1_dim = -1;
    int combo2_dim = -1;
  };
  std::optional<Randomized> randomized;

  nlohmann::json to_json() const;
};

struct ClassifyOptions {
  /// Decide regular sequences by colon ideals even when the dimension
  /// characterization already settles it.
  bool colon_regular_sequence = false;
  bool randomized = false;
  std::uint64_t seed = 0;
  /// Upper limit on linear factor candidates tried per F_i in the
  /// reducibility witness search.
  std::uint64_t witness_budget = 1u << 16;
  /// Also run the witness search on certified-irreducible systems (a hit
  /// there would contradict the certificate).
  bool audit_witness = false;
};

bool in_B0(const PolySystem& system);

RegularSequenceResult is_regular_sequence(const PolySystem& system);

/// Sufficient condition for a regular sequence: the initial forms cut a
/// projective set of dimension r-1-s in P^{r-1}.  Requires full degrees.
bool initial_form_criterion(const PolySystem& system);

/// For a regular sequence: the ideal is radical iff the rank-deficient locus
/// of the affine Jacobian on V has dimension <= r-s-1.
bool is_radical_ci(const PolySystem& system);

/// Projective dimension of V(F^h, maximal minors of the homogenized
/// Jacobian) in P^r; -1 when empty.
int fiber_dimension(const PolySystem& system);

/// Generators of the fiber: F^h followed by all maximal minors.
std::vector<Poly> fiber_generators(const PolySystem& system);

/// Searches F_i = g h with g of degree one (monomial content, then linear
/// trial division when the candidate count fits the budget).  Only
/// meaningful for radical ideals.
std::optional<ReducibilityWitness> find_reducibility_witness(const PolySystem& system, const GroebnerBasis& ideal,
                                                             std::uint64_t budget);

ClassificationReport classify(const PolySystem& system, const ClassifyOptions& options = {});

/// One-sided test for dim V(gens) >= d in P^{nvars-1}: cut by d random
/// hyperplanes over F_{q^m} and test nonemptiness.  Never false when the
/// dimension really is >= d.
bool kollar_dimension_test(const Field& field, unsigned nvars, std::span<const Poly> gens, unsigned d,
                           std::uint64_t seed);

/// Projective dimension of V(F^h, Δ_λ1[, Δ_λ2]) for random combinations of
/// the homogenized minors; always >= fiber_dimension.
int minor_combo_fiber_test(const PolySystem& system, unsigned count, std::uint64_t seed);

/// Seed for the randomized subtests of one system.
std::uint64_t system_stream_key(const PolySystem& system);

}  // namespace defectus
