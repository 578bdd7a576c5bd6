#include "defectus/classifier.hpp"

#include <stdexcept>

#include "defectus/random.hpp"

namespace defectus {

std::string to_string(Irreducibility v) {
  switch (v) {
    case Irreducibility::CertifiedIrreducible: return "CertifiedIrreducible";
    case Irreducibility::CertifiedReducible: return "CertifiedReducible";
    case Irreducibility::Undetermined: return "Undetermined";
  }
  return "Undetermined";
}

nlohmann::json ClassificationReport::to_json() const {
  nlohmann::json j;
  j["r"] = r;
  j["s"] = s;
  j["degree_full"] = degree_full;
  j["in_L"] = in_L;
  j["in_B0"] = in_B0;
  j["regular_sequence"] = regular_sequence;
  j["failing_index"] = failing_index ? nlohmann::json(*failing_index) : nlohmann::json(nullptr);
  j["set_theoretic_ci"] = set_theoretic_ci;
  j["ideal_theoretic_ci"] = ideal_theoretic_ci;
  j["affine_dim"] = affine_dim;
  j["fiber_dim"] = fiber_dim;
  j["in_piW_rs"] = in_piW_rs;
  j["in_piW_rs1"] = in_piW_rs1;
  j["irreducibility"] = to_string(irreducibility);
  if (witness) {
    j["witness"] = {{"index", witness->index}, {"g", witness->g.to_json()}, {"h", witness->h.to_json()}};
  } else {
    j["witness"] = nullptr;
  }
  j["in_B1"] = in_B1;
  j["in_B2_lower"] = in_B2_lower;
  j["in_B2_upper"] = in_B2_upper;
  if (randomized) {
    j["randomized"] = {{"kollar_piW_rs", randomized->kollar_piW_rs},
                       {"kollar_piW_rs1", randomized->kollar_piW_rs1},
                       {"combo1_dim", randomized->combo1_dim},
                       {"combo2_dim", randomized->combo2_dim}};
  }
  return j;
}

bool in_B0(const PolySystem& system) {
  return system.all_degrees_full() && groebner(system.polys()).is_unit();
}

RegularSequenceResult is_regular_sequence(const PolySystem& system) {
  const Field& F = system.field();
  const unsigned r = system.r();
  std::optional<GroebnerBasis> prev;
  for (unsigned i = 0; i < system.s(); ++i) {
    const Poly& f = system[i];
    if (f.is_zero()) return {false, i + 1};
    if (prev && !(colon_ideal(*prev, f) == *prev)) return {false, i + 1};
    std::vector<Poly> prefix(system.polys().begin(), system.polys().begin() + i + 1);
    GroebnerBasis cur = groebner(F, r, prefix);
    if (cur.is_unit()) return {false, i + 1};
    prev = std::move(cur);
  }
  return {true, std::nullopt};
}

bool initial_form_criterion(const PolySystem& system) {
  if (!system.all_degrees_full()) throw InvalidArgument("initial_form_criterion needs full degrees");
  const auto forms = system.initial_forms();
  const int expected = static_cast<int>(system.r()) - 1 - static_cast<int>(system.s());
  return projective_dimension(groebner(forms)) == expected;
}

namespace {

bool radical_given_regular(const PolySystem& system) {
  std::vector<Poly> gens = system.polys();
  for (auto& m : jacobian_minors(system.polys())) gens.push_back(std::move(m));
  const int bound = static_cast<int>(system.r()) - static_cast<int>(system.s()) - 1;
  return ideal_dimension(groebner(system.field(), system.r(), gens)) <= bound;
}

}  // namespace

bool is_radical_ci(const PolySystem& system) {
  if (!is_regular_sequence(system).regular) throw InvalidArgument("is_radical_ci needs a regular sequence");
  return radical_given_regular(system);
}

std::vector<Poly> fiber_generators(const PolySystem& system) {
  std::vector<Poly> gens = system.homogenized();
  const std::vector<Poly> hom = gens;
  for (auto& m : jacobian_minors(hom)) gens.push_back(std::move(m));
  return gens;
}

int fiber_dimension(const PolySystem& system) {
  return projective_dimension(groebner(system.field(), system.r() + 1, fiber_generators(system)));
}

namespace {

std::optional<Poly> try_divide(const Poly& f, const Poly& g) {
  try {
    return divide_exact(f, g);
  } catch (const InvalidArgument&) {
    return std::nullopt;
  }
}

// Linear candidates x_j + sum_{k>j} a_k x_k + a_0, visited in a fixed order.
template <class Visit>
bool for_each_linear(const Field& F, unsigned r, Visit&& visit) {
  const std::uint64_t q = F.order();
  for (unsigned j = 0; j < r; ++j) {
    const unsigned free = r - 1 - j + 1;  // trailing variables plus the constant
    std::vector<std::uint64_t> digits(free, 0);
    while (true) {
      std::vector<Term> terms{{Monomial::variable(j), F.one()}};
      for (unsigned k = 0; k + 1 < free; ++k)
        if (digits[k]) terms.push_back({Monomial::variable(j + 1 + k), F.element(digits[k])});
      if (digits[free - 1]) terms.push_back({Monomial{}, F.element(digits[free - 1])});
      if (visit(Poly::from_terms(F, r, std::move(terms)))) return true;
      unsigned pos = 0;
      while (pos < free && ++digits[pos] == q) digits[pos++] = 0;
      if (pos == free) break;
    }
  }
  return false;
}

}  // namespace

std::optional<ReducibilityWitness> find_reducibility_witness(const PolySystem& system, const GroebnerBasis& ideal,
                                                             std::uint64_t budget) {
  const Field& F = system.field();
  const unsigned r = system.r();
  std::optional<ReducibilityWitness> found;
  auto accept = [&](unsigned i, const Poly& g) {
    if (g.degree() < 1 || g.degree() >= system[i].degree()) return false;
    auto h = try_divide(system[i], g);
    if (!h) return false;
    if (ideal.contains(g) || ideal.contains(*h)) return false;
    found = ReducibilityWitness{i + 1, g, *h};
    return true;
  };

  // linear candidate count: sum_j q^{r-j}
  std::uint64_t candidates = 0;
  bool fits = true;
  {
    std::uint64_t qp = 1;
    for (unsigned j = 0; j < r && fits; ++j) {
      if (qp > budget / F.order()) fits = false;
      qp *= F.order();
      candidates += qp;
      if (candidates > budget) fits = false;
    }
  }

  for (unsigned i = 0; i < system.s(); ++i) {
    const Poly& f = system[i];
    if (f.degree() < 2) continue;
    for (unsigned j = 0; j < r; ++j)
      if (accept(i, Poly::variable(F, r, j))) return found;
    if (fits && for_each_linear(F, r, [&](const Poly& g) { return accept(i, g); })) return found;
  }
  return std::nullopt;
}

std::uint64_t system_stream_key(const PolySystem& system) { return fnv1a(system.to_json().dump()); }

bool kollar_dimension_test(const Field& field, unsigned nvars, std::span<const Poly> gens, unsigned d,
                           std::uint64_t seed) {
  if (d < 1) throw InvalidArgument("kollar_dimension_test needs d >= 1");
  const Field E = field.randomization_extension();
  auto rng = make_stream(seed, 0x6b6f6c6cULL);
  std::vector<Poly> cut;
  for (const auto& g : gens) cut.push_back(g.over(E));
  for (unsigned k = 0; k < d; ++k) {
    std::vector<Term> terms;
    for (unsigned v = 0; v < nvars; ++v) terms.push_back({Monomial::variable(v), uniform_element(E, rng)});
    cut.push_back(Poly::from_terms(E, nvars, std::move(terms)));
  }
  return !is_empty(groebner(E, nvars, cut), Geometry::projective);
}

int minor_combo_fiber_test(const PolySystem& system, unsigned count, std::uint64_t seed) {
  if (count != 1 && count != 2) throw InvalidArgument("minor_combo_fiber_test: count must be 1 or 2");
  const Field E = system.field().randomization_extension();
  auto rng = make_stream(seed, 0x636f6d62ULL);
  const unsigned n = system.r() + 1;
  const auto hom = system.homogenized();
  const auto minors = jacobian_minors(hom);
  std::vector<Poly> gens;
  for (const auto& f : hom) gens.push_back(f.over(E));
  for (unsigned c = 0; c < count; ++c) {
    Poly combo(E, n);
    for (const auto& m : minors) combo += m.over(E).scaled(uniform_element(E, rng));
    gens.push_back(std::move(combo));
  }
  return projective_dimension(groebner(E, n, gens));
}

ClassificationReport classify(const PolySystem& system, const ClassifyOptions& options) {
  ClassificationReport rep;
  const Field& F = system.field();
  const int r = static_cast<int>(system.r());
  const int s = static_cast<int>(system.s());
  rep.r = system.r();
  rep.s = system.s();
  for (unsigned i = 0; i < system.s(); ++i) rep.degree_full.push_back(system.degree_full(i));
  rep.in_L = !system.all_degrees_full();

  const GroebnerBasis ideal = groebner(F, system.r(), system.polys());
  rep.in_B0 = !rep.in_L && ideal.is_unit();
  rep.affine_dim = ideal_dimension(ideal);

  // Over a polynomial ring, a proper ideal generated by s elements has
  // dimension r-s iff they form a regular sequence (unmixedness).
  rep.set_theoretic_ci = !ideal.is_unit() && rep.affine_dim == r - s;
  if (options.colon_regular_sequence || !rep.set_theoretic_ci) {
    const auto reg = is_regular_sequence(system);
    rep.regular_sequence = reg.regular;
    rep.failing_index = reg.failing_index;
    if (rep.regular_sequence != rep.set_theoretic_ci)
      throw std::logic_error("regular sequence and dimension tests disagree");
  } else {
    rep.regular_sequence = true;
  }
  rep.ideal_theoretic_ci = rep.regular_sequence && radical_given_regular(system);

  rep.fiber_dim = fiber_dimension(system);
  rep.in_piW_rs = rep.fiber_dim >= r - s;
  rep.in_piW_rs1 = rep.fiber_dim >= r - s - 1;

  if (!rep.in_L && !rep.in_B0 && rep.fiber_dim <= r - s - 2) {
    rep.irreducibility = Irreducibility::CertifiedIrreducible;
    if (options.audit_witness && rep.ideal_theoretic_ci)
      rep.witness = find_reducibility_witness(system, ideal, options.witness_budget);
  } else if (rep.ideal_theoretic_ci) {
    rep.witness = find_reducibility_witness(system, ideal, options.witness_budget);
    if (rep.witness) rep.irreducibility = Irreducibility::CertifiedReducible;
  }

  rep.in_B1 = !rep.ideal_theoretic_ci;
  rep.in_B2_lower = rep.in_B1 || rep.irreducibility == Irreducibility::CertifiedReducible;
  rep.in_B2_upper = rep.irreducibility != Irreducibility::CertifiedIrreducible;

  if (options.randomized) {
    const std::uint64_t key = fnv1a(std::to_string(options.seed) + ":" + system.to_json().dump());
    const auto fiber = fiber_generators(system);
    ClassificationReport::Randomized rnd;
    rnd.kollar_piW_rs = r - s >= 1 && kollar_dimension_test(F, system.r() + 1, fiber, r - s, key);
    rnd.kollar_piW_rs1 = r - s - 1 >= 1 ? kollar_dimension_test(F, system.r() + 1, fiber, r - s - 1, key + 1)
                                        : !is_empty(groebner(F, system.r() + 1, fiber), Geometry::projective);
    rnd.combo1_dim = minor_combo_fiber_test(system, 1, key + 2);
    rnd.combo2_dim = minor_combo_fiber_test(system, 2, key + 3);
    rep.randomized = rnd;
  }
  return rep;
}

}  // namespace defectus
