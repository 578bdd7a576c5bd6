#include "defectus/resultant.hpp"

#include <algorithm>
#include <map>

#include "defectus/groebner.hpp"
#include "defectus/random.hpp"

namespace defectus {

namespace {

struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return grevlex_cmp(a, b) < 0; }
};

void validate(std::span<const Poly> system, std::span<const unsigned> degrees) {
  const std::size_t r = system.size();
  if (r < 2) throw InvalidArgument("resultant needs at least two forms");
  if (degrees.size() != r) throw InvalidArgument("one degree per form expected");
  for (std::size_t i = 0; i < r; ++i) {
    const Poly& f = system[i];
    if (f.nvars() != r) throw InvalidArgument("resultant needs r forms in r variables");
    if (!(f.field() == system[0].field())) throw InvalidArgument("forms over different fields");
    if (degrees[i] < 1) throw InvalidArgument("form degrees must be positive");
    for (const auto& t : f.terms())
      if (t.mono.degree() != degrees[i]) throw InvalidArgument("form is not homogeneous of its declared degree");
  }
}

}  // namespace

MacaulayMatrix macaulay_build(std::span<const Poly> system, std::span<const unsigned> degrees) {
  validate(system, degrees);
  const unsigned r = static_cast<unsigned>(system.size());
  const Field& F = system[0].field();
  MacaulayMatrix M;
  M.degrees.assign(degrees.begin(), degrees.end());
  unsigned D = 1;
  for (auto d : degrees) D += d - 1;
  M.critical_degree = D;
  M.monomials = monomials_of_degree(D, r);
  std::map<Monomial, std::size_t, MonomialLess> index;
  for (std::size_t k = 0; k < M.monomials.size(); ++k) index.emplace(M.monomials[k], k);

  const std::size_t n = M.monomials.size();
  M.numerator.assign(n, std::vector<Fel>(n, F.zero()));
  for (std::size_t k = 0; k < n; ++k) {
    const Monomial& m = M.monomials[k];
    unsigned owner = r, hits = 0;
    for (unsigned i = 0; i < r; ++i) {
      if (m[i] >= degrees[i]) {
        if (owner == r) owner = i;
        ++hits;
      }
    }
    // degree D exceeds sum(d_i - 1), so some x_i^{d_i} always divides m
    M.owner.push_back(owner);
    if (hits > 1) M.extraneous.push_back(k);
    const Monomial shift = m / Monomial::variable(owner, degrees[owner]);
    for (const auto& t : system[owner].terms()) M.numerator[k][index.at(t.mono * shift)] = t.coeff;
  }
  M.denominator.assign(M.extraneous.size(), std::vector<Fel>(M.extraneous.size(), F.zero()));
  for (std::size_t a = 0; a < M.extraneous.size(); ++a)
    for (std::size_t b = 0; b < M.extraneous.size(); ++b)
      M.denominator[a][b] = M.numerator[M.extraneous[a]][M.extraneous[b]];
  return M;
}

std::optional<Fel> macaulay_resultant(std::span<const Poly> system, std::span<const unsigned> degrees) {
  MacaulayMatrix M = macaulay_build(system, degrees);
  const Field& F = system[0].field();
  const Fel den = determinant(F, std::move(M.denominator));
  if (den.v == 0) return std::nullopt;
  return F.div(determinant(F, std::move(M.numerator)), den);
}

ResultantDecision resultant_decide(std::span<const Poly> system, std::span<const unsigned> degrees,
                                   std::uint64_t seed, unsigned max_changes) {
  validate(system, degrees);
  ResultantDecision out;
  if (auto res = macaulay_resultant(system, degrees)) {
    out.vanishes = res->v == 0;
    return out;
  }
  const Field& F = system[0].field();
  const unsigned r = static_cast<unsigned>(system.size());
  const Field E = F.randomization_extension();
  auto rng = make_stream(seed, 0x7265735fULL);
  for (unsigned attempt = 0; attempt < max_changes; ++attempt) {
    ++out.coordinate_changes;
    Matrix A;
    do {
      A.assign(r, std::vector<Fel>(r));
      for (auto& row : A)
        for (auto& v : row) v = uniform_element(E, rng);
    } while (determinant(E, A).v == 0);
    std::vector<Poly> images;
    for (unsigned i = 0; i < r; ++i) {
      std::vector<Term> terms;
      for (unsigned j = 0; j < r; ++j) terms.push_back({Monomial::variable(j), A[i][j]});
      images.push_back(Poly::from_terms(E, r, std::move(terms)));
    }
    std::vector<Poly> moved;
    for (const auto& f : system) moved.push_back(f.over(E).compose(images));
    if (auto res = macaulay_resultant(moved, degrees)) {
      out.vanishes = res->v == 0;
      out.path = ResultantDecision::Path::coordinate_change;
      return out;
    }
  }
  out.path = ResultantDecision::Path::groebner;
  out.vanishes = !is_empty(groebner(F, r, system), Geometry::projective);
  return out;
}

}  // namespace defectus
