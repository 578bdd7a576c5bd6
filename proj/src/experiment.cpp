#include "defectus/experiment.hpp"

#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include <boost/math/distributions/beta.hpp>

#include "defectus/random.hpp"

namespace defectus {

namespace mp = boost::multiprecision;

void Tally::add(const ClassificationReport& rep) {
  const int r = static_cast<int>(rep.r), s = static_cast<int>(rep.s);
  ++total;
  in_B0 += rep.in_B0;
  in_B1 += rep.in_B1;
  in_B2_lower += rep.in_B2_lower;
  in_B2_upper += rep.in_B2_upper;
  regular_sequence += rep.regular_sequence;
  ideal_theoretic_ci += rep.ideal_theoretic_ci;
  certified_irreducible += rep.irreducibility == Irreducibility::CertifiedIrreducible;
  certified_reducible += rep.irreducibility == Irreducibility::CertifiedReducible;
  undetermined += rep.irreducibility == Irreducibility::Undetermined;
  in_L += rep.in_L;
  if (degree_drop.size() < rep.degree_full.size()) degree_drop.resize(rep.degree_full.size(), 0);
  for (std::size_t i = 0; i < rep.degree_full.size(); ++i) degree_drop[i] += !rep.degree_full[i];
  in_piW_rs += rep.in_piW_rs;
  in_piW_rs1 += rep.in_piW_rs1;

  const bool generic = !rep.in_L && !rep.in_B0;
  if (generic && rep.fiber_dim <= r - s - 1 && !rep.ideal_theoretic_ci) ++cover_violations_B1;
  if (generic && rep.fiber_dim <= r - s - 2 && (!rep.ideal_theoretic_ci || rep.witness)) ++cover_violations_B2;

  if (rep.randomized) {
    const auto& z = *rep.randomized;
    randomized_checks += 4;
    randomized_forced_violations += (rep.in_piW_rs && !z.kollar_piW_rs) + (rep.in_piW_rs1 && !z.kollar_piW_rs1) +
                                    (z.combo1_dim < rep.fiber_dim) + (z.combo2_dim < rep.fiber_dim);
    randomized_disagreements += (z.kollar_piW_rs != rep.in_piW_rs) + (z.kollar_piW_rs1 != rep.in_piW_rs1) +
                                ((z.combo1_dim >= r - s) != rep.in_piW_rs) +
                                ((z.combo2_dim >= r - s - 1) != rep.in_piW_rs1);
  }
}

Tally& Tally::operator+=(const Tally& o) {
  total += o.total;
  in_B0 += o.in_B0;
  in_B1 += o.in_B1;
  in_B2_lower += o.in_B2_lower;
  in_B2_upper += o.in_B2_upper;
  regular_sequence += o.regular_sequence;
  ideal_theoretic_ci += o.ideal_theoretic_ci;
  certified_irreducible += o.certified_irreducible;
  certified_reducible += o.certified_reducible;
  undetermined += o.undetermined;
  in_L += o.in_L;
  if (degree_drop.size() < o.degree_drop.size()) degree_drop.resize(o.degree_drop.size(), 0);
  for (std::size_t i = 0; i < o.degree_drop.size(); ++i) degree_drop[i] += o.degree_drop[i];
  in_piW_rs += o.in_piW_rs;
  in_piW_rs1 += o.in_piW_rs1;
  cover_violations_B1 += o.cover_violations_B1;
  cover_violations_B2 += o.cover_violations_B2;
  randomized_forced_violations += o.randomized_forced_violations;
  randomized_disagreements += o.randomized_disagreements;
  randomized_checks += o.randomized_checks;
  return *this;
}

nlohmann::json Tally::to_json() const {
  return {{"total", total},
          {"in_B0", in_B0},
          {"in_B1", in_B1},
          {"in_B2_lower", in_B2_lower},
          {"in_B2_upper", in_B2_upper},
          {"regular_sequence", regular_sequence},
          {"ideal_theoretic_ci", ideal_theoretic_ci},
          {"certified_A2", certified_irreducible},
          {"certified_reducible", certified_reducible},
          {"undetermined", undetermined},
          {"in_L", in_L},
          {"degree_drop", degree_drop},
          {"in_piW_rs", in_piW_rs},
          {"in_piW_rs1", in_piW_rs1},
          {"cover_violations_B1", cover_violations_B1},
          {"cover_violations_B2", cover_violations_B2},
          {"randomized_checks", randomized_checks},
          {"randomized_forced_violations", randomized_forced_violations},
          {"randomized_disagreements", randomized_disagreements}};
}

double clopper_pearson_upper(std::uint64_t x, std::uint64_t n, double confidence) {
  if (n == 0 || x >= n) return 1.0;
  const boost::math::beta_distribution<double> b(static_cast<double>(x + 1), static_cast<double>(n - x));
  return boost::math::quantile(b, confidence);
}

Interval clopper_pearson(std::uint64_t x, std::uint64_t n, double confidence) {
  if (n == 0) return {0.0, 1.0};
  const double alpha = 1.0 - confidence;
  Interval iv;
  if (x > 0) {
    const boost::math::beta_distribution<double> lo(static_cast<double>(x), static_cast<double>(n - x + 1));
    iv.lower = boost::math::quantile(lo, alpha / 2);
  }
  if (x < n) {
    const boost::math::beta_distribution<double> hi(static_cast<double>(x + 1), static_cast<double>(n - x));
    iv.upper = boost::math::quantile(hi, 1 - alpha / 2);
  }
  return iv;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::PASS: return "PASS";
    case Verdict::FAIL: return "FAIL";
    case Verdict::VACUOUS_PASS: return "VACUOUS_PASS";
    case Verdict::INAPPLICABLE: return "INAPPLICABLE";
  }
  return "INAPPLICABLE";
}

Field field_for(const ExperimentConfig& config) {
  const auto pp = prime_power(config.inputs.q);
  if (pp.k == 0) throw InvalidArgument("q must be a prime power");
  return pp.k == 1 ? Field::prime(pp.p) : Field::make(pp.p, pp.k, config.field_seed);
}

namespace {

std::vector<std::vector<Monomial>> layout(const BoundInputs& in) {
  std::vector<std::vector<Monomial>> out;
  for (auto d : in.d) out.push_back(monomials_upto(d, in.r));
  return out;
}

template <class Next>
PolySystem build_system(const BoundInputs& in, const Field& F, const std::vector<std::vector<Monomial>>& monos,
                        Next&& next) {
  std::vector<Poly> polys;
  for (std::size_t i = 0; i < monos.size(); ++i) {
    std::vector<Term> terms;
    for (const auto& m : monos[i]) {
      const Fel c = next();
      if (c.v) terms.push_back({m, c});
    }
    polys.push_back(Poly::from_terms(F, in.r, std::move(terms)));
  }
  return PolySystem(in.r, in.d, std::move(polys));
}

}  // namespace

PolySystem sample_system(const BoundInputs& inputs, const Field& field, std::mt19937_64& rng) {
  return build_system(inputs, field, layout(inputs), [&] { return uniform_element(field, rng); });
}

PolySystem census_system(const BoundInputs& inputs, const Field& field, std::uint64_t index) {
  const auto monos = layout(inputs);
  std::size_t count = 0;
  for (const auto& m : monos) count += m.size();
  std::vector<Fel> digits(count);
  for (std::size_t j = count; j-- > 0;) {
    digits[j] = field.element(index % field.order());
    index /= field.order();
  }
  std::size_t pos = 0;
  return build_system(inputs, field, monos, [&] { return digits[pos++]; });
}

namespace {

// Runs work(index, tally) over [0, n) on `threads` workers with dynamic
// chunking; totals do not depend on the schedule.
template <class Work>
Tally parallel_tally(std::uint64_t n, unsigned threads, Work&& work) {
  threads = std::max(1u, threads);
  std::atomic<std::uint64_t> next{0};
  constexpr std::uint64_t kChunk = 64;
  std::vector<Tally> partial(threads);
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&](unsigned w) {
    try {
      while (true) {
        const std::uint64_t start = next.fetch_add(kChunk);
        if (start >= n) break;
        const std::uint64_t stop = std::min(n, start + kChunk);
        for (std::uint64_t i = start; i < stop; ++i) work(i, partial[w]);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
      next.store(n);
    }
  };
  if (threads == 1) {
    body(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(body, w);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  Tally total;
  for (const auto& t : partial) total += t;
  return total;
}

ClassifyOptions classify_options(const ExperimentConfig& c) {
  ClassifyOptions o;
  o.randomized = c.randomized;
  o.seed = c.seed;
  o.audit_witness = c.audit;
  return o;
}

Verdict verdict(const BoundReport& b, bool vacuous, const Rational& bound, double upper) {
  if (!b.applicable) return Verdict::INAPPLICABLE;
  if (vacuous) return Verdict::VACUOUS_PASS;
  return upper <= bound.convert_to<double>() ? Verdict::PASS : Verdict::FAIL;
}

void finish(EstimateReport& rep, bool exact) {
  const auto& t = rep.tally;
  const auto& b = rep.bounds;
  const BigInt n = t.total;
  if (t.total == 0) return;
  rep.p1_hat = Rational(BigInt(t.in_B1), n);
  rep.p2_lower = Rational(BigInt(t.in_B2_lower), n);
  rep.p2_upper = Rational(BigInt(t.in_B2_upper), n);
  const double conf = rep.config.confidence;
  if (exact) {
    const double p1 = rep.p1_hat.convert_to<double>();
    rep.p1_interval = {p1, p1};
    rep.p1_upper = p1;
    rep.p2_upper_bound = rep.p2_upper.convert_to<double>();
    if (b.applicable) {
      rep.verdict_B1 = b.vacuous_B1 ? Verdict::VACUOUS_PASS : rep.p1_hat <= b.prob_B1 ? Verdict::PASS : Verdict::FAIL;
      rep.verdict_B2 = b.vacuous_B2 ? Verdict::VACUOUS_PASS : rep.p2_upper <= b.prob_B2 ? Verdict::PASS : Verdict::FAIL;
    }
    return;
  }
  rep.p1_interval = clopper_pearson(t.in_B1, t.total, conf);
  rep.p1_upper = clopper_pearson_upper(t.in_B1, t.total, conf);
  rep.p2_upper_bound = clopper_pearson_upper(t.in_B2_upper, t.total, conf);
  rep.verdict_B1 = verdict(b, b.vacuous_B1, b.prob_B1, rep.p1_upper);
  rep.verdict_B2 = verdict(b, b.vacuous_B2, b.prob_B2, rep.p2_upper_bound);
}

EstimateReport start(const ExperimentConfig& config, const Field& F) {
  if (config.confidence <= 0 || config.confidence >= 1) throw InvalidArgument("confidence must lie in (0, 1)");
  EstimateReport rep;
  rep.config = config;
  rep.config.threads = std::max(1u, config.threads);
  rep.field = F.describe();
  rep.bounds = derive(config.inputs);
  return rep;
}

}  // namespace

EstimateReport run_monte_carlo(const ExperimentConfig& config) {
  config.inputs.validate();
  const Field F = field_for(config);
  EstimateReport rep = start(config, F);
  const auto t0 = std::chrono::steady_clock::now();
  const ClassifyOptions opts = classify_options(config);
  rep.tally = parallel_tally(config.n_samples, rep.config.threads, [&](std::uint64_t i, Tally& t) {
    auto rng = make_stream(config.seed, i);
    t.add(classify(sample_system(config.inputs, F, rng), opts));
  });
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  finish(rep, false);
  return rep;
}

EstimateReport run_census(const ExperimentConfig& config) {
  config.inputs.validate();
  const Field F = field_for(config);
  EstimateReport rep = start(config, F);
  const std::uint64_t budget = config.budget ? config.budget : enumeration_budget();
  const BigInt total = mp::pow(BigInt(F.order()), rep.bounds.dimF.convert_to<unsigned>());
  if (total > budget) throw BudgetExceeded("census exceeds enumeration budget", total.str());
  const std::uint64_t n = total.convert_to<std::uint64_t>();
  const ClassifyOptions opts = classify_options(config);
  const bool csv = !config.csv_path.empty();
  std::vector<std::string> rows(csv ? n : 0);

  const auto t0 = std::chrono::steady_clock::now();
  rep.tally = parallel_tally(n, rep.config.threads, [&](std::uint64_t i, Tally& t) {
    const auto c = classify(census_system(config.inputs, F, i), opts);
    t.add(c);
    if (csv) {
      std::string row = std::to_string(i);
      for (bool f : c.degree_full) row += f ? ",1" : ",0";
      row += "," + std::to_string(c.in_B0) + "," + std::to_string(c.regular_sequence) + "," +
             std::to_string(c.ideal_theoretic_ci) + "," + std::to_string(c.fiber_dim) + "," +
             to_string(c.irreducibility) + "," + std::to_string(c.in_B1) + "," + std::to_string(c.in_B2_lower) + "," +
             std::to_string(c.in_B2_upper);
      rows[i] = std::move(row);
    }
  });
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (csv) {
    std::ofstream out(config.csv_path);
    if (!out) throw InvalidArgument("cannot open CSV output " + config.csv_path);
    out << "index";
    for (unsigned i = 1; i <= config.inputs.s; ++i) out << ",degree_full_" << i;
    out << ",in_B0,regular_sequence,ideal_theoretic_ci,fiber_dim,irreducibility,in_B1,in_B2_lower,in_B2_upper\n";
    for (const auto& row : rows) out << row << '\n';
  }
  finish(rep, true);
  return rep;
}

EstimateReport run_experiment(const ExperimentConfig& config) {
  return config.mode == Mode::census ? run_census(config) : run_monte_carlo(config);
}

nlohmann::json EstimateReport::to_json(bool with_meta) const {
  nlohmann::json j;
  j["schema"] = "defectus.estimate/1";
  j["mode"] = config.mode == Mode::census ? "census" : "monte_carlo";
  j["inputs"] = config.inputs.to_json();
  j["field"] = field;
  j["seed"] = config.seed;
  j["field_seed"] = config.field_seed;
  j["confidence"] = config.confidence;
  j["randomized"] = config.randomized;
  j["n"] = tally.total;
  j["counts"] = tally.to_json();
  j["p1_hat"] = to_string(p1_hat);
  j["p1_hat_decimal"] = decimal(p1_hat);
  j["p1_interval"] = {{"lower", p1_interval.lower}, {"upper", p1_interval.upper}};
  j["p1_upper_one_sided"] = p1_upper;
  j["p2_bracket"] = {{"lower", to_string(p2_lower)},
                     {"upper", to_string(p2_upper)},
                     {"lower_decimal", decimal(p2_lower)},
                     {"upper_decimal", decimal(p2_upper)}};
  j["p2_upper_one_sided"] = p2_upper_bound;
  j["bounds"] = bounds.to_json();
  j["verdicts"] = {{"B1", to_string(verdict_B1)}, {"B2", to_string(verdict_B2)}};
  if (with_meta) j["meta"] = {{"wall_seconds", wall_seconds}, {"threads", config.threads}};
  return j;
}

LinearOracle linear_census_oracle(const BoundInputs& in) {
  in.validate();
  for (auto d : in.d)
    if (d != 1) throw InvalidArgument("linear oracle needs all caps equal to 1");
  const BigInt q = in.q;
  const unsigned m = in.s, n = in.r;
  // number of m x n matrices of rank k
  auto rank_count = [&](unsigned k) {
    BigInt num = 1, den = 1;
    for (unsigned i = 0; i < k; ++i) {
      num *= (mp::pow(q, m) - mp::pow(q, i)) * (mp::pow(q, n) - mp::pow(q, i));
      den *= mp::pow(q, k) - mp::pow(q, i);
    }
    return num / den;
  };
  LinearOracle o;
  o.total = mp::pow(q, in.s * (in.r + 1));
  o.rank_deficient = 0;
  for (unsigned k = 0; k < in.s; ++k) o.rank_deficient += rank_count(k);
  o.in_B1 = o.rank_deficient * mp::pow(q, in.s);
  o.in_B2 = o.in_B1;
  return o;
}

}  // namespace defectus
