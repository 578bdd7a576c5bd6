#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "defectus/bounds.hpp"
#include "defectus/classifier.hpp"
#include "defectus/experiment.hpp"
#include "defectus/groebner.hpp"
#include "defectus/resultant.hpp"

using namespace defectus;
using nlohmann::json;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitBudget = 3;

struct Common {
  unsigned r = 0;
  unsigned s = 0;
  std::string d;
  std::uint64_t q = 0;
  std::uint64_t p = 0;
  unsigned k = 0;
  std::uint64_t field_seed = 0;
  std::string format = "json";
  std::string out;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--r", c.r, "ambient dimension r")->required();
  cmd->add_option("--s", c.s, "number of polynomials s")->required();
  cmd->add_option("--d", c.d, "degree caps, comma separated")->required();
  cmd->add_option("--q", c.q, "field order (prime power)");
  cmd->add_option("--p", c.p, "field characteristic");
  cmd->add_option("--k", c.k, "extension degree (default 1)");
  cmd->add_option("--field-seed", c.field_seed, "seed of the modulus search for k > 1");
  cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json"}));
  cmd->add_option("--out", c.out, "write the report to PATH instead of stdout");
}

std::vector<unsigned> parse_caps(const std::string& text) {
  std::vector<unsigned> caps;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw InvalidArgument("--d must be a comma list of positive integers");
    caps.push_back(static_cast<unsigned>(std::stoul(item)));
  }
  if (caps.empty()) throw InvalidArgument("--d is empty");
  return caps;
}

// Resolves --q / --p / --k into (q, field).
std::pair<std::uint64_t, Field> resolve_field(const Common& c) {
  if (c.q == 0 && c.p == 0) throw InvalidArgument("a field is required: give --q or --p [--k]");
  std::uint64_t p = c.p;
  unsigned k = c.k;
  if (c.q != 0) {
    const auto pp = prime_power(c.q);
    if (pp.k == 0) throw InvalidArgument("--q must be a prime power");
    if ((p != 0 && p != pp.p) || (k != 0 && k != pp.k)) throw InvalidArgument("--q is inconsistent with --p/--k");
    p = pp.p;
    k = pp.k;
  }
  if (k == 0) k = 1;
  if (!is_prime(p)) throw InvalidArgument("--p must be prime");
  const Field F = k == 1 ? Field::prime(p) : Field::make(p, k, c.field_seed);
  return {F.order(), F};
}

BoundInputs inputs_of(const Common& c, std::uint64_t q) {
  BoundInputs in{c.r, c.s, q, parse_caps(c.d)};
  in.validate();
  return in;
}

void emit(const Common& c, const json& j) {
  const std::string text = j.dump(2) + "\n";
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw InvalidArgument("cannot open --out path " + c.out);
  f << text;
}

json selftest() {
  json checks = json::array();
  bool all = true;
  auto check = [&](const std::string& name, bool ok) {
    checks.push_back({{"name", name}, {"ok", ok}});
    all = all && ok;
  };
  const Field F4 = Field::make(2, 2, 0);
  check("F4 t*t = t+1", F4.mul(F4.element(2), F4.element(2)) == F4.element(3));
  const Field F7 = Field::prime(7);
  check("F7 inverse of 3 is 5", F7.inv(F7.from_int(3)) == F7.from_int(5));
  const Poly x1 = Poly::variable(F7, 3, 0), x2 = Poly::variable(F7, 3, 1);
  const std::vector<Poly> mono{x1 * x1, x1 * x2};
  check("monomial ideal is its own basis", groebner(mono).gens() == mono);
  check("colon of (X1^2, X1X2) by X1", colon_ideal(groebner(mono), x1) == groebner(std::vector<Poly>{x1, x2}));
  std::vector<Poly> pure;
  for (unsigned i = 0; i < 3; ++i) pure.push_back(Poly::variable(F7, 3, i).pow(i + 1));
  check("Res of monomial system is 1", macaulay_resultant(pure, std::vector<unsigned>{1, 2, 3}) == F7.one());
  const auto b = derive({3, 2, 101, {2, 2}});
  check("prob_B1 at q=101", to_string(b.prob_B1) == "32768/1030301");
  ExperimentConfig c;
  c.inputs = {3, 2, 2, {1, 1}};
  c.mode = Mode::census;
  check("linear census over F_2", run_census(c).tally.in_B1 == 88);
  return {{"selftest", all ? "ok" : "failed"}, {"checks", checks}};
}

int fail(const char* kind, const std::string& message, int code, const json& extra = json::object()) {
  json j = {{"error", kind}, {"message", message}};
  for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
  std::cerr << j.dump() << std::endl;
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"defectus: defect classification of polynomial systems over finite fields"};
  app.require_subcommand(1);

  Common bc, cc, sc, nc, tc;
  auto* bounds = app.add_subcommand("bounds", "closed-form bound report");
  add_common(bounds, bc);

  auto* cls = app.add_subcommand("classify", "classify one system read from JSON");
  add_common(cls, cc);
  std::string system_path;
  bool cls_randomized = false;
  std::uint64_t cls_seed = 0;
  cls->add_option("--system", system_path, "system JSON file ('-' for stdin)")->required();
  cls->add_flag("--randomized", cls_randomized, "also run the randomized cross-checks");
  cls->add_option("--seed", cls_seed, "seed of the randomized cross-checks");

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  ExperimentConfig mc, cen;
  bool mc_no_meta = false, cen_no_meta = false;
  mc.threads = cen.threads = hw;
  auto* sample = app.add_subcommand("sample", "seeded Monte Carlo estimate");
  add_common(sample, sc);
  sample->add_option("--n", mc.n_samples, "number of sampled systems")->required();
  sample->add_option("--seed", mc.seed, "master seed");
  sample->add_option("--threads", mc.threads, "worker threads")->check(CLI::PositiveNumber);
  sample->add_option("--confidence", mc.confidence, "Clopper-Pearson confidence")->check(CLI::Range(0.0, 1.0));
  sample->add_flag("--randomized", mc.randomized, "run the randomized cross-checks on every sample");
  sample->add_flag("--audit", mc.audit, "witness search on certified-irreducible systems too");
  sample->add_flag("--no-meta", mc_no_meta, "omit wall-clock and thread metadata");

  auto* census = app.add_subcommand("census", "exhaustive census of the coefficient space");
  add_common(census, nc);
  census->add_option("--threads", cen.threads, "worker threads")->check(CLI::PositiveNumber);
  census->add_option("--csv", cen.csv_path, "write one CSV row per system");
  census->add_option("--seed", cen.seed, "seed of the randomized cross-checks");
  census->add_flag("--randomized", cen.randomized, "run the randomized cross-checks on every system");
  census->add_flag("--audit", cen.audit, "witness search on certified-irreducible systems too");
  census->add_flag("--no-meta", cen_no_meta, "omit wall-clock and thread metadata");

  auto* self = app.add_subcommand("selftest", "quick internal consistency checks");
  self->add_option("--out", tc.out, "write the report to PATH instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("validation", e.what(), kExitValidation);
  }

  try {
    if (*bounds) {
      const auto [q, F] = resolve_field(bc);
      emit(bc, derive(inputs_of(bc, q)).to_json());
    } else if (*cls) {
      const auto [q, F] = resolve_field(cc);
      const auto caps = parse_caps(cc.d);
      if (caps.size() != cc.s) throw InvalidArgument("--d must list exactly s caps");
      json j;
      if (system_path == "-") {
        j = json::parse(std::cin);
      } else {
        std::ifstream in(system_path);
        if (!in) throw InvalidArgument("cannot read --system " + system_path);
        j = json::parse(in);
      }
      const PolySystem sys = PolySystem::from_json(F, cc.r, caps, j);
      if (sys.s() != cc.s) throw InvalidArgument("system has " + std::to_string(sys.s()) + " polynomials, --s says " +
                                                 std::to_string(cc.s));
      ClassifyOptions opts;
      opts.randomized = cls_randomized;
      opts.seed = cls_seed;
      json rep = classify(sys, opts).to_json();
      rep["field"] = F.describe();
      emit(cc, rep);
    } else if (*sample) {
      const auto [q, F] = resolve_field(sc);
      mc.inputs = inputs_of(sc, q);
      mc.field_seed = sc.field_seed;
      mc.mode = Mode::monte_carlo;
      emit(sc, run_monte_carlo(mc).to_json(!mc_no_meta));
    } else if (*census) {
      const auto [q, F] = resolve_field(nc);
      cen.inputs = inputs_of(nc, q);
      cen.field_seed = nc.field_seed;
      cen.mode = Mode::census;
      emit(nc, run_census(cen).to_json(!cen_no_meta));
    } else if (*self) {
      const json j = selftest();
      emit(tc, j);
      return j["selftest"] == "ok" ? 0 : 1;
    }
  } catch (const BudgetExceeded& e) {
    return fail("budget", e.what(), kExitBudget, {{"required", e.required()}});
  } catch (const InvalidArgument& e) {
    return fail("validation", e.what(), kExitValidation);
  } catch (const json::exception& e) {
    return fail("validation", std::string("malformed JSON: ") + e.what(), kExitValidation);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), 1);
  }
  return 0;
}
