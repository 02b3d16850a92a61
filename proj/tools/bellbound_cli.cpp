#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "bellbound/analysis.hpp"
#include "bellbound/io.hpp"
#include "bellbound/reproduce.hpp"
#include "bellbound/sweep.hpp"

namespace {

using namespace bellbound;

constexpr int kOk = 0, kUsage = 1, kComputation = 2, kMismatch = 3;

struct ScenarioOptions {
  std::string descriptor;
  std::string family;
  std::string level = "full";
  std::string eta, etaA, etaB, pC;
  bool apparentLocality = false;

  void attach(CLI::App* app) {
    app->add_option("--descriptor", descriptor, "Scenario descriptor file (key = value lines)");
    app->add_option("--scenario", family, "Scenario family");
    app->add_option("--level", level, "Constraint level for fs families");
    app->add_option("--eta", eta, "Detection efficiency as an exact fraction");
    app->add_option("--eta-a", etaA, "Arm A efficiency (fraction)");
    app->add_option("--eta-b", etaB, "Arm B efficiency (fraction)");
    app->add_option("--pc", pC, "Crosstalk probability (fraction)");
    app->add_flag("--apparent-locality", apparentLocality, "Add apparent-locality equalities (crosstalk)");
  }

  [[nodiscard]] io::Descriptor resolve(bool need_params = true) const {
    io::Descriptor d;
    if (!descriptor.empty()) {
      std::ifstream f(descriptor);
      if (!f) throw StructuralError("cannot read descriptor " + descriptor);
      std::stringstream ss;
      ss << f.rdbuf();
      d = io::parse_descriptor(ss.str());
    } else {
      if (family.empty()) throw StructuralError("--scenario or --descriptor is required");
      d.id.family = parse_family(family);
      d.id.level = parse_level(level);
    }
    if (!eta.empty()) d.params.eta = Rational::parse(eta);
    if (!etaA.empty()) d.params.etaA = Rational::parse(etaA);
    if (!etaB.empty()) d.params.etaB = Rational::parse(etaB);
    if (!pC.empty()) d.params.pC = Rational::parse(pC);
    if (apparentLocality) d.params.apparentLocality = true;
    d.id.validate();
    if (need_params) validate_params(d.id.family, d.params);
    return d;
  }
};

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ComputationError("cannot write " + path);
  f << text;
}

std::vector<Params> grid_for(const io::Descriptor& d, unsigned n) {
  std::vector<Params> g;
  if (d.id.family == Family::Crosstalk) {
    for (unsigned k = 0; k <= n; ++k) g.push_back(Params::crosstalk(Rational(k, n), d.params.apparentLocality));
    return g;
  }
  return default_grid(n);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact LP derivation of Bell-inequality bounds under non-ideal detection"};
  app.require_subcommand(1);

  ScenarioOptions sc;
  std::string quantity = "S", sense = "max", output, csv;
  unsigned grid = 64, degree = 6, workers = 1;
  std::size_t strategies = 10000;
  std::optional<std::uint64_t> seed;
  std::string sExp, sSig, pcMean, pcSig, deltaP;

  auto* derive = app.add_subcommand("derive", "Certified optimum at one parameter point");
  sc.attach(derive);
  derive->add_option("--quantity", quantity, "S, SN, DeltaPrime, Delta, DeltaN, delta, deltaN");
  derive->add_option("--sense", sense, "max or min");

  auto* sweep_cmd = app.add_subcommand("sweep", "Optima over eta = k/N (or pC = k/N for crosstalk), as CSV");
  sc.attach(sweep_cmd);
  sweep_cmd->add_option("--quantity", quantity);
  sweep_cmd->add_option("--sense", sense);
  sweep_cmd->add_option("--grid", grid, "Grid denominator N")->check(CLI::Range(1u, 4096u));
  sweep_cmd->add_option("--output,-o", output, "CSV path (default stdout)");
  sweep_cmd->add_option("--workers", workers);

  auto* recon = app.add_subcommand("reconstruct", "Exact piecewise-polynomial bound from a sweep");
  sc.attach(recon);
  recon->add_option("--quantity", quantity);
  recon->add_option("--sense", sense);
  recon->add_option("--grid", grid)->check(CLI::Range(8u, 4096u));
  recon->add_option("--max-degree", degree)->check(CLI::Range(0u, 12u));
  recon->add_option("--output,-o", output, "Piecewise text path (default stdout)");
  recon->add_option("--csv", csv, "Also write the raw sweep CSV here");
  recon->add_option("--workers", workers);

  auto* critical = app.add_subcommand("critical", "Critical detection efficiencies with enclosures");
  critical->add_option("--csv", csv, "Also write the table as CSV");
  critical->add_option("--workers", workers);

  auto* crosstalk = app.add_subcommand("crosstalk", "Hypothesis test of S against 2 + 16 pC");
  crosstalk->add_option("--s-exp", sExp)->required();
  crosstalk->add_option("--s-sig", sSig)->required();
  crosstalk->add_option("--pc-mean", pcMean)->required();
  crosstalk->add_option("--pc-sig", pcSig)->required();
  crosstalk->add_option("--delta-p", deltaP, "Observed marginal difference");
  crosstalk->add_option("--csv", csv);

  auto* oracle = app.add_subcommand("oracle", "Sampled local deterministic strategies vs the LP bounds");
  sc.attach(oracle);
  oracle->add_option("--quantity", quantity);
  oracle->add_option("--strategies", strategies)->check(CLI::PositiveNumber);
  oracle->add_option("--seed", seed, "Master seed")->required();

  std::string outdir = "reproduction";
  auto* repro = app.add_subcommand("reproduce-all", "Recompute every display; write manifest and figure data");
  repro->add_option("--output,-o", outdir, "Output directory");
  repro->add_option("--workers", workers);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*derive) {
      auto d = sc.resolve();
      Rational v = bound_at(d.id, parse_quantity(quantity), parse_sense(sense), d.params);
      std::cout << v << " (" << v.decimal(12) << ")\n";
    } else if (*sweep_cmd) {
      auto d = sc.resolve(false);
      SweepResult r = sweep(d.id, parse_quantity(quantity), parse_sense(sense), grid_for(d, grid), workers);
      emit(output, io::format_sweep_csv(r));
      for (const auto& e : r.errors) std::cerr << "error at " << sweep_coordinate(e.params) << ": " << e.message << "\n";
      if (!r.errors.empty()) return kComputation;
    } else if (*recon) {
      auto d = sc.resolve(false);
      BellQuantity q = parse_quantity(quantity);
      Sense s = parse_sense(sense);
      auto g = grid_for(d, grid);
      if (!csv.empty()) emit(csv, io::format_sweep_csv(sweep(d.id, q, s, g, workers)));
      emit(output, io::format_piecewise(derive_bound(d.id, q, s, g, degree, workers)));
    } else if (*critical) {
      auto table = critical_table(workers);
      std::cout << io::format_table_iv(table);
      if (!csv.empty()) emit(csv, io::format_table_iv_csv(table));
    } else if (*crosstalk) {
      auto d = [](const std::string& s) { return Rational::parse_decimal(s); };
      std::optional<Rational> dp;
      if (!deltaP.empty()) dp = d(deltaP);
      CrosstalkReport r = crosstalk_ztest(d(sExp), d(sSig), d(pcMean), d(pcSig), dp);
      std::cout << io::format_table_v(r);
      if (!csv.empty()) emit(csv, io::format_table_v_csv(r));
    } else if (*oracle) {
      auto d = sc.resolve();
      LhvSampleReport r = lhv_oracle(d.id, parse_quantity(quantity), d.params, strategies, *seed);
      std::cout << io::format_lhv(r);
      if (!r.sound()) return kMismatch;
    } else if (*repro) {
      Reproduction r = reproduce_all(workers);
      r.write(outdir);
      std::size_t failed = 0;
      for (const auto& l : r.lines) failed += !l.pass;
      std::cout << r.lines.size() - failed << "/" << r.lines.size() << " displays verified; manifest at "
                << outdir << "/manifest.txt\n";
      if (failed) return kMismatch;
    }
  } catch (const StructuralError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "computation error: " << e.what() << "\n";
    return kComputation;
  }
  return kOk;
}
