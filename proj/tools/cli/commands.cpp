#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pbands/bandedges.hpp"
#include "pbands/counterexample.hpp"
#include "pbands/degeneracy.hpp"
#include "pbands/errors.hpp"
#include "pbands/freebands.hpp"
#include "pbands/json_format.hpp"
#include "pbands/report.hpp"
#include "pbands/version.hpp"

namespace pbands::cli {

namespace {

using nlohmann::json;

// Signals a run that finished but could not certify its claim.
struct Outcome {
  json report;
  bool inconclusive = false;
};

PeriodVector resolve_period(const RunConfig& cfg) {
  if (cfg.q.empty()) throw ConfigError("--q is required");
  try {
    return PeriodVector(cfg.q);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("--q: ") + e.what());
  }
}

GridSpec resolve_grid(const RunConfig& cfg, const PeriodVector& q) {
  GridSpec g = cfg.budget ? GridSpec::uniform_default(q.dim(), cfg.budget)
                          : GridSpec::uniform_default(q.dim());
  if (!cfg.grid.empty()) g.samples = cfg.grid;
  g.threads = cfg.threads;
  g.validate(q);
  return g;
}

// Uniform in [-1, 1] from the raw 64-bit stream, so the draw does not depend
// on the standard library's distribution implementation.
Potential random_potential(const PeriodVector& q, double sup_norm, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> values(q.cell_size());
  double peak = 0.0;
  for (double& v : values) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    v = 2.0 * u - 1.0;
    peak = std::max(peak, std::abs(v));
  }
  if (peak > 0.0) {
    for (double& v : values) v *= sup_norm / peak;
  }
  return Potential(q, std::move(values));
}

Potential resolve_potential(const RunConfig& cfg, const PeriodVector& q) {
  const std::string& src = cfg.potential;
  if (src == "zero") return Potential::zero(q);
  if (src == "dimer") return build_dimer(q, cfg.delta);
  if (src == "vq") {
    return build_vq(CounterexampleSpec{q, cfg.delta, kDefaultDeltaMax, cfg.force_delta});
  }
  if (src == "random") return random_potential(q, cfg.delta, cfg.seed);

  std::ifstream in(src);
  if (!in) throw ConfigError("cannot open potential file '" + src + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  Potential v = Potential::from_json(buf.str());
  if (!(v.period() == q)) throw ConfigError("potential file period differs from --q");
  return v;
}

json config_json(const RunConfig& cfg, const std::optional<GridSpec>& grid) {
  json c = {{"command", cfg.command},
            {"q", cfg.q},
            {"potential", cfg.potential},
            {"delta", cfg.delta},
            {"force_delta", cfg.force_delta},
            {"seed", cfg.seed},
            {"t", cfg.t}};
  if (grid) {
    c["grid"] = grid->samples;
    c["point_budget"] = grid->point_budget;
    c["refine_rounds"] = grid->refine_rounds;
    c["shrink"] = grid->shrink;
  }
  c["merge_tol"] = cfg.merge_tol ? json(*cfg.merge_tol) : json(nullptr);
  c["energy"] = cfg.energy ? json(*cfg.energy) : json(nullptr);
  c["theta"] = cfg.theta;
  c["beta"] = cfg.beta;
  return c;
}

json envelope(const RunConfig& cfg, const std::optional<GridSpec>& grid) {
  return {{"tool", "pbands"}, {"version", kVersion}, {"config", config_json(cfg, grid)}};
}

Outcome cmd_spectrum(const RunConfig& cfg) {
  const PeriodVector q = resolve_period(cfg);
  const GridSpec grid = resolve_grid(cfg, q);
  const Potential v = resolve_potential(cfg, q);
  const BandTable table = certified_edges(q, v, grid);
  const SpectrumReport report = assemble_spectrum(table, cfg.merge_tol);
  json doc = envelope(cfg, grid);
  doc["spectrum"] = to_json(report);
  doc["potential_sup_norm"] = v.sup_norm();
  return {doc, !report.certified};
}

Outcome cmd_witness(const RunConfig& cfg) {
  if (!cfg.energy) throw ConfigError("witness needs --energy");
  const PeriodVector q = resolve_period(cfg);
  const GridSpec grid = resolve_grid(cfg, q);
  const WitnessResult w = interior_witness(q, *cfg.energy, grid);
  json doc = envelope(cfg, grid);
  doc["witness"] = to_json(w);
  return {doc, w.outcome == WitnessOutcome::not_found};
}

Outcome cmd_cq(const RunConfig& cfg) {
  const PeriodVector q = resolve_period(cfg);
  const GridSpec grid = resolve_grid(cfg, q);
  const CqEstimate c = estimate_cq(q, grid);
  json doc = envelope(cfg, grid);
  doc["cq"] = to_json(c);
  return {doc, c.inconclusive};
}

Outcome cmd_degeneracy(const RunConfig& cfg) {
  const PeriodVector q = resolve_period(cfg);
  std::vector<double> x = cfg.theta;
  if (x.empty()) {
    if (!cfg.energy) throw ConfigError("degeneracy needs --theta or --energy");
    x = construct_theta_for_energy(q.dim(), *cfg.energy);
  }
  const auto [theta, target] = fold_phase(x, q);

  std::vector<double> beta = cfg.beta;
  if (beta.empty()) beta.assign(q.dim(), 1.0);
  beta = normalized(beta);

  const DegeneracyGroup g = coincident_group(q, theta, target);
  const DirectionClassification cls = classify(g, beta);

  json doc = envelope(cfg, std::nullopt);
  doc["full_circle_phase"] = x;
  doc["target"] = to_json(target);
  doc["group"] = to_json(g);
  doc["classification"] = to_json(cls);
  const BetaCondition cond = check_beta_near_diagonal(beta, g.level);
  doc["beta_condition"] = {{"lhs", cond.lhs}, {"rhs", cond.rhs}, {"holds", cond.holds}};

  bool inconclusive = false;
  json moves = json::array();
  for (const double t : {std::abs(cfg.t), -std::abs(cfg.t)}) {
    const CountResult counted = count_moves(g, beta, t);
    json entry = {{"t", t}, {"counted", to_json(counted)}};
    try {
      const MoveCount predicted = predict_moves(g, beta, t > 0 ? 1 : -1, cls);
      entry["predicted"] = to_json(predicted);
      entry["match"] = counted.conclusive && predicted == counted.moves;
    } catch (const DomainError& e) {
      entry["predicted"] = nullptr;
      entry["predict_error"] = e.what();
      entry["match"] = false;
    }
    inconclusive = inconclusive || !counted.conclusive;
    moves.push_back(entry);
  }
  doc["moves"] = moves;
  return {doc, inconclusive};
}

Outcome cmd_counterexample(const RunConfig& cfg) {
  const PeriodVector q = resolve_period(cfg);
  const GridSpec grid = resolve_grid(cfg, q);
  if (cfg.potential != "vq" && cfg.potential != "dimer") {
    throw ConfigError("counterexample takes --potential vq or dimer");
  }
  const Potential v = resolve_potential(cfg, q);
  const BandTable table = certified_edges(q, v, grid);
  const SpectrumReport report = assemble_spectrum(table, cfg.merge_tol);
  const NeighborSumCheck sums = neighbor_sum_check(v, cfg.delta);
  const GapCheck gap = verify_gap_at_zero(v, cfg.delta, grid);

  bool gap_contains_zero = false;
  for (const Gap& gp : report.gaps) gap_contains_zero = gap_contains_zero || (gp.lo < 0.0 && gp.hi > 0.0);

  json doc = envelope(cfg, grid);
  doc["spectrum"] = to_json(report);
  doc["verification"] = {{"minimal_period", minimal_period(v).entries()},
                         {"neighbor_sum_ok", sums.ok},
                         {"neighbor_sums", to_json(sums)},
                         {"gap_margin", gap.margin},
                         {"gap_check", to_json(gap)},
                         {"gap_contains_zero", gap_contains_zero},
                         {"sup_norm", v.sup_norm()}};
  return {doc, gap.inconclusive || !report.certified};
}

void emit(const RunConfig& cfg, const json& doc, std::ostream& out) {
  const std::string text = canonical_json(doc);
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + cfg.out + "'");
  f << text;
  if (cfg.json) out << text;
}

int cmd_bands(const RunConfig& cfg, std::ostream& out) {
  const PeriodVector q = resolve_period(cfg);
  const GridSpec grid = resolve_grid(cfg, q);
  const Potential v = resolve_potential(cfg, q);

  const GridSamples samples = sample_grid(q, v, grid);
  BandTable table = reduce_samples(samples);
  table.certified_slack = grid_slack(q, grid, v.sup_norm() == 0.0);
  table = refine_extrema(std::move(table), v, grid);

  json doc = envelope(cfg, grid);
  doc["band_table"] = to_json(table);
  doc["overlaps"] = overlaps(table);

  if (!cfg.out.empty()) {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw ConfigError("cannot write '" + cfg.out + "'");
    write_band_csv(f, samples);
    doc["csv"] = cfg.out;
    out << canonical_json(doc);
  } else if (cfg.json) {
    out << canonical_json(doc);
  } else {
    write_band_csv(out, samples);
  }
  return kOk;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--q", cfg.q, "period, comma separated (d >= 2)")->delimiter(',');
  sub->add_option("--potential", cfg.potential, "zero | dimer | vq | random | path to JSON file");
  sub->add_option("--delta", cfg.delta, "strength for dimer/vq, sup norm for random");
  sub->add_flag("--force-delta", cfg.force_delta, "allow vq delta above 0.25");
  sub->add_option("--grid", cfg.grid, "samples per coordinate, comma separated")->delimiter(',');
  sub->add_option("--budget", cfg.budget, "maximum number of grid points");
  sub->add_option("--merge-tol", cfg.merge_tol, "interval merge tolerance (>= 2 * slack)");
  sub->add_option("--energy", cfg.energy, "target energy");
  sub->add_option("--theta", cfg.theta, "full-circle phase in [0,1)^d, comma separated")->delimiter(',');
  sub->add_option("--beta", cfg.beta, "perturbation direction, comma separated (normalized)")->delimiter(',');
  sub->add_option("--t", cfg.t, "perturbation size, 0 < |t| <= 1e-2");
  sub->add_option("--seed", cfg.seed, "seed for --potential random");
  sub->add_option("--out", cfg.out, "output file");
  sub->add_flag("--json", cfg.json, "write the JSON report to standard output");
  sub->add_option("--threads", cfg.threads, "worker threads, 0 = all cores");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Band structure and spectral gaps of discrete periodic Schroedinger operators", "pbands"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  RunConfig cfg;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"bands", "sample band functions; CSV of every grid node plus the certified band table"},
      {"spectrum", "spectrum as a union of certified intervals"},
      {"witness", "certify that --energy lies inside some free band"},
      {"cq", "certified estimate of the small-coupling constant c_q"},
      {"degeneracy", "perturb-and-count diagnostics at a coincident free level"},
      {"counterexample", "gap at zero for the even-period counterexample potential"},
  };
  for (const auto& [name, help] : commands) add_common(app.add_subcommand(name, help), cfg);

  std::vector<const char*> argv{"pbands"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }
  const CLI::App* sub = app.get_subcommands().front();
  cfg.command = sub->get_name();
  // The counterexample is about V_q; zero would only be rejected.
  if (cfg.command == "counterexample" && sub->count("--potential") == 0) cfg.potential = "vq";

  try {
    if (cfg.command == "bands") return cmd_bands(cfg, out);

    const std::function<Outcome(const RunConfig&)> handler =
        cfg.command == "spectrum"         ? cmd_spectrum
        : cfg.command == "witness"        ? cmd_witness
        : cfg.command == "cq"             ? cmd_cq
        : cfg.command == "degeneracy"     ? cmd_degeneracy
                                          : cmd_counterexample;
    const Outcome result = handler(cfg);
    emit(cfg, result.report, out);
    return result.inconclusive ? kInconclusive : kOk;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const ComputationError& e) {
    err << "computation error: " << e.what() << '\n';
    return kFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace pbands::cli
