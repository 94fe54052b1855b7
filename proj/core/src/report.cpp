#include "pbands/report.hpp"

#include "pbands/json_format.hpp"

namespace pbands {

using nlohmann::json;

json to_json(const Phase& p) { return json(p.values()); }

json to_json(const FourierIndex& l) { return json(l.l); }

json to_json(const BandTable& b) {
  json bands = json::array();
  for (std::size_t k = 0; k < b.band_count(); ++k) {
    const BandEdge& e = b.bands[k];
    bands.push_back({{"k", k + 1},
                     {"min", e.min_value},
                     {"max", e.max_value},
                     {"argmin", to_json(e.argmin)},
                     {"argmax", to_json(e.argmax)}});
  }
  return {{"q", b.q.entries()},
          {"grid", {{"m", b.grid}}},
          {"bands", bands},
          {"certified_slack", b.certified_slack},
          {"refined", b.refined}};
}

json to_json(const SpectrumReport& r) {
  json intervals = json::array();
  for (const Interval& iv : r.intervals) intervals.push_back({{"lo", iv.lo}, {"hi", iv.hi}});
  json gaps = json::array();
  for (const Gap& g : r.gaps) gaps.push_back({{"lo", g.lo}, {"hi", g.hi}, {"width", g.width}});
  return {{"intervals", intervals},
          {"overlaps", r.overlaps},
          {"gaps", gaps},
          {"certified", r.certified},
          {"slack", r.slack},
          {"merge_tol", r.merge_tol},
          {"grid", {{"m", r.grid}}}};
}

json to_json(const CqEstimate& c) {
  return {{"c_q", c.c_q},
          {"estimate_kind", "empirical certified lower proxy"},
          {"touching_at_zero", c.touching_at_zero},
          {"inconclusive", c.inconclusive},
          {"excluded_pairs", c.excluded_pairs},
          {"free_overlaps", c.free_overlaps},
          {"min_overlap", c.min_overlap},
          {"slack", c.slack},
          {"grid", {{"m", c.grid}}}};
}

json to_json(const WitnessResult& w) {
  json out = {{"outcome", to_string(w.outcome)},
              {"band", w.band},
              {"margin", w.margin},
              {"band_min", w.band_min},
              {"band_max", w.band_max}};
  out["theta_witness"] = {{"below", to_json(w.theta_below)}, {"above", to_json(w.theta_above)}};
  return out;
}

json to_json(const DegeneracyGroup& g) {
  json members = json::array();
  for (const FourierIndex& l : g.members) members.push_back(to_json(l));
  return {{"q", g.q.entries()},
          {"theta", to_json(g.theta)},
          {"level", g.level},
          {"members", members},
          {"r", g.size()},
          {"rank_above", g.rank_above}};
}

json to_json(const DirectionClassification& c) {
  json per = json::array();
  for (MemberClass m : c.per_member) per.push_back(to_string(m));
  return {{"beta", c.beta},
          {"J0", c.j0},
          {"J_beta", c.j_beta},
          {"J_beta_0", c.j_beta_0},
          {"J_minus", c.j_minus},
          {"per_member", per},
          {"zero_tol", c.zero_tol}};
}

json to_json(const MoveCount& m) { return {{"up", m.up}, {"down", m.down}}; }

json to_json(const CountResult& c) {
  json out = {{"moves", to_json(c.moves)}, {"conclusive", c.conclusive}, {"values", c.values}};
  out["ambiguous"] = c.ambiguous ? to_json(*c.ambiguous) : json(nullptr);
  return out;
}

json to_json(const NeighborSumCheck& c) {
  json failures = json::array();
  for (const NeighborSite& f : c.failures) {
    failures.push_back({{"site", f.site.n},
                        {"direction", f.direction + 1},
                        {"sum", f.sum},
                        {"expected", f.expected}});
  }
  return {{"ok", c.ok}, {"pure_dimer", c.pure_dimer}, {"failures", failures}};
}

json to_json(const GapCheck& g) {
  return {{"margin", g.margin},
          {"certified_margin", g.certified_margin},
          {"slack", g.slack},
          {"required", g.required},
          {"passes", g.passes},
          {"certified", g.certified},
          {"inconclusive", g.inconclusive}};
}

void write_band_csv(std::ostream& out, const GridSamples& samples) {
  const std::size_t d = samples.q.dim();
  for (std::size_t i = 0; i < d; ++i) out << (i ? "," : "") << "theta_" << i + 1;
  for (std::size_t k = 0; k < samples.band_count; ++k) out << ",E_" << k + 1;
  out << '\n';
  for (std::size_t node = 0; node < samples.node_count(); ++node) {
    const Phase theta = samples.node_phase(node);
    for (std::size_t i = 0; i < d; ++i) out << (i ? "," : "") << format_double(theta[i]);
    for (std::size_t k = 0; k < samples.band_count; ++k) out << ',' << format_double(samples.at(node, k));
    out << '\n';
  }
}

}  // namespace pbands
