#pragma once

// JSON and CSV views of the result types. Documents are nlohmann::json
// values; pass them through canonical_json for byte-stable output.

#include <ostream>

#include <json.hpp>

#include "pbands/bandedges.hpp"
#include "pbands/counterexample.hpp"
#include "pbands/degeneracy.hpp"
#include "pbands/freebands.hpp"

namespace pbands {

nlohmann::json to_json(const Phase& p);
nlohmann::json to_json(const FourierIndex& l);
nlohmann::json to_json(const BandTable& b);
nlohmann::json to_json(const SpectrumReport& r);
nlohmann::json to_json(const CqEstimate& c);
nlohmann::json to_json(const WitnessResult& w);
nlohmann::json to_json(const DegeneracyGroup& g);
nlohmann::json to_json(const DirectionClassification& c);
nlohmann::json to_json(const MoveCount& m);
nlohmann::json to_json(const CountResult& c);
nlohmann::json to_json(const NeighborSumCheck& c);
nlohmann::json to_json(const GapCheck& g);

// Header theta_1..theta_d,E_1..E_Q, one row per grid node in row-major order.
void write_band_csv(std::ostream& out, const GridSamples& samples);

}  // namespace pbands
