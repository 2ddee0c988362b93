#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "racmod/approximation.hpp"
#include "racmod/critical.hpp"
#include "racmod/growth.hpp"
#include "racmod/pressure.hpp"
#include "racmod/report.hpp"

namespace racmod {

// Insertion-ordered so that documents are stable and read top-down.
using Json = nlohmann::ordered_json;

// Integers above 2^53 are written as decimal strings.
Json big_to_json(const BigInt& v);

Json graph_json(const SimplicialGraph& g);
SimplicialGraph graph_from_json(const Json& j);
Json assumptions_json(const AssumptionReport& r, const SimplicialGraph& g);

Json growth_json(const GrowthReport& r, double tolerance);
Json tau_shift_json(const std::vector<TauShiftRow>& rows, double tolerance);

// {graph, scale, adjacency, tiles: [{id, word}], incidence: [[i, j]] (i < j),
// ancestry, dead_ends}. Ids are 0-based tile indices.
Json approximation_json(const Approximation& a);
// Rebuilds the approximation from the embedded graph, scale and adjacency
// and checks it against the stored tiles and incidence.
Approximation approximation_from_json(const Json& j);

Json modulus_result_json(const ModulusResult& r, const CurveFamily& family, double tolerance);

Json decay_table_json(const CriticalExponentReport& r, const SweepOptions& options,
                      const std::vector<double>& p_grid, int q);
std::string decay_table_csv(const std::vector<DecayCell>& table);

Json weights_json(const WeightSequence& ws);
WeightSequence weights_from_json(const Json& j);

Json pressure_json(const PressureEstimate& pe, const ConvexityReport& cv,
                   const std::vector<double>& p_grid);
std::string pressure_csv(const PressureEstimate& pe);

Json theorem1_json(const Theorem1Bounds& b, double Q2, double tau2, int q, double lambda);

// Every stage object carries a "params" member with the inputs it used.
Json report_json(const BoundsReport& r);

}  // namespace racmod
