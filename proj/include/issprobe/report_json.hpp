#pragma once

#include "issprobe/audit.hpp"
#include "issprobe/rewards.hpp"
#include "issprobe/stability.hpp"
#include "issprobe/values.hpp"

#include <json.hpp>

namespace issprobe {

using ojson = nlohmann::ordered_json;

/// Finite doubles as numbers; inf and nan as the strings "inf", "-inf", "nan".
ojson num(double v);
ojson vec_json(const Vec& v);

ojson to_json(const ValueResult& r);
ojson to_json(const TrajectoryPair& p);
ojson to_json(const GainEnvelope& e, double alpha);
ojson to_json(const GainFit& f, double alpha);
ojson to_json(const GainWitness& w);
ojson to_json(const EnvelopeInfeasible& e);
ojson to_json(const SensitivityReport& r);
ojson to_json(const LyapunovReport& r, std::size_t max_violations = 16);
ojson to_json(const HolderEstimate& h);
ojson to_json(const EquivalenceReport& r);
ojson to_json(const ReverseReport& r);
ojson to_json(const CancellationReport& r);
ojson to_json(const SupValueReport& r, std::size_t max_witnesses = 16);
ojson to_json(const PerformanceDifference& p);

}  // namespace issprobe
