#pragma once

#include <json.hpp>

#include "crm/axioms.hpp"
#include "crm/contraction.hpp"
#include "crm/orbit.hpp"

namespace crm {

/// Reals are emitted rounded to 15 significant digits; non-finite values
/// become null.
nlohmann::json real_json(double v);

nlohmann::json to_json(const Witness& w);
nlohmann::json to_json(const AxiomReport& r);
nlohmann::json to_json(const Classification& c);
nlohmann::json to_json(const ContractionCertificate& c);
nlohmann::json to_json(const ConditionEstimate& c, bool verbose = false);
nlohmann::json to_json(const DecayReport& r);
nlohmann::json to_json(const SkipReport& r);
nlohmann::json to_json(const CauchyReport& r);
nlohmann::json to_json(const AprioriReport& r);
nlohmann::json to_json(const UniquenessReport& r);

/// One record per orbit index: n, x, step_dist, skip_dist, decay_ratio.
std::vector<nlohmann::json> trace_records(const OrbitTrace& t);
nlohmann::json trace_summary(const OrbitTrace& t);

}  // namespace crm
