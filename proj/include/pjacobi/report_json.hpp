#pragma once

#include <json.hpp>

#include "pjacobi/ensemble.hpp"

namespace pjacobi {

using ojson = nlohmann::ordered_json;

/// +inf -> "inf", -inf -> "-inf", NaN -> null, finite values as numbers.
ojson extended_real(double x);

ojson to_json(const BoundRecord& r);
/// The bounds report proper: an array of records.
ojson to_json(const BoundsReport& r);
ojson to_json(const BandStructure& bs);
ojson to_json(const PotentialReport& pr);
ojson to_json(const ScalarSummary& s);
ojson to_json(const TrialReport& t, bool includeTiming = false);
ojson to_json(const EnsembleSummary& s);
ojson to_json(const EnsembleConfig& c);
ojson to_json(const EnsembleResult& r, bool includeTiming = false);

}  // namespace pjacobi
