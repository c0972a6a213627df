#pragma once

#include <json.hpp>

#include "mobius/hyperbolicity.hpp"
#include "mobius/limit_sets.hpp"
#include "mobius/loci.hpp"
#include "mobius/semigroup.hpp"

namespace mobius {

inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::ordered_json;

/// Extended real; "inf" for the point at infinity.
Json point_json(BoundaryPoint p);
/// Arcs as [lower, upper] read in increasing real direction.
Json to_json(const Arc& a);
Json to_json(const ArcUnion& u);
Json to_json(const MoebiusMap& m);
Json to_json(const WordWitness& w);
Json to_json(const MulticoneCertificate& c);
Json to_json(const MulticoneFailure& f);
Json to_json(const MulticoneVerification& v);
Json to_json(const LimitSetApprox& ls);
Json to_json(const CoreSet& c);
Json to_json(const ElementaryStatus& e);
Json to_json(const AffineCertificate& c);
Json to_json(const NotSemidiscreteConclusion& c);
Json to_json(const SpectralEstimate& s);
Json to_json(const RankOneResult& r);
Json to_json(const LociReport& r);
Json to_json(const ConsistencyVerdict& v);

}  // namespace mobius
