// JSON and CSV renderings of the library's report types. Integers that fit
// in 64 bits are JSON numbers; larger ones are decimal strings.
#ifndef WCAT_SERIALIZE_HPP
#define WCAT_SERIALIZE_HPP

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "wcat/arith.hpp"
#include "wcat/morse.hpp"
#include "wcat/orbits.hpp"
#include "wcat/periodicity.hpp"
#include "wcat/weights.hpp"

namespace wcat {

using Json = nlohmann::ordered_json;

Json integer_json(const Integer& v);
Json integers_json(const std::vector<Integer>& v);

Json to_json(const ConditionReport& report);
Json to_json(const PeriodReport& report);
Json to_json(const PQPair& pq, std::optional<std::uint64_t> modulus = {});
Json to_json(const PurityVerdict& verdict);
Json to_json(const ValuationProfile& profile);
Json to_json(const PadicFit& fit);
Json to_json(const Mod3Verdict& verdict);
Json to_json(const ConjectureReport& report);
Json to_json(const EpsilonSequence& eps);

/// One entry per shape: key, vertex count, orbit size and optionally its reduction.
Json orbits_json(const std::vector<OrbitShape>& shapes, bool with_reduction);

/// Columns n,valuation; "inf" for a vanishing expression, ">=K" for a
/// modular lower bound.
std::string to_csv(const ValuationProfile& profile);

std::string epsilon_source_name(EpsilonSource source);

}  // namespace wcat

#endif  // WCAT_SERIALIZE_HPP
