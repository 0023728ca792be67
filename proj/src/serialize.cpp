#include "wcat/serialize.hpp"

#include <sstream>

namespace wcat {

Json integer_json(const Integer& v) {
  if (v.fits_slong_p()) return static_cast<std::int64_t>(v.get_si());
  return v.get_str();
}

Json integers_json(const std::vector<Integer>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(integer_json(x));
  return out;
}

Json to_json(const ConditionReport& report) {
  Json clauses = Json::array();
  for (const auto& c : report.clauses) clauses.push_back({{"clause", c.clause}, {"holds", c.holds}});
  Json witnesses = Json::array();
  for (const auto& w : report.witnesses) {
    witnesses.push_back({{"clause", w.clause}, {"order", w.order}, {"x", w.x}, {"value", integer_json(w.value)}});
  }
  return {{"theorem", report.theorem_id},
          {"holds", report.holds},
          {"exact", report.exact},
          {"window", {report.window_begin, report.window_end}},
          {"clauses", clauses},
          {"witnesses", witnesses}};
}

Json to_json(const PeriodReport& report) {
  Json j;
  j["modulus"] = report.modulus;
  j["preperiod"] = report.detected ? Json(report.preperiod) : Json(nullptr);
  j["period"] = report.detected ? Json(report.period) : Json(nullptr);
  j["window"] = report.window;
  j["certified"] = report.certified;
  j["detected"] = report.detected;
  j["truncation"] = report.truncation ? Json(*report.truncation) : Json(nullptr);
  j["state_width"] = report.state_width;
  return j;
}

Json to_json(const PQPair& pq, std::optional<std::uint64_t> modulus) {
  Json j;
  j["truncation"] = pq.truncation;
  if (modulus) {
    const Modulus m(*modulus);
    j["modulus"] = *modulus;
    j["P"] = pq.numerator.reduced(m);
    j["Q"] = pq.denominator.reduced(m);
  } else {
    j["P"] = integers_json(pq.numerator.coefficients());
    j["Q"] = integers_json(pq.denominator.coefficients());
  }
  return j;
}

Json to_json(const PurityVerdict& verdict) {
  return {{"holds", verdict.holds}, {"reasons", verdict.reasons}};
}

Json to_json(const ValuationProfile& profile) {
  Json rows = Json::array();
  for (const auto& r : profile.rows) {
    Json row{{"n", r.n}};
    if (r.valuation) {
      row["valuation"] = *r.valuation;
    } else if (r.lower_bound) {
      row["valuation"] = nullptr;
      row["at_least"] = r.bound;
    } else {
      row["valuation"] = "inf";
    }
    rows.push_back(row);
  }
  Json j;
  j["weight"] = profile.weight;
  j["expression"] = to_string(profile.expression);
  j["p"] = profile.p;
  j["exact"] = profile.exact;
  if (!profile.exact) j["precision"] = profile.precision;
  j["rows"] = rows;
  return j;
}

std::string to_csv(const ValuationProfile& profile) {
  std::ostringstream out;
  out << "n,valuation\n";
  for (const auto& r : profile.rows) {
    out << r.n << ',';
    if (r.valuation) {
      out << *r.valuation;
    } else if (r.lower_bound) {
      out << ">=" << r.bound;
    } else {
      out << "inf";
    }
    out << '\n';
  }
  return out.str();
}

Json to_json(const PadicFit& fit) {
  Json conflicts = Json::array();
  for (const auto& c : fit.conflicts) {
    conflicts.push_back({{"n", c.n}, {"expected", c.expected}, {"observed", c.observed}});
  }
  return {{"p", fit.p},
          {"depth", fit.depth},
          {"certified_depth", fit.certified_depth},
          {"residue", integer_json(fit.residue)},
          {"digits", fit.digits},
          {"consistent", fit.consistent},
          {"ambiguous", fit.ambiguous},
          {"data_used", fit.data_used},
          {"conflicts", conflicts}};
}

Json to_json(const Mod3Verdict& verdict) {
  return {{"r", verdict.r},
          {"modulus", verdict.modulus},
          {"bound", verdict.bound},
          {"divides", verdict.divides},
          {"report", to_json(verdict.report)}};
}

Json to_json(const ConjectureReport& report) {
  Json j;
  j["conjecture"] = report.id;
  j["note"] = "consistency check over a finite window, not a proof";
  j["range"] = {report.first_n, report.window};
  j["depth"] = report.depth;
  j["consistent"] = report.consistent;
  j["first_unexplained"] = report.first_unexplained ? Json(*report.first_unexplained) : Json(nullptr);
  if (report.constant) j["constant"] = *report.constant;
  if (report.fit) j["alpha"] = to_json(*report.fit);
  if (!report.patterns.empty()) {
    Json patterns = Json::array();
    for (const auto& p : report.patterns) {
      patterns.push_back({{"pattern", p.label},
                          {"holds", p.holds},
                          {"checked", p.checked},
                          {"first_failure", p.first_failure ? Json(*p.first_failure) : Json(nullptr)}});
    }
    j["patterns"] = patterns;
  }
  if (!report.candidates_by_depth.empty()) j["candidates_by_depth"] = report.candidates_by_depth;
  if (!report.groups.empty()) {
    Json groups = Json::array();
    for (const auto& g : report.groups) {
      groups.push_back({{"xi", g.xi}, {"digit", g.digit}, {"count", g.count}, {"values", g.values},
                        {"single_valued", g.values.size() == 1}});
    }
    j["groups"] = groups;
  }
  return j;
}

Json to_json(const EpsilonSequence& eps) {
  return {{"q", eps.q}, {"bits", eps.bits}, {"verified_order", eps.verified_order}, {"exact", eps.exact}};
}

Json orbits_json(const std::vector<OrbitShape>& shapes, bool with_reduction) {
  Json out = Json::array();
  for (const auto& s : shapes) {
    Json j{{"shape", s.key()}, {"vertices", s.vertex_count()}, {"size", integer_json(orbit_size(s))}};
    if (with_reduction) {
      const Reduction r = reduce_orbit(s);
      j["reduced"] = r.shape.key();
      j["removed"] = r.removed;
    }
    out.push_back(j);
  }
  return out;
}

std::string epsilon_source_name(EpsilonSource source) {
  switch (source) {
    case EpsilonSource::direct: return "direct";
    case EpsilonSource::recursion: return "recursive";
    case EpsilonSource::coin: return "coin";
  }
  return "direct";
}

}  // namespace wcat
