#include "wcat.h"

#include <cstdlib>
#include <cstring>
#include <map>
#include <new>
#include <string>

#include "wcat/catalan.hpp"
#include "wcat/error.hpp"
#include "wcat/morse.hpp"
#include "wcat/orbits.hpp"
#include "wcat/periodicity.hpp"
#include "wcat/serialize.hpp"
#include "wcat/weights.hpp"

struct wcat_weight {
  wcat::WeightFunction fn;
};

struct wcat_shape {
  wcat::OrbitShape shape;
};

namespace {

thread_local std::string last_error;

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

wcat_status fail(wcat_status status, const std::string& message) {
  last_error = message;
  return status;
}

template <typename Body>
wcat_status guarded(Body&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const wcat::Error& e) {
    switch (e.kind()) {
      case wcat::ErrorKind::parse: return fail(WCAT_ERR_PARSE, e.what());
      case wcat::ErrorKind::domain: return fail(WCAT_ERR_DOMAIN, e.what());
      case wcat::ErrorKind::resource: return fail(WCAT_ERR_RESOURCE, e.what());
      case wcat::ErrorKind::mismatch: return fail(WCAT_ERR_MISMATCH, e.what());
    }
    return fail(WCAT_ERR_INTERNAL, e.what());
  } catch (const std::bad_alloc&) {
    return fail(WCAT_ERR_RESOURCE, "out of memory");
  } catch (const std::exception& e) {
    return fail(WCAT_ERR_INTERNAL, e.what());
  }
}

// Runs body() -> std::string and hands the text to *out.
template <typename Body>
wcat_status produce(char** out, Body&& body) {
  if (!out) return fail(WCAT_ERR_ARGUMENT, "output pointer is NULL");
  *out = nullptr;
  return guarded([&]() -> wcat_status {
    *out = duplicate(body());
    return WCAT_OK;
  });
}

std::string dump(const wcat::Json& j) { return j.dump(); }

}  // namespace

extern "C" {

const char* wcat_version(void) { return "1.0.0"; }

const char* wcat_last_error(void) { return last_error.c_str(); }

void wcat_string_free(char* s) { std::free(s); }

wcat_status wcat_weight_parse(const char* spec, wcat_weight** out) {
  if (!spec || !out) return fail(WCAT_ERR_ARGUMENT, "NULL argument");
  *out = nullptr;
  return guarded([&]() -> wcat_status {
    *out = new wcat_weight{wcat::WeightFunction::parse(spec)};
    return WCAT_OK;
  });
}

void wcat_weight_free(wcat_weight* w) { delete w; }

wcat_status wcat_weight_spec(const wcat_weight* w, char** out) {
  if (!w) return fail(WCAT_ERR_ARGUMENT, "NULL weight");
  return produce(out, [&] { return w->fn.spec(); });
}

wcat_status wcat_weight_eval(const wcat_weight* w, uint64_t x, char** out) {
  if (!w) return fail(WCAT_ERR_ARGUMENT, "NULL weight");
  return produce(out, [&] { return w->fn.eval(x).get_str(); });
}

wcat_status wcat_shape_parse(const char* text, unsigned q, wcat_shape** out) {
  if (!text || !out) return fail(WCAT_ERR_ARGUMENT, "NULL argument");
  *out = nullptr;
  return guarded([&]() -> wcat_status {
    *out = new wcat_shape{wcat::OrbitShape::parse(text, q)};
    return WCAT_OK;
  });
}

void wcat_shape_free(wcat_shape* s) { delete s; }

wcat_status wcat_shape_key(const wcat_shape* s, char** out) {
  if (!s) return fail(WCAT_ERR_ARGUMENT, "NULL shape");
  return produce(out, [&] { return s->shape.key(); });
}

wcat_status wcat_compute(const wcat_weight* w, uint64_t n, unsigned q, uint64_t modulus, char** out) {
  if (!w) return fail(WCAT_ERR_ARGUMENT, "NULL weight");
  return produce(out, [&]() -> std::string {
    if (q == 2) {
      if (modulus != 0) return std::to_string(wcat::weighted_catalan_mod(w->fn, n, modulus));
      return wcat::weighted_catalan(w->fn, n).get_str();
    }
    wcat::Integer v = wcat::q_weighted_catalan(w->fn, q, n);
    if (modulus != 0) {
      if (modulus < 2) throw wcat::DomainError("modulus must be at least 2");
      return std::to_string(mpz_fdiv_ui(v.get_mpz_t(), modulus));
    }
    return v.get_str();
  });
}

wcat_status wcat_valuation_profile(const wcat_weight* w, const char* expr, unsigned long p, uint64_t first,
                                   uint64_t last, int engine, int csv, char** out) {
  if (!w || !expr) return fail(WCAT_ERR_ARGUMENT, "NULL argument");
  return produce(out, [&]() -> std::string {
    if (engine < 0 || engine > 2) throw wcat::DomainError("engine must be 0, 1 or 2");
    const auto profile = wcat::valuation_profile(w->fn, wcat::parse_profile_expression(expr), p, first, last,
                                                 static_cast<wcat::ProfileEngine>(engine));
    return csv ? wcat::to_csv(profile) : dump(wcat::to_json(profile));
  });
}

wcat_status wcat_check_conditions(const wcat_weight* w, const char* theorem, uint64_t window_begin,
                                  uint64_t window_end, char** out) {
  if (!w || !theorem) return fail(WCAT_ERR_ARGUMENT, "NULL argument");
  return produce(out, [&] {
    return dump(wcat::to_json(
        wcat::check_conditions(w->fn, wcat::TheoremSelector::parse(theorem), window_begin, window_end)));
  });
}

wcat_status wcat_orbits(uint64_t n, unsigned q, int minimal, int reduce, uint64_t max_vertices, char** out) {
  return produce(out, [&] {
    const auto shapes = minimal ? wcat::minimal_orbits(n, q)
                                : wcat::enumerate_orbits(n, q, max_vertices ? max_vertices : wcat::kDefaultOrbitCap);
    wcat::Integer total = 0;
    for (const auto& s : shapes) total += wcat::orbit_size(s);
    wcat::Json j;
    j["n"] = n;
    j["q"] = q;
    j["minimal"] = minimal != 0;
    j["count"] = shapes.size();
    j["total_size"] = wcat::integer_json(total);
    j["shapes"] = wcat::orbits_json(shapes, reduce != 0);
    if (reduce) {
      std::map<std::string, std::size_t> counts;
      for (const auto& s : shapes) ++counts[wcat::reduce_orbit(s).shape.key()];
      wcat::Json c = wcat::Json::array();
      for (const auto& [key, count] : counts) c.push_back({{"shape", key}, {"count", count}});
      j["reductions"] = c;
    }
    return dump(j);
  });
}

wcat_status wcat_epsilon(const wcat_weight* w, const wcat_shape* s, uint64_t max_m, const char* method,
                         char** out) {
  if (!w || !s || !method) return fail(WCAT_ERR_ARGUMENT, "NULL argument");
  if (!out) return fail(WCAT_ERR_ARGUMENT, "output pointer is NULL");
  *out = nullptr;
  return guarded([&]() -> wcat_status {
    const std::string which = method;
    if (which != "direct" && which != "recursive" && which != "coin" && which != "all") {
      throw wcat::ParseError("unknown method '" + which + "' (expected direct, recursive, coin or all)");
    }
    const wcat::OrbitShape& shape = s->shape;
    const unsigned q = shape.q();
    std::size_t order = max_m + shape.vertex_count() + 1;
    if (auto size = w->fn.domain_size()) order = std::min<std::uint64_t>(order, *size - 1);
    const bool need_digits = which != "direct";
    wcat::EpsilonSequence eps_b;
    if (need_digits) eps_b = wcat::epsilon_of_weight(w->fn, order, q);

    wcat::Json methods = wcat::Json::object();
    std::vector<std::vector<unsigned>> results;
    if (which == "direct" || which == "all") {
      auto bits = wcat::epsilon_direct(shape, w->fn, max_m).bits;
      methods["direct"] = bits;
      results.push_back(bits);
    }
    if (which == "recursive" || which == "all") {
      auto bits = wcat::epsilon_recursive(shape, eps_b, max_m).bits;
      methods["recursive"] = bits;
      results.push_back(bits);
    }
    const bool coin_fits = q == 2 && shape.vertex_count() <= wcat::kCoinVertexCap && max_m <= wcat::kCoinOrderCap;
    if (which == "coin" || (which == "all" && coin_fits)) {
      std::vector<unsigned> bits;
      for (std::size_t m = 0; m <= max_m; ++m) bits.push_back(wcat::coin_oracle(shape, eps_b, m));
      methods["coin"] = bits;
      results.push_back(bits);
    } else if (which == "all") {
      methods["coin"] = q != 2 ? "skipped: defined for q = 2 only" : "skipped: beyond enumeration cap";
    }
    bool agree = true;
    for (const auto& r : results) agree = agree && r == results.front();

    wcat::Json j;
    j["shape"] = shape.key();
    j["weight"] = w->fn.spec();
    j["q"] = q;
    j["max_m"] = max_m;
    j["methods"] = methods;
    j["agree"] = agree;
    j["bits"] = agree ? wcat::Json(results.front()) : wcat::Json(nullptr);
    *out = duplicate(j.dump());
    if (!agree) return fail(WCAT_ERR_MISMATCH, "epsilon methods disagree on " + shape.key());
    return WCAT_OK;
  });
}

wcat_status wcat_period(const wcat_weight* w, uint64_t modulus, uint64_t max_terms, char** out) {
  if (!w) return fail(WCAT_ERR_ARGUMENT, "NULL weight");
  return produce(out, [&] {
    const auto report =
        wcat::analyze_catalan_period(w->fn, modulus, max_terms ? max_terms : wcat::kDefaultMaxTerms);
    wcat::Json j = wcat::to_json(report);
    if (report.truncation) {
      j["pure_periodicity"] =
          wcat::to_json(wcat::pure_periodicity_sufficient(wcat::continued_fraction_pq(w->fn, *report.truncation), modulus));
    }
    return dump(j);
  });
}

wcat_status wcat_pq(const wcat_weight* w, uint64_t truncation, uint64_t modulus, char** out) {
  if (!w) return fail(WCAT_ERR_ARGUMENT, "NULL weight");
  return produce(out, [&] {
    const auto pq = wcat::continued_fraction_pq(w->fn, truncation);
    if (modulus == 0) return dump(wcat::to_json(pq));
    wcat::Json j = wcat::to_json(pq, modulus);
    j["pure_periodicity"] = wcat::to_json(wcat::pure_periodicity_sufficient(pq, modulus));
    return dump(j);
  });
}

wcat_status wcat_truncation_index(const wcat_weight* w, uint64_t modulus, uint64_t bound, char** out) {
  if (!w) return fail(WCAT_ERR_ARGUMENT, "NULL weight");
  return produce(out, [&] {
    const auto k = wcat::truncation_index(w->fn, modulus, bound);
    wcat::Json j;
    j["modulus"] = modulus;
    j["bound"] = bound;
    j["truncation"] = k ? wcat::Json(*k) : wcat::Json(nullptr);
    return dump(j);
  });
}

wcat_status wcat_morse_number(uint64_t n, char** out) {
  return produce(out, [&] { return wcat::morse_number(n).get_str(); });
}

wcat_status wcat_morse_mod3r(unsigned r, uint64_t window, char** out) {
  return produce(out, [&] { return dump(wcat::to_json(wcat::mod3r_period_check(r, window))); });
}

wcat_status wcat_morse_report(const char* which, uint64_t window, unsigned depth, char** out) {
  if (!which) return fail(WCAT_ERR_ARGUMENT, "NULL argument");
  return produce(out, [&] {
    return dump(wcat::to_json(wcat::conjecture_report(wcat::ConjectureSpec::parse(which), window, depth)));
  });
}

wcat_status wcat_fit_padic(const uint64_t* n, const unsigned* t, const int* lower_bound, size_t count,
                           unsigned long p, unsigned depth, char** out) {
  if ((!n || !t) && count > 0) return fail(WCAT_ERR_ARGUMENT, "NULL data");
  return produce(out, [&] {
    std::vector<wcat::PadicDatum> data;
    for (size_t i = 0; i < count; ++i) data.push_back({n[i], t[i], lower_bound && lower_bound[i] != 0});
    return dump(wcat::to_json(wcat::fit_padic_alpha(data, p, depth)));
  });
}

}  // extern "C"
