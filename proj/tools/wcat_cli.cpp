// Command-line front end. Everything goes through the C interface in wcat.h.
#include <chrono>
#include <cstdint>
#include <future>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wcat.h"

namespace {

using Json = nlohmann::ordered_json;

struct Failure {
  int code;
  std::string message;
};

void check(wcat_status status) {
  if (status != WCAT_OK) throw Failure{static_cast<int>(status), wcat_last_error()};
}

std::string take(char* text) {
  std::string s = text ? text : "";
  wcat_string_free(text);
  return s;
}

using WeightPtr = std::unique_ptr<wcat_weight, decltype(&wcat_weight_free)>;
using ShapePtr = std::unique_ptr<wcat_shape, decltype(&wcat_shape_free)>;

WeightPtr load_weight(const std::string& spec) {
  wcat_weight* w = nullptr;
  check(wcat_weight_parse(spec.c_str(), &w));
  return WeightPtr(w, &wcat_weight_free);
}

std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) throw std::invalid_argument(text);
    std::size_t used_a = 0;
    std::size_t used_b = 0;
    const std::string a = text.substr(0, dots);
    const std::string b = text.substr(dots + 2);
    const auto lo = std::stoull(a, &used_a);
    const auto hi = std::stoull(b, &used_b);
    if (used_a != a.size() || used_b != b.size()) throw std::invalid_argument(text);
    return {lo, hi};
  } catch (const std::exception&) {
    throw Failure{WCAT_ERR_PARSE, "bad range '" + text + "' (expected A..B)"};
  }
}

std::vector<std::uint64_t> parse_moduli(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoull(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Failure{WCAT_ERR_PARSE, "bad modulus '" + item + "'"};
    }
  }
  if (out.empty()) throw Failure{WCAT_ERR_PARSE, "no modulus given"};
  return out;
}

// Echo of the options that were actually given on the command line.
Json parameters_of(const CLI::App* sub) {
  Json params = Json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->count() == 0 || opt->get_lnames().empty()) continue;
    const std::string name = opt->get_lnames().front();
    if (opt->get_expected_min() == 0) {
      params[name] = true;
    } else {
      params[name] = opt->as<std::string>();
    }
  }
  return params;
}

struct Output {
  std::string text;
  bool is_json = true;
};

void emit(const Output& out, bool envelope, const std::string& command, const CLI::App* sub, double elapsed_ms) {
  if (!envelope) {
    std::cout << out.text;
    if (out.text.empty() || out.text.back() != '\n') std::cout << '\n';
    return;
  }
  Json j;
  j["command"] = command;
  j["parameters"] = parameters_of(sub);
  j["result"] = out.is_json ? Json::parse(out.text) : Json(out.text);
  j["elapsed_ms"] = elapsed_ms;
  std::cout << j.dump() << '\n';
}

std::string csv_from_orbits(const std::string& json_text, bool reduce) {
  const Json j = Json::parse(json_text);
  std::ostringstream out;
  out << "shape,vertices,size" << (reduce ? ",reduced,removed" : "") << '\n';
  for (const auto& s : j["shapes"]) {
    out << s["shape"].get<std::string>() << ',' << s["vertices"] << ',' << s["size"];
    if (reduce) out << ',' << s["reduced"].get<std::string>() << ',' << s["removed"];
    out << '\n';
  }
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted Catalan numbers: exact values, valuations, orbits, epsilon digits and periods"};
  app.require_subcommand(1);
  app.fallthrough();
  bool envelope = false;
  std::string format = "json";
  app.add_flag("--envelope", envelope, "Wrap output as {command, parameters, result, elapsed_ms}");
  app.add_option("--format", format, "json or csv (row-shaped results only)")
      ->check(CLI::IsMember({"json", "csv"}));

  std::string weight;
  std::uint64_t n = 0;
  unsigned q = 2;
  std::uint64_t modulus = 0;

  auto* compute = app.add_subcommand("compute", "C_n^b, or the q-ary weighted count");
  compute->add_option("--weight", weight, "preset:NAME | poly:c0,c1,... | table:v0,v1,...")->required();
  compute->add_option("--n", n, "Index")->required();
  compute->add_option("--q", q, "Branching (2 = Dyck paths)")->check(CLI::Range(2u, 64u));
  compute->add_option("--mod", modulus, "Reduce modulo M")->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 62));

  unsigned long p = 2;
  std::string expr = "cb";
  std::string range;
  std::string engine = "auto";
  auto* valuation = app.add_subcommand("valuation", "p-adic valuations of C_n^b, C_n^b - C_n or C_n^b - 1 (CSV)");
  valuation->add_option("--weight", weight)->required();
  valuation->add_option("--p", p, "Prime")->required();
  valuation->add_option("--expr", expr, "cb | cb-c | cb-1")->check(CLI::IsMember({"cb", "cb-c", "cb-1"}));
  valuation->add_option("--range", range, "A..B")->required();
  valuation->add_option("--engine", engine, "auto | exact | modular")->check(CLI::IsMember({"auto", "exact", "modular"}));

  std::string theorem;
  std::string window;
  auto* check_cmd = app.add_subcommand("check", "Hypotheses of the valuation theorems");
  check_cmd->add_option("--weight", weight)->required();
  check_cmd->add_option("--theorem", theorem, "ps | main | conj | qmain:Q")->required();
  check_cmd->add_option("--window", window, "A..B for table weights");

  bool minimal = false;
  bool reduce = false;
  std::uint64_t max_orbit_n = 18;
  auto* orbits = app.add_subcommand("orbits", "Orbits of trees on n vertices");
  orbits->add_option("--n", n)->required();
  orbits->add_option("--q", q)->check(CLI::Range(2u, 16u));
  orbits->add_flag("--minimal", minimal, "Minimal orbits only");
  orbits->add_flag("--reduce", reduce, "Add each shape's reduction");
  orbits->add_option("--max-orbit-n", max_orbit_n, "Enumeration cap");

  std::string shape;
  std::uint64_t max_m = 0;
  std::string method = "all";
  auto* epsilon = app.add_subcommand("epsilon", "Epsilon digits of an orbit");
  epsilon->add_option("--weight", weight)->required();
  epsilon->add_option("--shape", shape, "Nested parentheses, e.g. (()())")->required();
  epsilon->add_option("--m", max_m, "Highest order")->required();
  epsilon->add_option("--q", q)->check(CLI::Range(2u, 16u));
  epsilon->add_option("--method", method, "direct | recursive | coin | all")
      ->check(CLI::IsMember({"direct", "recursive", "coin", "all"}));

  std::string moduli;
  std::uint64_t max_terms = 5000;
  bool parallel = false;
  auto* period = app.add_subcommand("period", "Eventual period of C_n^b mod m");
  period->add_option("--weight", weight)->required();
  period->add_option("--mod", moduli, "Modulus or comma-separated list")->required();
  period->add_option("--max-terms", max_terms, "Window length")->check(CLI::PositiveNumber);
  period->add_flag("--parallel", parallel, "Analyze the moduli concurrently");

  std::uint64_t truncate = 0;
  auto* pq = app.add_subcommand("pq", "Numerator and denominator of the truncated continued fraction");
  pq->add_option("--weight", weight)->required();
  pq->add_option("--truncate", truncate, "Truncation index")->required();
  pq->add_option("--mod", modulus, "Reduce coefficients modulo M")->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 62));

  auto* morse = app.add_subcommand("morse", "Morse link numbers L_n");
  morse->require_subcommand(1);
  morse->fallthrough();
  unsigned r = 0;
  std::uint64_t window_n = 0;
  unsigned depth = 6;
  std::string which;
  unsigned k = 1;

  auto* morse_number = morse->add_subcommand("number", "L_n");
  morse_number->add_option("--n", n)->required();

  auto* morse_period = morse->add_subcommand("period", "Period of L_n mod M or mod 3^r");
  morse_period->add_option("--mod", moduli, "Modulus or comma-separated list");
  morse_period->add_option("--r", r, "Check the period of L_n mod 3^r against 2*3^(r-3)")->check(CLI::Range(3u, 39u));
  morse_period->add_option("--max-terms", max_terms, "Window length")->check(CLI::PositiveNumber);
  morse_period->add_flag("--parallel", parallel, "Analyze the moduli concurrently");

  auto* morse_profile = morse->add_subcommand("profile", "Valuation profile of a Morse expression");
  morse_profile->add_option("--p", p)->required();
  morse_profile->add_option("--expr", expr, "cb | cb-c | cb-1")->check(CLI::IsMember({"cb", "cb-c", "cb-1"}));
  morse_profile->add_option("--range", range, "A..B")->required();
  morse_profile->add_option("--k", k, "Use the weight (2x+1)^(2k)")->check(CLI::Range(1u, 64u));
  morse_profile->add_option("--engine", engine, "auto | exact | modular")->check(CLI::IsMember({"auto", "exact", "modular"}));

  auto* morse_fit = morse->add_subcommand("fit-alpha", "p-adic alpha fitted from valuation data");
  morse_fit->add_option("--which", which, "2adic | 2adic-general:K | 5adic | 3adic")->required();
  morse_fit->add_option("--n", window_n, "Largest n used")->required();
  morse_fit->add_option("--depth", depth, "Digits to fit");

  auto* morse_report = morse->add_subcommand("report", "Evidence report for a valuation conjecture");
  morse_report->add_option("--which", which, "2adic | 2adic-general:K | 5adic | 3adic")->required();
  morse_report->add_option("--n", window_n, "Largest n used")->required();
  morse_report->add_option("--depth", depth, "Digits to fit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  };
  int exit_code = 0;
  auto run_periods = [&](const WeightPtr& w) -> Output {
    const auto mods = parse_moduli(moduli);
    auto one = [&](std::uint64_t m) {
      char* text = nullptr;
      check(wcat_period(w.get(), m, max_terms, &text));
      return take(text);
    };
    if (mods.size() == 1) return {one(mods.front())};
    std::vector<std::string> results(mods.size());
    if (parallel) {
      std::vector<std::future<std::string>> jobs;
      for (auto m : mods) jobs.push_back(std::async(std::launch::async, one, m));
      for (std::size_t i = 0; i < jobs.size(); ++i) results[i] = jobs[i].get();
    } else {
      for (std::size_t i = 0; i < mods.size(); ++i) results[i] = one(mods[i]);
    }
    Json arr = Json::array();
    for (const auto& s : results) arr.push_back(Json::parse(s));
    return {arr.dump()};
  };

  try {
    char* text = nullptr;
    Output out;
    std::string command;
    const CLI::App* sub = nullptr;
    if (compute->parsed()) {
      command = "compute";
      sub = compute;
      const auto w = load_weight(weight);
      check(wcat_compute(w.get(), n, q, modulus, &text));
      out = {take(text)};
    } else if (valuation->parsed()) {
      command = "valuation";
      sub = valuation;
      const auto w = load_weight(weight);
      const auto [a, b] = parse_range(range);
      const int eng = engine == "exact" ? 1 : engine == "modular" ? 2 : 0;
      const bool csv = app.get_option("--format")->count() == 0 || format == "csv";
      check(wcat_valuation_profile(w.get(), expr.c_str(), p, a, b, eng, csv ? 1 : 0, &text));
      out = {take(text), !csv};
    } else if (check_cmd->parsed()) {
      command = "check";
      sub = check_cmd;
      const auto w = load_weight(weight);
      std::uint64_t a = 0;
      std::uint64_t b = 0;
      if (!window.empty()) std::tie(a, b) = parse_range(window);
      check(wcat_check_conditions(w.get(), theorem.c_str(), a, b, &text));
      out = {take(text)};
    } else if (orbits->parsed()) {
      command = "orbits";
      sub = orbits;
      check(wcat_orbits(n, q, minimal ? 1 : 0, reduce ? 1 : 0, max_orbit_n, &text));
      out = {take(text)};
      if (format == "csv") out = {csv_from_orbits(out.text, reduce), false};
    } else if (epsilon->parsed()) {
      command = "epsilon";
      sub = epsilon;
      const auto w = load_weight(weight);
      wcat_shape* s = nullptr;
      check(wcat_shape_parse(shape.c_str(), q, &s));
      const ShapePtr holder(s, &wcat_shape_free);
      const wcat_status status = wcat_epsilon(w.get(), holder.get(), max_m, method.c_str(), &text);
      if (status == WCAT_ERR_MISMATCH && text) {
        std::cerr << "error: " << wcat_last_error() << '\n';
        exit_code = 1;
      } else {
        check(status);
      }
      out = {take(text)};
    } else if (period->parsed()) {
      command = "period";
      sub = period;
      const auto w = load_weight(weight);
      out = run_periods(w);
    } else if (pq->parsed()) {
      command = "pq";
      sub = pq;
      const auto w = load_weight(weight);
      check(wcat_pq(w.get(), truncate, modulus, &text));
      out = {take(text)};
    } else if (morse_number->parsed()) {
      command = "morse number";
      sub = morse_number;
      check(wcat_morse_number(n, &text));
      out = {take(text)};
    } else if (morse_period->parsed()) {
      command = "morse period";
      sub = morse_period;
      if (r != 0) {
        const std::uint64_t window_terms = morse_period->get_option("--max-terms")->count() ? max_terms : 0;
        check(wcat_morse_mod3r(r, window_terms, &text));
        out = {take(text)};
      } else if (!moduli.empty()) {
        const auto w = load_weight("preset:morse");
        out = run_periods(w);
      } else {
        throw Failure{WCAT_ERR_PARSE, "morse period needs --mod or --r"};
      }
    } else if (morse_profile->parsed()) {
      command = "morse profile";
      sub = morse_profile;
      const auto w = load_weight(k == 1 ? "preset:morse" : "preset:morse-power:" + std::to_string(k));
      const auto [a, b] = parse_range(range);
      const int eng = engine == "exact" ? 1 : engine == "modular" ? 2 : 0;
      const bool csv = format == "csv";
      check(wcat_valuation_profile(w.get(), expr.c_str(), p, a, b, eng, csv ? 1 : 0, &text));
      out = {take(text), !csv};
    } else if (morse_fit->parsed() || morse_report->parsed()) {
      const bool fit_only = morse_fit->parsed();
      command = fit_only ? "morse fit-alpha" : "morse report";
      sub = fit_only ? morse_fit : morse_report;
      check(wcat_morse_report(which.c_str(), window_n, depth, &text));
      out = {take(text)};
      if (fit_only) {
        const Json report = Json::parse(out.text);
        Json j;
        j["conjecture"] = report["conjecture"];
        j["note"] = report["note"];
        j["range"] = report["range"];
        if (report.contains("constant")) j["constant"] = report["constant"];
        j["alpha"] = report.contains("alpha") ? report["alpha"] : Json(nullptr);
        out = {j.dump()};
      }
    }
    emit(out, envelope, command, sub, elapsed());
    return exit_code;
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return WCAT_ERR_INTERNAL;
  }
}
