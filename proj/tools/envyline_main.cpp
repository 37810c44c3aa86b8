// Command-line front end: closed-form guarantee tables, error curves, the
// 3-atom mix optimizer, and the empirical verification suites. All output is
// deterministic for a fixed command line and seed.

#include <cmath>
#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "envyline/analysis.hpp"
#include "envyline/core.hpp"
#include "envyline/mechanisms.hpp"
#include "envyline/report.hpp"
#include "envyline/rng.hpp"
#include "envyline/verify.hpp"

namespace {

using nlohmann::ordered_json;
using namespace envyline;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

double parse_double(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError("malformed number: \"" + text + "\"");
  }
  if (used != text.size() || !std::isfinite(v)) {
    throw UsageError("malformed number: \"" + text + "\"");
  }
  return v;
}

// "lo:hi:step" expands to an inclusive grid with the final point snapped to
// hi; a bare number denotes the single-point range.
std::vector<double> parse_range(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() == 1) {
    return {parse_double(parts[0])};
  }
  if (parts.size() != 3) {
    throw UsageError("range must be lo:hi:step or a single value: \"" + text + "\"");
  }
  double lo = parse_double(parts[0]);
  double hi = parse_double(parts[1]);
  double step = parse_double(parts[2]);
  if (step <= 0.0 || hi < lo) {
    throw UsageError("range requires lo <= hi and step > 0: \"" + text + "\"");
  }
  std::vector<double> values;
  auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
  for (std::size_t i = 0; i <= count; ++i) {
    values.push_back(std::min(lo + static_cast<double>(i) * step, hi));
  }
  if (values.back() != hi) values.push_back(hi);
  return values;
}

std::pair<double, double> parse_bounds(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw UsageError("bounds must be lo:hi: \"" + text + "\"");
  }
  double lo = parse_double(text.substr(0, colon));
  double hi = parse_double(text.substr(colon + 1));
  if (hi < lo) throw UsageError("bounds require lo <= hi: \"" + text + "\"");
  return {lo, hi};
}

std::string ratio_csv(const ExtendedRatio& r) {
  return report::format_number(r.value());
}

void write_json_file(const std::string& path, const ordered_json& payload) {
  report::write_text_file(path, payload.dump(2) + "\n");
}

void write_csv_with_manifest(const std::string& path, const std::string& csv,
                             const report::RunManifest& manifest) {
  report::write_text_file(path, csv);
  write_json_file(path + ".manifest.json", report::to_json(manifest));
}

// ---- frontier ----

struct FrontierArgs {
  std::string mech;
  std::string alpha_range;
  std::string c_range;
  std::string out;
  std::string format = "csv";
};

int run_frontier(const FrontierArgs& args) {
  bool alpha_keyed = (args.mech == "bim" || args.mech == "birm");
  bool bias_keyed = (args.mech == "bam" || args.mech == "balrm");
  if (!alpha_keyed && !bias_keyed) {
    throw UsageError("frontier supports --mech bim|birm|bam|balrm");
  }
  if (alpha_keyed && args.alpha_range.empty()) {
    throw UsageError("--mech " + args.mech + " requires --alpha");
  }
  if (bias_keyed && args.c_range.empty()) {
    throw UsageError("--mech " + args.mech + " requires --c");
  }
  std::vector<double> params =
      parse_range(alpha_keyed ? args.alpha_range : args.c_range);

  std::vector<std::pair<double, GuaranteePair>> rows;
  for (double v : params) {
    GuaranteePair g = args.mech == "bim"    ? bim_guarantees(v)
                      : args.mech == "birm" ? birm_guarantees(v)
                      : args.mech == "bam"  ? bam_guarantees(v)
                                            : balrm_guarantees(v);
    rows.emplace_back(v, g);
  }

  report::RunManifest manifest = report::make_manifest(
      "frontier",
      {{"mech", args.mech},
       {alpha_keyed ? "alpha" : "c", alpha_keyed ? args.alpha_range : args.c_range},
       {"format", args.format}},
      0, "");

  if (args.format == "csv") {
    std::string csv = "mechanism,param,consistency,robustness\n";
    for (const auto& [v, g] : rows) {
      csv += args.mech + "," + report::format_number(v) + "," +
             ratio_csv(g.consistency) + "," + ratio_csv(g.robustness) + "\n";
    }
    write_csv_with_manifest(args.out, csv, manifest);
  } else if (args.format == "json") {
    ordered_json jrows = ordered_json::array();
    for (const auto& [v, g] : rows) {
      ordered_json row{{"mechanism", args.mech},
                       {"param", report::round_to_nine_digits(v)}};
      report::set_ratio_field(row, "consistency", g.consistency);
      report::set_ratio_field(row, "robustness", g.robustness);
      jrows.push_back(row);
    }
    write_json_file(args.out, ordered_json{{"command", "frontier"},
                                           {"rows", jrows},
                                           {"manifest", report::to_json(manifest)}});
  } else {
    throw UsageError("--format must be csv or json");
  }
  return 0;
}

// ---- curve ----

struct CurveArgs {
  double alpha = 1.5;
  std::string eta_range;
  std::string out;
  std::string format = "csv";
  bool empirical = false;
};

int run_curve(const CurveArgs& args) {
  std::vector<double> etas = parse_range(args.eta_range);
  ErrorCurve curve = bim_error_curve(args.alpha);
  std::vector<SearchResult> empirical;
  if (args.empirical) {
    empirical = empirical_error_curve(args.alpha, etas);
  }

  report::RunManifest manifest = report::make_manifest(
      "curve",
      {{"alpha", report::format_number(args.alpha)},
       {"eta", args.eta_range},
       {"empirical", args.empirical ? "true" : "false"},
       {"format", args.format}},
      0, "");

  if (args.format == "csv") {
    std::string csv = args.empirical ? "eta,closed_form,empirical\n" : "eta,closed_form\n";
    for (std::size_t i = 0; i < etas.size(); ++i) {
      csv += report::format_number(etas[i]) + "," + ratio_csv(evaluate(curve, etas[i]));
      if (args.empirical) csv += "," + ratio_csv(empirical[i].ratio);
      csv += "\n";
    }
    write_csv_with_manifest(args.out, csv, manifest);
  } else if (args.format == "json") {
    ordered_json jrows = ordered_json::array();
    for (std::size_t i = 0; i < etas.size(); ++i) {
      ordered_json row{{"eta", report::round_to_nine_digits(etas[i])}};
      report::set_ratio_field(row, "closed_form", evaluate(curve, etas[i]));
      if (args.empirical) {
        report::set_ratio_field(row, "empirical", empirical[i].ratio);
        row["witness"] = report::to_json(empirical[i].best);
      }
      jrows.push_back(row);
    }
    write_json_file(args.out, ordered_json{{"command", "curve"},
                                           {"alpha", report::round_to_nine_digits(args.alpha)},
                                           {"rows", jrows},
                                           {"manifest", report::to_json(manifest)}});
  } else {
    throw UsageError("--format must be csv or json");
  }
  return 0;
}

// ---- optimize-lrm ----

struct OptimizeArgs {
  std::string alpha_bounds = "0:0.25";
  std::string p_bounds = "0:0.5";
  std::string out;
};

int run_optimize(const OptimizeArgs& args) {
  auto [alo, ahi] = parse_bounds(args.alpha_bounds);
  auto [plo, phi] = parse_bounds(args.p_bounds);
  LrmOptimum opt = optimize_lrm(LrmBounds{alo, ahi, plo, phi});

  report::RunManifest manifest = report::make_manifest(
      "optimize-lrm", {{"alpha", args.alpha_bounds}, {"p", args.p_bounds}}, 0, "");
  ordered_json trace = ordered_json::array();
  for (const auto& [a, p, r] : opt.trace) {
    trace.push_back({{"alpha", report::round_to_nine_digits(a)},
                     {"p", report::round_to_nine_digits(p)},
                     {"ratio", report::round_to_nine_digits(r)}});
  }
  write_json_file(args.out,
                  ordered_json{{"command", "optimize-lrm"},
                               {"alpha_star", report::round_to_nine_digits(opt.alpha)},
                               {"p_star", report::round_to_nine_digits(opt.p)},
                               {"ratio", report::round_to_nine_digits(opt.ratio)},
                               {"trace", trace},
                               {"manifest", report::to_json(manifest)}});
  return 0;
}

// ---- verify ----

struct VerifyArgs {
  std::string suite = "all";
  std::uint64_t seed = 0;
  double tolerance = 5e-3;
  std::string out;
};

ordered_json sp_entry(const std::string& label, const SpResult& result,
                      bool expected_violation) {
  bool violation = !result.strategyproof;
  ordered_json entry{{"check", "strategyproofness"},
                     {"mechanism", label},
                     {"trials", result.trials},
                     {"expected_violation", expected_violation},
                     {"violation_found", violation},
                     {"pass", violation == expected_violation}};
  if (result.counterexample) {
    const SpCounterexample& ce = *result.counterexample;
    ordered_json profile = ordered_json::array();
    for (double p : ce.profile) profile.push_back(report::round_to_nine_digits(p));
    ordered_json jce{{"profile", profile},
                     {"agent", ce.agent},
                     {"misreport", report::round_to_nine_digits(ce.misreport)},
                     {"truthful_utility", report::round_to_nine_digits(ce.truthful_utility)},
                     {"deviated_utility", report::round_to_nine_digits(ce.deviated_utility)}};
    if (ce.yhat) jce["yhat"] = report::round_to_nine_digits(*ce.yhat);
    entry["counterexample"] = jce;
  }
  return entry;
}

void run_sp_suite(std::uint64_t seed, ordered_json& reports, bool& all_pass) {
  SplitMix64 seeder(seed);
  const int kTrials = 1000;
  const double sqrt5 = std::sqrt(5.0);
  std::vector<MechanismSpec> truthful_mechanisms{
      MechanismSpec::constant_half(),    MechanismSpec::bim(1.5),
      MechanismSpec::lrm(sqrt5 / 2.0 - 1.0, 0.4), MechanismSpec::bam(),
      MechanismSpec::birm(1.5),          MechanismSpec::balrm()};
  for (const MechanismSpec& spec : truthful_mechanisms) {
    SpResult r = strategyproofness_test(spec, kTrials, seeder.next_u64());
    ordered_json entry = sp_entry(spec.to_string(), r, /*expected_violation=*/false);
    all_pass = all_pass && entry["pass"].get<bool>();
    reports.push_back(entry);
  }
  // Negative controls: both react to reports, so a deviation can move the
  // facility toward the deviating agent.
  SpResult midpoint_result =
      strategyproofness_test(MechanismSpec::midpoint(), kTrials, seeder.next_u64());
  ordered_json mid = sp_entry("midpoint", midpoint_result, /*expected_violation=*/true);
  all_pass = all_pass && mid["pass"].get<bool>();
  reports.push_back(mid);
  SpResult mean_result = strategyproofness_test(mean_report_fixture(), false, kTrials,
                                                seeder.next_u64());
  ordered_json mean = sp_entry("fixture:mean", mean_result, /*expected_violation=*/true);
  all_pass = all_pass && mean["pass"].get<bool>();
  reports.push_back(mean);
}

void run_reduction_suite(std::uint64_t seed, ordered_json& reports, bool& all_pass) {
  ReductionResult r = reduction_property_test(1000, seed);
  ordered_json entry{{"check", "reduction"}, {"trials", r.trials}, {"pass", r.pass}};
  if (!r.pass) entry["counterexample"] = r.counterexample;
  all_pass = all_pass && r.pass;
  reports.push_back(entry);
}

void run_lowerbound_suite(ordered_json& reports, bool& all_pass) {
  LowerBoundCertificate cert = lower_bound_certificate();
  bool pass = std::abs(cert.residual) <= 1e-12 && cert.bound > 1.0;
  ordered_json entry{{"check", "lower_bound"},
                     {"delta_star", report::round_to_nine_digits(cert.delta_star)},
                     {"bound", report::round_to_nine_digits(cert.bound)},
                     {"residual", cert.residual == 0.0 ? 0.0 : cert.residual},
                     {"pass", pass}};
  all_pass = all_pass && pass;
  reports.push_back(entry);
}

void run_dominance_suite(ordered_json& reports, bool& all_pass) {
  DominanceResult bim = bam_vs_bim_dominance();
  DominanceResult balrm = bam_vs_balrm_dominance();
  ordered_json first{{"check", "dominance_vs_clamp"},
                     {"min_margin", report::round_to_nine_digits(bim.min_margin)},
                     {"worst_c", report::round_to_nine_digits(bim.worst_c)},
                     {"pass", bim.pass}};
  ordered_json second{{"check", "dominance_vs_four_atom"},
                      {"min_margin", report::round_to_nine_digits(balrm.min_margin)},
                      {"worst_c", report::round_to_nine_digits(balrm.worst_c)},
                      {"pass", balrm.pass}};
  all_pass = all_pass && bim.pass && balrm.pass;
  reports.push_back(first);
  reports.push_back(second);
}

void run_guarantees_suite(double tolerance, ordered_json& reports, bool& all_pass) {
  // The searches always use the default (valid) margins; the user-supplied
  // tolerance only grades the comparison, so even 0 is acceptable here.
  SearchConfig cfg;
  for (VerificationReport r : verify_all(cfg)) {
    if (tolerance != cfg.tolerance) {
      if (r.bound_only) {
        r.pass = at_most(r.empirical.consistency, r.closed_form.consistency,
                         tolerance) &&
                 at_most(r.empirical.robustness, r.closed_form.robustness,
                         tolerance);
      } else {
        r.pass = close_within(r.empirical.consistency, r.closed_form.consistency,
                              tolerance) &&
                 close_within(r.empirical.robustness, r.closed_form.robustness,
                              tolerance);
      }
    }
    all_pass = all_pass && r.pass;
    reports.push_back(report::to_json(r));
  }
}

int run_verify(const VerifyArgs& args) {
  const std::vector<std::string> known{"all",        "guarantees", "sp",
                                       "reduction",  "lowerbound", "dominance"};
  if (std::find(known.begin(), known.end(), args.suite) == known.end()) {
    throw UsageError("unknown suite: " + args.suite);
  }
  if (args.tolerance < 0.0) {
    throw UsageError("--tolerance must be non-negative");
  }

  ordered_json reports = ordered_json::array();
  bool all_pass = true;
  bool all = args.suite == "all";
  // A zero tolerance is a legal way to force strict comparison.
  if (all || args.suite == "guarantees") run_guarantees_suite(args.tolerance, reports, all_pass);
  if (all || args.suite == "sp") run_sp_suite(args.seed, reports, all_pass);
  if (all || args.suite == "reduction") run_reduction_suite(args.seed, reports, all_pass);
  if (all || args.suite == "lowerbound") run_lowerbound_suite(reports, all_pass);
  if (all || args.suite == "dominance") run_dominance_suite(reports, all_pass);

  report::RunManifest manifest = report::make_manifest(
      "verify",
      {{"suite", args.suite}, {"tolerance", report::format_number(args.tolerance)}},
      args.seed, SplitMix64::kAlgorithm);
  ordered_json payload{{"suite", args.suite},
                       {"pass", all_pass},
                       {"reports", reports},
                       {"manifest", report::to_json(manifest)}};
  if (!args.out.empty()) {
    write_json_file(args.out, payload);
  } else {
    std::cout << payload.dump(2) << "\n";
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Envy-ratio guarantees for strategyproof facility location on [0,1]"};
  app.require_subcommand(1);

  FrontierArgs frontier_args;
  CLI::App* frontier = app.add_subcommand(
      "frontier", "Closed-form consistency/robustness table over a parameter range");
  frontier->add_option("--mech", frontier_args.mech, "bim, birm, bam, or balrm")
      ->required();
  frontier->add_option("--alpha", frontier_args.alpha_range,
                       "alpha range lo:hi:step (bim, birm)");
  frontier->add_option("--c", frontier_args.c_range, "bias range lo:hi:step (bam, balrm)");
  frontier->add_option("--out", frontier_args.out, "output file")->required();
  frontier->add_option("--format", frontier_args.format, "csv (default) or json");

  CurveArgs curve_args;
  CLI::App* curve = app.add_subcommand(
      "curve", "Approximation ratio of the clamp mechanism vs. prediction error");
  curve->add_option("--alpha", curve_args.alpha, "clamp parameter in [1,2]")->required();
  curve->add_option("--eta", curve_args.eta_range, "error range lo:hi:step")->required();
  curve->add_flag("--empirical", curve_args.empirical,
                  "add an empirically searched column");
  curve->add_option("--out", curve_args.out, "output file")->required();
  curve->add_option("--format", curve_args.format, "csv (default) or json");

  OptimizeArgs optimize_args;
  CLI::App* optimize = app.add_subcommand(
      "optimize-lrm", "Minimize the 3-atom mix's worst instance ratio");
  optimize->add_option("--alpha", optimize_args.alpha_bounds, "spread bounds lo:hi");
  optimize->add_option("--p", optimize_args.p_bounds, "side-mass bounds lo:hi");
  optimize->add_option("--out", optimize_args.out, "output file")->required();

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand(
      "verify", "Empirical verification suites; exit 1 on any failure");
  verify->add_option("--suite", verify_args.suite,
                     "all, guarantees, sp, reduction, lowerbound, dominance");
  verify->add_option("--seed", verify_args.seed, "randomness seed");
  verify->add_option("--tolerance", verify_args.tolerance,
                     "comparison tolerance against closed forms");
  verify->add_option("--out", verify_args.out, "output file (stdout if omitted)");

  try {
    app.parse(argc, argv);
    if (frontier->parsed()) return run_frontier(frontier_args);
    if (curve->parsed()) return run_curve(curve_args);
    if (optimize->parsed()) return run_optimize(optimize_args);
    return run_verify(verify_args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
