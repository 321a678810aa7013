#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "vdist/errors.hpp"
#include "vdist/estimators.hpp"
#include "vdist/harness.hpp"
#include "vdist/metric.hpp"
#include "vdist/selection.hpp"
#include "vdist/table_io.hpp"

using nlohmann::ordered_json;

namespace {

// Every numeric field is rounded to 12 significant digits before
// serialization; non-finite values become JSON null.
ordered_json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::stod(buf);
}

void emit(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

double parse_double(const std::string& raw, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(raw, &used);
    if (used != raw.size() || !std::isfinite(v)) throw std::invalid_argument(raw);
    return v;
  } catch (const std::exception&) {
    throw vdist::ParseError(std::string(what) + ": not a finite number: '" + raw + "'");
  }
}

std::vector<double> parse_doubles(const std::string& raw, const char* what) {
  std::vector<double> out;
  std::string cur;
  std::istringstream in(raw);
  while (std::getline(in, cur, ',')) out.push_back(parse_double(cur, what));
  return out;
}

ordered_json result_json(const vdist::EstimationResult& r,
                         const std::vector<std::string>& names) {
  ordered_json j;
  j["method"] = vdist::method_name(r.method);
  j["status"] = vdist::status_name(r.status);
  auto params = ordered_json::array();
  for (double p : r.params) params.push_back(num(p));
  j["params"] = params;
  j["param_names"] = names;
  j["dv_at_optimum"] = num(r.dv_at_optimum);
  j["exact"] = r.exact;
  j["iterations"] = r.iterations;
  j["diagnostic"] = r.diagnostic;
  if (std::isfinite(r.residual)) j["residual"] = num(r.residual);
  if (r.method == vdist::Method::WeightedPairwise) j["skipped_pairs"] = r.skipped_pairs;
  return j;
}

int finish_estimate(const vdist::EstimationResult& r, const std::vector<std::string>& names) {
  emit(result_json(r, names));
  const bool bad =
      r.status == vdist::FitStatus::NoSolution || r.status == vdist::FitStatus::Degenerate;
  return bad ? 3 : 0;
}

struct EstimateArgs {
  std::string table_path;
  std::string family_name;
  std::string method;
  std::vector<std::string> known;
  std::string region_text;
  std::string bounds_text;
  std::string init_text;
  double tol = 1e-10;
};

int run_estimate(const EstimateArgs& args) {
  const vdist::FrequencyTable table = vdist::read_table_csv(args.table_path);
  const auto family = vdist::family_from_name(args.family_name);
  if (!family) throw vdist::ParseError("unknown family: '" + args.family_name + "'");
  const auto& names = vdist::param_names(*family);

  vdist::FitSpec spec;
  spec.family = *family;
  spec.fixed.assign(names.size(), std::nullopt);
  spec.tol = args.tol;
  for (const auto& kv : args.known) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw vdist::ParseError("--known expects name=value, got '" + kv + "'");
    const std::string name = kv.substr(0, eq);
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end())
      throw vdist::ParseError("--known: '" + name + "' is not a parameter of " +
                              vdist::family_name(*family));
    spec.fixed[static_cast<std::size_t>(it - names.begin())] =
        parse_double(kv.substr(eq + 1), "--known value");
  }
  if (!args.bounds_text.empty()) {
    const auto vals = parse_doubles(args.bounds_text, "--bounds");
    if (vals.size() % 2 != 0) throw vdist::ParseError("--bounds expects lo,hi pairs");
    for (std::size_t i = 0; i + 1 < vals.size(); i += 2)
      spec.bounds.push_back({vals[i], vals[i + 1]});
  }
  if (!args.init_text.empty()) spec.init = parse_doubles(args.init_text, "--init");

  std::vector<std::string> free_names;
  for (std::size_t i = 0; i < names.size(); ++i)
    if (!spec.fixed[i]) free_names.push_back(names[i]);

  if (args.method == "dv") return finish_estimate(vdist::min_dv(table, spec), names);
  if (args.method == "new-mle") return finish_estimate(vdist::new_mle(table, spec), names);
  if (args.method == "new-moments")
    return finish_estimate(vdist::new_moments(table, spec), names);
  if (args.method == "classical" || args.method == "classical-truncated") {
    vdist::Region region = vdist::Region::all();
    if (!args.region_text.empty()) region = vdist::parse_region(args.region_text);
    auto r = vdist::classical_truncated_mle(table, spec, region);
    if (args.method == "classical" && args.region_text.empty())
      r.method = vdist::Method::ClassicalMLE;  // complete-sample grouped MLE
    return finish_estimate(r, names);
  }
  if (args.method == "pairwise") {
    vdist::TwoPointSolver solver;
    std::function<vdist::ParametricModel(double)> rebuild;
    std::vector<std::string> solved_names;
    if (*family == vdist::Family::Exponential) {
      solver = [](double x, double y, double n1, double n2) {
        return vdist::exp_rate_two_point(x, y, n1, n2);
      };
      rebuild = [](double v) { return vdist::ParametricModel::exponential(v); };
      solved_names = {"rate"};
    } else if (*family == vdist::Family::Normal && spec.fixed[1]) {
      const double sigma = *spec.fixed[1];
      solver = [sigma](double x, double y, double n1, double n2) {
        return vdist::normal_mean_two_point(x, y, n1, n2, sigma);
      };
      rebuild = [sigma](double v) { return vdist::ParametricModel::normal(v, sigma); };
      solved_names = {"m"};
    } else if (*family == vdist::Family::Normal && spec.fixed[0]) {
      const double m = *spec.fixed[0];
      solver = [m](double x, double y, double n1, double n2) {
        return vdist::normal_sigma_two_point(x, y, n1, n2, m);
      };
      rebuild = [m](double v) { return vdist::ParametricModel::normal(m, v); };
      solved_names = {"sigma"};
    } else {
      throw vdist::ParseError(
          "--method pairwise needs a two-point closed form: exponential, or normal "
          "with one parameter known");
    }
    auto r = vdist::weighted_pairwise(table, solver);
    if (!r.params.empty()) {
      const double dv = vdist::dv_model(table, rebuild(r.params[0]));
      r.dv_at_optimum = dv;
      r.exact = dv <= vdist::kExactTolerance;
    }
    return finish_estimate(r, solved_names);
  }
  throw vdist::ParseError("unknown method: '" + args.method + "'");
}

int run_distance(const std::string& table_path, const std::string& model_text,
                 const std::string& table_b_path, int top) {
  const vdist::FrequencyTable table = vdist::read_table_csv(table_path);
  ordered_json j;
  std::vector<vdist::PairwiseDelta> terms;
  if (!model_text.empty()) {
    const vdist::ParametricModel model = vdist::parse_model(model_text);
    j["dv"] = num(vdist::dv_model(table, model));
    j["model"] = model.describe();
    terms = vdist::dv_model_terms(table, model);
  } else {
    const vdist::FrequencyTable other = vdist::read_table_csv(table_b_path);
    j["dv"] = num(vdist::dv_tables(table, other));
    const auto& a = table.counts();
    const auto& b = other.counts();
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t k = 0; k < a.size(); ++k) {
        if (i == k) continue;
        terms.push_back({i, k, std::fabs(a[i] / a[k] - b[i] / b[k])});
      }
  }
  std::stable_sort(terms.begin(), terms.end(),
                   [](const auto& a, const auto& b) { return a.value > b.value; });
  auto arr = ordered_json::array();
  for (std::size_t t = 0; t < terms.size() && t < static_cast<std::size_t>(top); ++t) {
    ordered_json cell;
    cell["i"] = terms[t].i;
    cell["j"] = terms[t].j;
    cell["y_i"] = num(table.support()[terms[t].i]);
    cell["y_j"] = num(table.support()[terms[t].j]);
    cell["value"] = num(terms[t].value);
    arr.push_back(cell);
  }
  j["top_terms"] = arr;
  emit(j);
  return 0;
}

int run_select(const std::string& table_path, const std::vector<std::string>& candidate_texts) {
  const vdist::FrequencyTable table = vdist::read_table_csv(table_path);
  std::vector<vdist::ParametricModel> candidates;
  candidates.reserve(candidate_texts.size());
  for (const auto& text : candidate_texts) candidates.push_back(vdist::parse_model(text));
  const vdist::SelectionReport report = vdist::select(table, candidates);

  ordered_json j;
  auto arr = ordered_json::array();
  for (const auto& c : report.candidates) {
    ordered_json cell;
    cell["model"] = c.model.describe();
    cell["family"] = vdist::family_name(c.model.family());
    auto params = ordered_json::array();
    for (double p : c.model.params()) params.push_back(num(p));
    cell["params"] = params;
    cell["dv"] = num(c.dv);
    cell["disqualified"] = c.disqualified;
    if (!c.reason.empty()) cell["reason"] = c.reason;
    arr.push_back(cell);
  }
  j["candidates"] = arr;
  j["winner_index"] = report.winner_index;
  j["winner"] = report.candidates[static_cast<std::size_t>(report.winner_index)].model.describe();
  j["margin"] = num(report.margin);
  emit(j);
  return 0;
}

ordered_json report_json(const vdist::ExperimentReport& rep) {
  ordered_json j;
  ordered_json spec;
  spec["name"] = rep.spec.name;
  spec["generator"] = rep.spec.generator;
  if (rep.spec.sample_size > 0) spec["sample_size"] = rep.spec.sample_size;
  spec["replicates"] = rep.spec.replicates;
  if (!rep.spec.truncation.empty()) spec["truncation"] = rep.spec.truncation;
  if (!rep.spec.binning.empty()) spec["binning"] = rep.spec.binning;
  if (!rep.spec.candidates.empty()) spec["candidates"] = rep.spec.candidates;
  spec["seed"] = rep.spec.seed;
  if (!rep.spec.gamma_convention.empty())
    spec["gamma_convention"] = rep.spec.gamma_convention;
  j["spec"] = spec;

  if (!rep.accuracies.empty()) {
    auto arr = ordered_json::array();
    for (const auto& a : rep.accuracies) {
      ordered_json cell;
      cell["generator"] = a.generator;
      cell["correct"] = a.correct;
      cell["evaluated"] = a.evaluated;
      cell["inconclusive"] = a.inconclusive;
      cell["accuracy"] = num(a.accuracy);
      arr.push_back(cell);
    }
    j["accuracies"] = arr;
  }
  if (!rep.cells.empty()) {
    auto arr = ordered_json::array();
    for (const auto& c : rep.cells) {
      ordered_json cell;
      cell["row"] = c.row;
      cell["column"] = num(c.column);
      cell["computed"] = num(c.computed);
      cell["published"] = num(c.published);
      cell["delta"] = num(c.delta);
      if (!c.note.empty()) cell["note"] = c.note;
      arr.push_back(cell);
    }
    j["cells"] = arr;
    ordered_json stats;
    stats["mean_abs_delta"] = num(rep.error_stats.mean);
    stats["median_abs_delta"] = num(rep.error_stats.median);
    auto dec = ordered_json::array();
    for (double d : rep.error_stats.deciles) dec.push_back(num(d));
    stats["abs_delta_deciles"] = dec;
    j["error_stats"] = stats;
  }
  j["inconclusive"] = rep.inconclusive;
  return j;
}

int run_simulate(const std::string& experiment, int replicates, bool full,
                 std::optional<std::uint64_t> seed, const std::string& gamma_convention,
                 const std::string& emit_csv) {
  vdist::ExperimentReport report;
  if (experiment == "normal-table") {
    report = vdist::run_normal_table();
  } else {
    if (!seed)
      throw vdist::ParseError("--seed is required for randomized experiments");
    if (experiment == "binomial-id") {
      const int n = replicates > 0 ? replicates : (full ? 10000 : 2000);
      report = vdist::run_binomial_identification(n, *seed);
    } else if (experiment == "weibull-gamma") {
      const int n = replicates > 0 ? replicates : (full ? 10000 : 1000);
      vdist::GammaConvention conv = vdist::GammaConvention::Scale;
      if (gamma_convention == "rate") conv = vdist::GammaConvention::Rate;
      else if (gamma_convention != "scale")
        throw vdist::ParseError("--gamma-convention must be 'rate' or 'scale'");
      report = vdist::run_weibull_gamma(n, *seed, conv);
    } else {
      throw vdist::ParseError("unknown experiment: '" + experiment + "'");
    }
  }

  if (!emit_csv.empty()) {
    std::ofstream out(emit_csv);
    if (!out) throw vdist::ParseError("cannot write: " + emit_csv);
    out << report.per_replicate_header << "\n";
    for (const auto& row : report.per_replicate) out << row << "\n";
    std::cerr << "per-replicate rows written to " << emit_csv << "\n";
    if (report.sample_table) {
      const std::string table_path = emit_csv + ".table.csv";
      vdist::write_table_csv(*report.sample_table, table_path);
      std::cerr << "representative table written to " << table_path << "\n";
    }
  }

  std::cerr << "wall_seconds=" << report.wall_seconds << "\n";
  emit(report_json(report));
  return 0;
}

const char* error_kind(const vdist::Error& e) {
  if (dynamic_cast<const vdist::ParseError*>(&e)) return "parse-error";
  if (dynamic_cast<const vdist::ConstraintViolation*>(&e)) return "constraint-violation";
  if (dynamic_cast<const vdist::UnsupportedFamily*>(&e)) return "unsupported-family";
  if (dynamic_cast<const vdist::InsufficientSupport*>(&e)) return "insufficient-support";
  if (dynamic_cast<const vdist::SupportMismatch*>(&e)) return "support-mismatch";
  if (dynamic_cast<const vdist::ZeroDensity*>(&e)) return "zero-density";
  if (dynamic_cast<const vdist::DegenerateSupport*>(&e)) return "degenerate-support";
  if (dynamic_cast<const vdist::SelectionImpossible*>(&e)) return "selection-impossible";
  if (dynamic_cast<const vdist::DomainError*>(&e)) return "domain-error";
  return "error";
}

int fail(const char* kind, const std::string& message, int code) {
  ordered_json j;
  j["error"] = kind;
  j["message"] = message;
  emit(j);
  std::cerr << kind << ": " << message << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"distance-in-variations estimation toolkit"};
  app.set_version_flag("--version", "vdist 1.0.0");
  app.require_subcommand(1);

  // distance
  auto* dist = app.add_subcommand("distance", "distance between a table and a model or table");
  std::string d_table, d_model, d_table_b;
  int d_top = 5;
  dist->add_option("--table", d_table, "frequency table CSV")->required();
  dist->add_option("--model", d_model, "candidate model, family:p1[,p2]");
  dist->add_option("--table-b", d_table_b, "second frequency table CSV");
  dist->add_option("--top", d_top, "number of largest pairwise terms to report");

  // estimate
  auto* est = app.add_subcommand("estimate", "fit a family to a frequency table");
  EstimateArgs e;
  est->add_option("--table", e.table_path, "frequency table CSV")->required();
  est->add_option("--family", e.family_name, "distribution family")->required();
  est->add_option("--method", e.method,
                  "dv | new-mle | new-moments | classical | classical-truncated | pairwise")
      ->required();
  est->add_option("--known", e.known, "fix a parameter, name=value (repeatable)");
  est->add_option("--region", e.region_text, "observed region, e.g. \"[a,b),[c,d)\"");
  est->add_option("--bounds", e.bounds_text, "search bounds, lo,hi per free parameter");
  est->add_option("--init", e.init_text, "initial values for the free parameters");
  est->add_option("--tol", e.tol, "optimizer tolerance");

  // select
  auto* sel = app.add_subcommand("select", "pick the closest of several candidate models");
  std::string s_table;
  std::vector<std::string> s_candidates;
  sel->add_option("--table", s_table, "frequency table CSV")->required();
  sel->add_option("--candidate", s_candidates, "candidate model (repeat at least twice)")
      ->required();

  // simulate
  auto* sim = app.add_subcommand("simulate", "run a seeded replication study");
  std::string m_experiment, m_gamma = "scale", m_emit_csv;
  int m_replicates = -1;
  bool m_full = false;
  std::optional<std::uint64_t> m_seed;
  sim->add_option("--experiment", m_experiment, "binomial-id | weibull-gamma | normal-table")
      ->required();
  sim->add_option("--replicates", m_replicates, "override the replicate count");
  sim->add_flag("--full", m_full, "use the full-scale replicate count (10000)");
  sim->add_option("--seed", m_seed, "base seed (required for randomized experiments)");
  sim->add_option("--gamma-convention", m_gamma, "reading of G(a,b): rate | scale");
  sim->add_option("--emit-csv", m_emit_csv, "write per-replicate rows to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (dist->parsed()) {
      if (d_model.empty() == d_table_b.empty())
        return fail("parse-error", "distance needs exactly one of --model or --table-b", 2);
      return run_distance(d_table, d_model, d_table_b, d_top);
    }
    if (est->parsed()) return run_estimate(e);
    if (sel->parsed()) return run_select(s_table, s_candidates);
    if (sim->parsed())
      return run_simulate(m_experiment, m_replicates, m_full, m_seed, m_gamma, m_emit_csv);
    return 2;
  } catch (const vdist::DegenerateSupport& err) {
    return fail("degenerate-support", err.what(), 3);
  } catch (const vdist::Error& err) {
    return fail(error_kind(err), err.what(), 2);
  } catch (const std::exception& err) {
    return fail("internal", err.what(), 4);
  }
}
