#include "reliab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>

#include "reliab/edgeworth.hpp"
#include "reliab/error.hpp"
#include "reliab/ingest.hpp"
#include "reliab/moments.hpp"
#include "reliab/planning.hpp"
#include "reliab/stdnorm.hpp"

#ifndef RELIAB_VERSION
#define RELIAB_VERSION "0.0.0"
#endif

namespace reliab::cli {

namespace {

using ojson = nlohmann::ordered_json;

std::vector<double> parse_params(const std::string& text, const std::string& family,
                                 std::size_t expected) {
  std::vector<double> out;
  std::string_view rest = text;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view field = rest.substr(0, comma);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(v)) {
      throw config_error("--dist " + family + ": bad parameter '" + std::string(field) + "'");
    }
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  if (out.size() != expected) {
    throw config_error("--dist " + family + " expects " + std::to_string(expected) +
                       " parameters");
  }
  return out;
}

Cell count_cell(std::optional<std::uint64_t> v) {
  if (!v) return std::monostate{};
  return static_cast<std::int64_t>(*v);
}

Cell count_cell(std::uint64_t v) { return static_cast<std::int64_t>(v); }

Report new_report(const std::string& command) {
  Report r;
  r.command = command;
  r.version = RELIAB_VERSION;
  return r;
}

std::vector<Method> parse_methods(const std::vector<std::string>& names) {
  std::vector<Method> out;
  for (const auto& n : names) {
    Method m;
    if (n == "classic") {
      m = Method::classic;
    } else if (n == "corrected") {
      m = Method::corrected;
    } else {
      throw config_error("unknown method '" + n + "' (expected classic or corrected)");
    }
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
  }
  if (out.empty()) throw config_error("no methods selected");
  return out;
}

ojson methods_json(const std::vector<Method>& methods) {
  ojson j = ojson::array();
  for (Method m : methods) j.push_back(std::string(to_string(m)));
  return j;
}

PlanningInputs same_population(const PopulationMoments& m, double alpha,
                               double epsilon, double k) {
  PlanningInputs in;
  in.alpha = alpha;
  in.epsilon = epsilon;
  in.k = k;
  in.x = m.cumulants();
  in.y = m.cumulants();
  return in;
}

Section summary_section(const GroupSummary& x, const GroupSummary& y) {
  Section s{"groups", {"group", "n", "mean", "variance", "skewness", "kurtosis"}, {}};
  s.add_row({std::string("control"), count_cell(x.n), x.mean, x.variance, x.skewness,
             x.kurtosis});
  s.add_row({std::string("treatment"), count_cell(y.n), y.mean, y.variance, y.skewness,
             y.kurtosis});
  return s;
}

Section thresholds_section(const SampleSizePlan& plan, double epsilon) {
  Section s{"thresholds", {"epsilon", "a1", "a2", "n_min_first", "n_min_second"}, {}};
  s.add_row({epsilon, plan.coefficients.a1, plan.coefficients.a2,
             count_cell(plan.n_min_first), count_cell(plan.n_min_second)});
  return s;
}

Section tail_section(const TailErrorReport& report, bool with_pass) {
  Section s{"tail_errors",
            {"n", "n_x", "n_y", "method", "alpha_hat_left", "alpha_hat_right", "dev_left",
             "se_left", "dev_right", "se_right", "total_dev"},
            {}};
  if (with_pass) s.columns.push_back("pass");
  for (const auto& r : report.rows) {
    std::vector<Cell> row{count_cell(r.n),        count_cell(r.n_x),
                          count_cell(r.n_y),      std::string(to_string(r.method)),
                          r.alpha_hat_left,       r.alpha_hat_right,
                          r.dev_left,             r.se_left,
                          r.dev_right,            r.se_right,
                          r.total_dev};
    if (with_pass) row.emplace_back(r.pass);
    s.add_row(std::move(row));
  }
  return s;
}

Section diagnostics_section(const TailErrorReport& report) {
  Section s{"diagnostics", {"n", "redraws", "method_disagreements"}, {}};
  for (const auto& d : report.diagnostics) {
    s.add_row({count_cell(d.n), count_cell(d.redraws), count_cell(d.disagreements)});
  }
  return s;
}

void write_density(const std::filesystem::path& path, const Histogram& h,
                   std::uint64_t n) {
  std::ofstream out(path);
  if (!out) throw data_error("cannot write density file '" + path.string() + "'");
  const bool json = path.extension() == ".json";
  if (json) {
    ojson j;
    j["n"] = n;
    j["edges"] = h.edges;
    j["density"] = h.density;
    j["normal_density"] = h.normal_density;
    out << j.dump(2) << '\n';
    return;
  }
  Section s{"density", {"bin_lo", "bin_hi", "density", "normal_density"}, {}};
  for (std::size_t i = 0; i < h.density.size(); ++i) {
    s.add_row({h.edges[i], h.edges[i + 1], h.density[i], h.normal_density[i]});
  }
  Report r;
  r.sections.push_back(std::move(s));
  write_csv(out, r);
}

std::uint64_t parse_u64(const std::string& s, const char* what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw config_error(std::string(what) + ": not an unsigned integer: '" + s + "'");
  }
  return v;
}

}  // namespace

DistributionSpec parse_distribution(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw config_error("--dist expects family:params, got '" + text + "'");
  }
  const std::string family = text.substr(0, colon);
  const std::string params = text.substr(colon + 1);
  DistributionSpec spec;
  if (family == "normal") {
    const auto p = parse_params(params, family, 2);
    spec = NormalFamily{p[0], p[1]};
  } else if (family == "lognormal") {
    const auto p = parse_params(params, family, 2);
    spec = LognormalFamily{p[0], p[1]};
  } else if (family == "gamma") {
    const auto p = parse_params(params, family, 2);
    spec = GammaFamily{p[0], p[1]};
  } else if (family == "zilognormal") {
    const auto p = parse_params(params, family, 3);
    spec = ZeroInflatedLognormalFamily{p[0], p[1], p[2]};
  } else if (family == "matched") {
    const auto p = parse_params(params, family, 2);
    const auto shape = match_zero_inflated_lognormal(p[0], p[1]);
    spec = ZeroInflatedLognormalFamily{shape.zero_prob, 0.0, shape.sigma};
  } else if (family == "empirical") {
    IngestedDataset d = ingest_values(params);
    spec = EmpiricalFamily{std::make_shared<const std::vector<double>>(std::move(d.values)),
                           params};
  } else {
    throw config_error("unknown distribution family '" + family + "'");
  }
  validate(spec);
  return spec;
}

SeedChoice resolve_seed(std::optional<std::uint64_t> flag) {
  if (flag) return {*flag, "flag"};
  if (const char* env = std::getenv("RELIAB_SEED"); env && *env) {
    return {parse_u64(env, "RELIAB_SEED"), "env"};
  }
  return {1, "default"};
}

Report cmd_analyze(const AnalyzeOptions& opt) {
  validate_alpha(opt.alpha);
  if (!(opt.epsilon > 0.0)) throw config_error("epsilon must be positive");
  GroupedDatasets data;
  if (opt.data) {
    if (opt.control || opt.treatment) {
      throw config_error("use either --data or --control/--treatment, not both");
    }
    data = ingest_groups(*opt.data);
  } else {
    if (!opt.control || !opt.treatment) {
      throw config_error("analyze needs --control and --treatment (or --data)");
    }
    data.control = ingest_values(*opt.control);
    data.treatment = ingest_values(*opt.treatment);
  }

  const GroupSummary x = summarize(data.control.values);
  const GroupSummary y = summarize(data.treatment.values);
  const DesignContext design(x.n, y.n);
  const TestResult test = two_sample_test(x, y, opt.alpha);
  const EdgeworthExpansion expansion(x.cumulants(), y.cumulants(), design);
  const DifferenceCumulants& dc = expansion.cumulants();

  Report r = new_report("analyze");
  r.config["control"] = data.control.source;
  r.config["treatment"] = data.treatment.source;
  r.config["alpha"] = opt.alpha;
  r.config["epsilon"] = opt.epsilon;
  r.sections.push_back(summary_section(x, y));

  const double g = expansion.cdf_truncated(test.statistic);
  const bool saturated = g == 0.0 || g == 1.0;
  Section t{"test",
            {"statistic", "p_classic", "p_corrected", "decision_classic",
             "decision_corrected", "gamma_d", "tau_d", "p_corrected_saturated"},
            {}};
  t.add_row({test.statistic, test.p_classic, *test.p_corrected,
             std::string(to_string(test.classic_decision)),
             std::string(to_string(*test.corrected_decision)), dc.gamma_d, dc.tau_d,
             saturated});
  r.sections.push_back(std::move(t));
  if (saturated) {
    r.warnings.push_back(
        "Edgeworth CDF saturated at the observed statistic; corrected p-value is 0");
  }

  // Reliability check with the plug-in cumulants and the realized ratio.
  PlanningInputs in;
  in.alpha = opt.alpha;
  in.epsilon = opt.epsilon;
  in.k = design.ratio();
  in.x = x.cumulants();
  in.y = y.cumulants();
  const PlanningCoefficients c = coefficients(in);
  const auto n1 = n_min_first(c.a1, opt.epsilon);
  const auto n2 = n_min_second(c.a1, c.a2, opt.epsilon);
  const bool reliable = design.total() >= n2;
  Section rel{"reliability",
              {"n_total", "k", "a1", "a2", "n_min_first", "n_min_second", "reliable"},
              {}};
  rel.add_row({count_cell(design.total()), design.ratio(), c.a1, c.a2, count_cell(n1),
               count_cell(n2), reliable});
  r.sections.push_back(std::move(rel));
  if (!reliable) {
    r.warnings.push_back("N = " + std::to_string(design.total()) +
                         " is below the plug-in N_min^(2) = " + std::to_string(n2) +
                         "; the classic p-value may be unreliable, prefer p_corrected");
  }
  for (auto& w : in.warnings()) r.warnings.push_back(std::move(w));
  return r;
}

Report cmd_plan(const PlanOptions& opt) {
  const bool cumulant_flags = opt.gamma || opt.tau || opt.sigma_x || opt.gamma_x ||
                              opt.tau_x || opt.sigma_y || opt.gamma_y || opt.tau_y;
  const int sources = int(opt.dist.has_value()) + int(cumulant_flags) + int(opt.from_data);
  if (sources != 1) {
    throw config_error(
        "plan needs exactly one of --dist, cumulant flags (--gamma/--tau/...), or "
        "--from-data");
  }

  Report r = new_report("plan");
  PlanningInputs in;
  in.alpha = opt.alpha;
  in.epsilon = opt.epsilon;
  in.k = opt.k.value_or(1.0);

  if (opt.dist) {
    const DistributionSpec spec = parse_distribution(*opt.dist);
    const PopulationMoments m = population_moments(spec);
    in.x = in.y = m.cumulants();
    r.config["source"] = "dist";
    r.config["dist"] = describe(spec);
  } else if (cumulant_flags) {
    auto pick = [](std::optional<double> group, std::optional<double> both, double dflt) {
      return group ? *group : both ? *both : dflt;
    };
    const double sx = opt.sigma_x.value_or(1.0);
    const double sy = opt.sigma_y.value_or(1.0);
    if (opt.equal_variance && sx != sy) {
      throw config_error("--equal-variance conflicts with differing --sigma-x/--sigma-y");
    }
    in.x = {sx * sx, pick(opt.gamma_x, opt.gamma, 0.0), pick(opt.tau_x, opt.tau, 3.0)};
    in.y = {sy * sy, pick(opt.gamma_y, opt.gamma, 0.0), pick(opt.tau_y, opt.tau, 3.0)};
    r.config["source"] = "cumulants";
  } else {
    GroupedDatasets data;
    if (opt.data) {
      data = ingest_groups(*opt.data);
    } else if (opt.control && opt.treatment) {
      data.control = ingest_values(*opt.control);
      data.treatment = ingest_values(*opt.treatment);
    } else {
      throw config_error("--from-data needs --data or --control and --treatment");
    }
    const GroupSummary x = summarize(data.control.values);
    const GroupSummary y = summarize(data.treatment.values);
    in.x = x.cumulants();
    in.y = y.cumulants();
    if (!opt.k) in.k = static_cast<double>(y.n) / static_cast<double>(x.n);
    r.config["source"] = "data";
    r.config["control"] = data.control.source;
    r.config["treatment"] = data.treatment.source;
  }

  r.config["alpha"] = in.alpha;
  r.config["epsilon"] = in.epsilon;
  r.config["k"] = in.k;
  r.config["control_cumulants"] = {{"variance", in.x.variance},
                                   {"skewness", in.x.skewness},
                                   {"kurtosis", in.x.kurtosis}};
  r.config["treatment_cumulants"] = {{"variance", in.y.variance},
                                     {"skewness", in.y.skewness},
                                     {"kurtosis", in.y.kurtosis}};
  r.config["at"] = opt.at;

  const SampleSizePlan plan = make_plan(in, opt.at);
  r.sections.push_back(thresholds_section(plan, in.epsilon));
  Section p{"predictions",
            {"n", "first_left", "first_right", "second_left", "second_right"},
            {}};
  for (const auto& d : plan.predictions) {
    p.add_row({count_cell(d.n), d.first_left, d.first_right, d.second_left, d.second_right});
  }
  r.sections.push_back(std::move(p));
  if (!plan.n_min_first) {
    r.warnings.push_back("a1 = 0: the first-order threshold does not apply");
  }
  for (const auto& w : plan.warnings) r.warnings.push_back(w);
  return r;
}

Report cmd_simulate(const SimulateOptions& opt) {
  const DistributionSpec spec = parse_distribution(opt.dist);
  const SeedChoice seed = resolve_seed(opt.seed);
  const PlanningInputs in =
      same_population(population_moments(spec), opt.alpha, opt.epsilon, opt.k);
  in.validate();
  const SampleSizePlan plan = make_plan(in);

  SimulationConfig cfg;
  cfg.alpha = opt.alpha;
  cfg.epsilon = opt.epsilon;
  cfg.k = opt.k;
  cfg.replications = opt.replications;
  cfg.seed = seed.seed;
  cfg.methods = parse_methods(opt.methods);
  cfg.threads = opt.threads;
  const bool auto_sizes = opt.grid.empty();
  cfg.sizes = auto_sizes ? auto_grid(std::max<std::uint64_t>(plan.n_min_second, 10), opt.k)
                         : opt.grid;

  Report r = new_report("simulate");
  r.config["dist"] = describe(spec);
  r.config["k"] = cfg.k;
  r.config["alpha"] = cfg.alpha;
  r.config["epsilon"] = cfg.epsilon;
  r.config["B"] = cfg.replications;
  r.config["seed"] = cfg.seed;
  r.config["seed_source"] = seed.source;
  r.config["grid"] = cfg.sizes;
  r.config["grid_source"] = auto_sizes ? "auto" : "explicit";
  r.config["methods"] = methods_json(cfg.methods);

  const TailErrorReport report = estimate_tail_errors(cfg, spec);
  r.sections.push_back(thresholds_section(plan, cfg.epsilon));
  r.sections.push_back(tail_section(report, true));
  r.sections.push_back(diagnostics_section(report));
  for (const auto& w : plan.warnings) r.warnings.push_back(w);

  if (opt.emit_density) {
    const std::uint64_t n = opt.density_n.value_or(cfg.sizes.front());
    const std::vector<double> stats = collect_statistics(cfg, spec, n);
    write_density(*opt.emit_density, density_histogram(stats, opt.density_bins, -5.0, 5.0),
                  n);
    MomentAccumulator acc;
    acc.add(stats);
    const GroupSummary s = acc.finalize();
    Section d{"statistic_distribution",
              {"n", "replications", "mean", "variance", "skewness", "kurtosis", "file"},
              {}};
    d.add_row({count_cell(n), count_cell(cfg.replications), s.mean, s.variance, s.skewness,
               s.kurtosis, opt.emit_density->string()});
    r.sections.push_back(std::move(d));
    r.config["density_n"] = n;
    r.config["density_bins"] = opt.density_bins;
  }
  return r;
}

Report cmd_sweep(const SweepOptions& opt) {
  const DistributionSpec spec = parse_distribution(opt.dist);
  const SeedChoice seed = resolve_seed(opt.seed);
  if (opt.epsilons.empty()) throw config_error("sweep needs at least one epsilon");
  const PopulationMoments pop = population_moments(spec);

  std::vector<SampleSizePlan> plans;
  for (double eps : opt.epsilons) {
    const PlanningInputs in = same_population(pop, opt.alpha, eps, opt.k);
    plans.push_back(make_plan(in));
  }

  SimulationConfig cfg;
  cfg.alpha = opt.alpha;
  cfg.epsilon = *std::min_element(opt.epsilons.begin(), opt.epsilons.end());
  cfg.k = opt.k;
  cfg.replications = opt.replications;
  cfg.seed = seed.seed;
  cfg.methods = parse_methods(opt.methods);
  cfg.threads = opt.threads;
  const bool auto_sizes = opt.grid.empty();
  if (auto_sizes) {
    std::set<std::uint64_t> sizes;
    for (const auto& p : plans) {
      for (auto n : auto_grid(std::max<std::uint64_t>(p.n_min_second, 10), opt.k)) {
        sizes.insert(n);
      }
    }
    cfg.sizes.assign(sizes.begin(), sizes.end());
  } else {
    cfg.sizes = opt.grid;
    std::sort(cfg.sizes.begin(), cfg.sizes.end());
    cfg.sizes.erase(std::unique(cfg.sizes.begin(), cfg.sizes.end()), cfg.sizes.end());
  }

  Report r = new_report("sweep");
  r.config["dist"] = describe(spec);
  r.config["k"] = cfg.k;
  r.config["alpha"] = cfg.alpha;
  r.config["epsilons"] = opt.epsilons;
  r.config["B"] = cfg.replications;
  r.config["seed"] = cfg.seed;
  r.config["seed_source"] = seed.source;
  r.config["grid"] = cfg.sizes;
  r.config["grid_source"] = auto_sizes ? "auto" : "explicit";
  r.config["methods"] = methods_json(cfg.methods);

  const TailErrorReport report = estimate_tail_errors(cfg, spec);

  Section s{"thresholds",
            {"epsilon", "a1", "a2", "n_min_first", "n_min_second", "empirical_min_classic",
             "empirical_min_corrected"},
            {}};
  for (std::size_t i = 0; i < opt.epsilons.size(); ++i) {
    const TailErrorReport at_eps = with_tolerance(report, opt.epsilons[i]);
    auto empirical = [&](Method m) -> Cell {
      if (std::find(cfg.methods.begin(), cfg.methods.end(), m) == cfg.methods.end()) {
        return std::monostate{};
      }
      return count_cell(sweep_min_n(at_eps, m));
    };
    s.add_row({opt.epsilons[i], plans[i].coefficients.a1, plans[i].coefficients.a2,
               count_cell(plans[i].n_min_first), count_cell(plans[i].n_min_second),
               empirical(Method::classic), empirical(Method::corrected)});
    for (const auto& w : plans[i].warnings) r.warnings.push_back(w);
  }
  r.sections.push_back(std::move(s));
  r.sections.push_back(tail_section(report, false));
  r.sections.push_back(diagnostics_section(report));
  return r;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reliable two-sample A/B testing under skewed data"};
  app.require_subcommand(1);
  app.set_version_flag("--version", RELIAB_VERSION);

  std::string format = "table";
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format: json, csv or table")
        ->check(CLI::IsMember({"json", "csv", "table"}))
        ->capture_default_str();
  };

  AnalyzeOptions a;
  std::string a_control, a_treatment, a_data;
  auto* analyze = app.add_subcommand("analyze", "Welch and Edgeworth-corrected test on data");
  analyze->add_option("--control", a_control, "Control values (one per line)");
  analyze->add_option("--treatment", a_treatment, "Treatment values (one per line)");
  analyze->add_option("--data", a_data, "Two-column group,value file");
  analyze->add_option("--alpha", a.alpha, "Nominal level")->capture_default_str();
  analyze->add_option("--epsilon", a.epsilon, "Per-tail tolerance for the reliability check")
      ->capture_default_str();
  add_format(analyze);

  PlanOptions p;
  std::string p_control, p_treatment, p_data, p_dist;
  double p_k = 1.0;
  auto* plan = app.add_subcommand("plan", "Minimum sample sizes and predicted tail deviations");
  plan->add_option("--dist", p_dist, "Population family:params");
  plan->add_option("--gamma", p.gamma, "Skewness of both groups");
  plan->add_option("--tau", p.tau, "Kurtosis of both groups");
  plan->add_flag("--equal-variance", p.equal_variance, "Groups share one variance");
  plan->add_option("--sigma-x", p.sigma_x, "Control standard deviation");
  plan->add_option("--gamma-x", p.gamma_x, "Control skewness");
  plan->add_option("--tau-x", p.tau_x, "Control kurtosis");
  plan->add_option("--sigma-y", p.sigma_y, "Treatment standard deviation");
  plan->add_option("--gamma-y", p.gamma_y, "Treatment skewness");
  plan->add_option("--tau-y", p.tau_y, "Treatment kurtosis");
  plan->add_flag("--from-data", p.from_data, "Use plug-in cumulants from data files");
  plan->add_option("--control", p_control, "Control values (with --from-data)");
  plan->add_option("--treatment", p_treatment, "Treatment values (with --from-data)");
  plan->add_option("--data", p_data, "Two-column group,value file (with --from-data)");
  auto* p_k_opt = plan->add_option("--k", p_k, "Allocation ratio n_y / n_x");
  plan->add_option("--alpha", p.alpha, "Nominal level")->capture_default_str();
  plan->add_option("--epsilon", p.epsilon, "Per-tail tolerance")->capture_default_str();
  plan->add_option("--at", p.at, "Total sizes for predicted deviations")->delimiter(',');
  add_format(plan);

  SimulateOptions s;
  std::string s_density;
  std::uint64_t s_seed = 0;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo tail Type I error table");
  simulate->add_option("--dist", s.dist, "Family:params")->capture_default_str();
  simulate->add_option("--k", s.k, "Allocation ratio n_y / n_x")->capture_default_str();
  simulate->add_option("--alpha", s.alpha, "Nominal level")->capture_default_str();
  simulate->add_option("--epsilon", s.epsilon, "Per-tail tolerance")->capture_default_str();
  simulate->add_option("--B", s.replications, "Replications per size")->capture_default_str();
  auto* s_seed_opt = simulate->add_option("--seed", s_seed, "Root seed (else RELIAB_SEED)");
  simulate->add_option("--grid", s.grid, "Total sizes n1,n2,... (default: auto)")
      ->delimiter(',');
  simulate->add_option("--methods", s.methods, "classic,corrected")->delimiter(',');
  simulate->add_option("--emit-density", s_density, "Write a histogram of T here");
  simulate->add_option("--density-n", s.density_n, "Size used for the histogram");
  simulate->add_option("--density-bins", s.density_bins, "Histogram bins")
      ->capture_default_str();
  simulate->add_option("--threads", s.threads, "Worker threads (0: all cores)");
  add_format(simulate);

  SweepOptions w;
  std::uint64_t w_seed = 0;
  std::string w_data;
  auto* sweep = app.add_subcommand("sweep", "Empirical vs theoretical minimum sample size");
  sweep->add_option("--dist", w.dist, "Family:params")->capture_default_str();
  sweep->add_option("--data", w_data, "Resample from this one-column dataset");
  sweep->add_option("--k", w.k, "Allocation ratio n_y / n_x")->capture_default_str();
  sweep->add_option("--alpha", w.alpha, "Nominal level")->capture_default_str();
  sweep->add_option("--epsilon", w.epsilons, "Tolerance(s) e1,e2,...")->delimiter(',');
  sweep->add_option("--B", w.replications, "Replications per size")->capture_default_str();
  auto* w_seed_opt = sweep->add_option("--seed", w_seed, "Root seed (else RELIAB_SEED)");
  sweep->add_option("--grid", w.grid, "Total sizes n1,n2,... (default: auto)")
      ->delimiter(',');
  sweep->add_option("--methods", w.methods, "classic,corrected")->delimiter(',');
  sweep->add_option("--threads", w.threads, "Worker threads (0: all cores)");
  add_format(sweep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    Report report;
    if (*analyze) {
      if (!a_control.empty()) a.control = a_control;
      if (!a_treatment.empty()) a.treatment = a_treatment;
      if (!a_data.empty()) a.data = a_data;
      report = cmd_analyze(a);
    } else if (*plan) {
      if (!p_dist.empty()) p.dist = p_dist;
      if (!p_control.empty()) p.control = p_control;
      if (!p_treatment.empty()) p.treatment = p_treatment;
      if (!p_data.empty()) p.data = p_data;
      if (p_k_opt->count() > 0) p.k = p_k;
      report = cmd_plan(p);
    } else if (*simulate) {
      if (s_seed_opt->count() > 0) s.seed = s_seed;
      if (!s_density.empty()) s.emit_density = s_density;
      report = cmd_simulate(s);
    } else {
      if (w_seed_opt->count() > 0) w.seed = w_seed;
      if (!w_data.empty()) w.dist = "empirical:" + w_data;
      report = cmd_sweep(w);
    }
    for (const auto& msg : report.warnings) err << "warning: " << msg << '\n';
    write_report(out, report, parse_format(format));
    out.flush();
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::config:
        return kExitUsage;
      case ErrorKind::data:
        return kExitData;
      case ErrorKind::domain:
        return kExitNumeric;
    }
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitNumeric;
  }
}

}  // namespace reliab::cli
