// Command-line front end: sample | evaluate | exact | export-mip | gen.
//
// Exit codes: 0 success, 1 data error, 2 usage error.

#include <cstdint>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "vas/vas.hpp"

namespace {

constexpr int kExitData = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

vas::KernelParams kernel_for(const vas::Dataset& data, std::optional<double> epsilon, std::optional<double> cutoff) {
  const double eps = epsilon ? *epsilon : vas::default_epsilon(data.points).epsilon();
  return cutoff ? vas::KernelParams(eps, *cutoff) : vas::KernelParams(eps);
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw vas::Error(vas::ErrorCode::Io, "cannot open " + path + " for writing");
  return file;
}

struct SampleOptions {
  std::string method = "vas";
  std::size_t k = 0;
  std::string input;
  std::string output;
  std::optional<double> epsilon;
  std::size_t passes = 1;
  bool until_converged = false;
  std::optional<double> time_budget;
  std::string mode = "esloc";
  std::optional<double> cutoff;
  std::string shuffle = "on";
  std::uint64_t seed = 0;
  bool density = false;
  std::size_t grid = 10;
  std::size_t recompute_interval = 100000;
};

int run_sample(const SampleOptions& o) {
  const auto method = vas::parse_sample_method(o.method);
  const auto mode = vas::parse_interchange_mode(o.mode);
  if (!method) throw UsageError("unknown --method " + o.method);
  if (!mode) throw UsageError("unknown --mode " + o.mode);

  const vas::Dataset data = vas::read_csv(o.input);
  if (o.k > data.size()) {
    throw vas::Error(vas::ErrorCode::KTooLarge,
                     "--k " + std::to_string(o.k) + " exceeds dataset size " + std::to_string(data.size()));
  }

  nlohmann::json summary = {{"method", vas::to_string(*method)}, {"k", o.k}, {"n", data.size()}, {"seed", o.seed}};
  vas::Sample sample;
  switch (*method) {
    case vas::SampleMethod::Vas: {
      const auto params = kernel_for(data, o.epsilon, o.cutoff);
      vas::InterchangeConfig cfg;
      cfg.k = o.k;
      cfg.passes = o.until_converged ? std::numeric_limits<std::size_t>::max() : o.passes;
      cfg.seed = o.seed;
      cfg.shuffle = o.shuffle == "on";
      cfg.mode = *mode;
      cfg.recompute_interval = o.recompute_interval;
      cfg.time_budget_secs = o.time_budget;
      auto result = vas::run_interchange(data, cfg, params);
      sample = std::move(result.sample);
      summary["mode"] = vas::to_string(*mode);
      summary["epsilon"] = params.epsilon();
      summary["cutoff"] = params.cutoff_radius();
      summary["objective"] = vas::surrogate_objective(sample.points, params);
      summary["points_seen"] = result.stats.points_seen;
      summary["replacements"] = result.stats.replacements;
      summary["passes_run"] = result.stats.passes_run;
      summary["converged"] = result.stats.converged;
      summary["wall_time"] = result.stats.wall_time;
      break;
    }
    case vas::SampleMethod::Uniform:
      sample = vas::reservoir_sample(data, o.k, o.seed);
      break;
    case vas::SampleMethod::Stratified:
      sample = vas::stratified_sample(data, {o.grid, o.k, o.seed});
      break;
  }
  if (o.density) vas::attach_counts(sample, data);

  std::ofstream file;
  vas::write_sample_csv(sample, open_output(o.output, file), o.density);
  if (!o.output.empty() && o.output != "-") std::cout << summary.dump() << "\n";
  return 0;
}

struct EvaluateOptions {
  std::string data;
  std::string sample;
  std::size_t points = 1000;
  std::uint64_t seed = 0;
  std::string stat = "median";
  std::optional<double> domain_radius;
  std::optional<double> epsilon;
  std::string format = "json";
};

int run_evaluate(const EvaluateOptions& o) {
  if (o.stat != "median" && o.stat != "mean") throw UsageError("--stat must be median or mean");
  const vas::Dataset data = vas::read_csv(o.data);
  const vas::Dataset sample = vas::read_csv(o.sample);
  const auto params = kernel_for(data, o.epsilon, std::nullopt);
  vas::McConfig mc;
  mc.n_points = o.points;
  mc.seed = o.seed;
  mc.stat = o.stat == "mean" ? vas::LossStat::Mean : vas::LossStat::Median;
  mc.domain_radius = o.domain_radius ? *o.domain_radius : vas::default_domain_radius(params);
  const auto report = vas::evaluate(sample.points, data, params, mc);
  if (o.format == "text") {
    std::cout << vas::to_text(report);
  } else {
    std::cout << vas::to_json(report).dump() << "\n";
  }
  return 0;
}

struct ExactOptions {
  std::string input;
  std::size_t k = 0;
  std::optional<double> epsilon;
  std::uint64_t budget = vas::kDefaultEnumerationBudget;
  std::string output;
};

int run_exact(const ExactOptions& o) {
  const vas::Dataset data = vas::read_csv(o.input);
  if (o.k > data.size()) throw vas::Error(vas::ErrorCode::KTooLarge, "--k exceeds dataset size");
  const auto params = kernel_for(data, o.epsilon, std::nullopt);
  const auto best = vas::brute_force_vas(vas::weights_from_points(data.points, params), o.k, o.budget);
  if (!o.output.empty()) {
    vas::write_sample_csv(vas::make_sample(data, best.subset, vas::SampleMethod::Vas), o.output, false);
  }
  std::cout << nlohmann::json{{"k", o.k}, {"epsilon", params.epsilon()}, {"subset", best.subset}, {"objective", best.value}}
                   .dump()
            << "\n";
  return 0;
}

int run_export_mip(const std::string& input, std::size_t k, std::optional<double> epsilon, const std::string& output) {
  const vas::Dataset data = vas::read_csv(input);
  if (k > data.size()) throw vas::Error(vas::ErrorCode::KTooLarge, "--k exceeds dataset size");
  const auto params = kernel_for(data, epsilon, std::nullopt);
  std::ofstream file;
  vas::export_mip_lp(vas::weights_from_points(data.points, params), k, open_output(output, file));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Visualization-aware sampling for 2-D scatter data"};
  app.require_subcommand(1);

  SampleOptions so;
  auto* sample = app.add_subcommand("sample", "Select a K-point sample");
  sample->add_option("--method", so.method, "vas, uniform or stratified")->check(CLI::IsMember({"vas", "uniform", "stratified"}));
  sample->add_option("--k", so.k, "Sample size")->required()->check(CLI::PositiveNumber);
  sample->add_option("--input", so.input, "Input CSV (x,y)")->required();
  sample->add_option("--output", so.output, "Output CSV (default: stdout)");
  sample->add_option("--epsilon", so.epsilon, "Kernel bandwidth (default: bounding-box diagonal / 100)")->check(CLI::PositiveNumber);
  sample->add_option("--passes", so.passes, "Maximum passes over the data")->check(CLI::PositiveNumber);
  sample->add_flag("--until-converged", so.until_converged, "Repeat passes until one makes no replacement");
  sample->add_option("--time-budget-secs", so.time_budget, "Wall-clock budget")->check(CLI::PositiveNumber);
  sample->add_option("--mode", so.mode, "noes, es or esloc")->check(CLI::IsMember({"noes", "es", "esloc"}));
  sample->add_option("--cutoff", so.cutoff, "Locality cutoff radius (default: 4 epsilon)")->check(CLI::PositiveNumber);
  sample->add_option("--shuffle", so.shuffle, "Shuffle stream order: on or off")->check(CLI::IsMember({"on", "off"}));
  sample->add_option("--seed", so.seed, "Random seed");
  sample->add_flag("--density", so.density, "Attach nearest-neighbor counts as a third column");
  sample->add_option("--grid", so.grid, "Stratified grid cells per axis")->check(CLI::PositiveNumber);
  sample->add_option("--recompute-interval", so.recompute_interval, "Steps between full responsibility recomputation")
      ->check(CLI::PositiveNumber);

  EvaluateOptions eo;
  auto* evaluate = app.add_subcommand("evaluate", "Report quality metrics of a sample");
  evaluate->add_option("--data", eo.data, "Dataset CSV")->required();
  evaluate->add_option("--sample", eo.sample, "Sample CSV")->required();
  evaluate->add_option("--points", eo.points, "Monte-Carlo points")->check(CLI::PositiveNumber);
  evaluate->add_option("--seed", eo.seed, "Random seed");
  evaluate->add_option("--stat", eo.stat, "median or mean")->check(CLI::IsMember({"median", "mean"}));
  evaluate->add_option("--domain-radius", eo.domain_radius, "Domain membership radius (default: 10 epsilon)")
      ->check(CLI::NonNegativeNumber);
  evaluate->add_option("--epsilon", eo.epsilon, "Kernel bandwidth")->check(CLI::PositiveNumber);
  evaluate->add_option("--format", eo.format, "json or text")->check(CLI::IsMember({"json", "text"}));

  ExactOptions xo;
  auto* exact = app.add_subcommand("exact", "Exhaustive optimum for tiny inputs");
  exact->add_option("--input", xo.input, "Input CSV")->required();
  exact->add_option("--k", xo.k, "Sample size")->required()->check(CLI::PositiveNumber);
  exact->add_option("--epsilon", xo.epsilon, "Kernel bandwidth")->check(CLI::PositiveNumber);
  exact->add_option("--budget", xo.budget, "Maximum number of subsets to enumerate");
  exact->add_option("--output", xo.output, "Write the optimal subset as CSV");

  std::string mip_input;
  std::string mip_output;
  std::size_t mip_k = 0;
  std::optional<double> mip_epsilon;
  auto* export_mip = app.add_subcommand("export-mip", "Write the 0-1 program in LP format");
  export_mip->add_option("--input", mip_input, "Input CSV")->required();
  export_mip->add_option("--k", mip_k, "Sample size")->required()->check(CLI::PositiveNumber);
  export_mip->add_option("--epsilon", mip_epsilon, "Kernel bandwidth")->check(CLI::PositiveNumber);
  export_mip->add_option("--output", mip_output, "LP file (default: stdout)");

  vas::GaussianMixtureConfig go;
  std::string gen_output;
  auto* gen = app.add_subcommand("gen", "Generate a seeded Gaussian-mixture dataset");
  gen->add_option("--blobs", go.blobs, "Number of blobs")->check(CLI::PositiveNumber);
  gen->add_option("--n", go.n, "Number of points")->check(CLI::PositiveNumber);
  gen->add_option("--seed", go.seed, "Random seed");
  gen->add_option("--cov", go.cov, "Isotropic blob variance")->check(CLI::PositiveNumber);
  gen->add_option("--output", gen_output, "Output CSV (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*sample) return run_sample(so);
    if (*evaluate) return run_evaluate(eo);
    if (*exact) return run_exact(xo);
    if (*export_mip) return run_export_mip(mip_input, mip_k, mip_epsilon, mip_output);
    if (*gen) {
      std::ofstream file;
      vas::write_points_csv(vas::gaussian_mixture(go).points, open_output(gen_output, file));
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const vas::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    const bool usage = e.code() == vas::ErrorCode::InvalidArgument || e.code() == vas::ErrorCode::MissingCounts;
    return usage ? kExitUsage : kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
