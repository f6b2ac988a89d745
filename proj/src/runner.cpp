#include "wear/runner.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "wear/baselines.hpp"
#include "wear/wear.hpp"

namespace wear {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

DataSource::DataSource(const ExperimentConfig& config) : config_(&config) {
  if (const auto* csv = std::get_if<CsvSource>(&config.data)) base_ = load_csv(csv->schema);
}

MultiAnnotatedDataset DataSource::dataset(Index replication) const {
  const RngStream rep(config_->master_seed, replication);
  const std::uint64_t seed = rep.substream(replication_streams::kData).key();
  if (const auto* g = std::get_if<GeneratorSpec>(&config_->data)) {
    GeneratorSpec spec = *g;
    spec.seed = seed;
    return generate(spec);
  }
  return overlay_experts(*base_, ExpertOverlaySpec{std::get<CsvSource>(config_->data).overlay_variances, seed});
}

Partitions DataSource::partitions(Index replication) const {
  const RngStream rep(config_->master_seed, replication);
  SplitSpec spec = config_->split;
  spec.seed = rep.substream(replication_streams::kSplit).key();
  return split(dataset(replication), spec);
}

ReplicationOutcome run_replication(const ExperimentConfig& config, const DataSource& source, Index r) {
  ReplicationOutcome out;
  std::string framework = "data";
  std::string learner = "-";
  try {
    const Partitions parts = source.partitions(r);
    const RngStream fits = RngStream(config.master_seed, r).substream(replication_streams::kFit);
    const auto reference = config.reference_variances();

    for (const Framework f : config.frameworks) {
      framework = std::string(to_string(f));
      if (f == Framework::raykar) {
        learner = "linear";
        const auto state = fit_raykar(parts, config.raykar);
        ReplicationReport report;
        report.framework = f;
        report.learner = "linear";
        report.learner_kind = LearnerKind::linear;
        report.replication_id = r;
        report.test_mse = test_mse(state.model()->predict(parts.test.features), parts.test.labels());
        const auto variances = state.variances();
        report.estimated_variances = variances;
        report.weights = optimal_weights(floor_variances(variances));
        report.weight_deviation = variance_deviation(variances, reference);
        out.reports.push_back(std::move(report));
        continue;
      }
      for (Index li = 0; li < config.learners.size(); ++li) {
        const LearnerSpec& spec = config.learners[li];
        learner = spec.name;
        const RngStream rng = fits.substream(li);
        ReplicationReport report;
        report.framework = f;
        report.learner = spec.name;
        report.learner_kind = spec.kind();
        report.replication_id = r;
        const Vector& truth = parts.test.labels();
        switch (f) {
          case Framework::wear: {
            const auto model = fit_wear(parts, config.wear_expert_learner.value_or(spec), spec, rng);
            report.test_mse = test_mse(model.predict(parts.test.features), truth);
            report.estimated_variances = model.profile.expert_mses;
            report.weights = model.profile.weights;
            report.weight_deviation = variance_deviation(model.profile.expert_mses, reference);
            break;
          }
          case Framework::arithmetic_mean:
            report.test_mse = test_mse(fit_arithmetic_mean(parts, spec, rng)->predict(parts.test.features), truth);
            break;
          case Framework::gold_standard:
            report.test_mse = test_mse(fit_gold_standard(parts, spec, rng)->predict(parts.test.features), truth);
            break;
          case Framework::raykar:
            break;
        }
        out.reports.push_back(std::move(report));
      }
    }
  } catch (const std::exception& e) {
    out.failure = RunFailure{framework, learner, r, e.what()};
  }
  return out;
}

RunResult run_experiment(const ExperimentConfig& config) {
  const auto problems = check_config(config);
  if (!problems.empty()) throw ConfigError(problems);
  const DataSource source(config);
  std::vector<ReplicationOutcome> outcomes(config.replications);
  const auto n = static_cast<long long>(config.replications);
#pragma omp parallel for schedule(dynamic) num_threads(static_cast<int>(config.parallelism)) if (config.parallelism > 1)
  for (long long r = 0; r < n; ++r) {
    outcomes[static_cast<Index>(r)] = run_replication(config, source, static_cast<Index>(r));
  }

  RunResult result;
  for (auto& o : outcomes) {
    for (auto& rep : o.reports) result.reports.push_back(std::move(rep));
    if (o.failure && !result.failure) result.failure = o.failure;
  }
  result.summary = aggregate(result.reports);
  return result;
}

std::string format_double(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return ec == std::errc() ? std::string(buffer, ptr) : std::string("nan");
}

namespace {

std::string optional_cell(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInput("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw InvalidInput("failed writing '" + path.string() + "'");
}

std::string replications_csv(const ExperimentConfig& config, const RunResult& result) {
  const Index experts = config.expert_variances().size();
  std::ostringstream out;
  out << "replication,framework,learner,learner_kind,test_mse,weight_deviation";
  for (Index j = 1; j <= experts; ++j) out << ",estimated_variance_" << j;
  for (Index j = 1; j <= experts; ++j) out << ",weight_" << j;
  out << '\n';
  for (const auto& r : result.reports) {
    out << r.replication_id << ',' << to_string(r.framework) << ',' << r.learner << ','
        << to_string(r.learner_kind) << ',' << format_double(r.test_mse) << ',' << optional_cell(r.weight_deviation);
    for (const auto* values : {&r.estimated_variances, &r.weights}) {
      for (Index j = 0; j < experts; ++j) {
        out << ',';
        if (*values && j < (*values)->size()) out << format_double((**values)[j]);
      }
    }
    out << '\n';
  }
  return out.str();
}

std::string summary_csv(const AggregateReport& summary) {
  std::ostringstream out;
  out << "framework,learner,learner_kind,replications,mean_mse,standard_error_mse,mean_weight_deviation,"
         "standard_error_weight_deviation,single_replication\n";
  for (const auto& c : summary.cells) {
    out << to_string(c.framework) << ',' << c.learner << ',' << to_string(c.learner_kind) << ',' << c.replications
        << ',' << format_double(c.mean_mse) << ',' << format_double(c.standard_error_mse) << ','
        << optional_cell(c.mean_weight_deviation) << ',' << optional_cell(c.standard_error_weight_deviation) << ','
        << (c.single_replication ? "true" : "false") << '\n';
  }
  return out.str();
}

std::string summary_json(const ExperimentConfig& config, const RunResult& result) {
  Json root;
  Json cells = Json::array();
  for (const auto& c : result.summary.cells) {
    Json cell;
    cell["framework"] = std::string(to_string(c.framework));
    cell["learner"] = c.learner;
    cell["learner_kind"] = std::string(to_string(c.learner_kind));
    cell["replications"] = c.replications;
    cell["mean_mse"] = c.mean_mse;
    cell["standard_error_mse"] = c.standard_error_mse;
    cell["mean_weight_deviation"] = c.mean_weight_deviation ? Json(*c.mean_weight_deviation) : Json(nullptr);
    cell["standard_error_weight_deviation"] =
        c.standard_error_weight_deviation ? Json(*c.standard_error_weight_deviation) : Json(nullptr);
    cell["single_replication"] = c.single_replication;
    cells.push_back(std::move(cell));
  }
  root["cells"] = std::move(cells);
  Json notes = Json::array();
  if (std::find(config.frameworks.begin(), config.frameworks.end(), Framework::raykar) != config.frameworks.end()) {
    notes.push_back("raykar ignores the learner list: it always fits a linear model, on train and validation combined");
  }
  notes.push_back(config.variance_reference == VarianceReference::conditional && config.uses_generator()
                      ? "weight_deviation is measured against noise_sd^2 + expert variance"
                      : "weight_deviation is measured against the configured expert variances");
  notes.push_back("standard errors are sample sd / sqrt(replications); 0 for a single replication");
  root["notes"] = std::move(notes);
  if (result.failure) {
    root["failure"] = Json{{"framework", result.failure->framework},
                           {"learner", result.failure->learner},
                           {"replication", result.failure->replication},
                           {"message", result.failure->message}};
  } else {
    root["failure"] = nullptr;
  }
  return root.dump(2) + "\n";
}

}  // namespace

void write_outputs(const ExperimentConfig& config, const RunResult& result, const fs::path& dir) {
  fs::create_directories(dir);
  write_file(dir / "replications.csv", replications_csv(config, result));
  write_file(dir / "summary.csv", summary_csv(result.summary));
  write_file(dir / "summary.json", summary_json(config, result));
  write_file(dir / "config.echo.json", echo_config(config));
}

}  // namespace wear
