#include "wear/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "json.hpp"

namespace wear {

using Json = nlohmann::ordered_json;

const std::vector<double>& ExperimentConfig::expert_variances() const {
  if (const auto* g = std::get_if<GeneratorSpec>(&data)) return g->expert_variances;
  return std::get<CsvSource>(data).overlay_variances;
}

std::vector<double> ExperimentConfig::reference_variances() const {
  if (const auto* g = std::get_if<GeneratorSpec>(&data)) {
    return variance_reference == VarianceReference::conditional ? g->conditional_expert_variances()
                                                                 : g->expert_variances;
  }
  return std::get<CsvSource>(data).overlay_variances;
}

namespace {

const std::vector<Framework> kAllFrameworks = {Framework::wear, Framework::raykar, Framework::arithmetic_mean,
                                               Framework::gold_standard};

std::vector<LearnerSpec> default_learners() {
  return {LearnerSpec::linear(), LearnerSpec::forest(), LearnerSpec::tree(), LearnerSpec::lasso()};
}

// Walks a parsed document, collecting diagnostics anchored to lines of the
// raw text. Keys are located by searching for each path component in turn,
// starting where the parent was found.
class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  std::vector<std::string>& diagnostics() { return diagnostics_; }

  void error(const std::vector<std::string>& path, const std::string& message) {
    std::ostringstream out;
    out << "line " << line_of(path) << ": " << pointer(path) << ": " << message;
    diagnostics_.push_back(out.str());
  }

  void check_keys(const Json& obj, const std::vector<std::string>& path, std::initializer_list<std::string_view> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
        auto child = path;
        child.push_back(it.key());
        error(child, "unknown key '" + it.key() + "'");
      }
    }
  }

  bool object(const Json& j, const std::vector<std::string>& path) {
    if (j.is_object()) return true;
    error(path, "expected an object");
    return false;
  }

  std::optional<double> number(const Json& obj, const std::vector<std::string>& path) {
    const Json* v = find(obj, path.back());
    if (!v) return std::nullopt;
    if (!v->is_number()) {
      error(path, "expected a number");
      return std::nullopt;
    }
    return v->get<double>();
  }

  std::optional<std::uint64_t> count(const Json& obj, const std::vector<std::string>& path) {
    const Json* v = find(obj, path.back());
    if (!v) return std::nullopt;
    if (v->is_number_unsigned()) return v->get<std::uint64_t>();
    error(path, "expected a non-negative integer");
    return std::nullopt;
  }

  std::optional<bool> boolean(const Json& obj, const std::vector<std::string>& path) {
    const Json* v = find(obj, path.back());
    if (!v) return std::nullopt;
    if (!v->is_boolean()) {
      error(path, "expected true or false");
      return std::nullopt;
    }
    return v->get<bool>();
  }

  std::optional<std::string> string(const Json& obj, const std::vector<std::string>& path) {
    const Json* v = find(obj, path.back());
    if (!v) return std::nullopt;
    if (!v->is_string()) {
      error(path, "expected a string");
      return std::nullopt;
    }
    return v->get<std::string>();
  }

  std::optional<std::vector<double>> numbers(const Json& obj, const std::vector<std::string>& path) {
    const Json* v = find(obj, path.back());
    if (!v) return std::nullopt;
    if (!v->is_array()) {
      error(path, "expected an array of numbers");
      return std::nullopt;
    }
    std::vector<double> out;
    for (const auto& e : *v) {
      if (!e.is_number()) {
        error(path, "expected an array of numbers");
        return std::nullopt;
      }
      out.push_back(e.get<double>());
    }
    return out;
  }

  static const Json* find(const Json& obj, const std::string& key) {
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
  }

 private:
  std::size_t line_of(const std::vector<std::string>& path) const {
    std::size_t pos = 0;
    for (const auto& component : path) {
      if (component.empty() || component.front() == '[') continue;
      const auto found = text_.find("\"" + component + "\"", pos);
      if (found == std::string_view::npos) break;
      pos = found;
    }
    return static_cast<std::size_t>(std::count(text_.begin(), text_.begin() + static_cast<std::ptrdiff_t>(pos), '\n')) + 1;
  }

  static std::string pointer(const std::vector<std::string>& path) {
    std::string out;
    for (const auto& p : path) out += (p.front() == '[' ? "" : "/") + p;
    return out.empty() ? "/" : out;
  }

  std::string_view text_;
  std::vector<std::string> diagnostics_;
};

using Path = std::vector<std::string>;

Path child(Path p, std::string key) {
  p.push_back(std::move(key));
  return p;
}

std::optional<LearnerSpec> read_learner(Reader& r, const Json& j, const Path& path) {
  if (!r.object(j, path)) return std::nullopt;
  const auto kind_name = r.string(j, child(path, "kind"));
  if (!kind_name) {
    if (!Reader::find(j, "kind")) r.error(path, "learner needs a 'kind'");
    return std::nullopt;
  }
  LearnerKind kind;
  try {
    kind = learner_kind_from_string(*kind_name);
  } catch (const Error&) {
    r.error(child(path, "kind"), "unknown learner kind '" + *kind_name + "' (linear, lasso, tree, forest)");
    return std::nullopt;
  }
  LearnerSpec spec;
  spec.name = r.string(j, child(path, "name")).value_or(std::string(to_string(kind)));
  switch (kind) {
    case LearnerKind::linear:
      r.check_keys(j, path, {"kind", "name"});
      spec.params = LinearParams{};
      break;
    case LearnerKind::lasso: {
      r.check_keys(j, path, {"kind", "name", "folds", "lambda_grid_size", "lambda_min_ratio", "tolerance", "max_sweeps"});
      LassoParams p;
      p.folds = r.count(j, child(path, "folds")).value_or(p.folds);
      p.lambda_grid_size = r.count(j, child(path, "lambda_grid_size")).value_or(p.lambda_grid_size);
      p.lambda_min_ratio = r.number(j, child(path, "lambda_min_ratio")).value_or(p.lambda_min_ratio);
      p.tolerance = r.number(j, child(path, "tolerance")).value_or(p.tolerance);
      p.max_sweeps = r.count(j, child(path, "max_sweeps")).value_or(p.max_sweeps);
      if (p.folds < 2) r.error(child(path, "folds"), "lasso needs at least 2 folds");
      if (p.lambda_grid_size < 1) r.error(child(path, "lambda_grid_size"), "grid needs at least one lambda");
      if (!(p.lambda_min_ratio > 0.0 && p.lambda_min_ratio < 1.0)) r.error(child(path, "lambda_min_ratio"), "must lie in (0, 1)");
      if (!(p.tolerance > 0.0)) r.error(child(path, "tolerance"), "must be positive");
      spec.params = p;
      break;
    }
    case LearnerKind::tree: {
      r.check_keys(j, path, {"kind", "name", "min_split", "min_leaf", "complexity", "max_depth"});
      TreeParams p;
      p.min_split = r.count(j, child(path, "min_split")).value_or(p.min_split);
      p.min_leaf = r.count(j, child(path, "min_leaf")).value_or(p.min_leaf);
      p.complexity = r.number(j, child(path, "complexity")).value_or(p.complexity);
      p.max_depth = r.count(j, child(path, "max_depth")).value_or(p.max_depth);
      if (p.min_leaf < 1) r.error(child(path, "min_leaf"), "must be at least 1");
      if (!(p.complexity >= 0.0)) r.error(child(path, "complexity"), "must be >= 0");
      spec.params = p;
      break;
    }
    case LearnerKind::forest: {
      r.check_keys(j, path, {"kind", "name", "n_trees", "mtry", "min_leaf", "min_split", "complexity", "max_depth", "bootstrap"});
      ForestParams p;
      p.n_trees = r.count(j, child(path, "n_trees")).value_or(p.n_trees);
      if (const Json* m = Reader::find(j, "mtry"); m && m->is_string()) {
        if (m->get<std::string>() != "auto") r.error(child(path, "mtry"), "expected a positive integer or \"auto\"");
      } else if (auto v = r.count(j, child(path, "mtry"))) {
        if (*v == 0) r.error(child(path, "mtry"), "must be at least 1 (or \"auto\")");
        p.mtry = *v;
      }
      p.min_leaf = r.count(j, child(path, "min_leaf")).value_or(p.min_leaf);
      p.min_split = r.count(j, child(path, "min_split")).value_or(p.min_split);
      p.complexity = r.number(j, child(path, "complexity")).value_or(p.complexity);
      p.max_depth = r.count(j, child(path, "max_depth")).value_or(p.max_depth);
      p.bootstrap = r.boolean(j, child(path, "bootstrap")).value_or(p.bootstrap);
      if (p.n_trees < 1) r.error(child(path, "n_trees"), "must be at least 1");
      if (p.min_leaf < 1) r.error(child(path, "min_leaf"), "must be at least 1");
      if (!(p.complexity >= 0.0)) r.error(child(path, "complexity"), "must be >= 0");
      spec.params = p;
      break;
    }
  }
  return spec;
}

std::optional<GeneratorSpec> read_generator(Reader& r, const Json& j, const Path& path) {
  if (!r.object(j, path)) return std::nullopt;
  r.check_keys(j, path, {"kind", "n", "dimension", "covariates", "mean_function", "noise_sd", "expert_variances"});
  const auto kind_name = r.string(j, child(path, "kind"));
  if (!kind_name) {
    if (!Reader::find(j, "kind")) r.error(path, "generator needs a 'kind'");
    return std::nullopt;
  }
  GeneratorSpec spec;
  try {
    const auto kind = generator_kind_from_string(*kind_name);
    if (kind == GeneratorKind::custom) {
      spec.kind = kind;
      spec.mean_function = MeanFunction::linear;
    } else {
      spec = GeneratorSpec::experiment(static_cast<int>(kind) + 1, spec.n, 0);
    }
  } catch (const Error&) {
    r.error(child(path, "kind"), "unknown generator kind '" + *kind_name + "' (experiment1..experiment4, custom)");
    return std::nullopt;
  }
  spec.n = r.count(j, child(path, "n")).value_or(spec.n);
  spec.dimension = r.count(j, child(path, "dimension")).value_or(spec.dimension);
  spec.noise_sd = r.number(j, child(path, "noise_sd")).value_or(spec.noise_sd);
  if (auto mf = r.string(j, child(path, "mean_function"))) {
    try {
      spec.mean_function = mean_function_from_string(*mf);
    } catch (const Error&) {
      r.error(child(path, "mean_function"), "expected \"linear\" or \"quadratic\"");
    }
  }
  if (auto v = r.numbers(j, child(path, "expert_variances"))) {
    spec.expert_variances = *v;
  } else if (spec.kind == GeneratorKind::custom && !Reader::find(j, "expert_variances")) {
    r.error(path, "custom generator needs 'expert_variances'");
  }
  if (const Json* c = Reader::find(j, "covariates")) {
    const Path cpath = child(path, "covariates");
    if (r.object(*c, cpath)) {
      const auto dist = r.string(*c, child(cpath, "distribution")).value_or("normal");
      if (dist == "normal") {
        r.check_keys(*c, cpath, {"distribution", "mean", "sd"});
        spec.covariates.kind = CovariateDistribution::Kind::normal;
        spec.covariates.a = r.number(*c, child(cpath, "mean")).value_or(0.0);
        spec.covariates.b = r.number(*c, child(cpath, "sd")).value_or(1.0);
      } else if (dist == "uniform") {
        r.check_keys(*c, cpath, {"distribution", "low", "high"});
        spec.covariates.kind = CovariateDistribution::Kind::uniform;
        spec.covariates.a = r.number(*c, child(cpath, "low")).value_or(0.0);
        spec.covariates.b = r.number(*c, child(cpath, "high")).value_or(1.0);
      } else {
        r.error(child(cpath, "distribution"), "expected \"normal\" or \"uniform\"");
      }
    }
  }
  try {
    spec.validate();
  } catch (const Error& e) {
    r.error(path, e.what());
  }
  return spec;
}

std::optional<ColumnRef> read_column(Reader& r, const Json& j, const Path& path) {
  if (j.is_string()) return ColumnRef{j.get<std::string>()};
  if (j.is_number_unsigned()) return ColumnRef{static_cast<Index>(j.get<std::uint64_t>())};
  r.error(path, "expected a column name or a 0-based column index");
  return std::nullopt;
}

std::optional<CsvSource> read_csv(Reader& r, const Json& data, const Path& path) {
  const Json& j = data["csv"];
  const Path cpath = child(path, "csv");
  if (!r.object(j, cpath)) return std::nullopt;
  r.check_keys(j, cpath, {"path", "has_header", "target_column", "feature_columns", "delimiter"});
  CsvSource source;
  if (auto p = r.string(j, child(cpath, "path"))) source.schema.path = *p;
  else if (!Reader::find(j, "path")) r.error(cpath, "csv source needs a 'path'");
  source.schema.has_header = r.boolean(j, child(cpath, "has_header")).value_or(true);
  if (const Json* t = Reader::find(j, "target_column")) {
    if (auto col = read_column(r, *t, child(cpath, "target_column"))) source.schema.target_column = *col;
  } else {
    r.error(cpath, "csv source needs a 'target_column'");
  }
  if (const Json* f = Reader::find(j, "feature_columns")) {
    const Path fpath = child(cpath, "feature_columns");
    if (f->is_string() && f->get<std::string>() == "all") {
      source.schema.feature_columns.reset();
    } else if (f->is_array()) {
      std::vector<ColumnRef> cols;
      for (const auto& e : *f) {
        if (auto col = read_column(r, e, fpath)) cols.push_back(*col);
      }
      source.schema.feature_columns = std::move(cols);
    } else {
      r.error(fpath, "expected \"all\" or an array of columns");
    }
  }
  if (auto d = r.string(j, child(cpath, "delimiter"))) {
    if (d->size() != 1) r.error(child(cpath, "delimiter"), "delimiter must be a single character");
    else source.schema.delimiter = (*d)[0];
  }

  const Path opath = child(path, "overlay");
  const Json* overlay = Reader::find(data, "overlay");
  if (!overlay) {
    r.error(path, "csv source needs an 'overlay' with expert_variances");
  } else if (r.object(*overlay, opath)) {
    r.check_keys(*overlay, opath, {"expert_variances"});
    if (auto v = r.numbers(*overlay, child(opath, "expert_variances"))) {
      source.overlay_variances = *v;
      try {
        ExpertOverlaySpec{*v, 0}.validate();
      } catch (const Error& e) {
        r.error(child(opath, "expert_variances"), e.what());
      }
    } else if (!Reader::find(*overlay, "expert_variances")) {
      r.error(opath, "overlay needs 'expert_variances'");
    }
  }
  return source;
}

Json learner_to_json(const LearnerSpec& spec, std::optional<Index> dimension) {
  Json j;
  j["kind"] = std::string(to_string(spec.kind()));
  j["name"] = spec.name;
  std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, LassoParams>) {
          j["folds"] = p.folds;
          j["lambda_grid_size"] = p.lambda_grid_size;
          j["lambda_min_ratio"] = p.lambda_min_ratio;
          j["tolerance"] = p.tolerance;
          j["max_sweeps"] = p.max_sweeps;
        } else if constexpr (std::is_same_v<P, TreeParams>) {
          j["min_split"] = p.min_split;
          j["min_leaf"] = p.min_leaf;
          j["complexity"] = p.complexity;
          j["max_depth"] = p.max_depth;
        } else if constexpr (std::is_same_v<P, ForestParams>) {
          j["n_trees"] = p.n_trees;
          if (p.mtry != 0) j["mtry"] = p.mtry;
          else if (dimension) j["mtry"] = p.resolved_mtry(*dimension);
          else j["mtry"] = "auto";
          j["min_leaf"] = p.min_leaf;
          j["min_split"] = p.tree_params().min_split;
          j["complexity"] = p.complexity;
          j["max_depth"] = p.max_depth;
          j["bootstrap"] = p.bootstrap;
        }
      },
      spec.params);
  return j;
}

}  // namespace

std::vector<std::string> check_config(const ExperimentConfig& c) {
  std::vector<std::string> out;
  if (c.replications < 1) out.push_back("replications must be at least 1");
  if (c.parallelism < 1) out.push_back("parallelism must be at least 1");
  if (c.frameworks.empty()) out.push_back("at least one framework is required");
  if (c.learners.empty()) out.push_back("at least one learner is required");
  if (c.output_dir.empty()) out.push_back("output_dir must not be empty");
  try {
    c.split.validate();
  } catch (const Error& e) {
    out.push_back(e.what());
  }
  std::set<std::string> names;
  for (const auto& l : c.learners) {
    if (!names.insert(l.name).second) out.push_back("duplicate learner name '" + l.name + "'");
  }
  if (const auto* g = std::get_if<GeneratorSpec>(&c.data)) {
    try {
      g->validate();
      const auto sizes = c.split.sizes(g->n);
      if (sizes[0] == 0 || sizes[1] == 0 || sizes[2] == 0) {
        out.push_back("split of n=" + std::to_string(g->n) + " rows leaves an empty partition");
      }
    } catch (const Error& e) {
      out.push_back(e.what());
    }
  }
  return out;
}

ExperimentConfig parse_config(std::string_view text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    // nlohmann reports "... at line L, column C: ..."
    throw ConfigError({std::string("JSON syntax error: ") + e.what()});
  }
  Reader r(text);
  ExperimentConfig config;
  if (!root.is_object()) {
    throw ConfigError({"line 1: /: the config must be a JSON object"});
  }
  r.check_keys(root, {}, {"data", "split", "frameworks", "learners", "wear", "raykar", "replications", "master_seed",
                          "output_dir", "parallelism", "variance_reference"});

  bool have_data = false;
  if (const Json* data = Reader::find(root, "data")) {
    const Path dpath{"data"};
    if (r.object(*data, dpath)) {
      r.check_keys(*data, dpath, {"generator", "csv", "overlay"});
      const bool gen = data->contains("generator");
      const bool csv = data->contains("csv");
      if (gen == csv) {
        r.error(dpath, "exactly one of 'generator' or 'csv' is required");
      } else if (gen) {
        if (data->contains("overlay")) r.error(child(dpath, "overlay"), "'overlay' only applies to csv sources");
        if (auto g = read_generator(r, (*data)["generator"], child(dpath, "generator"))) {
          config.data = *g;
          have_data = true;
        }
      } else if (auto c = read_csv(r, *data, dpath)) {
        config.data = *c;
        have_data = true;
      }
    }
  } else {
    r.error({}, "missing required key 'data'");
  }

  if (have_data && config.uses_generator()) {
    config.split = SplitSpec{0.1, 0.05, 0.85, 0};
  } else {
    config.split = SplitSpec{0.7, 0.1, 0.2, 0};
  }
  if (const Json* s = Reader::find(root, "split")) {
    const Path spath{"split"};
    if (r.object(*s, spath)) {
      r.check_keys(*s, spath, {"train", "validation", "test"});
      config.split.train_fraction = r.number(*s, child(spath, "train")).value_or(config.split.train_fraction);
      config.split.validation_fraction = r.number(*s, child(spath, "validation")).value_or(config.split.validation_fraction);
      config.split.test_fraction = r.number(*s, child(spath, "test")).value_or(config.split.test_fraction);
      try {
        config.split.validate();
      } catch (const Error& e) {
        r.error(spath, e.what());
      }
    }
  }

  config.frameworks = kAllFrameworks;
  if (const Json* f = Reader::find(root, "frameworks")) {
    const Path fpath{"frameworks"};
    if (!f->is_array()) {
      r.error(fpath, "expected an array of framework names");
    } else {
      config.frameworks.clear();
      for (const auto& e : *f) {
        try {
          if (!e.is_string()) throw InvalidParameter("");
          const auto fw = framework_from_string(e.get<std::string>());
          if (std::find(config.frameworks.begin(), config.frameworks.end(), fw) != config.frameworks.end()) {
            r.error(fpath, "framework '" + e.get<std::string>() + "' listed twice");
          }
          config.frameworks.push_back(fw);
        } catch (const Error&) {
          r.error(fpath, "unknown framework " + e.dump() + " (wear, raykar, arithmetic_mean, gold_standard)");
        }
      }
    }
  }

  config.learners = default_learners();
  if (const Json* l = Reader::find(root, "learners")) {
    const Path lpath{"learners"};
    if (!l->is_array()) {
      r.error(lpath, "expected an array of learner objects");
    } else {
      config.learners.clear();
      for (Index k = 0; k < l->size(); ++k) {
        if (auto spec = read_learner(r, (*l)[k], child(lpath, "[" + std::to_string(k) + "]"))) {
          config.learners.push_back(*spec);
        }
      }
    }
  }

  if (const Json* w = Reader::find(root, "wear")) {
    const Path wpath{"wear"};
    if (r.object(*w, wpath)) {
      r.check_keys(*w, wpath, {"expert_learner"});
      if (const Json* el = Reader::find(*w, "expert_learner"); el && !el->is_null()) {
        config.wear_expert_learner = read_learner(r, *el, child(wpath, "expert_learner"));
      }
    }
  }

  if (const Json* rk = Reader::find(root, "raykar")) {
    const Path rpath{"raykar"};
    if (r.object(*rk, rpath)) {
      r.check_keys(*rk, rpath, {"max_iters", "tol"});
      config.raykar.max_iters = r.count(*rk, child(rpath, "max_iters")).value_or(config.raykar.max_iters);
      config.raykar.tol = r.number(*rk, child(rpath, "tol")).value_or(config.raykar.tol);
      if (config.raykar.max_iters < 1) r.error(child(rpath, "max_iters"), "must be at least 1");
      if (!(config.raykar.tol > 0.0)) r.error(child(rpath, "tol"), "must be positive");
    }
  }

  config.replications = r.count(root, {"replications"}).value_or(config.replications);
  if (config.replications < 1) r.error({"replications"}, "must be at least 1");
  config.master_seed = r.count(root, {"master_seed"}).value_or(config.master_seed);
  config.output_dir = r.string(root, {"output_dir"}).value_or(config.output_dir);
  config.parallelism = r.count(root, {"parallelism"}).value_or(config.parallelism);
  if (config.parallelism < 1) r.error({"parallelism"}, "must be at least 1");
  if (auto vr = r.string(root, {"variance_reference"})) {
    if (*vr == "conditional") config.variance_reference = VarianceReference::conditional;
    else if (*vr == "nominal") config.variance_reference = VarianceReference::nominal;
    else r.error({"variance_reference"}, "expected \"conditional\" or \"nominal\"");
  }

  if (r.diagnostics().empty()) {
    for (const auto& d : check_config(config)) r.diagnostics().push_back("line 1: /: " + d);
  }
  if (!r.diagnostics().empty()) throw ConfigError(std::move(r.diagnostics()));
  return config;
}

std::string echo_config(const ExperimentConfig& c) {
  Json root;
  std::optional<Index> dimension;
  Json data;
  if (const auto* g = std::get_if<GeneratorSpec>(&c.data)) {
    dimension = g->dimension;
    Json gen;
    gen["kind"] = std::string(to_string(g->kind));
    gen["n"] = g->n;
    gen["dimension"] = g->dimension;
    Json cov;
    if (g->covariates.kind == CovariateDistribution::Kind::normal) {
      cov["distribution"] = "normal";
      cov["mean"] = g->covariates.a;
      cov["sd"] = g->covariates.b;
    } else {
      cov["distribution"] = "uniform";
      cov["low"] = g->covariates.a;
      cov["high"] = g->covariates.b;
    }
    gen["covariates"] = cov;
    gen["mean_function"] = std::string(to_string(g->mean_function));
    gen["noise_sd"] = g->noise_sd;
    gen["expert_variances"] = g->expert_variances;
    data["generator"] = gen;
  } else {
    const auto& s = std::get<CsvSource>(c.data);
    Json csv;
    csv["path"] = s.schema.path;
    csv["has_header"] = s.schema.has_header;
    auto column = [](const ColumnRef& ref) -> Json {
      if (const auto* name = std::get_if<std::string>(&ref)) return *name;
      return std::get<Index>(ref);
    };
    csv["target_column"] = column(s.schema.target_column);
    if (s.schema.feature_columns) {
      Json cols = Json::array();
      for (const auto& ref : *s.schema.feature_columns) cols.push_back(column(ref));
      csv["feature_columns"] = cols;
    } else {
      csv["feature_columns"] = "all";
    }
    csv["delimiter"] = std::string(1, s.schema.delimiter);
    data["csv"] = csv;
    data["overlay"] = Json{{"expert_variances", s.overlay_variances}};
  }
  root["data"] = data;
  root["split"] = Json{{"train", c.split.train_fraction},
                       {"validation", c.split.validation_fraction},
                       {"test", c.split.test_fraction}};
  Json frameworks = Json::array();
  for (auto f : c.frameworks) frameworks.push_back(std::string(to_string(f)));
  root["frameworks"] = frameworks;
  Json learners = Json::array();
  for (const auto& l : c.learners) learners.push_back(learner_to_json(l, dimension));
  root["learners"] = learners;
  root["wear"] = Json{{"expert_learner", c.wear_expert_learner ? learner_to_json(*c.wear_expert_learner, dimension)
                                                               : Json(nullptr)}};
  root["raykar"] = Json{{"max_iters", c.raykar.max_iters}, {"tol", c.raykar.tol}};
  root["replications"] = c.replications;
  root["master_seed"] = c.master_seed;
  root["output_dir"] = c.output_dir;
  root["parallelism"] = c.parallelism;
  root["variance_reference"] = c.variance_reference == VarianceReference::conditional ? "conditional" : "nominal";
  return root.dump(2) + "\n";
}

std::vector<NamedConfig> preset(std::string_view name) {
  const auto experiment_config = [](int k, Index n, SplitSpec split, Index replications) {
    ExperimentConfig c;
    c.data = GeneratorSpec::experiment(k, n, 0);
    c.split = split;
    c.frameworks = kAllFrameworks;
    c.learners = default_learners();
    c.replications = replications;
    return c;
  };
  for (int k = 1; k <= 4; ++k) {
    if (name == "experiment" + std::to_string(k)) {
      auto c = experiment_config(k, 100000, SplitSpec{0.1, 0.05, 0.85, 0}, 100);
      c.output_dir = "wear-output/experiment" + std::to_string(k);
      return {NamedConfig{std::string(name), std::move(c)}};
    }
  }
  if (name == "table1-desk") {
    std::vector<NamedConfig> out;
    for (int k = 1; k <= 4; ++k) {
      // 2000 train / 1000 validation / 5000 test.
      auto c = experiment_config(k, 8000, SplitSpec{0.25, 0.125, 0.625, 0}, 20);
      c.output_dir = "wear-output/table1-desk/experiment" + std::to_string(k);
      out.push_back(NamedConfig{"experiment" + std::to_string(k), std::move(c)});
    }
    return out;
  }
  throw ConfigError({"unknown preset '" + std::string(name) + "' (experiment1..experiment4, table1-desk)"});
}

}  // namespace wear
