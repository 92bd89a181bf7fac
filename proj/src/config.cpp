#include "liftseg/config.hpp"

#include "liftseg/errors.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace liftseg {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& why) {
  throw ConfigError("config field '" + field + "': " + why);
}

const json& require(const json& obj, const std::string& field,
                    const std::string& where) {
  auto it = obj.find(field);
  if (it == obj.end()) fail(where.empty() ? field : where + "." + field, "missing");
  return *it;
}

double as_number(const json& v, const std::string& field) {
  if (!v.is_number()) fail(field, "expected a number");
  return v.get<double>();
}

int as_int(const json& v, const std::string& field) {
  if (!v.is_number_integer()) fail(field, "expected an integer");
  return v.get<int>();
}

bool as_bool(const json& v, const std::string& field) {
  if (!v.is_boolean()) fail(field, "expected a boolean");
  return v.get<bool>();
}

std::string as_string(const json& v, const std::string& field) {
  if (!v.is_string()) fail(field, "expected a string");
  return v.get<std::string>();
}

/// numbers pass through; strings accept multiples of pi: "pi", "pi/4",
/// "2pi/3", "0.75pi"
double parse_angle(const json& v, const std::string& field) {
  if (v.is_number()) return v.get<double>();
  if (!v.is_string()) fail(field, "expected a number or a pi expression string");
  const std::string s = v.get<std::string>();
  const std::size_t pos = s.find("pi");
  if (pos == std::string::npos)
    fail(field, "string angles must contain 'pi' (e.g. \"pi/4\", \"2pi/3\")");
  double coef = 1.0;
  if (pos > 0) {
    try {
      std::size_t used = 0;
      coef = std::stod(s.substr(0, pos), &used);
      if (used != pos) throw std::invalid_argument(s);
    } catch (const std::exception&) {
      fail(field, "cannot parse the coefficient in '" + s + "'");
    }
  }
  double denom = 1.0;
  const std::string rest = s.substr(pos + 2);
  if (!rest.empty()) {
    if (rest[0] != '/') fail(field, "expected '/denominator' after pi");
    try {
      std::size_t used = 0;
      denom = std::stod(rest.substr(1), &used);
      if (used != rest.size() - 1 || denom == 0.0) throw std::invalid_argument(s);
    } catch (const std::exception&) {
      fail(field, "cannot parse the denominator in '" + s + "'");
    }
  }
  return coef * std::numbers::pi / denom;
}

GaborSpec parse_gabor_filter(const json& f, const std::string& where) {
  if (!f.is_object()) fail(where, "expected a filter object");
  GaborSpec spec;
  spec.orientation = parse_angle(require(f, "orientation", where), where + ".orientation");
  const bool has_freq = f.contains("frequency");
  const bool has_oct = f.contains("octave");
  if (has_freq == has_oct)
    fail(where, "give exactly one of 'frequency' or 'octave'");
  if (has_freq) {
    spec.frequency = as_number(f["frequency"], where + ".frequency");
  } else {
    // dyadic scale used by the filter-bank tables: 2^(n + 1/2) / 256
    const int n = as_int(f["octave"], where + ".octave");
    spec.frequency = std::pow(2.0, n + 0.5) / 256.0;
  }
  if (f.contains("bandwidth"))
    spec.bandwidth = as_number(f["bandwidth"], where + ".bandwidth");
  return spec;
}

int parse_input_ref(const json& v, const std::string& field) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "gray" || s == "grey") return kGrayInput;
    fail(field, "expected a channel index or \"gray\"");
  }
  return as_int(v, field);
}

ChannelDef parse_channel(const json& entry, int index) {
  const std::string where = "recipe[" + std::to_string(index) + "]";
  if (!entry.is_object()) fail(where, "expected an object");
  const std::string type = as_string(require(entry, "type", where), where + ".type");
  if (type == "gabor_sum") {
    GaborSumChannel c;
    if (entry.contains("input"))
      c.input = parse_input_ref(entry["input"], where + ".input");
    const json& filters = require(entry, "filters", where);
    if (!filters.is_array() || filters.empty())
      fail(where + ".filters", "expected a non-empty array");
    for (std::size_t i = 0; i < filters.size(); ++i)
      c.filters.push_back(parse_gabor_filter(
          filters[i], where + ".filters[" + std::to_string(i) + "]"));
    return c;
  }
  if (type == "color_threshold") {
    ColorThresholdChannel c;
    c.channel = parse_input_ref(require(entry, "channel", where), where + ".channel");
    c.threshold = as_number(require(entry, "threshold", where), where + ".threshold");
    return c;
  }
  if (type == "window") {
    WindowChannel c;
    c.channel = parse_input_ref(require(entry, "channel", where), where + ".channel");
    c.lo = as_number(require(entry, "lo", where), where + ".lo");
    c.hi = as_number(require(entry, "hi", where), where + ".hi");
    return c;
  }
  if (type == "passthrough") {
    PassthroughChannel c;
    c.channel = parse_input_ref(require(entry, "channel", where), where + ".channel");
    return c;
  }
  if (type == "combination") {
    CombinationChannel c;
    if (entry.contains("bias")) c.bias = as_number(entry["bias"], where + ".bias");
    const json& terms = require(entry, "terms", where);
    if (!terms.is_array()) fail(where + ".terms", "expected an array");
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const json& t = terms[i];
      const std::string tw = where + ".terms[" + std::to_string(i) + "]";
      if (!t.is_array() || t.size() != 2)
        fail(tw, "expected [coefficient, channel] pairs");
      const double coef = as_number(t[0], tw + "[0]");
      const int ref = as_int(t[1], tw + "[1]");  // 1-based recipe channel
      if (ref < 1 || ref > index)
        fail(tw, "must reference an earlier recipe channel (1-based)");
      c.terms.emplace_back(coef, ref - 1);
    }
    return c;
  }
  fail(where + ".type", "unknown channel type '" + type + "'");
}

SolverConfig parse_solver(const json& s, int* num_classes) {
  if (!s.is_object()) fail("solver", "expected an object");
  SolverConfig cfg;
  if (s.contains("classes")) *num_classes = as_int(s["classes"], "solver.classes");
  if (s.contains("lambda")) cfg.lambda = as_number(s["lambda"], "solver.lambda");
  if (s.contains("sigma")) cfg.sigma = as_number(s["sigma"], "solver.sigma");
  if (s.contains("tau")) cfg.tau = as_number(s["tau"], "solver.tau");
  if (s.contains("theta")) cfg.theta = as_number(s["theta"], "solver.theta");
  if (s.contains("eps")) {
    const double e = as_number(s["eps"], "solver.eps");
    if (!(e > 0.0)) fail("solver.eps", "must be positive");
    cfg.eps = SmoothingEps(e);
  }
  if (s.contains("iterations"))
    cfg.max_iters = as_int(s["iterations"], "solver.iterations");
  if (s.contains("log_every"))
    cfg.log_every = as_int(s["log_every"], "solver.log_every");
  if (s.contains("mode")) {
    const std::string m = as_string(s["mode"], "solver.mode");
    if (m == "equality")
      cfg.mode = SimplexMode::Equality;
    else if (m == "inequality")
      cfg.mode = SimplexMode::Inequality;
    else
      fail("solver.mode", "expected \"equality\" or \"inequality\"");
  }
  if (s.contains("mean_gradient")) {
    const std::string m = as_string(s["mean_gradient"], "solver.mean_gradient");
    if (m == "componentwise")
      cfg.mean_gradient = MeanGradient::Componentwise;
    else if (m == "normalized")
      cfg.mean_gradient = MeanGradient::Normalized;
    else
      fail("solver.mean_gradient", "expected \"componentwise\" or \"normalized\"");
  }
  if (s.contains("use_jacobian_adjoint"))
    cfg.use_jacobian_adjoint =
        as_bool(s["use_jacobian_adjoint"], "solver.use_jacobian_adjoint");
  return cfg;
}

}  // namespace

RunConfig parse_run_config(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("config root must be a JSON object");
  RunConfig cfg;
  cfg.version = as_int(require(doc, "version", ""), "version");
  if (cfg.version != 1)
    fail("version", "unsupported version " + std::to_string(cfg.version));

  const json& input = require(doc, "input", "");
  if (input.is_string()) {
    cfg.inputs.emplace_back(input.get<std::string>());
  } else if (input.is_array() && !input.empty()) {
    for (std::size_t i = 0; i < input.size(); ++i)
      cfg.inputs.emplace_back(
          as_string(input[i], "input[" + std::to_string(i) + "]"));
  } else {
    fail("input", "expected a path or a non-empty array of paths");
  }

  const json& recipe = require(doc, "recipe", "");
  if (!recipe.is_array() || recipe.empty())
    fail("recipe", "expected a non-empty array");
  for (std::size_t i = 0; i < recipe.size(); ++i)
    cfg.recipe.channels.push_back(parse_channel(recipe[i], static_cast<int>(i)));
  cfg.num_classes = static_cast<int>(recipe.size());

  if (doc.contains("solver")) cfg.solver = parse_solver(doc["solver"], &cfg.num_classes);

  if (doc.contains("ground_truth"))
    cfg.ground_truth = as_string(doc["ground_truth"], "ground_truth");

  if (doc.contains("output")) {
    const json& out = doc["output"];
    if (!out.is_object()) fail("output", "expected an object");
    if (out.contains("dir")) cfg.output_dir = as_string(out["dir"], "output.dir");
    if (out.contains("masks")) cfg.outputs.masks = as_bool(out["masks"], "output.masks");
    if (out.contains("labels"))
      cfg.outputs.labels = as_bool(out["labels"], "output.labels");
    if (out.contains("curves"))
      cfg.outputs.curves = as_bool(out["curves"], "output.curves");
    if (out.contains("metrics"))
      cfg.outputs.metrics = as_bool(out["metrics"], "output.metrics");
    if (out.contains("include_background_in_mean"))
      cfg.include_background_in_mean = as_bool(out["include_background_in_mean"],
                                               "output.include_background_in_mean");
  }
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("invalid JSON in " + path.string() + ": " + e.what());
  }
  return parse_run_config(doc);
}

std::vector<std::string> validate_config(const RunConfig& cfg) {
  std::vector<std::string> out;
  if (cfg.num_classes != static_cast<int>(cfg.recipe.channels.size())) {
    std::ostringstream os;
    os << "solver.classes is " << cfg.num_classes << " but the recipe defines "
       << cfg.recipe.channels.size() << " channels";
    out.push_back(os.str());
  }
  for (const std::string& d : validate(cfg.solver)) out.push_back("solver: " + d);
  for (const std::filesystem::path& p : cfg.inputs)
    if (!std::filesystem::exists(p))
      out.push_back("input file does not exist: " + p.string());
  if (cfg.ground_truth && !std::filesystem::exists(*cfg.ground_truth))
    out.push_back("ground-truth file does not exist: " + cfg.ground_truth->string());
  if (cfg.output_dir.empty()) out.push_back("output.dir must not be empty");

  for (std::size_t i = 0; i < cfg.recipe.channels.size(); ++i) {
    const std::string where = "recipe[" + std::to_string(i) + "]";
    const ChannelDef& def = cfg.recipe.channels[i];
    if (const auto* g = std::get_if<GaborSumChannel>(&def)) {
      for (std::size_t j = 0; j < g->filters.size(); ++j) {
        const GaborSpec& f = g->filters[j];
        if (!(f.frequency > 0.0) || f.frequency > 0.5)
          out.push_back(where + ".filters[" + std::to_string(j) +
                        "]: frequency must lie in (0, 0.5]");
        if (!(f.bandwidth > 0.0))
          out.push_back(where + ".filters[" + std::to_string(j) +
                        "]: bandwidth must be positive");
      }
    } else if (const auto* wdef = std::get_if<WindowChannel>(&def)) {
      if (!(wdef->hi > wdef->lo)) out.push_back(where + ": window needs hi > lo");
    } else if (const auto* t = std::get_if<ColorThresholdChannel>(&def)) {
      if (t->threshold < 0.0) out.push_back(where + ": threshold must be nonnegative");
    }
  }
  return out;
}

}  // namespace liftseg
