#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hsm/bounds.hpp"
#include "hsm/checks.hpp"
#include "hsm/partition.hpp"
#include "hsm/sampler.hpp"
#include "hsm/uncovered.hpp"

namespace hsm::cli {
namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::uint64_t seed = 1;
  std::string out;
  std::string format;
  std::size_t threads = 1;
};

void add_common(CLI::App* sub, Common& c, const std::string& default_format) {
  c.format = default_format;
  sub->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  sub->add_option("--out", c.out, "Output file (default: standard output)");
  sub->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_option("--threads", c.threads, "Worker threads for chains")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--config", "key=value file; command-line flags win");
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Reads key=value lines into --key=value arguments.
std::vector<std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  std::vector<std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || key == "config") {
      throw UsageError(path + ":" + std::to_string(lineno) + ": bad key");
    }
    out.push_back("--" + key + "=" + value);
  }
  return out;
}

// Splices config-file entries in front of the command-line flags so that
// explicit flags take precedence.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> rest;
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config needs a file");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (!path || rest.empty()) return rest;
  std::vector<std::string> out{rest.front()};
  const std::vector<std::string> extra = read_config(*path);
  out.insert(out.end(), extra.begin(), extra.end());
  out.insert(out.end(), rest.begin() + 1, rest.end());
  return out;
}

int parse_int(const std::string& s) {
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(s, &pos);
  } catch (const std::exception&) {
    throw UsageError("not an integer: '" + s + "'");
  }
  if (pos != s.size()) throw UsageError("not an integer: '" + s + "'");
  return v;
}

double parse_double(const std::string& s) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + s + "'");
  }
  if (pos != s.size()) throw UsageError("not a number: '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

// "a:b" (inclusive), "a", or "a,b,c".
std::vector<int> parse_dims(const std::string& text) {
  std::vector<int> dims;
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 2) throw UsageError("dimension range must be a:b");
    const int lo = parse_int(parts[0]);
    const int hi = parse_int(parts[1]);
    for (int d = lo; d <= hi; ++d) dims.push_back(d);
  } else {
    for (const std::string& p : split(text, ',')) dims.push_back(parse_int(p));
  }
  if (dims.empty()) throw UsageError("empty dimension range '" + text + "'");
  for (int d : dims) {
    if (d < 1 || d > 1000) throw UsageError("dimensions must lie in [1, 1000]");
  }
  return dims;
}

// "lo:hi:count", inclusive of both ends, or a single value.
std::vector<double> parse_linspace(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() == 1) return {parse_double(parts[0])};
  if (parts.size() != 3) throw UsageError("range must be lo:hi:count");
  const double lo = parse_double(parts[0]);
  const double hi = parse_double(parts[1]);
  const int count = parse_int(parts[2]);
  if (count < 1 || hi < lo) throw UsageError("empty range '" + text + "'");
  std::vector<double> v;
  for (int i = 0; i < count; ++i) {
    v.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
  }
  return v;
}

// Output target: the --out file when given, otherwise `fallback`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot write " + path);
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

void write_json(std::ostream& os, const json& j) { os << j.dump(2) << '\n'; }

json estimate_json(const Estimate& e) {
  return {{"mean", e.mean}, {"stderr", e.std_error}};
}

// Flat CSV view of a JSON object: one row per numeric or string leaf.
void write_flat_csv(std::ostream& os, const json& j) {
  os << "key,value\n";
  std::function<void(const json&, const std::string&)> walk =
      [&](const json& node, const std::string& prefix) {
        if (node.is_object()) {
          for (auto it = node.begin(); it != node.end(); ++it) {
            walk(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key());
          }
        } else if (node.is_array()) {
          for (std::size_t i = 0; i < node.size(); ++i) {
            walk(node[i], prefix + "." + std::to_string(i));
          }
        } else {
          os << prefix << ',' << (node.is_string() ? node.get<std::string>()
                                                   : node.dump())
             << '\n';
        }
      };
  walk(j, "");
}

void emit(const Common& c, std::ostream& out, const json& j) {
  Sink sink(c.out, out);
  if (c.format == "csv") {
    write_flat_csv(sink.get(), j);
  } else {
    write_json(sink.get(), j);
  }
}

// ------------------------------------------------------------------ bounds

struct BoundsArgs {
  Common common;
  std::string kind;
  std::string d;
  std::string lambda_rule = "proof";
  std::optional<double> lambda;
  std::string c = "0.5493:0.6931:50";
  bool main_term = false;
  double c1 = 1.0;
  double c2 = 1.0;
};

json curve_json(const BoundCurve& curve) {
  json pts = json::array();
  for (const CurvePoint& p : curve.points) {
    pts.push_back({{"d", p.d}, {"parameter", p.parameter}, {"value", p.value}});
  }
  return {{"kind", to_string(curve.kind)},
          {"main_term_only", curve.main_term_only},
          {"points", pts}};
}

// Typed constants such as 0.5493 for log(3)/2 are snapped onto the range.
double snap_c(double c) {
  const double lo = 0.5 * std::log(3.0);
  if (c < lo && c > lo - 1e-4) return lo;
  return c;
}

int cmd_bounds(const BoundsArgs& a, std::ostream& out) {
  const std::vector<int> dims = parse_dims(a.d);
  BoundCurve curve;
  if (a.kind == "alpha") {
    curve.kind = CurveKind::kAlphaLower;
    if (a.lambda && !(*a.lambda > 0.0)) throw UsageError("--lambda must be positive");
    for (int d : dims) {
      double ll = 0.0;
      if (a.lambda) {
        ll = std::log(*a.lambda);
      } else if (a.lambda_rule == "proof") {
        ll = proof_log_lambda(d);
      } else {
        ll = theorem1_argmax_log_lambda(d);
      }
      curve.points.push_back({d, ll, std::exp(theorem1_log_bound(d, ll))});
    }
  } else if (a.kind == "pressure") {
    curve.kind = CurveKind::kPressureLower;
    curve.main_term_only = a.main_term;
    const std::vector<double> cs = parse_linspace(a.c);
    for (int d : dims) {
      for (double raw : cs) {
        const double c = snap_c(raw);
        if (!(c >= 0.5 * std::log(3.0) && c < std::log(2.0))) {
          throw UsageError("c must lie in [log3/2, log2)");
        }
        const PressureBound p = pressure_bound(d, c);
        curve.points.push_back({d, c, a.main_term ? p.main_term : p.finite});
      }
    }
  } else if (a.kind == "entropy") {
    curve.kind = CurveKind::kEntropyLower;
    curve.main_term_only = true;
    for (int d : dims) {
      const EntropyBound e = entropy_bound(d);
      curve.points.push_back({d, e.alpha, e.value});
    }
  } else if (a.kind == "cell") {
    curve.kind = CurveKind::kCellModel;
    curve.main_term_only = true;
    for (int d : dims) {
      const double eps = a.c2 / d;
      if (!(eps > 0.0 && eps < 1.0)) throw UsageError("c2 / d must lie in (0, 1)");
      curve.points.push_back({d, eps, cell_model_bound(d, a.c1, a.c2, eps).value});
    }
  } else {
    curve.kind = CurveKind::kAsymptoticAlpha;
    curve.main_term_only = true;
    for (int d : dims) {
      const double v = asymptotic_alpha(d);
      curve.points.push_back({d, std::ldexp(v, d), v});
    }
  }

  {
    Sink sink(a.common.out, out);
    if (a.common.format == "json") {
      write_json(sink.get(), curve_json(curve));
    } else {
      write_curve_csv(sink.get(), {curve});
    }
  }
  if (!a.common.out.empty()) {
    std::filesystem::path dat(a.common.out);
    dat.replace_extension(".dat");
    std::ofstream gp(dat);
    if (!gp) throw UsageError("cannot write " + dat.string());
    write_curve_gnuplot(gp, curve);
  }
  return kExitOk;
}

// ---------------------------------------------------------------- regions

struct RegionArgs {
  int d = 1;
  std::string region;  // ball | interval; empty picks interval in d = 1
  double n = 30.0;
  double length = 10.0;
};

void add_region_options(CLI::App* sub, RegionArgs& r) {
  sub->add_option("--d", r.d, "Dimension")->check(CLI::Range(1, 64))->capture_default_str();
  sub->add_option("--region", r.region, "Region shape (default: interval in d=1, else ball)")
      ->check(CLI::IsMember({"ball", "interval"}));
  sub->add_option("--n", r.n, "Volume of the ball region")->capture_default_str();
  sub->add_option("--L", r.length, "Length of the interval [0, L]")->capture_default_str();
}

Region make_region(const RegionArgs& r, std::string& label) {
  label = r.region.empty() ? (r.d == 1 ? "interval" : "ball") : r.region;
  if (label == "interval") {
    if (r.d != 1) throw UsageError("interval regions need --d 1");
    if (!(r.length > 0.0)) throw UsageError("--L must be positive");
    return Region::interval(r.length);
  }
  if (!(r.n > 0.0)) throw UsageError("--n must be positive");
  return Region::ball_volume(r.n, r.d);
}

struct ScheduleArgs {
  std::optional<std::size_t> burn_in;
  std::optional<std::size_t> samples;
  std::optional<std::size_t> thinning;
};

void add_schedule_options(CLI::App* sub, ScheduleArgs& s) {
  sub->add_option("--burn-in", s.burn_in, "Burn-in steps (default 1e5 * max(1, vol))");
  sub->add_option("--samples", s.samples, "Retained samples");
  sub->add_option("--thinning", s.thinning, "Steps between samples (default ceil(10 vol))");
}

Schedule make_schedule(const ScheduleArgs& s, double volume) {
  Schedule out = Schedule::defaults(volume);
  if (s.burn_in) out.burn_in = *s.burn_in;
  if (s.samples) out.n_samples = *s.samples;
  if (s.thinning) out.thinning = std::max<std::size_t>(1, *s.thinning);
  if (out.n_samples == 0) throw UsageError("--samples must be positive");
  return out;
}

json schedule_json(const Schedule& s) {
  return {{"burn_in", s.burn_in}, {"samples", s.n_samples}, {"thinning", s.thinning}};
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  Common common;
  RegionArgs region;
  ScheduleArgs schedule;
  double lambda = 1.0;
  std::size_t chains = 1;
  std::size_t probes = 64;
  double move_radius = 0.0;
  std::string dump_config;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  std::string label;
  const Region region = make_region(a.region, label);
  const double volume = region.volume();
  const Schedule schedule = make_schedule(a.schedule, volume);
  if (!(a.lambda > 0.0)) throw UsageError("--lambda must be positive");
  RunOptions run;
  run.seed = a.common.seed;
  run.chains = a.chains;
  run.threads = a.common.threads;
  run.probes_per_sample = a.probes;
  run.translate_radius = a.move_radius;
  const ChainObservables obs =
      run_observables(region, FugacityParams{a.lambda, a.region.d}, schedule, run);

  const Estimate lfv = scaled(obs.free_volume, a.lambda);
  const double se = combined_stderr(obs.alpha, lfv);
  const double gap = std::abs(obs.alpha.mean - lfv.mean);
  json j = {{"command", "simulate"},
            {"d", a.region.d},
            {"region", label},
            {"volume", volume},
            {"lambda", a.lambda},
            {"seed", a.common.seed},
            {"chains", std::max<std::size_t>(1, a.chains)},
            {"schedule", schedule_json(schedule)},
            {"alpha", estimate_json(obs.alpha)},
            {"free_volume", estimate_json(obs.free_volume)},
            {"lambda_free_volume", estimate_json(lfv)},
            {"free_volume_gap_sigmas", se > 0.0 ? gap / se : 0.0},
            {"count_mean", estimate_json(obs.count_mean)},
            {"count_variance", estimate_json(obs.count_variance)},
            {"acceptance",
             {{"insert", estimate_json(obs.accept_insert)},
              {"delete", estimate_json(obs.accept_delete)},
              {"translate", estimate_json(obs.accept_translate)}}},
            {"count_histogram", obs.count_histogram}};
  if (a.probes == 0) j["free_volume"] = nullptr;
  emit(a.common, out, j);

  if (!a.dump_config.empty()) {
    Configuration config(a.region.d, region.bounding_ball());
    for (const Point& p : obs.final_centers) config.add(p);
    std::ofstream f(a.dump_config);
    if (!f) throw UsageError("cannot write " + a.dump_config);
    write_config_csv(f, config);
  }
  return kExitOk;
}

// ------------------------------------------------------------------ verify

struct VerifyArgs {
  Common common;
  std::string which;
  RegionArgs region;
  ScheduleArgs schedule;
  std::optional<double> lambda;
  std::size_t reps = 1000;
  int k_max = 8;
  std::size_t per_k_samples = 4096;
  std::size_t v_per_sample = 16;
  std::size_t outer = 2000;
  std::size_t inner = 500;
  std::size_t sets = 10;
  std::size_t tonks_samples = 100000;
  double sigmas = 3.0;
  std::size_t cases = 20;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  CounterRng rng(a.common.seed, 0);
  CheckReport report;
  json params = json::object();
  if (a.which == "identity31" || a.which == "inequality32") {
    std::string label;
    const Region region = make_region(a.region, label);
    const double lambda = a.lambda.value_or(0.2);
    if (!(lambda > 0.0)) throw UsageError("--lambda must be positive");
    Schedule schedule = make_schedule(a.schedule, region.volume());
    params = {{"d", a.region.d}, {"region", label}, {"volume", region.volume()},
              {"lambda", lambda}};
    if (a.which == "identity31") {
      if (!a.schedule.samples) schedule.n_samples = a.reps;
      IdentityOptions opt;
      opt.reps = a.reps;
      opt.k_max = a.k_max;
      opt.per_k_samples = a.per_k_samples;
      report = verify_identity_31(region, FugacityParams{lambda, a.region.d},
                                  schedule, opt, rng);
      params["reps"] = a.reps;
    } else {
      report = verify_inequality_32(region, FugacityParams{lambda, a.region.d},
                                    schedule, a.v_per_sample, rng);
    }
    params["schedule"] = schedule_json(schedule);
  } else if (a.which == "geometric") {
    GeometricOptions opt;
    opt.outer_samples = a.outer;
    opt.inner_samples = a.inner;
    opt.random_sets = a.sets;
    report = check_geometric_lemma(a.region.d, opt, rng);
    params = {{"d", a.region.d}, {"outer", a.outer}, {"inner", a.inner}};
  } else if (a.which == "tonks") {
    TonksCheckOptions opt;
    opt.samples = a.tonks_samples;
    opt.sigmas = a.sigmas;
    report = verify_tonks(opt, rng);
  } else if (a.which == "stationarity") {
    StationarityOptions opt;
    opt.length = a.region.length;
    opt.lambda = a.lambda.value_or(1.0);
    if (!(opt.lambda > 0.0)) throw UsageError("--lambda must be positive");
    if (a.schedule.burn_in) opt.schedule.burn_in = *a.schedule.burn_in;
    if (a.schedule.samples) opt.schedule.n_samples = *a.schedule.samples;
    if (a.schedule.thinning) opt.schedule.thinning = *a.schedule.thinning;
    opt.threads = a.common.threads;
    report = verify_stationarity(opt, a.common.seed);
    params = {{"L", opt.length}, {"lambda", opt.lambda},
              {"schedule", schedule_json(opt.schedule)}};
  } else {
    LogZOptions opt;
    opt.cases = a.cases;
    report = verify_log_z(opt, rng);
  }

  json j = report.to_json();
  j["seed"] = a.common.seed;
  j["parameters"] = params;
  emit(a.common, out, j);
  return report.passed() ? kExitOk : kExitFail;
}

// ----------------------------------------------------------------- entropy

struct EntropyArgs {
  Common common;
  int d = 1;
  double n = 20.0;
  std::optional<double> alpha;
  std::optional<int> k;
  std::size_t samples = 100000;
  double c1 = 1.0;
  double c2 = 1.0;
};

int cmd_entropy(const EntropyArgs& a, std::ostream& out) {
  if (!a.alpha && !a.k) throw UsageError("one of --alpha or --k is required");
  CounterRng rng(a.common.seed, 0);
  const EntropyEstimate e =
      a.k ? entropy_density_for_count(a.n, *a.k, a.d, a.samples, rng)
          : entropy_density_estimate(a.n, *a.alpha, a.d, a.samples, rng);
  const EntropyBound eb = entropy_bound(a.d);
  json cell = nullptr;
  const double eps = a.c2 / a.d;
  if (eps > 0.0 && eps < 1.0) {
    const CellModelBound cb = cell_model_bound(a.d, a.c1, a.c2, eps);
    cell = {{"eps", eps},
            {"value", cb.value},
            {"density", cb.density},
            {"main_term_only", true}};
  }
  const json j = {
      {"command", "entropy"},
      {"d", a.d},
      {"n", a.n},
      {"k", e.k},
      {"alpha", e.alpha},
      {"value", e.value},
      {"stderr", e.std_error},
      {"method", to_string(e.method)},
      {"bound_only", e.bound_only},
      {"samples", e.method == PartitionMethod::kExact1d ? 0 : a.samples},
      {"seed", a.common.seed},
      {"reference",
       {{"entropy_lower",
         {{"alpha", eb.alpha}, {"value", eb.value}, {"main_term_only", true}}},
        {"cell_model", cell}}}};
  emit(a.common, out, j);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out,
        std::ostream& err) {
  std::vector<std::string> args;
  try {
    args = expand_config(raw_args);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  CLI::App app{"Hard-sphere packing bounds and grand-canonical Monte Carlo", "hsm"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  BoundsArgs bounds;
  auto* b = app.add_subcommand(
      "bounds",
      "Closed-form bound curves.\n"
      "CSV columns: d,parameter,value,kind,main_term_only. parameter is\n"
      "log(lambda) for alpha, c for pressure, the density for entropy, eps for\n"
      "cell, and 2^d * value for asymptotic. With --out a gnuplot .dat file is\n"
      "written next to the CSV.");
  add_common(b, bounds.common, "csv");
  b->add_option("--kind", bounds.kind, "Curve kind")
      ->required()
      ->check(CLI::IsMember({"alpha", "pressure", "entropy", "cell", "asymptotic"}));
  b->add_option("--d", bounds.d, "Dimensions: a:b, a, or a,b,c")->required();
  b->add_option("--lambda-rule", bounds.lambda_rule,
                "alpha: proof (3^{-d/2}/d) or argmax")
      ->check(CLI::IsMember({"proof", "argmax"}))
      ->capture_default_str();
  b->add_option("--lambda", bounds.lambda, "alpha: fixed fugacity");
  b->add_option("--c", bounds.c, "pressure: lo:hi:count")->capture_default_str();
  b->add_flag("--main-term", bounds.main_term, "pressure: emit the main term only");
  b->add_option("--c1", bounds.c1, "cell: density constant")->capture_default_str();
  b->add_option("--c2", bounds.c2, "cell: eps = c2 / d")->capture_default_str();

  SimulateArgs sim;
  auto* s = app.add_subcommand(
      "simulate",
      "Grand-canonical Monte Carlo run.\n"
      "Reports alpha, free volume, lambda * free volume, count mean and\n"
      "variance, and acceptance rates, each as {mean, stderr}. CSV columns:\n"
      "key,value.");
  add_common(s, sim.common, "json");
  add_region_options(s, sim.region);
  add_schedule_options(s, sim.schedule);
  s->add_option("--lambda", sim.lambda, "Fugacity")->capture_default_str();
  s->add_option("--chains", sim.chains, "Independent chains")->capture_default_str();
  s->add_option("--probes", sim.probes, "Free-volume probes per sample")
      ->capture_default_str();
  s->add_option("--move-radius", sim.move_radius,
                "Translate displacement radius (0: 2 r_d)")
      ->capture_default_str();
  s->add_option("--dump-config", sim.dump_config,
                "Write the final configuration of chain 0 as CSV");

  VerifyArgs ver;
  auto* v = app.add_subcommand(
      "verify",
      "Run a numerical check and emit a JSON report.\n"
      "Exit code 0 on pass, 1 on fail or inconclusive, 2 on usage error.");
  add_common(v, ver.common, "json");
  v->add_option("check", ver.which, "Check to run")
      ->required()
      ->check(CLI::IsMember(
          {"identity31", "inequality32", "geometric", "tonks", "stationarity", "logZ"}));
  add_region_options(v, ver.region);
  add_schedule_options(v, ver.schedule);
  v->add_option("--lambda", ver.lambda, "Fugacity (identity31, inequality32: 0.2; stationarity: 1)");
  v->add_option("--reps", ver.reps, "identity31: T-draws")->capture_default_str();
  v->add_option("--k-max", ver.k_max, "identity31: series order")->capture_default_str();
  v->add_option("--per-k-samples", ver.per_k_samples, "identity31: draws per term")
      ->capture_default_str();
  v->add_option("--v-per-sample", ver.v_per_sample, "inequality32: probes per sample")
      ->capture_default_str();
  v->add_option("--outer", ver.outer, "geometric: outer draws")->capture_default_str();
  v->add_option("--inner", ver.inner, "geometric: inner draws")->capture_default_str();
  v->add_option("--sets", ver.sets, "geometric: random test sets")->capture_default_str();
  v->add_option("--tonks-samples", ver.tonks_samples, "tonks: draws per cell")
      ->capture_default_str();
  v->add_option("--sigmas", ver.sigmas, "tonks: tolerance in standard errors")
      ->capture_default_str();
  v->add_option("--cases", ver.cases, "logZ: random cases")->capture_default_str();

  EntropyArgs ent;
  auto* e = app.add_subcommand(
      "entropy",
      "Finite-n entropy density of packings in the ball of volume n, with the\n"
      "asymptotic entropy bound and the cell-model value for reference.");
  add_common(e, ent.common, "json");
  e->add_option("--d", ent.d, "Dimension")->check(CLI::Range(1, 64))->capture_default_str();
  e->add_option("--n", ent.n, "Ball volume")->capture_default_str();
  auto* alpha_opt = e->add_option("--alpha", ent.alpha, "Density; k = floor(alpha n)");
  auto* k_opt = e->add_option("--k", ent.k, "Number of centres");
  alpha_opt->excludes(k_opt);
  e->add_option("--samples", ent.samples, "Hit-or-miss draws")->capture_default_str();
  e->add_option("--c1", ent.c1, "Cell model density constant")->capture_default_str();
  e->add_option("--c2", ent.c2, "Cell model eps = c2 / d")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& ex) {
    if (ex.get_exit_code() == 0) {
      const auto subs = app.get_subcommands();
      out << (subs.empty() ? app.help() : subs.front()->help());
      return kExitOk;
    }
    err << "error: " << ex.what() << '\n';
    return kExitUsage;
  }

  try {
    if (b->parsed()) return cmd_bounds(bounds, out);
    if (s->parsed()) return cmd_simulate(sim, out);
    if (v->parsed()) return cmd_verify(ver, out);
    return cmd_entropy(ent, out);
  } catch (const UsageError& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitFail;
  }
}

}  // namespace hsm::cli
