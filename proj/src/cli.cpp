#include "gaussmod/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gaussmod/matrix_io.hpp"
#include "gaussmod/parallel.hpp"
#include "gaussmod/quasiequiv.hpp"
#include "gaussmod/random.hpp"
#include "gaussmod/scalarfield.hpp"

namespace gaussmod::cli {

namespace {

using Json = nlohmann::ordered_json;
using matops::SchattenP;

constexpr double kDefaultEps = 1e-10;
constexpr double kDecompositionTol = 1e-9;
constexpr int kMaxPerturbDim = 256;
const SchattenP kAllP[] = {SchattenP::One, SchattenP::Two, SchattenP::Inf};

double effective(const std::optional<double>& v, Command c) {
  if (v) return *v;
  return c == Command::Thermal ? 0.0 : kDefaultEps;
}

double standard_eps(const RunConfig& c) { return effective(c.tolerances.standard_eps, c.command); }
double factorial_eps(const RunConfig& c) { return effective(c.tolerances.factorial_eps, c.command); }
double positivity_eps(const RunConfig& c) { return effective(c.tolerances.positivity_eps, c.command); }

std::vector<double> effective_lengths(const RunConfig& c) {
  if (!c.lengths.empty()) return c.lengths;
  return std::vector<double>(c.geometry == "torus" ? 2 : 1, 2.0 * std::numbers::pi);
}

field::Geometry make_geometry(const RunConfig& c) {
  if (c.geometry == "circle") return field::Geometry::circle(effective_lengths(c).front());
  return field::Geometry::torus(effective_lengths(c));
}

Matrix to_matrix(std::string name, const RMatrix& m) {
  Matrix out{std::move(name), {}};
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    std::vector<double> row(static_cast<std::size_t>(m.cols()));
    for (Eigen::Index j = 0; j < m.cols(); ++j) row[static_cast<std::size_t>(j)] = m(i, j);
    out.rows.push_back(std::move(row));
  }
  return out;
}

// Collects reports of the same name across trials into one result row (the
// worst instance) plus count / violation / margin scalars.
class Aggregator {
 public:
  void add(const InequalityReport& r) {
    auto [it, inserted] = index_.try_emplace(r.name, entries_.size());
    if (inserted) {
      entries_.emplace_back();
      entries_.back().name = r.name;
    }
    Entry& e = entries_[it->second];
    if (r.skipped) {
      ++e.skipped;
      return;
    }
    ++e.count;
    if (!r.holds) ++e.violations;
    e.min_margin = std::min(e.min_margin, r.margin);
    e.min_slack = std::min(e.min_slack, r.relative_slack);
    const double s = score(r);
    if (!e.worst || worse(r, s, *e.worst, e.worst_score)) {
      e.worst = r;
      e.worst_score = s;
    }
  }

  void emit(RunReport& report, bool with_scalars) const {
    for (const Entry& e : entries_) {
      if (e.worst) {
        InequalityReport row = *e.worst;
        row.holds = e.violations == 0;
        report.results.push_back(row);
      }
      if (with_scalars) {
        if (e.count > 0) {
          report.scalars.emplace_back(e.name + ".count", e.count);
          report.scalars.emplace_back(e.name + ".violations", e.violations);
          report.scalars.emplace_back(e.name + ".min_margin", e.min_margin);
          report.scalars.emplace_back(e.name + ".min_relative_slack", e.min_slack);
        }
        if (e.skipped > 0) report.scalars.emplace_back(e.name + ".skipped", e.skipped);
      } else if (e.skipped > 0) {
        report.scalars.emplace_back(e.name + ".skipped", e.skipped);
      }
    }
  }

 private:
  struct Entry {
    std::string name;
    int count = 0, violations = 0, skipped = 0;
    double min_margin = std::numeric_limits<double>::infinity();
    double min_slack = std::numeric_limits<double>::infinity();
    std::optional<InequalityReport> worst;
    double worst_score = 0.0;
  };

  static double score(const InequalityReport& r) {
    if (r.kind == ReportKind::Equality) return -std::abs(r.lhs - r.rhs) / std::max(1.0, std::abs(r.rhs));
    return r.relative_slack;
  }

  static bool worse(const InequalityReport& a, double sa, const InequalityReport& b, double sb) {
    if (a.holds != b.holds) return !a.holds;
    return sa < sb;
  }

  std::vector<Entry> entries_;
  std::map<std::string, std::size_t> index_;
};

void finish(RunReport& report) {
  const bool ok = std::all_of(report.results.begin(), report.results.end(),
                              [](const InequalityReport& r) { return r.holds; });
  report.status = ok ? Status::Pass : Status::Fail;
}

struct TrialOutcome {
  std::vector<InequalityReport> reports;
  Instance instance;
};

struct PerturbInput {
  GaussianStateForm base;
  RMatrix delta;
};

PerturbInput perturb_input(const RunConfig& c, random::Rng& rng) {
  if (!c.sigma_path.empty()) {
    const RMatrix sigma = io::read_real_matrix_file(c.sigma_path);
    const RMatrix mu = io::read_real_matrix_file(c.mu_path);
    GaussianStateForm base(PreSymplecticSpace(sigma), mu);
    RMatrix delta = c.delta_path.empty() ? random::psd(rng, base.dim(), c.scale)
                                         : io::read_real_matrix_file(c.delta_path);
    return {std::move(base), std::move(delta)};
  }
  GaussianStateForm base = random::base_state(rng, c.dim);
  RMatrix delta = random::psd(rng, c.dim, c.scale);
  return {std::move(base), std::move(delta)};
}

TrialOutcome perturb_trial(const RunConfig& c, int trial) {
  random::Rng rng(random::substream_seed(c.seed, static_cast<std::uint64_t>(trial)));
  PerturbInput input = perturb_input(c, rng);
  const Perturbation delta(input.delta);
  const CanonicalPolarisation pol0 = polarisation_canonical(input.base);
  const CanonicalPolarisation pold = perturb(pol0, delta);
  const ModularOptions mopts{standard_eps(c), factorial_eps(c)};

  TrialOutcome out;
  auto& reports = out.reports;
  for (SchattenP p : kAllP) reports.push_back(verify_R_estimate(pol0, delta, p));
  for (auto& r : verify_theorem_bounds(pol0, delta, mopts.factorial_eps)) reports.push_back(std::move(r));
  if (standardness_check(pold, mopts.standard_eps).ok) {
    for (auto& r : verify_corollary_modular(pol0, delta, mopts)) reports.push_back(std::move(r));
  } else {
    reports.push_back(make_skipped("modular_route", "skipped: perturbed polarisation not standard"));
  }
  const ArakiYamagami ay = araki_yamagami_quantities(pol0.sigma(), delta);
  reports.push_back(ay.ps_bound);
  reports.push_back(lipschitz_check(matops::maps::identity(), 1.0, pol0, delta));
  reports.push_back(lipschitz_check(matops::maps::tanh(), 1.0, pol0, delta));
  reports.push_back(lipschitz_check(matops::maps::square(), 2.0, pol0, delta));

  Instance& inst = out.instance;
  inst.trial = trial;
  inst.values = {{"trace_delta", delta.trace()},
                 {"araki_yamagami_hs", ay.hs_value},
                 {"norm_one_plus_delta", ay.norm_one_plus_delta},
                 {"norm_inverse_one_plus_delta", ay.norm_inverse_one_plus_delta},
                 {"base_standard_margin", standardness_check(pol0).margin},
                 {"base_factorial_margin", factorial_check(pol0).margin}};
  if (factorial_check(pol0, mopts.factorial_eps).ok && factorial_check(pold, mopts.factorial_eps).ok) {
    const LongoQuantities q = longo_quantities(pol0, pold, mopts.factorial_eps);
    inst.values.emplace_back("longo_inverse_hs", q.inverse_hs);
    inst.values.emplace_back("longo_inverse_sqrt_hs", q.inverse_sqrt_hs);
    inst.values.emplace_back("longo_sqrt_hs", q.sqrt_hs);
    reports.push_back(make_inequality("longo_decomposition_residual",
                                      longo_decomposition_residual(pol0, pold, mopts.factorial_eps),
                                      kDecompositionTol, 0.0));
  } else {
    reports.push_back(make_skipped("longo_decomposition_residual", "skipped: R not invertible"));
  }
  if (c.trials == 1) {
    inst.matrices.push_back(to_matrix("sigma", input.base.space().sigma()));
    inst.matrices.push_back(to_matrix("mu", input.base.mu()));
    inst.matrices.push_back(to_matrix("delta", input.delta));
  }
  if (!c.dump_dir.empty()) {
    const std::string stem = (std::filesystem::path(c.dump_dir) / ("trial_" + std::to_string(trial))).string();
    io::write_matrix_file(stem + "_sigma.txt", input.base.space().sigma());
    io::write_matrix_file(stem + "_mu.txt", input.base.mu());
    io::write_matrix_file(stem + "_delta.txt", input.delta);
  }
  return out;
}

CMatrix complex_normal(random::Rng& rng, Eigen::Index n) {
  const RMatrix re = random::normal_matrix(rng, n, n);
  const RMatrix im = random::normal_matrix(rng, n, n);
  return re.cast<Complex>() + Complex(0.0, 1.0) * im.cast<Complex>();
}

TrialOutcome inequality_trial(const RunConfig& c, int trial) {
  random::Rng rng(random::substream_seed(c.seed, static_cast<std::uint64_t>(trial)));
  const Eigen::Index n = c.dim;
  const CMatrix a = matops::complexify(random::psd(rng, n, 1.0, rng.uniform_int(1, n)));
  const CMatrix b = matops::complexify(random::psd(rng, n, 1.0, rng.uniform_int(1, n)));
  const CMatrix x = complex_normal(rng, n);

  TrialOutcome out;
  out.instance.trial = trial;
  out.reports.push_back(powers_stormer_check(a, b));
  for (SchattenP p : kAllP) out.reports.push_back(van_hemmen_ando_check(a, b, p));
  for (SchattenP p : kAllP) out.reports.push_back(am_gm_check(a, b, x, p));

  const CanonicalPolarisation pol0 = random::standard_polarisation(rng, n);
  const Perturbation delta(random::psd(rng, n, c.scale));
  out.reports.push_back(lipschitz_check(matops::maps::identity(), 1.0, pol0, delta));
  out.reports.push_back(lipschitz_check(matops::maps::tanh(), 1.0, pol0, delta));
  out.reports.push_back(lipschitz_check(matops::maps::square(), 2.0, pol0, delta));
  return out;
}

std::vector<TrialOutcome> run_trials(const RunConfig& c, TrialOutcome (*trial)(const RunConfig&, int)) {
  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(c.trials));
  parallel_for(outcomes.size(), [&](std::size_t i) { outcomes[i] = trial(c, static_cast<int>(i)); });
  return outcomes;
}

// ---- serialization ----

Json config_echo(const RunConfig& c) {
  Json j;
  j["command"] = to_string(c.command);
  if (c.command == Command::Thermal) {
    j["geometry"] = c.geometry;
    j["length"] = effective_lengths(c);
    j["mass"] = c.mass;
    j["beta"] = c.beta;
    j["cutoff"] = c.cutoff;
  } else {
    j["seed"] = c.seed;
    j["trials"] = c.trials;
    j["dim"] = c.dim;
    j["scale"] = c.scale;
  }
  j["standard_eps"] = standard_eps(c);
  j["factorial_eps"] = factorial_eps(c);
  j["positivity_eps"] = positivity_eps(c);
  if (!c.sigma_path.empty()) j["sigma"] = c.sigma_path;
  if (!c.mu_path.empty()) j["mu"] = c.mu_path;
  if (!c.delta_path.empty()) j["delta"] = c.delta_path;
  return j;
}

void write_json(std::ostream& out, const Json& j, int level) {
  const std::string pad(static_cast<std::size_t>(2 * (level + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(2 * level), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        out << (first ? "" : ",\n") << pad << Json(key).dump() << ": ";
        write_json(out, value, level + 1);
        first = false;
      }
      out << '\n' << close_pad << '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out << "[]";
        return;
      }
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& v) { return v.is_primitive(); });
      out << (flat ? "[" : "[\n");
      bool first = true;
      for (const auto& value : j) {
        out << (first ? "" : (flat ? ", " : ",\n")) << (flat ? "" : pad);
        write_json(out, value, level + 1);
        first = false;
      }
      if (!flat) out << '\n' << close_pad;
      out << ']';
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      out << (std::isfinite(x) ? io::format_double(x) : "null");
      return;
    }
    default:
      out << j.dump();
  }
}

std::string iso_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::Thermal: return "thermal";
    case Command::Perturb: return "perturb";
    case Command::Inequalities: return "inequalities";
  }
  return "?";
}

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Error: return "error";
  }
  return "?";
}

void validate(const RunConfig& c) {
  auto fail = [](const std::string& msg) { throw Error(ErrorKind::InvalidArgument, msg); };
  if (c.command == Command::Thermal) {
    if (!(c.mass > 0.0) || !std::isfinite(c.mass)) throw Error(ErrorKind::NonPositiveMass, "mass must be positive");
    if (!(c.beta > 0.0) || !std::isfinite(c.beta)) fail("beta must be positive");
    if (c.cutoff < 0) fail("cutoff must be non-negative");
    if (c.geometry != "circle" && c.geometry != "torus") fail("geometry must be circle or torus");
    const auto lengths = effective_lengths(c);
    if (c.geometry == "circle" && lengths.size() != 1) fail("circle takes exactly one length");
    if (c.geometry == "torus" && (lengths.empty() || lengths.size() > 3)) fail("torus takes 1 to 3 lengths");
    for (double l : lengths) {
      if (!(l > 0.0) || !std::isfinite(l)) fail("length must be positive");
    }
  } else {
    if (c.trials < 1) fail("trials must be at least 1");
    if (c.dim < 1) fail("dim must be at least 1");
    if (c.command == Command::Perturb && c.dim > kMaxPerturbDim) fail("dim must be at most 256");
    if (!(c.scale > 0.0) || !std::isfinite(c.scale)) fail("scale must be positive");
    if (c.sigma_path.empty() != c.mu_path.empty()) fail("sigma and mu files must be given together");
    if (!c.delta_path.empty() && c.sigma_path.empty()) fail("delta file needs sigma and mu files");
  }
  for (const auto* eps : {&c.tolerances.standard_eps, &c.tolerances.factorial_eps, &c.tolerances.positivity_eps}) {
    if (*eps && (!(**eps >= 0.0) || !std::isfinite(**eps))) fail("tolerances must be non-negative");
  }
}

RunReport cmd_thermal(const RunConfig& c) {
  validate(c);
  RunReport report;
  report.config = c;
  const field::ModeSpectrum spec = field::build_spectrum(make_geometry(c), c.mass, c.cutoff);
  const field::FieldOptions opts{positivity_eps(c), standard_eps(c)};

  std::vector<InequalityReport> reports = field::thermal_exact_identities(spec, c.beta, opts);
  const Perturbation delta = field::thermal_delta(spec, c.beta);
  const field::EnergyResult e = field::energy(spec, delta);
  reports.push_back(e.lower_bound);
  if (delta.min_eigenvalue() > opts.positivity_eps) {
    for (auto& r : field::verify_minkowski_bounds(spec, delta, opts)) reports.push_back(std::move(r));
  } else {
    for (const char* name : {"vacuum_coth_trace_norm_le_8E_over_m", "sech_hs2_le_8E_over_m",
                             "csch_hs2_le_16E_over_m_times_1_plus_8E_over_m"}) {
      reports.push_back(make_skipped(name, "skipped: delta_beta not strictly positive"));
    }
  }
  Aggregator agg;
  for (const auto& r : reports) agg.add(r);
  agg.emit(report, false);

  auto& s = report.scalars;
  s.emplace_back("dim", static_cast<double>(spec.dim()));
  s.emplace_back("modes", static_cast<double>(spec.modes.size()));
  s.emplace_back("energy", e.energy);
  s.emplace_back("energy_mode_sum", field::thermal_energy_closed_form(spec, c.beta));
  s.emplace_back("trace_delta", delta.trace());
  s.emplace_back("trace_delta_mode_sum", field::thermal_trace_closed_form(spec, c.beta));
  const CanonicalPolarisation pol = perturb(field::vacuum_polarisation(spec), delta);
  const CheckResult standard = standardness_check(pol, opts.standard_eps);
  s.emplace_back("standardness_margin", standard.margin);
  if (standard.ok) {
    const RVector k = modular_operator(pol, opts.standard_eps).k_eigs;
    s.emplace_back("k_spectrum_min_abs", k.cwiseAbs().minCoeff());
    s.emplace_back("k_spectrum_max", k.maxCoeff());
  }
  const std::vector<int> cutoffs{c.cutoff / 4, c.cutoff / 2, c.cutoff};
  const std::vector<double> tail = field::thermal_trace_by_cutoff(make_geometry(c), c.mass, c.beta, cutoffs);
  for (std::size_t i = 0; i < cutoffs.size(); ++i) {
    s.emplace_back("trace_delta_cutoff_" + std::to_string(cutoffs[i]), tail[i]);
  }
  s.emplace_back("tail_increment", tail[2] - tail[1]);
  finish(report);
  return report;
}

RunReport cmd_perturb(const RunConfig& c) {
  validate(c);
  RunReport report;
  report.config = c;
  if (!c.dump_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(c.dump_dir, ec);
    if (ec) throw Error(ErrorKind::Parse, "cannot create dump directory " + c.dump_dir);
  }
  std::vector<TrialOutcome> outcomes = run_trials(c, perturb_trial);
  Aggregator agg;
  for (auto& o : outcomes) {
    for (const auto& r : o.reports) agg.add(r);
    report.instances.push_back(std::move(o.instance));
  }
  agg.emit(report, true);
  finish(report);
  return report;
}

RunReport cmd_inequalities(const RunConfig& c) {
  validate(c);
  RunReport report;
  report.config = c;
  std::vector<TrialOutcome> outcomes = run_trials(c, inequality_trial);
  Aggregator agg;
  for (const auto& o : outcomes) {
    for (const auto& r : o.reports) agg.add(r);
  }
  agg.emit(report, true);

  // Equality witnesses: commuting scalars for van Hemmen–Ando, A = B = 1 for AM–GM.
  const CMatrix four = CMatrix::Constant(1, 1, 4.0), one = CMatrix::Constant(1, 1, 1.0);
  for (SchattenP p : kAllP) {
    InequalityReport r = van_hemmen_ando_check(four, one, p);
    r.name += "_scalar_witness";
    report.results.push_back(r);
  }
  random::Rng rng(random::substream_seed(c.seed, static_cast<std::uint64_t>(c.trials)));
  const CMatrix x = complex_normal(rng, c.dim);
  const CMatrix id = matops::identity(c.dim);
  for (SchattenP p : kAllP) {
    InequalityReport r = am_gm_check(id, id, x, p);
    r.name += "_identity_witness";
    report.results.push_back(r);
  }
  finish(report);
  return report;
}

RunReport run(const RunConfig& config) {
  try {
    switch (config.command) {
      case Command::Thermal: return cmd_thermal(config);
      case Command::Perturb: return cmd_perturb(config);
      case Command::Inequalities: return cmd_inequalities(config);
    }
  } catch (const Error& e) {
    RunReport report;
    report.config = config;
    report.status = Status::Error;
    report.error = e.what();
    return report;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown command");
}

std::string to_json(const RunReport& r) {
  Json j;
  j["meta"]["version"] = kVersion;
  j["meta"]["seed"] = r.config.seed;
  j["meta"]["rng"] = random::kGeneratorId;
  j["meta"]["config"] = config_echo(r.config);
  if (r.config.timestamp) j["meta"]["timestamp"] = iso_timestamp();
  j["results"] = Json::array();
  for (const auto& res : r.results) {
    Json row;
    row["name"] = res.name;
    row["lhs"] = res.lhs;
    row["rhs"] = res.rhs;
    row["holds"] = res.holds;
    row["margin"] = res.margin;
    j["results"].push_back(row);
  }
  j["scalars"] = Json::object();
  for (const auto& [name, value] : r.scalars) j["scalars"][name] = value;
  if (!r.instances.empty()) {
    Json list = Json::array();
    for (const auto& inst : r.instances) {
      Json ij;
      ij["trial"] = inst.trial;
      for (const auto& [name, value] : inst.values) ij[name] = value;
      for (const auto& m : inst.matrices) ij[m.name] = m.rows;
      list.push_back(ij);
    }
    j["instances"] = list;
  }
  if (!r.error.empty()) j["error"] = r.error;
  j["status"] = to_string(r.status);
  std::ostringstream out;
  write_json(out, j, 0);
  out << '\n';
  return out.str();
}

std::string to_csv(const RunReport& r) {
  std::ostringstream out;
  out << "name,lhs,rhs,holds,margin\n";
  for (const auto& res : r.results) {
    out << res.name << ',' << io::format_double(res.lhs) << ',' << io::format_double(res.rhs) << ','
        << (res.holds ? "true" : "false") << ',' << io::format_double(res.margin) << '\n';
  }
  return out.str();
}

int exit_code(const RunReport& r) {
  switch (r.status) {
    case Status::Pass: return 0;
    case Status::Fail: return 1;
    case Status::Error: return 2;
  }
  return 2;
}

namespace {

// Plain "key = value" lines; '#' starts a comment.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open config file " + path);
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::Parse, path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    std::string key = trim(line.substr(0, eq));
    std::replace(key.begin(), key.end(), '_', '-');
    out.emplace_back(key, trim(line.substr(eq + 1)));
  }
  return out;
}

bool given_on_command_line(const std::vector<std::string>& args, const std::string& key) {
  const std::string flag = "--" + key;
  return std::any_of(args.begin(), args.end(),
                     [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
}

// Inserts file settings ahead of the command-line flags they do not override.
std::vector<std::string> merge_config_file(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  std::vector<std::string> extra;
  for (const auto& [key, value] : read_config_file(path)) {
    if (key == "config" || given_on_command_line(args, key)) continue;
    if (key == "timestamp") {
      if (value == "true" || value == "1") extra.push_back("--timestamp");
      continue;
    }
    std::istringstream parts(value);
    extra.push_back("--" + key);
    for (std::string tok; parts >> tok;) extra.push_back(tok);
  }
  auto pos = std::find_if(args.begin(), args.end(), [](const std::string& a) {
    return a == "thermal" || a == "perturb" || a == "inequalities";
  });
  if (pos != args.end()) ++pos;
  args.insert(pos, extra.begin(), extra.end());
  return args;
}

}  // namespace

int main_entry(int argc, char** argv) {
  RunConfig c;
  CLI::App app{"Gaussian state modular theory and quasi-equivalence checks"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  std::string config_path, format;
  std::optional<double> standard, factorial, positivity;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key=value file; flags override it");
    sub->add_option("--out", c.output_path, "output file (.json or .csv)");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_flag("--timestamp", c.timestamp, "add a UTC timestamp to the metadata");
    sub->add_option("--standard-eps", standard, "standardness threshold");
    sub->add_option("--factorial-eps", factorial, "factoriality threshold");
    sub->add_option("--positivity-eps", positivity, "strict positivity threshold for delta");
  };
  auto add_random = [&](CLI::App* sub) {
    sub->add_option("--seed", c.seed, "base seed");
    sub->add_option("--trials", c.trials, "number of random instances");
    sub->add_option("--dim", c.dim, "matrix dimension");
    sub->add_option("--scale", c.scale, "scale s of delta = s G G^T");
  };

  CLI::App* thermal = app.add_subcommand("thermal", "thermal state of the free scalar field");
  add_common(thermal);
  thermal->add_option("--geometry", c.geometry, "circle or torus");
  thermal->add_option("--length", c.lengths, "side length(s)");
  thermal->add_option("--mass", c.mass, "field mass m > 0");
  thermal->add_option("--beta", c.beta, "inverse temperature");
  thermal->add_option("--cutoff", c.cutoff, "mode cutoff N");

  CLI::App* perturb_cmd = app.add_subcommand("perturb", "random perturbations of random Gaussian states");
  add_common(perturb_cmd);
  add_random(perturb_cmd);
  perturb_cmd->add_option("--sigma", c.sigma_path, "sigma matrix file");
  perturb_cmd->add_option("--mu", c.mu_path, "mu matrix file");
  perturb_cmd->add_option("--delta", c.delta_path, "delta matrix file (mu0-orthonormal coordinates)");
  perturb_cmd->add_option("--dump-dir", c.dump_dir, "write every instance as matrix files here");

  CLI::App* ineq = app.add_subcommand("inequalities", "operator inequalities on random PSD matrices");
  add_common(ineq);
  add_random(ineq);

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = merge_config_file(std::move(args));
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  if (thermal->parsed()) c.command = Command::Thermal;
  if (perturb_cmd->parsed()) c.command = Command::Perturb;
  if (ineq->parsed()) c.command = Command::Inequalities;
  c.tolerances = {standard, factorial, positivity};
  if (!format.empty()) c.format = format == "csv" ? OutputFormat::Csv : OutputFormat::Json;

  try {
    validate(c);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  const RunReport report = run(c);
  const bool csv = c.format ? *c.format == OutputFormat::Csv
                            : std::filesystem::path(c.output_path).extension() == ".csv";
  const std::string text = csv ? to_csv(report) : to_json(report);
  if (c.output_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(c.output_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << c.output_path << '\n';
      return 2;
    }
    out << text;
    std::cout << to_string(c.command) << ": " << to_string(report.status) << " (" << report.results.size()
              << " checks)\n";
  }
  if (report.status == Status::Error) std::cerr << "error: " << report.error << '\n';
  return exit_code(report);
}

}  // namespace gaussmod::cli
