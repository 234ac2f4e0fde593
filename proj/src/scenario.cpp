#include "fdecert/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "fdecert/certifier.hpp"
#include "fdecert/comparison.hpp"
#include "fdecert/dissipativity.hpp"
#include "fdecert/history.hpp"
#include "fdecert/integrator.hpp"
#include "fdecert/krasovskii.hpp"
#include "fdecert/model.hpp"
#include "fdecert/rng.hpp"
#include "fdecert/signals.hpp"

namespace fdecert {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::uint64_t kDissipativityStream = 0xd155;
constexpr std::uint64_t kExportStream = 0x7ab1e;

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t x) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(x));
  return buf;
}

/// Config access that records every value it hands out, defaults included,
/// so reports can echo the effective settings verbatim.
class CfgReader {
public:
  explicit CfgReader(const Config& cfg) : cfg_(cfg) {}

  double num(const std::string& sec, const std::string& key) {
    const double v = cfg_.get_double(sec, key);
    effective[sec][key] = v;
    return v;
  }
  double num_or(const std::string& sec, const std::string& key, double def) {
    const double v = cfg_.get_double_or(sec, key, def);
    effective[sec][key] = v;
    return v;
  }
  std::int64_t int_or(const std::string& sec, const std::string& key, std::int64_t def) {
    const std::int64_t v = cfg_.get_int_or(sec, key, def);
    effective[sec][key] = v;
    return v;
  }
  bool bool_or(const std::string& sec, const std::string& key, bool def) {
    const bool v = cfg_.get_bool_or(sec, key, def);
    effective[sec][key] = v;
    return v;
  }
  std::string str_or(const std::string& sec, const std::string& key, const std::string& def) {
    const std::string v = cfg_.get_string_or(sec, key, def);
    effective[sec][key] = v;
    return v;
  }
  std::vector<double> array(const std::string& sec, const std::string& key) {
    const auto v = cfg_.get_array(sec, key);
    effective[sec][key] = v;
    return v;
  }
  std::vector<double> array_or(const std::string& sec, const std::string& key,
                               const std::vector<double>& def) {
    const auto v = cfg_.has(sec, key) ? cfg_.get_array(sec, key) : def;
    effective[sec][key] = v;
    return v;
  }
  Mat matrix(const std::string& sec, const std::string& key) {
    const auto rows = cfg_.get_matrix(sec, key);
    effective[sec][key] = rows;
    return Mat::from_rows(rows);
  }
  std::optional<Mat> matrix_opt(const std::string& sec, const std::string& key) {
    if (!cfg_.has(sec, key)) return {};
    return matrix(sec, key);
  }
  bool has(const std::string& sec, const std::string& key) const { return cfg_.has(sec, key); }

  Json effective = Json::object();

private:
  const Config& cfg_;
};

struct CheckPlan {
  bool certificate = true;
  bool classify = false;
  std::vector<double> probe_eps;
  std::optional<double> settling_eta;
  std::string dissipativity = "none";
  double gamma = 2.0;
  bool export_trajectory = false;
};

struct Assembled {
  DelaySignal delay;
  CaratheodoryRHS rhs;
  std::optional<OutputMap> output;
  std::shared_ptr<const InputSignal> u;
  std::shared_ptr<const DisturbanceSignal> w;
  std::optional<QuadraticFunctional> v;
  std::optional<KInfFn> a3;
  CertifyParams params;
  CheckPlan plan;
  Json effective;
};

DelaySignal build_delay(CfgReader& c) {
  const std::string kind = c.str_or("delay", "kind", "constant");
  if (kind == "constant") {
    return constant_delay(c.num("delay", "r"));
  }
  if (kind == "piecewise-constant" || kind == "glitched") {
    const double r1 = c.num("delay", "r1");
    const double r2 = c.num("delay", "r2");
    DelaySignal base =
        c.has("delay", "breakpoints")
            ? piecewise_constant_delay(c.array("delay", "breakpoints"), c.array("delay", "values"),
                                       r1, r2)
            : piecewise_constant_delay({}, {c.num("delay", "r")}, r1, r2);
    if (kind == "piecewise-constant") return base;
    const double measure = c.num("delay", "glitch_measure");
    const auto count = c.int_or("delay", "glitch_count", 10);
    const double value = c.num("delay", "glitch_value");
    const auto window = c.array_or("delay", "glitch_window", {0.0, 10.0});
    if (window.size() != 2) throw ConfigError("delay.glitch_window must be [start, end]");
    const auto gseed = static_cast<std::uint64_t>(c.int_or("delay", "glitch_seed", 97));
    const auto intervals =
        random_glitch_intervals(measure, static_cast<int>(count), window[0], window[1], gseed);
    return glitched_delay(base, intervals, value);
  }
  throw ConfigError("delay.kind: unknown kind '" + kind + "'");
}

std::shared_ptr<const DisturbanceSignal> build_disturbance(CfgReader& c, int dim) {
  const std::string kind = c.str_or("system", "w_kind", "none");
  if (kind == "none") return std::make_shared<const DisturbanceSignal>(zero_disturbance(dim));
  if (dim != 1) throw ConfigError("system.w_kind: analytic disturbances are scalar");
  if (kind == "decaying-exponential") {
    return std::make_shared<const DisturbanceSignal>(decaying_exponential(
        c.num("system", "w_amplitude"), c.num("system", "w_rate"), c.num_or("system", "w_start", 0.0)));
  }
  if (kind == "truncated-sinusoid") {
    return std::make_shared<const DisturbanceSignal>(
        truncated_sinusoid(c.num("system", "w_amplitude"), c.num("system", "w_omega"),
                           c.num_or("system", "w_start", 0.0), c.num("system", "w_end")));
  }
  if (kind == "burst-train") {
    return std::make_shared<const DisturbanceSignal>(
        burst_train(c.num("system", "w_amplitude"), c.num("system", "w_omega"),
                    c.num_or("system", "w_start", 0.0), c.num("system", "w_width"),
                    c.num("system", "w_gap"), static_cast<int>(c.int_or("system", "w_count", 1))));
  }
  throw ConfigError("system.w_kind: unknown kind '" + kind + "'");
}

std::optional<MatrixKernel> build_kernel(CfgReader& c, double r2) {
  const std::string kind = c.str_or("system", "kernel", "none");
  if (kind == "none") return {};
  const Mat m = c.matrix("system", "kernel_matrix");
  if (kind == "constant") return constant_kernel(m);
  if (kind == "exponential") return exponential_kernel(m, c.num_or("system", "kernel_rate", 1.0));
  if (kind == "polynomial") {
    return polynomial_kernel(m, c.array("system", "kernel_coeffs"), r2);
  }
  throw ConfigError("system.kernel: unknown kind '" + kind + "'");
}

void build_system(CfgReader& c, const DelaySignal& delay, Assembled& out) {
  const std::string kind = c.str_or("system", "kind", "linear-delay");
  const Mat a1 = c.matrix("system", "a1");
  const int dim = a1.rows();
  if (a1.cols() != dim) throw ConfigError("system.a1 must be square");

  if (kind == "linear-delay" || kind == "stieltjes") {
    Mat a2 = c.matrix_opt("system", "a2").value_or(Mat(dim, dim));
    out.rhs = kind == "stieltjes" ? stieltjes_rhs(a1, a2, delay, delay.r2())
                                  : linear_delay_rhs(a1, a2, delay);
    out.u = std::make_shared<const InputSignal>(zero_input(dim));
    out.w = std::make_shared<const DisturbanceSignal>(zero_disturbance(dim));
    return;
  }
  if (kind == "distributed") {
    DistributedCoeffs coeffs;
    coeffs.a1 = a1;
    coeffs.a2_kernel = build_kernel(c, delay.r2());
    coeffs.d1 = c.matrix_opt("system", "d1");
    out.u = std::make_shared<const InputSignal>(zero_input(dim));
    const int w_dim = coeffs.d1 ? coeffs.d1->cols() : dim;
    out.w = build_disturbance(c, w_dim);
    out.rhs = distributed_delay_rhs(coeffs, delay, out.u, out.w);
    if (c.has("system", "z_c1")) {
      OutputCoeffs oc;
      oc.c1 = c.matrix("system", "z_c1");
      oc.d2 = c.matrix_opt("system", "z_d2");
      if (oc.c1.cols() != dim) throw ConfigError("system.z_c1 column count must match the state");
      out.output = output_map(oc, delay, out.u, out.w);
    }
    return;
  }
  throw ConfigError("system.kind: unknown kind '" + kind + "'");
}

KInfFn build_alpha3(CfgReader& c) {
  const std::string kind = c.str_or("alpha3", "kind", "quadratic");
  const double coeff = c.num("alpha3", "coeff");
  KInfFn fn = [&]() {
    if (kind == "quadratic") return kinf_quadratic(coeff);
    if (kind == "linear") return kinf_linear(coeff);
    if (kind == "power") return kinf_power(coeff, c.num("alpha3", "exponent"));
    throw ConfigError("alpha3.kind: unknown kind '" + kind + "'");
  }();
  fn.validate();
  return fn;
}

Assembled assemble(const Config& cfg) {
  CfgReader c(cfg);
  Assembled out;

  out.delay = build_delay(c);
  build_system(c, out.delay, out);

  if (c.has("functional", "p")) {
    const Mat p = c.matrix("functional", "p");
    auto q = c.matrix_opt("functional", "q");
    auto r_weight = c.matrix_opt("functional", "r_weight");
    const double default_span = (q || r_weight) ? out.delay.r2() : 0.0;
    const double span = c.num_or("functional", "span", default_span);
    out.v.emplace(p, std::move(q), std::move(r_weight), span);
    if (out.v->dim() != out.rhs.dim()) {
      throw ConfigError("functional dimension does not match the system state");
    }
  }
  if (c.has("alpha3", "coeff")) out.a3.emplace(build_alpha3(c));

  auto& pl = out.plan;
  pl.certificate = c.bool_or("checks", "certificate", true);
  pl.classify = c.bool_or("checks", "classify", false);
  if (c.has("checks", "probe_eps")) pl.probe_eps = c.array("checks", "probe_eps");
  if (c.has("checks", "settling_eta")) pl.settling_eta = c.num("checks", "settling_eta");
  pl.dissipativity = c.str_or("checks", "dissipativity", "none");
  if (pl.dissipativity == "l2-gain") pl.gamma = c.num_or("checks", "gamma", 2.0);
  pl.export_trajectory = c.bool_or("checks", "export_trajectory", false);

  auto& p = out.params;
  p.delta = c.num_or("numerics", "delta", 1.0);
  p.h = c.num_or("numerics", "h", 0.01);
  p.horizon = c.num_or("numerics", "horizon", 10.0);
  p.n_phi = static_cast<int>(c.int_or("numerics", "n_phi", 8));
  p.n_bound_samples = static_cast<int>(c.int_or("numerics", "n_bound_samples", 200));
  p.knots = static_cast<int>(c.int_or("numerics", "knots", 16));
  p.ladder_rungs = static_cast<int>(c.int_or("numerics", "ladder_rungs", 8));
  p.decrease_tol = c.num_or("numerics", "decrease_tol", -1.0);
  p.t0_grid = c.array_or("numerics", "t0_grid", {-1.0, 0.0, 2.5});
  p.seed = static_cast<std::uint64_t>(c.int_or("seed", "value", 1));

  const bool needs_functional = pl.certificate || !pl.probe_eps.empty() ||
                                pl.settling_eta.has_value() || pl.dissipativity != "none";
  if (needs_functional && !out.v) {
    throw ConfigError("enabled checks need [functional] with at least the p matrix");
  }
  const bool needs_a3 = pl.certificate || pl.settling_eta.has_value();
  if (needs_a3 && !out.a3) {
    throw ConfigError("certificate and settling checks need [alpha3]");
  }
  if (pl.dissipativity != "none" && !out.output) {
    throw ConfigError("dissipativity checks need a distributed system with system.z_c1");
  }
  if (pl.settling_eta && *pl.settling_eta > 0.0) {
    const double eta_cons = *pl.settling_eta;
    if (!(eta_cons > 0.0)) throw ConfigError("checks.settling_eta must be positive");
    p.eta_ref = eta_cons;
  }
  if (!pl.probe_eps.empty()) p.eps_ref = pl.probe_eps.front();

  cfg.require_all_consumed();
  out.effective = std::move(c.effective);
  return out;
}

CheckStatus classify_status(const ClassifyReport& rep) {
  if (rep.verdict == "unstable") return CheckStatus::Violation;
  if (rep.verdict == "inconclusive") return CheckStatus::Inconclusive;
  return CheckStatus::Pass;
}

Json counterexample_json(const BoundCheckResult& bound) {
  if (!bound.counterexample) return nullptr;
  return Json{{"sample_index", bound.counterexample->sample_index},
              {"t", bound.counterexample->t},
              {"ratio", bound.counterexample->ratio}};
}

}  // namespace

std::uint64_t scenario_hash(const Config& cfg) { return fnv1a64(cfg.canonical_text()); }

RunResult run_scenario(const Config& cfg, const std::string& name,
                       std::optional<std::uint64_t> seed_override) {
  Assembled a = [&]() {
    try {
      return assemble(cfg);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(std::string("scenario assembly: ") + e.what());
    }
  }();
  if (seed_override) a.params.seed = *seed_override;

  RunResult res;
  Json root;
  root["scenario"] = name;
  root["hash"] = hex64(scenario_hash(cfg));
  root["seed"] = a.params.seed;
  root["effective"] = a.effective;
  Json& checks = root["checks"] = Json::object();

  std::ostringstream text;
  text << "scenario " << name << " (hash " << hex64(scenario_hash(cfg)) << ", seed "
       << a.params.seed << ")\n";

  CheckStatus overall = CheckStatus::Pass;

  if (a.plan.certificate) {
    const auto rep = stability_certificate(a.rhs, *a.v, *a.a3, a.params);
    overall = combine(overall, rep.status);
    Json j;
    j["status"] = status_label(rep.status);
    j["verdict"] = certificate_verdict(rep);
    j["bound"] = {{"status", status_label(rep.bound_status)},
                  {"margin", 1.0 - rep.bound.max_ratio},
                  {"available", rep.bound.bound_available},
                  {"worst_sample", counterexample_json(rep.bound)}};
    std::size_t sand_worst = 0;
    for (std::size_t i = 0; i < rep.sandwich.size(); ++i) {
      if (rep.sandwich[i].excess > rep.sandwich[sand_worst].excess) sand_worst = i;
    }
    j["sandwich"] = {{"status", status_label(rep.sandwich_status)},
                     {"margin", -rep.sandwich_worst},
                     {"worst_sample", rep.sandwich.empty() ? Json(nullptr) : Json(sand_worst)}};
    std::size_t dec_worst = 0;
    for (std::size_t i = 0; i < rep.decrease.size(); ++i) {
      const double wi = rep.decrease[i].blew_up ? 1e300 : rep.decrease[i].report.worst_deficit;
      const double w0 = rep.decrease[dec_worst].blew_up ? 1e300 : rep.decrease[dec_worst].report.worst_deficit;
      if (wi > w0) dec_worst = i;
    }
    j["decrease"] = {{"status", status_label(rep.decrease_status)},
                     {"margin", -rep.decrease_worst},
                     {"tol", rep.decrease_tol_used},
                     {"worst_sample", rep.decrease.empty() ? Json(nullptr) : Json(dec_worst)}};
    j["lipschitz"] = {{"status", status_label(rep.lipschitz_status)},
                      {"margin", -rep.lipschitz.worst_excess},
                      {"checked", rep.lipschitz.checked}};
    if (rep.constants.available) {
      j["constants"] = {{"eps", rep.constants.values.eps},
                        {"delta_of_eps", rep.constants.values.delta_of_eps},
                        {"eta", rep.constants.values.eta},
                        {"eps_of_eta", rep.constants.values.eps_of_eta},
                        {"delta", rep.constants.values.delta},
                        {"kappa", rep.constants.values.kappa},
                        {"beta", rep.constants.values.beta},
                        {"c_at_delta", rep.constants.c_at_delta},
                        {"r", rep.constants.r_used}};
    } else {
      j["constants"] = nullptr;
    }
    checks["certificate"] = std::move(j);

    text << "certificate: " << status_label(rep.status) << " [" << certificate_verdict(rep)
         << "]\n";
    text << "  bound: " << status_label(rep.bound_status) << " (max ratio " << rep.bound.max_ratio
         << ")\n";
    text << "  sandwich: " << status_label(rep.sandwich_status) << " (worst excess "
         << rep.sandwich_worst << ")\n";
    text << "  decrease: " << status_label(rep.decrease_status) << " (worst deficit "
         << rep.decrease_worst << ", tol " << rep.decrease_tol_used << ")\n";
    text << "  lipschitz: " << status_label(rep.lipschitz_status) << " (worst excess "
         << rep.lipschitz.worst_excess << ")\n";
    if (rep.constants.available) {
      text << "  constants: delta(eps)=" << rep.constants.values.delta_of_eps
           << ", eps(eta)=" << rep.constants.values.eps_of_eta
           << ", kappa=" << rep.constants.values.kappa << ", beta=" << rep.constants.values.beta
           << "\n";
    }
  }

  if (!a.plan.probe_eps.empty()) {
    const auto rep = uniform_stability_probe(a.rhs, *a.v, a.plan.probe_eps, a.params);
    overall = combine(overall, rep.status);
    std::size_t worst = 0;
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
      if (rep.rows[i].ratio > rep.rows[worst].ratio) worst = i;
    }
    Json levels = Json::array();
    for (const auto& l : rep.levels) {
      levels.push_back({{"eps", l.eps}, {"delta", l.delta}, {"margin", l.margin}});
    }
    checks["probe"] = {{"status", status_label(rep.status)},
                       {"margin", 1.0 - rep.worst_ratio},
                       {"worst_sample",
                        rep.rows.empty()
                            ? Json(nullptr)
                            : Json{{"eps", rep.rows[worst].eps},
                                   {"t0", rep.rows[worst].t0},
                                   {"phi_index", rep.rows[worst].phi_index},
                                   {"peak", rep.rows[worst].peak_norm}}},
                       {"levels", std::move(levels)}};
    text << "probe: " << status_label(rep.status) << " (worst peak/eps ratio " << rep.worst_ratio
         << ")\n";
  }

  if (a.plan.settling_eta) {
    const auto rep = settling_consistency(a.rhs, *a.v, *a.a3, *a.plan.settling_eta, a.params);
    overall = combine(overall, rep.status);
    std::size_t worst = 0;
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
      if (rep.rows[i].settle_time > rep.rows[worst].settle_time) worst = i;
    }
    checks["settling"] = {{"status", status_label(rep.status)},
                          {"margin", rep.bound.beta - rep.worst_settle},
                          {"eta", rep.eta},
                          {"delta", rep.delta},
                          {"eps_eta", rep.bound.eps_eta},
                          {"kappa", rep.bound.kappa},
                          {"beta", rep.bound.beta},
                          {"horizon_used", rep.horizon_used},
                          {"capped", rep.capped},
                          {"worst_settle", rep.worst_settle},
                          {"conservativeness", rep.conservativeness},
                          {"worst_sample", rep.rows.empty() ? Json(nullptr) : Json(worst)}};
    text << "settling: " << status_label(rep.status) << " (worst settle " << rep.worst_settle
         << ", beta " << rep.bound.beta << ", conservativeness " << rep.conservativeness
         << (rep.capped ? ", horizon capped" : "") << ")\n";
  }

  if (a.plan.dissipativity != "none") {
    const SupplyRate supply =
        a.plan.dissipativity == "l2-gain" ? l2_gain_supply(a.plan.gamma) : passivity_supply();
    DistributedSystem sys{a.rhs, *a.output, a.u, a.w};
    const double span = std::max(a.rhs.max_delay(), a.v->span());
    CheckStatus status = CheckStatus::Pass;
    double worst_excess = -1e300;
    Json worst_sample = nullptr;
    DifferentialFormReport diff_rep;
    for (int i = 0; i < a.params.n_phi; ++i) {
      Rng rng(mix_seed(a.params.seed, kDissipativityStream, static_cast<std::uint64_t>(i)));
      const auto phi = random_segment(a.rhs.dim(), span > 0.0 ? span : 1.0, a.params.delta,
                                      a.params.knots, rng);
      const auto traj = integrate(a.rhs, phi, 0.0, a.params.horizon, a.params.h);
      if (traj.blew_up()) {
        status = CheckStatus::Violation;
        worst_sample = Json{{"phi_index", i}, {"blowup", true}};
        break;
      }
      const auto windows = certified_window_ladder(traj, a.v->span(), a.params.ladder_rungs);
      const double tol = a.params.decrease_tol >= 0.0 ? a.params.decrease_tol
                                                      : 20.0 * a.params.h * a.params.h;
      const auto rep = check_dissipativity(sys, *a.v, supply, traj, windows, tol, a.params.tol);
      status = combine(status, rep.status);
      if (rep.worst_excess > worst_excess) {
        worst_excess = rep.worst_excess;
        std::size_t wi = 0;
        for (std::size_t k = 0; k < rep.windows.size(); ++k) {
          if (rep.windows[k].deficit - rep.windows[k].allowed >
              rep.windows[wi].deficit - rep.windows[wi].allowed) {
            wi = k;
          }
        }
        worst_sample = rep.windows.empty() ? Json(nullptr)
                                           : Json{{"phi_index", i},
                                                  {"window_s", rep.windows[wi].s},
                                                  {"window_t", rep.windows[wi].t},
                                                  {"deficit", rep.windows[wi].deficit}};
      }
      if (i == 0) {
        diff_rep = differential_form_check(sys, *a.v, supply, traj, tol, a.params.tol);
        status = combine(status, diff_rep.status);
      }
    }
    overall = combine(overall, status);
    checks["dissipativity"] = {{"status", status_label(status)},
                               {"kind", a.plan.dissipativity},
                               {"gamma", a.plan.gamma},
                               {"margin", -worst_excess},
                               {"worst_sample", std::move(worst_sample)},
                               {"differential",
                                {{"status", status_label(diff_rep.status)},
                                 {"margin", -diff_rep.worst_rate_excess},
                                 {"windows", diff_rep.n_windows}}}};
    text << "dissipativity(" << a.plan.dissipativity << "): " << status_label(status)
         << " (worst excess " << worst_excess << ", differential worst "
         << diff_rep.worst_rate_excess << ")\n";
  }

  if (a.plan.classify) {
    const auto rep = classify_behavior(a.rhs, a.params);
    const auto st = classify_status(rep);
    overall = combine(overall, st);
    Json cells = Json::array();
    for (const auto& cell : rep.cells) {
      cells.push_back({{"eps", cell.eps}, {"t0", cell.t0}, {"delta_star", cell.delta_star}});
    }
    checks["classify"] = {{"status", status_label(st)},
                          {"verdict", rep.verdict},
                          {"blowup", rep.any_blowup},
                          {"uniform", rep.uniform},
                          {"decaying", rep.decaying},
                          {"cells", std::move(cells)}};
    text << "classify: " << rep.verdict << "\n";
  }

  if (a.plan.export_trajectory) {
    Rng rng(mix_seed(a.params.seed, kExportStream, 0));
    const double span = std::max(a.rhs.max_delay(), a.v ? a.v->span() : 0.0);
    const auto phi =
        random_segment(a.rhs.dim(), span > 0.0 ? span : 1.0, a.params.delta, a.params.knots, rng);
    const auto traj = integrate(a.rhs, phi, 0.0, a.params.horizon, a.params.h);
    std::ostringstream table;
    write_trajectory_table(traj, table);
    res.tables.emplace_back(name + "_trajectory.csv", table.str());
  }

  res.exit_code = overall == CheckStatus::Pass ? 0 : 1;
  root["exit_code"] = res.exit_code;
  res.results_json = root.dump(2) + "\n";
  text << "exit " << res.exit_code << "\n";
  res.report_text = text.str();
  return res;
}

namespace {

struct Preset {
  const char* name;
  const char* description;
  const char* text;
};

const Preset kPresets[] = {
    {"ode_decay",
     "Scalar exponential decay wrapped as a delay system; certificate, probe, settling, classify.",
     R"(
[system]
kind = linear-delay
a1 = [[-1]]
a2 = [[0]]

[delay]
kind = constant
r = 0.1

[functional]
p = [[1]]

[alpha3]
kind = quadratic
coeff = 2

[checks]
certificate = true
classify = true
probe_eps = [0.5, 1e6]
settling_eta = 0.1

[numerics]
h = 0.01
horizon = 10
n_phi = 6
delta = 1

[seed]
value = 101
)"},
    {"unstable",
     "Scalar exponential growth; the certificate is refuted and triage labels it unstable.",
     R"(
[system]
kind = linear-delay
a1 = [[1]]
a2 = [[0]]

[delay]
kind = constant
r = 0.1

[functional]
p = [[1]]

[alpha3]
kind = quadratic
coeff = 2

[checks]
certificate = true
classify = true

[numerics]
h = 0.01
horizon = 10
n_phi = 6
delta = 1

[seed]
value = 102
)"},
    {"delayed_stable",
     "Delay-dominant scalar system with a step-varying delay in [0.1, 0.5]; full check suite.",
     R"(
[system]
kind = linear-delay
a1 = [[-2]]
a2 = [[1]]

[delay]
kind = piecewise-constant
r1 = 0.1
r2 = 0.5
breakpoints = [0.7, 1.4, 2.1, 2.8, 3.5, 4.2, 4.9, 5.6, 6.3, 7.0]
values = [0.1, 0.5, 0.1, 0.5, 0.1, 0.5, 0.1, 0.5, 0.1, 0.5, 0.1]

[functional]
p = [[1]]
q = [[1]]
span = 0.5

[alpha3]
kind = quadratic
coeff = 0.5

[checks]
certificate = true
classify = true
probe_eps = [1.0]
settling_eta = 0.1

[numerics]
h = 0.01
horizon = 10
n_phi = 6
delta = 1

[seed]
value = 103
)"},
    {"glitched_delay",
     "The delayed_stable dynamics with short delay glitches of total measure 1e-3 overriding the "
     "step delay.",
     R"(
[system]
kind = linear-delay
a1 = [[-2]]
a2 = [[1]]

[delay]
kind = glitched
r1 = 0.1
r2 = 0.5
breakpoints = [0.7, 1.4, 2.1, 2.8, 3.5, 4.2, 4.9, 5.6, 6.3, 7.0]
values = [0.1, 0.5, 0.1, 0.5, 0.1, 0.5, 0.1, 0.5, 0.1, 0.5, 0.1]
glitch_value = 0.45
glitch_measure = 1e-3
glitch_count = 2
glitch_window = [0.5, 9.5]
glitch_seed = 4242

[functional]
p = [[1]]
q = [[1]]
span = 0.5

[alpha3]
kind = quadratic
coeff = 0.5

[checks]
certificate = true
classify = true

[numerics]
h = 0.01
horizon = 10
n_phi = 6
delta = 1

[seed]
value = 104
)"},
    {"distributed_dissipative",
     "Scalar system with a decaying distributed-delay kernel and disturbance injection; finite-gain "
     "dissipation check at gamma = 2.",
     R"(
[system]
kind = distributed
a1 = [[-1]]
kernel = exponential
kernel_matrix = [[-0.3]]
kernel_rate = 1
d1 = [[1]]
w_kind = decaying-exponential
w_amplitude = 1
w_rate = 1
z_c1 = [[1]]

[delay]
kind = constant
r = 1

[functional]
p = [[1]]
r_weight = [[0.12]]
span = 1

[checks]
certificate = false
dissipativity = l2-gain
gamma = 2

[numerics]
h = 0.01
horizon = 10
n_phi = 6
delta = 1

[seed]
value = 105
)"},
};

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& p : kPresets) out.push_back(p.name);
    return out;
  }();
  return names;
}

bool is_preset(const std::string& name) {
  for (const auto& p : kPresets) {
    if (name == p.name) return true;
  }
  return false;
}

std::string preset_description(const std::string& name) {
  for (const auto& p : kPresets) {
    if (name == p.name) return p.description;
  }
  throw ConfigError("unknown scenario preset: " + name);
}

Config preset_config(const std::string& name) {
  for (const auto& p : kPresets) {
    if (name == p.name) return Config::parse_string(p.text, name);
  }
  throw ConfigError("unknown scenario preset: " + name);
}

std::string describe_scenario(const Config& cfg, const std::string& name) {
  Assembled a = assemble(cfg);
  std::ostringstream out;
  out << "scenario " << name << " (hash " << hex64(scenario_hash(cfg)) << ")\n";
  out << "effective settings:\n";
  for (const auto& [section, kv] : a.effective.items()) {
    out << "  [" << section << "]\n";
    for (const auto& [key, value] : kv.items()) {
      // Strings print bare so the block round-trips through the config parser.
      out << "  " << key << " = "
          << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
    }
  }
  out << "checks: certificate=" << (a.plan.certificate ? "on" : "off")
      << ", classify=" << (a.plan.classify ? "on" : "off")
      << ", probe=" << (a.plan.probe_eps.empty() ? "off" : "on")
      << ", settling=" << (a.plan.settling_eta ? "on" : "off")
      << ", dissipativity=" << a.plan.dissipativity << "\n";
  return out.str();
}

}  // namespace fdecert
