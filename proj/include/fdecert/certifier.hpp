#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fdecert/comparison.hpp"
#include "fdecert/integrator.hpp"
#include "fdecert/krasovskii.hpp"
#include "fdecert/model.hpp"

namespace fdecert {

/**
 * Three-way outcome of a certification check. A measured violation smaller
 * than the tolerance band is reported as Inconclusive rather than Violation:
 * at that magnitude the discretization, not the system, is the likely cause.
 */
enum class CheckStatus { Pass, Inconclusive, Violation };

const char* status_label(CheckStatus s);

/// Worst-of combination: Violation dominates, then Inconclusive.
CheckStatus combine(CheckStatus a, CheckStatus b);

struct TolerancePolicy {
  double abs_slack = 1e-9;
  double rel_slack = 1e-6;

  double band(double scale) const;

  /// excess <= 0: Pass. 0 < excess <= band(scale): Inconclusive. Above the
  /// band: Violation.
  CheckStatus judge(double excess, double scale) const;
};

struct CertifyParams {
  double delta = 1.0;          // initial-ball radius for sampled segments
  int n_bound_samples = 200;   // growth-bound random probes
  int n_phi = 12;              // initial segments per sampled check
  int knots = 16;              // nodes per random segment
  double horizon = 10.0;       // simulated run length
  double h = 1e-2;             // integrator step
  int ladder_rungs = 8;        // decrease windows per run (plus prefixes)
  double decrease_tol = -1.0;  // operator-level tolerance; < 0 picks 20 h^2
  std::uint64_t seed = 0x5eed;
  std::optional<double> eps_ref;  // fills the constants block when set
  std::optional<double> eta_ref;
  std::vector<double> t0_grid = {-1.0, 0.0, 2.5};  // start times for uniformity sweeps
  TolerancePolicy tol;
};

struct SandwichSample {
  double phi0_norm = 0.0;  // |phi(0)|_2
  double sup_norm = 0.0;   // sup over the segment of |phi|_2
  double value = 0.0;      // v(phi)
  double lower = 0.0;      // a1(phi0_norm)
  double upper = 0.0;      // a2(sup_norm)
  double excess = 0.0;     // max(lower - value, value - upper)
  CheckStatus status = CheckStatus::Pass;
};

struct DecreaseRun {
  std::size_t phi_index = 0;
  bool blew_up = false;
  DecreaseReport report;
  CheckStatus status = CheckStatus::Pass;
};

/// Proof-constant chain for reference radii: delta(eps) for the uniform
/// bound, eps(eta) and the cycle count kappa with settling horizon
/// beta = 2 kappa r for the reach-and-stay bound.
struct ConstantsBlock {
  bool available = false;
  StabilityConstants values;
  double c_at_delta = 0.0;
  double r_used = 0.0;
};

struct CertificateReport {
  CheckStatus status = CheckStatus::Pass;

  BoundCheckResult bound;
  CheckStatus bound_status = CheckStatus::Pass;

  std::vector<SandwichSample> sandwich;
  CheckStatus sandwich_status = CheckStatus::Pass;
  double sandwich_worst = 0.0;

  std::vector<DecreaseRun> decrease;
  CheckStatus decrease_status = CheckStatus::Pass;
  double decrease_worst = 0.0;     // worst deficit beyond the allowance
  double decrease_tol_used = 0.0;

  LipschitzCheckResult lipschitz;
  CheckStatus lipschitz_status = CheckStatus::Pass;

  ConstantsBlock constants;
};

/// "certified-GUAS-evidence" when every check passed, "refuted" on any
/// violation, "inconclusive" otherwise. Evidence wording is deliberate:
/// sampling cannot establish the universally quantified claims.
const char* certificate_verdict(const CertificateReport& rep);

/**
 * Full certificate pass for one system/functional pair: growth bound on
 * random segments, sandwich inequalities on random segments, integrated
 * decrease along simulated runs, increment consistency of the computed
 * trajectories, and the derived proof constants. All sampling is replayable
 * from params.seed.
 */
CertificateReport stability_certificate(const CaratheodoryRHS& rhs, const QuadraticFunctional& v,
                                        const KInfFn& a3, const CertifyParams& params);

/// Window ladder over [t0 + span, end] with every endpoint snapped to the
/// trajectory mesh, as used by the certificate's decrease pass.
std::vector<std::pair<double, double>> certified_window_ladder(const Trajectory& traj, double span,
                                                               int rungs);

struct ProbeLevel {
  double eps = 0.0;
  double delta = 0.0;   // delta(eps) derived from the sandwich
  double margin = 0.0;  // a1(eps) - a2(delta), must be positive
};

struct StabilityProbeRow {
  double eps = 0.0;
  double t0 = 0.0;
  std::size_t phi_index = 0;
  double phi_sup = 0.0;
  double peak_norm = 0.0;
  double ratio = 0.0;  // peak_norm / eps
  bool blew_up = false;
  CheckStatus status = CheckStatus::Pass;
};

struct StabilityProbeReport {
  CheckStatus status = CheckStatus::Pass;
  double worst_ratio = 0.0;
  std::vector<ProbeLevel> levels;
  std::vector<StabilityProbeRow> rows;
};

/**
 * Empirical face of the uniform bound, swept over radii and start times:
 * trajectories started inside the delta(eps)-ball must keep |x(t)|_2 below
 * eps regardless of t0. Each level re-checks the defining inequality
 * a2(delta) < a1(eps) with the numbers actually used.
 */
StabilityProbeReport uniform_stability_probe(const CaratheodoryRHS& rhs,
                                             const QuadraticFunctional& v,
                                             const std::vector<double>& eps_list,
                                             const CertifyParams& params);

struct SettlingRow {
  std::size_t phi_index = 0;
  double phi_sup = 0.0;
  bool settled = false;
  // Elapsed time from t0 until the whole history window stays inside the
  // eta-ball (pointwise entry time plus one memory span).
  double settle_time = 0.0;
  CheckStatus status = CheckStatus::Pass;
};

struct SettlingReport {
  CheckStatus status = CheckStatus::Pass;
  SettlingBound bound;
  double eta = 0.0;
  double delta = 0.0;
  double horizon_used = 0.0;
  bool capped = false;          // beta exceeded the simulation cap
  double worst_settle = 0.0;    // max over rows of settle_time - t0
  double conservativeness = 0.0;  // beta / worst_settle
  std::vector<SettlingRow> rows;
};

/**
 * Settling-time consistency: the derived horizon beta must cover the
 * observed time for |x|_2 to enter and stay inside the eta-ball, for runs
 * started inside the delta-ball. Simulation is capped at 1e4 * r; a bound
 * beyond the cap that the runs nevertheless satisfy within the cap still
 * passes, while a run that has not settled by the cap is inconclusive.
 */
SettlingReport settling_consistency(const CaratheodoryRHS& rhs, const QuadraticFunctional& v,
                                    const KInfFn& a3, double eta, const CertifyParams& params);

struct ClassifyProbe {
  double delta = 0.0;  // ball radius the segment was drawn from
  double t0 = 0.0;
  std::size_t phi_index = 0;
  double start_sup = 0.0;
  double peak_norm = 0.0;
  double end_sup = 0.0;  // sup over the trailing tenth of the run
  bool blew_up = false;
};

struct ClassifyCell {
  double eps = 0.0;
  double t0 = 0.0;
  double delta_star = 0.0;  // largest sampled delta keeping every run below eps
};

struct ClassifyReport {
  // One of: "unstable", "stable-evidence", "uniform-stable-evidence",
  // "GUAS-evidence", "inconclusive".
  std::string verdict;
  bool any_blowup = false;
  bool uniform = true;  // delta_star independent of t0 at every eps
  bool decaying = true; // trailing sup at most a tenth of the starting sup
  std::vector<ClassifyProbe> probes;
  std::vector<ClassifyCell> cells;
};

/**
 * Purely empirical triage, no functional involved. For each start radius
 * delta in a grid and each start time, trajectories are sampled and their
 * peaks recorded; each (eps, t0) cell then reports the largest delta whose
 * runs all stayed below eps. Blow-up or thousandfold growth is labeled
 * unstable; containment that is insensitive to t0 earns the uniform label,
 * and decay on top of that the GUAS label. Evidence labels, not proofs.
 */
ClassifyReport classify_behavior(const CaratheodoryRHS& rhs, const CertifyParams& params);

}  // namespace fdecert
