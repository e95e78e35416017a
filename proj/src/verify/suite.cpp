// Copyright 2026 The nhgeo Authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <set>

#include "nhgeo/systems.hpp"
#include "nhgeo/verify.hpp"

namespace nhgeo::verify {

namespace {

constexpr double kFiberShift = 0.7;

struct CheckDef {
  const char* name;
  const char* statement;
};

// Sorted by name.
constexpr CheckDef kChecks[] = {
    {"constraint_preservation", "nonholonomic trajectories keep their velocity in D"},
    {"distance", "h-length of a short nonholonomic arc equals the h-distance of its ends"},
    {"energy_conservation", "nonholonomic trajectories conserve 1/2 g(v, v) + V"},
    {"equivalence", "the h-trajectory from the rescaled velocity, read at tau(t), is c(t)"},
    {"fiber_invariance", "gbar, C and dphi do not depend on the fiber representative"},
    {"h_energy_conservation", "h-trajectories with D initial data conserve 1/2 h(v, v) + V"},
    {"h_positive_definite", "h is symmetric positive definite at the sampled points"},
    {"horizontality", "h-trajectories with D initial data stay tangent to D"},
    {"metric_fiber_invariance", "g is invariant under fiber translations"},
    {"orthogonality", "h makes D orthogonal to the vertical bundle"},
    {"phi_analytic_match", "recovered dphi matches the differential of the attached phi"},
    {"phi_closedness", "recovered dphi is closed"},
    {"phi_constancy", "recovered phi differs from the attached phi by a constant"},
    {"phi_simplicity", "the gyroscopic tensor has the phi-simple pattern"},
    {"projection_property", "pi of an h-trajectory with D initial data solves the g_can dynamics"},
    {"psi_relatedness", "psi-bar maps exp(-phi) times the nonholonomic field to the h field"},
    {"submersion", "h on D agrees with g_can through the projection"},
    {"time_map_monotone", "the predicted time map is strictly increasing"},
};

const CheckDef& def(const std::string& name) {
  for (const CheckDef& d : kChecks)
    if (name == d.name) return d;
  fail(ErrorCode::invalid_argument, "unknown check '" + name + "'");
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

std::mt19937_64 stream(std::uint64_t seed, std::uint64_t purpose) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(purpose)};
  return std::mt19937_64(seq);
}

Vector random_base_velocity(std::mt19937_64& rng, std::size_t m, double scale) {
  chaplygin::SampleBox box{Vector(m, -scale), Vector(m, scale)};
  return box.sample(rng);
}

Vector scaled(Vector v, double s) {
  for (double& x : v) x *= s;
  return v;
}

using Details = std::vector<std::pair<std::string, double>>;

struct Outcome {
  double residual = 0.0;
  Details details;
};

class Recorder {
 public:
  Recorder(const BundleSystem& sys, const SuiteConfig& config) : sys_(sys), config_(config) {}

  double tolerance(const std::string& name) const {
    auto it = config_.tolerances.find(name);
    return it != config_.tolerances.end() ? it->second : default_tolerance(name, sys_.name());
  }

  // Runs `body`, which fills outcomes for every name in `names`. A thrown
  // library error marks all of them failed with the message as note.
  void group(const std::vector<std::string>& names,
             const std::function<void(std::map<std::string, Outcome>&)>& body) {
    std::map<std::string, Outcome> outcomes;
    std::string note;
    try {
      body(outcomes);
    } catch (const Error& e) {
      note = std::string(to_string(e.code())) + ": " + e.what();
    }
    for (const std::string& name : names) {
      CheckResult r;
      r.name = name;
      r.statement = def(name).statement;
      r.tolerance = tolerance(name);
      if (note.empty()) {
        Outcome& o = outcomes.at(name);
        r.residual = o.residual;
        r.details = std::move(o.details);
        r.pass = std::isfinite(r.residual) && r.residual <= r.tolerance;
      } else {
        r.residual = std::numeric_limits<double>::quiet_NaN();
        r.note = note;
      }
      results_.push_back(std::move(r));
    }
  }

  std::vector<CheckResult> take() {
    std::sort(results_.begin(), results_.end(),
              [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
    return std::move(results_);
  }

 private:
  const BundleSystem& sys_;
  const SuiteConfig& config_;
  std::vector<CheckResult> results_;
};

}  // namespace

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const CheckDef& d : kChecks) out.emplace_back(d.name);
    return out;
  }();
  return names;
}

double default_tolerance(const std::string& check, const std::string& system) {
  (void)def(check);
  const bool disk = system == "vertical-disk";
  static const std::map<std::string, double> base{
      {"constraint_preservation", 1e-8}, {"distance", 1e-4},
      {"energy_conservation", 1e-8},     {"equivalence", 1e-5},
      {"fiber_invariance", 1e-8},        {"h_energy_conservation", 1e-8},
      {"h_positive_definite", 0.0},      {"horizontality", 1e-7},
      {"metric_fiber_invariance", 1e-10}, {"orthogonality", 1e-10},
      {"phi_analytic_match", 1e-7},      {"phi_closedness", 1e-5},
      {"phi_constancy", 1e-5},           {"phi_simplicity", 1e-6},
      {"projection_property", 1e-6},     {"psi_relatedness", 1e-6},
      {"submersion", 1e-10},             {"time_map_monotone", 0.0},
  };
  if (disk && (check == "equivalence" || check == "psi_relatedness")) return 1e-8;
  return base.at(check);
}

void validate(const SuiteConfig& config) {
  config.stepper.validate();
  for (const auto& [name, value] : config.tolerances) {
    (void)def(name);
    if (!(value >= 0.0) || !std::isfinite(value))
      fail(ErrorCode::invalid_argument, "tolerance for '" + name + "' must be finite and >= 0");
  }
  if (config.sample_points == 0 || config.trajectories == 0 || config.psi_states == 0)
    fail(ErrorCode::invalid_argument, "sample counts must be positive");
  if (!(config.conservation_horizon > 0.0) || !(config.equivalence_horizon > 0.0) ||
      !(config.t_small > 0.0))
    fail(ErrorCode::invalid_argument, "horizons must be positive");
}

bool VerificationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

const CheckResult* VerificationReport::find(const std::string& name) const {
  for (const CheckResult& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

namespace {

// Left translation by Rx(0.1) keeps the sampled beta inside the chart.
std::vector<std::pair<std::string, double>> left_invariance_defects(const BundleSystem& sys,
                                                                    const std::vector<Vector>& points) {
  constexpr double kAngle = 0.1;
  const geometry::MetricField h = chaplygin::principal_metric(sys);
  double dg = 0.0, dh = 0.0, used = 0.0;
  for (const Vector& q : points) {
    try {
      dg = std::max(dg, systems::veselova_left_translation_defect(sys.metric(), q, kAngle));
      dh = std::max(dh, systems::veselova_left_translation_defect(h, q, kAngle));
      used += 1.0;
    } catch (const Error&) {
      // Image left the chart; skip the point.
    }
  }
  return {{"g_left_translation_defect", dg}, {"h_left_translation_defect", dh}, {"left_translation_points", used}};
}

}  // namespace

VerificationReport run_suite(const BundleSystem& sys, const SuiteConfig& config) {
  validate(config);
  const std::size_t n = sys.dim();
  const std::size_t m = sys.base_dim();
  const auto& stepper = config.stepper;
  const bool analytic = sys.analytic_phi().has_value();

  // Seeded samples, one stream per purpose so counts can change independently.
  std::vector<Vector> points;
  {
    auto rng = stream(config.seed, 1);
    for (std::size_t i = 0; i < config.sample_points; ++i) points.push_back(sys.sample_box().sample(rng));
  }
  std::vector<Vector> traj_q, traj_v;
  {
    auto rng = stream(config.seed, 2);
    for (std::size_t i = 0; i < config.trajectories; ++i) {
      traj_q.push_back(sys.trajectory_box().sample(rng));
      const Vector w = random_base_velocity(rng, m, sys.speed_scale());
      traj_v.push_back(chaplygin::horizontal_lift(sys, traj_q.back(), w));
    }
  }
  std::vector<Vector> psi_q, psi_v;
  {
    auto rng = stream(config.seed, 3);
    for (std::size_t i = 0; i < config.psi_states; ++i) {
      psi_q.push_back(sys.sample_box().sample(rng));
      const Vector w = random_base_velocity(rng, m, sys.speed_scale());
      psi_v.push_back(chaplygin::horizontal_lift(sys, psi_q.back(), w));
    }
  }
  std::vector<std::pair<Vector, Vector>> base_pairs;
  {
    auto rng = stream(config.seed, 4);
    for (std::size_t i = 0; i < config.sample_points; ++i) {
      Vector a = random_base_velocity(rng, m, 1.0);
      Vector b = random_base_velocity(rng, m, 1.0);
      base_pairs.emplace_back(std::move(a), std::move(b));
    }
  }

  Recorder rec(sys, config);

  rec.group({"phi_simplicity", "phi_closedness"}, [&](auto& out) {
    double simple = 0.0, curl = 0.0;
    for (const Vector& q : points) {
      const Vector qbar = sys.project(q);
      simple = std::max(simple, chaplygin::dphi_fit(sys, qbar).residual);
      curl = std::max(curl, chaplygin::dphi_curl(sys, qbar));
    }
    out["phi_simplicity"] = {simple, {{"points", double(points.size())}}};
    out["phi_closedness"] = {curl, {{"points", double(points.size())}}};
  });

  if (analytic) {
    rec.group({"phi_analytic_match", "phi_constancy"}, [&](auto& out) {
      const geometry::ScalarField& phi = *sys.analytic_phi();
      chaplygin::PhiOptions recovered;
      recovered.source = chaplygin::PhiSource::recovered;
      recovered.threshold = std::numeric_limits<double>::infinity();
      recovered.check_closedness = false;
      double match = 0.0;
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      for (const Vector& q : points) {
        const Vector qbar = sys.project(q);
        match = std::max(match, max_abs_diff(chaplygin::dphi_fit(sys, qbar).dphi, phi.differential(qbar)));
        const double gap =
            chaplygin::recover_phi(sys, sys.reference_base(), qbar, recovered) - phi(qbar);
        lo = std::min(lo, gap);
        hi = std::max(hi, gap);
      }
      out["phi_analytic_match"] = {match, {{"points", double(points.size())}}};
      out["phi_constancy"] = {hi - lo, {{"min_offset", lo}, {"max_offset", hi}}};
    });
  }

  rec.group({"submersion", "orthogonality", "h_positive_definite"}, [&](auto& out) {
    const geometry::MetricField h = chaplygin::principal_metric(sys);
    const geometry::MetricField gcan = chaplygin::canonical_metric(sys);
    double sub = 0.0, orth = 0.0, not_pd = 0.0;
    for (std::size_t k = 0; k < points.size(); ++k) {
      const Vector& q = points[k];
      const DenseMatrix hq = h(q);
      try {
        h.check_at(q);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::domain_error) throw;
        not_pd += 1.0;
      }
      const DenseMatrix gq = gcan(sys.project(q));
      const Vector u = chaplygin::horizontal_lift(sys, q, base_pairs[k].first);
      const Vector w = chaplygin::horizontal_lift(sys, q, base_pairs[k].second);
      const double ref = bilinear(gq, base_pairs[k].first, base_pairs[k].second);
      sub = std::max(sub, std::abs(bilinear(hq, u, w) - ref) / (1.0 + std::abs(ref)));
      for (std::size_t j = m; j < n; ++j) {
        Vector z(n, 0.0);
        z[j] = 1.0;
        const double scale = 1.0 + std::sqrt(bilinear(hq, u, u) * hq(j, j));
        orth = std::max(orth, std::abs(bilinear(hq, u, z)) / scale);
      }
    }
    out["submersion"] = {sub, {{"points", double(points.size())}}};
    out["orthogonality"] = {orth, {{"points", double(points.size())}}};
    out["h_positive_definite"] = {not_pd, {{"points", double(points.size())}}};
  });

  rec.group({"fiber_invariance", "metric_fiber_invariance"}, [&](auto& out) {
    double reduced = 0.0, metric = 0.0;
    for (const Vector& q : points) {
      const Vector qbar = sys.project(q);
      Vector shifted = q;
      for (std::size_t j = m; j < n; ++j) shifted[j] += kFiberShift;
      const DenseMatrix g_sec = chaplygin::reduced_metric(sys, qbar);
      reduced = std::max(reduced, max_abs(chaplygin::reduced_metric_at(sys, q) - g_sec));
      reduced = std::max(reduced, max_abs(chaplygin::reduced_metric_at(sys, shifted) - g_sec));
      const auto c_sec = chaplygin::gyroscopic_tensor(sys, qbar);
      const auto c_q = chaplygin::gyroscopic_tensor_at(sys, q);
      const auto c_s = chaplygin::gyroscopic_tensor_at(sys, shifted);
      reduced = std::max(reduced, max_abs_diff(c_q.coeff, c_sec.coeff));
      reduced = std::max(reduced, max_abs_diff(c_s.coeff, c_sec.coeff));
      if (m >= 2) {
        const Vector d_sec = chaplygin::recover_dphi(c_sec, std::numeric_limits<double>::infinity()).dphi;
        const Vector d_q = chaplygin::recover_dphi(c_q, std::numeric_limits<double>::infinity()).dphi;
        reduced = std::max(reduced, max_abs_diff(d_q, d_sec));
      }
      metric = std::max(metric, chaplygin::fiber_invariance_defect(sys, q, kFiberShift));
    }
    out["fiber_invariance"] = {reduced, {{"fiber_shift", kFiberShift}}};
    out["metric_fiber_invariance"] = {metric, {{"fiber_shift", kFiberShift}}};
  });

  const auto v_total = sys.potential_on_total();
  const geometry::ScalarField* v_ptr = v_total ? &*v_total : nullptr;

  rec.group({"constraint_preservation", "energy_conservation"}, [&](auto& out) {
    double viol = 0.0, drift = 0.0;
    for (std::size_t k = 0; k < traj_q.size(); ++k) {
      const Trajectory c =
          dynamics::integrate_nonholonomic(sys, traj_q[k], traj_v[k], config.conservation_horizon, stepper);
      viol = std::max(viol, dynamics::max_constraint_violation(sys, c));
      drift = std::max(drift, dynamics::max_relative_energy_drift(sys.metric(), v_ptr, c));
    }
    const Details d{{"T", config.conservation_horizon}, {"trajectories", double(traj_q.size())}};
    out["constraint_preservation"] = {viol, d};
    out["energy_conservation"] = {drift, d};
  });

  rec.group({"horizontality", "h_energy_conservation"}, [&](auto& out) {
    const geometry::MetricField h = chaplygin::principal_metric(sys);
    const geometry::ScalarField phi = chaplygin::phi_field(sys);
    double viol = 0.0, drift = 0.0;
    for (std::size_t k = 0; k < traj_q.size(); ++k) {
      const Vector w0 = scaled(traj_v[k], std::exp(-phi(sys.project(traj_q[k]))));
      const Trajectory gamma =
          dynamics::integrate_mechanical(h, v_ptr, traj_q[k], w0, config.conservation_horizon, stepper);
      viol = std::max(viol, dynamics::max_constraint_violation(sys, gamma));
      drift = std::max(drift, dynamics::max_relative_energy_drift(h, v_ptr, gamma));
    }
    const Details d{{"T", config.conservation_horizon}, {"trajectories", double(traj_q.size())}};
    out["horizontality"] = {viol, d};
    out["h_energy_conservation"] = {drift, d};
  });

  // Compared over the equivalence horizon and relative to 1 + |qbar|: h-time
  // runs much faster than system time where phi < 0, and base coordinates
  // can grow by orders of magnitude over long h-time spans.
  rec.group({"projection_property"}, [&](auto& out) {
    const geometry::MetricField h = chaplygin::principal_metric(sys);
    const geometry::MetricField gcan = chaplygin::canonical_metric(sys);
    const geometry::ScalarField phi = chaplygin::phi_field(sys);
    const geometry::ScalarField* vbar = sys.potential() ? &*sys.potential() : nullptr;
    const double horizon = config.equivalence_horizon;
    double proj = 0.0, absolute = 0.0;
    for (std::size_t k = 0; k < traj_q.size(); ++k) {
      const Vector w0 = scaled(traj_v[k], std::exp(-phi(sys.project(traj_q[k]))));
      const Trajectory gamma = dynamics::integrate_mechanical(h, v_ptr, traj_q[k], w0, horizon, stepper);
      const Trajectory base = dynamics::integrate_mechanical(gcan, vbar, sys.project(traj_q[k]),
                                                             sys.project(w0), horizon, stepper);
      for (std::size_t i = 0; i < gamma.size(); ++i) {
        const double t = std::min(gamma.times[i], base.times.back());
        const Vector p = sys.project(gamma.points[i]);
        const double gap = max_abs_diff(p, interpolate_point(base, t));
        absolute = std::max(absolute, gap);
        proj = std::max(proj, gap / (1.0 + max_abs(p)));
      }
    }
    out["projection_property"] = {proj, {{"T", horizon}, {"max_abs_gap", absolute}}};
  });

  rec.group({"equivalence", "time_map_monotone"}, [&](auto& out) {
    double res = 0.0, image = 0.0, identity = 0.0, tau_end = 0.0, non_monotone = 0.0;
    for (std::size_t k = 0; k < traj_q.size(); ++k) {
      const EquivalenceResult r =
          check_equivalence(sys, traj_q[k], traj_v[k], config.equivalence_horizon, stepper);
      res = std::max(res, r.residual);
      image = std::max(image, r.image_residual);
      identity = std::max(identity, r.identity_defect);
      tau_end = std::max(tau_end, r.tau_end);
      if (!r.tau_increasing) non_monotone += 1.0;
    }
    out["equivalence"] = {res,
                          {{"T", config.equivalence_horizon},
                           {"arclength_image_residual", image},
                           {"trajectories", double(traj_q.size())}}};
    out["time_map_monotone"] = {non_monotone, {{"max_abs_tau_minus_t", identity}, {"max_tau_end", tau_end}}};
  });

  rec.group({"psi_relatedness"}, [&](auto& out) {
    out["psi_relatedness"] = {check_psi_relatedness(sys, psi_q, psi_v),
                              {{"states", double(psi_q.size())}, {"epsilon", 1e-3}}};
  });

  rec.group({"distance"}, [&](auto& out) {
    // The length/distance identity concerns free motion; a potential is dropped.
    const bool drop = sys.potential().has_value();
    const BundleSystem free_sys = drop ? sys.with_potential(std::nullopt) : sys;
    const DistanceResult r =
        check_distance(free_sys, traj_q.front(), traj_v.front(), config.t_small, stepper);
    out["distance"] = {r.residual,
                       {{"potential_dropped", drop ? 1.0 : 0.0},
                        {"length", r.length},
                        {"distance", r.distance},
                        {"t_used", r.t_used},
                        {"halvings", double(r.halvings)},
                        {"newton_iterations", double(r.iterations)},
                        {"endpoint_error", r.endpoint_error}}};
  });

  VerificationReport report;
  report.system = sys.name();
  report.seed = config.seed;
  report.stepper = stepper;
  report.config = config;
  report.checks = rec.take();
  if (sys.name() == systems::kVeselova) report.diagnostics = left_invariance_defects(sys, points);
  return report;
}

}  // namespace nhgeo::verify
