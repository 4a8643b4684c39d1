#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace beam {

// ---------------------------------------------------------------------------
// Damping laws. The damping force acts on the velocity field pointwise.
// ---------------------------------------------------------------------------

/// c·x + d·|x|·x. Linear part dominates for small velocities, quadratic
/// drag for large ones.
struct LinearPlusQuadratic {
  double c{1.0};
  double d{1.0};
};

/// delta·|x|^(p-2)·x with p >= 2. p = 2 is linear damping.
struct PowerLaw {
  double delta{1.0};
  double p{2.0};
};

using DampingLaw = std::variant<LinearPlusQuadratic, PowerLaw>;

double damping_force(const DampingLaw& law, double x);

/// Derivative of the damping force. At x = 0 the right-hand value is used,
/// which for PowerLaw with 2 < p < 3 is the limit 0 and for p = 2 is delta.
double damping_slope(const DampingLaw& law, double x);

// ---------------------------------------------------------------------------
// Restoring laws. Each variant supplies the potential density f2, the force
// F2 = f2' and the stiffness F2' = f2''.
// ---------------------------------------------------------------------------

struct ZeroRestoring {};

/// f2 = kappa·x²/2
struct LinearRestoring {
  double kappa{1.0};
};

/// f2 = kappa·x⁴/4
struct CubicRestoring {
  double kappa{1.0};
};

/// One-sided hanger law: resists positive deflection only. The kinked
/// kappa/2·max(x,0)² is smoothed to f2 = kappa/2·(eps·softplus(x/eps))², which
/// is C∞, convex and nonnegative. Its force vanishes only as x → −∞.
struct SmoothedOneSided {
  double kappa{1.0};
  double eps{0.01};
};

using RestoringLaw =
    std::variant<ZeroRestoring, LinearRestoring, CubicRestoring, SmoothedOneSided>;

double restoring_potential(const RestoringLaw& law, double x);  // f2
double restoring_force(const RestoringLaw& law, double x);      // F2
double restoring_stiffness(const RestoringLaw& law, double x);  // F2'

/// Two-point discrete gradient (f2(b) − f2(a)) / (b − a), evaluated without
/// cancellation: closed forms for the polynomial laws, Gauss–Legendre mean of
/// F2 over [a, b] otherwise. Falls back to F2((a+b)/2) when
/// |b − a| <= threshold·max(1, |a|, |b|).
double restoring_discrete_gradient(const RestoringLaw& law, double a, double b,
                                   double threshold = 1e-12);

/// Point where F2 vanishes, or nullopt when it only vanishes in a limit.
std::optional<double> restoring_root(const RestoringLaw& law);

// ---------------------------------------------------------------------------
// Spatial fields (forcing and initial data). All are time independent.
// ---------------------------------------------------------------------------

struct ZeroField {};

/// amplitude·sin(mode·π·(x − a)/(b − a))
struct SineMode {
  double amplitude{1.0};
  int mode{1};
};

/// Values at the n_interior + 2 grid nodes x_0 = a, …, x_{n+1} = b.
struct NodalSamples {
  std::vector<double> values;
};

using SpatialField = std::variant<ZeroField, SineMode, NodalSamples>;
using Forcing = SpatialField;
using SpatialProfile = SpatialField;

struct BeamScenario {
  double a{0.0};
  double b{1.0};
  double mass{1.0};
  double rigidity{1.0};
  DampingLaw damping{LinearPlusQuadratic{1.0, 1.0}};
  RestoringLaw restoring{CubicRestoring{1.0}};
  Forcing forcing{SineMode{1.0, 1}};
  SpatialProfile u0{SineMode{0.5, 1}};
  SpatialProfile u1{ZeroField{}};
  double t_end{50.0};
  double dt{1e-3};

  double length() const { return b - a; }
};

bool operator==(const LinearPlusQuadratic&, const LinearPlusQuadratic&);
bool operator==(const PowerLaw&, const PowerLaw&);
bool operator==(const ZeroRestoring&, const ZeroRestoring&);
bool operator==(const LinearRestoring&, const LinearRestoring&);
bool operator==(const CubicRestoring&, const CubicRestoring&);
bool operator==(const SmoothedOneSided&, const SmoothedOneSided&);
bool operator==(const ZeroField&, const ZeroField&);
bool operator==(const SineMode&, const SineMode&);
bool operator==(const NodalSamples&, const NodalSamples&);
bool operator==(const BeamScenario&, const BeamScenario&);

// ---------------------------------------------------------------------------
// Hypothesis validation
// ---------------------------------------------------------------------------

enum class CheckStatus { Pass, Warn, Fail };

struct HypothesisCheck {
  std::string name;
  CheckStatus status{CheckStatus::Pass};
  std::string message;
};

struct ValidationReport {
  std::vector<HypothesisCheck> checks;

  bool accepted() const;
  /// Accepted when the listed check names are ignored.
  bool accepted_except(const std::vector<std::string>& ignored) const;
  const HypothesisCheck* find(const std::string& name) const;
  std::vector<std::string> failures() const;
};

/// Sample grid used for the convexity / monotonicity scans.
struct SampleGrid {
  double lo{-10.0};
  double hi{10.0};
  std::size_t points{4001};
};

/// Checks the hypotheses of the convergence theorem on sample grids. Never
/// throws; every failure is recorded in the report.
ValidationReport validate_scenario(const BeamScenario& s, const SampleGrid& grid = {});

std::string to_string(CheckStatus status);

}  // namespace beam
