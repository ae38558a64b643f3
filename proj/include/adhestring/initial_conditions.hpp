#pragma once

#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace adhestring {

// Initial-data families on [0, L]. ξ₀ scales the displacement shape and ξ₁
// the initial velocity.

/// u₀ = ξ₀(x³/3 − L x²/2), u₁ = ξ₁.
struct C2Cubic {
  double xi0, xi1;
};
/// u₀ = ξ₀ b c(x), u₁ = ξ₁.
struct C1Arc {
  double xi0, xi1, a;
};
/// u₀ = ξ₀(b c(x) − 1/2) + 1, u₁ = ξ₁. Places the kink of u₀″ at u = 1.
struct C1ArcShiftMiddle {
  double xi0, xi1, a;
};
/// u₀ = ξ₀(b c(x) + 1/2), u₁ = ξ₁.
struct C1ArcShiftHalf {
  double xi0, xi1, a;
};
/// u₀ as C1ArcShiftMiddle, u₁ = ξ₁ b c′(x).
struct C1ArcVelocity {
  double xi0, xi1, a;
};
/// u₀ = ξ₀ f_η(x), a parabola pair joined by a mollifying cap of half-width η.
struct MollifiedQuadratic {
  double xi0, xi1, eta;
};
struct Uniform {
  double u0, u1;
};
/// Linearly interpolated samples; `source` is the CSV path it was read from
/// (empty when built in memory).
struct Tabulated {
  std::vector<double> x, u0, u1;
  std::string source;
};

using IcFamily = std::variant<C2Cubic, C1Arc, C1ArcShiftMiddle, C1ArcShiftHalf, C1ArcVelocity,
                              MollifiedQuadratic, Uniform, Tabulated>;

class InitialCondition {
 public:
  /// Validates the family parameters against `length`; throws ParameterError.
  InitialCondition(IcFamily family, double length);

  const IcFamily& family() const noexcept { return family_; }
  double length() const noexcept { return length_; }

 private:
  IcFamily family_;
  double length_;
};

struct InitialValue {
  double u0;
  double u1;
};

/// Normalization constant of the arc family; requires a > L/2.
double eval_b(double a, double length);
/// Arc profile c(x) on [0, L]; the first branch is used at x = L/2.
double eval_c(double x, double a, double length);
/// Closed-form c′(x): a − √(a² − x²) left of L/2, a − √(a² − (L−x)²) right of it.
double eval_c_prime(double x, double a, double length);

/// Pointwise evaluation at x ∈ [0, L].
InitialValue evaluate(const InitialCondition& ic, double x);

struct SampledData {
  std::vector<double> u0;
  std::vector<double> u1;
};

SampledData sample_ic(const InitialCondition& ic, std::span<const double> x);

struct NeumannReport {
  double du0_left = 0.0;
  double du0_right = 0.0;
  double u1_left = 0.0;
  double u1_right = 0.0;
  bool u0_compliant = false;
  bool u1_compliant = false;
  bool compliant() const noexcept { return u0_compliant && u1_compliant; }
};

/// One-sided derivative estimates of u₀ and the values of u₁ at both ends,
/// flagged against `tolerance`. Non-compliance is reported, not rejected.
NeumannReport neumann_compatibility(const InitialCondition& ic, double tolerance);

/// Parses `c2:XI0,XI1`, `c1:XI0,XI1,A`, `c1mid:...`, `c1half:...`,
/// `c1vel:...`, `moll:XI0,XI1,ETA`, `uniform:U0,U1`, `file:PATH`.
InitialCondition parse_ic(std::string_view text, double length);
std::string to_string(const InitialCondition& ic);

/// Reads a 3-column CSV (x,u0,u1) with a header row.
Tabulated read_tabulated_csv(const std::string& path);

}  // namespace adhestring
