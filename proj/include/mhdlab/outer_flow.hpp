#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

namespace mhdlab {

/// Cutoff profile: phi = 0 on [0, r0], phi = y on [2 r0, inf), joined on
/// [r0, 2 r0] by the unique degree-7 polynomial that makes phi C^3.
/// With s = (y - r0)/r0 the blend is r0 * (55 s^4 - 129 s^5 + 106 s^6 - 30 s^7).
class CutoffPhi {
 public:
  explicit CutoffPhi(double r0 = 1.0);

  double r0() const { return r0_; }
  /// d^k phi / dy^k at y >= 0, k in [0, 3].
  double eval(double y, int derivative = 0) const;
  /// All of phi, phi', phi'', phi''' at y.
  std::array<double, 4> eval_all(double y) const;

  /// Coefficients of s^4..s^7 of the blend polynomial.
  static constexpr std::array<double, 4> kBlend{55.0, -129.0, 106.0, -30.0};

 private:
  double r0_;
};

/// Scalar trace function of (t, x): offset + sum_k P_k(t) sin(k_k x - w_k t + phase_k)
/// with P_k a polynomial of degree <= 3. Closed under d_t and d_x, so every
/// mixed derivative is available analytically.
class TraceFunction {
 public:
  struct Mode {
    std::array<double, 4> poly{1.0, 0.0, 0.0, 0.0};  // P(t) = c0 + c1 t + c2 t^2 + c3 t^3
    double wavenumber = 0.0;
    double frequency = 0.0;
    double phase = 0.0;
  };

  TraceFunction() = default;
  static TraceFunction constant(double c);
  /// a * sin(k (x - c t) + phase) + offset
  static TraceFunction traveling(double amplitude, double k, double speed, double offset = 0.0,
                                 double phase = 0.0);

  TraceFunction& add_mode(const Mode& mode);
  TraceFunction& set_offset(double c);
  /// Multiplies the function (offset and all modes) by s.
  TraceFunction& scale(double s);

  /// d_t^nt d_x^nx f at (t, x).
  double eval(double t, double x, int nt = 0, int nx = 0) const;

  double offset() const { return offset_; }
  const std::vector<Mode>& modes() const { return modes_; }

 private:
  double offset_ = 0.0;
  std::vector<Mode> modes_;
};

/// Traces (U, Theta, H, P) of the outer ideal flow on top of the layer.
struct OuterFlow {
  TraceFunction U;
  TraceFunction Theta;
  TraceFunction H;
  TraceFunction P;

  OuterFlow& scale(double s);
};

/// Values of the traces and the derivatives the homogenized system needs at one (t, x).
struct FlowPoint {
  double U = 0, U_t = 0, U_x = 0;
  double Theta = 0, Theta_t = 0, Theta_x = 0;
  double H = 0, H_t = 0, H_x = 0;
  double P_x = 0;
};
FlowPoint eval_flow(const OuterFlow& flow, double t, double x);

namespace flow_presets {
OuterFlow zero();
OuterFlow constant(double U, double Theta, double H, double P = 0.0);
/// U = U0, H = H0 + a sin(k(x - U0 t)), Theta = T0 + b sin(k(x - U0 t)), P = H^2 / 2.
/// Satisfies the ideal matching conditions exactly.
OuterFlow traveling_pair(double U0, double H0, double a, double T0, double b, double k);
/// Steady U = H = c + a sin(k x), Theta and P constant.
OuterFlow steady_alfven(double c, double a, double k, double Theta0, double P0 = 0.0);
}  // namespace flow_presets

struct MatchingResiduals {
  std::vector<double> momentum;     // U_t + U U_x + P_x - H H_x
  std::vector<double> temperature;  // Theta_t + U Theta_x
  std::vector<double> induction;    // H_t + U H_x - H U_x
};
MatchingResiduals matching_residuals(const OuterFlow& flow, double t, std::span<const double> x_samples);

/// Truncated sup_t sum_{i <= max_order} ||d_t^i (U, Theta, H, P)(t)||_{H^{max_order - i}(T_x)},
/// a lower bound of M_0. x-quadrature uses n_quad uniform points.
double m0_estimate(const OuterFlow& flow, std::span<const double> t_samples, int max_order, int n_quad = 128);

/// min of Theta over the sample set (t_samples x uniform x points).
double min_theta(const OuterFlow& flow, std::span<const double> t_samples, int n_quad = 128);

}  // namespace mhdlab
