// Radio primitives: directional antenna pattern, LOS link budget, Shannon rate.
//
// All power arithmetic is linear milliwatts; dB/dBm only appear at the
// conversion helpers below.
#ifndef FDSCHED_CHANNEL_HPP
#define FDSCHED_CHANNEL_HPP

#include <cmath>

#include <Eigen/Core>

namespace fdsched {

/// Planar position in meters.
using Point = Eigen::Vector2d;

inline constexpr double kSpeedOfLight = 299792458.0;

double db_to_linear(double db);
double linear_to_db(double ratio);
double dbm_to_mw(double dbm);
double mw_to_dbm(double mw);

/// (lambda / 4 pi)^2 for the given carrier.
double free_space_k(double carrier_hz);

/// Gaussian main lobe in linear scale with a flat sidelobe floor, fully
/// determined by the half-power beamwidth.
struct AntennaModel {
  double theta_3db_deg = 30.0;

  double theta_ml_deg() const { return 2.6 * theta_3db_deg; }
  double g0_db() const;
  double gsl_db() const;

  /// Throws std::invalid_argument unless 0 < theta_3db < 360/2.6.
  void validate() const;
};

struct ChannelParams {
  double pt_mw = 1000.0;
  double w_hz = 1200e6;
  double n0_dbm_per_mhz = -134.0;
  double eta = 0.5;
  double path_loss_exp = 2.0;
  double k_factor = free_space_k(60e9);
  double rho = 1.0;
  AntennaModel antenna;

  void validate() const;

  /// Thermal noise N0*W over the whole band, in mW.
  double noise_power_mw() const;
};

/// Gain in dB at `theta_deg` off boresight; theta must lie in [0, 180].
double antenna_gain_db(const AntennaModel& model, double theta_deg);

/// Angle at `tx` between the rays tx->aim and tx->probe, in degrees.
/// Throws std::domain_error on coincident points.
double boresight_offset_deg(const Point& tx, const Point& aim, const Point& probe);

/// k * Pt * Gt * Gr * d^-n with each antenna steered at its own aim point.
double received_power_mw(const ChannelParams& params, const Point& tx, const Point& tx_aim,
                         const Point& rx, const Point& rx_aim);

/// eta * W * log2(1 + signal / (noise + interference)).
inline double shannon_rate_bps(const ChannelParams& params, double signal_mw,
                               double noise_plus_interference_mw) {
  return params.eta * params.w_hz *
         std::log2(1.0 + signal_mw / noise_plus_interference_mw);
}

}  // namespace fdsched

#endif  // FDSCHED_CHANNEL_HPP
