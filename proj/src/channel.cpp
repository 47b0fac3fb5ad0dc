#include "fdsched/channel.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fdsched {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double ratio) { return 10.0 * std::log10(ratio); }
double dbm_to_mw(double dbm) { return db_to_linear(dbm); }
double mw_to_dbm(double mw) { return linear_to_db(mw); }

double free_space_k(double carrier_hz) {
  const double lambda = kSpeedOfLight / carrier_hz;
  const double a = lambda / (4.0 * std::numbers::pi);
  return a * a;
}

namespace {
double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
}  // namespace

double AntennaModel::g0_db() const {
  const double s = 1.6162 / std::sin(deg_to_rad(theta_3db_deg) / 2.0);
  return 10.0 * std::log10(s * s);
}

double AntennaModel::gsl_db() const { return -0.4111 * std::log(theta_3db_deg) - 10.579; }

void AntennaModel::validate() const {
  if (!(theta_3db_deg > 0.0) || !(theta_ml_deg() <= 360.0))
    throw std::invalid_argument("antenna: theta_3db_deg must lie in (0, 138.46], got " +
                                std::to_string(theta_3db_deg));
}

void ChannelParams::validate() const {
  if (!(pt_mw > 0.0)) throw std::invalid_argument("channel: pt_mw must be > 0");
  if (!(w_hz > 0.0)) throw std::invalid_argument("channel: w_hz must be > 0");
  if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("channel: eta must lie in (0, 1)");
  if (!(path_loss_exp > 0.0)) throw std::invalid_argument("channel: path_loss_exp must be > 0");
  if (!(k_factor > 0.0)) throw std::invalid_argument("channel: k_factor must be > 0");
  if (!(rho >= 0.0)) throw std::invalid_argument("channel: rho must be >= 0");
  if (!std::isfinite(n0_dbm_per_mhz))
    throw std::invalid_argument("channel: n0_dbm_per_mhz must be finite");
  antenna.validate();
}

double ChannelParams::noise_power_mw() const {
  return dbm_to_mw(n0_dbm_per_mhz + 10.0 * std::log10(w_hz / 1e6));
}

double antenna_gain_db(const AntennaModel& model, double theta_deg) {
  if (!(theta_deg >= 0.0 && theta_deg <= 180.0))
    throw std::domain_error("antenna_gain_db: angle out of [0, 180]: " +
                            std::to_string(theta_deg));
  if (theta_deg <= model.theta_ml_deg() / 2.0) {
    const double x = 2.0 * theta_deg / model.theta_3db_deg;
    return model.g0_db() - 3.01 * x * x;
  }
  return model.gsl_db();
}

double boresight_offset_deg(const Point& tx, const Point& aim, const Point& probe) {
  const Eigen::Vector2d u = aim - tx;
  const Eigen::Vector2d v = probe - tx;
  if (u.squaredNorm() == 0.0 || v.squaredNorm() == 0.0)
    throw std::domain_error("boresight_offset: coincident points");
  const double cross = u.x() * v.y() - u.y() * v.x();
  const double rad = std::atan2(std::abs(cross), u.dot(v));
  return std::clamp(rad * 180.0 / std::numbers::pi, 0.0, 180.0);
}

double received_power_mw(const ChannelParams& params, const Point& tx, const Point& tx_aim,
                         const Point& rx, const Point& rx_aim) {
  const double gt_db = antenna_gain_db(params.antenna, boresight_offset_deg(tx, tx_aim, rx));
  const double gr_db = antenna_gain_db(params.antenna, boresight_offset_deg(rx, rx_aim, tx));
  const double d = (rx - tx).norm();
  return params.k_factor * params.pt_mw * db_to_linear(gt_db + gr_db) *
         std::pow(d, -params.path_loss_exp);
}

}  // namespace fdsched
