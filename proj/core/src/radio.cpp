#include "mrsdn/radio.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mrsdn::radio {

void RadioParams::validate() const {
  if (!(lte_cell_capacity_mbps > 0.0) || !(lte_per_user_rate_mbps > 0.0) ||
      !(wlan_phy_rate_mbps > 0.0) || !(video_rate_mbps > 0.0)) {
    throw std::invalid_argument("RadioParams: all rates must be > 0");
  }
  if (!(wlan_mac_efficiency > 0.0) || wlan_mac_efficiency > 1.0) {
    throw std::invalid_argument("RadioParams: wlan_mac_efficiency must be in (0,1]");
  }
}

double path_loss_db(double r_km) {
  if (!(r_km > 0.0)) {
    throw std::invalid_argument("path_loss_db: distance must be > 0");
  }
  return 128.1 + 37.6 * std::log10(r_km);
}

double rx_power_dbm(double tx_dbm, double r_km) {
  return tx_dbm - path_loss_db(r_km);
}

int lte_capacity_users(const RadioParams& params, double reserved_fraction,
                       double per_user_mbps) {
  if (reserved_fraction < 0.0 || reserved_fraction > 1.0) {
    throw std::invalid_argument("lte_capacity_users: fraction outside [0,1]");
  }
  if (!(per_user_mbps > 0.0)) {
    throw std::invalid_argument("lte_capacity_users: per_user must be > 0");
  }
  // Epsilon guard so exact ratios (50/5, 15/0.4) are not floored away by
  // binary rounding.
  const double slots =
      params.lte_cell_capacity_mbps * reserved_fraction / per_user_mbps;
  return static_cast<int>(std::floor(slots + 1e-9));
}

double wlan_effective_capacity_mbps(const RadioParams& params) {
  params.validate();
  return params.wlan_phy_rate_mbps * params.wlan_mac_efficiency;
}

double wlan_mean_latency_s(double offered_load_mbps, double capacity_mbps,
                           double packet_bits) {
  if (offered_load_mbps < 0.0) {
    throw std::invalid_argument("wlan_mean_latency_s: negative offered load");
  }
  if (!(capacity_mbps > 0.0) || !(packet_bits > 0.0)) {
    throw std::invalid_argument("wlan_mean_latency_s: capacity and packet size must be > 0");
  }
  const double rho = offered_load_mbps / capacity_mbps;
  if (rho >= 1.0) return std::numeric_limits<double>::infinity();
  const double service_s = packet_bits / (capacity_mbps * 1e6);
  return service_s / (1.0 - rho);
}

}  // namespace mrsdn::radio
