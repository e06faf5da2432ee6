#ifndef MRSDN_RADIO_HPP
#define MRSDN_RADIO_HPP

namespace mrsdn::radio {

/// Radio and traffic parameters. Tx powers, the LTE per-user rate, the
/// WLAN channel bit rate and the video rate follow the reference link
/// budget; the LTE cell capacity and the WLAN MAC efficiency are
/// configuration defaults (see README), not measured values.
struct RadioParams {
  double lte_tx_power_dbm = 46.0;
  double wlan_tx_power_dbm = 23.0;
  double ue_tx_power_dbm = 23.0;
  double lte_cell_capacity_mbps = 50.0;
  double lte_per_user_rate_mbps = 5.0;
  double wlan_phy_rate_mbps = 54.0;
  double wlan_mac_efficiency = 0.55;  // fraction of PHY rate usable as goodput
  double video_rate_mbps = 0.4;

  void validate() const;
};

/// Log-distance path loss, 128.1 + 37.6*log10(R), R in km. Throws for R <= 0.
double path_loss_db(double r_km);

/// Received power for a transmitter at distance R km.
double rx_power_dbm(double tx_dbm, double r_km);

/// Number of users a fraction of the LTE cell can carry at a fixed
/// per-user rate: floor(capacity * reserved_fraction / per_user).
int lte_capacity_users(const RadioParams& params, double reserved_fraction,
                       double per_user_mbps);

/// Usable WLAN goodput after MAC overhead.
double wlan_effective_capacity_mbps(const RadioParams& params);

/// M/M/1 mean sojourn time for a packet of `packet_bits` on a server of
/// `capacity_mbps`, at utilization rho = offered/capacity. Returns
/// +infinity when rho >= 1 (saturated).
double wlan_mean_latency_s(double offered_load_mbps, double capacity_mbps,
                           double packet_bits);

}  // namespace mrsdn::radio

#endif  // MRSDN_RADIO_HPP
