#ifndef MRSDN_PLOTS_HPP
#define MRSDN_PLOTS_HPP

#include <string>
#include <vector>

namespace mrsdn::harness {

/// Render the result panels from a results CSV as SVG line charts with
/// mean +/- 95% CI across seeds. Scenario-1 rows produce fig_a (total
/// throughput vs lambda_d) and fig_b (data latency vs lambda_d);
/// scenario-2 rows produce fig_c (per-slice throughput vs lambda_d) and
/// fig_d (video blocking vs lambda_v). Returns the files written.
/// Throws on an empty CSV or a missing column (named in the message).
std::vector<std::string> emit_plots(const std::string& csv_path,
                                    const std::string& out_dir);

}  // namespace mrsdn::harness

#endif  // MRSDN_PLOTS_HPP
