#ifndef MRSDN_TRACE_HPP
#define MRSDN_TRACE_HPP

#include <ostream>
#include <string>
#include <vector>

namespace mrsdn::ctrl {

struct TraceRecord {
  double time = 0.0;
  std::string kind;
  std::string src;
  std::string dst;
  int ue_id = -1;
};

/// Controller-side per-message trace. One record per line, tab-separated:
/// time, kind, src, dst, ue_id. Streams to an ostream when attached;
/// in-memory retention is opt-in (tests) to keep long sweeps cheap.
class TraceLogger {
 public:
  void attach_stream(std::ostream* os) { stream_ = os; }
  void set_retain(bool retain) { retain_ = retain; }

  void log(double time, const std::string& kind, const std::string& src,
           const std::string& dst, int ue_id);

  const std::vector<TraceRecord>& records() const { return records_; }
  void clear() { records_.clear(); }

  /// Records for one UE, in log order.
  std::vector<TraceRecord> for_ue(int ue_id) const;

 private:
  std::ostream* stream_ = nullptr;
  bool retain_ = false;
  std::vector<TraceRecord> records_;
};

}  // namespace mrsdn::ctrl

#endif  // MRSDN_TRACE_HPP
