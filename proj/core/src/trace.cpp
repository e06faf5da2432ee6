#include "mrsdn/trace.hpp"

#include <cstdio>

namespace mrsdn::ctrl {

void TraceLogger::log(double time, const std::string& kind, const std::string& src,
                      const std::string& dst, int ue_id) {
  if (stream_ != nullptr) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", time);
    *stream_ << buf << '\t' << kind << '\t' << src << '\t' << dst << '\t';
    if (ue_id >= 0) {
      *stream_ << ue_id;
    } else {
      *stream_ << '-';
    }
    *stream_ << '\n';
  }
  if (retain_) {
    records_.push_back({time, kind, src, dst, ue_id});
  }
}

std::vector<TraceRecord> TraceLogger::for_ue(int ue_id) const {
  std::vector<TraceRecord> out;
  for (const TraceRecord& r : records_) {
    if (r.ue_id == ue_id) out.push_back(r);
  }
  return out;
}

}  // namespace mrsdn::ctrl
