#include "mrsdn/event_queue.hpp"

#include <stdexcept>

namespace mrsdn::sim {

const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::UserArrival: return "UserArrival";
    case EventKind::UserDeparture: return "UserDeparture";
    case EventKind::MessageDelivery: return "MessageDelivery";
    case EventKind::MetricSample: return "MetricSample";
    case EventKind::SimEnd: return "SimEnd";
  }
  return "?";
}

EventHandle EventQueue::schedule(double time, EventKind kind,
                                 std::function<void()> action) {
  if (time < clock_) {
    throw std::invalid_argument("EventQueue::schedule: event time " +
                                std::to_string(time) + " is before clock " +
                                std::to_string(clock_));
  }
  Event ev;
  ev.time = time;
  ev.seq = next_seq_++;
  ev.kind = kind;
  ev.action = std::move(action);
  const EventHandle handle = ev.seq;
  cancelled_.push_back(false);
  heap_.push(std::move(ev));
  return handle;
}

bool EventQueue::cancel(EventHandle handle) {
  if (handle >= cancelled_.size() || cancelled_[handle]) return false;
  cancelled_[handle] = true;
  ++cancelled_pending_;
  return true;
}

std::uint64_t EventQueue::run_until(double t_end) {
  if (t_end < clock_) {
    throw std::invalid_argument("EventQueue::run_until: t_end before clock");
  }
  std::uint64_t dispatched = 0;
  while (!heap_.empty() && heap_.top().time <= t_end) {
    Event ev = heap_.top();
    heap_.pop();
    if (cancelled_[ev.seq]) {
      --cancelled_pending_;
      continue;
    }
    clock_ = ev.time;
    if (ev.action) ev.action();
    ++dispatched;
    if (post_dispatch_) post_dispatch_(ev);
  }
  clock_ = t_end;
  return dispatched;
}

}  // namespace mrsdn::sim
