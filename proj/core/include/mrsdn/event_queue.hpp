#ifndef MRSDN_EVENT_QUEUE_HPP
#define MRSDN_EVENT_QUEUE_HPP

#include <cstdint>
#include <functional>
#include <queue>
#include <vector>

namespace mrsdn::sim {

enum class EventKind {
  UserArrival,
  UserDeparture,
  MessageDelivery,
  MetricSample,
  SimEnd,
};

const char* to_string(EventKind kind);

/// A timestamped simulation event. The action closure carries the
/// kind-specific payload; `kind` is kept for introspection and tracing.
struct Event {
  double time = 0.0;
  std::uint64_t seq = 0;  // tie-breaker: insertion order at equal time
  EventKind kind = EventKind::MessageDelivery;
  std::function<void()> action;
};

using EventHandle = std::uint64_t;

/// Deterministic discrete-event engine. Events are dispatched in
/// nondecreasing time order; equal timestamps dispatch in insertion order.
class EventQueue {
 public:
  double now() const { return clock_; }

  /// Enqueue an event. Throws std::invalid_argument if event.time < now()
  /// (a scheduling bug, never a recoverable condition).
  EventHandle schedule(double time, EventKind kind, std::function<void()> action);

  /// Cancel a pending event. Returns false if already dispatched/cancelled.
  bool cancel(EventHandle handle);

  /// Dispatch all events with time <= t_end, then advance the clock to
  /// t_end. Returns the number of events dispatched (cancelled events do
  /// not count). Throws std::invalid_argument if t_end < now().
  std::uint64_t run_until(double t_end);

  std::size_t pending() const { return heap_.size() - cancelled_pending_; }

  /// Invoked after every dispatched event (used by invariant sweeps).
  void set_post_dispatch_hook(std::function<void(const Event&)> hook) {
    post_dispatch_ = std::move(hook);
  }

 private:
  struct Ordering {
    bool operator()(const Event& a, const Event& b) const {
      if (a.time != b.time) return a.time > b.time;
      return a.seq > b.seq;
    }
  };

  double clock_ = 0.0;
  std::uint64_t next_seq_ = 0;
  std::priority_queue<Event, std::vector<Event>, Ordering> heap_;
  std::vector<bool> cancelled_;  // indexed by seq
  std::size_t cancelled_pending_ = 0;
  std::function<void(const Event&)> post_dispatch_;
};

}  // namespace mrsdn::sim

#endif  // MRSDN_EVENT_QUEUE_HPP
