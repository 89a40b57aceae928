#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hrbound/catalog.hpp"

namespace hrbound {

struct RequestEvent {
  double time;
  ObjectId object;

  friend bool operator==(const RequestEvent&, const RequestEvent&) = default;
};

/// Environment state change of an MMPP; the first entry (time 0) gives X(0).
struct StateChange {
  double time;
  std::uint32_t state;
};

/// On/off transition of one object's modulating process.
struct OnOffSwitch {
  double time;
  ObjectId object;
  bool on;
};

/// Realized shot of a shot-noise object: birth time and volume V_i.
/// Objects born after the horizon have birth = +inf.
struct Shot {
  double birth;
  double volume;
};

/// Time-ordered superposition of all objects' requests, plus whatever
/// modulation record the traffic model produced.
struct RequestTrace {
  std::vector<RequestEvent> events;
  /// Time origin: ages of objects not yet requested are measured from here.
  double start = 0.0;
  double horizon = 0.0;

  std::vector<StateChange> state_path;  ///< MMPP only
  std::vector<std::uint8_t> initial_on;  ///< on-off only, one flag per object
  std::vector<OnOffSwitch> switches;     ///< on-off only, time-ordered
  std::vector<Shot> shots;               ///< shot noise only, one per object

  std::size_t size() const noexcept { return events.size(); }
};

/// Spacing added to break exact time ties.
inline constexpr double kTieJitter = 1e-12;

/// Sorts events by (time, object) and enforces strictly increasing times by
/// nudging tied events forward by kTieJitter (or one ulp where the jitter is
/// below the time resolution). Returns the number of nudged events.
std::size_t canonicalize(std::vector<RequestEvent>& events);

/// Keeps the first `count` events and drops modulation records after the
/// last kept event; the horizon becomes the time of the last kept event.
void truncate_requests(RequestTrace& trace, std::size_t count);

/// Number of leading requests excluded from hit accounting.
std::size_t warmup_count(std::size_t requests, double warmup_fraction);

}  // namespace hrbound
