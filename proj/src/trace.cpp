#include "hrbound/trace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hrbound {

std::size_t canonicalize(std::vector<RequestEvent>& events) {
  std::sort(events.begin(), events.end(), [](const RequestEvent& a, const RequestEvent& b) {
    return a.time < b.time || (a.time == b.time && a.object < b.object);
  });
  std::size_t nudged = 0;
  for (std::size_t k = 1; k < events.size(); ++k) {
    const double prev = events[k - 1].time;
    if (events[k].time <= prev) {
      events[k].time = std::max(prev + kTieJitter, std::nextafter(prev, std::numeric_limits<double>::infinity()));
      ++nudged;
    }
  }
  return nudged;
}

void truncate_requests(RequestTrace& trace, std::size_t count) {
  if (count >= trace.events.size()) return;
  trace.events.resize(count);
  trace.horizon = count == 0 ? 0.0 : trace.events.back().time;
  const double h = trace.horizon;
  if (!trace.state_path.empty()) {
    // Keep the initial state even if the trace becomes empty.
    auto it = std::upper_bound(trace.state_path.begin() + 1, trace.state_path.end(), h,
                               [](double t, const StateChange& c) { return t < c.time; });
    trace.state_path.erase(it, trace.state_path.end());
  }
  std::erase_if(trace.switches, [h](const OnOffSwitch& s) { return s.time > h; });
  for (Shot& s : trace.shots) {
    if (s.birth > h) s.birth = std::numeric_limits<double>::infinity();
  }
}

std::size_t warmup_count(std::size_t requests, double warmup_fraction) {
  if (!(warmup_fraction >= 0.0 && warmup_fraction < 1.0)) throw std::invalid_argument("warm-up fraction must lie in [0, 1)");
  return static_cast<std::size_t>(std::floor(warmup_fraction * static_cast<double>(requests)));
}

}  // namespace hrbound
