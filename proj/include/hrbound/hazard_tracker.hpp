#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "hrbound/catalog.hpp"
#include "hrbound/trace.hpp"

namespace hrbound {

/// Run-time state needed to evaluate every object's hazard rate at a request
/// instant. A scoring run drives it as follows, for each event (t, r):
///
///   tracker.advance_to(t);        // apply modulation strictly before t
///   ... query hazard / hazards / count_ahead at t ...
///   tracker.record_request(r, t);
///
/// Queries therefore see the state at t-, which excludes the request at t.
/// Ranking order: higher hazard first, equal hazards by lower object id.
class HazardTracker {
 public:
  explicit HazardTracker(std::size_t objects) : scratch_(objects) {}
  virtual ~HazardTracker() = default;

  HazardTracker(const HazardTracker&) = delete;
  HazardTracker& operator=(const HazardTracker&) = delete;

  std::size_t size() const noexcept { return scratch_.size(); }

  virtual void advance_to(double /*t*/) {}

  /// Hazard of object i at time t, evaluated by the generic per-object path.
  virtual double hazard(ObjectId i, double t) const = 0;

  /// All hazards at time t. Bitwise equal to calling hazard() per object.
  virtual void hazards(double t, std::span<double> out) const;

  /// Number of objects ranked strictly ahead of `object` at time t.
  virtual std::size_t count_ahead(ObjectId object, double t) const;

  virtual void record_request(ObjectId /*object*/, double /*t*/) {}

 protected:
  /// Counts objects ranked ahead of `object` given all hazards.
  static std::size_t count_ahead_in(std::span<const double> h, ObjectId object);

  mutable std::vector<double> scratch_;
};

/// Tracker specialized for the catalog's traffic model. Renewal ages start at
/// trace.start; on-off, MMPP and shot-noise trackers read the modulation
/// record carried by the trace and throw std::invalid_argument if it is
/// missing.
std::unique_ptr<HazardTracker> make_tracker(const Catalog& catalog, const RequestTrace& trace);

}  // namespace hrbound
