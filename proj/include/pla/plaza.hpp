// PLAZA: lightweight online PLA producing connected segments.
//
// From the current apex (i, x_i), each later sample (k, x_k) admits a zoning
// angle: the cone of ray directions around the chord to (k, x_k) whose
// half-opening is arctan(eps / |chord|). A segment grows while the
// intersection of all zoning angles stays nonempty; when the sample's own
// direction falls outside the surviving interval its value is replaced by the
// projection onto the interval's bisector, so consecutive segments share the
// stored endpoint bitwise.
//
// The angular construction bounds a rotated distance, not the vertical one,
// so realized vertical error can exceed eps on steep chords. Strict mode
// swaps in vertical slope bounds [(x_k - eps - x_i)/(k - i),
// (x_k + eps - x_i)/(k - i)] (mapped through atan to stay in angle space),
// which provably caps vertical error at eps. Default mode follows the
// angular definition.

#pragma once

#include <optional>

#include "pla/core.hpp"

namespace pla {

struct ZoningAngle {
    long long apex_index = 0;
    double apex_value = 0.0;
    double theta_lo = 0.0;  // direction-angle interval, within (-pi/2, pi/2)
    double theta_hi = 0.0;
};

// The zoning angle from apex (i, x_i) to (k, x_k): bisector
// beta = atan2(x_k - x_i, k - i), half-angle arctan(eps / |chord|), clamped
// into (-pi/2, pi/2). Throws for k <= i or epsilon <= 0.
ZoningAngle zoning_angle(long long i, double x_i, long long k, double x_k, double epsilon);

// Interval intersection; empty when the intervals are disjoint. Throws when
// the apexes differ.
std::optional<ZoningAngle> angle_intersect(const ZoningAngle& a, const ZoningAngle& b);

// angular: the original construction (rotated-distance bound, cheapest);
// strict: vertical slope bounds, realized max-err provably <= epsilon.
enum class PlazaMode { angular, strict };

class Plaza {
   public:
    explicit Plaza(double epsilon, long long start_index = 1, PlazaMode mode = PlazaMode::angular);

    std::optional<Segment> push(double x);
    std::optional<Segment> flush();

    double epsilon() const { return eps_; }
    PlazaMode mode() const { return mode_; }

    // fixed set of scalar slots; the machine stores no samples
    std::size_t stored_elements() const { return 7; }

   private:
    ZoningAngle zone_to(long long k, double x_k) const;

    double eps_;
    long long start_;
    PlazaMode mode_;
    long long next_;
    bool have_apex_ = false;
    bool have_angle_ = false;
    long long apex_index_ = 0;
    double apex_value_ = 0.0;
    double theta_lo_ = 0.0;
    double theta_hi_ = 0.0;
    double adjusted_last_ = 0.0;  // possibly projected value of the last sample
    long long last_ = 0;
};

}  // namespace pla
