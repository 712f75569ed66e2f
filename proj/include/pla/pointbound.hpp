// Online optimal PLA under the max-err bound.
//
// For a segment anchored at index i, the pairs (y, m) whose line y + m*(k-i)
// stays within epsilon of every buffered sample form a convex region in
// (left-endpoint-value, slope) space: y is confined to [x_i - eps, x_i + eps]
// and each later sample at distance d contributes the band
// (x_k - eps - y)/d <= m <= (x_k + eps - y)/d. A sample is absorbed while the
// region stays nonempty; when it empties, a segment is emitted through a
// deterministic interior point and the region restarts.
//
// The region is tracked exactly: the upper bound U(y) is the lower envelope of
// the upper constraint lines and the lower bound L(y) the upper envelope of
// the lower lines. Constraint lines arrive with strictly growing d, i.e. in
// increasing slope order in (y, m) space, so each envelope updates from one
// end like a convex hull and costs amortized O(1) per sample. Replacing the
// envelopes by their chords (the constant-space shortcut) can declare the
// region empty one sample early and lose optimality, so it is used only for
// the exported chord view and the pick, never for the emptiness test.
//
// Both envelopes are strictly decreasing in y, which makes the emptiness test
// one-sided: a new lower constraint can only cut the y interval from the
// right, a new upper constraint only from the left.

#pragma once

#include <deque>
#include <optional>
#include <utility>

#include "pla/core.hpp"

namespace pla {

// the constraint line m = (c - y) / d
struct ConstraintLine {
    double c = 0.0;
    long long d = 1;
    double at(double y) const { return (c - y) / static_cast<double>(d); }
};

struct FeasibleRegion {
    double y_lo = 0.0, y_hi = 0.0;  // admissible left-endpoint values
    double u_lo = 0.0, u_hi = 0.0;  // upper chord evaluated at y_lo / y_hi
    double l_lo = 0.0, l_hi = 0.0;  // lower chord evaluated at y_lo / y_hi
    long long anchor_index = 0;

    // exact envelopes; pieces ordered left-to-right in y, newest line at the
    // front of `upper` and the back of `lower`
    std::deque<ConstraintLine> upper;
    std::deque<ConstraintLine> lower;

    double upper_at(double y) const;
    double lower_at(double y) const;

    // Adds the constraint band of a sample at distance `span`. Returns false
    // and leaves the region untouched when the intersection is empty.
    bool intersect_in_place(double x_j, long long span, double epsilon);

    std::size_t stored_lines() const { return upper.size() + lower.size(); }
};

// poly(i, j) for the seed pair: y in [x_i - eps, x_i + eps], one constraint
// band at distance `span`. Throws std::invalid_argument on span < 1 or
// epsilon <= 0.
FeasibleRegion parallelogram(double x_i, double x_j, long long span, double epsilon);

// Value-returning wrapper around FeasibleRegion::intersect_in_place.
std::optional<FeasibleRegion> region_intersect(FeasibleRegion region, double x_j,
                                               long long span, double epsilon);

// Deterministic interior point: y* = mid of the y interval, m* = mid of the
// two chords at y*. The chords bound the exact envelopes from inside, so the
// pick satisfies every constraint intersected so far. Throws on an empty
// region (y_lo > y_hi).
std::pair<double, double> region_pick(const FeasibleRegion& region);

class PointBound {
   public:
    explicit PointBound(double epsilon, long long start_index = 1);

    // Consumes one sample; returns the finished segment when the feasible
    // region empties, nothing otherwise. Throws on non-finite input.
    std::optional<Segment> push(double x);

    // Emits the open segment (degenerate for a lone pending sample) and
    // resets the machine to its start state.
    std::optional<Segment> flush();

    double epsilon() const { return eps_; }
    long long next_index() const { return next_; }

    // dynamically stored items: envelope lines plus the pending sample
    std::size_t stored_elements() const;

   private:
    Segment emit(long long last) const;

    double eps_;
    long long start_;
    long long next_;
    std::optional<FeasibleRegion> region_;
    std::optional<std::pair<long long, double>> pending_;
};

}  // namespace pla
