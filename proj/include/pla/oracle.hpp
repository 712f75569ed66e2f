// Offline brute-force ground truth for the online algorithms. Everything here
// favors independence and obviousness over speed: feasibility is decided by
// geometry or direct summation, never by the streaming machines' incremental
// state, so these routines can certify them.

#pragma once

#include "pla/core.hpp"

namespace pla::oracle {

// True iff some line y + m*(k - a) stays within epsilon of every sample in
// the inclusive global index range [a, b]. Decided by 2D linear feasibility
// over the 2(b-a+1) half-planes, enumerating candidate vertices from all
// boundary-line pairs (cubic per interval).
bool feasible_maxerr(const TimeSeries& x, long long a, long long b, double epsilon);

// True iff the OLS-minimal SSE over [a, b] is <= epsilon, by direct centered
// summation (independent of segmentbound's running-sum formula).
bool feasible_segerr(const TimeSeries& x, long long a, long long b, double epsilon);

// Minimum number of consecutive intervals tiling the series, each feasible
// under `kind` (the disconnected model matching PointBound / SegmentBound).
// Shortest-path DP; interval feasibility is monotone, so each start's
// feasible ends form a prefix found by galloping + binary search.
int dp_min_segments(const TimeSeries& x, double epsilon, ErrorKind kind);

// Minimum number of CONNECTED segments with vertical max-err <= epsilon.
// Depth-first search over segment ends; each segment's left endpoint value is
// confined to the y-interval carried over from the previous segment's exact
// constraint-intersection polygon, so the search never restarts from the raw
// sample. Memoized on (start index, y-interval quantized at 1e-9).
// Exponential worst case; throws when n exceeds `cap`.
int plaza_benchmark(const TimeSeries& x, double epsilon, int cap = 24);

}  // namespace pla::oracle
