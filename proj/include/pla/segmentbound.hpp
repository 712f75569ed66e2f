// Online optimal PLA under the per-segment SSE bound.
//
// A segment grows while the least-squares SSE of its points stays <= epsilon.
// Points are re-indexed 1..n inside each segment; five running sums give the
// OLS slope, intercept, and minimized SSE in constant time per sample, so the
// machine never stores the buffered points themselves.
//
// Two exactness guards keep epsilon = 0 usable: a 2-point candidate is always
// accepted with the exact two-point line (two points always fit, while the
// closed-form SSE can leave +-1e-16 residue), and a run of bitwise-identical
// values fits (m=0, y1=c) with SSE exactly 0.

#pragma once

#include <optional>
#include <utility>

#include "pla/core.hpp"

namespace pla {

struct RegressionState {
    long long n = 0;          // points in the open segment, local indices 1..n
    long long sum_i = 0;      // sum of i, exactly n(n+1)/2
    long long sum_ii = 0;     // sum of i^2, exactly n(n+1)(2n+1)/6
    double sum_x = 0.0;
    double sum_ix = 0.0;
    double sum_xx = 0.0;
    long long anchor_index = 0;  // global index of local point 1
    double fit_m = 0.0;          // last accepted fit
    double fit_y1 = 0.0;
    double epsilon = 0.0;
    double run_min = 0.0;  // bitwise-identical-run guard
    double run_max = 0.0;
};

// OLS slope over local indices and the intercept y1 = m + (sum_x - m sum_i)/n.
// Throws std::invalid_argument for n < 2.
std::pair<double, double> ols_fit(const RegressionState& st);

// Minimized SSE for the optimal intercept at slope m (n >= 1). With the OLS
// slope this is the global minimum.
double sse(const RegressionState& st, double m);

class SegmentBound {
   public:
    // epsilon >= 0; epsilon = 0 accepts only exact fits
    explicit SegmentBound(double epsilon, long long start_index = 1);

    std::optional<Segment> push(double x);
    std::optional<Segment> flush();

    const RegressionState& state() const { return st_; }
    double epsilon() const { return st_.epsilon; }

    // the accumulator slots; constant by construction
    std::size_t stored_elements() const { return 13; }

   private:
    void reset(long long anchor);
    Segment open_segment() const;

    RegressionState st_;
    long long start_;
    double last_x_ = 0.0;  // keeps the 2-point segment's far endpoint bitwise
};

}  // namespace pla
