// Shared domain types for the PLA library: time series, segments, compressed
// streams, and the quality metrics computed over them.
//
// Index convention: a TimeSeries carries its own start index (default 1, so a
// series x_1..x_n reads like the math). The CLI and the wire format pin the
// start index to 0. Both conventions flow through the same code because every
// type stores absolute indices.

#pragma once

#include <cstdint>
#include <vector>

namespace pla {

struct TimeSeries {
    std::vector<double> samples;
    long long start_index = 1;

    long long size() const { return static_cast<long long>(samples.size()); }
    // inclusive global index range [first, last]; empty series has last < first
    long long first_index() const { return start_index; }
    long long last_index() const { return start_index + size() - 1; }
    double at_global(long long k) const { return samples[static_cast<std::size_t>(k - start_index)]; }
};

// Line segment ((i, y_i), (j, y_j)) approximating samples at indices i..j.
// i == j only for the degenerate single-point flush segment.
struct Segment {
    long long i = 0;
    double y_i = 0.0;
    long long j = 0;
    double y_j = 0.0;

    double value_at(long long k) const {
        // endpoints reproduce bitwise; interpolation rounding would otherwise
        // leave ~1e-16 residue that matters at epsilon = 0
        if (k == i) return y_i;
        if (k == j) return y_j;
        return y_i + static_cast<double>(k - i) * (y_j - y_i) / static_cast<double>(j - i);
    }
    bool degenerate() const { return i == j; }
    friend bool operator==(const Segment&, const Segment&) = default;
};

enum class ErrorKind { max_err, seg_err };

// A piecewise linear approximation. Disconnected streams tile the index range
// with i' = j + 1 between neighbors; connected streams share endpoints
// (i' = j, equal values).
struct PlaStream {
    std::vector<Segment> segments;
    bool connected = false;
    double epsilon = 0.0;
    ErrorKind error_kind = ErrorKind::max_err;
};

struct QualityReport {
    double sample_reduction_ratio = 0.0;  // endpoint_count / n
    double distortion = 0.0;              // mean squared reconstruction error
    double max_abs_error = 0.0;
    double max_segment_sse = 0.0;
    long long segment_count = 0;
    long long endpoint_count = 0;
};

// Transmitted endpoint count. Disconnected: 2 per segment, 1 for a degenerate
// one. Connected: segment_count + 1, except a lone degenerate segment costs 1.
long long endpoint_count(const PlaStream& pla);

// Reconstructed values for the inclusive index range [lo, hi]. Throws
// std::invalid_argument when an index is not covered by any segment.
TimeSeries reconstruct(const PlaStream& pla, long long lo, long long hi);

// max_k |x_k - reconstruction(k)| over the whole series.
double max_err(const TimeSeries& x, const PlaStream& pla);

// Maximum over segments of the sum of squared deviations on that segment's
// range. The shared endpoint of two connected segments is charged to the
// earlier segment only, so every sample is counted exactly once.
double seg_err(const TimeSeries& x, const PlaStream& pla);

QualityReport quality(const TimeSeries& x, const PlaStream& pla);

}  // namespace pla
