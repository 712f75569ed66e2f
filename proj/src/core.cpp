#include "pla/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pla {

long long endpoint_count(const PlaStream& pla) {
    if (pla.segments.empty()) return 0;
    if (pla.connected) {
        // one point up front, then one new point per non-degenerate segment;
        // a lone degenerate segment is just its single point
        long long c = 1;
        for (const auto& s : pla.segments)
            if (!s.degenerate()) ++c;
        return c;
    }
    long long c = 0;
    for (const auto& s : pla.segments) c += s.degenerate() ? 1 : 2;
    return c;
}

TimeSeries reconstruct(const PlaStream& pla, long long lo, long long hi) {
    TimeSeries out;
    out.start_index = lo;
    if (hi < lo) return out;
    out.samples.reserve(static_cast<std::size_t>(hi - lo + 1));
    std::size_t si = 0;
    for (long long k = lo; k <= hi; ++k) {
        // on a shared endpoint this stops at the earlier segment; both
        // segments agree there by the connectivity invariant
        while (si < pla.segments.size() && pla.segments[si].j < k) ++si;
        if (si >= pla.segments.size() || pla.segments[si].i > k)
            throw std::invalid_argument("reconstruct: index not covered");
        out.samples.push_back(pla.segments[si].value_at(k));
    }
    return out;
}

double max_err(const TimeSeries& x, const PlaStream& pla) {
    TimeSeries rec = reconstruct(pla, x.first_index(), x.last_index());
    double worst = 0.0;
    for (long long k = x.first_index(); k <= x.last_index(); ++k)
        worst = std::max(worst, std::abs(x.at_global(k) - rec.at_global(k)));
    return worst;
}

double seg_err(const TimeSeries& x, const PlaStream& pla) {
    if (!pla.segments.empty() &&
        (pla.segments.front().i > x.first_index() || pla.segments.back().j < x.last_index()))
        throw std::invalid_argument("seg_err: series not fully covered");
    double worst = 0.0;
    bool first = true;
    for (const auto& s : pla.segments) {
        // a shared endpoint is charged to the earlier segment only
        long long from = s.i + ((pla.connected && !first) ? 1 : 0);
        if (s.i < x.first_index() || s.j > x.last_index())
            throw std::invalid_argument("seg_err: segment outside the series");
        double sum = 0.0;
        for (long long k = from; k <= s.j; ++k) {
            double d = x.at_global(k) - s.value_at(k);
            sum += d * d;
        }
        worst = std::max(worst, sum);
        first = false;
    }
    return worst;
}

QualityReport quality(const TimeSeries& x, const PlaStream& pla) {
    if (x.size() == 0) throw std::invalid_argument("quality: empty series");
    TimeSeries rec = reconstruct(pla, x.first_index(), x.last_index());
    QualityReport q;
    q.segment_count = static_cast<long long>(pla.segments.size());
    q.endpoint_count = endpoint_count(pla);
    q.sample_reduction_ratio =
        static_cast<double>(q.endpoint_count) / static_cast<double>(x.size());
    double sq = 0.0, worst = 0.0;
    for (long long k = x.first_index(); k <= x.last_index(); ++k) {
        double d = x.at_global(k) - rec.at_global(k);
        sq += d * d;
        worst = std::max(worst, std::abs(d));
    }
    q.distortion = sq / static_cast<double>(x.size());
    q.max_abs_error = worst;
    q.max_segment_sse = seg_err(x, pla);
    return q;
}

}  // namespace pla
