#include "pla/segmentbound.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pla {
namespace {

void add_point(RegressionState& st, double x) {
    st.n += 1;
    long long i = st.n;  // local index of the new point
    st.sum_i += i;
    st.sum_ii += i * i;
    st.sum_x += x;
    st.sum_ix += static_cast<double>(i) * x;
    st.sum_xx += x * x;
    if (st.n == 1) {
        st.run_min = x;
        st.run_max = x;
    } else {
        st.run_min = std::min(st.run_min, x);
        st.run_max = std::max(st.run_max, x);
    }
}

}  // namespace

std::pair<double, double> ols_fit(const RegressionState& st) {
    if (st.n < 2) throw std::invalid_argument("ols_fit: need at least 2 points");
    double n = static_cast<double>(st.n);
    double si = static_cast<double>(st.sum_i);
    double sii = static_cast<double>(st.sum_ii);
    double m = (st.sum_ix - si * st.sum_x / n) / (sii - si * si / n);
    double y1 = m + (st.sum_x - m * si) / n;
    return {m, y1};
}

double sse(const RegressionState& st, double m) {
    if (st.n < 1) throw std::invalid_argument("sse: need at least 1 point");
    double n = static_cast<double>(st.n);
    double si = static_cast<double>(st.sum_i);
    double sii = static_cast<double>(st.sum_ii);
    double t = st.sum_x - m * si;
    return st.sum_xx + m * m * sii - 2.0 * m * st.sum_ix - t * t / n;
}

SegmentBound::SegmentBound(double epsilon, long long start_index) : start_(start_index) {
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon))
        throw std::invalid_argument("segmentbound: epsilon must be finite and >= 0");
    st_.epsilon = epsilon;
    reset(start_index);
}

std::optional<Segment> SegmentBound::push(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("segmentbound: non-finite sample");
    if (st_.n == 0) {
        add_point(st_, x);
        last_x_ = x;
        return std::nullopt;
    }
    if (st_.n == 1) {
        // two points always fit; take the exact line instead of trusting the
        // closed-form SSE, which can leave +-1e-16 residue and kill epsilon=0
        double x1 = st_.sum_x;
        add_point(st_, x);
        st_.fit_m = x - x1;
        st_.fit_y1 = x1;
        last_x_ = x;
        return std::nullopt;
    }
    if (st_.run_min == st_.run_max && x == st_.run_min) {
        // bitwise-identical run: (m=0, y1=x) has SSE exactly 0
        add_point(st_, x);
        st_.fit_m = 0.0;
        st_.fit_y1 = x;
        last_x_ = x;
        return std::nullopt;
    }
    RegressionState trial = st_;
    add_point(trial, x);
    auto [m, y1] = ols_fit(trial);
    if (sse(trial, m) <= st_.epsilon) {
        trial.fit_m = m;
        trial.fit_y1 = y1;
        st_ = trial;
        last_x_ = x;
        return std::nullopt;
    }
    // emit before accepting x: the open segment's far endpoint is the sample
    // accepted before this one
    Segment done = open_segment();
    reset(st_.anchor_index + st_.n);
    add_point(st_, x);
    last_x_ = x;
    return done;
}

std::optional<Segment> SegmentBound::flush() {
    std::optional<Segment> out;
    if (st_.n >= 1) out = open_segment();
    reset(start_);
    return out;
}

void SegmentBound::reset(long long anchor) {
    double eps = st_.epsilon;
    st_ = RegressionState{};
    st_.epsilon = eps;
    st_.anchor_index = anchor;
}

Segment SegmentBound::open_segment() const {
    long long i = st_.anchor_index;
    if (st_.n == 1) return Segment{i, st_.sum_x, i, st_.sum_x};
    long long j = i + st_.n - 1;
    // n == 2: endpoints are the samples themselves; fit_y1 + fit_m would round
    double yj = st_.n == 2 ? last_x_ : st_.fit_y1 + st_.fit_m * static_cast<double>(st_.n - 1);
    return Segment{i, st_.fit_y1, j, yj};
}

}  // namespace pla
