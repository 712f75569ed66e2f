#include "pla/pointbound.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pla {
namespace {

// y where the lines (c1,d1) and (c2,d2) meet; callers guarantee d1 != d2
double line_cross_y(double c1, long long d1, double c2, long long d2) {
    return (c2 * static_cast<double>(d1) - c1 * static_cast<double>(d2)) /
           static_cast<double>(d1 - d2);
}

double cross(const ConstraintLine& a, const ConstraintLine& b) {
    return line_cross_y(a.c, a.d, b.c, b.d);
}

// Min-envelope of lines with slope -1/d: a new line always has the largest d
// seen (shallowest slope), so it takes over the left end. Pop left pieces it
// covers entirely.
void add_to_upper(std::deque<ConstraintLine>& env, const ConstraintLine& ln) {
    while (env.size() >= 2 && cross(ln, env[0]) >= cross(env[0], env[1])) env.pop_front();
    env.push_front(ln);
}

// Max-envelope counterpart: the new line takes over the right end.
void add_to_lower(std::deque<ConstraintLine>& env, const ConstraintLine& ln) {
    while (env.size() >= 2) {
        std::size_t m = env.size();
        if (cross(env[m - 1], ln) <= cross(env[m - 2], env[m - 1]))
            env.pop_back();
        else
            break;
    }
    env.push_back(ln);
}

// Rightmost y of { env_min(y) >= ln(y) } within [lo, hi]. Caller has checked
// env_min(lo) >= ln(lo) and env_min(hi) < ln(hi); the gap env_min - ln is
// strictly decreasing because every envelope piece is steeper than ln.
double clip_from_right(const std::deque<ConstraintLine>& env, const ConstraintLine& ln,
                       double lo, double hi) {
    double left = lo;
    for (std::size_t k = 0; k < env.size(); ++k) {
        double right = (k + 1 < env.size()) ? cross(env[k], env[k + 1]) : hi;
        right = std::min(right, hi);
        if (right < left) continue;
        if (env[k].at(right) - ln.at(right) <= 0.0)
            return std::clamp(cross(env[k], ln), left, right);
        left = right;
    }
    return hi;  // numeric guard: no sign change found inside the window
}

// Leftmost y of { ln(y) >= env_max(y) } within [lo, hi]; the mirror case, the
// gap ln - env_max is strictly increasing.
double clip_from_left(const std::deque<ConstraintLine>& env, const ConstraintLine& ln,
                      double lo, double hi) {
    double left = lo;
    for (std::size_t k = 0; k < env.size(); ++k) {
        double right = (k + 1 < env.size()) ? cross(env[k], env[k + 1]) : hi;
        right = std::min(right, hi);
        if (right < left) continue;
        if (ln.at(right) - env[k].at(right) >= 0.0)
            return std::clamp(cross(env[k], ln), left, right);
        left = right;
    }
    return hi;
}

}  // namespace

double FeasibleRegion::upper_at(double y) const {
    double v = upper.front().at(y);
    for (std::size_t k = 1; k < upper.size(); ++k) v = std::min(v, upper[k].at(y));
    return v;
}

double FeasibleRegion::lower_at(double y) const {
    double v = lower.front().at(y);
    for (std::size_t k = 1; k < lower.size(); ++k) v = std::max(v, lower[k].at(y));
    return v;
}

bool FeasibleRegion::intersect_in_place(double x_j, long long span, double epsilon) {
    if (span < 1) throw std::invalid_argument("region_intersect: span must be >= 1");
    if (!(epsilon > 0.0)) throw std::invalid_argument("region_intersect: epsilon must be > 0");
    if (!upper.empty() && span <= upper.front().d)
        throw std::invalid_argument("region_intersect: spans must strictly increase");

    const ConstraintLine up{x_j + epsilon, span};
    const ConstraintLine low{x_j - epsilon, span};

    // Constraints are closed (<= epsilon), so a region touching in a single
    // point is nonempty. Quantized samples produce exactly such tangent
    // systems, where the computed gap is pure rounding noise; the tolerance
    // keeps them alive. It is far below any structural margin and far above
    // double rounding, so it never flips a decided case.
    const double tol = 1e-12 * (1.0 + std::abs(x_j) + epsilon);

    // The new lower line can only cut the y interval from the right (the
    // upper envelope falls away from it), the new upper line only from the
    // left. Emptiness is therefore two interval checks, no iteration.
    double nlo = y_lo, nhi = y_hi;
    if (upper_at(y_lo) - low.at(y_lo) < -tol) return false;
    if (upper_at(y_hi) - low.at(y_hi) < 0.0) nhi = clip_from_right(upper, low, y_lo, y_hi);
    if (up.at(y_hi) - lower_at(y_hi) < -tol) return false;
    if (up.at(y_lo) - lower_at(y_lo) < 0.0) nlo = clip_from_left(lower, up, y_lo, y_hi);
    if (nlo > nhi) {
        if (nlo > nhi + tol) return false;
        nlo = nhi = 0.5 * (nlo + nhi);  // tangent point
    }

    add_to_upper(upper, up);
    add_to_lower(lower, low);
    y_lo = nlo;
    y_hi = nhi;
    u_lo = upper_at(y_lo);
    u_hi = upper_at(y_hi);
    l_lo = lower_at(y_lo);
    l_hi = lower_at(y_hi);
    return true;
}

FeasibleRegion parallelogram(double x_i, double x_j, long long span, double epsilon) {
    if (span < 1) throw std::invalid_argument("parallelogram: span must be >= 1");
    if (!(epsilon > 0.0)) throw std::invalid_argument("parallelogram: epsilon must be > 0");
    FeasibleRegion r;
    r.y_lo = x_i - epsilon;
    r.y_hi = x_i + epsilon;
    r.upper.push_back({x_j + epsilon, span});
    r.lower.push_back({x_j - epsilon, span});
    r.u_lo = r.upper_at(r.y_lo);
    r.u_hi = r.upper_at(r.y_hi);
    r.l_lo = r.lower_at(r.y_lo);
    r.l_hi = r.lower_at(r.y_hi);
    return r;
}

std::optional<FeasibleRegion> region_intersect(FeasibleRegion region, double x_j,
                                               long long span, double epsilon) {
    if (!region.intersect_in_place(x_j, span, epsilon)) return std::nullopt;
    return region;
}

std::pair<double, double> region_pick(const FeasibleRegion& region) {
    if (region.y_lo > region.y_hi || region.upper.empty() || region.lower.empty())
        throw std::invalid_argument("region_pick: empty region");
    double y = 0.5 * (region.y_lo + region.y_hi);
    double uu, ll;
    if (region.y_hi == region.y_lo) {
        uu = region.u_lo;
        ll = region.l_lo;
    } else {
        double t = (y - region.y_lo) / (region.y_hi - region.y_lo);
        uu = region.u_lo + t * (region.u_hi - region.u_lo);
        ll = region.l_lo + t * (region.l_hi - region.l_lo);
    }
    return {y, 0.5 * (uu + ll)};
}

PointBound::PointBound(double epsilon, long long start_index)
    : eps_(epsilon), start_(start_index), next_(start_index) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("pointbound: epsilon must be > 0");
}

std::optional<Segment> PointBound::push(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("pointbound: non-finite sample");
    long long j = next_++;
    if (region_) {
        if (region_->intersect_in_place(x, j - region_->anchor_index, eps_))
            return std::nullopt;
        Segment done = emit(j - 1);
        region_.reset();
        pending_ = {{j, x}};
        return done;
    }
    if (pending_) {
        auto [i, xi] = *pending_;
        FeasibleRegion r = parallelogram(xi, x, j - i, eps_);
        r.anchor_index = i;
        region_ = std::move(r);
        pending_.reset();
        return std::nullopt;
    }
    pending_ = {{j, x}};
    return std::nullopt;
}

std::optional<Segment> PointBound::flush() {
    std::optional<Segment> out;
    if (region_) {
        out = emit(next_ - 1);
    } else if (pending_) {
        auto [i, xi] = *pending_;
        out = Segment{i, xi, i, xi};
    }
    region_.reset();
    pending_.reset();
    next_ = start_;
    return out;
}

std::size_t PointBound::stored_elements() const {
    std::size_t n = pending_ ? 1 : 0;
    if (region_) n += region_->stored_lines();
    return n;
}

Segment PointBound::emit(long long last) const {
    auto [y, m] = region_pick(*region_);
    long long i = region_->anchor_index;
    return Segment{i, y, last, y + m * static_cast<double>(last - i)};
}

}  // namespace pla
