#include "pla/plaza.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pla {
namespace {
constexpr double kHalfPi = std::numbers::pi / 2.0;
}

ZoningAngle zoning_angle(long long i, double x_i, long long k, double x_k, double epsilon) {
    if (k <= i) throw std::invalid_argument("zoning_angle: k must exceed the apex index");
    if (!(epsilon > 0.0)) throw std::invalid_argument("zoning_angle: epsilon must be > 0");
    double dk = static_cast<double>(k - i);
    double dx = x_k - x_i;
    double beta = std::atan2(dx, dk);
    double h = std::atan(epsilon / std::hypot(dk, dx));
    // beta is strictly inside (-pi/2, pi/2) because dk >= 1, so the clamp
    // never collapses the interval
    return ZoningAngle{i, x_i, std::max(beta - h, -kHalfPi), std::min(beta + h, kHalfPi)};
}

std::optional<ZoningAngle> angle_intersect(const ZoningAngle& a, const ZoningAngle& b) {
    if (a.apex_index != b.apex_index || a.apex_value != b.apex_value)
        throw std::invalid_argument("angle_intersect: apexes differ");
    double lo = std::max(a.theta_lo, b.theta_lo);
    double hi = std::min(a.theta_hi, b.theta_hi);
    if (lo > hi) return std::nullopt;
    return ZoningAngle{a.apex_index, a.apex_value, lo, hi};
}

Plaza::Plaza(double epsilon, long long start_index, PlazaMode mode)
    : eps_(epsilon), start_(start_index), mode_(mode), next_(start_index) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("plaza: epsilon must be > 0");
}

ZoningAngle Plaza::zone_to(long long k, double x_k) const {
    if (mode_ == PlazaMode::strict) {
        // vertical band instead of the rotated one: admissible slopes are
        // [(x_k - eps - x_i)/(k - i), (x_k + eps - x_i)/(k - i)], carried in
        // angle space so the rest of the machine is unchanged
        double d = static_cast<double>(k - apex_index_);
        return ZoningAngle{apex_index_, apex_value_,
                           std::atan((x_k - eps_ - apex_value_) / d),
                           std::atan((x_k + eps_ - apex_value_) / d)};
    }
    return zoning_angle(apex_index_, apex_value_, k, x_k, eps_);
}

std::optional<Segment> Plaza::push(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("plaza: non-finite sample");
    long long j = next_++;
    if (!have_apex_) {
        have_apex_ = true;
        apex_index_ = j;
        apex_value_ = x;
        adjusted_last_ = x;
        last_ = j;
        return std::nullopt;
    }
    if (!have_angle_) {
        ZoningAngle z = zone_to(j, x);
        theta_lo_ = z.theta_lo;
        theta_hi_ = z.theta_hi;
        have_angle_ = true;
        adjusted_last_ = x;  // the seed direction is its own bisector
        last_ = j;
        return std::nullopt;
    }
    ZoningAngle z = zone_to(j, x);
    double lo = std::max(theta_lo_, z.theta_lo);
    double hi = std::min(theta_hi_, z.theta_hi);
    if (lo <= hi) {
        theta_lo_ = lo;
        theta_hi_ = hi;
        double dir = std::atan2(x - apex_value_, static_cast<double>(j - apex_index_));
        if (dir >= lo && dir <= hi) {
            adjusted_last_ = x;
        } else {
            // project onto the bisector of what survives of the angle
            double mid = 0.5 * (lo + hi);
            adjusted_last_ =
                apex_value_ + static_cast<double>(j - apex_index_) * std::tan(mid);
        }
        last_ = j;
        return std::nullopt;
    }
    // the surviving angle vanished: close at the previous point, whose value
    // becomes the next apex so segments chain
    Segment done{apex_index_, apex_value_, last_, adjusted_last_};
    apex_index_ = last_;
    apex_value_ = adjusted_last_;
    ZoningAngle seed = zone_to(j, x);
    theta_lo_ = seed.theta_lo;
    theta_hi_ = seed.theta_hi;
    adjusted_last_ = x;
    last_ = j;
    return done;
}

std::optional<Segment> Plaza::flush() {
    std::optional<Segment> out;
    if (have_apex_) {
        if (have_angle_)
            out = Segment{apex_index_, apex_value_, last_, adjusted_last_};
        else
            out = Segment{apex_index_, apex_value_, apex_index_, apex_value_};
    }
    have_apex_ = false;
    have_angle_ = false;
    next_ = start_;
    return out;
}

}  // namespace pla
