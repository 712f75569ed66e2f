#include "pla/oracle.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace pla::oracle {
namespace {

void check_interval(const TimeSeries& x, long long a, long long b) {
    if (a > b) throw std::invalid_argument("oracle: interval start exceeds end");
    if (a < x.first_index() || b > x.last_index())
        throw std::invalid_argument("oracle: interval outside the series");
}

}  // namespace

bool feasible_maxerr(const TimeSeries& x, long long a, long long b, double epsilon) {
    check_interval(x, a, b);
    if (!(epsilon >= 0.0)) throw std::invalid_argument("oracle: epsilon must be >= 0");
    long long len = b - a + 1;
    if (len <= 2) return true;

    auto fits = [&](double y, double m) {
        for (long long k = a; k <= b; ++k)
            if (std::abs(x.at_global(k) - (y + m * static_cast<double>(k - a))) > epsilon)
                return false;
        return true;
    };
    // cheap witnesses: any single feasible line settles the question early
    {
        double n = static_cast<double>(len);
        double sy = 0.0, st = 0.0, stt = 0.0, sty = 0.0;
        for (long long k = a; k <= b; ++k) {
            double t = static_cast<double>(k - a);
            sy += x.at_global(k);
            st += t;
            stt += t * t;
            sty += t * x.at_global(k);
        }
        double den = stt - st * st / n;
        double m_ols = (sty - st * sy / n) / den;
        if (fits(x.at_global(a), (x.at_global(b) - x.at_global(a)) / static_cast<double>(b - a)))
            return true;
        if (fits((sy - m_ols * st) / n, m_ols)) return true;
        if (fits(sy / n, 0.0)) return true;
    }

    // the decisive test: 2(b-a+1) half-planes p*y + q*m <= r, try every
    // boundary-pair vertex against the full system
    std::vector<double> P, Q, R;
    P.reserve(2 * static_cast<std::size_t>(len));
    Q.reserve(P.capacity());
    R.reserve(P.capacity());
    for (long long k = a; k <= b; ++k) {
        double d = static_cast<double>(k - a);
        double xk = x.at_global(k);
        P.push_back(1.0);
        Q.push_back(d);
        R.push_back(xk + epsilon);
        P.push_back(-1.0);
        Q.push_back(-d);
        R.push_back(epsilon - xk);
    }
    std::size_t h = P.size();
    for (std::size_t u = 0; u < h; ++u) {
        for (std::size_t v = u + 1; v < h; ++v) {
            double det = P[u] * Q[v] - Q[u] * P[v];
            if (det == 0.0) continue;
            double y = (R[u] * Q[v] - Q[u] * R[v]) / det;
            double m = (P[u] * R[v] - R[u] * P[v]) / det;
            bool ok = true;
            for (std::size_t w = 0; w < h; ++w) {
                if (P[w] * y + Q[w] * m > R[w] + 1e-9) {
                    ok = false;
                    break;
                }
            }
            if (ok) return true;
        }
    }
    return false;
}

bool feasible_segerr(const TimeSeries& x, long long a, long long b, double epsilon) {
    check_interval(x, a, b);
    if (!(epsilon >= 0.0)) throw std::invalid_argument("oracle: epsilon must be >= 0");
    long long len = b - a + 1;
    if (len <= 2) return true;
    bool identical = true;
    for (long long k = a + 1; k <= b && identical; ++k)
        identical = x.at_global(k) == x.at_global(a);
    if (identical) return true;  // the constant fit has SSE exactly 0

    // centered two-pass least squares; shares nothing with the online sums
    double n = static_cast<double>(len);
    double tbar = 0.5 * static_cast<double>(len - 1);
    double xbar = 0.0;
    for (long long k = a; k <= b; ++k) xbar += x.at_global(k);
    xbar /= n;
    double num = 0.0, den = 0.0;
    for (long long k = a; k <= b; ++k) {
        double dt = static_cast<double>(k - a) - tbar;
        num += dt * (x.at_global(k) - xbar);
        den += dt * dt;
    }
    double m = num / den;
    double s = 0.0;
    for (long long k = a; k <= b; ++k) {
        double r = x.at_global(k) - xbar - m * (static_cast<double>(k - a) - tbar);
        s += r * r;
    }
    return s <= epsilon;
}

int dp_min_segments(const TimeSeries& x, double epsilon, ErrorKind kind) {
    long long n = x.size();
    if (n < 1) throw std::invalid_argument("dp_min_segments: empty series");
    long long first = x.first_index(), last = x.last_index();
    auto feas = [&](long long a, long long b) {
        return kind == ErrorKind::max_err ? feasible_maxerr(x, a, b, epsilon)
                                          : feasible_segerr(x, a, b, epsilon);
    };

    // farthest feasible end per start, by galloping then bisection; licensed
    // by interval monotonicity of feasibility (tested independently)
    std::vector<long long> reach(static_cast<std::size_t>(n));
    for (long long a = first; a <= last; ++a) {
        long long good = a, bad = last + 1, step = 1;
        while (good + step < bad) {
            long long probe = std::min(good + step, bad - 1);
            if (feas(a, probe)) {
                good = probe;
                step *= 2;
            } else {
                bad = probe;
                break;
            }
        }
        while (good + 1 < bad) {
            long long mid = good + (bad - good) / 2;
            if (feas(a, mid))
                good = mid;
            else
                bad = mid;
        }
        reach[static_cast<std::size_t>(a - first)] = good;
    }

    // shortest path over interval endpoints, right to left
    std::vector<int> f(static_cast<std::size_t>(n) + 1, 0);
    for (long long t = n - 1; t >= 0; --t) {
        int best = INT_MAX - 1;
        long long r = reach[static_cast<std::size_t>(t)] - first;
        for (long long e = t; e <= r; ++e)
            best = std::min(best, 1 + f[static_cast<std::size_t>(e) + 1]);
        f[static_cast<std::size_t>(t)] = best;
    }
    return f[0];
}

namespace {

// keep the part of poly with p*y + q*v <= r; tiny slack keeps
// boundary-touching feasible sets alive through repeated clipping
void clip(std::vector<std::pair<double, double>>& poly, double p, double q, double r) {
    constexpr double kSlack = 1e-12;
    std::vector<std::pair<double, double>> out;
    std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        auto [y1, v1] = poly[i];
        auto [y2, v2] = poly[(i + 1) % n];
        double f1 = p * y1 + q * v1 - r;
        double f2 = p * y2 + q * v2 - r;
        bool in1 = f1 <= kSlack, in2 = f2 <= kSlack;
        if (in1) out.push_back(poly[i]);
        if (in1 != in2) {
            double t = f1 / (f1 - f2);
            out.push_back({y1 + t * (y2 - y1), v1 + t * (v2 - v1)});
        }
    }
    poly.swap(out);
}

}  // namespace

int plaza_benchmark(const TimeSeries& x, double epsilon, int cap) {
    long long n = x.size();
    if (n < 1) throw std::invalid_argument("plaza_benchmark: empty series");
    if (n > cap) throw std::invalid_argument("plaza_benchmark: series exceeds the search cap");
    if (!(epsilon > 0.0)) throw std::invalid_argument("plaza_benchmark: epsilon must be > 0");
    if (n == 1) return 1;
    long long first = x.first_index();
    auto val = [&](long long s) { return x.at_global(first + s); };

    // exact feasible polygon in (left value y, right value v) space for the
    // local range [s, e], with y confined to [ylo, yhi]
    auto polygon = [&](long long s, long long e, double ylo, double yhi) {
        std::vector<std::pair<double, double>> poly{{ylo, val(e) - epsilon},
                                                    {yhi, val(e) - epsilon},
                                                    {yhi, val(e) + epsilon},
                                                    {ylo, val(e) + epsilon}};
        for (long long k = s + 1; k < e && !poly.empty(); ++k) {
            double t = static_cast<double>(k - s) / static_cast<double>(e - s);
            clip(poly, 1.0 - t, t, val(k) + epsilon);
            clip(poly, t - 1.0, -t, epsilon - val(k));
        }
        return poly;
    };

    std::map<std::tuple<long long, long long, long long>, int> memo;
    // fewest connected segments covering s..n-1 when the shared endpoint
    // value at s must lie in [lo, hi]
    std::function<int(long long, double, double)> fewest = [&](long long s, double lo,
                                                               double hi) -> int {
        if (s == n - 1) return 0;
        auto key = std::make_tuple(s, llround(lo * 1e9), llround(hi * 1e9));
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        int best = INT_MAX - 1;
        for (long long e = s + 1; e <= n - 1; ++e) {
            auto poly = polygon(s, e, lo, hi);
            if (poly.empty()) break;  // longer ranges only add constraints
            double vlo = poly[0].second, vhi = poly[0].second;
            for (auto& [py, pv] : poly) {
                vlo = std::min(vlo, pv);
                vhi = std::max(vhi, pv);
            }
            best = std::min(best, 1 + fewest(e, vlo, vhi));
        }
        memo[key] = best;
        return best;
    };
    return fewest(0, val(0) - epsilon, val(0) + epsilon);
}

}  // namespace pla::oracle
