#pragma once

#include <functional>
#include <limits>
#include <string>

#include "symtf/distributions.hpp"

namespace symtf {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Evaluable positive weight on phase space.  Values are clamped away from
// zero so weighted quasi-norm sums stay finite.
struct Weight {
    std::function<double(double, double)> fn;
    std::string desc = "custom";

    double operator()(double x, double xi) const { return std::max(fn(x, xi), 1e-30); }
};

// One-dimensional weight factor for separable constructions.
struct Weight1D {
    std::function<double(double)> fn;
    std::string desc = "custom";

    double operator()(double t) const { return std::max(fn(t), 1e-30); }
};

inline Weight weight_one() {
    return Weight{[](double, double) { return 1.0; }, "1"};
}

// v_s(z) = (1 + |z|)^s
inline Weight weight_vs(double s) {
    return Weight{[s](double x, double xi) { return std::pow(1.0 + std::hypot(x, xi), s); },
                  "vs(" + std::to_string(s) + ")"};
}

inline Weight1D weight1d_one() {
    return Weight1D{[](double) { return 1.0; }, "1"};
}

inline Weight1D weight1d_vs(double s) {
    return Weight1D{[s](double t) { return std::pow(1.0 + std::abs(t), s); },
                    "vs(" + std::to_string(s) + ")"};
}

// w(x, xi) = w_first(x) * w_second(xi)
inline Weight weight_separable(const Weight1D& w_first, const Weight1D& w_second) {
    return Weight{[w_first, w_second](double x, double xi) { return w_first(x) * w_second(xi); },
                  w_first.desc + " (x) " + w_second.desc};
}

inline double weight_eval(const Weight& w, double x, double xi) { return w(x, xi); }

// w . M (throws on singular M).
inline Weight weight_compose(const Weight& w, const Mat& M) {
    if (M.rows != 2 || M.cols != 2) throw BadShape("weight_compose: M must be 2x2");
    if (std::abs(det(M)) < 1e-12) throw SingularM("weight_compose");
    double m00 = M(0, 0), m01 = M(0, 1), m10 = M(1, 0), m11 = M(1, 1);
    return Weight{[w, m00, m01, m10, m11](double x, double xi) {
                      return w(m00 * x + m01 * xi, m10 * x + m11 * xi);
                  },
                  w.desc + " o M"};
}

// Extremal pointwise ratios w1/w2 over the product grid.
inline std::pair<double, double> weight_equiv_ratio(const Weight& w1, const Weight& w2,
                                                    const Grid1D& gx, const Grid1D& gy) {
    double lo = kInf, hi = 0.0;
    for (int ix = 0; ix < gx.n; ++ix)
        for (int iy = 0; iy < gy.n; ++iy) {
            double r = w1(gx.t(ix), gy.t(iy)) / w2(gx.t(ix), gy.t(iy));
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
    return {lo, hi};
}

// ---------------------------------------------------------------------------
// Weighted mixed (quasi-)norms
// ---------------------------------------------------------------------------

struct MixedNormSpec {
    double p = 2.0;
    double q = 2.0;
    Weight m = weight_one();
    enum class InnerAxis { first, second };
    InnerAxis inner_axis = InnerAxis::first;
};

// Inner p-(quasi-)norm over the inner axis with the weight applied pointwise,
// outer q-(quasi-)norm over the other axis; Riemann cell weights, max for the
// infinite exponents.
inline double mixed_norm(const Field2D& F, const MixedNormSpec& spec) {
    if (!(spec.p > 0.0) || !(spec.q > 0.0)) throw BadShape("mixed_norm: p, q must be positive");
    bool inner_first = spec.inner_axis == MixedNormSpec::InnerAxis::first;
    int n_in = inner_first ? F.nx() : F.ny();
    int n_out = inner_first ? F.ny() : F.nx();
    double cell_in = inner_first ? F.gx.dx : F.gy.dx;
    double cell_out = inner_first ? F.gy.dx : F.gx.dx;

    std::vector<double> inner_vals(static_cast<size_t>(n_out));
    std::vector<double> mag(static_cast<size_t>(n_in));
    for (int o = 0; o < n_out; ++o) {
        for (int i = 0; i < n_in; ++i) {
            int ix = inner_first ? i : o;
            int iy = inner_first ? o : i;
            mag[static_cast<size_t>(i)] = std::abs(F.at(ix, iy)) * spec.m(F.gx.t(ix), F.gy.t(iy));
        }
        inner_vals[static_cast<size_t>(o)] =
            detail::pnorm_from_samples(mag.data(), mag.size(), spec.p, cell_in);
    }
    return detail::pnorm_from_samples(inner_vals.data(), inner_vals.size(), spec.q, cell_out);
}

// ---------------------------------------------------------------------------
// Modulation and Wiener amalgam norms
// ---------------------------------------------------------------------------

namespace detail {
inline void require_window(const Signal& g) {
    double n2 = quad_norm(g, 2.0);
    if (n2 < 1e-6) throw ZeroWindow("window has negligible L^2 norm");
    if (std::abs(n2 - 1.0) > 1e-6) throw ZeroWindow("window must be L^2-normalized");
}
} // namespace detail

// || V_g f ||_{L^{p,q}_m} with the inner exponent on the time axis.
inline double modulation_norm(const Signal& f, double p, double q, const Weight& m, const Signal& g) {
    detail::require_window(g);
    Field2D V = stft(f, g);
    return mixed_norm(V, {p, q, m, MixedNormSpec::InnerAxis::first});
}

// Wiener amalgam norm || x -> m2(x) || V_g f(x, .) m1 ||_p ||_q: the inner
// exponent runs over frequency, m1 weights frequency, m2 weights time.
inline double amalgam_norm(const Signal& f, double p, double q, const Weight1D& m1,
                           const Weight1D& m2, const Signal& g) {
    detail::require_window(g);
    Field2D V = stft(f, g);
    Weight w = weight_separable(m2, m1);
    return mixed_norm(V, {p, q, w, MixedNormSpec::InnerAxis::second});
}

} // namespace symtf
