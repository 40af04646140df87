#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "symtf/errors.hpp"

namespace symtf {

using cplx = std::complex<double>;
inline constexpr double kPi = std::numbers::pi;

// Centered uniform grid: t_k = (k - n/2) * dx, k = 0..n-1, n a power of two.
struct Grid1D {
    int n = 0;
    double dx = 0.0;

    Grid1D() = default;
    Grid1D(int n_, double dx_) : n(n_), dx(dx_) {
        if (n < 2 || (n & (n - 1)) != 0) throw BadShape("Grid1D: n must be a power of two >= 2");
        if (!(dx > 0.0)) throw BadShape("Grid1D: dx must be positive");
    }

    double t(int k) const { return (k - n / 2) * dx; }
    double dual_dx() const { return 1.0 / (n * dx); }
    bool self_dual(double tol = 1e-12) const { return std::abs(dx - dual_dx()) <= tol; }
    double span() const { return n * dx; }

    bool operator==(const Grid1D& g) const { return n == g.n && dx == g.dx; }

    // Desk-scale default: n = 256, dx = 1/16 (self-dual).
    static Grid1D standard() { return Grid1D(256, 1.0 / 16.0); }
};

struct Signal {
    Grid1D grid;
    std::vector<cplx> v;

    Signal() = default;
    explicit Signal(const Grid1D& g) : grid(g), v(static_cast<size_t>(g.n), cplx{}) {}
    int n() const { return grid.n; }
};

// Complex samples on a product grid; row-major with the x index first.
struct Field2D {
    Grid1D gx, gy;
    std::vector<cplx> v;

    Field2D() = default;
    Field2D(const Grid1D& gx_, const Grid1D& gy_)
        : gx(gx_), gy(gy_), v(static_cast<size_t>(gx_.n) * gy_.n, cplx{}) {}

    cplx& at(int ix, int iy) { return v[static_cast<size_t>(ix) * gy.n + iy]; }
    cplx at(int ix, int iy) const { return v[static_cast<size_t>(ix) * gy.n + iy]; }
    int nx() const { return gx.n; }
    int ny() const { return gy.n; }
};

// values[j][k] = f[j] * conj(g[k])  (the conjugation of the second factor
// happens here, once, for the whole library).
inline Field2D tensor(const Signal& f, const Signal& g) {
    Field2D out(f.grid, g.grid);
    for (int j = 0; j < f.n(); ++j)
        for (int k = 0; k < g.n(); ++k)
            out.at(j, k) = f.v[static_cast<size_t>(j)] * std::conj(g.v[static_cast<size_t>(k)]);
    return out;
}

// Plain tensor product without conjugation.
inline Field2D tensor_plain(const Signal& f, const Signal& g) {
    Field2D out(f.grid, g.grid);
    for (int j = 0; j < f.n(); ++j)
        for (int k = 0; k < g.n(); ++k)
            out.at(j, k) = f.v[static_cast<size_t>(j)] * g.v[static_cast<size_t>(k)];
    return out;
}

namespace detail {
inline double pnorm_from_samples(const double* mag, size_t len, double p, double cell) {
    if (std::isinf(p)) {
        double m = 0.0;
        for (size_t i = 0; i < len; ++i) m = std::max(m, mag[i]);
        return m;
    }
    double acc = 0.0;
    for (size_t i = 0; i < len; ++i) acc += std::pow(mag[i], p);
    return std::pow(acc * cell, 1.0 / p);
}
} // namespace detail

// Riemann-sum L^p (quasi-)norm; p = infinity gives the max modulus.
inline double quad_norm(const Signal& f, double p) {
    if (!(p > 0.0)) throw BadShape("quad_norm: p must be positive");
    std::vector<double> mag(f.v.size());
    for (size_t i = 0; i < f.v.size(); ++i) mag[i] = std::abs(f.v[i]);
    return detail::pnorm_from_samples(mag.data(), mag.size(), p, f.grid.dx);
}

inline double quad_norm(const Field2D& f, double p) {
    if (!(p > 0.0)) throw BadShape("quad_norm: p must be positive");
    std::vector<double> mag(f.v.size());
    for (size_t i = 0; i < f.v.size(); ++i) mag[i] = std::abs(f.v[i]);
    return detail::pnorm_from_samples(mag.data(), mag.size(), p, f.gx.dx * f.gy.dx);
}

inline double max_modulus(const Field2D& f) {
    double m = 0.0;
    for (const cplx& z : f.v) m = std::max(m, std::abs(z));
    return m;
}

inline double max_modulus(const Signal& f) {
    double m = 0.0;
    for (const cplx& z : f.v) m = std::max(m, std::abs(z));
    return m;
}

// ---------------------------------------------------------------------------
// Test-signal families
// ---------------------------------------------------------------------------

namespace detail {
// Boundary decay guard: operator pipelines assume signals vanish at the grid
// edge (resampling treats outside values as zero).
inline void check_boundary_decay(const Signal& f, const std::string& what) {
    double m = max_modulus(f);
    double edge = std::max(std::abs(f.v.front()), std::abs(f.v.back()));
    if (m > 0.0 && edge > 1e-12 * m)
        throw ValidationError(what + ": boundary decay " + std::to_string(edge / m) +
                              " exceeds 1e-12 of peak");
}
} // namespace detail

// L^2-normalized Gaussian 2^{1/4} w^{-1/2} e^{-pi t^2 / w^2}.
inline Signal make_gaussian(const Grid1D& g, double width = 1.0) {
    if (!(width > 0.0)) throw UnknownDescriptor("gaussian width must be positive");
    Signal f(g);
    double c = std::pow(2.0, 0.25) / std::sqrt(width);
    for (int k = 0; k < g.n; ++k) {
        double t = g.t(k);
        f.v[static_cast<size_t>(k)] = c * std::exp(-kPi * t * t / (width * width));
    }
    detail::check_boundary_decay(f, "gaussian");
    return f;
}

// Gaussian with a unimodular quadratic chirp e^{i pi c t^2}.
inline Signal make_chirped_gaussian(const Grid1D& g, double rate, double width = 1.0) {
    Signal f = make_gaussian(g, width);
    for (int k = 0; k < g.n; ++k) {
        double t = g.t(k);
        f.v[static_cast<size_t>(k)] *= std::polar(1.0, kPi * rate * t * t);
    }
    return f;
}

// Hermite function of order k (h_0 is the standard Gaussian), normalized to
// unit grid L^2 norm.
inline Signal make_hermite(const Grid1D& g, int k) {
    if (k < 0) throw UnknownDescriptor("hermite order must be >= 0");
    Signal f(g);
    for (int i = 0; i < g.n; ++i) {
        double t = g.t(i);
        double u = std::sqrt(2.0 * kPi) * t;
        double h0 = 1.0, h1 = 2.0 * u;
        double h = (k == 0) ? h0 : h1;
        for (int m = 2; m <= k; ++m) {
            double h2 = 2.0 * u * h1 - 2.0 * (m - 1) * h0;
            h0 = h1;
            h1 = h2;
            h = h2;
        }
        f.v[static_cast<size_t>(i)] = h * std::exp(-kPi * t * t);
    }
    double nrm = quad_norm(f, 2.0);
    if (nrm <= 0.0) throw NumericalError("hermite: zero norm");
    for (auto& z : f.v) z /= nrm;
    detail::check_boundary_decay(f, "hermite");
    return f;
}

// pi(x0, xi0) applied to the standard Gaussian.
inline Signal make_shifted_gaussian(const Grid1D& g, double x0, double xi0) {
    Signal f(g);
    double c = std::pow(2.0, 0.25);
    for (int k = 0; k < g.n; ++k) {
        double t = g.t(k);
        f.v[static_cast<size_t>(k)] =
            c * std::exp(-kPi * (t - x0) * (t - x0)) * std::polar(1.0, 2.0 * kPi * xi0 * t);
    }
    detail::check_boundary_decay(f, "tf_shifted_gaussian");
    return f;
}

struct FamilySpec {
    enum class Kind { gaussian, chirped_gaussian, hermite, tf_shifted_gaussian };
    Kind kind = Kind::gaussian;
    std::vector<double> widths;                    // gaussian
    std::vector<double> rates;                     // chirped_gaussian
    double width = 1.0;                            // chirped_gaussian
    std::vector<int> orders;                       // hermite
    std::vector<std::pair<double, double>> shifts; // tf_shifted_gaussian
};

inline std::vector<Signal> make_family(const Grid1D& g, const FamilySpec& spec) {
    std::vector<Signal> out;
    switch (spec.kind) {
        case FamilySpec::Kind::gaussian:
            for (double w : spec.widths) out.push_back(make_gaussian(g, w));
            break;
        case FamilySpec::Kind::chirped_gaussian:
            for (double c : spec.rates) out.push_back(make_chirped_gaussian(g, c, spec.width));
            break;
        case FamilySpec::Kind::hermite:
            for (int k : spec.orders) out.push_back(make_hermite(g, k));
            break;
        case FamilySpec::Kind::tf_shifted_gaussian:
            for (auto [x0, xi0] : spec.shifts) out.push_back(make_shifted_gaussian(g, x0, xi0));
            break;
    }
    if (out.empty()) throw UnknownDescriptor("make_family: empty descriptor");
    for (const Signal& f : out) {
        double nrm = quad_norm(f, 2.0);
        if (std::abs(nrm - 1.0) > 1e-8)
            throw ValidationError("make_family: member norm " + std::to_string(nrm));
    }
    return out;
}

// The 24-member mixed family used by the norm-equivalence sweeps.
inline std::vector<Signal> standard_family(const Grid1D& g) {
    std::vector<Signal> out;
    for (double w : {0.5, 0.75, 1.0, 1.5, 2.0}) out.push_back(make_gaussian(g, w));
    for (double c : {-2.0, -1.0, 1.0, 2.0}) out.push_back(make_chirped_gaussian(g, c));
    for (int k : {0, 1, 2, 3}) out.push_back(make_hermite(g, k));
    const std::pair<double, double> shifts[] = {
        {1, 0},  {0, 1},     {-1, 1},    {2, -1},   {1, 2},    {-2, -2},
        {0.5, 0.5}, {1.5, 0}, {0, -1.5}, {-1, 0},   {0, 2}};
    for (auto [x0, xi0] : shifts) out.push_back(make_shifted_gaussian(g, x0, xi0));
    return out;
}

} // namespace symtf
