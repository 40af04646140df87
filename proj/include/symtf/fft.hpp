#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "symtf/grid.hpp"

namespace symtf {

namespace detail {

inline const std::vector<cplx>& fft_twiddles(size_t n) {
    thread_local std::map<size_t, std::vector<cplx>> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<cplx> tw(n / 2);
    for (size_t m = 0; m < n / 2; ++m)
        tw[m] = std::polar(1.0, -2.0 * kPi * static_cast<double>(m) / static_cast<double>(n));
    return cache.emplace(n, std::move(tw)).first->second;
}

// Unscaled radix-2 DFT: a_j <- sum_k a_k e^{-+2 pi i jk/n}.
inline void fft_radix2(std::vector<cplx>& a, bool inverse) {
    size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0) throw BadShape("fft: length must be a power of two");
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    const auto& tw = fft_twiddles(n);
    for (size_t len = 2; len <= n; len <<= 1) {
        size_t step = n / len;
        for (size_t i = 0; i < n; i += len) {
            for (size_t k = 0; k < len / 2; ++k) {
                cplx w = tw[k * step];
                if (inverse) w = std::conj(w);
                cplx u = a[i + k];
                cplx t = w * a[i + k + len / 2];
                a[i + k] = u + t;
                a[i + k + len / 2] = u - t;
            }
        }
    }
}

// i^{-n} for the centered-grid phase factor.
inline cplx centered_phase(int n) {
    switch (((n % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, -1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, 1.0};
    }
}

// Centered unitary transform on raw samples living on a grid with spacing dx:
//   forward: out_j = dx * sum_k in_k e^{-2 pi i t_k nu_j},  nu_j = (j-n/2)/(n dx)
// realized as a standard FFT with alternating-sign pre/post twists.
inline void centered_fft(std::vector<cplx>& v, double dx, bool inverse) {
    int n = static_cast<int>(v.size());
    for (int k = 1; k < n; k += 2) v[static_cast<size_t>(k)] = -v[static_cast<size_t>(k)];
    fft_radix2(v, inverse);
    double scale = inverse ? 1.0 / (n * dx) : dx;
    cplx ph = centered_phase(n);
    if (inverse) ph = std::conj(ph);
    cplx even = scale * ph;
    cplx odd = -even;
    for (int j = 0; j < n; ++j) v[static_cast<size_t>(j)] *= (j % 2 == 0) ? even : odd;
}

} // namespace detail

// Unitary Fourier transform approximating int f(x) e^{-2 pi i xi x} dx on the
// dual grid; requires a self-dual grid so the output lives on the same grid.
inline Signal fourier(const Signal& f) {
    if (!f.grid.self_dual()) throw GridNotSelfDual("fourier");
    Signal out = f;
    detail::centered_fft(out.v, f.grid.dx, false);
    return out;
}

inline Signal inverse_fourier(const Signal& f) {
    if (!f.grid.self_dual()) throw GridNotSelfDual("inverse_fourier");
    Signal out = f;
    detail::centered_fft(out.v, f.grid.dx, true);
    return out;
}

namespace detail {
template <typename RowOp>
inline void for_each_axis_line(Field2D& f, int axis, RowOp&& op) {
    // axis 1: lines run over ix at fixed iy; axis 2: over iy at fixed ix.
    if (axis == 2) {
        std::vector<cplx> line(static_cast<size_t>(f.ny()));
        for (int ix = 0; ix < f.nx(); ++ix) {
            for (int iy = 0; iy < f.ny(); ++iy) line[static_cast<size_t>(iy)] = f.at(ix, iy);
            op(line, ix);
            for (int iy = 0; iy < f.ny(); ++iy) f.at(ix, iy) = line[static_cast<size_t>(iy)];
        }
    } else if (axis == 1) {
        std::vector<cplx> line(static_cast<size_t>(f.nx()));
        for (int iy = 0; iy < f.ny(); ++iy) {
            for (int ix = 0; ix < f.nx(); ++ix) line[static_cast<size_t>(ix)] = f.at(ix, iy);
            op(line, iy);
            for (int ix = 0; ix < f.nx(); ++ix) f.at(ix, iy) = line[static_cast<size_t>(ix)];
        }
    } else {
        throw BadShape("axis must be 1 or 2");
    }
}
} // namespace detail

// 1-D unitary Fourier transform along the chosen axis of a 2-D field.
inline Field2D partial_fourier(const Field2D& f, int axis) {
    const Grid1D& g = (axis == 1) ? f.gx : f.gy;
    if (!g.self_dual()) throw GridNotSelfDual("partial_fourier");
    Field2D out = f;
    detail::for_each_axis_line(out, axis,
                               [&](std::vector<cplx>& line, int) { detail::centered_fft(line, g.dx, false); });
    return out;
}

inline Field2D inverse_partial_fourier(const Field2D& f, int axis) {
    const Grid1D& g = (axis == 1) ? f.gx : f.gy;
    if (!g.self_dual()) throw GridNotSelfDual("inverse_partial_fourier");
    Field2D out = f;
    detail::for_each_axis_line(out, axis,
                               [&](std::vector<cplx>& line, int) { detail::centered_fft(line, g.dx, true); });
    return out;
}

inline Field2D fourier2d(const Field2D& f) { return partial_fourier(partial_fourier(f, 1), 2); }
inline Field2D inverse_fourier2d(const Field2D& f) {
    return inverse_partial_fourier(inverse_partial_fourier(f, 1), 2);
}

// ---------------------------------------------------------------------------
// Band-limited resampling helpers
// ---------------------------------------------------------------------------

// g(t) = f(t + delta), exact for the band-limited periodic interpolant.
// Integer lattice shifts reduce to a cyclic rotation.
inline Signal frac_translate(const Signal& f, double delta) {
    double steps = delta / f.grid.dx;
    double rounded = std::round(steps);
    if (std::abs(steps - rounded) < 1e-12) {
        Signal out = f;
        int s = static_cast<int>(rounded);
        int n = f.n();
        int k = ((s % n) + n) % n;
        // out[j] = f[j + s]  (cyclic)
        std::rotate(out.v.begin(), out.v.begin() + k, out.v.end());
        return out;
    }
    if (!f.grid.self_dual()) throw GridNotSelfDual("frac_translate");
    Signal sp = fourier(f);
    for (int j = 0; j < sp.n(); ++j) {
        double nu = sp.grid.t(j);
        sp.v[static_cast<size_t>(j)] *= std::polar(1.0, 2.0 * kPi * nu * delta);
    }
    return inverse_fourier(sp);
}

// Evaluate the band-limited interpolant of f at arbitrary points.
inline std::vector<cplx> bandlimited_eval(const Signal& f, const std::vector<double>& pts) {
    Signal sp = fourier(f);
    double ddx = f.grid.dual_dx();
    std::vector<cplx> out(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) {
        cplx acc = 0.0;
        for (int j = 0; j < sp.n(); ++j)
            acc += sp.v[static_cast<size_t>(j)] * std::polar(1.0, 2.0 * kPi * sp.grid.t(j) * pts[i]);
        out[i] = acc * ddx;
    }
    return out;
}

// pi(y, eta) f (t) = e^{2 pi i eta t} f(t - y)
inline Signal tf_shift(const Signal& f, double y, double eta) {
    Signal out = frac_translate(f, -y);
    for (int k = 0; k < out.n(); ++k)
        out.v[static_cast<size_t>(k)] *= std::polar(1.0, 2.0 * kPi * eta * out.grid.t(k));
    return out;
}

// Translate a field by (dx_idx, dy_idx) whole cells (cyclic), then modulate by
// e^{2 pi i (m1 x + m2 y)}.
inline Field2D tf_shift_field(const Field2D& f, int dx_idx, int dy_idx, double m1, double m2) {
    Field2D out(f.gx, f.gy);
    int nx = f.nx(), ny = f.ny();
    int sx = ((dx_idx % nx) + nx) % nx;
    int sy = ((dy_idx % ny) + ny) % ny;
    for (int ix = 0; ix < nx; ++ix) {
        int jx = (ix - sx + nx) % nx;
        for (int iy = 0; iy < ny; ++iy) {
            int jy = (iy - sy + ny) % ny;
            out.at(ix, iy) = f.at(jx, jy);
        }
    }
    if (m1 != 0.0 || m2 != 0.0) {
        for (int ix = 0; ix < nx; ++ix) {
            cplx px = std::polar(1.0, 2.0 * kPi * m1 * f.gx.t(ix));
            for (int iy = 0; iy < ny; ++iy)
                out.at(ix, iy) *= px * std::polar(1.0, 2.0 * kPi * m2 * f.gy.t(iy));
        }
    }
    return out;
}

} // namespace symtf
