#pragma once

#include "symtf/fft.hpp"
#include "symtf/symplectic.hpp"

namespace symtf {

// ---------------------------------------------------------------------------
// Phase-ambiguity discipline: metaplectic operators are defined up to a
// unimodular constant, so pipeline comparisons go through these helpers.
// ---------------------------------------------------------------------------

struct PhaseTolerance {
    enum class Mode { modulus_only, up_to_global_phase };
    Mode mode = Mode::up_to_global_phase;
    double tol = 1e-6;
};

namespace detail {
inline cplx inner(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    cplx s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
    return s;
}
inline double l2(const std::vector<cplx>& a) {
    double s = 0.0;
    for (const cplx& z : a) s += std::norm(z);
    return std::sqrt(s);
}
} // namespace detail

// Unimodular c minimizing || a - c b ||_2.
inline cplx phase_align(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    cplx ip = detail::inner(a, b);
    double m = std::abs(ip);
    return m > 1e-300 ? ip / m : cplx{1.0, 0.0};
}

inline double rel_l2_after_alignment(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    if (a.size() != b.size()) throw BadShape("rel_l2_after_alignment: size mismatch");
    cplx c = phase_align(a, b);
    double nb = detail::l2(b);
    if (nb == 0.0) return detail::l2(a) == 0.0 ? 0.0 : 1.0;
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - c * b[i]);
    return std::sqrt(s) / nb;
}

// sup | |a| - |b| |, normalized by sup |b|.
inline double modulus_rel_sup_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    if (a.size() != b.size()) throw BadShape("modulus_rel_sup_diff: size mismatch");
    double d = 0.0, m = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        d = std::max(d, std::abs(std::abs(a[i]) - std::abs(b[i])));
        m = std::max(m, std::abs(b[i]));
    }
    return m > 0.0 ? d / m : d;
}

inline double rel_l2_after_alignment(const Signal& a, const Signal& b) { return rel_l2_after_alignment(a.v, b.v); }
inline double rel_l2_after_alignment(const Field2D& a, const Field2D& b) { return rel_l2_after_alignment(a.v, b.v); }
inline double modulus_rel_sup_diff(const Signal& a, const Signal& b) { return modulus_rel_sup_diff(a.v, b.v); }
inline double modulus_rel_sup_diff(const Field2D& a, const Field2D& b) { return modulus_rel_sup_diff(a.v, b.v); }

// ---------------------------------------------------------------------------
// Generator actions
// ---------------------------------------------------------------------------

// Multiplication by the chirp Phi_C(t) = e^{i pi t.Ct}.
inline Signal chirp_multiply(double c, const Signal& f) {
    Signal out = f;
    for (int k = 0; k < f.n(); ++k) {
        double t = f.grid.t(k);
        out.v[static_cast<size_t>(k)] *= std::polar(1.0, kPi * c * t * t);
    }
    return out;
}

inline Signal chirp_multiply(const Mat& C, const Signal& f) {
    if (C.rows != 1 || C.cols != 1) throw BadShape("chirp_multiply: signal payload must be 1x1");
    return chirp_multiply(C(0, 0), f);
}

inline Field2D chirp_multiply(const Mat& C, const Field2D& f) {
    if (C.rows != 2 || C.cols != 2) throw BadShape("chirp_multiply: field payload must be 2x2");
    if (!is_symmetric(C)) throw NotSymmetric("chirp_multiply");
    Field2D out = f;
    for (int ix = 0; ix < f.nx(); ++ix) {
        double x = f.gx.t(ix);
        for (int iy = 0; iy < f.ny(); ++iy) {
            double y = f.gy.t(iy);
            double q = C(0, 0) * x * x + 2.0 * C(0, 1) * x * y + C(1, 1) * y * y;
            out.at(ix, iy) *= std::polar(1.0, kPi * q);
        }
    }
    return out;
}

// mu(V_C^T) = F Phi_{-C} F^{-1}: Fourier conjugation avoids sampling the
// convolution kernel and its normalization constant.
inline Signal chirp_convolve(double c, const Signal& f) {
    return fourier(chirp_multiply(-c, inverse_fourier(f)));
}
inline Signal chirp_convolve(const Mat& C, const Signal& f) {
    if (C.rows != 1 || C.cols != 1) throw BadShape("chirp_convolve: signal payload must be 1x1");
    return chirp_convolve(C(0, 0), f);
}
inline Field2D chirp_convolve(const Mat& C, const Field2D& f) {
    if (!is_symmetric(C)) throw NotSymmetric("chirp_convolve");
    return fourier2d(chirp_multiply(-C, inverse_fourier2d(f)));
}

// ---------------------------------------------------------------------------
// Dilation  T_L f = |det L|^{1/2} f(L .)
// ---------------------------------------------------------------------------

namespace detail {

inline bool near_integer(double x, double tol = 1e-12) { return std::abs(x - std::round(x)) <= tol; }

// line(k) <- line evaluated at a * t_k (no normalization), zero outside.
inline std::vector<cplx> scale_line(const std::vector<cplx>& line, const Grid1D& g, double a) {
    int n = g.n;
    std::vector<cplx> out(static_cast<size_t>(n), cplx{});
    if (near_integer(a)) {
        int ia = static_cast<int>(std::round(a));
        for (int k = 0; k < n; ++k) {
            long j = static_cast<long>(ia) * (k - n / 2) + n / 2;
            if (j >= 0 && j < n) out[static_cast<size_t>(k)] = line[static_cast<size_t>(j)];
        }
        return out;
    }
    Signal s;
    s.grid = g;
    s.v = line;
    std::vector<double> pts(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) pts[static_cast<size_t>(k)] = a * g.t(k);
    return bandlimited_eval(s, pts);
}

inline bool integer_entries(const Mat& m, double tol = 1e-12) {
    for (double x : m.a)
        if (!near_integer(x, tol)) return false;
    return true;
}

// out(z) = F(L z) with band-limited passes (no normalization).
inline Field2D compose_linear(const Mat& L, const Field2D& f);

inline Field2D transpose_field(const Field2D& f) {
    Field2D out(f.gy, f.gx);
    for (int ix = 0; ix < f.nx(); ++ix)
        for (int iy = 0; iy < f.ny(); ++iy) out.at(iy, ix) = f.at(ix, iy);
    return out;
}

inline Field2D compose_linear(const Mat& L, const Field2D& f) {
    if (f.gx.n != f.gy.n || f.gx.dx != f.gy.dx)
        throw BadShape("compose_linear: field grids must match");
    int n = f.nx();
    if (integer_entries(L)) {
        Field2D out(f.gx, f.gy);
        long l11 = std::lround(L(0, 0)), l12 = std::lround(L(0, 1));
        long l21 = std::lround(L(1, 0)), l22 = std::lround(L(1, 1));
        for (int ix = 0; ix < n; ++ix)
            for (int iy = 0; iy < n; ++iy) {
                long u = ix - n / 2, w = iy - n / 2;
                long jx = l11 * u + l12 * w + n / 2;
                long jy = l21 * u + l22 * w + n / 2;
                if (jx >= 0 && jx < n && jy >= 0 && jy < n)
                    out.at(ix, iy) = f.at(static_cast<int>(jx), static_cast<int>(jy));
            }
        return out;
    }
    if (std::abs(L(0, 0)) <= 1e-9) {
        // Swap coordinates first: F(Lz) = (T_{LP} F)(Pz) with P the axis swap.
        Mat P{{0.0, 1.0}, {1.0, 0.0}};
        return transpose_field(compose_linear(L * P, f));
    }
    double a = L(0, 0);
    double m = L(1, 0) / a;
    double s = L(0, 1) / a;
    double e = det(L) / a;
    Field2D out = f;
    // pass 1: out(z) = f(z1, m z1 + z2)
    if (m != 0.0)
        for_each_axis_line(out, 2, [&](std::vector<cplx>& line, int ix) {
            Signal ls;
            ls.grid = out.gy;
            ls.v = line;
            line = frac_translate(ls, m * out.gx.t(ix)).v;
        });
    // pass 2: out(z) = prev(a z1, e z2)
    if (a != 1.0)
        for_each_axis_line(out, 1, [&](std::vector<cplx>& line, int) { line = scale_line(line, out.gx, a); });
    if (e != 1.0)
        for_each_axis_line(out, 2, [&](std::vector<cplx>& line, int) { line = scale_line(line, out.gy, e); });
    // pass 3: out(z) = prev(z1 + s z2, z2)
    if (s != 0.0)
        for_each_axis_line(out, 1, [&](std::vector<cplx>& line, int iy) {
            Signal ls;
            ls.grid = out.gx;
            ls.v = line;
            line = frac_translate(ls, s * out.gy.t(iy)).v;
        });
    return out;
}

} // namespace detail

inline Signal dilate(double l, const Signal& f) {
    if (std::abs(l) < 1e-12) throw SingularL("dilate: scalar payload ~ 0");
    Signal out(f.grid);
    double c = std::sqrt(std::abs(l));
    if (detail::near_integer(l)) {
        int il = static_cast<int>(std::round(l));
        int n = f.n();
        for (int k = 0; k < n; ++k) {
            long j = static_cast<long>(il) * (k - n / 2) + n / 2;
            if (j >= 0 && j < n) out.v[static_cast<size_t>(k)] = c * f.v[static_cast<size_t>(j)];
        }
        return out;
    }
    std::vector<double> pts(static_cast<size_t>(f.n()));
    for (int k = 0; k < f.n(); ++k) pts[static_cast<size_t>(k)] = l * f.grid.t(k);
    out.v = bandlimited_eval(f, pts);
    for (auto& z : out.v) z *= c;
    return out;
}

inline Signal dilate(const Mat& L, const Signal& f) {
    if (L.rows != 1 || L.cols != 1) throw BadShape("dilate: signal payload must be 1x1");
    return dilate(L(0, 0), f);
}

inline Field2D dilate(const Mat& L, const Field2D& f) {
    if (L.rows != 2 || L.cols != 2) throw BadShape("dilate: field payload must be 2x2");
    double d = det(L);
    if (std::abs(d) < 1e-12) throw SingularL("dilate: |det L| ~ 0");
    Field2D out = detail::compose_linear(L, f);
    double c = std::sqrt(std::abs(d));
    for (auto& z : out.v) z *= c;
    return out;
}

// ---------------------------------------------------------------------------
// Word execution and the free-matrix closed form
// ---------------------------------------------------------------------------

namespace detail {
inline Signal partial_fourier_set(const Signal& f, const std::vector<int>& idx) {
    Signal out = f;
    for (int j : idx) {
        if (j != 1) throw BadShape("partial_fourier_set: signal axis out of range");
        out = fourier(out);
    }
    return out;
}
inline Field2D partial_fourier_set(const Field2D& f, const std::vector<int>& idx) {
    Field2D out = f;
    for (int j : idx) out = partial_fourier(out, j);
    return out;
}

inline Signal full_fourier(const Signal& f) { return fourier(f); }
inline Field2D full_fourier(const Field2D& f) { return fourier2d(f); }

template <typename X>
inline X apply_atom(const GeneratorAtom& a, const X& x) {
    switch (a.kind) {
        case GeneratorAtom::Kind::interchange: return partial_fourier_set(x, a.idx);
        case GeneratorAtom::Kind::dilation: return dilate(a.payload, x);
        case GeneratorAtom::Kind::chirp_mul: return chirp_multiply(a.payload, x);
        case GeneratorAtom::Kind::chirp_conv: return chirp_convolve(a.payload, x);
    }
    throw Error("unreachable");
}

template <typename X>
constexpr int expected_half_dim() {
    return std::is_same_v<X, Signal> ? 1 : 2;
}
} // namespace detail

// Atoms applied right-to-left; the result equals mu(product matrix) up to a
// global unimodular constant.
template <typename X>
inline X apply_word(const GeneratorWord& w, const X& x) {
    X out = x;
    for (auto it = w.atoms.rbegin(); it != w.atoms.rend(); ++it) {
        if (it->n != detail::expected_half_dim<X>())
            throw BadShape("apply_word: atom dimension mismatch");
        out = detail::apply_atom(*it, out);
    }
    return out;
}

// mu(A) for free A (invertible B-block), as the unitary pipeline
//   u . Phi_{D B^{-1}} . T_{B^{-1}} . F . Phi_{B^{-1} A}
// with u = |det B|^{1/2} (det B)^{-1/2} on the principal branch.  Runs the
// chirp/FFT/dilation kernel consistent with the covariance identity
// mu(A) rho(z) mu(A)^{-1} = rho(Az); the result is certified up to a global
// phase only.
template <typename X>
inline X apply_free(const SympMat& s, const X& x) {
    if (s.half_dim != detail::expected_half_dim<X>()) throw BadShape("apply_free: dimension mismatch");
    auto [A, B, C, D] = blocks(s);
    (void)C;
    double db = det(B);
    if (std::abs(db) <= kTolInv) throw NotFree("apply_free: det(B-block) ~ 0");
    Mat Binv = inverse(B);
    Mat c2 = Binv * A;
    Mat c1 = D * Binv;
    c2 = (c2 + c2.transpose()) * 0.5;
    c1 = (c1 + c1.transpose()) * 0.5;
    cplx u = std::sqrt(std::abs(db)) / std::sqrt(cplx(db));

    X out = chirp_multiply(c2, x);
    out = detail::full_fourier(out);
    out = dilate(Binv, out);
    out = chirp_multiply(c1, out);
    for (auto& z : out.v) z *= u;
    return out;
}

// Strategy dispatcher for general symplectic matrices:
//   (1) free matrix -> closed form;
//   (2) invertible A-block -> closed form on the Fourier transform,
//       mu(A) = mu(A J^{-1}) mu(J);
//   (3) interchange search: find J-index set with A Pi^{-1} free.
// The search order is fixed so outputs are deterministic.
template <typename X>
inline X apply_metaplectic(const SympMat& s, const X& x) {
    int n = detail::expected_half_dim<X>();
    if (s.half_dim != n) throw BadShape("apply_metaplectic: dimension mismatch");
    auto [A, B, C, D] = blocks(s);
    (void)C;
    (void)D;
    if (std::abs(det(B)) > kTolInv) return apply_free(s, x);
    if (std::abs(det(A)) > kTolInv) {
        SympMat m = s * make_J(n).inv();
        return apply_free(m, detail::full_fourier(x));
    }
    std::vector<std::vector<int>> subsets;
    if (n == 1) {
        subsets = {{1}};
    } else if (n == 2) {
        subsets = {{1}, {2}, {1, 2}};
    } else {
        throw NoStrategy("apply_metaplectic: half_dim > 2 not supported");
    }
    for (const auto& idx : subsets) {
        SympMat pi = make_interchange(idx, n);
        SympMat m = SympMat::from(s.m * pi.inv().m);
        auto [Am, Bm, Cm, Dm] = blocks(m);
        (void)Am;
        (void)Cm;
        (void)Dm;
        if (std::abs(det(Bm)) > kTolInv)
            return apply_free(m, detail::partial_fourier_set(x, idx));
    }
    throw NoStrategy("apply_metaplectic: no dispatch branch applies");
}

} // namespace symtf
