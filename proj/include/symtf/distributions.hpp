#pragma once

#include "symtf/metaplectic.hpp"

namespace symtf {

namespace detail {
inline void require_shared_grid(const Signal& f, const Signal& g) {
    if (!(f.grid == g.grid)) throw GridMismatch("signals must share a grid");
    if (!f.grid.self_dual()) throw GridNotSelfDual("time-frequency transforms need a self-dual grid");
}
} // namespace detail

inline Signal conj_signal(const Signal& f) {
    Signal out = f;
    for (auto& z : out.v) z = std::conj(z);
    return out;
}

// ---------------------------------------------------------------------------
// STFT
// ---------------------------------------------------------------------------

// Operator route V_g f = F_2 T_L (f (x) conj g) with T_L F(x, y) = F(y, y-x).
inline Field2D stft(const Signal& f, const Signal& g) {
    detail::require_shared_grid(f, g);
    Field2D prod = tensor(f, g);
    int n = f.n();
    Field2D sheared(f.grid, f.grid);
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy) {
            int j2 = iy - ix + n / 2;  // index of y - x
            if (j2 >= 0 && j2 < n) sheared.at(ix, iy) = prod.at(iy, j2);
        }
    return partial_fourier(sheared, 2);
}

// Direct Riemann-sum route of the defining integral, for cross-checks.
inline Field2D stft_direct(const Signal& f, const Signal& g) {
    detail::require_shared_grid(f, g);
    int n = f.n();
    Field2D out(f.grid, f.grid);
    std::vector<cplx> col(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            int kg = k - j + n / 2;  // index of t_k - x_j
            col[static_cast<size_t>(k)] =
                (kg >= 0 && kg < n) ? f.v[static_cast<size_t>(k)] * std::conj(g.v[static_cast<size_t>(kg)]) : cplx{};
        }
        detail::centered_fft(col, f.grid.dx, false);
        for (int m = 0; m < n; ++m) out.at(j, m) = col[static_cast<size_t>(m)];
    }
    return out;
}

// ---------------------------------------------------------------------------
// tau-Wigner family
// ---------------------------------------------------------------------------

// W_0(f,g)(x, xi) = f(x) conj(g^(xi)) e^{-2 pi i xi x}
inline Field2D rihacek(const Signal& f, const Signal& g) {
    detail::require_shared_grid(f, g);
    Signal gh = fourier(g);
    Field2D out(f.grid, f.grid);
    for (int ix = 0; ix < f.n(); ++ix) {
        double x = f.grid.t(ix);
        for (int iy = 0; iy < f.n(); ++iy) {
            double xi = f.grid.t(iy);
            out.at(ix, iy) = f.v[static_cast<size_t>(ix)] * std::conj(gh.v[static_cast<size_t>(iy)]) *
                             std::polar(1.0, -2.0 * kPi * xi * x);
        }
    }
    return out;
}

// W_1(f,g)(x, xi) = f^(xi) conj(g(x)) e^{+2 pi i xi x}
inline Field2D conj_rihacek(const Signal& f, const Signal& g) {
    detail::require_shared_grid(f, g);
    Signal fh = fourier(f);
    Field2D out(f.grid, f.grid);
    for (int ix = 0; ix < f.n(); ++ix) {
        double x = f.grid.t(ix);
        for (int iy = 0; iy < f.n(); ++iy) {
            double xi = f.grid.t(iy);
            out.at(ix, iy) = fh.v[static_cast<size_t>(iy)] * std::conj(g.v[static_cast<size_t>(ix)]) *
                             std::polar(1.0, 2.0 * kPi * xi * x);
        }
    }
    return out;
}

// Direct quadrature of the tau-Wigner integral; the shifted factors
// f(x + tau t), g(x - (1-tau) t) come from band-limited translation, which is
// an exact index shift whenever the offset is a whole number of cells.
inline Field2D tau_wigner(const Signal& f, const Signal& g, double tau) {
    detail::require_shared_grid(f, g);
    if (tau == 0.0) return rihacek(f, g);
    if (tau == 1.0) return conj_rihacek(f, g);
    int n = f.n();
    std::vector<std::vector<cplx>> rows(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        double t = f.grid.t(k);
        Signal rf = frac_translate(f, tau * t);
        Signal rg = frac_translate(g, -(1.0 - tau) * t);
        rows[static_cast<size_t>(k)].resize(static_cast<size_t>(n));
        for (int ix = 0; ix < n; ++ix)
            rows[static_cast<size_t>(k)][static_cast<size_t>(ix)] =
                rf.v[static_cast<size_t>(ix)] * std::conj(rg.v[static_cast<size_t>(ix)]);
    }
    Field2D out(f.grid, f.grid);
    std::vector<cplx> col(static_cast<size_t>(n));
    for (int ix = 0; ix < n; ++ix) {
        for (int k = 0; k < n; ++k) col[static_cast<size_t>(k)] = rows[static_cast<size_t>(k)][static_cast<size_t>(ix)];
        detail::centered_fft(col, f.grid.dx, false);
        for (int m = 0; m < n; ++m) out.at(ix, m) = col[static_cast<size_t>(m)];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Metaplectic Wigner distribution
// ---------------------------------------------------------------------------

// W_A(f, g) = mu(A)(f (x) conj g); defined up to a global unimodular phase.
inline Field2D metaplectic_wigner(const SympMat& A, const Signal& f, const Signal& g) {
    detail::require_shared_grid(f, g);
    if (A.half_dim != 2) throw BadShape("metaplectic_wigner: need a matrix in Sp(2, R)");
    return apply_metaplectic(A, tensor(f, g));
}

// ---------------------------------------------------------------------------
// Generalized chirp-atom families
// ---------------------------------------------------------------------------

// Symmetric 2d x 2d matrix C = [[C11, C12], [C12^T, C22]] defining the atom
// chirp Phi_C(xi, t); C12 must be invertible for the matrix constructors.
struct ChirpAtomSpec {
    Mat C11, C12, C22;

    ChirpAtomSpec(Mat c11, Mat c12, Mat c22)
        : C11(std::move(c11)), C12(std::move(c12)), C22(std::move(c22)) {
        if (!C11.square() || !C12.square() || !C22.square() || C11.rows != C12.rows ||
            C12.rows != C22.rows)
            throw BadShape("ChirpAtomSpec: blocks must be square of equal size");
        if (!is_symmetric(C11)) throw NotSymmetric("ChirpAtomSpec: C11");
        if (!is_symmetric(C22)) throw NotSymmetric("ChirpAtomSpec: C22");
    }

    static ChirpAtomSpec scalar(double c11, double c12, double c22) {
        return ChirpAtomSpec(Mat{{c11}}, Mat{{c12}}, Mat{{c22}});
    }

    int d() const { return C11.rows; }
    void require_invertible_c12() const {
        if (std::abs(det(C12)) < 1e-12) throw SingularC12("ChirpAtomSpec: det C12 ~ 0");
    }
};

namespace detail {
// (x, xi) |-> (x, C12^T xi) as a dilation matrix, and the xi-side chirp block.
inline SympMat gen_scale_matrix(const ChirpAtomSpec& spec) {
    int d = spec.d();
    Mat M(2 * d, 2 * d);
    M.set_block(0, 0, Mat::identity(d));
    M.set_block(d, d, spec.C12.transpose());
    return make_DL(M);
}
inline SympMat gen_xi_chirp_matrix(const ChirpAtomSpec& spec) {
    int d = spec.d();
    Mat c(2 * d, 2 * d);
    c.set_block(d, d, -spec.C11);
    return make_VC(c);
}
// Chirp in the second variable of the (x, t) field, payload -C22.
inline SympMat gen_t_chirp_matrix(const ChirpAtomSpec& spec) {
    int d = spec.d();
    Mat c(2 * d, 2 * d);
    c.set_block(d, d, -spec.C22);
    return make_VC(c);
}
// D_{L_tau} with T_{L_tau} F(x, y) = F(x + tau y, x - (1 - tau) y).
inline SympMat tau_shear_matrix(double tau, int d) {
    Mat I = Mat::identity(d);
    Mat L(2 * d, 2 * d);
    L.set_block(0, 0, I);
    L.set_block(0, d, I * tau);
    L.set_block(d, 0, I);
    L.set_block(d, d, I * (-(1.0 - tau)));
    return make_DL(L);
}
} // namespace detail

// Matrix of the generalized STFT: the operator factorization
//   Phi_{xi-chirp} . T_{scale} . A_ST . (Phi_{-C22} on the first factor).
inline SympMat gen_stft_matrix(const ChirpAtomSpec& spec, int d) {
    if (spec.d() != d) throw BadShape("gen_stft_matrix: dimension mismatch");
    spec.require_invertible_c12();
    return SympMat::from(detail::gen_xi_chirp_matrix(spec).m * detail::gen_scale_matrix(spec).m *
                             make_AST(d).m * lift_left(make_VC(-spec.C22)).m,
                         1e-9);
}

// Matrix of the generalized tau-Wigner distribution.
inline SympMat gen_tau_matrix(double tau, const ChirpAtomSpec& spec, int d) {
    if (spec.d() != d) throw BadShape("gen_tau_matrix: dimension mismatch");
    spec.require_invertible_c12();
    return SympMat::from(detail::gen_xi_chirp_matrix(spec).m * detail::gen_scale_matrix(spec).m *
                             make_AFT2(d).m * detail::gen_t_chirp_matrix(spec).m *
                             detail::tau_shear_matrix(tau, d).m,
                         1e-9);
}

namespace detail {
// Riemann sum over t of w(t) e^{-2 pi i (c12 xi_m) t} for every output
// frequency; lattice-compatible c12 reduces to an FFT with index remap
// (the Riemann sum is periodic in frequency, so the remap wraps).
struct ScaledFreqKernel {
    const Grid1D& grid;
    double c12;
    bool integer_path;
    std::vector<cplx> kernel;  // row-major [m][k] when the direct path is used

    ScaledFreqKernel(const Grid1D& g, double c12_) : grid(g), c12(c12_) {
        integer_path = near_integer(c12);
        if (!integer_path) {
            int n = grid.n;
            kernel.resize(static_cast<size_t>(n) * n);
            for (int m = 0; m < n; ++m) {
                double nu = c12 * grid.t(m);
                for (int k = 0; k < n; ++k)
                    kernel[static_cast<size_t>(m) * n + k] =
                        std::polar(1.0, -2.0 * kPi * nu * grid.t(k)) * grid.dx;
            }
        }
    }

    void apply(std::vector<cplx>& w) const {
        int n = grid.n;
        if (integer_path) {
            detail::centered_fft(w, grid.dx, false);
            std::vector<cplx> out(static_cast<size_t>(n));
            long ic = std::lround(c12);
            for (int m = 0; m < n; ++m) {
                long j = ic * (m - n / 2) + n / 2;
                j = ((j % n) + n) % n;
                out[static_cast<size_t>(m)] = w[static_cast<size_t>(j)];
            }
            w = std::move(out);
            return;
        }
        std::vector<cplx> out(static_cast<size_t>(n), cplx{});
        for (int m = 0; m < n; ++m) {
            cplx acc = 0.0;
            const cplx* row = &kernel[static_cast<size_t>(m) * n];
            for (int k = 0; k < n; ++k) acc += row[static_cast<size_t>(k)] * w[static_cast<size_t>(k)];
            out[static_cast<size_t>(m)] = acc;
        }
        w = std::move(out);
    }
};
} // namespace detail

// Direct quadrature of the generalized STFT (d = 1 signals).
inline Field2D generalized_stft(const Signal& f, const Signal& g, const ChirpAtomSpec& spec) {
    detail::require_shared_grid(f, g);
    if (spec.d() != 1) throw BadShape("generalized_stft: signal-level transforms are 1-D");
    spec.require_invertible_c12();
    double c11 = spec.C11(0, 0), c12 = spec.C12(0, 0), c22 = spec.C22(0, 0);
    int n = f.n();
    Signal fc = f;
    for (int k = 0; k < n; ++k) {
        double t = f.grid.t(k);
        fc.v[static_cast<size_t>(k)] *= std::polar(1.0, -kPi * c22 * t * t);
    }
    detail::ScaledFreqKernel kernel(f.grid, c12);
    double amp = std::sqrt(std::abs(c12));
    Field2D out(f.grid, f.grid);
    std::vector<cplx> w(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            int kg = k - j + n / 2;
            w[static_cast<size_t>(k)] =
                (kg >= 0 && kg < n) ? fc.v[static_cast<size_t>(k)] * std::conj(g.v[static_cast<size_t>(kg)]) : cplx{};
        }
        kernel.apply(w);
        for (int m = 0; m < n; ++m) {
            double xi = f.grid.t(m);
            out.at(j, m) = amp * std::polar(1.0, -kPi * c11 * xi * xi) * w[static_cast<size_t>(m)];
        }
    }
    return out;
}

// Direct quadrature of the generalized tau-Wigner distribution (d = 1).
inline Field2D generalized_tau_wigner(const Signal& f, const Signal& g, double tau,
                                      const ChirpAtomSpec& spec) {
    detail::require_shared_grid(f, g);
    if (spec.d() != 1) throw BadShape("generalized_tau_wigner: signal-level transforms are 1-D");
    spec.require_invertible_c12();
    double c11 = spec.C11(0, 0), c12 = spec.C12(0, 0), c22 = spec.C22(0, 0);
    int n = f.n();
    std::vector<std::vector<cplx>> rows(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        double t = f.grid.t(k);
        Signal rf = frac_translate(f, tau * t);
        Signal rg = frac_translate(g, -(1.0 - tau) * t);
        cplx chirp = std::polar(1.0, -kPi * c22 * t * t);
        rows[static_cast<size_t>(k)].resize(static_cast<size_t>(n));
        for (int ix = 0; ix < n; ++ix)
            rows[static_cast<size_t>(k)][static_cast<size_t>(ix)] =
                chirp * rf.v[static_cast<size_t>(ix)] * std::conj(rg.v[static_cast<size_t>(ix)]);
    }
    detail::ScaledFreqKernel kernel(f.grid, c12);
    double amp = std::sqrt(std::abs(c12));
    Field2D out(f.grid, f.grid);
    std::vector<cplx> w(static_cast<size_t>(n));
    for (int ix = 0; ix < n; ++ix) {
        for (int k = 0; k < n; ++k) w[static_cast<size_t>(k)] = rows[static_cast<size_t>(k)][static_cast<size_t>(ix)];
        kernel.apply(w);
        for (int m = 0; m < n; ++m) {
            double xi = f.grid.t(m);
            out.at(ix, m) = amp * std::polar(1.0, -kPi * c11 * xi * xi) * w[static_cast<size_t>(m)];
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// STFT with a transformed window / transformed signal
// ---------------------------------------------------------------------------

// U_g f: the window leg of the tensor is replaced by mu(A') conj(g).
inline Field2D modified_window_stft(const Signal& f, const Signal& g, const SympMat& Ap) {
    if (Ap.half_dim != 1) throw BadShape("modified_window_stft: A' must lie in Sp(1, R)");
    Signal w = conj_signal(apply_metaplectic(Ap, conj_signal(g)));
    return stft(f, w);
}

// ~U_g f = V_g (mu(A') f)
inline Field2D modified_signal_stft(const Signal& f, const Signal& g, const SympMat& Ap) {
    if (Ap.half_dim != 1) throw BadShape("modified_signal_stft: A' must lie in Sp(1, R)");
    return stft(apply_metaplectic(Ap, f), g);
}

// Matrices of the two modified transforms, assembled from the factorization
// A_ST . lift(A') rather than hard-coded block displays.
inline SympMat mod_window_matrix(const SympMat& Ap) {
    return SympMat::from(make_AST(Ap.half_dim).m * lift_right(Ap).m, 1e-9);
}
inline SympMat mod_signal_matrix(const SympMat& Ap) {
    return SympMat::from(make_AST(Ap.half_dim).m * lift_left(Ap).m, 1e-9);
}

} // namespace symtf
