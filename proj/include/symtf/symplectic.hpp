#pragma once

#include <array>
#include <random>
#include <utility>
#include <vector>

#include "symtf/mat.hpp"

namespace symtf {

inline constexpr double kTolSym = 1e-12;  // structural identities
inline constexpr double kTolInv = 1e-10;  // invertibility / determinant checks

// J = [[0, I], [-I, 0]] in n x n blocks.
inline Mat j_mat(int n) {
    Mat m(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        m(i, n + i) = 1.0;
        m(n + i, i) = -1.0;
    }
    return m;
}

// || A^T J A - J ||_max
inline double symplectic_residual(const Mat& m) {
    if (!m.square() || m.rows % 2 != 0) throw BadShape("symplectic_residual: need even square matrix");
    Mat j = j_mat(m.rows / 2);
    return max_abs_diff(m.transpose() * j * m, j);
}

inline bool is_symplectic(const Mat& m, double tol = kTolSym) {
    return m.square() && m.rows % 2 == 0 && symplectic_residual(m) <= tol;
}

// A real 2n x 2n matrix certified symplectic at construction.
struct SympMat {
    int half_dim = 0;
    Mat m;

    SympMat() = default;

    static SympMat from(Mat entries, double tol_sym = kTolSym, double tol_det = kTolInv) {
        if (!entries.square() || entries.rows % 2 != 0)
            throw BadShape("SympMat: need even square matrix");
        double res = symplectic_residual(entries);
        if (res > tol_sym)
            throw NotSymplectic("residual ||A^T J A - J||_max = " + std::to_string(res));
        double dd = det(entries);
        if (std::abs(dd - 1.0) > tol_det)
            throw NotSymplectic("det(A) = " + std::to_string(dd) + " differs from 1");
        SympMat s;
        s.half_dim = entries.rows / 2;
        s.m = std::move(entries);
        return s;
    }

    SympMat operator*(const SympMat& b) const { return from(m * b.m); }

    // Symplectic inverse: A^{-1} = J^T A^T J, exact in the entries.
    SympMat inv() const {
        Mat j = j_mat(half_dim);
        return from(j.transpose() * m.transpose() * j);
    }
};

inline SympMat make_J(int n) { return SympMat::from(j_mat(n)); }

// D_L = [[L^{-1}, 0], [0, L^T]]
inline SympMat make_DL(const Mat& L) {
    if (!L.square()) throw BadShape("make_DL: L must be square");
    if (std::abs(det(L)) < 1e-12) throw SingularL("make_DL: |det L| < 1e-12");
    int n = L.rows;
    Mat m(2 * n, 2 * n);
    m.set_block(0, 0, inverse(L));
    m.set_block(n, n, L.transpose());
    return SympMat::from(m, 1e-9);  // L^{-1} may carry a rounding residual
}

// V_C = [[I, 0], [C, I]]
inline SympMat make_VC(const Mat& C) {
    if (!C.square()) throw BadShape("make_VC: C must be square");
    if (!is_symmetric(C)) throw NotSymmetric("make_VC: C");
    int n = C.rows;
    Mat m = Mat::identity(2 * n);
    m.set_block(n, 0, C);
    return SympMat::from(m);
}

// V_C^T = [[I, C], [0, I]]
inline SympMat make_VCT(const Mat& C) {
    if (!C.square()) throw BadShape("make_VCT: C must be square");
    if (!is_symmetric(C)) throw NotSymmetric("make_VCT: C");
    int n = C.rows;
    Mat m = Mat::identity(2 * n);
    m.set_block(0, n, C);
    return SympMat::from(m);
}

// Interchange matrix Pi_j: columns j and j+n of I_{2n} swapped, then the
// j-th column negated (1-based j).
inline Mat interchange_mat(int j, int n) {
    if (j < 1 || j > n) throw BadShape("interchange_mat: index out of range");
    Mat m(2 * n, 2 * n);
    for (int i = 0; i < 2 * n; ++i) m(i, i) = 1.0;
    int c = j - 1;
    // column c becomes -e_{c+n}, column c+n becomes e_c
    m(c, c) = 0.0;
    m(c + n, c) = -1.0;
    m(c + n, c + n) = 0.0;
    m(c, c + n) = 1.0;
    return m;
}

// Product of Pi_j over j in idx (empty set gives the identity).
inline SympMat make_interchange(const std::vector<int>& idx, int n) {
    Mat m = Mat::identity(2 * n);
    for (int j : idx) m = m * interchange_mat(j, n);
    return SympMat::from(m);
}

// 4d x 4d matrix turning the tensor f (x) conj(g) into the STFT:
//   [[ I, -I,  0,  0],
//    [ 0,  0,  I,  I],
//    [ 0,  0,  0, -I],
//    [-I,  0,  0,  0]]
inline SympMat make_AST(int d) {
    Mat I = Mat::identity(d);
    Mat m(4 * d, 4 * d);
    m.set_block(0, 0, I);
    m.set_block(0, d, -I);
    m.set_block(d, 2 * d, I);
    m.set_block(d, 3 * d, I);
    m.set_block(2 * d, 3 * d, -I);
    m.set_block(3 * d, 0, -I);
    return SympMat::from(m);
}

// 4d x 4d matrix of the tau-Wigner transform:
//   [[(1-t)I, tI,  0,      0     ],
//    [0,      0,   tI,    -(1-t)I],
//    [0,      0,   I,      I     ],
//    [-I,     I,   0,      0     ]]
inline SympMat make_Atau(double tau, int d) {
    Mat I = Mat::identity(d);
    Mat m(4 * d, 4 * d);
    m.set_block(0, 0, I * (1.0 - tau));
    m.set_block(0, d, I * tau);
    m.set_block(d, 2 * d, I * tau);
    m.set_block(d, 3 * d, I * (-(1.0 - tau)));
    m.set_block(2 * d, 2 * d, I);
    m.set_block(2 * d, 3 * d, I);
    m.set_block(3 * d, 0, -I);
    m.set_block(3 * d, d, I);
    return SympMat::from(m);
}

// 4d x 4d matrix of the partial Fourier transform in the second variable.
// Equals the interchange product Pi_{d+1} ... Pi_{2d} in Sp(2d, R).
inline SympMat make_AFT2(int d) {
    Mat I = Mat::identity(d);
    Mat m(4 * d, 4 * d);
    m.set_block(0, 0, I);
    m.set_block(d, 3 * d, I);
    m.set_block(2 * d, 2 * d, I);
    m.set_block(3 * d, d, -I);
    return SympMat::from(m);
}

// Half-size block decomposition A = [[A, B], [C, D]] (n x n blocks).
inline std::array<Mat, 4> blocks(const SympMat& s) {
    int n = s.half_dim;
    return {s.m.block(0, 0, n, n), s.m.block(0, n, n, n),
            s.m.block(n, 0, n, n), s.m.block(n, n, n, n)};
}

// d x d block grid A_{ij} of a matrix with half_dim = 2d.
inline std::array<std::array<Mat, 4>, 4> blocks4(const SympMat& s) {
    if (s.half_dim % 2 != 0) throw BadShape("blocks4: half_dim must be even");
    int d = s.half_dim / 2;
    std::array<std::array<Mat, 4>, 4> g;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) g[i][j] = s.m.block(i * d, j * d, d, d);
    return g;
}

inline Mat reassemble(const std::array<std::array<Mat, 4>, 4>& g) {
    int d = g[0][0].rows;
    Mat m(4 * d, 4 * d);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m.set_block(i * d, j * d, g[i][j]);
    return m;
}

// Covariance matrices E_A = [[A11, A13], [A21, A23]] and
// F_A = [[A31, A33], [A41, A43]] of a matrix in Sp(2d, R).
inline std::pair<Mat, Mat> ea_fa(const SympMat& s) {
    auto g = blocks4(s);
    int d = s.half_dim / 2;
    Mat e(2 * d, 2 * d), f(2 * d, 2 * d);
    e.set_block(0, 0, g[0][0]);
    e.set_block(0, d, g[0][2]);
    e.set_block(d, 0, g[1][0]);
    e.set_block(d, d, g[1][2]);
    f.set_block(0, 0, g[2][0]);
    f.set_block(0, d, g[2][2]);
    f.set_block(d, 0, g[3][0]);
    f.set_block(d, d, g[3][2]);
    return {e, f};
}

struct ClassReport {
    bool free = false;
    bool shift_invertible = false;
    double det_EA = 0.0;
    bool EA_upper_block_triangular = false;
    bool EA_lower_block_triangular = false;
};

// Block-triangularity is judged on the d x d off-diagonal blocks of E_A.
inline ClassReport classify(const SympMat& s) {
    ClassReport r;
    auto [A, B, C, D] = blocks(s);
    r.free = std::abs(det(B)) > kTolInv;
    auto [E, F] = ea_fa(s);
    (void)F;
    int d = s.half_dim / 2;
    r.det_EA = det(E);
    r.shift_invertible = std::abs(r.det_EA) > kTolInv;
    r.EA_upper_block_triangular = max_abs(E.block(d, 0, d, d)) <= kTolSym;
    r.EA_lower_block_triangular = max_abs(E.block(0, d, d, d)) <= kTolSym;
    return r;
}

// Tensor lift of Appendix-style block interleaving: for A, B in Sp(d, R) the
// operator mu(A) f (x) mu(B) g corresponds to the 4d x 4d matrix
//   [[A, 0, B, 0], [0, E, 0, F], [C, 0, D, 0], [0, G, 0, H]].
inline SympMat tensor_matrix(const SympMat& sa, const SympMat& sb) {
    if (sa.half_dim != sb.half_dim) throw BadShape("tensor_matrix: half_dim mismatch");
    int d = sa.half_dim;
    auto [A, B, C, D] = blocks(sa);
    auto [E, F, G, H] = blocks(sb);
    Mat m(4 * d, 4 * d);
    m.set_block(0, 0, A);
    m.set_block(0, 2 * d, B);
    m.set_block(d, d, E);
    m.set_block(d, 3 * d, F);
    m.set_block(2 * d, 0, C);
    m.set_block(2 * d, 2 * d, D);
    m.set_block(3 * d, d, G);
    m.set_block(3 * d, 3 * d, H);
    return SympMat::from(m);
}

// Lift acting on the second tensor factor only (A = I specialization).
inline SympMat lift_right(const SympMat& sb) {
    return tensor_matrix(SympMat::from(Mat::identity(2 * sb.half_dim)), sb);
}

// Lift acting on the first tensor factor only (B = I specialization).
inline SympMat lift_left(const SympMat& sa) {
    return tensor_matrix(sa, SympMat::from(Mat::identity(2 * sa.half_dim)));
}

// The chirp lift of Remark-style counterexamples: multiply f by Phi_C before
// taking the STFT.  Equals lift_left(V_C).
inline SympMat make_Vtilde(const Mat& C) { return lift_left(make_VC(C)); }

// ---------------------------------------------------------------------------
// Generator words
// ---------------------------------------------------------------------------

struct GeneratorAtom {
    enum class Kind { interchange, dilation, chirp_mul, chirp_conv };
    Kind kind;
    int n = 0;                 // half-dimension the atom acts on
    std::vector<int> idx;      // interchange index set (1-based)
    Mat payload;               // dilation L or chirp C

    static GeneratorAtom interchange(std::vector<int> j, int n) {
        for (int k : j)
            if (k < 1 || k > n) throw BadShape("interchange: index out of range");
        GeneratorAtom a{Kind::interchange, n, std::move(j), Mat()};
        return a;
    }
    static GeneratorAtom dilation(Mat L) {
        if (!L.square()) throw BadShape("dilation: L must be square");
        if (std::abs(det(L)) < 1e-12) throw SingularL("dilation payload");
        GeneratorAtom a{Kind::dilation, L.rows, {}, std::move(L)};
        return a;
    }
    static GeneratorAtom chirp_mul(Mat C) {
        if (!is_symmetric(C)) throw NotSymmetric("chirp_mul payload");
        GeneratorAtom a{Kind::chirp_mul, C.rows, {}, std::move(C)};
        return a;
    }
    static GeneratorAtom chirp_conv(Mat C) {
        if (!is_symmetric(C)) throw NotSymmetric("chirp_conv payload");
        GeneratorAtom a{Kind::chirp_conv, C.rows, {}, std::move(C)};
        return a;
    }

    SympMat matrix() const {
        switch (kind) {
            case Kind::interchange: return make_interchange(idx, n);
            case Kind::dilation: return make_DL(payload);
            case Kind::chirp_mul: return make_VC(payload);
            case Kind::chirp_conv: return make_VCT(payload);
        }
        throw Error("unreachable");
    }
};

// Ordered list of generator atoms; atoms.back() acts first on a signal, so
// the symplectic product is taken left to right.
struct GeneratorWord {
    std::vector<GeneratorAtom> atoms;

    SympMat matrix(int n) const {
        Mat m = Mat::identity(2 * n);
        for (const auto& a : atoms) {
            if (a.n != n) throw BadShape("GeneratorWord: atom dimension mismatch");
            m = m * a.matrix().m;
        }
        return SympMat::from(m, 1e-9);
    }
};

// Factorization of a free matrix into generators so that
//   A = V_{D B^{-1}} . D_{B^{-1}} . J . V_{B^{-1} A}.
// The induced operator word realizes mu(A) up to a unimodular constant.
inline GeneratorWord factorize_free(const SympMat& s) {
    auto [A, B, C, D] = blocks(s);
    (void)C;
    if (std::abs(det(B)) <= kTolInv) throw NotFree("factorize_free: det(B-block) ~ 0");
    Mat Binv = inverse(B);
    Mat c1 = D * Binv;        // symmetric for symplectic input
    Mat c2 = Binv * A;
    // Symmetrize away rounding noise so the atom constructors accept them.
    c1 = (c1 + c1.transpose()) * 0.5;
    c2 = (c2 + c2.transpose()) * 0.5;
    std::vector<int> full(static_cast<size_t>(s.half_dim));
    for (int j = 1; j <= s.half_dim; ++j) full[static_cast<size_t>(j - 1)] = j;

    GeneratorWord w;
    w.atoms.push_back(GeneratorAtom::chirp_mul(c1));
    w.atoms.push_back(GeneratorAtom::dilation(Binv));
    w.atoms.push_back(GeneratorAtom::interchange(full, s.half_dim));
    w.atoms.push_back(GeneratorAtom::chirp_mul(c2));
    return w;
}

// ---------------------------------------------------------------------------
// Random words (test corpora and harness sweeps)
// ---------------------------------------------------------------------------

struct RandomWordOptions {
    int min_len = 3;
    int max_len = 8;
    int max_entry = 2;
    // Bound on the max-abs entry of every partial product.  Keeps the phase
    // space support of transformed test signals inside the grid.
    double max_partial_norm = 2.5;
    int max_tries = 200;
};

inline GeneratorWord random_symplectic_word(std::mt19937_64& rng, int n,
                                            const RandomWordOptions& opt = {}) {
    std::uniform_int_distribution<int> len_dist(opt.min_len, opt.max_len);
    std::uniform_int_distribution<int> kind_dist(0, 3);
    std::uniform_int_distribution<int> entry_dist(-opt.max_entry, opt.max_entry);
    std::uniform_int_distribution<int> bit(0, 1);

    auto rand_sym = [&] {
        Mat c(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) c(i, j) = c(j, i) = entry_dist(rng);
        return c;
    };
    auto rand_invertible = [&] {
        for (;;) {
            Mat l(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) l(i, j) = entry_dist(rng);
            double dd = std::abs(det(l));
            if (dd >= 1.0 && dd <= 2.0) return l;
        }
    };
    auto rand_subset = [&] {
        for (;;) {
            std::vector<int> idx;
            for (int j = 1; j <= n; ++j)
                if (bit(rng)) idx.push_back(j);
            if (!idx.empty()) return idx;
        }
    };

    for (int attempt = 0; attempt < opt.max_tries; ++attempt) {
        GeneratorWord w;
        int len = len_dist(rng);
        for (int i = 0; i < len; ++i) {
            switch (kind_dist(rng)) {
                case 0: w.atoms.push_back(GeneratorAtom::interchange(rand_subset(), n)); break;
                case 1: w.atoms.push_back(GeneratorAtom::dilation(rand_invertible())); break;
                case 2: w.atoms.push_back(GeneratorAtom::chirp_mul(rand_sym())); break;
                default: w.atoms.push_back(GeneratorAtom::chirp_conv(rand_sym())); break;
            }
        }
        // Partial products correspond to intermediate states of the operator
        // pipeline; bound them so signals stay representable on the grid.
        bool ok = true;
        Mat p = Mat::identity(2 * n);
        for (auto it = w.atoms.rbegin(); it != w.atoms.rend() && ok; ++it) {
            p = it->matrix().m * p;
            if (max_abs(p) > opt.max_partial_norm || max_abs(inverse(p)) > opt.max_partial_norm)
                ok = false;
        }
        if (ok) return w;
    }
    throw Error("random_symplectic_word: no admissible word found");
}

} // namespace symtf
