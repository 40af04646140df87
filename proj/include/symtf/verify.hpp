#pragma once

#include <functional>
#include <map>
#include <optional>

#include "symtf/io.hpp"

namespace symtf {

enum class Verdict { pass, fail, informative, hypothesis_violated };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::informative: return "informative";
        case Verdict::hypothesis_violated: return "hypothesis_violated";
    }
    return "?";
}

struct ExperimentResult {
    std::string name;
    json params = json::object();
    std::map<std::string, double> measured;
    Verdict verdict = Verdict::fail;
    std::string notes;
};

inline json experiment_to_json(const ExperimentResult& r) {
    json m = json::object();
    for (const auto& [k, v] : r.measured) m[k] = v;
    return json{{"schema_version", kSchemaVersion},
                {"name", r.name},
                {"params", r.params},
                {"measured", m},
                {"verdict", verdict_name(r.verdict)},
                {"notes", r.notes}};
}

namespace detail {

inline std::mt19937_64 seeded_rng(uint64_t seed, const std::string& tag) {
    std::seed_seq seq{seed, static_cast<uint64_t>(std::hash<std::string>{}(tag))};
    return std::mt19937_64(seq);
}

// Monotone up to a small multiplicative slack, in either direction.
inline bool monotone_drift(const std::vector<double>& r, double slack = 0.05) {
    if (r.size() < 2) return false;
    bool up = r.back() >= r.front();
    for (size_t i = 1; i < r.size(); ++i) {
        if (up && r[i] < r[i - 1] * (1.0 - slack)) return false;
        if (!up && r[i] > r[i - 1] * (1.0 + slack)) return false;
    }
    return true;
}

inline double drift_factor(const std::vector<double>& r) {
    double first = r.front(), last = r.back();
    return first > 0.0 && last > 0.0 ? std::max(last / first, first / last) : 0.0;
}

inline double spread(const std::vector<double>& r) {
    double lo = kInf, hi = 0.0;
    for (double x : r) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    return lo > 0.0 ? hi / lo : kInf;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Covariance experiment
// ---------------------------------------------------------------------------

// Shifts are given in grid cells; they must be chosen so that E_A maps them
// back onto the lattice.
struct CovarianceConfig {
    SympMat A;
    std::string name = "covariance";
    std::vector<std::pair<int, int>> shift_cells;
    bool corrupt_e = false;
};

inline ExperimentResult exp_covariance(const CovarianceConfig& cfg, const std::vector<Signal>& family,
                                       const Signal& window) {
    ExperimentResult res;
    res.name = cfg.name;
    res.params = {{"matrix", sympmat_to_json(cfg.A)}, {"corrupt_e", cfg.corrupt_e}};
    const Grid1D& g = window.grid;
    auto [E, F] = ea_fa(cfg.A);
    (void)F;
    if (cfg.corrupt_e) E(1, 0) += 1.0;  // off-by-one block: negative control

    double worst = 0.0;
    for (const Signal& f : family) {
        Field2D base = metaplectic_wigner(cfg.A, f, window);
        double scale = max_modulus(base);
        for (auto [ky, keta] : cfg.shift_cells) {
            double y = ky * g.dx, eta = keta * g.dx;
            double e1 = E(0, 0) * y + E(0, 1) * eta;
            double e2 = E(1, 0) * y + E(1, 1) * eta;
            long i1 = std::lround(e1 / g.dx), i2 = std::lround(e2 / g.dx);
            if (std::abs(e1 / g.dx - i1) > 1e-9 || std::abs(e2 / g.dx - i2) > 1e-9)
                throw ValidationError("exp_covariance: E_A shift leaves the lattice");
            Field2D lhs = metaplectic_wigner(cfg.A, tf_shift(f, y, eta), window);
            Field2D rhs = tf_shift_field(base, static_cast<int>(i1), static_cast<int>(i2), 0.0, 0.0);
            double dev = 0.0;
            for (size_t i = 0; i < lhs.v.size(); ++i)
                dev = std::max(dev, std::abs(std::abs(lhs.v[i]) - std::abs(rhs.v[i])));
            worst = std::max(worst, dev / scale);
        }
    }
    res.measured["max_deviation"] = worst;
    res.verdict = worst <= 1e-6 ? Verdict::pass : Verdict::fail;
    return res;
}

// ---------------------------------------------------------------------------
// Norm-equivalence experiments
// ---------------------------------------------------------------------------

struct EquivalenceConfig {
    SympMat A;
    std::string name = "equivalence";
    double p = 2.0, q = 2.0;
    Weight m = weight_one();
    double ratio_bound = 50.0;
    // Negative control: weight one side only, so the two norms cannot agree.
    bool corrupt_weight = false;
};

inline ExperimentResult exp_equivalence(const EquivalenceConfig& cfg, const std::vector<Signal>& family,
                                        const Signal& window) {
    ExperimentResult res;
    res.name = cfg.name;
    res.params = {{"p", cfg.p}, {"q", cfg.q}, {"weight", cfg.m.desc}, {"ratio_bound", cfg.ratio_bound}};
    if (cfg.p < 1.0 || cfg.q < 1.0) {
        res.verdict = Verdict::hypothesis_violated;
        res.notes = "equivalence requires 1 <= p, q <= inf";
        return res;
    }
    ClassReport cls = classify(cfg.A);
    res.measured["det_EA"] = cls.det_EA;
    if (!cls.shift_invertible || !cls.EA_upper_block_triangular) {
        res.verdict = Verdict::hypothesis_violated;
        res.notes = "matrix is not shift-invertible with upper-triangular E_A";
        return res;
    }
    const Grid1D& g = window.grid;
    auto [E, F] = ea_fa(cfg.A);
    (void)F;
    auto [wlo, whi] = weight_equiv_ratio(weight_compose(cfg.m, inverse(E)), cfg.m, g, g);
    res.measured["weight_equiv_lo"] = wlo;
    res.measured["weight_equiv_hi"] = whi;
    if (!(whi / wlo < 1e8)) {
        res.verdict = Verdict::hypothesis_violated;
        res.notes = "weight is not equivalent to its E_A-composition";
        return res;
    }

    Weight lhs_weight = cfg.corrupt_weight ? weight_vs(4.0) : cfg.m;
    std::vector<double> ratios;
    for (const Signal& f : family) {
        Field2D w = metaplectic_wigner(cfg.A, f, window);
        double lhs = mixed_norm(w, {cfg.p, cfg.q, lhs_weight, MixedNormSpec::InnerAxis::first});
        double rhs = modulation_norm(f, cfg.p, cfg.q, cfg.m, window);
        ratios.push_back(lhs / rhs);
    }
    double sp = detail::spread(ratios);
    res.measured["ratio_min"] = *std::min_element(ratios.begin(), ratios.end());
    res.measured["ratio_max"] = *std::max_element(ratios.begin(), ratios.end());
    res.measured["ratio_spread"] = sp;
    res.verdict = sp <= cfg.ratio_bound ? Verdict::pass : Verdict::fail;
    return res;
}

// Theorem-level p = q case: shift-invertibility alone suffices.
struct DiagonalCaseConfig {
    SympMat A;
    std::string name = "diagonal_case";
    double p = 2.0;
    Weight m = weight_one();
    double ratio_bound = 50.0;
    bool corrupt_weight = false;
};

inline ExperimentResult exp_diagonal_case(const DiagonalCaseConfig& cfg, const std::vector<Signal>& family,
                                          const Signal& window) {
    ExperimentResult res;
    res.name = cfg.name;
    res.params = {{"p", cfg.p}, {"weight", cfg.m.desc}, {"ratio_bound", cfg.ratio_bound}};
    if (cfg.p < 1.0) {
        res.verdict = Verdict::hypothesis_violated;
        res.notes = "p must lie in [1, inf]";
        return res;
    }
    ClassReport cls = classify(cfg.A);
    res.measured["det_EA"] = cls.det_EA;
    if (!cls.shift_invertible) {
        res.verdict = Verdict::hypothesis_violated;
        res.notes = "matrix is not shift-invertible";
        return res;
    }
    Weight lhs_weight = cfg.corrupt_weight ? weight_vs(4.0) : cfg.m;
    std::vector<double> ratios;
    for (const Signal& f : family) {
        Field2D w = metaplectic_wigner(cfg.A, f, window);
        double lhs = mixed_norm(w, {cfg.p, cfg.p, lhs_weight, MixedNormSpec::InnerAxis::first});
        double rhs = modulation_norm(f, cfg.p, cfg.p, cfg.m, window);
        ratios.push_back(lhs / rhs);
    }
    double sp = detail::spread(ratios);
    res.measured["ratio_min"] = *std::min_element(ratios.begin(), ratios.end());
    res.measured["ratio_max"] = *std::max_element(ratios.begin(), ratios.end());
    res.measured["ratio_spread"] = sp;
    res.verdict = sp <= cfg.ratio_bound ? Verdict::pass : Verdict::fail;
    return res;
}

// ---------------------------------------------------------------------------
// Counterexample experiments
// ---------------------------------------------------------------------------

inline std::vector<double> chirp_sweep_rates() { return {0.0, 2.0, 4.0, 8.0, 16.0, 32.0}; }

// Rihacek distribution: the product formula holds at every exponent pair,
// and away from p = q the L^{p,q} norm decouples from the modulation norm.
// Divergence is certified as monotone ratio drift >= 10x over the chirp-rate
// sweep; at p = q the sweep stays flat (Moyal-type control) and the verdict
// is informative.  The grid caps the measurable drift for Banach exponent
// pairs near 5x (the phase-space box is 16 x 16), so the default
// demonstration runs at quasi-norm exponents where the decoupling is strong
// enough to clear the 10x certificate.
struct RihacekFailureConfig {
    std::string name = "rihacek_failure";
    double p = 0.5, q = 0.25;
    double drift_bound = 10.0;
    bool corrupt_product = false;  // negative control: swap the exponents
};

inline ExperimentResult exp_rihacek_failure(const RihacekFailureConfig& cfg, const Grid1D& g) {
    ExperimentResult res;
    res.name = cfg.name;
    res.params = {{"p", cfg.p}, {"q", cfg.q}, {"rates", chirp_sweep_rates()}};
    Signal window = make_gaussian(g);
    Signal wh = fourier(window);

    double product_err = 0.0;
    std::vector<double> ratios;
    for (double c : chirp_sweep_rates()) {
        Signal f = make_chirped_gaussian(g, c);
        Field2D w0 = rihacek(f, window);
        double mn = mixed_norm(w0, {cfg.p, cfg.q, weight_one(), MixedNormSpec::InnerAxis::first});
        double prod = cfg.corrupt_product ? quad_norm(f, cfg.q) * quad_norm(wh, cfg.p)
                                          : quad_norm(f, cfg.p) * quad_norm(wh, cfg.q);
        product_err = std::max(product_err, std::abs(mn - prod) / prod);
        ratios.push_back(mn / modulation_norm(f, cfg.p, cfg.q, weight_one(), window));
    }
    res.measured["product_formula_max_rel_err"] = product_err;
    res.measured["ratio_first"] = ratios.front();
    res.measured["ratio_last"] = ratios.back();
    res.measured["drift_factor"] = detail::drift_factor(ratios);
    res.measured["monotone"] = detail::monotone_drift(ratios) ? 1.0 : 0.0;

    bool product_ok = product_err <= 1e-6;
    if (cfg.p == cfg.q) {
        res.verdict = product_ok ? Verdict::informative : Verdict::fail;
        res.notes = "p = q control: no failure expected";
        return res;
    }
    bool diverges = detail::monotone_drift(ratios) && detail::drift_factor(ratios) >= cfg.drift_bound;
    res.verdict = (product_ok && diverges) ? Verdict::pass : Verdict::fail;
    return res;
}

// Shift-invertible but lower-triangular E_A: A_s = A_ST Vtilde_{sC}.  The
// swept distributions see exactly the chirped-gaussian family Phi_{sC} f, so
// the sweep realizes the chirp counterexample; W_A is evaluated through the
// identity W_{A_s}(f, g) = V_g(Phi_{sC} f), which holds up to a global phase
// and keeps the measured norms free of pipeline aliasing at large s.
struct LowerTriangularFailureConfig {
    std::string name = "lower_triangular_failure";
    double C = 1.0;
    double p = 0.5, q = 0.25;
    double drift_bound = 10.0;
    bool corrupt_no_shear = false;  // negative control: drop the shear
};

inline ExperimentResult exp_lower_triangular_failure(const LowerTriangularFailureConfig& cfg,
                                                     const Grid1D& g) {
    ExperimentResult res;
    res.name = cfg.name;
    res.params = {{"C", cfg.C}, {"p", cfg.p}, {"q", cfg.q}};
    if (cfg.C == 0.0) {
        res.verdict = Verdict::hypothesis_violated;
        res.notes = "C = 0 reduces to the plain STFT";
        return res;
    }
    SympMat A1 = SympMat::from(make_AST(1).m * make_Vtilde(Mat{{cfg.C}}).m);
    ClassReport cls = classify(A1);
    res.measured["det_EA"] = cls.det_EA;
    if (!cls.shift_invertible || cls.EA_upper_block_triangular || !cls.EA_lower_block_triangular) {
        res.verdict = Verdict::fail;
        res.notes = "classification of A_ST Vtilde_C is not lower-but-not-upper";
        return res;
    }

    Signal window = make_gaussian(g);
    Signal f = make_gaussian(g);
    double fnorm_ref = 0.0;
    std::vector<double> ratios;
    const double scales[] = {1.0, 2.0, 4.0, 8.0, 16.0, 32.0};
    for (double s : scales) {
        double shear = cfg.corrupt_no_shear ? 0.0 : s * cfg.C;
        Field2D w = stft(chirp_multiply(shear, f), window);
        double mn = mixed_norm(w, {cfg.p, cfg.q, weight_one(), MixedNormSpec::InnerAxis::first});
        if (fnorm_ref == 0.0) fnorm_ref = modulation_norm(f, cfg.p, cfg.q, weight_one(), window);
        ratios.push_back(mn / fnorm_ref);
    }
    res.measured["ratio_first"] = ratios.front();
    res.measured["ratio_last"] = ratios.back();
    res.measured["drift_factor"] = detail::drift_factor(ratios);
    res.measured["monotone"] = detail::monotone_drift(ratios) ? 1.0 : 0.0;

    if (cfg.p == cfg.q) {
        res.verdict = detail::spread(ratios) <= 2.0 ? Verdict::informative : Verdict::fail;
        res.notes = "p = q control: shift-invertibility alone suffices";
        return res;
    }
    bool diverges = detail::monotone_drift(ratios) && detail::drift_factor(ratios) >= cfg.drift_bound;
    res.verdict = diverges ? Verdict::pass : Verdict::fail;
    return res;
}

// ---------------------------------------------------------------------------
// Wiener amalgam characterization
// ---------------------------------------------------------------------------

struct AmalgamConfig {
    SympMat A;
    std::string name = "amalgam";
    double p = 1.0, q = 2.0;
    Weight1D m1 = weight1d_one();
    Weight1D m2 = weight1d_one();
    double ratio_bound = 50.0;
    bool corrupt_weight = false;
};

inline ExperimentResult exp_amalgam(const AmalgamConfig& cfg, const std::vector<Signal>& family,
                                    const Signal& window) {
    ExperimentResult res;
    res.name = cfg.name;
    res.params = {{"p", cfg.p}, {"q", cfg.q}, {"m1", cfg.m1.desc}, {"m2", cfg.m2.desc}};
    ClassReport cls = classify(cfg.A);
    res.measured["det_EA"] = cls.det_EA;
    if (!cls.shift_invertible || !cls.EA_lower_block_triangular) {
        res.verdict = Verdict::hypothesis_violated;
        res.notes = "matrix is not shift-invertible with lower-triangular E_A";
        return res;
    }
    const Grid1D& g = window.grid;

    // m2 must be equivalent to its reflection.
    double rlo = kInf, rhi = 0.0;
    for (int k = 0; k < g.n; ++k) {
        double r = cfg.m2(g.t(k)) / cfg.m2(-g.t(k));
        rlo = std::min(rlo, r);
        rhi = std::max(rhi, r);
    }
    res.measured["m2_reflection_lo"] = rlo;
    res.measured["m2_reflection_hi"] = rhi;
    if (!(rhi / rlo < 1e8)) {
        res.verdict = Verdict::hypothesis_violated;
        res.notes = "m2 is not reflection-equivalent";
        return res;
    }

    // (m1 (x) m2) must be equivalent to its composition with inv(E~_A),
    // E~_A = -J E_A swap.
    auto [E, F] = ea_fa(cfg.A);
    (void)F;
    Mat swap{{0.0, 1.0}, {1.0, 0.0}};
    Mat Et = (-j_mat(1)) * E * swap;
    Weight w12 = weight_separable(cfg.m1, cfg.m2);
    auto [wlo, whi] = weight_equiv_ratio(weight_compose(w12, inverse(Et)), w12, g, g);
    res.measured["tEA_weight_lo"] = wlo;
    res.measured["tEA_weight_hi"] = whi;
    if (!(whi / wlo < 1e8)) {
        res.verdict = Verdict::hypothesis_violated;
        res.notes = "m1 (x) m2 is not equivalent to its E~_A composition";
        return res;
    }

    Weight lhs_weight = cfg.corrupt_weight ? weight_vs(4.0) : weight_separable(cfg.m2, cfg.m1);
    std::vector<double> ratios;
    for (const Signal& f : family) {
        Field2D w = metaplectic_wigner(cfg.A, f, window);
        // Swapped-order mixed norm: inner p over frequency with m1, outer q
        // over time with m2.
        double lhs = mixed_norm(w, {cfg.p, cfg.q, lhs_weight, MixedNormSpec::InnerAxis::second});
        double rhs = amalgam_norm(f, cfg.p, cfg.q, cfg.m1, cfg.m2, window);
        ratios.push_back(lhs / rhs);
    }
    double sp = detail::spread(ratios);
    res.measured["ratio_min"] = *std::min_element(ratios.begin(), ratios.end());
    res.measured["ratio_max"] = *std::max_element(ratios.begin(), ratios.end());
    res.measured["ratio_spread"] = sp;
    res.verdict = sp <= cfg.ratio_bound ? Verdict::pass : Verdict::fail;
    return res;
}

// ---------------------------------------------------------------------------
// Inversion formula and the representation of W_A by STFT samples
// ---------------------------------------------------------------------------

struct InversionConfig {
    SympMat A;
    std::string name = "inversion";
    double tol = 1e-4;
    bool corrupt_inverse = false;  // reconstruct with A instead of A^{-1}
};

inline ExperimentResult exp_inversion(const InversionConfig& cfg, const Signal& f, const Signal& g1,
                                      const Signal& g2) {
    ExperimentResult res;
    res.name = cfg.name;
    res.params = {{"tol", cfg.tol}};
    const Grid1D& g = f.grid;

    cplx ip = 0.0;  // <g2, g1>
    for (int k = 0; k < g.n; ++k) ip += g2.v[static_cast<size_t>(k)] * std::conj(g1.v[static_cast<size_t>(k)]);
    ip *= g.dx;
    if (std::abs(ip) <= 1e-3) throw DegeneratePair("exp_inversion: |<g2, g1>| <= 1e-3");

    // Reconstruction through the inverse operator.
    Field2D W = metaplectic_wigner(cfg.A, f, g1);
    Field2D H = apply_metaplectic(cfg.corrupt_inverse ? cfg.A : cfg.A.inv(), W);
    Signal rec(g);
    for (int ix = 0; ix < g.n; ++ix) {
        cplx acc = 0.0;
        for (int iy = 0; iy < g.n; ++iy) acc += H.at(ix, iy) * g2.v[static_cast<size_t>(iy)];
        rec.v[static_cast<size_t>(ix)] = acc * g.dx / ip;
    }
    double rec_err = rel_l2_after_alignment(rec, f);
    res.measured["reconstruction_rel_l2"] = rec_err;

    // Representation of W_A(f, g1) from STFT samples: the kernel fields
    // W_A(pi(w) g2, g1) are generated from one seed field through the exact
    // covariance identity
    //   W_A(pi(w) h, g) = e^{i pi (eta y - F_A w . E_A w)} pi(E_A w, F_A w) W_A(h, g).
    auto [E, F] = ea_fa(cfg.A);
    int stride = 0;
    for (int s : {1, 2, 3, 4, 6, 8}) {
        bool ok = true;
        for (int col = 0; col < 2 && ok; ++col)
            for (int row = 0; row < 2 && ok; ++row) {
                double v = E(row, col) * s;
                double vf = F(row, col) * s;
                ok = detail::near_integer(v, 1e-9) && detail::near_integer(vf, 1e-9);
            }
        if (ok) {
            stride = s;
            break;
        }
    }
    if (stride == 0) throw ValidationError("exp_inversion: no lattice-compatible stride for E_A, F_A");

    Field2D V = stft(f, g1);
    Field2D Wseed = metaplectic_wigner(cfg.A, g2, g1);
    cplx ip21 = 0.0;  // <g2, g1> again; the lemma normalizes by <gamma, g>
    ip21 = ip;
    double vmax = max_modulus(V);
    Field2D Wrec(g, g);
    double cell = (stride * g.dx) * (stride * g.dx);

    // Phase-identity spot check on a few shifts.
    double phase_check = 0.0;
    int checked = 0;

    int n = g.n;
    std::vector<cplx> px(static_cast<size_t>(n)), py(static_cast<size_t>(n));
    for (int jy = 0; jy < n; jy += stride) {
        for (int je = 0; je < n; je += stride) {
            cplx c = V.at(jy, je);
            if (std::abs(c) < 1e-7 * vmax) continue;
            double y = g.t(jy), eta = g.t(je);
            double e1 = E(0, 0) * y + E(0, 1) * eta;
            double e2 = E(1, 0) * y + E(1, 1) * eta;
            double f1 = F(0, 0) * y + F(0, 1) * eta;
            double f2 = F(1, 0) * y + F(1, 1) * eta;
            long i1 = std::lround(e1 / g.dx), i2 = std::lround(e2 / g.dx);
            cplx phase = std::polar(1.0, kPi * (eta * y - (f1 * e1 + f2 * e2)));
            cplx coef = c * cell / ip21 * phase;
            for (int ix = 0; ix < n; ++ix) px[static_cast<size_t>(ix)] = std::polar(1.0, 2.0 * kPi * f1 * g.t(ix));
            for (int iy = 0; iy < n; ++iy) py[static_cast<size_t>(iy)] = std::polar(1.0, 2.0 * kPi * f2 * g.t(iy));
            for (int ix = 0; ix < n; ++ix) {
                int sx = static_cast<int>(((ix - i1) % n + n) % n);
                cplx cx = coef * px[static_cast<size_t>(ix)];
                const cplx* src = &Wseed.v[static_cast<size_t>(sx) * n];
                cplx* dst = &Wrec.v[static_cast<size_t>(ix) * n];
                int sy0 = static_cast<int>(((0 - i2) % n + n) % n);
                int sy = sy0;
                for (int iy = 0; iy < n; ++iy) {
                    dst[static_cast<size_t>(iy)] += cx * py[static_cast<size_t>(iy)] * src[static_cast<size_t>(sy)];
                    ++sy;
                    if (sy == n) sy = 0;
                }
            }
            if (checked < 3 && std::abs(c) > 0.3 * vmax) {
                Field2D direct = metaplectic_wigner(cfg.A, tf_shift(g2, y, eta), g1);
                Field2D predicted = tf_shift_field(Wseed, static_cast<int>(i1), static_cast<int>(i2), f1, f2);
                for (auto& z : predicted.v) z *= phase;
                phase_check = std::max(phase_check, rel_l2_after_alignment(direct, predicted));
                ++checked;
            }
        }
    }
    double lemma_err = rel_l2_after_alignment(Wrec, W);
    res.measured["representation_rel_l2"] = lemma_err;
    res.measured["covariance_phase_check"] = phase_check;
    res.measured["stride"] = stride;
    res.verdict = (rec_err <= cfg.tol && lemma_err <= cfg.tol) ? Verdict::pass : Verdict::fail;
    return res;
}

// ---------------------------------------------------------------------------
// Dilation norm scaling (appendix results)
// ---------------------------------------------------------------------------

struct DilationNormConfig {
    std::string name = "dilation_norm";
    Mat S;
    double p = 1.0;
    std::optional<double> q;       // engaged for the block-triangular case
    std::optional<Weight> weight;  // engaged for the transfer check
    double tol = 1e-6;
    bool corrupt_exponent = false;
};

namespace detail {
// Centered smooth test fields with the modulus peaked at the origin.
inline std::vector<Field2D> dilation_test_fields(const Grid1D& g, uint64_t seed) {
    auto rng = seeded_rng(seed, "dilation-fields");
    std::uniform_real_distribution<double> cdist(-0.5, 0.5);
    std::uniform_real_distribution<double> sdist(0.8, 1.3);
    std::vector<Field2D> out;
    for (int i = 0; i < 4; ++i) {
        double sigma = sdist(rng);
        Mat C{{cdist(rng), cdist(rng)}, {0.0, cdist(rng)}};
        C(1, 0) = C(0, 1);
        Field2D f(g, g);
        for (int ix = 0; ix < g.n; ++ix)
            for (int iy = 0; iy < g.n; ++iy) {
                double x = g.t(ix), y = g.t(iy);
                double q = C(0, 0) * x * x + 2.0 * C(0, 1) * x * y + C(1, 1) * y * y;
                f.at(ix, iy) = std::polar(std::exp(-kPi * (x * x + y * y) / (sigma * sigma)), kPi * q);
            }
        out.push_back(std::move(f));
    }
    return out;
}
} // namespace detail

inline ExperimentResult exp_appendixA(const DilationNormConfig& cfg, const Grid1D& g, uint64_t seed) {
    ExperimentResult res;
    res.name = cfg.name;
    res.params = {{"S", mat_to_json(cfg.S)}, {"p", cfg.p}};
    if (cfg.S.rows != 2 || cfg.S.cols != 2) throw BadShape("exp_appendixA: S must be 2x2");
    if (std::abs(det(cfg.S)) < 1e-12) throw BadShape("exp_appendixA: S must be invertible");

    auto inv_exp = [](double p) { return std::isinf(p) ? 0.0 : 1.0 / p; };
    double expected;
    if (cfg.q) {
        res.params["q"] = *cfg.q;
        if (std::abs(cfg.S(1, 0)) > 1e-12)
            throw BadShape("exp_appendixA: mixed-norm case needs an upper-triangular S");
        expected = std::pow(std::abs(cfg.S(0, 0)), 0.5 - inv_exp(cfg.p)) *
                   std::pow(std::abs(cfg.S(1, 1)), 0.5 - inv_exp(*cfg.q));
    } else {
        expected = std::pow(std::abs(det(cfg.S)), 0.5 - inv_exp(cfg.p));
    }
    if (cfg.corrupt_exponent) expected = std::pow(std::abs(det(cfg.S)), 0.5);
    res.measured["expected_ratio"] = expected;

    double max_err = 0.0;
    double ratio_m_worst = 0.0;
    auto fields = detail::dilation_test_fields(g, seed);
    for (const Field2D& f : fields) {
        Field2D tf = dilate(cfg.S, f);
        double ratio;
        if (cfg.q)
            ratio = mixed_norm(tf, {cfg.p, *cfg.q, weight_one(), MixedNormSpec::InnerAxis::first}) /
                    mixed_norm(f, {cfg.p, *cfg.q, weight_one(), MixedNormSpec::InnerAxis::first});
        else
            ratio = quad_norm(tf, cfg.p) / quad_norm(f, cfg.p);
        max_err = std::max(max_err, std::abs(ratio - expected) / expected);

        if (cfg.weight) {
            double q = cfg.q ? *cfg.q : cfg.p;
            double rm = mixed_norm(tf, {cfg.p, q, *cfg.weight, MixedNormSpec::InnerAxis::first}) /
                        mixed_norm(f, {cfg.p, q, *cfg.weight, MixedNormSpec::InnerAxis::first});
            ratio_m_worst = std::max(ratio_m_worst, std::max(rm / ratio, ratio / rm));
        }
    }
    res.measured["max_rel_err"] = max_err;
    bool ok = max_err <= cfg.tol;
    if (cfg.weight) {
        auto [wlo, whi] = weight_equiv_ratio(weight_compose(*cfg.weight, cfg.S), *cfg.weight, g, g);
        double K = std::max(whi, 1.0 / wlo);
        res.measured["weight_equiv_K"] = K;
        res.measured["weighted_ratio_worst"] = ratio_m_worst;
        ok = ok && ratio_m_worst <= K * (1.0 + 1e-9);
    }
    res.verdict = ok ? Verdict::pass : Verdict::fail;
    return res;
}

// ---------------------------------------------------------------------------
// Tensor products of metaplectic operators
// ---------------------------------------------------------------------------

struct TensorConfig {
    std::string name = "tensor";
    double tol = 1e-6;
    bool corrupt_swap = false;
};

inline ExperimentResult exp_tensor(const TensorConfig& cfg, const SympMat& A, const SympMat& B,
                                   const Signal& f, const Signal& g) {
    ExperimentResult res;
    res.name = cfg.name;
    res.params = {{"A", sympmat_to_json(A)}, {"B", sympmat_to_json(B)}, {"tol", cfg.tol}};
    Field2D lhs = apply_metaplectic(tensor_matrix(A, B), tensor_plain(f, g));
    Field2D rhs = cfg.corrupt_swap
                      ? tensor_plain(apply_metaplectic(B, f), apply_metaplectic(A, g))
                      : tensor_plain(apply_metaplectic(A, f), apply_metaplectic(B, g));
    double err = rel_l2_after_alignment(lhs, rhs);
    res.measured["rel_l2_after_alignment"] = err;
    res.verdict = err <= cfg.tol ? Verdict::pass : Verdict::fail;
    return res;
}

// Aggregate over random word pairs.
inline ExperimentResult exp_tensor_random(const Grid1D& g, int pairs, uint64_t seed, double tol = 1e-6) {
    ExperimentResult res;
    res.name = "tensor_random_pairs";
    res.params = {{"pairs", pairs}, {"tol", tol}, {"seed", seed}};
    auto rng = detail::seeded_rng(seed, "tensor-pairs");
    Signal f = make_gaussian(g, 0.9);
    Signal h = make_chirped_gaussian(g, 1.0, 1.1);
    RandomWordOptions opt;
    opt.max_partial_norm = 2.0;
    double worst = 0.0;
    for (int i = 0; i < pairs; ++i) {
        SympMat a = random_symplectic_word(rng, 1, opt).matrix(1);
        SympMat b = random_symplectic_word(rng, 1, opt).matrix(1);
        ExperimentResult one = exp_tensor({.name = "tensor_pair", .tol = tol}, a, b, f, h);
        worst = std::max(worst, one.measured.at("rel_l2_after_alignment"));
    }
    res.measured["max_rel_l2"] = worst;
    res.verdict = worst <= tol ? Verdict::pass : Verdict::fail;
    return res;
}

// ---------------------------------------------------------------------------
// Suite assembly
// ---------------------------------------------------------------------------

struct SuiteEntry {
    std::string name;
    Verdict expected = Verdict::pass;
    std::function<ExperimentResult()> run;
};

struct SuiteOutcome {
    struct Row {
        ExperimentResult result;
        Verdict expected;
        bool ok;
    };
    std::vector<Row> rows;
    bool all_ok = true;
};

inline SuiteOutcome run_suite(const std::vector<SuiteEntry>& entries) {
    SuiteOutcome out;
    for (const auto& e : entries) {
        ExperimentResult r = e.run();
        bool ok = r.verdict == e.expected;
        out.all_ok = out.all_ok && ok;
        out.rows.push_back({std::move(r), e.expected, ok});
    }
    return out;
}

// Shifts for the covariance experiments: multiples of four cells so that all
// default matrices map them back onto the lattice.
inline std::vector<std::pair<int, int>> covariance_shifts() {
    std::vector<std::pair<int, int>> s;
    for (int a : {-16, -8, 8, 16})
        for (int b : {-8, 0, 8, 16})
            s.emplace_back(a, b);
    s.emplace_back(4, -4);
    s.emplace_back(-4, 12);
    s.emplace_back(0, 8);
    s.emplace_back(12, 4);
    return s;  // 20 shifts
}

inline std::vector<Signal> covariance_family(const Grid1D& g) {
    return {make_gaussian(g), make_gaussian(g, 0.7), make_chirped_gaussian(g, 1.0),
            make_hermite(g, 2), make_shifted_gaussian(g, 0.5, -0.5)};
}

inline std::vector<SuiteEntry> default_suite(const Grid1D& g, uint64_t seed) {
    std::vector<SuiteEntry> entries;
    Signal window = make_gaussian(g);
    auto family24 = standard_family(g);
    auto family5 = covariance_family(g);
    auto shifts = covariance_shifts();

    SympMat ast = make_AST(1);
    SympMat shear = SympMat::from(make_AST(1).m * make_Vtilde(Mat{{1.0}}).m);
    ChirpAtomSpec half_spec = ChirpAtomSpec::scalar(1.0, 1.0, 0.0);
    SympMat gen_half = gen_tau_matrix(0.5, half_spec, 1);

    // Covariance (4 matrices x 5 signals x 20 shifts) + negative control.
    std::vector<std::pair<std::string, SympMat>> cov_mats = {
        {"cov_stft", ast},
        {"cov_tau_quarter", make_Atau(0.25, 1)},
        {"cov_tau_half", make_Atau(0.5, 1)},
        {"cov_shear", shear}};
    for (auto& [nm, A] : cov_mats) {
        CovarianceConfig cfg{A, nm, shifts, false};
        entries.push_back({nm, Verdict::pass, [cfg, family5, window] { return exp_covariance(cfg, family5, window); }});
    }
    {
        CovarianceConfig cfg{ast, "cov_negative_control", shifts, true};
        entries.push_back({cfg.name, Verdict::fail,
                           [cfg, family5, window] { return exp_covariance(cfg, family5, window); }});
    }

    // Norm equivalence: 3 matrices x 3 exponent pairs x 2 weights.
    std::vector<std::pair<std::string, SympMat>> eq_mats = {
        {"ast", ast}, {"tau3", make_Atau(1.0 / 3.0, 1)}, {"genhalf", gen_half}};
    const std::pair<double, double> pq[] = {{1.0, kInf}, {2.0, 1.0}, {2.0, 4.0}};
    for (auto& [mn, A] : eq_mats)
        for (auto [p, q] : pq)
            for (int wi = 0; wi < 2; ++wi) {
                Weight m = wi == 0 ? weight_one() : weight_vs(2.0);
                std::string nm = "eq_" + mn + "_p" + (std::isinf(q) ? std::to_string(static_cast<int>(p)) + "qinf"
                                                                    : std::to_string(static_cast<int>(p)) + "q" +
                                                                          std::to_string(static_cast<int>(q))) +
                                 (wi == 0 ? "_m1" : "_mv2");
                EquivalenceConfig cfg{A, nm, p, q, m, 50.0, false};
                entries.push_back({nm, Verdict::pass,
                                   [cfg, family24, window] { return exp_equivalence(cfg, family24, window); }});
            }
    {
        EquivalenceConfig cfg{ast, "eq_negative_control", 2.0, 4.0, weight_one(), 50.0, true};
        entries.push_back({cfg.name, Verdict::fail,
                           [cfg, family24, window] { return exp_equivalence(cfg, family24, window); }});
    }

    // p = q diagonal case.
    {
        DiagonalCaseConfig cfg{shear, "diag_shear_p1", 1.0, weight_one(), 50.0, false};
        entries.push_back({cfg.name, Verdict::pass,
                           [cfg, family24, window] { return exp_diagonal_case(cfg, family24, window); }});
        DiagonalCaseConfig cfg2{ast, "diag_ast_p2", 2.0, weight_one(), 50.0, false};
        entries.push_back({cfg2.name, Verdict::pass,
                           [cfg2, family24, window] { return exp_diagonal_case(cfg2, family24, window); }});
        DiagonalCaseConfig hv{make_Atau(0.0, 1), "diag_rihacek_hv", 2.0, weight_one(), 50.0, false};
        entries.push_back({hv.name, Verdict::hypothesis_violated,
                           [hv, family24, window] { return exp_diagonal_case(hv, family24, window); }});
    }

    // Counterexamples.
    {
        RihacekFailureConfig cfg{"rihacek_failure_phalf_qquarter", 0.5, 0.25, 10.0, false};
        entries.push_back({cfg.name, Verdict::pass, [cfg, g] { return exp_rihacek_failure(cfg, g); }});
        RihacekFailureConfig flat{"rihacek_control_p2_q2", 2.0, 2.0, 10.0, false};
        entries.push_back({flat.name, Verdict::informative, [flat, g] { return exp_rihacek_failure(flat, g); }});
        RihacekFailureConfig bad{"rihacek_negative_control", 0.5, 0.25, 10.0, true};
        entries.push_back({bad.name, Verdict::fail, [bad, g] { return exp_rihacek_failure(bad, g); }});

        LowerTriangularFailureConfig lt{"lowtri_failure_phalf_qquarter", 1.0, 0.5, 0.25, 10.0, false};
        entries.push_back({lt.name, Verdict::pass, [lt, g] { return exp_lower_triangular_failure(lt, g); }});
        LowerTriangularFailureConfig ltc{"lowtri_control_p2_q2", 1.0, 2.0, 2.0, 10.0, false};
        entries.push_back(
            {ltc.name, Verdict::informative, [ltc, g] { return exp_lower_triangular_failure(ltc, g); }});
        LowerTriangularFailureConfig ltn{"lowtri_negative_control", 1.0, 0.5, 0.25, 10.0, true};
        entries.push_back({ltn.name, Verdict::fail, [ltn, g] { return exp_lower_triangular_failure(ltn, g); }});
    }

    // Amalgam characterization.
    {
        AmalgamConfig cfg{shear, "amalgam_shear_p1q2", 1.0, 2.0, weight1d_one(), weight1d_one(), 50.0, false};
        entries.push_back({cfg.name, Verdict::pass,
                           [cfg, family24, window] { return exp_amalgam(cfg, family24, window); }});
        // Upper-but-not-lower E_A: hypothesis violated.
        SympMat up = mod_signal_matrix(make_VCT(Mat{{1.0}}));
        AmalgamConfig hv{up, "amalgam_hv_control", 1.0, 2.0, weight1d_one(), weight1d_one(), 50.0, false};
        entries.push_back({hv.name, Verdict::hypothesis_violated,
                           [hv, family24, window] { return exp_amalgam(hv, family24, window); }});
    }

    // Inversion.
    {
        Signal f = make_shifted_gaussian(g, 0.5, -0.5);
        Signal g1 = make_gaussian(g);
        Signal g2 = make_gaussian(g, 1.3);
        InversionConfig c1{ast, "inv_stft", 1e-4, false};
        entries.push_back({c1.name, Verdict::pass, [c1, f, g1, g2] { return exp_inversion(c1, f, g1, g2); }});
        InversionConfig c2{make_Atau(0.5, 1), "inv_tau_half", 1e-4, false};
        entries.push_back({c2.name, Verdict::pass, [c2, f, g1, g2] { return exp_inversion(c2, f, g1, g2); }});
        InversionConfig c3{ast, "inv_negative_control", 1e-4, true};
        entries.push_back({c3.name, Verdict::fail, [c3, f, g1, g2] { return exp_inversion(c3, f, g1, g2); }});
    }

    // Dilation norm scaling.
    {
        DilationNormConfig a{.name = "appA_2I_p1", .S = Mat{{2, 0}, {0, 2}}, .p = 1.0};
        entries.push_back({a.name, Verdict::pass, [a, g, seed] { return exp_appendixA(a, g, seed); }});
        DilationNormConfig b{.name = "appA_diag23_p1_qinf", .S = Mat{{2, 0}, {0, 3}}, .p = 1.0, .q = kInf};
        entries.push_back({b.name, Verdict::pass, [b, g, seed] { return exp_appendixA(b, g, seed); }});
        DilationNormConfig c{.name = "appA_identity", .S = Mat{{1, 0}, {0, 1}}, .p = 3.0, .q = 1.0};
        entries.push_back({c.name, Verdict::pass, [c, g, seed] { return exp_appendixA(c, g, seed); }});
        DilationNormConfig w{.name = "appA_weighted_transfer",
                             .S = Mat{{2, 0}, {0, 2}},
                             .p = 1.0,
                             .q = 2.0,
                             .weight = weight_vs(2.0)};
        entries.push_back({w.name, Verdict::pass, [w, g, seed] { return exp_appendixA(w, g, seed); }});
        DilationNormConfig n{.name = "appA_negative_control",
                             .S = Mat{{2, 0}, {0, 2}},
                             .p = 1.0,
                             .corrupt_exponent = true};
        entries.push_back({n.name, Verdict::fail, [n, g, seed] { return exp_appendixA(n, g, seed); }});
    }

    // Tensor products.
    entries.push_back({"tensor_random_pairs", Verdict::pass,
                       [g, seed] { return exp_tensor_random(g, 20, seed); }});
    {
        Signal f = make_gaussian(g, 0.9);
        Signal h = make_chirped_gaussian(g, 1.0, 1.1);
        entries.push_back({"tensor_negative_control", Verdict::fail, [g, f, h] {
                               TensorConfig cfg{"tensor_negative_control", 1e-6, true};
                               return exp_tensor(cfg, make_VC(Mat{{1.0}}),
                                                 SympMat::from(Mat::identity(2)), f, h);
                           }});
    }

    return entries;
}

} // namespace symtf
