// Acceptance suite: one check per criterion, each printing a pass/fail line.
// Grid: n = 256, dx = 1/16, d = 1 throughout.

#include <catch_amalgamated.hpp>

#include <cstdio>

#include "symtf/verify.hpp"

using namespace symtf;

namespace {

const Grid1D g = Grid1D::standard();

void report(const char* num, const char* name, bool ok, const std::string& detail) {
    std::printf("[ACCEPTANCE] %s %s: %s (%s)\n", num, name, ok ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
}

std::mt19937_64 rng_for(const char* tag) {
    std::seed_seq seq(tag, tag + std::char_traits<char>::length(tag));
    return std::mt19937_64(seq);
}

} // namespace

TEST_CASE("01 structural exactness of named constructors") {
    std::vector<std::pair<std::string, Mat>> mats;
    mats.emplace_back("J1", make_J(1).m);
    mats.emplace_back("J2", make_J(2).m);
    mats.emplace_back("DL_diag23", make_DL(Mat{{2, 0}, {0, 3}}).m);
    mats.emplace_back("DL_shear", make_DL(Mat{{1, 1}, {0, 1}}).m);
    mats.emplace_back("VC", make_VC(Mat{{1.0, 0.5}, {0.5, -2.0}}).m);
    mats.emplace_back("VCT", make_VCT(Mat{{2.0}}).m);
    mats.emplace_back("Pi1", make_interchange({1}, 2).m);
    mats.emplace_back("Pi2", make_interchange({2}, 2).m);
    mats.emplace_back("Pi12", make_interchange({1, 2}, 2).m);
    mats.emplace_back("AST_d1", make_AST(1).m);
    mats.emplace_back("AST_d2", make_AST(2).m);
    for (double tau : {0.0, 0.25, 1.0 / 3.0, 0.5, 0.75, 1.0})
        mats.emplace_back("Atau_" + std::to_string(tau), make_Atau(tau, 1).m);
    mats.emplace_back("AFT2_d1", make_AFT2(1).m);
    mats.emplace_back("AFT2_d2", make_AFT2(2).m);
    mats.emplace_back("tensor_JJ", tensor_matrix(make_J(1), make_J(1)).m);
    mats.emplace_back("tensor_VJ", tensor_matrix(make_VC(Mat{{1}}), make_J(1)).m);
    mats.emplace_back("Vtilde", make_Vtilde(Mat{{1.5}}).m);
    mats.emplace_back("gen_stft", gen_stft_matrix(ChirpAtomSpec::scalar(0.5, 2.0, -1.0), 1).m);
    mats.emplace_back("gen_tau", gen_tau_matrix(0.5, ChirpAtomSpec::scalar(1.0, 1.0, 1.0), 1).m);
    mats.emplace_back("mod_window", mod_window_matrix(make_VC(Mat{{1.0}})).m);
    mats.emplace_back("mod_signal", mod_signal_matrix(make_VCT(Mat{{1.0}})).m);

    double worst_res = 0.0, worst_det = 0.0;
    for (const auto& [name, m] : mats) {
        INFO(name);
        double res = symplectic_residual(m);
        double dd = std::abs(det(m) - 1.0);
        worst_res = std::max(worst_res, res);
        worst_det = std::max(worst_det, dd);
        CHECK(res <= 1e-12);
        CHECK(dd <= 1e-10);
    }
    bool ok = worst_res <= 1e-12 && worst_det <= 1e-10;
    report("01", "structural-exactness", ok,
           "max residual " + std::to_string(worst_res) + ", max |det-1| " + std::to_string(worst_det));
    REQUIRE(ok);
}

TEST_CASE("02 E_A / F_A golden values") {
    bool ok = true;

    auto [e_st, f_st] = ea_fa(make_AST(1));
    ok = ok && (e_st == Mat::identity(2));

    for (double tau : {0.0, 0.25, 0.5, 2.0 / 3.0, 1.0}) {
        auto [e, f] = ea_fa(make_Atau(tau, 1));
        (void)f;
        ok = ok && (e == Mat{{1.0 - tau, 0.0}, {0.0, tau}});
    }

    ok = ok && (det(ea_fa(make_Atau(0.0, 1)).first) == 0.0);

    for (double c : {1.0, -2.0}) {
        auto [e, f] = ea_fa(SympMat::from(make_AST(1).m * make_Vtilde(Mat{{c}}).m));
        (void)f;
        ok = ok && (e == Mat{{1.0, 0.0}, {c, 1.0}});
    }

    auto rng = rng_for("accept-ufa");
    for (int i = 0; i < 5; ++i) {
        SympMat ap = random_symplectic_word(rng, 1).matrix(1);
        auto [e, f] = ea_fa(mod_signal_matrix(ap));
        (void)f;
        ok = ok && (max_abs_diff(e, ap.m) == 0.0);
    }

    report("02", "ea-fa-golden-values", ok, "all block extractions exact");
    REQUIRE(ok);
}

TEST_CASE("03 dual-path agreement") {
    Signal f = make_chirped_gaussian(g, 1.0, 0.9);
    Signal w = make_gaussian(g);
    double worst = 0.0;

    worst = std::max(worst, modulus_rel_sup_diff(metaplectic_wigner(make_AST(1), f, w), stft(f, w)));
    for (double tau : {0.0, 0.25, 0.5, 1.0})
        worst = std::max(worst, modulus_rel_sup_diff(metaplectic_wigner(make_Atau(tau, 1), f, w),
                                                     tau_wigner(f, w, tau)));
    ChirpAtomSpec s1 = ChirpAtomSpec::scalar(1.0, 1.0, 1.0);
    worst = std::max(worst, modulus_rel_sup_diff(metaplectic_wigner(gen_stft_matrix(s1, 1), f, w),
                                                 generalized_stft(f, w, s1)));
    ChirpAtomSpec s2 = ChirpAtomSpec::scalar(-1.0, 1.0, 0.0);
    worst = std::max(worst, modulus_rel_sup_diff(metaplectic_wigner(gen_tau_matrix(0.5, s2, 1), f, w),
                                                 generalized_tau_wigner(f, w, 0.5, s2)));
    bool ok = worst <= 1e-6;
    report("03", "dual-path-agreement", ok, "relative sup error " + std::to_string(worst));
    REQUIRE(ok);
}

TEST_CASE("04 covariance identity with negative control") {
    Signal window = make_gaussian(g);
    auto family = covariance_family(g);
    auto shifts = covariance_shifts();
    REQUIRE(family.size() == 5);
    REQUIRE(shifts.size() == 20);

    SympMat shear = SympMat::from(make_AST(1).m * make_Vtilde(Mat{{1.0}}).m);
    std::vector<std::pair<std::string, SympMat>> mats = {{"AST", make_AST(1)},
                                                         {"Atau14", make_Atau(0.25, 1)},
                                                         {"Atau12", make_Atau(0.5, 1)},
                                                         {"shear", shear}};
    double worst = 0.0;
    for (auto& [name, A] : mats) {
        ExperimentResult r = exp_covariance({A, name, shifts, false}, family, window);
        worst = std::max(worst, r.measured.at("max_deviation"));
    }
    ExperimentResult ctrl = exp_covariance({make_AST(1), "ctrl", shifts, true},
                                           {make_gaussian(g)}, window);
    double ctrl_dev = ctrl.measured.at("max_deviation");
    bool ok = worst <= 1e-6 && ctrl_dev >= 1e-2;
    report("04", "covariance", ok,
           "max deviation " + std::to_string(worst) + ", corrupted-E control " + std::to_string(ctrl_dev));
    REQUIRE(ok);
}

TEST_CASE("05 energy identity on random symplectic matrices") {
    Signal f = make_chirped_gaussian(g, -1.0, 1.1);
    Signal w = make_gaussian(g, 0.9);
    double ref = quad_norm(f, 2.0) * quad_norm(w, 2.0);
    auto rng = rng_for("accept-energy");
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        SympMat a = random_symplectic_word(rng, 2).matrix(2);
        worst = std::max(worst, std::abs(quad_norm(metaplectic_wigner(a, f, w), 2.0) - ref));
    }
    bool ok = worst <= 1e-8;
    report("05", "energy-identity", ok, "max |deviation| " + std::to_string(worst) + " over 10 matrices");
    REQUIRE(ok);
}

TEST_CASE("06 norm characterization positive suite") {
    Signal window = make_gaussian(g);
    auto family = standard_family(g);
    REQUIRE(family.size() == 24);

    SympMat gen_half = gen_tau_matrix(0.5, ChirpAtomSpec::scalar(1.0, 1.0, 0.0), 1);
    std::vector<std::pair<std::string, SympMat>> mats = {
        {"AST", make_AST(1)}, {"Atau13", make_Atau(1.0 / 3.0, 1)}, {"genhalf", gen_half}};
    const std::pair<double, double> pq[] = {{1.0, kInf}, {2.0, 1.0}, {2.0, 4.0}};

    double worst_spread = 0.0;
    bool ok = true;
    for (auto& [name, A] : mats)
        for (auto [p, q] : pq)
            for (int wi = 0; wi < 2; ++wi) {
                Weight m = wi == 0 ? weight_one() : weight_vs(2.0);
                ExperimentResult r =
                    exp_equivalence({A, name, p, q, m, 50.0, false}, family, window);
                INFO(name << " p=" << p << " q=" << q << " w=" << m.desc);
                CHECK(r.verdict == Verdict::pass);
                ok = ok && r.verdict == Verdict::pass;
                worst_spread = std::max(worst_spread, r.measured.at("ratio_spread"));
            }
    report("06", "norm-characterization-positive", ok,
           "18 sweeps over 24-member family, worst ratio spread " + std::to_string(worst_spread) +
               " <= 50");
    REQUIRE(ok);
}

TEST_CASE("07 counterexample negative suite") {
    ExperimentResult rih = exp_rihacek_failure({"rihacek", 0.5, 0.25, 10.0, false}, g);
    ExperimentResult rih_ctrl = exp_rihacek_failure({"rihacek_ctrl", 2.0, 2.0, 10.0, false}, g);
    ExperimentResult low = exp_lower_triangular_failure({"lowtri", 1.0, 0.5, 0.25, 10.0, false}, g);
    ExperimentResult low_ctrl = exp_lower_triangular_failure({"lowtri_ctrl", 1.0, 2.0, 2.0, 10.0, false}, g);

    bool ok = rih.verdict == Verdict::pass && rih.measured.at("product_formula_max_rel_err") <= 1e-6 &&
              rih.measured.at("drift_factor") >= 10.0 && low.verdict == Verdict::pass &&
              low.measured.at("drift_factor") >= 10.0 &&
              rih_ctrl.verdict == Verdict::informative && rih_ctrl.measured.at("drift_factor") <= 2.0 &&
              low_ctrl.verdict == Verdict::informative && low_ctrl.measured.at("drift_factor") <= 2.0;
    report("07", "counterexample-negative-suite", ok,
           "product err " + std::to_string(rih.measured.at("product_formula_max_rel_err")) +
               ", drifts " + std::to_string(rih.measured.at("drift_factor")) + "x / " +
               std::to_string(low.measured.at("drift_factor")) + "x, p=q controls flat");
    REQUIRE(ok);
}

TEST_CASE("08 dilation norm ratios") {
    ExperimentResult a = exp_appendixA({.name = "a1", .S = Mat{{2, 0}, {0, 2}}, .p = 1.0}, g, 11);
    ExperimentResult b = exp_appendixA({.name = "a2", .S = Mat{{2, 0}, {0, 3}}, .p = 1.0, .q = kInf}, g, 11);
    bool ok = a.verdict == Verdict::pass && b.verdict == Verdict::pass &&
              std::abs(a.measured.at("expected_ratio") - 0.5) == 0.0 &&
              a.measured.at("max_rel_err") <= 1e-6 && b.measured.at("max_rel_err") <= 1e-6;
    report("08", "dilation-norm-ratios", ok,
           "|det S|^{1/2-1/p} matched to " + std::to_string(a.measured.at("max_rel_err")) + " and " +
               std::to_string(b.measured.at("max_rel_err")));
    REQUIRE(ok);
}

TEST_CASE("09 tensor products of metaplectic operators") {
    bool exact = max_abs_diff(tensor_matrix(make_J(1), make_J(1)).m, make_J(2).m) == 0.0;
    ExperimentResult r = exp_tensor_random(g, 20, 17);
    bool ok = exact && r.verdict == Verdict::pass;
    report("09", "tensor-metaplectic", ok,
           "tensor(J,J) = J2 exact; 20 random pairs max residual " +
               std::to_string(r.measured.at("max_rel_l2")));
    REQUIRE(ok);
}

TEST_CASE("10 inversion and representation formulas") {
    Signal f = make_shifted_gaussian(g, 0.5, -0.5);
    Signal g1 = make_gaussian(g);
    Signal g2 = make_gaussian(g, 1.3);
    ExperimentResult r1 = exp_inversion({make_AST(1), "inv_ast", 1e-4, false}, f, g1, g2);
    ExperimentResult r2 = exp_inversion({make_Atau(0.5, 1), "inv_tau", 1e-4, false}, f, g1, g2);
    bool ok = r1.verdict == Verdict::pass && r2.verdict == Verdict::pass;
    report("10", "inversion", ok,
           "reconstruction errors " + std::to_string(r1.measured.at("reconstruction_rel_l2")) + " / " +
               std::to_string(r2.measured.at("reconstruction_rel_l2")) + ", representation errors " +
               std::to_string(r1.measured.at("representation_rel_l2")) + " / " +
               std::to_string(r2.measured.at("representation_rel_l2")));
    REQUIRE(ok);
}

TEST_CASE("11 amalgam duality") {
    Signal w = make_gaussian(g);
    double worst_dual = 0.0;
    for (const Signal& f : standard_family(g)) {
        double am = amalgam_norm(f, 1.0, 2.0, weight1d_one(), weight1d_one(), w);
        double mo = modulation_norm(fourier(f), 1.0, 2.0, weight_one(), fourier(w));
        worst_dual = std::max(worst_dual, std::abs(am - mo) / mo);
    }
    // p = q collapse with separable weights.
    double worst_wem = 0.0;
    Weight1D m1 = weight1d_vs(1.0), m2 = weight1d_vs(1.0);
    for (const Signal& f : {make_gaussian(g), make_chirped_gaussian(g, 2.0), make_hermite(g, 2)}) {
        for (double p : {1.0, 2.0}) {
            double am = amalgam_norm(f, p, p, m1, m2, w);
            double mo = modulation_norm(f, p, p, weight_separable(m2, m1), w);
            worst_wem = std::max(worst_wem, std::abs(am - mo) / mo);
        }
    }
    bool ok = worst_dual <= 1e-6 && worst_wem <= 1e-10;
    report("11", "amalgam-duality", ok,
           "fourier-route deviation " + std::to_string(worst_dual) + ", p=q collapse deviation " +
               std::to_string(worst_wem));
    REQUIRE(ok);
}
