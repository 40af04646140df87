#include <catch_amalgamated.hpp>

#include "symtf/symplectic.hpp"

using namespace symtf;

namespace {
std::mt19937_64 rng_for(const char* tag) {
    std::seed_seq seq(tag, tag + std::char_traits<char>::length(tag));
    return std::mt19937_64(seq);
}
} // namespace

TEST_CASE("make_J") {
    SympMat j = make_J(1);
    CHECK(j.m == Mat{{0, 1}, {-1, 0}});
    CHECK(max_abs_diff(j.m * j.m, -Mat::identity(2)) == 0.0);
    CHECK(is_symplectic(make_J(2).m));
}

TEST_CASE("make_DL / make_VC / make_VCT") {
    CHECK(make_DL(Mat::identity(2)).m == Mat::identity(4));
    CHECK(make_VC(Mat{{1}}).m == Mat{{1, 0}, {1, 1}});
    CHECK(make_VCT(Mat{{1}}).m == Mat{{1, 1}, {0, 1}});
    CHECK(symplectic_residual(make_DL(Mat{{2, 0}, {0, 3}}).m) < 1e-12);
    CHECK_THROWS_AS(make_DL(Mat{{1, 2}, {2, 4}}), SingularL);
    CHECK_THROWS_AS(make_VC(Mat{{0, 1}, {0, 0}}), NotSymmetric);
    CHECK_THROWS_AS(make_VCT(Mat{{0, 1}, {0, 0}}), NotSymmetric);
}

TEST_CASE("interchange matrices") {
    CHECK(make_interchange({1}, 1).m == Mat{{0, 1}, {-1, 0}});
    CHECK(make_interchange({1, 2}, 2).m == make_J(2).m);
    CHECK(make_interchange({2, 1}, 2).m == make_J(2).m);
    CHECK(make_interchange({}, 3).m == Mat::identity(6));
    // Pi_2 in Sp(2, R) is the partial-Fourier matrix in the second variable.
    CHECK(make_interchange({2}, 2).m == make_AFT2(1).m);
}

TEST_CASE("named 4d x 4d constructors") {
    SympMat ast = make_AST(1);
    CHECK(ast.m == Mat{{1, -1, 0, 0}, {0, 0, 1, 1}, {0, 0, 0, -1}, {-1, 0, 0, 0}});

    SympMat a0 = make_Atau(0.0, 1);
    CHECK(a0.m == Mat{{1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 1}, {-1, 1, 0, 0}});

    CHECK(is_symplectic(make_AFT2(1).m));
    CHECK(is_symplectic(make_AFT2(2).m));
    CHECK(is_symplectic(make_AST(2).m));
    for (double tau : {0.0, 0.25, 1.0 / 3.0, 0.5, 1.0})
        CHECK(symplectic_residual(make_Atau(tau, 1).m) < 1e-12);
}

TEST_CASE("blocks and reassembly") {
    auto [A, B, C, D] = blocks(make_J(1));
    CHECK(A(0, 0) == 0);
    CHECK(B(0, 0) == 1);
    CHECK(C(0, 0) == -1);
    CHECK(D(0, 0) == 0);

    // A_{13} block of A_ST vanishes.
    auto g = blocks4(make_AST(1));
    CHECK(g[0][2](0, 0) == 0);

    auto rng = rng_for("reassembly");
    for (int i = 0; i < 5; ++i) {
        SympMat s = random_symplectic_word(rng, 2).matrix(2);
        CHECK(max_abs_diff(reassemble(blocks4(s)), s.m) == 0.0);
    }
}

TEST_CASE("ea_fa golden values") {
    auto [e_st, f_st] = ea_fa(make_AST(1));
    CHECK(e_st == Mat::identity(2));
    CHECK(f_st == Mat{{0, 0}, {-1, 0}});

    for (double tau : {0.0, 0.25, 0.5, 2.0 / 3.0}) {
        auto [e, f] = ea_fa(make_Atau(tau, 1));
        (void)f;
        CHECK(e == Mat{{1.0 - tau, 0}, {0, tau}});
    }

    // Rihacek matrix: E singular.
    auto [e0, f0] = ea_fa(make_Atau(0.0, 1));
    (void)f0;
    CHECK(det(e0) == 0.0);
}

TEST_CASE("classify") {
    ClassReport st = classify(make_AST(1));
    CHECK(st.shift_invertible);
    CHECK(st.EA_upper_block_triangular);
    CHECK(st.EA_lower_block_triangular);

    CHECK_FALSE(classify(make_Atau(0.0, 1)).shift_invertible);
    CHECK_FALSE(classify(make_Atau(1.0, 1)).shift_invertible);

    // A_ST V~_C with C != 0: invertible E, lower- but not upper-triangular.
    SympMat a = SympMat::from(make_AST(1).m * make_Vtilde(Mat{{1}}).m);
    auto [e, f] = ea_fa(a);
    (void)f;
    CHECK(e == Mat{{1, 0}, {1, 1}});
    ClassReport r = classify(a);
    CHECK(r.shift_invertible);
    CHECK(r.EA_lower_block_triangular);
    CHECK_FALSE(r.EA_upper_block_triangular);
}

TEST_CASE("classify tolerance stability") {
    Mat m = make_AST(1).m;
    ClassReport base = classify(SympMat::from(m));
    m(0, 2) += 5e-14;  // off-diagonal E-block perturbation below 1e-13
    ClassReport pert = classify(SympMat::from(m, 1e-9));
    CHECK(base.EA_upper_block_triangular == pert.EA_upper_block_triangular);
    CHECK(base.EA_lower_block_triangular == pert.EA_lower_block_triangular);
    CHECK(base.shift_invertible == pert.shift_invertible);
}

TEST_CASE("tensor lifts") {
    CHECK(tensor_matrix(make_J(1), make_J(1)).m == make_J(2).m);
    CHECK(lift_right(SympMat::from(Mat::identity(2))).m == Mat::identity(4));

    // lift of V_C on the window factor appears in the STFT counterexample.
    SympMat vt = make_Vtilde(Mat{{2}});
    CHECK(vt.m == Mat{{1, 0, 0, 0}, {0, 1, 0, 0}, {2, 0, 1, 0}, {0, 0, 0, 1}});

    auto rng = rng_for("tensor-lift");
    for (int i = 0; i < 10; ++i) {
        SympMat a = random_symplectic_word(rng, 1).matrix(1);
        SympMat b = random_symplectic_word(rng, 1).matrix(1);
        SympMat t = tensor_matrix(a, b);
        CHECK(symplectic_residual(t.m) < 1e-12);
        CHECK(max_abs_diff(t.m, (lift_right(b) * lift_left(a)).m) < 1e-12);
        CHECK(max_abs_diff(t.m, (lift_left(a) * lift_right(b)).m) < 1e-12);
    }
}

TEST_CASE("factorize_free") {
    // J has zero chirps and a pure Fourier composite.
    GeneratorWord wj = factorize_free(make_J(1));
    REQUIRE(wj.atoms.size() == 4);
    CHECK(max_abs(wj.atoms[0].payload) == 0.0);
    CHECK(max_abs(wj.atoms[3].payload) == 0.0);
    CHECK(max_abs_diff(wj.matrix(1).m, make_J(1).m) < 1e-12);

    CHECK_THROWS_AS(factorize_free(make_VC(Mat{{1}})), NotFree);

    auto rng = rng_for("factorize");
    int tested = 0;
    while (tested < 100) {
        SympMat s = random_symplectic_word(rng, 1).matrix(1);
        auto [A, B, C, D] = blocks(s);
        (void)A;
        (void)C;
        (void)D;
        if (std::abs(det(B)) < 1e-6) continue;
        GeneratorWord w = factorize_free(s);
        CHECK(max_abs_diff(w.matrix(1).m, s.m) < 1e-10);
        ++tested;
    }
}

TEST_CASE("random words are symplectic") {
    auto rng = rng_for("words");
    for (int n : {1, 2})
        for (int i = 0; i < 20; ++i) {
            SympMat s = random_symplectic_word(rng, n).matrix(n);
            CHECK(symplectic_residual(s.m) < 1e-12);
            CHECK(std::abs(det(s.m) - 1.0) < 1e-10);
        }
}

TEST_CASE("symplectic inverse") {
    auto rng = rng_for("inv");
    for (int i = 0; i < 10; ++i) {
        SympMat s = random_symplectic_word(rng, 2).matrix(2);
        CHECK(max_abs_diff((s * s.inv()).m, Mat::identity(4)) < 1e-10);
    }
}

TEST_CASE("constructor rejects non-symplectic input") {
    Mat bad = Mat::identity(2);
    bad(0, 0) = 2.0;
    CHECK_THROWS_AS(SympMat::from(bad), NotSymplectic);
}
