#include <catch_amalgamated.hpp>

#include "symtf/metaplectic.hpp"

using namespace symtf;

namespace {

std::mt19937_64 rng_for(const char* tag) {
    std::seed_seq seq(tag, tag + std::char_traits<char>::length(tag));
    return std::mt19937_64(seq);
}

double sup_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double d = 0.0;
    for (size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

} // namespace

TEST_CASE("chirp multiply") {
    Grid1D g = Grid1D::standard();
    Signal f = make_gaussian(g);

    CHECK(sup_diff(chirp_multiply(0.0, f).v, f.v) == 0.0);

    Signal c = chirp_multiply(1.5, f);
    for (int k = 0; k < g.n; ++k)
        CHECK(std::abs(std::abs(c.v[static_cast<size_t>(k)]) - std::abs(f.v[static_cast<size_t>(k)])) < 1e-15);

    CHECK(sup_diff(chirp_multiply(-1.5, c).v, f.v) < 1e-13);

    Field2D t = tensor(f, f);
    Mat C{{1.0, 0.5}, {0.5, -2.0}};
    CHECK(sup_diff(chirp_multiply(-C, chirp_multiply(C, t)).v, t.v) < 1e-13);
    CHECK_THROWS_AS(chirp_multiply(Mat{{0, 1}, {0, 0}}, t), NotSymmetric);
}

TEST_CASE("chirp convolve") {
    Grid1D g = Grid1D::standard();
    Signal f = make_gaussian(g, 0.9);

    CHECK(sup_diff(chirp_convolve(0.0, f).v, f.v) < 1e-13);
    Signal c = chirp_convolve(2.0, f);
    CHECK(std::abs(quad_norm(c, 2.0) - quad_norm(f, 2.0)) < 1e-12);
    CHECK(sup_diff(chirp_convolve(-2.0, c).v, f.v) < 1e-12);

    Field2D t = tensor(f, f);
    Mat C{{1.0, 0.0}, {0.0, 1.0}};
    Field2D cc = chirp_convolve(C, t);
    CHECK(std::abs(quad_norm(cc, 2.0) - quad_norm(t, 2.0)) < 1e-12);
    CHECK(rel_l2_after_alignment(chirp_convolve(-C, cc), t) < 1e-12);
}

TEST_CASE("dilate on signals") {
    Grid1D g = Grid1D::standard();
    Signal f = make_gaussian(g);

    CHECK(sup_diff(dilate(1.0, f).v, f.v) == 0.0);

    // T_2 gaussian = sqrt(2) 2^{1/4} e^{-4 pi t^2}
    Signal d2 = dilate(2.0, f);
    double dev = 0.0;
    for (int k = 0; k < g.n; ++k) {
        double t = g.t(k);
        double ref = std::sqrt(2.0) * std::pow(2.0, 0.25) * std::exp(-4.0 * kPi * t * t);
        dev = std::max(dev, std::abs(d2.v[static_cast<size_t>(k)] - cplx(ref)));
    }
    CHECK(dev < 1e-8);

    // Non-integer scale goes through band-limited resampling; still unitary.
    Signal d15 = dilate(1.5, f);
    CHECK(std::abs(quad_norm(d15, 2.0) - 1.0) < 1e-6);
    Signal dm = dilate(-1.0, f);
    CHECK(std::abs(quad_norm(dm, 2.0) - 1.0) < 1e-10);

    CHECK_THROWS_AS(dilate(0.0, f), SingularL);
}

TEST_CASE("dilate on fields") {
    Grid1D g = Grid1D::standard();
    Signal f = make_gaussian(g);
    Field2D t = tensor(f, f);

    // Integer remap: 90-degree rotation preserves the gaussian tensor.
    Mat rot{{0, 1}, {-1, 0}};
    Field2D r = dilate(rot, t);
    CHECK(rel_l2_after_alignment(r, t) < 1e-12);

    // Shear with a non-integer entry: compare against the closed form.
    Mat sh{{1.0, 0.5}, {0.0, 1.0}};
    Field2D s = dilate(sh, t);
    double dev = 0.0;
    for (int ix = 0; ix < g.n; ++ix)
        for (int iy = 0; iy < g.n; ++iy) {
            double x = g.t(ix) + 0.5 * g.t(iy);
            double y = g.t(iy);
            double ref = std::sqrt(2.0) * std::exp(-kPi * (x * x + y * y));
            dev = std::max(dev, std::abs(s.at(ix, iy) - cplx(ref)));
        }
    CHECK(dev < 1e-8);

    // General invertible map: unitarity within resampling error.
    Mat L{{1.25, 0.5}, {-0.25, 1.0}};
    Field2D dl = dilate(L, t);
    CHECK(std::abs(quad_norm(dl, 2.0) - 1.0) < 1e-6);
}

TEST_CASE("apply_word") {
    Grid1D g = Grid1D::standard();
    Signal f = make_chirped_gaussian(g, 1.0);

    CHECK(sup_diff(apply_word(GeneratorWord{}, f).v, f.v) == 0.0);

    GeneratorWord wj;
    wj.atoms.push_back(GeneratorAtom::interchange({1}, 1));
    CHECK(sup_diff(apply_word(wj, f).v, fourier(f).v) == 0.0);

    auto rng = rng_for("apply-word");
    for (int i = 0; i < 10; ++i) {
        GeneratorWord w = random_symplectic_word(rng, 1);
        Signal out = apply_word(w, f);
        CHECK(std::abs(quad_norm(out, 2.0) - 1.0) < 1e-10);
    }
}

TEST_CASE("apply_free basic identities") {
    Grid1D g = Grid1D::standard();
    Signal f = make_shifted_gaussian(g, 0.5, -1.0);

    // J is free with zero chirps: the closed form reduces to the Fourier
    // transform exactly.
    Signal viaJ = apply_free(make_J(1), f);
    CHECK(sup_diff(viaJ.v, fourier(f).v) < 1e-9);

    CHECK_THROWS_AS(apply_free(make_VC(Mat{{1}}), f), NotFree);

    auto rng = rng_for("apply-free");
    int tested = 0;
    while (tested < 10) {
        SympMat s = random_symplectic_word(rng, 1).matrix(1);
        if (std::abs(det(blocks(s)[1])) < 0.3) continue;
        Signal out = apply_free(s, f);
        CHECK(std::abs(quad_norm(out, 2.0) - 1.0) < 1e-8);
        // The factorized word realizes the same operator up to global phase.
        Signal ww = apply_word(factorize_free(s), f);
        CHECK(rel_l2_after_alignment(out, ww) < 1e-9);
        ++tested;
    }
}

TEST_CASE("apply_metaplectic generator cases") {
    Grid1D g = Grid1D::standard();
    Signal f = make_chirped_gaussian(g, -1.0, 1.2);

    Mat L{{2}};
    CHECK(rel_l2_after_alignment(apply_metaplectic(make_DL(L), f), dilate(2.0, f)) < 1e-9);
    CHECK(rel_l2_after_alignment(apply_metaplectic(make_VC(Mat{{1.0}}), f), chirp_multiply(1.0, f)) < 1e-9);
    CHECK(rel_l2_after_alignment(apply_metaplectic(make_VCT(Mat{{1.0}}), f), chirp_convolve(1.0, f)) < 1e-9);
    CHECK(rel_l2_after_alignment(apply_metaplectic(make_J(1), f), fourier(f)) < 1e-12);
}

TEST_CASE("apply_metaplectic group law") {
    Grid1D g = Grid1D::standard();
    Signal f = make_gaussian(g, 0.9);
    auto rng = rng_for("group-law");
    RandomWordOptions opt;
    opt.max_partial_norm = 1.8;  // keep the product pair grid-compatible
    for (int i = 0; i < 50; ++i) {
        SympMat a1 = random_symplectic_word(rng, 1, opt).matrix(1);
        SympMat a2 = random_symplectic_word(rng, 1, opt).matrix(1);
        if (max_abs((a1 * a2).m) > 2.5) continue;
        Signal lhs = apply_metaplectic(a1 * a2, f);
        Signal rhs = apply_metaplectic(a1, apply_metaplectic(a2, f));
        CHECK(rel_l2_after_alignment(lhs, rhs) < 1e-7);
    }
}

TEST_CASE("generator covariance") {
    // |G pi(z) f| = |pi(G_sym z) G f| for each generator G; z on the lattice.
    Grid1D g = Grid1D::standard();
    Signal f = make_gaussian(g);
    const double y = 0.5, eta = -1.0;
    Signal shifted = tf_shift(f, y, eta);

    auto check_cov = [&](const GeneratorAtom& atom) {
        SympMat s = atom.matrix();
        double wy = s.m(0, 0) * y + s.m(0, 1) * eta;
        double weta = s.m(1, 0) * y + s.m(1, 1) * eta;
        Signal lhs = detail::apply_atom(atom, shifted);
        Signal rhs = tf_shift(detail::apply_atom(atom, f), wy, weta);
        double dev = 0.0, scale = 0.0;
        for (int k = 0; k < g.n; ++k) {
            dev = std::max(dev, std::abs(std::abs(lhs.v[static_cast<size_t>(k)]) -
                                         std::abs(rhs.v[static_cast<size_t>(k)])));
            scale = std::max(scale, std::abs(rhs.v[static_cast<size_t>(k)]));
        }
        CHECK(dev / scale < 1e-7);
    };

    check_cov(GeneratorAtom::interchange({1}, 1));
    check_cov(GeneratorAtom::dilation(Mat{{2}}));
    check_cov(GeneratorAtom::chirp_mul(Mat{{1}}));
    check_cov(GeneratorAtom::chirp_conv(Mat{{1}}));
}

TEST_CASE("fourier transform of a chirp has flat modulus") {
    Grid1D g = Grid1D::standard();
    Signal chirp(g);
    for (int k = 0; k < g.n; ++k) {
        double t = g.t(k);
        chirp.v[static_cast<size_t>(k)] = std::polar(1.0, kPi * t * t);
    }
    Signal sp = fourier(chirp);
    // Interior of the dual grid: |nu| <= 4.
    double lo = 1e300, hi = 0.0, mean = 0.0;
    int count = 0;
    for (int j = 0; j < g.n; ++j) {
        if (std::abs(g.t(j)) > 4.0) continue;
        double m = std::abs(sp.v[static_cast<size_t>(j)]);
        lo = std::min(lo, m);
        hi = std::max(hi, m);
        mean += m;
        ++count;
    }
    mean /= count;
    CHECK((hi - lo) / mean < 0.05);
    // The measured proportionality constant stays near |det C|^{-1/2} = 1.
    CHECK(mean == Catch::Approx(1.0).epsilon(0.02));
}

TEST_CASE("phase alignment helpers") {
    Grid1D g(64, 1.0 / 8.0);
    Signal f = make_gaussian(g);
    Signal h = f;
    for (auto& z : h.v) z *= std::polar(1.0, 1.234);
    CHECK(rel_l2_after_alignment(f, h) < 1e-14);
    CHECK(modulus_rel_sup_diff(f, h) < 1e-14);
    CHECK(std::abs(phase_align(h.v, f.v) - std::polar(1.0, 1.234)) < 1e-12);
}
