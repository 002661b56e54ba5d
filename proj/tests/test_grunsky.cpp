#include <doctest.h>

#include <cmath>
#include <cstring>
#include <functional>

#include "grunsky_op.hpp"

using grz::Cd;
using grz::GrunskyOperator;
using grz::Rigging;
using grz::Route;
using grz::Series;

namespace {

grz::Errc code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const grz::Error& e) {
        return e.code();
    }
    return grz::Errc::ok;
}

Rigging affine_pair(double gap) {
    return grz::validate_rigging({grz::affine_disk(0.0, 1.0), grz::affine_disk(gap, 1.0)});
}

} // namespace

TEST_CASE("off-diagonal kernel table of the affine pair") {
    Rigging rig = affine_pair(3.0);
    Eigen::MatrixXcd k = grz::kernel_coefficients(rig, 1, 0, 4);
    // 1/(3 + z - zeta)^2 expanded bivariately
    CHECK(std::abs(k(0, 0) - Cd(1.0 / 9.0)) <= 1e-15);
    CHECK(std::abs(k(1, 0) - Cd(-2.0 / 27.0)) <= 1e-15);
    CHECK(std::abs(k(0, 1) - Cd(2.0 / 27.0)) <= 1e-15);
    CHECK(std::abs(k(1, 1) - Cd(-6.0 / 81.0)) <= 1e-15);

    // mirror block has the reflected kernel, same value at (0,0)
    Eigen::MatrixXcd km = grz::kernel_coefficients(rig, 0, 1, 4);
    CHECK(std::abs(km(0, 0) - Cd(1.0 / 9.0)) <= 1e-15);
}

TEST_CASE("diagonal kernel tables") {
    Rigging aff = grz::validate_rigging({grz::affine_disk(Cd(1, 1), 0.7)});
    Eigen::MatrixXcd ka = grz::kernel_coefficients(aff, 0, 0, 6);
    CHECK(ka.cwiseAbs().maxCoeff() == 0.0);

    Cd c(0.2);
    Rigging quad = grz::validate_rigging({grz::quadratic_map(0.0, c)});
    Eigen::MatrixXcd kq = grz::kernel_coefficients(quad, 0, 0, 3);
    CHECK(std::abs(kq(0, 0) - (-c * c)) <= 1e-15);
    CHECK(std::abs(kq(1, 0) - 2.0 * c * c * c) <= 1e-15);
    CHECK(std::abs(kq(0, 1) - 2.0 * c * c * c) <= 1e-15);
    CHECK(std::abs(kq(1, 1) - (-6.0 * c * c * c * c)) <= 1e-15);

    Cd cj(0.3, -0.1);
    Rigging jk = grz::validate_rigging({grz::joukowski_ellipse(0.0, cj)});
    Eigen::MatrixXcd kj = grz::kernel_coefficients(jk, 0, 0, 3);
    CHECK(std::abs(kj(0, 0) - (-cj)) <= 1e-15);

    // coincidence limit: k00 equals one sixth of the Schwarzian at 0
    Rigging cubic = grz::validate_rigging(
        {grz::raw_series_map(0.0, Series({0.0, 1.0, 0.0, 0.1})), grz::affine_disk(4.0, 1.0)});
    Eigen::MatrixXcd kc = grz::kernel_coefficients(cubic, 0, 0, 3);
    Series s = grz::schwarzian(cubic.maps[0], 0);
    CHECK(std::abs(kc(0, 0) - s[0] / 6.0) <= 1e-14);
}

TEST_CASE("series blocks apply the entry normalization") {
    Rigging rig = affine_pair(3.0);
    grz::GrunskyBlock b = grz::block_series(rig, 1, 0, 4);
    CHECK(std::abs(b.m(0, 0) - Cd(-1.0 / 9.0)) <= 1e-15);
    CHECK(std::abs(b.m(1, 0) - Cd(2.0 / (27.0 * std::sqrt(2.0)))) <= 1e-15);

    Cd c(0.2);
    Rigging quad = grz::validate_rigging({grz::quadratic_map(0.0, c)});
    grz::GrunskyBlock d = grz::block_series(quad, 0, 0, 2);
    CHECK(std::abs(d.m(0, 0) - c * c) <= 1e-15);
    CHECK(std::abs(d.m(1, 0) + std::sqrt(2.0) * c * c * c) <= 1e-15);
    CHECK(std::abs(d.m(1, 1) - 3.0 * c * c * c * c) <= 1e-15);
}

TEST_CASE("entries are independent of the truncation order") {
    Rigging rig = grz::validate_rigging(
        {grz::quadratic_map(0.0, Cd(0.2, 0.1)), grz::joukowski_ellipse(Cd(3.2), 0.3)});
    for (int j = 0; j < 2; ++j)
        for (int i = 0; i < 2; ++i) {
            Eigen::MatrixXcd small = grz::block_series(rig, j, i, 4).m;
            Eigen::MatrixXcd big = grz::block_series(rig, j, i, 8).m;
            CHECK((big.topLeftCorner(4, 4) - small).cwiseAbs().maxCoeff() == 0.0);
        }
}

TEST_CASE("quadrature route reproduces series blocks") {
    grz::DiskQuadrature rule = grz::build_quadrature(48, 128);
    Rigging rig = affine_pair(3.0);
    for (int j = 0; j < 2; ++j)
        for (int i = 0; i < 2; ++i) {
            Eigen::MatrixXcd qs = grz::block_quadrature(rig, j, i, 6, rule).m;
            Eigen::MatrixXcd ss = grz::block_series(rig, j, i, 6).m;
            CHECK((qs - ss).cwiseAbs().maxCoeff() <= 1e-9);
        }

    Rigging quad = grz::validate_rigging({grz::quadratic_map(0.0, 0.2)});
    Eigen::MatrixXcd qd = grz::block_quadrature(quad, 0, 0, 6, rule).m;
    Eigen::MatrixXcd sd = grz::block_series(quad, 0, 0, 6).m;
    CHECK((qd - sd).cwiseAbs().maxCoeff() <= 1e-9);
    CHECK(std::abs(qd(0, 0) - Cd(0.04)) <= 1e-8);

    // raw-series diagonal exercises the divided-difference path
    Rigging cubic =
        grz::validate_rigging({grz::raw_series_map(0.0, Series({0.0, 1.0, 0.0, 0.1}))});
    Eigen::MatrixXcd qr = grz::block_quadrature(cubic, 0, 0, 6, rule).m;
    Eigen::MatrixXcd sr = grz::block_series(cubic, 0, 0, 6).m;
    CHECK((qr - sr).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("quadrature self-check flags hopeless resolution") {
    // steep diagonal kernel: peak width (1-|c|) is far below an 8x16 rule
    Rigging sharp = grz::validate_rigging({grz::joukowski_ellipse(0.0, 0.97)});
    grz::DiskQuadrature tiny = grz::build_quadrature(8, 16);
    CHECK(code_of([&] { grz::block_quadrature(sharp, 0, 0, 6, tiny); }) ==
          grz::Errc::quadrature_diverged);
}

TEST_CASE("rigging certification is required") {
    Rigging fake;
    fake.maps = {grz::affine_disk(0.0, 1.0)};
    fake.margin = 0.0;
    CHECK(code_of([&] { grz::kernel_coefficients(fake, 0, 0, 4); }) ==
          grz::Errc::rigging_not_certified);

    // coincident centers with a forged margin hit the series pivot guard
    Rigging forged;
    forged.maps = {grz::affine_disk(0.0, 1.0), grz::affine_disk(0.0, 1.0)};
    forged.margin = 1.0;
    CHECK(code_of([&] { grz::kernel_coefficients(forged, 1, 0, 4); }) ==
          grz::Errc::series_ill_conditioned);
}

TEST_CASE("assembled operator shape and symmetry") {
    Rigging rig = grz::validate_rigging(
        {grz::quadratic_map(0.0, Cd(0.2, 0.1)), grz::joukowski_ellipse(Cd(3.2), 0.3)});
    GrunskyOperator op = grz::assemble(rig, 12, Route::series);
    CHECK(op.n == 2);
    CHECK(op.truncation == 12);
    Eigen::MatrixXcd full = grz::flatten(op);
    CHECK(full.rows() == 24);
    CHECK((full - full.transpose()).cwiseAbs().maxCoeff() <= 1e-13);

    // affine diagonal blocks vanish identically inside a mixed rigging
    Rigging withaff = grz::validate_rigging({grz::affine_disk(0.0, 1.0), grz::quadratic_map(3.0, 0.2)});
    GrunskyOperator op2 = grz::assemble(withaff, 8, Route::series);
    CHECK(op2.block(0, 0).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("blocks depend only on their two maps") {
    std::vector<grz::ConformalMap> a = {grz::affine_disk(0.0, 0.8), grz::quadratic_map(3.0, 0.2),
                                        grz::joukowski_ellipse(Cd(0, 3.5), 0.3)};
    std::vector<grz::ConformalMap> b = a;
    b[2] = grz::joukowski_ellipse(Cd(0, 3.5), 0.45);
    GrunskyOperator opa = grz::assemble(grz::validate_rigging(a), 10, Route::series);
    GrunskyOperator opb = grz::assemble(grz::validate_rigging(b), 10, Route::series);

    for (int j = 0; j < 2; ++j)
        for (int i = 0; i < 2; ++i) {
            // untouched blocks agree bit for bit
            CHECK(std::memcmp(opa.block(j, i).data(), opb.block(j, i).data(),
                              sizeof(Cd) * 100) == 0);
        }
    CHECK((opa.block(2, 2) - opb.block(2, 2)).cwiseAbs().maxCoeff() > 1e-9);
    CHECK((opa.block(0, 2) - opb.block(0, 2)).cwiseAbs().maxCoeff() > 1e-12);
}

TEST_CASE("operator norm basics") {
    Rigging zero = grz::validate_rigging({grz::affine_disk(0.0, 1.0)});
    CHECK(grz::operator_norm(grz::assemble(zero, 8, Route::series)) == 0.0);

    Rigging tiny = grz::validate_rigging({grz::quadratic_map(0.0, 0.1)});
    double n1 = grz::operator_norm(grz::assemble(tiny, 1, Route::series));
    CHECK(n1 == doctest::Approx(0.01).epsilon(1e-12));

    GrunskyOperator pair = grz::assemble(affine_pair(3.0), 16, Route::series);
    double svd_norm = grz::operator_norm(pair);
    double pow_norm = grz::operator_norm(pair, true);
    CHECK(svd_norm < 1.0);
    CHECK(svd_norm > 0.05);
    CHECK(std::abs(svd_norm - pow_norm) <= 1e-9 * svd_norm);

    // kernel decay pushes the norm down as the pair separates
    double near = grz::operator_norm(grz::assemble(affine_pair(2.5), 16, Route::series));
    double mid = grz::operator_norm(grz::assemble(affine_pair(5.0), 16, Route::series));
    double far = grz::operator_norm(grz::assemble(affine_pair(10.0), 16, Route::series));
    CHECK(near > mid);
    CHECK(mid > far);
    CHECK(far < 0.02);
}

TEST_CASE("truncation sweep is monotone") {
    Rigging quad = grz::validate_rigging({grz::quadratic_map(0.0, 0.3)});
    auto rows = grz::truncation_sweep(quad, {4, 8, 16, 32});
    REQUIRE(rows.size() == 4);
    for (size_t k = 1; k < rows.size(); ++k) CHECK(rows[k].second >= rows[k - 1].second - 1e-12);
    CHECK(rows.back().second < 1.0);

    Rigging solo = grz::validate_rigging({grz::affine_disk(2.0, 1.0)});
    for (auto [order, norm] : grz::truncation_sweep(solo, {2, 4})) CHECK(norm == 0.0);

    CHECK(code_of([&] { grz::truncation_sweep(quad, {8, 4}); }) == grz::Errc::invalid_argument);
}
