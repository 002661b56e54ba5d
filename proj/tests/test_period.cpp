#include <doctest.h>

#include <cmath>
#include <functional>

#include "period_map.hpp"

using grz::Cd;
using grz::ConformalMap;
using grz::GrunskyOperator;
using grz::Mobius;
using grz::PeriodDatum;
using grz::RecoveryReport;
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

Rigging affine_triple(double r) {
    return grz::validate_rigging({grz::affine_disk(0.0, r), grz::affine_disk(2.0, r),
                                  grz::affine_disk(-2.0, r)});
}

} // namespace

TEST_CASE("normalization leaves pinned tuples alone") {
    Rigging rig = grz::validate_rigging({grz::affine_disk(0.0, 0.3), grz::affine_disk(1.0, 0.3),
                                         grz::affine_disk(-1.0, 0.3)});
    auto [norm, t] = grz::normalize_rigging(rig, 20);
    CHECK(grz::is_identity(t));
    CHECK(norm.maps[0].kind == grz::MapKind::affine_disk);
    CHECK(norm.maps[1].center == Cd(1.0));
    CHECK(norm.margin == rig.margin);

    // two maps already satisfying f1(0) = 0, f1'(0) = 1, f2(0) = 1
    Rigging pair = grz::validate_rigging({grz::joukowski_ellipse(0.0, 0.5),
                                          grz::affine_disk(1.0, 0.15)});
    auto [norm2, t2] = grz::normalize_rigging(pair, 20);
    CHECK(grz::is_identity(t2));
    CHECK(norm2.maps[0].kind == grz::MapKind::joukowski_ellipse);
}

TEST_CASE("three-point normalization pins the first three centers") {
    Rigging rig = grz::validate_rigging({grz::affine_disk(0.0, 0.5), grz::affine_disk(2.0, 0.5),
                                         grz::affine_disk(-2.0, 0.5)});
    auto [norm, t] = grz::normalize_rigging(rig, 24);
    CHECK(std::abs(grz::mobius_apply(t, Cd(2.0)) - Cd(1.0)) <= 1e-14);
    CHECK(std::abs(norm.maps[0].center) <= 1e-12);
    CHECK(std::abs(norm.maps[1].center - Cd(1.0)) <= 1e-12);
    CHECK(std::abs(norm.maps[2].center - Cd(-1.0)) <= 1e-12);
    CHECK(std::abs(grz::fprime0(norm.maps[0]) - Cd(0.25)) <= 1e-13);
    CHECK(norm.margin > 0.0);
}

TEST_CASE("two and one map conventions") {
    Rigging pair = grz::validate_rigging({grz::affine_disk(0.0, 1.0), grz::affine_disk(3.0, 1.0)});
    auto [norm, t] = grz::normalize_rigging(pair, 24);
    CHECK(std::abs(grz::mobius_apply(t, Cd(3.0)) - Cd(1.0)) <= 1e-14);
    CHECK(std::abs(norm.maps[0].center) <= 1e-14);
    CHECK(std::abs(grz::fprime0(norm.maps[0]) - Cd(1.0)) <= 1e-12);
    CHECK(std::abs(norm.maps[1].center - Cd(1.0)) <= 1e-12);
    CHECK(std::abs(grz::fprime0(norm.maps[1]) - Cd(1.0 / 9.0)) <= 1e-12);

    Rigging single = grz::validate_rigging({grz::quadratic_map(Cd(0.5, 0.2), 0.2)});
    auto [norm1, t1] = grz::normalize_rigging(single, 16);
    (void)t1;
    CHECK(std::abs(norm1.maps[0].center) <= 1e-13);
    CHECK(std::abs(grz::fprime0(norm1.maps[0]) - Cd(1.0)) <= 1e-13);
}

TEST_CASE("normalization rejections") {
    Rigging forged;
    forged.maps = {grz::affine_disk(0.0, 1.0), grz::affine_disk(0.0, 1.0)};
    forged.margin = 1.0;
    forged.samples = 256;
    CHECK(code_of([&] { grz::normalize_rigging(forged, 16); }) == grz::Errc::degenerate_centers);

    Rigging pair = grz::validate_rigging({grz::affine_disk(0.0, 1.0), grz::affine_disk(3.0, 1.0)});
    CHECK(code_of([&] { grz::normalize_rigging(pair, 1); }) == grz::Errc::invalid_argument);
}

TEST_CASE("period datum carries the surviving centers") {
    std::vector<ConformalMap> maps = {grz::affine_disk(0.0, 0.4), grz::affine_disk(2.5, 0.4),
                                      grz::affine_disk(-2.5, 0.4),
                                      grz::affine_disk(Cd(0.0, 2.5), 0.4)};
    PeriodDatum datum = grz::period(grz::validate_rigging(maps), 6, Route::series);
    CHECK(datum.grunsky.n == 4);
    CHECK(datum.grunsky.truncation == 6);
    REQUIRE(datum.normalized_centers.size() == 1);
    CHECK(std::abs(datum.normalized_centers[0] - Cd(0.0, 1.0)) <= 1e-12);

    std::vector<Cd> centers = grz::period_centers(datum);
    REQUIRE(centers.size() == 4);
    CHECK(centers[2] == Cd(-1.0));
    CHECK(std::abs(centers[3] - Cd(0.0, 1.0)) <= 1e-12);

    PeriodDatum small = grz::period(affine_triple(0.3), 4, Route::series);
    CHECK(small.normalized_centers.empty());
}

TEST_CASE("post-composition leaves the operator unchanged") {
    Rigging rig = grz::validate_rigging({grz::affine_disk(0.0, 0.5), grz::affine_disk(4.0, 0.5)});
    Mobius shift = grz::make_mobius(1.0, Cd(1.0, 0.5), 0.0, 1.0);
    Mobius spin = grz::make_mobius(Cd(0.8, 0.3), 0.0, 0.0, 1.0);
    Mobius invert = grz::make_mobius(0.0, 1.0, 1.0, Cd(-10.0, -2.0));
    CHECK(grz::check_mobius_invariance(rig, shift, 8) <= 1e-8);
    CHECK(grz::check_mobius_invariance(rig, spin, 8) <= 1e-8);
    CHECK(grz::check_mobius_invariance(rig, invert, 8) <= 1e-8);
    CHECK(grz::check_mobius_invariance(rig, grz::mobius_compose(invert, shift), 8) <= 1e-8);
}

TEST_CASE("period is independent of the input chart") {
    std::vector<ConformalMap> maps = {grz::affine_disk(0.0, 0.4), grz::affine_disk(2.5, 0.4),
                                      grz::affine_disk(-2.5, 0.4),
                                      grz::affine_disk(Cd(0.0, 2.5), 0.4)};
    Rigging rig = grz::validate_rigging(maps);
    Mobius t = grz::make_mobius(Cd(0.8, 0.2), 3.0, 0.0, 1.0);
    PeriodDatum before = grz::period(rig, 8, Route::series);
    PeriodDatum after = grz::period(grz::post_compose_mobius(rig, t, 40), 8, Route::series);

    REQUIRE(after.normalized_centers.size() == before.normalized_centers.size());
    CHECK(std::abs(after.normalized_centers[0] - before.normalized_centers[0]) <= 1e-11);
    double worst = 0.0;
    for (size_t b = 0; b < before.grunsky.blocks.size(); ++b)
        worst = std::max(worst, (after.grunsky.blocks[b].m - before.grunsky.blocks[b].m)
                                    .cwiseAbs()
                                    .maxCoeff());
    CHECK(worst <= 1e-9);
}

TEST_CASE("jet recovery on a flat pair") {
    Rigging pair = grz::validate_rigging({grz::affine_disk(0.0, 1.0), grz::affine_disk(3.0, 1.0)});
    GrunskyOperator op = grz::assemble(pair, 4, Route::series);
    RecoveryReport report = grz::recover_jets(op, {Cd(0.0), Cd(3.0)}, &pair);
    REQUIRE(report.dprime.size() == 2);
    CHECK(std::abs(report.dprime[0] - Cd(1.0)) <= 1e-12);
    CHECK(std::abs(report.dprime[1] - Cd(1.0)) <= 1e-12);
    CHECK(std::abs(report.dsecond[0]) <= 1e-12);
    CHECK(std::abs(report.dsecond[1]) <= 1e-12);
    CHECK(std::abs(report.schwarzian_at_zero[0]) <= 1e-13);
    for (double r : report.dprime_residual) CHECK(r <= 1e-12);
    for (double r : report.dsecond_residual) CHECK(r <= 1e-12);
    for (double r : report.schwarzian_residual) CHECK(r <= 1e-13);
}

TEST_CASE("jet recovery sees curvature") {
    Rigging pair = grz::validate_rigging({grz::quadratic_map(0.0, 0.15), grz::affine_disk(4.0, 1.0)});
    GrunskyOperator op = grz::assemble(pair, 6, Route::series);
    RecoveryReport report = grz::recover_jets(op, {Cd(0.0), Cd(4.0)}, &pair);
    CHECK(std::abs(report.dprime[0] - Cd(1.0)) <= 1e-12);
    CHECK(std::abs(report.dsecond[0] - Cd(0.3)) <= 1e-12);
    CHECK(std::abs(report.dsecond[1]) <= 1e-12);
    CHECK(std::abs(report.schwarzian_at_zero[0] - Cd(-0.135)) <= 1e-12);
    CHECK(std::abs(report.schwarzian_at_zero[1]) <= 1e-13);
}

TEST_CASE("triple recovery splits the pairwise products") {
    Rigging rig = grz::validate_rigging({grz::affine_disk(0.0, 0.7), grz::affine_disk(2.5, 0.4),
                                         grz::quadratic_map(-2.5, 0.2)});
    GrunskyOperator op = grz::assemble(rig, 6, Route::series);
    RecoveryReport report = grz::recover_jets(op, {Cd(0.0), Cd(2.5), Cd(-2.5)}, &rig);
    CHECK(std::abs(report.dprime[0] - Cd(0.7)) <= 1e-12);
    CHECK(std::abs(report.dprime[1] - Cd(0.4)) <= 1e-12);
    CHECK(std::abs(report.dprime[2] - Cd(1.0)) <= 1e-12);
    CHECK(std::abs(report.dsecond[2] - Cd(0.4)) <= 1e-11);
    CHECK(std::abs(report.schwarzian_at_zero[2] - Cd(-0.24)) <= 1e-12);
    for (double r : report.dsecond_residual) CHECK(r <= 1e-11);
}

TEST_CASE("single map recovery reports the Schwarzian only") {
    Rigging single = grz::validate_rigging({grz::quadratic_map(Cd(0.0, 0.3), 0.25)});
    GrunskyOperator op = grz::assemble(single, 4, Route::series);
    RecoveryReport report = grz::recover_jets(op, {Cd(0.0, 0.3)}, &single);
    CHECK(report.dprime.size() == 1);
    CHECK(report.dprime[0] == Cd(1.0));
    CHECK(report.dsecond.empty());
    CHECK(std::abs(report.schwarzian_at_zero[0] - Cd(-0.375)) <= 1e-13);
    CHECK(report.schwarzian_residual[0] <= 1e-13);
}

TEST_CASE("recovery rejections") {
    Rigging rig = affine_triple(0.5);
    GrunskyOperator op = grz::assemble(rig, 4, Route::series);
    CHECK(code_of([&] { grz::recover_jets(op, {Cd(0.0), Cd(2.0)}); }) ==
          grz::Errc::invalid_argument);

    GrunskyOperator corrupted = op;
    corrupted.blocks[3].m(0, 0) += Cd(0.05);
    CHECK(code_of([&] { grz::recover_jets(corrupted, {Cd(0.0), Cd(2.0), Cd(-2.0)}); }) ==
          grz::Errc::inconsistent_products);

    GrunskyOperator shallow = grz::assemble(rig, 1, Route::series);
    CHECK(code_of([&] { grz::recover_jets(shallow, {Cd(0.0), Cd(2.0), Cd(-2.0)}); }) ==
          grz::Errc::invalid_argument);
}

TEST_CASE("normalized round trip recovers the jets") {
    std::vector<ConformalMap> maps = {grz::quadratic_map(0.0, 0.2), grz::affine_disk(4.0, 1.0),
                                      grz::affine_disk(-4.0, 1.2)};
    Rigging rig = grz::validate_rigging(maps);
    const int N = 12;
    PeriodDatum datum = grz::period(rig, N, Route::series);
    Rigging normalized = grz::normalize_rigging(rig, 2 * N + 4).first;
    RecoveryReport report =
        grz::recover_jets(datum.grunsky, grz::period_centers(datum), &normalized);
    for (double r : report.dprime_residual) CHECK(r <= 1e-9);
    for (double r : report.dsecond_residual) CHECK(r <= 1e-9);
    for (double r : report.schwarzian_residual) CHECK(r <= 1e-9);
}

TEST_CASE("scaling families keep diagonal data frozen") {
    Rigging single = grz::validate_rigging({grz::joukowski_ellipse(0.0, 0.3)});
    grz::PreSchwarzianFamily family =
        grz::family_from(single.maps[0], grz::Series({Cd(0.0)}), 0.5, 16);
    grz::ProbeResult probe = grz::holomorphy_probe(0, single, family, 1e-2, 6);
    CHECK(probe.residual <= 1e-10);
    CHECK(probe.scale > 0.0);
}

TEST_CASE("difference quotients agree and tighten quadratically") {
    Rigging pair = grz::validate_rigging({grz::quadratic_map(0.0, 0.2), grz::affine_disk(4.0, 1.0)});
    grz::PreSchwarzianFamily family =
        grz::family_from(pair.maps[0], grz::Series({Cd(0.0), Cd(1.0)}), 0.0, 16);
    grz::ProbeResult coarse = grz::holomorphy_probe(0, pair, family, 2e-3, 6);
    grz::ProbeResult fine = grz::holomorphy_probe(0, pair, family, 1e-3, 6);
    CHECK(coarse.residual <= 1e-6 * std::max(1.0, coarse.scale));
    CHECK(fine.residual > 0.0);
    double factor = coarse.residual / fine.residual;
    CHECK(factor >= 3.0);
    CHECK(factor <= 5.0);
}

TEST_CASE("probe revalidates the perturbed tuple") {
    Rigging pair = grz::validate_rigging({grz::affine_disk(0.0, 1.0), grz::affine_disk(2.2, 1.0)});
    grz::PreSchwarzianFamily family =
        grz::family_from(pair.maps[0], grz::Series({Cd(0.0)}), 50.0, 16);
    CHECK(code_of([&] { grz::holomorphy_probe(0, pair, family, 0.1, 4); }) ==
          grz::Errc::overlapping_images);

    CHECK(code_of([&] { grz::holomorphy_probe(2, pair, family, 1e-2, 4); }) ==
          grz::Errc::invalid_argument);
    CHECK(code_of([&] { grz::holomorphy_probe(0, pair, family, 0.0, 4); }) ==
          grz::Errc::invalid_argument);
}
