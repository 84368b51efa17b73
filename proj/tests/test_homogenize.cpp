#include "oracles.hpp"

#include <deltadep/homogenize.hpp>
#include <deltadep/parser.hpp>

#include <gtest/gtest.h>

using namespace deltadep;

namespace {

AmbientPtr ambient(std::size_t m, std::size_t n) { return std::make_shared<const Ambient>(Ambient::indexed(m, n)); }

DiffPoly set_y0_to_one(const DiffPoly& p) {
    const auto& amb = p.ambient_ptr();
    std::vector<std::optional<DiffPoly>> images{DiffPoly::constant(amb, 1)};
    for (std::size_t i = 1; i < amb->variables.size(); ++i) images.emplace_back(DiffPoly::variable(amb, i));
    return substitute(p, images, amb);
}

}  // namespace

TEST(DeltaHomogeneous, WorkedExamples) {
    auto a = ambient(1, 2);
    EXPECT_EQ(is_delta_homogeneous(parse("y1 * d1 y0 - y0 * d1 y1 - y0*y1", a)), std::optional<std::uint64_t>(2));
    auto b = ambient(1, 1);
    EXPECT_EQ(is_delta_homogeneous(parse("d1 y0 - y0", b)), std::nullopt);
    EXPECT_EQ(is_delta_homogeneous(parse("y0^2", b)), std::optional<std::uint64_t>(2));
}

TEST(DeltaHomogeneous, OrdinaryHomogeneityIsNotEnough) {
    auto a = ambient(1, 1);
    // Homogeneous of degree 2 in the coordinates, but δ(t y)^2 picks up δt terms.
    EXPECT_EQ(is_delta_homogeneous(parse("(d1 y0)^2", a)), std::nullopt);
    EXPECT_EQ(is_delta_homogeneous(parse("y0 * d1 y0", a)), std::nullopt);
    EXPECT_EQ(is_delta_homogeneous(parse("y0 + y0^2", a)), std::nullopt);
}

TEST(DeltaHomogeneous, RejectsConstants) {
    auto a = ambient(1, 1);
    EXPECT_THROW(is_delta_homogeneous(DiffPoly(a)), std::invalid_argument);
    EXPECT_THROW(is_delta_homogeneous(DiffPoly::constant(a, 3)), std::invalid_argument);
}

TEST(Homogenize, QuotientRule) {
    auto a = ambient(1, 2);
    auto r = homogenize(parse("d1 y1", a));
    EXPECT_EQ(r.degree, 2u);
    EXPECT_EQ(r.polynomial, parse("y0 * d1 y1 - y1 * d1 y0", a));
}

TEST(Homogenize, AlreadyHomogeneous) {
    auto a = ambient(1, 2);
    auto r = homogenize(parse("y1^2", a));
    EXPECT_EQ(r.degree, 2u);
    EXPECT_EQ(r.polynomial, parse("y1^2", a));
}

TEST(Homogenize, MixedDegrees) {
    auto a = ambient(1, 2);
    auto r = homogenize(parse("d1 y1 - y1^2", a));
    EXPECT_EQ(r.degree, 2u);
    EXPECT_EQ(r.polynomial, parse("y0 * d1 y1 - y1 * d1 y0 - y1^2", a));

    auto lin = homogenize(parse("y1 + 1", a));
    EXPECT_EQ(lin.degree, 1u);
    EXPECT_EQ(lin.polynomial, parse("y1 + y0", a));
}

TEST(Homogenize, SecondOrderQuotientRule) {
    // δ²(y1/y0) = (y0²δ²y1 − 2y0 δy0 δy1 − y0 y1 δ²y0 + 2 y1 (δy0)²) / y0³.
    auto a = ambient(1, 2);
    auto r = homogenize(parse("d1^2 y1", a));
    EXPECT_EQ(r.degree, 3u);
    EXPECT_EQ(r.polynomial, parse("y0^2 * d1^2 y1 - 2*y0 * d1 y0 * d1 y1 - y0*y1*d1^2 y0 + 2*y1*(d1 y0)^2", a));
}

TEST(Homogenize, Preconditions) {
    auto a = ambient(1, 2);
    EXPECT_THROW(homogenize(DiffPoly(a)), std::invalid_argument);
    EXPECT_THROW(homogenize(DiffPoly::constant(a, 2)), std::invalid_argument);
    EXPECT_THROW(homogenize(parse("y0 + y1", a)), std::invalid_argument);
}

TEST(HomogenizeProperties, RoundTripOnRandomCorpus) {
    std::mt19937_64 rng(314);
    int done = 0;
    while (done < 50) {
        const std::size_t m = 1 + done % 2;
        const std::size_t n = 1 + done % 3;
        auto a = ambient(m, n + 1);
        DiffPoly f = oracle::random_diffpoly(rng, a, 1, 2, 3);
        if (f.is_constant()) continue;
        auto r = homogenize(f);
        EXPECT_EQ(is_delta_homogeneous(r.polynomial), std::optional<std::uint64_t>(r.degree)) << render(f);
        EXPECT_EQ(set_y0_to_one(r.polynomial), f) << render(f);
        ++done;
    }
}

TEST(HomogenizeProperties, MultiplyingByY0RaisesTheDegree) {
    std::mt19937_64 rng(271);
    for (int k = 0; k < 30; ++k) {
        auto a = ambient(1 + k % 2, 3);
        DiffPoly f = oracle::random_diffpoly(rng, a, 1, 2, 3);
        if (f.is_constant()) continue;
        auto r = homogenize(f);
        auto y0 = DiffPoly::variable(a, 0);
        EXPECT_EQ(is_delta_homogeneous(y0 * r.polynomial), std::optional<std::uint64_t>(r.degree + 1));
    }
}

TEST(HomogenizeProperties, ScalingInvariance) {
    std::mt19937_64 rng(161);
    const Rational scales[] = {Rational(-1), Rational(7, 3), Rational(1, 5)};
    for (int k = 0; k < 30; ++k) {
        auto a = ambient(1 + k % 2, 3);
        DiffPoly f = oracle::random_diffpoly(rng, a, 0, 2, 3);
        if (f.is_constant()) continue;
        auto base = is_delta_homogeneous(f);
        auto h = homogenize(oracle::random_diffpoly(rng, a, 1, 1, 2) + DiffPoly::variable(a, 1)).polynomial;
        auto hbase = is_delta_homogeneous(h);
        ASSERT_TRUE(hbase.has_value());
        for (const auto& s : scales) {
            EXPECT_EQ(is_delta_homogeneous(s * f), base);
            EXPECT_EQ(is_delta_homogeneous(s * h), hbase);
        }
    }
}
