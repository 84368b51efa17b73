#include "oracles.hpp"

#include <deltadep/parser.hpp>

#include <gtest/gtest.h>

using namespace deltadep;

namespace {

AmbientPtr ambient(std::size_t m, std::size_t n) { return std::make_shared<const Ambient>(Ambient::indexed(m, n)); }

}  // namespace

TEST(Parser, HomogeneousExamplePolynomial) {
    auto a = ambient(1, 2);
    DiffPoly p = parse("y1 * d1 y0 - y0 * d1 y1 - y0*y1", a);
    DiffPoly y0 = DiffPoly::variable(a, 0);
    DiffPoly y1 = DiffPoly::variable(a, 1);
    DiffPoly dy0 = DiffPoly::coordinate(a, 0, MultiIndex{1});
    DiffPoly dy1 = DiffPoly::coordinate(a, 1, MultiIndex{1});
    EXPECT_EQ(p, y1 * dy0 - y0 * dy1 - y0 * y1);
    EXPECT_EQ(p.num_terms(), 3u);
    EXPECT_EQ(p.total_degree(), 2u);
}

TEST(Parser, Zero) {
    auto a = ambient(1, 1);
    EXPECT_TRUE(parse("0", a).is_zero());
    EXPECT_EQ(render(parse("0", a)), "0");
    EXPECT_EQ(render(DiffPoly(a)), "0");
}

TEST(Parser, PoweredCoordinatesAndFractions) {
    auto a = ambient(1, 1);
    DiffPoly p = parse("(d1 y0)^2 + 3/2 * d1^2 y0", a);
    ASSERT_EQ(p.num_terms(), 2u);
    std::vector<std::uint64_t> degrees;
    for (const auto& [mono, c] : p.terms()) degrees.push_back(mono.degree());
    EXPECT_EQ(degrees, (std::vector<std::uint64_t>{1, 2}));
    EXPECT_EQ(p.terms().begin()->second, Rational(3, 2));
    EXPECT_EQ(p, pow(DiffPoly::coordinate(a, 0, MultiIndex{1}), 2) + Rational(3, 2) * DiffPoly::coordinate(a, 0, MultiIndex{2}));
    // A caret after a bare coordinate binds to the coordinate, not the operator chain.
    EXPECT_EQ(parse("d1 y0^3", a), pow(DiffPoly::coordinate(a, 0, MultiIndex{1}), 3));
}

TEST(Parser, OperatorPrefixes) {
    auto a = ambient(2, 1);
    EXPECT_EQ(parse("d1^2 d2 y0", a), DiffPoly::coordinate(a, 0, MultiIndex{2, 1}));
    EXPECT_EQ(parse("d2 d1 d1 y0", a), DiffPoly::coordinate(a, 0, MultiIndex{2, 1}));
    EXPECT_EQ(render(parse("d2 d1^2 y0", a)), "d1^2 d2 y0");
}

TEST(Parser, WhitespaceIsInsignificant) {
    auto a = ambient(1, 2);
    EXPECT_EQ(parse("y1*d1 y0-y0*d1 y1", a), parse("  y1 *  d1   y0 -  y0 * d1 y1 ", a));
}

TEST(Parser, RenderCanonicalizes) {
    auto a = ambient(1, 1);
    EXPECT_EQ(render(parse("y0+y0", a)), "2*y0");
    EXPECT_EQ(render(parse("-y0 + 1/2", a)), "1/2 - y0");
    EXPECT_EQ(render(parse("2/4*(d1 y0)^2", a)), "1/2*(d1 y0)^2");
    EXPECT_EQ(render(parse("-3*y0^2", a)), "-3*y0^2");
}

TEST(Parser, Errors) {
    auto a = ambient(1, 1);
    try {
        parse("y0 + * y0", a);
        FAIL() << "expected a syntax error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position(), 5u);
    }
    try {
        parse("y0 +", a);
        FAIL() << "expected a syntax error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position(), 4u);
    }
    EXPECT_THROW(parse("z", a), ParseError);
    EXPECT_THROW(parse("d2 y0", a), ParseError);
    EXPECT_THROW(parse("d0 y0", a), ParseError);
    EXPECT_THROW(parse("(y0", a), ParseError);
    EXPECT_THROW(parse("1/0", a), ParseError);
    EXPECT_THROW(parse("", a), ParseError);
    EXPECT_THROW(parse("y0 $", a), ParseError);
}

TEST(Parser, PlainPolynomials) {
    Poly p = parse_poly("1 + x^2 - 3/2*x", 1);
    EXPECT_EQ(p, Poly::constant(1, 1) + Poly::monomial(MultiIndex{2}) - Rational(3, 2) * Poly::variable(1, 1));
    EXPECT_EQ(parse_poly("x1*x2 + x2", 2), Poly::monomial(MultiIndex{1, 1}) + Poly::variable(2, 2));
    EXPECT_THROW(parse_poly("d1 x", 1), ParseError);
    EXPECT_THROW(parse_poly("x3", 2), ParseError);
}

TEST(ParserProperties, RoundTripOnRandomCorpus) {
    std::mt19937_64 rng(2024);
    for (int k = 0; k < 500; ++k) {
        auto a = ambient(1 + k % 3, 3);
        DiffPoly p = oracle::random_diffpoly(rng, a, 0, 3, 4, 5);
        const std::string text = render(p);
        DiffPoly q = parse(text, a);
        ASSERT_EQ(q, p) << text;
        EXPECT_EQ(render(q), text);
    }
}

TEST(ParserProperties, RenderIsInjectiveOnCorpus) {
    std::mt19937_64 rng(99);
    auto a = ambient(2, 3);
    std::map<std::string, DiffPoly> seen;
    for (int k = 0; k < 300; ++k) {
        DiffPoly p = oracle::random_diffpoly(rng, a, 0, 2, 3, 3);
        auto [it, inserted] = seen.emplace(render(p), p);
        if (!inserted) {
            EXPECT_EQ(it->second, p);
        }
    }
}
