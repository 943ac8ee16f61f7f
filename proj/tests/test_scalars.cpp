#include <gtest/gtest.h>

#include <psdo/deformations.hpp>
#include <psdo/scalars.hpp>

using namespace psdo;

namespace
{

PolyScalar q(long n, long d = 1)
{
    return PolyScalar(make_rational(n, d));
}

} // namespace

TEST(GaussianRational, ReducedAndComponentwise)
{
    GaussianRational z(make_rational(2, 4), make_rational(-3, 6));
    EXPECT_EQ(z.re(), make_rational(1, 2));
    EXPECT_EQ(z.im(), make_rational(-1, 2));
    EXPECT_EQ(GaussianRational::i() * GaussianRational::i(), GaussianRational(-1));
    EXPECT_EQ(z * z.inverse(), GaussianRational(1));
    EXPECT_THROW(GaussianRational().inverse(), usage_error);
}

TEST(PolyScalar, RingOps)
{
    PolyScalar h = var("h"), c1 = var("c1"), c2 = var("c2");
    EXPECT_EQ((h + c1) + (-h), c1);
    EXPECT_EQ((c1 + c2) * (c1 - c2), c1.pow(2) - c2.pow(2));
    EXPECT_EQ(PolyScalar::i() * PolyScalar::i(), PolyScalar(-1));
    EXPECT_TRUE((c1 - c1).is_zero());
}

TEST(PolyScalar, Canonical)
{
    PolyScalar a = var("c1") * var("c2") + var("h");
    PolyScalar b = var("h") + var("c2") * var("c1");
    EXPECT_EQ(a.to_string(), b.to_string());
    EXPECT_EQ(a.terms().size(), 2u);
    PolyScalar l = var("l");
    EXPECT_EQ((PolyScalar(-12) * l.pow(2) + PolyScalar(12) * l - PolyScalar(2)).to_string(), "-12*l^2+12*l-2");
}

TEST(PolyScalar, MismatchedRegistries)
{
    auto other = Registry::make({"x", "y"});
    PolyScalar x = PolyScalar::var("x", other);
    EXPECT_THROW(x + var("h"), usage_error);
    EXPECT_THROW(var("nope"), usage_error);
}

TEST(PolyScalar, Substitute)
{
    PolyScalar h = var("h"), c1 = var("c1"), c2 = var("c2");
    PolyScalar p = PolyScalar(2) * c1 * c2 * h.pow(3);
    EXPECT_TRUE(p.substitute({{"h", PolyScalar(0)}}).is_zero());
    PolyScalar lm = var("l") + var("mu");
    EXPECT_EQ(lm.substitute({{"l", h}, {"mu", PolyScalar(0)}}), h);
    // substitution is simultaneous
    PolyScalar swap = (var("l") - var("mu")).substitute({{"l", var("mu")}, {"mu", var("l")}});
    EXPECT_EQ(swap, var("mu") - var("l"));
}

TEST(PolyScalar, HQuarticAtOne)
{
    PolyScalar c1 = var("c1"), c2 = var("c2"), c3 = var("c3");
    PolyScalar hq = quartic_eval(c1, c2, c3, var("h"));
    PolyScalar at1 = hq.substitute({{"h", PolyScalar(1)}});
    // h = 1 form of the printed quartic, typed independently.
    PolyScalar at_one = PolyScalar(6) * c1.pow(3) * c3 - PolyScalar(3) * c1.pow(2) * c2.pow(2) +
                     PolyScalar(3) * c1.pow(3) * c2 - PolyScalar(18) * c1 * c2 * c3 + PolyScalar(8) * c2.pow(3) -
                     PolyScalar(5) * c1.pow(2) * c2 - PolyScalar(9) * c1.pow(2) * c3 - PolyScalar(6) * c1 * c2.pow(2) +
                     PolyScalar(9) * c3.pow(2) + PolyScalar(2) * c1 * c3 + PolyScalar(18) * c2 * c3 +
                     PolyScalar(8) * c2.pow(2) + PolyScalar(2) * c1 * c2;
    EXPECT_EQ(at1, at_one);
}

TEST(PolyScalar, Hbinom)
{
    PolyScalar mu = var("mu"), h = var("h");
    EXPECT_EQ(hbinom(mu, 0, h), PolyScalar(1));
    EXPECT_EQ(hbinom(mu, 2, h), q(1, 2) * mu * (mu - h));
    EXPECT_EQ(hbinom(PolyScalar(3), 2, PolyScalar(1)), PolyScalar(3));
    for (long n = 0; n < 8; ++n) {
        for (unsigned k = 0; k < 6; ++k) {
            EXPECT_EQ(hbinom(PolyScalar(n), k, PolyScalar(1)), PolyScalar(binomial(n, k)));
        }
    }
}

TEST(PolyScalar, DivisionAndPrimitive)
{
    PolyScalar c1 = var("c1"), c2 = var("c2");
    PolyScalar f = c1 + c2, g = c1 - PolyScalar(2) * c2;
    auto [quot, rem] = (f * g).divide(g);
    EXPECT_EQ(quot, f);
    EXPECT_TRUE(rem.is_zero());
    auto [prim, scale] = (PolyScalar(6) * c1 + PolyScalar(4) * c2).primitive_part();
    EXPECT_EQ(prim * PolyScalar(scale), PolyScalar(6) * c1 + PolyScalar(4) * c2);
}

TEST(PolyScalar, WeightedDegree)
{
    std::map<std::string, long> w{{"c1", 1}, {"c2", 2}, {"c3", 3}, {"h", 1}};
    auto degs = quartic_eval(var("c1"), var("c2"), var("c3"), var("h")).weighted_degrees(w);
    ASSERT_EQ(degs.size(), 1u);
    EXPECT_EQ(degs.front(), 6);
}
