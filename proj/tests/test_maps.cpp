#include <gtest/gtest.h>

#include <psdo/maps.hpp>
#include <psdo/suites.hpp>

using namespace psdo;

namespace
{

const PolyScalar I = PolyScalar::i();

PolyScalar q(long n, long d = 1)
{
    return PolyScalar(make_rational(n, d));
}

Symbol T(long mode, int degree, const PolyScalar &c = PolyScalar(1), int floor = kExact)
{
    return Symbol::term(c * CircleFunction::mode(mode), degree, floor);
}

void expect_suite_passes(const std::string &name)
{
    VerifyConfig cfg;
    cfg.samples = 20;
    cfg.suites = {name};
    for (const auto &r : run_verify(cfg)) {
        EXPECT_TRUE(r.passed()) << r.name << ": " << r.detail;
    }
}

} // namespace

TEST(AdX, Termwise)
{
    EXPECT_EQ(ad_x(T(2, 3)), T(2, 2, PolyScalar(-3)));
    EXPECT_TRUE(ad_x(T(5, 0)).is_zero());
    Symbol f = T(1, 1, PolyScalar(1), -4);
    EXPECT_EQ(ad_x(f).floor(), -5);
}

TEST(AdX, Leibniz)
{
    Symbol f = T(1, 1), g = T(1, 1);
    EXPECT_EQ(ad_x(compose(f, g)), compose(ad_x(f), g) + compose(f, ad_x(g)));
}

TEST(AdLogXi, CanonicalAtHOne)
{
    Symbol r = ad_logxi(T(1, 1), PolyScalar(1), -3);
    Symbol expected = T(1, 0, I) + T(1, -1, q(1, 2)) + T(1, -2, -I * q(1, 3)) + T(1, -3, q(-1, 4));
    EXPECT_EQ(r.floor(), -3);
    EXPECT_EQ(r, expected);
    EXPECT_TRUE(ad_logxi(T(0, 0), PolyScalar(1)).is_zero());
}

TEST(AdLogXi, HWeights)
{
    PolyScalar h = var("h");
    Symbol r = ad_logxi(T(1, 1), h, -2);
    EXPECT_EQ(r, T(1, 0, I * h) + T(1, -1, q(1, 2) * h.pow(2)) + T(1, -2, -I * q(1, 3) * h.pow(3)));
}

TEST(PhiNu, Binomial)
{
    PolyScalar nu = var("nu");
    EXPECT_EQ(aut_phi_nu(T(1, 1), nu), T(1, 1) + T(1, 0, nu));
    EXPECT_EQ(aut_phi_nu(T(3, 0), nu), T(3, 0));
    EXPECT_EQ(aut_phi_nu(T(1, 2), nu), T(1, 2) + T(1, 1, PolyScalar(2) * nu) + T(1, 0, nu.pow(2)));
}

TEST(PsiMu, Canonical)
{
    PolyScalar mu = var("mu");
    EXPECT_EQ(aut_psi_mu(Symbol::xi(), mu, PolyScalar(1)), Symbol::xi());
    Symbol r = aut_psi_mu(T(1, 1), mu, PolyScalar(1), -1);
    EXPECT_EQ(r, T(1, 1) + T(1, 0, I * mu) + T(1, -1, -q(1, 2) * mu * (mu - PolyScalar(1))));
    Symbol f = T(2, 1) + T(-1, -2);
    EXPECT_EQ(aut_psi_mu(f, PolyScalar(0), var("h")), f);
}

TEST(ExpAd, Basics)
{
    Symbol g = T(1, 1) + T(2, 0);
    EXPECT_EQ(exp_ad(Symbol(), g, 5), g);
    EXPECT_THROW(exp_ad(T(1, 1), g, 3), usage_error);
}

TEST(ExpAd, StabilizesBelowFloor)
{
    Symbol f = T(1, -1), g = T(2, 1);
    Symbol shallow = exp_ad(f, g, 4, PolyScalar(1), -6);
    Symbol deep = exp_ad(f, g, 12, PolyScalar(1), -6);
    int common = std::max(shallow.floor(), deep.floor());
    EXPECT_EQ(shallow.truncated(common), deep.truncated(common));
    EXPECT_EQ(deep.floor(), -6);
}

TEST(ExpAd, PreservesProduct)
{
    Symbol f = T(1, -1) + T(-2, -2);
    Symbol g = T(2, 1) + T(0, 0), k = T(-1, 1);
    int fl = -5;
    Symbol lhs = exp_ad(f, compose(g, k, fl), 12, PolyScalar(1), fl);
    Symbol rhs = compose(exp_ad(f, g, 12, PolyScalar(1), fl), exp_ad(f, k, 12, PolyScalar(1), fl), fl);
    int common = std::max(lhs.floor(), rhs.floor());
    EXPECT_LE(common, -2);
    EXPECT_EQ(lhs.truncated(common), rhs.truncated(common));
}

TEST(Maps, RandomizedSuite)
{
    expect_suite_passes("maps");
}
