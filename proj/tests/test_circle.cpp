#include <gtest/gtest.h>

#include <psdo/circle.hpp>

using namespace psdo;

namespace
{

CircleFunction E(long k)
{
    return CircleFunction::mode(k);
}

CircleFunction E(std::string_view s)
{
    return CircleFunction::mode(s);
}

const PolyScalar I = PolyScalar::i();

} // namespace

TEST(Circle, Products)
{
    EXPECT_EQ(E(1) * E(-1), E(0));
    EXPECT_EQ(E(0), CircleFunction::constant(PolyScalar(1)));
    EXPECT_EQ(E("a") * E("b"), CircleFunction::mode(ModeVector::symbol("a") + ModeVector::symbol("b")));
    EXPECT_EQ((PolyScalar(2) * E(0) + E(1)) * E(1), PolyScalar(2) * E(1) + E(2));
}

TEST(Circle, Derivatives)
{
    PolyScalar m = var("m");
    EXPECT_EQ(fn_derive(E("m"), 1), I * m * E("m"));
    EXPECT_EQ(fn_derive(E(1), 3), -I * E(1));
    EXPECT_TRUE(fn_derive(E(0), 1).is_zero());
    // E_{m-1}: d/dx multiplies by i(m-1)
    auto v = ModeVector::symbol("m") + ModeVector::integer(-1);
    EXPECT_EQ(fn_derive(CircleFunction::mode(v), 1), I * (m - PolyScalar(1)) * CircleFunction::mode(v));
}

TEST(Circle, Integral)
{
    EXPECT_EQ(circle_integral(E(0)), PolyScalar(1));
    EXPECT_TRUE(circle_integral(E("m")).is_zero());
    EXPECT_EQ(circle_integral(E("m") * CircleFunction::mode(-ModeVector::symbol("m")) + PolyScalar(3) * E("m")),
              PolyScalar(1));
}

TEST(Circle, WittBracket)
{
    for (long m = -3; m <= 3; ++m) {
        for (long n = -3; n <= 3; ++n) {
            VectorField b = vect_bracket(VectorField::mode(m), VectorField::mode(n));
            EXPECT_EQ(b.component, I * PolyScalar(n - m) * E(m + n));
        }
    }
    VectorField la = VectorField::mode("a");
    EXPECT_TRUE(vect_bracket(la, la).component.is_zero());
    EXPECT_EQ(vect_bracket(VectorField::mode(0), VectorField::mode("b")).component, I * var("b") * E("b"));
}

TEST(Circle, LieDerivative)
{
    for (long n = -2; n <= 3; ++n) {
        TensorDensity a{n, E(1)};
        EXPECT_EQ(lie_derive(VectorField::mode(0), a), (TensorDensity{n, I * E(1)}));
    }
    TensorDensity one{1, E(0)};
    EXPECT_EQ(lie_derive(VectorField::mode("m"), one), (TensorDensity{1, I * var("m") * E("m")}));
}

TEST(Circle, LieActionIsRepresentation)
{
    VectorField x = VectorField::mode("a"), y = VectorField::mode("b");
    for (long n = -2; n <= 2; ++n) {
        TensorDensity t{n, E(3) + E("m")};
        TensorDensity lhs = lie_derive(vect_bracket(x, y), t);
        TensorDensity xy = lie_derive(x, lie_derive(y, t));
        TensorDensity yx = lie_derive(y, lie_derive(x, t));
        EXPECT_EQ(lhs.component, xy.component - yx.component) << "n = " << n;
    }
}

TEST(Circle, UnknownModeSymbol)
{
    EXPECT_THROW(ModeVector::symbol("z"), usage_error);
}
