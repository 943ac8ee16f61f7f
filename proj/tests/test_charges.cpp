#include <gtest/gtest.h>

#include <psdo/charges.hpp>

using namespace psdo;

namespace
{

PolyScalar q(long n, long d = 1)
{
    return PolyScalar(make_rational(n, d));
}

PolyScalar bernoulli(const PolyScalar &l)
{
    return PolyScalar(-12) * l.pow(2) + PolyScalar(12) * l - PolyScalar(2);
}

} // namespace

TEST(ChargeVect, Canonical)
{
    ChargeReport r = restrict_charge_vect(DeformAnsatz::canonical(), PolyScalar(1));
    EXPECT_EQ(r.virasoro, PolyScalar(-2));
    EXPECT_THROW(restrict_charge_vect(DeformAnsatz::canonical(), PolyScalar(1), -3), accuracy_error);
}

TEST(ChargeVect, UniversalAtHOne)
{
    PolyScalar l = var("l");
    ChargeReport r = restrict_charge_vect(universal_deformation(l, var("mu"), var("nu"), PolyScalar(1)), PolyScalar(1));
    EXPECT_EQ(r.virasoro, bernoulli(l));
    EXPECT_FALSE(r.virasoro.depends_on("mu"));
    EXPECT_FALSE(r.virasoro.depends_on("nu"));
    ChargeReport half = restrict_charge_vect(universal_deformation(q(1, 2), var("mu"), var("nu"), PolyScalar(1)),
                                             PolyScalar(1));
    EXPECT_EQ(half.virasoro, PolyScalar(1));
}

TEST(ChargeVect, SymbolicH)
{
    // By hand for the canonical embedding: the residue picks up h^3 from both the
    // h-weighted derivation and the h-product, so the charge is -2 h^3.
    PolyScalar h = var("h");
    EXPECT_EQ(restrict_charge_vect(DeformAnsatz::canonical(), h).virasoro, PolyScalar(-2) * h.pow(3));
    PolyScalar l = var("l");
    PolyScalar v = restrict_charge_vect(universal_deformation(l, var("mu"), var("nu"), h), h).virasoro;
    EXPECT_EQ(v.substitute({{"h", PolyScalar(1)}}), bernoulli(l));
    EXPECT_NE(v, printed_charge_polynomial(l, h));
    EXPECT_EQ(printed_charge_polynomial(l, PolyScalar(1)), bernoulli(l));
}

TEST(ChargeVect, ConjugationInvariance)
{
    PolyScalar l = var("l");
    DeformAnsatz a = universal_deformation(l, PolyScalar(2), PolyScalar(0), PolyScalar(1));
    Symbol f = Symbol::term(CircleFunction::mode(1), -1) + Symbol::term(CircleFunction::constant(PolyScalar(3)), -2);
    Cochain1 conj = conjugate_equivalence(a.cochain(), f, 8);
    EXPECT_EQ(restrict_charge_vect(conj, PolyScalar(1)).virasoro, restrict_charge_vect(a, PolyScalar(1)).virasoro);
}

TEST(ChargeSemidirect, Origin)
{
    ChargeReport r = restrict_charge_semidirect(PolyScalar(0), PolyScalar(0), PolyScalar(0), PolyScalar(1));
    EXPECT_EQ(r.virasoro, PolyScalar(-2));
    EXPECT_EQ(r.tilde, q(-1, 2));
    EXPECT_EQ(r.tildetilde, q(1, 2));
    ASSERT_EQ(r.notes.size(), 1u);
}

TEST(ChargeSemidirect, Scaled)
{
    PolyScalar l = var("l"), s = var("s");
    ChargeReport r = restrict_charge_semidirect_scaled(l, s, var("nu"), PolyScalar(1));
    EXPECT_EQ(r.virasoro, bernoulli(l));
    EXPECT_EQ(r.tilde, s * (l - q(1, 2)));
    EXPECT_EQ(r.tildetilde, q(1, 2) * s.pow(2));
    ChargeReport root = restrict_charge_semidirect(q(1, 2), var("mu"), var("nu"), PolyScalar(1));
    EXPECT_TRUE(root.tilde.is_zero());
    ChargeReport named = restrict_charge_semidirect(l, var("mu"), var("nu"), PolyScalar(1));
    EXPECT_EQ(named.scaling, var("mu") + PolyScalar(1));
}

TEST(Extraction, CoboundaryPartIsDiscarded)
{
    PolyScalar m = var("m");
    PolyScalar w = PolyScalar::i() * m.pow(3) * var("l");
    auto a = detail::split_mode_powers(w, {1, 3}, "test");
    auto b = detail::split_mode_powers(w + PolyScalar(7) * var("c1") * m, {1, 3}, "test");
    EXPECT_EQ(detail::part(a, 3), detail::part(b, 3));
    EXPECT_THROW(detail::split_mode_powers(w + m.pow(2), {1, 3}, "test"), extraction_error);
    EXPECT_THROW(detail::split_mode_powers(m.pow(5), {1, 3}, "test"), extraction_error);
}
