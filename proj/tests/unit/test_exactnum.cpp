#include <doctest.h>

#include <cmath>

#include "support/gen_exact.hpp"
#include "tsalg/exactnum.hpp"

using namespace tsalg;

namespace {

Frequency one_freq(int q)
{
    return rational_frequency(q);
}

PhaseExponent theta_s2()
{
    return phase_of(atom_frequency("s2"));
}

} // namespace

TEST_CASE("parse_rational accepts integer, fraction, decimal and exponent forms")
{
    CHECK(parse_rational("12") == Rational(12));
    CHECK(parse_rational("-3/4") == Rational(-3, 4));
    CHECK(parse_rational("1.25") == Rational(5, 4));
    CHECK(parse_rational("2.5e-3") == Rational(1, 400));
    CHECK(parse_rational(".5") == Rational(1, 2));
    CHECK(parse_rational("6/4") == Rational(3, 2));
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational("abc"), Error);
    CHECK(parse_rational("1.") == Rational(1));
    CHECK_THROWS_AS(parse_rational("."), Error);
}

TEST_CASE("atom table validation")
{
    AtomTable t;
    CHECK(t.atoms().front().first == "ONE");
    CHECK(t.dilations().front().first == "UNIT");
    CHECK_THROWS_AS(t.add_atom("ONE", 2.0), Error);
    CHECK_THROWS_AS(t.add_atom("neg", -1.0), Error);
    CHECK_THROWS_AS(t.add_atom("inf", INFINITY), Error);
    CHECK_THROWS_AS(t.add_atom("1bad", 1.0), Error);
    t.add_atom("s2", std::sqrt(2.0));
    CHECK_THROWS_AS(t.add_dilation("s2", 1.0), Error);
    CHECK_THROWS_AS(t.atom_value("nope"), Error);
}

TEST_CASE("freq_scale_exp")
{
    AtomTable table = gen::standard_table();
    Frequency shifted = freq_scale_exp(one_freq(1), unit_dilation(1));
    CHECK(shifted == atom_frequency("ONE", 1, unit_dilation(1)));
    CHECK(freq_scale_exp(Frequency{}, unit_dilation(1)).empty());

    Frequency f = atom_frequency("s2", 2) + one_freq(1);
    // Oracle: (2*sqrt(2)+1)/e evaluated independently, frozen to 10 digits.
    CHECK(numeric(freq_scale_exp(f, unit_dilation(-1)), table) == doctest::Approx(1.4083996312).epsilon(1e-10));
}

TEST_CASE("freq_scale_exp composes additively")
{
    gen::Rng rng(11);
    for (int i = 0; i < 300; ++i) {
        Frequency f = gen::frequency(rng, 3);
        DilationIndex s = gen::dilation(rng);
        DilationIndex t = gen::dilation(rng);
        CHECK(freq_scale_exp(freq_scale_exp(f, s), t) == freq_scale_exp(f, s + t));
    }
}

TEST_CASE("freq_sign")
{
    AtomTable table = gen::standard_table();
    CHECK(freq_sign(one_freq(-3), table) == Sign::negative);
    CHECK(freq_sign(Frequency{}, table) == Sign::zero);
    CHECK(freq_sign(atom_frequency("s2") - one_freq(1), table, 1e-9) == Sign::positive);
    // 1.4142135623... - 14142/10000 ≈ 1.36e-5: inside a 1e-4 guard.
    Frequency tiny = atom_frequency("s2") - rational_frequency(Rational(14142, 10000));
    CHECK_THROWS_AS(freq_sign(tiny, table, 1e-4), Error);
    CHECK(freq_sign(tiny, table, 1e-9) == Sign::positive);
    CHECK_THROWS_AS(freq_sign(one_freq(1), table, 0.0), Error);
}

TEST_CASE("dilation_sign is exact on UNIT")
{
    AtomTable table;
    CHECK(dilation_sign(unit_dilation(Rational(-1, 1000000000)), table) == Sign::negative);
    CHECK(dilation_sign(DilationIndex{}, table) == Sign::zero);
    table.add_dilation("lg2", std::log(2.0));
    DilationIndex d = DilationIndex::single("lg2", 1) - unit_dilation(1);
    CHECK(dilation_sign(d, table) == Sign::negative);
}

TEST_CASE("phase key canonical form identifies scaled products")
{
    // (e^t λ)(e^{-t} μ) = λμ
    Frequency lam = atom_frequency("s2");
    Frequency mu = atom_frequency("s3");
    DilationIndex t = unit_dilation(1);
    CHECK(phase_product(freq_scale_exp(lam, t), freq_scale_exp(mu, -t)) == phase_product(lam, mu));
    CHECK(phase_product(one_freq(2), one_freq(3)) == rational_phase(6));
    CHECK(phase_product(lam, mu) == phase_product(mu, lam));
}

TEST_CASE("phase_less is a group order")
{
    gen::Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        PhaseExponent a = gen::phase(rng);
        PhaseExponent b = gen::phase(rng);
        PhaseExponent c = gen::phase(rng);
        CHECK(phase_less(a, b) == phase_less(a + c, b + c));
        if (a != b)
            CHECK(phase_less(a, b) != phase_less(b, a));
        CHECK_FALSE(phase_less(a, a));
    }
}

TEST_CASE("scalar_arith examples")
{
    PhaseExponent th = theta_s2();
    Scalar e = Scalar::phase(th);
    CHECK(scalar_arith(e, Scalar::phase(-th), ScalarOp::mul) == Scalar(1));
    Scalar one_minus = Scalar(1) - e;
    Scalar q = scalar_arith(one_minus, one_minus, ScalarOp::div);
    CHECK(q == Scalar(1));
    CHECK(q.is_polynomial());

    Scalar x = Scalar::phase(th, GaussQ(2)) + Scalar(GaussQ(0, 1));
    Scalar expected = Scalar::phase(-th, GaussQ(2)) - Scalar(GaussQ(0, 1));
    CHECK(scalar_arith(x, Scalar(), ScalarOp::conj) == expected);
    CHECK(scalar_arith(x, Scalar(), ScalarOp::neg) + x == Scalar(0));
    CHECK_THROWS_AS(scalar_arith(x, Scalar(0), ScalarOp::div), Error);
}

TEST_CASE("scalar canonical form divides out exact factors")
{
    PhaseExponent th = theta_s2();
    Scalar e = Scalar::phase(th);
    // (1 - e^{2iθ}) / (1 - e^{iθ}) = 1 + e^{iθ}
    Scalar q = (Scalar(1) - e * e) / (Scalar(1) - e);
    CHECK(q.is_polynomial());
    CHECK(q == Scalar(1) + e);
    // Non-divisible quotient stays a fraction with least denominator term 1.
    Scalar f = Scalar(1) / (Scalar(1) - e);
    CHECK_FALSE(f.is_polynomial());
    CHECK(f * (Scalar(1) - e) == Scalar(1));
}

TEST_CASE("scalar_numeric examples")
{
    AtomTable table = gen::standard_table();
    CHECK(scalar_numeric(Scalar(1), table) == std::complex<double>(1, 0));

    Scalar e1 = Scalar::phase(phase_product(one_freq(1), one_freq(1)));
    auto v = scalar_numeric(e1, table);
    CHECK(v.real() == doctest::Approx(0.5403023059).epsilon(1e-10));
    CHECK(v.imag() == doctest::Approx(0.8414709848).epsilon(1e-10));

    // Oracle: 1/(1 - e^{i}) = 1/2 + i·sin(1)/(2 - 2cos(1)), frozen.
    auto w = scalar_numeric(Scalar(1) / (Scalar(1) - e1), table);
    CHECK(w.real() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(w.imag() == doctest::Approx(0.9152438609).epsilon(1e-10));
}

TEST_CASE("field axioms on random scalars")
{
    gen::Rng rng(2024);
    for (int i = 0; i < 150; ++i) {
        Scalar a = gen::scalar(rng);
        Scalar b = gen::scalar(rng);
        Scalar c = gen::scalar(rng);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == Scalar(0));
        CHECK((a / b) * b == a);
        CHECK((a * b).conj() == a.conj() * b.conj());
        CHECK(a.conj().conj() == a);
    }
}

TEST_CASE("unit phases evaluate to modulus one")
{
    AtomTable table = gen::standard_table();
    gen::Rng rng(7);
    for (int i = 0; i < 300; ++i) {
        auto v = scalar_numeric(Scalar::phase(gen::phase(rng)), table);
        CHECK(std::abs(std::abs(v) - 1.0) < 1e-12);
    }
}

TEST_CASE("scalar_numeric is a ring homomorphism")
{
    AtomTable table = gen::standard_table();
    gen::Rng rng(8);
    auto rel = [](std::complex<double> x, std::complex<double> y) {
        return std::abs(x - y) / std::max(1.0, std::abs(y));
    };
    for (int i = 0; i < 300; ++i) {
        Scalar a = gen::scalar(rng);
        Scalar b = gen::scalar(rng);
        auto na = scalar_numeric(a, table);
        auto nb = scalar_numeric(b, table);
        CHECK(rel(scalar_numeric(a + b, table), na + nb) < 1e-10);
        CHECK(rel(scalar_numeric(a * b, table), na * nb) < 1e-10);
        CHECK(rel(scalar_numeric(a.conj(), table), std::conj(na)) < 1e-10);
    }
}

TEST_CASE("collision warnings flag near-rational atom ratios")
{
    AtomTable table;
    table.add_atom("e", std::exp(1.0));
    table.add_atom("two", 2.0);
    table.add_atom("s2", std::sqrt(2.0));
    std::vector<FrequencyAtom> clean{{"ONE", {}}, {"s2", {}}};
    CHECK(collision_warnings(table, clean).empty());
    std::vector<FrequencyAtom> bad{{"ONE", {}}, {"two", {}}};
    CHECK(collision_warnings(table, bad).size() == 1);
    // e = (ONE, UNIT) numerically
    std::vector<FrequencyAtom> scaled{{"ONE", unit_dilation(1)}, {"e", {}}};
    CHECK(collision_warnings(table, scaled).size() == 1);
}
