#include <doctest.h>

#include <cmath>

#include "support/gen_algebra.hpp"
#include "tsalg/characters.hpp"
#include "tsalg/ideals.hpp"

using namespace tsalg;

namespace {

Frequency q1(long n)
{
    return rational_frequency(n);
}

Element commutator(const Element& x, const Element& y)
{
    return mul(x, y) - mul(y, x);
}

Element analytic_function(gen::Rng& rng, int terms = 4)
{
    Element f;
    for (int j = 0; j < terms; ++j)
        f += M(gen::nonnegative_frequency(rng)).scaled(gen::scalar(rng));
    return f;
}

} // namespace

TEST_CASE("membership examples")
{
    const AtomTable table = gen::standard_table();
    const Element m1d1 = mul(M(q1(1)), D(q1(1)));
    const Element m1v1 = mul(M(q1(1)), V(unit_dilation(1)));
    const Element m2v1 = mul(M(q1(2)), V(unit_dilation(1)));
    CHECK(in_ideal(m1d1, IdealId::cp(), table));
    CHECK_FALSE(in_ideal(M(q1(1)), IdealId::cp(), table));
    CHECK_FALSE(in_ideal(m1v1, IdealId::cphg(), table));
    CHECK(in_ideal(m1v1 - m2v1, IdealId::cphg(), table));
    CHECK_FALSE(in_ideal(V(unit_dilation(1)), IdealId::cphg(), table));

    CHECK(in_ideal(M(q1(1)) - M(q1(2)), IdealId::i0(), table));
    CHECK_FALSE(in_ideal(M(q1(1)), IdealId::i0(), table));
    CHECK_FALSE(in_ideal(M(q1(1)) - identity_element(), IdealId::i0(), table));
    CHECK(in_ideal(M(q1(1)) - M(q1(2)), IdealId::jt(unit_dilation(1)), table));
    CHECK_THROWS_AS(in_ideal(M(q1(1)), IdealId::jt(unit_dilation(0)), table), Error);

    try {
        in_ideal(M(q1(-1)), IdealId::cp(), table);
        FAIL("expected NotInAmbient");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotInAmbient);
    }
    CHECK_THROWS_AS(in_ideal(m1v1, IdealId::cp(), table), Error);
    CHECK_THROWS_AS(in_ideal(D(q1(1)), IdealId::i0(), table), Error);
    CHECK_THROWS_AS(in_ideal(V(unit_dilation(-1)), IdealId::cphg(), table), Error);
}

TEST_CASE("commutators lie in the commutator ideals")
{
    const AtomTable table = gen::standard_table();
    gen::Rng rng(404);
    for (int i = 0; i < 200; ++i) {
        const Element x = gen::element(rng, gen::Domain::ap, 4);
        const Element y = gen::element(rng, gen::Domain::ap, 4);
        CHECK(in_ideal(commutator(x, y), IdealId::cp(), table));
        const Element u = gen::element(rng, gen::Domain::aph, 4);
        const Element v = gen::element(rng, gen::Domain::aph, 4);
        CHECK(in_ideal(commutator(u, v), IdealId::cphg(), table));
    }
}

TEST_CASE("ideals absorb products on both sides")
{
    const AtomTable table = gen::standard_table();
    gen::Rng rng(405);
    for (int i = 0; i < 100; ++i) {
        const Element a = gen::element(rng, gen::Domain::ap, 3);
        const Element b = gen::element(rng, gen::Domain::ap, 3);
        const Element x = commutator(gen::element(rng, gen::Domain::ap, 3), gen::element(rng, gen::Domain::ap, 3));
        CHECK(in_ideal(mul(mul(a, x), b), IdealId::cp(), table));

        const Element c = gen::element(rng, gen::Domain::aph, 3);
        const Element d = gen::element(rng, gen::Domain::aph, 3);
        const Element y = commutator(gen::element(rng, gen::Domain::aph, 3), gen::element(rng, gen::Domain::aph, 3));
        CHECK(in_ideal(mul(mul(c, y), d), IdealId::cphg(), table));
    }
}

TEST_CASE("quotient by the commutator ideal")
{
    const AtomTable table = gen::standard_table();
    gen::Rng rng(406);
    const auto chi_inf = TripleCharacter::chi_inf(GroupMode::Z);
    for (int i = 0; i < 200; ++i) {
        const Element x = gen::element(rng, gen::Domain::ap, 6);
        const Scalar c00 = *eval_character_exact(chi_inf, x, table);
        const Element r = x - expect_E(x, {}) - expect_Z(x, {}) + scalar_element(c00);
        CHECK(in_ideal(r, IdealId::cp(), table));
    }
}

TEST_CASE("characters detect membership in Cp")
{
    const AtomTable table = gen::standard_table();
    gen::Rng rng(407);
    int members = 0;
    for (int i = 0; i < 300; ++i) {
        Element x = gen::element(rng, gen::Domain::ap, 5);
        if (gen::coin(rng))
            x = x - expect_E(x, {}) - expect_Z(x, {}) +
                scalar_element(*eval_character_exact(TripleCharacter::chi_inf(GroupMode::Z), x, table));
        const bool member = in_ideal(x, IdealId::cp(), table);
        members += member;
        // D1/D2 at y = 0 (Bohr characters) and at Infinity
        bool all_vanish = true;
        for (int j = 0; j < 6 && all_vanish; ++j) {
            const BohrCharacter c = gen::bohr_character(rng);
            for (const auto& chi : {TripleCharacter::d1(APPoint::finite(c, 0)), TripleCharacter::d2(APPoint::finite(c, 0)),
                                    TripleCharacter::d1(APPoint::at_infinity())}) {
                if (!eval_character_exact(chi, x, table)->is_zero())
                    all_vanish = false;
            }
        }
        if (member)
            CHECK(all_vanish);
        else
            CHECK_FALSE(all_vanish);
    }
    CHECK(members > 50);
}

TEST_CASE("I0 agrees with evaluation at 0 and at infinity")
{
    const AtomTable table = gen::standard_table();
    gen::Rng rng(408);
    int members = 0;
    for (int i = 0; i < 300; ++i) {
        Element f = analytic_function(rng);
        if (gen::coin(rng)) {
            // force c₀ = 0 and f(0) = 0
            const Scalar* c0 = f.find(TermKey{});
            if (c0 != nullptr)
                f -= scalar_element(*c0);
            Scalar total = 0;
            for (const auto& [k, c] : f)
                total += c;
            f -= M(q1(7)).scaled(total);
        }
        const bool member = in_ideal(f, IdealId::i0(), table);
        members += member;
        const bool evals_vanish = std::abs(aap_eval(f, APPoint::x1(), table)) < 1e-9 &&
                                  std::abs(aap_eval(f, APPoint::at_infinity(), table)) < 1e-9;
        CHECK(member == evals_vanish);
    }
    CHECK(members > 50);
}

TEST_CASE("commutator certificates")
{
    const AtomTable table = gen::standard_table();
    const Certificate c = commutator_certificate(q1(1), q1(1), table);
    CHECK(verify_certificate(c, table));
    CHECK(c.target == mul(M(q1(1)), D(q1(1))));
    CHECK(in_ideal(c.target, IdealId::cp(), table));
    CHECK(certificate_residual(c, table) == 0);

    const Certificate c23 = commutator_certificate(q1(2), q1(3), table);
    CHECK(verify_certificate(c23, table));

    gen::Rng rng(409);
    for (int i = 0; i < 50; ++i) {
        Frequency lam, s;
        while (lam.empty())
            lam = gen::nonnegative_frequency(rng);
        while (s.empty())
            s = gen::nonnegative_frequency(rng);
        const Certificate ci = commutator_certificate(lam, s, table);
        CHECK(verify_certificate(ci, table));
        CHECK(in_ideal(ci.target, IdealId::cp(), table));
    }

    Certificate tampered = c;
    tampered.f = tampered.f.scaled(Scalar(Rational(1001, 1000)));
    CHECK_FALSE(verify_certificate(tampered, table));

    try {
        commutator_certificate(q1(0), q1(1), table);
        FAIL("expected DegeneratePhase");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DegeneratePhase);
    }
    CHECK_THROWS_AS(commutator_certificate(q1(-1), q1(1), table), Error);
}

TEST_CASE("J_t telescoping certificates")
{
    const AtomTable table = gen::standard_table();
    const double t = 0.7;

    const Certificate one = jt_reduce(1.0, t);
    CHECK(one.steps.empty());
    CHECK(verify_certificate(one, table));

    const Certificate et = jt_reduce(std::exp(t), t);
    REQUIRE(et.steps.size() == 1);
    CHECK(et.steps[0].coeff == Complex(-1));
    CHECK(et.steps[0].kappa == 0);
    CHECK(std::fabs(et.steps[0].mu - 1) < 1e-12);
    CHECK(verify_certificate(et, table));

    const double rho = 1.5;
    const Certificate base = jt_reduce(rho, t);
    REQUIRE(base.steps.size() == 1);
    const double lp = (rho - 1) / (std::exp(t) - 1);
    CHECK(std::fabs(base.steps[0].mu - lp) < 1e-12);
    CHECK(std::fabs(base.steps[0].kappa - (1 - lp)) < 1e-12);
    CHECK(base.steps[0].coeff == Complex(-1));
    CHECK(verify_certificate(base, table));

    gen::Rng rng(410);
    for (int i = 0; i < 100; ++i) {
        const double lam = std::exp(gen::uniform_real(rng, -4, 4));
        const double tt = gen::uniform_real(rng, 0.1, 2);
        Certificate c = jt_reduce(lam, tt);
        INFO("lam=" << lam << " t=" << tt);
        CHECK(verify_certificate(c, table));
        if (!c.steps.empty()) {
            c.steps.front().coeff += 1e-3;
            CHECK_FALSE(verify_certificate(c, table));
        }
    }
    CHECK_THROWS_AS(jt_reduce(-1, t), Error);
    CHECK(describe(base, table).find("residual") != std::string::npos);
}
