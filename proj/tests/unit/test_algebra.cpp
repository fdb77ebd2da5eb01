#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "support/gen_algebra.hpp"
#include "tsalg/algebra.hpp"

using namespace tsalg;

namespace {

Frequency q(int v)
{
    return rational_frequency(v);
}

Frequency e_scaled(int v, int t)
{
    return atom_frequency("ONE", v, unit_dilation(t));
}

Element monomial(const Scalar& c, const Frequency& lam, const Frequency& mu, const DilationIndex& t)
{
    return Element::single(TermKey{lam, mu, t}, c);
}

Scalar phase(const PhaseExponent& th)
{
    return Scalar::phase(th);
}

// |x| entries as a sorted multiset of squared moduli.
std::vector<Rational> sorted_moduli(const Element& x)
{
    auto m = exact_squared_moduli(x);
    REQUIRE(m.has_value());
    std::sort(m->begin(), m->end());
    return *m;
}

bool is_submultiset(std::vector<Rational> small, std::vector<Rational> big)
{
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

} // namespace

TEST_CASE("normalize_word examples")
{
    {
        const Letter w[] = {Letter::d(q(1)), Letter::m(q(1))};
        Monomial m = normalize_word(w);
        CHECK(m.to_element() == monomial(phase(-rational_phase(1)), q(1), q(1), {}));
    }
    {
        Monomial m = normalize_word({});
        CHECK(m.to_element() == identity_element());
    }
    {
        const Letter w[] = {Letter::v(unit_dilation(1)), Letter::m(q(1)), Letter::d(q(1)), Letter::v(unit_dilation(-1))};
        Monomial m = normalize_word(w);
        CHECK(m.to_element() == monomial(1, e_scaled(1, 1), e_scaled(1, -1), {}));
    }
}

TEST_CASE("normalize_word is confluent under prefix normalization")
{
    gen::Rng rng(101);
    for (int i = 0; i < 300; ++i) {
        auto w1 = gen::word(rng, 4);
        auto w2 = gen::word(rng, 4);
        std::vector<Letter> whole = w1;
        whole.insert(whole.end(), w2.begin(), w2.end());

        Monomial head = normalize_word(w1);
        std::vector<Letter> staged{Letter::scalar(head.coeff), Letter::m(head.lam), Letter::d(head.mu),
                                   Letter::v(head.t)};
        staged.insert(staged.end(), w2.begin(), w2.end());
        CHECK(normalize_word(whole).to_element() == normalize_word(staged).to_element());
    }
}

TEST_CASE("mul examples")
{
    Element x = monomial(1, q(1), q(1), unit_dilation(1));
    Element expected = monomial(phase(-phase_product(e_scaled(1, 1), q(1))), q(1) + e_scaled(1, 1),
                                q(1) + e_scaled(1, -1), unit_dilation(2));
    CHECK(mul(x, x) == expected);

    gen::Rng rng(3);
    Element y = gen::element(rng);
    CHECK(mul(y, identity_element()) == y);
    CHECK(mul(identity_element(), y) == y);

    Element md = mul(M(q(1)), D(q(1)));
    Element dm = mul(D(q(1)), M(q(1)));
    CHECK(md == mul(scalar_element(phase(rational_phase(1))), dm));
}

TEST_CASE("mul agrees with word normalization on monomials")
{
    gen::Rng rng(55);
    for (int i = 0; i < 300; ++i) {
        TermKey a = gen::term_key(rng, gen::Domain::any);
        TermKey b = gen::term_key(rng, gen::Domain::any);
        Scalar ca = gen::scalar(rng);
        Scalar cb = gen::scalar(rng);
        const Letter w[] = {Letter::scalar(ca), Letter::m(a.lam), Letter::d(a.mu), Letter::v(a.t),
                            Letter::scalar(cb), Letter::m(b.lam), Letter::d(b.mu), Letter::v(b.t)};
        CHECK(mul(monomial(ca, a.lam, a.mu, a.t), monomial(cb, b.lam, b.mu, b.t)) == normalize_word(w).to_element());
    }
}

TEST_CASE("ring laws hold exactly")
{
    gen::Rng rng(77);
    for (int i = 0; i < 60; ++i) {
        Element x = gen::element(rng);
        Element y = gen::element(rng);
        Element z = gen::element(rng);
        CHECK(mul(mul(x, y), z) == mul(x, mul(y, z)));
        CHECK(mul(x, y + z) == mul(x, y) + mul(x, z));
        CHECK(mul(x + y, z) == mul(x, z) + mul(y, z));
        CHECK(adjoint(mul(x, y)) == mul(adjoint(y), adjoint(x)));
        CHECK(adjoint(adjoint(x)) == x);
        CHECK(adjoint(x + y) == adjoint(x) + adjoint(y));
    }
}

TEST_CASE("adjoint examples")
{
    CHECK(adjoint(M(q(1))) == M(q(-1)));
    CHECK(adjoint(mul(M(q(1)), D(q(1)))) == monomial(phase(-rational_phase(1)), q(-1), q(-1), {}));
    CHECK(adjoint(V(unit_dilation(2))) == V(unit_dilation(-2)));
}

TEST_CASE("l1_norm examples and laws")
{
    AtomTable table = gen::standard_table();
    CHECK(l1_norm(M(q(1)) + D(q(1)), table) == 2.0);
    CHECK(l1_norm(Element{}, table) == 0.0);
    Element x = monomial(phase(phase_of(atom_frequency("s2"))), q(1), q(1), unit_dilation(1));
    CHECK(l1_norm(x, table) == 1.0);
    CHECK(l1_norm(monomial(GaussQ(3, 4), q(1), {}, {}), table) == 5.0);

    gen::Rng rng(9);
    for (int i = 0; i < 100; ++i) {
        Element a = gen::element(rng);
        Element b = gen::element(rng);
        CHECK(l1_norm(mul(a, b), table) <= l1_norm(a, table) * l1_norm(b, table) + 1e-10);
        CHECK(std::abs(l1_norm(adjoint(a), table) - l1_norm(a, table)) < 1e-10);
        CHECK(l1_norm(a + b, table) <= l1_norm(a, table) + l1_norm(b, table) + 1e-10);
    }
}

TEST_CASE("coeff_map examples")
{
    Element x = M(q(1)) + mul(M(q(2)), D(q(1)));
    CHECK(expect_E(x, Frequency{}) == M(q(1)));

    Element y = mul(M(q(1)), V(unit_dilation(1))) - mul(M(q(2)), V(unit_dilation(1))) + D(q(1));
    CHECK(contract_H(y, unit_dilation(1)) == M(q(1)) - M(q(2)));

    for (Axis a : {Axis::E, Axis::Z})
        CHECK(coeff_map(Element{}, a, Frequency{}).empty());
    CHECK(coeff_map(Element{}, Axis::H, DilationIndex{}).empty());

    CHECK_THROWS_AS(coeff_map(x, Axis::H, Frequency{}), Error);
    CHECK_THROWS_AS(coeff_map(x, Axis::E, DilationIndex{}), Error);

    // Z_m rewrites c·M_m D_μ as c·e^{imμ}·D_μ (coefficient after moving M_m right).
    Element z = mul(M(q(2)), D(q(3)));
    CHECK(expect_Z(z, q(2)) == monomial(phase(rational_phase(6)), {}, q(3), {}));
    CHECK(mul(expect_Z(z, q(2)), M(q(2))) == z);
}

TEST_CASE("E0 is multiplicative on Ap")
{
    gen::Rng rng(12);
    for (int i = 0; i < 150; ++i) {
        Element x = gen::element(rng, gen::Domain::ap);
        Element y = gen::element(rng, gen::Domain::ap);
        CHECK(expect_E(mul(x, y), Frequency{}) == mul(expect_E(x, Frequency{}), expect_E(y, Frequency{})));
    }
}

TEST_CASE("coefficient maps are l1-contractive")
{
    AtomTable table = gen::standard_table();
    gen::Rng rng(13);
    for (int i = 0; i < 150; ++i) {
        Element x = gen::element(rng, gen::Domain::any, 5, false);
        const auto all = sorted_moduli(x);
        const double n = l1_norm(x, table);
        for (const auto& [k, c] : x) {
            for (const auto& [axis, idx] : {std::pair<Axis, CoeffIndex>{Axis::E, k.mu},
                                            std::pair<Axis, CoeffIndex>{Axis::Z, k.lam},
                                            std::pair<Axis, CoeffIndex>{Axis::H, k.t}}) {
                Element img = coeff_map(x, axis, idx);
                CHECK(is_submultiset(sorted_moduli(img), all));
                CHECK(l1_norm(img, table) <= n + 1e-10);
            }
        }
    }
}

TEST_CASE("support_predicate examples")
{
    AtomTable table = gen::standard_table();
    Element mdv = mul(mul(M(q(1)), D(q(1))), V(unit_dilation(1)));
    CHECK(support_predicate(mdv, AlgebraId::AphGplus, table));
    CHECK_FALSE(support_predicate(M(q(-1)), AlgebraId::Ap, table));
    Element ev = monomial(phase(phase_of(atom_frequency("s2"))), {}, {}, unit_dilation(1));
    CHECK_FALSE(support_predicate(ev, AlgebraId::AphGplusAdjoint, table));
    CHECK(support_predicate(adjoint(mdv), AlgebraId::AphGplusAdjoint, table));
    CHECK_FALSE(support_predicate(V(unit_dilation(1)), AlgebraId::Bp, table));
    CHECK(support_predicate(V(unit_dilation(-1)), AlgebraId::BphG, table));
    CHECK(support_predicate(M(atom_frequency("s2") - q(1)), AlgebraId::Ap, table));
}

TEST_CASE("first_coeff")
{
    AtomTable table = gen::standard_table();
    Element x = mul(M(q(1)), D(q(2))) + mul(M(q(3)), D(q(5)));
    auto [m, e] = first_coeff(x, table);
    CHECK(m == q(2));
    CHECK(e == M(q(1)));
    auto [m1, e1] = first_coeff(M(q(1)), table);
    CHECK(m1.empty());
    CHECK(e1 == M(q(1)));
    CHECK_THROWS_AS(first_coeff(Element{}, table), Error);

    gen::Rng rng(14);
    for (int i = 0; i < 150; ++i) {
        Element a = gen::nonzero_element(rng, gen::Domain::ap);
        Element b = gen::nonzero_element(rng, gen::Domain::ap);
        auto fa = first_coeff(a, table).first;
        auto fb = first_coeff(b, table).first;
        auto fab = first_coeff(mul(a, b), table).first;
        CHECK(std::abs(numeric(fab, table) - numeric(fa + fb, table)) < 1e-12);
    }
}

TEST_CASE("automorphism examples")
{
    AutomorphismSpec scale;
    scale.t = unit_dilation(1);
    CHECK(apply_automorphism(mul(M(q(1)), D(q(1))), scale) == mul(M(e_scaled(1, 1)), D(e_scaled(1, -1))));

    AutomorphismSpec twist;
    PhaseExponent third_pi = phase_of(atom_frequency("PI", Rational(1, 3)));
    twist.d.set_angle({"ONE", {}}, third_pi);
    CHECK(apply_automorphism(M(q(1)), twist) == monomial(phase(third_pi), q(1), {}, {}));

    AutomorphismSpec flip;
    flip.flip = true;
    CHECK_THROWS_AS(apply_automorphism(M(q(1)), flip), Error);
}

TEST_CASE("automorphisms are isometric homomorphisms")
{
    AtomTable table = gen::standard_table();
    gen::Rng rng(15);
    for (int s = 0; s < 6; ++s) {
        AutomorphismSpec ap_spec;
        ap_spec.t = gen::dilation(rng);
        ap_spec.d = gen::bohr_character(rng);
        ap_spec.c = gen::bohr_character(rng);
        AutomorphismSpec triple_spec;
        triple_spec.t = gen::dilation(rng);
        triple_spec.vgauge = gen::dilation_character(rng);
        for (int i = 0; i < 20; ++i) {
            Element x = gen::element(rng, gen::Domain::ap, 5, false);
            Element y = gen::element(rng, gen::Domain::ap, 5, false);
            CHECK(apply_automorphism(mul(x, y), ap_spec) ==
                  mul(apply_automorphism(x, ap_spec), apply_automorphism(y, ap_spec)));
            CHECK(sorted_moduli(apply_automorphism(x, ap_spec)) == sorted_moduli(x));

            Element u = gen::element(rng, gen::Domain::aph, 5, false);
            Element v = gen::element(rng, gen::Domain::aph, 5, false);
            Element fu = apply_automorphism(u, triple_spec);
            CHECK(apply_automorphism(mul(u, v), triple_spec) == mul(fu, apply_automorphism(v, triple_spec)));
            CHECK(sorted_moduli(fu) == sorted_moduli(u));
            CHECK(support_predicate(fu, AlgebraId::AphGplus, table));
        }
    }
}

TEST_CASE("flip check establishes the contradiction")
{
    CHECK(check_flip_contradiction(1, 1));
    CHECK(check_flip_contradiction(2, 0.5));
    gen::Rng rng(16);
    for (int i = 0; i < 10; ++i) {
        double k = std::exp(gen::uniform_real(rng, -3, 3));
        CHECK(check_flip_contradiction(k, 1 / k));
    }
    CHECK_THROWS_AS(check_flip_contradiction(0, 1), Error);
    CHECK_THROWS_AS(check_flip_contradiction(1, -2), Error);
}

TEST_CASE("compress examples")
{
    gen::Rng rng(17);
    for (int i = 0; i < 30; ++i) {
        TermKey k = gen::term_key(rng, gen::Domain::any);
        const long long shift = gen::uniform_int(rng, -5, 40);
        Element x = monomial(1, k.lam, k.mu, k.t);
        // e^{-iλM} M_λ D_{μ+M-Me^{-t}} V_t
        Frequency mm = rational_frequency(Rational(static_cast<long>(shift)));
        Element expected = monomial(phase(-phase_product(k.lam, mm)), k.lam, k.mu + mm - freq_scale_exp(mm, -k.t), k.t);
        CHECK(compress(x, CompressMode::translation(shift)) == expected);

        DilationIndex n = gen::dilation(rng, 1, 3);
        CHECK(compress(x, CompressMode::dilation_in(n)) ==
              monomial(1, freq_scale_exp(k.lam, -n), freq_scale_exp(k.mu, n), k.t));
        CHECK(compress(x, CompressMode::dilation_out(n)) ==
              monomial(1, freq_scale_exp(k.lam, n), freq_scale_exp(k.mu, -n), k.t));
    }
    for (auto mode : {CompressMode::translation(7), CompressMode::dilation_in(unit_dilation(2)),
                      CompressMode::dilation_out(unit_dilation(2))})
        CHECK(compress(identity_element(), mode) == identity_element());
}

TEST_CASE("chirality: automorphic images of V_t leave the adjoint algebra")
{
    AtomTable table = gen::standard_table();
    gen::Rng rng(18);
    for (int s = 0; s < 10; ++s) {
        AutomorphismSpec spec;
        spec.t = gen::dilation(rng);
        spec.vgauge = gen::dilation_character(rng);
        for (int t = 1; t <= 3; ++t)
            CHECK_FALSE(support_predicate(apply_automorphism(V(unit_dilation(t)), spec), AlgebraId::AphGplusAdjoint,
                                          table));
    }
}
