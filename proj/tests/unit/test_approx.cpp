#include <doctest.h>

#include <cmath>
#include <complex>

#include "support/gen_algebra.hpp"
#include "tsalg/approx.hpp"

using namespace tsalg;

namespace {

Frequency q(int v)
{
    return rational_frequency(v);
}

Frequency s2(int v = 1)
{
    return atom_frequency("s2", v);
}

double coeff_abs_diff(const NumericElement& a, const Element& b, const AtomTable& table)
{
    return l1_distance(a, to_numeric(b, table));
}

} // namespace

TEST_CASE("rational_basis examples")
{
    {
        std::vector<Frequency> in{q(1), q(2), q(3)};
        RationalBasis b = rational_basis(in);
        REQUIRE(b.size() == 1);
        CHECK(b.basis()[0] == q(1));
        for (int i = 1; i <= 3; ++i)
            CHECK(*b.coordinates(q(i)) == std::vector<Rational>{i});
    }
    {
        std::vector<Frequency> in{q(1), s2(), q(1) + s2()};
        RationalBasis b = rational_basis(in);
        REQUIRE(b.size() == 2);
        CHECK(b.basis()[0] == q(1));
        CHECK(b.basis()[1] == s2());
        CHECK(*b.coordinates(q(1)) == std::vector<Rational>{1, 0});
        CHECK(*b.coordinates(s2()) == std::vector<Rational>{0, 1});
        CHECK(*b.coordinates(q(1) + s2()) == std::vector<Rational>{1, 1});
        CHECK_FALSE(b.coordinates(atom_frequency("s3")).has_value());
    }
    CHECK(rational_basis({}).size() == 0);
}

TEST_CASE("rational_basis coordinates reproduce inputs")
{
    gen::Rng rng(31);
    for (int i = 0; i < 100; ++i) {
        std::vector<Frequency> in;
        for (int j = 0; j < 6; ++j)
            in.push_back(gen::frequency(rng, 3));
        RationalBasis b = rational_basis(in);
        for (const auto& f : in) {
            auto c = b.coordinates(f);
            REQUIRE(c.has_value());
            Frequency back;
            for (std::size_t j = 0; j < c->size(); ++j)
                back += b.basis()[j].scaled((*c)[j]);
            CHECK(back == f);
        }
        // Basis vectors are independent: each has unit coordinates.
        for (std::size_t j = 0; j < b.size(); ++j) {
            auto c = *b.coordinates(b.basis()[j]);
            for (std::size_t k = 0; k < c.size(); ++k)
                CHECK(c[k] == Rational(j == k ? 1 : 0));
        }
    }
}

TEST_CASE("rational_basis over dilation indices")
{
    std::vector<DilationIndex> in{unit_dilation(2), DilationIndex::single("lg2", 1), unit_dilation(4)};
    DilationBasis b{std::span<const DilationIndex>(in)};
    CHECK(b.size() == 2);
    CHECK(*b.coordinates(unit_dilation(4)) == std::vector<Rational>{2, 0});
}

TEST_CASE("bochner_fejer weights on D1")
{
    Element x = D(q(1));
    CHECK(bochner_fejer(x, {1, Grading::translation}).empty());
    CHECK(bochner_fejer(x, {2, Grading::translation}) == mul(scalar_element(Scalar(Rational(1, 2))), x));
    CHECK(bochner_fejer(x, {3, Grading::translation}) == mul(scalar_element(Scalar(Rational(5, 6))), x));
    CHECK(bochner_fejer(x, {4, Grading::translation}) == mul(scalar_element(Scalar(Rational(23, 24))), x));
}

TEST_CASE("bochner_fejer strictness")
{
    Element x = D(q(1)) + D(s2());
    CHECK_THROWS_AS(bochner_fejer(x, {1, Grading::translation, true}), Error);
    auto w = bochner_fejer_weights(x, {1, Grading::translation, false});
    REQUIRE(w.size() == 2);
    int outside = 0;
    for (const auto& e : w)
        outside += e.in_span ? 0 : 1;
    CHECK(outside == 1);
    // Zero index always has weight 1.
    CHECK(bochner_fejer(M(q(3)), {1, Grading::translation}) == M(q(3)));
}

TEST_CASE("bochner_fejer is l1-contractive and converges")
{
    AtomTable table = gen::standard_table();
    gen::Rng rng(32);
    for (int i = 0; i < 40; ++i) {
        Element x = gen::element(rng, gen::Domain::any, 4, false);
        for (Grading g : {Grading::translation, Grading::multiplication, Grading::dilation}) {
            const std::size_t len = g == Grading::dilation ? DilationBasis(dilation_support(x)).size()
                                                           : rational_basis(frequency_support(x, g)).size();
            double prev_err = INFINITY;
            Rational prev_min_weight = -1;
            bool covered = false;
            for (unsigned m = 1; m <= std::max<std::size_t>(len, 7); ++m) {
                BFSpec spec{m, g, false};
                Element y = bochner_fejer(x, spec);
                CHECK(l1_norm(y, table) <= l1_norm(x, table) + 1e-12);
                Rational min_w = 1;
                for (const auto& w : bochner_fejer_weights(x, spec))
                    min_w = std::min(min_w, w.weight);
                // Once m spans the support and m! clears the coordinate
                // denominators, every term survives and stays alive.
                if (m >= len && sgn(min_w) > 0)
                    covered = true;
                if (covered) {
                    CHECK(sgn(min_w) > 0);
                    double err = l1_norm(x - y, table);
                    CHECK(err <= prev_err + 1e-15);
                    CHECK(min_w >= prev_min_weight);
                    prev_err = err;
                    prev_min_weight = min_w;
                }
            }
            CHECK(covered);
        }
    }
}

TEST_CASE("bochner_fejer detects every nonzero element")
{
    gen::Rng rng(33);
    for (int i = 0; i < 50; ++i) {
        Element x = gen::nonzero_element(rng);
        bool seen = false;
        for (unsigned m = 1; m <= 6 && !seen; ++m)
            seen = !bochner_fejer(x, {m, Grading::translation, false}).empty();
        CHECK(seen);
    }
}

TEST_CASE("gauge examples")
{
    AtomTable table = gen::standard_table();
    NumericElement g = gauge(D(q(1)), Grading::translation, M_PI, table);
    CHECK(coeff_abs_diff(g, mul(scalar_element(-1), D(q(1))), table) < 1e-15);

    gen::Rng rng(34);
    Element x = gen::element(rng);
    for (Grading gr : {Grading::translation, Grading::multiplication, Grading::dilation})
        CHECK(coeff_abs_diff(gauge(x, gr, 0, table), x, table) == 0);

    Element mv = mul(M(q(1)), V(unit_dilation(2)));
    auto r = gauge(mv, Grading::dilation, 0.3, table);
    CHECK(std::abs(r.terms()[0].second - std::polar(1.0, 0.6)) < 1e-15);
}

TEST_CASE("exact gauge is a ring homomorphism where it should be")
{
    AtomTable table = gen::standard_table();
    gen::Rng rng(35);
    for (int i = 0; i < 60; ++i) {
        Rational theta(gen::uniform_int(rng, -5, 5), gen::uniform_int(rng, 1, 4));
        theta.canonicalize();
        Element x = gen::element(rng, gen::Domain::bp);
        Element y = gen::element(rng, gen::Domain::bp);
        for (Grading g : {Grading::translation, Grading::multiplication})
            CHECK(gauge_exact(mul(x, y), g, theta) == mul(gauge_exact(x, g, theta), gauge_exact(y, g, theta)));
        Element u = gen::element(rng);
        Element v = gen::element(rng);
        CHECK(gauge_exact(mul(u, v), Grading::dilation, theta) ==
              mul(gauge_exact(u, Grading::dilation, theta), gauge_exact(v, Grading::dilation, theta)));
        // Numeric gauge matches the exact one for rational θ.
        CHECK(l1_distance(gauge(x, Grading::translation, theta.get_d(), table),
                          to_numeric(gauge_exact(x, Grading::translation, theta), table)) < 1e-10);
    }
}

TEST_CASE("trapezoid weight closed form matches direct summation")
{
    gen::Rng rng(36);
    for (int i = 0; i < 200; ++i) {
        const double omega = gen::uniform_real(rng, -20, 20);
        const double T = gen::uniform_real(rng, 1, 100);
        const int steps = gen::uniform_int(rng, 2, 3000);
        const double h = 2 * T / steps;
        double direct = 0;
        for (int k = 0; k <= steps; ++k) {
            const double w = (k == 0 || k == steps) ? 0.5 : 1.0;
            direct += w * std::cos(omega * (-T + k * h));
        }
        direct *= h / (2 * T);
        CHECK(std::abs(trapezoid_gauge_weight(omega, T, steps) - direct) < 1e-9);
    }
    CHECK(trapezoid_gauge_weight(0, 7, 100) == doctest::Approx(1.0).epsilon(1e-15));
    // Aliased node spacing: ωh = 2π.
    CHECK(trapezoid_gauge_weight(2 * M_PI, 5, 5) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("cesaro_mean examples")
{
    AtomTable table = gen::standard_table();
    Element x = M(q(1)) + D(q(1));
    NumericElement c = cesaro_mean(x, Grading::translation, Frequency{}, 200, kDefaultCesaroSteps, table);
    for (const auto& [k, v] : c) {
        const Complex target = k == TermKey{q(1), {}, {}} ? Complex(1) : Complex(0);
        CHECK(std::abs(v - target) < 5e-3);
    }

    // s outside the support: everything decays like 1/T.
    const double T = 300;
    NumericElement far = cesaro_mean(x, Grading::translation, s2(), T, 20000, table);
    double omega_min = std::min(std::abs(std::sqrt(2.0)), std::abs(1 - std::sqrt(2.0)));
    for (const auto& [k, v] : far)
        CHECK(std::abs(v) <= 1.0 / (omega_min * T) + 1e-6);

    NumericElement d1 = cesaro_mean(D(q(1)), Grading::translation, q(1), 3.7, 10, table);
    REQUIRE(d1.size() == 1);
    CHECK(std::abs(d1.terms()[0].second - Complex(1)) < 1e-14);

    CHECK_THROWS_AS(cesaro_mean(x, Grading::dilation, Frequency{}, 10, 100, table), Error);
}

TEST_CASE("cesaro_mean converges to the coefficient at rate C/T")
{
    AtomTable table = gen::standard_table();
    gen::Rng rng(37);
    for (int i = 0; i < 20; ++i) {
        Element x = gen::nonzero_element(rng);
        for (Grading g : {Grading::translation, Grading::multiplication, Grading::dilation}) {
            for (const auto& [k, c] : x) {
                std::variant<Frequency, DilationIndex> s;
                if (g == Grading::dilation)
                    s = k.t;
                else
                    s = g == Grading::translation ? k.mu : k.lam;
                auto err = [&](double T) {
                    return l1_distance(cesaro_mean(x, g, s, T, static_cast<int>(64 * T), table),
                                       cesaro_limit(x, g, s, table));
                };
                double C = 0;
                for (double T = 50; T <= 100; T += 0.8)
                    C = std::max(C, T * err(T));
                CHECK(400 * err(400) <= 2 * C + 1e-9);
            }
        }
    }
}

TEST_CASE("fejer factor and kernel")
{
    gen::Rng rng(38);
    for (int i = 0; i < 200; ++i) {
        const unsigned N = static_cast<unsigned>(gen::uniform_int(rng, 1, 40));
        const double x = gen::uniform_real(rng, -10, 10);
        double direct = 0;
        for (int nu = -static_cast<int>(N) + 1; nu < static_cast<int>(N); ++nu)
            direct += (1 - std::abs(nu) / static_cast<double>(N)) * std::cos(nu * x);
        CHECK(fejer_factor(N, x) == doctest::Approx(direct).epsilon(1e-9).scale(N));
    }

    AtomTable table = gen::standard_table();
    std::vector<Frequency> in{q(1), s2(), atom_frequency("s3")};
    RationalBasis basis = rational_basis(in);
    for (unsigned m = 1; m <= 3; ++m) {
        const double mf = static_cast<double>(factorial(m));
        CHECK(bf_kernel(basis, m, 0, table) == doctest::Approx(std::pow(mf * mf, m)));
    }
    std::vector<Frequency> one{q(1)};
    CHECK(bf_kernel(rational_basis(one), 1, 2.7, table) == doctest::Approx(1.0));
    for (int i = 0; i < 1000; ++i)
        CHECK(bf_kernel(basis, 3, gen::uniform_real(rng, -200, 200), table) >= -1e-9);
    CHECK_THROWS_AS(bf_kernel(rational_basis(one), 2, 0, table), Error);
}

TEST_CASE("recurrence_search")
{
    const double two_pi[] = {2 * M_PI};
    CHECK(recurrence_search(two_pi, 1e-6, 10) == 1);

    const double one[] = {1.0};
    const auto m = recurrence_search(one, 0.05, 100000);
    CHECK(m == 44);
    // Oracle scan, frozen: |e^{44i} - 1| ≈ 0.01770.
    CHECK(std::abs(std::exp(std::complex<double>(0, 44)) - 1.0) == doctest::Approx(0.0177).epsilon(1e-3));
    for (int k = 1; k < 44; ++k)
        CHECK(std::abs(std::exp(std::complex<double>(0, k)) - 1.0) >= 0.05);

    const double pair[] = {1.0, std::sqrt(2.0)};
    const auto mp = recurrence_search(pair, 0.3, 100000);
    for (double lam : pair)
        CHECK(std::abs(std::exp(std::complex<double>(0, lam * mp)) - 1.0) < 0.3);
    CHECK_THROWS_AS(recurrence_search(one, 1e-9, 100), Error);

    auto sched = recurrence_schedule(pair, 0.3, 4, 1000000);
    REQUIRE(sched.size() == 4);
    for (std::size_t i = 1; i < sched.size(); ++i) {
        CHECK(sched[i].time > sched[i - 1].time);
        CHECK(sched[i].eps == sched[i - 1].eps / 2);
    }
}
