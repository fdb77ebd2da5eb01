#include "tsalg/approx.hpp"

#include <algorithm>
#include <cmath>

namespace tsalg {

RationalBasis rational_basis(std::span<const Frequency> freqs)
{
    return RationalBasis(freqs);
}

namespace {

const Frequency& frequency_index(const TermKey& k, Grading g)
{
    return g == Grading::translation ? k.mu : k.lam;
}

double numeric_index(const TermKey& k, Grading g, const AtomTable& table)
{
    return g == Grading::dilation ? numeric(k.t, table) : numeric(frequency_index(k, g), table);
}

template <class Vec>
void push_unique(std::vector<Vec>& out, const Vec& v)
{
    if (!v.empty() && std::find(out.begin(), out.end(), v) == out.end())
        out.push_back(v);
}

template <class Vec>
std::vector<BFWeight> weights_over(const Element& x, const BFSpec& spec, const std::vector<Vec>& support,
                                   const auto& index_of)
{
    const RationalBasisT<Vec> basis{std::span<const Vec>(support)};
    mpz_class mf = 1;
    for (unsigned j = 2; j <= spec.m; ++j)
        mf *= j;
    const mpz_class lattice = mf * mf;

    std::vector<BFWeight> out;
    out.reserve(x.size());
    for (const auto& [k, c] : x) {
        BFWeight w{k, Rational(1), true, true};
        const auto coords = basis.coordinates(index_of(k));
        if (!coords)
            throw Error(ErrorCode::Internal, "support index outside its own basis");
        for (std::size_t j = spec.m; j < coords->size(); ++j) {
            if (sgn((*coords)[j]) != 0) {
                if (spec.strict)
                    throw Error(ErrorCode::BasisTooShort, "support index outside the span of the first " +
                                                              std::to_string(spec.m) + " basis vectors");
                w.in_span = false;
            }
        }
        if (w.in_span) {
            for (std::size_t j = 0; j < std::min<std::size_t>(spec.m, coords->size()); ++j) {
                Rational nu = (*coords)[j] * mf;
                nu.canonicalize();
                const mpz_class anu = abs(nu.get_num());
                if (nu.get_den() != 1 || anu >= lattice) {
                    w.on_lattice = false;
                    break;
                }
                Rational frac(anu, lattice);
                frac.canonicalize();
                w.weight *= Rational(1) - frac;
            }
        }
        if (!w.in_span || !w.on_lattice)
            w.weight = 0;
        w.weight.canonicalize();
        out.push_back(std::move(w));
    }
    return out;
}

} // namespace

std::vector<Frequency> frequency_support(const Element& x, Grading g)
{
    std::vector<Frequency> out;
    for (const auto& [k, c] : x)
        push_unique(out, frequency_index(k, g));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<DilationIndex> dilation_support(const Element& x)
{
    std::vector<DilationIndex> out;
    for (const auto& [k, c] : x)
        push_unique(out, k.t);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<BFWeight> bochner_fejer_weights(const Element& x, const BFSpec& spec)
{
    if (spec.m < 1 || spec.m > 20)
        throw Error(ErrorCode::InvalidArgument, "Bochner-Fejer order m must lie in [1, 20]");
    if (spec.grading == Grading::dilation)
        return weights_over(x, spec, dilation_support(x), [](const TermKey& k) -> const DilationIndex& { return k.t; });
    const Grading g = spec.grading;
    return weights_over(x, spec, frequency_support(x, g),
                        [g](const TermKey& k) -> const Frequency& { return frequency_index(k, g); });
}

Element bochner_fejer(const Element& x, const BFSpec& spec)
{
    std::vector<Element::Term> raw;
    for (const auto& w : bochner_fejer_weights(x, spec)) {
        if (sgn(w.weight) == 0)
            continue;
        const Scalar* c = x.find(w.key);
        raw.emplace_back(w.key, *c * Scalar(w.weight));
    }
    return Element::from_unsorted(std::move(raw));
}

NumericElement gauge(const Element& x, Grading g, double theta, const AtomTable& table)
{
    std::vector<NumericElement::Term> raw;
    raw.reserve(x.size());
    for (const auto& [k, c] : x)
        raw.emplace_back(k, scalar_numeric(c, table) * std::polar(1.0, theta * numeric_index(k, g, table)));
    return NumericElement::from_unsorted(std::move(raw));
}

Element gauge_exact(const Element& x, Grading g, const Rational& theta)
{
    std::vector<Element::Term> raw;
    raw.reserve(x.size());
    for (const auto& [k, c] : x) {
        PhaseExponent ph;
        if (g == Grading::dilation) {
            if (!k.t.empty() && !(k.t.size() == 1 && k.t.terms()[0].first == kUnitDilation))
                throw Error(ErrorCode::InvalidArgument, "exact dilation gauge needs UNIT-only indices");
            if (!k.t.empty())
                ph = rational_phase(canonical(theta) * k.t.terms()[0].second);
        } else {
            ph = phase_of(frequency_index(k, g)).scaled(canonical(theta));
        }
        raw.emplace_back(k, ph.empty() ? c : c * Scalar::phase(ph));
    }
    return Element::from_unsorted(std::move(raw));
}

double trapezoid_gauge_weight(double omega, double T, int steps)
{
    if (!(T > 0) || steps < 2)
        throw Error(ErrorCode::InvalidArgument, "Cesaro mean needs T > 0 and at least 2 steps");
    const double h = 2 * T / steps;
    const double x = omega * h / 2;
    const double end = std::cos(omega * T);
    // Σ_{k=0}^{N} cos(ω(-T + kh)); the nodes are symmetric about 0.
    double sum;
    if (std::fabs(std::sin(x)) < 1e-12)
        sum = (steps + 1) * end;
    else
        sum = std::sin((steps + 1) * x) / std::sin(x);
    return h * (sum - end) / (2 * T);
}

namespace {

struct Shifted {
    TermKey key;
    Complex phase = 1;
    double omega = 0;
};

Shifted shift_term(const TermKey& k, Grading g, const std::variant<Frequency, DilationIndex>& s,
                   const AtomTable& table)
{
    Shifted out{k, 1, 0};
    if (g == Grading::dilation) {
        const auto* t = std::get_if<DilationIndex>(&s);
        if (t == nullptr)
            throw Error(ErrorCode::AxisMismatch, "dilation grading takes a dilation index");
        out.key.t = k.t - *t;
        out.omega = numeric(out.key.t, table);
        return out;
    }
    const auto* f = std::get_if<Frequency>(&s);
    if (f == nullptr)
        throw Error(ErrorCode::AxisMismatch, "translation and multiplication gradings take a frequency index");
    if (g == Grading::translation) {
        out.key.mu = k.mu - *f;
        out.omega = numeric(out.key.mu, table);
    } else {
        out.key.lam = k.lam - *f;
        out.omega = numeric(out.key.lam, table);
        out.phase = std::polar(1.0, numeric(phase_product(*f, k.mu), table));
    }
    return out;
}

} // namespace

NumericElement cesaro_mean(const Element& x, Grading g, const std::variant<Frequency, DilationIndex>& s, double T,
                           int steps, const AtomTable& table)
{
    std::vector<NumericElement::Term> raw;
    raw.reserve(x.size());
    for (const auto& [k, c] : x) {
        Shifted sh = shift_term(k, g, s, table);
        const double w = trapezoid_gauge_weight(sh.omega, T, steps);
        raw.emplace_back(std::move(sh.key), scalar_numeric(c, table) * sh.phase * w);
    }
    return NumericElement::from_unsorted(std::move(raw));
}

NumericElement cesaro_limit(const Element& x, Grading g, const std::variant<Frequency, DilationIndex>& s,
                            const AtomTable& table)
{
    const Axis axis = g == Grading::translation ? Axis::E : (g == Grading::multiplication ? Axis::Z : Axis::H);
    CoeffIndex idx = std::holds_alternative<Frequency>(s) ? CoeffIndex(std::get<Frequency>(s))
                                                          : CoeffIndex(std::get<DilationIndex>(s));
    return to_numeric(coeff_map(x, axis, idx), table);
}

double fejer_factor(unsigned N, double x)
{
    const double s = std::sin(x / 2);
    if (std::fabs(s) < 1e-6) {
        double sum = 1;
        for (unsigned nu = 1; nu < N; ++nu)
            sum += 2 * (1 - static_cast<double>(nu) / N) * std::cos(nu * x);
        return sum;
    }
    const double r = std::sin(N * x / 2) / s;
    return r * r / N;
}

double bf_kernel(const RationalBasis& basis, unsigned m, double t, const AtomTable& table)
{
    if (m < 1 || m > basis.size())
        throw Error(ErrorCode::InvalidArgument, "kernel order must lie in [1, basis length]");
    const double mf = static_cast<double>(factorial(m));
    const unsigned N = static_cast<unsigned>(mf * mf);
    double k = 1;
    for (unsigned j = 0; j < m; ++j)
        k *= fejer_factor(N, t * numeric(basis.basis()[j], table) / mf);
    return k;
}

std::int64_t recurrence_search(std::span<const double> freqs, double eps, std::int64_t limit, std::int64_t start)
{
    if (!(eps > 0) || limit < 1)
        throw Error(ErrorCode::InvalidArgument, "recurrence search needs eps > 0 and limit >= 1");
    for (std::int64_t m = std::max<std::int64_t>(start, 1); m <= limit; ++m) {
        bool ok = true;
        for (double lam : freqs) {
            // |e^{iλM} - 1| = 2|sin(λM/2)|
            if (2 * std::fabs(std::sin(lam * static_cast<double>(m) / 2)) >= eps) {
                ok = false;
                break;
            }
        }
        if (ok)
            return m;
    }
    throw Error(ErrorCode::NotFound, "no recurrence time up to " + std::to_string(limit));
}

std::vector<RecurrenceStep> recurrence_schedule(std::span<const double> freqs, double eps0, int count,
                                                std::int64_t limit)
{
    if (count < 1)
        throw Error(ErrorCode::InvalidArgument, "schedule length must be positive");
    std::vector<RecurrenceStep> out;
    std::int64_t prev = 0;
    double eps = eps0;
    for (int i = 0; i < count; ++i) {
        prev = recurrence_search(freqs, eps, limit, prev + 1);
        out.push_back({prev, eps});
        eps /= 2;
    }
    return out;
}

unsigned long factorial(unsigned m)
{
    if (m > 20)
        throw Error(ErrorCode::NumericOverflow, "factorial beyond 20!");
    unsigned long r = 1;
    for (unsigned j = 2; j <= m; ++j)
        r *= j;
    return r;
}

} // namespace tsalg
