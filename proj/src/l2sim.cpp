#include "tsalg/l2sim.hpp"

#include <algorithm>
#include <cmath>

namespace tsalg {

namespace {

constexpr double kPi = 3.14159265358979323846;
const Complex kI(0, 1);

} // namespace

GaussianPacket make_packet(Complex amp, Complex a, Complex b, Complex c)
{
    if (!(a.real() > 0))
        throw Error(ErrorCode::DivergentPacket, "packet width needs a positive real part");
    return {amp, a, b, c};
}

GaussianPacket apply_m(const GaussianPacket& p, double lam)
{
    GaussianPacket q = p;
    q.c += lam;
    return q;
}

GaussianPacket apply_d(const GaussianPacket& p, double mu)
{
    GaussianPacket q = p;
    q.amp *= std::exp(-kI * p.c * mu);
    q.b += mu;
    return q;
}

GaussianPacket apply_v(const GaussianPacket& p, double t)
{
    const double s = std::exp(t);
    GaussianPacket q = p;
    q.amp *= std::exp(t / 2);
    q.a *= s * s;
    q.b /= s;
    q.c *= s;
    return q;
}

Complex packet_inner(const GaussianPacket& f, const GaussianPacket& g)
{
    const Complex d = std::conj(g.a);
    const Complex e = std::conj(g.b);
    const Complex P = f.a + d;
    if (!(P.real() > 0))
        throw Error(ErrorCode::DivergentPacket, "combined packet width has nonpositive real part");
    const Complex m = (f.a * f.b + d * e) / P;
    const Complex kappa = f.c - std::conj(g.c);
    const Complex db = f.b - e;
    const Complex expo = -(f.a * d / P) * db * db + kI * kappa * m - kappa * kappa / (4.0 * P);
    return f.amp * std::conj(g.amp) * std::sqrt(kPi / P) * std::exp(expo);
}

Complex packet_inner(const PacketSum& f, const PacketSum& g)
{
    Complex s = 0;
    for (const auto& p : f)
        for (const auto& q : g)
            s += packet_inner(p, q);
    return s;
}

double packet_norm(const PacketSum& f)
{
    return std::sqrt(std::max(0.0, packet_inner(f, f).real()));
}

Complex packet_value(const GaussianPacket& p, double x)
{
    const Complex y = x - p.b;
    return p.amp * std::exp(-p.a * y * y + kI * p.c * x);
}

PacketSum merge_packets(const PacketSum& f, double tol)
{
    PacketSum out;
    for (const auto& p : f) {
        const double ra = p.a.real();
        const double sa = std::sqrt(ra);
        auto same = [&](const GaussianPacket& q) {
            return std::abs(q.a - p.a) <= tol * ra && std::abs(q.b - p.b) * sa <= tol &&
                   std::abs(q.c - p.c) <= tol * sa;
        };
        auto it = std::find_if(out.begin(), out.end(), same);
        if (it != out.end())
            it->amp += p.amp;
        else
            out.push_back(p);
    }
    std::erase_if(out, [](const GaussianPacket& p) { return p.amp == Complex(0); });
    return out;
}

PacketSum scaled(const PacketSum& f, Complex s)
{
    PacketSum out = f;
    for (auto& p : out)
        p.amp *= s;
    return out;
}

PacketSum operator+(PacketSum f, const PacketSum& g)
{
    f.insert(f.end(), g.begin(), g.end());
    return f;
}

PacketSum operator-(PacketSum f, const PacketSum& g)
{
    return std::move(f) + scaled(g, -1);
}

double difference_norm(const PacketSum& f, const PacketSum& g)
{
    return packet_norm(merge_packets(f - g));
}

PacketSum apply_element(const Element& x, const PacketSum& f, const AtomTable& table)
{
    PacketSum out;
    out.reserve(x.size() * f.size());
    for (const auto& [k, c] : x) {
        const Complex cv = scalar_numeric(c, table);
        const double lam = numeric(k.lam, table);
        const double mu = numeric(k.mu, table);
        const double t = numeric(k.t, table);
        for (const auto& p : f) {
            GaussianPacket q = apply_m(apply_d(apply_v(p, t), mu), lam);
            q.amp *= cv;
            out.push_back(q);
        }
    }
    return out;
}

PacketSum apply_word(std::span<const Letter> word, const PacketSum& f, const AtomTable& table)
{
    PacketSum out = f;
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        switch (it->kind) {
        case Letter::Kind::M:
            for (auto& p : out)
                p = apply_m(p, numeric(it->freq, table));
            break;
        case Letter::Kind::D:
            for (auto& p : out)
                p = apply_d(p, numeric(it->freq, table));
            break;
        case Letter::Kind::V:
            for (auto& p : out)
                p = apply_v(p, numeric(it->dil, table));
            break;
        case Letter::Kind::Phase:
            out = scaled(out, scalar_numeric(it->phase, table));
            break;
        }
    }
    return out;
}

double relation_residual(Relation rel, double a, double b, const PacketSum& f)
{
    PacketSum lhs, rhs;
    for (const auto& p : f) {
        switch (rel) {
        case Relation::weyl:
            lhs.push_back(apply_m(apply_d(p, b), a));
            rhs.push_back(apply_d(apply_m(p, a), b));
            rhs.back().amp *= std::exp(kI * (a * b));
            break;
        case Relation::dil_m:
            lhs.push_back(apply_v(apply_m(p, b), a));
            rhs.push_back(apply_m(apply_v(p, a), std::exp(a) * b));
            break;
        case Relation::dil_d:
            lhs.push_back(apply_v(apply_d(p, b), a));
            rhs.push_back(apply_d(apply_v(p, a), std::exp(-a) * b));
            break;
        }
    }
    return difference_norm(lhs, rhs);
}

GaussianPacket sample_packet(std::mt19937_64& rng, const PacketSampler& s)
{
    std::uniform_real_distribution<double> loga(std::log(s.a_min), std::log(s.a_max));
    std::uniform_real_distribution<double> ub(-s.b_max, s.b_max);
    std::uniform_real_distribution<double> uc(-s.c_max, s.c_max);
    const double a = std::exp(loga(rng));
    const double b = ub(rng);
    const double c = uc(rng);
    return make_packet(1.0, a, b, c);
}

double norm_lower_bound(const Element& x, int trials, std::uint64_t seed, const AtomTable& table,
                        const PacketSampler& s)
{
    if (trials < 1)
        throw Error(ErrorCode::InvalidArgument, "norm bound needs at least one trial");
    std::mt19937_64 rng(seed);
    double best = 0;
    for (int i = 0; i < trials; ++i) {
        const PacketSum f{sample_packet(rng, s)};
        best = std::max(best, packet_norm(apply_element(x, f, table)) / packet_norm(f));
    }
    return best;
}

// ---------------------------------------------------------------------------
// Left regular representation

namespace {

CoeffIndex add_index(const CoeffIndex& a, const CoeffIndex& b)
{
    if (a.index() != b.index())
        throw Error(ErrorCode::AxisMismatch, "grading indices of different kinds");
    if (const auto* f = std::get_if<Frequency>(&a))
        return *f + std::get<Frequency>(b);
    return std::get<DilationIndex>(a) + std::get<DilationIndex>(b);
}

double index_value(const CoeffIndex& s, const AtomTable& table)
{
    if (const auto* f = std::get_if<Frequency>(&s))
        return numeric(*f, table);
    return numeric(std::get<DilationIndex>(s), table);
}

GaussianPacket apply_u(const GaussianPacket& p, Grading g, double s)
{
    switch (g) {
    case Grading::translation: return apply_d(p, s);
    case Grading::multiplication: return apply_m(p, s);
    case Grading::dilation: return apply_v(p, s);
    }
    return p;
}

/// α_{-w}(A)ξ = U_{-w} A U_w ξ
PacketSum conjugated(const Element& a, const PacketSum& xi, Grading g, double w, const AtomTable& table)
{
    PacketSum in;
    for (const auto& p : xi)
        in.push_back(apply_u(p, g, w));
    PacketSum out = apply_element(a, in, table);
    for (auto& p : out)
        p = apply_u(p, g, -w);
    return out;
}

/// Splits a term c·M_λD_μV_t into its coefficient part A and grading index s.
std::pair<Element, CoeffIndex> split_term(const TermKey& k, const Scalar& c, Grading g)
{
    switch (g) {
    case Grading::translation:
        if (!k.t.empty())
            throw Error(ErrorCode::InvalidArgument, "translation grading needs t = 0");
        return {Element::single(TermKey{k.lam, {}, {}}, c), CoeffIndex(k.mu)};
    case Grading::multiplication:
        if (!k.t.empty())
            throw Error(ErrorCode::InvalidArgument, "multiplication grading needs t = 0");
        // M_λD_μ = e^{iλμ}D_μM_λ
        return {Element::single(TermKey{{}, k.mu, {}}, c * Scalar::phase(phase_product(k.lam, k.mu))),
                CoeffIndex(k.lam)};
    case Grading::dilation:
        return {Element::single(TermKey{k.lam, k.mu, {}}, c), CoeffIndex(k.t)};
    }
    throw Error(ErrorCode::Internal, "unknown grading");
}

CoeffIndex zero_index(Grading g)
{
    return g == Grading::dilation ? CoeffIndex(DilationIndex{}) : CoeffIndex(Frequency{});
}

} // namespace

LRVector lr_delta(const CoeffIndex& s, const PacketSum& xi)
{
    return LRVector{{s, xi}};
}

double lr_norm2(const LRVector& v)
{
    double s = 0;
    for (const auto& [k, f] : v)
        s += packet_inner(f, f).real();
    return s;
}

LRVector lr_apply(const Element& x, const LRVector& v, Grading g, const AtomTable& table)
{
    LRVector out;
    for (const auto& [k, c] : x) {
        const auto [a, s] = split_term(k, c, g);
        for (const auto& [u, xi] : v) {
            const CoeffIndex w = add_index(s, u);
            PacketSum img = conjugated(a, xi, g, index_value(w, table), table);
            auto& slot = out[w];
            slot.insert(slot.end(), img.begin(), img.end());
        }
    }
    return out;
}

ColumnIdentity column_identity(const Element& x, const PacketSum& xi, Grading g, const AtomTable& table)
{
    const double lhs = lr_norm2(lr_apply(x, lr_delta(zero_index(g), xi), g, table));

    // Σ_s ‖α_{-s}(E_s(x))ξ‖² with the coefficient maps and literal conjugation
    std::vector<CoeffIndex> support;
    for (const auto& [k, c] : x) {
        CoeffIndex s = g == Grading::translation ? CoeffIndex(k.mu)
                       : g == Grading::multiplication ? CoeffIndex(k.lam) : CoeffIndex(k.t);
        if (std::find(support.begin(), support.end(), s) == support.end())
            support.push_back(std::move(s));
    }
    const Axis axis = g == Grading::translation ? Axis::E : g == Grading::multiplication ? Axis::Z : Axis::H;
    double rhs = 0;
    for (const auto& s : support) {
        const Element es = coeff_map(x, axis, s);
        const double sv = index_value(s, table);
        PacketSum shifted;
        for (const auto& p : xi)
            shifted.push_back(apply_u(p, g, sv));
        PacketSum img = apply_element(es, shifted, table);
        for (auto& p : img)
            p = apply_u(p, g, -sv);
        rhs += packet_inner(img, img).real();
    }
    return {lhs, rhs};
}

// ---------------------------------------------------------------------------
// WOT compressions

Element compression_limit(const Element& x, CompressMode::Kind mode)
{
    if (mode == CompressMode::Kind::translation)
        return coeff_map(x, Axis::H, DilationIndex{});
    std::vector<Element::Term> raw;
    for (const auto& [k, c] : x) {
        const bool keep = mode == CompressMode::Kind::dilation_in ? k.mu.empty() : k.lam.empty();
        if (keep)
            raw.emplace_back(TermKey{{}, {}, k.t}, c);
    }
    return Element::from_unsorted(std::move(raw));
}

WotReport wot_compression_demo(const Element& x, const PacketSum& f, const PacketSum& g, CompressMode::Kind mode,
                               std::span<const std::int64_t> schedule, double tolerance, const AtomTable& table)
{
    if (schedule.size() < 3)
        throw Error(ErrorCode::ScheduleTooShort, "WOT demo needs at least 3 schedule entries");
    WotReport report;
    report.limit = compression_limit(x, mode);
    const Complex target = packet_inner(apply_element(report.limit, f, table), g);
    const double scale = packet_norm(f) * packet_norm(g);
    for (std::int64_t n : schedule) {
        CompressMode cm;
        switch (mode) {
        case CompressMode::Kind::translation: cm = CompressMode::translation(n); break;
        case CompressMode::Kind::dilation_in: cm = CompressMode::dilation_in(unit_dilation(n)); break;
        case CompressMode::Kind::dilation_out: cm = CompressMode::dilation_out(unit_dilation(n)); break;
        }
        const Complex value = packet_inner(apply_element(compress(x, cm), f, table), g);
        const double err = std::abs(value - target);
        if (!report.steps.empty() && err > report.steps.back().error)
            ++report.non_monotone;
        report.steps.push_back({n, err, scale > 0 ? err / scale : err});
    }
    report.decreasing = report.non_monotone <= 0.2 * static_cast<double>(report.steps.size() - 1);
    report.converged = report.steps.back().relative < tolerance;
    return report;
}

// ---------------------------------------------------------------------------
// Fourier–Plancherel

GaussianPacket fourier(const GaussianPacket& p)
{
    // (2π)^{-1/2} ∫ amp·e^{-a(x-b)² + i(c-ξ)x} dx
    //   = amp·(2a)^{-1/2}·e^{icb}·exp(-(ξ-c)²/(4a) - ibξ)
    return {p.amp * std::sqrt(1.0 / (2.0 * p.a)) * std::exp(kI * p.c * p.b), 1.0 / (4.0 * p.a), p.c, -p.b};
}

GaussianPacket inverse_fourier(const GaussianPacket& p)
{
    // (F⁻¹h)(x) = (Fh)(-x)
    GaussianPacket q = fourier(p);
    q.b = -q.b;
    q.c = -q.c;
    return q;
}

PacketSum fourier(const PacketSum& f)
{
    PacketSum out;
    for (const auto& p : f)
        out.push_back(fourier(p));
    return out;
}

PacketSum inverse_fourier(const PacketSum& f)
{
    PacketSum out;
    for (const auto& p : f)
        out.push_back(inverse_fourier(p));
    return out;
}

double fourier_conjugation_check(double lam, const PacketSum& f, const PacketSum& g, bool dual)
{
    if (lam == 0)
        return 0; // M_0 = D_0 = 1
    PacketSum h = inverse_fourier(f);
    for (auto& p : h)
        p = dual ? apply_d(p, lam) : apply_m(p, lam);
    const PacketSum conj = fourier(h);
    PacketSum direct;
    for (const auto& p : f)
        direct.push_back(dual ? apply_m(p, -lam) : apply_d(p, lam));
    return std::abs(packet_inner(conj, g) - packet_inner(direct, g));
}

} // namespace tsalg
