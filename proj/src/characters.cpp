#include "tsalg/characters.hpp"
#include "tsalg/text.hpp"

#include <algorithm>
#include <cmath>

namespace tsalg {

APPoint APPoint::finite(BohrCharacter c, double y)
{
    if (!(y >= 0) || !std::isfinite(y))
        throw Error(ErrorCode::InvalidArgument, "AP point height y must be finite and >= 0");
    return {false, std::move(c), y};
}

APPoint APPoint::at_infinity()
{
    return {true, {}, 0};
}

Complex APPoint::value(const Frequency& lam, const AtomTable& table) const
{
    if (infinity)
        return lam.empty() ? 1.0 : 0.0;
    return c.numeric_value(lam, table) * std::exp(-numeric(lam, table) * y);
}

VSide VSide::disc(Complex w)
{
    if (!(std::abs(w) <= 1 + 1e-12))
        throw Error(ErrorCode::InvalidArgument, "disc point must satisfy |w| <= 1");
    return {Kind::disc, w, {}, 0};
}

VSide VSide::finite(DilationCharacter c, double y)
{
    if (!(y >= 0) || !std::isfinite(y))
        throw Error(ErrorCode::InvalidArgument, "V-side height y must be finite and >= 0");
    return {Kind::finite, 0, std::move(c), y};
}

bool VSide::is_y0() const
{
    return kind == Kind::infinity || (kind == Kind::disc && w == Complex(0));
}

Complex VSide::value(const DilationIndex& t, const AtomTable& table) const
{
    switch (kind) {
    case Kind::infinity:
        return t.empty() ? 1.0 : 0.0;
    case Kind::finite:
        return c.numeric_value(t, table) * std::exp(-numeric(t, table) * y);
    case Kind::disc:
        break;
    }
    if (t.empty())
        return 1.0;
    if (!is_integral_unit(t))
        throw Error(ErrorCode::NotInDomain, "disc point evaluated at a non-integral dilation " + to_string(t));
    const Rational& q = t.terms().front().second;
    if (sgn(q) < 0)
        throw Error(ErrorCode::NotInDomain, "disc point evaluated at a negative dilation");
    // integer power by squaring; 0^0 = 1 is handled above
    Complex r = 1, b = w;
    for (unsigned long n = q.get_num().get_ui(); n != 0; n >>= 1) {
        if (n & 1)
            r *= b;
        b *= b;
    }
    return r;
}

std::string_view family_name(Family f)
{
    switch (f) {
    case Family::D1: return "D1";
    case Family::D2: return "D2";
    case Family::D3: return "D3";
    case Family::D4: return "D4";
    case Family::Chi0: return "Chi0";
    }
    return "?";
}

TripleCharacter TripleCharacter::d1(APPoint p)
{
    return {Family::D1, std::move(p), VSide::at_infinity()};
}

TripleCharacter TripleCharacter::d2(APPoint p)
{
    return {Family::D2, std::move(p), VSide::at_infinity()};
}

TripleCharacter TripleCharacter::d3(VSide w)
{
    return {Family::D3, APPoint::at_infinity(), std::move(w)};
}

TripleCharacter TripleCharacter::d4(VSide w)
{
    return {Family::D4, APPoint::at_infinity(), std::move(w)};
}

TripleCharacter TripleCharacter::chi0(VSide w)
{
    return {Family::Chi0, APPoint::at_infinity(), std::move(w)};
}

namespace {

void require_domain(const Element& x, const AtomTable& table, double guard)
{
    if (!support_predicate(x, AlgebraId::AphGplus, table, guard))
        throw Error(ErrorCode::NotInDomain, "character evaluated outside the triple semigroup algebra");
}

// Which index of a term carries the character's nontrivial value; the other
// two must vanish for the term to contribute.
enum class Live { lam, mu, t_with_lam, t_with_mu, t };

Live live_index(Family f)
{
    switch (f) {
    case Family::D1: return Live::lam;
    case Family::D2: return Live::mu;
    case Family::D3: return Live::t_with_lam;
    case Family::D4: return Live::t_with_mu;
    case Family::Chi0: return Live::t;
    }
    return Live::t;
}

bool term_survives(const TermKey& k, Live live)
{
    switch (live) {
    case Live::lam: return k.mu.empty() && k.t.empty();
    case Live::mu: return k.lam.empty() && k.t.empty();
    case Live::t_with_lam: return k.mu.empty();
    case Live::t_with_mu: return k.lam.empty();
    case Live::t: return k.lam.empty() && k.mu.empty();
    }
    return false;
}

Complex term_value(const TripleCharacter& chi, const TermKey& k, const AtomTable& table)
{
    switch (chi.family) {
    case Family::D1: return chi.point.value(k.lam, table);
    case Family::D2: return chi.point.value(k.mu, table);
    default: return chi.vside.value(k.t, table);
    }
}

std::optional<Scalar> exact_ap(const APPoint& p, const Frequency& lam)
{
    if (p.infinity)
        return lam.empty() ? Scalar(1) : Scalar(0);
    if (lam.empty())
        return Scalar(1);
    if (p.y != 0)
        return std::nullopt;
    return p.c.value(lam);
}

std::optional<Scalar> exact_vside(const VSide& w, const DilationIndex& t)
{
    if (t.empty())
        return Scalar(1);
    switch (w.kind) {
    case VSide::Kind::infinity: return Scalar(0);
    case VSide::Kind::finite:
        if (w.y != 0)
            return std::nullopt;
        return w.c.value(t);
    case VSide::Kind::disc:
        if (w.w == Complex(0))
            return Scalar(0);
        if (w.w == Complex(1))
            return Scalar(1);
        return std::nullopt;
    }
    return std::nullopt;
}

std::vector<DilationIndex> dilation_indices(const Element& x)
{
    std::vector<DilationIndex> out;
    for (const auto& [k, c] : x)
        if (std::find(out.begin(), out.end(), k.t) == out.end())
            out.push_back(k.t);
    return out;
}

} // namespace

CharacterValue eval_character(const TripleCharacter& chi, const Element& x, const AtomTable& table, double guard)
{
    require_domain(x, table, guard);
    const Live live = live_index(chi.family);
    Complex sum = 0;
    for (const auto& [k, c] : x) {
        if (!term_survives(k, live))
            continue;
        const Complex v = term_value(chi, k, table);
        if (v != Complex(0))
            sum += scalar_numeric(c, table) * v;
    }
    return {sum, chi.trusted()};
}

std::optional<Scalar> eval_character_exact(const TripleCharacter& chi, const Element& x, const AtomTable& table,
                                           double guard)
{
    require_domain(x, table, guard);
    const Live live = live_index(chi.family);
    Scalar sum = 0;
    for (const auto& [k, c] : x) {
        if (!term_survives(k, live))
            continue;
        std::optional<Scalar> v;
        switch (chi.family) {
        case Family::D1: v = exact_ap(chi.point, k.lam); break;
        case Family::D2: v = exact_ap(chi.point, k.mu); break;
        default: v = exact_vside(chi.vside, k.t); break;
        }
        if (!v)
            return std::nullopt;
        sum = sum + c * *v;
    }
    return sum;
}

Complex composite_functional(const Element& x, Axis axis, const DilationIndex& t, const AtomTable& table)
{
    if (axis == Axis::H)
        throw Error(ErrorCode::AxisMismatch, "composite functional takes axis E or Z");
    const Element slice = coeff_map(coeff_map(x, Axis::H, t), axis, Frequency{});
    // x₁ evaluates at 0: the sum of all coefficients
    Complex sum = 0;
    for (const auto& [k, c] : slice)
        sum += scalar_numeric(c, table);
    return sum;
}

Complex composite_generating(const Element& x, Axis axis, const VSide& w, const AtomTable& table)
{
    Complex sum = 0;
    for (const auto& t : dilation_indices(x)) {
        const Complex wt = w.value(t, table);
        if (wt != Complex(0))
            sum += wt * composite_functional(x, axis, t, table);
    }
    return sum;
}

Complex aap_eval(const Element& f, const APPoint& p, const AtomTable& table, double guard)
{
    Complex sum = 0;
    for (const auto& [k, c] : f) {
        if (!k.mu.empty() || !k.t.empty())
            throw Error(ErrorCode::NotInDomain, "AP evaluation needs an element with only M-support");
        if (freq_sign(k.lam, table, guard) == Sign::negative)
            throw Error(ErrorCode::NotAnalytic, "negative frequency " + to_string(k.lam));
        sum += scalar_numeric(c, table) * p.value(k.lam, table);
    }
    return sum;
}

Element arens_automorphism(const Element& f, const BohrCharacter& c, const DilationIndex& k, const AtomTable& table,
                           double guard)
{
    std::vector<Element::Term> raw;
    raw.reserve(f.size());
    for (const auto& [key, coeff] : f) {
        if (!key.mu.empty() || !key.t.empty())
            throw Error(ErrorCode::NotInDomain, "Arens automorphism needs an element with only M-support");
        if (freq_sign(key.lam, table, guard) == Sign::negative)
            throw Error(ErrorCode::NotAnalytic, "negative frequency " + to_string(key.lam));
        const PhaseExponent ang = c.angle(key.lam);
        raw.emplace_back(TermKey{freq_scale_exp(key.lam, k), {}, {}},
                         ang.empty() ? coeff : coeff * Scalar::phase(ang));
    }
    return Element::from_unsorted(std::move(raw));
}

} // namespace tsalg
