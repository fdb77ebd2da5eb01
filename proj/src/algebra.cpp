#include "tsalg/algebra.hpp"

#include <algorithm>
#include <cmath>

namespace tsalg {

Element identity_element()
{
    return Element::single(TermKey{}, Scalar(1));
}

Element scalar_element(const Scalar& c)
{
    return Element::single(TermKey{}, c);
}

Element M(const Frequency& lam)
{
    return Element::single(TermKey{lam, {}, {}}, Scalar(1));
}

Element D(const Frequency& mu)
{
    return Element::single(TermKey{{}, mu, {}}, Scalar(1));
}

Element V(const DilationIndex& t)
{
    return Element::single(TermKey{{}, {}, t}, Scalar(1));
}

// ---------------------------------------------------------------------------

namespace {

int rank(Letter::Kind k)
{
    switch (k) {
    case Letter::Kind::M: return 0;
    case Letter::Kind::D: return 1;
    case Letter::Kind::V: return 2;
    case Letter::Kind::Phase: break;
    }
    throw Error(ErrorCode::Internal, "phase letter in rewrite loop");
}

bool is_identity(const Letter& l)
{
    return l.kind == Letter::Kind::V ? l.dil.empty() : l.freq.empty();
}

// Applies one rewrite at the leftmost redex; false when the word is normal.
bool rewrite_once(std::vector<Letter>& w, Scalar& coeff)
{
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        Letter& a = w[i];
        Letter& b = w[i + 1];
        if (a.kind == b.kind) {
            if (a.kind == Letter::Kind::V)
                a.dil += b.dil;
            else
                a.freq += b.freq;
            w.erase(w.begin() + static_cast<std::ptrdiff_t>(i) + 1);
            if (is_identity(w[i]))
                w.erase(w.begin() + static_cast<std::ptrdiff_t>(i));
            return true;
        }
        if (rank(a.kind) <= rank(b.kind))
            continue;
        if (a.kind == Letter::Kind::D) {
            // D_μ M_λ = e^{-iλμ} M_λ D_μ
            coeff *= Scalar::phase(-phase_product(b.freq, a.freq));
        } else if (b.kind == Letter::Kind::M) {
            // V_t M_λ = M_{e^t λ} V_t
            b.freq = freq_scale_exp(b.freq, a.dil);
        } else {
            // V_t D_μ = D_{e^{-t} μ} V_t
            b.freq = freq_scale_exp(b.freq, -a.dil);
        }
        std::swap(a, b);
        return true;
    }
    return false;
}

} // namespace

Monomial normalize_word(std::span<const Letter> word)
{
    Monomial out;
    out.coeff = Scalar(1);
    std::vector<Letter> w;
    w.reserve(word.size());
    for (const auto& l : word) {
        if (l.kind == Letter::Kind::Phase)
            out.coeff *= l.phase;
        else if (!is_identity(l))
            w.push_back(l);
    }
    while (rewrite_once(w, out.coeff)) {
    }
    for (auto& l : w) {
        switch (l.kind) {
        case Letter::Kind::M: out.lam = std::move(l.freq); break;
        case Letter::Kind::D: out.mu = std::move(l.freq); break;
        case Letter::Kind::V: out.t = std::move(l.dil); break;
        case Letter::Kind::Phase: break;
        }
    }
    return out;
}

Element mul(const Element& x, const Element& y)
{
    std::vector<Element::Term> raw;
    raw.reserve(x.size() * y.size());
    for (const auto& [k1, c1] : x) {
        const DilationIndex neg_t = -k1.t;
        for (const auto& [k2, c2] : y) {
            // (c M_λ D_μ V_t)(c' M_λ' D_μ' V_t') = cc' e^{-i(e^t λ')μ} M_{λ+e^t λ'} D_{μ+e^{-t} μ'} V_{t+t'}
            Frequency lam2 = freq_scale_exp(k2.lam, k1.t);
            PhaseExponent theta = phase_product(lam2, k1.mu);
            Scalar c = c1 * c2;
            if (!theta.empty())
                c *= Scalar::phase(-theta);
            TermKey key{k1.lam + lam2, k1.mu + freq_scale_exp(k2.mu, neg_t), k1.t + k2.t};
            raw.emplace_back(std::move(key), std::move(c));
        }
    }
    return Element::from_unsorted(std::move(raw));
}

Element adjoint(const Element& x)
{
    std::vector<Element::Term> raw;
    raw.reserve(x.size());
    for (const auto& [k, c] : x) {
        const Letter word[] = {Letter::scalar(c.conj()), Letter::v(-k.t), Letter::d(-k.mu), Letter::m(-k.lam)};
        Monomial m = normalize_word(word);
        raw.emplace_back(TermKey{std::move(m.lam), std::move(m.mu), std::move(m.t)}, std::move(m.coeff));
    }
    return Element::from_unsorted(std::move(raw));
}

Element pow(const Element& x, unsigned n)
{
    Element r = identity_element();
    for (unsigned i = 0; i < n; ++i)
        r = mul(r, x);
    return r;
}

double l1_norm(const Element& x, const AtomTable& table)
{
    double s = 0;
    for (const auto& [k, c] : x) {
        if (c.is_single_phase())
            s += std::sqrt(c.numerator().terms()[0].second.norm2().get_d());
        else
            s += std::abs(scalar_numeric(c, table));
    }
    return s;
}

std::optional<std::vector<Rational>> exact_squared_moduli(const Element& x)
{
    std::vector<Rational> out;
    out.reserve(x.size());
    for (const auto& [k, c] : x) {
        if (!c.is_single_phase())
            return std::nullopt;
        out.push_back(c.numerator().terms()[0].second.norm2());
    }
    return out;
}

Element coeff_map(const Element& x, Axis axis, const CoeffIndex& index)
{
    const bool freq_index = std::holds_alternative<Frequency>(index);
    if ((axis == Axis::H) == freq_index)
        throw Error(ErrorCode::AxisMismatch,
                    axis == Axis::H ? "H takes a dilation index" : "E and Z take a frequency index");
    std::vector<Element::Term> raw;
    for (const auto& [k, c] : x) {
        switch (axis) {
        case Axis::E:
            if (k.mu == std::get<Frequency>(index))
                raw.emplace_back(TermKey{k.lam, {}, k.t}, c);
            break;
        case Axis::Z:
            if (k.lam == std::get<Frequency>(index)) {
                // c M_m D_μ = c e^{imμ} D_μ M_m
                PhaseExponent theta = phase_product(k.lam, k.mu);
                raw.emplace_back(TermKey{{}, k.mu, k.t}, theta.empty() ? c : c * Scalar::phase(theta));
            }
            break;
        case Axis::H:
            if (k.t == std::get<DilationIndex>(index))
                raw.emplace_back(TermKey{k.lam, k.mu, {}}, c);
            break;
        }
    }
    return Element::from_unsorted(std::move(raw));
}

bool support_predicate(const Element& x, AlgebraId alg, const AtomTable& table, double guard)
{
    for (const auto& [k, c] : x) {
        switch (alg) {
        case AlgebraId::Bp:
            if (!k.t.empty())
                return false;
            break;
        case AlgebraId::Ap:
            if (!k.t.empty() || freq_sign(k.lam, table, guard) == Sign::negative ||
                freq_sign(k.mu, table, guard) == Sign::negative)
                return false;
            break;
        case AlgebraId::BphG:
            break;
        case AlgebraId::AphGplus:
            if (freq_sign(k.lam, table, guard) == Sign::negative || freq_sign(k.mu, table, guard) == Sign::negative ||
                dilation_sign(k.t, table, guard) == Sign::negative)
                return false;
            break;
        case AlgebraId::AphGplusAdjoint:
            if (freq_sign(k.lam, table, guard) == Sign::positive || freq_sign(k.mu, table, guard) == Sign::positive ||
                dilation_sign(k.t, table, guard) == Sign::positive)
                return false;
            break;
        }
    }
    return true;
}

std::pair<Frequency, Element> first_coeff(const Element& x, const AtomTable& table)
{
    if (x.empty())
        throw Error(ErrorCode::EmptyElement, "first_coeff of the zero element");
    const Frequency* best = nullptr;
    double best_value = 0;
    for (const auto& [k, c] : x) {
        double v = numeric(k.mu, table);
        if (best == nullptr || v < best_value || (v == best_value && k.mu < *best)) {
            best = &k.mu;
            best_value = v;
        }
    }
    return {*best, expect_E(x, *best)};
}

Element apply_automorphism(const Element& x, const AutomorphismSpec& spec)
{
    if (spec.flip)
        throw Error(ErrorCode::IllegalFlip, "the M/D flip is not an automorphism");
    std::vector<Element::Term> raw;
    raw.reserve(x.size());
    const DilationIndex neg_t = -spec.t;
    for (const auto& [k, c] : x) {
        PhaseExponent theta = spec.d.angle(k.lam) + spec.c.angle(k.mu) + spec.vgauge.angle(k.t);
        Scalar coeff = theta.empty() ? c : c * Scalar::phase(theta);
        raw.emplace_back(TermKey{freq_scale_exp(k.lam, spec.t), freq_scale_exp(k.mu, neg_t), k.t}, std::move(coeff));
    }
    return Element::from_unsorted(std::move(raw));
}

bool check_flip_contradiction(double k1, double k2)
{
    if (!(k1 > 0) || !(k2 > 0) || !std::isfinite(k1) || !std::isfinite(k2))
        throw Error(ErrorCode::InvalidScale, "flip scales must be positive and finite");
    // k1, k2 enter as fresh atoms so the check stays exact for any real scale.
    AtomTable table;
    table.add_atom("K1", k1);
    table.add_atom("K2", k2);

    bool contradiction = true;
    bool numeric_witness = false;
    for (int mu_value : {1, 2}) {
        const Frequency lam = rational_frequency(1);
        const Frequency mu = rational_frequency(mu_value);
        const Frequency k1lam = atom_frequency("K1", 1);
        const Frequency k2mu = atom_frequency("K2", mu_value);

        // Flipped image of M_λ D_μ ...
        const Letter lhs_word[] = {Letter::d(k1lam), Letter::m(k2mu)};
        // ... and of e^{iλμ} D_μ M_λ, which must agree if the flip were multiplicative.
        const Letter rhs_word[] = {Letter::scalar(Scalar::phase(phase_product(lam, mu))), Letter::m(k2mu),
                                   Letter::d(k1lam)};
        Monomial lhs = normalize_word(lhs_word);
        Monomial rhs = normalize_word(rhs_word);
        if (lhs.to_element() == rhs.to_element())
            contradiction = false;

        // The two differ by e^{iλμ(1+k1k2)}.
        std::complex<double> ratio = scalar_numeric(rhs.coeff / lhs.coeff, table);
        if (std::abs(ratio - 1.0) > 1e-12)
            numeric_witness = true;
    }
    return contradiction && numeric_witness;
}

Element compress(const Element& x, const CompressMode& mode)
{
    switch (mode.kind) {
    case CompressMode::Kind::translation: {
        Frequency m = rational_frequency(Rational(static_cast<long>(mode.shift)));
        return mul(mul(D(m), x), D(-m));
    }
    case CompressMode::Kind::dilation_in:
        return mul(mul(V(-mode.n), x), V(mode.n));
    case CompressMode::Kind::dilation_out:
        return mul(mul(V(mode.n), x), V(-mode.n));
    }
    throw Error(ErrorCode::Internal, "unknown compression mode");
}

std::vector<FrequencyAtom> atoms_of(const Element& x)
{
    std::vector<FrequencyAtom> out;
    for (const auto& [k, c] : x) {
        for (const auto& [a, q] : k.lam)
            out.push_back(a);
        for (const auto& [a, q] : k.mu)
            out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace tsalg
