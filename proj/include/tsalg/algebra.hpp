#pragma once

// Generalized trigonometric polynomials Σ c·M_λ D_μ V_t in canonical M-D-V
// order, with the ring operations of the triple semigroup algebra.

#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "tsalg/bohr.hpp"
#include "tsalg/exactnum.hpp"

namespace tsalg {

struct TermKey {
    Frequency lam;
    Frequency mu;
    DilationIndex t;

    friend bool operator==(const TermKey& a, const TermKey& b)
    {
        return a.lam == b.lam && a.mu == b.mu && a.t == b.t;
    }
    friend bool operator!=(const TermKey& a, const TermKey& b) { return !(a == b); }
    friend bool operator<(const TermKey& a, const TermKey& b)
    {
        if (a.lam != b.lam)
            return a.lam < b.lam;
        if (a.mu != b.mu)
            return a.mu < b.mu;
        return a.t < b.t;
    }
};

struct ElementTag;
/// Canonical finite sum of monomials c·M_lam D_mu V_t; never holds a zero
/// coefficient.
using Element = LinComb<TermKey, Scalar, ElementTag>;

struct Monomial {
    Scalar coeff;
    Frequency lam;
    Frequency mu;
    DilationIndex t;

    Element to_element() const { return Element::single(TermKey{lam, mu, t}, coeff); }
};

Element identity_element();
Element scalar_element(const Scalar& c);
Element M(const Frequency& lam);
Element D(const Frequency& mu);
Element V(const DilationIndex& t);

struct Letter {
    enum class Kind { M, D, V, Phase };

    Kind kind = Kind::Phase;
    Frequency freq;      // M, D
    DilationIndex dil;   // V
    Scalar phase = 1;    // Phase

    static Letter m(Frequency f) { return {Kind::M, std::move(f), {}, 1}; }
    static Letter d(Frequency f) { return {Kind::D, std::move(f), {}, 1}; }
    static Letter v(DilationIndex t) { return {Kind::V, {}, std::move(t), 1}; }
    static Letter scalar(Scalar c) { return {Kind::Phase, {}, {}, std::move(c)}; }
};

/// Rewrites a word to its M-D-V normal form:
///   D_μ M_λ → e^{-iλμ} M_λ D_μ,  V_t M_λ → M_{e^t λ} V_t,  V_t D_μ → D_{e^{-t} μ} V_t.
/// Like letters merge and phases multiply into the coefficient.
Monomial normalize_word(std::span<const Letter> word);

Element mul(const Element& x, const Element& y);
Element adjoint(const Element& x);
Element pow(const Element& x, unsigned n);

/// Σ |c|: exact amplitude modulus for single-phase coefficients, numeric otherwise.
double l1_norm(const Element& x, const AtomTable& table);

/// Squared moduli of all coefficients when every coefficient is a single
/// phase (so |c|² is an exact rational); nullopt otherwise.
std::optional<std::vector<Rational>> exact_squared_moduli(const Element& x);

enum class Axis { E, Z, H };
using CoeffIndex = std::variant<Frequency, DilationIndex>;

/// E_s: terms with μ = s, D_s stripped, giving c·M_λ V_t.
/// Z_m: terms with λ = m, rewritten in D-first order, giving c·e^{imμ}·D_μ V_t.
/// H_k: terms with t = k, V_k stripped, giving c·M_λ D_μ.
Element coeff_map(const Element& x, Axis axis, const CoeffIndex& index);
inline Element expect_E(const Element& x, const Frequency& s) { return coeff_map(x, Axis::E, s); }
inline Element expect_Z(const Element& x, const Frequency& m) { return coeff_map(x, Axis::Z, m); }
inline Element contract_H(const Element& x, const DilationIndex& k) { return coeff_map(x, Axis::H, k); }

enum class AlgebraId { Bp, Ap, BphG, AphGplus, AphGplusAdjoint };

bool support_predicate(const Element& x, AlgebraId alg, const AtomTable& table,
                       double guard = kDefaultSignGuard);

/// Least translation index present (numeric order, exact key order on ties)
/// together with E_m(x). Throws EmptyElement on zero.
std::pair<Frequency, Element> first_coeff(const Element& x, const AtomTable& table);

struct AutomorphismSpec {
    DilationIndex t;              // Ad(V_t) scaling: λ ↦ e^t λ, μ ↦ e^{-t} μ
    BohrCharacter d;              // twist on the multiplication side
    BohrCharacter c;              // twist on the translation side
    DilationCharacter vgauge;     // V_s ↦ e^{i·vgauge(s)} V_s
    bool flip = false;            // swap M and D; only legal in check_flip_contradiction

    /// d and c trivial: the form required on the triple algebra.
    bool admissible_for_triple() const { return d.trivial() && c.trivial(); }
};

/// c·M_λ D_μ V_s ↦ c·d(λ)c(μ)e^{i·vgauge(s)}·M_{e^t λ} D_{e^{-t} μ} V_s.
/// Throws IllegalFlip when spec.flip is set.
Element apply_automorphism(const Element& x, const AutomorphismSpec& spec);

/// Verifies that M_λ ↦ D_{k1 λ}, D_μ ↦ M_{k2 μ} cannot respect the Weyl
/// relation: the images of M_λD_μ and e^{iλμ}D_μM_λ are compared in normal
/// form at (λ,μ) = (1,1) and (1,2). Returns true when the contradiction is
/// established at both points. Throws InvalidScale unless k1, k2 > 0.
bool check_flip_contradiction(double k1, double k2);

struct CompressMode {
    enum class Kind { translation, dilation_in, dilation_out };
    Kind kind = Kind::translation;
    long long shift = 0;       // translation: M
    DilationIndex n;           // dilation modes

    static CompressMode translation(long long m) { return {Kind::translation, m, {}}; }
    static CompressMode dilation_in(DilationIndex n) { return {Kind::dilation_in, 0, std::move(n)}; }
    static CompressMode dilation_out(DilationIndex n) { return {Kind::dilation_out, 0, std::move(n)}; }
};

/// D_M x D_M*, V_n* x V_n or V_n x V_n*, normalized exactly.
Element compress(const Element& x, const CompressMode& mode);

/// The support's distinct frequency atoms (for collision warnings).
std::vector<FrequencyAtom> atoms_of(const Element& x);

} // namespace tsalg
