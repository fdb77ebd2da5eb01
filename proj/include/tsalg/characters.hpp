#pragma once

// Classified characters of the parabolic and triple semigroup algebras.

#include <optional>
#include <string>

#include "tsalg/algebra.hpp"
#include "tsalg/numeric_element.hpp"

namespace tsalg {

/// Point of the maximal ideal space of the analytic almost periodic
/// functions: Finite(c, y) evaluates e^{iλx} to c(λ)e^{-λy}; Infinity sends
/// it to [λ = 0].
struct APPoint {
    bool infinity = false;
    BohrCharacter c;
    double y = 0;

    static APPoint finite(BohrCharacter c, double y);
    static APPoint at_infinity();
    /// Evaluation at 0: x₁(f) = f(0).
    static APPoint x1() { return finite({}, 0); }

    /// Value on e^{iλx}; λ must be >= 0.
    Complex value(const Frequency& lam, const AtomTable& table) const;
};

/// Value of a character on the dilation semigroup. In group mode Z a disc
/// point w (|w| <= 1) with χ(V_t) = w^t; in group mode R an AP point over
/// the dilation group, χ(V_t) = c(t)e^{-ty}, or Infinity (χ(V_t) = [t = 0]).
/// The distinguished point y₀ (χ(V_t) = 0 for t > 0) is w = 0 resp. Infinity.
struct VSide {
    enum class Kind { disc, finite, infinity };

    Kind kind = Kind::disc;
    Complex w = 0;
    DilationCharacter c;
    double y = 0;

    static VSide disc(Complex w);
    static VSide finite(DilationCharacter c, double y);
    static VSide at_infinity() { return {Kind::infinity, 0, {}, 0}; }
    static VSide y0(GroupMode mode) { return mode == GroupMode::Z ? disc(0) : at_infinity(); }

    bool is_y0() const;
    /// χ(V_t) for t >= 0.
    Complex value(const DilationIndex& t, const AtomTable& table) const;
};

enum class Family { D1, D2, D3, D4, Chi0 };

std::string_view family_name(Family f);

struct TripleCharacter {
    Family family = Family::Chi0;
    APPoint point;   // D1 (M-side), D2 (D-side)
    VSide vside;     // D3, D4, Chi0; D1/D2 implicitly use y₀

    static TripleCharacter d1(APPoint p);
    static TripleCharacter d2(APPoint p);
    static TripleCharacter d3(VSide w);
    static TripleCharacter d4(VSide w);
    static TripleCharacter chi0(VSide w);
    /// χ_∞(Σ c M_λ D_μ V_t) = c_{0,0,0}
    static TripleCharacter chi_inf(GroupMode mode) { return chi0(VSide::y0(mode)); }

    /// Chi0 away from y₀ is evaluated formally; its continuity is unknown.
    bool trusted() const { return family != Family::Chi0 || vside.is_y0(); }
};

struct CharacterValue {
    Complex value;
    bool trusted = true;
};

/// Multiplicative-linear evaluation termwise. Throws NotInDomain unless x
/// lies in the triple semigroup algebra (λ, μ, t >= 0).
CharacterValue eval_character(const TripleCharacter& chi, const Element& x, const AtomTable& table,
                              double guard = kDefaultSignGuard);

/// Exact value when every factor is exact (AP points with y = 0 or at
/// Infinity, V-side at y₀ or w ∈ {0}); nullopt otherwise.
std::optional<Scalar> eval_character_exact(const TripleCharacter& chi, const Element& x, const AtomTable& table,
                                           double guard = kDefaultSignGuard);

/// x₁∘E₀∘H_t (axis E) or x₁∘Z₀∘H_t (axis Z), composed literally through
/// coeff_map. Multiplicative for t = 0 only; for t > 0 it is a kernel
/// functional of the commutator ideal description.
Complex composite_functional(const Element& x, Axis axis, const DilationIndex& t, const AtomTable& table);

/// Σ_t χ_w(V_t)·(x₁∘E₀∘H_t)(x) (resp. Z₀), summed over the support's t.
/// Agrees with D3(w) (resp. D4(w)) and is multiplicative.
Complex composite_generating(const Element& x, Axis axis, const VSide& w, const AtomTable& table);

/// Σ c_λ·p(e^{iλx}) for f with only M-support. NotInDomain if f has D or V
/// factors, NotAnalytic if some λ < 0.
Complex aap_eval(const Element& f, const APPoint& p, const AtomTable& table, double guard = kDefaultSignGuard);

/// φ_{c,k}: c·M_λ ↦ c·c(λ)·M_{e^k λ}; exact. NotAnalytic if some λ < 0.
Element arens_automorphism(const Element& f, const BohrCharacter& c, const DilationIndex& k, const AtomTable& table,
                           double guard = kDefaultSignGuard);

} // namespace tsalg
