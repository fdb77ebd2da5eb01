#pragma once

// Membership in the commutator and function ideals, with certificates.

#include <string>
#include <utility>
#include <vector>

#include "tsalg/algebra.hpp"
#include "tsalg/numeric_element.hpp"

namespace tsalg {

struct IdealId {
    enum class Kind { Cp, CphG, I0, Jt };
    Kind kind = Kind::Cp;
    DilationIndex t; // Jt only, t > 0

    static IdealId cp() { return {Kind::Cp, {}}; }
    static IdealId cphg() { return {Kind::CphG, {}}; }
    static IdealId i0() { return {Kind::I0, {}}; }
    static IdealId jt(DilationIndex t) { return {Kind::Jt, std::move(t)}; }
};

/// Exact coefficient conditions:
///   Cp:   E₀(x) = Z₀(x) = 0 (no term with μ = 0 or λ = 0), ambient Ap.
///   CphG: c_{λ,0,0} = c_{0,μ,0} = c_{0,0,t} = 0 and, for every t,
///         Σ_λ c_{λ,0,t} = Σ_μ c_{0,μ,t} = 0; ambient the triple algebra.
///   I0, Jt (equal ideals): f(0) = c₀ = 0 on analytic M-only elements.
/// Throws NotInAmbient outside the ambient algebra, InvalidArgument for Jt
/// with t <= 0.
bool in_ideal(const Element& x, const IdealId& id, const AtomTable& table, double guard = kDefaultSignGuard);

/// Σ c·e^{iωx} with floating-point frequencies, sorted and merged.
using NumericAP = std::vector<std::pair<double, Complex>>;

/// Sorts by frequency and merges frequencies closer than 1e-9·max(1, |ω|).
NumericAP merge_frequencies(NumericAP terms);

/// One telescoping step: coeff·e^{iκx}·g_μ with g_μ = e^{iμx} - e^{iμe^t x}.
struct TelescopeStep {
    Complex coeff;
    double kappa;
    double mu;
};

struct Certificate {
    enum class Kind { commutator_pair, telescope };
    enum class Policy { exact, numeric };

    Kind kind = Kind::commutator_pair;
    Policy policy = Policy::exact;
    double tolerance = 1e-9;

    // commutator_pair: f·generator - generator·f = target exactly
    Element f;
    Element generator;
    Element target;

    // telescope: Σ steps = target_numeric up to the tolerance
    double t = 0;
    std::vector<TelescopeStep> steps;
    NumericAP target_numeric;
};

/// f = (1/(1 - e^{-iλs}))·M_λ with f·D_s - D_s·f = M_λ D_s. Throws
/// DegeneratePhase when λ or s is 0 and InvalidArgument when negative.
Certificate commutator_certificate(const Frequency& lam, const Frequency& s, const AtomTable& table,
                                   double guard = kDefaultSignGuard);

/// λ = ρe^{nt} with ρ ∈ [1, e^t): telescopes e^{iλx} - e^{ix} into J_t
/// generators; n steps of ±g along ρe^{kt} plus, when ρ > 1, the base step
/// -e^{iκx}·g_{(ρ-1)/(e^t-1)} with κ = 1 - (ρ-1)/(e^t-1).
Certificate jt_reduce(double lam, double t);

/// Expansion of the certificate minus its target: exact (as an Element) for
/// commutator pairs; for telescopes the largest merged coefficient.
double certificate_residual(const Certificate& c, const AtomTable& table);
bool verify_certificate(const Certificate& c, const AtomTable& table);

/// Multi-line listing of the generators, multipliers and residual.
std::string describe(const Certificate& c, const AtomTable& table);

} // namespace tsalg
