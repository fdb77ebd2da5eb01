#pragma once

// Gaussian wave packets on L²(ℝ): closed-form action of M_λ, D_μ, V_t,
// inner products, the left regular representation and numeric demos.

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <vector>

#include "tsalg/algebra.hpp"
#include "tsalg/approx.hpp"
#include "tsalg/numeric_element.hpp"

namespace tsalg {

/// amp·exp(-a(x-b)² + icx) with Re a > 0.
struct GaussianPacket {
    Complex amp = 1;
    Complex a = 1;
    Complex b = 0;
    Complex c = 0;
};

using PacketSum = std::vector<GaussianPacket>;

/// Throws DivergentPacket unless Re a > 0.
GaussianPacket make_packet(Complex amp, Complex a, Complex b, Complex c);

// One-letter actions (M_λf = e^{iλx}f, D_μf = f(x-μ), V_tf = e^{t/2}f(e^t x)).
GaussianPacket apply_m(const GaussianPacket& p, double lam);
GaussianPacket apply_d(const GaussianPacket& p, double mu);
GaussianPacket apply_v(const GaussianPacket& p, double t);

/// ∫ f ḡ dx for single packets: with P = a + ā', m = (ab + ā'b̄')/P and
/// κ = c - c̄',  A·Ā'·√(π/P)·exp(-(aā'/P)(b - b̄')² + iκm - κ²/(4P)).
/// Throws DivergentPacket if Re P <= 0.
Complex packet_inner(const GaussianPacket& f, const GaussianPacket& g);
Complex packet_inner(const PacketSum& f, const PacketSum& g);
double packet_norm(const PacketSum& f);

/// Pointwise value (for quadrature oracles).
Complex packet_value(const GaussianPacket& p, double x);

/// Merges packets whose parameters agree to rounding level, measured in the
/// packet's own units: |Δa|/Re a, |Δb|·√Re a and |Δc|/√Re a all below tol.
/// Amplitudes add; packets with zero amplitude are dropped.
PacketSum merge_packets(const PacketSum& f, double tol = 1e-11);

PacketSum scaled(const PacketSum& f, Complex s);
PacketSum operator+(PacketSum f, const PacketSum& g);
PacketSum operator-(PacketSum f, const PacketSum& g);

/// ‖f - g‖ after merging equal packets, so that agreement is resolved far
/// below the √ε floor of the expanded Gram form.
double difference_norm(const PacketSum& f, const PacketSum& g);

/// Each monomial acts as V_t, then D_μ, then M_λ, scaled by its coefficient;
/// terms × packets entries, unmerged.
PacketSum apply_element(const Element& x, const PacketSum& f, const AtomTable& table);
/// Literal composition of a word: the rightmost letter acts first.
PacketSum apply_word(std::span<const Letter> word, const PacketSum& f, const AtomTable& table);

enum class Relation { weyl, dil_m, dil_d };

/// ‖(LHS - RHS)f‖ for M_λD_μ = e^{iλμ}D_μM_λ (a = λ, b = μ),
/// V_tM_λ = M_{e^tλ}V_t (a = t, b = λ) or V_tD_μ = D_{e^{-t}μ}V_t (a = t, b = μ),
/// each side applied letter by letter.
double relation_residual(Relation rel, double a, double b, const PacketSum& f);

struct PacketSampler {
    double a_min = 0.02;
    double a_max = 50;
    double b_max = 20;
    double c_max = 20;
};

/// Random unit-amplitude packet: a log-uniform in [a_min, a_max], b and c
/// uniform in [-b_max, b_max] and [-c_max, c_max].
GaussianPacket sample_packet(std::mt19937_64& rng, const PacketSampler& s = {});

/// max over `trials` sampled packets of ‖x f‖/‖f‖; deterministic in seed.
double norm_lower_bound(const Element& x, int trials, std::uint64_t seed, const AtomTable& table,
                        const PacketSampler& s = {});

// ---------------------------------------------------------------------------
// Left regular representation on ℓ²(G, L²)

/// Finitely supported map s ↦ packet sum; keys live on the grading axis.
using LRVector = std::map<CoeffIndex, PacketSum>;

/// δ_{s,ξ}
LRVector lr_delta(const CoeffIndex& s, const PacketSum& xi);
double lr_norm2(const LRVector& v);

/// (π̃ ⋊ Λ)(x)v: a term A·U_s of x (U = D for translation, M for
/// multiplication, V for dilation grading) sends the component at u to
/// s + u, acted on by α_{-(s+u)}(A) = U_{-(s+u)} A U_{s+u}.
LRVector lr_apply(const Element& x, const LRVector& v, Grading g, const AtomTable& table);

/// Both sides of ‖x·δ_{0,ξ}‖² = Σ_s ‖α_{-s}(E_s(x))ξ‖², the right side via
/// coeff_map and literal conjugation of the packets.
struct ColumnIdentity {
    double lhs;
    double rhs;
};
ColumnIdentity column_identity(const Element& x, const PacketSum& xi, Grading g, const AtomTable& table);

// ---------------------------------------------------------------------------
// WOT compressions

struct WotStep {
    std::int64_t n;   // M for translation, n for dilation modes
    double error;     // |⟨compress(x)f, g⟩ - ⟨limit·f, g⟩|
    double relative;  // error / (‖f‖‖g‖)
};

struct WotReport {
    std::vector<WotStep> steps;
    Element limit;
    int non_monotone = 0; // steps whose error exceeds the previous one
    bool decreasing = false; // at most 20% non-monotone steps
    bool converged = false;  // final relative error below the tolerance
};

/// The limit of the compressions: H₀(x) (translation), Σc_{λ,0,t}V_t
/// (dilation_in) or Σc_{0,μ,t}V_t (dilation_out).
Element compression_limit(const Element& x, CompressMode::Kind mode);

/// Throws ScheduleTooShort for fewer than 3 schedule entries.
WotReport wot_compression_demo(const Element& x, const PacketSum& f, const PacketSum& g, CompressMode::Kind mode,
                               std::span<const std::int64_t> schedule, double tolerance, const AtomTable& table);

// ---------------------------------------------------------------------------
// Fourier–Plancherel transform (Ff)(ξ) = (2π)^{-1/2} ∫ f(x)e^{-iξx} dx

GaussianPacket fourier(const GaussianPacket& p);
GaussianPacket inverse_fourier(const GaussianPacket& p);
PacketSum fourier(const PacketSum& f);
PacketSum inverse_fourier(const PacketSum& f);

/// |⟨(F M_λ F⁻¹ - D_λ)f, g⟩|, or with dual = true |⟨(F D_λ F⁻¹ - M_{-λ})f, g⟩|.
double fourier_conjugation_check(double lam, const PacketSum& f, const PacketSum& g, bool dual = false);

} // namespace tsalg
