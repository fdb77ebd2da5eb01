#pragma once

// Bochner–Fejér summation, gauge twists, Cesàro means and recurrence times.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "tsalg/algebra.hpp"
#include "tsalg/numeric_element.hpp"

namespace tsalg {

/// A ℚ-basis chosen as a subset of the inputs (in input order), with exact
/// coordinates for every input. Vec is Frequency or DilationIndex.
template <class Vec>
class RationalBasisT {
public:
    RationalBasisT() = default;
    explicit RationalBasisT(std::span<const Vec> inputs)
    {
        for (const auto& v : inputs)
            insert(v);
    }

    const std::vector<Vec>& basis() const { return basis_; }
    std::size_t size() const { return basis_.size(); }

    /// Exact coordinates of v over the basis (length size()), or nullopt when
    /// v is outside the span.
    std::optional<std::vector<Rational>> coordinates(const Vec& v) const
    {
        std::vector<Rational> coord;
        Vec rem = reduce(v, coord);
        if (!rem.empty())
            return std::nullopt;
        coord.resize(basis_.size());
        return coord;
    }

    /// Adds v to the basis if it is independent; returns true if it was added.
    bool insert(const Vec& v)
    {
        std::vector<Rational> coord;
        Vec rem = reduce(v, coord);
        if (rem.empty())
            return false;
        // rem = v - Σ coord_j b_j; as a combination of basis vectors it is
        // e_new - coord.
        Row row;
        row.transform.assign(basis_.size() + 1, Rational(0));
        for (std::size_t j = 0; j < coord.size(); ++j)
            row.transform[j] = -coord[j];
        row.transform[basis_.size()] = 1;
        row.pivot = rem.terms().front().first;
        row.pivot_coeff = rem.terms().front().second;
        row.vec = std::move(rem);
        rows_.push_back(std::move(row));
        basis_.push_back(v);
        return true;
    }

private:
    using Key = typename Vec::key_type;

    struct Row {
        Vec vec;                         // reduced vector, zero at earlier pivots
        Key pivot;
        Rational pivot_coeff;
        std::vector<Rational> transform; // vec = Σ transform_j · basis_j
    };

    Vec reduce(const Vec& v, std::vector<Rational>& coord) const
    {
        coord.assign(basis_.size(), Rational(0));
        Vec w = v;
        for (const auto& row : rows_) {
            const Rational* a = w.find(row.pivot);
            if (a == nullptr)
                continue;
            Rational f = *a / row.pivot_coeff;
            w -= row.vec.scaled(f);
            for (std::size_t j = 0; j < row.transform.size(); ++j)
                coord[j] += f * row.transform[j];
        }
        return w;
    }

    std::vector<Vec> basis_;
    std::vector<Row> rows_;
};

using RationalBasis = RationalBasisT<Frequency>;
using DilationBasis = RationalBasisT<DilationIndex>;

RationalBasis rational_basis(std::span<const Frequency> freqs);

enum class Grading { translation, multiplication, dilation };

/// Distinct nonzero grading indices of x's support, in key order.
std::vector<Frequency> frequency_support(const Element& x, Grading g);
std::vector<DilationIndex> dilation_support(const Element& x);

struct BFSpec {
    unsigned m = 1;
    Grading grading = Grading::translation;
    /// Strict: a support index outside the span of the first m basis vectors
    /// throws BasisTooShort. Lenient: such terms get weight 0.
    bool strict = true;
};

struct BFWeight {
    TermKey key;
    Rational weight;     // Π_j (1 - |ν_j|/(m!)²), or 0 if the term is omitted
    bool in_span = true; // index lies in the span of the first m basis vectors
    bool on_lattice = true;
};

/// Per-term weights of the Bochner–Fejér polynomial, computed support-side:
/// each index's coordinates r_j give ν_j = r_j·m!; coordinates past the basis
/// length count as ν_j = 0. Terms with non-integer ν or |ν_j| >= (m!)² are
/// omitted, as in the defining lattice sum.
std::vector<BFWeight> bochner_fejer_weights(const Element& x, const BFSpec& spec);
Element bochner_fejer(const Element& x, const BFSpec& spec);

/// Multiplies each coefficient by e^{iθ·numeric(index)}.
NumericElement gauge(const Element& x, Grading g, double theta, const AtomTable& table);
/// Exact gauge for rational θ; the dilation grading needs UNIT-only indices.
Element gauge_exact(const Element& x, Grading g, const Rational& theta);

/// Weight of a term with index ω under the trapezoid rule for
/// (1/2T)∫_{-T}^{T} e^{iuω} du with `steps` uniform intervals (closed form).
double trapezoid_gauge_weight(double omega, double T, int steps);

/// Trapezoid approximation of the Cesàro mean of the gauge orbit after
/// shifting the grading index by -s; converges to the s-th coefficient as
/// T → ∞. Shifted keys: translation (λ, μ-s, t); multiplication (λ-s, μ, t)
/// with the phase e^{isμ} of the D-first order; dilation (λ, μ, t-s).
NumericElement cesaro_mean(const Element& x, Grading g, const std::variant<Frequency, DilationIndex>& s, double T,
                           int steps, const AtomTable& table);
inline constexpr int kDefaultCesaroSteps = 4096;

/// The exact target of cesaro_mean: the s-th coefficient in the same keys.
NumericElement cesaro_limit(const Element& x, Grading g, const std::variant<Frequency, DilationIndex>& s,
                            const AtomTable& table);

/// Fejér-type factor Σ_{|ν|<N} (1 - |ν|/N) e^{iνx} = (1/N)(sin(Nx/2)/sin(x/2))².
double fejer_factor(unsigned N, double x);
/// K(t) = Π_{j<m} fejer_factor((m!)², t·β_j/m!). Throws InvalidArgument if
/// m exceeds the basis length.
double bf_kernel(const RationalBasis& basis, unsigned m, double t, const AtomTable& table);

/// Smallest M in [start, limit] with |e^{iλM} - 1| < eps for all λ; throws
/// NotFound otherwise.
std::int64_t recurrence_search(std::span<const double> freqs, double eps, std::int64_t limit, std::int64_t start = 1);

struct RecurrenceStep {
    std::int64_t time;
    double eps;
};

/// `count` recurrence times with ε halving from eps0, each search starting
/// after the previous time.
std::vector<RecurrenceStep> recurrence_schedule(std::span<const double> freqs, double eps0, int count,
                                                std::int64_t limit);

unsigned long factorial(unsigned m);

} // namespace tsalg
