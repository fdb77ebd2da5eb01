#pragma once

// Exact numbers for the operator algebra: dilation indices, frequencies,
// phase exponents and the scalar field of phase-sum fractions.

#include <complex>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "tsalg/errors.hpp"
#include "tsalg/linear_combination.hpp"

namespace tsalg {

using Rational = mpq_class;

template <>
inline bool is_zero<Rational>(const Rational& q)
{
    return sgn(q) == 0;
}

/// Copy in lowest terms; every public constructor taking a Rational applies it.
inline Rational canonical(Rational q)
{
    q.canonicalize();
    return q;
}

/// Canonical "p" or "p/q" text.
std::string to_string(const Rational& q);

/// Parses an exact rational from "12", "-3/4", "1.25" or "2.5e-3".
Rational parse_rational(std::string_view text);

inline constexpr std::string_view kOneAtom = "ONE";
inline constexpr std::string_view kUnitDilation = "UNIT";
inline constexpr double kDefaultSignGuard = 1e-9;

enum class GroupMode { Z, R };

/// Declared frequency atoms and dilation symbols with their numeric values.
/// ONE (value 1) is always atom 0 and UNIT (value 1) always dilation 0.
class AtomTable {
public:
    AtomTable();

    void add_atom(const std::string& name, double value);
    void add_dilation(const std::string& name, double value);
    void set_group_mode(GroupMode mode) { mode_ = mode; }

    GroupMode group_mode() const { return mode_; }
    bool has_atom(std::string_view name) const;
    bool has_dilation(std::string_view name) const;
    double atom_value(std::string_view name) const;
    double dilation_value(std::string_view name) const;

    const std::vector<std::pair<std::string, double>>& atoms() const { return atoms_; }
    const std::vector<std::pair<std::string, double>>& dilations() const { return dilations_; }

private:
    std::vector<std::pair<std::string, double>> atoms_;
    std::vector<std::pair<std::string, double>> dilations_;
    GroupMode mode_ = GroupMode::Z;
};

enum class Sign { negative, zero, positive };

// ---------------------------------------------------------------------------
// Dilation indices

struct DilationTag;
/// Exact rational combination of dilation symbols; numeric value Σ q·value(sym).
using DilationIndex = LinComb<std::string, Rational, DilationTag>;

DilationIndex unit_dilation(const Rational& q);
double numeric(const DilationIndex& t, const AtomTable& table);
/// Exact when only UNIT occurs, numeric (with guard) otherwise.
Sign dilation_sign(const DilationIndex& t, const AtomTable& table, double guard = kDefaultSignGuard);
/// True when t is q·UNIT with q an integer (or t = 0).
bool is_integral_unit(const DilationIndex& t);

// ---------------------------------------------------------------------------
// Frequencies

/// value(base)·e^{numeric(exp)}
struct FrequencyAtom {
    std::string base;
    DilationIndex exp;

    friend bool operator==(const FrequencyAtom& a, const FrequencyAtom& b)
    {
        return a.base == b.base && a.exp == b.exp;
    }
    friend bool operator!=(const FrequencyAtom& a, const FrequencyAtom& b) { return !(a == b); }
    friend bool operator<(const FrequencyAtom& a, const FrequencyAtom& b)
    {
        if (a.base != b.base)
            return a.base < b.base;
        return a.exp < b.exp;
    }
};

double numeric(const FrequencyAtom& atom, const AtomTable& table);

struct FrequencyTag;
using Frequency = LinComb<FrequencyAtom, Rational, FrequencyTag>;

/// q·ONE
Frequency rational_frequency(const Rational& q);
Frequency atom_frequency(const std::string& base, const Rational& q = 1, const DilationIndex& exp = {});

/// Shifts every atom's exponent by t (numeric value times e^{numeric(t)}).
Frequency freq_scale_exp(const Frequency& f, const DilationIndex& t);
double numeric(const Frequency& f, const AtomTable& table);

/// Exact zero test; exact sign when all coefficients agree (atom values are
/// positive); otherwise numeric, throwing IndeterminateSign inside the guard.
Sign freq_sign(const Frequency& f, const AtomTable& table, double guard = kDefaultSignGuard);

// ---------------------------------------------------------------------------
// Phase exponents

/// Product of at most two non-ONE atom bases times e^{numeric(exp)}. Atom
/// exponents add under multiplication, so (e^t λ)(e^{-t} μ) and λμ share a key.
struct PhaseKey {
    std::vector<std::string> bases; // sorted, ONE removed, size <= 2
    DilationIndex exp;

    friend bool operator==(const PhaseKey& a, const PhaseKey& b)
    {
        return a.bases == b.bases && a.exp == b.exp;
    }
    friend bool operator!=(const PhaseKey& a, const PhaseKey& b) { return !(a == b); }
    friend bool operator<(const PhaseKey& a, const PhaseKey& b)
    {
        if (a.bases != b.bases)
            return a.bases < b.bases;
        return a.exp < b.exp;
    }
};

PhaseKey make_phase_key(std::vector<std::string> bases, DilationIndex exp);
PhaseKey atom_product(const FrequencyAtom& a, const FrequencyAtom& b);
PhaseKey atom_key(const FrequencyAtom& a);
double numeric(const PhaseKey& key, const AtomTable& table);

struct PhaseTag;
using PhaseExponent = LinComb<PhaseKey, Rational, PhaseTag>;

PhaseExponent rational_phase(const Rational& q);
/// Exact product λ·μ of two frequencies.
PhaseExponent phase_product(const Frequency& lam, const Frequency& mu);
/// Embeds a frequency as a degree-1 phase exponent.
PhaseExponent phase_of(const Frequency& f);
double numeric(const PhaseExponent& theta, const AtomTable& table);

/// Lexicographic group order on phase exponents (compatible with addition).
bool phase_less(const PhaseExponent& a, const PhaseExponent& b);

// ---------------------------------------------------------------------------
// Gaussian rationals and phase sums

struct GaussQ {
    Rational re;
    Rational im;

    GaussQ() = default;
    GaussQ(const Rational& r) : re(r) { re.canonicalize(); }
    GaussQ(const Rational& r, const Rational& i) : re(r), im(i)
    {
        re.canonicalize();
        im.canonicalize();
    }
    GaussQ(int r) : re(r) {}

    GaussQ& operator+=(const GaussQ& o);
    GaussQ& operator-=(const GaussQ& o);
    GaussQ operator-() const { return GaussQ(-re, -im); }
    friend GaussQ operator+(GaussQ a, const GaussQ& b) { return a += b; }
    friend GaussQ operator-(GaussQ a, const GaussQ& b) { return a -= b; }
    friend GaussQ operator*(const GaussQ& a, const GaussQ& b);
    friend GaussQ operator/(const GaussQ& a, const GaussQ& b);
    friend bool operator==(const GaussQ& a, const GaussQ& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const GaussQ& a, const GaussQ& b) { return !(a == b); }
    friend bool operator<(const GaussQ& a, const GaussQ& b)
    {
        if (a.re != b.re)
            return a.re < b.re;
        return a.im < b.im;
    }

    GaussQ conj() const { return GaussQ(re, -im); }
    Rational norm2() const { return re * re + im * im; }
    std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }
};

template <>
inline bool is_zero<GaussQ>(const GaussQ& z)
{
    return sgn(z.re) == 0 && sgn(z.im) == 0;
}

struct PhaseSumTag;
/// Σ amp·e^{iθ}: the group ring of phase exponents over ℚ(i).
using PhaseSum = LinComb<PhaseExponent, GaussQ, PhaseSumTag>;

PhaseSum phase_sum_one();
PhaseSum multiply(const PhaseSum& a, const PhaseSum& b);
PhaseSum conj(const PhaseSum& a);
std::complex<double> numeric(const PhaseSum& s, const AtomTable& table);

// ---------------------------------------------------------------------------
// Scalars

/// Element of the fraction field of PhaseSum. Canonical form: zero has
/// denominator 1, monomial denominators are divided out, and otherwise the
/// least term of the denominator (in phase order) is exactly 1.
class Scalar {
public:
    Scalar();
    Scalar(int v);
    Scalar(const Rational& v);
    Scalar(const GaussQ& v);
    explicit Scalar(PhaseSum num);

    /// amp·e^{iθ}
    static Scalar phase(const PhaseExponent& theta, const GaussQ& amp = GaussQ(1));
    static Scalar fraction(PhaseSum num, PhaseSum den);

    const PhaseSum& numerator() const { return num_; }
    const PhaseSum& denominator() const { return den_; }

    bool is_zero() const { return num_.empty(); }
    bool is_polynomial() const;
    /// A single term amp·e^{iθ} (denominator 1).
    bool is_single_phase() const { return is_polynomial() && num_.size() == 1; }

    Scalar conj() const;
    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

private:
    void canonicalize();

    PhaseSum num_;
    PhaseSum den_;
};

template <>
inline bool is_zero<Scalar>(const Scalar& s)
{
    return s.is_zero();
}

enum class ScalarOp { add, mul, div, conj, neg };

/// Field operation dispatcher; conj and neg ignore b.
Scalar scalar_arith(const Scalar& a, const Scalar& b, ScalarOp op);

/// Complex value of a scalar. Throws NumericOverflow if the denominator
/// evaluates below 1e-300 in magnitude.
std::complex<double> scalar_numeric(const Scalar& s, const AtomTable& table);

/// Warnings for pairs of atoms whose numeric ratio lies within 1e-9 of a
/// rational with denominator <= 100 (the free model would then disagree
/// with the real line).
std::vector<std::string> collision_warnings(const AtomTable& table, std::span<const FrequencyAtom> atoms);

} // namespace tsalg
