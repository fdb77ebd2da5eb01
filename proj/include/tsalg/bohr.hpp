#pragma once

#include <complex>
#include <map>
#include <string>

#include "tsalg/exactnum.hpp"

namespace tsalg {

/// Computable Bohr character: an exact angle per frequency atom, extended
/// ℚ-linearly, c(Σ q_j a_j) = e^{i Σ q_j φ_j}. Unlisted atoms have angle 0.
/// Angles are phase exponents, so π enters through a declared atom.
class BohrCharacter {
public:
    BohrCharacter() = default;

    void set_angle(const FrequencyAtom& atom, PhaseExponent angle);
    const std::map<FrequencyAtom, PhaseExponent>& angles() const { return angles_; }
    bool trivial() const { return angles_.empty(); }

    PhaseExponent angle(const Frequency& lam) const;
    Scalar value(const Frequency& lam) const { return Scalar::phase(angle(lam)); }
    std::complex<double> numeric_value(const Frequency& lam, const AtomTable& table) const;

private:
    std::map<FrequencyAtom, PhaseExponent> angles_;
};

/// Character of the dilation group: an exact angle per dilation symbol,
/// c(t) = e^{i Σ q_s φ_s}.
class DilationCharacter {
public:
    DilationCharacter() = default;

    void set_angle(const std::string& symbol, PhaseExponent angle);
    const std::map<std::string, PhaseExponent>& angles() const { return angles_; }
    bool trivial() const { return angles_.empty(); }

    PhaseExponent angle(const DilationIndex& t) const;
    Scalar value(const DilationIndex& t) const { return Scalar::phase(angle(t)); }
    std::complex<double> numeric_value(const DilationIndex& t, const AtomTable& table) const;

private:
    std::map<std::string, PhaseExponent> angles_;
};

} // namespace tsalg
