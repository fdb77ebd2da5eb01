#include "tsalg/bohr.hpp"

namespace tsalg {

void BohrCharacter::set_angle(const FrequencyAtom& atom, PhaseExponent angle)
{
    if (angle.empty())
        angles_.erase(atom);
    else
        angles_[atom] = std::move(angle);
}

PhaseExponent BohrCharacter::angle(const Frequency& lam) const
{
    PhaseExponent out;
    for (const auto& [atom, q] : lam) {
        auto it = angles_.find(atom);
        if (it != angles_.end())
            out += it->second.scaled(q);
    }
    return out;
}

std::complex<double> BohrCharacter::numeric_value(const Frequency& lam, const AtomTable& table) const
{
    return std::polar(1.0, numeric(angle(lam), table));
}

void DilationCharacter::set_angle(const std::string& symbol, PhaseExponent angle)
{
    if (angle.empty())
        angles_.erase(symbol);
    else
        angles_[symbol] = std::move(angle);
}

PhaseExponent DilationCharacter::angle(const DilationIndex& t) const
{
    PhaseExponent out;
    for (const auto& [sym, q] : t) {
        auto it = angles_.find(sym);
        if (it != angles_.end())
            out += it->second.scaled(q);
    }
    return out;
}

std::complex<double> DilationCharacter::numeric_value(const DilationIndex& t, const AtomTable& table) const
{
    return std::polar(1.0, numeric(angle(t), table));
}

} // namespace tsalg
