#include "tsalg/numeric_element.hpp"

namespace tsalg {

NumericElement to_numeric(const Element& x, const AtomTable& table)
{
    std::vector<NumericElement::Term> raw;
    raw.reserve(x.size());
    for (const auto& [k, c] : x)
        raw.emplace_back(k, scalar_numeric(c, table));
    return NumericElement::from_unsorted(std::move(raw));
}

double l1_norm(const NumericElement& x)
{
    double s = 0;
    for (const auto& [k, c] : x)
        s += std::abs(c);
    return s;
}

double l1_distance(const NumericElement& x, const NumericElement& y)
{
    return l1_norm(x - y);
}

} // namespace tsalg
