#pragma once

#include <complex>

#include "tsalg/algebra.hpp"

namespace tsalg {

using Complex = std::complex<double>;

template <>
inline bool is_zero<Complex>(const Complex& z)
{
    return z == Complex(0, 0);
}

struct NumericTag;
/// Element with floating-point coefficients over the same exact keys; the
/// output of averaging operations whose weights are transcendental.
using NumericElement = LinComb<TermKey, Complex, NumericTag>;

NumericElement to_numeric(const Element& x, const AtomTable& table);
double l1_norm(const NumericElement& x);
double l1_distance(const NumericElement& x, const NumericElement& y);

} // namespace tsalg
