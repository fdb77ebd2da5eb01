#include "tsalg/ideals.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "tsalg/text.hpp"

namespace tsalg {

namespace {

void require(bool ok, const char* what)
{
    if (!ok)
        throw Error(ErrorCode::NotInAmbient, what);
}

bool in_cp(const Element& x)
{
    for (const auto& [k, c] : x)
        if (k.lam.empty() || k.mu.empty())
            return false;
    return true;
}

bool in_cphg(const Element& x)
{
    // per t: Σ_λ c_{λ,0,t} and Σ_μ c_{0,μ,t}
    std::map<DilationIndex, std::pair<Scalar, Scalar>> sums;
    for (const auto& [k, c] : x) {
        if (k.lam.empty() && k.mu.empty())
            return false; // c_{0,0,t}
        if (k.t.empty() && (k.lam.empty() || k.mu.empty()))
            return false; // c_{λ,0,0}, c_{0,μ,0}
        auto& s = sums[k.t];
        if (k.mu.empty())
            s.first += c;
        if (k.lam.empty())
            s.second += c;
    }
    for (const auto& [t, s] : sums)
        if (!s.first.is_zero() || !s.second.is_zero())
            return false;
    return true;
}

bool in_i0(const Element& x, const AtomTable& table, double guard)
{
    Scalar total = 0;
    for (const auto& [k, c] : x) {
        require(k.mu.empty() && k.t.empty(), "I0 lives in the analytic functions: M-only support");
        require(freq_sign(k.lam, table, guard) != Sign::negative, "I0 lives in the analytic functions: λ >= 0");
        if (k.lam.empty())
            return false; // x_∞(f) = c₀
        total += c;
    }
    return total.is_zero();
}

} // namespace

bool in_ideal(const Element& x, const IdealId& id, const AtomTable& table, double guard)
{
    switch (id.kind) {
    case IdealId::Kind::Cp:
        require(support_predicate(x, AlgebraId::Ap, table, guard), "Cp lives in the parabolic algebra");
        return in_cp(x);
    case IdealId::Kind::CphG:
        require(support_predicate(x, AlgebraId::AphGplus, table, guard), "CphG lives in the triple semigroup algebra");
        return in_cphg(x);
    case IdealId::Kind::Jt:
        if (dilation_sign(id.t, table, guard) != Sign::positive)
            throw Error(ErrorCode::InvalidArgument, "J_t needs t > 0");
        [[fallthrough]];
    case IdealId::Kind::I0:
        return in_i0(x, table, guard);
    }
    return false;
}

NumericAP merge_frequencies(NumericAP terms)
{
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    NumericAP out;
    for (const auto& [w, c] : terms) {
        if (!out.empty() && std::fabs(w - out.back().first) <= 1e-9 * std::max(1.0, std::fabs(w)))
            out.back().second += c;
        else
            out.emplace_back(w, c);
    }
    return out;
}

Certificate commutator_certificate(const Frequency& lam, const Frequency& s, const AtomTable& table, double guard)
{
    if (lam.empty() || s.empty())
        throw Error(ErrorCode::DegeneratePhase, "commutator certificate needs λ, s != 0");
    if (freq_sign(lam, table, guard) != Sign::positive || freq_sign(s, table, guard) != Sign::positive)
        throw Error(ErrorCode::InvalidArgument, "commutator certificate needs λ, s > 0");
    // 1 - e^{-iλs} is a nonzero phase sum because λs != 0 in the free model
    const Scalar den = Scalar(1) - Scalar::phase(-phase_product(lam, s));
    Certificate c;
    c.kind = Certificate::Kind::commutator_pair;
    c.policy = Certificate::Policy::exact;
    c.f = M(lam).scaled(Scalar(1) / den);
    c.generator = D(s);
    c.target = mul(M(lam), D(s));
    return c;
}

Certificate jt_reduce(double lam, double t)
{
    if (!(lam > 0) || !(t > 0) || !std::isfinite(lam) || !std::isfinite(t))
        throw Error(ErrorCode::InvalidArgument, "jt_reduce needs λ, t > 0");
    const double et = std::exp(t);
    long n = static_cast<long>(std::floor(std::log(lam) / t));
    double rho = lam / std::exp(static_cast<double>(n) * t);
    // snap rounding at the interval ends so ρ ∈ [1, e^t)
    if (rho >= et * (1 - 1e-12)) {
        ++n;
        rho /= et;
    }
    if (rho < 1 + 1e-12)
        rho = 1;

    Certificate c;
    c.kind = Certificate::Kind::telescope;
    c.policy = Certificate::Policy::numeric;
    c.t = t;
    // e^{iρe^{nt}x} - e^{iρx} telescoped along ρe^{kt}
    if (n > 0)
        for (long k = 1; k <= n; ++k)
            c.steps.push_back({-1.0, 0.0, rho * std::exp(static_cast<double>(k - 1) * t)});
    else
        for (long k = n + 1; k <= 0; ++k)
            c.steps.push_back({1.0, 0.0, rho * std::exp(static_cast<double>(k - 1) * t)});
    // e^{iρx} - e^{ix}: κ + λ' = 1 and κ + λ'e^t = ρ
    if (rho != 1) {
        const double lp = (rho - 1) / (et - 1);
        c.steps.push_back({-1.0, 1 - lp, lp});
    }
    if (lam != 1)
        c.target_numeric = merge_frequencies({{lam, 1.0}, {1.0, -1.0}});
    return c;
}

namespace {

NumericAP expand_telescope(const Certificate& c)
{
    const double et = std::exp(c.t);
    NumericAP out;
    for (const auto& s : c.steps) {
        out.emplace_back(s.kappa + s.mu, s.coeff);
        out.emplace_back(s.kappa + s.mu * et, -s.coeff);
    }
    for (const auto& [w, a] : c.target_numeric)
        out.emplace_back(w, -a);
    return merge_frequencies(std::move(out));
}

} // namespace

double certificate_residual(const Certificate& c, const AtomTable& table)
{
    if (c.kind == Certificate::Kind::commutator_pair) {
        const Element diff = mul(c.f, c.generator) - mul(c.generator, c.f) - c.target;
        return l1_norm(diff, table);
    }
    double worst = 0;
    for (const auto& [w, a] : expand_telescope(c))
        worst = std::max(worst, std::abs(a));
    return worst;
}

bool verify_certificate(const Certificate& c, const AtomTable& table)
{
    if (c.kind == Certificate::Kind::commutator_pair && c.policy == Certificate::Policy::exact)
        return mul(c.f, c.generator) - mul(c.generator, c.f) == c.target;
    return certificate_residual(c, table) < c.tolerance;
}

std::string describe(const Certificate& c, const AtomTable& table)
{
    std::ostringstream os;
    os.precision(17);
    if (c.kind == Certificate::Kind::commutator_pair) {
        os << "commutator pair [f, g] = target\n"
           << "  f = " << to_string(c.f) << "\n"
           << "  g = " << to_string(c.generator) << "\n"
           << "  target = " << to_string(c.target) << "\n";
    } else {
        os << "telescope over J_t generators g_mu = e^{i mu x} - e^{i mu e^t x}, t = " << c.t << "\n";
        for (const auto& s : c.steps)
            os << "  (" << s.coeff.real() << (s.coeff.imag() < 0 ? " - " : " + ") << std::fabs(s.coeff.imag())
               << "i) * e^{i " << s.kappa << " x} * g_" << s.mu << "\n";
        os << "  target =";
        if (c.target_numeric.empty())
            os << " 0";
        for (const auto& [w, a] : c.target_numeric)
            os << " (" << a.real() << ")e^{i " << w << " x}";
        os << "\n";
    }
    os << "  residual = " << certificate_residual(c, table) << "\n";
    return os.str();
}

} // namespace tsalg
