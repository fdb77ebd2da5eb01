#include "tsalg/exactnum.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace tsalg {

std::string to_string(const Rational& q)
{
    return q.get_str();
}

namespace {

bool all_digits(std::string_view s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

[[noreturn]] void bad_rational(std::string_view text)
{
    throw Error(ErrorCode::ParseError, "malformed rational '" + std::string(text) + "'");
}

} // namespace

Rational parse_rational(std::string_view text)
{
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    Rational out;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        auto p = s.substr(0, slash);
        auto q = s.substr(slash + 1);
        if (!all_digits(p) || !all_digits(q))
            bad_rational(text);
        mpz_class den{std::string(q)};
        if (den == 0)
            throw Error(ErrorCode::DivisionByZero, "zero denominator in '" + std::string(text) + "'");
        out = Rational(mpz_class{std::string(p)}, den);
        out.canonicalize();
    } else {
        long exponent = 0;
        if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
            auto es = s.substr(e + 1);
            bool eneg = false;
            if (!es.empty() && (es.front() == '-' || es.front() == '+')) {
                eneg = es.front() == '-';
                es.remove_prefix(1);
            }
            if (!all_digits(es) || es.size() > 6)
                bad_rational(text);
            exponent = std::stol(std::string(es));
            if (eneg)
                exponent = -exponent;
            s = s.substr(0, e);
        }
        auto dot = s.find('.');
        std::string digits;
        if (dot == std::string_view::npos) {
            if (!all_digits(s))
                bad_rational(text);
            digits = std::string(s);
        } else {
            auto ip = s.substr(0, dot);
            auto fp = s.substr(dot + 1);
            if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
                bad_rational(text);
            digits = std::string(ip) + std::string(fp);
            exponent -= static_cast<long>(fp.size());
        }
        mpz_class num(digits);
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
        out = exponent >= 0 ? Rational(num * scale) : Rational(num, scale);
        out.canonicalize();
    }
    if (negative)
        out = -out;
    return out;
}

// ---------------------------------------------------------------------------

namespace {

bool valid_symbol(const std::string& name)
{
    if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_'))
        return false;
    return std::all_of(name.begin(), name.end(),
                       [](unsigned char c) { return std::isalnum(c) != 0 || c == '_'; });
}

const std::pair<std::string, double>* lookup(const std::vector<std::pair<std::string, double>>& v,
                                             std::string_view name)
{
    for (const auto& e : v)
        if (e.first == name)
            return &e;
    return nullptr;
}

} // namespace

AtomTable::AtomTable()
{
    atoms_.emplace_back(std::string(kOneAtom), 1.0);
    dilations_.emplace_back(std::string(kUnitDilation), 1.0);
}

void AtomTable::add_atom(const std::string& name, double value)
{
    if (!valid_symbol(name))
        throw Error(ErrorCode::ConfigError, "invalid atom name '" + name + "'");
    if (has_atom(name) || has_dilation(name))
        throw Error(ErrorCode::ConfigError, "duplicate symbol '" + name + "'");
    if (!std::isfinite(value) || value <= 0)
        throw Error(ErrorCode::ConfigError, "atom '" + name + "' must have a positive finite value");
    atoms_.emplace_back(name, value);
}

void AtomTable::add_dilation(const std::string& name, double value)
{
    if (!valid_symbol(name))
        throw Error(ErrorCode::ConfigError, "invalid dilation symbol '" + name + "'");
    if (has_atom(name) || has_dilation(name))
        throw Error(ErrorCode::ConfigError, "duplicate symbol '" + name + "'");
    if (!std::isfinite(value))
        throw Error(ErrorCode::ConfigError, "dilation symbol '" + name + "' must have a finite value");
    dilations_.emplace_back(name, value);
}

bool AtomTable::has_atom(std::string_view name) const
{
    return lookup(atoms_, name) != nullptr;
}

bool AtomTable::has_dilation(std::string_view name) const
{
    return lookup(dilations_, name) != nullptr;
}

double AtomTable::atom_value(std::string_view name) const
{
    if (const auto* e = lookup(atoms_, name))
        return e->second;
    throw Error(ErrorCode::UnknownSymbol, "unknown atom '" + std::string(name) + "'");
}

double AtomTable::dilation_value(std::string_view name) const
{
    if (const auto* e = lookup(dilations_, name))
        return e->second;
    throw Error(ErrorCode::UnknownSymbol, "unknown dilation symbol '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------

DilationIndex unit_dilation(const Rational& q)
{
    return DilationIndex::single(std::string(kUnitDilation), canonical(q));
}

double numeric(const DilationIndex& t, const AtomTable& table)
{
    double v = 0;
    for (const auto& [sym, q] : t)
        v += q.get_d() * table.dilation_value(sym);
    return v;
}

namespace {

Sign sign_of(double v)
{
    return v < 0 ? Sign::negative : (v > 0 ? Sign::positive : Sign::zero);
}

Sign guarded(double v, double guard, const char* what)
{
    if (std::fabs(v) <= guard) {
        std::ostringstream os;
        os << what << " evaluates to " << v << ", inside the sign guard " << guard;
        throw Error(ErrorCode::IndeterminateSign, os.str());
    }
    return sign_of(v);
}

} // namespace

Sign dilation_sign(const DilationIndex& t, const AtomTable& table, double guard)
{
    if (t.empty())
        return Sign::zero;
    if (t.size() == 1 && t.terms()[0].first == kUnitDilation)
        return sgn(t.terms()[0].second) < 0 ? Sign::negative : Sign::positive;
    return guarded(numeric(t, table), guard, "dilation index");
}

bool is_integral_unit(const DilationIndex& t)
{
    if (t.empty())
        return true;
    return t.size() == 1 && t.terms()[0].first == kUnitDilation && t.terms()[0].second.get_den() == 1;
}

// ---------------------------------------------------------------------------

double numeric(const FrequencyAtom& atom, const AtomTable& table)
{
    return table.atom_value(atom.base) * std::exp(numeric(atom.exp, table));
}

Frequency rational_frequency(const Rational& q)
{
    return Frequency::single(FrequencyAtom{std::string(kOneAtom), {}}, canonical(q));
}

Frequency atom_frequency(const std::string& base, const Rational& q, const DilationIndex& exp)
{
    return Frequency::single(FrequencyAtom{base, exp}, canonical(q));
}

Frequency freq_scale_exp(const Frequency& f, const DilationIndex& t)
{
    if (t.empty())
        return f;
    std::vector<Frequency::Term> raw;
    raw.reserve(f.size());
    for (const auto& [atom, q] : f)
        raw.emplace_back(FrequencyAtom{atom.base, atom.exp + t}, q);
    return Frequency::from_unsorted(std::move(raw));
}

double numeric(const Frequency& f, const AtomTable& table)
{
    double v = 0;
    for (const auto& [atom, q] : f)
        v += q.get_d() * numeric(atom, table);
    return v;
}

Sign freq_sign(const Frequency& f, const AtomTable& table, double guard)
{
    if (guard <= 0)
        throw Error(ErrorCode::InvalidArgument, "sign guard must be positive");
    if (f.empty())
        return Sign::zero;
    bool any_pos = false;
    bool any_neg = false;
    for (const auto& [atom, q] : f) {
        (void)table.atom_value(atom.base);
        (sgn(q) > 0 ? any_pos : any_neg) = true;
    }
    if (!any_neg)
        return Sign::positive;
    if (!any_pos)
        return Sign::negative;
    return guarded(numeric(f, table), guard, "frequency");
}

// ---------------------------------------------------------------------------

PhaseKey make_phase_key(std::vector<std::string> bases, DilationIndex exp)
{
    bases.erase(std::remove(bases.begin(), bases.end(), kOneAtom), bases.end());
    if (bases.size() > 2)
        throw Error(ErrorCode::Internal, "phase exponent of degree above 2");
    std::sort(bases.begin(), bases.end());
    return PhaseKey{std::move(bases), std::move(exp)};
}

PhaseKey atom_product(const FrequencyAtom& a, const FrequencyAtom& b)
{
    return make_phase_key({a.base, b.base}, a.exp + b.exp);
}

PhaseKey atom_key(const FrequencyAtom& a)
{
    return make_phase_key({a.base}, a.exp);
}

double numeric(const PhaseKey& key, const AtomTable& table)
{
    double v = std::exp(numeric(key.exp, table));
    for (const auto& b : key.bases)
        v *= table.atom_value(b);
    return v;
}

PhaseExponent rational_phase(const Rational& q)
{
    return PhaseExponent::single(PhaseKey{}, canonical(q));
}

PhaseExponent phase_product(const Frequency& lam, const Frequency& mu)
{
    std::vector<PhaseExponent::Term> raw;
    raw.reserve(lam.size() * mu.size());
    for (const auto& [a, p] : lam)
        for (const auto& [b, q] : mu)
            raw.emplace_back(atom_product(a, b), p * q);
    return PhaseExponent::from_unsorted(std::move(raw));
}

PhaseExponent phase_of(const Frequency& f)
{
    std::vector<PhaseExponent::Term> raw;
    raw.reserve(f.size());
    for (const auto& [a, q] : f)
        raw.emplace_back(atom_key(a), q);
    return PhaseExponent::from_unsorted(std::move(raw));
}

double numeric(const PhaseExponent& theta, const AtomTable& table)
{
    double v = 0;
    for (const auto& [key, q] : theta)
        v += q.get_d() * numeric(key, table);
    return v;
}

bool phase_less(const PhaseExponent& a, const PhaseExponent& b)
{
    PhaseExponent d = b - a;
    return !d.empty() && sgn(d.terms().front().second) > 0;
}

// ---------------------------------------------------------------------------

GaussQ& GaussQ::operator+=(const GaussQ& o)
{
    re += o.re;
    im += o.im;
    return *this;
}

GaussQ& GaussQ::operator-=(const GaussQ& o)
{
    re -= o.re;
    im -= o.im;
    return *this;
}

GaussQ operator*(const GaussQ& a, const GaussQ& b)
{
    return GaussQ(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
}

GaussQ operator/(const GaussQ& a, const GaussQ& b)
{
    Rational n = b.norm2();
    if (sgn(n) == 0)
        throw Error(ErrorCode::DivisionByZero, "division by zero Gaussian rational");
    GaussQ p = a * b.conj();
    return GaussQ(p.re / n, p.im / n);
}

PhaseSum phase_sum_one()
{
    return PhaseSum::single(PhaseExponent{}, GaussQ(1));
}

PhaseSum multiply(const PhaseSum& a, const PhaseSum& b)
{
    if (a.empty() || b.empty())
        return {};
    std::vector<PhaseSum::Term> raw;
    raw.reserve(a.size() * b.size());
    for (const auto& [th1, z1] : a)
        for (const auto& [th2, z2] : b)
            raw.emplace_back(th1 + th2, z1 * z2);
    return PhaseSum::from_unsorted(std::move(raw));
}

PhaseSum conj(const PhaseSum& a)
{
    std::vector<PhaseSum::Term> raw;
    raw.reserve(a.size());
    for (const auto& [th, z] : a)
        raw.emplace_back(-th, z.conj());
    return PhaseSum::from_unsorted(std::move(raw));
}

std::complex<double> numeric(const PhaseSum& s, const AtomTable& table)
{
    std::complex<double> v = 0;
    for (const auto& [th, z] : s)
        v += z.to_complex() * std::polar(1.0, numeric(th, table));
    return v;
}

// ---------------------------------------------------------------------------

namespace {

const PhaseSum::Term& least_term(const PhaseSum& s)
{
    auto it = std::min_element(s.begin(), s.end(), [](const auto& x, const auto& y) {
        return phase_less(x.first, y.first);
    });
    return *it;
}

const PhaseSum::Term& greatest_term(const PhaseSum& s)
{
    auto it = std::max_element(s.begin(), s.end(), [](const auto& x, const auto& y) {
        return phase_less(x.first, y.first);
    });
    return *it;
}

PhaseSum monomial(const PhaseExponent& th, const GaussQ& z)
{
    return PhaseSum::single(th, z);
}

// Exact quotient num/den in the group ring when one exists. den's least term
// must be 1·e^{i0}. Quotient terms are peeled off from the bottom; any
// quotient term must lie below max(num) - max(den), which bounds the search.
constexpr int kDivisionSteps = 256;

bool try_divide(const PhaseSum& num, const PhaseSum& den, PhaseSum& quotient)
{
    PhaseSum rem = num;
    PhaseSum q;
    const PhaseExponent ceiling = greatest_term(num).first - greatest_term(den).first;
    for (int step = 0; step < kDivisionSteps; ++step) {
        if (rem.empty()) {
            quotient = std::move(q);
            return true;
        }
        const auto& [th, z] = least_term(rem);
        if (phase_less(ceiling, th))
            return false;
        PhaseSum t = monomial(th, z);
        q += t;
        rem -= multiply(t, den);
    }
    return false;
}

} // namespace

Scalar::Scalar() : den_(phase_sum_one()) {}
Scalar::Scalar(int v) : num_(PhaseSum::single(PhaseExponent{}, GaussQ(v))), den_(phase_sum_one()) {}
Scalar::Scalar(const Rational& v) : num_(PhaseSum::single(PhaseExponent{}, GaussQ(v))), den_(phase_sum_one()) {}
Scalar::Scalar(const GaussQ& v) : num_(PhaseSum::single(PhaseExponent{}, v)), den_(phase_sum_one()) {}
Scalar::Scalar(PhaseSum num) : num_(std::move(num)), den_(phase_sum_one()) {}

Scalar Scalar::phase(const PhaseExponent& theta, const GaussQ& amp)
{
    return Scalar(PhaseSum::single(theta, amp));
}

Scalar Scalar::fraction(PhaseSum num, PhaseSum den)
{
    if (den.empty())
        throw Error(ErrorCode::DivisionByZero, "zero denominator");
    Scalar s;
    s.num_ = std::move(num);
    s.den_ = std::move(den);
    s.canonicalize();
    return s;
}

bool Scalar::is_polynomial() const
{
    return den_.size() == 1 && den_.terms()[0].first.empty() && den_.terms()[0].second == GaussQ(1);
}

void Scalar::canonicalize()
{
    if (num_.empty()) {
        den_ = phase_sum_one();
        return;
    }
    if (is_polynomial())
        return;
    const auto [th, z] = least_term(den_);
    PhaseSum inv = monomial(-th, GaussQ(1) / z);
    num_ = multiply(num_, inv);
    den_ = multiply(den_, inv);
    if (den_.size() == 1)
        return;
    PhaseSum q;
    if (try_divide(num_, den_, q)) {
        num_ = std::move(q);
        den_ = phase_sum_one();
    }
}

Scalar Scalar::conj() const
{
    return fraction(tsalg::conj(num_), tsalg::conj(den_));
}

Scalar Scalar::operator-() const
{
    Scalar s = *this;
    s.num_ = -s.num_;
    return s;
}

Scalar& Scalar::operator+=(const Scalar& o)
{
    if (den_ == o.den_) {
        num_ += o.num_;
    } else {
        num_ = multiply(num_, o.den_) + multiply(o.num_, den_);
        den_ = multiply(den_, o.den_);
    }
    canonicalize();
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o)
{
    return *this += -o;
}

Scalar& Scalar::operator*=(const Scalar& o)
{
    num_ = multiply(num_, o.num_);
    if (!o.is_polynomial())
        den_ = multiply(den_, o.den_);
    canonicalize();
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o)
{
    if (o.is_zero())
        throw Error(ErrorCode::DivisionByZero, "division by zero scalar");
    num_ = multiply(num_, o.den_);
    den_ = multiply(den_, o.num_);
    canonicalize();
    return *this;
}

bool operator==(const Scalar& a, const Scalar& b)
{
    if (a.den_ == b.den_)
        return a.num_ == b.num_;
    return multiply(a.num_, b.den_) == multiply(b.num_, a.den_);
}

Scalar scalar_arith(const Scalar& a, const Scalar& b, ScalarOp op)
{
    switch (op) {
    case ScalarOp::add: return a + b;
    case ScalarOp::mul: return a * b;
    case ScalarOp::div: return a / b;
    case ScalarOp::conj: return a.conj();
    case ScalarOp::neg: return -a;
    }
    throw Error(ErrorCode::Internal, "unknown scalar operation");
}

std::complex<double> scalar_numeric(const Scalar& s, const AtomTable& table)
{
    std::complex<double> n = numeric(s.numerator(), table);
    if (s.is_polynomial())
        return n;
    std::complex<double> d = numeric(s.denominator(), table);
    if (std::abs(d) < 1e-300)
        throw Error(ErrorCode::NumericOverflow, "scalar denominator evaluates to zero");
    return n / d;
}

std::vector<std::string> collision_warnings(const AtomTable& table, std::span<const FrequencyAtom> atoms)
{
    std::vector<FrequencyAtom> uniq(atoms.begin(), atoms.end());
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());

    auto name = [](const FrequencyAtom& a) {
        std::string s = a.base;
        if (!a.exp.empty()) {
            s += "@(";
            bool first = true;
            for (const auto& [sym, q] : a.exp) {
                if (!first)
                    s += "+";
                s += to_string(q) + "*" + sym;
                first = false;
            }
            s += ")";
        }
        return s;
    };

    std::vector<std::string> out;
    for (std::size_t i = 0; i < uniq.size(); ++i) {
        for (std::size_t j = i + 1; j < uniq.size(); ++j) {
            const double r = numeric(uniq[i], table) / numeric(uniq[j], table);
            for (int q = 1; q <= 100; ++q) {
                const double p = std::round(r * q);
                if (p != 0 && std::fabs(r - p / q) < 1e-9) {
                    std::ostringstream os;
                    os << "atoms " << name(uniq[i]) << " and " << name(uniq[j]) << " have ratio within 1e-9 of "
                       << static_cast<long long>(p) << "/" << q << "; the free model may disagree with the real line";
                    out.push_back(os.str());
                    break;
                }
            }
        }
    }
    return out;
}

} // namespace tsalg
