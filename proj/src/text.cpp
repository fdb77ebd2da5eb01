#include "tsalg/text.hpp"

#include <cctype>
#include <optional>

namespace tsalg {

// ---------------------------------------------------------------------------
// Printing

namespace {

bool negative_lead(const std::string& s)
{
    return !s.empty() && s.front() == '-';
}

/// Joins signed term strings with " + " / " - ".
std::string join_terms(const std::vector<std::string>& terms)
{
    if (terms.empty())
        return "0";
    std::string out = terms.front();
    for (std::size_t i = 1; i < terms.size(); ++i) {
        if (negative_lead(terms[i]))
            out += " - " + terms[i].substr(1);
        else
            out += " + " + terms[i];
    }
    return out;
}

/// "q*body", "body" or "-body".
std::string coeff_times(const Rational& q, const std::string& body)
{
    if (q == 1)
        return body;
    if (q == -1)
        return "-" + body;
    return to_string(q) + "*" + body;
}

/// Dilation index as it appears after '@'.
std::string dil_primary(const DilationIndex& t)
{
    const std::string s = to_string(t);
    if (t.size() == 1 && !negative_lead(s))
        return s;
    return "(" + s + ")";
}

std::string atom_text(const std::string& base, const DilationIndex& exp)
{
    return exp.empty() ? base : base + "@" + dil_primary(exp);
}

std::string phase_key_text(const PhaseKey& k)
{
    std::string s;
    for (const auto& b : k.bases)
        s += (s.empty() ? "" : "*") + b;
    if (s.empty())
        s = std::string(kOneAtom);
    return k.exp.empty() ? s : s + "@" + dil_primary(k.exp);
}

std::string exp_text(const PhaseExponent& theta)
{
    if (theta.size() == 1) {
        const std::string s = to_string(theta);
        if (negative_lead(s))
            return "exp(-i*" + s.substr(1) + ")";
        return "exp(i*" + s + ")";
    }
    return "exp(i*(" + to_string(theta) + "))";
}

bool gauss_is_compound(const GaussQ& z)
{
    return sgn(z.re) != 0 && sgn(z.im) != 0;
}

std::string phase_term_text(const PhaseExponent& theta, const GaussQ& g)
{
    if (theta.empty())
        return to_string(g);
    const std::string e = exp_text(theta);
    if (g == GaussQ(1))
        return e;
    if (g == GaussQ(-1))
        return "-" + e;
    if (gauss_is_compound(g))
        return "(" + to_string(g) + ")*" + e;
    return to_string(g) + "*" + e;
}

bool scalar_is_atomic(const Scalar& c)
{
    return c.is_single_phase() && !gauss_is_compound(c.numerator().terms().front().second);
}

} // namespace

std::string to_string(const DilationIndex& t)
{
    std::vector<std::string> terms;
    for (const auto& [sym, q] : t)
        terms.push_back(sym == kUnitDilation ? to_string(q) : coeff_times(q, sym));
    return join_terms(terms);
}

std::string to_string(const Frequency& f)
{
    std::vector<std::string> terms;
    for (const auto& [atom, q] : f) {
        if (atom.base == kOneAtom && atom.exp.empty())
            terms.push_back(to_string(q));
        else
            terms.push_back(coeff_times(q, atom_text(atom.base, atom.exp)));
    }
    return join_terms(terms);
}

std::string to_string(const PhaseExponent& theta)
{
    std::vector<std::string> terms;
    for (const auto& [key, q] : theta) {
        if (key.bases.empty() && key.exp.empty())
            terms.push_back(to_string(q));
        else
            terms.push_back(coeff_times(q, phase_key_text(key)));
    }
    return join_terms(terms);
}

std::string to_string(const GaussQ& z)
{
    if (sgn(z.im) == 0)
        return to_string(z.re);
    std::string im;
    if (z.im == 1)
        im = "i";
    else if (z.im == -1)
        im = "-i";
    else
        im = to_string(z.im) + "i";
    if (sgn(z.re) == 0)
        return im;
    return "(" + join_terms({to_string(z.re), im}) + ")";
}

std::string to_string(const PhaseSum& s)
{
    std::vector<std::string> terms;
    for (const auto& [theta, g] : s)
        terms.push_back(phase_term_text(theta, g));
    return join_terms(terms);
}

std::string to_string(const Scalar& s)
{
    if (s.is_polynomial())
        return to_string(s.numerator());
    return "(" + to_string(s.numerator()) + ")/(" + to_string(s.denominator()) + ")";
}

std::string to_string(const Element& x)
{
    std::vector<std::string> terms;
    for (const auto& [k, c] : x) {
        std::string f;
        auto append = [&f](const std::string& s) { f += (f.empty() ? "" : " * ") + s; };
        if (!k.lam.empty())
            append("M(" + to_string(k.lam) + ")");
        if (!k.mu.empty())
            append("D(" + to_string(k.mu) + ")");
        if (!k.t.empty())
            append("V(" + to_string(k.t) + ")");
        const std::string cs = to_string(c);
        if (f.empty())
            terms.push_back(scalar_is_atomic(c) ? cs : "(" + cs + ")");
        else if (c == Scalar(1))
            terms.push_back(f);
        else if (c == Scalar(-1))
            terms.push_back("-" + f);
        else if (scalar_is_atomic(c))
            terms.push_back(cs + " * " + f);
        else
            terms.push_back("(" + cs + ") * " + f);
    }
    return join_terms(terms);
}

// ---------------------------------------------------------------------------
// Lexing

namespace {

enum class Tok { number, imag, ident, lparen, rparen, star, slash, plus, minus, at, end };

struct Token {
    Tok kind;
    std::string text;
    SourceSpan span;
};

bool ident_start(char c)
{
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool ident_char(char c)
{
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool digit(char c)
{
    return std::isdigit(static_cast<unsigned char>(c)) != 0;
}

std::vector<Token> lex(std::string_view s)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        const char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        const std::size_t b = i;
        if (digit(c) || (c == '.' && i + 1 < s.size() && digit(s[i + 1]))) {
            while (i < s.size() && digit(s[i]))
                ++i;
            if (i < s.size() && s[i] == '.') {
                ++i;
                while (i < s.size() && digit(s[i]))
                    ++i;
            }
            if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
                std::size_t j = i + 1;
                if (j < s.size() && (s[j] == '+' || s[j] == '-'))
                    ++j;
                if (j < s.size() && digit(s[j])) {
                    i = j;
                    while (i < s.size() && digit(s[i]))
                        ++i;
                }
            }
            // "p/q" is one literal when the slash is directly followed by a digit
            if (i + 1 < s.size() && s[i] == '/' && digit(s[i + 1])) {
                ++i;
                while (i < s.size() && digit(s[i]))
                    ++i;
            }
            Tok kind = Tok::number;
            std::string text(s.substr(b, i - b));
            if (i < s.size() && s[i] == 'i' && (i + 1 == s.size() || !ident_char(s[i + 1]))) {
                ++i;
                kind = Tok::imag;
            }
            out.push_back({kind, std::move(text), {b, i}});
            continue;
        }
        if (ident_start(c)) {
            while (i < s.size() && ident_char(s[i]))
                ++i;
            out.push_back({Tok::ident, std::string(s.substr(b, i - b)), {b, i}});
            continue;
        }
        Tok kind;
        switch (c) {
        case '(': kind = Tok::lparen; break;
        case ')': kind = Tok::rparen; break;
        case '*': kind = Tok::star; break;
        case '/': kind = Tok::slash; break;
        case '+': kind = Tok::plus; break;
        case '-': kind = Tok::minus; break;
        case '@': kind = Tok::at; break;
        default:
            throw Error(ErrorCode::ParseError, std::string("unexpected character '") + c + "'", SourceSpan{b, b + 1});
        }
        ++i;
        out.push_back({kind, std::string(1, c), {b, i}});
    }
    out.push_back({Tok::end, "", {s.size(), s.size()}});
    return out;
}

// ---------------------------------------------------------------------------
// Parsing

class Parser {
public:
    Parser(std::string_view text, const AtomTable* table) : toks_(lex(text)), table_(table) {}

    bool at_end() const { return peek().kind == Tok::end; }

    void expect_end()
    {
        if (!at_end())
            fail("unexpected trailing input");
    }

    Element expr()
    {
        Element x = signed_term();
        while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
            const bool minus = next().kind == Tok::minus;
            Element y = signed_term();
            if (minus)
                x -= y;
            else
                x += y;
        }
        return x;
    }

    Frequency freq()
    {
        Frequency f = freq_term();
        while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
            const bool minus = next().kind == Tok::minus;
            Frequency g = freq_term();
            if (minus)
                f -= g;
            else
                f += g;
        }
        return f;
    }

    DilationIndex dil()
    {
        DilationIndex t = dil_term();
        while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
            const bool minus = next().kind == Tok::minus;
            DilationIndex u = dil_term();
            if (minus)
                t -= u;
            else
                t += u;
        }
        return t;
    }

    PhaseExponent phase()
    {
        PhaseExponent p = phase_term();
        while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
            const bool minus = next().kind == Tok::minus;
            PhaseExponent q = phase_term();
            if (minus)
                p -= q;
            else
                p += q;
        }
        return p;
    }

    /// Collects a pure product of letters; false if anything else appears.
    bool word(std::vector<Letter>& out)
    {
        if (at_end())
            return true;
        bool negate = false;
        while (peek().kind == Tok::minus) {
            next();
            negate = !negate;
        }
        if (negate)
            out.push_back(Letter::scalar(Scalar(-1)));
        for (;;) {
            const Token& t = peek();
            if (t.kind == Tok::ident && (t.text == "M" || t.text == "D") && peek(1).kind == Tok::lparen) {
                const bool m = next().text == "M";
                expect(Tok::lparen);
                Frequency f = freq();
                expect(Tok::rparen);
                out.push_back(m ? Letter::m(std::move(f)) : Letter::d(std::move(f)));
            } else if (t.kind == Tok::ident && t.text == "V" && peek(1).kind == Tok::lparen) {
                next();
                expect(Tok::lparen);
                DilationIndex d = dil();
                expect(Tok::rparen);
                out.push_back(Letter::v(std::move(d)));
            } else if (t.kind == Tok::number || t.kind == Tok::imag || (t.kind == Tok::ident && t.text == "i") ||
                       (t.kind == Tok::ident && t.text == "exp")) {
                const Element c = factor();
                out.push_back(Letter::scalar(c.empty() ? Scalar(0) : c.terms().front().second));
            } else {
                return false;
            }
            if (peek().kind != Tok::star)
                break;
            next();
        }
        return at_end();
    }

private:
    const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
    const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    [[noreturn]] void fail(const std::string& msg) const
    {
        const Token& t = peek();
        throw Error(ErrorCode::ParseError, msg + (t.kind == Tok::end ? " at end of input" : " at '" + t.text + "'"),
                    t.span);
    }

    const Token& expect(Tok kind)
    {
        if (peek().kind != kind) {
            static const char* names[] = {"number", "imaginary number", "identifier", "'('", "')'", "'*'",
                                          "'/'",    "'+'",               "'-'",        "'@'", "end of input"};
            fail(std::string("expected ") + names[static_cast<int>(kind)]);
        }
        return next();
    }

    Rational number(const Token& t) const
    {
        try {
            return parse_rational(t.text);
        } catch (const Error& e) {
            throw Error(ErrorCode::ParseError, e.what(), t.span);
        }
    }

    void check_atom(const Token& t) const
    {
        if (table_ != nullptr && !table_->has_atom(t.text))
            throw Error(ErrorCode::UnknownSymbol, "unknown frequency atom '" + t.text + "'", t.span);
    }

    void check_dilation(const Token& t) const
    {
        if (table_ != nullptr && !table_->has_dilation(t.text))
            throw Error(ErrorCode::UnknownSymbol, "unknown dilation symbol '" + t.text + "'", t.span);
    }

    // -- elements --

    Element signed_term()
    {
        if (peek().kind == Tok::minus) {
            next();
            return -signed_term();
        }
        return product();
    }

    Element product()
    {
        Element x = factor();
        for (;;) {
            if (peek().kind == Tok::star) {
                next();
                x = mul(x, factor());
            } else if (peek().kind == Tok::slash) {
                const Token op = next();
                const Element y = factor();
                if (y.empty())
                    throw Error(ErrorCode::DivisionByZero, "division by zero", op.span);
                if (y.size() != 1 || y.terms().front().first != TermKey{})
                    throw Error(ErrorCode::ParseError, "only division by a scalar is supported", op.span);
                const Scalar inv = Scalar(1) / y.terms().front().second;
                x = x.scaled(inv);
            } else {
                return x;
            }
        }
    }

    Element factor()
    {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::lparen: {
            next();
            Element x = expr();
            expect(Tok::rparen);
            return x;
        }
        case Tok::number:
            return scalar_element(Scalar(number(next())));
        case Tok::imag:
            return scalar_element(Scalar(GaussQ(Rational(0), number(next()))));
        case Tok::ident:
            break;
        default:
            fail("expected a factor");
        }
        const Token id = next();
        if (id.text == "i")
            return scalar_element(Scalar(GaussQ(Rational(0), Rational(1))));
        if (peek().kind != Tok::lparen)
            throw Error(ErrorCode::ParseError, "unknown name '" + id.text + "'", id.span);
        next();
        Element out;
        if (id.text == "M" || id.text == "D") {
            Frequency f = freq();
            out = id.text == "M" ? M(f) : D(f);
        } else if (id.text == "V") {
            out = V(dil());
        } else if (id.text == "adj") {
            out = adjoint(expr());
        } else if (id.text == "exp") {
            bool negate = false;
            if (peek().kind == Tok::minus) {
                next();
                negate = true;
            }
            const Token& itok = peek();
            if (itok.kind != Tok::ident || itok.text != "i")
                fail("exp takes i*<phase>");
            next();
            expect(Tok::star);
            PhaseExponent theta;
            if (peek().kind == Tok::lparen) {
                next();
                theta = phase();
                expect(Tok::rparen);
            } else {
                theta = phase_product_term();
            }
            out = scalar_element(Scalar::phase(negate ? -theta : theta));
        } else {
            throw Error(ErrorCode::ParseError, "unknown function '" + id.text + "'", id.span);
        }
        expect(Tok::rparen);
        return out;
    }

    // -- frequencies: q*atom@dil --

    Frequency freq_term()
    {
        Rational sign = 1;
        while (peek().kind == Tok::minus) {
            next();
            sign = -sign;
        }
        Rational q = 1;
        std::optional<FrequencyAtom> atom;
        for (;;) {
            const Token& t = peek();
            if (t.kind == Tok::number) {
                q *= number(next());
            } else if (t.kind == Tok::ident) {
                if (atom)
                    fail("a frequency term holds at most one atom");
                const Token a = next();
                check_atom(a);
                atom = FrequencyAtom{a.text, at_suffix()};
            } else {
                fail("expected a frequency term");
            }
            if (peek().kind != Tok::star)
                break;
            next();
        }
        if (!atom)
            atom = FrequencyAtom{std::string(kOneAtom), {}};
        return Frequency::single(*atom, canonical(sign * q));
    }

    DilationIndex at_suffix()
    {
        if (peek().kind != Tok::at)
            return {};
        next();
        if (peek().kind == Tok::lparen) {
            next();
            DilationIndex t = dil();
            expect(Tok::rparen);
            return t;
        }
        return dil_atom_term();
    }

    // -- dilation indices: q*symbol --

    DilationIndex dil_term()
    {
        Rational sign = 1;
        while (peek().kind == Tok::minus) {
            next();
            sign = -sign;
        }
        return dil_atom_term().scaled(sign);
    }

    DilationIndex dil_atom_term()
    {
        Rational q = 1;
        std::optional<std::string> sym;
        for (;;) {
            const Token& t = peek();
            if (t.kind == Tok::number) {
                q *= number(next());
            } else if (t.kind == Tok::ident) {
                if (sym)
                    fail("a dilation term holds at most one symbol");
                const Token s = next();
                check_dilation(s);
                sym = s.text;
            } else {
                fail("expected a dilation term");
            }
            if (peek().kind != Tok::star)
                break;
            next();
        }
        return DilationIndex::single(sym.value_or(std::string(kUnitDilation)), canonical(q));
    }

    // -- phases: q*a*b@dil --

    PhaseExponent phase_term()
    {
        Rational sign = 1;
        while (peek().kind == Tok::minus) {
            next();
            sign = -sign;
        }
        return phase_product_term().scaled(sign);
    }

    PhaseExponent phase_product_term()
    {
        Rational q = 1;
        std::vector<std::string> bases;
        DilationIndex exp;
        const SourceSpan begin = peek().span;
        for (;;) {
            const Token& t = peek();
            if (t.kind == Tok::number) {
                q *= number(next());
            } else if (t.kind == Tok::ident) {
                const Token a = next();
                check_atom(a);
                bases.push_back(a.text);
                exp += at_suffix();
            } else {
                fail("expected a phase term");
            }
            if (peek().kind != Tok::star)
                break;
            next();
        }
        std::erase(bases, std::string(kOneAtom));
        if (bases.size() > 2)
            throw Error(ErrorCode::ParseError, "phase terms have degree at most 2", begin);
        return PhaseExponent::single(make_phase_key(std::move(bases), std::move(exp)), canonical(q));
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    const AtomTable* table_;
};

} // namespace

Element parse_element(std::string_view text, const AtomTable* table)
{
    Parser p(text, table);
    if (p.at_end())
        return identity_element();
    Element x = p.expr();
    p.expect_end();
    return x;
}

Frequency parse_frequency(std::string_view text, const AtomTable* table)
{
    Parser p(text, table);
    Frequency f = p.freq();
    p.expect_end();
    return f;
}

DilationIndex parse_dilation(std::string_view text, const AtomTable* table)
{
    Parser p(text, table);
    DilationIndex t = p.dil();
    p.expect_end();
    return t;
}

PhaseExponent parse_phase(std::string_view text, const AtomTable* table)
{
    Parser p(text, table);
    PhaseExponent theta = p.phase();
    p.expect_end();
    return theta;
}

bool parse_word(std::string_view text, std::vector<Letter>& out, const AtomTable* table)
{
    out.clear();
    Parser p(text, table);
    return p.word(out);
}

} // namespace tsalg
