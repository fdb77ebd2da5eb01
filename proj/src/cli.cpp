#include "tsalg/cli.hpp"

#include <CLI11.hpp>
#include <functional>
#include <json.hpp>
#include <sstream>

#include "tsalg/approx.hpp"
#include "tsalg/characters.hpp"
#include "tsalg/config.hpp"
#include "tsalg/ideals.hpp"
#include "tsalg/l2sim.hpp"
#include "tsalg/text.hpp"

namespace tsalg::cli {

namespace {

using json = nlohmann::json;

struct Context {
    Config cfg = default_config();
    std::string input; // text the parser is currently reading, for error spans
    std::vector<std::string> warnings;

    const AtomTable& table() const { return cfg.table; }
    double guard() const { return cfg.sign_guard; }
};

struct Output {
    json data = json::object();
    std::string human;
};

// ---------------------------------------------------------------------------
// Input helpers

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) {
        const auto b = cur.find_first_not_of(" \t");
        const auto e = cur.find_last_not_of(" \t");
        if (b != std::string::npos)
            out.push_back(cur.substr(b, e - b + 1));
    }
    return out;
}

double to_double(const std::string& what, const std::string& s)
{
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used == s.size())
            return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::InvalidArgument, what + " needs a number, got '" + s + "'");
}

Element read_element(Context& ctx, const std::string& s)
{
    ctx.input = s;
    Element x = parse_element(s, &ctx.table());
    const auto atoms = atoms_of(x);
    for (auto& w : collision_warnings(ctx.table(), atoms))
        ctx.warnings.push_back(std::move(w));
    return x;
}

Frequency read_frequency(Context& ctx, const std::string& s)
{
    ctx.input = s;
    return parse_frequency(s, &ctx.table());
}

DilationIndex read_dilation(Context& ctx, const std::string& s)
{
    ctx.input = s;
    return parse_dilation(s, &ctx.table());
}

PhaseExponent read_phase(Context& ctx, const std::string& s)
{
    ctx.input = s;
    return parse_phase(s, &ctx.table());
}

Grading read_grading(const std::string& s)
{
    if (s == "translation")
        return Grading::translation;
    if (s == "multiplication")
        return Grading::multiplication;
    if (s == "dilation")
        return Grading::dilation;
    throw Error(ErrorCode::InvalidArgument, "grading must be translation, multiplication or dilation");
}

CoeffIndex read_index(Context& ctx, Grading g, const std::string& s)
{
    if (g == Grading::dilation)
        return read_dilation(ctx, s);
    return read_frequency(ctx, s);
}

GaussianPacket read_packet(const std::string& s)
{
    const auto parts = split(s, ',');
    if (parts.size() != 3)
        throw Error(ErrorCode::InvalidArgument, "packet needs 'a,b,c', got '" + s + "'");
    return make_packet(1.0, to_double("packet width", parts[0]), to_double("packet center", parts[1]),
                       to_double("packet momentum", parts[2]));
}

/// "atom:phase, atom:phase"
BohrCharacter read_bohr(Context& ctx, const std::string& s)
{
    BohrCharacter c;
    for (const auto& item : split(s, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            throw Error(ErrorCode::InvalidArgument, "angle entries read 'atom:phase', got '" + item + "'");
        const Frequency f = read_frequency(ctx, item.substr(0, colon));
        if (f.size() != 1 || f.terms().front().second != 1)
            throw Error(ErrorCode::InvalidArgument, "angle key must be a single atom, got '" + item + "'");
        c.set_angle(f.terms().front().first, read_phase(ctx, item.substr(colon + 1)));
    }
    return c;
}

/// "symbol:phase, symbol:phase"
DilationCharacter read_dilation_character(Context& ctx, const std::string& s)
{
    DilationCharacter c;
    for (const auto& item : split(s, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            throw Error(ErrorCode::InvalidArgument, "angle entries read 'symbol:phase', got '" + item + "'");
        const std::string sym = item.substr(0, colon);
        if (!ctx.table().has_dilation(sym))
            throw Error(ErrorCode::UnknownSymbol, "unknown dilation symbol '" + sym + "'");
        c.set_angle(sym, read_phase(ctx, item.substr(colon + 1)));
    }
    return c;
}

/// "key=value;key;..."
std::map<std::string, std::string> read_params(const std::string& s)
{
    std::map<std::string, std::string> out;
    for (const auto& item : split(s, ';')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            out[item] = "";
        else
            out[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return out;
}

Complex read_complex(const std::string& s)
{
    const auto parts = split(s, ',');
    if (parts.empty() || parts.size() > 2)
        throw Error(ErrorCode::InvalidArgument, "complex value reads 're' or 're,im', got '" + s + "'");
    return {to_double("real part", parts[0]), parts.size() == 2 ? to_double("imaginary part", parts[1]) : 0.0};
}

// ---------------------------------------------------------------------------
// Output helpers

json complex_json(Complex z)
{
    return json::array({z.real(), z.imag()});
}

json key_json(const TermKey& k)
{
    return {{"lam", to_string(k.lam)}, {"mu", to_string(k.mu)}, {"t", to_string(k.t)}};
}

json element_json(const Element& x, const AtomTable& table)
{
    json terms = json::array();
    for (const auto& [k, c] : x) {
        json t = key_json(k);
        t["coeff"] = to_string(c);
        t["value"] = complex_json(scalar_numeric(c, table));
        terms.push_back(std::move(t));
    }
    return {{"text", to_string(x)}, {"terms", std::move(terms)}, {"l1_norm", l1_norm(x, table)}};
}

json numeric_element_json(const NumericElement& x)
{
    json terms = json::array();
    for (const auto& [k, c] : x) {
        json t = key_json(k);
        t["value"] = complex_json(c);
        terms.push_back(std::move(t));
    }
    return {{"terms", std::move(terms)}, {"l1_norm", l1_norm(x)}};
}

std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

std::string fmt(Complex z)
{
    std::ostringstream os;
    os.precision(12);
    os << z.real() << (z.imag() < 0 ? " - " : " + ") << std::fabs(z.imag()) << "i";
    return os.str();
}

std::string fmt_bool(bool b)
{
    return b ? "true" : "false";
}

Output element_output(const Element& x, const AtomTable& table)
{
    return {{{"element", element_json(x, table)}}, to_string(x) + "\n"};
}

Output numeric_output(const NumericElement& x)
{
    std::ostringstream os;
    for (const auto& [k, c] : x)
        os << "M(" << to_string(k.lam) << ") D(" << to_string(k.mu) << ") V(" << to_string(k.t) << "): " << fmt(c)
           << "\n";
    if (x.empty())
        os << "0\n";
    return {{{"element", numeric_element_json(x)}}, os.str()};
}

void append_line(Output& o, const std::string& key, const std::string& value)
{
    o.human += key + ": " + value + "\n";
}

// ---------------------------------------------------------------------------
// Characters

TripleCharacter read_character(Context& ctx, const std::string& family, const std::string& params, json& desc)
{
    const auto p = read_params(params);
    const GroupMode mode = ctx.table().group_mode();
    desc = {{"family", family}, {"params", p}};
    auto ap_point = [&]() {
        if (p.count("inf"))
            return APPoint::at_infinity();
        const double y = p.count("y") ? to_double("y", p.at("y")) : 0.0;
        return APPoint::finite(p.count("angles") ? read_bohr(ctx, p.at("angles")) : BohrCharacter{}, y);
    };
    auto vside = [&]() {
        if (p.count("inf"))
            return VSide::at_infinity();
        if (mode == GroupMode::Z)
            return VSide::disc(p.count("w") ? read_complex(p.at("w")) : Complex(0));
        const double y = p.count("y") ? to_double("y", p.at("y")) : 0.0;
        return VSide::finite(p.count("angles") ? read_dilation_character(ctx, p.at("angles")) : DilationCharacter{},
                             y);
    };
    if (family == "D1")
        return TripleCharacter::d1(ap_point());
    if (family == "D2")
        return TripleCharacter::d2(ap_point());
    if (family == "D3")
        return TripleCharacter::d3(vside());
    if (family == "D4")
        return TripleCharacter::d4(vside());
    if (family == "Chi0")
        return TripleCharacter::chi0(vside());
    if (family == "chi_inf")
        return TripleCharacter::chi_inf(mode);
    throw Error(ErrorCode::InvalidArgument, "family must be D1, D2, D3, D4, Chi0 or chi_inf");
}

// ---------------------------------------------------------------------------
// Subcommand registry

struct Command {
    CLI::App* app;
    std::function<Output(Context&)> handler;
};

AlgebraId read_algebra(const std::string& s)
{
    static const std::map<std::string, AlgebraId> names{{"Bp", AlgebraId::Bp},
                                                        {"Ap", AlgebraId::Ap},
                                                        {"BphG", AlgebraId::BphG},
                                                        {"AphGplus", AlgebraId::AphGplus},
                                                        {"AphGplusAdjoint", AlgebraId::AphGplusAdjoint}};
    const auto it = names.find(s);
    if (it == names.end())
        throw Error(ErrorCode::InvalidArgument, "algebra must be Bp, Ap, BphG, AphGplus or AphGplusAdjoint");
    return it->second;
}

IdealId read_ideal(Context& ctx, const std::string& s, const std::string& t)
{
    if (s == "cp" || s == "Cp")
        return IdealId::cp();
    if (s == "cph" || s == "cphg" || s == "CphG")
        return IdealId::cphg();
    if (s == "i0" || s == "I0")
        return IdealId::i0();
    if (s == "jt" || s == "Jt")
        return IdealId::jt(read_dilation(ctx, t.empty() ? "1" : t));
    throw Error(ErrorCode::InvalidArgument, "ideal must be cp, cph, i0 or jt");
}

CompressMode::Kind read_mode(const std::string& s)
{
    if (s == "translation")
        return CompressMode::Kind::translation;
    if (s == "dilation_in")
        return CompressMode::Kind::dilation_in;
    if (s == "dilation_out")
        return CompressMode::Kind::dilation_out;
    throw Error(ErrorCode::InvalidArgument, "mode must be translation, dilation_in or dilation_out");
}

std::vector<double> read_numeric_freqs(Context& ctx, const std::string& s)
{
    std::vector<double> out;
    for (const auto& item : split(s, ','))
        out.push_back(numeric(read_frequency(ctx, item), ctx.table()));
    return out;
}

json certificate_json(const Certificate& c, const AtomTable& table)
{
    json j{{"kind", c.kind == Certificate::Kind::commutator_pair ? "commutator_pair" : "telescope"},
           {"policy", c.policy == Certificate::Policy::exact ? "exact" : "numeric"},
           {"verified", verify_certificate(c, table)},
           {"residual", certificate_residual(c, table)}};
    if (c.kind == Certificate::Kind::commutator_pair) {
        j["f"] = element_json(c.f, table);
        j["generator"] = element_json(c.generator, table);
        j["target"] = element_json(c.target, table);
    } else {
        j["t"] = c.t;
        json steps = json::array();
        for (const auto& s : c.steps)
            steps.push_back({{"coeff", complex_json(s.coeff)}, {"kappa", s.kappa}, {"mu", s.mu}});
        j["steps"] = std::move(steps);
        json target = json::array();
        for (const auto& [w, a] : c.target_numeric)
            target.push_back({{"frequency", w}, {"coeff", complex_json(a)}});
        j["target"] = std::move(target);
    }
    return j;
}

void register_commands(CLI::App& app, std::vector<Command>& cmds)
{
    // Option storage lives as long as the App (captured by shared_ptr).
    struct Opts {
        std::string x, y, axis = "E", index = "0", algebra = "AphGplus", grading = "translation", theta = "0",
                                 family = "chi_inf", params, ideal = "cp", t = "0", tphase, angles, c_angles, lam = "1",
                                 s = "1", mode = "translation", schedule, freqs = "1", basis = "1", packet = "1,0,0",
                                 gpacket = "0.7,0.2,0.1";
        unsigned m = 1;
        bool lenient = false, flip = false, dual = false;
        double T = 100, eps = 0.05, tol = 0.1, k1 = 1, k2 = 1, dlam = 1, dmu = 1, dt = 1, tt = 0;
        int steps = kDefaultCesaroSteps, count = 1, trials = 2000;
        long long limit = 100000;
        std::uint64_t seed = 0;
        bool seed_given = false;
    };
    auto o = std::make_shared<Opts>();

    auto add = [&](const char* name, const char* desc, std::function<Output(Context&)> h) {
        CLI::App* sub = app.add_subcommand(name, desc);
        cmds.push_back({sub, std::move(h)});
        return sub;
    };

    auto* normalize = add("normalize", "Normal form of an expression", [o](Context& ctx) {
        ctx.input = o->x;
        std::vector<Letter> w;
        const Element x = parse_word(o->x, w, &ctx.table()) ? normalize_word(w).to_element() : read_element(ctx, o->x);
        return element_output(x, ctx.table());
    });
    normalize->add_option("expr", o->x, "expression")->default_val("");

    auto* mulc = add("mul", "Product of two elements", [o](Context& ctx) {
        const Element x = read_element(ctx, o->x);
        const Element y = read_element(ctx, o->y);
        return element_output(mul(x, y), ctx.table());
    });
    mulc->add_option("x", o->x)->required();
    mulc->add_option("y", o->y)->required();

    add("adjoint", "Adjoint of an element",
        [o](Context& ctx) { return element_output(adjoint(read_element(ctx, o->x)), ctx.table()); })
        ->add_option("x", o->x)
        ->required();

    auto* coeff = add("coeff", "Coefficient maps E_s, Z_m, H_k", [o](Context& ctx) {
        const Element x = read_element(ctx, o->x);
        Axis axis;
        if (o->axis == "E")
            axis = Axis::E;
        else if (o->axis == "Z")
            axis = Axis::Z;
        else if (o->axis == "H")
            axis = Axis::H;
        else
            throw Error(ErrorCode::InvalidArgument, "axis must be E, Z or H");
        const CoeffIndex idx =
            axis == Axis::H ? CoeffIndex(read_dilation(ctx, o->index)) : CoeffIndex(read_frequency(ctx, o->index));
        return element_output(coeff_map(x, axis, idx), ctx.table());
    });
    coeff->add_option("x", o->x)->required();
    coeff->add_option("--axis", o->axis, "E, Z or H");
    coeff->add_option("--index", o->index, "frequency (E, Z) or dilation (H)");

    auto* support = add("support", "Support predicate for a subalgebra", [o](Context& ctx) {
        const Element x = read_element(ctx, o->x);
        const bool member = support_predicate(x, read_algebra(o->algebra), ctx.table(), ctx.guard());
        Output out{{{"algebra", o->algebra}, {"member", member}}, ""};
        append_line(out, "member", fmt_bool(member));
        return out;
    });
    support->add_option("x", o->x)->required();
    support->add_option("--algebra", o->algebra, "Bp, Ap, BphG, AphGplus or AphGplusAdjoint");

    auto* bf = add("bf", "Bochner-Fejer polynomial", [o](Context& ctx) {
        const Element x = read_element(ctx, o->x);
        const BFSpec spec{o->m, read_grading(o->grading), !o->lenient};
        const auto weights = bochner_fejer_weights(x, spec);
        const Element y = bochner_fejer(x, spec);
        Output out = element_output(y, ctx.table());
        json ws = json::array();
        for (const auto& w : weights) {
            ws.push_back({{"key", key_json(w.key)},
                          {"weight", to_string(w.weight)},
                          {"in_span", w.in_span},
                          {"on_lattice", w.on_lattice}});
            out.human += "  weight " + to_string(w.weight) + (w.on_lattice ? "" : " (off lattice)") +
                         (w.in_span ? "" : " (outside span)") + "\n";
        }
        out.data["weights"] = std::move(ws);
        out.data["l1_error"] = l1_norm(x - y, ctx.table());
        return out;
    });
    bf->add_option("x", o->x)->required();
    bf->add_option("--m", o->m, "order m (1..20)");
    bf->add_option("--grading", o->grading);
    bf->add_flag("--lenient", o->lenient, "give weight 0 instead of failing on a short basis");

    auto* gauge_cmd = add("gauge", "Exact gauge automorphism for rational theta", [o](Context& ctx) {
        const Element x = read_element(ctx, o->x);
        return element_output(gauge_exact(x, read_grading(o->grading), parse_rational(o->theta)), ctx.table());
    });
    gauge_cmd->add_option("x", o->x)->required();
    gauge_cmd->add_option("--grading", o->grading);
    gauge_cmd->add_option("--theta", o->theta, "rational angle");

    auto* cesaro = add("cesaro", "Cesaro mean of the gauge orbit", [o](Context& ctx) {
        const Element x = read_element(ctx, o->x);
        const Grading g = read_grading(o->grading);
        const CoeffIndex s = read_index(ctx, g, o->index);
        const NumericElement mean = cesaro_mean(x, g, s, o->T, o->steps, ctx.table());
        const NumericElement lim = cesaro_limit(x, g, s, ctx.table());
        Output out = numeric_output(mean);
        out.data["limit"] = numeric_element_json(lim);
        out.data["l1_error"] = l1_distance(mean, lim);
        append_line(out, "l1 distance to limit", fmt(l1_distance(mean, lim)));
        return out;
    });
    cesaro->add_option("x", o->x)->required();
    cesaro->add_option("--grading", o->grading);
    cesaro->add_option("--index", o->index);
    cesaro->add_option("--T", o->T);
    cesaro->add_option("--steps", o->steps);

    auto* kernel = add("kernel", "Bochner-Fejer kernel value", [o](Context& ctx) {
        std::vector<Frequency> fs;
        for (const auto& item : split(o->basis, ','))
            fs.push_back(read_frequency(ctx, item));
        const RationalBasis basis = rational_basis(fs);
        const double v = bf_kernel(basis, o->m, o->tt, ctx.table());
        Output out{{{"value", v}, {"basis_size", basis.size()}}, ""};
        append_line(out, "value", fmt(v));
        return out;
    });
    kernel->add_option("--basis", o->basis, "comma-separated frequencies");
    kernel->add_option("--m", o->m);
    kernel->add_option("--t", o->tt);

    auto* rec = add("recurrence", "Recurrence times for a frequency set", [o](Context& ctx) {
        const auto freqs = read_numeric_freqs(ctx, o->freqs);
        Output out;
        json times = json::array();
        for (const auto& s : recurrence_schedule(freqs, o->eps, o->count, o->limit)) {
            times.push_back({{"time", s.time}, {"eps", s.eps}});
            append_line(out, "time", std::to_string(s.time) + " (eps " + fmt(s.eps) + ")");
        }
        out.data["times"] = std::move(times);
        return out;
    });
    rec->add_option("--freqs", o->freqs, "comma-separated frequencies");
    rec->add_option("--eps", o->eps);
    rec->add_option("--limit", o->limit);
    rec->add_option("--count", o->count, "schedule length (eps halves each step)");

    auto* chev = add("char-eval", "Evaluate a character", [o](Context& ctx) {
        const Element x = read_element(ctx, o->x);
        json desc;
        const TripleCharacter chi = read_character(ctx, o->family, o->params, desc);
        const CharacterValue v = eval_character(chi, x, ctx.table(), ctx.guard());
        if (!v.trusted)
            ctx.warnings.push_back("untrusted character: Chi0 away from y0 has unresolved continuity");
        Output out{{{"character", desc}, {"value", complex_json(v.value)}, {"trusted", v.trusted}}, ""};
        if (const auto exact = eval_character_exact(chi, x, ctx.table(), ctx.guard()))
            out.data["exact"] = to_string(*exact);
        append_line(out, "value", fmt(v.value));
        append_line(out, "trusted", fmt_bool(v.trusted));
        return out;
    });
    chev->add_option("x", o->x)->required();
    chev->add_option("--family", o->family, "D1, D2, D3, D4, Chi0 or chi_inf");
    chev->add_option("--params", o->params, "e.g. 'y=1;angles=ONE:PI', 'inf', 'w=0.5,0.1'");

    auto* it = add("ideal-test", "Membership in Cp, CphG, I0 or J_t", [o](Context& ctx) {
        const Element x = read_element(ctx, o->x);
        const bool member = in_ideal(x, read_ideal(ctx, o->ideal, o->tphase), ctx.table(), ctx.guard());
        Output out{{{"ideal", o->ideal}, {"member", member}}, ""};
        append_line(out, "member", fmt_bool(member));
        return out;
    });
    it->add_option("x", o->x)->required();
    it->add_option("--ideal", o->ideal, "cp, cph, i0 or jt");
    it->add_option("--t", o->tphase, "dilation for jt");

    auto* cc = add("cert-commutator", "Certificate that M_lam D_s is a commutator", [o](Context& ctx) {
        const Certificate c =
            commutator_certificate(read_frequency(ctx, o->lam), read_frequency(ctx, o->s), ctx.table(), ctx.guard());
        return Output{certificate_json(c, ctx.table()), describe(c, ctx.table())};
    });
    cc->add_option("--lam", o->lam);
    cc->add_option("--s", o->s);

    auto* cj = add("cert-jt", "Telescoping certificate in J_t", [o](Context& ctx) {
        const Certificate c = jt_reduce(o->dlam, o->dt);
        return Output{certificate_json(c, ctx.table()), describe(c, ctx.table())};
    });
    cj->add_option("--lam", o->dlam);
    cj->add_option("--t", o->dt);

    auto* aa = add("auto-apply", "Apply an automorphism spec", [o](Context& ctx) {
        const Element x = read_element(ctx, o->x);
        AutomorphismSpec spec;
        spec.t = read_dilation(ctx, o->t);
        if (!o->angles.empty())
            spec.d = read_bohr(ctx, o->angles);
        if (!o->c_angles.empty())
            spec.c = read_bohr(ctx, o->c_angles);
        if (!o->theta.empty() && o->theta != "0")
            spec.vgauge.set_angle(std::string(kUnitDilation), read_phase(ctx, o->theta));
        spec.flip = o->flip;
        const Element y = apply_automorphism(x, spec);
        Output out = element_output(y, ctx.table());
        const bool before = support_predicate(x, AlgebraId::AphGplus, ctx.table(), ctx.guard());
        const bool after = support_predicate(y, AlgebraId::AphGplus, ctx.table(), ctx.guard());
        out.data["admissible_for_triple"] = spec.admissible_for_triple();
        out.data["l1_before"] = l1_norm(x, ctx.table());
        out.data["l1_after"] = l1_norm(y, ctx.table());
        out.data["aphg_before"] = before;
        out.data["aphg_after"] = after;
        append_line(out, "l1 norm", fmt(l1_norm(x, ctx.table())) + " -> " + fmt(l1_norm(y, ctx.table())));
        return out;
    });
    aa->add_option("x", o->x)->required();
    aa->add_option("--t", o->t, "dilation index of Ad(V_t)");
    aa->add_option("--theta", o->theta, "V-gauge phase per UNIT");
    aa->add_option("--angles", o->angles, "multiplication-side Bohr character 'atom:phase,...'");
    aa->add_option("--c-angles", o->c_angles, "translation-side Bohr character 'atom:phase,...'");
    aa->add_flag("--flip", o->flip, "request the M/D flip (always rejected)");

    auto* fc = add("flip-check", "Show the M/D flip cannot respect the Weyl relation", [o](Context&) {
        const bool c = check_flip_contradiction(o->k1, o->k2);
        Output out{{{"contradiction", c}, {"k1", o->k1}, {"k2", o->k2}}, ""};
        append_line(out, "contradiction", fmt_bool(c));
        return out;
    });
    fc->add_option("--k1", o->k1);
    fc->add_option("--k2", o->k2);

    auto* sr = add("sim-residuals", "Relation residuals on a packet", [o](Context&) {
        const PacketSum f{read_packet(o->packet)};
        const double w = relation_residual(Relation::weyl, o->dlam, o->dmu, f);
        const double dm = relation_residual(Relation::dil_m, o->dt, o->dlam, f);
        const double dd = relation_residual(Relation::dil_d, o->dt, o->dmu, f);
        Output out{{{"weyl", w}, {"dilM", dm}, {"dilD", dd}, {"norm", packet_norm(f)}}, ""};
        append_line(out, "weyl", fmt(w));
        append_line(out, "dilM", fmt(dm));
        append_line(out, "dilD", fmt(dd));
        return out;
    });
    sr->add_option("--lam", o->dlam);
    sr->add_option("--mu", o->dmu);
    sr->add_option("--t", o->dt);
    sr->add_option("--packet", o->packet, "a,b,c");

    auto* snb = add("sim-norm-bound", "Packet lower bound on the operator norm", [o](Context& ctx) {
        const Element x = read_element(ctx, o->x);
        const std::uint64_t seed = o->seed_given ? o->seed : ctx.cfg.seed;
        const double b = norm_lower_bound(x, o->trials, seed, ctx.table());
        const double l1 = l1_norm(x, ctx.table());
        Output out{{{"bound", b}, {"l1_norm", l1}, {"consistent", b <= l1 + 1e-8}, {"seed", seed}}, ""};
        append_line(out, "lower bound", fmt(b));
        append_line(out, "l1 norm", fmt(l1));
        return out;
    });
    snb->add_option("x", o->x)->required();
    snb->add_option("--trials", o->trials);
    snb->add_option("--seed", o->seed)->each([o](const std::string&) { o->seed_given = true; });

    auto* sw = add("sim-wot", "WOT convergence of compressions", [o](Context& ctx) {
        const Element x = read_element(ctx, o->x);
        std::vector<std::int64_t> schedule;
        if (!o->schedule.empty()) {
            for (const auto& item : split(o->schedule, ','))
                schedule.push_back(static_cast<std::int64_t>(to_double("schedule entry", item)));
        } else {
            for (const auto& s : recurrence_schedule(read_numeric_freqs(ctx, o->freqs), o->eps, o->count, o->limit))
                schedule.push_back(s.time);
        }
        const PacketSum f{read_packet(o->packet)}, g{read_packet(o->gpacket)};
        const WotReport r = wot_compression_demo(x, f, g, read_mode(o->mode), schedule, o->tol, ctx.table());
        Output out;
        json steps = json::array();
        for (const auto& s : r.steps) {
            steps.push_back({{"n", s.n}, {"error", s.error}, {"relative", s.relative}});
            append_line(out, "n=" + std::to_string(s.n), fmt(s.error) + " (relative " + fmt(s.relative) + ")");
        }
        out.data = {{"limit", element_json(r.limit, ctx.table())},
                    {"steps", std::move(steps)},
                    {"non_monotone", r.non_monotone},
                    {"decreasing", r.decreasing},
                    {"converged", r.converged}};
        append_line(out, "decreasing", fmt_bool(r.decreasing));
        append_line(out, "converged", fmt_bool(r.converged));
        return out;
    });
    sw->add_option("x", o->x)->required();
    sw->add_option("--mode", o->mode, "translation, dilation_in or dilation_out");
    sw->add_option("--schedule", o->schedule, "comma-separated n values");
    sw->add_option("--freqs", o->freqs, "frequencies for a recurrence schedule");
    sw->add_option("--eps", o->eps);
    sw->add_option("--count", o->count);
    sw->add_option("--limit", o->limit);
    sw->add_option("--tol", o->tol);
    sw->add_option("--f", o->packet, "a,b,c");
    sw->add_option("--g", o->gpacket, "a,b,c");

    auto* sci = add("sim-column-identity", "Column-norm identity of the regular representation", [o](Context& ctx) {
        const Element x = read_element(ctx, o->x);
        const PacketSum f{read_packet(o->packet)};
        const ColumnIdentity ci = column_identity(x, f, read_grading(o->grading), ctx.table());
        Output out{{{"lhs", ci.lhs}, {"rhs", ci.rhs}, {"difference", std::fabs(ci.lhs - ci.rhs)}}, ""};
        append_line(out, "lhs", fmt(ci.lhs));
        append_line(out, "rhs", fmt(ci.rhs));
        return out;
    });
    sci->add_option("x", o->x)->required();
    sci->add_option("--grading", o->grading);
    sci->add_option("--packet", o->packet, "a,b,c");

    auto* sf = add("sim-fourier", "Fourier conjugation check", [o](Context&) {
        const PacketSum f{read_packet(o->packet)}, g{read_packet(o->gpacket)};
        const double v = fourier_conjugation_check(o->dlam, f, g, o->dual);
        Output out{{{"value", v}, {"dual", o->dual}}, ""};
        append_line(out, "value", fmt(v));
        return out;
    });
    sf->add_option("--lam", o->dlam);
    sf->add_flag("--dual", o->dual, "check F D F^-1 against M_{-lam}");
    sf->add_option("--f", o->packet, "a,b,c");
    sf->add_option("--g", o->gpacket, "a,b,c");
}

json error_json(const Error& e)
{
    json span = nullptr;
    if (e.span())
        span = {{"begin", e.span()->begin}, {"end", e.span()->end}};
    return {{"code", std::string(error_code_name(e.code()))}, {"message", e.what()}, {"span", span}};
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact engine for the triple semigroup algebra"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string config_path;
    bool as_json = false;
    app.add_option("--config", config_path, "INI file declaring atoms, dilations and settings");
    app.add_flag("--json", as_json, "emit one JSON document");

    std::vector<Command> cmds;
    register_commands(app, cmds);

    std::string command;
    Context ctx;
    auto fail = [&](const Error& e, int code) {
        if (as_json) {
            json doc{{"command", command}, {"ok", false}, {"error", error_json(e)}, {"warnings", ctx.warnings}};
            out << doc.dump(2) << "\n";
        } else {
            err << "error [" << error_code_name(e.code()) << "]: " << e.what() << "\n";
            if (e.span() && !ctx.input.empty()) {
                err << "  " << ctx.input << "\n  " << std::string(e.span()->begin, ' ')
                    << std::string(std::max<std::size_t>(1, e.span()->end - e.span()->begin), '^') << "\n";
            }
        }
        return code;
    };

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        for (const auto& c : cmds)
            if (c.app->parsed())
                command = c.app->get_name();
        return fail(Error(ErrorCode::InvalidArgument, e.what()), 2);
    }

    const Command* chosen = nullptr;
    for (const auto& c : cmds)
        if (c.app->parsed())
            chosen = &c;
    command = chosen->app->get_name();

    try {
        if (!config_path.empty())
            ctx.cfg = load_config(config_path);
        const Output o = chosen->handler(ctx);
        if (as_json) {
            json doc{{"command", command}, {"ok", true}, {"result", o.data}, {"warnings", ctx.warnings}};
            out << doc.dump(2) << "\n";
        } else {
            out << o.human;
            for (const auto& w : ctx.warnings)
                err << "warning: " << w << "\n";
        }
        return 0;
    } catch (const Error& e) {
        return fail(e, 1);
    } catch (const std::exception& e) {
        return fail(Error(ErrorCode::Internal, e.what()), 1);
    }
}

} // namespace tsalg::cli
