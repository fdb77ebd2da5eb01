#include "tsalg/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <fstream>
#include <sstream>

namespace tsalg {

namespace {

constexpr double kPiValue = 3.14159265358979323846;

double number(const std::string& key, const std::string& text)
{
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size() || !std::isfinite(v))
            throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorCode::ConfigError, "'" + key + "' needs a finite number, got '" + text + "'");
    }
}

} // namespace

Config default_config()
{
    Config c;
    c.table.add_atom("PI", kPiValue);
    return c;
}

Config parse_config(std::string_view text)
{
    namespace pt = boost::property_tree;
    pt::ptree tree;
    std::istringstream in{std::string(text)};
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw Error(ErrorCode::ConfigError, "config line " + std::to_string(e.line()) + ": " + e.message());
    }

    Config c;
    for (const auto& [section, body] : tree) {
        if (section == "atoms") {
            for (const auto& [name, v] : body)
                c.table.add_atom(name, number(name, v.data()));
        } else if (section == "dilations") {
            for (const auto& [name, v] : body)
                c.table.add_dilation(name, number(name, v.data()));
        } else if (section == "settings") {
            for (const auto& [key, v] : body) {
                const std::string& val = v.data();
                if (key == "group_mode") {
                    if (val == "Z")
                        c.table.set_group_mode(GroupMode::Z);
                    else if (val == "R")
                        c.table.set_group_mode(GroupMode::R);
                    else
                        throw Error(ErrorCode::ConfigError, "group_mode must be Z or R");
                } else if (key == "sign_guard") {
                    c.sign_guard = number(key, val);
                    if (!(c.sign_guard > 0))
                        throw Error(ErrorCode::ConfigError, "sign_guard must be positive");
                } else if (key == "seed") {
                    try {
                        c.seed = std::stoull(val);
                    } catch (const std::exception&) {
                        throw Error(ErrorCode::ConfigError, "seed must be a nonnegative integer");
                    }
                } else {
                    throw Error(ErrorCode::ConfigError, "unknown setting '" + key + "'");
                }
            }
        } else {
            throw Error(ErrorCode::ConfigError, "unknown section [" + section + "]");
        }
    }
    if (!c.table.has_atom("PI"))
        c.table.add_atom("PI", kPiValue);
    return c;
}

Config load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::ConfigError, "cannot read config file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

} // namespace tsalg
