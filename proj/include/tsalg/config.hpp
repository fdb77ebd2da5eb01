#pragma once

// INI configuration: declared atoms, dilation symbols and run settings.
//
//   [atoms]          name = positive value      (ONE is implicit)
//   [dilations]      name = value               (UNIT is implicit)
//   [settings]       group_mode = Z | R, sign_guard = 1e-9, seed = 1
//
// PI is declared with value π unless the file declares it.

#include <cstdint>
#include <string>
#include <string_view>

#include "tsalg/exactnum.hpp"

namespace tsalg {

struct Config {
    AtomTable table;
    double sign_guard = kDefaultSignGuard;
    std::uint64_t seed = 1;
};

Config default_config();
/// Throws ConfigError on malformed input or invalid declarations.
Config parse_config(std::string_view text);
Config load_config(const std::string& path);

} // namespace tsalg
