#pragma once

// Flat key=value configuration files: one assignment per line, '#' starts a
// comment, values may be quoted or given as [a, b, c] lists.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace catcav::cli {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using ConfigEntries = std::vector<std::pair<std::string, std::string>>;

ConfigEntries parse_config(const std::string& text, const std::string& origin);
ConfigEntries read_config(const std::string& path);

// Removes --config <path> / --config=<path> from args and inserts the file's
// entries as --key=value right after the subcommand token, so flags given
// on the command line come later and win.
std::vector<std::string> expand_config(const std::vector<std::string>& args,
                                       const std::vector<std::string>& subcommands);

}  // namespace catcav::cli
