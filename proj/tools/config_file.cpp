#include "config_file.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace catcav::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string unquote(const std::string& v) {
  if (v.size() >= 2 && (v.front() == '"' || v.front() == '\'') && v.back() == v.front())
    return v.substr(1, v.size() - 2);
  return v;
}

// "[1, 2, 3]" and "1 2 3" both become "1,2,3".
std::string normalize_list(std::string v) {
  if (v.size() >= 2 && v.front() == '[' && v.back() == ']') v = v.substr(1, v.size() - 2);
  std::string out;
  std::istringstream in(v);
  std::string item;
  bool list = v.find(',') != std::string::npos;
  char sep = list ? ',' : ' ';
  while (std::getline(in, item, sep)) {
    item = trim(item);
    if (item.empty()) continue;
    if (!out.empty()) out += ',';
    out += unquote(item);
  }
  return out;
}

}  // namespace

ConfigEntries parse_config(const std::string& text, const std::string& origin) {
  ConfigEntries entries;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.rfind("--", 0) == 0) key.erase(0, 2);
    std::replace(key.begin(), key.end(), '_', '-');
    if (key.empty() || value.empty())
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key or value");
    if (key == "config") throw ConfigError(origin + ": nested config files are not supported");
    entries.emplace_back(key, normalize_list(unquote(value)));
  }
  return entries;
}

ConfigEntries read_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream text;
  text << f.rdbuf();
  return parse_config(text.str(), path);
}

std::vector<std::string> expand_config(const std::vector<std::string>& args,
                                       const std::vector<std::string>& subcommands) {
  std::vector<std::string> rest;
  std::vector<std::string> paths;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a == "--config") {
      if (i + 1 >= args.size()) throw ConfigError("--config needs a path");
      paths.push_back(args[++i]);
    } else if (a.rfind("--config=", 0) == 0) {
      paths.push_back(a.substr(9));
    } else {
      rest.push_back(a);
    }
  }
  if (paths.empty()) return rest;

  std::vector<std::string> injected;
  for (const std::string& p : paths)
    for (const auto& [key, value] : read_config(p)) injected.push_back("--" + key + "=" + value);

  auto it = std::find_if(rest.begin(), rest.end(), [&](const std::string& a) {
    return std::find(subcommands.begin(), subcommands.end(), a) != subcommands.end();
  });
  if (it == rest.end()) throw ConfigError("--config requires a subcommand");
  rest.insert(it + 1, injected.begin(), injected.end());
  return rest;
}

}  // namespace catcav::cli
