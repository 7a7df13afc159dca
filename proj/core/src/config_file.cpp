#include "nscr/config_file.hpp"

#include <fstream>
#include <istream>
#include <stdexcept>

namespace nscr {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

ConfigFile ConfigFile::parse(std::istream& is, const std::string& origin) {
  ConfigFile cf;
  ParamMap* current = &cf.global_;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = origin + ":" + std::to_string(lineno);
    if (line.front() == '[') {
      if (line.back() != ']') throw std::invalid_argument(where + ": unterminated section header");
      const std::string name = trim(line.substr(1, line.size() - 2));
      if (name.empty()) throw std::invalid_argument(where + ": empty section name");
      current = &cf.sections_[name];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument(where + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw std::invalid_argument(where + ": empty key");
    (*current)[key] = trim(line.substr(eq + 1));
  }
  return cf;
}

ConfigFile ConfigFile::load(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open config file '" + path + "'");
  return parse(is, path);
}

ParamMap ConfigFile::section(const std::string& name) const {
  ParamMap out = global_;
  const auto it = sections_.find(name);
  if (it != sections_.end())
    for (const auto& [k, v] : it->second) out[k] = v;
  return out;
}

}  // namespace nscr
