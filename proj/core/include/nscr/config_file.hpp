#pragma once

#include <iosfwd>
#include <map>
#include <string>

namespace nscr {

using ParamMap = std::map<std::string, std::string>;

// Flat "key = value" text with optional [section] headers; '#' and ';' start comments.
// Keys before the first header are global and apply to every section.
class ConfigFile {
 public:
  static ConfigFile parse(std::istream& is, const std::string& origin = "<stream>");
  static ConfigFile load(const std::string& path);

  // Global keys overlaid with the keys of `section`.
  ParamMap section(const std::string& name) const;
  bool has_section(const std::string& name) const { return sections_.count(name) != 0; }

 private:
  ParamMap global_;
  std::map<std::string, ParamMap> sections_;
};

}  // namespace nscr
