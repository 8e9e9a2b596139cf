#include "casimir/cli/settings.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace casimir::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

Profile parse_profile(const std::string& s) {
  if (s == "fast") return Profile::fast;
  if (s == "default" || s == "standard") return Profile::standard;
  if (s == "thorough") return Profile::thorough;
  throw std::invalid_argument("unknown profile '" + s + "' (expected default, fast or thorough)");
}

std::string to_string(Profile p) {
  switch (p) {
    case Profile::fast: return "fast";
    case Profile::standard: return "default";
    case Profile::thorough: return "thorough";
  }
  return "default";
}

Tolerances tolerances_for(Profile p) {
  Tolerances t;
  if (p == Profile::fast) {
    t.quad_tol = 1e-8;
    t.sphere_tol = 1e-8;
  } else if (p == Profile::thorough) {
    t.quad_tol = 1e-12;
    t.sphere_tol = 1e-12;
  }
  return t;
}

ConfigSections parse_config(const std::string& text) {
  ConfigSections out;
  std::string section;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw std::runtime_error("line " + std::to_string(lineno) + ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::runtime_error("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw std::runtime_error("line " + std::to_string(lineno) + ": empty key");
    out[section][key] = trim(line.substr(eq + 1));
  }
  return out;
}

ConfigSections load_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

std::vector<std::string> parse_word_list(const std::string& s) {
  std::vector<std::string> out;
  if (trim(s).empty()) return out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) out.push_back(trim(item));
  return out;
}

std::vector<double> parse_real_list(const std::string& s) {
  std::vector<double> out;
  for (const std::string& w : parse_word_list(s)) {
    double v = 0.0;
    const auto [p, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
    if (ec != std::errc() || p != w.data() + w.size() || w.empty()) {
      throw std::invalid_argument("not a number: '" + w + "'");
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace casimir::cli
