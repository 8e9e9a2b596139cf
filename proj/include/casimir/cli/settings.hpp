#pragma once

// Resolved run configuration for the command-line tool: grids, pipelines and
// tolerances, loaded from a key=value file and then overridden by flags.

#include <map>
#include <string>
#include <vector>

namespace casimir::cli {

enum class Profile { fast, standard, thorough };

/// Accepts "default" for the standard profile.
Profile parse_profile(const std::string& s);
std::string to_string(Profile p);

struct Tolerances {
  double quad_tol = 1e-10;
  double k_max_factor = 40.0;
  double sphere_tol = 1e-10;
  double agree_threshold = 1e-3;
};

Tolerances tolerances_for(Profile p);

struct PlatesGrid {
  std::vector<double> a{1.0};
  std::vector<double> sigma_bar{0.01};
  /// Sigma / sigma_bar.
  std::vector<double> ratio{0.0};
  std::vector<double> rapidity{0.0};
  /// Boost direction angle in the transverse plane, radians.
  double direction = 0.0;
};

struct SphereGrid {
  std::vector<double> a{1.0};
  std::vector<double> sigma{0.1};
  /// Sigma / sigma.
  std::vector<double> ratio{1.0};
  double phi = 0.8;
  long l_max = 200000;
};

/// Sections of a config file: section name -> key -> raw value.
using ConfigSections = std::map<std::string, std::map<std::string, std::string>>;

/// Parses "[section]" headers and "key = value" lines; '#' and ';' start comments.
/// Keys before any header land in section "". Throws std::runtime_error with the
/// line number on malformed input.
ConfigSections parse_config(const std::string& text);
ConfigSections load_config_file(const std::string& path);

/// Comma-separated reals; the empty string is the empty list.
std::vector<double> parse_real_list(const std::string& s);
std::vector<std::string> parse_word_list(const std::string& s);

}  // namespace casimir::cli
