#ifndef QGIBBS_CONFIG_HPP
#define QGIBBS_CONFIG_HPP

#include "qgibbs/types.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace qgibbs {

inline constexpr const char* QGIBBS_VERSION = "1.0.0";

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Plain-text key=value configuration with [section] prefixes; section keys are
// flattened to "section.key". Command-line overrides use the same flattened names
// and win over file entries.
class ExperimentConfig {
  public:
    ExperimentConfig() = default;

    static ExperimentConfig from_file(const std::string& path);

    // "key=value"; throws ConfigError on malformed input.
    void override_kv(const std::string& kv);

    // Rejects any stored key outside `allowed`.
    void restrict_keys(const std::set<std::string>& allowed) const;

    bool has(const std::string& key) const { return kv_.count(key) != 0; }
    std::string get_string(const std::string& key, const std::string& def) const;
    double get_double(const std::string& key, double def) const;
    int get_int(const std::string& key, int def) const;
    bool get_bool(const std::string& key, bool def) const;
    VecD get_grid(const std::string& key, const std::string& def) const;

    const std::map<std::string, std::string>& entries() const { return kv_; }

  private:
    std::map<std::string, std::string> kv_;
};

// Grid syntax: comma-separated segments, each "lo:step:hi" (inclusive) or a scalar.
// "2:2:20" -> 2,4,...,20; "0.6:0.05:0.95,1.05:0.05:1.4" -> vertex-skipping grid.
VecD parse_grid(const std::string& text);

} // namespace qgibbs

#endif
