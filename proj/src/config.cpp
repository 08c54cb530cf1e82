#include "qgibbs/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace qgibbs {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& text) {
    try {
        std::size_t pos = 0;
        double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (...) {
        throw ConfigError("config: bad numeric value '" + text + "' for key '" + key + "'");
    }
}

} // namespace

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    ExperimentConfig cfg;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[' && t.back() == ']') {
            section = trim(t.substr(1, t.size() - 2));
            if (section.empty()) throw ConfigError("config: empty section name at line " +
                                                   std::to_string(lineno));
            continue;
        }
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: expected key=value at line " + std::to_string(lineno));
        std::string key = trim(t.substr(0, eq));
        std::string val = trim(t.substr(eq + 1));
        if (key.empty()) throw ConfigError("config: empty key at line " + std::to_string(lineno));
        if (!section.empty()) key = section + "." + key;
        cfg.kv_[key] = val;
    }
    return cfg;
}

void ExperimentConfig::override_kv(const std::string& kv) {
    auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError("config: override must be key=value, got '" + kv + "'");
    kv_[trim(kv.substr(0, eq))] = trim(kv.substr(eq + 1));
}

void ExperimentConfig::restrict_keys(const std::set<std::string>& allowed) const {
    for (const auto& [k, v] : kv_) {
        if (!allowed.count(k))
            throw ConfigError("config: unknown key '" + k + "'");
    }
}

std::string ExperimentConfig::get_string(const std::string& key, const std::string& def) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? def : it->second;
}

double ExperimentConfig::get_double(const std::string& key, double def) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? def : parse_double(key, it->second);
}

int ExperimentConfig::get_int(const std::string& key, int def) const {
    const double v = get_double(key, double(def));
    if (v != std::floor(v)) throw ConfigError("config: key '" + key + "' must be an integer");
    return int(v);
}

bool ExperimentConfig::get_bool(const std::string& key, bool def) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return def;
    if (it->second == "true" || it->second == "1") return true;
    if (it->second == "false" || it->second == "0") return false;
    throw ConfigError("config: key '" + key + "' must be true/false");
}

VecD ExperimentConfig::get_grid(const std::string& key, const std::string& def) const {
    auto it = kv_.find(key);
    try {
        return parse_grid(it == kv_.end() ? def : it->second);
    } catch (const std::exception& e) {
        throw ConfigError("config: bad grid for key '" + key + "': " + e.what());
    }
}

VecD parse_grid(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string seg;
    while (std::getline(ss, seg, ',')) {
        seg = trim(seg);
        if (seg.empty()) continue;
        const auto c1 = seg.find(':');
        if (c1 == std::string::npos) {
            out.push_back(parse_double("grid", seg));
            continue;
        }
        const auto c2 = seg.find(':', c1 + 1);
        if (c2 == std::string::npos) throw ConfigError("grid segment needs lo:step:hi");
        const double lo = parse_double("grid", seg.substr(0, c1));
        const double step = parse_double("grid", seg.substr(c1 + 1, c2 - c1 - 1));
        const double hi = parse_double("grid", seg.substr(c2 + 1));
        if (step <= 0.0 || hi < lo) throw ConfigError("grid segment must have step>0, hi>=lo");
        const int n = int(std::floor((hi - lo) / step + 1e-9)) + 1;
        for (int i = 0; i < n; ++i) out.push_back(lo + i * step);
    }
    if (out.empty()) throw ConfigError("empty grid");
    VecD v(out.size());
    for (std::size_t i = 0; i < out.size(); ++i) v[i] = out[i];
    return v;
}

} // namespace qgibbs
