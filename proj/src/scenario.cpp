#include "srlab/scenario.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "srlab/constants.hpp"

namespace srlab {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    double out;
    try {
        out = std::stod(v, &used);
    } catch (const std::exception&) {
        throw ConfigError("scenario: key '" + key + "' has non-numeric value '" + v + "'");
    }
    if (used != v.size()) throw ConfigError("scenario: trailing junk in value of '" + key + "'");
    return out;
}

long long parse_int(const std::string& key, const std::string& v) {
    const double d = parse_double(key, v);
    if (d != std::floor(d)) throw ConfigError("scenario: key '" + key + "' must be an integer");
    return static_cast<long long>(d);
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError("scenario: key '" + key + "' must be true/false");
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(key, trim(item)));
    if (out.empty()) throw ConfigError("scenario: key '" + key + "' has an empty list");
    return out;
}

Vec3 parse_vec3(const std::string& key, const std::string& v) {
    const auto list = parse_list(key, v);
    if (list.size() != 3) throw ConfigError("scenario: key '" + key + "' needs three components");
    return {list[0], list[1], list[2]};
}

using SectionMap = std::map<std::string, std::map<std::string, std::string>>;

SectionMap read_sections(const std::string& text, const std::string& origin) {
    SectionMap sections;
    std::string current;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash_pos = line.find('#');
        if (hash_pos != std::string::npos) line.erase(hash_pos);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": malformed section header");
            current = trim(line.substr(1, line.size() - 2));
            sections[current];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos || current.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected 'key = value' inside a section");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key or value");
        if (!sections[current].emplace(key, value).second)
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
    return sections;
}

// consume-and-check helper: every key must be eaten
class SectionReader {
  public:
    SectionReader(const std::string& name, std::map<std::string, std::string> kv)
        : name_(name), kv_(std::move(kv)) {}

    std::optional<std::string> take(const std::string& key) {
        auto it = kv_.find(key);
        if (it == kv_.end()) return std::nullopt;
        std::string v = it->second;
        kv_.erase(it);
        return v;
    }

    std::string require(const std::string& key) {
        auto v = take(key);
        if (!v) throw ConfigError("scenario: [" + name_ + "] is missing key '" + key + "'");
        return *v;
    }

    void finish() const {
        if (!kv_.empty())
            throw ConfigError("scenario: unknown key '" + kv_.begin()->first + "' in section [" + name_ + "]");
    }

  private:
    std::string name_;
    std::map<std::string, std::string> kv_;
};

} // namespace

Scenario Scenario::parse_text(const std::string& text, const std::string& origin) {
    const auto sections = read_sections(text, origin);
    static const std::set<std::string> known = {"circuit", "loop", "trap", "ensemble", "sse", "output"};
    for (const auto& [name, _] : sections)
        if (!known.count(name)) throw ConfigError("scenario: unknown section [" + name + "]");

    Scenario sc;
    for (const auto& [name, kv] : sections)
        for (const auto& [k, v] : kv) sc.semantic[name + "." + k] = v;

    if (auto it = sections.find("circuit"); it != sections.end()) {
        SectionReader r("circuit", it->second);
        CircuitSpec c;
        c.inductance = parse_double("inductance_h", r.require("inductance_h"));
        c.omega = constants::two_pi * parse_double("frequency_hz", r.require("frequency_hz"));
        c.d = parse_double("d_m", r.require("d_m"));
        if (auto q = r.take("quality")) c.quality = parse_double("quality", *q);
        if (auto k = r.take("kappa_per_s")) c.kappa = parse_double("kappa_per_s", *k);
        r.finish();
        c.validate();
        if (c.kappa == 0) c.kappa = c.omega / c.quality;
        sc.circuit = c;
    }

    if (auto it = sections.find("loop"); it != sections.end()) {
        SectionReader r("loop", it->second);
        LoopGeometry g;
        std::optional<double> size;
        if (auto s = r.take("size_m")) size = parse_double("size_m", *s);
        int have_corners = 0;
        for (int i = 1; i <= 4; ++i) {
            if (auto c = r.take("corner" + std::to_string(i) + "_m")) {
                g.corners[i - 1] = parse_vec3("corner_m", *c);
                ++have_corners;
            }
        }
        if (have_corners != 0 && have_corners != 4)
            throw ConfigError("scenario: [loop] needs all four corners or none");
        if (have_corners == 0) {
            if (!size) {
                if (!sc.circuit) throw ConfigError("scenario: [loop] without size_m needs [circuit] d_m");
                size = sc.circuit->d;
            }
            g = LoopGeometry::square(*size);
        }
        if (auto o = r.take("orientation")) g.orientation = static_cast<int>(parse_int("orientation", *o));
        r.finish();
        g.validate();
        sc.loop = g;
    }

    if (auto it = sections.find("trap"); it != sections.end()) {
        SectionReader r("trap", it->second);
        TrapSpec t;
        t.omega_trap.x = constants::two_pi * parse_double("freq_x_hz", r.require("freq_x_hz"));
        t.omega_trap.y = constants::two_pi * parse_double("freq_y_hz", r.require("freq_y_hz"));
        t.omega_trap.z = constants::two_pi * parse_double("freq_z_hz", r.require("freq_z_hz"));
        t.center = parse_vec3("center_m", r.require("center_m"));
        t.temperature = parse_double("temperature_k", r.require("temperature_k"));
        t.mass = constants::mass_rb87;
        if (auto m = r.take("mass_kg")) t.mass = parse_double("mass_kg", *m);
        r.finish();
        t.validate();
        sc.trap = t;
    }

    if (auto it = sections.find("ensemble"); it != sections.end()) {
        SectionReader r("ensemble", it->second);
        Ensemble e;
        if (auto v = r.take("n1")) e.n1 = static_cast<int>(parse_int("n1", *v));
        if (auto v = r.take("n2")) e.n2 = static_cast<int>(parse_int("n2", *v));
        if (auto v = r.take("dg_tilde")) e.dg_tilde = parse_double("dg_tilde", *v);
        if (auto v = r.take("from_moments")) e.from_moments = parse_bool("from_moments", *v);
        if (auto v = r.take("n_total")) e.n_total = static_cast<int>(parse_int("n_total", *v));
        r.finish();
        if (e.from_moments) {
            if (e.n_total < 1) throw ConfigError("scenario: [ensemble] from_moments needs n_total >= 1");
        } else if (e.n1 + e.n2 < 1 || e.n1 < 0 || e.n2 < 0) {
            throw ConfigError("scenario: [ensemble] needs n1, n2 >= 0 with n1 + n2 >= 1");
        }
        sc.ensemble = e;
    }

    if (auto it = sections.find("sse"); it != sections.end()) {
        SectionReader r("sse", it->second);
        if (auto v = r.take("d_tau")) sc.sse_d_tau = parse_double("d_tau", *v);
        if (auto v = r.take("tau_max")) sc.sse_tau_max = parse_double("tau_max", *v);
        if (auto v = r.take("n_traj")) sc.sse_n_traj = static_cast<std::size_t>(parse_int("n_traj", *v));
        if (auto v = r.take("seed")) sc.seed = static_cast<std::uint64_t>(parse_int("seed", *v));
        if (auto v = r.take("record")) sc.sse_record = parse_list("record", *v);
        if (auto v = r.take("n_bins")) sc.sse_n_bins = static_cast<std::size_t>(parse_int("n_bins", *v));
        r.finish();
    }

    if (auto it = sections.find("output"); it != sections.end()) {
        SectionReader r("output", it->second);
        if (auto v = r.take("dir")) sc.output_dir = *v;
        r.finish();
    }

    return sc;
}

Scenario Scenario::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("scenario: cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_text(buffer.str(), path);
}

std::uint64_t Scenario::hash() const {
    // FNV-1a over the canonical "key=value" lines (sorted by map order)
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ULL;
        }
    };
    for (const auto& [k, v] : semantic) {
        mix(k);
        mix("=");
        mix(v);
        mix("\n");
    }
    return h;
}

LoopGeometry Scenario::loop_or_default() const {
    if (loop) return *loop;
    if (!circuit) throw ConfigError("scenario: need [loop] or [circuit] to build the loop geometry");
    return LoopGeometry::square(circuit->d);
}

TwoEnsembleSplit Scenario::split() const {
    if (!ensemble) throw ConfigError("scenario: [ensemble] section required");
    if (ensemble->from_moments)
        throw ConfigError("scenario: [ensemble] is in from_moments mode; run coupling-dist to derive it");
    return make_split(ensemble->n1, ensemble->n2, ensemble->dg_tilde);
}

SseConfig Scenario::sse_config() const {
    SseConfig cfg;
    cfg.split = split();
    cfg.d_tau = sse_d_tau;
    cfg.tau_max = sse_tau_max;
    cfg.n_traj = sse_n_traj;
    cfg.seed = seed;
    cfg.record_grid = sse_record;
    cfg.validate();
    return cfg;
}

} // namespace srlab
