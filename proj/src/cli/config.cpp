#include "holoifs/cli/config.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace holoifs::cli {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::optional<double> decimal(const std::string& s) {
    if (s.empty()) return std::nullopt;
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || errno == ERANGE) return std::nullopt;
    return v;
}

class Record {
public:
    Record(std::string where, std::istringstream& fields) : where_(std::move(where)) {
        std::string tok;
        while (fields >> tok) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos || eq == 0) fail("", "expected key=value, got '" + tok + "'");
            const std::string key = tok.substr(0, eq);
            if (values_.count(key)) fail(key, "given twice");
            values_[key] = tok.substr(eq + 1);
        }
    }

    [[noreturn]] void fail(const std::string& field, const std::string& what) const {
        throw ConfigError(where_ + (field.empty() ? "" : ": field '" + field + "'") + ": " + what);
    }

    std::string text(const std::string& key) {
        used_.insert(key);
        auto it = values_.find(key);
        if (it == values_.end()) fail(key, "missing");
        return it->second;
    }

    double number(const std::string& key) { return parse_number(text(key), where_ + ": field '" + key + "'"); }

    double number_or(const std::string& key, double fallback) {
        return values_.count(key) ? number(key) : (used_.insert(key), fallback);
    }

    void reject_unknown() const {
        for (const auto& [k, v] : values_)
            if (!used_.count(k)) fail(k, "unknown field");
    }

private:
    std::string where_;
    std::map<std::string, std::string> values_;
    std::set<std::string> used_;
};

}  // namespace

double parse_number(const std::string& token, const std::string& what) {
    if (const auto slash = token.find('/'); slash != std::string::npos) {
        const auto p = decimal(token.substr(0, slash));
        const auto q = decimal(token.substr(slash + 1));
        if (!p || !q || *q == 0.0) throw ConfigError(what + ": bad rational '" + token + "'");
        return *p / *q;
    }
    const auto v = decimal(token);
    if (!v) throw ConfigError(what + ": bad number '" + token + "'");
    return *v;
}

SystemConfig parse_config(const std::string& text, const std::string& source) {
    std::istringstream lines(text);
    std::string raw, label;
    std::optional<Disk> domain;
    std::vector<HoloMap> maps;
    int lineno = 0;
    while (std::getline(lines, raw)) {
        ++lineno;
        const std::string where = source + ":" + std::to_string(lineno);
        std::string line = raw.substr(0, raw.find('#'));
        line = trim(line);
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string head;
        fields >> head;
        if (head == "label") {
            std::string rest;
            std::getline(fields, rest);
            label = trim(rest);
        } else if (head == "domain") {
            if (domain) throw ConfigError(where + ": second domain record");
            Record r(where, fields);
            const Complex c(r.number("center_re"), r.number_or("center_im", 0.0));
            const double radius = r.number("radius");
            r.reject_unknown();
            if (!(radius > 0.0)) r.fail("radius", "must be positive");
            domain = Disk(c, radius);
        } else if (head == "map") {
            Record r(where, fields);
            const std::string kind = r.text("kind");
            if (kind == "affine") {
                const Complex alpha(r.number("alpha_re"), r.number_or("alpha_im", 0.0));
                const Complex b(r.number("b_re"), r.number_or("b_im", 0.0));
                r.reject_unknown();
                if (!(std::abs(alpha) > 0.0 && std::abs(alpha) < 1.0)) r.fail("alpha_re", "|alpha| must lie in (0, 1)");
                maps.push_back(HoloMap::affine(alpha, b));
            } else if (kind == "sqrt_branch") {
                const Complex c(r.number("c_re"), r.number_or("c_im", 0.0));
                const double sign = r.number("sign");
                r.reject_unknown();
                if (sign != 1.0 && sign != -1.0) r.fail("sign", "must be +1 or -1");
                maps.push_back(HoloMap::sqrt_branch(c, static_cast<int>(sign)));
            } else {
                r.fail("kind", "unknown map kind '" + kind + "'");
            }
        } else {
            throw ConfigError(where + ": unknown record '" + head + "'");
        }
    }
    if (!domain) throw ConfigError(source + ": missing domain record");
    if (maps.empty()) throw ConfigError(source + ": no map records");
    try {
        return SystemConfig{label, IfsSystem(std::move(maps), *domain)};
    } catch (const Error& e) {
        throw ConfigError(source + ": invalid system: " + e.what());
    }
}

SystemConfig load_config(const std::string& path) { return parse_config(read_file(path), path); }

std::vector<Complex> read_csv(const std::string& path) {
    std::istringstream lines(read_file(path));
    std::vector<Complex> out;
    std::string raw;
    int lineno = 0;
    while (std::getline(lines, raw)) {
        ++lineno;
        const std::string line = trim(raw.substr(0, raw.find('#')));
        if (line.empty()) continue;
        const auto comma = line.find(',');
        const std::string where = path + ":" + std::to_string(lineno);
        if (comma == std::string::npos) throw ConfigError(where + ": expected 're,im'");
        out.emplace_back(parse_number(trim(line.substr(0, comma)), where + ": field 're'"),
                         parse_number(trim(line.substr(comma + 1)), where + ": field 'im'"));
    }
    if (out.empty()) throw ConfigError(path + ": no points");
    return out;
}

std::string to_csv(const std::vector<Complex>& points) {
    std::string out;
    char buf[80];
    for (const Complex& p : points) {
        std::snprintf(buf, sizeof buf, "%.15g,%.15g\n", p.real(), p.imag());
        out += buf;
    }
    return out;
}

}  // namespace holoifs::cli
