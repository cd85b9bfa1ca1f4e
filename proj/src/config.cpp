#include "wamc/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace wamc {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

FlatConfig FlatConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str(), path);
}

FlatConfig FlatConfig::parse_text(const std::string& text, const std::string& origin) {
    FlatConfig cfg;
    cfg.origin_ = origin;
    std::stringstream ss(text);
    std::string line;
    Section* current = nullptr;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                                         ": malformed section header");
            const std::string name = trim(t.substr(1, t.size() - 2));
            if (name.empty())
                throw std::runtime_error(origin + ":" + std::to_string(lineno) + ": empty section name");
            if (cfg.find_section(name))
                throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                                         ": duplicate section [" + name + "]");
            cfg.sections_.push_back({name, {}});
            current = &cfg.sections_.back();
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                                     ": expected key = value");
        if (!current)
            throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                                     ": key outside any [section]");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw std::runtime_error(origin + ":" + std::to_string(lineno) + ": empty key");
        for (const auto& item : current->items) {
            if (item.key == key)
                throw std::runtime_error(origin + ":" + std::to_string(lineno) + ": duplicate key '" +
                                         key + "' in [" + current->name + "]");
        }
        current->items.push_back({key, value});
    }
    return cfg;
}

const FlatConfig::Section* FlatConfig::find_section(const std::string& name) const {
    for (const auto& s : sections_)
        if (s.name == name) return &s;
    return nullptr;
}

FlatConfig::Section* FlatConfig::find_section(const std::string& name) {
    for (auto& s : sections_)
        if (s.name == name) return &s;
    return nullptr;
}

bool FlatConfig::has_section(const std::string& section) const {
    return find_section(section) != nullptr;
}

bool FlatConfig::has(const std::string& section, const std::string& key) const {
    const Section* s = find_section(section);
    if (!s) return false;
    for (const auto& item : s->items)
        if (item.key == key) return true;
    return false;
}

std::string FlatConfig::get(const std::string& section, const std::string& key) const {
    const Section* s = find_section(section);
    if (s) {
        for (const auto& item : s->items) {
            if (item.key == key) {
                item.used = true;
                return item.value;
            }
        }
    }
    throw std::runtime_error(origin_ + ": missing required key '" + key + "' in [" + section + "]");
}

std::string FlatConfig::get_or(const std::string& section, const std::string& key,
                               const std::string& fallback) const {
    if (has(section, key)) return get(section, key);
    return fallback;
}

double FlatConfig::get_double(const std::string& section, const std::string& key) const {
    const std::string v = get(section, key);
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw std::runtime_error(origin_ + ": key '" + key + "' in [" + section +
                                 "]: expected a number, got '" + v + "'");
    }
}

long FlatConfig::get_long(const std::string& section, const std::string& key) const {
    const std::string v = get(section, key);
    try {
        std::size_t pos = 0;
        const long x = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw std::runtime_error(origin_ + ": key '" + key + "' in [" + section +
                                 "]: expected an integer, got '" + v + "'");
    }
}

std::vector<double> FlatConfig::get_double_list(const std::string& section,
                                                const std::string& key) const {
    const std::string v = get(section, key);
    std::vector<double> out;
    std::stringstream ss(v);
    std::string part;
    while (std::getline(ss, part, ',')) {
        part = trim(part);
        if (part.empty()) continue;
        try {
            out.push_back(std::stod(part));
        } catch (const std::exception&) {
            throw std::runtime_error(origin_ + ": key '" + key + "' in [" + section +
                                     "]: expected numbers, got '" + part + "'");
        }
    }
    if (out.empty())
        throw std::runtime_error(origin_ + ": key '" + key + "' in [" + section + "]: empty list");
    return out;
}

std::vector<int> FlatConfig::get_int_list(const std::string& section, const std::string& key) const {
    std::vector<int> out;
    for (double v : get_double_list(section, key)) {
        const int i = static_cast<int>(v);
        if (static_cast<double>(i) != v)
            throw std::runtime_error(origin_ + ": key '" + key + "' in [" + section +
                                     "]: expected integers");
        out.push_back(i);
    }
    return out;
}

std::vector<std::string> FlatConfig::section_names() const {
    std::vector<std::string> out;
    out.reserve(sections_.size());
    for (const auto& s : sections_) out.push_back(s.name);
    return out;
}

std::vector<std::pair<std::string, std::string>> FlatConfig::section_items(
    const std::string& section) const {
    const Section* s = find_section(section);
    if (!s) throw std::runtime_error(origin_ + ": no section [" + section + "]");
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& item : s->items) out.emplace_back(item.key, item.value);
    return out;
}

void FlatConfig::consume(const std::string& section, const std::string& key) const {
    const Section* s = find_section(section);
    if (!s) return;
    for (const auto& item : s->items)
        if (item.key == key) item.used = true;
}

void FlatConfig::consume_section(const std::string& section) const {
    const Section* s = find_section(section);
    if (!s) return;
    s->wholly_used = true;
    for (const auto& item : s->items) item.used = true;
}

void FlatConfig::finish() const {
    std::string unknown;
    for (const auto& s : sections_) {
        if (s.wholly_used) continue;
        for (const auto& item : s.items) {
            if (!item.used) {
                if (!unknown.empty()) unknown += ", ";
                unknown += "[" + s.name + "] " + item.key;
            }
        }
    }
    if (!unknown.empty())
        throw std::runtime_error(origin_ + ": unknown key(s): " + unknown);
}

void FlatConfig::set(const std::string& section, const std::string& key, const std::string& value) {
    Section* s = find_section(section);
    if (!s) {
        sections_.push_back({section, {}});
        s = &sections_.back();
    }
    for (auto& item : s->items) {
        if (item.key == key) {
            item.value = value;
            return;
        }
    }
    s->items.push_back({key, value});
}

std::string FlatConfig::serialize() const {
    std::string out;
    for (const auto& s : sections_) {
        out += "[" + s.name + "]\n";
        for (const auto& item : s.items) out += item.key + " = " + item.value + "\n";
        out += "\n";
    }
    return out;
}

}  // namespace wamc
