#pragma once

#include <map>
#include <string>
#include <vector>

namespace wamc {

// Flat key-value configuration with [section] headers and full-line '#'
// comments. Keys keep file order; duplicate keys within a section and keys
// outside any section are errors.
class FlatConfig {
  public:
    static FlatConfig parse_file(const std::string& path);
    static FlatConfig parse_text(const std::string& text, const std::string& origin = "<text>");

    bool has_section(const std::string& section) const;
    bool has(const std::string& section, const std::string& key) const;

    // Typed getters; missing key is an error.
    std::string get(const std::string& section, const std::string& key) const;
    std::string get_or(const std::string& section, const std::string& key,
                       const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key) const;
    long get_long(const std::string& section, const std::string& key) const;
    std::vector<double> get_double_list(const std::string& section, const std::string& key) const;
    std::vector<int> get_int_list(const std::string& section, const std::string& key) const;

    std::vector<std::string> section_names() const;  // file order
    std::vector<std::pair<std::string, std::string>> section_items(const std::string& section) const;

    // Marks a key consumed; finish() reports any unconsumed (unknown) keys.
    void consume(const std::string& section, const std::string& key) const;
    void consume_section(const std::string& section) const;
    void finish() const;  // throws listing unknown sections/keys

    void set(const std::string& section, const std::string& key, const std::string& value);
    std::string serialize() const;

  private:
    struct Item {
        std::string key;
        std::string value;
        mutable bool used = false;
    };
    struct Section {
        std::string name;
        std::vector<Item> items;
        mutable bool wholly_used = false;
    };
    std::vector<Section> sections_;
    std::string origin_;

    const Section* find_section(const std::string& name) const;
    Section* find_section(const std::string& name);
};

}  // namespace wamc
