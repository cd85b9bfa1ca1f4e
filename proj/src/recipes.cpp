#include "wamc/recipes.hpp"

#include <filesystem>
#include <map>

#include "wamc/config.hpp"
#include "wamc/experiment.hpp"

namespace wamc {

RecipeReport validate_recipes(const std::string& manifest_path, const std::string& repo_root) {
    RecipeReport report;
    FlatConfig cfg;
    try {
        cfg = FlatConfig::parse_file(manifest_path);
    } catch (const std::exception& e) {
        report.issues.push_back(e.what());
        return report;
    }

    for (const std::string& sec : cfg.section_names()) {
        if (sec.rfind("recipe.", 0) != 0) {
            report.issues.push_back("unexpected section [" + sec + "] in manifest");
            cfg.consume_section(sec);
            continue;
        }
        ReproRecipe r;
        r.name = sec.substr(7);
        try {
            r.command = cfg.get(sec, "command");
            r.expected_outputs = cfg.get(sec, "outputs");
            r.criteria = cfg.get_int_list(sec, "criteria");
            r.runtime_class = cfg.get(sec, "runtime");
            if (cfg.has(sec, "config")) r.config_path = cfg.get(sec, "config");
        } catch (const std::exception& e) {
            report.issues.push_back(e.what());
            continue;
        }
        if (r.runtime_class != "seconds" && r.runtime_class != "minutes" &&
            r.runtime_class != "tens-of-minutes") {
            report.issues.push_back("recipe " + r.name + ": unknown runtime class '" +
                                    r.runtime_class + "'");
        }
        if (!r.config_path.empty()) {
            const std::filesystem::path path = std::filesystem::path(repo_root) / r.config_path;
            if (!std::filesystem::exists(path)) {
                report.issues.push_back("recipe " + r.name + ": dangling config " + r.config_path);
            } else {
                try {
                    ExperimentConfig::from_config(FlatConfig::parse_file(path.string()));
                } catch (const std::exception& e) {
                    report.issues.push_back("recipe " + r.name + ": config invalid: " + e.what());
                }
            }
        }
        report.recipes.push_back(std::move(r));
    }
    try {
        cfg.finish();
    } catch (const std::exception& e) {
        report.issues.push_back(e.what());
    }

    // acceptance checks 1..9 must each be claimed by exactly one recipe
    std::map<int, int> coverage;
    for (const auto& r : report.recipes)
        for (int c : r.criteria) coverage[c] += 1;
    for (int c = 1; c <= 9; ++c) {
        const int count = coverage.count(c) ? coverage[c] : 0;
        if (count == 0)
            report.issues.push_back("acceptance check " + std::to_string(c) +
                                    " is not covered by any recipe");
        else if (count > 1)
            report.issues.push_back("acceptance check " + std::to_string(c) +
                                    " is covered by " + std::to_string(count) + " recipes");
    }
    for (const auto& [c, count] : coverage) {
        if (c < 1 || c > 9)
            report.issues.push_back("recipe claims unknown acceptance check " + std::to_string(c));
    }
    return report;
}

}  // namespace wamc
