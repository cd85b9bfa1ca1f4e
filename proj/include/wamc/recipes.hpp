#pragma once

#include <string>
#include <vector>

namespace wamc {

// One reproduction recipe from the manifest: how to regenerate an output and
// which acceptance checks it backs.
struct ReproRecipe {
    std::string name;
    std::string command;           // invocation relative to the repo root
    std::string config_path;       // experiment config, empty for built-in runs
    std::string expected_outputs;  // free text
    std::vector<int> criteria;     // acceptance check ids this recipe covers
    std::string runtime_class;     // seconds | minutes | tens-of-minutes
};

struct RecipeReport {
    std::vector<ReproRecipe> recipes;
    std::vector<std::string> issues;
    bool ok() const { return issues.empty(); }
};

// Parses the manifest, parses every referenced config (full schema
// validation), and cross-references acceptance check coverage: checks 1..9
// must each be claimed by exactly one recipe.
RecipeReport validate_recipes(const std::string& manifest_path, const std::string& repo_root);

}  // namespace wamc
