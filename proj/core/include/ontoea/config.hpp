#pragma once

#include "ontoea/hyperparams.hpp"
#include "ontoea/ingest.hpp"

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace ontoea {

/// Flat key=value run configuration. Every hyperparameter has a config key;
/// unknown keys are rejected; command-line flags override file values.
struct RunConfig {
    HyperParams hp;

    std::string data_dir;
    std::string out_dir = "out";
    std::string word_vectors;        // empty: <data_dir>/word_vectors.vec when si_init
    std::string checkpoint;          // empty: <out_dir>/checkpoint.bin
    bool si_init = false;
    bool shared_ontology = true;
    double tau = 0.9;                // class-conflict threshold
    int csls_k = 10;
    double split_train = 0.2;
    double split_valid = 0.1;
    double split_test = 0.7;
    std::string eval_split = "test"; // "test" or "valid"

    /// Grid-search value lists, keyed by hyperparameter config key.
    std::map<std::string, std::vector<std::string>> grid;

    /// Sets one key (file syntax). Throws ConfigError on unknown keys or
    /// unparsable values. Grid lists use "grid.<key> = v1,v2,...".
    void set(const std::string& key, const std::string& value);

    bool was_set(const std::string& key) const { return explicit_keys_.contains(key); }

    /// All invariant violations (hyperparameters included), empty when valid.
    std::vector<std::string> validate() const;

    SplitRatio split_ratio() const { return {split_train, split_valid, split_test}; }

    std::filesystem::path checkpoint_path() const;
    std::filesystem::path word_vectors_path() const;

    /// Reads "key = value" lines; '#' starts a comment; blank lines ignored.
    static RunConfig from_file(const std::filesystem::path& path);

    /// Every accepted config key.
    static const std::vector<std::string>& known_keys();

private:
    std::set<std::string> explicit_keys_;
};

} // namespace ontoea
