#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace semfields {

// Flat `key = value` configuration; every key has a CLI flag of the same
// name on `pipeline`. Exactly one lexicon source and one stop rule.
struct PipelineConfig {
    std::filesystem::path corpus_dir;

    std::optional<std::filesystem::path> wordnet_dir;     // data.noun + data.verb
    std::optional<std::filesystem::path> plain_lexicon;   // tsv fixture
    std::optional<std::filesystem::path> lexicon_json;    // serialized lexicon

    std::string space = "field";  // field | reduced
    int k = 10;
    std::string reduced_coords = "whitened";  // whitened | scaled
    std::string polysemy = "full";            // full | fractional

    std::optional<int> clusters;
    std::optional<double> epsilon;

    double threshold = 0.5;
    std::string height = "ess";  // ess | sqrt
    std::filesystem::path out_dir;
};

PipelineConfig load_pipeline_config(std::istream& is);
PipelineConfig load_pipeline_config_file(const std::filesystem::path& path);

// ingest -> lexicon -> matrix -> (svd + project) -> cluster -> report.
// Writes every serialization into config.out_dir; idempotent and
// byte-deterministic for identical inputs. Errors are wrapped in
// PipelineStageError carrying the failing stage's name.
void run_pipeline(const PipelineConfig& config);

}  // namespace semfields
