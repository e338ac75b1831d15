#ifndef RELIASCAN_CONFIG_HPP_
#define RELIASCAN_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <string>

#include "reliascan/errors.hpp"
#include "reliascan/term_doc_matrix.hpp"
#include "reliascan/text_prep.hpp"

namespace reliascan {

// Flat project settings: every key here is also a CLI flag of the same
// name, so a config file value can always be overridden per invocation.
// Relative paths resolve against the config file's directory.
struct ProjectConfig {
    // inputs
    std::string corpus;
    std::string corpus_format = "jsonl";  // jsonl | csv
    std::string population;
    std::string stoplist;
    std::string startlist;
    std::string synonyms;
    std::string custom_topics;
    // state and outputs
    std::string registry = "registry.json";
    std::string output_dir = ".";
    // parameters
    int min_df = 4;
    int k = 25;
    int top_m = 8;
    int n = 3;  // window length in months
    double tau = 0.25;
    double cutoff_sigma = 1.0;
    double threshold = 1.0;
    double min_rate_floor = 1e-6;
    double svd_tol = 1e-9;
    std::string exposure = "per_product";  // per_product | per_document
    std::string weighting = "tfidf";       // boolean | count | tfidf
    std::uint64_t seed = 42;
    bool drop_numerals = true;
    bool stemming = true;

    std::string base_dir = ".";  // directory of the config file

    void validate() const {
        if (corpus.empty()) throw Error(ErrorCode::invalid_config, "corpus path is required");
        if (corpus_format != "jsonl" && corpus_format != "csv")
            throw Error(ErrorCode::invalid_config, "corpus_format '" + corpus_format + "'");
        if (min_df < 1) throw Error(ErrorCode::invalid_config, "min_df must be >= 1");
        if (k < 1) throw Error(ErrorCode::invalid_config, "k must be >= 1");
        if (top_m < 1) throw Error(ErrorCode::invalid_config, "top_m must be >= 1");
        if (n < 1) throw Error(ErrorCode::invalid_config, "n must be >= 1");
        if (!(tau > 0.0 && tau <= 1.0))
            throw Error(ErrorCode::invalid_config, "tau must be in (0, 1]");
        if (threshold < 0.0) throw Error(ErrorCode::invalid_config, "threshold must be >= 0");
        if (min_rate_floor <= 0.0)
            throw Error(ErrorCode::invalid_config, "min_rate_floor must be > 0");
        if (svd_tol <= 0.0) throw Error(ErrorCode::invalid_config, "svd_tol must be > 0");
        parse_exposure_mode_or_throw();
        weighting_or_throw();
    }

    std::string resolve(const std::string& path) const {
        if (path.empty()) return path;
        std::filesystem::path p(path);
        if (p.is_absolute()) return path;
        return (std::filesystem::path(base_dir) / p).lexically_normal().string();
    }

    std::string output_path(const std::string& name) const {
        return (std::filesystem::path(resolve(output_dir)) / name).string();
    }

    // Assembles the token-pipeline settings, loading the configured lists.
    PrepConfig prep_config() const {
        PrepConfig pc;
        pc.min_df = min_df;
        pc.drop_numerals = drop_numerals;
        pc.stemming = stemming;
        if (!stoplist.empty()) pc.stop_list = load_term_list(resolve(stoplist));
        if (!startlist.empty()) pc.start_list = load_term_list(resolve(startlist));
        if (!synonyms.empty()) pc.synonyms = load_synonyms(resolve(synonyms));
        pc.validate();
        return pc;
    }

private:
    void parse_exposure_mode_or_throw() const {
        if (exposure != "per_product" && exposure != "per_document")
            throw Error(ErrorCode::invalid_config, "exposure '" + exposure + "'");
    }
    void weighting_or_throw() const {
        if (weighting != "boolean" && weighting != "count" && weighting != "tfidf")
            throw Error(ErrorCode::invalid_config, "weighting '" + weighting + "'");
    }
};

inline Weighting parse_weighting(const std::string& s) {
    if (s == "boolean") return Weighting::boolean;
    if (s == "count") return Weighting::count;
    if (s == "tfidf") return Weighting::tfidf;
    throw Error(ErrorCode::invalid_config, "weighting '" + s + "'");
}

}  // namespace reliascan

#endif  // RELIASCAN_CONFIG_HPP_
