// reliascan: emerging-issue surveillance over free-text complaint corpora.
//
// Exit codes: 0 success, 1 internal error, 2 validation error.

#include <exception>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "reliascan/reliascan.hpp"

namespace {

void add_config_options(CLI::App& app, reliascan::ProjectConfig& config) {
    app.add_option("--corpus", config.corpus, "complaint corpus file");
    app.add_option("--corpus_format", config.corpus_format, "jsonl or csv");
    app.add_option("--population", config.population, "population CSV (period,population)");
    app.add_option("--stoplist", config.stoplist, "stop list file");
    app.add_option("--startlist", config.startlist, "start list file");
    app.add_option("--synonyms", config.synonyms, "synonyms CSV (variant,canonical)");
    app.add_option("--custom_topics", config.custom_topics, "custom topics CSV");
    app.add_option("--registry", config.registry, "topic registry JSON path");
    app.add_option("--output_dir", config.output_dir, "directory for generated artifacts");
    app.add_option("--min_df", config.min_df, "drop terms in fewer documents than this");
    app.add_option("--k", config.k, "number of concepts to extract");
    app.add_option("--top_m", config.top_m, "terms kept per discovered topic");
    app.add_option("--n", config.n, "window length in months");
    app.add_option("--tau", config.tau, "topic assignment threshold");
    app.add_option("--cutoff_sigma", config.cutoff_sigma, "discovered-topic score cutoff");
    app.add_option("--threshold", config.threshold, "emerging-topic statistic threshold");
    app.add_option("--min_rate_floor", config.min_rate_floor,
                   "fallback floor rate when every topic is silent");
    app.add_option("--svd_tol", config.svd_tol, "SVD residual tolerance");
    app.add_option("--exposure", config.exposure, "per_product or per_document");
    app.add_option("--weighting", config.weighting, "boolean, count or tfidf");
    app.add_option("--seed", config.seed, "random seed for the decomposition");
    app.add_flag("--drop_numerals,!--keep_numerals", config.drop_numerals,
                 "drop pure-numeral tokens");
    app.add_flag("--stemming,!--no_stemming", config.stemming, "stem tokens");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Emerging reliability-issue detection from complaint text"};
    app.require_subcommand(1);

    reliascan::ProjectConfig config;
    app.set_config("--config")->configurable(false);
    add_config_options(app, config);

    std::string from_text, to_text, topic_id, topic_name, format = "csv";

    CLI::App* baseline = app.add_subcommand("baseline", "establish topics and baseline rates");
    baseline->add_option("--from", from_text, "first month (YYYY-MM)")->required();
    baseline->add_option("--to", to_text, "last month (YYYY-MM)")->required();

    CLI::App* analyze = app.add_subcommand("analyze", "scan one monitoring window");
    analyze->add_option("--from", from_text, "first month (YYYY-MM)")->required();
    analyze->add_option("--to", to_text, "last month (YYYY-MM); defaults to from + n - 1");

    CLI::App* promote = app.add_subcommand("promote", "turn a discovered topic into a custom topic");
    promote->add_option("--topic", topic_id, "discovered topic id")->required();
    promote->add_option("--name", topic_name, "name for the custom topic")->required();

    CLI::App* report = app.add_subcommand("report", "render the accumulated trend");
    report->add_option("--format", format, "csv or svg");

    CLI::App* spell = app.add_subcommand("spell-suggest", "Soundex spelling suggestions");

    CLI::App* cooccur = app.add_subcommand("cooccur", "topic co-occurrence over a window");
    cooccur->add_option("--from", from_text, "first month (YYYY-MM)")->required();
    cooccur->add_option("--to", to_text, "last month (YYYY-MM); defaults to from + n - 1");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        std::string config_path = app.get_config_ptr()->as<std::string>();
        if (!config_path.empty())
            config.base_dir = std::filesystem::path(config_path).parent_path().string();
        if (config.base_dir.empty()) config.base_dir = ".";

        auto window_end = [&](reliascan::Period from) {
            if (!to_text.empty()) return reliascan::parse_period(to_text);
            return reliascan::Period{from.index + config.n - 1};
        };

        if (baseline->parsed()) {
            reliascan::run_baseline(config, reliascan::parse_period(from_text),
                                    reliascan::parse_period(to_text), std::cout);
        } else if (analyze->parsed()) {
            auto from = reliascan::parse_period(from_text);
            reliascan::run_analyze(config, from, window_end(from), std::cout);
        } else if (promote->parsed()) {
            reliascan::run_promote(config, topic_id, topic_name, std::cout);
        } else if (report->parsed()) {
            reliascan::run_report(config, format, std::cout);
        } else if (spell->parsed()) {
            reliascan::run_spell_suggest(config, std::cout);
        } else if (cooccur->parsed()) {
            auto from = reliascan::parse_period(from_text);
            reliascan::run_cooccur(config, from, window_end(from), std::cout);
        }
        return 0;
    } catch (const reliascan::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
}
