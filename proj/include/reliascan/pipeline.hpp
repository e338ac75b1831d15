#ifndef RELIASCAN_PIPELINE_HPP_
#define RELIASCAN_PIPELINE_HPP_

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "reliascan/config.hpp"
#include "reliascan/corpus.hpp"
#include "reliascan/surveillance.hpp"
#include "reliascan/svd.hpp"
#include "reliascan/svg_report.hpp"
#include "reliascan/term_doc_matrix.hpp"
#include "reliascan/text_prep.hpp"
#include "reliascan/topics.hpp"
#include "reliascan/varimax.hpp"

namespace reliascan {

namespace pipeline_detail {

struct WindowDocs {
    std::vector<std::string> doc_ids;
    std::vector<Period> doc_periods;                  // aligned with doc_ids
    std::vector<std::vector<std::string>> doc_tokens; // matching streams (no min-df)
};

// Matching streams for every document in [first, last]. The per-token
// pipeline (synonyms, numerals, stop/start list, stem) applies; the min-df
// vocabulary cut does not, so a window is measured exactly like the
// baseline regardless of its size.
inline WindowDocs collect_window_docs(const Corpus& corpus, Period first, Period last,
                                      const PrepConfig& prep) {
    WindowDocs w;
    for (const auto& doc : corpus.documents()) {
        Period p = period_of(doc.date);
        if (p < first || last < p) continue;
        w.doc_ids.push_back(doc.id);
        w.doc_periods.push_back(p);
        w.doc_tokens.push_back(normalize_tokens(tokenize(doc.text), prep));
    }
    return w;
}

inline std::vector<TopicAssignment> match_topics(const WindowDocs& docs,
                                                 const std::vector<TopicMatcher>& matchers,
                                                 double tau) {
    std::vector<TopicAssignment> out;
    for (size_t d = 0; d < docs.doc_ids.size(); ++d) {
        for (const auto& m : matchers) {
            auto a = assign_custom(docs.doc_ids[d], docs.doc_tokens[d], m, tau);
            if (a) out.push_back(*a);
        }
    }
    return out;
}

// Monthly observed counts per topic over [first, first + n_periods).
inline std::map<std::string, std::vector<long>> count_by_topic_period(
    const std::vector<TopicAssignment>& assignments, const WindowDocs& docs, Period first,
    size_t n_periods, const std::vector<std::string>& topic_ids) {
    std::map<std::string, size_t> doc_index;
    for (size_t i = 0; i < docs.doc_ids.size(); ++i) doc_index[docs.doc_ids[i]] = i;
    std::map<std::string, std::vector<long>> counts;
    for (const auto& id : topic_ids) counts[id].assign(n_periods, 0);
    for (const auto& a : assignments) {
        auto it = counts.find(a.topic_id);
        if (it == counts.end()) continue;
        Period p = docs.doc_periods[doc_index.at(a.doc_id)];
        size_t slot = size_t(p.index - first.index);
        if (slot < n_periods) it->second[slot] += 1;
    }
    return counts;
}

inline std::vector<double> exposures_for(const ProjectConfig& config,
                                         const std::optional<PopulationSeries>& population,
                                         const WindowDocs& docs, Period first, size_t n_periods) {
    std::vector<double> exposures(n_periods, 0.0);
    if (config.exposure == "per_product") {
        for (size_t i = 0; i < n_periods; ++i)
            exposures[i] = population->at(Period{first.index + int(i)});
    } else {
        for (Period p : docs.doc_periods) {
            size_t slot = size_t(p.index - first.index);
            if (slot < n_periods) exposures[slot] += 1.0;
        }
    }
    return exposures;
}

inline std::optional<PopulationSeries> load_population_if_needed(const ProjectConfig& config) {
    if (config.exposure != "per_product") return std::nullopt;
    if (config.population.empty())
        throw Error(ErrorCode::invalid_config,
                    "per_product exposure requires a population file");
    return load_population(config.resolve(config.population));
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::io_error, "cannot write '" + path + "'");
    out << content;
}

// baseline.json round-trip.
inline void save_baseline(const BaselineModel& model, const std::string& path) {
    nlohmann::json j;
    j["exposure_mode"] = exposure_mode_name(model.mode);
    j["first"] = format_period(model.first);
    j["last"] = format_period(model.last);
    j["floor_rate"] = model.floor_rate;
    j["rates"] = nlohmann::json::object();
    for (const auto& [id, rate] : model.rates) j["rates"][id] = rate;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::io_error, "cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

inline BaselineModel load_baseline(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::missing_baseline, "no baseline at '" + path + "'");
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded()) throw Error(ErrorCode::parse_error, "malformed baseline json");
    BaselineModel m;
    m.mode = parse_exposure_mode(j.at("exposure_mode").get<std::string>());
    m.first = parse_period(j.at("first").get<std::string>());
    m.last = parse_period(j.at("last").get<std::string>());
    m.floor_rate = j.at("floor_rate").get<double>();
    for (const auto& [id, rate] : j.at("rates").items()) m.rates[id] = rate.get<double>();
    return m;
}

// Accumulated trend rows, keyed by (topic, window) so re-running a window
// replaces rather than duplicates.
inline std::vector<AlertRecord> load_trend(const std::string& path) {
    std::vector<AlertRecord> rows;
    if (!std::filesystem::exists(path)) return rows;
    auto records = csv::parse_file(path);
    for (size_t i = 0; i < records.size(); ++i) {
        const auto& f = records[i].fields;
        if (f.size() != 7 || f[0] == "topic_id") continue;
        AlertRecord rec;
        rec.topic_id = f[0];
        rec.window_first = parse_period(f[1]);
        rec.window_last = parse_period(f[2]);
        rec.observed = std::stol(f[3]);
        rec.expected = std::stod(f[4]);
        rec.statistic = std::stod(f[5]);
        rec.emerging = f[6] == "true";
        rows.push_back(std::move(rec));
    }
    return rows;
}

inline void merge_trend(std::vector<AlertRecord>& store, const std::vector<AlertRecord>& fresh) {
    for (const auto& rec : fresh) {
        auto match = std::find_if(store.begin(), store.end(), [&](const AlertRecord& r) {
            return r.topic_id == rec.topic_id && r.window_first == rec.window_first &&
                   r.window_last == rec.window_last;
        });
        if (match != store.end()) *match = rec;
        else store.push_back(rec);
    }
    std::sort(store.begin(), store.end(), [](const AlertRecord& a, const AlertRecord& b) {
        if (a.topic_id != b.topic_id) return a.topic_id < b.topic_id;
        return a.window_first < b.window_first;
    });
}

struct Decomposition {
    NormalizedCorpus nc;
    TermDocMatrix tdm;
    SVDResult svd;
    RotatedConcepts rotated;
    Eigen::MatrixXd doc_projections;  // docs x k, = V_k * rotation
};

// normalize -> weight -> truncated SVD -> varimax. k is capped at
// min(dims) - 1 so the rotation always has room below full rank.
inline Decomposition decompose(const Corpus& corpus, const ProjectConfig& config,
                               const PrepConfig& prep) {
    Decomposition d;
    d.nc = normalize_corpus(corpus, prep);
    d.tdm = build_tdm(d.nc, parse_weighting(config.weighting));
    long min_dim = std::min(d.tdm.rows(), d.tdm.cols());
    int k = int(std::clamp<long>(config.k, 1, std::max<long>(1, min_dim - 1)));
    d.svd = truncated_svd(d.tdm, k, config.svd_tol, config.seed);
    d.rotated = varimax_rotate(d.svd.scaled_term_loadings());
    d.doc_projections = d.svd.doc_factors * d.rotated.rotation;
    return d;
}

inline std::string sanitize_filename(const std::string& id) {
    std::string out;
    for (char c : id) {
        if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' || c == '_')
            out.push_back(c);
        else out.push_back('_');
    }
    return out;
}

}  // namespace pipeline_detail

// `baseline`: establish topics and their rates from a historic span.
inline void run_baseline(const ProjectConfig& config, Period from, Period to,
                         std::ostream& log) {
    namespace pd = pipeline_detail;
    config.validate();
    if (to < from) throw Error(ErrorCode::invalid_window, "baseline span ends before it starts");

    auto loaded = load_corpus(config.resolve(config.corpus),
                              config.corpus_format == "csv" ? CorpusFormat::csv
                                                            : CorpusFormat::jsonl);
    for (const auto& r : loaded.rejected)
        log << "rejected record at line " << r.line << ": " << r.reason << '\n';

    size_t in_span = 0;
    for (const auto& doc : loaded.corpus.documents()) {
        Period p = period_of(doc.date);
        if (from <= p && p <= to) ++in_span;
    }
    if (in_span == 0)
        throw Error(ErrorCode::empty_baseline, "no documents between " + format_period(from) +
                                                   " and " + format_period(to));
    Corpus span_corpus = loaded.corpus.slice(from, to);

    auto population = pd::load_population_if_needed(config);
    const size_t n_periods = size_t(to.index - from.index + 1);
    if (population && !population->covers(from, to))
        throw Error(ErrorCode::missing_period, "population does not cover the baseline span");

    PrepConfig prep = config.prep_config();
    auto decomp = pd::decompose(span_corpus, config, prep);

    TopicRegistry registry;
    if (!config.custom_topics.empty())
        for (auto& t : load_custom_topics(config.resolve(config.custom_topics), from))
            registry.upsert(std::move(t));
    auto discovered = extract_topics(decomp.rotated.rotated_term_loadings, decomp.tdm.terms,
                                     config.top_m, to);
    for (auto& t : discovered) registry.upsert(t);

    // Count topic hits over the span with the same matcher used later for
    // monitoring, so baseline rates and window counts are commensurable.
    auto docs = pd::collect_window_docs(span_corpus, from, to, prep);
    std::vector<TopicMatcher> matchers;
    std::vector<std::string> topic_ids;
    for (const auto* t : registry.active_topics()) {
        matchers.push_back(make_matcher(*t, prep));
        topic_ids.push_back(t->id);
    }
    auto assignments = pd::match_topics(docs, matchers, config.tau);
    auto counts = pd::count_by_topic_period(assignments, docs, from, n_periods, topic_ids);
    auto exposures = pd::exposures_for(config, population, docs, from, n_periods);
    auto baseline = estimate_baseline(counts, exposures, from,
                                      parse_exposure_mode(config.exposure),
                                      config.min_rate_floor);

    std::filesystem::create_directories(config.resolve(config.output_dir));
    registry.save(config.resolve(config.registry));
    pd::save_baseline(baseline, config.output_path("baseline.json"));
    {
        std::ofstream out(config.output_path("baseline_assignments.csv"), std::ios::binary);
        write_assignments_csv(assignments, out);
    }

    log << "baseline " << format_period(from) << ".." << format_period(to) << "  ("
        << exposure_mode_name(baseline.mode) << ", " << span_corpus.size() << " documents, "
        << decomp.tdm.rows() << " terms)\n";
    log << "topic_id\tkind\trate\tlabel\n";
    for (const auto& [id, topic] : registry.topics()) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.8f", baseline.rates.count(id) ? baseline.rates.at(id) : 0.0);
        log << id << '\t' << (topic.kind == TopicKind::custom ? "custom" : "discovered") << '\t'
            << buf << '\t' << topic.label << '\n';
    }
    {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.8f", baseline.floor_rate);
        log << "b0 (new-topic floor rate): " << buf << '\n';
    }

    // Review aid: example documents per discovered topic, from the rotated
    // document projections.
    for (size_t c = 0; c < discovered.size(); ++c) {
        auto samples = assign_discovered(decomp.doc_projections, long(c), decomp.nc.doc_ids,
                                         discovered[c].id, config.cutoff_sigma);
        std::sort(samples.begin(), samples.end(),
                  [](const TopicAssignment& a, const TopicAssignment& b) {
                      if (a.score != b.score) return a.score > b.score;
                      return a.doc_id < b.doc_id;
                  });
        log << discovered[c].id << " [" << discovered[c].label << "] examples:";
        for (size_t i = 0; i < samples.size() && i < 3; ++i) log << ' ' << samples[i].doc_id;
        log << '\n';
    }
}

// `analyze`: score one monitoring window against the baseline.
inline void run_analyze(const ProjectConfig& config, Period from, Period to, std::ostream& log) {
    namespace pd = pipeline_detail;
    config.validate();
    if (to < from) throw Error(ErrorCode::invalid_window, "window ends before it starts");

    auto baseline = pd::load_baseline(config.output_path("baseline.json"));
    TopicRegistry registry = TopicRegistry::load(config.resolve(config.registry));
    if (from <= baseline.last)
        throw Error(ErrorCode::invalid_window,
                    "window must start after the baseline span (baseline ends " +
                        format_period(baseline.last) + ")");

    auto loaded = load_corpus(config.resolve(config.corpus),
                              config.corpus_format == "csv" ? CorpusFormat::csv
                                                            : CorpusFormat::jsonl);
    auto population = pd::load_population_if_needed(config);
    const size_t n_periods = size_t(to.index - from.index + 1);
    if (population && !population->covers(from, to))
        throw Error(ErrorCode::missing_period, "population does not cover the window");

    PrepConfig prep = config.prep_config();
    auto docs = pd::collect_window_docs(loaded.corpus, from, to, prep);

    // Monitored set: active topics that existed before this window opened.
    std::vector<TopicMatcher> matchers;
    std::vector<std::string> topic_ids;
    for (const auto* t : registry.active_topics()) {
        if (!(t->created_period < from)) continue;
        matchers.push_back(make_matcher(*t, prep));
        topic_ids.push_back(t->id);
    }
    auto assignments = pd::match_topics(docs, matchers, config.tau);
    auto counts = pd::count_by_topic_period(assignments, docs, from, n_periods, topic_ids);
    auto exposures = pd::exposures_for(config, population, docs, from, n_periods);

    std::vector<AlertRecord> fresh;
    for (const auto& id : topic_ids) {
        double rate = baseline.rate_or_floor(
            registry.baseline_alias(id) ? *registry.baseline_alias(id) : id);
        WindowCounts wc;
        wc.topic_id = id;
        wc.observed = counts.at(id);
        for (double e : exposures) wc.expected.push_back(expected_count(rate, e));
        auto scan = window_scan(wc);
        AlertRecord rec;
        rec.topic_id = id;
        rec.window_first = from;
        rec.window_last = to;
        rec.observed = scan.observed_total;
        rec.expected = scan.expected_total;
        rec.statistic = scan.statistic;
        fresh.push_back(std::move(rec));
    }
    fresh = detect_emerging(std::move(fresh), config.threshold);

    std::filesystem::create_directories(config.resolve(config.output_dir));
    auto trend = pd::load_trend(config.output_path("trend.csv"));
    pd::merge_trend(trend, fresh);
    {
        std::ofstream out(config.output_path("trend.csv"), std::ios::binary);
        write_trend_csv(trend, baseline.mode, out);
    }
    {
        auto alerts = detect_emerging(trend, config.threshold);
        std::ofstream out(config.output_path("alerts.csv"), std::ios::binary);
        write_trend_csv(alerts, baseline.mode, out, /*emerging_only=*/true);
    }
    {
        std::ofstream out(config.output_path("assignments.csv"), std::ios::binary);
        write_assignments_csv(assignments, out);
    }

    log << "analyze " << format_period(from) << ".." << format_period(to) << "  ("
        << exposure_mode_name(baseline.mode) << ", " << docs.doc_ids.size() << " documents)\n";
    log << "topic_id\tC\tB\tF\temerging\n";
    for (const auto& rec : fresh) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%ld\t%.4f\t%.4f\t%s", rec.observed, rec.expected,
                      rec.statistic, rec.emerging ? "yes" : "no");
        log << rec.topic_id << '\t' << buf << '\n';
    }

    // Fresh discovery on the window, listed for analyst review only; these
    // topics join monitoring in later windows.
    if (docs.doc_ids.size() >= 4) {
        try {
            Corpus window_corpus = loaded.corpus.slice(from, to);
            auto decomp = pd::decompose(window_corpus, config, prep);
            auto discovered = extract_topics(decomp.rotated.rotated_term_loadings,
                                             decomp.tdm.terms, config.top_m, to);
            log << "discovered topics (review, not monitored this window):\n";
            for (size_t c = 0; c < discovered.size(); ++c) {
                if (!registry.contains(discovered[c].id)) registry.upsert(discovered[c]);
                auto samples =
                    assign_discovered(decomp.doc_projections, long(c), decomp.nc.doc_ids,
                                      discovered[c].id, config.cutoff_sigma);
                std::sort(samples.begin(), samples.end(),
                          [](const TopicAssignment& a, const TopicAssignment& b) {
                              if (a.score != b.score) return a.score > b.score;
                              return a.doc_id < b.doc_id;
                          });
                log << "  " << discovered[c].id << " [" << discovered[c].label << "] examples:";
                for (size_t i = 0; i < samples.size() && i < 3; ++i)
                    log << ' ' << samples[i].doc_id;
                log << '\n';
            }
            registry.save(config.resolve(config.registry));
        } catch (const Error& e) {
            if (e.code() != ErrorCode::empty_vocabulary) throw;
            log << "discovery skipped: " << e.what() << '\n';
        }
    }
}

// `promote`: freeze a discovered topic as a monitored custom topic.
inline void run_promote(const ProjectConfig& config, const std::string& discovered_id,
                        const std::string& name, std::ostream& log) {
    config.validate();
    TopicRegistry registry = TopicRegistry::load(config.resolve(config.registry));
    Period when = registry.at(discovered_id).created_period;
    TopicRegistry next = promote_topic(registry, discovered_id, name, when);
    next.save(config.resolve(config.registry));
    log << "promoted " << discovered_id << " -> " << slugify(name) << " [" << name << "]\n";
}

// `report`: emit the accumulated trend as CSV or one SVG chart per topic.
inline void run_report(const ProjectConfig& config, const std::string& format,
                       std::ostream& log) {
    namespace pd = pipeline_detail;
    config.validate();
    if (format != "csv" && format != "svg")
        throw Error(ErrorCode::invalid_config, "report format '" + format + "'");
    auto trend = pd::load_trend(config.output_path("trend.csv"));
    if (trend.empty()) throw Error(ErrorCode::no_trend_data, "run analyze first");
    auto baseline = pd::load_baseline(config.output_path("baseline.json"));

    if (format == "csv") {
        std::ofstream out(config.output_path("report.csv"), std::ios::binary);
        if (!out) throw Error(ErrorCode::io_error, "cannot write report.csv");
        write_trend_csv(trend, baseline.mode, out);
        log << "wrote report.csv\n";
        return;
    }

    std::map<std::string, std::vector<TrendPoint>> by_topic;
    for (const auto& rec : trend)
        by_topic[rec.topic_id].push_back({format_period(rec.window_first), rec.statistic});
    for (const auto& [topic, points] : by_topic) {
        std::string name = "trend_" + pd::sanitize_filename(topic) + ".svg";
        std::ofstream out(config.output_path(name), std::ios::binary);
        if (!out) throw Error(ErrorCode::io_error, "cannot write '" + name + "'");
        write_trend_svg(topic, points, config.threshold, out);
        log << "wrote " << name << '\n';
    }
}

// `spell-suggest`: Soundex-clustered repair suggestions over the surface
// vocabulary (stemming off, no df cut; rare means df below the configured
// min_df).
inline void run_spell_suggest(const ProjectConfig& config, std::ostream& out) {
    config.validate();
    auto loaded = load_corpus(config.resolve(config.corpus),
                              config.corpus_format == "csv" ? CorpusFormat::csv
                                                            : CorpusFormat::jsonl);
    PrepConfig prep = config.prep_config();
    prep.stemming = false;
    prep.min_df = 1;
    auto nc = normalize_corpus(loaded.corpus, prep);
    auto suggestions = spell_cluster(nc.vocabulary, config.min_df);
    out << "rare_term,suggested_canonical,soundex_code,rare_df,canonical_df\n";
    for (const auto& s : suggestions)
        out << csv::quote(s.rare_term) << ',' << csv::quote(s.suggested_canonical) << ','
            << s.soundex_code << ',' << s.rare_df << ',' << s.canonical_df << '\n';
}

// `cooccur`: document-level topic pair counts over a window.
inline void run_cooccur(const ProjectConfig& config, Period from, Period to, std::ostream& log) {
    namespace pd = pipeline_detail;
    config.validate();
    if (to < from) throw Error(ErrorCode::invalid_window, "window ends before it starts");
    TopicRegistry registry = TopicRegistry::load(config.resolve(config.registry));
    auto loaded = load_corpus(config.resolve(config.corpus),
                              config.corpus_format == "csv" ? CorpusFormat::csv
                                                            : CorpusFormat::jsonl);
    PrepConfig prep = config.prep_config();
    auto docs = pd::collect_window_docs(loaded.corpus, from, to, prep);
    std::vector<TopicMatcher> matchers;
    for (const auto* t : registry.active_topics()) matchers.push_back(make_matcher(*t, prep));
    auto assignments = pd::match_topics(docs, matchers, config.tau);
    auto matrix = topic_cooccurrence(assignments);

    std::filesystem::create_directories(config.resolve(config.output_dir));
    std::ofstream out(config.output_path("cooccurrence.csv"), std::ios::binary);
    if (!out) throw Error(ErrorCode::io_error, "cannot write cooccurrence.csv");
    write_cooccurrence_csv(matrix, out);
    log << "cooccur " << format_period(from) << ".." << format_period(to) << ": "
        << matrix.topics.size() << " topics, " << docs.doc_ids.size() << " documents\n";
}

}  // namespace reliascan

#endif  // RELIASCAN_PIPELINE_HPP_
