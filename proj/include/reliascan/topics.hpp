#ifndef RELIASCAN_TOPICS_HPP_
#define RELIASCAN_TOPICS_HPP_

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "reliascan/csv.hpp"
#include "reliascan/errors.hpp"
#include "reliascan/period.hpp"
#include "reliascan/text_prep.hpp"

namespace reliascan {

enum class TopicKind { custom, discovered };
enum class TopicStatus { active, retired };

struct TopicTerm {
    std::string term;  // single term, or a phrase for custom topics
    double weight = 1.0;
};

// A monitored theme: either analyst-authored (custom) or extracted from a
// rotated concept (discovered). Discovered terms are vocabulary stems;
// custom terms are authored surface phrases.
struct Topic {
    std::string id;
    TopicKind kind = TopicKind::custom;
    std::string label;
    std::vector<TopicTerm> terms;
    Period created_period;
    TopicStatus status = TopicStatus::active;
};

struct TopicAssignment {
    std::string doc_id;
    std::string topic_id;
    double score = 0.0;
};

struct PromotionRecord {
    Period period;
    std::string discovered_id;
    std::string custom_id;
};

inline std::string slugify(const std::string& name) {
    std::string slug;
    bool separator = false;
    for (char raw : name) {
        char c = raw;
        if (c >= 'A' && c <= 'Z') c = char(c - 'A' + 'a');
        if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) {
            if (separator && !slug.empty()) slug.push_back('-');
            separator = false;
            slug.push_back(c);
        } else {
            separator = true;
        }
    }
    return slug;
}

// Topic store persisted as registry.json. Value semantics: promote() works
// on a copy, so callers holding the old registry keep a valid snapshot.
class TopicRegistry {
public:
    const std::map<std::string, Topic>& topics() const { return topics_; }
    const std::vector<PromotionRecord>& audit() const { return audit_; }

    bool contains(const std::string& id) const { return topics_.count(id) != 0; }

    const Topic& at(const std::string& id) const {
        auto it = topics_.find(id);
        if (it == topics_.end()) throw Error(ErrorCode::unknown_topic, "topic '" + id + "'");
        return it->second;
    }

    // Insert or idempotently replace. Replacing a retired topic is refused:
    // retirement marks promotion history that must stay intact.
    void upsert(Topic topic) {
        auto it = topics_.find(topic.id);
        if (it != topics_.end() && it->second.status == TopicStatus::retired)
            throw Error(ErrorCode::already_promoted,
                        "topic '" + topic.id + "' is retired and cannot be replaced");
        topics_[topic.id] = std::move(topic);
    }

    std::vector<const Topic*> active_topics() const {
        std::vector<const Topic*> out;
        for (const auto& [id, t] : topics_)
            if (t.status == TopicStatus::active) out.push_back(&t);
        return out;
    }

    // The discovered topic a promoted custom topic came from, if any.
    // Baseline rates estimated under the discovered id stay usable after
    // promotion through this alias.
    std::optional<std::string> baseline_alias(const std::string& custom_id) const {
        for (const auto& rec : audit_)
            if (rec.custom_id == custom_id) return rec.discovered_id;
        return std::nullopt;
    }

    bool was_promoted(const std::string& discovered_id) const {
        for (const auto& rec : audit_)
            if (rec.discovered_id == discovered_id) return true;
        return false;
    }

    void record_promotion(PromotionRecord rec) { audit_.push_back(std::move(rec)); }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["audit"] = nlohmann::json::array();
        for (const auto& rec : audit_) {
            j["audit"].push_back({{"custom_id", rec.custom_id},
                                  {"discovered_id", rec.discovered_id},
                                  {"period", format_period(rec.period)}});
        }
        j["topics"] = nlohmann::json::array();
        for (const auto& [id, t] : topics_) {
            nlohmann::json terms = nlohmann::json::array();
            for (const auto& term : t.terms)
                terms.push_back({{"term", term.term}, {"weight", term.weight}});
            j["topics"].push_back(
                {{"created_period", format_period(t.created_period)},
                 {"id", t.id},
                 {"kind", t.kind == TopicKind::custom ? "custom" : "discovered"},
                 {"label", t.label},
                 {"status", t.status == TopicStatus::active ? "active" : "retired"},
                 {"terms", terms}});
        }
        return j;
    }

    static TopicRegistry from_json(const nlohmann::json& j) {
        TopicRegistry reg;
        for (const auto& jt : j.at("topics")) {
            Topic t;
            t.id = jt.at("id").get<std::string>();
            t.kind = jt.at("kind").get<std::string>() == "custom" ? TopicKind::custom
                                                                  : TopicKind::discovered;
            t.label = jt.at("label").get<std::string>();
            t.created_period = parse_period(jt.at("created_period").get<std::string>());
            t.status = jt.at("status").get<std::string>() == "active" ? TopicStatus::active
                                                                      : TopicStatus::retired;
            for (const auto& term : jt.at("terms"))
                t.terms.push_back({term.at("term").get<std::string>(),
                                   term.at("weight").get<double>()});
            reg.topics_[t.id] = std::move(t);
        }
        for (const auto& ja : j.at("audit"))
            reg.audit_.push_back({parse_period(ja.at("period").get<std::string>()),
                                  ja.at("discovered_id").get<std::string>(),
                                  ja.at("custom_id").get<std::string>()});
        return reg;
    }

    void save(const std::string& path) const {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw Error(ErrorCode::io_error, "cannot write '" + path + "'");
        out << to_json().dump(2) << '\n';
    }

    static TopicRegistry load(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw Error(ErrorCode::io_error, "cannot open '" + path + "'");
        nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
        if (j.is_discarded()) throw Error(ErrorCode::parse_error, "malformed registry json");
        return from_json(j);
    }

private:
    std::map<std::string, Topic> topics_;
    std::vector<PromotionRecord> audit_;
};

// One discovered Topic per rotated concept: the top_m terms by absolute
// rotated loading, weights scaled to the concept's largest loading, label
// from the strongest five terms.
inline std::vector<Topic> extract_topics(const Eigen::MatrixXd& rotated_term_loadings,
                                         const std::vector<std::string>& terms, int top_m,
                                         Period created) {
    std::vector<Topic> topics;
    const long k = rotated_term_loadings.cols();
    for (long c = 0; c < k; ++c) {
        std::vector<std::pair<double, std::string>> ranked;
        for (long i = 0; i < rotated_term_loadings.rows(); ++i) {
            double mag = std::abs(rotated_term_loadings(i, c));
            if (mag > 0) ranked.push_back({mag, terms[size_t(i)]});
        }
        std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
            return a.first != b.first ? a.first > b.first : a.second < b.second;
        });
        if (ranked.size() > size_t(top_m)) ranked.resize(size_t(top_m));
        if (ranked.empty()) continue;  // all-zero concept carries no terms

        Topic t;
        char buf[32];
        std::snprintf(buf, sizeof buf, "d%02ld-%s", c, format_period(created).c_str());
        t.id = buf;
        t.kind = TopicKind::discovered;
        t.created_period = created;
        double top = ranked.front().first;
        for (const auto& [mag, term] : ranked) t.terms.push_back({term, mag / top});
        std::string label;
        for (size_t i = 0; i < ranked.size() && i < 5; ++i) {
            if (i) label += '+';
            label += ranked[i].second;
        }
        t.label = label;
        topics.push_back(std::move(t));
    }
    return topics;
}

// custom_topics.csv: header `topic,term,weight`, one row per term, weights
// in (0, 1]. Rows group by topic name in file order.
inline std::vector<Topic> load_custom_topics(const std::string& path, Period created) {
    auto records = csv::parse_file(path);
    if (records.empty()) throw Error(ErrorCode::parse_error, "empty custom topics file");
    if (records.front().fields != std::vector<std::string>{"topic", "term", "weight"})
        throw Error(ErrorCode::parse_error, "expected header topic,term,weight");

    std::vector<Topic> topics;
    std::map<std::string, size_t> index_of;
    for (size_t i = 1; i < records.size(); ++i) {
        const auto& rec = records[i];
        if (rec.fields.size() != 3)
            throw Error(ErrorCode::parse_error,
                        "line " + std::to_string(rec.line) + ": wrong field count");
        double weight = 0;
        try {
            size_t used = 0;
            weight = std::stod(rec.fields[2], &used);
            if (used != rec.fields[2].size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw Error(ErrorCode::parse_error,
                        "line " + std::to_string(rec.line) + ": bad weight");
        }
        if (!(weight > 0.0 && weight <= 1.0))
            throw Error(ErrorCode::weight_out_of_range,
                        "line " + std::to_string(rec.line) + ": weight " + rec.fields[2]);

        const std::string& name = rec.fields[0];
        auto it = index_of.find(name);
        if (it == index_of.end()) {
            Topic t;
            t.id = slugify(name);
            if (t.id.empty())
                throw Error(ErrorCode::parse_error,
                            "line " + std::to_string(rec.line) + ": unusable topic name");
            t.kind = TopicKind::custom;
            t.label = name;
            t.created_period = created;
            it = index_of.emplace(name, topics.size()).first;
            topics.push_back(std::move(t));
        }
        std::string term = rec.fields[1];
        std::transform(term.begin(), term.end(), term.begin(),
                       [](unsigned char c) { return char(std::tolower(c)); });
        topics[it->second].terms.push_back({term, weight});
    }
    return topics;
}

// Weighted-coverage matcher. Custom phrases are normalized through the same
// token pipeline as the corpus, so they keep matching after stemming;
// discovered terms are already stems and pass through unchanged.
struct TopicMatcher {
    std::string topic_id;
    std::vector<std::pair<std::vector<std::string>, double>> needles;
    double total_weight = 0.0;

    double score(const std::vector<std::string>& doc_tokens) const {
        if (total_weight <= 0.0) return 0.0;
        double matched = 0.0;
        for (const auto& [needle, weight] : needles) {
            if (needle.empty() || needle.size() > doc_tokens.size()) continue;
            bool found = false;
            for (size_t i = 0; i + needle.size() <= doc_tokens.size() && !found; ++i)
                found = std::equal(needle.begin(), needle.end(), doc_tokens.begin() + long(i));
            if (found) matched += weight;
        }
        return matched / total_weight;
    }
};

inline TopicMatcher make_matcher(const Topic& topic, const PrepConfig& config) {
    TopicMatcher m;
    m.topic_id = topic.id;
    for (const auto& term : topic.terms) {
        std::vector<std::string> needle;
        if (topic.kind == TopicKind::custom)
            needle = normalize_tokens(tokenize(term.term), config);
        else
            needle = {term.term};
        m.needles.push_back({std::move(needle), term.weight});
        m.total_weight += term.weight;
    }
    return m;
}

// A document joins a topic when the matched fraction of term weight reaches
// tau. Phrases must appear as a consecutive token run.
inline std::optional<TopicAssignment> assign_custom(const std::string& doc_id,
                                                    const std::vector<std::string>& doc_tokens,
                                                    const TopicMatcher& matcher, double tau) {
    double s = matcher.score(doc_tokens);
    if (s >= tau) return TopicAssignment{doc_id, matcher.topic_id, s};
    return std::nullopt;
}

// Projection-based assignment for a freshly extracted concept: a document
// joins when its |projection| exceeds mean + cutoff_sigma * stddev of the
// concept's scores (population stddev). A flat concept assigns nothing.
inline std::vector<TopicAssignment> assign_discovered(const Eigen::MatrixXd& doc_projections,
                                                      long concept_index,
                                                      const std::vector<std::string>& doc_ids,
                                                      const std::string& topic_id,
                                                      double cutoff_sigma) {
    const long n = doc_projections.rows();
    std::vector<TopicAssignment> out;
    if (n == 0) return out;
    Eigen::ArrayXd scores = doc_projections.col(concept_index).array().abs();
    double mean = scores.mean();
    double var = (scores - mean).square().sum() / double(n);
    double threshold = mean + cutoff_sigma * std::sqrt(var);
    for (long i = 0; i < n; ++i)
        if (scores(i) > threshold) out.push_back({doc_ids[size_t(i)], topic_id, scores(i)});
    return out;
}

// Freezes a discovered topic as a monitored custom topic. The old registry
// value stays untouched; the returned copy has the discovered topic retired
// and the promotion recorded.
inline TopicRegistry promote_topic(const TopicRegistry& registry,
                                   const std::string& discovered_id, const std::string& new_name,
                                   Period period) {
    if (!registry.contains(discovered_id))
        throw Error(ErrorCode::unknown_topic, "no topic '" + discovered_id + "'");
    const Topic& source = registry.at(discovered_id);
    if (source.kind != TopicKind::discovered)
        throw Error(ErrorCode::unknown_topic, "'" + discovered_id + "' is not a discovered topic");
    if (registry.was_promoted(discovered_id) || source.status == TopicStatus::retired)
        throw Error(ErrorCode::already_promoted, "'" + discovered_id + "' was already promoted");

    std::string custom_id = slugify(new_name);
    if (custom_id.empty()) throw Error(ErrorCode::invalid_config, "unusable topic name");
    if (registry.contains(custom_id))
        throw Error(ErrorCode::duplicate_id, "topic id '" + custom_id + "' already exists");

    TopicRegistry next = registry;
    Topic promoted = source;
    promoted.id = custom_id;
    promoted.kind = TopicKind::custom;
    promoted.label = new_name;
    promoted.created_period = period;
    promoted.status = TopicStatus::active;

    Topic retired = source;
    retired.status = TopicStatus::retired;
    next.upsert(std::move(retired));
    next.upsert(std::move(promoted));
    next.record_promotion({period, discovered_id, custom_id});
    return next;
}

inline void write_assignments_csv(const std::vector<TopicAssignment>& assignments,
                                  std::ostream& out) {
    out << "doc_id,topic_id,score\n";
    auto sorted = assignments;
    std::sort(sorted.begin(), sorted.end(), [](const TopicAssignment& a, const TopicAssignment& b) {
        if (a.doc_id != b.doc_id) return a.doc_id < b.doc_id;
        return a.topic_id < b.topic_id;
    });
    char buf[64];
    for (const auto& a : sorted) {
        std::snprintf(buf, sizeof buf, ",%.6f\n", a.score);
        out << csv::quote(a.doc_id) << ',' << csv::quote(a.topic_id) << buf + 1;
    }
}

}  // namespace reliascan

#endif  // RELIASCAN_TOPICS_HPP_
