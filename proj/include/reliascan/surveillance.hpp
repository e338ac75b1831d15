#ifndef RELIASCAN_SURVEILLANCE_HPP_
#define RELIASCAN_SURVEILLANCE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "reliascan/errors.hpp"
#include "reliascan/period.hpp"
#include "reliascan/topics.hpp"

namespace reliascan {

// Which denominator turns counts into rates: products in field (the default)
// or document volume.
enum class ExposureMode { per_product, per_document };

inline const char* exposure_mode_name(ExposureMode m) {
    return m == ExposureMode::per_product ? "per_product" : "per_document";
}

inline ExposureMode parse_exposure_mode(const std::string& s) {
    if (s == "per_product") return ExposureMode::per_product;
    if (s == "per_document") return ExposureMode::per_document;
    throw Error(ErrorCode::invalid_config, "exposure mode '" + s + "'");
}

// Per-topic baseline rates b_j plus the floor rate b_0 given to topics with
// no usable history.
struct BaselineModel {
    ExposureMode mode = ExposureMode::per_product;
    Period first;
    Period last;
    std::map<std::string, double> rates;  // topic id -> b_j
    double floor_rate = 0.0;              // b_0

    // Topics with a positive history use their own rate; zero-history and
    // unseen topics are monitored at the floor.
    double rate_or_floor(const std::string& topic_id) const {
        auto it = rates.find(topic_id);
        if (it != rates.end() && it->second > 0.0) return it->second;
        return floor_rate;
    }
};

// b_j = (sum of topic counts over the span) / (sum of exposure over the
// span). The floor b_0 is the smallest positive rate, or fallback_floor if
// every topic was silent.
inline BaselineModel estimate_baseline(const std::map<std::string, std::vector<long>>& counts,
                                       const std::vector<double>& exposures, Period first,
                                       ExposureMode mode, double fallback_floor = 1e-6) {
    if (exposures.empty()) throw Error(ErrorCode::empty_baseline, "baseline span is empty");
    double total_exposure = 0.0;
    for (size_t i = 0; i < exposures.size(); ++i) {
        if (mode == ExposureMode::per_product && exposures[i] <= 0.0)
            throw Error(ErrorCode::zero_population,
                        "period " + format_period(Period{first.index + int(i)}) +
                            " has no population");
        total_exposure += exposures[i];
    }
    if (total_exposure <= 0.0)
        throw Error(ErrorCode::empty_baseline, "no exposure over the baseline span");

    BaselineModel model;
    model.mode = mode;
    model.first = first;
    model.last = Period{first.index + int(exposures.size()) - 1};
    double min_positive = 0.0;
    for (const auto& [topic, series] : counts) {
        if (series.size() != exposures.size())
            throw Error(ErrorCode::dimension_mismatch,
                        "count series for '" + topic + "' does not match the span");
        long total = 0;
        for (long c : series) total += c;
        double rate = double(total) / total_exposure;
        model.rates[topic] = rate;
        if (rate > 0.0 && (min_positive == 0.0 || rate < min_positive)) min_positive = rate;
    }
    model.floor_rate = min_positive > 0.0 ? min_positive : fallback_floor;
    return model;
}

// B_jt = b_j * exposure_t.
inline double expected_count(double rate, double exposure) { return rate * exposure; }

// Expectation-based Poisson log-likelihood ratio (natural log):
//   F = C ln(C/B) + B - C  when C > B, else 0.
inline double scan_statistic(double observed, double expected) {
    if (expected <= 0.0)
        throw Error(ErrorCode::nonpositive_expected,
                    "expected count " + std::to_string(expected));
    if (observed <= expected) return 0.0;
    return observed * std::log(observed / expected) + expected - observed;
}

// Per-period observed and expected counts for one topic over one window.
struct WindowCounts {
    std::string topic_id;
    std::vector<long> observed;    // C_jt
    std::vector<double> expected;  // B_jt
};

struct WindowScanResult {
    long observed_total = 0;    // C_j
    double expected_total = 0;  // B_j
    double statistic = 0;       // F_jn
};

// Sums the window then applies the scan statistic.
inline WindowScanResult window_scan(const WindowCounts& counts) {
    if (counts.observed.empty() || counts.observed.size() != counts.expected.size())
        throw Error(ErrorCode::dimension_mismatch, "window series length mismatch");
    WindowScanResult r;
    for (long c : counts.observed) r.observed_total += c;
    for (double b : counts.expected) r.expected_total += b;
    r.statistic = scan_statistic(double(r.observed_total), r.expected_total);
    return r;
}

struct AlertRecord {
    std::string topic_id;
    Period window_first;
    Period window_last;
    long observed = 0;       // C_j
    double expected = 0.0;   // B_j
    double statistic = 0.0;  // F_jn
    bool emerging = false;
};

// Flags records with F strictly above the threshold and orders everything
// by statistic, strongest first.
inline std::vector<AlertRecord> detect_emerging(std::vector<AlertRecord> stats,
                                                double threshold = 1.0) {
    for (auto& rec : stats) rec.emerging = rec.statistic > threshold;
    std::sort(stats.begin(), stats.end(), [](const AlertRecord& a, const AlertRecord& b) {
        if (a.statistic != b.statistic) return a.statistic > b.statistic;
        return a.topic_id < b.topic_id;
    });
    return stats;
}

// Document-level pair counts: how often two topics were assigned to the
// same document. Diagonal holds per-topic document counts.
struct CooccurrenceMatrix {
    std::vector<std::string> topics;       // sorted
    std::vector<std::vector<long>> counts;  // symmetric, topics.size() square

    long at(const std::string& a, const std::string& b) const {
        auto ia = std::lower_bound(topics.begin(), topics.end(), a);
        auto ib = std::lower_bound(topics.begin(), topics.end(), b);
        if (ia == topics.end() || *ia != a || ib == topics.end() || *ib != b) return 0;
        return counts[size_t(ia - topics.begin())][size_t(ib - topics.begin())];
    }
};

inline CooccurrenceMatrix topic_cooccurrence(const std::vector<TopicAssignment>& assignments) {
    std::map<std::string, std::set<std::string>> topics_of_doc;
    std::set<std::string> topic_set;
    for (const auto& a : assignments) {
        topics_of_doc[a.doc_id].insert(a.topic_id);
        topic_set.insert(a.topic_id);
    }
    CooccurrenceMatrix m;
    m.topics.assign(topic_set.begin(), topic_set.end());
    m.counts.assign(m.topics.size(), std::vector<long>(m.topics.size(), 0));
    std::map<std::string, size_t> index;
    for (size_t i = 0; i < m.topics.size(); ++i) index[m.topics[i]] = i;
    for (const auto& [doc, topics] : topics_of_doc) {
        for (auto it = topics.begin(); it != topics.end(); ++it) {
            size_t i = index[*it];
            m.counts[i][i] += 1;
            for (auto jt = std::next(it); jt != topics.end(); ++jt) {
                size_t j = index[*jt];
                m.counts[i][j] += 1;
                m.counts[j][i] += 1;
            }
        }
    }
    return m;
}

// --- report files ---------------------------------------------------------

inline void write_trend_csv(const std::vector<AlertRecord>& records, ExposureMode mode,
                            std::ostream& out, bool emerging_only = false) {
    out << "# exposure_mode=" << exposure_mode_name(mode) << '\n';
    out << "topic_id,window_start,window_end,C,B,F,emerging\n";
    char buf[96];
    for (const auto& rec : records) {
        if (emerging_only && !rec.emerging) continue;
        std::snprintf(buf, sizeof buf, ",%ld,%.6f,%.6f,%s\n", rec.observed, rec.expected,
                      rec.statistic, rec.emerging ? "true" : "false");
        out << csv::quote(rec.topic_id) << ',' << format_period(rec.window_first) << ','
            << format_period(rec.window_last) << buf + 1;
    }
}

inline void write_cooccurrence_csv(const CooccurrenceMatrix& m, std::ostream& out) {
    out << "topic_a,topic_b,count\n";
    for (size_t i = 0; i < m.topics.size(); ++i)
        for (size_t j = i; j < m.topics.size(); ++j)
            out << csv::quote(m.topics[i]) << ',' << csv::quote(m.topics[j]) << ','
                << m.counts[i][j] << '\n';
}

}  // namespace reliascan

#endif  // RELIASCAN_SURVEILLANCE_HPP_
