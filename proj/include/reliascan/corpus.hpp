#ifndef RELIASCAN_CORPUS_HPP_
#define RELIASCAN_CORPUS_HPP_

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "reliascan/csv.hpp"
#include "reliascan/errors.hpp"
#include "reliascan/period.hpp"

namespace reliascan {

// One complaint.
struct Document {
    std::string id;
    Date date;
    std::string product;
    std::string text;
};

// Records that failed validation during loading; reported, never silently
// dropped.
struct RejectedRecord {
    size_t line = 0;
    std::string reason;
};

// The full complaint collection, sorted by (date, id). Immutable once built.
class Corpus {
public:
    Corpus() = default;

    explicit Corpus(std::vector<Document> docs) : docs_(std::move(docs)) {
        if (docs_.empty()) throw Error(ErrorCode::empty_corpus, "no documents");
        std::sort(docs_.begin(), docs_.end(), [](const Document& a, const Document& b) {
            if (a.date != b.date) return a.date < b.date;
            return a.id < b.id;
        });
        std::set<std::string> seen;
        for (const auto& d : docs_) {
            if (!seen.insert(d.id).second)
                throw Error(ErrorCode::duplicate_id, "document id '" + d.id + "'");
        }
    }

    const std::vector<Document>& documents() const { return docs_; }
    size_t size() const { return docs_.size(); }
    Date span_begin() const { return docs_.front().date; }
    Date span_end() const { return docs_.back().date; }

    // Documents whose month falls in [first, last].
    Corpus slice(Period first, Period last) const {
        std::vector<Document> out;
        for (const auto& d : docs_) {
            Period p = period_of(d.date);
            if (first <= p && p <= last) out.push_back(d);
        }
        return Corpus(std::move(out));
    }

private:
    std::vector<Document> docs_;
};

enum class Granularity { month };

// Contiguous monthly buckets covering the corpus span; empty months are
// present with empty id lists.
struct PeriodSeries {
    Granularity granularity = Granularity::month;
    Period first;
    std::vector<std::vector<std::string>> buckets;  // index i -> period first+i

    size_t size() const { return buckets.size(); }
    Period period_at(size_t i) const { return Period{first.index + int(i)}; }
    Period last() const { return Period{first.index + int(buckets.size()) - 1}; }
};

// Monthly products-in-field counts: the exposure denominator.
struct PopulationSeries {
    std::map<Period, double> entries;

    double at(Period p) const {
        auto it = entries.find(p);
        if (it == entries.end())
            throw Error(ErrorCode::missing_period,
                        "no population entry for " + format_period(p));
        return it->second;
    }
    bool covers(Period first, Period last) const {
        for (Period p = first; p <= last; p = p.next())
            if (!entries.count(p)) return false;
        return true;
    }
};

struct LoadResult {
    Corpus corpus;
    std::vector<RejectedRecord> rejected;
};

enum class CorpusFormat { jsonl, csv };

namespace detail {

inline std::optional<Document> validate_document(std::string id, const std::string& date_text,
                                                 std::string product, std::string text,
                                                 std::string& reason) {
    if (id.empty()) {
        reason = "empty id";
        return std::nullopt;
    }
    Date date;
    try {
        date = parse_date(date_text);
    } catch (const Error& e) {
        reason = e.what();
        return std::nullopt;
    }
    size_t a = text.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) {
        reason = "empty text";
        return std::nullopt;
    }
    return Document{std::move(id), date, std::move(product), std::move(text)};
}

}  // namespace detail

// Loads complaints from JSONL (one object per line: id, date, product, text)
// or CSV (header id,date,product,text). Invalid records are collected with
// their line numbers; duplicate ids abort the load.
inline LoadResult load_corpus(const std::string& path, CorpusFormat format) {
    std::vector<Document> docs;
    std::vector<RejectedRecord> rejected;

    if (format == CorpusFormat::jsonl) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw Error(ErrorCode::io_error, "cannot open '" + path + "'");
        std::string line;
        size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
            if (j.is_discarded() || !j.is_object()) {
                rejected.push_back({lineno, "malformed json"});
                continue;
            }
            if (!j.contains("id") || !j.contains("date") || !j.contains("text")) {
                rejected.push_back({lineno, "missing field"});
                continue;
            }
            std::string reason;
            auto doc = detail::validate_document(
                j.value("id", ""), j.value("date", ""), j.value("product", ""),
                j.value("text", ""), reason);
            if (doc) docs.push_back(std::move(*doc));
            else rejected.push_back({lineno, reason});
        }
    } else {
        auto records = csv::parse_file(path);
        if (records.empty()) throw Error(ErrorCode::empty_corpus, "empty file '" + path + "'");
        const auto& header = records.front().fields;
        if (header != std::vector<std::string>{"id", "date", "product", "text"})
            throw Error(ErrorCode::parse_error, "expected header id,date,product,text");
        for (size_t i = 1; i < records.size(); ++i) {
            const auto& rec = records[i];
            if (rec.fields.size() != 4) {
                rejected.push_back({rec.line, "wrong field count"});
                continue;
            }
            std::string reason;
            auto doc = detail::validate_document(rec.fields[0], rec.fields[1], rec.fields[2],
                                                 rec.fields[3], reason);
            if (doc) docs.push_back(std::move(*doc));
            else rejected.push_back({rec.line, reason});
        }
    }

    if (docs.empty()) throw Error(ErrorCode::empty_corpus, "no valid documents in '" + path + "'");
    return LoadResult{Corpus(std::move(docs)), std::move(rejected)};
}

inline void save_corpus_jsonl(const Corpus& corpus, std::ostream& out) {
    for (const auto& d : corpus.documents()) {
        nlohmann::json j;
        j["date"] = format_date(d.date);
        j["id"] = d.id;
        j["product"] = d.product;
        j["text"] = d.text;
        out << j.dump() << '\n';
    }
}

// Assigns every document to its calendar-month bucket; the bucket range is
// contiguous from the first to the last month of the corpus span.
inline PeriodSeries bucket_by_period(const Corpus& corpus, Granularity granularity = Granularity::month) {
    if (corpus.size() == 0) throw Error(ErrorCode::empty_corpus, "cannot bucket empty corpus");
    PeriodSeries series;
    series.granularity = granularity;
    series.first = period_of(corpus.span_begin());
    Period last = period_of(corpus.span_end());
    series.buckets.assign(size_t(last.index - series.first.index + 1), {});
    for (const auto& d : corpus.documents())
        series.buckets[size_t(period_of(d.date).index - series.first.index)].push_back(d.id);
    return series;
}

// Population CSV: header `period,population`, period as YYYY-MM.
inline PopulationSeries load_population(const std::string& path) {
    auto records = csv::parse_file(path);
    if (records.empty()) throw Error(ErrorCode::parse_error, "empty population file");
    if (records.front().fields != std::vector<std::string>{"period", "population"})
        throw Error(ErrorCode::parse_error, "expected header period,population");
    PopulationSeries series;
    for (size_t i = 1; i < records.size(); ++i) {
        const auto& rec = records[i];
        if (rec.fields.size() != 2)
            throw Error(ErrorCode::parse_error,
                        "line " + std::to_string(rec.line) + ": wrong field count");
        Period p = parse_period(rec.fields[0]);
        double value = 0;
        try {
            size_t used = 0;
            value = std::stod(rec.fields[1], &used);
            if (used != rec.fields[1].size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw Error(ErrorCode::parse_error,
                        "line " + std::to_string(rec.line) + ": bad population value");
        }
        if (value < 0)
            throw Error(ErrorCode::negative_population,
                        format_period(p) + " has population " + rec.fields[1]);
        series.entries[p] = value;
    }
    return series;
}

}  // namespace reliascan

#endif  // RELIASCAN_CORPUS_HPP_
