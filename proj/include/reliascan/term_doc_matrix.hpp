#ifndef RELIASCAN_TERM_DOC_MATRIX_HPP_
#define RELIASCAN_TERM_DOC_MATRIX_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "reliascan/errors.hpp"
#include "reliascan/text_prep.hpp"

namespace reliascan {

enum class Weighting { boolean, count, tfidf };

inline const char* weighting_name(Weighting w) {
    switch (w) {
        case Weighting::boolean: return "boolean";
        case Weighting::count: return "count";
        case Weighting::tfidf: return "tfidf";
    }
    return "?";
}

// tf * ln(N / df), the unsmoothed natural-log variant. A term present in
// every document weighs zero.
inline double tfidf_weight(long tf, int df, int n_docs) {
    if (df < 1 || df > n_docs)
        throw Error(ErrorCode::df_out_of_range,
                    "df " + std::to_string(df) + " outside [1, " + std::to_string(n_docs) + "]");
    if (tf < 1) throw Error(ErrorCode::df_out_of_range, "tf must be >= 1");
    return double(tf) * std::log(double(n_docs) / double(df));
}

// Sparse term-document matrix in canonical (row, col)-sorted triplet form.
// Rows are vocabulary terms, columns are documents in corpus order.
struct TermDocMatrix {
    struct Entry {
        int row;
        int col;
        double value;
    };

    std::vector<std::string> terms;    // row index -> term
    std::vector<std::string> doc_ids;  // col index -> document id
    std::vector<Entry> entries;        // sorted by (row, col), no explicit zeros
    Weighting weighting = Weighting::count;
    std::vector<std::string> dropped_terms;  // rows removed because tf-idf zeroed them

    size_t rows() const { return terms.size(); }
    size_t cols() const { return doc_ids.size(); }
    size_t nnz() const { return entries.size(); }

    size_t col_nnz(int col) const {
        size_t n = 0;
        for (const auto& e : entries)
            if (e.col == col) ++n;
        return n;
    }

    double at(int row, int col) const {
        for (const auto& e : entries)
            if (e.row == row && e.col == col) return e.value;
        return 0.0;
    }
};

// Builds the matrix for a chosen weighting. Column j holds one nonzero per
// distinct term of document j. Under tf-idf, rows that weigh zero everywhere
// (df == N) are removed from the matrix and recorded in dropped_terms.
inline TermDocMatrix build_tdm(const NormalizedCorpus& nc, Weighting weighting) {
    if (nc.vocabulary.empty()) throw Error(ErrorCode::empty_vocabulary, "no terms");

    TermDocMatrix m;
    m.weighting = weighting;
    m.doc_ids = nc.doc_ids;
    const int n_docs = int(nc.doc_ids.size());

    std::vector<int> row_of(nc.vocabulary.size());
    std::vector<bool> keep(nc.vocabulary.size(), true);
    if (weighting == Weighting::tfidf) {
        for (size_t i = 0; i < nc.vocabulary.size(); ++i) {
            if (nc.vocabulary[i].document_frequency >= n_docs) {
                keep[i] = false;
                m.dropped_terms.push_back(nc.vocabulary[i].term);
            }
        }
    }
    int next_row = 0;
    for (size_t i = 0; i < nc.vocabulary.size(); ++i) {
        if (!keep[i]) continue;
        row_of[i] = next_row++;
        m.terms.push_back(nc.vocabulary[i].term);
    }
    if (m.terms.empty())
        throw Error(ErrorCode::empty_vocabulary, "tf-idf zeroed every term");

    for (int j = 0; j < n_docs; ++j) {
        std::map<int, long> counts;  // vocab index -> tf within doc j
        for (const auto& token : nc.doc_tokens[size_t(j)]) {
            int v = nc.vocab_index(token);
            if (v >= 0 && keep[size_t(v)]) ++counts[v];
        }
        for (const auto& [v, tf] : counts) {
            double value = 0;
            switch (weighting) {
                case Weighting::boolean: value = 1.0; break;
                case Weighting::count: value = double(tf); break;
                case Weighting::tfidf:
                    value = tfidf_weight(tf, nc.vocabulary[size_t(v)].document_frequency, n_docs);
                    break;
            }
            if (value != 0.0) m.entries.push_back({row_of[size_t(v)], j, value});
        }
    }
    std::sort(m.entries.begin(), m.entries.end(), [](const auto& a, const auto& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    return m;
}

// MatrixMarket coordinate dump for external inspection.
inline void write_matrix_market(const TermDocMatrix& m, std::ostream& out) {
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << m.rows() << ' ' << m.cols() << ' ' << m.nnz() << '\n';
    char buf[64];
    for (const auto& e : m.entries) {
        std::snprintf(buf, sizeof buf, "%d %d %.12g\n", e.row + 1, e.col + 1, e.value);
        out << buf;
    }
}

}  // namespace reliascan

#endif  // RELIASCAN_TERM_DOC_MATRIX_HPP_
