#ifndef RELIASCAN_TESTS_FIXTURES_HPP_
#define RELIASCAN_TESTS_FIXTURES_HPP_

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "reliascan/corpus.hpp"
#include "reliascan/term_doc_matrix.hpp"

namespace fixtures {

// Scratch directory removed on scope exit.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        path_ = std::filesystem::temp_directory_path() /
                ("reliascan_" + tag + "_" + std::to_string(std::random_device{}()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// The canonical two-complaint corpus used across the matrix tests.
inline reliascan::Corpus two_complaints() {
    std::vector<reliascan::Document> docs;
    docs.push_back({"c1", {2008, 1, 5}, "savoy", "Steering of my car locks while turning"});
    docs.push_back({"c2", {2008, 1, 20}, "savoy",
                    "Vibrations at steering when car is running at high speed."});
    return reliascan::Corpus(std::move(docs));
}

inline reliascan::Corpus corpus_from_texts(const std::vector<std::string>& texts,
                                           int year = 2008, int month = 1) {
    std::vector<reliascan::Document> docs;
    for (size_t i = 0; i < texts.size(); ++i) {
        char id[16];
        std::snprintf(id, sizeof id, "d%03zu", i);
        docs.push_back({id, {year, month, 1 + int(i % 27)}, "savoy", texts[i]});
    }
    return reliascan::Corpus(std::move(docs));
}

// Random sparse count matrix with at least one nonzero.
inline reliascan::TermDocMatrix random_count_matrix(int rows, int cols, double density,
                                                    std::mt19937_64& rng) {
    reliascan::TermDocMatrix m;
    m.weighting = reliascan::Weighting::count;
    for (int i = 0; i < rows; ++i) m.terms.push_back("t" + std::to_string(i));
    for (int j = 0; j < cols; ++j) m.doc_ids.push_back("d" + std::to_string(j));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> count(1, 9);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            if (u(rng) < density) m.entries.push_back({i, j, double(count(rng))});
    if (m.entries.empty()) m.entries.push_back({0, 0, 1.0});
    return m;
}

}  // namespace fixtures

#endif  // RELIASCAN_TESTS_FIXTURES_HPP_
