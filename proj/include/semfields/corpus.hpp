#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace semfields {

struct Document {
    int id = 0;  // dense, equals position in Corpus::documents
    std::string author;
    std::string title;
    std::map<std::string, std::int64_t> token_counts;
    std::int64_t total_tokens = 0;

    bool operator==(const Document&) const = default;
};

struct Corpus {
    std::vector<Document> documents;      // sorted by (author, title)
    std::vector<std::string> authors;     // ordered distinct labels

    bool operator==(const Corpus&) const = default;
};

// Lowercases and splits on anything that is not a letter. Non-ASCII letters
// with a single-letter ASCII base (accented Latin) fold to that letter;
// everything else separates. Input is UTF-8; invalid bytes separate.
std::vector<std::string> tokenize(std::string_view text);

// Counts tokens into a Document (id/author/title left for the caller).
Document make_document(std::string_view text, std::string author, std::string title);

// Layout: root/<author>/<title>.txt. Throws EmptyCorpus when no .txt file
// is found, DataError naming the file on invalid UTF-8.
Corpus ingest_directory(const std::filesystem::path& root);

}  // namespace semfields
