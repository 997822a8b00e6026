#include "semfields/corpus.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>

#include "semfields/errors.hpp"

namespace semfields {

namespace {

// Accented Latin codepoints with a single-letter ASCII base (Latin-1
// Supplement and Latin Extended-A). Ligatures and letters without a
// one-letter decomposition (ae, oe, ss, thorn, eng, ...) return 0 and act
// as separators.
char fold_codepoint(std::uint32_t cp) {
    if (cp >= 'a' && cp <= 'z') return static_cast<char>(cp);
    if (cp >= 'A' && cp <= 'Z') return static_cast<char>(cp - 'A' + 'a');
    switch (cp) {
        case 0x00D0: case 0x00F0: return 'd';  // eth
        case 0x00D1: case 0x00F1: return 'n';
        case 0x00D7: case 0x00F7: return 0;    // multiplication / division signs
        case 0x00D8: case 0x00F8: return 'o';  // o with stroke
        case 0x00DE: case 0x00FE: return 0;    // thorn
        case 0x00DF: return 0;                 // sharp s -> "ss"
        default: break;
    }
    if (cp >= 0x00C0 && cp <= 0x00C6) return cp == 0x00C6 ? 0 : 'a';  // AE ligature
    if (cp == 0x00C7) return 'c';
    if (cp >= 0x00C8 && cp <= 0x00CB) return 'e';
    if (cp >= 0x00CC && cp <= 0x00CF) return 'i';
    if (cp >= 0x00D2 && cp <= 0x00D6) return 'o';
    if (cp >= 0x00D9 && cp <= 0x00DC) return 'u';
    if (cp == 0x00DD) return 'y';
    if (cp >= 0x00E0 && cp <= 0x00E6) return cp == 0x00E6 ? 0 : 'a';
    if (cp == 0x00E7) return 'c';
    if (cp >= 0x00E8 && cp <= 0x00EB) return 'e';
    if (cp >= 0x00EC && cp <= 0x00EF) return 'i';
    if (cp >= 0x00F2 && cp <= 0x00F6) return 'o';
    if (cp >= 0x00F9 && cp <= 0x00FC) return 'u';
    if (cp == 0x00FD || cp == 0x00FF) return 'y';
    if (cp >= 0x0100 && cp <= 0x017F) {
        switch (cp) {
            case 0x0132: case 0x0133: return 0;  // IJ ligature
            case 0x0138: return 'k';             // kra
            case 0x0149: return 0;               // 'n (two letters)
            case 0x014A: case 0x014B: return 0;  // eng
            case 0x0152: case 0x0153: return 0;  // OE ligature
            case 0x017F: return 's';             // long s
            default: break;
        }
        static constexpr struct { std::uint32_t lo, hi; char base; } ranges[] = {
            {0x0100, 0x0105, 'a'}, {0x0106, 0x010D, 'c'}, {0x010E, 0x0111, 'd'},
            {0x0112, 0x011B, 'e'}, {0x011C, 0x0123, 'g'}, {0x0124, 0x0127, 'h'},
            {0x0128, 0x0131, 'i'}, {0x0134, 0x0135, 'j'}, {0x0136, 0x0137, 'k'},
            {0x0139, 0x0142, 'l'}, {0x0143, 0x0148, 'n'}, {0x014C, 0x0151, 'o'},
            {0x0154, 0x0159, 'r'}, {0x015A, 0x0161, 's'}, {0x0162, 0x0167, 't'},
            {0x0168, 0x0173, 'u'}, {0x0174, 0x0175, 'w'}, {0x0176, 0x0178, 'y'},
            {0x0179, 0x017E, 'z'},
        };
        for (const auto& r : ranges)
            if (cp >= r.lo && cp <= r.hi) return r.base;
    }
    return 0;
}

// Decodes the next UTF-8 codepoint; invalid sequences consume one byte and
// yield 0xFFFD (a separator downstream).
std::uint32_t next_codepoint(std::string_view text, std::size_t& i) {
    const std::uint8_t b0 = static_cast<std::uint8_t>(text[i]);
    if (b0 < 0x80) {
        ++i;
        return b0;
    }
    std::size_t extra;
    std::uint32_t cp;
    if ((b0 & 0xE0) == 0xC0) { extra = 1; cp = b0 & 0x1F; }
    else if ((b0 & 0xF0) == 0xE0) { extra = 2; cp = b0 & 0x0F; }
    else if ((b0 & 0xF8) == 0xF0) { extra = 3; cp = b0 & 0x07; }
    else { ++i; return 0xFFFD; }
    if (i + extra >= text.size()) { ++i; return 0xFFFD; }  // truncated sequence
    for (std::size_t k = 1; k <= extra; ++k) {
        const std::uint8_t b = static_cast<std::uint8_t>(text[i + k]);
        if ((b & 0xC0) != 0x80) { ++i; return 0xFFFD; }
        cp = (cp << 6) | (b & 0x3F);
    }
    i += extra + 1;
    return cp;
}

bool valid_utf8(std::string_view text, std::size_t& bad_offset) {
    std::size_t i = 0;
    while (i < text.size()) {
        bad_offset = i;
        const std::uint8_t b0 = static_cast<std::uint8_t>(text[i]);
        std::size_t extra;
        if (b0 < 0x80) extra = 0;
        else if ((b0 & 0xE0) == 0xC0) extra = 1;
        else if ((b0 & 0xF0) == 0xE0) extra = 2;
        else if ((b0 & 0xF8) == 0xF0) extra = 3;
        else return false;
        if (i + extra >= text.size()) return false;
        for (std::size_t k = 1; k <= extra; ++k)
            if ((static_cast<std::uint8_t>(text[i + k]) & 0xC0) != 0x80) return false;
        i += extra + 1;
    }
    return true;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    std::size_t i = 0;
    while (i < text.size()) {
        const std::uint32_t cp = next_codepoint(text, i);
        const char folded = fold_codepoint(cp);
        if (folded != 0) {
            current.push_back(folded);
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

Document make_document(std::string_view text, std::string author, std::string title) {
    Document doc;
    doc.author = std::move(author);
    doc.title = std::move(title);
    for (auto& token : tokenize(text)) {
        ++doc.token_counts[std::move(token)];
        ++doc.total_tokens;
    }
    return doc;
}

Corpus ingest_directory(const std::filesystem::path& root) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(root))
        throw DataError("corpus root is not a directory: " + root.string());

    std::vector<std::pair<std::string, fs::path>> files;  // (author, file)
    for (const auto& author_entry : fs::directory_iterator(root)) {
        if (!author_entry.is_directory()) continue;
        const std::string author = author_entry.path().filename().string();
        for (const auto& file_entry : fs::directory_iterator(author_entry.path())) {
            if (!file_entry.is_regular_file()) continue;
            if (file_entry.path().extension() != ".txt") continue;
            files.emplace_back(author, file_entry.path());
        }
    }
    if (files.empty()) throw EmptyCorpus(root.string());

    std::sort(files.begin(), files.end(), [](const auto& a, const auto& b) {
        const std::string sa = a.second.stem().string();
        const std::string sb = b.second.stem().string();
        return std::tie(a.first, sa) < std::tie(b.first, sb);
    });

    Corpus corpus;
    std::set<std::string> seen_authors;
    for (const auto& [author, path] : files) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw DataError("cannot open " + path.string());
        std::ostringstream buf;
        buf << in.rdbuf();
        if (in.bad()) throw DataError("i/o failure while reading " + path.string());
        const std::string text = buf.str();
        std::size_t bad = 0;
        if (!valid_utf8(text, bad))
            throw DataError(path.string() + ": invalid UTF-8 at byte " + std::to_string(bad));
        Document doc = make_document(text, author, path.stem().string());
        doc.id = static_cast<int>(corpus.documents.size());
        corpus.documents.push_back(std::move(doc));
        if (seen_authors.insert(author).second) corpus.authors.push_back(author);
    }
    return corpus;
}

}  // namespace semfields
