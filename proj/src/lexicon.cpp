#include "semfields/lexicon.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <istream>
#include <sstream>
#include <unordered_map>

#include "semfields/errors.hpp"

namespace semfields {

namespace {

// Lexicographer files 3..43: the 26 noun and 15 verb fields, in file order.
// Verified against the WordNet distribution's `lexnames` table (the real
// file spells the first entry noun.Tops; names here are lowercase).
constexpr std::array<std::string_view, 41> kFieldNames = {
    "noun.tops",          "noun.act",        "noun.animal",   "noun.artifact",
    "noun.attribute",     "noun.body",       "noun.cognition", "noun.communication",
    "noun.event",         "noun.feeling",    "noun.food",     "noun.group",
    "noun.location",      "noun.motive",     "noun.object",   "noun.person",
    "noun.phenomenon",    "noun.plant",      "noun.possession", "noun.process",
    "noun.quantity",      "noun.relation",   "noun.shape",    "noun.state",
    "noun.substance",     "noun.time",       "verb.body",     "verb.change",
    "verb.cognition",     "verb.communication", "verb.competition", "verb.consumption",
    "verb.contact",       "verb.creation",   "verb.emotion",  "verb.motion",
    "verb.perception",    "verb.possession", "verb.social",   "verb.stative",
    "verb.weather",
};

constexpr int kFirstLexnum = 3;   // noun.tops
constexpr int kLastNounLexnum = 28;
constexpr int kLastLexnum = 43;   // verb.weather

bool all_lowercase_letters(std::string_view s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return c >= 'a' && c <= 'z'; });
}

bool all_digits(std::string_view s) {
    return !s.empty() &&
           std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

bool all_hex(std::string_view s) {
    return !s.empty() &&
           std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isxdigit(c); });
}

bool ends_with_sibilant(std::string_view w) {
    return w.ends_with("s") || w.ends_with("x") || w.ends_with("z") || w.ends_with("ch") ||
           w.ends_with("sh");
}

bool is_vowel(char c) {
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

// "-y" preceded by a consonant.
bool ends_consonant_y(std::string_view w) {
    return w.size() >= 2 && w.back() == 'y' && !is_vowel(w[w.size() - 2]) &&
           w[w.size() - 2] != 'y';
}

std::string s_form(const std::string& w) {
    if (ends_consonant_y(w)) return w.substr(0, w.size() - 1) + "ies";
    if (ends_with_sibilant(w)) return w + "es";
    return w + "s";
}

std::string past_form(const std::string& w) {
    if (ends_consonant_y(w)) return w.substr(0, w.size() - 1) + "ied";
    if (w.ends_with("e")) return w + "d";
    return w + "ed";
}

std::string gerund_form(const std::string& w) {
    if (w.ends_with("e") && !w.ends_with("ee")) return w.substr(0, w.size() - 1) + "ing";
    return w + "ing";
}

}  // namespace

const std::vector<SemanticField>& standard_fields() {
    static const std::vector<SemanticField> fields = [] {
        std::vector<SemanticField> out;
        out.reserve(kFieldNames.size());
        for (std::size_t i = 0; i < kFieldNames.size(); ++i) {
            Pos pos = kFieldNames[i].starts_with("noun.") ? Pos::Noun : Pos::Verb;
            out.push_back({static_cast<int>(i), std::string(kFieldNames[i]), pos});
        }
        return out;
    }();
    return fields;
}

std::optional<std::string_view> lexnum_to_field(int lex_filenum) {
    if (lex_filenum < kFirstLexnum || lex_filenum > kLastLexnum) return std::nullopt;
    return kFieldNames[static_cast<std::size_t>(lex_filenum - kFirstLexnum)];
}

std::optional<int> field_id_by_name(std::string_view name) {
    static const std::unordered_map<std::string_view, int> index = [] {
        std::unordered_map<std::string_view, int> m;
        for (std::size_t i = 0; i < kFieldNames.size(); ++i)
            m.emplace(kFieldNames[i], static_cast<int>(i));
        return m;
    }();
    auto it = index.find(name);
    if (it == index.end()) return std::nullopt;
    return it->second;
}

std::vector<WordEntry> parse_wordnet_data(std::istream& stream, Pos pos) {
    const char expected_ss_type = pos == Pos::Noun ? 'n' : 'v';
    std::vector<WordEntry> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty() && line.front() == ' ') continue;  // license header

        std::istringstream ls(line);
        std::string offset, filenum, ss_type, w_cnt;
        if (!(ls >> offset >> filenum >> ss_type >> w_cnt))
            throw MalformedLine(line_no, "expected offset, lex_filenum, ss_type, w_cnt");
        if (offset.size() != 8 || !all_digits(offset))
            throw MalformedLine(line_no, "synset_offset is not 8 decimal digits: " + offset);
        if (filenum.size() != 2 || !all_digits(filenum))
            throw MalformedLine(line_no, "lex_filenum is not 2 decimal digits: " + filenum);
        if (ss_type.size() != 1 || ss_type[0] != expected_ss_type)
            throw MalformedLine(line_no, "unexpected ss_type: " + ss_type);
        if (w_cnt.size() != 2 || !all_hex(w_cnt))
            throw MalformedLine(line_no, "w_cnt is not 2 hexadecimal digits: " + w_cnt);

        const int lex_filenum = std::stoi(filenum);
        const int n_words = std::stoi(w_cnt, nullptr, 16);
        if (n_words < 1) throw MalformedLine(line_no, "w_cnt must be positive");

        for (int i = 0; i < n_words; ++i) {
            std::string word, lex_id;
            if (!(ls >> word >> lex_id))
                throw MalformedLine(line_no, "fewer word slots than w_cnt announces");
            if (lex_id.size() != 1 || !all_hex(lex_id))
                throw MalformedLine(line_no, "lex_id is not 1 hexadecimal digit: " + lex_id);
            std::transform(word.begin(), word.end(), word.begin(),
                           [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
            // collocations (underscores), digits, periods, hyphens, apostrophes: drop
            if (all_lowercase_letters(word)) entries.push_back({std::move(word), lex_filenum});
        }
        // pointer/frame fields and the gloss are ignored
    }
    if (stream.bad()) throw DataError("i/o failure while reading wordnet data");
    return entries;
}

std::vector<std::string> expand_derivatives(const std::string& lemma, Pos pos) {
    std::vector<std::string> forms;
    forms.push_back(lemma);
    forms.push_back(s_form(lemma));  // noun plural / verb third person
    if (pos == Pos::Verb) {
        forms.push_back(past_form(lemma));
        forms.push_back(gerund_form(lemma));
    }
    std::sort(forms.begin(), forms.end());
    forms.erase(std::unique(forms.begin(), forms.end()), forms.end());
    return forms;
}

Lexicon::Lexicon(std::map<std::string, std::vector<int>> word_to_fields)
    : word_to_fields_(std::move(word_to_fields)),
      field_word_counts_(standard_fields().size(), 0) {
    if (word_to_fields_.empty()) throw EmptyLexicon();
    const int n = static_cast<int>(standard_fields().size());
    for (auto& [form, ids] : word_to_fields_) {
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        for (int id : ids) {
            if (id < 0 || id >= n)
                throw DataError("field id " + std::to_string(id) + " out of range for form " + form);
            ++field_word_counts_[static_cast<std::size_t>(id)];
        }
        if (!all_lowercase_letters(form))
            throw DataError("lexicon form is not lowercase letters: " + form);
    }
}

const std::vector<int>& Lexicon::lookup(const std::string& token) const {
    static const std::vector<int> empty;
    auto it = word_to_fields_.find(token);
    return it == word_to_fields_.end() ? empty : it->second;
}

Lexicon build_lexicon(std::istream& noun_stream, std::istream& verb_stream) {
    std::map<std::string, std::vector<int>> words;
    auto admit = [&words](const std::vector<WordEntry>& entries, Pos pos) {
        for (const auto& [lemma, filenum] : entries) {
            auto name = lexnum_to_field(filenum);
            if (!name) continue;  // adjective/adverb files or out-of-table numbers
            const int id = *field_id_by_name(*name);
            for (const auto& form : expand_derivatives(lemma, pos))
                words[form].push_back(id);
        }
    };
    admit(parse_wordnet_data(noun_stream, Pos::Noun), Pos::Noun);
    admit(parse_wordnet_data(verb_stream, Pos::Verb), Pos::Verb);
    return Lexicon(std::move(words));
}

Lexicon load_plain_lexicon(std::istream& stream) {
    std::map<std::string, std::vector<int>> words;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw MalformedLine(line_no, "expected field_name<TAB>words");
        const std::string name = line.substr(0, tab);
        const auto id = field_id_by_name(name);
        if (!id) throw UnknownFieldName(name);
        std::istringstream ws(line.substr(tab + 1));
        std::string word;
        while (ws >> word) {
            if (!all_lowercase_letters(word))
                throw MalformedLine(line_no, "word is not lowercase letters: " + word);
            words[word].push_back(*id);
        }
    }
    if (stream.bad()) throw DataError("i/o failure while reading plain lexicon");
    return Lexicon(std::move(words));
}

}  // namespace semfields
