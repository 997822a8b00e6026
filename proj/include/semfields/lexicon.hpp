#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace semfields {

enum class Pos { Noun, Verb };

struct SemanticField {
    int id;            // dense, 0..40, fixed table order
    std::string name;  // e.g. "noun.act"
    Pos pos;
};

// The fixed 41-entry table of noun and verb lexicographer fields.
const std::vector<SemanticField>& standard_fields();

// Lexicographer file number -> field name (3..43); absent outside the
// noun/verb range (adjective/adverb files and anything unknown).
std::optional<std::string_view> lexnum_to_field(int lex_filenum);

// Field name -> dense id in the standard table; absent if not one of the 41.
std::optional<int> field_id_by_name(std::string_view name);

struct WordEntry {
    std::string lemma;
    int lex_filenum;
    bool operator==(const WordEntry&) const = default;
};

// Reads a WordNet 3.x data.noun / data.verb file. Emits one entry per word
// slot of every synset line; header lines (leading space) are skipped;
// lemmas are lowercased and dropped unless they match ^[a-z]+$.
// Throws MalformedLine on grammar violations.
std::vector<WordEntry> parse_wordnet_data(std::istream& stream, Pos pos);

// Lemma plus its regular inflections per the fixed suffix-rule table.
// Nouns: plural. Verbs: third person, past, gerund. No consonant doubling.
// Result is sorted and duplicate-free; always contains the lemma.
std::vector<std::string> expand_derivatives(const std::string& lemma, Pos pos);

// Maps lowercase word forms to the ids of the semantic fields containing
// them. Immutable after construction; lookups are thread-safe.
class Lexicon {
public:
    Lexicon(std::map<std::string, std::vector<int>> word_to_fields);

    const std::vector<SemanticField>& fields() const { return standard_fields(); }
    std::size_t n_fields() const { return fields().size(); }

    // Field ids containing the token, ascending; empty when unknown.
    // Exact match only: derivative forms are materialized at build time.
    const std::vector<int>& lookup(const std::string& token) const;

    const std::map<std::string, std::vector<int>>& words() const { return word_to_fields_; }

    // Distinct member forms per field id.
    const std::vector<int>& field_word_counts() const { return field_word_counts_; }

    std::size_t size() const { return word_to_fields_.size(); }

    bool operator==(const Lexicon&) const = default;

private:
    std::map<std::string, std::vector<int>> word_to_fields_;
    std::vector<int> field_word_counts_;
};

// Builds the lexicon from WordNet data.noun and data.verb streams, expanding
// every admitted lemma with its derivative forms. Throws EmptyLexicon when
// nothing is admitted.
Lexicon build_lexicon(std::istream& noun_stream, std::istream& verb_stream);

// Fixture format: `field_name<TAB>word word word...` per line, '#' comments
// and blank lines allowed. No derivative expansion.
Lexicon load_plain_lexicon(std::istream& stream);

}  // namespace semfields
