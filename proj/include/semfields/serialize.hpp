#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>

#include "semfields/cluster.hpp"
#include "semfields/corpus.hpp"
#include "semfields/field_matrix.hpp"
#include "semfields/lexicon.hpp"
#include "semfields/svd.hpp"

namespace semfields {

// Reals are written with 17 significant digits so every double round-trips
// exactly; writers are byte-deterministic.
std::string format_real(double value);

std::string json_escape(std::string_view s);

void write_lexicon_json(std::ostream& os, const Lexicon& lexicon);
Lexicon read_lexicon_json(std::istream& is);

void write_corpus_json(std::ostream& os, const Corpus& corpus);
Corpus read_corpus_json(std::istream& is);

void write_matrix_json(std::ostream& os, const FieldMatrix& m);
FieldMatrix read_matrix_json(std::istream& is);

void write_svd_json(std::ostream& os, const SvdFactorization& f, int k);
std::pair<SvdFactorization, int> read_svd_json(std::istream& is);

void write_dendrogram_json(std::ostream& os, const Dendrogram& d,
                           HeightScale scale = HeightScale::Ess);
Dendrogram read_dendrogram_json(std::istream& is);

// File helpers; error messages carry the path.
void save_text_file(const std::filesystem::path& path, const std::string& content);
std::string load_text_file(const std::filesystem::path& path);

}  // namespace semfields
