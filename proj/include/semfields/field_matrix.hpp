#pragma once

#include <span>
#include <string>
#include <vector>

#include "semfields/corpus.hpp"
#include "semfields/lexicon.hpp"
#include "semfields/matrix.hpp"

namespace semfields {

// How a token belonging to several fields contributes its count.
enum class PolysemyMode {
    Full,        // full count to every containing field
    Fractional,  // count / number of containing fields
};

struct DocVector {
    int doc_id = 0;
    std::vector<double> components;

    bool operator==(const DocVector&) const = default;
};

// Column j holds document j's normalized semantic-field frequencies:
// every column sums to 1. column_mass keeps the pre-normalization sums.
struct FieldMatrix {
    int n_fields = 0;
    int n_docs = 0;
    Matrix values;  // n_fields x n_docs, column-major
    std::vector<std::string> field_names;
    std::vector<int> doc_ids;
    std::vector<double> column_mass;

    bool operator==(const FieldMatrix&) const = default;
};

// Throws EmptySemanticColumn(doc_id) if a document has zero lexicon hits,
// DataError on an empty corpus or lexicon.
FieldMatrix build_field_matrix(const Corpus& corpus, const Lexicon& lexicon,
                               PolysemyMode mode = PolysemyMode::Full);

// Column j as a DocVector. Throws std::out_of_range.
DocVector document_vector(const FieldMatrix& m, int j);

// All columns, in order.
std::vector<DocVector> document_vectors(const FieldMatrix& m);

double euclidean_distance(std::span<const double> u, std::span<const double> v);
double euclidean_distance(const DocVector& u, const DocVector& v);

}  // namespace semfields
