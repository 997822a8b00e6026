#include "semfields/field_matrix.hpp"

#include <cmath>
#include <stdexcept>

#include "semfields/errors.hpp"

namespace semfields {

FieldMatrix build_field_matrix(const Corpus& corpus, const Lexicon& lexicon,
                               PolysemyMode mode) {
    if (corpus.documents.empty()) throw DataError("cannot build a field matrix from an empty corpus");
    if (lexicon.size() == 0) throw EmptyLexicon();

    FieldMatrix m;
    m.n_fields = static_cast<int>(lexicon.n_fields());
    m.n_docs = static_cast<int>(corpus.documents.size());
    m.values = Matrix(m.n_fields, m.n_docs);
    for (const auto& f : lexicon.fields()) m.field_names.push_back(f.name);
    m.column_mass.resize(static_cast<std::size_t>(m.n_docs), 0.0);

    for (int j = 0; j < m.n_docs; ++j) {
        const Document& doc = corpus.documents[static_cast<std::size_t>(j)];
        m.doc_ids.push_back(doc.id);
        auto column = m.values.col(j);
        for (const auto& [token, count] : doc.token_counts) {
            const std::vector<int>& fields = lexicon.lookup(token);
            if (fields.empty()) continue;
            const double contribution =
                mode == PolysemyMode::Full
                    ? static_cast<double>(count)
                    : static_cast<double>(count) / static_cast<double>(fields.size());
            for (int k : fields) column[static_cast<std::size_t>(k)] += contribution;
        }
        double mass = 0.0;
        for (double v : column) mass += v;
        if (mass == 0.0) throw EmptySemanticColumn(doc.id);
        for (double& v : column) v /= mass;
        m.column_mass[static_cast<std::size_t>(j)] = mass;
    }
    return m;
}

DocVector document_vector(const FieldMatrix& m, int j) {
    if (j < 0 || j >= m.n_docs)
        throw std::out_of_range("document index " + std::to_string(j) + " out of range [0, " +
                                std::to_string(m.n_docs) + ")");
    auto column = m.values.col(j);
    return {m.doc_ids[static_cast<std::size_t>(j)], {column.begin(), column.end()}};
}

std::vector<DocVector> document_vectors(const FieldMatrix& m) {
    std::vector<DocVector> out;
    out.reserve(static_cast<std::size_t>(m.n_docs));
    for (int j = 0; j < m.n_docs; ++j) out.push_back(document_vector(m, j));
    return out;
}

double euclidean_distance(std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size())
        throw std::invalid_argument("dimension mismatch: " + std::to_string(u.size()) + " vs " +
                                    std::to_string(v.size()));
    double sum = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double d = u[i] - v[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

double euclidean_distance(const DocVector& u, const DocVector& v) {
    return euclidean_distance(std::span<const double>(u.components),
                              std::span<const double>(v.components));
}

}  // namespace semfields
