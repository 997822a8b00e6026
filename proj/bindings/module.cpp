#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <fstream>
#include <sstream>

#include "semfields/cluster.hpp"
#include "semfields/corpus.hpp"
#include "semfields/errors.hpp"
#include "semfields/field_matrix.hpp"
#include "semfields/lexicon.hpp"
#include "semfields/pipeline.hpp"
#include "semfields/report.hpp"
#include "semfields/serialize.hpp"
#include "semfields/svd.hpp"

namespace py = pybind11;
using namespace semfields;

namespace {

std::vector<std::vector<double>> matrix_rows(const Matrix& m) {
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(m.rows()));
    for (int i = 0; i < m.rows(); ++i) {
        rows[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(m.cols()));
        for (int j = 0; j < m.cols(); ++j)
            rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j);
    }
    return rows;
}

std::vector<DocVector> to_doc_vectors(const std::vector<std::vector<double>>& rows) {
    std::vector<DocVector> out;
    out.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        out.push_back({static_cast<int>(i), rows[i]});
    return out;
}

ClusterParams make_params(std::optional<int> clusters, std::optional<double> epsilon) {
    if (clusters.has_value() == epsilon.has_value())
        throw std::invalid_argument("pass exactly one of n_clusters or epsilon");
    return clusters ? ClusterParams::by_count(*clusters) : ClusterParams::by_epsilon(*epsilon);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "document clustering in a WordNet semantic-field vector space";

    py::register_exception<Error>(m, "SemfieldsError", PyExc_RuntimeError);

    py::enum_<Pos>(m, "Pos").value("NOUN", Pos::Noun).value("VERB", Pos::Verb);

    py::class_<SemanticField>(m, "SemanticField")
        .def_readonly("id", &SemanticField::id)
        .def_readonly("name", &SemanticField::name)
        .def_readonly("pos", &SemanticField::pos)
        .def("__repr__", [](const SemanticField& f) {
            return "SemanticField(" + std::to_string(f.id) + ", '" + f.name + "')";
        });

    py::class_<Lexicon>(m, "Lexicon")
        .def_property_readonly("fields", [](const Lexicon& l) { return l.fields(); })
        .def_property_readonly("field_word_counts",
                               [](const Lexicon& l) { return l.field_word_counts(); })
        .def("lookup", &Lexicon::lookup, py::arg("token"))
        .def("__len__", &Lexicon::size);

    m.def("standard_fields", &standard_fields);
    m.def(
        "lexnum_to_field",
        [](int n) -> std::optional<std::string> {
            auto name = lexnum_to_field(n);
            if (!name) return std::nullopt;
            return std::string(*name);
        },
        py::arg("lex_filenum"));
    m.def("expand_derivatives", &expand_derivatives, py::arg("lemma"), py::arg("pos"));
    m.def(
        "parse_wordnet_file",
        [](const std::filesystem::path& path, Pos pos) {
            std::ifstream in(path, std::ios::binary);
            if (!in) throw DataError("cannot open " + path.string());
            auto entries = parse_wordnet_data(in, pos);
            std::vector<std::pair<std::string, int>> out;
            out.reserve(entries.size());
            for (auto& e : entries) out.emplace_back(std::move(e.lemma), e.lex_filenum);
            return out;
        },
        py::arg("path"), py::arg("pos"));
    m.def(
        "build_lexicon",
        [](const std::filesystem::path& noun, const std::filesystem::path& verb) {
            std::ifstream nin(noun, std::ios::binary);
            if (!nin) throw DataError("cannot open " + noun.string());
            std::ifstream vin(verb, std::ios::binary);
            if (!vin) throw DataError("cannot open " + verb.string());
            return build_lexicon(nin, vin);
        },
        py::arg("noun_path"), py::arg("verb_path"));
    m.def(
        "load_plain_lexicon",
        [](const std::string& text) {
            std::istringstream in(text);
            return load_plain_lexicon(in);
        },
        py::arg("text"), "parse a field_name<TAB>words lexicon from a string");
    m.def(
        "load_plain_lexicon_file",
        [](const std::filesystem::path& path) {
            std::ifstream in(path, std::ios::binary);
            if (!in) throw DataError("cannot open " + path.string());
            return load_plain_lexicon(in);
        },
        py::arg("path"));

    py::class_<Document>(m, "Document")
        .def_readonly("id", &Document::id)
        .def_readonly("author", &Document::author)
        .def_readonly("title", &Document::title)
        .def_readonly("token_counts", &Document::token_counts)
        .def_readonly("total_tokens", &Document::total_tokens);

    py::class_<Corpus>(m, "Corpus")
        .def_readonly("documents", &Corpus::documents)
        .def_readonly("authors", &Corpus::authors)
        .def("__len__", [](const Corpus& c) { return c.documents.size(); });

    m.def("tokenize", [](const std::string& text) { return tokenize(text); }, py::arg("text"));
    m.def("ingest_directory", &ingest_directory, py::arg("root"));

    py::enum_<PolysemyMode>(m, "PolysemyMode")
        .value("FULL", PolysemyMode::Full)
        .value("FRACTIONAL", PolysemyMode::Fractional);

    py::class_<DocVector>(m, "DocVector")
        .def_readonly("doc_id", &DocVector::doc_id)
        .def_readonly("components", &DocVector::components);

    py::class_<FieldMatrix>(m, "FieldMatrix")
        .def_readonly("n_fields", &FieldMatrix::n_fields)
        .def_readonly("n_docs", &FieldMatrix::n_docs)
        .def_readonly("field_names", &FieldMatrix::field_names)
        .def_readonly("doc_ids", &FieldMatrix::doc_ids)
        .def_readonly("column_mass", &FieldMatrix::column_mass)
        .def("column", [](const FieldMatrix& m, int j) {
            auto v = document_vector(m, j);
            return v.components;
        });

    m.def("build_field_matrix", &build_field_matrix, py::arg("corpus"), py::arg("lexicon"),
          py::arg("mode") = PolysemyMode::Full);
    m.def("document_vector", &document_vector, py::arg("matrix"), py::arg("j"));
    m.def("document_vectors", &document_vectors, py::arg("matrix"));
    m.def(
        "euclidean_distance",
        [](const std::vector<double>& u, const std::vector<double>& v) {
            return euclidean_distance(std::span<const double>(u), std::span<const double>(v));
        },
        py::arg("u"), py::arg("v"));

    py::class_<SvdFactorization>(m, "SvdFactorization")
        .def_readonly("sigma", &SvdFactorization::sigma)
        .def_readonly("rank", &SvdFactorization::rank)
        .def_property_readonly("u", [](const SvdFactorization& f) { return matrix_rows(f.u); })
        .def_property_readonly("y", [](const SvdFactorization& f) { return matrix_rows(f.y); });

    py::enum_<ReducedCoords>(m, "ReducedCoords")
        .value("WHITENED", ReducedCoords::Whitened)
        .value("SCALED", ReducedCoords::Scaled);

    py::class_<TruncatedSvd>(m, "TruncatedSvd")
        .def_readonly("base", &TruncatedSvd::base)
        .def_readonly("k", &TruncatedSvd::k);

    m.def("compute_svd",
          [](const FieldMatrix& m_) { return compute_svd(m_); }, py::arg("matrix"));
    m.def(
        "compute_svd_rows",
        [](const std::vector<std::vector<double>>& rows) {
            if (rows.empty()) throw std::invalid_argument("matrix must have at least one row");
            Matrix m_(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (rows[i].size() != rows[0].size())
                    throw std::invalid_argument("rows have inconsistent lengths");
                for (std::size_t j = 0; j < rows[i].size(); ++j)
                    m_(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
            }
            return compute_svd(m_);
        },
        py::arg("rows"), "factorize a matrix given as a list of rows");
    m.def("truncate", &truncate, py::arg("factorization"), py::arg("k"));
    m.def(
        "reconstruct",
        [](const TruncatedSvd& t) { return matrix_rows(reconstruct(t)); },
        py::arg("truncated"));
    m.def(
        "project_document",
        [](const TruncatedSvd& t, const std::vector<double>& v, ReducedCoords coords) {
            return project_document(t, std::span<const double>(v), coords);
        },
        py::arg("truncated"), py::arg("vector"), py::arg("coords") = ReducedCoords::Whitened);
    m.def(
        "project_corpus",
        [](const TruncatedSvd& t, const FieldMatrix& m_, ReducedCoords coords) {
            return matrix_rows(project_corpus(t, m_, coords));
        },
        py::arg("truncated"), py::arg("matrix"), py::arg("coords") = ReducedCoords::Whitened);

    py::class_<Merge>(m, "Merge")
        .def_readonly("left", &Merge::left)
        .def_readonly("right", &Merge::right)
        .def_readonly("height", &Merge::height)
        .def_readonly("size", &Merge::size);

    py::class_<Dendrogram>(m, "Dendrogram")
        .def_readonly("n_leaves", &Dendrogram::n_leaves)
        .def_readonly("merges", &Dendrogram::merges);

    py::enum_<HeightScale>(m, "HeightScale")
        .value("ESS", HeightScale::Ess)
        .value("SQRT", HeightScale::Sqrt);

    py::class_<ClusterAssignment>(m, "ClusterAssignment")
        .def_readonly("doc_to_cluster", &ClusterAssignment::doc_to_cluster)
        .def_readonly("n_clusters", &ClusterAssignment::n_clusters);

    m.def(
        "ward_cluster",
        [](const std::vector<std::vector<double>>& rows, std::optional<int> n_clusters,
           std::optional<double> epsilon) {
            return ward_cluster(to_doc_vectors(rows), make_params(n_clusters, epsilon));
        },
        py::arg("vectors"), py::arg("n_clusters") = std::nullopt,
        py::arg("epsilon") = std::nullopt);
    m.def(
        "ward_cluster_vectors",
        [](const std::vector<DocVector>& vectors, std::optional<int> n_clusters,
           std::optional<double> epsilon) {
            return ward_cluster(vectors, make_params(n_clusters, epsilon));
        },
        py::arg("vectors"), py::arg("n_clusters") = std::nullopt,
        py::arg("epsilon") = std::nullopt);
    m.def("cut_dendrogram", &cut_dendrogram, py::arg("dendrogram"), py::arg("n_clusters"));
    m.def("to_newick", &to_newick, py::arg("dendrogram"),
          py::arg("labels") = std::vector<std::string>{}, py::arg("scale") = HeightScale::Ess);

    py::class_<DominanceEntry>(m, "DominanceEntry")
        .def_readonly("cluster_id", &DominanceEntry::cluster_id)
        .def_readonly("author", &DominanceEntry::author)
        .def_readonly("share", &DominanceEntry::share)
        .def_readonly("dominant", &DominanceEntry::dominant);

    py::class_<DominanceReport>(m, "DominanceReport")
        .def_readonly("entries", &DominanceReport::entries)
        .def_readonly("threshold", &DominanceReport::threshold);

    py::class_<AuthorDistribution>(m, "AuthorDistribution")
        .def_readonly("per_cluster", &AuthorDistribution::per_cluster)
        .def_readonly("totals", &AuthorDistribution::totals);

    m.def("author_distribution", &author_distribution, py::arg("assignment"), py::arg("corpus"));
    m.def("dominance", &dominance, py::arg("distribution"), py::arg("threshold") = 0.5);
    m.def("purity", &purity, py::arg("assignment"), py::arg("corpus"));

    m.def(
        "run_pipeline",
        [](const std::filesystem::path& config_path) {
            run_pipeline(load_pipeline_config_file(config_path));
        },
        py::arg("config_path"), "run the full pipeline from a key = value config file");
}
