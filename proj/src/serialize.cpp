#include "semfields/serialize.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "semfields/errors.hpp"

namespace semfields {

namespace {

using nlohmann::json;

}  // namespace

std::string json_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\b': out += "\\b"; break;
            case '\f': out += "\\f"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

namespace {

json parse_json(std::istream& is, const char* what) {
    try {
        return json::parse(is);
    } catch (const json::exception& e) {
        throw DataError(std::string("invalid ") + what + " json: " + e.what());
    }
}

void write_real_array(std::ostream& os, std::span<const double> values) {
    os << '[';
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) os << ',';
        os << format_real(values[i]);
    }
    os << ']';
}

// rows of a column-major matrix as nested arrays
void write_matrix_rows(std::ostream& os, const Matrix& m) {
    os << '[';
    for (int i = 0; i < m.rows(); ++i) {
        if (i) os << ',';
        os << '[';
        for (int j = 0; j < m.cols(); ++j) {
            if (j) os << ',';
            os << format_real(m(i, j));
        }
        os << ']';
    }
    os << ']';
}

Matrix read_matrix_rows(const json& rows, const char* what) {
    if (!rows.is_array() || rows.empty())
        throw DataError(std::string(what) + " must be a non-empty array of rows");
    const int n_rows = static_cast<int>(rows.size());
    const int n_cols = static_cast<int>(rows[0].size());
    Matrix m(n_rows, n_cols);
    for (int i = 0; i < n_rows; ++i) {
        if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != n_cols)
            throw DataError(std::string(what) + " rows have inconsistent lengths");
        for (int j = 0; j < n_cols; ++j)
            m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].get<double>();
    }
    return m;
}

}  // namespace

std::string format_real(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
    if (ec != std::errc{}) throw NumericalError("real formatting failed");
    return {buf, end};
}

void write_lexicon_json(std::ostream& os, const Lexicon& lexicon) {
    os << "{\"fields\":[";
    const auto& fields = lexicon.fields();
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) os << ',';
        os << '"' << fields[i].name << '"';
    }
    os << "],\"words\":{";
    bool first = true;
    for (const auto& [form, ids] : lexicon.words()) {
        if (!first) os << ',';
        first = false;
        os << '"' << form << "\":[";
        for (std::size_t i = 0; i < ids.size(); ++i) {
            if (i) os << ',';
            os << ids[i];
        }
        os << ']';
    }
    os << "}}\n";
}

Lexicon read_lexicon_json(std::istream& is) {
    const json j = parse_json(is, "lexicon");
    const auto& fields = j.at("fields");
    const auto& standard = standard_fields();
    if (fields.size() != standard.size())
        throw DataError("lexicon json must list the 41 standard fields");
    for (std::size_t i = 0; i < standard.size(); ++i)
        if (fields[i].get<std::string>() != standard[i].name)
            throw DataError("lexicon json field order differs from the standard table at index " +
                            std::to_string(i));
    std::map<std::string, std::vector<int>> words;
    for (const auto& [form, ids] : j.at("words").items())
        words[form] = ids.get<std::vector<int>>();
    return Lexicon(std::move(words));
}

void write_corpus_json(std::ostream& os, const Corpus& corpus) {
    os << "{\"documents\":[";
    for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
        const Document& doc = corpus.documents[d];
        if (d) os << ',';
        os << "{\"id\":" << doc.id << ",\"author\":\"" << json_escape(doc.author)
           << "\",\"title\":\"" << json_escape(doc.title) << "\",\"counts\":{";
        bool first = true;
        for (const auto& [token, count] : doc.token_counts) {
            if (!first) os << ',';
            first = false;
            os << '"' << token << "\":" << count;
        }
        os << "}}";
    }
    os << "],\"authors\":[";
    for (std::size_t i = 0; i < corpus.authors.size(); ++i) {
        if (i) os << ',';
        os << '"' << json_escape(corpus.authors[i]) << '"';
    }
    os << "]}\n";
}

Corpus read_corpus_json(std::istream& is) {
    const json j = parse_json(is, "corpus");
    Corpus corpus;
    for (const auto& jdoc : j.at("documents")) {
        Document doc;
        doc.id = jdoc.at("id").get<int>();
        doc.author = jdoc.at("author").get<std::string>();
        doc.title = jdoc.at("title").get<std::string>();
        for (const auto& [token, count] : jdoc.at("counts").items()) {
            const auto n = count.get<std::int64_t>();
            doc.token_counts[token] = n;
            doc.total_tokens += n;
        }
        corpus.documents.push_back(std::move(doc));
    }
    corpus.authors = j.at("authors").get<std::vector<std::string>>();
    for (std::size_t i = 0; i < corpus.documents.size(); ++i)
        if (corpus.documents[i].id != static_cast<int>(i))
            throw DataError("corpus json document ids are not dense");
    return corpus;
}

void write_matrix_json(std::ostream& os, const FieldMatrix& m) {
    os << "{\"fields\":[";
    for (std::size_t i = 0; i < m.field_names.size(); ++i) {
        if (i) os << ',';
        os << '"' << m.field_names[i] << '"';
    }
    os << "],\"docs\":[";
    for (std::size_t i = 0; i < m.doc_ids.size(); ++i) {
        if (i) os << ',';
        os << m.doc_ids[i];
    }
    os << "],\"columns\":[";
    for (int j = 0; j < m.n_docs; ++j) {
        if (j) os << ',';
        write_real_array(os, m.values.col(j));
    }
    os << "]}\n";
}

// The schema does not carry the pre-normalization column masses; a read-back
// matrix has an empty column_mass.
FieldMatrix read_matrix_json(std::istream& is) {
    const json j = parse_json(is, "matrix");
    FieldMatrix m;
    m.field_names = j.at("fields").get<std::vector<std::string>>();
    m.doc_ids = j.at("docs").get<std::vector<int>>();
    m.n_fields = static_cast<int>(m.field_names.size());
    m.n_docs = static_cast<int>(m.doc_ids.size());
    const auto& columns = j.at("columns");
    if (static_cast<int>(columns.size()) != m.n_docs)
        throw DataError("matrix json column count does not match docs");
    m.values = Matrix(m.n_fields, m.n_docs);
    for (int col = 0; col < m.n_docs; ++col) {
        const auto& jcol = columns[static_cast<std::size_t>(col)];
        if (static_cast<int>(jcol.size()) != m.n_fields)
            throw DataError("matrix json column " + std::to_string(col) + " has wrong length");
        for (int row = 0; row < m.n_fields; ++row)
            m.values(row, col) = jcol[static_cast<std::size_t>(row)].get<double>();
    }
    return m;
}

void write_svd_json(std::ostream& os, const SvdFactorization& f, int k) {
    os << "{\"sigma\":";
    write_real_array(os, f.sigma);
    os << ",\"u\":";
    write_matrix_rows(os, f.u);
    os << ",\"y\":";
    write_matrix_rows(os, f.y);
    os << ",\"k\":" << k << "}\n";
}

std::pair<SvdFactorization, int> read_svd_json(std::istream& is) {
    const json j = parse_json(is, "svd");
    SvdFactorization f;
    f.sigma = j.at("sigma").get<std::vector<double>>();
    f.u = read_matrix_rows(j.at("u"), "svd u");
    f.y = read_matrix_rows(j.at("y"), "svd y");
    f.rank = static_cast<int>(f.sigma.size());
    if (f.u.cols() != f.rank || f.y.cols() != f.rank)
        throw DataError("svd json factor widths do not match sigma length");
    const int k = j.at("k").get<int>();
    if (k < 1 || k > f.rank) throw DataError("svd json k out of range");
    return {std::move(f), k};
}

void write_dendrogram_json(std::ostream& os, const Dendrogram& d, HeightScale scale) {
    os << "{\"n_leaves\":" << d.n_leaves << ",\"merges\":[";
    for (std::size_t i = 0; i < d.merges.size(); ++i) {
        const Merge& m = d.merges[i];
        if (i) os << ',';
        const double height =
            scale == HeightScale::Ess ? m.height : std::sqrt(2.0 * m.height);
        os << "{\"left\":" << m.left << ",\"right\":" << m.right
           << ",\"height\":" << format_real(height) << ",\"size\":" << m.size << '}';
    }
    os << "]}\n";
}

Dendrogram read_dendrogram_json(std::istream& is) {
    const json j = parse_json(is, "dendrogram");
    Dendrogram d;
    d.n_leaves = j.at("n_leaves").get<int>();
    for (const auto& jm : j.at("merges")) {
        Merge m;
        m.left = jm.at("left").get<int>();
        m.right = jm.at("right").get<int>();
        m.height = jm.at("height").get<double>();
        m.size = jm.at("size").get<int>();
        d.merges.push_back(m);
    }
    if (static_cast<int>(d.merges.size()) > d.n_leaves - 1)
        throw DataError("dendrogram json has more merges than leaves allow");
    return d;
}

void save_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open " + path.string() + " for writing");
    out << content;
    if (!out) throw DataError("i/o failure while writing " + path.string());
}

std::string load_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw DataError("i/o failure while reading " + path.string());
    return buf.str();
}

}  // namespace semfields
