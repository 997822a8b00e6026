#include "semfields/pipeline.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include "semfields/cluster.hpp"
#include "semfields/corpus.hpp"
#include "semfields/errors.hpp"
#include "semfields/field_matrix.hpp"
#include "semfields/figures.hpp"
#include "semfields/lexicon.hpp"
#include "semfields/report.hpp"
#include "semfields/serialize.hpp"
#include "semfields/svd.hpp"

namespace semfields {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t");
    return s.substr(begin, end - begin + 1);
}

template <typename F>
auto stage(const std::string& name, F&& body) {
    try {
        return body();
    } catch (const Error& e) {
        throw PipelineStageError(name, e.what(), e.exit_code());
    } catch (const std::exception& e) {
        throw PipelineStageError(name, e.what(), 2);
    }
}

}  // namespace

PipelineConfig load_pipeline_config(std::istream& is) {
    PipelineConfig config;
    std::string line;
    std::size_t line_no = 0;
    bool have_out = false, have_corpus = false;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) throw MalformedLine(line_no, "expected key = value");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty() || value.empty()) throw MalformedLine(line_no, "empty key or value");

        try {
            if (key == "corpus") { config.corpus_dir = value; have_corpus = true; }
            else if (key == "wordnet_dir") config.wordnet_dir = value;
            else if (key == "plain_lexicon") config.plain_lexicon = value;
            else if (key == "lexicon") config.lexicon_json = value;
            else if (key == "space") config.space = value;
            else if (key == "k") config.k = std::stoi(value);
            else if (key == "reduced_coords") config.reduced_coords = value;
            else if (key == "polysemy") config.polysemy = value;
            else if (key == "clusters") config.clusters = std::stoi(value);
            else if (key == "epsilon") config.epsilon = std::stod(value);
            else if (key == "threshold") config.threshold = std::stod(value);
            else if (key == "height") config.height = value;
            else if (key == "out_dir") { config.out_dir = value; have_out = true; }
            else throw MalformedLine(line_no, "unknown key: " + key);
        } catch (const std::invalid_argument&) {
            throw MalformedLine(line_no, "bad numeric value for " + key + ": " + value);
        } catch (const std::out_of_range&) {
            throw MalformedLine(line_no, "numeric value out of range for " + key);
        }
    }
    if (!have_corpus) throw DataError("pipeline config is missing corpus");
    if (!have_out) throw DataError("pipeline config is missing out_dir");
    return config;
}

PipelineConfig load_pipeline_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open config " + path.string());
    return load_pipeline_config(in);
}

namespace {

void validate(const PipelineConfig& config) {
    const int n_sources = (config.wordnet_dir ? 1 : 0) + (config.plain_lexicon ? 1 : 0) +
                          (config.lexicon_json ? 1 : 0);
    if (n_sources != 1)
        throw DataError("exactly one lexicon source required (wordnet_dir, plain_lexicon or lexicon)");
    if (config.space != "field" && config.space != "reduced")
        throw DataError("space must be field or reduced, got " + config.space);
    if (config.reduced_coords != "whitened" && config.reduced_coords != "scaled")
        throw DataError("reduced_coords must be whitened or scaled");
    if (config.polysemy != "full" && config.polysemy != "fractional")
        throw DataError("polysemy must be full or fractional");
    if (config.height != "ess" && config.height != "sqrt")
        throw DataError("height must be ess or sqrt");
    if (config.clusters.has_value() == config.epsilon.has_value())
        throw DataError("exactly one stop rule required (clusters or epsilon)");
    if (!(config.threshold > 0.0) || config.threshold > 1.0)
        throw DataError("threshold must be in (0, 1]");
    if (config.space == "reduced" && config.k < 1) throw DataError("k must be >= 1");
}

std::string render_to_string(const std::function<void(std::ostream&)>& writer) {
    std::ostringstream buf;
    writer(buf);
    return buf.str();
}

}  // namespace

void run_pipeline(const PipelineConfig& config) {
    validate(config);
    const auto& out = config.out_dir;
    std::filesystem::create_directories(out);

    const Corpus corpus = stage("ingest", [&] { return ingest_directory(config.corpus_dir); });
    save_text_file(out / "corpus.json",
                   render_to_string([&](std::ostream& os) { write_corpus_json(os, corpus); }));

    const Lexicon lexicon = stage("lexicon", [&]() -> Lexicon {
        if (config.wordnet_dir) {
            std::ifstream noun(*config.wordnet_dir / "data.noun");
            if (!noun) throw DataError("cannot open " + (*config.wordnet_dir / "data.noun").string());
            std::ifstream verb(*config.wordnet_dir / "data.verb");
            if (!verb) throw DataError("cannot open " + (*config.wordnet_dir / "data.verb").string());
            return build_lexicon(noun, verb);
        }
        if (config.plain_lexicon) {
            std::ifstream in(*config.plain_lexicon);
            if (!in) throw DataError("cannot open " + config.plain_lexicon->string());
            return load_plain_lexicon(in);
        }
        std::ifstream in(*config.lexicon_json);
        if (!in) throw DataError("cannot open " + config.lexicon_json->string());
        return read_lexicon_json(in);
    });
    save_text_file(out / "lexicon.json",
                   render_to_string([&](std::ostream& os) { write_lexicon_json(os, lexicon); }));

    const PolysemyMode mode =
        config.polysemy == "full" ? PolysemyMode::Full : PolysemyMode::Fractional;
    const FieldMatrix matrix =
        stage("matrix", [&] { return build_field_matrix(corpus, lexicon, mode); });
    save_text_file(out / "matrix.json",
                   render_to_string([&](std::ostream& os) { write_matrix_json(os, matrix); }));

    std::vector<DocVector> vectors;
    std::vector<double> sigma;
    if (config.space == "reduced") {
        const ReducedCoords coords = config.reduced_coords == "whitened"
                                         ? ReducedCoords::Whitened
                                         : ReducedCoords::Scaled;
        vectors = stage("svd", [&] {
            const SvdFactorization f = compute_svd(matrix);
            const TruncatedSvd t = truncate(f, config.k);
            sigma = f.sigma;
            save_text_file(out / "svd.json", render_to_string([&](std::ostream& os) {
                               write_svd_json(os, f, config.k);
                           }));
            save_text_file(out / "scree.csv", render_to_string([&](std::ostream& os) {
                               write_scree_csv(os, f.sigma);
                           }));
            return project_corpus_vectors(t, matrix, coords);
        });
    } else {
        vectors = document_vectors(matrix);
    }

    const ClusterParams params = config.clusters ? ClusterParams::by_count(*config.clusters)
                                                 : ClusterParams::by_epsilon(*config.epsilon);
    const Dendrogram dendrogram =
        stage("cluster", [&] { return ward_cluster(vectors, params); });
    const HeightScale scale = config.height == "ess" ? HeightScale::Ess : HeightScale::Sqrt;
    save_text_file(out / "dendrogram.json", render_to_string([&](std::ostream& os) {
                       write_dendrogram_json(os, dendrogram, scale);
                   }));
    std::vector<std::string> labels;
    for (const Document& doc : corpus.documents)
        labels.push_back(doc.author + "/" + doc.title);
    save_text_file(out / "dendrogram.newick", to_newick(dendrogram, labels, scale));

    stage("report", [&] {
        const int n_clusters = dendrogram.n_leaves - static_cast<int>(dendrogram.merges.size());
        const ClusterAssignment assignment = cut_dendrogram(dendrogram, n_clusters);
        const AuthorDistribution dist = author_distribution(assignment, corpus);
        const DominanceReport dom = dominance(dist, config.threshold);
        const double purity_value = purity(assignment, corpus);
        save_text_file(out / "assignment.csv", render_to_string([&](std::ostream& os) {
                           write_assignment_csv(os, assignment, corpus);
                       }));
        save_text_file(out / "report.json", render_to_string([&](std::ostream& os) {
                           write_report_json(os, dist, dom, purity_value);
                       }));
        render_figures(dendrogram, assignment, dist, sigma, out, scale);
        return 0;
    });
}

}  // namespace semfields
