#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "semfields/cluster.hpp"
#include "semfields/corpus.hpp"
#include "semfields/errors.hpp"
#include "semfields/field_matrix.hpp"
#include "semfields/figures.hpp"
#include "semfields/lexicon.hpp"
#include "semfields/pipeline.hpp"
#include "semfields/report.hpp"
#include "semfields/serialize.hpp"
#include "semfields/svd.hpp"

namespace {

namespace fs = std::filesystem;
using namespace semfields;

std::ifstream open_input(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    return in;
}

template <typename Writer>
void write_file(const fs::path& path, Writer&& writer) {
    std::ostringstream buf;
    writer(buf);
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    save_text_file(path, buf.str());
}

HeightScale parse_height(const std::string& s) {
    if (s == "ess") return HeightScale::Ess;
    if (s == "sqrt") return HeightScale::Sqrt;
    throw DataError("height must be ess or sqrt, got " + s);
}

int run(int argc, char** argv) {
    CLI::App app{"clustering of author texts in a WordNet semantic-field vector space"};
    app.require_subcommand(1);

    // lexicon build | lexicon plain
    auto* lexicon_cmd = app.add_subcommand("lexicon", "build or convert a semantic-field lexicon");
    lexicon_cmd->require_subcommand(1);

    std::string wordnet_dir, lex_out, plain_in;
    auto* lex_build = lexicon_cmd->add_subcommand("build", "parse WordNet data.noun/data.verb");
    lex_build->add_option("--wordnet-dir", wordnet_dir, "directory with data.noun and data.verb")
        ->required();
    lex_build->add_option("--out", lex_out, "output lexicon json")->required();
    lex_build->callback([&] {
        auto noun = open_input(fs::path(wordnet_dir) / "data.noun");
        auto verb = open_input(fs::path(wordnet_dir) / "data.verb");
        const Lexicon lexicon = build_lexicon(noun, verb);
        write_file(lex_out, [&](std::ostream& os) { write_lexicon_json(os, lexicon); });
    });

    auto* lex_plain = lexicon_cmd->add_subcommand("plain", "load a field_name<TAB>words lexicon");
    lex_plain->add_option("--in", plain_in, "plain lexicon tsv")->required();
    lex_plain->add_option("--out", lex_out, "output lexicon json")->required();
    lex_plain->callback([&] {
        auto in = open_input(plain_in);
        const Lexicon lexicon = load_plain_lexicon(in);
        write_file(lex_out, [&](std::ostream& os) { write_lexicon_json(os, lexicon); });
    });

    // ingest
    std::string corpus_dir, corpus_out;
    auto* ingest_cmd = app.add_subcommand("ingest", "ingest root/<author>/<title>.txt documents");
    ingest_cmd->add_option("--corpus", corpus_dir, "corpus root directory")->required();
    ingest_cmd->add_option("--out", corpus_out, "output corpus json")->required();
    ingest_cmd->callback([&] {
        const Corpus corpus = ingest_directory(corpus_dir);
        write_file(corpus_out, [&](std::ostream& os) { write_corpus_json(os, corpus); });
    });

    // matrix
    std::string matrix_corpus, matrix_lexicon, matrix_out, polysemy = "full";
    auto* matrix_cmd = app.add_subcommand("matrix", "build the field-document frequency matrix");
    matrix_cmd->add_option("--corpus", matrix_corpus, "corpus json")->required();
    matrix_cmd->add_option("--lexicon", matrix_lexicon, "lexicon json")->required();
    matrix_cmd->add_option("--polysemy", polysemy, "full | fractional")
        ->check(CLI::IsMember({"full", "fractional"}));
    matrix_cmd->add_option("--out", matrix_out, "output matrix json")->required();
    matrix_cmd->callback([&] {
        auto cin_ = open_input(matrix_corpus);
        const Corpus corpus = read_corpus_json(cin_);
        auto lin = open_input(matrix_lexicon);
        const Lexicon lexicon = read_lexicon_json(lin);
        const FieldMatrix m = build_field_matrix(
            corpus, lexicon,
            polysemy == "full" ? PolysemyMode::Full : PolysemyMode::Fractional);
        write_file(matrix_out, [&](std::ostream& os) { write_matrix_json(os, m); });
    });

    // svd
    std::string svd_matrix, svd_out, scree_out;
    int svd_k = 0;
    auto* svd_cmd = app.add_subcommand("svd", "factorize the field matrix");
    svd_cmd->add_option("--matrix", svd_matrix, "matrix json")->required();
    svd_cmd->add_option("--k", svd_k, "retained dimension (default: numerical rank)");
    svd_cmd->add_option("--out", svd_out, "output factorization json")->required();
    svd_cmd->add_option("--scree", scree_out, "output scree csv")->required();
    svd_cmd->callback([&] {
        auto min = open_input(svd_matrix);
        const FieldMatrix m = read_matrix_json(min);
        const SvdFactorization f = compute_svd(m);
        const int k = svd_cmd->count("--k") ? svd_k : f.rank;
        truncate(f, k);  // range check
        write_file(svd_out, [&](std::ostream& os) { write_svd_json(os, f, k); });
        write_file(scree_out, [&](std::ostream& os) { write_scree_csv(os, f.sigma); });
    });

    // cluster
    std::string cl_matrix, cl_svd, cl_out, cl_newick, cl_coords = "whitened", cl_height = "ess";
    int cl_k = 0, cl_clusters = 0;
    double cl_epsilon = 0.0;
    auto* cluster_cmd = app.add_subcommand("cluster", "ward clustering of document vectors");
    cluster_cmd->add_option("--matrix", cl_matrix, "matrix json")->required();
    cluster_cmd->add_option("--svd", cl_svd, "factorization json (cluster in reduced space)");
    cluster_cmd->add_option("--k", cl_k, "retained dimension (default: k from the svd file)");
    cluster_cmd->add_option("--reduced-coords", cl_coords, "whitened | scaled")
        ->check(CLI::IsMember({"whitened", "scaled"}));
    auto* opt_clusters = cluster_cmd->add_option("--clusters", cl_clusters, "stop at this cluster count");
    auto* opt_epsilon = cluster_cmd->add_option("--epsilon", cl_epsilon, "stop before any merge cost >= epsilon");
    opt_clusters->excludes(opt_epsilon);
    opt_epsilon->excludes(opt_clusters);
    cluster_cmd->add_option("--height", cl_height, "emitted height convention: ess | sqrt")
        ->check(CLI::IsMember({"ess", "sqrt"}));
    cluster_cmd->add_option("--out", cl_out, "output dendrogram json")->required();
    cluster_cmd->add_option("--newick", cl_newick, "optional newick export");
    cluster_cmd->callback([&] {
        if (!opt_clusters->count() && !opt_epsilon->count())
            throw CLI::RequiredError("--clusters or --epsilon");
        auto min = open_input(cl_matrix);
        const FieldMatrix m = read_matrix_json(min);
        std::vector<DocVector> vectors;
        if (cluster_cmd->count("--svd")) {
            auto sin = open_input(cl_svd);
            auto [f, file_k] = read_svd_json(sin);
            const int k = cluster_cmd->count("--k") ? cl_k : file_k;
            const TruncatedSvd t = truncate(f, k);
            vectors = project_corpus_vectors(
                t, m, cl_coords == "whitened" ? ReducedCoords::Whitened : ReducedCoords::Scaled);
        } else {
            vectors = document_vectors(m);
        }
        const ClusterParams params = opt_clusters->count()
                                         ? ClusterParams::by_count(cl_clusters)
                                         : ClusterParams::by_epsilon(cl_epsilon);
        const Dendrogram d = ward_cluster(vectors, params);
        const HeightScale scale = parse_height(cl_height);
        write_file(cl_out, [&](std::ostream& os) { write_dendrogram_json(os, d, scale); });
        if (cluster_cmd->count("--newick"))
            write_file(cl_newick, [&](std::ostream& os) { os << to_newick(d, {}, scale); });
    });

    // report
    std::string rp_dendrogram, rp_corpus, rp_svd, rp_out_dir;
    int rp_clusters = 0;
    double rp_threshold = 0.5;
    auto* report_cmd = app.add_subcommand("report", "author distribution, dominance and figures");
    report_cmd->add_option("--dendrogram", rp_dendrogram, "dendrogram json")->required();
    report_cmd->add_option("--corpus", rp_corpus, "corpus json")->required();
    report_cmd->add_option("--clusters", rp_clusters, "cut at this cluster count")->required();
    report_cmd->add_option("--threshold", rp_threshold, "dominance threshold (default 0.5)");
    report_cmd->add_option("--svd", rp_svd, "factorization json, enables scree output");
    report_cmd->add_option("--out-dir", rp_out_dir, "output directory")->required();
    report_cmd->callback([&] {
        auto din = open_input(rp_dendrogram);
        const Dendrogram d = read_dendrogram_json(din);
        auto cin_ = open_input(rp_corpus);
        const Corpus corpus = read_corpus_json(cin_);
        const ClusterAssignment assignment = cut_dendrogram(d, rp_clusters);
        const AuthorDistribution dist = author_distribution(assignment, corpus);
        const DominanceReport dom = dominance(dist, rp_threshold);
        const double purity_value = purity(assignment, corpus);
        std::vector<double> sigma;
        if (report_cmd->count("--svd")) {
            auto sin = open_input(rp_svd);
            sigma = read_svd_json(sin).first.sigma;
        }
        fs::create_directories(rp_out_dir);
        write_file(fs::path(rp_out_dir) / "assignment.csv", [&](std::ostream& os) {
            write_assignment_csv(os, assignment, corpus);
        });
        write_file(fs::path(rp_out_dir) / "report.json", [&](std::ostream& os) {
            write_report_json(os, dist, dom, purity_value);
        });
        render_figures(d, assignment, dist, sigma, rp_out_dir);
    });

    // pipeline
    std::string pl_config;
    std::string pl_corpus, pl_wordnet, pl_plain, pl_lexicon, pl_space, pl_coords, pl_polysemy,
        pl_height, pl_out;
    int pl_k = 0, pl_clusters = 0;
    double pl_epsilon = 0.0, pl_threshold = 0.0;
    auto* pipeline_cmd = app.add_subcommand("pipeline", "run the whole pipeline from a config file");
    pipeline_cmd->add_option("--config", pl_config, "key = value config file")->required();
    pipeline_cmd->add_option("--corpus", pl_corpus, "override: corpus directory");
    pipeline_cmd->add_option("--wordnet-dir", pl_wordnet, "override: wordnet lexicon source");
    pipeline_cmd->add_option("--plain-lexicon", pl_plain, "override: plain lexicon source");
    pipeline_cmd->add_option("--lexicon", pl_lexicon, "override: lexicon json source");
    pipeline_cmd->add_option("--space", pl_space, "override: field | reduced");
    pipeline_cmd->add_option("--k", pl_k, "override: reduced dimension");
    pipeline_cmd->add_option("--reduced-coords", pl_coords, "override: whitened | scaled");
    pipeline_cmd->add_option("--polysemy", pl_polysemy, "override: full | fractional");
    pipeline_cmd->add_option("--clusters", pl_clusters, "override: stop at cluster count");
    pipeline_cmd->add_option("--epsilon", pl_epsilon, "override: stop threshold");
    pipeline_cmd->add_option("--threshold", pl_threshold, "override: dominance threshold");
    pipeline_cmd->add_option("--height", pl_height, "override: ess | sqrt");
    pipeline_cmd->add_option("--out-dir", pl_out, "override: output directory");
    pipeline_cmd->callback([&] {
        PipelineConfig config = load_pipeline_config_file(pl_config);
        if (pipeline_cmd->count("--corpus")) config.corpus_dir = pl_corpus;
        if (pipeline_cmd->count("--wordnet-dir")) {
            config.wordnet_dir = pl_wordnet;
            config.plain_lexicon.reset();
            config.lexicon_json.reset();
        }
        if (pipeline_cmd->count("--plain-lexicon")) {
            config.plain_lexicon = pl_plain;
            config.wordnet_dir.reset();
            config.lexicon_json.reset();
        }
        if (pipeline_cmd->count("--lexicon")) {
            config.lexicon_json = pl_lexicon;
            config.wordnet_dir.reset();
            config.plain_lexicon.reset();
        }
        if (pipeline_cmd->count("--space")) config.space = pl_space;
        if (pipeline_cmd->count("--k")) config.k = pl_k;
        if (pipeline_cmd->count("--reduced-coords")) config.reduced_coords = pl_coords;
        if (pipeline_cmd->count("--polysemy")) config.polysemy = pl_polysemy;
        if (pipeline_cmd->count("--clusters")) {
            config.clusters = pl_clusters;
            config.epsilon.reset();
        }
        if (pipeline_cmd->count("--epsilon")) {
            config.epsilon = pl_epsilon;
            config.clusters.reset();
        }
        if (pipeline_cmd->count("--threshold")) config.threshold = pl_threshold;
        if (pipeline_cmd->count("--height")) config.height = pl_height;
        if (pipeline_cmd->count("--out-dir")) config.out_dir = pl_out;
        run_pipeline(config);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 1;  // usage error
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const semfields::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
