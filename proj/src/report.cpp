#include "semfields/report.hpp"

#include <algorithm>
#include <ostream>

#include "semfields/errors.hpp"
#include "semfields/serialize.hpp"

namespace semfields {

AuthorDistribution author_distribution(const ClusterAssignment& assignment,
                                       const Corpus& corpus) {
    if (assignment.doc_to_cluster.size() != corpus.documents.size())
        throw DataError("assignment covers " + std::to_string(assignment.doc_to_cluster.size()) +
                        " documents, corpus has " + std::to_string(corpus.documents.size()));
    AuthorDistribution dist;
    dist.per_cluster.resize(static_cast<std::size_t>(assignment.n_clusters));
    for (const Document& doc : corpus.documents) {
        const int cluster = assignment.doc_to_cluster[static_cast<std::size_t>(doc.id)];
        ++dist.per_cluster[static_cast<std::size_t>(cluster)][doc.author];
        ++dist.totals[doc.author];
    }
    return dist;
}

DominanceReport dominance(const AuthorDistribution& dist, double threshold) {
    if (!(threshold > 0.0) || threshold > 1.0)
        throw std::invalid_argument("dominance threshold must be in (0, 1]");
    DominanceReport report;
    report.threshold = threshold;
    for (std::size_t c = 0; c < dist.per_cluster.size(); ++c) {
        const auto& counts = dist.per_cluster[c];
        int cluster_size = 0;
        int best_count = 0;
        std::string best_author;
        for (const auto& [author, count] : counts) {
            cluster_size += count;
            if (count > best_count) {  // map order makes ties pick the smallest label
                best_count = count;
                best_author = author;
            }
        }
        DominanceEntry entry;
        entry.cluster_id = static_cast<int>(c);
        entry.author = best_author;
        entry.share = cluster_size == 0 ? 0.0
                                        : static_cast<double>(best_count) /
                                              static_cast<double>(cluster_size);
        entry.dominant = entry.share >= threshold;
        report.entries.push_back(std::move(entry));
    }
    return report;
}

double purity(const ClusterAssignment& assignment, const Corpus& corpus) {
    const AuthorDistribution dist = author_distribution(assignment, corpus);
    int majority_sum = 0;
    for (const auto& counts : dist.per_cluster) {
        int best = 0;
        for (const auto& [author, count] : counts) best = std::max(best, count);
        majority_sum += best;
    }
    return static_cast<double>(majority_sum) / static_cast<double>(corpus.documents.size());
}

namespace {

// minimal CSV quoting: wrap fields containing comma, quote or newline
std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

}  // namespace

void write_assignment_csv(std::ostream& os, const ClusterAssignment& assignment,
                          const Corpus& corpus) {
    if (assignment.doc_to_cluster.size() != corpus.documents.size())
        throw DataError("assignment does not cover the corpus");
    os << "doc_id,author,title,cluster_id\n";
    for (const Document& doc : corpus.documents)
        os << doc.id << ',' << csv_field(doc.author) << ',' << csv_field(doc.title) << ','
           << assignment.doc_to_cluster[static_cast<std::size_t>(doc.id)] << '\n';
}

void write_report_json(std::ostream& os, const AuthorDistribution& dist,
                       const DominanceReport& dom, double purity_value) {
    os << "{\"purity\":" << format_real(purity_value)
       << ",\"threshold\":" << format_real(dom.threshold) << ",\"clusters\":[";
    for (std::size_t c = 0; c < dist.per_cluster.size(); ++c) {
        if (c) os << ',';
        const auto& counts = dist.per_cluster[c];
        int cluster_size = 0;
        for (const auto& [author, count] : counts) cluster_size += count;
        os << "{\"cluster\":" << c << ",\"size\":" << cluster_size << ",\"counts\":{";
        bool first = true;
        for (const auto& [author, count] : counts) {
            if (!first) os << ',';
            first = false;
            os << '"' << json_escape(author) << "\":" << count;
        }
        os << "},\"shares\":{";
        first = true;
        for (const auto& [author, count] : counts) {
            if (!first) os << ',';
            first = false;
            os << '"' << json_escape(author)
               << "\":" << format_real(static_cast<double>(count) / cluster_size);
        }
        const DominanceEntry& entry = dom.entries[c];
        os << "},\"dominant\":{\"author\":\"" << json_escape(entry.author)
           << "\",\"share\":" << format_real(entry.share)
           << ",\"flagged\":" << (entry.dominant ? "true" : "false") << "}}";
    }
    os << "]}\n";
}

}  // namespace semfields
