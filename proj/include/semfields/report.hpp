#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "semfields/cluster.hpp"
#include "semfields/corpus.hpp"

namespace semfields {

struct AuthorDistribution {
    std::vector<std::map<std::string, int>> per_cluster;  // cluster id -> author -> doc count
    std::map<std::string, int> totals;                    // author -> corpus doc count
};

struct DominanceEntry {
    int cluster_id = 0;
    std::string author;   // argmax author, ties to the smallest label
    double share = 0.0;   // max author count / cluster size
    bool dominant = false;

    bool operator==(const DominanceEntry&) const = default;
};

struct DominanceReport {
    std::vector<DominanceEntry> entries;
    double threshold = 0.5;
};

// Exact contingency counts. Throws DataError when assignment and corpus
// disagree on the document count.
AuthorDistribution author_distribution(const ClusterAssignment& assignment,
                                       const Corpus& corpus);

// Per-cluster dominant author; flagged when share >= threshold.
DominanceReport dominance(const AuthorDistribution& dist, double threshold);

// Fraction of documents in the majority author of their cluster.
double purity(const ClusterAssignment& assignment, const Corpus& corpus);

// CSV `doc_id,author,title,cluster_id`, one row per document.
void write_assignment_csv(std::ostream& os, const ClusterAssignment& assignment,
                          const Corpus& corpus);

// report.json payload: purity, threshold, per-cluster counts and shares
// side by side with the dominance verdicts.
void write_report_json(std::ostream& os, const AuthorDistribution& dist,
                       const DominanceReport& dom, double purity_value);

}  // namespace semfields
