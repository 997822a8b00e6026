#pragma once

#include <string>
#include <vector>

#include "semfields/field_matrix.hpp"

namespace semfields {

// Exactly one stop rule: merge down to a target cluster count, or stop
// before the first merge whose cost reaches epsilon.
struct ClusterParams {
    enum class Stop { Count, Epsilon };

    Stop stop = Stop::Count;
    int n_clusters = 1;
    double epsilon = 0.0;

    static ClusterParams by_count(int n_clusters);
    static ClusterParams by_epsilon(double epsilon);
};

// One agglomeration step. Node ids: leaves 0..n-1, merge i creates node n+i.
// height is the Ward merge cost (the increase in total within-cluster sum
// of squares); left < right.
struct Merge {
    int left = 0;
    int right = 0;
    double height = 0.0;
    int size = 0;

    bool operator==(const Merge&) const = default;
};

struct Dendrogram {
    int n_leaves = 0;
    std::vector<Merge> merges;  // n_leaves-1 when run to completion

    bool operator==(const Dendrogram&) const = default;
};

struct ClusterAssignment {
    std::vector<int> doc_to_cluster;  // leaf index -> cluster id, ids dense
    int n_clusters = 0;

    bool operator==(const ClusterAssignment&) const = default;
};

struct WardOptions {
    // Recompute every updated merge cost from raw centroids and require
    // agreement with the Lance-Williams value (test mode).
    bool cross_check = false;
};

// Agglomerative clustering, Euclidean distance, Ward's minimum-variance
// criterion. Costs are maintained with the Lance-Williams recurrence; among
// minimal-cost pairs (within 1e-12 relative) the lexicographically smallest
// (min node id, max node id) merges first.
Dendrogram ward_cluster(const std::vector<DocVector>& vectors, const ClusterParams& params,
                        const WardOptions& options = {});

// Exactly n_clusters groups from the merge history; cluster ids assigned by
// ascending smallest-member leaf id. Throws std::out_of_range when the
// dendrogram cannot produce that many (or that few) clusters.
ClusterAssignment cut_dendrogram(const Dendrogram& d, int n_clusters);

// Arithmetic mean of each cluster's member vectors.
std::vector<DocVector> cluster_centroids(const std::vector<DocVector>& vectors,
                                         const ClusterAssignment& assignment);

// How merge heights are written out: the Ward cost itself, or the
// distance-like sqrt(2 * cost) convention.
enum class HeightScale { Ess, Sqrt };

// Newick text with branch lengths = height differences. An incomplete
// dendrogram is a forest: one tree per line, roots ordered by smallest
// leaf id. Leaf labels default to the leaf index.
std::string to_newick(const Dendrogram& d, const std::vector<std::string>& labels = {},
                      HeightScale scale = HeightScale::Ess);

}  // namespace semfields
