#include "semfields/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "semfields/errors.hpp"
#include "semfields/serialize.hpp"

namespace semfields {

namespace {

constexpr double kTieRelTol = 1e-12;

double squared_distance(std::span<const double> u, std::span<const double> v) {
    double sum = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double d = u[i] - v[i];
        sum += d * d;
    }
    return sum;
}

// Ward merge cost from centroids: |A||B| / (|A|+|B|) * |c_A - c_B|^2.
double ward_cost(int size_a, std::span<const double> centroid_a, int size_b,
                 std::span<const double> centroid_b) {
    const double na = static_cast<double>(size_a);
    const double nb = static_cast<double>(size_b);
    return na * nb / (na + nb) * squared_distance(centroid_a, centroid_b);
}

struct ActiveCluster {
    int node_id;
    int size;
    std::vector<double> centroid;
};

}  // namespace

ClusterParams ClusterParams::by_count(int n_clusters) {
    if (n_clusters < 1) throw std::invalid_argument("target cluster count must be >= 1");
    ClusterParams p;
    p.stop = Stop::Count;
    p.n_clusters = n_clusters;
    return p;
}

ClusterParams ClusterParams::by_epsilon(double epsilon) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
    ClusterParams p;
    p.stop = Stop::Epsilon;
    p.epsilon = epsilon;
    return p;
}

Dendrogram ward_cluster(const std::vector<DocVector>& vectors, const ClusterParams& params,
                        const WardOptions& options) {
    const int n = static_cast<int>(vectors.size());
    if (n < 2) throw std::invalid_argument("clustering needs at least 2 vectors");
    const std::size_t dim = vectors.front().components.size();
    for (const auto& v : vectors) {
        if (v.components.size() != dim)
            throw std::invalid_argument("vectors have mismatched dimensions");
        for (double x : v.components)
            if (!std::isfinite(x)) throw DataError("vector contains a non-finite component");
    }

    std::vector<ActiveCluster> active;
    active.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) active.push_back({i, 1, vectors[static_cast<std::size_t>(i)].components});

    // cost[i][j], j < i, parallel to `active`; singletons start at
    // half the squared distance.
    std::vector<std::vector<double>> cost(static_cast<std::size_t>(n));
    for (int i = 1; i < n; ++i) {
        cost[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(i));
        for (int j = 0; j < i; ++j)
            cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                0.5 * squared_distance(active[static_cast<std::size_t>(i)].centroid,
                                       active[static_cast<std::size_t>(j)].centroid);
    }

    Dendrogram dendrogram;
    dendrogram.n_leaves = n;

    const int target = params.stop == ClusterParams::Stop::Count ? params.n_clusters : 1;
    while (static_cast<int>(active.size()) > target) {
        // minimum cost, then the lexicographically smallest (min node id,
        // max node id) among ties within kTieRelTol relative
        double min_cost = std::numeric_limits<double>::infinity();
        for (std::size_t i = 1; i < active.size(); ++i)
            for (std::size_t j = 0; j < i; ++j) min_cost = std::min(min_cost, cost[i][j]);

        const double tie_limit = min_cost + kTieRelTol * min_cost;
        std::size_t best_i = 0, best_j = 0;
        int best_lo = std::numeric_limits<int>::max();
        int best_hi = std::numeric_limits<int>::max();
        for (std::size_t i = 1; i < active.size(); ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                if (cost[i][j] > tie_limit) continue;
                const int lo = std::min(active[i].node_id, active[j].node_id);
                const int hi = std::max(active[i].node_id, active[j].node_id);
                if (std::tie(lo, hi) < std::tie(best_lo, best_hi)) {
                    best_lo = lo;
                    best_hi = hi;
                    best_i = i;
                    best_j = j;
                }
            }
        }

        if (params.stop == ClusterParams::Stop::Epsilon && min_cost >= params.epsilon) break;

        ActiveCluster& a = active[std::max(best_i, best_j)];
        ActiveCluster& b = active[std::min(best_i, best_j)];
        const double merged_cost = cost[std::max(best_i, best_j)][std::min(best_i, best_j)];

        Merge merge;
        merge.left = std::min(a.node_id, b.node_id);
        merge.right = std::max(a.node_id, b.node_id);
        merge.height = merged_cost;
        merge.size = a.size + b.size;

        ActiveCluster merged;
        merged.node_id = n + static_cast<int>(dendrogram.merges.size());
        merged.size = merge.size;
        merged.centroid.resize(dim);
        for (std::size_t d = 0; d < dim; ++d)
            merged.centroid[d] = (a.size * a.centroid[d] + b.size * b.centroid[d]) /
                                 static_cast<double>(merged.size);

        // Lance-Williams update of the merge costs against every other
        // active cluster k:
        //   cost(k, a+b) = [(n_a+n_k) cost(a,k) + (n_b+n_k) cost(b,k)
        //                   - n_k cost(a,b)] / (n_a+n_b+n_k)
        const std::size_t hi = std::max(best_i, best_j);
        const std::size_t lo = std::min(best_i, best_j);
        auto cost_at = [&](std::size_t x, std::size_t y) -> double {
            return x > y ? cost[x][y] : cost[y][x];
        };
        std::vector<double> updated;
        updated.reserve(active.size() - 2);
        for (std::size_t k = 0; k < active.size(); ++k) {
            if (k == hi || k == lo) continue;
            const double nk = static_cast<double>(active[k].size);
            const double na = static_cast<double>(a.size);
            const double nb = static_cast<double>(b.size);
            const double value = ((na + nk) * cost_at(hi, k) + (nb + nk) * cost_at(lo, k) -
                                  nk * merged_cost) /
                                 (na + nb + nk);
            if (options.cross_check) {
                const double reference = ward_cost(merged.size, merged.centroid,
                                                   active[k].size, active[k].centroid);
                if (std::abs(value - reference) > 1e-9 * std::max(1.0, reference))
                    throw std::logic_error(
                        "lance-williams cost diverged from centroid recomputation: " +
                        format_real(value) + " vs " + format_real(reference));
            }
            updated.push_back(value);
        }

        dendrogram.merges.push_back(merge);

        // replace the lower slot with the merged cluster, drop the higher one
        active[lo] = std::move(merged);
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(hi));
        cost.erase(cost.begin() + static_cast<std::ptrdiff_t>(hi));
        for (auto& row : cost)
            if (row.size() > hi) row.erase(row.begin() + static_cast<std::ptrdiff_t>(hi));
        std::size_t u = 0;
        for (std::size_t k = 0; k < active.size(); ++k) {
            if (k == lo) continue;
            if (k > lo)
                cost[k][lo] = updated[u++];
            else
                cost[lo][k] = updated[u++];
        }
    }
    return dendrogram;
}

ClusterAssignment cut_dendrogram(const Dendrogram& d, int n_clusters) {
    const int n = d.n_leaves;
    const int reachable_min = n - static_cast<int>(d.merges.size());
    if (n_clusters < 1 || n_clusters > n)
        throw std::out_of_range("cluster count " + std::to_string(n_clusters) +
                                " out of range [1, " + std::to_string(n) + "]");
    if (n_clusters < reachable_min)
        throw std::out_of_range("dendrogram stopped at " + std::to_string(reachable_min) +
                                " clusters; cannot cut at " + std::to_string(n_clusters));

    std::vector<int> parent(static_cast<std::size_t>(n + d.merges.size()));
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
    auto find = [&parent](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };

    const int applied = n - n_clusters;
    for (int i = 0; i < applied; ++i) {
        const Merge& merge = d.merges[static_cast<std::size_t>(i)];
        const int node = n + i;
        parent[static_cast<std::size_t>(find(merge.left))] = node;
        parent[static_cast<std::size_t>(find(merge.right))] = node;
    }

    // cluster ids by ascending smallest-member leaf id = first appearance
    ClusterAssignment assignment;
    assignment.n_clusters = n_clusters;
    assignment.doc_to_cluster.resize(static_cast<std::size_t>(n));
    std::vector<int> root_to_cluster(parent.size(), -1);
    int next = 0;
    for (int leaf = 0; leaf < n; ++leaf) {
        const int root = find(leaf);
        if (root_to_cluster[static_cast<std::size_t>(root)] < 0)
            root_to_cluster[static_cast<std::size_t>(root)] = next++;
        assignment.doc_to_cluster[static_cast<std::size_t>(leaf)] =
            root_to_cluster[static_cast<std::size_t>(root)];
    }
    return assignment;
}

std::vector<DocVector> cluster_centroids(const std::vector<DocVector>& vectors,
                                         const ClusterAssignment& assignment) {
    if (vectors.size() != assignment.doc_to_cluster.size())
        throw DataError("assignment does not cover the vector set");
    if (vectors.empty()) return {};
    const std::size_t dim = vectors.front().components.size();
    std::vector<DocVector> centroids(static_cast<std::size_t>(assignment.n_clusters));
    std::vector<int> sizes(static_cast<std::size_t>(assignment.n_clusters), 0);
    for (auto& c : centroids) c.components.assign(dim, 0.0);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        const auto cluster = static_cast<std::size_t>(assignment.doc_to_cluster[i]);
        ++sizes[cluster];
        for (std::size_t d = 0; d < dim; ++d)
            centroids[cluster].components[d] += vectors[i].components[d];
    }
    for (std::size_t c = 0; c < centroids.size(); ++c) {
        centroids[c].doc_id = static_cast<int>(c);
        for (double& v : centroids[c].components) v /= static_cast<double>(sizes[c]);
    }
    return centroids;
}

namespace {

double scaled_height(double height, HeightScale scale) {
    return scale == HeightScale::Ess ? height : std::sqrt(2.0 * height);
}

void append_newick(std::string& out, const Dendrogram& d, int node, double parent_height,
                   const std::vector<std::string>& labels, HeightScale scale) {
    const int n = d.n_leaves;
    if (node < n) {
        out += labels.empty() ? std::to_string(node) : labels[static_cast<std::size_t>(node)];
        out += ':';
        out += format_real(parent_height);
        return;
    }
    const Merge& merge = d.merges[static_cast<std::size_t>(node - n)];
    const double height = scaled_height(merge.height, scale);
    out += '(';
    append_newick(out, d, merge.left, height, labels, scale);
    out += ',';
    append_newick(out, d, merge.right, height, labels, scale);
    out += "):";
    out += format_real(parent_height - height);
}

}  // namespace

std::string to_newick(const Dendrogram& d, const std::vector<std::string>& labels,
                      HeightScale scale) {
    if (!labels.empty() && static_cast<int>(labels.size()) != d.n_leaves)
        throw std::invalid_argument("label count does not match leaf count");

    // roots = nodes that never appear as a merge operand
    const int total = d.n_leaves + static_cast<int>(d.merges.size());
    std::vector<bool> merged(static_cast<std::size_t>(total), false);
    for (const Merge& m : d.merges) {
        merged[static_cast<std::size_t>(m.left)] = true;
        merged[static_cast<std::size_t>(m.right)] = true;
    }
    // smallest leaf id under each node, for deterministic root order
    std::vector<int> min_leaf(static_cast<std::size_t>(total));
    for (int i = 0; i < d.n_leaves; ++i) min_leaf[static_cast<std::size_t>(i)] = i;
    for (std::size_t i = 0; i < d.merges.size(); ++i)
        min_leaf[static_cast<std::size_t>(d.n_leaves) + i] =
            std::min(min_leaf[static_cast<std::size_t>(d.merges[i].left)],
                     min_leaf[static_cast<std::size_t>(d.merges[i].right)]);

    std::vector<int> roots;
    for (int node = 0; node < total; ++node)
        if (!merged[static_cast<std::size_t>(node)]) roots.push_back(node);
    std::sort(roots.begin(), roots.end(), [&](int a, int b) {
        return min_leaf[static_cast<std::size_t>(a)] < min_leaf[static_cast<std::size_t>(b)];
    });

    std::string out;
    for (int root : roots) {
        if (root < d.n_leaves) {
            out += labels.empty() ? std::to_string(root) : labels[static_cast<std::size_t>(root)];
        } else {
            const Merge& merge = d.merges[static_cast<std::size_t>(root - d.n_leaves)];
            const double height = scaled_height(merge.height, scale);
            out += '(';
            append_newick(out, d, merge.left, height, labels, scale);
            out += ',';
            append_newick(out, d, merge.right, height, labels, scale);
            out += ')';
        }
        out += ";\n";
    }
    return out;
}

}  // namespace semfields
