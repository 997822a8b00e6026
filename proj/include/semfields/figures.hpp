#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "semfields/cluster.hpp"
#include "semfields/report.hpp"

namespace semfields {

// Hand-rolled SVG output: lines, rects, text. Deterministic byte-for-byte.

// Dendrogram with merge heights on the ordinate; every horizontal merge bar
// carries class="merge" and a data-height attribute. Cluster numbers label
// the abscissa groups when an assignment is given.
void render_dendrogram_svg(std::ostream& os, const Dendrogram& d,
                           const ClusterAssignment* assignment = nullptr,
                           HeightScale scale = HeightScale::Ess);

// One bar panel per cluster; author index on the abscissa, document counts
// as bar heights, shares in the labels.
void render_author_histograms_svg(std::ostream& os, const AuthorDistribution& dist);

// Polyline of the first min(10, size) singular values.
void render_scree_svg(std::ostream& os, const std::vector<double>& sigma);

// CSV `index,sigma` for the first min(10, size) singular values.
void write_scree_csv(std::ostream& os, const std::vector<double>& sigma);

// Writes dendrogram.svg and authors.svg into out_dir; scree.csv and
// scree.svg too when sigma is non-empty.
void render_figures(const Dendrogram& d, const ClusterAssignment& assignment,
                    const AuthorDistribution& dist, const std::vector<double>& sigma,
                    const std::filesystem::path& out_dir,
                    HeightScale scale = HeightScale::Ess);

}  // namespace semfields
