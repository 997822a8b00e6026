#include "semfields/figures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "semfields/errors.hpp"
#include "semfields/serialize.hpp"

namespace semfields {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

void svg_open(std::ostream& os, double width, double height) {
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\""
       << num(height) << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height) << "\">\n"
       << "<rect width=\"" << num(width) << "\" height=\"" << num(height)
       << "\" fill=\"white\"/>\n";
}

void svg_line(std::ostream& os, double x1, double y1, double x2, double y2,
              const char* cls = nullptr, const std::string& extra = {}) {
    os << "<line";
    if (cls) os << " class=\"" << cls << '"';
    os << " x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2) << "\" y2=\""
       << num(y2) << "\" stroke=\"black\"";
    if (!extra.empty()) os << ' ' << extra;
    os << "/>\n";
}

void svg_text(std::ostream& os, double x, double y, const std::string& text,
              const char* anchor = "middle", int size = 10) {
    os << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-size=\"" << size
       << "\" font-family=\"sans-serif\" text-anchor=\"" << anchor << "\">" << text
       << "</text>\n";
}

double display_height(double h, HeightScale scale) {
    return scale == HeightScale::Ess ? h : std::sqrt(2.0 * h);
}

// leaves in dendrogram traversal order (left subtree before right),
// forest roots ordered by smallest leaf id
std::vector<int> leaf_order(const Dendrogram& d) {
    const int total = d.n_leaves + static_cast<int>(d.merges.size());
    std::vector<bool> merged(static_cast<std::size_t>(total), false);
    for (const Merge& m : d.merges) {
        merged[static_cast<std::size_t>(m.left)] = true;
        merged[static_cast<std::size_t>(m.right)] = true;
    }
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

    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(d.n_leaves));
    // depth-first, left child first
    std::vector<int> work;
    for (int root : roots) {
        work.clear();
        work.push_back(root);
        while (!work.empty()) {
            const int node = work.back();
            work.pop_back();
            if (node < d.n_leaves) {
                order.push_back(node);
            } else {
                const Merge& m = d.merges[static_cast<std::size_t>(node - d.n_leaves)];
                work.push_back(m.right);
                work.push_back(m.left);
            }
        }
    }
    return order;
}

}  // namespace

void render_dendrogram_svg(std::ostream& os, const Dendrogram& d,
                           const ClusterAssignment* assignment, HeightScale scale) {
    const std::vector<int> order = leaf_order(d);
    const double step = 16.0;
    const double margin_left = 48.0, margin_right = 16.0;
    const double margin_top = 20.0, margin_bottom = 40.0;
    const double width = margin_left + step * std::max(1, d.n_leaves - 1) + margin_right + step;
    const double height = 360.0;
    const double baseline = height - margin_bottom;
    const double plot_h = baseline - margin_top;

    double max_h = 0.0;
    for (const Merge& m : d.merges) max_h = std::max(max_h, display_height(m.height, scale));
    const double y_scale = max_h > 0.0 ? plot_h / max_h : 0.0;
    auto y_of = [&](double h) { return baseline - h * y_scale; };

    std::vector<double> x(static_cast<std::size_t>(d.n_leaves + d.merges.size()), 0.0);
    std::vector<double> node_h(x.size(), 0.0);
    for (std::size_t pos = 0; pos < order.size(); ++pos)
        x[static_cast<std::size_t>(order[pos])] = margin_left + step * static_cast<double>(pos) + step / 2.0;

    svg_open(os, width, height);
    svg_line(os, margin_left, margin_top, margin_left, baseline);       // ordinate
    svg_line(os, margin_left, baseline, width - margin_right, baseline);  // abscissa
    for (int tick = 0; tick <= 4; ++tick) {
        const double h = max_h * tick / 4.0;
        svg_text(os, margin_left - 4, y_of(h) + 3, format_real(h).substr(0, 8), "end", 9);
        svg_line(os, margin_left - 3, y_of(h), margin_left, y_of(h));
    }

    for (std::size_t i = 0; i < d.merges.size(); ++i) {
        const Merge& m = d.merges[i];
        const double h = display_height(m.height, scale);
        const double y = y_of(h);
        const double xl = x[static_cast<std::size_t>(m.left)];
        const double xr = x[static_cast<std::size_t>(m.right)];
        svg_line(os, xl, y_of(node_h[static_cast<std::size_t>(m.left)]), xl, y);
        svg_line(os, xr, y_of(node_h[static_cast<std::size_t>(m.right)]), xr, y);
        svg_line(os, xl, y, xr, y, "merge",
                 "data-height=\"" + format_real(h) + "\"");
        const std::size_t node = static_cast<std::size_t>(d.n_leaves) + i;
        x[node] = (xl + xr) / 2.0;
        node_h[node] = h;
    }

    // abscissa labels: cluster numbers when an assignment is given
    // (cut groups are contiguous in traversal order), else leaf ids
    if (assignment != nullptr &&
        assignment->doc_to_cluster.size() == static_cast<std::size_t>(d.n_leaves)) {
        std::size_t start = 0;
        while (start < order.size()) {
            const int cluster =
                assignment->doc_to_cluster[static_cast<std::size_t>(order[start])];
            std::size_t end = start;
            while (end + 1 < order.size() &&
                   assignment->doc_to_cluster[static_cast<std::size_t>(order[end + 1])] == cluster)
                ++end;
            const double cx = (x[static_cast<std::size_t>(order[start])] +
                               x[static_cast<std::size_t>(order[end])]) /
                              2.0;
            svg_text(os, cx, baseline + 14, std::to_string(cluster));
            start = end + 1;
        }
        svg_text(os, width / 2.0, height - 8, "cluster", "middle", 10);
    } else {
        const int label_stride = d.n_leaves > 40 ? (d.n_leaves + 39) / 40 : 1;
        for (std::size_t pos = 0; pos < order.size(); ++pos)
            if (pos % static_cast<std::size_t>(label_stride) == 0)
                svg_text(os, x[static_cast<std::size_t>(order[pos])], baseline + 14,
                         std::to_string(order[pos]), "middle", 8);
        svg_text(os, width / 2.0, height - 8, "document", "middle", 10);
    }
    os << "</svg>\n";
}

void render_author_histograms_svg(std::ostream& os, const AuthorDistribution& dist) {
    std::vector<std::string> authors;
    for (const auto& [author, total] : dist.totals) authors.push_back(author);
    const int n_clusters = static_cast<int>(dist.per_cluster.size());
    const int n_authors = static_cast<int>(authors.size());

    const double panel_w = std::max(160.0, 24.0 + 12.0 * n_authors);
    const double panel_h = 140.0;
    const double gap = 16.0;
    const int cols = std::min(4, std::max(1, n_clusters));
    const int rows = (n_clusters + cols - 1) / cols;
    const double legend_h = 16.0 * n_authors + 24.0;
    const double width = gap + cols * (panel_w + gap);
    const double height = gap + rows * (panel_h + gap) + legend_h;

    svg_open(os, width, height);
    for (int c = 0; c < n_clusters; ++c) {
        const double ox = gap + (c % cols) * (panel_w + gap);
        const double oy = gap + (c / cols) * (panel_h + gap);
        const auto& counts = dist.per_cluster[static_cast<std::size_t>(c)];
        int cluster_size = 0, max_count = 0;
        for (const auto& [author, count] : counts) {
            cluster_size += count;
            max_count = std::max(max_count, count);
        }
        os << "<rect x=\"" << num(ox) << "\" y=\"" << num(oy) << "\" width=\"" << num(panel_w)
           << "\" height=\"" << num(panel_h) << "\" fill=\"none\" stroke=\"gray\"/>\n";
        svg_text(os, ox + panel_w / 2.0, oy + 12,
                 "cluster " + std::to_string(c) + " (n=" + std::to_string(cluster_size) + ")");
        const double base = oy + panel_h - 18.0;
        const double bar_w = (panel_w - 16.0) / std::max(1, n_authors);
        const double bar_scale = max_count > 0 ? (panel_h - 46.0) / max_count : 0.0;
        for (int a = 0; a < n_authors; ++a) {
            const auto it = counts.find(authors[static_cast<std::size_t>(a)]);
            const int count = it == counts.end() ? 0 : it->second;
            const double bx = ox + 8.0 + a * bar_w;
            const double bh = count * bar_scale;
            if (count > 0) {
                os << "<rect class=\"bar\" x=\"" << num(bx + 1) << "\" y=\"" << num(base - bh)
                   << "\" width=\"" << num(bar_w - 2) << "\" height=\"" << num(bh)
                   << "\" fill=\"steelblue\" data-count=\"" << count << "\" data-share=\""
                   << format_real(static_cast<double>(count) / cluster_size) << "\"/>\n";
                svg_text(os, bx + bar_w / 2.0, base - bh - 2, std::to_string(count), "middle", 8);
            }
            svg_text(os, bx + bar_w / 2.0, base + 10, std::to_string(a), "middle", 8);
        }
    }
    const double ly = gap + rows * (panel_h + gap) + 12.0;
    svg_text(os, gap, ly, "authors:", "start");
    for (int a = 0; a < n_authors; ++a)
        svg_text(os, gap, ly + 16.0 * (a + 1),
                 std::to_string(a) + ": " + authors[static_cast<std::size_t>(a)] + " (" +
                     std::to_string(dist.totals.at(authors[static_cast<std::size_t>(a)])) +
                     " docs)",
                 "start", 9);
    os << "</svg>\n";
}

void render_scree_svg(std::ostream& os, const std::vector<double>& sigma) {
    const std::size_t n = std::min<std::size_t>(sigma.size(), 10);
    const double width = 420.0, height = 300.0;
    const double ml = 56.0, mr = 16.0, mt = 16.0, mb = 36.0;
    const double plot_w = width - ml - mr;
    const double plot_h = height - mt - mb;
    double max_s = 0.0;
    for (std::size_t i = 0; i < n; ++i) max_s = std::max(max_s, sigma[i]);
    if (max_s <= 0.0) max_s = 1.0;
    auto px = [&](std::size_t i) {
        return n > 1 ? ml + plot_w * static_cast<double>(i) / static_cast<double>(n - 1)
                     : ml + plot_w / 2.0;
    };
    auto py = [&](double s) { return mt + plot_h * (1.0 - s / max_s); };

    svg_open(os, width, height);
    svg_line(os, ml, mt, ml, height - mb);
    svg_line(os, ml, height - mb, width - mr, height - mb);
    os << "<polyline fill=\"none\" stroke=\"black\" points=\"";
    for (std::size_t i = 0; i < n; ++i) {
        if (i) os << ' ';
        os << num(px(i)) << ',' << num(py(sigma[i]));
    }
    os << "\"/>\n";
    for (std::size_t i = 0; i < n; ++i) {
        os << "<circle class=\"sv\" cx=\"" << num(px(i)) << "\" cy=\"" << num(py(sigma[i]))
           << "\" r=\"3\" data-sigma=\"" << format_real(sigma[i]) << "\"/>\n";
        svg_text(os, px(i), height - mb + 14, std::to_string(i + 1), "middle", 9);
    }
    svg_text(os, ml - 4, py(max_s) + 3, format_real(max_s).substr(0, 8), "end", 9);
    svg_text(os, ml - 4, py(0.0) + 3, "0", "end", 9);
    svg_text(os, width / 2.0, height - 6, "singular value index", "middle", 10);
    os << "</svg>\n";
}

void write_scree_csv(std::ostream& os, const std::vector<double>& sigma) {
    os << "index,sigma\n";
    const std::size_t n = std::min<std::size_t>(sigma.size(), 10);
    for (std::size_t i = 0; i < n; ++i) os << (i + 1) << ',' << format_real(sigma[i]) << '\n';
}

void render_figures(const Dendrogram& d, const ClusterAssignment& assignment,
                    const AuthorDistribution& dist, const std::vector<double>& sigma,
                    const std::filesystem::path& out_dir, HeightScale scale) {
    std::filesystem::create_directories(out_dir);
    {
        std::ostringstream buf;
        render_dendrogram_svg(buf, d, &assignment, scale);
        save_text_file(out_dir / "dendrogram.svg", buf.str());
    }
    {
        std::ostringstream buf;
        render_author_histograms_svg(buf, dist);
        save_text_file(out_dir / "authors.svg", buf.str());
    }
    if (!sigma.empty()) {
        std::ostringstream buf;
        write_scree_csv(buf, sigma);
        save_text_file(out_dir / "scree.csv", buf.str());
        std::ostringstream buf2;
        render_scree_svg(buf2, sigma);
        save_text_file(out_dir / "scree.svg", buf2.str());
    }
}

}  // namespace semfields
