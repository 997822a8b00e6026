#include "semfields/svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "semfields/errors.hpp"

namespace semfields {

namespace {

double column_dot(const Matrix& m, int p, int q) {
    auto a = m.col(p);
    auto b = m.col(q);
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
    return sum;
}

void rotate_columns(Matrix& m, int p, int q, double c, double s) {
    auto a = m.col(p);
    auto b = m.col(q);
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double ap = a[i];
        const double aq = b[i];
        a[i] = c * ap - s * aq;
        b[i] = s * ap + c * aq;
    }
}

}  // namespace

SvdFactorization compute_svd(const Matrix& m, const SvdOptions& options) {
    const int n_rows = m.rows();
    const int n_cols = m.cols();
    if (n_cols < 1) throw std::invalid_argument("matrix must have at least one column");
    for (double v : m.data())
        if (!std::isfinite(v)) throw DataError("matrix contains a non-finite entry");

    // Work on A = m^T: one column per row of m. Orthogonalizing A's columns
    // with rotations R gives m^T R = W, so m = R Sigma Y^T with U = R,
    // sigma_i = |w_i| and y_i = w_i / sigma_i.
    Matrix a(n_cols, n_rows);
    for (int i = 0; i < n_rows; ++i)
        for (int j = 0; j < n_cols; ++j) a(j, i) = m(i, j);
    Matrix rotations = Matrix::identity(n_rows);

    bool converged = false;
    double worst_off_diagonal = 0.0;
    for (int sweep = 0; sweep < options.max_sweeps && !converged; ++sweep) {
        bool rotated = false;
        worst_off_diagonal = 0.0;
        for (int p = 0; p < n_rows - 1; ++p) {
            for (int q = p + 1; q < n_rows; ++q) {
                const double alpha = column_dot(a, p, p);
                const double beta = column_dot(a, q, q);
                const double gamma = column_dot(a, p, q);
                const double limit = options.off_diagonal_tol * std::sqrt(alpha * beta);
                if (std::abs(gamma) <= limit) continue;
                if (limit > 0.0)
                    worst_off_diagonal =
                        std::max(worst_off_diagonal, std::abs(gamma) / std::sqrt(alpha * beta));
                rotated = true;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::hypot(1.0, zeta));
                const double c = 1.0 / std::hypot(1.0, t);
                const double s = c * t;
                rotate_columns(a, p, q, c, s);
                rotate_columns(rotations, p, q, c, s);
            }
        }
        if (!rotated) converged = true;
    }
    if (!converged) throw NoConvergence(options.max_sweeps, worst_off_diagonal);

    std::vector<double> norms(static_cast<std::size_t>(n_rows));
    for (int i = 0; i < n_rows; ++i) norms[static_cast<std::size_t>(i)] = std::sqrt(column_dot(a, i, i));

    // Sign convention: the largest-magnitude entry of each u column is
    // positive (first such entry on magnitude ties). Flips carry to y.
    for (int i = 0; i < n_rows; ++i) {
        auto u_col = rotations.col(i);
        std::size_t arg = 0;
        for (std::size_t k = 1; k < u_col.size(); ++k)
            if (std::abs(u_col[k]) > std::abs(u_col[arg])) arg = k;
        if (u_col[arg] < 0.0) {
            for (double& v : u_col) v = -v;
            for (double& v : a.col(i)) v = -v;
        }
    }

    std::vector<int> order(static_cast<std::size_t>(n_rows));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
        const double si = norms[static_cast<std::size_t>(i)];
        const double sj = norms[static_cast<std::size_t>(j)];
        if (si != sj) return si > sj;
        // equal singular values: order by the first differing u entry, larger first
        auto ui = rotations.col(i);
        auto uj = rotations.col(j);
        for (std::size_t k = 0; k < ui.size(); ++k)
            if (ui[k] != uj[k]) return ui[k] > uj[k];
        return false;
    });

    const double sigma_max = norms.empty() ? 0.0 : norms[static_cast<std::size_t>(order[0])];
    int rank = 0;
    for (int i = 0; i < n_rows; ++i)
        if (norms[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] >
            options.rank_tol * sigma_max)
            ++rank;

    SvdFactorization f;
    f.rank = rank;
    f.u = Matrix(n_rows, rank);
    f.y = Matrix(n_cols, rank);
    f.sigma.resize(static_cast<std::size_t>(rank));
    for (int k = 0; k < rank; ++k) {
        const int src = order[static_cast<std::size_t>(k)];
        const double sigma = norms[static_cast<std::size_t>(src)];
        f.sigma[static_cast<std::size_t>(k)] = sigma;
        auto u_dst = f.u.col(k);
        auto u_src = rotations.col(src);
        std::copy(u_src.begin(), u_src.end(), u_dst.begin());
        auto y_dst = f.y.col(k);
        auto w_src = a.col(src);
        for (std::size_t i = 0; i < y_dst.size(); ++i) y_dst[i] = w_src[i] / sigma;
    }
    return f;
}

SvdFactorization compute_svd(const FieldMatrix& m, const SvdOptions& options) {
    return compute_svd(m.values, options);
}

TruncatedSvd truncate(const SvdFactorization& f, int k) {
    if (k < 1 || k > f.rank)
        throw std::out_of_range("truncation rank " + std::to_string(k) +
                                " out of range [1, " + std::to_string(f.rank) + "]");
    return {f, k};
}

Matrix reconstruct(const TruncatedSvd& t) {
    const int n_rows = t.base.u.rows();
    const int n_cols = t.base.y.rows();
    Matrix m(n_rows, n_cols);
    for (int k = 0; k < t.k; ++k) {
        const double sigma = t.base.sigma[static_cast<std::size_t>(k)];
        auto u = t.base.u.col(k);
        auto y = t.base.y.col(k);
        for (int j = 0; j < n_cols; ++j) {
            const double w = sigma * y[static_cast<std::size_t>(j)];
            for (int i = 0; i < n_rows; ++i) m(i, j) += u[static_cast<std::size_t>(i)] * w;
        }
    }
    return m;
}

std::vector<double> project_document(const TruncatedSvd& t, std::span<const double> v,
                                     ReducedCoords coords) {
    if (static_cast<int>(v.size()) != t.base.u.rows())
        throw std::invalid_argument("vector length " + std::to_string(v.size()) +
                                    " does not match field dimension " +
                                    std::to_string(t.base.u.rows()));
    std::vector<double> out(static_cast<std::size_t>(t.k));
    for (int k = 0; k < t.k; ++k) {
        auto u = t.base.u.col(k);
        double dot = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) dot += u[i] * v[i];
        if (coords == ReducedCoords::Whitened) dot /= t.base.sigma[static_cast<std::size_t>(k)];
        out[static_cast<std::size_t>(k)] = dot;
    }
    return out;
}

DocVector project_document(const TruncatedSvd& t, const DocVector& v, ReducedCoords coords) {
    return {v.doc_id, project_document(t, std::span<const double>(v.components), coords)};
}

Matrix project_corpus(const TruncatedSvd& t, const FieldMatrix& m, ReducedCoords coords) {
    if (m.n_fields != t.base.u.rows())
        throw std::invalid_argument("matrix field dimension does not match factorization");
    Matrix out(t.k, m.n_docs);
    for (int j = 0; j < m.n_docs; ++j) {
        const auto reduced = project_document(t, m.values.col(j), coords);
        auto dst = out.col(j);
        std::copy(reduced.begin(), reduced.end(), dst.begin());
    }
    return out;
}

std::vector<DocVector> project_corpus_vectors(const TruncatedSvd& t, const FieldMatrix& m,
                                              ReducedCoords coords) {
    std::vector<DocVector> out;
    out.reserve(static_cast<std::size_t>(m.n_docs));
    for (int j = 0; j < m.n_docs; ++j)
        out.push_back({m.doc_ids[static_cast<std::size_t>(j)],
                       project_document(t, m.values.col(j), coords)});
    return out;
}

}  // namespace semfields
