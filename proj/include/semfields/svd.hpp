#pragma once

#include <span>
#include <vector>

#include "semfields/field_matrix.hpp"
#include "semfields/matrix.hpp"

namespace semfields {

// M = U diag(sigma) Y^T restricted to the numerical rank r:
// u is n_rows x r and y is n_cols x r, both with orthonormal columns;
// sigma is strictly positive and nonincreasing.
struct SvdFactorization {
    Matrix u;
    std::vector<double> sigma;
    Matrix y;
    int rank = 0;

    bool operator==(const SvdFactorization&) const = default;
};

struct SvdOptions {
    int max_sweeps = 60;
    double off_diagonal_tol = 1e-14;  // relative, |a_p . a_q| <= tol * |a_p||a_q|
    double rank_tol = 1e-12;          // keep sigma > rank_tol * sigma[0]
};

// One-sided Jacobi on the row side of m (rotations orthogonalize the rows,
// i.e. the 41 field directions of a field matrix). Deterministic: fixed
// cyclic sweep order, sign convention = largest-magnitude u entry positive,
// equal sigmas ordered by first differing u entry (larger first).
// Throws NoConvergence if the sweep cap is reached.
SvdFactorization compute_svd(const Matrix& m, const SvdOptions& options = {});
SvdFactorization compute_svd(const FieldMatrix& m, const SvdOptions& options = {});

// First k singular triplets of a factorization, 1 <= k <= rank.
struct TruncatedSvd {
    SvdFactorization base;
    int k = 0;
};

// Throws std::out_of_range when k is not in 1..f.rank.
TruncatedSvd truncate(const SvdFactorization& f, int k);

// (U)_K (Sigma)_K (Y)_K^T as a dense matrix.
Matrix reconstruct(const TruncatedSvd& t);

enum class ReducedCoords {
    Whitened,  // sigma^-1 U^T v
    Scaled,    // U^T v (rows of Y scaled by sigma)
};

// Document coordinates in the K-dimensional orthogonal semantic space.
std::vector<double> project_document(const TruncatedSvd& t, std::span<const double> v,
                                     ReducedCoords coords = ReducedCoords::Whitened);
DocVector project_document(const TruncatedSvd& t, const DocVector& v,
                           ReducedCoords coords = ReducedCoords::Whitened);

// Column j = project_document of column j; result is k x n_docs.
Matrix project_corpus(const TruncatedSvd& t, const FieldMatrix& m,
                      ReducedCoords coords = ReducedCoords::Whitened);

// Reduced vectors with the matrix's doc ids attached.
std::vector<DocVector> project_corpus_vectors(const TruncatedSvd& t, const FieldMatrix& m,
                                              ReducedCoords coords = ReducedCoords::Whitened);

}  // namespace semfields
