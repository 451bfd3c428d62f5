#include "ringlab/linear_system.hpp"

#include "ringlab/error.hpp"

namespace ringlab::detail {

MatrixSystem::MatrixSystem(la::PrimeField field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), coeffs_(field, 0, rows * cols) {}

void MatrixSystem::add_intertwining(const la::Mat& a, const la::Mat& b) {
    if (a.rows() != rows_ || a.cols() != rows_ || b.rows() != cols_ || b.cols() != cols_)
        throw Error(ErrorCode::DimensionMismatch, "intertwining constraint shape mismatch");
    const auto& f = field_;
    la::Vec eq(rows_ * cols_);
    // (A X - X B)[s][t] = sum_u A[s][u] X[u][t] - sum_u X[s][u] B[u][t]
    for (std::size_t s = 0; s < rows_; ++s)
        for (std::size_t t = 0; t < cols_; ++t) {
            std::fill(eq.begin(), eq.end(), 0);
            for (std::size_t u = 0; u < rows_; ++u) eq[u * cols_ + t] = f.add(eq[u * cols_ + t], a(s, u));
            for (std::size_t u = 0; u < cols_; ++u) eq[s * cols_ + u] = f.sub(eq[s * cols_ + u], b(u, t));
            if (la::is_zero(eq)) continue;
            coeffs_.append_row(eq);
            rhs_.push_back(0);
        }
}

void MatrixSystem::add_row_value(const la::Vec& v, const la::Vec& w, const la::Mat* m) {
    if (v.size() != rows_) throw Error(ErrorCode::DimensionMismatch, "row-value constraint length mismatch");
    const std::size_t out_cols = m ? m->cols() : cols_;
    if (w.size() != out_cols || (m && m->rows() != cols_))
        throw Error(ErrorCode::DimensionMismatch, "row-value constraint target mismatch");
    const auto& f = field_;
    la::Vec eq(rows_ * cols_);
    // (v X M)[s] = sum_{u,t} v[u] X[u][t] M[t][s]
    for (std::size_t s = 0; s < out_cols; ++s) {
        std::fill(eq.begin(), eq.end(), 0);
        for (std::size_t u = 0; u < rows_; ++u) {
            if (v[u] == 0) continue;
            for (std::size_t t = 0; t < cols_; ++t) {
                const la::Residue mts = m ? (*m)(t, s) : static_cast<la::Residue>(t == s ? 1 : 0);
                eq[u * cols_ + t] = f.add(eq[u * cols_ + t], f.mul(v[u], mts));
            }
        }
        coeffs_.append_row(eq);
        rhs_.push_back(w[s]);
    }
}

la::Mat MatrixSystem::reshape(const la::Vec& x) const { return la::Mat(field_, rows_, cols_, x); }

std::vector<la::Mat> MatrixSystem::kernel_basis() const {
    std::vector<la::Mat> out;
    if (rows_ * cols_ == 0) return out;
    const auto kernel = la::nullspace(coeffs_);
    for (std::size_t r = 0; r < kernel.dim(); ++r) out.push_back(reshape(kernel.basis().row_vec(r)));
    return out;
}

std::optional<la::Mat> MatrixSystem::first_solution() const {
    auto sol = la::solve_affine(coeffs_, rhs_);
    if (!sol) return std::nullopt;
    return reshape(sol->particular);
}

}  // namespace ringlab::detail
