#pragma once

// Linear systems whose unknown is a matrix X (rows x cols), vectorized row-major.
// Used for hom spaces, retractions and sections.

#include <cstddef>
#include <optional>
#include <vector>

#include "ringlab/exactla.hpp"

namespace ringlab::detail {

class MatrixSystem {
public:
    MatrixSystem(la::PrimeField field, std::size_t rows, std::size_t cols);

    // A X = X B
    void add_intertwining(const la::Mat& a, const la::Mat& b);
    // v X M = w, with M the identity when m is null.
    void add_row_value(const la::Vec& v, const la::Vec& w, const la::Mat* m = nullptr);

    // Basis of the homogeneous solution space.
    std::vector<la::Mat> kernel_basis() const;
    // Particular solution with every free variable zero.
    std::optional<la::Mat> first_solution() const;

private:
    la::Mat reshape(const la::Vec& x) const;

    la::PrimeField field_;
    std::size_t rows_;
    std::size_t cols_;
    la::Mat coeffs_;
    la::Vec rhs_;
};

}  // namespace ringlab::detail
