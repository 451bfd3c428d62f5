#pragma once

// Exact dense linear algebra over a small prime field F_p.
//
// Conventions used across ringlab: vectors are rows, a matrix M represents the
// linear map v -> v * M, and a subspace is stored by its reduced row-echelon
// basis so that two subspaces are equal iff their stored bases are equal.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace ringlab::la {

using Residue = std::uint8_t;
using Vec = std::vector<Residue>;

class PrimeField {
public:
    static constexpr std::uint32_t max_modulus = 251;

    explicit PrimeField(std::uint32_t p = 2);

    std::uint32_t modulus() const noexcept { return p_; }

    Residue add(Residue a, Residue b) const noexcept {
        const std::uint32_t s = std::uint32_t{a} + b;
        return static_cast<Residue>(s >= p_ ? s - p_ : s);
    }
    Residue sub(Residue a, Residue b) const noexcept {
        return static_cast<Residue>(a >= b ? a - b : a + p_ - b);
    }
    Residue neg(Residue a) const noexcept { return static_cast<Residue>(a == 0 ? 0 : p_ - a); }
    Residue mul(Residue a, Residue b) const noexcept {
        return static_cast<Residue>((std::uint32_t{a} * b) % p_);
    }
    // Throws on zero.
    Residue inv(Residue a) const;
    Residue reduce(std::int64_t x) const noexcept {
        const auto m = static_cast<std::int64_t>(p_);
        return static_cast<Residue>(((x % m) + m) % m);
    }

    bool operator==(const PrimeField& other) const noexcept { return p_ == other.p_; }

private:
    std::uint32_t p_;
    const Residue* inverses_;
};

bool is_prime(std::uint32_t n) noexcept;

class Mat {
public:
    Mat() = default;
    Mat(PrimeField field, std::size_t rows, std::size_t cols);
    // Entries in row-major order; each must already be a residue in [0, p).
    Mat(PrimeField field, std::size_t rows, std::size_t cols, std::vector<Residue> entries);

    static Mat identity(PrimeField field, std::size_t n);
    static Mat from_rows(PrimeField field, std::size_t cols, const std::vector<Vec>& rows);

    const PrimeField& field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    Residue operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
    Residue& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }

    std::span<const Residue> row(std::size_t r) const noexcept {
        return {data_.data() + r * cols_, cols_};
    }
    std::span<Residue> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
    Vec row_vec(std::size_t r) const { return Vec(row(r).begin(), row(r).end()); }
    std::vector<Vec> row_list() const;
    const std::vector<Residue>& entries() const noexcept { return data_; }

    void append_row(std::span<const Residue> values);
    Mat transpose() const;
    // Rows [first, first + count).
    Mat row_block(std::size_t first, std::size_t count) const;
    bool is_zero() const noexcept;

    friend Mat operator*(const Mat& a, const Mat& b);
    friend Mat operator+(const Mat& a, const Mat& b);
    friend Mat operator-(const Mat& a, const Mat& b);
    friend bool operator==(const Mat& a, const Mat& b) noexcept {
        return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    PrimeField field_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Residue> data_;
};

// Stacks matrices with equal column counts on top of each other.
Mat vstack(const std::vector<Mat>& blocks);

Vec vec_mat(const Vec& v, const Mat& m);
Vec add(const PrimeField& f, const Vec& a, const Vec& b);
Vec sub(const PrimeField& f, const Vec& a, const Vec& b);
Vec scale(const PrimeField& f, Residue s, const Vec& v);
bool is_zero(const Vec& v) noexcept;

struct RrefResult {
    Mat reduced;  // rank rows, no zero rows
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
};

RrefResult rref(const Mat& m);
std::size_t rank(const Mat& m);
std::optional<Mat> inverse(const Mat& m);

class Subspace {
public:
    Subspace() = default;
    Subspace(PrimeField field, std::size_t ambient_dim);  // zero subspace

    static Subspace span(const Mat& rows);
    static Subspace span(PrimeField field, std::size_t ambient_dim, const std::vector<Vec>& rows);
    static Subspace whole(PrimeField field, std::size_t ambient_dim);

    const PrimeField& field() const noexcept { return basis_.field(); }
    std::size_t ambient_dim() const noexcept { return ambient_dim_; }
    std::size_t dim() const noexcept { return pivots_.size(); }
    bool is_zero() const noexcept { return pivots_.empty(); }
    bool is_whole() const noexcept { return pivots_.size() == ambient_dim_; }
    const Mat& basis() const noexcept { return basis_; }
    const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

    // v minus the unique combination of basis rows clearing every pivot column.
    Vec reduce(Vec v) const;
    bool contains(const Vec& v) const;
    bool contains(const Subspace& other) const;
    // Coordinates with respect to the stored basis; v must lie in the subspace.
    Vec coordinates(const Vec& v) const;
    Vec from_coordinates(const Vec& c) const;

    Subspace operator+(const Subspace& other) const;
    Subspace intersect(const Subspace& other) const;
    // Image of the subspace under v -> v * m.
    Subspace image(const Mat& m) const;

    friend bool operator==(const Subspace& a, const Subspace& b) noexcept {
        return a.ambient_dim_ == b.ambient_dim_ && a.basis_ == b.basis_;
    }

private:
    std::size_t ambient_dim_ = 0;
    Mat basis_;
    std::vector<std::size_t> pivots_;
};

// {x : A x = 0}, x a column vector.
Subspace nullspace(const Mat& a);
// {y : y A = 0}.
Subspace left_kernel(const Mat& a);

// True iff the parts intersect trivially pairwise-cumulatively and sum to the ambient space.
bool is_internal_direct_sum(const std::vector<Subspace>& parts);
// Dimension-additive check without the spanning requirement.
bool is_independent(const std::vector<Subspace>& parts);

struct AffineSolutionSet {
    Vec particular;
    Subspace kernel;

    bool contains(const Vec& x) const;
    std::size_t free_dim() const noexcept { return kernel.dim(); }
};

// Solutions of A x = b; the particular solution sets every free variable to zero.
std::optional<AffineSolutionSet> solve_affine(const Mat& a, const Vec& b);

}  // namespace ringlab::la
