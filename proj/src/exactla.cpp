#include "ringlab/exactla.hpp"

#include <array>
#include <memory>
#include <mutex>
#include <string>
#include <utility>

#include "ringlab/error.hpp"

namespace ringlab::la {

bool is_prime(std::uint32_t n) noexcept {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace {

// Inverse tables are built once per modulus and shared by every PrimeField handle.
const Residue* inverse_table(std::uint32_t p) {
    static std::array<std::unique_ptr<std::array<Residue, 256>>, PrimeField::max_modulus + 1> tables;
    static std::mutex guard;
    std::lock_guard lock(guard);
    auto& slot = tables[p];
    if (!slot) {
        slot = std::make_unique<std::array<Residue, 256>>();
        slot->fill(0);
        for (std::uint32_t a = 1; a < p; ++a) {
            // extended Euclid on (a, p)
            std::int64_t r0 = p, r1 = a, t0 = 0, t1 = 1;
            while (r1 != 0) {
                const std::int64_t q = r0 / r1;
                std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
                std::tie(t0, t1) = std::pair{t1, t0 - q * t1};
            }
            const auto m = static_cast<std::int64_t>(p);
            (*slot)[a] = static_cast<Residue>(((t0 % m) + m) % m);
        }
    }
    return slot->data();
}

}  // namespace

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
    if (p > max_modulus || !is_prime(p))
        throw Error(ErrorCode::NonPrimeModulus, "modulus " + std::to_string(p) + " is not a prime <= 251");
    inverses_ = inverse_table(p);
}

Residue PrimeField::inv(Residue a) const {
    if (a == 0) throw Error(ErrorCode::DimensionMismatch, "inverse of zero");
    return inverses_[a];
}

// ---------------------------------------------------------------- Mat

Mat::Mat(PrimeField field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Mat::Mat(PrimeField field, std::size_t rows, std::size_t cols, std::vector<Residue> entries)
    : field_(field), rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows * cols)
        throw Error(ErrorCode::DimensionMismatch, "entry count does not match shape");
    for (auto x : data_)
        if (x >= field_.modulus()) throw Error(ErrorCode::OutOfRange, "matrix entry not reduced");
}

Mat Mat::identity(PrimeField field, std::size_t n) {
    Mat m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Mat Mat::from_rows(PrimeField field, std::size_t cols, const std::vector<Vec>& rows) {
    Mat m(field, 0, cols);
    for (const auto& r : rows) m.append_row(r);
    return m;
}

std::vector<Vec> Mat::row_list() const {
    std::vector<Vec> out;
    out.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out.push_back(row_vec(r));
    return out;
}

void Mat::append_row(std::span<const Residue> values) {
    if (values.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "row length mismatch");
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
}

Mat Mat::transpose() const {
    Mat t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Mat Mat::row_block(std::size_t first, std::size_t count) const {
    if (first + count > rows_) throw Error(ErrorCode::DimensionMismatch, "row block out of range");
    Mat out(field_, count, cols_);
    std::copy(data_.begin() + static_cast<std::ptrdiff_t>(first * cols_),
              data_.begin() + static_cast<std::ptrdiff_t>((first + count) * cols_), out.data_.begin());
    return out;
}

bool Mat::is_zero() const noexcept {
    for (auto x : data_)
        if (x != 0) return false;
    return true;
}

Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols_ != b.rows_ || !(a.field_ == b.field_))
        throw Error(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
    const std::uint32_t p = a.field_.modulus();
    Mat out(a.field_, a.rows_, b.cols_);
    std::vector<std::uint64_t> acc(b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r) {
        std::fill(acc.begin(), acc.end(), 0);
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const std::uint32_t x = a(r, k);
            if (x == 0) continue;
            const auto brow = b.row(k);
            for (std::size_t c = 0; c < b.cols_; ++c) acc[c] += x * brow[c];
        }
        for (std::size_t c = 0; c < b.cols_; ++c) out(r, c) = static_cast<Residue>(acc[c] % p);
    }
    return out;
}

Mat operator+(const Mat& a, const Mat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorCode::DimensionMismatch, "matrix sum shape mismatch");
    Mat out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] = a.field_.add(a.data_[i], b.data_[i]);
    return out;
}

Mat operator-(const Mat& a, const Mat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorCode::DimensionMismatch, "matrix difference shape mismatch");
    Mat out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] = a.field_.sub(a.data_[i], b.data_[i]);
    return out;
}

Mat vstack(const std::vector<Mat>& blocks) {
    if (blocks.empty()) throw Error(ErrorCode::DimensionMismatch, "vstack of nothing");
    Mat out(blocks.front().field(), 0, blocks.front().cols());
    for (const auto& b : blocks)
        for (std::size_t r = 0; r < b.rows(); ++r) out.append_row(b.row(r));
    return out;
}

Vec vec_mat(const Vec& v, const Mat& m) {
    if (v.size() != m.rows()) throw Error(ErrorCode::DimensionMismatch, "vector-matrix shape mismatch");
    const std::uint32_t p = m.field().modulus();
    std::vector<std::uint64_t> acc(m.cols(), 0);
    for (std::size_t k = 0; k < v.size(); ++k) {
        const std::uint32_t x = v[k];
        if (x == 0) continue;
        const auto mrow = m.row(k);
        for (std::size_t c = 0; c < m.cols(); ++c) acc[c] += x * mrow[c];
    }
    Vec out(m.cols());
    for (std::size_t c = 0; c < out.size(); ++c) out[c] = static_cast<Residue>(acc[c] % p);
    return out;
}

Vec add(const PrimeField& f, const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "vector sum length mismatch");
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.add(a[i], b[i]);
    return out;
}

Vec sub(const PrimeField& f, const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "vector difference length mismatch");
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.sub(a[i], b[i]);
    return out;
}

Vec scale(const PrimeField& f, Residue s, const Vec& v) {
    Vec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = f.mul(s, v[i]);
    return out;
}

bool is_zero(const Vec& v) noexcept {
    for (auto x : v)
        if (x != 0) return false;
    return true;
}

// ---------------------------------------------------------------- elimination

namespace {

// In-place Gauss-Jordan; pivots chosen as the first nonzero entry in column order.
std::vector<std::size_t> eliminate(Mat& m, std::size_t col_limit) {
    const auto& f = m.field();
    std::vector<std::size_t> pivots;
    std::size_t prow = 0;
    for (std::size_t c = 0; c < col_limit && prow < m.rows(); ++c) {
        std::size_t sel = prow;
        while (sel < m.rows() && m(sel, c) == 0) ++sel;
        if (sel == m.rows()) continue;
        if (sel != prow)
            for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(sel, k), m(prow, k));
        const Residue s = f.inv(m(prow, c));
        if (s != 1)
            for (std::size_t k = c; k < m.cols(); ++k) m(prow, k) = f.mul(s, m(prow, k));
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == prow) continue;
            const Residue factor = m(r, c);
            if (factor == 0) continue;
            for (std::size_t k = c; k < m.cols(); ++k)
                m(r, k) = f.sub(m(r, k), f.mul(factor, m(prow, k)));
        }
        pivots.push_back(c);
        ++prow;
    }
    return pivots;
}

}  // namespace

RrefResult rref(const Mat& m) {
    Mat work = m;
    auto pivots = eliminate(work, work.cols());
    RrefResult out;
    out.rank = pivots.size();
    out.reduced = work.row_block(0, out.rank);
    out.pivots = std::move(pivots);
    return out;
}

std::size_t rank(const Mat& m) {
    Mat work = m;
    return eliminate(work, work.cols()).size();
}

std::optional<Mat> inverse(const Mat& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    const std::size_t n = m.rows();
    Mat aug(m.field(), n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
        aug(r, n + r) = 1;
    }
    auto pivots = eliminate(aug, n);
    if (pivots.size() != n) return std::nullopt;
    Mat inv(m.field(), n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) inv(r, c) = aug(r, n + c);
    return inv;
}

// ---------------------------------------------------------------- Subspace

Subspace::Subspace(PrimeField field, std::size_t ambient_dim)
    : ambient_dim_(ambient_dim), basis_(field, 0, ambient_dim) {}

Subspace Subspace::span(const Mat& rows) {
    Subspace s(rows.field(), rows.cols());
    auto r = rref(rows);
    s.basis_ = std::move(r.reduced);
    s.pivots_ = std::move(r.pivots);
    return s;
}

Subspace Subspace::span(PrimeField field, std::size_t ambient_dim, const std::vector<Vec>& rows) {
    return span(Mat::from_rows(field, ambient_dim, rows));
}

Subspace Subspace::whole(PrimeField field, std::size_t ambient_dim) {
    return span(Mat::identity(field, ambient_dim));
}

Vec Subspace::reduce(Vec v) const {
    if (v.size() != ambient_dim_) throw Error(ErrorCode::DimensionMismatch, "vector not in ambient space");
    const auto& f = field();
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
        const Residue factor = v[pivots_[i]];
        if (factor == 0) continue;
        const auto brow = basis_.row(i);
        for (std::size_t k = 0; k < ambient_dim_; ++k) v[k] = f.sub(v[k], f.mul(factor, brow[k]));
    }
    return v;
}

bool Subspace::contains(const Vec& v) const { return la::is_zero(reduce(v)); }

bool Subspace::contains(const Subspace& other) const {
    if (other.ambient_dim_ != ambient_dim_) throw Error(ErrorCode::DimensionMismatch, "ambient mismatch");
    for (std::size_t r = 0; r < other.basis_.rows(); ++r)
        if (!contains(other.basis_.row_vec(r))) return false;
    return true;
}

Vec Subspace::coordinates(const Vec& v) const {
    if (!contains(v)) throw Error(ErrorCode::PreconditionViolated, "vector outside subspace");
    Vec c(pivots_.size());
    for (std::size_t i = 0; i < pivots_.size(); ++i) c[i] = v[pivots_[i]];
    return c;
}

Vec Subspace::from_coordinates(const Vec& c) const { return vec_mat(c, basis_); }

Subspace Subspace::operator+(const Subspace& other) const {
    if (other.ambient_dim_ != ambient_dim_) throw Error(ErrorCode::DimensionMismatch, "ambient mismatch");
    return span(vstack({basis_, other.basis_}));
}

Subspace Subspace::intersect(const Subspace& other) const {
    if (other.ambient_dim_ != ambient_dim_) throw Error(ErrorCode::DimensionMismatch, "ambient mismatch");
    if (is_zero() || other.is_zero()) return Subspace(field(), ambient_dim_);
    // (c, d) with c*U + d*V = 0 gives c*U in U ∩ V, and every intersection vector arises this way.
    const Mat stacked = vstack({basis_, other.basis_});
    const Subspace relations = left_kernel(stacked);
    const Mat coeffs = relations.basis().transpose().row_block(0, dim()).transpose();
    return span(coeffs * basis_);
}

Subspace Subspace::image(const Mat& m) const { return span(basis_ * m); }

Subspace nullspace(const Mat& a) {
    Mat work = a;
    const auto pivots = eliminate(work, work.cols());
    const std::size_t n = a.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivots) is_pivot[c] = true;
    const auto& f = a.field();
    Mat basis(a.field(), 0, n);
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        Vec v(n, 0);
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = f.neg(work(i, free));
        basis.append_row(v);
    }
    return Subspace::span(basis);
}

Subspace left_kernel(const Mat& a) { return nullspace(a.transpose()); }

bool is_independent(const std::vector<Subspace>& parts) {
    if (parts.empty()) return true;
    std::size_t total = 0;
    Subspace sum(parts.front().field(), parts.front().ambient_dim());
    for (const auto& p : parts) {
        total += p.dim();
        sum = sum + p;
    }
    return sum.dim() == total;
}

bool is_internal_direct_sum(const std::vector<Subspace>& parts) {
    if (parts.empty()) return false;
    std::size_t total = 0;
    for (const auto& p : parts) total += p.dim();
    return total == parts.front().ambient_dim() && is_independent(parts);
}

bool AffineSolutionSet::contains(const Vec& x) const {
    return kernel.contains(sub(kernel.field(), x, particular));
}

std::optional<AffineSolutionSet> solve_affine(const Mat& a, const Vec& b) {
    if (a.rows() != b.size()) throw Error(ErrorCode::DimensionMismatch, "system rows differ from right-hand side length");
    const std::size_t n = a.cols();
    Mat aug(a.field(), a.rows(), n + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
        aug(r, n) = b[r];
    }
    const auto pivots = eliminate(aug, n);
    for (std::size_t r = pivots.size(); r < aug.rows(); ++r)
        if (aug(r, n) != 0) return std::nullopt;
    AffineSolutionSet out;
    out.particular.assign(n, 0);
    for (std::size_t i = 0; i < pivots.size(); ++i) out.particular[pivots[i]] = aug(i, n);

    const auto& f = a.field();
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivots) is_pivot[c] = true;
    Mat kernel(a.field(), 0, n);
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        Vec v(n, 0);
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = f.neg(aug(i, free));
        kernel.append_row(v);
    }
    out.kernel = Subspace::span(kernel);
    return out;
}

}  // namespace ringlab::la
