#include "ringlab/algebra.hpp"

#include <cstdio>
#include <limits>
#include <sstream>
#include <utility>

#include "ringlab/error.hpp"

namespace ringlab {

namespace {

struct Term {
    std::uint32_t i, j, k;
    Residue c;
};

}  // namespace

struct FiniteAlgebra::Impl {
    la::PrimeField field;
    std::size_t dim = 0;
    std::vector<Residue> mul;
    Vec one;
    std::vector<std::string> labels;
    std::string preset;
    std::map<std::string, Vec> named;
    std::vector<Term> terms;
    std::vector<la::Mat> right_actions;
    std::vector<std::size_t> generators;
    std::string fingerprint;

    Vec multiply(const Vec& x, const Vec& y) const {
        std::vector<std::uint64_t> acc(dim, 0);
        for (const auto& t : terms) {
            const std::uint64_t xy = std::uint64_t{x[t.i]} * y[t.j];
            if (xy != 0) acc[t.k] += xy * t.c;
        }
        Vec out(dim);
        const std::uint32_t p = field.modulus();
        for (std::size_t k = 0; k < dim; ++k) out[k] = static_cast<Residue>(acc[k] % p);
        return out;
    }

    Vec basis_vec(std::size_t i) const {
        Vec v(dim, 0);
        v[i] = 1;
        return v;
    }
};

namespace {

std::string fnv1a(const FiniteAlgebra::Impl& impl);

la::Subspace generated_subalgebra(const FiniteAlgebra::Impl& impl, const std::vector<Vec>& gens) {
    std::vector<Vec> seed = gens;
    seed.push_back(impl.one);
    auto span = la::Subspace::span(impl.field, impl.dim, seed);
    while (true) {
        std::vector<Vec> rows = span.basis().row_list();
        const std::size_t n = rows.size();
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) rows.push_back(impl.multiply(rows[a], rows[b]));
        auto next = la::Subspace::span(impl.field, impl.dim, rows);
        if (next.dim() == span.dim()) return next;
        span = std::move(next);
    }
}

}  // namespace

FiniteAlgebra FiniteAlgebra::build(const AlgebraTable& table) {
    auto impl = std::make_shared<Impl>();
    impl->field = la::PrimeField(table.p);
    const std::size_t d = table.dim;
    impl->dim = d;
    if (table.mul.size() != d * d * d)
        throw Error(ErrorCode::DimensionMismatch, "structure table needs dim^3 = " + std::to_string(d * d * d) + " entries");
    if (table.one.size() != d) throw Error(ErrorCode::DimensionMismatch, "identity needs dim coordinates");
    if (!table.labels.empty() && table.labels.size() != d)
        throw Error(ErrorCode::DimensionMismatch, "label count differs from dim");

    const auto& f = impl->field;
    impl->mul.resize(table.mul.size());
    for (std::size_t x = 0; x < table.mul.size(); ++x) impl->mul[x] = f.reduce(table.mul[x]);
    impl->one.resize(d);
    for (std::size_t x = 0; x < d; ++x) impl->one[x] = f.reduce(table.one[x]);
    impl->labels = table.labels;
    if (impl->labels.empty())
        for (std::size_t i = 0; i < d; ++i) impl->labels.push_back("b" + std::to_string(i));
    impl->preset = table.preset;
    for (const auto& [name, coords] : table.named) {
        if (coords.size() != d) throw Error(ErrorCode::DimensionMismatch, "named element " + name + " has wrong length");
        Vec v(d);
        for (std::size_t x = 0; x < d; ++x) v[x] = f.reduce(coords[x]);
        impl->named.emplace(name, std::move(v));
    }

    for (std::uint32_t i = 0; i < d; ++i)
        for (std::uint32_t j = 0; j < d; ++j)
            for (std::uint32_t k = 0; k < d; ++k)
                if (auto c = impl->mul[(i * d + j) * d + k]; c != 0) impl->terms.push_back({i, j, k, c});

    // associativity on basis triples
    for (std::size_t i = 0; i < d; ++i) {
        const Vec bi = impl->basis_vec(i);
        for (std::size_t j = 0; j < d; ++j) {
            const Vec bij = impl->multiply(bi, impl->basis_vec(j));
            for (std::size_t k = 0; k < d; ++k) {
                const Vec bk = impl->basis_vec(k);
                const Vec left = impl->multiply(bij, bk);
                const Vec right = impl->multiply(bi, impl->multiply(impl->basis_vec(j), bk));
                if (left != right) {
                    std::ostringstream msg;
                    msg << "(b" << i << "*b" << j << ")*b" << k << " != b" << i << "*(b" << j << "*b" << k << ")";
                    throw Error(ErrorCode::AssociativityViolation, msg.str());
                }
            }
        }
    }
    for (std::size_t i = 0; i < d; ++i) {
        const Vec bi = impl->basis_vec(i);
        if (impl->multiply(impl->one, bi) != bi || impl->multiply(bi, impl->one) != bi)
            throw Error(ErrorCode::UnitViolation, "identity fails on basis element " + std::to_string(i));
    }

    impl->right_actions.reserve(d);
    for (std::size_t i = 0; i < d; ++i) {
        la::Mat act(f, d, d);
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k) act(j, k) = impl->mul[(j * d + i) * d + k];
        impl->right_actions.push_back(std::move(act));
    }

    std::vector<Vec> gens;
    auto generated = generated_subalgebra(*impl, gens);
    for (std::size_t i = 0; i < d && !generated.is_whole(); ++i) {
        if (generated.contains(impl->basis_vec(i))) continue;
        impl->generators.push_back(i);
        gens.push_back(impl->basis_vec(i));
        generated = generated_subalgebra(*impl, gens);
    }

    impl->fingerprint = fnv1a(*impl);
    FiniteAlgebra out;
    out.impl_ = std::move(impl);
    return out;
}

namespace {

std::string fnv1a(const FiniteAlgebra::Impl& impl) {
    std::uint64_t h = 1469598103934665603ULL;
    auto feed = [&h](std::uint64_t x) {
        for (int b = 0; b < 8; ++b) {
            h ^= (x >> (8 * b)) & 0xffU;
            h *= 1099511628211ULL;
        }
    };
    feed(impl.field.modulus());
    feed(impl.dim);
    for (auto c : impl.mul) feed(c);
    for (auto c : impl.one) feed(c);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string("fnv1a64:") + buf;
}

}  // namespace

const la::PrimeField& FiniteAlgebra::field() const noexcept { return impl_->field; }
std::size_t FiniteAlgebra::dim() const noexcept { return impl_->dim; }
Residue FiniteAlgebra::structure(std::size_t i, std::size_t j, std::size_t k) const noexcept {
    return impl_->mul[(i * impl_->dim + j) * impl_->dim + k];
}
const std::vector<std::string>& FiniteAlgebra::labels() const noexcept { return impl_->labels; }
const std::string& FiniteAlgebra::preset() const noexcept { return impl_->preset; }

std::optional<Element> FiniteAlgebra::named(std::string_view name) const {
    auto it = impl_->named.find(std::string(name));
    if (it == impl_->named.end()) return std::nullopt;
    return Element(*this, it->second);
}

AlgebraTable FiniteAlgebra::table() const {
    AlgebraTable t;
    t.p = impl_->field.modulus();
    t.dim = impl_->dim;
    t.mul.assign(impl_->mul.begin(), impl_->mul.end());
    t.one.assign(impl_->one.begin(), impl_->one.end());
    t.labels = impl_->labels;
    t.preset = impl_->preset;
    for (const auto& [name, v] : impl_->named) t.named.emplace(name, std::vector<std::int64_t>(v.begin(), v.end()));
    return t;
}

Element FiniteAlgebra::zero() const { return Element(*this, Vec(impl_->dim, 0)); }
Element FiniteAlgebra::one() const { return Element(*this, impl_->one); }
Element FiniteAlgebra::basis(std::size_t i) const {
    if (i >= impl_->dim) throw Error(ErrorCode::OutOfRange, "basis index out of range");
    return Element(*this, impl_->basis_vec(i));
}
Element FiniteAlgebra::element(Vec coords) const { return Element(*this, std::move(coords)); }

Vec FiniteAlgebra::multiply(const Vec& x, const Vec& y) const { return impl_->multiply(x, y); }

la::Mat FiniteAlgebra::left_mult(const Vec& a) const {
    const std::size_t d = impl_->dim;
    la::Mat m(impl_->field, d, d);
    std::vector<std::uint64_t> acc(d * d, 0);
    for (const auto& t : impl_->terms)
        if (a[t.i] != 0) acc[t.j * d + t.k] += std::uint64_t{a[t.i]} * t.c;
    const std::uint32_t p = impl_->field.modulus();
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k) m(j, k) = static_cast<Residue>(acc[j * d + k] % p);
    return m;
}

la::Mat FiniteAlgebra::right_mult(const Vec& a) const {
    const std::size_t d = impl_->dim;
    la::Mat m(impl_->field, d, d);
    std::vector<std::uint64_t> acc(d * d, 0);
    for (const auto& t : impl_->terms)
        if (a[t.j] != 0) acc[t.i * d + t.k] += std::uint64_t{a[t.j]} * t.c;
    const std::uint32_t p = impl_->field.modulus();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k) m(i, k) = static_cast<Residue>(acc[i * d + k] % p);
    return m;
}

const la::Mat& FiniteAlgebra::right_action(std::size_t i) const { return impl_->right_actions.at(i); }
const std::vector<std::size_t>& FiniteAlgebra::generators() const noexcept { return impl_->generators; }

std::uint64_t FiniteAlgebra::size() const noexcept {
    std::uint64_t s = 1;
    const std::uint64_t p = impl_->field.modulus();
    for (std::size_t i = 0; i < impl_->dim; ++i) {
        if (s > std::numeric_limits<std::uint64_t>::max() / p) return std::numeric_limits<std::uint64_t>::max();
        s *= p;
    }
    return s;
}

Element FiniteAlgebra::element_at(std::uint64_t index) const {
    const std::uint64_t p = impl_->field.modulus();
    Vec v(impl_->dim);
    for (std::size_t i = 0; i < impl_->dim; ++i) {
        v[i] = static_cast<Residue>(index % p);
        index /= p;
    }
    return Element(*this, std::move(v));
}

std::uint64_t FiniteAlgebra::index_of(const Element& e) const {
    const std::uint64_t p = impl_->field.modulus();
    std::uint64_t idx = 0;
    for (std::size_t i = impl_->dim; i-- > 0;) idx = idx * p + e.coords()[i];
    return idx;
}

std::vector<Element> FiniteAlgebra::elements() const {
    if (!enumerable()) throw Error(ErrorCode::CapExceeded, "ring too large to enumerate");
    std::vector<Element> out;
    const auto n = size();
    out.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) out.push_back(element_at(i));
    return out;
}

const std::string& FiniteAlgebra::fingerprint() const noexcept { return impl_->fingerprint; }

bool FiniteAlgebra::same_as(const FiniteAlgebra& other) const noexcept {
    if (impl_ == other.impl_) return true;
    return impl_->field == other.impl_->field && impl_->dim == other.impl_->dim && impl_->mul == other.impl_->mul &&
           impl_->one == other.impl_->one;
}

// ---------------------------------------------------------------- Element

Element::Element(FiniteAlgebra algebra, Vec coords) : algebra_(std::move(algebra)), coords_(std::move(coords)) {
    if (coords_.size() != algebra_.dim()) throw Error(ErrorCode::DimensionMismatch, "coordinate count differs from dim");
    for (auto c : coords_)
        if (c >= algebra_.field().modulus()) throw Error(ErrorCode::OutOfRange, "coordinate not reduced mod p");
}

namespace {

void require_same(const Element& a, const Element& b) {
    if (!a.algebra().same_as(b.algebra())) throw Error(ErrorCode::AlgebraMismatch, "elements of different algebras");
}

}  // namespace

Element operator+(const Element& a, const Element& b) {
    require_same(a, b);
    return Element(a.algebra_, la::add(a.algebra_.field(), a.coords_, b.coords_));
}

Element operator-(const Element& a, const Element& b) {
    require_same(a, b);
    return Element(a.algebra_, la::sub(a.algebra_.field(), a.coords_, b.coords_));
}

Element operator*(const Element& a, const Element& b) {
    require_same(a, b);
    return Element(a.algebra_, a.algebra_.multiply(a.coords_, b.coords_));
}

Element operator*(Residue s, const Element& a) {
    return Element(a.algebra_, la::scale(a.algebra_.field(), a.algebra_.field().reduce(s), a.coords_));
}

Element Element::operator-() const { return algebra_.zero() - *this; }

Element Element::pow(std::uint64_t n) const {
    Element result = algebra_.one();
    Element base = *this;
    while (n > 0) {
        if (n & 1U) result = result * base;
        n >>= 1U;
        if (n > 0) base = base * base;
    }
    return result;
}

std::string to_string(const Element& e) {
    const auto& labels = e.algebra().labels();
    std::string out;
    for (std::size_t i = 0; i < e.coords().size(); ++i) {
        const auto c = e.coords()[i];
        if (c == 0) continue;
        if (!out.empty()) out += "+";
        if (c != 1) out += std::to_string(c) + "*";
        out += labels[i];
    }
    return out.empty() ? "0" : out;
}

bool is_unit(const Element& a) { return la::rank(a.algebra().left_mult(a.coords())) == a.algebra().dim(); }

std::optional<Element> try_inverse(const Element& a) {
    const auto& alg = a.algebra();
    // a x = 1  <=>  x * left_mult(a) = 1  <=>  left_mult(a)^T x^T = 1^T
    auto sol = la::solve_affine(alg.left_mult(a.coords()).transpose(), alg.one().coords());
    if (!sol) return std::nullopt;
    Element u = alg.element(sol->particular);
    if (!(a * u).is_one() || !(u * a).is_one()) return std::nullopt;
    return u;
}

// ---------------------------------------------------------------- corners

la::Subspace sandwich_span(const Element& x, const Element& y) {
    const auto& alg = x.algebra();
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < alg.dim(); ++i) rows.push_back((x * alg.basis(i) * y).coords());
    return la::Subspace::span(alg.field(), alg.dim(), rows);
}

Element CornerData::to_corner(const Element& r) const {
    const la::Subspace span = la::Subspace::span(embed);
    const Element ere = idempotent * r * idempotent;
    return corner.element(span.coordinates(ere.coords()));
}

Element CornerData::to_ring(const Element& c) const {
    return idempotent.algebra().element(la::vec_mat(c.coords(), embed));
}

CornerData corner_algebra(const Element& e) {
    if (!e.is_idempotent()) throw Error(ErrorCode::NotIdempotent, "corner requires an idempotent, got " + to_string(e));
    const auto& alg = e.algebra();
    const la::Subspace span = sandwich_span(e, e);
    const std::size_t k = span.dim();
    AlgebraTable t;
    t.p = alg.field().modulus();
    t.dim = k;
    t.mul.assign(k * k * k, 0);
    std::vector<Element> basis;
    for (std::size_t s = 0; s < k; ++s) basis.push_back(alg.element(span.basis().row_vec(s)));
    for (std::size_t s = 0; s < k; ++s)
        for (std::size_t u = 0; u < k; ++u) {
            const Vec c = span.coordinates((basis[s] * basis[u]).coords());
            for (std::size_t v = 0; v < k; ++v) t.mul[(s * k + u) * k + v] = c[v];
        }
    const Vec one = span.coordinates(e.coords());
    t.one.assign(one.begin(), one.end());
    for (const auto& b : basis) t.labels.push_back(to_string(b));
    return CornerData{e, FiniteAlgebra::build(t), span.basis()};
}

}  // namespace ringlab
