#pragma once

// Unital associative algebras over F_p given by structure constants.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ringlab/exactla.hpp"

namespace ringlab {

using la::Residue;
using la::Vec;

// Exhaustive features (element scans, endomorphism enumeration) refuse to run above this size.
inline constexpr std::uint64_t kEnumerationCap = std::uint64_t{1} << 20;

// Raw presentation: b_i * b_j = sum_k mul[(i*dim + j)*dim + k] * b_k.
struct AlgebraTable {
    std::uint32_t p = 2;
    std::size_t dim = 0;
    std::vector<std::int64_t> mul;
    std::vector<std::int64_t> one;
    std::vector<std::string> labels;
    std::string preset;
    std::map<std::string, std::vector<std::int64_t>> named;
};

class Element;

class FiniteAlgebra {
public:
    // Validates shape, associativity on all basis triples and the unit laws.
    static FiniteAlgebra build(const AlgebraTable& table);

    const la::PrimeField& field() const noexcept;
    std::size_t dim() const noexcept;
    Residue structure(std::size_t i, std::size_t j, std::size_t k) const noexcept;
    const std::vector<std::string>& labels() const noexcept;
    const std::string& preset() const noexcept;
    std::optional<Element> named(std::string_view name) const;
    AlgebraTable table() const;

    Element zero() const;
    Element one() const;
    Element basis(std::size_t i) const;
    Element element(Vec coords) const;

    Vec multiply(const Vec& x, const Vec& y) const;
    // Row j is a * b_j, so coords(a x) = coords(x) * left_mult(a).
    la::Mat left_mult(const Vec& a) const;
    // Row j is b_j * a, so coords(x a) = coords(x) * right_mult(a).
    la::Mat right_mult(const Vec& a) const;
    const la::Mat& right_action(std::size_t i) const;
    // Indices of basis elements that, together with 1, generate the algebra.
    const std::vector<std::size_t>& generators() const noexcept;

    // p^dim, saturated at UINT64_MAX.
    std::uint64_t size() const noexcept;
    bool enumerable(std::uint64_t cap = kEnumerationCap) const noexcept { return size() <= cap; }
    // Base-p digits of index, coordinate 0 least significant.
    Element element_at(std::uint64_t index) const;
    std::uint64_t index_of(const Element& e) const;
    std::vector<Element> elements() const;

    // FNV-1a over modulus, dimension, structure constants and identity.
    const std::string& fingerprint() const noexcept;
    bool same_as(const FiniteAlgebra& other) const noexcept;

    struct Impl;  // opaque

private:
    std::shared_ptr<const Impl> impl_;
};

class Element {
public:
    Element(FiniteAlgebra algebra, Vec coords);

    const FiniteAlgebra& algebra() const noexcept { return algebra_; }
    const Vec& coords() const noexcept { return coords_; }

    bool is_zero() const noexcept { return la::is_zero(coords_); }
    bool is_one() const { return *this == algebra_.one(); }
    bool is_idempotent() const { return *this * *this == *this; }
    Element pow(std::uint64_t n) const;

    friend Element operator+(const Element& a, const Element& b);
    friend Element operator-(const Element& a, const Element& b);
    friend Element operator*(const Element& a, const Element& b);
    friend Element operator*(Residue s, const Element& a);
    Element operator-() const;
    friend bool operator==(const Element& a, const Element& b) noexcept { return a.coords_ == b.coords_; }
    friend bool operator<(const Element& a, const Element& b) noexcept { return a.coords_ < b.coords_; }

private:
    FiniteAlgebra algebra_;
    Vec coords_;
};

// "e12+e23" style rendering using the algebra's labels; "0" for zero.
std::string to_string(const Element& e);

bool is_unit(const Element& a);
// Returns u with a u = u a = 1, both sides checked.
std::optional<Element> try_inverse(const Element& a);

// eRe with identity e.
struct CornerData {
    Element idempotent;
    FiniteAlgebra corner;
    la::Mat embed;  // rows: basis of eRe in coordinates of R

    Element to_corner(const Element& r) const;  // r -> e r e, in corner coordinates
    Element to_ring(const Element& c) const;
    bool degenerate() const noexcept { return corner.dim() == 0; }
};

CornerData corner_algebra(const Element& e);

// Span of {x r y : r in R}.
la::Subspace sandwich_span(const Element& x, const Element& y);

// ---- catalog

FiniteAlgebra matrix_algebra(std::size_t n, std::uint32_t p);
FiniteAlgebra upper_triangular(std::size_t n, std::uint32_t p);
FiniteAlgebra cyclic_group_algebra(std::size_t n, std::uint32_t p);
FiniteAlgebra product(const std::vector<FiniteAlgebra>& factors);
// Preset grammar: M(n,p) | T(n,p) | FpC(n,p) | prod(preset, preset, ...).
FiniteAlgebra catalog(std::string_view preset);

// Presets exercised by the exhaustive sweeps, in increasing size within each family.
const std::vector<std::string>& standard_presets();
// Standard presets with p^dim <= max_size.
std::vector<FiniteAlgebra> standard_catalog(std::uint64_t max_size);

}  // namespace ringlab
