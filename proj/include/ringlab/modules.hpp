#pragma once

// Finite right modules over a FiniteAlgebra, their submodules and homomorphisms,
// plus the two splitting constructions the decomposition chains are built from:
// the projective splitting (P = A + B with A a summand gives B = C + D, P = A + C)
// and the exchange step for finite-length modules.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "ringlab/algebra.hpp"
#include "ringlab/exactla.hpp"

namespace ringlab {

// Row-vector convention: m * b_i has coordinates coords(m) * action(i).
class RightModule {
public:
    RightModule(FiniteAlgebra algebra, std::size_t dim, std::vector<la::Mat> actions);

    static RightModule regular(const FiniteAlgebra& algebra);
    static RightModule zero(const FiniteAlgebra& algebra);

    const FiniteAlgebra& algebra() const noexcept;
    std::size_t dim() const noexcept;
    const la::Mat& action(std::size_t i) const;
    const std::vector<la::Mat>& actions() const noexcept;
    // Action matrix of an arbitrary algebra element.
    la::Mat act(const Element& r) const;
    const la::PrimeField& field() const noexcept { return algebra().field(); }

    // act(one) = I and act(b_i b_j) = act(b_i) act(b_j) for all basis pairs.
    bool respects_algebra() const;
    bool same_as(const RightModule& other) const noexcept;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

class Submodule {
public:
    // Throws NotASubmodule unless space is closed under every action matrix.
    Submodule(RightModule ambient, la::Subspace space);

    static Submodule zero(const RightModule& ambient);
    static Submodule whole(const RightModule& ambient);
    // Smallest submodule containing the given vectors.
    static Submodule generated_by(const RightModule& ambient, const std::vector<Vec>& vectors);

    const RightModule& ambient() const noexcept { return ambient_; }
    const la::Subspace& space() const noexcept { return space_; }
    std::size_t dim() const noexcept { return space_.dim(); }
    bool is_zero() const noexcept { return space_.is_zero(); }
    const la::Mat& basis() const noexcept { return space_.basis(); }

    // The submodule as a module in its own right, coordinates taken on the RREF basis.
    RightModule as_module() const;

    bool contains(const Submodule& other) const;
    Submodule operator+(const Submodule& other) const;
    Submodule intersect(const Submodule& other) const;
    friend bool operator==(const Submodule& a, const Submodule& b) noexcept { return a.space_ == b.space_; }

private:
    RightModule ambient_;
    la::Subspace space_;
};

bool is_action_closed(const RightModule& ambient, const la::Subspace& space);

// inner (a submodule of outer's ambient, contained in outer) as a submodule of outer.as_module().
Submodule relative(const Submodule& outer, const Submodule& inner);
// Inverse of relative.
Submodule lift(const Submodule& outer, const Submodule& rel);

class ModuleMap {
public:
    // matrix is source.dim() x target.dim(); m -> m * matrix.
    ModuleMap(RightModule source, RightModule target, la::Mat matrix);

    const RightModule& source() const noexcept { return source_; }
    const RightModule& target() const noexcept { return target_; }
    const la::Mat& matrix() const noexcept { return matrix_; }

    Vec apply(const Vec& m) const { return la::vec_mat(m, matrix_); }
    // Checked against every algebra basis element, not just generators.
    bool is_homomorphism() const;
    bool is_bijective() const;
    bool is_isomorphism() const { return is_homomorphism() && is_bijective(); }
    // this followed by next.
    ModuleMap then(const ModuleMap& next) const;

private:
    RightModule source_;
    RightModule target_;
    la::Mat matrix_;
};

struct DirectSumDecomposition {
    RightModule ambient;
    std::vector<Submodule> parts;

    bool verify() const;
};

struct QuotientModule {
    RightModule module;
    ModuleMap projection;
    Submodule kernel;
};

RightModule regular_representation(const FiniteAlgebra& algebra);
// r(a) = {x : a x = 0} inside R_R.
Submodule right_annihilator(const Element& a);
// a S for S a submodule of R_R.
Submodule left_mult_image(const Element& a, const Submodule& s);
Submodule principal_right_ideal(const Element& a);

// The quotient takes the non-pivot coordinates of N's RREF basis as its coordinates.
QuotientModule quotient(const RightModule& m, const Submodule& n);

std::vector<ModuleMap> hom_basis(const RightModule& m, const RightModule& n);

enum class IsoStatus { Found, None, Unknown };

struct IsoResult {
    IsoStatus status = IsoStatus::None;
    std::optional<ModuleMap> map;
    // how the verdict was reached: "dimension", "fingerprint", "hom-space", "exhaustive", "random", "budget"
    const char* route = "";
};

struct IsoOptions {
    std::uint64_t enumeration_cap = kEnumerationCap;
    std::uint64_t random_trials = 100000;
    std::uint64_t seed = 0x5eedcafe;
};

IsoResult find_isomorphism(const RightModule& m, const RightModule& n, const IsoOptions& options = {});

// C with P = A + C (direct), taken as the kernel of the first R-linear retraction P -> A.
std::optional<Submodule> complement(const RightModule& p, const Submodule& a);
// Same, with P itself a submodule; the result lives in P's ambient.
std::optional<Submodule> complement_within(const Submodule& p, const Submodule& a);

struct ProjectiveSplit {
    Submodule c;  // P = A + C (direct), C inside B
    Submodule d;  // B = C + D (direct), D = A meet B
};

// P must be projective; every module the library constructs is a summand of a free module.
ProjectiveSplit lemma3_split(const RightModule& p, const Submodule& a, const Submodule& b);
ProjectiveSplit lemma3_split_within(const Submodule& p, const Submodule& a, const Submodule& b);

struct EndomorphismScan {
    std::optional<la::Mat> idempotent;  // first idempotent other than 0 and 1
    bool local = true;                  // every endomorphism a unit or nilpotent (meaningful when no idempotent)
    std::uint64_t scanned = 0;
};

EndomorphismScan scan_endomorphisms(const RightModule& m, std::uint64_t cap = kEnumerationCap);

// Krull-Schmidt splitting by recursive idempotent search; every part has a local endomorphism ring.
DirectSumDecomposition indecomposable_summands(const RightModule& m, std::uint64_t cap = kEnumerationCap);
std::vector<Submodule> indecomposable_summands(const Submodule& s, std::uint64_t cap = kEnumerationCap);

struct ExchangeResult {
    std::vector<Submodule> kept;   // D_i
    std::vector<Submodule> given;  // E_i, with A_i = D_i + E_i
};

// For ambient = M + B + C = (sum of parts) + C, all direct, splits each part as A_i = D_i + E_i
// with ambient = M + (sum of D_i) + C. Both identities are verified before returning.
ExchangeResult exchange_step(const RightModule& ambient, const Submodule& m, const Submodule& c,
                             const std::vector<Submodule>& parts, std::uint64_t cap = kEnumerationCap);

// Projections v -> v * P_s onto each summand of an internal direct sum of the ambient space.
std::vector<la::Mat> direct_sum_projections(const std::vector<la::Subspace>& parts);

}  // namespace ringlab
