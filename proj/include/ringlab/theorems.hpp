#pragma once

// Inductive decomposition chains
//
//     R = K + (A_1 + ... + A_j) + Y_j = (A_1 + ... + A_j) + E_j + a Y_j     (all sums direct)
//
// with K = r(a), Y_j inside a^j R, E_j = A_j' + a A_j isomorphic to R/aR and
// E_j = A_{j+1} + A_{j+1}'. Two constructions are provided: one driven by the
// exchange step (needs a regular), one driven by projective splitting alone
// (needs every power of a regular, and additionally keeps K + Y_j = K + a^j R and
// a Y_j = a^(j+1) R). Once a^n = 0 the chain forces Y_n = 0, hence K and R/aR are
// isomorphic through E_n, and that isomorphism yields a unit u with a u a = a.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ringlab/algebra.hpp"
#include "ringlab/exactla.hpp"
#include "ringlab/modules.hpp"

namespace ringlab {

enum class ChainVariant { Exchange = 2, RegularPowers = 4 };

// Subspaces of R_R; `iso` maps E_j (coordinates on its RREF basis) to R/aR
// (coordinates of quotient(R_R, aR)).
struct ChainLevel {
    std::size_t j = 0;
    la::Subspace a_part;   // A_j
    la::Subspace a_prime;  // A_j'
    la::Subspace y;        // Y_j
    la::Subspace e;        // E_j
    la::Mat iso;
};

struct TheoremChain {
    Element a;
    ChainVariant variant = ChainVariant::RegularPowers;
    la::Subspace kernel;  // K = r(a)
    std::vector<ChainLevel> levels;

    std::size_t length() const noexcept { return levels.size(); }
    // X_n = A_1 + ... + A_n
    la::Subspace x(std::size_t n) const;
    const ChainLevel& last() const { return levels.back(); }
};

// Nilpotency index when a is nilpotent; nullopt otherwise (the caller must choose).
std::optional<std::size_t> default_levels(const Element& a);

TheoremChain theorem2_chain(const Element& a, std::size_t levels);
TheoremChain theorem4_chain(const Element& a, std::size_t levels);

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ChainReport {
    std::vector<Check> checks;

    bool passed() const noexcept;
    std::vector<std::string> failures() const;
};

struct VerifyOptions {
    // Also rebuild the chain and require byte-identical level data.
    bool canonical = false;
};

// Re-derives every invariant from raw subspace arithmetic on the stored data.
ChainReport verify_chain(const TheoremChain& chain, const VerifyOptions& options = {});

struct UnitWitness {
    Element u;
    bool inner_inverse_check = false;   // a u a = a
    bool in_inner_inverse_set = false;  // u lies in the solution set of a x a = a
    ModuleMap iso_used;                 // K -> R/aR through E_n
};

// Requires a^n = 0 for n = chain length.
UnitWitness unit_witness(const TheoremChain& chain);

// K -> R/aR obtained by projecting K onto E_n along X_n and applying the stored iso.
ModuleMap kernel_to_cokernel(const TheoremChain& chain);

}  // namespace ringlab
