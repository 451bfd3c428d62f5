#pragma once

// Element classification: regularity, unit-regularity, powers, the idempotent-power
// splitting a = ea + (1-e)a, and the exhaustive stable-range-one check.

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "ringlab/algebra.hpp"
#include "ringlab/modules.hpp"

namespace ringlab {

enum class Verdict { Yes, No, Unknown };

const char* to_string(Verdict v) noexcept;

// {x : a x a = a}; empty when a is not regular.
struct InnerInverseSet {
    Element a;
    std::optional<la::AffineSolutionSet> solutions;

    bool regular() const noexcept { return solutions.has_value(); }
    // p^(free dimension), saturated; 0 when not regular.
    std::uint64_t count() const noexcept;
    bool contains(const Element& x) const;
    Element first() const;
};

InnerInverseSet inner_inverse_set(const Element& a);
bool is_regular(const Element& a);

struct CertificateOptions {
    std::uint64_t enumeration_cap = kEnumerationCap;
    std::uint64_t random_trials = 100000;
    std::uint64_t seed = 0x5eedcafe;
};

struct UnitRegularCertificate {
    Element a;
    Verdict status = Verdict::No;
    std::optional<Element> u;  // unit with a u a = a
    // Unit inner inverse search; "a regular and r(a) isomorphic to R/aR".
    Verdict unit_route = Verdict::No;
    Verdict iso_route = Verdict::No;
    std::optional<ModuleMap> iso_evidence;  // r(a) -> R/aR

    bool routes_agree() const noexcept { return unit_route == iso_route; }
};

UnitRegularCertificate unit_regular_certificate(const Element& a, const CertificateOptions& options = {});

struct PowerData {
    std::optional<std::uint64_t> nilpotency_index;  // least n >= 1 with a^n = 0
    // First repetition a^cycle_start = a^cycle_end in 1, a, a^2, ...
    std::uint64_t cycle_start = 0;
    std::uint64_t cycle_end = 0;
};

PowerData nilpotency_data(const Element& a);
bool is_nilpotent(const Element& a);

// Least n >= 0 with a^n R = a^(n+1) R and R a^n = R a^(n+1).
std::uint64_t strongly_pi_regular_index(const Element& a);

struct SplitData {
    Element a;
    std::uint64_t m = 0;  // least m >= 1 with a^m idempotent
    Element e;            // a^m
    CornerData unit_corner;  // eRe
    CornerData nil_corner;   // (1-e)R(1-e)
    Element unit_part;       // ea, in eRe coordinates
    Element nil_part;        // (1-e)a, in (1-e)R(1-e) coordinates
};

// Verifies every invariant before returning (VerificationFailure otherwise).
SplitData idempotent_power_split(const Element& a);

struct PowersRegularity {
    bool all_regular = true;
    std::optional<std::uint64_t> first_failure;
    std::uint64_t checked_up_to = 0;
};

PowersRegularity all_powers_regular(const Element& a);

struct StableRangeOptions {
    unsigned jobs = 1;
    // Fault injection: units rejected here are ignored by the search.
    std::function<bool(const Element&)> unit_admissible;
};

struct StableRangeResult {
    bool holds = true;
    std::uint64_t pairs = 0;
    std::uint64_t unimodular_pairs = 0;
    std::uint64_t units = 0;
    std::uint64_t distinct_right_ideals = 0;
    std::optional<std::pair<Element, Element>> counterexample;  // (a, b) with aR + bR = R and no unit in a + bR
};

// Every pair (a, b) with aR + bR = R admits y with a + b y a unit.
StableRangeResult stable_range_one(const FiniteAlgebra& r, const StableRangeOptions& options = {});
// Some y with a + b y a unit, by scanning the coset a + bR.
std::optional<Element> stable_range_witness(const Element& a, const Element& b);

struct ElementProfile {
    explicit ElementProfile(Element e) : a(std::move(e)) {}

    Element a;
    bool is_unit = false;
    bool is_idempotent = false;
    bool is_nilpotent = false;
    std::optional<std::uint64_t> nilpotency_index;
    bool is_regular = false;
    Verdict unit_regular = Verdict::No;
    Verdict unit_route = Verdict::No;
    Verdict iso_route = Verdict::No;
    std::optional<Element> unit_witness;  // u with a u a = a
    std::uint64_t spr_index = 0;
    std::size_t dim_image = 0;       // aR
    std::size_t dim_annihilator = 0;  // r(a)
    bool consistent = true;
};

ElementProfile profile_element(const Element& a, const CertificateOptions& options = {});

struct ClassificationSummary {
    std::uint64_t elements = 0, units = 0, idempotents = 0, nilpotents = 0, regular = 0, unit_regular = 0;
    std::uint64_t unknown = 0, route_disagreements = 0, inconsistent = 0;
};

std::vector<ElementProfile> classify_all(const FiniteAlgebra& r, unsigned jobs = 1);
ClassificationSummary summarize(const std::vector<ElementProfile>& profiles);

}  // namespace ringlab
