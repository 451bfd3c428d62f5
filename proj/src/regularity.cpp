#include "ringlab/regularity.hpp"

#include <limits>
#include <map>
#include <random>
#include <string>

#include "ringlab/error.hpp"
#include "ringlab/parallel.hpp"

namespace ringlab {

const char* to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::Yes: return "yes";
        case Verdict::No: return "no";
        case Verdict::Unknown: return "unknown";
    }
    return "unknown";
}

namespace {

std::uint64_t saturating_power(std::uint64_t p, std::size_t k) {
    std::uint64_t out = 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (out > std::numeric_limits<std::uint64_t>::max() / p) return std::numeric_limits<std::uint64_t>::max();
        out *= p;
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------- inner inverses

std::uint64_t InnerInverseSet::count() const noexcept {
    if (!solutions) return 0;
    return saturating_power(a.algebra().field().modulus(), solutions->free_dim());
}

bool InnerInverseSet::contains(const Element& x) const { return solutions && solutions->contains(x.coords()); }

Element InnerInverseSet::first() const {
    if (!solutions) throw Error(ErrorCode::NotRegular, to_string(a) + " has no inner inverse");
    return a.algebra().element(solutions->particular);
}

InnerInverseSet inner_inverse_set(const Element& a) {
    const auto& alg = a.algebra();
    // column k of the system is a b_k a
    la::Mat system(alg.field(), 0, alg.dim());
    for (std::size_t k = 0; k < alg.dim(); ++k) system.append_row((a * alg.basis(k) * a).coords());
    return InnerInverseSet{a, la::solve_affine(system.transpose(), a.coords())};
}

bool is_regular(const Element& a) { return inner_inverse_set(a).regular(); }

// ---------------------------------------------------------------- unit-regularity

UnitRegularCertificate unit_regular_certificate(const Element& a, const CertificateOptions& options) {
    UnitRegularCertificate cert{a, Verdict::No, std::nullopt, Verdict::No, Verdict::No, std::nullopt};
    const auto inner = inner_inverse_set(a);
    if (!inner.regular()) return cert;

    const auto& alg = a.algebra();
    const auto& f = alg.field();
    const auto& sol = *inner.solutions;
    const std::size_t k = sol.free_dim();
    if (inner.count() <= options.enumeration_cap) {
        std::vector<std::uint32_t> digits(k, 0);
        Vec x = sol.particular;
        while (true) {
            const Element cand = alg.element(x);
            if (is_unit(cand)) {
                cert.u = cand;
                break;
            }
            std::size_t pos = 0;
            while (pos < k) {
                x = la::add(f, x, sol.kernel.basis().row_vec(pos));
                if (++digits[pos] < f.modulus()) break;
                digits[pos] = 0;
                ++pos;
            }
            if (pos == k) break;
        }
        cert.unit_route = cert.u ? Verdict::Yes : Verdict::No;
    } else {
        std::mt19937_64 rng(options.seed);
        std::uniform_int_distribution<std::uint32_t> coeff(0, f.modulus() - 1);
        for (std::uint64_t t = 0; t < options.random_trials && !cert.u; ++t) {
            Vec x = sol.particular;
            for (std::size_t pos = 0; pos < k; ++pos)
                x = la::add(f, x, la::scale(f, static_cast<Residue>(coeff(rng)), sol.kernel.basis().row_vec(pos)));
            if (const Element cand = alg.element(x); is_unit(cand)) cert.u = cand;
        }
        cert.unit_route = cert.u ? Verdict::Yes : Verdict::Unknown;
    }

    const Submodule kernel = right_annihilator(a);
    const auto q = quotient(kernel.ambient(), principal_right_ideal(a));
    const auto iso = find_isomorphism(kernel.as_module(), q.module,
                                      IsoOptions{options.enumeration_cap, options.random_trials, options.seed});
    switch (iso.status) {
        case IsoStatus::Found:
            cert.iso_route = Verdict::Yes;
            cert.iso_evidence = iso.map;
            break;
        case IsoStatus::None: cert.iso_route = Verdict::No; break;
        case IsoStatus::Unknown: cert.iso_route = Verdict::Unknown; break;
    }

    if (cert.unit_route == Verdict::Yes || cert.iso_route == Verdict::Yes)
        cert.status = Verdict::Yes;
    else if (cert.unit_route == Verdict::No && cert.iso_route == Verdict::No)
        cert.status = Verdict::No;
    else
        cert.status = Verdict::Unknown;
    return cert;
}

// ---------------------------------------------------------------- powers

PowerData nilpotency_data(const Element& a) {
    PowerData out;
    std::map<Vec, std::uint64_t> seen;
    Element power = a.algebra().one();
    seen.emplace(power.coords(), 0);
    for (std::uint64_t e = 1;; ++e) {
        power = power * a;
        if (!out.nilpotency_index && power.is_zero()) out.nilpotency_index = e;
        auto [it, inserted] = seen.emplace(power.coords(), e);
        if (!inserted) {
            out.cycle_start = it->second;
            out.cycle_end = e;
            return out;
        }
    }
}

bool is_nilpotent(const Element& a) { return nilpotency_data(a).nilpotency_index.has_value(); }

std::uint64_t strongly_pi_regular_index(const Element& a) {
    const auto& alg = a.algebra();
    Element power = alg.one();
    std::size_t right = alg.dim(), left = alg.dim();  // dims of a^0 R and R a^0
    for (std::uint64_t n = 0;; ++n) {
        const Element next = power * a;
        const std::size_t next_right = la::rank(alg.left_mult(next.coords()));
        const std::size_t next_left = la::rank(alg.right_mult(next.coords()));
        if (next_right == right && next_left == left) return n;
        power = next;
        right = next_right;
        left = next_left;
    }
}

SplitData idempotent_power_split(const Element& a) {
    const auto& alg = a.algebra();
    Element power = a;
    std::uint64_t m = 1;
    while (!power.is_idempotent()) {
        power = power * a;
        ++m;
        if (m > std::max<std::uint64_t>(alg.size(), 1) + 1)
            throw Error(ErrorCode::VerificationFailure, "no idempotent power found");
    }
    const Element e = power;
    const Element f = alg.one() - e;
    auto unit_corner = corner_algebra(e);
    auto nil_corner = corner_algebra(f);
    const Element unit_part = unit_corner.to_corner(e * a);
    const Element nil_part = nil_corner.to_corner(f * a);
    SplitData out{a, m, e, unit_corner, nil_corner, unit_part, nil_part};

    if (!(e * a == a * e)) throw Error(ErrorCode::VerificationFailure, "a^m does not commute with a");
    if (!try_inverse(unit_part)) throw Error(ErrorCode::VerificationFailure, "ea is not a unit of eRe");
    if (!is_nilpotent(nil_part)) throw Error(ErrorCode::VerificationFailure, "(1-e)a is not nilpotent in (1-e)R(1-e)");
    if (!(unit_corner.to_ring(unit_part) + nil_corner.to_ring(nil_part) == a))
        throw Error(ErrorCode::VerificationFailure, "a != ea + (1-e)a");
    return out;
}

PowersRegularity all_powers_regular(const Element& a) {
    PowersRegularity out;
    const auto data = nilpotency_data(a);
    Element power = a;
    for (std::uint64_t n = 1; n <= std::max<std::uint64_t>(1, data.cycle_end); ++n) {
        out.checked_up_to = n;
        if (!is_regular(power)) {
            out.all_regular = false;
            out.first_failure = n;
            return out;
        }
        power = power * a;
    }
    return out;
}

// ---------------------------------------------------------------- stable range one

StableRangeResult stable_range_one(const FiniteAlgebra& r, const StableRangeOptions& options) {
    if (!r.enumerable()) throw Error(ErrorCode::CapExceeded, "stable range check needs an enumerable ring");
    const std::uint64_t n = r.size();
    const std::size_t d = r.dim();
    StableRangeResult out;

    std::vector<la::Subspace> images(n);
    std::vector<char> unit(n, 0);
    parallel_for(n, options.jobs, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const Element x = r.element_at(i);
            const la::Mat lm = r.left_mult(x.coords());
            images[i] = la::Subspace::span(lm);
            unit[i] = images[i].dim() == d && (!options.unit_admissible || options.unit_admissible(x));
        }
    });
    for (auto u : unit) out.units += u ? 1 : 0;

    // b's grouped by the right ideal bR; the answer for (a, b) depends on bR only
    std::map<std::vector<Residue>, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < n; ++i) groups[images[i].basis().entries()].push_back(i);
    out.distinct_right_ideals = groups.size();
    out.pairs = n * n;

    for (const auto& [key, members] : groups) {
        const la::Subspace& ideal = images[members.front()];
        std::vector<char> coset_has_unit(n, 0);
        for (std::size_t i = 0; i < n; ++i)
            if (unit[i]) coset_has_unit[r.index_of(r.element(ideal.reduce(r.element_at(i).coords())))] = 1;

        std::vector<std::uint64_t> unimodular(options.jobs > 0 ? options.jobs : 1, 0);
        std::vector<std::optional<std::size_t>> failure(unimodular.size());
        const std::size_t chunk = (n + unimodular.size() - 1) / unimodular.size();
        parallel_for(n, options.jobs, [&](std::size_t begin, std::size_t end) {
            const std::size_t slot = begin / chunk;
            for (std::size_t i = begin; i < end; ++i) {
                if ((images[i] + ideal).dim() != d) continue;
                ++unimodular[slot];
                const auto rep = r.index_of(r.element(ideal.reduce(r.element_at(i).coords())));
                if (!coset_has_unit[rep] && !failure[slot]) failure[slot] = i;
            }
        });
        for (auto c : unimodular) out.unimodular_pairs += c * members.size();
        for (const auto& fail : failure)
            if (fail) {
                out.holds = false;
                out.counterexample = std::pair{r.element_at(*fail), r.element_at(members.front())};
                return out;
            }
    }
    return out;
}

std::optional<Element> stable_range_witness(const Element& a, const Element& b) {
    const auto& alg = a.algebra();
    const la::Mat lb = alg.left_mult(b.coords());
    const la::Subspace ideal = la::Subspace::span(lb);
    if (!alg.enumerable()) throw Error(ErrorCode::CapExceeded, "witness search needs an enumerable ring");
    const auto& f = alg.field();
    const std::size_t k = ideal.dim();
    std::vector<std::uint32_t> digits(k, 0);
    Vec x = a.coords();
    while (true) {
        const Element cand = alg.element(x);
        if (is_unit(cand)) {
            // b y = cand - a, i.e. y * left_mult(b) = cand - a
            auto y = la::solve_affine(lb.transpose(), (cand - a).coords());
            if (!y) throw Error(ErrorCode::VerificationFailure, "coset element outside a + bR");
            return alg.element(y->particular);
        }
        std::size_t pos = 0;
        while (pos < k) {
            x = la::add(f, x, ideal.basis().row_vec(pos));
            if (++digits[pos] < f.modulus()) break;
            digits[pos] = 0;
            ++pos;
        }
        if (pos == k) return std::nullopt;
    }
}

// ---------------------------------------------------------------- classification

ElementProfile profile_element(const Element& a, const CertificateOptions& options) {
    const auto& alg = a.algebra();
    ElementProfile p(a);
    p.is_unit = is_unit(a);
    p.is_idempotent = a.is_idempotent();
    const auto powers = nilpotency_data(a);
    p.nilpotency_index = powers.nilpotency_index;
    p.is_nilpotent = powers.nilpotency_index.has_value();
    const auto cert = unit_regular_certificate(a, options);
    p.is_regular = cert.unit_route != Verdict::No || cert.iso_route != Verdict::No || is_regular(a);
    p.unit_regular = cert.status;
    p.unit_witness = cert.u;
    p.unit_route = cert.unit_route;
    p.iso_route = cert.iso_route;
    p.spr_index = strongly_pi_regular_index(a);
    p.dim_image = la::rank(alg.left_mult(a.coords()));
    p.dim_annihilator = right_annihilator(a).dim();

    bool ok = true;
    if (p.is_unit) ok = ok && p.is_regular && p.unit_regular == Verdict::Yes && p.spr_index == 0;
    if (p.spr_index == 0) ok = ok && p.is_unit;
    if (p.is_idempotent) ok = ok && p.is_regular;
    if (p.unit_regular == Verdict::Yes) ok = ok && p.is_regular;
    if (p.is_nilpotent && alg.dim() > 0) ok = ok && !p.is_unit;
    ok = ok && p.dim_image + p.dim_annihilator == alg.dim();
    ok = ok && p.spr_index <= alg.dim();
    p.consistent = ok;
    return p;
}

std::vector<ElementProfile> classify_all(const FiniteAlgebra& r, unsigned jobs) {
    if (!r.enumerable()) throw Error(ErrorCode::CapExceeded, "classification needs an enumerable ring");
    const std::uint64_t n = r.size();
    std::vector<std::optional<ElementProfile>> slots(n);
    parallel_for(n, jobs, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) slots[i] = profile_element(r.element_at(i));
    });
    std::vector<ElementProfile> out;
    out.reserve(n);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

ClassificationSummary summarize(const std::vector<ElementProfile>& profiles) {
    ClassificationSummary s;
    for (const auto& p : profiles) {
        ++s.elements;
        s.units += p.is_unit;
        s.idempotents += p.is_idempotent;
        s.nilpotents += p.is_nilpotent;
        s.regular += p.is_regular;
        s.unit_regular += p.unit_regular == Verdict::Yes;
        s.unknown += p.unit_regular == Verdict::Unknown;
        s.route_disagreements += p.unit_route != p.iso_route;
        s.inconsistent += !p.consistent;
    }
    return s;
}

}  // namespace ringlab
