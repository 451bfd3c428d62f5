#include "ringlab/acceptance.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <mutex>
#include <random>

#include "ringlab/error.hpp"
#include "ringlab/parallel.hpp"
#include "ringlab/regularity.hpp"
#include "ringlab/report.hpp"

namespace ringlab::acceptance {

namespace {

using report::Json;

struct Outcome {
    bool passed = false;
    std::string detail;
};

report::Context preset_context(const std::string& name, unsigned jobs) {
    io::RingSpec spec;
    spec.preset = name;
    auto ctx = report::make_context(std::move(spec));
    ctx.jobs = jobs;
    return ctx;
}

bool check_passed(const Json& rep, const std::string& name) {
    for (const auto& c : rep["verification"]["checks"])
        if (c["name"] == name) return c["passed"].get<bool>();
    return false;
}

Outcome classification_oracle(const Options& o) {
    auto ctx = preset_context("M(2,2)", o.jobs);
    const auto rep = report::classify(ctx);
    const auto& c = rep["result"]["counts"];
    // nilpotent n x n matrices over F_q: q^(n^2 - n)
    const std::uint64_t nil_oracle = 1u << (2 * 2 - 2);
    const bool ok = c["elements"] == 16 && c["units"] == 6 && c["nilpotent"] == 4 && c["regular"] == 16 &&
                    c["unit_regular"] == 16 && c["nilpotent"] == nil_oracle && report::passed(rep);
    return {ok, "counts " + c.dump()};
}

Outcome chain_end_to_end(int theorem, const Options& o) {
    auto ctx = preset_context("M(3,2)", o.jobs);
    const auto j = *ctx.ring.named("J");
    const auto rep = report::chain(ctx, j, theorem, 3);
    if (rep.contains("error")) return {false, rep["error"].dump()};
    bool ok = report::passed(rep);
    std::string missing;
    std::vector<std::string> required{"final.Y=0", "final.K~E", "final.K~R/aR", "witness.unit", "witness.aua=a"};
    for (int level = 1; level <= 3; ++level) {
        const auto tag = "L" + std::to_string(level) + ".";
        for (const char* name : {"R=K+X+Y", "R=X+E+aY", "Y<=a^jR", "E~R/aR", "iso.compatible"}) required.push_back(tag + name);
        if (theorem == 4)
            for (const char* name : {"K+Y=K+a^jR", "aY=a^(j+1)R"}) required.push_back(tag + name);
    }
    for (const auto& name : required)
        if (!check_passed(rep, name)) missing += name + " ";
    const auto& res = rep["result"];
    const auto& dims = res["dims"];
    ok = ok && missing.empty() && res["Y_n_zero"].get<bool>() && dims["K"] == 3 && dims["E_n"] == 3 && dims["R/aR"] == 3;
    const auto& w = res["unit_witness"];
    if (w.is_null()) return {false, "no unit witness"};
    const auto u = ctx.ring.element(io::vec_from_json(w["u"], ctx.ring.field(), ctx.ring.dim()));
    ok = ok && is_unit(u) && j * u * j == j;
    return {ok, "u = " + to_string(u) + (missing.empty() ? "" : "; failing: " + missing)};
}

Outcome theorem_sweep(const Options& o) {
    struct Task {
        const FiniteAlgebra* ring;
        std::uint64_t index;
    };
    const auto rings = standard_catalog(4096);
    std::vector<Task> tasks;
    std::vector<std::string> names;
    for (const auto& r : rings) names.push_back(r.preset());
    for (const auto& r : rings)
        for (std::uint64_t i = 0; i < r.size(); ++i) tasks.push_back({&r, i});

    std::atomic<std::uint64_t> eligible{0}, failures{0};
    std::mutex mu;
    std::string first_failure;
    parallel_for(tasks.size(), o.jobs, [&](std::size_t begin, std::size_t end) {
        for (std::size_t t = begin; t < end; ++t) {
            const auto a = tasks[t].ring->element_at(tasks[t].index);
            const auto n = default_levels(a);
            if (!n || !all_powers_regular(a).all_regular) continue;
            ++eligible;
            try {
                const auto chain = theorem4_chain(a, *n);
                const auto w = unit_witness(chain);
                if (!(is_unit(w.u) && a * w.u * a == a)) throw Error(ErrorCode::VerificationFailure, "bad witness");
            } catch (const Error& e) {
                ++failures;
                std::lock_guard lock(mu);
                if (first_failure.empty()) first_failure = tasks[t].ring->preset() + " " + to_string(a) + ": " + e.what();
            }
        }
    });
    std::string detail = std::to_string(rings.size()) + " rings, " + std::to_string(eligible.load()) +
                         " eligible nilpotents, " + std::to_string(failures.load()) + " failures";
    if (!first_failure.empty()) detail += "; first: " + first_failure;
    static const char* const required[] = {"M(2,2)",   "M(3,2)",   "T(2,2)", "T(3,2)", "T(2,3)",
                                           "FpC(2,2)", "FpC(3,3)", "prod(M(2,2),T(2,2))"};
    const bool covers = std::all_of(std::begin(required), std::end(required), [&](const char* n) {
        return std::find(names.begin(), names.end(), n) != names.end();
    });
    return {covers && failures == 0 && eligible > 0, detail};
}

Outcome stable_range(const Options& o) {
    std::size_t rings = 0, failing = 0;
    std::string detail;
    for (const auto& r : standard_catalog(512)) {
        ++rings;
        StableRangeOptions opts;
        opts.jobs = o.jobs;
        if (!stable_range_one(r, opts).holds) {
            ++failing;
            detail += " fails on " + r.preset();
        }
    }
    // Injected fault: only the identity counts as a unit, so (e11, e22) in M(2,2) has no admissible y.
    const auto m2 = catalog("M(2,2)");
    StableRangeOptions faulty;
    faulty.jobs = o.jobs;
    faulty.unit_admissible = [](const Element& x) { return x.is_one(); };
    const auto injected = stable_range_one(m2, faulty);
    bool reported = !injected.holds && injected.counterexample.has_value();
    if (reported) {
        const auto& [a, b] = *injected.counterexample;
        const auto sum = la::Subspace::span(m2.left_mult(a.coords())) + la::Subspace::span(m2.left_mult(b.coords()));
        // genuine unimodular pair whose coset a + bR misses 1
        const auto coset_has_one = la::Subspace::span(m2.left_mult(b.coords())).contains((m2.one() - a).coords());
        reported = sum.is_whole() && !coset_has_one;
    }
    detail = std::to_string(rings) + " rings, " + std::to_string(failing) + " failures; injected fault " +
             (reported ? "reported a verified counterexample" : "NOT reported") + detail;
    return {failing == 0 && reported, detail};
}

Outcome route_agreement(const Options& o) {
    std::uint64_t elements = 0, disagreements = 0, unknown = 0;
    std::string where;
    for (const auto& r : standard_catalog(4096)) {
        const auto s = summarize(classify_all(r, o.jobs));
        elements += s.elements;
        disagreements += s.route_disagreements;
        unknown += s.unknown;
        if (s.route_disagreements) where += " " + r.preset();
    }
    return {disagreements == 0 && unknown == 0,
            std::to_string(elements) + " elements, " + std::to_string(disagreements) + " disagreements, " +
                std::to_string(unknown) + " undecided" + where};
}

Outcome projective_split_suite(const Options&) {
    const auto rings = standard_catalog(1024);
    std::map<std::string, std::vector<Element>> idempotents;
    for (const auto& r : rings) {
        auto& list = idempotents[r.preset()];
        for (const auto& x : r.elements())
            if (x.is_idempotent()) list.push_back(x);
    }
    std::mt19937_64 rng(0x5eedcafe);
    auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
    const int instances = 1200;
    int failures = 0, whole = 0;
    std::string first;
    for (int t = 0; t < instances; ++t) {
        const auto& r = rings[pick(rings.size())];
        const auto rr = RightModule::regular(r);
        const auto& idem = idempotents[r.preset()];
        auto random_element = [&] { return r.element_at(std::uniform_int_distribution<std::uint64_t>(0, r.size() - 1)(rng)); };
        // P = fR, A = eR with e in fRf idempotent
        const Element f = t % 4 == 0 ? r.one() : idem[pick(idem.size())];
        std::vector<Element> inside;
        for (const auto& e : idem)
            if (f * e == e && e * f == e) inside.push_back(e);
        const Element e = inside[pick(inside.size())];
        const auto p = principal_right_ideal(f);
        const auto a = principal_right_ideal(e);
        const auto c0 = complement_within(p, a);
        try {
            if (!c0) throw Error(ErrorCode::NotASummand, "eR not a summand of fR");
            std::vector<Vec> gens;
            for (const auto& c : c0->basis().row_list()) gens.push_back((r.element(c) + e * random_element()).coords());
            for (int k = static_cast<int>(pick(3)); k > 0; --k) gens.push_back((f * random_element()).coords());
            const auto b = Submodule::generated_by(rr, gens);
            if (!(a + b == p)) throw Error(ErrorCode::SumNotWhole, "generator produced A + B != P");
            const bool use_whole = f.is_one();
            whole += use_whole;
            const auto s = use_whole ? lemma3_split(rr, a, b) : lemma3_split_within(p, a, b);
            const bool ok = b.contains(s.c) && a + s.c == p && a.intersect(s.c).is_zero() && s.c + s.d == b &&
                            s.c.intersect(s.d).is_zero() && s.d == a.intersect(b);
            if (!ok) throw Error(ErrorCode::VerificationFailure, "split identities fail");
        } catch (const Error& err) {
            ++failures;
            if (first.empty()) first = r.preset() + " e=" + to_string(e) + " f=" + to_string(f) + ": " + err.what();
        }
    }
    return {failures == 0, std::to_string(instances) + " instances (" + std::to_string(whole) + " with P = R), " +
                               std::to_string(failures) + " failures" + (first.empty() ? "" : "; first: " + first)};
}

Outcome split_suite(const Options&) {
    std::uint64_t elements = 0, failures = 0;
    std::string first;
    for (const auto& r : standard_catalog(512)) {
        for (const auto& a : r.elements()) {
            ++elements;
            try {
                const auto d = idempotent_power_split(a);
                const auto& e = d.e;
                const auto f = r.one() - e;
                const auto ea = d.unit_corner.to_ring(d.unit_part), fa = d.nil_corner.to_ring(d.nil_part);
                const auto inv = try_inverse(d.unit_part);
                bool ok = e * e == e && a * e == e * a && inv.has_value() && ea == e * a && fa == f * a;
                ok = ok && is_nilpotent(d.nil_part) && (fa.pow(r.dim() + 1)).is_zero() && ea + fa == a;
                if (ok) {
                    const auto back = d.unit_corner.to_ring(*inv);
                    ok = ea * back == e && back * ea == e;
                }
                if (!ok) throw Error(ErrorCode::VerificationFailure, "split invariants fail");
            } catch (const Error& err) {
                ++failures;
                if (first.empty()) first = r.preset() + " " + to_string(a) + ": " + err.what();
            }
        }
    }
    return {failures == 0, std::to_string(elements) + " elements, " + std::to_string(failures) + " failures" +
                               (first.empty() ? "" : "; first: " + first)};
}

std::string rejection(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return std::string(to_string(e.code()));
    }
    return "accepted";
}

Outcome negative_controls(const Options&) {
    const auto t2 = catalog("T(2,2)");
    const auto c2 = catalog("FpC(2,2)");
    const auto e12 = t2.basis(1);
    const auto x = c2.one() + c2.basis(1);
    std::string detail;
    bool ok = to_string(e12) == "e12" && to_string(x) == "1+g";
    auto probe = [&](const Element& a) {
        const bool regular = is_regular(a);
        const auto r2 = rejection([&] { theorem2_chain(a, 2); });
        const auto r4 = rejection([&] { theorem4_chain(a, 2); });
        detail += (detail.empty() ? "" : "; ") + to_string(a) + ": regular=" + (regular ? "yes" : "no") + " T2=" + r2 + " T4=" + r4;
        return !regular && r2 == "NotRegular" && r4 == "PowersNotRegular";
    };
    ok = probe(e12) && ok;
    ok = probe(x) && ok;
    ok = ok && is_nilpotent(x) && !profile_element(e12).is_regular;
    return {ok, detail};
}

Outcome determinism(const Options& o) {
    auto ctx = preset_context("M(3,2)", o.jobs);
    const auto j = *ctx.ring.named("J");
    bool same = true;
    for (int theorem : {4, 2}) {
        const auto first = report::without_timing(report::chain(ctx, j, theorem, 3)).dump(2);
        const auto second = report::without_timing(report::chain(preset_context("M(3,2)", o.jobs), j, theorem, 3)).dump(2);
        same = same && first == second;
    }
    return {same, same ? "chain reports byte-identical across runs" : "chain reports differ"};
}

struct Criterion {
    int id;
    const char* title;
    double budget;
    Outcome (*run)(const Options&);
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> list{
        {1, "classification oracle on M(2,2)", 1, classification_oracle},
        {2, "regular-powers chain for J in M(3,2)", 5, [](const Options& o) { return chain_end_to_end(4, o); }},
        {3, "exchange chain for J in M(3,2)", 30, [](const Options& o) { return chain_end_to_end(2, o); }},
        {4, "exhaustive chain sweep, |R| <= 4096", 600, theorem_sweep},
        {5, "stable range one, |R| <= 512", 300, stable_range},
        {6, "unit-regularity route agreement, |R| <= 4096", 0, route_agreement},
        {7, "projective splitting property suite", 0, projective_split_suite},
        {8, "idempotent-power split suite, |R| <= 512", 0, split_suite},
        {9, "negative controls", 0, negative_controls},
        {10, "determinism of chain reports", 0, determinism},
    };
    return list;
}

}  // namespace

std::vector<CriterionResult> run(const Options& options) {
    std::vector<CriterionResult> out;
    for (const auto& c : criteria()) {
        if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), c.id) == options.only.end())
            continue;
        CriterionResult r{c.id, c.title, false, 0, c.budget, {}};
        const auto start = std::chrono::steady_clock::now();
        try {
            const auto o = c.run(options);
            r.passed = o.passed;
            r.detail = o.detail;
        } catch (const std::exception& e) {
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (r.budget_seconds > 0 && r.seconds >= r.budget_seconds) {
            r.passed = false;
            r.detail += "; over budget";
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::string format_line(const CriterionResult& r) {
    char timing[64];
    if (r.budget_seconds > 0)
        std::snprintf(timing, sizeof timing, "%.2fs < %gs", r.seconds, r.budget_seconds);
    else
        std::snprintf(timing, sizeof timing, "%.2fs", r.seconds);
    return std::string(r.passed ? "[PASS] " : "[FAIL] ") + std::to_string(r.id) + " " + r.title + " (" + timing +
           "): " + r.detail;
}

}  // namespace ringlab::acceptance
