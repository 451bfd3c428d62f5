#include "ringlab/report.hpp"

#include <regex>

#include "ringlab/error.hpp"
#include "ringlab/regularity.hpp"

namespace ringlab::report {

namespace {

constexpr int kFormat = 1;

struct Checks {
    Json list = Json::array();
    bool ok = true;

    void add(const std::string& name, bool passed, const std::string& detail = {}) {
        Json c{{"name", name}, {"passed", passed}};
        if (!detail.empty()) c["detail"] = detail;
        list.push_back(std::move(c));
        ok = ok && passed;
    }
    void merge(const ChainReport& r) {
        for (const auto& c : r.checks) add(c.name, c.passed, c.detail);
    }
    Json json() const { return Json{{"passed", ok}, {"checks", list}}; }
};

Json ring_json(const Context& ctx) {
    const auto& r = ctx.ring;
    return Json{{"spec", ctx.spec.to_json()},
                {"name", ctx.spec.describe()},
                {"p", r.field().modulus()},
                {"dim", r.dim()},
                {"size", r.size()},
                {"hash", r.fingerprint()}};
}

Json envelope(const std::string& command, const Context& ctx, const std::optional<Element>& a) {
    Json out{{"tool", "ringlab"}, {"format", kFormat}, {"command", command}, {"ring", ring_json(ctx)}};
    if (a) {
        auto e = io::element_json(*a);
        if (ctx.element_expr) e["expr"] = *ctx.element_expr;
        out["element"] = std::move(e);
    }
    return out;
}

Json optional_index(const std::optional<std::uint64_t>& v) { return v ? Json(*v) : Json(nullptr); }

Json profile_json(const ElementProfile& p) {
    Json out = io::element_json(p.a);
    out["unit"] = p.is_unit;
    out["idempotent"] = p.is_idempotent;
    out["nilpotent"] = p.is_nilpotent;
    out["nilpotency_index"] = optional_index(p.nilpotency_index);
    out["regular"] = p.is_regular;
    out["unit_regular"] = to_string(p.unit_regular);
    out["unit_route"] = to_string(p.unit_route);
    out["iso_route"] = to_string(p.iso_route);
    out["u"] = p.unit_witness ? io::vec_json(p.unit_witness->coords()) : Json(nullptr);
    out["spr_index"] = p.spr_index;
    out["dim_aR"] = p.dim_image;
    out["dim_r_a"] = p.dim_annihilator;
    out["consistent"] = p.consistent;
    return out;
}

// |GL_n(F_p)| and the number of nilpotent n x n matrices, p^(n^2 - n).
std::optional<std::pair<std::uint64_t, std::uint64_t>> matrix_oracle(const std::string& name) {
    static const std::regex re(R"(M\((\d+),(\d+)\))");
    std::smatch m;
    if (!std::regex_match(name, m, re)) return std::nullopt;
    const std::uint64_t n = std::stoull(m[1]), p = std::stoull(m[2]);
    if (n > 4 || p > 251) return std::nullopt;
    std::uint64_t pn = 1;
    for (std::uint64_t i = 0; i < n; ++i) pn *= p;
    std::uint64_t gl = 1, pi = 1;
    for (std::uint64_t i = 0; i < n; ++i) {
        gl *= pn - pi;
        pi *= p;
    }
    std::uint64_t nil = 1;
    for (std::uint64_t i = 0; i < n * n - n; ++i) nil *= p;
    return std::pair{gl, nil};
}

bool certifies(const Element& a, const Element& u) { return is_unit(u) && a * u * a == a; }

void add_witness_checks(Checks& checks, const Element& a, const Element& u) {
    checks.add("witness.unit", is_unit(u));
    checks.add("witness.aua=a", a * u * a == a);
    checks.add("witness.inner_inverse_set", inner_inverse_set(a).contains(u));
}

Json chain_result(const TheoremChain& c, const Element& a) {
    const auto q = quotient(RightModule::regular(a.algebra()), principal_right_ideal(a));
    Json levels = Json::array();
    for (const auto& lv : c.levels)
        levels.push_back(Json{{"j", lv.j},
                              {"A", io::subspace_json(lv.a_part)},
                              {"A_prime", io::subspace_json(lv.a_prime)},
                              {"Y", io::subspace_json(lv.y)},
                              {"E", io::subspace_json(lv.e)},
                              {"iso", io::rows_json(lv.iso)}});
    return Json{{"theorem", static_cast<int>(c.variant)},
                {"levels", c.length()},
                {"kernel", io::subspace_json(c.kernel)},
                {"quotient_dim", q.module.dim()},
                {"chain", std::move(levels)},
                {"X_n", io::subspace_json(c.x(c.length()))},
                {"E_n", io::subspace_json(c.last().e)},
                {"Y_n_zero", c.last().y.is_zero()},
                {"dims", {{"K", c.kernel.dim()}, {"E_n", c.last().e.dim()}, {"R/aR", q.module.dim()}}}};
}

Checks chain_checks(const TheoremChain& c, bool canonical) {
    Checks checks;
    checks.merge(verify_chain(c, VerifyOptions{canonical}));
    return checks;
}

la::Subspace rref_subspace(const Json& rows, const la::PrimeField& f, std::size_t cols, const std::string& name,
                           Checks* checks) {
    const auto m = io::mat_from_json(rows, f, cols);
    auto s = la::Subspace::span(m);
    if (checks) checks->add(name + ".rref", s.basis() == m && s.dim() == m.rows());
    return s;
}

Element element_from(const Json& saved, const FiniteAlgebra& r) {
    if (!saved.contains("element")) throw Error(ErrorCode::ParseError, "report has no element");
    return r.element(io::vec_from_json(saved["element"].at("coords"), r.field(), r.dim()));
}

TheoremChain load_chain(const Json& result, const Element& a, Checks* checks) {
    const auto& r = a.algebra();
    const auto& f = r.field();
    const std::size_t n = r.dim();
    const int theorem = result.at("theorem").get<int>();
    if (theorem != 2 && theorem != 4) throw Error(ErrorCode::ParseError, "theorem must be 2 or 4");
    TheoremChain c{a, theorem == 2 ? ChainVariant::Exchange : ChainVariant::RegularPowers,
                   rref_subspace(result.at("kernel"), f, n, "kernel", checks), {}};
    const std::size_t qdim = result.at("quotient_dim").get<std::size_t>();
    for (const auto& lv : result.at("chain")) {
        ChainLevel level;
        level.j = lv.at("j").get<std::size_t>();
        const auto tag = "L" + std::to_string(level.j) + ".";
        level.a_part = rref_subspace(lv.at("A"), f, n, tag + "A", checks);
        level.a_prime = rref_subspace(lv.at("A_prime"), f, n, tag + "A_prime", checks);
        level.y = rref_subspace(lv.at("Y"), f, n, tag + "Y", checks);
        level.e = rref_subspace(lv.at("E"), f, n, tag + "E", checks);
        level.iso = io::mat_from_json(lv.at("iso"), f, qdim);
        c.levels.push_back(std::move(level));
    }
    return c;
}

Json verify_chain_report(const Json& saved, const Context& ctx, Checks& checks) {
    const auto a = element_from(saved, ctx.ring);
    if (saved.contains("error")) {
        const auto code = saved["error"].at("code").get<std::string>();
        const auto& res = saved.at("request");
        std::string got = "none";
        try {
            const auto levels = res.at("levels").get<std::size_t>();
            if (res.at("theorem").get<int>() == 2)
                theorem2_chain(a, levels);
            else
                theorem4_chain(a, levels);
        } catch (const Error& e) {
            got = to_string(e.code());
        }
        checks.add("error.reproduced", got == code, got);
        return Json{{"error", code}};
    }
    const auto& result = saved.at("result");
    const auto c = load_chain(result, a, &checks);
    checks.merge(verify_chain(c, VerifyOptions{true}));
    const auto& w = result.at("unit_witness");
    const bool nil_here = !c.levels.empty() && a.pow(c.length()).is_zero();
    checks.add("witness.present", w.is_null() != nil_here);
    if (!w.is_null()) add_witness_checks(checks, a, ctx.ring.element(io::vec_from_json(w.at("u"), ctx.ring.field(), ctx.ring.dim())));
    return Json{{"levels", c.length()}};
}

Json verify_classify_report(const Json& saved, const Context& ctx, Checks& checks) {
    const auto& r = ctx.ring;
    const auto& profiles = saved.at("result").at("profiles");
    checks.add("profiles.count", profiles.size() == r.size());
    std::uint64_t units = 0, nil = 0, reg = 0, ureg = 0, idem = 0, bad_witness = 0, bad_flags = 0;
    for (const auto& p : profiles) {
        const auto a = r.element(io::vec_from_json(p.at("coords"), r.field(), r.dim()));
        const bool unit = p.at("unit").get<bool>(), nilp = p.at("nilpotent").get<bool>();
        const bool regular = p.at("regular").get<bool>(), idempotent = p.at("idempotent").get<bool>();
        units += unit;
        nil += nilp;
        reg += regular;
        idem += idempotent;
        ureg += p.at("unit_regular").get<std::string>() == "yes";
        if (unit != is_unit(a) || idempotent != a.is_idempotent() || nilp != is_nilpotent(a) || regular != is_regular(a))
            ++bad_flags;
        if (!p.at("u").is_null() && !certifies(a, r.element(io::vec_from_json(p.at("u"), r.field(), r.dim()))))
            ++bad_witness;
        if (p.at("unit_regular").get<std::string>() == "yes" && p.at("u").is_null() && p.at("iso_route") != "yes")
            ++bad_witness;
    }
    const auto& counts = saved.at("result").at("counts");
    checks.add("counts.units", counts.at("units") == units);
    checks.add("counts.nilpotent", counts.at("nilpotent") == nil);
    checks.add("counts.regular", counts.at("regular") == reg);
    checks.add("counts.unit_regular", counts.at("unit_regular") == ureg);
    checks.add("counts.idempotents", counts.at("idempotents") == idem);
    checks.add("profiles.flags", bad_flags == 0, std::to_string(bad_flags));
    checks.add("profiles.witnesses", bad_witness == 0, std::to_string(bad_witness));
    checks.add("profiles.routes_agree", counts.at("route_disagreements") == 0);
    return Json{{"elements", profiles.size()}};
}

Json verify_split_report(const Json& saved, const Context& ctx, Checks& checks) {
    const auto a = element_from(saved, ctx.ring);
    const auto& r = ctx.ring;
    const auto& res = saved.at("result");
    const auto e = r.element(io::vec_from_json(res.at("e").at("coords"), r.field(), r.dim()));
    const auto m = res.at("m").get<std::uint64_t>();
    checks.add("e=a^m", a.pow(m) == e);
    checks.add("e^2=e", e.is_idempotent());
    checks.add("ae=ea", a * e == e * a);
    const auto f = r.one() - e;
    const auto ea = e * a, fa = f * a;
    const auto inv = r.element(io::vec_from_json(res.at("unit_part_inverse"), r.field(), r.dim()));
    checks.add("ea.unit_in_eRe", e * inv * e == inv && ea * inv == e && inv * ea == e);
    const auto idx = res.at("nil_part_index").get<std::uint64_t>();
    checks.add("(1-e)a.nilpotent", fa.pow(idx).is_zero() && f * fa * f == fa);
    checks.add("a=ea+(1-e)a", ea + fa == a);
    return Json{{"m", m}};
}

Json verify_sr1_report(const Json& saved, const Context& ctx, Checks& checks) {
    const auto& r = ctx.ring;
    const auto& res = saved.at("result");
    const bool holds = res.at("holds").get<bool>();
    checks.add("sr1.holds", holds);
    if (!holds) {
        const auto& ce = res.at("counterexample");
        const auto a = r.element(io::vec_from_json(ce.at("a").at("coords"), r.field(), r.dim()));
        const auto b = r.element(io::vec_from_json(ce.at("b").at("coords"), r.field(), r.dim()));
        const auto sum = la::Subspace::span(r.left_mult(a.coords())) + la::Subspace::span(r.left_mult(b.coords()));
        checks.add("counterexample.unimodular", sum.is_whole());
        checks.add("counterexample.no_unit", !stable_range_witness(a, b).has_value());
    } else {
        StableRangeOptions opts;
        opts.jobs = ctx.jobs;
        const auto again = stable_range_one(r, opts);
        checks.add("sr1.recomputed", again.holds && again.unimodular_pairs == res.at("unimodular_pairs").get<std::uint64_t>());
    }
    return Json{{"holds", holds}};
}

}  // namespace

Context make_context(io::RingSpec spec) {
    auto ring = spec.build();
    return Context{std::move(spec), std::move(ring), std::nullopt, 1};
}

Json describe(const Context& ctx, const std::optional<Element>& a) {
    const auto& r = ctx.ring;
    Json out = envelope("describe", ctx, a);
    Json named = Json::object();
    for (const auto& [name, coords] : r.table().named) named[name] = coords;
    Json gens = Json::array();
    for (auto g : r.generators()) gens.push_back(r.labels()[g]);
    bool commutative = true;
    for (std::size_t i = 0; i < r.dim() && commutative; ++i)
        for (std::size_t j = i + 1; j < r.dim() && commutative; ++j)
            commutative = r.basis(i) * r.basis(j) == r.basis(j) * r.basis(i);
    Json result{{"labels", r.labels()},
                {"one", io::element_json(r.one())},
                {"named", std::move(named)},
                {"generators", std::move(gens)},
                {"commutative", commutative},
                {"enumerable", r.enumerable()}};
    std::optional<ElementProfile> profile;
    if (a) {
        profile = profile_element(*a);
        result["profile"] = profile_json(*profile);
    }
    out["result"] = std::move(result);
    Checks checks;
    checks.add("ring.validated", true);
    if (profile) checks.add("profile.consistent", profile->consistent);
    out["verification"] = checks.json();
    return out;
}

Json classify(const Context& ctx) {
    const auto& r = ctx.ring;
    const auto profiles = classify_all(r, ctx.jobs);
    const auto s = summarize(profiles);
    Json list = Json::array();
    for (const auto& p : profiles) list.push_back(profile_json(p));
    Json out = envelope("classify", ctx, std::nullopt);
    out["result"] = Json{{"counts",
                          {{"elements", s.elements},
                           {"units", s.units},
                           {"idempotents", s.idempotents},
                           {"nilpotent", s.nilpotents},
                           {"regular", s.regular},
                           {"unit_regular", s.unit_regular},
                           {"unknown", s.unknown},
                           {"route_disagreements", s.route_disagreements},
                           {"inconsistent", s.inconsistent}}},
                         {"profiles", std::move(list)}};
    Checks checks;
    checks.add("profiles.consistent", s.inconsistent == 0, std::to_string(s.inconsistent));
    checks.add("profiles.routes_agree", s.route_disagreements == 0, std::to_string(s.route_disagreements));
    std::uint64_t bad = 0;
    for (const auto& p : profiles)
        if (p.unit_witness && !certifies(p.a, *p.unit_witness)) ++bad;
    checks.add("profiles.witnesses", bad == 0, std::to_string(bad));
    if (const auto oracle = matrix_oracle(ctx.spec.describe())) {
        checks.add("oracle.units=|GL_n|", s.units == oracle->first, std::to_string(oracle->first));
        checks.add("oracle.nilpotent=p^(n^2-n)", s.nilpotents == oracle->second, std::to_string(oracle->second));
        checks.add("oracle.all_unit_regular", s.unit_regular == s.elements);
    }
    out["verification"] = checks.json();
    return out;
}

Json split(const Context& ctx, const Element& a) {
    const auto d = idempotent_power_split(a);
    const auto inv = *try_inverse(d.unit_part);
    const auto nil = nilpotency_data(d.nil_part);
    Json out = envelope("split", ctx, a);
    auto corner = [](const CornerData& c) {
        return Json{{"dim", c.corner.dim()}, {"basis", io::rows_json(c.embed)}, {"degenerate", c.degenerate()}};
    };
    out["result"] = Json{{"m", d.m},
                         {"e", io::element_json(d.e)},
                         {"unit_corner", corner(d.unit_corner)},
                         {"nil_corner", corner(d.nil_corner)},
                         {"unit_part", io::element_json(d.unit_corner.to_ring(d.unit_part))},
                         {"unit_part_inverse", io::vec_json(d.unit_corner.to_ring(inv).coords())},
                         {"nil_part", io::element_json(d.nil_corner.to_ring(d.nil_part))},
                         {"nil_part_index", nil.nilpotency_index ? *nil.nilpotency_index : 0}};
    Checks checks;
    const auto ea = d.unit_corner.to_ring(d.unit_part), fa = d.nil_corner.to_ring(d.nil_part);
    checks.add("e^2=e", d.e.is_idempotent());
    checks.add("ae=ea", a * d.e == d.e * a);
    checks.add("ea.unit_in_eRe", d.unit_part * inv == d.unit_corner.corner.one());
    checks.add("(1-e)a.nilpotent", nil.nilpotency_index.has_value());
    checks.add("a=ea+(1-e)a", ea + fa == a);
    checks.add("peirce.dims", d.unit_corner.corner.dim() + d.nil_corner.corner.dim() +
                                      sandwich_span(d.e, a.algebra().one() - d.e).dim() +
                                      sandwich_span(a.algebra().one() - d.e, d.e).dim() ==
                                  a.algebra().dim());
    out["verification"] = checks.json();
    return out;
}

Json chain(const Context& ctx, const Element& a, int theorem, std::size_t levels) {
    if (theorem != 2 && theorem != 4) throw Error(ErrorCode::OutOfRange, "theorem must be 2 or 4");
    Json out = envelope("chain", ctx, a);
    out["request"] = Json{{"theorem", theorem}, {"levels", levels}};
    try {
        const auto c = theorem == 2 ? theorem2_chain(a, levels) : theorem4_chain(a, levels);
        auto result = chain_result(c, a);
        auto checks = chain_checks(c, false);
        if (a.pow(c.length()).is_zero()) {
            const auto w = unit_witness(c);
            result["unit_witness"] = Json{{"u", io::vec_json(w.u.coords())},
                                          {"text", to_string(w.u)},
                                          {"aua_equals_a", w.inner_inverse_check},
                                          {"in_inner_inverse_set", w.in_inner_inverse_set},
                                          {"iso_used", io::rows_json(w.iso_used.matrix())}};
            add_witness_checks(checks, a, w.u);
        } else {
            result["unit_witness"] = nullptr;
        }
        out["result"] = std::move(result);
        out["verification"] = checks.json();
    } catch (const Error& e) {
        switch (e.code()) {
            case ErrorCode::NotRegular:
            case ErrorCode::PowersNotRegular:
            case ErrorCode::NotNilpotentAtThisLevel:
            case ErrorCode::VerificationFailure:
            case ErrorCode::NotASummand:
                out["error"] = Json{{"code", to_string(e.code())}, {"message", e.detail()}};
                out["verification"] = Json{{"passed", false}, {"checks", Json::array()}};
                break;
            default: throw;
        }
    }
    return out;
}

Json sr1(const Context& ctx) {
    StableRangeOptions opts;
    opts.jobs = ctx.jobs;
    const auto s = stable_range_one(ctx.ring, opts);
    Json out = envelope("sr1", ctx, std::nullopt);
    Json ce = nullptr;
    if (s.counterexample)
        ce = Json{{"a", io::element_json(s.counterexample->first)}, {"b", io::element_json(s.counterexample->second)}};
    out["result"] = Json{{"holds", s.holds},
                         {"pairs", s.pairs},
                         {"unimodular_pairs", s.unimodular_pairs},
                         {"units", s.units},
                         {"distinct_right_ideals", s.distinct_right_ideals},
                         {"counterexample", ce}};
    Checks checks;
    checks.add("sr1.holds", s.holds);
    out["verification"] = checks.json();
    return out;
}

Json failure(const std::string& command, const Context* ctx, const Error& e) {
    Json out{{"tool", "ringlab"}, {"format", kFormat}, {"command", command}};
    if (ctx) out["ring"] = ring_json(*ctx);
    out["error"] = Json{{"code", to_string(e.code())}, {"message", e.detail()}};
    out["verification"] = Json{{"passed", false}, {"checks", Json::array()}};
    return out;
}

Json verify(const Json& saved) {
    if (!saved.is_object() || saved.value("tool", "") != "ringlab")
        throw Error(ErrorCode::ParseError, "not a ringlab report");
    const auto command = saved.at("command").get<std::string>();
    auto ctx = make_context(io::ring_spec_from_json(saved.at("ring").at("spec")));
    Checks checks;
    checks.add("ring.hash", saved.at("ring").at("hash") == ctx.ring.fingerprint());
    Json summary;
    try {
        if (command == "chain")
            summary = verify_chain_report(saved, ctx, checks);
        else if (command == "classify")
            summary = verify_classify_report(saved, ctx, checks);
        else if (command == "split")
            summary = verify_split_report(saved, ctx, checks);
        else if (command == "sr1")
            summary = verify_sr1_report(saved, ctx, checks);
        else if (command == "describe")
            summary = Json::object();
        else
            throw Error(ErrorCode::ParseError, "cannot verify a '" + command + "' report");
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("malformed report: ") + e.what());
    }
    Json out{{"tool", "ringlab"}, {"format", kFormat}, {"command", "verify"}, {"verified_command", command},
             {"ring", ring_json(ctx)}, {"result", summary}};
    out["verification"] = checks.json();
    return out;
}

bool passed(const Json& report) {
    return report.contains("verification") && report["verification"].value("passed", false);
}

Json without_timing(const Json& report) {
    if (report.is_object()) {
        Json out = Json::object();
        for (const auto& [k, v] : report.items())
            if (k != "timing") out[k] = without_timing(v);
        return out;
    }
    if (report.is_array()) {
        Json out = Json::array();
        for (const auto& v : report) out.push_back(without_timing(v));
        return out;
    }
    return report;
}

TheoremChain chain_from_json(const Json& result, const Element& a) { return load_chain(result, a, nullptr); }

}  // namespace ringlab::report
