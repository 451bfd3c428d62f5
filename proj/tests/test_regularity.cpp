#include <doctest.h>

#include <set>

#include "ringlab/error.hpp"
#include "ringlab/regularity.hpp"

using namespace ringlab;

namespace {

const char* const kSmall[] = {"M(2,2)", "T(2,2)", "T(3,2)", "T(2,3)", "FpC(2,2)", "FpC(4,2)", "FpC(3,3)",
                              "prod(T(2,2),T(2,2))", "M(2,3)"};

std::set<Vec> right_ideal_set(const Element& a) {
    std::set<Vec> out;
    for (const auto& x : a.algebra().elements()) out.insert((a * x).coords());
    return out;
}

std::set<Vec> left_ideal_set(const Element& a) {
    std::set<Vec> out;
    for (const auto& x : a.algebra().elements()) out.insert((x * a).coords());
    return out;
}

std::uint64_t brute_inner_inverses(const Element& a) {
    std::uint64_t n = 0;
    for (const auto& x : a.algebra().elements()) n += a * x * a == a;
    return n;
}

bool brute_unit_regular(const Element& a) {
    for (const auto& u : a.algebra().elements())
        if (is_unit(u) && a * u * a == a) return true;
    return false;
}

std::uint64_t brute_spr_index(const Element& a) {
    for (std::uint64_t n = 0;; ++n) {
        const auto x = a.pow(n), y = a.pow(n + 1);
        if (right_ideal_set(x).size() == right_ideal_set(y).size() && left_ideal_set(x).size() == left_ideal_set(y).size())
            return n;
    }
}

bool brute_unimodular(const Element& a, const Element& b) {
    const auto ar = right_ideal_set(a), br = right_ideal_set(b);
    const auto& r = a.algebra();
    for (const auto& s : ar)
        if (br.count((r.one() - r.element(s)).coords())) return true;
    return false;
}

}  // namespace

TEST_SUITE("regularity") {
    TEST_CASE("inner inverses of e12 in M(2,2)") {
        const auto m2 = catalog("M(2,2)");
        const auto e12 = m2.basis(1);
        const auto set = inner_inverse_set(e12);
        REQUIRE(set.regular());
        CHECK(set.count() == 8);
        CHECK(brute_inner_inverses(e12) == 8);
        CHECK(e12 * set.first() * e12 == e12);
        for (const auto& x : m2.elements()) CHECK(set.contains(x) == (e12 * x * e12 == e12));
    }

    TEST_CASE("inner inverse sets agree with brute force") {
        for (const char* name : kSmall) {
            const auto r = catalog(name);
            CAPTURE(name);
            for (const auto& a : r.elements()) {
                const auto set = inner_inverse_set(a);
                const auto brute = brute_inner_inverses(a);
                CHECK(set.count() == brute);
                CHECK(set.regular() == (brute > 0));
                CHECK(is_regular(a) == (brute > 0));
            }
        }
    }

    TEST_CASE("non-regular elements") {
        const auto t2 = catalog("T(2,2)");
        CHECK_FALSE(is_regular(t2.basis(1)));
        const auto c4 = catalog("FpC(4,2)");
        CHECK_FALSE(is_regular(c4.one() + c4.basis(1)));  // 1+g is nilpotent and nonzero
        CHECK(inner_inverse_set(t2.basis(1)).count() == 0);
    }

    TEST_CASE("unit-regularity certificates agree with brute force") {
        for (const char* name : kSmall) {
            const auto r = catalog(name);
            CAPTURE(name);
            for (const auto& a : r.elements()) {
                const auto cert = unit_regular_certificate(a);
                const bool brute = brute_unit_regular(a);
                CHECK(cert.status == (brute ? Verdict::Yes : Verdict::No));
                CHECK(cert.routes_agree());
                if (cert.u) {
                    CHECK(is_unit(*cert.u));
                    CHECK(a * *cert.u * a == a);
                }
                if (cert.iso_evidence) CHECK(cert.iso_evidence->is_isomorphism());
            }
        }
    }

    TEST_CASE("powers and nilpotency") {
        for (std::size_t n : {2u, 3u, 4u}) {
            const auto r = matrix_algebra(n, 2);
            const auto j = *r.named("J");
            CHECK(nilpotency_data(j).nilpotency_index == n);
            CHECK(is_nilpotent(j));
        }
        const auto m2 = catalog("M(2,2)");
        const auto swap = m2.basis(1) + m2.basis(2);
        const auto pd = nilpotency_data(swap);
        CHECK_FALSE(pd.nilpotency_index);
        CHECK(swap.pow(pd.cycle_start) == swap.pow(pd.cycle_end));
        CHECK(nilpotency_data(m2.zero()).nilpotency_index == 1u);
    }

    TEST_CASE("strongly pi-regular index agrees with brute force") {
        for (const char* name : kSmall) {
            const auto r = catalog(name);
            CAPTURE(name);
            for (const auto& a : r.elements()) CHECK(strongly_pi_regular_index(a) == brute_spr_index(a));
        }
        const auto m3 = catalog("M(3,2)");
        CHECK(strongly_pi_regular_index(*m3.named("J")) == 3);
        CHECK(strongly_pi_regular_index(m3.one()) == 0);
    }

    TEST_CASE("idempotent power split") {
        const auto m3 = catalog("M(3,2)");
        const auto j = idempotent_power_split(*m3.named("J"));
        CHECK(j.m == 3);
        CHECK(j.e.is_zero());
        CHECK(j.unit_corner.degenerate());

        const auto m2 = catalog("M(2,2)");
        const auto s = idempotent_power_split(m2.basis(1) + m2.basis(2));
        CHECK(s.m == 2);
        CHECK(s.e == m2.one());
        CHECK(is_unit(s.unit_part));

        for (const char* name : kSmall) {
            const auto r = catalog(name);
            CAPTURE(name);
            for (const auto& a : r.elements()) {
                const auto d = idempotent_power_split(a);
                CHECK(d.e.is_idempotent());
                CHECK(d.e == a.pow(d.m));
                for (std::uint64_t k = 1; k < d.m; ++k) CHECK_FALSE(a.pow(k).is_idempotent());
                CHECK(d.e * a == a * d.e);
                if (!d.unit_corner.degenerate()) CHECK(is_unit(d.unit_part));
                if (!d.nil_corner.degenerate()) CHECK(is_nilpotent(d.nil_part));
                const auto back = (d.unit_corner.degenerate() ? r.zero() : d.unit_corner.to_ring(d.unit_part)) +
                                  (d.nil_corner.degenerate() ? r.zero() : d.nil_corner.to_ring(d.nil_part));
                CHECK(back == a);
            }
        }
    }

    TEST_CASE("all powers regular") {
        const auto m3 = catalog("M(3,2)");
        CHECK(all_powers_regular(*m3.named("J")).all_regular);
        const auto t2 = catalog("T(2,2)");
        const auto pr = all_powers_regular(t2.basis(1));
        CHECK_FALSE(pr.all_regular);
        CHECK(pr.first_failure == 1u);
        const auto c4 = catalog("FpC(4,2)");
        const auto x = c4.one() + c4.basis(1);  // x^2 = 1 + g^2 is not regular either, x^4 = 0
        CHECK(all_powers_regular(x).first_failure == 1u);
        CHECK(all_powers_regular(x.pow(2)).first_failure == 1u);
        CHECK(all_powers_regular(x.pow(4)).all_regular);
    }

    TEST_CASE("stable range one agrees with brute force") {
        for (const char* name : {"M(2,2)", "T(2,2)", "T(2,3)", "FpC(2,2)", "FpC(3,2)", "FpC(2,3)"}) {
            const auto r = catalog(name);
            CAPTURE(name);
            std::uint64_t unimodular = 0;
            const auto all = r.elements();
            for (const auto& a : all)
                for (const auto& b : all) {
                    if (!brute_unimodular(a, b)) continue;
                    ++unimodular;
                    const auto y = stable_range_witness(a, b);
                    REQUIRE(y);
                    CHECK(is_unit(a + b * *y));
                }
            const auto res = stable_range_one(r);
            CHECK(res.holds);
            CHECK(res.pairs == r.size() * r.size());
            CHECK(res.unimodular_pairs == unimodular);
            CHECK_FALSE(res.counterexample);
            StableRangeOptions par;
            par.jobs = 3;
            const auto res3 = stable_range_one(r, par);
            CHECK(res3.unimodular_pairs == res.unimodular_pairs);
            CHECK(res3.holds);
        }
    }

    TEST_CASE("stable range fault injection is detected") {
        const auto m2 = catalog("M(2,2)");
        StableRangeOptions opts;
        opts.unit_admissible = [](const Element& u) { return u.is_one(); };
        const auto res = stable_range_one(m2, opts);
        CHECK_FALSE(res.holds);
        REQUIRE(res.counterexample);
        const auto& [a, b] = *res.counterexample;
        CHECK(brute_unimodular(a, b));
        for (const auto& y : m2.elements()) CHECK_FALSE((a + b * y).is_one());
    }

    TEST_CASE("classification counts") {
        const auto m2 = catalog("M(2,2)");
        const auto s = summarize(classify_all(m2, 2));
        CHECK(s.elements == 16);
        CHECK(s.units == 6);
        CHECK(s.idempotents == 8);
        CHECK(s.nilpotents == 4);
        CHECK(s.regular == 16);
        CHECK(s.unit_regular == 16);
        CHECK(s.route_disagreements == 0);
        CHECK(s.inconsistent == 0);

        for (const char* name : kSmall) {
            const auto r = catalog(name);
            CAPTURE(name);
            const auto profiles = classify_all(r, 2);
            const auto sum = summarize(profiles);
            std::uint64_t units = 0, idem = 0, nil = 0, reg = 0, ureg = 0;
            for (const auto& a : r.elements()) {
                units += is_unit(a);
                idem += a.is_idempotent();
                nil += nilpotency_data(a).nilpotency_index.has_value();
                reg += brute_inner_inverses(a) > 0;
                ureg += brute_unit_regular(a);
            }
            CHECK(sum.units == units);
            CHECK(sum.idempotents == idem);
            CHECK(sum.nilpotents == nil);
            CHECK(sum.regular == reg);
            CHECK(sum.unit_regular == ureg);
            CHECK(sum.unknown == 0);
            for (const auto& p : profiles) {
                CHECK(p.consistent);
                CHECK(p.dim_image + p.dim_annihilator == r.dim());
                if (p.unit_witness) CHECK(p.a * *p.unit_witness * p.a == p.a);
            }
        }
    }
}
