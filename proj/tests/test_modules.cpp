#include <doctest.h>

#include <algorithm>
#include <random>

#include "ringlab/error.hpp"
#include "ringlab/modules.hpp"

using namespace ringlab;

namespace {

std::vector<Element> idempotents(const FiniteAlgebra& r) {
    std::vector<Element> out;
    for (const auto& x : r.elements())
        if (x.is_idempotent()) out.push_back(x);
    return out;
}

// Brute force: every linear map M -> N (as a matrix) commuting with the action.
std::uint64_t count_homs(const RightModule& m, const RightModule& n) {
    const auto& f = m.field();
    const std::size_t entries = m.dim() * n.dim();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < entries; ++i) total *= f.modulus();
    std::uint64_t count = 0;
    for (std::uint64_t code = 0; code < total; ++code) {
        std::vector<Residue> v(entries);
        auto c = code;
        for (auto& x : v) {
            x = static_cast<Residue>(c % f.modulus());
            c /= f.modulus();
        }
        if (ModuleMap(m, n, la::Mat(f, m.dim(), n.dim(), v)).is_homomorphism()) ++count;
    }
    return count;
}

std::uint64_t power(std::uint64_t p, std::size_t k) {
    std::uint64_t out = 1;
    while (k--) out *= p;
    return out;
}

}  // namespace

TEST_SUITE("modules") {
    TEST_CASE("regular module respects the algebra") {
        for (const char* name : {"M(2,2)", "T(3,2)", "FpC(3,3)", "prod(M(2,2),T(2,2))"}) {
            const auto r = catalog(name);
            CHECK(RightModule::regular(r).respects_algebra());
        }
    }

    TEST_CASE("annihilators, principal ideals and quotients") {
        const auto m2 = catalog("M(2,2)");
        const auto e12 = m2.basis(1);
        const auto k = right_annihilator(e12);
        const auto ar = principal_right_ideal(e12);
        // e12 R = span{e11, e12} and r(e12) = span{e11, e12}
        CHECK(k.dim() == 2);
        CHECK(ar.dim() == 2);
        CHECK(k == ar);
        for (const auto& x : m2.elements()) CHECK(k.space().contains(x.coords()) == (e12 * x).is_zero());
        const auto q = quotient(RightModule::regular(m2), ar);
        CHECK(q.module.dim() == 2);
        CHECK(q.module.respects_algebra());
        CHECK(q.projection.is_homomorphism());
        CHECK(q.kernel == ar);
    }

    TEST_CASE("submodule closure is enforced") {
        const auto t2 = catalog("T(2,2)");
        const auto rr = RightModule::regular(t2);
        // span{e12} is a right ideal of T_2, span{e11} is not
        CHECK_NOTHROW(Submodule(rr, la::Subspace::span(t2.field(), 3, {t2.basis(1).coords()})));
        CHECK_THROWS_AS(Submodule(rr, la::Subspace::span(t2.field(), 3, {t2.basis(0).coords()})), Error);
        const auto gen = Submodule::generated_by(rr, {t2.basis(0).coords()});
        CHECK(gen.dim() == 2);
    }

    TEST_CASE("hom space dimension equals dim fRe for eR -> fR") {
        for (const char* name : {"M(2,2)", "T(2,2)", "T(3,2)", "FpC(2,3)"}) {
            const auto r = catalog(name);
            const auto idem = idempotents(r);
            for (const auto& e : idem)
                for (const auto& f : idem) {
                    const auto me = principal_right_ideal(e).as_module();
                    const auto mf = principal_right_ideal(f).as_module();
                    const auto basis = hom_basis(me, mf);
                    CHECK(basis.size() == sandwich_span(f, e).dim());
                    for (const auto& h : basis) CHECK(h.is_homomorphism());
                }
        }
    }

    TEST_CASE("hom space dimension against brute force") {
        const auto t2 = catalog("T(2,2)");
        const auto rr = RightModule::regular(t2);
        const auto e11 = principal_right_ideal(t2.basis(0)).as_module();
        const auto e22 = principal_right_ideal(t2.basis(2)).as_module();
        const auto q = quotient(rr, principal_right_ideal(t2.basis(1))).module;
        for (const auto* pair : {&e11, &e22, &q}) {
            for (const auto* other : {&e11, &e22, &q}) {
                const auto count = count_homs(*pair, *other);
                CHECK(count == power(2, hom_basis(*pair, *other).size()));
            }
        }
    }

    TEST_CASE("isomorphism search") {
        const auto m2 = catalog("M(2,2)");
        const auto a = principal_right_ideal(m2.basis(0)).as_module();  // e11 R
        const auto b = principal_right_ideal(m2.basis(3)).as_module();  // e22 R
        const auto iso = find_isomorphism(a, b);
        REQUIRE(iso.status == IsoStatus::Found);
        CHECK(iso.map->is_isomorphism());

        const auto t2 = catalog("T(2,2)");
        const auto s1 = principal_right_ideal(t2.basis(1)).as_module();          // e12 R = span{e12}
        const auto s2 = principal_right_ideal(t2.basis(2)).as_module();          // e22 R = span{e22}
        CHECK(find_isomorphism(s1, s2).status == IsoStatus::Found);                // both simple with e22 acting as 1
        const auto upper = Submodule::generated_by(RightModule::regular(t2), {t2.basis(1).coords(), t2.basis(2).coords()});
        const auto top = quotient(RightModule::regular(t2), upper).module;
        CHECK(find_isomorphism(s1, top).status == IsoStatus::None);                 // e11 acts as 1 on the top
        CHECK(find_isomorphism(s1, RightModule::regular(t2)).status == IsoStatus::None);
    }

    TEST_CASE("complements and projective splitting") {
        const auto m2 = catalog("M(2,2)");
        const auto rr = RightModule::regular(m2);
        const auto a = principal_right_ideal(m2.basis(0));
        const auto c = complement(rr, a);
        REQUIRE(c);
        CHECK(la::is_internal_direct_sum({a.space(), c->space()}));

        const auto t2 = catalog("T(2,2)");
        const auto soc = principal_right_ideal(t2.basis(1));
        CHECK_FALSE(complement(RightModule::regular(t2), soc));  // e12 T is not a summand

        // A = e11 R, B = R: C = complement, D = A
        const auto split = lemma3_split(rr, a, Submodule::whole(rr));
        CHECK(la::is_internal_direct_sum({a.space(), split.c.space()}));
        CHECK(split.d == a);
    }

    TEST_CASE("projective splitting on random instances") {
        std::mt19937_64 rng(21);
        for (const char* name : {"M(2,2)", "T(3,2)", "prod(M(2,2),T(2,2))", "M(2,3)", "FpC(6,2)"}) {
            const auto r = catalog(name);
            const auto rr = RightModule::regular(r);
            const auto idem = idempotents(r);
            for (int t = 0; t < 60; ++t) {
                const auto& e = idem[rng() % idem.size()];
                const auto a = principal_right_ideal(e);
                const auto c0 = *complement(rr, a);
                std::vector<Vec> gens;
                for (const auto& v : c0.basis().row_list())
                    gens.push_back((r.element(v) + e * r.element_at(rng() % r.size())).coords());
                gens.push_back(r.element_at(rng() % r.size()).coords());
                const auto b = Submodule::generated_by(rr, gens);
                REQUIRE(a + b == Submodule::whole(rr));
                const auto s = lemma3_split(rr, a, b);
                CHECK(b.contains(s.c));
                CHECK(la::is_internal_direct_sum({a.space(), s.c.space()}));
                CHECK(s.c + s.d == b);
                CHECK(s.c.intersect(s.d).is_zero());
            }
        }
    }

    TEST_CASE("indecomposable summands") {
        const auto m2 = catalog("M(2,2)");
        const auto dec = indecomposable_summands(RightModule::regular(m2));
        CHECK(dec.parts.size() == 2);
        CHECK(dec.verify());
        for (const auto& part : dec.parts) {
            CHECK(part.dim() == 2);
            const auto scan = scan_endomorphisms(part.as_module());
            CHECK_FALSE(scan.idempotent);
            CHECK(scan.local);
        }

        const auto t3 = catalog("T(3,2)");
        const auto dt = indecomposable_summands(RightModule::regular(t3));
        CHECK(dt.parts.size() == 3);
        std::vector<std::size_t> dims;
        for (const auto& p : dt.parts) dims.push_back(p.dim());
        std::sort(dims.begin(), dims.end());
        CHECK(dims == std::vector<std::size_t>{1, 2, 3});

        const auto local = catalog("FpC(4,2)");  // F_2[x]/(x^4), local
        CHECK(indecomposable_summands(RightModule::regular(local)).parts.size() == 1);
    }

    TEST_CASE("exchange step") {
        std::mt19937_64 rng(22);
        for (const char* name : {"M(2,2)", "T(3,2)", "prod(M(2,2),T(2,2))", "M(3,2)"}) {
            const auto r = catalog(name);
            const auto rr = RightModule::regular(r);
            const auto idem = idempotents(r);
            for (int t = 0; t < 25; ++t) {
                const auto& e = idem[rng() % idem.size()];
                const auto& g = idem[rng() % idem.size()];
                const auto m = principal_right_ideal(e);
                const auto a1 = principal_right_ideal(g);
                const auto a2 = principal_right_ideal(r.one() - g);
                const auto res = exchange_step(rr, m, Submodule::zero(rr), {a1, a2});
                REQUIRE(res.kept.size() == 2);
                CHECK(la::is_internal_direct_sum({m.space(), res.kept[0].space(), res.kept[1].space()}));
                CHECK(la::is_independent({res.kept[0].space(), res.given[0].space()}));
                CHECK(res.kept[0] + res.given[0] == a1);
                CHECK(res.kept[1] + res.given[1] == a2);
            }
        }
    }

    TEST_CASE("direct sum projections") {
        const auto f = la::PrimeField(3);
        const auto a = la::Subspace::span(f, 2, {{1, 0}});
        const auto b = la::Subspace::span(f, 2, {{1, 1}});
        const auto p = direct_sum_projections({a, b});
        CHECK(p[0] + p[1] == la::Mat::identity(f, 2));
        CHECK(p[0] * p[0] == p[0]);
        CHECK(la::vec_mat(Vec{0, 1}, p[0]) == Vec{2, 0});
    }
}
