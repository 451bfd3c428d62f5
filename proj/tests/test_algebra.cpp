#include <doctest.h>

#include "ringlab/algebra.hpp"
#include "ringlab/error.hpp"

using namespace ringlab;

namespace {

// |GL_n(F_p)| = prod_{i<n} (p^n - p^i)
std::uint64_t gl_order(std::uint64_t n, std::uint64_t p) {
    std::uint64_t pn = 1, out = 1, pi = 1;
    for (std::uint64_t i = 0; i < n; ++i) pn *= p;
    for (std::uint64_t i = 0; i < n; ++i, pi *= p) out *= pn - pi;
    return out;
}

AlgebraTable group_algebra_c2_table() {
    AlgebraTable t;
    t.p = 2;
    t.dim = 2;
    t.one = {1, 0};
    // 1*1 = 1, 1*g = g, g*1 = g, g*g = 1
    t.mul = {1, 0, 0, 1, 0, 1, 1, 0};
    return t;
}

}  // namespace

TEST_SUITE("algebra") {
    TEST_CASE("presets") {
        const auto m2 = catalog("M(2,2)");
        CHECK(m2.dim() == 4);
        CHECK(m2.one() == m2.basis(0) + m2.basis(3));
        CHECK(catalog("T(2,2)").dim() == 3);
        const auto m3 = catalog("M(3,2)");
        CHECK(m3.dim() == 9);
        CHECK(m3.size() == 512);
        const auto c2 = catalog("FpC(2,2)");
        CHECK(c2.dim() == 2);
        CHECK(c2.labels() == std::vector<std::string>{"1", "g"});
        CHECK(c2.basis(1) * c2.basis(1) == c2.one());
        const auto pr = catalog("prod(M(2,2),T(2,2))");
        CHECK(pr.dim() == 7);
        CHECK(pr.preset() == "prod(M(2,2),T(2,2))");
        CHECK(catalog(" M( 2 , 3 ) ").preset() == "M(2,3)");
    }

    TEST_CASE("catalog errors") {
        CHECK_THROWS_AS(catalog("X(2,2)"), Error);
        CHECK_THROWS_AS(catalog("M(2,4)"), Error);
        CHECK_THROWS_AS(catalog("M(0,2)"), Error);
        CHECK_THROWS_AS(catalog("M(2,2"), Error);
        CHECK_THROWS_AS(catalog("prod(M(2,2),M(2,3))"), Error);
        try {
            catalog("M(2,4)");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::NonPrimeModulus);
        }
    }

    TEST_CASE("every standard preset satisfies the algebra axioms") {
        for (const auto& name : standard_presets()) {
            const auto r = catalog(name);
            CAPTURE(name);
            const std::size_t d = r.dim();
            if (d > 16) continue;
            for (std::size_t i = 0; i < d; ++i) {
                CHECK(r.one() * r.basis(i) == r.basis(i));
                CHECK(r.basis(i) * r.one() == r.basis(i));
                for (std::size_t j = 0; j < d; ++j)
                    for (std::size_t k = 0; k < d; ++k)
                        CHECK((r.basis(i) * r.basis(j)) * r.basis(k) == r.basis(i) * (r.basis(j) * r.basis(k)));
            }
            CHECK(FiniteAlgebra::build(r.table()).fingerprint() == r.fingerprint());
        }
    }

    TEST_CASE("build rejects bad tables") {
        auto t = group_algebra_c2_table();
        CHECK(FiniteAlgebra::build(t).fingerprint() == catalog("FpC(2,2)").fingerprint());

        AlgebraTable f4;  // F_4 = F_2[w]/(w^2 + w + 1)
        f4.p = 2;
        f4.dim = 2;
        f4.one = {1, 0};
        f4.mul = {1, 0, 0, 1, 0, 1, 1, 1};
        CHECK_NOTHROW(FiniteAlgebra::build(f4));

        // x*x = y, y*x = 0, x*y = x, unit e
        AlgebraTable nonassoc;
        nonassoc.p = 3;
        nonassoc.dim = 3;
        nonassoc.one = {1, 0, 0};
        nonassoc.mul.assign(27, 0);
        auto set = [&](std::size_t i, std::size_t j, std::size_t k) { nonassoc.mul[(i * 3 + j) * 3 + k] = 1; };
        for (std::size_t i = 0; i < 3; ++i) {
            set(0, i, i);
            set(i, 0, i);
        }
        set(1, 1, 2);
        set(1, 2, 1);
        try {
            FiniteAlgebra::build(nonassoc);
            FAIL("expected AssociativityViolation");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::AssociativityViolation);
        }

        auto unit = t;
        unit.one = {0, 1};
        try {
            FiniteAlgebra::build(unit);
            FAIL("expected UnitViolation");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::UnitViolation);
        }

        auto prime = t;
        prime.p = 4;
        CHECK_THROWS_AS(FiniteAlgebra::build(prime), Error);

        auto shape = t;
        shape.mul.pop_back();
        CHECK_THROWS_AS(FiniteAlgebra::build(shape), Error);
    }

    TEST_CASE("arithmetic") {
        const auto m2 = catalog("M(2,2)");
        const auto e11 = m2.basis(0), e12 = m2.basis(1), e21 = m2.basis(2);
        CHECK(e12 * e21 == e11);
        const auto m3 = catalog("M(3,2)");
        const auto j = *m3.named("J");
        CHECK(to_string(j) == "e12+e23");
        CHECK(j.pow(2) == m3.basis(2));
        CHECK(j.pow(3).is_zero());
        CHECK(j.pow(0) == m3.one());
        CHECK(to_string(m2.zero()) == "0");
        const auto m23 = catalog("M(2,3)");
        CHECK(to_string(Residue{2} * m23.basis(1)) == "2*e12");
        CHECK(-m23.basis(1) == Residue{2} * m23.basis(1));
        CHECK_THROWS_AS(e11 * m3.basis(0), Error);
    }

    TEST_CASE("inverses and unit counts") {
        const auto m2 = catalog("M(2,2)");
        CHECK(try_inverse(m2.one()) == m2.one());
        CHECK_FALSE(try_inverse(m2.basis(1)));
        const auto swap = m2.basis(1) + m2.basis(2);
        CHECK(try_inverse(swap) == swap);
        for (const auto& [name, n, p] : std::vector<std::tuple<std::string, int, int>>{
                 {"M(2,2)", 2, 2}, {"M(3,2)", 3, 2}, {"M(2,3)", 2, 3}, {"M(2,5)", 2, 5}}) {
            const auto r = catalog(name);
            std::uint64_t units = 0;
            for (const auto& x : r.elements()) {
                const auto inv = try_inverse(x);
                CHECK(inv.has_value() == is_unit(x));
                if (inv) {
                    CHECK(x * *inv == r.one());
                    CHECK(*inv * x == r.one());
                }
                units += inv.has_value();
            }
            CHECK(units == gl_order(n, p));
        }
        CHECK(gl_order(2, 2) == 6);
        CHECK(gl_order(3, 2) == 168);
    }

    TEST_CASE("corner algebras") {
        const auto m2 = catalog("M(2,2)");
        const auto one = corner_algebra(m2.one());
        CHECK(one.corner.dim() == 4);
        const auto c11 = corner_algebra(m2.basis(0));
        CHECK(c11.corner.dim() == 1);
        CHECK(c11.to_ring(c11.corner.one()) == m2.basis(0));
        const auto zero = corner_algebra(m2.zero());
        CHECK(zero.degenerate());
        CHECK_THROWS_AS(corner_algebra(m2.basis(1)), Error);
    }

    TEST_CASE("corner embedding is multiplicative and Peirce dimensions add up") {
        for (const char* name : {"M(2,2)", "T(3,2)", "prod(M(2,2),T(2,2))", "FpC(6,2)", "T(2,3)"}) {
            const auto r = catalog(name);
            CAPTURE(name);
            for (const auto& e : r.elements()) {
                if (!e.is_idempotent()) continue;
                const auto f = r.one() - e;
                const auto ce = corner_algebra(e), cf = corner_algebra(f);
                CHECK(ce.corner.dim() + cf.corner.dim() + sandwich_span(e, f).dim() + sandwich_span(f, e).dim() == r.dim());
                if (!ce.degenerate()) CHECK(ce.to_ring(ce.corner.one()) == e);
                for (std::size_t i = 0; i < ce.corner.dim(); ++i)
                    for (std::size_t j = 0; j < ce.corner.dim(); ++j) {
                        const auto x = ce.corner.basis(i), y = ce.corner.basis(j);
                        CHECK(ce.to_ring(x * y) == ce.to_ring(x) * ce.to_ring(y));
                    }
                for (std::size_t k = 0; k < r.dim(); ++k) {
                    const auto ere = e * r.basis(k) * e;
                    CHECK(ce.to_ring(ce.to_corner(r.basis(k))) == ere);
                }
            }
        }
    }

    TEST_CASE("enumeration") {
        const auto t = catalog("T(2,3)");
        CHECK(t.size() == 27);
        for (std::uint64_t i = 0; i < t.size(); ++i) CHECK(t.index_of(t.element_at(i)) == i);
        CHECK(catalog("M(4,2)").enumerable());
        CHECK_FALSE(catalog("M(5,2)").enumerable());
    }
}
