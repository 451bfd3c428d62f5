#include <doctest.h>

#include <random>

#include "ringlab/error.hpp"
#include "ringlab/exactla.hpp"

using namespace ringlab;
using namespace ringlab::la;

namespace {

Mat random_mat(const PrimeField& f, std::size_t r, std::size_t c, std::mt19937_64& rng, int zero_bias = 0) {
    std::uniform_int_distribution<std::uint32_t> d(0, f.modulus() - 1 + static_cast<std::uint32_t>(zero_bias));
    Mat m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            const auto v = d(rng);
            m(i, j) = v >= f.modulus() ? 0 : static_cast<Residue>(v);
        }
    return m;
}

// Column-vector product A x.
Vec apply(const Mat& a, const Vec& x) { return vec_mat(x, a.transpose()); }

bool is_rref(const Mat& m) {
    std::size_t last = 0;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::size_t c = 0;
        while (c < m.cols() && m(r, c) == 0) ++c;
        if (c == m.cols()) return false;
        if (r > 0 && c <= last) return false;
        if (m(r, c) != 1) return false;
        for (std::size_t o = 0; o < m.rows(); ++o)
            if (o != r && m(o, c) != 0) return false;
        last = c;
    }
    return true;
}

}  // namespace

TEST_SUITE("exactla") {
    TEST_CASE("prime field") {
        CHECK_THROWS_AS(PrimeField(4), Error);
        CHECK_THROWS_AS(PrimeField(257), Error);
        const PrimeField f(7);
        for (Residue a = 1; a < 7; ++a) CHECK(f.mul(a, f.inv(a)) == 1);
        CHECK_THROWS_AS(f.inv(0), Error);
        CHECK(f.reduce(-1) == 6);
        CHECK(f.neg(3) == 4);
        const PrimeField big(251);
        for (Residue a = 1; a < 251; ++a) CHECK(big.mul(a, big.inv(a)) == 1);
    }

    TEST_CASE("rref examples") {
        const PrimeField f2(2);
        const auto r = rref(Mat(f2, 2, 2, {1, 1, 0, 1}));
        CHECK(r.rank == 2);
        CHECK(r.reduced == Mat::identity(f2, 2));

        const auto z = rref(Mat(f2, 2, 2));
        CHECK(z.rank == 0);
        CHECK(z.reduced.rows() == 0);

        const auto s = rref(Mat(f2, 2, 2, {1, 1, 1, 1}));
        CHECK(s.rank == 1);
        CHECK(s.reduced == Mat(f2, 1, 2, {1, 1}));
        CHECK(s.pivots == std::vector<std::size_t>{0});
    }

    TEST_CASE("rref is idempotent and preserves the row space") {
        std::mt19937_64 rng(11);
        for (std::uint32_t p : {2u, 3u, 5u, 251u}) {
            const PrimeField f(p);
            for (int t = 0; t < 150; ++t) {
                const auto m = random_mat(f, 1 + rng() % 7, 1 + rng() % 7, rng, static_cast<int>(rng() % 4));
                const auto r = rref(m);
                CHECK(is_rref(r.reduced));
                CHECK(rref(r.reduced).reduced == r.reduced);
                CHECK(r.rank == r.reduced.rows());
                // every input row reduces to zero against the RREF basis and vice versa
                const auto s = Subspace::span(m);
                for (std::size_t i = 0; i < m.rows(); ++i) CHECK(s.contains(m.row_vec(i)));
                CHECK(Subspace::span(r.reduced) == s);
            }
        }
    }

    TEST_CASE("rank of transpose and inverse") {
        std::mt19937_64 rng(12);
        const PrimeField f(3);
        for (int t = 0; t < 100; ++t) {
            const auto m = random_mat(f, 4, 4, rng, static_cast<int>(rng() % 3));
            CHECK(rank(m) == rank(m.transpose()));
            const auto inv = inverse(m);
            CHECK(inv.has_value() == (rank(m) == 4));
            if (inv) {
                CHECK(m * *inv == Mat::identity(f, 4));
                CHECK(*inv * m == Mat::identity(f, 4));
            }
        }
    }

    TEST_CASE("solve_affine examples") {
        const PrimeField f2(2);
        const Vec b{1, 0, 1};
        const auto id = solve_affine(Mat::identity(f2, 3), b);
        REQUIRE(id);
        CHECK(id->particular == b);
        CHECK(id->kernel.is_zero());

        CHECK_FALSE(solve_affine(Mat(f2, 1, 1), Vec{1}));
        CHECK_THROWS_AS(solve_affine(Mat(f2, 2, 2), Vec{1}), Error);

        // e12 x e12 = e12 in M_2(F_2): x = [[x11,x12],[x21,x22]], the product is x21 * e12.
        // Unknowns ordered x11, x12, x21, x22; equations on the four entries of the product.
        const Mat sys(f2, 4, 4, {0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0});
        const auto sol = solve_affine(sys, Vec{0, 1, 0, 0});
        REQUIRE(sol);
        std::size_t count = 0;
        for (unsigned bits = 0; bits < 16; ++bits) {
            const Vec x{Residue(bits & 1), Residue(bits >> 1 & 1), Residue(bits >> 2 & 1), Residue(bits >> 3 & 1)};
            const bool solves = apply(sys, x) == Vec{0, 1, 0, 0};
            CHECK(sol->contains(x) == solves);
            count += solves;
        }
        CHECK(count == 8);
        CHECK(sol->free_dim() == 3);
    }

    TEST_CASE("solve_affine soundness on random systems") {
        std::mt19937_64 rng(13);
        for (std::uint32_t p : {2u, 3u, 7u}) {
            const PrimeField f(p);
            std::uniform_int_distribution<std::uint32_t> coeff(0, p - 1);
            for (int t = 0; t < 200; ++t) {
                const std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 6;
                const auto a = random_mat(f, rows, cols, rng, static_cast<int>(rng() % 3));
                Vec b(rows);
                if (rng() % 2) {
                    Vec x(cols);
                    for (auto& v : x) v = static_cast<Residue>(coeff(rng));
                    b = apply(a, x);
                } else {
                    for (auto& v : b) v = static_cast<Residue>(coeff(rng));
                }
                const auto sol = solve_affine(a, b);
                const bool consistent = rank(a) == rank(vstack({a.transpose(), Mat(f, 1, rows, b)}));
                CHECK(sol.has_value() == consistent);
                if (!sol) continue;
                CHECK(apply(a, sol->particular) == b);
                for (std::size_t k = 0; k < sol->kernel.dim(); ++k) CHECK(is_zero(apply(a, sol->kernel.basis().row_vec(k))));
                CHECK(sol->free_dim() == cols - rank(a));
                Vec combo = sol->particular;
                for (std::size_t k = 0; k < sol->kernel.dim(); ++k)
                    combo = add(f, combo, scale(f, static_cast<Residue>(coeff(rng)), sol->kernel.basis().row_vec(k)));
                CHECK(apply(a, combo) == b);
                CHECK(sol->contains(combo));
            }
        }
    }

    TEST_CASE("subspace calculus examples") {
        const PrimeField f2(2);
        const auto u = Subspace::span(f2, 2, {{1, 0}});
        const auto v = Subspace::span(f2, 2, {{0, 1}});
        CHECK((u + v).dim() == 2);
        CHECK(u.intersect(v).dim() == 0);
        CHECK(u + u == u);
        CHECK(u.intersect(u) == u);
        const auto whole = Subspace::whole(f2, 2);
        const auto diag = Subspace::span(f2, 2, {{1, 1}});
        CHECK(whole.intersect(diag) == diag);
        CHECK(whole.contains(diag));
        CHECK_FALSE(u.contains(diag));
        CHECK_THROWS_AS(u + Subspace::whole(f2, 3), Error);
    }

    TEST_CASE("dimension formula on random pairs") {
        std::mt19937_64 rng(14);
        for (std::uint32_t p : {2u, 3u, 5u}) {
            const PrimeField f(p);
            for (int t = 0; t < 200; ++t) {
                const std::size_t n = 1 + rng() % 7;
                const auto u = Subspace::span(random_mat(f, rng() % (n + 1), n, rng, 1));
                const auto v = Subspace::span(random_mat(f, rng() % (n + 1), n, rng, 1));
                const auto sum = u + v, meet = u.intersect(v);
                CHECK(sum.dim() + meet.dim() == u.dim() + v.dim());
                CHECK(sum.contains(u));
                CHECK(sum.contains(v));
                CHECK(u.contains(meet));
                CHECK(v.contains(meet));
            }
        }
    }

    TEST_CASE("coordinates, kernels and direct sums") {
        std::mt19937_64 rng(15);
        const PrimeField f(5);
        for (int t = 0; t < 100; ++t) {
            const auto m = random_mat(f, 3, 5, rng);
            const auto s = Subspace::span(m);
            for (std::size_t i = 0; i < m.rows(); ++i) CHECK(s.from_coordinates(s.coordinates(m.row_vec(i))) == m.row_vec(i));
            const auto lk = left_kernel(m);
            for (std::size_t i = 0; i < lk.dim(); ++i) CHECK(is_zero(vec_mat(lk.basis().row_vec(i), m)));
            CHECK(lk.dim() + rank(m) == 3);
            const auto nk = nullspace(m);
            for (std::size_t i = 0; i < nk.dim(); ++i) CHECK(is_zero(apply(m, nk.basis().row_vec(i))));
            CHECK(nk.dim() + rank(m) == 5);
        }
        const auto e1 = Subspace::span(f, 3, {{1, 0, 0}});
        const auto e2 = Subspace::span(f, 3, {{0, 1, 0}});
        const auto e3 = Subspace::span(f, 3, {{1, 1, 1}});
        CHECK(is_internal_direct_sum({e1, e2, e3}));
        CHECK_FALSE(is_internal_direct_sum({e1, e2}));
        CHECK(is_independent({e1, e2}));
        CHECK_FALSE(is_independent({e1, e2, Subspace::span(f, 3, {{1, 1, 0}})}));
        CHECK_THROWS_AS(e1.coordinates(Vec{0, 0, 1}), Error);
    }

    TEST_CASE("matrix validation") {
        const PrimeField f(3);
        CHECK_THROWS_AS(Mat(f, 1, 2, {1, 3}), Error);
        CHECK_THROWS_AS(Mat(f, 1, 2, {1}), Error);
        CHECK_THROWS_AS(Mat(f, 2, 2) * Mat(f, 3, 3), Error);
    }
}
