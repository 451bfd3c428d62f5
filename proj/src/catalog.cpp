#include <cctype>
#include <string>
#include <utility>

#include "ringlab/algebra.hpp"
#include "ringlab/error.hpp"

namespace ringlab {

namespace {

constexpr std::size_t kMaxDim = 64;

void check_params(std::size_t n, std::uint32_t p, std::size_t dim, const char* what) {
    if (!la::is_prime(p) || p > la::PrimeField::max_modulus)
        throw Error(ErrorCode::NonPrimeModulus, std::string(what) + ": p = " + std::to_string(p) + " is not a prime <= 251");
    if (n == 0 || dim > kMaxDim)
        throw Error(ErrorCode::OutOfRange, std::string(what) + ": parameters give dimension " + std::to_string(dim) +
                                               " outside 1.." + std::to_string(kMaxDim));
}

std::string unit_label(std::size_t i, std::size_t j, std::size_t n) {
    if (n <= 9) return "e" + std::to_string(i + 1) + std::to_string(j + 1);
    return "e" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
}

// Matrix units e_ij with i <= j only when `triangular`.
FiniteAlgebra matrix_units(std::size_t n, std::uint32_t p, bool triangular, std::string preset) {
    if (n > kMaxDim) check_params(n, p, n * n, triangular ? "T" : "M");
    std::vector<std::pair<std::size_t, std::size_t>> units;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = triangular ? i : 0; j < n; ++j) units.emplace_back(i, j);
    const std::size_t d = units.size();
    check_params(n, p, d, triangular ? "T" : "M");

    auto index = [&](std::size_t i, std::size_t j) {
        for (std::size_t x = 0; x < d; ++x)
            if (units[x] == std::pair{i, j}) return x;
        return d;
    };
    AlgebraTable t;
    t.p = p;
    t.dim = d;
    t.mul.assign(d * d * d, 0);
    t.one.assign(d, 0);
    std::vector<std::int64_t> jordan(d, 0);
    for (std::size_t a = 0; a < d; ++a) {
        const auto [i, j] = units[a];
        t.labels.push_back(unit_label(i, j, n));
        if (i == j) t.one[a] = 1;
        if (j == i + 1) jordan[a] = 1;
        for (std::size_t b = 0; b < d; ++b) {
            const auto [k, l] = units[b];
            if (j == k) t.mul[(a * d + b) * d + index(i, l)] = 1;
        }
    }
    t.preset = std::move(preset);
    t.named.emplace("J", std::move(jordan));
    return FiniteAlgebra::build(t);
}

std::string preset_name(const char* head, std::size_t n, std::uint32_t p) {
    return std::string(head) + "(" + std::to_string(n) + "," + std::to_string(p) + ")";
}

}  // namespace

FiniteAlgebra matrix_algebra(std::size_t n, std::uint32_t p) {
    return matrix_units(n, p, false, preset_name("M", n, p));
}

FiniteAlgebra upper_triangular(std::size_t n, std::uint32_t p) {
    return matrix_units(n, p, true, preset_name("T", n, p));
}

FiniteAlgebra cyclic_group_algebra(std::size_t n, std::uint32_t p) {
    check_params(n, p, n, "FpC");
    AlgebraTable t;
    t.p = p;
    t.dim = n;
    t.mul.assign(n * n * n, 0);
    t.one.assign(n, 0);
    t.one[0] = 1;
    for (std::size_t i = 0; i < n; ++i) {
        t.labels.push_back(i == 0 ? "1" : i == 1 ? "g" : "g^" + std::to_string(i));
        for (std::size_t j = 0; j < n; ++j) t.mul[(i * n + j) * n + (i + j) % n] = 1;
    }
    t.preset = preset_name("FpC", n, p);
    return FiniteAlgebra::build(t);
}

FiniteAlgebra product(const std::vector<FiniteAlgebra>& factors) {
    if (factors.size() < 2) throw Error(ErrorCode::OutOfRange, "prod needs at least two factors");
    const std::uint32_t p = factors.front().field().modulus();
    std::size_t d = 0;
    for (const auto& f : factors) {
        if (f.field().modulus() != p) throw Error(ErrorCode::AlgebraMismatch, "prod factors over different fields");
        d += f.dim();
    }
    if (d > kMaxDim) throw Error(ErrorCode::OutOfRange, "prod dimension exceeds " + std::to_string(kMaxDim));

    AlgebraTable t;
    t.p = p;
    t.dim = d;
    t.mul.assign(d * d * d, 0);
    t.one.assign(d, 0);
    t.preset = "prod(";
    std::size_t offset = 0;
    for (std::size_t f = 0; f < factors.size(); ++f) {
        const auto& alg = factors[f];
        const std::size_t k = alg.dim();
        const std::string prefix = "p" + std::to_string(f + 1) + ".";
        for (std::size_t i = 0; i < k; ++i) {
            t.labels.push_back(prefix + alg.labels()[i]);
            t.one[offset + i] = alg.one().coords()[i];
            for (std::size_t j = 0; j < k; ++j)
                for (std::size_t l = 0; l < k; ++l)
                    t.mul[((offset + i) * d + offset + j) * d + offset + l] = alg.structure(i, j, l);
        }
        for (const auto& [name, coords] : alg.table().named) {
            std::vector<std::int64_t> lifted(d, 0);
            std::copy(coords.begin(), coords.end(), lifted.begin() + static_cast<std::ptrdiff_t>(offset));
            t.named.emplace(prefix + name, std::move(lifted));
        }
        t.preset += (f ? "," : "") + (alg.preset().empty() ? std::string("?") : alg.preset());
        offset += k;
    }
    t.preset += ")";
    return FiniteAlgebra::build(t);
}

namespace {

class PresetParser {
public:
    explicit PresetParser(std::string_view text) : text_(text) {}

    FiniteAlgebra parse() {
        auto alg = parse_preset();
        skip_ws();
        if (pos_ != text_.size()) fail("trailing characters");
        return alg;
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw Error(ErrorCode::UnknownPreset,
                    "'" + std::string(text_) + "' at offset " + std::to_string(pos_) + ": " + why);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    void expect(char c) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    std::string identifier() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected preset name");
        return std::string(text_.substr(start, pos_ - start));
    }

    std::uint64_t number() {
        skip_ws();
        const std::size_t start = pos_;
        std::uint64_t v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
            if (v > 1000000) fail("number too large");
            ++pos_;
        }
        if (start == pos_) fail("expected number");
        return v;
    }

    FiniteAlgebra parse_preset() {
        const std::string name = identifier();
        expect('(');
        if (name == "prod") {
            std::vector<FiniteAlgebra> factors{parse_preset()};
            skip_ws();
            while (pos_ < text_.size() && text_[pos_] == ',') {
                ++pos_;
                factors.push_back(parse_preset());
                skip_ws();
            }
            expect(')');
            return product(factors);
        }
        const auto n = static_cast<std::size_t>(number());
        expect(',');
        const auto p = number();
        expect(')');
        if (p > la::PrimeField::max_modulus) throw Error(ErrorCode::NonPrimeModulus, "p must be a prime <= 251");
        const auto q = static_cast<std::uint32_t>(p);
        if (name == "M") return matrix_algebra(n, q);
        if (name == "T") return upper_triangular(n, q);
        if (name == "FpC") return cyclic_group_algebra(n, q);
        fail("unknown preset '" + name + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

FiniteAlgebra catalog(std::string_view preset) { return PresetParser(preset).parse(); }

const std::vector<std::string>& standard_presets() {
    static const std::vector<std::string> presets = {
        "M(2,2)",   "M(3,2)",   "M(2,3)",   "M(2,5)",   "M(2,7)",   "M(4,2)",
        "T(2,2)",   "T(3,2)",   "T(4,2)",   "T(2,3)",   "T(3,3)",   "T(2,5)",   "T(2,7)",  "T(2,11)",
        "FpC(2,2)", "FpC(3,2)", "FpC(4,2)", "FpC(5,2)", "FpC(6,2)", "FpC(7,2)", "FpC(8,2)", "FpC(12,2)",
        "FpC(2,3)", "FpC(3,3)", "FpC(4,3)", "FpC(6,3)", "FpC(2,5)", "FpC(5,5)", "FpC(2,7)", "FpC(4,7)",
        "FpC(3,13)",
        "prod(M(2,2),T(2,2))",   "prod(M(2,2),M(2,2))",   "prod(FpC(2,2),M(2,2))", "prod(T(2,2),T(3,2))",
        "prod(M(2,3),FpC(2,3))", "prod(M(3,2),FpC(2,2))", "prod(M(2,3),T(2,3))",   "prod(T(2,2),FpC(3,2))",
    };
    return presets;
}

std::vector<FiniteAlgebra> standard_catalog(std::uint64_t max_size) {
    std::vector<FiniteAlgebra> out;
    for (const auto& name : standard_presets()) {
        auto r = catalog(name);
        if (r.size() <= max_size) out.push_back(std::move(r));
    }
    return out;
}

}  // namespace ringlab
