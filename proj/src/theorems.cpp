#include "ringlab/theorems.hpp"

#include <functional>
#include <sstream>

#include "ringlab/error.hpp"
#include "ringlab/regularity.hpp"

namespace ringlab {

namespace {

using la::Mat;
using la::Subspace;

struct Ring {
    RightModule r;
    Element a;
    Mat la_;  // left multiplication by a
    QuotientModule q;  // R/aR

    explicit Ring(const Element& a_)
        : r(RightModule::regular(a_.algebra())),
          a(a_),
          la_(a_.algebra().left_mult(a_.coords())),
          q(quotient(r, principal_right_ideal(a_))) {}

    Subspace times_a(const Subspace& s) const { return s.image(la_); }
    Vec project(const Vec& v) const { return q.projection.apply(v); }
};

// Matrix (in source RREF coordinates) of the linear map sending source_vectors[i] to images[i].
Mat map_from_basis(const Subspace& source, const std::vector<Vec>& source_vectors, const std::vector<Vec>& images,
                   std::size_t target_dim) {
    const auto& f = source.field();
    if (source_vectors.size() != source.dim())
        throw Error(ErrorCode::VerificationFailure, "basis size does not match the subspace dimension");
    std::vector<Vec> coords;
    coords.reserve(source_vectors.size());
    for (const auto& v : source_vectors) coords.push_back(source.coordinates(v));
    const auto w_inv = la::inverse(Mat::from_rows(f, source.dim(), coords));
    if (!w_inv) throw Error(ErrorCode::VerificationFailure, "vectors do not form a basis");
    return *w_inv * Mat::from_rows(f, target_dim, images);
}

// E = A' + aA: a' -> base(a'), a t -> base(t).
Mat level_iso(const Ring& ring, const Subspace& e, const Subspace& a_prime, const Subspace& a_part,
              const std::function<Vec(const Vec&)>& base) {
    std::vector<Vec> src, img;
    for (const auto& v : a_prime.basis().row_list()) {
        src.push_back(v);
        img.push_back(base(v));
    }
    for (const auto& t : a_part.basis().row_list()) {
        src.push_back(la::vec_mat(t, ring.la_));
        img.push_back(base(t));
    }
    return map_from_basis(e, src, img, ring.q.module.dim());
}

Mat first_iso(const Ring& ring, const Subspace& e, const Subspace& a_prime, const Subspace& a_part) {
    return level_iso(ring, e, a_prime, a_part, [&](const Vec& v) { return ring.project(v); });
}

Mat next_iso(const Ring& ring, const ChainLevel& prev, const Subspace& e, const Subspace& a_prime,
             const Subspace& a_part) {
    return level_iso(ring, e, a_prime, a_part,
                     [&](const Vec& v) { return la::vec_mat(prev.e.coordinates(v), prev.iso); });
}

void finish(const TheoremChain& chain) {
    const auto report = verify_chain(chain);
    if (!report.passed()) {
        std::string names;
        for (const auto& n : report.failures()) names += (names.empty() ? "" : ", ") + n;
        throw Error(ErrorCode::VerificationFailure, "constructed chain fails: " + names);
    }
}

ChainLevel make_level(const Ring& ring, std::size_t j, const Subspace& a_part, const Subspace& a_prime,
                      const Subspace& y, const ChainLevel* prev) {
    ChainLevel level;
    level.j = j;
    level.a_part = a_part;
    level.a_prime = a_prime;
    level.y = y;
    level.e = a_prime + ring.times_a(a_part);
    level.iso = prev ? next_iso(ring, *prev, level.e, a_prime, a_part) : first_iso(ring, level.e, a_prime, a_part);
    return level;
}

void check_levels(std::size_t levels) {
    if (levels == 0) throw Error(ErrorCode::OutOfRange, "the chain needs at least one level");
}

std::string dims(std::size_t a, std::size_t b) {
    std::ostringstream os;
    os << a << " vs " << b;
    return os.str();
}

}  // namespace

Subspace TheoremChain::x(std::size_t n) const {
    Subspace s(kernel.field(), kernel.ambient_dim());
    for (std::size_t i = 0; i < n && i < levels.size(); ++i) s = s + levels[i].a_part;
    return s;
}

std::optional<std::size_t> default_levels(const Element& a) {
    const auto data = nilpotency_data(a);
    if (!data.nilpotency_index) return std::nullopt;
    return static_cast<std::size_t>(*data.nilpotency_index);
}

TheoremChain theorem2_chain(const Element& a, std::size_t levels) {
    check_levels(levels);
    if (!is_regular(a)) throw Error(ErrorCode::NotRegular, to_string(a) + " is not regular");
    const Ring ring(a);
    const auto k = right_annihilator(a);
    const auto ar = principal_right_ideal(a);
    const auto b = complement(ring.r, k);
    const auto a0 = complement(ring.r, ar);
    if (!b || !a0) throw Error(ErrorCode::NotASummand, "r(a) or aR is not a summand");

    TheoremChain chain{a, ChainVariant::Exchange, k.space(), {}};
    auto ex = exchange_step(ring.r, k, Submodule::zero(ring.r), {*a0, ar});
    chain.levels.push_back(make_level(ring, 1, ex.kept[0].space(), ex.given[0].space(), ex.kept[1].space(), nullptr));

    for (std::size_t j = 1; j < levels; ++j) {
        const auto& prev = chain.levels.back();
        const Submodule x(ring.r, chain.x(j));
        const Submodule e(ring.r, prev.e);
        const Submodule ay(ring.r, ring.times_a(prev.y));
        ex = exchange_step(ring.r, k, x, {e, ay});
        auto next = make_level(ring, j + 1, ex.kept[0].space(), ex.given[0].space(), ex.kept[1].space(), &prev);
        chain.levels.push_back(std::move(next));
    }
    finish(chain);
    return chain;
}

TheoremChain theorem4_chain(const Element& a, std::size_t levels) {
    check_levels(levels);
    const auto powers = all_powers_regular(a);
    if (!powers.all_regular)
        throw Error(ErrorCode::PowersNotRegular,
                    "(" + to_string(a) + ")^" + std::to_string(*powers.first_failure) + " is not regular");
    const Ring ring(a);
    const auto k = right_annihilator(a);
    const auto ar = principal_right_ideal(a);

    const auto p1 = k + ar;
    const auto split = lemma3_split_within(p1, k, ar);
    const auto a1p = complement_within(k, split.d);
    const auto a1 = complement(ring.r, p1);
    if (!a1p || !a1) throw Error(ErrorCode::NotASummand, "base level has no complement");

    TheoremChain chain{a, ChainVariant::RegularPowers, k.space(), {}};
    chain.levels.push_back(make_level(ring, 1, a1->space(), a1p->space(), split.c.space(), nullptr));

    for (std::size_t j = 1; j < levels; ++j) {
        const auto& prev = chain.levels.back();
        const auto power = principal_right_ideal(a.pow(j + 1));
        const auto y = lemma3_split_within(k + power, k, power).c;
        const Submodule big(ring.r, k.space() + y.space() + chain.x(j));
        const auto s = lemma3_split(ring.r, big, Submodule(ring.r, prev.e));
        auto next = make_level(ring, j + 1, s.c.space(), s.d.space(), y.space(), &prev);
        chain.levels.push_back(std::move(next));
    }
    finish(chain);
    return chain;
}

bool ChainReport::passed() const noexcept {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

std::vector<std::string> ChainReport::failures() const {
    std::vector<std::string> out;
    for (const auto& c : checks)
        if (!c.passed) out.push_back(c.name);
    return out;
}

ChainReport verify_chain(const TheoremChain& chain, const VerifyOptions& options) {
    ChainReport report;
    auto add = [&](std::string name, bool ok, std::string detail = {}) {
        report.checks.push_back({std::move(name), ok, std::move(detail)});
    };
    const auto& a = chain.a;
    const auto& alg = a.algebra();
    const auto& f = alg.field();
    const std::size_t n = alg.dim();
    const Ring ring(a);

    add("levels.nonempty", !chain.levels.empty());
    if (chain.levels.empty()) return report;

    auto shaped = [&](const Subspace& s) { return s.ambient_dim() == n && s.field() == f; };
    const auto k = right_annihilator(a).space();
    add("kernel.is_annihilator", shaped(chain.kernel) && chain.kernel == k);

    const std::size_t qdim = ring.q.module.dim();
    Subspace power = Subspace::whole(f, n);
    for (std::size_t idx = 0; idx < chain.levels.size(); ++idx) {
        const auto& lv = chain.levels[idx];
        const std::string tag = "L" + std::to_string(idx + 1) + ".";
        power = power.image(ring.la_);  // a^j R

        add(tag + "index", lv.j == idx + 1);
        const bool shapes = shaped(lv.a_part) && shaped(lv.a_prime) && shaped(lv.y) && shaped(lv.e);
        add(tag + "shapes", shapes);
        if (!shapes) continue;
        const bool closed = is_action_closed(ring.r, lv.a_part) && is_action_closed(ring.r, lv.a_prime) &&
                            is_action_closed(ring.r, lv.y) && is_action_closed(ring.r, lv.e);
        add(tag + "submodules", closed);

        std::vector<Subspace> xs;
        for (std::size_t i = 0; i <= idx; ++i) xs.push_back(chain.levels[i].a_part);
        const auto ay = ring.times_a(lv.y);

        auto first = xs;
        first.push_back(chain.kernel);
        first.push_back(lv.y);
        add(tag + "R=K+X+Y", la::is_internal_direct_sum(first));

        auto second = xs;
        second.push_back(lv.e);
        second.push_back(ay);
        add(tag + "R=X+E+aY", la::is_internal_direct_sum(second));

        const auto aa = ring.times_a(lv.a_part);
        add(tag + "E=A'+aA", lv.e == lv.a_prime + aa && la::is_independent({lv.a_prime, aa}),
            dims(lv.e.dim(), lv.a_prime.dim() + aa.dim()));
        add(tag + "Y<=a^jR", power.contains(lv.y));
        if (idx > 0) add(tag + "dimY.decreasing", lv.y.dim() <= chain.levels[idx - 1].y.dim());

        if (idx + 1 < chain.levels.size()) {
            const auto& nx = chain.levels[idx + 1];
            if (shaped(nx.a_part) && shaped(nx.a_prime))
                add(tag + "E=A_next+A'_next",
                    lv.e == nx.a_part + nx.a_prime && la::is_independent({nx.a_part, nx.a_prime}));
            else
                add(tag + "E=A_next+A'_next", false, "malformed next level");
        }

        if (chain.variant == ChainVariant::RegularPowers) {
            add(tag + "K+Y=K+a^jR", chain.kernel + lv.y == chain.kernel + power &&
                                         chain.kernel.intersect(lv.y).is_zero());
            add(tag + "aY=a^(j+1)R", ay == power.image(ring.la_));
        }

        const bool iso_shape = lv.iso.rows() == lv.e.dim() && lv.iso.cols() == qdim && lv.iso.field() == f;
        bool iso_ok = false;
        if (closed && iso_shape) {
            const ModuleMap m(Submodule(ring.r, lv.e).as_module(), ring.q.module, lv.iso);
            iso_ok = m.is_isomorphism();
        }
        add(tag + "E~R/aR", iso_ok);

        // iso_1(a' + a t) = pi(a' + t), iso_j(a' + a t) = iso_(j-1)(a' + t)
        bool compatible = iso_shape;
        const ChainLevel* prev = idx > 0 ? &chain.levels[idx - 1] : nullptr;
        if (prev && !(shaped(prev->e) && prev->iso.rows() == prev->e.dim() && prev->iso.cols() == qdim))
            compatible = false;
        auto base = [&](const Vec& v) -> std::optional<Vec> {
            if (!prev) return ring.project(v);
            if (!prev->e.contains(v)) return std::nullopt;
            return la::vec_mat(prev->e.coordinates(v), prev->iso);
        };
        auto agrees = [&](const Vec& src, const Vec& pre) {
            if (!lv.e.contains(src)) return false;
            const auto want = base(pre);
            return want && la::vec_mat(lv.e.coordinates(src), lv.iso) == *want;
        };
        for (const auto& v : lv.a_prime.basis().row_list())
            if (compatible) compatible = agrees(v, v);
        for (const auto& t : lv.a_part.basis().row_list())
            if (compatible) compatible = agrees(la::vec_mat(t, ring.la_), t);
        add(tag + "iso.compatible", compatible);
    }

    const auto& last = chain.last();
    const bool nil_here = a.pow(chain.length()).is_zero();
    if (nil_here) {
        add("final.Y=0", last.y.is_zero());
        bool k_iso = false;
        if (shaped(last.e) && is_action_closed(ring.r, last.e)) {
            const auto r = find_isomorphism(right_annihilator(a).as_module(), Submodule(ring.r, last.e).as_module());
            k_iso = r.status == IsoStatus::Found;
        }
        add("final.K~E", k_iso);
        const auto direct = find_isomorphism(right_annihilator(a).as_module(), ring.q.module);
        add("final.K~R/aR", direct.status == IsoStatus::Found, direct.route);
    }

    if (options.canonical) {
        bool same = false;
        std::string detail;
        try {
            const auto rebuilt = chain.variant == ChainVariant::Exchange ? theorem2_chain(a, chain.length())
                                                                         : theorem4_chain(a, chain.length());
            same = rebuilt.kernel == chain.kernel && rebuilt.levels.size() == chain.levels.size();
            for (std::size_t i = 0; same && i < rebuilt.levels.size(); ++i) {
                const auto& x = rebuilt.levels[i];
                const auto& y = chain.levels[i];
                same = x.j == y.j && x.a_part == y.a_part && x.a_prime == y.a_prime && x.y == y.y && x.e == y.e &&
                       x.iso == y.iso;
            }
        } catch (const Error& e) {
            detail = e.what();
        }
        add("canonical", same, detail);
    }
    return report;
}

ModuleMap kernel_to_cokernel(const TheoremChain& chain) {
    const auto& a = chain.a;
    const Ring ring(a);
    const auto& last = chain.last();
    if (!last.y.is_zero())
        throw Error(ErrorCode::NotNilpotentAtThisLevel, "Y_n is not zero at level " + std::to_string(chain.length()));
    const auto x = chain.x(chain.length());
    const auto proj = direct_sum_projections({last.e, x});
    std::vector<Vec> images;
    for (const auto& v : chain.kernel.basis().row_list())
        images.push_back(la::vec_mat(last.e.coordinates(la::vec_mat(v, proj[0])), last.iso));
    const auto k = right_annihilator(a);
    return ModuleMap(k.as_module(), ring.q.module,
                     Mat::from_rows(a.algebra().field(), ring.q.module.dim(), images));
}

UnitWitness unit_witness(const TheoremChain& chain) {
    const auto& a = chain.a;
    const auto& alg = a.algebra();
    const auto& f = alg.field();
    if (chain.levels.empty() || !a.pow(chain.length()).is_zero())
        throw Error(ErrorCode::NotNilpotentAtThisLevel,
                    "a^" + std::to_string(chain.length()) + " is not zero for " + to_string(a));
    const auto report = verify_chain(chain);
    if (!report.passed()) throw Error(ErrorCode::VerificationFailure, "chain does not verify");

    const Ring ring(a);
    auto kappa = kernel_to_cokernel(chain);
    if (!kappa.is_isomorphism()) throw Error(ErrorCode::VerificationFailure, "K -> R/aR is not an isomorphism");
    const auto kappa_inv = *la::inverse(kappa.matrix());

    const auto inner = inner_inverse_set(a);
    const auto x = inner.first();
    const auto ar = principal_right_ideal(a);
    const auto q = complement(ring.r, ar);
    if (!q) throw Error(ErrorCode::NotASummand, "aR has no complement");

    // phi = left multiplication by x on aR, kappa^-1 o pi on the complement.
    const auto lx = alg.left_mult(x.coords());
    std::vector<Vec> src, img;
    for (const auto& v : ar.basis().row_list()) {
        src.push_back(v);
        img.push_back(la::vec_mat(v, lx));
    }
    for (const auto& v : q->basis().row_list()) {
        src.push_back(v);
        img.push_back(chain.kernel.from_coordinates(la::vec_mat(ring.project(v), kappa_inv)));
    }
    const auto phi = map_from_basis(Subspace::whole(f, alg.dim()), src, img, alg.dim());
    const auto u = alg.element(la::vec_mat(alg.one().coords(), phi));
    if (!(phi == alg.left_mult(u.coords())))
        throw Error(ErrorCode::VerificationFailure, "phi is not left multiplication by phi(1)");
    if (!is_unit(u)) throw Error(ErrorCode::VerificationFailure, "phi(1) is not a unit");

    UnitWitness w{u, a * u * a == a, inner.contains(u), std::move(kappa)};
    if (!w.inner_inverse_check || !w.in_inner_inverse_set)
        throw Error(ErrorCode::VerificationFailure, "a u a != a");
    return w;
}

}  // namespace ringlab
