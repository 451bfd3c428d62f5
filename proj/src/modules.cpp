#include "ringlab/modules.hpp"

#include <random>
#include <string>
#include <utility>

#include "ringlab/error.hpp"
#include "ringlab/linear_system.hpp"

namespace ringlab {

// ---------------------------------------------------------------- RightModule

struct RightModule::Impl {
    FiniteAlgebra algebra;
    std::size_t dim;
    std::vector<la::Mat> actions;
};

RightModule::RightModule(FiniteAlgebra algebra, std::size_t dim, std::vector<la::Mat> actions) {
    if (actions.size() != algebra.dim())
        throw Error(ErrorCode::DimensionMismatch, "need one action matrix per algebra basis element");
    for (const auto& a : actions)
        if (a.rows() != dim || a.cols() != dim || !(a.field() == algebra.field()))
            throw Error(ErrorCode::DimensionMismatch, "action matrix shape differs from module dimension");
    impl_ = std::make_shared<const Impl>(Impl{std::move(algebra), dim, std::move(actions)});
}

RightModule RightModule::regular(const FiniteAlgebra& algebra) {
    std::vector<la::Mat> actions;
    for (std::size_t i = 0; i < algebra.dim(); ++i) actions.push_back(algebra.right_action(i));
    return RightModule(algebra, algebra.dim(), std::move(actions));
}

RightModule RightModule::zero(const FiniteAlgebra& algebra) {
    return RightModule(algebra, 0, std::vector<la::Mat>(algebra.dim(), la::Mat(algebra.field(), 0, 0)));
}

const FiniteAlgebra& RightModule::algebra() const noexcept { return impl_->algebra; }
std::size_t RightModule::dim() const noexcept { return impl_->dim; }
const la::Mat& RightModule::action(std::size_t i) const { return impl_->actions.at(i); }
const std::vector<la::Mat>& RightModule::actions() const noexcept { return impl_->actions; }

la::Mat RightModule::act(const Element& r) const {
    la::Mat out(field(), dim(), dim());
    const auto& f = field();
    for (std::size_t i = 0; i < r.coords().size(); ++i) {
        const Residue c = r.coords()[i];
        if (c == 0) continue;
        const auto& a = impl_->actions[i];
        for (std::size_t x = 0; x < dim(); ++x)
            for (std::size_t y = 0; y < dim(); ++y) out(x, y) = f.add(out(x, y), f.mul(c, a(x, y)));
    }
    return out;
}

bool RightModule::respects_algebra() const {
    const auto& alg = algebra();
    if (!(act(alg.one()) == la::Mat::identity(field(), dim()))) return false;
    for (std::size_t i = 0; i < alg.dim(); ++i)
        for (std::size_t j = 0; j < alg.dim(); ++j)
            if (!(act(alg.basis(i) * alg.basis(j)) == action(i) * action(j))) return false;
    return true;
}

bool RightModule::same_as(const RightModule& other) const noexcept {
    if (impl_ == other.impl_) return true;
    return impl_->dim == other.impl_->dim && impl_->algebra.same_as(other.impl_->algebra) &&
           impl_->actions == other.impl_->actions;
}

RightModule regular_representation(const FiniteAlgebra& algebra) { return RightModule::regular(algebra); }

// ---------------------------------------------------------------- Submodule

bool is_action_closed(const RightModule& ambient, const la::Subspace& space) {
    if (space.ambient_dim() != ambient.dim()) return false;
    for (std::size_t i = 0; i < ambient.algebra().dim(); ++i)
        if (!space.contains(space.image(ambient.action(i)))) return false;
    return true;
}

Submodule::Submodule(RightModule ambient, la::Subspace space) : ambient_(std::move(ambient)), space_(std::move(space)) {
    if (space_.ambient_dim() != ambient_.dim())
        throw Error(ErrorCode::DimensionMismatch, "subspace ambient dimension differs from module dimension");
    if (!is_action_closed(ambient_, space_)) throw Error(ErrorCode::NotASubmodule, "subspace is not closed under the action");
}

Submodule Submodule::zero(const RightModule& ambient) { return Submodule(ambient, la::Subspace(ambient.field(), ambient.dim())); }

Submodule Submodule::whole(const RightModule& ambient) {
    return Submodule(ambient, la::Subspace::whole(ambient.field(), ambient.dim()));
}

Submodule Submodule::generated_by(const RightModule& ambient, const std::vector<Vec>& vectors) {
    auto space = la::Subspace::span(ambient.field(), ambient.dim(), vectors);
    const auto& gens = ambient.algebra().generators();
    while (true) {
        la::Subspace next = space;
        for (auto g : gens) next = next + space.image(ambient.action(g));
        if (next.dim() == space.dim()) break;
        space = std::move(next);
    }
    return Submodule(ambient, std::move(space));
}

RightModule Submodule::as_module() const {
    const auto& alg = ambient_.algebra();
    std::vector<la::Mat> actions;
    actions.reserve(alg.dim());
    const std::size_t k = dim();
    for (std::size_t i = 0; i < alg.dim(); ++i) {
        const la::Mat moved = basis() * ambient_.action(i);
        la::Mat induced(ambient_.field(), k, k);
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t c = 0; c < k; ++c) induced(r, c) = moved(r, space_.pivots()[c]);
        actions.push_back(std::move(induced));
    }
    return RightModule(alg, k, std::move(actions));
}

namespace {

void require_same_ambient(const Submodule& a, const Submodule& b) {
    if (!a.ambient().same_as(b.ambient())) throw Error(ErrorCode::PreconditionViolated, "submodules of different modules");
}

}  // namespace

bool Submodule::contains(const Submodule& other) const {
    require_same_ambient(*this, other);
    return space_.contains(other.space_);
}

Submodule Submodule::operator+(const Submodule& other) const {
    require_same_ambient(*this, other);
    return Submodule(ambient_, space_ + other.space_);
}

Submodule Submodule::intersect(const Submodule& other) const {
    require_same_ambient(*this, other);
    return Submodule(ambient_, space_.intersect(other.space_));
}

Submodule relative(const Submodule& outer, const Submodule& inner) {
    if (!outer.contains(inner)) throw Error(ErrorCode::PreconditionViolated, "inner submodule not contained in outer");
    std::vector<Vec> rows;
    for (std::size_t r = 0; r < inner.dim(); ++r) rows.push_back(outer.space().coordinates(inner.basis().row_vec(r)));
    return Submodule(outer.as_module(), la::Subspace::span(outer.ambient().field(), outer.dim(), rows));
}

Submodule lift(const Submodule& outer, const Submodule& rel) {
    if (rel.ambient().dim() != outer.dim()) throw Error(ErrorCode::DimensionMismatch, "relative submodule has wrong ambient");
    if (rel.is_zero()) return Submodule::zero(outer.ambient());
    return Submodule(outer.ambient(), la::Subspace::span(rel.basis() * outer.basis()));
}

// ---------------------------------------------------------------- maps

ModuleMap::ModuleMap(RightModule source, RightModule target, la::Mat matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != source_.dim() || matrix_.cols() != target_.dim())
        throw Error(ErrorCode::DimensionMismatch, "map matrix shape differs from source x target");
}

bool ModuleMap::is_homomorphism() const {
    if (!source_.algebra().same_as(target_.algebra())) return false;
    for (std::size_t i = 0; i < source_.algebra().dim(); ++i)
        if (!(source_.action(i) * matrix_ == matrix_ * target_.action(i))) return false;
    return true;
}

bool ModuleMap::is_bijective() const {
    return source_.dim() == target_.dim() && la::rank(matrix_) == source_.dim();
}

ModuleMap ModuleMap::then(const ModuleMap& next) const {
    if (!target_.same_as(next.source_)) throw Error(ErrorCode::PreconditionViolated, "composed maps do not match up");
    return ModuleMap(source_, next.target_, matrix_ * next.matrix_);
}

bool DirectSumDecomposition::verify() const {
    std::vector<la::Subspace> spaces;
    for (const auto& p : parts) {
        if (!p.ambient().same_as(ambient) || !is_action_closed(ambient, p.space())) return false;
        spaces.push_back(p.space());
    }
    if (spaces.empty()) return ambient.dim() == 0;
    return la::is_internal_direct_sum(spaces);
}

// ---------------------------------------------------------------- ideals, quotients

namespace {

void require_regular_ambient(const Element& a, const Submodule& s) {
    if (!s.ambient().same_as(RightModule::regular(a.algebra())))
        throw Error(ErrorCode::PreconditionViolated, "expected a submodule of the regular module of the element's algebra");
}

}  // namespace

Submodule right_annihilator(const Element& a) {
    const auto& alg = a.algebra();
    return Submodule(RightModule::regular(alg), la::left_kernel(alg.left_mult(a.coords())));
}

Submodule left_mult_image(const Element& a, const Submodule& s) {
    require_regular_ambient(a, s);
    if (s.is_zero()) return s;
    return Submodule(s.ambient(), s.space().image(a.algebra().left_mult(a.coords())));
}

Submodule principal_right_ideal(const Element& a) {
    return left_mult_image(a, Submodule::whole(RightModule::regular(a.algebra())));
}

QuotientModule quotient(const RightModule& m, const Submodule& n) {
    if (!n.ambient().same_as(m)) throw Error(ErrorCode::NotASubmodule, "quotient by a submodule of another module");
    const auto& f = m.field();
    std::vector<bool> is_pivot(m.dim(), false);
    for (auto c : n.space().pivots()) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < m.dim(); ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    const std::size_t q = free_cols.size();

    // projection: reduce modulo N, then read the free coordinates
    la::Mat proj(f, m.dim(), q);
    for (std::size_t r = 0; r < m.dim(); ++r) {
        Vec e(m.dim(), 0);
        e[r] = 1;
        const Vec red = n.space().reduce(e);
        for (std::size_t c = 0; c < q; ++c) proj(r, c) = red[free_cols[c]];
    }
    std::vector<la::Mat> actions;
    for (std::size_t i = 0; i < m.algebra().dim(); ++i) {
        la::Mat act(f, q, q);
        for (std::size_t r = 0; r < q; ++r) {
            const Vec moved = m.action(i).row_vec(free_cols[r]);
            const Vec img = la::vec_mat(moved, proj);
            for (std::size_t c = 0; c < q; ++c) act(r, c) = img[c];
        }
        actions.push_back(std::move(act));
    }
    RightModule qm(m.algebra(), q, std::move(actions));
    return QuotientModule{qm, ModuleMap(m, qm, std::move(proj)), n};
}

// ---------------------------------------------------------------- hom spaces

std::vector<ModuleMap> hom_basis(const RightModule& m, const RightModule& n) {
    if (!m.algebra().same_as(n.algebra())) throw Error(ErrorCode::AlgebraMismatch, "modules over different algebras");
    detail::MatrixSystem sys(m.field(), m.dim(), n.dim());
    for (auto g : m.algebra().generators()) sys.add_intertwining(m.action(g), n.action(g));
    std::vector<ModuleMap> out;
    for (auto& mat : sys.kernel_basis()) out.emplace_back(m, n, std::move(mat));
    return out;
}

namespace {

// Odometer over all coefficient vectors; the running sum is updated with one
// matrix addition per touched digit.
template <class Visit>
bool enumerate_combinations(const std::vector<la::Mat>& basis, std::size_t rows, std::size_t cols,
                            const la::PrimeField& f, Visit&& visit) {
    const std::size_t h = basis.size();
    const std::uint32_t p = f.modulus();
    std::vector<std::uint32_t> digits(h, 0);
    la::Mat current(f, rows, cols);
    while (true) {
        if (visit(current)) return true;
        std::size_t k = 0;
        while (k < h) {
            current = current + basis[k];
            if (++digits[k] < p) break;
            digits[k] = 0;  // (p-1)+1 copies of basis[k] cancel
            ++k;
        }
        if (k == h) return false;
    }
}

bool is_nilpotent_matrix(const la::Mat& m) {
    la::Mat power = m;
    for (std::size_t e = 1; e < m.rows(); e *= 2) power = power * power;
    return power.is_zero();
}

std::uint64_t capped_power(std::uint32_t p, std::size_t h, std::uint64_t cap) {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < h; ++i) {
        total *= p;
        if (total > cap) return cap + 1;
    }
    return total;
}

}  // namespace

IsoResult find_isomorphism(const RightModule& m, const RightModule& n, const IsoOptions& options) {
    if (!m.algebra().same_as(n.algebra())) throw Error(ErrorCode::AlgebraMismatch, "modules over different algebras");
    if (m.dim() != n.dim()) return {IsoStatus::None, std::nullopt, "dimension"};
    const auto& f = m.field();
    if (m.dim() == 0) return {IsoStatus::Found, ModuleMap(m, n, la::Mat(f, 0, 0)), "dimension"};
    for (std::size_t i = 0; i < m.algebra().dim(); ++i)
        if (la::rank(m.action(i)) != la::rank(n.action(i))) return {IsoStatus::None, std::nullopt, "fingerprint"};

    const auto basis = hom_basis(m, n);
    if (basis.empty()) return {IsoStatus::None, std::nullopt, "hom-space"};
    std::vector<la::Mat> mats;
    for (const auto& b : basis) mats.push_back(b.matrix());

    const std::size_t d = m.dim();
    if (capped_power(f.modulus(), mats.size(), options.enumeration_cap) <= options.enumeration_cap) {
        std::optional<la::Mat> found;
        enumerate_combinations(mats, d, d, f, [&](const la::Mat& cand) {
            if (la::rank(cand) != d) return false;
            found = cand;
            return true;
        });
        if (found) return {IsoStatus::Found, ModuleMap(m, n, *found), "exhaustive"};
        return {IsoStatus::None, std::nullopt, "exhaustive"};
    }

    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<std::uint32_t> coeff(0, f.modulus() - 1);
    for (std::uint64_t t = 0; t < options.random_trials; ++t) {
        la::Mat cand(f, d, d);
        for (const auto& b : mats) {
            const auto c = static_cast<Residue>(coeff(rng));
            if (c == 0) continue;
            for (std::size_t x = 0; x < d; ++x)
                for (std::size_t y = 0; y < d; ++y) cand(x, y) = f.add(cand(x, y), f.mul(c, b(x, y)));
        }
        if (la::rank(cand) == d) return {IsoStatus::Found, ModuleMap(m, n, std::move(cand)), "random"};
    }
    return {IsoStatus::Unknown, std::nullopt, "budget"};
}

// ---------------------------------------------------------------- complements

std::optional<Submodule> complement(const RightModule& p, const Submodule& a) {
    if (!a.ambient().same_as(p)) throw Error(ErrorCode::NotASubmodule, "complement of a submodule of another module");
    if (a.is_zero()) return Submodule::whole(p);
    if (a.dim() == p.dim()) return Submodule::zero(p);
    const RightModule am = a.as_module();
    detail::MatrixSystem sys(p.field(), p.dim(), a.dim());
    for (auto g : p.algebra().generators()) sys.add_intertwining(p.action(g), am.action(g));
    // retraction: the r-th basis vector of A goes to the r-th coordinate vector
    for (std::size_t r = 0; r < a.dim(); ++r) {
        Vec target(a.dim(), 0);
        target[r] = 1;
        sys.add_row_value(a.basis().row_vec(r), target);
    }
    auto retraction = sys.first_solution();
    if (!retraction) return std::nullopt;
    return Submodule(p, la::left_kernel(*retraction));
}

std::optional<Submodule> complement_within(const Submodule& p, const Submodule& a) {
    auto rel = complement(p.as_module(), relative(p, a));
    if (!rel) return std::nullopt;
    return lift(p, *rel);
}

ProjectiveSplit lemma3_split(const RightModule& p, const Submodule& a, const Submodule& b) {
    if (!a.ambient().same_as(p) || !b.ambient().same_as(p))
        throw Error(ErrorCode::NotASubmodule, "A and B must be submodules of P");
    if (!(a + b).space().is_whole()) throw Error(ErrorCode::SumNotWhole, "P != A + B");
    auto a_comp = complement(p, a);
    if (!a_comp) throw Error(ErrorCode::NotASummand, "A is not a direct summand of P");

    const auto& f = p.field();
    const std::size_t ka = a.dim();
    const std::size_t kc = a_comp->dim();
    // projection onto A' along A, in A' coordinates
    const auto t_inv = la::inverse(la::vstack({a.basis(), a_comp->basis()}));
    if (!t_inv) throw Error(ErrorCode::VerificationFailure, "A and its complement do not span P");
    la::Mat to_comp(f, p.dim(), kc);
    for (std::size_t r = 0; r < p.dim(); ++r)
        for (std::size_t c = 0; c < kc; ++c) to_comp(r, c) = (*t_inv)(r, ka + c);

    const la::Mat onto = b.basis() * to_comp;  // B -> A', surjective
    const RightModule comp_module = a_comp->as_module();
    const RightModule b_module = b.as_module();
    detail::MatrixSystem sys(f, kc, b.dim());
    for (auto g : p.algebra().generators()) sys.add_intertwining(comp_module.action(g), b_module.action(g));
    for (std::size_t r = 0; r < kc; ++r) {
        Vec unit(kc, 0), target(kc, 0);
        unit[r] = 1;
        target[r] = 1;
        sys.add_row_value(unit, target, &onto);
    }
    auto section = sys.first_solution();
    if (!section) throw Error(ErrorCode::VerificationFailure, "no R-linear section; P is not projective");

    Submodule c = kc == 0 ? Submodule::zero(p) : Submodule(p, la::Subspace::span(*section * b.basis()));
    Submodule d = a.intersect(b);
    if (!la::is_internal_direct_sum({a.space(), c.space()}) || !b.contains(c) ||
        c.dim() + d.dim() != b.dim() || !(c + d == b))
        throw Error(ErrorCode::VerificationFailure, "projective split postconditions failed");
    return {std::move(c), std::move(d)};
}

ProjectiveSplit lemma3_split_within(const Submodule& p, const Submodule& a, const Submodule& b) {
    const RightModule pm = p.as_module();
    auto split = lemma3_split(pm, relative(p, a), relative(p, b));
    return {lift(p, split.c), lift(p, split.d)};
}

// ---------------------------------------------------------------- indecomposables

EndomorphismScan scan_endomorphisms(const RightModule& m, std::uint64_t cap) {
    EndomorphismScan out;
    const auto basis = hom_basis(m, m);
    const auto& f = m.field();
    if (capped_power(f.modulus(), basis.size(), cap) > cap)
        throw Error(ErrorCode::CapExceeded, "endomorphism ring has p^" + std::to_string(basis.size()) + " elements");
    std::vector<la::Mat> mats;
    for (const auto& b : basis) mats.push_back(b.matrix());
    const std::size_t d = m.dim();
    const la::Mat id = la::Mat::identity(f, d);
    enumerate_combinations(mats, d, d, f, [&](const la::Mat& e) {
        ++out.scanned;
        if (la::rank(e) == d) return false;  // units are neither idempotent-nontrivial nor a locality problem
        if (e * e == e && !e.is_zero() && !(e == id)) {
            out.idempotent = e;
            return true;
        }
        if (!is_nilpotent_matrix(e)) out.local = false;
        return false;
    });
    if (out.idempotent) out.local = false;
    return out;
}

std::vector<Submodule> indecomposable_summands(const Submodule& s, std::uint64_t cap) {
    std::vector<Submodule> out;
    std::vector<Submodule> work{s};
    while (!work.empty()) {
        Submodule part = work.back();
        work.pop_back();
        if (part.is_zero()) continue;
        const auto scan = scan_endomorphisms(part.as_module(), cap);
        if (!scan.idempotent) {
            out.push_back(part);
            continue;
        }
        const la::Mat& e = *scan.idempotent;
        const la::Mat rest = la::Mat::identity(part.ambient().field(), part.dim()) - e;
        // images in the part's own coordinates, lifted back to the ambient
        const Submodule image_e(part.as_module(), la::Subspace::span(e));
        const Submodule image_rest(part.as_module(), la::Subspace::span(rest));
        // processed in order: image of e first
        work.push_back(lift(part, image_rest));
        work.push_back(lift(part, image_e));
    }
    return out;
}

DirectSumDecomposition indecomposable_summands(const RightModule& m, std::uint64_t cap) {
    return {m, indecomposable_summands(Submodule::whole(m), cap)};
}

// ---------------------------------------------------------------- exchange

std::vector<la::Mat> direct_sum_projections(const std::vector<la::Subspace>& parts) {
    if (parts.empty()) throw Error(ErrorCode::PreconditionViolated, "no summands");
    const auto& f = parts.front().field();
    const std::size_t n = parts.front().ambient_dim();
    std::vector<la::Mat> bases;
    for (const auto& p : parts) bases.push_back(p.basis());
    const la::Mat stacked = bases.empty() ? la::Mat(f, 0, n) : la::vstack(bases);
    const auto inv = la::inverse(stacked);
    if (!inv) throw Error(ErrorCode::PreconditionViolated, "summands do not form a direct sum decomposition");
    std::vector<la::Mat> out;
    std::size_t offset = 0;
    for (const auto& p : parts) {
        la::Mat cols(f, n, p.dim());
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < p.dim(); ++c) cols(r, c) = (*inv)(r, offset + c);
        out.push_back(cols * p.basis());
        offset += p.dim();
    }
    return out;
}

ExchangeResult exchange_step(const RightModule& ambient, const Submodule& m, const Submodule& c,
                             const std::vector<Submodule>& parts, std::uint64_t cap) {
    auto in_ambient = [&](const Submodule& s) { return s.ambient().same_as(ambient); };
    if (!in_ambient(m) || !in_ambient(c))
        throw Error(ErrorCode::PreconditionViolated, "M and C must be submodules of the ambient module");
    std::vector<la::Subspace> split{c.space()};
    for (const auto& a : parts) {
        if (!in_ambient(a)) throw Error(ErrorCode::PreconditionViolated, "parts must be submodules of the ambient module");
        split.push_back(a.space());
    }
    if (!la::is_internal_direct_sum(split))
        throw Error(ErrorCode::PreconditionViolated, "ambient is not the direct sum of the parts and C");
    if (!la::is_independent({m.space(), c.space()}))
        throw Error(ErrorCode::PreconditionViolated, "M and C intersect nontrivially");
    auto b = complement(ambient, m + c);
    if (!b) throw Error(ErrorCode::PreconditionViolated, "M + C is not a direct summand");

    const auto pieces = indecomposable_summands(m, cap);
    std::vector<la::Subspace> fixed;
    for (const auto& n : pieces) fixed.push_back(n.space());
    fixed.push_back(b->space());
    fixed.push_back(c.space());
    const auto toward_pieces = direct_sum_projections(fixed);

    const auto& f = ambient.field();
    std::vector<Submodule> kept = parts;
    std::vector<la::Subspace> given(parts.size(), la::Subspace(f, ambient.dim()));
    la::Subspace absorbed = c.space();

    for (std::size_t t = 0; t < pieces.size(); ++t) {
        const Submodule& piece = pieces[t];
        const std::size_t k = piece.dim();
        const auto scan = scan_endomorphisms(piece.as_module(), cap);
        if (!scan.local)
            throw Error(ErrorCode::VerificationFailure, "indecomposable summand without a local endomorphism ring");

        std::vector<la::Subspace> current{absorbed};
        for (const auto& d : kept) current.push_back(d.space());
        const auto projections = direct_sum_projections(current);

        bool exchanged = false;
        for (std::size_t i = 0; i < kept.size() && !exchanged; ++i) {
            if (kept[i].is_zero()) continue;
            const la::Mat into_part = piece.basis() * projections[i + 1];
            const la::Mat round_trip = into_part * toward_pieces[t];
            la::Mat local(f, k, k);
            for (std::size_t r = 0; r < k; ++r)
                for (std::size_t col = 0; col < k; ++col) local(r, col) = round_trip(r, piece.space().pivots()[col]);
            if (la::rank(local) != k) continue;

            const la::Subspace image = la::Subspace::span(into_part);
            const la::Subspace kernel_coeffs = la::left_kernel(kept[i].basis() * toward_pieces[t]);
            const la::Subspace remainder =
                kernel_coeffs.is_zero() ? la::Subspace(f, ambient.dim()) : la::Subspace::span(kernel_coeffs.basis() * kept[i].basis());
            given[i] = given[i] + image;
            kept[i] = Submodule(ambient, remainder);
            exchanged = true;
        }
        if (!exchanged) throw Error(ErrorCode::VerificationFailure, "no part admits the exchange of an indecomposable summand");
        absorbed = absorbed + piece.space();
    }

    ExchangeResult out;
    out.kept = std::move(kept);
    std::vector<la::Subspace> final_split{m.space(), c.space()};
    for (std::size_t i = 0; i < parts.size(); ++i) {
        out.given.emplace_back(ambient, given[i]);
        if (out.kept[i].dim() + given[i].dim() != parts[i].dim() || !(out.kept[i].space() + given[i] == parts[i].space()))
            throw Error(ErrorCode::VerificationFailure, "part does not split as kept + given");
        final_split.push_back(out.kept[i].space());
    }
    if (!la::is_internal_direct_sum(final_split))
        throw Error(ErrorCode::VerificationFailure, "ambient != M + sum(D_i) + C after exchange");
    return out;
}

}  // namespace ringlab
