#ifndef HARDLEF_SYMPLECTIC_HODGE_HPP
#define HARDLEF_SYMPLECTIC_HODGE_HPP

#include <optional>
#include <unordered_map>
#include <vector>

#include "ce_complex.hpp"
#include "errors.hpp"
#include "exact.hpp"
#include "exterior_algebra.hpp"
#include "lefschetz.hpp"
#include "linalg.hpp"

namespace hardlef {

inline constexpr int kHodgeMaxN = 5;
inline constexpr int kDdcMaxN = 4;

/// Linear map Lambda^source -> Lambda^target in the graded-lex monomial bases
/// (rows index target monomials, columns source monomials).
struct OperatorMatrix {
    int source_degree = 0;
    int target_degree = 0;
    RatMatrix entries;
};

/// The operators star, d, d^c, L, Lambda and H on the full exterior algebra of
/// a numerically specified algebra, for the standard or a supplied symplectic form.
class HodgeOperators {
public:
    explicit HodgeOperators(const AlgebraSpec& spec) : HodgeOperators(spec, SymplecticForm::standard(spec)) {}

    HodgeOperators(const AlgebraSpec& spec, SymplecticForm omega) : spec_(spec), omega_(std::move(omega)) {
        if (spec.mode() == WeightMode::Generic)
            throw UnsupportedMode("the operator suite needs numeric weights (ones or explicit)");
        if (spec.n() > kHodgeMaxN)
            throw SizeLimit("the operator suite is limited to n <= " + std::to_string(kHodgeMaxN));
        const int n = spec.n(), top = spec.dim();
        for (int k = 0; k <= top; ++k) {
            bases_.push_back(monomials_of_degree(n, k));
            auto& idx = index_.emplace_back();
            for (std::size_t i = 0; i < bases_[k].size(); ++i) idx.emplace(bases_[k][i].mask(), i);
        }
        vol_ = Rational(1) / Rational(factorial(n)) * power(omega_.form(), n);
        volume_coefficient_ = vol_.coefficient(Monomial::top(n));
        build_inverse_gram();
        for (int k = 0; k <= top; ++k) {
            star_.push_back(build_star(k));
            d_.push_back(build_from_forms(k, k + 1, [&](const Form& f) { return differential(spec_, f); }));
            L_.push_back(build_from_forms(k, k + 2, [&](const Form& f) { return wedge(omega_.form(), f); }));
        }
        for (int k = 0; k <= top; ++k) {
            // d^c|_k = (-1)^{k+1} star d star, Lambda = star L star.
            OperatorMatrix dc{k, k - 1, zero(k - 1, k)};
            if (k >= 1) {
                const int j = top - k;
                dc.entries = Rational((k % 2) ? 1 : -1) * (star_[j + 1].entries * (d_[j].entries * star_[k].entries));
            }
            dc_.push_back(std::move(dc));
            OperatorMatrix lam{k, k - 2, zero(k - 2, k)};
            if (k >= 2) {
                const int j = top - k;
                lam.entries = star_[j + 2].entries * (L_[j].entries * star_[k].entries);
            }
            lambda_.push_back(std::move(lam));
        }
        for (int k = 0; k <= top; ++k) {
            RatMatrix h = zero(k, k);
            if (k >= 2) h = h + L_[k - 2].entries * lambda_[k].entries;
            if (k + 2 <= top) h = h - lambda_[k + 2].entries * L_[k].entries;
            H_.push_back(OperatorMatrix{k, k, std::move(h)});
        }
    }

    const AlgebraSpec& spec() const noexcept { return spec_; }
    const SymplecticForm& omega() const noexcept { return omega_; }
    int n() const noexcept { return spec_.n(); }

    /// omega^n / n!
    const Form& volume() const noexcept { return vol_; }

    const OperatorMatrix& star_matrix(int k) const { return star_.at(check(k)); }
    const OperatorMatrix& d_matrix(int k) const { return d_.at(check(k)); }
    const OperatorMatrix& dc_matrix(int k) const { return dc_.at(check(k)); }
    const OperatorMatrix& L_matrix(int k) const { return L_.at(check(k)); }
    const OperatorMatrix& lambda_matrix(int k) const { return lambda_.at(check(k)); }
    const OperatorMatrix& H_matrix(int k) const { return H_.at(check(k)); }

    Form star(const Form& f) const { return apply(star_, f); }
    Form d(const Form& f) const { return apply(d_, f); }
    Form dc(const Form& f) const { return apply(dc_, f); }
    Form L(const Form& f) const { return apply(L_, f); }
    Form lambda(const Form& f) const { return apply(lambda_, f); }
    Form H(const Form& f) const { return apply(H_, f); }

    std::size_t dim(int k) const { return bases_.at(check(k)).size(); }
    const std::vector<Monomial>& basis(int k) const { return bases_.at(check(k)); }

    std::vector<Rational> to_vector(const Form& f, int k) const {
        std::vector<Rational> v(dim(k), Rational(0));
        for (const auto& [m, c] : f.terms()) {
            if (m.degree() != k) throw DimensionMismatch("form is not homogeneous of degree " + std::to_string(k));
            v[index_[k].at(m.mask())] = c;
        }
        return v;
    }

    Form from_vector(const std::vector<Rational>& v, int k) const {
        Form f(n());
        for (std::size_t i = 0; i < v.size(); ++i) f.add_term(bases_[k][i], v[i]);
        return f;
    }

    /// omega^{-1}(e^I, e^J) for monomials of equal degree.
    Rational inverse_pairing(Monomial I, Monomial J) const {
        const auto a = I.indices(), b = J.indices();
        if (a.size() != b.size()) return 0;
        if (a.empty()) return 1;
        RatMatrix g(a.size(), b.size());
        bool any_row_zero = false;
        for (std::size_t r = 0; r < a.size(); ++r) {
            bool zero_row = true;
            for (std::size_t c = 0; c < b.size(); ++c) {
                g(r, c) = gram_(a[r] - 1, b[c] - 1);
                if (g(r, c) != 0) zero_row = false;
            }
            any_row_zero = any_row_zero || zero_row;
        }
        return any_row_zero ? Rational(0) : determinant(std::move(g));
    }

private:
    int check(int k) const {
        if (k < 0 || k > spec_.dim()) throw InvalidParameter("degree out of range");
        return k;
    }

    RatMatrix zero(int target, int source) const {
        auto sz = [&](int k) { return (k < 0 || k > spec_.dim()) ? std::size_t{0} : bases_[k].size(); };
        return RatMatrix(sz(target), sz(source));
    }

    // B(X)(Y) = omega(X, Y); the inverse pairing is omega^{-1}(theta, eta) = eta(B^{-1} theta),
    // i.e. gram(c, d) = (B^{-1})[d][c] with B[b][a] = omega(e_a, e_b).
    void build_inverse_gram() {
        const RatMatrix w = omega_.matrix();
        const std::size_t dd = w.rows();
        RatMatrix aug = hconcat(w.transpose(), RatMatrix::identity(dd));
        rref(aug);
        RatMatrix binv(dd, dd);
        for (std::size_t r = 0; r < dd; ++r)
            for (std::size_t c = 0; c < dd; ++c) binv(r, c) = aug(r, dd + c);
        gram_ = binv.transpose();
    }

    OperatorMatrix build_star(int k) const {
        const int n = spec_.n(), top = spec_.dim();
        const Monomial full = Monomial::top(n);
        OperatorMatrix op{k, top - k, RatMatrix(bases_[top - k].size(), bases_[k].size())};
        // alpha ^ star(beta) = omega^{-1}(alpha, beta) vol, tested against every monomial alpha = e^I:
        // only the e^{I^c} coefficient of star(beta) survives the wedge.
        for (std::size_t i = 0; i < bases_[k].size(); ++i) {
            const Monomial I = bases_[k][i];
            const Monomial Ic = Monomial::from_mask(full.mask() & ~I.mask());
            const int s = wedge_sign(I, Ic);
            const std::size_t row = index_[top - k].at(Ic.mask());
            for (std::size_t j = 0; j < bases_[k].size(); ++j) {
                const Rational p = inverse_pairing(I, bases_[k][j]);
                if (p != 0) op.entries(row, j) = p * volume_coefficient_ * s;
            }
        }
        return op;
    }

    template <typename Fn>
    OperatorMatrix build_from_forms(int k, int target, Fn fn) const {
        OperatorMatrix op{k, target, zero(target, k)};
        if (target > spec_.dim()) return op;
        for (std::size_t j = 0; j < bases_[k].size(); ++j) {
            const Form img = fn(Form(n(), bases_[k][j]));
            for (const auto& [m, c] : img.terms()) op.entries(index_[target].at(m.mask()), j) = c;
        }
        return op;
    }

    Form apply(const std::vector<OperatorMatrix>& family, const Form& f) const {
        f.check_same(Form(n()));
        Form out(n());
        for (int k = 0; k <= spec_.dim(); ++k) {
            const Form part = f.homogeneous_part(k);
            if (part.is_zero()) continue;
            const auto& op = family[k];
            if (op.target_degree < 0 || op.target_degree > spec_.dim()) continue;
            const auto v = to_vector(part, k);
            for (std::size_t r = 0; r < op.entries.rows(); ++r) {
                Rational acc = 0;
                for (std::size_t c = 0; c < op.entries.cols(); ++c)
                    if (v[c] != 0 && op.entries(r, c) != 0) acc += op.entries(r, c) * v[c];
                out.add_term(bases_[op.target_degree][r], acc);
            }
        }
        return out;
    }

    AlgebraSpec spec_;
    SymplecticForm omega_;
    std::vector<std::vector<Monomial>> bases_;
    std::vector<std::unordered_map<std::uint32_t, std::size_t>> index_;
    Form vol_{1};
    Rational volume_coefficient_;
    RatMatrix gram_;
    std::vector<OperatorMatrix> star_, d_, dc_, L_, lambda_, H_;
};

/// Operator identities checked as exact matrix equations on every degree.
struct OperatorIdentities {
    bool star_involution = true;    // star star = id
    bool star_one_is_volume = true; // star 1 = omega^n / n!
    bool dc_squared_zero = true;    // d^c d^c = 0
    bool d_dc_anticommute = true;   // d d^c = -d^c d
    bool dc_is_commutator = true;   // d^c = [d, Lambda]
    bool h_preserves_degree = true; // [L, Lambda] maps Lambda^k to Lambda^k

    bool all() const {
        return star_involution && star_one_is_volume && dc_squared_zero && d_dc_anticommute && dc_is_commutator &&
               h_preserves_degree;
    }
};

inline OperatorIdentities check_identities(const HodgeOperators& ops) {
    OperatorIdentities r;
    const int top = ops.spec().dim();
    auto zero = [&](int target, int source) { return RatMatrix(ops.dim(target), ops.dim(source)); };
    for (int k = 0; k <= top; ++k) {
        const auto& s = ops.star_matrix(k).entries;
        if (!(ops.star_matrix(top - k).entries * s == RatMatrix::identity(ops.dim(k)))) r.star_involution = false;
        if (k >= 2 && !(ops.dc_matrix(k - 1).entries * ops.dc_matrix(k).entries).is_zero()) r.dc_squared_zero = false;
        if (k >= 1 && k < top) {
            const RatMatrix a = ops.d_matrix(k - 1).entries * ops.dc_matrix(k).entries;
            const RatMatrix b = ops.dc_matrix(k + 1).entries * ops.d_matrix(k).entries;
            if (!(a + b).is_zero()) r.d_dc_anticommute = false;
        }
        if (k >= 1) {
            RatMatrix c = zero(k - 1, k);
            if (k >= 2) c = ops.d_matrix(k - 2).entries * ops.lambda_matrix(k).entries;
            if (k + 1 <= top) c = c - ops.lambda_matrix(k + 1).entries * ops.d_matrix(k).entries;
            if (!(c == ops.dc_matrix(k).entries)) r.dc_is_commutator = false;
        }
        const auto& h = ops.H_matrix(k);
        if (h.source_degree != k || h.target_degree != k || h.entries.rows() != ops.dim(k)) r.h_preserves_degree = false;
    }
    r.star_one_is_volume = ops.star(Form::unit(ops.n())) == ops.volume();
    return r;
}

/// Some r = class_rep + d x with d^c r = 0.
inline Form harmonic_representative(const HodgeOperators& ops, const Form& class_rep) {
    const auto& spec = ops.spec();
    if (class_rep.n() != spec.n()) throw DimensionMismatch("class representative lives in the wrong dimension");
    if (!is_closed(spec, class_rep)) throw NotACocycle("class representative is not closed");
    if (class_rep.is_zero()) return class_rep;
    const auto k = class_rep.degree();
    if (!k) throw InvalidParameter("class representative must be homogeneous");
    const auto r0 = ops.to_vector(class_rep, *k);
    if (*k == 0) return class_rep;
    // (d^c_k d_{k-1}) x = -d^c_k r0
    const RatMatrix& dck = ops.dc_matrix(*k).entries;
    const RatMatrix sys = dck * ops.d_matrix(*k - 1).entries;
    std::vector<Rational> rhs(dck.rows(), Rational(0));
    for (std::size_t r = 0; r < dck.rows(); ++r)
        for (std::size_t c = 0; c < dck.cols(); ++c)
            if (dck(r, c) != 0 && r0[c] != 0) rhs[r] -= dck(r, c) * r0[c];
    const auto x = solve(sys, rhs);
    if (!x) throw NoHarmonicRepresentative("no d^c-closed representative in the class of " + class_rep.str());
    return class_rep + ops.d(ops.from_vector(*x, *k - 1));
}

inline Form harmonic_representative(const AlgebraSpec& spec, const Form& class_rep) {
    return harmonic_representative(HodgeOperators(spec), class_rep);
}

/// Ker d^c \cap Im d = Im d d^c inside Lambda^k.
inline bool ddc_lemma_check(const HodgeOperators& ops, int k) {
    if (ops.n() > kDdcMaxN) throw SizeLimit("the dd^c check is limited to n <= " + std::to_string(kDdcMaxN));
    if (k < 0 || k > ops.spec().dim()) throw InvalidParameter("degree out of range");
    if (k == 0) return true;
    const RatMatrix& D = ops.d_matrix(k - 1).entries;  // Lambda^{k-1} -> Lambda^k
    const RatMatrix& C = ops.dc_matrix(k).entries;     // Lambda^k -> Lambda^{k-1}
    const auto kernel = nullspace(C * D);
    const RatMatrix lhs = D * from_columns(D.cols(), kernel);
    const RatMatrix rhs = D * C;
    return same_column_span(lhs, rhs);
}

inline bool ddc_lemma_check(const AlgebraSpec& spec, int k) {
    if (spec.n() > kDdcMaxN) throw SizeLimit("the dd^c check is limited to n <= " + std::to_string(kDdcMaxN));
    return ddc_lemma_check(HodgeOperators(spec), k);
}

/// The three conditions that are equivalent for these algebras, evaluated independently.
struct EquivalenceWitness {
    bool hard_lefschetz = false;
    bool ddc_lemma = false;
    bool harmonic_representatives = false;

    bool consistent() const { return hard_lefschetz == ddc_lemma && ddc_lemma == harmonic_representatives; }
};

inline EquivalenceWitness equivalence_witness(const HodgeOperators& ops) {
    const auto& spec = ops.spec();
    EquivalenceWitness w;
    w.hard_lefschetz = hard_lefschetz_report(spec, ops.omega().is_standard()
                                                       ? std::nullopt
                                                       : std::optional<SymplecticForm>(ops.omega()))
                           .hard_lefschetz;
    w.ddc_lemma = true;
    for (int k = 0; k <= spec.dim(); ++k) w.ddc_lemma = w.ddc_lemma && ddc_lemma_check(ops, k);
    w.harmonic_representatives = true;
    for (int k = 0; k <= spec.dim() && w.harmonic_representatives; ++k)
        for (const auto& e : cohomology_basis(spec, k).elements) {
            try {
                const Form r = harmonic_representative(ops, e.as_form(spec.n()));
                if (!ops.d(r).is_zero() || !ops.dc(r).is_zero()) throw InvariantViolation("representative is not harmonic");
            } catch (const NoHarmonicRepresentative&) {
                w.harmonic_representatives = false;
                break;
            }
        }
    return w;
}

} // namespace hardlef

#endif // HARDLEF_SYMPLECTIC_HODGE_HPP
