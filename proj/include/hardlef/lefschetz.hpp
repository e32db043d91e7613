#ifndef HARDLEF_LEFSCHETZ_HPP
#define HARDLEF_LEFSCHETZ_HPP

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ce_complex.hpp"
#include "errors.hpp"
#include "exact.hpp"
#include "exterior_algebra.hpp"
#include "kneser.hpp"
#include "linalg.hpp"
#include "parallel.hpp"

namespace hardlef {

/// A closed, nondegenerate 2-form on the Lie algebra.
class SymplecticForm {
public:
    /// omega = e^1 ^ e^{2n} + sum_{i=2}^{n} e^i ^ e^{sigma(i)}.
    static SymplecticForm standard(const AlgebraSpec& spec) {
        Form w(spec.n());
        w.add_term(Monomial::from_indices({1, spec.dim()}), 1);
        for (int i = 2; i <= spec.n(); ++i) w.add_term(Monomial::from_indices({i, spec.sigma(i)}), 1);
        return SymplecticForm(spec, std::move(w), true);
    }

    /// Checks degree, closedness and nondegeneracy; throws InvalidSymplecticForm.
    static SymplecticForm validate(const AlgebraSpec& spec, Form w) {
        if (w.n() != spec.n()) throw InvalidSymplecticForm("form lives in the wrong dimension");
        if (w.degree() != 2) throw InvalidSymplecticForm("a symplectic form must be a nonzero 2-form");
        if (!is_closed(spec, w)) throw InvalidSymplecticForm("form is not closed");
        SymplecticForm s(spec, std::move(w), false);
        if (determinant(s.matrix()) == 0) throw InvalidSymplecticForm("form is degenerate");
        return s;
    }

    const Form& form() const noexcept { return form_; }
    int n() const noexcept { return form_.n(); }
    bool is_standard() const noexcept { return standard_; }

    /// W(a,b) = omega(e_a, e_b), antisymmetric, 0-based.
    RatMatrix matrix() const {
        const std::size_t d = 2 * static_cast<std::size_t>(n());
        RatMatrix w(d, d);
        for (const auto& [m, c] : form_.terms()) {
            const auto idx = m.indices();
            w(idx[0] - 1, idx[1] - 1) = c;
            w(idx[1] - 1, idx[0] - 1) = -c;
        }
        return w;
    }

private:
    SymplecticForm(const AlgebraSpec&, Form w, bool standard) : form_(std::move(w)), standard_(standard) {}

    Form form_;
    bool standard_;
};

inline Form omega_power(const SymplecticForm& omega, int k) {
    if (k < 0 || k > omega.n()) throw InvalidParameter("omega power must lie in [0, n]");
    return power(omega.form(), k);
}

inline Form omega_power(const AlgebraSpec& spec, int k) { return omega_power(SymplecticForm::standard(spec), k); }

/// Keeps the zero-weight monomials of a closed form. Because d is diagonal on
/// monomials, these are exactly the non-exact part and span cohomology.
inline Form project_to_cohomology(const AlgebraSpec& spec, const Form& f) {
    if (!is_closed(spec, f)) throw NotACocycle("cannot project a non-closed form to cohomology");
    Form out(spec.n());
    for (const auto& [m, c] : f.terms())
        if (is_zero_weight(spec, m)) out.add_term(m, c);
    return out;
}

enum class StructureKind { Identity, SingleKneser, TwoKneserBlocks, DirectSum, Unstructured };

inline std::string to_string(StructureKind k) {
    switch (k) {
    case StructureKind::Identity: return "identity";
    case StructureKind::SingleKneser: return "kneser";
    case StructureKind::TwoKneserBlocks: return "two-kneser-blocks";
    case StructureKind::DirectSum: return "direct-sum";
    case StructureKind::Unstructured: return "unstructured";
    }
    return "?";
}

/// One diagonal block: A(K(n,k)) or, when k = 0, the 1x1 identity.
struct StructureBlock {
    int n = 0, k = 0;
    std::size_t offset = 0, size = 0;
    int side = 0, p = 0;
    std::vector<int> R, S;

    std::string name() const {
        if (k == 0) return "I_" + std::to_string(size);
        return "K(" + std::to_string(n) + "," + std::to_string(k) + ")";
    }

    IntMatrix expected() const {
        if (k == 0) return IntMatrix::identity(size);
        return adjacency(KneserGraph(n, k));
    }
};

/// Matrix of L_m = omega^{n-m}/(n-m)! ^ . : H^m -> H^{2n-m}. Column I is the
/// image of source basis element I, row J the coordinate along target element J.
struct LefschetzMatrix {
    int n = 0, m = 0;
    IntMatrix entries;
    CohomologyBasis source, target;
    StructureKind kind = StructureKind::Unstructured;
    std::vector<StructureBlock> blocks;

    std::string structure() const {
        if (blocks.empty()) return to_string(kind);
        std::string s;
        for (const auto& b : blocks) s += (s.empty() ? "" : " ⊕ ") + b.name();
        return s;
    }
};

namespace detail {

/// Rational matrix of L_m for an arbitrary symplectic form.
inline RatMatrix lefschetz_operator(const AlgebraSpec& spec, const SymplecticForm& omega, int m,
                                    const CohomologyBasis& src, const CohomologyBasis& tgt) {
    const int n = spec.n();
    const Form wk = omega_power(omega, n - m);
    const Rational scale = Rational(1) / Rational(factorial(n - m));
    std::unordered_map<std::uint32_t, std::size_t> row_of;
    for (std::size_t j = 0; j < tgt.size(); ++j) row_of.emplace(tgt.elements[j].monomial.mask(), j);
    RatMatrix out(tgt.size(), src.size());
    for (std::size_t i = 0; i < src.size(); ++i) {
        const Form image = project_to_cohomology(spec, wedge(wk, src.elements[i].as_form(n)));
        for (const auto& [mono, c] : image.terms()) {
            auto it = row_of.find(mono.mask());
            if (it == row_of.end())
                throw InvariantViolation("projected image " + mono.str() + " is not a basis monomial of H^" +
                                         std::to_string(2 * n - m));
            out(it->second, i) = c * scale * tgt.elements[it->second].sign;
        }
    }
    return out;
}

inline std::vector<StructureBlock> expected_blocks(const AlgebraSpec& spec, const CohomologyBasis& src) {
    std::vector<StructureBlock> blocks;
    const int n = spec.n();
    const int kk = src.degree % 2 == 0 ? src.degree / 2 : (src.degree - 1) / 2;
    for (std::size_t i = 0; i < src.size(); ++i) {
        const auto& key = *src.elements[i].key;
        if (!blocks.empty()) {
            auto& last = blocks.back();
            if (last.side == key.side && last.p == key.p && last.R == key.R && last.S == key.S) {
                ++last.size;
                continue;
            }
        }
        StructureBlock b;
        b.n = (src.degree % 2 == 0 ? n : n - 1) - 2 * key.p;
        b.k = kk - key.p;
        b.offset = i;
        b.size = 1;
        b.side = key.side;
        b.p = key.p;
        b.R = key.R;
        b.S = key.S;
        blocks.push_back(std::move(b));
    }
    return blocks;
}

} // namespace detail

inline void require_source_degree(const AlgebraSpec& spec, int m) {
    if (m < 0 || m > spec.n()) throw InvalidParameter("Lefschetz degree m must lie in [0, n]");
}

/// L_m for the standard form. Entries are integers by construction.
inline LefschetzMatrix lefschetz_matrix(const AlgebraSpec& spec, int m) {
    require_source_degree(spec, m);
    LefschetzMatrix L;
    L.n = spec.n();
    L.m = m;
    L.source = cohomology_basis(spec, m, BasisRole::Source);
    L.target = cohomology_basis(spec, spec.dim() - m, BasisRole::Target);
    const RatMatrix q = detail::lefschetz_operator(spec, SymplecticForm::standard(spec), m, L.source, L.target);
    L.entries = IntMatrix(q.rows(), q.cols());
    for (std::size_t r = 0; r < q.rows(); ++r)
        for (std::size_t c = 0; c < q.cols(); ++c) {
            if (!is_integral(q(r, c)))
                throw InvariantViolation("non-integer Lefschetz entry " + to_string(q(r, c)));
            L.entries(r, c) = numerator_of(q(r, c));
        }
    if (spec.mode() == WeightMode::Explicit) {
        L.kind = StructureKind::Unstructured;
        return L;
    }
    L.blocks = detail::expected_blocks(spec, L.source);
    if (m == 0) L.kind = StructureKind::Identity;
    else if (spec.mode() == WeightMode::Ones) L.kind = StructureKind::DirectSum;
    else L.kind = m % 2 == 0 ? StructureKind::SingleKneser : StructureKind::TwoKneserBlocks;
    return L;
}

struct StructureReport {
    StructureKind kind;
    std::vector<StructureBlock> blocks;
    std::size_t total_size = 0;
    std::string description;
};

/// Compares L against the direct sum of Kneser adjacency matrices predicted
/// by the basis decomposition. Throws StructureViolation at the first
/// differing entry.
inline StructureReport check_structure(const AlgebraSpec& spec, const LefschetzMatrix& L) {
    if (spec.mode() == WeightMode::Explicit)
        throw UnsupportedMode("Kneser structure is only defined for the generic and ones modes");
    StructureReport rep{L.kind, L.blocks, 0, L.structure()};
    std::vector<IntMatrix> parts;
    for (const auto& b : L.blocks) {
        rep.total_size += b.size;
        parts.push_back(b.expected());
        if (parts.back().rows() != b.size)
            throw StructureViolation("block " + b.name() + " has the wrong size", b.offset, b.offset,
                                     std::to_string(parts.back().rows()), std::to_string(b.size));
    }
    const auto betti = static_cast<std::size_t>(betti_closed_form(spec, L.m));
    if (rep.total_size != betti)
        throw InvariantViolation("block sizes sum to " + std::to_string(rep.total_size) + " but b_" +
                                 std::to_string(L.m) + " = " + std::to_string(betti));
    // Rows and columns must be grouped identically.
    for (const auto& b : L.blocks)
        for (std::size_t i = b.offset; i < b.offset + b.size; ++i) {
            const auto& rk = *L.target.elements[i].key;
            if (rk.side != b.side || rk.p != b.p || rk.R != b.R || rk.S != b.S)
                throw StructureViolation("target basis grouping differs from source grouping", i, i, b.name(),
                                         L.target.elements[i].label);
        }
    const IntMatrix expected = direct_sum(parts);
    if (expected.rows() != L.entries.rows() || expected.cols() != L.entries.cols())
        throw InvariantViolation("Lefschetz matrix is not square of size b_m");
    for (std::size_t r = 0; r < expected.rows(); ++r)
        for (std::size_t c = 0; c < expected.cols(); ++c)
            if (expected(r, c) != L.entries(r, c))
                throw StructureViolation("Lefschetz matrix differs from " + rep.description, r, c,
                                         to_string(expected(r, c)), to_string(L.entries(r, c)));
    return rep;
}

struct LefschetzDeterminant {
    int m = 0;
    std::size_t size = 0;
    Rational determinant;
};

struct HardLefschetzReport {
    bool standard_form = true;
    std::vector<LefschetzDeterminant> operators;
    bool hard_lefschetz = false;
};

/// Determinants of L_m for every 0 <= m <= n, for the standard form or a
/// validated user form.
inline HardLefschetzReport hard_lefschetz_report(const AlgebraSpec& spec,
                                                 const std::optional<SymplecticForm>& user_form = std::nullopt) {
    const SymplecticForm omega = user_form ? *user_form : SymplecticForm::standard(spec);
    HardLefschetzReport rep;
    rep.standard_form = !user_form.has_value();
    rep.operators = parallel_map(static_cast<std::size_t>(spec.n()) + 1, [&](std::size_t i) {
        const int m = static_cast<int>(i);
        LefschetzDeterminant row;
        row.m = m;
        if (!user_form) {
            const auto L = lefschetz_matrix(spec, m);
            row.size = L.entries.rows();
            row.determinant = Rational(bareiss_determinant(L.entries));
        } else {
            const auto src = cohomology_basis(spec, m, BasisRole::Source);
            const auto tgt = cohomology_basis(spec, spec.dim() - m, BasisRole::Target);
            const RatMatrix q = detail::lefschetz_operator(spec, omega, m, src, tgt);
            row.size = q.rows();
            row.determinant = q.square() ? determinant(q) : Rational(0);
        }
        return row;
    });
    rep.hard_lefschetz = true;
    for (const auto& op : rep.operators)
        if (op.determinant == 0) rep.hard_lefschetz = false;
    return rep;
}

} // namespace hardlef

#endif // HARDLEF_LEFSCHETZ_HPP
