#ifndef HARDLEF_CE_COMPLEX_HPP
#define HARDLEF_CE_COMPLEX_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "exact.hpp"
#include "exterior_algebra.hpp"
#include "linalg.hpp"

namespace hardlef {

/// How the diagonal entries b_2, ..., b_n are fixed.
///  - Generic:  no numeric values; every nonzero {-1,0,1} combination of the
///              b_j is assumed nonzero.
///  - Ones:     b_j = 1 for all j.
///  - Explicit: the given rationals.
enum class WeightMode { Generic, Ones, Explicit };

inline std::string to_string(WeightMode m) {
    switch (m) {
    case WeightMode::Generic: return "generic";
    case WeightMode::Ones: return "ones";
    case WeightMode::Explicit: return "explicit";
    }
    return "?";
}

/// The 2n-dimensional almost abelian Lie algebra with
/// A = diag(0, b_2, ..., b_n, -b_2, ..., -b_n).
class AlgebraSpec {
public:
    static AlgebraSpec generic(int n) { return AlgebraSpec(n, WeightMode::Generic, {}); }
    static AlgebraSpec ones(int n) { return AlgebraSpec(n, WeightMode::Ones, {}); }

    /// `b` holds b_2, ..., b_n.
    static AlgebraSpec explicit_weights(int n, std::vector<Rational> b) {
        if (static_cast<int>(b.size()) != n - 1)
            throw InvalidParameter("explicit mode needs exactly n-1 = " + std::to_string(n - 1) +
                                   " values, got " + std::to_string(b.size()));
        return AlgebraSpec(n, WeightMode::Explicit, std::move(b));
    }

    /// Explicit weights b_j = 3^j. Distinct powers of three have no vanishing
    /// {-1,0,1} combination, so this realizes the generic case over the integers.
    static AlgebraSpec generic_witness(int n) {
        std::vector<Rational> b;
        Integer p = 9;
        for (int j = 2; j <= n; ++j, p *= 3) b.emplace_back(p);
        return explicit_weights(n, std::move(b));
    }

    int n() const noexcept { return n_; }
    int dim() const noexcept { return 2 * n_; }
    WeightMode mode() const noexcept { return mode_; }
    const std::vector<Rational>& explicit_b() const noexcept { return b_; }

    /// sigma(i) = i + n - 1, the partner of e^i in the pair (e^i, e^{sigma(i)}).
    int sigma(int i) const noexcept { return i + n_ - 1; }

    /// b_2..b_n as numbers; nullopt in generic mode.
    std::optional<std::vector<Rational>> numeric_weights() const {
        switch (mode_) {
        case WeightMode::Generic: return std::nullopt;
        case WeightMode::Ones: return std::vector<Rational>(n_ - 1, Rational(1));
        case WeightMode::Explicit: return b_;
        }
        return std::nullopt;
    }

    std::string describe() const {
        std::string s = "n=" + std::to_string(n_) + " mode=" + to_string(mode_);
        if (mode_ == WeightMode::Explicit) {
            s += " b=";
            for (std::size_t i = 0; i < b_.size(); ++i) s += (i ? "," : "") + to_string(b_[i]);
        }
        return s;
    }

private:
    AlgebraSpec(int n, WeightMode mode, std::vector<Rational> b) : n_(n), mode_(mode), b_(std::move(b)) {
        if (n < 2) throw InvalidParameter("n must be at least 2");
        if (n > kMaxHalfDimension) throw InvalidParameter("n must be at most " + std::to_string(kMaxHalfDimension));
    }

    int n_;
    WeightMode mode_;
    std::vector<Rational> b_;
};

/// Formal coefficient of each b_j (j = 2..n, stored at j-2) in the sum of the
/// diagonal entries of A picked out by a monomial.
struct WeightVector {
    std::vector<int> coeffs;

    /// Generic: the vector itself vanishes. Ones: entries sum to zero.
    /// Explicit: the dot product with b vanishes.
    bool is_zero(const AlgebraSpec& spec) const {
        switch (spec.mode()) {
        case WeightMode::Generic:
            return std::all_of(coeffs.begin(), coeffs.end(), [](int c) { return c == 0; });
        case WeightMode::Ones:
            return std::accumulate(coeffs.begin(), coeffs.end(), 0) == 0;
        case WeightMode::Explicit:
            return evaluate(spec.explicit_b()) == 0;
        }
        return false;
    }

    Rational evaluate(std::span<const Rational> b) const {
        if (b.size() != coeffs.size()) throw DimensionMismatch("weight vector length mismatch");
        Rational acc = 0;
        for (std::size_t j = 0; j < coeffs.size(); ++j)
            if (coeffs[j] != 0) acc += coeffs[j] * b[j];
        return acc;
    }

    friend bool operator==(const WeightVector&, const WeightVector&) = default;
};

inline void check_fits(const AlgebraSpec& spec, Monomial m) {
    if (!m.fits(spec.n()))
        throw DimensionMismatch("monomial " + m.str() + " exceeds 2n = " + std::to_string(spec.dim()));
}

/// Entry for b_j is +1 when j is in m and -1 when sigma(j) is in m.
/// Indices 1 and 2n contribute nothing.
inline WeightVector weight(const AlgebraSpec& spec, Monomial m) {
    check_fits(spec, m);
    WeightVector w{std::vector<int>(spec.n() - 1, 0)};
    for (int j = 2; j <= spec.n(); ++j) {
        if (m.contains(j)) w.coeffs[j - 2] += 1;
        if (m.contains(spec.sigma(j))) w.coeffs[j - 2] -= 1;
    }
    return w;
}

inline bool is_zero_weight(const AlgebraSpec& spec, Monomial m) { return weight(spec, m).is_zero(spec); }

/// d m = (-1)^{deg m + 1} w(m) m ^ e^{2n}: the target monomial and the sign in
/// front of the weight, or nullopt when 2n is already in m.
inline std::optional<std::pair<Monomial, int>> differential_shape(const AlgebraSpec& spec, Monomial m) {
    check_fits(spec, m);
    const int top = spec.dim();
    if (m.contains(top)) return std::nullopt;
    // e^{2n} is the largest index, so appending it never reorders.
    return std::make_pair(m | Monomial::basis(top), (m.degree() % 2 == 0) ? -1 : 1);
}

/// Numeric differential. Generic mode has no numbers; use symbolic_differential.
inline Form differential(const AlgebraSpec& spec, const Form& f) {
    if (f.n() != spec.n()) throw DimensionMismatch("form and algebra disagree on n");
    const auto b = spec.numeric_weights();
    if (!b) throw UnsupportedMode("the numeric differential needs ones or explicit weights");
    Form out(spec.n());
    for (const auto& [m, c] : f.terms()) {
        auto shape = differential_shape(spec, m);
        if (!shape) continue;
        const Rational w = weight(spec, m).evaluate(*b);
        if (w == 0) continue;
        out.add_term(shape->first, shape->second * w * c);
    }
    return out;
}

/// A form whose coefficients are linear forms in b_2..b_n
/// (coefficient vector of length n-1 per monomial).
class SymbolicForm {
public:
    explicit SymbolicForm(int n) : n_(n) {}

    int n() const noexcept { return n_; }
    const std::map<Monomial, std::vector<Rational>>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    void add_term(Monomial m, const std::vector<Rational>& lin) {
        auto [it, inserted] = terms_.try_emplace(m, std::vector<Rational>(n_ - 1, Rational(0)));
        for (std::size_t j = 0; j < lin.size(); ++j) it->second[j] += lin[j];
        if (std::all_of(it->second.begin(), it->second.end(), [](const Rational& x) { return x == 0; }))
            terms_.erase(it);
    }

    Form evaluate(std::span<const Rational> b) const {
        Form out(n_);
        for (const auto& [m, lin] : terms_) {
            Rational c = 0;
            for (std::size_t j = 0; j < lin.size(); ++j) c += lin[j] * b[j];
            out.add_term(m, c);
        }
        return out;
    }

private:
    int n_;
    std::map<Monomial, std::vector<Rational>> terms_;
};

/// Differential with the b_j left as symbols. Valid in every mode.
inline SymbolicForm symbolic_differential(const AlgebraSpec& spec, const Form& f) {
    if (f.n() != spec.n()) throw DimensionMismatch("form and algebra disagree on n");
    SymbolicForm out(spec.n());
    for (const auto& [m, c] : f.terms()) {
        auto shape = differential_shape(spec, m);
        if (!shape) continue;
        const auto w = weight(spec, m);
        std::vector<Rational> lin(w.coeffs.size());
        for (std::size_t j = 0; j < lin.size(); ++j) lin[j] = shape->second * w.coeffs[j] * c;
        out.add_term(shape->first, lin);
    }
    return out;
}

/// Closedness under the mode: in generic mode the symbolic differential must vanish identically.
inline bool is_closed(const AlgebraSpec& spec, const Form& f) {
    if (spec.mode() == WeightMode::Generic) return symbolic_differential(spec, f).is_zero();
    return differential(spec, f).is_zero();
}

// ---------------------------------------------------------------------------
// Ordered cohomology bases

/// Source bases index a class by its own multi-index (gamma-bar_I); target
/// bases index it by the complementary multi-index (Gamma-bar_J). Lefschetz
/// matrices use the source order on H^m and the target order on H^{2n-m}.
enum class BasisRole { Source, Target };

inline BasisRole default_role(int n, int degree) { return degree <= n ? BasisRole::Source : BasisRole::Target; }

/// Position of a basis element in the (p, R, S, I) decomposition.
/// side: 0 for even degree, 1 for the e^1 block, 2 for the e^{2n} block.
/// `index` is I for source bases and J for target bases.
struct BasisKey {
    int side = 0;
    int p = 0;
    std::vector<int> R, S, index;

    friend bool operator==(const BasisKey&, const BasisKey&) = default;
};

struct BasisElement {
    Monomial monomial;
    int sign = 1; // the class is sign * monomial
    std::string label;
    std::optional<BasisKey> key; // absent in explicit mode

    Form as_form(int n) const { return Form(n, monomial, Rational(sign)); }
};

struct CohomologyBasis {
    int n = 0;
    int degree = 0;
    BasisRole role = BasisRole::Source;
    std::vector<BasisElement> elements;

    std::size_t size() const noexcept { return elements.size(); }

    std::vector<std::string> labels() const {
        std::vector<std::string> out;
        for (const auto& e : elements) out.push_back(e.label);
        return out;
    }

    std::optional<std::size_t> index_of(Monomial m) const {
        for (std::size_t i = 0; i < elements.size(); ++i)
            if (elements[i].monomial == m) return i;
        return std::nullopt;
    }
};

namespace detail {

inline std::vector<std::vector<int>> combinations(const std::vector<int>& pool, int k) {
    std::vector<std::vector<int>> out;
    const int n = static_cast<int>(pool.size());
    if (k < 0 || k > n) return out;
    std::vector<int> pick(k);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
        std::vector<int> c(k);
        for (int i = 0; i < k; ++i) c[i] = pool[pick[i]];
        out.push_back(std::move(c));
        int i = k - 1;
        while (i >= 0 && pick[i] == n - k + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
    return out;
}

inline std::string multi_index(const std::vector<int>& idx) {
    const bool compact = std::all_of(idx.begin(), idx.end(), [](int i) { return i < 10; });
    std::string s;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (!compact && i) s += ",";
        s += std::to_string(idx[i]);
    }
    return compact ? s : "{" + s + "}";
}

inline std::vector<int> set_minus(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline std::string join_wedge(const std::vector<std::string>& parts) {
    std::string s;
    for (const auto& p : parts) {
        if (p.empty()) continue;
        if (!s.empty()) s += "∧";
        s += p;
    }
    return s.empty() ? "1" : s;
}

/// Builds sign * monomial for a product of commuting 2-forms with optional
/// e^1 prefix or e^{2n} suffix.
class ProductBuilder {
public:
    explicit ProductBuilder(const AlgebraSpec& spec) : spec_(spec) {}

    void gamma_bar(int l) {
        if (l == 1) push(1, spec_.dim());
        else push(l, spec_.sigma(l));
    }
    void theta(int r, int s) { push(r, spec_.sigma(s)); }
    void covector(int i) { append(Monomial::basis(i)); }

    Monomial monomial() const { return mono_; }
    int sign() const { return sign_; }

private:
    void push(int a, int b) { append(Monomial::from_indices({a, b})); }
    void append(Monomial m) {
        const int s = wedge_sign(mono_, m);
        if (s == 0) throw InvariantViolation("repeated covector while building a basis element");
        sign_ *= s;
        mono_ = mono_ | m;
    }

    const AlgebraSpec& spec_;
    Monomial mono_;
    int sign_ = 1;
};

inline void append_structured(const AlgebraSpec& spec, int degree, BasisRole role, std::vector<BasisElement>& out) {
    const int n = spec.n();
    const bool even = degree % 2 == 0;
    const int half = even ? degree / 2 : (degree - 1) / 2;
    // Length of the chosen multi-index: own indices for a source basis,
    // complementary indices for a target basis.
    const int kk = role == BasisRole::Source ? half : (even ? n - half : n - 1 - half);
    const int max_p = spec.mode() == WeightMode::Ones ? kk : 0;
    std::vector<int> upper; // {2..n}
    for (int i = 2; i <= n; ++i) upper.push_back(i);

    const std::vector<int> sides = even ? std::vector<int>{0} : std::vector<int>{1, 2};
    for (int side : sides) {
        for (int p = 0; p <= max_p; ++p) {
            for (const auto& R : combinations(upper, p)) {
                for (const auto& S : combinations(upper, p)) {
                    std::vector<int> RS;
                    std::set_union(R.begin(), R.end(), S.begin(), S.end(), std::back_inserter(RS));
                    if (static_cast<int>(RS.size()) != 2 * p) continue;
                    std::vector<int> pool = even ? std::vector<int>{1} : std::vector<int>{};
                    for (int i : set_minus(upper, RS)) pool.push_back(i);
                    for (const auto& idx : combinations(pool, kk - p)) {
                        const auto gammas = role == BasisRole::Source ? idx : set_minus(pool, idx);
                        ProductBuilder pb(spec);
                        if (side == 1) pb.covector(1);
                        for (int l : gammas) pb.gamma_bar(l);
                        for (int t = 0; t < p; ++t) pb.theta(R[t], S[t]);
                        if (side == 2) pb.covector(spec.dim());

                        std::vector<std::string> parts;
                        if (side == 1) parts.push_back("e1");
                        if (role == BasisRole::Source) {
                            std::vector<int> rest = idx;
                            if (!rest.empty() && rest.front() == 1) {
                                parts.push_back("δ");
                                rest.erase(rest.begin());
                            }
                            if (!rest.empty()) parts.push_back("γ_" + multi_index(rest));
                        } else {
                            std::vector<int> rest = idx;
                            if (even && !(rest.size() && rest.front() == 1)) parts.push_back("δ");
                            if (!rest.empty() && rest.front() == 1) rest.erase(rest.begin());
                            parts.push_back(rest.empty() ? "Γ" : "Γ_" + multi_index(rest));
                        }
                        if (p > 0) parts.push_back("θ_" + multi_index(R) + "|" + multi_index(S));
                        if (side == 2) parts.push_back("e" + std::to_string(spec.dim()));

                        out.push_back(BasisElement{pb.monomial(), pb.sign(), join_wedge(parts),
                                                   BasisKey{side, p, R, S, idx}});
                    }
                }
            }
        }
    }
}

} // namespace detail

/// Basis of H^degree: exactly the monomials of zero weight. In generic and
/// ones modes the elements are ordered and labelled by the gamma/Gamma
/// conventions (delta playing the role of index 1, odd degrees listing the
/// e^1 block before the e^{2n} block, the ones mode grouped by p, R, S and then
/// the gamma multi-index). Explicit mode lists the zero-weight monomials in
/// graded lexicographic order.
inline CohomologyBasis cohomology_basis(const AlgebraSpec& spec, int degree, BasisRole role) {
    if (degree < 0 || degree > spec.dim())
        throw InvalidParameter("degree must lie in [0, 2n], got " + std::to_string(degree));
    CohomologyBasis basis{spec.n(), degree, role, {}};
    if (spec.mode() == WeightMode::Explicit) {
        for (Monomial m : monomials_of_degree(spec.n(), degree))
            if (is_zero_weight(spec, m)) basis.elements.push_back(BasisElement{m, 1, m.str(), std::nullopt});
        return basis;
    }
    detail::append_structured(spec, degree, role, basis.elements);
    return basis;
}

inline CohomologyBasis cohomology_basis(const AlgebraSpec& spec, int degree) {
    return cohomology_basis(spec, degree, default_role(spec.n(), degree));
}

// ---------------------------------------------------------------------------
// Betti numbers

/// Closed-form Betti numbers; only the generic and ones modes have one.
inline std::int64_t betti_closed_form(const AlgebraSpec& spec, int degree) {
    const int n = spec.n();
    if (degree < 0 || degree > spec.dim()) return 0;
    const int k = degree / 2;
    const bool even = degree % 2 == 0;
    switch (spec.mode()) {
    case WeightMode::Generic:
        return even ? binomial(n, k) : 2 * binomial(n - 1, k);
    case WeightMode::Ones: {
        const auto a = binomial(n - 1, k);
        if (!even) return 2 * a * a;
        const auto c = binomial(n - 1, k - 1);
        return a * a + c * c;
    }
    case WeightMode::Explicit:
        break;
    }
    throw UnsupportedMode("no closed form for explicit weights; use betti_bruteforce");
}

inline constexpr int kBruteforceMaxN = 7;

/// Integer weights proportional to the numeric b (scaled by the lcm of denominators).
inline std::vector<Integer> integral_weights(const AlgebraSpec& spec) {
    const AlgebraSpec numeric = spec.mode() == WeightMode::Generic ? AlgebraSpec::generic_witness(spec.n()) : spec;
    const auto b = *numeric.numeric_weights();
    Integer l = 1;
    for (const auto& q : b) l = boost::multiprecision::lcm(l, denominator_of(q));
    std::vector<Integer> out;
    for (const auto& q : b) out.push_back(numerator_of(q) * (l / denominator_of(q)));
    return out;
}

/// Rows of the matrix of d: Lambda^k -> Lambda^{k+1} (one sparse row per
/// source monomial in graded lexicographic order, columns indexing
/// Lambda^{k+1} in the same order), with the given integer weights.
inline std::vector<SparseRow> differential_rows(const AlgebraSpec& spec, std::span<const Integer> b, int k) {
    std::vector<SparseRow> rows;
    if (k < 0 || k >= spec.dim()) return rows;
    const auto targets = monomials_of_degree(spec.n(), k + 1);
    std::unordered_map<std::uint32_t, std::size_t> column;
    for (std::size_t i = 0; i < targets.size(); ++i) column.emplace(targets[i].mask(), i);
    for (Monomial m : monomials_of_degree(spec.n(), k)) {
        SparseRow row;
        if (auto shape = differential_shape(spec, m)) {
            Integer w = 0;
            const auto wv = weight(spec, m);
            for (std::size_t j = 0; j < wv.coeffs.size(); ++j)
                if (wv.coeffs[j]) w += wv.coeffs[j] * b[j];
            if (w != 0) row.emplace_back(column.at(shape->first.mask()), shape->second * w);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

/// dim ker d_k - rank d_{k-1}, by fraction-free elimination on the full
/// differential matrices. Generic mode is evaluated at the witness b_j = 3^j.
inline std::int64_t betti_bruteforce(const AlgebraSpec& spec, int degree) {
    if (spec.n() > kBruteforceMaxN)
        throw SizeLimit("brute-force Betti numbers are limited to n <= " + std::to_string(kBruteforceMaxN));
    if (degree < 0 || degree > spec.dim()) return 0;
    const auto b = integral_weights(spec);
    const auto rank_out = sparse_rank(differential_rows(spec, b, degree));
    const auto rank_in = sparse_rank(differential_rows(spec, b, degree - 1));
    return binomial(spec.dim(), degree) - static_cast<std::int64_t>(rank_out) - static_cast<std::int64_t>(rank_in);
}

} // namespace hardlef

#endif // HARDLEF_CE_COMPLEX_HPP
