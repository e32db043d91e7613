#ifndef HARDLEF_EXTERIOR_ALGEBRA_HPP
#define HARDLEF_EXTERIOR_ALGEBRA_HPP

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "exact.hpp"

namespace hardlef {

/// Largest supported n; monomials live in a 32-bit mask over 2n positions.
inline constexpr int kMaxHalfDimension = 16;

/// Wedge of basis covectors e^{i_1} ^ ... ^ e^{i_p} with i_1 < ... < i_p.
/// Index i (1-based) is stored as bit i-1. The empty monomial is the unit 1.
class Monomial {
public:
    constexpr Monomial() = default;

    static constexpr Monomial from_mask(std::uint32_t mask) {
        Monomial m;
        m.mask_ = mask;
        return m;
    }

    /// Indices must be strictly increasing and lie in [1, 32].
    static Monomial from_indices(std::span<const int> indices) {
        std::uint32_t mask = 0;
        int last = 0;
        for (int i : indices) {
            if (i <= last) throw InvalidParameter("monomial indices must be strictly increasing and positive");
            if (i > 2 * kMaxHalfDimension) throw InvalidParameter("monomial index out of range");
            mask |= std::uint32_t{1} << (i - 1);
            last = i;
        }
        return from_mask(mask);
    }

    static Monomial from_indices(std::initializer_list<int> indices) {
        return from_indices(std::span<const int>(indices.begin(), indices.size()));
    }

    static constexpr Monomial unit() { return Monomial{}; }

    /// The single covector e^i.
    static constexpr Monomial basis(int i) { return from_mask(std::uint32_t{1} << (i - 1)); }

    /// e^1 ^ ... ^ e^{2n}.
    static constexpr Monomial top(int n) {
        return from_mask(n >= kMaxHalfDimension ? ~std::uint32_t{0} : (std::uint32_t{1} << (2 * n)) - 1);
    }

    constexpr std::uint32_t mask() const noexcept { return mask_; }
    constexpr int degree() const noexcept { return std::popcount(mask_); }
    constexpr bool contains(int i) const noexcept { return (mask_ >> (i - 1)) & 1u; }
    constexpr bool disjoint(Monomial o) const noexcept { return (mask_ & o.mask_) == 0; }
    constexpr int max_index() const noexcept { return 32 - std::countl_zero(mask_); }

    /// True when every index is at most 2n.
    constexpr bool fits(int n) const noexcept { return (mask_ & ~top(n).mask_) == 0; }

    std::vector<int> indices() const {
        std::vector<int> out;
        for (std::uint32_t m = mask_; m; m &= m - 1) out.push_back(std::countr_zero(m) + 1);
        return out;
    }

    constexpr Monomial operator|(Monomial o) const noexcept { return from_mask(mask_ | o.mask_); }

    /// Graded lexicographic order: by degree, then lexicographic on ascending indices.
    friend constexpr bool operator<(Monomial a, Monomial b) noexcept {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        const std::uint32_t diff = a.mask_ ^ b.mask_;
        if (diff == 0) return false;
        return (a.mask_ & (diff & (~diff + 1))) != 0;
    }
    friend constexpr bool operator==(Monomial, Monomial) = default;

    std::string str() const {
        if (mask_ == 0) return "1";
        std::string s = "e^{";
        bool first = true;
        for (int i : indices()) {
            if (!first) s += ",";
            s += std::to_string(i);
            first = false;
        }
        return s + "}";
    }

private:
    std::uint32_t mask_ = 0;
};

/// Sign of e^a ^ e^b relative to the ascending monomial a|b, or 0 on collision:
/// (-1)^(number of pairs i in a, j in b with i > j).
constexpr int wedge_sign(Monomial a, Monomial b) noexcept {
    if (!a.disjoint(b)) return 0;
    int inversions = 0;
    for (std::uint32_t m = b.mask(); m; m &= m - 1) {
        const int j = std::countr_zero(m);
        const std::uint32_t above = j >= 31 ? 0u : ~((std::uint32_t{2} << j) - 1);
        inversions += std::popcount(a.mask() & above);
    }
    return (inversions & 1) ? -1 : 1;
}

/// All degree-k monomials in 2n variables, in graded lexicographic order.
inline std::vector<Monomial> monomials_of_degree(int n, int k) {
    std::vector<Monomial> out;
    const int dim = 2 * n;
    if (k < 0 || k > dim) return out;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i + 1;
    while (true) {
        out.push_back(Monomial::from_indices(idx));
        int i = k - 1;
        while (i >= 0 && idx[i] == dim - k + i + 1) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

/// Sparse element of the exterior algebra on 2n generators with exact rational
/// coefficients. Zero coefficients are never stored.
class Form {
public:
    using Terms = std::map<Monomial, Rational>;

    explicit Form(int n) : n_(n) {
        if (n < 1 || n > kMaxHalfDimension) throw InvalidParameter("ambient n out of range");
    }

    Form(int n, Monomial m, Rational c = 1) : Form(n) { add_term(m, std::move(c)); }

    static Form unit(int n) { return Form(n, Monomial::unit()); }

    int n() const noexcept { return n_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    void add_term(Monomial m, const Rational& c) {
        if (!m.fits(n_)) throw DimensionMismatch("monomial " + m.str() + " exceeds 2n = " + std::to_string(2 * n_));
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Rational coefficient(Monomial m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// The degree when every term has the same degree; nullopt for 0 or mixed forms.
    std::optional<int> degree() const {
        if (terms_.empty()) return std::nullopt;
        const int d = terms_.begin()->first.degree();
        for (const auto& [m, c] : terms_)
            if (m.degree() != d) return std::nullopt;
        return d;
    }

    Form homogeneous_part(int k) const {
        Form out(n_);
        for (const auto& [m, c] : terms_)
            if (m.degree() == k) out.terms_.emplace(m, c);
        return out;
    }

    Form& operator+=(const Form& o) {
        check_same(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Form& operator-=(const Form& o) {
        check_same(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    Form& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_) c *= s;
        return *this;
    }

    friend Form operator+(Form a, const Form& b) { return a += b; }
    friend Form operator-(Form a, const Form& b) { return a -= b; }
    friend Form operator*(const Rational& s, Form a) { return a *= s; }
    friend Form operator-(Form a) { return a *= Rational(-1); }
    friend bool operator==(const Form& a, const Form& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [m, c] : terms_) {
            if (!s.empty()) s += " + ";
            s += "(" + to_string(c) + ")" + m.str();
        }
        return s;
    }

    void check_same(const Form& o) const {
        if (o.n_ != n_)
            throw DimensionMismatch("forms live in different ambient dimensions (2n = " + std::to_string(2 * n_) +
                                    " vs " + std::to_string(2 * o.n_) + ")");
    }

private:
    int n_;
    Terms terms_;
};

inline Form wedge(const Form& a, const Form& b) {
    a.check_same(b);
    Form out(a.n());
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            const int s = wedge_sign(ma, mb);
            if (s == 0) continue;
            out.add_term(ma | mb, s > 0 ? Rational(ca * cb) : Rational(-(ca * cb)));
        }
    return out;
}

/// k-fold wedge power; power(f, 0) is the unit.
inline Form power(const Form& f, int k) {
    Form out = Form::unit(f.n());
    for (int i = 0; i < k; ++i) out = wedge(out, f);
    return out;
}

inline Rational coefficient(const Form& f, Monomial m) { return f.coefficient(m); }

/// Coefficient of e^1 ^ ... ^ e^{2n} in a ^ b.
inline Rational top_pairing(const Form& a, const Form& b) {
    a.check_same(b);
    const int n = a.n();
    const Monomial top = Monomial::top(n);
    Rational acc = 0;
    for (const auto& [ma, ca] : a.terms()) {
        const Monomial want = Monomial::from_mask(top.mask() & ~ma.mask());
        auto cb = b.coefficient(want);
        if (cb == 0) continue;
        acc += wedge_sign(ma, want) * ca * cb;
    }
    return acc;
}

} // namespace hardlef

#endif // HARDLEF_EXTERIOR_ALGEBRA_HPP
