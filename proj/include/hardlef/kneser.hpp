#ifndef HARDLEF_KNESER_HPP
#define HARDLEF_KNESER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ce_complex.hpp"
#include "errors.hpp"
#include "exact.hpp"
#include "linalg.hpp"

namespace hardlef {

/// K(n,k): k-subsets of {1..n}, adjacent when disjoint. Vertices are listed in
/// lexicographic order. K(n,0) is the single empty set with no edges.
class KneserGraph {
public:
    KneserGraph(int n, int k) : n_(n), k_(k) {
        if (n < 1) throw InvalidParameter("Kneser graph needs n >= 1");
        if (k < 0 || k > n) throw InvalidParameter("Kneser graph needs 0 <= k <= n");
        std::vector<int> ground(n);
        for (int i = 0; i < n; ++i) ground[i] = i + 1;
        vertices_ = detail::combinations(ground, k);
    }

    int n() const noexcept { return n_; }
    int k() const noexcept { return k_; }
    const std::vector<std::vector<int>>& vertices() const noexcept { return vertices_; }
    std::size_t vertex_count() const noexcept { return vertices_.size(); }
    std::int64_t degree() const { return k_ == 0 ? 0 : binomial(n_ - k_, k_); }

    std::string name() const { return "K(" + std::to_string(n_) + "," + std::to_string(k_) + ")"; }

private:
    int n_, k_;
    std::vector<std::vector<int>> vertices_;
};

namespace detail {
inline std::uint32_t subset_mask(const std::vector<int>& s) {
    std::uint32_t m = 0;
    for (int i : s) m |= std::uint32_t{1} << (i - 1);
    return m;
}
} // namespace detail

inline IntMatrix adjacency(const KneserGraph& g) {
    const auto& v = g.vertices();
    std::vector<std::uint32_t> masks;
    for (const auto& s : v) masks.push_back(detail::subset_mask(s));
    IntMatrix a(v.size(), v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            if (i != j && (masks[i] & masks[j]) == 0) a(i, j) = 1;
    return a;
}

struct KneserEigenvalue {
    int j;
    Integer value;
};

inline void require_nondegenerate(const KneserGraph& g) {
    if (g.k() < 1 || 2 * g.k() > g.n())
        throw InvalidParameter(g.name() + ": the eigenvalue formula needs 1 <= k <= n/2");
}

/// lambda_j = (-1)^j C(n-k-j, k-j) for j = 0..k.
inline std::vector<KneserEigenvalue> spectrum(const KneserGraph& g) {
    require_nondegenerate(g);
    std::vector<KneserEigenvalue> out;
    for (int j = 0; j <= g.k(); ++j) {
        Integer v = binomial(g.n() - g.k() - j, g.k() - j);
        out.push_back({j, (j % 2) ? Integer(-v) : v});
    }
    return out;
}

/// prod_j (A - lambda_j I), which vanishes when every eigenvalue of A is among the lambda_j.
inline IntMatrix annihilating_product(const IntMatrix& a, const std::vector<KneserEigenvalue>& spec) {
    IntMatrix prod = IntMatrix::identity(a.rows());
    for (const auto& ev : spec) {
        IntMatrix shifted = a;
        for (std::size_t i = 0; i < a.rows(); ++i) shifted(i, i) -= ev.value;
        prod = prod * shifted;
    }
    return prod;
}

struct InvertibilityCertificate {
    int n = 0, k = 0;
    Integer determinant;
    std::vector<KneserEigenvalue> eigenvalues;
    bool annihilated = false;
};

inline InvertibilityCertificate verify_invertible(const KneserGraph& g) {
    require_nondegenerate(g);
    const IntMatrix a = adjacency(g);
    InvertibilityCertificate cert;
    cert.n = g.n();
    cert.k = g.k();
    cert.eigenvalues = spectrum(g);
    cert.determinant = bareiss_determinant(a);
    cert.annihilated = annihilating_product(a, cert.eigenvalues).is_zero();
    if (cert.determinant == 0) throw InvariantViolation(g.name() + " has a singular adjacency matrix");
    if (!cert.annihilated)
        throw InvariantViolation(g.name() + " is not annihilated by its eigenvalue polynomial");
    return cert;
}

} // namespace hardlef

#endif // HARDLEF_KNESER_HPP
