#ifndef HARDLEF_LATTICE_HPP
#define HARDLEF_LATTICE_HPP

#include <boost/multiprecision/mpfr.hpp>
#include <mpfr.h>

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "exact.hpp"
#include "linalg.hpp"

namespace hardlef {

using Real = boost::multiprecision::mpfr_float_50;
using RealMatrix = Matrix<Real>;

inline constexpr double kLatticeTolerance = 1e-9;
inline constexpr double kTraceTolerance = 1e-12;
inline constexpr double kHypothesisGap = 1e-6;
inline constexpr int kNumericCertificateMaxN = 12;

// ---------------------------------------------------------------------------
// Integer helpers

/// Trial division up to `bound`; returns the prime factorization and the
/// unfactored cofactor (1 when fully factored).
struct Factorization {
    std::vector<std::pair<Integer, int>> primes;
    Integer cofactor = 1;
    bool complete = true;
};

inline Factorization trial_factor(Integer v, std::uint64_t bound = 1'000'000) {
    Factorization f;
    if (v < 0) v = -v;
    for (std::uint64_t p = 2; p <= bound && Integer(p) * p <= v; p += (p == 2 ? 1 : 2)) {
        int e = 0;
        while (v % p == 0) {
            v /= p;
            ++e;
        }
        if (e) f.primes.emplace_back(Integer(p), e);
    }
    if (v > 1) {
        // Any cofactor below bound^2 has no factor <= bound, so it is prime.
        if (v < Integer(bound) * bound) f.primes.emplace_back(v, 1);
        else {
            f.cofactor = v;
            f.complete = false;
        }
    }
    return f;
}

inline bool is_square_free(const Integer& d) {
    if (d < 1) return false;
    const auto f = trial_factor(d);
    if (!f.complete) throw SizeLimit("cannot factor " + d.str() + " by trial division");
    for (const auto& [p, e] : f.primes)
        if (e > 1) return false;
    return true;
}

/// Square-free part of v > 0, or nullopt when trial division is inconclusive.
inline std::optional<Integer> square_free_part(const Integer& v) {
    const auto f = trial_factor(v);
    if (!f.complete) return std::nullopt;
    Integer s = 1;
    for (const auto& [p, e] : f.primes)
        if (e % 2) s *= p;
    return s;
}

inline bool is_perfect_square(const Integer& v, Integer* root = nullptr) {
    if (v < 0) return false;
    Integer r = boost::multiprecision::sqrt(v);
    if (root) *root = r;
    return r * r == v;
}

// ---------------------------------------------------------------------------
// Pell equation x^2 - d y^2 = 4

struct PellSolution {
    Integer d, m, k;
    bool minimal = true;

    bool satisfies() const { return m * m - d * k * k == 4; }
};

namespace detail {

inline PellSolution pell_brute_force(const Integer& d) {
    for (Integer y = 1;; ++y) {
        Integer x;
        if (is_perfect_square(4 + d * y * y, &x)) return {d, x, y, true};
    }
}

} // namespace detail

/// Smallest positive solution (m, k) != (2, 0). Uses the convergents of
/// sqrt(d): primitive solutions appear as convergents with norm 4 once
/// d > 16, and imprimitive ones are twice a norm-1 convergent. The scan stops
/// once q passes twice the fundamental norm-1 denominator, which bounds the
/// answer since twice that solution is itself a candidate.
inline PellSolution pell_min_solution(const Integer& d) {
    if (d < 2) throw InvalidParameter("Pell parameter d must be at least 2");
    if (!is_square_free(d)) throw InvalidParameter("Pell parameter " + d.str() + " is not square-free");
    if (d <= 16) return detail::pell_brute_force(d);
    const Integer a0 = boost::multiprecision::sqrt(d);
    Integer mm = 0, dd = 1, a = a0;
    Integer p_prev = 1, p = a0, q_prev = 0, q = 1;
    std::optional<PellSolution> best;
    std::optional<Integer> y1;
    while (!y1 || q <= 2 * *y1) {
        const Integer norm = p * p - d * q * q;
        PellSolution cand{d, 0, 0, true};
        bool have = false;
        if (norm == 4) {
            cand.m = p, cand.k = q, have = true;
        } else if (norm == 1) {
            cand.m = 2 * p, cand.k = 2 * q, have = true;
            if (!y1) y1 = q;
        }
        if (have && (!best || cand.k < best->k)) best = cand;
        mm = dd * a - mm;
        dd = (d - mm * mm) / dd;
        a = (a0 + mm) / dd;
        Integer pn = a * p + p_prev, qn = a * q + q_prev;
        p_prev = p, q_prev = q;
        p = pn, q = qn;
    }
    if (!best) throw InvariantViolation("no Pell solution found for d = " + d.str());
    return *best;
}

/// Default d_j: the first count primes.
inline std::vector<Integer> first_primes(int count) {
    std::vector<Integer> out;
    for (int v = 2; static_cast<int>(out.size()) < count; ++v) {
        bool prime = true;
        for (int p = 2; p * p <= v; ++p)
            if (v % p == 0) prime = false;
        if (prime) out.emplace_back(v);
    }
    return out;
}

inline std::vector<PellSolution> case1_params(int n, std::optional<std::vector<Integer>> d_list = std::nullopt) {
    if (n < 2) throw InvalidParameter("n must be at least 2");
    const auto ds = d_list ? *d_list : first_primes(n - 1);
    if (static_cast<int>(ds.size()) != n - 1)
        throw InvalidParameter("need exactly n-1 = " + std::to_string(n - 1) + " values of d");
    for (std::size_t i = 0; i < ds.size(); ++i) {
        if (ds[i] < 2) throw InvalidParameter("every d must be at least 2");
        if (!is_square_free(ds[i])) throw InvalidParameter("d = " + ds[i].str() + " is not square-free");
        for (std::size_t j = 0; j < i; ++j)
            if (boost::multiprecision::gcd(ds[i], ds[j]) != 1)
                throw InvalidParameter("d = " + ds[j].str() + " and d = " + ds[i].str() + " are not coprime");
    }
    std::vector<PellSolution> out;
    for (const auto& d : ds) out.push_back(pell_min_solution(d));
    return out;
}

// ---------------------------------------------------------------------------
// Lattices

/// t_m = log((m + sqrt(m^2 - 4)) / 2).
inline Real t_value(const Integer& m) {
    const Real mr(m.str());
    return log((mr + sqrt(mr * mr - 4)) / 2);
}

enum class LatticeCase { I, II };

inline std::string to_string(LatticeCase c) { return c == LatticeCase::I ? "I" : "II"; }

struct LatticeSpec {
    LatticeCase kase = LatticeCase::I;
    int n = 0;
    std::vector<Integer> d_list; // case I only
    std::vector<Integer> m_list;
    std::vector<Real> t_values;
    Real t0;
    std::vector<Real> diagonal; // A' = diag(0, a_2, -a_2, ...)
    IntMatrix E;
    Integer det_E;
    RealMatrix P;
    Real residual;       // max |P^{-1} exp(t0 A') P - E|
    Real trace_residual; // max |e^t + e^{-t} - m|
    Real eigen_residual; // max |s^2 - m s + 1| over s = e^{+-t}

    bool verified() const {
        return det_E == 1 && residual < kLatticeTolerance && trace_residual < kTraceTolerance &&
               eigen_residual < kLatticeTolerance;
    }

    /// Presentation of the lattice as a semidirect product.
    std::string presentation() const {
        const int d = 2 * n - 1;
        return "Z ⋉_E Z^" + std::to_string(d) + ", (a,p)·(b,q) = (a+b, p + E^a q)";
    }
};

namespace detail {

inline RealMatrix invert(const RealMatrix& a) {
    const std::size_t n = a.rows();
    RealMatrix m = a, inv = RealMatrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (abs(m(r, c)) > abs(m(piv, c))) piv = r;
        if (m(piv, c) == 0) throw InvariantViolation("singular conjugator");
        for (std::size_t j = 0; j < n; ++j) {
            std::swap(m(c, j), m(piv, j));
            std::swap(inv(c, j), inv(piv, j));
        }
        const Real s = 1 / m(c, c);
        for (std::size_t j = 0; j < n; ++j) m(c, j) *= s, inv(c, j) *= s;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || m(r, c) == 0) continue;
            const Real f = m(r, c);
            for (std::size_t j = 0; j < n; ++j) m(r, j) -= f * m(c, j), inv(r, j) -= f * inv(c, j);
        }
    }
    return inv;
}

inline LatticeSpec assemble(LatticeCase kase, int n, std::vector<Integer> ds, std::vector<Integer> ms,
                            const std::vector<Real>& weights, const Real& t0) {
    LatticeSpec L;
    L.kase = kase;
    L.n = n;
    L.d_list = std::move(ds);
    L.m_list = std::move(ms);
    L.t0 = t0;
    const std::size_t dim = 2 * static_cast<std::size_t>(n) - 1;
    L.E = IntMatrix(dim, dim);
    L.E(0, 0) = 1;
    RealMatrix V(dim, dim), D(dim, dim);
    V(0, 0) = 1;
    D(0, 0) = 1;
    L.diagonal.push_back(0);
    L.trace_residual = 0;
    L.eigen_residual = 0;
    for (int j = 0; j < n - 1; ++j) {
        const Integer& m = L.m_list[kase == LatticeCase::I ? j : 0];
        const Real t = t_value(m);
        if (kase == LatticeCase::I || j == 0) L.t_values.push_back(t);
        const std::size_t o = 1 + 2 * static_cast<std::size_t>(j);
        L.E(o, o + 1) = -1;
        L.E(o + 1, o) = 1;
        L.E(o + 1, o + 1) = m;
        L.diagonal.push_back(weights[j]);
        L.diagonal.push_back(-weights[j]);
        const Real s = exp(t0 * weights[j]), si = exp(-t0 * weights[j]);
        D(o, o) = s;
        D(o + 1, o + 1) = si;
        // Eigenvectors (1, -lambda) of [[0,-1],[1,m]].
        V(o, o) = 1;
        V(o + 1, o) = -s;
        V(o, o + 1) = 1;
        V(o + 1, o + 1) = -si;
        const Real mr(m.str());
        L.trace_residual = max(L.trace_residual, Real(abs(s + si - mr)));
        L.eigen_residual = max(L.eigen_residual, Real(abs(s * s - mr * s + 1)));
        L.eigen_residual = max(L.eigen_residual, Real(abs(si * si - mr * si + 1)));
    }
    L.det_E = bareiss_determinant(L.E);
    L.P = invert(V);
    const RealMatrix conj = V * (D * L.P);
    L.residual = 0;
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c)
            L.residual = max(L.residual, Real(abs(conj(r, c) - Real(L.E(r, c).str()))));
    return L;
}

} // namespace detail

/// Case I: A' = diag(0, t_{m_2}, -t_{m_2}, ...) at time t0 = 1.
inline LatticeSpec build_lattice_case1(int n, const std::vector<PellSolution>& params) {
    if (n < 2) throw InvalidParameter("n must be at least 2");
    if (static_cast<int>(params.size()) != n - 1) throw InvalidParameter("case I needs n-1 Pell solutions");
    std::vector<Integer> ds, ms;
    std::vector<Real> w;
    for (const auto& p : params) {
        if (!p.satisfies()) throw InvalidParameter("(" + p.m.str() + "," + p.k.str() + ") does not solve the Pell equation");
        if (p.m < 3) throw InvalidParameter("every m must be at least 3");
        ds.push_back(p.d);
        ms.push_back(p.m);
        w.push_back(t_value(p.m));
    }
    return detail::assemble(LatticeCase::I, n, std::move(ds), std::move(ms), w, Real(1));
}

/// Case II: unit weights at time t0 = t_m.
inline LatticeSpec build_lattice_case2(int n, const Integer& m) {
    if (n < 2) throw InvalidParameter("n must be at least 2");
    if (m < 3) throw InvalidParameter("m must be at least 3");
    return detail::assemble(LatticeCase::II, n, {}, {m}, std::vector<Real>(n - 1, Real(1)), t_value(m));
}

// ---------------------------------------------------------------------------
// Hypothesis-1 certificate

enum class StructuralStatus { Certified, SharedPrime, Inconclusive };

inline std::string to_string(StructuralStatus s) {
    switch (s) {
    case StructuralStatus::Certified: return "certified";
    case StructuralStatus::SharedPrime: return "shared-prime";
    case StructuralStatus::Inconclusive: return "inconclusive";
    }
    return "?";
}

struct Hypothesis1Certificate {
    std::vector<Integer> m_list;
    std::vector<std::optional<Integer>> square_free_parts;
    StructuralStatus structural = StructuralStatus::Inconclusive;
    std::string offending_prime;
    std::pair<std::size_t, std::size_t> offending_pair{0, 0};

    bool numeric_checked = false; // exhaustive search ran
    Real numeric_min;             // min |sum eps_j t_j| over nonzero eps
    bool numeric_ok = false;

    bool passed() const {
        return structural == StructuralStatus::Certified && (!numeric_checked || numeric_ok);
    }

    void require() const {
        if (structural == StructuralStatus::SharedPrime)
            throw CertificateFailure("square-free parts " + square_free_parts[offending_pair.first]->str() + " and " +
                                         square_free_parts[offending_pair.second]->str() + " share the prime " +
                                         offending_prime,
                                     offending_prime);
        if (structural == StructuralStatus::Inconclusive)
            throw CertificateFailure("could not factor every m^2 - 4", "");
        if (numeric_checked && !numeric_ok)
            throw CertificateFailure("a signed sum of t-values vanishes numerically", "");
    }
};

namespace detail {

inline void numeric_corroboration(Hypothesis1Certificate& c, const std::vector<Real>& t) {
    const std::size_t N = t.size();
    if (N + 1 > static_cast<std::size_t>(kNumericCertificateMaxN)) return;
    c.numeric_checked = true;
    std::vector<int> eps(N, -1);
    bool first = true;
    // Ternary counter over {-1,0,1}^N.
    while (true) {
        Real s = 0;
        bool nonzero = false;
        for (std::size_t j = 0; j < N; ++j)
            if (eps[j]) {
                nonzero = true;
                s += eps[j] > 0 ? t[j] : Real(-t[j]);
            }
        if (nonzero) {
            const Real a = abs(s);
            if (first || a < c.numeric_min) c.numeric_min = a;
            first = false;
        }
        std::size_t j = 0;
        while (j < N && eps[j] == 1) eps[j++] = -1;
        if (j == N) break;
        ++eps[j];
    }
    c.numeric_ok = !first && c.numeric_min > kHypothesisGap;
}

inline void structural_check(Hypothesis1Certificate& c) {
    c.structural = StructuralStatus::Certified;
    for (const auto& s : c.square_free_parts)
        if (!s) c.structural = StructuralStatus::Inconclusive;
    if (c.structural != StructuralStatus::Certified) return;
    for (std::size_t i = 0; i < c.square_free_parts.size(); ++i)
        for (std::size_t j = i + 1; j < c.square_free_parts.size(); ++j) {
            const Integer g = boost::multiprecision::gcd(*c.square_free_parts[i], *c.square_free_parts[j]);
            if (g != 1) {
                c.structural = StructuralStatus::SharedPrime;
                c.offending_pair = {i, j};
                c.offending_prime = trial_factor(g).primes.front().first.str();
                return;
            }
        }
}

} // namespace detail

/// From Pell solutions: checks m^2 - d k^2 = 4, d square-free and the d pairwise coprime.
inline Hypothesis1Certificate hypothesis1_certificate(const std::vector<PellSolution>& params) {
    Hypothesis1Certificate c;
    std::vector<Real> t;
    for (const auto& p : params) {
        if (!p.satisfies()) throw InvalidParameter("(" + p.m.str() + "," + p.k.str() + ") does not solve the Pell equation");
        if (!is_square_free(p.d)) throw InvalidParameter("d = " + p.d.str() + " is not square-free");
        c.m_list.push_back(p.m);
        c.square_free_parts.emplace_back(p.d);
        t.push_back(t_value(p.m));
    }
    detail::structural_check(c);
    detail::numeric_corroboration(c, t);
    return c;
}

/// From bare m values: factors m^2 - 4 to find the square-free parts.
inline Hypothesis1Certificate hypothesis1_certificate(const std::vector<Integer>& m_list) {
    Hypothesis1Certificate c;
    std::vector<Real> t;
    for (const auto& m : m_list) {
        if (m < 3) throw InvalidParameter("every m must be at least 3");
        c.m_list.push_back(m);
        c.square_free_parts.push_back(square_free_part(m * m - 4));
        t.push_back(t_value(m));
    }
    detail::structural_check(c);
    detail::numeric_corroboration(c, t);
    return c;
}

// ---------------------------------------------------------------------------
// Binary-magnitude parameters

inline constexpr int kAltRemarkMaxK = 20;

namespace detail {

class MpfrValue {
public:
    explicit MpfrValue(mpfr_prec_t bits) { mpfr_init2(v_, bits); }
    ~MpfrValue() { mpfr_clear(v_); }
    MpfrValue(const MpfrValue&) = delete;
    MpfrValue& operator=(const MpfrValue&) = delete;
    mpfr_ptr get() { return v_; }

private:
    mpfr_t v_;
};

/// ceil(2 cosh(2^e)) with directed rounding; nullopt if the two roundings disagree.
inline std::optional<Integer> ceil_two_cosh_pow2(int e, mpfr_prec_t bits) {
    Integer lo, hi;
    for (mpfr_rnd_t rnd : {MPFR_RNDD, MPFR_RNDU}) {
        MpfrValue x(bits);
        mpfr_set_ui_2exp(x.get(), 1, e, MPFR_RNDN);
        mpfr_cosh(x.get(), x.get(), rnd);
        mpfr_mul_2ui(x.get(), x.get(), 1, rnd);
        Integer z;
        mpfr_get_z(z.backend().data(), x.get(), MPFR_RNDU);
        (rnd == MPFR_RNDD ? lo : hi) = z;
    }
    if (lo != hi) return std::nullopt;
    return lo;
}

} // namespace detail

/// Smallest m_j with 2cosh(2^{k_j - 1}) <= m_j < 2cosh(2^{k_j}).
inline std::vector<Integer> alt_remark_params(int n, const std::vector<int>& k_list) {
    if (n < 2) throw InvalidParameter("n must be at least 2");
    if (static_cast<int>(k_list.size()) != n - 1)
        throw InvalidParameter("need exactly n-1 = " + std::to_string(n - 1) + " exponents");
    for (std::size_t i = 0; i < k_list.size(); ++i) {
        if (k_list[i] < 1) throw InvalidParameter("exponents must be at least 1");
        if (k_list[i] > kAltRemarkMaxK) throw InvalidParameter("exponents above " + std::to_string(kAltRemarkMaxK) + " are not supported");
        if (i && k_list[i] <= k_list[i - 1]) throw InvalidParameter("exponents must be strictly increasing");
    }
    std::vector<Integer> out;
    for (int k : k_list) {
        // 2cosh(2^k) ~ e^{2^k}: 2^k / ln 2 bits plus guard bits.
        mpfr_prec_t bits = static_cast<mpfr_prec_t>(std::ldexp(1.0, k) / std::log(2.0)) + 128;
        std::optional<Integer> lower;
        while (!(lower = detail::ceil_two_cosh_pow2(k - 1, bits))) bits *= 2;
        std::optional<Integer> upper;
        while (!(upper = detail::ceil_two_cosh_pow2(k, bits))) bits *= 2;
        // m < 2cosh(2^k) iff m < ceil(2cosh(2^k)), as 2cosh(2^k) is never an integer.
        if (!(*lower < *upper)) throw InvariantViolation("empty interval for k = " + std::to_string(k));
        out.push_back(*lower);
    }
    return out;
}

/// (d, k) with m^2 - 4 = k^2 d and d square-free.
inline PellSolution pell_from_m(const Integer& m) {
    if (m < 3) throw InvalidParameter("m must be at least 3");
    const auto d = square_free_part(m * m - 4);
    if (!d) throw SizeLimit("cannot factor m^2 - 4 for m = " + m.str());
    Integer k;
    if (!is_perfect_square((m * m - 4) / *d, &k)) throw InvariantViolation("square-free part does not divide evenly");
    return {*d, m, k, false};
}

/// 2^{k_j - 1} < t_{m_j} < 2^{k_j} for every j, so the integer parts of the
/// t-values have distinct binary lengths.
inline bool binary_magnitudes_separated(const std::vector<Integer>& m_list, const std::vector<int>& k_list) {
    if (m_list.size() != k_list.size()) throw InvalidParameter("need one exponent per m");
    for (std::size_t j = 0; j < m_list.size(); ++j) {
        const Real t = t_value(m_list[j]);
        if (!(t > Real(std::ldexp(1.0, k_list[j] - 1)) && t < Real(std::ldexp(1.0, k_list[j])))) return false;
    }
    return true;
}

} // namespace hardlef

#endif // HARDLEF_LATTICE_HPP
