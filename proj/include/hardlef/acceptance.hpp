#ifndef HARDLEF_ACCEPTANCE_HPP
#define HARDLEF_ACCEPTANCE_HPP

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "ce_complex.hpp"
#include "kneser.hpp"
#include "lattice.hpp"
#include "lefschetz.hpp"
#include "symplectic_hodge.hpp"

namespace hardlef::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

/// L_4 for n = 5 in the generic case, rows and columns in the pinned basis order.
inline const std::vector<std::string>& golden_m4_n5() {
    static const std::vector<std::string> rows = {
        "0000000111", "0000011001", "0000101010", "0000110100", "0011000001",
        "0101000010", "0110000100", "1001001000", "1010010000", "1100100000",
    };
    return rows;
}

inline IntMatrix golden_matrix(const std::vector<std::string>& rows) {
    IntMatrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c] - '0';
    return m;
}

namespace detail {

inline std::string seq(const std::vector<std::int64_t>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

template <typename Fn>
CriterionResult guarded(int id, std::string name, Fn fn) {
    CriterionResult r{id, std::move(name), false, ""};
    try {
        fn(r);
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("error: ") + e.what();
    }
    return r;
}

} // namespace detail

inline CriterionResult golden_matrix_criterion() {
    return detail::guarded(1, "golden matrix L_4 for n=5", [](CriterionResult& r) {
        const auto L = lefschetz_matrix(AlgebraSpec::generic(5), 4);
        const IntMatrix g = golden_matrix(golden_m4_n5());
        bool zero_block = true;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) zero_block = zero_block && L.entries(i, j) == 0;
        const std::vector<std::string> labels = {"δ∧γ_2", "δ∧γ_3", "δ∧γ_4", "δ∧γ_5", "γ_23",
                                                 "γ_24",  "γ_25",  "γ_34",  "γ_35",  "γ_45"};
        r.pass = L.entries == g && zero_block && L.source.labels() == labels;
        r.detail = r.pass ? "10x10 matrix matches bit-for-bit" : "matrix or basis order differs";
    });
}

inline CriterionResult betti_case1_criterion(int max_n) {
    return detail::guarded(2, "Betti numbers, generic weights", [&](CriterionResult& r) {
        const int hi = std::min(6, max_n);
        r.pass = true;
        for (int n = 2; n <= hi; ++n) {
            const auto spec = AlgebraSpec::generic(n);
            for (int k = 0; k <= 2 * n; ++k)
                if (betti_closed_form(spec, k) != betti_bruteforce(spec, k)) {
                    r.pass = false;
                    r.detail = "mismatch at n=" + std::to_string(n) + " k=" + std::to_string(k);
                    return;
                }
        }
        std::vector<std::int64_t> b5;
        for (int k = 0; k <= 10; ++k) b5.push_back(betti_closed_form(AlgebraSpec::generic(5), k));
        r.pass = b5 == std::vector<std::int64_t>{1, 2, 5, 8, 10, 12, 10, 8, 5, 2, 1};
        r.detail = "n=2.." + std::to_string(hi) + " agree; n=5 " + detail::seq(b5);
    });
}

inline CriterionResult betti_case2_criterion(int max_n) {
    return detail::guarded(3, "Betti numbers, unit weights", [&](CriterionResult& r) {
        const int hi = std::min(5, max_n);
        for (int n = 2; n <= hi; ++n) {
            const auto spec = AlgebraSpec::ones(n);
            for (int k = 0; k <= 2 * n; ++k)
                if (betti_closed_form(spec, k) != betti_bruteforce(spec, k)) {
                    r.detail = "mismatch at n=" + std::to_string(n) + " k=" + std::to_string(k);
                    return;
                }
        }
        std::vector<std::int64_t> b3;
        for (int k = 0; k <= 6; ++k) b3.push_back(betti_closed_form(AlgebraSpec::ones(3), k));
        r.pass = b3 == std::vector<std::int64_t>{1, 2, 5, 8, 5, 2, 1};
        r.detail = "n=2.." + std::to_string(hi) + " agree; n=3 " + detail::seq(b3);
    });
}

inline CriterionResult hard_lefschetz_criterion(int max_n) {
    return detail::guarded(4, "hard Lefschetz determinants", [&](CriterionResult& r) {
        const int hi = std::min(6, max_n);
        std::size_t count = 0;
        for (int n = 2; n <= hi; ++n)
            for (const auto& spec : {AlgebraSpec::generic(n), AlgebraSpec::ones(n)}) {
                const auto rep = hard_lefschetz_report(spec);
                count += rep.operators.size();
                if (!rep.hard_lefschetz) {
                    r.detail = "singular operator for " + spec.describe();
                    return;
                }
            }
        r.pass = true;
        r.detail = std::to_string(count) + " operators invertible for n=2.." + std::to_string(hi);
    });
}

inline CriterionResult kneser_structure_criterion(int max_n) {
    return detail::guarded(5, "Kneser block structure", [&](CriterionResult& r) {
        const int hi = std::min(6, max_n);
        std::size_t count = 0;
        for (int n = 2; n <= hi; ++n)
            for (const auto& spec : {AlgebraSpec::generic(n), AlgebraSpec::ones(n)})
                for (int m = 0; m <= n; ++m) {
                    const auto L = lefschetz_matrix(spec, m);
                    const auto rep = check_structure(spec, L);
                    if (spec.mode() == WeightMode::Generic && m > 0) {
                        const int k = m / 2;
                        const bool shape = m % 2 == 0
                                               ? rep.blocks.size() == 1 && rep.blocks[0].n == n && rep.blocks[0].k == k
                                               : rep.blocks.size() == 2 && rep.blocks[0].n == n - 1 &&
                                                     rep.blocks[1].n == n - 1 && rep.blocks[0].k == k &&
                                                     rep.blocks[1].k == k;
                        if (!shape) {
                            r.detail = "unexpected decomposition " + rep.description + " for " + spec.describe();
                            return;
                        }
                    }
                    ++count;
                }
        r.pass = true;
        r.detail = std::to_string(count) + " matrices decompose as predicted for n=2.." + std::to_string(hi);
    });
}

inline CriterionResult kneser_spectrum_criterion(int max_n) {
    return detail::guarded(6, "Kneser spectra", [&](CriterionResult& r) {
        const int hi = std::min(8, max_n);
        std::size_t count = 0;
        for (int n = 2; n <= hi; ++n)
            for (int k = 1; 2 * k <= n; ++k) {
                const KneserGraph g(n, k);
                if (!annihilating_product(adjacency(g), spectrum(g)).is_zero()) {
                    r.detail = g.name() + " is not annihilated";
                    return;
                }
                ++count;
            }
        r.pass = true;
        r.detail = std::to_string(count) + " graphs annihilated for n<=" + std::to_string(hi);
    });
}

inline CriterionResult pell_criterion() {
    return detail::guarded(7, "Pell minimal solutions", [](CriterionResult& r) {
        const std::vector<std::pair<int, std::pair<int, int>>> want = {{2, {6, 4}}, {3, {4, 2}}, {5, {3, 1}}, {7, {16, 6}}};
        std::string got;
        r.pass = true;
        for (const auto& [d, mk] : want) {
            const auto s = pell_min_solution(d);
            got += (got.empty() ? "" : " ") + std::string("d=") + std::to_string(d) + ":(" + s.m.str() + "," + s.k.str() + ")";
            if (s.m != mk.first || s.k != mk.second) r.pass = false;
        }
        r.detail = got;
    });
}

inline CriterionResult lattice_criterion(int max_n) {
    return detail::guarded(8, "lattice certification", [&](CriterionResult& r) {
        const auto params = case1_params(5, std::vector<Integer>{2, 3, 5, 7});
        const auto L1 = build_lattice_case1(5, params);
        const auto cert = hypothesis1_certificate(params);
        if (!L1.verified() || !cert.passed()) {
            r.detail = "case I n=5 failed verification";
            return;
        }
        const int hi = std::min(5, max_n);
        for (int n = 2; n <= hi; ++n)
            if (!build_lattice_case2(n, 3).verified()) {
                r.detail = "case II m=3 n=" + std::to_string(n) + " failed verification";
                return;
            }
        r.pass = true;
        r.detail = "case I n=5 certified; case II m=3 n=2.." + std::to_string(hi) + " verified";
    });
}

inline CriterionResult alt_remark_criterion() {
    return detail::guarded(9, "binary-magnitude parameters", [](CriterionResult& r) {
        const auto m = alt_remark_params(5, {1, 2, 3, 4});
        r.pass = m == std::vector<Integer>{4, 8, 55, 2981};
        std::string s;
        for (const auto& x : m) s += (s.empty() ? "" : ",") + x.str();
        r.detail = "(" + s + ")";
    });
}

inline AlgebraSpec powers_of_three(int n) {
    std::vector<Rational> b;
    Rational p = 3;
    for (int j = 2; j <= n; ++j, p *= 3) b.push_back(p);
    return AlgebraSpec::explicit_weights(n, b);
}

inline CriterionResult operator_suite_criterion(int max_n) {
    return detail::guarded(10, "symplectic operator suite", [&](CriterionResult& r) {
        const int hi = std::min(3, max_n);
        for (int n = 2; n <= hi; ++n) {
            const HodgeOperators ops(powers_of_three(n));
            const auto id = check_identities(ops);
            const auto w = equivalence_witness(ops);
            if (!id.all() || !w.hard_lefschetz || !w.ddc_lemma || !w.harmonic_representatives) {
                r.detail = "failure at n=" + std::to_string(n);
                return;
            }
        }
        r.pass = true;
        r.detail = "identities, harmonic representatives and dd^c lemma hold for n=2.." + std::to_string(hi);
    });
}

/// Criteria 1 to 10; the determinism criterion is evaluated by the caller.
inline std::vector<CriterionResult> run_mathematical(int max_n,
                                                     const std::function<void(const CriterionResult&)>& on_done = {}) {
    std::vector<std::function<CriterionResult()>> all = {
        [] { return golden_matrix_criterion(); },
        [&] { return betti_case1_criterion(max_n); },
        [&] { return betti_case2_criterion(max_n); },
        [&] { return hard_lefschetz_criterion(max_n); },
        [&] { return kneser_structure_criterion(max_n); },
        [&] { return kneser_spectrum_criterion(max_n); },
        [] { return pell_criterion(); },
        [&] { return lattice_criterion(max_n); },
        [] { return alt_remark_criterion(); },
        [&] { return operator_suite_criterion(max_n); },
    };
    std::vector<CriterionResult> out;
    for (auto& f : all) {
        out.push_back(f());
        if (on_done) on_done(out.back());
    }
    return out;
}

} // namespace hardlef::acceptance

#endif // HARDLEF_ACCEPTANCE_HPP
