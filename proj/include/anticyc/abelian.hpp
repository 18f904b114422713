#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <vector>

#include "anticyc/bigint.hpp"
#include "anticyc/errors.hpp"

namespace anticyc {

// Structure of a finite abelian group given as a black box: element ids
// 0..n-1, a multiplication callback, and the identity id.  Produces a cyclic
// decomposition Z/m_1 x ... x Z/m_r (invariant factors, m_{i+1} | m_i),
// generator ids for each factor, and exact coordinates for every element.
//
// Method: pick generators greedily until they span; collect relation vectors
// from a BFS of the exponent lattice; Smith-normalize the relation matrix.
struct AbelianStructure {
    std::vector<Int> invariants;             // m_1 >= m_2 >= ..., trivial factors dropped
    std::vector<std::vector<long>> gen_words; // each factor generator as exponents of raw gens
    std::vector<std::vector<Int>> coords;    // per element id: coordinates mod invariants
    std::vector<long> raw_generators;        // the greedy generating set (element ids)

    Int order() const {
        Int n = 1;
        for (auto& m : invariants) n *= m;
        return n;
    }
};

namespace detail {

// Smith normal form of an integer matrix (rows = relations, cols = generators).
// Returns diag entries d_i and unimodular col transform C with
// A * C ~ row-equivalent to diag.  Sizes here are tiny (<= ~8 columns).
struct SmithResult {
    std::vector<Int> diag;
    std::vector<std::vector<Int>> col_transform; // C, square (cols x cols)
};

inline SmithResult smith_normal_form(std::vector<std::vector<Int>> a, size_t cols) {
    size_t rows = a.size();
    std::vector<std::vector<Int>> c(cols, std::vector<Int>(cols, 0));
    for (size_t i = 0; i < cols; ++i) c[i][i] = 1;

    auto swap_rows = [&](size_t i, size_t j) { std::swap(a[i], a[j]); };
    auto swap_cols = [&](size_t i, size_t j) {
        for (size_t r = 0; r < rows; ++r) std::swap(a[r][i], a[r][j]);
        for (size_t r = 0; r < cols; ++r) std::swap(c[r][i], c[r][j]);
    };
    auto addmul_row = [&](size_t dst, size_t src, const Int& k) {
        for (size_t j = 0; j < cols; ++j) a[dst][j] += k * a[src][j];
    };
    auto addmul_col = [&](size_t dst, size_t src, const Int& k) {
        for (size_t r = 0; r < rows; ++r) a[r][dst] += k * a[r][src];
        for (size_t r = 0; r < cols; ++r) c[r][dst] += k * c[r][src];
    };

    size_t t = 0;
    while (t < rows && t < cols) {
        // find pivot: nonzero entry of smallest absolute value
        size_t pi = t, pj = t;
        bool found = false;
        Int best = 0;
        for (size_t i = t; i < rows; ++i)
            for (size_t j = t; j < cols; ++j)
                if (a[i][j] != 0 && (!found || abs(a[i][j]) < best)) {
                    best = abs(a[i][j]);
                    pi = i; pj = j; found = true;
                }
        if (!found) break;
        swap_rows(t, pi);
        swap_cols(t, pj);
        bool again = true;
        while (again) {
            again = false;
            for (size_t i = t + 1; i < rows; ++i)
                if (a[i][t] != 0) {
                    Int q = a[i][t] / a[t][t];
                    addmul_row(i, t, -q);
                    if (a[i][t] != 0) { swap_rows(t, i); again = true; }
                }
            for (size_t j = t + 1; j < cols; ++j)
                if (a[t][j] != 0) {
                    Int q = a[t][j] / a[t][t];
                    addmul_col(j, t, -q);
                    if (a[t][j] != 0) { swap_cols(t, j); again = true; }
                }
        }
        ++t;
    }
    // enforce divisibility d_i | d_{i+1}
    for (size_t i = 0; t > 0 && i + 1 < t; ++i) {
        for (size_t j = i + 1; j < t; ++j) {
            if (a[j][j] % a[i][i] != 0) {
                addmul_col(i, j, 1);
                // re-run elimination on the 2x2 block; simplest: restart
                return smith_normal_form(a, cols);
            }
        }
    }
    SmithResult res;
    res.diag.resize(cols, Int(0));
    for (size_t i = 0; i < t && i < cols; ++i) res.diag[i] = abs(a[i][i]);
    res.col_transform = c;
    return res;
}

} // namespace detail

inline AbelianStructure abelian_structure(
    long n_elements, long identity,
    const std::function<long(long, long)>& mul) {

    AbelianStructure st;
    if (n_elements <= 0) throw std::invalid_argument("abelian_structure: empty group");

    // Greedy generating set + BFS exponent vectors + relation harvesting.
    std::vector<long> gens;
    std::vector<std::vector<Int>> expo(n_elements); // exponent word per visited element
    std::vector<char> visited(n_elements, 0);
    visited[identity] = 1;
    expo[identity] = {};
    std::vector<long> frontier{identity};
    std::vector<std::vector<Int>> relations;

    auto pad = [&](std::vector<Int> v) {
        v.resize(gens.size(), Int(0));
        return v;
    };

    while (true) {
        long next_gen = -1;
        for (long e = 0; e < n_elements; ++e)
            if (!visited[e]) { next_gen = e; break; }
        if (next_gen < 0) break;
        gens.push_back(next_gen);
        for (auto& v : relations) v.resize(gens.size(), Int(0));
        // Re-span from all visited elements with the enlarged generating set.
        std::vector<long> queue;
        for (long e = 0; e < n_elements; ++e)
            if (visited[e]) { expo[e] = pad(expo[e]); queue.push_back(e); }
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            long x = queue[qi];
            for (size_t gi = 0; gi < gens.size(); ++gi) {
                long y = mul(x, gens[gi]);
                std::vector<Int> w = expo[x];
                w[gi] += 1;
                if (!visited[y]) {
                    visited[y] = 1;
                    expo[y] = w;
                    queue.push_back(y);
                } else {
                    // w - expo[y] is a relation
                    std::vector<Int> rel = w;
                    for (size_t j = 0; j < rel.size(); ++j) rel[j] -= expo[y][j];
                    bool nonzero = false;
                    for (auto& v : rel) nonzero = nonzero || v != 0;
                    if (nonzero) relations.push_back(std::move(rel));
                }
            }
        }
    }

    st.raw_generators = gens;
    size_t g = gens.size();
    if (g == 0) { // trivial group
        st.coords.assign(n_elements, {});
        return st;
    }

    auto smith = detail::smith_normal_form(relations, g);
    // The group is Z^g / rowspan(relations); with A*C in Smith form the group
    // is a product of Z/d_i on the transformed generators.  d_i = 0 cannot
    // happen for a finite group (relations have full rank).
    for (auto& d : smith.diag)
        if (d == 0) throw NonIntegralResult("abelian_structure: relation lattice not full rank");

    // With R*A*C = D, the relation lattice (the row span of A) maps to the
    // diagonal lattice under y = C^T x, so element coordinates are
    // y = C^T * (exponent word) mod d, and the generator of the i-th factor
    // is the element with exponent word C^{-T} e_i (row i of C^{-1}).
    // Invert C exactly (unimodular).
    std::vector<std::vector<Int>> cinv(g, std::vector<Int>(g, 0));
    {
        // Gaussian elimination over Q would need rationals; instead use adjugate
        // via repeated cofactor expansion — g is tiny, do simple exact inverse
        // with rational-free integer row reduction on [C | I] using that
        // det C = ±1.
        std::vector<std::vector<Rat>> m(g, std::vector<Rat>(2 * g, Rat(0)));
        for (size_t i = 0; i < g; ++i) {
            for (size_t j = 0; j < g; ++j) m[i][j] = Rat(smith.col_transform[i][j]);
            m[i][g + i] = 1;
        }
        for (size_t col = 0; col < g; ++col) {
            size_t piv = col;
            while (piv < g && m[piv][col] == 0) ++piv;
            if (piv == g) throw NonIntegralResult("abelian_structure: singular transform");
            std::swap(m[col], m[piv]);
            Rat d = m[col][col];
            for (auto& v : m[col]) v /= d;
            for (size_t r = 0; r < g; ++r) {
                if (r == col || m[r][col] == 0) continue;
                Rat f = m[r][col];
                for (size_t j = 0; j < 2 * g; ++j) m[r][j] -= f * m[col][j];
            }
        }
        for (size_t i = 0; i < g; ++i)
            for (size_t j = 0; j < g; ++j) {
                Rat v = m[i][g + j];
                if (boost::multiprecision::denominator(v) != 1)
                    throw NonIntegralResult("abelian_structure: non-unimodular transform");
                cinv[i][j] = boost::multiprecision::numerator(v);
            }
    }

    // Keep only nontrivial invariant factors (d_i > 1), sorted descending.
    struct Factor { Int d; size_t idx; };
    std::vector<Factor> keep;
    for (size_t i = 0; i < g; ++i)
        if (smith.diag[i] > 1) keep.push_back({smith.diag[i], i});
    std::sort(keep.begin(), keep.end(), [](const Factor& a, const Factor& b) { return a.d > b.d; });

    for (auto& f : keep) {
        st.invariants.push_back(f.d);
        std::vector<long> word(g);
        for (size_t r = 0; r < g; ++r)
            word[r] = (long)cinv[f.idx][r];
        st.gen_words.push_back(word);
    }

    st.coords.assign(n_elements, {});
    for (long e = 0; e < n_elements; ++e) {
        std::vector<Int> y(g, 0);
        for (size_t i = 0; i < g; ++i)
            for (size_t j = 0; j < g; ++j)
                y[i] += smith.col_transform[j][i] * expo[e][j];
        std::vector<Int> cc;
        for (auto& f : keep) cc.push_back(fmod(y[f.idx], f.d));
        st.coords[e] = std::move(cc);
    }
    return st;
}

} // namespace anticyc
