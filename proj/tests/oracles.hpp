#pragma once

// Test-only oracles, independent of the implementation paths they check.

#include <functional>
#include <map>
#include <random>
#include <vector>

#include "mice/coeff.hpp"
#include "mice/lattice.hpp"

namespace oracles {

/// Schur polynomial by brute-force semistandard-tableau expansion.
inline mice::CoeffElem schur_by_tableaux(const mice::Partition& lambda, int r, int n = 1) {
    using mice::CoeffElem;
    std::vector<int> shape;
    for (int part : lambda.parts)
        if (part > 0) shape.push_back(part);
    CoeffElem out = CoeffElem::zero(n, r);
    if (shape.empty()) return CoeffElem::one(n, r);
    std::vector<std::pair<int, int>> cells;
    for (std::size_t i = 0; i < shape.size(); ++i)
        for (int j = 0; j < shape[i]; ++j) cells.emplace_back(static_cast<int>(i), j);
    std::map<std::pair<int, int>, int> fill;
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == cells.size()) {
            std::vector<int> zp(r, 0);
            for (const auto& [cell, val] : fill) ++zp[val - 1];
            out += CoeffElem::monomial(1, 0, zp, {}, n);
            return;
        }
        auto [i, j] = cells[k];
        int lo = 1;
        if (j > 0) lo = std::max(lo, fill[{i, j - 1}]);          // weak increase along rows
        if (i > 0) lo = std::max(lo, fill[{i - 1, j}] + 1);      // strict increase down columns
        for (int val = lo; val <= r; ++val) {
            fill[{i, j}] = val;
            rec(k + 1);
        }
        fill.erase({i, j});
    };
    rec(0);
    return out;
}

/// Reduce a raw g-exponent map by repeatedly cancelling one pair at a time in
/// a randomized order; confluence says the result must match normalize_g.
inline std::pair<int, std::vector<std::pair<int, int>>> shuffled_g_reduce(int n, std::map<int, int> exps,
                                                                          std::mt19937_64& rng) {
    int v_extra = 0;
    while (true) {
        std::vector<int> reducible;
        for (const auto& [a, e] : exps) {
            if (e <= 0) continue;
            int b = n - a;
            if (a == b && e >= 2) reducible.push_back(a);
            if (a < b && exps.count(b) && exps[b] > 0) reducible.push_back(a);
        }
        if (reducible.empty()) break;
        int a = reducible[rng() % reducible.size()];
        int b = n - a;
        if (a == b) {
            exps[a] -= 2;
        } else {
            exps[a] -= 1;
            exps[b] -= 1;
        }
        ++v_extra;
    }
    std::vector<std::pair<int, int>> rest;
    for (const auto& [a, e] : exps)
        if (e > 0) rest.emplace_back(a, e);
    return {v_extra, rest};
}

/// Random small element for property tests; deterministic in the generator.
inline mice::CoeffElem random_elem(int n, int r, std::mt19937_64& rng) {
    using mice::CoeffElem;
    CoeffElem out = CoeffElem::zero(n, r);
    int terms = 1 + static_cast<int>(rng() % 4);
    for (int t = 0; t < terms; ++t) {
        std::vector<int> zp(r);
        for (auto& e : zp) e = static_cast<int>(rng() % 7) - 3;
        std::map<int, int> graw;
        for (int a = 1; a < n; ++a)
            if (rng() % 3 == 0) graw[a] = static_cast<int>(rng() % 3);
        int coeff = static_cast<int>(rng() % 9) - 4;
        int vp = static_cast<int>(rng() % 4) - 1;
        out += CoeffElem::monomial(coeff, vp, zp, graw, n);
    }
    return out;
}

}  // namespace oracles
