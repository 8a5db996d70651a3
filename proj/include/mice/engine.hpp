#pragma once

// Partition functions by direct enumeration and by row transfer matrices.
// The two routes are independent and cross-validated in the test suite.

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "mice/boltzmann.hpp"
#include "mice/lattice.hpp"

namespace mice {

/// Product of the vertex weights of an admissible state, in the r-variable
/// ring (r must cover every parameter index of the spec).
inline CoeffElem state_weight(const SystemSpec& spec, const ChargedState& st, int r) {
    CoeffElem w = CoeffElem::one(spec.n, r);
    for (int row = 0; row < spec.row_count(); ++row) {
        for (int p = 0; p < spec.columns; ++p) {
            VertexPattern vp{st.spins.vert[row][p], st.spins.horiz[row][p + 1], st.spins.vert[row + 1][p],
                             st.spins.horiz[row][p], st.charges[row][p], st.charges[row][p + 1]};
            CoeffElem wv = vertex_weight(spec.rows[row].type, vp, spec.rows[row].param, spec.n, r);
            if (wv.is_zero()) return CoeffElem::zero(spec.n, r);
            w *= wv;
        }
    }
    return w;
}

struct PartitionResult {
    CoeffElem value;
    long state_count = 0;
};

inline PartitionResult partition_function_counted(const SystemSpec& spec, int r) {
    PartitionResult out{CoeffElem::zero(spec.n, r), 0};
    enumerate_admissible(spec, [&](const ChargedState& st) {
        out.value += state_weight(spec, st, r);
        ++out.state_count;
    });
    return out;
}

inline CoeffElem partition_function(const SystemSpec& spec, int r) {
    return partition_function_counted(spec, r).value;
}

// ---------------------------------------------------------------------------
// Row transfer matrices
//
// Index space: vertical-spin vectors encoded as bit masks, bit p (from the
// left) set when the edge at grid position p is Minus.  Charges never cross
// rows, so the index carries spins only.

struct TransferMatrix {
    int columns = 0;
    RowType type = RowType::Gamma;
    int param = 1;
    int n = 1;
    std::map<std::pair<std::uint32_t, std::uint32_t>, CoeffElem> entries;  // (top, bottom) -> weight

    const CoeffElem* entry(std::uint32_t top, std::uint32_t bottom) const {
        auto it = entries.find({top, bottom});
        return it == entries.end() ? nullptr : &it->second;
    }
};

namespace detail {

/// Enumerate one row with fixed top spins: calls sink(bottom_mask, weight)
/// for every admissible completion with left boundary + and right boundary -.
template <class Sink>
void row_completions(RowType type, int param, int M, int n, int r, std::uint32_t top_mask, Sink&& sink) {
    std::vector<Spin> h(M + 1), bottom(M);
    h[0] = Spin::Plus;
    std::vector<Spin> top(M);
    for (int p = 0; p < M; ++p) top[p] = (top_mask >> p) & 1 ? Spin::Minus : Spin::Plus;

    std::function<void(int)> walk = [&](int p) {
        if (p == M) {
            if (h[M] != Spin::Minus) return;
            std::vector<int> ch = row_charges(type, h, n);
            CoeffElem w = CoeffElem::one(n, r);
            std::uint32_t bmask = 0;
            for (int q = 0; q < M; ++q) {
                VertexPattern vp{top[q], h[q + 1], bottom[q], h[q], ch[q], ch[q + 1]};
                CoeffElem wv = vertex_weight(type, vp, param, n, r);
                if (wv.is_zero()) return;
                w *= wv;
                if (bottom[q] == Spin::Minus) bmask |= 1u << q;
            }
            sink(bmask, w);
            return;
        }
        for (auto [right, bot] : vertex_options(h[p], top[p])) {
            h[p + 1] = right;
            bottom[p] = bot;
            walk(p + 1);
        }
    };
    walk(0);
}

}  // namespace detail

inline TransferMatrix row_transfer_matrix(RowType type, int param, int M, int n, int r) {
    if (M < 1 || M > 20) throw ContractViolation("row_transfer_matrix: column count out of range");
    TransferMatrix T{M, type, param, n, {}};
    for (std::uint32_t top = 0; top < (1u << M); ++top) {
        detail::row_completions(type, param, M, n, r, top, [&](std::uint32_t bot, const CoeffElem& w) {
            auto key = std::make_pair(top, bot);
            auto it = T.entries.find(key);
            if (it == T.entries.end())
                T.entries.emplace(key, w);
            else
                it->second += w;
        });
    }
    return T;
}

inline std::uint32_t boundary_mask(const ColumnSet& cs, int M) {
    std::uint32_t mask = 0;
    for (int label : cs.columns) mask |= 1u << (M - 1 - label);
    return mask;
}

/// Z by multiplying row transfer matrices down the rows; contract: equals
/// partition_function exactly.  Rows are applied lazily (one DFS per reached
/// top vector) rather than materializing full matrices.
inline CoeffElem partition_via_transfer(const SystemSpec& spec, int r) {
    const int M = spec.columns;
    std::map<std::uint32_t, CoeffElem> vec;
    vec.emplace(boundary_mask(spec.top_minus, M), CoeffElem::one(spec.n, r));
    for (const auto& row : spec.rows) {
        std::map<std::uint32_t, CoeffElem> next;
        for (const auto& [top, val] : vec) {
            if (val.is_zero()) continue;
            detail::row_completions(row.type, row.param, M, spec.n, r, top,
                                    [&](std::uint32_t bot, const CoeffElem& w) {
                                        auto it = next.find(bot);
                                        if (it == next.end())
                                            next.emplace(bot, val * w);
                                        else
                                            it->second += val * w;
                                    });
        }
        vec = std::move(next);
    }
    auto it = vec.find(boundary_mask(spec.bottom_minus, M));
    return it == vec.end() ? CoeffElem::zero(spec.n, r) : it->second;
}

}  // namespace mice
