#pragma once

// Rectangular lattice systems of Gamma/Delta rows: boundary conditions,
// admissible-state enumeration, and the per-row charge statistic.
//
// Conventions.  Grid positions run left-to-right, but column *labels* run
// right-to-left starting at 0 (matching the boundary data "- in columns
// lambda_i + r - i").  Row 1 is the top row.  Every system has spin + on the
// left edges and - on the right edges.

#include <array>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "mice/errors.hpp"

namespace mice {

enum class Spin : unsigned char { Plus, Minus };

inline char spin_char(Spin s) { return s == Spin::Plus ? '+' : '-'; }
inline Spin flip(Spin s) { return s == Spin::Plus ? Spin::Minus : Spin::Plus; }

enum class RowType : unsigned char { Gamma, Delta };

inline const char* row_type_name(RowType t) { return t == RowType::Gamma ? "gamma" : "delta"; }

/// Weakly decreasing sequence of non-negative integers.
struct Partition {
    std::vector<int> parts;

    explicit Partition(std::vector<int> p = {}) : parts(std::move(p)) {
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (parts[i] < 0) throw ContractViolation("Partition: negative part");
            if (i > 0 && parts[i] > parts[i - 1])
                throw ContractViolation("Partition: parts must be weakly decreasing");
        }
    }
    int size() const { return static_cast<int>(parts.size()); }
};

/// Strictly decreasing set of column labels.
struct ColumnSet {
    std::vector<int> columns;

    explicit ColumnSet(std::vector<int> c = {}) : columns(std::move(c)) {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (columns[i] < 0) throw ContractViolation("ColumnSet: negative column");
            if (i > 0 && columns[i] >= columns[i - 1])
                throw ContractViolation("ColumnSet: columns must be strictly decreasing");
        }
    }
    int size() const { return static_cast<int>(columns.size()); }
    int max_column() const { return columns.empty() ? -1 : columns.front(); }
    bool contains(int c) const {
        for (int x : columns)
            if (x == c) return true;
        return false;
    }
};

/// Columns lambda_i + k - i for i = 1..k; strictly decreasing since lambda is
/// weakly decreasing.
inline ColumnSet columns_from_partition(const Partition& lambda, int k) {
    if (lambda.size() != k) throw ContractViolation("columns_from_partition: partition must have k parts");
    std::vector<int> cols(k);
    for (int i = 0; i < k; ++i) cols[i] = lambda.parts[i] + k - 1 - i;
    return ColumnSet(std::move(cols));
}

struct RowSpec {
    RowType type;
    int param;  // 1-based z-variable index
};

struct SystemSpec {
    int columns = 0;
    std::vector<RowSpec> rows;
    ColumnSet top_minus;
    ColumnSet bottom_minus;
    int n = 1;

    int row_count() const { return static_cast<int>(rows.size()); }

    /// Flux conservation: |top_minus| = |bottom_minus| + rows.
    bool flux_valid() const { return top_minus.size() == bottom_minus.size() + row_count(); }

    void validate() const {
        if (columns < 1) throw ContractViolation("SystemSpec: need at least one column");
        if (rows.empty()) throw ContractViolation("SystemSpec: need at least one row");
        if (n < 1) throw ContractViolation("SystemSpec: need n >= 1");
        if (top_minus.max_column() >= columns || bottom_minus.max_column() >= columns)
            throw ContractViolation("SystemSpec: column label out of range");
        if (!flux_valid())
            throw ContractViolation("SystemSpec: flux violation (|top -| != |bottom -| + rows)");
        for (const auto& row : rows)
            if (row.param < 1) throw ContractViolation("SystemSpec: bad parameter index");
    }
};

/// All-X system with top boundary determined by lambda, M = lambda_1 + r
/// columns, row i carrying parameter z_i.
inline SystemSpec build_standard_system(const Partition& lambda, int r, const std::vector<RowType>& row_types,
                                        int n) {
    if (lambda.size() != r) throw ContractViolation("build_standard_system: lambda must have r parts");
    if (static_cast<int>(row_types.size()) != r)
        throw ContractViolation("build_standard_system: need one row type per row");
    SystemSpec spec;
    spec.columns = (r > 0 ? lambda.parts[0] : 0) + r;
    for (int i = 0; i < r; ++i) spec.rows.push_back(RowSpec{row_types[i], i + 1});
    spec.top_minus = columns_from_partition(lambda, r);
    spec.bottom_minus = ColumnSet{};
    spec.n = n;
    spec.validate();
    return spec;
}

inline SystemSpec build_standard_system(const Partition& lambda, int r, RowType t, int n) {
    return build_standard_system(lambda, r, std::vector<RowType>(r, t), n);
}

enum class TwoRowOrder : unsigned char { GammaDelta, DeltaGamma };

/// Two-row system.  GammaDelta: top row Gamma with z1 over Delta with z2;
/// DeltaGamma: top row Delta with z2 over Gamma with z1.  M defaults to the
/// smallest width containing every labeled column (padding with + columns on
/// the left never changes the partition function).
inline SystemSpec build_two_row(const ColumnSet& top, const ColumnSet& bottom, TwoRowOrder order, int n,
                                int columns = 0) {
    SystemSpec spec;
    int needed = std::max(top.max_column(), bottom.max_column()) + 1;
    spec.columns = columns > 0 ? columns : std::max(needed, 1);
    if (spec.columns < needed)
        throw ContractViolation("build_two_row: column count below max labeled column");
    if (order == TwoRowOrder::GammaDelta) {
        spec.rows = {RowSpec{RowType::Gamma, 1}, RowSpec{RowType::Delta, 2}};
    } else {
        spec.rows = {RowSpec{RowType::Delta, 2}, RowSpec{RowType::Gamma, 1}};
    }
    spec.top_minus = top;
    spec.bottom_minus = bottom;
    spec.n = n;
    if (!spec.flux_valid())
        throw ContractViolation("build_two_row: flux violation, need |top| = |bottom| + 2 (got " +
                                std::to_string(top.size()) + " vs " + std::to_string(bottom.size()) + ")");
    spec.validate();
    return spec;
}

// ---------------------------------------------------------------------------
// States

/// Spins on every edge.  horiz[i][j]: row i's horizontal edges left-to-right,
/// j = 0..M (0 = left boundary).  vert[l][p]: vertical edges between row l-1
/// and row l at grid position p (l = 0 is the top boundary, l = rows the
/// bottom one).
struct SpinState {
    std::vector<std::vector<Spin>> horiz;
    std::vector<std::vector<Spin>> vert;
};

struct ChargedState {
    SpinState spins;
    std::vector<std::vector<int>> charges;  // parallel to spins.horiz
};

/// Charge of each horizontal edge: Gamma rows count + edges weakly to the
/// right; Delta rows count - edges weakly to the left (both mod n).
inline std::vector<int> row_charges(RowType t, const std::vector<Spin>& h, int n) {
    const int m = static_cast<int>(h.size());
    std::vector<int> ch(m, 0);
    if (t == RowType::Gamma) {
        int acc = 0;
        for (int j = m - 1; j >= 0; --j) {
            if (h[j] == Spin::Plus) ++acc;
            ch[j] = acc % n;
        }
    } else {
        int acc = 0;
        for (int j = 0; j < m; ++j) {
            if (h[j] == Spin::Minus) ++acc;
            ch[j] = acc % n;
        }
    }
    return ch;
}

inline ChargedState derive_charges(const SpinState& s, const std::vector<RowSpec>& rows, int n) {
    ChargedState out;
    out.spins = s;
    out.charges.reserve(s.horiz.size());
    for (std::size_t i = 0; i < s.horiz.size(); ++i)
        out.charges.push_back(row_charges(rows[i].type, s.horiz[i], n));
    return out;
}

namespace detail {

// The six admissible (right, bottom) continuations per (left, top), shared by
// both row types; ordered Plus-first so the enumeration order is fixed.
inline const std::vector<std::pair<Spin, Spin>>& vertex_options(Spin left, Spin top) {
    using S = Spin;
    // patterns (left, top, right, bottom): a1 ++++ / a2 ---- / b1 +-+- /
    // b2 -+-+ / c1 -++- / c2 +--+
    static const std::vector<std::pair<S, S>> pp = {{S::Plus, S::Plus}};                      // a1
    static const std::vector<std::pair<S, S>> mm = {{S::Minus, S::Minus}};                    // a2
    static const std::vector<std::pair<S, S>> pm = {{S::Plus, S::Minus}, {S::Minus, S::Plus}};// b1, c2
    static const std::vector<std::pair<S, S>> mp = {{S::Plus, S::Minus}, {S::Minus, S::Plus}};// c1, b2
    if (left == S::Plus) return top == S::Plus ? pp : pm;
    return top == S::Plus ? mp : mm;
}

}  // namespace detail

/// Depth-first enumeration of admissible states, completed with derived
/// charges.  Deterministic: rows top to bottom, columns left to right, Plus
/// branch first.  Accepts flux-violating specs (the stream is then empty).
inline void enumerate_admissible(const SystemSpec& spec, const std::function<void(const ChargedState&)>& visit) {
    const int M = spec.columns;
    const int R = spec.row_count();
    SpinState st;
    st.horiz.assign(R, std::vector<Spin>(M + 1, Spin::Plus));
    st.vert.assign(R + 1, std::vector<Spin>(M, Spin::Plus));
    for (int p = 0; p < M; ++p) {
        st.vert[0][p] = spec.top_minus.contains(M - 1 - p) ? Spin::Minus : Spin::Plus;
        st.vert[R][p] = spec.bottom_minus.contains(M - 1 - p) ? Spin::Minus : Spin::Plus;
    }

    std::function<void(int, int)> walk = [&](int row, int p) {
        if (p == M) {
            if (st.horiz[row][M] != Spin::Minus) return;  // right boundary
            if (row + 1 == R) {
                visit(derive_charges(st, spec.rows, spec.n));
            } else {
                st.horiz[row + 1][0] = Spin::Plus;  // left boundary
                walk(row + 1, 0);
            }
            return;
        }
        const bool last_row = row + 1 == R;
        for (auto [right, bottom] : detail::vertex_options(st.horiz[row][p], st.vert[row][p])) {
            if (last_row && bottom != st.vert[R][p]) continue;
            st.horiz[row][p + 1] = right;
            if (!last_row) st.vert[row + 1][p] = bottom;
            walk(row, p + 1);
        }
    };
    st.horiz[0][0] = Spin::Plus;
    walk(0, 0);
}

inline std::vector<ChargedState> enumerate_admissible(const SystemSpec& spec) {
    std::vector<ChargedState> out;
    enumerate_admissible(spec, [&out](const ChargedState& s) { out.push_back(s); });
    return out;
}

}  // namespace mice
