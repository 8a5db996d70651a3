#pragma once

// The complete weight tables: Gamma/Delta grid vertices and the four tilted
// crossing-vertex tables (GammaDelta, DeltaDelta, DeltaGamma, GammaGamma),
// plus the convention calibration that pins every slot assignment.
//
// Grid vertex slots are (top, right, bottom, left) spins with (left, right)
// charges; a Gamma row increments charge left = right + 1 exactly when the
// left horizontal spin is +, a Delta row increments right = left + 1 when
// the right spin is -.  Minus horizontal legs of Gamma vertices (and plus
// legs of Delta vertices) only admit charge 0; everything unlisted weighs 0.
//
// Tilted vertices couple two lines: the X line runs SW-NE with parameter
// z_{xp}, the Y line NW-SE with z_{yp}.  The table below is written against
// slot order (SW, NW, NE, SE); this specific order is the unique one under
// which all four Yang-Baxter equations hold (see calibrate_conventions and
// the test suite), so treat it as load-bearing.

#include <optional>
#include <string>

#include "mice/coeff.hpp"
#include "mice/lattice.hpp"

namespace mice {

struct VertexPattern {
    Spin top, right, bottom, left;
    int left_charge = 0, right_charge = 0;
};

inline CoeffElem gamma_weight(const VertexPattern& p, int param, int n, int r) {
    using S = Spin;
    const int cl = ((p.left_charge % n) + n) % n;
    const int cr = ((p.right_charge % n) + n) % n;
    const auto zero = CoeffElem::zero(n, r);
    const auto z = CoeffElem::z_power(n, r, param);
    const S l = p.left, t = p.top, rt = p.right, b = p.bottom;
    if (l == S::Plus && t == S::Plus && rt == S::Plus && b == S::Plus)  // a1
        return cl == (cr + 1) % n ? CoeffElem::one(n, r) : zero;
    if (l == S::Minus && t == S::Minus && rt == S::Minus && b == S::Minus)  // a2
        return cl == 0 && cr == 0 ? z : zero;
    if (l == S::Plus && t == S::Minus && rt == S::Plus && b == S::Minus)  // b1
        return cl == (cr + 1) % n ? CoeffElem::g_symbol(n, r, cr) : zero;
    if (l == S::Minus && t == S::Plus && rt == S::Minus && b == S::Plus)  // b2
        return cl == 0 && cr == 0 ? z : zero;
    if (l == S::Minus && t == S::Plus && rt == S::Plus && b == S::Minus)  // c1
        return cl == 0 && cr == 0 ? (CoeffElem::one(n, r) - CoeffElem::v_power(n, r, 1)) * z : zero;
    if (l == S::Plus && t == S::Minus && rt == S::Minus && b == S::Plus)  // c2
        return cl == 1 % n && cr == 0 ? CoeffElem::one(n, r) : zero;
    return zero;
}

inline CoeffElem delta_weight(const VertexPattern& p, int param, int n, int r) {
    using S = Spin;
    const int cl = ((p.left_charge % n) + n) % n;
    const int cr = ((p.right_charge % n) + n) % n;
    const auto zero = CoeffElem::zero(n, r);
    const auto z = CoeffElem::z_power(n, r, param);
    const S l = p.left, t = p.top, rt = p.right, b = p.bottom;
    if (l == S::Plus && t == S::Plus && rt == S::Plus && b == S::Plus)  // a1
        return cl == 0 && cr == 0 ? CoeffElem::one(n, r) : zero;
    if (l == S::Minus && t == S::Minus && rt == S::Minus && b == S::Minus)  // a2
        return cr == (cl + 1) % n ? CoeffElem::g_symbol(n, r, cl) * z : zero;
    if (l == S::Plus && t == S::Minus && rt == S::Plus && b == S::Minus)  // b1
        return cl == 0 && cr == 0 ? CoeffElem::one(n, r) : zero;
    if (l == S::Minus && t == S::Plus && rt == S::Minus && b == S::Plus)  // b2
        return cr == (cl + 1) % n ? z : zero;
    if (l == S::Minus && t == S::Plus && rt == S::Plus && b == S::Minus)  // c1
        return cl == 0 && cr == 0 ? (CoeffElem::one(n, r) - CoeffElem::v_power(n, r, 1)) * z : zero;
    if (l == S::Plus && t == S::Minus && rt == S::Minus && b == S::Plus)  // c2
        return cl == 0 && cr == 1 % n ? CoeffElem::one(n, r) : zero;
    return zero;
}

inline CoeffElem vertex_weight(RowType t, const VertexPattern& p, int param, int n, int r) {
    return t == RowType::Gamma ? gamma_weight(p, param, n, r) : delta_weight(p, param, n, r);
}

// ---------------------------------------------------------------------------
// Tilted crossing vertices

struct TiltedPattern {
    Spin ne, se, sw, nw;
    int ne_charge = 0, se_charge = 0, sw_charge = 0, nw_charge = 0;
};

/// Weight of the crossing vertex of types (X, Y) with X-line parameter
/// z_{x_param} and Y-line parameter z_{y_param}, in the r-variable ring.
inline CoeffElem tilted_weight(RowType X, RowType Y, const TiltedPattern& p, int n, int r, int x_param,
                               int y_param) {
    using S = Spin;
    const auto zero = CoeffElem::zero(n, r);
    auto mod = [n](int x) { return ((x % n) + n) % n; };
    auto rep1n = [n](int x) {  // representative of x in [1, n]
        int m = ((x % n) + n) % n;
        return m == 0 ? n : m;
    };
    // Macro slot order (s1..s4) = (SW, NW, NE, SE).
    const S s1 = p.sw, s2 = p.nw, s3 = p.ne, s4 = p.se;
    const int c1 = mod(p.sw_charge), c2 = mod(p.nw_charge), c3 = mod(p.ne_charge), c4 = mod(p.se_charge);
    const auto one = CoeffElem::one(n, r);
    const auto v = CoeffElem::v_power(n, r, 1);
    const auto z1n = CoeffElem::z_power(n, r, x_param, n);
    const auto z2n = CoeffElem::z_power(n, r, y_param, n);
    auto z1p = [&](int e) { return CoeffElem::z_power(n, r, x_param, e); };
    auto z2p = [&](int e) { return CoeffElem::z_power(n, r, y_param, e); };
    auto vp = [&](int k) { return CoeffElem::v_power(n, r, k); };
    auto g = [&](int a) { return CoeffElem::g_symbol(n, r, a); };
    const auto one_minus_v = one - v;
    const bool P1 = s1 == S::Plus, P2 = s2 == S::Plus, P3 = s3 == S::Plus, P4 = s4 == S::Plus;

    if (X == RowType::Gamma && Y == RowType::Delta) {
        if (P1 && P2 && P3 && P4)
            return c2 == 0 && c4 == 0 && c1 == c3 ? z1n - v * z2n : zero;
        if (!P1 && !P2 && !P3 && !P4)
            return c1 == 0 && c3 == 0 && c2 == c4 ? z1n - v * z2n : zero;
        if (P1 && !P2 && P3 && !P4) {
            const int a = c1, b = c2, c = c3, d = c4;
            if (a == c && b == d) {
                if (a == b)  // all equal
                    return mod(2 * a) == 1 % n ? v * v * z2n - z1n : g(2 * a - 1) * (z1n - v * z2n);
                if (mod(a + b) == 1 % n) return v * v * z2n - z1n;
                return g(a + b - 1) * (z1n - v * z2n);
            }
            if (mod(a + b) == 1 % n && mod(c + d) == 1 % n && a != c) {
                const int e = mod(a - c);
                const auto base = z1p(n - e) * z2p(e);
                if (a * d == 0 || (a * b * c * d != 0 && a > c)) return (v - one) * base;
                return v * (v - one) * base;  // bc == 0 or (abcd != 0 and a < c)
            }
            return zero;
        }
        if (!P1 && P2 && !P3 && P4)
            return c1 == 0 && c2 == 0 && c3 == 0 && c4 == 0 ? z1n - z2n : zero;
        if (!P1 && P2 && P3 && !P4) {
            if (c1 != 0 || c2 != 0) return zero;
            const int a = rep1n(c3), b = rep1n(c4);
            return mod(a + b) == 1 % n ? one_minus_v * z1p(a) * z2p(b - 1) : zero;
        }
        if (P1 && !P2 && !P3 && P4) {
            if (c3 != 0 || c4 != 0) return zero;
            const int b = rep1n(c1), a = rep1n(c2);
            return mod(a + b) == 1 % n ? one_minus_v * z1p(a - 1) * z2p(b) : zero;
        }
        return zero;
    }

    if (X == RowType::Delta && Y == RowType::Delta) {
        if (P1 && P2 && P3 && P4)
            return c1 == 0 && c2 == 0 && c3 == 0 && c4 == 0 ? z1n - v * z2n : zero;
        if (!P1 && !P2 && !P3 && !P4) {
            const int a = c1, b = c2;
            if (c3 == c1 && c4 == c2) {
                if (a == b) return z2n - v * z1n;
                return g(a - b) * (z1n - z2n);
            }
            if (c4 == c1 && c3 == c2 && a != b) {
                const int c = mod(a - b);
                return one_minus_v * z1p(n - c) * z2p(c);
            }
            return zero;
        }
        if (P1 && !P2 && P3 && !P4)
            return c1 == 0 && c3 == 0 && c2 == c4 ? v * (z1n - z2n) : zero;
        if (!P1 && P2 && P3 && !P4) {
            if (c2 != 0 || c3 != 0 || c1 != c4) return zero;
            const int a = rep1n(c1);
            return one_minus_v * z1p(n - a + 1) * z2p(a - 1);
        }
        if (!P1 && P2 && !P3 && P4)
            return c2 == 0 && c4 == 0 && c1 == c3 ? z1n - z2n : zero;
        if (P1 && !P2 && !P3 && P4) {
            if (c1 != 0 || c4 != 0 || c2 != c3) return zero;
            const int a = rep1n(c2);
            return one_minus_v * z1p(a - 1) * z2p(n - a + 1);
        }
        return zero;
    }

    if (X == RowType::Delta && Y == RowType::Gamma) {
        if (P1 && P2 && P3 && P4)
            return c1 == 0 && c3 == 0 && c2 == c4 ? z2n - vp(n) * z1n : zero;
        if (!P1 && !P2 && !P3 && !P4)
            return c2 == 0 && c4 == 0 && c1 == c3 ? z2n - vp(n) * z1n : zero;
        if (P1 && !P2 && P3 && !P4)
            return c1 == 0 && c2 == 0 && c3 == 0 && c4 == 0 ? z2n - vp(n + 1) * z1n : zero;
        if (!P1 && P2 && !P3 && P4) {
            const int a = c1, b = c2, c = c3, d = c4;
            if (a == c && b == d) {
                if (mod(a + b) == 1 % n) return vp(n - 1) * z1n - z2n;
                // division by g realized g-free: 1/g(m) = g(n-m) v^{-1}
                return (z2n - vp(n) * z1n) * g(n - mod(a + b - 1)) * vp(-1);
            }
            if (mod(a + b) == 1 % n && mod(c + d) == 1 % n && a != c) {
                const int e = mod(c - a);
                return one_minus_v * vp(e - 1) * z1p(e) * z2p(n - e);
            }
            return zero;
        }
        if (!P1 && P2 && P3 && !P4) {
            if (c3 != 0 || c4 != 0) return zero;
            const int b = rep1n(c1), a = rep1n(c2);
            return mod(a + b) == 1 % n ? one_minus_v * vp(a - 1) * z1p(a) * z2p(b - 1) : zero;
        }
        if (P1 && !P2 && !P3 && P4) {
            if (c1 != 0 || c2 != 0) return zero;
            const int a = rep1n(c3), b = rep1n(c4);
            return mod(a + b) == 1 % n ? one_minus_v * vp(a - 1) * z1p(a - 1) * z2p(b) : zero;
        }
        return zero;
    }

    // X == Gamma, Y == Gamma
    if (P1 && P2 && P3 && P4) {
        const int a = c1, b = c2;
        if (c3 == c1 && c4 == c2) {
            if (a == b) return z2n - v * z1n;
            return g(b - a) * (z1n - z2n);
        }
        if (c4 == c1 && c3 == c2 && a != b) {
            const int c = mod(b - a);
            return one_minus_v * z1p(c) * z2p(n - c);
        }
        return zero;
    }
    if (!P1 && !P2 && !P3 && !P4)
        return c1 == 0 && c2 == 0 && c3 == 0 && c4 == 0 ? z1n - v * z2n : zero;
    if (P1 && !P2 && P3 && !P4)
        return c2 == 0 && c4 == 0 && c1 == c3 ? v * (z1n - z2n) : zero;
    if (!P1 && P2 && !P3 && P4)
        return c1 == 0 && c3 == 0 && c2 == c4 ? z1n - z2n : zero;
    if (!P1 && P2 && P3 && !P4) {
        if (c1 != 0 || c4 != 0 || c2 != c3) return zero;
        const int a = rep1n(c2);
        return one_minus_v * z1p(a) * z2p(n - a);
    }
    if (P1 && !P2 && !P3 && P4) {
        if (c2 != 0 || c3 != 0 || c1 != c4) return zero;
        const int a = rep1n(c1);
        return one_minus_v * z1p(n - a) * z2p(a);
    }
    return zero;
}

// ---------------------------------------------------------------------------
// Three-vertex Yang-Baxter contraction
//
// Both sides share six boundary spins and four boundary charges.  Left
// system: the crossing sits west of an X(z_{xp})-over-Y(z_{yp}) column, its
// SW leg carrying (sigma, a) and NW leg (tau, b).  Right system: the column
// order is swapped to Y-over-X and the crossing sits east, NE carrying
// (theta, c) and SE (rho, d).  beta/alpha are the top/bottom vertical edges.

struct YbeBoundary {
    Spin alpha, beta, theta, rho, sigma, tau;
    int a = 0, b = 0, c = 0, d = 0;
};

inline std::pair<CoeffElem, CoeffElem> ybe_sides(RowType X, RowType Y, const YbeBoundary& bd, int n, int r,
                                                 int xp, int yp) {
    CoeffElem lhs = CoeffElem::zero(n, r), rhs = CoeffElem::zero(n, r);
    for (Spin hs1 : {Spin::Plus, Spin::Minus}) {
        for (int hc1 = 0; hc1 < n; ++hc1) {
            for (Spin hs2 : {Spin::Plus, Spin::Minus}) {
                for (int hc2 = 0; hc2 < n; ++hc2) {
                    // left system
                    CoeffElem wt = tilted_weight(
                        X, Y, TiltedPattern{hs1, hs2, bd.sigma, bd.tau, hc1, hc2, bd.a, bd.b}, n, r, xp, yp);
                    if (!wt.is_zero()) {
                        for (Spin e : {Spin::Plus, Spin::Minus}) {
                            CoeffElem wx =
                                vertex_weight(X, VertexPattern{bd.beta, bd.theta, e, hs1, hc1, bd.c}, xp, n, r);
                            if (wx.is_zero()) continue;
                            CoeffElem wy =
                                vertex_weight(Y, VertexPattern{e, bd.rho, bd.alpha, hs2, hc2, bd.d}, yp, n, r);
                            if (wy.is_zero()) continue;
                            lhs += wt * wx * wy;
                        }
                    }
                    // right system
                    CoeffElem wr = tilted_weight(
                        X, Y, TiltedPattern{bd.theta, bd.rho, hs2, hs1, bd.c, bd.d, hc2, hc1}, n, r, xp, yp);
                    if (!wr.is_zero()) {
                        for (Spin e : {Spin::Plus, Spin::Minus}) {
                            CoeffElem wy =
                                vertex_weight(Y, VertexPattern{bd.beta, hs1, e, bd.tau, bd.b, hc1}, yp, n, r);
                            if (wy.is_zero()) continue;
                            CoeffElem wx =
                                vertex_weight(X, VertexPattern{e, hs2, bd.alpha, bd.sigma, bd.a, hc2}, xp, n, r);
                            if (wx.is_zero()) continue;
                            rhs += wr * wy * wx;
                        }
                    }
                }
            }
        }
    }
    return {lhs, rhs};
}

// ---------------------------------------------------------------------------
// Convention calibration

/// Hand-labeled admissible state of the 3-row Gamma system with n = 2,
/// lambda = (3, 2, 0): the pinned reference for the slot conventions.
inline SystemSpec calibration_spec() {
    return build_standard_system(Partition({3, 2, 0}), 3, RowType::Gamma, 2);
}

inline ChargedState calibration_state() {
    using S = Spin;
    const S P = S::Plus, M = S::Minus;
    SpinState st;
    st.horiz = {{P, P, P, M, P, P, M}, {P, M, M, M, M, M, M}, {P, P, P, P, M, M, M}};
    st.vert = {{M, P, M, P, P, M}, {M, P, P, M, P, P}, {P, P, P, M, P, P}, {P, P, P, P, P, P}};
    return derive_charges(st, calibration_spec().rows, 2);
}

struct CalibrationReport {
    bool ok = true;
    std::string detail;
};

/// Startup self-check: (i) the reference state is admissible with every
/// vertex weight nonzero, its charges match the hand labels, and its weight
/// is (v^2 - v) z1 z2^5 z3^2; (ii) the n = 1 Yang-Baxter smoke test passes
/// for all four type pairs over all 64 spin boundaries.  Throws
/// CalibrationError naming the first violation.
inline CalibrationReport calibrate_conventions() {
    const SystemSpec spec = calibration_spec();
    const ChargedState st = calibration_state();
    const int n = spec.n, r = spec.row_count();

    const std::vector<std::vector<int>> expected_charges = {
        {1, 0, 1, 0, 0, 1, 0}, {1, 0, 0, 0, 0, 0, 0}, {0, 1, 0, 1, 0, 0, 0}};
    if (st.charges != expected_charges)
        throw CalibrationError("calibration: derived charges disagree with the reference labels");

    CoeffElem w = CoeffElem::one(n, r);
    for (int row = 0; row < r; ++row) {
        for (int p = 0; p < spec.columns; ++p) {
            VertexPattern vp{st.spins.vert[row][p], st.spins.horiz[row][p + 1], st.spins.vert[row + 1][p],
                             st.spins.horiz[row][p], st.charges[row][p], st.charges[row][p + 1]};
            CoeffElem wv = vertex_weight(spec.rows[row].type, vp, spec.rows[row].param, n, r);
            if (wv.is_zero())
                throw CalibrationError("calibration: zero weight at reference vertex (row " +
                                       std::to_string(row + 1) + ", column " + std::to_string(p) + ")");
            w *= wv;
        }
    }
    CoeffElem expected = (CoeffElem::v_power(n, r, 2) - CoeffElem::v_power(n, r, 1)) *
                         CoeffElem::z_power(n, r, 1) * CoeffElem::z_power(n, r, 2, 5) *
                         CoeffElem::z_power(n, r, 3, 2);
    if (w != expected)
        throw CalibrationError("calibration: reference state weight mismatch, got " + w.to_string());

    for (RowType X : {RowType::Gamma, RowType::Delta}) {
        for (RowType Y : {RowType::Gamma, RowType::Delta}) {
            for (int mask = 0; mask < 64; ++mask) {
                auto bit = [mask](int k) { return (mask >> k) & 1 ? Spin::Minus : Spin::Plus; };
                YbeBoundary bd{bit(0), bit(1), bit(2), bit(3), bit(4), bit(5), 0, 0, 0, 0};
                auto [lhs, rhs] = ybe_sides(X, Y, bd, 1, 2, 1, 2);
                if (lhs != rhs)
                    throw CalibrationError(std::string("calibration: n=1 Yang-Baxter smoke test failed for ") +
                                           row_type_name(X) + "/" + row_type_name(Y) + " at spin mask " +
                                           std::to_string(mask));
            }
        }
    }
    return CalibrationReport{true, "slot conventions validated"};
}

}  // namespace mice
