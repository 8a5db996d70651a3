#pragma once

// The crossing weights as parametrized endomorphisms of V_X (x) V_Y, the
// dagger involution E -> tau E(z2, z1) tau, Yang-Baxter commutators, the
// eight-relation system built from R^{GG}, (R^{DG})^{-1}, R^{GD} and
// (R^{DD})^dagger, and the proportionality (R^{GD})^dagger ~ (R^{DG})^{-1}.
//
// V_Gamma has basis (+, c) for c mod n plus (-, 0); V_Delta has (-, c) plus
// (+, 0).  Matrices act inputs-from-the-west: the column index is the
// (SW, NW) leg pair, the row index the (NE, SE) pair.  This orientation is
// validated by the vanishing of [[R^{GG}, R^{GG}, R^{GG}]].

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mice/boltzmann.hpp"
#include "mice/parallel.hpp"
#include "mice/verify.hpp"

namespace mice {

struct ChargedBasis {
    RowType type;
    int n;

    int dim() const { return n + 1; }

    std::pair<Spin, int> vector_at(int idx) const {
        if (idx < 0 || idx > n) throw ContractViolation("ChargedBasis: index out of range");
        Spin major = type == RowType::Gamma ? Spin::Plus : Spin::Minus;
        if (idx < n) return {major, idx};
        return {flip(major), 0};
    }
};

struct SparseMat {
    int rows = 0, cols = 0;
    std::map<std::pair<int, int>, CoeffElem> entries;
};

inline SparseMat sparse_mul(const SparseMat& A, const SparseMat& B) {
    if (A.cols != B.rows) throw ContractViolation("sparse_mul: shape mismatch");
    std::map<int, std::vector<std::pair<int, const CoeffElem*>>> b_rows;
    for (const auto& [key, w] : B.entries) b_rows[key.first].emplace_back(key.second, &w);
    SparseMat out{A.rows, B.cols, {}};
    for (const auto& [key, wa] : A.entries) {
        auto it = b_rows.find(key.second);
        if (it == b_rows.end()) continue;
        for (const auto& [col, wb] : it->second) {
            auto cell = out.entries.find({key.first, col});
            if (cell == out.entries.end())
                out.entries.emplace(std::make_pair(key.first, col), wa * (*wb));
            else
                cell->second += wa * (*wb);
        }
    }
    for (auto it = out.entries.begin(); it != out.entries.end();) {
        if (it->second.is_zero())
            it = out.entries.erase(it);
        else
            ++it;
    }
    return out;
}

inline SparseMat sparse_sub(const SparseMat& A, const SparseMat& B) {
    if (A.rows != B.rows || A.cols != B.cols) throw ContractViolation("sparse_sub: shape mismatch");
    SparseMat out = A;
    for (const auto& [key, w] : B.entries) {
        auto it = out.entries.find(key);
        if (it == out.entries.end())
            out.entries.emplace(key, -w);
        else
            it->second -= w;
    }
    for (auto it = out.entries.begin(); it != out.entries.end();) {
        if (it->second.is_zero())
            it = out.entries.erase(it);
        else
            ++it;
    }
    return out;
}

inline bool sparse_is_zero(const SparseMat& A) {
    for (const auto& [key, w] : A.entries)
        if (!w.is_zero()) return false;
    return true;
}

/// Embed a two-site matrix onto sites (p, q) of a three-fold tensor product.
inline SparseMat sparse_embed(const SparseMat& A, int p, int q, const std::array<int, 3>& dims) {
    int other = 3 - p - q;
    SparseMat out{dims[0] * dims[1] * dims[2], dims[0] * dims[1] * dims[2], {}};
    const int dq = dims[q];
    auto flat = [&dims](const std::array<int, 3>& idx) {
        return (idx[0] * dims[1] + idx[1]) * dims[2] + idx[2];
    };
    for (const auto& [key, w] : A.entries) {
        int po = key.first / dq, qo = key.first % dq;
        int pi = key.second / dq, qi = key.second % dq;
        for (int m = 0; m < dims[other]; ++m) {
            std::array<int, 3> ro{}, co{};
            ro[p] = po, ro[q] = qo, ro[other] = m;
            co[p] = pi, co[q] = qi, co[other] = m;
            out.entries.emplace(std::make_pair(flat(ro), flat(co)), w);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Parametrized endomorphisms

/// A two-parameter family of endomorphisms of V_left (x) V_right; `at(i, j, r)`
/// materializes the matrix with parameters z_i, z_j in the r-variable ring.
struct ParamEndo {
    RowType left_type = RowType::Gamma;
    RowType right_type = RowType::Gamma;
    int n = 1;
    std::function<SparseMat(int, int, int)> at;

    int dim() const { return (n + 1) * (n + 1); }
};

/// The crossing-vertex endomorphism of V_X (x) V_Y: inputs on (SW, NW),
/// outputs on (NE, SE), X-line parameter first.
inline ParamEndo r_matrix(RowType X, RowType Y, int n) {
    ParamEndo e;
    e.left_type = X;
    e.right_type = Y;
    e.n = n;
    e.at = [X, Y, n](int i, int j, int r) {
        ChargedBasis bx{X, n}, by{Y, n};
        const int d = by.dim();
        SparseMat out{bx.dim() * d, bx.dim() * d, {}};
        for (int xi = 0; xi <= n; ++xi) {
            auto [xs, xc] = bx.vector_at(xi);
            for (int yi = 0; yi <= n; ++yi) {
                auto [ys, yc] = by.vector_at(yi);
                for (int xo = 0; xo <= n; ++xo) {
                    auto [xos, xoc] = bx.vector_at(xo);
                    for (int yo = 0; yo <= n; ++yo) {
                        auto [yos, yoc] = by.vector_at(yo);
                        CoeffElem w = tilted_weight(
                            X, Y, TiltedPattern{xos, yos, xs, ys, xoc, yoc, xc, yc}, n, r, i, j);
                        if (!w.is_zero()) out.entries.emplace(std::make_pair(xo * d + yo, xi * d + yi), w);
                    }
                }
            }
        }
        return out;
    };
    return e;
}

/// E^dagger(z1, z2) = tau E(z2, z1) tau with tau the tensor-factor flip.
inline ParamEndo dagger(const ParamEndo& E) {
    ParamEndo out;
    out.left_type = E.right_type;
    out.right_type = E.left_type;
    out.n = E.n;
    const int d = E.n + 1;
    auto base = E.at;
    out.at = [base, d](int i, int j, int r) {
        SparseMat m = base(j, i, r);
        SparseMat flipped{m.rows, m.cols, {}};
        for (const auto& [key, w] : m.entries) {
            int ao = key.first / d, bo = key.first % d;
            int ai = key.second / d, bi = key.second % d;
            flipped.entries.emplace(std::make_pair(bo * d + ao, bi * d + ai), w);
        }
        return flipped;
    };
    return out;
}

/// A_{12}(z_i, z_j) B_{13}(z_i, z_k) C_{23}(z_j, z_k)
///   - C_{23}(z_j, z_k) B_{13}(z_i, z_k) A_{12}(z_i, z_j)
/// on the three-fold product; shapes must agree pairwise.
inline SparseMat commutator(const ParamEndo& A, const ParamEndo& B, const ParamEndo& C, int i, int j, int k,
                            int r) {
    if (A.left_type != B.left_type || A.right_type != C.left_type || B.right_type != C.right_type)
        throw ContractViolation("commutator: tensor factor types do not match");
    if (A.n != B.n || A.n != C.n) throw ContractViolation("commutator: mixed moduli");
    const int d = A.n + 1;
    const std::array<int, 3> dims{d, d, d};
    SparseMat A12 = sparse_embed(A.at(i, j, r), 0, 1, dims);
    SparseMat B13 = sparse_embed(B.at(i, k, r), 0, 2, dims);
    SparseMat C23 = sparse_embed(C.at(j, k, r), 1, 2, dims);
    SparseMat lhs = sparse_mul(sparse_mul(A12, B13), C23);
    SparseMat rhs = sparse_mul(sparse_mul(C23, B13), A12);
    return sparse_sub(lhs, rhs);
}

// ---------------------------------------------------------------------------
// Numeric side: exact rational evaluation and inversion

using QMat = std::vector<std::vector<Rat>>;

inline QMat eval_sparse(const SparseMat& A, const EvalPoint& p) {
    QMat out(A.rows, std::vector<Rat>(A.cols, Rat(0)));
    for (const auto& [key, w] : A.entries) out[key.first][key.second] = w.evaluate(p);
    return out;
}

inline std::optional<QMat> invert(const QMat& A) {
    const int d = static_cast<int>(A.size());
    QMat m(d, std::vector<Rat>(2 * d, Rat(0)));
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) m[i][j] = A[i][j];
        m[i][d + i] = 1;
    }
    for (int col = 0; col < d; ++col) {
        int piv = -1;
        for (int r0 = col; r0 < d; ++r0)
            if (m[r0][col] != 0) {
                piv = r0;
                break;
            }
        if (piv < 0) return std::nullopt;
        std::swap(m[col], m[piv]);
        Rat inv = Rat(1) / m[col][col];
        for (auto& x : m[col]) x *= inv;
        for (int r0 = 0; r0 < d; ++r0) {
            if (r0 == col || m[r0][col] == 0) continue;
            Rat f = m[r0][col];
            for (int c0 = 0; c0 < 2 * d; ++c0) m[r0][c0] -= f * m[col][c0];
        }
    }
    QMat out(d, std::vector<Rat>(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) out[i][j] = m[i][d + j];
    return out;
}

inline QMat qmat_mul(const QMat& A, const QMat& B) {
    const int n0 = static_cast<int>(A.size()), n1 = static_cast<int>(B[0].size()),
              kk = static_cast<int>(B.size());
    QMat out(n0, std::vector<Rat>(n1, Rat(0)));
    for (int i = 0; i < n0; ++i)
        for (int k = 0; k < kk; ++k) {
            if (A[i][k] == 0) continue;
            for (int j = 0; j < n1; ++j)
                if (B[k][j] != 0) out[i][j] += A[i][k] * B[k][j];
        }
    return out;
}

inline QMat qmat_embed(const QMat& A, int p, int q, const std::array<int, 3>& dims) {
    const int D = dims[0] * dims[1] * dims[2];
    QMat out(D, std::vector<Rat>(D, Rat(0)));
    int other = 3 - p - q;
    const int dq = dims[q];
    auto flat = [&dims](const std::array<int, 3>& idx) {
        return (idx[0] * dims[1] + idx[1]) * dims[2] + idx[2];
    };
    for (std::size_t r0 = 0; r0 < A.size(); ++r0) {
        for (std::size_t c0 = 0; c0 < A.size(); ++c0) {
            if (A[r0][c0] == 0) continue;
            int po = static_cast<int>(r0) / dq, qo = static_cast<int>(r0) % dq;
            int pi = static_cast<int>(c0) / dq, qi = static_cast<int>(c0) % dq;
            for (int m = 0; m < dims[other]; ++m) {
                std::array<int, 3> ro{}, co{};
                ro[p] = po, ro[q] = qo, ro[other] = m;
                co[p] = pi, co[q] = qi, co[other] = m;
                out[flat(ro)][flat(co)] = A[r0][c0];
            }
        }
    }
    return out;
}

inline QMat qmat_dagger(const QMat& A, int d) {
    QMat out(A.size(), std::vector<Rat>(A.size(), Rat(0)));
    for (std::size_t r0 = 0; r0 < A.size(); ++r0)
        for (std::size_t c0 = 0; c0 < A.size(); ++c0) {
            if (A[r0][c0] == 0) continue;
            int ao = static_cast<int>(r0) / d, bo = static_cast<int>(r0) % d;
            int ai = static_cast<int>(c0) / d, bi = static_cast<int>(c0) % d;
            out[bo * d + ao][bi * d + ai] = A[r0][c0];
        }
    return out;
}

inline bool qmat_commutator_vanishes(const QMat& A, const QMat& B, const QMat& C, int d) {
    const std::array<int, 3> dims{d, d, d};
    QMat A12 = qmat_embed(A, 0, 1, dims);
    QMat B13 = qmat_embed(B, 0, 2, dims);
    QMat C23 = qmat_embed(C, 1, 2, dims);
    QMat L = qmat_mul(qmat_mul(A12, B13), C23);
    QMat R = qmat_mul(qmat_mul(C23, B13), A12);
    return L == R;
}

// ---------------------------------------------------------------------------
// Theorem-level checks

/// R^{DG}(z1,z2) * (R^{GD})^dagger(z1,z2) = c(z1,z2) * Id; returns the scalar.
inline std::pair<VerificationReport, CoeffElem> proportionality(int n) {
    detail::Stopwatch clock;
    VerificationReport rep;
    rep.identity = "proportionality n=" + std::to_string(n);
    const int r = 2;
    ParamEndo RDG = r_matrix(RowType::Delta, RowType::Gamma, n);
    ParamEndo Cdag = dagger(r_matrix(RowType::Gamma, RowType::Delta, n));
    SparseMat prod = sparse_mul(RDG.at(1, 2, r), Cdag.at(1, 2, r));
    const int dim = (n + 1) * (n + 1);
    rep.cases_checked = dim * dim;
    CoeffElem scalar = CoeffElem::zero(n, r);
    auto it00 = prod.entries.find({0, 0});
    if (it00 != prod.entries.end()) scalar = it00->second;
    for (int i = 0; i < dim && rep.failures.empty(); ++i) {
        auto it = prod.entries.find({i, i});
        CoeffElem diag = it == prod.entries.end() ? CoeffElem::zero(n, r) : it->second;
        if (diag != scalar)
            rep.failures.push_back(Counterexample{"diagonal entry " + std::to_string(i), diag.to_string(),
                                                  scalar.to_string()});
    }
    for (const auto& [key, w] : prod.entries) {
        if (key.first != key.second && !w.is_zero()) {
            rep.failures.push_back(Counterexample{"off-diagonal entry (" + std::to_string(key.first) + "," +
                                                      std::to_string(key.second) + ")",
                                                  w.to_string(), "0"});
            break;
        }
    }
    if (scalar.is_zero())
        rep.failures.push_back(Counterexample{"scalar vanishes", scalar.to_string(), "nonzero"});
    rep.values["scalar"] = scalar.to_string();
    rep.elapsed_seconds = clock.seconds();
    return {rep, scalar};
}

/// The eight commutator relations with A = R^{GG}, B = (R^{DG})^{-1},
/// C = R^{GD}, D = (R^{DD})^dagger.  Relations free of B are checked
/// symbolically; the four involving B are checked at `num_points` exact
/// rational sample points (resampling when R^{DG} is singular at a point).
inline VerificationReport verify_yb_system(int n, int num_points, std::uint64_t seed) {
    if (n < 1) throw ContractViolation("verify_yb_system: need n >= 1");
    if (num_points < 1) throw ContractViolation("verify_yb_system: need num_points >= 1");
    detail::Stopwatch clock;
    VerificationReport rep;
    rep.identity = "yang-baxter system n=" + std::to_string(n);
    const int r = 3;
    const int d = n + 1;
    ParamEndo A = r_matrix(RowType::Gamma, RowType::Gamma, n);
    ParamEndo C = r_matrix(RowType::Gamma, RowType::Delta, n);
    ParamEndo D = dagger(r_matrix(RowType::Delta, RowType::Delta, n));
    ParamEndo Cd = dagger(C);

    struct SymbolicCase {
        const char* name;
        const ParamEndo* a;
        const ParamEndo* b;
        const ParamEndo* c;
    };
    const SymbolicCase symbolic[] = {
        {"[A,A,A]", &A, &A, &A},
        {"[A,C,C]", &A, &C, &C},
        {"[D,D,D]", &D, &D, &D},
        {"[D,C+,C+]", &D, &Cd, &Cd},
    };
    for (const auto& sc : symbolic) {
        SparseMat com = commutator(*sc.a, *sc.b, *sc.c, 1, 2, 3, r);
        ++rep.cases_checked;
        if (sparse_is_zero(com)) {
            rep.values[sc.name] = "0 (symbolic)";
        } else {
            const auto& [key, w] = *com.entries.begin();
            rep.values[sc.name] = "nonzero";
            rep.failures.push_back(Counterexample{std::string(sc.name) + " entry (" +
                                                      std::to_string(key.first) + "," +
                                                      std::to_string(key.second) + ")",
                                                  w.to_string(), "0"});
        }
    }

    // Numeric relations.  B(zi,zj) inverts the evaluated R^{DG}; B+(zi,zj) is
    // tau B(zj,zi) tau.
    ParamEndo RDG = r_matrix(RowType::Delta, RowType::Gamma, n);
    SparseMat RDG13 = RDG.at(1, 3, r);
    SparseMat RDG23 = RDG.at(2, 3, r);
    SparseMat RDG31 = RDG.at(3, 1, r);
    SparseMat RDG32 = RDG.at(3, 2, r);
    SparseMat A12 = A.at(1, 2, r);
    SparseMat C13 = C.at(1, 3, r);
    SparseMat Cd23 = Cd.at(2, 3, r);
    SparseMat D12 = D.at(1, 2, r);

    struct NumericOutcome {
        bool ok = true;
        std::string context;
    };
    std::vector<NumericOutcome> outcomes(static_cast<std::size_t>(num_points));
    long resampled = 0;
    std::vector<long> resamples(static_cast<std::size_t>(num_points), 0);
    parallel_for(static_cast<std::size_t>(num_points), [&](std::size_t pt) {
        std::uint64_t s = seed + 1000003ull * (pt + 1);
        for (int attempt = 0;; ++attempt, ++s) {
            EvalPoint p = EvalPoint::sample(n, r, s);
            auto b13 = invert(eval_sparse(RDG13, p));
            auto b23 = invert(eval_sparse(RDG23, p));
            auto b31 = invert(eval_sparse(RDG31, p));
            auto b32 = invert(eval_sparse(RDG32, p));
            if (!b13 || !b23 || !b31 || !b32) {
                resamples[pt]++;
                if (attempt > 50) {
                    outcomes[pt] = {false, "could not find a nonsingular sample point"};
                    return;
                }
                continue;
            }
            QMat bdag13 = qmat_dagger(*b31, d);
            QMat bdag23 = qmat_dagger(*b32, d);
            bool ok = true;
            std::string which;
            if (!qmat_commutator_vanishes(eval_sparse(A12, p), bdag13, bdag23, d)) ok = false, which = "[A,B+,B+]";
            if (ok && !qmat_commutator_vanishes(eval_sparse(A12, p), eval_sparse(C13, p), bdag23, d))
                ok = false, which = "[A,C,B+]";
            if (ok && !qmat_commutator_vanishes(eval_sparse(D12, p), *b13, *b23, d)) ok = false, which = "[D,B,B]";
            if (ok && !qmat_commutator_vanishes(eval_sparse(D12, p), *b13, eval_sparse(Cd23, p), d))
                ok = false, which = "[D,B,C+]";
            outcomes[pt] = {ok, ok ? "" : which + " at sample seed " + std::to_string(s)};
            return;
        }
    });
    for (long k : resamples) resampled += k;
    for (std::size_t pt = 0; pt < outcomes.size(); ++pt) {
        ++rep.cases_checked;
        if (!outcomes[pt].ok)
            rep.failures.push_back(Counterexample{"point " + std::to_string(pt) + ": " + outcomes[pt].context,
                                                  "nonzero commutator", "0"});
    }
    rep.values["points"] = std::to_string(num_points);
    rep.values["resampled"] = std::to_string(resampled);
    const bool numeric_ok =
        std::all_of(outcomes.begin(), outcomes.end(), [](const NumericOutcome& o) { return o.ok; });
    for (const char* name : {"[A,B+,B+]", "[A,C,B+]", "[D,B,B]", "[D,B,C+]"})
        rep.values[name] = numeric_ok ? "0 (at " + std::to_string(num_points) + " exact points)" : "nonzero";

    auto [prep, scalar] = proportionality(n);
    ++rep.cases_checked;
    rep.values["proportionality_scalar"] = scalar.to_string();
    for (const auto& f : prep.failures) rep.failures.push_back(f);

    rep.elapsed_seconds = clock.seconds();
    return rep;
}

}  // namespace mice
