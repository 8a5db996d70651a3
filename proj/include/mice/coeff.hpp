#pragma once

// Exact arithmetic in Q[v^{+-1}][z1^{+-1},...,zr^{+-1}] extended by formal
// Gauss-sum symbols g(1),...,g(n-1) subject to g(a)g(n-a) = v, with g(0)
// identified with -v.  Every value produced by the lattice engines lives in
// this ring; nothing in the library ever touches floating point.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mice/errors.hpp"

namespace mice {

using Rat = mpq_class;

inline Rat rat_pow(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    if (base == 0) throw ContractViolation("rat_pow: zero base with nonzero exponent");
    Rat b = e > 0 ? base : Rat(1) / base;
    long k = e > 0 ? e : -e;
    Rat out(1);
    while (k > 0) {
        if (k & 1) out *= b;
        b *= b;
        k >>= 1;
    }
    return out;
}

// ---------------------------------------------------------------------------
// GMonomial

/// Product of g-symbols in normal form: for every residue pair {a, n-a} with
/// a < n-a at most one of the two occurs, and g(n/2) (n even) has exponent
/// <= 1.  Residue 0 never occurs; callers replace g(0) by the scalar -v.
class GMonomial {
public:
    GMonomial() = default;

    /// Reduce a raw exponent map by g(a)g(n-a) = v.  Returns the number of v
    /// factors extracted together with the normal form.
    static std::pair<int, GMonomial> normalize(int n, const std::map<int, int>& raw) {
        for (const auto& [a, e] : raw) {
            if (a < 1 || a > n - 1) throw ContractViolation("g-symbol index outside {1,...,n-1}");
            if (e < 0) throw ContractViolation("negative g-symbol exponent");
        }
        int v_extra = 0;
        GMonomial out;
        for (int a = 1; a < n; ++a) {
            int b = n - a;
            if (a > b) continue;
            auto get = [&raw](int k) {
                auto it = raw.find(k);
                return it == raw.end() ? 0 : it->second;
            };
            if (a == b) {
                int e = get(a);
                v_extra += e / 2;
                if (e % 2) out.factors_.emplace_back(a, 1);
            } else {
                int ea = get(a), eb = get(b);
                int k = std::min(ea, eb);
                v_extra += k;
                if (ea - k) out.factors_.emplace_back(a, ea - k);
                if (eb - k) out.factors_.emplace_back(b, eb - k);
            }
        }
        return {v_extra, out};
    }

    bool empty() const { return factors_.empty(); }
    const std::vector<std::pair<int, int>>& factors() const { return factors_; }

    friend bool operator==(const GMonomial& a, const GMonomial& b) { return a.factors_ == b.factors_; }
    friend bool operator<(const GMonomial& a, const GMonomial& b) { return a.factors_ < b.factors_; }

private:
    std::vector<std::pair<int, int>> factors_;  // (residue, exponent), residue ascending
};

inline std::pair<int, GMonomial> normalize_g(const std::map<int, int>& raw, int n) {
    return GMonomial::normalize(n, raw);
}

// ---------------------------------------------------------------------------
// Term and CoeffElem

struct Term {
    Rat coeff;
    int v_pow = 0;
    std::vector<int> z_pows;
    GMonomial g;
};

/// Canonical term order: z exponent vectors by descending lexicographic
/// order, then ascending v power, then g-monomial.  Fixing this order makes
/// text renderings and golden files byte-stable.
inline bool term_key_less(const Term& a, const Term& b) {
    if (a.z_pows != b.z_pows) return b.z_pows < a.z_pows;
    if (a.v_pow != b.v_pow) return a.v_pow < b.v_pow;
    return a.g < b.g;
}

inline bool term_key_equal(const Term& a, const Term& b) {
    return a.z_pows == b.z_pows && a.v_pow == b.v_pow && a.g == b.g;
}

struct EvalPoint;

class CoeffElem {
public:
    CoeffElem() = default;
    CoeffElem(int n, int r) : n_(n), r_(r) {
        if (n < 1 || r < 1) throw ContractViolation("CoeffElem: need n >= 1 and r >= 1");
    }

    static CoeffElem zero(int n, int r) { return CoeffElem(n, r); }

    static CoeffElem constant(const Rat& c, int n, int r) {
        CoeffElem e(n, r);
        if (c != 0) e.terms_.push_back(Term{c, 0, std::vector<int>(r, 0), {}});
        return e;
    }

    static CoeffElem one(int n, int r) { return constant(1, n, r); }

    /// c * v^k * g-monomial * z multi-power.  The g map is normalized here.
    static CoeffElem monomial(const Rat& c, int v_pow, std::vector<int> z_pows,
                              const std::map<int, int>& g_raw, int n) {
        int r = static_cast<int>(z_pows.size());
        CoeffElem e(n, r);
        if (c == 0) return e;
        auto [extra, g] = GMonomial::normalize(n, g_raw);
        e.terms_.push_back(Term{c, v_pow + extra, std::move(z_pows), g});
        return e;
    }

    static CoeffElem z_power(int n, int r, int var, int e = 1) {
        if (var < 1 || var > r) throw ContractViolation("z variable index out of range");
        std::vector<int> zp(r, 0);
        zp[var - 1] = e;
        return monomial(1, 0, std::move(zp), {}, n);
    }

    static CoeffElem v_power(int n, int r, int k) { return monomial(1, k, std::vector<int>(r, 0), {}, n); }

    /// g(a mod n); g(0) is the scalar -v.
    static CoeffElem g_symbol(int n, int r, int a) {
        int m = ((a % n) + n) % n;
        if (m == 0) return monomial(-1, 1, std::vector<int>(r, 0), {}, n);
        return monomial(1, 0, std::vector<int>(r, 0), {{m, 1}}, n);
    }

    int modulus() const { return n_; }
    int vars() const { return r_; }
    bool is_zero() const { return terms_.empty(); }
    const std::vector<Term>& terms() const { return terms_; }

    friend CoeffElem operator+(const CoeffElem& a, const CoeffElem& b) {
        a.check_compatible(b);
        CoeffElem out(a.n_, a.r_);
        out.terms_.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() && j < b.terms_.size()) {
            if (term_key_equal(a.terms_[i], b.terms_[j])) {
                Rat c = a.terms_[i].coeff + b.terms_[j].coeff;
                if (c != 0) out.terms_.push_back(Term{c, a.terms_[i].v_pow, a.terms_[i].z_pows, a.terms_[i].g});
                ++i, ++j;
            } else if (term_key_less(a.terms_[i], b.terms_[j])) {
                out.terms_.push_back(a.terms_[i++]);
            } else {
                out.terms_.push_back(b.terms_[j++]);
            }
        }
        for (; i < a.terms_.size(); ++i) out.terms_.push_back(a.terms_[i]);
        for (; j < b.terms_.size(); ++j) out.terms_.push_back(b.terms_[j]);
        return out;
    }

    friend CoeffElem operator-(const CoeffElem& a) {
        CoeffElem out = a;
        for (auto& t : out.terms_) t.coeff = -t.coeff;
        return out;
    }

    friend CoeffElem operator-(const CoeffElem& a, const CoeffElem& b) { return a + (-b); }

    friend CoeffElem operator*(const CoeffElem& a, const CoeffElem& b) {
        a.check_compatible(b);
        CoeffElem out(a.n_, a.r_);
        if (a.terms_.empty() || b.terms_.empty()) return out;
        std::vector<Term> prods;
        prods.reserve(a.terms_.size() * b.terms_.size());
        for (const auto& ta : a.terms_) {
            for (const auto& tb : b.terms_) {
                std::map<int, int> g_raw;
                for (auto [x, e] : ta.g.factors()) g_raw[x] += e;
                for (auto [x, e] : tb.g.factors()) g_raw[x] += e;
                auto [extra, g] = GMonomial::normalize(a.n_, g_raw);
                Term t;
                t.coeff = ta.coeff * tb.coeff;
                t.v_pow = ta.v_pow + tb.v_pow + extra;
                t.z_pows.resize(a.r_);
                for (int k = 0; k < a.r_; ++k) t.z_pows[k] = ta.z_pows[k] + tb.z_pows[k];
                t.g = g;
                prods.push_back(std::move(t));
            }
        }
        std::sort(prods.begin(), prods.end(), term_key_less);
        for (auto& t : prods) {
            if (!out.terms_.empty() && term_key_equal(out.terms_.back(), t)) {
                out.terms_.back().coeff += t.coeff;
                if (out.terms_.back().coeff == 0) out.terms_.pop_back();
            } else {
                out.terms_.push_back(std::move(t));
            }
        }
        return out;
    }

    CoeffElem& operator+=(const CoeffElem& b) { return *this = *this + b; }
    CoeffElem& operator-=(const CoeffElem& b) { return *this = *this - b; }
    CoeffElem& operator*=(const CoeffElem& b) { return *this = *this * b; }

    CoeffElem scaled(const Rat& c) const {
        CoeffElem out = *this;
        if (c == 0) {
            out.terms_.clear();
            return out;
        }
        for (auto& t : out.terms_) t.coeff *= c;
        return out;
    }

    friend bool operator==(const CoeffElem& a, const CoeffElem& b) {
        a.check_compatible(b);
        if (a.terms_.size() != b.terms_.size()) return false;
        for (std::size_t i = 0; i < a.terms_.size(); ++i)
            if (!term_key_equal(a.terms_[i], b.terms_[i]) || a.terms_[i].coeff != b.terms_[i].coeff)
                return false;
        return true;
    }
    friend bool operator!=(const CoeffElem& a, const CoeffElem& b) { return !(a == b); }

    /// Rebase into a ring with `new_r` variables, sending z_i to z_{var_map[i-1]}.
    CoeffElem embedded(int new_r, const std::vector<int>& var_map) const {
        if (static_cast<int>(var_map.size()) != r_) throw ContractViolation("embedded: bad variable map");
        CoeffElem out(n_, new_r);
        out.terms_ = terms_;
        for (auto& t : out.terms_) {
            std::vector<int> zp(new_r, 0);
            for (int k = 0; k < r_; ++k) {
                int tgt = var_map[k];
                if (tgt < 1 || tgt > new_r) throw ContractViolation("embedded: target index out of range");
                zp[tgt - 1] += t.z_pows[k];
            }
            t.z_pows = std::move(zp);
        }
        std::sort(out.terms_.begin(), out.terms_.end(), term_key_less);
        return out;
    }

    Rat evaluate(const EvalPoint& p) const;

    std::string to_string() const;
    static CoeffElem parse(const std::string& text, int n, int r);

private:
    void check_compatible(const CoeffElem& b) const {
        if (n_ != b.n_ || r_ != b.r_)
            throw ContractViolation("CoeffElem: mixed moduli or variable counts");
    }

    int n_ = 1;
    int r_ = 1;
    std::vector<Term> terms_;  // canonical order, nonzero coefficients
};

// ---------------------------------------------------------------------------
// EvalPoint

/// Exact rational evaluation data: nonzero z and v values plus a consistent
/// choice of g-values (g(0) = -v, g(a)g(n-a) = v).
struct EvalPoint {
    int n;
    Rat v;
    std::vector<Rat> z;
    std::vector<Rat> g;  // indexed by residue 0..n-1

    EvalPoint(int n_in, Rat v_in, std::vector<Rat> z_in, std::vector<Rat> g_in)
        : n(n_in), v(std::move(v_in)), z(std::move(z_in)), g(std::move(g_in)) {
        if (n < 1 || z.empty()) throw ContractViolation("EvalPoint: need n >= 1 and r >= 1");
        if (v == 0) throw ContractViolation("EvalPoint: v must be nonzero");
        for (const auto& zi : z)
            if (zi == 0) throw ContractViolation("EvalPoint: z values must be nonzero");
        if (static_cast<int>(g.size()) != n) throw ContractViolation("EvalPoint: need n g-values");
        if (g[0] != -v) throw ContractViolation("EvalPoint: g(0) != -v");
        for (int a = 1; a < n; ++a) {
            if (g[a] == 0) throw ContractViolation("EvalPoint: g values must be nonzero");
            if (g[a] * g[n - a] != v) throw ContractViolation("EvalPoint: g(a)g(n-a) != v");
        }
    }

    /// Deterministic in the seed.  v is forced to be a rational square so a
    /// consistent g(n/2) exists when n is even.
    static EvalPoint sample(int n, int r, std::uint64_t seed) {
        if (n < 1 || r < 1) throw ContractViolation("EvalPoint::sample: need n >= 1 and r >= 1");
        std::mt19937_64 rng(seed);
        auto pick = [&rng](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
        auto nonzero_rat = [&]() {
            int num = 0;
            while (num == 0) num = pick(-9, 9);
            Rat q(num, pick(1, 9));
            q.canonicalize();
            return q;
        };
        Rat t = nonzero_rat();
        Rat v = t * t;
        std::vector<Rat> g(n, Rat(0));
        g[0] = -v;
        for (int a = 1; a < n; ++a) {
            if (g[a] != 0) continue;
            int b = n - a;
            if (a == b) {
                g[a] = t;
            } else {
                g[a] = nonzero_rat();
                g[b] = v / g[a];
            }
        }
        std::vector<Rat> z(r);
        for (auto& zi : z) zi = nonzero_rat();
        return EvalPoint(n, v, std::move(z), std::move(g));
    }
};

inline Rat CoeffElem::evaluate(const EvalPoint& p) const {
    if (p.n != n_ || static_cast<int>(p.z.size()) != r_)
        throw ContractViolation("evaluate: point does not match ring");
    Rat total(0);
    for (const auto& t : terms_) {
        Rat val = t.coeff * rat_pow(p.v, t.v_pow);
        for (int k = 0; k < r_; ++k)
            if (t.z_pows[k]) val *= rat_pow(p.z[k], t.z_pows[k]);
        for (auto [a, e] : t.g.factors()) val *= rat_pow(p.g[a], e);
        total += val;
    }
    return total;
}

// ---------------------------------------------------------------------------
// Canonical text rendering and parsing

inline std::string CoeffElem::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        Rat c = t.coeff;
        bool neg = c < 0;
        if (first) {
            if (neg) os << "-";
            first = false;
        } else {
            os << (neg ? " - " : " + ");
        }
        Rat ac = neg ? Rat(-c) : c;
        std::vector<std::string> factors;
        if (t.v_pow == 1)
            factors.push_back("v");
        else if (t.v_pow != 0)
            factors.push_back("v^" + std::to_string(t.v_pow));
        for (auto [a, e] : t.g.factors())
            factors.push_back(e == 1 ? "g" + std::to_string(a)
                                     : "g" + std::to_string(a) + "^" + std::to_string(e));
        for (int k = 0; k < r_; ++k) {
            int e = t.z_pows[k];
            if (!e) continue;
            factors.push_back(e == 1 ? "z" + std::to_string(k + 1)
                                     : "z" + std::to_string(k + 1) + "^" + std::to_string(e));
        }
        bool wrote = false;
        if (ac != 1 || factors.empty()) {
            os << ac.get_str();
            wrote = true;
        }
        for (const auto& f : factors) {
            if (wrote) os << "*";
            os << f;
            wrote = true;
        }
    }
    return os.str();
}

inline CoeffElem CoeffElem::parse(const std::string& text, int n, int r) {
    CoeffElem total(n, r);
    std::size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && text[i] == ' ') ++i; };
    auto parse_int = [&]() -> long {
        bool neg = false;
        if (i < text.size() && (text[i] == '-' || text[i] == '+')) neg = text[i++] == '-';
        if (i >= text.size() || !isdigit(static_cast<unsigned char>(text[i])))
            throw ContractViolation("parse: expected integer in '" + text + "'");
        long val = 0;
        while (i < text.size() && isdigit(static_cast<unsigned char>(text[i]))) val = val * 10 + (text[i++] - '0');
        return neg ? -val : val;
    };
    skip_ws();
    if (i >= text.size()) throw ContractViolation("parse: empty input");
    bool first = true;
    while (i < text.size()) {
        skip_ws();
        int sign = 1;
        if (!first) {
            if (text[i] == '+')
                ++i;
            else if (text[i] == '-')
                sign = -1, ++i;
            else
                throw ContractViolation("parse: expected '+' or '-' in '" + text + "'");
            skip_ws();
        } else if (text[i] == '-') {
            sign = -1, ++i;
        }
        first = false;
        Rat coeff(sign);
        int v_pow = 0;
        std::vector<int> z_pows(r, 0);
        std::map<int, int> g_raw;
        int factors_read = 0;
        while (true) {
            skip_ws();
            if (i >= text.size()) break;
            char ch = text[i];
            if (isdigit(static_cast<unsigned char>(ch))) {
                long num = parse_int();
                long den = 1;
                if (i < text.size() && text[i] == '/') {
                    ++i;
                    den = parse_int();
                    if (den == 0) throw ContractViolation("parse: zero denominator");
                }
                Rat q(num, den);
                q.canonicalize();
                coeff *= q;
            } else if (ch == 'v') {
                ++i;
                int e = 1;
                if (i < text.size() && text[i] == '^') {
                    ++i;
                    e = static_cast<int>(parse_int());
                }
                v_pow += e;
            } else if (ch == 'z' || ch == 'g') {
                ++i;
                int idx = static_cast<int>(parse_int());
                int e = 1;
                if (i < text.size() && text[i] == '^') {
                    ++i;
                    e = static_cast<int>(parse_int());
                }
                if (ch == 'z') {
                    if (idx < 1 || idx > r) throw ContractViolation("parse: z index out of range");
                    z_pows[idx - 1] += e;
                } else {
                    if (idx < 1 || idx > n - 1) throw ContractViolation("parse: g index out of range");
                    if (e < 0) throw ContractViolation("parse: negative g exponent");
                    g_raw[idx] += e;
                }
            } else {
                break;
            }
            ++factors_read;
            skip_ws();
            if (i < text.size() && text[i] == '*') {
                ++i;
                continue;
            }
            break;
        }
        if (factors_read == 0) throw ContractViolation("parse: unexpected character in '" + text + "'");
        total += CoeffElem::monomial(coeff, v_pow, std::move(z_pows), g_raw, n);
        skip_ws();
    }
    return total;
}

// ---------------------------------------------------------------------------
// Exact division (g-free operands), used by the Schur oracle.

namespace detail {

inline void exponent_window(const CoeffElem& e, std::vector<int>& lo, std::vector<int>& hi, int& vlo, int& vhi) {
    bool first = true;
    for (const auto& t : e.terms()) {
        if (first) {
            lo = t.z_pows;
            hi = t.z_pows;
            vlo = vhi = t.v_pow;
            first = false;
            continue;
        }
        for (std::size_t k = 0; k < lo.size(); ++k) {
            lo[k] = std::min(lo[k], t.z_pows[k]);
            hi[k] = std::max(hi[k], t.z_pows[k]);
        }
        vlo = std::min(vlo, t.v_pow);
        vhi = std::max(vhi, t.v_pow);
    }
}

}  // namespace detail

/// Exact quotient a / b, or nullopt when b does not divide a.  Requires
/// g-free operands (all uses are in the n = 1 cross-checks).
inline std::optional<CoeffElem> divide_exact(const CoeffElem& a, const CoeffElem& b) {
    if (a.modulus() != b.modulus() || a.vars() != b.vars())
        throw ContractViolation("divide_exact: mixed rings");
    for (const auto& t : a.terms())
        if (!t.g.empty()) throw ContractViolation("divide_exact: g-symbols unsupported");
    for (const auto& t : b.terms())
        if (!t.g.empty()) throw ContractViolation("divide_exact: g-symbols unsupported");
    if (b.is_zero()) throw ContractViolation("divide_exact: division by zero");
    const int n = a.modulus(), r = a.vars();
    if (a.is_zero()) return CoeffElem::zero(n, r);

    // For an exact quotient q, each variable's exponent range in q is the
    // difference of the ranges in a and b (leading/trailing terms of the
    // z-then-v grading cannot cancel in a domain).
    std::vector<int> alo, ahi, blo, bhi;
    int avlo, avhi, bvlo, bvhi;
    detail::exponent_window(a, alo, ahi, avlo, avhi);
    detail::exponent_window(b, blo, bhi, bvlo, bvhi);

    CoeffElem rem = a, q = CoeffElem::zero(n, r);
    const Term& blead = b.terms().front();
    while (!rem.is_zero()) {
        const Term& rlead = rem.terms().front();
        Term qt;
        qt.coeff = rlead.coeff / blead.coeff;
        qt.v_pow = rlead.v_pow - blead.v_pow;
        qt.z_pows.resize(r);
        for (int k = 0; k < r; ++k) {
            qt.z_pows[k] = rlead.z_pows[k] - blead.z_pows[k];
            if (qt.z_pows[k] < alo[k] - blo[k] || qt.z_pows[k] > ahi[k] - bhi[k]) return std::nullopt;
        }
        if (qt.v_pow < avlo - bvlo || qt.v_pow > avhi - bvhi) return std::nullopt;
        CoeffElem qmono = CoeffElem::monomial(qt.coeff, qt.v_pow, qt.z_pows, {}, n);
        q += qmono;
        rem -= qmono * b;
    }
    return q;
}

}  // namespace mice
