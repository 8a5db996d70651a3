// Command-line front door: build systems, dump weight tables, compute
// partition functions, and run the verifier suites.  Reports are JSON on
// stdout (byte-stable for a fixed config unless --timing is given);
// diagnostics go to stderr.  Exit codes: 0 all verdicts pass, 1 verification
// counterexample, 2 usage error.  MICE_WORKERS controls the worker pool.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mice/engine.hpp"
#include "mice/verify.hpp"
#include "mice/ybsystem.hpp"

namespace {

using nlohmann::json;

constexpr const char* kToolVersion = "0.1.0";
constexpr int kSchemaVersion = 1;

struct Options {
    std::string format = "json";
    bool timing = false;
};

json base_report(const std::string& command, const json& config) {
    json out;
    out["schema_version"] = kSchemaVersion;
    out["tool_version"] = kToolVersion;
    out["command"] = command;
    out["config"] = config;
    return out;
}

void attach(json& out, const mice::VerificationReport& rep, const Options& opt) {
    out["identity"] = rep.identity;
    out["pass"] = rep.pass();
    out["cases_checked"] = rep.cases_checked;
    json fails = json::array();
    for (const auto& f : rep.failures)
        fails.push_back(json{{"context", f.context}, {"lhs", f.lhs}, {"rhs", f.rhs}});
    out["failures"] = fails;
    json vals = json::object();
    for (const auto& [k, v] : rep.values) vals[k] = v;
    out["values"] = vals;
    if (opt.timing) out["elapsed_seconds"] = rep.elapsed_seconds;
}

int emit(const json& out, const Options& opt, bool pass) {
    if (opt.format == "text") {
        std::cout << out["command"].get<std::string>() << ": " << (pass ? "PASS" : "FAIL") << "\n";
        if (out.contains("values"))
            for (auto& [k, v] : out["values"].items()) std::cout << "  " << k << " = " << v << "\n";
        if (out.contains("value")) std::cout << "  value = " << out["value"].get<std::string>() << "\n";
        if (out.contains("failures"))
            for (auto& f : out["failures"])
                std::cout << "  counterexample: " << f["context"].get<std::string>() << "\n    lhs = "
                          << f["lhs"].get<std::string>() << "\n    rhs = " << f["rhs"].get<std::string>()
                          << "\n";
    } else {
        std::cout << out.dump(2) << "\n";
    }
    return pass ? 0 : 1;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(std::stoi(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(std::stoi(cur));
    return out;
}

mice::RowType parse_row_type(const std::string& s) {
    if (s == "gamma" || s == "g") return mice::RowType::Gamma;
    if (s == "delta" || s == "d") return mice::RowType::Delta;
    throw mice::ContractViolation("unknown row type '" + s + "' (expected gamma or delta)");
}

std::string pattern_key(const mice::VertexPattern& p) {
    std::string k = "t";
    k += mice::spin_char(p.top);
    k += " r";
    k += mice::spin_char(p.right);
    k += " b";
    k += mice::spin_char(p.bottom);
    k += " l";
    k += mice::spin_char(p.left);
    k += " lc" + std::to_string(p.left_charge) + " rc" + std::to_string(p.right_charge);
    return k;
}

std::string pattern_key(const mice::TiltedPattern& p) {
    std::string k = "ne";
    k += mice::spin_char(p.ne);
    k += " se";
    k += mice::spin_char(p.se);
    k += " sw";
    k += mice::spin_char(p.sw);
    k += " nw";
    k += mice::spin_char(p.nw);
    k += " cne" + std::to_string(p.ne_charge) + " cse" + std::to_string(p.se_charge) + " csw" +
         std::to_string(p.sw_charge) + " cnw" + std::to_string(p.nw_charge);
    return k;
}

json spec_json(const mice::SystemSpec& spec) {
    json rows = json::array();
    for (const auto& r : spec.rows)
        rows.push_back(json{{"type", mice::row_type_name(r.type)}, {"param", r.param}});
    return json{{"columns", spec.columns},
                {"rows", rows},
                {"top_minus", spec.top_minus.columns},
                {"bottom_minus", spec.bottom_minus.columns},
                {"n", spec.n}};
}

}  // namespace

int main(int argc, char** argv) {
    using namespace mice;
    CLI::App app{"metaplectic-ice: exact computation and verification engine for charged six-vertex models"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--format", opt.format, "Output format: json or text")->check(CLI::IsMember({"json", "text"}));
    app.add_flag("--timing", opt.timing, "Include elapsed time in the report (breaks byte-stability)");

    // weights
    auto* cw = app.add_subcommand("weights", "Dump a weight table as pattern -> canonical coefficient text");
    std::string w_table = "gamma";
    int w_n = 1;
    cw->add_option("--table", w_table, "gamma | delta | gg | gd | dg | dd")
        ->check(CLI::IsMember({"gamma", "delta", "gg", "gd", "dg", "dd"}));
    cw->add_option("--n", w_n, "charge modulus")->check(CLI::PositiveNumber);

    // states
    auto* cs = app.add_subcommand("states", "Enumerate admissible states of a standard system");
    std::string s_lambda, s_types = "gamma";
    int s_n = 1, s_limit = 100;
    cs->add_option("--lambda", s_lambda, "weakly decreasing parts, e.g. 3,2,0")->required();
    cs->add_option("--type", s_types, "row type, or comma list per row");
    cs->add_option("--n", s_n, "charge modulus")->check(CLI::PositiveNumber);
    cs->add_option("--limit", s_limit, "maximum states to list");

    // partition
    auto* cp = app.add_subcommand("partition", "Partition function of a standard system");
    std::string p_lambda, p_types = "gamma", p_method = "enum";
    int p_n = 1;
    cp->add_option("--lambda", p_lambda)->required();
    cp->add_option("--type", p_types, "row type, or comma list per row");
    cp->add_option("--n", p_n)->check(CLI::PositiveNumber);
    cp->add_option("--method", p_method)->check(CLI::IsMember({"enum", "transfer", "both"}));

    // verify-ybe
    auto* cy = app.add_subcommand("verify-ybe", "Yang-Baxter equation for one type pair");
    std::string y_x = "gamma", y_y = "gamma";
    int y_n = 1;
    cy->add_option("--x", y_x);
    cy->add_option("--y", y_y);
    cy->add_option("--n", y_n)->check(CLI::PositiveNumber);

    // verify-two-row
    auto* c2 = app.add_subcommand("verify-two-row", "Two-row commutation for explicit column sets");
    std::string t_top, t_bottom;
    int t_n = 1;
    c2->add_option("--top", t_top, "top-boundary minus columns")->required();
    c2->add_option("--bottom", t_bottom, "bottom-boundary minus columns");
    c2->add_option("--n", t_n)->check(CLI::PositiveNumber);

    // verify-duality
    auto* cd = app.add_subcommand("verify-duality", "Gamma/Delta duality for a partition");
    std::string d_lambda;
    int d_n = 1;
    cd->add_option("--lambda", d_lambda)->required();
    cd->add_option("--n", d_n)->check(CLI::PositiveNumber);

    // train-trace
    auto* ct = app.add_subcommand("train-trace", "Stepwise train-argument verification");
    std::string tr_top, tr_bottom;
    int tr_n = 1;
    ct->add_option("--top", tr_top)->required();
    ct->add_option("--bottom", tr_bottom);
    ct->add_option("--n", tr_n)->check(CLI::PositiveNumber);

    // tokuyama
    auto* ck = app.add_subcommand("tokuyama", "n = 1 Schur cross-check");
    std::string k_lambda;
    ck->add_option("--lambda", k_lambda)->required();

    // ybsystem
    auto* cb = app.add_subcommand("ybsystem", "Eight-relation Yang-Baxter system and proportionality");
    int b_n = 1, b_points = 20;
    std::uint64_t b_seed = 1;
    cb->add_option("--n", b_n)->check(CLI::PositiveNumber);
    cb->add_option("--points", b_points)->check(CLI::PositiveNumber);
    cb->add_option("--seed", b_seed);

    for (CLI::App* sc : app.get_subcommands([](CLI::App*) { return true; })) sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        calibrate_conventions();

        if (cw->parsed()) {
            json cfg{{"table", w_table}, {"n", w_n}};
            json out = base_report("weights", cfg);
            json table = json::object();
            const int n = w_n, r = 2;
            if (w_table == "gamma" || w_table == "delta") {
                RowType t = parse_row_type(w_table);
                for (int mask = 0; mask < 16; ++mask) {
                    auto bit = [mask](int k) { return (mask >> k) & 1 ? Spin::Minus : Spin::Plus; };
                    for (int lc = 0; lc < n; ++lc) {
                        for (int rc = 0; rc < n; ++rc) {
                            VertexPattern p{bit(0), bit(1), bit(2), bit(3), lc, rc};
                            CoeffElem w = vertex_weight(t, p, 1, n, r);
                            if (!w.is_zero()) table[pattern_key(p)] = w.to_string();
                        }
                    }
                }
            } else {
                RowType X = parse_row_type(w_table.substr(0, 1));
                RowType Y = parse_row_type(w_table.substr(1, 1));
                for (int mask = 0; mask < 16; ++mask) {
                    auto bit = [mask](int k) { return (mask >> k) & 1 ? Spin::Minus : Spin::Plus; };
                    for (int c0 = 0; c0 < n; ++c0)
                        for (int c1 = 0; c1 < n; ++c1)
                            for (int c2 = 0; c2 < n; ++c2)
                                for (int c3 = 0; c3 < n; ++c3) {
                                    TiltedPattern p{bit(0), bit(1), bit(2), bit(3), c0, c1, c2, c3};
                                    CoeffElem w = tilted_weight(X, Y, p, n, r, 1, 2);
                                    if (!w.is_zero()) table[pattern_key(p)] = w.to_string();
                                }
                }
            }
            out["entries"] = table;
            return emit(out, opt, true);
        }

        if (cs->parsed() || cp->parsed()) {
            const bool states_cmd = cs->parsed();
            const std::string lam_text = states_cmd ? s_lambda : p_lambda;
            const std::string type_text = states_cmd ? s_types : p_types;
            const int n = states_cmd ? s_n : p_n;
            Partition lambda(parse_int_list(lam_text));
            const int r = lambda.size();
            std::vector<RowType> types;
            {
                std::vector<int> dummy;
                std::string cur;
                for (char c : type_text + ",") {
                    if (c == ',') {
                        if (!cur.empty()) types.push_back(parse_row_type(cur));
                        cur.clear();
                    } else
                        cur += c;
                }
            }
            if (types.size() == 1) types.assign(r, types[0]);
            if (static_cast<int>(types.size()) != r)
                throw ContractViolation("need one row type per row");
            SystemSpec spec = build_standard_system(lambda, r, types, n);
            if (states_cmd) {
                json cfg{{"lambda", lambda.parts}, {"type", type_text}, {"n", n}};
                json out = base_report("states", cfg);
                out["spec"] = spec_json(spec);
                json list = json::array();
                long count = 0;
                enumerate_admissible(spec, [&](const ChargedState& st) {
                    if (count < s_limit) {
                        json rows = json::array();
                        for (std::size_t i = 0; i < st.spins.horiz.size(); ++i) {
                            std::string h;
                            for (Spin x : st.spins.horiz[i]) h += spin_char(x);
                            rows.push_back(json{{"horizontal", h}, {"charges", st.charges[i]}});
                        }
                        json verts = json::array();
                        for (const auto& level : st.spins.vert) {
                            std::string vtext;
                            for (Spin x : level) vtext += spin_char(x);
                            verts.push_back(vtext);
                        }
                        list.push_back(json{{"rows", rows}, {"verticals", verts}});
                    }
                    ++count;
                });
                out["state_count"] = count;
                out["states"] = list;
                return emit(out, opt, true);
            }
            json cfg{{"lambda", lambda.parts}, {"type", type_text}, {"n", n}, {"method", p_method}};
            json out = base_report("partition", cfg);
            out["spec"] = spec_json(spec);
            bool pass = true;
            if (p_method == "enum" || p_method == "both") {
                auto res = partition_function_counted(spec, r);
                out["value"] = res.value.to_string();
                out["state_count"] = res.state_count;
                out["method"] = "enumeration";
            }
            if (p_method == "transfer" || p_method == "both") {
                CoeffElem zt = partition_via_transfer(spec, r);
                if (p_method == "transfer") {
                    out["value"] = zt.to_string();
                    out["method"] = "transfer";
                } else {
                    out["value_transfer"] = zt.to_string();
                    out["method"] = "both";
                    pass = zt.to_string() == out["value"].get<std::string>();
                    out["methods_agree"] = pass;
                }
            }
            return emit(out, opt, pass);
        }

        if (cy->parsed()) {
            json cfg{{"x", y_x}, {"y", y_y}, {"n", y_n}};
            json out = base_report("verify-ybe", cfg);
            auto rep = verify_ybe(parse_row_type(y_x), parse_row_type(y_y), y_n);
            attach(out, rep, opt);
            return emit(out, opt, rep.pass());
        }
        if (c2->parsed()) {
            json cfg{{"top", parse_int_list(t_top)}, {"bottom", parse_int_list(t_bottom)}, {"n", t_n}};
            json out = base_report("verify-two-row", cfg);
            auto rep = verify_two_row(ColumnSet(parse_int_list(t_top)), ColumnSet(parse_int_list(t_bottom)), t_n);
            attach(out, rep, opt);
            return emit(out, opt, rep.pass());
        }
        if (cd->parsed()) {
            Partition lambda(parse_int_list(d_lambda));
            json cfg{{"lambda", lambda.parts}, {"n", d_n}};
            json out = base_report("verify-duality", cfg);
            auto rep = verify_duality(lambda, lambda.size(), d_n);
            attach(out, rep, opt);
            return emit(out, opt, rep.pass());
        }
        if (ct->parsed()) {
            json cfg{{"top", parse_int_list(tr_top)}, {"bottom", parse_int_list(tr_bottom)}, {"n", tr_n}};
            json out = base_report("train-trace", cfg);
            auto rep = train_trace(ColumnSet(parse_int_list(tr_top)), ColumnSet(parse_int_list(tr_bottom)), tr_n);
            attach(out, rep, opt);
            return emit(out, opt, rep.pass());
        }
        if (ck->parsed()) {
            Partition lambda(parse_int_list(k_lambda));
            json cfg{{"lambda", lambda.parts}};
            json out = base_report("tokuyama", cfg);
            auto rep = tokuyama_crosscheck(lambda, lambda.size());
            attach(out, rep, opt);
            return emit(out, opt, rep.pass());
        }
        if (cb->parsed()) {
            json cfg{{"n", b_n}, {"points", b_points}, {"seed", b_seed}};
            json out = base_report("ybsystem", cfg);
            auto rep = verify_yb_system(b_n, b_points, b_seed);
            attach(out, rep, opt);
            return emit(out, opt, rep.pass());
        }
    } catch (const ContractViolation& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const CalibrationError& e) {
        std::cerr << "calibration error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
