// Command-line front end: analyze instances, synthesize maps of a given
// CP nilpotent type, batch-verify the structure theorems over random
// ensembles, enumerate majorization extreme points, and build/check
// roots of pure states. All output is UTF-8 JSON, one document per run.

#include <chrono>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cpnilp/ensemble.hpp"
#include "cpnilp/io.hpp"
#include "cpnilp/majorization.hpp"
#include "cpnilp/nilpotency.hpp"
#include "cpnilp/roots.hpp"

using nlohmann::json;
using namespace cpnilp;

namespace {

// exit codes: 0 pass, 1 verdict failure, 2 parse/usage, 3 numerical
// ambiguity, 4 precondition violation
constexpr int kExitVerdictFail = 1;
constexpr int kExitParse = 2;
constexpr int kExitIllConditioned = 3;
constexpr int kExitPrecondition = 4;

json tolerance_json(const Tolerance& tol) {
    return json{{"atol", tol.atol}, {"rtol", tol.rtol}, {"gap_ratio", tol.gap_ratio}};
}

struct Verdicts {
    json map = json::object();
    bool any_fail = false;

    void set(const std::string& name, bool pass) {
        map[name] = pass ? "pass" : "fail";
        if (!pass) any_fail = true;
    }
    void na(const std::string& name) { map[name] = "not_applicable"; }
};

CPNilpotentType pad_type(const CPNilpotentType& t, int p) {
    CPNilpotentType out = t;
    while (out.order() < p) out.entries.push_back(0);
    return out;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    return out;
}

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

bool trace_duality_holds(const KrausMap& alpha, const Tolerance& tol, Rng& rng) {
    const KrausMap adj = conjugate(alpha);
    for (int probe = 0; probe < 4; ++probe) {
        const Mat X = random_matrix(alpha.dim, rng);
        const Mat Y = random_matrix(alpha.dim, rng);
        const Complex lhs = (cpnilp::apply(alpha, X).adjoint() * Y).trace();
        const Complex rhs = (X.adjoint() * cpnilp::apply(adj, Y)).trace();
        if (std::abs(lhs - rhs) > tol.rtol * X.norm() * Y.norm()) return false;
    }
    return true;
}

bool subspaces_equal(const Subspace& a, const Subspace& b, double tol) {
    return a.dim() == b.dim() && containment_residual(a, b) < tol &&
           containment_residual(b, a) < tol;
}

json analyze_report(const KrausMap& alpha, const Tolerance& tol, Verdicts& v) {
    json instance;
    instance["n"] = alpha.dim;
    instance["d"] = alpha.d();
    const int idx = index(alpha, tol);
    instance["index"] = idx;

    const auto order = nilpotency_order(alpha, tol);
    instance["order"] = order ? json(*order) : json(nullptr);

    v.na("thm_3_1");
    v.na("thm_4_3");
    if (!order) {
        instance["cp_type"] = nullptr;
        for (const char* name :
             {"thm_2_4", "thm_2_7", "cor_2_5", "prop_2_6", "l_lower_bound", "block_triangular",
              "commuting_flags"})
            v.na(name);
        return instance;
    }

    const CPNilpotentType t = cp_type(alpha, tol);
    const CPNilpotentType t_adj = adjoint_type(alpha, tol);
    const LinearNilpotentType l = linear_nilpotent_type(alpha, tol);
    instance["cp_type"] = t.entries;
    instance["adjoint_type"] = t_adj.entries;
    instance["linear_type"] = l.entries;

    v.set("thm_2_4", check_basic_inequalities(t, std::max(idx, 1)));
    v.set("cor_2_5", *order <= alpha.dim);
    v.set("prop_2_6", nilpotency_order(conjugate(alpha), tol) == order);
    v.set("thm_2_7", check_theorem_2_7(t, t_adj));
    v.set("l_lower_bound", check_l_lower_bound(l, t_adj));
    v.set("block_triangular", check_block_triangular(alpha, flag(alpha, tol), tol));
    const auto m = commuting_flags_report(alpha, tol);
    if (m) {
        instance["commuting_flags"] = *m;
        v.set("commuting_flags", true);  // marginal consistency checked internally
    } else {
        v.na("commuting_flags");
    }
    return instance;
}

int cmd_analyze(const std::string& input, const Tolerance& tol) {
    const InstanceFile f = load_instance_file(input);
    if (!f.is_kraus_map()) throw ParseError("analyze expects a kraus_map instance");
    const auto t0 = std::chrono::steady_clock::now();
    Verdicts v;
    json instance = analyze_report(std::get<KrausMap>(f.payload), tol, v);
    json report{{"instance", instance},
                {"verdicts", v.map},
                {"tolerances", tolerance_json(tol)},
                {"seed", 0}};
    report["wall_time_s"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << report.dump(2) << "\n";
    return v.any_fail ? kExitVerdictFail : 0;
}

int cmd_synthesize(const std::vector<int>& type_list, int d, const std::string& out,
                   const Tolerance& tol) {
    CPNilpotentType t;
    t.entries = type_list;
    t.n = std::accumulate(type_list.begin(), type_list.end(), 0);
    const KrausMap alpha = synthesize(t, d);
    // sanity: the synthesized map must analyze back to the request
    if (cp_type(alpha, tol).entries != t.entries)
        throw IllConditioned("synthesize: round-trip type mismatch");
    save_instance_file(make_instance(alpha), out);
    std::cout << json{{"written", out}, {"n", t.n}, {"d", d}, {"cp_type", t.entries}}.dump(2)
              << "\n";
    return 0;
}

struct VerifyFailure {
    std::string check;
    KrausMap instance;
};

// One full pass of the property suite over a synthesized-and-rotated
// nilpotent instance; returns the name of the first failing check.
std::optional<std::string> verify_nilpotent_instance(const KrausMap& alpha, int p_expected,
                                                     const CPNilpotentType& t_expected,
                                                     const Tolerance& tol, Rng& rng) {
    const auto order = nilpotency_order(alpha, tol);
    if (!order || *order != p_expected) return "nilpotency_order";
    if (*order > alpha.dim) return "cor_2_5";
    const CPNilpotentType t = cp_type(alpha, tol);
    if (t.entries != t_expected.entries) return "cp_type_round_trip";
    const int idx = index(alpha, tol);
    if (!check_basic_inequalities(t, std::max(idx, 1))) return "thm_2_4";
    if (nilpotency_order(conjugate(alpha), tol) != order) return "prop_2_6";
    const CPNilpotentType t_adj = adjoint_type(alpha, tol);
    if (!check_theorem_2_7(t, t_adj)) return "thm_2_7";
    if (!check_block_triangular(alpha, flag(alpha, tol), tol)) return "block_triangular";
    if (!check_l_lower_bound(linear_nilpotent_type(alpha, tol), t_adj)) return "l_lower_bound";
    if (!trace_duality_holds(alpha, tol, rng)) return "trace_duality";
    if (!subspaces_equal(unit_kernel(alpha, tol), common_kernel(alpha.kraus, tol), 1e-8))
        return "prop_2_1";
    commuting_flags_report(alpha, tol);  // marginal consistency is internal
    return std::nullopt;
}

int cmd_verify(int n_max, int d_max, int trials, std::uint64_t seed, const std::string& dump_path,
               const Tolerance& tol) {
    if (n_max < 1 || d_max < 1 || trials < 1) throw ParseError("verify: bad ensemble flags");
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(seed);
    std::uniform_int_distribution<int> pick_n(1, n_max);
    std::uniform_int_distribution<int> pick_d(1, d_max);

    std::optional<VerifyFailure> failure;
    Verdicts v;
    int checked = 0;
    for (int trial = 0; trial < trials && !failure; ++trial) {
        const int n = pick_n(rng);
        const int d = pick_d(rng);
        const CPNilpotentType t = random_valid_type(n, d, rng);
        const KrausMap alpha =
            conjugate_by_unitary(synthesize(t, d), random_unitary(n, rng));
        if (auto bad = verify_nilpotent_instance(alpha, t.order(), t, tol, rng)) {
            failure = VerifyFailure{*bad, alpha};
            break;
        }

        // majorization over an invariant split
        if (n >= 2) {
            std::uniform_int_distribution<int> pick_m(1, n - 1);
            auto [inv_alpha, M] = random_invariant_instance(n, pick_m(rng), d, rng());
            if (!is_invariant(inv_alpha, M, tol)) {
                failure = VerifyFailure{"random_invariant_instance", inv_alpha};
                break;
            }
            auto [beta, gamma] = compress(split(inv_alpha, M, tol));
            const auto pa = nilpotency_order(inv_alpha, tol);
            const auto pb = nilpotency_order(beta, tol);
            const auto pc = nilpotency_order(gamma, tol);
            if (!pa || !pb || !pc || *pb > *pa || *pc > *pa) {
                failure = VerifyFailure{"compression_order", inv_alpha};
                break;
            }
            const CPNilpotentType a = cp_type(inv_alpha, tol);
            const CPNilpotentType b = pad_type(cp_type(beta, tol), a.order());
            const CPNilpotentType c = pad_type(cp_type(gamma, tol), a.order());
            if (!check_theorem_3_1(a, b, c)) {
                failure = VerifyFailure{"thm_3_1", inv_alpha};
                break;
            }
        }

        // roots round trip on a contractive copy
        {
            const KrausMap contractive = make_contractive(alpha);
            const RootCandidate root = build_root(contractive, tol);
            if (!is_root_of_state(root, tol)) {
                failure = VerifyFailure{"thm_4_3_root", contractive};
                break;
            }
            const KrausMap back = compress_to_nilpotent(root, tol);
            const Mat diff =
                to_superoperator(back).matrix - to_superoperator(contractive).matrix;
            if (diff.norm() > 1e-8) {
                failure = VerifyFailure{"thm_4_2_round_trip", contractive};
                break;
            }
        }

        // extreme points of a small random cone
        {
            std::uniform_int_distribution<int> pick_len(1, 4), pick_entry(1, 3);
            const int len = pick_len(rng);
            MajorizationVector x(len);
            for (double& xi : x) xi = pick_entry(rng);
            const auto pts = extreme_points(x);
            bool ok = pts.size() == (size_t{1} << (len - 1));
            for (const auto& y : pts)
                ok = ok && cone_membership(x, y, tol) && verify_extreme(x, y, tol);
            if (!ok) {
                failure = VerifyFailure{"extreme_points", alpha};
                break;
            }
        }
        ++checked;
    }

    json report{{"tolerances", tolerance_json(tol)},
                {"seed", seed},
                {"trials", trials},
                {"checked", checked}};
    report["wall_time_s"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (failure) {
        report["failed_check"] = failure->check;
        const std::string path = dump_path.empty() ? "counterexample.json" : dump_path;
        save_instance_file(make_instance(failure->instance), path);
        report["counterexample"] = path;
        std::cout << report.dump(2) << "\n";
        return kExitVerdictFail;
    }
    report["verdict"] = "pass";
    std::cout << report.dump(2) << "\n";
    return 0;
}

int cmd_extreme(const std::vector<double>& x) {
    for (double xi : x)
        if (xi <= 0.0) throw InvalidArgument("extreme: entries must be positive");
    const auto pts = extreme_points(x);
    json out = json::array();
    for (const auto& y : pts) out.push_back(y);
    std::cout << json{{"count", pts.size()}, {"points", out}}.dump(2) << "\n";
    return 0;
}

int cmd_root_build(const std::string& input, const std::string& out, const Tolerance& tol) {
    const InstanceFile f = load_instance_file(input);
    if (!f.is_kraus_map()) throw ParseError("root build expects a kraus_map instance");
    const RootCandidate r = build_root(std::get<KrausMap>(f.payload), tol);
    save_instance_file(make_instance(r), out);
    std::cout << json{{"written", out}, {"p", r.order_claim}, {"n", r.tau.n}}.dump(2) << "\n";
    return 0;
}

int cmd_root_check(const std::string& input, const Tolerance& tol) {
    const InstanceFile f = load_instance_file(input);
    if (!f.is_root_candidate()) throw ParseError("root check expects a root_candidate instance");
    const RootCandidate& r = std::get<RootCandidate>(f.payload);
    RootFailure why = RootFailure::none;
    const bool ok = is_root_of_state(r, tol, &why);
    json report{{"is_root", ok}, {"p", r.order_claim}, {"tolerances", tolerance_json(Tolerance{})}};
    switch (why) {
        case RootFailure::none: break;
        case RootFailure::not_cp: report["reason"] = "NotCP"; break;
        case RootFailure::not_unital: report["reason"] = "NotUnital"; break;
        case RootFailure::power_mismatch: report["reason"] = "PowerMismatch"; break;
    }
    if (ok) {
        const KrausMap back = compress_to_nilpotent(r, tol);
        const auto order = nilpotency_order(back, tol);
        report["compression_order"] = order ? json(*order) : json(nullptr);
    }
    std::cout << report.dump(2) << "\n";
    return ok ? 0 : kExitVerdictFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical toolkit for nilpotent completely positive maps"};
    app.require_subcommand(1);

    Tolerance tol;
    app.add_option("--atol", tol.atol, "absolute cutoff");
    app.add_option("--rtol", tol.rtol, "relative singular-value cutoff");
    app.add_option("--gap-ratio", tol.gap_ratio, "minimum kept/dropped singular-value ratio");

    std::string input = "-", out = "instance.json", type_str, x_str, dump_path;
    int d = 1, n_max = 4, d_max = 2, trials = 100;
    std::uint64_t seed = 1;

    auto* analyze = app.add_subcommand("analyze", "analyze a kraus_map instance");
    analyze->add_option("input", input, "instance file, or - for stdin");

    auto* synth = app.add_subcommand("synthesize", "build a map of prescribed CP type");
    synth->add_option("--type", type_str, "comma-separated tuple, e.g. 1,2")->required();
    synth->add_option("--d", d, "number of Kraus operators")->required();
    synth->add_option("--out", out, "output instance path");

    auto* verify = app.add_subcommand("verify", "batch-verify all theorems on random ensembles");
    verify->add_option("--n-max", n_max, "maximum space dimension");
    verify->add_option("--d-max", d_max, "maximum Kraus count");
    verify->add_option("--trials", trials, "number of random trials");
    verify->add_option("--seed", seed, "RNG seed");
    verify->add_option("--out", dump_path, "counterexample dump path");

    auto* extreme = app.add_subcommand("extreme", "extreme points of the majorization cone C(x)");
    extreme->add_option("--x", x_str, "comma-separated positive vector")->required();

    auto* root = app.add_subcommand("root", "roots of pure states");
    root->require_subcommand(1);
    auto* root_build = root->add_subcommand("build", "build a root from a contractive nilpotent map");
    root_build->add_option("input", input, "kraus_map instance");
    root_build->add_option("--out", out, "output root_candidate path");
    auto* root_check = root->add_subcommand("check", "check a root_candidate instance");
    root_check->add_option("input", input, "root_candidate instance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitParse;
    }

    try {
        if (*analyze) return cmd_analyze(input, tol);
        if (*synth) return cmd_synthesize(parse_int_list(type_str), d, out, tol);
        if (*verify) return cmd_verify(n_max, d_max, trials, seed, dump_path, tol);
        if (*extreme) return cmd_extreme(parse_double_list(x_str));
        if (*root_build) return cmd_root_build(input, out, tol);
        if (*root_check) return cmd_root_check(input, tol);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const IllConditioned& e) {
        std::cerr << "ill-conditioned: " << e.what() << "\n";
        return kExitIllConditioned;
    } catch (const std::invalid_argument& e) {
        std::cerr << "precondition violation: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
    return kExitParse;
}
