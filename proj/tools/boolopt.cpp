// boolopt command-line driver: field setup, coset construction, spectra,
// Gauss sums, s-search, covering radius and the verification suite.
//
// Exit codes: 0 ok, 2 bad parameters, 3 an identity check failed.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "boolopt/boolfun.hpp"
#include "boolopt/charsums.hpp"
#include "boolopt/construct.hpp"
#include "boolopt/discrepancy.hpp"
#include "boolopt/gf2n.hpp"
#include "boolopt/table_io.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace boolopt;

namespace {

constexpr int kExitParams = 2;
constexpr int kExitIdentity = 3;

struct IdentityFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string hex(std::uint64_t x) {
    std::ostringstream os;
    os << "0x" << std::hex << x;
    return os.str();
}

std::optional<std::uint64_t> parse_modulus(const std::string& s) {
    if (s.empty()) return std::nullopt;
    std::size_t used = 0;
    std::uint64_t m = 0;
    try {
        m = std::stoull(s, &used, 0);
    } catch (const std::exception&) {
        used = 0;
    }
    require(used == s.size() && used > 0, "modulus must be an integer (hex with 0x prefix), got '" + s + "'");
    return m;
}

// FNV-1a over the coefficient bytes; lets two runs compare spectra exactly.
std::string spectrum_digest(const std::vector<std::int32_t>& coeffs) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::int32_t c : coeffs) {
        auto u = static_cast<std::uint32_t>(c);
        for (int b = 0; b < 4; ++b) {
            h ^= (u >> (8 * b)) & 0xff;
            h *= 0x100000001b3ULL;
        }
    }
    return hex(h);
}

json manifest(const std::string& command, json parameters, json inputs = json::array(),
              json outputs = json::array()) {
    return {{"command", command},
            {"parameters", std::move(parameters)},
            {"inputs", std::move(inputs)},
            {"outputs", std::move(outputs)},
            {"version", BOOLOPT_VERSION}};
}

json field_json(const FieldContext& ctx) {
    return {{"n", ctx.degree()},
            {"modulus", hex(ctx.modulus())},
            {"generator", hex(ctx.generator())},
            {"trace_mask", hex(ctx.trace_mask())},
            {"size", ctx.size()}};
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

// ---- field -----------------------------------------------------------------

struct FieldOpts {
    int n = 3;
    std::string modulus;
};

int cmd_field(const FieldOpts& o) {
    const auto ctx = make_field(o.n, parse_modulus(o.modulus));
    emit({{"manifest", manifest("field", {{"n", o.n}, {"modulus", o.modulus}})}, {"field", field_json(ctx)}});
    return 0;
}

// ---- construct ---------------------------------------------------------------

struct ConstructOpts {
    int n = 9;
    std::uint32_t v = 7;
    std::uint64_t seed = 1;
    std::string g_mode = "standard";
    std::uint64_t g_seed = 0;
    std::string solver = "localsearch";
    std::string objective = "f1";
    unsigned restarts = 8;
    std::size_t budget = 2000;
    bool balanced = false;
    std::string out = "boolopt_construct";
    std::string modulus;
};

void validate_construct(const ConstructOpts& o) {
    require(o.n >= 1 && o.n <= FieldContext::kMaxDegree,
            "n must lie in [1, " + std::to_string(FieldContext::kMaxDegree) + "], got " + std::to_string(o.n));
    require(o.n % 2 == 1, "n = " + std::to_string(o.n) +
                              " is even; the coset construction covers odd n only (even n has bent functions)");
    require(seven_adic_exponent(o.v) >= 1, "v must be a power of 7, got " + std::to_string(o.v));
    const std::uint64_t m = ord_check(o.v);
    require(o.n % m == 0 && (o.n / m) % 2 == 1,
            "n must be an odd multiple of ord_v(2) = " + std::to_string(m) + " for v = " + std::to_string(o.v) +
                ", got n = " + std::to_string(o.n));
    require(o.g_mode == "standard" || o.g_mode == "random", "g must be 'standard' or 'random'");
    require(o.solver == "localsearch" || o.solver == "random", "solver must be 'localsearch' or 'random'");
    require(o.objective == "f1" || o.objective == "f", "objective must be 'f1' or 'f'");
}

int cmd_construct(const ConstructOpts& o) {
    validate_construct(o);
    const Stopwatch total;
    json timings;

    const auto ctx = make_field(o.n, parse_modulus(o.modulus));
    const CosetSystem cs(ctx, o.v);
    const GAssignment g = o.g_mode == "random" ? GAssignment::random(o.v, o.g_seed) : GAssignment::standard(o.v);

    SignProblem problem(ctx, o.v);
    if (o.objective == "f") {
        // Row sums then equal the full coefficients 1 + coeffs_f1 + coeffs_f2.
        const auto parts = split(cs, SubgroupSigns(cs.subgroup_size(), 1), g);
        const auto w2 = walsh_transform(ctx, parts.f2);
        std::vector<std::int64_t> offset(w2.coeffs.size());
        for (std::size_t a = 0; a < offset.size(); ++a) offset[a] = 1 + w2.coeffs[a];
        problem = problem.with_offset(std::move(offset));
    }

    Stopwatch sw;
    const SignSolution sol = o.solver == "random" ? solve_random(problem, o.restarts, o.seed)
                                                  : solve_localsearch(problem, o.restarts, o.budget, o.seed);
    timings["solve_s"] = sw.seconds();
    if (!sol.tracked_matches_recomputed) throw IdentityFailure("tracked objective differs from recomputation");

    SubgroupSigns h = sol.u;
    const int h_sum_before = std::accumulate(h.begin(), h.end(), 0);
    std::size_t flips = 0;
    if (o.balanced) {
        const auto bal = balance_h(h);
        h = bal.h;
        flips = bal.flips;
    }

    sw = Stopwatch();
    const ConstructionReport rep = measure_construction(cs, h, g);
    timings["measure_s"] = sw.seconds();
    if (!rep.triangle_ok) throw IdentityFailure("triangle inequality on the spectral split failed");
    if (o.balanced && !rep.balanced)
        throw IdentityFailure("balanced construction sums to " + std::to_string(rep.sum_f) + ", expected 0");

    sw = Stopwatch();
    const auto sweep = decomposition_sweep(cs, h, g, coset_psi_vector(ctx, o.v));
    timings["sweep_s"] = sw.seconds();
    if (!sweep.split_identity) throw IdentityFailure("split identity coeffs_f = 1 + coeffs_f1 + coeffs_f2 failed");
    if (!sweep.error_bounded) throw IdentityFailure("decomposition error exceeds epsilon * v");

    const SignFunction f = assemble(cs, h, g);
    const auto spec = walsh_transform(ctx, f);

    const fs::path prefix(o.out);
    if (prefix.has_parent_path()) fs::create_directories(prefix.parent_path());
    const fs::path tt = prefix.string() + ".tt";
    const fs::path js = prefix.string() + ".json";

    json jg = json::array();
    for (std::int8_t x : g.values()) jg.push_back(x);
    json out;
    out["manifest"] = manifest("construct",
                               {{"n", o.n},
                                {"v", o.v},
                                {"e", seven_adic_exponent(o.v)},
                                {"seed", o.seed},
                                {"g", o.g_mode},
                                {"g_seed", o.g_seed},
                                {"solver", o.solver},
                                {"objective", o.objective},
                                {"restarts", o.restarts},
                                {"budget", o.budget},
                                {"balanced", o.balanced}},
                               json::array(), {tt.string(), js.string()});
    out["construction"] = {{"n", o.n},
                           {"v", o.v},
                           {"modulus", hex(ctx.modulus())},
                           {"generator", hex(ctx.generator())},
                           {"g", jg},
                           {"h", pack_signs(h)},
                           {"h_size", h.size()},
                           {"h_sum", std::accumulate(h.begin(), h.end(), 0)},
                           {"h_sum_before_balance", h_sum_before},
                           {"balanced", rep.balanced},
                           {"sum_f", rep.sum_f},
                           {"flips", flips}};
    out["solver"] = {{"achieved", sol.achieved},
                     {"bound", sol.bound},
                     {"certified", static_cast<double>(sol.achieved) <= sol.bound},
                     {"restart", sol.restart},
                     {"flips", sol.flips},
                     {"tracked_matches_recomputed", sol.tracked_matches_recomputed}};
    out["spectrum_summary"] = {{"max_f_hat", rep.max_f_hat},
                               {"max_f1_hat", rep.max_f1_hat},
                               {"max_f2_hat", rep.max_f2_hat},
                               {"epsilon_measured", rep.epsilon_measured},
                               {"spencer_bound", rep.spencer_bound},
                               {"proposition_bound", rep.proposition_bound},
                               {"max_f_coeff", rep.max_f_coeff},
                               {"max_f1_coeff", rep.max_f1_coeff},
                               {"max_f2_coeff", rep.max_f2_coeff},
                               {"spencer_bound_raw", rep.spencer_bound_raw},
                               {"spectrum_digest", spectrum_digest(spec.coeffs)}};
    out["identities"] = {{"split_identity", sweep.split_identity},
                         {"f2_zero_at_origin", sweep.f2_zero_at_origin},
                         {"error_bounded", sweep.error_bounded},
                         {"max_error", sweep.max_error},
                         {"error_bound", sweep.bound},
                         {"max_series_mismatch", sweep.max_series_mismatch},
                         {"triangle_ok", rep.triangle_ok}};
    timings["total_s"] = total.seconds();
    out["timings"] = timings;

    save_table(tt, f);
    write_file_atomic(js, out.dump(2) + "\n");
    emit(out);
    return 0;
}

// ---- spectrum ----------------------------------------------------------------

struct SpectrumOpts {
    std::string file;
    bool coeffs = false;
    std::string modulus;
};

int cmd_spectrum(const SpectrumOpts& o) {
    const SignFunction f = load_table(o.file);
    const auto ctx = make_field(f.n(), parse_modulus(o.modulus));
    const auto spec = walsh_transform(ctx, f);
    std::size_t nonzero = 0;
    for (auto c : spec.coeffs) nonzero += c != 0;
    const auto aff = affine_distance_profile(ctx, to_boolean(f));
    json out;
    out["manifest"] = manifest("spectrum", {{"coeffs", o.coeffs}, {"modulus", o.modulus}}, {o.file});
    out["field"] = field_json(ctx);
    out["spectrum"] = {{"n", f.n()},
                       {"max_abs", spec.max_abs()},
                       {"mu", mu_value(spec)},
                       {"nonzero_count", nonzero},
                       {"sum_of_squares", spec.sum_of_squares()},
                       {"parseval_ok", spec.sum_of_squares() == (std::int64_t{1} << (2 * f.n()))},
                       {"balanced", is_balanced(f)},
                       {"affine_distance", aff.distance},
                       {"best_affine", {{"a", hex(aff.a)}, {"constant", aff.constant}}},
                       {"spectrum_digest", spectrum_digest(spec.coeffs)}};
    if (o.coeffs) out["spectrum"]["coeffs"] = spec.coeffs;
    emit(out);
    return 0;
}

// ---- gauss / search-s / rho ----------------------------------------------------------

struct GaussOpts {
    int n = 3;
    std::uint32_t v = 7;
};

int cmd_gauss(const GaussOpts& o) {
    const auto ctx = make_field(o.n);
    const auto cpv = coset_psi_vector(ctx, o.v);
    const double scale = std::pow(2.0, o.n / 2.0);
    json sums = json::array();
    for (std::uint32_t j = 0; j < o.v; ++j) {
        const auto g = gauss_sum(cpv, j);
        json entry = {{"j", j}, {"re", g.real()}, {"im", g.imag()}, {"abs_normalized", std::abs(g) / scale}};
        if (const auto q = round_to_quadint7(g, 1e-6)) entry["quadint7"] = {{"a", q->a()}, {"b", q->b()}, {"norm", q->norm()}};
        sums.push_back(entry);
    }
    json out;
    out["manifest"] = manifest("gauss", {{"n", o.n}, {"v", o.v}});
    out["coset_psi_vector"] = cpv.c;
    out["gauss_sums"] = sums;
    const unsigned e = seven_adic_exponent(o.v);
    if (e >= 1) {
        const std::uint64_t m = multiplicative_order(2, o.v);
        if (o.n % m == 0 && (o.n / m) % 2 == 1) {
            json matches = json::array();
            bool all = true;
            for (const auto& mt : match_closed_forms(cpv)) {
                matches.push_back({{"j", mt.j}, {"d", mt.d}, {"sign", mt.sign}, {"relative_residual", mt.relative_residual}});
                all = all && mt.sign != 0;
            }
            out["closed_form"] = {{"s", o.n / m}, {"all_matched", all}, {"characters", matches}};
            if (!all) {
                emit(out);
                throw IdentityFailure("closed-form Gauss sums do not match the brute-force values");
            }
        }
    }
    emit(out);
    return 0;
}

struct SearchOpts {
    unsigned e = 1;
    double eps = 0.2;
    std::uint64_t s_max = 10001;
};

int cmd_search_s(const SearchOpts& o) {
    const auto r = find_good_s(o.e, o.eps, o.s_max);
    json out;
    out["manifest"] = manifest("search-s", {{"e", o.e}, {"epsilon", o.eps}, {"s_max", o.s_max}});
    out["result"] = {{"found", r.found}};
    if (r.found) {
        const std::uint64_t m = 3 * ipow(7, o.e - 1);
        out["result"]["s"] = r.s;
        out["result"]["n"] = r.s * m;
        out["result"]["worst_angle"] = r.worst_angle;
        out["result"]["sufficient_condition"] = sufficient_angle_condition(o.e, o.eps, r.s);
    }
    emit(out);
    return 0;
}

int cmd_rho(int n) {
    const Stopwatch sw;
    const int rho = rho_exhaustive(n);
    emit({{"manifest", manifest("rho", {{"n", n}})},
          {"rho", rho},
          {"timings", {{"total_s", sw.seconds()}}}});
    return 0;
}

// ---- verify ------------------------------------------------------------------

struct VerifyOpts {
    std::string level = "fast";
    bool n21 = false;
    std::string table;
    std::uint64_t seed = 20240607;
};

struct CheckResult {
    std::string name;
    bool passed = false;
    json detail;
    double seconds = 0.0;
};

class Suite {
public:
    void run(const std::string& name, const std::function<bool(json&)>& body) {
        CheckResult r{name, false, json::object(), 0.0};
        const Stopwatch sw;
        try {
            r.passed = body(r.detail);
        } catch (const std::exception& ex) {
            r.detail["exception"] = ex.what();
        }
        r.seconds = sw.seconds();
        std::cerr << (r.passed ? "ok     " : "FAILED ") << name << " (" << r.seconds << " s)\n";
        results_.push_back(std::move(r));
    }

    bool all_passed() const {
        return std::all_of(results_.begin(), results_.end(), [](const auto& r) { return r.passed; });
    }

    json to_json() const {
        json arr = json::array();
        for (const auto& r : results_)
            arr.push_back({{"name", r.name}, {"passed", r.passed}, {"seconds", r.seconds}, {"detail", r.detail}});
        return arr;
    }

    std::vector<std::string> failures() const {
        std::vector<std::string> out;
        for (const auto& r : results_)
            if (!r.passed) out.push_back(r.name);
        return out;
    }

private:
    std::vector<CheckResult> results_;
};

SignFunction random_sign(int n, std::mt19937_64& rng) {
    std::vector<std::int8_t> v(std::size_t{1} << n);
    for (auto& s : v) s = (rng() & 1) ? -1 : 1;
    return SignFunction(n, std::move(v));
}

void table_checks(Suite& suite, const std::string& path) {
    std::ifstream in(path);
    require(static_cast<bool>(in), "cannot open " + path);
    std::size_t erasures = 0;
    const SignFunction f = parse_table_lenient(in, erasures);
    const auto ctx = make_field(f.n());
    suite.run("table total", [&](json& d) {
        d["erasures"] = erasures;
        return f.is_total();
    });
    suite.run("Parseval", [&](json& d) {
        const auto s = walsh_transform(ctx, f);
        const std::int64_t expect = std::int64_t{1} << (2 * f.n());
        d["sum_of_squares"] = s.sum_of_squares();
        d["expected"] = expect;
        return s.sum_of_squares() == expect;
    });
}

void decomposition_check(Suite& suite, int n, std::uint64_t seed) {
    suite.run("decomposition_n" + std::to_string(n), [&](json& d) {
        const CosetSystem cs(make_field(n), 7);
        const auto cpv = coset_psi_vector(cs.field(), 7);
        std::mt19937_64 rng(seed);
        bool ok = true;
        for (int variant = 0; variant < 2; ++variant) {
            const auto g = variant == 0 ? GAssignment::standard(7) : GAssignment::random(7, rng());
            SubgroupSigns h(cs.subgroup_size());
            for (auto& s : h) s = (rng() & 1) ? -1 : 1;
            const auto sw = decomposition_sweep(cs, h, g, cpv);
            d[variant == 0 ? "standard_g" : "random_g"] = {{"split_identity", sw.split_identity},
                                                          {"error_bounded", sw.error_bounded},
                                                          {"max_error", sw.max_error},
                                                          {"bound", sw.bound}};
            ok = ok && sw.split_identity && sw.f2_zero_at_origin && sw.error_bounded &&
                 sw.max_series_mismatch < 1e-6;
        }
        return ok;
    });
}

void sign_check(Suite& suite, int n, std::uint64_t seed) {
    suite.run("sign_selection_n" + std::to_string(n), [&](json& d) {
        const SignProblem p(make_field(n), 7);
        const auto sol = solve_localsearch(p, 8, 200, seed);
        d["achieved"] = sol.achieved;
        d["bound"] = sol.bound;
        d["seed"] = seed;
        return certify(sol, p) && sol.tracked_matches_recomputed && p.objective(sol.u) == sol.achieved;
    });
}

void balance_check(Suite& suite, int n, std::uint64_t seed) {
    suite.run("balanced_n" + std::to_string(n), [&](json& d) {
        const CosetSystem cs(make_field(n), 7);
        std::mt19937_64 rng(seed);
        SubgroupSigns h(cs.subgroup_size());
        for (auto& s : h) s = (rng() & 1) ? -1 : 1;
        const int before = std::accumulate(h.begin(), h.end(), 0);
        const auto bal = balance_h(h);
        const auto f = assemble(cs, bal.h, GAssignment::standard(7));
        d["flips"] = bal.flips;
        d["sum_h_before"] = before;
        return std::accumulate(bal.h.begin(), bal.h.end(), 0) == -1 && f.sum() == 0 &&
               bal.flips <= static_cast<std::size_t>((std::abs(before + 1) + 1) / 2);
    });
}

void fast_checks(Suite& suite, std::uint64_t seed) {
    suite.run("parseval_random", [&](json& d) {
        std::mt19937_64 rng(seed);
        int count = 0;
        for (int rep = 0; rep < 200; ++rep) {
            const int n = 1 + static_cast<int>(rng() % 9);
            const auto s = walsh_transform(make_field(n), random_sign(n, rng));
            if (s.sum_of_squares() != (std::int64_t{1} << (2 * n))) return false;
            ++count;
        }
        d["functions"] = count;
        return true;
    });
    suite.run("fwht_vs_direct", [&](json&) {
        std::mt19937_64 rng(seed + 1);
        for (int n = 1; n <= 6; ++n) {
            const auto ctx = make_field(n);
            const auto f = random_sign(n, rng);
            const auto s = walsh_transform(ctx, f);
            for (FieldElement a = 0; a < ctx.size(); ++a) {
                std::int64_t acc = 0;
                for (FieldElement y = 0; y < ctx.size(); ++y) acc += f[y] * ctx.psi(ctx.mul_poly(a, y));
                if (acc != s.coeffs[a]) return false;
            }
        }
        return true;
    });
    suite.run("affine_distance", [&](json&) {
        std::mt19937_64 rng(seed + 2);
        for (int n = 1; n <= 8; ++n) {
            const auto ctx = make_field(n);
            const auto F = to_boolean(random_sign(n, rng));
            std::uint32_t best = ctx.size();
            for (FieldElement a = 0; a < ctx.size(); ++a) {
                std::uint32_t dist = 0;
                for (FieldElement y = 0; y < ctx.size(); ++y) dist += F.bits[y] != ctx.trace(ctx.mul_poly(a, y));
                best = std::min({best, dist, ctx.size() - dist});
            }
            if (affine_distance_profile(ctx, F).distance != best) return false;
        }
        return true;
    });
    suite.run("covering_radius", [&](json& d) {
        const std::vector<int> expect{0, 1, 2, 6};
        bool ok = true;
        for (int n = 1; n <= 4; ++n) {
            const int r = rho_exhaustive(n);
            d["rho" + std::to_string(n)] = r;
            ok = ok && r == expect[n - 1];
        }
        return ok;
    });
    suite.run("gauss_gf8", [&](json& d) {
        const auto cpv = coset_psi_vector(make_field(3), 7);
        if (gauss_sum(cpv, 0) != std::complex<double>(-1.0, 0.0)) return false;
        for (std::uint32_t j = 1; j < 7; ++j) {
            const auto q = round_to_quadint7(gauss_sum(cpv, j), 1e-9);
            if (!q || q->a() != -2 || std::abs(q->b()) != 2 || q->norm() != 8) return false;
        }
        d["values"] = "-1 +- sqrt(-7)";
        return true;
    });
    suite.run("closed_form_n9", [&](json& d) {
        double worst = 0.0;
        bool ok = true;
        for (const auto& m : match_closed_forms(coset_psi_vector(make_field(9), 7))) {
            ok = ok && m.sign != 0;
            worst = std::max(worst, m.relative_residual);
        }
        d["max_relative_residual"] = worst;
        return ok;
    });
    suite.run("davenport_hasse_3_3", [&](json& d) {
        const auto rep = davenport_hasse_check(make_field(3), make_field(9), 7);
        d["max_residual"] = rep.max_residual;
        return rep.passed;
    });
    decomposition_check(suite, 9, seed + 3);
    sign_check(suite, 9, seed + 4);
    balance_check(suite, 9, seed + 5);
    suite.run("lift_chain", [&](json& d) {
        auto b = SignFunction(2, {1, 1, 1, -1});
        auto o = SignFunction(1, {1, -1});
        for (int i = 0; i < 3; ++i) {
            b = lift_two(b);
            o = lift_two(o);
            // Exact: max|coeff|^2 = 2^n for bent, 2^(n+1) for the odd chain.
            const std::int64_t mb = walsh_dot(b).max_abs();
            const std::int64_t mo = walsh_dot(o).max_abs();
            if (mb * mb != (std::int64_t{1} << b.n()) || mo * mo != (std::int64_t{1} << (o.n() + 1))) return false;
        }
        d["bent_n"] = b.n();
        d["odd_n"] = o.n();
        return true;
    });
}

void full_checks(Suite& suite, std::uint64_t seed) {
    decomposition_check(suite, 15, seed + 6);
    suite.run("davenport_hasse_3_5", [&](json& d) {
        const auto rep = davenport_hasse_check(make_field(3), make_field(15), 7);
        d["max_residual"] = rep.max_residual;
        return rep.passed;
    });
    sign_check(suite, 15, seed + 7);
    balance_check(suite, 15, seed + 8);
}

void n21_checks(Suite& suite) {
    for (std::uint32_t v : {7u, 49u}) {
        suite.run("closed_form_n21_v" + std::to_string(v), [&](json& d) {
            double worst = 0.0;
            bool ok = true;
            for (const auto& m : match_closed_forms(coset_psi_vector(make_field(21), v))) {
                ok = ok && m.sign != 0;
                worst = std::max(worst, m.relative_residual);
            }
            d["max_relative_residual"] = worst;
            return ok;
        });
    }
}

int cmd_verify(const VerifyOpts& o) {
    Suite suite;
    const Stopwatch sw;
    json inputs = json::array();
    if (!o.table.empty()) {
        inputs.push_back(o.table);
        table_checks(suite, o.table);
    } else {
        fast_checks(suite, o.seed);
        if (o.level == "full") full_checks(suite, o.seed);
        if (o.n21) n21_checks(suite);
    }
    json out;
    out["manifest"] = manifest("verify", {{"level", o.level}, {"n21", o.n21}, {"seed", o.seed}}, inputs);
    out["checks"] = suite.to_json();
    out["passed"] = suite.all_passed();
    out["timings"] = {{"total_s", sw.seconds()}};
    emit(out);
    if (!suite.all_passed()) {
        std::string names;
        for (const auto& n : suite.failures()) names += (names.empty() ? "" : ", ") + n;
        throw IdentityFailure("failed checks: " + names);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Boolean functions with small Walsh spectrum over GF(2^n)"};
    app.set_version_flag("--version", std::string(BOOLOPT_VERSION));
    app.require_subcommand(1);
    std::function<int()> action;

    FieldOpts fo;
    auto* field = app.add_subcommand("field", "Field parameters for GF(2^n)");
    field->add_option("--n", fo.n, "Extension degree")->required();
    field->add_option("--modulus", fo.modulus, "Irreducible modulus, e.g. 0x203");
    field->callback([&] { action = [&] { return cmd_field(fo); }; });

    ConstructOpts co;
    auto* con = app.add_subcommand("construct", "Coset construction with sign selection on H");
    con->add_option("--n", co.n, "Extension degree (odd multiple of ord_v(2))")->required();
    con->add_option("--v", co.v, "Subgroup index, a power of 7")->required();
    con->add_option("--seed", co.seed, "Master seed for the sign solver");
    con->add_option("--g", co.g_mode, "Coset signs: standard or random");
    con->add_option("--g-seed", co.g_seed, "Seed for --g random");
    con->add_option("--solver", co.solver, "localsearch or random");
    con->add_option("--objective", co.objective, "f1 (rows of H only) or f (full spectrum)");
    con->add_option("--restarts", co.restarts, "Restarts / random trials");
    con->add_option("--budget", co.budget, "Flip budget per restart");
    con->add_flag("--balanced", co.balanced, "Flip h so that f is balanced");
    con->add_option("--out", co.out, "Output prefix for PREFIX.tt and PREFIX.json");
    con->add_option("--modulus", co.modulus, "Irreducible modulus override");
    con->callback([&] { action = [&] { return cmd_construct(co); }; });

    SpectrumOpts so;
    auto* spec = app.add_subcommand("spectrum", "Walsh spectrum of a truth-table file");
    spec->add_option("file", so.file, "Truth table (n=<n> header, hex body)")->required();
    spec->add_flag("--coeffs", so.coeffs, "Include every coefficient");
    spec->add_option("--modulus", so.modulus, "Field modulus used for the trace form");
    spec->callback([&] { action = [&] { return cmd_spectrum(so); }; });

    GaussOpts go;
    auto* gauss = app.add_subcommand("gauss", "Gauss sums of the order-v characters");
    gauss->add_option("--n", go.n, "Extension degree")->required();
    gauss->add_option("--v", go.v, "Character order bound (v | 2^n - 1)")->required();
    gauss->callback([&] { action = [&] { return cmd_gauss(go); }; });

    SearchOpts sso;
    auto* ss = app.add_subcommand("search-s", "Smallest odd s with every Gauss-sum angle within epsilon");
    ss->add_option("--e", sso.e, "v = 7^e")->required();
    ss->add_option("--eps", sso.eps, "Angle tolerance in radians")->required();
    ss->add_option("--s-max", sso.s_max, "Search limit");
    ss->callback([&] { action = [&] { return cmd_search_s(sso); }; });

    int rho_n = 4;
    auto* rho = app.add_subcommand("rho", "Covering radius of RM(1, n) by exhaustive search (n <= 5)");
    rho->add_option("--n", rho_n, "Number of variables")->required();
    rho->callback([&] { action = [&] { return cmd_rho(rho_n); }; });

    VerifyOpts vo;
    auto* ver = app.add_subcommand("verify", "Run the identity checks");
    ver->add_option("--level", vo.level, "fast or full")->check(CLI::IsMember({"fast", "full"}));
    ver->add_flag("--n21", vo.n21, "Add the n = 21 Gauss-sum checks");
    ver->add_option("--table", vo.table, "Check a truth-table file instead (lenient parse)");
    ver->add_option("--seed", vo.seed, "Seed for the random inputs");
    ver->callback([&] { action = [&] { return cmd_verify(vo); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitParams;
    }

    try {
        return action();
    } catch (const ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParams;
    } catch (const IdentityFailure& e) {
        std::cerr << "identity failure: " << e.what() << "\n";
        return kExitIdentity;
    } catch (const std::logic_error& e) {
        std::cerr << "identity failure: " << e.what() << "\n";
        return kExitIdentity;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
