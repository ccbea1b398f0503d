// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.
//
//   acceptance [--cli PATH] [--slow] [--stretch]
//
// --slow (or BOOLOPT_SLOW=1) adds the n = 5 covering radius; --stretch (or
// BOOLOPT_STRETCH=1) adds the n = 15 search over the balanced coset signs.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "boolopt/boolfun.hpp"
#include "boolopt/charsums.hpp"
#include "boolopt/construct.hpp"
#include "boolopt/discrepancy.hpp"
#include "boolopt/table_io.hpp"
#include "oracles.hpp"

using namespace boolopt;
using json = nlohmann::json;

namespace {

// Tolerances.
constexpr double kGf8Tol = 1e-9;
constexpr double kClosedFormRelTol = 1e-6;
constexpr double kDavenportHasseRelTol = 1e-6;
constexpr double kIdentitySuiteSeconds = 60.0;
constexpr double kSmallRhoSeconds = 10.0;
constexpr double kSweep15Seconds = 30.0;
constexpr unsigned kMaxRestarts = 8;
constexpr std::uint64_t kSeed = 20240607;
constexpr double kSearchEps = 0.2;
constexpr std::uint64_t kSearchSMax = 2001;
constexpr std::int64_t kStretchTarget = 216;  // 2^(15/2) * sqrt(729/512) ~ 216
constexpr std::int64_t kSqrtTwoLevel = 256;    // 2^(15/2) * sqrt(2)

struct Outcome {
    bool pass = true;
    std::ostringstream note;

    void expect(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            note << " [failed: " << what << "]";
        }
    }
};

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

bool env_flag(const char* name) {
    const char* v = std::getenv(name);
    return v != nullptr && *v != '\0' && std::string(v) != "0";
}

SignFunction random_sign(int n, std::mt19937_64& rng) {
    std::vector<std::int8_t> v(std::size_t{1} << n);
    for (auto& s : v) s = (rng() & 1) ? -1 : 1;
    return SignFunction(n, std::move(v));
}

SubgroupSigns random_h(std::size_t size, std::mt19937_64& rng) {
    SubgroupSigns h(size);
    for (auto& s : h) s = (rng() & 1) ? -1 : 1;
    return h;
}

double rel(std::complex<double> x, std::complex<double> y) { return std::abs(x - y) / std::abs(y); }

// ---------------------------------------------------------------------------

void check_exact_identities(Outcome& o) {
    const Stopwatch sw;
    std::mt19937_64 rng(kSeed);
    int parseval = 0;
    for (int rep = 0; rep < 1000; ++rep) {
        const int n = 1 + static_cast<int>(rng() % 12);
        const auto s = walsh_transform(make_field(n), random_sign(n, rng));
        parseval += s.sum_of_squares() == (std::int64_t{1} << (2 * n));
    }
    o.expect(parseval == 1000, "Parseval");

    int distance = 0;
    for (int rep = 0; rep < 100; ++rep) {
        const int n = 1 + rep % 10;
        const auto F = to_boolean(random_sign(n, rng));
        distance += affine_distance_profile(make_field(n), F).distance == oracle::affine_distance_scan(F);
    }
    o.expect(distance == 100, "spectral distance");

    int fwht = 0;
    for (int n = 1; n <= 6; ++n) {
        const auto ctx = make_field(n);
        for (int rep = 0; rep < 5; ++rep) {
            const auto f = random_sign(n, rng);
            const auto fast = walsh_transform(ctx, f);
            const auto slow = oracle::walsh_direct(ctx, f);
            bool same = true;
            for (std::size_t a = 0; a < slow.size(); ++a) same = same && fast.coeffs[a] == slow[a];
            fwht += same;
        }
    }
    o.expect(fwht == 30, "FWHT vs direct");
    const double t = sw.seconds();
    o.expect(t < kIdentitySuiteSeconds, "time");
    o.note << "Parseval " << parseval << "/1000, distance " << distance << "/100, FWHT " << fwht << "/30, " << t
           << " s";
}

void check_covering_radii(Outcome& o, bool slow) {
    const Stopwatch sw;
    const int r1 = rho_exhaustive(1), r3 = rho_exhaustive(3), r4 = rho_exhaustive(4);
    const double t = sw.seconds();
    o.expect(r1 == 0 && r3 == 2 && r4 == 6, "values");
    o.expect(t < kSmallRhoSeconds, "time");
    o.note << "rho1 = " << r1 << ", rho3 = " << r3 << ", rho4 = " << r4 << " in " << t << " s";
    if (slow) {
        const Stopwatch sw5;
        const int r5 = rho_exhaustive(5);
        o.expect(r5 == 12, "rho5");
        o.note << "; rho5 = " << r5 << " in " << sw5.seconds() << " s";
    } else {
        o.note << "; rho5 skipped (set BOOLOPT_SLOW=1)";
    }
}

void check_gauss_sums(Outcome& o) {
    const auto gf8 = make_field(3);
    const auto cpv8 = coset_psi_vector(gf8, 7);
    const std::complex<double> plus(-1.0, std::sqrt(7.0)), minus(-1.0, -std::sqrt(7.0));
    int ok8 = 0;
    for (std::uint32_t j = 1; j < 7; ++j) {
        const auto g = oracle::gauss_sum(gf8, 7, j);
        const bool near = std::min(std::abs(g - plus), std::abs(g - minus)) <= kGf8Tol;
        const auto q = round_to_quadint7(gauss_sum(cpv8, j), kGf8Tol);
        ok8 += near && q && q->norm() == 8;
    }
    o.expect(ok8 == 6, "GF(8)");

    const auto gf512 = make_field(9);
    double worst = 0.0;
    int ok9 = 0;
    for (std::uint32_t j = 1; j < 7; ++j) {
        const auto brute = oracle::gauss_sum(gf512, 7, j);
        double r = 1e300;
        for (int sign : {1, -1}) r = std::min(r, rel(closed_form_gauss(1, 1, 3, sign).value(9), brute));
        worst = std::max(worst, r);
        ok9 += r <= kClosedFormRelTol;
    }
    o.expect(ok9 == 6, "GF(2^9) closed form");

    const auto dh3 = davenport_hasse_check(gf8, gf512, 7, kDavenportHasseRelTol);
    const auto dh5 = davenport_hasse_check(gf8, make_field(15), 7, kDavenportHasseRelTol);
    o.expect(dh3.passed && dh3.relative_residuals.size() == 6, "DH (3,3)");
    o.expect(dh5.passed && dh5.relative_residuals.size() == 6, "DH (3,5)");
    o.note << "GF(8) " << ok8 << "/6, GF(2^9) s=3 max rel " << worst << ", DH (3,3) " << dh3.max_residual
           << ", DH (3,5) " << dh5.max_residual;
}

void check_decomposition(Outcome& o) {
    std::mt19937_64 rng(kSeed + 4);
    for (int n : {9, 15}) {
        const Stopwatch sw;
        const CosetSystem cs(make_field(n), 7);
        const auto cpv = coset_psi_vector(cs.field(), 7);
        double max_err = 0.0, bound = 0.0;
        for (int variant = 0; variant < 2; ++variant) {
            const auto g = variant == 0 ? GAssignment::standard(7) : GAssignment::random(7, rng());
            const auto sweep = decomposition_sweep(cs, random_h(cs.subgroup_size(), rng), g, cpv);
            o.expect(sweep.split_identity, "split identity n=" + std::to_string(n));
            o.expect(sweep.f2_zero_at_origin, "f2(0) n=" + std::to_string(n));
            o.expect(sweep.error_bounded, "|E| <= eps v n=" + std::to_string(n));
            max_err = std::max(max_err, sweep.max_error);
            bound = sweep.bound;
        }
        const double t = sw.seconds();
        if (n == 15) o.expect(t < kSweep15Seconds, "n=15 time");
        o.note << "n=" << n << ": max|E| " << max_err << " <= " << bound << " (" << t << " s); ";
    }
}

void check_sign_selection(Outcome& o) {
    for (int n : {9, 15}) {
        const SignProblem p(make_field(n), 7);
        const auto sol = solve_localsearch(p, kMaxRestarts, 500, kSeed);
        o.expect(certify(sol, p), "certify n=" + std::to_string(n));
        o.expect(sol.tracked_matches_recomputed && p.objective(sol.u) == sol.achieved,
                 "tracked objective n=" + std::to_string(n));
        o.note << "n=" << n << ": " << sol.achieved << " <= " << sol.bound << " (seed " << kSeed << ", restart "
               << sol.restart << "); ";
    }
}

// Through the CLI when available, so the shipped command is what gets checked.
void check_balanced_pipeline(Outcome& o, const std::string& cli) {
    for (int n : {9, 15}) {
        int sum_f = 0, sum_h = 0, before = 0;
        std::size_t flips = 0;
        if (!cli.empty()) {
            const std::string prefix = "acceptance_balanced_n" + std::to_string(n);
            const std::string cmd = "\"" + cli + "\" construct --n " + std::to_string(n) +
                                    " --v 7 --balanced --restarts 2 --budget 100 --seed " + std::to_string(kSeed) +
                                    " --out " + prefix + " > " + prefix + ".stdout";
            const int rc = std::system(cmd.c_str());
            o.expect(rc == 0, "construct exit n=" + std::to_string(n));
            if (rc != 0) continue;
            std::ifstream in(prefix + ".json");
            const json rep = json::parse(in);
            sum_h = rep["construction"]["h_sum"];
            before = rep["construction"]["h_sum_before_balance"];
            flips = rep["construction"]["flips"];
            sum_f = static_cast<int>(load_table(prefix + ".tt").sum());
        } else {
            const CosetSystem cs(make_field(n), 7);
            const SignProblem p(cs.field(), 7);
            const auto sol = solve_localsearch(p, 2, 100, kSeed);
            before = std::accumulate(sol.u.begin(), sol.u.end(), 0);
            const auto bal = balance_h(sol.u);
            flips = bal.flips;
            sum_h = std::accumulate(bal.h.begin(), bal.h.end(), 0);
            sum_f = static_cast<int>(assemble(cs, bal.h, GAssignment::standard(7)).sum());
        }
        const std::size_t allowed = static_cast<std::size_t>((std::abs(before + 1) + 1) / 2);
        o.expect(sum_f == 0 && sum_h == -1 && flips <= allowed, "balance n=" + std::to_string(n));
        o.note << "n=" << n << ": sum f " << sum_f << ", sum h " << sum_h << ", " << flips << " flips (<= " << allowed
               << "); ";
    }
    o.note << (cli.empty() ? "in-process" : "via CLI");
}

void check_lift_chain(Outcome& o) {
    auto b = SignFunction(2, {1, 1, 1, -1});
    auto f = SignFunction(1, {1, -1});
    for (int i = 0; i < 3; ++i) {
        b = lift_two(b);
        f = lift_two(f);
        // mu = 1 iff max|coeff|^2 = 2^n; mu = sqrt 2 iff max|coeff|^2 = 2^(n+1).
        const std::int64_t mb = walsh_transform(make_field(b.n()), b).max_abs();
        const std::int64_t mf = walsh_transform(make_field(f.n()), f).max_abs();
        o.expect(mb * mb == (std::int64_t{1} << b.n()), "bent chain n=" + std::to_string(b.n()));
        o.expect(mf * mf == (std::int64_t{1} << (f.n() + 1)), "odd chain n=" + std::to_string(f.n()));
    }
    o.expect(b.n() == 8 && f.n() == 7, "chain length");
    o.note << "n=2 -> " << b.n() << " with mu 1, n=1 -> " << f.n() << " with mu sqrt 2";
}

// Angles of w^(7^(e-d) s), w = (-1 + sqrt(-7))/2^(3/2), by repeated multiplication.
std::uint64_t scan_good_s(unsigned e, double eps, std::uint64_t s_max) {
    const std::complex<double> w(-1.0 / std::sqrt(8.0), std::sqrt(7.0) / std::sqrt(8.0));
    for (std::uint64_t s = 1; s <= s_max; s += 2) {
        double worst = 0.0;
        for (unsigned d = 1; d <= e; ++d) {
            std::complex<double> z = 1.0;
            for (std::uint64_t k = 0; k < ipow(7, e - d) * s; ++k) z *= w;
            worst = std::max(worst, std::abs(std::arg(z)));
        }
        if (worst <= eps) return s;
    }
    return 0;
}

void check_s_search(Outcome& o) {
    const auto r = find_good_s(1, kSearchEps, kSearchSMax);
    const std::uint64_t scanned = scan_good_s(1, kSearchEps, kSearchSMax);
    o.expect(r.found && r.s % 2 == 1 && r.s == scanned, "optimal s");
    std::uint64_t prev = 0;
    std::ostringstream grid;
    for (int i = 0; i < 10; ++i) {
        const double eps = 1.0 * std::pow(0.7, i);
        const auto ri = find_good_s(1, eps, 100001);
        o.expect(ri.found && ri.s >= prev, "monotone at eps=" + std::to_string(eps));
        prev = ri.s;
        grid << (i ? "," : "") << ri.s;
    }
    o.note << "s = " << r.s << " (scan " << scanned << ", angle " << r.worst_angle << "), grid s = " << grid.str();
}

void check_desk_scale_report(Outcome& o, bool stretch) {
    struct Config {
        int n;
        std::uint32_t v;
        std::size_t budget;
    };
    for (const Config c : {Config{9, 7, 500}, Config{15, 7, 200}, Config{21, 7, 10}, Config{21, 49, 10}}) {
        const CosetSystem cs(make_field(c.n), c.v);
        const SignProblem p(cs.field(), c.v);
        const auto sol = solve_localsearch(p, 1, c.budget, kSeed);
        const auto rep = measure_construction(cs, sol.u, GAssignment::standard(c.v));
        o.expect(rep.triangle_ok && std::isfinite(rep.max_f_hat), "report (" + std::to_string(c.n) + "," +
                                                                       std::to_string(c.v) + ")");
        o.note << "(" << c.n << "," << c.v << "): max|f^| " << rep.max_f_hat << ", eps " << rep.epsilon_measured
               << ", target " << rep.proposition_bound << "; ";
    }
    if (!stretch) {
        o.note << "stretch skipped (set BOOLOPT_STRETCH=1)";
        return;
    }
    // Full-spectrum search over the 20 balanced coset sign patterns at n = 15.
    const CosetSystem cs(make_field(15), 7);
    std::int64_t best = -1;
    for (int mask = 0; mask < 64; ++mask) {
        if (std::popcount(static_cast<unsigned>(mask)) != 3) continue;
        std::vector<std::int8_t> gv(7, 0);
        for (int i = 0; i < 6; ++i) gv[i + 1] = (mask >> i) & 1 ? 1 : -1;
        const GAssignment g(gv);
        const auto parts = split(cs, SubgroupSigns(cs.subgroup_size(), 1), g);
        const auto w2 = walsh_transform(cs.field(), parts.f2);
        std::vector<std::int64_t> offset(w2.coeffs.size());
        for (std::size_t a = 0; a < offset.size(); ++a) offset[a] = 1 + w2.coeffs[a];
        const auto p = SignProblem(cs.field(), 7).with_offset(std::move(offset));
        const auto sol = solve_localsearch(p, 2, 400, kSeed + static_cast<std::uint64_t>(mask));
        const auto rep = measure_construction(cs, sol.u, g);
        if (best < 0 || rep.max_f_coeff < best) best = rep.max_f_coeff;
    }
    o.note << "stretch n=15 best max|coeff| " << best << " (known value " << kStretchTarget << ", sqrt 2 level "
           << kSqrtTwoLevel << ")";
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli;
    bool slow = env_flag("BOOLOPT_SLOW");
    bool stretch = env_flag("BOOLOPT_STRETCH");
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--cli" && i + 1 < argc) {
            cli = argv[++i];
        } else if (a == "--slow") {
            slow = true;
        } else if (a == "--stretch") {
            stretch = true;
        } else {
            std::cerr << "usage: acceptance [--cli PATH] [--slow] [--stretch]\n";
            return 2;
        }
    }

    struct Criterion {
        std::string name;
        std::function<void(Outcome&)> run;
    };
    const std::vector<Criterion> criteria{
        {"exact identities", check_exact_identities},
        {"small-n covering radii", [&](Outcome& o) { check_covering_radii(o, slow); }},
        {"Gauss sums", check_gauss_sums},
        {"decomposition sweep", check_decomposition},
        {"sign selection", check_sign_selection},
        {"balanced pipeline", [&](Outcome& o) { check_balanced_pipeline(o, cli); }},
        {"lift chain", check_lift_chain},
        {"s-search", check_s_search},
        {"desk-scale report", [&](Outcome& o) { check_desk_scale_report(o, stretch); }},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        const Stopwatch sw;
        try {
            criteria[i].run(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.note << " [exception: " << e.what() << "]";
        }
        failed += !o.pass;
        std::printf("criterion %zu %-24s %s  %.2f s  %s\n", i + 1, criteria[i].name.c_str(), o.pass ? "PASS" : "FAIL",
                    sw.seconds(), o.note.str().c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
