// Command-line front end: per-prime dossiers, range scans with JSONL/CSV
// output, the dual-route oracle sweep, and the raw Bernoulli inputs.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "wolst/wolst.hpp"

namespace {

using namespace wolst;

constexpr u64 kMaxCheckP = 1ull << 25; // per-prime commands; scan stops at 2^21

int env_default_jobs() {
    if (const char* env = std::getenv("WOLST_JOBS")) {
        int j = std::atoi(env);
        if (j >= 1 && j <= 64) return j;
    }
    return 1;
}

// p must be an odd prime in [7, 2^25) for the per-prime commands.
bool reject_prime_arg(u64 p) {
    if (p >= kMaxCheckP) {
        std::cerr << "error: p = " << p << " is out of range (p < 2^25)\n";
        return true;
    }
    if (!is_prime(p)) {
        std::cerr << "error: " << p << " is not prime\n";
        return true;
    }
    if (p < 7) {
        std::cerr << "error: the congruences under test need p >= 7\n";
        return true;
    }
    return false;
}

void print_level(const char* label, const Valuation& v, int k) {
    std::printf("  %-24s %s %d   (measured mod p^%d)\n", label,
                v.saturated ? "v >=" : "v  =", v.v, k);
}

int cmd_check(u64 p) {
    if (reject_prime_arg(p)) return 2;
    PrimeReport r = build_report(p, true);
    std::printf("p = %llu   (deep report, exponents up to %d)\n",
                (unsigned long long)p, r.ka);
    print_level("C(2p-1,p-1) - 1", r.level_a, r.ka);
    print_level("H_1(p-1)", r.level_b, r.kb);
    print_level("H_2(p-1)", r.level_c, r.kc);
    std::printf("  B_{p-3} mod p            = %llu\n", (unsigned long long)r.bern_p3);
    if (r.bern_p5)
        std::printf("  B_{p-5} mod p            = %llu\n", (unsigned long long)*r.bern_p5);
    else
        std::printf("  B_{p-5} mod p            = unsupported (needs p >= 11)\n");
    if (r.bern_big)
        std::printf("  B_M mod p^2              = %llu   (M = p^3 - p^2 - 2)\n",
                    (unsigned long long)*r.bern_big);
    std::printf("  wolstenholme prime       : %s\n", r.is_wolstenholme ? "yes" : "no");
    std::printf("  theorem 1 flags agree    : %s\n", r.thm1_consistent ? "yes" : "no");
    std::printf("  theorem 2 flags agree    : %s\n",
                r.thm2_consistent ? (*r.thm2_consistent ? "yes" : "no") : "n/a");
    std::printf("  identity checks          : %d run, %zu failed\n", r.checks_run,
                r.check_failures.size());
    for (const auto& name : r.check_failures)
        std::printf("    FAILED %s\n", name.c_str());
    bool consistent = r.thm1_consistent && (!r.thm2_consistent || *r.thm2_consistent);
    return (r.check_failures.empty() && consistent) ? 0 : 1;
}

int cmd_scan(u64 lo, u64 hi, int jobs, bool deep, ScanFormat fmt,
             const std::string& out_path) {
    if (lo < 7 || lo >= hi || hi > (1ull << 21)) {
        std::cerr << "error: scan range must satisfy 7 <= lo < hi <= 2^21\n";
        return 2;
    }
    std::ofstream ofs;
    std::ostream* out = &std::cout;
    if (!out_path.empty()) {
        ofs.open(out_path);
        if (!ofs) {
            std::cerr << "error: cannot open " << out_path << " for writing\n";
            return 2;
        }
        out = &ofs;
    }
    std::fprintf(stderr, "[wolstenholme] scan [%llu, %llu) jobs=%d deep=%s format=%s\n",
                 (unsigned long long)lo, (unsigned long long)hi, jobs,
                 deep ? "on" : "off", fmt == ScanFormat::csv ? "csv" : "jsonl");
    if (fmt == ScanFormat::csv) *out << csv_header() << '\n';
    ScanSummary sum = scan_range({lo, hi, jobs, deep, fmt}, [&](const PrimeReport& r) {
        *out << (fmt == ScanFormat::csv ? to_csv_row(r) : to_jsonl(r)) << '\n';
    });
    for (u64 wp : sum.wolstenholme)
        std::fprintf(stderr, "[wolstenholme] flagged p = %llu\n", (unsigned long long)wp);
    std::fprintf(stderr,
                 "[wolstenholme] %llu primes in %.3fs (%.0f primes/s); "
                 "wolstenholme: %zu; inconsistent: %llu; failed checks: %llu\n",
                 (unsigned long long)sum.primes_scanned, sum.seconds,
                 sum.seconds > 0 ? (double)sum.primes_scanned / sum.seconds : 0.0,
                 sum.wolstenholme.size(), (unsigned long long)sum.inconsistent,
                 (unsigned long long)sum.failed_checks);
    return (sum.inconsistent || sum.failed_checks) ? 1 : 0;
}

int cmd_oracle(u64 max_p, bool inject) {
    auto results = run_oracles({max_p, inject});
    u64 bad = 0;
    for (const auto& f : results) {
        std::printf("%-20s %6llu cases  %4llu mismatches  %s", f.name.c_str(),
                    (unsigned long long)f.cases, (unsigned long long)f.mismatches,
                    f.mismatches ? "FAIL" : "pass");
        if (f.mismatches) std::printf("   (first: %s)", f.first_mismatch.c_str());
        std::printf("\n");
        bad += f.mismatches;
    }
    return bad ? 1 : 0;
}

int cmd_bernoulli(u64 p) {
    if (reject_prime_arg(p)) return 2;
    TheoremInputs t = theorem_inputs(p);
    const u64 m = bern_big_index(p);
    std::printf("p = %llu, M = p^3 - p^2 - 2 = %llu\n", (unsigned long long)p,
                (unsigned long long)m);
    std::printf("  B_%llu mod p   = %llu\n", (unsigned long long)(p - 3),
                (unsigned long long)t.bern_p3);
    if (t.bern_p5)
        std::printf("  B_%llu mod p   = %llu\n", (unsigned long long)(p - 5),
                    (unsigned long long)*t.bern_p5);
    else
        std::printf("  B_%llu mod p   = unsupported (needs p >= 11)\n",
                    (unsigned long long)(p - 5));
    std::printf("  B_M mod p^2 = %llu\n", (unsigned long long)t.bern_big);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wolstenholme congruence toolkit"};
    app.require_subcommand(1);

    u64 check_p = 0;
    bool check_deep = false; // accepted for symmetry; check always runs deep
    auto* c_check = app.add_subcommand("check", "full identity dossier for one prime");
    c_check->add_option("p", check_p, "prime to examine")->required();
    c_check->add_flag("--deep", check_deep, "run the full battery (always on for check)");

    u64 scan_lo = 0, scan_hi = 0;
    int scan_jobs = env_default_jobs();
    bool scan_deep = false;
    ScanFormat scan_fmt = ScanFormat::jsonl;
    std::string scan_out;
    auto* c_scan = app.add_subcommand("scan", "stream reports for every prime in [lo, hi)");
    c_scan->add_option("lo", scan_lo, "range start (>= 7)")->required();
    c_scan->add_option("hi", scan_hi, "range end, exclusive (<= 2^21)")->required();
    c_scan->add_option("--jobs", scan_jobs, "worker threads (default $WOLST_JOBS or 1)")
        ->check(CLI::Range(1, 64));
    c_scan->add_flag("--deep", scan_deep, "run the full battery on every prime");
    c_scan->add_option("--format", scan_fmt, "output format")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, ScanFormat>{{"jsonl", ScanFormat::jsonl},
                                              {"csv", ScanFormat::csv}}));
    c_scan->add_option("--out", scan_out, "write records to a file instead of stdout");

    u64 oracle_max_p = 500;
    bool oracle_fault = false;
    auto* c_oracle = app.add_subcommand("oracle", "dual-route verification sweep");
    c_oracle->add_option("--max-p", oracle_max_p, "prime ceiling for the binomial sweep");
    c_oracle->add_flag("--inject-fault", oracle_fault,
                       "corrupt the inversion kernel to prove the sweep detects it");

    u64 bern_p = 0;
    auto* c_bern = app.add_subcommand("bernoulli", "Bernoulli residues the theorems consume");
    c_bern->add_option("p", bern_p, "prime to examine")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e); // help and friends, not an error
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(c_check)) return cmd_check(check_p);
        if (app.got_subcommand(c_scan))
            return cmd_scan(scan_lo, scan_hi, scan_jobs, scan_deep, scan_fmt, scan_out);
        if (app.got_subcommand(c_oracle)) return cmd_oracle(oracle_max_p, oracle_fault);
        if (app.got_subcommand(c_bern)) return cmd_bernoulli(bern_p);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2; // unreachable: require_subcommand guarantees a branch above
}
