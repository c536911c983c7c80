// Acceptance run: one PASS/FAIL line per criterion, with counts and wall time.
// Usage: acceptance --cli PATH_TO_TRACECOEFF --golden PATH_TO_ORBITS_CSV

#include "../unit/naive_count.hpp"
#include "../unit/oracle_values.hpp"
#include "tracecoeff/coefficients.hpp"
#include "tracecoeff/verification.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace tracecoeff;

namespace {

struct Criterion {
    int id;
    std::string what;
    double limit_seconds;  // 0: no runtime limit
    std::function<SuiteResult()> run;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string run_command(const std::string& cmd, int& status) {
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) throw std::runtime_error("cannot run " + cmd);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    status = pclose(pipe);
    return out;
}

SuiteResult exact_values() {
    SuiteResult r;
    r.suite = "exact GL2/GL3 values over Q";
    const auto s = place_set(rational_field(), std::vector<std::int64_t>{});
    const Real g = oracle::value(oracle::euler_gamma);
    const Real g1 = oracle::value(oracle::stieltjes_gamma1);
    const auto gl2 = coeff_gl2_regular(s);
    r.record(close_to(gl2.value, g, 1e-12), "GL2 regular = gamma");
    const auto reg = coeff_gl3(s, Gl3Class::regular);
    r.record(close_to(reg.value, g * g - g1, 1e-10), "GL3 regular = gamma^2 - gamma_1");
    const auto sub = coeff_gl3(s, Gl3Class::subregular);
    r.record(close_to(sub.value, oracle::value(oracle::zeta2_prime), 1e-8), "GL3 subregular = zeta'(2)");
    return r;
}

SuiteResult lattice_suites(std::uint64_t seed) {
    SuiteResult r;
    r.suite = "lattice";
    const auto mk = verify_minkowski(seed, 25);
    const auto lc = verify_lattice_count(seed, 25);
    r.checked = mk.checked + lc.checked;
    r.failed = mk.failed + lc.failed;
    r.failures = mk.failures;
    r.failures.insert(r.failures.end(), lc.failures.begin(), lc.failures.end());
    // Counts against a plain coefficient-box loop, independent of the enumerator.
    for (const auto& [name, l] : lattice_test_family(seed, 25, 10)) {
        const Real lambda_d = successive_minima(l).values.back();
        for (int k = 1; k <= 2; ++k) {
            if (l.dim() * k > 6) continue;
            for (const char* c : {"0.99", "1.49", "2.47"}) {
                const Real radius = Real(c) / lambda_d;
                const auto count = count_points(l, k, radius);
                r.record(count.count == oracle::naive_count(l, k, radius),
                         name + " K=" + std::to_string(k) + " r=" + c + "/lambda_d naive count");
            }
        }
    }
    return r;
}

SuiteResult orbits_golden(const std::string& cli, const std::string& golden) {
    SuiteResult r;
    r.suite = "orbits golden";
    int status = 0;
    const auto out = run_command(cli + " orbits --n 3 --induction --format csv", status);
    r.record(status == 0, "exit status");
    r.record(out == read_file(golden), "output equals " + golden);
    std::size_t lines = 0;
    for (char ch : out) lines += ch == '\n';
    r.record(lines == 7, "header plus six rows");
    return r;
}

SuiteResult general_reduction() {
    SuiteResult r;
    r.suite = "general GL2";
    const auto s = place_set(rational_field(), std::vector<std::int64_t>{});
    auto m = [](std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
        return IntMatrix2{{{Rational(a), Rational(b)}, {Rational(c), Rational(d)}}};
    };
    const auto ell = coeff_general_gl2(m(0, -1, 1, 0), s);
    r.record(close_to(ell.coefficient.value, pi() / 4, 1e-10), "[[0,-1],[1,0]] gives pi/4");
    r.record(ell.elliptic && ell.elliptic->extension_disc == 4 && ell.elliptic->discr_norm == 4 &&
                 ell.discriminant_check,
             "discriminant check 4 <= 4");
    const auto split = coeff_general_gl2(m(1, 0, 0, 2), s);
    r.record(split.coefficient.value == 0, "diag(1,2) gives exactly 0");
    for (const Rational& alpha : {Rational(2), Rational(-2), Rational(3), Rational(-1), Rational(1, 3)}) {
        for (const auto& g : {m(0, -1, 1, 0), m(1, 0, 0, 2), m(2, 1, 1, 1), m(1, 1, 0, 1)}) {
            IntMatrix2 h = g;
            for (auto& row : h)
                for (auto& x : row) x *= alpha;
            const auto a = coeff_general_gl2(g, s);
            const auto b = coeff_general_gl2(h, s);
            r.record(a.coefficient.value == b.coefficient.value && a.kind == b.kind,
                     "scaling by " + to_string(alpha));
        }
    }
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli;
    std::string golden;
    std::uint64_t seed = 1;
    for (int i = 1; i + 1 < argc; i += 2) {
        const std::string key = argv[i];
        if (key == "--cli") cli = argv[i + 1];
        else if (key == "--golden") golden = argv[i + 1];
        else if (key == "--seed") seed = std::stoull(argv[i + 1]);
    }
    if (cli.empty() || golden.empty()) {
        std::cerr << "usage: acceptance --cli PATH --golden PATH [--seed N]\n";
        return 2;
    }

    const std::vector<Criterion> criteria{
        {1, "partial Laurent identity over Q, Q(i), Q(sqrt -3), Q(sqrt 5), primes <= 30, |S_fin| <= 3, rel 1e-10", 5,
         [] { return verify_gl2_routes(30, 3, 1e-10); }},
        {2, "GL2 regular = gamma (1e-12), GL3 regular = gamma^2 - gamma_1 (1e-10), GL3 subregular = zeta'(2) (1e-8)",
         1, exact_values},
        {3, "ratio lemma with constant 2^(2(m1+m2)+2), prime powers q <= 100, m1 + m2 <= 6", 10,
         [] { return verify_zeta_ratio(100, 6); }},
        {4, "Minkowski II, duality pairing, index bound, point counts on Z^d, 25 random lattices, ideal lattices", 60,
         [seed] { return lattice_suites(seed); }},
        {5, "induce = rank oracle (n <= 6, 50 random inputs) and Richardson round trip (n <= 10)", 120,
         [seed] { return verify_induction_oracle(6, 50, seed, 8, 10); }},
        {6, "orbits --n 3 --induction matches the golden induction table", 0,
         [&] { return orbits_golden(cli, golden); }},
        {7, "Siegel certificates reach c_F for 100 random g over Q and over Q(i)", 30,
         [seed] { return verify_siegel(100, seed); }},
        {8, "class number bound for imaginary quadratic fields with |D| <= 10^4", 60,
         [] { return verify_class_bound(10000); }},
        {9, "zeta factor truncated product = tuple enumeration, |S_fin| <= 4, eta <= 4, q in {2,3,4,5,7}", 5,
         [] { return verify_zeta_factor({2, 3, 4, 5, 7}, 4, 4); }},
        {10, "general GL2: elliptic pi/4 with 4 <= 4, split diag(1,2) = 0, scaling invariance", 0, general_reduction},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        SuiteResult res;
        std::string error;
        try {
            res = c.run();
        } catch (const std::exception& e) {
            error = e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = c.limit_seconds == 0 || secs < c.limit_seconds;
        const bool ok = error.empty() && res.passed() && in_time;
        if (!ok) ++failed;
        std::ostringstream line;
        line << (ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.what << " [" << res.checked
             << " checks, " << res.failed << " failed, " << std::fixed << std::setprecision(2) << secs << " s";
        if (c.limit_seconds > 0) line << " < " << c.limit_seconds << " s";
        line << "]";
        std::cout << line.str() << '\n';
        if (!error.empty()) std::cout << "    error: " << error << '\n';
        if (!in_time) std::cout << "    over the time limit\n";
        for (const auto& f : res.failures) std::cout << "    " << f << '\n';
    }
    std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria fail") << '\n';
    return failed == 0 ? 0 : 1;
}
