// lpf: exact and asymptotic statistics of the largest prime factor, the
// Smarandache function, smooth-number counts, and the Dickman rho function.
//
// Subcommands: exact, psi, asym, compare, moments, rho, selftest.
// Primary output is CSV on stdout (or JSON lines with --json); diagnostics
// go to stderr. Exit codes: 0 ok, 2 usage, 3 numeric contract, 4 budget.

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lpf/asymptotic.hpp"
#include "lpf/dickman.hpp"
#include "lpf/factor_sieve.hpp"
#include "lpf/integral_eval.hpp"
#include "lpf/quadrature.hpp"
#include "lpf/smarandache.hpp"
#include "lpf/smooth_count.hpp"
#include "lpf/zeta.hpp"

namespace {

using lpf::u64;
using json = nlohmann::json;

constexpr int kSchemaVersion = 1;

struct GlobalOpts {
    bool json_out = false;
    std::string cache_dir;
    int threads = 1;
    double tol = 1e-10;
    double u_max = 64.0;
    int degree = 30;
};

double parse_number(const std::string& tok) {
    try {
        size_t pos = 0;
        double v = std::stod(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (...) {
        throw CLI::ValidationError("malformed number '" + tok + "'");
    }
}

// grid syntax: comma-separated numbers (scientific ok) or a:b:logstep
std::vector<double> parse_grid(const std::string& spec) {
    std::vector<double> out;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        auto c1 = tok.find(':');
        if (c1 == std::string::npos) {
            out.push_back(parse_number(tok));
            continue;
        }
        auto c2 = tok.find(':', c1 + 1);
        if (c2 == std::string::npos)
            throw CLI::ValidationError("grid shorthand needs a:b:logstep, got '" + tok + "'");
        double a = parse_number(tok.substr(0, c1));
        double b = parse_number(tok.substr(c1 + 1, c2 - c1 - 1));
        double step = parse_number(tok.substr(c2 + 1));
        if (!(a > 0) || !(b >= a) || !(step > 1.0))
            throw CLI::ValidationError("grid shorthand needs 0 < a <= b and logstep > 1");
        for (double v = a; v <= b * (1.0 + 1e-12); v *= step) out.push_back(v);
    }
    if (out.empty()) throw CLI::ValidationError("empty grid");
    for (size_t i = 1; i < out.size(); ++i)
        if (!(out[i] > out[i - 1])) throw CLI::ValidationError("grid must be increasing");
    return out;
}

u64 to_integer_x(double x) {
    if (x < 2.0) throw CLI::ValidationError("x must be >= 2");
    if (x > 9.2e18) throw CLI::ValidationError("x too large");
    double f = std::floor(x);
    if (f != x) std::cerr << "note: x = " << x << " floored to " << (u64)f << "\n";
    return static_cast<u64>(f);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

// one CSV/JSON record sink with a fixed column list
class Table {
public:
    Table(bool json_out, std::vector<std::string> cols)
        : json_(json_out), cols_(std::move(cols)) {
        if (!json_) {
            for (size_t i = 0; i < cols_.size(); ++i)
                std::cout << (i ? "," : "") << cols_[i];
            std::cout << "\n";
        }
    }

    void row(const std::vector<std::string>& vals) {
        if (json_) {
            json j;
            j["schema_version"] = kSchemaVersion;
            for (size_t i = 0; i < cols_.size(); ++i) j[cols_[i]] = vals[i];
            std::cout << j.dump() << "\n";
        } else {
            for (size_t i = 0; i < vals.size(); ++i) std::cout << (i ? "," : "") << vals[i];
            std::cout << "\n";
        }
    }

private:
    bool json_;
    std::vector<std::string> cols_;
};

lpf::DickmanTable obtain_table(const GlobalOpts& g) {
    if (!g.cache_dir.empty()) {
        std::filesystem::create_directories(g.cache_dir);
        std::ostringstream name;
        name << g.cache_dir << "/rho_u" << g.u_max << "_d" << g.degree << ".tbl";
        std::ifstream in(name.str(), std::ios::binary);
        if (in) {
            try {
                auto t = lpf::DickmanTable::load(in);
                std::cerr << "rho table loaded from cache\n";
                return t;
            } catch (const std::exception& e) {
                std::cerr << "rho cache unusable (" << e.what() << "), rebuilding\n";
            }
        }
        auto t = lpf::DickmanTable::build(g.u_max, g.degree);
        std::ofstream out(name.str(), std::ios::binary | std::ios::trunc);
        if (out) t.save(out);
        std::cerr << "rho table built (residual bound " << fmt(t.residual_bound()) << ")\n";
        return t;
    }
    auto t = lpf::DickmanTable::build(g.u_max, g.degree);
    std::cerr << "rho table built (residual bound " << fmt(t.residual_bound()) << ")\n";
    return t;
}

std::string rname(double r) {
    std::string s = fmt(r);
    for (char& c : s)
        if (c == '.' || c == '-' || c == '+') c = '_';
    return s;
}

int cmd_exact(const GlobalOpts& g, const std::vector<double>& xs, std::vector<double> rs) {
    for (double xd : xs) to_integer_x(xd);  // validate before any output
    std::vector<std::string> cols{"x", "N", "T0"};
    for (double r : rs) {
        std::string t = rname(r);
        for (const char* base : {"T_r", "sum_P_r", "sum_invP_r", "sum_S_r", "sum_invS_r",
                                 "sum_ratio_r"})
            cols.push_back(std::string(base) + t);
    }
    Table table(g.json_out, cols);
    lpf::ScanOptions opt;
    opt.threads = g.threads;
    for (double xd : xs) {
        u64 x = to_integer_x(xd);
        auto t0 = std::chrono::steady_clock::now();
        auto sums = lpf::exact_sums(x, rs, opt);
        if (sums.count_not_divides != sums.count_s_neq_p)
            throw lpf::tolerance_error("N(x) oracles disagree");
        std::vector<std::string> vals{std::to_string(x), std::to_string(sums.count_not_divides),
                                      std::to_string(sums.count_t0)};
        for (size_t j = 0; j < rs.size(); ++j) {
            vals.push_back(fmt(sums.t_r[j]));
            vals.push_back(fmt(sums.sum_p_r[j]));
            vals.push_back(fmt(sums.sum_inv_p_r[j]));
            vals.push_back(fmt(sums.sum_s_r[j]));
            vals.push_back(fmt(sums.sum_inv_s_r[j]));
            vals.push_back(fmt(sums.sum_ratio_r[j]));
        }
        table.row(vals);
        std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
        std::cerr << "exact x=" << x << " took " << dt.count() << " s\n";
    }
    return 0;
}

int cmd_psi(const GlobalOpts& g, u64 x, u64 y, const std::string& method) {
    lpf::PsiMethod m = lpf::PsiMethod::auto_pick;
    if (method == "sieve") m = lpf::PsiMethod::sieve;
    else if (method == "buchstab") m = lpf::PsiMethod::buchstab;
    else if (method != "auto") throw CLI::ValidationError("method must be sieve|buchstab|auto");
    auto table = obtain_table(g);
    Table out(g.json_out, {"x", "y", "exact", "dickman", "bound", "u"});
    u64 exact = lpf::psi_exact({x, y, m});
    double u = std::numeric_limits<double>::quiet_NaN();
    double dickman = u, bound = u;
    if (x >= 2 && y >= 2) {  // the approximations need 2 <= y <= x
        double yc = (double)std::min(y, x);
        u = std::log((double)x) / std::log(yc);
        if (u <= table.u_max())
            dickman = lpf::psi_dickman((double)x, yc, table);
        else
            std::cerr << "note: u = " << u << " beyond rho table, dickman column is nan\n";
        bound = lpf::psi_elementary_bound((double)x, yc);
    }
    out.row({std::to_string(x), std::to_string(y), std::to_string(exact), fmt(dickman),
             fmt(bound), fmt(u)});
    return 0;
}

int cmd_asym(const GlobalOpts& g, const std::vector<double>& xs, std::vector<double> rs) {
    auto table = obtain_table(g);
    std::vector<std::string> cols{"x", "L"};
    for (double r : rs) cols.push_back("g_r" + rname(r));
    for (const char* c : {"u0", "u0_series", "th1_rhs", "ford_corrected", "ford_original",
                          "eq13", "eq14"})
        cols.push_back(c);
    Table out(g.json_out, cols);
    for (double x : xs) {
        std::vector<std::string> vals{fmt(x)};
        vals.push_back(fmt(lpf::L_of(x)));
        bool in_range = lpf::g_r_in_range(x);
        if (!in_range) std::cerr << "note: x = " << x << " out of asymptotic range for g_r\n";
        for (double r : rs)
            vals.push_back(in_range ? fmt(lpf::g_r_of(x, r)) : "nan");
        vals.push_back(fmt(lpf::u0_solve(x)));
        vals.push_back(fmt(lpf::u0_series(x)));
        if (in_range) {
            auto f = lpf::exponent_forms(x);
            vals.push_back(fmt(f.th1_rhs));
            vals.push_back(fmt(lpf::ford_theorem1(x, table, true)));
            vals.push_back(fmt(lpf::ford_theorem1(x, table, false)));
            vals.push_back(fmt(f.corollary_13));
            vals.push_back(fmt(f.dekoninck_14));
        } else {
            for (int i = 0; i < 5; ++i) vals.push_back("nan");
        }
        out.row(vals);
    }
    return 0;
}

int cmd_compare(const GlobalOpts& g, const std::vector<double>& xs) {
    for (double xd : xs) to_integer_x(xd);
    auto table = obtain_table(g);
    Table out(g.json_out,
              {"x", "N_exact", "T0_exact", "sum_invP_exact", "I_T0", "I_recipP", "N_thm2",
               "N_thm1_elementary", "ratio_N_thm2", "ratio_T0_int", "ratio_invP_int",
               "ratio_N_T0"});
    lpf::ScanOptions scan;
    scan.threads = g.threads;
    for (double xd : xs) {
        u64 x = to_integer_x(xd);
        auto t0 = std::chrono::steady_clock::now();
        auto rep = lpf::compare(x, table, g.tol, scan);
        auto tb = lpf::integral_T0((double)x, table, lpf::Param::u_form, g.tol);
        std::cerr << "compare x=" << x << " truncation bound " << fmt(tb.truncation_bound)
                  << ", " << tb.evaluations << " integrand evaluations\n";
        out.row({std::to_string(rep.x), std::to_string(rep.n_exact),
                 std::to_string(rep.t0_exact), fmt(rep.sum_inv_p), fmt(rep.i_t0),
                 fmt(rep.i_recip_p), fmt(rep.n_thm2), fmt(rep.n_thm1_elem),
                 fmt(rep.ratio_n_thm2), fmt(rep.ratio_t0), fmt(rep.ratio_inv_p),
                 fmt(rep.ratio_n_t0)});
        std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
        std::cerr << "compare x=" << x << " took " << dt.count() << " s\n";
    }
    return 0;
}

int cmd_moments(const GlobalOpts& g, const std::vector<double>& xs, std::vector<double> rs,
                int J) {
    for (double xd : xs) to_integer_x(xd);
    std::vector<std::string> cols{"r", "x", "sum_S_r_exact", "moment_rhs", "ratio"};
    for (int j = 1; j <= J; ++j) cols.push_back("a" + std::to_string(j));
    Table out(g.json_out, cols);
    lpf::ScanOptions scan;
    scan.threads = g.threads;
    for (double r : rs) {
        auto mc = lpf::moment_constants(r, J);
        for (double xd : xs) {
            u64 x = to_integer_x(xd);
            auto m = lpf::sum_S_moments(x, r, scan);
            double rhs = lpf::theorem3_moment_rhs((double)x, r, J, mc);
            std::vector<std::string> vals{fmt(r), std::to_string(x), fmt(m.sum_s_r), fmt(rhs),
                                          fmt(m.sum_s_r / rhs)};
            for (int j = 1; j <= J; ++j) vals.push_back(fmt(mc.a[j - 1]));
            out.row(vals);
        }
    }
    return 0;
}

int cmd_rho(const GlobalOpts& g, const std::vector<double>& us) {
    auto table = obtain_table(g);
    Table out(g.json_out, {"u", "rho", "rho_deriv", "xi", "xi_expansion", "rho_asymptotic"});
    for (double u : us) {
        double rho = table.rho(u);
        double rd = (u >= 0 && u <= table.u_max()) ? table.rho_deriv(u)
                                                   : std::numeric_limits<double>::quiet_NaN();
        double xiv = u > 1.0 ? lpf::xi(u) : std::numeric_limits<double>::quiet_NaN();
        double xie = u > M_E ? lpf::xi_expansion(u) : std::numeric_limits<double>::quiet_NaN();
        double ra = u > M_E ? lpf::rho_asymptotic(u) : std::numeric_limits<double>::quiet_NaN();
        out.row({fmt(u), fmt(rho), fmt(rd), fmt(xiv), fmt(xie), fmt(ra)});
    }
    return 0;
}

int cmd_selftest(const GlobalOpts& g) {
    int failures = 0;
    auto check = [&](const char* name, bool ok) {
        std::cout << (ok ? "ok " : "FAIL ") << name << "\n";
        if (!ok) ++failures;
    };

    auto quad = lpf::integrate([](double t) { return 1.0 / (t * t); }, 2.0, 1e6,
                               {1e-12, 0.0, 1000000});
    check("quadrature closed form", std::abs(quad.value - (0.5 - 1e-6)) < 1e-12);

    auto sieve = lpf::build_sieve(2, 100'000);
    bool recon = true;
    for (u64 n = 2; n < 100'000 && recon; ++n) {
        u64 prod = 1;
        for (auto& e : lpf::factorize(sieve, n).factors)
            for (lpf::u32 i = 0; i < e.exp; ++i) prod *= e.prime;
        recon = prod == n;
    }
    check("factorize reconstructs n <= 1e5", recon);
    check("pi(1e6) = 78498", lpf::primes_up_to(1'000'000).size() == 78498);

    check("dual-oracle N(1e4) = 593", lpf::count_N(10'000) == 593);

    lpf::PsiCalculator calc(100'000);
    bool psi_ok = true;
    for (u64 y : {2, 10, 100, 1000})
        psi_ok = psi_ok && lpf::psi_sieve(100'000, y) == calc.exact(100'000, y);
    check("psi sieve = buchstab at 1e5", psi_ok);

    double lhs = lpf::sum_P_r(10'000, 1.0);
    lpf::KahanSum rhs;
    lpf::for_each_prime(2, 10'000, [&](u64 p) {
        rhs.add(static_cast<double>(p) * static_cast<double>(calc.exact(10'000 / p, p)));
    });
    check("psi identity at 1e4", std::abs(lhs / rhs.value() - 1.0) < 1e-12);

    auto table = obtain_table(g);
    check("rho residual certificate", table.residual_bound() <= 1e-10);
    check("rho(2) = 1 - log 2",
          std::abs(table.rho(2.0) - (1.0 - std::log(2.0))) < 1e-12);
    check("rho(3) reference",
          std::abs(table.rho(3.0) / 0.0486083882911315669 - 1.0) < 1e-12);

    check("zeta(2) = pi^2/6", std::abs(lpf::zeta_real(2.0) - M_PI * M_PI / 6.0) < 1e-12);
    check("zeta'(2) reference",
          std::abs(lpf::zeta_deriv(1, 2.0) + 0.93754825431584375) < 1e-10);

    double u0 = lpf::u0_solve(1e8);
    check("u0 residual", std::abs(u0 * std::expm1(std::log(1e8) / (u0 * u0)) - std::log(1e8)) <=
                             1e-10 * std::log(1e8));

    lpf::ScanOptions o1, o2;
    o1.threads = 1;
    o2.threads = 2;
    o1.segment_len = o2.segment_len = 1 << 12;
    auto s1 = lpf::exact_sums(50'000, {1.0}, o1);
    auto s2 = lpf::exact_sums(50'000, {1.0}, o2);
    check("parallel determinism", s1.sum_p_r[0] == s2.sum_p_r[0] &&
                                      s1.sum_s_r[0] == s2.sum_s_r[0] &&
                                      s1.count_not_divides == s2.count_not_divides);

    return failures == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"largest-prime-factor statistics: exact counts, Dickman rho, and "
                 "asymptotic formula checks"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts g;
    if (const char* env = std::getenv("LPF_CACHE_DIR")) g.cache_dir = env;
    app.add_flag("--json", g.json_out, "emit JSON lines instead of CSV");
    app.add_option("--cache-dir", g.cache_dir, "cache directory (env LPF_CACHE_DIR)");
    app.add_option("--threads", g.threads, "worker threads for exact scans")
        ->check(CLI::Range(1, 256));
    app.add_option("--tol", g.tol, "quadrature relative tolerance")
        ->check(CLI::Range(1e-14, 1e-3));
    app.add_option("--u-max", g.u_max, "rho table range")->check(CLI::Range(2.0, 100.0));
    app.add_option("--degree", g.degree, "rho table piece degree")->check(CLI::Range(10, 100));

    std::string x_spec, r_spec = "1", u_spec, method = "auto";
    u64 psi_x = 0, psi_y = 0;
    int J = 2;

    auto* exact = app.add_subcommand(
        "exact",
        "exact counts and moment sums over 2 <= n <= x.\n"
        "Columns: x; N (count of n not dividing P(n)!); T0 (count with P^2 | n);\n"
        "per r: T_r<r> (sum of P^-r over P^2 | n), sum_P_r<r>, sum_invP_r<r>,\n"
        "sum_S_r<r>, sum_invS_r<r>, sum_ratio_r<r> (sum of (S/P)^r).");
    exact->add_option("--x", x_spec, "x grid: comma list and/or a:b:logstep")->required();
    exact->add_option("--r", r_spec, "r list (default 1)");

    auto* psi = app.add_subcommand(
        "psi",
        "smooth-number count Psi(x,y).\n"
        "Columns: x; y; exact (count of n <= x with P(n) <= y, includes n = 1);\n"
        "dickman (x rho(u)); bound (x exp(-log x/(2 log y))); u (log x / log y).");
    psi->add_option("--x", psi_x, "x")->required();
    psi->add_option("--y", psi_y, "y")->required();
    psi->add_option("--method", method, "sieve|buchstab|auto (default auto)");

    auto* asym = app.add_subcommand(
        "asym",
        "elementary asymptotic forms.\n"
        "Columns: x; L (sqrt(log x log log x)); per r: g_r<r>; u0 (implicit-equation\n"
        "root); u0_series (explicit terms); th1_rhs (x exp(-sqrt2 L(1+g_0)));\n"
        "ford_corrected / ford_original (rho(u0) formula, constant 2 vs 1+log 2);\n"
        "eq13 (x exp(-sqrt2 L)); eq14 (x exp(-2L), shown to exhibit its contradiction).");
    asym->add_option("--x", x_spec, "x grid")->required();
    asym->add_option("--r", r_spec, "r list (default 1)");

    auto* compare = app.add_subcommand(
        "compare",
        "exact vs integral-formula vs elementary values.\n"
        "Columns: x; N_exact; T0_exact; sum_invP_exact; I_T0 (integral of\n"
        "rho(log x/log t) log t/t^2); I_recipP (same with 1/t^2); N_thm2 (2x I_T0);\n"
        "N_thm1_elementary; ratio_N_thm2 = N_exact/N_thm2; ratio_T0_int =\n"
        "T0_exact/(x I_T0); ratio_invP_int = sum_invP/(x I_recipP); ratio_N_T0.");
    compare->add_option("--x", x_spec, "x grid")->required();

    auto* moments = app.add_subcommand(
        "moments",
        "Smarandache moment constants and exact-vs-formula ratios.\n"
        "Columns: r; x; sum_S_r_exact; moment_rhs (x^{r+1} sum a_j/log^j x);\n"
        "ratio; a1..aJ (the computed constants, a1 = zeta(r+1)/(r+1)).");
    moments->add_option("--r", r_spec, "r list (default 1)");
    moments->add_option("--J", J, "number of expansion terms")->check(CLI::Range(1, 8));
    moments->add_option("--x", x_spec, "x grid")->required();

    auto* rho = app.add_subcommand(
        "rho",
        "Dickman rho and the saddle function.\n"
        "Columns: u; rho; rho_deriv; xi (root of e^xi - 1 = u xi); xi_expansion\n"
        "(log u + log_2 u + log_2 u/log u); rho_asymptotic (exp(-u(log u + log_2 u - 1))).");
    rho->add_option("--u", u_spec, "u grid")->required();

    app.add_subcommand("selftest", "run the built-in invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (exact->parsed()) return cmd_exact(g, parse_grid(x_spec), parse_grid(r_spec));
        if (psi->parsed()) return cmd_psi(g, psi_x, psi_y, method);
        if (asym->parsed()) return cmd_asym(g, parse_grid(x_spec), parse_grid(r_spec));
        if (compare->parsed()) return cmd_compare(g, parse_grid(x_spec));
        if (moments->parsed()) return cmd_moments(g, parse_grid(x_spec), parse_grid(r_spec), J);
        if (rho->parsed()) return cmd_rho(g, parse_grid(u_spec));
        return cmd_selftest(g);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const lpf::budget_error& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 4;
    } catch (const lpf::tolerance_error& e) {
        std::cerr << "numeric contract failure: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "numeric contract failure: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
