// Command-line driver: exact spectra, Darboux partner construction,
// verification suites, and curve emission for the PT-invariant Scarf II
// potential and its partners.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ptdarboux/darboux.hpp"
#include "ptdarboux/errors.hpp"
#include "ptdarboux/numerix.hpp"
#include "ptdarboux/scarf2.hpp"

using json = nlohmann::ordered_json;
using ptdarboux::cdouble;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_check_failed = 1;
constexpr int exit_usage = 2;

struct Options {
    double v1 = 25.0;
    double v2 = 5.0;
    double v0 = 0.0;
    bool v0_set = false;
    std::string case_tag; // "", "i-a", "i-b", "ii"
    int n = 0;
    double grid_l = 20.0;
    int grid_n = 2001;
    bool numeric = false;
    bool check = false;
    std::string format = "text"; // text | csv | json
    std::string out;
    std::string what; // emit target
    double tol = 5e-2;
    double tol_deep = 2e-2;
    bool inject_bug = false;
    std::string config_path;
};

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt_complex(cdouble z) {
    std::string s = fmt17(z.real());
    s += z.imag() < 0.0 ? " - " : " + ";
    s += fmt17(std::abs(z.imag()));
    s += "i";
    return s;
}

// Exact fraction with denominator dividing 16 ("-81/4" style), when the
// value is one.
std::optional<std::string> rational_sixteenth(double v) {
    const double scaled = v * 16.0;
    if (std::abs(scaled) > 1e15 ||
        std::abs(scaled - std::llround(scaled)) > 1e-9)
        return std::nullopt;
    long long num = std::llround(scaled);
    long long den = 16;
    const long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    if (den == 1)
        return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

bool spectrum_is_rational(const ptdarboux::ScarfParams& params) {
    const double r = 2.0 * (params.s.real() + params.t.real());
    return std::abs(r - std::llround(r)) <= 1e-9;
}

// ---- configuration plumbing ---------------------------------------------

void apply_env_defaults(Options& opt) {
    const char* env = std::getenv("PT_DARBOUX_GRID");
    if (!env)
        return;
    double l = 0.0;
    int n = 0;
    if (std::sscanf(env, "%lf,%d", &l, &n) == 2 && l > 0.0 && n >= 3) {
        opt.grid_l = l;
        opt.grid_n = n;
    } else {
        std::cerr << "warning: ignoring malformed PT_DARBOUX_GRID ('" << env
                  << "'; expected L,N)\n";
    }
}

// Simple key=value file; '#' starts a comment. Applies only to options
// that were not given on the command line.
void apply_config_file(Options& opt, const CLI::App& cmd) {
    if (opt.config_path.empty())
        return;
    std::ifstream in(opt.config_path);
    if (!in)
        throw std::runtime_error("cannot open config file: " +
                                 opt.config_path);
    auto untouched = [&](const std::string& flag) {
        const CLI::Option* option = cmd.get_option_no_throw(flag);
        return option != nullptr && option->count() == 0;
    };
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                throw std::runtime_error(
                    "config line " + std::to_string(lineno) +
                    ": expected key=value");
            continue;
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string()
                                          : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const bool truthy = value == "1" || value == "true";
        const std::string flag = "--" + key;
        if (key == "v1") {
            if (untouched(flag)) opt.v1 = std::stod(value);
        } else if (key == "v2") {
            if (untouched(flag)) opt.v2 = std::stod(value);
        } else if (key == "v0") {
            if (untouched(flag)) {
                opt.v0 = std::stod(value);
                opt.v0_set = true;
            }
        } else if (key == "case") {
            if (untouched(flag)) opt.case_tag = value;
        } else if (key == "n") {
            if (untouched(flag)) opt.n = std::stoi(value);
        } else if (key == "grid-l") {
            if (untouched(flag)) opt.grid_l = std::stod(value);
        } else if (key == "grid-n") {
            if (untouched(flag)) opt.grid_n = std::stoi(value);
        } else if (key == "numeric") {
            if (untouched(flag)) opt.numeric = truthy;
        } else if (key == "check") {
            if (untouched(flag)) opt.check = truthy;
        } else if (key == "format") {
            if (untouched(flag)) opt.format = value;
        } else if (key == "out") {
            if (untouched(flag)) opt.out = value;
        } else if (key == "tol") {
            if (untouched(flag)) opt.tol = std::stod(value);
        } else if (key == "tol-deep") {
            if (untouched(flag)) opt.tol_deep = std::stod(value);
        } else if (key == "what") {
            if (untouched(flag)) opt.what = value;
        } else {
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": unknown key '" + key + "'");
        }
    }
}

struct OutputTarget {
    std::ofstream file;
    std::ostream* stream = nullptr;
};

OutputTarget open_output(const Options& opt) {
    OutputTarget target;
    if (opt.out.empty()) {
        target.stream = &std::cout;
        return target;
    }
    target.file.open(opt.out);
    if (!target.file)
        throw std::runtime_error("cannot open output file: " + opt.out);
    target.stream = &target.file;
    return target;
}

// ---- shared model assembly -----------------------------------------------

ptdarboux::ScarfParams params_from(const Options& opt) {
    if (opt.v0_set)
        return ptdarboux::make_params(opt.v0, opt.v0);
    return ptdarboux::make_params(opt.v1, opt.v2);
}

ptdarboux::SeedSpec seed_from(const Options& opt,
                              const ptdarboux::ScarfParams& params) {
    if (opt.case_tag == "i-a")
        return ptdarboux::make_seed(params, ptdarboux::SeedCase::CaseI,
                                    ptdarboux::QBranch::minus);
    if (opt.case_tag == "i-b") {
        auto spec = ptdarboux::make_seed(params, ptdarboux::SeedCase::CaseI,
                                         ptdarboux::QBranch::plus);
        if (std::abs(spec.epsilon) > 1e-12)
            throw std::domain_error(
                "case i-b needs a vanishing factorization energy; these "
                "couplings give epsilon = " +
                fmt17(spec.epsilon.real()));
        return spec;
    }
    if (opt.case_tag == "ii") {
        if (!opt.v0_set && params.v1 != params.v2)
            throw std::domain_error("case ii requires --v0 (equal couplings)");
        return ptdarboux::make_seed(params, ptdarboux::SeedCase::CaseII,
                                    ptdarboux::QBranch::minus);
    }
    throw std::domain_error("unknown case '" + opt.case_tag +
                            "' (expected i-a, i-b, or ii)");
}

// Complete exact bound set of the original operator: both quasi-parity
// towers E = -(n + 1/2 - (s +- t)/2)^2, each counted by its own
// normalizability condition n < (s +- t - 1)/2. The second tower is
// empty whenever s - t <= 1 (true for the worked rational couplings),
// but for, e.g., equal couplings it holds genuine extra bound states.
std::vector<double> full_exact_levels(const ptdarboux::ScarfParams& params) {
    std::vector<double> levels = ptdarboux::spectrum(params);
    const double s = params.s.real();
    const double t = params.t.real();
    for (int n = 0; n < (s - t - 1.0) / 2.0; ++n) {
        const double d = (n + 0.5) - (s - t) / 2.0;
        levels.push_back(-d * d);
    }
    std::sort(levels.begin(), levels.end());
    return levels;
}

// Exact levels of the partner: CaseI minus deletes the lowest level,
// CaseI plus (degenerate) keeps all, CaseII adds one at the
// factorization energy.
std::vector<double> partner_exact_levels(const ptdarboux::SeedSpec& spec) {
    const std::vector<double> base = full_exact_levels(spec.params);
    std::vector<double> levels;
    if (spec.seed_case == ptdarboux::SeedCase::CaseII) {
        levels = base;
        levels.push_back(spec.epsilon.real());
        std::sort(levels.begin(), levels.end());
        return levels;
    }
    const bool deletes =
        !base.empty() &&
        std::abs(base.front() - spec.epsilon.real()) <= 1e-12;
    levels.assign(base.begin() + (deletes ? 1 : 0), base.end());
    return levels;
}

std::vector<cdouble> numeric_bound_spectrum(
    const std::function<cdouble(double)>& potential,
    const ptdarboux::Grid& grid) {
    const auto op = ptdarboux::discretize(potential, grid);
    return ptdarboux::bound_spectrum(ptdarboux::eigenvalues_all(op), 0.0,
                                     1e-6);
}

json meta_json(const char* command, const Options& opt,
               const ptdarboux::ScarfParams& params) {
    json meta;
    meta["command"] = command;
    meta["params"] = {{"v1", params.v1}, {"v2", params.v2}};
    meta["case"] = opt.case_tag.empty() ? json(nullptr) : json(opt.case_tag);
    const double h = 2.0 * opt.grid_l / (opt.grid_n - 1);
    meta["grid"] = {{"L", opt.grid_l}, {"N", opt.grid_n}, {"h", h}};
    return meta;
}

// ---- curve emission -------------------------------------------------------

struct Curve {
    std::string name;
    std::vector<std::array<double, 3>> rows; // x, re, im
};

void write_curves_csv(std::ostream& os, const std::vector<Curve>& curves) {
    os << "x,re,im\n";
    for (const Curve& curve : curves) {
        os << "# curve: " << curve.name << "\n";
        for (const auto& row : curve.rows)
            os << fmt17(row[0]) << "," << fmt17(row[1]) << ","
               << fmt17(row[2]) << "\n";
    }
}

void write_curves_json(std::ostream& os, json meta,
                       const std::vector<Curve>& curves) {
    json root;
    root["meta"] = std::move(meta);
    json curve_obj;
    for (const Curve& curve : curves) {
        json rows = json::array();
        for (const auto& row : curve.rows)
            rows.push_back({row[0], row[1], row[2]});
        curve_obj[curve.name] = std::move(rows);
    }
    root["curves"] = std::move(curve_obj);
    os << root.dump(2) << "\n";
}

// ---- spectrum command ------------------------------------------------------

int run_spectrum(const Options& opt) {
    const auto params = params_from(opt);
    const bool unbroken =
        ptdarboux::classify(params) == ptdarboux::Regime::UnbrokenPT;
    const bool rational = unbroken && spectrum_is_rational(params);

    std::vector<double> exact;
    std::vector<cdouble> continued;
    if (unbroken)
        exact = ptdarboux::spectrum(params);
    else
        continued = ptdarboux::broken_spectrum(params);

    // optional numeric side
    std::vector<cdouble> bound;
    std::vector<double> gaps;    // per exact level; -1 marks "unmatched"
    std::vector<int> matched_at; // numeric index per exact level, or -1
    bool conjugate_ok = true;
    if (opt.numeric) {
        const auto grid = ptdarboux::make_grid(opt.grid_l, opt.grid_n);
        bound = numeric_bound_spectrum(
            [&](double x) { return ptdarboux::potential(params, x); }, grid);
        std::vector<cdouble> reference;
        if (unbroken)
            reference.assign(exact.begin(), exact.end());
        else
            reference = continued;
        const auto report = ptdarboux::match_spectra(reference, bound, 0.5);
        gaps.assign(reference.size(), -1.0);
        matched_at.assign(reference.size(), -1);
        for (const auto& pair : report.pairs) {
            gaps[pair.ia] = pair.gap;
            matched_at[pair.ia] = pair.ib;
        }
        if (!unbroken)
            conjugate_ok = ptdarboux::conjugate_pair_check(bound, 1e-4, 1e-3);
    }

    bool check_ok = true;
    if (opt.check) {
        if (!opt.numeric)
            throw std::domain_error("--check requires --numeric");
        for (size_t i = 0; i < gaps.size(); ++i) {
            const double allowed = (i < 3) ? opt.tol_deep : opt.tol;
            if (gaps[i] < 0.0 || gaps[i] > allowed)
                check_ok = false;
        }
        if (!conjugate_ok)
            check_ok = false;
    }

    auto target = open_output(opt);
    std::ostream& os = *target.stream;
    if (opt.format == "json") {
        json root;
        root["meta"] = meta_json("spectrum", opt, params);
        root["meta"]["regime"] = unbroken ? "unbroken" : "broken";
        json spectra;
        if (unbroken) {
            spectra["exact"] = exact;
            if (rational) {
                json rats = json::array();
                for (double e : exact)
                    rats.push_back(*rational_sixteenth(e));
                spectra["exact_rational"] = std::move(rats);
            }
        } else {
            json vals = json::array();
            for (const cdouble& e : continued)
                vals.push_back({e.real(), e.imag()});
            spectra["continued"] = std::move(vals);
        }
        if (opt.numeric) {
            json vals = json::array();
            for (const cdouble& e : bound)
                vals.push_back({e.real(), e.imag()});
            spectra["numeric"] = std::move(vals);
            json gap_arr = json::array();
            for (double g : gaps)
                gap_arr.push_back(g < 0.0 ? json(nullptr) : json(g));
            spectra["gaps"] = std::move(gap_arr);
            if (!unbroken)
                spectra["conjugate_pairs"] = conjugate_ok;
        }
        root["spectra"] = std::move(spectra);
        if (opt.check)
            root["check"] = check_ok ? "pass" : "fail";
        os << root.dump(2) << "\n";
    } else if (opt.format == "csv") {
        if (unbroken) {
            os << (opt.numeric
                       ? "n,exact_re,exact_im,numeric_re,numeric_im,gap\n"
                       : "n,exact_re,exact_im\n");
            for (size_t i = 0; i < exact.size(); ++i) {
                os << i << "," << fmt17(exact[i]) << ",0";
                if (opt.numeric) {
                    if (matched_at[i] >= 0) {
                        const cdouble e = bound[matched_at[i]];
                        os << "," << fmt17(e.real()) << ","
                           << fmt17(e.imag()) << "," << fmt17(gaps[i]);
                    } else {
                        os << ",,,";
                    }
                }
                os << "\n";
            }
        } else {
            os << "n,exact_re,exact_im\n";
            for (size_t i = 0; i < continued.size(); ++i)
                os << i << "," << fmt17(continued[i].real()) << ","
                   << fmt17(continued[i].imag()) << "\n";
        }
    } else {
        os << "couplings: v1 = " << fmt17(params.v1)
           << ", v2 = " << fmt17(params.v2) << "\n";
        os << "shape: s = " << fmt_complex(params.s)
           << ", t = " << fmt_complex(params.t) << "\n";
        os << "regime: " << (unbroken ? "unbroken" : "broken") << "\n";
        if (unbroken) {
            os << "levels: " << exact.size() << "\n";
            for (size_t i = 0; i < exact.size(); ++i) {
                os << "  E_" << i << " = " << fmt17(exact[i]);
                if (rational)
                    os << "  (" << *rational_sixteenth(exact[i]) << ")";
                os << "\n";
            }
        } else {
            os << "levels (conjugate pairs): " << continued.size() << "\n";
            for (size_t i = 0; i < continued.size(); ++i)
                os << "  E_" << i << " = " << fmt_complex(continued[i])
                   << "\n";
        }
        if (opt.numeric) {
            os << "numeric bound spectrum (L = " << fmt17(opt.grid_l)
               << ", N = " << opt.grid_n << "):\n";
            for (const cdouble& e : bound)
                os << "  " << fmt_complex(e) << "\n";
            os << "per-level gaps:\n";
            for (size_t i = 0; i < gaps.size(); ++i) {
                os << "  level " << i << ": ";
                if (gaps[i] < 0.0)
                    os << "unmatched";
                else
                    os << fmt17(gaps[i]);
                os << "\n";
            }
            if (!unbroken)
                os << "conjugate pairing: "
                   << (conjugate_ok ? "pass" : "fail") << "\n";
        }
        if (opt.check)
            os << "check: " << (check_ok ? "pass" : "fail") << "\n";
    }
    return opt.check && !check_ok ? exit_check_failed : exit_ok;
}

// ---- partner command -------------------------------------------------------

int run_partner(const Options& opt) {
    const auto params = params_from(opt);
    const auto spec = seed_from(opt, params);
    const auto pair = ptdarboux::make_partner(spec);
    const auto satellite = ptdarboux::satellite_coefficients(spec);
    const std::vector<double> plus_levels = full_exact_levels(params);
    const std::vector<double> minus_levels = partner_exact_levels(spec);

    const std::vector<cdouble> plus_c(plus_levels.begin(), plus_levels.end());
    const std::vector<cdouble> minus_c(minus_levels.begin(),
                                       minus_levels.end());
    const auto exact_pairing = ptdarboux::match_spectra(plus_c, minus_c, 1e-9);

    std::vector<cdouble> bound_plus, bound_minus;
    if (opt.numeric) {
        const auto grid = ptdarboux::make_grid(opt.grid_l, opt.grid_n);
        bound_plus = numeric_bound_spectrum(pair.v_plus, grid);
        bound_minus = numeric_bound_spectrum(pair.v_minus, grid);
    }

    auto gaps_against = [](const std::vector<double>& exact,
                           const std::vector<cdouble>& numeric) {
        std::vector<cdouble> exact_c(exact.begin(), exact.end());
        const auto report = ptdarboux::match_spectra(exact_c, numeric, 0.5);
        std::vector<double> gaps(exact.size(), -1.0);
        for (const auto& p : report.pairs)
            gaps[p.ia] = p.gap;
        return gaps;
    };

    bool check_ok = true;
    std::vector<double> gaps_plus, gaps_minus;
    if (opt.numeric) {
        gaps_plus = gaps_against(plus_levels, bound_plus);
        gaps_minus = gaps_against(minus_levels, bound_minus);
        if (opt.check) {
            for (const auto& gaps : {gaps_plus, gaps_minus})
                for (size_t i = 0; i < gaps.size(); ++i) {
                    const double allowed = (i < 3) ? opt.tol_deep : opt.tol;
                    if (gaps[i] < 0.0 || gaps[i] > allowed)
                        check_ok = false;
                }
        }
    } else if (opt.check) {
        throw std::domain_error("--check requires --numeric");
    }

    auto target = open_output(opt);
    std::ostream& os = *target.stream;
    const auto eps_rational = rational_sixteenth(spec.epsilon.real());
    if (opt.format == "json") {
        json root;
        root["meta"] = meta_json("partner", opt, params);
        json body;
        body["epsilon"] = spec.epsilon.real();
        if (eps_rational)
            body["epsilon_rational"] = *eps_rational;
        body["lambda"] = spec.lambda.real();
        body["f_form"] = spec.seed_case == ptdarboux::SeedCase::CaseI
                             ? "caseI"
                             : "caseII";
        body["degenerate_susy"] = pair.degenerate_susy;
        if (satellite)
            body["satellite"] = {satellite->first, satellite->second};
        else
            body["satellite"] = "NotSatellite";
        body["levels_plus"] = plus_levels;
        body["levels_minus"] = minus_levels;
        json pairing = json::array();
        for (const auto& p : exact_pairing.pairs)
            pairing.push_back({{"plus", p.ia}, {"minus", p.ib},
                               {"gap", p.gap}});
        body["pairing"] = std::move(pairing);
        json deleted = json::array();
        for (int ia : exact_pairing.unmatched_a)
            deleted.push_back(ia);
        body["deleted_plus_levels"] = std::move(deleted);
        json extra = json::array();
        for (int ib : exact_pairing.unmatched_b)
            extra.push_back(ib);
        body["extra_minus_levels"] = std::move(extra);
        if (opt.numeric) {
            auto to_json = [](const std::vector<cdouble>& vals) {
                json arr = json::array();
                for (const cdouble& v : vals)
                    arr.push_back({v.real(), v.imag()});
                return arr;
            };
            auto gaps_json = [](const std::vector<double>& gaps) {
                json arr = json::array();
                for (double g : gaps)
                    arr.push_back(g < 0.0 ? json(nullptr) : json(g));
                return arr;
            };
            body["numeric_plus"] = to_json(bound_plus);
            body["numeric_minus"] = to_json(bound_minus);
            body["gaps_plus"] = gaps_json(gaps_plus);
            body["gaps_minus"] = gaps_json(gaps_minus);
        }
        if (opt.check)
            body["check"] = check_ok ? "pass" : "fail";
        root["partner"] = std::move(body);
        os << root.dump(2) << "\n";
    } else if (opt.format == "csv") {
        os << "side,n,exact_re,exact_im\n";
        for (size_t i = 0; i < plus_levels.size(); ++i)
            os << "plus," << i << "," << fmt17(plus_levels[i]) << ",0\n";
        for (size_t i = 0; i < minus_levels.size(); ++i)
            os << "minus," << i << "," << fmt17(minus_levels[i]) << ",0\n";
    } else {
        os << "case: " << opt.case_tag << "\n";
        os << "epsilon: " << fmt17(spec.epsilon.real());
        if (eps_rational)
            os << "  (" << *eps_rational << ")";
        os << "\n";
        os << "f: "
           << (spec.seed_case == ptdarboux::SeedCase::CaseI
                   ? "caseI closed form"
                   : "caseII closed form")
           << "\n";
        os << "degenerate_susy: " << (pair.degenerate_susy ? "yes" : "no")
           << "\n";
        if (satellite)
            os << "satellite couplings: (" << fmt17(satellite->first) << ", "
               << fmt17(satellite->second) << ")\n";
        else
            os << "satellite couplings: NotSatellite\n";
        os << "original levels:\n";
        for (size_t i = 0; i < plus_levels.size(); ++i) {
            os << "  E_" << i << " = " << fmt17(plus_levels[i]);
            const bool deleted =
                std::find(exact_pairing.unmatched_a.begin(),
                          exact_pairing.unmatched_a.end(),
                          static_cast<int>(i)) !=
                exact_pairing.unmatched_a.end();
            if (deleted)
                os << "  [deleted in partner]";
            os << "\n";
        }
        os << "partner levels:\n";
        for (size_t i = 0; i < minus_levels.size(); ++i) {
            os << "  E_" << i << " = " << fmt17(minus_levels[i]);
            const bool extra =
                std::find(exact_pairing.unmatched_b.begin(),
                          exact_pairing.unmatched_b.end(),
                          static_cast<int>(i)) !=
                exact_pairing.unmatched_b.end();
            if (extra)
                os << "  [no counterpart above]";
            os << "\n";
        }
        if (opt.numeric) {
            os << "numeric bound spectra (L = " << fmt17(opt.grid_l)
               << ", N = " << opt.grid_n << "):\n";
            os << "  original:";
            for (const cdouble& e : bound_plus)
                os << " " << fmt17(e.real());
            os << "\n  partner: ";
            for (const cdouble& e : bound_minus)
                os << " " << fmt17(e.real());
            os << "\n";
        }
        if (opt.check)
            os << "check: " << (check_ok ? "pass" : "fail") << "\n";
    }
    return opt.check && !check_ok ? exit_check_failed : exit_ok;
}

// ---- verify command --------------------------------------------------------

struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double threshold = 0.0;
    bool informational = false;
};

int run_verify(const Options& opt) {
    const auto params = params_from(opt);
    const auto spec = seed_from(opt, params);
    const auto grid = ptdarboux::make_grid(opt.grid_l, opt.grid_n);
    const double h = grid.h;

    // the negative-control hook perturbs the superpotential pair
    // consistently (same function and its true derivative), which still
    // violates every nonlinear identity below
    auto f_eval = [&](double x) {
        cdouble v = ptdarboux::f_closed(spec, x);
        if (opt.inject_bug)
            v += 0.01 / std::cosh(x);
        return v;
    };
    auto fp_eval = [&](double x) {
        cdouble v = ptdarboux::f_prime_closed(spec, x);
        if (opt.inject_bug)
            v += -0.01 * std::tanh(x) / std::cosh(x);
        return v;
    };

    std::vector<CheckResult> checks;
    auto add = [&](const std::string& name, double measured, double threshold,
                   bool informational = false) {
        checks.push_back({name, measured <= threshold, measured, threshold,
                          informational});
    };

    // pointwise identity sweeps over |x| <= 10
    {
        double riccati = 0.0, paths = 0.0, closed = 0.0, factor = 0.0;
        for (int i = 0; i <= 2000; ++i) {
            const double x = -10.0 + 0.01 * i;
            const cdouble f = f_eval(x);
            const cdouble fp = fp_eval(x);
            const cdouble v_plus = ptdarboux::potential(params, x);
            const cdouble eps = spec.epsilon;
            riccati = std::max(riccati,
                               std::abs(f * f + fp - v_plus + eps));
            const cdouble via_derivative = v_plus - 2.0 * fp;
            const cdouble via_square = 2.0 * f * f - v_plus + 2.0 * eps;
            paths = std::max(paths, std::abs(via_derivative - via_square));
            factor = std::max(
                factor, std::abs(v_plus - (f * f + fp + eps)));
            factor = std::max(
                factor, std::abs(via_derivative - (f * f - fp + eps)));
            if (spec.seed_case == ptdarboux::SeedCase::CaseI) {
                const auto sat = *ptdarboux::satellite_coefficients(spec);
                const double sech = 1.0 / std::cosh(x);
                const double th = std::tanh(x);
                const cdouble satellite(-sat.first * sech * sech,
                                        -sat.second * sech * th);
                closed = std::max(closed,
                                  std::abs(via_derivative - satellite));
            } else {
                closed = std::max(
                    closed, std::abs(via_derivative -
                                     ptdarboux::case2_partner_closed(spec, x)));
            }
        }
        add("riccati_max_abs", riccati, 1e-10);
        add("partner_path_agreement", paths, 1e-10);
        add("partner_closed_form",
            closed, spec.seed_case == ptdarboux::SeedCase::CaseI ? 1e-10
                                                                 : 1e-9);
        add("factorized_forms", factor, 1e-10);
    }

    // the seed's numeric log-derivative against the closed form
    {
        const double fd_h = 1e-4;
        double worst = 0.0;
        for (int i = 0; i <= 500; ++i) {
            const double x = -5.0 + 0.02 * i;
            const cdouble du = (ptdarboux::seed_u(spec, x + fd_h) -
                                ptdarboux::seed_u(spec, x - fd_h)) /
                               (2.0 * fd_h);
            const cdouble ratio = du / ptdarboux::seed_u(spec, x);
            const cdouble f = f_eval(x);
            worst = std::max(worst,
                             std::abs(f - ratio) / std::max(1.0, std::abs(f)));
        }
        add("seed_log_derivative", worst, 1e-6);
    }

    // eigenfunction residuals on the configured grid; the 3-point
    // stencil carries an O(h^2) floor with constant ~23 on the deepest
    // worked couplings, so the bound is 30 h^2
    {
        const auto h_plus = ptdarboux::discretize(
            [&](double x) { return ptdarboux::potential(params, x); }, grid);
        const auto h_minus = ptdarboux::discretize(
            [&](double x) { return ptdarboux::partner_potential(spec, x); },
            grid);
        const auto energies = ptdarboux::spectrum(params);
        double worst = 0.0;
        for (int n = 0; n < static_cast<int>(energies.size()); ++n) {
            std::vector<cdouble> phi(grid.N), psi(grid.N);
            for (int i = 0; i < grid.N; ++i) {
                phi[i] = ptdarboux::eigenfunction(
                    params, ptdarboux::QBranch::plus, n, grid.nodes[i]);
                psi[i] =
                    ptdarboux::partner_eigenfunction(spec, n, grid.nodes[i]);
            }
            worst = std::max(
                worst, ptdarboux::residual(h_plus, phi, energies[n]));
            const bool deleted =
                std::abs(energies[n] - spec.epsilon.real()) <= 1e-12;
            if (!deleted)
                worst = std::max(
                    worst, ptdarboux::residual(h_minus, psi, energies[n]));
        }
        add("eigenfunction_residuals", worst, 30.0 * h * h);
    }

    // intertwining mismatch on a fixed fine grid
    {
        const auto fine = ptdarboux::make_grid(10.0, 2001);
        std::vector<cdouble> gaussian(fine.N);
        for (int i = 0; i < fine.N; ++i)
            gaussian[i] = std::exp(-fine.nodes[i] * fine.nodes[i]);
        add("intertwining_gaussian",
            ptdarboux::intertwining_residual(spec, gaussian, fine), 1e-3);
    }

    // numeric spectra against the exact lists
    {
        const double scale =
            std::max(1.0, (h / 0.02) * (h / 0.02));
        const double tol_all = opt.tol * scale;
        const double tol_deep = opt.tol_deep * scale;
        auto spectrum_check = [&](const char* name,
                                  const std::function<cdouble(double)>& V,
                                  const std::vector<double>& exact) {
            const auto bound = numeric_bound_spectrum(V, grid);
            std::vector<cdouble> exact_c(exact.begin(), exact.end());
            const auto report =
                ptdarboux::match_spectra(exact_c, bound, 0.5);
            double worst = 0.0;
            std::vector<double> gaps(exact.size(), -1.0);
            for (const auto& p : report.pairs)
                gaps[p.ia] = p.gap;
            bool ok = bound.size() == exact.size();
            for (size_t i = 0; i < gaps.size(); ++i) {
                if (gaps[i] < 0.0) {
                    ok = false;
                    continue;
                }
                worst = std::max(worst, gaps[i]);
                if (gaps[i] > ((i < 3) ? tol_deep : tol_all))
                    ok = false;
            }
            checks.push_back({name, ok, worst, tol_all, false});
        };
        spectrum_check("spectrum_match_plus",
                       [&](double x) { return ptdarboux::potential(params, x); },
                       full_exact_levels(params));
        spectrum_check(
            "spectrum_match_minus",
            [&](double x) { return ptdarboux::partner_potential(spec, x); },
            partner_exact_levels(spec));
    }

    // reflection symmetry: asserted for the original, reported for the
    // partner (its status is a finding, not a premise)
    {
        std::vector<cdouble> v_plus(grid.N), v_minus(grid.N);
        for (int i = 0; i < grid.N; ++i) {
            v_plus[i] = ptdarboux::potential(params, grid.nodes[i]);
            v_minus[i] = ptdarboux::partner_potential(spec, grid.nodes[i]);
        }
        add("pt_symmetry_original",
            ptdarboux::is_pt_symmetric(grid, v_plus, 1e-10) ? 0.0 : 1.0, 0.5);
        add("pt_symmetry_partner",
            ptdarboux::is_pt_symmetric(grid, v_minus, 1e-10) ? 0.0 : 1.0, 0.5,
            true);
    }

    bool all_pass = true;
    json failed = json::array();
    for (const CheckResult& c : checks)
        if (!c.pass && !c.informational) {
            all_pass = false;
            failed.push_back(c.name);
        }

    auto target = open_output(opt);
    std::ostream& os = *target.stream;
    json root;
    root["meta"] = meta_json("verify", opt, params);
    root["meta"]["inject_bug"] = opt.inject_bug;
    json arr = json::array();
    for (const CheckResult& c : checks) {
        json entry;
        entry["name"] = c.name;
        entry["pass"] = c.pass;
        entry["measured"] = c.measured;
        entry["threshold"] = c.threshold;
        if (c.informational)
            entry["informational"] = true;
        arr.push_back(std::move(entry));
    }
    root["checks"] = std::move(arr);
    root["failed_checks"] = std::move(failed);
    root["passed"] = all_pass;
    os << root.dump(2) << "\n";
    return all_pass ? exit_ok : exit_check_failed;
}

// ---- emit command ----------------------------------------------------------

int run_emit(const Options& opt) {
    const auto params = params_from(opt);
    const auto grid = ptdarboux::make_grid(opt.grid_l, opt.grid_n);

    auto sample = [&](const std::string& name,
                      const std::function<cdouble(double)>& fn) {
        Curve curve;
        curve.name = name;
        curve.rows.reserve(grid.N);
        for (double x : grid.nodes) {
            const cdouble v = fn(x);
            curve.rows.push_back({x, v.real(), v.imag()});
        }
        return curve;
    };

    std::vector<Curve> curves;
    if (opt.what == "potential") {
        curves.push_back(sample("v_plus", [&](double x) {
            return ptdarboux::potential(params, x);
        }));
    } else if (opt.what == "partner") {
        const auto spec = seed_from(opt, params);
        curves.push_back(sample("v_minus", [&](double x) {
            return ptdarboux::partner_potential(spec, x);
        }));
    } else if (opt.what == "wavefunction") {
        if (opt.case_tag.empty()) {
            curves.push_back(sample("phi_" + std::to_string(opt.n),
                                    [&](double x) {
                                        return ptdarboux::eigenfunction(
                                            params, ptdarboux::QBranch::plus,
                                            opt.n, x);
                                    }));
        } else {
            const auto spec = seed_from(opt, params);
            curves.push_back(sample("psi_" + std::to_string(opt.n),
                                    [&](double x) {
                                        return ptdarboux::partner_eigenfunction(
                                            spec, opt.n, x);
                                    }));
        }
    } else if (opt.what == "figure1" || opt.what == "figure2") {
        if (!opt.v0_set)
            throw std::domain_error(opt.what +
                                    " requires --v0 (equal couplings)");
        Options ii_opt = opt;
        ii_opt.case_tag = "ii";
        const auto spec = seed_from(ii_opt, params);
        const bool imag_part = opt.what == "figure1";
        // ordinate goes in the re column; im is zero for these
        // real-valued curves
        auto part = [imag_part](cdouble v) {
            return cdouble(imag_part ? v.imag() : v.real(), 0.0);
        };
        curves.push_back(
            sample(imag_part ? "v_plus_im" : "v_plus_re", [&](double x) {
                return part(ptdarboux::potential(params, x));
            }));
        curves.push_back(
            sample(imag_part ? "v_minus_im" : "v_minus_re", [&](double x) {
                return part(ptdarboux::partner_potential(spec, x));
            }));
    } else {
        throw std::domain_error(
            "unknown --what '" + opt.what +
            "' (expected potential, partner, wavefunction, figure1, "
            "figure2)");
    }

    auto target = open_output(opt);
    std::ostream& os = *target.stream;
    if (opt.format == "json")
        write_curves_json(os, meta_json("emit", opt, params), curves);
    else
        write_curves_csv(os, curves);
    return exit_ok;
}

// ---- wiring ----------------------------------------------------------------

void add_common_options(CLI::App* cmd, Options& opt) {
    cmd->add_option("--v1", opt.v1, "real-part coupling (default 25)");
    cmd->add_option("--v2", opt.v2, "imaginary-part coupling (default 5)");
    cmd->add_option("--v0", opt.v0,
                    "equal-coupling shorthand: sets v1 = v2 = V0")
        ->each([&opt](const std::string&) { opt.v0_set = true; });
    cmd->add_option("--case", opt.case_tag,
                    "partner construction: i-a (ground-state deletion), "
                    "i-b (degenerate pair), ii (equal couplings)");
    cmd->add_option("--n", opt.n, "level index for wavefunction emission");
    cmd->add_option("--grid-l", opt.grid_l, "grid half-width (default 20)");
    cmd->add_option("--grid-n", opt.grid_n,
                    "grid node count (default 2001)");
    cmd->add_flag("--numeric", opt.numeric,
                  "also compute the finite-difference bound spectrum");
    cmd->add_flag("--check", opt.check,
                  "exit 1 when a numeric gap exceeds tolerance");
    cmd->add_option("--format", opt.format, "text, csv, or json")
        ->check(CLI::IsMember({"text", "csv", "json"}));
    cmd->add_option("--out", opt.out, "write output to this path");
    cmd->add_option("--tol", opt.tol,
                    "gap tolerance for --check (default 5e-2)");
    cmd->add_option("--tol-deep", opt.tol_deep,
                    "gap tolerance for the three deepest levels "
                    "(default 2e-2)");
    cmd->add_flag("--inject-bug", opt.inject_bug,
                  "test hook: corrupt the superpotential before verifying");
    cmd->add_option("--config", opt.config_path,
                    "key=value file; flags take precedence");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Darboux partners of the PT-invariant Scarf II potential"};
    app.require_subcommand(1);

    Options opt;
    apply_env_defaults(opt);

    CLI::App* spectrum_cmd = app.add_subcommand(
        "spectrum", "exact (and optionally numeric) bound spectrum");
    CLI::App* partner_cmd = app.add_subcommand(
        "partner", "construct the Darboux partner and its level pairing");
    CLI::App* verify_cmd = app.add_subcommand(
        "verify", "run the identity/spectrum suite; JSON report");
    CLI::App* emit_cmd = app.add_subcommand(
        "emit", "sample curves as CSV/JSON (x,re,im)");
    emit_cmd
        ->add_option("--what", opt.what,
                     "potential, partner, wavefunction, figure1, figure2")
        ->required();
    for (CLI::App* cmd : {spectrum_cmd, partner_cmd, verify_cmd, emit_cmd})
        add_common_options(cmd, opt);

    try {
        app.parse(argc, argv);
        CLI::App* active = app.get_subcommands().front();
        apply_config_file(opt, *active);
        if (spectrum_cmd->parsed())
            return run_spectrum(opt);
        if (partner_cmd->parsed())
            return run_partner(opt);
        if (verify_cmd->parsed())
            return run_verify(opt);
        return run_emit(opt);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
}
