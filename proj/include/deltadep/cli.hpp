#ifndef DELTADEP_CLI_HPP
#define DELTADEP_CLI_HPP

// Command-line front end. Needs the vendored CLI11.hpp and json.hpp on the include path.

#include <deltadep/deltadep.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace deltadep::cli {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Single-line JSON with `", "` and `": "` separators; keys keep insertion order.
inline std::string format_json(const Json& j) {
    if (j.is_object()) {
        std::string out = "{";
        bool first = true;
        for (const auto& [k, v] : j.items()) {
            if (!first) out += ", ";
            first = false;
            out += Json(k).dump() + ": " + format_json(v);
        }
        return out + "}";
    }
    if (j.is_array()) {
        std::string out = "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) out += ", ";
            out += format_json(j[i]);
        }
        return out + "]";
    }
    return j.dump();
}

inline void format_plain(const Json& j, std::ostream& out) {
    if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) out << "--\n";
            format_plain(j[i], out);
        }
        return;
    }
    if (!j.is_object()) {
        out << (j.is_string() ? j.get<std::string>() : format_json(j)) << "\n";
        return;
    }
    for (const auto& [k, v] : j.items()) out << k << ": " << (v.is_string() ? v.get<std::string>() : format_json(v)) << "\n";
}

inline std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(trim(cur));
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

/// Non-blank lines of a file with `#` comments stripped.
inline std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (!line.empty()) out.push_back(line);
    }
    return out;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::vector<std::string> parse_var_list(const std::string& text) {
    auto vars = split(text, ',');
    for (const auto& v : vars)
        if (v.empty()) throw UsageError("empty name in --vars '" + text + "'");
    return vars;
}

inline std::vector<Poly> parse_tuple(const std::string& text, std::size_t m) {
    std::vector<Poly> f;
    for (const auto& piece : split(text, ';')) {
        if (piece.empty()) throw std::invalid_argument("empty function in tuple '" + text + "'");
        f.push_back(parse_poly(piece, m));
    }
    if (f.empty()) throw std::invalid_argument("empty function tuple");
    return f;
}

/// `1:-1; 0:1:2/3`, optionally bracketed as `[1:-1]`.
inline std::vector<std::vector<Rational>> parse_points(const std::string& text) {
    std::vector<std::vector<Rational>> points;
    for (auto piece : split(text, ';')) {
        if (!piece.empty() && piece.front() == '[' && piece.back() == ']') piece = trim(piece.substr(1, piece.size() - 2));
        if (piece.empty()) throw std::invalid_argument("empty projective point in '" + text + "'");
        std::vector<Rational> v;
        for (const auto& c : split(piece, ':')) v.push_back(parse_rational(c));
        points.push_back(std::move(v));
    }
    return points;
}

inline std::string point_to_string(const std::vector<Rational>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ":";
        out += to_string(v[i]);
    }
    return out + "]";
}

inline Json numerical_json(const NumericalPolynomial& p) {
    Json j;
    j["coeffs"] = p.coeffs();
    j["text"] = to_string(p);
    j["delta_type"] = p.is_zero() ? Json(nullptr) : Json(delta_type(p));
    j["delta_dim"] = p.is_zero() ? Json(nullptr) : Json(delta_dim(p));
    return j;
}

inline Json system_json(const MonomialLinearSystem& sys) {
    Json j;
    j["m"] = sys.derivations();
    j["vars"] = sys.num_vars();
    Json leaders = Json::array();
    Json zeroed = Json::array();
    for (std::size_t v = 0; v < sys.num_vars(); ++v) {
        Json ls = Json::array();
        for (const auto& a : sys.leaders(v)) ls.push_back(to_string(a));
        leaders.push_back(ls);
        if (sys.zeroed(v)) zeroed.push_back(v);
    }
    j["leaders"] = leaders;
    j["zeroed"] = zeroed;
    return j;
}

/// Inverse of system_json; leaders may be given as "(1,0)" strings or integer arrays.
inline MonomialLinearSystem system_from_json(const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("system must be a JSON object");
    const auto m = j.at("m").get<std::int64_t>();
    const auto vars = j.at("vars").get<std::int64_t>();
    if (m < 1 || vars < 0) throw std::invalid_argument("system needs m ≥ 1 and vars ≥ 0");
    MonomialLinearSystem sys(static_cast<std::size_t>(m), static_cast<std::size_t>(vars));
    if (j.contains("leaders")) {
        const auto& ls = j.at("leaders");
        if (!ls.is_array() || ls.size() != static_cast<std::size_t>(vars))
            throw std::invalid_argument("leaders must list one array per variable");
        for (std::size_t v = 0; v < ls.size(); ++v) {
            std::vector<MultiIndex> leaders;
            for (const auto& a : ls[v]) {
                if (a.is_string()) {
                    leaders.push_back(parse_multiindex(a.get<std::string>()));
                } else {
                    std::vector<MultiIndex::value_type> e;
                    for (const auto& x : a) {
                        if (!x.is_number_unsigned()) throw std::invalid_argument("leader entries must be non-negative integers");
                        e.push_back(x.get<MultiIndex::value_type>());
                    }
                    leaders.emplace_back(std::move(e));
                }
            }
            sys.set_leaders(v, std::move(leaders));
        }
    }
    if (j.contains("zeroed")) {
        for (const auto& v : j.at("zeroed")) {
            auto idx = v.get<std::int64_t>();
            if (idx < 0 || idx >= vars) throw std::invalid_argument("zeroed variable out of range");
            sys.set_zeroed(static_cast<std::size_t>(idx));
        }
    }
    return sys;
}

inline GrIndex parse_gr_index(const std::string& text, std::size_t n, std::size_t m) {
    std::vector<std::uint32_t> parts;
    for (const auto& piece : split(text, ',')) {
        if (piece.empty() || piece.find_first_not_of("0123456789") != std::string::npos || piece.size() > 9)
            throw UsageError("malformed --index '" + text + "': expected i,r1,...,rm");
        parts.push_back(static_cast<std::uint32_t>(std::stoul(piece)));
    }
    if (parts.size() != m + 1)
        throw UsageError("--index needs " + std::to_string(m + 1) + " entries i,r1,...,rm");
    return GrIndex(n, m, parts[0], std::vector<std::uint32_t>(parts.begin() + 1, parts.end()));
}

inline unsigned thread_count() {
    const char* env = std::getenv("DELTA_DEP_THREADS");
    if (!env || !*env) return 1;
    std::string s(env);
    if (s.find_first_not_of("0123456789") != std::string::npos || s.size() > 4 || std::stoul(s) == 0)
        throw UsageError("DELTA_DEP_THREADS must be a positive integer");
    return static_cast<unsigned>(std::stoul(s));
}

/*
 * Runs one command. Exit codes: 0 success, 1 domain error (bad polynomial,
 * failed precondition), 2 usage error. Output is deterministic for fixed
 * arguments and input files.
 */
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact differential-algebra toolkit: Δ-homogeneity, generalized Wronskians, Kolchin polynomials.",
                 "deltadep"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    std::size_t m = 1;
    bool plain = false;
    bool json_flag = false;
    std::string vars_text;
    std::string file;
    std::string expr;

    std::function<Json()> action;
    std::function<Json(const std::string&)> per_line;

    auto add_format = [&](CLI::App* sub) {
        auto* p = sub->add_flag("--plain", plain, "Human-readable output");
        auto* j = sub->add_flag("--json", json_flag, "JSON output (default)");
        p->excludes(j);
    };
    auto add_m = [&](CLI::App* sub) {
        sub->add_option("--m", m, "Number of commuting derivations")->check(CLI::PositiveNumber)->capture_default_str();
    };
    auto add_poly_input = [&](CLI::App* sub) {
        sub->add_option("expr", expr, "Differential polynomial, e.g. \"y1 * d1 y0 - y0 * d1 y1\"");
        sub->add_option("--file", file, "Read one polynomial per line ('#' starts a comment)")->check(CLI::ExistingFile);
        sub->add_option("--vars", vars_text, "Comma-separated differential indeterminates, e.g. y0,y1")->required();
        add_m(sub);
        add_format(sub);
    };

    // parse
    auto* parse_cmd = app.add_subcommand("parse", "Parse a polynomial and print its canonical form");
    add_poly_input(parse_cmd);

    // check-hom
    auto* hom_cmd = app.add_subcommand("check-hom", "Decide Δ-homogeneity and report the degree");
    add_poly_input(hom_cmd);

    // homogenize
    std::string hvar = "y0";
    auto* homog_cmd = app.add_subcommand("homogenize", "Δ-homogenize with respect to a fresh variable");
    add_poly_input(homog_cmd);
    homog_cmd->add_option("--hvar", hvar, "Name of the homogenizing variable")->capture_default_str();

    // wronskian
    std::string index_text;
    std::string funcs;
    auto* wr_cmd = app.add_subcommand("wronskian", "Symbolic generalized Wronskian, or its value on a function tuple");
    wr_cmd->add_option("--index", index_text, "Rows of the Wronskian, e.g. \"(0),(1),(2)\"")->required();
    wr_cmd->add_option("funcs", funcs, "Optional tuple of polynomials in x (m = 1) or x1..xm, separated by ';'");
    add_m(wr_cmd);
    add_format(wr_cmd);

    // younglike
    std::size_t size = 1;
    auto* yl_cmd = app.add_subcommand("younglike", "Enumerate Young-like (downward-closed) sets");
    yl_cmd->add_option("--size", size, "Number of elements")->required()->check(CLI::PositiveNumber);
    add_m(yl_cmd);
    add_format(yl_cmd);

    // lindep
    std::string strategy_text = "young-like";
    std::string points_text;
    auto* ld_cmd = app.add_subcommand("lindep", "Test linear dependence over the constants via generalized Wronskians");
    ld_cmd->add_option("funcs", funcs, "Tuple of polynomials separated by ';'");
    ld_cmd->add_option("--file", file, "Read one tuple per line ('#' starts a comment)")->check(CLI::ExistingFile);
    ld_cmd->add_option("--strategy", strategy_text, "Wronskian family to examine")
        ->check(CLI::IsMember({"all", "young-like"}))
        ->capture_default_str();
    ld_cmd->add_option("--points", points_text,
                       "Instead test dependence over these projective points, e.g. \"1:-1; 0:1\"");
    add_m(ld_cmd);
    add_format(ld_cmd);

    // kolchin
    std::int64_t arity = 1;
    std::int64_t d_const = 0;
    auto* ko_cmd = app.add_subcommand("kolchin", "Kolchin polynomial of the linear-dependence locus and its affine cone");
    ko_cmd->add_option("--n", arity, "Projective dimension n")->required()->check(CLI::PositiveNumber);
    ko_cmd->add_option("--d", d_const, "Kolchin polynomial (a constant) of the base variety")
        ->required()
        ->check(CLI::NonNegativeNumber);
    add_m(ko_cmd);
    add_format(ko_cmd);

    // staircase
    std::string system_text;
    auto* st_cmd = app.add_subcommand("staircase", "Kolchin polynomial of a monomial linear system");
    st_cmd->add_option("system", system_text, "System as JSON {m, vars, leaders, zeroed}");
    st_cmd->add_option("--file", file, "Read the system JSON from a file")->check(CLI::ExistingFile);
    add_format(st_cmd);

    // grfamily
    std::size_t gr_n = 1;
    std::size_t gr_m = 1;
    auto* gf_cmd = app.add_subcommand("grfamily", "Defining system, Kolchin polynomial and rank bounds of G_r");
    gf_cmd->add_option("--n", gr_n, "Number of indeterminates x_0..x_{n-1}")->required()->check(CLI::PositiveNumber);
    gf_cmd->add_option("--m", gr_m, "Number of derivations")->required()->check(CLI::PositiveNumber);
    gf_cmd->add_option("--index", index_text, "r = i,r1,...,rm")->required();
    add_format(gf_cmd);

    // grchain
    std::uint32_t max_order = 2;
    auto* gc_cmd = app.add_subcommand("grchain", "Lexicographic chain of G_r over a coefficient grid");
    gc_cmd->add_option("--n", gr_n, "Number of indeterminates")->required()->check(CLI::PositiveNumber);
    gc_cmd->add_option("--m", gr_m, "Number of derivations")->required()->check(CLI::PositiveNumber);
    gc_cmd->add_option("--max", max_order, "Largest r_j in the grid")->capture_default_str()->check(CLI::Range(0, 16));
    add_format(gc_cmd);

    std::vector<std::string> argv_store{"deltadep"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    auto emit = [&](const Json& j) {
        if (plain) format_plain(j, out);
        else out << format_json(j) << "\n";
    };

    try {
        auto poly_inputs = [&]() {
            if (!expr.empty() && !file.empty()) throw UsageError("give either an expression or --file, not both");
            if (expr.empty() && file.empty()) throw UsageError("missing expression (or --file)");
            return file.empty() ? std::vector<std::string>{expr} : read_lines(file);
        };
        auto over_inputs = [&](const std::vector<std::string>& inputs, auto&& fn) {
            if (file.empty()) return fn(inputs.front());
            Json arr = Json::array();
            for (const auto& line : inputs) arr.push_back(fn(line));
            return arr;
        };

        Json result;
        if (parse_cmd->parsed()) {
            auto amb = make_ambient(m, parse_var_list(vars_text));
            result = over_inputs(poly_inputs(), [&](const std::string& text) {
                DiffPoly p = parse(text, amb);
                Json j;
                j["canonical"] = render(p);
                j["terms"] = p.num_terms();
                j["degree"] = p.total_degree();
                j["order"] = p.max_operator_order();
                return j;
            });
        } else if (hom_cmd->parsed()) {
            auto amb = make_ambient(m, parse_var_list(vars_text));
            result = over_inputs(poly_inputs(), [&](const std::string& text) {
                auto d = is_delta_homogeneous(parse(text, amb));
                Json j;
                j["homogeneous"] = d.has_value();
                if (d) j["degree"] = *d;
                return j;
            });
        } else if (homog_cmd->parsed()) {
            std::vector<std::string> vars{hvar};
            for (auto& v : parse_var_list(vars_text))
                if (v != hvar) vars.push_back(v);
            auto amb = make_ambient(m, std::move(vars));
            result = over_inputs(poly_inputs(), [&](const std::string& text) {
                auto h = homogenize(parse(text, amb));
                Json j;
                j["polynomial"] = render(h.polynomial);
                j["degree"] = h.degree;
                return j;
            });
        } else if (wr_cmd->parsed()) {
            WronskianIndex a(parse_multiindex_list(index_text));
            if (a.derivations() != m)
                throw std::invalid_argument("--index rows have " + std::to_string(a.derivations()) +
                                            " entries but --m is " + std::to_string(m));
            result["index"] = to_string(a);
            if (funcs.empty()) {
                DiffPoly w = wronskian_symbolic(a, a.arity() - 1);
                result["wronskian"] = render(w);
                result["terms"] = w.num_terms();
            } else {
                auto f = parse_tuple(funcs, m);
                result["value"] = to_string(wronskian_eval(a, f));
            }
        } else if (yl_cmd->parsed()) {
            auto sets = enumerate_young_like(m, size);
            result["m"] = m;
            result["size"] = size;
            result["count"] = sets.size();
            Json arr = Json::array();
            for (const auto& s : sets) {
                Json members = Json::array();
                for (const auto& a : s.members()) members.push_back(to_string(a));
                arr.push_back(members);
            }
            result["sets"] = arr;
        } else if (ld_cmd->parsed()) {
            if (!funcs.empty() && !file.empty()) throw UsageError("give either a tuple or --file, not both");
            if (funcs.empty() && file.empty()) throw UsageError("missing function tuple (or --file)");
            const auto strategy = strategy_text == "all" ? WronskianStrategy::All : WronskianStrategy::YoungLike;
            const unsigned threads = thread_count();
            std::optional<std::vector<std::vector<Rational>>> points;
            if (!points_text.empty()) points = parse_points(points_text);
            auto inputs = file.empty() ? std::vector<std::string>{funcs} : read_lines(file);
            result = over_inputs(inputs, [&](const std::string& text) {
                auto f = parse_tuple(text, m);
                Json j;
                if (points) {
                    auto hit = lindep_over_points<Poly>(*points, f);
                    j["dependent"] = hit.has_value();
                    if (hit) {
                        j["witness_point"] = point_to_string((*points)[*hit]);
                        j["witness_position"] = *hit;
                    }
                    return j;
                }
                auto verdict = lindep_wronskian(f, strategy, threads);
                auto oracle = lindep_constants_direct(f);
                if (verdict.dependent != oracle.has_value())
                    throw std::logic_error("Wronskian verdict disagrees with the coefficient-matrix oracle");
                j["dependent"] = verdict.dependent;
                j["strategy"] = to_string(strategy);
                if (oracle) {
                    Json cert = Json::array();
                    for (const auto& c : oracle->kernel) cert.push_back(to_string(c));
                    j["certificate"] = cert;
                }
                if (verdict.witness_index) {
                    j["witness_index"] = *verdict.witness_index;
                    j["witness"] = to_string(*verdict.witness);
                }
                j["wronskians_evaluated"] = verdict.wronskians_evaluated;
                return j;
            });
        } else if (ko_cmd->parsed()) {
            auto ld = ld_kolchin(arity, m, d_const);
            result["ld_kolchin"] = numerical_json(ld);
            result["affine_cone"] = numerical_json(affine_cone_shift(ld, m));
            if (m == 1) result["transversal_identity"] = transversal_identity_check(arity, d_const);
        } else if (st_cmd->parsed()) {
            if (!system_text.empty() && !file.empty()) throw UsageError("give either a system or --file, not both");
            if (system_text.empty() && file.empty()) throw UsageError("missing system JSON (or --file)");
            auto sys = system_from_json(Json::parse(file.empty() ? system_text : read_file(file)));
            auto st = staircase_kolchin(sys);
            result = numerical_json(st.polynomial);
            result["threshold"] = st.threshold;
        } else if (gf_cmd->parsed()) {
            GrIndex g = parse_gr_index(index_text, gr_n, gr_m);
            auto st = gr_kolchin(g);
            auto bounds = gr_rank_bounds(g);
            result["index"] = to_string(g);
            result["system"] = system_json(gr_system(g));
            Json k;
            k["coeffs"] = st.polynomial.coeffs();
            k["text"] = to_string(st.polynomial);
            k["threshold"] = st.threshold;
            result["kolchin"] = k;
            result["delta_type"] = st.polynomial.is_zero() ? Json(nullptr) : Json(delta_type(st.polynomial));
            result["delta_dim"] = st.polynomial.is_zero() ? Json(nullptr) : Json(delta_dim(st.polynomial));
            result["rank_lower"] = to_string(bounds.lower);
            result["rank_upper_strict"] = to_string(bounds.strict_upper);
            result["rank_upper_convention"] = bounds.upper_is_convention;
        } else if (gc_cmd->parsed()) {
            auto chain = gr_chain(gr_n, gr_m, max_order);
            bool increasing = true;
            Json arr = Json::array();
            for (std::size_t k = 0; k < chain.size(); ++k) {
                if (k > 0) {
                    auto c = gr_contains(chain[k - 1], chain[k]);
                    increasing = increasing && c.contains && c.strict;
                }
                auto bounds = gr_rank_bounds(chain[k]);
                Json e;
                e["index"] = to_string(chain[k]);
                e["kolchin"] = gr_kolchin(chain[k]).polynomial.coeffs();
                e["rank_lower"] = to_string(bounds.lower);
                e["rank_upper_strict"] = to_string(bounds.strict_upper);
                arr.push_back(e);
            }
            result["n"] = gr_n;
            result["m"] = gr_m;
            result["max"] = max_order;
            result["length"] = chain.size();
            result["strictly_increasing"] = increasing;
            result["chain"] = arr;
        }
        emit(result);
        return 0;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace deltadep::cli

#endif  // DELTADEP_CLI_HPP
