// homdom: command-line front-end.

#include "homdom/cones.hpp"
#include "homdom/constructions.hpp"
#include "homdom/error.hpp"
#include "homdom/formulas.hpp"
#include "homdom/io.hpp"
#include "homdom/lp.hpp"
#include "homdom/verifier.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

using namespace homdom;

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNonexistent = 3;
constexpr int kExitResource = 4;
constexpr int kExitInternal = 5;

struct Globals {
    std::uint64_t seed = 1;
    std::string seed_source = "default";
    std::string out;
    std::string config_file;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    std::uint64_t max_search_nodes = 4'000'000'000ULL;
    std::uint64_t max_weighted_maps = 20'000'000ULL;
    int max_lp_size = 400;
    int max_vertices = 64;
};

struct CorpusFlags {
    std::string spec;
    int exhaustive = -1;
    bool labeled = false;
    int gnp = -1;
    int gnp_min_n = 1;
    int gnp_max_n = 10;
    std::string gnp_p = "1/2";
    bool constructions = false;
    std::size_t max_recorded = 5000;
};

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot read '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

json parse_json_text(const std::string& text, const std::string& what)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(what + ": " + e.what());
    }
}

/// Inline JSON or a file containing it.
json json_arg(const std::string& arg, const std::string& what)
{
    const auto first = arg.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && arg[first] == '{') {
        return parse_json_text(arg, what);
    }
    return parse_json_text(slurp(arg), what);
}

Graph graph_arg(const std::string& arg, const Globals& g)
{
    Graph out = read_graph_arg(arg);
    if (out.num_vertices() > g.max_vertices) {
        throw ResourceLimit("graph '" + arg + "' has more than " + std::to_string(g.max_vertices) + " vertices");
    }
    return out;
}

HomLimits hom_limits(const Globals& g) { return HomLimits{g.max_search_nodes, g.max_weighted_maps}; }

json globals_json(const Globals& g)
{
    return json{{"seed", g.seed},
                {"seed_source", g.seed_source},
                {"rng", "homdom-rng-v1"},
                {"threads", g.threads},
                {"max_search_nodes", g.max_search_nodes},
                {"max_weighted_maps", g.max_weighted_maps},
                {"max_lp_size", g.max_lp_size},
                {"max_vertices", g.max_vertices},
                {"out", g.out}};
}

CorpusSpec corpus_from_flags(const CorpusFlags& f, const Globals& g)
{
    CorpusSpec spec;
    if (!f.spec.empty()) {
        json j = json_arg(f.spec, "corpus spec");
        if (j.contains("gnp")) {
            for (auto& item : j["gnp"]) {
                if (!item.contains("seed")) {
                    item["seed"] = g.seed;
                }
            }
        }
        if (!j.contains("construction_seed")) {
            j["construction_seed"] = g.seed;
        }
        spec = corpus_spec_from_json(j);
    } else {
        spec.construction_seed = g.seed;
    }
    if (f.exhaustive >= 0) {
        spec.exhaustive_max_n = f.exhaustive;
    }
    if (f.labeled) {
        spec.dedup = false;
    }
    if (f.gnp >= 0) {
        spec.gnp.push_back(GnpSpec{f.gnp, f.gnp_min_n, f.gnp_max_n, parse_rat(f.gnp_p), g.seed});
    }
    if (f.constructions) {
        spec.constructions = true;
    }
    spec.validate();
    return spec;
}

void add_corpus_flags(CLI::App* cmd, CorpusFlags& f)
{
    cmd->add_option("--corpus-spec", f.spec, "Corpus spec as JSON (inline or file)");
    cmd->add_option("--exhaustive", f.exhaustive, "All graphs on 1..N vertices (dedup N <= 6, labeled N <= 7)");
    cmd->add_flag("--labeled", f.labeled, "Exhaustive part without isomorphism dedup");
    cmd->add_option("--gnp", f.gnp, "Number of seeded G(n,p) targets");
    cmd->add_option("--gnp-min-n", f.gnp_min_n, "Smallest G(n,p) order");
    cmd->add_option("--gnp-max-n", f.gnp_max_n, "Largest G(n,p) order");
    cmd->add_option("--gnp-p", f.gnp_p, "Edge probability p/q");
    cmd->add_flag("--constructions", f.constructions, "Add the construction targets");
    cmd->add_option("--max-recorded", f.max_recorded, "Per-target verdicts kept in the report");
}

void emit(const Globals& g, const std::string& text)
{
    if (g.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(g.out);
    if (!out) {
        throw ParseError("cannot write '" + g.out + "'");
    }
    out << text;
}

void emit_report(const Globals& g, json config, const json& result)
{
    config["global"] = globals_json(g);
    json doc{{"config", config}, {"result", result}};
    emit(g, doc.dump(2) + "\n");
}

std::map<std::string, std::string> parse_params(const std::string& text)
{
    std::map<std::string, std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) {
            continue;
        }
        const auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw ParseError("parameter '" + item + "' needs key=value");
        }
        out[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return out;
}

long to_long(const std::string& s, const std::string& key)
{
    try {
        std::size_t used = 0;
        const long v = std::stol(s, &used);
        if (used == s.size()) {
            return v;
        }
    } catch (const std::exception&) {
    }
    throw ParseError("parameter " + key + " needs an integer, got '" + s + "'");
}

/// Config file keys become flags unless the command line already has them.
std::vector<std::string> merge_config(std::vector<std::string> args, const std::vector<std::string>& commands,
                                      std::string& config_file)
{
    for (std::size_t i = 0; i + 1 < args.size(); ++i) {
        if (args[i] == "--config") {
            config_file = args[i + 1];
        }
    }
    if (config_file.empty()) {
        return args;
    }
    const json cfg = json_arg(config_file, "config file");
    if (!cfg.is_object()) {
        throw ParseError("config file must hold a JSON object");
    }
    std::size_t sub = args.size();
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (std::find(commands.begin(), commands.end(), args[i]) != commands.end()) {
            sub = i;
            break;
        }
    }
    if (sub == args.size()) {
        if (!cfg.contains("command")) {
            return args;
        }
        args.push_back(cfg["command"].get<std::string>());
    }
    std::vector<std::string> extra;
    for (const auto& [key, value] : cfg.items()) {
        if (key == "command" || key == "config") {
            continue;
        }
        const std::string flag = "--" + key;
        if (std::find(args.begin(), args.end(), flag) != args.end()) {
            continue;
        }
        if (value.is_boolean()) {
            if (value.get<bool>()) {
                extra.push_back(flag);
            }
        } else if (value.is_array()) {
            std::string joined;
            for (const auto& v : value) {
                joined += (joined.empty() ? "" : ",") + (v.is_string() ? v.get<std::string>() : v.dump());
            }
            extra.push_back(flag);
            extra.push_back(joined);
        } else if (value.is_object()) {
            extra.push_back(flag);
            extra.push_back(value.dump());
        } else {
            extra.push_back(flag);
            extra.push_back(value.is_string() ? value.get<std::string>() : value.dump());
        }
    }
    std::size_t at = 1;
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (std::find(commands.begin(), commands.end(), args[i]) != commands.end()) {
            at = i + 1;
            break;
        }
    }
    args.insert(args.begin() + static_cast<long>(at), extra.begin(), extra.end());
    return args;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Homomorphism density domination exponents: formulas, constructions, checks."};
    app.set_help_flag("--help", "Print help");
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    bool seed_given = false;
    bool seed_in_config = false;
    app.add_option("--seed", g.seed, "Global seed (HOMDOM_SEED overrides the config file)");
    app.add_option("--out", g.out, "Write the report here instead of stdout");
    app.add_option("--config", g.config_file, "JSON config mirroring the flags");
    app.add_option("--threads", g.threads, "Worker count for corpus fan-out");
    app.add_option("--max-search-nodes", g.max_search_nodes, "Backtracking budget per homomorphism count");
    app.add_option("--max-weighted-maps", g.max_weighted_maps, "Class maps per weighted density");
    app.add_option("--max-lp-size", g.max_lp_size, "Row and column cap for LPs read from files");
    app.add_option("--max-vertices", g.max_vertices, "Largest accepted input graph");

    // exponent
    auto* exponent = app.add_subcommand("exponent", "Bounds on C(G,H) with provenance");
    std::string eg, eh;
    bool harvest = false;
    exponent->add_option("G", eg, "Dominating graph")->required();
    exponent->add_option("H", eh, "Dominated graph")->required();
    exponent->add_flag("--harvest", harvest, "Certified lower bounds from construction targets");

    // verify
    auto* verify = app.add_subcommand("verify", "Check t(G,T) >= t(H,T)^c over a corpus");
    std::string vg, vh, vc;
    CorpusFlags vflags;
    verify->add_option("--g", vg, "G")->required();
    verify->add_option("--h", vh, "H")->required();
    verify->add_option("--c", vc, "Exponent p/q")->required();
    add_corpus_flags(verify, vflags);

    // search-p6
    auto* search = app.add_subcommand("search-p6", "Search the open cycle inequality for counterexamples");
    int si = 2, sj = 1;
    CorpusFlags sflags;
    search->add_option("--i", si, "i > j")->required();
    search->add_option("--j", sj, "j >= 1")->required();
    add_corpus_flags(search, sflags);

    // construct
    auto* construct = app.add_subcommand("construct", "Build a construction target");
    std::string family, params, named;
    bool emit_g6 = false;
    construct->add_option("--family", family,
                          "path_blowup, projective, bipartite_power, behrend, single_edge, half_clique, "
                          "two_cliques, clique_plus_isolated, gnp, or graph");
    construct->add_option("--params", params, "key=value list; the size is n (p for projective, N for behrend)");
    construct->add_option("--graph", named, "Named graph for --family graph");
    construct->add_flag("--emit", emit_g6, "Print graph6 only");

    // cone
    auto* cone = app.add_subcommand("cone", "Cycle-profile cones: rays, tightness, hull equality");
    int even_k = 0, all_m = 0;
    bool literal = false;
    auto* even_opt = cone->add_option("--even", even_k, "Even-cycle cone of order k");
    auto* all_opt = cone->add_option("--all", all_m, "All-cycle cone up to C_2m");
    even_opt->excludes(all_opt);
    cone->add_flag("--literal", literal, "Evaluate the mixed rows exactly as displayed");

    // lp
    auto* lp = app.add_subcommand("lp", "Exact LP solver");
    int kr = 0;
    std::string lp_file;
    auto* kr_opt = lp->add_option("--kr", kr, "Triangle-versus-odd-cycle program for i");
    auto* file_opt = lp->add_option("--file", lp_file, "LP as JSON");
    kr_opt->excludes(file_opt);

    // estimate
    auto* estimate = app.add_subcommand("estimate", "log t(G) / log t(H) along a scaling family");
    std::string tg, th, fam;
    std::vector<long> sizes;
    estimate->add_option("--g", tg, "G")->required();
    estimate->add_option("--h", th, "H")->required();
    estimate->add_option("--family", fam, "kind[:key=value,...]")->required();
    estimate->add_option("--sizes", sizes, "Sizes, comma separated")->delimiter(',')->required();

    std::vector<std::string> args(argv, argv + argc);
    try {
        const std::vector<std::string> commands{"exponent", "verify", "search-p6", "construct", "cone", "lp", "estimate"};
        seed_given = std::find(args.begin(), args.end(), "--seed") != args.end();
        args = merge_config(args, commands, g.config_file);
        seed_in_config = !seed_given && std::find(args.begin(), args.end(), "--seed") != args.end();
        std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    if (seed_given) {
        g.seed_source = "flag";
    } else if (const char* env = std::getenv("HOMDOM_SEED")) {
        try {
            g.seed = std::stoull(env);
            g.seed_source = "HOMDOM_SEED";
        } catch (const std::exception&) {
            std::cerr << "error: HOMDOM_SEED must be an unsigned integer\n";
            return kExitUsage;
        }
    } else if (seed_in_config) {
        g.seed_source = "config";
    }

    try {
        if (*exponent) {
            const Graph G = graph_arg(eg, g);
            const Graph H = graph_arg(eh, g);
            DispatchOptions opt;
            opt.harvest = harvest;
            const ExponentBound b = dispatch_exponent(G, H, opt);
            emit_report(g, json{{"command", "exponent"}, {"G", eg}, {"H", eh}, {"harvest", harvest}},
                        bound_to_json(b));
            return b.nonexistent() ? kExitNonexistent : 0;
        }
        if (*verify || *search) {
            const CorpusFlags& f = *verify ? vflags : sflags;
            const CorpusSpec spec = corpus_from_flags(f, g);
            const Corpus corpus = build_corpus(spec);
            CheckOptions opt;
            opt.limits = hom_limits(g);
            opt.max_recorded = f.max_recorded;
            json config{{"corpus", corpus_spec_to_json(spec)}, {"max_recorded", f.max_recorded}};
            VerificationReport report;
            if (*verify) {
                const Rat c = parse_rat(vc);
                report = check_inequality(graph_arg(vg, g), graph_arg(vh, g), c, corpus, opt);
                config["command"] = "verify";
                config["g"] = vg;
                config["h"] = vh;
                config["c"] = to_string(c);
            } else {
                report = search_problem6(si, sj, corpus, opt);
                config["command"] = "search-p6";
                config["i"] = si;
                config["j"] = sj;
            }
            emit_report(g, config, report_to_json(report));
            return report.exit_code();
        }
        if (*construct) {
            auto p = parse_params(params);
            json config{{"command", "construct"}, {"family", family}, {"params", p}, {"emit", emit_g6}};
            json result;
            FamilyInstance inst;
            if (family == "graph") {
                inst = graph_arg(named, g);
                config["graph"] = named;
            } else if (family == "gnp") {
                const int n = static_cast<int>(to_long(p.count("n") ? p["n"] : "10", "n"));
                Rng rng = Rng::stream(g.seed, 0);
                inst = gnp(n, parse_rat(p.count("p") ? p["p"] : "1/2"), rng);
            } else {
                std::string size_key = "n";
                if (family == "projective") {
                    size_key = "p";
                } else if (family == "behrend") {
                    size_key = "N";
                }
                if (!p.count(size_key)) {
                    throw ParseError("--params needs " + size_key + " for family " + family);
                }
                const long size = to_long(p[size_key], size_key);
                std::string spec = family;
                std::string sep = ":";
                bool has_seed = false;
                for (const auto& [key, value] : p) {
                    if (key == size_key) {
                        continue;
                    }
                    has_seed = has_seed || key == "seed";
                    spec += sep + key + "=" + value;
                    sep = ",";
                }
                if (!has_seed) {
                    spec += sep + "seed=" + std::to_string(g.seed);
                }
                const ScalingFamily sf = parse_scaling_family(spec);
                inst = instantiate(sf, size);
                config["scaling_family"] = scaling_family_to_json(sf);
                result["scale"] = to_string(family_scale(sf, size));
                if (sf.kind == FamilyKind::path_blowup) {
                    result["pattern"] = weighted_pattern_to_json(path_blowup_pattern(sf.path));
                }
                if (sf.kind == FamilyKind::projective) {
                    result["red_lines"] =
                        red_line_graph(ProjectivePlaneSpec{static_cast<int>(size), sf.k, std::nullopt}, sf.seed)
                            .red_lines;
                }
            }
            if (emit_g6) {
                const auto* graph = std::get_if<Graph>(&inst);
                if (!graph) {
                    throw ParseError("--emit needs a simple-graph family");
                }
                emit(g, encode_graph6(*graph) + "\n");
                return 0;
            }
            result["instance"] = instance_to_json(inst);
            emit_report(g, config, result);
            return 0;
        }
        if (*cone) {
            if (!*even_opt && !*all_opt) {
                throw ParseError("cone needs --even k or --all m");
            }
            const Cone c = *even_opt ? even_cycle_cone(even_k)
                                     : all_cycle_cone(all_m, literal ? MixedRowMode::literal : MixedRowMode::aligned);
            json result = cone_to_json(c);
            result["ray_check"] = ray_report_to_json(verify_rays(c));
            const HullReport hull = hull_report(c);
            result["hull"] = hull_report_to_json(hull);
            result["equality"] = hull.equal();
            if (*even_opt) {
                result["determinant"] = to_string(determinant(c.halfspaces));
            }
            json config{{"command", "cone"}};
            if (*even_opt) {
                config["even"] = even_k;
            } else {
                config["all"] = all_m;
                config["literal"] = literal;
            }
            emit_report(g, config, result);
            return 0;
        }
        if (*lp) {
            LPProblem problem;
            json config{{"command", "lp"}};
            LPLimits limits{g.max_lp_size, g.max_lp_size};
            if (*kr_opt) {
                problem = kr_lp(kr);
                config["kr"] = kr;
            } else if (*file_opt) {
                problem = lp_from_json(json_arg(lp_file, "LP file"));
                config["file"] = lp_file;
            } else {
                throw ParseError("lp needs --kr i or --file path");
            }
            const LPSolution sol = solve_lp(problem, limits);
            json result = solution_to_json(sol);
            if (*kr_opt) {
                const auto cert = kr_certificate(kr);
                Rat value = 0;
                for (std::size_t r = 0; r < cert.size(); ++r) {
                    value += cert[r] * problem.rhs[r];
                }
                json cj = json::array();
                for (const auto& y : cert) {
                    cj.push_back(to_string(y));
                }
                result["certificate"] = cj;
                result["certificate_valid"] = dual_feasible(problem, cert) && value == sol.optimum;
            }
            emit_report(g, config, result);
            return 0;
        }
        if (*estimate) {
            const Graph G = graph_arg(tg, g);
            const Graph H = graph_arg(th, g);
            std::string spec = fam;
            if (spec.find("seed=") == std::string::npos) {
                spec += (spec.find(':') == std::string::npos ? ":" : ",") + std::string("seed=") + std::to_string(g.seed);
            }
            const ScalingFamily sf = parse_scaling_family(spec);
            const EstimateResult res = estimate_ratio(G, H, sf, sizes, hom_limits(g));
            emit_report(g,
                        json{{"command", "estimate"},
                             {"g", tg},
                             {"h", th},
                             {"family", scaling_family_to_json(sf)},
                             {"sizes", sizes}},
                        estimate_to_json(res));
            return 0;
        }
    } catch (const ResourceLimit& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitResource;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InvalidArgument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitUsage;
}
