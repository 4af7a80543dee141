#include "gbs/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gbs/classify.hpp"
#include "gbs/deform.hpp"
#include "gbs/fixtures.hpp"
#include "gbs/invariants.hpp"
#include "gbs/isomorphism.hpp"
#include "gbs/moves.hpp"
#include "gbs/twist.hpp"
#include "gbs/unimodular.hpp"

namespace gbs {

namespace {

using nlohmann::json;

std::string read_source(const std::string &path, std::istream &in) {
    std::ostringstream ss;
    if (path == "-") {
        ss << in.rdbuf();
        return ss.str();
    }
    std::ifstream f(path);
    if (!f) throw Error(ErrorKind::IoError, "cannot read " + path);
    ss << f.rdbuf();
    return ss.str();
}

json group_json(const AbelianGroup &a) {
    json factors = json::array();
    for (const auto &f : a.invariant_factors) factors.push_back(f.str());
    return {{"rank", a.rank}, {"torsion", factors}, {"text", a.to_string()}};
}

json info(const Graph &g) {
    json j;
    j["graph"] = graph_to_json(g);
    j["normalized"] = graph_to_json(normalize_signs(g));
    j["minimal"] = is_minimal(g);
    j["reduced"] = is_reduced(g);
    j["b"] = betti(g);
    ModulusGroup m = modulus_group(g);
    json gens = json::array();
    for (const auto &x : m.generators) gens.push_back(x.to_string());
    j["modulus"] = {{"generators", gens}, {"trivial", m.trivial}, {"unimodular", m.unimodular}, {"integral", m.integral}};
    j["abelianization"] = group_json(abelianization(g));
    if (is_minimal(g)) {
        GraphKind kind = graph_kind(g);
        j["kind"] = kind.name();
        if (kind.tag == GraphKind::Tag::General) {
            Graph r = reduce(g);
            j["k"] = rank_k(r);
            j["center"] = center_type(r) == CenterType::InfiniteCyclic ? "Z" : "trivial";
        }
    }
    return j;
}

json twists(const Graph &g) {
    json j;
    j["twist_group"] = group_json(twist_structure(g));
    TwistPresentation p = twist_presentation(g);
    json gens = json::array();
    for (Half h : p.generators) gens.push_back(g.half_name(h));
    json rows = json::array();
    for (const auto &row : p.relations) {
        json r = json::array();
        for (const auto &x : row) r.push_back(x.str());
        rows.push_back(r);
    }
    j["generators"] = gens;
    j["relations"] = rows;
    json edges = json::array();
    for (int i = 0; i < static_cast<int>(g.edges.size()); ++i)
        for (bool rev : {false, true}) {
            Half h{i, rev};
            TwistOrder t = twist_order(g, h);
            json e{{"half", g.half_name(h)}, {"finite", t.finite}};
            if (t.finite) e["order"] = t.order.str();
            edges.push_back(e);
        }
    j["twists"] = edges;
    return j;
}

json classify_json(const Graph &g) {
    Verdict v = classify(g);
    json j = verdict_to_json(v);
    if (v.kind == Verdict::Kind::VirtuallyNilpotent) {
        Graph r = reduce(g);
        j["collapsed"] = collapsed_to_json(r, collapse_slid(r));
    }
    return j;
}

json apply_moves(const Graph &g, const json &moves) {
    if (!moves.is_array()) throw Error(ErrorKind::MalformedInput, "move list must be a JSON array");
    Graph cur = g;
    for (const auto &m : moves) cur = apply_move(cur, move_from_json(m));
    return {{"graph", graph_to_json(cur)}, {"steps", moves.size()}};
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::istream &in, std::ostream &out, std::ostream &err) {
    CLI::App app{"Decision procedures for generalized Baumslag-Solitar groups", "gbs"};
    app.require_subcommand(1);

    std::string file, file2, moves_file, dot_dir, emit_dir;
    bool oracle = false;
    std::string bound = "10000";
    ExploreBounds eb;
    bool probe = false;
    std::string delta_power = "0";

    auto *c_info = app.add_subcommand("info", "graph data and global invariants");
    c_info->add_option("file", file, "graph JSON file or - for stdin")->required();
    auto *c_classify = app.add_subcommand("classify", "classify Out(G)");
    c_classify->add_option("file", file)->required();
    auto *c_twists = app.add_subcommand("twists", "group of twists and per-edge twist orders");
    c_twists->add_option("file", file)->required();
    auto *c_iso = app.add_subcommand("iso", "decide isomorphism of two F2-free inputs");
    c_iso->add_option("a", file)->required();
    c_iso->add_option("b", file2)->required();
    c_iso->add_flag("--oracle", oracle, "also run the bounded move search");
    c_iso->add_option("--bound", bound, "label product bound for the move search");
    auto *c_deform = app.add_subcommand("deform", "enumerate reduced graphs in the deformation space");
    c_deform->add_option("file", file)->required();
    c_deform->add_option("--max-edges", eb.max_edges)->capture_default_str();
    c_deform->add_option("--max-label", eb.max_label)->capture_default_str();
    c_deform->add_option("--max-states", eb.max_states)->capture_default_str();
    c_deform->add_option("--dot-dir", dot_dir, "write each reduced graph as DOT");
    c_deform->add_flag("--probe", probe, "report a rigidity probe instead of the full list");
    auto *c_uni = app.add_subcommand("unimodular", "normal cyclic subgroup data of a unimodular group");
    c_uni->add_option("file", file)->required();
    c_uni->add_option("--delta-power", delta_power, "power of the central generator (default 1 or 4)");
    auto *c_moves = app.add_subcommand("move-apply", "apply a JSON list of moves");
    c_moves->add_option("file", file)->required();
    c_moves->add_option("moves", moves_file)->required();
    auto *c_examples = app.add_subcommand("examples", "write the built-in graphs");
    c_examples->add_option("--emit-dir", emit_dir)->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError &e) {
        err << e.what() << "\n" << app.help();
        return 2;
    }

    try {
        json result;
        auto load = [&](const std::string &path) { return parse_graph(read_source(path, in)); };
        if (c_info->parsed()) {
            result = info(load(file));
        } else if (c_classify->parsed()) {
            result = classify_json(load(file));
        } else if (c_twists->parsed()) {
            result = twists(load(file));
        } else if (c_iso->parsed()) {
            Graph a = load(file), b = load(file2);
            result = iso_to_json(isomorphic(a, b));
            if (oracle) {
                err << "running move search with label product bound " << bound << "\n";
                OracleVerdict o = oracle_isomorphic(a, b, BigInt(bound));
                result["oracle"] = {{"iso", o.iso}, {"depth", o.depth}, {"states", o.states}};
            }
        } else if (c_deform->parsed()) {
            Graph g = load(file);
            if (probe) {
                result = rigidity_to_json(rigidity_probe(g, eb));
            } else {
                ExplorationReport rep = explore(g, eb);
                err << "visited " << rep.states_visited << " states\n";
                result = exploration_to_json(rep);
                if (!dot_dir.empty()) {
                    std::filesystem::create_directories(dot_dir);
                    for (std::size_t i = 0; i < rep.reduced_found.size(); ++i) {
                        std::ofstream f(std::filesystem::path(dot_dir) / ("reduced_" + std::to_string(i) + ".dot"));
                        if (!f) throw Error(ErrorKind::IoError, "cannot write to " + dot_dir);
                        f << to_dot(rep.reduced_found[i]);
                    }
                }
            }
        } else if (c_uni->parsed()) {
            Graph g = load(file);
            result = unimodular_to_json(g, unimodular_report(g, BigInt(delta_power)));
        } else if (c_moves->parsed()) {
            Graph g = load(file);
            json moves;
            try {
                moves = json::parse(read_source(moves_file, in));
            } catch (const json::parse_error &e) {
                throw Error(ErrorKind::MalformedInput, e.what());
            }
            result = apply_moves(g, moves);
        } else if (c_examples->parsed()) {
            std::error_code ec;
            std::filesystem::create_directories(emit_dir, ec);
            result = json::array();
            for (const auto &[name, g] : fixtures::corpus()) {
                auto path = std::filesystem::path(emit_dir) / (name + ".json");
                std::ofstream f(path);
                if (!f) throw Error(ErrorKind::IoError, "cannot write " + path.string());
                f << graph_to_json(g).dump(2) << "\n";
                result.push_back(name + ".json");
            }
        }
        out << result.dump(2) << "\n";
        return 0;
    } catch (const Error &e) {
        err << kind_name(e.kind()) << ": " << e.what() << "\n";
        return e.kind() == ErrorKind::SizeLimitExceeded || e.kind() == ErrorKind::BoundTooSmall ? 3 : 2;
    } catch (const std::runtime_error &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace gbs
