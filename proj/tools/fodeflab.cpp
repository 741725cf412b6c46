// fodeflab: command-line front end for the fodef library.
#include "fodef/efgame.hpp"
#include "fodef/error.hpp"
#include "fodef/formula.hpp"
#include "fodef/graph.hpp"
#include "fodef/semantics.hpp"
#include "fodef/succinct.hpp"
#include "fodef/tm.hpp"
#include "fodef/trees.hpp"
#include "fodef/universal.hpp"

#include "CLI11.hpp"

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using nlohmann::json;
using namespace fodef;

namespace {

constexpr int kMaxPlayRounds = 8;

struct Config {
    std::string format = "json";
    std::uint64_t seed = 1;
    int digit_cap = kDefaultDigitCap;
    int threads = 1;
};

// An argument is a path when such a file exists, otherwise inline text.
std::string read_arg(const std::string& arg)
{
    std::error_code ec;
    if (std::filesystem::is_regular_file(arg, ec)) {
        std::ifstream in(arg);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    return arg;
}

json read_json(const std::string& arg)
{
    try {
        return json::parse(read_arg(arg));
    } catch (const json::parse_error& e) {
        input_error("json_syntax", "cannot parse '" + arg + "': " + e.what());
    }
}

Graph read_graph(const std::string& arg) { return graph_from_json(read_json(arg)); }

RootedTree read_rooted(const std::string& arg)
{
    json j = read_json(arg);
    if (j.contains("parent"))
        return tree_from_json(j);
    Graph g = graph_from_json(j);
    if (!is_tree(g))
        input_error("not_a_tree", "graph is not a tree");
    return RootedTree::from_graph(g, j.value("root", 0));
}

Formula read_formula(const std::string& arg) { return parse(read_arg(arg)); }

TuringMachine read_machine(const std::string& arg)
{
    std::string text = read_arg(arg);
    for (char& c : text)
        if (c == ';')
            c = '\n';
    return parse_tm(text);
}

int threads_from_env()
{
    const char* v = std::getenv("FO_DEFLAB_THREADS");
    if (!v || !*v)
        return 1;
    char* end = nullptr;
    long n = std::strtol(v, &end, 10);
    if (*end != '\0' || n < 1)
        input_error("threads", "FO_DEFLAB_THREADS must be a positive integer");
    return static_cast<int>(n);
}

void emit(const Config& cfg, const json& j, const std::string& text = {})
{
    if (cfg.format == "text" && !text.empty())
        std::cout << text << (text.back() == '\n' ? "" : "\n");
    else
        std::cout << j.dump(2) << '\n';
}

json graph_report(const Graph& g)
{
    Metrics mt = metrics(g);
    return {{"n", g.order()}, {"edges", g.edge_count()}, {"connected", is_connected(g)}, {"tree", is_tree(g)},
        {"diameter", to_string(mt.diameter)}, {"radius", to_string(mt.radius)}};
}

// ---------------------------------------------------------------- play ---

std::string code_name(int c) { return c == 0 ? "equal" : c == 1 ? "adjacent" : "distinct and non-adjacent"; }

std::optional<std::string> violation(const Game& game, const GamePosition& p)
{
    const Graph& g = game.graph(Side::G);
    const Graph& h = game.graph(Side::H);
    for (std::size_t i = 0; i < p.g_pebbles.size(); ++i)
        for (std::size_t j = i + 1; j < p.g_pebbles.size(); ++j) {
            int a = pair_code(g, p.g_pebbles[i], p.g_pebbles[j]);
            int b = pair_code(h, p.h_pebbles[i], p.h_pebbles[j]);
            if (a != b)
                return "pebbles " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " are " + code_name(a)
                    + " in G but " + code_name(b) + " in H";
        }
    return std::nullopt;
}

// Reads one non-empty, non-comment line.
bool next_line(std::istream& in, std::string& line)
{
    while (std::getline(in, line)) {
        auto h = line.find('#');
        if (h != std::string::npos)
            line.resize(h);
        if (line.find_first_not_of(" \t\r") != std::string::npos)
            return true;
    }
    return false;
}

int run_play(const Config& cfg, const std::string& g_arg, const std::string& h_arg, int k, const std::string& role,
    const std::string& replay)
{
    Graph g = read_graph(g_arg);
    Graph h = read_graph(h_arg);
    if (k < 1 || k > kMaxPlayRounds)
        input_error("play_rounds", "rounds must be in 1.." + std::to_string(kMaxPlayRounds));
    Game game(g, h);
    std::ifstream file;
    if (!replay.empty()) {
        file.open(replay);
        if (!file)
            input_error("replay", "cannot open replay file " + replay);
    }
    std::istream& in = replay.empty() ? std::cin : file;
    bool human_spoiler = role == "spoiler";
    bool interactive = replay.empty();
    auto say = [&](const std::string& s) {
        if (interactive || cfg.format == "text")
            std::cerr << s << '\n';
    };

    GamePosition p;
    p.rounds_left = k;
    json rounds = json::array();
    say("G has " + std::to_string(g.order()) + " vertices, H has " + std::to_string(h.order()) + "; " + std::to_string(k)
        + " rounds. You are " + role + ".");
    std::optional<std::string> broken;
    for (int r = 1; r <= k; ++r) {
        Move m;
        int response = 0;
        std::string line;
        if (human_spoiler) {
            say("round " + std::to_string(r) + ": your move as '<G|H> <vertex>'");
            if (!next_line(in, line))
                input_error("play_input", "input ended before the game did");
            std::istringstream ls(line);
            std::string side;
            if (!(ls >> side >> m.vertex) || (side != "G" && side != "H"))
                input_error("play_input", "expected '<G|H> <vertex>', got '" + line + "'");
            m.side = side == "G" ? Side::G : Side::H;
            if (!game.legal(p, m))
                input_error("play_input", "illegal move '" + line + "'");
            response = game.duplicator_response(p, m);
            say("Duplicator answers " + std::to_string(response) + " in " + (m.side == Side::G ? "H" : "G"));
        } else {
            auto best = game.spoiler_move(p);
            if (best) {
                m = *best;
            } else {
                // No forced win: the first legal move.
                bool found = false;
                for (Side s : {Side::G, Side::H}) {
                    for (int v = 0; v < game.graph(s).order() && !found; ++v)
                        if (game.legal(p, {s, v})) {
                            m = {s, v};
                            found = true;
                        }
                    if (found)
                        break;
                }
            }
            say("round " + std::to_string(r) + ": Spoiler pebbles " + std::to_string(m.vertex) + " in "
                + (m.side == Side::G ? "G" : "H") + "; your answer in " + (m.side == Side::G ? "H" : "G") + ":");
            if (!next_line(in, line))
                input_error("play_input", "input ended before the game did");
            std::istringstream ls(line);
            if (!(ls >> response) || response < 0 || response >= game.graph(other(m.side)).order())
                input_error("play_input", "expected a vertex of the other graph, got '" + line + "'");
        }
        p = game.apply(p, m, response);
        rounds.push_back({{"spoiler", to_json(m)}, {"response", response}});
        broken = violation(game, p);
        if (broken)
            break;
    }
    bool spoiler_won = broken.has_value();
    say(std::string(spoiler_won ? "Spoiler" : "Duplicator") + " wins" + (broken ? ": " + *broken : ""));
    json out = {{"winner", spoiler_won ? "spoiler" : "duplicator"}, {"rounds", rounds},
        {"human_won", spoiler_won == human_spoiler}};
    if (broken)
        out["violation"] = *broken;
    std::cout << out.dump(2) << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    Config cfg;
    CLI::App app{"fodeflab: first-order definability of small graphs"};
    app.require_subcommand(1);
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text", "csv"}));
    app.add_option("--seed", cfg.seed, "Seed for every sampled check");
    app.add_option("--digit-cap", cfg.digit_cap, "Decimal digits before bounds turn symbolic")
        ->check(CLI::PositiveNumber);

    std::string a1, a2;
    int k = 0, bound = 5, alt = -1, n = 0, depth = 0, rank = 0, m = 2, added = 40, max_steps = 10000;
    bool naive = false;

    auto* check = app.add_subcommand("check", "Evaluate a sentence on a graph");
    check->add_option("graph", a1)->required();
    check->add_option("formula", a2)->required();

    auto* measure = app.add_subcommand("measure", "Quantifier rank, alternation, length, classes");
    measure->add_option("formula", a1)->required();

    auto* prenex = app.add_subcommand("prenex", "Prenex form");
    prenex->add_option("formula", a1)->required();

    auto* dgame = app.add_subcommand("dgame", "Distinguishing rank with an optimal play trace");
    dgame->add_option("g1", a1)->required();
    dgame->add_option("g2", a2)->required();
    dgame->add_option("--alt", alt, "Switch budget");

    auto* define = app.add_subcommand("define", "Defining sentence, bounded-order certificate");
    define->add_option("graph", a1)->required();
    define->add_option("--bound", bound, "Order bound N")->check(CLI::PositiveNumber);
    define->add_flag("--naive", naive, "Use the naive |G|+1 definition");

    auto* tree = app.add_subcommand("tree", "Tree generators and checks");
    tree->require_subcommand(1);
    auto* tgen = tree->add_subcommand("gen", "Generate trees");
    bool t_div = false, t_rooted = false, t_ranked = false, t_catalog = false;
    tgen->add_flag("--diverging", t_div, "Diverging tree of order --order and radius --depth + 1");
    tgen->add_flag("--diverging-rooted", t_rooted, "Diverging rooted tree of depth --depth and order --order");
    tgen->add_flag("--ranked", t_ranked, "Ranked family of rank --rank");
    tgen->add_flag("--catalog", t_catalog, "Counts of diverging rooted trees up to depth --depth");
    tgen->add_option("--order", n);
    tgen->add_option("--depth", depth);
    tgen->add_option("--rank", rank);
    auto* tcheck = tree->add_subcommand("check", "Properties of a tree");
    tcheck->add_option("tree", a1)->required();
    int certify = 0;
    tcheck->add_option("--certify", certify, "Also certify definability against graphs of this order bound");
    auto* tmin = tree->add_subcommand("minimize", "Minimize a rooted tree under k-equivalence");
    tmin->add_option("tree", a1)->required();
    tmin->add_option("--k", k)->required();

    auto* tm = app.add_subcommand("tm", "Turing machine compiler");
    tm->require_subcommand(1);
    auto* tm_run = tm->add_subcommand("run", "Run a machine");
    auto* tm_compile = tm->add_subcommand("compile", "Compile to a sentence");
    auto* tm_prenex = tm->add_subcommand("prenex", "Compile to a prenex sentence");
    auto* tm_model = tm->add_subcommand("model", "The computation graph");
    auto* tm_verify = tm->add_subcommand("verify", "Check the compiled body on the computation graph");
    for (auto* s : {tm_run, tm_compile, tm_prenex, tm_model, tm_verify}) {
        s->add_option("machine", a1, "Machine file or inline text, instructions split by ';'")->required();
        s->add_option("--max-steps", max_steps)->check(CLI::NonNegativeNumber);
    }
    tm_verify->add_option("--added", added, "Sampled edge additions")->check(CLI::NonNegativeNumber);

    auto* succ = app.add_subcommand("succinct", "Succinctness tables and bounds");
    succ->require_subcommand(1);
    auto* stable = succ->add_subcommand("table", "Bounded q table");
    int n_max = 5;
    stable->add_option("--n-max", n_max)->check(CLI::PositiveNumber);
    stable->add_option("--bound", bound)->check(CLI::PositiveNumber);
    auto* sbounds = succ->add_subcommand("bounds", "Value-count and length bounds for k pebbles");
    sbounds->add_option("--k", k)->required()->check(CLI::PositiveNumber);
    auto* stower = succ->add_subcommand("tower", "Tower value and log*");
    int ti = 0;
    stower->add_option("--i", ti)->required()->check(CLI::NonNegativeNumber);

    auto* uni = app.add_subcommand("universal", "Universal sentence sets");
    uni->require_subcommand(1);
    auto* ubuild = uni->add_subcommand("build", "Build U_m; text format lists the members");
    ubuild->add_option("--m", m)->check(CLI::PositiveNumber);
    auto* uapply = uni->add_subcommand("apply", "Least m with a defining member of U_m for a graph");
    uapply->add_option("graph", a1)->required();
    uapply->add_option("--m", m, "Largest m tried")->check(CLI::PositiveNumber);
    uapply->add_option("--bound", bound)->check(CLI::PositiveNumber);
    auto* ucheck = uni->add_subcommand("check", "Universality on a seeded sample");
    int sample = 10;
    ucheck->add_option("--m", m)->check(CLI::PositiveNumber);
    ucheck->add_option("--sample", sample)->check(CLI::NonNegativeNumber);

    auto* play = app.add_subcommand("play", "Play the EF game against the engine");
    std::string role = "spoiler", replay;
    play->add_option("g1", a1)->required();
    play->add_option("g2", a2)->required();
    play->add_option("--k", k)->required();
    play->add_option("--role", role)->check(CLI::IsMember({"spoiler", "duplicator"}));
    play->add_option("--replay", replay, "Read moves from a file instead of the terminal");

    auto fail = [](const char* kind, const std::string& code, const std::string& msg, int exit_code) {
        std::cout << json{{"error", kind}, {"code", code}, {"message", msg}}.dump() << '\n';
        return exit_code;
    };

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("input", "usage", e.what(), 2);
    }

    try {
        cfg.threads = threads_from_env();
        if (*check) {
            Graph g = read_graph(a1);
            Formula f = read_formula(a2);
            bool holds = eval(f, g);
            emit(cfg, {{"holds", holds}}, holds ? "true" : "false");
        } else if (*measure) {
            Formula f = read_formula(a1);
            PrefixClasses c = classify(f);
            json j = {{"qr", quantifier_rank(f)}, {"alt", alternation_number(f)}, {"length", length(f)},
                {"classes", c.names()}, {"closed", is_closed(f)}};
            if (auto pre = prenex_prefix(f))
                j["prefix"] = *pre;
            emit(cfg, j);
        } else if (*prenex) {
            Formula f = read_formula(a1);
            Formula p = to_prenex(f);
            emit(cfg, {{"prenex", render(p)}, {"prefix", *prenex_prefix(p)}, {"qr", quantifier_rank(p)},
                          {"alt", alternation_number(p)}},
                render(p));
        } else if (*dgame) {
            Graph g = read_graph(a1);
            Graph h = read_graph(a2);
            Game game(g, h);
            GamePosition start;
            json j;
            if (alt >= 0) {
                int d = distinguishing_rank_alt(g, h, alt);
                start.rounds_left = d;
                start.budget = alt;
                j = {{"D_a", d}, {"a", alt}};
            } else {
                int d = distinguishing_rank(g, h);
                start.rounds_left = d;
                j = {{"D", d}};
            }
            j["trace"] = to_json(game.optimal_trace(start));
            emit(cfg, j);
        } else if (*define) {
            Graph g = read_graph(a1);
            Formula f;
            int rank_used = 0;
            if (naive) {
                f = naive_definition(g);
                rank_used = quantifier_rank(f);
            } else {
                Definition d = defining_formula(g, bound);
                f = d.formula;
                rank_used = d.k;
            }
            // Certificate: true on g, false on every other graph up to the bound.
            std::size_t others = 0;
            PreparedFormula pf(f);
            bool ok = pf(g);
            for (const auto& h : enumerate_graphs_upto(bound))
                if (!isomorphic(g, h)) {
                    ++others;
                    ok = ok && !pf(h);
                }
            if (!ok)
                invariant_error("definition_check", "produced sentence failed its certificate");
            emit(cfg,
                {{"formula", render(f)}, {"qr", quantifier_rank(f)}, {"rank", rank_used},
                    {"length", length(f)}, {"order_bound", bound},
                    {"certificate", {{"true_on_graph", true}, {"false_on_others", others}}}},
                render(f));
        } else if (*tgen) {
            json j;
            if (t_catalog) {
                DivergingCatalog c = enumerate_diverging(depth);
                j = {{"depth_bound", depth}, {"exact_depth", c.m}, {"up_to_depth", c.M}, {"max_order", c.max_order}};
            } else if (t_rooted) {
                j = to_json(gen_diverging_rooted(depth, n));
            } else if (t_div) {
                j = to_json(gen_diverging_tree(n, depth));
            } else if (t_ranked) {
                RankedFamily f = gen_ranked(rank);
                j = {{"rank", rank}, {"members", f.codes.size()}, {"codes", f.codes}};
            } else {
                input_error("tree_gen", "choose --diverging, --diverging-rooted, --ranked or --catalog");
            }
            emit(cfg, j);
        } else if (*tcheck) {
            json in = read_json(a1);
            json j;
            if (in.contains("parent")) {
                RootedTree t = tree_from_json(in);
                j = {{"rooted", true}, {"order", t.order()}, {"depth", t.depth()}, {"diverging", is_diverging(t)},
                    {"code", tree_code(t)}};
            } else {
                Graph g = graph_from_json(in);
                j = graph_report(g);
                if (is_tree(g)) {
                    j["diverging"] = is_diverging_tree(g);
                    auto r = ranked_rank(g);
                    j["ranked_rank"] = r ? json(*r) : json(nullptr);
                }
                if (certify > 0) {
                    CertifyReport c = certify_tree_definability(g, certify);
                    json classes = json::array();
                    for (const auto& cl : c.classes)
                        classes.push_back({{"argument", cl.argument}, {"opponents", cl.opponents}, {"max_rank", cl.max_rank},
                            {"strategy_verified",
                                cl.strategy_verified ? json(*cl.strategy_verified) : json(nullptr)}});
                    j["certificate"] = {{"order_bound", c.order_bound}, {"rank", c.rank},
                        {"within_radius_plus_2", c.within_bound}, {"classes", classes}};
                }
            }
            emit(cfg, j);
        } else if (*tmin) {
            RootedTree t = read_rooted(a1);
            Minimized mz = minimize_rooted_report(t, k);
            emit(cfg, {{"k", k}, {"input_order", t.order()}, {"order", mz.tree.order()}, {"tree", to_json(mz.tree)},
                          {"code", tree_code(mz.tree)}, {"values_seen", mz.values_seen}});
        } else if (*tm_run) {
            auto run = run_tm(read_machine(a1), max_steps);
            if (auto* tr = std::get_if<ComputationTrace>(&run))
                emit(cfg, to_json(*tr));
            else
                emit(cfg, {{"halted", false}, {"max_steps", std::get<Timeout>(run).max_steps}});
        } else if (*tm_compile) {
            CompiledSentence cs = compile(read_machine(a1));
            emit(cfg,
                {{"k", cs.k}, {"qr", quantifier_rank(cs.sentence)}, {"alt", alternation_number(cs.sentence)},
                    {"length", length(cs.sentence)}, {"body_qr", quantifier_rank(cs.body)},
                    {"witnesses", cs.witness_names}, {"sentence", render(cs.sentence)}},
                render(cs.sentence));
        } else if (*tm_prenex) {
            Formula p = compile_prenex(read_machine(a1));
            std::string pre = *prenex_prefix(p);
            json blocks = json::array();
            for (std::size_t i = 0; i < pre.size();) {
                std::size_t j = pre.find_first_not_of(pre[i], i);
                if (j == std::string::npos)
                    j = pre.size();
                blocks.push_back({{"quantifier", pre[i] == 'E' ? "exists" : "forall"}, {"count", j - i}});
                i = j;
            }
            emit(cfg, {{"qr", quantifier_rank(p)}, {"alt", alternation_number(p)}, {"blocks", blocks},
                          {"length", length(p)}, {"sentence", render(p)}},
                render(p));
        } else if (*tm_model) {
            ComputationGraph cg = build_model(read_machine(a1), max_steps);
            json w = json::object();
            for (auto [v, x] : cg.witnesses)
                w[var_name(v)] = x;
            emit(cfg, {{"graph", to_json(cg.graph)}, {"order", cg.graph.order()}, {"cells", cg.cells},
                          {"times", cg.times}, {"witnesses", w}});
        } else if (*tm_verify) {
            ModelReport r = verify_model(read_machine(a1), added, static_cast<unsigned>(cfg.seed), max_steps);
            emit(cfg, to_json(r));
        } else if (*stable) {
            BoundTable t = q_table(n_max, bound);
            if (cfg.format == "csv")
                std::cout << to_csv(t);
            else
                emit(cfg, to_json(t));
        } else if (*sbounds) {
            json rows = json::array();
            for (int s = k; s >= 0; --s)
                rows.push_back({{"s", s}, {"f", f_bound(k, s, cfg.digit_cap).str()},
                    {"l", l_bound(k, s, cfg.digit_cap).str()}, {"f_closed", f_closed(k, s, cfg.digit_cap).str()},
                    {"l_closed", l_closed(k, s, cfg.digit_cap).str()}});
            emit(cfg, {{"k", k}, {"ehrv", ehrv_bound(k, cfg.digit_cap).str()}, {"rows", rows}});
        } else if (*stower) {
            Bound t = tower(ti, cfg.digit_cap);
            json j = {{"i", ti}, {"tower", t.str()}, {"exact", t.exact()}};
            if (t.exact())
                j["log_star"] = log_star(*t.value);
            emit(cfg, j, t.str());
        } else if (*ubuild) {
            UniversalSet s = build_universal(m);
            emit(cfg, to_json(s), to_text(s));
        } else if (*uapply) {
            Graph g = read_graph(a1);
            emit(cfg, to_json(d_half_upper(g, m, bound)));
        } else if (*ucheck) {
            auto fs = random_alt_exists_sample(sample, m, cfg.seed);
            UniversalityReport r = universality_check(m, fs);
            json j = to_json(r);
            json texts = json::array();
            for (const auto& f : fs)
                texts.push_back(render(f));
            j["sample"] = texts;
            emit(cfg, j);
        } else if (*play) {
            return run_play(cfg, a1, a2, k, role, replay);
        }
    } catch (const Error& e) {
        int code = e.kind() == ErrorKind::Input ? 2 : e.kind() == ErrorKind::Cap ? 3 : 4;
        return fail(kind_name(e.kind()), e.code(), e.what(), code);
    } catch (const std::exception& e) {
        return fail("invariant", "unexpected", e.what(), 4);
    }
    return 0;
}
