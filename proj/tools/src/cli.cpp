#include "netgames_cli/cli.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "netgames/engine.hpp"
#include "netgames/error.hpp"
#include "netgames/features.hpp"
#include "netgames/graphgen.hpp"
#include "netgames/io.hpp"
#include "netgames/montecarlo.hpp"
#include "netgames/simnet.hpp"

namespace netgames::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kToolVersion = "0.3.0";

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream ss(text);
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

json topology_params(const TopologySpec& t) {
  return {{"side", t.side},         {"n", t.n},   {"avg_degree", t.avg_degree},
          {"m", t.m},               {"m0", t.m0}, {"perturbation", t.perturbation}};
}

// Manifest skeleton shared by every command.
json manifest(const std::string& command, const std::vector<std::string>& args,
              const std::string& started) {
  json m;
  m["tool_version"] = kToolVersion;
  m["command"] = command;
  m["command_line"] = std::vector<std::string>(args.begin() + 1, args.end());
  m["started_utc"] = started;
  return m;
}

void finish_manifest(json& m, const fs::path& dir, std::vector<std::string> files) {
  files.push_back("manifest.json");
  m["files"] = std::move(files);
  m["finished_utc"] = utc_now();
  io::write_text_file(dir / "manifest.json", m.dump(2) + "\n");
}

// Expands `--config FILE` into flags. Lines are key=value (blank lines and
// lines starting with # or ; are skipped); keys are long flag names without
// the dashes. A key that also appears on the command line is ignored, so
// explicit flags win. Boolean flags take true/false.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::optional<std::string> file;
  std::vector<std::string> kept;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      file = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      file = args[i].substr(9);
    } else {
      kept.push_back(args[i]);
    }
  }
  if (!file) return args;

  std::ifstream in(*file);
  if (!in) {
    throw CLI::ValidationError("--config", "cannot read " + *file);
  }
  auto given = [&](const std::string& key) {
    for (const auto& a : kept) {
      if (a == "--" + key || a.rfind("--" + key + "=", 0) == 0) return true;
    }
    return false;
  };
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw CLI::ValidationError("--config",
                                 fmt::format("{}:{}: expected key=value", *file, lineno));
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.rfind("--", 0) == 0) key = key.substr(2);
    if (given(key)) continue;
    if (value == "true") {
      kept.push_back("--" + key);
    } else if (value != "false") {
      kept.push_back("--" + key);
      kept.push_back(value);
    }
  }
  return kept;
}

// Options shared by the topology-aware commands.
struct TopologyFlags {
  std::size_t side = 5;
  std::size_t n = 25;
  double avg_degree = 5.0;
  std::size_t m = 2;
  std::size_t m0 = 3;
  double perturbation = 0.25;

  void add_to(CLI::App& app) {
    app.add_option("--side", side, "Lattice side for reg and geo")->capture_default_str();
    app.add_option("--n", n, "Node count for er and ba")->capture_default_str();
    app.add_option("--avg-degree", avg_degree, "Target mean degree for er")->capture_default_str();
    app.add_option("--m", m, "Edges per new node for ba")->capture_default_str();
    app.add_option("--m0", m0, "Initial nodes for ba")->capture_default_str();
    app.add_option("--perturbation", perturbation, "Jitter amplitude for geo")
        ->capture_default_str();
  }

  [[nodiscard]] TopologySpec spec(TopologyKind kind) const {
    TopologySpec t = TopologySpec::defaults(kind);
    t.side = side;
    t.n = n;
    t.avg_degree = avg_degree;
    t.m = m;
    t.m0 = m0;
    t.perturbation = perturbation;
    return t;
  }
};

// Options shared by simulate and sweep.
struct GameFlags {
  std::size_t runs = 10'000;
  std::size_t players = 10;
  std::uint64_t max_iters = 1'000'000;
  std::uint64_t seed = 1;
  std::string proximity = "adjacent";
  std::size_t workers = 0;
  bool no_skip = false;

  void add_to(CLI::App& app) {
    app.add_option("--runs", runs, "Replicas per case")->capture_default_str()
        ->check(CLI::PositiveNumber);
    app.add_option("--players", players, "Players per team")->capture_default_str()
        ->check(CLI::PositiveNumber);
    app.add_option("--max-iters", max_iters, "Iteration cap per replica")->capture_default_str()
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "Base seed")->capture_default_str();
    app.add_option("--proximity", proximity, "Teammate counting rule")
        ->check(CLI::IsMember({"adjacent", "inclusive"}))
        ->capture_default_str();
    app.add_option("--workers", workers,
                   "Worker threads (default: $NETGAMES_WORKERS or hardware threads)");
    app.add_flag("--no-skip-absorbed", no_skip,
                 "Simulate absorbed replicas to the cap instead of detecting them");
  }

  [[nodiscard]] std::size_t worker_count() const { return workers ? workers : default_workers(); }
};

// --- gen-network -------------------------------------------------------------

struct GenNetworkCmd {
  std::string type;
  std::uint64_t seed = 1;
  std::string out;
  TopologyFlags topo;

  void setup(CLI::App& app) {
    app.add_option("--type", type, "Topology")
        ->required()
        ->transform(CLI::IsMember({"reg", "er", "ba", "geo"}, CLI::ignore_case));
    app.add_option("--seed", seed, "Generator seed")->capture_default_str();
    app.add_option("--out", out, "Output directory")->required();
    topo.add_to(app);
  }

  void run(const std::vector<std::string>& args, std::ostream& os) const {
    const std::string started = utc_now();
    const TopologySpec spec = topo.spec(parse_topology(type));
    const Graph g = generate(spec, seed);
    const fs::path dir(out);
    io::write_text_file(dir / "graph.json", io::graph_to_json(g));

    json m = manifest("gen-network", args, started);
    m["base_seed"] = seed;
    m["topology"] = std::string(to_string(spec.kind));
    m["topology_params"] = topology_params(spec);
    m["node_count"] = g.node_count();
    m["edge_count"] = g.edge_count();
    m["average_degree"] = g.average_degree();
    finish_manifest(m, dir, {"graph.json"});

    os << fmt::format("{}: {} nodes, {} edges, average degree {}\n", to_string(spec.kind),
                      g.node_count(), g.edge_count(), io::fixed(g.average_degree(), 4));
  }
};

// --- simulate ----------------------------------------------------------------

struct SimulateCmd {
  std::string graph;
  std::string game;
  std::string out;
  std::string trace;
  std::size_t trace_limit = 100'000;
  GameFlags flags;

  void setup(CLI::App& app) {
    app.add_option("--graph", graph, "Graph JSON file")->required();
    app.add_option("--game", game, "Game rule set")
        ->required()
        ->transform(CLI::IsMember({"g1", "g2", "g3", "g4", "g5"}, CLI::ignore_case));
    app.add_option("--out", out, "Output directory")->required();
    app.add_option("--trace", trace, "Write replica 0 step by step as JSON lines");
    app.add_option("--trace-limit", trace_limit, "Maximum trace lines")->capture_default_str();
    flags.add_to(app);
  }

  void run(const std::vector<std::string>& args, std::ostream& os) const {
    const std::string started = utc_now();
    const std::string graph_text = io::read_text_file(graph);
    const Graph g = io::graph_from_json(graph_text);

    GameConfig config;
    config.game = parse_game(game);
    config.proximity = parse_proximity_rule(flags.proximity);
    config.players_per_team = flags.players;
    config.max_iterations = flags.max_iters;
    config.skip_absorbed = !flags.no_skip;

    BatchOptions batch;
    batch.workers = flags.worker_count();
    const BatchStats stats = run_batch(g, config, flags.runs, flags.seed, batch);

    const fs::path dir(out);
    std::vector<std::string> files = {"graph.json", "results.json", "durations.csv"};
    io::write_text_file(dir / "graph.json", io::graph_to_json(g));
    io::write_text_file(dir / "results.json",
                        io::batch_to_json(stats, config, flags.seed, "graph.json"));
    io::write_text_file(dir / "durations.csv", io::durations_csv(stats));

    if (!trace.empty()) {
      GameConfig replica = config;
      replica.seed = derive_seed(flags.seed, 0);
      std::ofstream tr(trace, std::ios::binary | std::ios::trunc);
      if (!tr) throw Error("cannot write " + trace);
      std::size_t lines = 0;
      run_game(g, replica, [&](const GameState& s, const StepRecord& rec) {
        if (lines++ < trace_limit) tr << io::trace_line(s, rec) << '\n';
      });
    }

    json m = manifest("simulate", args, started);
    m["base_seed"] = flags.seed;
    m["game"] = std::string(to_string(config.game));
    m["game_params"] = {{"proximity", flags.proximity},
                        {"players_per_team", config.players_per_team},
                        {"max_iterations", config.max_iterations},
                        {"skip_absorbed", config.skip_absorbed}};
    m["graph_source"] = graph;
    m["runs"] = flags.runs;
    finish_manifest(m, dir, files);

    os << to_string(config.game) << " " << io::summary_line(stats) << "\n";
  }
};

// --- sweep -------------------------------------------------------------------

struct SweepCmd {
  std::string games = "g1,g2,g3,g4,g5";
  std::string topologies = "reg,er,ba,geo";
  std::string out;
  bool resample = false;
  bool svg = false;
  std::size_t bins = 50;
  GameFlags flags;
  TopologyFlags topo;

  void setup(CLI::App& app) {
    app.add_option("--games", games, "Comma-separated games")->capture_default_str();
    app.add_option("--topologies", topologies, "Comma-separated topologies")
        ->capture_default_str();
    app.add_option("--out", out, "Output directory")->required();
    app.add_flag("--resample-per-run", resample, "Draw a fresh graph for every replica");
    app.add_flag("--svg", svg, "Also write an SVG duration histogram per case");
    app.add_option("--bins", bins, "Histogram bins for --svg")->capture_default_str()
        ->check(CLI::PositiveNumber);
    flags.add_to(app);
    topo.add_to(app);
  }

  void run(const std::vector<std::string>& args, std::ostream& os) const {
    const std::string started = utc_now();
    std::vector<GameKind> game_list;
    for (const auto& s : split_list(games)) game_list.push_back(parse_game(s));
    std::vector<TopologySpec> topo_list;
    for (const auto& s : split_list(topologies)) topo_list.push_back(topo.spec(parse_topology(s)));
    if (game_list.empty() || topo_list.empty()) {
      throw InvalidParameter("sweep: --games and --topologies must not be empty");
    }

    SweepOptions opts;
    opts.runs = flags.runs;
    opts.base_seed = flags.seed;
    opts.players_per_team = flags.players;
    opts.max_iterations = flags.max_iters;
    opts.proximity = parse_proximity_rule(flags.proximity);
    opts.skip_absorbed = !flags.no_skip;
    opts.workers = flags.worker_count();
    opts.resample_per_run = resample;
    const auto cases = sweep(topo_list, game_list, opts);

    const fs::path dir(out);
    std::vector<std::string> files = {"sweep.json", "summary.csv", "cases.csv"};
    io::write_text_file(dir / "sweep.json", io::sweep_to_json(cases, opts));
    io::write_text_file(dir / "summary.csv", io::summary_grid_csv(cases));
    io::write_text_file(dir / "cases.csv", io::summary_long_csv(cases));
    for (const auto& t : topo_list) {
      const std::string name = fmt::format("graphs/{}.json", to_string(t.kind));
      io::write_text_file(dir / name,
                          io::graph_to_json(generate(t, sweep_graph_seed(opts.base_seed, t.kind))));
      files.push_back(name);
    }
    for (const auto& c : cases) {
      const std::string stem = fmt::format("{}_{}", to_string(c.game), to_string(c.topology.kind));
      io::write_text_file(dir / ("durations/" + stem + ".csv"), io::durations_csv(c.stats));
      files.push_back("durations/" + stem + ".csv");
      if (svg) {
        const auto finished = c.stats.finished_durations();
        if (finished.empty()) continue;
        const auto lo = *std::min_element(finished.begin(), finished.end());
        const auto hi = *std::max_element(finished.begin(), finished.end());
        const auto h = make_histogram(
            finished, linear_edges(static_cast<double>(lo), static_cast<double>(hi), bins));
        io::write_text_file(dir / ("histograms/" + stem + ".svg"),
                            io::histogram_svg(h, c.label() + " duration"));
        files.push_back("histograms/" + stem + ".svg");
      }
    }

    json m = manifest("sweep", args, started);
    m["base_seed"] = opts.base_seed;
    m["games"] = split_list(games);
    json tj = json::array();
    for (const auto& t : topo_list) {
      json e = topology_params(t);
      e["kind"] = std::string(to_string(t.kind));
      e["graph_seed"] = sweep_graph_seed(opts.base_seed, t.kind);
      tj.push_back(std::move(e));
    }
    m["topologies"] = std::move(tj);
    m["game_params"] = {{"proximity", flags.proximity},
                        {"players_per_team", opts.players_per_team},
                        {"max_iterations", opts.max_iterations},
                        {"skip_absorbed", opts.skip_absorbed},
                        {"resample_per_run", opts.resample_per_run}};
    m["runs"] = opts.runs;
    finish_manifest(m, dir, files);

    os << io::summary_grid_csv(cases);
  }
};

// --- analyze -----------------------------------------------------------------

struct AnalyzeCmd {
  std::string in;
  std::string out;
  std::string features = "victories";
  double d = 1.0;
  double regularization = 0.0;
  double threshold = 0.0;
  std::string normalization = "standardized";
  double shift = 1.0;
  std::size_t bins = 50;
  std::string games;
  std::string topologies;
  double max_censored = 90.0;
  bool keep_constant = false;

  void setup(CLI::App& app) {
    app.add_option("--in", in, "Sweep output directory")->required();
    app.add_option("--out", out, "Output directory (default: <in>/network_<features>_d<D>)");
    app.add_option("--features", features, "Feature set")
        ->check(CLI::IsMember({"victories", "durations", "moments", "combined"}))
        ->capture_default_str();
    app.add_option("--d", d, "Coincidence strictness D")->capture_default_str()
        ->check(CLI::PositiveNumber);
    app.add_option("--regularization", regularization, "Jaccard regularization constant")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    app.add_option("--threshold", threshold, "Prune weights below this value")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 1.0));
    app.add_option("--normalization", normalization, "Feature normalization")
        ->check(CLI::IsMember({"raw", "standardized", "recentered", "shifted"}))
        ->capture_default_str();
    app.add_option("--shift", shift, "Offset for --normalization shifted")->capture_default_str();
    app.add_option("--bins", bins, "Histogram bins for durations")->capture_default_str()
        ->check(CLI::PositiveNumber);
    app.add_option("--games", games, "Only these games (comma-separated)");
    app.add_option("--topologies", topologies, "Only these topologies (comma-separated)");
    app.add_option("--max-censored", max_censored,
                   "Duration features: drop cases with a larger censored percentage")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 100.0));
    app.add_flag("--keep-constant", keep_constant,
                 "Keep zero-variance feature columns (standardization then fails)");
  }

  void run(const std::vector<std::string>& args, std::ostream& os) const {
    const std::string started = utc_now();
    const fs::path in_dir(in);
    if (!fs::exists(in_dir / "sweep.json")) {
      throw InvalidInput("no sweep results in " + in_dir.string() + " (expected sweep.json)");
    }
    const auto results = io::sweep_from_json(io::read_text_file(in_dir / "sweep.json"));
    const FeatureMode mode = parse_feature_mode(features);

    std::set<GameKind> game_filter;
    for (const auto& s : split_list(games)) game_filter.insert(parse_game(s));
    std::set<TopologyKind> topo_filter;
    for (const auto& s : split_list(topologies)) topo_filter.insert(parse_topology(s));

    std::vector<SweepCase> kept;
    json dropped = json::array();
    for (const auto& c : results.cases) {
      if (!game_filter.empty() && !game_filter.count(c.game)) continue;
      if (!topo_filter.empty() && !topo_filter.count(c.topology.kind)) continue;
      if (uses_durations(mode) &&
          (c.stats.pct_censored > max_censored || c.stats.finished_durations().empty())) {
        dropped.push_back({{"case", c.label()},
                           {"reason", "censored"},
                           {"pct_censored", c.stats.pct_censored}});
        continue;
      }
      kept.push_back(c);
    }
    if (kept.size() < 2) {
      throw InvalidInput("analyze: fewer than two cases left after filtering");
    }

    FeatureMatrix raw = raw_features(kept, mode, bins);
    std::vector<std::size_t> constant;
    if (!keep_constant) {
      constant = constant_columns(raw);
      if (constant.size() == raw.cols()) {
        throw InvalidInput("analyze: every feature column is constant");
      }
      raw = raw.drop_columns(constant);
    }
    const FeatureMatrix feats = normalize(raw, parse_normalization(normalization), shift);
    const SimilarityNetwork net = build_similarity_network(feats, d, regularization, threshold);

    const fs::path dir =
        out.empty() ? in_dir / fmt::format("network_{}_d{}", features, d) : fs::path(out);
    std::string matrix = "label";
    for (std::size_t c = 0; c < feats.cols(); ++c) matrix += fmt::format(",f{}", c);
    matrix += "\n";
    for (std::size_t r = 0; r < feats.rows(); ++r) {
      matrix += feats.labels()[r];
      for (std::size_t c = 0; c < feats.cols(); ++c) matrix += "," + io::fixed(feats.at(r, c), 9);
      matrix += "\n";
    }
    io::write_text_file(dir / "features.csv", matrix);
    io::write_text_file(dir / "network.csv", io::network_csv(net));
    io::write_text_file(dir / "network.json", io::network_json(net));

    json m = manifest("analyze", args, started);
    m["base_seed"] = results.options.base_seed;
    m["source"] = (in_dir / "sweep.json").string();
    m["features"] = std::string(to_string(mode));
    m["D"] = d;
    m["regularization"] = regularization;
    m["threshold"] = threshold;
    m["normalization"] = normalization;
    m["bins"] = bins;
    m["nodes"] = net.size();
    m["dropped_cases"] = std::move(dropped);
    m["dropped_constant_columns"] = constant;
    finish_manifest(m, dir, {"features.csv", "network.csv", "network.json"});

    os << fmt::format("{} nodes, features={}, D={} -> {}\n", net.size(), to_string(mode), d,
                      (dir / "network.csv").string());
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulate two-team games on networks and compare the outcomes.", "netgames"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  GenNetworkCmd gen;
  SimulateCmd sim;
  SweepCmd swp;
  AnalyzeCmd ana;

  auto* gen_app = app.add_subcommand("gen-network", "Generate a graph and write it as JSON");
  auto* sim_app = app.add_subcommand("simulate", "Run a batch of one game on a graph file");
  auto* swp_app = app.add_subcommand("sweep", "Run every game on every topology");
  auto* ana_app = app.add_subcommand("analyze", "Build a similarity network from sweep results");
  for (auto* sub : {gen_app, sim_app, swp_app, ana_app}) {
    // Expanded by expand_config before parsing; registered for the help text.
    sub->add_option("--config", "key=value file mirroring the flags (flags win)");
  }
  gen.setup(*gen_app);
  sim.setup(*sim_app);
  swp.setup(*swp_app);
  ana.setup(*ana_app);

  // The innermost subcommand seen so far, for help and usage text.
  auto active = [&]() -> const CLI::App& {
    for (auto* sub : app.get_subcommands()) return *sub;
    return app;
  };

  std::vector<std::string> expanded;
  std::vector<const char*> argv;
  try {
    expanded = expand_config(args);
    for (const auto& a : expanded) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << active().help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << active().help();
    return kExitUsage;
  }

  try {
    if (gen_app->parsed()) gen.run(expanded, out);
    else if (sim_app->parsed()) sim.run(expanded, out);
    else if (swp_app->parsed()) swp.run(expanded, out);
    else if (ana_app->parsed()) ana.run(expanded, out);
  } catch (const InvalidParameter& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace netgames::cli
