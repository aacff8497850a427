#include "netgames/io.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>
#include <tuple>

#include "netgames/error.hpp"

namespace netgames::io {

using json = nlohmann::ordered_json;

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InvalidInput("cannot read " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) {
    throw Error("cannot write " + path.string());
  }
}

std::string fixed(double value, int precision) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return fmt::format("{:.{}f}", value, precision);
}

namespace {

json parse_document(std::string_view text, std::string_view what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string(what) + ": " + e.what());
  }
}

// Wraps nlohmann type/lookup errors as InvalidInput.
template <typename F>
auto guarded(std::string_view what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw InvalidInput(std::string(what) + ": " + e.what());
  }
}

char outcome_letter(GameResult r) {
  switch (r) {
    case GameResult::WinA: return 'A';
    case GameResult::WinB: return 'B';
    case GameResult::Tie: return 'T';
    case GameResult::Censored: return 'C';
  }
  return '?';
}

GameResult outcome_from_letter(char c) {
  switch (c) {
    case 'A': return GameResult::WinA;
    case 'B': return GameResult::WinB;
    case 'T': return GameResult::Tie;
    case 'C': return GameResult::Censored;
    default: throw InvalidInput(fmt::format("unknown outcome letter '{}'", c));
  }
}

json stats_json(const BatchStats& s) {
  json j;
  j["runs"] = s.runs;
  j["outcome_counts"] = {{"win_a", s.counts.win_a},
                         {"tie", s.counts.tie},
                         {"win_b", s.counts.win_b},
                         {"censored", s.counts.censored}};
  j["percentages"] = {{"win_a", s.pct_win_a},
                      {"tie", s.pct_tie},
                      {"win_b", s.pct_win_b},
                      {"censored", s.pct_censored}};
  // NaN is serialized as null.
  j["duration_mean"] = s.duration_mean;
  j["duration_std"] = s.duration_std;
  std::string outcomes;
  outcomes.reserve(s.results.size());
  for (auto r : s.results) outcomes.push_back(outcome_letter(r));
  j["outcomes"] = outcomes;
  j["durations"] = s.durations;
  return j;
}

BatchStats stats_from_json(const json& j) {
  const auto outcomes = j.at("outcomes").get<std::string>();
  const auto durations = j.at("durations").get<std::vector<std::uint64_t>>();
  if (outcomes.size() != durations.size()) {
    throw InvalidInput("outcomes and durations have different lengths");
  }
  std::vector<GameOutcome> runs(outcomes.size());
  for (std::size_t i = 0; i < runs.size(); ++i) {
    runs[i] = {outcome_from_letter(outcomes[i]), durations[i]};
  }
  BatchStats s = aggregate(runs);
  if (j.contains("runs") && j.at("runs").get<std::size_t>() != s.runs) {
    throw InvalidInput("run count does not match the stored outcomes");
  }
  return s;
}

json topology_json(const TopologySpec& t) {
  json j;
  j["kind"] = std::string(to_string(t.kind));
  switch (t.kind) {
    case TopologyKind::Reg:
      j["side"] = t.side;
      break;
    case TopologyKind::Er:
      j["n"] = t.n;
      j["avg_degree"] = t.avg_degree;
      break;
    case TopologyKind::Ba:
      j["n"] = t.n;
      j["m"] = t.m;
      j["m0"] = t.m0;
      break;
    case TopologyKind::Geo:
      j["side"] = t.side;
      j["perturbation"] = t.perturbation;
      break;
  }
  return j;
}

TopologySpec topology_from_json(const json& j) {
  TopologySpec t = TopologySpec::defaults(parse_topology(j.at("kind").get<std::string>()));
  t.side = j.value("side", t.side);
  t.n = j.value("n", t.n);
  t.avg_degree = j.value("avg_degree", t.avg_degree);
  t.m = j.value("m", t.m);
  t.m0 = j.value("m0", t.m0);
  t.perturbation = j.value("perturbation", t.perturbation);
  return t;
}

double json_real(const json& j) {
  return j.is_null() ? std::nan("") : j.get<double>();
}

}  // namespace

// --- graphs ---------------------------------------------------------------

std::string graph_to_json(const Graph& g) {
  json j;
  j["n"] = g.node_count();
  json edges = json::array();
  for (const auto& e : g.edges()) edges.push_back({e.u, e.v});
  j["edges"] = std::move(edges);
  if (g.positions()) {
    json pos = json::array();
    for (const auto& p : *g.positions()) pos.push_back({p.x, p.y});
    j["positions"] = std::move(pos);
  }
  return j.dump() + "\n";
}

Graph graph_from_json(std::string_view text) {
  const json j = parse_document(text, "graph file");
  return guarded("graph file", [&] {
    const auto n = j.at("n").get<std::size_t>();
    Graph g(n);
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) {
        throw InvalidInput("graph file: every edge must be a pair of node ids");
      }
      const auto u = e[0].get<std::uint64_t>();
      const auto v = e[1].get<std::uint64_t>();
      if (u >= n || v >= n) {
        throw InvalidInput(fmt::format("graph file: edge ({}, {}) references a missing node", u, v));
      }
      if (u == v) {
        throw InvalidInput(fmt::format("graph file: self-loop on node {}", u));
      }
      if (!g.add_edge(static_cast<NodeId>(u), static_cast<NodeId>(v))) {
        throw InvalidInput(fmt::format("graph file: duplicate edge ({}, {})", u, v));
      }
    }
    if (j.contains("positions")) {
      std::vector<Point2D> pos;
      for (const auto& p : j.at("positions")) {
        if (!p.is_array() || p.size() != 2) {
          throw InvalidInput("graph file: every position must be an [x, y] pair");
        }
        pos.push_back({p[0].get<double>(), p[1].get<double>()});
      }
      if (pos.size() != n) {
        throw InvalidInput("graph file: positions do not match the node count");
      }
      g.set_positions(std::move(pos));
    }
    validate(g);
    return g;
  });
}

// --- batches and sweeps ---------------------------------------------------

std::string batch_to_json(const BatchStats& stats, const GameConfig& config,
                          std::uint64_t base_seed, std::string_view graph_source) {
  json j;
  j["config"] = {{"game", std::string(to_string(config.game))},
                 {"proximity", std::string(to_string(config.proximity))},
                 {"players_per_team", config.players_per_team},
                 {"max_iterations", config.max_iterations},
                 {"skip_absorbed", config.skip_absorbed},
                 {"base_seed", base_seed},
                 {"graph", std::string(graph_source)}};
  j.update(stats_json(stats));
  return j.dump(2) + "\n";
}

std::string sweep_to_json(std::span<const SweepCase> cases, const SweepOptions& options) {
  json j;
  j["settings"] = {{"runs", options.runs},
                   {"base_seed", options.base_seed},
                   {"players_per_team", options.players_per_team},
                   {"max_iterations", options.max_iterations},
                   {"proximity", std::string(to_string(options.proximity))},
                   {"skip_absorbed", options.skip_absorbed},
                   {"resample_per_run", options.resample_per_run}};
  json arr = json::array();
  for (const auto& c : cases) {
    json cj;
    cj["game"] = std::string(to_string(c.game));
    cj["topology"] = topology_json(c.topology);
    cj["graph_seed"] = c.graph_seed;
    cj["batch_seed"] = c.batch_seed;
    cj["average_degree"] = c.average_degree;
    cj.update(stats_json(c.stats));
    arr.push_back(std::move(cj));
  }
  j["cases"] = std::move(arr);
  return j.dump(1) + "\n";
}

SweepResults sweep_from_json(std::string_view text) {
  const json j = parse_document(text, "sweep results");
  return guarded("sweep results", [&] {
    SweepResults out;
    const auto& s = j.at("settings");
    out.options.runs = s.at("runs").get<std::size_t>();
    out.options.base_seed = s.at("base_seed").get<std::uint64_t>();
    out.options.players_per_team = s.at("players_per_team").get<std::size_t>();
    out.options.max_iterations = s.at("max_iterations").get<std::uint64_t>();
    out.options.proximity = parse_proximity_rule(s.at("proximity").get<std::string>());
    out.options.skip_absorbed = s.value("skip_absorbed", true);
    out.options.resample_per_run = s.value("resample_per_run", false);
    for (const auto& cj : j.at("cases")) {
      SweepCase c;
      c.game = parse_game(cj.at("game").get<std::string>());
      c.topology = topology_from_json(cj.at("topology"));
      c.graph_seed = cj.at("graph_seed").get<std::uint64_t>();
      c.batch_seed = cj.at("batch_seed").get<std::uint64_t>();
      c.average_degree = json_real(cj.at("average_degree"));
      c.stats = stats_from_json(cj);
      out.cases.push_back(std::move(c));
    }
    if (out.cases.empty()) {
      throw InvalidInput("sweep results: no cases");
    }
    return out;
  });
}

std::string summary_grid_csv(std::span<const SweepCase> cases) {
  std::vector<GameKind> games;
  std::vector<TopologyKind> topologies;
  std::map<std::pair<GameKind, TopologyKind>, const SweepCase*> cell;
  for (const auto& c : cases) {
    if (std::find(games.begin(), games.end(), c.game) == games.end()) games.push_back(c.game);
    if (std::find(topologies.begin(), topologies.end(), c.topology.kind) == topologies.end()) {
      topologies.push_back(c.topology.kind);
    }
    cell[{c.game, c.topology.kind}] = &c;
  }
  std::string out = "game";
  for (auto t : topologies) out += fmt::format(",{}", to_string(t));
  out += "\n";
  for (auto g : games) {
    out += to_string(g);
    for (auto t : topologies) {
      out += ",";
      auto it = cell.find({g, t});
      if (it == cell.end()) continue;
      const auto& s = it->second->stats;
      out += fmt::format("{}/{}/{}/{}", fixed(s.pct_win_a, 2), fixed(s.pct_tie, 2),
                         fixed(s.pct_win_b, 2), fixed(s.pct_censored, 2));
    }
    out += "\n";
  }
  return out;
}

std::string summary_long_csv(std::span<const SweepCase> cases) {
  std::string out =
      "game,topology,average_degree,runs,pct_win_a,pct_tie,pct_win_b,pct_censored,"
      "duration_mean,duration_std\n";
  for (const auto& c : cases) {
    const auto& s = c.stats;
    out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", to_string(c.game),
                       to_string(c.topology.kind), fixed(c.average_degree), s.runs,
                       fixed(s.pct_win_a), fixed(s.pct_tie), fixed(s.pct_win_b),
                       fixed(s.pct_censored), fixed(s.duration_mean), fixed(s.duration_std));
  }
  return out;
}

std::string durations_csv(const BatchStats& stats) {
  std::string out = "replica,outcome,duration\n";
  for (std::size_t i = 0; i < stats.durations.size(); ++i) {
    out += fmt::format("{},{},{}\n", i, to_string(stats.results[i]), stats.durations[i]);
  }
  return out;
}

std::string summary_line(const BatchStats& s) {
  std::string line = fmt::format(
      "runs={} win_a={}% tie={}% win_b={}% censored={}% duration_mean={} duration_std={}", s.runs,
      fixed(s.pct_win_a, 2), fixed(s.pct_tie, 2), fixed(s.pct_win_b, 2), fixed(s.pct_censored, 2),
      fixed(s.duration_mean, 1), fixed(s.duration_std, 1));
  if (s.pct_censored >= 99.0) line += " [games never end]";
  return line;
}

std::string histogram_svg(const Histogram& h, std::string_view title) {
  constexpr double kWidth = 640, kHeight = 360, kMargin = 40;
  const double plot_w = kWidth - 2 * kMargin;
  const double plot_h = kHeight - 2 * kMargin;
  const double top = h.normalized.empty()
                         ? 0.0
                         : *std::max_element(h.normalized.begin(), h.normalized.end());
  const double bar_w = h.counts.empty() ? 0.0 : plot_w / static_cast<double>(h.counts.size());

  std::string escaped;
  for (char c : title) {
    switch (c) {
      case '<': escaped += "&lt;"; break;
      case '>': escaped += "&gt;"; break;
      case '&': escaped += "&amp;"; break;
      default: escaped += c;
    }
  }

  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" "
      "viewBox=\"0 0 {0} {1}\">\n"
      "<rect width=\"{0}\" height=\"{1}\" fill=\"white\"/>\n"
      "<text x=\"{2}\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">{3}</text>\n",
      kWidth, kHeight, kMargin, escaped);
  for (std::size_t i = 0; i < h.normalized.size(); ++i) {
    const double bh = top > 0 ? plot_h * h.normalized[i] / top : 0.0;
    out += fmt::format(
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"steelblue\"/>\n",
        fixed(kMargin + bar_w * static_cast<double>(i), 2), fixed(kMargin + plot_h - bh, 2),
        fixed(std::max(bar_w - 1.0, 0.5), 2), fixed(bh, 2));
  }
  out += fmt::format(
      "<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"black\"/>\n", kMargin,
      kMargin + plot_h, kMargin + plot_w);
  if (!h.bin_edges.empty()) {
    out += fmt::format(
        "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\">{}</text>\n",
        kMargin, kHeight - 12, fixed(h.bin_edges.front(), 0));
    out += fmt::format(
        "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" "
        "text-anchor=\"end\">{}</text>\n",
        kMargin + plot_w, kHeight - 12, fixed(h.bin_edges.back(), 0));
  }
  out += "</svg>\n";
  return out;
}

// --- similarity networks --------------------------------------------------

std::string network_csv(const SimilarityNetwork& net) {
  std::vector<std::tuple<std::string, std::string, double>> rows;
  const auto& labels = net.labels();
  for (std::size_t i = 0; i < net.size(); ++i) {
    for (std::size_t j = i + 1; j < net.size(); ++j) {
      if (!net.has_edge(i, j)) continue;
      auto a = labels[i], b = labels[j];
      if (b < a) std::swap(a, b);
      rows.emplace_back(std::move(a), std::move(b), net.weight(i, j));
    }
  }
  std::sort(rows.begin(), rows.end());
  std::string out = "label_i,label_j,weight\n";
  for (const auto& [a, b, w] : rows) out += fmt::format("{},{},{}\n", a, b, fixed(w));
  return out;
}

std::string network_json(const SimilarityNetwork& net) {
  json j;
  j["labels"] = net.labels();
  j["D"] = net.strictness();
  j["regularization"] = net.regularization();
  j["threshold"] = net.threshold();
  json weights = json::array();
  for (std::size_t i = 0; i < net.size(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < net.size(); ++k) row.push_back(net.weight(i, k));
    weights.push_back(std::move(row));
  }
  j["weights"] = std::move(weights);
  return j.dump(1) + "\n";
}

// --- traces ---------------------------------------------------------------

std::string trace_line(const GameState& after, const StepRecord& record) {
  json j;
  j["iteration"] = after.iteration();
  j["from"] = {record.from[0], record.from[1]};
  json to = json::array();
  for (const auto& t : record.to) {
    if (t) to.push_back(*t);
    else to.push_back(nullptr);
  }
  j["to"] = std::move(to);
  if (record.encounter) {
    j["encounter"] = {{"node", record.encounter->node},
                      {"removed_a", record.encounter->removed_a},
                      {"removed_b", record.encounter->removed_b}};
  } else {
    j["encounter"] = nullptr;
  }
  j["alive"] = {after.alive(Team::A), after.alive(Team::B)};
  return j.dump();
}

}  // namespace netgames::io
