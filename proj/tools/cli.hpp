#pragma once

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif

#include "fgl/engine.hpp"
#include "fgl/families.hpp"
#include "fgl/io.hpp"
#include "fgl/kernel.hpp"
#include "fgl/reductions.hpp"
#include "fgl/scan.hpp"
#include "fgl/solver.hpp"
#include "fgl/strategies.hpp"
#include "fgl/verify.hpp"

namespace fgl::cli {

enum ExitCode : int { kOk = 0, kCounterexample = 1, kInputError = 2, kBudget = 3 };

/// Worker count: the request (default: hardware threads), capped by FGL_THREADS.
inline unsigned worker_count(unsigned requested) {
  unsigned n = requested != 0 ? requested : std::max(1U, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("FGL_THREADS")) {
    char* end = nullptr;
    const unsigned long cap = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

struct Options {
  std::uint64_t max_states = 50'000'000;
  double max_seconds = 120.0;
  unsigned threads = 0;
  std::string format;

  std::string graph_path;
  std::string start = "0";
  std::string variant;
  std::string output;
  std::string labels_output;
  std::string kernel_path;
  std::string transcript_path;
  std::string family;
  std::vector<std::size_t> params;
  std::string policy;
  std::string range;
  std::string what = "winner";
  bool no_pv = false;
  bool deterministic = false;

  [[nodiscard]] SearchLimits limits() const {
    SearchLimits l;
    l.max_states = max_states;
    l.max_seconds = max_seconds;
    l.threads = worker_count(threads);
    l.validate();
    return l;
  }

  // Everything that determines the result; thread count and output paths
  // are deliberately left out.
  [[nodiscard]] json config(const std::string& command) const {
    return json{{"command", command}, {"max_states", max_states}, {"max_seconds", max_seconds},
                {"start", start},     {"variant", variant},       {"family", family},
                {"params", params},   {"policy", policy},         {"range", range},
                {"what", what}};
  }
};

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::vector<std::string>& args) {
    CLI::App app{"Feedback game workbench", "fgl"};
    app.set_version_flag("--version", std::string("fgl ") + kVersion);
    app.require_subcommand(1);
    Options o;
    std::string command;

    auto common = [&](CLI::App* sub, const char* default_format) {
      sub->add_option("--max-states", o.max_states, "state budget per search")->check(CLI::PositiveNumber);
      sub->add_option("--max-seconds", o.max_seconds, "time budget per search")->check(CLI::PositiveNumber);
      sub->add_option("--threads", o.threads, "worker threads (capped by FGL_THREADS)");
      sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
      sub->callback([&, sub, default_format] {
        if (o.format.empty()) o.format = default_format;
        command = sub->get_name();
        for (auto* p = sub->get_parent(); p != nullptr && p->get_parent() != nullptr; p = p->get_parent()) {
          command = p->get_name() + " " + command;
        }
      });
    };
    auto graph_opt = [&](CLI::App* sub) { sub->add_option("-g,--graph", o.graph_path, "fgl-graph-v1 file")->required(); };
    auto start_opt = [&](CLI::App* sub) { sub->add_option("-s,--start", o.start, "start vertex (index or label)"); };

    auto* family = app.add_subcommand("family", "generate tri N, torus M N or gk K");
    family->add_option("kind", o.family, "tri | torus | gk")->required()->check(CLI::IsMember({"tri", "torus", "gk"}));
    family->add_option("params", o.params, "family parameters")->required();
    family->add_option("-o,--output", o.output, "graph file");
    family->add_option("--labels", o.labels_output, "label map file (default: next to the graph file)");
    common(family, "json");

    auto* solve_cmd = app.add_subcommand("solve", "exact winner under perfect play");
    graph_opt(solve_cmd);
    start_opt(solve_cmd);
    solve_cmd->add_option("--variant", o.variant, "feedback | edge-geo | directed-edge-geo");
    solve_cmd->add_flag("--no-pv", o.no_pv, "skip the principal variation");
    solve_cmd->add_option("--transcript", o.transcript_path, "write the principal variation as a transcript");
    common(solve_cmd, "json");

    auto* kernel = app.add_subcommand("kernel", "even kernels");
    kernel->require_subcommand(1);
    auto* kfind = kernel->add_subcommand("find", "backtracking search");
    graph_opt(kfind);
    start_opt(kfind);
    kfind->add_option("-o,--output", o.output, "kernel file");
    common(kfind, "json");
    auto* kcheck = kernel->add_subcommand("check", "validate a kernel file");
    graph_opt(kcheck);
    kcheck->add_option("-k,--kernel", o.kernel_path, "kernel file")->required();
    common(kcheck, "json");
    auto* kenum = kernel->add_subcommand("enumerate", "all even kernels (at most 25 vertices)");
    graph_opt(kenum);
    start_opt(kenum);
    common(kenum, "json");
    auto* kcons = kernel->add_subcommand("construct", "closed-form kernel: tri N or torus M N");
    kcons->add_option("kind", o.family, "tri | torus")->required()->check(CLI::IsMember({"tri", "torus"}));
    kcons->add_option("params", o.params, "family parameters")->required();
    kcons->add_option("-o,--output", o.output, "kernel file");
    common(kcons, "json");

    auto* strategy = app.add_subcommand("strategy", "scripted strategies");
    strategy->require_subcommand(1);
    auto* verify = strategy->add_subcommand("verify", "check a policy against every opponent line");
    verify->add_option("--policy", o.policy, "kernel | q2n | q3n | gk | t5")
        ->required()
        ->check(CLI::IsMember({"kernel", "q2n", "q3n", "gk", "t5"}));
    verify->add_option("--family", o.family, "tri | torus | gk (kernel policy)");
    verify->add_option("--params", o.params, "family parameters");
    verify->add_option("-g,--graph", o.graph_path, "graph file (kernel policy)");
    verify->add_option("-k,--kernel", o.kernel_path, "kernel file (kernel policy)");
    start_opt(verify);
    common(verify, "json");

    auto* reduce = app.add_subcommand("reduce", "geography reduction gadgets");
    reduce->require_subcommand(1);
    auto* rpseudo = reduce->add_subcommand("pseudo-arcs", "replace every arc by a pseudo-arc");
    graph_opt(rpseudo);
    rpseudo->add_option("-o,--output", o.output, "graph file");
    common(rpseudo, "json");
    auto* reuler = reduce->add_subcommand("eulerize", "add the even-degree gadgets");
    graph_opt(reuler);
    start_opt(reuler);
    reuler->add_option("-o,--output", o.output, "graph file");
    common(reuler, "json");
    auto* rcheck = reduce->add_subcommand("check", "compare the three winners");
    graph_opt(rcheck);
    start_opt(rcheck);
    common(rcheck, "json");

    auto* scan_cmd = app.add_subcommand("scan", "winner or kernel existence over a family range");
    scan_cmd->add_option("--family", o.family, "tri | torus | gk")->required()->check(CLI::IsMember({"tri", "torus", "gk"}));
    scan_cmd->add_option("--range", o.range, "e.g. 1..6 or 2..5x2..5")->required();
    scan_cmd->add_option("--what", o.what, "winner | kernel")->check(CLI::IsMember({"winner", "kernel"}));
    scan_cmd->add_flag("--deterministic", o.deterministic, "write 0 in the seconds column");
    common(scan_cmd, "csv");

    auto* replay_cmd = app.add_subcommand("replay", "replay a transcript");
    graph_opt(replay_cmd);
    replay_cmd->add_option("-t,--transcript", o.transcript_path, "transcript file")->required();
    common(replay_cmd, "json");

    std::vector<const char*> argv{"fgl"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::Success& e) {
      return app.exit(e, out_, err_);
    } catch (const CLI::ParseError& e) {
      app.exit(e, out_, err_);
      return kInputError;
    }

    try {
      return dispatch(command, o);
    } catch (const BudgetExceeded& ex) {
      json r = header(command, o, json::object());
      r["status"] = "BUDGET_EXCEEDED";
      r["message"] = ex.what();
      r["states_visited"] = ex.stats().states_visited;
      r["table_hits"] = ex.stats().table_hits;
      emit(r, o.format);
      err_ << "budget exceeded: " << ex.what() << "\n";
      return kBudget;
    } catch (const std::exception& ex) {
      err_ << "error: " << ex.what() << "\n";
      return kInputError;
    }
  }

 private:
  int dispatch(const std::string& command, const Options& o) {
    if (command == "family") return family(o);
    if (command == "solve") return solve_cmd(o);
    if (command == "kernel find") return kernel_find(o);
    if (command == "kernel check") return kernel_check(o);
    if (command == "kernel enumerate") return kernel_enumerate(o);
    if (command == "kernel construct") return kernel_construct(o);
    if (command == "strategy verify") return strategy_verify(o);
    if (command == "reduce pseudo-arcs") return reduce_pseudo(o);
    if (command == "reduce eulerize") return reduce_eulerize(o);
    if (command == "reduce check") return reduce_check(o);
    if (command == "scan") return scan_cmd(o);
    if (command == "replay") return replay_cmd(o);
    throw std::invalid_argument("unknown command '" + command + "'");
  }

  json header(const std::string& command, const Options& o, const json& input) {
    json cfg = o.config(command);
    cfg["input"] = input;
    return json{{"tool", "fgl"}, {"version", kVersion}, {"config_hash", config_hash(cfg.dump())}, {"command", command}};
  }

  void emit(const json& report, const std::string& format) {
    if (format == "json") {
      out_ << report.dump(2) << "\n";
      return;
    }
    if (format == "csv") {
      std::string head;
      std::string row;
      for (const auto& [key, value] : report.items()) {
        if (value.is_structured()) continue;
        head += (head.empty() ? "" : ",") + key;
        std::string cell = value.is_string() ? value.get<std::string>() : value.dump();
        if (cell.find_first_of(",\"") != std::string::npos) {
          std::string quoted = "\"";
          for (char c : cell) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
          cell = quoted + "\"";
        }
        row += (row.empty() ? "" : ",") + cell;
      }
      out_ << head << "\n" << row << "\n";
      return;
    }
    for (const auto& [key, value] : report.items()) {
      out_ << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
    }
  }

  static VertexId resolve_vertex(const std::vector<std::string>& labels, const std::string& text) {
    if (!text.empty() && std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      const auto v = std::stoull(text);
      if (v < labels.size()) return static_cast<VertexId>(v);
    }
    for (std::size_t v = 0; v < labels.size(); ++v) {
      if (labels[v] == text) return static_cast<VertexId>(v);
    }
    throw std::invalid_argument("no vertex '" + text + "'");
  }

  static Graph family_graph(const std::string& kind, const std::vector<std::size_t>& p) {
    auto need = [&](std::size_t n) {
      if (p.size() != n) {
        throw std::invalid_argument(kind + " takes " + std::to_string(n) + " parameter(s), got " +
                                    std::to_string(p.size()));
      }
    };
    if (kind == "tri") {
      need(1);
      return TriangularGrid(p[0]).graph();
    }
    if (kind == "torus") {
      need(2);
      return ToroidalGrid(p[0], p[1]).graph();
    }
    if (kind == "gk") {
      need(1);
      return GkGraph(p[0]).graph();
    }
    throw std::invalid_argument("unknown family '" + kind + "'");
  }

  static std::string sidecar_path(const std::string& output) {
    const auto dot = output.rfind(".json");
    const std::string stem = dot != std::string::npos && dot + 5 == output.size() ? output.substr(0, dot) : output;
    return stem + ".labels.json";
  }

  int family(const Options& o) {
    const Graph g = family_graph(o.family, o.params);
    json r = header("family", o, json::object());
    r["family"] = o.family;
    r["params"] = o.params;
    r["vertices"] = g.vertex_count();
    r["edges"] = g.edge_count();
    r["eulerian"] = is_eulerian(g);
    if (!o.output.empty()) {
      const std::string labels = o.labels_output.empty() ? sidecar_path(o.output) : o.labels_output;
      write_text_file(o.output, to_json(g).dump(2) + "\n");
      write_text_file(labels, label_map_json(g.labels()).dump(2) + "\n");
      r["output"] = o.output;
      r["labels_output"] = labels;
    } else {
      r["graph"] = to_json(g);
      r["labels"] = label_map_json(g.labels());
    }
    emit(r, o.format);
    err_ << o.family << ": " << g.vertex_count() << " vertices, " << g.edge_count() << " edges\n";
    return kOk;
  }

  int solve_cmd(const Options& o) {
    const auto doc = read_graph_file(o.graph_path);
    const json input = doc.directed ? to_json(doc.digraph) : to_json(doc.graph);
    const VertexId s = resolve_vertex(doc.labels(), o.start);
    Variant variant = doc.directed ? Variant::EdgeGeoDirected : Variant::Feedback;
    if (!o.variant.empty()) variant = parse_variant(o.variant);
    auto board = doc.directed ? directed_board(doc.digraph) : Board::of(doc.graph);
    const auto v = solve(board, s, variant, o.limits(), !o.no_pv);
    json r = header("solve", o, input);
    r["start"] = s;
    r["start_label"] = doc.labels()[s];
    r["variant"] = std::string(to_string(variant));
    r["winner"] = std::string(to_string(v.winner));
    r["states_visited"] = v.states_visited;
    r["table_hits"] = v.table_hits;
    if (v.principal_variation) {
      r["principal_variation"] = *v.principal_variation;
      if (!o.transcript_path.empty()) {
        const auto t = make_transcript(initial_state(board, s, variant), *v.principal_variation);
        write_text_file(o.transcript_path, to_json(t).dump(2) + "\n");
      }
    }
    emit(r, o.format);
    err_ << "winner " << to_string(v.winner) << " after " << v.states_visited << " states in "
         << v.wall_time.count() << " s\n";
    return kOk;
  }

  int kernel_find(const Options& o) {
    const auto doc = read_undirected(o);
    const VertexId s = resolve_vertex(doc.labels(), o.start);
    const auto res = search_even_kernel(doc.graph, s, o.max_states);
    json r = header("kernel find", o, to_json(doc.graph));
    r["exists"] = res.kernel.has_value();
    r["nodes"] = res.nodes;
    if (res.kernel) {
      r["kernel"] = to_json(*res.kernel);
      if (!o.output.empty()) write_text_file(o.output, to_json(*res.kernel).dump(2) + "\n");
    }
    emit(r, o.format);
    err_ << (res.kernel ? "even kernel found" : "no even kernel (search exhausted)") << "\n";
    return kOk;
  }

  int kernel_check(const Options& o) {
    const auto doc = read_undirected(o);
    const auto k = kernel_from_json(read_json_file(o.kernel_path), doc.graph.vertex_count());
    const auto v = validate_even_kernel(doc.graph, k.start, k.members);
    json r = header("kernel check", o, json{{"graph", to_json(doc.graph)}, {"kernel", to_json(k)}});
    r["ok"] = v.ok();
    json violations = json::array();
    for (const auto& x : v.violations) {
      violations.push_back(json{{"vertex", x.vertex}, {"rule", x.rule}, {"message", x.message}});
    }
    r["violations"] = violations;
    if (v.ok()) {
      const auto cert = build_kernel_cert(doc.graph, k);
      r["black"] = cert.black.members();
      r["white"] = cert.white.members();
      r["h_edges"] = cert.edges;
    }
    emit(r, o.format);
    err_ << (v.ok() ? "valid even kernel" : "not an even kernel") << "\n";
    return v.ok() ? kOk : kCounterexample;
  }

  int kernel_enumerate(const Options& o) {
    const auto doc = read_undirected(o);
    const VertexId s = resolve_vertex(doc.labels(), o.start);
    const auto all = enumerate_even_kernels(doc.graph, s);
    json r = header("kernel enumerate", o, to_json(doc.graph));
    r["count"] = all.size();
    json list = json::array();
    for (const auto& k : all) list.push_back(to_json(k));
    r["kernels"] = list;
    emit(r, o.format);
    err_ << all.size() << " even kernel(s)\n";
    return kOk;
  }

  int kernel_construct(const Options& o) {
    KernelSet k;
    Graph g;
    if (o.family == "tri") {
      if (o.params.size() != 1) throw std::invalid_argument("tri takes one parameter");
      TriangularGrid t(o.params[0]);
      k = tri_constructed_kernel(t);
      g = t.graph();
    } else {
      if (o.params.size() != 2) throw std::invalid_argument("torus takes two parameters");
      ToroidalGrid q(o.params[0], o.params[1]);
      k = torus_tiled_kernel(q);
      g = q.graph();
    }
    const bool ok = validate_even_kernel(g, k.start, k.members).ok();
    json r = header("kernel construct", o, json::object());
    r["family"] = o.family;
    r["params"] = o.params;
    r["valid"] = ok;
    r["kernel"] = to_json(k);
    json names = json::array();
    for (VertexId v : k.members.members()) names.push_back(g.label(v));
    r["kernel_labels"] = names;
    if (!o.output.empty()) write_text_file(o.output, to_json(k).dump(2) + "\n");
    emit(r, o.format);
    err_ << k.members.size() << " vertices in S, " << (ok ? "valid" : "INVALID") << "\n";
    return ok ? kOk : kCounterexample;
  }

  int strategy_verify(const Options& o) {
    Graph g;
    VertexId s = 0;
    Policy policy;
    std::string instance;
    auto param = [&](std::size_t i) {
      if (o.params.size() <= i) throw std::invalid_argument("policy " + o.policy + " needs --params");
      return o.params[i];
    };
    if (o.policy == "kernel") {
      KernelSet k;
      if (!o.graph_path.empty()) {
        g = read_undirected(o).graph;
        s = resolve_vertex(g.labels(), o.start);
        if (!o.kernel_path.empty()) {
          k = kernel_from_json(read_json_file(o.kernel_path), g.vertex_count());
        } else {
          auto found = find_even_kernel(g, s, o.max_states);
          if (!found) throw std::invalid_argument("graph has no even kernel for this start");
          k = *found;
        }
        instance = o.graph_path;
      } else if (o.family == "tri") {
        TriangularGrid t(param(0));
        g = t.graph();
        k = tri_constructed_kernel(t);
        instance = "T_" + std::to_string(param(0));
      } else if (o.family == "torus") {
        ToroidalGrid q(param(0), param(1));
        g = q.graph();
        k = torus_tiled_kernel(q);
        instance = "Q(" + std::to_string(param(0)) + "," + std::to_string(param(1)) + ")";
      } else {
        throw std::invalid_argument("kernel policy needs -g or --family tri|torus");
      }
      s = k.start;
      policy = kernel_policy(g, build_kernel_cert(g, k));
    } else if (o.policy == "q2n") {
      g = ToroidalGrid(2, param(0)).graph();
      policy = q2n_policy(param(0));
      instance = "Q(2," + std::to_string(param(0)) + ")";
    } else if (o.policy == "q3n") {
      g = ToroidalGrid(3, param(0)).graph();
      policy = q3n_policy(param(0));
      instance = "Q(3," + std::to_string(param(0)) + ")";
    } else if (o.policy == "gk") {
      g = GkGraph(param(0)).graph();
      policy = gk_policy(param(0));
      instance = "G_" + std::to_string(param(0));
    } else {
      g = TriangularGrid(5).graph();
      policy = t5_policy(o.limits());
      instance = "T_5";
    }
    const auto report = verify_policy(g, s, Variant::Feedback, policy, policy.owner, o.limits());
    json r = header("strategy verify", o, to_json(g));
    r["policy"] = o.policy;
    r["owner"] = std::string(to_string(policy.owner));
    r["instance"] = instance;
    r["start"] = s;
    r["verified"] = report.verified;
    r["lines_explored"] = report.lines_explored;
    r["states_visited"] = report.states_visited;
    r["max_depth"] = report.max_depth;
    if (report.counterexample) {
      r["counterexample"] = json{{"moves", report.counterexample->moves},
                                 {"reason", report.counterexample->reason},
                                 {"detail", report.counterexample->detail}};
    }
    emit(r, o.format);
    err_ << o.policy << " on " << instance << ": " << (report.verified ? "verified" : "COUNTEREXAMPLE") << " ("
         << report.lines_explored << " lines)\n";
    return report.verified ? kOk : kCounterexample;
  }

  static json gadget_json(const GadgetMap& m) {
    json arcs = json::array();
    for (const auto& a : m.arcs) {
      arcs.push_back(json{{"arc", a.arc}, {"tail", a.tail}, {"head", a.head}, {"vertices", a.vertices},
                          {"edges", a.edges}});
    }
    json paths = json::array();
    for (const auto& p : m.odd_paths) {
      paths.push_back(json{{"x", p.x}, {"y", p.y}, {"z", p.z}, {"edges", p.edges}});
    }
    json out{{"arcs", arcs}, {"odd_paths", paths}};
    if (m.cycle) out["cycle"] = *m.cycle;
    return out;
  }

  int reduce_pseudo(const Options& o) {
    const auto doc = read_graph_file(o.graph_path);
    if (!doc.directed) throw std::invalid_argument("pseudo-arcs needs a digraph (\"directed\": true)");
    const auto red = pseudo_arc_transform(doc.digraph);
    return emit_reduction("reduce pseudo-arcs", o, to_json(doc.digraph), red);
  }

  int reduce_eulerize(const Options& o) {
    const auto doc = read_undirected(o);
    const VertexId s = resolve_vertex(doc.labels(), o.start);
    const auto red = eulerize(doc.graph, s);
    return emit_reduction("reduce eulerize", o, to_json(doc.graph), red);
  }

  int emit_reduction(const std::string& command, const Options& o, const json& input, const Reduction& red) {
    json r = header(command, o, input);
    r["vertices"] = red.graph.vertex_count();
    r["edges"] = red.graph.edge_count();
    r["eulerian"] = is_eulerian(red.graph);
    r["max_degree"] = red.graph.max_degree();
    if (!o.output.empty()) {
      write_text_file(o.output, to_json(red.graph).dump(2) + "\n");
      r["output"] = o.output;
    } else {
      r["graph"] = to_json(red.graph);
    }
    r["gadgets"] = gadget_json(red.map);
    emit(r, o.format);
    err_ << red.graph.vertex_count() << " vertices, " << red.graph.edge_count() << " edges\n";
    return kOk;
  }

  int reduce_check(const Options& o) {
    const auto doc = read_graph_file(o.graph_path);
    if (!doc.directed) throw std::invalid_argument("reduce check needs a digraph (\"directed\": true)");
    const VertexId s = resolve_vertex(doc.labels(), o.start);
    const auto c = reduction_equivalence_check(doc.digraph, s, o.limits());
    json r = header("reduce check", o, to_json(doc.digraph));
    r["directed_winner"] = std::string(to_string(c.directed_winner));
    r["undirected_winner"] = std::string(to_string(c.undirected_winner));
    r["feedback_winner"] = std::string(to_string(c.feedback_winner));
    r["undirected_edges"] = c.undirected_edges;
    r["feedback_edges"] = c.feedback_edges;
    r["proof_shape"] = c.proof_shape();
    r["warnings"] = c.warnings;
    r["agree"] = c.agree();
    emit(r, o.format);
    for (const auto& w : c.warnings) err_ << "warning: " << w << "\n";
    err_ << (c.agree() ? "winners agree" : "winners DIFFER") << "\n";
    return c.agree() ? kOk : kCounterexample;
  }

  int scan_cmd(const Options& o) {
    ScanSpec spec;
    spec.family = o.family;
    spec.instances = parse_scan_range(o.family, o.range);
    spec.what = o.what == "kernel" ? ScanWhat::Kernel : ScanWhat::Winner;
    spec.limits = o.limits();
    spec.threads = spec.limits.threads;
    const auto rows = scan(spec);
    const bool timing = !o.deterministic;
    if (o.format == "csv") {
      out_ << scan_csv(rows, timing);
    } else {
      json r = header("scan", o, json::object());
      json list = json::array();
      for (const auto& row : rows) {
        list.push_back(json{{"family", row.family},
                            {"params", row.params},
                            {"start", row.start},
                            {"mode", row.mode},
                            {"result", row.result},
                            {"states", row.states},
                            {"seconds", timing ? row.seconds : 0.0}});
      }
      r["rows"] = list;
      if (o.format == "json") {
        out_ << r.dump(2) << "\n";
      } else {
        for (const auto& row : rows) out_ << row.family << " " << row.params << " " << row.mode << ": " << row.result << "\n";
      }
    }
    std::size_t timeouts = 0;
    for (const auto& row : rows) timeouts += row.result == "TIMEOUT" ? 1 : 0;
    err_ << rows.size() << " row(s), " << timeouts << " timeout(s)\n";
    return kOk;
  }

  int replay_cmd(const Options& o) {
    const auto doc = read_graph_file(o.graph_path);
    const auto t = transcript_from_json(read_json_file(o.transcript_path));
    auto board = doc.directed ? directed_board(doc.digraph) : Board::of(doc.graph);
    const auto initial = initial_state(board, t.start, t.variant);
    Transcript played;
    try {
      played = make_transcript(initial, t.moves);
    } catch (const EngineError& ex) {
      throw std::invalid_argument(std::string("transcript does not replay: ") + ex.what());
    }
    const bool matches = played.winner == t.winner && played.reason == t.reason;
    json r = header("replay", o, json{{"graph", doc.directed ? to_json(doc.digraph) : to_json(doc.graph)},
                                      {"transcript", to_json(t)}});
    r["moves"] = t.moves.size();
    r["winner"] = played.winner.empty() ? "NONE" : played.winner;
    r["reason"] = played.reason.empty() ? "ONGOING" : played.reason;
    r["matches_recorded"] = matches;
    emit(r, o.format);
    err_ << "replayed " << t.moves.size() << " move(s): " << (matches ? "outcome matches" : "outcome DIFFERS") << "\n";
    return matches ? kOk : kCounterexample;
  }

  GraphDocument read_undirected(const Options& o) {
    auto doc = read_graph_file(o.graph_path);
    if (doc.directed) throw std::invalid_argument("this command needs an undirected graph");
    return doc;
  }

  std::ostream& out_;
  std::ostream& err_;
};

inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return Runner(out, err).run(args);
}

}  // namespace fgl::cli
