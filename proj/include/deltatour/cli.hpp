#pragma once

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "deltatour/io.hpp"
#include "deltatour/kernel.hpp"
#include "deltatour/oracles.hpp"
#include "deltatour/reductions.hpp"
#include "deltatour/solvers.hpp"

namespace deltatour {

namespace cli_detail {

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Rational rational_arg(const std::string& s, const char* what) {
  try {
    return Rational::parse(s);
  } catch (const Error&) {
    throw Usage(std::string("bad rational for ") + what + ": '" + s + "'");
  }
}

inline std::string set_str(const std::vector<Vertex>& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? " " : "") + std::to_string(s[i]);
  return out;
}

// Edge list with parallel edges allowed, for the Euler oracle.
inline std::pair<int, std::vector<std::pair<Vertex, Vertex>>> load_multigraph(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::Parse, "cannot open " + path);
  auto lines = io::detail::tokenized_lines(f);
  if (lines.empty() || lines[0].size() != 2) throw Error(ErrorCode::Parse, "graph header must be 'n m'");
  int n = static_cast<int>(io::detail::to_int(lines[0][0]));
  std::vector<std::pair<Vertex, Vertex>> e;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].size() != 2) throw Error(ErrorCode::Parse, "edge line must be 'u v'");
    e.emplace_back(static_cast<Vertex>(io::detail::to_int(lines[i][0])),
                   static_cast<Vertex>(io::detail::to_int(lines[i][1])));
  }
  if (static_cast<long long>(e.size()) != io::detail::to_int(lines[0][1]))
    throw Error(ErrorCode::Parse, "edge count does not match header");
  return {n, e};
}

inline Tour run_algorithm(const std::string& alg, const Graph& g, const Rational& delta, int threads) {
  if (alg == "brute") return brute_force_shortest(g, delta, SolverOptions{threads});
  if (alg == "xp-large-delta") return xp_large_delta_shortest(g, delta);
  if (alg == "auto")
    return delta >= Rational(3, 2) ? xp_large_delta_shortest(g, delta) : brute_force_shortest(g, delta, SolverOptions{threads});
  throw Usage("unknown algorithm '" + alg + "'");
}

}  // namespace cli_detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  using cli_detail::rational_arg;
  using nlohmann::json;
  CLI::App app{"exact delta-tour solvers, verifiers and reduction generators", "deltatour"};
  app.require_subcommand(1);
  bool as_json = false;
  int threads = 1;
  app.add_flag("--json", as_json, "machine-readable output");
  app.add_option("--threads", threads, "worker threads for the exact solver")->check(CLI::PositiveNumber);

  std::string graph_path, tour_path, delta_s, budget_s, out_path, map_path, alg = "auto";

  auto* solve = app.add_subcommand("solve", "shortest delta-tour");
  solve->add_option("graph", graph_path)->required();
  solve->add_option("--delta", delta_s)->required();
  solve->add_option("--algorithm", alg)->check(CLI::IsMember({"brute", "xp-large-delta", "auto"}));
  solve->add_option("--budget", budget_s, "decision mode: answer whether length <= K");
  solve->add_option("--out", out_path, "write the tour here");

  bool use_fpt = false, use_brute = false;
  auto* decide = app.add_subcommand("decide", "is there a delta-tour of length <= K");
  decide->add_option("graph", graph_path)->required();
  decide->add_option("--delta", delta_s)->required();
  decide->add_option("--budget", budget_s)->required();
  auto* f_fpt = decide->add_flag("--fpt", use_fpt, "kernelize then search");
  decide->add_flag("--brute", use_brute, "search the whole graph")->excludes(f_fpt);
  decide->add_option("--out", out_path, "write the witness tour here");

  bool per_edge = false;
  auto* verify = app.add_subcommand("verify", "check that a tour is a delta-tour");
  verify->add_option("graph", graph_path)->required();
  verify->add_option("tour", tour_path)->required();
  verify->add_option("--delta", delta_s)->required();
  verify->add_flag("--per-edge", per_edge, "per-edge characterisation check (nice tours)");

  auto* kern = app.add_subcommand("kernelize", "kernel for delta < 3/2");
  kern->add_option("graph", graph_path)->required();
  kern->add_option("--delta", delta_s)->required();
  kern->add_option("--budget", budget_s)->required();
  kern->add_option("--out", out_path, "kernel graph file");
  kern->add_option("--map", map_path, "mapping file 'kernel_id original_id'");

  std::string reduction, csp_path, prefix, alpha_s = "1", beta_s = "1", eps_s = "1/2";
  int k = 1, r = 0;
  auto* gen = app.add_subcommand("generate", "build a reduction instance");
  gen->add_option("--reduction", reduction)
      ->required()
      ->check(CLI::IsMember({"chain", "vc-cycle", "split-dom", "small-delta", "subdivide", "csp"}));
  gen->add_option("--out", prefix, "output prefix; writes .graph, .labels and .manifest")->required();
  gen->add_option("--graph", graph_path, "source graph");
  gen->add_option("--csp", csp_path, "source CSP");
  gen->add_option("--k", k);
  gen->add_option("--r", r);
  gen->add_option("--delta", delta_s);
  gen->add_option("--alpha", alpha_s);
  gen->add_option("--beta", beta_s);
  gen->add_option("--eps", eps_s);

  std::string problem;
  std::string gamma_s, kappa_s;
  auto* orc = app.add_subcommand("oracle", "brute-force companion problems");
  orc->add_option("--problem", problem)->required()->check(CLI::IsMember({"vc", "ds", "cycles", "tsp", "split", "euler"}));
  orc->add_option("graph", graph_path)->required();
  orc->add_option("--delta", delta_s, "cycles: use the tour parameters for this delta");
  orc->add_option("--alpha", alpha_s);
  orc->add_option("--beta", beta_s);
  orc->add_option("--gamma", gamma_s);
  orc->add_option("--kappa", kappa_s);

  std::string alg_a, alg_b;
  auto* cmp = app.add_subcommand("compare", "run two solvers and diff the optimum");
  cmp->add_option("graph", graph_path)->required();
  cmp->add_option("--delta", delta_s)->required();
  cmp->add_option("--a", alg_a)->required()->check(CLI::IsMember({"brute", "xp-large-delta", "auto"}));
  cmp->add_option("--b", alg_b)->required()->check(CLI::IsMember({"brute", "xp-large-delta", "auto"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  auto emit = [&](const json& j) { out << j.dump() << '\n'; };

  try {
    if (*solve) {
      Graph g = io::load_graph(graph_path);
      Rational delta = rational_arg(delta_s, "--delta");
      if (!budget_s.empty()) {
        Rational K = rational_arg(budget_s, "--budget");
        auto t = brute_force_decide(g, delta, K);
        if (t && !out_path.empty()) io::save(out_path, [&](std::ostream& f) { io::write_tour(f, *t); });
        if (as_json) {
          json j{{"answer", t ? "yes" : "no"}};
          if (t) j["length"] = io::to_json(tour_length(g, *t)), j["tour"] = io::to_json(*t);
          emit(j);
        } else {
          out << (t ? "YES " + tour_length(g, *t).str() : std::string("NO")) << '\n';
        }
        return t ? 0 : 1;
      }
      Tour t = cli_detail::run_algorithm(alg, g, delta, threads);
      if (!out_path.empty()) io::save(out_path, [&](std::ostream& f) { io::write_tour(f, t); });
      if (as_json) emit({{"length", io::to_json(tour_length(g, t))}, {"tour", io::to_json(t)}});
      else out << tour_length(g, t).str() << '\n';
      return 0;
    }
    if (*decide) {
      Graph g = io::load_graph(graph_path);
      Rational delta = rational_arg(delta_s, "--delta");
      Rational K = rational_arg(budget_s, "--budget");
      bool fpt = use_fpt || (!use_brute && delta < Rational(3, 2));
      auto t = fpt ? fpt_decide(g, delta, K) : brute_force_decide(g, delta, K);
      if (t && !out_path.empty()) io::save(out_path, [&](std::ostream& f) { io::write_tour(f, *t); });
      if (as_json) {
        json j{{"answer", t ? "yes" : "no"}, {"method", fpt ? "fpt" : "brute"}};
        if (t) j["length"] = io::to_json(tour_length(g, *t)), j["tour"] = io::to_json(*t);
        emit(j);
      } else {
        out << (t ? "YES " + tour_length(g, *t).str() : std::string("NO")) << '\n';
      }
      return t ? 0 : 1;
    }
    if (*verify) {
      Graph g = io::load_graph(graph_path);
      Tour t = io::load_tour(tour_path, g);
      Rational delta = rational_arg(delta_s, "--delta");
      auto rep = is_delta_tour(g, t, delta);
      if (per_edge) {
        bool ok = true;
        for (EdgeId e = 0; e < g.m(); ++e) ok = ok && edge_covered_by_lemmas(g, t, delta, e);
        if (ok != rep.covered) throw std::logic_error("edge characterisation disagrees with interval coverage");
      }
      Rational len = tour_length(g, t);
      if (as_json) {
        json j{{"covered", rep.covered}, {"length", io::to_json(len)}};
        if (rep.witness) j["witness"] = io::to_json(*rep.witness);
        emit(j);
      } else if (rep.covered) {
        out << "COVERED " << len.str() << '\n';
      } else {
        out << "UNCOVERED " << rep.witness->str() << '\n';
      }
      return rep.covered ? 0 : 1;
    }
    if (*kern) {
      Graph g = io::load_graph(graph_path);
      Rational delta = rational_arg(delta_s, "--delta");
      Rational K = rational_arg(budget_s, "--budget");
      auto kr = kernelize(g, delta, K);
      if (kr.kind == KernelResult::Kind::Kernel) {
        if (!out_path.empty()) io::save(out_path, [&](std::ostream& f) { io::write_graph(f, *kr.kernel); });
        if (!map_path.empty())
          io::save(map_path, [&](std::ostream& f) {
            for (std::size_t i = 0; i < kr.back_map.size(); ++i) f << i << ' ' << kr.back_map[i] << '\n';
          });
      }
      const char* kind = kr.kind == KernelResult::Kind::Kernel ? "kernel"
                         : kr.kind == KernelResult::Kind::TrivialYes ? "trivial-yes"
                                                                     : "trivial-no";
      if (as_json) {
        json j{{"result", kind}};
        if (kr.kernel) j["kernel"] = io::to_json(*kr.kernel), j["map"] = kr.back_map;
        if (kr.witness) j["tour"] = io::to_json(*kr.witness);
        emit(j);
      } else if (kr.kernel) {
        out << "KERNEL " << kr.kernel->n() << ' ' << kr.kernel->m() << '\n';
      } else {
        out << (kr.kind == KernelResult::Kind::TrivialYes ? "TRIVIAL-YES" : "TRIVIAL-NO") << '\n';
      }
      return kr.kind == KernelResult::Kind::TrivialNo ? 1 : 0;
    }
    if (*gen) {
      io::InstanceManifest man;
      man.graph_path = prefix + ".graph";
      man.labels_path = prefix + ".labels";
      man.generator = reduction;
      Graph out_graph;
      Labels labels;
      auto need = [&](const std::string& v, const char* flag) {
        if (v.empty()) throw cli_detail::Usage(std::string(flag) + " is required for --reduction " + reduction);
      };
      if (reduction == "chain") {
        auto cg = chain_gadget(k);
        out_graph = cg.graph;
        labels.resize(out_graph.n());
        for (Vertex v = 0; v < out_graph.n(); ++v) labels.set(v, "chain");
        labels.set(cg.ell, "ell");
        labels.set(cg.r, "r");
        man.delta = delta_s.empty() ? Rational(1, 4) : rational_arg(delta_s, "--delta");
        man.params["k"] = std::to_string(k);
      } else if (reduction == "vc-cycle") {
        need(graph_path, "--graph");
        Rational a = rational_arg(alpha_s, "--alpha"), b = rational_arg(beta_s, "--beta");
        auto inst = vc_to_cycle_subpartition_instance(io::load_graph(graph_path), a, b);
        out_graph = inst.H;
        labels = inst.labels;
        man.delta = delta_s.empty() ? Rational(1, 4) : rational_arg(delta_s, "--delta");
        man.params = {{"source", graph_path}, {"alpha", a.str()}, {"beta", b.str()}, {"chain_k", std::to_string(inst.chain_k)}};
      } else if (reduction == "split-dom") {
        need(graph_path, "--graph");
        need(delta_s, "--delta");
        auto inst = split_dom_to_tour_instance(io::load_graph(graph_path), rational_arg(delta_s, "--delta"));
        out_graph = inst.graph;
        labels.resize(out_graph.n());
        for (Vertex v = 0; v < out_graph.n(); ++v) labels.set(v, "pendant");
        for (Vertex c : inst.split.clique) labels.set(c, "clique");
        for (Vertex c : inst.split.independent) labels.set(c, "independent");
        man.delta = inst.delta;
        man.params = {{"source", graph_path}};
      } else if (reduction == "small-delta") {
        need(graph_path, "--graph");
        auto s = small_delta_np_instance(io::load_graph(graph_path), k, rational_arg(eps_s, "--eps"));
        out_graph = s.inst.graph;
        labels = s.inst.labels;
        man.delta = s.inst.delta;
        man.budget = s.inst.budget;
        man.params = {{"source", graph_path}, {"k", std::to_string(k)}, {"eps0", s.eps0.str()}};
      } else if (reduction == "subdivide") {
        need(graph_path, "--graph");
        Graph src = io::load_graph(graph_path);
        auto s = subdivide(src, k);
        out_graph = s.graph;
        labels.resize(out_graph.n());
        for (Vertex v = 0; v < out_graph.n(); ++v) labels.set(v, v < src.n() ? "original" : "subdivision");
        man.delta = (delta_s.empty() ? Rational(1, 4) : rational_arg(delta_s, "--delta")) * Rational(k);
        man.params = {{"source", graph_path}, {"k", std::to_string(k)}};
      } else {
        need(csp_path, "--csp");
        auto inst = csp_to_tour_instance(io::load_csp(csp_path), r);
        out_graph = inst.graph;
        labels = inst.labels;
        man.delta = inst.delta;
        man.budget = inst.budget;
        man.params = {{"source", csp_path}, {"r", std::to_string(r)}};
      }
      io::save(man.graph_path, [&](std::ostream& f) { io::write_graph(f, out_graph); });
      io::save(*man.labels_path, [&](std::ostream& f) { io::write_labels(f, labels); });
      io::save(prefix + ".manifest", [&](std::ostream& f) { io::write_manifest(f, man); });
      if (as_json) {
        json j{{"graph", man.graph_path}, {"n", out_graph.n()}, {"m", out_graph.m()}, {"delta", io::to_json(man.delta)}};
        if (man.budget) j["budget"] = io::to_json(*man.budget);
        emit(j);
      } else {
        out << "GENERATED " << out_graph.n() << ' ' << out_graph.m() << " delta=" << man.delta.str();
        if (man.budget) out << " budget=" << man.budget->str();
        out << '\n';
      }
      return 0;
    }
    if (*orc) {
      if (problem == "euler") {
        auto [n, e] = cli_detail::load_multigraph(graph_path);
        Tour t = euler_tour(n, e);
        if (as_json) emit({{"tour", io::to_json(t)}});
        else io::write_tour(out, t);
        return 0;
      }
      Graph g = io::load_graph(graph_path);
      if (problem == "vc" || problem == "ds") {
        auto s = problem == "vc" ? min_vertex_cover_bf(g) : min_dominating_set_bf(g);
        if (as_json) emit({{"size", s.size()}, {"set", s}});
        else out << s.size() << ": " << cli_detail::set_str(s) << '\n';
      } else if (problem == "tsp") {
        Rational len = tsp_shortest_bf(g);
        if (as_json) emit({{"length", io::to_json(len)}});
        else out << len.str() << '\n';
      } else if (problem == "split") {
        auto sp = split_partition(g);
        if (as_json) emit({{"clique", sp.clique}, {"independent", sp.independent}});
        else out << "C: " << cli_detail::set_str(sp.clique) << "\nI: " << cli_detail::set_str(sp.independent) << '\n';
      } else {
        CycleParams p;
        if (!delta_s.empty()) {
          p = tour_cycle_params(rational_arg(delta_s, "--delta"));
        } else {
          if (gamma_s.empty() || kappa_s.empty()) throw cli_detail::Usage("cycles needs --delta or all of --alpha --beta --gamma --kappa");
          p = {rational_arg(alpha_s, "--alpha"), rational_arg(beta_s, "--beta"), rational_arg(gamma_s, "--gamma"),
               rational_arg(kappa_s, "--kappa")};
        }
        auto c = min_cycle_subpartition_bf(g, p);
        Rational w = c.weight(g.n());
        if (as_json) {
          emit({{"weight", io::to_json(w)}, {"cycles", c.cycles}});
        } else {
          out << w.str() << '\n';
          for (const auto& cy : c.cycles) out << cli_detail::set_str(cy) << '\n';
        }
      }
      return 0;
    }
    if (*cmp) {
      Graph g = io::load_graph(graph_path);
      Rational delta = rational_arg(delta_s, "--delta");
      Rational la = tour_length(g, cli_detail::run_algorithm(alg_a, g, delta, threads));
      Rational lb = tour_length(g, cli_detail::run_algorithm(alg_b, g, delta, threads));
      if (as_json) emit({{"equal", la == lb}, {"a", io::to_json(la)}, {"b", io::to_json(lb)}});
      else if (la == lb) out << "EQUAL " << la.str() << '\n';
      else out << "DIFFER " << la.str() << ' ' << lb.str() << '\n';
      return la == lb ? 0 : 1;
    }
  } catch (const cli_detail::Usage& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace deltatour
