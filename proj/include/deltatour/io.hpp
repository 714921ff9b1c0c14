#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "deltatour/reductions.hpp"
#include "deltatour/tour.hpp"

namespace deltatour::io {

namespace detail {

// Non-blank lines with '#' comments stripped, split on whitespace.
inline std::vector<std::vector<std::string>> tokenized_lines(std::istream& in) {
  std::vector<std::vector<std::string>> out;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::vector<std::string> tok;
    for (std::string w; ss >> w;) tok.push_back(w);
    if (!tok.empty()) out.push_back(std::move(tok));
  }
  return out;
}

inline long long to_int(const std::string& s) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used == s.size()) return v;
  } catch (const std::logic_error&) {
  }
  throw Error(ErrorCode::Parse, "expected an integer, got '" + s + "'");
}

inline std::ifstream open_in(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::Parse, "cannot open " + path);
  return f;
}

inline std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::Parse, "cannot write " + path);
  return f;
}

}  // namespace detail

// graph: "n m" then m lines "u v"
inline Graph read_graph(std::istream& in) {
  auto lines = detail::tokenized_lines(in);
  if (lines.empty() || lines[0].size() != 2) throw Error(ErrorCode::Parse, "graph header must be 'n m'");
  long long n = detail::to_int(lines[0][0]), m = detail::to_int(lines[0][1]);
  if (n < 0 || m < 0) throw Error(ErrorCode::Parse, "negative graph size");
  if (static_cast<long long>(lines.size()) - 1 != m) throw Error(ErrorCode::Parse, "edge count does not match header");
  std::vector<std::pair<Vertex, Vertex>> e;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].size() != 2) throw Error(ErrorCode::Parse, "edge line must be 'u v'");
    e.emplace_back(static_cast<Vertex>(detail::to_int(lines[i][0])), static_cast<Vertex>(detail::to_int(lines[i][1])));
  }
  for (auto [a, b] : e)
    if (a < 0 || b < 0 || a >= n || b >= n) throw Error(ErrorCode::DanglingVertexId, "edge endpoint out of range");
  return build_graph(e, static_cast<int>(n));
}

inline void write_graph(std::ostream& out, const Graph& g) {
  out << g.n() << ' ' << g.m() << '\n';
  for (auto e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

inline Point parse_point(const Graph& g, const std::vector<std::string>& tok) {
  if (tok.size() == 1) {
    Vertex v = static_cast<Vertex>(detail::to_int(tok[0]));
    if (v < 0 || v >= g.n()) throw Error(ErrorCode::PointNotOnGraph, "vertex out of range");
    return Point::vertex(v);
  }
  if (tok.size() != 3) throw Error(ErrorCode::Parse, "stop must be 'u' or 'u v p/q'");
  return make_point(g, static_cast<Vertex>(detail::to_int(tok[0])), static_cast<Vertex>(detail::to_int(tok[1])),
                    Rational::parse(tok[2]));
}

inline Tour read_tour(std::istream& in, const Graph& g) {
  Tour t;
  for (const auto& tok : detail::tokenized_lines(in)) t.stops.push_back(parse_point(g, tok));
  validate_tour(g, t);
  return t;
}

inline void write_tour(std::ostream& out, const Tour& t) {
  for (const auto& p : t.stops) out << p.str() << '\n';
}

inline void write_labels(std::ostream& out, const Labels& l) {
  for (std::size_t v = 0; v < l.size(); ++v)
    if (l.has(static_cast<Vertex>(v))) out << v << ' ' << l.get(static_cast<Vertex>(v)) << '\n';
}

inline Labels read_labels(std::istream& in) {
  Labels l;
  for (const auto& tok : detail::tokenized_lines(in)) {
    if (tok.size() < 2) throw Error(ErrorCode::Parse, "label line must be 'vertex label'");
    std::string name = tok[1];
    for (std::size_t i = 2; i < tok.size(); ++i) name += " " + tok[i];
    l.set(static_cast<Vertex>(detail::to_int(tok[0])), name);
  }
  return l;
}

struct InstanceManifest {
  std::string graph_path;
  Rational delta;
  std::optional<Rational> budget;
  std::optional<std::string> labels_path;
  std::string generator;
  std::map<std::string, std::string> params;

  bool operator==(const InstanceManifest&) const = default;
};

// key=value lines; parameters go under "param.<name>"
inline void write_manifest(std::ostream& out, const InstanceManifest& m) {
  out << "graph=" << m.graph_path << '\n';
  out << "delta=" << m.delta.str() << '\n';
  if (m.budget) out << "budget=" << m.budget->str() << '\n';
  if (m.labels_path) out << "labels=" << *m.labels_path << '\n';
  out << "generator=" << m.generator << '\n';
  for (const auto& [k, v] : m.params) out << "param." << k << '=' << v << '\n';
}

inline InstanceManifest read_manifest(std::istream& in) {
  InstanceManifest m;
  bool has_graph = false, has_delta = false;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::Parse, "manifest line without '='");
    std::string k = line.substr(0, eq), v = line.substr(eq + 1);
    if (k == "graph") {
      m.graph_path = v;
      has_graph = true;
    } else if (k == "delta") {
      m.delta = Rational::parse(v);
      has_delta = true;
    } else if (k == "budget") {
      m.budget = Rational::parse(v);
    } else if (k == "labels") {
      m.labels_path = v;
    } else if (k == "generator") {
      m.generator = v;
    } else if (k.rfind("param.", 0) == 0) {
      m.params[k.substr(6)] = v;
    } else {
      throw Error(ErrorCode::Parse, "unknown manifest key '" + k + "'");
    }
  }
  if (!has_graph || !has_delta) throw Error(ErrorCode::Parse, "manifest needs graph and delta");
  return m;
}

// CSP: "variables domain" then one line per constraint "a b x:y x:y ..."
inline BinaryCsp read_csp(std::istream& in) {
  auto lines = detail::tokenized_lines(in);
  if (lines.empty() || lines[0].size() != 2) throw Error(ErrorCode::Parse, "CSP header must be 'variables domain'");
  BinaryCsp c;
  c.variables = static_cast<int>(detail::to_int(lines[0][0]));
  c.domain = static_cast<int>(detail::to_int(lines[0][1]));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].size() < 2) throw Error(ErrorCode::Parse, "constraint line must start with 'a b'");
    BinaryCsp::Constraint con;
    con.a = static_cast<int>(detail::to_int(lines[i][0]));
    con.b = static_cast<int>(detail::to_int(lines[i][1]));
    for (std::size_t j = 2; j < lines[i].size(); ++j) {
      const auto& w = lines[i][j];
      auto colon = w.find(':');
      if (colon == std::string::npos) throw Error(ErrorCode::Parse, "allowed pair must be 'x:y'");
      int x = static_cast<int>(detail::to_int(w.substr(0, colon)));
      int y = static_cast<int>(detail::to_int(w.substr(colon + 1)));
      if (x < 1 || y < 1 || x > c.domain || y > c.domain) throw Error(ErrorCode::Parse, "value outside the domain");
      con.allowed.emplace_back(x, y);
    }
    c.constraints.push_back(std::move(con));
  }
  return c;
}

inline void write_csp(std::ostream& out, const BinaryCsp& c) {
  out << c.variables << ' ' << c.domain << '\n';
  for (const auto& con : c.constraints) {
    out << con.a << ' ' << con.b;
    for (auto [x, y] : con.allowed) out << ' ' << x << ':' << y;
    out << '\n';
  }
}

inline Graph load_graph(const std::string& path) {
  auto f = detail::open_in(path);
  return read_graph(f);
}
inline Tour load_tour(const std::string& path, const Graph& g) {
  auto f = detail::open_in(path);
  return read_tour(f, g);
}
inline InstanceManifest load_manifest(const std::string& path) {
  auto f = detail::open_in(path);
  return read_manifest(f);
}
inline BinaryCsp load_csp(const std::string& path) {
  auto f = detail::open_in(path);
  return read_csp(f);
}
template <class Fn>
void save(const std::string& path, Fn&& fn) {
  auto f = detail::open_out(path);
  fn(f);
}

// ---- json mirrors

inline nlohmann::json to_json(const Rational& r) { return {{"num", r.num()}, {"den", r.den()}}; }

inline nlohmann::json to_json(const Point& p) {
  if (p.is_vertex()) return {{"vertex", p.u}};
  return {{"u", p.u}, {"v", p.v}, {"lambda", to_json(p.lambda)}};
}

inline nlohmann::json to_json(const Tour& t) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& p : t.stops) a.push_back(to_json(p));
  return a;
}

inline nlohmann::json to_json(const Graph& g) {
  nlohmann::json e = nlohmann::json::array();
  for (auto ed : g.edges()) e.push_back({ed.u, ed.v});
  return {{"n", g.n()}, {"edges", e}};
}

}  // namespace deltatour::io
