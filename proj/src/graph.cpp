#include "hamperm/graph.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace hamperm {

Graph::Graph(int n, bool directed) : n_(n), directed_(directed), out_(n + 1) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
  if (directed) in_.resize(n + 1);
}

void Graph::check(int v) const {
  if (v < 1 || v > n_) throw std::invalid_argument("vertex " + std::to_string(v) + " out of range 1.." + std::to_string(n_));
}

namespace {
bool sorted_insert(std::vector<int>& xs, int v) {
  auto it = std::lower_bound(xs.begin(), xs.end(), v);
  if (it != xs.end() && *it == v) return false;
  xs.insert(it, v);
  return true;
}
bool sorted_erase(std::vector<int>& xs, int v) {
  auto it = std::lower_bound(xs.begin(), xs.end(), v);
  if (it == xs.end() || *it != v) return false;
  xs.erase(it);
  return true;
}
}  // namespace

void Graph::add_edge(int u, int v) {
  check(u);
  check(v);
  if (u == v) throw std::invalid_argument("loop at vertex " + std::to_string(u));
  sorted_insert(out_[u], v);
  if (directed_)
    sorted_insert(in_[v], u);
  else
    sorted_insert(out_[v], u);
}

bool Graph::remove_edge(int u, int v) {
  bool removed = sorted_erase(out_[u], v);
  if (directed_)
    sorted_erase(in_[v], u);
  else
    sorted_erase(out_[v], u);
  return removed;
}

bool Graph::has_arc(int u, int v) const {
  const auto& xs = out_[u];
  return std::binary_search(xs.begin(), xs.end(), v);
}

int Graph::min_degree() const {
  int best = n_ == 0 ? 0 : INT32_MAX;
  for (int v = 1; v <= n_; ++v) {
    best = std::min(best, out_degree(v));
    if (directed_) best = std::min(best, in_degree(v));
  }
  return best;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> es;
  for (int u = 1; u <= n_; ++u)
    for (int v : out_[u])
      if (directed_ || u < v) es.emplace_back(u, v);
  return es;
}

std::size_t Graph::edge_count() const {
  std::size_t arcs = 0;
  for (int u = 1; u <= n_; ++u) arcs += out_[u].size();
  return directed_ ? arcs : arcs / 2;
}

bool Graph::operator==(const Graph& o) const {
  return n_ == o.n_ && directed_ == o.directed_ && out_ == o.out_ && in_ == o.in_;
}

namespace {

std::vector<int> parse_path_token(const std::string& tok) {
  std::vector<int> path;
  std::stringstream ss(tok);
  std::string part;
  while (std::getline(ss, part, '-')) {
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("bad vertex token '" + tok + "'");
    path.push_back(std::stoi(part));
  }
  if (path.empty()) throw std::invalid_argument("empty vertex token");
  return path;
}

std::vector<std::string> split_tokens(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',' || ch == ' ' || ch == '\t' || ch == '\r') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

void add_path(Graph& g, const std::vector<int>& p) {
  for (size_t i = 0; i + 1 < p.size(); ++i) g.add_edge(p[i], p[i + 1]);
}

}  // namespace

Graph parse_graph(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  std::optional<Graph> g;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    auto toks = split_tokens(line);
    if (toks.empty()) continue;
    try {
      if (!g) {
        if (toks.size() != 2 || (toks[0] != "graph" && toks[0] != "digraph"))
          throw std::invalid_argument("expected header 'graph n' or 'digraph n'");
        int n = std::stoi(toks[1]);
        if (n < 1) throw std::invalid_argument("vertex count must be positive");
        g.emplace(n, toks[0] == "digraph");
        continue;
      }
      auto colon = line.find(':');
      if (colon != std::string::npos) {
        auto tail = parse_path_token(split_tokens(line.substr(0, colon)).at(0));
        add_path(*g, tail);
        for (const auto& tok : split_tokens(line.substr(colon + 1))) {
          auto head = parse_path_token(tok);
          add_path(*g, head);
          g->add_edge(tail.back(), head.front());
        }
      } else {
        if (toks.size() != 2) throw std::invalid_argument("expected 'u v' or 'v: a, b'");
        g->add_edge(std::stoi(toks[0]), std::stoi(toks[1]));
      }
    } catch (const std::exception& e) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!g) throw std::invalid_argument("missing graph header");
  return *g;
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_graph(ss.str());
}

std::string format_graph(const Graph& g) {
  std::ostringstream os;
  os << (g.directed() ? "digraph " : "graph ") << g.n() << '\n';
  for (int v = 1; v <= g.n(); ++v) {
    if (g.out(v).empty()) continue;
    os << v << ':';
    for (size_t i = 0; i < g.out(v).size(); ++i) os << (i ? ", " : " ") << g.out(v)[i];
    os << '\n';
  }
  return os.str();
}

namespace {

std::string join_path(const std::vector<int>& p) {
  std::string s;
  for (size_t i = 0; i < p.size(); ++i) s += (i ? "-" : "") + std::to_string(p[i]);
  return s;
}

// Returns the forced chains once the reduction reaches a fixed point, or sets `cycle`
// when the forced edges close up into a circuit through every vertex.
std::vector<std::vector<int>> reduce_undirected(Graph& red, std::optional<std::vector<int>>& cycle) {
  int n = red.n();
  while (true) {
    bool changed = false;
    std::vector<std::vector<int>> forced(n + 1);
    for (int v = 1; v <= n; ++v) {
      if (red.degree(v) < 2)
        throw NotHamiltonian("vertex " + std::to_string(v) + " has degree " + std::to_string(red.degree(v)));
      if (red.degree(v) == 2)
        for (int w : red.out(v)) {
          sorted_insert(forced[v], w);
          sorted_insert(forced[w], v);
        }
    }
    for (int v = 1; v <= n; ++v) {
      if (forced[v].size() > 2)
        throw NotHamiltonian("vertex " + std::to_string(v) + " is forced onto " + std::to_string(forced[v].size()) + " circuit edges");
      if (forced[v].size() == 2 && red.degree(v) > 2) {
        auto nb = red.out(v);
        for (int w : nb)
          if (!std::binary_search(forced[v].begin(), forced[v].end(), w)) red.remove_edge(v, w);
        changed = true;
      }
    }
    if (changed) continue;

    std::vector<char> seen(n + 1, 0);
    std::vector<std::vector<int>> chains;
    for (int v = 1; v <= n; ++v) {
      if (seen[v] || forced[v].size() != 1) continue;
      std::vector<int> chain{v};
      seen[v] = 1;
      int prev = 0, cur = v;
      while (true) {
        int next = 0;
        for (int w : forced[cur])
          if (w != prev) next = w;
        if (!next || seen[next]) break;
        chain.push_back(next);
        seen[next] = 1;
        prev = cur;
        cur = next;
      }
      chains.push_back(chain);
    }
    for (int v = 1; v <= n; ++v) {
      if (seen[v] || forced[v].empty()) continue;
      std::vector<int> ring{v};
      seen[v] = 1;
      int prev = 0, cur = v;
      while (true) {
        int next = 0;
        for (int w : forced[cur])
          if (w != prev && !seen[w]) next = w;
        if (!next) break;
        ring.push_back(next);
        seen[next] = 1;
        prev = cur;
        cur = next;
      }
      if (static_cast<int>(ring.size()) == n) {
        cycle = ring;
        return {};
      }
      throw NotHamiltonian("degree-2 cycle component (" + join_path(ring) + ") misses other vertices");
    }
    for (const auto& c : chains) {
      int u = c.front(), w = c.back();
      if (c.size() > 2 && red.has_arc(u, w)) {
        red.remove_edge(u, w);
        changed = true;
      }
    }
    if (!changed) return chains;
  }
}

std::vector<std::vector<int>> reduce_directed(Graph& red, std::optional<std::vector<int>>& cycle) {
  int n = red.n();
  while (true) {
    bool changed = false;
    std::vector<int> fout(n + 1, 0), fin(n + 1, 0);
    auto force = [&](int u, int w) {
      if ((fout[u] && fout[u] != w) || (fin[w] && fin[w] != u))
        throw NotHamiltonian("conflicting forced arcs at " + std::to_string(u) + "->" + std::to_string(w));
      fout[u] = w;
      fin[w] = u;
    };
    for (int v = 1; v <= n; ++v) {
      if (red.out_degree(v) == 0 || red.in_degree(v) == 0)
        throw NotHamiltonian("vertex " + std::to_string(v) + " has in-degree " + std::to_string(red.in_degree(v)) +
                             " and out-degree " + std::to_string(red.out_degree(v)));
    }
    for (int v = 1; v <= n; ++v) {
      if (red.out_degree(v) == 1) force(v, red.out(v)[0]);
      if (red.in_degree(v) == 1) force(red.in(v)[0], v);
    }
    for (int u = 1; u <= n; ++u) {
      if (!fout[u]) continue;
      int w = fout[u];
      auto outs = red.out(u);
      for (int x : outs)
        if (x != w) red.remove_edge(u, x), changed = true;
      auto ins = red.in(w);
      for (int x : ins)
        if (x != u) red.remove_edge(x, w), changed = true;
    }
    if (changed) continue;

    std::vector<char> seen(n + 1, 0);
    std::vector<std::vector<int>> chains;
    for (int v = 1; v <= n; ++v) {
      if (fin[v] || !fout[v]) continue;
      std::vector<int> chain{v};
      seen[v] = 1;
      for (int w = fout[v]; w; w = fout[w]) {
        chain.push_back(w);
        seen[w] = 1;
      }
      chains.push_back(chain);
    }
    for (int v = 1; v <= n; ++v) {
      if (seen[v] || !fout[v]) continue;
      std::vector<int> ring;
      for (int w = v; !seen[w]; w = fout[w]) {
        ring.push_back(w);
        seen[w] = 1;
      }
      if (static_cast<int>(ring.size()) == n) {
        cycle = ring;
        return {};
      }
      throw NotHamiltonian("forced directed cycle (" + join_path(ring) + ") misses other vertices");
    }
    for (const auto& c : chains) {
      if (red.has_arc(c.back(), c.front())) {
        red.remove_edge(c.back(), c.front());
        changed = true;
      }
    }
    if (!changed) return chains;
  }
}

}  // namespace

ContractedGraph ContractedGraph::trivial(const Graph& g) {
  ContractedGraph cg;
  cg.base_ = g;
  cg.reduced_ = g;
  cg.paths_.assign(1, {});
  for (int v = 1; v <= g.n(); ++v) cg.paths_.push_back({v});
  cg.index();
  return cg;
}

ContractedGraph ContractedGraph::contract(const Graph& g) {
  ContractedGraph cg;
  cg.base_ = g;
  cg.reduced_ = g;
  std::optional<std::vector<int>> cycle;
  auto chains = g.directed() ? reduce_directed(cg.reduced_, cycle) : reduce_undirected(cg.reduced_, cycle);
  if (cycle) {
    // The whole graph is forced; keep every vertex plain and remember the circuit.
    cg.reduced_ = g;
    cg.paths_.assign(1, {});
    for (int v = 1; v <= g.n(); ++v) cg.paths_.push_back({v});
    cg.forced_circuit_ = *cycle;
    cg.index();
    return cg;
  }
  std::vector<char> covered(g.n() + 1, 0);
  std::vector<std::vector<int>> paths;
  for (auto c : chains) {
    if (!g.directed() && c.back() < c.front()) std::reverse(c.begin(), c.end());
    for (int v : c) covered[v] = 1;
    paths.push_back(c);
  }
  for (int v = 1; v <= g.n(); ++v)
    if (!covered[v]) paths.push_back({v});
  std::sort(paths.begin(), paths.end(), [](const auto& a, const auto& b) {
    return *std::min_element(a.begin(), a.end()) < *std::min_element(b.begin(), b.end());
  });
  cg.paths_.assign(1, {});
  for (auto& p : paths) cg.paths_.push_back(std::move(p));
  cg.index();
  return cg;
}

void ContractedGraph::index() {
  int n = base_.n();
  owner_.assign(n + 1, 0);
  for (int x = 1; x <= m(); ++x)
    for (int v : paths_[x]) owner_[v] = x;
  nbr_out_.assign(m() + 1, {});
  nbr_in_.assign(m() + 1, {});
  for (int x = 1; x <= m(); ++x) {
    std::vector<int> ends{last(x)};
    if (!directed() && is_r(x)) ends.push_back(first(x));
    for (int e : ends)
      for (int w : reduced_.out(e))
        if (owner_[w] != x) sorted_insert(nbr_out_[x], owner_[w]);
    if (directed())
      for (int w : reduced_.in(first(x)))
        if (owner_[w] != x) sorted_insert(nbr_in_[x], owner_[w]);
  }
  if (!directed()) nbr_in_ = nbr_out_;
}

bool ContractedGraph::arc(int x, int sx, int y, int sy) const {
  if (x == y) return false;
  return reduced_.has_arc(exit(x, sx), entry(y, sy));
}

int ContractedGraph::degree(int x, int sign) const {
  int e = exit(x, sign), d = 0;
  for (int w : reduced_.out(e))
    if (owner_[w] != x) ++d;
  return d;
}

std::string ContractedGraph::label(int x, int sign) const {
  auto p = paths_[x];
  if (sign < 0) std::reverse(p.begin(), p.end());
  return join_path(p);
}

std::pair<int, int> ContractedGraph::find_label(const std::string& token) const {
  auto p = parse_path_token(token);
  for (int v : p)
    if (v < 1 || v > base_.n()) throw std::invalid_argument("vertex token '" + token + "' out of range");
  int x = owner_[p.front()];
  if (paths_[x] == p) return {x, 1};
  auto r = p;
  std::reverse(r.begin(), r.end());
  if (paths_[x] == r && !directed()) return {x, -1};
  throw std::invalid_argument("'" + token + "' is not a contracted vertex");
}

std::vector<OrientedVertex> parse_contracted_circuit(const ContractedGraph& cg, const std::string& text) {
  auto open = text.find('('), close = text.rfind(')');
  if (open == std::string::npos || close == std::string::npos || close < open)
    throw std::invalid_argument("expected a parenthesized circuit");
  std::vector<OrientedVertex> out;
  std::vector<char> seen(cg.m() + 1, 0);
  for (const auto& tok : split_tokens(text.substr(open + 1, close - open - 1))) {
    auto [x, s] = cg.find_label(tok);
    if (seen[x]) throw std::invalid_argument("contracted vertex " + tok + " repeated");
    seen[x] = 1;
    out.push_back({x, s});
  }
  if (static_cast<int>(out.size()) != cg.m())
    throw std::invalid_argument("circuit has " + std::to_string(out.size()) + " of " + std::to_string(cg.m()) + " contracted vertices");
  return out;
}

std::string format_contracted_circuit(const ContractedGraph& cg, const std::vector<OrientedVertex>& circuit) {
  size_t start = 0;
  for (size_t i = 0; i < circuit.size(); ++i)
    if (circuit[i].id < circuit[start].id) start = i;
  std::string s = "(";
  for (size_t k = 0; k < circuit.size(); ++k) {
    const auto& ov = circuit[(start + k) % circuit.size()];
    s += (k ? " " : "") + cg.label(ov.id, ov.sign);
  }
  return s + ")";
}

std::vector<int> expand_sequence(const ContractedGraph& cg, const std::vector<OrientedVertex>& circuit) {
  std::vector<int> seq;
  for (const auto& ov : circuit) {
    const auto& p = cg.path(ov.id);
    if (ov.sign > 0)
      seq.insert(seq.end(), p.begin(), p.end());
    else
      seq.insert(seq.end(), p.rbegin(), p.rend());
  }
  return seq;
}

std::optional<MissingEdge> verify_circuit(const Graph& g, const std::vector<int>& seq) {
  if (static_cast<int>(seq.size()) != g.n())
    throw std::invalid_argument("circuit has " + std::to_string(seq.size()) + " vertices, graph has " + std::to_string(g.n()));
  std::vector<char> seen(g.n() + 1, 0);
  for (int v : seq) {
    if (v < 1 || v > g.n() || seen[v]) throw std::invalid_argument("circuit is not a permutation of the vertices");
    seen[v] = 1;
  }
  for (size_t i = 0; i < seq.size(); ++i) {
    int u = seq[i], v = seq[(i + 1) % seq.size()];
    if (!g.has_arc(u, v)) return MissingEdge{u, v};
  }
  return std::nullopt;
}

std::vector<int> expand_circuit(const ContractedGraph& cg, const std::vector<OrientedVertex>& circuit) {
  auto seq = expand_sequence(cg, circuit);
  if (auto miss = verify_circuit(cg.base(), seq))
    throw std::runtime_error("missing edge " + std::to_string(miss->u) + "-" + std::to_string(miss->v));
  return seq;
}

}  // namespace hamperm
