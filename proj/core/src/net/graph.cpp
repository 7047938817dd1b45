#include "congesim/net/graph.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

#include "congesim/rng.hpp"

namespace congesim::net {

Graph::Graph(int n, std::vector<std::pair<NodeId, NodeId>> edge_pairs) : n_(n) {
  std::set<std::pair<NodeId, NodeId>> seen;
  for (auto [a, b] : edge_pairs) {
    if (a == b) throw std::invalid_argument("graph: self loop");
    if (a < 0 || b < 0 || a >= n || b >= n) throw std::invalid_argument("graph: node out of range");
    if (a > b) std::swap(a, b);
    if (!seen.insert({a, b}).second) throw std::invalid_argument("graph: duplicate edge");
  }
  edges_.reserve(seen.size());
  for (auto [a, b] : seen) edges_.push_back({a, b});
  adj_.assign(n_, {});
  inc_.assign(n_, {});
  for (EdgeId e = 0; e < int(edges_.size()); ++e) {
    adj_[edges_[e].u].push_back(edges_[e].v);
    adj_[edges_[e].v].push_back(edges_[e].u);
    inc_[edges_[e].u].push_back({edges_[e].v, e});
    inc_[edges_[e].v].push_back({edges_[e].u, e});
  }
  for (int v = 0; v < n_; ++v) {
    std::sort(adj_[v].begin(), adj_[v].end());
    std::sort(inc_[v].begin(), inc_[v].end());
  }
}

EdgeId Graph::edge_id(NodeId u, NodeId v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) return -1;
  if (u > v) std::swap(u, v);
  const auto& lst = inc_[u];
  auto it = std::lower_bound(lst.begin(), lst.end(), std::make_pair(v, EdgeId(-1)));
  if (it != lst.end() && it->first == v) return it->second;
  return -1;
}

DirEdgeId Graph::dir_edge_id(NodeId from, NodeId to) const {
  EdgeId e = edge_id(from, to);
  if (e < 0) throw std::invalid_argument("graph: no such edge");
  return 2 * e + (from == edges_[e].u ? 0 : 1);
}

NodeId Graph::dir_source(DirEdgeId d) const {
  const Edge& e = edges_[d / 2];
  return d % 2 == 0 ? e.u : e.v;
}

NodeId Graph::dir_target(DirEdgeId d) const {
  const Edge& e = edges_[d / 2];
  return d % 2 == 0 ? e.v : e.u;
}

bool Graph::connected() const {
  if (n_ == 0) return true;
  std::vector<char> vis(n_, 0);
  std::queue<NodeId> q;
  q.push(0);
  vis[0] = 1;
  int cnt = 1;
  while (!q.empty()) {
    NodeId v = q.front();
    q.pop();
    for (NodeId w : adj_[v])
      if (!vis[w]) {
        vis[w] = 1;
        ++cnt;
        q.push(w);
      }
  }
  return cnt == n_;
}

Graph Graph::parse_edge_list(const std::string& text) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  int maxv = -1;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    long long a, b;
    if (!(ls >> a)) continue;  // blank
    if (!(ls >> b)) throw std::invalid_argument("edge list line " + std::to_string(lineno) +
                                                ": expected two node ids");
    long long extra;
    if (ls >> extra) throw std::invalid_argument("edge list line " + std::to_string(lineno) +
                                                 ": trailing tokens");
    edges.push_back({NodeId(a), NodeId(b)});
    maxv = std::max(maxv, int(std::max(a, b)));
  }
  return Graph(maxv + 1, std::move(edges));
}

std::string Graph::to_edge_list() const {
  std::ostringstream out;
  for (const Edge& e : edges_) out << e.u << " " << e.v << "\n";
  return out.str();
}

Graph Graph::clique(int n) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.push_back({u, v});
  return Graph(n, std::move(edges));
}

Graph Graph::cycle(int n) {
  if (n < 3) throw std::invalid_argument("cycle: need n >= 3");
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (int v = 0; v < n; ++v) edges.push_back({v, (v + 1) % n});
  return Graph(n, std::move(edges));
}

Graph Graph::path(int n) {
  if (n < 2) throw std::invalid_argument("path: need n >= 2");
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (int v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
  return Graph(n, std::move(edges));
}

Graph Graph::random_regular(int n, int d, uint64_t seed) {
  if (n * d % 2 != 0) throw std::invalid_argument("random_regular: n*d must be even");
  if (d >= n) throw std::invalid_argument("random_regular: need d < n");
  RngStream rng(seed, 0x72656775);
  // pairing model with switch repairs: plain rejection never yields a simple
  // graph once d grows past ~5
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::vector<int> stubs;
    stubs.reserve(n * d);
    for (int v = 0; v < n; ++v)
      for (int i = 0; i < d; ++i) stubs.push_back(v);
    for (size_t i = stubs.size(); i > 1; --i) std::swap(stubs[i - 1], stubs[rng.below(i)]);

    int m = n * d / 2;
    std::vector<std::pair<int, int>> pairs(m);
    for (int i = 0; i < m; ++i) pairs[i] = {stubs[2 * i], stubs[2 * i + 1]};

    auto bad = [](const std::pair<int, int>& p) { return p.first == p.second; };
    auto key = [](int a, int b) { return a < b ? std::pair(a, b) : std::pair(b, a); };
    bool ok = false;
    for (int pass = 0; pass < 200 * m && !ok; ++pass) {
      std::set<std::pair<int, int>> used;
      int offender = -1;
      for (int i = 0; i < m; ++i) {
        if (bad(pairs[i]) || !used.insert(key(pairs[i].first, pairs[i].second)).second) {
          offender = i;
          break;
        }
      }
      if (offender < 0) {
        ok = true;
        break;
      }
      // switch the offending pair with a random partner; re-checked next pass
      int j = int(rng.below(uint64_t(m)));
      if (j == offender) continue;
      std::swap(pairs[offender].second, pairs[j].second);
    }
    if (!ok) continue;

    std::vector<std::pair<NodeId, NodeId>> edges(pairs.begin(), pairs.end());
    Graph g(n, std::move(edges));
    if (g.connected()) return g;
  }
  throw std::runtime_error("random_regular: no simple connected graph found");
}

}  // namespace congesim::net
