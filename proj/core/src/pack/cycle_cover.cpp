#include "congesim/pack/cycle_cover.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "congesim/pack/connectivity.hpp"
#include "json.hpp"

namespace congesim::pack {

namespace {

std::set<int> path_edges(const net::Graph& g, const Path& p) {
  std::set<int> es;
  for (size_t i = 0; i + 1 < p.size(); ++i) {
    int e = g.edge_id(p[i], p[i + 1]);
    if (e < 0) throw std::invalid_argument("cycle cover: path uses a non-edge");
    es.insert(e);
  }
  return es;
}

std::set<int> system_edges(const net::Graph& g, const std::vector<Path>& sys) {
  std::set<int> es;
  for (const auto& p : sys) {
    auto pe = path_edges(g, p);
    es.insert(pe.begin(), pe.end());
  }
  return es;
}

}  // namespace

CycleCover ft_cycle_cover(const net::Graph& g, int f) {
  if (f < 0) throw std::invalid_argument("cycle cover: need f >= 0");
  int k = 2 * f + 1;
  CycleCover cover;
  cover.f = f;
  cover.paths.resize(g.edge_count());
  std::vector<int> mult(g.edge_count(), 0);

  for (int e = 0; e < g.edge_count(); ++e) {
    net::NodeId u = g.edges()[e].u, v = g.edges()[e].v;
    auto paths = edge_disjoint_paths(g, u, v);
    if (int(paths.size()) < k)
      throw std::invalid_argument("cycle cover: graph is not " + std::to_string(k) +
                                  "-edge-connected at edge (" + std::to_string(u) + "," +
                                  std::to_string(v) + ")");
    // the direct edge always augments first (shortest), but make it explicit
    std::stable_sort(paths.begin(), paths.end(),
                     [](const Path& a, const Path& b) { return a.size() < b.size(); });
    if (paths[0].size() != 2) {
      // flow routed around the edge; force the edge in and drop the path
      // that uses it, if any, else the longest
      size_t drop = paths.size() - 1;
      for (size_t i = 0; i < paths.size(); ++i)
        if (path_edges(g, paths[i]).count(e)) drop = i;
      paths.erase(paths.begin() + drop);
      paths.insert(paths.begin(), Path{u, v});
    }
    paths.resize(k);
    for (const auto& p : paths) {
      for (int pe : path_edges(g, p)) ++mult[pe];
      cover.dilation = std::max(cover.dilation, int(p.size()) - 1);
    }
    cover.paths[e] = std::move(paths);
  }
  for (int m : mult) cover.congestion = std::max(cover.congestion, m);
  return cover;
}

int conflict_color(const net::Graph& g, CycleCover& cover) {
  int m = g.edge_count();
  std::vector<std::set<int>> sys(m);
  for (int e = 0; e < m; ++e) sys[e] = system_edges(g, cover.paths[e]);

  auto conflict = [&](int a, int b) {
    const auto& small = sys[a].size() < sys[b].size() ? sys[a] : sys[b];
    const auto& big = sys[a].size() < sys[b].size() ? sys[b] : sys[a];
    for (int e : small)
      if (big.count(e)) return true;
    return false;
  };

  // greedy, highest conflict degree first
  std::vector<int> order(m), deg(m, 0);
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      if (conflict(a, b)) ++deg[a], ++deg[b];
  for (int i = 0; i < m; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return deg[a] > deg[b]; });

  std::vector<int> color(m, -1);
  int used = 0;
  for (int e : order) {
    std::set<int> taken;
    for (int o = 0; o < m; ++o)
      if (o != e && color[o] >= 0 && conflict(e, o)) taken.insert(color[o]);
    int c = 0;
    while (taken.count(c)) ++c;
    color[e] = c;
    used = std::max(used, c + 1);
  }

  // merge pass: collapse a color class into an earlier one when conflict-free
  for (int c = used - 1; c > 0; --c) {
    for (int t = 0; t < c; ++t) {
      bool can = true;
      for (int a = 0; a < m && can; ++a) {
        if (color[a] != c) continue;
        for (int b = 0; b < m && can; ++b)
          if (color[b] == t && conflict(a, b)) can = false;
      }
      if (can) {
        for (int a = 0; a < m; ++a)
          if (color[a] == c) color[a] = t;
        break;
      }
    }
  }
  std::set<int> distinct(color.begin(), color.end());
  // renumber densely
  std::vector<int> remap(used, -1);
  int next = 0;
  for (int c : distinct) remap[c] = next++;
  for (int& c : color) c = remap[c];

  cover.coloring = std::move(color);
  cover.colors = next;
  return next;
}

CoverCheck validate_cycle_cover(const net::Graph& g, const CycleCover& cover) {
  if (int(cover.paths.size()) != g.edge_count()) return {false, "one system per edge required"};
  int dil = 0;
  std::vector<int> mult(g.edge_count(), 0);
  for (int e = 0; e < g.edge_count(); ++e) {
    const auto& sys = cover.paths[e];
    if (int(sys.size()) != 2 * cover.f + 1)
      return {false, "edge " + std::to_string(e) + ": wrong path count"};
    net::NodeId u = g.edges()[e].u, v = g.edges()[e].v;
    std::set<int> seen;
    bool has_direct = false;
    for (const auto& p : sys) {
      if (p.size() < 2 || p.front() != u || p.back() != v)
        return {false, "edge " + std::to_string(e) + ": path endpoints wrong"};
      if (p.size() == 2) has_direct = true;
      std::set<int> pe;
      try {
        pe = path_edges(g, p);
      } catch (const std::invalid_argument&) {
        return {false, "edge " + std::to_string(e) + ": path off the graph"};
      }
      for (int x : pe) {
        if (seen.count(x)) return {false, "edge " + std::to_string(e) + ": paths share an edge"};
        seen.insert(x);
        ++mult[x];
      }
      dil = std::max(dil, int(p.size()) - 1);
    }
    if (!has_direct) return {false, "edge " + std::to_string(e) + ": direct edge missing"};
  }
  if (dil > cover.dilation) return {false, "dilation exceeds claim"};
  for (int m : mult)
    if (m > cover.congestion) return {false, "congestion exceeds claim"};
  if (!cover.coloring.empty()) {
    if (int(cover.coloring.size()) != g.edge_count()) return {false, "coloring size wrong"};
    for (int a = 0; a < g.edge_count(); ++a)
      for (int b = a + 1; b < g.edge_count(); ++b) {
        if (cover.coloring[a] != cover.coloring[b]) continue;
        auto ea = system_edges(g, cover.paths[a]);
        auto eb = system_edges(g, cover.paths[b]);
        for (int x : ea)
          if (eb.count(x))
            return {false, "same-color systems " + std::to_string(a) + "," + std::to_string(b) +
                               " intersect"};
      }
  }
  return {true, ""};
}

std::string to_json(const CycleCover& cover) {
  nlohmann::json j;
  j["f"] = cover.f;
  j["dilation"] = cover.dilation;
  j["congestion"] = cover.congestion;
  j["colors"] = cover.colors;
  j["coloring"] = cover.coloring;
  j["paths"] = cover.paths;
  return j.dump(2);
}

CycleCover cycle_cover_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  CycleCover cover;
  cover.f = j.at("f").get<int>();
  cover.dilation = j.at("dilation").get<int>();
  cover.congestion = j.at("congestion").get<int>();
  cover.colors = j.at("colors").get<int>();
  cover.coloring = j.at("coloring").get<std::vector<int>>();
  cover.paths = j.at("paths").get<std::vector<std::vector<Path>>>();
  return cover;
}

}  // namespace congesim::pack
