#include "rigidlab/cycles.hpp"

#include <algorithm>

namespace rigidlab {

namespace {

struct CycleSearch {
  const Graph& g;
  std::optional<int> max_len;
  const std::function<bool(const ProperCycle&)>& visit;
  std::vector<int> path;
  std::set<int> on_path;
  bool stopped = false;

  // Cycles are rooted at their minimum vertex; the walk leaves the root
  // toward its smaller cycle neighbor, so each cycle appears exactly once.
  void dfs(int v) {
    if (stopped) return;
    const int root = path.front();
    for (int w : g.neighbors(v)) {
      if (stopped) return;
      if (w == root && path.size() >= 3) {
        // Reflection canon: second vertex must not exceed the last.
        if (path[1] <= path.back()) {
          if (!visit(path)) stopped = true;
        }
        continue;
      }
      if (w <= root || on_path.count(w)) continue;
      if (max_len && static_cast<int>(path.size()) >= *max_len) continue;
      path.push_back(w);
      on_path.insert(w);
      dfs(w);
      on_path.erase(w);
      path.pop_back();
    }
  }
};

}  // namespace

void enumerate_proper_cycles(const Graph& g, std::optional<int> max_len,
                             const std::function<bool(const ProperCycle&)>& visit) {
  if (max_len && *max_len < 3) return;
  for (int root : g.vertices()) {
    CycleSearch s{g, max_len, visit};
    s.path = {root};
    s.on_path = {root};
    s.dfs(root);
    if (s.stopped) return;
  }
}

std::vector<ProperCycle> all_proper_cycles(const Graph& g, std::optional<int> max_len) {
  std::vector<ProperCycle> out;
  enumerate_proper_cycles(g, max_len, [&](const ProperCycle& c) {
    out.push_back(c);
    return true;
  });
  std::sort(out.begin(), out.end(), [](const ProperCycle& a, const ProperCycle& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

}  // namespace rigidlab
