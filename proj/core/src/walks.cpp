#include "wignerlab/walks.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace wignerlab {

std::size_t CanonicalWalk::labels() const {
  return sequence.empty() ? 0 : *std::max_element(sequence.begin(), sequence.end());
}

std::string CanonicalWalk::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    if (i) s += '-';
    s += std::to_string(sequence[i]);
  }
  return s;
}

bool is_canonical(std::span<const std::size_t> seq) {
  if (seq.size() < 2 || seq.front() != 1 || seq.back() != 1) return false;
  std::size_t mx = 0;
  for (std::size_t c : seq) {
    if (c < 1 || c > mx + 1) return false;
    mx = std::max(mx, c);
  }
  return true;
}

CanonicalWalk canonicalize(const ClosedWalk& w) {
  if (w.vertices.size() < 2) throw std::invalid_argument("closed walk needs length >= 1");
  if (w.vertices.front() != w.vertices.back()) throw std::invalid_argument("walk is not closed (i_0 != i_k)");
  std::map<std::size_t, std::size_t> label;
  CanonicalWalk c;
  c.sequence.reserve(w.vertices.size());
  for (std::size_t v : w.vertices) {
    auto [it, fresh] = label.try_emplace(v, label.size() + 1);
    c.sequence.push_back(it->second);
  }
  return c;
}

void for_each_gamma(std::size_t k, std::size_t t, const std::function<void(const CanonicalWalk&)>& visit) {
  if (k == 0) throw std::invalid_argument("walk length must be >= 1");
  if (t == 0 || t > k + 1) return;
  CanonicalWalk c;
  c.sequence.assign(k + 1, 1);
  // positions 1..k-1 are free, position k is pinned to 1
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t s, std::size_t used) {
    if (s == k) {
      if (used == t) visit(c);
      return;
    }
    const std::size_t remaining = k - 1 - s;
    for (std::size_t label = 1; label <= std::min(used + 1, t); ++label) {
      const std::size_t now = std::max(used, label);
      if (now + remaining < t) continue;
      c.sequence[s] = label;
      rec(s + 1, now);
    }
    c.sequence[s] = 1;
  };
  rec(1, 1);
}

std::vector<CanonicalWalk> enumerate_gamma(std::size_t k, std::size_t t) {
  std::vector<CanonicalWalk> out;
  for_each_gamma(k, t, [&](const CanonicalWalk& c) { out.push_back(c); });
  return out;
}

WalkGraph walk_graph(const CanonicalWalk& c) {
  if (!is_canonical(c.sequence)) throw std::invalid_argument("walk is not canonical");
  std::map<std::pair<std::size_t, std::size_t>, WalkEdge> edges;
  for (std::size_t s = 1; s < c.sequence.size(); ++s) {
    const std::size_t a = c.sequence[s - 1], b = c.sequence[s];
    const auto key = std::minmax(a, b);
    auto [it, fresh] = edges.try_emplace({key.first, key.second}, WalkEdge{key.first, key.second, 0, 0});
    if (a <= b)
      ++it->second.forward;
    else
      ++it->second.backward;
  }
  WalkGraph g;
  g.vertices = c.labels();
  for (auto& [key, e] : edges) g.edges.push_back(e);
  return g;
}

std::string to_string(WalkClass c) {
  switch (c) {
    case WalkClass::single_edge: return "single_edge";
    case WalkClass::double_tree: return "double_tree";
    case WalkClass::multi_other: return "multi_other";
  }
  return "unknown";
}

WalkClass classify(const CanonicalWalk& c) {
  const WalkGraph g = walk_graph(c);
  for (const auto& e : g.edges)
    if (e.multiplicity() == 1) return WalkClass::single_edge;
  const std::size_t k = c.length();
  if (k % 2 == 0 && g.vertices == k / 2 + 1 &&
      std::all_of(g.edges.begin(), g.edges.end(), [](const WalkEdge& e) { return e.multiplicity() == 2; }))
    return WalkClass::double_tree;
  return WalkClass::multi_other;
}

bool DyckPath::valid() const {
  if (heights.empty() || heights.front() != 0 || heights.back() != 0) return false;
  for (std::size_t s = 0; s < heights.size(); ++s) {
    if (heights[s] < 0) return false;
    if (s > 0 && std::abs(heights[s] - heights[s - 1]) != 1) return false;
  }
  return true;
}

DyckPath dyck_of(const CanonicalWalk& c) {
  if (classify(c) != WalkClass::double_tree) throw std::invalid_argument("dyck_of requires a double_tree walk");
  const WalkGraph g = walk_graph(c);
  std::vector<std::vector<std::size_t>> adj(g.vertices + 1);
  for (const auto& e : g.edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<int> dist(g.vertices + 1, -1);
  std::queue<std::size_t> q;
  dist[1] = 0;
  q.push(1);
  while (!q.empty()) {
    const std::size_t u = q.front();
    q.pop();
    for (std::size_t v : adj[u])
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        q.push(v);
      }
  }
  DyckPath d;
  for (std::size_t v : c.sequence) d.heights.push_back(dist[v]);
  return d;
}

std::vector<DyckPath> enumerate_dyck_paths(std::size_t k) {
  std::vector<DyckPath> out;
  if (k % 2 == 1) return out;
  DyckPath d;
  d.heights.assign(k + 1, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t s) {
    if (s == k + 1) {
      if (d.heights[k] == 0) out.push_back(d);
      return;
    }
    const int prev = d.heights[s - 1];
    for (int h : {prev - 1, prev + 1}) {
      if (h < 0 || static_cast<std::size_t>(h) > k - s) continue;
      d.heights[s] = h;
      rec(s + 1);
    }
  };
  if (k == 0) return {d};
  rec(1);
  return out;
}

// ---------------------------------------------------------------------------
// Tree product sums

namespace {

void validate_tree(const Tree& t) {
  if (t.vertices == 0) throw std::invalid_argument("tree needs at least one vertex");
  if (t.edges.size() + 1 != t.vertices) throw std::invalid_argument("not a tree: |E| != |V| - 1");
  std::vector<std::size_t> parent(t.vertices);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [u, v] : t.edges) {
    if (u >= t.vertices || v >= t.vertices) throw std::invalid_argument("tree edge endpoint out of range");
    const std::size_t a = find(u), b = find(v);
    if (a == b) throw std::invalid_argument("not a tree: contains a cycle");
    parent[a] = b;
  }
}

struct Factor {
  std::vector<std::size_t> vars;  // sorted
  std::vector<double> table;      // row-major over vars
};

// Sum over all maps of `blocks` variables into {0..n-1} of the product of
// factors, by greedy variable elimination.
double sum_product(std::size_t blocks, std::vector<Factor> factors, std::size_t n) {
  double scalar = 1.0;
  std::vector<bool> alive(blocks, true);
  for (std::size_t remaining = blocks; remaining > 0; --remaining) {
    // pick the variable whose elimination scope is smallest
    std::size_t best = blocks, best_size = SIZE_MAX;
    std::vector<std::size_t> best_scope;
    for (std::size_t x = 0; x < blocks; ++x) {
      if (!alive[x]) continue;
      std::vector<std::size_t> scope{x};
      for (const auto& f : factors)
        if (std::binary_search(f.vars.begin(), f.vars.end(), x)) scope.insert(scope.end(), f.vars.begin(), f.vars.end());
      std::sort(scope.begin(), scope.end());
      scope.erase(std::unique(scope.begin(), scope.end()), scope.end());
      if (scope.size() < best_size) {
        best_size = scope.size();
        best = x;
        best_scope = std::move(scope);
      }
    }
    alive[best] = false;
    std::vector<Factor> touching, rest;
    for (auto& f : factors)
      (std::binary_search(f.vars.begin(), f.vars.end(), best) ? touching : rest).push_back(std::move(f));
    if (touching.empty()) {
      scalar *= static_cast<double>(n);
      factors = std::move(rest);
      continue;
    }
    const std::size_t u = best_scope.size();
    const std::size_t pos_x = static_cast<std::size_t>(std::find(best_scope.begin(), best_scope.end(), best) - best_scope.begin());
    // strides of each factor in terms of positions in best_scope
    std::vector<std::vector<std::size_t>> strides(touching.size(), std::vector<std::size_t>(u, 0));
    for (std::size_t fi = 0; fi < touching.size(); ++fi) {
      const auto& vars = touching[fi].vars;
      std::size_t stride = 1;
      for (std::size_t q = vars.size(); q-- > 0;) {
        const std::size_t p = static_cast<std::size_t>(std::find(best_scope.begin(), best_scope.end(), vars[q]) - best_scope.begin());
        strides[fi][p] += stride;
        stride *= n;
      }
    }
    Factor out;
    for (std::size_t p = 0; p < u; ++p)
      if (p != pos_x) out.vars.push_back(best_scope[p]);
    std::size_t out_size = 1;
    for (std::size_t p = 0; p + 1 < u; ++p) out_size *= n;
    out.table.assign(out_size, 0.0);
    std::vector<std::size_t> idx(u, 0);
    std::vector<std::size_t> offset(touching.size(), 0);
    auto advance = [&] {
      for (std::size_t p = u; p-- > 0;) {
        if (++idx[p] < n) {
          for (std::size_t fi = 0; fi < touching.size(); ++fi) offset[fi] += strides[fi][p];
          return true;
        }
        for (std::size_t fi = 0; fi < touching.size(); ++fi) offset[fi] -= strides[fi][p] * (n - 1);
        idx[p] = 0;
      }
      return false;
    };
    do {
      double prod = 1.0;
      for (std::size_t fi = 0; fi < touching.size(); ++fi) prod *= touching[fi].table[offset[fi]];
      std::size_t o = 0;
      for (std::size_t p = 0; p < u; ++p)
        if (p != pos_x) o = o * n + idx[p];
      out.table[o] += prod;
    } while (advance());
    rest.push_back(std::move(out));
    factors = std::move(rest);
  }
  for (const auto& f : factors) scalar *= f.table.at(0);
  return scalar;
}

double falling_factorial(std::size_t n, std::size_t m) {
  double r = 1.0;
  for (std::size_t i = 0; i < m; ++i) r *= static_cast<double>(n - i);
  return r;
}

}  // namespace

double tree_product_sum(const Tree& tree, const VarianceProfile& profile, std::size_t n, std::optional<Pin> pin) {
  validate_tree(tree);
  if (auto d = profile.dimension(); d && *d != n) throw std::invalid_argument("profile dimension does not match n");
  if (pin) {
    if (pin->vertex >= tree.vertices) throw std::out_of_range("pinned vertex not in tree");
    if (pin->index >= n) throw std::out_of_range("pinned index out of range");
  }
  const std::size_t v = tree.vertices;
  if (v > n) return 0.0;
  if (profile.kind() == ProfileKind::uniform) {
    const double w = std::pow(profile(0, 0), static_cast<double>(tree.edges.size()));
    return pin ? falling_factorial(n - 1, v - 1) * w : falling_factorial(n, v) * w;
  }
  if (v > 8) throw std::invalid_argument("tree_product_sum supports at most 8 vertices");

  std::vector<double> edge_table(n * n), loop_table(n);
  for (std::size_t a = 0; a < n; ++a) {
    loop_table[a] = profile(a, a);
    for (std::size_t b = 0; b < n; ++b) edge_table[a * n + b] = profile(a, b);
  }

  // inclusion-exclusion over set partitions of the vertex set
  double total = 0.0;
  std::vector<std::size_t> block(v, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t s, std::size_t blocks) {
    if (s == v) {
      std::vector<std::size_t> size(blocks, 0);
      for (std::size_t b : block) ++size[b];
      double mu = 1.0;
      for (std::size_t sz : size) mu *= ((sz - 1) % 2 ? -1.0 : 1.0) * falling_factorial(sz - 1, sz - 1);
      std::vector<Factor> factors;
      for (auto [a, b] : tree.edges) {
        const std::size_t x = block[a], y = block[b];
        if (x == y)
          factors.push_back({{x}, loop_table});
        else if (x < y)
          factors.push_back({{x, y}, edge_table});
        else {
          // profile is symmetric, so the transposed table is the same
          factors.push_back({{y, x}, edge_table});
        }
      }
      if (pin) {
        Factor f{{block[pin->vertex]}, std::vector<double>(n, 0.0)};
        f.table[pin->index] = 1.0;
        factors.push_back(std::move(f));
      }
      total += mu * sum_product(blocks, std::move(factors), n);
      return;
    }
    for (std::size_t b = 0; b <= blocks; ++b) {
      block[s] = b;
      rec(s + 1, std::max(blocks, b + 1));
    }
  };
  rec(0, 0);
  return std::max(total, 0.0);
}

// ---------------------------------------------------------------------------

namespace {

double walk_expectation(std::span<const std::size_t> idx, const EntryLaw& law, const VarianceProfile& profile,
                        std::map<std::pair<std::size_t, std::size_t>, std::pair<int, int>>& counts) {
  counts.clear();
  for (std::size_t s = 1; s < idx.size(); ++s) {
    const std::size_t a = idx[s - 1], b = idx[s];
    auto& c = counts[{std::min(a, b), std::max(a, b)}];
    if (a <= b)
      ++c.first;
    else
      ++c.second;
  }
  Complex prod = 1.0;
  for (const auto& [key, pq] : counts) {
    const bool diag = key.first == key.second;
    prod *= law.mixed_moment(profile(key.first, key.second), pq.first, pq.second, diag);
    if (prod == 0.0) return 0.0;
  }
  return prod.real();
}

}  // namespace

double walk_sum_moment(const EntryLaw& law, const VarianceProfile& profile, std::size_t n, std::size_t k) {
  if (n == 0 || k == 0) throw std::invalid_argument("walk_sum_moment needs n, k >= 1");
  if (n > 6 || k > 8) throw std::invalid_argument("oracle scale exceeded");
  if (static_cast<double>(k) >= law.moment_limit()) throw std::domain_error("oracle requires finite moments");
  if (auto d = profile.dimension(); d && *d != n) throw std::invalid_argument("profile dimension does not match n");
  std::vector<std::size_t> idx(k + 1, 0);
  std::map<std::pair<std::size_t, std::size_t>, std::pair<int, int>> counts;
  std::vector<double> terms;
  for (;;) {
    idx[k] = idx[0];
    terms.push_back(walk_expectation(idx, law, profile, counts));
    std::size_t p = k;
    while (p > 0) {
      --p;
      if (++idx[p] < n) break;
      idx[p] = 0;
      if (p == 0) return pairwise_sum(terms) / static_cast<double>(n);
    }
  }
}

double walk_class_sum(const CanonicalWalk& c, const EntryLaw& law, const VarianceProfile& profile, std::size_t n) {
  if (!is_canonical(c.sequence)) throw std::invalid_argument("walk is not canonical");
  if (n > 8) throw std::invalid_argument("oracle scale exceeded");
  const std::size_t t = c.labels();
  if (t > n) return 0.0;
  std::vector<std::size_t> assign(t);
  std::vector<bool> used(n, false);
  std::vector<std::size_t> idx(c.sequence.size());
  std::map<std::pair<std::size_t, std::size_t>, std::pair<int, int>> counts;
  double total = 0.0;
  std::function<void(std::size_t)> rec = [&](std::size_t label) {
    if (label == t) {
      for (std::size_t s = 0; s < idx.size(); ++s) idx[s] = assign[c.sequence[s] - 1];
      total += walk_expectation(idx, law, profile, counts);
      return;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      used[i] = true;
      assign[label] = i;
      rec(label + 1);
      used[i] = false;
    }
  };
  rec(0);
  return total;
}

}  // namespace wignerlab
