// Copyright 2026 The ttrans Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ttrans/att.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace ttrans {

bool Att::is_syn(const std::string& attr) const {
  return std::find(syn.begin(), syn.end(), attr) != syn.end();
}

bool Att::is_inh(const std::string& attr) const {
  return std::find(inh.begin(), inh.end(), attr) != inh.end();
}

int Att::syn_index(const std::string& attr) const {
  auto it = std::find(syn.begin(), syn.end(), attr);
  return it == syn.end() ? -1 : static_cast<int>(it - syn.begin());
}

int Att::inh_index(const std::string& attr) const {
  auto it = std::find(inh.begin(), inh.end(), attr);
  return it == inh.end() ? -1 : static_cast<int>(it - inh.begin());
}

const Tree& Att::rule(int symbol, const AttRuleKey& key) const {
  auto sit = rules.find(symbol);
  if (sit != rules.end()) {
    auto rit = sit->second.find(key);
    if (rit != sit->second.end()) return rit->second;
  }
  throw EvalError("missing rule for " + key.attr +
                  (key.child == 0 ? "(pi)" : "(pi " + std::to_string(key.child) + ")") +
                  " at symbol '" + input.at(static_cast<std::size_t>(symbol)).name +
                  "' in att '" + name + "'");
}

Symbol syn_ref(const std::string& attr, int child) {
  return Symbol{attr + "(pi " + std::to_string(child) + ")", 0};
}

Symbol inh_ref(const std::string& attr) { return Symbol{attr + "(pi)", 0}; }

std::optional<AttRef> parse_ref(const Symbol& label, const Att& a) {
  if (label.rank != 0 || label.name.size() < 5 || label.name.back() != ')') return std::nullopt;
  std::size_t open = label.name.rfind("(pi");
  if (open == std::string::npos || open == 0) return std::nullopt;
  std::string attr = label.name.substr(0, open);
  std::string inner = label.name.substr(open + 3, label.name.size() - open - 4);
  if (inner.empty()) {
    if (!a.is_inh(attr)) return std::nullopt;
    return AttRef{attr, 0};
  }
  if (inner[0] != ' ') return std::nullopt;
  std::string digits = inner.substr(1);
  if (digits.empty()) return std::nullopt;
  for (char c : digits)
    if (c < '0' || c > '9') return std::nullopt;
  if (!a.is_syn(attr)) return std::nullopt;
  int child = std::stoi(digits);
  if (child < 1) return std::nullopt;
  return AttRef{attr, child};
}

namespace {

void check_arhs(const Att& a, const Tree& t, int k, const std::string& where,
                std::vector<std::string>& out) {
  if (auto ref = parse_ref(t.label(), a)) {
    if (ref->child > k)
      out.push_back(where + ": reference " + t.label().name + " addresses child " +
                    std::to_string(ref->child) + " of a rank-" + std::to_string(k) +
                    " symbol");
    return;
  }
  const Symbol* sym = a.output.find(t.label().name);
  if (!sym)
    out.push_back(where + ": unknown output symbol '" + t.label().name + "'");
  else if (sym->rank != t.label().rank)
    out.push_back(where + ": output symbol '" + t.label().name + "' used with rank " +
                  std::to_string(t.label().rank) + " but declared /" +
                  std::to_string(sym->rank));
  for (const auto& c : t.children()) check_arhs(a, c, k, where, out);
}

}  // namespace

std::vector<std::string> validate_att(const Att& a) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& s : a.syn)
    if (!seen.insert(s).second) out.push_back("duplicate attribute '" + s + "'");
  for (const auto& s : a.inh)
    if (!seen.insert(s).second)
      out.push_back("attribute '" + s + "' declared both synthesized and inherited");
  if (!a.is_syn(a.root))
    out.push_back("output attribute '" + a.root + "' is not a synthesized attribute");

  for (std::size_t si = 0; si < a.input.size(); ++si) {
    const Symbol& sym = a.input.at(si);
    auto sit = a.rules.find(static_cast<int>(si));
    const std::map<AttRuleKey, Tree>* rs =
        sit == a.rules.end() ? nullptr : &sit->second;
    for (const auto& attr : a.syn) {
      std::string where = "rule " + attr + "(pi) at '" + sym.name + "'";
      if (!rs || !rs->count({attr, 0}))
        out.push_back("missing " + where);
      else
        check_arhs(a, rs->at({attr, 0}), sym.rank, where, out);
    }
    for (const auto& attr : a.inh) {
      for (int i = 1; i <= sym.rank; ++i) {
        std::string where =
            "rule " + attr + "(pi " + std::to_string(i) + ") at '" + sym.name + "'";
        if (!rs || !rs->count({attr, i}))
          out.push_back("missing " + where);
        else
          check_arhs(a, rs->at({attr, i}), sym.rank, where, out);
      }
    }
    if (rs)
      for (const auto& [key, rhs] : *rs) {
        (void)rhs;
        bool syn_ok = key.child == 0 && a.is_syn(key.attr);
        bool inh_ok = key.child >= 1 && key.child <= sym.rank && a.is_inh(key.attr);
        if (!syn_ok && !inh_ok)
          out.push_back("rule for " + key.attr + " at '" + sym.name +
                        "' has an ill-formed left-hand side");
      }
  }
  return out;
}

void require_valid(const Att& a) {
  auto report = validate_att(a);
  if (!report.empty()) {
    std::string msg = "invalid att '" + a.name + "':";
    for (const auto& r : report) msg += "\n  " + r;
    throw ValidationError(msg);
  }
}

int DependencyGraph::index_of(const std::string& attr, const Path& node) const {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i].attr == attr && vertices[i].node == node) return static_cast<int>(i);
  return -1;
}

std::vector<std::vector<int>> DependencyGraph::adjacency() const {
  std::vector<std::vector<int>> adj(vertices.size());
  for (auto [from, to] : edges) adj[static_cast<std::size_t>(from)].push_back(to);
  return adj;
}

namespace {

void collect_refs(const Att& a, const Tree& t, std::vector<AttRef>& out) {
  if (auto ref = parse_ref(t.label(), a)) {
    out.push_back(*ref);
    return;
  }
  for (const auto& c : t.children()) collect_refs(a, c, out);
}

}  // namespace

DependencyGraph att_dependency_graph(const Att& a, const Tree& s, bool all_root_vertices) {
  DependencyGraph g;
  std::map<std::pair<std::string, Path>, int> index;
  auto add_vertex = [&](const std::string& attr, const Path& node, bool synthesized) {
    index[{attr, node}] = static_cast<int>(g.vertices.size());
    g.vertices.push_back(DepVertex{attr, node, synthesized});
  };

  for (const Path& u : node_set(s)) {
    if (u.empty()) {
      if (all_root_vertices) {
        for (const auto& attr : a.syn) add_vertex(attr, u, true);
        for (const auto& attr : a.inh) add_vertex(attr, u, false);
      } else {
        add_vertex(a.root, u, true);
      }
    } else {
      for (const auto& attr : a.syn) add_vertex(attr, u, true);
      for (const auto& attr : a.inh) add_vertex(attr, u, false);
    }
  }

  auto vertex = [&](const std::string& attr, const Path& node) -> int {
    auto it = index.find({attr, node});
    return it == index.end() ? -1 : it->second;
  };

  for (const Path& u : node_set(s)) {
    const Tree& node = subtree(s, u);
    int sym = a.input.index_of(node.label().name);
    if (sym < 0)
      throw EvalError("input symbol '" + node.label().name + "' is not in the input alphabet of att '" +
                      a.name + "'");
    auto sit = a.rules.find(sym);
    if (sit == a.rules.end()) continue;
    for (const auto& [key, rhs] : sit->second) {
      Path target_node = u;
      if (key.child > 0) target_node.push_back(key.child);
      int to = vertex(key.attr, target_node);
      if (to < 0) continue;
      std::vector<AttRef> refs;
      collect_refs(a, rhs, refs);
      for (const auto& ref : refs) {
        Path source_node = u;
        if (ref.child > 0) source_node.push_back(ref.child);
        int from = vertex(ref.attr, source_node);
        if (from < 0) continue;
        g.edges.emplace_back(from, to);
      }
    }
  }
  return g;
}

std::string dependency_graph_to_dot(const DependencyGraph& g) {
  std::string out = "digraph dependencies {\n";
  for (const auto& v : g.vertices) {
    std::string label = v.attr + "@" + (v.node.empty() ? "" : format_path(v.node));
    out += "  \"" + label + "\" [shape=" + (v.synthesized ? "box" : "ellipse") + "];\n";
  }
  for (auto [from, to] : g.edges) {
    const auto& a = g.vertices[static_cast<std::size_t>(from)];
    const auto& b = g.vertices[static_cast<std::size_t>(to)];
    out += "  \"" + a.attr + "@" + (a.node.empty() ? "" : format_path(a.node)) + "\" -> \"" +
           b.attr + "@" + (b.node.empty() ? "" : format_path(b.node)) + "\";\n";
  }
  out += "}\n";
  return out;
}

std::optional<std::vector<DepVertex>> att_is_circular_on(const Att& a, const Tree& s) {
  DependencyGraph g = att_dependency_graph(a, s);
  auto adj = g.adjacency();
  int n = static_cast<int>(g.vertices.size());

  // Shortest cycle: BFS from every vertex back to itself.
  std::optional<std::vector<int>> best;
  for (int start = 0; start < n; ++start) {
    std::vector<int> parent(static_cast<std::size_t>(n), -2);
    std::deque<int> queue;
    for (int next : adj[static_cast<std::size_t>(start)]) {
      if (next == start) return std::vector<DepVertex>{g.vertices[static_cast<std::size_t>(start)]};
      if (parent[static_cast<std::size_t>(next)] == -2) {
        parent[static_cast<std::size_t>(next)] = start;
        queue.push_back(next);
      }
    }
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int next : adj[static_cast<std::size_t>(v)]) {
        if (next == start) {
          std::vector<int> cycle{start};
          for (int cur = v; cur != start; cur = parent[static_cast<std::size_t>(cur)])
            cycle.push_back(cur);
          std::reverse(cycle.begin() + 1, cycle.end());
          if (!best || cycle.size() < best->size()) best = cycle;
          queue.clear();
          break;
        }
        if (parent[static_cast<std::size_t>(next)] == -2) {
          parent[static_cast<std::size_t>(next)] = v;
          queue.push_back(next);
        }
      }
    }
  }
  if (!best) return std::nullopt;
  std::vector<DepVertex> cycle;
  for (int v : *best) cycle.push_back(g.vertices[static_cast<std::size_t>(v)]);
  return cycle;
}

namespace {

// One achievable inherited->synthesized dependency relation per achievable
// subtree behaviour, tagged with a witness subtree.
struct RelationEntry {
  std::vector<std::pair<int, int>> relation;  // sorted (inh, syn) pairs
  Tree witness;
};

struct LocalGraph {
  // Vertices: (attr kind/index, position 0..k). Encoded as attr*(k+1)+pos
  // with synthesized attrs first.
  int syn_count;
  int inh_count;
  int k;
  std::vector<std::vector<int>> adj;

  int id(bool synthesized, int attr, int pos) const {
    int base = synthesized ? attr : syn_count + attr;
    return base * (k + 1) + pos;
  }
  int size() const { return (syn_count + inh_count) * (k + 1); }
};

LocalGraph build_local_graph(const Att& a, int sym,
                             const std::vector<const std::vector<std::pair<int, int>>*>& child_rels) {
  const Symbol& s = a.input.at(static_cast<std::size_t>(sym));
  LocalGraph g{static_cast<int>(a.syn.size()), static_cast<int>(a.inh.size()), s.rank, {}};
  g.adj.assign(static_cast<std::size_t>(g.size()), {});
  auto sit = a.rules.find(sym);
  if (sit != a.rules.end()) {
    for (const auto& [key, rhs] : sit->second) {
      bool target_syn = key.child == 0;
      int target_attr = target_syn ? a.syn_index(key.attr) : a.inh_index(key.attr);
      if (target_attr < 0) continue;
      int to = g.id(target_syn, target_attr, key.child);
      std::vector<AttRef> refs;
      collect_refs(a, rhs, refs);
      for (const auto& ref : refs) {
        bool source_syn = ref.child != 0;
        int source_attr = source_syn ? a.syn_index(ref.attr) : a.inh_index(ref.attr);
        if (source_attr < 0) continue;
        g.adj[static_cast<std::size_t>(g.id(source_syn, source_attr, ref.child))].push_back(to);
      }
    }
  }
  for (int i = 1; i <= s.rank; ++i)
    for (auto [b, al] : *child_rels[static_cast<std::size_t>(i - 1)])
      g.adj[static_cast<std::size_t>(g.id(false, b, i))].push_back(g.id(true, al, i));
  return g;
}

bool has_cycle(const std::vector<std::vector<int>>& adj) {
  int n = static_cast<int>(adj.size());
  std::vector<int> state(static_cast<std::size_t>(n), 0);  // 0 new, 1 open, 2 done
  std::vector<std::pair<int, std::size_t>> stack;
  for (int root = 0; root < n; ++root) {
    if (state[static_cast<std::size_t>(root)]) continue;
    stack.push_back({root, 0});
    state[static_cast<std::size_t>(root)] = 1;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next < adj[static_cast<std::size_t>(v)].size()) {
        int w = adj[static_cast<std::size_t>(v)][next++];
        if (state[static_cast<std::size_t>(w)] == 1) return true;
        if (state[static_cast<std::size_t>(w)] == 0) {
          state[static_cast<std::size_t>(w)] = 1;
          stack.push_back({w, 0});
        }
      } else {
        state[static_cast<std::size_t>(v)] = 2;
        stack.pop_back();
      }
    }
  }
  return false;
}

std::vector<std::pair<int, int>> root_relation(const LocalGraph& g) {
  // Reachability (b,0) ->* (a,0) over the local graph.
  std::vector<std::pair<int, int>> rel;
  for (int b = 0; b < g.inh_count; ++b) {
    std::vector<bool> seen(static_cast<std::size_t>(g.size()), false);
    std::deque<int> queue{g.id(false, b, 0)};
    seen[static_cast<std::size_t>(queue.front())] = true;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int w : g.adj[static_cast<std::size_t>(v)])
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = true;
          queue.push_back(w);
        }
    }
    for (int al = 0; al < g.syn_count; ++al)
      if (seen[static_cast<std::size_t>(g.id(true, al, 0))]) rel.emplace_back(b, al);
  }
  std::sort(rel.begin(), rel.end());
  return rel;
}

// Runs the relation fixpoint. On a cycle, fills `witness`.
std::vector<RelationEntry> relation_fixpoint(const Att& a, std::optional<Tree>* witness) {
  std::vector<RelationEntry> entries;
  std::set<std::vector<std::pair<int, int>>> known;
  std::set<std::pair<int, std::vector<int>>> processed;

  auto process = [&](int sym, const std::vector<int>& tuple) -> bool {
    if (!processed.insert({sym, tuple}).second) return false;
    std::vector<const std::vector<std::pair<int, int>>*> child_rels;
    std::vector<Tree> children;
    for (int idx : tuple) {
      child_rels.push_back(&entries[static_cast<std::size_t>(idx)].relation);
      children.push_back(entries[static_cast<std::size_t>(idx)].witness);
    }
    LocalGraph g = build_local_graph(a, sym, child_rels);
    Tree node(a.input.at(static_cast<std::size_t>(sym)), std::move(children));
    if (witness && has_cycle(g.adj)) {
      *witness = node;
      return true;
    }
    auto rel = root_relation(g);
    if (known.insert(rel).second) entries.push_back(RelationEntry{rel, std::move(node)});
    return false;
  };

  while (true) {
    std::size_t count = entries.size();
    for (std::size_t sym = 0; sym < a.input.size(); ++sym) {
      int k = a.input.at(sym).rank;
      if (k == 0) {
        if (process(static_cast<int>(sym), {})) return entries;
        continue;
      }
      if (count == 0) continue;
      std::vector<int> tuple(static_cast<std::size_t>(k), 0);
      while (true) {
        if (process(static_cast<int>(sym), tuple)) return entries;
        int pos = k - 1;
        while (pos >= 0 && ++tuple[static_cast<std::size_t>(pos)] == static_cast<int>(count)) {
          tuple[static_cast<std::size_t>(pos)] = 0;
          --pos;
        }
        if (pos < 0) break;
      }
    }
    if (entries.size() == count) break;  // fixpoint reached
  }
  return entries;
}

}  // namespace

std::optional<Tree> att_is_circular(const Att& a) {
  if (!a.input.first_of_rank(0)) return std::nullopt;  // empty tree language
  std::optional<Tree> witness;
  relation_fixpoint(a, &witness);
  return witness;
}

std::vector<std::vector<std::pair<int, int>>> att_dependency_relations(const Att& a) {
  std::vector<std::vector<std::pair<int, int>>> out;
  if (!a.input.first_of_rank(0)) return out;
  for (auto& e : relation_fixpoint(a, nullptr)) out.push_back(std::move(e.relation));
  return out;
}

namespace {

class AttEvaluator {
 public:
  AttEvaluator(const Att& a, const Tree& s) : a_(a), s_(s) {}

  Tree value(const std::string& attr, const Path& node) {
    auto key = std::make_pair(attr, node);
    auto it = memo_.find(key);
    if (it != memo_.end()) {
      if (!it->second) {
        std::string cycle;
        for (auto& [at, u] : stack_) cycle += "(" + at + "," + format_path(u) + ") -> ";
        cycle += "(" + attr + "," + format_path(node) + ")";
        throw EvalError("circular attribute instance: " + cycle);
      }
      return *it->second;
    }

    bool synthesized = a_.is_syn(attr);
    if (!synthesized && node.empty())
      throw EvalError("undefined inherited attribute '" + attr + "' demanded at the root");

    Path rule_node = node;
    int child = 0;
    if (!synthesized) {
      child = rule_node.back();
      rule_node.pop_back();
    }
    int sym = a_.input.index_of(subtree(s_, rule_node).label().name);
    if (sym < 0)
      throw EvalError("input symbol '" + subtree(s_, rule_node).label().name +
                      "' is not in the input alphabet of att '" + a_.name + "'");
    const Tree& rhs = a_.rule(sym, AttRuleKey{attr, child});

    memo_.emplace(key, std::nullopt);  // open
    stack_.push_back(key);
    Tree result = instantiate(rhs, rule_node);
    stack_.pop_back();
    memo_[key] = result;
    return result;
  }

 private:
  Tree instantiate(const Tree& t, const Path& rule_node) {
    if (auto ref = parse_ref(t.label(), a_)) {
      Path at = rule_node;
      if (ref->child > 0) at.push_back(ref->child);
      return value(ref->attr, at);
    }
    std::vector<Tree> children;
    children.reserve(t.children().size());
    for (const auto& c : t.children()) children.push_back(instantiate(c, rule_node));
    return Tree(t.label(), std::move(children));
  }

  const Att& a_;
  const Tree& s_;
  std::map<std::pair<std::string, Path>, std::optional<Tree>> memo_;
  std::vector<std::pair<std::string, Path>> stack_;
};

}  // namespace

Tree att_evaluate(const Att& a, const Tree& s) {
  AttEvaluator ev(a, s);
  return ev.value(a.root, {});
}

}  // namespace ttrans
