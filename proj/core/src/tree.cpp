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

#include "ttrans/tree.hpp"

#include <algorithm>

#include "lexer.hpp"

namespace ttrans {

RankedAlphabet::RankedAlphabet(std::vector<Symbol> symbols) {
  for (auto& s : symbols) add(s);
}

void RankedAlphabet::add(const Symbol& s) {
  if (s.name.empty()) throw ValidationError("alphabet symbol with empty name");
  if (s.rank < 0) throw ValidationError("alphabet symbol '" + s.name + "' with negative rank");
  if (index_.count(s.name))
    throw ValidationError("duplicate symbol name '" + s.name + "' in alphabet");
  index_[s.name] = static_cast<int>(symbols_.size());
  symbols_.push_back(s);
}

const Symbol* RankedAlphabet::find(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &symbols_[static_cast<std::size_t>(it->second)];
}

int RankedAlphabet::index_of(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

const Symbol* RankedAlphabet::first_of_rank(int rank) const {
  for (const auto& s : symbols_)
    if (s.rank == rank) return &s;
  return nullptr;
}

bool RankedAlphabet::same_symbols(const RankedAlphabet& other) const {
  return subset_of(other) && other.subset_of(*this);
}

bool RankedAlphabet::subset_of(const RankedAlphabet& other) const {
  for (const auto& s : symbols_) {
    const Symbol* o = other.find(s.name);
    if (!o || o->rank != s.rank) return false;
  }
  return true;
}

Tree::Tree(Symbol label, std::vector<Tree> children)
    : label_(std::move(label)), children_(std::move(children)) {
  if (static_cast<int>(children_.size()) != label_.rank)
    throw ValidationError("node '" + label_.name + "' has " +
                          std::to_string(children_.size()) + " children but rank " +
                          std::to_string(label_.rank));
}

int Tree::size() const {
  int n = 1;
  for (const auto& c : children_) n += c.size();
  return n;
}

bool operator==(const Tree& a, const Tree& b) {
  return a.label_ == b.label_ && a.children_ == b.children_;
}

bool operator<(const Tree& a, const Tree& b) {
  if (a.label_ != b.label_) return a.label_ < b.label_;
  return a.children_ < b.children_;
}

std::string format_path(const Path& u) {
  if (u.empty()) return "eps";
  std::string out;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(u[i]);
  }
  return out;
}

Path parse_path(const std::string& text) {
  if (text.empty() || text == "eps") return {};
  Path u;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t dot = text.find('.', pos);
    std::string part = text.substr(pos, dot == std::string::npos ? dot : dot - pos);
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("bad path component '" + part + "'", 1, static_cast<int>(pos + 1));
    int step = std::stoi(part);
    if (step < 1) throw ParseError("path steps are 1-based", 1, static_cast<int>(pos + 1));
    u.push_back(step);
    if (dot == std::string::npos) break;
    pos = dot + 1;
  }
  return u;
}

namespace {

void collect_nodes(const Tree& t, Path& prefix, std::vector<Path>& out) {
  out.push_back(prefix);
  for (int i = 1; i <= t.label().rank; ++i) {
    prefix.push_back(i);
    collect_nodes(t.child(i), prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<Path> node_set(const Tree& t) {
  std::vector<Path> out;
  Path prefix;
  collect_nodes(t, prefix, out);
  return out;
}

bool is_valid_path(const Tree& t, const Path& u) {
  const Tree* cur = &t;
  for (int step : u) {
    if (step < 1 || step > cur->label().rank) return false;
    cur = &cur->child(step);
  }
  return true;
}

const Tree& subtree(const Tree& t, const Path& u) {
  const Tree* cur = &t;
  for (int step : u) {
    if (step < 1 || step > cur->label().rank)
      throw EvalError("invalid path " + format_path(u) + " into tree " + format_tree(t));
    cur = &cur->child(step);
  }
  return *cur;
}

Tree replace_subtree(const Tree& t, const Path& u, const Tree& s) {
  if (u.empty()) return s;
  int step = u.front();
  if (step < 1 || step > t.label().rank)
    throw EvalError("invalid path " + format_path(u) + " into tree " + format_tree(t));
  std::vector<Tree> children = t.children();
  Path rest(u.begin() + 1, u.end());
  children[static_cast<std::size_t>(step) - 1] =
      replace_subtree(t.child(step), rest, s);
  return Tree(t.label(), std::move(children));
}

void LeafSubstitution::bind(const Symbol& key, Tree replacement) {
  if (key.rank != 0)
    throw ValidationError("leaf substitution key '" + key.name + "' has rank " +
                          std::to_string(key.rank));
  bindings_.insert_or_assign(key, std::move(replacement));
}

const Tree* LeafSubstitution::find(const Symbol& key) const {
  auto it = bindings_.find(key);
  return it == bindings_.end() ? nullptr : &it->second;
}

Tree subst_leaves(const Tree& t, const LeafSubstitution& sub) {
  if (sub.empty()) return t;
  if (t.label().rank == 0) {
    if (const Tree* r = sub.find(t.label())) return *r;
    return t;
  }
  std::vector<Tree> children;
  children.reserve(t.children().size());
  for (const auto& c : t.children()) children.push_back(subst_leaves(c, sub));
  return Tree(t.label(), std::move(children));
}

namespace {

void check_params_within(const Tree& t, int max_rank, const Symbol& key) {
  if (auto j = param_index(t.label())) {
    if (*j < 1 || *j > max_rank)
      throw ValidationError("replacement for '" + key.name + "'/" +
                            std::to_string(max_rank) + " uses parameter y" +
                            std::to_string(*j));
  }
  for (const auto& c : t.children()) check_params_within(c, max_rank, key);
}

}  // namespace

void SecondOrderSubstitution::bind(const Symbol& key, Tree replacement) {
  check_params_within(replacement, key.rank, key);
  bindings_.insert_or_assign(key, std::move(replacement));
}

const Tree* SecondOrderSubstitution::find(const Symbol& key) const {
  auto it = bindings_.find(key);
  return it == bindings_.end() ? nullptr : &it->second;
}

Tree subst_second_order(const Tree& t, const SecondOrderSubstitution& sub) {
  if (sub.empty()) return t;
  std::vector<Tree> args;
  args.reserve(t.children().size());
  for (const auto& c : t.children()) args.push_back(subst_second_order(c, sub));
  if (const Tree* r = sub.find(t.label())) {
    LeafSubstitution bind_args;
    for (int j = 1; j <= t.label().rank; ++j)
      bind_args.bind(param_symbol(j), args[static_cast<std::size_t>(j) - 1]);
    return subst_leaves(*r, bind_args);
  }
  return Tree(t.label(), std::move(args));
}

Symbol param_symbol(int j) { return Symbol{"y" + std::to_string(j), 0}; }

std::optional<int> param_index(const Symbol& s) {
  if (s.rank != 0 || s.name.size() < 2 || s.name[0] != 'y') return std::nullopt;
  for (std::size_t i = 1; i < s.name.size(); ++i)
    if (s.name[i] < '0' || s.name[i] > '9') return std::nullopt;
  if (s.name[1] == '0') return std::nullopt;  // indices are 1-based, no leading zero
  return std::stoi(s.name.substr(1));
}

std::string var_name(int i) { return "x" + std::to_string(i); }

bool is_reserved_leaf_name(const std::string& name) {
  if (name == kContextHoleName) return true;
  if (name.size() < 2 || (name[0] != 'x' && name[0] != 'y')) return false;
  for (std::size_t i = 1; i < name.size(); ++i)
    if (name[i] < '0' || name[i] > '9') return false;
  return name[1] != '0';
}

namespace {

Tree parse_tree_rec(detail::Lexer& lex, const RankedAlphabet& alphabet) {
  detail::Token tok = lex.peek();
  std::string name = lex.expect_name("a symbol name");
  const Symbol* sym = alphabet.find(name);
  if (!sym) throw ParseError("unknown symbol '" + name + "'", tok.line, tok.col);
  std::vector<Tree> children;
  if (lex.accept('(')) {
    if (!lex.accept(')')) {
      do {
        children.push_back(parse_tree_rec(lex, alphabet));
      } while (lex.accept(','));
      lex.expect(')');
    }
  }
  if (static_cast<int>(children.size()) != sym->rank)
    throw ParseError("symbol '" + name + "' has rank " + std::to_string(sym->rank) +
                         " but " + std::to_string(children.size()) + " arguments",
                     tok.line, tok.col);
  return Tree(*sym, std::move(children));
}

}  // namespace

Tree parse_tree(const std::string& text, const RankedAlphabet& alphabet) {
  detail::Lexer lex(text);
  Tree t = parse_tree_rec(lex, alphabet);
  if (!lex.at_end()) lex.fail("trailing input after tree");
  return t;
}

std::string format_name(const std::string& name) {
  if (detail::is_bare_name(name)) return name;
  std::string out = "\"";
  for (char c : name) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::string format_tree(const Tree& t) {
  std::string out = format_name(t.label().name);
  if (!t.children().empty()) {
    out += '(';
    for (std::size_t i = 0; i < t.children().size(); ++i) {
      if (i) out += ',';
      out += format_tree(t.children()[i]);
    }
    out += ')';
  }
  return out;
}

namespace {

// Preorder sequence of declaration indices; enumeration sorts by this, which
// on a ranked alphabet is a total order on trees.
void preorder_indices(const Tree& t, const RankedAlphabet& a, std::vector<int>& out) {
  out.push_back(a.index_of(t.label().name));
  for (const auto& c : t.children()) preorder_indices(c, a, out);
}

void cartesian(const std::vector<std::vector<const Tree*>>& choices, std::size_t i,
               std::vector<Tree>& partial, const Symbol& root, std::vector<Tree>& out) {
  if (i == choices.size()) {
    out.push_back(Tree(root, partial));
    return;
  }
  for (const Tree* t : choices[i]) {
    partial.push_back(*t);
    cartesian(choices, i + 1, partial, root, out);
    partial.pop_back();
  }
}

// All ordered size compositions n = n_1 + ... + n_k with n_i >= 1.
void compositions(int n, int k, std::vector<int>& partial,
                  std::vector<std::vector<int>>& out) {
  if (k == 0) {
    if (n == 0) out.push_back(partial);
    return;
  }
  for (int first = 1; first + (k - 1) <= n; ++first) {
    partial.push_back(first);
    compositions(n - first, k - 1, partial, out);
    partial.pop_back();
  }
}

}  // namespace

std::vector<Tree> enumerate_trees(const RankedAlphabet& alphabet, int max_size) {
  if (max_size < 1) throw PreconditionError("enumeration bound must be positive");
  if (!alphabet.first_of_rank(0))
    throw PreconditionError("alphabet has no rank-0 symbol; the tree language is empty");

  std::vector<std::vector<Tree>> by_size(static_cast<std::size_t>(max_size) + 1);
  for (int n = 1; n <= max_size; ++n) {
    auto& bucket = by_size[static_cast<std::size_t>(n)];
    for (const Symbol& sym : alphabet.symbols()) {
      int k = sym.rank;
      if (k == 0) {
        if (n == 1) bucket.push_back(Tree(sym));
        continue;
      }
      std::vector<std::vector<int>> splits;
      std::vector<int> partial;
      compositions(n - 1, k, partial, splits);
      for (const auto& split : splits) {
        std::vector<std::vector<const Tree*>> choices(static_cast<std::size_t>(k));
        bool ok = true;
        for (int i = 0; i < k && ok; ++i) {
          for (const Tree& t : by_size[static_cast<std::size_t>(split[static_cast<std::size_t>(i)])])
            choices[static_cast<std::size_t>(i)].push_back(&t);
          ok = !choices[static_cast<std::size_t>(i)].empty();
        }
        if (!ok) continue;
        std::vector<Tree> partial_children;
        cartesian(choices, 0, partial_children, sym, bucket);
      }
    }
    std::sort(bucket.begin(), bucket.end(), [&](const Tree& a, const Tree& b) {
      std::vector<int> pa, pb;
      preorder_indices(a, alphabet, pa);
      preorder_indices(b, alphabet, pb);
      return pa < pb;
    });
  }

  std::vector<Tree> out;
  for (int n = 1; n <= max_size; ++n)
    for (auto& t : by_size[static_cast<std::size_t>(n)]) out.push_back(std::move(t));
  return out;
}

}  // namespace ttrans
