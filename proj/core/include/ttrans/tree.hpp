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

// Ranked alphabets, finite ordered trees, node addressing, first- and
// second-order substitution, the concrete tree syntax, and bounded
// enumeration. All values are immutable after construction and all
// operations are pure.

#ifndef TTRANS_TREE_HPP
#define TTRANS_TREE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ttrans/errors.hpp"

namespace ttrans {

/// A symbol of a ranked alphabet: a name plus a fixed arity.
struct Symbol {
  std::string name;
  int rank = 0;

  friend bool operator==(const Symbol& a, const Symbol& b) {
    return a.rank == b.rank && a.name == b.name;
  }
  friend bool operator!=(const Symbol& a, const Symbol& b) { return !(a == b); }
  friend bool operator<(const Symbol& a, const Symbol& b) {
    return a.name != b.name ? a.name < b.name : a.rank < b.rank;
  }
};

/// A finite set of symbols in declaration order. Within one alphabet a name
/// determines the rank, so lookups go by name.
class RankedAlphabet {
 public:
  RankedAlphabet() = default;
  explicit RankedAlphabet(std::vector<Symbol> symbols);

  /// Appends a symbol; throws ValidationError on a duplicate name.
  void add(const Symbol& s);

  bool contains(const std::string& name) const { return index_.count(name) != 0; }
  const Symbol* find(const std::string& name) const;
  /// Declaration index of a name, or -1.
  int index_of(const std::string& name) const;

  const std::vector<Symbol>& symbols() const { return symbols_; }
  std::size_t size() const { return symbols_.size(); }
  const Symbol& at(std::size_t i) const { return symbols_[i]; }

  /// First symbol of the given rank in declaration order, if any.
  const Symbol* first_of_rank(int rank) const;

  /// Set equality on (name, rank) pairs, order-insensitive.
  bool same_symbols(const RankedAlphabet& other) const;
  /// True when every symbol of this alphabet occurs in `other`.
  bool subset_of(const RankedAlphabet& other) const;

 private:
  std::vector<Symbol> symbols_;
  std::map<std::string, int> index_;
};

/// An ordered ranked tree. The constructor enforces that the number of
/// children equals the label's rank, so ill-ranked nodes cannot be built.
class Tree {
 public:
  Tree(Symbol label, std::vector<Tree> children);
  explicit Tree(Symbol label) : Tree(std::move(label), {}) {}

  static Tree leaf(const std::string& name) { return Tree(Symbol{name, 0}); }

  const Symbol& label() const { return label_; }
  const std::vector<Tree>& children() const { return children_; }
  const Tree& child(int i) const { return children_[static_cast<std::size_t>(i) - 1]; }  // 1-based

  /// Number of nodes.
  int size() const;

  friend bool operator==(const Tree& a, const Tree& b);
  friend bool operator!=(const Tree& a, const Tree& b) { return !(a == b); }
  /// Total order: preorder-lexicographic on (name, rank) labels.
  friend bool operator<(const Tree& a, const Tree& b);

 private:
  Symbol label_;
  std::vector<Tree> children_;
};

/// A node address: 1-based child indices from the root; empty means the root.
using Path = std::vector<int>;

std::string format_path(const Path& u);  // "eps" for the root, else "1.2.1"
Path parse_path(const std::string& text);

/// All node addresses of `t` in preorder.
std::vector<Path> node_set(const Tree& t);

bool is_valid_path(const Tree& t, const Path& u);

/// Subtree rooted at `u`; throws EvalError on an invalid path.
const Tree& subtree(const Tree& t, const Path& u);

/// `t` with the subtree at `u` replaced by `s`.
Tree replace_subtree(const Tree& t, const Path& u, const Tree& s);

/// First-order substitution: simultaneously replaces every leaf whose label
/// is a key. All keys must have rank 0.
class LeafSubstitution {
 public:
  LeafSubstitution() = default;
  void bind(const Symbol& key, Tree replacement);
  const Tree* find(const Symbol& key) const;
  bool empty() const { return bindings_.empty(); }

 private:
  std::map<Symbol, Tree> bindings_;
};

Tree subst_leaves(const Tree& t, const LeafSubstitution& sub);

/// Second-order substitution: replaces every subtree sigma(s_1,...,s_m) whose
/// root label sigma is a key by the key's replacement tree, with parameter
/// leaf y_j standing for the (recursively substituted) j-th argument.
class SecondOrderSubstitution {
 public:
  SecondOrderSubstitution() = default;
  /// The replacement for a rank-m key may use parameter leaves y1..ym only;
  /// violations raise ValidationError.
  void bind(const Symbol& key, Tree replacement);
  const Tree* find(const Symbol& key) const;
  bool empty() const { return bindings_.empty(); }

 private:
  std::map<Symbol, Tree> bindings_;
};

Tree subst_second_order(const Tree& t, const SecondOrderSubstitution& sub);

// Reserved leaf namespaces used by extended alphabets. Parameters are y1,
// y2, ..., input variables x1, x2, ..., and @x marks a context hole.
Symbol param_symbol(int j);                       // y<j>, rank 0
std::optional<int> param_index(const Symbol& s);  // y<j> -> j
std::string var_name(int i);                      // "x<i>"
bool is_reserved_leaf_name(const std::string& name);
inline constexpr const char* kContextHoleName = "@x";

/// Parses the concrete syntax `name | name(t1,...,tk)` against a declared
/// alphabet. Names are bare ([A-Za-z0-9_#$'+-]+) or double-quoted with \"
/// and \\ escapes. Throws ParseError with a position, or ValidationError
/// messages wrapped in ParseError for unknown symbols / arity mismatches.
Tree parse_tree(const std::string& text, const RankedAlphabet& alphabet);

std::string format_tree(const Tree& t);

/// Quotes `name` if it is not a bare name.
std::string format_name(const std::string& name);

/// Every tree over `alphabet` with at most `max_size` nodes, ordered by
/// (size, lexicographic on the preorder symbol sequence, with symbols
/// compared by declaration index). Throws PreconditionError when the
/// alphabet has no rank-0 symbol.
std::vector<Tree> enumerate_trees(const RankedAlphabet& alphabet, int max_size);

}  // namespace ttrans

#endif  // TTRANS_TREE_HPP
