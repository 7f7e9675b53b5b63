// Copyright 2026 The postlie Authors.
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

#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <deque>
#include <functional>
#include <map>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "postlie/combo.hpp"

namespace postlie {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

namespace detail {

struct TreeNode {
  std::string label;
  std::vector<const TreeNode*> children;
  int size;
  std::size_t hash;
};

inline std::size_t hash_mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

// Append-only hash-consing table. Not synchronized: trees are meant to be built on one
// thread and passed around by value.
class TreeTable {
 public:
  const TreeNode* intern(std::string_view label, std::vector<const TreeNode*> children) {
    std::size_t h = std::hash<std::string_view>{}(label);
    int size = 1;
    for (const TreeNode* c : children) {
      h = hash_mix(h, c->hash);
      size += c->size;
    }
    h = hash_mix(h, children.size());
    auto& bucket = index_[h];
    for (const TreeNode* n : bucket)
      if (n->label == label && n->children == children) return n;
    nodes_.push_back(TreeNode{std::string(label), std::move(children), size, h});
    bucket.push_back(&nodes_.back());
    return &nodes_.back();
  }

 private:
  std::deque<TreeNode> nodes_;
  std::unordered_map<std::size_t, std::vector<const TreeNode*>> index_;
};

inline TreeTable& tree_table() {
  static TreeTable table;
  return table;
}

// Canonical order: vertex count, root label, then child lists lexicographically.
inline int compare_nodes(const TreeNode* a, const TreeNode* b) {
  if (a == b) return 0;
  if (a->size != b->size) return a->size < b->size ? -1 : 1;
  if (int c = a->label.compare(b->label)) return c < 0 ? -1 : 1;
  std::size_t n = std::min(a->children.size(), b->children.size());
  for (std::size_t i = 0; i < n; ++i)
    if (int c = compare_nodes(a->children[i], b->children[i])) return c;
  if (a->children.size() != b->children.size())
    return a->children.size() < b->children.size() ? -1 : 1;
  return 0;
}

}  // namespace detail

/// Decorated planar rooted tree. Hash-consed, so equality is pointer identity.
class Tree {
 public:
  static Tree leaf(std::string_view label) { return make(label, {}); }

  static Tree make(std::string_view label, std::span<const Tree> children) {
    if (label.empty()) throw std::invalid_argument("Tree: empty label");
    std::vector<const detail::TreeNode*> kids;
    kids.reserve(children.size());
    for (const Tree& c : children) kids.push_back(c.node_);
    return Tree(detail::tree_table().intern(label, std::move(kids)));
  }
  static Tree make(std::string_view label, std::initializer_list<Tree> children) {
    return make(label, std::span<const Tree>(children.begin(), children.size()));
  }

  const std::string& label() const { return node_->label; }
  std::size_t num_children() const { return node_->children.size(); }
  Tree child(std::size_t i) const { return Tree(node_->children.at(i)); }
  std::vector<Tree> children() const {
    std::vector<Tree> out;
    out.reserve(node_->children.size());
    for (auto* c : node_->children) out.push_back(Tree(c));
    return out;
  }
  int size() const { return node_->size; }
  bool is_leaf() const { return node_->children.empty(); }
  std::size_t hash() const { return node_->hash; }
  const void* id() const { return node_; }

  friend bool operator==(Tree a, Tree b) { return a.node_ == b.node_; }
  friend std::strong_ordering operator<=>(Tree a, Tree b) {
    int c = detail::compare_nodes(a.node_, b.node_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  explicit Tree(const detail::TreeNode* n) : node_(n) {}
  const detail::TreeNode* node_;
};

inline int degree(Tree t) { return t.size(); }

/// Ordered forest; the empty forest is the unit. Also used as a word over the tree alphabet.
class Forest {
 public:
  using letter_type = Tree;

  Forest() = default;
  explicit Forest(std::vector<Tree> trees) : trees_(std::move(trees)) {
    for (Tree t : trees_) degree_ += t.size();
  }
  Forest(std::initializer_list<Tree> trees) : Forest(std::vector<Tree>(trees)) {}

  std::size_t size() const { return trees_.size(); }
  bool empty() const { return trees_.empty(); }
  int degree() const { return degree_; }
  Tree operator[](std::size_t i) const { return trees_[i]; }
  auto begin() const { return trees_.begin(); }
  auto end() const { return trees_.end(); }
  const std::vector<Tree>& trees() const { return trees_; }

  Forest slice(std::size_t from, std::size_t to) const {
    return Forest(std::vector<Tree>(trees_.begin() + from, trees_.begin() + to));
  }
  Forest operator+(const Forest& o) const {
    std::vector<Tree> v = trees_;
    v.insert(v.end(), o.trees_.begin(), o.trees_.end());
    return Forest(std::move(v));
  }
  Forest with(std::size_t i, Tree t) const {
    std::vector<Tree> v = trees_;
    v[i] = t;
    return Forest(std::move(v));
  }

  std::size_t hash() const {
    std::size_t h = trees_.size();
    for (Tree t : trees_) h = detail::hash_mix(h, t.hash());
    return h;
  }

  friend bool operator==(const Forest& a, const Forest& b) { return a.trees_ == b.trees_; }
  // degree, then length, then lexicographic in the tree order
  friend std::strong_ordering operator<=>(const Forest& a, const Forest& b) {
    if (a.degree_ != b.degree_) return a.degree_ <=> b.degree_;
    if (a.trees_.size() != b.trees_.size()) return a.trees_.size() <=> b.trees_.size();
    for (std::size_t i = 0; i < a.trees_.size(); ++i)
      if (auto c = a.trees_[i] <=> b.trees_[i]; c != 0) return c;
    return std::strong_ordering::equal;
  }

 private:
  std::vector<Tree> trees_;
  int degree_ = 0;
};

inline int degree(const Forest& f) { return f.degree(); }

struct ForestHash {
  std::size_t operator()(const Forest& f) const { return f.hash(); }
};
struct TreeHash {
  std::size_t operator()(Tree t) const { return t.hash(); }
};

inline std::string encode(Tree t) {
  std::string out = t.label();
  if (!t.is_leaf()) {
    out += '[';
    for (std::size_t i = 0; i < t.num_children(); ++i) {
      if (i) out += ',';
      out += encode(t.child(i));
    }
    out += ']';
  }
  return out;
}

/// Forests are written with '.' between trees; the unit forest prints as "1".
inline std::string encode(const Forest& f) {
  if (f.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) out += '.';
    out += encode(f[i]);
  }
  return out;
}

namespace detail {

class TreeParser {
 public:
  explicit TreeParser(std::string_view s) : s_(s) {}

  Tree tree() {
    skip();
    std::size_t start = pos_;
    if (pos_ >= s_.size() || !std::isalpha(static_cast<unsigned char>(s_[pos_])))
      throw ParseError("expected label", pos_);
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    std::string_view label = s_.substr(start, pos_ - start);
    skip();
    std::vector<Tree> kids;
    if (pos_ < s_.size() && s_[pos_] == '[') {
      ++pos_;
      kids.push_back(tree());
      skip();
      while (pos_ < s_.size() && s_[pos_] == ',') {
        ++pos_;
        kids.push_back(tree());
        skip();
      }
      expect(']');
    }
    return Tree::make(label, kids);
  }

  Forest forest() {
    skip();
    if (pos_ < s_.size() && s_[pos_] == '1') {
      ++pos_;
      return Forest();
    }
    std::vector<Tree> trees{tree()};
    skip();
    while (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      trees.push_back(tree());
      skip();
    }
    return Forest(std::move(trees));
  }

  void finish() {
    skip();
    if (pos_ != s_.size()) throw ParseError("unexpected character '" + std::string(1, s_[pos_]) + "'", pos_);
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  void expect(char c) {
    if (pos_ >= s_.size() || s_[pos_] != c)
      throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Tree decode_tree(std::string_view s) {
  detail::TreeParser p(s);
  Tree t = p.tree();
  p.finish();
  return t;
}

/// Accepts "1" or the empty string for the unit forest.
inline Forest decode_forest(std::string_view s) {
  if (s.find_first_not_of(" \t") == std::string_view::npos) return Forest();
  detail::TreeParser p(s);
  Forest f = p.forest();
  p.finish();
  return f;
}

using TreeCombo = Combo<Tree>;

inline Tree with_children(Tree t, std::span<const Tree> kids) { return Tree::make(t.label(), kids); }

/// σ ⋄ τ: σ becomes the rightmost child of τ's root.
inline Tree butcher_right(Tree sigma, Tree tau) {
  auto kids = tau.children();
  kids.push_back(sigma);
  return with_children(tau, kids);
}

/// σ ↘ τ: σ becomes the leftmost child of τ's root.
inline Tree butcher_left(Tree sigma, Tree tau) {
  auto kids = tau.children();
  kids.insert(kids.begin(), sigma);
  return with_children(tau, kids);
}

/// σ ↷ τ: sum over the vertices of τ of σ attached as leftmost child.
inline TreeCombo graft_left(Tree sigma, Tree tau) {
  TreeCombo out(butcher_left(sigma, tau));
  auto kids = tau.children();
  for (std::size_t i = 0; i < kids.size(); ++i) {
    Tree keep = kids[i];
    for (const auto& [g, c] : graft_left(sigma, keep)) {
      kids[i] = g;
      out.add(with_children(tau, kids), c);
    }
    kids[i] = keep;
  }
  return out;
}

inline TreeCombo graft_left(const TreeCombo& sigma, const TreeCombo& tau) {
  return map_bilinear<TreeCombo>(sigma, tau, [](Tree a, Tree b) { return graft_left(a, b); });
}

namespace detail {

inline Tree regraft(Tree node, int& next_id, const std::vector<int>& where, const Forest& w) {
  int me = next_id++;
  std::vector<Tree> kids;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (where[i] == me) kids.push_back(w[i]);
  for (Tree c : node.children()) kids.push_back(regraft(c, next_id, where, w));
  return with_children(node, kids);
}

}  // namespace detail

/// ω ▷ τ for a forest ω: every tree of ω is attached to some vertex of τ; trees sharing a
/// vertex are prepended there in forest order.
inline TreeCombo multi_graft(const Forest& omega, Tree tau) {
  TreeCombo out;
  const int nv = tau.size();
  std::vector<int> where(omega.size(), 0);
  while (true) {
    int id = 0;
    out.add(detail::regraft(tau, id, where, omega), Rational(1));
    std::size_t k = 0;
    while (k < where.size() && ++where[k] == nv) where[k++] = 0;
    if (k == where.size()) break;
  }
  return out;
}

/// Ψ from (trees, ↘) to (trees, ↷), identity on single vertices.
inline TreeCombo psi_iso(Tree t) {
  static std::unordered_map<Tree, TreeCombo, TreeHash> memo;
  if (t.is_leaf()) return TreeCombo(t);
  if (auto it = memo.find(t); it != memo.end()) return it->second;
  auto kids = t.children();
  Tree first = kids.front();
  kids.erase(kids.begin());
  TreeCombo out = graft_left(psi_iso(first), psi_iso(with_children(t, kids)));
  memo.emplace(t, out);
  return out;
}

namespace detail {

// Order in which Ψ is unitriangular: size, label, root degree, then children.
inline int psi_compare(Tree a, Tree b) {
  if (a == b) return 0;
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  if (int c = a.label().compare(b.label())) return c < 0 ? -1 : 1;
  if (a.num_children() != b.num_children()) return a.num_children() < b.num_children() ? -1 : 1;
  for (std::size_t i = 0; i < a.num_children(); ++i)
    if (int c = psi_compare(a.child(i), b.child(i))) return c;
  return 0;
}

}  // namespace detail

inline TreeCombo psi_inverse(TreeCombo x) {
  TreeCombo out;
  while (!x.empty()) {
    auto top = x.begin();
    for (auto it = x.begin(); it != x.end(); ++it)
      if (detail::psi_compare(it->first, top->first) > 0) top = it;
    Tree t = top->first;
    Rational c = top->second;
    out.add(t, c);
    x.add(psi_iso(t), -c);
    if (!x.coeff(t).is_zero()) throw std::logic_error("psi_inverse: leading term did not cancel");
  }
  return out;
}

inline Tree mirror(Tree t) {
  auto kids = t.children();
  std::reverse(kids.begin(), kids.end());
  for (Tree& k : kids) k = mirror(k);
  return with_children(t, kids);
}

/// Representative of the non-planar tree underlying t (children sorted recursively).
inline Tree nonplanar_canonical(Tree t) {
  auto kids = t.children();
  for (Tree& k : kids) k = nonplanar_canonical(k);
  std::sort(kids.begin(), kids.end());
  return with_children(t, kids);
}

/// Non-planar grafting σ → τ: σ attached once to each vertex, results canonicalized.
inline TreeCombo nonplanar_graft(Tree sigma, Tree tau) {
  TreeCombo out;
  std::function<void(Tree, const std::function<Tree(Tree)>&)> walk =
      [&](Tree node, const std::function<Tree(Tree)>& rebuild) {
        out.add(nonplanar_canonical(rebuild(butcher_left(sigma, node))), Rational(1));
        auto kids = node.children();
        for (std::size_t i = 0; i < kids.size(); ++i) {
          walk(kids[i], [&, i, kids](Tree repl) mutable {
            kids[i] = repl;
            return rebuild(with_children(node, kids));
          });
        }
      };
  walk(tau, [](Tree x) { return x; });
  return out;
}

inline std::vector<Tree> make_alphabet(const std::vector<std::string>& labels) {
  std::vector<Tree> out;
  for (const auto& l : labels) out.push_back(Tree::leaf(l));
  return out;
}

/// All planar trees with n vertices decorated by the given labels, in canonical order.
inline std::vector<Tree> trees_of_size(int n, const std::vector<std::string>& labels);

/// All forests of total degree n (including the unit when n == 0), in canonical order.
inline std::vector<Forest> forests_of_degree(int n, const std::vector<std::string>& labels) {
  static std::map<std::pair<int, std::vector<std::string>>, std::vector<Forest>> memo;
  auto key = std::make_pair(n, labels);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  std::vector<Forest> out;
  if (n == 0) {
    out.push_back(Forest());
  } else {
    for (int first = 1; first <= n; ++first)
      for (Tree t : trees_of_size(first, labels))
        for (const Forest& rest : forests_of_degree(n - first, labels))
          out.push_back(Forest({t}) + rest);
  }
  std::sort(out.begin(), out.end());
  memo.emplace(key, out);
  return out;
}

inline std::vector<Tree> trees_of_size(int n, const std::vector<std::string>& labels) {
  std::vector<Tree> out;
  if (n < 1) return out;
  for (const auto& l : labels)
    for (const Forest& kids : forests_of_degree(n - 1, labels))
      out.push_back(Tree::make(l, kids.trees()));
  std::sort(out.begin(), out.end());
  return out;
}

/// Random planar tree with between 1 and max_vertices vertices.
template <class Rng>
Tree random_tree(Rng& rng, int max_vertices, const std::vector<std::string>& labels) {
  std::uniform_int_distribution<int> size_dist(1, max_vertices);
  std::uniform_int_distribution<std::size_t> label_dist(0, labels.size() - 1);
  int n = size_dist(rng);
  struct Node {
    std::size_t label;
    std::vector<int> kids;
  };
  std::vector<Node> nodes{{label_dist(rng), {}}};
  for (int v = 1; v < n; ++v) {
    std::uniform_int_distribution<int> parent_dist(0, v - 1);
    int p = parent_dist(rng);
    std::uniform_int_distribution<std::size_t> slot_dist(0, nodes[p].kids.size());
    std::size_t slot = slot_dist(rng);
    nodes.push_back({label_dist(rng), {}});
    nodes[p].kids.insert(nodes[p].kids.begin() + static_cast<long>(slot), v);
  }
  std::function<Tree(int)> build = [&](int i) {
    std::vector<Tree> kids;
    for (int k : nodes[i].kids) kids.push_back(build(k));
    return Tree::make(labels[nodes[i].label], kids);
  };
  return build(0);
}

}  // namespace postlie
