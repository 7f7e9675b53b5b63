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
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "postlie/tensor.hpp"

namespace postlie {

/// Partition of {1..n}; blocks are sorted internally and ordered by their maximum.
struct SetPartition {
  std::vector<std::vector<int>> blocks;
  friend bool operator==(const SetPartition&, const SetPartition&) = default;
};

/// All partitions of {1..n}, enumerated in restricted-growth-string order.
inline std::vector<SetPartition> partitions(int n) {
  if (n < 1 || n > 12) throw std::out_of_range("partitions: n must lie in 1..12");
  std::vector<SetPartition> out;
  std::vector<int> rgs(n, 0), maxima(n, 0);
  while (true) {
    int nblocks = *std::max_element(rgs.begin(), rgs.end()) + 1;
    std::vector<std::vector<int>> blocks(nblocks);
    for (int i = 0; i < n; ++i) blocks[rgs[i]].push_back(i + 1);
    std::sort(blocks.begin(), blocks.end(),
              [](const auto& a, const auto& b) { return a.back() < b.back(); });
    out.push_back({std::move(blocks)});
    // next restricted growth string: a_i ≤ 1 + max(a_0..a_{i-1})
    int i = n - 1;
    while (i > 0 && rgs[i] == maxima[i - 1] + 1) --i;
    if (i == 0) break;
    ++rgs[i];
    maxima[i] = std::max(maxima[i - 1], rgs[i]);
    for (int j = i + 1; j < n; ++j) {
      rgs[j] = 0;
      maxima[j] = maxima[i];
    }
  }
  return out;
}

inline long bell_number(int n) {
  std::vector<std::vector<long>> tri{{1}};
  for (int i = 1; i <= n; ++i) {
    std::vector<long> row{tri.back().back()};
    for (long x : tri.back()) row.push_back(row.back() + x);
    tri.push_back(row);
  }
  return tri[n][0];
}

/// K on a basis forest via K(yU) = y·K(U) − K(y▷U).
inline const TensorElement& k_map(const Forest& f) {
  static std::unordered_map<Forest, TensorElement, ForestHash> memo;
  if (auto it = memo.find(f); it != memo.end()) return it->second;
  TensorElement out;
  if (f.size() <= 1) {
    out = TensorElement(f);
  } else {
    Tree y = f[0];
    Forest rest = f.slice(1, f.size());
    out = concat(letter(y), k_map(rest));
    for (const auto& [g, c] : dalgebra().letter_on_forest(y, rest)) out.add(k_map(g), -c);
  }
  return memo.emplace(f, std::move(out)).first->second;
}

inline TensorElement k_map(const TensorElement& u) {
  TensorElement out;
  for (const auto& [f, c] : u) out.add(k_map(f), c);
  return out;
}

/// K⁻¹ on a basis forest by the set-partition formula: each block contributes the
/// right-nested ▷ of its letters, blocks are concatenated in order of their maximum.
inline const TensorElement& k_inverse(const Forest& f) {
  static std::unordered_map<Forest, TensorElement, ForestHash> memo;
  if (auto it = memo.find(f); it != memo.end()) return it->second;
  TensorElement out;
  if (f.empty()) {
    out = unit_element();
  } else {
    auto& d = dalgebra();
    for (const SetPartition& p : partitions(static_cast<int>(f.size()))) {
      TensorElement term = unit_element();
      for (const auto& block : p.blocks) {
        TreeCombo nested(f[block.back() - 1]);
        for (auto it = block.rbegin() + 1; it != block.rend(); ++it)
          nested = d.magma(TreeCombo(f[*it - 1]), nested);
        term = concat(term, letters(nested));
      }
      out += term;
    }
  }
  return memo.emplace(f, std::move(out)).first->second;
}

inline TensorElement k_inverse(const TensorElement& u) {
  TensorElement out;
  for (const auto& [f, c] : u) out.add(k_inverse(f), c);
  return out;
}

/// b_n = K⁻¹(y^n) over the one-letter alphabet {y}.
inline TensorElement bell_poly(int n, Tree y = Tree::leaf("y")) {
  if (n < 1 || n > 8) throw std::out_of_range("bell_poly: n must lie in 1..8");
  return k_inverse(Forest(std::vector<Tree>(static_cast<std::size_t>(n), y)));
}

}  // namespace postlie
