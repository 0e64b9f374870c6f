#pragma once

#include <algorithm>
#include <iterator>
#include <unordered_map>
#include <vector>

#include "pmorse/simplicial_complex.hpp"

namespace pmorse {

namespace detail {

// Rank over GF(2) of a matrix given by sparse columns (sorted row indices).
// Standard column reduction: each column is reduced until its lowest entry is
// not the pivot of an earlier column.
inline std::size_t gf2_rank(std::vector<std::vector<int>> columns) {
  std::unordered_map<int, std::size_t> pivot_owner;
  std::size_t rank = 0;
  std::vector<int> scratch;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    auto& col = columns[c];
    while (!col.empty()) {
      auto it = pivot_owner.find(col.back());
      if (it == pivot_owner.end()) break;
      const auto& other = columns[it->second];
      scratch.clear();
      std::set_symmetric_difference(col.begin(), col.end(), other.begin(),
                                    other.end(), std::back_inserter(scratch));
      col.swap(scratch);
    }
    if (!col.empty()) {
      pivot_owner.emplace(col.back(), c);
      ++rank;
    }
  }
  return rank;
}

}  // namespace detail

// Mod-2 Betti numbers b_0 .. b_max_dim. The empty complex has all zeros.
inline std::vector<std::size_t> betti_mod2(const SimplicialComplex& k,
                                           int max_dim) {
  if (max_dim < 0) throw InputError("betti_mod2: max_dim must be >= 0");
  const std::size_t top = static_cast<std::size_t>(max_dim) + 1;
  std::vector<std::vector<Simplex>> by_dim(top + 1);
  for (auto& s : k.faces()) {
    if (s.size() - 1 <= top) by_dim[s.size() - 1].push_back(std::move(s));
  }
  // rank of the boundary map C_d -> C_{d-1}
  std::vector<std::size_t> rank(top + 1, 0);
  for (std::size_t d = 1; d <= top; ++d) {
    const auto& lower = by_dim[d - 1];
    std::vector<std::vector<int>> columns;
    columns.reserve(by_dim[d].size());
    for (const auto& s : by_dim[d]) {
      std::vector<int> col;
      for (std::size_t drop = 0; drop < s.size(); ++drop) {
        Simplex f;
        for (std::size_t i = 0; i < s.size(); ++i) {
          if (i != drop) f.push_back(s[i]);
        }
        auto it = std::lower_bound(lower.begin(), lower.end(), f);
        col.push_back(static_cast<int>(it - lower.begin()));
      }
      std::sort(col.begin(), col.end());
      columns.push_back(std::move(col));
    }
    rank[d] = detail::gf2_rank(std::move(columns));
  }
  std::vector<std::size_t> betti(top, 0);
  for (std::size_t d = 0; d < top; ++d) {
    betti[d] = by_dim[d].size() - rank[d] - rank[d + 1];
  }
  return betti;
}

}  // namespace pmorse
