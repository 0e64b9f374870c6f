#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pmorse/simplicial_complex.hpp"

namespace pmorse {

// Elementary collapse: `face` is free with unique proper coface `coface`.
struct CollapsePair {
  Simplex face;
  Simplex coface;
  friend bool operator==(const CollapsePair&, const CollapsePair&) = default;
};

using CollapseSequence = std::vector<CollapsePair>;

struct CollapseOutcome {
  bool success = false;
  CollapseSequence sequence;
  SimplicialComplex core;
  // "greedy", "restart:<n>", "exhaustive" or "none"
  std::string strategy = "none";
};

struct CollapseOptions {
  std::uint64_t seed = 0;
  int restarts = 64;
  std::size_t exhaustive_threshold = 200;
  std::size_t exhaustive_node_budget = 200000;
};

// Hasse diagram of a complex: every nonempty face with its facets and
// cofacets, faces indexed in lexicographic order.
class FaceLattice {
 public:
  explicit FaceLattice(const SimplicialComplex& k) : faces_(k.faces()) {
    const std::size_t n = faces_.size();
    facet_begin_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t c = faces_[i].size() > 1 ? faces_[i].size() : 0;
      facet_begin_[i + 1] = facet_begin_[i] + c;
    }
    facets_.resize(facet_begin_[n]);
    std::vector<std::size_t> cofacet_count(n, 0);
    Simplex scratch;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& s = faces_[i];
      if (s.size() < 2) continue;
      for (std::size_t drop = 0; drop < s.size(); ++drop) {
        scratch.clear();
        for (std::size_t j = 0; j < s.size(); ++j) {
          if (j != drop) scratch.push_back(s[j]);
        }
        const int f = *find(scratch);
        facets_[facet_begin_[i] + drop] = f;
        ++cofacet_count[static_cast<std::size_t>(f)];
      }
    }
    cofacet_begin_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
      cofacet_begin_[i + 1] = cofacet_begin_[i] + cofacet_count[i];
    }
    cofacets_.resize(cofacet_begin_[n]);
    std::vector<std::size_t> fill(cofacet_begin_.begin(), cofacet_begin_.end() - 1);
    for (std::size_t i = 0; i < n; ++i) {
      for (int f : facets(static_cast<int>(i))) {
        cofacets_[fill[static_cast<std::size_t>(f)]++] = static_cast<int>(i);
      }
    }
  }

  std::size_t size() const noexcept { return faces_.size(); }
  const Simplex& face(int id) const { return faces_[static_cast<std::size_t>(id)]; }
  const std::vector<Simplex>& faces() const noexcept { return faces_; }

  std::optional<int> find(const Simplex& s) const {
    auto it = std::lower_bound(faces_.begin(), faces_.end(), s);
    if (it == faces_.end() || *it != s) return std::nullopt;
    return static_cast<int>(it - faces_.begin());
  }

  std::span<const int> facets(int id) const {
    const auto i = static_cast<std::size_t>(id);
    return {facets_.data() + facet_begin_[i], facet_begin_[i + 1] - facet_begin_[i]};
  }
  std::span<const int> cofacets(int id) const {
    const auto i = static_cast<std::size_t>(id);
    return {cofacets_.data() + cofacet_begin_[i],
            cofacet_begin_[i + 1] - cofacet_begin_[i]};
  }

 private:
  std::vector<Simplex> faces_;
  std::vector<std::size_t> facet_begin_;
  std::vector<int> facets_;
  std::vector<std::size_t> cofacet_begin_;
  std::vector<int> cofacets_;
};

namespace detail {

// Mutable collapse state over a FaceLattice. Faces of the target (if any) are
// protected and never removed.
class CollapseState {
 public:
  CollapseState(const FaceLattice& lattice, const std::vector<char>& protect)
      : lattice_(&lattice),
        alive_(lattice.size(), 1),
        live_cofacets_(lattice.size(), 0),
        protected_(protect),
        alive_count_(lattice.size()) {
    for (std::size_t i = 0; i < lattice.size(); ++i) {
      live_cofacets_[i] = static_cast<int>(lattice.cofacets(static_cast<int>(i)).size());
    }
  }

  bool alive(int id) const { return alive_[static_cast<std::size_t>(id)] != 0; }
  std::size_t alive_count() const noexcept { return alive_count_; }

  // Unique live cofacet if `id` is free, otherwise nullopt.
  std::optional<int> free_partner(int id) const {
    const auto i = static_cast<std::size_t>(id);
    if (!alive_[i] || protected_[i] || live_cofacets_[i] != 1) return std::nullopt;
    for (int c : lattice_->cofacets(id)) {
      if (alive_[static_cast<std::size_t>(c)]) {
        if (live_cofacets_[static_cast<std::size_t>(c)] != 0) return std::nullopt;
        return c;
      }
    }
    return std::nullopt;
  }

  // Removes (face, coface) and reports faces that may have become free.
  template <typename Push>
  void collapse(int face, int coface, Push&& push) {
    kill(face);
    kill(coface);
    auto touch = [&](int x) {
      if (!alive(x)) return;
      const int c = live_cofacets_[static_cast<std::size_t>(x)];
      if (c == 1) push(x);
      if (c == 0) {
        for (int y : lattice_->facets(x)) {
          if (alive(y) && live_cofacets_[static_cast<std::size_t>(y)] == 1) push(y);
        }
      }
    };
    for (int f : lattice_->facets(coface)) touch(f);
    for (int f : lattice_->facets(face)) touch(f);
  }

  void revive(int id) {
    const auto i = static_cast<std::size_t>(id);
    alive_[i] = 1;
    ++alive_count_;
    for (int f : lattice_->facets(id)) ++live_cofacets_[static_cast<std::size_t>(f)];
  }

  const std::vector<char>& alive_mask() const noexcept { return alive_; }

  std::vector<Simplex> alive_faces() const {
    std::vector<Simplex> out;
    for (std::size_t i = 0; i < alive_.size(); ++i) {
      if (alive_[i]) out.push_back(lattice_->face(static_cast<int>(i)));
    }
    return out;
  }

 private:
  void kill(int id) {
    const auto i = static_cast<std::size_t>(id);
    alive_[i] = 0;
    --alive_count_;
    for (int f : lattice_->facets(id)) --live_cofacets_[static_cast<std::size_t>(f)];
  }

  const FaceLattice* lattice_;
  std::vector<char> alive_;
  std::vector<int> live_cofacets_;
  std::vector<char> protected_;
  std::size_t alive_count_;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

struct SearchContext {
  const FaceLattice& lattice;
  std::vector<char> protect;
  std::size_t goal_count;  // alive faces at success
};

inline bool reached_goal(const SearchContext& ctx, const CollapseState& st) {
  return st.alive_count() == ctx.goal_count;
}

inline CollapseOutcome finish(const SearchContext& ctx, const CollapseState& st,
                              std::vector<std::pair<int, int>> steps,
                              std::string strategy) {
  CollapseOutcome out;
  out.success = reached_goal(ctx, st);
  out.strategy = out.success ? std::move(strategy) : "none";
  out.sequence.reserve(steps.size());
  for (auto [f, c] : steps) {
    out.sequence.push_back({ctx.lattice.face(f), ctx.lattice.face(c)});
  }
  out.core = SimplicialComplex::from_maximal_faces(st.alive_faces());
  return out;
}

// Always collapses the lexicographically smallest free face.
inline CollapseOutcome greedy_collapse(const SearchContext& ctx) {
  CollapseState st(ctx.lattice, ctx.protect);
  std::priority_queue<int, std::vector<int>, std::greater<>> queue;
  for (std::size_t i = 0; i < ctx.lattice.size(); ++i) {
    if (st.free_partner(static_cast<int>(i))) queue.push(static_cast<int>(i));
  }
  std::vector<std::pair<int, int>> steps;
  while (!queue.empty()) {
    const int face = queue.top();
    queue.pop();
    const auto partner = st.free_partner(face);
    if (!partner) continue;
    steps.emplace_back(face, *partner);
    st.collapse(face, *partner, [&](int x) { queue.push(x); });
  }
  return finish(ctx, st, std::move(steps), "greedy");
}

inline CollapseOutcome random_collapse(const SearchContext& ctx,
                                       std::uint64_t seed, int restart) {
  CollapseState st(ctx.lattice, ctx.protect);
  std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(restart) + 1)));
  std::vector<int> pool;
  for (std::size_t i = 0; i < ctx.lattice.size(); ++i) {
    if (st.free_partner(static_cast<int>(i))) pool.push_back(static_cast<int>(i));
  }
  std::vector<std::pair<int, int>> steps;
  while (!pool.empty()) {
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    const std::size_t at = pick(rng);
    const int face = pool[at];
    pool[at] = pool.back();
    pool.pop_back();
    const auto partner = st.free_partner(face);
    if (!partner) continue;
    steps.emplace_back(face, *partner);
    st.collapse(face, *partner, [&](int x) { pool.push_back(x); });
  }
  return finish(ctx, st, std::move(steps), "restart:" + std::to_string(restart));
}

// Depth-first search over all collapse orders, memoizing dead states.
inline std::optional<CollapseOutcome> exhaustive_collapse(const SearchContext& ctx,
                                                          std::size_t budget) {
  CollapseState st(ctx.lattice, ctx.protect);
  std::set<std::vector<char>> dead;
  std::vector<std::pair<int, int>> steps;
  std::size_t nodes = 0;
  bool exhausted = false;

  std::function<bool()> dfs = [&]() -> bool {
    if (reached_goal(ctx, st)) return true;
    if (++nodes > budget) {
      exhausted = true;
      return false;
    }
    if (dead.count(st.alive_mask())) return false;
    for (std::size_t i = 0; i < ctx.lattice.size(); ++i) {
      const int face = static_cast<int>(i);
      const auto partner = st.free_partner(face);
      if (!partner) continue;
      steps.emplace_back(face, *partner);
      st.collapse(face, *partner, [](int) {});
      if (dfs()) return true;
      if (exhausted) return false;
      steps.pop_back();
      st.revive(*partner);
      st.revive(face);
    }
    dead.insert(st.alive_mask());
    return false;
  };
  if (!dfs()) return std::nullopt;
  return finish(ctx, st, std::move(steps), "exhaustive");
}

}  // namespace detail

// Searches for elementary collapses reducing K to a single vertex (no target)
// or exactly onto `target` (whose faces are never removed).
//
// A failed search means "not certified"; it does not prove that K is not
// collapsible. Strategy: lexicographic greedy, then seeded random restarts,
// then exhaustive search on small complexes.
inline CollapseOutcome try_collapse(const SimplicialComplex& k,
                                    const std::optional<SimplicialComplex>& target,
                                    const CollapseOptions& options = {}) {
  if (target && !target->is_subcomplex_of(k)) {
    throw InputError("try_collapse: target is not a subcomplex");
  }
  if (k.empty()) {
    CollapseOutcome out;
    out.success = target.has_value();
    out.strategy = out.success ? "greedy" : "none";
    return out;
  }
  const FaceLattice lattice(k);
  detail::SearchContext ctx{lattice, std::vector<char>(lattice.size(), 0), 1};
  if (target) {
    std::size_t count = 0;
    for (const auto& s : target->faces()) {
      ctx.protect[static_cast<std::size_t>(*lattice.find(s))] = 1;
      ++count;
    }
    ctx.goal_count = count;
    if (count == 0) {
      // An empty target is reachable only if K itself vanishes, which an
      // elementary collapse can never achieve.
      ctx.goal_count = 0;
    }
  }

  CollapseOutcome best = detail::greedy_collapse(ctx);
  if (best.success) return best;
  for (int r = 0; r < options.restarts; ++r) {
    auto attempt = detail::random_collapse(ctx, options.seed, r);
    if (attempt.success) return attempt;
  }
  if (lattice.size() <= options.exhaustive_threshold) {
    if (auto found = detail::exhaustive_collapse(ctx, options.exhaustive_node_budget)) {
      return *found;
    }
  }
  return best;
}

struct ReplayResult {
  bool valid = false;
  std::string error;
  SimplicialComplex core;
};

// Re-checks a collapse sequence from scratch: every listed face must be free
// with the listed coface as its unique proper coface, target faces must stay,
// and the end result must be a single vertex (no target) or the target.
inline ReplayResult replay_collapse(const SimplicialComplex& k,
                                    const CollapseSequence& sequence,
                                    const std::optional<SimplicialComplex>& target) {
  ReplayResult out;
  if (k.empty()) {
    out.error = "empty complex";
    return out;
  }
  if (target && !target->is_subcomplex_of(k)) {
    out.error = "target is not a subcomplex";
    return out;
  }
  const FaceLattice lattice(k);
  std::vector<char> protect(lattice.size(), 0);
  if (target) {
    for (const auto& s : target->faces()) protect[static_cast<std::size_t>(*lattice.find(s))] = 1;
  }
  detail::CollapseState st(lattice, protect);
  for (std::size_t step = 0; step < sequence.size(); ++step) {
    const auto& [face, coface] = sequence[step];
    const auto f = lattice.find(face);
    const auto c = lattice.find(coface);
    const std::string where = "step " + std::to_string(step) + " " + to_string(face) +
                              " -> " + to_string(coface) + ": ";
    if (!f || !c || !st.alive(*f) || !st.alive(*c)) {
      out.error = where + "face not present";
      return out;
    }
    if (protect[static_cast<std::size_t>(*f)]) {
      out.error = where + "removes a target face";
      return out;
    }
    const auto partner = st.free_partner(*f);
    if (!partner || *partner != *c) {
      out.error = where + "face is not free with that coface";
      return out;
    }
    st.collapse(*f, *c, [](int) {});
  }
  out.core = SimplicialComplex::from_maximal_faces(st.alive_faces());
  if (target) {
    if (!(out.core == *target)) {
      out.error = "final complex differs from target";
      return out;
    }
  } else if (out.core.num_vertices() != 1 || out.core.dimension() != 0) {
    out.error = "final complex is not a single vertex";
    return out;
  }
  out.valid = true;
  return out;
}

// Collapse of a cone onto its apex: pairs (rho, rho + apex) for every face rho
// avoiding the apex, largest first.
inline CollapseSequence cone_collapse_sequence(const SimplicialComplex& k, Vertex apex) {
  for (const auto& m : k.maximal_faces()) {
    if (!std::binary_search(m.begin(), m.end(), apex)) {
      throw InputError("cone_collapse_sequence: " + std::to_string(apex) +
                       " is not a cone point");
    }
  }
  std::vector<Simplex> base;
  for (auto& s : k.faces()) {
    if (!std::binary_search(s.begin(), s.end(), apex)) base.push_back(std::move(s));
  }
  std::stable_sort(base.begin(), base.end(), [](const Simplex& a, const Simplex& b) {
    return a.size() > b.size();
  });
  CollapseSequence seq;
  for (const auto& rho : base) seq.push_back({rho, simplex_union(rho, {apex})});
  return seq;
}

// Removes the open star of `v`, given that its link is a cone on `apex`:
// the cone collapse of the link lifted by v, then (v, v + apex).
inline CollapseSequence star_collapse_sequence(const SimplicialComplex& k, Vertex v,
                                               Vertex apex) {
  const SimplicialComplex lk = link(k, v);
  if (lk.empty()) {
    throw InputError("star_collapse_sequence: vertex " + std::to_string(v) +
                     " has empty link");
  }
  CollapseSequence seq;
  for (const auto& [face, coface] : cone_collapse_sequence(lk, apex)) {
    seq.push_back({simplex_union(face, {v}), simplex_union(coface, {v})});
  }
  seq.push_back({{v}, simplex_union({v}, {apex})});
  return seq;
}

// Given a collapse of K to a point, collapses K * L (disjoint labels) to the
// same point: every step (s, t) of K is lifted to (s + r, t + r) for r in L,
// largest r first, then the remaining cone over L is collapsed.
inline CollapseSequence join_collapse_sequence(const SimplicialComplex& k,
                                               const CollapseSequence& k_sequence,
                                               const SimplicialComplex& l) {
  const ReplayResult replay = replay_collapse(k, k_sequence, std::nullopt);
  if (!replay.valid) {
    throw InputError("join_collapse_sequence: factor sequence invalid: " + replay.error);
  }
  const Vertex apex = replay.core.vertices().front();
  std::vector<Simplex> rhos = l.faces();
  std::stable_sort(rhos.begin(), rhos.end(), [](const Simplex& a, const Simplex& b) {
    return a.size() > b.size();
  });
  CollapseSequence seq;
  seq.reserve((k_sequence.size() + 1) * (rhos.size() + 1));
  for (const auto& [face, coface] : k_sequence) {
    for (const auto& rho : rhos) {
      seq.push_back({simplex_union(face, rho), simplex_union(coface, rho)});
    }
    seq.push_back({face, coface});
  }
  for (const auto& rho : rhos) seq.push_back({rho, simplex_union(rho, {apex})});
  return seq;
}

}  // namespace pmorse
