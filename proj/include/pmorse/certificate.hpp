#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "pmorse/gosset.hpp"
#include "pmorse/morse_links.hpp"
#include "pmorse/polytope.hpp"
#include "pmorse/state_system.hpp"

namespace pmorse {

inline constexpr const char* kVersion = "1.0.0";

enum class Subject { P6PerfectMorse, P5Fibration, Generic };
enum class Mode { Fibration, Perfect };

inline const char* to_string(Subject s) {
  switch (s) {
    case Subject::P6PerfectMorse: return "P6_perfect_morse";
    case Subject::P5Fibration: return "P5_fibration";
    case Subject::Generic: return "generic";
  }
  return "?";
}

inline const char* to_string(Mode m) { return m == Mode::Fibration ? "fibration" : "perfect"; }

// Exact rational with a positive denominator, always reduced.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational of(std::int64_t n, std::int64_t d) {
    if (d == 0) throw InternalError("rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
    return {g ? n / g : 0, g ? d / g : 1};
  }
  friend Rational operator+(const Rational& a, const Rational& b) {
    return of(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend Rational operator*(std::int64_t k, const Rational& a) { return of(k * a.num, a.den); }
  friend bool operator==(const Rational&, const Rational&) = default;

  std::string str() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
  }
};

struct EulerRecord {
  Rational chi_per_copy;
  Rational critical_per_copy;
  std::size_t bad_vertices = 0;
  int sign = 0;  // contribution of one critical point to the Euler characteristic
  bool pass = false;
};

// Face census on one side, census of all-pairs top-codimension bad faces on
// the other. For even dimension d the critical points have index d/2 and
// each contributes (-1)^(d/2); in odd dimension both sides must vanish.
inline EulerRecord euler_identity(const Polytope& p, const MoveSystem& m) {
  EulerRecord e;
  for (int k = 0; k <= p.dimension(); ++k) {
    const auto n = static_cast<std::int64_t>(enumerate_faces(p, k).size());
    e.chi_per_copy = e.chi_per_copy + Rational::of(k % 2 ? -n : n, std::int64_t{1} << k);
  }
  for (const auto& [sig, faces] : classify_bad_faces(p, m)) {
    const bool pairs = std::all_of(sig.begin(), sig.end(), [](int c) { return c == 2; });
    for (const auto& f : faces) {
      if (pairs && static_cast<int>(f.codim()) == p.dimension()) ++e.bad_vertices;
    }
  }
  e.critical_per_copy =
      Rational::of(static_cast<std::int64_t>(e.bad_vertices), std::int64_t{1} << p.dimension());
  if (p.dimension() % 2 == 0) {
    e.sign = (p.dimension() / 2) % 2 ? -1 : 1;
    e.pass = e.chi_per_copy == e.sign * e.critical_per_copy;
  } else {
    e.pass = e.chi_per_copy == Rational{} && e.bad_vertices == 0;
  }
  return e;
}

inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::uint64_t task_seed(std::uint64_t root, const std::string& key) {
  return detail::splitmix64(root ^ fnv1a64(key));
}

// Runs fn(0..n-1) on up to `workers` threads. Results must be written by
// index; the first exception (lowest index) is rethrown.
inline void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& fn) {
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  const unsigned count = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  for (unsigned t = 0; t < count; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

struct PipelineOptions {
  std::uint64_t seed = 0;
  int restarts = 64;
  unsigned workers = 1;
  bool wall_clock = false;
};

// One classification shared by every state of the orbit that induces the
// same inherited state on the face.
struct VerdictClass {
  FaceHandle face;
  std::string inherited_key;
  std::vector<int> states;  // orbit indices, ascending
  LinkClassification classification;
};

struct BoundaryClass {
  int cusp = 0;
  FaceHandle face;  // facets of the cusp section, as parent facet ids
  std::string inherited_key;
  std::vector<int> states;
  LinkClassification classification;
};

struct CuspRecord {
  int cusp = 0;
  int state = 0;
  CuspWitness witness;
  std::size_t boundary_faces = 0;
  bool pass = false;
};

struct CheckLine {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Certificate {
  Subject subject = Subject::Generic;
  Mode mode = Mode::Perfect;
  std::optional<int> required_index;
  Polytope polytope;
  MoveSystem moves;
  std::vector<State> orbit;
  FVectorReport f_vector;
  std::map<BadFaceSignature, std::vector<FaceHandle>> bad_faces;
  std::size_t num_faces = 0;
  std::vector<VerdictClass> verdicts;
  std::vector<CuspRecord> cusps;
  std::vector<BoundaryClass> boundary;
  EulerRecord euler;
  std::uint64_t seed = 0;
  int restarts = 64;
  std::map<std::string, std::uint64_t> counters;
  std::optional<std::int64_t> wall_clock_ms;
  std::vector<CheckLine> checks;
  bool pass = false;
  std::string first_failure;
  std::string summary;

  std::map<std::string, std::size_t> histogram() const {
    std::map<std::string, std::size_t> h;
    for (const auto& v : verdicts) h[v.classification.label()] += v.states.size();
    return h;
  }
};

inline std::string subject_prefix(const Certificate& c) {
  switch (c.subject) {
    case Subject::P6PerfectMorse: return "P6";
    case Subject::P5Fibration: return "P5";
    case Subject::Generic: return "generic";
  }
  return "?";
}

inline std::string allowed_verdicts(const Certificate& c) {
  if (c.mode == Mode::Fibration) return "all links Regular";
  if (c.required_index) {
    return "all links Regular or Critical(" + std::to_string(*c.required_index) + ")";
  }
  return "all links Regular or Critical";
}

inline bool verdict_allowed(const Certificate& c, const LinkClassification& v) {
  if (v.verdict == Verdict::Regular) return true;
  if (v.verdict != Verdict::Critical || c.mode != Mode::Perfect) return false;
  return !c.required_index || v.index == *c.required_index;
}

inline void finalize(Certificate& c) {
  c.pass = std::all_of(c.checks.begin(), c.checks.end(), [](const CheckLine& l) { return l.pass; });
  const std::string title = c.mode == Mode::Fibration ? "FIBRATION" : "PERFECT MORSE";
  c.summary = subject_prefix(c) + ": " + title + (c.pass ? " CERTIFIED" : " NOT CERTIFIED") +
              " (" + allowed_verdicts(c) + ")";
}

inline std::string face_label(const Polytope& p, const FaceHandle& f) {
  std::string out = "{";
  for (std::size_t i = 0; i < f.facets.size(); ++i) {
    if (i) out += ", ";
    out += p.label(f.facets[i]);
  }
  return out + "}";
}

struct EngineInputs {
  Subject subject = Subject::Generic;
  Mode mode = Mode::Perfect;
  std::optional<int> required_index;
  Polytope polytope;
  MoveSystem moves;
  State initial;
  FVectorExpectations expectations;
  std::optional<std::set<BadFaceSignature>> allowed_signatures;
  std::optional<std::vector<State>> expected_orbit;
};

// Full pipeline: census, orbit, bad faces, every face x every orbit state,
// cusps and boundary cubes, Euler identity.
inline Certificate run_certification(const EngineInputs& in, const PipelineOptions& opt) {
  const auto started = std::chrono::steady_clock::now();
  Certificate c;
  c.subject = in.subject;
  c.mode = in.mode;
  c.required_index = in.required_index;
  c.polytope = in.polytope;
  c.moves = in.moves;
  c.seed = opt.seed;
  c.restarts = opt.restarts;
  const Polytope& p = c.polytope;
  const MoveSystem& m = c.moves;
  if (m.num_facets() != p.num_facets()) throw InputError("move system does not match the polytope");
  require_total(p, in.initial);

  auto fail = [&](const std::string& what) {
    if (c.first_failure.empty()) c.first_failure = what;
  };
  auto check = [&](std::string name, bool pass, std::string detail) {
    if (!pass) fail(name + ": " + detail);
    c.checks.push_back({std::move(name), pass, std::move(detail)});
  };

  c.f_vector = f_vector_check(p, in.expectations);
  {
    std::string detail = "cliques";
    for (auto n : c.f_vector.clique_counts) detail += " " + std::to_string(n);
    detail += "; degrees";
    for (auto d : c.f_vector.degrees) detail += " " + std::to_string(d);
    check("f-vector", c.f_vector.pass, detail);
  }

  const CompatibilityResult compat = is_compatible(p, m, in.initial);
  if (!compat.compatible) {
    throw InputError("state is not compatible: adjacent facets " + p.label(compat.witness->first) +
                     " and " + p.label(compat.witness->second) +
                     " share a move but differ in status");
  }
  c.orbit = orbit(in.initial, m);
  {
    std::string detail = std::to_string(c.orbit.size()) + " states";
    bool ok = true;
    if (in.expected_orbit) {
      ok = c.orbit == *in.expected_orbit;
      detail += ok ? " (the expected set)" : " (differs from the expected set)";
    }
    check("orbit", ok, detail);
  }

  try {
    c.bad_faces = classify_bad_faces(p, m, in.allowed_signatures);
    std::string detail;
    for (const auto& [sig, faces] : c.bad_faces) {
      detail += (detail.empty() ? "" : ", ") + signature_string(sig) + " x" + std::to_string(faces.size());
    }
    check("bad faces", true, detail.empty() ? "none" : detail);
  } catch (const CertificationError& e) {
    check("bad faces", false, e.what());
  }

  // Face x state table, grouped by inherited state.
  const std::vector<FaceHandle> faces = enumerate_all_faces(p);
  c.num_faces = faces.size();
  for (const auto& f : faces) {
    std::map<std::string, std::vector<int>> groups;
    for (std::size_t si = 0; si < c.orbit.size(); ++si) {
      groups[inherited_state(p, m, c.orbit[si], f).key()].push_back(static_cast<int>(si));
    }
    for (auto& [key, states] : groups) c.verdicts.push_back({f, key, std::move(states), {}});
  }

  // Cusp conditions and boundary cubes, grouped the same way.
  std::map<std::tuple<int, FaceHandle, std::string>, std::size_t> boundary_index;
  for (std::size_t cusp = 0; cusp < p.ideal_vertices().size(); ++cusp) {
    const auto ci = static_cast<int>(cusp);
    std::vector<FaceHandle> hfaces;
    for (std::size_t si = 0; si < c.orbit.size(); ++si) {
      const CuspRestriction r = restrict_to_cusp(p, m, c.orbit[si], ci);
      if (hfaces.empty()) hfaces = enumerate_all_faces(r.section.cube);
      CuspRecord rec{ci, static_cast<int>(si), check_cusp_condition(p, c.orbit[si], ci, m),
                     hfaces.size(), false};
      for (const auto& hf : hfaces) {
        const std::string key = inherited_state(r.section.cube, r.moves, r.state, hf).key();
        const auto k = std::make_tuple(ci, r.to_parent(hf), key);
        auto it = boundary_index.find(k);
        if (it == boundary_index.end()) {
          it = boundary_index.emplace(k, c.boundary.size()).first;
          c.boundary.push_back({ci, r.to_parent(hf), key, {}, {}});
        }
        c.boundary[it->second].states.push_back(static_cast<int>(si));
      }
      c.cusps.push_back(rec);
    }
  }

  // Classification tasks, fanned out; results land at fixed indices.
  const std::size_t nv = c.verdicts.size();
  parallel_for(nv + c.boundary.size(), opt.workers, [&](std::size_t i) {
    if (i < nv) {
      VerdictClass& v = c.verdicts[i];
      const std::string key = "face " + to_string(v.face) + " " + v.inherited_key;
      const CollapseOptions co{task_seed(opt.seed, key), opt.restarts};
      v.classification = classify_link(p, m, c.orbit[static_cast<std::size_t>(v.states.front())], v.face, co);
    } else {
      BoundaryClass& b = c.boundary[i - nv];
      const std::string key = "cusp " + std::to_string(b.cusp) + " face " + to_string(b.face) + " " + b.inherited_key;
      const CollapseOptions co{task_seed(opt.seed, key), opt.restarts};
      const CuspRestriction r = restrict_to_cusp(p, m, c.orbit[static_cast<std::size_t>(b.states.front())], b.cusp);
      b.classification = classify_link(r.section.cube, r.moves, r.state, r.from_parent(b.face), co);
    }
  });

  // Coverage and verdicts.
  std::size_t covered = 0;
  std::string bad_verdict;
  for (const auto& v : c.verdicts) {
    covered += v.states.size();
    if (bad_verdict.empty() && !verdict_allowed(c, v.classification)) {
      bad_verdict = "face " + face_label(p, v.face) + " state #" + std::to_string(v.states.front()) +
                    " is " + v.classification.label() +
                    (v.classification.note.empty() ? "" : " (" + v.classification.note + ")");
    }
  }
  check("coverage", covered == c.num_faces * c.orbit.size(),
        std::to_string(covered) + " of " + std::to_string(c.num_faces) + " faces x " +
            std::to_string(c.orbit.size()) + " states in " + std::to_string(c.verdicts.size()) + " classes");
  {
    std::string detail;
    for (const auto& [label, n] : c.histogram()) {
      detail += (detail.empty() ? "" : ", ") + label + " " + std::to_string(n);
    }
    check("verdicts", bad_verdict.empty(), bad_verdict.empty() ? detail : bad_verdict);
  }

  // A cusp record passes when its witness exists and every boundary face
  // class containing its state is Regular.
  std::map<std::pair<int, int>, std::string> boundary_failure;
  for (const auto& b : c.boundary) {
    if (b.classification.verdict == Verdict::Regular) continue;
    for (int si : b.states) {
      boundary_failure.emplace(std::make_pair(b.cusp, si),
                               "boundary face " + face_label(p, b.face) + " is " + b.classification.label());
    }
  }
  std::string cusp_failure;
  std::size_t cusp_pass = 0;
  for (auto& rec : c.cusps) {
    auto it = boundary_failure.find({rec.cusp, rec.state});
    rec.pass = rec.witness.ok && it == boundary_failure.end();
    cusp_pass += rec.pass;
    if (!rec.pass && cusp_failure.empty()) {
      const auto& label = p.ideal_vertices()[static_cast<std::size_t>(rec.cusp)].label;
      cusp_failure = "cusp " + label + " state #" + std::to_string(rec.state) + ": " +
                     (rec.witness.ok ? it->second : std::string("no move meets it in two opposite facets"));
    }
  }
  if (!c.cusps.empty() || !p.ideal_vertices().empty()) {
    check("cusps", cusp_failure.empty(),
          cusp_failure.empty() ? std::to_string(cusp_pass) + " cusp-states, " +
                                     std::to_string(c.boundary.size()) + " boundary classes"
                               : cusp_failure);
  }

  c.euler = euler_identity(p, m);
  check("euler", c.euler.pass,
        "chi per copy " + c.euler.chi_per_copy.str() + ", critical per copy " +
            c.euler.critical_per_copy.str());

  std::uint64_t pairs = 0;
  for (const auto& v : c.verdicts) {
    const auto& cl = v.classification;
    pairs += cl.collapse_out.size() + cl.collapse_in.size();
    if (cl.critical) pairs += cl.critical->ascending.size() + cl.critical->descending.size();
  }
  for (const auto& b : c.boundary) {
    pairs += b.classification.collapse_out.size() + b.classification.collapse_in.size();
  }
  c.counters = {{"faces", c.num_faces},
                {"orbit_states", c.orbit.size()},
                {"verdict_classes", c.verdicts.size()},
                {"cusp_states", c.cusps.size()},
                {"boundary_classes", c.boundary.size()},
                {"collapse_pairs", pairs}};
  if (opt.wall_clock) {
    c.wall_clock_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - started)
                          .count();
  }
  finalize(c);
  return c;
}

inline EngineInputs p6_inputs() {
  EngineInputs in;
  in.subject = Subject::P6PerfectMorse;
  in.mode = Mode::Perfect;
  in.required_index = 3;
  in.polytope = build_p6();
  in.moves = move_system_p6();
  in.initial = reference_state_p6();
  in.expectations = {{{1, 27}, {6, 72}}, 16, 27, 10};
  in.allowed_signatures = p6_bad_signatures();
  in.expected_orbit = balanced_states_p6();
  return in;
}

inline EngineInputs p5_inputs() {
  EngineInputs in;
  in.subject = Subject::P5Fibration;
  in.mode = Mode::Fibration;
  in.polytope = build_p5();
  in.moves = move_system_p5();
  in.initial = reference_state_p5();
  in.expectations = {{{1, 16}, {5, 16}}, std::nullopt, 10, std::nullopt};
  return in;
}

inline Certificate certify_p6(const PipelineOptions& opt = {}) {
  return run_certification(p6_inputs(), opt);
}

inline Certificate certify_p5(const PipelineOptions& opt = {}) {
  return run_certification(p5_inputs(), opt);
}

inline Certificate certify_generic(const Polytope& p, const MoveSystem& m, const State& s, Mode mode,
                                   const PipelineOptions& opt = {}) {
  EngineInputs in;
  in.subject = Subject::Generic;
  in.mode = mode;
  in.polytope = p;
  in.moves = m;
  in.initial = s;
  return run_certification(in, opt);
}

}  // namespace pmorse
