#pragma once

#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "pmorse/certificate.hpp"
#include "pmorse/io.hpp"

namespace pmorse {

enum class Format { Text, Structured };

// Collapse pairs as "f0.f1.f2+v": the face, then the vertex added by the
// coface. Pairs are separated by single spaces.
inline std::string encode_sequence(const CollapseSequence& seq) {
  std::string out;
  for (const auto& [face, coface] : seq) {
    if (!out.empty()) out += ' ';
    for (std::size_t i = 0; i < face.size(); ++i) {
      if (i) out += '.';
      out += std::to_string(face[i]);
    }
    const Simplex extra = [&] {
      Simplex d;
      std::set_difference(coface.begin(), coface.end(), face.begin(), face.end(), std::back_inserter(d));
      return d;
    }();
    if (extra.size() != 1 || coface.size() != face.size() + 1) {
      throw InternalError("collapse pair " + to_string(face) + " -> " + to_string(coface) + " is not elementary");
    }
    out += '+' + std::to_string(extra.front());
  }
  return out;
}

inline CollapseSequence decode_sequence(const std::string& text) {
  CollapseSequence seq;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    const auto plus = token.find('+');
    if (plus == std::string::npos || plus == 0 || plus + 1 == token.size()) {
      throw InputError("malformed collapse pair '" + token + "'");
    }
    Simplex face;
    try {
      std::size_t start = 0;
      while (start < plus) {
        const auto dot = std::min(token.find('.', start), plus);
        face.push_back(static_cast<Vertex>(std::stol(token.substr(start, dot - start))));
        start = dot + 1;
      }
      Simplex coface = face;
      coface.push_back(static_cast<Vertex>(std::stol(token.substr(plus + 1))));
      normalize(face);
      normalize(coface);
      seq.push_back({std::move(face), std::move(coface)});
    } catch (const std::logic_error&) {
      throw InputError("malformed collapse pair '" + token + "'");
    }
  }
  return seq;
}

inline std::string hex64(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

inline Json rational_json(const Rational& r) { return Json::array({r.num, r.den}); }

inline Rational rational_from_json(const Json& j, const std::string& where) {
  const auto v = detail::as<std::vector<std::int64_t>>(j, where);
  if (v.size() != 2 || v[1] <= 0) throw InputError(where + ": expected [numerator, denominator]");
  return Rational::of(v[0], v[1]);
}

inline Json witness_json(const SubdividedCrossPolytopeWitness& w) {
  Json pairs = Json::array();
  for (const auto& [a, b] : w.pairs) pairs.push_back({a, b});
  Json faces = Json::array();
  for (const auto& [v, face] : w.face_of) faces.push_back({{"vertex", v}, {"face", face}});
  return {{"pairs", pairs}, {"faces", faces}};
}

inline SubdividedCrossPolytopeWitness witness_from_json(const Json& j, const std::string& where) {
  SubdividedCrossPolytopeWitness w;
  for (const auto& p : detail::as<std::vector<std::vector<Vertex>>>(detail::field(j, "pairs", where), where + ".pairs")) {
    if (p.size() != 2) throw InputError(where + ".pairs: expected pairs");
    w.pairs.emplace_back(p[0], p[1]);
  }
  const Json& faces = detail::field(j, "faces", where);
  if (!faces.is_array()) throw InputError(where + ".faces: expected a list");
  for (const auto& e : faces) {
    w.face_of[detail::as<Vertex>(detail::field(e, "vertex", where), where + ".vertex")] =
        detail::as<Simplex>(detail::field(e, "face", where), where + ".face");
  }
  return w;
}

inline Json classification_json(const LinkClassification& c) {
  Json j;
  j["verdict"] = c.label();
  j["path"] = to_string(c.path);
  if (c.good_block) j["good_block"] = *c.good_block;
  if (!c.collapse_out.empty() || c.path == LinkPath::TotallyLegal || c.path == LinkPath::Oracle) {
    j["collapse_out"] = encode_sequence(c.collapse_out);
    j["collapse_in"] = encode_sequence(c.collapse_in);
  }
  if (c.critical) {
    j["critical"] = {{"index", c.critical->index},
                     {"ascending", encode_sequence(c.critical->ascending)},
                     {"descending", encode_sequence(c.critical->descending)},
                     {"ascending_sphere", witness_json(c.critical->ascending_sphere)},
                     {"descending_sphere", witness_json(c.critical->descending_sphere)}};
  }
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

inline LinkPath link_path_from_string(const std::string& s) {
  for (LinkPath p : {LinkPath::GoodFace, LinkPath::TotallyLegal, LinkPath::CriticalPattern, LinkPath::Oracle,
                     LinkPath::None}) {
    if (s == to_string(p)) return p;
  }
  throw InputError("unknown evidence path '" + s + "'");
}

inline LinkClassification classification_from_json(const Json& j, const std::string& where) {
  LinkClassification c;
  const auto verdict = detail::as<std::string>(detail::field(j, "verdict", where), where + ".verdict");
  if (verdict == "Regular") {
    c.verdict = Verdict::Regular;
  } else if (verdict == "Unknown") {
    c.verdict = Verdict::Unknown;
  } else if (verdict.rfind("Critical(", 0) == 0 && verdict.back() == ')') {
    c.verdict = Verdict::Critical;
    try {
      c.index = std::stoi(verdict.substr(9));
    } catch (const std::logic_error&) {
      throw InputError(where + ": bad verdict '" + verdict + "'");
    }
  } else {
    throw InputError(where + ": bad verdict '" + verdict + "'");
  }
  c.path = link_path_from_string(detail::as<std::string>(detail::field(j, "path", where), where + ".path"));
  if (j.contains("good_block")) c.good_block = detail::as<int>(j["good_block"], where + ".good_block");
  if (j.contains("collapse_out")) {
    c.collapse_out = decode_sequence(detail::as<std::string>(j["collapse_out"], where + ".collapse_out"));
    c.collapse_in = decode_sequence(detail::as<std::string>(detail::field(j, "collapse_in", where), where));
  }
  if (j.contains("critical")) {
    const Json& e = j["critical"];
    const std::string at = where + ".critical";
    CriticalEvidence ev;
    ev.index = detail::as<int>(detail::field(e, "index", at), at + ".index");
    ev.ascending = decode_sequence(detail::as<std::string>(detail::field(e, "ascending", at), at));
    ev.descending = decode_sequence(detail::as<std::string>(detail::field(e, "descending", at), at));
    ev.ascending_sphere = witness_from_json(detail::field(e, "ascending_sphere", at), at + ".ascending_sphere");
    ev.descending_sphere = witness_from_json(detail::field(e, "descending_sphere", at), at + ".descending_sphere");
    c.critical = std::move(ev);
  }
  if (j.contains("note")) c.note = detail::as<std::string>(j["note"], where + ".note");
  return c;
}

inline Json inputs_json(const Certificate& c) {
  Json states = Json::array();
  for (const auto& s : c.orbit) states.push_back(s.to_string());
  Json j;
  j["mode"] = to_string(c.mode);
  j["required_index"] = c.required_index ? Json(*c.required_index) : Json(nullptr);
  j["polytope"] = polytope_to_json(c.polytope);
  j["moves"] = moves_to_json(c.moves)["moves"];
  j["orbit"] = std::move(states);
  return j;
}

inline Json to_json(const Certificate& c) {
  Json doc;
  doc["version"] = kVersion;
  doc["subject"] = to_string(c.subject);
  doc["status"] = c.pass ? "certified" : "not_certified";
  doc["summary"] = c.summary;
  Json checks = Json::array();
  for (const auto& l : c.checks) checks.push_back({{"name", l.name}, {"pass", l.pass}, {"detail", l.detail}});
  doc["checks"] = std::move(checks);
  doc["first_failure"] = c.first_failure.empty() ? Json(nullptr) : Json(c.first_failure);
  const Json inputs = inputs_json(c);
  doc["inputs_digest"] = hex64(fnv1a64(inputs.dump()));
  doc["inputs"] = inputs;

  Json fcounts = Json::array();
  for (const auto& ch : c.f_vector.checks) {
    fcounts.push_back({{"name", ch.name}, {"expected", ch.expected}, {"actual", ch.actual}});
  }
  doc["f_vector"] = {{"clique_counts", c.f_vector.clique_counts},
                     {"degrees", c.f_vector.degrees},
                     {"checks", fcounts},
                     {"pass", c.f_vector.pass}};

  Json bad = Json::array();
  for (const auto& [sig, faces] : c.bad_faces) {
    Json list = Json::array();
    for (const auto& f : faces) list.push_back(f.facets);
    bad.push_back({{"signature", sig}, {"count", faces.size()}, {"faces", list}});
  }
  doc["bad_faces"] = std::move(bad);

  Json table = Json::array();
  for (const auto& v : c.verdicts) {
    table.push_back({{"face", v.face.facets},
                     {"inherited", v.inherited_key},
                     {"states", v.states},
                     {"classification", classification_json(v.classification)}});
  }
  Json histogram = Json::object();
  for (const auto& [label, n] : c.histogram()) histogram[label] = n;
  doc["verdicts"] = {{"faces", c.num_faces},
                     {"states", c.orbit.size()},
                     {"histogram", histogram},
                     {"classes", table}};

  Json records = Json::array();
  for (const auto& r : c.cusps) {
    Json w = r.witness.ok ? Json{{"block", r.witness.block}, {"first", r.witness.first}, {"second", r.witness.second}}
                          : Json(nullptr);
    records.push_back({{"cusp", r.cusp},
                       {"state", r.state},
                       {"witness", w},
                       {"boundary_faces", r.boundary_faces},
                       {"pass", r.pass}});
  }
  Json boundary = Json::array();
  for (const auto& b : c.boundary) {
    boundary.push_back({{"cusp", b.cusp},
                        {"face", b.face.facets},
                        {"inherited", b.inherited_key},
                        {"states", b.states},
                        {"classification", classification_json(b.classification)}});
  }
  doc["cusps"] = {{"records", records}, {"boundary_classes", boundary}};

  doc["euler"] = {{"chi_per_copy", rational_json(c.euler.chi_per_copy)},
                  {"critical_per_copy", rational_json(c.euler.critical_per_copy)},
                  {"bad_vertices", c.euler.bad_vertices},
                  {"sign", c.euler.sign},
                  {"pass", c.euler.pass}};
  doc["seeds"] = {{"root", c.seed},
                  {"restarts", c.restarts},
                  {"derivation", "splitmix64(root xor fnv1a64(task key))"}};
  Json timings;
  timings["counters"] = c.counters;
  timings["wall_clock_ms"] = c.wall_clock_ms ? Json(*c.wall_clock_ms) : Json(nullptr);
  doc["timings"] = std::move(timings);
  return doc;
}

inline std::string emit_structured(const Certificate& c) { return to_json(c).dump(1) + "\n"; }

inline Certificate certificate_from_json(const Json& doc) {
  const std::string version = detail::as<std::string>(detail::field(doc, "version", "report"), "report.version");
  if (version != kVersion) throw InputError("report version " + version + " is not " + kVersion);
  Certificate c;
  const auto subject = detail::as<std::string>(detail::field(doc, "subject", "report"), "report.subject");
  bool known = false;
  for (Subject s : {Subject::P6PerfectMorse, Subject::P5Fibration, Subject::Generic}) {
    if (subject == to_string(s)) {
      c.subject = s;
      known = true;
    }
  }
  if (!known) throw InputError("report.subject: unknown subject '" + subject + "'");
  c.summary = detail::as<std::string>(detail::field(doc, "summary", "report"), "report.summary");
  c.pass = detail::as<std::string>(detail::field(doc, "status", "report"), "report.status") == "certified";
  for (const auto& l : detail::field(doc, "checks", "report")) {
    c.checks.push_back({detail::as<std::string>(detail::field(l, "name", "report.checks"), "report.checks"),
                        detail::as<bool>(detail::field(l, "pass", "report.checks"), "report.checks"),
                        detail::as<std::string>(detail::field(l, "detail", "report.checks"), "report.checks")});
  }
  const Json& ff = detail::field(doc, "first_failure", "report");
  if (!ff.is_null()) c.first_failure = detail::as<std::string>(ff, "report.first_failure");

  const Json& in = detail::field(doc, "inputs", "report");
  const auto mode = detail::as<std::string>(detail::field(in, "mode", "report.inputs"), "report.inputs.mode");
  if (mode != "fibration" && mode != "perfect") throw InputError("report.inputs.mode: unknown mode '" + mode + "'");
  c.mode = mode == "fibration" ? Mode::Fibration : Mode::Perfect;
  const Json& ri = detail::field(in, "required_index", "report.inputs");
  if (!ri.is_null()) c.required_index = detail::as<int>(ri, "report.inputs.required_index");
  c.polytope = polytope_from_json(detail::field(in, "polytope", "report.inputs"), "report.inputs.polytope");
  c.moves = moves_from_json(detail::field(in, "moves", "report.inputs"), c.polytope.num_facets(), "report.inputs.moves");
  for (const auto& s : detail::as<std::vector<std::string>>(detail::field(in, "orbit", "report.inputs"), "report.inputs.orbit")) {
    c.orbit.push_back(State::from_string(s));
  }
  if (c.orbit.empty()) throw InputError("report.inputs.orbit: empty");

  const Json& fv = detail::field(doc, "f_vector", "report");
  c.f_vector.clique_counts = detail::as<std::vector<std::size_t>>(detail::field(fv, "clique_counts", "report.f_vector"), "report.f_vector");
  c.f_vector.degrees = detail::as<std::vector<std::size_t>>(detail::field(fv, "degrees", "report.f_vector"), "report.f_vector");
  for (const auto& ch : detail::field(fv, "checks", "report.f_vector")) {
    c.f_vector.checks.push_back({detail::as<std::string>(detail::field(ch, "name", "report.f_vector"), "report.f_vector"),
                                 detail::as<std::size_t>(detail::field(ch, "expected", "report.f_vector"), "report.f_vector"),
                                 detail::as<std::size_t>(detail::field(ch, "actual", "report.f_vector"), "report.f_vector")});
  }
  c.f_vector.pass = detail::as<bool>(detail::field(fv, "pass", "report.f_vector"), "report.f_vector");

  for (const auto& b : detail::field(doc, "bad_faces", "report")) {
    auto& list = c.bad_faces[detail::as<BadFaceSignature>(detail::field(b, "signature", "report.bad_faces"), "report.bad_faces")];
    for (const auto& f : detail::field(b, "faces", "report.bad_faces")) {
      list.push_back(FaceHandle{detail::as<std::vector<FacetId>>(f, "report.bad_faces")});
    }
  }

  const Json& vt = detail::field(doc, "verdicts", "report");
  c.num_faces = detail::as<std::size_t>(detail::field(vt, "faces", "report.verdicts"), "report.verdicts.faces");
  std::size_t i = 0;
  for (const auto& v : detail::field(vt, "classes", "report.verdicts")) {
    const std::string at = "report.verdicts.classes[" + std::to_string(i++) + "]";
    c.verdicts.push_back({FaceHandle{detail::as<std::vector<FacetId>>(detail::field(v, "face", at), at + ".face")},
                          detail::as<std::string>(detail::field(v, "inherited", at), at + ".inherited"),
                          detail::as<std::vector<int>>(detail::field(v, "states", at), at + ".states"),
                          classification_from_json(detail::field(v, "classification", at), at + ".classification")});
  }

  const Json& cu = detail::field(doc, "cusps", "report");
  for (const auto& r : detail::field(cu, "records", "report.cusps")) {
    CuspRecord rec;
    rec.cusp = detail::as<int>(detail::field(r, "cusp", "report.cusps"), "report.cusps.cusp");
    rec.state = detail::as<int>(detail::field(r, "state", "report.cusps"), "report.cusps.state");
    const Json& w = detail::field(r, "witness", "report.cusps");
    if (!w.is_null()) {
      rec.witness = {true, detail::as<int>(detail::field(w, "block", "report.cusps"), "report.cusps"),
                     detail::as<FacetId>(detail::field(w, "first", "report.cusps"), "report.cusps"),
                     detail::as<FacetId>(detail::field(w, "second", "report.cusps"), "report.cusps")};
    }
    rec.boundary_faces = detail::as<std::size_t>(detail::field(r, "boundary_faces", "report.cusps"), "report.cusps");
    rec.pass = detail::as<bool>(detail::field(r, "pass", "report.cusps"), "report.cusps");
    c.cusps.push_back(rec);
  }
  i = 0;
  for (const auto& b : detail::field(cu, "boundary_classes", "report.cusps")) {
    const std::string at = "report.cusps.boundary_classes[" + std::to_string(i++) + "]";
    c.boundary.push_back({detail::as<int>(detail::field(b, "cusp", at), at + ".cusp"),
                          FaceHandle{detail::as<std::vector<FacetId>>(detail::field(b, "face", at), at + ".face")},
                          detail::as<std::string>(detail::field(b, "inherited", at), at + ".inherited"),
                          detail::as<std::vector<int>>(detail::field(b, "states", at), at + ".states"),
                          classification_from_json(detail::field(b, "classification", at), at + ".classification")});
  }

  const Json& eu = detail::field(doc, "euler", "report");
  c.euler.chi_per_copy = rational_from_json(detail::field(eu, "chi_per_copy", "report.euler"), "report.euler.chi_per_copy");
  c.euler.critical_per_copy =
      rational_from_json(detail::field(eu, "critical_per_copy", "report.euler"), "report.euler.critical_per_copy");
  c.euler.bad_vertices = detail::as<std::size_t>(detail::field(eu, "bad_vertices", "report.euler"), "report.euler");
  c.euler.sign = detail::as<int>(detail::field(eu, "sign", "report.euler"), "report.euler");
  c.euler.pass = detail::as<bool>(detail::field(eu, "pass", "report.euler"), "report.euler");

  const Json& sd = detail::field(doc, "seeds", "report");
  c.seed = detail::as<std::uint64_t>(detail::field(sd, "root", "report.seeds"), "report.seeds.root");
  c.restarts = detail::as<int>(detail::field(sd, "restarts", "report.seeds"), "report.seeds.restarts");
  const Json& tm = detail::field(doc, "timings", "report");
  c.counters = detail::as<std::map<std::string, std::uint64_t>>(detail::field(tm, "counters", "report.timings"), "report.timings");
  const Json& wc = detail::field(tm, "wall_clock_ms", "report.timings");
  if (!wc.is_null()) c.wall_clock_ms = detail::as<std::int64_t>(wc, "report.timings.wall_clock_ms");
  return c;
}

inline std::string emit_text(const Certificate& c) {
  std::ostringstream out;
  out << c.summary << "\n";
  for (const auto& l : c.checks) {
    out << "  [" << (l.pass ? "PASS" : "FAIL") << "] " << l.name << ": " << l.detail << "\n";
  }
  if (!c.first_failure.empty()) out << "first failure: " << c.first_failure << "\n";
  out << "version " << kVersion << ", seed " << c.seed << ", restarts " << c.restarts;
  if (c.wall_clock_ms) out << ", " << *c.wall_clock_ms << " ms";
  out << "\n";
  return out.str();
}

inline std::string emit_report(const Certificate& c, Format format) {
  return format == Format::Text ? emit_text(c) : emit_structured(c);
}

// Re-checks the evidence of one classification without searching: the
// complexes are rebuilt from the inputs and every sequence is replayed.
inline std::string replay_classification(const Polytope& p, const MoveSystem& m, const State& s,
                                         const FaceHandle& f, const LinkClassification& c) {
  switch (c.path) {
    case LinkPath::GoodFace: {
      if (c.verdict != Verdict::Regular || !c.good_block) return "good-face evidence without a Regular verdict";
      const auto hits = std::count_if(f.facets.begin(), f.facets.end(),
                                      [&](FacetId d) { return m.block_of(d) == *c.good_block; });
      return hits == 1 ? "" : "move " + std::to_string(*c.good_block) + " does not meet the face once";
    }
    case LinkPath::TotallyLegal: {
      if (c.verdict != Verdict::Regular) return "totally-legal evidence without a Regular verdict";
      const StateComplexes k = state_complexes(p, f, inherited_state(p, m, s, f));
      const ReplayResult out = replay_collapse(k.out, c.collapse_out, std::nullopt);
      if (!out.valid) return "Out collapse: " + out.error;
      const ReplayResult in = replay_collapse(k.in, c.collapse_in, std::nullopt);
      return in.valid ? "" : "In collapse: " + in.error;
    }
    case LinkPath::CriticalPattern: {
      if (c.verdict != Verdict::Critical || !c.critical || c.critical->index != c.index) {
        return "critical evidence does not match the verdict";
      }
      if (!is_pair_pattern(m, f) || static_cast<int>(f.codim()) != p.dimension() ||
          !p.facets_around(f).empty()) {
        return "face is not a top-codimension pair pattern";
      }
      const CubeModel model = CubeModel::build(p, m, s, f);
      const MonochromaticSplit split(model);
      const FaceLinks links = face_links_oracle(model);
      using Part = MonochromaticSplit::Part;
      const SimplicialComplex up = split.join_target(Part::MaxVertex);
      const SimplicialComplex down = split.join_target(Part::MinVertex);
      const ReplayResult a = replay_collapse(links.ascending, c.critical->ascending, up);
      if (!a.valid) return "ascending collapse: " + a.error;
      const ReplayResult d = replay_collapse(links.descending, c.critical->descending, down);
      if (!d.valid) return "descending collapse: " + d.error;
      const WitnessCheck wa = check_subdivided_crosspolytope(up, c.index, c.critical->ascending_sphere);
      if (!wa.valid) return "ascending sphere: " + wa.error;
      const WitnessCheck wd = check_subdivided_crosspolytope(down, c.index, c.critical->descending_sphere);
      return wd.valid ? "" : "descending sphere: " + wd.error;
    }
    case LinkPath::Oracle: {
      if (c.verdict != Verdict::Regular) return "oracle evidence without a Regular verdict";
      const FullLinks links = full_links_oracle(p, m, s, f);
      const ReplayResult a = replay_collapse(links.ascending, c.collapse_out, std::nullopt);
      if (!a.valid) return "ascending collapse: " + a.error;
      const ReplayResult d = replay_collapse(links.descending, c.collapse_in, std::nullopt);
      return d.valid ? "" : "descending collapse: " + d.error;
    }
    case LinkPath::None:
      return c.verdict == Verdict::Unknown ? "" : "verdict without evidence";
  }
  return "unknown evidence path";
}

struct VerifyResult {
  std::vector<CheckLine> checks;
  std::size_t replayed_sequences = 0;
  std::size_t checked_witnesses = 0;
  bool evidence_valid = false;  // every check below holds
  bool certified = false;       // evidence valid and the certificate passes
  std::string first_failure;
};

// Standalone replay of a structured report. `original` is the report text;
// when given, re-emitting the parsed certificate must reproduce it exactly.
inline VerifyResult verify_certificate(const Certificate& c, const std::string* original = nullptr,
                                       unsigned workers = 1) {
  VerifyResult r;
  auto check = [&](std::string name, bool pass, std::string detail) {
    if (!pass && r.first_failure.empty()) r.first_failure = name + ": " + detail;
    r.checks.push_back({std::move(name), pass, std::move(detail)});
  };
  const Polytope& p = c.polytope;
  const MoveSystem& m = c.moves;

  if (original) {
    const bool same = emit_structured(c) == *original;
    check("round trip", same, same ? "re-emitted report is byte-identical" : "re-emitted report differs");
  }

  if (c.subject != Subject::Generic) {
    const EngineInputs in = c.subject == Subject::P6PerfectMorse ? p6_inputs() : p5_inputs();
    const bool same = polytope_to_json(in.polytope) == polytope_to_json(p) &&
                      moves_to_json(in.moves) == moves_to_json(m) && c.mode == in.mode &&
                      c.required_index == in.required_index;
    check("inputs", same, same ? "match the built-in data" : "differ from the built-in data");
  }

  FVectorExpectations expect;
  if (c.subject == Subject::P6PerfectMorse) expect = p6_inputs().expectations;
  if (c.subject == Subject::P5Fibration) expect = p5_inputs().expectations;
  try {
    const FVectorReport fv = f_vector_check(p, expect);
    const bool same = fv.clique_counts == c.f_vector.clique_counts && fv.degrees == c.f_vector.degrees;
    check("f-vector", same && c.f_vector.pass, same ? "recomputed counts agree" : "recomputed counts differ");
  } catch (const StructuralError& e) {
    check("f-vector", false, e.what());
  }

  for (const auto& s : c.orbit) require_total(p, s);
  const bool closed = orbit(c.orbit.front(), m) == c.orbit;
  bool compatible = true;
  for (const auto& s : c.orbit) compatible = compatible && is_compatible(p, m, s).compatible;
  bool orbit_ok = closed && compatible;
  std::string orbit_detail = std::to_string(c.orbit.size()) + " states" +
                             (closed ? ", closed under the moves" : ", not an orbit") +
                             (compatible ? "" : ", incompatible state");
  if (c.subject == Subject::P6PerfectMorse && c.orbit != balanced_states_p6()) {
    orbit_ok = false;
    orbit_detail += ", not the balanced states";
  }
  check("orbit", orbit_ok, orbit_detail);

  {
    std::optional<std::set<BadFaceSignature>> allowed;
    if (c.subject == Subject::P6PerfectMorse) allowed = p6_bad_signatures();
    try {
      const bool same = classify_bad_faces(p, m, allowed) == c.bad_faces;
      check("bad faces", same, same ? "recomputed classification agrees" : "recomputed classification differs");
    } catch (const CertificationError& e) {
      check("bad faces", false, e.what());
    }
  }

  // Coverage: each (face, state) pair sits in exactly one class whose key
  // is its inherited state.
  const std::vector<FaceHandle> faces = enumerate_all_faces(p);
  const std::size_t ns = c.orbit.size();
  std::map<FaceHandle, std::vector<int>> hits;
  for (const auto& f : faces) hits[f].assign(ns, 0);
  std::string cover_failure;
  for (const auto& v : c.verdicts) {
    auto it = hits.find(v.face);
    if (it == hits.end()) {
      if (cover_failure.empty()) cover_failure = "class for non-face " + to_string(v.face);
      continue;
    }
    for (int si : v.states) {
      if (si < 0 || static_cast<std::size_t>(si) >= ns) {
        if (cover_failure.empty()) cover_failure = "state index " + std::to_string(si) + " out of range";
        continue;
      }
      ++it->second[static_cast<std::size_t>(si)];
      if (cover_failure.empty() &&
          inherited_state(p, m, c.orbit[static_cast<std::size_t>(si)], v.face).key() != v.inherited_key) {
        cover_failure = "face " + to_string(v.face) + " state #" + std::to_string(si) + " has another inherited state";
      }
    }
  }
  for (const auto& [f, counts] : hits) {
    for (std::size_t si = 0; si < ns && cover_failure.empty(); ++si) {
      if (counts[si] != 1) {
        cover_failure = "face " + to_string(f) + " state #" + std::to_string(si) + " covered " +
                        std::to_string(counts[si]) + " times";
      }
    }
  }
  check("coverage", cover_failure.empty() && c.num_faces == faces.size(),
        cover_failure.empty() ? std::to_string(faces.size()) + " faces x " + std::to_string(ns) + " states"
                              : cover_failure);

  auto count_evidence = [&](const LinkClassification& cl) {
    if (cl.path == LinkPath::TotallyLegal || cl.path == LinkPath::Oracle) r.replayed_sequences += 2;
    if (cl.critical) {
      r.replayed_sequences += 2;
      r.checked_witnesses += 2;
    }
  };
  std::vector<std::string> errors(c.verdicts.size() + c.boundary.size());
  parallel_for(errors.size(), workers, [&](std::size_t i) {
    if (i < c.verdicts.size()) {
      const auto& v = c.verdicts[i];
      if (v.states.empty() || v.states.front() < 0 || static_cast<std::size_t>(v.states.front()) >= ns) {
        errors[i] = "class without a valid state";
        return;
      }
      errors[i] = replay_classification(p, m, c.orbit[static_cast<std::size_t>(v.states.front())], v.face,
                                        v.classification);
      if (!errors[i].empty()) errors[i] = "face " + to_string(v.face) + ": " + errors[i];
    } else {
      const auto& b = c.boundary[i - c.verdicts.size()];
      if (b.states.empty() || b.states.front() < 0 || static_cast<std::size_t>(b.states.front()) >= ns ||
          b.cusp < 0 || static_cast<std::size_t>(b.cusp) >= p.ideal_vertices().size()) {
        errors[i] = "boundary class without a valid state or cusp";
        return;
      }
      try {
        const CuspRestriction cr = restrict_to_cusp(p, m, c.orbit[static_cast<std::size_t>(b.states.front())], b.cusp);
        const FaceHandle hf = cr.from_parent(b.face);
        for (int si : b.states) {
          if (si < 0 || static_cast<std::size_t>(si) >= ns) {
            errors[i] = "state index out of range";
            return;
          }
          const CuspRestriction other = restrict_to_cusp(p, m, c.orbit[static_cast<std::size_t>(si)], b.cusp);
          if (inherited_state(other.section.cube, other.moves, other.state, hf).key() != b.inherited_key) {
            errors[i] = "state #" + std::to_string(si) + " has another inherited state";
            return;
          }
        }
        errors[i] = replay_classification(cr.section.cube, cr.moves, cr.state, hf, b.classification);
      } catch (const InputError& e) {
        errors[i] = e.what();
      }
      if (!errors[i].empty()) {
        errors[i] = "cusp " + std::to_string(b.cusp) + " boundary face " + to_string(b.face) + ": " + errors[i];
      }
    }
  });
  for (const auto& v : c.verdicts) count_evidence(v.classification);
  for (const auto& b : c.boundary) count_evidence(b.classification);
  std::string evidence_failure;
  for (const auto& e : errors) {
    if (!e.empty()) {
      evidence_failure = e;
      break;
    }
  }
  check("evidence", evidence_failure.empty(),
        evidence_failure.empty() ? std::to_string(r.replayed_sequences) + " collapse sequences replayed, " +
                                       std::to_string(r.checked_witnesses) + " sphere witnesses checked"
                                 : evidence_failure);

  std::string verdict_failure;
  for (const auto& v : c.verdicts) {
    if (!verdict_allowed(c, v.classification)) {
      verdict_failure = "face " + to_string(v.face) + " is " + v.classification.label();
      break;
    }
  }
  check("verdicts", verdict_failure.empty(), verdict_failure.empty() ? allowed_verdicts(c) : verdict_failure);

  // Cusp witnesses and boundary coverage.
  std::string cusp_failure;
  std::set<std::pair<int, int>> seen;
  for (const auto& rec : c.cusps) {
    if (rec.cusp < 0 || static_cast<std::size_t>(rec.cusp) >= p.ideal_vertices().size() || rec.state < 0 ||
        static_cast<std::size_t>(rec.state) >= ns) {
      cusp_failure = "cusp record out of range";
      break;
    }
    seen.insert({rec.cusp, rec.state});
    const CuspWitness w = check_cusp_condition(p, c.orbit[static_cast<std::size_t>(rec.state)], rec.cusp, m);
    if (w.ok != rec.witness.ok || w.block != rec.witness.block || w.first != rec.witness.first ||
        w.second != rec.witness.second) {
      cusp_failure = "cusp " + std::to_string(rec.cusp) + " state #" + std::to_string(rec.state) + ": witness differs";
      break;
    }
    if (rec.pass && !w.ok) {
      cusp_failure = "cusp " + std::to_string(rec.cusp) + " passes without a witness";
      break;
    }
  }
  if (cusp_failure.empty() && seen.size() != p.ideal_vertices().size() * ns) {
    cusp_failure = "cusp records do not cover every cusp and state";
  }
  if (cusp_failure.empty()) {
    std::map<std::pair<int, int>, std::size_t> faces_seen;
    for (const auto& b : c.boundary) {
      for (int si : b.states) ++faces_seen[{b.cusp, si}];
      if (b.classification.verdict != Verdict::Regular) {
        for (int si : b.states) {
          for (const auto& rec : c.cusps) {
            if (rec.cusp == b.cusp && rec.state == si && rec.pass && cusp_failure.empty()) {
              cusp_failure = "cusp " + std::to_string(b.cusp) + " passes with a non-Regular boundary face";
            }
          }
        }
      }
    }
    for (const auto& rec : c.cusps) {
      const std::size_t expected = enumerate_all_faces(build_cusp_section(p, rec.cusp).cube).size();
      if (cusp_failure.empty() && faces_seen[{rec.cusp, rec.state}] != expected) {
        cusp_failure = "cusp " + std::to_string(rec.cusp) + " state #" + std::to_string(rec.state) +
                       ": boundary faces not all covered";
      }
      if (cusp_failure.empty() && !rec.pass) {
        cusp_failure = "cusp " + std::to_string(rec.cusp) + " state #" + std::to_string(rec.state) + " fails";
      }
    }
  }
  if (!p.ideal_vertices().empty()) {
    check("cusps", cusp_failure.empty(),
          cusp_failure.empty() ? std::to_string(c.cusps.size()) + " cusp-states" : cusp_failure);
  }

  const EulerRecord e = euler_identity(p, m);
  const bool euler_same = e.chi_per_copy == c.euler.chi_per_copy &&
                          e.critical_per_copy == c.euler.critical_per_copy && e.sign == c.euler.sign &&
                          e.bad_vertices == c.euler.bad_vertices && e.pass == c.euler.pass;
  check("euler", euler_same && e.pass,
        "chi per copy " + e.chi_per_copy.str() + ", critical per copy " + e.critical_per_copy.str());

  r.evidence_valid = r.first_failure.empty();
  r.certified = r.evidence_valid && c.pass;
  if (r.evidence_valid && !c.pass) r.first_failure = "report records a failed certification";
  return r;
}

inline VerifyResult verify_report_text(const std::string& text, const std::string& source = "report",
                                       unsigned workers = 1) {
  const Certificate c = certificate_from_json(parse_json(text, source));
  return verify_certificate(c, &text, workers);
}

}  // namespace pmorse
