#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pmorse/pmorse.hpp"

namespace {

using namespace pmorse;

struct Common {
  std::uint64_t seed = 0;
  int restarts = 64;
  std::string format = "text";
  unsigned parallel = 0;
  std::string output;
  bool wall_clock = false;
};

void add_common(CLI::App* cmd, Common& c, bool search) {
  if (search) {
    cmd->add_option("--seed", c.seed, "Root seed for collapse search");
    cmd->add_option("--restarts", c.restarts, "Random restarts per collapse search")->check(CLI::NonNegativeNumber);
    cmd->add_flag("--wall-clock", c.wall_clock, "Record elapsed time in the report");
  }
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "structured"}));
  cmd->add_option("--parallel", c.parallel, "Worker threads (default: PMORSE_WORKERS or 1)");
  cmd->add_option("--output,-o", c.output, "Write the document to this file");
}

unsigned workers(const Common& c) {
  if (c.parallel > 0) return c.parallel;
  if (const char* env = std::getenv("PMORSE_WORKERS")) {
    try {
      const long n = std::stol(env);
      if (n > 0) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
    throw InputError(std::string("PMORSE_WORKERS must be a positive integer, got '") + env + "'");
  }
  return 1;
}

void deliver(const Common& c, const std::string& document, const std::string& summary) {
  if (c.output.empty()) {
    std::cout << document;
    return;
  }
  write_file(c.output, document);
  std::cout << summary << "\n";
}

int run_certify(const std::string& subject, const Common& common, const std::string& polytope_file,
                const std::string& moves_file, const std::string& state_file, const std::string& mode) {
  PipelineOptions opt{common.seed, common.restarts, workers(common), common.wall_clock};
  Certificate cert;
  if (subject == "p6") {
    cert = certify_p6(opt);
  } else if (subject == "p5") {
    cert = certify_p5(opt);
  } else {
    if (polytope_file.empty() || moves_file.empty() || state_file.empty()) {
      throw InputError("certify generic needs --polytope, --moves and --state");
    }
    const Polytope p = polytope_from_json(parse_json(read_file(polytope_file), polytope_file), polytope_file);
    const MoveSystem m = moves_from_json(parse_json(read_file(moves_file), moves_file), p.num_facets(), moves_file);
    const State s = state_from_json(parse_json(read_file(state_file), state_file), p.num_facets(), state_file);
    cert = certify_generic(p, m, s, mode == "fibration" ? Mode::Fibration : Mode::Perfect, opt);
  }
  deliver(common, emit_report(cert, common.format == "text" ? Format::Text : Format::Structured), cert.summary);
  return static_cast<int>(cert.pass ? ExitCode::kCertified : ExitCode::kCertificationFailed);
}

int run_verify(const std::string& path, const Common& common) {
  const VerifyResult r = verify_report_text(read_file(path), path, workers(common));
  std::string text;
  if (common.format == "structured") {
    Json doc;
    doc["report"] = path;
    doc["evidence_valid"] = r.evidence_valid;
    doc["certified"] = r.certified;
    doc["replayed_sequences"] = r.replayed_sequences;
    doc["checked_witnesses"] = r.checked_witnesses;
    Json checks = Json::array();
    for (const auto& l : r.checks) checks.push_back({{"name", l.name}, {"pass", l.pass}, {"detail", l.detail}});
    doc["checks"] = checks;
    doc["first_failure"] = r.first_failure.empty() ? Json(nullptr) : Json(r.first_failure);
    text = doc.dump(1) + "\n";
  } else {
    text = std::string(r.certified ? "VERIFIED" : "NOT VERIFIED") + ": " + path + "\n";
    for (const auto& l : r.checks) {
      text += "  [" + std::string(l.pass ? "PASS" : "FAIL") + "] " + l.name + ": " + l.detail + "\n";
    }
    if (!r.first_failure.empty()) text += "first failure: " + r.first_failure + "\n";
  }
  deliver(common, text, r.certified ? "VERIFIED" : "NOT VERIFIED");
  return static_cast<int>(r.certified ? ExitCode::kCertified : ExitCode::kCertificationFailed);
}

int run_info(const std::string& subject, const Common& common) {
  const EngineInputs in = subject == "p6" ? p6_inputs() : p5_inputs();
  const Polytope& p = in.polytope;
  const FVectorReport fv = f_vector_check(p, in.expectations);
  const auto bad = classify_bad_faces(p, in.moves);
  const auto states = orbit(in.initial, in.moves);
  const EulerRecord e = euler_identity(p, in.moves);
  Json doc;
  doc["subject"] = to_string(in.subject);
  doc["dimension"] = p.dimension();
  doc["facets"] = p.num_facets();
  Json labels = Json::array();
  for (const auto& f : p.facets()) labels.push_back(f.label);
  doc["labels"] = labels;
  doc["clique_counts"] = fv.clique_counts;
  doc["degrees"] = fv.degrees;
  doc["ideal_vertices"] = p.ideal_vertices().size();
  Json moves = Json::array();
  for (std::size_t b = 0; b < in.moves.size(); ++b) {
    Json block = Json::array();
    for (FacetId f : in.moves.block(static_cast<int>(b))) block.push_back(p.label(f));
    moves.push_back(block);
  }
  doc["moves"] = moves;
  Json sigs = Json::object();
  for (const auto& [sig, faces] : bad) sigs[signature_string(sig)] = faces.size();
  doc["bad_faces"] = sigs;
  doc["initial_state"] = in.initial.to_string();
  doc["orbit_size"] = states.size();
  doc["euler"] = {{"chi_per_copy", e.chi_per_copy.str()}, {"critical_per_copy", e.critical_per_copy.str()}};
  std::string text;
  if (common.format == "structured") {
    text = doc.dump(1) + "\n";
  } else {
    text += std::string(subject == "p6" ? "P6" : "P5") + ": dimension " + std::to_string(p.dimension()) + ", " +
            std::to_string(p.num_facets()) + " facets, " + std::to_string(p.ideal_vertices().size()) +
            " ideal vertices\n";
    text += "  clique counts:";
    for (auto n : fv.clique_counts) text += " " + std::to_string(n);
    text += "\n  moves:";
    for (const auto& b : moves) {
      text += " [";
      for (std::size_t i = 0; i < b.size(); ++i) text += (i ? " " : "") + b[i].get<std::string>();
      text += "]";
    }
    text += "\n  bad faces:";
    for (const auto& [sig, faces] : bad) text += " " + signature_string(sig) + "x" + std::to_string(faces.size());
    if (bad.empty()) text += " none";
    text += "\n  orbit of the reference state: " + std::to_string(states.size()) + " states\n";
    text += "  euler: chi per copy " + e.chi_per_copy.str() + ", critical per copy " + e.critical_per_copy.str() + "\n";
  }
  deliver(common, text, "written " + common.output);
  return 0;
}

int run_export(const std::string& subject, const std::string& dir) {
  const EngineInputs in = subject == "p6" ? p6_inputs() : p5_inputs();
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InputError("cannot create " + dir + ": " + ec.message());
  const std::filesystem::path base(dir);
  write_file((base / "polytope.json").string(), polytope_to_json(in.polytope).dump(1) + "\n");
  write_file((base / "moves.json").string(), moves_to_json(in.moves).dump(1) + "\n");
  write_file((base / "state.json").string(), state_to_json(in.initial).dump(1) + "\n");
  std::cout << "wrote polytope.json, moves.json, state.json to " << dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certification engine for circle-valued Morse functions on right-angled polytopes"};
  app.require_subcommand(1);
  app.set_version_flag("--version", pmorse::kVersion);

  Common common;
  std::string subject, polytope_file, moves_file, state_file, mode = "perfect", report, dir;

  auto* certify = app.add_subcommand("certify", "Run a certification pipeline");
  certify->add_option("subject", subject, "p6, p5 or generic")
      ->required()
      ->check(CLI::IsMember({"p6", "p5", "generic"}));
  certify->add_option("--polytope", polytope_file, "Polytope file (generic)");
  certify->add_option("--moves", moves_file, "Moves file (generic)");
  certify->add_option("--state", state_file, "Initial state file (generic)");
  certify->add_option("--mode", mode, "Pass criterion (generic)")->check(CLI::IsMember({"fibration", "perfect"}));
  add_common(certify, common, true);

  auto* verify = app.add_subcommand("verify", "Replay every certificate in a structured report");
  verify->add_option("report", report, "Structured report")->required();
  add_common(verify, common, false);

  auto* info = app.add_subcommand("info", "Print the built-in polytope data");
  info->add_option("subject", subject, "p6 or p5")->required()->check(CLI::IsMember({"p6", "p5"}));
  add_common(info, common, false);

  auto* exp = app.add_subcommand("export", "Write the built-in inputs as files for certify generic");
  exp->add_option("subject", subject, "p6 or p5")->required()->check(CLI::IsMember({"p6", "p5"}));
  exp->add_option("--dir", dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(pmorse::ExitCode::kInputError);
  }

  try {
    if (*certify) return run_certify(subject, common, polytope_file, moves_file, state_file, mode);
    if (*verify) return run_verify(report, common);
    if (*info) return run_info(subject, common);
    if (*exp) return run_export(subject, dir);
  } catch (const pmorse::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.exit_code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return static_cast<int>(pmorse::ExitCode::kInternalError);
  }
  return static_cast<int>(pmorse::ExitCode::kInternalError);
}
