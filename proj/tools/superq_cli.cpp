// Command-line front end: parse element/matrix/state/table files, run the
// algebra operations and entanglement measures, execute the verification
// suites and the sdTr calibration. Reports are line-oriented with a final
// machine-readable JSON summary on stdout.
//
// Exit codes: 0 success, 1 I/O, parse or usage errors, 2 domain errors
// (noninvertible D, parity mismatch, failed verification/calibration, ...).

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "superq/entangle.hpp"
#include "superq/error.hpp"
#include "superq/grassmann.hpp"
#include "superq/io.hpp"
#include "superq/random.hpp"
#include "superq/supermatrix.hpp"
#include "superq/superstate.hpp"
#include "superq/verify.hpp"

namespace {

using superq::json;

struct Options {
  double tol = 1e-10;
  std::uint64_t seed = 42;
  long iters = 500;
  std::string out_path;
  std::string config_path;
  bool force_unnormalized = false;
};

std::filesystem::path executable_dir(const char* argv0) {
  std::error_code ec;
  const auto self = std::filesystem::read_symlink("/proc/self/exe", ec);
  if (!ec) return self.parent_path();
  const std::filesystem::path p(argv0 ? argv0 : ".");
  return p.has_parent_path() ? p.parent_path() : std::filesystem::path(".");
}

// Calibration config resolution: --config flag, then SUPERQ_CONFIG, then
// superq.conf beside the binary.
std::string resolve_config_path(const Options& opt, const char* argv0) {
  if (!opt.config_path.empty()) return opt.config_path;
  if (const char* env = std::getenv("SUPERQ_CONFIG")) return env;
  return (executable_dir(argv0) / "superq.conf").string();
}

superq::SdtrArrangement load_pinned_arrangement(const std::string& path) {
  std::ifstream in(path);
  if (!in) return superq::kDefaultSdtrArrangement;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    if (trim(line.substr(0, eq)) == "sdtr_arrangement")
      return superq::sdtr_arrangement_from_name(trim(line.substr(eq + 1)));
  }
  return superq::kDefaultSdtrArrangement;
}

void emit(const json& summary, const Options& opt) {
  if (!opt.out_path.empty()) superq::write_text_file(opt.out_path, superq::dump_canonical(summary));
  std::cout << summary.dump() << "\n";
}

json element_report(const char* verb, const superq::GrassmannElement& value) {
  return {{"verb", verb}, {"status", "ok"}, {"value", superq::element_to_json(value)}};
}

int run_ber(const Options& opt, const std::string& file) {
  const superq::SuperMatrix m = superq::matrix_from_json(superq::parse_json_file(file));
  const superq::GrassmannElement value = superq::berezinian(m);
  std::cout << "ber: " << value.str() << "\n";
  emit(element_report("ber", value), opt);
  return 0;
}

int run_str(const Options& opt, const std::string& file) {
  const superq::SuperMatrix m = superq::matrix_from_json(superq::parse_json_file(file));
  const superq::GrassmannElement value = superq::supertrace(m);
  std::cout << "str: " << value.str() << "\n";
  emit(element_report("str", value), opt);
  return 0;
}

int run_sdtr(const Options& opt, const std::string& file, const char* argv0) {
  const superq::SuperMatrix m = superq::matrix_from_json(superq::parse_json_file(file));
  const superq::SdtrArrangement arr = load_pinned_arrangement(resolve_config_path(opt, argv0));
  const superq::GrassmannElement value = superq::sdtr(m, arr);
  std::cout << "sdtr: " << value.str() << "\n";
  json summary = element_report("sdtr", value);
  summary["calibration"] = superq::sdtr_arrangement_name(arr);
  emit(summary, opt);
  return 0;
}

int run_stranspose(const Options& opt, const std::string& file) {
  const superq::SuperMatrix m = superq::matrix_from_json(superq::parse_json_file(file));
  const superq::SuperMatrix st = superq::supertranspose(m);
  const json matrix = superq::matrix_to_json(st);
  std::cout << "stranspose: ok\n";
  if (!opt.out_path.empty()) {
    superq::write_text_file(opt.out_path, superq::dump_canonical(matrix));
    std::cout << json{{"verb", "stranspose"}, {"status", "ok"}, {"out", opt.out_path}}.dump()
              << "\n";
  } else {
    std::cout << json{{"verb", "stranspose"}, {"status", "ok"}, {"value", matrix}}.dump() << "\n";
  }
  return 0;
}

int run_inner(const Options& opt, const std::string& file_a, const std::string& file_b) {
  const superq::SuperKet a = superq::state_from_json(superq::parse_json_file(file_a));
  const superq::SuperKet b = superq::state_from_json(superq::parse_json_file(file_b));
  const superq::GrassmannElement value = superq::inner(a, b);
  std::cout << "inner: " << value.str() << "\n";
  emit(element_report("inner", value), opt);
  return 0;
}

int run_outer(const Options& opt, const std::string& file) {
  const superq::SuperKet k = superq::state_from_json(superq::parse_json_file(file));
  const json matrix = superq::matrix_to_json(superq::outer(k));
  std::cout << "outer: ok\n";
  if (!opt.out_path.empty()) {
    superq::write_text_file(opt.out_path, superq::dump_canonical(matrix));
    std::cout << json{{"verb", "outer"}, {"status", "ok"}, {"out", opt.out_path}}.dump() << "\n";
  } else {
    std::cout << json{{"verb", "outer"}, {"status", "ok"}, {"value", matrix}}.dump() << "\n";
  }
  return 0;
}

superq::Qudit qudit_from_state_file(const std::string& file, bool force) {
  const superq::SuperKet k = superq::state_from_json(superq::parse_json_file(file));
  if (k.format().s != 0) throw superq::format_error("expected an ordinary state (s = 0)");
  std::vector<superq::cplx> amps;
  for (int i = 0; i < k.dim(); ++i) {
    if (!k.coord(i).soul().is_zero())
      throw superq::format_error("expected body-only amplitudes in an ordinary state");
    amps.push_back(k.coord(i).body());
  }
  return superq::make_qudit(std::move(amps), force);
}

int run_tensor(const Options& opt, const std::string& file_a, const std::string& file_b) {
  const superq::SuperKet a = superq::state_from_json(superq::parse_json_file(file_a));
  const superq::SuperKet b = superq::state_from_json(superq::parse_json_file(file_b));
  superq::TwoPartyTable table = [&] {
    if (a.format() == superq::SpaceFormat{2, 1}) return superq::tensor_table(a, b);
    const superq::Qudit qa = qudit_from_state_file(file_a, true);
    const superq::Qudit qb = qudit_from_state_file(file_b, true);
    return superq::tensor_table(qa, qb);
  }();
  const json tj = superq::table_to_json(table);
  std::cout << "tensor: " << superq::table_kind_name(table.kind()) << "\n";
  if (!opt.out_path.empty()) {
    superq::write_text_file(opt.out_path, superq::dump_canonical(tj));
    std::cout << json{{"verb", "tensor"}, {"status", "ok"}, {"out", opt.out_path}}.dump() << "\n";
  } else {
    std::cout << json{{"verb", "tensor"}, {"status", "ok"}, {"value", tj}}.dump() << "\n";
  }
  return 0;
}

int run_cross(const Options& opt, const std::string& file_a, const std::string& file_b) {
  const superq::Qudit a = qudit_from_state_file(file_a, opt.force_unnormalized);
  const superq::Qudit b = qudit_from_state_file(file_b, opt.force_unnormalized);
  const superq::CrossQutrit c = superq::cross_qutrit(a, b);
  json amps = json::array();
  for (const superq::cplx& v : c.state.amps) amps.push_back({v.real(), v.imag()});
  std::cout << "cross: norm_sq " << c.norm_sq << "\n";
  emit({{"verb", "cross"}, {"status", "ok"}, {"amps", amps}, {"norm_sq", c.norm_sq}}, opt);
  return 0;
}

int run_concurrence(const Options& opt, const std::string& file) {
  const superq::TwoPartyTable t = superq::table_from_json(superq::parse_json_file(file));
  superq::MeasureReport rep;
  rep.measure = "concurrence";
  rep.value = superq::concurrence(t, opt.force_unnormalized);
  std::cout << "concurrence: " << rep.value << "\n";
  emit(superq::measure_report_to_json(rep), opt);
  return 0;
}

int run_superconcurrence(const Options& opt, const std::string& file) {
  const superq::TwoPartyTable t = superq::table_from_json(superq::parse_json_file(file));
  superq::MeasureReport rep;
  rep.measure = "superconcurrence";
  rep.value = superq::superconcurrence(t, t.parity());
  std::cout << "superconcurrence: " << rep.value << "\n";
  superq::json j = superq::measure_report_to_json(rep);
  j["parity"] = superq::parity_int(t.parity());
  emit(j, opt);
  return 0;
}

int run_tangle(const Options& opt, const std::string& file) {
  const superq::TwoPartyTable t = superq::table_from_json(superq::parse_json_file(file));
  if (t.kind() == superq::TableKind::qubit) {
    superq::MeasureReport rep;
    rep.measure = "tangle";
    rep.value = superq::tangle(t, opt.force_unnormalized);
    std::cout << "tangle: " << rep.value << "\n";
    emit(superq::measure_report_to_json(rep), opt);
    return 0;
  }
  const superq::SupertangleReport rep = superq::supertangle(t, t.parity());
  if (rep.solved) {
    std::cout << "supertangle: " << rep.value.str() << "\n";
    emit({{"measure", "supertangle"},
          {"status", "ok"},
          {"value", superq::element_to_json(rep.value)},
          {"calibration", nullptr}},
         opt);
  } else {
    std::cout << "supertangle: implicit-only\n";
    emit({{"measure", "supertangle"},
          {"status", "implicit-only"},
          {"lhs_factor", superq::element_to_json(rep.lhs_factor)},
          {"rhs", superq::element_to_json(rep.rhs)},
          {"calibration", nullptr}},
         opt);
  }
  return 0;
}

int run_separable(const Options& opt, const std::string& file) {
  const superq::TwoPartyTable t = superq::table_from_json(superq::parse_json_file(file));
  const superq::SeparabilityReport rep = superq::is_separable(t, opt.tol);
  std::cout << "separable: " << (rep.separable ? "yes" : "no") << "\n";
  emit({{"verb", "separable"},
        {"separable", rep.separable},
        {"witness_norm", rep.witness_norm},
        {"verdict", rep.necessary_conditions_only ? "necessary-conditions" : "exact"}},
       opt);
  return 0;
}

int run_group_check(const Options& opt, const std::string& file, const std::string& group) {
  const superq::SuperMatrix m = superq::matrix_from_json(superq::parse_json_file(file));
  const superq::GroupCheck gc = superq::group_check(m, superq::group_from_name(group), opt.tol);
  std::cout << "group-check: " << group << " " << (gc.member ? "member" : "non-member")
            << " residual " << gc.residual << "\n";
  emit({{"verb", "group-check"},
        {"group", group},
        {"member", gc.member},
        {"residual", gc.residual}},
       opt);
  return 0;
}

int run_verify(const Options& opt) {
  std::cout << "verify: seed=" << opt.seed << " iters=" << opt.iters << " tol=" << opt.tol
            << "\n";
  const std::vector<superq::SuiteResult> results =
      superq::run_verification(opt.seed, opt.iters, opt.tol);
  long passed = 0;
  json identities = json::array();
  for (const superq::SuiteResult& r : results) {
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << " trials=" << r.trials
              << " worst=" << r.worst;
    if (!r.pass) std::cout << " (" << r.detail << ")";
    std::cout << "\n";
    if (r.pass) ++passed;
    identities.push_back({{"name", r.name},
                          {"pass", r.pass},
                          {"trials", r.trials},
                          {"worst", r.worst},
                          {"detail", r.detail}});
  }
  const json summary = {{"verb", "verify"},
                        {"seed", opt.seed},
                        {"iters", opt.iters},
                        {"tol", opt.tol},
                        {"passed", passed},
                        {"failed", static_cast<long>(results.size()) - passed},
                        {"identities", identities}};
  emit(summary, opt);
  return passed == static_cast<long>(results.size()) ? 0 : 2;
}

int run_calibrate(const Options& opt, const char* argv0) {
  const int trials = static_cast<int>(opt.iters >= 1 ? std::min<long>(opt.iters, 10000) : 100);
  std::cout << "calibrate-sdtr: seed=" << opt.seed << " trials=" << trials << " tol=" << opt.tol
            << "\n";
  const superq::SdtrCalibration cal = superq::calibrate_sdtr(opt.seed, trials, opt.tol);
  json evidence = json::array();
  for (const superq::SdtrCandidateEvidence& ev : cal.evidence) {
    std::cout << "candidate " << superq::sdtr_arrangement_name(ev.id) << " det_err=" << ev.det_err
              << " outer_err=" << ev.outer_err << (ev.pass ? " PASS" : " FAIL") << "\n";
    evidence.push_back({{"id", superq::sdtr_arrangement_name(ev.id)},
                        {"det_err", ev.det_err},
                        {"outer_err", ev.outer_err},
                        {"pass", ev.pass}});
  }
  json classes = json::array();
  for (const auto& cls : cal.survivor_classes) {
    json ids = json::array();
    for (superq::SdtrArrangement a : cls) ids.push_back(superq::sdtr_arrangement_name(a));
    classes.push_back(ids);
  }
  json summary = {{"verb", "calibrate-sdtr"},
                  {"seed", opt.seed},
                  {"trials", trials},
                  {"tol", opt.tol},
                  {"evidence", evidence},
                  {"survivor_classes", classes}};
  if (cal.status != superq::CalibrationStatus::ok) {
    summary["status"] =
        cal.status == superq::CalibrationStatus::no_survivor ? "no-survivor" : "ambiguous";
    std::cout << summary.dump() << "\n";
    throw superq::calibration_error(
        cal.status == superq::CalibrationStatus::no_survivor
            ? "calibration failed: no arrangement satisfies both oracles"
            : "calibration failed: multiple non-equivalent survivors");
  }
  summary["status"] = "ok";
  summary["pinned"] = superq::sdtr_arrangement_name(cal.pinned);
  const std::string config_path =
      !opt.out_path.empty() ? opt.out_path : resolve_config_path(opt, argv0);
  superq::write_text_file(config_path,
                          std::string("# superq calibration\nsdtr_arrangement = ") +
                              superq::sdtr_arrangement_name(cal.pinned) + "\n");
  summary["config"] = config_path;
  std::cout << "pinned: " << superq::sdtr_arrangement_name(cal.pinned) << " -> " << config_path
            << "\n";
  std::cout << summary.dump() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grassmann-algebra supermatrix and superqubit toolkit"};
  app.require_subcommand(1);
  // Options are declared on the app; let them appear after the verb too.
  app.fallthrough();

  Options opt;
  app.add_option("--tol", opt.tol, "numeric tolerance");
  app.add_option("--seed", opt.seed, "deterministic RNG seed");
  app.add_option("--iters", opt.iters, "trial count for randomized suites");
  app.add_option("-o,--out", opt.out_path, "write the structured result to this path");
  app.add_option("--config", opt.config_path, "calibration config path");
  app.add_flag("--force-unnormalized", opt.force_unnormalized,
               "accept unnormalized states/tables");

  std::string file_a, file_b, group = "SL2";

  auto* ber = app.add_subcommand("ber", "Berezinian of a supermatrix file");
  ber->add_option("matrix", file_a)->required();
  auto* strv = app.add_subcommand("str", "supertrace of a supermatrix file");
  strv->add_option("matrix", file_a)->required();
  auto* sdtrv = app.add_subcommand("sdtr", "sdTr of a (2|1) supermatrix file");
  sdtrv->add_option("matrix", file_a)->required();
  auto* stv = app.add_subcommand("stranspose", "supertranspose of a supermatrix file");
  stv->add_option("matrix", file_a)->required();
  auto* innerv = app.add_subcommand("inner", "super inner product of two state files");
  innerv->add_option("bra", file_a)->required();
  innerv->add_option("ket", file_b)->required();
  auto* outerv = app.add_subcommand("outer", "density supermatrix of a state file");
  outerv->add_option("state", file_a)->required();
  auto* tensorv = app.add_subcommand("tensor", "two-party table from two state files");
  tensorv->add_option("a", file_a)->required();
  tensorv->add_option("b", file_b)->required();
  auto* crossv = app.add_subcommand("cross", "cross product of two qutrit files");
  crossv->add_option("a", file_a)->required();
  crossv->add_option("b", file_b)->required();
  auto* concv = app.add_subcommand("concurrence", "concurrence of a two-qubit table");
  concv->add_option("table", file_a)->required();
  auto* sconcv = app.add_subcommand("superconcurrence", "superconcurrence of a super table");
  sconcv->add_option("table", file_a)->required();
  auto* tanglev = app.add_subcommand("tangle", "tangle / supertangle of a table");
  tanglev->add_option("table", file_a)->required();
  auto* sepv = app.add_subcommand("separable", "separability verdict for a table");
  sepv->add_option("table", file_a)->required();
  auto* groupv = app.add_subcommand("group-check", "group membership of a matrix");
  groupv->add_option("matrix", file_a)->required();
  groupv->add_option("--group", group, "SL2, SU2, OSP21 or UOSP21")->required();
  auto* verifyv = app.add_subcommand("verify", "run every identity suite");
  auto* calv = app.add_subcommand("calibrate-sdtr", "pin the sdTr arrangement");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (ber->parsed()) return run_ber(opt, file_a);
    if (strv->parsed()) return run_str(opt, file_a);
    if (sdtrv->parsed()) return run_sdtr(opt, file_a, argv[0]);
    if (stv->parsed()) return run_stranspose(opt, file_a);
    if (innerv->parsed()) return run_inner(opt, file_a, file_b);
    if (outerv->parsed()) return run_outer(opt, file_a);
    if (tensorv->parsed()) return run_tensor(opt, file_a, file_b);
    if (crossv->parsed()) return run_cross(opt, file_a, file_b);
    if (concv->parsed()) return run_concurrence(opt, file_a);
    if (sconcv->parsed()) return run_superconcurrence(opt, file_a);
    if (tanglev->parsed()) return run_tangle(opt, file_a);
    if (sepv->parsed()) return run_separable(opt, file_a);
    if (groupv->parsed()) return run_group_check(opt, file_a, group);
    if (verifyv->parsed()) return run_verify(opt);
    if (calv->parsed()) return run_calibrate(opt, argv[0]);
  } catch (const superq::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const superq::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
